//! Boolean Petri net synthesis.
//!
//! A transition system is *τ-solvable* when it is isomorphic to the
//! reachability graph of a Boolean net whose flows come from the type τ.
//! This crate decides that question with region search, synthesizes the
//! net, provides polynomial deciders for low-degree inputs, and builds the
//! gadget systems used to show hardness.

pub mod complexity;
pub mod enumerate;
pub mod interaction;
pub mod iso;
pub mod net;
pub mod polytime;
pub mod reductions;
pub mod region;
pub mod search;
pub mod synthesis;
pub mod ts;

pub use complexity::{classify_complexity, Bound, Complexity};
pub use interaction::{Interaction, NetType, TypeError, TypeIsomorphism};
pub use iso::ts_isomorphic;
pub use net::{fire, reachability_graph, BooleanNet, Marking, NetError, DEFAULT_CAP};
pub use region::{enumerate_atoms, extend_region, region_valid, Region, SeparationAtom};
pub use search::{solve_atom, AtomOutcome, RegionSearch, DEFAULT_BUDGET};
pub use synthesis::{decide_solvable, synthesize, AdmissibleSet, Decision, SynthesisError};
pub use ts::{compute_bound, validate_ts, Arc, EventId, StateId, TransitionSystem, TsBuilder, TsError};
