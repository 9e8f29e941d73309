//! Polynomial-time deciders for restricted inputs: 1-bounded systems over a
//! handful of types, and the small-bound characterizations.

mod linear;
mod one_bounded;
mod small_g;

use thiserror::Error;

use crate::interaction::NetType;
use crate::region::{Region, SeparationAtom};

pub use linear::{classify_linear, cycle_extension, LinearKind, LinearShape};
pub use one_bounded::decide_one_bounded;
pub use small_g::{brute_force, condition_for, decide_small_g, Condition, BRUTE_FORCE_LIMIT};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyVerdict {
    /// Solvable; the regions solve every atom (may be empty when the
    /// decision needs no witness).
    Solvable(Vec<Region>),
    Unsolvable(SeparationAtom),
}

impl PolyVerdict {
    pub fn is_solvable(&self) -> bool {
        matches!(self, PolyVerdict::Solvable(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("input has bound {bound}, at most {allowed} is supported here")]
    BoundTooLarge { bound: usize, allowed: usize },
    #[error("input is not a simple path")]
    NotAPath,
    #[error("input is not a directed cycle")]
    NotACycle,
    #[error("type {0} is not handled by the 1-bounded decider")]
    UnsupportedType(NetType),
    #[error("no polynomial condition covers type {ty} at bound {g}")]
    UnsupportedPair { ty: NetType, g: usize },
    #[error("input shape not supported: {0}")]
    UnsupportedShape(String),
    #[error("brute force would enumerate {regions} regions")]
    TooLarge { regions: u128 },
}
