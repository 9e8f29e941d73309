//! Admissible sets, the top-level decision procedure and net synthesis.

use thiserror::Error;

use crate::interaction::NetType;
use crate::net::{BooleanNet, NetError};
use crate::region::{enumerate_atoms, region_valid, Region, SeparationAtom};
use crate::search::{AtomOutcome, RegionSearch};
use crate::ts::TransitionSystem;

/// Regions solving every atom, with the index of a solving region per atom.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AdmissibleSet {
    pub regions: Vec<Region>,
    pub witness: Vec<(SeparationAtom, usize)>,
}

impl AdmissibleSet {
    /// Builds the witness map for given regions; `Err` names the first
    /// atom none of them solves.
    pub fn from_regions(ts: &TransitionSystem, regions: Vec<Region>) -> Result<AdmissibleSet, SeparationAtom> {
        let mut witness = Vec::new();
        for atom in enumerate_atoms(ts) {
            let k = regions.iter().position(|r| r.solves(&atom)).ok_or(atom)?;
            witness.push((atom, k));
        }
        Ok(AdmissibleSet { regions, witness })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decision {
    Solvable(AdmissibleSet),
    /// The atom was proven unsolvable.
    Unsolvable(SeparationAtom),
    /// The budget ran out on this atom.
    Inconclusive(SeparationAtom),
}

impl Decision {
    pub fn is_solvable(&self) -> bool {
        matches!(self, Decision::Solvable(_))
    }
}

/// Solves every atom, reusing earlier regions where they already apply.
pub fn decide_solvable(ts: &TransitionSystem, ty: NetType, budget: u64) -> Decision {
    decide_atoms(ts, ty, enumerate_atoms(ts), budget)
}

/// As [`decide_solvable`], restricted to the given atoms and stopping at
/// the first unsolvable or budget-limited one.
pub fn decide_atoms(ts: &TransitionSystem, ty: NetType, atoms: Vec<SeparationAtom>, budget: u64) -> Decision {
    let search = RegionSearch::new(ts, ty);
    let mut set = AdmissibleSet::default();
    for atom in atoms {
        if let Some(k) = set.regions.iter().position(|r| r.solves(&atom)) {
            set.witness.push((atom, k));
            continue;
        }
        match search.solve(Some(atom), budget) {
            AtomOutcome::Solved(r) => {
                set.regions.push(r);
                set.witness.push((atom, set.regions.len() - 1));
            }
            AtomOutcome::Unsolvable => return Decision::Unsolvable(atom),
            AtomOutcome::BudgetExhausted => return Decision::Inconclusive(atom),
        }
    }
    Decision::Solvable(set)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SynthesisError {
    #[error("region {0} is not a valid region of the input")]
    InvalidRegion(usize),
    #[error("no region solves atom {0:?}")]
    Unsolved(SeparationAtom),
    #[error(transparent)]
    Net(#[from] NetError),
}

/// Builds `N^R_A`: one place per region, transitions are the events,
/// flows are signatures and the initial marking is the initial support.
/// Places are named `r0, r1, …`.
pub fn synthesize(ts: &TransitionSystem, ty: NetType, regions: &[Region]) -> Result<BooleanNet, SynthesisError> {
    for (k, r) in regions.iter().enumerate() {
        if !region_valid(ts, ty, r) {
            return Err(SynthesisError::InvalidRegion(k));
        }
    }
    for atom in enumerate_atoms(ts) {
        if !regions.iter().any(|r| r.solves(&atom)) {
            return Err(SynthesisError::Unsolved(atom));
        }
    }
    let places = regions
        .iter()
        .enumerate()
        .map(|(k, r)| (format!("r{k}"), r.sup(ts.initial())))
        .collect();
    let flow = regions.iter().map(|r| r.signature.clone()).collect();
    let net = BooleanNet::with_flows(ts.name(), ty, places, ts.events().to_vec(), flow)?;
    Ok(net)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interaction::Interaction::*;
    use crate::iso::ts_isomorphic;
    use crate::net::DEFAULT_CAP;
    use crate::search::DEFAULT_BUDGET;
    use crate::ts::{ts_from_arcs, TsBuilder};

    fn four_systems(name: &str) -> TransitionSystem {
        let arcs: &[(&str, &str, &str)] = match name {
            "a1" => &[("s0", "a", "s1"), ("s1", "a", "s2"), ("s2", "a", "s1")],
            "a2" => &[("s0", "a", "s1"), ("s1", "a", "s2")],
            "a3" => &[("s0", "a", "s1"), ("s1", "a", "s2"), ("s2", "a", "s2")],
            _ => &[("s0", "a", "s1"), ("s1", "a", "s2"), ("s2", "a", "s3")],
        };
        ts_from_arcs(name, "s0", arcs).unwrap()
    }

    #[test]
    fn four_system_verdicts() {
        let ty = NetType::of(&[Nop, Set, Swap, Free]);
        assert!(decide_solvable(&four_systems("a1"), ty, DEFAULT_BUDGET).is_solvable());
        assert_eq!(
            decide_solvable(&four_systems("a2"), ty, DEFAULT_BUDGET),
            Decision::Unsolvable(SeparationAtom::Essp(0, 2))
        );
        assert_eq!(
            decide_solvable(&four_systems("a3"), ty, DEFAULT_BUDGET),
            Decision::Unsolvable(SeparationAtom::Ssp(1, 2))
        );
        assert!(!decide_solvable(&four_systems("a4"), ty, DEFAULT_BUDGET).is_solvable());
    }

    #[test]
    fn round_trip_a1() {
        let ty = NetType::of(&[Nop, Set, Swap, Free]);
        let a1 = four_systems("a1");
        let Decision::Solvable(set) = decide_solvable(&a1, ty, DEFAULT_BUDGET) else {
            panic!("a1 is solvable");
        };
        let net = synthesize(&a1, ty, &set.regions).unwrap();
        let rg = net.reachability_graph(DEFAULT_CAP).unwrap();
        assert!(ts_isomorphic(&a1, &rg).is_some());
    }

    #[test]
    fn empty_system() {
        let lone = TsBuilder::new("x").initial("s").build().unwrap();
        let Decision::Solvable(set) = decide_solvable(&lone, NetType::of(&[Nop]), DEFAULT_BUDGET) else {
            panic!()
        };
        assert!(set.regions.is_empty());
        let net = synthesize(&lone, NetType::of(&[Nop]), &set.regions).unwrap();
        assert!(net.places().is_empty() && net.transitions().is_empty());
    }

    #[test]
    fn direct_definition() {
        let ts = ts_from_arcs("x", "s0", &[("s0", "a", "s1")]).unwrap();
        let ty = NetType::of(&[Nop, Inp]);
        let r = Region {
            support: vec![true, false],
            signature: vec![Inp],
        };
        let net = synthesize(&ts, ty, &[r]).unwrap();
        assert_eq!(net.initial_marking(), &vec![true]);
        assert_eq!(net.flow(0, 0), Inp);
    }

    #[test]
    fn rejects_non_admissible() {
        let ts = ts_from_arcs("x", "s0", &[("s0", "a", "s1")]).unwrap();
        assert!(matches!(
            synthesize(&ts, NetType::of(&[Nop, Inp]), &[]),
            Err(SynthesisError::Unsolved(_))
        ));
    }
}
