//! Regions and separation atoms.

use std::collections::VecDeque;
use std::fmt;

use crate::interaction::{Interaction, NetType, TypeIsomorphism};
use crate::ts::{EventId, StateId, TransitionSystem};

/// A pair `(sup, sig)`: a bit per state and an interaction per event.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Region {
    pub support: Vec<bool>,
    pub signature: Vec<Interaction>,
}

impl Region {
    pub fn sup(&self, s: StateId) -> bool {
        self.support[s]
    }

    pub fn sig(&self, e: EventId) -> Interaction {
        self.signature[e]
    }

    /// The set of interactions used by the signature.
    pub fn used_type(&self) -> NetType {
        NetType::of(&self.signature)
    }

    /// Whether the region solves `atom` (validity is not checked here).
    pub fn solves(&self, atom: &SeparationAtom) -> bool {
        match *atom {
            SeparationAtom::Ssp(s, t) => self.support[s] != self.support[t],
            SeparationAtom::Essp(e, s) => self.signature[e].apply(self.support[s]).is_none(),
        }
    }

    pub fn transport(&self, iso: &TypeIsomorphism) -> Region {
        Region {
            support: self.support.iter().map(|&x| iso.bit(x)).collect(),
            signature: self.signature.iter().map(|&i| iso.interaction(i)).collect(),
        }
    }

    /// Renders as `sup: s0=1 s1=0 | sig: a=swap` for diagnostics.
    pub fn describe(&self, ts: &TransitionSystem) -> String {
        let sup: Vec<String> = self
            .support
            .iter()
            .enumerate()
            .map(|(s, &x)| format!("{}={}", ts.state_name(s), x as u8))
            .collect();
        let sig: Vec<String> = self
            .signature
            .iter()
            .enumerate()
            .map(|(e, i)| format!("{}={}", ts.event_name(e), i))
            .collect();
        format!("sup: {} | sig: {}", sup.join(" "), sig.join(" "))
    }
}

/// An SSP atom (two distinct states) or an ESSP atom (an event not enabled
/// at a state).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SeparationAtom {
    Ssp(StateId, StateId),
    Essp(EventId, StateId),
}

impl SeparationAtom {
    pub fn is_legal(&self, ts: &TransitionSystem) -> bool {
        match *self {
            SeparationAtom::Ssp(s, t) => s != t && s < ts.num_states() && t < ts.num_states(),
            SeparationAtom::Essp(e, s) => e < ts.num_events() && s < ts.num_states() && !ts.enables(s, e),
        }
    }

    pub fn display<'a>(&'a self, ts: &'a TransitionSystem) -> AtomDisplay<'a> {
        AtomDisplay { atom: self, ts }
    }
}

pub struct AtomDisplay<'a> {
    atom: &'a SeparationAtom,
    ts: &'a TransitionSystem,
}

impl fmt::Display for AtomDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self.atom {
            SeparationAtom::Ssp(s, t) => {
                write!(f, "SSP ({}, {})", self.ts.state_name(s), self.ts.state_name(t))
            }
            SeparationAtom::Essp(e, s) => {
                write!(f, "ESSP ({}, {})", self.ts.event_name(e), self.ts.state_name(s))
            }
        }
    }
}

/// True iff every arc `s -e-> s'` maps to a step `sup(s) -sig(e)-> sup(s')` of `ty`.
pub fn region_valid(ts: &TransitionSystem, ty: NetType, r: &Region) -> bool {
    if r.support.len() != ts.num_states() || r.signature.len() != ts.num_events() {
        return false;
    }
    ts.arcs()
        .iter()
        .all(|a| ty.step(r.support[a.src], r.signature[a.event]) == Some(r.support[a.dst]))
}

/// Propagates the support from the initial state and checks every arc.
pub fn extend_region(ts: &TransitionSystem, ty: NetType, sup_init: bool, sig: &[Interaction]) -> Option<Region> {
    let mut sup: Vec<Option<bool>> = vec![None; ts.num_states()];
    sup[ts.initial()] = Some(sup_init);
    let mut queue = VecDeque::from([ts.initial()]);
    while let Some(s) = queue.pop_front() {
        let x = sup[s].unwrap();
        for &(e, d) in ts.successors(s) {
            let y = ty.step(x, sig[e])?;
            match sup[d] {
                None => {
                    sup[d] = Some(y);
                    queue.push_back(d);
                }
                Some(old) if old != y => return None,
                Some(_) => {}
            }
        }
    }
    let region = Region {
        support: sup.into_iter().map(|x| x.expect("reachable system")).collect(),
        signature: sig.to_vec(),
    };
    debug_assert!(region_valid(ts, ty, &region));
    Some(region)
}

/// All SSP atoms `(s, t)` with `s < t`, followed by all ESSP atoms `(e, s)`
/// ordered by event then state.
pub fn enumerate_atoms(ts: &TransitionSystem) -> Vec<SeparationAtom> {
    let n = ts.num_states();
    let mut atoms = Vec::new();
    for s in 0..n {
        for t in s + 1..n {
            atoms.push(SeparationAtom::Ssp(s, t));
        }
    }
    for e in 0..ts.num_events() {
        for s in 0..n {
            if !ts.enables(s, e) {
                atoms.push(SeparationAtom::Essp(e, s));
            }
        }
    }
    atoms
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ts::ts_from_arcs;
    use Interaction::*;

    fn a1() -> TransitionSystem {
        ts_from_arcs("a1", "s0", &[("s0", "a", "s1"), ("s1", "a", "s2"), ("s2", "a", "s1")]).unwrap()
    }

    fn a1_type() -> NetType {
        NetType::of(&[Nop, Set, Swap, Free])
    }

    #[test]
    fn swap_region_of_a1() {
        let r = Region {
            support: vec![true, false, true],
            signature: vec![Swap],
        };
        assert!(region_valid(&a1(), a1_type(), &r));
        let bad = Region {
            signature: vec![Nop],
            ..r.clone()
        };
        assert!(!region_valid(&a1(), a1_type(), &bad));
        assert!(r.solves(&SeparationAtom::Ssp(0, 1)));
        assert!(!r.solves(&SeparationAtom::Ssp(0, 2)));
    }

    #[test]
    fn constant_region_is_valid() {
        let r = Region {
            support: vec![false; 3],
            signature: vec![Nop],
        };
        assert!(region_valid(&a1(), NetType::of(&[Nop]), &r));
    }

    #[test]
    fn extension_examples() {
        let ts = a1();
        let r = extend_region(&ts, NetType::of(&[Nop]), true, &[Nop]).unwrap();
        assert_eq!(r.support, vec![true; 3]);
        let cyc = ts_from_arcs("c", "s0", &[("s0", "a", "s1"), ("s1", "b", "s0")]).unwrap();
        let ty = NetType::of(&[Nop, Inp, Set]);
        assert!(extend_region(&cyc, ty, true, &[Inp, Nop]).is_none());
        assert!(extend_region(&cyc, ty, true, &[Inp, Set]).is_some());
    }

    #[test]
    fn atom_counts() {
        assert_eq!(enumerate_atoms(&a1()).len(), 3);
        let a2 = ts_from_arcs("a2", "s0", &[("s0", "a", "s1"), ("s1", "a", "s2")]).unwrap();
        let atoms = enumerate_atoms(&a2);
        assert_eq!(atoms.len(), 4);
        assert_eq!(atoms[3], SeparationAtom::Essp(0, 2));
        let lone = crate::ts::TsBuilder::new("x").initial("s").build().unwrap();
        assert!(enumerate_atoms(&lone).is_empty());
    }

    #[test]
    fn transport_preserves_validity() {
        let r = Region {
            support: vec![true, false, true],
            signature: vec![Swap],
        };
        let c = TypeIsomorphism::complement();
        let r2 = r.transport(&c);
        assert_eq!(r2.support, vec![false, true, false]);
        assert!(region_valid(&a1(), c.transport(a1_type()), &r2));
        assert!(r2.solves(&SeparationAtom::Ssp(0, 1)));
        assert!(r2.solves(&SeparationAtom::Ssp(2, 1)));
    }
}
