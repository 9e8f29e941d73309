//! Label-preserving isomorphism of deterministic initialized systems.

use std::collections::VecDeque;

use crate::ts::{StateId, TransitionSystem};

/// Returns `map` with `map[a] = b` when the systems are isomorphic by a
/// bijection that fixes event names and sends initial state to initial state.
///
/// Determinism makes the matching forced: starting from the initial pair,
/// each outgoing event pins down the image of its target.
pub fn ts_isomorphic(a: &TransitionSystem, b: &TransitionSystem) -> Option<Vec<StateId>> {
    if a.num_states() != b.num_states() || a.arcs().len() != b.arcs().len() {
        return None;
    }
    let n = a.num_states();
    let mut fwd: Vec<Option<StateId>> = vec![None; n];
    let mut bwd: Vec<Option<StateId>> = vec![None; n];
    fwd[a.initial()] = Some(b.initial());
    bwd[b.initial()] = Some(a.initial());
    let mut queue = VecDeque::from([a.initial()]);
    while let Some(sa) = queue.pop_front() {
        let sb = fwd[sa].unwrap();
        let out_a = a.successors(sa);
        let out_b = b.successors(sb);
        if out_a.len() != out_b.len() {
            return None;
        }
        for &(ea, ta) in out_a {
            let eb = b.event_id(a.event_name(ea))?;
            let tb = b.delta(sb, eb)?;
            match (fwd[ta], bwd[tb]) {
                (None, None) => {
                    fwd[ta] = Some(tb);
                    bwd[tb] = Some(ta);
                    queue.push_back(ta);
                }
                (Some(x), Some(y)) if x == tb && y == ta => {}
                _ => return None,
            }
        }
    }
    fwd.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ts::ts_from_arcs;

    fn a1() -> TransitionSystem {
        ts_from_arcs("a1", "s0", &[("s0", "a", "s1"), ("s1", "a", "s2"), ("s2", "a", "s1")]).unwrap()
    }

    #[test]
    fn reflexive() {
        assert_eq!(ts_isomorphic(&a1(), &a1()), Some(vec![0, 1, 2]));
    }

    #[test]
    fn a1_vs_a2() {
        let a2 = ts_from_arcs("a2", "s0", &[("s0", "a", "s1"), ("s1", "a", "s2")]).unwrap();
        assert_eq!(ts_isomorphic(&a1(), &a2), None);
    }

    #[test]
    fn renamed_states() {
        let b = ts_from_arcs("b", "x", &[("y", "a", "z"), ("x", "a", "y"), ("z", "a", "y")]).unwrap();
        let m = ts_isomorphic(&a1(), &b).unwrap();
        assert_eq!(b.state_name(m[1]), "y");
        let back = ts_isomorphic(&b, &a1()).unwrap();
        for (i, &j) in m.iter().enumerate() {
            assert_eq!(back[j], i);
        }
    }

    #[test]
    fn labels_matter() {
        let b = ts_from_arcs("b", "s0", &[("s0", "b", "s1"), ("s1", "a", "s2"), ("s2", "a", "s1")]).unwrap();
        assert_eq!(ts_isomorphic(&a1(), &b), None);
    }
}
