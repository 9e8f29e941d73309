//! Exhaustive generation of small transition systems up to renaming.
//!
//! A system with `n` states and `k` events is encoded as a row-major table
//! `δ[s][e]`. States are numbered in order of first appearance when the
//! table is scanned row by row, which makes the numbering canonical for
//! initialized deterministic systems. Event renaming is factored out by
//! keeping only tables that are minimal among all event permutations.

use crate::ts::{Arc, TransitionSystem};

const NONE: u8 = u8::MAX;

fn state_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("s{i}")).collect()
}

fn event_names(k: usize) -> Vec<String> {
    (0..k).map(|i| format!("e{i}")).collect()
}

/// Builds a system from a row-major table (`NONE` marks no arc).
pub fn from_table(n: usize, k: usize, table: &[u8]) -> TransitionSystem {
    let arcs = (0..n)
        .flat_map(|s| (0..k).map(move |e| (s, e)))
        .filter(|&(s, e)| table[s * k + e] != NONE)
        .map(|(s, e)| Arc {
            src: s,
            event: e,
            dst: table[s * k + e] as usize,
        })
        .collect();
    TransitionSystem::from_parts(format!("t{n}x{k}"), state_names(n), event_names(k), 0, arcs)
}

/// Renumbers states by first appearance after permuting events; returns
/// the resulting table.
fn relabel(n: usize, k: usize, table: &[u8], perm: &[usize]) -> Vec<u8> {
    let mut order = vec![NONE; n];
    let mut rank = vec![NONE; n];
    order[0] = 0;
    rank[0] = 0;
    let mut found = 1usize;
    let mut out = vec![NONE; n * k];
    for i in 0..n {
        let s = order[i] as usize;
        for (ne, &oe) in perm.iter().enumerate() {
            let d = table[s * k + oe];
            if d == NONE {
                continue;
            }
            if rank[d as usize] == NONE {
                rank[d as usize] = found as u8;
                order[found] = d;
                found += 1;
            }
            out[i * k + ne] = rank[d as usize];
        }
    }
    out
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    fn go(i: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for j in i..cur.len() {
            cur.swap(i, j);
            go(i + 1, cur, out);
            cur.swap(i, j);
        }
    }
    go(0, &mut cur, &mut out);
    out
}

/// Calls `visit` on every deterministic reachable system with exactly `n`
/// states and exactly `k` events (each labelling at least one arc), one
/// representative per renaming class. Returns the number visited.
pub fn for_each_system(n: usize, k: usize, mut visit: impl FnMut(&TransitionSystem)) -> usize {
    assert!(n >= 1 && n < NONE as usize);
    let perms = permutations(k);
    let mut table = vec![NONE; n * k];
    let mut count = 0;
    fill(n, k, 0, 1, &mut table, &perms, &mut |t| {
        count += 1;
        visit(&from_table(n, k, t));
    });
    count
}

fn fill(n: usize, k: usize, cell: usize, found: usize, table: &mut [u8], perms: &[Vec<usize>], emit: &mut impl FnMut(&[u8])) {
    if cell == n * k {
        if found == n && (0..k).all(|e| (0..n).any(|s| table[s * k + e] != NONE)) {
            let canonical = perms.iter().all(|p| relabel(n, k, table, p).as_slice() >= &*table);
            if canonical {
                emit(table);
            }
        }
        return;
    }
    let state = cell / k;
    if state >= found {
        return;
    }
    // Every undiscovered state must still be reachable from remaining cells.
    if n - found > n * k - cell {
        return;
    }
    for d in 0..found.min(n) {
        table[cell] = d as u8;
        fill(n, k, cell + 1, found, table, perms, emit);
    }
    if found < n {
        table[cell] = found as u8;
        fill(n, k, cell + 1, found + 1, table, perms, emit);
    }
    table[cell] = NONE;
    fill(n, k, cell + 1, found, table, perms, emit);
}

/// Every system with at most `max_states` states and at most `max_events`
/// events, one per renaming class.
pub fn for_each_small_system(max_states: usize, max_events: usize, mut visit: impl FnMut(&TransitionSystem)) -> usize {
    let mut total = 0;
    for n in 1..=max_states {
        for k in 0..=max_events {
            if n > 1 && k == 0 {
                continue;
            }
            total += for_each_system(n, k, &mut visit);
        }
    }
    total
}

/// Restricted growth strings of the given length with values below `max`.
fn growth_strings(len: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn go(len: usize, max: usize, next: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for v in 0..(next + 1).min(max) {
            cur.push(v);
            go(len, max, next.max(v + 1), cur, out);
            cur.pop();
        }
    }
    go(len, max, 0, &mut cur, &mut out);
    out
}

/// All 1-bounded systems (simple paths and directed cycles through the
/// initial state) with at most `max_states` states and `max_events`
/// events, one per renaming class.
pub fn linear_systems(max_states: usize, max_events: usize) -> Vec<TransitionSystem> {
    let mut out = Vec::new();
    for n in 1..=max_states {
        for (cyclic, len) in [(false, n - 1), (true, n)] {
            for labels in growth_strings(len, max_events) {
                let k = labels.iter().map(|&l| l + 1).max().unwrap_or(0);
                let arcs = labels
                    .iter()
                    .enumerate()
                    .map(|(p, &e)| Arc {
                        src: p,
                        event: e,
                        dst: if cyclic { (p + 1) % n } else { p + 1 },
                    })
                    .collect();
                let kind = if cyclic { "c" } else { "p" };
                out.push(TransitionSystem::from_parts(
                    format!("{kind}{n}"),
                    state_names(n),
                    event_names(k),
                    0,
                    arcs,
                ));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiny_counts() {
        // One state: eventless, or one loop.
        assert_eq!(for_each_system(1, 0, |_| {}), 1);
        assert_eq!(for_each_system(1, 1, |_| {}), 1);
        // Two states, one event: 0→1 alone, 0→1 with 1→0, 0→1 with 1→1.
        assert_eq!(for_each_system(2, 1, |_| {}), 3);
    }

    #[test]
    fn all_valid_and_distinct() {
        let mut seen = std::collections::HashSet::new();
        for_each_small_system(3, 2, |ts| {
            assert!(ts.validate().is_valid());
            let key: Vec<_> = ts.arcs().to_vec();
            assert!(seen.insert((ts.num_events(), key)));
        });
    }

    #[test]
    fn event_renaming_is_factored_out() {
        // Two states, two events, only 0→1 arcs: {e0: 0→1, e1: 0→1}.
        // Plus variants; the class of "e0 loops at 0, e1 to 1" and
        // "e0 to 1, e1 loops at 0" must be counted once.
        let mut reps = Vec::new();
        for_each_system(2, 2, |ts| reps.push(ts.clone()));
        for (i, a) in reps.iter().enumerate() {
            for b in reps.iter().skip(i + 1) {
                let swapped: Vec<Arc> = {
                    let mut v: Vec<Arc> = b
                        .arcs()
                        .iter()
                        .map(|x| Arc {
                            event: 1 - x.event,
                            ..*x
                        })
                        .collect();
                    v.sort();
                    v
                };
                assert!(!(a.arcs() == swapped.as_slice()), "duplicate class");
            }
        }
    }

    #[test]
    fn linear_counts() {
        let all = linear_systems(3, 5);
        // paths: 1 + 1 + 2, cycles: 1 + 2 + 5
        assert_eq!(all.len(), 12);
        assert!(all.iter().all(|t| t.bound() <= 1 && t.validate().is_valid()));
    }
}
