#![allow(dead_code)]

use std::path::PathBuf;

use boolnet::ts::ts_from_arcs;
use boolnet::TransitionSystem;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

pub fn read_fixture(name: &str) -> String {
    std::fs::read_to_string(fixture(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// A random deterministic reachable system with `1..=max_states` states
/// and at most `max_events` events. A random spanning tree rooted at `s0`
/// guarantees reachability; every remaining slot gets an arc with
/// probability `density`.
pub fn random_ts(rng: &mut impl Rng, max_states: usize, max_events: usize, density: f64) -> TransitionSystem {
    let n = rng.gen_range(1..=max_states);
    let k = rng.gen_range(1..=max_events);
    let mut delta: Vec<Vec<Option<usize>>> = vec![vec![None; k]; n];
    for s in 1..n {
        let free: Vec<(usize, usize)> = (0..s)
            .flat_map(|p| (0..k).map(move |e| (p, e)))
            .filter(|&(p, e)| delta[p][e].is_none())
            .collect();
        let &(p, e) = free.choose(rng).expect("a tree slot is always free");
        delta[p][e] = Some(s);
    }
    for row in delta.iter_mut() {
        for slot in row.iter_mut() {
            if slot.is_none() && rng.gen_bool(density) {
                *slot = Some(rng.gen_range(0..n));
            }
        }
    }
    let names: Vec<String> = (0..n).map(|i| format!("s{i}")).collect();
    let events: Vec<String> = (0..k).map(|e| format!("e{e}")).collect();
    let arcs: Vec<(&str, &str, &str)> = (0..n)
        .flat_map(|s| (0..k).map(move |e| (s, e)))
        .filter_map(|(s, e)| delta[s][e].map(|d| (names[s].as_str(), events[e].as_str(), names[d].as_str())))
        .collect();
    ts_from_arcs("random", "s0", &arcs).expect("generator builds valid systems")
}
