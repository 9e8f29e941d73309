//! Cubic monotone one-in-three 3SAT instances and a brute-force oracle.

use std::fmt;

use thiserror::Error;

/// Largest variable count the oracle accepts.
pub const ORACLE_LIMIT: usize = 24;

/// A negation-free formula whose `m` clauses are strictly increasing
/// triples over the variables `0..m`, each variable occurring in exactly
/// three clauses.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OneInThreeInstance {
    clauses: Vec<[usize; 3]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("clause {clause} ({}, {}, {}) is not strictly increasing", triple[0], triple[1], triple[2])]
    Unordered { clause: usize, triple: [usize; 3] },
    #[error("clause {clause} mentions variable {var}, but only 0..{m} exist")]
    OutOfRange { clause: usize, var: usize, m: usize },
    #[error("variable {var} occurs in {count} clauses instead of three")]
    NotCubic { var: usize, count: usize },
    #[error("clauses {first} and {second} are identical")]
    DuplicateClause { first: usize, second: usize },
    #[error("{m} variables exceed the oracle limit of {ORACLE_LIMIT}")]
    TooLarge { m: usize },
}

/// Checks the cubic monotone shape and builds the instance.
pub fn validate_instance(raw: &[[usize; 3]]) -> Result<OneInThreeInstance, InstanceError> {
    let m = raw.len();
    let mut count = vec![0usize; m];
    for (c, t) in raw.iter().enumerate() {
        if !(t[0] < t[1] && t[1] < t[2]) {
            return Err(InstanceError::Unordered { clause: c, triple: *t });
        }
        for &v in t {
            if v >= m {
                return Err(InstanceError::OutOfRange { clause: c, var: v, m });
            }
            count[v] += 1;
        }
    }
    if let Some((var, &count)) = count.iter().enumerate().find(|&(_, &n)| n != 3) {
        return Err(InstanceError::NotCubic { var, count });
    }
    for (i, a) in raw.iter().enumerate() {
        if let Some(j) = raw[i + 1..].iter().position(|b| a == b) {
            return Err(InstanceError::DuplicateClause { first: i, second: i + 1 + j });
        }
    }
    Ok(OneInThreeInstance { clauses: raw.to_vec() })
}

impl OneInThreeInstance {
    pub fn clauses(&self) -> &[[usize; 3]] {
        &self.clauses
    }

    /// Number of variables, which equals the number of clauses.
    pub fn num_vars(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    /// True if every clause contains exactly one member of `model`.
    pub fn is_model(&self, model: &[usize]) -> bool {
        let mut member = vec![false; self.num_vars()];
        for &v in model {
            match member.get_mut(v) {
                Some(slot) => *slot = true,
                None => return false,
            }
        }
        self.clauses.iter().all(|c| c.iter().filter(|&&v| member[v]).count() == 1)
    }

    /// The clauses containing `var`, in order.
    pub fn occurrences(&self, var: usize) -> Vec<usize> {
        (0..self.clauses.len()).filter(|&c| self.clauses[c].contains(&var)).collect()
    }
}

impl fmt::Display for OneInThreeInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.clauses {
            writeln!(f, "{} {} {}", c[0], c[1], c[2])?;
        }
        Ok(())
    }
}

/// The lexicographically least one-in-three model as a sorted variable
/// list, or `None` if there is none.
pub fn brute_force_model(phi: &OneInThreeInstance) -> Result<Option<Vec<usize>>, InstanceError> {
    let m = phi.num_vars();
    if m > ORACLE_LIMIT {
        return Err(InstanceError::TooLarge { m });
    }
    // Every model has size m/3, so include-first depth-first order meets
    // the least model first.
    if !m.is_multiple_of(3) {
        return Ok(None);
    }
    let occ: Vec<Vec<usize>> = (0..m).map(|v| phi.occurrences(v)).collect();
    let mut hits = vec![0u8; m];
    let mut chosen = Vec::new();
    Ok(if search(phi, &occ, 0, &mut hits, &mut chosen) {
        Some(chosen)
    } else {
        None
    })
}

fn search(phi: &OneInThreeInstance, occ: &[Vec<usize>], v: usize, hits: &mut [u8], chosen: &mut Vec<usize>) -> bool {
    if v == occ.len() {
        return hits.iter().all(|&h| h == 1);
    }
    if occ[v].iter().all(|&c| hits[c] == 0) {
        for &c in &occ[v] {
            hits[c] += 1;
        }
        chosen.push(v);
        if search(phi, occ, v + 1, hits, chosen) {
            return true;
        }
        chosen.pop();
        for &c in &occ[v] {
            hits[c] -= 1;
        }
    }
    // Skipping v is only sound if each of its clauses can still be hit.
    let closes = |c: usize| phi.clauses[c][2] == v;
    if occ[v].iter().any(|&c| closes(c) && hits[c] == 0) {
        return false;
    }
    search(phi, occ, v + 1, hits, chosen)
}

/// The six-clause instance of the worked example with model `{0, 4}`.
pub fn example_instance() -> OneInThreeInstance {
    validate_instance(&[[0, 1, 2], [0, 2, 3], [0, 1, 3], [2, 4, 5], [1, 4, 5], [3, 4, 5]]).unwrap()
}

/// Calls `visit` on every valid instance with `m` variables whose clause
/// list is sorted, i.e. one instance per clause set.
pub fn for_each_instance(m: usize, mut visit: impl FnMut(&OneInThreeInstance) -> bool) {
    let triples: Vec<[usize; 3]> = (0..m)
        .flat_map(|a| (a + 1..m).flat_map(move |b| (b + 1..m).map(move |c| [a, b, c])))
        .collect();
    let mut count = vec![0u8; m];
    let mut cur = Vec::with_capacity(m);
    pick(&triples, 0, m, &mut count, &mut cur, &mut visit);
}

fn pick(
    triples: &[[usize; 3]],
    from: usize,
    m: usize,
    count: &mut [u8],
    cur: &mut Vec<[usize; 3]>,
    visit: &mut impl FnMut(&OneInThreeInstance) -> bool,
) -> bool {
    if cur.len() == m {
        if count.iter().all(|&c| c == 3) {
            return visit(&OneInThreeInstance { clauses: cur.clone() });
        }
        return true;
    }
    for k in from..triples.len() {
        let t = triples[k];
        // The smallest variable still short of three occurrences must be
        // covered by the next clause, since triples are visited in order.
        if let Some(low) = count.iter().position(|&c| c < 3) {
            if t[0] > low {
                break;
            }
        }
        if t.iter().any(|&v| count[v] == 3) {
            continue;
        }
        for &v in &t {
            count[v] += 1;
        }
        cur.push(t);
        let go_on = pick(triples, k + 1, m, count, cur, visit);
        cur.pop();
        for &v in &t {
            count[v] -= 1;
        }
        if !go_on {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_model() {
        let phi = example_instance();
        assert_eq!(phi.num_vars(), 6);
        assert_eq!(brute_force_model(&phi).unwrap(), Some(vec![0, 4]));
        assert!(phi.is_model(&[0, 4]));
        assert!(!phi.is_model(&[1]));
    }

    #[test]
    fn empty() {
        let phi = validate_instance(&[]).unwrap();
        assert_eq!(brute_force_model(&phi).unwrap(), Some(vec![]));
    }

    #[test]
    fn rejections() {
        assert!(matches!(validate_instance(&[[2, 1, 0]]), Err(InstanceError::Unordered { .. })));
        assert!(matches!(validate_instance(&[[0, 1, 5]]), Err(InstanceError::OutOfRange { .. })));
        let four = [[0, 1, 2], [0, 1, 3], [0, 2, 3], [0, 1, 2]];
        assert!(matches!(validate_instance(&four), Err(InstanceError::NotCubic { var: 0, count: 4 })));
        let dup = [[0, 1, 2], [0, 1, 2], [0, 1, 2]];
        assert!(matches!(validate_instance(&dup), Err(InstanceError::DuplicateClause { first: 0, second: 1 })));
    }

    #[test]
    fn oracle_matches_exhaustive_enumeration() {
        for m in [4, 6] {
            for_each_instance(m, |phi| {
                let least = (0u32..1 << m)
                    .map(|mask| (0..m).filter(|&v| mask >> v & 1 == 1).collect::<Vec<_>>())
                    .filter(|s| phi.is_model(s))
                    .min();
                assert_eq!(brute_force_model(phi).unwrap(), least, "{phi}");
                true
            });
        }
    }

    #[test]
    fn instance_counts() {
        let mut n = 0;
        for_each_instance(4, |_| {
            n += 1;
            true
        });
        assert_eq!(n, 1);
    }
}
