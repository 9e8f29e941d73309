//! Shapes of 1-bounded systems: simple paths and directed cycles.

use crate::region::SeparationAtom;
use crate::ts::{Arc, EventId, StateId, TransitionSystem};

use super::PolyError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LinearKind {
    SimplePath,
    DirectedCycle,
}

/// The arc sequence of a 1-bounded system.
///
/// For a path, arc `p` leads from `states[p]` to `states[p + 1]`. For a
/// cycle, `states` lists every state once and arc `p` leads from
/// `states[p]` to `states[(p + 1) % len]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearShape {
    pub kind: LinearKind,
    pub states: Vec<StateId>,
    pub events: Vec<EventId>,
    /// Arc positions `p` such that arcs `p` and `p + 1` (cyclically for a
    /// cycle) carry the same event between distinct states.
    pub repeats: Vec<usize>,
}

impl LinearShape {
    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    /// Source state of arc `p`.
    pub fn source(&self, p: usize) -> StateId {
        self.states[p % self.states.len()]
    }

    /// Target state of arc `p`.
    pub fn target(&self, p: usize) -> StateId {
        self.states[(p + 1) % self.states.len()]
    }

    /// The SSP atom that a repeated event leaves unsolvable.
    pub fn repeat_atom(&self, p: usize) -> SeparationAtom {
        let (a, b) = (self.target(p), self.target(p + 1));
        SeparationAtom::Ssp(a.min(b), a.max(b))
    }

    /// Subsequences between consecutive occurrences of `k` on a cycle:
    /// each entry is the arc positions strictly after one `k` arc and up to
    /// the next one.
    pub fn k_partition(&self, k: EventId) -> Vec<Vec<usize>> {
        let len = self.len();
        let ks: Vec<usize> = (0..len).filter(|&p| self.events[p] == k).collect();
        ks.iter()
            .enumerate()
            .map(|(n, &p)| {
                let next = ks[(n + 1) % ks.len()];
                let span = (next + len - p - 1) % len;
                (1..=span).map(|d| (p + d) % len).collect()
            })
            .collect()
    }
}

/// Classifies a system of bound at most one.
pub fn classify_linear(ts: &TransitionSystem) -> Result<LinearShape, PolyError> {
    let g = ts.bound();
    if g > 1 {
        return Err(PolyError::BoundTooLarge { bound: g, allowed: 1 });
    }
    let mut states = vec![ts.initial()];
    let mut events = Vec::new();
    let mut cur = ts.initial();
    let kind = loop {
        match ts.successors(cur).first() {
            None => break LinearKind::SimplePath,
            Some(&(e, next)) => {
                events.push(e);
                if next == ts.initial() {
                    break LinearKind::DirectedCycle;
                }
                states.push(next);
                cur = next;
            }
        }
    };
    let len = events.len();
    let repeats = match kind {
        LinearKind::SimplePath => (0..len.saturating_sub(1)).filter(|&p| events[p] == events[p + 1]).collect(),
        LinearKind::DirectedCycle if len >= 2 => (0..len).filter(|&p| events[p] == events[(p + 1) % len]).collect(),
        LinearKind::DirectedCycle => Vec::new(),
    };
    Ok(LinearShape {
        kind,
        states,
        events,
        repeats,
    })
}

/// Name of the closing event: `oplus`, primed until it is fresh.
pub(crate) fn fresh_event_name(ts: &TransitionSystem) -> String {
    let mut name = "oplus".to_string();
    while ts.event_id(&name).is_some() {
        name.push('\'');
    }
    name
}

/// Closes a simple path into a cycle with one fresh event from its last
/// state back to the initial state. The fresh event gets the highest index.
pub fn cycle_extension(ts: &TransitionSystem) -> Result<TransitionSystem, PolyError> {
    let shape = classify_linear(ts)?;
    if shape.kind != LinearKind::SimplePath {
        return Err(PolyError::NotAPath);
    }
    let last = *shape.states.last().unwrap();
    let arc = Arc {
        src: last,
        event: ts.num_events(),
        dst: ts.initial(),
    };
    Ok(ts.with_extra(&[fresh_event_name(ts)], &[arc]))
}
