//! Initialized deterministic labeled transition systems.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use thiserror::Error;

pub type StateId = usize;
pub type EventId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arc {
    pub src: StateId,
    pub event: EventId,
    pub dst: StateId,
}

/// A single problem found while validating raw TS input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Two arcs leave `state` with `event` towards different targets.
    Nondeterministic {
        state: String,
        event: String,
        targets: (String, String),
    },
    Unreachable { state: String },
    UndeclaredState { state: String },
    UndeclaredEvent { event: String },
    MissingInitial,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Nondeterministic {
                state,
                event,
                targets,
            } => write!(
                f,
                "determinism: ({state}, {event}) leads to both {} and {}",
                targets.0, targets.1
            ),
            Violation::Unreachable { state } => write!(f, "reachability: state {state} is not reachable"),
            Violation::UndeclaredState { state } => write!(f, "undeclared state {state}"),
            Violation::UndeclaredEvent { event } => write!(f, "undeclared event {event}"),
            Violation::MissingInitial => write!(f, "no initial state given"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub warnings: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TsError {
    #[error("invalid transition system: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
}

/// Collects raw states, events and arcs and turns them into a validated
/// [`TransitionSystem`].
///
/// Names used in arcs are declared implicitly unless the builder is strict
/// for that kind of identifier, which happens as soon as one explicit
/// declaration is made.
#[derive(Debug, Clone, Default)]
pub struct TsBuilder {
    name: String,
    states: Vec<String>,
    events: Vec<String>,
    state_ix: HashMap<String, StateId>,
    event_ix: HashMap<String, EventId>,
    declared_states: Option<Vec<String>>,
    declared_events: Option<Vec<String>>,
    initial: Option<String>,
    arcs: Vec<(String, String, String)>,
}

impl TsBuilder {
    pub fn new(name: impl Into<String>) -> TsBuilder {
        TsBuilder {
            name: name.into(),
            ..TsBuilder::default()
        }
    }

    pub fn declare_state(&mut self, s: &str) -> &mut Self {
        self.declared_states.get_or_insert_with(Vec::new).push(s.to_string());
        self.intern_state(s);
        self
    }

    pub fn declare_event(&mut self, e: &str) -> &mut Self {
        self.declared_events.get_or_insert_with(Vec::new).push(e.to_string());
        self.intern_event(e);
        self
    }

    pub fn initial(&mut self, s: &str) -> &mut Self {
        self.initial = Some(s.to_string());
        self.intern_state(s);
        self
    }

    pub fn arc(&mut self, src: &str, event: &str, dst: &str) -> &mut Self {
        self.intern_state(src);
        self.intern_event(event);
        self.intern_state(dst);
        self.arcs.push((src.to_string(), event.to_string(), dst.to_string()));
        self
    }

    fn intern_state(&mut self, s: &str) -> StateId {
        if let Some(&i) = self.state_ix.get(s) {
            return i;
        }
        self.states.push(s.to_string());
        self.state_ix.insert(s.to_string(), self.states.len() - 1);
        self.states.len() - 1
    }

    fn intern_event(&mut self, e: &str) -> EventId {
        if let Some(&i) = self.event_ix.get(e) {
            return i;
        }
        self.events.push(e.to_string());
        self.event_ix.insert(e.to_string(), self.events.len() - 1);
        self.events.len() - 1
    }

    /// Checks determinism, declarations and reachability without building.
    pub fn validate(&self) -> ValidationReport {
        self.assemble().1
    }

    pub fn build(&self) -> Result<TransitionSystem, TsError> {
        let (ts, report) = self.assemble();
        for w in &report.warnings {
            log::warn!("{w}");
        }
        match ts {
            Some(ts) if report.is_valid() => Ok(ts),
            _ => Err(TsError::Invalid(report.violations)),
        }
    }

    fn assemble(&self) -> (Option<TransitionSystem>, ValidationReport) {
        let mut report = ValidationReport::default();
        if let Some(decl) = &self.declared_states {
            let mut seen = std::collections::HashSet::new();
            for s in decl {
                if !seen.insert(s) {
                    report.warnings.push(format!("state {s} declared twice"));
                }
            }
            for s in &self.states {
                if !seen.contains(s) {
                    report.violations.push(Violation::UndeclaredState { state: s.clone() });
                }
            }
        }
        if let Some(decl) = &self.declared_events {
            let mut seen = std::collections::HashSet::new();
            for e in decl {
                if !seen.insert(e) {
                    report.warnings.push(format!("event {e} declared twice"));
                }
            }
            for e in &self.events {
                if !seen.contains(e) {
                    report.violations.push(Violation::UndeclaredEvent { event: e.clone() });
                }
            }
        }

        let (states, state_ix) = numbering(&self.states, self.declared_states.as_deref());
        let (events, event_ix) = numbering(&self.events, self.declared_events.as_deref());
        let mut table: HashMap<(StateId, EventId), StateId> = HashMap::new();
        let mut arcs = Vec::with_capacity(self.arcs.len());
        for (s, e, d) in &self.arcs {
            let (s, e, d) = (state_ix[s], event_ix[e], state_ix[d]);
            match table.get(&(s, e)) {
                Some(&old) if old == d => {
                    report.warnings.push(format!(
                        "arc {} {} {} listed twice",
                        states[s], events[e], states[d]
                    ));
                }
                Some(&old) => report.violations.push(Violation::Nondeterministic {
                    state: states[s].clone(),
                    event: events[e].clone(),
                    targets: (states[old].clone(), states[d].clone()),
                }),
                None => {
                    table.insert((s, e), d);
                    arcs.push(Arc { src: s, event: e, dst: d });
                }
            }
        }

        let Some(initial) = self.initial.as_ref().map(|s| state_ix[s]) else {
            report.violations.push(Violation::MissingInitial);
            return (None, report);
        };
        let ts = TransitionSystem::from_parts(
            self.name.clone(),
            states,
            events,
            initial,
            arcs,
        );
        let reach = ts.reachable();
        for (s, r) in reach.iter().enumerate() {
            if !r {
                report.violations.push(Violation::Unreachable {
                    state: ts.states[s].clone(),
                });
            }
        }
        (Some(ts), report)
    }
}

/// Declared names first, in declaration order, then the rest in order of
/// first use.
fn numbering(names: &[String], declared: Option<&[String]>) -> (Vec<String>, HashMap<String, usize>) {
    let mut order: Vec<String> = Vec::with_capacity(names.len());
    let mut ix = HashMap::with_capacity(names.len());
    for n in declared.unwrap_or_default().iter().chain(names) {
        if !ix.contains_key(n) {
            ix.insert(n.clone(), order.len());
            order.push(n.clone());
        }
    }
    (order, ix)
}

/// A deterministic, initialized labeled transition system `A = (S, E, δ, ι)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionSystem {
    name: String,
    states: Vec<String>,
    events: Vec<String>,
    state_ix: HashMap<String, StateId>,
    event_ix: HashMap<String, EventId>,
    initial: StateId,
    arcs: Vec<Arc>,
    succ: Vec<Vec<(EventId, StateId)>>,
    pred: Vec<Vec<(EventId, StateId)>>,
}

impl TransitionSystem {
    /// Builds directly from indexed parts. Determinism is assumed; callers
    /// outside this module go through [`TsBuilder`].
    pub(crate) fn from_parts(
        name: String,
        states: Vec<String>,
        events: Vec<String>,
        initial: StateId,
        mut arcs: Vec<Arc>,
    ) -> TransitionSystem {
        arcs.sort();
        let mut succ = vec![Vec::new(); states.len()];
        let mut pred = vec![Vec::new(); states.len()];
        for a in &arcs {
            succ[a.src].push((a.event, a.dst));
            pred[a.dst].push((a.event, a.src));
        }
        for p in &mut pred {
            p.sort();
        }
        let state_ix = states.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        let event_ix = events.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        TransitionSystem {
            name,
            states,
            events,
            state_ix,
            event_ix,
            initial,
            arcs,
            succ,
            pred,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn num_events(&self) -> usize {
        self.events.len()
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn events(&self) -> &[String] {
        &self.events
    }

    pub fn state_name(&self, s: StateId) -> &str {
        &self.states[s]
    }

    pub fn event_name(&self, e: EventId) -> &str {
        &self.events[e]
    }

    pub fn state_id(&self, name: &str) -> Option<StateId> {
        self.state_ix.get(name).copied()
    }

    pub fn event_id(&self, name: &str) -> Option<EventId> {
        self.event_ix.get(name).copied()
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    /// Arcs sorted by source, then event.
    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    /// Outgoing `(event, target)` pairs sorted by event.
    pub fn successors(&self, s: StateId) -> &[(EventId, StateId)] {
        &self.succ[s]
    }

    /// Incoming `(event, source)` pairs sorted by event.
    pub fn predecessors(&self, s: StateId) -> &[(EventId, StateId)] {
        &self.pred[s]
    }

    pub fn delta(&self, s: StateId, e: EventId) -> Option<StateId> {
        let out = &self.succ[s];
        out.binary_search_by_key(&e, |&(ev, _)| ev).ok().map(|i| out[i].1)
    }

    pub fn enables(&self, s: StateId, e: EventId) -> bool {
        self.delta(s, e).is_some()
    }

    /// The least `g` such that every state has at most `g` incoming and at
    /// most `g` outgoing arcs. A self-loop counts once in each direction.
    pub fn bound(&self) -> usize {
        (0..self.num_states())
            .map(|s| self.succ[s].len().max(self.pred[s].len()))
            .max()
            .unwrap_or(0)
    }

    fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.num_states()];
        seen[self.initial] = true;
        let mut queue = VecDeque::from([self.initial]);
        while let Some(s) = queue.pop_front() {
            for &(_, d) in &self.succ[s] {
                if !seen[d] {
                    seen[d] = true;
                    queue.push_back(d);
                }
            }
        }
        seen
    }

    /// States in breadth-first order from the initial state, following
    /// outgoing arcs in event order.
    pub fn bfs_order(&self) -> Vec<StateId> {
        let mut seen = vec![false; self.num_states()];
        let mut order = Vec::with_capacity(self.num_states());
        seen[self.initial] = true;
        let mut queue = VecDeque::from([self.initial]);
        while let Some(s) = queue.pop_front() {
            order.push(s);
            for &(_, d) in &self.succ[s] {
                if !seen[d] {
                    seen[d] = true;
                    queue.push_back(d);
                }
            }
        }
        order
    }

    /// Events in the order of their first occurrence along [`Self::bfs_order`];
    /// events that label no arc come last in index order.
    pub fn events_by_first_occurrence(&self) -> Vec<EventId> {
        let mut seen = vec![false; self.num_events()];
        let mut order = Vec::with_capacity(self.num_events());
        for s in self.bfs_order() {
            for &(e, _) in &self.succ[s] {
                if !seen[e] {
                    seen[e] = true;
                    order.push(e);
                }
            }
        }
        order.extend((0..self.num_events()).filter(|&e| !seen[e]));
        order
    }

    /// Re-runs the validation checks on an already built system.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        for (s, r) in self.reachable().iter().enumerate() {
            if !r {
                report.violations.push(Violation::Unreachable {
                    state: self.states[s].clone(),
                });
            }
        }
        for w in self.arcs.windows(2) {
            if w[0].src == w[1].src && w[0].event == w[1].event {
                report.violations.push(Violation::Nondeterministic {
                    state: self.states[w[0].src].clone(),
                    event: self.events[w[0].event].clone(),
                    targets: (self.states[w[0].dst].clone(), self.states[w[1].dst].clone()),
                });
            }
        }
        report
    }

    /// Returns a copy with an extra event and arcs added; used by
    /// constructions that extend a system with fresh events.
    pub(crate) fn with_extra(&self, new_events: &[String], extra_arcs: &[Arc]) -> TransitionSystem {
        let mut events = self.events.clone();
        events.extend(new_events.iter().cloned());
        let mut arcs = self.arcs.clone();
        arcs.extend_from_slice(extra_arcs);
        TransitionSystem::from_parts(self.name.clone(), self.states.clone(), events, self.initial, arcs)
    }

    /// A copy that drops the given arcs; unused events stay declared.
    pub(crate) fn without_arcs(&self, keep: impl Fn(&Arc) -> bool) -> TransitionSystem {
        let arcs = self.arcs.iter().copied().filter(keep).collect();
        TransitionSystem::from_parts(
            self.name.clone(),
            self.states.clone(),
            self.events.clone(),
            self.initial,
            arcs,
        )
    }
}

/// Free-function form of [`TsBuilder::validate`].
pub fn validate_ts(builder: &TsBuilder) -> ValidationReport {
    builder.validate()
}

/// Free-function form of [`TransitionSystem::bound`].
pub fn compute_bound(ts: &TransitionSystem) -> usize {
    ts.bound()
}

/// Convenience constructor from `(src, event, dst)` triples; the first
/// source is the initial state.
pub fn ts_from_arcs(name: &str, initial: &str, arcs: &[(&str, &str, &str)]) -> Result<TransitionSystem, TsError> {
    let mut b = TsBuilder::new(name);
    b.initial(initial);
    for (s, e, d) in arcs {
        b.arc(s, e, d);
    }
    b.build()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a1() -> TransitionSystem {
        ts_from_arcs("a1", "s0", &[("s0", "a", "s1"), ("s1", "a", "s2"), ("s2", "a", "s1")]).unwrap()
    }

    #[test]
    fn a1_is_valid() {
        let ts = a1();
        assert!(ts.validate().is_valid());
        assert_eq!(ts.num_states(), 3);
        assert_eq!(ts.delta(2, 0), Some(1));
        assert_eq!(ts.bound(), 2);
    }

    #[test]
    fn determinism_violation() {
        let mut b = TsBuilder::new("bad");
        b.initial("s0").arc("s0", "a", "s1").arc("s0", "a", "s2");
        let report = b.validate();
        assert!(matches!(report.violations[0], Violation::Nondeterministic { .. }));
        assert!(b.build().is_err());
    }

    #[test]
    fn unreachable_violation() {
        let mut b = TsBuilder::new("bad");
        b.initial("s0").arc("s0", "a", "s1").declare_state("s3");
        let report = b.validate();
        assert!(report
            .violations
            .iter()
            .any(|v| *v == Violation::Unreachable { state: "s3".into() }));
    }

    #[test]
    fn undeclared_identifiers() {
        let mut b = TsBuilder::new("bad");
        b.declare_state("s0").declare_event("a").initial("s0").arc("s0", "b", "s0");
        let report = b.validate();
        assert_eq!(report.violations, vec![Violation::UndeclaredEvent { event: "b".into() }]);
    }

    #[test]
    fn duplicate_arc_is_a_warning() {
        let mut b = TsBuilder::new("dup");
        b.initial("s0").arc("s0", "a", "s1").arc("s0", "a", "s1");
        let report = b.validate();
        assert!(report.is_valid());
        assert_eq!(report.warnings.len(), 1);
        assert_eq!(b.build().unwrap().arcs().len(), 1);
    }

    #[test]
    fn missing_initial() {
        let mut b = TsBuilder::new("x");
        b.arc("s0", "a", "s1");
        assert_eq!(b.validate().violations, vec![Violation::MissingInitial]);
    }

    #[test]
    fn bounds() {
        let path = ts_from_arcs("p", "s0", &[("s0", "a", "s1"), ("s1", "a", "s2"), ("s2", "a", "s3")]).unwrap();
        assert_eq!(compute_bound(&path), 1);
        let lone = TsBuilder::new("one").initial("s").build().unwrap();
        assert_eq!(lone.bound(), 0);
        let lp = ts_from_arcs("l", "s", &[("s", "a", "s")]).unwrap();
        assert_eq!(lp.bound(), 1);
    }

    #[test]
    fn first_occurrence_order() {
        let ts = ts_from_arcs("x", "s0", &[("s0", "b", "s1"), ("s0", "a", "s2"), ("s1", "c", "s0")]).unwrap();
        let names: Vec<_> = ts.events_by_first_occurrence().iter().map(|&e| ts.event_name(e)).collect();
        assert_eq!(names, vec!["b", "a", "c"]);
    }
}
