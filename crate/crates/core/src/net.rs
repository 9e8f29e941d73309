//! Boolean Petri nets, the firing rule and reachability graphs.

use std::collections::hash_map::Entry;
use std::collections::{HashMap, VecDeque};

use thiserror::Error;

use crate::interaction::{Interaction, NetType};
use crate::ts::{Arc, TransitionSystem};

/// Default limit on the number of markings explored.
pub const DEFAULT_CAP: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NetError {
    #[error("unknown transition `{0}`")]
    UnknownTransition(String),
    #[error("unknown place `{0}`")]
    UnknownPlace(String),
    #[error("flow ({place}, {transition}) = {interaction} is not a member of the net type {ty}")]
    FlowOutsideType {
        place: String,
        transition: String,
        interaction: Interaction,
        ty: NetType,
    },
    #[error("name `{0}` is used for both a place and a transition")]
    NameClash(String),
    #[error("duplicate place `{0}`")]
    DuplicatePlace(String),
    #[error("duplicate transition `{0}`")]
    DuplicateTransition(String),
    #[error("reachability exploration exceeded the cap of {0} markings")]
    CapExceeded(usize),
}

/// A Boolean marking, one bit per place.
pub type Marking = Vec<bool>;

/// A τ-net `N = (P, T, H0, f)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BooleanNet {
    name: String,
    ty: NetType,
    places: Vec<String>,
    transitions: Vec<String>,
    initial: Marking,
    /// `flow[p][t]`
    flow: Vec<Vec<Interaction>>,
}

impl BooleanNet {
    /// Creates a net with every flow set to `nop`. Panics-free: name clashes
    /// and duplicates are reported as errors.
    pub fn new(
        name: impl Into<String>,
        ty: NetType,
        places: Vec<(String, bool)>,
        transitions: Vec<String>,
    ) -> Result<BooleanNet, NetError> {
        let mut seen_p = std::collections::HashSet::new();
        for (p, _) in &places {
            if !seen_p.insert(p.as_str()) {
                return Err(NetError::DuplicatePlace(p.clone()));
            }
        }
        let mut seen_t = std::collections::HashSet::new();
        for t in &transitions {
            if !seen_t.insert(t.as_str()) {
                return Err(NetError::DuplicateTransition(t.clone()));
            }
            if seen_p.contains(t.as_str()) {
                return Err(NetError::NameClash(t.clone()));
            }
        }
        let (places, initial): (Vec<String>, Vec<bool>) = places.into_iter().unzip();
        let flow = vec![vec![Interaction::Nop; transitions.len()]; places.len()];
        let net = BooleanNet {
            name: name.into(),
            ty,
            places,
            transitions,
            initial,
            flow,
        };
        if !net.places.is_empty() && !net.transitions.is_empty() && !ty.contains(Interaction::Nop) {
            return Err(net.outside(0, 0));
        }
        Ok(net)
    }

    /// Creates a net with the given flow matrix `flow[p][t]`, every entry
    /// of which must belong to `ty`.
    pub fn with_flows(
        name: impl Into<String>,
        ty: NetType,
        places: Vec<(String, bool)>,
        transitions: Vec<String>,
        flow: Vec<Vec<Interaction>>,
    ) -> Result<BooleanNet, NetError> {
        let mut net = BooleanNet::new(name, NetType::FULL, places, transitions)?;
        assert!(
            flow.len() == net.places.len() && flow.iter().all(|row| row.len() == net.transitions.len()),
            "flow matrix has the wrong shape"
        );
        net.flow = flow;
        net.ty = ty;
        for p in 0..net.places.len() {
            for t in 0..net.transitions.len() {
                if !ty.contains(net.flow[p][t]) {
                    return Err(net.outside(p, t));
                }
            }
        }
        Ok(net)
    }

    fn outside(&self, p: usize, t: usize) -> NetError {
        NetError::FlowOutsideType {
            place: self.places[p].clone(),
            transition: self.transitions[t].clone(),
            interaction: self.flow[p][t],
            ty: self.ty,
        }
    }

    pub fn set_flow(&mut self, p: usize, t: usize, i: Interaction) -> Result<(), NetError> {
        let old = self.flow[p][t];
        self.flow[p][t] = i;
        if !self.ty.contains(i) {
            let err = self.outside(p, t);
            self.flow[p][t] = old;
            return Err(err);
        }
        Ok(())
    }

    pub fn set_flow_by_name(&mut self, place: &str, transition: &str, i: Interaction) -> Result<(), NetError> {
        let p = self.place_index(place).ok_or_else(|| NetError::UnknownPlace(place.into()))?;
        let t = self
            .transition_index(transition)
            .ok_or_else(|| NetError::UnknownTransition(transition.into()))?;
        self.set_flow(p, t, i)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn net_type(&self) -> NetType {
        self.ty
    }

    pub fn places(&self) -> &[String] {
        &self.places
    }

    pub fn transitions(&self) -> &[String] {
        &self.transitions
    }

    pub fn initial_marking(&self) -> &Marking {
        &self.initial
    }

    pub fn flow(&self, p: usize, t: usize) -> Interaction {
        self.flow[p][t]
    }

    pub fn place_index(&self, p: &str) -> Option<usize> {
        self.places.iter().position(|x| x == p)
    }

    pub fn transition_index(&self, t: &str) -> Option<usize> {
        self.transitions.iter().position(|x| x == t)
    }

    /// Fires transition index `t` in `m`; `None` when not enabled.
    pub fn fire_index(&self, m: &Marking, t: usize) -> Option<Marking> {
        (0..self.places.len())
            .map(|p| self.ty.step(m[p], self.flow[p][t]))
            .collect()
    }

    pub fn fire(&self, m: &Marking, t: &str) -> Result<Option<Marking>, NetError> {
        let ti = self
            .transition_index(t)
            .ok_or_else(|| NetError::UnknownTransition(t.into()))?;
        Ok(self.fire_index(m, ti))
    }

    /// Breadth-first closure of the firing rule from the initial marking.
    /// States are named `m0, m1, …` in discovery order; transitions are
    /// tried in declaration order.
    pub fn reachability_graph(&self, cap: usize) -> Result<TransitionSystem, NetError> {
        let mut index: HashMap<Marking, usize> = HashMap::new();
        let mut markings = vec![self.initial.clone()];
        index.insert(self.initial.clone(), 0);
        let mut arcs = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        if cap == 0 {
            return Err(NetError::CapExceeded(cap));
        }
        while let Some(i) = queue.pop_front() {
            for t in 0..self.transitions.len() {
                let Some(next) = self.fire_index(&markings[i], t) else {
                    continue;
                };
                let j = match index.get(&next) {
                    Some(&j) => j,
                    None => {
                        if markings.len() >= cap {
                            return Err(NetError::CapExceeded(cap));
                        }
                        markings.push(next.clone());
                        index.insert(next, markings.len() - 1);
                        queue.push_back(markings.len() - 1);
                        markings.len() - 1
                    }
                };
                arcs.push(Arc {
                    src: i,
                    event: t,
                    dst: j,
                });
            }
        }
        let states = (0..markings.len()).map(|i| format!("m{i}")).collect();
        Ok(TransitionSystem::from_parts(
            format!("rg_{}", self.name),
            states,
            self.transitions.clone(),
            0,
            arcs,
        ))
    }

    /// Markings in the order used by [`Self::reachability_graph`], for
    /// rendering labels.
    pub fn reachable_markings(&self, cap: usize) -> Result<Vec<Marking>, NetError> {
        let mut index: HashMap<Marking, usize> = HashMap::new();
        let mut markings = vec![self.initial.clone()];
        index.insert(self.initial.clone(), 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for t in 0..self.transitions.len() {
                if let Some(next) = self.fire_index(&markings[i], t) {
                    if let Entry::Vacant(slot) = index.entry(next) {
                        if markings.len() >= cap {
                            return Err(NetError::CapExceeded(cap));
                        }
                        markings.push(slot.key().clone());
                        slot.insert(markings.len() - 1);
                        queue.push_back(markings.len() - 1);
                    }
                }
            }
        }
        Ok(markings)
    }
}

/// Free-function form of [`BooleanNet::fire`].
pub fn fire(net: &BooleanNet, m: &Marking, t: &str) -> Result<Option<Marking>, NetError> {
    net.fire(m, t)
}

/// Free-function form of [`BooleanNet::reachability_graph`].
pub fn reachability_graph(net: &BooleanNet, cap: usize) -> Result<TransitionSystem, NetError> {
    net.reachability_graph(cap)
}
