//! Polynomial decider for 1-bounded inputs.
//!
//! Paths are closed into cycles first. On a cycle, each atom is tried
//! against a short, fixed list of candidate regions built from at most two
//! "exit" events, with every other event either `nop` or `set`.

use crate::interaction::{Interaction, Interaction::*, NetType, TypeIsomorphism};
use crate::region::{enumerate_atoms, region_valid, Region, SeparationAtom};
use crate::ts::{EventId, StateId, TransitionSystem};

use super::linear::{classify_linear, cycle_extension, LinearKind, LinearShape};
use super::{PolyError, PolyVerdict};

/// How atoms of a supported type are reduced to canonical candidates.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Plan {
    /// Signature of the `y` event that drops the support to 0.
    pub exit: Interaction,
    /// Isomorphism mapping canonical `k = inp` regions into the type.
    pub inp_route: Option<TypeIsomorphism>,
    /// Isomorphism mapping canonical `k = used` regions into the type.
    pub used_route: Option<TypeIsomorphism>,
    /// Isomorphism mapping canonical SSP regions into the type.
    pub ssp_route: TypeIsomorphism,
}

impl Plan {
    pub(crate) fn for_type(ty: NetType) -> Result<Plan, PolyError> {
        let id = TypeIsomorphism::identity();
        let co = TypeIsomorphism::complement();
        let direct = |iso: TypeIsomorphism, used: bool| Plan {
            exit: Inp,
            inp_route: Some(iso),
            used_route: used.then_some(iso),
            ssp_route: iso,
        };
        let t = NetType::of;
        if ty == t(&[Nop, Inp, Set]) {
            return Ok(direct(id, false));
        }
        if ty == t(&[Nop, Inp, Set, Used]) {
            return Ok(direct(id, true));
        }
        if ty == t(&[Nop, Out, Res]) {
            return Ok(direct(co, false));
        }
        if ty == t(&[Nop, Out, Res, Free]) {
            return Ok(direct(co, true));
        }
        let base = t(&[Nop, Set, Res]);
        let pool = t(&[Inp, Out, Used, Free]);
        let omega = NetType::from_bits(ty.bits() & !base.bits());
        if base.is_subset(ty) && !omega.is_empty() && omega.is_subset(pool) {
            let pick = |a: Interaction, b: Interaction| {
                if omega.contains(a) {
                    Some(id)
                } else if omega.contains(b) {
                    Some(co)
                } else {
                    None
                }
            };
            return Ok(Plan {
                exit: Res,
                inp_route: pick(Inp, Out),
                used_route: pick(Used, Free),
                ssp_route: id,
            });
        }
        Err(PolyError::UnsupportedType(ty))
    }

    /// The ESSP-only plan for `{nop,set,res} ∪ ω` with `ω ⊆ {used, free}`.
    pub(crate) fn ladder(ty: NetType) -> Plan {
        let pick = if ty.contains(Used) {
            TypeIsomorphism::identity()
        } else {
            TypeIsomorphism::complement()
        };
        Plan {
            exit: Res,
            inp_route: None,
            used_route: Some(pick),
            ssp_route: TypeIsomorphism::identity(),
        }
    }
}

/// A cycle in arc-position form with a state-to-position index.
pub(crate) struct CycleForm<'a> {
    pub ts: &'a TransitionSystem,
    pub shape: LinearShape,
    pos: Vec<usize>,
}

impl<'a> CycleForm<'a> {
    pub(crate) fn new(ts: &'a TransitionSystem) -> Result<CycleForm<'a>, PolyError> {
        let shape = classify_linear(ts)?;
        if shape.kind != LinearKind::DirectedCycle {
            return Err(PolyError::NotACycle);
        }
        let mut pos = vec![usize::MAX; ts.num_states()];
        for (p, &s) in shape.states.iter().enumerate() {
            pos[s] = p;
        }
        Ok(CycleForm { ts, shape, pos })
    }

    fn len(&self) -> usize {
        self.shape.len()
    }

    fn event_at(&self, p: usize) -> EventId {
        self.shape.events[p % self.len()]
    }

    /// Walks once around the cycle from the source of arc `start` with
    /// support `x`; `None` when an interaction is undefined or the walk
    /// does not close.
    fn propagate(&self, start: usize, x: bool, sig: &[Interaction]) -> Option<Region> {
        let mut support = vec![false; self.ts.num_states()];
        let mut cur = x;
        for d in 0..self.len() {
            let p = (start + d) % self.len();
            support[self.shape.source(p)] = cur;
            cur = sig[self.shape.events[p]].apply(cur)?;
        }
        (cur == x).then(|| Region {
            support,
            signature: sig.to_vec(),
        })
    }

    fn candidate(&self, start: usize, x: bool, sig: &[Interaction], atom: &SeparationAtom) -> Option<Region> {
        self.propagate(start, x, sig).filter(|r| r.solves(atom))
    }

    /// Scans `ℓ = j, j-1, …, low`: `y_ℓ` gets `exit`, `y_{ℓ+1..j}` get
    /// `nop`, `k` gets `k_sig` when given, everything else `set`.
    #[allow(clippy::too_many_arguments)]
    fn scan(
        &self,
        first: usize,
        j: usize,
        low: usize,
        k: Option<(EventId, Interaction)>,
        exit: Interaction,
        x: bool,
        atom: &SeparationAtom,
    ) -> Option<Region> {
        let y = |l: usize| self.event_at(first + l - 1);
        for l in (low.max(1)..=j).rev() {
            let mut sig = vec![Set; self.ts.num_events()];
            if let Some((k, ks)) = k {
                sig[k] = ks;
            }
            let quiet: Vec<EventId> = (l + 1..=j).map(y).collect();
            if quiet.contains(&y(l)) {
                continue;
            }
            for &e in &quiet {
                sig[e] = Nop;
            }
            sig[y(l)] = exit;
            if let Some(r) = self.candidate(first, x, &sig, atom) {
                return Some(r);
            }
        }
        None
    }

    /// Canonical candidates for an ESSP atom `(k, s)`; the returned region
    /// is paired with the isomorphism that carries it into the type.
    fn essp(&self, k: EventId, s: StateId, plan: &Plan) -> Option<(Region, TypeIsomorphism)> {
        let atom = SeparationAtom::Essp(k, s);
        let len = self.len();
        let n_events = self.ts.num_events();
        let ks: Vec<usize> = (0..len).filter(|&p| self.shape.events[p] == k).collect();
        let routes = [(Inp, plan.inp_route), (Used, plan.used_route)];
        if ks.is_empty() {
            for (ksig, iso) in routes {
                let Some(iso) = iso else { continue };
                let mut sig = vec![Nop; n_events];
                sig[k] = ksig;
                if let Some(r) = self.candidate(0, false, &sig, &atom) {
                    return Some((r, iso));
                }
            }
            return None;
        }
        let q = self.pos[s];
        if ks.iter().any(|&p| (p + 1) % len == q) {
            // s is entered by k: only k = inp with everything else set can work.
            let iso = plan.inp_route?;
            let mut sig = vec![Set; n_events];
            sig[k] = Inp;
            return self.candidate(q, false, &sig, &atom).map(|r| (r, iso));
        }
        let d = (1..=len).find(|&d| self.shape.events[(q + len - d) % len] == k)?;
        let p0 = (q + len - d) % len;
        let first = (p0 + 1) % len;
        let j = d - 1;
        if let Some(iso) = plan.inp_route {
            let mut sig = vec![Set; n_events];
            sig[k] = Inp;
            for l in 1..=j {
                sig[self.event_at(first + l - 1)] = Nop;
            }
            if let Some(r) = self.candidate(first, false, &sig, &atom) {
                return Some((r, iso));
            }
            let low = if plan.exit == Inp { 2 } else { 1 };
            if let Some(r) = self.scan(first, j, low, Some((k, Inp)), plan.exit, false, &atom) {
                return Some((r, iso));
            }
        }
        if let Some(iso) = plan.used_route {
            if let Some(r) = self.scan(first, j, 1, Some((k, Used)), plan.exit, true, &atom) {
                return Some((r, iso));
            }
        }
        None
    }

    fn ssp(&self, a: StateId, b: StateId, plan: &Plan) -> Option<(Region, TypeIsomorphism)> {
        let atom = SeparationAtom::Ssp(a, b);
        let len = self.len();
        for (x, y) in [(a, b), (b, a)] {
            let start = self.pos[x];
            let i = (self.pos[y] + len - start) % len;
            if let Some(r) = self.scan(start, i, 1, None, plan.exit, true, &atom) {
                return Some((r, plan.ssp_route));
            }
        }
        None
    }

    /// Solves one atom of the original system in cycle form. The region is
    /// truncated to the first `n_events` events and carried into the type.
    pub(crate) fn solve(&self, atom: SeparationAtom, plan: &Plan, n_events: usize) -> Option<Region> {
        let (r, iso) = match atom {
            SeparationAtom::Essp(k, s) => self.essp(k, s, plan)?,
            SeparationAtom::Ssp(a, b) => self.ssp(a, b, plan)?,
        };
        let mut r = r.transport(&iso);
        r.signature.truncate(n_events);
        Some(r)
    }
}

/// Decides τ-solvability of a 1-bounded system for the supported types.
pub fn decide_one_bounded(ts: &TransitionSystem, ty: NetType) -> Result<PolyVerdict, PolyError> {
    let plan = Plan::for_type(ty)?;
    let shape = classify_linear(ts)?;
    if let Some(&p) = shape.repeats.first() {
        return Ok(PolyVerdict::Unsolvable(shape.repeat_atom(p)));
    }
    let extended;
    let cyc_ts = match shape.kind {
        LinearKind::SimplePath => {
            extended = cycle_extension(ts)?;
            &extended
        }
        LinearKind::DirectedCycle => ts,
    };
    let cycle = CycleForm::new(cyc_ts)?;
    let mut regions: Vec<Region> = Vec::new();
    for atom in enumerate_atoms(ts) {
        if regions.iter().any(|r| r.solves(&atom)) {
            continue;
        }
        match cycle.solve(atom, &plan, ts.num_events()) {
            Some(r) => {
                debug_assert!(region_valid(ts, ty, &r), "candidate region outside the type");
                regions.push(r);
            }
            None => return Ok(PolyVerdict::Unsolvable(atom)),
        }
    }
    Ok(PolyVerdict::Solvable(regions))
}
