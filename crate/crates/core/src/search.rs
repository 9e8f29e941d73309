//! Backtracking region search with arc-consistency propagation.
//!
//! Supports are bitmask domains over `{0, 1}` and signatures are bitmask
//! domains over the members of the type. Every arc is a ternary constraint
//! between the supports of its endpoints and the signature of its event.

use std::collections::VecDeque;

use crate::interaction::{Interaction, NetType};
use crate::region::{Region, SeparationAtom};
use crate::ts::{EventId, StateId, TransitionSystem};

/// Default number of search nodes allowed per atom.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Result of searching for a region.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AtomOutcome {
    Solved(Region),
    /// The search space was exhausted without a solution.
    Unsolvable,
    /// The node budget ran out first; nothing is proven.
    BudgetExhausted,
}

impl AtomOutcome {
    pub fn region(self) -> Option<Region> {
        match self {
            AtomOutcome::Solved(r) => Some(r),
            _ => None,
        }
    }
}

// Interactions mapping x to y, as bitmasks over `Interaction::index`.
const fn pair_mask(x: bool, y: bool) -> u8 {
    let mut mask = 0u8;
    let mut i = 0;
    while i < 8 {
        let hit = match (i, x) {
            (0, x) => y == x,
            (1, true) => !y,
            (2, false) => y,
            (3, _) => y,
            (4, _) => !y,
            (5, x) => y != x,
            (6, true) => y,
            (7, false) => !y,
            _ => false,
        };
        if hit {
            mask |= 1 << i;
        }
        i += 1;
    }
    mask
}

const PAIR: [[u8; 2]; 2] = [
    [pair_mask(false, false), pair_mask(false, true)],
    [pair_mask(true, false), pair_mask(true, true)],
];

// Interactions undefined at x.
const UNDEFINED: [u8; 2] = [
    !(pair_mask(false, false) | pair_mask(false, true)),
    !(pair_mask(true, false) | pair_mask(true, true)),
];

#[derive(Debug, Clone, Copy)]
enum Var {
    Sup(StateId),
    Sig(EventId),
}

#[derive(Clone)]
struct Domains {
    sup: Vec<u8>,
    sig: Vec<u8>,
}

struct Conflict;

/// A reusable search context for one transition system and type.
pub struct RegionSearch<'a> {
    ts: &'a TransitionSystem,
    ty: NetType,
    arcs: Vec<(u32, u32, u32)>,
    state_arcs: Vec<Vec<u32>>,
    event_arcs: Vec<Vec<u32>>,
    event_order: Vec<EventId>,
    init: Domains,
}

impl<'a> RegionSearch<'a> {
    pub fn new(ts: &'a TransitionSystem, ty: NetType) -> RegionSearch<'a> {
        let arcs: Vec<(u32, u32, u32)> = ts
            .arcs()
            .iter()
            .map(|a| (a.src as u32, a.event as u32, a.dst as u32))
            .collect();
        let mut state_arcs = vec![Vec::new(); ts.num_states()];
        let mut event_arcs = vec![Vec::new(); ts.num_events()];
        for (k, &(s, e, d)) in arcs.iter().enumerate() {
            state_arcs[s as usize].push(k as u32);
            if d != s {
                state_arcs[d as usize].push(k as u32);
            }
            event_arcs[e as usize].push(k as u32);
        }
        RegionSearch {
            ts,
            ty,
            arcs,
            state_arcs,
            event_arcs,
            event_order: ts.events_by_first_occurrence(),
            init: Domains {
                sup: vec![0b11; ts.num_states()],
                sig: vec![ty.bits(); ts.num_events()],
            },
        }
    }

    /// Restricts the signature of `e` to a single interaction.
    pub fn fix_sig(&mut self, e: EventId, i: Interaction) -> &mut Self {
        self.init.sig[e] &= 1 << i.index();
        self
    }

    /// Restricts the signature of `e` to a subset of the type.
    pub fn restrict_sig(&mut self, e: EventId, allowed: NetType) -> &mut Self {
        self.init.sig[e] &= allowed.bits();
        self
    }

    pub fn fix_sup(&mut self, s: StateId, x: bool) -> &mut Self {
        self.init.sup[s] &= 1 << x as u8;
        self
    }

    /// Searches for a valid region that also solves `atom` when given.
    pub fn solve(&self, atom: Option<SeparationAtom>, budget: u64) -> AtomOutcome {
        let mut prefer_one = true;
        let mut seeds = Vec::new();
        let mut head = Vec::new();
        match atom {
            Some(SeparationAtom::Essp(e, s)) => {
                head.push(Var::Sig(e));
                head.push(Var::Sup(s));
                seeds.push(s);
                seeds.extend(self.event_arcs[e].iter().map(|&k| self.arcs[k as usize].0 as usize));
                let blocked_at = |x: usize| (UNDEFINED[x] & self.ty.bits()).count_ones();
                prefer_one = blocked_at(1) >= blocked_at(0);
            }
            Some(SeparationAtom::Ssp(s, t)) => {
                head.push(Var::Sup(s));
                head.push(Var::Sup(t));
                seeds.extend([s, t]);
            }
            None => {
                head.push(Var::Sup(self.ts.initial()));
                seeds.push(self.ts.initial());
            }
        }
        let order = self.order_from(head, &seeds);

        let mut doms = self.init.clone();
        if doms.sup.contains(&0) || doms.sig.contains(&0) {
            return AtomOutcome::Unsolvable;
        }
        let mut queue: Vec<u32> = (0..self.arcs.len() as u32).collect();
        let mut queued = vec![true; self.arcs.len()];
        if self.propagate(&mut doms, atom, &mut queue, &mut queued).is_err() {
            return AtomOutcome::Unsolvable;
        }
        let mut ctx = Ctx {
            nodes: 0,
            budget,
            queue,
            queued,
            order,
            prefer_one,
        };
        // The children of the first decision are explored round-robin with
        // doubling node slices, so one hard infeasible branch cannot starve
        // an easy feasible one.
        let Some(var) = self.pick(&doms, &ctx) else {
            return AtomOutcome::Solved(self.extract(&doms));
        };
        let mut open = Vec::new();
        for value in self.values(var, &doms, ctx.prefer_one) {
            ctx.nodes += 1;
            if let Ok(child) = self.assign(&doms, var, value, atom, &mut ctx) {
                open.push(child);
            }
        }
        let mut slice = 1024u64;
        while !open.is_empty() {
            let mut next = Vec::new();
            for child in open {
                if ctx.nodes >= budget {
                    return AtomOutcome::BudgetExhausted;
                }
                ctx.budget = budget.min(ctx.nodes + slice);
                match self.dfs(child.clone(), atom, &mut ctx) {
                    Ok(Some(d)) => return AtomOutcome::Solved(self.extract(&d)),
                    Ok(None) => {}
                    Err(OutOfBudget) => next.push(child),
                }
            }
            open = next;
            slice = slice.saturating_mul(2);
        }
        AtomOutcome::Unsolvable
    }

    fn pick(&self, doms: &Domains, ctx: &Ctx) -> Option<Var> {
        let size = |v: &Var| match *v {
            Var::Sup(s) => doms.sup[s].count_ones(),
            Var::Sig(e) => doms.sig[e].count_ones(),
        };
        ctx.order.iter().copied().filter(|v| size(v) > 1).min_by_key(|v| size(v))
    }

    fn values(&self, var: Var, doms: &Domains, prefer_one: bool) -> Vec<u8> {
        match var {
            Var::Sup(_) if prefer_one => vec![0b10, 0b01],
            Var::Sup(_) => vec![0b01, 0b10],
            Var::Sig(e) => {
                let mut m = doms.sig[e];
                let mut v = Vec::with_capacity(m.count_ones() as usize);
                while m != 0 {
                    v.push(m & m.wrapping_neg());
                    m &= m - 1;
                }
                v
            }
        }
    }

    /// Copies `doms`, narrows `var` to `value` and propagates.
    fn assign(
        &self,
        doms: &Domains,
        var: Var,
        value: u8,
        atom: Option<SeparationAtom>,
        ctx: &mut Ctx,
    ) -> Result<Domains, Conflict> {
        let mut child = doms.clone();
        match var {
            Var::Sup(s) => {
                child.sup[s] = value;
                self.enqueue_state(s, &mut ctx.queue, &mut ctx.queued);
            }
            Var::Sig(e) => {
                child.sig[e] = value;
                self.enqueue_event(e, &mut ctx.queue, &mut ctx.queued);
            }
        }
        self.propagate(&mut child, atom, &mut ctx.queue, &mut ctx.queued)?;
        Ok(child)
    }

    /// Branching order: `head`, then events and states in breadth-first
    /// order of undirected distance from `seeds`, so that decisions near
    /// the atom come first.
    fn order_from(&self, head: Vec<Var>, seeds: &[StateId]) -> Vec<Var> {
        let n = self.ts.num_states();
        let mut order = head;
        order.reserve(n + self.ts.num_events());
        let mut seen_state = vec![false; n];
        let mut seen_event = vec![false; self.ts.num_events()];
        let mut queue = VecDeque::new();
        let mut visit = |s: StateId, queue: &mut VecDeque<StateId>| {
            if !seen_state[s] {
                seen_state[s] = true;
                queue.push_back(s);
            }
        };
        for &s in seeds {
            visit(s, &mut queue);
        }
        // Disconnected parts cannot occur in a reachable system, but keep
        // the order total regardless.
        let mut rest = self.event_order.iter();
        loop {
            while let Some(s) = queue.pop_front() {
                for &k in &self.state_arcs[s] {
                    let (a, e, b) = self.arcs[k as usize];
                    if !seen_event[e as usize] {
                        seen_event[e as usize] = true;
                        order.push(Var::Sig(e as usize));
                    }
                    visit(a as usize, &mut queue);
                    visit(b as usize, &mut queue);
                }
                order.push(Var::Sup(s));
            }
            match rest.find(|&&e| !seen_event[e]) {
                Some(&e) => {
                    seen_event[e] = true;
                    order.push(Var::Sig(e));
                    for &k in &self.event_arcs[e] {
                        visit(self.arcs[k as usize].0 as usize, &mut queue);
                    }
                }
                None => break,
            }
        }
        order.extend((0..n).filter(|&s| !seen_state[s]).map(Var::Sup));
        order
    }

    fn extract(&self, d: &Domains) -> Region {
        Region {
            support: d.sup.iter().map(|&m| m == 0b10).collect(),
            signature: d
                .sig
                .iter()
                .map(|&m| Interaction::from_index(m.trailing_zeros() as usize))
                .collect(),
        }
    }

    fn dfs(&self, doms: Domains, atom: Option<SeparationAtom>, ctx: &mut Ctx) -> Result<Option<Domains>, OutOfBudget> {
        let Some(var) = self.pick(&doms, ctx) else {
            return Ok(Some(doms));
        };
        for value in self.values(var, &doms, ctx.prefer_one) {
            ctx.nodes += 1;
            if ctx.nodes > ctx.budget {
                return Err(OutOfBudget);
            }
            let Ok(child) = self.assign(&doms, var, value, atom, ctx) else {
                continue;
            };
            if let Some(found) = self.dfs(child, atom, ctx)? {
                return Ok(Some(found));
            }
        }
        Ok(None)
    }

    fn enqueue_state(&self, s: StateId, queue: &mut Vec<u32>, queued: &mut [bool]) {
        for &k in &self.state_arcs[s] {
            if !queued[k as usize] {
                queued[k as usize] = true;
                queue.push(k);
            }
        }
    }

    fn enqueue_event(&self, e: EventId, queue: &mut Vec<u32>, queued: &mut [bool]) {
        for &k in &self.event_arcs[e] {
            if !queued[k as usize] {
                queued[k as usize] = true;
                queue.push(k);
            }
        }
    }

    /// Runs arc and atom revisions to a fixpoint. On conflict the queue is
    /// drained so the context stays reusable.
    fn propagate(
        &self,
        d: &mut Domains,
        atom: Option<SeparationAtom>,
        queue: &mut Vec<u32>,
        queued: &mut [bool],
    ) -> Result<(), Conflict> {
        loop {
            while let Some(k) = queue.pop() {
                queued[k as usize] = false;
                if let Err(c) = self.revise_arc(d, k, queue, queued) {
                    for k in queue.drain(..) {
                        queued[k as usize] = false;
                    }
                    return Err(c);
                }
            }
            let changed = match atom {
                None => false,
                Some(a) => match self.revise_atom(d, a, queue, queued) {
                    Ok(changed) => changed,
                    Err(c) => {
                        for k in queue.drain(..) {
                            queued[k as usize] = false;
                        }
                        return Err(c);
                    }
                },
            };
            if !changed {
                return Ok(());
            }
        }
    }

    fn revise_arc(&self, d: &mut Domains, k: u32, queue: &mut Vec<u32>, queued: &mut [bool]) -> Result<(), Conflict> {
        let (s, e, t) = self.arcs[k as usize];
        let (s, e, t) = (s as usize, e as usize, t as usize);
        let ds = d.sup[s];
        let de = d.sig[e];
        let dt = d.sup[t];
        let (mut ns, mut ne, mut nt) = (0u8, 0u8, 0u8);
        for (x, row) in PAIR.iter().enumerate() {
            if ds & (1 << x) == 0 {
                continue;
            }
            for (y, &pair) in row.iter().enumerate() {
                if dt & (1 << y) == 0 || (s == t && x != y) {
                    continue;
                }
                let m = de & pair;
                if m != 0 {
                    ns |= 1 << x;
                    nt |= 1 << y;
                    ne |= m;
                }
            }
        }
        if ne == 0 {
            return Err(Conflict);
        }
        if ns != ds {
            d.sup[s] = ns;
            self.enqueue_state(s, queue, queued);
        }
        if nt != d.sup[t] {
            d.sup[t] = nt;
            self.enqueue_state(t, queue, queued);
        }
        if ne != de {
            d.sig[e] = ne;
            self.enqueue_event(e, queue, queued);
        }
        Ok(())
    }

    fn revise_atom(
        &self,
        d: &mut Domains,
        atom: SeparationAtom,
        queue: &mut Vec<u32>,
        queued: &mut [bool],
    ) -> Result<bool, Conflict> {
        match atom {
            SeparationAtom::Essp(e, s) => {
                let (ds, de) = (d.sup[s], d.sig[e]);
                let (mut ns, mut ne) = (0u8, 0u8);
                for (x, &undef) in UNDEFINED.iter().enumerate() {
                    if ds & (1 << x) != 0 && de & undef != 0 {
                        ns |= 1 << x;
                        ne |= de & undef;
                    }
                }
                if ne == 0 {
                    return Err(Conflict);
                }
                let mut changed = false;
                if ns != ds {
                    d.sup[s] = ns;
                    self.enqueue_state(s, queue, queued);
                    changed = true;
                }
                if ne != de {
                    d.sig[e] = ne;
                    self.enqueue_event(e, queue, queued);
                    changed = true;
                }
                Ok(changed)
            }
            SeparationAtom::Ssp(s, t) => {
                let (ds, dt) = (d.sup[s], d.sup[t]);
                let nt = if ds.count_ones() == 1 { dt & !ds } else { dt };
                let ns = if nt.count_ones() == 1 { ds & !nt } else { ds };
                if ns == 0 || nt == 0 {
                    return Err(Conflict);
                }
                let mut changed = false;
                if ns != ds {
                    d.sup[s] = ns;
                    self.enqueue_state(s, queue, queued);
                    changed = true;
                }
                if nt != dt {
                    d.sup[t] = nt;
                    self.enqueue_state(t, queue, queued);
                    changed = true;
                }
                Ok(changed)
            }
        }
    }
}

struct OutOfBudget;

struct Ctx {
    nodes: u64,
    budget: u64,
    queue: Vec<u32>,
    queued: Vec<bool>,
    order: Vec<Var>,
    prefer_one: bool,
}

/// Searches for a region of type `ty` solving `atom`.
pub fn solve_atom(ts: &TransitionSystem, ty: NetType, atom: SeparationAtom, budget: u64) -> AtomOutcome {
    RegionSearch::new(ts, ty).solve(Some(atom), budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::region::region_valid;
    use crate::ts::ts_from_arcs;
    use Interaction::*;

    #[test]
    fn masks_match_table() {
        for i in Interaction::ALL {
            for x in [false, true] {
                for y in [false, true] {
                    let hit = PAIR[x as usize][y as usize] & (1 << i.index()) != 0;
                    assert_eq!(hit, i.apply(x) == Some(y), "{i} {x} {y}");
                }
                let undef = UNDEFINED[x as usize] & (1 << i.index()) != 0;
                assert_eq!(undef, i.apply(x).is_none());
            }
        }
    }

    #[test]
    fn a2_essp_unsolvable() {
        let a2 = ts_from_arcs("a2", "s0", &[("s0", "a", "s1"), ("s1", "a", "s2")]).unwrap();
        let ty = NetType::of(&[Nop, Set, Swap, Free]);
        assert_eq!(
            solve_atom(&a2, ty, SeparationAtom::Essp(0, 2), DEFAULT_BUDGET),
            AtomOutcome::Unsolvable
        );
    }

    #[test]
    fn a1_ssp_solved() {
        let a1 = ts_from_arcs("a1", "s0", &[("s0", "a", "s1"), ("s1", "a", "s2"), ("s2", "a", "s1")]).unwrap();
        let ty = NetType::of(&[Nop, Set, Swap, Free]);
        let atom = SeparationAtom::Ssp(0, 1);
        let r = solve_atom(&a1, ty, atom, DEFAULT_BUDGET).region().unwrap();
        assert!(region_valid(&a1, ty, &r));
        assert!(r.solves(&atom));
    }

    #[test]
    fn inp_only_option() {
        let ts = ts_from_arcs("x", "s0", &[("s0", "a", "s1")]).unwrap();
        let r = solve_atom(&ts, NetType::of(&[Nop, Inp]), SeparationAtom::Essp(0, 1), DEFAULT_BUDGET)
            .region()
            .unwrap();
        assert_eq!(r.support, vec![true, false]);
        assert_eq!(r.signature, vec![Inp]);
    }

    #[test]
    fn self_loop_forbids_change() {
        let ts = ts_from_arcs("x", "s0", &[("s0", "a", "s0"), ("s0", "b", "s1")]).unwrap();
        let ty = NetType::of(&[Nop, Swap]);
        assert_eq!(
            solve_atom(&ts, ty, SeparationAtom::Ssp(0, 1), DEFAULT_BUDGET).region().unwrap().signature[1],
            Swap
        );
    }

    #[test]
    fn tiny_budget_is_inconclusive() {
        let a4 = ts_from_arcs("a4", "s0", &[("s0", "a", "s1"), ("s1", "a", "s2"), ("s2", "a", "s3")]).unwrap();
        let ty = NetType::of(&[Nop, Set, Swap, Free]);
        assert_eq!(
            solve_atom(&a4, ty, SeparationAtom::Ssp(1, 3), 1),
            AtomOutcome::BudgetExhausted
        );
        assert_eq!(
            solve_atom(&a4, ty, SeparationAtom::Ssp(1, 3), DEFAULT_BUDGET),
            AtomOutcome::Unsolvable
        );
    }

    #[test]
    fn fixed_domains_respected() {
        let ts = ts_from_arcs("x", "s0", &[("s0", "a", "s1")]).unwrap();
        let ty = NetType::of(&[Nop, Inp, Set]);
        let mut search = RegionSearch::new(&ts, ty);
        search.fix_sig(0, Set).fix_sup(0, true);
        let r = search.solve(None, DEFAULT_BUDGET).region().unwrap();
        assert_eq!(r.support, vec![true, true]);
        let mut search = RegionSearch::new(&ts, ty);
        search.fix_sig(0, Inp).fix_sup(0, false);
        assert_eq!(search.solve(None, DEFAULT_BUDGET), AtomOutcome::Unsolvable);
    }
}
