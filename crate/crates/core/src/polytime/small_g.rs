//! Deciders for the types that stay polynomial below a fixed bound.

use std::collections::HashSet;

use crate::complexity::row_of;
use crate::interaction::{Interaction, NetType};
use crate::region::{enumerate_atoms, extend_region, region_valid, Region, SeparationAtom};
use crate::ts::TransitionSystem;

use super::linear::{classify_linear, cycle_extension, LinearKind};
use super::one_bounded::{CycleForm, Plan};
use super::{PolyError, PolyVerdict};

/// Upper limit on `2·|τ|^|E|` for the brute-force conditions.
pub const BRUTE_FORCE_LIMIT: u128 = 1 << 26;

/// Which of the four polynomial conditions applies to `(ty, g)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Condition {
    /// `{nop,inp,free}` and its relatives below bound 2.
    LinearDistinct,
    /// `{nop,set,res} ∪ ω`, `ω ⊆ {used,free}` nonempty, below bound 3.
    LoopLadder,
    /// swap types with used/free below bound 2.
    TinyCycle,
    /// Always-polynomial types, decided by brute force.
    BruteForce { require_initial: bool },
}

pub fn condition_for(ty: NetType, g: usize) -> Option<Condition> {
    let row = row_of(ty)?;
    match row.group {
        1 if g < 2 => Some(Condition::LinearDistinct),
        2 if g < 3 => Some(Condition::LoopLadder),
        9 if g < 2 => Some(Condition::TinyCycle),
        10 => Some(Condition::BruteForce { require_initial: true }),
        11 => Some(Condition::BruteForce { require_initial: false }),
        _ => None,
    }
}

/// Decides solvability of a `g`-bounded system for `(ty, g)` pairs that
/// fall under one of the four conditions.
pub fn decide_small_g(ts: &TransitionSystem, ty: NetType, g: usize) -> Result<PolyVerdict, PolyError> {
    let cond = condition_for(ty, g).ok_or(PolyError::UnsupportedPair { ty, g })?;
    let bound = ts.bound();
    if bound > g {
        return Err(PolyError::BoundTooLarge { bound, allowed: g });
    }
    match cond {
        Condition::LinearDistinct => linear_distinct(ts, ty),
        Condition::LoopLadder => loop_ladder(ts, ty),
        Condition::TinyCycle => {
            if ts.num_states() > 3 {
                // Only used/free can inhibit, so every target must enable
                // the event that entered it; a single-event cycle of length
                // four or more then repeats supports with period two.
                for a in ts.arcs() {
                    if !ts.enables(a.dst, a.event) {
                        return Ok(PolyVerdict::Unsolvable(SeparationAtom::Essp(a.event, a.dst)));
                    }
                }
                let shape = classify_linear(ts)?;
                let (a, b) = (shape.states[1], shape.states[3]);
                return Ok(PolyVerdict::Unsolvable(SeparationAtom::Ssp(a.min(b), a.max(b))));
            }
            brute_force(ts, ty)
        }
        Condition::BruteForce { require_initial } => {
            if require_initial {
                for e in 0..ts.num_events() {
                    if !ts.enables(ts.initial(), e) {
                        return Ok(PolyVerdict::Unsolvable(SeparationAtom::Essp(e, ts.initial())));
                    }
                }
            }
            brute_force(ts, ty)
        }
    }
}

fn linear_distinct(ts: &TransitionSystem, ty: NetType) -> Result<PolyVerdict, PolyError> {
    let shape = classify_linear(ts)?;
    if ts.num_states() == 1 {
        return brute_force(ts, ty);
    }
    if shape.kind == LinearKind::DirectedCycle {
        let (a, b) = (shape.states[0], shape.states[1]);
        return Ok(PolyVerdict::Unsolvable(first_failing(ts, ty).unwrap_or(SeparationAtom::Ssp(a, b))));
    }
    let mut seen = HashSet::new();
    for &e in &shape.events {
        if !seen.insert(e) {
            return Ok(PolyVerdict::Unsolvable(
                first_failing(ts, ty).unwrap_or(SeparationAtom::Essp(e, ts.initial())),
            ));
        }
    }
    Ok(PolyVerdict::Solvable(Vec::new()))
}

/// Names an unsolvable atom for diagnostics when the system is small enough.
fn first_failing(ts: &TransitionSystem, ty: NetType) -> Option<SeparationAtom> {
    match brute_force(ts, ty) {
        Ok(PolyVerdict::Unsolvable(a)) => Some(a),
        _ => None,
    }
}

fn loop_ladder(ts: &TransitionSystem, ty: NetType) -> Result<PolyVerdict, PolyError> {
    for a in ts.arcs() {
        if a.src != a.dst && ts.delta(a.dst, a.event) != Some(a.dst) {
            let atom = if ts.enables(a.dst, a.event) {
                let next = ts.delta(a.dst, a.event).unwrap();
                SeparationAtom::Ssp(a.dst.min(next), a.dst.max(next))
            } else {
                SeparationAtom::Essp(a.event, a.dst)
            };
            return Ok(PolyVerdict::Unsolvable(atom));
        }
    }
    let erased = ts.without_arcs(|a| a.src != a.dst);
    for a in ts.arcs().iter().filter(|a| a.src == a.dst) {
        let entered = erased.predecessors(a.dst).iter().any(|&(e, _)| e == a.event);
        if !entered {
            return Err(PolyError::UnsupportedShape(format!(
                "loop {} at {} is not entered by an arc with the same event",
                ts.event_name(a.event),
                ts.state_name(a.dst)
            )));
        }
    }
    let shape = match classify_linear(&erased) {
        Ok(s) => s,
        Err(PolyError::BoundTooLarge { .. }) => {
            return Err(PolyError::UnsupportedShape(
                "loop erasement is not a path or a cycle".into(),
            ))
        }
        Err(e) => return Err(e),
    };
    let extended;
    let cyc = match shape.kind {
        LinearKind::SimplePath => {
            extended = cycle_extension(&erased)?;
            &extended
        }
        LinearKind::DirectedCycle => &erased,
    };
    let form = CycleForm::new(cyc)?;
    let plan = Plan::ladder(ty);
    let mut regions: Vec<Region> = Vec::new();
    for atom in enumerate_atoms(ts) {
        if regions.iter().any(|r| r.solves(&atom)) {
            continue;
        }
        match form.solve(atom, &plan, ts.num_events()) {
            Some(r) if region_valid(ts, ty, &r) => regions.push(r),
            Some(_) => {
                return Err(PolyError::UnsupportedShape(
                    "region of the loop erasement does not extend to the loops".into(),
                ))
            }
            None => return Ok(PolyVerdict::Unsolvable(atom)),
        }
    }
    Ok(PolyVerdict::Solvable(regions))
}

/// Enumerates all `2·|τ|^|E|` candidate regions and checks every atom.
pub fn brute_force(ts: &TransitionSystem, ty: NetType) -> Result<PolyVerdict, PolyError> {
    let members: Vec<Interaction> = ty.iter().collect();
    let n = ts.num_events();
    let count = 2u128.saturating_mul((members.len() as u128).saturating_pow(n as u32));
    if count > BRUTE_FORCE_LIMIT {
        return Err(PolyError::TooLarge { regions: count });
    }
    let atoms = enumerate_atoms(ts);
    let mut solved: Vec<Option<usize>> = vec![None; atoms.len()];
    let mut regions: Vec<Region> = Vec::new();
    let mut digits = vec![0usize; n];
    loop {
        let sig: Vec<Interaction> = digits.iter().map(|&d| members[d]).collect();
        for init in [false, true] {
            if let Some(r) = extend_region(ts, ty, init, &sig) {
                let mut useful = false;
                for (k, atom) in atoms.iter().enumerate() {
                    if solved[k].is_none() && r.solves(atom) {
                        solved[k] = Some(regions.len());
                        useful = true;
                    }
                }
                if useful {
                    regions.push(r);
                }
            }
        }
        if !advance(&mut digits, members.len()) {
            break;
        }
    }
    match solved.iter().position(Option::is_none) {
        Some(k) => Ok(PolyVerdict::Unsolvable(atoms[k])),
        None => Ok(PolyVerdict::Solvable(regions)),
    }
}

fn advance(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}
