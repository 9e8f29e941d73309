//! Models to regions, regions to models, and the end-to-end check that a
//! gadget is solvable exactly when its formula is satisfiable.

use thiserror::Error;

use crate::interaction::{Interaction, NetType, TypeIsomorphism};
use crate::region::{enumerate_atoms, extend_region, Region, SeparationAtom};
use crate::search::{AtomOutcome, RegionSearch};
use crate::synthesis::{decide_atoms, Decision};
use crate::ts::TransitionSystem;

use super::gadgets::{build_gadget, Family, GadgetError, GadgetOutput};
use super::instance::{brute_force_model, InstanceError, OneInThreeInstance};

use Interaction::*;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("{0:?} is not a one-in-three model")]
    NotAModel(Vec<usize>),
    #[error("no region completes the signature recipe")]
    NoRegion,
    #[error("search budget exhausted while completing the recipe")]
    BudgetExhausted,
}

/// Signature and support constraints from a model. Events not listed are
/// left to the search.
struct Recipe {
    sig: Vec<Option<Interaction>>,
    sup: Vec<(usize, bool)>,
    /// The recipe targets the complement of the gadget's type.
    complement: bool,
}

impl Recipe {
    fn new(ts: &TransitionSystem) -> Recipe {
        Recipe {
            sig: vec![None; ts.num_events()],
            sup: Vec::new(),
            complement: false,
        }
    }

    fn set(&mut self, ts: &TransitionSystem, event: &str, i: Interaction) {
        if let Some(e) = ts.event_id(event) {
            self.sig[e] = Some(i);
        }
    }

    /// Applies `i` to every event whose name starts with `prefix_`.
    fn set_all(&mut self, ts: &TransitionSystem, prefix: &str, i: Interaction) {
        let p = format!("{prefix}_");
        for (e, name) in ts.events().iter().enumerate() {
            if name.starts_with(&p) {
                self.sig[e] = Some(i);
            }
        }
    }

    fn support(&mut self, ts: &TransitionSystem, state: &str, x: bool) {
        if let Some(s) = ts.state_id(state) {
            self.sup.push((s, x));
        }
    }

    fn variables(&mut self, ts: &TransitionSystem, m: usize, model: &[usize], inside: Interaction, outside: Interaction) {
        for v in 0..m {
            let i = if model.contains(&v) { inside } else { outside };
            self.set(ts, &format!("X_{v}"), i);
        }
    }
}

fn recipe(g: &GadgetOutput, phi: &OneInThreeInstance, model: &[usize]) -> Recipe {
    let ts = &g.ts;
    let m = phi.num_vars();
    let mut r = Recipe::new(ts);
    match g.family {
        Family::T1 => {
            r.support(ts, "bot_0", true);
            r.set(ts, "k_0", Inp);
            r.set(ts, "k_1", Free);
            r.set_all(ts, "ominus", Nop);
            r.set_all(ts, "oplus", Nop);
            r.variables(ts, m, model, Inp, Nop);
        }
        Family::T2 => {
            // Without used the complemented recipe is built and transported.
            r.complement = !g.ty.contains(Used);
            r.support(ts, "bot_0", false);
            r.set(ts, "k_0", Used);
            r.set(ts, "k_1", Res);
            r.set(ts, "k_2", Res);
            r.set(ts, "k_3", Set);
            r.set_all(ts, "z", Nop);
            r.set_all(ts, "ominus", Nop);
            r.variables(ts, m, model, Res, Nop);
            for (i, c) in phi.clauses().iter().enumerate() {
                for (j, v) in c.iter().enumerate() {
                    let i_y = if model.contains(v) { Set } else { Nop };
                    r.set(ts, &format!("y_{}", 3 * i + j), i_y);
                }
            }
        }
        Family::T3 => {
            r.support(ts, "bot_0", false);
            r.set(ts, "k", Inp);
            r.set(ts, "n", Set);
            for p in ["v", "p"] {
                r.set_all(ts, p, Set);
            }
            for p in ["z", "q", "w", "y", "c", "ominus"] {
                r.set_all(ts, p, Nop);
            }
            r.variables(ts, m, model, Inp, Nop);
            for v in 0..m {
                let i = if model.contains(&v) { Set } else { Nop };
                r.set(ts, &format!("x_{v}"), i);
            }
        }
        Family::T4 => {
            r.support(ts, "h_0_0", false);
            r.set(ts, "k_0", Out);
            r.set(ts, "k_1", Set);
            r.variables(ts, m, model, Inp, Nop);
        }
        Family::T5 => {
            r.set(ts, "k_0", Free);
            r.set(ts, "k_1", Set);
            r.variables(ts, m, model, Inp, Nop);
        }
        Family::T6 | Family::T7 => {
            if g.family == Family::T6 {
                r.support(ts, "h_0_0", true);
            }
            r.set(ts, "k", Inp);
            r.set_all(ts, "u", Swap);
            r.variables(ts, m, model, Swap, Nop);
        }
    }
    r
}

/// The α-solving region the reduction associates with a model: the
/// family's signature recipe, completed by search where the recipe leaves
/// events open.
pub fn model_to_region(g: &GadgetOutput, phi: &OneInThreeInstance, model: &[usize], budget: u64) -> Result<Region, ModelError> {
    if !phi.is_model(model) {
        return Err(ModelError::NotAModel(model.to_vec()));
    }
    let r = recipe(g, phi, model);
    let iso = if r.complement {
        TypeIsomorphism::complement()
    } else {
        TypeIsomorphism::identity()
    };
    let ty = iso.transport(g.ty);
    let atom = g.atom;
    let complete = r.sig.iter().all(Option::is_some);
    let init = r.sup.iter().find(|&&(s, _)| s == g.ts.initial()).map(|&(_, x)| x);
    let region = match (complete, init) {
        (true, Some(x)) => {
            let sig: Vec<Interaction> = r.sig.iter().map(|i| i.unwrap()).collect();
            extend_region(&g.ts, ty, x, &sig).filter(|reg| reg.solves(&atom)).ok_or(ModelError::NoRegion)?
        }
        _ => {
            let mut search = RegionSearch::new(&g.ts, ty);
            for (e, i) in r.sig.iter().enumerate() {
                if let Some(i) = *i {
                    search.fix_sig(e, i);
                }
            }
            for &(s, x) in &r.sup {
                search.fix_sup(s, x);
            }
            match search.solve(Some(atom), budget) {
                AtomOutcome::Solved(reg) => reg,
                AtomOutcome::Unsolvable => return Err(ModelError::NoRegion),
                AtomOutcome::BudgetExhausted => return Err(ModelError::BudgetExhausted),
            }
        }
    };
    Ok(region.transport(&iso.inverse()))
}

/// Reads the variable assignment off an α-solving region.
pub fn region_to_model(g: &GadgetOutput, region: &Region) -> Vec<usize> {
    let ts = &g.ts;
    let picks = |v: usize| -> bool {
        let Some(e) = ts.event_id(&format!("X_{v}")) else {
            return false;
        };
        let i = region.sig(e);
        match g.family {
            Family::T1 | Family::T4 | Family::T5 => i == Inp,
            Family::T2 => {
                let flipped = ts.event_id("k_0").map(|k| region.sig(k) == Free).unwrap_or(false);
                i == if flipped { Set } else { Res }
            }
            Family::T3 => i != Nop,
            Family::T6 | Family::T7 => i == Swap,
        }
    };
    let m = ts.events().iter().filter(|n| n.starts_with("X_")).count();
    (0..m).filter(|&v| picks(v)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verification {
    /// Solver and oracle agree.
    Confirmed { positive: bool },
    /// Solver and oracle disagree, or a solving region encodes no model.
    Refuted { oracle: Option<Vec<usize>>, detail: String },
    /// The search budget ran out on this atom.
    Inconclusive(SeparationAtom),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Gadget(#[from] GadgetError),
    #[error(transparent)]
    Instance(#[from] InstanceError),
}

/// Builds the gadget, decides its solvability and compares with the
/// oracle. The designated atom is tried first.
pub fn verify_gadget(
    family: Family,
    phi: &OneInThreeInstance,
    omega: Option<NetType>,
    budget: u64,
) -> Result<Verification, VerifyError> {
    let oracle = brute_force_model(phi)?;
    let g = build_gadget(family, phi, omega)?;
    Ok(verify_output(&g, phi, oracle, budget))
}

/// As [`verify_gadget`] for an already built gadget and oracle answer.
pub fn verify_output(g: &GadgetOutput, phi: &OneInThreeInstance, oracle: Option<Vec<usize>>, budget: u64) -> Verification {
    let mut atoms = vec![g.atom];
    atoms.extend(enumerate_atoms(&g.ts).into_iter().filter(|a| *a != g.atom));
    let decision = decide_atoms(&g.ts, g.ty, atoms, budget);
    log::debug!("{} on m={}: {:?}", g.family, phi.num_vars(), decision_summary(&decision));
    match (decision, oracle) {
        (Decision::Inconclusive(a), _) => Verification::Inconclusive(a),
        (Decision::Solvable(set), Some(model)) => {
            let alpha = set.regions[set.witness[0].1].clone();
            let found = region_to_model(g, &alpha);
            if phi.is_model(&found) {
                Verification::Confirmed { positive: true }
            } else {
                Verification::Refuted {
                    oracle: Some(model),
                    detail: format!("α-solving region encodes {found:?}, which is not a model"),
                }
            }
        }
        (Decision::Unsolvable(_), None) => Verification::Confirmed { positive: false },
        (Decision::Solvable(_), None) => Verification::Refuted {
            oracle: None,
            detail: "gadget is solvable but the formula has no model".into(),
        },
        (Decision::Unsolvable(a), Some(model)) => Verification::Refuted {
            oracle: Some(model),
            detail: format!("atom {} is unsolvable although the formula has a model", a.display(&g.ts)),
        },
    }
}

fn decision_summary(d: &Decision) -> String {
    match d {
        Decision::Solvable(set) => format!("solvable with {} regions", set.regions.len()),
        Decision::Unsolvable(a) => format!("unsolvable at {a:?}"),
        Decision::Inconclusive(a) => format!("inconclusive at {a:?}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::region::region_valid;
    use crate::reductions::instance::{example_instance, validate_instance};
    use crate::search::DEFAULT_BUDGET;

    #[test]
    fn t1_red_region() {
        let phi = example_instance();
        let g = build_gadget(Family::T1, &phi, None).unwrap();
        let r = model_to_region(&g, &phi, &[0, 4], DEFAULT_BUDGET).unwrap();
        assert!(region_valid(&g.ts, g.ty, &r));
        assert!(r.solves(&g.atom));
        let mut red: Vec<&str> = (0..g.ts.num_states()).filter(|&s| r.sup(s)).map(|s| g.ts.state_name(s)).collect();
        red.sort();
        let mut expected = vec!["t_3_1", "t_4_1", "t_5_1", "m_0"];
        let names: Vec<String> = (0..6).map(|i| format!("t_{i}_0")).chain((0..7).map(|i| format!("bot_{i}"))).collect();
        expected.extend(names.iter().map(String::as_str));
        expected.sort();
        assert_eq!(red, expected);
        assert_eq!(region_to_model(&g, &r), vec![0, 4]);
        assert_eq!(model_to_region(&g, &phi, &[1], DEFAULT_BUDGET), Err(ModelError::NotAModel(vec![1])));
    }

    #[test]
    fn every_family_accepts_the_model() {
        let phi = example_instance();
        for f in Family::ALL {
            for omega in NetType::all_with_nop().map(|t| t.without(Nop)).filter(|o| o.is_subset(f.optional())) {
                let Ok(g) = build_gadget(f, &phi, Some(omega)) else { continue };
                let r = model_to_region(&g, &phi, &[0, 4], DEFAULT_BUDGET).unwrap_or_else(|e| panic!("{f} {omega}: {e}"));
                assert!(region_valid(&g.ts, g.ty, &r), "{f} {omega}");
                assert!(r.solves(&g.atom), "{f} {omega}");
                assert_eq!(region_to_model(&g, &r), vec![0, 4], "{f} {omega}");
            }
        }
    }

    #[test]
    fn t2_model_at_every_clause_position() {
        // The true variable x_5 sits last in three clauses, so every
        // rotation fires it before one of the later y loops.
        let phi = validate_instance(&[[0, 1, 2], [0, 1, 3], [0, 1, 4], [2, 3, 5], [2, 4, 5], [3, 4, 5]]).unwrap();
        for omega in [NetType::of(&[Used]), NetType::of(&[Free]), NetType::of(&[Used, Free])] {
            let g = build_gadget(Family::T2, &phi, Some(omega)).unwrap();
            let r = model_to_region(&g, &phi, &[0, 5], DEFAULT_BUDGET).unwrap();
            assert!(region_valid(&g.ts, g.ty, &r), "{omega}");
            assert_eq!(region_to_model(&g, &r), vec![0, 5]);
        }
    }

    #[test]
    fn empty_formula_t1() {
        let phi = validate_instance(&[]).unwrap();
        let v = verify_gadget(Family::T1, &phi, None, DEFAULT_BUDGET).unwrap();
        assert_eq!(v, Verification::Confirmed { positive: true });
    }
}
