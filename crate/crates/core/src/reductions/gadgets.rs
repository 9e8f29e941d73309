//! The gadget systems `A^τ_φ` of the seven hardness reductions.
//!
//! Names flatten subscripts with underscores: `t_0_3`, `bot_5`, `oplus_2`,
//! `X_4`. Families T1 to T3 hang every gadget off a chain of `bot` states;
//! T4 to T7 concatenate their path gadgets into one long path.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::interaction::{Interaction, NetType};
use crate::region::SeparationAtom;
use crate::ts::{TransitionSystem, TsBuilder, TsError};

use super::instance::OneInThreeInstance;

use Interaction::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    T1,
    T2,
    T3,
    T4,
    T5,
    T6,
    T7,
}

impl Family {
    pub const ALL: [Family; 7] = [Family::T1, Family::T2, Family::T3, Family::T4, Family::T5, Family::T6, Family::T7];

    /// Interactions every type of the family contains.
    pub fn base_type(self) -> NetType {
        NetType::of(match self {
            Family::T1 => &[Nop, Inp, Free],
            Family::T2 => &[Nop, Set, Res],
            Family::T3 => &[Nop, Inp, Set],
            Family::T4 => &[Nop, Inp, Out, Set],
            Family::T5 => &[Nop, Inp, Set, Free],
            Family::T6 => &[Nop, Inp, Res, Swap],
            Family::T7 => &[Nop, Inp, Set, Swap],
        })
    }

    /// Interactions that may be added to the base type.
    pub fn optional(self) -> NetType {
        NetType::of(match self {
            Family::T1 | Family::T5 => &[Used],
            Family::T2 | Family::T4 | Family::T6 => &[Used, Free],
            Family::T3 => &[Res, Out, Used, Free],
            Family::T7 => &[Out, Res, Used, Free],
        })
    }

    /// The extension used when none is given; `None` where one is required.
    pub fn default_omega(self) -> Option<NetType> {
        match self {
            Family::T2 => Some(NetType::of(&[Used])),
            Family::T4 => None,
            _ => Some(NetType::EMPTY),
        }
    }

    /// Checks an extension and returns the full type.
    pub fn net_type(self, omega: NetType) -> Result<NetType, GadgetError> {
        let bad = || GadgetError::InvalidOmega { family: self, omega };
        if !omega.is_subset(self.optional()) {
            return Err(bad());
        }
        match self {
            Family::T2 if omega.is_empty() => return Err(bad()),
            Family::T3 if (omega.contains(Out) || omega.contains(Free)) && !omega.contains(Res) => return Err(bad()),
            _ => {}
        }
        Ok(self.base_type().union(omega))
    }

    pub fn declared_bound(self) -> usize {
        match self {
            Family::T1 | Family::T3 => 2,
            Family::T2 => 3,
            _ => 1,
        }
    }

    /// Smallest number of clauses the construction accepts.
    pub fn min_clauses(self) -> usize {
        match self {
            Family::T3 => 1,
            _ => 0,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T{}", *self as usize + 1)
    }
}

impl FromStr for Family {
    type Err = GadgetError;

    fn from_str(s: &str) -> Result<Family, GadgetError> {
        let t = s.trim();
        let digit = t.strip_prefix('T').or_else(|| t.strip_prefix('t')).unwrap_or(t);
        match digit.parse::<usize>() {
            Ok(n @ 1..=7) => Ok(Family::ALL[n - 1]),
            _ => Err(GadgetError::UnknownFamily(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GadgetError {
    #[error("unknown gadget family {0:?} (expected T1..T7)")]
    UnknownFamily(String),
    #[error("{0} needs an explicit extension ω ⊆ {{used,free}}")]
    OmegaRequired(Family),
    #[error("extension {omega} is not allowed for {family}")]
    InvalidOmega { family: Family, omega: NetType },
    #[error("{family} needs at least {min} clauses")]
    TooFewClauses { family: Family, min: usize },
    #[error("assembled system is invalid: {0}")]
    Invalid(#[from] TsError),
}

/// A generated system with its type and designated atom.
#[derive(Debug, Clone)]
pub struct GadgetOutput {
    pub ts: TransitionSystem,
    pub ty: NetType,
    pub atom: SeparationAtom,
    pub family: Family,
    pub declared_bound: usize,
}

/// One gadget: its states in path order plus arcs by name.
#[derive(Debug, Default)]
struct Gadget {
    states: Vec<String>,
    arcs: Vec<(String, String, String)>,
}

impl Gadget {
    /// A directed path `prefix_0 -e0-> prefix_1 -e1-> ...`.
    fn path(prefix: &str, events: &[String]) -> Gadget {
        let states: Vec<String> = (0..=events.len()).map(|i| format!("{prefix}_{i}")).collect();
        let arcs = events
            .iter()
            .enumerate()
            .map(|(i, e)| (states[i].clone(), e.clone(), states[i + 1].clone()))
            .collect();
        Gadget { states, arcs }
    }

    fn first(&self) -> &str {
        &self.states[0]
    }

    fn last(&self) -> &str {
        self.states.last().unwrap()
    }

    fn arc(&mut self, src: usize, event: &str, dst: usize) {
        self.arcs.push((self.states[src].clone(), event.to_string(), self.states[dst].clone()));
    }

    fn self_loop(&mut self, at: usize, event: &str) {
        self.arc(at, event, at);
    }
}

fn ev(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn x(v: usize) -> String {
    format!("X_{v}")
}

/// The clause's variables rotated left by `n`.
fn rotate(c: &[usize; 3], n: usize) -> [usize; 3] {
    [c[n % 3], c[(n + 1) % 3], c[(n + 2) % 3]]
}

enum Joining {
    /// `bot_j -ominus_{j+1}-> bot_{j+1}` and `bot_j -oplus_j-> first(G_j)`.
    Bottom,
    /// As `Bottom`, plus an `ominus_{j}` loop at `bot_j` and an `oplus_j`
    /// loop at the first state of `G_j`.
    BottomWithLoops,
    /// `last(G_{j-1}) -ominus_j-> bot_j -oplus_j-> first(G_j)`.
    Concatenate,
}

fn assemble(name: &str, gadgets: &[Gadget], joining: Joining) -> Result<TransitionSystem, TsError> {
    let mut b = TsBuilder::new(name);
    let n = gadgets.len();
    match joining {
        Joining::Bottom | Joining::BottomWithLoops => {
            let loops = matches!(joining, Joining::BottomWithLoops);
            b.initial("bot_0");
            for (j, g) in gadgets.iter().enumerate() {
                let bot = format!("bot_{j}");
                if j + 1 < n {
                    let minus = format!("ominus_{}", j + 1);
                    let next = format!("bot_{}", j + 1);
                    b.arc(&bot, &minus, &next);
                    if loops {
                        b.arc(&next, &minus, &next);
                    }
                }
                let plus = format!("oplus_{j}");
                b.arc(&bot, &plus, g.first());
                if loops {
                    b.arc(g.first(), &plus, g.first());
                }
                for (s, e, d) in &g.arcs {
                    b.arc(s, e, d);
                }
            }
        }
        Joining::Concatenate => {
            b.initial(gadgets[0].first());
            for (j, g) in gadgets.iter().enumerate() {
                if j > 0 {
                    let bot = format!("bot_{j}");
                    b.arc(gadgets[j - 1].last(), &format!("ominus_{j}"), &bot);
                    b.arc(&bot, &format!("oplus_{j}"), g.first());
                }
                for (s, e, d) in &g.arcs {
                    b.arc(s, e, d);
                }
            }
        }
    }
    b.build()
}

/// Builds `A^τ_φ` for the family with extension `omega` (the family
/// default when `None`).
pub fn build_gadget(family: Family, phi: &OneInThreeInstance, omega: Option<NetType>) -> Result<GadgetOutput, GadgetError> {
    let omega = match omega.or_else(|| family.default_omega()) {
        Some(o) => o,
        None => return Err(GadgetError::OmegaRequired(family)),
    };
    let ty = family.net_type(omega)?;
    if phi.num_vars() < family.min_clauses() {
        return Err(GadgetError::TooFewClauses {
            family,
            min: family.min_clauses(),
        });
    }
    let (gadgets, joining, atom) = match family {
        Family::T1 => t1(phi),
        Family::T2 => t2(phi),
        Family::T3 => t3(phi),
        Family::T4 => t4(phi, ty.contains(Used)),
        Family::T5 => t5(phi),
        Family::T6 => t6(phi),
        Family::T7 => t7(phi, ty.contains(Used) || ty.contains(Free)),
    };
    let ts = assemble(&format!("{}_m{}", family.to_string().to_lowercase(), phi.num_vars()), &gadgets, joining)?;
    let (e, s) = atom;
    let atom = SeparationAtom::Essp(ts.event_id(e).unwrap(), ts.state_id(s).unwrap());
    Ok(GadgetOutput {
        ts,
        ty,
        atom,
        family,
        declared_bound: family.declared_bound(),
    })
}

type Parts = (Vec<Gadget>, Joining, (&'static str, &'static str));

fn t1(phi: &OneInThreeInstance) -> Parts {
    let mut gs = Vec::new();
    for (i, c) in phi.clauses().iter().enumerate() {
        let mut t = Gadget::path(&format!("t_{i}"), &[x(c[0]), x(c[1]), x(c[2]), "k_1".into()]);
        t.states.push(format!("t_{i}_5"));
        t.arc(0, "k_0", 5);
        gs.push(t);
    }
    gs.push(Gadget::path("m", &ev(&["k_0", "k_1"])));
    (gs, Joining::Bottom, ("k_1", "m_0"))
}

fn t2(phi: &OneInThreeInstance) -> Parts {
    let m = phi.num_vars();
    let mut gs = Vec::new();
    let mut h0 = Gadget::path("h_0", &ev(&["k_0", "k_1"]));
    h0.self_loop(1, "k_0");
    h0.self_loop(2, "k_1");
    let mut h1 = Gadget::path("h_1", &ev(&["k_2"]));
    h1.self_loop(0, "k_0");
    h1.self_loop(1, "k_2");
    h1.self_loop(1, "k_1");
    let mut h2 = Gadget::path("h_2", &ev(&["k_3"]));
    h2.self_loop(0, "k_1");
    h2.self_loop(1, "k_3");
    h2.self_loop(1, "k_0");
    gs.extend([h0, h1, h2]);
    for j in 0..16 * m {
        let (z, c0, c1) = (format!("z_{j}"), format!("c_{}", 2 * j), format!("c_{}", 2 * j + 1));
        let mut f = Gadget::path(&format!("f_{j}"), &[z.clone(), c0.clone(), c1.clone(), z.clone()]);
        f.self_loop(1, &z);
        f.self_loop(1, "k_2");
        f.self_loop(2, &c0);
        f.self_loop(3, &c1);
        f.self_loop(4, &z);
        f.self_loop(4, "k_3");
        gs.push(f);
    }
    // y_{3i+j} loops only where X_{i_j} has not fired yet; the loop after
    // the second variable always belongs to the third.
    const Y_AT: [[usize; 2]; 3] = [[1, 2], [0, 0], [0, 1]];
    let mut last = Vec::new();
    for (i, c) in phi.clauses().iter().enumerate() {
        for (n, [y2, y4]) in Y_AT.into_iter().enumerate() {
            let [a, b, d] = rotate(c, n);
            let z = |k: usize| format!("z_{}", 16 * i + 4 * n + k);
            let mut t = Gadget::path(&format!("t_{i}_{n}"), &[z(0), x(a), z(1), x(b), z(2), x(d), z(3)]);
            t.self_loop(0, "k_0");
            t.self_loop(1, &z(0));
            t.self_loop(2, &x(a));
            t.self_loop(2, &format!("y_{}", 3 * i + y2));
            t.self_loop(3, &z(1));
            t.self_loop(4, &x(b));
            t.self_loop(4, &format!("y_{}", 3 * i + y4));
            t.self_loop(5, &z(2));
            t.self_loop(6, &x(d));
            t.self_loop(7, &z(3));
            t.self_loop(7, "k_1");
            gs.push(t);
        }
        let z = |k: usize| format!("z_{}", 16 * i + 12 + k);
        let y = |k: usize| format!("y_{}", 3 * i + k);
        let mut t = Gadget::path(&format!("t_{i}_3"), &[z(0), y(0), z(1), y(1), z(2), y(2), z(3)]);
        t.self_loop(0, "k_1");
        for p in 0..3 {
            t.self_loop(2 * p + 1, &z(p));
            t.self_loop(2 * p + 2, &y(p));
        }
        t.self_loop(7, &z(3));
        t.self_loop(7, "k_0");
        last.push(t);
    }
    gs.extend(last);
    (gs, Joining::BottomWithLoops, ("k_0", "h_0_2"))
}

fn t3(phi: &OneInThreeInstance) -> Parts {
    let m = phi.num_vars();
    let mut h = Gadget::default();
    for j in 0..6 * m {
        let chain = if j < 3 * m {
            [format!("z_{j}"), format!("v_{j}"), format!("q_{j}")]
        } else {
            let l = j - 3 * m;
            [format!("w_{l}"), format!("p_{l}"), format!("y_{l}")]
        };
        let [a, b, c] = chain;
        let part = Gadget::path(&format!("h_{j}"), &["k".into(), a.clone(), b, "k".into(), c, a]);
        h.states.extend(part.states);
        h.arcs.extend(part.arcs);
    }
    for j in 0..6 * m - 1 {
        let (end, next_start, next_end) = (7 * j + 6, 7 * (j + 1), 7 * (j + 1) + 6);
        h.arc(end, &format!("r_{j}"), next_start);
        h.arc(end, &format!("c_{j}"), next_end);
    }
    let mut gs = vec![
        h,
        Gadget::path("f_0", &ev(&["k", "n", "z_0", "k"])),
        Gadget::path("f_1", &ev(&["q_0", "k"])),
    ];
    for j in 0..6 * m - 1 {
        let c = format!("c_{j}");
        let mut g = Gadget::path(&format!("g_{j}"), std::slice::from_ref(&c));
        g.states.push(format!("g_{j}_2"));
        g.states.push(format!("g_{j}_3"));
        g.arc(0, "k", 2);
        g.arc(2, &c, 3);
        g.arc(1, "k", 3);
        gs.push(g);
    }
    for (i, c) in phi.clauses().iter().enumerate() {
        for n in 0..3 {
            let [a, b, d] = rotate(c, n);
            let mut t = Gadget::path(&format!("t_{i}_{n}"), &["k".into(), format!("v_{}", 3 * i + n)]);
            for p in 3..6 {
                t.states.push(format!("t_{i}_{n}_{p}"));
            }
            t.arc(1, &format!("w_{}", 3 * i + n), 5);
            t.arc(2, &x(a), 3);
            t.arc(3, &x(b), 4);
            t.arc(4, &x(d), 5);
            t.arc(3, &format!("x_{a}"), 2);
            t.arc(4, &format!("x_{b}"), 3);
            t.arc(5, &format!("x_{d}"), 4);
            gs.push(t);
        }
    }
    (gs, Joining::Bottom, ("k", "h_0_6"))
}

/// Clause and variable gadgets shared by T4 and T5.
fn clause_and_variable_paths(phi: &OneInThreeInstance, gs: &mut Vec<Gadget>) {
    for (i, c) in phi.clauses().iter().enumerate() {
        gs.push(Gadget::path(&format!("t_{i}"), &["k_1".into(), x(c[0]), x(c[1]), x(c[2]), "k_0".into()]));
    }
    for v in 0..phi.num_vars() {
        gs.push(Gadget::path(&format!("b_{v}"), &[x(v), "k_0".into()]));
    }
}

fn t4(phi: &OneInThreeInstance, with_used: bool) -> Parts {
    let mut gs = vec![
        Gadget::path("h_0", &ev(&["k_0", "z_0", "o", "k_1", "z_1", "z_0", "o", "k_0"])),
        Gadget::path("h_1", &ev(&["z_0", "k_0"])),
        Gadget::path("h_2", &ev(&["z_1", "k_0"])),
        Gadget::path("h_3", &ev(&["k_0", "k_1"])),
    ];
    if with_used {
        gs.push(Gadget::path("h_4", &ev(&["k_1", "z_0", "k_1"])));
    }
    clause_and_variable_paths(phi, &mut gs);
    (gs, Joining::Concatenate, ("k_0", "h_0_6"))
}

fn t5(phi: &OneInThreeInstance) -> Parts {
    let mut gs = vec![
        Gadget::path("h_0", &ev(&["k_0", "k_1", "z_0", "k_1", "z_1", "k_0"])),
        Gadget::path("h_1", &ev(&["k_0", "z_0", "k_0"])),
    ];
    clause_and_variable_paths(phi, &mut gs);
    (gs, Joining::Concatenate, ("k_0", "h_0_3"))
}

fn u(j: usize) -> String {
    format!("u_{j}")
}

/// The gadget `k u_0 X_a u_1 X_b u_2 X_c u_3 k` of the swap families.
fn parity_path(i: usize, c: &[usize; 3]) -> Gadget {
    Gadget::path(
        &format!("t_{i}_0"),
        &["k".into(), u(0), x(c[0]), u(1), x(c[1]), u(2), x(c[2]), u(3), "k".into()],
    )
}

/// Variable pairs of the exclusion gadgets `T_{i,1}` to `T_{i,3}`.
fn pairs_of(c: &[usize; 3]) -> [(usize, usize); 3] {
    [(c[0], c[1]), (c[2], c[0]), (c[1], c[2])]
}

fn t6(phi: &OneInThreeInstance) -> Parts {
    let mut gs = vec![
        Gadget::path("h_0", &ev(&["k", "y_0", "v", "k"])),
        Gadget::path("h_1", &ev(&["k", "y_1", "y_0", "k"])),
        Gadget::path("h_2", &ev(&["k", "y_0", "y_1", "y_0", "k"])),
        Gadget::path("h_3", &ev(&["y_1", "y_0", "v", "k"])),
        Gadget::path("f_0", &ev(&["k", "z_0", "v", "k"])),
        Gadget::path("f_1", &ev(&["k", "z_1", "v", "k"])),
    ];
    for j in 0..=10 {
        gs.push(Gadget::path(&format!("g_{j}"), &["k".into(), "z_0".into(), u(j), "z_1".into(), "k".into()]));
    }
    for (i, c) in phi.clauses().iter().enumerate() {
        gs.push(parity_path(i, c));
        for (n, (a, b)) in pairs_of(c).into_iter().enumerate() {
            gs.push(Gadget::path(
                &format!("t_{i}_{}", n + 1),
                &["k".into(), u(4), u(5), x(a), format!("w_{}", 3 * i + n), x(b), u(6), "k".into()],
            ));
        }
        for n in 0..3 {
            gs.push(Gadget::path(
                &format!("t_{i}_{}", n + 4),
                &["k".into(), u(7), format!("w_{}", 3 * i + n), u(8), "k".into()],
            ));
        }
    }
    for v in 0..phi.num_vars() {
        gs.push(Gadget::path(&format!("b_{v}"), &[x(v), u(9), u(10), "k".into()]));
    }
    (gs, Joining::Concatenate, ("k", "h_0_2"))
}

fn t7(phi: &OneInThreeInstance, inhibitors: bool) -> Parts {
    let mut gs = vec![
        Gadget::path("h_0", &ev(&["k", "v_0"])),
        Gadget::path("h_1", &ev(&["v_0", "k"])),
        Gadget::path("h_2", &ev(&["k", "v_0", "v_1", "k"])),
        Gadget::path("h_3", &ev(&["k", "v_1", "v_0"])),
    ];
    if inhibitors {
        let pairs = [("x", "v_0"), ("v_0", "x"), ("x", "y_0"), ("y_0", "x"), ("x", "y_1"), ("y_1", "x"), ("x", "y_2"), ("y_2", "x")];
        for (j, (a, b)) in pairs.iter().enumerate() {
            gs.push(Gadget::path(&format!("h_{}", j + 4), &ev(&["k", a, b, "k"])));
        }
        gs.push(Gadget::path("h_12", &ev(&["k", "y_0", "y_1", "y_2", "k"])));
    }
    gs.push(Gadget::path("f_0", &ev(&["k", "z_0", "v_0", "k"])));
    gs.push(Gadget::path("f_1", &ev(&["k", "z_1", "v_0", "k"])));
    gs.push(Gadget::path("f_2", &ev(&["k", "z_0", "z_1", "z_2", "k"])));
    for j in 0..=13 {
        gs.push(Gadget::path(&format!("g_{j}"), &["k".into(), "z_0".into(), u(j), "z_1".into(), "k".into()]));
        gs.push(Gadget::path(&format!("n_{j}"), &["k".into(), "z_2".into(), u(j), "v_0".into(), "k".into()]));
    }
    for (i, c) in phi.clauses().iter().enumerate() {
        gs.push(parity_path(i, c));
        for (n, (a, b)) in pairs_of(c).into_iter().enumerate() {
            gs.push(Gadget::path(
                &format!("t_{i}_{}", n + 1),
                &["k".into(), u(4), x(a), format!("w_{}", 3 * i + n), x(b), u(5), u(6), "k".into()],
            ));
        }
        for n in 0..3 {
            gs.push(Gadget::path(
                &format!("t_{i}_{}", n + 4),
                &["k".into(), u(7), u(8), format!("w_{}", 3 * i + n), u(9), u(10), "k".into()],
            ));
        }
    }
    for v in 0..phi.num_vars() {
        gs.push(Gadget::path(&format!("b_{v}"), &[x(v), u(11), "k".into()]));
    }
    (gs, Joining::Concatenate, ("k", "h_3_3"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reductions::instance::{example_instance, validate_instance};

    #[test]
    fn t1_counts() {
        let phi = example_instance();
        let g = build_gadget(Family::T1, &phi, None).unwrap();
        assert_eq!(g.ts.num_states(), 46);
        assert_eq!(g.ts.num_events(), 21);
        assert_eq!(g.ts.bound(), 2);
        let t00 = g.ts.state_id("t_0_0").unwrap();
        let x0 = g.ts.event_id("X_0").unwrap();
        let k0 = g.ts.event_id("k_0").unwrap();
        assert_eq!(g.ts.delta(t00, x0), g.ts.state_id("t_0_1"));
        assert_eq!(g.ts.delta(t00, k0), g.ts.state_id("t_0_5"));
        assert_eq!(g.atom, SeparationAtom::Essp(g.ts.event_id("k_1").unwrap(), g.ts.state_id("m_0").unwrap()));
    }

    #[test]
    fn degenerate_t1() {
        let phi = validate_instance(&[]).unwrap();
        let g = build_gadget(Family::T1, &phi, None).unwrap();
        assert_eq!(g.ts.num_states(), 4);
        assert_eq!(g.ts.num_events(), 3);
    }

    #[test]
    fn t4_needs_omega() {
        let phi = example_instance();
        assert_eq!(build_gadget(Family::T4, &phi, None).unwrap_err(), GadgetError::OmegaRequired(Family::T4));
        let g = build_gadget(Family::T4, &phi, Some(NetType::EMPTY)).unwrap();
        assert!(g.ts.state_id("h_3_2").is_some());
        assert!(g.ts.state_id("h_4_0").is_none());
        let g = build_gadget(Family::T4, &phi, Some(NetType::of(&[Used]))).unwrap();
        assert!(g.ts.state_id("h_4_3").is_some());
    }

    #[test]
    fn omega_checks() {
        let phi = example_instance();
        assert!(build_gadget(Family::T1, &phi, Some(NetType::of(&[Swap]))).is_err());
        assert!(build_gadget(Family::T2, &phi, Some(NetType::EMPTY)).is_err());
        assert!(build_gadget(Family::T3, &phi, Some(NetType::of(&[Out]))).is_err());
        assert!(build_gadget(Family::T3, &phi, Some(NetType::of(&[Out, Res]))).is_ok());
        assert!(build_gadget(Family::T3, &validate_instance(&[]).unwrap(), None).is_err());
    }

    #[test]
    fn bounds_and_sizes() {
        let phi = example_instance();
        for f in Family::ALL {
            let omega = f.default_omega().unwrap_or(NetType::EMPTY);
            let g = build_gadget(f, &phi, Some(omega)).unwrap();
            assert_eq!(g.ts.bound(), f.declared_bound(), "{f}");
            assert!(g.atom.is_legal(&g.ts), "{f}");
        }
        let g = build_gadget(Family::T2, &phi, None).unwrap();
        // 20m+3 gadgets hang off as many bottom states.
        assert!(g.ts.state_id("bot_122").is_some());
        assert!(g.ts.state_id("bot_123").is_none());
        let g = build_gadget(Family::T3, &phi, None).unwrap();
        assert!(g.ts.state_id("bot_55").is_some());
        assert!(g.ts.state_id("bot_56").is_none());
    }

    #[test]
    fn family_names() {
        for f in Family::ALL {
            assert_eq!(f.to_string().parse::<Family>().unwrap(), f);
        }
        assert!("T8".parse::<Family>().is_err());
    }
}
