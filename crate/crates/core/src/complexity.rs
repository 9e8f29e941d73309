//! Complexity classification of synthesis for nop-containing Boolean types
//! at a fixed bound `g`.

use std::fmt;

use crate::interaction::{Interaction, Interaction::*, NetType};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Complexity {
    NpComplete,
    Polynomial,
    OutOfTable,
}

impl fmt::Display for Complexity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Complexity::NpComplete => "NP-complete",
            Complexity::Polynomial => "polynomial",
            Complexity::OutOfTable => "out-of-table",
        })
    }
}

/// Bound parameter: a fixed `g` or no bound at all.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    Fixed(usize),
    Unbounded,
}

impl Bound {
    fn at_least(self, g: usize) -> bool {
        match self {
            Bound::Fixed(b) => b >= g,
            Bound::Unbounded => true,
        }
    }
}

impl From<usize> for Bound {
    fn from(g: usize) -> Bound {
        Bound::Fixed(g)
    }
}

/// One row group of the table: its member types and the smallest bound
/// from which synthesis is NP-complete (`None` when always polynomial).
#[derive(Debug, Clone)]
pub struct Row {
    pub group: u8,
    pub members: Vec<NetType>,
    pub hard_from: Option<usize>,
}

fn t(members: &[Interaction]) -> NetType {
    NetType::of(members)
}

/// `base ∪ ω` for every `ω ⊆ pool`.
fn with_subsets(base: NetType, pool: &[Interaction]) -> Vec<NetType> {
    (0..1u32 << pool.len())
        .map(|mask| {
            pool.iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .fold(base, |acc, (_, &x)| acc.with(x))
        })
        .collect()
}

fn with_nonempty_subsets(base: NetType, pool: &[Interaction]) -> Vec<NetType> {
    with_subsets(base, pool).into_iter().filter(|&x| x != base).collect()
}

fn dedup(mut v: Vec<NetType>) -> Vec<NetType> {
    v.sort();
    v.dedup();
    v
}

/// The eleven row groups with all ω-parameters expanded.
pub fn table() -> Vec<Row> {
    let uf = [Used, Free];
    let mut rows = Vec::new();
    rows.push(Row {
        group: 1,
        members: vec![
            t(&[Nop, Inp, Free]),
            t(&[Nop, Inp, Used, Free]),
            t(&[Nop, Out, Used]),
            t(&[Nop, Out, Used, Free]),
        ],
        hard_from: Some(2),
    });
    rows.push(Row {
        group: 2,
        members: with_nonempty_subsets(t(&[Nop, Set, Res]), &uf),
        hard_from: Some(3),
    });
    let mut g3 = vec![
        t(&[Nop, Inp, Set]),
        t(&[Nop, Inp, Set, Used]),
        t(&[Nop, Out, Res]),
        t(&[Nop, Out, Res, Free]),
    ];
    g3.extend(with_subsets(t(&[Nop, Inp, Res, Set]), &[Out, Used, Free]));
    g3.extend(with_subsets(t(&[Nop, Out, Res, Set]), &[Inp, Used, Free]));
    rows.push(Row {
        group: 3,
        members: dedup(g3),
        hard_from: Some(2),
    });
    let mut g4 = with_subsets(t(&[Nop, Inp, Out, Set]), &uf);
    g4.extend(with_subsets(t(&[Nop, Inp, Out, Res]), &uf));
    rows.push(Row {
        group: 4,
        members: dedup(g4),
        hard_from: Some(1),
    });
    rows.push(Row {
        group: 5,
        members: vec![
            t(&[Nop, Inp, Set, Free]),
            t(&[Nop, Inp, Set, Used, Free]),
            t(&[Nop, Out, Res, Used]),
            t(&[Nop, Out, Res, Used, Free]),
        ],
        hard_from: Some(1),
    });
    let mut g6 = with_subsets(t(&[Nop, Inp, Res, Swap]), &uf);
    g6.extend(with_subsets(t(&[Nop, Out, Set, Swap]), &uf));
    rows.push(Row {
        group: 6,
        members: dedup(g6),
        hard_from: Some(1),
    });
    let mut g7 = with_subsets(t(&[Nop, Inp, Set, Swap]), &[Out, Res, Used, Free]);
    g7.extend(with_subsets(t(&[Nop, Out, Res, Swap]), &[Inp, Set, Used, Free]));
    rows.push(Row {
        group: 7,
        members: dedup(g7),
        hard_from: Some(1),
    });
    rows.push(Row {
        group: 8,
        members: with_subsets(t(&[Nop, Inp, Out]), &uf),
        hard_from: Some(1),
    });
    let mut g9 = with_nonempty_subsets(t(&[Nop, Set, Swap]), &uf);
    g9.extend(with_nonempty_subsets(t(&[Nop, Res, Swap]), &uf));
    g9.extend(with_nonempty_subsets(t(&[Nop, Res, Set, Swap]), &uf));
    rows.push(Row {
        group: 9,
        members: dedup(g9),
        hard_from: Some(2),
    });
    rows.push(Row {
        group: 10,
        members: vec![
            t(&[Nop, Inp]),
            t(&[Nop, Inp, Used]),
            t(&[Nop, Out]),
            t(&[Nop, Out, Free]),
            t(&[Nop, Set, Swap]),
            t(&[Nop, Res, Swap]),
            t(&[Nop, Set, Res]),
            t(&[Nop, Set, Res, Swap]),
        ],
        hard_from: None,
    });
    let mut g11 = with_subsets(t(&[Nop, Res]), &[Inp, Used, Free]);
    g11.extend(with_subsets(t(&[Nop, Set]), &[Out, Used, Free]));
    g11.extend(with_subsets(t(&[Nop, Swap]), &[Inp, Out, Used, Free]));
    g11.extend(with_subsets(t(&[Nop]), &uf));
    rows.push(Row {
        group: 11,
        members: dedup(g11),
        hard_from: None,
    });
    rows
}

/// The row group containing `ty`, if any.
pub fn row_of(ty: NetType) -> Option<Row> {
    table().into_iter().find(|r| r.members.contains(&ty))
}

/// Classifies synthesis for `ty` at bound `g`. Types without `nop` are
/// outside the table. At `g = 0` every input is a single state, so rows
/// that are hard only from `g ≥ 1` still report polynomial there.
pub fn classify_complexity(ty: NetType, g: impl Into<Bound>) -> Complexity {
    let g = g.into();
    if !ty.contains(Nop) {
        return Complexity::OutOfTable;
    }
    match row_of(ty) {
        Some(Row {
            hard_from: Some(h), ..
        }) if g.at_least(h) => Complexity::NpComplete,
        Some(_) => Complexity::Polynomial,
        None => Complexity::OutOfTable,
    }
}
