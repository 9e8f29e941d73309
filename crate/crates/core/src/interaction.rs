//! The eight Boolean interactions, net types built from them, and
//! isomorphisms between types.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// A partial function on `{0, 1}` relating a place to a transition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Interaction {
    Nop,
    Inp,
    Out,
    Set,
    Res,
    Swap,
    Used,
    Free,
}

impl Interaction {
    /// All interactions in the canonical order, which is also the value
    /// order used when branching during region search.
    pub const ALL: [Interaction; 8] = [
        Interaction::Nop,
        Interaction::Inp,
        Interaction::Out,
        Interaction::Set,
        Interaction::Res,
        Interaction::Swap,
        Interaction::Used,
        Interaction::Free,
    ];

    /// Position in [`Interaction::ALL`].
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Interaction {
        Self::ALL[i]
    }

    /// Applies the interaction to a bit; `None` where the function is undefined.
    pub fn apply(self, x: bool) -> Option<bool> {
        match (self, x) {
            (Interaction::Nop, x) => Some(x),
            (Interaction::Inp, true) => Some(false),
            (Interaction::Inp, false) => None,
            (Interaction::Out, false) => Some(true),
            (Interaction::Out, true) => None,
            (Interaction::Set, _) => Some(true),
            (Interaction::Res, _) => Some(false),
            (Interaction::Swap, x) => Some(!x),
            (Interaction::Used, true) => Some(true),
            (Interaction::Used, false) => None,
            (Interaction::Free, false) => Some(false),
            (Interaction::Free, true) => None,
        }
    }

    pub fn is_total(self) -> bool {
        self.apply(false).is_some() && self.apply(true).is_some()
    }

    pub fn is_enter(self) -> bool {
        matches!(self, Interaction::Out | Interaction::Set | Interaction::Swap)
    }

    pub fn is_exit(self) -> bool {
        matches!(self, Interaction::Inp | Interaction::Res | Interaction::Swap)
    }

    pub fn is_keep_plus(self) -> bool {
        matches!(self, Interaction::Nop | Interaction::Set | Interaction::Used)
    }

    pub fn is_keep_minus(self) -> bool {
        matches!(self, Interaction::Nop | Interaction::Res | Interaction::Free)
    }

    pub fn name(self) -> &'static str {
        match self {
            Interaction::Nop => "nop",
            Interaction::Inp => "inp",
            Interaction::Out => "out",
            Interaction::Set => "set",
            Interaction::Res => "res",
            Interaction::Swap => "swap",
            Interaction::Used => "used",
            Interaction::Free => "free",
        }
    }
}

impl fmt::Display for Interaction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TypeError {
    #[error("unknown interaction `{0}`")]
    UnknownInteraction(String),
    #[error("a net type needs at least one interaction")]
    Empty,
    #[error("mapping is not structure preserving at interaction {0}")]
    NotStructurePreserving(Interaction),
}

impl FromStr for Interaction {
    type Err = TypeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Interaction::ALL
            .iter()
            .copied()
            .find(|i| i.name() == s)
            .ok_or_else(|| TypeError::UnknownInteraction(s.to_string()))
    }
}

/// A Boolean type of net: a set of interactions, stored as a bitmask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct NetType(u8);

impl NetType {
    pub const EMPTY: NetType = NetType(0);
    pub const FULL: NetType = NetType(0xff);

    pub fn from_bits(bits: u8) -> NetType {
        NetType(bits)
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn of(members: &[Interaction]) -> NetType {
        members.iter().fold(NetType::EMPTY, |t, &i| t.with(i))
    }

    pub fn with(self, i: Interaction) -> NetType {
        NetType(self.0 | 1 << i.index())
    }

    pub fn without(self, i: Interaction) -> NetType {
        NetType(self.0 & !(1 << i.index()))
    }

    pub fn union(self, other: NetType) -> NetType {
        NetType(self.0 | other.0)
    }

    pub fn intersection(self, other: NetType) -> NetType {
        NetType(self.0 & other.0)
    }

    pub fn contains(self, i: Interaction) -> bool {
        self.0 & (1 << i.index()) != 0
    }

    pub fn is_subset(self, other: NetType) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Members in canonical order.
    pub fn iter(self) -> impl Iterator<Item = Interaction> {
        Interaction::ALL.into_iter().filter(move |&i| self.contains(i))
    }

    /// `δ_τ(x, i)`: defined only for members of the type.
    pub fn step(self, x: bool, i: Interaction) -> Option<bool> {
        if self.contains(i) {
            i.apply(x)
        } else {
            None
        }
    }

    /// Parses a comma separated list such as `nop,inp,set`. Duplicates are
    /// dropped with a warning.
    pub fn parse_list(s: &str) -> Result<NetType, TypeError> {
        let mut t = NetType::EMPTY;
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let i: Interaction = part.parse()?;
            if t.contains(i) {
                log::warn!("interaction `{i}` listed twice; ignoring the duplicate");
            }
            t = t.with(i);
        }
        if t.is_empty() {
            return Err(TypeError::Empty);
        }
        Ok(t)
    }

    /// All subsets of the eight interactions that contain `nop`.
    pub fn all_with_nop() -> impl Iterator<Item = NetType> {
        (0u16..256)
            .map(|b| NetType(b as u8))
            .filter(|t| t.contains(Interaction::Nop))
    }
}

impl fmt::Display for NetType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.iter().map(Interaction::name).collect();
        write!(f, "{{{}}}", names.join(","))
    }
}

impl FromStr for NetType {
    type Err = TypeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        NetType::parse_list(s.trim().trim_start_matches('{').trim_end_matches('}'))
    }
}

/// A pair of bijections, one on bits and one on interactions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TypeIsomorphism {
    flip: bool,
    map: [Interaction; 8],
}

impl TypeIsomorphism {
    pub fn identity() -> TypeIsomorphism {
        TypeIsomorphism {
            flip: false,
            map: Interaction::ALL,
        }
    }

    /// The complement map `x ↦ 1 - x`, exchanging inp/out, set/res and used/free.
    pub fn complement() -> TypeIsomorphism {
        use Interaction::*;
        TypeIsomorphism {
            flip: true,
            map: [Nop, Out, Inp, Res, Set, Swap, Free, Used],
        }
    }

    /// Builds an isomorphism from explicit maps, checking that it preserves
    /// the step function of every interaction.
    pub fn new(flip: bool, map: [Interaction; 8]) -> Result<TypeIsomorphism, TypeError> {
        let iso = TypeIsomorphism { flip, map };
        for i in Interaction::ALL {
            for x in [false, true] {
                let lhs = i.apply(x).map(|y| iso.bit(y));
                let rhs = iso.interaction(i).apply(iso.bit(x));
                if lhs != rhs {
                    return Err(TypeError::NotStructurePreserving(i));
                }
            }
        }
        let mut seen = NetType::EMPTY;
        for i in map {
            seen = seen.with(i);
        }
        if seen != NetType::FULL {
            return Err(TypeError::NotStructurePreserving(Interaction::Nop));
        }
        Ok(iso)
    }

    pub fn bit(&self, x: bool) -> bool {
        x ^ self.flip
    }

    pub fn interaction(&self, i: Interaction) -> Interaction {
        self.map[i.index()]
    }

    pub fn transport(&self, t: NetType) -> NetType {
        t.iter().fold(NetType::EMPTY, |acc, i| acc.with(self.interaction(i)))
    }

    pub fn inverse(&self) -> TypeIsomorphism {
        let mut map = Interaction::ALL;
        for i in Interaction::ALL {
            map[self.interaction(i).index()] = i;
        }
        TypeIsomorphism {
            flip: self.flip,
            map,
        }
    }
}
