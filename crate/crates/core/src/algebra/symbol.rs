use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A polynomial variable.
///
/// Indices are stored 1-based, exactly as they appear in rendered names
/// (`x1`, `zeta12`, `Con[1,2,3,4]`). Constructors that take array positions
/// ([`Symbol::x`], [`Symbol::con`]) take 0-based indices.
///
/// The derived ordering is the canonical one used by every polynomial and by
/// the solver: geometric variables, then ζ, ξ, `CVol`, `Con` (lexicographic),
/// σ, c and finally π².
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    /// Coordinate function x^k, k in 1..=4.
    Geom(u8),
    /// ζ_ab, 1 <= a <= b <= 3.
    Zeta(u8, u8),
    /// ξ_ab, 1 <= a <= b <= 3.
    Xi(u8, u8),
    /// The renormalized-volume combination −𝒱/(2π²).
    CVol,
    /// Con[i,j,k,l], each index in 1..=4.
    Con(u8, u8, u8, u8),
    /// σ_n, n in 1..=4.
    Sigma(u8),
    /// c_n, n in 1..=2.
    CConst(u8),
    /// π².
    PiSq,
}

impl Symbol {
    /// Coordinate x^(k+1) for a 0-based axis `k`.
    pub fn x(k: usize) -> Self {
        assert!(k < 4, "axis out of range: {k}");
        Symbol::Geom(k as u8 + 1)
    }

    /// ζ with 1-based indices, symmetrised so that `a <= b`.
    pub fn zeta(a: u8, b: u8) -> Self {
        let (a, b) = sym_pair(a, b);
        Symbol::Zeta(a, b)
    }

    /// ξ with 1-based indices, symmetrised so that `a <= b`.
    pub fn xi(a: u8, b: u8) -> Self {
        let (a, b) = sym_pair(a, b);
        Symbol::Xi(a, b)
    }

    /// Con from 0-based indices.
    pub fn con(i: usize, j: usize, k: usize, l: usize) -> Self {
        assert!(i < 4 && j < 4 && k < 4 && l < 4);
        Symbol::Con(i as u8 + 1, j as u8 + 1, k as u8 + 1, l as u8 + 1)
    }

    pub fn sigma(n: u8) -> Self {
        assert!((1..=4).contains(&n));
        Symbol::Sigma(n)
    }

    pub fn c(n: u8) -> Self {
        assert!((1..=2).contains(&n));
        Symbol::CConst(n)
    }

    pub fn is_geom(&self) -> bool {
        matches!(self, Symbol::Geom(_))
    }

    pub fn is_con(&self) -> bool {
        matches!(self, Symbol::Con(..))
    }

    /// 0-based axis of a geometric variable.
    pub fn axis(&self) -> Option<usize> {
        match self {
            Symbol::Geom(k) => Some(*k as usize - 1),
            _ => None,
        }
    }

    /// 0-based indices of a `Con` symbol.
    pub fn con_indices(&self) -> Option<[usize; 4]> {
        match *self {
            Symbol::Con(i, j, k, l) => Some([i, j, k, l].map(|v| v as usize - 1)),
            _ => None,
        }
    }

    /// The six independent entries of ζ in row-major upper-triangular order.
    pub fn all_zeta() -> [Symbol; 6] {
        UPPER.map(|(a, b)| Symbol::Zeta(a, b))
    }

    pub fn all_xi() -> [Symbol; 6] {
        UPPER.map(|(a, b)| Symbol::Xi(a, b))
    }

    /// All 256 `Con` symbols in canonical (lexicographic) order.
    pub fn all_con() -> Vec<Symbol> {
        let mut out = Vec::with_capacity(256);
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    for l in 0..4 {
                        out.push(Symbol::con(i, j, k, l));
                    }
                }
            }
        }
        out
    }

    /// ζ, ξ and `CVol`: the free parameters of the constants table.
    pub fn parameters() -> Vec<Symbol> {
        let mut out: Vec<Symbol> = Symbol::all_zeta().into_iter().collect();
        out.extend(Symbol::all_xi());
        out.push(Symbol::CVol);
        out
    }
}

const UPPER: [(u8, u8); 6] = [(1, 1), (1, 2), (1, 3), (2, 2), (2, 3), (3, 3)];

fn sym_pair(a: u8, b: u8) -> (u8, u8) {
    assert!((1..=3).contains(&a) && (1..=3).contains(&b), "ζ/ξ index out of range");
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Geom(k) => write!(f, "x{k}"),
            Symbol::Zeta(a, b) => write!(f, "zeta{a}{b}"),
            Symbol::Xi(a, b) => write!(f, "xi{a}{b}"),
            Symbol::CVol => write!(f, "CVol"),
            Symbol::Con(i, j, k, l) => write!(f, "Con[{i},{j},{k},{l}]"),
            Symbol::Sigma(n) => write!(f, "sigma{n}"),
            Symbol::CConst(n) => write!(f, "c{n}"),
            Symbol::PiSq => write!(f, "PiSq"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown symbol `{0}`")]
pub struct UnknownSymbol(pub String);

impl FromStr for Symbol {
    type Err = UnknownSymbol;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || UnknownSymbol(s.to_string());
        let digits = |rest: &str, n: usize, lo: u8, hi: u8| -> Option<Vec<u8>> {
            if rest.len() != n {
                return None;
            }
            rest.bytes()
                .map(|b| b.checked_sub(b'0').filter(|d| (lo..=hi).contains(d)))
                .collect()
        };
        match s {
            "CVol" => return Ok(Symbol::CVol),
            "PiSq" => return Ok(Symbol::PiSq),
            _ => {}
        }
        if let Some(inner) = s.strip_prefix("Con[").and_then(|r| r.strip_suffix(']')) {
            let idx: Vec<u8> = inner
                .split(',')
                .map(|p| p.trim().parse::<u8>().ok().filter(|v| (1..=4).contains(v)))
                .collect::<Option<_>>()
                .ok_or_else(err)?;
            if idx.len() != 4 {
                return Err(err());
            }
            return Ok(Symbol::Con(idx[0], idx[1], idx[2], idx[3]));
        }
        let pair = |rest: &str| digits(rest, 2, 1, 3).filter(|d| d[0] <= d[1]);
        if let Some(rest) = s.strip_prefix("zeta") {
            return pair(rest).map(|d| Symbol::Zeta(d[0], d[1])).ok_or_else(err);
        }
        if let Some(rest) = s.strip_prefix("xi") {
            return pair(rest).map(|d| Symbol::Xi(d[0], d[1])).ok_or_else(err);
        }
        if let Some(rest) = s.strip_prefix("sigma") {
            return digits(rest, 1, 1, 4).map(|d| Symbol::Sigma(d[0])).ok_or_else(err);
        }
        if let Some(rest) = s.strip_prefix('x') {
            return digits(rest, 1, 1, 4).map(|d| Symbol::Geom(d[0])).ok_or_else(err);
        }
        if let Some(rest) = s.strip_prefix('c') {
            return digits(rest, 1, 1, 2).map(|d| Symbol::CConst(d[0])).ok_or_else(err);
        }
        Err(err())
    }
}

impl Serialize for Symbol {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Symbol {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_follows_documented_groups() {
        let ordered = [
            Symbol::Geom(1),
            Symbol::Geom(4),
            Symbol::Zeta(1, 1),
            Symbol::Zeta(3, 3),
            Symbol::Xi(1, 1),
            Symbol::CVol,
            Symbol::Con(1, 1, 1, 1),
            Symbol::Con(1, 1, 1, 2),
            Symbol::Con(4, 4, 4, 4),
            Symbol::Sigma(1),
            Symbol::Sigma(4),
            Symbol::CConst(1),
            Symbol::PiSq,
        ];
        for w in ordered.windows(2) {
            assert!(w[0] < w[1], "{} !< {}", w[0], w[1]);
        }
    }

    #[test]
    fn names_round_trip() {
        let mut all = Symbol::all_con();
        all.extend(Symbol::parameters());
        all.extend((1..=4).map(Symbol::Geom));
        all.extend((1..=4).map(Symbol::Sigma));
        all.extend([Symbol::c(1), Symbol::c(2), Symbol::PiSq]);
        for s in all {
            assert_eq!(s.to_string().parse::<Symbol>(), Ok(s));
        }
    }

    #[test]
    fn rejects_bad_names() {
        for bad in ["x5", "x", "zeta21", "zeta14", "Con[1,2,3]", "Con[0,1,1,1]", "sigma5", "c3", "foo"] {
            assert!(bad.parse::<Symbol>().is_err(), "{bad}");
        }
    }

    #[test]
    fn zeta_is_symmetric() {
        assert_eq!(Symbol::zeta(2, 1), Symbol::Zeta(1, 2));
        assert_eq!(Symbol::xi(3, 2), Symbol::Xi(2, 3));
    }
}
