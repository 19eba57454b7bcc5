//! Named generators of E(3,6) inside E(5,10).

use std::fmt;
use std::str::FromStr;

use num_traits::One;

use crate::exactalg::scalar::{frac, int, Scalar};

use super::element::Element510;

/// Named elements. `E3Sl3` is the alternative name of `E12` (= x₁∂₃), `F0` the
/// alternative name of `DPlus(1)`, and `H0` the combination ⅔h₁+⅓h₂−h₃−Y.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GeneratorId {
    H1,
    H2,
    H3,
    Y,
    E1,
    E2,
    E12,
    E3Sl3,
    F1,
    F2,
    F12,
    E3Sl2,
    F3,
    E0,
    F0,
    E0Plus,
    E0Minus,
    DMinus(u8),
    DPlus(u8),
    DHat(u8),
    H0,
}

use GeneratorId::*;

impl GeneratorId {
    /// Every named element, in canonical order.
    pub fn all() -> Vec<GeneratorId> {
        let mut v = vec![H1, H2, H3, Y, E1, E2, E12, E3Sl3, F1, F2, F12, E3Sl2, F3, E0, F0, E0Plus, E0Minus];
        v.extend((1..=3).map(DMinus));
        v.extend((1..=3).map(DPlus));
        v.extend((1..=3).map(DHat));
        v.push(H0);
        v
    }

    /// Basis of g₀ (sl₃ ⊕ sl₂ ⊕ gl₁).
    pub fn g0_basis() -> Vec<GeneratorId> {
        vec![H1, H2, H3, Y, E1, E2, E12, F1, F2, F12, E3Sl2, F3]
    }

    /// Basis of g₋₁ ⊕ g₋₂ in the order d⁻, d⁺, ∂̂.
    pub fn lminus_basis() -> Vec<GeneratorId> {
        let mut v: Vec<GeneratorId> = (1..=3).map(DMinus).collect();
        v.extend((1..=3).map(DPlus));
        v.extend((1..=3).map(DHat));
        v
    }

    /// Basis of L₋ ⊕ g₀ used for structure constants.
    pub fn basis() -> Vec<GeneratorId> {
        let mut v = Self::g0_basis();
        v.extend(Self::lminus_basis());
        v
    }

    /// Replaces alternative names by the basis name they stand for.
    pub fn canonical(self) -> GeneratorId {
        match self {
            E3Sl3 => E12,
            F0 => DPlus(1),
            g => g,
        }
    }

    pub fn name(self) -> String {
        match self {
            H1 => "h1".into(),
            H2 => "h2".into(),
            H3 => "h3".into(),
            Y => "Y".into(),
            E1 => "e1".into(),
            E2 => "e2".into(),
            E12 => "e12".into(),
            E3Sl3 => "e3_sl3".into(),
            F1 => "f1".into(),
            F2 => "f2".into(),
            F12 => "f12".into(),
            E3Sl2 => "e3_sl2".into(),
            F3 => "f3".into(),
            E0 => "e0".into(),
            F0 => "f0".into(),
            E0Plus => "e0plus".into(),
            E0Minus => "e0minus".into(),
            DMinus(i) => format!("dminus{i}"),
            DPlus(i) => format!("dplus{i}"),
            DHat(i) => format!("dhat{i}"),
            H0 => "h0".into(),
        }
    }

    /// Typeset name, e.g. `d⁻₁`, `∂̂₂`, `e₀⁺`.
    pub fn pretty(self) -> String {
        let sub = |i: u8| ['₀', '₁', '₂', '₃'][i as usize];
        match self {
            H1 => "h₁".into(),
            H2 => "h₂".into(),
            H3 => "h₃".into(),
            Y => "Y".into(),
            E1 => "e₁".into(),
            E2 => "e₂".into(),
            E12 | E3Sl3 => "e₁₂".into(),
            F1 => "f₁".into(),
            F2 => "f₂".into(),
            F12 => "f₁₂".into(),
            E3Sl2 => "e₃".into(),
            F3 => "f₃".into(),
            E0 => "e₀".into(),
            F0 => "f₀".into(),
            E0Plus => "e₀⁺".into(),
            E0Minus => "e₀⁻".into(),
            DMinus(i) => format!("d⁻{}", sub(i)),
            DPlus(i) => format!("d⁺{}", sub(i)),
            DHat(i) => format!("∂̂{}", sub(i)),
            H0 => "h₀".into(),
        }
    }

    /// Degree in the grading of E(3,6).
    pub fn degree(self) -> i64 {
        match self {
            DHat(_) => -2,
            DMinus(_) | DPlus(_) | F0 => -1,
            E0 | E0Plus | E0Minus => 1,
            _ => 0,
        }
    }

    pub fn is_odd(self) -> bool {
        matches!(self, DMinus(_) | DPlus(_) | F0 | E0 | E0Plus | E0Minus)
    }

    /// Realization as a vector field or 2-form (indices of x are 0-based internally).
    pub fn realize(self) -> Element510 {
        let one = Scalar::one;
        let f = |vars: &[usize], i: usize| Element510::field_term(one(), vars, i);
        let w = |vars: &[usize], j: usize, k: usize| Element510::form_term(one(), vars, j, k);
        match self {
            H1 => f(&[0], 0).sub(&f(&[1], 1)),
            H2 => f(&[1], 1).sub(&f(&[2], 2)),
            H3 => f(&[3], 3).sub(&f(&[4], 4)),
            Y => f(&[0], 0)
                .add(&f(&[1], 1))
                .add(&f(&[2], 2))
                .scale(&frac(2, 3))
                .sub(&f(&[3], 3))
                .sub(&f(&[4], 4)),
            E1 => f(&[0], 1),
            E2 => f(&[1], 2),
            E12 | E3Sl3 => f(&[0], 2),
            F1 => f(&[1], 0),
            F2 => f(&[2], 1),
            F12 => f(&[2], 0),
            E3Sl2 => f(&[3], 4),
            F3 => f(&[4], 3),
            E0 => w(&[2], 1, 4).sub(&w(&[1], 2, 4)).add(&w(&[4], 1, 2).scale(&int(2))),
            F0 => w(&[], 0, 3),
            E0Plus => w(&[2], 2, 3),
            E0Minus => w(&[2], 2, 4),
            DMinus(i) => w(&[], i as usize - 1, 4),
            DPlus(i) => w(&[], i as usize - 1, 3),
            DHat(i) => f(&[], i as usize - 1),
            H0 => H1
                .realize()
                .scale(&frac(2, 3))
                .add(&H2.realize().scale(&frac(1, 3)))
                .sub(&H3.realize())
                .sub(&Y.realize()),
        }
    }
}

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown generator `{0}`")]
pub struct UnknownGenerator(pub String);

impl FromStr for GeneratorId {
    type Err = UnknownGenerator;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let lower = t.to_ascii_lowercase();
        let idx = |prefixes: &[&str]| -> Option<u8> {
            for p in prefixes {
                if let Some(rest) = lower.strip_prefix(p) {
                    if let Ok(i) = rest.parse::<u8>() {
                        if (1..=3).contains(&i) {
                            return Some(i);
                        }
                    }
                }
            }
            None
        };
        if let Some(i) = idx(&["dminus", "dm", "d-"]) {
            return Ok(DMinus(i));
        }
        if let Some(i) = idx(&["dplus", "dp", "d+"]) {
            return Ok(DPlus(i));
        }
        if let Some(i) = idx(&["dhat", "dh"]) {
            return Ok(DHat(i));
        }
        if let Some(rest) = lower.strip_prefix('d') {
            if let Some(i) = rest.strip_suffix("minus").and_then(|x| x.parse::<u8>().ok()) {
                if (1..=3).contains(&i) {
                    return Ok(DMinus(i));
                }
            }
            if let Some(i) = rest.strip_suffix("plus").and_then(|x| x.parse::<u8>().ok()) {
                if (1..=3).contains(&i) {
                    return Ok(DPlus(i));
                }
            }
        }
        Ok(match t {
            "Y" | "y" => Y,
            _ => match lower.as_str() {
                "h1" => H1,
                "h2" => H2,
                "h3" => H3,
                "e1" => E1,
                "e2" => E2,
                "e12" => E12,
                "e3_sl3" => E3Sl3,
                "f1" => F1,
                "f2" => F2,
                "f12" => F12,
                "e3" | "e3_sl2" => E3Sl2,
                "f3" => F3,
                "e0" => E0,
                "f0" => F0,
                "e0plus" | "e0+" => E0Plus,
                "e0minus" | "e0-" => E0Minus,
                "h0" => H0,
                _ => return Err(UnknownGenerator(s.to_string())),
            },
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for g in GeneratorId::all() {
            assert_eq!(g.name().parse::<GeneratorId>().unwrap(), g);
        }
        assert_eq!("e3".parse::<GeneratorId>().unwrap(), E3Sl2);
        assert_eq!("d2minus".parse::<GeneratorId>().unwrap(), DMinus(2));
        assert!("e7".parse::<GeneratorId>().is_err());
    }

    #[test]
    fn realizations_are_homogeneous_and_admissible() {
        for g in GeneratorId::all() {
            let r = g.realize();
            assert_eq!(r.degree(), Some(g.degree()), "{g}");
            assert!(r.is_divergence_free(), "{g}");
            assert!(r.is_closed(), "{g}");
            assert_eq!(r.parity().map(|p| p == super::super::element::Parity::Odd), Some(g.is_odd()));
        }
    }

    #[test]
    fn h0_explicit() {
        let f = |c: i64, v: usize| Element510::field_term(int(c), &[v], v);
        let expect = f(-1, 1).add(&f(-1, 2)).add(&f(2, 4));
        assert_eq!(H0.realize(), expect);
    }
}
