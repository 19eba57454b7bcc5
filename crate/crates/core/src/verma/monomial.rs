//! PBW normal form in U(L₋): ∂̂^a · d⁻_S · d⁺_T with S, T ascending.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::e510::{express, GeneratorId, E510};
use crate::exactalg::scalar::{int, Scalar};

/// A generator of L₋; indices are 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    Minus(u8),
    Plus(u8),
    DHat(u8),
}

impl Letter {
    pub fn all() -> [Letter; 9] {
        use Letter::*;
        [Minus(0), Minus(1), Minus(2), Plus(0), Plus(1), Plus(2), DHat(0), DHat(1), DHat(2)]
    }

    pub fn index(self) -> usize {
        match self {
            Letter::Minus(i) => i as usize,
            Letter::Plus(i) => 3 + i as usize,
            Letter::DHat(i) => 6 + i as usize,
        }
    }

    pub fn generator(self) -> GeneratorId {
        match self {
            Letter::Minus(i) => GeneratorId::DMinus(i + 1),
            Letter::Plus(i) => GeneratorId::DPlus(i + 1),
            Letter::DHat(i) => GeneratorId::DHat(i + 1),
        }
    }

    pub fn from_generator(g: GeneratorId) -> Option<Letter> {
        match g.canonical() {
            GeneratorId::DMinus(i) => Some(Letter::Minus(i - 1)),
            GeneratorId::DPlus(i) => Some(Letter::Plus(i - 1)),
            GeneratorId::DHat(i) => Some(Letter::DHat(i - 1)),
            _ => None,
        }
    }

    pub fn is_odd(self) -> bool {
        !matches!(self, Letter::DHat(_))
    }
}

/// Normal-ordered monomial ∂̂₁^a₁∂̂₂^a₂∂̂₃^a₃ · d⁻_S · d⁺_T (S, T as bit masks, bit i for index i+1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SuperMonomial {
    pub dhat: [u16; 3],
    pub minus: u8,
    pub plus: u8,
}

impl SuperMonomial {
    pub const ONE: SuperMonomial = SuperMonomial { dhat: [0; 3], minus: 0, plus: 0 };

    pub fn new(dhat: [u16; 3], minus: &[u8], plus: &[u8]) -> Self {
        let mask = |v: &[u8]| v.iter().fold(0u8, |m, &i| m | (1 << (i - 1)));
        SuperMonomial { dhat, minus: mask(minus), plus: mask(plus) }
    }

    pub fn sdeg(&self) -> u32 {
        self.dhat.iter().map(|&a| a as u32).sum()
    }

    pub fn ldeg(&self) -> u32 {
        self.minus.count_ones() + self.plus.count_ones()
    }

    pub fn udeg(&self) -> u32 {
        2 * self.sdeg() + self.ldeg()
    }

    pub fn is_one(&self) -> bool {
        *self == Self::ONE
    }

    /// Indices (1-based) in the d⁻ block.
    pub fn minus_indices(&self) -> Vec<u8> {
        (0..3).filter(|i| self.minus & (1 << i) != 0).map(|i| i + 1).collect()
    }

    pub fn plus_indices(&self) -> Vec<u8> {
        (0..3).filter(|i| self.plus & (1 << i) != 0).map(|i| i + 1).collect()
    }

    /// The leftmost letter and the remaining monomial (so that self = letter · rest).
    pub fn split_first(&self) -> Option<(Letter, SuperMonomial)> {
        let mut rest = *self;
        for i in 0..3 {
            if self.dhat[i] > 0 {
                rest.dhat[i] -= 1;
                return Some((Letter::DHat(i as u8), rest));
            }
        }
        if self.minus != 0 {
            let i = self.minus.trailing_zeros() as u8;
            rest.minus &= !(1 << i);
            return Some((Letter::Minus(i), rest));
        }
        if self.plus != 0 {
            let i = self.plus.trailing_zeros() as u8;
            rest.plus &= !(1 << i);
            return Some((Letter::Plus(i), rest));
        }
        None
    }

    /// Letters from left to right.
    pub fn letters(&self) -> Vec<Letter> {
        let mut out = Vec::new();
        let mut m = *self;
        while let Some((l, r)) = m.split_first() {
            out.push(l);
            m = r;
        }
        out
    }

    /// All monomials with sdeg ≤ `max_sdeg`.
    pub fn enumerate(max_sdeg: u32) -> Vec<SuperMonomial> {
        let mut out = Vec::new();
        for s in 0..=max_sdeg {
            for a1 in 0..=s {
                for a2 in 0..=s - a1 {
                    let a3 = s - a1 - a2;
                    for minus in 0..8u8 {
                        for plus in 0..8u8 {
                            out.push(SuperMonomial { dhat: [a1 as u16, a2 as u16, a3 as u16], minus, plus });
                        }
                    }
                }
            }
        }
        out
    }
}

/// Element of U(L₋).
pub type UElem = BTreeMap<SuperMonomial, Scalar>;

pub fn uelem_add_term(u: &mut UElem, m: SuperMonomial, c: Scalar) {
    if c.is_zero() {
        return;
    }
    let e = u.entry(m).or_insert_with(Scalar::zero);
    *e += c;
    if e.is_zero() {
        u.remove(&m);
    }
}

fn sign_below(mask: u8, i: u8) -> i64 {
    if (mask & ((1u8 << i) - 1)).count_ones() % 2 == 0 {
        1
    } else {
        -1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum UError {
    #[error("L- relation [{0}, {1}] is not a combination of ∂̂")]
    BadRelation(String, String),
}

/// Multiplication in U(L₋), with the anticommutators [d⁺_i, d⁻_j] read off the algebra.
#[derive(Debug, Clone)]
pub struct ULminus {
    /// anti[i][j] = [d⁺_i, d⁻_j] as (∂̂ index, coefficient) pairs
    anti: [[Vec<(u8, Scalar)>; 3]; 3],
}

impl ULminus {
    pub fn from_algebra(alg: &E510) -> Result<Self, UError> {
        let mut anti: [[Vec<(u8, Scalar)>; 3]; 3] = Default::default();
        for a in Letter::all() {
            for b in Letter::all() {
                let br = alg.bracket(&a.generator().realize(), &b.generator().realize());
                let bad = || UError::BadRelation(a.generator().name(), b.generator().name());
                let comb = express(&br).map_err(|_| bad())?;
                let mut dh = Vec::new();
                for (g, c) in comb {
                    match Letter::from_generator(g) {
                        Some(Letter::DHat(k)) => dh.push((k, c)),
                        _ => return Err(bad()),
                    }
                }
                match (a, b) {
                    (Letter::Plus(i), Letter::Minus(j)) => anti[i as usize][j as usize] = dh,
                    _ if dh.is_empty() => {}
                    (Letter::Minus(_), Letter::Plus(_)) => {}
                    _ => return Err(bad()),
                }
            }
        }
        Ok(ULminus { anti })
    }

    /// [d⁺_i, d⁻_j] (0-based) as ∂̂ combination.
    pub fn anticommutator(&self, i: u8, j: u8) -> &[(u8, Scalar)] {
        &self.anti[i as usize][j as usize]
    }

    fn plus_into(&self, i: u8, dhat: [u16; 3], minus: u8, plus: u8, out: &mut Vec<(SuperMonomial, Scalar)>, coef: Scalar) {
        if minus == 0 {
            if plus & (1 << i) != 0 {
                return;
            }
            let s = sign_below(plus, i);
            out.push((SuperMonomial { dhat, minus: 0, plus: plus | (1 << i) }, coef * int(s)));
            return;
        }
        let s1 = minus.trailing_zeros() as u8;
        let rest = minus & !(1 << s1);
        // d⁺_i d⁻_s X = −d⁻_s (d⁺_i X) + [d⁺_i, d⁻_s] X
        let mut inner = Vec::new();
        self.plus_into(i, dhat, rest, plus, &mut inner, Scalar::one());
        for (m, c) in inner {
            out.push((SuperMonomial { dhat: m.dhat, minus: m.minus | (1 << s1), plus: m.plus }, -c * &coef));
        }
        for (k, c) in self.anticommutator(i, s1) {
            let mut dh = dhat;
            dh[*k as usize] += 1;
            out.push((SuperMonomial { dhat: dh, minus: rest, plus }, c * &coef));
        }
    }

    /// letter · m in normal form.
    pub fn left_mul(&self, l: Letter, m: &SuperMonomial) -> Vec<(SuperMonomial, Scalar)> {
        match l {
            Letter::DHat(i) => {
                let mut r = *m;
                r.dhat[i as usize] += 1;
                vec![(r, Scalar::one())]
            }
            Letter::Minus(i) => {
                if m.minus & (1 << i) != 0 {
                    return Vec::new();
                }
                let s = sign_below(m.minus, i);
                vec![(SuperMonomial { dhat: m.dhat, minus: m.minus | (1 << i), plus: m.plus }, int(s))]
            }
            Letter::Plus(i) => {
                let mut out = Vec::new();
                self.plus_into(i, m.dhat, m.minus, m.plus, &mut out, Scalar::one());
                out
            }
        }
    }

    pub fn left_mul_elem(&self, l: Letter, u: &UElem) -> UElem {
        let mut out = UElem::new();
        for (m, c) in u {
            for (m2, c2) in self.left_mul(l, m) {
                uelem_add_term(&mut out, m2, c2 * c);
            }
        }
        out
    }

    pub fn mul_mono(&self, a: &SuperMonomial, b: &SuperMonomial) -> UElem {
        let mut acc = UElem::new();
        acc.insert(*b, Scalar::one());
        for l in a.letters().into_iter().rev() {
            acc = self.left_mul_elem(l, &acc);
        }
        acc
    }

    pub fn mul(&self, a: &UElem, b: &UElem) -> UElem {
        let mut out = UElem::new();
        for (ma, ca) in a {
            for (mb, cb) in b {
                for (m, c) in self.mul_mono(ma, mb) {
                    uelem_add_term(&mut out, m, c * ca * cb);
                }
            }
        }
        out
    }

    pub fn letter(l: Letter) -> UElem {
        let mut m = SuperMonomial::ONE;
        match l {
            Letter::DHat(i) => m.dhat[i as usize] = 1,
            Letter::Minus(i) => m.minus = 1 << i,
            Letter::Plus(i) => m.plus = 1 << i,
        }
        [(m, Scalar::one())].into()
    }

    /// Product of letters, left to right.
    pub fn word(&self, ls: &[Letter]) -> UElem {
        let mut acc = UElem::new();
        acc.insert(SuperMonomial::ONE, Scalar::one());
        for &l in ls.iter().rev() {
            acc = self.left_mul_elem(l, &acc);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ulm() -> ULminus {
        ULminus::from_algebra(&E510::standard()).unwrap()
    }

    #[test]
    fn anticommutators_match_odd_bracket() {
        let u = ulm();
        // [d1+, d2-] = -∂̂3, [d1+, d3-] = ∂̂2, [d2+, d3-] = -∂̂1
        assert_eq!(u.anticommutator(0, 1), &[(2, int(-1))]);
        assert_eq!(u.anticommutator(0, 2), &[(1, int(1))]);
        assert_eq!(u.anticommutator(1, 2), &[(0, int(-1))]);
        assert!(u.anticommutator(0, 0).is_empty());
    }

    #[test]
    fn normal_ordering() {
        let u = ulm();
        use Letter::*;
        // d1+ d2- = -d2- d1+ - ∂̂3
        let w = u.word(&[Plus(0), Minus(1)]);
        let mut want = UElem::new();
        want.insert(SuperMonomial::new([0, 0, 0], &[2], &[1]), int(-1));
        want.insert(SuperMonomial::new([0, 0, 1], &[], &[]), int(-1));
        assert_eq!(w, want);
        assert!(u.word(&[Plus(1), Plus(1)]).is_empty());
        assert!(u.word(&[Minus(0), Minus(0)]).is_empty());
        let a = u.word(&[Plus(1), Plus(0)]);
        assert_eq!(a.get(&SuperMonomial::new([0; 3], &[], &[1, 2])), Some(&int(-1)));
    }

    #[test]
    fn associativity_on_samples() {
        let u = ulm();
        let ms = SuperMonomial::enumerate(1);
        for a in ms.iter().step_by(37) {
            for b in ms.iter().step_by(41) {
                for c in ms.iter().step_by(43) {
                    let ua: UElem = [(*a, int(1))].into();
                    let ub: UElem = [(*b, int(1))].into();
                    let uc: UElem = [(*c, int(1))].into();
                    assert_eq!(u.mul(&u.mul(&ua, &ub), &uc), u.mul(&ua, &u.mul(&ub, &uc)));
                }
            }
        }
    }

    #[test]
    fn split_first_reassembles() {
        let u = ulm();
        for m in SuperMonomial::enumerate(2) {
            if let Some((l, r)) = m.split_first() {
                assert_eq!(u.left_mul(l, &r), vec![(m, int(1))]);
            }
        }
    }
}
