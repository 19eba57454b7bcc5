//! Sparse commutative polynomials in at most five variables.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::scalar::{display_scalar, int, Scalar};

pub const MAX_VARS: usize = 5;
pub type Exp = [u32; MAX_VARS];

/// Which variables a polynomial lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarSet {
    /// x₁ … x₅
    X,
    /// ∂₁ ∂₂ ∂₃
    Partial,
    /// ∂̂₁ ∂̂₂ ∂̂₃
    DHat,
}

impl VarSet {
    pub fn len(self) -> usize {
        match self {
            VarSet::X => 5,
            _ => 3,
        }
    }

    pub fn name(self, i: usize) -> String {
        match self {
            VarSet::X => format!("x{}", i + 1),
            VarSet::Partial => format!("∂{}", i + 1),
            VarSet::DHat => format!("∂̂{}", i + 1),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CommPoly {
    pub vars: VarSet,
    terms: BTreeMap<Exp, Scalar>,
}

impl CommPoly {
    pub fn zero(vars: VarSet) -> Self {
        CommPoly { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: VarSet, c: Scalar) -> Self {
        Self::monomial(vars, [0; MAX_VARS], c)
    }

    pub fn var(vars: VarSet, i: usize) -> Self {
        let mut e = [0; MAX_VARS];
        e[i] = 1;
        Self::monomial(vars, e, Scalar::one())
    }

    pub fn monomial(vars: VarSet, e: Exp, c: Scalar) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(e, c);
        p
    }

    pub fn add_term(&mut self, e: Exp, c: Scalar) {
        if c.is_zero() {
            return;
        }
        debug_assert!(e[self.vars.len()..].iter().all(|&k| k == 0));
        let entry = self.terms.entry(e).or_insert_with(Scalar::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: &Exp) -> Scalar {
        self.terms.get(e).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(*e, c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-Scalar::one()))
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let mut r = Self::zero(self.vars);
        if s.is_zero() {
            return r;
        }
        for (e, c) in &self.terms {
            r.terms.insert(*e, c * s);
        }
        r
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = Self::zero(self.vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let mut e = [0; MAX_VARS];
                for k in 0..MAX_VARS {
                    e[k] = e1[k] + e2[k];
                }
                r.add_term(e, c1 * c2);
            }
        }
        r
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut r = Self::constant(self.vars, Scalar::one());
        for _ in 0..n {
            r = r.mul(self);
        }
        r
    }

    /// ∂/∂(variable i)
    pub fn derivative(&self, i: usize) -> Self {
        let mut r = Self::zero(self.vars);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut e2 = *e;
                e2[i] -= 1;
                r.add_term(e2, c * int(e[i] as i64));
            }
        }
        r
    }

    /// Swaps two variables.
    pub fn swap_vars(&self, i: usize, j: usize) -> Self {
        let mut r = Self::zero(self.vars);
        for (e, c) in &self.terms {
            let mut e2 = *e;
            e2.swap(i, j);
            r.add_term(e2, c.clone());
        }
        r
    }

    /// Total degree under per-variable weights; `None` for zero.
    pub fn weighted_degrees(&self, w: &[i64]) -> Vec<i64> {
        let mut v: Vec<i64> = self
            .terms
            .keys()
            .map(|e| e.iter().zip(w).map(|(&k, &wi)| k as i64 * wi).sum())
            .collect();
        v.sort();
        v.dedup();
        v
    }

    /// Part of weighted degree `d`.
    pub fn weighted_part(&self, w: &[i64], d: i64) -> Self {
        let mut r = Self::zero(self.vars);
        for (e, c) in &self.terms {
            let deg: i64 = e.iter().zip(w).map(|(&k, &wi)| k as i64 * wi).sum();
            if deg == d {
                r.terms.insert(*e, c.clone());
            }
        }
        r
    }

    pub fn eval(&self, at: &[Scalar]) -> Scalar {
        let mut acc = Scalar::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (k, &p) in e.iter().enumerate().take(self.vars.len()) {
                for _ in 0..p {
                    t *= &at[k];
                }
            }
            acc += t;
        }
        acc
    }
}

impl fmt::Debug for CommPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CommPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let mag = c.abs();
            let mono: Vec<String> = (0..self.vars.len())
                .filter(|&k| e[k] > 0)
                .map(|k| {
                    if e[k] == 1 {
                        self.vars.name(k)
                    } else {
                        format!("{}^{}", self.vars.name(k), e[k])
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{}", display_scalar(&mag))?;
            } else if mag.is_one() {
                write!(f, "{}", mono.join(" "))?;
            } else {
                write!(f, "{} {}", display_scalar(&mag), mono.join(" "))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_derivative() {
        let x = CommPoly::var(VarSet::X, 0);
        let y = CommPoly::var(VarSet::X, 1);
        let p = x.add(&y).pow(3);
        assert_eq!(p.num_terms(), 4);
        let dp = p.derivative(0);
        assert_eq!(dp, x.add(&y).pow(2).scale(&int(3)));
        assert_eq!(p.eval(&[int(1), int(2), int(0), int(0), int(0)]), int(27));
        assert!(p.sub(&p).is_zero());
        assert_eq!(format!("{}", x.sub(&y)), "x1 - x2");
    }

    #[test]
    fn weighted_parts() {
        let w = [2, 2, 2, 1, 1];
        let p = CommPoly::var(VarSet::X, 0).add(&CommPoly::var(VarSet::X, 4));
        assert_eq!(p.weighted_degrees(&w), vec![1, 2]);
        assert_eq!(p.weighted_part(&w, 1), CommPoly::var(VarSet::X, 4));
    }
}
