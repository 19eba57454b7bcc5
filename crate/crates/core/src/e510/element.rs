//! Realized elements of E(5,10): polynomial vector fields plus closed 2-forms.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::exactalg::poly::{CommPoly, Exp, VarSet};
use crate::exactalg::scalar::{display_scalar, int, Scalar};

/// Grading weights of x₁ … x₅.
pub const WEIGHTS: [i64; 5] = [2, 2, 2, 1, 1];

/// Ordered index pairs (j,k), j<k, for the ten basic 2-forms dx_j∧dx_k (0-based).
pub const PAIRS: [(usize, usize); 10] =
    [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];

pub fn pair_index(j: usize, k: usize) -> usize {
    let (a, b) = if j < k { (j, k) } else { (k, j) };
    PAIRS.iter().position(|&p| p == (a, b)).expect("distinct indices")
}

/// Sum of an even part Σ a_i ∂_i and an odd part Σ b_jk dx_j∧dx_k.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element510 {
    pub field: [CommPoly; 5],
    pub form: [CommPoly; 10],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn sign_with(self, o: Parity) -> i64 {
        if self == Parity::Odd && o == Parity::Odd {
            -1
        } else {
            1
        }
    }
}

fn zp() -> CommPoly {
    CommPoly::zero(VarSet::X)
}

fn monomial(e: Exp, c: Scalar) -> CommPoly {
    CommPoly::monomial(VarSet::X, e, c)
}

fn x_exp(vars: &[usize]) -> Exp {
    let mut e = [0; 5];
    for &v in vars {
        e[v] += 1;
    }
    e
}

impl Element510 {
    pub fn zero() -> Self {
        Element510 { field: std::array::from_fn(|_| zp()), form: std::array::from_fn(|_| zp()) }
    }

    /// c · x^{vars} ∂_i (0-based indices).
    pub fn field_term(c: Scalar, vars: &[usize], i: usize) -> Self {
        let mut e = Self::zero();
        e.field[i] = monomial(x_exp(vars), c);
        e
    }

    /// c · x^{vars} dx_j∧dx_k (0-based indices, j ≠ k; orientation respected).
    pub fn form_term(c: Scalar, vars: &[usize], j: usize, k: usize) -> Self {
        let mut e = Self::zero();
        let c = if j < k { c } else { -c };
        e.form[pair_index(j, k)] = monomial(x_exp(vars), c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.field.iter().all(|p| p.is_zero()) && self.form.iter().all(|p| p.is_zero())
    }

    pub fn is_even(&self) -> bool {
        self.form.iter().all(|p| p.is_zero())
    }

    pub fn is_odd(&self) -> bool {
        self.field.iter().all(|p| p.is_zero())
    }

    /// Parity if homogeneous and nonzero.
    pub fn parity(&self) -> Option<Parity> {
        match (self.is_even(), self.is_odd()) {
            (true, false) => Some(Parity::Even),
            (false, true) => Some(Parity::Odd),
            _ => None,
        }
    }

    pub fn even_part(&self) -> Self {
        Element510 { field: self.field.clone(), form: std::array::from_fn(|_| zp()) }
    }

    pub fn odd_part(&self) -> Self {
        Element510 { field: std::array::from_fn(|_| zp()), form: self.form.clone() }
    }

    pub fn add(&self, o: &Self) -> Self {
        Element510 {
            field: std::array::from_fn(|i| self.field[i].add(&o.field[i])),
            form: std::array::from_fn(|i| self.form[i].add(&o.form[i])),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-Scalar::one()))
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Element510 {
            field: std::array::from_fn(|i| self.field[i].scale(s)),
            form: std::array::from_fn(|i| self.form[i].scale(s)),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Scalar::one())
    }

    pub fn combination(terms: &[(Scalar, &Element510)]) -> Self {
        terms.iter().fold(Self::zero(), |acc, (c, e)| acc.add(&e.scale(c)))
    }

    /// Divergence of the even part.
    pub fn divergence(&self) -> CommPoly {
        (0..5).fold(zp(), |acc, i| acc.add(&self.field[i].derivative(i)))
    }

    /// Exterior derivative of the odd part, as coefficients of dx_i∧dx_j∧dx_k (i<j<k).
    pub fn exterior_derivative(&self) -> BTreeMap<(usize, usize, usize), CommPoly> {
        let mut out: BTreeMap<(usize, usize, usize), CommPoly> = BTreeMap::new();
        for (p, &(j, k)) in PAIRS.iter().enumerate() {
            for l in 0..5 {
                if l == j || l == k {
                    continue;
                }
                let d = self.form[p].derivative(l);
                if d.is_zero() {
                    continue;
                }
                // dx_l ∧ dx_j ∧ dx_k sorted
                let mut idx = [l, j, k];
                let mut sign = 1i64;
                for a in 0..3 {
                    for b in 0..2 - a {
                        if idx[b] > idx[b + 1] {
                            idx.swap(b, b + 1);
                            sign = -sign;
                        }
                    }
                }
                let e = out.entry((idx[0], idx[1], idx[2])).or_insert_with(zp);
                *e = e.add(&d.scale(&int(sign)));
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    pub fn is_divergence_free(&self) -> bool {
        self.divergence().is_zero()
    }

    pub fn is_closed(&self) -> bool {
        self.exterior_derivative().is_empty()
    }

    /// Degrees (in the grading with deg x₁,₂,₃ = 2, deg x₄,₅ = 1) occurring in this element.
    pub fn degrees(&self) -> Vec<i64> {
        let mut out = Vec::new();
        for (i, p) in self.field.iter().enumerate() {
            out.extend(p.weighted_degrees(&WEIGHTS).into_iter().map(|d| d - WEIGHTS[i]));
        }
        for (p, &(j, k)) in PAIRS.iter().enumerate() {
            out.extend(
                self.form[p].weighted_degrees(&WEIGHTS).into_iter().map(|d| d + WEIGHTS[j] + WEIGHTS[k] - 4),
            );
        }
        out.sort();
        out.dedup();
        out
    }

    pub fn degree_part(&self, d: i64) -> Self {
        Element510 {
            field: std::array::from_fn(|i| self.field[i].weighted_part(&WEIGHTS, d + WEIGHTS[i])),
            form: std::array::from_fn(|p| {
                let (j, k) = PAIRS[p];
                self.form[p].weighted_part(&WEIGHTS, d + 4 - WEIGHTS[j] - WEIGHTS[k])
            }),
        }
    }

    /// Decomposition into homogeneous degree components.
    pub fn split_degrees(&self) -> Vec<(i64, Element510)> {
        self.degrees().into_iter().map(|d| (d, self.degree_part(d))).collect()
    }

    /// Homogeneous degree, if any.
    pub fn degree(&self) -> Option<i64> {
        match self.degrees().as_slice() {
            [d] => Some(*d),
            _ => None,
        }
    }

    /// Substitution x₄ ↔ x₅ (vector field components and form indices permuted accordingly).
    pub fn swap45(&self) -> Self {
        let mut out = Self::zero();
        for i in 0..5 {
            let ti = match i {
                3 => 4,
                4 => 3,
                _ => i,
            };
            out.field[ti] = self.field[i].swap_vars(3, 4);
        }
        for (p, &(j, k)) in PAIRS.iter().enumerate() {
            let m = |x: usize| match x {
                3 => 4,
                4 => 3,
                _ => x,
            };
            let (a, b) = (m(j), m(k));
            let c = self.form[p].swap_vars(3, 4);
            let tp = pair_index(a, b);
            out.form[tp] = if a < b { c } else { c.scale(&-Scalar::one()) };
        }
        out
    }

    /// Coordinates keyed by (slot, exponent); slots 0–4 are ∂_i, 5–14 are dx_j∧dx_k.
    pub fn coordinates(&self) -> BTreeMap<(usize, Exp), Scalar> {
        let mut out = BTreeMap::new();
        for (i, p) in self.field.iter().chain(self.form.iter()).enumerate() {
            for (e, c) in p.terms() {
                out.insert((i, *e), c.clone());
            }
        }
        out
    }
}

fn fmt_mono(e: &Exp) -> String {
    let mut s = Vec::new();
    for (i, &k) in e.iter().enumerate() {
        match k {
            0 => {}
            1 => s.push(format!("x{}", i + 1)),
            _ => s.push(format!("x{}^{}", i + 1, k)),
        }
    }
    s.join(" ")
}

impl fmt::Display for Element510 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<(bool, String)> = Vec::new();
        let mut push = |c: &Scalar, e: &Exp, tail: String| {
            let mono = fmt_mono(e);
            let mag = c.abs();
            let mut body = String::new();
            if !mag.is_one() {
                body.push_str(&display_scalar(&mag));
                body.push(' ');
            }
            if !mono.is_empty() {
                body.push_str(&mono);
                body.push(' ');
            }
            body.push_str(&tail);
            parts.push((c.is_negative(), body));
        };
        for (i, p) in self.field.iter().enumerate() {
            for (e, c) in p.terms() {
                push(c, e, format!("∂{}", i + 1));
            }
        }
        for (q, &(j, k)) in PAIRS.iter().enumerate() {
            for (e, c) in self.form[q].terms() {
                push(c, e, format!("d{}{}", j + 1, k + 1));
            }
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        for (n, (neg, body)) in parts.iter().enumerate() {
            match (n, neg) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Element510 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Default for Element510 {
    fn default() -> Self {
        Self::zero()
    }
}

impl Element510 {
    pub fn is_scalar_multiple_of(&self, o: &Self) -> Option<Scalar> {
        let a = self.coordinates();
        let b = o.coordinates();
        if a.len() != b.len() {
            return None;
        }
        if a.is_empty() {
            return Some(Scalar::zero());
        }
        let (k, v) = b.iter().next().unwrap();
        let r = a.get(k)? / v;
        (o.scale(&r) == *self).then_some(r)
    }
}

impl Zero for Element510 {
    fn zero() -> Self {
        Element510::zero()
    }
    fn is_zero(&self) -> bool {
        Element510::is_zero(self)
    }
}

impl std::ops::Add for Element510 {
    type Output = Element510;
    fn add(self, o: Element510) -> Element510 {
        Element510::add(&self, &o)
    }
}
