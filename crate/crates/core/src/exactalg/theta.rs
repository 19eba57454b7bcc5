//! Univariate polynomials in the formal parameter θ with rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::scalar::{display_scalar, int, Scalar};

/// Element of ℚ[θ]; `coeffs[k]` multiplies θ^k, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ThetaPoly {
    coeffs: Vec<Scalar>,
}

pub type ThetaScalar = ThetaPoly;

impl ThetaPoly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        ThetaPoly { coeffs }
    }

    pub fn constant(c: Scalar) -> Self {
        Self::new(vec![c])
    }

    pub fn theta() -> Self {
        Self::new(vec![Scalar::zero(), Scalar::one()])
    }

    /// `a + bθ`
    pub fn linear(a: Scalar, b: Scalar) -> Self {
        Self::new(vec![a, b])
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Scalar {
        self.coeffs.last().cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn as_constant(&self) -> Option<Scalar> {
        match self.coeffs.len() {
            0 => Some(Scalar::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn eval(&self, t: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        ThetaPoly { coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.leading();
        self.scale(&(Scalar::one() / l))
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let mut r = self.coeffs.clone();
        let mut q = vec![Scalar::zero(); r.len().saturating_sub(dd)];
        let lead = d.leading();
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let c = r.last().unwrap() / &lead;
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[k + i] = &r[k + i] - &c * dc;
            }
            q[k] = c;
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        (Self::new(q), Self::new(r))
    }

    /// Exact quotient; `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s·self + t·other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = s0 - &q * &s1;
            let t2 = t0 - &q * &t1;
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = Scalar::one() / r0.leading();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * int(k as i64))
                .collect(),
        )
    }

    /// Integer polynomial with the same roots, primitive, positive leading coefficient.
    fn primitive_integer(&self) -> Vec<BigInt> {
        let mut l = BigInt::one();
        for c in &self.coeffs {
            l = l.lcm(c.denom());
        }
        let mut v: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Scalar::from_integer(l.clone())).to_integer())
            .collect();
        let mut g = BigInt::zero();
        for c in &v {
            g = g.gcd(c);
        }
        if !g.is_zero() {
            for c in v.iter_mut() {
                *c = &*c / &g;
            }
        }
        if v.last().is_some_and(|c| c.is_negative()) {
            for c in v.iter_mut() {
                *c = -&*c;
            }
        }
        v
    }

    /// Distinct rational roots in increasing order.
    pub fn rational_roots(&self) -> Vec<Scalar> {
        let mut roots = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return roots;
        }
        let mut p = self.clone();
        if p.coeffs[0].is_zero() {
            roots.push(Scalar::zero());
            while p.coeffs[0].is_zero() {
                p = ThetaPoly::new(p.coeffs[1..].to_vec());
            }
        }
        if p.degree().unwrap_or(0) > 0 {
            let ints = p.primitive_integer();
            let a0 = ints[0].abs();
            let an = ints.last().unwrap().abs();
            for num in divisors(&a0) {
                for den in divisors(&an) {
                    for sign in [1i64, -1] {
                        let cand = Scalar::new(&num * BigInt::from(sign), den.clone());
                        if p.eval(&cand).is_zero() && !roots.contains(&cand) {
                            roots.push(cand);
                        }
                    }
                }
            }
        }
        roots.sort();
        roots
    }

    /// Multiplicity of the root `t`.
    pub fn root_multiplicity(&self, t: &Scalar) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        let lin = ThetaPoly::linear(-t.clone(), Scalar::one());
        let mut p = self.clone();
        let mut m = 0;
        while let Some(q) = p.div_exact(&lin) {
            p = q;
            m += 1;
        }
        m
    }

    /// Removes every rational linear factor; the result is monic.
    pub fn strip_rational_roots(&self) -> Self {
        let mut p = self.clone();
        for t in self.rational_roots() {
            let lin = ThetaPoly::linear(-t.clone(), Scalar::one());
            while let Some(q) = p.div_exact(&lin) {
                p = q;
            }
        }
        p.monic()
    }

    /// Renders with the given name for θ, ascending powers, e.g. `2 - θ`.
    pub fn render(&self, var: &str, minus: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push_str(minus);
                }
            } else {
                out.push_str(if neg { minus } else { "+" });
            }
            let body = match k {
                0 => display_scalar(&mag),
                _ => {
                    let pw = if k == 1 { var.to_string() } else { format!("{var}^{k}") };
                    if mag.is_one() {
                        pw
                    } else {
                        format!("{}{}", display_scalar(&mag), pw)
                    }
                }
            };
            out.push_str(&body);
        }
        out
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    if let Some(m) = n.to_u64() {
        let mut d = 1u64;
        while d * d <= m {
            if m % d == 0 {
                out.push(BigInt::from(d));
                if d != m / d {
                    out.push(BigInt::from(m / d));
                }
            }
            d += 1;
        }
    } else {
        // large coefficients do not occur in this code base; fall back to trial division
        let mut d = BigInt::one();
        while &d * &d <= *n {
            if (n % &d).is_zero() {
                out.push(d.clone());
                out.push(n / &d);
            }
            d += 1;
        }
    }
    out.sort();
    out.dedup();
    out
}

impl fmt::Debug for ThetaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("θ", "-"))
    }
}

impl fmt::Display for ThetaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("θ", "-"))
    }
}

impl From<Scalar> for ThetaPoly {
    fn from(c: Scalar) -> Self {
        ThetaPoly::constant(c)
    }
}

impl Zero for ThetaPoly {
    fn zero() -> Self {
        ThetaPoly { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for ThetaPoly {
    fn one() -> Self {
        ThetaPoly { coeffs: vec![Scalar::one()] }
    }
}

impl<'a> Add<&'a ThetaPoly> for &'a ThetaPoly {
    type Output = ThetaPoly;
    fn add(self, o: &ThetaPoly) -> ThetaPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = Scalar::zero();
        ThetaPoly::new(
            (0..n)
                .map(|k| self.coeffs.get(k).unwrap_or(&z) + o.coeffs.get(k).unwrap_or(&z))
                .collect(),
        )
    }
}

impl<'a> Sub<&'a ThetaPoly> for &'a ThetaPoly {
    type Output = ThetaPoly;
    fn sub(self, o: &ThetaPoly) -> ThetaPoly {
        self + &(-o)
    }
}

impl<'a> Mul<&'a ThetaPoly> for &'a ThetaPoly {
    type Output = ThetaPoly;
    fn mul(self, o: &ThetaPoly) -> ThetaPoly {
        if self.is_zero() || o.is_zero() {
            return ThetaPoly::zero();
        }
        let mut c = vec![Scalar::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        ThetaPoly::new(c)
    }
}

impl Neg for &ThetaPoly {
    type Output = ThetaPoly;
    fn neg(self) -> ThetaPoly {
        ThetaPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<ThetaPoly> for ThetaPoly {
            type Output = ThetaPoly;
            fn $m(self, o: ThetaPoly) -> ThetaPoly {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a ThetaPoly> for ThetaPoly {
            type Output = ThetaPoly;
            fn $m(self, o: &ThetaPoly) -> ThetaPoly {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for ThetaPoly {
    type Output = ThetaPoly;
    fn neg(self) -> ThetaPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::scalar::frac;

    fn p(v: &[i64]) -> ThetaPoly {
        ThetaPoly::new(v.iter().map(|&c| int(c)).collect())
    }

    #[test]
    fn ring_ops() {
        let a = p(&[1, 1]);
        let b = p(&[-1, 1]);
        assert_eq!(&a * &b, p(&[-1, 0, 1]));
        assert!((&a - &a).is_zero());
        assert_eq!((&a * &b).eval(&int(3)), int(8));
    }

    #[test]
    fn division_and_gcd() {
        let f = p(&[-2, 1]) * p(&[3, 2]) * p(&[1, 0, 1]);
        let g = p(&[-2, 1]) * p(&[5, 1]);
        assert_eq!(f.gcd(&g), p(&[-2, 1]));
        let (q, r) = f.div_rem(&g);
        assert_eq!(&(&q * &g) + &r, f);
        let (d, s, t) = f.ext_gcd(&g);
        assert_eq!(&(&s * &f) + &(&t * &g), d);
    }

    #[test]
    fn rational_roots_found() {
        let f = p(&[-2, 1]) * p(&[3, 2]) * p(&[0, 1]) * p(&[1, 0, 1]);
        assert_eq!(f.rational_roots(), vec![frac(-3, 2), int(0), int(2)]);
        assert_eq!(f.strip_rational_roots(), p(&[1, 0, 1]));
        assert_eq!(p(&[4, -4, 1]).root_multiplicity(&int(2)), 2);
    }

    #[test]
    fn rendering() {
        assert_eq!(p(&[2, -1]).render("θ", "−"), "2−θ");
        assert_eq!(ThetaPoly::zero().render("θ", "-"), "0");
    }
}
