//! Elements of U(L₋) ⊗ ℂ[v₁,v₂,v₃] written in the Δ / ⟨·,·,·⟩ notation.
//!
//! `v` stands for x or ∂ depending on the module the result is converted into.
//! Products multiply the U(L₋) parts in normal order and the v parts commutatively.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::dops::DOp;
use crate::e510::GeneratorId;
use crate::exactalg::scalar::{int, Scalar};
use crate::verma::{Context, Element, Engine, Key, MElement, SuperMonomial, VModule};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NotationError {
    #[error("expression has v-degree {found:?}, module needs {expected}")]
    Degree { expected: u32, found: Vec<u32> },
    #[error("element carries a T factor")]
    HasT,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<(SuperMonomial, [u16; 3]), Scalar>,
}

pub type Fam = [Poly; 3];

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        let mut p = Poly::zero();
        p.add_term(SuperMonomial::ONE, [0; 3], c);
        p
    }

    fn mono(m: SuperMonomial, v: [u16; 3]) -> Self {
        let mut p = Poly::zero();
        p.add_term(m, v, Scalar::one());
        p
    }

    pub fn add_term(&mut self, m: SuperMonomial, v: [u16; 3], c: Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((m, v)).or_insert_with(Scalar::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(m, v));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(SuperMonomial, [u16; 3]), &Scalar)> {
        self.terms.iter()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut r = Poly::zero();
        for ((m, v), x) in &self.terms {
            r.add_term(*m, *v, x * c);
        }
        r
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Poly::one(), |acc, _| &acc * self)
    }

    /// Distinct total v-degrees occurring.
    pub fn v_degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.terms.keys().map(|(_, v)| v.iter().map(|&e| e as u32).sum()).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    pub fn max_sdeg(&self) -> u32 {
        self.terms.keys().map(|(m, _)| m.sdeg()).max().unwrap_or(0)
    }

    pub fn to_element(&self, ctx: &Context<Scalar>) -> Result<Element, NotationError> {
        let degs = self.v_degrees();
        if degs.iter().any(|&d| d != ctx.v.degree) {
            return Err(NotationError::Degree { expected: ctx.v.degree, found: degs });
        }
        Ok(MElement::from_terms(ctx, self.terms.iter().map(|((m, v), c)| (Key { mono: *m, v: *v, t: 0 }, c.clone()))))
    }

    pub fn from_element(e: &Element) -> Result<Self, NotationError> {
        if e.ctx.t.is_some() {
            return Err(NotationError::HasT);
        }
        let mut p = Poly::zero();
        for (k, c) in e.terms() {
            p.add_term(k.mono, k.v, c.clone());
        }
        Ok(p)
    }

    /// Applies a generator of the algebra, reading `v` in the module `m`.
    pub fn act(&self, g: GeneratorId, m: VModule) -> Result<Self, NotationError> {
        let ctx = Context::new(m);
        Poly::from_element(&Engine::standard().act_gen(g, &self.to_element(&ctx)?))
    }

    /// Applies a D-operator expression, reading `v` in the module `m`.
    pub fn apply(&self, op: &DOp, m: VModule) -> Result<Self, NotationError> {
        let ctx = Context::new(m);
        Poly::from_element(&op.apply(Engine::standard(), &self.to_element(&ctx)?))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let mut r = self.clone();
        for ((m, v), c) in &o.terms {
            r.add_term(*m, *v, c.clone());
        }
        r
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        self + &(-o)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Scalar::one())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        let ulm = Engine::standard().ulm();
        let mut r = Poly::zero();
        for ((ma, va), ca) in &self.terms {
            for ((mb, vb), cb) in &o.terms {
                let v = [va[0] + vb[0], va[1] + vb[1], va[2] + vb[2]];
                for (m, c) in ulm.mul_mono(ma, mb) {
                    r.add_term(m, v, c * ca * cb);
                }
            }
        }
        r
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for Poly {
            type Output = Poly;
            fn $f(self, o: Poly) -> Poly {
                (&self).$f(&o)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $f(self, o: &Poly) -> Poly {
                (&self).$f(o)
            }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $f(self, o: Poly) -> Poly {
                self.$f(&o)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

fn idx(i: u8) -> u8 {
    assert!((1..=3).contains(&i), "index {i} out of range 1..=3");
    i - 1
}

/// d⁻ᵢ
pub fn dm(i: u8) -> Poly {
    Poly::mono(SuperMonomial { dhat: [0; 3], minus: 1 << idx(i), plus: 0 }, [0; 3])
}

/// d⁺ᵢ
pub fn dp(i: u8) -> Poly {
    Poly::mono(SuperMonomial { dhat: [0; 3], minus: 0, plus: 1 << idx(i) }, [0; 3])
}

/// ∂̂ᵢ
pub fn dh(i: u8) -> Poly {
    let mut dhat = [0; 3];
    dhat[idx(i) as usize] = 1;
    Poly::mono(SuperMonomial { dhat, minus: 0, plus: 0 }, [0; 3])
}

/// The module variable vᵢ (xᵢ or ∂ᵢ).
pub fn var(i: u8) -> Poly {
    let mut v = [0; 3];
    v[idx(i) as usize] = 1;
    Poly::mono(SuperMonomial::ONE, v)
}

/// vᵢ^k, or `None` for negative k.
pub fn var_pow(i: u8, k: i64) -> Option<Poly> {
    (k >= 0).then(|| var(i).pow(k as u32))
}

/// d⁻_{i₁}⋯d⁻_{iₙ}, e.g. `dms(&[1, 2, 3])` = d⁻₁₂₃.
pub fn dms(ix: &[u8]) -> Poly {
    ix.iter().fold(Poly::one(), |acc, &i| acc * dm(i))
}

pub fn dps(ix: &[u8]) -> Poly {
    ix.iter().fold(Poly::one(), |acc, &i| acc * dp(i))
}

pub fn scalar(n: i64, d: i64) -> Scalar {
    int(n) / int(d)
}

pub fn fam(f: impl Fn(u8) -> Poly) -> Fam {
    [f(1), f(2), f(3)]
}

pub fn fam_dm() -> Fam {
    fam(dm)
}

pub fn fam_dp() -> Fam {
    fam(dp)
}

pub fn fam_dh() -> Fam {
    fam(dh)
}

pub fn fam_var() -> Fam {
    fam(var)
}

/// Δ⁻(A_*) = Σ d⁻ᵢAᵢ
pub fn delta_minus(a: &Fam) -> Poly {
    (1..=3).fold(Poly::zero(), |acc, i| acc + dm(i) * &a[i as usize - 1])
}

/// Δ⁺(A_*) = Σ d⁺ᵢAᵢ
pub fn delta_plus(a: &Fam) -> Poly {
    (1..=3).fold(Poly::zero(), |acc, i| acc + dp(i) * &a[i as usize - 1])
}

/// Δ̂(A_*) = Σ ∂̂ᵢAᵢ
pub fn delta_hat(a: &Fam) -> Poly {
    (1..=3).fold(Poly::zero(), |acc, i| acc + dh(i) * &a[i as usize - 1])
}

/// (A∘B∘)ᵢⱼ = AᵢBⱼ − AⱼBᵢ
pub fn pair(a: &Fam, b: &Fam, i: u8, j: u8) -> Poly {
    let (i, j) = (idx(i) as usize, idx(j) as usize);
    &a[i] * &b[j] - &a[j] * &b[i]
}

/// The family ((A∘B∘)₂₃, (A∘B∘)₃₁, (A∘B∘)₁₂); Δ±((A∘B∘)) is Δ± of it.
pub fn cross(a: &Fam, b: &Fam) -> Fam {
    [pair(a, b, 2, 3), pair(a, b, 3, 1), pair(a, b, 1, 2)]
}

/// ⟨a,b,c⟩ = a₁b₂c₃ + a₂b₃c₁ + a₃b₁c₂
pub fn cyc(a: &Fam, b: &Fam, c: &Fam) -> Poly {
    let t = |i: usize, j: usize, k: usize| &(&a[i] * &b[j]) * &c[k];
    t(0, 1, 2) + t(1, 2, 0) + t(2, 0, 1)
}

/// (P·A₁, P·A₂, P·A₃)
pub fn left(p: &Poly, a: &Fam) -> Fam {
    fam(|i| p * &a[i as usize - 1])
}

/// (A₁·P, A₂·P, A₃·P)
pub fn right(a: &Fam, p: &Poly) -> Fam {
    fam(|i| &a[i as usize - 1] * p)
}
