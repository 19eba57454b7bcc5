//! The modules V ⊗ T and elements of M(V ⊗ T) = U(L₋) ⊗ V ⊗ T.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::exactalg::coeff::Coeff;
use crate::exactalg::scalar::Scalar;
use crate::exactalg::theta::ThetaPoly;

use super::monomial::{SuperMonomial, UElem, ULminus};

/// Irreducible sl₃-module: F(p,0) = degree-p polynomials in x₁,x₂,x₃ or
/// F(0,q) = degree-q polynomials in ∂₁,∂₂,∂₃.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    X,
    Partial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VModule {
    pub family: Family,
    pub degree: u32,
}

impl std::fmt::Display for VModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.family {
            Family::X => write!(f, "F(p={})", self.degree),
            Family::Partial => write!(f, "F(q={})", self.degree),
        }
    }
}

impl VModule {
    pub fn p(p: u32) -> Self {
        VModule { family: Family::X, degree: p }
    }

    pub fn q(q: u32) -> Self {
        VModule { family: Family::Partial, degree: q }
    }

    /// Monomial exponents, highest weight vector first (x₁^p, resp. ∂₃^q).
    pub fn basis(&self) -> Vec<[u16; 3]> {
        let d = self.degree as u16;
        let mut out = Vec::new();
        for a in (0..=d).rev() {
            for b in (0..=d - a).rev() {
                out.push([a, b, d - a - b]);
            }
        }
        if self.family == Family::Partial {
            out.reverse();
        }
        out
    }

    pub fn highest(&self) -> [u16; 3] {
        let d = self.degree as u16;
        match self.family {
            Family::X => [d, 0, 0],
            Family::Partial => [0, 0, d],
        }
    }

    pub fn dim(&self) -> usize {
        let d = self.degree as usize;
        (d + 1) * (d + 2) / 2
    }
}

/// The sl₂ ⊕ gl₁-module ℂ[z₊,z₋]_r with Y acting by θ − r.
#[derive(Debug, Clone, PartialEq)]
pub struct TModule<C> {
    pub r: u32,
    pub theta: C,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Context<C> {
    pub v: VModule,
    pub t: Option<TModule<C>>,
}

impl<C: Coeff> Context<C> {
    pub fn new(v: VModule) -> Self {
        Context { v, t: None }
    }

    pub fn with_t(v: VModule, r: u32, theta: C) -> Self {
        Context { v, t: Some(TModule { r, theta }) }
    }

    pub fn without_t(&self) -> Context<C> {
        Context { v: self.v, t: None }
    }

    pub fn t_dim(&self) -> u8 {
        self.t.as_ref().map_or(1, |t| t.r as u8 + 1)
    }
}

impl Context<ThetaPoly> {
    pub fn formal(v: VModule, r: u32) -> Self {
        Context::with_t(v, r, ThetaPoly::theta())
    }

    /// Substitutes a value for θ.
    pub fn specialize(&self, theta: &Scalar) -> Context<Scalar> {
        Context {
            v: self.v,
            t: self.t.as_ref().map(|t| TModule { r: t.r, theta: t.theta.eval(theta) }),
        }
    }
}

impl Context<Scalar> {
    pub fn lift(&self) -> Context<ThetaPoly> {
        Context {
            v: self.v,
            t: self.t.as_ref().map(|t| TModule { r: t.r, theta: ThetaPoly::constant(t.theta.clone()) }),
        }
    }
}

/// Basis vector u ⊗ v ⊗ t: `t` indexes z₊^{r−t} z₋^t (0 when T is absent).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Key {
    pub mono: SuperMonomial,
    pub v: [u16; 3],
    pub t: u8,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MElement<C> {
    pub ctx: Context<C>,
    terms: BTreeMap<Key, C>,
}

pub type Element = MElement<Scalar>;
pub type ThetaElement = MElement<ThetaPoly>;

impl<C: Coeff> MElement<C> {
    pub fn zero(ctx: &Context<C>) -> Self {
        MElement { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn basis(ctx: &Context<C>, key: Key) -> Self {
        let mut e = Self::zero(ctx);
        e.add_term(key, C::one());
        e
    }

    /// u ⊗ v ⊗ t for u ∈ U(L₋).
    pub fn from_u(ctx: &Context<C>, u: &UElem, v: [u16; 3], t: u8) -> Self {
        let mut e = Self::zero(ctx);
        for (m, c) in u {
            e.add_term(Key { mono: *m, v, t }, C::from(c.clone()));
        }
        e
    }

    pub fn from_terms(ctx: &Context<C>, terms: impl IntoIterator<Item = (Key, C)>) -> Self {
        let mut e = Self::zero(ctx);
        for (k, c) in terms {
            e.add_term(k, c);
        }
        e
    }

    pub fn add_term(&mut self, k: Key, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(e) => {
                let s = std::mem::replace(e, C::zero()) + c;
                if s.is_zero() {
                    self.terms.remove(&k);
                } else {
                    *e = s;
                }
            }
            None => {
                self.terms.insert(k, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Key, &C)> {
        self.terms.iter()
    }

    pub fn term_map(&self) -> &BTreeMap<Key, C> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: &Key) -> C {
        self.terms.get(k).cloned().unwrap_or_else(C::zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (k, c) in &o.terms {
            r.add_term(*k, c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (k, c) in &o.terms {
            r.add_term(*k, -c.clone());
        }
        r
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return Self::zero(&self.ctx);
        }
        MElement { ctx: self.ctx.clone(), terms: self.terms.iter().map(|(k, c)| (*k, c.scale(s))).collect() }
    }

    pub fn scale_by(&self, s: &C) -> Self {
        let mut r = Self::zero(&self.ctx);
        for (k, c) in &self.terms {
            r.add_term(*k, c.clone() * s.clone());
        }
        r
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Scalar::one())
    }

    /// Left multiplication by an element of U(L₋).
    pub fn left_mul(&self, ulm: &ULminus, u: &UElem) -> Self {
        let mut r = Self::zero(&self.ctx);
        for (k, c) in &self.terms {
            for (m, cu) in u {
                for (m2, c2) in ulm.mul_mono(m, &k.mono) {
                    r.add_term(Key { mono: m2, ..*k }, c.scale(&(c2 * cu)));
                }
            }
        }
        r
    }

    /// First nonzero coefficient (in key order).
    pub fn leading_coeff(&self) -> Option<&C> {
        self.terms.values().next()
    }

    pub fn max_sdeg(&self) -> u32 {
        self.terms.keys().map(|k| k.mono.sdeg()).max().unwrap_or(0)
    }

    pub fn max_udeg(&self) -> u32 {
        self.terms.keys().map(|k| k.mono.udeg()).max().unwrap_or(0)
    }

    /// Terms with the given sdeg only.
    pub fn sdeg_part(&self, s: u32) -> Self {
        MElement {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().filter(|(k, _)| k.mono.sdeg() == s).map(|(k, c)| (*k, c.clone())).collect(),
        }
    }

    /// Map coefficients into another ring (context supplied).
    pub fn map_coeffs<D: Coeff>(&self, ctx: &Context<D>, f: impl Fn(&C) -> D) -> MElement<D> {
        MElement::from_terms(ctx, self.terms.iter().map(|(k, c)| (*k, f(c))))
    }

    /// Contraction with the dual basis vector of z₊^{r−j}z₋^j; the result has no T factor.
    pub fn contract(&self, j: u8) -> Self {
        let ctx = self.ctx.without_t();
        MElement::from_terms(
            &ctx,
            self.terms.iter().filter(|(k, _)| k.t == j).map(|(k, c)| (Key { t: 0, ..*k }, c.clone())),
        )
    }

    /// v ⊗ z-tensor: attaches the T basis vector `j` to an element without T.
    pub fn tensor_t(&self, ctx: &Context<C>, j: u8) -> Self {
        MElement::from_terms(ctx, self.terms.iter().map(|(k, c)| (Key { t: j, ..*k }, c.clone())))
    }

    /// Scales so that the first coefficient is 1 (when it is a nonzero scalar).
    pub fn normalized(&self) -> Self {
        match self.leading_coeff().and_then(|c| c.as_scalar()) {
            Some(c) if !c.is_zero() => self.scale(&(Scalar::one() / c)),
            _ => self.clone(),
        }
    }

    /// If `self = λ·other` for a scalar λ, returns λ.
    pub fn ratio_to(&self, other: &Self) -> Option<Scalar> {
        if self.terms.len() != other.terms.len() {
            return None;
        }
        if self.is_zero() {
            return Some(Scalar::zero());
        }
        let (k, c) = other.terms.iter().next().unwrap();
        let a = self.terms.get(k)?.as_scalar()?;
        let b = c.as_scalar()?;
        let lambda = a / b;
        (other.scale(&lambda) == *self).then_some(lambda)
    }
}

impl ThetaElement {
    pub fn specialize(&self, theta: &Scalar) -> Element {
        let ctx = self.ctx.specialize(theta);
        self.map_coeffs(&ctx, |c| c.eval(theta))
    }
}

impl Element {
    pub fn lift(&self) -> ThetaElement {
        let ctx = self.ctx.lift();
        self.map_coeffs(&ctx, |c| ThetaPoly::constant(c.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::scalar::int;

    #[test]
    fn v_bases() {
        assert_eq!(VModule::p(2).basis().len(), 6);
        assert_eq!(VModule::p(2).basis()[0], [2, 0, 0]);
        assert_eq!(VModule::q(2).basis()[0], [0, 0, 2]);
        assert_eq!(VModule::q(3).dim(), 10);
    }

    #[test]
    fn element_arithmetic() {
        let ctx: Context<Scalar> = Context::new(VModule::p(1));
        let k = Key { mono: SuperMonomial::ONE, v: [1, 0, 0], t: 0 };
        let e = MElement::basis(&ctx, k);
        assert!(e.sub(&e).is_zero());
        assert_eq!(e.scale(&int(3)).ratio_to(&e), Some(int(3)));
    }
}
