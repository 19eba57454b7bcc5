//! Weights and the highest / quasi / semi / singular predicates.

use num_traits::One;

use crate::e510::{Element510, GeneratorId};
use crate::exactalg::coeff::Coeff;
use crate::exactalg::scalar::{int, Scalar};

use super::action::{Engine, VermaError};
use super::module::MElement;

/// (wt₃ = (h₁,h₂), wt₂ = h₃, wt₁ = Y).
#[derive(Debug, Clone, PartialEq)]
pub struct Weight<C> {
    pub wt3: (i64, i64),
    pub wt2: i64,
    pub wt1: C,
}

impl<C: Coeff> Weight<C> {
    pub fn is_dominant(&self) -> bool {
        self.wt3.0 >= 0 && self.wt3.1 >= 0
    }
}

/// Weight of a weight vector; errors name the first operator for which `m` is not an eigenvector.
pub fn weight<C: Coeff>(eng: &Engine, m: &MElement<C>) -> Result<Weight<C>, VermaError> {
    let mut it = m.terms();
    let Some((k0, _)) = it.next() else {
        return Err(VermaError::NotWeightVector("zero vector".into()));
    };
    let w0 = eng.key_weight(&m.ctx, k0);
    for (k, _) in m.terms() {
        let w = eng.key_weight(&m.ctx, k);
        for (name, same) in [("h1", w.h1 == w0.h1), ("h2", w.h2 == w0.h2), ("h3", w.h3 == w0.h3), ("Y", w.y == w0.y)] {
            if !same {
                return Err(VermaError::NotWeightVector(name.into()));
            }
        }
    }
    let mut y = C::from(w0.y.clone());
    if let Some(t) = &m.ctx.t {
        y = y + t.theta.clone();
    }
    Ok(Weight { wt3: (w0.h1, w0.h2), wt2: w0.h3, wt1: y })
}

/// Result of a predicate: `Ok(())` or the first operator with a nonzero image.
pub type Check<C> = Result<(), Witness<C>>;

#[derive(Debug, Clone, PartialEq)]
pub struct Witness<C> {
    pub op: String,
    pub image: MElement<C>,
}

pub fn killed_by<C: Coeff>(eng: &Engine, m: &MElement<C>, ops: &[GeneratorId]) -> Check<C> {
    for &g in ops {
        let r = eng.act_gen(g, m);
        if !r.is_zero() {
            return Err(Witness { op: g.name(), image: r });
        }
    }
    Ok(())
}

pub fn killed_by_elements<C: Coeff>(eng: &Engine, m: &MElement<C>, ops: &[(String, Element510)]) -> Check<C> {
    for (name, g) in ops {
        let r = eng.act_elem(g, m).map_err(|e| Witness { op: format!("{name}: {e}"), image: MElement::zero(&m.ctx) })?;
        if !r.is_zero() {
            return Err(Witness { op: name.clone(), image: r });
        }
    }
    Ok(())
}

use GeneratorId::*;

pub fn is_sl3_highest<C: Coeff>(eng: &Engine, m: &MElement<C>) -> Check<C> {
    killed_by(eng, m, &[E1, E2])
}

pub fn is_quasi_singular<C: Coeff>(eng: &Engine, m: &MElement<C>) -> Check<C> {
    killed_by(eng, m, &[E1, E2, E0Minus])
}

pub fn is_semi_singular<C: Coeff>(eng: &Engine, m: &MElement<C>) -> Check<C> {
    killed_by(eng, m, &[E1, E2, E0Minus, E0Plus])
}

pub fn is_singular<C: Coeff>(eng: &Engine, m: &MElement<C>) -> Check<C> {
    killed_by(eng, m, &[E1, E2, E3Sl2, E0, E0Minus])
}

/// Basis x_i d±_j + x_j d±_i (i ≤ j) of g₁^±.
pub fn g1_basis(plus: bool) -> Vec<(String, Element510)> {
    let slot = if plus { 3 } else { 4 };
    let sign = if plus { "plus" } else { "minus" };
    let mut v = Vec::new();
    for i in 0..3 {
        for j in i..3 {
            let a = Element510::form_term(int(1), &[i], j, slot);
            let b = Element510::form_term(int(1), &[j], i, slot);
            v.push((format!("x{}d{}{} + x{}d{}{}", i + 1, sign, j + 1, j + 1, sign, i + 1), a.add(&b)));
        }
    }
    v
}

/// Checks sl₃-highest and annihilation by the whole of g₁^± (not only its lowest vector).
pub fn s_singular_full_check<C: Coeff>(eng: &Engine, m: &MElement<C>, plus: bool) -> Check<C> {
    is_sl3_highest(eng, m)?;
    killed_by_elements(eng, m, &g1_basis(plus))
}

/// Killed by sl₃ raising operators, e₃ and all of g₁.
pub fn singular_full_check<C: Coeff>(eng: &Engine, m: &MElement<C>) -> Check<C> {
    killed_by(eng, m, &[E1, E2, E12, E3Sl2, E0, E0Plus, E0Minus])?;
    let mut all = g1_basis(true);
    all.extend(g1_basis(false));
    killed_by_elements(eng, m, &all)
}

/// φ applied to the U(L₋) factor; V is fixed. Only for elements without T.
pub fn phi_lift<C: Coeff>(eng: &Engine, m: &MElement<C>) -> Result<MElement<C>, VermaError> {
    if m.ctx.t.is_some() {
        return Err(VermaError::Context("φ is lifted only to U(L-) ⊗ V".into()));
    }
    let mut out = MElement::zero(&m.ctx);
    for (k, c) in m.terms() {
        for (m2, c2) in eng.phi_mono(&k.mono) {
            out.add_term(super::module::Key { mono: m2, ..*k }, c.scale(&c2));
        }
    }
    Ok(out)
}

/// Eigenvalue of `g` on `m`, if `m` is an eigenvector.
pub fn eigenvalue<C: Coeff>(eng: &Engine, g: GeneratorId, m: &MElement<C>) -> Option<C> {
    let gm = eng.act_gen(g, m);
    if gm.is_zero() {
        return Some(C::zero());
    }
    let (k, c) = m.terms().next()?;
    let lambda_num = gm.coeff(k);
    // λ = gm[k] / c, only for scalar c
    let cs = c.as_scalar()?;
    let lambda = lambda_num.scale(&(Scalar::one() / cs));
    (m.scale_by(&lambda) == gm).then_some(lambda)
}
