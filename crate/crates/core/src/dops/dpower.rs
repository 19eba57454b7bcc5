//! Powers D^α{s}, their closed form, leading terms and the D-basis decomposition.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactalg::coeff::Coeff;
use crate::exactalg::scalar::{binomial, int, Scalar};
use crate::exactalg::{express_in, SparseVec};
use crate::verma::{Engine, Key, MElement};

use super::op::{b_op, d_op, dhat_power, f1, f2, h1, h2_shift, h_prime, DOp};

pub type MultiIndex = [u32; 3];

pub fn norm(a: &MultiIndex) -> u32 {
    a.iter().sum()
}

/// α − (i): lowers entry i (1-based); `None` if that entry is 0.
pub fn decrement(a: &MultiIndex, i: usize) -> Option<MultiIndex> {
    let mut b = *a;
    b[i - 1] = b[i - 1].checked_sub(1)?;
    Some(b)
}

/// All α with |α| = n.
pub fn indices_of_norm(n: u32) -> Vec<MultiIndex> {
    let mut v = Vec::new();
    for a in 0..=n {
        for b in 0..=n - a {
            v.push([a, b, n - a - b]);
        }
    }
    v
}

/// D₃{s}^c D₂{s}^b D₁{s}^a.
pub fn d_power(a: MultiIndex, s: i64) -> DOp {
    DOp::product([d_op(3, s).pow(a[2]), d_op(2, s).pow(a[1]), d_op(1, s).pow(a[0])])
}

fn multinomial(m: u32, i: u32, j: u32) -> Scalar {
    binomial(m as i64, i as i64) * binomial((m - i) as i64, j as i64)
}

/// The closed double-sum expression for D^α{s}.
pub fn d_power_closed(alpha: MultiIndex, s: i64) -> DOp {
    let [a, b, c] = alpha;
    let mut terms = Vec::new();
    for i in 0..=a {
        for j in 0..=a - i {
            for k in 0..=b {
                let coeff = multinomial(a, i, j) * binomial(b as i64, k as i64);
                let word = DOp::product([
                    dhat_power([a - i - j, b + i - k, c + j + k]),
                    f2().pow(k),
                    f1().pow(i),
                    b_op().pow(j),
                    h1().shifted(-((i + j) as i64)).falling(a - i - j),
                    h_prime(s).shifted(-(j as i64)).falling(a - j),
                    h2_shift(s).shifted(-((j + k) as i64)).falling(b - k),
                ]);
                terms.push(word.scale(&coeff));
            }
        }
    }
    DOp::Sum(terms)
}

/// D₂{s}^k expanded as Σ C(k,m) a^{k−m} ∂^m b^m (h−m)^{[k−m]} with
/// (a, ∂, b, h) = (∂̂₂, ∂̂₃, f₂, h₂{s}).
pub fn d2_power_expanded(k: u32, s: i64) -> DOp {
    DOp::Sum(
        (0..=k)
            .map(|m| {
                DOp::product([
                    DOp::dhat(2).pow(k - m),
                    DOp::dhat(3).pow(m),
                    f2().pow(m),
                    h2_shift(s).shifted(-(m as i64)).falling(k - m),
                ])
                .scale(&binomial(k as i64, m as i64))
            })
            .collect(),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonoOrder {
    /// Plain lexicographic order on exponents.
    Lex,
    /// (|a|, a) lexicographically.
    DegLex,
}

pub fn compare(order: MonoOrder, a: &[u16; 3], b: &[u16; 3]) -> Ordering {
    match order {
        MonoOrder::Lex => a.cmp(b),
        MonoOrder::DegLex => {
            let n = |x: &[u16; 3]| x.iter().map(|&v| v as u32).sum::<u32>();
            n(a).cmp(&n(b)).then(a.cmp(b))
        }
    }
}

/// Splits m by ∂̂-exponent: a ↦ w_a with m = Σ ∂̂^a w_a, w_a ∈ Λ⁻Λ⁺V(⊗T).
pub fn by_dhat<C: Coeff>(m: &MElement<C>) -> BTreeMap<[u16; 3], MElement<C>> {
    let mut out: BTreeMap<[u16; 3], MElement<C>> = BTreeMap::new();
    for (k, c) in m.terms() {
        let mut mono = k.mono;
        let a = mono.dhat;
        mono.dhat = [0; 3];
        out.entry(a).or_insert_with(|| MElement::zero(&m.ctx)).add_term(Key { mono, ..*k }, c.clone());
    }
    out
}

/// The highest ∂̂-exponent of m in the given order and its coefficient part.
pub fn lex_highest_term<C: Coeff>(m: &MElement<C>, order: MonoOrder) -> Option<([u16; 3], MElement<C>)> {
    by_dhat(m).into_iter().max_by(|x, y| compare(order, &x.0, &y.0))
}

/// Re-attaches ∂̂^a to an element of Λ⁻Λ⁺V: ∂̂^a·w.
pub fn times_dhat<C: Coeff>(a: [u16; 3], w: &MElement<C>) -> MElement<C> {
    MElement::from_terms(
        &w.ctx,
        w.terms().map(|(k, c)| {
            let mut mono = k.mono;
            for i in 0..3 {
                mono.dhat[i] += a[i];
            }
            (Key { mono, ..*k }, c.clone())
        }),
    )
}

/// λ₁^{[a]}(λ₁+λ₂+s+1)^{[a]}(λ₂+s)^{[b]} for a highest vector of weight (λ₁,λ₂).
pub fn leading_scalar(alpha: MultiIndex, s: i64, wt3: (i64, i64)) -> Scalar {
    let (l1, l2) = wt3;
    let ff = |x: i64, n: u32| (0..n as i64).fold(Scalar::one(), |acc, i| acc * int(x - i));
    ff(l1, alpha[0]) * ff(l1 + l2 + s + 1, alpha[0]) * ff(l2 + s, alpha[1])
}

#[derive(Debug, Error, PartialEq)]
pub enum DecomposeError {
    #[error("element is not in the span of D^α m₀ (residual at ∂̂^{0:?})")]
    NotInSpan([u16; 3]),
    #[error("no highest vectors supplied")]
    NoHighest,
}

/// Coefficients c_{α,i} with w = Σ c_{α,i} D^α m_i, where the m_i ∈ Λ⁻Λ⁺V are
/// linearly independent highest vectors of one weight. Peels off
/// lexicographically highest terms.
pub fn decompose_highest(
    eng: &Engine,
    w: &MElement<Scalar>,
    m0s: &[MElement<Scalar>],
    s: i64,
) -> Result<Vec<(MultiIndex, Vec<Scalar>)>, DecomposeError> {
    if m0s.is_empty() {
        return Err(DecomposeError::NoHighest);
    }
    let mut rest = w.clone();
    let mut out: Vec<(MultiIndex, Vec<Scalar>)> = Vec::new();
    let mut index: BTreeMap<Key, usize> = BTreeMap::new();
    let vec_of = |m: &MElement<Scalar>, index: &mut BTreeMap<Key, usize>| -> SparseVec<Scalar> {
        let mut v = SparseVec::new();
        for (k, c) in m.terms() {
            let n = index.len();
            let i = *index.entry(*k).or_insert(n);
            v.insert(i, c.clone());
        }
        v
    };
    while let Some((a, coeff)) = lex_highest_term(&rest, MonoOrder::Lex) {
        let alpha = [a[0] as u32, a[1] as u32, a[2] as u32];
        let images: Vec<MElement<Scalar>> = m0s.iter().map(|m| d_power(alpha, s).apply(eng, m)).collect();
        let leads: Vec<MElement<Scalar>> = images
            .iter()
            .map(|im| by_dhat(im).remove(&a).unwrap_or_else(|| MElement::zero(&w.ctx)))
            .collect();
        let basis: Vec<SparseVec<Scalar>> = leads.iter().map(|l| vec_of(l, &mut index)).collect();
        let target = vec_of(&coeff, &mut index);
        let cs = express_in(&basis, &target, index.len()).ok_or(DecomposeError::NotInSpan(a))?;
        for (im, c) in images.iter().zip(&cs) {
            if !c.is_zero() {
                rest = rest.sub(&im.scale(c));
            }
        }
        out.push((alpha, cs));
    }
    out.sort_by(|x, y| y.0.cmp(&x.0));
    Ok(out)
}

/// Σ c_{α,i} D^α m_i.
pub fn recompose(eng: &Engine, coeffs: &[(MultiIndex, Vec<Scalar>)], m0s: &[MElement<Scalar>], s: i64) -> MElement<Scalar> {
    let mut acc = MElement::zero(&m0s[0].ctx);
    for (alpha, cs) in coeffs {
        for (m, c) in m0s.iter().zip(cs) {
            if !c.is_zero() {
                acc = acc.add(&d_power(*alpha, s).apply(eng, m).scale(c));
            }
        }
    }
    acc
}

/// ∂̂^α·(scalar)·m₀, the predicted leading term of D^α{s} m₀.
pub fn predicted_leading<C: Coeff>(alpha: MultiIndex, s: i64, wt3: (i64, i64), m0: &MElement<C>) -> MElement<C> {
    let a = [alpha[0] as u16, alpha[1] as u16, alpha[2] as u16];
    times_dhat(a, m0).scale(&leading_scalar(alpha, s, wt3))
}
