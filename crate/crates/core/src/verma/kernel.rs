//! Joint kernels of operators on spans of basis vectors.

use std::collections::BTreeMap;

use crate::e510::GeneratorId;
use crate::exactalg::linalg::{Rref, SparseMatrix, SparseVec};
use crate::exactalg::scalar::Scalar;
use crate::exactalg::theta::ThetaPoly;
use crate::exactalg::coeff::Coeff;

use super::action::{Engine, KeyWeight};
use super::module::{Context, Key, MElement};
use super::monomial::SuperMonomial;

/// All basis vectors with sdeg ≤ max_sdeg.
pub fn all_keys<C: Coeff>(ctx: &Context<C>, max_sdeg: u32) -> Vec<Key> {
    let mut out = Vec::new();
    for mono in SuperMonomial::enumerate(max_sdeg) {
        for v in ctx.v.basis() {
            for t in 0..ctx.t_dim() {
                out.push(Key { mono, v, t });
            }
        }
    }
    out
}

/// Basis vectors grouped by weight.
pub fn group_by_weight<C: Coeff>(eng: &Engine, ctx: &Context<C>, keys: &[Key]) -> BTreeMap<KeyWeight, Vec<Key>> {
    let mut out: BTreeMap<KeyWeight, Vec<Key>> = BTreeMap::new();
    for k in keys {
        out.entry(eng.key_weight(ctx, k)).or_default().push(*k);
    }
    out
}

/// Matrix of the stacked operators on span(keys): one column per key.
pub fn operator_matrix<C: Coeff>(eng: &Engine, ctx: &Context<C>, keys: &[Key], ops: &[GeneratorId]) -> SparseMatrix<C> {
    let mut rows: BTreeMap<(usize, Key), SparseVec<C>> = BTreeMap::new();
    for (j, k) in keys.iter().enumerate() {
        let b = MElement::basis(ctx, *k);
        for (n, g) in ops.iter().enumerate() {
            for (k2, c) in eng.act_gen(*g, &b).terms() {
                rows.entry((n, *k2)).or_default().insert(j, c.clone());
            }
        }
    }
    SparseMatrix::from_rows(keys.len(), rows.into_values().collect())
}

fn to_element<C: Coeff>(ctx: &Context<C>, keys: &[Key], v: &[C]) -> MElement<C> {
    MElement::from_terms(ctx, keys.iter().zip(v).map(|(k, c)| (*k, c.clone())))
}

/// Basis of the joint kernel of `ops` on span(keys).
pub fn common_kernel(eng: &Engine, ctx: &Context<Scalar>, keys: &[Key], ops: &[GeneratorId]) -> Vec<MElement<Scalar>> {
    let m = operator_matrix(eng, ctx, keys, ops);
    let mut r = Rref::new();
    for row in m.row_vecs() {
        r.insert(row);
    }
    r.kernel(keys.len()).iter().map(|v| to_element(ctx, keys, v)).collect()
}

/// Kernel restricted to a subspace: returns combinations of `basis` killed by `ops`.
pub fn kernel_on(eng: &Engine, basis: &[MElement<Scalar>], ops: &[GeneratorId]) -> Vec<MElement<Scalar>> {
    if basis.is_empty() {
        return Vec::new();
    }
    let mut rows: BTreeMap<(usize, Key), SparseVec<Scalar>> = BTreeMap::new();
    for (j, b) in basis.iter().enumerate() {
        for (n, g) in ops.iter().enumerate() {
            for (k2, c) in eng.act_gen(*g, b).terms() {
                rows.entry((n, *k2)).or_default().insert(j, c.clone());
            }
        }
    }
    let mut r = Rref::new();
    for row in rows.values() {
        r.insert(row);
    }
    r.kernel(basis.len())
        .iter()
        .map(|v| {
            let mut acc = MElement::zero(&basis[0].ctx);
            for (b, c) in basis.iter().zip(v) {
                if !num_traits::Zero::is_zero(c) {
                    acc = acc.add(&b.scale(c));
                }
            }
            acc
        })
        .collect()
}

/// Matrix of the stacked operators on span(basis) for formal-θ elements.
pub fn theta_kernel_matrix(eng: &Engine, basis: &[MElement<ThetaPoly>], ops: &[GeneratorId]) -> SparseMatrix<ThetaPoly> {
    let mut rows: BTreeMap<(usize, Key), SparseVec<ThetaPoly>> = BTreeMap::new();
    for (j, b) in basis.iter().enumerate() {
        for (n, g) in ops.iter().enumerate() {
            for (k2, c) in eng.act_gen(*g, b).terms() {
                rows.entry((n, *k2)).or_default().insert(j, c.clone());
            }
        }
    }
    SparseMatrix::from_rows(basis.len(), rows.into_values().collect())
}

/// sl₃-highest vectors (kernel of e₁, e₂) among basis vectors with the given sdeg, by weight.
pub fn highest_by_weight(eng: &Engine, ctx: &Context<Scalar>, keys: &[Key]) -> BTreeMap<KeyWeight, Vec<MElement<Scalar>>> {
    group_by_weight(eng, ctx, keys)
        .into_iter()
        .filter(|(w, _)| w.h1 >= 0 && w.h2 >= 0)
        .map(|(w, ks)| (w, common_kernel(eng, ctx, &ks, &[GeneratorId::E1, GeneratorId::E2])))
        .filter(|(_, v)| !v.is_empty())
        .collect()
}
