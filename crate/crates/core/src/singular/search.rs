//! Bounded-degree search for g₀-highest singular vectors with formal θ, and the contraction scan.

use std::fmt;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::e510::GeneratorId::{self, *};
use crate::exactalg::linalg::{param_nullspace, Rref, SparseMatrix, SparseVec};
use crate::exactalg::scalar::Scalar;
use crate::exactalg::theta::ThetaPoly;
use crate::verma::format::{render, to_json, Style};
use crate::verma::kernel::{all_keys, group_by_weight, operator_matrix, theta_kernel_matrix};
use crate::verma::{
    s_singular_full_check, weight, Context, Element, Engine, Key, KeyWeight, MElement, ThetaElement, VModule,
};

use super::cases::{singular_vector_in, CaseId};

/// Operators whose action does not involve θ.
const STAGE_ONE: [GeneratorId; 4] = [E1, E2, E3Sl2, E0Minus];

#[derive(Debug, Clone, PartialEq)]
pub enum ThetaValue {
    Value(Scalar),
    /// Singular for every θ.
    Any,
    /// At the roots of an irreducible polynomial without rational roots.
    RootOf(ThetaPoly),
}

impl fmt::Display for ThetaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ThetaValue::Value(t) => write!(f, "{t}"),
            ThetaValue::Any => write!(f, "any"),
            ThetaValue::RootOf(p) => write!(f, "root of {}", p.render("theta", "-")),
        }
    }
}

/// (wt₃, wt₂, udeg) of a weight space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct SpaceLabel {
    pub wt3: (i64, i64),
    pub wt2: i64,
    pub udeg: u32,
}

impl fmt::Display for SpaceLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "wt3 ({},{}) wt2 {} udeg {}", self.wt3.0, self.wt3.1, self.wt2, self.udeg)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchHit {
    pub space: SpaceLabel,
    pub theta: ThetaValue,
    /// Normalized vector (first coefficient 1); absent for θ not rational.
    pub vector: Option<Element>,
    pub matched: Option<CaseId>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult {
    pub v: VModule,
    pub r: u32,
    pub udeg_max: u32,
    pub hits: Vec<SearchHit>,
    /// In-range cases with udeg ≤ udeg_max that the search did not produce.
    pub missing: Vec<CaseId>,
}

impl SearchResult {
    pub fn unlisted(&self) -> impl Iterator<Item = &SearchHit> {
        self.hits.iter().filter(|h| h.matched.is_none())
    }

    /// Every hit is a classified case and every in-range case was found.
    pub fn complete(&self) -> bool {
        self.unlisted().next().is_none() && self.missing.is_empty()
    }

    /// (case, θ) pairs found, in order.
    pub fn found(&self) -> Vec<(CaseId, Scalar)> {
        self.hits
            .iter()
            .filter_map(|h| match (&h.matched, &h.theta) {
                (Some(c), ThetaValue::Value(t)) => Some((*c, t.clone())),
                _ => None,
            })
            .collect()
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} r={} udeg<={}\n", self.v, self.r, self.udeg_max);
        for h in &self.hits {
            let label = h.matched.map_or("UNLISTED".to_string(), |c| format!("case {c}"));
            s += &format!("  {label} theta={} {}\n", h.theta, h.space);
            if let Some(v) = &h.vector {
                s += &format!("    {}\n", render(v, Style::Math));
            }
        }
        for c in &self.missing {
            s += &format!("  MISSING case {c}\n");
        }
        s
    }

    pub fn to_json(&self) -> Value {
        json!({
            "module": self.v.to_string(),
            "r": self.r,
            "udeg_max": self.udeg_max,
            "hits": self.hits.iter().map(|h| json!({
                "case": h.matched.map_or("UNLISTED".to_string(), |c| c.to_string()),
                "theta": h.theta.to_string(),
                "wt3": [h.space.wt3.0, h.space.wt3.1],
                "wt2": h.space.wt2,
                "udeg": h.space.udeg,
                "vector": h.vector.as_ref().map(to_json),
            })).collect::<Vec<_>>(),
            "missing": self.missing.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "complete": self.complete(),
        })
    }
}

fn space_label(w: &KeyWeight, udeg: u32) -> SpaceLabel {
    SpaceLabel { wt3: (w.h1, w.h2), wt2: w.h3, udeg }
}

fn to_sparse(keys: &[Key], m: &Element) -> Option<SparseVec<Scalar>> {
    let mut out = SparseVec::new();
    for (k, c) in m.terms() {
        out.insert(keys.iter().position(|x| x == k)?, c.clone());
    }
    Some(out)
}

fn combine<C: crate::Coeff>(basis: &[MElement<C>], coeffs: &[C], ctx: &Context<C>) -> MElement<C> {
    basis.iter().zip(coeffs).fold(MElement::zero(ctx), |acc, (b, c)| acc.add(&b.scale_by(c)))
}

/// Listed vectors of the in-range cases, with their θ.
fn listed(v: VModule, r: u32) -> Vec<(CaseId, Scalar, Element)> {
    CaseId::in_range(v, r)
        .into_iter()
        .map(|c| {
            let t = c.theta(r);
            (c, t.clone(), singular_vector_in(c, v, r, t).expect("in range"))
        })
        .collect()
}

/// Solves one weight space: stage one over ℚ, then e₀ with formal θ on that kernel.
fn solve_space(eng: &Engine, ctx: &Context<ThetaPoly>, keys: &[Key], label: SpaceLabel, cases: &[(CaseId, Scalar, Element)]) -> Vec<SearchHit> {
    let m1 = operator_matrix(eng, ctx, keys, &STAGE_ONE);
    let constant = m1.row_vecs().iter().all(|r| r.values().all(|c| c.as_constant().is_some()));
    let basis: Vec<ThetaElement> = if constant {
        let mq: SparseMatrix<Scalar> = m1.map(|c| c.as_constant().unwrap());
        let mut rr = Rref::new();
        for row in mq.row_vecs() {
            rr.insert(row);
        }
        rr.kernel(keys.len())
            .into_iter()
            .map(|v| MElement::from_terms(ctx, keys.iter().zip(v).map(|(k, c)| (*k, ThetaPoly::constant(c)))))
            .collect()
    } else {
        // not expected: fall back to treating every operator with formal θ
        keys.iter().map(|k| MElement::basis(ctx, *k)).collect()
    };
    if basis.is_empty() {
        return Vec::new();
    }
    let ops: &[GeneratorId] = if constant { &[E0] } else { &super::cases::SINGULAR_OPS };
    let pk = param_nullspace(&theta_kernel_matrix(eng, &basis, ops));
    let mut hits = Vec::new();
    let generic: Vec<ThetaElement> = pk.generic_basis.iter().map(|c| combine(&basis, c, ctx)).collect();
    hits.extend(generic.iter().map(|_| SearchHit { space: label, theta: ThetaValue::Any, vector: None, matched: None }));
    for f in &pk.residual_factors {
        hits.push(SearchHit { space: label, theta: ThetaValue::RootOf(f.clone()), vector: None, matched: None });
    }
    for sp in &pk.special_points {
        let cs = ctx.specialize(&sp.theta);
        let sb: Vec<Element> = basis.iter().map(|b| b.specialize(&sp.theta)).collect();
        let kernel: Vec<Element> = sp.kernel.iter().map(|c| combine(&sb, c, &cs)).collect();
        let mut span = Rref::new();
        for g in &generic {
            span.insert(&to_sparse(keys, &g.specialize(&sp.theta)).unwrap_or_default());
        }
        let mut kr = Rref::new();
        for k in &kernel {
            kr.insert(&to_sparse(keys, k).expect("kernel lies in the weight space"));
        }
        for (c, t, e) in cases {
            if *t != sp.theta {
                continue;
            }
            let Some(sv) = to_sparse(keys, e) else { continue };
            if kr.contains(&sv) && span.insert(&sv) {
                hits.push(SearchHit { space: label, theta: ThetaValue::Value(t.clone()), vector: Some(e.normalized()), matched: Some(*c) });
            }
        }
        for k in &kernel {
            if span.insert(&to_sparse(keys, k).unwrap()) {
                hits.push(SearchHit { space: label, theta: ThetaValue::Value(sp.theta.clone()), vector: Some(k.normalized()), matched: None });
            }
        }
    }
    hits
}

/// All g₀-highest singular vectors of udeg 1..=udeg_max in M(V ⊗ T(r,θ)), θ formal.
pub fn search_singular(v: VModule, r: u32, udeg_max: u32) -> SearchResult {
    let eng = Engine::standard();
    let ctx = Context::<ThetaPoly>::formal(v, r);
    let keys: Vec<Key> = all_keys(&ctx, udeg_max / 2)
        .into_iter()
        .filter(|k| (1..=udeg_max).contains(&k.mono.udeg()))
        .collect();
    let groups: Vec<(KeyWeight, Vec<Key>)> = group_by_weight(eng, &ctx, &keys)
        .into_iter()
        .filter(|(w, _)| w.h1 >= 0 && w.h2 >= 0 && w.h3 >= 0)
        .collect();
    let cases = listed(v, r);
    let hits: Vec<SearchHit> = groups
        .par_iter()
        .flat_map_iter(|(w, ks)| {
            let udeg = ks[0].mono.udeg();
            let cs: Vec<_> = cases.iter().filter(|(_, _, e)| to_sparse(ks, e).is_some()).cloned().collect();
            solve_space(eng, &ctx, ks, space_label(w, udeg), &cs)
        })
        .collect();
    let missing = cases
        .iter()
        .filter(|(c, _, e)| e.max_udeg() <= udeg_max && !hits.iter().any(|h| h.matched == Some(*c)))
        .map(|(c, _, _)| *c)
        .collect();
    SearchResult { v, r, udeg_max, hits, missing }
}

/// One contraction of a singular vector with the dual of z₊^{r−j}z₋^j.
#[derive(Debug, Clone, PartialEq)]
pub struct Contraction {
    pub j: u8,
    pub element: Element,
    pub semi_singular: bool,
    /// sℓ(2)-weight; `None` when the contraction is zero or not a weight vector.
    pub wt2: Option<i64>,
}

pub fn decomposition_scan(m: &Element) -> Vec<Contraction> {
    let eng = Engine::standard();
    (0..m.ctx.t_dim())
        .map(|j| {
            let element = m.contract(j);
            let semi = s_singular_full_check(eng, &element, false).is_ok() && s_singular_full_check(eng, &element, true).is_ok();
            let wt2 = if element.is_zero() { None } else { weight(eng, &element).ok().map(|w| w.wt2) };
            Contraction { j, element, semi_singular: semi, wt2 }
        })
        .collect()
}

/// Every contraction is semi-singular, every nonzero one is a weight vector, and some nonzero
/// contraction has wt₂ ≥ 0.
pub fn contraction_property(scan: &[Contraction]) -> bool {
    scan.iter().all(|c| c.semi_singular && (c.element.is_zero() || c.wt2.is_some()))
        && scan.iter().any(|c| c.wt2.is_some_and(|w| w >= 0))
}
