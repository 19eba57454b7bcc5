//! Commutators of e₀ with elements of U(L₋) (and U(L₋) ⊗ ℂ[∂]), written as Σ uᵢ gᵢ with gᵢ ∈ U(g₀).
//!
//! An identity [e₀, u] = Σ uᵢ gᵢ is checked on M(V ⊗ T(r,θ)) with formal θ: for every
//! w ∈ V ⊗ T, e₀(u·w) = Σ uᵢ·(gᵢ w), since e₀ kills V ⊗ T. When u carries module
//! variables, u·w multiplies them into the V factor.

use std::collections::BTreeMap;


use crate::classify::notation::*;
use crate::e510::GeneratorId::{self, *};
use crate::exactalg::coeff::Coeff;
use crate::exactalg::scalar::{int, Scalar};
use crate::exactalg::theta::ThetaPoly;
use crate::verma::{Context, Engine, Key, MElement, SuperMonomial, ThetaElement, VModule};

use super::abcd::build_abcd;

/// A product of g₀ generators applied right to left, e.g. [F3, H0] means f₃h₀.
pub type G0Word = Vec<GeneratorId>;

#[derive(Debug, Clone)]
pub struct CommutatorFormula {
    pub name: &'static str,
    pub u: Poly,
    pub rhs: Vec<(Poly, Scalar, G0Word)>,
    /// The identity involves module variables and is read in F(q=·).
    pub partial_only: bool,
}

/// u · w: the U(L₋) part multiplies on the left, module variables multiply into V.
pub fn poly_times<C: Coeff>(u: &Poly, w: &MElement<C>) -> MElement<C> {
    let ulm = Engine::standard().ulm();
    let degs = u.v_degrees();
    assert!(degs.len() <= 1, "u must be homogeneous in the module variables");
    let dv = degs.first().copied().unwrap_or(0);
    let ctx = Context {
        v: VModule { degree: w.ctx.v.degree + dv, ..w.ctx.v },
        t: w.ctx.t.clone(),
    };
    let mut acc: BTreeMap<Key, C> = BTreeMap::new();
    for ((mu, vu), cu) in u.terms() {
        for (k, cw) in w.terms() {
            let v = [k.v[0] + vu[0], k.v[1] + vu[1], k.v[2] + vu[2]];
            for (m, c) in ulm.mul_mono(mu, &k.mono) {
                let x = cw.scale(&(c * cu));
                let e = acc.entry(Key { mono: m, v, t: k.t }).or_insert_with(C::zero);
                *e = e.clone() + x;
            }
        }
    }
    MElement::from_terms(&ctx, acc)
}

fn apply_word<C: Coeff>(word: &[GeneratorId], w: &MElement<C>) -> MElement<C> {
    let eng = Engine::standard();
    word.iter().rev().fold(w.clone(), |acc, g| eng.act_gen(*g, &acc))
}

impl CommutatorFormula {
    /// Left and right sides on one basis vector of V ⊗ T.
    pub fn sides(&self, w: &ThetaElement) -> (ThetaElement, ThetaElement) {
        let lhs = Engine::standard().act_gen(E0, &poly_times(&self.u, w));
        let mut rhs = MElement::zero(&lhs.ctx);
        for (p, c, word) in &self.rhs {
            rhs = rhs.add(&poly_times(p, &apply_word(word, w)).scale(c));
        }
        (lhs, rhs)
    }

    /// Checks the identity on every basis vector of V ⊗ T(r, θ), θ formal.
    pub fn holds_on(&self, v: VModule, r: u32) -> bool {
        let ctx = Context::<ThetaPoly>::formal(v, r);
        v.basis().into_iter().all(|vb| {
            (0..ctx.t_dim()).all(|t| {
                let w = MElement::basis(&ctx, Key { mono: SuperMonomial::ONE, v: vb, t });
                let (l, r) = self.sides(&w);
                l == r
            })
        })
    }
}

fn term(p: Poly, c: i64, word: &[GeneratorId]) -> (Poly, Scalar, G0Word) {
    (p, int(c), word.to_vec())
}

/// The e₀ commutator formulas used in the singular-vector computations, as printed except
/// where `printed_variants` records a difference.
pub fn formulas() -> Vec<CommutatorFormula> {
    let q = build_abcd().expect("abcd relations");
    let (a, b, c, d) = (q.a, q.b, q.c, q.d);
    let v = fam_var();
    let one = Poly::one();
    let m = |i, j| dm(i) * dm(j);
    let pp = |i, j| dp(i) * dp(j);
    let mp = |i, j| dm(i) * dp(j);
    let pm = |i, j| dp(i) * dm(j);
    let f = |name, u, rhs, partial_only| CommutatorFormula { name, u, rhs, partial_only };
    let mut out = vec![
        f("[e0,d1-] = -2f3", dm(1), vec![term(one.clone(), -2, &[F3])], false),
        f("[e0,d2-] = 0", dm(2), vec![], false),
        f("[e0,d3-] = 0", dm(3), vec![], false),
        f("[e0,d1+] = h0", dp(1), vec![term(one.clone(), 1, &[H0])], false),
        f("[e0,d2+] = f1", dp(2), vec![term(one.clone(), 1, &[F1])], false),
        f("[e0,d3+] = f12", dp(3), vec![term(one.clone(), 1, &[F12])], false),
        f("[e0,dhat1] = 0", dh(1), vec![], false),
        f("[e0,dhat2] = d3-", dh(2), vec![term(dm(3), 1, &[])], false),
        f("[e0,dhat3] = -d2-", dh(3), vec![term(dm(2), -1, &[])], false),
    ];
    out.push(f(
        "[e0,a] = d2+d3+(h0-2) - d1+d3+f1 + d1+d2+f12",
        a,
        vec![term(pp(2, 3), 1, &[H0]), term(pp(2, 3), -2, &[]), term(pp(1, 3), -1, &[F1]), term(pp(1, 2), 1, &[F12])],
        false,
    ));
    out.push(f("[e0,b]", b, e0_b(false), false));
    out.push(f(
        "[e0,c] = d2-d3-(h0-2) + (d2-d3+ + d2+d3-)(-2f3) - d1-d3-f1 + d1-d2-f12",
        c,
        vec![
            term(m(2, 3), 1, &[H0]),
            term(m(2, 3), -2, &[]),
            term(mp(2, 3) + pm(2, 3), -2, &[F3]),
            term(m(1, 3), -1, &[F1]),
            term(m(1, 2), 1, &[F12]),
        ],
        false,
    ));
    out.push(f("[e0,d] = d2-d3-(-2f3)", d, vec![term(m(2, 3), -2, &[F3])], false));
    out.push(f(
        "[e0,Dhat(d-)] = -2d2-d3- - 2dhat1 f3",
        delta_hat(&fam_dm()),
        vec![term(m(2, 3), -2, &[]), term(dh(1), -2, &[F3])],
        false,
    ));
    out.push(f(
        "[e0,D+(v)] = v1(h0-2) + v2 f1 + v3 f12",
        delta_plus(&v),
        vec![term(var(1), 1, &[H0]), term(var(1), -2, &[]), term(var(2), 1, &[F1]), term(var(3), 1, &[F12])],
        true,
    ));
    out.push(f("[e0,D-(v)] = -2 v1 f3", delta_minus(&v), vec![term(var(1), -2, &[F3])], true));
    out
}

/// [e₀, b]; `printed` selects the printed f₁ coefficient (d⁻₁d⁺₃ + d⁺₁d⁺₃) instead of f₃ applied
/// to d⁺₁d⁺₃, which is d⁻₁d⁺₃ + d⁺₁d⁻₃.
pub fn e0_b(printed: bool) -> Vec<(Poly, Scalar, G0Word)> {
    let mp = |i, j| dm(i) * dp(j);
    let pm = |i, j| dp(i) * dm(j);
    let pp = |i, j| dp(i) * dp(j);
    let f1_coeff = if printed { mp(1, 3) + pp(1, 3) } else { mp(1, 3) + pm(1, 3) };
    vec![
        term(mp(2, 3) + pm(2, 3), 1, &[H0]),
        term(mp(2, 3) + pm(2, 3), -2, &[]),
        term(pp(2, 3), -2, &[F3]),
        term(f1_coeff, -1, &[F1]),
        term(mp(1, 2) + pm(1, 2), 1, &[F12]),
    ]
}

/// Printed forms that differ from `formulas`, with the printed right-hand side.
pub fn printed_variants() -> Vec<CommutatorFormula> {
    let q = build_abcd().expect("abcd relations");
    vec![
        CommutatorFormula {
            name: "[e0,d3+] = -f12 (printed)",
            u: dp(3),
            rhs: vec![term(Poly::one(), -1, &[F12])],
            partial_only: false,
        },
        CommutatorFormula { name: "[e0,b] (printed f1 term)", u: q.b, rhs: e0_b(true), partial_only: false },
    ]
}

/// Modules and T parameters on which the formulas are checked.
pub fn test_modules() -> Vec<(VModule, u32)> {
    let mut out = Vec::new();
    for v in [VModule::p(0), VModule::p(1), VModule::p(2), VModule::q(0), VModule::q(1), VModule::q(2)] {
        for r in 0..=3 {
            out.push((v, r));
        }
    }
    out
}

/// (formula name, holds on every test module).
pub fn check_all() -> Vec<(&'static str, bool)> {
    formulas()
        .iter()
        .map(|f| {
            let ok = test_modules()
                .into_iter()
                .filter(|(v, _)| !f.partial_only || v.family == crate::verma::Family::Partial)
                .all(|(v, r)| f.holds_on(v, r));
            (f.name, ok)
        })
        .collect()
}
