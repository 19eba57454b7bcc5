//! The published lists of highest, quasi-singular and semi-singular vectors, as constructors.
//!
//! Entries whose power of the highest monomial would be negative are left out.
//! Where the published form disagrees with direct computation the entry carries an
//! [`Amendment`]; [`as_published`] recovers the lists exactly as published.

use num_traits::One;

use crate::dops::{d_op, DOp};
use crate::e510::GeneratorId;
use crate::exactalg::scalar::{int, Scalar};
use crate::verma::{phi_lift, Context, Element, Engine, Family, VModule};

use super::notation::*;

#[derive(Debug, Clone, PartialEq)]
pub enum Amendment {
    /// The entry replaces a published expression. `published` is `None` when that
    /// expression is not an element of Λ⁻Λ⁺V (wrong degree).
    Corrected { published: Option<Element>, remark: String },
    /// Missing from the published list.
    Added { remark: String },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Listed {
    pub label: String,
    pub element: Element,
    pub amendment: Option<Amendment>,
}

impl Listed {
    pub fn note(&self) -> Option<String> {
        match &self.amendment {
            None => None,
            Some(Amendment::Corrected { remark, .. }) => Some(format!("corrected entry {}: {remark}", self.label)),
            Some(Amendment::Added { remark }) => Some(format!("added entry {}: {remark}", self.label)),
        }
    }
}

/// The list as published: corrected entries revert to their published form, added ones are dropped.
pub fn as_published(list: &[Listed]) -> Vec<Listed> {
    list.iter()
        .filter_map(|l| match &l.amendment {
            None => Some(l.clone()),
            Some(Amendment::Added { .. }) => None,
            Some(Amendment::Corrected { published, .. }) => {
                published.clone().map(|element| Listed { label: format!("{} [published form]", l.label), element, amendment: None })
            }
        })
        .collect()
}

pub fn amended(list: &[Listed]) -> impl Iterator<Item = &Listed> {
    list.iter().filter(|l| l.amendment.is_some())
}

struct Builder {
    v: VModule,
    ctx: Context<Scalar>,
    sdeg_max: u32,
    out: Vec<Listed>,
}

impl Builder {
    fn new(v: VModule, sdeg_max: u32) -> Self {
        Builder { v, ctx: Context::new(v), sdeg_max, out: Vec::new() }
    }

    /// x₁^{p+k} or ∂₃^{q+k}.
    fn t(&self, k: i64) -> Option<Poly> {
        let i = match self.v.family {
            Family::X => 1,
            Family::Partial => 3,
        };
        var_pow(i, self.v.degree as i64 + k)
    }

    fn push(&mut self, label: impl Into<String>, p: Option<Poly>) {
        self.push_with(label, p, None);
    }

    fn push_with(&mut self, label: impl Into<String>, p: Option<Poly>, amendment: Option<Amendment>) {
        let label = label.into();
        let Some(p) = p else { return };
        let element = p.to_element(&self.ctx).unwrap_or_else(|e| panic!("list entry {label}: {e}"));
        self.push_element(label, element, amendment);
    }

    fn push_element(&mut self, label: String, element: Element, amendment: Option<Amendment>) {
        if element.max_sdeg() <= self.sdeg_max {
            self.out.push(Listed { label, element, amendment });
        }
    }

    fn corrected(&mut self, label: impl Into<String>, p: Option<Poly>, published: Option<Poly>, remark: &str) {
        let published = published.and_then(|q| q.to_element(&self.ctx).ok());
        self.push_with(label, p, Some(Amendment::Corrected { published, remark: remark.into() }));
    }

    fn added(&mut self, label: impl Into<String>, p: Option<Poly>, remark: &str) {
        self.push_with(label, p, Some(Amendment::Added { remark: remark.into() }));
    }

    fn apply(&self, op: &DOp, p: &Poly) -> Poly {
        p.apply(op, self.v).expect("list entry lies in V")
    }
}

fn d(i: u8) -> DOp {
    d_op(i, 0)
}

fn fm() -> Fam {
    fam_dm()
}

fn fp() -> Fam {
    fam_dp()
}

fn fv() -> Fam {
    fam_var()
}

fn q(n: i64) -> Scalar {
    int(n)
}

/// The elements a, b, c, d of U(L₋) in closed form.
pub fn abcd_polys() -> [Poly; 4] {
    let a = dps(&[1, 2, 3]);
    let b = cyc(&fm(), &fp(), &fp()) - delta_hat(&fp());
    let c = cyc(&fm(), &fm(), &fp()) - delta_hat(&fm());
    let d = dms(&[1, 2, 3]);
    [a, b, c, d]
}

/// ⟨d⁻,d⁻,⟨d⁺,d⁺,x⟩x⟩ x₁^k, the entry whose printed exponent is k = p−1.
pub fn nested_cyc_entry(k: i64) -> Option<Poly> {
    let inner = cyc(&fp(), &fp(), &fv());
    var_pow(1, k).map(|t| cyc(&fm(), &fm(), &left(&inner, &fv())) * t)
}

/// sℓ₃-highest vectors of Λ⁻Λ⁺V.
pub fn highest_list(v: VModule) -> Vec<Listed> {
    match v.family {
        Family::X => highest_x(v),
        Family::Partial => highest_partial(v),
    }
}

fn highest_x(v: VModule) -> Vec<Listed> {
    let mut b = Builder::new(v, 0);
    let t = |k| b.t(k);
    let (t0, t1, t2) = (t(0), t(-1), t(-2));
    let (m, p, x) = (fm(), fp(), fv());
    let mx12 = pair(&m, &x, 1, 2);
    let px12 = pair(&p, &x, 1, 2);
    let w = |f: &dyn Fn(Poly) -> Poly, t: &Option<Poly>| t.clone().map(f);
    let mut e: Vec<(&str, Option<Poly>)> = vec![
        ("x₁^p", t0.clone()),
        ("d⁻₁x₁^p", w(&|t| dm(1) * t, &t0)),
        ("d⁺₁x₁^p", w(&|t| dp(1) * t, &t0)),
        ("(d⁻∘x∘)₁₂x₁^{p−1}", w(&|t| &mx12 * t, &t1)),
        ("(d⁺∘x∘)₁₂x₁^{p−1}", w(&|t| &px12 * t, &t1)),
        ("d⁻₁d⁺₁x₁^p", w(&|t| dm(1) * dp(1) * t, &t0)),
        ("d⁻₁₂x₁^p", w(&|t| dms(&[1, 2]) * t, &t0)),
        ("(d⁻∘d⁺∘)₁₂x₁^p", w(&|t| pair(&m, &p, 1, 2) * t, &t0)),
        ("d⁻₁(d⁺∘x∘)₁₂x₁^{p−1}", w(&|t| dm(1) * &px12 * t, &t1)),
        ("d⁺₁₂x₁^p", w(&|t| dps(&[1, 2]) * t, &t0)),
        ("⟨d⁻,d⁻,x⟩x₁^{p−1}", w(&|t| cyc(&m, &m, &x) * t, &t1)),
        ("Δ⁻((d⁺∘x∘))x₁^{p−1}", w(&|t| delta_minus(&cross(&p, &x)) * t, &t1)),
        ("⟨d⁺,d⁺,x⟩x₁^{p−1}", w(&|t| cyc(&p, &p, &x) * t, &t1)),
        ("(d⁻∘(d⁺∘x∘)₁₂x∘)₁₂x₁^{p−2}", w(&|t| pair(&m, &left(&px12, &x), 1, 2) * t, &t2)),
        ("d⁻₁₂d⁺₁x₁^p", w(&|t| dms(&[1, 2]) * dp(1) * t, &t0)),
        ("d⁻₁d⁺₁₂x₁^p", w(&|t| dm(1) * dps(&[1, 2]) * t, &t0)),
        ("d⁻₁₂(d⁺∘x∘)₁₂x₁^{p−1}", w(&|t| dms(&[1, 2]) * &px12 * t, &t1)),
        ("(d⁻∘d⁺₁₂x∘)₁₂x₁^{p−1}", w(&|t| pair(&m, &left(&dps(&[1, 2]), &x), 1, 2) * t, &t1)),
        ("d⁻₁₂₃x₁^p", w(&|t| dms(&[1, 2, 3]) * t, &t0)),
        ("⟨d⁻,d⁻,d⁺⟩x₁^p", w(&|t| cyc(&m, &m, &p) * t, &t0)),
        ("d⁻₁Δ⁻((d⁺∘x∘))x₁^{p−1}", w(&|t| dm(1) * delta_minus(&cross(&p, &x)) * t, &t1)),
        ("⟨d⁻,d⁺,d⁺⟩x₁^p", w(&|t| cyc(&m, &p, &p) * t, &t0)),
        ("d⁻₁⟨d⁺,d⁺,x⟩x₁^{p−1}", w(&|t| dm(1) * cyc(&p, &p, &x) * t, &t1)),
        ("d⁺₁₂₃x₁^p", w(&|t| dps(&[1, 2, 3]) * t, &t0)),
        ("⟨d⁻,d⁻,(d⁺∘x∘)₁₂x⟩x₁^{p−2}", w(&|t| cyc(&m, &m, &left(&px12, &x)) * t, &t2)),
        ("(d⁻∘⟨d⁺,d⁺,x⟩x∘)₁₂x₁^{p−2}", w(&|t| pair(&m, &left(&cyc(&p, &p, &x), &x), 1, 2) * t, &t2)),
        ("d⁻₁₂d⁺₁₂x₁^p", w(&|t| dms(&[1, 2]) * dps(&[1, 2]) * t, &t0)),
        ("d⁻₁₂₃d⁺₁x₁^p", w(&|t| dms(&[1, 2, 3]) * dp(1) * t, &t0)),
        ("d⁻₁⟨d⁻,d⁺,d⁺⟩x₁^p", w(&|t| dm(1) * cyc(&m, &p, &p) * t, &t0)),
        ("d⁻₁d⁺₁₂₃x₁^p", w(&|t| dm(1) * dps(&[1, 2, 3]) * t, &t0)),
        ("d⁻₁₂₃(d⁺∘x∘)₁₂x₁^{p−1}", w(&|t| dms(&[1, 2, 3]) * &px12 * t, &t1)),
        ("⟨d⁻,d⁻,d⁺₁₂x⟩x₁^{p−1}", w(&|t| cyc(&m, &m, &left(&dps(&[1, 2]), &x)) * t, &t1)),
        ("d⁻₁₂⟨d⁺,d⁺,x⟩x₁^{p−1}", w(&|t| dms(&[1, 2]) * cyc(&p, &p, &x) * t, &t1)),
        ("(d⁻∘d⁺₁₂₃x∘)₁₂x₁^{p−1}", w(&|t| pair(&m, &left(&dps(&[1, 2, 3]), &x), 1, 2) * t, &t1)),
        ("d⁻₁₂₃d⁺₁₂x₁^p", w(&|t| dms(&[1, 2, 3]) * dps(&[1, 2]) * t, &t0)),
        ("d⁻₁₂d⁺₁₂₃x₁^p", w(&|t| dms(&[1, 2]) * dps(&[1, 2, 3]) * t, &t0)),
        ("d⁻₁₂₃⟨d⁺,d⁺,x⟩x₁^{p−1}", w(&|t| dms(&[1, 2, 3]) * cyc(&p, &p, &x) * t, &t1)),
        ("⟨d⁻,d⁻,d⁺₁₂₃x⟩x₁^{p−1}", w(&|t| cyc(&m, &m, &left(&dps(&[1, 2, 3]), &x)) * t, &t1)),
        ("d⁻₁₂₃d⁺₁₂₃x₁^p", w(&|t| dms(&[1, 2, 3]) * dps(&[1, 2, 3]) * t, &t0)),
    ];
    for (l, p) in e.drain(..) {
        b.push(l, p);
    }
    let p = v.degree as i64;
    b.corrected(
        "⟨d⁻,d⁻,⟨d⁺,d⁺,x⟩x⟩x₁^{p−2}",
        nested_cyc_entry(p - 2),
        nested_cyc_entry(p - 1),
        "published with x₁^{p−1}, which has x-degree p+1; the exponent p−2 gives the highest vector of this weight",
    );
    b.out
}

fn highest_partial(v: VModule) -> Vec<Listed> {
    let mut b = Builder::new(v, 0);
    let t = |k| b.t(k);
    let (t0, t1, t2) = (t(0), t(-1), t(-2));
    let (m, p, f) = (fm(), fp(), fv());
    let dpl = delta_plus(&f);
    let dmi = delta_minus(&f);
    let dd = delta_minus(&left(&dpl, &f));
    let d3 = dps(&[1, 2, 3]);
    let w = |f: &dyn Fn(Poly) -> Poly, t: &Option<Poly>| t.clone().map(f);
    let mut e: Vec<(&str, Option<Poly>)> = vec![
        ("∂₃^q", t0.clone()),
        ("Δ⁻(∂_*)∂₃^{q−1}", w(&|t| &dmi * t, &t1)),
        ("Δ⁺(∂_*)∂₃^{q−1}", w(&|t| &dpl * t, &t1)),
        ("d⁻₁∂₃^q", w(&|t| dm(1) * t, &t0)),
        ("d⁺₁∂₃^q", w(&|t| dp(1) * t, &t0)),
        ("Δ⁻(Δ⁺(∂_*)∂_*)∂₃^{q−2}", w(&|t| &dd * t, &t2)),
        ("d⁻₁Δ⁻(∂_*)∂₃^{q−1}", w(&|t| dm(1) * &dmi * t, &t1)),
        ("d⁻₁Δ⁺(∂_*)∂₃^{q−1}", w(&|t| dm(1) * &dpl * t, &t1)),
        ("Δ⁻(d⁺₁∂_*)∂₃^{q−1}", w(&|t| delta_minus(&left(&dp(1), &f)) * t, &t1)),
        ("d⁺₁Δ⁺(∂_*)∂₃^{q−1}", w(&|t| dp(1) * &dpl * t, &t1)),
        ("d⁻₁₂∂₃^q", w(&|t| dms(&[1, 2]) * t, &t0)),
        ("(d⁻∘d⁺∘)₁₂∂₃^q", w(&|t| pair(&m, &p, 1, 2) * t, &t0)),
        ("d⁺₁₂∂₃^q", w(&|t| dps(&[1, 2]) * t, &t0)),
        ("d⁻₁d⁺₁∂₃^q", w(&|t| dm(1) * dp(1) * t, &t0)),
        ("d⁻₁Δ⁻(Δ⁺(∂_*)∂_*)∂₃^{q−2}", w(&|t| dm(1) * &dd * t, &t2)),
        ("Δ⁻(d⁺₁Δ⁺(∂_*)∂_*)∂₃^{q−2}", w(&|t| delta_minus(&left(&(dp(1) * &dpl), &f)) * t, &t2)),
        ("d⁻₁₂₃∂₃^q", w(&|t| dms(&[1, 2, 3]) * t, &t0)),
        ("d⁻₁₂Δ⁺(∂_*)∂₃^{q−1}", w(&|t| dms(&[1, 2]) * &dpl * t, &t1)),
        ("⟨d⁻,d⁻,d⁺⟩∂₃^q", w(&|t| cyc(&m, &m, &p) * t, &t0)),
        ("(d⁻∘d⁺∘)₁₂Δ⁺(∂_*)∂₃^{q−1}", w(&|t| pair(&m, &p, 1, 2) * &dpl * t, &t1)),
        ("⟨d⁻,d⁺,d⁺⟩∂₃^q", w(&|t| cyc(&m, &p, &p) * t, &t0)),
        ("d⁺₁₂₃∂₃^q", w(&|t| &d3 * t, &t0)),
        ("d⁻₁Δ⁻(d⁺₁∂_*)∂₃^{q−1}", w(&|t| dm(1) * delta_minus(&left(&dp(1), &f)) * t, &t1)),
        ("d⁻₁d⁺₁Δ⁺(∂_*)∂₃^{q−1}", w(&|t| dm(1) * dp(1) * &dpl * t, &t1)),
        ("d⁻₁₂d⁺₁∂₃^q", w(&|t| dms(&[1, 2]) * dp(1) * t, &t0)),
        ("d⁻₁d⁺₁₂∂₃^q", w(&|t| dm(1) * dps(&[1, 2]) * t, &t0)),
        ("d⁻₁₂₃Δ⁺(∂_*)∂₃^{q−1}", w(&|t| dms(&[1, 2, 3]) * &dpl * t, &t1)),
        ("⟨d⁻,d⁻,d⁺⟩Δ⁺(∂_*)∂₃^{q−1}", w(&|t| cyc(&m, &m, &p) * &dpl * t, &t1)),
        ("Δ⁻(d⁺₁₂₃∂_*)∂₃^{q−1}", w(&|t| delta_minus(&left(&d3, &f)) * t, &t1)),
        ("d⁻₁Δ⁻(d⁺₁Δ⁺(∂_*)∂_*)∂₃^{q−2}", w(&|t| dm(1) * delta_minus(&left(&(dp(1) * &dpl), &f)) * t, &t2)),
        ("d⁻₁₂₃d⁺₁∂₃^q", w(&|t| dms(&[1, 2, 3]) * dp(1) * t, &t0)),
        ("d⁻₁₂d⁺₁Δ⁺(∂_*)∂₃^{q−1}", w(&|t| dms(&[1, 2]) * dp(1) * &dpl * t, &t1)),
        ("d⁻₁⟨d⁻,d⁺,d⁺⟩∂₃^q", w(&|t| dm(1) * cyc(&m, &p, &p) * t, &t0)),
        ("d⁻₁d⁺₁₂₃∂₃^q", w(&|t| dm(1) * &d3 * t, &t0)),
        ("d⁻₁₂d⁺₁₂∂₃^q", w(&|t| dms(&[1, 2]) * dps(&[1, 2]) * t, &t0)),
        ("d⁻₁₂₃d⁺₁Δ⁺(∂_*)∂₃^{q−1}", w(&|t| dms(&[1, 2, 3]) * dp(1) * &dpl * t, &t1)),
        ("d⁻₁Δ⁻(d⁺₁₂₃∂_*)∂₃^{q−1}", w(&|t| dm(1) * delta_minus(&left(&d3, &f)) * t, &t1)),
        ("d⁻₁₂₃d⁺₁₂∂₃^q", w(&|t| dms(&[1, 2, 3]) * dps(&[1, 2]) * t, &t0)),
        ("d⁻₁₂d⁺₁₂₃∂₃^q", w(&|t| dms(&[1, 2]) * &d3 * t, &t0)),
        ("d⁻₁₂₃d⁺₁₂₃∂₃^q", w(&|t| dms(&[1, 2, 3]) * &d3 * t, &t0)),
    ];
    for (l, p) in e.drain(..) {
        b.push(l, p);
    }
    b.out
}

/// Admissible quasi-singular vectors with sdeg ≤ `sdeg_max`.
pub fn quasi_list(v: VModule, sdeg_max: u32) -> Vec<Listed> {
    if v.family == Family::X || v.degree == 0 {
        quasi_x(v, sdeg_max)
    } else {
        quasi_partial(v, sdeg_max)
    }
}

/// (d⁻∘d⁺∘)₁₂x₁^p + p(d⁻∘d⁺₁x∘)₁₂x₁^{p−1}
fn corrected_pair(b: &Builder) -> Poly {
    let p = b.v.degree as i64;
    let mut w = pair(&fm(), &fp(), 1, 2) * b.t(0).unwrap();
    if let Some(t1) = b.t(-1) {
        w = w + pair(&fm(), &left(&dp(1), &fv()), 1, 2).scale(&q(p)) * t1;
    }
    w
}

fn quasi_x(v: VModule, sdeg_max: u32) -> Vec<Listed> {
    let mut b = Builder::new(v, sdeg_max);
    let p = v.degree as i64;
    let n_max = sdeg_max as i64;
    let t0 = b.t(0).unwrap();
    let (m, pl, x) = (fm(), fp(), fv());
    let d3p = dps(&[1, 2, 3]);
    let d3m = dms(&[1, 2, 3]);

    b.push("x₁^p", Some(t0.clone()));
    b.push("d⁺₁x₁^p", Some(dp(1) * &t0));
    b.push("d⁻₁d⁺₁x₁^p", Some(dm(1) * dp(1) * &t0));
    let cp = corrected_pair(&b);
    b.push("(d⁻∘d⁺∘)₁₂x₁^p + p(d⁻∘d⁺₁x∘)₁₂x₁^{p−1}", Some(cp.clone()));
    if p == 0 {
        b.push("d⁺₁₂₃", Some(d3p.clone()));
        b.push("d⁻₁d⁺₁₂₃", Some(dm(1) * &d3p));
        b.push("d⁻₁₂d⁺₁₂₃", Some(dms(&[1, 2]) * &d3p));
        b.push("d⁻₁₂₃d⁺₁₂₃", Some(&d3m * &d3p));
    }

    let a1 = dm(1) * dp(1) * &t0;
    let b1 = dm(1) * pair(&m, &pl, 2, 3) * dp(1) * &t0;
    let c1 = &d3m * &d3p * &t0;
    for n in 1..=n_max.min(p + 2) {
        let mut w = b.apply(&d(1).pow(n as u32), &a1);
        w = w - b.apply(&d(1).pow(n as u32 - 1), &b1).scale(&q(n * (p + 3)));
        if n >= 2 {
            w = w - b.apply(&d(1).pow(n as u32 - 2), &c1).scale(&q(n * (n - 1) * (p + 3) * (p + 2)));
        }
        b.push(format!("(D₁ⁿd⁻₁d⁺₁ − n(p+3)D₁ⁿ⁻¹d⁻₁(d⁻∘d⁺∘)₂₃d⁺₁ − n^[2](p+3)^[2]D₁ⁿ⁻²d⁻₁₂₃d⁺₁₂₃)x₁^p, n={n}"), Some(w));
    }
    if p == 0 {
        for n in 1..=n_max {
            b.push(format!("D₃ⁿd⁻₁₂₃d⁺₁₂₃, n={n}"), Some(b.apply(&d(3).pow(n as u32), &(&d3m * &d3p))));
        }
    }
    if p == 1 {
        let w = delta_hat(&pl) * delta_hat(&x) - cyc(&m, &pl, &pl) * delta_hat(&x) + delta_hat(&m) * cyc(&pl, &pl, &x);
        let tail = cyc(&m, &m, &left(&d3p, &x));
        b.corrected(
            "Δ̂(d⁺_*)Δ̂(x_*) − ⟨d⁻,d⁺,d⁺⟩Δ̂(x_*) + Δ̂(d⁻_*)⟨d⁺,d⁺,x⟩ − ⟨d⁻,d⁻,d⁺₁₂₃x⟩",
            Some(&w - &tail),
            Some(&w + &tail),
            "published with +⟨d⁻,d⁻,d⁺₁₂₃x⟩, which is not killed by e₀⁻",
        );
    }
    let w = b.apply(&d(2), &cp) - dm(1) * pair(&m, &pl, 2, 3) * dp(1) * &t0;
    b.push("D₂((d⁻∘d⁺∘)₁₂x₁^p + p(d⁻∘d⁺₁x∘)₁₂x₁^{p−1}) − d⁻₁(d⁻∘d⁺∘)₂₃d⁺₁x₁^p", Some(w));
    if p == 1 {
        let w = delta_hat(&x) - delta_minus(&cross(&pl, &x)).scale(&scalar(1, 2));
        b.push("Δ̂(x_*) − ½Δ⁻((d⁺∘x∘))", Some(w));
        let w = b.apply(&d(1), &(dp(1) * var(1))).scale(&scalar(1, 3)) - cyc(&m, &pl, &pl) * var(1)
            + dm(1) * cyc(&pl, &pl, &x);
        b.push("⅓D₁d⁺₁x₁ − ⟨d⁻,d⁺,d⁺⟩x₁ + d⁻₁⟨d⁺,d⁺,x⟩", Some(w));
        let f1x = (dp(1) * var(1)).act(GeneratorId::F1, v).unwrap();
        let inner = dm(1) * f1x - (dm(2) * dp(1) * var(1)).scale(&q(2));
        let s = cyc(&m, &m, &left(&dps(&[1, 2]), &x)) + dms(&[1, 2]) * cyc(&pl, &pl, &x);
        let d1 = b.apply(&d(1), &inner);
        b.corrected(
            "D₁(d⁻₁f₁(d⁺₁x₁) − 2d⁻₂d⁺₁x₁) + 3(⟨d⁻,d⁻,d⁺₁₂x⟩ + d⁻₁₂⟨d⁺,d⁺,x⟩)",
            Some(&d1 + &s.scale(&q(3))),
            Some(&d1 - &s.scale(&q(3))),
            "published with −3(…), which is not killed by e₀⁻",
        );
        let w = b.apply(&d(1).mul(&d(2)), &inner)
            - b.apply(&d(1), &(dm(1) * pair(&m, &pl, 2, 3) * dp(1) * var(1))).scale(&scalar(1, 2))
            + b.apply(&d(2), &s).scale(&scalar(9, 2))
            - (&d3m * &d3p * var(1)).scale(&q(6));
        b.added(
            "D₁D₂(d⁻₁f₁(d⁺₁x₁) − 2d⁻₂d⁺₁x₁) − ½D₁d⁻₁(d⁻∘d⁺∘)₂₃d⁺₁x₁ + 9/2D₂(⟨d⁻,d⁻,d⁺₁₂x⟩ + d⁻₁₂⟨d⁺,d⁺,x⟩) − 6d⁻₁₂₃d⁺₁₂₃x₁",
            Some(w),
            "quasi-singular of weight ((1,0), 0) and sdeg 2, absent from the published list",
        );
    }
    if p == 0 {
        b.push("Δ̂(d⁺_*) − ⟨d⁻,d⁺,d⁺⟩", Some(delta_hat(&pl) - cyc(&m, &pl, &pl)));
        b.push("Δ̂(d⁻_*)d⁺₁₂₃", Some(delta_hat(&m) * &d3p));
        b.push("(∂̂₂d⁻₁₂ + ∂̂₃d⁻₁₃)d⁺₁₂₃", Some((dh(2) * dms(&[1, 2]) + dh(3) * dms(&[1, 3])) * &d3p));
    }
    b.out
}

fn quasi_partial(v: VModule, sdeg_max: u32) -> Vec<Listed> {
    let mut b = Builder::new(v, sdeg_max);
    let qd = v.degree as i64;
    let n_max = sdeg_max as i64;
    let (m, pl, f) = (fm(), fp(), fv());
    let t0 = b.t(0).unwrap();
    let t1 = b.t(-1).unwrap();
    let dpl = delta_plus(&f);
    let dd = delta_minus(&left(&dpl, &f));
    let d3p = dps(&[1, 2, 3]);
    let d3m = dms(&[1, 2, 3]);
    let mmp = cyc(&m, &m, &pl);
    let dm_d3p = delta_minus(&left(&d3p, &f));
    let dm_dp1dpl = delta_minus(&left(&(dp(1) * &dpl), &f));

    b.push("∂₃^q", Some(t0.clone()));
    b.push("Δ⁺(∂_*)∂₃^{q−1}", Some(&dpl * &t1));
    b.push("d⁻₁Δ⁺(∂_*)∂₃^{q−1}", Some(dm(1) * &dpl * &t1));
    if qd >= 2 {
        b.push("Δ⁻(Δ⁺(∂_*)∂_*)∂₃^{q−2}", Some(&dd * b.t(-2).unwrap()));
    }
    if qd == 1 {
        b.push("d⁺₁Δ⁺(∂_*)", Some(dp(1) * &dpl));
        b.push("(d⁻∘d⁺∘)₁₂Δ⁺(∂_*)", Some(pair(&m, &pl, 1, 2) * &dpl));
        b.push("d⁻₁d⁺₁Δ⁺(∂_*)", Some(dm(1) * dp(1) * &dpl));
        b.push("⟨d⁻,d⁻,d⁺⟩Δ⁺(∂_*)", Some(&mmp * &dpl));
        b.push("d⁻₁₂d⁺₁Δ⁺(∂_*)", Some(dms(&[1, 2]) * dp(1) * &dpl));
    }

    if qd >= 2 {
        let t2 = b.t(-2).unwrap();
        let a1 = &dd * &t2;
        let b1 = &mmp * &dpl * &t1;
        let c1 = &d3m * &d3p * &t0;
        for n in 1..=n_max {
            let mut w = b.apply(&d(3).pow(n as u32), &a1);
            w = w + b.apply(&d(3).pow(n as u32 - 1), &b1).scale(&(q(n) / q(qd - 1)));
            if n >= 2 {
                w = w - b.apply(&d(3).pow(n as u32 - 2), &c1).scale(&(q(n * (n - 1)) / q(qd * (qd - 1))));
            }
            b.push(
                format!("D₃ⁿΔ⁻(Δ⁺(∂_*)∂_*)∂₃^{{q−2}} + n/(q−1)D₃ⁿ⁻¹⟨d⁻,d⁻,d⁺⟩Δ⁺(∂_*)∂₃^{{q−1}} − n^[2]/q^[2]D₃ⁿ⁻²d⁻₁₂₃d⁺₁₂₃∂₃^q, n={n}"),
                Some(w),
            );
        }
    }
    let w = b.apply(&d(1), &(dm(1) * &dpl * &t1));
    let tail = &mmp * &dpl * &t1;
    let label = "D₁d⁻₁Δ⁺(∂_*)∂₃^{q−1} − ⟨d⁻,d⁻,d⁺⟩Δ⁺(∂_*)∂₃^{q−1}";
    if qd == 1 {
        // both summands are listed separately, so the sign is immaterial
        b.push(label, Some(&w - &tail));
    } else {
        b.corrected(
            label,
            Some(&w - &tail),
            Some(&w + &tail),
            "published with +⟨d⁻,d⁻,d⁺⟩Δ⁺(∂_*)∂₃^{q−1}, which is not killed by e₀⁻",
        );
    }
    if qd == 2 {
        b.added("D₂Δ⁺(∂_*)∂₃ − Δ⁻(d⁺₁Δ⁺(∂_*)∂_*)", Some(partial_q2_extra()), Q2_EXTRA);
        let base = dm(1) * &dpl * var(3);
        let w = b.apply(&d(1).mul(&d(2)), &base)
            - b.apply(&d(1), &(dm(1) * &dm_dp1dpl)).scale(&scalar(1, 2))
            - b.apply(&d(2), &(&mmp * &dpl * var(3))).scale(&scalar(3, 2));
        b.push("D₁D₂d⁻₁Δ⁺(∂_*)∂₃ − ½D₁d⁻₁Δ⁻(d⁺₁Δ⁺(∂_*)∂_*) − 3/2D₂⟨d⁻,d⁻,d⁺⟩Δ⁺(∂_*)∂₃", Some(w));
        let w = b.apply(&d(2), &base) - dm(1) * &dm_dp1dpl;
        b.push("D₂d⁻₁Δ⁺(∂_*)∂₃ − d⁻₁Δ⁻(d⁺₁Δ⁺(∂_*)∂_*)", Some(w));
    }
    if qd == 1 {
        let w = b.apply(&d(2), &var(3)) - delta_minus(&left(&dp(1), &f));
        b.push("D₂∂₃ − Δ⁻(d⁺₁∂_*)", Some(w));
        let w = b.apply(&d(1), &(dp(1) * &dpl)) - dm_d3p.scale(&q(2));
        b.push("D₁d⁺₁Δ⁺(∂_*) − 2Δ⁻(d⁺₁₂₃∂_*)", Some(w));
        let w = b.apply(&d(2), &(pair(&m, &pl, 1, 2) * &dpl)) - dm(1) * &dm_d3p;
        b.push("D₂(d⁻∘d⁺∘)₁₂Δ⁺(∂_*) − d⁻₁Δ⁻(d⁺₁₂₃∂_*)", Some(w));
        for n in 1..=n_max {
            let w = b.apply(&d(3).pow(n as u32), &(&mmp * &dpl))
                - b.apply(&d(3).pow(n as u32 - 1), &(&d3m * &d3p * var(3))).scale(&q(n));
            b.push(format!("D₃ⁿ⟨d⁻,d⁻,d⁺⟩Δ⁺(∂_*) − nD₃ⁿ⁻¹d⁻₁₂₃d⁺₁₂₃∂₃, n={n}"), Some(w));
        }
        let w = b.apply(&d(1), &(dms(&[1, 2]) * dp(1) * &dpl)) - (&d3m * &d3p * var(3)).scale(&q(2));
        b.push("D₁d⁻₁₂d⁺₁Δ⁺(∂_*) − 2d⁻₁₂₃d⁺₁₂₃∂₃", Some(w));
        for n in 1..=n_max.min(2) {
            let w = b.apply(&d(1).pow(n as u32), &(dm(1) * dp(1) * &dpl))
                - b.apply(&d(1).pow(n as u32 - 1), &(dm(1) * &dm_d3p)).scale(&q(3 * n));
            b.push(format!("D₁ⁿd⁻₁d⁺₁Δ⁺(∂_*) − 3nD₁ⁿ⁻¹d⁻₁Δ⁻(d⁺₁₂₃∂_*), n={n}"), Some(w));
        }
        let w = (dh(2) * dms(&[1, 2]) + dh(3) * dms(&[1, 3])) * dp(1) * &dpl;
        b.added(
            "(∂̂₂d⁻₁₂ + ∂̂₃d⁻₁₃)d⁺₁Δ⁺(∂_*)",
            Some(w),
            "quasi-singular of weight ((2,0), 0) and sdeg 1, absent from the published list",
        );
        b.added(Q1_EXTRA_LABEL, Some(partial_q1_extra()), Q1_EXTRA);
    }
    b.out
}

/// Admissible semi-singular vectors with sdeg ≤ `sdeg_max`.
pub fn semi_list(v: VModule, sdeg_max: u32) -> Vec<Listed> {
    let mut b = Builder::new(v, sdeg_max);
    let (m, pl, f) = (fm(), fp(), fv());
    let d3p = dps(&[1, 2, 3]);
    let t0 = b.t(0).unwrap();
    if v.family == Family::X || v.degree == 0 {
        let p = v.degree;
        b.push("x₁^p", Some(t0.clone()));
        b.push("d⁺₁x₁^p", Some(dp(1) * &t0));
        b.push("d⁻₁d⁺₁x₁^p", Some(dm(1) * dp(1) * &t0));
        if p == 0 {
            let bb = delta_hat(&pl) - cyc(&m, &pl, &pl);
            b.push("d⁺₁₂₃", Some(d3p.clone()));
            b.push("d⁻₁d⁺₁₂₃", Some(dm(1) * &d3p));
            b.push("d⁻₁₂₃d⁺₁₂₃", Some(dms(&[1, 2, 3]) * &d3p));
            b.push("Δ̂(d⁺_*) − ⟨d⁻,d⁺,d⁺⟩", Some(bb.clone()));
            b.push("Δ̂(d⁻_*)(Δ̂(d⁺_*) − ⟨d⁻,d⁺,d⁺⟩)", Some(delta_hat(&m) * &bb));
            b.push("d⁻₁(Δ̂(d⁺_*) − ⟨d⁻,d⁺,d⁺⟩)", Some(dm(1) * &bb));
            b.push("Δ̂(d⁻_*)d⁺₁₂₃", Some(delta_hat(&m) * &d3p));
            b.push("(∂̂₂d⁻₁₂ + ∂̂₃d⁻₁₃)d⁺₁₂₃", Some((dh(2) * dms(&[1, 2]) + dh(3) * dms(&[1, 3])) * &d3p));
        }
        return b.out;
    }
    let qd = v.degree;
    let dpl = delta_plus(&f);
    let dm_d3p = delta_minus(&left(&d3p, &f));
    b.push("∂₃^q", Some(t0.clone()));
    b.push("Δ⁺(∂_*)∂₃^{q−1}", Some(&dpl * b.t(-1).unwrap()));
    if qd == 2 {
        b.push("Δ⁻(Δ⁺(∂_*)∂_*)", Some(delta_minus(&left(&dpl, &f))));
        let w = dh(2) * dm(1) * &dpl * var(3) - dh(3) * dm(1) * &dpl * var(2)
            - dm(1) * delta_minus(&left(&(dp(1) * &dpl), &f));
        b.push("∂̂₂d⁻₁Δ⁺(∂_*)∂₃ − ∂̂₃d⁻₁Δ⁺(∂_*)∂₂ − d⁻₁Δ⁻(d⁺₁Δ⁺(∂_*)∂_*)", Some(w));
        b.added("D₂Δ⁺(∂_*)∂₃ − Δ⁻(d⁺₁Δ⁺(∂_*)∂_*)", Some(partial_q2_extra()), Q2_EXTRA);
    }
    if qd >= 3 {
        let w = delta_minus(&left(&dpl, &f)) * b.t(-2).unwrap();
        b.added("Δ⁻(Δ⁺(∂_*)∂_*)∂₃^{q−2}", Some(w), Q_GE3_EXTRA);
    }
    if qd == 1 {
        b.push("d⁺₁Δ⁺(∂_*)", Some(dp(1) * &dpl));
        b.push("d⁻₁Δ⁺(∂_*)", Some(dm(1) * &dpl));
        b.push("d⁻₁d⁺₁Δ⁺(∂_*)", Some(dm(1) * dp(1) * &dpl));
        let w = dh(2) * var(3) - dh(3) * var(2) - delta_minus(&left(&dp(1), &f));
        b.push("∂̂₂∂₃ − ∂̂₃∂₂ − Δ⁻(d⁺₁∂_*)", Some(w));
        let w = (delta_hat(&m) - cyc(&m, &m, &pl)) * &dpl;
        b.push("(Δ̂(d⁻_*) − ⟨d⁻,d⁻,d⁺⟩)Δ⁺(∂_*)", Some(w));
        let w = delta_hat(&pl) * &dpl - &dm_d3p;
        b.push("(∂̂₁d⁺₁ + ∂̂₂d⁺₂ + ∂̂₃d⁺₃)Δ⁺(∂_*) − Δ⁻(d⁺₁₂₃∂_*)", Some(w));
        let w = delta_hat(&left(&dm(1), &pl)) * &dpl - dm(1) * &dm_d3p;
        b.push("(∂̂₁d⁻₁d⁺₁ + ∂̂₂d⁻₁d⁺₂ + ∂̂₃d⁻₁d⁺₃)Δ⁺(∂_*) − d⁻₁Δ⁻(d⁺₁₂₃∂_*)", Some(w));
        let w = b.apply(&d(1).pow(2), &(dm(1) * dp(1) * &dpl)) - b.apply(&d(1), &(dm(1) * &dm_d3p)).scale(&q(6));
        b.push("D₁²d⁻₁d⁺₁Δ⁺(∂_*) − 6D₁d⁻₁Δ⁻(d⁺₁₂₃∂_*)", Some(w));
        b.added(Q1_EXTRA_LABEL, Some(partial_q1_extra()), Q1_EXTRA);
    }
    b.out
}

const Q2_EXTRA: &str = "quasi- and semi-singular of weight ((1,0), 1) and sdeg 1 for q = 2, absent from the published lists";
const Q_GE3_EXTRA: &str = "semi-singular for every q ≥ 2; published for q = 2 only";
const Q1_EXTRA_LABEL: &str = "D₁D₂d⁻₁₂d⁺₁Δ⁺(∂_*) − 3D₂d⁻₁₂₃d⁺₁₂₃∂₃";
const Q1_EXTRA: &str = "quasi- and semi-singular of weight ((1,0), 0) and sdeg 2 for q = 1, absent from the published lists";

/// D₂Δ⁺(∂_*)∂₃ − Δ⁻(d⁺₁Δ⁺(∂_*)∂_*) in F(0,2).
pub fn partial_q2_extra() -> Poly {
    let v = VModule::q(2);
    let f = fv();
    let dpl = delta_plus(&f);
    (&dpl * var(3)).apply(&d(2), v).unwrap() - delta_minus(&left(&(dp(1) * &dpl), &f))
}

/// D₁D₂d⁻₁₂d⁺₁Δ⁺(∂_*) − 3D₂d⁻₁₂₃d⁺₁₂₃∂₃ in F(0,1).
pub fn partial_q1_extra() -> Poly {
    let v = VModule::q(1);
    let dpl = delta_plus(&fv());
    let a = (dms(&[1, 2]) * dp(1) * &dpl).apply(&d(1).mul(&d(2)), v).unwrap();
    let c = (dms(&[1, 2, 3]) * dps(&[1, 2, 3]) * var(3)).apply(&d(2), v).unwrap();
    a - c.scale(&q(3))
}

/// All semi-singular sℓ₂-weight vectors (both signs of wt₂) with sdeg ≤ `sdeg_max`.
pub fn full_semi_list(v: VModule, sdeg_max: u32) -> Vec<Listed> {
    let mut b = Builder::new(v, sdeg_max);
    let (m, f) = (fm(), fv());
    let [a, bb, c, dd] = abcd_polys();
    let dhm = delta_hat(&m);
    let t0 = b.t(0).unwrap();
    if v.family == Family::X || v.degree == 0 {
        b.push("x₁^p", Some(t0.clone()));
        b.push("d⁺₁x₁^p", Some(dp(1) * &t0));
        b.push("d⁻₁x₁^p", Some(dm(1) * &t0));
        b.push("d⁻₁d⁺₁x₁^p", Some(dm(1) * dp(1) * &t0));
        if v.degree == 0 {
            b.push("a", Some(a.clone()));
            b.push("b", Some(bb.clone()));
            b.push("c", Some(c.clone()));
            b.push("d", Some(dd.clone()));
            b.push("d⁻₁a", Some(dm(1) * &a));
            b.push("d⁻₁b", Some(dm(1) * &bb));
            b.push("d⁻₁c", Some(dm(1) * &c));
            b.push("Δ̂(d⁻_*)a", Some(&dhm * &a));
            b.push("Δ̂(d⁻_*)b", Some(&dhm * &bb));
            b.push("Δ̂(d⁻_*)c", Some(&dhm * &c));
            b.push("da − ad", Some(&dd * &a - &a * &dd));
            b.push("d⁻₁Δ̂(d⁻_*)a", Some(dm(1) * &dhm * &a));
            b.push("d⁻₁Δ̂(d⁻_*)b", Some(dm(1) * &dhm * &bb));
        }
        return b.out;
    }
    let missing = "semi-singular of lowest sℓ₂-weight, absent from the published list";
    let qd = v.degree;
    let dpl = delta_plus(&f);
    let dmi = delta_minus(&f);
    let t1 = b.t(-1).unwrap();
    b.push("∂₃^q", Some(t0.clone()));
    b.push("Δ⁺(∂_*)∂₃^{q−1}", Some(&dpl * &t1));
    b.push("Δ⁻(∂_*)∂₃^{q−1}", Some(&dmi * &t1));
    if qd == 1 {
        b.push("d⁺₁Δ⁺(∂_*)", Some(dp(1) * &dpl));
        b.push("d⁻₁Δ⁺(∂_*)", Some(dm(1) * &dpl));
        b.push("d⁻₁Δ⁻(∂_*)", Some(dm(1) * &dmi));
        b.push("d⁺₁Δ⁻(∂_*)", Some(dp(1) * &dmi));
        b.push("d⁻₁d⁺₁Δ⁺(∂_*)", Some(dm(1) * dp(1) * &dpl));
        b.push("bΔ⁺(∂_*)", Some(&bb * &dpl));
        b.push("cΔ⁺(∂_*)", Some(&c * &dpl));
        b.push("dΔ⁺(∂_*)", Some(&dd * &dpl));
        b.push("d⁻₁aΔ⁻(∂_*)", Some(dm(1) * &a * &dmi));
        b.push("d⁻₁bΔ⁻(∂_*)", Some(dm(1) * &bb * &dmi));
        b.push("Δ̂(d⁻_*)bΔ⁺(∂_*)", Some(&dhm * &bb * &dpl));
        b.push("Δ̂(d⁻_*)cΔ⁺(∂_*)", Some(&dhm * &c * &dpl));
        b.added("d⁻₁d⁺₁Δ⁻(∂_*)", Some(dm(1) * dp(1) * &dmi), missing);
        b.added(Q1_EXTRA_LABEL, Some(partial_q1_extra()), Q1_EXTRA);
    }
    if qd == 2 {
        let dd2 = delta_minus(&left(&dpl, &f));
        b.push("Δ⁻(Δ⁺(∂_*)∂_*)", Some(dd2.clone()));
        b.push("d⁻₁d⁺₁Δ⁻(Δ⁺(∂_*)∂_*)", Some(dm(1) * dp(1) * &dd2));
        let y = partial_q2_extra();
        b.added("D₂Δ⁺(∂_*)∂₃ − Δ⁻(d⁺₁Δ⁺(∂_*)∂_*)", Some(y.clone()), Q2_EXTRA);
        let e = y.to_element(&b.ctx).unwrap();
        let phi = phi_lift(Engine::standard(), &e).unwrap();
        b.push_element("φ(D₂Δ⁺(∂_*)∂₃ − Δ⁻(d⁺₁Δ⁺(∂_*)∂_*))".into(), phi, Some(Amendment::Added { remark: missing.into() }));
    }
    if qd >= 3 {
        let w = delta_minus(&left(&dpl, &f)) * b.t(-2).unwrap();
        b.added("Δ⁻(Δ⁺(∂_*)∂_*)∂₃^{q−2}", Some(w), Q_GE3_EXTRA);
    }
    b.out
}

/// Sum of terms in the printed forms of two entries whose index pattern looks transposed:
/// returns (printed, transposed) for the udeg-2 entry of the ∂ list, q = 1.
pub fn printed_udeg2_partial() -> (Poly, Poly) {
    let f = fv();
    let tail = delta_minus(&left(&dp(1), &f));
    let printed = dh(2) * var(2) - dh(3) * var(3) - &tail;
    let transposed = dh(2) * var(3) - dh(3) * var(2) - &tail;
    (printed, transposed)
}

/// (printed, transposed) for the udeg-4 entry d⁻₁d⁺₁Δ⁻(Δ⁺(∂_*)∂_*) of the ∂ list, q = 2.
pub fn printed_udeg4_partial() -> (Poly, Poly) {
    let f = fv();
    let dpl = delta_plus(&f);
    let tail = dm(1) * delta_minus(&left(&(dp(1) * &dpl), &f));
    let printed = dh(2) * dm(1) * &dpl * var(2) - dh(3) * dm(1) * &dpl * var(3) - &tail;
    let transposed = dh(2) * dm(1) * &dpl * var(3) - dh(3) * dm(1) * &dpl * var(2) - &tail;
    (printed, transposed)
}

/// −1/12 (D₁²d⁻₁d⁺₁Δ⁺(∂_*) − 6D₁d⁻₁Δ⁻(d⁺₁₂₃∂_*)) in F(0,1).
pub fn dhat_b_delta_plus_d_form() -> Poly {
    let v = VModule::q(1);
    let f = fv();
    let dpl = delta_plus(&f);
    let dm_d3p = delta_minus(&left(&dps(&[1, 2, 3]), &f));
    let one = |op: DOp, p: Poly| p.apply(&op, v).unwrap();
    let w = one(d(1).pow(2), dm(1) * dp(1) * &dpl) - one(d(1), dm(1) * dm_d3p).scale(&q(6));
    w.scale(&(-Scalar::one() / q(12)))
}
