//! The eleven families of g₀-highest singular vectors in M(V ⊗ T(r,θ)).

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use thiserror::Error;

use crate::classify::notation::*;
use crate::e510::GeneratorId;
use crate::exactalg::scalar::{int, Scalar};
use crate::exactalg::theta::ThetaPoly;
use crate::verma::format::{render, Style};
use crate::verma::{weight, Context, Element, Engine, Family, MElement, ThetaElement, VModule, Weight};

use super::abcd::build_abcd;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CaseId {
    C1a,
    C1b,
    C2,
    C3,
    C4,
    C5,
    C6,
    C7,
    C8,
    C9,
    C10,
    C11,
}

use CaseId::*;

impl CaseId {
    pub fn all() -> [CaseId; 12] {
        [C1a, C1b, C2, C3, C4, C5, C6, C7, C8, C9, C10, C11]
    }

    pub fn label(self) -> &'static str {
        ["1a", "1b", "2", "3", "4", "5", "6", "7", "8", "9", "10", "11"][self as usize]
    }

    /// Family of V the case lives in (cases 3–6 have V trivial).
    pub fn family(self) -> Family {
        match self {
            C7 | C8 | C9 | C10 | C11 => Family::Partial,
            _ => Family::X,
        }
    }

    /// θ as printed.
    pub fn printed_theta(self, r: u32) -> Scalar {
        let r = r as i64;
        int(match self {
            C1a | C6 | C10 | C11 => 0,
            C1b => 2 * r + 2,
            C2 | C9 => 2,
            C3 | C7 => -2,
            C4 | C8 => 2 * r,
            C5 => 4,
        })
    }

    /// θ at which the printed combination is singular. Differs from the printed value only for case 6.
    pub fn theta(self, r: u32) -> Scalar {
        match self {
            C6 => int(2),
            _ => self.printed_theta(r),
        }
    }

    /// Parameter constraints: `n` is p or q (the degree of V), `r` the T parameter.
    pub fn check_domain(self, family: Family, n: u32, r: u32) -> Result<(), CaseError> {
        let fail = |c: &str| Err(CaseError::Domain { case: self, constraint: c.to_string() });
        let ok_family = n == 0 || family == self.family();
        if !ok_family {
            return fail(match self.family() {
                Family::X => "q = 0",
                Family::Partial => "p = 0",
            });
        }
        match self {
            C1a => Ok(()),
            C1b if r < 1 => fail("r ≥ 1"),
            C2 if r != 0 => fail("r = 0"),
            C3 | C4 | C5 | C6 if n != 0 => fail("p = q = 0"),
            C4 if r < 3 => fail("r ≥ 3"),
            C5 if r != 2 => fail("r = 2"),
            C6 if r != 1 => fail("r = 1"),
            C7 | C8 | C9 | C10 | C11 if n < 1 => fail("q ≥ 1"),
            C8 if r < 1 => fail("r ≥ 1"),
            C9 if n != 1 => fail("q = 1"),
            C9 if r != 1 => fail("r = 1"),
            C10 if n < 2 => fail("q ≥ 2"),
            C10 if r != 0 => fail("r = 0"),
            C11 if n != 1 => fail("q = 1"),
            C11 if r != 0 => fail("r = 0"),
            _ => Ok(()),
        }
    }

    /// Cases whose domain contains (V, r).
    pub fn in_range(v: VModule, r: u32) -> Vec<CaseId> {
        CaseId::all().into_iter().filter(|c| c.check_domain(v.family, v.degree, r).is_ok()).collect()
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for CaseId {
    type Err = CaseError;
    fn from_str(s: &str) -> Result<Self, CaseError> {
        CaseId::all().into_iter().find(|c| c.label() == s).ok_or_else(|| CaseError::Unknown(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CaseError {
    #[error("case {case} requires {constraint}")]
    Domain { case: CaseId, constraint: String },
    #[error("unknown case {0}")]
    Unknown(String),
}

/// (U(L₋) ⊗ V part, T index j) pairs; j indexes z₊^{r−j}z₋^j.
fn components(case: CaseId, n: u32) -> Vec<(Poly, u8)> {
    let q = build_abcd().expect("abcd relations");
    let (a, b, c, d) = (q.a, q.b, q.c, q.d);
    let v = fam_var();
    let xp = var(1).pow(n);
    let d3 = |k: u32| var(3).pow(k);
    let dpl = delta_plus(&v);
    let dmi = delta_minus(&v);
    let dhm = delta_hat(&fam_dm());
    match case {
        C1a => vec![(dp(1) * &xp, 0)],
        C1b => vec![(dp(1) * &xp, 1), (-(dm(1) * &xp), 0)],
        C2 => vec![(dp(1) * dm(1) * &xp, 0)],
        C3 => vec![(a, 0)],
        C4 => vec![(a, 3), (-b, 2), (c, 1), (-d, 0)],
        C5 => vec![(dm(1) * a, 2), (-(dm(1) * b), 1), (dm(1) * c, 0)],
        C6 => vec![(&dhm * &a, 1), (-(&d * &a + &dhm * &b), 0)],
        C7 => vec![(dpl * d3(n - 1), 0)],
        C8 => vec![(dpl * d3(n - 1), 1), (-(dmi * d3(n - 1)), 0)],
        C9 => vec![(dp(1) * dpl, 1), (-(dp(1) * dmi), 0)],
        C10 => vec![(delta_minus(&left(&dpl, &v)) * d3(n - 2), 0)],
        C11 => vec![(b * dpl, 0)],
    }
}

fn assemble<C: crate::Coeff>(case: CaseId, v: VModule, ctx: &Context<C>) -> MElement<C> {
    let plain = Context::new(v);
    let mut out = MElement::zero(ctx);
    for (p, j) in components(case, v.degree) {
        let e = p.to_element(&plain).expect("V degree matches");
        let e: MElement<C> = e.map_coeffs(&ctx.without_t(), |c| C::from(c.clone()));
        out = out.add(&e.tensor_t(ctx, j));
    }
    out
}

/// The printed vector of `case` in M(V ⊗ T(r,θ)) for V = F(p=n) or F(q=n), θ given.
pub fn singular_vector_in(case: CaseId, v: VModule, r: u32, theta: Scalar) -> Result<Element, CaseError> {
    case.check_domain(v.family, v.degree, r)?;
    Ok(assemble(case, v, &Context::with_t(v, r, theta)))
}

/// Same, with formal θ.
pub fn singular_vector_formal(case: CaseId, v: VModule, r: u32) -> Result<ThetaElement, CaseError> {
    case.check_domain(v.family, v.degree, r)?;
    Ok(assemble(case, v, &Context::<ThetaPoly>::formal(v, r)))
}

/// The vector of `case` with parameter p or q = `n`, at the verified θ of the case.
pub fn singular_vector(case: CaseId, n: u32, r: u32) -> Result<Element, CaseError> {
    let v = match case.family() {
        Family::X => VModule::p(n),
        Family::Partial => VModule::q(n),
    };
    singular_vector_in(case, v, r, case.theta(r))
}

/// Operators a g₀-highest singular vector is killed by.
pub const SINGULAR_OPS: [GeneratorId; 5] =
    [GeneratorId::E1, GeneratorId::E2, GeneratorId::E3Sl2, GeneratorId::E0, GeneratorId::E0Minus];

#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub op: String,
    pub residual: Element,
    pub rendered: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verification {
    pub singular: bool,
    pub weight: Option<Weight<Scalar>>,
    pub failures: Vec<Failure>,
}

/// Checks every operator of `SINGULAR_OPS` and that `m` is a weight vector.
pub fn verify_singular(m: &Element) -> Verification {
    let eng = Engine::standard();
    let mut failures = Vec::new();
    if m.is_zero() {
        failures.push(Failure { op: "nonzero".into(), residual: m.clone(), rendered: "0".into() });
    }
    let w = weight(eng, m);
    if let Err(e) = &w {
        failures.push(Failure { op: "weight".into(), residual: MElement::zero(&m.ctx), rendered: e.to_string() });
    }
    for g in SINGULAR_OPS {
        let img = eng.act_gen(g, m);
        if !img.is_zero() {
            let rendered = render(&img, Style::Math);
            failures.push(Failure { op: g.name(), residual: img, rendered });
        }
    }
    Verification { singular: failures.is_empty(), weight: w.ok(), failures }
}

/// Values of θ for which a formal-θ element is killed by `SINGULAR_OPS`.
#[derive(Debug, Clone, PartialEq)]
pub enum ThetaSet {
    Any,
    Values(Vec<Scalar>),
}

pub fn singular_thetas(m: &ThetaElement) -> ThetaSet {
    let eng = Engine::standard();
    let mut g = ThetaPoly::zero();
    for op in SINGULAR_OPS {
        for (_, c) in eng.act_gen(op, m).terms() {
            g = g.gcd(c);
        }
    }
    if g.is_zero() {
        return ThetaSet::Any;
    }
    ThetaSet::Values(g.rational_roots())
}

/// θ report for one case: printed value against the values the computation allows.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaReport {
    pub case: CaseId,
    pub n: u32,
    pub r: u32,
    pub printed: Scalar,
    pub verified: ThetaSet,
}

impl ThetaReport {
    pub fn agrees(&self) -> bool {
        matches!(&self.verified, ThetaSet::Values(v) if v.len() == 1 && v[0] == self.printed)
    }
}

pub fn theta_report(case: CaseId, v: VModule, r: u32) -> Result<ThetaReport, CaseError> {
    let m = singular_vector_formal(case, v, r)?;
    Ok(ThetaReport { case, n: v.degree, r, printed: case.printed_theta(r), verified: singular_thetas(&m) })
}

/// Components of the combination v₂ + v₃ (equal coefficients) that the case analysis arrives at
/// for cases 6 and 9, in the r = 1 (and q = 1) module where they live.
fn proof_components(case: CaseId) -> Option<Vec<(Poly, u8)>> {
    let q = build_abcd().expect("abcd relations");
    let (a, b, d) = (q.a, q.b, q.d);
    let v = fam_var();
    let dhm = delta_hat(&fam_dm());
    let two = scalar(2, 1);
    match case {
        // v₂ = Δ̂(d⁻)(b·z₊ − 2a·z₋), v₃ = (da − ad)·z₊ = (2da + Δ̂(d⁻)b)·z₊
        C6 => Some(vec![
            (&dhm * &b, 0),
            ((&dhm * &a).scale(&-two.clone()), 1),
            ((&d * &a).scale(&two) + &dhm * &b, 0),
        ]),
        // v₂ = (d⁺₁Δ⁻ + d⁻₁Δ⁺)·z₊ − 2d⁺₁Δ⁺·z₋, v₃ = (d⁺₁Δ⁻ − d⁻₁Δ⁺)·z₊
        C9 => {
            let (pl, mi) = (delta_plus(&v), delta_minus(&v));
            Some(vec![
                (dp(1) * &mi + dm(1) * &pl, 0),
                ((dp(1) * &pl).scale(&-two), 1),
                (dp(1) * &mi - dm(1) * &pl, 0),
            ])
        }
        _ => None,
    }
}

/// The proof's combination for case 6 or 9, and λ with combination = λ · printed vector.
#[derive(Debug, Clone, PartialEq)]
pub struct ProofComparison {
    pub case: CaseId,
    pub theta: Scalar,
    pub combination: Element,
    pub printed: Element,
    pub ratio: Option<Scalar>,
}

pub fn proof_comparison(case: CaseId) -> Option<ProofComparison> {
    let comps = proof_components(case)?;
    let v = match case.family() {
        Family::X => VModule::p(0),
        Family::Partial => VModule::q(1),
    };
    let theta = case.theta(1);
    let ctx = Context::with_t(v, 1, theta.clone());
    let plain = Context::new(v);
    let mut combination = MElement::zero(&ctx);
    for (p, j) in comps {
        let e = p.to_element(&plain).expect("V degree matches");
        combination = combination.add(&e.tensor_t(&ctx, j));
    }
    let printed = singular_vector_in(case, v, 1, theta.clone()).ok()?;
    let ratio = combination.ratio_to(&printed);
    Some(ProofComparison { case, theta, combination, printed, ratio })
}
