//! Operator identities of the D-calculus, checked by evaluation.

use rayon::prelude::*;

use crate::e510::GeneratorId;
use crate::exactalg::coeff::Coeff;
use crate::exactalg::scalar::{int, Scalar};
use crate::verma::{Context, Engine, Key, MElement, SuperMonomial};

use super::dpower::{d_power, decrement, MultiIndex};
use super::op::{b_op, c_op, f1, f12, f2, h1, h_prime, k_op, k_op_expanded, DOp};

/// lhs = rhs as operators.
#[derive(Debug, Clone)]
pub struct OpIdentity {
    pub name: String,
    pub lhs: DOp,
    pub rhs: DOp,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityFailure<C> {
    pub name: String,
    pub input: MElement<C>,
    pub difference: MElement<C>,
}

impl OpIdentity {
    pub fn new(name: impl Into<String>, lhs: DOp, rhs: DOp) -> Self {
        OpIdentity { name: name.into(), lhs, rhs }
    }

    /// `[x, y] = rhs`
    pub fn commutator(name: impl Into<String>, x: &DOp, y: &DOp, rhs: DOp) -> Self {
        OpIdentity::new(name, x.mul(y).sub(&y.mul(x)), rhs)
    }

    pub fn check<C: Coeff>(&self, eng: &Engine, m: &MElement<C>) -> Result<(), IdentityFailure<C>> {
        let d = self.lhs.apply(eng, m).sub(&self.rhs.apply(eng, m));
        if d.is_zero() {
            Ok(())
        } else {
            Err(IdentityFailure { name: self.name.clone(), input: m.clone(), difference: d })
        }
    }

    /// Checks on every element (in parallel); returns the first failure.
    pub fn verify<C: Coeff + Send + Sync>(&self, eng: &Engine, elems: &[MElement<C>]) -> Result<(), IdentityFailure<C>>
    where
        Context<C>: Send + Sync,
    {
        elems.par_iter().try_for_each(|m| self.check(eng, m))
    }
}

/// Basis vectors u ⊗ v (⊗ t) with sdeg ≤ max_sdeg and ldeg ≤ max_ldeg.
pub fn spanning_set<C: Coeff>(ctx: &Context<C>, max_sdeg: u32, max_ldeg: u32) -> Vec<MElement<C>> {
    let mut out = Vec::new();
    for mono in SuperMonomial::enumerate(max_sdeg) {
        if mono.ldeg() > max_ldeg {
            continue;
        }
        for v in ctx.v.basis() {
            for t in 0..ctx.t_dim() {
                out.push(MElement::basis(ctx, Key { mono, v, t }));
            }
        }
    }
    out
}

/// Which decrement α−(2) uses in the e₀± commutation formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SecondDecrement {
    /// (a, b−1, c), forced by weights.
    ByOne,
    /// (a, b−2, c).
    ByTwo,
}

fn d3(plus: bool) -> DOp {
    DOp::gen(if plus { GeneratorId::DPlus(3) } else { GeneratorId::DMinus(3) })
}

fn e0(plus: bool) -> DOp {
    DOp::gen(if plus { GeneratorId::E0Plus } else { GeneratorId::E0Minus })
}

/// e₀±D^α = D^α{2}e₀± − aD^{α−(1)}{2}d₃±B − bD^{α−(2)}{2}d₃±f₂ − cD^{α−(3)}{1}d₃± + abD^{α−(1)−(2)}{2}d₃±K.
pub fn commute_e0(alpha: MultiIndex, plus: bool, second: SecondDecrement) -> OpIdentity {
    let [a, b, c] = alpha;
    let lhs = e0(plus).mul(&d_power(alpha, 0));
    let mut rhs = d_power(alpha, 2).mul(&e0(plus));
    if let Some(a1) = decrement(&alpha, 1) {
        rhs = rhs.add(&DOp::product([d_power(a1, 2), d3(plus), b_op()]).scale(&-int(a as i64)));
    }
    let a2 = match second {
        SecondDecrement::ByOne => decrement(&alpha, 2),
        SecondDecrement::ByTwo => decrement(&alpha, 2).and_then(|x| decrement(&x, 2)),
    };
    if let Some(a2) = a2 {
        rhs = rhs.add(&DOp::product([d_power(a2, 2), d3(plus), f2()]).scale(&-int(b as i64)));
    }
    if let Some(a3) = decrement(&alpha, 3) {
        rhs = rhs.add(&DOp::product([d_power(a3, 1), d3(plus)]).scale(&-int(c as i64)));
    }
    if let Some(a12) = decrement(&alpha, 1).and_then(|x| decrement(&x, 2)) {
        rhs = rhs.add(&DOp::product([d_power(a12, 2), d3(plus), k_op_expanded()]).scale(&int((a * b) as i64)));
    }
    let sign = if plus { "+" } else { "-" };
    OpIdentity::new(format!("e0{sign} D^{alpha:?}"), lhs, rhs)
}

/// Which operator appears in the correction term of the K move.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KMoveForm {
    /// −i∂̂₁f₁₂(h₁+i−1−k)⋯, what the commutation rules for f₁ and f₂ past K give.
    H1,
    /// −i∂̂₁f₁₂(h′+i−1−k)⋯
    HPrime,
}

/// f₂^k f₁^i B^j K = K{j+k} f₂^k f₁^i B^j − i∂̂₁f₁₂(h+i−1−k) f₂^k f₁^{i−1}B^j.
pub fn k_move(i: u32, j: u32, k: u32, form: KMoveForm) -> OpIdentity {
    let word = |ii: u32| DOp::product([f2().pow(k), f1().pow(ii), b_op().pow(j)]);
    let lhs = word(i).mul(&k_op(0));
    let mut rhs = k_op((j + k) as i64).mul(&word(i));
    if i > 0 {
        let h = match form {
            KMoveForm::H1 => h1(),
            KMoveForm::HPrime => h_prime(0),
        };
        let corr = DOp::product([DOp::dhat(1), f12(), h.shifted(i as i64 - 1 - k as i64), word(i - 1)]);
        rhs = rhs.sub(&corr.scale(&int(i as i64)));
    }
    OpIdentity::new(format!("K move i={i} j={j} k={k} ({form:?})"), lhs, rhs)
}

/// Commutation rules for B, f₁, f₂ past K and K{s}.
pub fn k_lemma(s: i64, i: u32) -> Vec<OpIdentity> {
    let k = k_op(0);
    let mut v = vec![
        OpIdentity::commutator("[B,K] = CB", &b_op(), &k, c_op().mul(&b_op())),
        OpIdentity::new("BK{s} = K{s+1}B", b_op().mul(&k_op(s)), k_op(s + 1).mul(&b_op())),
        OpIdentity::commutator("[f1,K] = -dh1 f12 h1", &f1(), &k, DOp::product([DOp::dhat(1), f12(), h1()]).scale(&-int(1))),
        OpIdentity::commutator("[f2,K] = C f2", &f2(), &k, c_op().mul(&f2())),
        OpIdentity::new("f2K{s} = K{s+1}f2", f2().mul(&k_op(s)), k_op(s + 1).mul(&f2())),
    ];
    let mut rhs = k_op(s).mul(&f1().pow(i));
    if i > 0 {
        let corr = DOp::product([DOp::dhat(1), f12(), h1().shifted(i as i64 - 1), f1().pow(i - 1)]);
        rhs = rhs.sub(&corr.scale(&int(i as i64)));
    }
    v.push(OpIdentity::new(format!("f1^{i} K{{s}}"), f1().pow(i).mul(&k_op(s)), rhs));
    v
}

/// C = [∂̂₂,B], C commutes with B, f₁, f₂, f₁₂ and every ∂̂ᵢ; K has two equal expressions.
pub fn c_relations() -> Vec<OpIdentity> {
    let zero = DOp::zero();
    let mut v = vec![
        OpIdentity::commutator("[dh2,B] = C", &DOp::dhat(2), &b_op(), c_op()),
        OpIdentity::commutator("[C,B] = 0", &c_op(), &b_op(), zero.clone()),
        OpIdentity::commutator("[C,f1] = 0", &c_op(), &f1(), zero.clone()),
        OpIdentity::commutator("[C,f2] = 0", &c_op(), &f2(), zero.clone()),
        OpIdentity::commutator("[C,f12] = 0", &c_op(), &f12(), zero.clone()),
        OpIdentity::new("K = K{0}", k_op_expanded(), k_op(0)),
    ];
    for i in 1..=3 {
        v.push(OpIdentity::commutator(format!("[C,dh{i}] = 0"), &c_op(), &DOp::dhat(i), zero.clone()));
    }
    v
}

/// D_i{s}D_j{s} = D_j{s}D_i{s}.
pub fn d_commute(i: u8, j: u8, s: i64) -> OpIdentity {
    use super::op::d_op;
    OpIdentity::commutator(format!("[D{i}{{{s}}},D{j}{{{s}}}] = 0"), &d_op(i, s), &d_op(j, s), DOp::zero())
}

/// ∂̂^{α−(2)} d₃± f₂ h₁^{[a−1]} h′^{[a]} (h₂−1)^{[b−1]} m₀ for a highest m₀ of weight (λ₁,λ₂),
/// the predicted leading term of D^{α−(1)−(2)}{2}d₃±K m₀ (a, b ≥ 1).
pub fn k_leading_prediction(eng: &Engine, alpha: MultiIndex, plus: bool, wt3: (i64, i64), m0: &MElement<Scalar>) -> MElement<Scalar> {
    let [a, b, c] = alpha;
    let (l1, l2) = wt3;
    let ff = |x: i64, n: u32| (0..n as i64).fold(int(1), |acc, i| acc * int(x - i));
    let scalar = ff(l1, a - 1) * ff(l1 + l2 + 1, a) * ff(l2 - 1, b - 1);
    let inner = d3(plus).mul(&f2()).apply(eng, m0).scale(&scalar);
    super::dpower::times_dhat([a as u16, (b - 1) as u16, c as u16], &inner)
}
