use e36::dops::*;
use e36::e510::GeneratorId;
use e36::exactalg::{binomial, int, CommPoly, VarSet};
use e36::verma::kernel::{all_keys, highest_by_weight};
use e36::verma::{is_quasi_singular, is_sl3_highest, Context, Engine, Key, Letter, MElement, SuperMonomial, VModule};
use e36::Scalar;
use num_traits::Zero;

fn eng() -> &'static Engine {
    Engine::standard()
}

fn ctxs() -> Vec<Context<Scalar>> {
    vec![Context::new(VModule::p(2)), Context::new(VModule::q(2)), Context::new(VModule::p(1)), Context::new(VModule::q(0))]
}

fn holds(id: &OpIdentity, sdeg: u32, ldeg: u32) {
    for ctx in ctxs() {
        let set = spanning_set(&ctx, sdeg, ldeg);
        if let Err(f) = id.verify(eng(), &set) {
            panic!("{} fails on {:?}: difference {:?}", f.name, f.input, f.difference);
        }
    }
}

fn fails(id: &OpIdentity, sdeg: u32, ldeg: u32) -> bool {
    ctxs().iter().any(|ctx| id.verify(eng(), &spanning_set(ctx, sdeg, ldeg)).is_err())
}

fn x1p(p: u32) -> MElement<Scalar> {
    let ctx = Context::new(VModule::p(p));
    MElement::basis(&ctx, Key { mono: SuperMonomial::ONE, v: [p as u16, 0, 0], t: 0 })
}

fn poly_falling(x: &CommPoly, n: u32) -> CommPoly {
    let mut acc = CommPoly::constant(x.vars, int(1));
    for i in 0..n {
        acc = acc.mul(&x.sub(&CommPoly::constant(x.vars, int(i as i64))));
    }
    acc
}

#[test]
fn falling_factorials() {
    assert_eq!(e36::exactalg::falling_scalar(&int(5), 3), int(60));
    assert_eq!(e36::exactalg::falling_scalar(&int(7), 0), int(1));
    let m = x1p(3);
    assert_eq!(h_prime(0).falling(0).apply(eng(), &m), m);
    // h₁^{[2]} x₁³ = 3·2·x₁³
    assert_eq!(DOp::gen(GeneratorId::H1).falling(2).apply(eng(), &m), m.scale(&int(6)));
}

#[test]
fn falling_factorial_shift_identity() {
    // (x−r)^{[m]} = Σ (−1)^i C(m,i) r^{[i]} (x−i)^{[m−i]} in ℚ[x, r]
    let x = CommPoly::var(VarSet::X, 0);
    let r = CommPoly::var(VarSet::X, 1);
    for m in 0..=8u32 {
        let lhs = poly_falling(&x.sub(&r), m);
        let mut rhs = CommPoly::zero(VarSet::X);
        for i in 0..=m {
            let sign = if i % 2 == 0 { int(1) } else { int(-1) };
            let shifted = x.sub(&CommPoly::constant(VarSet::X, int(i as i64)));
            let t = poly_falling(&r, i).mul(&poly_falling(&shifted, m - i)).scale(&(sign * binomial(m as i64, i as i64)));
            rhs = rhs.add(&t);
        }
        assert_eq!(lhs, rhs, "m = {m}");
    }
}

#[test]
fn d3_is_multiplication() {
    for ctx in ctxs() {
        for m in spanning_set(&ctx, 1, 1) {
            assert_eq!(d_op(3, 5).apply(eng(), &m), DOp::dhat(3).apply(eng(), &m));
        }
    }
}

#[test]
fn d_operators_commute() {
    for s in 0..=2 {
        for (i, j) in [(1, 2), (1, 3), (2, 3)] {
            holds(&d_commute(i, j, s), 1, 2);
        }
    }
}

#[test]
fn b_has_two_forms() {
    holds(&OpIdentity::new("B = B'", b_op(), b_op_alt()), 1, 3);
}

#[test]
fn b_on_x1_power() {
    // f₁₂ = x₃∂₁ contributes the factor p
    for p in 0..=4u32 {
        let got = b_op().apply(eng(), &x1p(p));
        let expected = if p == 0 {
            MElement::zero(&got.ctx)
        } else {
            let k = Key { mono: SuperMonomial::ONE, v: [p as u16 - 1, 0, 1], t: 0 };
            MElement::basis(&got.ctx, k).scale(&int((p * (p + 1)) as i64))
        };
        assert_eq!(got, expected, "p = {p}");
    }
}

#[test]
fn c_and_k_relations() {
    for id in c_relations() {
        holds(&id, 1, 3);
    }
}

#[test]
fn k_commutation_rules() {
    for s in 0..=2 {
        for i in 0..=3 {
            for id in k_lemma(s, i) {
                holds(&id, 1, 2);
            }
        }
    }
}

#[test]
fn k_move_through_words() {
    for i in 0..=2 {
        for j in 0..=2 {
            for k in 0..=2 {
                holds(&k_move(i, j, k, KMoveForm::H1), 1, 2);
            }
        }
    }
}

#[test]
fn k_move_with_h_prime_fails() {
    // the correction term needs h₁; with h′ it is off by (h₂+1)
    for i in 1..=2 {
        assert!(fails(&k_move(i, 0, 0, KMoveForm::HPrime), 0, 1));
    }
    assert!(!fails(&k_move(0, 1, 1, KMoveForm::HPrime), 0, 1));
}

#[test]
fn d2_power_expansion() {
    // relations of the abstract pair: [∂,b] = a, [h,b] = −2b, [h,a] = −a, [h,∂] = ∂, [a,b] = [∂,a] = 0
    let (a, d, b, h) = (DOp::dhat(2), DOp::dhat(3), DOp::gen(GeneratorId::F2), h2_shift(1));
    let rels = [
        OpIdentity::commutator("[a,b]", &a, &b, DOp::zero()),
        OpIdentity::commutator("[d,b]", &d, &b, a.clone()),
        OpIdentity::commutator("[d,a]", &d, &a, DOp::zero()),
        OpIdentity::commutator("[h,b]", &h, &b, b.scale(&int(-2))),
        OpIdentity::commutator("[h,a]", &h, &a, a.scale(&int(-1))),
        OpIdentity::commutator("[h,d]", &h, &d, d.clone()),
    ];
    for r in &rels {
        holds(r, 1, 2);
    }
    for s in 0..=2 {
        for k in 0..=5 {
            holds(&OpIdentity::new(format!("D2^{k}"), d_op(2, s).pow(k), d2_power_expanded(k, s)), 0, 1);
        }
    }
}

#[test]
fn closed_formula_is_the_iterated_product() {
    for s in 0..=2 {
        assert_eq!(
            d_power_closed([1, 0, 0], s).apply(eng(), &x1p(2)),
            d_op(1, s).apply(eng(), &x1p(2))
        );
    }
    for v in (0..=4).flat_map(|n| [VModule::p(n), VModule::q(n)]) {
        let ctx: Context<Scalar> = Context::new(v);
        let set = spanning_set(&ctx, 0, 1);
        for n in 0..=4 {
            for alpha in indices_of_norm(n) {
                for s in 0..=2 {
                    let id = OpIdentity::new(format!("closed {alpha:?}{{{s}}}"), d_power_closed(alpha, s), d_power(alpha, s));
                    if let Err(f) = id.verify(eng(), &set) {
                        panic!("{} on {:?}", f.name, f.input);
                    }
                }
            }
        }
    }
}

#[test]
fn weight_shift_and_highest_production() {
    for v in [VModule::p(0), VModule::p(2), VModule::q(1), VModule::q(3)] {
        let ctx: Context<Scalar> = Context::new(v);
        let m0 = MElement::basis(&ctx, Key { mono: SuperMonomial::ONE, v: v.highest(), t: 0 });
        let mu = e36::verma::weight(eng(), &m0).unwrap().wt3;
        for n in 0..=4 {
            for a in indices_of_norm(n) {
                let w = d_power(a, 0).apply(eng(), &m0);
                let wt = (mu.0 - a[0] as i64 + a[1] as i64, mu.1 - a[1] as i64 + a[2] as i64);
                if wt.0 < 0 || wt.1 < 0 {
                    assert!(w.is_zero(), "{v:?} {a:?}");
                    continue;
                }
                if !leading_scalar(a, 0, mu).is_zero() {
                    assert!(!w.is_zero(), "{v:?} {a:?}");
                }
                if w.is_zero() {
                    continue;
                }
                assert_eq!(e36::verma::weight(eng(), &w).unwrap().wt3, wt);
                assert!(is_sl3_highest(eng(), &w).is_ok());
            }
        }
    }
}

#[test]
fn leading_terms_of_d_powers() {
    for v in [VModule::p(0), VModule::p(1), VModule::p(2), VModule::q(1), VModule::q(2)] {
        let ctx: Context<Scalar> = Context::new(v);
        for (w, hs) in highest_by_weight(eng(), &ctx, &all_keys(&ctx, 0)) {
            for m0 in &hs {
                for n in 0..=3 {
                    for a in indices_of_norm(n) {
                        for s in 0..=2 {
                            let img = d_power(a, s).apply(eng(), m0);
                            let pred = predicted_leading(a, s, (w.h1, w.h2), m0);
                            let e = [a[0] as u16, a[1] as u16, a[2] as u16];
                            let parts = by_dhat(&img);
                            assert!(parts.keys().all(|k| *k <= e), "{v:?} {a:?}");
                            let top = parts.get(&e).map(|c| times_dhat(e, c)).unwrap_or_else(|| MElement::zero(&ctx));
                            assert_eq!(top, pred, "{v:?} {a:?} s={s}");
                        }
                    }
                }
            }
        }
    }
    // D^{(2,1,0)}x₁^p has a non-dominant weight, and the predicted scalar carries the factor h₂^{[1]} = 0
    for p in 0..=3 {
        assert!(d_power([2, 1, 0], 0).apply(eng(), &x1p(p)).is_zero());
        assert_eq!(leading_scalar([2, 1, 0], 0, (p as i64, 0)), int(0));
    }
}

#[test]
fn leading_term_orders() {
    let ctx: Context<Scalar> = Context::new(VModule::p(0));
    let k = |d: [u16; 3]| Key { mono: SuperMonomial::new(d, &[], &[]), v: [0, 0, 0], t: 0 };
    let m = MElement::from_terms(&ctx, [(k([2, 0, 0]), int(1)), (k([0, 3, 0]), int(2))]);
    assert_eq!(lex_highest_term(&m, MonoOrder::Lex).unwrap().0, [2, 0, 0]);
    assert_eq!(lex_highest_term(&m, MonoOrder::DegLex).unwrap().0, [0, 3, 0]);
}

#[test]
fn e0_commutation_formula() {
    for n in 0..=4 {
        for alpha in indices_of_norm(n) {
            for plus in [false, true] {
                let id = commute_e0(alpha, plus, SecondDecrement::ByOne);
                holds(&id, 0, 3);
                if n <= 2 {
                    holds(&id, 1, 2);
                }
            }
        }
    }
}

#[test]
fn e0_commutation_with_double_decrement_fails() {
    for alpha in [[0, 1, 0], [1, 1, 0], [0, 2, 0], [1, 2, 1]] {
        assert!(fails(&commute_e0(alpha, false, SecondDecrement::ByTwo), 0, 2), "{alpha:?}");
    }
}

#[test]
fn leading_term_of_k_correction() {
    // ℓht D^{α−(1)−(2)}{2} d₃± K m₀ = ∂̂^{α−(2)} d₃± f₂ h₁^{[a−1]} h′^{[a]} (h₂−1)^{[b−1]} m₀,
    // for m₀ whose exterior part has only letters of the sign of d₃±
    for v in [VModule::p(0), VModule::p(1), VModule::p(2), VModule::q(1), VModule::q(2)] {
        let ctx: Context<Scalar> = Context::new(v);
        for (w, hs) in highest_by_weight(eng(), &ctx, &all_keys(&ctx, 0)) {
            for m0 in &hs {
                for plus in [false, true] {
                    let same_sign = m0.terms().all(|(k, _)| if plus { k.mono.minus == 0 } else { k.mono.plus == 0 });
                    if !same_sign {
                        continue;
                    }
                    let d3 = if plus { GeneratorId::DPlus(3) } else { GeneratorId::DMinus(3) };
                    for a in [[1u32, 1, 0], [2, 1, 0], [1, 2, 0], [1, 1, 1], [2, 2, 0], [3, 1, 0]] {
                        let op = DOp::product([d_power([a[0] - 1, a[1] - 1, a[2]], 2), DOp::gen(d3), k_op_expanded()]);
                        let img = op.apply(eng(), m0);
                        let pred = k_leading_prediction(eng(), a, plus, (w.h1, w.h2), m0);
                        let e = [a[0] as u16, a[1] as u16 - 1, a[2] as u16];
                        let lhs = by_dhat(&img);
                        let rhs = by_dhat(&pred);
                        assert!(lhs.keys().all(|k| *k <= e), "{v:?} {a:?}");
                        assert_eq!(lhs.get(&e), rhs.get(&e), "{v:?} {a:?} plus={plus}");
                    }
                }
            }
        }
    }
}

fn word_element(ctx: &Context<Scalar>, letters: &[Letter], v: [u16; 3]) -> MElement<Scalar> {
    MElement::from_u(ctx, &eng().ulm().word(letters), v, 0)
}

#[test]
fn decomposition_recovers_simple_powers() {
    let ctx: Context<Scalar> = Context::new(VModule::q(2));
    let m0 = MElement::basis(&ctx, Key { mono: SuperMonomial::ONE, v: [0, 0, 2], t: 0 });
    let w = d_op(2, 0).apply(eng(), &m0);
    let cs = decompose_highest(eng(), &w, &[m0.clone()], 0).unwrap();
    assert_eq!(cs, vec![([0, 1, 0], vec![int(1)])]);
}

#[test]
fn decomposition_round_trip() {
    let ctx: Context<Scalar> = Context::new(VModule::p(1));
    let hs = highest_by_weight(eng(), &ctx, &all_keys(&ctx, 0));
    // several highest vectors of one weight
    let (_, m0s) = hs.iter().max_by_key(|(_, v)| v.len()).unwrap();
    let alphas = [[2, 0, 0], [1, 1, 0], [0, 0, 2]];
    let mut coeffs = Vec::new();
    for (n, a) in alphas.iter().enumerate() {
        coeffs.push((*a, (0..m0s.len()).map(|i| int((n * 3 + i) as i64 - 2)).collect::<Vec<_>>()));
    }
    let w = recompose(eng(), &coeffs, m0s, 0);
    let got = decompose_highest(eng(), &w, m0s, 0).unwrap();
    assert_eq!(recompose(eng(), &got, m0s, 0), w);
    for (a, cs) in &coeffs {
        let found = got.iter().find(|(b, _)| b == a).map(|(_, c)| c.clone());
        if d_power(*a, 0).apply(eng(), &m0s[0]).is_zero() {
            continue;
        }
        assert_eq!(found.as_ref(), Some(cs), "{a:?}");
    }
}

#[test]
fn decomposition_of_quasi_singular_family() {
    use Letter::{Minus, Plus};
    // (D₁ⁿ d⁻₁d⁺₁ − n(p+3)D₁ⁿ⁻¹ d⁻₁(d⁻₂d⁺₃ − d⁻₃d⁺₂)d⁺₁ − n^{[2]}(p+3)^{[2]}D₁ⁿ⁻² d⁻₁₂₃d⁺₁₂₃) x₁^p
    for p in 0..=2u32 {
        let ctx: Context<Scalar> = Context::new(VModule::p(p));
        let v = [p as u16, 0, 0];
        let m1 = word_element(&ctx, &[Minus(0), Plus(0)], v);
        let m2 = word_element(&ctx, &[Minus(0), Minus(1), Plus(2), Plus(0)], v)
            .sub(&word_element(&ctx, &[Minus(0), Minus(2), Plus(1), Plus(0)], v));
        let m3 = word_element(&ctx, &[Minus(0), Minus(1), Minus(2), Plus(0), Plus(1), Plus(2)], v);
        for n in 0..=3u32 {
            let pp = p as i64 + 3;
            let c2 = -int(n as i64 * pp);
            let c3 = -int((n as i64) * (n as i64 - 1) * pp * (pp - 1));
            let mut w = d_power([n, 0, 0], 0).apply(eng(), &m1);
            if n >= 1 {
                w = w.add(&d_power([n - 1, 0, 0], 0).apply(eng(), &m2).scale(&c2));
            }
            if n >= 2 {
                w = w.add(&d_power([n - 2, 0, 0], 0).apply(eng(), &m3).scale(&c3));
            }
            assert!(is_quasi_singular(eng(), &w).is_ok(), "p={p} n={n}");
            if p == 0 && n == 2 {
                let cs = decompose_highest(eng(), &w, &[m1.clone(), m2.clone(), m3.clone()], 0).unwrap();
                let pick = |a: MultiIndex, i: usize| cs.iter().find(|(b, _)| *b == a).map(|(_, c)| c[i].clone());
                assert_eq!(pick([2, 0, 0], 0), Some(int(1)));
                assert_eq!(pick([1, 0, 0], 1), Some(int(-6)));
                assert_eq!(pick([0, 0, 0], 2), Some(int(-12)));
            }
        }
    }
}
