use e36::classify::notation::*;
use e36::exactalg::scalar::int;
use e36::singular::commutators;
use e36::singular::*;
use e36::verma::{weight, Context, Element, Engine, Family, Key, MElement, SuperMonomial, VModule};
use e36::Scalar;
use proptest::prelude::*;

fn key(minus: &[u8], plus: &[u8], v: [u16; 3], t: u8) -> Key {
    Key { mono: SuperMonomial::new([0; 3], minus, plus), v, t }
}

fn module(case: CaseId, n: u32) -> VModule {
    match case.family() {
        Family::X => VModule::p(n),
        Family::Partial => VModule::q(n),
    }
}

/// (case, n, r) with n ≤ 4, r ≤ 5 inside the case's domain.
fn grid() -> Vec<(CaseId, u32, u32)> {
    let mut out = Vec::new();
    for c in CaseId::all() {
        for n in 0..=4 {
            for r in 0..=5 {
                if c.check_domain(c.family(), n, r).is_ok() {
                    out.push((c, n, r));
                }
            }
        }
    }
    out
}

#[test]
fn abcd_relations_hold() {
    let q = build_abcd().unwrap();
    let rels = q.relations();
    assert!(rels.len() > 60);
    for r in &rels {
        assert!(r.holds, "{} {}", r.group, r.name);
    }
    for g in ["formulas", "ladder", "d-rules", "contraction", "products", "invariant"] {
        assert!(rels.iter().any(|r| r.group == g), "{g}");
    }
}

#[test]
fn abcd_printed_variants_fail() {
    let q = build_abcd().unwrap();
    for (printed, corrected) in q.printed_variants() {
        assert!(!printed.holds, "{}", printed.name);
        assert!(q.relations().iter().any(|r| r.name == corrected && r.holds), "{corrected}");
    }
}

#[test]
fn da_minus_ad_is_invariant() {
    let q = build_abcd().unwrap();
    let x = &q.d * &q.a - &q.a * &q.d;
    assert!(!x.is_zero());
    assert!(abcd::sl2(e36::e510::GeneratorId::F3, &x).is_zero());
    assert!(abcd::sl2(e36::e510::GeneratorId::E3Sl2, &x).is_zero());
}

#[test]
fn commutator_formulas_hold() {
    for (name, ok) in commutators::check_all() {
        assert!(ok, "{name}");
    }
}

#[test]
fn printed_commutator_variants_fail() {
    for f in commutators::printed_variants() {
        let fails = commutators::test_modules().into_iter().any(|(v, r)| !f.holds_on(v, r));
        assert!(fails, "{}", f.name);
    }
}

#[test]
fn case_2_p3() {
    let m = singular_vector(CaseId::C2, 3, 0).unwrap();
    let ctx = Context::with_t(VModule::p(3), 0, int(2));
    // d⁺₁d⁻₁ = −d⁻₁d⁺₁ in normal order
    let want = MElement::from_terms(&ctx, [(key(&[1], &[1], [3, 0, 0], 0), int(-1))]);
    assert_eq!(m, want);
    assert!(verify_singular(&m).singular);
}

#[test]
fn case_7_q2_r1() {
    let m = singular_vector(CaseId::C7, 2, 1).unwrap();
    let ctx = Context::with_t(VModule::q(2), 1, int(-2));
    let want = MElement::from_terms(
        &ctx,
        [
            (key(&[], &[1], [1, 0, 1], 0), int(1)),
            (key(&[], &[2], [0, 1, 1], 0), int(1)),
            (key(&[], &[3], [0, 0, 2], 0), int(1)),
        ],
    );
    assert_eq!(m, want);
    assert!(verify_singular(&m).singular);
}

#[test]
fn case_4_needs_r3() {
    let err = singular_vector(CaseId::C4, 0, 2).unwrap_err();
    assert_eq!(err, CaseError::Domain { case: CaseId::C4, constraint: "r ≥ 3".into() });
    assert!(singular_vector(CaseId::C4, 0, 3).is_ok());
}

#[test]
fn case_1b_theta() {
    let m = singular_vector(CaseId::C1b, 1, 2).unwrap();
    assert_eq!(m.ctx.t.as_ref().unwrap().theta, int(6));
    assert!(verify_singular(&m).singular);

    let bad = singular_vector_in(CaseId::C1b, VModule::p(1), 2, int(5)).unwrap();
    let ver = verify_singular(&bad);
    assert!(!ver.singular);
    assert_eq!(ver.failures.len(), 1);
    assert_eq!(ver.failures[0].op, "e0");
    // e₀ removes d⁺₁ with h₀-eigenvalue on z₊z₋ and d⁻₁ via −2f₃: (2 − θ + 2r)·x₁ ⊗ z₊z₋
    let ctx = Context::with_t(VModule::p(1), 2, int(5));
    let want = MElement::from_terms(&ctx, [(key(&[], &[], [1, 0, 0], 1), int(2 - 5 + 4))]);
    assert_eq!(ver.failures[0].residual, want);
}

#[test]
fn case_10_residual_vanishes_at_zero() {
    let m = singular_vector(CaseId::C10, 2, 0).unwrap();
    assert!(verify_singular(&m).singular);
    let formal = singular_vector_formal(CaseId::C10, VModule::q(2), 0).unwrap();
    let img = Engine::standard().act_gen(e36::e510::GeneratorId::E0, &formal);
    assert!(!img.is_zero());
    for (_, c) in img.terms() {
        assert_eq!(c.eval(&int(0)), int(0));
    }
    assert_eq!(singular_thetas(&formal), ThetaSet::Values(vec![int(0)]));
}

#[test]
fn grid_is_singular_and_sharp() {
    for (c, n, r) in grid() {
        let v = module(c, n);
        let m = singular_vector(c, n, r).unwrap();
        let ver = verify_singular(&m);
        assert!(ver.singular, "case {c} n={n} r={r}: {:?}", ver.failures.first().map(|f| &f.rendered));
        let t1 = c.theta(r) + int(1);
        assert!(!verify_singular(&singular_vector_in(c, v, r, t1).unwrap()).singular, "case {c} n={n} r={r}");
    }
}

#[test]
fn theta_values() {
    for (c, n, r) in grid().into_iter().filter(|(_, n, r)| *n <= 3 && *r <= 4) {
        let rep = theta_report(c, module(c, n), r).unwrap();
        if c == CaseId::C6 {
            assert_eq!(rep.printed, int(0));
            assert_eq!(rep.verified, ThetaSet::Values(vec![int(2)]));
            assert!(!rep.agrees());
        } else {
            assert!(rep.agrees(), "case {c} n={n} r={r}: {:?}", rep.verified);
        }
    }
}

#[test]
fn proof_combinations_are_multiples() {
    for c in [CaseId::C6, CaseId::C9] {
        let p = proof_comparison(c).unwrap();
        assert_eq!(p.theta, int(2));
        assert_eq!(p.ratio, Some(int(-2)), "case {c}");
        assert!(verify_singular(&p.combination).singular);
    }
    assert!(proof_comparison(CaseId::C4).is_none());
}

#[test]
fn weights_of_cases() {
    let m = singular_vector(CaseId::C2, 2, 0).unwrap();
    let w = weight(Engine::standard(), &m).unwrap();
    assert_eq!((w.wt3, w.wt2), ((4, 0), 0));
}

#[test]
fn search_q1_r0() {
    let res = search_singular(VModule::q(1), 0, 5);
    assert!(res.complete(), "{}", res.to_text());
    assert_eq!(res.found(), vec![(CaseId::C7, int(-2)), (CaseId::C11, int(0))]);
}

#[test]
fn search_p0_r3_contains_case_4() {
    let res = search_singular(VModule::p(0), 3, 7);
    assert!(res.complete(), "{}", res.to_text());
    assert!(res.found().contains(&(CaseId::C4, int(6))));
}

#[test]
fn search_p2_r0() {
    let res = search_singular(VModule::p(2), 0, 4);
    assert!(res.complete(), "{}", res.to_text());
    let mut found = res.found();
    found.sort();
    assert_eq!(found, vec![(CaseId::C1a, int(0)), (CaseId::C2, int(2))]);
    let json = res.to_json();
    assert_eq!(json["hits"].as_array().unwrap().len(), 2);
    assert_eq!(json["complete"], true);
}

#[test]
fn search_hits_verify() {
    let res = search_singular(VModule::q(2), 1, 5);
    assert!(res.complete(), "{}", res.to_text());
    for h in &res.hits {
        assert!(verify_singular(h.vector.as_ref().unwrap()).singular);
    }
}

fn d_element() -> Element {
    dms(&[1, 2, 3]).to_element(&Context::new(VModule::p(0))).unwrap()
}

#[test]
fn contraction_of_case_4() {
    let m = singular_vector(CaseId::C4, 0, 3).unwrap();
    let scan = decomposition_scan(&m);
    assert_eq!(scan.len(), 4);
    assert_eq!(scan[0].element, d_element().scale(&int(-1)));
    assert!(scan[0].semi_singular);
    assert!(contraction_property(&scan));
}

#[test]
fn contraction_of_cases_1a_and_2() {
    let scan = decomposition_scan(&singular_vector(CaseId::C1a, 2, 0).unwrap());
    assert_eq!(scan.len(), 1);
    assert_eq!(scan[0].wt2, Some(1));
    assert!(scan[0].semi_singular);
    let want = (dp(1) * var(1).pow(2)).to_element(&Context::new(VModule::p(2))).unwrap();
    assert_eq!(scan[0].element, want);

    let scan = decomposition_scan(&singular_vector(CaseId::C2, 2, 0).unwrap());
    assert_eq!(scan[0].wt2, Some(0));
    assert!(contraction_property(&scan));
}

#[test]
fn contraction_property_on_grid() {
    for (c, n, r) in grid().into_iter().filter(|(_, n, r)| *n <= 3 && *r <= 4) {
        let scan = decomposition_scan(&singular_vector(c, n, r).unwrap());
        assert!(contraction_property(&scan), "case {c} n={n} r={r}");
    }
}

#[test]
fn case_ids_parse() {
    for c in CaseId::all() {
        assert_eq!(c.label().parse::<CaseId>().unwrap(), c);
    }
    assert!("12".parse::<CaseId>().is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn off_theta_is_not_singular(i in 0usize..1000, num in -20i64..20, den in 1i64..4) {
        let g = grid();
        let (c, n, r) = g[i % g.len()];
        let t = Scalar::new(num.into(), den.into());
        let m = singular_vector_in(c, module(c, n), r, t.clone()).unwrap();
        prop_assert_eq!(verify_singular(&m).singular, t == c.theta(r));
    }

    #[test]
    fn scaling_keeps_singularity(i in 0usize..1000, num in 1i64..20, neg: bool) {
        let g = grid();
        let (c, n, r) = g[i % g.len()];
        let m = singular_vector(c, n, r).unwrap();
        let s = int(if neg { -num } else { num });
        let scaled = m.scale(&s);
        prop_assert!(verify_singular(&scaled).singular);
        prop_assert_eq!(scaled.ratio_to(&m), Some(s));
    }

    #[test]
    fn formal_vector_specializes(i in 0usize..1000) {
        let g = grid();
        let (c, n, r) = g[i % g.len()];
        let v = module(c, n);
        let formal = singular_vector_formal(c, v, r).unwrap();
        let direct = singular_vector(c, n, r).unwrap();
        prop_assert_eq!(formal.specialize(&c.theta(r)), direct);
    }
}
