use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Mutex, OnceLock};

use e36::classify::lists::{dhat_b_delta_plus_d_form, printed_udeg2_partial, printed_udeg4_partial};
use e36::classify::notation::*;
use e36::classify::*;
use e36::classify::lists;
use e36::dops::{d_op, decompose_highest, norm};
use e36::verma::{
    is_quasi_singular, phi_lift, s_singular_full_check, weight, Context, Element, Engine, Family, VModule,
};
use proptest::prelude::*;

fn eng() -> &'static Engine {
    Engine::standard()
}

fn modules() -> Vec<VModule> {
    (0..=4).map(VModule::p).chain((1..=4).map(VModule::q)).collect()
}

fn el(p: &Poly, v: VModule) -> Element {
    p.to_element(&Context::new(v)).unwrap()
}

fn cell(e: &Element) -> Cell {
    cell_of(eng(), e).expect("weight vector of one udeg")
}

fn published_mismatches(kind: ListKind, v: VModule, sdeg: u32) -> Vec<String> {
    classification_report(kind, v, sdeg, true).mismatches().map(|c| c.cell.clone()).collect()
}

#[test]
fn highest_lists_match_for_small_degrees() {
    for v in modules() {
        let r = classification_report(ListKind::Highest, v, 0, false);
        assert!(r.all_match(), "{}", r.to_text());
    }
}

#[test]
fn highest_published_exponent_only_mismatch() {
    for v in modules() {
        let got = published_mismatches(ListKind::Highest, v, 0);
        let want: Vec<String> = match v.family {
            Family::X if v.degree >= 2 => vec![format!("ldeg 4 wt3 ({},0)", v.degree - 2)],
            _ => vec![],
        };
        assert_eq!(got, want, "{v}");
    }
}

#[test]
fn nested_entry_exponent() {
    for p in 2..=4u32 {
        let v = VModule::p(p);
        let h = highest_vectors(v, 4);
        let good = el(&lists::nested_cyc_entry(p as i64 - 2).unwrap(), v);
        assert!(in_span(&good, &h[&(p as i64 - 2, 0)]));
        let bad = lists::nested_cyc_entry(p as i64 - 1).unwrap();
        assert_eq!(bad.v_degrees(), vec![p + 1]);
    }
}

#[test]
fn highest_examples() {
    let eng = eng();
    for p in 0..=4 {
        let v = VModule::p(p);
        let h = highest_vectors(v, 0);
        assert_eq!(h.len(), 1);
        assert!(in_span(&el(&var(1).pow(p), v), &h[&(p as i64, 0)]));
        assert_eq!(h[&(p as i64, 0)].len(), 1);
    }
    for q in 0..=4 {
        let v = VModule::q(q);
        let h = highest_vectors(v, 6);
        assert_eq!(h.keys().copied().collect::<Vec<_>>(), vec![(0, q as i64)]);
        let e = el(&(dms(&[1, 2, 3]) * dps(&[1, 2, 3]) * var(3).pow(q)), v);
        assert!(same_span(&[e], &h[&(0, q as i64)]));
    }
    let v = VModule::p(3);
    let h = highest_vectors(v, 2);
    let (m, pl, x) = (fam_dm(), fam_dp(), fam_var());
    let t = var(1).pow(2);
    let listed: Vec<Element> = [cyc(&m, &m, &x), delta_minus(&cross(&pl, &x)), cyc(&pl, &pl, &x)]
        .iter()
        .map(|w| el(&(w * &t), v))
        .collect();
    assert_eq!(h[&(2, 0)].len(), 3);
    assert!(same_span(&listed, &h[&(2, 0)]));
    for e in &listed {
        assert_eq!(weight(eng, e).unwrap().wt3, (2, 0));
    }
}

#[test]
fn quasi_sdeg0_x_family() {
    for p in 1..=4 {
        let v = VModule::p(p);
        let comp = quasi_singular_space(v, 0, true);
        let total: usize = comp.values().map(Vec::len).sum();
        assert_eq!(total, 4, "p={p}");
        let r = compare("", &quasi_list(v, 0), &comp, |e| cell_of(eng(), e));
        assert!(r.all_match(), "{}", r.to_text());
    }
}

#[test]
fn quasi_example_p1_sdeg1() {
    let v = VModule::p(1);
    let comp = quasi_singular_space(v, 1, true);
    let (m, pl) = (fam_dm(), fam_dp());
    let d1 = (dp(1) * var(1)).apply(&d_op(1, 0), v).unwrap();
    let w = d1.scale(&scalar(1, 3)) - cyc(&m, &pl, &pl) * var(1) + dm(1) * cyc(&pl, &pl, &fam_var());
    let w = el(&w, v);
    let c = cell(&w);
    assert_eq!((c.wt3, c.wt2), ((1, 0), 1));
    assert!(in_span(&w, &comp[&c]));
}

#[test]
fn quasi_example_q2_family() {
    let v = VModule::q(2);
    let comp = quasi_singular_space(v, 2, true);
    let list = quasi_list(v, 2);
    let fam: Vec<_> = list.iter().filter(|l| l.label.starts_with("D₃ⁿΔ⁻")).collect();
    assert_eq!(fam.len(), 2);
    for l in fam {
        assert!(in_span(&l.element, &comp[&cell(&l.element)]), "{}", l.label);
    }
}

#[test]
fn semi_examples() {
    for p in 1..=4 {
        let comp = semi_singular_space(VModule::p(p), 2, true);
        assert!(comp.values().flatten().all(|e| e.max_sdeg() == 0), "p={p}");
    }
    for q in 3..=4 {
        let comp = semi_singular_space(VModule::q(q), 2, true);
        assert!(comp.values().flatten().all(|e| e.max_sdeg() == 0), "q={q}");
    }
    let v = VModule::q(1);
    let comp = semi_singular_space(v, 2, true);
    let w = el(&(dh(2) * var(3) - dh(3) * var(2) - delta_minus(&left(&dp(1), &fam_var()))), v);
    assert!(in_span(&w, &comp[&cell(&w)]));
}

#[test]
fn full_semi_examples() {
    let udeg = |e: &Element| cell(e).udeg;
    for p in 0..=3 {
        let v = VModule::p(p);
        let fs = full_semi_singular_list(v, 2);
        assert!(fs.consistent());
        let u1: Vec<Element> = fs.direct.iter().filter(|(c, _)| c.udeg == 1).flat_map(|(_, b)| b.clone()).collect();
        let t = var(1).pow(p);
        assert!(same_span(&u1, &[el(&(dp(1) * &t), v), el(&(dm(1) * &t), v)]));
    }
    let v = VModule::p(0);
    let fs = full_semi_singular_list(v, 2);
    let [a, b, c, d] = abcd_polys();
    let dhm = delta_hat(&fam_dm());
    let da_ad = &d * &a - &a * &d;
    assert_eq!(da_ad, (&d * &a).scale(&scalar(2, 1)) + &dhm * &b);
    let six: Vec<Element> = [&dhm * &a, &dhm * &b, &dhm * &c, da_ad].iter().map(|w| el(w, v)).collect();
    let comp: Vec<Element> = fs.direct.iter().filter(|(c, _)| c.udeg == 6).flat_map(|(_, b)| b.clone()).collect();
    assert_eq!(comp.len(), 4);
    for e in &six {
        assert_eq!(udeg(e), 6);
        assert!(in_span(e, &comp));
    }
    for q in 1..=3 {
        let v = VModule::q(q);
        let fs = full_semi_singular_list(v, 2);
        let u0: Vec<Element> = fs.direct.iter().filter(|(c, _)| c.udeg == 0).flat_map(|(_, b)| b.clone()).collect();
        assert!(same_span(&u0, &[el(&var(3).pow(q), v)]));
    }
}

#[test]
fn amended_lists_match_to_sdeg3() {
    for v in modules() {
        for kind in [ListKind::Quasi, ListKind::Semi, ListKind::FullSemi] {
            let r = classification_report(kind, v, 3, false);
            assert!(r.all_match(), "{}", r.to_text());
        }
    }
}

#[test]
fn published_mismatches_are_the_amended_cells() {
    let expect = |kind, v: VModule, cells: &[&str]| {
        let got: BTreeSet<String> = published_mismatches(kind, v, 3).into_iter().collect();
        let want: BTreeSet<String> = cells.iter().map(|s| s.to_string()).collect();
        assert_eq!(got, want, "{kind} {v}");
    };
    use ListKind::*;
    expect(Quasi, VModule::p(0), &[]);
    expect(Quasi, VModule::p(1), &["wt3 (0,0) wt2 1 udeg 5", "wt3 (0,1) wt2 0 udeg 4", "wt3 (1,0) wt2 0 udeg 6"]);
    expect(Quasi, VModule::p(2), &[]);
    expect(Quasi, VModule::q(1), &["wt3 (1,0) wt2 0 udeg 8", "wt3 (2,0) wt2 0 udeg 6"]);
    expect(Quasi, VModule::q(2), &["wt3 (0,1) wt2 0 udeg 4", "wt3 (1,0) wt2 1 udeg 3"]);
    expect(Quasi, VModule::q(3), &["wt3 (0,2) wt2 0 udeg 4"]);
    expect(Semi, VModule::p(0), &[]);
    expect(Semi, VModule::q(1), &["wt3 (1,0) wt2 0 udeg 8"]);
    expect(Semi, VModule::q(2), &["wt3 (1,0) wt2 1 udeg 3"]);
    expect(Semi, VModule::q(3), &["wt3 (0,1) wt2 0 udeg 2"]);
    expect(FullSemi, VModule::q(1), &["wt3 (1,0) wt2 0 udeg 8", "wt3 (2,0) wt2 -1 udeg 3"]);
    expect(FullSemi, VModule::q(2), &["wt3 (1,0) wt2 1 udeg 3", "wt3 (1,0) wt2 -1 udeg 3"]);
    expect(FullSemi, VModule::q(4), &["wt3 (0,2) wt2 0 udeg 2"]);
}

#[test]
fn amendments_checked_against_whole_g1() {
    let eng = eng();
    for v in modules() {
        for (list, semi) in [(quasi_list(v, 3), false), (semi_list(v, 3), true), (full_semi_list(v, 3), true)] {
            for l in amended(&list) {
                assert!(s_singular_full_check(eng, &l.element, false).is_ok(), "{}", l.label);
                if semi {
                    assert!(s_singular_full_check(eng, &l.element, true).is_ok(), "{}", l.label);
                }
                if let Some(Amendment::Corrected { published: Some(e), .. }) = &l.amendment {
                    assert!(is_quasi_singular(eng, e).is_err(), "published form of {} is quasi-singular", l.label);
                }
            }
        }
    }
}

#[test]
fn amended_entries_are_new_directions() {
    // Added entries are not in the span of the published entries of their cell.
    for v in modules() {
        let list = quasi_list(v, 3);
        let published = as_published(&list);
        for l in amended(&list).filter(|l| matches!(l.amendment, Some(Amendment::Added { .. }))) {
            let c = cell(&l.element);
            let same: Vec<Element> =
                published.iter().filter(|p| cell(&p.element) == c).map(|p| p.element.clone()).collect();
            assert!(!in_span(&l.element, &same), "{}", l.label);
        }
    }
}

#[test]
fn x_family_bound_note() {
    let r = classification_report(ListKind::Quasi, VModule::p(0), 3, false);
    assert!(r.notes.iter().any(|n| n.contains("n = p+2")));
    let fam = quasi_list(VModule::p(1), 4).iter().filter(|l| l.label.starts_with("(D₁ⁿ")).count();
    assert_eq!(fam, 3);
}

#[test]
fn full_list_identities() {
    let f = fam_var();
    let dpl = delta_plus(&f);
    let dmi = delta_minus(&f);
    let (printed, transposed) = printed_udeg2_partial();
    assert_eq!(transposed, dp(1) * &dmi);
    assert!(cell_of(eng(), &el(&printed, VModule::q(1))).is_none());
    let (printed, transposed) = printed_udeg4_partial();
    assert_eq!(transposed, dm(1) * dp(1) * delta_minus(&left(&dpl, &f)));
    assert!(cell_of(eng(), &el(&printed, VModule::q(2))).is_none());

    let [a, b, _, _] = abcd_polys();
    let d3 = dps(&[1, 2, 3]);
    assert_eq!(&b * &dpl, delta_minus(&left(&d3, &f)) - delta_hat(&fam_dp()) * &dpl);
    assert_eq!(dm(1) * &a * &dmi, -(dm(1) * &b * &dpl));
    assert_eq!(delta_hat(&fam_dm()) * &b * &dpl, dhat_b_delta_plus_d_form());
}

#[test]
fn top_level_coefficients_are_quasi_singular() {
    let eng = eng();
    for v in [VModule::p(0), VModule::p(1), VModule::p(2), VModule::q(1), VModule::q(2), VModule::q(3)] {
        let highest: Vec<Element> = all_highest_vectors(v).into_values().flatten().collect();
        for (c, basis) in quasi_singular_space(v, 2, true) {
            for w in basis.iter().filter(|w| w.max_sdeg() > 0) {
                let n = w.max_sdeg();
                let dec = decompose_highest(eng, w, &highest, 0).expect("w is a sum of D^α m");
                let coeff = |cs: &[e36::Scalar]| {
                    highest.iter().zip(cs).fold(Element::zero(&w.ctx), |acc, (m, c)| acc.add(&m.scale(c)))
                };
                let top: Vec<Element> =
                    dec.iter().filter(|(a, _)| norm(a) == n).map(|(_, cs)| coeff(cs)).filter(|e| !e.is_zero()).collect();
                assert!(!top.is_empty());
                let ldeg_top = cell(&top[0]).udeg;
                for t in &top {
                    assert!(is_quasi_singular(eng, t).is_ok(), "{c}");
                    assert_eq!(weight(eng, t).unwrap().wt2, c.wt2);
                }
                for (a, cs) in &dec {
                    let e = coeff(cs);
                    if e.is_zero() {
                        continue;
                    }
                    let i = n - norm(a);
                    assert_eq!(cell(&e).udeg, ldeg_top + 2 * i, "{c} α={a:?}");
                    assert_eq!(weight(eng, &e).unwrap().wt2, c.wt2);
                }
            }
        }
    }
}

fn full_direct(v: VModule, n: u32) -> BTreeMap<Cell, Vec<Element>> {
    static CACHE: OnceLock<Mutex<HashMap<(VModule, u32), BTreeMap<Cell, Vec<Element>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(r) = cache.lock().unwrap().get(&(v, n)) {
        return r.clone();
    }
    let r = semi_singular_space(v, n, false);
    cache.lock().unwrap().insert((v, n), r.clone());
    r
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn phi_maps_admissible_semi_into_full(vi in 0usize..6, seed in prop::collection::vec(-3i64..=3, 8)) {
        let v = [VModule::p(0), VModule::p(1), VModule::p(2), VModule::q(1), VModule::q(2), VModule::q(3)][vi];
        let adm = full_direct(v, 1);
        for (i, (c, basis)) in adm.iter().filter(|(c, _)| c.wt2 >= 0).enumerate() {
            let w = basis.iter().enumerate().fold(Element::zero(&basis[0].ctx), |acc, (j, b)| {
                acc.add(&b.scale(&e36::exactalg::int(seed[(i + j) % seed.len()])))
            });
            if w.is_zero() {
                continue;
            }
            let f = phi_lift(eng(), &w).unwrap();
            // φ can raise sdeg; compare with the solve at the image's sdeg
            let full = full_direct(v, f.max_sdeg().max(1));
            let fc = Cell { wt2: -c.wt2, ..*c };
            prop_assert!(full.get(&fc).map_or(false, |b| in_span(&f, b)), "{} in {}", c, v);
        }
    }
}
