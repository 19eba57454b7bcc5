//! One line per acceptance criterion. Exits non-zero when a criterion fails in an undocumented way.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use e36::classify::lists::nested_cyc_entry;
use e36::classify::*;
use e36::dops::*;
use e36::e510::{check_relations, GeneratorId, E510};
use e36::exactalg::{binomial, int, CommPoly, VarSet};
use e36::singular::*;
use e36::verma::kernel::{all_keys, highest_by_weight};
use e36::verma::{Context, Engine, Family, MElement, VModule};
use e36::Scalar;

struct Outcome {
    pass: bool,
    detail: String,
    /// A failure that is recorded and explained; the run still succeeds.
    documented: bool,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass: ok, detail: detail.into(), documented: false }
}

fn eng() -> &'static Engine {
    Engine::standard()
}

fn modules() -> Vec<VModule> {
    (0..=4).map(VModule::p).chain((1..=4).map(VModule::q)).collect()
}

fn structure() -> Outcome {
    let t = Instant::now();
    let rep = check_relations(&E510::standard());
    let secs = t.elapsed().as_secs_f64();
    let flipped = !check_relations(&E510::with_flipped_epsilon()).all_ok();
    let fams = rep.families().len();
    outcome(
        rep.all_ok() && flipped && secs < 10.0,
        format!("{} relations in {fams} families incl. super-Jacobi, {secs:.1} s; ε-flip detected: {flipped}", rep.checks.len()),
    )
}

fn poly_falling(x: &CommPoly, n: u32) -> CommPoly {
    (0..n).fold(CommPoly::constant(x.vars, int(1)), |acc, i| acc.mul(&x.sub(&CommPoly::constant(x.vars, int(i as i64)))))
}

fn d_calculus() -> Outcome {
    let t = Instant::now();
    let mut failures: Vec<String> = Vec::new();
    let mut count = 0usize;
    let ctxs: Vec<Context<Scalar>> =
        vec![Context::new(VModule::p(2)), Context::new(VModule::q(2)), Context::new(VModule::p(1)), Context::new(VModule::q(0))];
    let mut holds = |id: &OpIdentity, sdeg: u32, ldeg: u32| {
        count += 1;
        for ctx in &ctxs {
            if let Err(f) = id.verify(eng(), &spanning_set(ctx, sdeg, ldeg)) {
                failures.push(f.name);
                return;
            }
        }
    };
    for s in 0..=2 {
        for (i, j) in [(1, 2), (1, 3), (2, 3)] {
            holds(&d_commute(i, j, s), 1, 2);
        }
    }
    let (a, d, b, h) = (DOp::dhat(2), DOp::dhat(3), DOp::gen(GeneratorId::F2), h2_shift(1));
    for r in [
        OpIdentity::commutator("[a,b]", &a, &b, DOp::zero()),
        OpIdentity::commutator("[d,b]", &d, &b, a.clone()),
        OpIdentity::commutator("[d,a]", &d, &a, DOp::zero()),
        OpIdentity::commutator("[h,b]", &h, &b, b.scale(&int(-2))),
        OpIdentity::commutator("[h,a]", &h, &a, a.scale(&int(-1))),
        OpIdentity::commutator("[h,d]", &h, &d, d.clone()),
    ] {
        holds(&r, 1, 2);
    }
    for s in 0..=2 {
        for k in 0..=5 {
            holds(&OpIdentity::new(format!("D2^{k}"), d_op(2, s).pow(k), d2_power_expanded(k, s)), 0, 1);
        }
    }
    holds(&OpIdentity::new("B = B'", b_op(), b_op_alt()), 1, 3);
    for id in c_relations() {
        holds(&id, 1, 3);
    }
    for s in 0..=2 {
        for i in 0..=3 {
            for id in k_lemma(s, i) {
                holds(&id, 1, 2);
            }
        }
    }
    for i in 0..=2 {
        for j in 0..=2 {
            for k in 0..=2 {
                holds(&k_move(i, j, k, KMoveForm::H1), 1, 2);
            }
        }
    }
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

    // falling factorial shift identity, m ≤ 8, in ℚ[x, r]
    let x = CommPoly::var(VarSet::X, 0);
    let r = CommPoly::var(VarSet::X, 1);
    for m in 0..=8u32 {
        count += 1;
        let lhs = poly_falling(&x.sub(&r), m);
        let rhs = (0..=m).fold(CommPoly::zero(VarSet::X), |acc, i| {
            let sign = if i % 2 == 0 { int(1) } else { int(-1) };
            let shifted = x.sub(&CommPoly::constant(VarSet::X, int(i as i64)));
            acc.add(&poly_falling(&r, i).mul(&poly_falling(&shifted, m - i)).scale(&(sign * binomial(m as i64, i as i64))))
        });
        if lhs != rhs {
            failures.push(format!("falling factorial m={m}"));
        }
    }

    // closed formula against the iterated product, |α| ≤ 4, s ≤ 2
    for v in (0..=4).flat_map(|n| [VModule::p(n), VModule::q(n)]) {
        let ctx: Context<Scalar> = Context::new(v);
        let set = spanning_set(&ctx, 0, 1);
        for n in 0..=4 {
            for alpha in indices_of_norm(n) {
                for s in 0..=2 {
                    count += 1;
                    let id = OpIdentity::new(format!("closed {alpha:?}{{{s}}} on {v}"), d_power_closed(alpha, s), d_power(alpha, s));
                    if let Err(f) = id.verify(eng(), &set) {
                        failures.push(f.name);
                    }
                }
            }
        }
    }

    // leading terms of D^α{s} m₀ and of the K-correction
    for v in [VModule::p(0), VModule::p(1), VModule::p(2), VModule::q(1), VModule::q(2)] {
        let ctx: Context<Scalar> = Context::new(v);
        for (w, hs) in highest_by_weight(eng(), &ctx, &all_keys(&ctx, 0)) {
            for m0 in &hs {
                for n in 0..=3 {
                    for a in indices_of_norm(n) {
                        for s in 0..=2 {
                            count += 1;
                            let img = d_power(a, s).apply(eng(), m0);
                            let e = [a[0] as u16, a[1] as u16, a[2] as u16];
                            let parts = by_dhat(&img);
                            let top = parts.get(&e).map(|c| times_dhat(e, c)).unwrap_or_else(|| MElement::zero(&ctx));
                            if !parts.keys().all(|k| *k <= e) || top != predicted_leading(a, s, (w.h1, w.h2), m0) {
                                failures.push(format!("leading term {a:?}{{{s}}} on {v}"));
                            }
                        }
                    }
                }
                for plus in [false, true] {
                    if !m0.terms().all(|(k, _)| if plus { k.mono.minus == 0 } else { k.mono.plus == 0 }) {
                        continue;
                    }
                    let d3 = if plus { GeneratorId::DPlus(3) } else { GeneratorId::DMinus(3) };
                    for a in [[1u32, 1, 0], [2, 1, 0], [1, 2, 0], [1, 1, 1], [2, 2, 0], [3, 1, 0]] {
                        count += 1;
                        let op = DOp::product([d_power([a[0] - 1, a[1] - 1, a[2]], 2), DOp::gen(d3), k_op_expanded()]);
                        let lhs = by_dhat(&op.apply(eng(), m0));
                        let rhs = by_dhat(&k_leading_prediction(eng(), a, plus, (w.h1, w.h2), m0));
                        let e = [a[0] as u16, a[1] as u16 - 1, a[2] as u16];
                        if !lhs.keys().all(|k| *k <= e) || lhs.get(&e) != rhs.get(&e) {
                            failures.push(format!("K leading term {a:?} on {v}"));
                        }
                    }
                }
            }
        }
    }
    let secs = t.elapsed().as_secs_f64();
    outcome(
        failures.is_empty() && secs < 120.0,
        format!("{count} identities on spanning sets, {} failing, {secs:.1} s{}", failures.len(), failures.first().map_or(String::new(), |f| format!(" (first: {f})"))),
    )
}

fn cell_set(list: &[Listed], v: VModule, lcell: bool) -> BTreeSet<String> {
    amended(list)
        .filter_map(|l| {
            if lcell {
                lcell_of(eng(), &l.element).map(|c| c.to_string())
            } else {
                cell_of(eng(), &l.element).map(|c| c.to_string())
            }
        })
        .map(|c| format!("{v} {c}"))
        .collect()
}

fn mismatch_set(r: &ClassificationReport, v: VModule) -> BTreeSet<String> {
    r.mismatches().map(|c| format!("{v} {}", c.cell)).collect()
}

fn highest() -> Outcome {
    let mut ok = true;
    let (mut published, mut amended_cells) = (BTreeSet::new(), BTreeSet::new());
    let mut cells = 0;
    for v in modules() {
        let r = classification_report(ListKind::Highest, v, 0, false);
        ok &= r.all_match();
        cells += r.cells.len();
        published.extend(mismatch_set(&classification_report(ListKind::Highest, v, 0, true), v));
        amended_cells.extend(cell_set(&highest_list(v), v, true));
    }
    let documented = published == amended_cells;
    outcome(
        ok && documented,
        format!(
            "{cells} cells (ldeg 0..6, p, q ≤ 4) match with the corrected ldeg-4 exponent; as printed, {} cells differ, all of them the exponent entry",
            published.len()
        ),
    )
}

fn quasi_semi() -> Outcome {
    let mut amended_ok = true;
    let (mut published, mut amended_cells) = (BTreeSet::new(), BTreeSet::new());
    for v in modules() {
        for kind in [ListKind::Quasi, ListKind::Semi, ListKind::FullSemi] {
            amended_ok &= classification_report(kind, v, 4, false).all_match();
            published.extend(mismatch_set(&classification_report(kind, v, 4, true), v).into_iter().map(|c| format!("{kind}: {c}")));
            let list = match kind {
                ListKind::Quasi => quasi_list(v, 4),
                ListKind::Semi => semi_list(v, 4),
                _ => full_semi_list(v, 4),
            };
            amended_cells.extend(cell_set(&list, v, false).into_iter().map(|c| format!("{kind}: {c}")));
        }
    }
    let documented = amended_ok && published.is_subset(&amended_cells);
    Outcome {
        pass: published.is_empty() && amended_ok,
        detail: format!(
            "as printed, {} cells differ from the solver at sdeg ≤ 4 (sign typos, omitted vectors, a range error); \
             with the recorded amendments every list matches: {amended_ok}; every differing cell is an amended cell: {documented}",
            published.len()
        ),
        documented,
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

fn module(c: CaseId, n: u32) -> VModule {
    match c.family() {
        Family::X => VModule::p(n),
        Family::Partial => VModule::q(n),
    }
}

fn verification() -> Outcome {
    let g = grid();
    let mut bad = Vec::new();
    for &(c, n, r) in &g {
        let singular = verify_singular(&singular_vector(c, n, r).unwrap()).singular;
        let shifted = singular_vector_in(c, module(c, n), r, c.theta(r) + int(1)).unwrap();
        if !singular || verify_singular(&shifted).singular {
            bad.push(format!("{c} n={n} r={r}"));
        }
    }
    outcome(bad.is_empty(), format!("{} vectors singular at their θ and not at θ+1; failing: {bad:?}", g.len()))
}

fn completeness() -> Outcome {
    let t = Instant::now();
    let mut problems = Vec::new();
    let mut hits = 0;
    let mods: Vec<VModule> = (0..=3).map(VModule::p).chain((1..=3).map(VModule::q)).collect();
    for v in mods {
        for r in 0..=4 {
            let res = search_singular(v, r, 7);
            hits += res.hits.len();
            if !res.complete() {
                problems.push(res.to_text());
            }
            for h in &res.hits {
                if let (Some(c), e36::singular::ThetaValue::Value(th)) = (h.matched, &h.theta) {
                    if *th != c.theta(r) {
                        problems.push(format!("{v} r={r} case {c} at θ={th}"));
                    }
                }
            }
        }
    }
    let secs = t.elapsed().as_secs_f64();
    outcome(
        problems.is_empty() && secs < 1800.0,
        format!("p ≤ 3, q ≤ 3, r ≤ 4, udeg ≤ 7: {hits} hits, all classified, no case missing, {secs:.1} s{}", problems.first().map_or(String::new(), |p| format!("; {p}"))),
    )
}

fn contractions() -> Outcome {
    let g = grid();
    let bad: Vec<String> = g
        .iter()
        .filter(|(c, n, r)| !contraction_property(&decomposition_scan(&singular_vector(*c, *n, *r).unwrap())))
        .map(|(c, n, r)| format!("{c} n={n} r={r}"))
        .collect();
    outcome(bad.is_empty(), format!("{} vectors: every contraction semi-singular, one with wt2 ≥ 0; failing: {bad:?}", g.len()))
}

fn abcd() -> Outcome {
    match build_abcd() {
        Err(e) => outcome(false, e.to_string()),
        Ok(q) => {
            let rels = q.relations();
            let ok = rels.iter().all(|r| r.holds);
            let printed_fail = q.printed_variants().iter().filter(|(r, _)| !r.holds).count();
            outcome(
                ok,
                format!(
                    "{} relations two-sided incl. f3(da − ad) = e3(da − ad) = 0; {printed_fail} printed product relations replaced by their sl2-consistent forms",
                    rels.len()
                ),
            )
        }
    }
}

fn ledger() -> Outcome {
    let rep = theta_report(CaseId::C6, VModule::p(0), 1).unwrap();
    let pc = proof_comparison(CaseId::C6).unwrap();
    let six = rep.printed == int(0)
        && rep.verified == ThetaSet::Values(vec![int(2)])
        && pc.ratio == Some(int(-2))
        && verify_singular(&pc.combination).singular;
    let nine = proof_comparison(CaseId::C9).unwrap().ratio == Some(int(-2));

    // the ldeg-4 entry ⟨d⁻,d⁻,⟨d⁺,d⁺,x⟩x⟩x₁^k is highest for k = p−2; the printed k = p−1 has x-degree p+1
    let mut exponent = true;
    for p in 2..=4u32 {
        let v = VModule::p(p);
        let h = highest_vectors(v, 4);
        let good = nested_cyc_entry(p as i64 - 2).unwrap().to_element(&Context::new(v)).unwrap();
        exponent &= h.get(&(p as i64 - 2, 0)).is_some_and(|b| in_span(&good, b));
        exponent &= nested_cyc_entry(p as i64 - 1).unwrap().v_degrees() == vec![p + 1];
    }
    outcome(
        six && nine && exponent,
        format!(
            "case 6: printed θ = 0, singular only at θ = 2, the case analysis gives v2 + v3 = −2 × printed vector ({six}); \
             case 9: v2 + v3 = −2 × printed vector ({nine}); ldeg-4 highest entry needs x1^(p−2), x1^(p−1) has degree p+1 ({exponent})"
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("structure regression", structure),
        ("D-calculus", d_calculus),
        ("highest-vector lists", highest),
        ("quasi/semi classification", quasi_semi),
        ("singular verification", verification),
        ("completeness search", completeness),
        ("contraction property", contractions),
        ("abcd calculus", abcd),
        ("discrepancy ledger", ledger),
    ];
    let mut ok = true;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let o = f();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {} {name}: {tag}: {}", i + 1, o.detail);
        ok &= o.pass || o.documented;
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
