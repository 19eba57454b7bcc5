//! Solvers for highest, quasi-singular and semi-singular vectors, and span comparison.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::e510::GeneratorId;
use crate::exactalg::linalg::{express_in, nullspace, rank_of, Rref, SparseMatrix, SparseVec};
use crate::exactalg::scalar::{format_scalar, Scalar};
use crate::verma::kernel::{all_keys, common_kernel};
use crate::verma::{format, phi_lift, weight, Context, Element, Engine, Family, Key, VModule};

use super::lists::{as_published, full_semi_list, highest_list, quasi_list, semi_list, Listed};

/// A weight space of M(V): (wt₃, wt₂) and udeg (which fixes Y).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Cell {
    pub wt3: (i64, i64),
    pub wt2: i64,
    pub udeg: u32,
}

impl Ord for Cell {
    fn cmp(&self, o: &Self) -> Ordering {
        self.wt3.cmp(&o.wt3).then(o.wt2.cmp(&self.wt2)).then(self.udeg.cmp(&o.udeg))
    }
}

impl PartialOrd for Cell {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "wt3 ({},{}) wt2 {} udeg {}", self.wt3.0, self.wt3.1, self.wt2, self.udeg)
    }
}

/// A cell of the highest-vector lists: ldeg and wt₃.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct LCell {
    pub ldeg: u32,
    pub wt3: (i64, i64),
}

impl fmt::Display for LCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ldeg {} wt3 ({},{})", self.ldeg, self.wt3.0, self.wt3.1)
    }
}

fn key_cell(eng: &Engine, ctx: &Context<Scalar>, k: &Key) -> Cell {
    let w = eng.key_weight(ctx, k);
    Cell { wt3: (w.h1, w.h2), wt2: w.h3, udeg: k.mono.udeg() }
}

/// Cell of a homogeneous weight vector.
pub fn cell_of(eng: &Engine, e: &Element) -> Option<Cell> {
    let w = weight(eng, e).ok()?;
    let mut udegs = e.terms().map(|(k, _)| k.mono.udeg());
    let u = udegs.next()?;
    udegs.all(|x| x == u).then_some(Cell { wt3: w.wt3, wt2: w.wt2, udeg: u })
}

pub fn lcell_of(eng: &Engine, e: &Element) -> Option<LCell> {
    let w = weight(eng, e).ok()?;
    let mut ls = e.terms().map(|(k, _)| k.mono.ldeg());
    let l = ls.next()?;
    (ls.all(|x| x == l) && e.max_sdeg() == 0).then_some(LCell { ldeg: l, wt3: w.wt3 })
}

/// sℓ₃-highest vectors of Λ⁻Λ⁺V at the given ldeg, by wt₃.
pub fn highest_vectors(v: VModule, ldeg: u32) -> BTreeMap<(i64, i64), Vec<Element>> {
    let eng = Engine::standard();
    let ctx = Context::new(v);
    let keys: Vec<Key> = all_keys(&ctx, 0).into_iter().filter(|k| k.mono.ldeg() == ldeg).collect();
    let mut groups: BTreeMap<Cell, Vec<Key>> = BTreeMap::new();
    for k in keys {
        let c = key_cell(eng, &ctx, &k);
        if c.wt3.0 >= 0 && c.wt3.1 >= 0 {
            groups.entry(c).or_default().push(k);
        }
    }
    let solved: Vec<(Cell, Vec<Element>)> = groups
        .into_par_iter()
        .map(|(c, ks)| (c, common_kernel(eng, &ctx, &ks, &[GeneratorId::E1, GeneratorId::E2])))
        .collect();
    let mut out: BTreeMap<(i64, i64), Vec<Element>> = BTreeMap::new();
    for (c, basis) in solved {
        if !basis.is_empty() {
            out.entry(c.wt3).or_default().extend(basis);
        }
    }
    out
}

/// sℓ₃-highest vectors of Λ⁻Λ⁺V for every ldeg.
pub fn all_highest_vectors(v: VModule) -> BTreeMap<LCell, Vec<Element>> {
    let mut out = BTreeMap::new();
    for ldeg in 0..=6 {
        for (wt3, b) in highest_vectors(v, ldeg) {
            out.insert(LCell { ldeg, wt3 }, b);
        }
    }
    out
}

/// Joint kernel of `ops` on every dominant weight space of S^{≤sdeg_max}Λ⁻Λ⁺V.
/// Within a cell the basis is adapted to the sdeg filtration: each vector's top sdeg
/// is that of its last coordinate and the vectors with top sdeg ≤ s span the kernel there.
pub fn solve_space(v: VModule, sdeg_max: u32, ops: &[GeneratorId], admissible_only: bool) -> BTreeMap<Cell, Vec<Element>> {
    let eng = Engine::standard();
    let ctx = Context::new(v);
    let mut groups: BTreeMap<Cell, Vec<Key>> = BTreeMap::new();
    for k in all_keys(&ctx, sdeg_max) {
        let c = key_cell(eng, &ctx, &k);
        if c.wt3.0 >= 0 && c.wt3.1 >= 0 && (!admissible_only || c.wt2 >= 0) {
            groups.entry(c).or_default().push(k);
        }
    }
    let solved: Vec<(Cell, Vec<Element>)> = groups
        .into_par_iter()
        .map(|(c, mut ks)| {
            ks.sort_by_key(|k| (k.mono.sdeg(), *k));
            (c, common_kernel(eng, &ctx, &ks, ops))
        })
        .collect();
    solved.into_iter().filter(|(_, b)| !b.is_empty()).collect()
}

pub const QUASI_OPS: [GeneratorId; 3] = [GeneratorId::E1, GeneratorId::E2, GeneratorId::E0Minus];
pub const SEMI_OPS: [GeneratorId; 4] = [GeneratorId::E1, GeneratorId::E2, GeneratorId::E0Minus, GeneratorId::E0Plus];

pub fn quasi_singular_space(v: VModule, sdeg_max: u32, admissible_only: bool) -> BTreeMap<Cell, Vec<Element>> {
    solve_space(v, sdeg_max, &QUASI_OPS, admissible_only)
}

pub fn semi_singular_space(v: VModule, sdeg_max: u32, admissible_only: bool) -> BTreeMap<Cell, Vec<Element>> {
    solve_space(v, sdeg_max, &SEMI_OPS, admissible_only)
}

/// Splits a filtration-adapted basis by top sdeg.
pub fn by_top_sdeg(basis: &[Element]) -> BTreeMap<u32, Vec<Element>> {
    let mut out: BTreeMap<u32, Vec<Element>> = BTreeMap::new();
    for e in basis {
        out.entry(e.max_sdeg()).or_default().push(e.clone());
    }
    out
}

#[derive(Debug, Clone)]
pub struct FullSemi {
    /// Direct solve without the wt₂ restriction.
    pub direct: BTreeMap<Cell, Vec<Element>>,
    /// φ-images of the semi-singular vectors of either sign of wt₂ whose image stays within the sdeg bound.
    pub from_phi: BTreeMap<Cell, Vec<Element>>,
    /// Cells where a φ-image is not in the span of the direct solve.
    pub mismatches: Vec<Cell>,
}

impl FullSemi {
    pub fn consistent(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// φ-images of span(basis) with sdeg ≤ `n`. φ reorders d⁻d⁺ into d⁺d⁻ and so can raise sdeg.
fn phi_within(eng: &Engine, basis: &[Element], n: u32) -> Vec<Element> {
    let images: Vec<Element> = basis.iter().map(|e| phi_lift(eng, e).expect("no T factor")).collect();
    let mut rows: BTreeMap<Key, SparseVec<Scalar>> = BTreeMap::new();
    for (j, im) in images.iter().enumerate() {
        for (k, c) in im.terms().filter(|(k, _)| k.mono.sdeg() > n) {
            rows.entry(*k).or_default().insert(j, c.clone());
        }
    }
    let m = SparseMatrix::from_rows(images.len(), rows.into_values().collect());
    nullspace(&m)
        .into_iter()
        .map(|c| images.iter().zip(&c).fold(Element::zero(&basis[0].ctx), |acc, (im, x)| acc.add(&im.scale(x))))
        .filter(|e| !e.is_zero())
        .collect()
}

/// Semi-singular vectors of both signs of wt₂, solved directly and cross-checked against φ.
pub fn full_semi_singular_list(v: VModule, sdeg_max: u32) -> FullSemi {
    let eng = Engine::standard();
    let direct = semi_singular_space(v, sdeg_max, false);
    let from_phi: BTreeMap<Cell, Vec<Element>> = direct
        .iter()
        .filter_map(|(c, basis)| {
            let im = phi_within(eng, basis, sdeg_max);
            (!im.is_empty()).then(|| (Cell { wt2: -c.wt2, ..*c }, im))
        })
        .collect();
    let empty = Vec::new();
    let mismatches = from_phi
        .iter()
        .filter(|(c, im)| im.iter().any(|e| !in_span(e, direct.get(c).unwrap_or(&empty))))
        .map(|(c, _)| *c)
        .collect();
    FullSemi { direct, from_phi, mismatches }
}

struct Coords {
    index: BTreeMap<Key, usize>,
}

impl Coords {
    fn new<'a>(es: impl IntoIterator<Item = &'a Element>) -> Self {
        let mut keys: BTreeSet<Key> = BTreeSet::new();
        for e in es {
            keys.extend(e.terms().map(|(k, _)| *k));
        }
        Coords { index: keys.into_iter().enumerate().map(|(i, k)| (k, i)).collect() }
    }

    fn vec(&self, e: &Element) -> SparseVec<Scalar> {
        e.terms().map(|(k, c)| (self.index[k], c.clone())).collect()
    }
}

pub fn same_span(a: &[Element], b: &[Element]) -> bool {
    let co = Coords::new(a.iter().chain(b));
    let va: Vec<_> = a.iter().map(|e| co.vec(e)).collect();
    let vb: Vec<_> = b.iter().map(|e| co.vec(e)).collect();
    let ra = rank_of(&va);
    let rb = rank_of(&vb);
    let both: Vec<_> = va.iter().chain(&vb).cloned().collect();
    ra == rb && rank_of(&both) == ra
}

/// Whether `e` lies in span(basis).
pub fn in_span(e: &Element, basis: &[Element]) -> bool {
    let co = Coords::new(basis.iter().chain(std::iter::once(e)));
    let mut r = Rref::new();
    for b in basis {
        r.insert(&co.vec(b));
    }
    r.contains(&co.vec(e))
}

#[derive(Debug, Clone, Serialize)]
pub struct CellReport {
    pub cell: String,
    pub expected: Vec<String>,
    pub expected_rank: usize,
    pub computed_dim: usize,
    pub expected_in_computed: bool,
    pub computed_in_expected: bool,
    /// Coordinates of each computed basis vector in terms of the expected entries.
    pub change_of_basis: Vec<Vec<String>>,
}

impl CellReport {
    pub fn matches(&self) -> bool {
        self.expected_in_computed && self.computed_in_expected && self.expected_rank == self.expected.len()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassificationReport {
    pub title: String,
    pub cells: Vec<CellReport>,
    pub notes: Vec<String>,
    /// Entries that are zero or not weight vectors.
    pub malformed: Vec<String>,
}

impl ClassificationReport {
    pub fn all_match(&self) -> bool {
        self.malformed.is_empty() && self.cells.iter().all(CellReport::matches)
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &CellReport> {
        self.cells.iter().filter(|c| !c.matches())
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.title);
        for c in &self.cells {
            s.push_str(&format!(
                "  {} expected {} computed {} {}\n",
                c.cell,
                c.expected.len(),
                c.computed_dim,
                if c.matches() { "OK" } else { "MISMATCH" }
            ));
            for l in &c.expected {
                s.push_str(&format!("    {l}\n"));
            }
        }
        for m in &self.malformed {
            s.push_str(&format!("  malformed entry: {m}\n"));
        }
        for n in &self.notes {
            s.push_str(&format!("  note: {n}\n"));
        }
        s
    }
}

/// Compares listed vectors with computed bases cell by cell.
pub fn compare<K: Ord + Copy + fmt::Display>(
    title: impl Into<String>,
    expected: &[Listed],
    computed: &BTreeMap<K, Vec<Element>>,
    cell: impl Fn(&Element) -> Option<K>,
) -> ClassificationReport {
    let mut by_cell: BTreeMap<K, Vec<&Listed>> = BTreeMap::new();
    let mut malformed = Vec::new();
    for l in expected {
        if l.element.is_zero() {
            malformed.push(format!("{} (zero)", l.label));
            continue;
        }
        match cell(&l.element) {
            Some(k) => by_cell.entry(k).or_default().push(l),
            None => malformed.push(format!("{} (not a weight vector)", l.label)),
        }
    }
    let keys: BTreeSet<K> = by_cell.keys().chain(computed.keys()).copied().collect();
    let empty_c: Vec<Element> = Vec::new();
    let cells = keys
        .into_iter()
        .map(|k| {
            let exp: Vec<&Listed> = by_cell.get(&k).cloned().unwrap_or_default();
            let comp = computed.get(&k).unwrap_or(&empty_c);
            let co = Coords::new(exp.iter().map(|l| &l.element).chain(comp));
            let ve: Vec<_> = exp.iter().map(|l| co.vec(&l.element)).collect();
            let vc: Vec<_> = comp.iter().map(|e| co.vec(e)).collect();
            let mut re = Rref::new();
            ve.iter().for_each(|v| {
                re.insert(v);
            });
            let mut rc = Rref::new();
            vc.iter().for_each(|v| {
                rc.insert(v);
            });
            let expected_in_computed = ve.iter().all(|v| rc.contains(v));
            let computed_in_expected = vc.iter().all(|v| re.contains(v));
            let mut change_of_basis = Vec::new();
            if re.rank() == ve.len() && computed_in_expected {
                for v in &vc {
                    let x = express_in(&ve, v, co.index.len()).expect("in span");
                    change_of_basis.push(x.iter().map(format_scalar).collect());
                }
            }
            CellReport {
                cell: k.to_string(),
                expected: exp.iter().map(|l| l.label.clone()).collect(),
                expected_rank: re.rank(),
                computed_dim: rc.rank(),
                expected_in_computed,
                computed_in_expected,
                change_of_basis,
            }
        })
        .collect();
    let notes = expected.iter().filter_map(Listed::note).collect();
    ClassificationReport { title: title.into(), cells, notes, malformed }
}

/// Rendering in the Δ / ⟨·,·,·⟩ notation of a basis, one vector per line.
pub fn render_basis(basis: &[Element]) -> Vec<String> {
    basis.iter().map(|e| format::render(e, format::Style::Math)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ListKind {
    Highest,
    Quasi,
    Semi,
    /// Semi-singular vectors of both signs of wt₂.
    FullSemi,
}

impl fmt::Display for ListKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ListKind::Highest => "highest",
            ListKind::Quasi => "quasi-singular",
            ListKind::Semi => "semi-singular",
            ListKind::FullSemi => "semi-singular (both signs of wt2)",
        })
    }
}

/// Solves for `kind` in M(V) with sdeg ≤ `sdeg_max` and compares with the list, amended or as published.
/// `sdeg_max` is ignored for [`ListKind::Highest`].
pub fn classification_report(kind: ListKind, v: VModule, sdeg_max: u32, published: bool) -> ClassificationReport {
    let eng = Engine::standard();
    let pick = |l: Vec<Listed>| if published { as_published(&l) } else { l };
    let title = format!("{kind} vectors of {v}{}", if published { " (published list)" } else { "" });
    let mut r = match kind {
        ListKind::Highest => compare(title, &pick(highest_list(v)), &all_highest_vectors(v), |e| lcell_of(eng, e)),
        ListKind::Quasi => compare(title, &pick(quasi_list(v, sdeg_max)), &quasi_singular_space(v, sdeg_max, true), |e| cell_of(eng, e)),
        ListKind::Semi => compare(title, &pick(semi_list(v, sdeg_max)), &semi_singular_space(v, sdeg_max, true), |e| cell_of(eng, e)),
        ListKind::FullSemi => {
            let fs = full_semi_singular_list(v, sdeg_max);
            let mut r = compare(title, &pick(full_semi_list(v, sdeg_max)), &fs.direct, |e| cell_of(eng, e));
            for c in &fs.mismatches {
                r.notes.push(format!("φ-images of the admissible solutions and the direct solve differ at {c}"));
            }
            r
        }
    };
    r.notes.extend(extra_notes(kind, v, sdeg_max));
    r
}

fn extra_notes(kind: ListKind, v: VModule, sdeg_max: u32) -> Vec<String> {
    let mut out = Vec::new();
    let p = v.degree;
    if kind == ListKind::Quasi && (v.family == Family::X || p == 0) && sdeg_max > p + 2 {
        out.push(format!(
            "the family D₁ⁿd⁻₁d⁺₁x₁^p − … stops at n = p+2 = {}: at n = p+3 its weight (−1,0) is not dominant",
            p + 2
        ));
    }
    if kind == ListKind::FullSemi && v.family == Family::Partial {
        if p == 1 {
            out.push(
                "published identity ∂̂₂∂₂ − ∂̂₃∂₃ − Δ⁻(d⁺₁∂_*) = d⁺₁Δ⁻(∂_*): the left side is not a weight vector; \
                 it holds as ∂̂₂∂₃ − ∂̂₃∂₂ − Δ⁻(d⁺₁∂_*) = d⁺₁Δ⁻(∂_*), and the list uses d⁺₁Δ⁻(∂_*)"
                    .into(),
            );
        }
        if p == 2 {
            out.push(
                "published identity for d⁻₁d⁺₁Δ⁻(Δ⁺(∂_*)∂_*): the right side holds with ∂₂ and ∂₃ exchanged \
                 (∂̂₂d⁻₁Δ⁺(∂_*)∂₃ − ∂̂₃d⁻₁Δ⁺(∂_*)∂₂ − …); the list uses the left side"
                    .into(),
            );
        }
    }
    out
}
