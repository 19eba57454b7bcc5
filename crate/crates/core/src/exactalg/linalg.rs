//! Exact sparse linear algebra over ℚ and over ℚ[θ].

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::scalar::Scalar;
use super::theta::ThetaPoly;

pub type SparseVec<C> = BTreeMap<usize, C>;

/// Row-major sparse matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix<C> {
    pub rows: usize,
    pub cols: usize,
    data: Vec<SparseVec<C>>,
}

impl<C: Clone + Zero + PartialEq> SparseMatrix<C> {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, data: vec![BTreeMap::new(); rows] }
    }

    pub fn from_dense(rows: &[Vec<C>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::new(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            for (j, v) in r.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn from_rows(cols: usize, rows: Vec<SparseVec<C>>) -> Self {
        SparseMatrix { rows: rows.len(), cols, data: rows }
    }

    pub fn set(&mut self, r: usize, c: usize, v: C) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        if v.is_zero() {
            self.data[r].remove(&c);
        } else {
            self.data[r].insert(c, v);
        }
    }

    pub fn get(&self, r: usize, c: usize) -> C {
        self.data[r].get(&c).cloned().unwrap_or_else(C::zero)
    }

    pub fn row(&self, r: usize) -> &SparseVec<C> {
        &self.data[r]
    }

    pub fn row_vecs(&self) -> &[SparseVec<C>] {
        &self.data
    }

    pub fn push_row(&mut self, row: SparseVec<C>) {
        assert!(row.keys().all(|&c| c < self.cols));
        self.data.push(row);
        self.rows += 1;
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }

    pub fn map<D: Clone + Zero + PartialEq>(&self, f: impl Fn(&C) -> D) -> SparseMatrix<D> {
        let mut m = SparseMatrix::new(self.rows, self.cols);
        for (i, r) in self.data.iter().enumerate() {
            for (&j, v) in r {
                m.set(i, j, f(v));
            }
        }
        m
    }
}

impl<C> SparseMatrix<C>
where
    C: Clone + Zero + PartialEq,
    for<'a> &'a C: std::ops::Mul<&'a C, Output = C>,
{
    pub fn mul_vec(&self, v: &[C]) -> Vec<C> {
        self.data
            .iter()
            .map(|r| {
                let mut acc = C::zero();
                for (&j, a) in r {
                    acc = acc + a * &v[j];
                }
                acc
            })
            .collect()
    }
}

fn axpy(row: &mut SparseVec<Scalar>, f: &Scalar, other: &SparseVec<Scalar>) {
    // row += f * other
    for (&c, v) in other {
        let e = row.entry(c).or_insert_with(Scalar::zero);
        *e += f * v;
        if e.is_zero() {
            row.remove(&c);
        }
    }
}

/// Reduced row echelon form built incrementally; pivot rows have leading entry 1
/// and zeros in every other pivot column.
#[derive(Debug, Clone, Default)]
pub struct Rref {
    pivots: BTreeMap<usize, SparseVec<Scalar>>,
}

impl Rref {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_cols(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    pub fn rows(&self) -> impl Iterator<Item = &SparseVec<Scalar>> {
        self.pivots.values()
    }

    /// Remainder of `v` after elimination against the pivots.
    pub fn reduce(&self, v: &SparseVec<Scalar>) -> SparseVec<Scalar> {
        let mut row = v.clone();
        let hits: Vec<usize> = row.keys().copied().filter(|c| self.pivots.contains_key(c)).collect();
        for c in hits {
            if let Some(f) = row.get(&c).cloned() {
                axpy(&mut row, &-f, &self.pivots[&c]);
            }
        }
        row
    }

    pub fn contains(&self, v: &SparseVec<Scalar>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds a row; returns true when the rank grew.
    pub fn insert(&mut self, v: &SparseVec<Scalar>) -> bool {
        let mut row = self.reduce(v);
        let Some((&lead, lv)) = row.iter().next() else {
            return false;
        };
        let inv = Scalar::one() / lv;
        for x in row.values_mut() {
            *x *= &inv;
        }
        for p in self.pivots.values_mut() {
            if let Some(f) = p.get(&lead).cloned() {
                axpy(p, &-f, &row);
            }
        }
        self.pivots.insert(lead, row);
        true
    }

    /// Kernel basis of the matrix whose rows were inserted, over `cols` columns.
    /// One vector per free column (ascending), scaled so the first nonzero entry is 1.
    pub fn kernel(&self, cols: usize) -> Vec<Vec<Scalar>> {
        let mut out = Vec::new();
        for f in 0..cols {
            if self.pivots.contains_key(&f) {
                continue;
            }
            let mut v = vec![Scalar::zero(); cols];
            v[f] = Scalar::one();
            for (&c, row) in &self.pivots {
                if let Some(x) = row.get(&f) {
                    v[c] = -x.clone();
                }
            }
            normalize_first(&mut v);
            out.push(v);
        }
        out
    }
}

pub fn normalize_first(v: &mut [Scalar]) {
    if let Some(first) = v.iter().find(|x| !x.is_zero()).cloned() {
        let inv = Scalar::one() / first;
        for x in v.iter_mut() {
            *x *= &inv;
        }
    }
}

pub fn dense_to_sparse(v: &[Scalar]) -> SparseVec<Scalar> {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

pub fn rref_of(m: &SparseMatrix<Scalar>) -> Rref {
    let mut r = Rref::new();
    for row in m.row_vecs() {
        r.insert(row);
    }
    r
}

/// Kernel basis of `m` with deterministic pivoting.
pub fn nullspace(m: &SparseMatrix<Scalar>) -> Vec<Vec<Scalar>> {
    rref_of(m).kernel(m.cols)
}

pub fn rank(m: &SparseMatrix<Scalar>) -> usize {
    rref_of(m).rank()
}

/// Rank of a family of sparse vectors.
pub fn rank_of(vs: &[SparseVec<Scalar>]) -> usize {
    let mut r = Rref::new();
    for v in vs {
        r.insert(v);
    }
    r.rank()
}

/// One solution of `m x = b`, if any.
pub fn solve(m: &SparseMatrix<Scalar>, b: &[Scalar]) -> Option<Vec<Scalar>> {
    let n = m.cols;
    let mut r = Rref::new();
    for (i, row) in m.row_vecs().iter().enumerate() {
        let mut aug = row.clone();
        if !b[i].is_zero() {
            aug.insert(n, b[i].clone());
        }
        r.insert(&aug);
    }
    if r.pivots.contains_key(&n) {
        return None;
    }
    let mut x = vec![Scalar::zero(); n];
    for (&c, row) in &r.pivots {
        if let Some(v) = row.get(&n) {
            x[c] = v.clone();
        }
    }
    Some(x)
}

/// Coordinates of `v` in terms of the vectors `basis` (which must be independent), if `v` lies in their span.
pub fn express_in(basis: &[SparseVec<Scalar>], v: &SparseVec<Scalar>, dim: usize) -> Option<Vec<Scalar>> {
    let mut m = SparseMatrix::new(dim, basis.len());
    for (j, b) in basis.iter().enumerate() {
        for (&i, x) in b {
            m.set(i, j, x.clone());
        }
    }
    let mut rhs = vec![Scalar::zero(); dim];
    for (&i, x) in v {
        rhs[i] = x.clone();
    }
    solve(&m, &rhs)
}

/// Kernel data of a matrix with entries in ℚ[θ].
#[derive(Debug, Clone, PartialEq)]
pub struct ParamKernel {
    pub generic_rank: usize,
    /// Basis of the kernel over ℚ(θ), denominators cleared, entries coprime.
    pub generic_basis: Vec<Vec<ThetaPoly>>,
    /// Rational θ at which the kernel is larger than generically.
    pub special_points: Vec<SpecialPoint>,
    /// Irreducible-over-ℚ factors without rational roots at whose roots the rank drops.
    pub residual_factors: Vec<ThetaPoly>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpecialPoint {
    pub theta: Scalar,
    pub rank: usize,
    /// Full kernel basis at this θ.
    pub kernel: Vec<Vec<Scalar>>,
}

pub fn specialize(m: &SparseMatrix<ThetaPoly>, t: &Scalar) -> SparseMatrix<Scalar> {
    m.map(|p| p.eval(t))
}

struct Bareiss {
    /// (pivot row, pivot column, pivot value)
    pivots: Vec<(SparseVec<ThetaPoly>, usize, ThetaPoly)>,
}

fn bareiss(m: &SparseMatrix<ThetaPoly>) -> Bareiss {
    let mut rows: Vec<SparseVec<ThetaPoly>> = m.row_vecs().to_vec();
    rows.retain(|r| !r.is_empty());
    let mut prev = ThetaPoly::one();
    let mut pivots = Vec::new();
    for col in 0..m.cols {
        let Some(pi) = rows.iter().position(|r| r.contains_key(&col)) else {
            continue;
        };
        let prow = rows.swap_remove(pi);
        let p = prow[&col].clone();
        for r in rows.iter_mut() {
            let a = r.remove(&col).unwrap_or_else(ThetaPoly::zero);
            let mut next = SparseVec::new();
            let keys: std::collections::BTreeSet<usize> =
                r.keys().chain(prow.keys()).copied().filter(|&k| k > col).collect();
            for k in keys {
                let x = r.get(&k).map(|v| &p * v).unwrap_or_else(ThetaPoly::zero);
                let y = match (a.is_zero(), prow.get(&k)) {
                    (false, Some(v)) => &a * v,
                    _ => ThetaPoly::zero(),
                };
                let num = x - y;
                if num.is_zero() {
                    continue;
                }
                let q = num.div_exact(&prev).expect("fraction-free elimination must divide exactly");
                next.insert(k, q);
            }
            *r = next;
        }
        rows.retain(|r| !r.is_empty());
        prev = p.clone();
        pivots.push((prow, col, p));
    }
    Bareiss { pivots }
}

fn content_reduce(v: &mut [ThetaPoly], den: &mut ThetaPoly) {
    let mut g = den.clone();
    for x in v.iter() {
        g = g.gcd(x);
    }
    if !g.is_zero() && g.degree() != Some(0) {
        for x in v.iter_mut() {
            *x = x.div_exact(&g).unwrap();
        }
        *den = den.div_exact(&g).unwrap();
    }
}

fn generic_kernel(b: &Bareiss, cols: usize) -> Vec<Vec<ThetaPoly>> {
    let pivot_cols: Vec<usize> = b.pivots.iter().map(|(_, c, _)| *c).collect();
    let mut out = Vec::new();
    for f in 0..cols {
        if pivot_cols.contains(&f) {
            continue;
        }
        let mut num = vec![ThetaPoly::zero(); cols];
        num[f] = ThetaPoly::one();
        let mut den = ThetaPoly::one();
        for (row, c, p) in b.pivots.iter().rev() {
            let mut s = ThetaPoly::zero();
            for (&j, a) in row {
                if j != *c {
                    s = s + a * &num[j];
                }
            }
            for x in num.iter_mut() {
                *x = &*x * p;
            }
            den = &den * p;
            num[*c] = -s;
            content_reduce(&mut num, &mut den);
        }
        // the vector is num/den; den is a unit multiple of something nonzero, drop it
        let lead = num.iter().find(|x| !x.is_zero()).map(|x| x.leading()).unwrap();
        let inv = Scalar::one() / lead;
        for x in num.iter_mut() {
            *x = x.scale(&inv);
        }
        out.push(num);
    }
    out
}

fn reduce_mod(p: &ThetaPoly, f: &ThetaPoly) -> ThetaPoly {
    p.div_rem(f).1
}

/// Rank of `m` over ℚ[θ]/(g) for every piece g of a coprime splitting of the squarefree `f`.
fn rank_mod(m: &SparseMatrix<ThetaPoly>, f: &ThetaPoly) -> Vec<(ThetaPoly, usize)> {
    let mut rows: Vec<SparseVec<ThetaPoly>> = m
        .row_vecs()
        .iter()
        .map(|r| {
            r.iter()
                .map(|(&c, v)| (c, reduce_mod(v, f)))
                .filter(|(_, v)| !v.is_zero())
                .collect()
        })
        .collect();
    let mut rank = 0;
    for col in 0..m.cols {
        let Some(pi) = rows.iter().position(|r| r.contains_key(&col)) else {
            continue;
        };
        let prow = rows.swap_remove(pi);
        let g = prow[&col].clone();
        let (d, s, _) = g.ext_gcd(f);
        if d.degree() != Some(0) {
            let other = f.div_exact(&d).unwrap();
            let mut out = rank_mod(m, &d);
            out.extend(rank_mod(m, &other));
            return out;
        }
        // s is the inverse of g modulo f
        let prow: SparseVec<ThetaPoly> = prow
            .into_iter()
            .map(|(c, v)| (c, reduce_mod(&(&v * &s), f)))
            .collect();
        for r in rows.iter_mut() {
            if let Some(a) = r.remove(&col) {
                for (&k, v) in &prow {
                    if k == col {
                        continue;
                    }
                    let cur = r.remove(&k).unwrap_or_else(ThetaPoly::zero);
                    let nv = reduce_mod(&(cur - &a * v), f);
                    if !nv.is_zero() {
                        r.insert(k, nv);
                    }
                }
            }
        }
        rows.retain(|r| !r.is_empty());
        rank += 1;
    }
    vec![(f.monic(), rank)]
}

/// Kernel of a matrix over ℚ[θ]: generic kernel, rational special points and residual factors.
pub fn param_nullspace(m: &SparseMatrix<ThetaPoly>) -> ParamKernel {
    let b = bareiss(m);
    let generic_rank = b.pivots.len();
    let generic_basis = generic_kernel(&b, m.cols);
    let mut special_points = Vec::new();
    let mut residual_factors = Vec::new();
    if let Some((_, _, last)) = b.pivots.last() {
        // rank can only drop where the last fraction-free pivot (a maximal minor) vanishes
        for t in last.rational_roots() {
            let mt = specialize(m, &t);
            let r = rref_of(&mt);
            if r.rank() < generic_rank {
                special_points.push(SpecialPoint { theta: t, rank: r.rank(), kernel: r.kernel(m.cols) });
            }
        }
        let rest = last.strip_rational_roots();
        if rest.degree().unwrap_or(0) > 0 {
            let sqfree = rest.div_exact(&rest.gcd(&rest.derivative())).unwrap().monic();
            for (g, r) in rank_mod(m, &sqfree) {
                if r < generic_rank && g.degree().unwrap_or(0) > 0 {
                    residual_factors.push(g);
                }
            }
        }
    }
    ParamKernel { generic_rank, generic_basis, special_points, residual_factors }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::scalar::int;

    fn q(v: &[&[i64]]) -> SparseMatrix<Scalar> {
        SparseMatrix::from_dense(&v.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect::<Vec<_>>())
    }

    #[test]
    fn kernel_of_small_matrix() {
        let m = q(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = nullspace(&m);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
            assert_eq!(v.iter().find(|x| !x.is_zero()).unwrap(), &int(1));
        }
        assert_eq!(rank(&m), 1);
    }

    #[test]
    fn solve_and_express() {
        let m = q(&[&[1, 1], &[1, -1]]);
        assert_eq!(solve(&m, &[int(3), int(1)]), Some(vec![int(2), int(1)]));
        let sing = q(&[&[1, 1], &[1, 1]]);
        assert_eq!(solve(&sing, &[int(1), int(2)]), None);
    }

    fn t(a: i64, b: i64) -> ThetaPoly {
        ThetaPoly::linear(int(a), int(b))
    }

    #[test]
    fn parametric_kernel_special_point() {
        // [[θ-2, 1], [0, θ-3]] is singular only at θ = 2 and θ = 3
        let m = SparseMatrix::from_dense(&[vec![t(-2, 1), t(1, 0)], vec![t(0, 0), t(-3, 1)]]);
        let k = param_nullspace(&m);
        assert_eq!(k.generic_rank, 2);
        assert!(k.generic_basis.is_empty());
        let thetas: Vec<Scalar> = k.special_points.iter().map(|s| s.theta.clone()).collect();
        assert_eq!(thetas, vec![int(2), int(3)]);
        for s in &k.special_points {
            assert_eq!(s.kernel.len(), 1);
        }
        assert!(k.residual_factors.is_empty());
    }

    #[test]
    fn parametric_kernel_irrational() {
        // det = θ² - 2
        let m = SparseMatrix::from_dense(&[vec![t(0, 1), t(2, 0)], vec![t(1, 0), t(0, 1)]]);
        let k = param_nullspace(&m);
        assert!(k.special_points.is_empty());
        assert_eq!(k.residual_factors, vec![ThetaPoly::new(vec![int(-2), int(0), int(1)])]);
    }

    #[test]
    fn parametric_generic_kernel() {
        let m = SparseMatrix::from_dense(&[vec![t(0, 1), t(1, 0), t(1, 1)]]);
        let k = param_nullspace(&m);
        assert_eq!(k.generic_rank, 1);
        assert_eq!(k.generic_basis.len(), 2);
        for v in &k.generic_basis {
            let s = m.mul_vec(v);
            assert!(s[0].is_zero());
        }
    }
}
