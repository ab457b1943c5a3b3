//! Linear algebra over `F_q`: row reduction, canonical subspace
//! representatives and exhaustive subspace enumeration.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::gfarith::{make_field_with, FieldElement, FiniteField};
use crate::limits::Limits;
use crate::qcalc::q_binomial_recurrence;

/// Dense row-major matrix of element codes over one field.
#[derive(Clone)]
pub struct MatrixFq {
    field: Arc<FiniteField>,
    rows: usize,
    cols: usize,
    entries: Vec<u32>,
}

impl MatrixFq {
    pub fn new(field: Arc<FiniteField>, rows: usize, cols: usize, entries: Vec<u32>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|&&c| c >= field.order()) {
            return Err(Error::InvalidArgument(format!("{bad} is not an element code of F_{}", field.order())));
        }
        Ok(MatrixFq { field, rows, cols, entries })
    }

    pub fn zero(field: Arc<FiniteField>, rows: usize, cols: usize) -> Self {
        MatrixFq { field, rows, cols, entries: vec![0; rows * cols] }
    }

    pub fn identity(field: Arc<FiniteField>, n: usize) -> Self {
        let mut m = MatrixFq::zero(field, n, n);
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        m
    }

    /// Stacks equal-length rows of codes; `cols` is needed for the empty case.
    pub fn from_rows(field: Arc<FiniteField>, cols: usize, rows: &[Vec<u32>]) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch(format!("row of length {} in a {cols}-column matrix", r.len())));
        }
        let entries = rows.concat();
        MatrixFq::new(field, rows.len(), cols, entries)
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> FieldElement {
        self.field.element(self.entries[r * self.cols + c]).expect("entries are valid codes")
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn codes(&self) -> &[u32] {
        &self.entries
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

impl PartialEq for MatrixFq {
    fn eq(&self, other: &Self) -> bool {
        self.field.id() == other.field.id()
            && self.rows == other.rows
            && self.cols == other.cols
            && self.entries == other.entries
    }
}

impl Eq for MatrixFq {}

impl fmt::Debug for MatrixFq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[u32]> = (0..self.rows).map(|r| self.row(r)).collect();
        write!(f, "MatrixFq(F_{}, {rows:?})", self.field.order())
    }
}

/// Reduced row echelon form and rank.
pub fn rref(m: &MatrixFq) -> (MatrixFq, usize) {
    let mut a = m.clone();
    let f = Arc::clone(&m.field);
    let cols = a.cols;
    let mut rank = 0;
    for c in 0..cols {
        if rank == a.rows {
            break;
        }
        let Some(pivot) = (rank..a.rows).find(|&r| a.entries[r * cols + c] != 0) else {
            continue;
        };
        a.swap_rows(rank, pivot);
        let inv = f.inv_raw(a.entries[rank * cols + c]);
        for j in c..cols {
            let idx = rank * cols + j;
            a.entries[idx] = f.mul_raw(a.entries[idx], inv);
        }
        for r in 0..a.rows {
            let factor = a.entries[r * cols + c];
            if r == rank || factor == 0 {
                continue;
            }
            for j in c..cols {
                let sub = f.mul_raw(factor, a.entries[rank * cols + j]);
                let idx = r * cols + j;
                a.entries[idx] = f.sub_raw(a.entries[idx], sub);
            }
        }
        rank += 1;
    }
    (a, rank)
}

/// A subspace of `F_q^n`, represented by its unique RREF basis.
#[derive(Clone)]
pub struct SubspaceCanonical {
    field: Arc<FiniteField>,
    ambient_dim: usize,
    dim: usize,
    /// `dim x ambient_dim` RREF basis, row-major.
    basis: Vec<u32>,
}

impl SubspaceCanonical {
    fn from_rref(field: Arc<FiniteField>, ambient_dim: usize, reduced: &MatrixFq, rank: usize) -> Self {
        SubspaceCanonical {
            field,
            ambient_dim,
            dim: rank,
            basis: reduced.entries[..rank * ambient_dim].to_vec(),
        }
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn basis(&self) -> MatrixFq {
        MatrixFq {
            field: Arc::clone(&self.field),
            rows: self.dim,
            cols: self.ambient_dim,
            entries: self.basis.clone(),
        }
    }

    pub fn basis_rows(&self) -> impl Iterator<Item = &[u32]> {
        self.basis.chunks(self.ambient_dim.max(1)).take(self.dim)
    }

    /// Pivot column of each basis row.
    pub fn pivots(&self) -> Vec<usize> {
        self.basis_rows()
            .map(|r| r.iter().position(|&c| c != 0).expect("basis rows are nonzero"))
            .collect()
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        if v.len() != self.ambient_dim {
            return false;
        }
        // In RREF, v lies in the row space iff v - sum v[pivot_i] row_i = 0.
        let f = &self.field;
        let mut rest = v.to_vec();
        for (row, piv) in self.basis_rows().zip(self.pivots()) {
            let c = rest[piv];
            if c == 0 {
                continue;
            }
            for (x, &b) in rest.iter_mut().zip(row) {
                *x = f.sub_raw(*x, f.mul_raw(c, b));
            }
        }
        rest.iter().all(|&x| x == 0)
    }

    /// Every vector of the subspace, as linear combinations of the basis
    /// with coefficients in increasing lexicographic order.
    pub fn vectors(&self) -> Vec<Vec<u32>> {
        self.combinations(false)
    }

    /// One representative per 1-dimensional subspace: the combinations whose
    /// first nonzero coefficient is 1. Because the basis is in RREF these
    /// vectors have first nonzero coordinate 1.
    pub fn projective_points(&self) -> Vec<Vec<u32>> {
        self.combinations(true)
    }

    fn combinations(&self, normalized: bool) -> Vec<Vec<u32>> {
        let f = &self.field;
        let q = f.order();
        let k = self.dim;
        let mut out = Vec::new();
        let mut coeffs = vec![0u32; k];
        loop {
            let lead = coeffs.iter().find(|&&c| c != 0);
            let keep = if normalized { lead == Some(&1) } else { true };
            if keep {
                let mut v = vec![0u32; self.ambient_dim];
                for (&c, row) in coeffs.iter().zip(self.basis_rows()) {
                    if c == 0 {
                        continue;
                    }
                    for (x, &b) in v.iter_mut().zip(row) {
                        *x = f.add_raw(*x, f.mul_raw(c, b));
                    }
                }
                out.push(v);
            }
            // Odometer, last coefficient fastest.
            let mut i = k;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                coeffs[i] += 1;
                if coeffs[i] < q {
                    break;
                }
                coeffs[i] = 0;
            }
        }
    }

    /// Orthogonal complement under the standard dot product; dimension
    /// `n - dim`, and taking it twice returns the original subspace.
    pub fn perp(&self) -> SubspaceCanonical {
        let f = &self.field;
        let n = self.ambient_dim;
        let pivots = self.pivots();
        let rows: Vec<Vec<u32>> = (0..n)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut v = vec![0; n];
                v[free] = 1;
                for (row, &piv) in self.basis_rows().zip(&pivots) {
                    v[piv] = f.neg_raw(row[free]);
                }
                v
            })
            .collect();
        span_codes(Arc::clone(f), n, &rows)
    }

    fn key(&self) -> (crate::gfarith::FieldId, usize, &[u32]) {
        (self.field.id(), self.ambient_dim, &self.basis)
    }
}

impl PartialEq for SubspaceCanonical {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for SubspaceCanonical {}

impl Hash for SubspaceCanonical {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key().hash(state);
    }
}

impl PartialOrd for SubspaceCanonical {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SubspaceCanonical {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl fmt::Debug for SubspaceCanonical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[u32]> = self.basis_rows().collect();
        write!(f, "Subspace(F_{}^{}, {rows:?})", self.field.order(), self.ambient_dim)
    }
}

fn span_codes(field: Arc<FiniteField>, n: usize, rows: &[Vec<u32>]) -> SubspaceCanonical {
    let m = MatrixFq {
        entries: rows.concat(),
        rows: rows.len(),
        cols: n,
        field: Arc::clone(&field),
    };
    let (reduced, rank) = rref(&m);
    SubspaceCanonical::from_rref(field, n, &reduced, rank)
}

/// Canonical representative of the span of `vectors` (element codes), each
/// of length `n`.
pub fn span_canonical(field: &Arc<FiniteField>, n: usize, vectors: &[Vec<u32>]) -> Result<SubspaceCanonical> {
    let m = MatrixFq::from_rows(Arc::clone(field), n, vectors)?;
    let (reduced, rank) = rref(&m);
    Ok(SubspaceCanonical::from_rref(Arc::clone(field), n, &reduced, rank))
}

/// Number of `k`-dimensional subspaces of `F_q^n`, i.e. `[n, k]_q` at `q`.
pub fn subspace_count(q: u64, n: u32, k: i64) -> BigInt {
    q_binomial_recurrence(n, k).evaluate(&BigInt::from(q))
}

/// Every `k`-dimensional subspace of `F_q^n`, once each, using default caps.
pub fn enumerate_subspaces(q: u64, n: u32, k: i64) -> Result<Vec<SubspaceCanonical>> {
    let limits = Limits::default();
    let field = Arc::new(make_field_with(q, &limits)?);
    enumerate_subspaces_in(&field, n, k, &limits)
}

/// Enumerates RREF matrices directly: for each pivot pattern (columns in
/// lexicographic order) every assignment of the free entries, with the
/// first free entry varying slowest. Out-of-range `k` yields nothing.
pub fn enumerate_subspaces_in(
    field: &Arc<FiniteField>,
    n: u32,
    k: i64,
    limits: &Limits,
) -> Result<Vec<SubspaceCanonical>> {
    let count = subspace_count(u64::from(field.order()), n, k);
    if count > BigInt::from(limits.subspace_budget) {
        return Err(Error::budget("subspace enumeration", count, limits.subspace_budget));
    }
    if k < 0 || k > i64::from(n) {
        return Ok(Vec::new());
    }
    let (n, k) = (n as usize, k as usize);
    let q = field.order();
    let mut out = Vec::with_capacity(count.to_usize().unwrap_or(0));
    for pivots in combinations(n, k) {
        // Free slots: (row, col) with col right of the row's pivot and not a pivot column.
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(r, &p)| ((p + 1)..n).filter(|c| !pivots.contains(c)).map(move |c| (r, c)))
            .collect();
        let mut values = vec![0u32; free.len()];
        loop {
            let mut basis = vec![0u32; k * n];
            for (r, &p) in pivots.iter().enumerate() {
                basis[r * n + p] = 1;
            }
            for (&(r, c), &v) in free.iter().zip(&values) {
                basis[r * n + c] = v;
            }
            out.push(SubspaceCanonical { field: Arc::clone(field), ambient_dim: n, dim: k, basis });
            let mut i = free.len();
            let done = loop {
                if i == 0 {
                    break true;
                }
                i -= 1;
                values[i] += 1;
                if values[i] < q {
                    break false;
                }
                values[i] = 0;
            };
            if done {
                break;
            }
        }
    }
    Ok(out)
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// `prod_{i=1..k} (q^n - q^(i-1))`, the number of linearly independent
/// `k`-tuples in `F_q^n`.
pub fn count_independent_tuples(q: u64, n: u32, k: u32) -> BigInt {
    let q = BigInt::from(q);
    let qn = q.pow(n);
    (0..k).fold(BigInt::one(), |acc, i| acc * (&qn - q.pow(i)))
}

fn check_compatible(a: &SubspaceCanonical, b: &SubspaceCanonical) -> Result<()> {
    if a.field.id() != b.field.id() {
        return Err(Error::FieldMismatch);
    }
    if a.ambient_dim != b.ambient_dim {
        return Err(Error::DimensionMismatch(format!(
            "ambient dimensions {} and {}",
            a.ambient_dim, b.ambient_dim
        )));
    }
    Ok(())
}

/// Sum `A + B`.
pub fn subspace_join(a: &SubspaceCanonical, b: &SubspaceCanonical) -> Result<SubspaceCanonical> {
    check_compatible(a, b)?;
    let rows: Vec<Vec<u32>> = a.basis_rows().chain(b.basis_rows()).map(<[u32]>::to_vec).collect();
    Ok(span_codes(Arc::clone(&a.field), a.ambient_dim, &rows))
}

/// Intersection `A ∩ B`, as `(A⊥ + B⊥)⊥`.
pub fn subspace_meet(a: &SubspaceCanonical, b: &SubspaceCanonical) -> Result<SubspaceCanonical> {
    check_compatible(a, b)?;
    Ok(subspace_join(&a.perp(), &b.perp())?.perp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfarith::make_field;

    fn field(q: u64) -> Arc<FiniteField> {
        Arc::new(make_field(q).unwrap())
    }

    fn sub(f: &Arc<FiniteField>, n: usize, rows: &[&[u32]]) -> SubspaceCanonical {
        let rows: Vec<Vec<u32>> = rows.iter().map(|r| r.to_vec()).collect();
        span_canonical(f, n, &rows).unwrap()
    }

    #[test]
    fn rref_examples() {
        let f2 = field(2);
        let id = MatrixFq::identity(Arc::clone(&f2), 3);
        assert_eq!(rref(&id), (id.clone(), 3));
        let z = MatrixFq::zero(Arc::clone(&f2), 2, 3);
        assert_eq!(rref(&z), (z.clone(), 0));

        let f3 = field(3);
        let m = MatrixFq::from_rows(Arc::clone(&f3), 2, &[vec![1, 2], vec![2, 1]]).unwrap();
        let expected = MatrixFq::from_rows(f3, 2, &[vec![1, 2], vec![0, 0]]).unwrap();
        assert_eq!(rref(&m), (expected, 1));
    }

    #[test]
    fn malformed_matrices() {
        let f3 = field(3);
        assert!(MatrixFq::new(Arc::clone(&f3), 2, 2, vec![0, 1, 2]).is_err());
        assert!(MatrixFq::new(Arc::clone(&f3), 1, 2, vec![0, 3]).is_err());
        assert!(span_canonical(&f3, 2, &[vec![1, 1, 1]]).is_err());
    }

    #[test]
    fn span_examples() {
        let f2 = field(2);
        let empty = span_canonical(&f2, 2, &[]).unwrap();
        assert_eq!(empty.dim(), 0);
        let plane = sub(&f2, 2, &[&[1, 1], &[0, 1]]);
        assert_eq!(plane.basis(), MatrixFq::identity(Arc::clone(&f2), 2));

        let f5 = field(5);
        let line = sub(&f5, 3, &[&[1, 2, 0], &[2, 4, 0]]);
        assert_eq!(line.dim(), 1);
        assert_eq!(line.basis_rows().next().unwrap(), &[1, 2, 0]);
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_subspaces(2, 3, 1).unwrap().len(), 7);
        assert_eq!(enumerate_subspaces(3, 3, 1).unwrap().len(), 13);
        for q in [2, 3, 4] {
            let all = enumerate_subspaces(q, 3, 3).unwrap();
            assert_eq!(all.len(), 1);
            assert_eq!(all[0].basis(), MatrixFq::identity(Arc::clone(all[0].field()), 3));
        }
        assert!(enumerate_subspaces(2, 3, 4).unwrap().is_empty());
        assert!(enumerate_subspaces(2, 3, -1).unwrap().is_empty());
        assert_eq!(enumerate_subspaces(6, 2, 1).unwrap_err(), Error::NotAPrimePower(6));
    }

    #[test]
    fn enumeration_budget() {
        let limits = Limits { subspace_budget: 10, ..Limits::default() };
        let f2 = field(2);
        let err = enumerate_subspaces_in(&f2, 4, 2, &limits).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
        assert_eq!(enumerate_subspaces_in(&f2, 3, 1, &limits).unwrap().len(), 7);
    }

    #[test]
    fn enumeration_is_canonical_and_distinct() {
        for q in [2, 3, 4] {
            for k in 0..=3 {
                let subs = enumerate_subspaces(q, 3, k).unwrap();
                let set: std::collections::HashSet<_> = subs.iter().collect();
                assert_eq!(set.len(), subs.len());
                for s in &subs {
                    let (again, rank) = rref(&s.basis());
                    assert_eq!(rank, k as usize);
                    assert_eq!(again, s.basis());
                }
            }
        }
    }

    #[test]
    fn independent_tuples() {
        assert_eq!(count_independent_tuples(2, 2, 2), BigInt::from(6));
        assert_eq!(count_independent_tuples(7, 3, 0), BigInt::one());
        assert_eq!(count_independent_tuples(2, 3, 1) / count_independent_tuples(2, 1, 1), BigInt::from(7));
        for q in [2u64, 3, 4, 5] {
            for n in 0..=4 {
                for k in 0..=n {
                    let num = count_independent_tuples(q, n, k);
                    let den = count_independent_tuples(q, k, k);
                    assert_eq!(&num % &den, BigInt::default());
                    assert_eq!(num / den, subspace_count(q, n, i64::from(k)));
                }
            }
        }
    }

    #[test]
    fn meet_and_join_examples() {
        let f2 = field(2);
        let s = sub(&f2, 3, &[&[1, 0, 1], &[0, 1, 1]]);
        assert_eq!(subspace_meet(&s, &s).unwrap(), s);
        assert_eq!(subspace_join(&s, &s).unwrap(), s);
        let a = sub(&f2, 3, &[&[1, 0, 0]]);
        let b = sub(&f2, 3, &[&[0, 1, 0]]);
        assert_eq!(subspace_join(&a, &b).unwrap(), sub(&f2, 3, &[&[1, 0, 0], &[0, 1, 0]]));
        assert_eq!(subspace_meet(&a, &b).unwrap().dim(), 0);
        let t = sub(&f2, 3, &[&[1, 0, 0], &[0, 1, 0]]);
        let m = subspace_meet(&s, &t).unwrap();
        assert_eq!(m.dim(), 1);
        assert_eq!(m, sub(&f2, 3, &[&[1, 1, 0]]));
        let other = sub(&f2, 4, &[&[1, 0, 0, 0]]);
        assert!(matches!(subspace_join(&a, &other), Err(Error::DimensionMismatch(_))));
        let f3 = field(3);
        let c = sub(&f3, 3, &[&[1, 0, 0]]);
        assert_eq!(subspace_meet(&a, &c), Err(Error::FieldMismatch));
    }

    #[test]
    fn points_of_a_subspace() {
        let f3 = field(3);
        let plane = sub(&f3, 3, &[&[1, 0, 2], &[0, 1, 1]]);
        assert_eq!(plane.vectors().len(), 9);
        let pts = plane.projective_points();
        assert_eq!(pts.len(), 4);
        for p in &pts {
            assert!(plane.contains(p));
            assert_eq!(p.iter().find(|&&c| c != 0), Some(&1));
        }
        assert!(!plane.contains(&[0, 0, 1]));
    }

    #[test]
    fn combinations_lexicographic() {
        assert_eq!(combinations(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(combinations(2, 0), vec![Vec::<usize>::new()]);
        assert!(combinations(2, 3).is_empty());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn matrix(q: u32, rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<u32>>> {
            prop::collection::vec(prop::collection::vec(0..q, cols), 0..=rows)
        }

        proptest! {
            #[test]
            fn rref_is_idempotent(q in prop::sample::select(vec![2u64, 3, 4, 5]), seed in matrix(5, 4, 4)) {
                let f = field(q);
                let rows: Vec<Vec<u32>> = seed.iter().map(|r| r.iter().map(|&c| c % f.order()).collect()).collect();
                let m = MatrixFq::from_rows(Arc::clone(&f), 4, &rows).unwrap();
                let (once, rank) = rref(&m);
                let (twice, rank2) = rref(&once);
                prop_assert_eq!(once, twice);
                prop_assert_eq!(rank, rank2);
            }

            #[test]
            fn modular_law_for_vector_subspaces(
                q in prop::sample::select(vec![2u64, 3, 4]),
                a in matrix(4, 4, 4),
                b in matrix(4, 4, 4),
            ) {
                let f = field(q);
                let reduce = |m: &Vec<Vec<u32>>| -> Vec<Vec<u32>> {
                    m.iter().map(|r| r.iter().map(|&c| c % f.order()).collect()).collect()
                };
                let a = span_canonical(&f, 4, &reduce(&a)).unwrap();
                let b = span_canonical(&f, 4, &reduce(&b)).unwrap();
                let meet = subspace_meet(&a, &b).unwrap();
                let join = subspace_join(&a, &b).unwrap();
                prop_assert_eq!(a.dim() + b.dim(), meet.dim() + join.dim());
                for v in meet.vectors() {
                    prop_assert!(a.contains(&v) && b.contains(&v));
                }
                prop_assert_eq!(a.perp().perp(), a.clone());
            }
        }
    }
}
