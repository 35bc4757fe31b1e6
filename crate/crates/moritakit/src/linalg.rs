//! Exact dense linear algebra over a [`Ring`].
//!
//! Everything downstream (hom-space bases, trace ideals, fixed points,
//! sandwich ranks) reduces to reduced row echelon form with the first
//! nonzero entry as pivot, which keeps every basis choice deterministic.

use crate::error::{Error, Result};
use crate::scalar::{Ring, Scalar};

/// A dense rows × cols matrix over a fixed ring, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<Scalar>,
}

impl Mat {
    pub fn zeros(ring: &Ring, rows: usize, cols: usize) -> Mat {
        Mat {
            rows,
            cols,
            entries: vec![ring.zero(); rows * cols],
        }
    }

    pub fn identity(ring: &Ring, n: usize) -> Mat {
        let mut m = Mat::zeros(ring, n, n);
        for i in 0..n {
            *m.at_mut(i, i) = ring.one();
        }
        m
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<Scalar>) -> Mat {
        assert_eq!(entries.len(), rows * cols);
        Mat { rows, cols, entries }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Mat {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Mat { rows, cols, entries }
    }

    /// Column vector from a coefficient slice.
    pub fn col_vec(v: &[Scalar]) -> Mat {
        Mat {
            rows: v.len(),
            cols: 1,
            entries: v.to_vec(),
        }
    }

    pub fn at(&self, i: usize, j: usize) -> &Scalar {
        debug_assert!(i < self.rows && j < self.cols);
        &self.entries[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Scalar {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn from_cols(ring: &Ring, rows: usize, cols: &[Vec<Scalar>]) -> Mat {
        let mut m = Mat::zeros(ring, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for i in 0..rows {
                *m.at_mut(i, j) = c[i].clone();
            }
        }
        m
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn add(&self, other: &Mat, ring: &Ring) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| ring.add(a, b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Mat, ring: &Ring) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| ring.sub(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar, ring: &Ring) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| ring.mul(c, a)).collect(),
        }
    }

    pub fn mul(&self, other: &Mat, ring: &Ring) -> Mat {
        assert_eq!(self.cols, other.rows, "matrix dimension mismatch");
        let mut out = Mat::zeros(ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if ring.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if ring.is_zero(b) {
                        continue;
                    }
                    let prod = ring.mul(a, b);
                    let cur = out.at(i, j);
                    *out.at_mut(i, j) = ring.add(cur, &prod);
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Scalar], ring: &Ring) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        let mut out = vec![ring.zero(); self.rows];
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.at(i, j);
                if ring.is_zero(a) || ring.is_zero(&v[j]) {
                    continue;
                }
                out[i] = ring.add(&out[i], &ring.mul(a, &v[j]));
            }
        }
        out
    }

    pub fn is_zero(&self, ring: &Ring) -> bool {
        self.entries.iter().all(|e| ring.is_zero(e))
    }

    /// Kronecker product; index (i1·rows2 + i2, j1·cols2 + j2).
    pub fn kron(&self, other: &Mat, ring: &Ring) -> Mat {
        Mat::from_fn(self.rows * other.rows, self.cols * other.cols, |i, j| {
            let (i1, i2) = (i / other.rows, i % other.rows);
            let (j1, j2) = (j / other.cols, j % other.cols);
            ring.mul(self.at(i1, j1), other.at(i2, j2))
        })
    }

    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows);
        Mat::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.at(i, j).clone()
            } else {
                other.at(i, j - self.cols).clone()
            }
        })
    }

    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols);
        Mat::from_fn(self.rows + other.rows, self.cols, |i, j| {
            if i < self.rows {
                self.at(i, j).clone()
            } else {
                other.at(i - self.rows, j).clone()
            }
        })
    }

    /// In-place Gauss–Jordan to reduced row echelon form; returns the pivot
    /// columns in increasing order. First nonzero entry is the pivot.
    pub fn rref_in_place(&mut self, ring: &Ring) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !ring.is_zero(self.at(i, c))) else {
                continue;
            };
            if pr != r {
                for j in 0..self.cols {
                    self.entries.swap(pr * self.cols + j, r * self.cols + j);
                }
            }
            let inv = ring.inv(self.at(r, c)).expect("pivot is nonzero");
            for j in c..self.cols {
                let v = ring.mul(self.at(r, j), &inv);
                *self.at_mut(r, j) = v;
            }
            for i in 0..self.rows {
                if i == r || ring.is_zero(self.at(i, c)) {
                    continue;
                }
                let factor = self.at(i, c).clone();
                for j in c..self.cols {
                    let v = ring.sub(self.at(i, j), &ring.mul(&factor, self.at(r, j)));
                    *self.at_mut(i, j) = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rref(&self, ring: &Ring) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place(ring);
        (m, pivots)
    }

    pub fn rank(&self, ring: &Ring) -> usize {
        self.rref(ring).1.len()
    }

    /// Basis of the right kernel {x : Ax = 0}, one vector per free column,
    /// in increasing free-column order; the free coordinate is set to 1.
    pub fn kernel_basis(&self, ring: &Ring) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref(ring);
        let pivot_set: std::collections::BTreeMap<usize, usize> =
            pivots.iter().enumerate().map(|(row, &c)| (c, row)).collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains_key(&free) {
                continue;
            }
            let mut v = vec![ring.zero(); self.cols];
            v[free] = ring.one();
            for (&pc, &prow) in &pivot_set {
                v[pc] = ring.neg(r.at(prow, free));
            }
            basis.push(v);
        }
        basis
    }

    /// One solution x of Ax = b, if consistent.
    pub fn solve(&self, b: &[Scalar], ring: &Ring) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows);
        let aug = self.hstack(&Mat::col_vec(b));
        let (r, pivots) = aug.rref(ring);
        if pivots.contains(&self.cols) {
            return None; // pivot in the augmented column: inconsistent
        }
        let mut x = vec![ring.zero(); self.cols];
        for (row, &c) in pivots.iter().enumerate() {
            x[c] = r.at(row, self.cols).clone();
        }
        Some(x)
    }

    pub fn inverse(&self, ring: &Ring) -> Option<Mat> {
        if self.rows != self.cols {
            return None;
        }
        let aug = self.hstack(&Mat::identity(ring, self.rows));
        let (r, pivots) = aug.rref(ring);
        if pivots.len() != self.rows || pivots.iter().enumerate().any(|(i, &c)| i != c) {
            return None;
        }
        Some(Mat::from_fn(self.rows, self.rows, |i, j| {
            r.at(i, self.rows + j).clone()
        }))
    }

    pub fn is_invertible(&self, ring: &Ring) -> bool {
        self.rows == self.cols && self.rank(ring) == self.rows
    }
}

/// A prepared solver for repeated coordinate queries against a fixed column
/// space: given B with columns b_1..b_k, answers whether v ∈ span{b_i} and
/// with which coordinates. Requires B to have independent columns (every
/// basis produced in this crate does).
#[derive(Clone, Debug)]
pub struct ColSolver {
    ring: Ring,
    dim: usize,
    k: usize,
    rref: Mat,
    pivots: Vec<usize>,
}

impl ColSolver {
    pub fn new(ring: &Ring, basis: &Mat) -> ColSolver {
        // rref of [B | I] records the row operations E with (E·B | E), so a
        // query v reduces to reading E·v against the pivot structure.
        let aug = basis.hstack(&Mat::identity(ring, basis.rows));
        let mut m = aug;
        let mut pivots = Vec::new();
        // Restrict pivoting to the B block; the identity block only tracks E.
        let mut r = 0;
        for c in 0..basis.cols {
            if r == basis.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !ring.is_zero(m.at(i, c))) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    let (a, b) = (pr, r);
                    let tmp = m.at(a, j).clone();
                    *m.at_mut(a, j) = m.at(b, j).clone();
                    *m.at_mut(b, j) = tmp;
                }
            }
            let inv = ring.inv(m.at(r, c)).expect("pivot nonzero");
            for j in 0..m.cols {
                let v = ring.mul(m.at(r, j), &inv);
                *m.at_mut(r, j) = v;
            }
            for i in 0..m.rows {
                if i == r || ring.is_zero(m.at(i, c)) {
                    continue;
                }
                let factor = m.at(i, c).clone();
                for j in 0..m.cols {
                    let v = ring.sub(m.at(i, j), &ring.mul(&factor, m.at(r, j)));
                    *m.at_mut(i, j) = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        ColSolver {
            ring: ring.clone(),
            dim: basis.rows,
            k: basis.cols,
            rref: m,
            pivots,
        }
    }

    pub fn space_rank(&self) -> usize {
        self.pivots.len()
    }

    /// Coordinates c with B·c = v, or None if v is outside the span.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(v.len(), self.dim);
        let ring = &self.ring;
        // tv = E·v from the recorded row-op block.
        let mut tv = vec![ring.zero(); self.rref.rows];
        for (j, vj) in v.iter().enumerate() {
            if ring.is_zero(vj) {
                continue;
            }
            for (i, t) in tv.iter_mut().enumerate() {
                let e = self.rref.at(i, self.k + j);
                if ring.is_zero(e) {
                    continue;
                }
                *t = ring.add(t, &ring.mul(e, vj));
            }
        }
        // Rows below the pivot rows have zero B-part: consistency check.
        for t in tv.iter().skip(self.pivots.len()) {
            if !ring.is_zero(t) {
                return None;
            }
        }
        let mut x = vec![ring.zero(); self.k];
        for (row, &c) in self.pivots.iter().enumerate() {
            x[c] = tv[row].clone();
        }
        Some(x)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coords(v).is_some()
    }
}

/// Incrementally grown subspace of K^dim with membership queries; used for
/// trace ideals and witness extraction. Rows are kept in rref form.
#[derive(Clone, Debug)]
pub struct SpanBuilder {
    ring: Ring,
    dim: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl SpanBuilder {
    pub fn new(ring: &Ring, dim: usize) -> SpanBuilder {
        SpanBuilder {
            ring: ring.clone(),
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    fn reduce(&self, v: &mut [Scalar]) {
        let ring = &self.ring;
        for (row, &pc) in self.pivots.iter().enumerate() {
            if ring.is_zero(&v[pc]) {
                continue;
            }
            let factor = v[pc].clone();
            for j in 0..self.dim {
                v[j] = ring.sub(&v[j], &ring.mul(&factor, &self.rows[row][j]));
            }
        }
    }

    /// Adds v to the span; returns true if the rank grew.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.dim);
        let ring = self.ring.clone();
        let mut v = v.to_vec();
        self.reduce(&mut v);
        let Some(lead) = (0..self.dim).find(|&j| !ring.is_zero(&v[j])) else {
            return false;
        };
        let inv = ring.inv(&v[lead]).expect("lead is nonzero");
        for x in v.iter_mut() {
            *x = ring.mul(x, &inv);
        }
        for row in self.rows.iter_mut() {
            let factor = row[lead].clone();
            if ring.is_zero(&factor) {
                continue;
            }
            for j in 0..self.dim {
                row[j] = ring.sub(&row[j], &ring.mul(&factor, &v[j]));
            }
        }
        let pos = self.pivots.partition_point(|&c| c < lead);
        self.rows.insert(pos, v);
        self.pivots.insert(pos, lead);
        true
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let mut v = v.to_vec();
        self.reduce(&mut v);
        v.iter().all(|x| self.ring.is_zero(x))
    }

    /// Coordinates of v against the inserted generators are not tracked;
    /// this returns the rref basis itself.
    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.rows
    }
}

pub fn scalar_vec_add(ring: &Ring, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| ring.add(x, y)).collect()
}

pub fn scalar_vec_sub(ring: &Ring, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| ring.sub(x, y)).collect()
}

pub fn scalar_vec_scale(ring: &Ring, c: &Scalar, a: &[Scalar]) -> Vec<Scalar> {
    a.iter().map(|x| ring.mul(c, x)).collect()
}

pub fn scalar_vec_is_zero(ring: &Ring, a: &[Scalar]) -> bool {
    a.iter().all(|x| ring.is_zero(x))
}

/// Rejects a matrix whose entries are not canonical elements of `ring`.
pub fn check_entries(ring: &Ring, m: &Mat) -> Result<()> {
    if m.entries().iter().all(|e| ring.contains(e)) {
        Ok(())
    } else {
        Err(Error::RingMismatch(format!(
            "matrix entries not in {}",
            ring.name()
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn mat_i64(ring: &Ring, rows: usize, cols: usize, data: &[i64]) -> Mat {
        Mat::from_entries(rows, cols, data.iter().map(|&n| ring.from_i64(n)).collect())
    }

    #[test]
    fn rref_rank_kernel_gf2() {
        let r = Ring::prime_field(2).unwrap();
        let m = mat_i64(&r, 2, 3, &[1, 1, 0, 1, 0, 1]);
        assert_eq!(m.rank(&r), 2);
        let ker = m.kernel_basis(&r);
        assert_eq!(ker.len(), 1);
        assert!(scalar_vec_is_zero(&r, &m.apply(&ker[0], &r)));
    }

    #[test]
    fn solve_and_inverse_rationals() {
        let r = Ring::rationals();
        let m = mat_i64(&r, 2, 2, &[1, 2, 3, 5]);
        let inv = m.inverse(&r).unwrap();
        assert_eq!(m.mul(&inv, &r), Mat::identity(&r, 2));
        let b = [r.from_i64(1), r.from_i64(0)];
        let x = m.solve(&b, &r).unwrap();
        assert_eq!(m.apply(&x, &r), b.to_vec());
        let singular = mat_i64(&r, 2, 2, &[1, 2, 2, 4]);
        assert!(singular.inverse(&r).is_none());
        assert!(singular.solve(&b, &r).is_none());
    }

    #[test]
    fn span_builder_growth() {
        let r = Ring::rationals();
        let mut sb = SpanBuilder::new(&r, 3);
        assert!(sb.insert(&[r.from_i64(1), r.from_i64(2), r.from_i64(0)]));
        assert!(!sb.insert(&[r.from_i64(2), r.from_i64(4), r.from_i64(0)]));
        assert!(sb.insert(&[r.from_i64(0), r.from_i64(0), r.from_i64(5)]));
        assert_eq!(sb.rank(), 2);
        assert!(sb.contains(&[r.from_i64(3), r.from_i64(6), r.from_i64(-1)]));
        assert!(!sb.contains(&[r.from_i64(0), r.from_i64(1), r.from_i64(0)]));
    }

    #[test]
    fn kron_shapes() {
        let r = Ring::prime_field(5).unwrap();
        let a = mat_i64(&r, 2, 2, &[1, 2, 3, 4]);
        let b = Mat::identity(&r, 3);
        let k = a.kron(&b, &r);
        assert_eq!((k.rows, k.cols), (6, 6));
        assert_eq!(k.rank(&r), 6);
    }

    fn random_mat(ring: &Ring, rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Mat {
        Mat::from_fn(rows, cols, |_, _| ring.sample(rng))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn solver_agrees_with_solve(seed in 0u64..500, rows in 1usize..5, cols in 1usize..5) {
            let ring = Ring::prime_field(3).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let m = random_mat(&ring, &mut rng, rows, cols);
            let v: Vec<_> = (0..rows).map(|_| ring.sample(&mut rng)).collect();
            // ColSolver expects independent columns; build one from the
            // pivot columns of m.
            let (_, pivots) = m.rref(&ring);
            let cols_basis: Vec<_> = pivots.iter().map(|&c| m.col(c)).collect();
            let b = Mat::from_cols(&ring, rows, &cols_basis);
            let s = ColSolver::new(&ring, &b);
            match s.coords(&v) {
                Some(c) => prop_assert_eq!(b.apply(&c, &ring), v),
                None => prop_assert!(b.solve(&v, &ring).is_none()),
            }
        }

        #[test]
        fn rank_nullity(seed in 0u64..500, rows in 1usize..6, cols in 1usize..6) {
            let ring = Ring::rationals();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let m = random_mat(&ring, &mut rng, rows, cols);
            let rank = m.rank(&ring);
            let ker = m.kernel_basis(&ring);
            prop_assert_eq!(rank + ker.len(), cols);
            for v in &ker {
                prop_assert!(scalar_vec_is_zero(&ring, &m.apply(v, &ring)));
            }
        }
    }
}
