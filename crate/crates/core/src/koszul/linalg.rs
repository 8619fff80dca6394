//! Dense exact linear algebra over the rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    BigRational::from_integer(BigInt::from(n))
}

/// A dense `rows x cols` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Q::one());
        }
        m
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count");
        Mat { rows, cols, data: entries.iter().map(|&x| q(x)).collect() }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let flat: Vec<i64> = rows.iter().flatten().copied().collect();
        Mat::from_i64(rows.len(), cols, &flat)
    }

    /// Columns given as vectors of equal length `rows`.
    pub fn from_columns(rows: usize, cols: &[Vec<Q>]) -> Self {
        let mut m = Mat::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Q) {
        self.data[i * self.cols + j] = x;
    }

    pub fn add_at(&mut self, i: usize, j: usize, x: &Q) {
        let slot = &mut self.data[i * self.cols + j];
        *slot += x;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn column(&self, j: usize) -> Vec<Q> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn scaled(&self, c: &Q) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        self.add(&other.scaled(&q(-1)))
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.add_at(i, j, &(a * b));
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(v.len(), self.cols, "shape mismatch");
        (0..self.rows)
            .map(|i| {
                let mut s = Q::zero();
                for (j, x) in v.iter().enumerate() {
                    if !x.is_zero() {
                        let a = self.get(i, j);
                        if !a.is_zero() {
                            s += a * x;
                        }
                    }
                }
                s
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new(self.cols);
        (0..self.rows).filter(|&i| e.insert(self.data[i * self.cols..(i + 1) * self.cols].to_vec())).count()
    }

    /// A basis of `{x : self x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<Q>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Q::zero(); self.cols];
                v[f] = Q::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r.get(row, f).clone();
                }
                v
            })
            .collect()
    }

    /// A basis of the column space, as a subset of the columns.
    pub fn column_basis(&self) -> Vec<Vec<Q>> {
        let mut e = Echelon::new(self.rows);
        let mut out = Vec::new();
        for j in 0..self.cols {
            let c = self.column(j);
            if e.insert(c.clone()) {
                out.push(c);
            }
        }
        out
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&i| !m.get(i, col).is_zero()) else { continue };
            m.swap_rows(p, row);
            let inv = m.get(row, col).recip();
            for j in col..m.cols {
                let x = m.get(row, j) * &inv;
                m.set(row, j, x);
            }
            for i in 0..m.rows {
                if i != row && !m.get(i, col).is_zero() {
                    let f = m.get(i, col).clone();
                    for j in col..m.cols {
                        let x = m.get(row, j);
                        if !x.is_zero() {
                            let y = m.get(i, j) - &f * x;
                            m.set(i, j, y);
                        }
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    /// The inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<Mat> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(Mat::zeros(0, 0));
        }
        let mut aug = Mat::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Q::one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    /// Entries as integers, if all are integral.
    pub fn to_i64(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| {
                        let x = self.get(i, j);
                        if x.is_integer() {
                            i64::try_from(x.to_integer()).ok()
                        } else {
                            None
                        }
                    })
                    .collect()
            })
            .collect()
    }
}

/// Incrementally built row-echelon basis of a subspace of `Q^n`.
#[derive(Clone, Debug)]
pub struct Echelon {
    n: usize,
    rows: Vec<(usize, Vec<Q>)>,
}

impl Echelon {
    pub fn new(n: usize) -> Self {
        Echelon { n, rows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, mut v: Vec<Q>) -> Vec<Q> {
        for (p, r) in &self.rows {
            if !v[*p].is_zero() {
                let f = v[*p].clone();
                for j in *p..self.n {
                    if !r[j].is_zero() {
                        v[j] -= &f * &r[j];
                    }
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        self.reduce(v.to_vec()).iter().all(Zero::is_zero)
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: Vec<Q>) -> bool {
        assert_eq!(v.len(), self.n, "vector length");
        let v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else { return false };
        let inv = v[p].recip();
        let v: Vec<Q> = v.into_iter().map(|x| x * &inv).collect();
        for (_, r) in &mut self.rows {
            if !r[p].is_zero() {
                let f = r[p].clone();
                for j in p..self.n {
                    if !v[j].is_zero() {
                        r[j] -= &f * &v[j];
                    }
                }
            }
        }
        let at = self.rows.partition_point(|(q, _)| *q < p);
        self.rows.insert(at, (p, v));
        true
    }
}

/// Coordinates with respect to a fixed linearly independent family: solves
/// `y = sum c_i b_i` for `y` in the span.
#[derive(Clone, Debug)]
pub struct Coordinates {
    pivot_rows: Vec<usize>,
    inverse: Mat,
}

impl Coordinates {
    /// `basis` must be linearly independent vectors of length `n`.
    pub fn new(n: usize, basis: &[Vec<Q>]) -> Self {
        let k = basis.len();
        let a = Mat::from_columns(n, basis);
        let mut e = Echelon::new(k);
        let mut pivot_rows = Vec::new();
        for i in 0..n {
            let row: Vec<Q> = (0..k).map(|j| a.get(i, j).clone()).collect();
            if e.insert(row) {
                pivot_rows.push(i);
                if pivot_rows.len() == k {
                    break;
                }
            }
        }
        assert_eq!(pivot_rows.len(), k, "basis must be independent");
        let mut sq = Mat::zeros(k, k);
        for (r, &i) in pivot_rows.iter().enumerate() {
            for j in 0..k {
                sq.set(r, j, a.get(i, j).clone());
            }
        }
        Coordinates { pivot_rows, inverse: sq.inverse().expect("independent rows") }
    }

    /// Coordinates of `y`; meaningful only for `y` in the span.
    pub fn of(&self, y: &[Q]) -> Vec<Q> {
        let ys: Vec<Q> = self.pivot_rows.iter().map(|&i| y[i].clone()).collect();
        self.inverse.apply(&ys)
    }
}
