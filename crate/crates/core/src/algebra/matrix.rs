use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::Value;

use super::Ring;

/// Dense matrix over a [`Ring`]; each entry holds `ring.width()` integer
/// coefficients, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl Matrix {
    pub fn zeros(ring: Ring, rows: usize, cols: usize) -> Self {
        Self {
            ring,
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols * ring.width()],
        }
    }

    pub fn identity(ring: Ring, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set_entry(i, i, &ring.one());
        }
        m
    }

    /// Scalar matrix from integer rows; entries are reduced into the ring.
    pub fn from_rows(ring: Ring, rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(ring, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m.add_scalar(i, j, &BigInt::from(v));
            }
        }
        m
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    fn offset(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < self.rows && j < self.cols);
        (i * self.cols + j) * self.ring.width()
    }

    pub fn entry(&self, i: usize, j: usize) -> &[BigInt] {
        let o = self.offset(i, j);
        &self.data[o..o + self.ring.width()]
    }

    /// The constant coefficient; the whole entry for ℤ and prime fields.
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[self.offset(i, j)]
    }

    pub fn set_entry(&mut self, i: usize, j: usize, coeffs: &[BigInt]) {
        let o = self.offset(i, j);
        let w = self.ring.width();
        self.data[o..o + w].clone_from_slice(coeffs);
        self.ring.normalize_in_place(&mut self.data[o..o + w]);
    }

    pub fn add_entry(&mut self, i: usize, j: usize, coeffs: &[BigInt]) {
        let o = self.offset(i, j);
        let w = self.ring.width();
        for (d, c) in self.data[o..o + w].iter_mut().zip(coeffs) {
            *d += c;
        }
        self.ring.normalize_in_place(&mut self.data[o..o + w]);
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        let o = self.offset(i, j);
        self.data[o] = self.ring.normalize(v);
    }

    /// Add to the constant coefficient.
    pub fn add_scalar(&mut self, i: usize, j: usize, v: &BigInt) {
        let o = self.offset(i, j);
        self.data[o] += v;
        if let Ring::PrimeField(_) = self.ring {
            let x = std::mem::take(&mut self.data[o]);
            self.data[o] = self.ring.normalize(x);
        }
    }

    /// Add `g` to entry `(i, j)` for a group element `g` of `ℤ[ℤ/m]`
    /// (or `±1` to a scalar entry when `g = 0`).
    pub fn add_group_element(&mut self, i: usize, j: usize, g: usize, sign: i64) {
        let o = self.offset(i, j);
        self.data[o + g] += sign;
        self.ring
            .normalize_in_place(&mut self.data[o..o + self.ring.width()]);
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_entry_zero(&self, i: usize, j: usize) -> bool {
        self.entry(i, j).iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.ring, other.ring, "ring mismatch in product");
        assert_eq!(
            self.cols,
            other.rows,
            "shape mismatch in product {:?}·{:?}",
            self.shape(),
            other.shape()
        );
        let mut out = Matrix::zeros(self.ring, self.rows, other.cols);
        let w = self.ring.width();
        let mut acc = vec![BigInt::zero(); w];
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.is_entry_zero(i, k) {
                    continue;
                }
                let a = self.entry(i, k).to_vec();
                for j in 0..other.cols {
                    if other.is_entry_zero(k, j) {
                        continue;
                    }
                    acc.iter_mut().for_each(Zero::set_zero);
                    self.ring.mul_add(&mut acc, &a, other.entry(k, j));
                    out.add_entry(i, j, &acc);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &Matrix) {
        assert_eq!(self.ring, other.ring, "ring mismatch in sum");
        assert_eq!(self.shape(), other.shape(), "shape mismatch in sum");
        for (d, s) in self.data.iter_mut().zip(&other.data) {
            *d += s;
        }
        let ring = self.ring;
        for chunk in self.data.chunks_mut(ring.width()) {
            ring.normalize_in_place(chunk);
        }
    }

    /// Multiply every entry by the integer `k`.
    pub fn scale(&self, k: i64) -> Matrix {
        let mut out = self.clone();
        for d in &mut out.data {
            *d *= k;
        }
        let ring = out.ring;
        for chunk in out.data.chunks_mut(ring.width()) {
            ring.normalize_in_place(chunk);
        }
        out
    }

    pub fn neg(&self) -> Matrix {
        self.scale(-1)
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set_entry(j, i, self.entry(i, j));
            }
        }
        out
    }

    /// Conjugate transpose: apply the ring involution entrywise, then transpose.
    pub fn involution_transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set_entry(j, i, &self.ring.involute(self.entry(i, j)));
            }
        }
        out
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        let mut out = Matrix::zeros(self.ring, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out.set_entry(i, j, self.entry(r0 + i, c0 + j));
            }
        }
        out
    }

    pub fn add_block(&mut self, r0: usize, c0: usize, b: &Matrix) {
        assert_eq!(self.ring, b.ring, "ring mismatch in block");
        for i in 0..b.rows {
            for j in 0..b.cols {
                if !b.is_entry_zero(i, j) {
                    self.add_entry(r0 + i, c0 + j, b.entry(i, j));
                }
            }
        }
    }

    /// Scalar entries as `i64`, for tests and reports. Panics on overflow or
    /// on group-ring matrices.
    /// Rows of entries; a group-ring entry is its coefficient vector, and
    /// integers outside `i64` are written as strings.
    pub fn to_json(&self) -> Value {
        let int =
            |v: &BigInt| i64::try_from(v).map_or_else(|_| Value::from(v.to_string()), Value::from);
        let rows = (0..self.rows)
            .map(|i| {
                let row = (0..self.cols).map(|j| match self.entry(i, j) {
                    [v] => int(v),
                    e => Value::Array(e.iter().map(int).collect()),
                });
                Value::Array(row.collect())
            })
            .collect();
        Value::Array(rows)
    }

    pub fn to_i64_rows(&self) -> Vec<Vec<i64>> {
        assert!(self.ring.is_scalar());
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| i64::try_from(self.get(i, j)).expect("entry fits in i64"))
                    .collect()
            })
            .collect()
    }

    /// Determinant of a square scalar matrix (Bareiss elimination over ℤ,
    /// Gaussian elimination over a prime field).
    pub fn determinant(&self) -> BigInt {
        assert!(self.ring.is_scalar() && self.rows == self.cols);
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a: Vec<Vec<BigInt>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).clone()).collect())
            .collect();
        if let Ring::PrimeField(p) = self.ring {
            let (_, det) = eliminate_mod_p(&mut a, p);
            return det;
        }
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    /// Rank over the fraction field (ℤ) or over the prime field.
    pub fn rank(&self) -> usize {
        assert!(self.ring.is_scalar());
        let mut a: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).clone()).collect())
            .collect();
        match self.ring {
            Ring::PrimeField(p) => eliminate_mod_p(&mut a, p).0,
            _ => super::snf::smith_normal_form(self)
                .invariant_factors()
                .len(),
        }
    }
}

/// Row-reduce in place over `ℤ/p`; returns `(rank, determinant if square)`.
fn eliminate_mod_p(a: &mut [Vec<BigInt>], p: u64) -> (usize, BigInt) {
    let p_big = BigInt::from(p);
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut det = BigInt::one();
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            det = BigInt::zero();
            continue;
        };
        if piv != rank {
            a.swap(piv, rank);
            det = -det;
        }
        det = (det * &a[rank][c]).mod_floor(&p_big);
        let inv = a[rank][c].modpow(&(&p_big - 2u32), &p_big);
        for r in 0..rows {
            if r != rank && !a[r][c].is_zero() {
                let f = (&a[r][c] * &inv).mod_floor(&p_big);
                for k in c..cols {
                    let v = (&a[r][k] - &f * &a[rank][k]).mod_floor(&p_big);
                    a[r][k] = v;
                }
            }
        }
        rank += 1;
    }
    if rows != cols || rank < rows {
        det = BigInt::zero();
    }
    (rank, det.mod_floor(&p_big))
}

/// `|det| = 1`.
pub fn is_unimodular(m: &Matrix) -> bool {
    m.rows() == m.cols() && m.determinant().abs().is_one()
}
