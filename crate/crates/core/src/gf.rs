//! Exact dense linear algebra over a prime field GF(p).
//!
//! Every dimension, rank, and kernel computation in the toolkit bottoms out
//! here. Elements are canonical representatives in `[0, p)` stored as `u64`;
//! the modulus is kept below `2^31` so products fit in `u64` without overflow.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Default working prime. Pipelines can be re-run under [`FieldSpec::SECOND_PRIME`]
/// to flag characteristic artifacts.
pub const DEFAULT_PRIME: u64 = 32003;
/// Second prime for agreement runs.
pub const SECOND_PRIME: u64 = 65537;

/// A prime field GF(p), `p < 2^31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    p: u64,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl FieldSpec {
    pub fn new(p: u64) -> Result<Self> {
        if p >= (1 << 31) || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldSpec { p })
    }

    pub fn default_prime() -> Self {
        FieldSpec { p: DEFAULT_PRIME }
    }

    pub fn second_prime() -> Self {
        FieldSpec { p: SECOND_PRIME }
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; panics on zero (callers guard).
    pub fn inv(&self, a: u64) -> u64 {
        assert!(a != 0, "inverse of zero in GF({})", self.p);
        self.pow(a, self.p - 2)
    }

    /// Reduce a signed integer to its canonical representative.
    pub fn reduce_i64(&self, c: i64) -> u64 {
        let p = self.p as i64;
        (c.rem_euclid(p)) as u64
    }
}

/// Dense row-major matrix over a prime field.
///
/// Values are immutable after construction; rank-type operations copy the
/// entries and eliminate in place on the private copy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldMatrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<u64>,
}

impl FieldMatrix {
    pub fn new(field: FieldSpec, rows: usize, cols: usize, mut entries: Vec<u64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                entries.len()
            )));
        }
        for e in &mut entries {
            *e %= field.p();
        }
        Ok(FieldMatrix {
            field,
            rows,
            cols,
            entries,
        })
    }

    pub fn zero(field: FieldSpec, rows: usize, cols: usize) -> Self {
        FieldMatrix {
            field,
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zero(field, n, n);
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(field: FieldSpec, rows: &[Vec<u64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged row lengths".into()));
        }
        Self::new(field, r, c, rows.concat())
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn field(&self) -> FieldSpec {
        self.field
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> u64 {
        self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.entries[r * self.cols + c] = v % self.field.p();
    }

    pub fn transpose(&self) -> FieldMatrix {
        let mut out = Self::zero(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.entries[c * self.rows + r] = self.at(r, c);
            }
        }
        out
    }

    /// Column-concatenation `[self | other]`.
    pub fn hstack(&self, other: &FieldMatrix) -> Result<FieldMatrix> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "hstack: {} rows vs {} rows",
                self.rows, other.rows
            )));
        }
        let cols = self.cols + other.cols;
        let mut entries = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            entries.extend_from_slice(&self.entries[r * self.cols..(r + 1) * self.cols]);
            entries.extend_from_slice(&other.entries[r * other.cols..(r + 1) * other.cols]);
        }
        Ok(FieldMatrix {
            field: self.field,
            rows: self.rows,
            cols,
            entries,
        })
    }

    /// Row-concatenation (stack `other` below `self`).
    pub fn vstack(&self, other: &FieldMatrix) -> Result<FieldMatrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "vstack: {} cols vs {} cols",
                self.cols, other.cols
            )));
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Ok(FieldMatrix {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn mul(&self, other: &FieldMatrix) -> Result<FieldMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "mul: {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = self.field;
        let mut out = Self::zero(f, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let v = f.add(out.at(r, c), f.mul(a, other.at(k, c)));
                    out.entries[r * other.cols + c] = v;
                }
            }
        }
        Ok(out)
    }

    /// Row-reduce a copy in place; returns (rank, pivot column per eliminated row).
    fn echelon(&self) -> (usize, Vec<usize>, Vec<u64>) {
        let f = self.field;
        let p = f.p();
        let mut a = self.entries.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..cols {
            if rank == rows {
                break;
            }
            let mut pivot_row = None;
            for r in rank..rows {
                if a[r * cols + col] != 0 {
                    pivot_row = Some(r);
                    break;
                }
            }
            let Some(pr) = pivot_row else { continue };
            if pr != rank {
                for c in 0..cols {
                    a.swap(pr * cols + c, rank * cols + c);
                }
            }
            let inv = f.inv(a[rank * cols + col]);
            for c in col..cols {
                a[rank * cols + c] = a[rank * cols + c] * inv % p;
            }
            for r in 0..rows {
                if r == rank {
                    continue;
                }
                let factor = a[r * cols + col];
                if factor == 0 {
                    continue;
                }
                for c in col..cols {
                    let sub = factor * a[rank * cols + c] % p;
                    a[r * cols + c] = f.sub(a[r * cols + c], sub);
                }
            }
            pivots.push(col);
            rank += 1;
        }
        (rank, pivots, a)
    }

    /// Rank via Gaussian elimination on a private copy; the matrix is unchanged.
    pub fn rank(&self) -> usize {
        self.echelon().0
    }

    /// `cols − rank`.
    pub fn kernel_dimension(&self) -> usize {
        self.cols - self.rank()
    }

    /// A matrix whose columns form a basis of the (right) kernel.
    pub fn kernel_basis(&self) -> FieldMatrix {
        let f = self.field;
        let (rank, pivots, a) = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Self::zero(f, self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            out.entries[fc * free.len() + k] = 1;
            for (r, &pc) in pivots.iter().enumerate().take(rank) {
                let v = a[r * self.cols + fc];
                if v != 0 {
                    out.entries[pc * free.len() + k] = f.neg(v);
                }
            }
        }
        out
    }

    /// dim(im A + im B) = rank of the column-concatenation `[A | B]`.
    pub fn image_sum_dimension(&self, other: &FieldMatrix) -> Result<usize> {
        Ok(self.hstack(other)?.rank())
    }

    /// Solve `self * x = rhs` for one column vector, if consistent.
    pub fn solve(&self, rhs: &[u64]) -> Result<Option<Vec<u64>>> {
        if rhs.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "solve: rhs length {} vs {} rows",
                rhs.len(),
                self.rows
            )));
        }
        let rhs_m = FieldMatrix::new(self.field, self.rows, 1, rhs.to_vec())?;
        let aug = self.hstack(&rhs_m)?;
        let (rank, pivots, a) = aug.echelon();
        // Inconsistent iff a pivot lands in the rhs column.
        if pivots.contains(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![0u64; self.cols];
        for (r, &pc) in pivots.iter().enumerate().take(rank) {
            x[pc] = a[r * aug.cols + self.cols];
        }
        Ok(Some(x))
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }
}
