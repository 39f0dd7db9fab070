//! Exact linear algebra over GF(p) for the small primes 2, 3, 5 and 7.
//!
//! Vectors and matrices store one residue per byte. Gaussian elimination over
//! GF(2) runs on word-packed rows with XOR updates; every other prime goes
//! through the generic modular path. Both paths pivot on the lowest row and
//! lowest column, so they produce the same reduced row echelon form and hence
//! identical particular solutions and kernel bases.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

pub const SUPPORTED_PRIMES: [u8; 4] = [2, 3, 5, 7];

pub fn check_prime(p: u8) -> Result<()> {
    if SUPPORTED_PRIMES.contains(&p) {
        Ok(())
    } else {
        invalid(format!("unsupported field size {p}; expected one of 2, 3, 5, 7"))
    }
}

#[inline]
pub fn add(p: u8, a: u8, b: u8) -> u8 {
    ((a as u16 + b as u16) % p as u16) as u8
}

#[inline]
pub fn sub(p: u8, a: u8, b: u8) -> u8 {
    ((a as u16 + p as u16 - b as u16) % p as u16) as u8
}

#[inline]
pub fn mul(p: u8, a: u8, b: u8) -> u8 {
    ((a as u16 * b as u16) % p as u16) as u8
}

#[inline]
pub fn neg(p: u8, a: u8) -> u8 {
    sub(p, 0, a)
}

/// Multiplicative inverse of a nonzero residue.
pub fn inv(p: u8, a: u8) -> u8 {
    debug_assert!(!a.is_multiple_of(p));
    (1..p).find(|&x| mul(p, a, x) == 1).expect("nonzero residue has an inverse")
}

/// Reduce a signed integer into `[0, p)`.
pub fn reduce(p: u8, v: i64) -> u8 {
    v.rem_euclid(p as i64) as u8
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FieldVector {
    p: u8,
    coords: Vec<u8>,
}

impl FieldVector {
    pub fn new(p: u8, coords: Vec<u8>) -> Result<Self> {
        check_prime(p)?;
        if let Some(c) = coords.iter().find(|&&c| c >= p) {
            return invalid(format!("coordinate {c} is not a residue mod {p}"));
        }
        Ok(Self { p, coords })
    }

    /// Builds a vector from arbitrary integers, reducing each mod p.
    pub fn from_ints(p: u8, coords: &[i64]) -> Result<Self> {
        check_prime(p)?;
        Ok(Self {
            p,
            coords: coords.iter().map(|&c| reduce(p, c)).collect(),
        })
    }

    pub(crate) fn from_raw(p: u8, coords: Vec<u8>) -> Self {
        debug_assert!(coords.iter().all(|&c| c < p));
        Self { p, coords }
    }

    pub fn zero(p: u8, len: usize) -> Self {
        Self { p, coords: vec![0; len] }
    }

    pub fn unit(p: u8, len: usize, i: usize) -> Self {
        let mut v = Self::zero(p, len);
        v.coords[i] = 1;
        v
    }

    pub fn p(&self) -> u8 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &[u8] {
        &self.coords
    }

    pub fn get(&self, i: usize) -> u8 {
        self.coords[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// Number of nonzero coordinates.
    pub fn weight(&self) -> usize {
        self.coords.iter().filter(|&&c| c != 0).count()
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, add)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, sub)
    }

    pub fn scale(&self, k: u8) -> Self {
        let p = self.p;
        Self::from_raw(p, self.coords.iter().map(|&c| mul(p, c, k % p)).collect())
    }

    /// `self + k * other`
    pub fn add_scaled(&self, k: u8, other: &Self) -> Self {
        let p = self.p;
        assert_eq!(self.len(), other.len(), "length mismatch");
        Self::from_raw(
            p,
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(&a, &b)| add(p, a, mul(p, k, b)))
                .collect(),
        )
    }

    pub fn dot(&self, other: &Self) -> u8 {
        assert_eq!(self.len(), other.len(), "length mismatch");
        let p = self.p as u32;
        let s: u32 = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(&a, &b)| a as u32 * b as u32)
            .sum();
        (s % p) as u8
    }

    /// Coordinates restricted to the given index list.
    pub fn select(&self, idx: &[usize]) -> Self {
        Self::from_raw(self.p, idx.iter().map(|&i| self.coords[i]).collect())
    }

    /// Base-p little-endian integer encoding.
    pub fn encode(&self) -> u64 {
        self.coords
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * self.p as u64 + c as u64)
    }

    pub fn decode(p: u8, len: usize, mut code: u64) -> Self {
        let mut coords = Vec::with_capacity(len);
        for _ in 0..len {
            coords.push((code % p as u64) as u8);
            code /= p as u64;
        }
        Self::from_raw(p, coords)
    }

    fn zip(&self, other: &Self, f: fn(u8, u8, u8) -> u8) -> Self {
        assert_eq!(self.p, other.p, "field mismatch");
        assert_eq!(self.len(), other.len(), "length mismatch");
        let p = self.p;
        Self::from_raw(
            p,
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(&a, &b)| f(p, a, b))
                .collect(),
        )
    }
}

impl fmt::Debug for FieldVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.p)?;
        f.debug_list().entries(&self.coords).finish()
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldMatrix {
    p: u8,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl FieldMatrix {
    pub fn zeros(p: u8, rows: usize, cols: usize) -> Self {
        Self {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u8, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(p: u8, rows: &[Vec<u8>]) -> Result<Self> {
        check_prime(p)?;
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return invalid("matrix rows have different lengths");
        }
        let data: Vec<u8> = rows.iter().flatten().copied().collect();
        if let Some(c) = data.iter().find(|&&c| c >= p) {
            return invalid(format!("entry {c} is not a residue mod {p}"));
        }
        Ok(Self {
            p,
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(p: u8, len: usize, cols: &[FieldVector]) -> Self {
        let mut m = Self::zeros(p, len, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for i in 0..len {
                m.set(i, j, c.get(i));
            }
        }
        m
    }

    pub fn p(&self) -> u8 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u8) {
        self.data[r * self.cols + c] = v % self.p;
    }

    pub fn row(&self, r: usize) -> FieldVector {
        FieldVector::from_raw(self.p, self.data[r * self.cols..(r + 1) * self.cols].to_vec())
    }

    pub fn column(&self, c: usize) -> FieldVector {
        FieldVector::from_raw(self.p, (0..self.rows).map(|r| self.get(r, c)).collect())
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        self.data.chunks(self.cols.max(1)).take(self.rows).map(<[u8]>::to_vec).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.p, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    /// `self · v` for a column vector `v`.
    pub fn mul_vec(&self, v: &FieldVector) -> FieldVector {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        FieldVector::from_raw(self.p, (0..self.rows).map(|r| self.row(r).dot(v)).collect())
    }

    /// `v · self` for a row vector `v`.
    pub fn vec_mul(&self, v: &FieldVector) -> FieldVector {
        assert_eq!(self.rows, v.len(), "dimension mismatch");
        let p = self.p;
        let mut out = vec![0u8; self.cols];
        for r in 0..self.rows {
            let k = v.get(r);
            if k == 0 {
                continue;
            }
            for (c, o) in out.iter_mut().enumerate() {
                *o = add(p, *o, mul(p, k, self.get(r, c)));
            }
        }
        FieldVector::from_raw(p, out)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.p, self.rows, other.cols);
        for r in 0..self.rows {
            let row = other.vec_mul(&self.row(r));
            for c in 0..other.cols {
                out.set(r, c, row.get(c));
            }
        }
        out
    }

    /// Skew-symmetric with zero diagonal.
    pub fn is_alternating(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                self.get(i, i) == 0
                    && (0..i).all(|j| self.get(i, j) == neg(self.p, self.get(j, i)))
            })
    }

    /// Sub-matrix on the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut m = Self::zeros(self.p, rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                m.set(i, j, self.get(r, c));
            }
        }
        m
    }

    pub fn rank(&self) -> usize {
        let zero = FieldVector::zero(self.p, self.rows);
        self.cols - solve_affine(self, &zero).expect("shapes agree").kernel_basis.len()
    }
}

impl fmt::Debug for FieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "GF({}) {}x{}", self.p, self.rows, self.cols)?;
        for r in self.to_rows() {
            writeln!(f, "  {r:?}")?;
        }
        Ok(())
    }
}

/// Affine solution set `particular + span(kernel_basis)` of `A·x = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionSet {
    pub particular: Option<FieldVector>,
    pub kernel_basis: Vec<FieldVector>,
}

impl SolutionSet {
    pub fn is_solvable(&self) -> bool {
        self.particular.is_some()
    }
}

fn check_shapes(a: &FieldMatrix, b: &FieldVector) -> Result<()> {
    if a.p != b.p {
        return invalid(format!("matrix over GF({}) but vector over GF({})", a.p, b.p));
    }
    if a.rows != b.len() {
        return invalid(format!(
            "matrix has {} rows but right-hand side has length {}",
            a.rows,
            b.len()
        ));
    }
    Ok(())
}

/// Solves `A·x = b`, returning one particular solution (when consistent) and
/// a basis of `ker A`.
pub fn solve_affine(a: &FieldMatrix, b: &FieldVector) -> Result<SolutionSet> {
    check_shapes(a, b)?;
    if a.p == 2 {
        Ok(gf2::solve(a, b))
    } else {
        Ok(solve_generic_unchecked(a, b))
    }
}

/// Generic modular elimination for any supported prime, including 2.
pub fn solve_affine_generic(a: &FieldMatrix, b: &FieldVector) -> Result<SolutionSet> {
    check_shapes(a, b)?;
    Ok(solve_generic_unchecked(a, b))
}

pub fn image_contains(a: &FieldMatrix, b: &FieldVector) -> Result<bool> {
    if b.is_zero() {
        check_shapes(a, b)?;
        return Ok(true);
    }
    Ok(solve_affine(a, b)?.is_solvable())
}

/// Reads the solution set off a reduced row echelon form given by its pivot
/// columns (row i has its pivot at `pivots[i]`).
fn read_solution(
    p: u8,
    cols: usize,
    pivots: &[usize],
    consistent: bool,
    rhs: impl Fn(usize) -> u8,
    entry: impl Fn(usize, usize) -> u8,
) -> SolutionSet {
    let particular = consistent.then(|| {
        let mut x = vec![0u8; cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = rhs(r);
        }
        FieldVector::from_raw(p, x)
    });
    let mut is_pivot = vec![false; cols];
    for &c in pivots {
        is_pivot[c] = true;
    }
    let kernel_basis = (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut x = vec![0u8; cols];
            x[f] = 1;
            for (r, &c) in pivots.iter().enumerate() {
                x[c] = neg(p, entry(r, f));
            }
            FieldVector::from_raw(p, x)
        })
        .collect();
    SolutionSet {
        particular,
        kernel_basis,
    }
}

fn solve_generic_unchecked(a: &FieldMatrix, b: &FieldVector) -> SolutionSet {
    let p = a.p;
    let (rows, cols) = (a.rows, a.cols);
    let width = cols + 1;
    let mut m: Vec<Vec<u8>> = (0..rows)
        .map(|r| {
            let mut row = a.row(r).coords;
            row.push(b.get(r));
            row
        })
        .collect();
    let mut pivots = Vec::new();
    for c in 0..cols {
        let top = pivots.len();
        let Some(r) = (top..rows).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(top, r);
        let scale = inv(p, m[top][c]);
        for v in m[top].iter_mut() {
            *v = mul(p, *v, scale);
        }
        let pivot_row = m[top].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == top || row[c] == 0 {
                continue;
            }
            let f = row[c];
            for k in 0..width {
                row[k] = sub(p, row[k], mul(p, f, pivot_row[k]));
            }
        }
        pivots.push(c);
    }
    let consistent = m[pivots.len()..].iter().all(|row| row[cols] == 0);
    read_solution(p, cols, &pivots, consistent, |r| m[r][cols], |r, f| m[r][f])
}

mod gf2 {
    use super::*;

    const W: usize = 64;

    /// Row of the augmented matrix `[A | b]` packed into 64-bit words.
    struct PackedRows {
        words: usize,
        data: Vec<u64>,
    }

    impl PackedRows {
        #[inline]
        fn bit(&self, r: usize, c: usize) -> bool {
            self.data[r * self.words + c / W] >> (c % W) & 1 == 1
        }

        fn swap(&mut self, a: usize, b: usize) {
            if a != b {
                for w in 0..self.words {
                    self.data.swap(a * self.words + w, b * self.words + w);
                }
            }
        }

        /// `row[dst] ^= row[src]`
        #[inline]
        fn xor_into(&mut self, dst: usize, src: usize) {
            let n = self.words;
            for w in 0..n {
                let s = self.data[src * n + w];
                self.data[dst * n + w] ^= s;
            }
        }
    }

    pub(super) fn solve(a: &FieldMatrix, b: &FieldVector) -> SolutionSet {
        let (rows, cols) = (a.rows, a.cols);
        let words = (cols + 1).div_ceil(W);
        let mut m = PackedRows {
            words,
            data: vec![0; rows * words],
        };
        for r in 0..rows {
            for c in 0..cols {
                if a.get(r, c) == 1 {
                    m.data[r * words + c / W] |= 1 << (c % W);
                }
            }
            if b.get(r) == 1 {
                m.data[r * words + cols / W] |= 1 << (cols % W);
            }
        }
        let mut pivots = Vec::new();
        for c in 0..cols {
            let top = pivots.len();
            let Some(r) = (top..rows).find(|&r| m.bit(r, c)) else {
                continue;
            };
            m.swap(top, r);
            for r in 0..rows {
                if r != top && m.bit(r, c) {
                    m.xor_into(r, top);
                }
            }
            pivots.push(c);
        }
        let consistent = (pivots.len()..rows).all(|r| !m.bit(r, cols));
        read_solution(
            2,
            cols,
            &pivots,
            consistent,
            |r| m.bit(r, cols) as u8,
            |r, f| m.bit(r, f) as u8,
        )
    }
}
