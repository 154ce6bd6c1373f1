//! Exact rational scalars and dense matrices, plus the solve/kernel/permutation
//! primitives the reconstruction pipeline is built on.
//!
//! Everything here is exact: no rounding anywhere. The Kronecker index
//! convention is fixed globally as row-major, `(i ⊗ j) ↦ i * cols_g + j`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Error)]
pub enum LinError {
    #[error("dimension mismatch in {op}: left is {left_rows}x{left_cols}, right is {right_rows}x{right_cols}")]
    DimensionMismatch {
        op: &'static str,
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },
    #[error("cannot parse scalar {text:?}: {reason}")]
    BadScalar { text: String, reason: String },
}

/// An exact rational number, always stored reduced with positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar(BigRational);

impl Scalar {
    pub fn zero() -> Self {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num / den`; panics if `den` is zero.
    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn recip(&self) -> Scalar {
        assert!(!self.is_zero(), "division by zero");
        Scalar(self.0.recip())
    }

    /// Residue `self mod p`, or `None` when the denominator vanishes mod p.
    fn mod_p(&self, p: u64) -> Option<u64> {
        let p_big = BigInt::from(p);
        let num = ((self.0.numer() % &p_big) + &p_big) % &p_big;
        let den = ((self.0.denom() % &p_big) + &p_big) % &p_big;
        let num: u64 = num.try_into().unwrap();
        let den: u64 = den.try_into().unwrap();
        if den == 0 {
            return None;
        }
        Some(num * mod_inverse(den, p) % p)
    }
}

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc: u64 = 1;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    mod_pow(a, p - 2, p)
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Scalar {
    type Err = LinError;

    fn from_str(s: &str) -> Result<Self, LinError> {
        let bad = |reason: &str| LinError::BadScalar {
            text: s.to_string(),
            reason: reason.to_string(),
        };
        let s = s.trim();
        let (num_text, den_text) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (s, None),
        };
        let num = BigInt::from_str(num_text).map_err(|e| bad(&e.to_string()))?;
        let den = match den_text {
            Some(d) => BigInt::from_str(d).map_err(|e| bad(&e.to_string()))?,
            None => BigInt::one(),
        };
        if den.is_zero() {
            return Err(bad("zero denominator"));
        }
        Ok(Scalar(BigRational::new(num, den)))
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(|e: LinError| D::Error::custom(e.to_string()))
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar((&self.0).$method(&rhs.0))
            }
        }
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar(self.0.$method(rhs.0))
            }
        }
    };
}

scalar_binop!(Add, add);
scalar_binop!(Sub, sub);
scalar_binop!(Mul, mul);

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        assert!(!rhs.is_zero(), "division by zero");
        Scalar(&self.0 / &rhs.0)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-&self.0)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

/// A dense matrix over [`Scalar`], entries stored row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            entries: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Matrix {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Matrix { rows, cols, entries }
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Matrix {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        Matrix {
            rows: nrows,
            cols: ncols,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_ints(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&n| Scalar::from_int(n)).collect())
                .collect(),
        )
    }

    /// Column vector from a slice of scalars.
    pub fn column(entries: Vec<Scalar>) -> Matrix {
        let rows = entries.len();
        Matrix { rows, cols: 1, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        debug_assert!(i < self.rows && j < self.cols);
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        debug_assert!(i < self.rows && j < self.cols);
        self.entries[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Matrix::identity(self.rows)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) * c)
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) + other.get(i, j))
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) - other.get(i, j))
    }

    /// `self · other`, panicking on a shape mismatch. Internal composites with
    /// shapes guaranteed by construction use this; the public contract with a
    /// structured error is [`compose`].
    pub fn dot(&self, other: &Matrix) -> Matrix {
        compose(self, other).expect("shape mismatch in internal composite")
    }

    pub fn column_vec(&self, j: usize) -> Matrix {
        Matrix::from_fn(self.rows, 1, |i, _| self.get(i, j).clone())
    }

    /// Row-major vectorization as a column vector.
    pub fn vectorize(&self) -> Matrix {
        Matrix {
            rows: self.rows * self.cols,
            cols: 1,
            entries: self.entries.clone(),
        }
    }

    /// Inverse of [`Matrix::vectorize`] for the given shape.
    pub fn unvectorize(vec: &Matrix, rows: usize, cols: usize) -> Matrix {
        assert_eq!(vec.cols, 1);
        assert_eq!(vec.rows, rows * cols);
        Matrix {
            rows,
            cols,
            entries: vec.entries.clone(),
        }
    }

    /// Stack matrices vertically; all must agree in column count.
    pub fn vstack(blocks: &[Matrix]) -> Matrix {
        assert!(!blocks.is_empty());
        let cols = blocks[0].cols;
        assert!(blocks.iter().all(|b| b.cols == cols));
        let rows = blocks.iter().map(|b| b.rows).sum();
        let entries = blocks.iter().flat_map(|b| b.entries.iter().cloned()).collect();
        Matrix { rows, cols, entries }
    }

    /// Glue columns side by side; all must agree in row count.
    pub fn hstack(blocks: &[Matrix]) -> Matrix {
        assert!(!blocks.is_empty());
        let rows = blocks[0].rows;
        assert!(blocks.iter().all(|b| b.rows == rows));
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Matrix::zeros(rows, cols);
        let mut off = 0;
        for b in blocks {
            for i in 0..rows {
                for j in 0..b.cols {
                    m.set(i, off + j, b.get(i, j).clone());
                }
            }
            off += b.cols;
        }
        m
    }

    /// Reorder columns: new column `j` is old column `perm[j]`.
    pub fn permute_cols(&self, perm: &[usize]) -> Matrix {
        assert_eq!(perm.len(), self.cols);
        Matrix::from_fn(self.rows, self.cols, |i, j| self.get(i, perm[j]).clone())
    }

    /// Reorder rows: new row `i` is old row `perm[i]`. Composing a
    /// permutation matrix P on the left is `self.permute_rows(&map)` with
    /// `map` the index map of P, without materializing P.
    pub fn permute_rows(&self, perm: &[usize]) -> Matrix {
        assert_eq!(perm.len(), self.rows);
        Matrix::from_fn(self.rows, self.cols, |i, j| self.get(perm[i], j).clone())
    }

    pub fn first_diff(&self, other: &Matrix) -> Option<(usize, usize)> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Some((0, 0));
        }
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) != other.get(i, j) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Exact rank via fraction-free elimination.
    pub fn rank(&self) -> usize {
        let mut work = self.clone();
        rref_in_place(&mut work).len()
    }

    /// Lower bound on the rank from elimination over a prime field. Equals the
    /// true rank unless a minor happens to vanish mod p, so a modular rank of
    /// `cols` certifies injectivity exactly.
    pub fn rank_lower_bound(&self) -> usize {
        const PRIMES: [u64; 3] = [2_147_483_647, 2_147_483_629, 2_147_483_587];
        for p in PRIMES {
            if let Some(r) = self.rank_mod(p) {
                return r;
            }
        }
        // Every prime hit a denominator; fall back to the exact computation.
        self.rank()
    }

    fn rank_mod(&self, p: u64) -> Option<usize> {
        let mut m: Vec<u64> = Vec::with_capacity(self.entries.len());
        for e in &self.entries {
            m.push(e.mod_p(p)?);
        }
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0;
        for col in 0..cols {
            let Some(pivot) = (rank..rows).find(|&r| m[r * cols + col] != 0) else {
                continue;
            };
            for j in 0..cols {
                m.swap(rank * cols + j, pivot * cols + j);
            }
            let inv = mod_inverse(m[rank * cols + col], p);
            for j in col..cols {
                m[rank * cols + j] = m[rank * cols + j] * inv % p;
            }
            for r in 0..rows {
                if r != rank && m[r * cols + col] != 0 {
                    let factor = m[r * cols + col];
                    for j in col..cols {
                        let sub = factor * m[rank * cols + j] % p;
                        m[r * cols + j] = (m[r * cols + j] + p - sub) % p;
                    }
                }
            }
            rank += 1;
            if rank == rows {
                break;
            }
        }
        Some(rank)
    }
}

/// Matrix product `g ∘ f` (apply `f`, then `g`).
pub fn compose(g: &Matrix, f: &Matrix) -> Result<Matrix, LinError> {
    if g.cols != f.rows {
        return Err(LinError::DimensionMismatch {
            op: "compose",
            left_rows: g.rows,
            left_cols: g.cols,
            right_rows: f.rows,
            right_cols: f.cols,
        });
    }
    let rows = g.rows;
    let cols = f.cols;
    let inner = g.cols;
    let row_of = |i: usize| -> Vec<Scalar> {
        (0..cols)
            .map(|j| {
                let mut acc = Scalar::zero();
                for k in 0..inner {
                    let a = g.get(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    let b = f.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    acc = &acc + &(a * b);
                }
                acc
            })
            .collect()
    };
    let entries = map_rows(rows, cols, row_of);
    Ok(Matrix { rows, cols, entries })
}

/// Single-threaded product with the same contract as [`compose`]; kept
/// callable unconditionally so benchmarks can compare against the default
/// (possibly parallel) path.
pub fn compose_serial(g: &Matrix, f: &Matrix) -> Result<Matrix, LinError> {
    if g.cols != f.rows {
        return Err(LinError::DimensionMismatch {
            op: "compose",
            left_rows: g.rows,
            left_cols: g.cols,
            right_rows: f.rows,
            right_cols: f.cols,
        });
    }
    let mut out = Matrix::zeros(g.rows, f.cols);
    for i in 0..g.rows {
        for k in 0..g.cols {
            let a = g.get(i, k).clone();
            if a.is_zero() {
                continue;
            }
            for j in 0..f.cols {
                let b = f.get(k, j);
                if b.is_zero() {
                    continue;
                }
                let v = out.get(i, j) + &(&a * b);
                out.set(i, j, v);
            }
        }
    }
    Ok(out)
}

#[cfg(feature = "parallel")]
fn map_rows(rows: usize, cols: usize, row_of: impl Fn(usize) -> Vec<Scalar> + Sync + Send) -> Vec<Scalar> {
    if rows * cols >= 1024 {
        (0..rows).into_par_iter().flat_map_iter(row_of).collect()
    } else {
        (0..rows).flat_map(row_of).collect()
    }
}

#[cfg(not(feature = "parallel"))]
fn map_rows(rows: usize, _cols: usize, row_of: impl Fn(usize) -> Vec<Scalar> + Sync) -> Vec<Scalar> {
    (0..rows).flat_map(row_of).collect()
}

/// Kronecker product with the global row-major convention:
/// column `(i ⊗ j) ↦ i * g.cols + j`, and likewise for rows.
pub fn kronecker(f: &Matrix, g: &Matrix) -> Matrix {
    let rows = f.rows * g.rows;
    let cols = f.cols * g.cols;
    let mut out = Matrix::zeros(rows, cols);
    for fi in 0..f.rows {
        for fj in 0..f.cols {
            let a = f.get(fi, fj);
            if a.is_zero() {
                continue;
            }
            for gi in 0..g.rows {
                for gj in 0..g.cols {
                    let b = g.get(gi, gj);
                    if b.is_zero() {
                        continue;
                    }
                    out.set(fi * g.rows + gi, fj * g.cols + gj, a * b);
                }
            }
        }
    }
    out
}

pub fn kronecker_all(factors: &[&Matrix]) -> Matrix {
    let mut acc = Matrix::identity(1);
    for f in factors {
        acc = kronecker(&acc, f);
    }
    acc
}

/// Reduce `m` to reduced row echelon form in place; returns the pivot columns
/// in order. Pivot choice is the first nonzero entry scanning down, so the
/// result is deterministic.
fn rref_in_place(m: &mut Matrix) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m.cols {
        if row == m.rows {
            break;
        }
        let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
            continue;
        };
        if p != row {
            for j in 0..m.cols {
                let a = m.get(row, j).clone();
                let b = m.get(p, j).clone();
                m.set(row, j, b);
                m.set(p, j, a);
            }
        }
        let inv = m.get(row, col).recip();
        for j in col..m.cols {
            let v = m.get(row, j) * &inv;
            m.set(row, j, v);
        }
        for r in 0..m.rows {
            if r != row && !m.get(r, col).is_zero() {
                let factor = m.get(r, col).clone();
                for j in col..m.cols {
                    let v = m.get(r, j) - &(&factor * m.get(row, j));
                    m.set(r, j, v);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Return some `X` with `A · X = B` when one exists (free variables set to
/// zero), or `None` when the system is inconsistent.
pub fn solve(a: &Matrix, b: &Matrix) -> Option<Matrix> {
    assert_eq!(a.rows, b.rows, "solve: A and b must have equal row counts");
    let mut aug = Matrix::hstack(&[a.clone(), b.clone()]);
    let pivots = rref_in_place(&mut aug);
    // Any pivot landing in the b-block marks an inconsistent system.
    if pivots.iter().any(|&c| c >= a.cols) {
        return None;
    }
    let mut x = Matrix::zeros(a.cols, b.cols);
    for (r, &c) in pivots.iter().enumerate() {
        for j in 0..b.cols {
            x.set(c, j, aug.get(r, a.cols + j).clone());
        }
    }
    Some(x)
}

/// Deterministic basis (column vectors) of the nullspace of `A`.
pub fn kernel_basis(a: &Matrix) -> Vec<Matrix> {
    let mut work = a.clone();
    let pivots = rref_in_place(&mut work);
    let pivot_set: Vec<Option<usize>> = {
        let mut v = vec![None; a.cols];
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = Some(r);
        }
        v
    };
    let mut basis = Vec::new();
    for free in 0..a.cols {
        if pivot_set[free].is_some() {
            continue;
        }
        let mut v = Matrix::zeros(a.cols, 1);
        v.set(free, 0, Scalar::one());
        for (col, slot) in pivot_set.iter().enumerate() {
            if let Some(r) = slot {
                v.set(col, 0, -work.get(*r, free));
            }
        }
        basis.push(v);
    }
    basis
}

/// Index map of the tensor-factor permutation: output factor `j` is input
/// factor `perm[j]`. Returns, for each output linear index, the input linear
/// index it reads from.
pub fn factor_permutation_indices(perm: &[usize], dims: &[usize]) -> Vec<usize> {
    assert_eq!(perm.len(), dims.len());
    {
        let mut seen = vec![false; dims.len()];
        for &p in perm {
            assert!(!seen[p], "perm is not a bijection");
            seen[p] = true;
        }
    }
    let total: usize = dims.iter().product();
    let out_dims: Vec<usize> = perm.iter().map(|&p| dims[p]).collect();
    // strides of the input factors
    let mut strides = vec![1usize; dims.len()];
    for i in (0..dims.len().saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * dims[i + 1];
    }
    let mut map = vec![0usize; total];
    for (out_idx, slot) in map.iter_mut().enumerate() {
        // decompose out_idx over out_dims, route each digit to its input factor
        let mut rem = out_idx;
        let mut in_idx = 0;
        for (j, &d) in out_dims.iter().enumerate().rev() {
            let digit = if d == 0 { 0 } else { rem % d };
            rem /= d.max(1);
            in_idx += digit * strides[perm[j]];
        }
        *slot = in_idx;
    }
    map
}

/// Matrix permuting Kronecker factors: output factor `j` is input factor
/// `perm[j]`. A transposition of equal-dimension factors is an involution.
pub fn permutation_matrix(perm: &[usize], dims: &[usize]) -> Matrix {
    let map = factor_permutation_indices(perm, dims);
    let n = map.len();
    let mut m = Matrix::zeros(n, n);
    for (out_idx, &in_idx) in map.iter().enumerate() {
        m.set(out_idx, in_idx, Scalar::one());
    }
    m
}

/// Symmetry `σ: V ⊗ W → W ⊗ V` for factor dimensions `(dim_v, dim_w)`.
pub fn swap_matrix(dim_v: usize, dim_w: usize) -> Matrix {
    permutation_matrix(&[1, 0], &[dim_v, dim_w])
}
