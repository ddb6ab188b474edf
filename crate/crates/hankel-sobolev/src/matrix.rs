//! Windowed truncations of infinite matrices and structured constructors.
//!
//! The objects of interest are infinite matrices; a [`TruncatedMatrix`] stores
//! an `n × n` leading principal block together with a *window*: the number of
//! leading rows/columns guaranteed to coincide with the underlying infinite
//! matrix. Every operation states how much window it consumes and trims its
//! result accordingly; consuming past window 1 is an error, never silent
//! garbage. Entries outside the window are never read.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{FromPrimitive, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::ExactScalar;

/// Coefficient ring for matrix entries: exact rationals or `f64`.
pub trait Coeff:
    Clone
    + PartialEq
    + Zero
    + One
    + FromPrimitive
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
}

impl<T> Coeff for T where
    T: Clone
        + PartialEq
        + Zero
        + One
        + FromPrimitive
        + Neg<Output = Self>
        + Add<Output = Self>
        + Sub<Output = Self>
        + Mul<Output = Self>
{
}

/// Dense `n × n` leading principal submatrix of an infinite matrix.
///
/// Invariant: `1 <= window <= n`.
#[derive(Clone, PartialEq)]
pub struct TruncatedMatrix<S = ExactScalar> {
    n: usize,
    window: usize,
    data: Vec<S>,
}

impl<S> TruncatedMatrix<S> {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn at(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: S) {
        self.data[i * self.n + j] = value;
    }

    /// Re-declares the validity window; it can only shrink or stay within `n`.
    pub fn with_window(mut self, window: usize) -> Result<Self> {
        if window < 1 || window > self.n {
            return Err(Error::WindowExhausted(format!(
                "window {window} outside 1..={}",
                self.n
            )));
        }
        self.window = window;
        Ok(self)
    }
}

impl<S: Coeff> TruncatedMatrix<S> {
    pub fn zeros(n: usize) -> Self {
        assert!(n >= 1, "empty truncation");
        TruncatedMatrix {
            n,
            window: n,
            data: vec![S::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = S::one();
        }
        m
    }

    /// Builds from row vectors; all rows must have length `rows.len()`.
    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidInput("matrix needs at least one row".into()));
        }
        let mut data = Vec::with_capacity(n * n);
        for row in &rows {
            if row.len() != n {
                return Err(Error::InvalidInput(format!(
                    "expected {n} columns, found a row with {}",
                    row.len()
                )));
            }
        }
        for row in rows {
            data.extend(row);
        }
        Ok(TruncatedMatrix { n, window: n, data })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.data[i * n + j] = f(i, j);
            }
        }
        m
    }

    /// The truncation of `U^up · A · U^{-right}`: entry `(i,j) = a[i+up][j+right]`.
    ///
    /// Consumes `max(up, right)` of window; requires `up + right < window`.
    pub fn shift_conjugate(&self, up: usize, right: usize) -> Result<Self> {
        if up + right >= self.window {
            return Err(Error::WindowExhausted(format!(
                "shift by ({up},{right}) exhausts window {}",
                self.window
            )));
        }
        let w = self.window - up.max(right);
        let mut out = Self::zeros(w);
        for i in 0..w {
            for j in 0..w {
                out.data[i * w + j] = self.at(i + up, j + right).clone();
            }
        }
        Ok(out)
    }

    /// Transpose restricted to the window.
    pub fn transpose(&self) -> Self {
        let w = self.window;
        let mut out = Self::zeros(w);
        for i in 0..w {
            for j in 0..w {
                out.data[i * w + j] = self.at(j, i).clone();
            }
        }
        out
    }

    /// Product on the common window `min(self.window, rhs.window)`.
    ///
    /// The inner sum is truncated to the common window; for factors that are
    /// not banded/triangular the caller is responsible for shrinking the
    /// result window to where the truncated sum equals the infinite one.
    pub fn mat_mul(&self, rhs: &Self) -> Result<Self> {
        let w = self.window.min(rhs.window);
        if w < 1 {
            return Err(Error::WindowExhausted("empty product window".into()));
        }
        let mut out = Self::zeros(w);
        for i in 0..w {
            for j in 0..w {
                let mut acc = S::zero();
                for k in 0..w {
                    if self.at(i, k).is_zero() {
                        continue;
                    }
                    acc = acc + self.at(i, k).clone() * rhs.at(k, j).clone();
                }
                out.data[i * w + j] = acc;
            }
        }
        Ok(out)
    }

    /// Entrywise difference on the common window.
    pub fn sub_matrix(&self, rhs: &Self) -> Self {
        let w = self.window.min(rhs.window);
        Self::from_fn(w, |i, j| self.at(i, j).clone() - rhs.at(i, j).clone())
    }

    /// Entrywise scaling.
    pub fn scale(&self, c: &S) -> Self {
        let w = self.window;
        Self::from_fn(w, |i, j| c.clone() * self.at(i, j).clone())
    }

    /// Exact symmetry on the window.
    pub fn is_symmetric(&self) -> bool {
        for i in 0..self.window {
            for j in 0..i {
                if self.at(i, j) != self.at(j, i) {
                    return false;
                }
            }
        }
        true
    }

    /// True when every windowed entry is zero.
    pub fn is_zero_matrix(&self) -> bool {
        for i in 0..self.window {
            for j in 0..self.window {
                if !self.at(i, j).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// First nonzero windowed entry in row-major order.
    pub fn first_nonzero(&self) -> Option<(usize, usize)> {
        for i in 0..self.window {
            for j in 0..self.window {
                if !self.at(i, j).is_zero() {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn map<T: Coeff>(&self, mut f: impl FnMut(&S) -> T) -> TruncatedMatrix<T> {
        let mut out = TruncatedMatrix::<T>::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out.data[i * self.n + j] = f(self.at(i, j));
            }
        }
        out.window = self.window;
        out
    }
}

impl<S: Coeff + Div<Output = S>> TruncatedMatrix<S> {
    /// Inverse of a lower triangular matrix by forward substitution.
    ///
    /// The result is a two-sided inverse on the window; diagonal entries are
    /// reciprocals of the input diagonal.
    pub fn lower_triangular_inverse(&self) -> Result<Self> {
        let w = self.window;
        for i in 0..w {
            for j in (i + 1)..w {
                if !self.at(i, j).is_zero() {
                    return Err(Error::InvalidInput(format!(
                        "not lower triangular: nonzero entry at ({i},{j})"
                    )));
                }
            }
        }
        let mut inv = Self::zeros(w);
        for i in 0..w {
            if self.at(i, i).is_zero() {
                return Err(Error::SingularDiagonal(i));
            }
            inv.data[i * w + i] = S::one() / self.at(i, i).clone();
            for j in 0..i {
                // sum_{k=j..i-1} t[i][k] * inv[k][j], negated and divided by t[i][i]
                let mut acc = S::zero();
                for k in j..i {
                    if self.at(i, k).is_zero() {
                        continue;
                    }
                    acc = acc + self.at(i, k).clone() * inv.at(k, j).clone();
                }
                inv.data[i * w + j] = (-acc) / self.at(i, i).clone();
            }
        }
        Ok(inv)
    }
}

impl TruncatedMatrix<ExactScalar> {
    pub fn to_f64(&self) -> TruncatedMatrix<f64> {
        self.map(|x| x.to_f64())
    }

    /// Exact determinants of the leading principal blocks `1..=window`.
    ///
    /// Each block is scaled to integers row by row and eliminated with
    /// fraction-free (Bareiss) pivoting, which keeps intermediate values as
    /// exact minors of the scaled matrix.
    pub fn leading_principal_minors(&self) -> Vec<ExactScalar> {
        (1..=self.window).map(|k| self.minor(k)).collect()
    }

    fn minor(&self, k: usize) -> ExactScalar {
        // Clear denominators: multiply row i by the lcm of its denominators.
        let mut scale = BigInt::one();
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(k);
        for i in 0..k {
            let mut lcm = BigInt::one();
            for j in 0..k {
                lcm = lcm.lcm(self.at(i, j).denom());
            }
            let row: Vec<BigInt> = (0..k)
                .map(|j| {
                    let e = self.at(i, j);
                    e.numer() * (&lcm / e.denom())
                })
                .collect();
            scale *= &lcm;
            rows.push(row);
        }
        let det = bareiss_determinant(&mut rows);
        ExactScalar::from_big(det, scale).expect("row lcm is nonzero")
    }
}

impl TruncatedMatrix<f64> {
    /// Largest entry magnitude on the window; NaN-free inputs assumed.
    pub fn max_abs(&self) -> f64 {
        let mut m = 0.0f64;
        for i in 0..self.window {
            for j in 0..self.window {
                m = m.max(self.at(i, j).abs());
            }
        }
        m
    }

    /// Symmetry up to an absolute threshold.
    pub fn is_symmetric_within(&self, threshold: f64) -> bool {
        for i in 0..self.window {
            for j in 0..i {
                if (self.at(i, j) - self.at(j, i)).abs() > threshold {
                    return false;
                }
            }
        }
        true
    }

    /// Determinants of the leading principal blocks via pivoted elimination.
    pub fn leading_principal_minors_f64(&self) -> Vec<f64> {
        (1..=self.window).map(|k| f64_det(self, k)).collect()
    }
}

fn f64_det(m: &TruncatedMatrix<f64>, k: usize) -> f64 {
    let mut a: Vec<Vec<f64>> = (0..k).map(|i| (0..k).map(|j| *m.at(i, j)).collect()).collect();
    let mut det = 1.0;
    for col in 0..k {
        let pivot_row = (col..k)
            .max_by(|&r, &s| a[r][col].abs().partial_cmp(&a[s][col].abs()).unwrap())
            .unwrap();
        if a[pivot_row][col] == 0.0 {
            return 0.0;
        }
        if pivot_row != col {
            a.swap(pivot_row, col);
            det = -det;
        }
        det *= a[col][col];
        for r in (col + 1)..k {
            let f = a[r][col] / a[col][col];
            for c in col..k {
                a[r][c] -= f * a[col][c];
            }
        }
    }
    det
}

/// Fraction-free elimination with row pivoting; consumes the rows.
fn bareiss_determinant(rows: &mut [Vec<BigInt>]) -> BigInt {
    let k = rows.len();
    if k == 0 {
        return BigInt::one();
    }
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for col in 0..k {
        if rows[col][col].is_zero() {
            match (col + 1..k).find(|&r| !rows[r][col].is_zero()) {
                Some(r) => {
                    rows.swap(col, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for r in (col + 1)..k {
            for c in (col + 1)..k {
                let num = &rows[col][col] * &rows[r][c] - &rows[r][col] * &rows[col][c];
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "fraction-free elimination divided inexactly");
                rows[r][c] = q;
            }
            rows[r][col] = BigInt::zero();
        }
        prev = rows[col][col].clone();
    }
    let det = rows[k - 1][k - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

/// Diagonal matrix with entries `(k + i)! / i!`; the identity for `k = 0`.
pub fn d_matrix(k: usize, n: usize) -> TruncatedMatrix<ExactScalar> {
    let mut m = TruncatedMatrix::zeros(n);
    for i in 0..n {
        m.set(i, i, ExactScalar::shift_factor(k, i));
    }
    m
}

/// A Hankel matrix represented by its moment sequence `r_0, r_1, ...`;
/// the `(i,j)` entry of the matrix is `r_{i+j}`.
#[derive(Clone, Debug, PartialEq)]
pub struct HankelSeq {
    moments: Vec<ExactScalar>,
}

impl HankelSeq {
    pub fn new(moments: Vec<ExactScalar>) -> Self {
        HankelSeq { moments }
    }

    pub fn from_ints(moments: &[i64]) -> Self {
        HankelSeq::new(moments.iter().map(|&m| m.into()).collect())
    }

    /// The all-zero sequence standing in for the zero Hankel matrix.
    pub fn zero(len: usize) -> Self {
        HankelSeq::new(vec![ExactScalar::zero(); len])
    }

    pub fn moments(&self) -> &[ExactScalar] {
        &self.moments
    }

    pub fn moment(&self, k: usize) -> Result<&ExactScalar> {
        self.moments.get(k).ok_or(Error::InsufficientMoments {
            needed: k + 1,
            available: self.moments.len(),
        })
    }

    pub fn len(&self) -> usize {
        self.moments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moments.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.moments.iter().all(|m| m.is_zero())
    }

    /// Largest `n` for which [`HankelSeq::truncation`] succeeds.
    pub fn max_truncation(&self) -> usize {
        self.moments.len().div_ceil(2)
    }

    /// The `n × n` truncation; needs `2n - 1` moments.
    pub fn truncation(&self, n: usize) -> Result<TruncatedMatrix<ExactScalar>> {
        if n == 0 {
            return Err(Error::InvalidInput("empty truncation".into()));
        }
        if self.moments.len() < 2 * n - 1 {
            return Err(Error::InsufficientMoments {
                needed: 2 * n - 1,
                available: self.moments.len(),
            });
        }
        Ok(TruncatedMatrix::from_fn(n, |i, j| {
            self.moments[i + j].clone()
        }))
    }
}

/// Truncation of a lower Hessenberg matrix: zero above the first
/// superdiagonal.
#[derive(Clone, PartialEq)]
pub struct HessenbergTrunc<S = ExactScalar> {
    base: TruncatedMatrix<S>,
}

impl<S: Coeff> HessenbergTrunc<S> {
    /// Validates the zero pattern above the superdiagonal on the window.
    pub fn new(base: TruncatedMatrix<S>) -> Result<Self> {
        for i in 0..base.window() {
            for j in (i + 2)..base.window() {
                if !base.at(i, j).is_zero() {
                    return Err(Error::NotHessenberg { i, j });
                }
            }
        }
        Ok(HessenbergTrunc { base })
    }

    /// The truncated upper shift matrix `U` (superdiagonal of ones).
    pub fn upper_shift(n: usize) -> Self {
        let mut base = TruncatedMatrix::zeros(n);
        for i in 0..n - 1 {
            base.set(i, i + 1, S::one());
        }
        HessenbergTrunc { base }
    }

    pub fn base(&self) -> &TruncatedMatrix<S> {
        &self.base
    }

    pub fn window(&self) -> usize {
        self.base.window()
    }

    pub fn at(&self, i: usize, j: usize) -> &S {
        self.base.at(i, j)
    }

    pub fn superdiagonal(&self, i: usize) -> &S {
        self.base.at(i, i + 1)
    }

    /// Every superdiagonal entry inside the window is nonzero.
    pub fn is_non_degenerate(&self) -> bool {
        (0..self.window().saturating_sub(1)).all(|i| !self.superdiagonal(i).is_zero())
    }

    /// Index of the first zero superdiagonal entry, if any.
    pub fn first_degenerate_row(&self) -> Option<usize> {
        (0..self.window().saturating_sub(1)).find(|&i| self.superdiagonal(i).is_zero())
    }
}

impl HessenbergTrunc<ExactScalar> {
    pub fn to_f64(&self) -> HessenbergTrunc<f64> {
        HessenbergTrunc {
            base: self.base.to_f64(),
        }
    }
}

impl<S: std::fmt::Debug> std::fmt::Debug for TruncatedMatrix<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "TruncatedMatrix(n={}, window={})", self.n, self.window)?;
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| format!("{:?}", self.at(i, j))).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl<S: std::fmt::Debug> std::fmt::Debug for HessenbergTrunc<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Hessenberg{:?}", self.base)
    }
}
