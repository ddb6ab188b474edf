//! Polynomial generation from Hessenberg matrices and the inverse pipeline
//! from positive definite moment matrices back to Hessenberg form.
//!
//! A non-degenerate lower Hessenberg truncation `G` generates a polynomial
//! sequence through `g_{n,n+1} Q_{n+1}(x) = x Q_n(x) - Σ_{k<=n} g_{n,k} Q_k(x)`
//! starting from `Q_0 = t00 > 0`. The rows of the coefficient matrix `T` hold
//! the `Q_n` in the monomial basis, and `M_G = T^{-1} T^{-T}` is the matrix of
//! formal moments: the Gram matrix of the monomials under the inner product
//! in which the `Q_n` are orthonormal.
//!
//! Two normalizations are first-class and must not be confused:
//!
//! * **monic** (exact): superdiagonal all ones, no square roots; produced by
//!   [`monic_hessenberg_from_moments`]. Ψ-based index detection does *not*
//!   apply to a monic `G` — `Ψ(G, 2d+1) = O` characterizes the index only
//!   when `M_G = T^{-1}T^{-T}` encodes orthonormality. The exact route to the
//!   index of a monic matrix is Φ on `moment_matrix(g)`.
//! * **orthonormal** (floating-point): `G` symmetric under the represented
//!   inner product, produced by [`orthonormal_hessenberg_from_moments`] via
//!   Cholesky; this is the normalization [`detect_psi_index_f64`] expects.

use std::ops::Div;

use num_traits::Zero;

use crate::decomposition::{Detected, IndexReport};
use crate::error::{Error, Result};
use crate::matrix::{Coeff, HessenbergTrunc, TruncatedMatrix};
use crate::operators::psi;
use crate::poly;
use crate::scalar::{ExactScalar, Tolerance};

/// Coefficient rows of a generated polynomial sequence.
///
/// Row `n` holds the coefficients of `Q_n` in ascending powers; the matrix is
/// lower triangular with `t_{n,n} = t00 / Π_{k<n} g_{k,k+1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolySequence<S = ExactScalar> {
    t: TruncatedMatrix<S>,
    t00: S,
}

impl<S: Coeff> PolySequence<S> {
    pub fn coefficient_matrix(&self) -> &TruncatedMatrix<S> {
        &self.t
    }

    pub fn t00(&self) -> &S {
        &self.t00
    }

    pub fn len(&self) -> usize {
        self.t.window()
    }

    pub fn is_empty(&self) -> bool {
        self.t.window() == 0
    }

    /// Coefficients of `Q_n`, ascending powers, length `n + 1`.
    pub fn coefficients(&self, n: usize) -> Vec<S> {
        (0..=n).map(|j| self.t.at(n, j).clone()).collect()
    }

    pub fn leading_coefficient(&self, n: usize) -> &S {
        self.t.at(n, n)
    }
}

/// Runs the generation recurrence on the window of `g`.
pub fn generate_polynomials<S>(g: &HessenbergTrunc<S>, t00: S) -> Result<PolySequence<S>>
where
    S: Coeff + Div<Output = S>,
{
    if t00.is_zero() {
        return Err(Error::InvalidInput("t00 must be nonzero".into()));
    }
    if let Some(row) = g.first_degenerate_row() {
        return Err(Error::DegenerateSuperdiagonal(row));
    }
    let w = g.window();
    let mut t: TruncatedMatrix<S> = TruncatedMatrix::zeros(w);
    t.set(0, 0, t00.clone());
    for n in 0..w - 1 {
        // x * Q_n shifts coefficients up one power.
        let mut next: Vec<S> = vec![S::zero(); n + 2];
        for j in 0..=n {
            next[j + 1] = t.at(n, j).clone();
        }
        for k in 0..=n {
            if g.at(n, k).is_zero() {
                continue;
            }
            for j in 0..=k {
                next[j] = next[j].clone() - g.at(n, k).clone() * t.at(k, j).clone();
            }
        }
        let lead = g.superdiagonal(n).clone();
        for (j, c) in next.into_iter().enumerate() {
            t.set(n + 1, j, c / lead.clone());
        }
    }
    Ok(PolySequence { t, t00 })
}

/// Symmetric positive definite matrix of formal moments.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentMatrix {
    m: TruncatedMatrix<ExactScalar>,
}

impl MomentMatrix {
    /// Wraps a symmetric truncation. Positive definiteness is certified later
    /// by the operations that need it ([`ldl`] reports the offending minor).
    pub fn new(m: TruncatedMatrix<ExactScalar>) -> Result<Self> {
        for i in 0..m.window() {
            for j in 0..i {
                if m.at(i, j) != m.at(j, i) {
                    return Err(Error::NotSymmetric { i, j });
                }
            }
        }
        Ok(MomentMatrix { m })
    }

    pub fn matrix(&self) -> &TruncatedMatrix<ExactScalar> {
        &self.m
    }

    pub fn window(&self) -> usize {
        self.m.window()
    }
}

/// `M_G = T^{-1} T^{-T}` for the polynomials generated by `g`.
///
/// Exact on the full window: both factors are triangular, so the truncated
/// products equal the infinite ones.
pub fn moment_matrix(g: &HessenbergTrunc<ExactScalar>, t00: ExactScalar) -> Result<MomentMatrix> {
    let t = generate_polynomials(g, t00)?;
    let t_inv = t.coefficient_matrix().lower_triangular_inverse()?;
    let m = t_inv.mat_mul(&t_inv.transpose())?;
    MomentMatrix::new(m)
}

/// Floating-point `M_G` for an orthonormal-normalized Hessenberg truncation.
pub fn moment_matrix_f64(
    g: &HessenbergTrunc<f64>,
    t00: f64,
) -> Result<TruncatedMatrix<f64>> {
    let t = generate_polynomials(g, t00)?;
    let t_inv = t.coefficient_matrix().lower_triangular_inverse()?;
    t_inv.mat_mul(&t_inv.transpose())
}

/// `<p, q> = a M b^T` for coefficient vectors in ascending powers.
pub fn inner_product(
    p: &[ExactScalar],
    q: &[ExactScalar],
    m: &MomentMatrix,
) -> Result<ExactScalar> {
    let p = poly::trimmed(p);
    let q = poly::trimmed(q);
    for v in [p, q] {
        if v.len() > m.window() {
            return Err(Error::DegreeTooLarge {
                degree: v.len() - 1,
                window: m.window(),
            });
        }
    }
    let mut acc = ExactScalar::zero();
    for (i, a) in p.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in q.iter().enumerate() {
            acc += a.clone() * m.matrix().at(i, j).clone() * b.clone();
        }
    }
    Ok(acc)
}

/// `M = L D L^T` with unit lower triangular `L` and positive diagonal.
///
/// The pivots are the squared norms of the monic orthogonal polynomials, and
/// equal ratios of consecutive leading principal minors.
#[derive(Clone, Debug, PartialEq)]
pub struct LdlFactorization {
    pub l: TruncatedMatrix<ExactScalar>,
    pub diag: Vec<ExactScalar>,
}

/// Exact square-root-free factorization; fails with the 1-based index of the
/// first non-positive pivot.
pub fn ldl(m: &MomentMatrix) -> Result<LdlFactorization> {
    let w = m.window();
    let mut l: TruncatedMatrix<ExactScalar> = TruncatedMatrix::identity(w);
    let mut diag: Vec<ExactScalar> = Vec::with_capacity(w);
    for j in 0..w {
        let mut d = m.matrix().at(j, j).clone();
        for k in 0..j {
            d -= l.at(j, k).clone() * l.at(j, k).clone() * diag[k].clone();
        }
        if !d.is_positive() {
            return Err(Error::NotPositiveDefinite(j + 1));
        }
        for i in (j + 1)..w {
            let mut v = m.matrix().at(i, j).clone();
            for k in 0..j {
                v -= l.at(i, k).clone() * l.at(j, k).clone() * diag[k].clone();
            }
            l.set(i, j, v / d.clone());
        }
        diag.push(d);
    }
    Ok(LdlFactorization { l, diag })
}

/// The multiply-by-x operator in the monic orthogonal basis, all rational.
///
/// With `C = L^{-1}` (monic coefficient rows) the matrix is
/// `G = C U M C^T D^{-1}`: superdiagonal all ones, window `m.window() - 1`.
/// Also returns the squared monic norms (the LDL pivots).
pub fn monic_hessenberg_from_moments(
    m: &MomentMatrix,
) -> Result<(HessenbergTrunc<ExactScalar>, Vec<ExactScalar>)> {
    let w = m.window();
    if w < 2 {
        return Err(Error::WindowExhausted(
            "monic reconstruction needs window >= 2".into(),
        ));
    }
    let fact = ldl(m)?;
    let c = fact.l.lower_triangular_inverse()?;
    let out_w = w - 1;
    let mut g: TruncatedMatrix<ExactScalar> = TruncatedMatrix::zeros(out_w);
    for i in 0..out_w {
        for j in 0..out_w {
            // <x q_i, q_j> = Σ_{a<=i, b<=j} c_{i,a} m_{a+1,b} c_{j,b}
            let mut acc = ExactScalar::zero();
            for a in 0..=i {
                if c.at(i, a).is_zero() {
                    continue;
                }
                for b in 0..=j {
                    acc += c.at(i, a).clone()
                            * m.matrix().at(a + 1, b).clone()
                            * c.at(j, b).clone();
                }
            }
            g.set(i, j, acc / fact.diag[j].clone());
        }
    }
    let g = HessenbergTrunc::new(g)?;
    debug_assert!(
        (0..out_w.saturating_sub(1)).all(|i| g.superdiagonal(i) == &ExactScalar::from_int(1)),
        "monic reconstruction must have a unit superdiagonal"
    );
    Ok((g, fact.diag))
}

/// Lower Cholesky factor `R` with `M = R R^T`, in `f64`.
pub fn cholesky_f64(m: &TruncatedMatrix<f64>) -> Result<TruncatedMatrix<f64>> {
    let w = m.window();
    let mut r: TruncatedMatrix<f64> = TruncatedMatrix::zeros(w);
    for j in 0..w {
        let mut d = *m.at(j, j);
        for k in 0..j {
            d -= r.at(j, k) * r.at(j, k);
        }
        if d <= 0.0 || !d.is_finite() {
            return Err(Error::NotPositiveDefinite(j + 1));
        }
        let sqrt = d.sqrt();
        r.set(j, j, sqrt);
        for i in (j + 1)..w {
            let mut v = *m.at(i, j);
            for k in 0..j {
                v -= r.at(i, k) * r.at(j, k);
            }
            r.set(i, j, v / sqrt);
        }
    }
    Ok(r)
}

/// Orthonormal reconstruction from a moment matrix (floating-point path).
#[derive(Clone, Debug)]
pub struct OrthonormalHessenberg {
    /// `G = T U M T^T`, symmetric under the represented inner product.
    pub g: HessenbergTrunc<f64>,
    /// Coefficient rows of the orthonormal polynomials: the inverse of the
    /// lower Cholesky factor, so `t00 = 1/sqrt(m_{0,0}) > 0`.
    pub t: TruncatedMatrix<f64>,
}

/// Reconstructs the orthonormal Hessenberg matrix `G = T U M T^T` of a
/// positive definite moment truncation; window shrinks by one.
///
/// Entries above the superdiagonal are structurally zero and are stored as
/// exact zeros (the float products leave rounding dust there).
pub fn orthonormal_hessenberg_from_moments(
    m: &TruncatedMatrix<f64>,
) -> Result<OrthonormalHessenberg> {
    let w = m.window();
    if w < 2 {
        return Err(Error::WindowExhausted(
            "orthonormal reconstruction needs window >= 2".into(),
        ));
    }
    let r = cholesky_f64(m)?;
    let t = r.lower_triangular_inverse()?;
    let shifted = m.shift_conjugate(1, 0)?; // (U M)_{a,b} = m_{a+1,b}
    let mut g = t.mat_mul(&shifted)?.mat_mul(&t.transpose())?;
    let out_w = g.window();
    for i in 0..out_w {
        for j in (i + 2)..out_w {
            g.set(i, j, 0.0);
        }
    }
    Ok(OrthonormalHessenberg {
        g: HessenbergTrunc::new(g)?,
        t,
    })
}

/// Smallest `d <= d_max` with `psi(g, 2d+1) = O` and `psi(g, 2d) != O`,
/// exactly.
///
/// Meaningful when `g` is orthonormal-normalized (e.g. symmetric tridiagonal
/// truncations, the upper shift); for monic reconstructions use
/// [`crate::decomposition::detect_index`] on [`moment_matrix`] instead.
pub fn detect_psi_index(g: &HessenbergTrunc<ExactScalar>, d_max: usize) -> Result<IndexReport> {
    detect_psi_with(g, d_max, |value| value.first_nonzero())
}

/// Floating-point Ψ-index detection with tolerance-scaled zero tests.
pub fn detect_psi_index_f64(
    g: &HessenbergTrunc<f64>,
    d_max: usize,
    tol: Tolerance,
) -> Result<IndexReport> {
    let scale = g.base().max_abs();
    detect_psi_with(g, d_max, move |value| {
        for i in 0..value.window() {
            for j in 0..value.window() {
                if !tol.is_zero(*value.at(i, j), scale) {
                    return Some((i, j));
                }
            }
        }
        None
    })
}

fn detect_psi_with<S: Coeff>(
    g: &HessenbergTrunc<S>,
    d_max: usize,
    nonzero_witness: impl Fn(&TruncatedMatrix<S>) -> Option<(usize, usize)>,
) -> Result<IndexReport> {
    if 2 * d_max + 1 >= g.window() {
        return Err(Error::WindowExhausted(format!(
            "detection up to d_max={d_max} needs window > {}, have {}",
            2 * d_max + 1,
            g.window()
        )));
    }
    for d in 0..=d_max {
        let odd = psi(g, 2 * d + 1)?;
        if nonzero_witness(&odd.value).is_none() {
            let even = psi(g, 2 * d)?;
            let witness = nonzero_witness(&even.value);
            if witness.is_some() {
                return Ok(IndexReport {
                    detected: Detected::Index(d),
                    window_used: g.window() - (2 * d + 1),
                    witness,
                });
            }
            break;
        }
    }
    Ok(IndexReport {
        detected: Detected::InfiniteWithinWindow,
        window_used: g.window() - (2 * d_max + 1),
        witness: None,
    })
}
