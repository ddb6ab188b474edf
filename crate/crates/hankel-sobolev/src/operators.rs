//! The Φ and Ψ matrix operators.
//!
//! `phi(A, η)` forms the alternating binomial combination of shift conjugates
//! `Σ_{ℓ=0..η} (-1)^ℓ C(η,ℓ) U^{η-ℓ} A U^{-ℓ}`; a matrix is Hankel on its
//! window exactly when `phi(A, 1)` vanishes, and vanishing at odd level
//! `2d + 1` characterizes Hankel-Sobolev structure of index `d`.
//!
//! `psi(B, η)` is the Hessenberg-side counterpart
//! `Σ_{k=0..η} (-1)^k C(η,k) B^k (B^{η-k})^T`, connected to `phi` through the
//! coefficient matrix of the generated polynomials by
//! `psi(G, η) = (-1)^η T phi(M_G, η) T^T`.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::{Coeff, HessenbergTrunc, TruncatedMatrix};
use crate::scalar::ExactScalar;

/// Result of a window-consuming operator application.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorResult<S = ExactScalar> {
    pub value: TruncatedMatrix<S>,
    /// Window shrinkage: `value.window() == input.window() - consumed`.
    pub consumed: usize,
}

fn binom<S: Coeff>(n: usize, k: usize) -> S {
    let b = ExactScalar::binomial(n, k);
    // Binomials at the window sizes in play always fit u64.
    S::from_u64(
        b.numer()
            .try_into()
            .expect("binomial coefficient exceeds u64"),
    )
    .expect("coefficient ring admits small integers")
}

/// Applies Φ(·, η); consumes `η` of window.
///
/// Entry `(i, j)` of the result is `Σ_ℓ (-1)^ℓ C(η,ℓ) a[i+η-ℓ][j+ℓ]`.
pub fn phi<S: Coeff>(a: &TruncatedMatrix<S>, eta: usize) -> Result<OperatorResult<S>> {
    if eta >= a.window() {
        return Err(Error::WindowExhausted(format!(
            "phi at level {eta} needs window > {eta}, have {}",
            a.window()
        )));
    }
    let w = a.window() - eta;
    let mut value: TruncatedMatrix<S> = TruncatedMatrix::zeros(w);
    for i in 0..w {
        for j in 0..w {
            let mut acc = S::zero();
            for l in 0..=eta {
                let term = binom::<S>(eta, l) * a.at(i + eta - l, j + l).clone();
                acc = if l % 2 == 0 { acc + term } else { acc - term };
            }
            value.set(i, j, acc);
        }
    }
    Ok(OperatorResult { value, consumed: eta })
}

/// Applies Ψ(·, η) to a lower Hessenberg truncation; consumes `η` of window.
///
/// Powers are built incrementally; since row `i` of `B^k` is supported on
/// columns `m <= i + k`, every entry of the result block is exact even though
/// the powers' trailing rows are not.
pub fn psi<S: Coeff>(g: &HessenbergTrunc<S>, eta: usize) -> Result<OperatorResult<S>> {
    let w = g.window();
    if eta >= w {
        return Err(Error::WindowExhausted(format!(
            "psi at level {eta} needs window > {eta}, have {w}"
        )));
    }
    // powers[k] = B^k on the w-truncation; rows i < w - k are exact.
    let mut powers: Vec<TruncatedMatrix<S>> = Vec::with_capacity(eta + 1);
    powers.push(TruncatedMatrix::identity(w));
    for _ in 0..eta {
        let prev = powers.last().unwrap();
        let next = g.base().mat_mul(prev)?;
        powers.push(next);
    }

    let out_w = w - eta;
    let mut value: TruncatedMatrix<S> = TruncatedMatrix::zeros(out_w);
    for k in 0..=eta {
        let b_k = &powers[k];
        let b_rest = &powers[eta - k];
        let c = binom::<S>(eta, k);
        for i in 0..out_w {
            for j in 0..out_w {
                // (B^k (B^{η-k})^T)_{i,j} = Σ_m (B^k)_{i,m} (B^{η-k})_{j,m};
                // the sum stops at min(i+k, j+η-k) by the band structure.
                let top = (i + k).min(j + eta - k).min(w - 1);
                let mut acc = S::zero();
                for m in 0..=top {
                    if b_k.at(i, m).is_zero() {
                        continue;
                    }
                    acc = acc + b_k.at(i, m).clone() * b_rest.at(j, m).clone();
                }
                let term = c.clone() * acc;
                let cur = value.at(i, j).clone();
                value.set(i, j, if k % 2 == 0 { cur + term } else { cur - term });
            }
        }
    }
    Ok(OperatorResult { value, consumed: eta })
}

/// Alternating binomial sum `Σ_{ℓ=0..ν} (-1)^ℓ C(ν,ℓ) f(ℓ)` for the polynomial
/// with coefficients `coeffs` (ascending powers), evaluated exactly.
///
/// Vanishes when `deg f < ν` and equals `(-1)^ν ν! a_ν` when `deg f = ν`.
pub fn euler_finite_difference(coeffs: &[ExactScalar], nu: usize) -> ExactScalar {
    let mut acc = ExactScalar::zero();
    for l in 0..=nu {
        let x = ExactScalar::from_int(l as i64);
        let term = ExactScalar::binomial(nu, l) * crate::poly::eval(coeffs, &x);
        acc = if l % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}
