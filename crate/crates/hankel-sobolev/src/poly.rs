//! Small helpers for polynomials in the monomial basis (ascending powers).

use crate::scalar::ExactScalar;
use num_traits::Zero;

/// Horner evaluation.
pub fn eval(coeffs: &[ExactScalar], x: &ExactScalar) -> ExactScalar {
    let mut acc = ExactScalar::zero();
    for c in coeffs.iter().rev() {
        acc = acc * x.clone() + c.clone();
    }
    acc
}

/// Coefficients of the derivative.
pub fn derivative(coeffs: &[ExactScalar]) -> Vec<ExactScalar> {
    if coeffs.len() <= 1 {
        return vec![];
    }
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| ExactScalar::from_int(k as i64) * c.clone())
        .collect()
}

/// Index of the highest nonzero coefficient, if any.
pub fn degree(coeffs: &[ExactScalar]) -> Option<usize> {
    coeffs.iter().rposition(|c| !c.is_zero())
}

/// Drops trailing zero coefficients.
pub fn trimmed(coeffs: &[ExactScalar]) -> &[ExactScalar] {
    match degree(coeffs) {
        Some(d) => &coeffs[..=d],
        None => &[],
    }
}
