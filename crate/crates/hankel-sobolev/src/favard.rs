//! Favard-type verdicts on finite truncations.
//!
//! A verdict combines index detection with the per-level Hamburger
//! classification of the decomposed layers:
//!
//! * **Classical** — index 0 with a positive definite layer: a non-discrete
//!   positive measure represents the inner product (the d = 0 theorem).
//! * **Continuous** — every layer positive definite: a vector of
//!   infinite-support measures exists.
//! * **Discrete** — layer 0 positive definite, layers 1..d of finite order:
//!   derivative levels are finitely supported.
//! * **DiscreteContinuous** — top layer positive definite, layers below of
//!   finite order.
//! * **MixedOther** — all layers are valid moment sequences but the pattern
//!   matches none of the named cases.
//! * **NoRepresentationWithinWindow** — no finite index was detected on the
//!   window, or some layer is provably not a moment sequence.
//!
//! Zero layers (lacunary products) are permitted inside the Continuous and
//! Discrete patterns below the top layer only; the top layer is nonzero by
//! definition of the index. Everything is window-qualified: these are
//! statements about the examined truncation, not proofs about the infinite
//! matrix.

use crate::decomposition::{
    decompose, decompose_f64, detect_index, detect_index_f64, Detected, IndexReport,
};
use crate::error::{Error, Result};
use crate::hessenberg::{moment_matrix, moment_matrix_f64};
use crate::matrix::{HessenbergTrunc, TruncatedMatrix};
use crate::measures::{classify_hankel, classify_hankel_f64, HankelClass};
use crate::scalar::{ExactScalar, Tolerance};

/// The matched case of the verdict table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FavardCase {
    Classical,
    Continuous,
    Discrete,
    DiscreteContinuous,
    MixedOther,
    NoRepresentationWithinWindow,
}

impl FavardCase {
    /// Name of the theorem family the case instantiates, if any.
    pub fn theorem(&self) -> Option<&'static str> {
        match self {
            FavardCase::Classical => Some("classical Favard (symmetric tridiagonal)"),
            FavardCase::Continuous => Some("Favard type, continuous case"),
            FavardCase::Discrete => Some("Favard type, discrete case"),
            FavardCase::DiscreteContinuous => Some("Favard type, discrete-continuous case"),
            FavardCase::MixedOther | FavardCase::NoRepresentationWithinWindow => None,
        }
    }
}

/// Window-qualified Favard verdict.
#[derive(Clone, Debug, PartialEq)]
pub struct FavardVerdict {
    pub index: IndexReport,
    /// Classification of layers `H_0 ..= H_d`; empty when no index was found.
    pub level_classes: Vec<HankelClass>,
    pub case: FavardCase,
    /// Window of the input truncation the verdict examined.
    pub window: usize,
}

fn match_case(classes: &[HankelClass]) -> FavardCase {
    if classes
        .iter()
        .any(|c| matches!(c, HankelClass::NotMomentMatrix { .. }))
    {
        return FavardCase::NoRepresentationWithinWindow;
    }
    let d = classes.len() - 1;
    let top = &classes[d];
    let below = &classes[..d];
    let positive = |c: &HankelClass| matches!(c, HankelClass::PositiveDefiniteUpTo(_));
    let finite = |c: &HankelClass| matches!(c, HankelClass::FiniteOrder(_));
    let zero = |c: &HankelClass| matches!(c, HankelClass::Zero);

    if d == 0 && positive(top) {
        FavardCase::Classical
    } else if positive(top) && below.iter().all(|c| positive(c) || zero(c)) {
        FavardCase::Continuous
    } else if finite(top)
        && positive(&classes[0])
        && below[1..].iter().all(|c| finite(c) || zero(c))
    {
        FavardCase::Discrete
    } else if positive(top) && below.iter().all(finite) {
        FavardCase::DiscreteContinuous
    } else {
        FavardCase::MixedOther
    }
}

/// Runs detection, decomposition, and per-layer classification on a
/// symmetric truncation.
pub fn verdict_from_moment_matrix(
    m: &TruncatedMatrix<ExactScalar>,
    d_max: usize,
) -> Result<FavardVerdict> {
    if m.window() < 2 * d_max + 3 {
        return Err(Error::WindowExhausted(format!(
            "verdict up to d_max={d_max} needs window >= {}, have {}",
            2 * d_max + 3,
            m.window()
        )));
    }
    let index = detect_index(m, d_max)?;
    let d = match index.detected {
        Detected::InfiniteWithinWindow => {
            return Ok(FavardVerdict {
                index,
                level_classes: vec![],
                case: FavardCase::NoRepresentationWithinWindow,
                window: m.window(),
            });
        }
        Detected::Index(d) => d,
    };
    let layers = decompose(m, d)?;
    let mut classes = Vec::with_capacity(d + 1);
    for layer in layers.layers() {
        if layer.is_zero() {
            classes.push(HankelClass::Zero);
        } else {
            classes.push(classify_hankel(layer, layer.max_truncation())?);
        }
    }
    let case = match_case(&classes);
    Ok(FavardVerdict {
        index,
        level_classes: classes,
        case,
        window: m.window(),
    })
}

/// Floating-point verdict with tolerance-scaled zero tests.
pub fn verdict_from_moment_matrix_f64(
    m: &TruncatedMatrix<f64>,
    d_max: usize,
    tol: Tolerance,
) -> Result<FavardVerdict> {
    if m.window() < 2 * d_max + 3 {
        return Err(Error::WindowExhausted(format!(
            "verdict up to d_max={d_max} needs window >= {}, have {}",
            2 * d_max + 3,
            m.window()
        )));
    }
    let index = detect_index_f64(m, d_max, tol)?;
    let d = match index.detected {
        Detected::InfiniteWithinWindow => {
            return Ok(FavardVerdict {
                index,
                level_classes: vec![],
                case: FavardCase::NoRepresentationWithinWindow,
                window: m.window(),
            });
        }
        Detected::Index(d) => d,
    };
    let layers = decompose_f64(m, d, tol)?;
    let mut classes = Vec::with_capacity(d + 1);
    for moments in &layers.layers {
        let n = moments.len().div_ceil(2);
        classes.push(classify_hankel_f64(moments, n, tol)?);
    }
    let case = match_case(&classes);
    Ok(FavardVerdict {
        index,
        level_classes: classes,
        case,
        window: m.window(),
    })
}

/// Verdict for the inner product represented by a non-degenerate Hessenberg
/// truncation, via its exact matrix of formal moments.
///
/// The verdict is invariant under the `t00 > 0` normalization (scaling `T`
/// scales `M_G` by a positive square), so the default `t00 = 1` is used.
pub fn verdict_from_hessenberg(
    g: &HessenbergTrunc<ExactScalar>,
    d_max: usize,
) -> Result<FavardVerdict> {
    if let Some(row) = g.first_degenerate_row() {
        return Err(Error::DegenerateSuperdiagonal(row));
    }
    let m = moment_matrix(g, ExactScalar::from_int(1))?;
    verdict_from_moment_matrix(m.matrix(), d_max)
}

/// Floating-point Hessenberg verdict (for orthonormal-normalized inputs such
/// as reconstructed or measured recurrence data).
pub fn verdict_from_hessenberg_f64(
    g: &HessenbergTrunc<f64>,
    d_max: usize,
    tol: Tolerance,
) -> Result<FavardVerdict> {
    if let Some(row) = g.first_degenerate_row() {
        return Err(Error::DegenerateSuperdiagonal(row));
    }
    let m = moment_matrix_f64(g, 1.0)?;
    verdict_from_moment_matrix_f64(&m, d_max, tol)
}
