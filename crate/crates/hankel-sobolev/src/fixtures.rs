//! Bundled example inputs.
//!
//! These are the worked inputs the documentation, examples, and acceptance
//! suite share: the monomial (upper shift) Hessenberg matrix, the Hilbert
//! moment sequence, the two-level uniform Sobolev vector, and a discrete
//! two-atom sequence. `hankel-sobolev fixtures --dir <DIR>` writes them as
//! files.

use crate::decomposition::{compose, HankelLayers};
use crate::error::Result;
use crate::io;
use crate::matrix::{HankelSeq, HessenbergTrunc, TruncatedMatrix};
use crate::measures::{measure_moments, MeasureSpec, MeasureVector};
use crate::scalar::ExactScalar;

/// The upper shift truncation that generates the monomials; window 13.
pub fn monomial_hessenberg() -> HessenbergTrunc<ExactScalar> {
    HessenbergTrunc::upper_shift(13)
}

/// Moments `1/(n+1)` of the uniform measure on [0, 1]; 23 entries (window 12).
pub fn hilbert_hankel() -> HankelSeq {
    HankelSeq::new((0..23).map(|n| ExactScalar::ratio(1, n + 1)).collect())
}

/// The 12 × 12 identity truncation.
pub fn identity12() -> TruncatedMatrix<ExactScalar> {
    TruncatedMatrix::identity(12)
}

/// Uniform measure of mass 2 on [-1, 1].
pub fn uniform_symmetric() -> MeasureSpec {
    MeasureSpec::uniform(
        ExactScalar::from_int(-1),
        ExactScalar::from_int(1),
        ExactScalar::from_int(2),
    )
    .expect("valid interval")
}

/// Measure vector (uniform[-1,1], uniform[-1,1]): the index-1 fixture.
pub fn sobolev_uniform_d1_measures() -> MeasureVector {
    MeasureVector::new(vec![uniform_symmetric(), uniform_symmetric()]).expect("nonempty")
}

/// The 11 × 11 Sobolev moment matrix of the index-1 fixture.
pub fn sobolev_uniform_d1_matrix() -> TruncatedMatrix<ExactScalar> {
    let n = 11;
    let layers = HankelLayers::new(
        sobolev_uniform_d1_measures()
            .levels()
            .iter()
            .enumerate()
            .map(|(k, mu)| {
                HankelSeq::new(measure_moments(mu, 2 * (n - 1) - 2 * k).expect("closed form"))
            })
            .collect(),
    )
    .expect("nonzero top layer");
    compose(&layers, n).expect("moments suffice")
}

/// Measure vector (uniform[-1,1], point mass at 0): the discrete-case fixture.
pub fn sobolev_uniform_delta0_measures() -> MeasureVector {
    let delta = MeasureSpec::discrete(
        vec![ExactScalar::from_int(0)],
        vec![ExactScalar::from_int(1)],
    )
    .expect("valid point mass");
    MeasureVector::new(vec![uniform_symmetric(), delta]).expect("nonempty")
}

/// Moments of unit masses at ±1: `2, 0, 2, 0, ...`; 11 entries.
pub fn two_atom_hankel() -> HankelSeq {
    HankelSeq::new(
        (0..11)
            .map(|n| ExactScalar::from_int(if n % 2 == 0 { 2 } else { 0 }))
            .collect(),
    )
}

/// All bundled fixtures as `(file name, JSON contents)` pairs.
pub fn all() -> Vec<(&'static str, String)> {
    vec![
        ("monomial.json", io::hessenberg_band_json(&monomial_hessenberg())),
        ("hilbert.json", io::hankel_json(&hilbert_hankel())),
        ("identity12.json", io::matrix_json(&identity12())),
        ("sob_uniform_d1.json", io::matrix_json(&sobolev_uniform_d1_matrix())),
        (
            "sob_uniform_d1_measures.json",
            io::measures_json(&sobolev_uniform_d1_measures()),
        ),
        (
            "sob_uniform_delta0_measures.json",
            io::measures_json(&sobolev_uniform_delta0_measures()),
        ),
        ("hankel_two_atoms.json", io::hankel_json(&two_atom_hankel())),
    ]
}

/// Writes every fixture into `dir`, returning the written paths.
pub fn write_all(dir: &std::path::Path) -> Result<Vec<std::path::PathBuf>> {
    std::fs::create_dir_all(dir)
        .map_err(|e| crate::error::Error::InvalidInput(format!("cannot create {dir:?}: {e}")))?;
    let mut written = Vec::new();
    for (name, contents) in all() {
        let path = dir.join(name);
        std::fs::write(&path, contents)
            .map_err(|e| crate::error::Error::InvalidInput(format!("cannot write {path:?}: {e}")))?;
        written.push(path);
    }
    Ok(written)
}
