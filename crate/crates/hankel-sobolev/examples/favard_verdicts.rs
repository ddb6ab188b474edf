//! One verdict per case: classical, continuous, discrete,
//! discrete-continuous, and the monomial matrix with no representing measure.
//!
//! ```bash
//! cargo run -p hankel-sobolev --example favard_verdicts
//! ```

use hankel_sobolev::favard::{verdict_from_hessenberg, verdict_from_moment_matrix};
use hankel_sobolev::matrix::{HessenbergTrunc, TruncatedMatrix};
use hankel_sobolev::measures::{sobolev_moment_matrix, MeasureSpec, MeasureVector};
use hankel_sobolev::scalar::ExactScalar;

fn uniform() -> MeasureSpec {
    MeasureSpec::uniform(
        ExactScalar::from_int(-1),
        ExactScalar::from_int(1),
        ExactScalar::from_int(2),
    )
    .unwrap()
}

fn delta0() -> MeasureSpec {
    MeasureSpec::discrete(vec![ExactScalar::from_int(0)], vec![ExactScalar::from_int(1)]).unwrap()
}

fn check(name: &str, levels: Vec<MeasureSpec>) {
    let m = sobolev_moment_matrix(&MeasureVector::new(levels).unwrap(), 11).unwrap();
    let v = verdict_from_moment_matrix(&m, 4).unwrap();
    println!(
        "{name}: {:?} (index {:?}, window {})",
        v.case,
        v.index.index(),
        v.window
    );
    for (k, class) in v.level_classes.iter().enumerate() {
        println!("  level {k}: {class:?}");
    }
}

fn main() {
    check("single uniform level", vec![uniform()]);
    check("uniform + uniform", vec![uniform(), uniform()]);
    check("uniform + point mass", vec![uniform(), delta0()]);
    check("point mass + uniform", vec![delta0(), uniform()]);

    // The upper shift generates the monomials; its formal moments are the
    // identity matrix, which no measure vector can represent.
    let g = HessenbergTrunc::<ExactScalar>::upper_shift(13);
    let v = verdict_from_hessenberg(&g, 5).unwrap();
    println!("monomial Hessenberg: {:?}", v.case);
    let id = TruncatedMatrix::<ExactScalar>::identity(13);
    let v = verdict_from_moment_matrix(&id, 5).unwrap();
    println!("identity moment matrix: {:?}", v.case);
}
