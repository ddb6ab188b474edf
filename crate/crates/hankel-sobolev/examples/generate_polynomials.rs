//! Generate polynomial sequences from Hessenberg matrices and inspect their
//! coefficient rows.
//!
//! ```bash
//! cargo run -p hankel-sobolev --example generate_polynomials
//! ```

use hankel_sobolev::hessenberg::{generate_polynomials, inner_product, moment_matrix};
use hankel_sobolev::matrix::{HessenbergTrunc, TruncatedMatrix};
use hankel_sobolev::scalar::ExactScalar;
use num_traits::Zero;

fn show(name: &str, seq: &hankel_sobolev::hessenberg::PolySequence<ExactScalar>, upto: usize) {
    println!("{name}:");
    for n in 0..upto {
        let coeffs: Vec<String> = seq.coefficients(n).iter().map(|c| c.to_string()).collect();
        println!("  Q_{n} = [{}]", coeffs.join(", "));
    }
}

fn main() {
    // The upper shift generates the monomials.
    let shift = HessenbergTrunc::<ExactScalar>::upper_shift(6);
    let monomials = generate_polynomials(&shift, ExactScalar::from_int(1)).unwrap();
    show("upper shift", &monomials, 4);

    // A zero-diagonal tridiagonal with unit off-diagonals.
    let tridiagonal = HessenbergTrunc::new(TruncatedMatrix::from_fn(6, |i, j| {
        if i.abs_diff(j) == 1 {
            ExactScalar::from_int(1)
        } else {
            ExactScalar::zero()
        }
    }))
    .unwrap();
    let seq = generate_polynomials(&tridiagonal, ExactScalar::from_int(1)).unwrap();
    show("unit tridiagonal", &seq, 5);

    // The generated sequence is orthonormal under its own moment matrix.
    let m = moment_matrix(&tridiagonal, ExactScalar::from_int(1)).unwrap();
    let q2 = seq.coefficients(2);
    let q3 = seq.coefficients(3);
    println!(
        "<Q_2, Q_2> = {}, <Q_2, Q_3> = {}",
        inner_product(&q2, &q2, &m).unwrap(),
        inner_product(&q2, &q3, &m).unwrap()
    );
}
