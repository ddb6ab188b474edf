//! A matrix is Hankel on its window exactly when the level-1 shift
//! difference annihilates it.
//!
//! ```bash
//! cargo run -p hankel-sobolev --example hankel_detection
//! ```

use hankel_sobolev::matrix::HankelSeq;
use hankel_sobolev::operators::phi;
use hankel_sobolev::scalar::ExactScalar;

fn main() {
    // Moments of the uniform measure on [0, 1]: the Hilbert matrix.
    let moments: Vec<ExactScalar> = (0..9).map(|n| ExactScalar::ratio(1, n + 1)).collect();
    let hankel = HankelSeq::new(moments).truncation(5).unwrap();

    let level1 = phi(&hankel, 1).unwrap();
    println!(
        "phi(Hilbert, 1) is zero on its {}x{} window: {}",
        level1.value.window(),
        level1.value.window(),
        level1.value.is_zero_matrix()
    );

    // Breaking one anti-diagonal breaks the certificate.
    let mut broken = hankel.clone();
    broken.set(0, 2, ExactScalar::from_int(7));
    broken.set(2, 0, ExactScalar::from_int(7));
    let witness = phi(&broken, 1).unwrap().value;
    println!(
        "after perturbing one anti-diagonal, phi(·,1) has a nonzero entry at {:?}",
        witness.first_nonzero().unwrap()
    );
}
