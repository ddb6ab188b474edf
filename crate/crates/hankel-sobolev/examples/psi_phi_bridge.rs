//! The two operators agree through the coefficient matrix:
//! `psi(G, eta) = (-1)^eta · T · phi(M_G, eta) · T^T`, exactly in rational
//! arithmetic.
//!
//! ```bash
//! cargo run -p hankel-sobolev --example psi_phi_bridge
//! ```

use hankel_sobolev::hessenberg::{generate_polynomials, moment_matrix};
use hankel_sobolev::matrix::{HessenbergTrunc, TruncatedMatrix};
use hankel_sobolev::operators::{phi, psi};
use hankel_sobolev::scalar::ExactScalar;
use num_traits::Zero;

fn main() {
    // A non-degenerate Hessenberg matrix with a dense lower band.
    let g = HessenbergTrunc::new(TruncatedMatrix::from_fn(8, |i, j| {
        if j == i + 1 {
            ExactScalar::from_int(1)
        } else if j <= i {
            ExactScalar::ratio((i + 2 * j) as i64 % 3 - 1, 2)
        } else {
            ExactScalar::zero()
        }
    }))
    .unwrap();

    let seq = generate_polynomials(&g, ExactScalar::from_int(1)).unwrap();
    let t = seq.coefficient_matrix();
    let m = moment_matrix(&g, ExactScalar::from_int(1)).unwrap();

    for eta in 0..=3usize {
        let lhs = psi(&g, eta).unwrap().value;
        let phi_m = phi(m.matrix(), eta).unwrap().value;
        let mut rhs = t.mat_mul(&phi_m).unwrap().mat_mul(&t.transpose()).unwrap();
        if eta % 2 == 1 {
            rhs = rhs.scale(&ExactScalar::from_int(-1));
        }
        println!(
            "eta = {eta}: psi(G,{eta}) == (-1)^{eta} T phi(M,{eta}) T^T on window {}: {}",
            lhs.window(),
            lhs == rhs
        );
    }

    // At eta = 1 the bridge is just the transpose difference.
    let skew = psi(&g, 1).unwrap().value;
    let direct = g.base().transpose().sub_matrix(g.base());
    println!(
        "psi(G,1) equals G^T - G on the common window: {}",
        (0..skew.window()).all(|i| (0..skew.window()).all(|j| skew.at(i, j) == direct.at(i, j)))
    );
}
