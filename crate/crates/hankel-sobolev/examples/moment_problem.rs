//! Classify Hankel moment sequences and recover discrete measures from the
//! finite-order case.
//!
//! ```bash
//! cargo run -p hankel-sobolev --example moment_problem
//! ```

use hankel_sobolev::matrix::HankelSeq;
use hankel_sobolev::measures::{
    classify_hankel, measure_moments, recover_discrete_measure, MeasureSpec,
};
use hankel_sobolev::scalar::ExactScalar;

fn main() {
    // Three atoms with distinct weights.
    let mu = MeasureSpec::discrete(
        vec![
            ExactScalar::ratio(-3, 2),
            ExactScalar::ratio(1, 4),
            ExactScalar::from_int(2),
        ],
        vec![
            ExactScalar::from_int(1),
            ExactScalar::ratio(5, 2),
            ExactScalar::ratio(1, 3),
        ],
    )
    .unwrap();
    let h = HankelSeq::new(measure_moments(&mu, 8).unwrap());

    println!("classification: {:?}", classify_hankel(&h, 5).unwrap());

    let rec = recover_discrete_measure(&h, 3).unwrap();
    for (atom, weight) in rec.atoms.iter().zip(&rec.weights) {
        println!("atom {atom:+.12} with weight {weight:.12}");
    }

    // An infinite-support measure never reaches finite order.
    let uniform = MeasureSpec::uniform(
        ExactScalar::from_int(0),
        ExactScalar::from_int(1),
        ExactScalar::from_int(1),
    )
    .unwrap();
    let h = HankelSeq::new(measure_moments(&uniform, 14).unwrap());
    println!("uniform[0,1]: {:?}", classify_hankel(&h, 7).unwrap());
}
