//! Build the moment matrix of a Sobolev inner product
//! `<f, g> = ∫ f g dμ_0 + ∫ f' g' dμ_1` and detect its layered structure.
//!
//! ```bash
//! cargo run -p hankel-sobolev --example sobolev_moment_matrix
//! ```

use hankel_sobolev::decomposition::detect_index;
use hankel_sobolev::measures::{sobolev_moment_matrix, MeasureSpec, MeasureVector};
use hankel_sobolev::scalar::ExactScalar;

fn main() {
    let uniform = MeasureSpec::uniform(
        ExactScalar::from_int(-1),
        ExactScalar::from_int(1),
        ExactScalar::from_int(2),
    )
    .unwrap();
    let mus = MeasureVector::new(vec![uniform.clone(), uniform]).unwrap();

    let s = sobolev_moment_matrix(&mus, 6).unwrap();
    println!("Sobolev moment matrix of (uniform[-1,1], uniform[-1,1]), 6x6:");
    for i in 0..6 {
        let row: Vec<String> = (0..6).map(|j| s.at(i, j).to_string()).collect();
        println!("  [{}]", row.join(", "));
    }
    // s_{1,1} = ∫ x·x dμ_0 + ∫ 1·1 dμ_1 = 2/3 + 2
    println!("s_11 = {} (plain moment 2/3 plus derivative mass 2)", s.at(1, 1));

    let report = detect_index(&s, 2).unwrap();
    println!("detected structure: {:?}", report.detected);
}
