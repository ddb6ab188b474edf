//! Acceptance suite: one test per criterion, each printing a PASS line.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.
//! Exact-path assertions are bit-exact; floating-point assertions pin the
//! stated tolerances (1e-9 / 1e-10) explicitly.

use hankel_sobolev::decomposition::{compose, decompose, detect_index, Detected, HankelLayers};
use hankel_sobolev::favard::{
    verdict_from_hessenberg, verdict_from_hessenberg_f64, verdict_from_moment_matrix, FavardCase,
};
use hankel_sobolev::hessenberg::{
    generate_polynomials, ldl, moment_matrix, moment_matrix_f64,
    orthonormal_hessenberg_from_moments, MomentMatrix,
};
use hankel_sobolev::matrix::{d_matrix, HankelSeq, HessenbergTrunc, TruncatedMatrix};
use hankel_sobolev::measures::{
    classify_hankel, measure_moments, recover_discrete_measure, sobolev_moment_matrix,
    HankelClass, MeasureSpec, MeasureVector,
};
use hankel_sobolev::operators::{euler_finite_difference, phi, psi};
use hankel_sobolev::scalar::{ExactScalar, Tolerance};
use hankel_sobolev::{fixtures, io};

use num_traits::Zero;

/// SplitMix64: small, deterministic, seedable.
struct Rng(u64);

impl Rng {
    fn new(seed: u64) -> Self {
        Rng(seed)
    }

    fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    fn int(&mut self, lo: i64, hi: i64) -> i64 {
        lo + (self.next_u64() % (hi - lo + 1) as u64) as i64
    }

    fn rational(&mut self, max_num: i64, max_den: i64) -> ExactScalar {
        ExactScalar::ratio(self.int(-max_num, max_num), self.int(1, max_den))
    }
}

fn sc(n: i64, d: i64) -> ExactScalar {
    ExactScalar::ratio(n, d)
}

fn random_symmetric(rng: &mut Rng, n: usize) -> TruncatedMatrix<ExactScalar> {
    let mut m = TruncatedMatrix::zeros(n);
    for i in 0..n {
        for j in 0..=i {
            let v = rng.rational(9, 9);
            m.set(i, j, v.clone());
            m.set(j, i, v);
        }
    }
    m
}

fn random_layers(rng: &mut Rng, d: usize, window: usize) -> HankelLayers {
    let mut layers = Vec::new();
    for k in 0..=d {
        let len = 2 * window - 1 - 2 * k;
        let mut moments: Vec<ExactScalar> = (0..len).map(|_| rng.rational(5, 5)).collect();
        if k == d && moments.iter().all(|m| m.is_zero()) {
            moments[0] = ExactScalar::from_int(1);
        }
        layers.push(HankelSeq::new(moments));
    }
    HankelLayers::new(layers).unwrap()
}

fn uniform_sym_moments(count: usize) -> Vec<ExactScalar> {
    (0..count)
        .map(|n| {
            if n % 2 == 0 {
                sc(2, n as i64 + 1)
            } else {
                ExactScalar::zero()
            }
        })
        .collect()
}

#[test]
fn criterion_01_hankel_characterization() {
    let mut rng = Rng::new(1);
    for _ in 0..100 {
        let moments: Vec<ExactScalar> = (0..31).map(|_| rng.rational(9, 9)).collect();
        let h = HankelSeq::new(moments).truncation(16).unwrap();
        assert!(
            phi(&h, 1).unwrap().value.is_zero_matrix(),
            "phi(·,1) must annihilate every Hankel truncation"
        );
    }
    for _ in 0..100 {
        let mut m = random_symmetric(&mut rng, 16);
        // Force a broken anti-diagonal so the sample is certainly not Hankel.
        let bump = m.at(1, 1).clone() + ExactScalar::from_int(1);
        m.set(0, 2, bump.clone());
        m.set(2, 0, bump);
        assert!(
            !phi(&m, 1).unwrap().value.is_zero_matrix(),
            "phi(·,1) must witness non-Hankel structure"
        );
    }
    println!("criterion 01 (Hankel characterization, level-1 annihilation): PASS");
}

#[test]
fn criterion_02_operator_laws() {
    let mut rng = Rng::new(2);
    // Recurrence: phi(A, eta+1) = U phi(A, eta) - phi(A, eta) U^{-1}.
    for _ in 0..50 {
        let a = {
            let mut m = TruncatedMatrix::zeros(12);
            for i in 0..12 {
                for j in 0..12 {
                    m.set(i, j, rng.rational(9, 9));
                }
            }
            m
        };
        let eta = rng.int(0, 4) as usize;
        let lower = phi(&a, eta).unwrap().value;
        let recurrence = lower
            .shift_conjugate(1, 0)
            .unwrap()
            .sub_matrix(&lower.shift_conjugate(0, 1).unwrap());
        assert_eq!(phi(&a, eta + 1).unwrap().value, recurrence);
    }
    // Monotone vanishing and the Hankel certificate on composed inputs.
    for trial in 0..50 {
        let d = (trial % 3) as usize;
        let layers = random_layers(&mut rng, d, 14);
        let m = compose(&layers, 14).unwrap();
        let threshold = 2 * d + 1;
        assert!(phi(&m, threshold).unwrap().value.is_zero_matrix());
        for extra in 1..=3usize {
            assert!(
                phi(&m, threshold + extra).unwrap().value.is_zero_matrix(),
                "vanishing must persist at higher levels"
            );
        }
        let even = phi(&m, 2 * d).unwrap().value;
        for i in 0..even.window() - 1 {
            for j in 0..even.window() - 1 {
                assert_eq!(even.at(i, j + 1), even.at(i + 1, j), "Hankel relation");
            }
        }
    }
    // Parity under transposition for symmetric inputs.
    for _ in 0..50 {
        let a = random_symmetric(&mut rng, 11);
        let eta = rng.int(0, 5) as usize;
        let r = phi(&a, eta).unwrap().value;
        let signed = if eta.is_multiple_of(2) {
            r.clone()
        } else {
            r.scale(&ExactScalar::from_int(-1))
        };
        assert_eq!(r.transpose(), signed);
    }
    // Shift symmetry, in the forms that actually hold: equal shifts keep
    // symmetric inputs symmetric, transposition swaps the two exponents, and
    // Hankel inputs stay symmetric under every shift pair.
    for _ in 0..50 {
        let a = random_symmetric(&mut rng, 10);
        let k = rng.int(0, 4) as usize;
        assert!(a.shift_conjugate(k, k).unwrap().is_symmetric());
        let up = rng.int(0, 4) as usize;
        let right = rng.int(0, 4) as usize;
        if up + right < 10 {
            assert_eq!(
                a.shift_conjugate(up, right).unwrap().transpose(),
                a.shift_conjugate(right, up).unwrap()
            );
        }
        let h = HankelSeq::new((0..19).map(|_| rng.rational(9, 9)).collect())
            .truncation(10)
            .unwrap();
        if up + right < 10 {
            assert!(h.shift_conjugate(up, right).unwrap().is_symmetric());
        }
    }
    println!("criterion 02 (operator laws: recurrence, vanishing, parity, shifts): PASS");
}

#[test]
fn criterion_03_euler_oracle() {
    let mut rng = Rng::new(3);
    for _ in 0..60 {
        let nu = rng.int(1, 8) as usize;
        let deg = rng.int(0, nu as i64 - 1) as usize;
        let mut coeffs: Vec<ExactScalar> = (0..=deg).map(|_| rng.rational(9, 9)).collect();
        if coeffs[deg].is_zero() {
            coeffs[deg] = ExactScalar::from_int(1);
        }
        assert!(
            euler_finite_difference(&coeffs, nu).is_zero(),
            "difference of order {nu} must kill degree {deg}"
        );
    }
    for _ in 0..60 {
        let nu = rng.int(0, 8) as usize;
        let mut coeffs: Vec<ExactScalar> = (0..=nu).map(|_| rng.rational(9, 9)).collect();
        if coeffs[nu].is_zero() {
            coeffs[nu] = ExactScalar::from_int(1);
        }
        let sign = if nu.is_multiple_of(2) { 1 } else { -1 };
        let expect = ExactScalar::from_int(sign) * ExactScalar::factorial(nu) * coeffs[nu].clone();
        assert_eq!(euler_finite_difference(&coeffs, nu), expect);
    }
    println!("criterion 03 (alternating binomial differences, exact): PASS");
}

#[test]
fn criterion_04_decomposition_round_trip() {
    let mut rng = Rng::new(4);
    for d in 1..=3usize {
        for _ in 0..8 {
            let stack = random_layers(&mut rng, d, 20);
            let m = compose(&stack, 20).unwrap();

            // Round trip: every recovered moment matches the source layer.
            let recovered = decompose(&m, d).unwrap();
            for (orig, rec) in stack.layers().iter().zip(recovered.layers()) {
                let overlap = orig.len().min(rec.len());
                assert!(overlap > 0);
                assert_eq!(&orig.moments()[..overlap], &rec.moments()[..overlap]);
            }

            // Partial sums: annihilation at 2η+1 and extraction at 2η.
            for eta in 0..=d {
                let partial = match HankelLayers::new(stack.layers()[..=eta].to_vec()) {
                    Ok(p) => p,
                    Err(_) => continue,
                };
                let m_eta = compose(&partial, 20).unwrap();
                assert!(phi(&m_eta, 2 * eta + 1).unwrap().value.is_zero_matrix());
                let even = phi(&m_eta, 2 * eta).unwrap().value;
                let factor = {
                    let f = ExactScalar::factorial(2 * eta).recip().unwrap();
                    if eta % 2 == 0 {
                        f
                    } else {
                        -f
                    }
                };
                for i in 0..even.window() {
                    for j in 0..even.window() {
                        assert_eq!(
                            factor.clone() * even.at(i, j).clone(),
                            stack.layer(eta).moments()[i + j],
                            "extraction identity at level {eta}"
                        );
                    }
                }
            }

            // Descent: subtracting the reconstructed top layer drops the
            // annihilation level by two at every step.
            let mut current = m.clone();
            for level in (1..=d).rev() {
                let even = phi(&current, 2 * level).unwrap().value;
                let s = even.window();
                let factor = {
                    let f = ExactScalar::factorial(2 * level).recip().unwrap();
                    if level % 2 == 0 {
                        f
                    } else {
                        -f
                    }
                };
                let mut moments = Vec::new();
                for t in 0..=(2 * s - 2) {
                    let (i, j) = if t < s { (0, t) } else { (t - (s - 1), s - 1) };
                    moments.push(factor.clone() * even.at(i, j).clone());
                }
                let w_next = current.window() - level;
                let diag = d_matrix(level, w_next);
                let mut reconstructed = TruncatedMatrix::zeros(w_next);
                for i in level..w_next {
                    for j in level..w_next {
                        let v = diag.at(i - level, i - level).clone()
                            * diag.at(j - level, j - level).clone()
                            * moments[i + j - 2 * level].clone();
                        reconstructed.set(i, j, v);
                    }
                }
                current = current.sub_matrix(&reconstructed);
                assert!(
                    phi(&current, 2 * level - 1).unwrap().value.is_zero_matrix(),
                    "descent must vanish at level {}",
                    2 * level - 1
                );
            }
        }
    }
    println!("criterion 04 (decomposition round trip, extraction, descent): PASS");
}

#[test]
fn criterion_05_sobolev_fixture() {
    let m = fixtures::sobolev_uniform_d1_matrix();
    assert_eq!(m.window(), 11);

    let report = detect_index(&m, 4).unwrap();
    assert_eq!(report.detected, Detected::Index(1));

    let layers = decompose(&m, 1).unwrap();
    for layer in layers.layers() {
        let expect = uniform_sym_moments(layer.len());
        assert_eq!(layer.moments(), &expect[..], "uniform moments at each level");
    }

    let verdict = verdict_from_moment_matrix(&m, 4).unwrap();
    assert_eq!(verdict.case, FavardCase::Continuous);
    println!("criterion 05 (two-level uniform fixture: index 1, exact layers, continuous): PASS");
}

#[test]
fn criterion_06_monomial_counterexample() {
    let g = HessenbergTrunc::<ExactScalar>::upper_shift(13);
    let m = moment_matrix(&g, ExactScalar::from_int(1)).unwrap();
    assert_eq!(m.matrix(), &TruncatedMatrix::identity(13));

    assert!(!psi(&g, 1).unwrap().value.is_zero_matrix());

    let report = detect_index(&TruncatedMatrix::identity(13), 5).unwrap();
    assert_eq!(report.detected, Detected::InfiniteWithinWindow);

    let verdict = verdict_from_hessenberg(&g, 5).unwrap();
    assert_eq!(verdict.case, FavardCase::NoRepresentationWithinWindow);
    println!("criterion 06 (monomial counterexample: identity moments, no measure): PASS");
}

#[test]
fn criterion_07_classical_favard_legendre() {
    let n = 10;
    let g = HessenbergTrunc::new(TruncatedMatrix::<f64>::from_fn(n, |i, j| {
        if i.abs_diff(j) == 1 {
            let k = i.max(j) as f64;
            k / (4.0 * k * k - 1.0).sqrt()
        } else {
            0.0
        }
    }))
    .unwrap();

    let skew = psi(&g, 1).unwrap().value;
    assert!(skew.max_abs() <= 1e-10, "psi(G,1) must vanish to 1e-10");

    let t00 = 1.0 / 2.0f64.sqrt();
    let m = moment_matrix_f64(&g, t00).unwrap();
    let expect = uniform_sym_moments(2 * n - 1);
    for i in 0..n {
        for j in 0..n {
            let target = expect[i + j].to_f64();
            assert!(
                (m.at(i, j) - target).abs() <= 1e-9,
                "moment ({i},{j}) drifted: {} vs {target}",
                m.at(i, j)
            );
        }
    }

    let verdict = verdict_from_hessenberg_f64(&g, 3, Tolerance::default()).unwrap();
    assert_eq!(verdict.case, FavardCase::Classical);
    println!("criterion 07 (orthonormal Legendre recurrence: classical case to 1e-9): PASS");
}

#[test]
fn criterion_08_psi_phi_bridge() {
    let mut rng = Rng::new(8);
    let n = 12;
    for _ in 0..25 {
        // Mild random non-degenerate Hessenberg: unit superdiagonal, small
        // rational band, so the float path stays well conditioned.
        let mut base = TruncatedMatrix::zeros(n);
        for i in 0..n {
            for j in 0..=i.min(n - 1) {
                base.set(i, j, sc(rng.int(-2, 2), 4));
            }
            if i + 1 < n {
                base.set(i, i + 1, ExactScalar::from_int(1));
            }
        }
        let g = HessenbergTrunc::new(base).unwrap();

        // Exact route: psi(G, eta) = (-1)^eta T phi(M_G, eta) T^T.
        let seq = generate_polynomials(&g, ExactScalar::from_int(1)).unwrap();
        let t = seq.coefficient_matrix();
        let m = moment_matrix(&g, ExactScalar::from_int(1)).unwrap();
        for eta in 0..=4usize {
            let lhs = psi(&g, eta).unwrap().value;
            let phi_m = phi(m.matrix(), eta).unwrap().value;
            let mut rhs = t.mat_mul(&phi_m).unwrap().mat_mul(&t.transpose()).unwrap();
            if eta % 2 == 1 {
                rhs = rhs.scale(&ExactScalar::from_int(-1));
            }
            assert_eq!(lhs, rhs, "exact bridge at eta={eta}");
        }

        // Float route through the orthonormal reconstruction, to 1e-9.
        let m_f = m.matrix().to_f64();
        let rec = orthonormal_hessenberg_from_moments(&m_f).unwrap();

        // Sign fixed at eta = 1: psi(G,1) = G^T - G.
        let skew = psi(&rec.g, 1).unwrap().value;
        for i in 0..skew.window() {
            for j in 0..skew.window() {
                let expect = rec.g.at(j, i) - rec.g.at(i, j);
                assert!((skew.at(i, j) - expect).abs() <= 1e-12);
            }
        }

        for eta in 1..=4usize {
            let lhs = psi(&rec.g, eta).unwrap().value;
            let phi_m = phi(&m_f, eta).unwrap().value;
            let rhs = rec
                .t
                .mat_mul(&phi_m)
                .unwrap()
                .mat_mul(&rec.t.transpose())
                .unwrap();
            let sign = if eta % 2 == 0 { 1.0 } else { -1.0 };
            let w = lhs.window().min(rhs.window());
            for i in 0..w {
                for j in 0..w {
                    let delta = lhs.at(i, j) - sign * rhs.at(i, j);
                    assert!(
                        delta.abs() <= 1e-9,
                        "float bridge at eta={eta}, entry ({i},{j}): delta={delta:.3e}"
                    );
                }
            }
        }
    }
    println!("criterion 08 (psi/phi bridge, exact and float to 1e-9): PASS");
}

#[test]
fn criterion_09_moment_problem_classification() {
    let mut rng = Rng::new(9);
    // k-atom measures classify at exactly their atom count, k <= 5; atoms are
    // distinct rationals in [-3, 3].
    for k in 1..=5usize {
        for _ in 0..6 {
            let mut points: Vec<ExactScalar> = Vec::new();
            while points.len() < k {
                let p = sc(rng.int(-6, 6), 2);
                if !points.contains(&p) {
                    points.push(p);
                }
            }
            let weights: Vec<ExactScalar> = (0..k).map(|_| sc(rng.int(1, 8), 2)).collect();
            let mu = MeasureSpec::discrete(points.clone(), weights.clone()).unwrap();
            let n = k + 2;
            let h = HankelSeq::new(measure_moments(&mu, 2 * n - 2).unwrap());
            assert_eq!(classify_hankel(&h, n).unwrap(), HankelClass::FiniteOrder(k));

            // Recovery reproduces atoms and weights to 1e-9 up to reordering.
            if k <= 4 {
                let rec = recover_discrete_measure(&h, k).unwrap();
                let mut expect: Vec<(f64, f64)> = points
                    .iter()
                    .zip(&weights)
                    .map(|(p, w)| (p.to_f64(), w.to_f64()))
                    .collect();
                expect.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
                for ((p, w), (rp, rw)) in expect.iter().zip(rec.atoms.iter().zip(&rec.weights)) {
                    assert!((p - rp).abs() <= 1e-9, "atom drifted: {p} vs {rp}");
                    assert!((w - rw).abs() <= 1e-9, "weight drifted: {w} vs {rw}");
                }
            }
        }
    }
    // Uniform-interval measures are positive definite through window 10.
    for _ in 0..10 {
        let a = rng.int(-3, 1);
        let b = a + rng.int(1, 3);
        let mu = MeasureSpec::uniform(a.into(), b.into(), sc(rng.int(1, 4), 1)).unwrap();
        let h = HankelSeq::new(measure_moments(&mu, 18).unwrap());
        assert_eq!(
            classify_hankel(&h, 10).unwrap(),
            HankelClass::PositiveDefiniteUpTo(10)
        );
    }
    println!("criterion 09 (Hamburger classification and atom recovery to 1e-9): PASS");
}

#[test]
fn criterion_10_hessenberg_moments_round_trip() {
    let mut rng = Rng::new(10);
    // Supports stay inside [-3/2, 3/2] so the float Cholesky at window 8 is
    // comfortably conditioned for the 1e-9 bound.
    for trial in 0..20 {
        let d = (trial % 3) as usize;
        let uniform_level = |rng: &mut Rng| {
            let a = sc(-rng.int(2, 3), 2);
            let b = sc(rng.int(2, 3), 2);
            MeasureSpec::uniform(a, b, sc(rng.int(1, 3), 1)).unwrap()
        };
        let mut levels: Vec<MeasureSpec> = vec![uniform_level(&mut rng)];
        for _ in 0..d {
            if rng.int(0, 1) == 0 {
                levels.push(uniform_level(&mut rng));
            } else {
                let k = rng.int(1, 2) as usize;
                let mut points = Vec::new();
                while points.len() < k {
                    let p = sc(rng.int(-2, 2), 2);
                    if !points.contains(&p) {
                        points.push(p);
                    }
                }
                let weights = (0..k).map(|_| sc(rng.int(1, 3), 1)).collect();
                levels.push(MeasureSpec::discrete(points, weights).unwrap());
            }
        }
        let mus = MeasureVector::new(levels).unwrap();
        let window = 8;
        let m = sobolev_moment_matrix(&mus, window).unwrap();

        // Exact monic path: C M C^T = D bit-exactly.
        let moment = MomentMatrix::new(m.clone()).unwrap();
        let fact = ldl(&moment).unwrap();
        let c = fact.l.lower_triangular_inverse().unwrap();
        let cmc = c.mat_mul(&m).unwrap().mat_mul(&c.transpose()).unwrap();
        for i in 0..window {
            for j in 0..window {
                let expect = if i == j {
                    fact.diag[i].clone()
                } else {
                    ExactScalar::zero()
                };
                assert_eq!(cmc.at(i, j), &expect, "C M C^T must be the pivot diagonal");
            }
        }

        // Float orthonormal round trip to 1e-9.
        let m_f = m.to_f64();
        let rec = orthonormal_hessenberg_from_moments(&m_f).unwrap();
        let back = moment_matrix_f64(&rec.g, 1.0 / m_f.at(0, 0).sqrt()).unwrap();
        for i in 0..back.window() {
            for j in 0..back.window() {
                assert!(
                    (back.at(i, j) - m_f.at(i, j)).abs() <= 1e-9,
                    "trial {trial}: entry ({i},{j}) drifted by {:.3e}",
                    (back.at(i, j) - m_f.at(i, j)).abs()
                );
            }
        }
    }
    println!("criterion 10 (moments -> Hessenberg -> moments round trip): PASS");
}

#[test]
fn criterion_11_cli_golden_reports() {
    let manifest = std::path::Path::new(env!("CARGO_MANIFEST_DIR"));
    let fixture_dir = manifest.join("fixtures");
    let golden_dir = manifest.join("tests/golden");
    let cases: [(&[&str], &str); 3] = [
        (
            &["favard-check", "--from", "moment-matrix", "hilbert.json", "--d-max", "3"],
            "favard_hilbert.json",
        ),
        (&["decompose", "sob_uniform_d1.json", "--d", "1"], "decompose_sob_uniform_d1.json"),
        (&["phi", "identity12.json", "--eta", "1"], "phi_identity12.json"),
    ];
    for (args, golden) in cases {
        let output = std::process::Command::new(env!("CARGO_BIN_EXE_hankel-sobolev"))
            .current_dir(&fixture_dir)
            .args(args)
            .output()
            .expect("binary runs");
        assert!(output.status.success(), "{args:?} failed: {output:?}");
        let expect = std::fs::read(golden_dir.join(golden)).expect("golden file exists");
        assert_eq!(
            output.stdout, expect,
            "{args:?} must reproduce {golden} byte for byte"
        );
    }

    // Reports with rational payloads stay exact through a parse round trip.
    let text = std::fs::read_to_string(golden_dir.join("decompose_sob_uniform_d1.json")).unwrap();
    let layers = io::parse_layers(&text).unwrap();
    assert_eq!(layers.index(), 1);
    assert_eq!(
        layers.layer(0).moments()[..],
        uniform_sym_moments(layers.layer(0).len())[..]
    );
    println!("criterion 11 (CLI invocations match golden reports byte for byte): PASS");
}
