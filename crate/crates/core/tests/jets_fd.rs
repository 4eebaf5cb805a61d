mod support {
    pub mod ddcomplex;
}

use num_complex::Complex64;
use rand::Rng;
use schwarz::sampling::{random_disk_point, random_schur_from, sample_rng};
use schwarz::{FunctionExpr, RandomFunctionConfig, UnitDiskPoint};
use support::ddcomplex::central_differences;

const H: f64 = 1e-5;

fn random_tree(seed: u64, index: u64) -> (FunctionExpr, Complex64) {
    let cfg = RandomFunctionConfig::with_seed(seed);
    let mut rng = sample_rng(seed, index);
    let mut f = random_schur_from(&mut rng, &cfg);
    if rng.gen::<bool>() {
        f = f.after(random_schur_from(&mut rng, &cfg));
    }
    (f, random_disk_point(&mut rng, 0.9))
}

fn close(jet: Complex64, fd: Complex64) -> bool {
    (jet - fd).norm() <= 1e-6 * (1.0 + fd.norm())
}

#[test]
fn jets_match_high_precision_differences() {
    for i in 0..500 {
        let (f, z) = random_tree(2024, i);
        let jet = f.eval_jet(UnitDiskPoint::new(z).unwrap()).unwrap();
        let (d1, d2) = central_differences(&f, z, H);
        assert!(close(jet.f1, d1), "sample {i}: f1 {} vs {}", jet.f1, d1);
        assert!(close(jet.f2, d2), "sample {i}: f2 {} vs {}", jet.f2, d2);
    }
}

#[test]
fn oracle_reproduces_polynomial_derivatives() {
    // z^3 = z * z * z: exact derivatives 3z^2, 6z
    let f = FunctionExpr::Identity
        .times(FunctionExpr::Identity)
        .times(FunctionExpr::Identity);
    let z = Complex64::new(0.3, -0.4);
    let (d1, d2) = central_differences(&f, z, H);
    assert!((d1 - 3.0 * z * z).norm() < 1e-9);
    assert!((d2 - 6.0 * z).norm() < 1e-9);
}
