//! Seeded random Schur-class functions.
//!
//! Each sample index gets its own ChaCha stream derived from `(seed, index)`,
//! so samples can be drawn in any order, or in parallel, with identical results.

use core::f64::consts::TAU;

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::function::FunctionExpr;
use crate::moebius::{ClosedDiskPoint, UnitDiskPoint};

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RandomFunctionConfig {
    pub seed: u64,
    pub max_blaschke_degree: u32,
    /// Blaschke zeros are drawn from `|z| <= zero_modulus_cap`.
    pub zero_modulus_cap: f64,
}

impl Default for RandomFunctionConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            max_blaschke_degree: 4,
            zero_modulus_cap: 0.95,
        }
    }
}

impl RandomFunctionConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.zero_modulus_cap > 0.0 && self.zero_modulus_cap < 1.0) {
            return Err(Error::Precondition("zero_modulus_cap must lie in (0, 1)"));
        }
        Ok(())
    }
}

/// The independent random stream for sample `index` under `seed`.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Uniform (by area) point of the closed disk of radius `cap`.
pub fn random_disk_point<R: Rng + ?Sized>(rng: &mut R, cap: f64) -> Complex64 {
    let u: f64 = rng.gen();
    let r = cap * u.sqrt();
    Complex64::from_polar(r, rng.gen::<f64>() * TAU)
}

/// Uniform point of the unit circle.
pub fn random_unimodular<R: Rng + ?Sized>(rng: &mut R) -> ClosedDiskPoint {
    ClosedDiskPoint::unimodular(rng.gen::<f64>() * TAU)
}

fn open_point<R: Rng + ?Sized>(rng: &mut R, cap: f64) -> UnitDiskPoint {
    // cap < 1, so the point is always interior
    UnitDiskPoint::new(random_disk_point(rng, cap)).expect("cap < 1")
}

/// `e^{i theta} prod_j [z, z_j]` with `degree` zeros in `|z| <= cap`.
///
/// Degree zero gives the unimodular constant `e^{i theta}`.
pub fn random_blaschke<R: Rng + ?Sized>(rng: &mut R, degree: u32, cap: f64) -> FunctionExpr {
    let theta = rng.gen::<f64>() * TAU;
    if degree == 0 {
        return FunctionExpr::constant(ClosedDiskPoint::unimodular(theta));
    }
    let mut b = FunctionExpr::Identity.bracket(open_point(rng, cap));
    for _ in 1..degree {
        b = b.times(FunctionExpr::Identity.bracket(open_point(rng, cap)));
    }
    b.rotate(theta)
}

/// Draws one Schur-class function from `rng`.
///
/// Degree `~ U{0..=max}`; degree zero yields an interior constant. Otherwise a
/// random Blaschke product, scaled by `r ~ U(0,1)` half of the time and
/// transported by a random `T_c` half of the time.
pub fn random_schur_from<R: Rng + ?Sized>(rng: &mut R, cfg: &RandomFunctionConfig) -> FunctionExpr {
    let cap = cfg.zero_modulus_cap;
    let degree = rng.gen_range(0..=cfg.max_blaschke_degree);
    if degree == 0 {
        let c = random_disk_point(rng, cap);
        return FunctionExpr::constant(ClosedDiskPoint::new(c).expect("cap < 1"));
    }
    let mut f = random_blaschke(rng, degree, cap);
    if rng.gen::<bool>() {
        let r = rng.gen::<f64>();
        f = FunctionExpr::constant(ClosedDiskPoint::from_re(r).expect("r < 1")).times(f);
    }
    if rng.gen::<bool>() {
        f = f.mobius(open_point(rng, cap));
    }
    f
}

/// Sample `index` of the stream defined by `cfg.seed`.
pub fn random_schur_sample(cfg: &RandomFunctionConfig, index: u64) -> FunctionExpr {
    random_schur_from(&mut sample_rng(cfg.seed, index), cfg)
}

/// The first sample for `cfg.seed`.
pub fn random_schur_function(cfg: &RandomFunctionConfig) -> FunctionExpr {
    random_schur_sample(cfg, 0)
}
