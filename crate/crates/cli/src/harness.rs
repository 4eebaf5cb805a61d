//! Randomized verification of the region and bound statements.
//!
//! Every sample draws from its own `(seed, index)` stream and the reduction is
//! a count plus a minimum, so serial and parallel runs give identical reports.

use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use schwarz::bounds::{theorem31_bound, theorem31_bound_at, BoundBranch};
use schwarz::disks::{
    dieudonne_disk, mercer_disk, peschl_derivatives, second_derivative_disk, AlphaChoice,
};
use schwarz::sampling::{random_blaschke, random_disk_point, random_schur_from, sample_rng};
use schwarz::{
    dieudonne_parametrize, schur_parametrize, verify_attainment, ClosedDiskPoint, ComplexValue,
    Disk, Error, Extremal, ExtremalKind, PrescribedData, RandomFunctionConfig, Result,
    UnitDiskPoint,
};

/// Largest modulus used for random interior parameters.
pub const SAMPLE_CAP: f64 = 0.95;

/// The tightness search must come at least this close to the bound.
pub const TIGHTNESS_GAP: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HarnessConfig {
    pub seed: u64,
    pub samples: u64,
    pub tol_membership: f64,
    pub tol_attainment: f64,
    pub parallel: bool,
    /// Record `wall_time`. Off by default so reports are reproducible byte for byte.
    #[serde(default)]
    pub timing: bool,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            samples: 10_000,
            tol_membership: 1e-8,
            tol_attainment: 1e-8,
            parallel: false,
            timing: false,
        }
    }
}

impl HarnessConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let ok = |t: f64| t.is_finite() && t >= 0.0;
        if !ok(self.tol_membership) || !ok(self.tol_attainment) {
            return Err(Error::Precondition(
                "tolerances must be finite and non-negative",
            ));
        }
        Ok(())
    }

    fn functions(&self) -> RandomFunctionConfig {
        RandomFunctionConfig::with_seed(self.seed)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HarnessReport {
    pub suite: String,
    pub seed: u64,
    pub samples: u64,
    pub violations: u64,
    /// Smallest signed distance inside a region or below a bound; `None` when
    /// nothing was measured.
    pub worst_margin: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub tightness: Option<TightnessSummary>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub wall_time: Option<f64>,
}

impl HarnessReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TightnessSummary {
    pub r: f64,
    #[serde(rename = "R")]
    pub big_r: f64,
    pub bound: f64,
    pub branch: BoundBranch,
    pub best: f64,
    pub best_delta1: ComplexValue,
    pub best_alpha: ComplexValue,
    /// Candidates evaluated, including refinement steps.
    pub evaluations: u64,
}

#[derive(Debug, Clone, Copy)]
struct Check {
    margin: Option<f64>,
    violated: bool,
}

impl Check {
    fn failed() -> Self {
        Self {
            margin: None,
            violated: true,
        }
    }

    fn in_disk(d: &Disk, p: ComplexValue, tol: f64) -> Self {
        Self {
            margin: Some(d.margin(p)),
            violated: !d.contains(p, tol),
        }
    }
}

fn thread_override() -> Option<usize> {
    std::env::var("THREADS")
        .ok()?
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
}

/// Runs `f` over `0..n`, serially or on the rayon pool (sized by `THREADS`).
fn map_indices<T, F>(parallel: bool, n: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
{
    if !parallel {
        return (0..n).map(f).collect();
    }
    let run = || (0..n).into_par_iter().map(&f).collect();
    match thread_override()
        .and_then(|t| rayon::ThreadPoolBuilder::new().num_threads(t).build().ok())
    {
        Some(pool) => pool.install(run),
        None => run(),
    }
}

fn aggregate(
    suite: &str,
    cfg: &HarnessConfig,
    checks: &[Check],
    started: Instant,
) -> HarnessReport {
    let violations = checks.iter().filter(|c| c.violated).count() as u64;
    let worst_margin = checks
        .iter()
        .filter_map(|c| c.margin)
        .fold(None, |acc: Option<f64>, m| {
            Some(acc.map_or(m, |a| a.min(m)))
        });
    HarnessReport {
        suite: suite.to_string(),
        seed: cfg.seed,
        samples: checks.len() as u64,
        violations,
        worst_margin,
        tightness: None,
        wall_time: cfg.timing.then(|| started.elapsed().as_secs_f64()),
    }
}

fn point<R: Rng + ?Sized>(rng: &mut R, cap: f64) -> UnitDiskPoint {
    UnitDiskPoint::new(random_disk_point(rng, cap)).expect("cap < 1")
}

/// A point with modulus uniform in `[lo, hi]` and uniform phase.
fn annulus_point<R: Rng + ?Sized>(rng: &mut R, lo: f64, hi: f64) -> UnitDiskPoint {
    let r = lo + (hi - lo) * rng.gen::<f64>();
    let t = rng.gen::<f64>() * std::f64::consts::TAU;
    UnitDiskPoint::new(ComplexValue::from_polar(r, t)).expect("hi < 1")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MembershipSuite {
    /// `g''(z0)` in the second-derivative disk.
    Thm21,
    /// `f'(z0)` in the first-derivative disk for `f(0) = 0`.
    Dieudonne,
    /// `f(z)` in its value disk for `f(0) = 0`, `f(z0) = w0`.
    Mercer,
    /// `|D2| <= 2 (1 - |D1|^2)`.
    Yamashita,
    /// Equality in the previous inequality for Blaschke products of degree 1 and 2.
    YamashitaEquality,
}

impl MembershipSuite {
    pub const ALL: [MembershipSuite; 5] = [
        MembershipSuite::Thm21,
        MembershipSuite::Dieudonne,
        MembershipSuite::Mercer,
        MembershipSuite::Yamashita,
        MembershipSuite::YamashitaEquality,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MembershipSuite::Thm21 => "thm21",
            MembershipSuite::Dieudonne => "dieudonne",
            MembershipSuite::Mercer => "mercer",
            MembershipSuite::Yamashita => "yamashita",
            MembershipSuite::YamashitaEquality => "yamashita-equality",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|s| s.name() == name)
    }
}

fn membership_check(suite: MembershipSuite, cfg: &HarnessConfig, index: u64) -> Check {
    let mut rng = sample_rng(cfg.seed, index);
    let rng = &mut rng;
    let tol = cfg.tol_membership;
    let functions = cfg.functions();
    match suite {
        MembershipSuite::Thm21 => {
            let data = PrescribedData {
                z0: point(rng, SAMPLE_CAP),
                delta0: point(rng, SAMPLE_CAP),
                delta1: point(rng, 0.999).closed(),
            };
            let gstar = random_schur_from(rng, &functions);
            match schur_parametrize(&data, gstar).and_then(|g| g.eval_jet(data.z0)) {
                Ok(jet) => Check::in_disk(&second_derivative_disk(&data), jet.f2, tol),
                Err(_) => Check::failed(),
            }
        }
        MembershipSuite::Dieudonne | MembershipSuite::Mercer => {
            let z0 = annulus_point(rng, 0.05, SAMPLE_CAP);
            let w0 = random_disk_point(rng, 0.999 * z0.modulus());
            let fstar = random_schur_from(rng, &functions);
            let z = point(rng, SAMPLE_CAP);
            let Ok(f) = dieudonne_parametrize(z0, w0, fstar) else {
                return Check::failed();
            };
            let measured = if suite == MembershipSuite::Dieudonne {
                f.eval_jet(z0)
                    .and_then(|jet| Ok((dieudonne_disk(z0, w0)?, jet.f1)))
            } else {
                f.eval(z).and_then(|v| Ok((mercer_disk(z0, w0, z)?, v)))
            };
            match measured {
                Ok((d, p)) => Check::in_disk(&d, p, tol),
                Err(_) => Check::failed(),
            }
        }
        MembershipSuite::Yamashita => {
            let g = random_schur_from(rng, &functions);
            match peschl_derivatives(&g, point(rng, SAMPLE_CAP)) {
                Ok(d) => {
                    let slack = d.yamashita_slack();
                    Check {
                        margin: Some(slack),
                        violated: slack < -tol,
                    }
                }
                Err(_) => Check::failed(),
            }
        }
        MembershipSuite::YamashitaEquality => {
            let degree = rng.gen_range(1..=2);
            let b = random_blaschke(rng, degree, SAMPLE_CAP);
            match peschl_derivatives(&b, point(rng, SAMPLE_CAP)) {
                Ok(d) => {
                    let gap = d.yamashita_slack().abs();
                    Check {
                        margin: Some(-gap),
                        violated: gap > cfg.tol_attainment,
                    }
                }
                Err(_) => Check::failed(),
            }
        }
    }
}

pub fn run_membership_suite(cfg: &HarnessConfig, suite: MembershipSuite) -> HarnessReport {
    let started = Instant::now();
    let checks = map_indices(cfg.parallel, cfg.samples, |i| {
        membership_check(suite, cfg, i)
    });
    aggregate(suite.name(), cfg, &checks, started)
}

#[derive(Debug, Clone, PartialEq)]
pub struct AttainmentOptions {
    pub kinds: Vec<ExtremalKind>,
    /// Modulus given to `alpha` for kinds that take one. Values below one
    /// move the function strictly inside its region.
    pub alpha_scale: f64,
}

impl Default for AttainmentOptions {
    fn default() -> Self {
        Self {
            kinds: ExtremalKind::ALL.to_vec(),
            alpha_scale: 1.0,
        }
    }
}

/// Random parameters for `kind`, in the range where that kind is extremal.
pub fn random_extremal<R: Rng + ?Sized>(
    rng: &mut R,
    kind: ExtremalKind,
    alpha_scale: f64,
) -> Result<Extremal> {
    let alpha = ClosedDiskPoint::named(
        "alpha",
        ComplexValue::from_polar(alpha_scale, rng.gen::<f64>() * std::f64::consts::TAU),
    )?;
    let unimodular =
        |rng: &mut R| ClosedDiskPoint::unimodular(rng.gen::<f64>() * std::f64::consts::TAU);
    Ok(match kind {
        ExtremalKind::SchwarzPickAuto => Extremal::SchwarzPickAuto {
            z0: point(rng, SAMPLE_CAP),
            delta0: point(rng, SAMPLE_CAP),
            alpha,
        },
        ExtremalKind::DieudonneBoundary => {
            let z0 = annulus_point(rng, 0.05, SAMPLE_CAP);
            Extremal::DieudonneBoundary {
                z0,
                w0: random_disk_point(rng, 0.999 * z0.modulus()),
                alpha,
            }
        }
        ExtremalKind::Thm21Degenerate => Extremal::Thm21Degenerate {
            z0: point(rng, SAMPLE_CAP),
            delta0: point(rng, SAMPLE_CAP),
            delta1: unimodular(rng),
        },
        ExtremalKind::Thm21Boundary => Extremal::Thm21Boundary {
            z0: point(rng, SAMPLE_CAP),
            delta0: point(rng, SAMPLE_CAP),
            delta1: point(rng, SAMPLE_CAP),
            alpha,
        },
        ExtremalKind::Cor22Degenerate => {
            let z0 = annulus_point(rng, 0.05, SAMPLE_CAP);
            Extremal::Cor22Degenerate {
                z0,
                w0: random_disk_point(rng, 0.999 * z0.modulus()),
                delta1: unimodular(rng),
            }
        }
        ExtremalKind::Cor22Boundary => {
            let z0 = annulus_point(rng, 0.05, SAMPLE_CAP);
            Extremal::Cor22Boundary {
                z0,
                w0: random_disk_point(rng, 0.999 * z0.modulus()),
                delta1: point(rng, SAMPLE_CAP),
                alpha,
            }
        }
        ExtremalKind::Thm31Deg1 => {
            // r + 2R >= 2
            let z0 = annulus_point(rng, 0.1, SAMPLE_CAP);
            let lo = (2.0 - z0.modulus()) / 2.0;
            Extremal::Thm31Deg1 {
                z0,
                delta0: annulus_point(rng, lo, 0.99),
            }
        }
        ExtremalKind::Thm31Deg2 => {
            let z0 = point(rng, SAMPLE_CAP);
            let hi = ((2.0 - z0.modulus()) / 2.0).min(0.99) * 0.999;
            Extremal::Thm31Deg2 {
                z0,
                delta0: annulus_point(rng, 0.0, hi),
                theta: rng.gen::<f64>() * std::f64::consts::TAU,
            }
        }
        ExtremalKind::SzaszExtremal => Extremal::SzaszExtremal {
            z0: point(rng, SAMPLE_CAP),
            theta: rng.gen::<f64>() * std::f64::consts::TAU,
        },
    })
}

fn kind_index(kind: ExtremalKind) -> u64 {
    ExtremalKind::ALL
        .iter()
        .position(|&k| k == kind)
        .expect("listed") as u64
}

fn attainment_check(
    cfg: &HarnessConfig,
    kind: ExtremalKind,
    index: u64,
    alpha_scale: f64,
) -> Check {
    let stream = index * ExtremalKind::ALL.len() as u64 + kind_index(kind);
    let mut rng = sample_rng(cfg.seed, stream);
    let report = random_extremal(&mut rng, kind, alpha_scale)
        .and_then(|ex| verify_attainment(&ex, ex.predicted()?, cfg.tol_attainment));
    match report {
        Ok(r) => Check {
            margin: Some(r.margin),
            violated: !r.passed,
        },
        Err(_) => Check::failed(),
    }
}

/// Builds `samples` random extremals of every selected kind and checks that
/// each lands on its region boundary or bound.
pub fn run_attainment_suite(
    cfg: &HarnessConfig,
    opts: &AttainmentOptions,
) -> Result<HarnessReport> {
    if !(opts.alpha_scale > 0.0 && opts.alpha_scale <= 1.0) {
        return Err(Error::Precondition("alpha scale must lie in (0, 1]"));
    }
    let started = Instant::now();
    let kinds = &opts.kinds;
    let total = cfg.samples * kinds.len() as u64;
    let checks = map_indices(cfg.parallel, total, |j| {
        let kind = kinds[(j % kinds.len() as u64) as usize];
        attainment_check(cfg, kind, j / kinds.len() as u64, opts.alpha_scale)
    });
    Ok(aggregate("attainment", cfg, &checks, started))
}

/// A point of the search space: `delta1 = rho e^{i psi}`, `alpha = e^{i phi}`.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Candidate {
    rho: f64,
    psi: f64,
    phi: f64,
}

impl Candidate {
    fn delta1(self) -> ClosedDiskPoint {
        ClosedDiskPoint::new(ComplexValue::from_polar(self.rho, self.psi)).expect("rho <= 1")
    }

    fn extremal(self, z0: UnitDiskPoint, delta0: UnitDiskPoint) -> Result<Extremal> {
        if self.rho >= 1.0 {
            return Ok(Extremal::Thm21Degenerate {
                z0,
                delta0,
                delta1: ClosedDiskPoint::unimodular(self.psi),
            });
        }
        Ok(Extremal::Thm21Boundary {
            z0,
            delta0,
            delta1: self.delta1().interior()?,
            alpha: ClosedDiskPoint::unimodular(self.phi),
        })
    }

    fn value(self, z0: UnitDiskPoint, delta0: UnitDiskPoint) -> Option<f64> {
        let f = self.extremal(z0, delta0).ok()?.build().ok()?;
        Some(f.eval_jet(z0).ok()?.f2.norm())
    }
}

struct Search {
    z0: UnitDiskPoint,
    delta0: UnitDiskPoint,
    bound: f64,
    tol: f64,
    evaluations: u64,
    violations: u64,
    worst: Option<f64>,
}

impl Search {
    fn record(&mut self, value: Option<f64>) -> Option<f64> {
        self.evaluations += 1;
        match value {
            Some(v) => {
                let margin = self.bound - v;
                self.worst = Some(self.worst.map_or(margin, |w| w.min(margin)));
                if v > self.bound + self.tol {
                    self.violations += 1;
                }
            }
            None => self.violations += 1,
        }
        value
    }

    /// Compass search from `start`; `rho` is clamped to `[0, 1]`.
    fn refine(&mut self, start: Candidate, start_value: f64) -> (Candidate, f64) {
        let (mut best, mut best_value) = (start, start_value);
        let mut steps = [0.05, 0.2, 0.2];
        while steps[0] > 1e-12 {
            let mut improved = false;
            for axis in 0..3 {
                for sign in [1.0, -1.0] {
                    let mut c = best;
                    match axis {
                        0 => c.rho = (c.rho + sign * steps[0]).clamp(0.0, 1.0),
                        1 => c.psi += sign * steps[1],
                        _ => c.phi += sign * steps[2],
                    }
                    if c == best {
                        continue;
                    }
                    let value = c.value(self.z0, self.delta0);
                    if let Some(v) = self.record(value) {
                        if v > best_value {
                            best = c;
                            best_value = v;
                            improved = true;
                        }
                    }
                }
            }
            if !improved {
                steps.iter_mut().for_each(|s| *s *= 0.5);
            }
        }
        (best, best_value)
    }
}

fn seed_candidate(z0: UnitDiskPoint, delta0: UnitDiskPoint) -> Result<Candidate> {
    let params = theorem31_bound_at(z0, delta0)?
        .extremal
        .ok_or(Error::Precondition("bound has no extremal"))?;
    let delta1 = params.delta1.unwrap_or_default();
    let rho = if (delta1.norm() - 1.0).abs() <= 1e-12 {
        1.0
    } else {
        delta1.norm()
    };
    let phi = match params.alpha {
        Some(AlphaChoice::Unique(a)) => a.value().arg(),
        _ => 0.0,
    };
    Ok(Candidate {
        rho,
        psi: delta1.arg(),
        phi,
    })
}

/// Maximizes `|g''(z0)|` over `|z0| = r`, `|g(z0)| = R` and compares with the
/// closed-form bound.
///
/// Candidates are the functions `T_{delta0}(u T_{delta1}(alpha u))`, `u = T_{-z0}(z)`,
/// which by the parametrization reach every achievable modulus. `delta1` is
/// sampled on a stratified (modulus, phase) grid and `alpha` uniformly; the best
/// sample and the closed-form extremal are then refined by compass search.
/// Violations count candidates above `bound + tol_attainment` and a best value
/// more than [`TIGHTNESS_GAP`] below the bound.
pub fn run_tightness_search(cfg: &HarnessConfig, r: f64, big_r: f64) -> Result<HarnessReport> {
    let started = Instant::now();
    let z0 = UnitDiskPoint::named("r", ComplexValue::new(r, 0.0))?;
    let delta0 = UnitDiskPoint::named("R", ComplexValue::new(big_r, 0.0))?;
    if r < 0.0 || big_r < 0.0 {
        return Err(Error::Precondition("r and R must be non-negative"));
    }
    let bound = theorem31_bound(r, big_r)?;

    let n = cfg.samples;
    let m = (n as f64).sqrt().ceil().max(1.0) as u64;
    let sampled = map_indices(cfg.parallel, n, |i| {
        let mut rng = sample_rng(cfg.seed, i);
        let tau = std::f64::consts::TAU;
        let c = Candidate {
            rho: (((i / m) as f64 + rng.gen::<f64>()) / m as f64).min(1.0),
            psi: ((i % m) as f64 + rng.gen::<f64>()) / m as f64 * tau,
            phi: rng.gen::<f64>() * tau,
        };
        (c, c.value(z0, delta0))
    });

    let mut search = Search {
        z0,
        delta0,
        bound: bound.value,
        tol: cfg.tol_attainment,
        evaluations: 0,
        violations: 0,
        worst: None,
    };
    let mut best: Option<(Candidate, f64)> = None;
    for &(c, v) in &sampled {
        if let Some(v) = search.record(v) {
            if best.is_none_or(|(_, b)| v > b) {
                best = Some((c, v));
            }
        }
    }
    let seed = seed_candidate(z0, delta0)?;
    let mut starts = Vec::new();
    if let Some(v) = search.record(seed.value(z0, delta0)) {
        starts.push((seed, v));
    }
    starts.extend(best);
    for (c, v) in starts {
        let refined = search.refine(c, v);
        if best.is_none_or(|(_, b)| refined.1 > b) {
            best = Some(refined);
        }
    }

    let (best_c, best_value) =
        best.ok_or(Error::Precondition("no candidate could be evaluated"))?;
    let mut violations = search.violations;
    if bound.value - best_value > TIGHTNESS_GAP {
        violations += 1;
    }
    Ok(HarnessReport {
        suite: "tightness".to_string(),
        seed: cfg.seed,
        samples: n,
        violations,
        worst_margin: search.worst,
        tightness: Some(TightnessSummary {
            r,
            big_r,
            bound: bound.value,
            branch: bound.branch,
            best: best_value,
            best_delta1: best_c.delta1().value(),
            best_alpha: ClosedDiskPoint::unimodular(best_c.phi).value(),
            evaluations: search.evaluations,
        }),
        wall_time: cfg.timing.then(|| started.elapsed().as_secs_f64()),
    })
}

/// The best candidate of a tightness report as an explicit function.
pub fn tightness_extremal(summary: &TightnessSummary) -> Result<Extremal> {
    let z0 = UnitDiskPoint::named("r", ComplexValue::new(summary.r, 0.0))?;
    let delta0 = UnitDiskPoint::named("R", ComplexValue::new(summary.big_r, 0.0))?;
    let d = summary.best_delta1;
    Candidate {
        rho: if (d.norm() - 1.0).abs() <= 1e-12 {
            1.0
        } else {
            d.norm()
        },
        psi: d.arg(),
        phi: summary.best_alpha.arg(),
    }
    .extremal(z0, delta0)
}
