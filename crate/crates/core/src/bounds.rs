//! Sharp upper bounds for `|g''(z0)|` in terms of `r = |z0|` and `R = |g(z0)|`.

use alloc::vec::Vec;

use crate::disks::AlphaChoice;
use crate::error::{Error, Result};
use crate::moebius::{ClosedDiskPoint, ComplexValue, UnitDiskPoint, ZERO};

/// Which closed form produced a [`BoundResult`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum BoundBranch {
    /// `R = 0`: `(4 + r^2) / (2 (1 - r^2)^2)`.
    #[cfg_attr(feature = "serde", serde(rename = "R0_branch"))]
    R0,
    /// `r + 2R < 2`: `(1 + R)(4 - 4R + r^2) / (2 (1 - r^2)^2)`.
    #[cfg_attr(feature = "serde", serde(rename = "rR1_branch"))]
    RR1,
    /// `r + 2R >= 2`: `2 (1 - R^2)(r + R) / (1 - r^2)^2`.
    #[cfg_attr(feature = "serde", serde(rename = "rR2_branch"))]
    RR2,
    #[cfg_attr(feature = "serde", serde(rename = "szasz"))]
    Szasz,
    #[cfg_attr(feature = "serde", serde(rename = "ruscheweyh"))]
    Ruscheweyh,
}

impl BoundBranch {
    pub fn name(self) -> &'static str {
        match self {
            BoundBranch::R0 => "R0_branch",
            BoundBranch::RR1 => "rR1_branch",
            BoundBranch::RR2 => "rR2_branch",
            BoundBranch::Szasz => "szasz",
            BoundBranch::Ruscheweyh => "ruscheweyh",
        }
    }
}

/// Parameters of the function attaining a bound; only the applicable ones are set.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ExtremalParams {
    #[cfg_attr(
        feature = "serde",
        serde(skip_serializing_if = "Option::is_none", default)
    )]
    pub theta: Option<f64>,
    #[cfg_attr(
        feature = "serde",
        serde(skip_serializing_if = "Option::is_none", default)
    )]
    pub a: Option<ComplexValue>,
    #[cfg_attr(
        feature = "serde",
        serde(skip_serializing_if = "Option::is_none", default)
    )]
    pub delta1: Option<ComplexValue>,
    #[cfg_attr(
        feature = "serde",
        serde(skip_serializing_if = "Option::is_none", default)
    )]
    pub alpha: Option<AlphaChoice>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BoundResult {
    pub value: f64,
    pub branch: BoundBranch,
    #[cfg_attr(
        feature = "serde",
        serde(skip_serializing_if = "Option::is_none", default)
    )]
    pub extremal: Option<ExtremalParams>,
}

fn check_unit_interval(what: &'static str, x: f64) -> Result<()> {
    if !x.is_finite() {
        return Err(Error::NonFinite { what });
    }
    if !(0.0..1.0).contains(&x) {
        return Err(Error::Precondition(match what {
            "r" => "r must lie in [0, 1)",
            "R" => "R must lie in [0, 1)",
            _ => "argument must lie in [0, 1)",
        }));
    }
    Ok(())
}

/// `Psi(x) = (R - 1) x^2 + r x + 1`.
pub fn psi(x: f64, r: f64, big_r: f64) -> f64 {
    (big_r - 1.0) * x * x + r * x + 1.0
}

/// The vertex `r / (2 (1 - R))` of [`psi`]; interior to `[0, 1]` iff `r + 2R < 2`.
pub fn psi_vertex(r: f64, big_r: f64) -> f64 {
    r / (2.0 * (1.0 - big_r))
}

/// `phi(R) = -R^3 - r R^2 + r + R`, so that the `r + 2R >= 2` bound is
/// `2 phi(R) / (1 - r^2)^2`.
pub fn phi_cubic(big_r: f64, r: f64) -> f64 {
    -big_r.powi(3) - r * big_r * big_r + r + big_r
}

/// Positive root `1 / (sqrt(3 + r^2) + r)` of `phi'(R) = -3R^2 - 2rR + 1`.
pub fn phi_cubic_critical_point(r: f64) -> f64 {
    1.0 / ((3.0 + r * r).sqrt() + r)
}

/// `Phi(R) = -4R^2 + r^2 R + r^2 + 4`, so that the `r + 2R < 2` bound is
/// `Phi(R) / (2 (1 - r^2)^2)`; maximal at `R = r^2 / 8`.
pub fn phi_quadratic(big_r: f64, r: f64) -> f64 {
    -4.0 * big_r * big_r + r * r * big_r + r * r + 4.0
}

fn rr2_value(r: f64, big_r: f64) -> f64 {
    2.0 * (1.0 - big_r * big_r) * (r + big_r) / (1.0 - r * r).powi(2)
}

fn rr1_value(r: f64, big_r: f64) -> f64 {
    (1.0 + big_r) * (4.0 - 4.0 * big_r + r * r) / (2.0 * (1.0 - r * r).powi(2))
}

fn r0_value(r: f64) -> f64 {
    (4.0 + r * r) / (2.0 * (1.0 - r * r).powi(2))
}

/// The closed form of one branch evaluated at `(r, R)` regardless of which
/// branch applies there; `None` for branches outside this family.
pub fn theorem31_branch_value(branch: BoundBranch, r: f64, big_r: f64) -> Option<f64> {
    match branch {
        BoundBranch::RR2 => Some(rr2_value(r, big_r)),
        BoundBranch::RR1 => Some(rr1_value(r, big_r)),
        BoundBranch::R0 => Some(r0_value(r)),
        _ => None,
    }
}

fn branch_for(r: f64, big_r: f64) -> BoundBranch {
    if r + 2.0 * big_r >= 2.0 {
        BoundBranch::RR2
    } else if big_r == 0.0 {
        BoundBranch::R0
    } else {
        BoundBranch::RR1
    }
}

/// Sharp bound on `|g''(z0)|` given only `r = |z0|` and `R = |g(z0)|`.
pub fn theorem31_bound(r: f64, big_r: f64) -> Result<BoundResult> {
    check_unit_interval("r", r)?;
    check_unit_interval("R", big_r)?;
    let branch = branch_for(r, big_r);
    let value = match branch {
        BoundBranch::RR2 => rr2_value(r, big_r),
        BoundBranch::R0 => r0_value(r),
        _ => rr1_value(r, big_r),
    };
    Ok(BoundResult {
        value,
        branch,
        extremal: None,
    })
}

/// [`theorem31_bound`] at `(|z0|, |delta0|)`, with the parameters of the
/// extremal function through `z0` with value `delta0`.
///
/// * `rR2`: `e^{i theta} (z - a) / (1 - conj(a) z)` with
///   `a = (r + R) z0 / (r (1 + rR))`, `theta = arg(-conj(z0) delta0)`; equivalently
///   `T_{delta0}(delta1 T_{-z0}(z))` with `delta1 = -conj(z0) delta0 / (rR)`.
/// * `rR1`, `z0 != 0`: `delta1 = -conj(z0) delta0 / (2R(1 - R))`,
///   `alpha = -conj(z0) delta0 / (z0 R)`, `theta = arg(-conj(z0)^2 delta0)`.
/// * `z0 = 0`: `T_{delta0}(e^{i theta} z^2)`, `theta` free (reported as 0).
/// * `R = 0`, `z0 != 0`: `alpha` free on the circle with `delta1 = alpha z0 / 2`
///   (reported for `alpha = 1`).
pub fn theorem31_bound_at(z0: UnitDiskPoint, delta0: UnitDiskPoint) -> Result<BoundResult> {
    let r = z0.modulus();
    let big_r = delta0.modulus();
    let mut result = theorem31_bound(r, big_r)?;
    let z0 = z0.value();
    let delta0 = delta0.value();
    let params = match result.branch {
        BoundBranch::RR2 => {
            let a = z0 * ((r + big_r) / (r * (1.0 + r * big_r)));
            let rot = -z0.conj() * delta0;
            ExtremalParams {
                theta: Some(rot.arg()),
                a: Some(a),
                delta1: Some(rot / (r * big_r)),
                alpha: None,
            }
        }
        _ if r == 0.0 => ExtremalParams {
            theta: Some(0.0),
            a: None,
            delta1: Some(ZERO),
            alpha: Some(AlphaChoice::AnyUnimodular),
        },
        BoundBranch::R0 => ExtremalParams {
            theta: None,
            a: None,
            delta1: Some(z0 / 2.0),
            alpha: Some(AlphaChoice::AnyUnimodular),
        },
        _ => {
            let rot = -z0.conj() * delta0;
            let alpha = rot / (z0 * big_r);
            ExtremalParams {
                theta: Some((rot * z0.conj()).arg()),
                a: None,
                delta1: Some(rot / (2.0 * big_r * (1.0 - big_r))),
                alpha: Some(AlphaChoice::Unique(ClosedDiskPoint::new(alpha)?)),
            }
        }
    };
    result.extremal = Some(params);
    Ok(result)
}

/// `(8 + r^2)^2 / (32 (1 - r^2)^2)`, the bound depending only on `r = |z|`.
pub fn szasz_bound(r: f64) -> Result<BoundResult> {
    check_unit_interval("r", r)?;
    Ok(BoundResult {
        value: (8.0 + r * r).powi(2) / (32.0 * (1.0 - r * r).powi(2)),
        branch: BoundBranch::Szasz,
        extremal: Some(ExtremalParams {
            theta: Some(0.0),
            ..ExtremalParams::default()
        }),
    })
}

/// Supremum of the `r + 2R >= 2` branch over `R`, reached at `R = 1 - r/2`:
/// `r (2 + r)(4 - r) / (4 (1 - r^2)^2)`.
pub fn szasz_boundary_branch_max(r: f64) -> f64 {
    r * (2.0 + r) * (4.0 - r) / (4.0 * (1.0 - r * r).powi(2))
}

/// `n! (1 - R^2) / ((1 - r)^n (1 + r))` for `n` in `{1, 2}`.
pub fn ruscheweyh_bound(n: u32, r: f64, big_r: f64) -> Result<BoundResult> {
    if !(1..=2).contains(&n) {
        return Err(Error::Precondition("n must be 1 or 2"));
    }
    check_unit_interval("r", r)?;
    check_unit_interval("R", big_r)?;
    let factorial = if n == 2 { 2.0 } else { 1.0 };
    Ok(BoundResult {
        value: factorial * (1.0 - big_r * big_r) / ((1.0 - r).powi(n as i32) * (1.0 + r)),
        branch: BoundBranch::Ruscheweyh,
        extremal: None,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ComparisonRow {
    pub r: f64,
    #[cfg_attr(feature = "serde", serde(rename = "R"))]
    pub big_r: f64,
    pub thm31: f64,
    pub ruscheweyh2: f64,
    pub szasz: f64,
    pub branch: BoundBranch,
}

impl ComparisonRow {
    /// `thm31 <= min(ruscheweyh2, szasz) + 1e-12`.
    pub fn dominated(&self) -> bool {
        self.thm31 <= self.ruscheweyh2.min(self.szasz) + 1e-12
    }
}

/// One row per `(r, R)` pair, `r` varying slowest.
pub fn bound_comparison_table(r_grid: &[f64], big_r_grid: &[f64]) -> Result<Vec<ComparisonRow>> {
    let mut rows = Vec::with_capacity(r_grid.len() * big_r_grid.len());
    for &r in r_grid {
        let szasz = szasz_bound(r)?.value;
        for &big_r in big_r_grid {
            let thm = theorem31_bound(r, big_r)?;
            rows.push(ComparisonRow {
                r,
                big_r,
                thm31: thm.value,
                ruscheweyh2: ruscheweyh_bound(2, r, big_r)?.value,
                szasz,
                branch: thm.branch,
            });
        }
    }
    Ok(rows)
}
