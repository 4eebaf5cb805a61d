//! Closed-form variability regions and the hyperbolic/Peschl derivatives.
//!
//! Each region is the exact set of values a derivative functional takes over
//! all self-maps of the disk meeting some interpolation data:
//!
//! | function | data | functional |
//! |---|---|---|
//! | [`schwarz_pick_disk`] | `g(z0) = delta0` | `g'(z0)` |
//! | [`rogosinski_disk`] | `g(0) = 0`, `g'(0)` | `g(z0)` |
//! | [`mercer_disk`] | `f(0) = 0`, `f(z0) = w0` | `f(z)` |
//! | [`dieudonne_disk`] | `f(0) = 0`, `f(z0) = w0` | `f'(z0)` |
//! | [`second_derivative_disk`] | `g(z0) = delta0`, `H^1 g(z0) = delta1` | `g''(z0)` |
//! | [`second_order_dieudonne_disk`] | `f(0) = 0`, `f(z0) = w0`, `f'(z0) = w1` | `f''(z0)` |

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::function::{dieudonne_ratio, FunctionExpr, PrescribedData};
use crate::jet::Jet2;
use crate::moebius::{mobius_raw, ClosedDiskPoint, ComplexValue, Disk, UnitDiskPoint, ZERO};

/// `H^2` is reported as degenerate when `1 - |H^1|^2` falls to this level.
pub const H2_DEGENERACY_THRESHOLD: f64 = 1e-12;

/// Peschl's invariant derivatives `(D_1 g, D_2 g)` at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DerivativePair {
    pub d1: ComplexValue,
    pub d2: ComplexValue,
}

impl DerivativePair {
    /// `2 (1 - |D_1|^2) - |D_2|`, non-negative for every self-map.
    pub fn yamashita_slack(&self) -> f64 {
        2.0 * (1.0 - self.d1.norm_sqr()) - self.d2.norm()
    }
}

/// Which unimodular `alpha` maximizes `|g''(z0)|` over the second-derivative disk.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(
    feature = "serde",
    derive(serde::Serialize, serde::Deserialize),
    serde(rename_all = "snake_case")
)]
pub enum AlphaChoice {
    Unique(ClosedDiskPoint),
    /// The disk is centred at the origin: every `alpha` on the circle works.
    AnyUnimodular,
}

pub fn schwarz_pick_disk(z0: UnitDiskPoint, delta0: UnitDiskPoint) -> Disk {
    let radius = (1.0 - delta0.value().norm_sqr()) / (1.0 - z0.value().norm_sqr());
    region(ZERO, radius)
}

pub fn rogosinski_disk(z0: UnitDiskPoint, gprime0: UnitDiskPoint) -> Disk {
    let z0 = z0.value();
    let b = gprime0.value();
    let r2 = z0.norm_sqr();
    let denom = 1.0 - r2 * b.norm_sqr();
    let center = z0 * b * (1.0 - r2) / denom;
    let radius = r2 * (1.0 - b.norm_sqr()) / denom;
    region(center, radius)
}

/// Values of `f(z)` over `f(0) = 0`, `f(z0) = w0`.
///
/// With `u0 = w0 / z0` and `t = T_{-z0}(z)`, the region is the image of
/// `z T_{u0}(t * closed(D))`.
pub fn mercer_disk(z0: UnitDiskPoint, w0: ComplexValue, z: UnitDiskPoint) -> Result<Disk> {
    let u0 = dieudonne_ratio(z0, w0)?.value();
    let z = z.value();
    let t = mobius_raw(-z0.value(), z);
    let t2 = t.norm_sqr();
    let u2 = u0.norm_sqr();
    let denom = 1.0 - u2 * t2;
    let center = z * u0 * (1.0 - t2) / denom;
    let radius = (z * t).norm() * (1.0 - u2) / denom;
    Ok(region(center, radius))
}

/// Values of `f'(z0)` over `f(0) = 0`, `f(z0) = w0`: centre `w0 / z0`, radius
/// `(|z0|^2 - |w0|^2) / (|z0| (1 - |z0|^2))`.
pub fn dieudonne_disk(z0: UnitDiskPoint, w0: ComplexValue) -> Result<Disk> {
    let c1 = dieudonne_ratio(z0, w0)?.value();
    let r = z0.modulus();
    let s = w0.norm();
    let rho1 = (r * r - s * s) / (r * (1.0 - r * r));
    Ok(region(c1, rho1))
}

fn open_value(jet: &Jet2) -> Result<f64> {
    let slack = 1.0 - jet.f0.norm_sqr();
    if slack > 0.0 {
        Ok(slack)
    } else {
        Err(Error::UnimodularValue)
    }
}

/// `D_1 g(z0) = (1 - |z0|^2) g'(z0) / (1 - |g(z0)|^2)` from a jet at `z0`.
pub fn hyperbolic_d1_from_jet(z0: UnitDiskPoint, jet: &Jet2) -> Result<ComplexValue> {
    let g_slack = open_value(jet)?;
    Ok(jet.f1 * (1.0 - z0.value().norm_sqr()) / g_slack)
}

/// `D_2 g(z0)` from a jet at `z0`.
pub fn peschl_d2_from_jet(z0: UnitDiskPoint, jet: &Jet2) -> Result<ComplexValue> {
    let g_slack = open_value(jet)?;
    let z0 = z0.value();
    let z_slack = 1.0 - z0.norm_sqr();
    let bracket = jet.f2 - z0.conj() * jet.f1 * 2.0 / z_slack
        + jet.f0.conj() * jet.f1 * jet.f1 * 2.0 / g_slack;
    Ok(bracket * (z_slack * z_slack / g_slack))
}

/// Solves the `D_2` expression for `g''(z0)` given `g(z0)`, `g'(z0)` and `D_2`.
pub fn second_derivative_from_d2(
    z0: UnitDiskPoint,
    g0: ComplexValue,
    g1: ComplexValue,
    d2: ComplexValue,
) -> Result<ComplexValue> {
    let g_slack = 1.0 - g0.norm_sqr();
    if g_slack <= 0.0 {
        return Err(Error::UnimodularValue);
    }
    let z0 = z0.value();
    let z_slack = 1.0 - z0.norm_sqr();
    Ok(
        d2 * g_slack / (z_slack * z_slack) + z0.conj() * g1 * 2.0 / z_slack
            - g0.conj() * g1 * g1 * 2.0 / g_slack,
    )
}

pub fn hyperbolic_d1(g: &FunctionExpr, z0: UnitDiskPoint) -> Result<ComplexValue> {
    hyperbolic_d1_from_jet(z0, &g.eval_jet(z0)?)
}

pub fn peschl_d2(g: &FunctionExpr, z0: UnitDiskPoint) -> Result<ComplexValue> {
    peschl_d2_from_jet(z0, &g.eval_jet(z0)?)
}

pub fn peschl_derivatives(g: &FunctionExpr, z0: UnitDiskPoint) -> Result<DerivativePair> {
    let jet = g.eval_jet(z0)?;
    Ok(DerivativePair {
        d1: hyperbolic_d1_from_jet(z0, &jet)?,
        d2: peschl_d2_from_jet(z0, &jet)?,
    })
}

/// `H^2 g(z0) = D_2 g(z0) / (2 (1 - |H^1 g(z0)|^2))`.
pub fn hyperbolic_h2(g: &FunctionExpr, z0: UnitDiskPoint) -> Result<ComplexValue> {
    let p = peschl_derivatives(g, z0)?;
    let slack = 1.0 - p.d1.norm_sqr();
    if slack <= H2_DEGENERACY_THRESHOLD {
        return Err(Error::DegreeOneDegeneracy);
    }
    Ok(p.d2 / (2.0 * slack))
}

/// Values of `g''(z0)` over `g(z0) = delta0`, `H^1 g(z0) = delta1`.
///
/// Centre `c2 = 2(1-|delta0|^2)(conj(z0) - conj(delta0) delta1) delta1 / (1-|z0|^2)^2`,
/// radius `rho2 = 2(1-|delta0|^2)(1-|delta1|^2) / (1-|z0|^2)^2`; for
/// `|delta1| = 1` the region collapses to `{c2}`.
pub fn second_derivative_disk(data: &PrescribedData) -> Disk {
    let z0 = data.z0.value();
    let delta0 = data.delta0.value();
    let delta1 = data.delta1.value();
    let scale = 2.0 * (1.0 - delta0.norm_sqr()) / (1.0 - z0.norm_sqr()).powi(2);
    let c2 = (z0.conj() - delta0.conj() * delta1) * delta1 * scale;
    let rho2 = if data.delta1.is_unimodular() {
        0.0
    } else {
        scale * (1.0 - delta1.norm_sqr())
    };
    region(c2, rho2)
}

/// `|c2| + rho2`, the sharp bound on `|g''(z0)|` for the prescribed data.
pub fn modulus_max_second_derivative(data: &PrescribedData) -> f64 {
    second_derivative_disk(data).max_modulus()
}

/// The `alpha` for which `g_{delta1, alpha}` attains `|c2| + rho2`.
pub fn second_derivative_maximizer(data: &PrescribedData) -> AlphaChoice {
    let c2 = second_derivative_disk(data).center;
    if c2 == ZERO {
        AlphaChoice::AnyUnimodular
    } else {
        AlphaChoice::Unique(ClosedDiskPoint::new(c2 / c2.norm()).expect("unit vector"))
    }
}

/// Prescribed data `f(0) = 0`, `f(z0) = w0`, `f'(z0) = w1` where `w1` is
/// generated from `delta1`, the hyperbolic derivative of `f(z)/z` at `z0`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SecondOrderData {
    pub z0: UnitDiskPoint,
    pub w0: ComplexValue,
    pub delta1: ClosedDiskPoint,
    pub w1: ComplexValue,
}

impl SecondOrderData {
    /// `w1 = c1 + rho1 |z0| delta1 / conj(z0)`.
    pub fn new(z0: UnitDiskPoint, w0: ComplexValue, delta1: ClosedDiskPoint) -> Result<Self> {
        let first = dieudonne_disk(z0, w0)?;
        let r = z0.modulus();
        let w1 = first.center + delta1.value() * (first.radius * r) / z0.value().conj();
        Ok(Self { z0, w0, delta1, w1 })
    }

    /// Values of `f''(z0)`; a single point when `|delta1| = 1`.
    pub fn region(&self) -> Disk {
        let z0 = self.z0.value();
        let r = self.z0.modulus();
        let s = self.w0.norm();
        let delta1 = self.delta1.value();
        let spread = r * r - s * s;
        let outer = (1.0 - r * r).powi(2);
        let center = delta1
            * (Complex64::new(1.0, 0.0) - z0 * self.w0.conj() / z0.conj() * delta1)
            * (2.0 * spread / (r * r * outer));
        let radius = if self.delta1.is_unimodular() {
            0.0
        } else {
            2.0 * spread / (r * outer) * (1.0 - delta1.norm_sqr())
        };
        region(center, radius)
    }
}

/// Returns `(w1, region of f''(z0))`.
pub fn second_order_dieudonne_disk(
    z0: UnitDiskPoint,
    w0: ComplexValue,
    delta1: ClosedDiskPoint,
) -> Result<(ComplexValue, Disk)> {
    let data = SecondOrderData::new(z0, w0, delta1)?;
    Ok((data.w1, data.region()))
}

fn region(center: ComplexValue, radius: f64) -> Disk {
    // rounding can leave a vanishing radius slightly negative
    Disk {
        center,
        radius: radius.max(0.0),
    }
}
