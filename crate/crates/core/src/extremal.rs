//! Constructors for the functions attaining each region boundary or bound.

use num_complex::Complex64;

use crate::bounds::{szasz_bound, theorem31_bound, BoundBranch};
use crate::disks::{
    dieudonne_disk, hyperbolic_d1_from_jet, schwarz_pick_disk, second_derivative_disk,
    SecondOrderData,
};
use crate::error::{Error, Result};
use crate::function::{dieudonne_ratio, FunctionExpr, PrescribedData};
use crate::jet::Jet2;
use crate::moebius::{ClosedDiskPoint, ComplexValue, Disk, UnitDiskPoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum ExtremalKind {
    SchwarzPickAuto,
    DieudonneBoundary,
    Thm21Degenerate,
    Thm21Boundary,
    Cor22Degenerate,
    Cor22Boundary,
    Thm31Deg1,
    Thm31Deg2,
    SzaszExtremal,
}

impl ExtremalKind {
    pub const ALL: [ExtremalKind; 9] = [
        ExtremalKind::SchwarzPickAuto,
        ExtremalKind::DieudonneBoundary,
        ExtremalKind::Thm21Degenerate,
        ExtremalKind::Thm21Boundary,
        ExtremalKind::Cor22Degenerate,
        ExtremalKind::Cor22Boundary,
        ExtremalKind::Thm31Deg1,
        ExtremalKind::Thm31Deg2,
        ExtremalKind::SzaszExtremal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ExtremalKind::SchwarzPickAuto => "schwarz-pick-auto",
            ExtremalKind::DieudonneBoundary => "dieudonne-boundary",
            ExtremalKind::Thm21Degenerate => "thm21-degenerate",
            ExtremalKind::Thm21Boundary => "thm21-boundary",
            ExtremalKind::Cor22Degenerate => "cor22-degenerate",
            ExtremalKind::Cor22Boundary => "cor22-boundary",
            ExtremalKind::Thm31Deg1 => "thm31-deg1",
            ExtremalKind::Thm31Deg2 => "thm31-deg2",
            ExtremalKind::SzaszExtremal => "szasz",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == name)
    }
}

/// An extremal function together with the parameters that pin it down.
///
/// `alpha` may lie anywhere in the closed disk: `|alpha| = 1` gives the
/// boundary function, `|alpha| < 1` an interior point of the same region.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Extremal {
    /// `T_{delta0}(alpha T_{-z0}(z))`
    SchwarzPickAuto {
        z0: UnitDiskPoint,
        delta0: UnitDiskPoint,
        alpha: ClosedDiskPoint,
    },
    /// `z T_{u0}(alpha T_{-z0}(z))`, `u0 = w0 / z0`
    DieudonneBoundary {
        z0: UnitDiskPoint,
        w0: ComplexValue,
        alpha: ClosedDiskPoint,
    },
    /// `T_{delta0}(delta1 T_{-z0}(z))` with `|delta1| = 1`
    Thm21Degenerate {
        z0: UnitDiskPoint,
        delta0: UnitDiskPoint,
        delta1: ClosedDiskPoint,
    },
    /// `T_{delta0}(T_{-z0}(z) T_{delta1}(alpha T_{-z0}(z)))`
    Thm21Boundary {
        z0: UnitDiskPoint,
        delta0: UnitDiskPoint,
        delta1: UnitDiskPoint,
        alpha: ClosedDiskPoint,
    },
    /// `z T_{u0}(delta1 T_{-z0}(z))` with `|delta1| = 1`
    Cor22Degenerate {
        z0: UnitDiskPoint,
        w0: ComplexValue,
        delta1: ClosedDiskPoint,
    },
    /// `z T_{u0}(T_{-z0}(z) T_{delta1}(alpha T_{-z0}(z)))`
    Cor22Boundary {
        z0: UnitDiskPoint,
        w0: ComplexValue,
        delta1: UnitDiskPoint,
        alpha: ClosedDiskPoint,
    },
    /// `e^{i theta}(z - a)/(1 - conj(a) z)`, extremal when `r + 2R >= 2`.
    Thm31Deg1 {
        z0: UnitDiskPoint,
        delta0: UnitDiskPoint,
    },
    /// Degree-two extremal when `r + 2R < 2`. `theta` is only used where the
    /// extremal is not unique: as the rotation of `z^2` when `z0 = 0`, and as
    /// the phase of `alpha` when `delta0 = 0`.
    Thm31Deg2 {
        z0: UnitDiskPoint,
        delta0: UnitDiskPoint,
        theta: f64,
    },
    /// `e^{i theta}(8u^2 + 4 z0 u - z0^2)/(8 + 4 conj(z0) u - conj(z0)^2 u^2)`,
    /// `u = T_{-z0}(z)`.
    SzaszExtremal { z0: UnitDiskPoint, theta: f64 },
}

/// What an extremal function is expected to attain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Attainment {
    /// The measured derivative lies on the boundary circle (or equals the
    /// centre for radius zero).
    Boundary(Disk),
    /// `|g''(z0)|` equals the bound.
    Bound(f64),
}

/// Measurements of an extremal function at its expansion point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AttainmentReport {
    pub kind: ExtremalKind,
    pub jet: Jet2,
    /// The derivative the region or bound speaks about.
    pub measured: ComplexValue,
    /// `radius - |measured - center|` for disks, `bound - |g''|` for bounds.
    /// Positive means strictly inside.
    pub margin: f64,
    /// Largest deviation from the interpolation data the function must meet.
    pub interpolation_error: f64,
    pub passed: bool,
}

fn check_unimodular(what: &'static str, p: ClosedDiskPoint) -> Result<()> {
    if p.is_unimodular() {
        Ok(())
    } else {
        Err(Error::NotUnimodular {
            what,
            modulus: p.modulus(),
        })
    }
}

fn rational_roots(z0: Complex64, r: f64, big_r: f64) -> (Complex64, Complex64) {
    // roots of u^2 + (z0/2) u - (R/r^2) z0^2, written to avoid cancellation
    let s = (r * r + 16.0 * big_r).sqrt();
    let dir = z0 / r;
    (dir * ((s - r) / 4.0), dir * (-(s + r) / 4.0))
}

/// `e^{i theta} [u, u1][u, u2]` with `u = T_{-z0}(z)`.
fn degree_two_rational(z0: UnitDiskPoint, r: f64, big_r: f64, theta: f64) -> Result<FunctionExpr> {
    let (u1, u2) = rational_roots(z0.value(), r, big_r);
    let factor = |w| -> Result<FunctionExpr> {
        Ok(FunctionExpr::Identity.bracket(UnitDiskPoint::named("rational zero", w)?))
    };
    let outer = factor(u1)?.times(factor(u2)?).rotate(theta);
    Ok(outer.after(FunctionExpr::centered_at(z0)))
}

fn z_squared() -> FunctionExpr {
    FunctionExpr::Identity.times(FunctionExpr::Identity)
}

impl Extremal {
    pub fn kind(&self) -> ExtremalKind {
        match self {
            Extremal::SchwarzPickAuto { .. } => ExtremalKind::SchwarzPickAuto,
            Extremal::DieudonneBoundary { .. } => ExtremalKind::DieudonneBoundary,
            Extremal::Thm21Degenerate { .. } => ExtremalKind::Thm21Degenerate,
            Extremal::Thm21Boundary { .. } => ExtremalKind::Thm21Boundary,
            Extremal::Cor22Degenerate { .. } => ExtremalKind::Cor22Degenerate,
            Extremal::Cor22Boundary { .. } => ExtremalKind::Cor22Boundary,
            Extremal::Thm31Deg1 { .. } => ExtremalKind::Thm31Deg1,
            Extremal::Thm31Deg2 { .. } => ExtremalKind::Thm31Deg2,
            Extremal::SzaszExtremal { .. } => ExtremalKind::SzaszExtremal,
        }
    }

    /// The point at which the function is extremal.
    pub fn z0(&self) -> UnitDiskPoint {
        match *self {
            Extremal::SchwarzPickAuto { z0, .. }
            | Extremal::DieudonneBoundary { z0, .. }
            | Extremal::Thm21Degenerate { z0, .. }
            | Extremal::Thm21Boundary { z0, .. }
            | Extremal::Cor22Degenerate { z0, .. }
            | Extremal::Cor22Boundary { z0, .. }
            | Extremal::Thm31Deg1 { z0, .. }
            | Extremal::Thm31Deg2 { z0, .. }
            | Extremal::SzaszExtremal { z0, .. } => z0,
        }
    }

    /// Builds the function tree, checking each kind's constraints.
    pub fn build(&self) -> Result<FunctionExpr> {
        match *self {
            Extremal::SchwarzPickAuto { z0, delta0, alpha } => Ok(FunctionExpr::centered_at(z0)
                .rotate_by(alpha)
                .mobius(delta0)),
            Extremal::DieudonneBoundary { z0, w0, alpha } => {
                let u0 = dieudonne_ratio(z0, w0)?;
                let inner = FunctionExpr::centered_at(z0).rotate_by(alpha).mobius(u0);
                Ok(FunctionExpr::Identity.times(inner))
            }
            Extremal::Thm21Degenerate { z0, delta0, delta1 } => {
                check_unimodular("delta1", delta1)?;
                Ok(FunctionExpr::centered_at(z0)
                    .rotate_by(delta1)
                    .mobius(delta0))
            }
            Extremal::Thm21Boundary {
                z0,
                delta0,
                delta1,
                alpha,
            } => {
                let u = FunctionExpr::centered_at(z0);
                let inner = u.clone().rotate_by(alpha).mobius(delta1);
                Ok(u.times(inner).mobius(delta0))
            }
            Extremal::Cor22Degenerate { z0, w0, delta1 } => {
                check_unimodular("delta1", delta1)?;
                let u0 = dieudonne_ratio(z0, w0)?;
                let inner = FunctionExpr::centered_at(z0).rotate_by(delta1).mobius(u0);
                Ok(FunctionExpr::Identity.times(inner))
            }
            Extremal::Cor22Boundary {
                z0,
                w0,
                delta1,
                alpha,
            } => {
                let u0 = dieudonne_ratio(z0, w0)?;
                let u = FunctionExpr::centered_at(z0);
                let inner = u.clone().rotate_by(alpha).mobius(delta1);
                Ok(FunctionExpr::Identity.times(u.times(inner).mobius(u0)))
            }
            Extremal::Thm31Deg1 { z0, delta0 } => {
                let r = z0.modulus();
                let big_r = delta0.modulus();
                if theorem31_bound(r, big_r)?.branch != BoundBranch::RR2 {
                    return Err(Error::Precondition("thm31-deg1 requires r + 2R >= 2"));
                }
                let a = z0.value() * ((r + big_r) / (r * (1.0 + r * big_r)));
                let theta = (-z0.value().conj() * delta0.value()).arg();
                Ok(FunctionExpr::Identity
                    .bracket(UnitDiskPoint::named("a", a)?)
                    .rotate(theta))
            }
            Extremal::Thm31Deg2 { z0, delta0, theta } => {
                let r = z0.modulus();
                let big_r = delta0.modulus();
                if theorem31_bound(r, big_r)?.branch == BoundBranch::RR2 {
                    return Err(Error::Precondition("thm31-deg2 requires r + 2R < 2"));
                }
                if r == 0.0 {
                    return Ok(z_squared().rotate(theta).mobius(delta0));
                }
                if big_r == 0.0 {
                    // T_{-z0}(z) T_{delta1}(alpha T_{-z0}(z)), delta1 = alpha z0 / 2
                    let alpha = ClosedDiskPoint::unimodular(theta);
                    let delta1 = UnitDiskPoint::named("delta1", alpha.value() * z0.value() / 2.0)?;
                    let u = FunctionExpr::centered_at(z0);
                    return Ok(u.clone().times(u.rotate_by(alpha).mobius(delta1)));
                }
                let theta = (-z0.value().conj() * z0.value().conj() * delta0.value()).arg();
                degree_two_rational(z0, r, big_r, theta)
            }
            Extremal::SzaszExtremal { z0, theta } => {
                let r = z0.modulus();
                if r == 0.0 {
                    return Ok(z_squared().rotate(theta));
                }
                degree_two_rational(z0, r, r * r / 8.0, theta)
            }
        }
    }

    /// The region or bound the function should attain, from the closed forms.
    pub fn predicted(&self) -> Result<Attainment> {
        Ok(match *self {
            Extremal::SchwarzPickAuto { z0, delta0, .. } => {
                Attainment::Boundary(schwarz_pick_disk(z0, delta0))
            }
            Extremal::DieudonneBoundary { z0, w0, .. } => {
                Attainment::Boundary(dieudonne_disk(z0, w0)?)
            }
            Extremal::Thm21Degenerate { z0, delta0, delta1 } => {
                Attainment::Boundary(second_derivative_disk(&PrescribedData {
                    z0,
                    delta0,
                    delta1,
                }))
            }
            Extremal::Thm21Boundary {
                z0, delta0, delta1, ..
            } => Attainment::Boundary(second_derivative_disk(&PrescribedData {
                z0,
                delta0,
                delta1: delta1.closed(),
            })),
            Extremal::Cor22Degenerate { z0, w0, delta1 } => {
                Attainment::Boundary(SecondOrderData::new(z0, w0, delta1)?.region())
            }
            Extremal::Cor22Boundary { z0, w0, delta1, .. } => {
                Attainment::Boundary(SecondOrderData::new(z0, w0, delta1.closed())?.region())
            }
            Extremal::Thm31Deg1 { z0, delta0 } | Extremal::Thm31Deg2 { z0, delta0, .. } => {
                Attainment::Bound(theorem31_bound(z0.modulus(), delta0.modulus())?.value)
            }
            Extremal::SzaszExtremal { z0, .. } => {
                Attainment::Bound(szasz_bound(z0.modulus())?.value)
            }
        })
    }

    /// Deviation of the jet from the interpolation data of this kind.
    fn interpolation_error(&self, jet: &Jet2) -> Result<f64> {
        let z0 = self.z0();
        Ok(match *self {
            Extremal::SchwarzPickAuto { delta0, .. }
            | Extremal::Thm31Deg1 { delta0, .. }
            | Extremal::Thm31Deg2 { delta0, .. } => (jet.f0 - delta0.value()).norm(),
            Extremal::DieudonneBoundary { w0, .. } => (jet.f0 - w0).norm(),
            Extremal::Thm21Degenerate { delta0, delta1, .. } => {
                let h1 = hyperbolic_d1_from_jet(z0, jet)?;
                (jet.f0 - delta0.value())
                    .norm()
                    .max((h1 - delta1.value()).norm())
            }
            Extremal::Thm21Boundary { delta0, delta1, .. } => {
                let h1 = hyperbolic_d1_from_jet(z0, jet)?;
                (jet.f0 - delta0.value())
                    .norm()
                    .max((h1 - delta1.value()).norm())
            }
            Extremal::Cor22Degenerate { w0, delta1, .. } => {
                let w1 = SecondOrderData::new(z0, w0, delta1)?.w1;
                (jet.f0 - w0).norm().max((jet.f1 - w1).norm())
            }
            Extremal::Cor22Boundary { w0, delta1, .. } => {
                let w1 = SecondOrderData::new(z0, w0, delta1.closed())?.w1;
                (jet.f0 - w0).norm().max((jet.f1 - w1).norm())
            }
            // |g(z0)| = r^2 / 8 with free phase
            Extremal::SzaszExtremal { .. } => {
                let r = z0.modulus();
                (jet.f0.norm() - r * r / 8.0).abs()
            }
        })
    }

    fn measured(&self, jet: &Jet2) -> ComplexValue {
        match self.kind() {
            ExtremalKind::SchwarzPickAuto | ExtremalKind::DieudonneBoundary => jet.f1,
            _ => jet.f2,
        }
    }
}

trait RotateBy {
    fn rotate_by(self, alpha: ClosedDiskPoint) -> FunctionExpr;
}

impl RotateBy for FunctionExpr {
    /// `alpha * self` for a constant `alpha` in the closed disk.
    fn rotate_by(self, alpha: ClosedDiskPoint) -> FunctionExpr {
        FunctionExpr::constant(alpha).times(self)
    }
}

pub fn make_extremal(extremal: &Extremal) -> Result<FunctionExpr> {
    extremal.build()
}

/// Builds the extremal function, measures its jet at `z0` and compares with
/// `expected` at relative tolerance `tol`: `| |p - c| - rho | <= tol (1 + rho)`
/// for disks, `| |g''| - B | <= tol B` for bounds.
pub fn verify_attainment(
    extremal: &Extremal,
    expected: Attainment,
    tol: f64,
) -> Result<AttainmentReport> {
    let f = extremal.build()?;
    let jet = f.eval_jet(extremal.z0())?;
    let measured = extremal.measured(&jet);
    let interpolation_error = extremal.interpolation_error(&jet)?;
    let (margin, scale) = match expected {
        Attainment::Boundary(d) => (d.margin(measured), 1.0 + d.radius),
        Attainment::Bound(b) => (b - measured.norm(), b),
    };
    let passed = margin.abs() <= tol * scale && interpolation_error <= tol * (1.0 + scale);
    Ok(AttainmentReport {
        kind: extremal.kind(),
        jet,
        measured,
        margin,
        interpolation_error,
        passed,
    })
}
