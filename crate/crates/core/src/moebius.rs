//! Complex scalars, disk automorphisms and closed disks.
//!
//! The automorphism `T_a(z) = (z + a) / (1 + conj(a) z)` and the
//! pseudo-hyperbolic difference `[z, w] = (z - w) / (1 - conj(w) z)` are the
//! only Möbius maps needed; every variability region is a closed [`Disk`].

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A point of the complex plane.
pub type ComplexValue = Complex64;

/// Tolerance on `| |x| - 1 |` used to decide that a parameter is unimodular.
pub const UNIMODULAR_TOL: f64 = 1e-12;

pub(crate) const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub(crate) const ONE: Complex64 = Complex64::new(1.0, 0.0);

fn check_finite(what: &'static str, z: Complex64) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite { what })
    }
}

/// A point of the open unit disk, `|z| < 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(
    feature = "serde",
    derive(serde::Serialize, serde::Deserialize),
    serde(try_from = "Complex64", into = "Complex64")
)]
pub struct UnitDiskPoint(Complex64);

impl UnitDiskPoint {
    pub fn new(value: Complex64) -> Result<Self> {
        Self::named("point", value)
    }

    /// Like [`UnitDiskPoint::new`] but names the offending argument in the error.
    pub fn named(what: &'static str, value: Complex64) -> Result<Self> {
        check_finite(what, value)?;
        let modulus = value.norm();
        if modulus < 1.0 {
            Ok(Self(value))
        } else {
            Err(Error::NotInOpenDisk { what, modulus })
        }
    }

    pub fn from_re(re: f64) -> Result<Self> {
        Self::new(Complex64::new(re, 0.0))
    }

    pub const fn origin() -> Self {
        Self(ZERO)
    }

    pub fn value(self) -> Complex64 {
        self.0
    }

    pub fn modulus(self) -> f64 {
        self.0.norm()
    }

    pub fn closed(self) -> ClosedDiskPoint {
        ClosedDiskPoint(self.0)
    }
}

impl core::ops::Neg for UnitDiskPoint {
    type Output = Self;

    fn neg(self) -> Self {
        Self(-self.0)
    }
}

impl TryFrom<Complex64> for UnitDiskPoint {
    type Error = Error;

    fn try_from(value: Complex64) -> Result<Self> {
        Self::new(value)
    }
}

impl From<UnitDiskPoint> for Complex64 {
    fn from(p: UnitDiskPoint) -> Self {
        p.0
    }
}

/// A point of the closed unit disk, `|z| <= 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(
    feature = "serde",
    derive(serde::Serialize, serde::Deserialize),
    serde(try_from = "Complex64", into = "Complex64")
)]
pub struct ClosedDiskPoint(Complex64);

impl ClosedDiskPoint {
    pub fn new(value: Complex64) -> Result<Self> {
        Self::named("point", value)
    }

    pub fn named(what: &'static str, value: Complex64) -> Result<Self> {
        check_finite(what, value)?;
        let modulus = value.norm();
        // Unimodular inputs computed as e^{i theta} can overshoot by an ulp.
        if modulus <= 1.0 + UNIMODULAR_TOL {
            Ok(Self(value))
        } else {
            Err(Error::NotInClosedDisk { what, modulus })
        }
    }

    /// `e^{i theta}`.
    pub fn unimodular(theta: f64) -> Self {
        Self(Complex64::from_polar(1.0, theta))
    }

    pub fn from_re(re: f64) -> Result<Self> {
        Self::new(Complex64::new(re, 0.0))
    }

    pub fn value(self) -> Complex64 {
        self.0
    }

    pub fn modulus(self) -> f64 {
        self.0.norm()
    }

    pub fn is_unimodular(self) -> bool {
        (self.modulus() - 1.0).abs() <= UNIMODULAR_TOL
    }

    /// Narrows to the open disk; fails for boundary points.
    pub fn interior(self) -> Result<UnitDiskPoint> {
        UnitDiskPoint::new(self.0)
    }
}

impl TryFrom<Complex64> for ClosedDiskPoint {
    type Error = Error;

    fn try_from(value: Complex64) -> Result<Self> {
        Self::new(value)
    }
}

impl From<ClosedDiskPoint> for Complex64 {
    fn from(p: ClosedDiskPoint) -> Self {
        p.0
    }
}

impl From<UnitDiskPoint> for ClosedDiskPoint {
    fn from(p: UnitDiskPoint) -> Self {
        p.closed()
    }
}

/// `T_a(z)` on raw values; callers guarantee `1 + conj(a) z != 0`.
#[inline]
pub(crate) fn mobius_raw(a: Complex64, z: Complex64) -> Complex64 {
    (z + a) / (ONE + a.conj() * z)
}

/// `[z, w]` on raw values.
#[inline]
pub(crate) fn bracket_raw(z: Complex64, w: Complex64) -> Complex64 {
    (z - w) / (ONE - w.conj() * z)
}

/// The disk automorphism `T_a(z) = (z + a) / (1 + conj(a) z)`.
pub fn mobius_t(a: UnitDiskPoint, z: ClosedDiskPoint) -> ComplexValue {
    mobius_raw(a.0, z.0)
}

/// `T_a^{-1}(w) = T_{-a}(w)`.
pub fn mobius_t_inverse(a: UnitDiskPoint, w: ClosedDiskPoint) -> ComplexValue {
    mobius_raw(-a.0, w.0)
}

/// The pseudo-hyperbolic difference `[z, w] = (z - w) / (1 - conj(w) z)`.
pub fn hyperbolic_bracket(z: ClosedDiskPoint, w: UnitDiskPoint) -> ComplexValue {
    if z.0 == w.0 {
        return ZERO;
    }
    bracket_raw(z.0, w.0)
}

/// `[z, w]` with the boundary extension `[z, z] = 0` for `|z| = 1`.
///
/// For `z != w` with `|w| = 1` the bracket is undefined and rejected.
pub fn hyperbolic_bracket_extended(z: ClosedDiskPoint, w: ClosedDiskPoint) -> Result<ComplexValue> {
    if z.0 == w.0 {
        return Ok(ZERO);
    }
    let w = UnitDiskPoint::named("w", w.0)?;
    Ok(hyperbolic_bracket(z, w))
}

/// A closed disk `{ p : |p - center| <= radius }`. Radius zero is a single point.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Disk {
    pub center: ComplexValue,
    pub radius: f64,
}

impl Disk {
    pub fn new(center: ComplexValue, radius: f64) -> Result<Self> {
        check_finite("center", center)?;
        if !radius.is_finite() {
            return Err(Error::NonFinite { what: "radius" });
        }
        if radius < 0.0 {
            return Err(Error::Precondition("disk radius must be non-negative"));
        }
        Ok(Self { center, radius })
    }

    /// The degenerate disk `{center}`.
    pub fn point(center: ComplexValue) -> Self {
        Self {
            center,
            radius: 0.0,
        }
    }

    /// Membership with relative slack: `|p - c| <= radius + tol (1 + radius)`.
    pub fn contains(&self, p: ComplexValue, tol: f64) -> bool {
        (p - self.center).norm() <= self.radius + tol * (1.0 + self.radius)
    }

    /// `radius - |p - center|`: positive inside, zero on the boundary.
    pub fn margin(&self, p: ComplexValue) -> f64 {
        self.radius - (p - self.center).norm()
    }

    /// Largest modulus over the disk, `|center| + radius`.
    pub fn max_modulus(&self) -> f64 {
        self.center.norm() + self.radius
    }
}

/// Free-function form of [`Disk::contains`].
pub fn disk_contains(d: &Disk, p: ComplexValue, tol: f64) -> bool {
    d.contains(p, tol)
}
