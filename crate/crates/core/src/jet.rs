//! Second-order jets: `(f, f', f'')` at an implicit base point.
//!
//! Jets carry no record of their base point; combining jets taken at
//! different points is meaningless and must be avoided by the caller.

use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::moebius::{UnitDiskPoint, ONE, ZERO};

/// Truncated Taylor data `(f(z0), f'(z0), f''(z0))`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Jet2 {
    pub f0: Complex64,
    pub f1: Complex64,
    pub f2: Complex64,
}

impl Jet2 {
    pub const fn new(f0: Complex64, f1: Complex64, f2: Complex64) -> Self {
        Self { f0, f1, f2 }
    }

    pub const fn constant(c: Complex64) -> Self {
        Self::new(c, ZERO, ZERO)
    }

    /// Jet of the identity map at `z0`.
    pub const fn variable(z0: Complex64) -> Self {
        Self::new(z0, ONE, ZERO)
    }

    pub fn scale(self, k: Complex64) -> Self {
        Self::new(self.f0 * k, self.f1 * k, self.f2 * k)
    }

    /// Quotient rule truncated at order two; fails when `den.f0 == 0`.
    pub fn try_div(self, den: Jet2) -> Result<Jet2> {
        if den.f0 == ZERO {
            return Err(Error::ZeroDivisor);
        }
        let inv = ONE / den.f0;
        let q0 = self.f0 * inv;
        let q1 = (self.f1 - q0 * den.f1) * inv;
        let q2 = (self.f2 - q0 * den.f2 - q1 * den.f1 * 2.0) * inv;
        Ok(Jet2::new(q0, q1, q2))
    }

    /// Composes `outer` (a jet at `self.f0`) after `self`.
    pub fn compose(outer: Jet2, inner: Jet2) -> Jet2 {
        Jet2::new(
            outer.f0,
            outer.f1 * inner.f1,
            outer.f2 * inner.f1 * inner.f1 + outer.f1 * inner.f2,
        )
    }

    pub fn is_finite(&self) -> bool {
        [self.f0, self.f1, self.f2]
            .iter()
            .all(|c| c.re.is_finite() && c.im.is_finite())
    }
}

impl Add for Jet2 {
    type Output = Jet2;

    fn add(self, rhs: Jet2) -> Jet2 {
        Jet2::new(self.f0 + rhs.f0, self.f1 + rhs.f1, self.f2 + rhs.f2)
    }
}

impl Sub for Jet2 {
    type Output = Jet2;

    fn sub(self, rhs: Jet2) -> Jet2 {
        Jet2::new(self.f0 - rhs.f0, self.f1 - rhs.f1, self.f2 - rhs.f2)
    }
}

impl Neg for Jet2 {
    type Output = Jet2;

    fn neg(self) -> Jet2 {
        Jet2::new(-self.f0, -self.f1, -self.f2)
    }
}

impl Mul for Jet2 {
    type Output = Jet2;

    // (fg)'' = f''g + 2f'g' + fg''
    fn mul(self, rhs: Jet2) -> Jet2 {
        Jet2::new(
            self.f0 * rhs.f0,
            self.f1 * rhs.f0 + self.f0 * rhs.f1,
            self.f2 * rhs.f0 + self.f1 * rhs.f1 * 2.0 + self.f0 * rhs.f2,
        )
    }
}

pub fn jet_add(a: Jet2, b: Jet2) -> Jet2 {
    a + b
}

pub fn jet_mul(a: Jet2, b: Jet2) -> Jet2 {
    a * b
}

pub fn jet_div(a: Jet2, b: Jet2) -> Result<Jet2> {
    a.try_div(b)
}

/// Pushes a jet through `T_a`: `(x + a) / (1 + conj(a) x)`.
pub fn jet_mobius(a: UnitDiskPoint, x: Jet2) -> Result<Jet2> {
    jet_mobius_raw(a.value(), x)
}

pub(crate) fn jet_mobius_raw(a: Complex64, x: Jet2) -> Result<Jet2> {
    let num = x + Jet2::constant(a);
    let den = Jet2::constant(ONE) + x.scale(a.conj());
    num.try_div(den)
}

/// Pushes a jet through `[., w]`: `(x - w) / (1 - conj(w) x)`.
pub(crate) fn jet_bracket_raw(x: Jet2, w: Complex64) -> Result<Jet2> {
    let num = x - Jet2::constant(w);
    let den = Jet2::constant(ONE) - x.scale(w.conj());
    num.try_div(den)
}
