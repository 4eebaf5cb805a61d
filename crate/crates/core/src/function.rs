//! Analytic self-maps of the disk as composition trees.

use alloc::boxed::Box;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::jet::{jet_bracket_raw, jet_mobius_raw, Jet2};
use crate::moebius::{bracket_raw, mobius_raw, ClosedDiskPoint, ComplexValue, UnitDiskPoint, ONE};

/// A closed expression tree over disk self-maps.
///
/// Every constructor keeps the tree a map `D -> closed(D)`: constants live in
/// the closed disk and each node is a product or composition of self-maps.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(
    feature = "serde",
    derive(serde::Serialize, serde::Deserialize),
    serde(tag = "node", rename_all = "snake_case")
)]
pub enum FunctionExpr {
    Identity,
    Constant {
        c: ClosedDiskPoint,
    },
    /// `e^{i theta} child(z)`
    Rotation {
        theta: f64,
        child: Box<FunctionExpr>,
    },
    /// `T_a(child(z))`
    MobiusT {
        a: UnitDiskPoint,
        child: Box<FunctionExpr>,
    },
    Product {
        left: Box<FunctionExpr>,
        right: Box<FunctionExpr>,
    },
    /// `outer(inner(z))`
    Compose {
        outer: Box<FunctionExpr>,
        inner: Box<FunctionExpr>,
    },
    /// `[child(z), w]`
    Bracket {
        w: UnitDiskPoint,
        child: Box<FunctionExpr>,
    },
}

impl FunctionExpr {
    pub fn identity() -> Self {
        FunctionExpr::Identity
    }

    pub fn constant(c: ClosedDiskPoint) -> Self {
        FunctionExpr::Constant { c }
    }

    /// `T_{-z0}(z)`, the automorphism sending `z0` to the origin.
    pub fn centered_at(z0: UnitDiskPoint) -> Self {
        FunctionExpr::Identity.mobius(-z0)
    }

    pub fn rotate(self, theta: f64) -> Self {
        FunctionExpr::Rotation {
            theta,
            child: Box::new(self),
        }
    }

    /// `T_a(self)`.
    pub fn mobius(self, a: UnitDiskPoint) -> Self {
        FunctionExpr::MobiusT {
            a,
            child: Box::new(self),
        }
    }

    /// `[self, w]`.
    pub fn bracket(self, w: UnitDiskPoint) -> Self {
        FunctionExpr::Bracket {
            w,
            child: Box::new(self),
        }
    }

    pub fn times(self, rhs: FunctionExpr) -> Self {
        FunctionExpr::Product {
            left: Box::new(self),
            right: Box::new(rhs),
        }
    }

    /// `self(inner(z))`.
    pub fn after(self, inner: FunctionExpr) -> Self {
        FunctionExpr::Compose {
            outer: Box::new(self),
            inner: Box::new(inner),
        }
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        match self {
            FunctionExpr::Identity | FunctionExpr::Constant { .. } => 1,
            FunctionExpr::Rotation { child, .. }
            | FunctionExpr::MobiusT { child, .. }
            | FunctionExpr::Bracket { child, .. } => 1 + child.size(),
            FunctionExpr::Product { left, right } => 1 + left.size() + right.size(),
            FunctionExpr::Compose { outer, inner } => 1 + outer.size() + inner.size(),
        }
    }

    fn value_at(&self, z: Complex64) -> Result<Complex64> {
        let v = match self {
            FunctionExpr::Identity => z,
            FunctionExpr::Constant { c } => c.value(),
            FunctionExpr::Rotation { theta, child } => {
                Complex64::from_polar(1.0, *theta) * child.value_at(z)?
            }
            FunctionExpr::MobiusT { a, child } => {
                let x = child.value_at(z)?;
                if ONE + a.value().conj() * x == Complex64::new(0.0, 0.0) {
                    return Err(Error::ZeroDivisor);
                }
                mobius_raw(a.value(), x)
            }
            FunctionExpr::Product { left, right } => left.value_at(z)? * right.value_at(z)?,
            FunctionExpr::Compose { outer, inner } => outer.value_at(inner.value_at(z)?)?,
            FunctionExpr::Bracket { w, child } => {
                let x = child.value_at(z)?;
                if ONE - w.value().conj() * x == Complex64::new(0.0, 0.0) {
                    return Err(Error::ZeroDivisor);
                }
                bracket_raw(x, w.value())
            }
        };
        Ok(v)
    }

    fn jet_at(&self, x: Jet2) -> Result<Jet2> {
        match self {
            FunctionExpr::Identity => Ok(x),
            FunctionExpr::Constant { c } => Ok(Jet2::constant(c.value())),
            FunctionExpr::Rotation { theta, child } => {
                Ok(child.jet_at(x)?.scale(Complex64::from_polar(1.0, *theta)))
            }
            FunctionExpr::MobiusT { a, child } => jet_mobius_raw(a.value(), child.jet_at(x)?),
            FunctionExpr::Product { left, right } => Ok(left.jet_at(x)? * right.jet_at(x)?),
            FunctionExpr::Compose { outer, inner } => outer.jet_at(inner.jet_at(x)?),
            FunctionExpr::Bracket { w, child } => jet_bracket_raw(child.jet_at(x)?, w.value()),
        }
    }

    /// Evaluates the tree at a point of the open disk.
    pub fn eval(&self, z: UnitDiskPoint) -> Result<ComplexValue> {
        let v = self.value_at(z.value())?;
        if v.re.is_finite() && v.im.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite {
                what: "function value",
            })
        }
    }

    /// `(g(z0), g'(z0), g''(z0))`.
    pub fn eval_jet(&self, z0: UnitDiskPoint) -> Result<Jet2> {
        let j = self.jet_at(Jet2::variable(z0.value()))?;
        if j.is_finite() {
            Ok(j)
        } else {
            Err(Error::NonFinite {
                what: "function jet",
            })
        }
    }
}

pub fn eval(f: &FunctionExpr, z: UnitDiskPoint) -> Result<ComplexValue> {
    f.eval(z)
}

pub fn eval_jet(f: &FunctionExpr, z0: UnitDiskPoint) -> Result<Jet2> {
    f.eval_jet(z0)
}

/// The interpolation data `g(z0) = delta0`, `H^1 g(z0) = delta1`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PrescribedData {
    pub z0: UnitDiskPoint,
    pub delta0: UnitDiskPoint,
    pub delta1: ClosedDiskPoint,
}

impl PrescribedData {
    pub fn new(z0: ComplexValue, delta0: ComplexValue, delta1: ComplexValue) -> Result<Self> {
        Ok(Self {
            z0: UnitDiskPoint::named("z0", z0)?,
            delta0: UnitDiskPoint::named("delta0", delta0)?,
            delta1: ClosedDiskPoint::named("delta1", delta1)?,
        })
    }

    /// `g'(z0) = (1 - |delta0|^2) delta1 / (1 - |z0|^2)`.
    pub fn first_derivative(&self) -> ComplexValue {
        self.delta1.value()
            * ((1.0 - self.delta0.value().norm_sqr()) / (1.0 - self.z0.value().norm_sqr()))
    }
}

/// `T_{delta0}( T_{-z0}(z) T_{delta1}( T_{-z0}(z) g*(z) ) )`.
///
/// Every function with the prescribed data arises this way for some `g*` in
/// the Schur class; requires `|delta1| < 1`.
pub fn schur_parametrize(data: &PrescribedData, gstar: FunctionExpr) -> Result<FunctionExpr> {
    let delta1 = UnitDiskPoint::named("delta1", data.delta1.value())?;
    let u = FunctionExpr::centered_at(data.z0);
    let inner = u.clone().times(gstar).mobius(delta1);
    Ok(u.times(inner).mobius(data.delta0))
}

/// `u0 = w0 / z0` after checking `z0 != 0` and `|w0| < |z0|`.
pub(crate) fn dieudonne_ratio(z0: UnitDiskPoint, w0: ComplexValue) -> Result<UnitDiskPoint> {
    if z0.value() == Complex64::new(0.0, 0.0) {
        return Err(Error::Precondition("z0 must be non-zero"));
    }
    if !(w0.re.is_finite() && w0.im.is_finite()) {
        return Err(Error::NonFinite { what: "w0" });
    }
    if w0.norm() >= z0.modulus() {
        return Err(Error::Precondition("|w0| must be less than |z0|"));
    }
    UnitDiskPoint::named("w0/z0", w0 / z0.value())
}

/// `z T_{u0}( T_{-z0}(z) f*(z) )` with `u0 = w0 / z0`: all `f` with
/// `f(0) = 0`, `f(z0) = w0`.
pub fn dieudonne_parametrize(
    z0: UnitDiskPoint,
    w0: ComplexValue,
    fstar: FunctionExpr,
) -> Result<FunctionExpr> {
    let u0 = dieudonne_ratio(z0, w0)?;
    let inner = FunctionExpr::centered_at(z0).times(fstar).mobius(u0);
    Ok(FunctionExpr::Identity.times(inner))
}
