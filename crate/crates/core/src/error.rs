use core::fmt;

/// Failures raised by the disk, jet and function-tree operations.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A component was NaN or infinite.
    NonFinite { what: &'static str },
    /// A point required to lie in the open unit disk had modulus `>= 1`.
    NotInOpenDisk { what: &'static str, modulus: f64 },
    /// A point required to lie in the closed unit disk had modulus `> 1`.
    NotInClosedDisk { what: &'static str, modulus: f64 },
    /// A point required to be unimodular was not.
    NotUnimodular { what: &'static str, modulus: f64 },
    /// A stated precondition between several inputs does not hold.
    Precondition(&'static str),
    /// Division by a jet (or value) whose constant part vanishes.
    ZeroDivisor,
    /// `|g(z0)| = 1`: the hyperbolic functionals are undefined.
    UnimodularValue,
    /// `1 - |H^1 g(z0)|^2` is below the degeneracy threshold, so `g` is a
    /// Blaschke product of degree at most one.
    DegreeOneDegeneracy,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonFinite { what } => write!(f, "{what} must be finite"),
            Error::NotInOpenDisk { what, modulus } => {
                write!(
                    f,
                    "{what} must satisfy |{what}| < 1 (got modulus {modulus})"
                )
            }
            Error::NotInClosedDisk { what, modulus } => {
                write!(
                    f,
                    "{what} must satisfy |{what}| <= 1 (got modulus {modulus})"
                )
            }
            Error::NotUnimodular { what, modulus } => {
                write!(
                    f,
                    "{what} must satisfy |{what}| = 1 (got modulus {modulus})"
                )
            }
            Error::Precondition(msg) => f.write_str(msg),
            Error::ZeroDivisor => f.write_str("division by a jet with zero value part"),
            Error::UnimodularValue => {
                f.write_str("|g(z0)| = 1: hyperbolic derivatives are undefined")
            }
            Error::DegreeOneDegeneracy => f.write_str(
                "1 - |H1 g(z0)|^2 vanishes: g is a Blaschke product of degree at most one",
            ),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
