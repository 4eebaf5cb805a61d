//! Double-double complex evaluation of expression trees, used as a
//! finite-difference oracle. Second differences at `h = 1e-5` in plain f64
//! lose about `eps / h^2 ~ 1e-6` to cancellation; at ~32 digits they do not.

#![allow(dead_code)]

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;
use schwarz::FunctionExpr;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

impl Add for Dd {
    type Output = Dd;

    fn add(self, b: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Dd { hi, lo }
    }
}

impl Neg for Dd {
    type Output = Dd;

    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Sub for Dd {
    type Output = Dd;

    fn sub(self, b: Dd) -> Dd {
        self + -b
    }
}

impl Mul for Dd {
    type Output = Dd;

    fn mul(self, b: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, b.hi);
        let (hi, lo) = quick_two_sum(p, e + (self.hi * b.lo + self.lo * b.hi));
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;

    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self - b * Dd::from_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b * Dd::from_f64(q2);
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo } + Dd::from_f64(q3)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DdComplex {
    pub re: Dd,
    pub im: Dd,
}

impl DdComplex {
    pub fn from_c64(z: Complex64) -> Self {
        Self {
            re: Dd::from_f64(z.re),
            im: Dd::from_f64(z.im),
        }
    }

    pub fn to_c64(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn one() -> Self {
        Self {
            re: Dd::ONE,
            im: Dd::ZERO,
        }
    }

    pub fn conj(self) -> Self {
        Self {
            re: self.re,
            im: -self.im,
        }
    }

    pub fn scale(self, s: Dd) -> Self {
        Self {
            re: self.re * s,
            im: self.im * s,
        }
    }
}

impl Add for DdComplex {
    type Output = Self;

    fn add(self, b: Self) -> Self {
        Self {
            re: self.re + b.re,
            im: self.im + b.im,
        }
    }
}

impl Sub for DdComplex {
    type Output = Self;

    fn sub(self, b: Self) -> Self {
        Self {
            re: self.re - b.re,
            im: self.im - b.im,
        }
    }
}

impl Mul for DdComplex {
    type Output = Self;

    fn mul(self, b: Self) -> Self {
        Self {
            re: self.re * b.re - self.im * b.im,
            im: self.re * b.im + self.im * b.re,
        }
    }
}

impl Div for DdComplex {
    type Output = Self;

    fn div(self, b: Self) -> Self {
        let den = b.re * b.re + b.im * b.im;
        let num = self * b.conj();
        Self {
            re: num.re / den,
            im: num.im / den,
        }
    }
}

/// Evaluates `f` at `z`; parameters are taken as exact f64 values, the same
/// constants the f64 evaluator uses.
pub fn eval_dd(f: &FunctionExpr, z: DdComplex) -> DdComplex {
    match f {
        FunctionExpr::Identity => z,
        FunctionExpr::Constant { c } => DdComplex::from_c64(c.value()),
        FunctionExpr::Rotation { theta, child } => {
            DdComplex::from_c64(Complex64::from_polar(1.0, *theta)) * eval_dd(child, z)
        }
        FunctionExpr::MobiusT { a, child } => {
            let a = DdComplex::from_c64(a.value());
            let x = eval_dd(child, z);
            (x + a) / (DdComplex::one() + a.conj() * x)
        }
        FunctionExpr::Product { left, right } => eval_dd(left, z) * eval_dd(right, z),
        FunctionExpr::Compose { outer, inner } => eval_dd(outer, eval_dd(inner, z)),
        FunctionExpr::Bracket { w, child } => {
            let w = DdComplex::from_c64(w.value());
            let x = eval_dd(child, z);
            (x - w) / (DdComplex::one() - w.conj() * x)
        }
    }
}

/// Central differences along the real axis in double-double arithmetic:
/// `(f(z+h) - f(z-h)) / 2h` and `(f(z+h) - 2 f(z) + f(z-h)) / h^2`.
pub fn central_differences(f: &FunctionExpr, z: Complex64, h: f64) -> (Complex64, Complex64) {
    let zc = DdComplex::from_c64(z);
    let hd = DdComplex::from_c64(Complex64::new(h, 0.0));
    let fp = eval_dd(f, zc + hd);
    let f0 = eval_dd(f, zc);
    let fm = eval_dd(f, zc - hd);
    let h = Dd::from_f64(h);
    let d1 = (fp - fm).scale(Dd::ONE / (h * Dd::from_f64(2.0)));
    let d2 = (fp - f0.scale(Dd::from_f64(2.0)) + fm).scale(Dd::ONE / (h * h));
    (d1.to_c64(), d2.to_c64())
}
