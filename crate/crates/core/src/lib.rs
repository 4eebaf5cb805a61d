#![no_std]

extern crate alloc;

pub mod bounds;
pub mod disks;
pub mod error;
pub mod extremal;
pub mod function;
pub mod jet;
pub mod moebius;
pub mod sampling;

pub use error::{Error, Result};
pub use extremal::{
    make_extremal, verify_attainment, Attainment, AttainmentReport, Extremal, ExtremalKind,
};
pub use function::{
    dieudonne_parametrize, eval, eval_jet, schur_parametrize, FunctionExpr, PrescribedData,
};
pub use jet::{jet_add, jet_div, jet_mobius, jet_mul, Jet2};
pub use moebius::{
    disk_contains, hyperbolic_bracket, mobius_t, mobius_t_inverse, ClosedDiskPoint, ComplexValue,
    Disk, UnitDiskPoint,
};
pub use sampling::{random_schur_function, random_schur_sample, RandomFunctionConfig};
