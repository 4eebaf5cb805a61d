//! Oracles shared by the acceptance checks.

#[path = "../../core/tests/support/ddcomplex.rs"]
pub mod ddcomplex;
