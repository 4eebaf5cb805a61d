//! Verification harness and command-line interface on top of the `schwarz` library.

pub mod cli;
pub mod harness;

pub use harness::{
    run_attainment_suite, run_membership_suite, run_tightness_search, AttainmentOptions,
    HarnessConfig, HarnessReport, MembershipSuite, TightnessSummary,
};
