//! Positivity scans for each case of the reduced inequality, the threshold
//! radius, and quadrature cross-checks of the simplification chain.

pub mod grid;
pub mod high_d;
pub mod log_case;
pub mod one_d;
pub mod oracle;
pub mod report;
pub mod threshold;

pub use grid::{Exclusion, GridMin, GridSpec};
pub use high_d::{big_m, lhs_qc, lhs_qd, verify_high_d, Condition, HighDOptions, HighDScan};
pub use log_case::log_case_certificate;
pub use one_d::{mu, q_ab, verify_one_d, x_ab, OneDScan, SubintervalFamily};
pub use oracle::{direct_qbis_oracle, QbisOracle};
pub use report::{CaseId, CaseParams, CurveSample, ScanReport};
pub use threshold::x_star;
