//! The concrete construction over the Newton-Puiseux field: the index set
//! `S`, the row series `s_m`, the master series `s` and its truncations, the
//! Artin-Schreier kernel ladder, the limit key polynomials `φ_n` with values
//! `γ_n`, the valuation families `C_n`, and the verification suites.

mod centers;
mod context;
mod oracle;
mod rho;
mod sindex;
mod towerfield;
mod verify;

pub use centers::{s_terms_in_window, stream_s, stream_s_m, stream_s_trunc, Center, CenterSpec};
pub use context::TowerContext;
pub use oracle::vs_value;
pub use rho::{
    limit_augmentation, mu, mu_value, rho, rho_value, stability_value, vs, RowFamily,
};
pub use sindex::{delta, in_s, index_successor, row_indices, support_coeff, IndexPair};
pub use towerfield::TowerElem;
pub use verify::{
    build_chain, run_all_suites, run_suite, suite_names, CheckRecord, CheckStatus, Suite,
    VerifyConfig,
};
