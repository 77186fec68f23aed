//! Per-case verification, the local-root sweep, reports and the
//! candidate search.

mod case;
mod report;
mod search;
mod sweep;
mod verify;

pub use case::{
    shipped_case, shipped_case_names, shipped_cases, CaseSpec, CoveringSpec, ExpectedFactorization, ResolventSpec,
};
pub use report::{emit_report, report_json, report_markdown};
pub use search::{search_candidates, Candidate, SearchBox, SearchState};
pub use sweep::{has_padic_root, sweep_roots_everywhere, RamifiedDecision, SweepReport};
pub use verify::{
    verify_case, CaseReport, ContainmentSummary, CoveringStage, PolynomialCheck, ResolventStage, StageVerdict,
    VerifyOptions,
};
