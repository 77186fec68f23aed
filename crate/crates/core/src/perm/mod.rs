//! Permutation groups on at most eight points.

mod certificate;
mod chain;
mod covering;
mod group;
#[allow(clippy::module_inception)]
mod perm;
mod spec;

pub use certificate::{class_elements, generation_certificate, ClassElements, GenerationCertificate};
pub use chain::StabChain;
pub use covering::{
    conjugate_containment, coset_action_table, covering_check, derive_covering_lemma, CoveringReport, LemmaReport,
};
pub use group::GroupHandle;
pub use perm::{factorial, CycleType, Perm, MAX_DEGREE};
pub use spec::{build_group, SubgroupSpec};
