//! Verification harness: a corpus of small groups, the equivalence and
//! closure suites run over it, and JSON reports.
//!
//! Every suite is a list of [`Check`]s per corpus entry. A check is plain
//! data naming the subgroups it talks about, so a failure recorded in a
//! report can be evaluated again on its own with [`evaluate`].

mod checks;
mod corpus;
mod report;
mod search;
mod suites;

pub use checks::{evaluate, Check, Evaluation};
pub use corpus::{build_corpus, Corpus, CorpusConfig, CorpusEntry, Families, Fingerprint, QuotientView, SubgroupRef, Tags};
pub use report::{EntryRecord, Finding, Requirement, Summary, VerificationReport, Witness, SCHEMA_VERSION};
pub use search::{find_witness, Query, WitnessHit};
pub use suites::{run_suite, run_suites, Suite};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Group(#[from] grouplab::GroupError),

    #[error("unknown suite {0:?}")]
    UnknownSuite(String),

    #[error("malformed query {0:?}")]
    MalformedQuery(String),

    #[error("k must be at least 1")]
    ZeroK,

    #[error("could not start worker pool: {0}")]
    Pool(String),
}

pub type Result<T, E = HarnessError> = std::result::Result<T, E>;
