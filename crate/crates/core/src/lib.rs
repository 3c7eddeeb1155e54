pub mod codec;
pub mod conditions;
pub mod error;
pub mod families;
pub mod graph;
pub mod harness;
pub mod iso;
pub mod oracle;
pub mod spectra;

pub use error::{Error, Result};
pub use conditions::{evaluate_all, ConditionId, Evaluator, Outcome, Verdict};
pub use families::{Family, FamilySpec, Sporadic, Variant};
pub use graph::{DegreeSequence, Graph};
pub use harness::{CampaignConfig, Report, TrialRecord};
pub use oracle::{is_hamilton_connected, HamiltonVerdict};
pub use spectra::{MatrixKind, Partition, SpectralResult};
