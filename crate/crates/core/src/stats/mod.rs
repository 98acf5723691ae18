//! Sample ingestion, empirical moments, Hankel PSD diagnostics and test
//! statistics. Floating point stays inside this module.

mod empirical;
mod hamburger;
mod samples;

pub use empirical::{empirical_moments, test_statistics, EmpiricalMoments, MomentTable, Statistic};
pub use hamburger::{det, hamburger_check, hamburger_sequence, hankel, HankelVerdict, PSD_TOLERANCE};
pub use samples::{read_samples, read_samples_from, SampleMatrix};
