//! Fuzzy step-set model of analogical problem solving.
//!
//! Cohort performance on each reasoning step (search-retrieval, mapping, adaptation)
//! is summarized as a fuzzy subset of an ordinal label scale. From those step sets the
//! crate enumerates the lattice of solver profiles and computes membership degrees,
//! possibilities, a normalized Shannon-Wiener index and cross-cohort pseudo-frequencies.
//! All memberships and possibilities are exact rationals; only the entropy is a float.
//!
//! ```
//! use arfuzzy::{assess_group, build_fuzzy_step, default_scale, StepCounts};
//!
//! let scale = default_scale();
//! let steps = [
//!     ("search-retrieval", vec![0, 0, 9, 6, 5]),
//!     ("mapping", vec![2, 2, 10, 6, 0]),
//!     ("adaptation", vec![6, 7, 7, 0, 0]),
//! ]
//! .into_iter()
//! .map(|(name, counts)| build_fuzzy_step(&StepCounts::new(name, scale.clone(), counts, 20)?))
//! .collect::<Result<Vec<_>, _>>()?;
//! let group = assess_group("group 1", &steps)?;
//! assert_eq!(group.max_membership(), arfuzzy::Rational::new(1, 16));
//! assert!((group.entropy() - 0.3230).abs() < 5e-4);
//! # Ok::<(), arfuzzy::Error>(())
//! ```

pub mod cli;
pub mod combine;
pub mod error;
pub mod fixture;
pub mod ingest;
pub mod label;
pub mod lattice;
pub mod membership;
pub mod numeric;
pub mod report;
pub mod simulate;

pub use combine::{combine, CombinedAssessment};
pub use error::{Error, Result};
pub use ingest::{parse_dataset, to_step_counts, CohortDataset, DataFormat, SourceKind};
pub use label::{default_scale, label_from_solved, Label, LabelScale};
pub use lattice::{
    assess_group, assess_with_memberships, is_well_ordered, profile_membership, shannon_entropy,
    well_ordered_count, GroupAssessment, Profile,
};
pub use membership::{band_of, build_fuzzy_step, FuzzyStepSet, StepCounts};
pub use numeric::{Rational, Rounding};
pub use report::{diff_against_fixture, render_lattice, DiffReport, ReportConfig, ReportFormat};
