//! Fuzzy step-sets built from per-label solver counts.
//!
//! For a cohort of `n` solvers and a scale of `L` labels, the count `n_x` of solvers
//! carrying label `x` falls into one of `L` bands:
//!
//! ```text
//! band j  <=>  j*n/L < n_x <= (j+1)*n/L      (band 0 also holds n_x = 0)
//! ```
//!
//! and the membership of `x` is `j / (L - 1)`. For `L = 5` this yields 0, 1/4, 1/2, 3/4, 1.
//! All boundary comparisons are done by integer cross-multiplication.

use crate::error::{Error, Result};
use crate::label::{Label, LabelScale};
use crate::numeric::Rational;

/// Per-label solver counts for one step of one cohort.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepCounts {
    pub step_name: String,
    scale: LabelScale,
    /// Indexed by label index.
    counts: Vec<u64>,
    pub cohort_size: u64,
}

impl StepCounts {
    /// `counts` is ordered like the scale (one entry per label). The sum is checked by
    /// [`build_fuzzy_step`], not here.
    pub fn new(
        step_name: impl Into<String>,
        scale: LabelScale,
        counts: Vec<u64>,
        cohort_size: u64,
    ) -> Result<Self> {
        let step_name = step_name.into();
        if counts.len() != scale.len() {
            return Err(Error::validation(
                format!("step {step_name:?}"),
                format!(
                    "expected {} label counts, got {}",
                    scale.len(),
                    counts.len()
                ),
            ));
        }
        if cohort_size == 0 {
            return Err(Error::validation(
                format!("step {step_name:?}"),
                "cohort size must be positive",
            ));
        }
        Ok(StepCounts {
            step_name,
            scale,
            counts,
            cohort_size,
        })
    }

    /// Counts keyed by label name; every scale label must be present.
    pub fn from_named<S: AsRef<str>>(
        step_name: impl Into<String>,
        scale: LabelScale,
        named: &[(S, u64)],
        cohort_size: u64,
    ) -> Result<Self> {
        let step_name = step_name.into();
        let mut counts = vec![None; scale.len()];
        for (name, count) in named {
            let label = scale.by_name(name.as_ref()).ok_or_else(|| {
                Error::validation(
                    format!("step {step_name:?}"),
                    format!("unknown label {:?}", name.as_ref()),
                )
            })?;
            if counts[label.index].replace(*count).is_some() {
                return Err(Error::validation(
                    format!("step {step_name:?}"),
                    format!("label {:?} listed twice", label.name),
                ));
            }
        }
        let counts = counts
            .into_iter()
            .enumerate()
            .map(|(i, c)| {
                c.ok_or_else(|| {
                    Error::validation(
                        format!("step {step_name:?}"),
                        format!("missing count for label {:?}", scale.labels()[i].name),
                    )
                })
            })
            .collect::<Result<Vec<_>>>()?;
        StepCounts::new(step_name, scale, counts, cohort_size)
    }

    pub fn scale(&self) -> &LabelScale {
        &self.scale
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn count(&self, label: &Label) -> u64 {
        self.counts[label.index]
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

/// A fuzzy subset of the label universe for one step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuzzyStepSet {
    pub step_name: String,
    scale: LabelScale,
    memberships: Vec<Rational>,
}

impl FuzzyStepSet {
    /// Direct construction from membership values (ordered like the scale). Each value
    /// must be one of the band levels `j / (L - 1)`.
    pub fn from_memberships(
        step_name: impl Into<String>,
        scale: LabelScale,
        memberships: Vec<Rational>,
    ) -> Result<Self> {
        let step_name = step_name.into();
        if memberships.len() != scale.len() {
            return Err(Error::domain(format!(
                "step {step_name:?}: expected {} memberships, got {}",
                scale.len(),
                memberships.len()
            )));
        }
        let top = (scale.len() - 1) as i64;
        for m in &memberships {
            let scaled = m * top;
            if !scaled.is_integer() || scaled.to_integer() < 0 || scaled.to_integer() > top {
                return Err(Error::domain(format!(
                    "step {step_name:?}: membership {m} is not a band level j/{top}"
                )));
            }
        }
        Ok(FuzzyStepSet {
            step_name,
            scale,
            memberships,
        })
    }

    pub fn scale(&self) -> &LabelScale {
        &self.scale
    }

    /// Memberships ordered like the scale.
    pub fn memberships(&self) -> &[Rational] {
        &self.memberships
    }

    pub fn membership(&self, label: &Label) -> Rational {
        self.memberships[label.index]
    }

    pub fn membership_at(&self, index: usize) -> Rational {
        self.memberships[index]
    }
}

/// Band index of `count` among `num_bands` equal-width bands over `[0, cohort_size]`.
pub fn band_of(count: u64, cohort_size: u64, num_bands: usize) -> Result<usize> {
    if cohort_size == 0 {
        return Err(Error::domain("cohort size must be positive"));
    }
    if num_bands == 0 {
        return Err(Error::domain("need at least one band"));
    }
    if count > cohort_size {
        return Err(Error::domain(format!(
            "count {count} exceeds cohort size {cohort_size}"
        )));
    }
    if count == 0 {
        return Ok(0);
    }
    // Smallest j+1 with L*count <= (j+1)*n, i.e. ceil(L*count / n).
    let scaled = num_bands as u128 * count as u128;
    let upper = scaled.div_ceil(cohort_size as u128);
    Ok(upper as usize - 1)
}

/// Builds the fuzzy step-set `m(x) = band_of(n_x, n, L) / (L - 1)`.
pub fn build_fuzzy_step(counts: &StepCounts) -> Result<FuzzyStepSet> {
    let total = counts.total();
    if total != counts.cohort_size {
        return Err(Error::validation(
            format!("step {:?}", counts.step_name),
            format!(
                "label counts sum to {total} but cohort size is {}",
                counts.cohort_size
            ),
        ));
    }
    let l = counts.scale.len();
    let top = (l - 1) as i64;
    let memberships = counts
        .counts
        .iter()
        .map(|&c| band_of(c, counts.cohort_size, l).map(|j| Rational::new(j as i64, top)))
        .collect::<Result<Vec<_>>>()?;
    Ok(FuzzyStepSet {
        step_name: counts.step_name.clone(),
        scale: counts.scale.clone(),
        memberships,
    })
}
