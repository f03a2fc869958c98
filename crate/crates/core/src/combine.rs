//! Pseudo-frequency combination of several cohort lattices.
//!
//! `f(s)` is the sum of a profile's memberships across the input lattices and the
//! combined possibility is `r(s) = f(s) / max f`. The inputs may be different cohorts
//! on the same process, or one cohort observed on different processes.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::label::LabelScale;
use crate::lattice::{enumerate_profiles, GroupAssessment, Profile};
use crate::numeric::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CombinedAssessment {
    group_names: Vec<String>,
    scale: LabelScale,
    step_count: usize,
    pseudo_frequencies: Vec<Rational>,
    max_pseudo_frequency: Rational,
    combined_possibilities: Vec<Rational>,
    degenerate: bool,
}

impl CombinedAssessment {
    pub fn group_names(&self) -> &[String] {
        &self.group_names
    }

    pub fn scale(&self) -> &LabelScale {
        &self.scale
    }

    pub fn step_count(&self) -> usize {
        self.step_count
    }

    pub fn pseudo_frequencies(&self) -> &[Rational] {
        &self.pseudo_frequencies
    }

    pub fn combined_possibilities(&self) -> &[Rational] {
        &self.combined_possibilities
    }

    pub fn pseudo_frequency(&self, profile: &Profile) -> Rational {
        self.pseudo_frequencies[self.index_of(profile)]
    }

    pub fn possibility(&self, profile: &Profile) -> Rational {
        self.combined_possibilities[self.index_of(profile)]
    }

    pub fn max_pseudo_frequency(&self) -> Rational {
        self.max_pseudo_frequency
    }

    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    pub fn profiles(&self) -> impl Iterator<Item = Profile> {
        enumerate_profiles(self.scale.len(), self.step_count)
    }

    fn index_of(&self, profile: &Profile) -> usize {
        assert_eq!(profile.len(), self.step_count);
        let l = self.scale.len();
        profile.indices().iter().fold(0, |acc, &i| acc * l + i)
    }
}

/// Combines two or more lattices over the same scale and step count.
pub fn combine(groups: &[GroupAssessment]) -> Result<CombinedAssessment> {
    if groups.len() < 2 {
        return Err(Error::domain(format!(
            "combination needs at least 2 groups, got {}",
            groups.len()
        )));
    }
    let first = &groups[0];
    for g in &groups[1..] {
        if g.scale() != first.scale() {
            return Err(Error::domain(format!(
                "group {:?} uses a different label scale from {:?}",
                g.group_name(),
                first.group_name()
            )));
        }
        if g.step_count() != first.step_count() {
            return Err(Error::domain(format!(
                "group {:?} has {} steps but {:?} has {}",
                g.group_name(),
                g.step_count(),
                first.group_name(),
                first.step_count()
            )));
        }
    }

    let size = first.lattice_size();
    let mut pseudo_frequencies = vec![Rational::zero(); size];
    for g in groups {
        for (f, m) in pseudo_frequencies.iter_mut().zip(g.memberships()) {
            *f += m;
        }
    }
    let max_pseudo_frequency = pseudo_frequencies
        .iter()
        .copied()
        .max()
        .unwrap_or_else(Rational::zero);
    let degenerate = max_pseudo_frequency.is_zero();
    let combined_possibilities = if degenerate {
        vec![Rational::zero(); size]
    } else {
        pseudo_frequencies
            .iter()
            .map(|f| f / max_pseudo_frequency)
            .collect()
    };

    Ok(CombinedAssessment {
        group_names: groups.iter().map(|g| g.group_name().to_string()).collect(),
        scale: first.scale().clone(),
        step_count: first.step_count(),
        pseudo_frequencies,
        max_pseudo_frequency,
        combined_possibilities,
        degenerate,
    })
}
