//! The profile lattice of one cohort.
//!
//! A profile assigns one label to each of the `k` steps. Its membership degree is the
//! product of the per-step memberships when the profile is well ordered (label indices
//! never increase from one step to the next) and zero otherwise. Possibilities are
//! memberships relative to the lattice maximum, and the cohort's normalized
//! Shannon-Wiener index is `H = -(1 / ln N) * sum(m ln m)` over the `N = L^k` profiles.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::label::{Label, LabelScale};
use crate::membership::FuzzyStepSet;
use crate::numeric::{to_f64, Rational};

/// Largest lattice we are willing to enumerate.
pub const MAX_LATTICE_SIZE: usize = 1 << 20;

/// One label index per step, in step order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Profile {
    indices: Vec<usize>,
}

impl Profile {
    pub fn new(indices: Vec<usize>) -> Self {
        Profile { indices }
    }

    pub fn from_labels(labels: &[&Label]) -> Self {
        Profile {
            indices: labels.iter().map(|l| l.index).collect(),
        }
    }

    /// Looks up each name on `scale`.
    pub fn from_names<S: AsRef<str>>(names: &[S], scale: &LabelScale) -> Result<Self> {
        names
            .iter()
            .map(|n| {
                scale
                    .by_name(n.as_ref())
                    .map(|l| l.index)
                    .ok_or_else(|| Error::domain(format!("unknown label {:?}", n.as_ref())))
            })
            .collect::<Result<Vec<_>>>()
            .map(Profile::new)
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn names<'a>(&self, scale: &'a LabelScale) -> Vec<&'a str> {
        self.indices
            .iter()
            .map(|&i| scale.labels()[i].name.as_str())
            .collect()
    }

    pub fn display<'a>(&'a self, scale: &'a LabelScale) -> ProfileDisplay<'a> {
        ProfileDisplay {
            profile: self,
            scale,
        }
    }
}

pub struct ProfileDisplay<'a> {
    profile: &'a Profile,
    scale: &'a LabelScale,
}

impl fmt::Display for ProfileDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.profile.names(self.scale).join(","))
    }
}

/// True iff label indices are non-increasing along the steps.
pub fn is_well_ordered(profile: &Profile) -> bool {
    profile.indices.windows(2).all(|w| w[0] >= w[1])
}

/// Number of well-ordered profiles: `C(L + k - 1, k)`.
pub fn well_ordered_count(labels: usize, steps: usize) -> u128 {
    let n = (labels + steps - 1) as u128;
    let k = steps.min(labels - 1) as u128;
    // C(n, k) with the smaller of k and n - k
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

/// `L^k`, or `None` past [`MAX_LATTICE_SIZE`].
pub fn lattice_size(labels: usize, steps: usize) -> Option<usize> {
    let mut size = 1usize;
    for _ in 0..steps {
        size = size.checked_mul(labels)?;
        if size > MAX_LATTICE_SIZE {
            return None;
        }
    }
    Some(size)
}

/// All `L^k` profiles in step-major lexicographic order.
pub fn enumerate_profiles(labels: usize, steps: usize) -> impl Iterator<Item = Profile> {
    let total = labels.checked_pow(steps as u32).unwrap_or(0);
    (0..total).map(move |flat| profile_at(flat, labels, steps))
}

fn profile_at(mut flat: usize, labels: usize, steps: usize) -> Profile {
    let mut indices = vec![0; steps];
    for slot in indices.iter_mut().rev() {
        *slot = flat % labels;
        flat /= labels;
    }
    Profile::new(indices)
}

fn flat_index(profile: &Profile, labels: usize) -> usize {
    profile.indices.iter().fold(0, |acc, &i| acc * labels + i)
}

/// Product of per-step memberships for a well-ordered profile, exactly zero otherwise.
pub fn profile_membership(profile: &Profile, steps: &[FuzzyStepSet]) -> Result<Rational> {
    if profile.len() != steps.len() {
        return Err(Error::domain(format!(
            "profile has {} labels but there are {} steps",
            profile.len(),
            steps.len()
        )));
    }
    if let Some(&bad) = steps
        .iter()
        .zip(&profile.indices)
        .find(|(s, &i)| i >= s.scale().len())
        .map(|(_, i)| i)
    {
        return Err(Error::domain(format!(
            "label index {bad} outside the scale"
        )));
    }
    if !is_well_ordered(profile) {
        return Ok(Rational::zero());
    }
    Ok(steps
        .iter()
        .zip(&profile.indices)
        .map(|(s, &i)| s.membership_at(i))
        .fold(Rational::one(), |acc, m| acc * m))
}

/// Normalized Shannon-Wiener index of a membership vector over `lattice_size` profiles.
///
/// Zero memberships contribute nothing. Terms are summed in ascending order of
/// magnitude so the result does not depend on enumeration order.
pub fn entropy_of(memberships: &[Rational], lattice_size: usize) -> f64 {
    if lattice_size < 2 {
        return 0.0;
    }
    let mut terms: Vec<f64> = memberships
        .iter()
        .filter(|m| !m.is_zero())
        .map(|m| {
            let x = to_f64(m);
            -x * x.ln()
        })
        .collect();
    terms.sort_by(|a, b| a.abs().total_cmp(&b.abs()));
    let sum: f64 = terms.iter().fold(0.0, |acc, t| acc + t);
    let h = sum / (lattice_size as f64).ln();
    // -0.0 from ln(1) terms
    if h == 0.0 {
        0.0
    } else {
        h
    }
}

/// Full lattice of one cohort: memberships, possibilities and entropy.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupAssessment {
    group_name: String,
    scale: LabelScale,
    steps: Vec<FuzzyStepSet>,
    memberships: Vec<Rational>,
    max_membership: Rational,
    possibilities: Vec<Rational>,
    entropy: f64,
    lattice_size: usize,
    degenerate: bool,
    injected: bool,
}

impl GroupAssessment {
    pub fn group_name(&self) -> &str {
        &self.group_name
    }

    pub fn scale(&self) -> &LabelScale {
        &self.scale
    }

    pub fn steps(&self) -> &[FuzzyStepSet] {
        &self.steps
    }

    pub fn step_count(&self) -> usize {
        self.steps.len()
    }

    /// Memberships in step-major lexicographic profile order.
    pub fn memberships(&self) -> &[Rational] {
        &self.memberships
    }

    pub fn possibilities(&self) -> &[Rational] {
        &self.possibilities
    }

    pub fn membership(&self, profile: &Profile) -> Rational {
        self.memberships[self.index_of(profile)]
    }

    pub fn possibility(&self, profile: &Profile) -> Rational {
        self.possibilities[self.index_of(profile)]
    }

    pub fn max_membership(&self) -> Rational {
        self.max_membership
    }

    pub fn entropy(&self) -> f64 {
        self.entropy
    }

    /// `N = L^k`.
    pub fn lattice_size(&self) -> usize {
        self.lattice_size
    }

    /// True iff every membership is zero.
    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    /// True when memberships were supplied externally rather than computed from the steps.
    pub fn is_injected(&self) -> bool {
        self.injected
    }

    pub fn profiles(&self) -> impl Iterator<Item = Profile> {
        enumerate_profiles(self.scale.len(), self.steps.len())
    }

    /// Iterates `(profile, membership, possibility)` in lattice order.
    pub fn rows(&self) -> impl Iterator<Item = (Profile, Rational, Rational)> + '_ {
        self.profiles()
            .zip(&self.memberships)
            .zip(&self.possibilities)
            .map(|((p, m), r)| (p, *m, *r))
    }

    fn index_of(&self, profile: &Profile) -> usize {
        assert_eq!(
            profile.len(),
            self.steps.len(),
            "profile length does not match step count"
        );
        flat_index(profile, self.scale.len())
    }

    fn finish(
        group_name: String,
        scale: LabelScale,
        steps: Vec<FuzzyStepSet>,
        memberships: Vec<Rational>,
        injected: bool,
    ) -> Self {
        let lattice_size = memberships.len();
        let max_membership = memberships
            .iter()
            .copied()
            .max()
            .unwrap_or_else(Rational::zero);
        let degenerate = max_membership.is_zero();
        let possibilities = if degenerate {
            vec![Rational::zero(); lattice_size]
        } else {
            memberships.iter().map(|m| m / max_membership).collect()
        };
        let entropy = entropy_of(&memberships, lattice_size);
        GroupAssessment {
            group_name,
            scale,
            steps,
            memberships,
            max_membership,
            possibilities,
            entropy,
            lattice_size,
            degenerate,
            injected,
        }
    }
}

fn check_steps(steps: &[FuzzyStepSet]) -> Result<(LabelScale, usize)> {
    let first = steps
        .first()
        .ok_or_else(|| Error::domain("at least one step is required"))?;
    let scale = first.scale().clone();
    if let Some(other) = steps.iter().find(|s| s.scale() != &scale) {
        return Err(Error::domain(format!(
            "step {:?} uses a different label scale from step {:?}",
            other.step_name, first.step_name
        )));
    }
    let size = lattice_size(scale.len(), steps.len()).ok_or_else(|| {
        Error::domain(format!(
            "lattice of {}^{} profiles exceeds the limit of {MAX_LATTICE_SIZE}",
            scale.len(),
            steps.len()
        ))
    })?;
    Ok((scale, size))
}

/// Enumerates the full lattice for one cohort.
pub fn assess_group(name: impl Into<String>, steps: &[FuzzyStepSet]) -> Result<GroupAssessment> {
    let (scale, size) = check_steps(steps)?;
    let l = scale.len();
    let mut memberships = Vec::with_capacity(size);
    for profile in enumerate_profiles(l, steps.len()) {
        memberships.push(profile_membership(&profile, steps)?);
    }
    Ok(GroupAssessment::finish(
        name.into(),
        scale,
        steps.to_vec(),
        memberships,
        false,
    ))
}

/// Builds a lattice whose memberships are supplied verbatim (unlisted profiles are zero),
/// e.g. to replay a previously published table through the possibility and entropy code.
///
/// Values must lie in `[0, 1]`, and only well-ordered profiles may be nonzero.
pub fn assess_with_memberships(
    name: impl Into<String>,
    steps: &[FuzzyStepSet],
    values: &[(Profile, Rational)],
) -> Result<GroupAssessment> {
    let (scale, size) = check_steps(steps)?;
    let l = scale.len();
    let mut memberships = vec![Rational::zero(); size];
    let mut seen = vec![false; size];
    for (profile, value) in values {
        let shown = profile.display(&scale).to_string();
        if profile.len() != steps.len() || profile.indices.iter().any(|&i| i >= l) {
            return Err(Error::domain(format!(
                "profile {:?} does not fit the lattice",
                profile.indices
            )));
        }
        if *value < Rational::zero() || *value > Rational::one() {
            return Err(Error::domain(format!(
                "membership {value} for {shown} is outside [0, 1]"
            )));
        }
        if !value.is_zero() && !is_well_ordered(profile) {
            return Err(Error::domain(format!(
                "profile {shown} is not well ordered but was given membership {value}"
            )));
        }
        let at = flat_index(profile, l);
        if std::mem::replace(&mut seen[at], true) {
            return Err(Error::domain(format!("profile {shown} listed twice")));
        }
        memberships[at] = *value;
    }
    Ok(GroupAssessment::finish(
        name.into(),
        scale,
        steps.to_vec(),
        memberships,
        true,
    ))
}

/// The assessment's normalized Shannon-Wiener index `H`.
pub fn shannon_entropy(assessment: &GroupAssessment) -> f64 {
    entropy_of(&assessment.memberships, assessment.lattice_size)
}
