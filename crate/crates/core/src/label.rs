//! Ordered universe of linguistic performance labels.
//!
//! The default scale has five labels, weakest first:
//! `a` negligible, `b` low, `c` intermediate, `d` high, `e` complete.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};

const DEFAULT_NAMES: [&str; 5] = ["a", "b", "c", "d", "e"];
const DEFAULT_DESCRIPTIONS: [&str; 5] = ["negligible", "low", "intermediate", "high", "complete"];

/// One crisp ordinal category. `index` 0 is the weakest.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Label {
    pub index: usize,
    pub name: String,
    pub description: String,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// Labels ordered by index with no gaps, at least two of them.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LabelScale {
    labels: Vec<Label>,
}

impl Default for LabelScale {
    fn default() -> Self {
        default_scale()
    }
}

/// The five-label scale `a < b < c < d < e`.
pub fn default_scale() -> LabelScale {
    let labels = DEFAULT_NAMES
        .iter()
        .zip(DEFAULT_DESCRIPTIONS)
        .enumerate()
        .map(|(index, (name, description))| Label {
            index,
            name: (*name).to_string(),
            description: description.to_string(),
        })
        .collect();
    LabelScale { labels }
}

impl LabelScale {
    /// Builds a scale from names listed weakest first. When the names are exactly the
    /// default `a..e`, the default descriptions are attached; otherwise the description
    /// repeats the name.
    pub fn from_names<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        if names.len() < 2 {
            return Err(Error::domain(format!(
                "a label scale needs at least 2 labels, got {}",
                names.len()
            )));
        }
        let mut seen = HashSet::new();
        for name in names {
            let name = name.as_ref();
            if name.trim().is_empty() {
                return Err(Error::domain("label names must be non-empty"));
            }
            if !seen.insert(name) {
                return Err(Error::domain(format!("duplicate label name {name:?}")));
            }
        }
        let is_default = names.len() == DEFAULT_NAMES.len()
            && names
                .iter()
                .zip(DEFAULT_NAMES)
                .all(|(n, d)| n.as_ref() == d);
        if is_default {
            return Ok(default_scale());
        }
        let labels = names
            .iter()
            .enumerate()
            .map(|(index, name)| Label {
                index,
                name: name.as_ref().to_string(),
                description: name.as_ref().to_string(),
            })
            .collect();
        Ok(LabelScale { labels })
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    /// Number of labels, L.
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn get(&self, index: usize) -> Option<&Label> {
        self.labels.get(index)
    }

    pub fn by_name(&self, name: &str) -> Option<&Label> {
        self.labels.iter().find(|l| l.name == name)
    }

    pub fn names(&self) -> Vec<&str> {
        self.labels.iter().map(|l| l.name.as_str()).collect()
    }

    pub fn lowest(&self) -> &Label {
        &self.labels[0]
    }

    pub fn highest(&self) -> &Label {
        &self.labels[self.labels.len() - 1]
    }
}

/// Maps a solver's count of problems with positive results to a label.
///
/// With `total == L - 1` the label index equals `solved`. Other totals use the
/// proportional rule `floor(solved * (L - 1) / total)`, which keeps both endpoints on the
/// extreme labels.
pub fn label_from_solved(solved: u64, total: u64, scale: &LabelScale) -> Result<&Label> {
    if total == 0 {
        return Err(Error::domain("total problem count must be at least 1"));
    }
    if solved > total {
        return Err(Error::domain(format!(
            "solved count {solved} exceeds total {total}"
        )));
    }
    let top = (scale.len() - 1) as u128;
    let index = (solved as u128 * top / total as u128) as usize;
    Ok(&scale.labels[index])
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn default_scale_layout() {
        let scale = default_scale();
        assert_eq!(scale.len(), 5);
        assert_eq!(scale.names(), vec!["a", "b", "c", "d", "e"]);
        assert_eq!(scale.labels()[0].name, "a");
        assert_eq!(scale.labels()[0].description, "negligible");
        assert_eq!(scale.labels()[4].index, 4);
        assert_eq!(scale.labels()[4].description, "complete");
        for (i, label) in scale.labels().iter().enumerate() {
            assert_eq!(label.index, i);
        }
    }

    #[test]
    fn classroom_criteria() {
        let scale = default_scale();
        assert_eq!(label_from_solved(2, 4, &scale).unwrap().name, "c");
        assert_eq!(label_from_solved(0, 4, &scale).unwrap().name, "a");
        assert_eq!(label_from_solved(4, 4, &scale).unwrap().name, "e");
        assert_eq!(label_from_solved(1, 4, &scale).unwrap().name, "b");
        assert_eq!(label_from_solved(3, 4, &scale).unwrap().name, "d");
    }

    #[test]
    fn proportional_rule() {
        let scale = default_scale();
        // floor(3 * 4 / 6) = 2
        assert_eq!(label_from_solved(3, 6, &scale).unwrap().name, "c");
    }

    #[test]
    fn solved_out_of_domain() {
        let scale = default_scale();
        assert!(matches!(
            label_from_solved(5, 4, &scale),
            Err(Error::InputDomain(_))
        ));
        assert!(matches!(
            label_from_solved(0, 0, &scale),
            Err(Error::InputDomain(_))
        ));
    }

    #[test]
    fn from_names_validation() {
        assert!(LabelScale::from_names(&["a"]).is_err());
        assert!(LabelScale::from_names(&["a", "a"]).is_err());
        assert!(LabelScale::from_names(&["a", ""]).is_err());
        let s = LabelScale::from_names(&["lo", "mid", "hi"]).unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s.by_name("mid").unwrap().index, 1);
        assert_eq!(
            LabelScale::from_names(&DEFAULT_NAMES).unwrap(),
            default_scale()
        );
    }

    proptest! {
        #[test]
        fn monotone_in_solved(total in 1u64..60, l in 2usize..9, a in 0u64..60, b in 0u64..60) {
            let names: Vec<String> = (0..l).map(|i| format!("l{i}")).collect();
            let scale = LabelScale::from_names(&names).unwrap();
            let (lo, hi) = (a.min(b).min(total), a.max(b).min(total));
            let x = label_from_solved(lo, total, &scale).unwrap().index;
            let y = label_from_solved(hi, total, &scale).unwrap().index;
            prop_assert!(x <= y);
            prop_assert_eq!(label_from_solved(0, total, &scale).unwrap().index, 0);
            prop_assert_eq!(label_from_solved(total, total, &scale).unwrap().index, l - 1);
        }

        #[test]
        fn identity_when_total_matches_scale(l in 2usize..12, solved_frac in 0.0f64..=1.0) {
            let names: Vec<String> = (0..l).map(|i| format!("l{i}")).collect();
            let scale = LabelScale::from_names(&names).unwrap();
            let total = (l - 1) as u64;
            let solved = (solved_frac * total as f64).round() as u64;
            prop_assert_eq!(label_from_solved(solved, total, &scale).unwrap().index, solved as usize);
        }
    }
}
