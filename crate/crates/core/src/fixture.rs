//! Expected-value tables and the bundled classroom data set.
//!
//! An [`ExpectedTable`] lists printed values per profile: a membership (or
//! pseudo-frequency, for combined tables) and a possibility. It drives both the
//! `--paper-compat` replay and [`crate::report::diff_against_fixture`].
//!
//! The classroom data set has two cohorts of 20 solvers assessed on three steps
//! (search-retrieval, mapping, adaptation) with the default `a..e` scale, plus the
//! 24-row printed table of their nonzero profiles, copied verbatim with decimal points.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::ingest::{CohortDataset, CountRow, DatasetRows};
use crate::label::{default_scale, LabelScale};
use crate::lattice::Profile;
use crate::numeric::{parse_decimal, Rational};

/// What the `value` column of an [`ExpectedTable`] holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TableKind {
    /// Single-cohort membership degrees `m_s`.
    Group,
    /// Cross-cohort pseudo-frequencies `f(s)`.
    Combined,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpectedRow {
    pub profile: Vec<String>,
    pub value: Option<Rational>,
    pub possibility: Option<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpectedTable {
    pub group: String,
    pub kind: TableKind,
    pub note: Option<String>,
    /// Decimal places the values were printed with.
    pub decimals: u32,
    pub rows: Vec<ExpectedRow>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTable {
    group: String,
    kind: TableKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    note: Option<String>,
    decimals: u32,
    rows: Vec<RawRow>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRow {
    profile: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    value: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    possibility: Option<Value>,
}

fn decimal_value(value: &Value, location: &str) -> Result<Rational> {
    let text = match value {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        other => {
            return Err(Error::validation(
                location,
                format!("expected a number, got {other}"),
            ))
        }
    };
    parse_decimal(&text).map_err(|_| Error::validation(location, format!("bad number {text:?}")))
}

fn decimal_json(value: &Rational) -> Value {
    // Printed tables only hold short terminating decimals.
    let text = crate::numeric::format_exact(value);
    serde_json::from_str::<Value>(&text).unwrap_or(Value::String(text))
}

impl ExpectedTable {
    pub fn parse(bytes: &[u8]) -> Result<Self> {
        let raw: RawTable = serde_json::from_slice(bytes).map_err(|e| {
            if e.is_syntax() || e.is_eof() {
                Error::parse(
                    format!("line {} column {}", e.line(), e.column()),
                    e.to_string(),
                )
            } else {
                Error::validation("schema", e.to_string())
            }
        })?;
        let rows = raw
            .rows
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let location = format!("rows[{i}] ({})", row.profile.join(","));
                Ok(ExpectedRow {
                    profile: row.profile.clone(),
                    value: row
                        .value
                        .as_ref()
                        .map(|v| decimal_value(v, &location))
                        .transpose()?,
                    possibility: row
                        .possibility
                        .as_ref()
                        .map(|v| decimal_value(v, &location))
                        .transpose()?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ExpectedTable {
            group: raw.group,
            kind: raw.kind,
            note: raw.note,
            decimals: raw.decimals,
            rows,
        })
    }

    pub fn to_json(&self) -> String {
        let raw = RawTable {
            group: self.group.clone(),
            kind: self.kind,
            note: self.note.clone(),
            decimals: self.decimals,
            rows: self
                .rows
                .iter()
                .map(|r| RawRow {
                    profile: r.profile.clone(),
                    value: r.value.as_ref().map(decimal_json),
                    possibility: r.possibility.as_ref().map(decimal_json),
                })
                .collect(),
        };
        let mut text = serde_json::to_string_pretty(&raw).expect("table serializes");
        text.push('\n');
        text
    }

    /// `(profile, value)` pairs resolved against `scale`, skipping rows without a value.
    pub fn values(&self, scale: &LabelScale) -> Result<Vec<(Profile, Rational)>> {
        self.rows
            .iter()
            .filter_map(|row| row.value.map(|v| (row, v)))
            .map(|(row, v)| Ok((Profile::from_names(&row.profile, scale)?, v)))
            .collect()
    }
}

/// Step names of the classroom data set, in order.
pub const CLASSROOM_STEPS: [&str; 3] = ["search-retrieval", "mapping", "adaptation"];

/// The printed table: profile, then `m_s(1)`, `r_s(1)`, `m_s(2)`, `r_s(2)`, `f(s)`, `r(s)`.
pub const CLASSROOM_TABLE: [(&str, [&str; 6]); 24] = [
    ("bbb", ["0", "0", "0.016", "0.258", "0.016", "0.129"]),
    ("bba", ["0", "0", "0.016", "0.258", "0.016", "0.129"]),
    ("baa", ["0", "0", "0.016", "0.258", "0.016", "0.129"]),
    ("ccc", ["0.062", "1", "0.062", "1", "0.124", "1"]),
    ("cca", ["0.062", "1", "0.062", "1", "0.124", "1"]),
    ("ccb", ["0", "0", "0.031", "0.5", "0.031", "0.25"]),
    ("caa", ["0", "0", "0.031", "0.5", "0.031", "0.25"]),
    ("cba", ["0", "0", "0.031", "0.5", "0.031", "0.25"]),
    ("cbb", ["0", "0", "0.031", "0.5", "0.031", "0.25"]),
    ("dda", ["0.016", "0.258", "0", "0", "0.016", "0.129"]),
    ("ddb", ["0.016", "0.258", "0", "0", "0.016", "0.129"]),
    ("ddc", ["0.016", "0.258", "0", "0", "0.016", "0.129"]),
    ("daa", ["0", "0", "0.016", "0.258", "0.016", "0.129"]),
    ("dba", ["0", "0", "0.016", "0.258", "0.016", "0.129"]),
    ("dbb", ["0", "0", "0.016", "0.258", "0.016", "0.129"]),
    ("dca", ["0.031", "0.5", "0.031", "0.5", "0.062", "0.5"]),
    ("dcb", ["0.031", "0.5", "0.031", "0.5", "0.062", "0.5"]),
    ("dcc", ["0.031", "0.5", "0.031", "0.5", "0.062", "0.5"]),
    ("eca", ["0.031", "0.5", "0", "0", "0.031", "0.25"]),
    ("ecb", ["0.031", "0.5", "0", "0", "0.031", "0.25"]),
    ("ecc", ["0.031", "0.5", "0", "0", "0.031", "0.25"]),
    ("eda", ["0.016", "0.258", "0", "0", "0.016", "0.129"]),
    ("edb", ["0.016", "0.258", "0", "0", "0.016", "0.129"]),
    ("edc", ["0.016", "0.258", "0", "0", "0.016", "0.129"]),
];

/// Which pair of printed columns to extract.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassroomColumn {
    Group1,
    Group2,
    Combined,
}

pub fn classroom_table(column: ClassroomColumn) -> ExpectedTable {
    let (offset, group, kind) = match column {
        ClassroomColumn::Group1 => (0, "group 1", TableKind::Group),
        ClassroomColumn::Group2 => (2, "group 2", TableKind::Group),
        ClassroomColumn::Combined => (4, "groups 1+2", TableKind::Combined),
    };
    let rows = CLASSROOM_TABLE
        .iter()
        .map(|(profile, cells)| ExpectedRow {
            profile: profile.chars().map(String::from).collect(),
            value: Some(parse_decimal(cells[offset]).expect("literal")),
            possibility: Some(parse_decimal(cells[offset + 1]).expect("literal")),
        })
        .collect();
    ExpectedTable {
        group: group.to_string(),
        kind,
        note: Some(
            "Printed values at 3 decimals, verbatim. Profiles not listed have value 0. \
             Row (c,c,b) disagrees with the printed step sets of both groups."
                .to_string(),
        ),
        decimals: 3,
        rows,
    }
}

fn counts_dataset(group: &str, note: &str, steps: [[u64; 5]; 3]) -> CohortDataset {
    CohortDataset {
        group_name: group.to_string(),
        note: Some(note.to_string()),
        scale: default_scale()
            .names()
            .into_iter()
            .map(str::to_string)
            .collect(),
        step_names: CLASSROOM_STEPS.iter().map(|s| s.to_string()).collect(),
        rows: DatasetRows::Counts {
            cohort_size: Some(20),
            steps: CLASSROOM_STEPS
                .iter()
                .zip(steps)
                .map(|(name, counts)| CountRow {
                    step: name.to_string(),
                    counts: counts.to_vec(),
                })
                .collect(),
        },
    }
}

/// Cohort 1. Search-retrieval counts are the reported 0/0/9/6/5; the mapping and
/// adaptation counts are one choice that lands in the reported bands.
pub fn classroom_group1() -> CohortDataset {
    counts_dataset(
        "group 1",
        "search-retrieval counts as reported (c:9, d:6, e:5). Mapping and adaptation \
         counts were not reported; the values here are chosen so that the bands give \
         A2 = {c:1/2, d:1/4} and A3 = {a:1/4, b:1/4, c:1/4}.",
        [[0, 0, 9, 6, 5], [2, 2, 10, 6, 0], [6, 7, 7, 0, 0]],
    )
}

/// Cohort 2. No raw counts were reported; these reproduce the reported step sets.
pub fn classroom_group2() -> CohortDataset {
    counts_dataset(
        "group 2",
        "raw counts were not reported. Each count is chosen inside the band that yields \
         the reported memberships (1/4 needs 4 < n <= 8, 1/2 needs 8 < n <= 12, 0 needs \
         n <= 4, with n = 20): A1 = {b:1/4, c:1/2, d:1/4}, A2 = {a:1/4, b:1/4, c:1/2}, \
         A3 = {a:1/4, b:1/4, c:1/4}.",
        [[0, 5, 10, 5, 0], [5, 5, 10, 0, 0], [6, 7, 7, 0, 0]],
    )
}

/// File names written by [`write_fixtures`].
pub const FIXTURE_FILES: [&str; 5] = [
    "group1.json",
    "group2.json",
    "table1_g1.json",
    "table1_g2.json",
    "table1_combined.json",
];

/// Writes the classroom data set and its printed tables into `dir`.
pub fn write_fixtures(dir: &Path) -> Result<Vec<PathBuf>> {
    let contents = [
        classroom_group1().to_json()?,
        classroom_group2().to_json()?,
        classroom_table(ClassroomColumn::Group1).to_json(),
        classroom_table(ClassroomColumn::Group2).to_json(),
        classroom_table(ClassroomColumn::Combined).to_json(),
    ];
    FIXTURE_FILES
        .iter()
        .zip(contents)
        .map(|(name, text)| {
            let path = dir.join(name);
            std::fs::write(&path, text)?;
            Ok(path)
        })
        .collect()
}
