//! Cohort data files.
//!
//! Two shapes are accepted, each as JSON or CSV:
//!
//! * counts: one row per step holding the number of solvers per label;
//! * per-solver: one record per (solver, step) holding the number of problems solved.
//!
//! Parsing validates the schema strictly and reports the offending record or line.
//! [`to_step_counts`] turns either shape into per-step [`StepCounts`].

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::label::{label_from_solved, LabelScale};
use crate::membership::StepCounts;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DataFormat {
    Json,
    Csv,
}

impl DataFormat {
    /// `.csv` means CSV, anything else JSON.
    pub fn from_path(path: &std::path::Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("csv") => DataFormat::Csv,
            _ => DataFormat::Json,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SourceKind {
    PerSolver,
    Counts,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverRecord {
    pub solver: String,
    pub step: String,
    pub solved: u64,
    pub total: u64,
}

/// Counts for one step, ordered like the dataset's scale.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountRow {
    pub step: String,
    pub counts: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DatasetRows {
    Counts {
        /// Declared cohort size; CSV files do not carry one.
        cohort_size: Option<u64>,
        steps: Vec<CountRow>,
    },
    PerSolver(Vec<SolverRecord>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohortDataset {
    pub group_name: String,
    /// Free-text provenance note (JSON `note` field).
    pub note: Option<String>,
    /// Label names, weakest first.
    pub scale: Vec<String>,
    pub step_names: Vec<String>,
    pub rows: DatasetRows,
}

impl CohortDataset {
    pub fn source_kind(&self) -> SourceKind {
        match self.rows {
            DatasetRows::Counts { .. } => SourceKind::Counts,
            DatasetRows::PerSolver(_) => SourceKind::PerSolver,
        }
    }

    pub fn label_scale(&self) -> Result<LabelScale> {
        LabelScale::from_names(&self.scale)
    }

    pub fn to_json(&self) -> Result<String> {
        let value = match &self.rows {
            DatasetRows::Counts { cohort_size, steps } => {
                let cohort_size = match cohort_size {
                    Some(n) => *n,
                    None => steps
                        .first()
                        .map(|s| s.counts.iter().sum())
                        .unwrap_or_default(),
                };
                let steps = steps
                    .iter()
                    .map(|row| RawStep {
                        name: row.step.clone(),
                        counts: self
                            .scale
                            .iter()
                            .cloned()
                            .zip(row.counts.iter().map(|&c| Value::from(c)))
                            .collect(),
                    })
                    .collect();
                serde_json::to_value(RawCounts {
                    group: self.group_name.clone(),
                    note: self.note.clone(),
                    scale: self.scale.clone(),
                    cohort_size: cohort_size as i64,
                    steps,
                })
            }
            DatasetRows::PerSolver(records) => {
                let total = records.first().map(|r| r.total).unwrap_or(1);
                if records.iter().any(|r| r.total != total) {
                    return Err(Error::domain(
                        "per-solver JSON carries one total_problems; this dataset has several",
                    ));
                }
                serde_json::to_value(RawPerSolver {
                    group: self.group_name.clone(),
                    note: self.note.clone(),
                    scale: self.scale.clone(),
                    total_problems: total as i64,
                    records: records
                        .iter()
                        .map(|r| RawRecord {
                            solver: r.solver.clone(),
                            step: r.step.clone(),
                            solved: r.solved as i64,
                        })
                        .collect(),
                })
            }
        }
        .map_err(|e| Error::domain(e.to_string()))?;
        let mut text =
            serde_json::to_string_pretty(&value).map_err(|e| Error::domain(e.to_string()))?;
        text.push('\n');
        Ok(text)
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut writer = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::domain(e.to_string());
        match &self.rows {
            DatasetRows::Counts { steps, .. } => {
                let mut header = vec!["step".to_string()];
                header.extend(self.scale.iter().cloned());
                writer.write_record(&header).map_err(io)?;
                for row in steps {
                    let mut rec = vec![row.step.clone()];
                    rec.extend(row.counts.iter().map(u64::to_string));
                    writer.write_record(&rec).map_err(io)?;
                }
            }
            DatasetRows::PerSolver(records) => {
                writer
                    .write_record(["solver", "step", "solved", "total"])
                    .map_err(io)?;
                for r in records {
                    writer
                        .write_record([
                            r.solver.as_str(),
                            r.step.as_str(),
                            &r.solved.to_string(),
                            &r.total.to_string(),
                        ])
                        .map_err(io)?;
                }
            }
        }
        let bytes = writer
            .into_inner()
            .map_err(|e| Error::domain(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::domain(e.to_string()))
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCounts {
    group: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    note: Option<String>,
    scale: Vec<String>,
    cohort_size: i64,
    steps: Vec<RawStep>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawStep {
    name: String,
    counts: serde_json::Map<String, Value>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPerSolver {
    group: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    note: Option<String>,
    scale: Vec<String>,
    total_problems: i64,
    records: Vec<RawRecord>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRecord {
    solver: String,
    step: String,
    solved: i64,
}

/// Extra context for parsing.
#[derive(Debug, Clone, Default)]
pub struct ParseOptions {
    /// Expected scale. Files that declare a scale must match it; per-solver CSV files,
    /// which cannot declare one, use it (default `a..e`).
    pub scale: Option<LabelScale>,
    /// Group name for formats without one (CSV).
    pub group_name: Option<String>,
}

pub fn parse_dataset(bytes: &[u8], format: DataFormat) -> Result<CohortDataset> {
    parse_dataset_with(bytes, format, &ParseOptions::default())
}

pub fn parse_dataset_with(
    bytes: &[u8],
    format: DataFormat,
    options: &ParseOptions,
) -> Result<CohortDataset> {
    let text = std::str::from_utf8(bytes)
        .map_err(|e| Error::parse(format!("byte {}", e.valid_up_to()), "input is not UTF-8"))?;
    let dataset = match format {
        DataFormat::Json => parse_json(text)?,
        DataFormat::Csv => parse_csv(text, options)?,
    };
    if let Some(expected) = &options.scale {
        if dataset.scale != expected.names() {
            return Err(Error::validation(
                "scale",
                format!(
                    "file declares scale [{}] but [{}] was expected",
                    dataset.scale.join(","),
                    expected.names().join(",")
                ),
            ));
        }
    }
    let mut dataset = dataset;
    if let Some(name) = &options.group_name {
        if dataset.group_name.is_empty() {
            dataset.group_name = name.clone();
        }
    }
    Ok(dataset)
}

fn json_schema_error(e: serde_json::Error) -> Error {
    Error::validation("schema", e.to_string())
}

fn parse_json(text: &str) -> Result<CohortDataset> {
    let value: Value = serde_json::from_str(text).map_err(|e| {
        Error::parse(
            format!("line {} column {}", e.line(), e.column()),
            e.to_string(),
        )
    })?;
    let object = value
        .as_object()
        .ok_or_else(|| Error::validation("document", "top level must be a JSON object"))?;
    match (object.contains_key("steps"), object.contains_key("records")) {
        (true, false) => {
            let raw: RawCounts = serde_json::from_value(value).map_err(json_schema_error)?;
            counts_from_json(raw)
        }
        (false, true) => {
            let raw: RawPerSolver = serde_json::from_value(value).map_err(json_schema_error)?;
            per_solver_from_json(raw)
        }
        (true, true) => Err(Error::validation(
            "document",
            "both \"steps\" and \"records\" present",
        )),
        (false, false) => Err(Error::validation(
            "document",
            "expected a \"steps\" (counts) or \"records\" (per-solver) field",
        )),
    }
}

fn check_scale(names: &[String]) -> Result<()> {
    LabelScale::from_names(names)
        .map(|_| ())
        .map_err(|e| Error::validation("scale", e.to_string()))
}

fn no_records() -> Error {
    Error::validation("records", "no records")
}

fn counts_from_json(raw: RawCounts) -> Result<CohortDataset> {
    check_scale(&raw.scale)?;
    if raw.steps.is_empty() {
        return Err(no_records());
    }
    if raw.cohort_size < 1 {
        return Err(Error::validation(
            "cohort_size",
            format!("must be positive, got {}", raw.cohort_size),
        ));
    }
    let mut step_names = Vec::new();
    let mut rows = Vec::new();
    for (i, step) in raw.steps.iter().enumerate() {
        let location = format!("steps[{i}] ({:?})", step.name);
        let mut cells = Vec::new();
        for (label, value) in &step.counts {
            let count = value.as_i64().ok_or_else(|| {
                Error::validation(
                    &location,
                    format!("count for {label:?} is not an integer: {value}"),
                )
            })?;
            cells.push((label.clone(), count));
        }
        rows.push(count_row(&location, &step.name, &raw.scale, &cells)?);
        step_names.push(step.name.clone());
    }
    check_unique_steps(&step_names)?;
    Ok(CohortDataset {
        group_name: raw.group,
        note: raw.note,
        scale: raw.scale,
        step_names,
        rows: DatasetRows::Counts {
            cohort_size: Some(raw.cohort_size as u64),
            steps: rows,
        },
    })
}

fn count_row(
    location: &str,
    step: &str,
    scale: &[String],
    cells: &[(String, i64)],
) -> Result<CountRow> {
    if step.trim().is_empty() {
        return Err(Error::validation(location, "step name is empty"));
    }
    let mut counts = vec![None; scale.len()];
    for (label, count) in cells {
        let at = scale
            .iter()
            .position(|s| s == label)
            .ok_or_else(|| Error::validation(location, format!("unknown label {label:?}")))?;
        if *count < 0 {
            return Err(Error::validation(
                location,
                format!("negative count {count} for label {label:?}"),
            ));
        }
        if counts[at].replace(*count as u64).is_some() {
            return Err(Error::validation(
                location,
                format!("label {label:?} repeated"),
            ));
        }
    }
    let counts = counts
        .into_iter()
        .zip(scale)
        .map(|(c, name)| {
            c.ok_or_else(|| {
                Error::validation(location, format!("missing count for label {name:?}"))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CountRow {
        step: step.to_string(),
        counts,
    })
}

fn check_unique_steps(names: &[String]) -> Result<()> {
    let mut seen = HashSet::new();
    for name in names {
        if !seen.insert(name) {
            return Err(Error::validation(
                format!("step {name:?}"),
                "step listed more than once",
            ));
        }
    }
    Ok(())
}

fn per_solver_from_json(raw: RawPerSolver) -> Result<CohortDataset> {
    check_scale(&raw.scale)?;
    if raw.total_problems < 1 {
        return Err(Error::validation(
            "total_problems",
            format!("must be positive, got {}", raw.total_problems),
        ));
    }
    let records = raw
        .records
        .into_iter()
        .enumerate()
        .map(|(i, r)| {
            let location = format!("records[{i}] (solver {:?}, step {:?})", r.solver, r.step);
            solver_record(&location, r.solver, r.step, r.solved, raw.total_problems)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut dataset =
        finish_per_solver(raw.group, raw.scale, records, |i| format!("records[{i}]"))?;
    dataset.note = raw.note;
    Ok(dataset)
}

fn solver_record(
    location: &str,
    solver: String,
    step: String,
    solved: i64,
    total: i64,
) -> Result<SolverRecord> {
    if solver.trim().is_empty() {
        return Err(Error::validation(location, "solver id is empty"));
    }
    if step.trim().is_empty() {
        return Err(Error::validation(location, "step name is empty"));
    }
    if total < 1 {
        return Err(Error::validation(
            location,
            format!("total must be positive, got {total}"),
        ));
    }
    if solved < 0 || solved > total {
        return Err(Error::validation(
            location,
            format!("solved = {solved} is outside 0..={total}"),
        ));
    }
    Ok(SolverRecord {
        solver,
        step,
        solved: solved as u64,
        total: total as u64,
    })
}

fn finish_per_solver(
    group_name: String,
    scale: Vec<String>,
    records: Vec<SolverRecord>,
    locate: impl Fn(usize) -> String,
) -> Result<CohortDataset> {
    if records.is_empty() {
        return Err(no_records());
    }
    let mut step_names: Vec<String> = Vec::new();
    let mut step_totals: HashMap<&str, u64> = HashMap::new();
    let mut pairs = HashSet::new();
    for (i, r) in records.iter().enumerate() {
        if !pairs.insert((r.solver.as_str(), r.step.as_str())) {
            return Err(Error::validation(
                locate(i),
                format!(
                    "duplicate record for solver {:?}, step {:?}",
                    r.solver, r.step
                ),
            ));
        }
        match step_totals.get(r.step.as_str()) {
            None => {
                step_totals.insert(&r.step, r.total);
                step_names.push(r.step.clone());
            }
            Some(&t) if t != r.total => {
                return Err(Error::validation(
                    locate(i),
                    format!(
                        "total {} differs from {t} used earlier for step {:?}",
                        r.total, r.step
                    ),
                ));
            }
            Some(_) => {}
        }
    }
    Ok(CohortDataset {
        group_name,
        note: None,
        scale,
        step_names,
        rows: DatasetRows::PerSolver(records),
    })
}

fn csv_error(e: csv::Error) -> Error {
    let location = match e.position() {
        Some(p) => format!("line {} byte {}", p.line(), p.byte()),
        None => "csv".to_string(),
    };
    Error::parse(location, e.to_string())
}

fn parse_csv(text: &str, options: &ParseOptions) -> Result<CohortDataset> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let header: Vec<String> = reader
        .headers()
        .map_err(csv_error)?
        .iter()
        .map(str::to_string)
        .collect();
    let group_name = options.group_name.clone().unwrap_or_default();
    let mut records = Vec::new();
    for row in reader.records() {
        let row = row.map_err(csv_error)?;
        let line = row.position().map(|p| p.line()).unwrap_or_default();
        records.push((line, row));
    }
    let int = |line: u64, column: &str, cell: &str| -> Result<i64> {
        cell.parse::<i64>().map_err(|_| {
            Error::validation(
                format!("line {line}"),
                format!("{column} = {cell:?} is not an integer"),
            )
        })
    };

    match header.first().map(String::as_str) {
        Some("step") => {
            let scale: Vec<String> = header[1..].to_vec();
            check_scale(&scale)?;
            if records.is_empty() {
                return Err(no_records());
            }
            let mut step_names = Vec::new();
            let mut rows = Vec::new();
            for (line, rec) in &records {
                let location = format!("line {line}");
                let step = rec.get(0).unwrap_or_default().to_string();
                let cells = scale
                    .iter()
                    .zip(rec.iter().skip(1))
                    .map(|(label, cell)| Ok((label.clone(), int(*line, label, cell)?)))
                    .collect::<Result<Vec<_>>>()?;
                rows.push(count_row(&location, &step, &scale, &cells)?);
                step_names.push(step);
            }
            check_unique_steps(&step_names)?;
            Ok(CohortDataset {
                group_name,
                note: None,
                scale,
                step_names,
                rows: DatasetRows::Counts {
                    cohort_size: None,
                    steps: rows,
                },
            })
        }
        Some("solver") => {
            if header != ["solver", "step", "solved", "total"] {
                return Err(Error::validation(
                    "line 1",
                    format!(
                        "per-solver header must be solver,step,solved,total, got {}",
                        header.join(",")
                    ),
                ));
            }
            let scale = options
                .scale
                .clone()
                .unwrap_or_default()
                .names()
                .into_iter()
                .map(str::to_string)
                .collect();
            let lines: Vec<u64> = records.iter().map(|(l, _)| *l).collect();
            let parsed = records
                .iter()
                .map(|(line, rec)| {
                    let location = format!("line {line}");
                    solver_record(
                        &location,
                        rec[0].to_string(),
                        rec[1].to_string(),
                        int(*line, "solved", &rec[2])?,
                        int(*line, "total", &rec[3])?,
                    )
                })
                .collect::<Result<Vec<_>>>()?;
            finish_per_solver(group_name, scale, parsed, |i| format!("line {}", lines[i]))
        }
        _ => Err(Error::validation(
            "line 1",
            format!(
                "unrecognised header {:?}; expected step,<labels…> or solver,step,solved,total",
                header.join(",")
            ),
        )),
    }
}

/// Per-step counts in step order, validated so every step sums to one cohort size.
pub fn to_step_counts(dataset: &CohortDataset, scale: &LabelScale) -> Result<Vec<StepCounts>> {
    if dataset.scale != scale.names() {
        return Err(Error::validation(
            "scale",
            format!(
                "dataset scale [{}] differs from [{}]",
                dataset.scale.join(","),
                scale.names().join(",")
            ),
        ));
    }
    match &dataset.rows {
        DatasetRows::Counts { cohort_size, steps } => {
            let mut expected = *cohort_size;
            steps
                .iter()
                .map(|row| {
                    let sum: u64 = row.counts.iter().sum();
                    let n = *expected.get_or_insert(sum);
                    if sum != n {
                        return Err(Error::validation(
                            format!("step {:?}", row.step),
                            format!("counts sum to {sum} but the cohort size is {n}"),
                        ));
                    }
                    StepCounts::new(row.step.clone(), scale.clone(), row.counts.clone(), n)
                })
                .collect()
        }
        DatasetRows::PerSolver(records) => {
            let mut by_step: BTreeMap<&str, Vec<u64>> = BTreeMap::new();
            let mut solvers_by_step: HashMap<&str, HashSet<&str>> = HashMap::new();
            let all_solvers: HashSet<&str> = records.iter().map(|r| r.solver.as_str()).collect();
            for r in records {
                let label = label_from_solved(r.solved, r.total, scale)?;
                by_step
                    .entry(&r.step)
                    .or_insert_with(|| vec![0; scale.len()])[label.index] += 1;
                solvers_by_step
                    .entry(&r.step)
                    .or_default()
                    .insert(&r.solver);
            }
            for step in &dataset.step_names {
                let present = solvers_by_step
                    .get(step.as_str())
                    .cloned()
                    .unwrap_or_default();
                let mut missing: Vec<&&str> = all_solvers.difference(&present).collect();
                missing.sort();
                if let Some(solver) = missing.first() {
                    return Err(Error::validation(
                        format!("step {step:?}"),
                        format!("no record for solver {solver:?}"),
                    ));
                }
            }
            let n = all_solvers.len() as u64;
            dataset
                .step_names
                .iter()
                .map(|step| {
                    let counts = by_step.remove(step.as_str()).unwrap_or_default();
                    StepCounts::new(step.clone(), scale.clone(), counts, n)
                })
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::label::default_scale;

    const GROUP1: &str = r#"{
      "group": "group 1",
      "scale": ["a", "b", "c", "d", "e"],
      "cohort_size": 20,
      "steps": [
        {"name": "search-retrieval", "counts": {"a": 0, "b": 0, "c": 9, "d": 6, "e": 5}},
        {"name": "mapping", "counts": {"a": 2, "b": 2, "c": 10, "d": 6, "e": 0}},
        {"name": "adaptation", "counts": {"a": 6, "b": 7, "c": 7, "d": 0, "e": 0}}
      ]
    }"#;

    #[test]
    fn group1_counts_json() {
        let ds = parse_dataset(GROUP1.as_bytes(), DataFormat::Json).unwrap();
        assert_eq!(ds.source_kind(), SourceKind::Counts);
        assert_eq!(ds.step_names, ["search-retrieval", "mapping", "adaptation"]);
        let steps = to_step_counts(&ds, &default_scale()).unwrap();
        assert_eq!(steps[0].counts(), &[0, 0, 9, 6, 5]);
        assert_eq!(steps[0].cohort_size, 20);
    }

    #[test]
    fn empty_rows() {
        let text =
            r#"{"group": "g", "scale": ["a","b","c","d","e"], "cohort_size": 1, "steps": []}"#;
        match parse_dataset(text.as_bytes(), DataFormat::Json) {
            Err(Error::Validation { message, .. }) => assert_eq!(message, "no records"),
            other => panic!("{other:?}"),
        }
        let text =
            r#"{"group": "g", "scale": ["a","b","c","d","e"], "total_problems": 4, "records": []}"#;
        assert!(matches!(
            parse_dataset(text.as_bytes(), DataFormat::Json),
            Err(Error::Validation { .. })
        ));
    }

    #[test]
    fn single_solver() {
        let text = r#"{"group": "g", "scale": ["a","b","c","d","e"], "total_problems": 4,
            "records": [{"solver": "s1", "step": "search-retrieval", "solved": 4}]}"#;
        let ds = parse_dataset(text.as_bytes(), DataFormat::Json).unwrap();
        let steps = to_step_counts(&ds, &default_scale()).unwrap();
        assert_eq!(steps.len(), 1);
        assert_eq!(steps[0].counts(), &[0, 0, 0, 0, 1]);
        assert_eq!(steps[0].cohort_size, 1);
    }

    #[test]
    fn per_solver_aggregation() {
        let mut records = Vec::new();
        let solved = std::iter::repeat_n(2, 9)
            .chain(std::iter::repeat_n(3, 6))
            .chain(std::iter::repeat_n(4, 5));
        for (i, s) in solved.enumerate() {
            records.push(format!(
                r#"{{"solver": "s{i}", "step": "search-retrieval", "solved": {s}}}"#
            ));
        }
        let text = format!(
            r#"{{"group": "g", "scale": ["a","b","c","d","e"], "total_problems": 4, "records": [{}]}}"#,
            records.join(",")
        );
        let ds = parse_dataset(text.as_bytes(), DataFormat::Json).unwrap();
        let steps = to_step_counts(&ds, &default_scale()).unwrap();
        assert_eq!(steps[0].counts(), &[0, 0, 9, 6, 5]);
        assert_eq!(steps[0].cohort_size, 20);
    }

    #[test]
    fn all_zero_solved_lands_on_lowest() {
        let csv = "solver,step,solved,total\ns1,x,0,4\ns2,x,0,4\ns3,x,0,4\n";
        let ds = parse_dataset(csv.as_bytes(), DataFormat::Csv).unwrap();
        let steps = to_step_counts(&ds, &default_scale()).unwrap();
        assert_eq!(steps[0].counts(), &[3, 0, 0, 0, 0]);
    }

    #[test]
    fn unequal_step_sums() {
        let csv = "step,a,b,c,d,e\nx,0,0,9,6,5\ny,0,0,9,6,4\n";
        let ds = parse_dataset(csv.as_bytes(), DataFormat::Csv).unwrap();
        match to_step_counts(&ds, &default_scale()) {
            Err(Error::Validation { location, .. }) => assert!(location.contains('y')),
            other => panic!("{other:?}"),
        }
        let json = GROUP1.replace("\"e\": 5", "\"e\": 4");
        let ds = parse_dataset(json.as_bytes(), DataFormat::Json).unwrap();
        assert!(to_step_counts(&ds, &default_scale()).is_err());
    }

    #[test]
    fn missing_step_record() {
        let csv = "solver,step,solved,total\ns1,x,1,4\ns2,x,1,4\ns1,y,1,4\n";
        let ds = parse_dataset(csv.as_bytes(), DataFormat::Csv).unwrap();
        match to_step_counts(&ds, &default_scale()) {
            Err(Error::Validation { message, .. }) => assert!(message.contains("s2")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn schema_violations() {
        let bad_label = GROUP1.replace("\"e\": 5", "\"z\": 5");
        match parse_dataset(bad_label.as_bytes(), DataFormat::Json) {
            Err(Error::Validation { location, message }) => {
                assert!(location.contains("search-retrieval"));
                assert!(message.contains("\"z\""));
            }
            other => panic!("{other:?}"),
        }
        let negative = GROUP1.replace("\"c\": 9", "\"c\": -9");
        assert!(matches!(
            parse_dataset(negative.as_bytes(), DataFormat::Json),
            Err(Error::Validation { .. })
        ));
        let unknown = GROUP1.replace("\"cohort_size\"", "\"colour\": 1, \"cohort_size\"");
        assert!(matches!(
            parse_dataset(unknown.as_bytes(), DataFormat::Json),
            Err(Error::Validation { .. })
        ));
        let dup = "solver,step,solved,total\ns1,x,1,4\ns1,x,2,4\n";
        match parse_dataset(dup.as_bytes(), DataFormat::Csv) {
            Err(Error::Validation { location, .. }) => assert_eq!(location, "line 3"),
            other => panic!("{other:?}"),
        }
        let inconsistent = "solver,step,solved,total\ns1,x,1,4\ns2,x,2,5\n";
        assert!(parse_dataset(inconsistent.as_bytes(), DataFormat::Csv).is_err());
        let too_many = "solver,step,solved,total\ns1,x,5,4\n";
        assert!(parse_dataset(too_many.as_bytes(), DataFormat::Csv).is_err());
    }

    #[test]
    fn syntax_errors_carry_position() {
        match parse_dataset(b"{\n  \"group\": ,\n}", DataFormat::Json) {
            Err(Error::Parse { location, .. }) => assert!(location.starts_with("line 2")),
            other => panic!("{other:?}"),
        }
        match parse_dataset(b"step,a,b,c,d,e\nx,1,2\n", DataFormat::Csv) {
            Err(Error::Parse { location, .. }) => assert!(location.starts_with("line 2")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn scale_option_must_match() {
        let options = ParseOptions {
            scale: Some(LabelScale::from_names(&["x", "y", "z"]).unwrap()),
            group_name: None,
        };
        assert!(parse_dataset_with(GROUP1.as_bytes(), DataFormat::Json, &options).is_err());
        let csv = "solver,step,solved,total\ns1,x,1,2\n";
        let ds = parse_dataset_with(csv.as_bytes(), DataFormat::Csv, &options).unwrap();
        assert_eq!(ds.scale, ["x", "y", "z"]);
    }

    #[test]
    fn json_round_trip() {
        let ds = parse_dataset(GROUP1.as_bytes(), DataFormat::Json).unwrap();
        let again = parse_dataset(ds.to_json().unwrap().as_bytes(), DataFormat::Json).unwrap();
        assert_eq!(ds, again);
        let csv = parse_dataset(ds.to_csv().unwrap().as_bytes(), DataFormat::Csv).unwrap();
        assert_eq!(
            to_step_counts(&csv, &default_scale()).unwrap(),
            to_step_counts(&ds, &default_scale()).unwrap()
        );
    }
}
