//! Table rendering and fixture diffs.
//!
//! Human formats (markdown, CSV) round with half-to-even at `decimals` places. JSON
//! carries every value exactly as `{"numer", "denom"}` plus a rounded `"display"` string.
//! The JSON layout is described in `docs/report-schema.md`.

use std::fmt::Write as _;

use num_traits::Zero;
use serde_json::{json, Value};

use crate::combine::CombinedAssessment;
use crate::error::{Error, Result};
use crate::fixture::{ExpectedTable, TableKind};
use crate::label::LabelScale;
use crate::lattice::{enumerate_profiles, GroupAssessment, Profile};
use crate::numeric::{abs_diff, format_rational, round_half_even, to_f64, Rational, Rounding};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    Markdown,
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportConfig {
    pub format: ReportFormat,
    pub decimals: u32,
    pub include_zero_rows: bool,
    pub rounding: Rounding,
}

impl Default for ReportConfig {
    fn default() -> Self {
        ReportConfig {
            format: ReportFormat::Markdown,
            decimals: 3,
            include_zero_rows: false,
            rounding: Rounding::HalfEven,
        }
    }
}

impl ReportConfig {
    fn validate(&self) -> Result<()> {
        if self.decimals < 1 {
            return Err(Error::domain("decimals must be at least 1"));
        }
        if self.decimals > 15 {
            return Err(Error::domain("decimals must be at most 15"));
        }
        Ok(())
    }

    fn show(&self, value: &Rational) -> Result<String> {
        format_rational(value, self.decimals, self.rounding)
    }
}

/// Read access shared by single-cohort and combined lattices.
pub trait LatticeView {
    fn scale(&self) -> &LabelScale;
    fn step_count(&self) -> usize;
    /// `m_s` for a cohort, `f(s)` for a combination.
    fn value(&self, profile: &Profile) -> Rational;
    fn possibility(&self, profile: &Profile) -> Rational;
}

impl LatticeView for GroupAssessment {
    fn scale(&self) -> &LabelScale {
        GroupAssessment::scale(self)
    }
    fn step_count(&self) -> usize {
        GroupAssessment::step_count(self)
    }
    fn value(&self, profile: &Profile) -> Rational {
        self.membership(profile)
    }
    fn possibility(&self, profile: &Profile) -> Rational {
        GroupAssessment::possibility(self, profile)
    }
}

impl LatticeView for CombinedAssessment {
    fn scale(&self) -> &LabelScale {
        CombinedAssessment::scale(self)
    }
    fn step_count(&self) -> usize {
        CombinedAssessment::step_count(self)
    }
    fn value(&self, profile: &Profile) -> Rational {
        self.pseudo_frequency(profile)
    }
    fn possibility(&self, profile: &Profile) -> Rational {
        CombinedAssessment::possibility(self, profile)
    }
}

struct Row {
    profile: Profile,
    groups: Vec<(Rational, Rational)>,
    combined: Option<(Rational, Rational)>,
}

fn collect_rows(
    groups: &[GroupAssessment],
    combined: Option<&CombinedAssessment>,
    include_zero_rows: bool,
) -> Result<(LabelScale, Vec<String>, Vec<Row>)> {
    let (scale, k, step_names) = match (groups.first(), combined) {
        (Some(g), _) => (
            g.scale().clone(),
            g.step_count(),
            g.steps()
                .iter()
                .map(|s| s.step_name.clone())
                .collect::<Vec<_>>(),
        ),
        (None, Some(c)) => (
            c.scale().clone(),
            c.step_count(),
            (1..=c.step_count()).map(|i| format!("step {i}")).collect(),
        ),
        (None, None) => return Err(Error::domain("nothing to render")),
    };
    for g in groups {
        if g.scale() != &scale || g.step_count() != k {
            return Err(Error::domain(format!(
                "group {:?} does not share the scale and step count of the others",
                g.group_name()
            )));
        }
    }
    if let Some(c) = combined {
        if c.scale() != &scale || c.step_count() != k {
            return Err(Error::domain(
                "combined lattice does not match the groups' scale and step count",
            ));
        }
    }
    let rows = enumerate_profiles(scale.len(), k)
        .map(|profile| Row {
            groups: groups
                .iter()
                .map(|g| (g.membership(&profile), g.possibility(&profile)))
                .collect(),
            combined: combined.map(|c| (c.pseudo_frequency(&profile), c.possibility(&profile))),
            profile,
        })
        // Filter on exact values so tiny nonzero memberships stay visible.
        .filter(|row| {
            include_zero_rows
                || row.groups.iter().any(|(m, _)| !m.is_zero())
                || row.combined.is_some_and(|(f, _)| !f.is_zero())
        })
        .collect();
    Ok((scale, step_names, rows))
}

fn headers(step_names: &[String], groups: &[GroupAssessment], combined: bool) -> Vec<String> {
    let mut h: Vec<String> = step_names.to_vec();
    for g in groups {
        h.push(format!("m_s({})", g.group_name()));
        h.push(format!("r_s({})", g.group_name()));
    }
    if combined {
        h.push("f(s)".to_string());
        h.push("r(s)".to_string());
    }
    h
}

fn row_cells(row: &Row, scale: &LabelScale, config: &ReportConfig) -> Result<Vec<String>> {
    let mut cells: Vec<String> = row
        .profile
        .names(scale)
        .into_iter()
        .map(str::to_string)
        .collect();
    for (m, r) in &row.groups {
        cells.push(config.show(m)?);
        cells.push(config.show(r)?);
    }
    if let Some((f, r)) = &row.combined {
        cells.push(config.show(f)?);
        cells.push(config.show(r)?);
    }
    Ok(cells)
}

fn markdown_table(header: &[String], body: &[Vec<String>]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "| {} |", header.join(" | "));
    let _ = writeln!(
        out,
        "|{}|",
        header
            .iter()
            .map(|h| "-".repeat(h.len().max(3) + 2))
            .collect::<Vec<_>>()
            .join("|")
    );
    for cells in body {
        let _ = writeln!(out, "| {} |", cells.join(" | "));
    }
    out
}

fn csv_table(header: &[String], body: &[Vec<String>]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| Error::domain(e.to_string());
    w.write_record(header).map_err(err)?;
    for cells in body {
        w.write_record(cells).map_err(err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::domain(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::domain(e.to_string()))
}

/// Exact rational as JSON with a rounded display string.
pub fn rational_json(value: &Rational, config: &ReportConfig) -> Result<Value> {
    Ok(json!({
        "numer": value.numer(),
        "denom": value.denom(),
        "display": config.show(value)?,
    }))
}

fn group_json(g: &GroupAssessment, config: &ReportConfig) -> Result<Value> {
    let steps = g
        .steps()
        .iter()
        .map(|s| {
            let memberships = g
                .scale()
                .labels()
                .iter()
                .map(|l| Ok((l.name.clone(), rational_json(&s.membership(l), config)?)))
                .collect::<Result<serde_json::Map<_, _>>>()?;
            Ok(json!({ "name": s.step_name, "memberships": memberships }))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(json!({
        "name": g.group_name(),
        "steps": steps,
        "max_membership": rational_json(&g.max_membership(), config)?,
        "entropy": g.entropy(),
        "lattice_size": g.lattice_size(),
        "degenerate": g.is_degenerate(),
        "injected": g.is_injected(),
    }))
}

fn combined_json(c: &CombinedAssessment, config: &ReportConfig) -> Result<Value> {
    Ok(json!({
        "groups": c.group_names(),
        "max_pseudo_frequency": rational_json(&c.max_pseudo_frequency(), config)?,
        "degenerate": c.is_degenerate(),
    }))
}

/// JSON document for the given lattices (see `docs/report-schema.md`).
pub fn report_json(
    groups: &[GroupAssessment],
    combined: Option<&CombinedAssessment>,
    config: &ReportConfig,
) -> Result<Value> {
    config.validate()?;
    let (scale, step_names, rows) = collect_rows(groups, combined, config.include_zero_rows)?;
    let rows = rows
        .iter()
        .map(|row| {
            let groups = row
                .groups
                .iter()
                .map(|(m, r)| {
                    Ok(json!({ "m": rational_json(m, config)?, "r": rational_json(r, config)? }))
                })
                .collect::<Result<Vec<_>>>()?;
            let mut obj = json!({ "profile": row.profile.names(&scale), "groups": groups });
            if let Some((f, r)) = &row.combined {
                obj["f"] = rational_json(f, config)?;
                obj["r"] = rational_json(r, config)?;
            }
            Ok(obj)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(json!({
        "scale": scale.names(),
        "steps": step_names,
        "decimals": config.decimals,
        "groups": groups.iter().map(|g| group_json(g, config)).collect::<Result<Vec<_>>>()?,
        "combined": combined.map(|c| combined_json(c, config)).transpose()?,
        "rows": rows,
    }))
}

/// Renders the profile table: step labels, then `m_s`/`r_s` per group, then `f(s)`/`r(s)`
/// when a combination is given. Rows follow step-major label order.
pub fn render_lattice(
    groups: &[GroupAssessment],
    combined: Option<&CombinedAssessment>,
    config: &ReportConfig,
) -> Result<String> {
    config.validate()?;
    if config.format == ReportFormat::Json {
        let value = report_json(groups, combined, config)?;
        let mut text =
            serde_json::to_string_pretty(&value).map_err(|e| Error::domain(e.to_string()))?;
        text.push('\n');
        return Ok(text);
    }
    let (scale, step_names, rows) = collect_rows(groups, combined, config.include_zero_rows)?;
    let header = headers(&step_names, groups, combined.is_some());
    let body = rows
        .iter()
        .map(|row| row_cells(row, &scale, config))
        .collect::<Result<Vec<_>>>()?;
    match config.format {
        ReportFormat::Markdown => Ok(markdown_table(&header, &body)),
        ReportFormat::Csv => csv_table(&header, &body),
        ReportFormat::Json => unreachable!(),
    }
}

/// Markdown/CSV/JSON report for one cohort: step sets, lattice rows, maximum and `H`.
pub fn render_group_report(group: &GroupAssessment, config: &ReportConfig) -> Result<String> {
    config.validate()?;
    match config.format {
        ReportFormat::Json | ReportFormat::Csv => {
            render_lattice(std::slice::from_ref(group), None, config)
        }
        ReportFormat::Markdown => {
            let mut out = String::new();
            let _ = writeln!(out, "# {}", group.group_name());
            if group.is_injected() {
                let _ = writeln!(
                    out,
                    "\nmemberships injected from an external table (paper-compat)"
                );
            }
            let _ = writeln!(out, "\n## Fuzzy step sets\n");
            for s in group.steps() {
                let cells = group
                    .scale()
                    .labels()
                    .iter()
                    .map(|l| Ok(format!("({}, {})", l.name, config.show(&s.membership(l))?)))
                    .collect::<Result<Vec<_>>>()?;
                let _ = writeln!(out, "- {}: {{{}}}", s.step_name, cells.join(", "));
            }
            let _ = writeln!(out, "\n## Profiles\n");
            out.push_str(&render_lattice(std::slice::from_ref(group), None, config)?);
            let _ = writeln!(out);
            let _ = writeln!(
                out,
                "max membership = {} ({})",
                config.show(&group.max_membership())?,
                group.max_membership()
            );
            if group.is_degenerate() {
                let _ = writeln!(out, "degenerate lattice: every membership is 0");
            }
            let _ = writeln!(out, "H = {:.4}", group.entropy());
            Ok(out)
        }
    }
}

/// Markdown/CSV/JSON report for a combination of cohorts.
pub fn render_combined_report(
    groups: &[GroupAssessment],
    combined: &CombinedAssessment,
    config: &ReportConfig,
) -> Result<String> {
    config.validate()?;
    let table = render_lattice(groups, Some(combined), config)?;
    if config.format != ReportFormat::Markdown {
        return Ok(table);
    }
    let mut out = String::new();
    let _ = writeln!(out, "# Combined: {}\n", combined.group_names().join(" + "));
    out.push_str(&table);
    let _ = writeln!(out);
    let _ = writeln!(
        out,
        "max f(s) = {} ({})",
        config.show(&combined.max_pseudo_frequency())?,
        combined.max_pseudo_frequency()
    );
    for g in groups {
        let _ = writeln!(out, "H({}) = {:.4}", g.group_name(), g.entropy());
    }
    if combined.is_degenerate() {
        let _ = writeln!(out, "degenerate combination: every pseudo-frequency is 0");
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiffColumn {
    /// `m_s`, or `f(s)` for combined tables.
    Value,
    Possibility,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiffStatus {
    /// Equal exactly, or equal after half-even rounding to the fixture's decimals.
    Match,
    /// Different, but within tolerance.
    Rounding,
    /// Different beyond tolerance.
    Conflict,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellDiff {
    pub profile: Profile,
    pub labels: Vec<String>,
    pub column: DiffColumn,
    pub computed: Rational,
    pub printed: Rational,
    pub status: DiffStatus,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DiffReport {
    pub cells: Vec<CellDiff>,
}

impl DiffReport {
    pub fn mismatches(&self) -> impl Iterator<Item = &CellDiff> {
        self.cells.iter().filter(|c| c.status != DiffStatus::Match)
    }

    pub fn with_status(&self, status: DiffStatus) -> impl Iterator<Item = &CellDiff> {
        self.cells.iter().filter(move |c| c.status == status)
    }

    /// Distinct profiles with at least one conflicting cell in `column`.
    pub fn conflict_profiles(&self, column: DiffColumn) -> Vec<Profile> {
        let mut out: Vec<Profile> = self
            .with_status(DiffStatus::Conflict)
            .filter(|c| c.column == column)
            .map(|c| c.profile.clone())
            .collect();
        out.dedup();
        out
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let matches = self.with_status(DiffStatus::Match).count();
        let rounding = self.with_status(DiffStatus::Rounding).count();
        let conflicts = self.with_status(DiffStatus::Conflict).count();
        let _ = writeln!(
            out,
            "{} cells: {matches} match, {rounding} rounding, {conflicts} conflict",
            self.cells.len()
        );
        for c in self.mismatches() {
            let column = match c.column {
                DiffColumn::Value => "value",
                DiffColumn::Possibility => "possibility",
            };
            let status = match c.status {
                DiffStatus::Rounding => "rounding",
                _ => "conflict",
            };
            let _ = writeln!(
                out,
                "  ({}) {column}: computed {} vs printed {} -> {status}",
                c.labels.join(","),
                crate::numeric::format_exact(&c.computed),
                crate::numeric::format_exact(&c.printed),
            );
        }
        out
    }
}

fn classify(
    computed: &Rational,
    printed: &Rational,
    decimals: u32,
    tolerance: f64,
) -> Result<DiffStatus> {
    if computed == printed || round_half_even(computed, decimals)? == *printed {
        return Ok(DiffStatus::Match);
    }
    if to_f64(&abs_diff(computed, printed)) <= tolerance {
        Ok(DiffStatus::Rounding)
    } else {
        Ok(DiffStatus::Conflict)
    }
}

/// Compares a lattice against printed values, cell by cell.
pub fn diff_against_fixture<V: LatticeView>(
    lattice: &V,
    fixture: &ExpectedTable,
    tolerance: f64,
) -> Result<DiffReport> {
    let mut cells = Vec::new();
    for row in &fixture.rows {
        let profile = Profile::from_names(&row.profile, lattice.scale())?;
        if profile.len() != lattice.step_count() {
            return Err(Error::domain(format!(
                "fixture profile ({}) has {} labels, lattice has {} steps",
                row.profile.join(","),
                profile.len(),
                lattice.step_count()
            )));
        }
        let pairs = [
            (DiffColumn::Value, row.value, lattice.value(&profile)),
            (
                DiffColumn::Possibility,
                row.possibility,
                lattice.possibility(&profile),
            ),
        ];
        for (column, printed, computed) in pairs {
            let Some(printed) = printed else { continue };
            cells.push(CellDiff {
                profile: profile.clone(),
                labels: row.profile.clone(),
                column,
                computed,
                printed,
                status: classify(&computed, &printed, fixture.decimals, tolerance)?,
            });
        }
    }
    Ok(DiffReport { cells })
}

/// Expected table holding a lattice's own exact values; diffing a lattice against its
/// own snapshot yields no mismatches.
pub fn snapshot<V: LatticeView>(lattice: &V, group: &str, kind: TableKind) -> ExpectedTable {
    let rows = enumerate_profiles(lattice.scale().len(), lattice.step_count())
        .filter(|p| !lattice.value(p).is_zero())
        .map(|p| crate::fixture::ExpectedRow {
            profile: p
                .names(lattice.scale())
                .into_iter()
                .map(str::to_string)
                .collect(),
            value: Some(lattice.value(&p)),
            possibility: Some(lattice.possibility(&p)),
        })
        .collect();
    ExpectedTable {
        group: group.to_string(),
        kind,
        note: None,
        decimals: 3,
        rows,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combine::combine;
    use crate::fixture::{classroom_table, ClassroomColumn};
    use crate::label::default_scale;
    use crate::lattice::assess_group;
    use crate::membership::FuzzyStepSet;

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p, q)
    }

    fn group(name: &str, q: [[i64; 5]; 3]) -> GroupAssessment {
        let steps: Vec<_> = q
            .iter()
            .zip(["search-retrieval", "mapping", "adaptation"])
            .map(|(row, n)| {
                FuzzyStepSet::from_memberships(
                    n,
                    default_scale(),
                    row.iter().map(|&v| r(v, 4)).collect(),
                )
                .unwrap()
            })
            .collect();
        assess_group(name, &steps).unwrap()
    }

    fn g1() -> GroupAssessment {
        group("g1", [[0, 0, 2, 1, 1], [0, 0, 2, 1, 0], [1, 1, 1, 0, 0]])
    }

    fn g2() -> GroupAssessment {
        group("g2", [[0, 1, 2, 1, 0], [1, 1, 2, 0, 0], [1, 1, 1, 0, 0]])
    }

    fn csv_lines(text: &str) -> Vec<String> {
        text.lines().map(str::to_string).collect()
    }

    #[test]
    fn half_even_display_matches_print() {
        let config = ReportConfig {
            format: ReportFormat::Csv,
            ..ReportConfig::default()
        };
        let text = render_lattice(&[g1()], None, &config).unwrap();
        let lines = csv_lines(&text);
        assert_eq!(
            lines[0],
            "search-retrieval,mapping,adaptation,m_s(g1),r_s(g1)"
        );
        assert!(lines.contains(&"c,c,a,0.062,1.000".to_string()));
        assert!(lines.contains(&"e,d,c,0.016,0.250".to_string()));
        assert!(lines.contains(&"d,c,a,0.031,0.500".to_string()));
        // 15 nonzero profiles + header
        assert_eq!(lines.len(), 16);
    }

    #[test]
    fn zero_rows_and_order() {
        let config = ReportConfig {
            format: ReportFormat::Csv,
            include_zero_rows: true,
            ..ReportConfig::default()
        };
        let lines = csv_lines(&render_lattice(&[g1()], None, &config).unwrap());
        assert_eq!(lines.len(), 126);
        assert!(lines[1].starts_with("a,a,a,"));
        assert!(lines[125].starts_with("e,e,e,"));
    }

    #[test]
    fn tiny_values_are_not_filtered() {
        // 1/64 * 1/64 style values round to 0.000 at 3 decimals but are nonzero.
        let tiny = group("t", [[1, 0, 0, 0, 0], [1, 0, 0, 0, 0], [1, 0, 0, 0, 0]]);
        let config = ReportConfig {
            format: ReportFormat::Csv,
            decimals: 1,
            ..ReportConfig::default()
        };
        let lines = csv_lines(&render_lattice(&[tiny], None, &config).unwrap());
        assert_eq!(lines.len(), 2);
        assert_eq!(lines[1], "a,a,a,0.0,1.0");
    }

    #[test]
    fn combined_columns() {
        let (a, b) = (g1(), g2());
        let c = combine(&[a.clone(), b.clone()]).unwrap();
        let config = ReportConfig {
            format: ReportFormat::Csv,
            ..ReportConfig::default()
        };
        let lines = csv_lines(&render_lattice(&[a, b], Some(&c), &config).unwrap());
        assert!(lines[0].ends_with("f(s),r(s)"));
        assert!(lines.contains(&"c,c,a,0.062,1.000,0.062,1.000,0.125,1.000".to_string()));
        assert!(lines.contains(&"b,b,b,0.000,0.000,0.016,0.250,0.016,0.125".to_string()));
    }

    #[test]
    fn json_is_exact() {
        let config = ReportConfig {
            format: ReportFormat::Json,
            ..ReportConfig::default()
        };
        let text = render_lattice(&[g1()], None, &config).unwrap();
        let v: Value = serde_json::from_str(&text).unwrap();
        let row = v["rows"]
            .as_array()
            .unwrap()
            .iter()
            .find(|r| r["profile"] == json!(["c", "c", "a"]))
            .unwrap();
        assert_eq!(row["groups"][0]["m"]["numer"], 1);
        assert_eq!(row["groups"][0]["m"]["denom"], 16);
        assert_eq!(row["groups"][0]["m"]["display"], "0.062");
        assert_eq!(v["groups"][0]["max_membership"]["denom"], 16);
    }

    #[test]
    fn exact_rounding_mode() {
        let config = ReportConfig {
            format: ReportFormat::Csv,
            rounding: Rounding::Exact,
            ..ReportConfig::default()
        };
        let lines = csv_lines(&render_lattice(&[g1()], None, &config).unwrap());
        assert!(lines.contains(&"c,c,a,0.0625,1".to_string()));
    }

    #[test]
    fn render_errors() {
        let config = ReportConfig {
            decimals: 0,
            ..ReportConfig::default()
        };
        assert!(render_lattice(&[g1()], None, &config).is_err());
        assert!(render_lattice(&[], None, &ReportConfig::default()).is_err());
        let other = assess_group(
            "x",
            &[FuzzyStepSet::from_memberships("s", default_scale(), vec![r(1, 1); 5]).unwrap()],
        )
        .unwrap();
        assert!(render_lattice(&[g1(), other], None, &ReportConfig::default()).is_err());
    }

    #[test]
    fn diff_flags_the_erratum_row() {
        let d1 =
            diff_against_fixture(&g1(), &classroom_table(ClassroomColumn::Group1), 0.01).unwrap();
        let ccb = Profile::new(vec![2, 2, 1]);
        assert_eq!(d1.conflict_profiles(DiffColumn::Value), vec![ccb.clone()]);
        let cell = d1
            .with_status(DiffStatus::Conflict)
            .find(|c| c.column == DiffColumn::Value)
            .unwrap();
        assert_eq!(cell.computed, r(1, 16));
        assert_eq!(cell.printed, r(0, 1));

        let d2 =
            diff_against_fixture(&g2(), &classroom_table(ClassroomColumn::Group2), 0.01).unwrap();
        assert_eq!(d2.conflict_profiles(DiffColumn::Value), vec![ccb]);
        // 0.25 against the printed 0.258
        assert!(d2
            .with_status(DiffStatus::Rounding)
            .any(|c| c.printed == r(258, 1000)));
    }

    #[test]
    fn self_diff_is_clean() {
        let g = g1();
        let snap = snapshot(&g, "g1", TableKind::Group);
        let d = diff_against_fixture(&g, &snap, 0.0).unwrap();
        assert_eq!(d.mismatches().count(), 0);
        assert_eq!(d.cells.len(), 30);
    }
}
