//! Table reproduction: real-form counts and dimensions for the classical
//! families, constants for the exceptional pairs.

use std::path::PathBuf;
use std::time::Instant;

use anyhow::Result;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use diracidx::catalog::{Catalog, PairSource, PairSpec};
use diracidx::orbits::{enumerate_real_forms, orbit_dimension_from_grading, ClassicalFamily};
use diracidx::springer::springer_gate;

use crate::args::MethodArg;
use crate::commands::{compute_entries, ConstantEntry, ConstantsRequest};
use crate::text::{list, Table};
use crate::Outcome;

/// Largest `p + q` swept for `SU(p,q)`.
pub const SU_MAX_SUM: usize = 8;
/// Largest rank swept for the other families.
pub const OTHER_MAX_RANK: usize = 6;

/// One classical family member.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Table1Row {
    pub pair_id: String,
    pub group: String,
    pub springer: bool,
    pub real_forms: Option<usize>,
    pub expected_real_forms: Option<usize>,
    pub orbit_dim: Option<usize>,
    pub expected_dim: Option<usize>,
    /// `2·#Δ_n^+`.
    pub twice_noncompact: usize,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Table1Report {
    pub rows: Vec<Table1Row>,
    pub passed: bool,
}

/// The pairs of the Table 1 sweep.
pub fn table1_sweep(catalog: &Catalog) -> Vec<PairSpec> {
    catalog
        .family_sweep(SU_MAX_SUM - 1)
        .into_iter()
        .filter(|s| match s.source {
            PairSource::Classical(ClassicalFamily::Su { p, q }) => p + q <= SU_MAX_SUM,
            _ => s.rank() <= OTHER_MAX_RANK,
        })
        .collect()
}

fn check_family_member(spec: &PairSpec) -> Table1Row {
    let PairSource::Classical(family) = &spec.source else { unreachable!("sweep yields classical pairs") };
    let mut row = Table1Row {
        pair_id: spec.id.clone(),
        group: spec.group.clone(),
        springer: spec.springer,
        real_forms: None,
        expected_real_forms: family.table_real_forms(),
        orbit_dim: None,
        expected_dim: family.table_dim(),
        twice_noncompact: 0,
        passed: true,
        detail: None,
    };
    let run = |row: &mut Table1Row| -> diracidx::Result<Vec<String>> {
        let pair = spec.build()?;
        row.twice_noncompact = 2 * pair.num_noncompact_positive();
        let mut problems = Vec::new();
        let gate = springer_gate(spec, &pair)?;
        if !gate.is_springer {
            return Ok(problems);
        }
        let forms = enumerate_real_forms(spec, &pair)?;
        row.real_forms = Some(forms.len());
        let dim = gate.orbit.as_ref().map(|o| o.dim);
        row.orbit_dim = dim;
        if row.expected_real_forms.is_some_and(|e| e != forms.len()) {
            problems.push(format!("{} real forms, table has {}", forms.len(), row.expected_real_forms.unwrap()));
        }
        if dim != Some(row.twice_noncompact) {
            problems.push(format!("dim O = {dim:?}, 2·#Δn+ = {}", row.twice_noncompact));
        }
        for f in &forms {
            let d = orbit_dimension_from_grading(&f.grading);
            if Some(d) != dim {
                problems.push(format!("form {} has orbit dimension {d}", f.form_id));
            }
        }
        Ok(problems)
    };
    match run(&mut row) {
        Ok(problems) if problems.is_empty() => {}
        Ok(problems) => {
            row.passed = false;
            row.detail = Some(problems.join("; "));
        }
        Err(e) => {
            row.passed = false;
            row.detail = Some(e.to_string());
        }
    }
    row
}

pub fn verify_table1(catalog: &Catalog) -> Table1Report {
    let rows: Vec<Table1Row> = table1_sweep(catalog).par_iter().map(check_family_member).collect();
    let passed = rows.iter().all(|r| r.passed);
    Table1Report { rows, passed }
}

pub fn table1_outcome(catalog: &Catalog) -> Result<Outcome> {
    let report = verify_table1(catalog);
    let opt = |v: Option<usize>| v.map_or("-".to_string(), |x| x.to_string());
    let mut t = Table::new(&["pair", "group", "forms", "table", "dim", "table", "2·#Δn+", "status"]);
    for r in &report.rows {
        let status = match (&r.detail, r.springer) {
            (Some(d), _) => format!("MISMATCH: {d}"),
            (None, false) => "excluded".into(),
            (None, true) => "ok".into(),
        };
        t.row(vec![
            r.pair_id.clone(),
            r.group.clone(),
            opt(r.real_forms),
            opt(r.expected_real_forms),
            opt(r.orbit_dim),
            opt(r.expected_dim),
            r.twice_noncompact.to_string(),
            status,
        ]);
    }
    let failed = report.rows.iter().filter(|r| !r.passed).count();
    let text = format!("{}\n{} pairs, {failed} mismatches", t.render(), report.rows.len());
    let passed = report.passed;
    Outcome::new(&report, text, passed)
}

/// Options for the Table 2 run.
#[derive(Clone, Debug, Default)]
pub struct Table2Options {
    pub long: bool,
    pub check_points: usize,
    pub checkpoint: Option<PathBuf>,
    pub resume: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EntryStatus {
    Pass,
    Mismatch,
    /// A long entry left out of a run without `--long`.
    Skipped,
    /// Excluded by the Springer gate, with no printed constants.
    Excluded,
}

/// One exceptional pair of Table 2.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Table2Row {
    pub pair_id: String,
    pub group: String,
    pub status: EntryStatus,
    pub expected: Option<Vec<i64>>,
    pub computed: Vec<String>,
    pub results: Vec<ConstantEntry>,
    pub elapsed_ms: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Table2Report {
    pub rows: Vec<Table2Row>,
    pub passed: bool,
}

fn check_exceptional(spec: &PairSpec, opts: &Table2Options) -> Table2Row {
    let t = Instant::now();
    let expected = spec.table_constants().map(<[i64]>::to_vec);
    let mut row = Table2Row {
        pair_id: spec.id.clone(),
        group: spec.group.clone(),
        status: EntryStatus::Pass,
        expected: expected.clone(),
        computed: vec![],
        results: vec![],
        elapsed_ms: 0,
        detail: None,
    };
    if spec.is_long() && !opts.long {
        row.status = EntryStatus::Skipped;
        return row;
    }
    let run = |row: &mut Table2Row| -> anyhow::Result<()> {
        let pair = spec.build()?;
        let gate = springer_gate(spec, &pair)?;
        if !gate.is_springer {
            row.status = EntryStatus::Excluded;
            if expected.is_some() {
                row.status = EntryStatus::Mismatch;
                row.detail = Some("gate excludes a pair with printed constants".into());
            }
            return Ok(());
        }
        let forms = enumerate_real_forms(spec, &pair)?;
        let request = ConstantsRequest {
            method: MethodArg::Dp,
            check_points: opts.check_points,
            checkpoint: if spec.is_long() { opts.checkpoint.as_deref() } else { None },
            resume: opts.resume,
        };
        row.results = compute_entries(spec, &pair, &forms, &request)?;
        row.computed = row.results.iter().map(|e| e.result.c.to_string()).collect();
        let expected_str: Option<Vec<String>> = expected.as_ref().map(|v| v.iter().map(|c| c.to_string()).collect());
        let mut problems = Vec::new();
        if expected_str.as_ref() != Some(&row.computed) {
            problems.push(format!(
                "computed {{{}}}, table {{{}}}",
                row.computed.join(","),
                expected.as_deref().map(list).unwrap_or_default()
            ));
        }
        for e in &row.results {
            if !e.passed() {
                problems.push(format!("form {} depends on the evaluation point", e.result.form_id));
            }
        }
        if !problems.is_empty() {
            row.status = EntryStatus::Mismatch;
            row.detail = Some(problems.join("; "));
        }
        Ok(())
    };
    if let Err(e) = run(&mut row) {
        row.status = EntryStatus::Mismatch;
        row.detail = Some(e.to_string());
    }
    row.elapsed_ms = t.elapsed().as_millis() as u64;
    row
}

pub fn verify_table2(catalog: &Catalog, opts: &Table2Options) -> Result<Table2Report> {
    let specs: Vec<PairSpec> = catalog
        .exceptional()
        .iter()
        .filter(|e| e.table == 2)
        .map(|e| catalog.resolve(&e.id))
        .collect::<diracidx::Result<_>>()?;
    // Long entries run one at a time to bound peak memory.
    let short: Vec<Table2Row> =
        specs.par_iter().filter(|s| !s.is_long() || !opts.long).map(|s| check_exceptional(s, opts)).collect();
    let long: Vec<Table2Row> =
        specs.iter().filter(|s| s.is_long() && opts.long).map(|s| check_exceptional(s, opts)).collect();
    let mut rows = short;
    rows.extend(long);
    let order: Vec<&str> = specs.iter().map(|s| s.id.as_str()).collect();
    rows.sort_by_key(|r| order.iter().position(|id| *id == r.pair_id));
    let passed = rows.iter().all(|r| r.status != EntryStatus::Mismatch);
    Ok(Table2Report { rows, passed })
}

pub fn table2_outcome(catalog: &Catalog, opts: &Table2Options) -> Result<Outcome> {
    let report = verify_table2(catalog, opts)?;
    let mut t = Table::new(&["pair", "group", "table", "computed", "status", "ms"]);
    for r in &report.rows {
        let status = match (r.status, &r.detail) {
            (EntryStatus::Mismatch, Some(d)) => format!("MISMATCH: {d}"),
            (s, _) => format!("{s:?}").to_lowercase(),
        };
        t.row(vec![
            r.pair_id.clone(),
            r.group.clone(),
            r.expected.as_deref().map(list).unwrap_or_else(|| "-".into()),
            if r.computed.is_empty() { "-".into() } else { r.computed.join(",") },
            status,
            r.elapsed_ms.to_string(),
        ]);
    }
    let text = t.render();
    let passed = report.passed;
    Outcome::new(&report, text, passed)
}
