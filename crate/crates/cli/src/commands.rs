//! One function per subcommand.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{bail, Result};
use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use diracidx::catalog::{Catalog, PairSource, PairSpec};
use diracidx::charlab::CharLab;
use diracidx::orbits::{
    complex_orbit, enumerate_real_forms, orbit_dimension_from_grading, Chamber, ClassicalFamily, RealFormOrbit,
};
use diracidx::rootdata::{RealPair, Weight};
use diracidx::scalar::render_q;
use diracidx::solver::{self, closed_form_su, compute_constant_shuffle_su, ConstantResult, DpOptions, Method};
use diracidx::springer::springer_gate;
use diracidx::Q;

use crate::args::{
    CharlabAction, Command, ConstantsAction, MethodArg, OrbitAction, PairsAction, SpringerAction, TableArg,
    TablesAction,
};
use crate::tables::{self, Table2Options};
use crate::text::{list, Table};
use crate::{record, Outcome};

pub fn dispatch(command: &Command, catalog: &Catalog) -> Result<Outcome> {
    match command {
        Command::Pairs { action: PairsAction::List } => pairs_list(catalog),
        Command::Orbit { action: OrbitAction::Describe { pair, form } } => orbit_describe(catalog, pair, *form),
        Command::Springer { action: SpringerAction::Gate { pair } } => springer_verdict(catalog, pair),
        Command::Constants {
            action: ConstantsAction::Compute { pair, form, method, check_points, checkpoint, resume },
        } => {
            let request = ConstantsRequest {
                method: *method,
                check_points: *check_points,
                checkpoint: checkpoint.as_deref(),
                resume: *resume,
            };
            constants_compute(catalog, pair, *form, &request)
        }
        Command::Tables { action: TablesAction::Verify { table, long, check_points, checkpoint, resume } } => {
            match table {
                TableArg::One => tables::table1_outcome(catalog),
                TableArg::Two => {
                    let opts = Table2Options {
                        long: *long,
                        check_points: *check_points,
                        checkpoint: checkpoint.clone(),
                        resume: *resume,
                    };
                    tables::table2_outcome(catalog, &opts)
                }
            }
        }
        Command::Charlab { action: CharlabAction::Verify { pair, cutoff } } => charlab_verify(catalog, pair, *cutoff),
        Command::Report { pair, form, check_points } => report(catalog, pair, *form, *check_points),
        Command::Replay { file } => record::replay(file),
    }
}

#[derive(Serialize)]
struct ExceptionalRow {
    id: String,
    group: String,
    root_system: String,
    k_type: String,
    table: u8,
    springer: bool,
    forms: usize,
    constants: Option<Vec<i64>>,
    long: bool,
}

#[derive(Serialize)]
struct FamilyRow {
    id: String,
    group: String,
    springer: bool,
}

#[derive(Serialize)]
struct PairsDoc {
    catalog_hash: String,
    exceptional: Vec<ExceptionalRow>,
    families: Vec<FamilyRow>,
}

pub fn pairs_list(catalog: &Catalog) -> Result<Outcome> {
    let exceptional: Vec<ExceptionalRow> = catalog
        .exceptional()
        .iter()
        .map(|e| ExceptionalRow {
            id: e.id.clone(),
            group: e.group.clone(),
            root_system: format!("{:?}{}", e.lie_type, e.rank),
            k_type: e.k_type.clone(),
            table: e.table,
            springer: e.springer,
            forms: e.forms.len(),
            constants: e.constants.clone(),
            long: e.long,
        })
        .collect();
    let families: Vec<FamilyRow> = catalog
        .families()
        .iter()
        .map(|f| FamilyRow { id: format!("{}({})", f.family, f.params), group: f.group.clone(), springer: f.springer })
        .collect();
    let mut t = Table::new(&["id", "group", "type", "K", "table", "springer", "forms", "constants"]);
    for e in &exceptional {
        t.row(vec![
            e.id.clone(),
            e.group.clone(),
            e.root_system.clone(),
            e.k_type.clone(),
            e.table.to_string(),
            e.springer.to_string(),
            e.forms.to_string(),
            e.constants.as_deref().map(list).unwrap_or_else(|| "-".into()),
        ]);
    }
    let mut f = Table::new(&["family", "group", "springer"]);
    for r in &families {
        f.row(vec![r.id.clone(), r.group.clone(), r.springer.to_string()]);
    }
    let text = format!("{}\n\n{}", t.render(), f.render());
    Outcome::new(&PairsDoc { catalog_hash: catalog.version_hash().to_string(), exceptional, families }, text, true)
}

/// Orbit data of one real form.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FormSummary {
    pub form_id: usize,
    pub description: String,
    pub chamber: Chamber,
    pub h: Weight<Q>,
    pub node_values: Vec<i64>,
    /// Number of positive roots at each level `α(h)`.
    pub levels: BTreeMap<i64, usize>,
    /// `N = #{α ∈ Δ^+ : α(h) > 0}`.
    pub n: usize,
    pub noncompact_l: usize,
    pub compact_l: usize,
    pub p1: usize,
    pub orbit_dim: usize,
}

pub fn form_summary(form: &RealFormOrbit<Q>) -> FormSummary {
    let g = &form.grading;
    FormSummary {
        form_id: form.form_id,
        description: form.description.clone(),
        chamber: form.chamber,
        h: form.h.clone(),
        node_values: g.node_values.clone(),
        levels: g.level_histogram(),
        n: g.n_sign,
        noncompact_l: g.nl_roots.len(),
        compact_l: g.cl_roots.len(),
        p1: g.p1_roots.len(),
        orbit_dim: orbit_dimension_from_grading(g),
    }
}

fn select_forms(forms: Vec<RealFormOrbit<Q>>, form: Option<usize>) -> Result<Vec<RealFormOrbit<Q>>> {
    match form {
        None => Ok(forms),
        Some(k) => {
            let n = forms.len();
            match forms.into_iter().find(|f| f.form_id == k) {
                Some(f) => Ok(vec![f]),
                None => Err(diracidx::Error::InvalidParameters(format!(
                    "form {k} does not exist; forms are 0..{}",
                    n.saturating_sub(1)
                ))
                .into()),
            }
        }
    }
}

fn forms_text(forms: &[FormSummary]) -> String {
    let mut t = Table::new(&["form", "description", "h", "levels", "N", "#Δn+(l)", "#Δc+(l)", "#Δ(p1)", "dim"]);
    for f in forms {
        let levels: Vec<String> = f.levels.iter().map(|(l, c)| format!("{l}:{c}")).collect();
        t.row(vec![
            f.form_id.to_string(),
            f.description.clone(),
            f.h.to_string(),
            levels.join(" "),
            f.n.to_string(),
            f.noncompact_l.to_string(),
            f.compact_l.to_string(),
            f.p1.to_string(),
            f.orbit_dim.to_string(),
        ]);
    }
    t.render()
}

#[derive(Serialize)]
struct OrbitDoc {
    pair_id: String,
    group: String,
    forms: Vec<FormSummary>,
}

pub fn orbit_describe(catalog: &Catalog, id: &str, form: Option<usize>) -> Result<Outcome> {
    let spec = catalog.resolve(id)?;
    let pair = spec.build()?;
    if complex_orbit(&spec, &pair)?.is_none() {
        bail!(diracidx::Error::NotCovered(format!("{} has no orbit in the tables", spec.id)));
    }
    let forms = select_forms(enumerate_real_forms(&spec, &pair)?, form)?;
    let summaries: Vec<FormSummary> = forms.iter().map(form_summary).collect();
    let text = format!("{} ({})\n{}", spec.id, spec.group, forms_text(&summaries));
    Outcome::new(&OrbitDoc { pair_id: spec.id, group: spec.group, forms: summaries }, text, true)
}

pub fn springer_verdict(catalog: &Catalog, id: &str) -> Result<Outcome> {
    let spec = catalog.resolve(id)?;
    let verdict = springer_gate(&spec, &spec.build()?)?;
    let mut text = format!("{} ({}): springer = {}", spec.id, spec.group, verdict.is_springer);
    if let Some(o) = &verdict.orbit {
        text += &format!("\norbit {:?}, dim {}", o.descriptor, o.dim);
    }
    if let Some(r) = &verdict.reason {
        text += &format!("\nreason: {r}");
    }
    for c in &verdict.checks {
        text += &format!("\n  {}: expected {}, got {}", c.name, c.expected, c.actual);
    }
    Outcome::new(&verdict, text, true)
}

/// Quotient at one evaluation point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointQuotient {
    pub point: Weight<Q>,
    pub quotient: String,
}

/// Recomputation of a constant away from the default point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verification {
    pub points: Vec<PointQuotient>,
    pub passed: bool,
}

/// A constant with its optional verification trace.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstantEntry {
    #[serde(flatten)]
    pub result: ConstantResult,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verification: Option<Verification>,
}

impl ConstantEntry {
    pub fn passed(&self) -> bool {
        self.verification.as_ref().is_none_or(|v| v.passed)
    }
}

pub struct ConstantsRequest<'a> {
    pub method: MethodArg,
    pub check_points: usize,
    pub checkpoint: Option<&'a Path>,
    pub resume: bool,
}

fn su_params(spec: &PairSpec) -> Option<(usize, usize)> {
    match spec.source {
        PairSource::Classical(ClassicalFamily::Su { p, q }) => Some((p, q)),
        _ => None,
    }
}

pub fn verify_at_points(pair: &RealPair<Q>, form: &RealFormOrbit<Q>, c: &BigInt, n: usize) -> Result<Verification> {
    let target = Q::from_integer(c.clone());
    let quotients = solver::point_quotients(pair, form, n)?;
    let passed = quotients.len() >= n && quotients.iter().all(|(_, q)| *q == target);
    let points = quotients.into_iter().map(|(p, q)| PointQuotient { point: p, quotient: render_q(&q) }).collect();
    Ok(Verification { points, passed })
}

/// Computes the constant of one form.
pub fn compute_entry(
    spec: &PairSpec,
    pair: &RealPair<Q>,
    form: &RealFormOrbit<Q>,
    request: &ConstantsRequest<'_>,
) -> Result<ConstantEntry> {
    let mut result = match request.method {
        MethodArg::Dp | MethodArg::Naive => {
            let method = if request.method == MethodArg::Dp { Method::Dp } else { Method::Naive };
            let options = DpOptions {
                checkpoint_dir: request.checkpoint.map(|d| d.join(format!("{}-form{}", spec.id, form.form_id))),
                resume: request.resume,
                label: format!("{}/{}", spec.id, form.form_id),
            };
            solver::compute_constant(&spec.id, pair, form, method, &options)?
        }
        MethodArg::Shuffle | MethodArg::Closed => {
            let Some((p, q)) = su_params(spec) else {
                bail!(diracidx::Error::NotCovered(format!("the {:?} method covers su(p,q) only", request.method)));
            };
            let k = form.form_id;
            let (c, method) = if request.method == MethodArg::Shuffle {
                (compute_constant_shuffle_su(p, q, k)?, Method::ShuffleOracle)
            } else {
                (closed_form_su(p, q, k)?, Method::ClosedForm)
            };
            let norm = solver::normalization_sign(pair)?;
            let c_dynkin = solver::integral(&(Q::from_integer(c.clone()) * norm))?;
            ConstantResult {
                pair_id: spec.id.clone(),
                form_id: k,
                c,
                c_dynkin,
                method,
                eval_points_used: 0,
                distinct_shifts: 0,
                fold_roots: form.grading.fold_roots().len(),
                elapsed_ms: 0,
            }
        }
    };
    let verification = if request.check_points > 0 {
        let v = verify_at_points(pair, form, &result.c, request.check_points)?;
        result.eval_points_used += v.points.len();
        Some(v)
    } else {
        None
    };
    Ok(ConstantEntry { result, verification })
}

/// Computes every requested form, in parallel unless the pair is a long entry.
pub fn compute_entries(
    spec: &PairSpec,
    pair: &RealPair<Q>,
    forms: &[RealFormOrbit<Q>],
    request: &ConstantsRequest<'_>,
) -> Result<Vec<ConstantEntry>> {
    if spec.is_long() {
        forms.iter().map(|f| compute_entry(spec, pair, f, request)).collect()
    } else {
        forms.par_iter().map(|f| compute_entry(spec, pair, f, request)).collect()
    }
}

fn constants_text(entries: &[ConstantEntry]) -> String {
    let mut t = Table::new(&["form", "c", "c (Dynkin)", "method", "points", "shifts", "verified", "ms"]);
    for e in entries {
        let r = &e.result;
        t.row(vec![
            r.form_id.to_string(),
            r.c.to_string(),
            r.c_dynkin.to_string(),
            format!("{:?}", r.method),
            r.eval_points_used.to_string(),
            r.distinct_shifts.to_string(),
            e.verification.as_ref().map_or("-".into(), |v| v.passed.to_string()),
            r.elapsed_ms.to_string(),
        ]);
    }
    t.render()
}

#[derive(Serialize)]
struct ConstantsDoc<'a> {
    pair_id: &'a str,
    results: &'a [ConstantEntry],
}

pub fn constants_compute(
    catalog: &Catalog,
    id: &str,
    form: Option<usize>,
    request: &ConstantsRequest<'_>,
) -> Result<Outcome> {
    let spec = catalog.resolve(id)?;
    let pair = spec.build()?;
    let verdict = springer_gate(&spec, &pair)?;
    if !verdict.is_springer {
        bail!(diracidx::Error::NotCovered(format!("{} is excluded: {}", spec.id, verdict.reason.unwrap_or_default())));
    }
    let forms = select_forms(enumerate_real_forms(&spec, &pair)?, form)?;
    let entries = compute_entries(&spec, &pair, &forms, request)?;
    let passed = entries.iter().all(ConstantEntry::passed);
    let text = format!("{} ({})\n{}", spec.id, spec.group, constants_text(&entries));
    Outcome::new(&ConstantsDoc { pair_id: &spec.id, results: &entries }, text, passed)
}

pub fn charlab_verify(catalog: &Catalog, id: &str, cutoff: usize) -> Result<Outcome> {
    let spec = catalog.resolve(id)?;
    let pair = spec.build()?;
    let report = CharLab::new(&pair)?.verify(&spec.id, cutoff)?;
    let mut t = Table::new(&["identity", "passed", "detail"]);
    for c in &report.checks {
        t.row(vec![c.name.clone(), c.passed.to_string(), c.detail.clone()]);
    }
    let text = format!("{} cutoff {}\n{}", spec.id, cutoff, t.render());
    let passed = report.passed;
    Outcome::new(&report, text, passed)
}

/// One form of a report.
#[derive(Serialize)]
struct ReportForm {
    #[serde(flatten)]
    orbit: FormSummary,
    constant: ConstantEntry,
    #[serde(skip_serializing_if = "Option::is_none")]
    closed_form: Option<String>,
}

#[derive(Serialize)]
struct ReportDoc {
    pair_id: String,
    group: String,
    k_type: String,
    gate: bool,
    springer: diracidx::springer::SpringerVerdict,
    forms: Vec<ReportForm>,
    constants: Option<Vec<String>>,
    table_constants: Option<Vec<i64>>,
    passed: bool,
}

pub fn report(catalog: &Catalog, id: &str, form: Option<usize>, check_points: usize) -> Result<Outcome> {
    let spec = catalog.resolve(id)?;
    let pair = spec.build()?;
    let verdict = springer_gate(&spec, &pair)?;
    let gate = verdict.is_springer;
    let mut doc = ReportDoc {
        pair_id: spec.id.clone(),
        group: spec.group.clone(),
        k_type: pair.k_type_label().to_string(),
        gate,
        springer: verdict,
        forms: vec![],
        constants: None,
        table_constants: spec.table_constants().map(<[i64]>::to_vec),
        passed: true,
    };
    if gate {
        let forms = select_forms(enumerate_real_forms(&spec, &pair)?, form)?;
        let request = ConstantsRequest { method: MethodArg::Dp, check_points, checkpoint: None, resume: false };
        let entries = compute_entries(&spec, &pair, &forms, &request)?;
        let su = su_params(&spec);
        let mut passed = true;
        for (f, entry) in forms.iter().zip(entries) {
            let closed = match su {
                Some((p, q)) => Some(closed_form_su(p, q, f.form_id)?),
                None => None,
            };
            passed &= entry.passed() && closed.as_ref().is_none_or(|c| *c == entry.result.c);
            doc.forms.push(ReportForm {
                orbit: form_summary(f),
                constant: entry,
                closed_form: closed.map(|c| c.to_string()),
            });
        }
        let constants: Vec<i64> = doc.forms.iter().filter_map(|f| i64::try_from(&f.constant.result.c).ok()).collect();
        if form.is_none() {
            if let Some(expected) = &doc.table_constants {
                passed &= *expected == constants;
            }
        }
        doc.constants = Some(doc.forms.iter().map(|f| f.constant.result.c.to_string()).collect());
        doc.passed = passed;
    }
    let mut text = format!("{} ({}), K = {}\nspringer gate: {}", doc.pair_id, doc.group, doc.k_type, gate);
    if let Some(r) = &doc.springer.reason {
        text += &format!(" ({r})");
    }
    if !doc.forms.is_empty() {
        let summaries: Vec<FormSummary> = doc.forms.iter().map(|f| f.orbit.clone()).collect();
        let entries: Vec<ConstantEntry> = doc.forms.iter().map(|f| f.constant.clone()).collect();
        text += &format!("\n{}\n{}", forms_text(&summaries), constants_text(&entries));
    }
    if let Some(t) = &doc.table_constants {
        text += &format!("\ntable constants: {}", list(t));
    }
    let passed = doc.passed;
    Outcome::new(&doc, text, passed)
}
