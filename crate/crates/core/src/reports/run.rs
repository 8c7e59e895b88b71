//! Executes configured tasks and turns each into a certificate.

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde_json::{json, Value};

use super::certificate::{producer, Certificate, Settings, CERTIFICATE_SCHEMA, EVIDENCE_SCHEMA};
use super::config::*;
use crate::error::{Error, Result};
use crate::group::{GroupSpec, Group};
use crate::lcl::{freeness_lcl, pi_sn_generate, verify_pi_coloring, PatternIndex, PiVerdict, DEFAULT_PATTERN_LIMIT};
use crate::search::{
    brick_witness, exact_search, min_colors_table, tree_band_witness, SearchProblem, TableSpec, Witness,
};
use crate::separation::SeparationReport;
use crate::subshift::{extension_check, ConfigIter, WindowedSubshift};
use crate::window::Space;

/// Command-line overrides; `None` keeps the config's value.
#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub jobs: Option<usize>,
    pub budget: Option<u64>,
    pub seed: Option<u64>,
    pub limit: Option<usize>,
    pub out: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TaskOutput {
    pub certificate: Certificate,
    /// Evidence table, for `table` tasks.
    pub evidence: Option<Value>,
}

impl TaskOutput {
    pub fn hit_budget(&self) -> bool {
        self.certificate.outcome == "budget"
    }
}

#[derive(Clone, Debug, Default)]
pub struct RunSummary {
    pub outputs: Vec<TaskOutput>,
    pub written: Vec<PathBuf>,
}

impl RunSummary {
    pub fn exit_code(&self) -> i32 {
        if self.outputs.iter().any(TaskOutput::hit_budget) {
            3
        } else {
            0
        }
    }
}

fn task_budget_seed(task: &Task) -> (Option<u64>, Option<u64>) {
    match task {
        Task::Search(t) => (t.budget, t.seed),
        Task::Table(t) => (t.budget, t.seed),
        Task::Freeness(t) => (t.budget, None),
        _ => (None, None),
    }
}

/// Command line, then task, then file-level values.
pub fn settings_for(cfg: &RunConfig, task: &Task, opts: &RunOptions) -> Settings {
    let (budget, seed) = task_budget_seed(task);
    let limit = match task {
        Task::Subshift(t) => t.limit,
        _ => None,
    };
    Settings {
        budget: opts.budget.or(budget).unwrap_or(cfg.budget),
        seed: opts.seed.or(seed).unwrap_or(cfg.seed),
        limit: opts.limit.or(limit).unwrap_or(cfg.limit),
    }
}

fn config_err(e: Error) -> Error {
    match e {
        Error::Config(_) | Error::Invariant(_) | Error::SizeLimit { .. } => e,
        other => Error::Config(other.to_string()),
    }
}

fn histogram(h: &std::collections::BTreeMap<usize, usize>) -> Value {
    Value::Array(h.iter().map(|(size, count)| json!([size, count])).collect())
}

fn report_json(r: &SeparationReport) -> Value {
    json!({
        "k": r.k,
        "closed_within": r.closed_within(),
        "interior_max": r.interior_max,
        "boundary_max": r.boundary_max,
        "components": r.components(),
        "interior_histogram": histogram(&r.interior_histogram),
        "boundary_histogram": histogram(&r.boundary_histogram),
    })
}

struct Out {
    group: GroupSpec,
    outcome: String,
    payload: Value,
    stats: Value,
    evidence: Option<Value>,
}

impl Out {
    fn new(group: GroupSpec, outcome: &str, payload: Value, stats: Value) -> Self {
        Out {
            group,
            outcome: outcome.into(),
            payload,
            stats,
            evidence: None,
        }
    }
}

/// Runs one task with fully resolved settings.
pub fn run_task(task: &Task, settings: Settings) -> Result<TaskOutput> {
    let out = match task {
        Task::Search(t) => run_search(t, settings)?,
        Task::Verify(t) => run_verify(t)?,
        Task::PiSn(t) => run_pi_sn(t)?,
        Task::Subshift(t) => run_subshift(t, settings)?,
        Task::Freeness(t) => run_freeness(t, settings)?,
        Task::Table(t) => run_table(t, settings)?,
        Task::Brick(t) => run_brick(t)?,
        Task::Band(t) => run_band(t)?,
    };
    let certificate = Certificate {
        schema: CERTIFICATE_SCHEMA.into(),
        producer: producer(),
        task: task.name().into(),
        kind: task.kind().into(),
        group: out.group,
        input: serde_json::to_value(task)?,
        settings,
        outcome: out.outcome,
        payload: out.payload,
        stats: out.stats,
    };
    Ok(TaskOutput {
        certificate,
        evidence: out.evidence,
    })
}

fn run_search(t: &SearchTask, st: Settings) -> Result<Out> {
    let g = group_of(&t.group)?;
    let s = t.s.resolve(&g).map_err(config_err)?;
    let window = t.window.resolve(&g).map_err(config_err)?;
    let problem = SearchProblem {
        group: g.clone(),
        s: s.clone(),
        n: t.n,
        k: t.k,
        window: window.clone(),
        budget: st.budget,
        seed: st.seed,
    };
    problem.validate().map_err(config_err)?;
    let cert = exact_search(&problem)?;
    let payload = json!({
        "s": s.encode(&g),
        "window": window.encode(&g),
        "n": t.n,
        "k": t.k,
        "witness": cert.witness.as_ref().map(|w| &w.colors),
    });
    let stats = json!({ "nodes": cert.stats.nodes, "prunes": cert.stats.prunes });
    Ok(Out::new(t.group.clone(), cert.outcome.as_str(), payload, stats))
}

fn run_verify(t: &VerifyTask) -> Result<Out> {
    let g = group_of(&t.group)?;
    let lcl = lcl_of(&g, &t.lcl)?;
    let c = configuration_of(&g, &t.configuration)?;
    let verdict = verify_pi_coloring(&c.window.space(&g), &c.colors, &lcl);
    let (outcome, detail) = match &verdict {
        PiVerdict::Valid(a) => ("valid", json!({ "assigned": a.assigned })),
        PiVerdict::Violation { point } => (
            "violation",
            json!({ "violation": g.encode(&c.window.points()[*point]) }),
        ),
    };
    let payload = json!({
        "lcl": lcl.encode(&g),
        "configuration": c.encode(&g),
        "verdict": detail,
    });
    let stats = match &verdict {
        PiVerdict::Valid(a) => json!({ "assigned": a.assigned_count(), "skipped": a.skipped_count() }),
        PiVerdict::Violation { .. } => json!({}),
    };
    Ok(Out::new(t.group.clone(), outcome, payload, stats))
}

fn run_pi_sn(t: &PiSnTask) -> Result<Out> {
    let g = group_of(&t.group)?;
    let s = t.s.resolve(&g).map_err(config_err)?;
    let window = t.window.resolve(&g).map_err(config_err)?;
    let lcl = pi_sn_generate(&g, &s, t.n, &window, DEFAULT_PATTERN_LIMIT).map_err(config_err)?;
    let payload = json!({
        "s": s.encode(&g),
        "n": t.n,
        "window": window.encode(&g),
        "lcl": lcl.encode(&g),
    });
    let stats = json!({ "patterns": lcl.len(), "max_domain": lcl.max_domain() });
    Ok(Out::new(t.group.clone(), "generated", payload, stats))
}

fn run_subshift(t: &SubshiftTask, st: Settings) -> Result<Out> {
    let g = group_of(&t.group)?;
    let lcl = lcl_of(&g, &t.lcl)?;
    let window = t.window.resolve(&g).map_err(config_err)?;
    let sub = WindowedSubshift::new(&g, &lcl, &window);
    let mut it = sub.iter();
    let configs: Vec<Vec<u32>> = it.by_ref().take(st.limit).collect();
    let truncated = it.next().is_some();
    let extension = match &t.outer {
        Some(o) => {
            let outer = o.resolve(&g).map_err(config_err)?;
            let r = extension_check(&g, &lcl, &window, &outer, st.limit).map_err(config_err)?;
            Some(json!({
                "outer": outer.encode(&g),
                "checked": r.checked,
                "extendable": r.extendable,
                "non_extendable": r.non_extendable,
                "undecided": r.undecided,
                "truncated": r.truncated,
            }))
        }
        None => None,
    };
    let undecided = extension.as_ref().is_some_and(|e| e["undecided"] != 0);
    let outcome = if undecided {
        "budget"
    } else if truncated {
        "truncated"
    } else {
        "enumerated"
    };
    let payload = json!({
        "lcl": lcl.encode(&g),
        "window": window.encode(&g),
        "configs": configs,
        "extension": extension,
    });
    let stats = json!({ "configs": configs.len(), "interior": sub.interior().len() });
    Ok(Out::new(t.group.clone(), outcome, payload, stats))
}

fn run_freeness(t: &FreenessTask, st: Settings) -> Result<Out> {
    let g = group_of(&t.group)?;
    let gamma = g.decode(&t.gamma).map_err(config_err)?;
    let lcl = freeness_lcl(&g, &gamma).map_err(config_err)?;
    let (index, fixed_points, space_json) = match (&t.window, &t.action) {
        (Some(w), None) => {
            let w = w.resolve(&g).map_err(config_err)?;
            let index = PatternIndex::new(&w.space(&g), &lcl);
            (index, Vec::new(), json!({ "window": w.encode(&g) }))
        }
        (None, Some(a)) => {
            let action = a.resolve(&g).map_err(config_err)?;
            let fixed: Vec<usize> = (0..action.len())
                .filter(|&x| action.act(&gamma, x) == Some(x))
                .collect();
            (PatternIndex::new(&action, &lcl), fixed, json!({ "action": a }))
        }
        _ => {
            return Err(Error::Config(
                "freeness tasks take exactly one of window and action".into(),
            ))
        }
    };
    let mut it = ConfigIter::new(&index, lcl.alphabet(), st.budget);
    let coloring = it.next();
    let outcome = match (&coloring, it.out_of_budget()) {
        (Some(_), _) => "colorable",
        (None, true) => "budget",
        (None, false) => "no-coloring",
    };
    let payload = json!({
        "gamma": g.encode(&gamma),
        "space": space_json,
        "lcl": lcl.encode(&g),
        "fixed_points": fixed_points,
        "coloring": coloring,
    });
    let stats = json!({ "nodes": it.nodes() });
    Ok(Out::new(t.group.clone(), outcome, payload, stats))
}

fn run_table(t: &TableTask, st: Settings) -> Result<Out> {
    let g = group_of(&t.group)?;
    let mut s_list = Vec::with_capacity(t.s.len());
    for spec in &t.s {
        s_list.push((spec.label(&g).map_err(config_err)?, spec.resolve(&g).map_err(config_err)?));
    }
    let spec = TableSpec {
        s_list,
        ks: t.k.clone(),
        window: t.window.policy(),
        max_colors: t.max_colors,
        budget: st.budget,
        seed: st.seed,
    };
    let evidence = min_colors_table(&g, &spec).map_err(config_err)?;
    let mut rows = Vec::with_capacity(evidence.rows.len());
    for row in &evidence.rows {
        let mut v = serde_json::to_value(row)?;
        v["witness"] = json!(row.witness.as_ref().map(|w| &w.colors));
        rows.push(v);
    }
    let budget_hit = evidence
        .rows
        .iter()
        .any(|r| r.outcome == crate::search::RowOutcome::Budget);
    let estimate = evidence.estimate();
    let payload = json!({
        "s": spec.s_list.iter().map(|(l, s)| json!({ "label": l, "elements": s.encode(&g) })).collect::<Vec<_>>(),
        "rows": rows,
        "estimate": estimate,
    });
    let nodes: u64 = evidence.rows.iter().map(|r| r.nodes).sum();
    let stats = json!({ "rows": evidence.rows.len(), "nodes": nodes });
    let mut out = Out::new(
        t.group.clone(),
        if budget_hit { "budget" } else { "complete" },
        payload,
        stats,
    );
    out.evidence = Some(json!({
        "schema": EVIDENCE_SCHEMA,
        "task": t.name,
        "group": evidence.group,
        "rows": evidence.rows,
        "estimate": estimate,
    }));
    Ok(out)
}

fn witness_out(group: GroupSpec, w: Result<Witness>, extra: Value) -> Result<Out> {
    match w {
        Ok(w) => {
            let g = &w.group;
            let mut payload = json!({
                "s": w.s.encode(g),
                "k": w.k,
                "window": w.config.window.encode(g),
                "colors": w.config.colors,
                "report": report_json(&w.report),
            });
            payload["parameters"] = extra;
            let stats = json!({ "points": w.config.len(), "colors": w.config.num_colors() });
            Ok(Out::new(group, "witness", payload, stats))
        }
        Err(Error::NotSeparated(reason)) => Ok(Out::new(
            group,
            "rejected",
            json!({ "parameters": extra, "reason": reason }),
            json!({}),
        )),
        Err(e) => Err(config_err(e)),
    }
}

fn run_brick(t: &BrickTask) -> Result<Out> {
    let g = Group::FreeAbelian(t.dim);
    let window = t.window.resolve(&g).map_err(config_err)?;
    let w = brick_witness(t.dim, t.radius, t.block, &window);
    let params = json!({ "dim": t.dim, "radius": t.radius, "block": t.block });
    witness_out(GroupSpec::FreeAbelian { rank: t.dim }, w, params)
}

fn run_band(t: &BandTask) -> Result<Out> {
    let w = tree_band_witness(t.rank, t.radius, t.band, t.ball);
    let params = json!({ "rank": t.rank, "radius": t.radius, "band": t.band, "ball": t.ball });
    witness_out(GroupSpec::Free { rank: t.rank }, w, params)
}

/// Runs every task (concurrently up to `jobs`) and, when an output directory
/// is set, writes `<task>.cert.json` and `<task>.evidence.json` files in task
/// order.
pub fn run_config(cfg: &RunConfig, opts: &RunOptions) -> Result<RunSummary> {
    let jobs = opts.jobs.unwrap_or(cfg.jobs).max(1);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    let results: Vec<Result<TaskOutput>> = pool.install(|| {
        cfg.tasks
            .par_iter()
            .map(|t| run_task(t, settings_for(cfg, t, opts)))
            .collect()
    });
    let outputs = results.into_iter().collect::<Result<Vec<_>>>()?;
    let mut summary = RunSummary {
        outputs,
        written: Vec::new(),
    };
    if let Some(dir) = opts.out.as_ref().or(cfg.out.as_ref()) {
        summary.written = write_outputs(dir, &summary.outputs)?;
    }
    Ok(summary)
}

pub fn write_outputs(dir: &Path, outputs: &[TaskOutput]) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    for o in outputs {
        let path = dir.join(format!("{}.cert.json", o.certificate.task));
        std::fs::write(&path, o.certificate.to_pretty()?)?;
        written.push(path);
        if let Some(ev) = &o.evidence {
            let path = dir.join(format!("{}.evidence.json", o.certificate.task));
            std::fs::write(&path, serde_json::to_string_pretty(ev)? + "\n")?;
            written.push(path);
        }
    }
    Ok(written)
}
