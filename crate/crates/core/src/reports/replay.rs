//! Re-verification of certificates.
//!
//! Witnesses are checked directly from the certificate contents. Negative
//! outcomes (exhausted searches, missing colorings) carry no witness, so they
//! are checked by re-running the recorded task and comparing documents; the
//! search is deterministic for a fixed seed.

use serde_json::Value;

use super::certificate::{first_difference, Certificate};
use super::config::{lcl_of, group_of, Task};
use super::run::run_task;
use crate::error::{Error, Result};
use crate::group::{GenSet, Group};
use crate::lcl::{freeness_lcl, pi_sn_conditions, verify_pi_coloring, LclInstance};
use crate::separation::is_s_separated;
use crate::window::{Color, Window, WindowConfiguration};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub ok: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub task: String,
    pub kind: String,
    pub outcome: String,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn accepted(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }
}

fn malformed(what: &str) -> Error {
    Error::Certificate(format!("malformed payload: {what}"))
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| malformed(key))
}

fn colors_of(v: &Value) -> Result<Vec<Color>> {
    serde_json::from_value(v.clone()).map_err(|_| malformed("colors"))
}

fn usize_of(v: &Value, key: &str) -> Result<usize> {
    field(v, key)?.as_u64().map(|x| x as usize).ok_or_else(|| malformed(key))
}

fn genset_of(group: &Group, v: &Value) -> Result<GenSet> {
    let elems = v
        .as_array()
        .ok_or_else(|| malformed("s"))?
        .iter()
        .map(|e| group.decode(e))
        .collect::<Result<Vec<_>>>()?;
    GenSet::new(group, &elems)
}

/// Checks that `colors` on `window` uses fewer than `n` colors and has every
/// component within `k`.
fn separated_check(
    group: &Group,
    s: &GenSet,
    window: &Window,
    colors: &[Color],
    n: Option<usize>,
    k: usize,
) -> Result<Check> {
    let name = "witness is S-separated";
    if colors.len() != window.len() {
        return Ok(Check {
            name,
            ok: false,
            detail: format!("{} colors for {} points", colors.len(), window.len()),
        });
    }
    if let Some(n) = n {
        if let Some(i) = colors.iter().position(|&c| c as usize >= n) {
            return Ok(Check {
                name,
                ok: false,
                detail: format!("color {} at {} is not below n = {n}", colors[i], window.points()[i]),
            });
        }
    }
    let report = is_s_separated(&window.space(group), colors, s, k)?;
    let detail = match report.first_oversized {
        Some(p) if !report.closed_within() => format!(
            "component of {} points through {} exceeds k = {k}",
            report.max_component(),
            window.points()[p]
        ),
        _ => format!("{} components, largest {}", report.components(), report.max_component()),
    };
    Ok(Check {
        name,
        ok: report.closed_within(),
        detail,
    })
}

fn direct_checks(cert: &Certificate, task: &Task) -> Result<Vec<Check>> {
    let g = group_of(&cert.group).map_err(|e| Error::Certificate(e.to_string()))?;
    let p = &cert.payload;
    let mut checks = Vec::new();
    match task {
        Task::Search(_) => {
            let witness = field(p, "witness")?;
            match (cert.outcome.as_str(), witness.is_null()) {
                ("witness", false) => {
                    let s = genset_of(&g, field(p, "s")?)?;
                    let w = Window::decode(&g, field(p, "window")?)?;
                    let colors = colors_of(witness)?;
                    checks.push(separated_check(&g, &s, &w, &colors, Some(usize_of(p, "n")?), usize_of(p, "k")?)?);
                }
                ("witness", true) => checks.push(Check {
                    name: "witness present",
                    ok: false,
                    detail: "outcome is witness but no coloring is recorded".into(),
                }),
                _ => {}
            }
        }
        Task::Verify(_) => {
            let lcl = LclInstance::decode(&g, field(p, "lcl")?)?;
            let c = WindowConfiguration::decode(&g, field(p, "configuration")?)?;
            let verdict = verify_pi_coloring(&c.window.space(&g), &c.colors, &lcl);
            let expect = if verdict.is_valid() { "valid" } else { "violation" };
            checks.push(Check {
                name: "verdict",
                ok: expect == cert.outcome,
                detail: format!("recomputed {expect}"),
            });
        }
        Task::PiSn(_) => {
            let s = genset_of(&g, field(p, "s")?)?;
            let n = usize_of(p, "n")?;
            let lcl = LclInstance::decode(&g, field(p, "lcl")?)?;
            let bad = lcl
                .patterns()
                .iter()
                .enumerate()
                .find_map(|(i, pat)| pi_sn_conditions(&g, &s, n, pat).err().map(|e| format!("pattern {i}: {e}")));
            checks.push(Check {
                name: "patterns satisfy the separation conditions",
                ok: bad.is_none(),
                detail: bad.unwrap_or_else(|| format!("{} patterns", lcl.len())),
            });
        }
        Task::Subshift(_) => {
            let lcl = LclInstance::decode(&g, field(p, "lcl")?)?;
            let w = Window::decode(&g, field(p, "window")?)?;
            let configs: Vec<Vec<Color>> =
                serde_json::from_value(field(p, "configs")?.clone()).map_err(|_| malformed("configs"))?;
            let mut bad = None;
            for (i, c) in configs.iter().enumerate() {
                if c.len() != w.len() || !verify_pi_coloring(&w.space(&g), c, &lcl).is_valid() {
                    bad = Some(format!("configuration {i} is not valid"));
                    break;
                }
                if i > 0 && configs[i - 1] >= *c {
                    bad = Some(format!("configuration {i} is out of order"));
                    break;
                }
            }
            checks.push(Check {
                name: "configurations are valid",
                ok: bad.is_none(),
                detail: bad.unwrap_or_else(|| format!("{} configurations", configs.len())),
            });
        }
        Task::Freeness(t) => {
            let gamma = g.decode(field(p, "gamma")?)?;
            let lcl = freeness_lcl(&g, &gamma)?;
            let coloring = field(p, "coloring")?;
            if !coloring.is_null() {
                let colors = colors_of(coloring)?;
                let valid = match (&t.window, &t.action) {
                    (Some(w), None) => {
                        let w = w.resolve(&g)?;
                        colors.len() == w.len() && verify_pi_coloring(&w.space(&g), &colors, &lcl).is_valid()
                    }
                    (None, Some(a)) => {
                        let action = a.resolve(&g)?;
                        colors.len() == a.points && verify_pi_coloring(&action, &colors, &lcl).is_valid()
                    }
                    _ => false,
                };
                checks.push(Check {
                    name: "coloring is valid",
                    ok: valid,
                    detail: format!("{} points", colors.len()),
                });
            }
        }
        Task::Table(t) => {
            let s_list = field(p, "s")?.as_array().ok_or_else(|| malformed("s"))?;
            let sets = s_list
                .iter()
                .map(|e| genset_of(&g, field(e, "elements")?))
                .collect::<Result<Vec<_>>>()?;
            let policy = t.window.policy();
            for row in field(p, "rows")?.as_array().ok_or_else(|| malformed("rows"))? {
                let witness = field(row, "witness")?;
                if witness.is_null() {
                    continue;
                }
                let s = sets.get(usize_of(row, "s_index")?).ok_or_else(|| malformed("s_index"))?;
                let k = usize_of(row, "k")?;
                let w = policy.window(&g, k)?;
                let n = usize_of(row, "min_n")?;
                let mut c = separated_check(&g, s, &w, &colors_of(witness)?, Some(n), k)?;
                c.detail = format!("S #{} k = {k}: {}", usize_of(row, "s_index")?, c.detail);
                checks.push(c);
            }
        }
        Task::Brick(_) | Task::Band(_) => {
            if cert.outcome == "witness" {
                let s = genset_of(&g, field(p, "s")?)?;
                let w = Window::decode(&g, field(p, "window")?)?;
                let colors = colors_of(field(p, "colors")?)?;
                checks.push(separated_check(&g, &s, &w, &colors, None, usize_of(p, "k")?)?);
            }
        }
    }
    Ok(checks)
}

fn cost(cert: &Certificate) -> u64 {
    cert.stats.get("nodes").and_then(Value::as_u64).unwrap_or(0)
}

/// Direct checks, then a replay unless the recorded search cost exceeds
/// `replay_cap`.
pub fn verify_certificate(cert: &Certificate, replay_cap: Option<u64>) -> Result<VerifyReport> {
    let task: Task = serde_json::from_value(cert.input.clone())
        .map_err(|e| Error::Certificate(format!("input: {e}")))?;
    if task.name() != cert.task || task.kind() != cert.kind {
        return Err(Error::Certificate("input does not match the task fields".into()));
    }
    // lcl inputs are validated here so a bad one is a certificate error
    if let Task::Verify(t) = &task {
        lcl_of(&group_of(&t.group)?, &t.lcl).map_err(|e| Error::Certificate(e.to_string()))?;
    }
    let mut checks = direct_checks(cert, &task)?;
    let replay = match replay_cap {
        Some(cap) if cost(cert) > cap => Check {
            name: "replay",
            ok: true,
            detail: format!("skipped: recorded cost {} exceeds {cap}", cost(cert)),
        },
        _ => {
            let fresh = run_task(&task, cert.settings)?.certificate;
            let mut a = serde_json::to_value(cert)?;
            let mut b = serde_json::to_value(&fresh)?;
            a["producer"] = Value::Null;
            b["producer"] = Value::Null;
            match first_difference(&a, &b) {
                None => Check {
                    name: "replay",
                    ok: true,
                    detail: "identical".into(),
                },
                Some(d) => Check {
                    name: "replay",
                    ok: false,
                    detail: format!("recorded vs replayed differ at {d}"),
                },
            }
        }
    };
    checks.push(replay);
    Ok(VerifyReport {
        task: cert.task.clone(),
        kind: cert.kind.clone(),
        outcome: cert.outcome.clone(),
        checks,
    })
}
