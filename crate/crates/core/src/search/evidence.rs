//! Finite-scale asymptotic-dimension evidence.
//!
//! For each generating set `S` and component bound `k` the table records the
//! least `n` for which a window has an `S`-separated `n`-coloring with
//! components of at most `k` points. A group's value is the supremum over `S`
//! of the least `n` admitting *some* uniform bound, minus one; at window
//! scale this becomes `max_S min_k (min n) − 1` over the rows that were
//! settled by a witness with every smaller `n` exhausted.
//!
//! An exhausted row only says that this window admits no such coloring for
//! this `k`. No finite table certifies a lower bound over all `k`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{exact_search, SearchOutcome, SearchProblem};
use crate::error::{Error, Result};
use crate::group::{GenSet, Group};
use crate::window::{Window, WindowConfiguration};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WindowPolicy {
    /// `{0, …, per_k·k + base − 1}` in Z.
    Path { per_k: usize, base: usize },
    /// `[0, side)^d` in Z^d.
    Box { side: usize },
    /// Standard word-metric ball.
    Ball { radius: usize },
    /// The whole (finite) group.
    Whole,
    Fixed(Window),
}

impl WindowPolicy {
    pub fn window(&self, group: &Group, k: usize) -> Result<Window> {
        match self {
            WindowPolicy::Path { per_k, base } => {
                if *group != Group::FreeAbelian(1) {
                    return Err(Error::InvalidParameter("path windows need Z".into()));
                }
                let len = per_k * k + base;
                Ok(Window::interval(0, len as i64 - 1))
            }
            WindowPolicy::Box { side } => match group {
                Group::FreeAbelian(d) => {
                    Ok(Window::grid(&vec![0; *d], &vec![*side as i64 - 1; *d]))
                }
                _ => Err(Error::InvalidParameter("box windows need Z^d".into())),
            },
            WindowPolicy::Ball { radius } => Window::ball(group, &GenSet::standard(group), *radius),
            WindowPolicy::Whole => Window::whole(group),
            WindowPolicy::Fixed(w) => Ok(w.clone()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct TableSpec {
    /// Generating sets with their display labels, in schedule order.
    pub s_list: Vec<(String, GenSet)>,
    pub ks: Vec<usize>,
    pub window: WindowPolicy,
    pub max_colors: usize,
    pub budget: u64,
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RowOutcome {
    /// Witness at `min_n`, every smaller `n` exhausted.
    Witness,
    /// Every `n` up to the color cap was exhausted.
    Exhausted,
    /// Some search ran out of budget before the row was settled.
    Budget,
}

impl RowOutcome {
    pub fn as_str(self) -> &'static str {
        match self {
            RowOutcome::Witness => "witness",
            RowOutcome::Exhausted => "exhausted",
            RowOutcome::Budget => "budget",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvidenceRow {
    pub s_index: usize,
    pub s_label: String,
    pub k: usize,
    pub window_size: usize,
    pub min_n: Option<usize>,
    pub outcome: RowOutcome,
    pub nodes: u64,
    /// Per `n` tried, in order.
    pub tried: Vec<(usize, String)>,
    #[serde(skip)]
    pub witness: Option<WindowConfiguration>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AsdimEvidence {
    pub group: String,
    pub rows: Vec<EvidenceRow>,
}

impl AsdimEvidence {
    /// `max_S min_k (min n) − 1` over witness-settled rows; `None` when no
    /// row is settled.
    pub fn estimate(&self) -> Option<usize> {
        let mut best: BTreeMap<usize, usize> = BTreeMap::new();
        for row in &self.rows {
            if let (RowOutcome::Witness, Some(n)) = (row.outcome, row.min_n) {
                let e = best.entry(row.s_index).or_insert(n);
                *e = (*e).min(n);
            }
        }
        best.values().max().map(|n| n - 1)
    }

    /// Rows sorted by generating set (schedule order), then `k`.
    pub fn sorted_rows(&self) -> Vec<&EvidenceRow> {
        let mut rows: Vec<&EvidenceRow> = self.rows.iter().collect();
        rows.sort_by_key(|r| (r.s_index, r.k));
        rows
    }

    /// Checks that settled `min n` never increases with `k` for a fixed `S`,
    /// and never decreases from one `S` to a larger one at the same `k`.
    pub fn monotonicity_violations(&self, s_list: &[GenSet]) -> Vec<String> {
        let mut out = Vec::new();
        let settled: Vec<&EvidenceRow> = self
            .sorted_rows()
            .into_iter()
            .filter(|r| r.outcome == RowOutcome::Witness)
            .collect();
        for a in &settled {
            for b in &settled {
                let (Some(na), Some(nb)) = (a.min_n, b.min_n) else { continue };
                if a.s_index == b.s_index && a.k < b.k && na < nb {
                    out.push(format!(
                        "S = {}: min n rises from {na} at k = {} to {nb} at k = {}",
                        a.s_label, a.k, b.k
                    ));
                }
                let contained = s_list
                    .get(a.s_index)
                    .zip(s_list.get(b.s_index))
                    .is_some_and(|(sa, sb)| a.s_index != b.s_index && sa.iter().all(|x| sb.contains(x)));
                if contained && a.k == b.k && na > nb {
                    out.push(format!(
                        "k = {}: min n drops from {na} at S = {} to {nb} at the larger S = {}",
                        a.k, a.s_label, b.s_label
                    ));
                }
            }
        }
        out
    }
}

/// Scans `n = 1, 2, …` with [`exact_search`] for every `(S, k)`.
pub fn min_colors_table(group: &Group, spec: &TableSpec) -> Result<AsdimEvidence> {
    if spec.max_colors == 0 {
        return Err(Error::InvalidParameter("max_colors must be at least 1".into()));
    }
    let mut rows = Vec::new();
    for (s_index, (label, s)) in spec.s_list.iter().enumerate() {
        for &k in &spec.ks {
            let window = spec.window.window(group, k)?;
            let mut row = EvidenceRow {
                s_index,
                s_label: label.clone(),
                k,
                window_size: window.len(),
                min_n: None,
                outcome: RowOutcome::Exhausted,
                nodes: 0,
                tried: Vec::new(),
                witness: None,
            };
            for n in 1..=spec.max_colors {
                let problem = SearchProblem {
                    group: group.clone(),
                    s: s.clone(),
                    n,
                    k,
                    window: window.clone(),
                    budget: spec.budget,
                    seed: spec.seed,
                };
                let cert = exact_search(&problem)?;
                row.nodes += cert.stats.nodes;
                row.tried.push((n, cert.outcome.as_str().to_string()));
                match cert.outcome {
                    SearchOutcome::Exhausted => continue,
                    SearchOutcome::Witness => {
                        row.min_n = Some(n);
                        row.outcome = RowOutcome::Witness;
                        row.witness = cert.witness;
                    }
                    SearchOutcome::Budget => row.outcome = RowOutcome::Budget,
                }
                break;
            }
            rows.push(row);
        }
    }
    Ok(AsdimEvidence {
        group: group.describe(),
        rows,
    })
}
