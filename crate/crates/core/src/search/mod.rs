//! Exact minimum-color search for S-separated colorings of a window.
//!
//! The window is searched as a closed space: every monochromatic component
//! inside it must have at most `k` points. Window components only shrink
//! under truncation, so an exhausted search rules out every coloring of the
//! whole group whose components are bounded by `k`.

mod evidence;
mod witness;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub use evidence::{min_colors_table, AsdimEvidence, EvidenceRow, RowOutcome, TableSpec, WindowPolicy};
pub use witness::{brick_coloring, brick_witness, tree_band_witness, Witness};

use crate::error::{Error, Result};
use crate::group::{GenSet, Group};
use crate::separation::is_s_separated;
use crate::union_find::RollbackUnionFind;
use crate::window::{Color, Space, Window, WindowConfiguration};

pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchProblem {
    pub group: Group,
    pub s: GenSet,
    pub n: usize,
    pub k: usize,
    pub window: Window,
    pub budget: u64,
    /// 0 keeps the natural color order; anything else shuffles it per node.
    pub seed: u64,
}

impl SearchProblem {
    pub fn new(group: Group, s: GenSet, n: usize, k: usize, window: Window) -> Self {
        SearchProblem {
            group,
            s,
            n,
            k,
            window,
            budget: DEFAULT_NODE_BUDGET,
            seed: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.k == 0 {
            return Err(Error::InvalidParameter("n and k must be at least 1".into()));
        }
        if self.window.is_empty() {
            return Err(Error::InvalidParameter("empty search window".into()));
        }
        self.s.validate(&self.group)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Witness,
    Exhausted,
    Budget,
}

impl SearchOutcome {
    pub fn as_str(self) -> &'static str {
        match self {
            SearchOutcome::Witness => "witness",
            SearchOutcome::Exhausted => "exhausted",
            SearchOutcome::Budget => "budget",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Color assignments tried.
    pub nodes: u64,
    /// Assignments rejected for creating a component above `k`.
    pub prunes: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchCertificate {
    pub problem: SearchProblem,
    pub outcome: SearchOutcome,
    pub witness: Option<WindowConfiguration>,
    pub stats: SearchStats,
}

struct Searcher {
    /// Earlier neighbors of each point in canonical order.
    back: Vec<Vec<usize>>,
    n: usize,
    k: usize,
    budget: u64,
    colors: Vec<Color>,
    uf: RollbackUnionFind,
    stats: SearchStats,
    rng: Option<ChaCha8Rng>,
    out_of_budget: bool,
}

impl Searcher {
    fn descend(&mut self, i: usize, used: usize) -> bool {
        if i == self.colors.len() {
            return true;
        }
        // a color not used yet is interchangeable with any other unused one
        let top = (used + 1).min(self.n);
        let mut order: Vec<Color> = (0..top as Color).collect();
        if let Some(rng) = self.rng.as_mut() {
            order.shuffle(rng);
        }
        for c in order {
            if self.stats.nodes >= self.budget {
                self.out_of_budget = true;
                return false;
            }
            self.stats.nodes += 1;
            let mark = self.uf.checkpoint();
            self.colors[i] = c;
            let mut ok = true;
            for idx in 0..self.back[i].len() {
                let j = self.back[i][idx];
                if self.colors[j] == c && self.uf.union(i, j) > self.k {
                    ok = false;
                    break;
                }
            }
            if ok {
                let used_next = used.max(c as usize + 1);
                if self.descend(i + 1, used_next) {
                    return true;
                }
                if self.out_of_budget {
                    return false;
                }
            } else {
                self.stats.prunes += 1;
            }
            self.uf.rollback(mark);
        }
        false
    }
}

/// Backtracking over colorings in canonical point order with incremental
/// union-find. Symmetry breaking: colors are introduced in increasing order.
pub fn exact_search(problem: &SearchProblem) -> Result<SearchCertificate> {
    problem.validate()?;
    let space = problem.window.space(&problem.group);
    let size = problem.window.len();
    let back: Vec<Vec<usize>> = (0..size)
        .map(|i| {
            let mut nb: Vec<usize> = problem
                .s
                .iter()
                .filter_map(|t| space.act(t, i))
                .filter(|&j| j < i)
                .collect();
            nb.sort_unstable();
            nb.dedup();
            nb
        })
        .collect();
    let mut searcher = Searcher {
        back,
        n: problem.n,
        k: problem.k,
        budget: problem.budget,
        colors: vec![0; size],
        uf: RollbackUnionFind::new(size),
        stats: SearchStats::default(),
        rng: (problem.seed != 0).then(|| ChaCha8Rng::seed_from_u64(problem.seed)),
        out_of_budget: false,
    };
    let found = searcher.descend(0, 0);
    let (outcome, witness) = if found {
        let c = WindowConfiguration::new(problem.window.clone(), searcher.colors.clone())?;
        let report = is_s_separated(&space, &c.colors, &problem.s, problem.k)?;
        if !report.closed_within() {
            return Err(Error::Invariant(format!(
                "search witness has a component of {} points above k = {}",
                report.max_component(),
                problem.k
            )));
        }
        (SearchOutcome::Witness, Some(c))
    } else if searcher.out_of_budget {
        (SearchOutcome::Budget, None)
    } else {
        (SearchOutcome::Exhausted, None)
    };
    Ok(SearchCertificate {
        problem: problem.clone(),
        outcome,
        witness,
        stats: searcher.stats,
    })
}
