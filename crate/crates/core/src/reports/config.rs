//! TOML run configurations. See `docs/config.md` for the schema.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::group::{GenSet, Group, GroupSpec};
use crate::lcl::LclInstance;
use crate::search::{WindowPolicy, DEFAULT_NODE_BUDGET};
use crate::window::{FiniteAction, Window, WindowConfiguration};

pub const DEFAULT_LIMIT: usize = 10_000;

fn default_budget() -> u64 {
    DEFAULT_NODE_BUDGET
}

fn default_jobs() -> usize {
    1
}

fn default_limit() -> usize {
    DEFAULT_LIMIT
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_budget")]
    pub budget: u64,
    #[serde(default = "default_jobs")]
    pub jobs: usize,
    /// Cap on enumerated configurations per task.
    #[serde(default = "default_limit")]
    pub limit: usize,
    /// Output directory, relative to the config file.
    #[serde(default)]
    pub out: Option<PathBuf>,
    #[serde(rename = "task", default)]
    pub tasks: Vec<Task>,
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let cfg: RunConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.check()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        let mut cfg = Self::parse(&text)?;
        if let Some(out) = &cfg.out {
            if out.is_relative() {
                let base = path.parent().unwrap_or(Path::new("."));
                cfg.out = Some(base.join(out));
            }
        }
        Ok(cfg)
    }

    fn check(&self) -> Result<()> {
        if self.jobs == 0 {
            return Err(Error::Config("jobs must be at least 1".into()));
        }
        let mut names: Vec<&str> = self.tasks.iter().map(Task::name).collect();
        if names.iter().any(|n| n.is_empty() || n.contains(['/', '\\'])) {
            return Err(Error::Config("task names must be non-empty file stems".into()));
        }
        names.sort_unstable();
        if let Some(w) = names.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Config(format!("duplicate task name {:?}", w[0])));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Task {
    Search(SearchTask),
    Verify(VerifyTask),
    PiSn(PiSnTask),
    Subshift(SubshiftTask),
    Freeness(FreenessTask),
    Table(TableTask),
    Brick(BrickTask),
    Band(BandTask),
}

impl Task {
    pub fn name(&self) -> &str {
        match self {
            Task::Search(t) => &t.name,
            Task::Verify(t) => &t.name,
            Task::PiSn(t) => &t.name,
            Task::Subshift(t) => &t.name,
            Task::Freeness(t) => &t.name,
            Task::Table(t) => &t.name,
            Task::Brick(t) => &t.name,
            Task::Band(t) => &t.name,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Task::Search(_) => "search",
            Task::Verify(_) => "verify",
            Task::PiSn(_) => "pi-sn",
            Task::Subshift(_) => "subshift",
            Task::Freeness(_) => "freeness",
            Task::Table(_) => "table",
            Task::Brick(_) => "brick",
            Task::Band(_) => "band",
        }
    }
}

/// A generating set: a ball of the standard generators, or explicit elements
/// (closed under inverses and given the identity automatically).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub enum SSpec {
    Radius(usize),
    Generators(Vec<Value>),
}

impl SSpec {
    pub fn resolve(&self, group: &Group) -> Result<GenSet> {
        match self {
            SSpec::Radius(r) => GenSet::ball(group, *r),
            SSpec::Generators(gs) => {
                let elems = gs.iter().map(|g| group.decode(g)).collect::<Result<Vec<_>>>()?;
                GenSet::new(group, &elems)
            }
        }
    }

    pub fn label(&self, group: &Group) -> Result<String> {
        Ok(match self {
            SSpec::Radius(r) => format!("ball({r})"),
            SSpec::Generators(_) => self.resolve(group)?.describe(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub enum WindowSpec {
    /// Inclusive bounds in Z.
    Interval([i64; 2]),
    /// Inclusive corners in Z^d.
    Box([Vec<i64>; 2]),
    /// Ball of the standard generators.
    Ball(usize),
    Whole,
    Points(Vec<Value>),
}

impl WindowSpec {
    pub fn resolve(&self, group: &Group) -> Result<Window> {
        let w = match self {
            WindowSpec::Interval([lo, hi]) => {
                if *group != Group::FreeAbelian(1) {
                    return Err(Error::Config("interval windows need Z".into()));
                }
                Window::interval(*lo, *hi)
            }
            WindowSpec::Box([lo, hi]) => match group {
                Group::FreeAbelian(d) if lo.len() == *d && hi.len() == *d => Window::grid(lo, hi),
                _ => return Err(Error::Config("box corners must match Z^d".into())),
            },
            WindowSpec::Ball(r) => Window::ball(group, &GenSet::standard(group), *r)?,
            WindowSpec::Whole => Window::whole(group)?,
            WindowSpec::Points(ps) => Window::decode(group, &Value::Array(ps.clone()))?,
        };
        if w.is_empty() {
            return Err(Error::Config("empty window".into()));
        }
        Ok(w)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub enum TableWindowSpec {
    /// Z interval of length `per_k·k + base` starting at 0.
    Path { per_k: usize, base: usize },
    /// `[0, side)^d`.
    Box(usize),
    Ball(usize),
    Whole,
}

impl TableWindowSpec {
    pub fn policy(&self) -> WindowPolicy {
        match self {
            TableWindowSpec::Path { per_k, base } => WindowPolicy::Path {
                per_k: *per_k,
                base: *base,
            },
            TableWindowSpec::Box(side) => WindowPolicy::Box { side: *side },
            TableWindowSpec::Ball(r) => WindowPolicy::Ball { radius: *r },
            TableWindowSpec::Whole => WindowPolicy::Whole,
        }
    }
}

/// A finite action given by one permutation of `0..points` per generator.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionSpec {
    pub points: usize,
    pub generators: Vec<Vec<usize>>,
}

impl ActionSpec {
    pub fn resolve(&self, group: &Group) -> Result<FiniteAction> {
        FiniteAction::by_generators(group, self.points, self.generators.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchTask {
    pub name: String,
    pub group: GroupSpec,
    pub s: SSpec,
    pub window: WindowSpec,
    pub n: usize,
    pub k: usize,
    pub budget: Option<u64>,
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyTask {
    pub name: String,
    pub group: GroupSpec,
    /// `{ alphabet, patterns = [[[elem, color], …], …] }`
    pub lcl: Value,
    /// `{ window = [elem, …], colors = [c, …] }`
    pub configuration: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PiSnTask {
    pub name: String,
    pub group: GroupSpec,
    pub s: SSpec,
    pub n: usize,
    /// Candidate domains are subsets of this window.
    pub window: WindowSpec,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubshiftTask {
    pub name: String,
    pub group: GroupSpec,
    pub lcl: Value,
    pub window: WindowSpec,
    /// Larger window for the extension check.
    pub outer: Option<WindowSpec>,
    pub limit: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FreenessTask {
    pub name: String,
    pub group: GroupSpec,
    pub gamma: Value,
    /// Exactly one of `window` (left multiplication) and `action`.
    pub window: Option<WindowSpec>,
    pub action: Option<ActionSpec>,
    pub budget: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableTask {
    pub name: String,
    pub group: GroupSpec,
    pub s: Vec<SSpec>,
    pub k: Vec<usize>,
    pub window: TableWindowSpec,
    pub max_colors: usize,
    pub budget: Option<u64>,
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BrickTask {
    pub name: String,
    pub dim: usize,
    pub radius: usize,
    pub block: i64,
    pub window: WindowSpec,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BandTask {
    pub name: String,
    pub rank: usize,
    pub radius: usize,
    pub band: usize,
    pub ball: usize,
}

pub(crate) fn group_of(spec: &GroupSpec) -> Result<Group> {
    Group::from_spec(spec).map_err(|e| Error::Config(e.to_string()))
}

pub(crate) fn lcl_of(group: &Group, v: &Value) -> Result<LclInstance> {
    LclInstance::decode(group, v).map_err(|e| Error::Config(e.to_string()))
}

pub(crate) fn configuration_of(group: &Group, v: &Value) -> Result<WindowConfiguration> {
    WindowConfiguration::decode(group, v).map_err(|e| Error::Config(e.to_string()))
}
