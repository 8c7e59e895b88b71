//! Window-scale subshifts of `Π₀`-colorings, the shift action on
//! configurations, and pulling colorings back along an orbit map.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::group::{Element, Group};
use crate::lcl::{verify_pi_coloring, LclInstance, PatternIndex, PiVerdict, PointStatus};
use crate::search::DEFAULT_NODE_BUDGET;
use crate::window::{Color, Space, Window, WindowConfiguration};

/// The valid `Π₀`-configurations of a window, enumerated lazily.
#[derive(Clone, Debug)]
pub struct WindowedSubshift {
    group: Group,
    lcl: LclInstance,
    window: Window,
    index: PatternIndex,
}

impl WindowedSubshift {
    pub fn new(group: &Group, lcl: &LclInstance, window: &Window) -> Self {
        let index = PatternIndex::new(&window.space(group), lcl);
        WindowedSubshift {
            group: group.clone(),
            lcl: lcl.clone(),
            window: window.clone(),
            index,
        }
    }

    pub fn lcl(&self) -> &LclInstance {
        &self.lcl
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    pub fn alphabet(&self) -> usize {
        self.lcl.alphabet()
    }

    /// Points where some pattern fits entirely inside the window.
    pub fn interior(&self) -> Vec<usize> {
        (0..self.window.len()).filter(|&x| self.index.fits(x)).collect()
    }

    pub fn is_valid(&self, colors: &[Color]) -> bool {
        verify_pi_coloring(&self.window.space(&self.group), colors, &self.lcl).is_valid()
    }

    /// Valid configurations in lexicographic order of their color vectors.
    pub fn iter(&self) -> ConfigIter<'_> {
        ConfigIter::with_fixed(&self.index, self.alphabet(), vec![None; self.window.len()], u64::MAX)
    }

    /// Valid configurations agreeing with `fixed` wherever it is set.
    pub fn iter_fixed(&self, fixed: Vec<Option<Color>>, budget: u64) -> ConfigIter<'_> {
        ConfigIter::with_fixed(&self.index, self.alphabet(), fixed, budget)
    }
}

/// Depth-first enumeration; a point is checked as soon as every point its
/// status depends on has a color.
pub struct ConfigIter<'a> {
    index: &'a PatternIndex,
    alphabet: usize,
    check_at: Vec<Vec<usize>>,
    fixed: Vec<Option<Color>>,
    colors: Vec<Color>,
    next: Vec<Color>,
    depth: usize,
    started: bool,
    done: bool,
    nodes: u64,
    budget: u64,
    out_of_budget: bool,
}

impl<'a> ConfigIter<'a> {
    /// Valid colorings of whatever space `index` was built on.
    pub fn new(index: &'a PatternIndex, alphabet: usize, budget: u64) -> Self {
        Self::with_fixed(index, alphabet, vec![None; index.len()], budget)
    }

    pub fn with_fixed(
        index: &'a PatternIndex,
        alphabet: usize,
        fixed: Vec<Option<Color>>,
        budget: u64,
    ) -> Self {
        let n = index.len();
        let mut check_at = vec![Vec::new(); n];
        for x in 0..n {
            let last = *index.neighborhood(x).last().expect("contains x");
            check_at[last].push(x);
        }
        let done = fixed.len() != n || fixed.iter().flatten().any(|&c| c as usize >= alphabet);
        ConfigIter {
            index,
            alphabet,
            check_at,
            fixed,
            colors: vec![0; n],
            next: vec![0; n],
            depth: 0,
            started: false,
            done,
            nodes: 0,
            budget,
            out_of_budget: false,
        }
    }

    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    /// True once the node budget stopped the enumeration early.
    pub fn out_of_budget(&self) -> bool {
        self.out_of_budget
    }

    fn range(&self, i: usize) -> (Color, Color) {
        match self.fixed[i] {
            Some(c) => (c, c + 1),
            None => (0, self.alphabet as Color),
        }
    }

    fn consistent(&self, i: usize) -> bool {
        self.check_at[i]
            .iter()
            .all(|&x| self.index.status(x, &self.colors) != PointStatus::Failed)
    }
}

impl Iterator for ConfigIter<'_> {
    type Item = Vec<Color>;

    fn next(&mut self) -> Option<Vec<Color>> {
        if self.done {
            return None;
        }
        let n = self.colors.len();
        if n == 0 {
            self.done = true;
            return Some(Vec::new());
        }
        if !self.started {
            self.started = true;
            self.next[0] = self.range(0).0;
        }
        loop {
            let i = self.depth;
            let (_, hi) = self.range(i);
            let c = self.next[i];
            if c >= hi {
                if i == 0 {
                    self.done = true;
                    return None;
                }
                self.depth -= 1;
                continue;
            }
            if self.nodes >= self.budget {
                self.out_of_budget = true;
                self.done = true;
                return None;
            }
            self.nodes += 1;
            self.colors[i] = c;
            self.next[i] = c + 1;
            if !self.consistent(i) {
                continue;
            }
            if i + 1 == n {
                return Some(self.colors.clone());
            }
            self.depth += 1;
            self.next[i + 1] = self.range(i + 1).0;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enumeration {
    pub configs: Vec<WindowConfiguration>,
    /// The limit was reached; more configurations may exist.
    pub truncated: bool,
}

/// Every valid configuration of `window`, up to `limit`.
pub fn enumerate_window_configs(
    group: &Group,
    lcl: &LclInstance,
    window: &Window,
    limit: usize,
) -> Result<Enumeration> {
    let sub = WindowedSubshift::new(group, lcl, window);
    let mut configs = Vec::new();
    let mut it = sub.iter();
    for colors in it.by_ref() {
        if configs.len() == limit {
            return Ok(Enumeration {
                configs,
                truncated: true,
            });
        }
        configs.push(WindowConfiguration::new(window.clone(), colors)?);
    }
    Ok(Enumeration {
        configs,
        truncated: false,
    })
}

/// `(γ·x)_δ = x_{δγ}` on `{δ ∈ W : δγ ∈ W}`. The result may be empty.
pub fn shift_config(group: &Group, g: &Element, x: &WindowConfiguration) -> WindowConfiguration {
    let mut cells: Vec<(Element, Color)> = x
        .window
        .points()
        .iter()
        .filter_map(|d| x.get(&group.mul(d, g)).map(|c| (d.clone(), c)))
        .collect();
    cells.sort();
    let window = Window::from_points(cells.iter().map(|(d, _)| d.clone()));
    let colors = cells.into_iter().map(|(_, c)| c).collect();
    WindowConfiguration::new(window, colors).expect("one color per point")
}

/// The color at the identity.
pub fn canonical_coloring(group: &Group, x: &WindowConfiguration) -> Result<Color> {
    x.get(&group.identity()).ok_or(Error::MissingIdentity)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionReport {
    pub inner_size: usize,
    pub outer_size: usize,
    /// Valid inner configurations examined.
    pub checked: usize,
    pub extendable: usize,
    pub non_extendable: usize,
    /// Extension searches stopped by the node budget.
    pub undecided: usize,
    /// More inner configurations existed than the limit allowed.
    pub truncated: bool,
}

/// For each valid configuration of `inner` (up to `limit`), searches for a
/// valid configuration of `outer` restricting to it.
pub fn extension_check(
    group: &Group,
    lcl: &LclInstance,
    inner: &Window,
    outer: &Window,
    limit: usize,
) -> Result<ExtensionReport> {
    if !inner.is_subset(outer) {
        return Err(Error::InvalidParameter("inner window is not inside the outer one".into()));
    }
    let small = WindowedSubshift::new(group, lcl, inner);
    let large = WindowedSubshift::new(group, lcl, outer);
    let mut report = ExtensionReport {
        inner_size: inner.len(),
        outer_size: outer.len(),
        checked: 0,
        extendable: 0,
        non_extendable: 0,
        undecided: 0,
        truncated: false,
    };
    for colors in small.iter() {
        if report.checked == limit {
            report.truncated = true;
            break;
        }
        report.checked += 1;
        let mut fixed = vec![None; outer.len()];
        for (p, &c) in inner.points().iter().zip(&colors) {
            fixed[outer.index_of(p).expect("subset")] = Some(c);
        }
        let mut it = large.iter_fixed(fixed, DEFAULT_NODE_BUDGET);
        if it.next().is_some() {
            report.extendable += 1;
        } else if it.out_of_budget() {
            report.undecided += 1;
        } else {
            report.non_extendable += 1;
        }
    }
    Ok(report)
}

/// `c_Γ(γ) = c(γ·x₀)` on `ball`. With an instance given, the pulled-back
/// coloring is re-verified and a failure is an internal error.
pub fn pullback_group_coloring<A: Space>(
    group: &Group,
    action: &A,
    x0: usize,
    colors: &[Color],
    ball: &Window,
    lcl: Option<&LclInstance>,
) -> Result<WindowConfiguration> {
    if colors.len() != action.len() || x0 >= action.len() {
        return Err(Error::InvalidParameter("coloring does not match the action".into()));
    }
    let mut seen: HashMap<usize, &Element> = HashMap::new();
    let mut out = Vec::with_capacity(ball.len());
    for g in ball.points() {
        let y = action
            .act(g, x0)
            .ok_or_else(|| Error::InconsistentAction(format!("action of {g} is not defined")))?;
        if let Some(h) = seen.insert(y, g) {
            return Err(Error::NonFree(h.to_string(), g.to_string()));
        }
        out.push(colors[y]);
    }
    let config = WindowConfiguration::new(ball.clone(), out)?;
    if let Some(lcl) = lcl {
        if let PiVerdict::Violation { point } = verify_pi_coloring(action, colors, lcl) {
            return Err(Error::Unmatched(format!("action point #{point}")));
        }
        if let PiVerdict::Violation { point } =
            verify_pi_coloring(&ball.space(group), &config.colors, lcl)
        {
            return Err(Error::Invariant(format!(
                "pulled-back coloring fails at {}",
                ball.points()[point]
            )));
        }
    }
    Ok(config)
}
