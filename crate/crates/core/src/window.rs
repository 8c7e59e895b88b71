//! Finite windows of a group, colorings on them, and finite actions.
//!
//! Everything that checks colorings is written against [`Space`]: a finite
//! point set with a partial left action. A window of the group under left
//! multiplication is one such space (free, with a boundary); a finite action
//! table is another (possibly with fixed points, total on its support).

use std::collections::{BTreeMap, HashMap};

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::group::{Element, GenSet, Group, DEFAULT_SIZE_LIMIT};

/// Colors are dense small naturals `0..n`.
pub type Color = u32;

pub trait Space {
    fn len(&self) -> usize;

    /// `γ · x`, or `None` when the result falls outside the space (or the
    /// action of `γ` is not recorded).
    fn act(&self, g: &Element, x: usize) -> Option<usize>;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// A finite set of group elements in canonical order.
#[derive(Clone, Debug, Default)]
pub struct Window {
    points: Vec<Element>,
    index: HashMap<Element, usize>,
}

impl PartialEq for Window {
    fn eq(&self, other: &Self) -> bool {
        self.points == other.points
    }
}

impl Eq for Window {}

impl Window {
    pub fn from_points(points: impl IntoIterator<Item = Element>) -> Self {
        let mut points: Vec<Element> = points.into_iter().collect();
        points.sort();
        points.dedup();
        let index = points.iter().cloned().zip(0..).collect();
        Window { points, index }
    }

    /// `{lo, …, hi}` in Z.
    pub fn interval(lo: i64, hi: i64) -> Self {
        Self::from_points((lo..=hi).map(|i| Element::Vector(vec![i])))
    }

    /// Axis-aligned box `lo ≤ x ≤ hi` in Z^d.
    pub fn grid(lo: &[i64], hi: &[i64]) -> Self {
        assert_eq!(lo.len(), hi.len());
        let mut points = vec![Vec::new()];
        for (&a, &b) in lo.iter().zip(hi) {
            points = points
                .into_iter()
                .flat_map(|p| {
                    (a..=b).map(move |i| {
                        let mut q = p.clone();
                        q.push(i);
                        q
                    })
                })
                .collect();
        }
        Self::from_points(points.into_iter().map(Element::Vector))
    }

    /// `S^r`, the ball of radius `r` for the word metric of `s`.
    pub fn ball(group: &Group, s: &GenSet, radius: usize) -> Result<Self> {
        Ok(Self::from_points(crate::group::set_power(
            group,
            s,
            radius,
            DEFAULT_SIZE_LIMIT,
        )?))
    }

    /// All elements of a finite group.
    pub fn whole(group: &Group) -> Result<Self> {
        if !group.is_finite() {
            return Err(Error::InvalidParameter(format!("{} is not finite", group.describe())));
        }
        let s = GenSet::standard(group);
        let mut prev = 0;
        for r in 0.. {
            let w = Self::ball(group, &s, r)?;
            if w.len() == prev {
                return Ok(w);
            }
            prev = w.len();
        }
        unreachable!("a finite group's balls stabilize")
    }

    pub fn points(&self) -> &[Element] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn index_of(&self, x: &Element) -> Option<usize> {
        self.index.get(x).copied()
    }

    pub fn contains(&self, x: &Element) -> bool {
        self.index.contains_key(x)
    }

    pub fn is_subset(&self, other: &Window) -> bool {
        self.points.iter().all(|p| other.contains(p))
    }

    /// This window acted on by left multiplication.
    pub fn space<'a>(&'a self, group: &'a Group) -> WindowSpace<'a> {
        WindowSpace {
            group,
            window: self,
        }
    }

    pub fn encode(&self, group: &Group) -> Value {
        Value::Array(self.points.iter().map(|p| group.encode(p)).collect())
    }

    pub fn decode(group: &Group, v: &Value) -> Result<Self> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::InvalidParameter("window must be a list of elements".into()))?;
        let pts = arr.iter().map(|p| group.decode(p)).collect::<Result<Vec<_>>>()?;
        Ok(Self::from_points(pts))
    }
}

#[derive(Clone, Copy)]
pub struct WindowSpace<'a> {
    pub group: &'a Group,
    pub window: &'a Window,
}

impl Space for WindowSpace<'_> {
    fn len(&self) -> usize {
        self.window.len()
    }

    fn act(&self, g: &Element, x: usize) -> Option<usize> {
        self.window
            .index_of(&self.group.mul(g, &self.window.points[x]))
    }
}

/// A total coloring of a window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowConfiguration {
    pub window: Window,
    pub colors: Vec<Color>,
}

impl WindowConfiguration {
    pub fn new(window: Window, colors: Vec<Color>) -> Result<Self> {
        if window.len() != colors.len() {
            return Err(Error::InvalidParameter(format!(
                "{} colors for a window of {} points",
                colors.len(),
                window.len()
            )));
        }
        Ok(WindowConfiguration { window, colors })
    }

    pub fn from_fn(window: Window, f: impl Fn(&Element) -> Color) -> Self {
        let colors = window.points().iter().map(f).collect();
        WindowConfiguration { window, colors }
    }

    pub fn get(&self, x: &Element) -> Option<Color> {
        self.window.index_of(x).map(|i| self.colors[i])
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn num_colors(&self) -> usize {
        self.colors.iter().max().map_or(0, |&c| c as usize + 1)
    }

    pub fn encode(&self, group: &Group) -> Value {
        json!({ "window": self.window.encode(group), "colors": self.colors })
    }

    pub fn decode(group: &Group, v: &Value) -> Result<Self> {
        let bad = |what: &str| Error::InvalidParameter(format!("configuration: {what}"));
        let raw = v
            .get("window")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing window"))?;
        let pts = raw.iter().map(|p| group.decode(p)).collect::<Result<Vec<_>>>()?;
        let colors: Vec<Color> = serde_json::from_value(
            v.get("colors").cloned().ok_or_else(|| bad("missing colors"))?,
        )?;
        if pts.len() != colors.len() {
            return Err(bad("window and colors differ in length"));
        }
        // values are listed in the order the points were listed
        let mut pairs: Vec<(Element, Color)> = pts.into_iter().zip(colors).collect();
        pairs.sort_by(|a, b| a.0.cmp(&b.0));
        if pairs.windows(2).any(|p| p[0].0 == p[1].0) {
            return Err(bad("repeated point"));
        }
        let (pts, colors): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
        Ok(WindowConfiguration {
            window: Window::from_points(pts),
            colors,
        })
    }
}

/// Validates a partial action given on a finite support: entries in range,
/// the identity (if listed) fixes everything, and `(γδ)·x = γ·(δ·x)` whenever
/// `γ`, `δ` and `γδ` are all listed.
pub(crate) fn check_partial_action(
    group: &Group,
    points: usize,
    table: &BTreeMap<Element, Vec<usize>>,
) -> Result<()> {
    for (g, row) in table {
        group.check(g)?;
        if row.len() != points {
            return Err(Error::InconsistentAction(format!(
                "row for {g} has {} entries, expected {points}",
                row.len()
            )));
        }
        if let Some(&y) = row.iter().find(|&&y| y >= points) {
            return Err(Error::InconsistentAction(format!("{g} maps to {y}, out of range")));
        }
    }
    if let Some(row) = table.get(&group.identity()) {
        if let Some(x) = (0..points).find(|&x| row[x] != x) {
            return Err(Error::InconsistentAction(format!(
                "identity moves point {x} to {}",
                row[x]
            )));
        }
    }
    for (g, grow) in table {
        for (d, drow) in table {
            if let Some(gdrow) = table.get(&group.mul(g, d)) {
                if let Some(x) = (0..points).find(|&x| gdrow[x] != grow[drow[x]]) {
                    return Err(Error::InconsistentAction(format!(
                        "({g}·{d})·{x} differs from {g}·({d}·{x})"
                    )));
                }
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug)]
enum Rule {
    /// One permutation per free generator; words act letter by letter.
    Generators {
        forward: Vec<Vec<usize>>,
        backward: Vec<Vec<usize>>,
    },
    Table(BTreeMap<Element, Vec<usize>>),
}

/// An action of a group on `0..points`.
#[derive(Clone, Debug)]
pub struct FiniteAction {
    group: Group,
    points: usize,
    rule: Rule,
}

impl FiniteAction {
    /// The action of a free or free abelian group determined by where its
    /// generators go. Free abelian generators must commute.
    pub fn by_generators(group: &Group, points: usize, perms: Vec<Vec<usize>>) -> Result<Self> {
        let rank = match group {
            Group::FreeAbelian(d) => *d,
            Group::Free(r) => *r,
            _ => {
                return Err(Error::InvalidParameter(
                    "generator actions need a free or free abelian group".into(),
                ))
            }
        };
        if perms.len() != rank {
            return Err(Error::InconsistentAction(format!(
                "{} permutations for rank {rank}",
                perms.len()
            )));
        }
        let mut backward = Vec::with_capacity(rank);
        for (i, p) in perms.iter().enumerate() {
            let mut inv = vec![usize::MAX; points];
            if p.len() != points {
                return Err(Error::InconsistentAction(format!("generator {i} has wrong length")));
            }
            for (x, &y) in p.iter().enumerate() {
                if y >= points || inv[y] != usize::MAX {
                    return Err(Error::InconsistentAction(format!(
                        "generator {i} is not a permutation"
                    )));
                }
                inv[y] = x;
            }
            backward.push(inv);
        }
        if matches!(group, Group::FreeAbelian(_)) {
            for a in 0..rank {
                for b in 0..a {
                    if (0..points).any(|x| perms[a][perms[b][x]] != perms[b][perms[a][x]]) {
                        return Err(Error::InconsistentAction(format!(
                            "generators {b} and {a} do not commute"
                        )));
                    }
                }
            }
        }
        Ok(FiniteAction {
            group: group.clone(),
            points,
            rule: Rule::Generators {
                forward: perms,
                backward,
            },
        })
    }

    /// An action recorded explicitly on a finite support; other elements are
    /// treated as unknown.
    pub fn by_table(
        group: &Group,
        points: usize,
        entries: impl IntoIterator<Item = (Element, Vec<usize>)>,
    ) -> Result<Self> {
        let table: BTreeMap<Element, Vec<usize>> = entries.into_iter().collect();
        check_partial_action(group, points, &table)?;
        Ok(FiniteAction {
            group: group.clone(),
            points,
            rule: Rule::Table(table),
        })
    }

    /// Left multiplication of a finite group on itself.
    pub fn regular(group: &Group) -> Result<Self> {
        let w = Window::whole(group)?;
        let entries = w.points().iter().map(|g| {
            let row = w
                .points()
                .iter()
                .map(|x| w.index_of(&group.mul(g, x)).expect("closed under products"))
                .collect();
            (g.clone(), row)
        });
        Self::by_table(group, w.len(), entries.collect::<Vec<_>>())
    }

    /// Every listed element fixes every point.
    pub fn trivial(group: &Group, points: usize, support: &[Element]) -> Result<Self> {
        Self::by_table(
            group,
            points,
            support.iter().map(|g| (g.clone(), (0..points).collect())),
        )
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    /// Rows `γ ↦ (γ·x)_x` for the given support, failing on unknown elements.
    pub fn table_for(&self, support: &[Element]) -> Result<Vec<Vec<usize>>> {
        support
            .iter()
            .map(|g| {
                (0..self.points)
                    .map(|x| {
                        self.act(g, x).ok_or_else(|| {
                            Error::InconsistentAction(format!("action of {g} is not recorded"))
                        })
                    })
                    .collect()
            })
            .collect()
    }

    fn act_vector(&self, v: &[i64], forward: &[Vec<usize>], backward: &[Vec<usize>], x: usize) -> usize {
        let mut y = x;
        for (i, &a) in v.iter().enumerate() {
            let perm = if a >= 0 { &forward[i] } else { &backward[i] };
            for _ in 0..a.unsigned_abs() {
                y = perm[y];
            }
        }
        y
    }
}

impl Space for FiniteAction {
    fn len(&self) -> usize {
        self.points
    }

    fn act(&self, g: &Element, x: usize) -> Option<usize> {
        if x >= self.points || !self.group.contains(g) {
            return None;
        }
        match (&self.rule, g) {
            (Rule::Table(t), _) => t.get(g).map(|row| row[x]),
            (Rule::Generators { forward, backward }, Element::Vector(v)) => {
                Some(self.act_vector(v, forward, backward, x))
            }
            (Rule::Generators { forward, backward }, Element::Word(w)) => {
                // the rightmost letter acts first
                Some(w.iter().rev().fold(x, |y, &l| {
                    let i = l.unsigned_abs() as usize - 1;
                    if l > 0 {
                        forward[i][y]
                    } else {
                        backward[i][y]
                    }
                }))
            }
            _ => None,
        }
    }
}
