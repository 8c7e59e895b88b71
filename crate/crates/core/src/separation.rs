//! Monochromatic components, S-separation, and the two directions linking
//! `Π_{S,n}`-colorings with S-separated colorings.
//!
//! Window truncation can only cut components, so a measured size is a lower
//! bound on the size in the whole group. Components that touch the boundary
//! (some member has an `S`-neighbor outside the window) are reported
//! separately and never certify a bound on their own.

use std::collections::{BTreeMap, HashMap, HashSet};

use crate::error::{Error, Result};
use crate::group::{set_power, Element, GenSet, Group, DEFAULT_SIZE_LIMIT};
use crate::lcl::{pi_sn_conditions, LclInstance, Pattern, PatternAssignment};
use crate::union_find::UnionFind;
use crate::window::{Color, Space, WindowConfiguration};

/// Components of the graph joining `x` and `s·x` when both have one color.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentGraph {
    /// Component id per point; ids follow the smallest member.
    pub component_of: Vec<usize>,
    pub members: Vec<Vec<usize>>,
    pub touches_boundary: Vec<bool>,
}

impl ComponentGraph {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn component(&self, x: usize) -> &[usize] {
        &self.members[self.component_of[x]]
    }
}

pub fn component_graph<S: Space>(space: &S, colors: &[Color], s: &GenSet) -> ComponentGraph {
    let n = space.len();
    let mut uf = UnionFind::new(n);
    let mut boundary = vec![false; n];
    for (x, at_edge) in boundary.iter_mut().enumerate() {
        for t in s.iter() {
            match space.act(t, x) {
                Some(y) if colors[y] == colors[x] => {
                    uf.union(x, y);
                }
                Some(_) => {}
                None => *at_edge = true,
            }
        }
    }
    let mut id_of_root = HashMap::new();
    let mut component_of = Vec::with_capacity(n);
    let mut members: Vec<Vec<usize>> = Vec::new();
    let mut touches_boundary = Vec::new();
    for (x, &at_edge) in boundary.iter().enumerate() {
        let root = uf.find(x);
        let id = *id_of_root.entry(root).or_insert_with(|| {
            members.push(Vec::new());
            touches_boundary.push(false);
            members.len() - 1
        });
        component_of.push(id);
        members[id].push(x);
        touches_boundary[id] |= at_edge;
    }
    ComponentGraph {
        component_of,
        members,
        touches_boundary,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparationReport {
    pub k: usize,
    /// Every component away from the boundary has at most `k` points.
    pub separated: bool,
    pub interior_max: usize,
    /// Largest boundary-touching component; a lower bound on its true size.
    pub boundary_max: usize,
    pub interior_histogram: BTreeMap<usize, usize>,
    pub boundary_histogram: BTreeMap<usize, usize>,
    /// Smallest point of the first component larger than `k`, boundary or not.
    pub first_oversized: Option<usize>,
}

impl SeparationReport {
    pub fn max_component(&self) -> usize {
        self.interior_max.max(self.boundary_max)
    }

    /// The window taken as the whole space: every component within `k`.
    pub fn closed_within(&self) -> bool {
        self.max_component() <= self.k
    }

    pub fn components(&self) -> usize {
        self.interior_histogram.values().sum::<usize>() + self.boundary_histogram.values().sum::<usize>()
    }
}

pub fn separation_report(cg: &ComponentGraph, k: usize) -> SeparationReport {
    let mut report = SeparationReport {
        k,
        separated: true,
        interior_max: 0,
        boundary_max: 0,
        interior_histogram: BTreeMap::new(),
        boundary_histogram: BTreeMap::new(),
        first_oversized: None,
    };
    for (id, m) in cg.members.iter().enumerate() {
        let size = m.len();
        if cg.touches_boundary[id] {
            report.boundary_max = report.boundary_max.max(size);
            *report.boundary_histogram.entry(size).or_default() += 1;
        } else {
            report.interior_max = report.interior_max.max(size);
            *report.interior_histogram.entry(size).or_default() += 1;
            if size > k {
                report.separated = false;
            }
        }
        if size > k && report.first_oversized.is_none() {
            report.first_oversized = Some(m[0]);
        }
    }
    report
}

pub fn is_s_separated<S: Space>(
    space: &S,
    colors: &[Color],
    s: &GenSet,
    k: usize,
) -> Result<SeparationReport> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    Ok(separation_report(&component_graph(space, colors, s), k))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparatedBound {
    /// `max |dom(P)|` over the instance.
    pub bound: usize,
    /// Largest component containing an assigned point.
    pub checked_max: usize,
    pub checked_points: usize,
}

/// Forward direction: a `Π_{S,n}`-coloring is S-separated.
///
/// For each assigned point `x` with pattern `P`, checks `[x] ⊆ dom(P)·x`
/// exactly, hence `|[x]| ≤ max |dom(P)|`.
pub fn pi_to_separated_bound(
    group: &Group,
    c: &WindowConfiguration,
    s: &GenSet,
    n: usize,
    lcl: &LclInstance,
    assignment: &PatternAssignment,
) -> Result<SeparatedBound> {
    for p in lcl.patterns() {
        pi_sn_conditions(group, s, n, p).map_err(|why| {
            Error::InvalidParameter(format!("pattern outside Π_(S,n): {why}"))
        })?;
    }
    if assignment.assigned.len() != c.len() {
        return Err(Error::InvalidParameter("assignment does not match the window".into()));
    }
    let cg = component_graph(&c.window.space(group), &c.colors, s);
    let bound = lcl.max_domain();
    let mut checked_max = 0;
    let mut checked_points = 0;
    for (x, pi) in assignment.iter() {
        let p = &lcl.patterns()[pi];
        let xinv = group.inv(&c.window.points()[x]);
        for &y in cg.component(x) {
            let rel = group.mul(&c.window.points()[y], &xinv);
            if p.get(&rel).is_none() {
                return Err(Error::Invariant(format!(
                    "component of {} reaches {} outside dom(P)·x",
                    c.window.points()[x],
                    c.window.points()[y]
                )));
            }
        }
        let size = cg.component(x).len();
        if size > bound {
            return Err(Error::Invariant(format!(
                "component of {} has {size} points, above the bound {bound}",
                c.window.points()[x]
            )));
        }
        checked_max = checked_max.max(size);
        checked_points += 1;
    }
    Ok(SeparatedBound {
        bound,
        checked_max,
        checked_points,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparatedFragment {
    pub lcl: LclInstance,
    /// `x ↦ P_x` for points in scope, `None` elsewhere.
    pub assignment: PatternAssignment,
    pub in_scope: usize,
}

/// Converse direction on a free window: builds, for every point `x` with
/// `S^{k+1}·x` inside the window, the pattern `P_x(γ) = c(γx)` on
/// `{γ : γx ∈ S·[x]}`, and checks `P_x ∈ Π_{S,n}` with `dom(P_x) ⊆ S^{k+1}`.
pub fn separated_to_pi(
    group: &Group,
    c: &WindowConfiguration,
    s: &GenSet,
    k: usize,
    n: usize,
) -> Result<SeparatedFragment> {
    if k == 0 {
        return Err(Error::InvalidParameter(
            "k must be at least 1; components always contain their point".into(),
        ));
    }
    let n = n.max(c.num_colors());
    let pts = c.window.points();
    let sk: HashSet<Element> = set_power(group, s, k, DEFAULT_SIZE_LIMIT)?.into_iter().collect();
    let sk1 = set_power(group, s, k + 1, DEFAULT_SIZE_LIMIT)?;
    let sk1_set: HashSet<&Element> = sk1.iter().collect();
    let cg = component_graph(&c.window.space(group), &c.colors, s);

    let mut patterns: Vec<Pattern> = Vec::new();
    let mut index: HashMap<Pattern, usize> = HashMap::new();
    let mut assigned = vec![None; c.len()];
    let mut in_scope = 0;
    for (x, px) in pts.iter().enumerate() {
        if !sk1.iter().all(|g| c.window.contains(&group.mul(g, px))) {
            continue;
        }
        in_scope += 1;
        let comp = cg.component(x);
        let xinv = group.inv(px);
        if cg.touches_boundary[cg.component_of[x]] || comp.len() > k {
            return Err(Error::NotSeparated(format!(
                "component of {px} has {} points, more than {k}",
                comp.len()
            )));
        }
        if let Some(&y) = comp.iter().find(|&&y| !sk.contains(&group.mul(&pts[y], &xinv))) {
            return Err(Error::NotSeparated(format!(
                "component of {px} reaches {} outside S^{k}·x",
                pts[y]
            )));
        }
        let mut entries = Vec::new();
        for &y in comp {
            for t in s.iter() {
                let point = group.mul(t, &pts[y]);
                let color = c.get(&point).ok_or_else(|| {
                    Error::Invariant(format!("{point} lies in S^(k+1)x but not in the window"))
                })?;
                entries.push((group.mul(&point, &xinv), color));
            }
        }
        let p = Pattern::new(entries)?;
        if let Some((g, _)) = p.entries().iter().find(|(g, _)| !sk1_set.contains(g)) {
            return Err(Error::Invariant(format!(
                "pattern at {px} has {g} outside S^(k+1)"
            )));
        }
        pi_sn_conditions(group, s, n, &p)
            .map_err(|why| Error::Invariant(format!("pattern at {px} is not in Π_(S,n): {why}")))?;
        let id = *index.entry(p.clone()).or_insert_with(|| {
            patterns.push(p);
            patterns.len() - 1
        });
        assigned[x] = Some(id);
    }
    Ok(SeparatedFragment {
        lcl: LclInstance::with_alphabet(patterns, n)?,
        assignment: PatternAssignment { assigned },
        in_scope,
    })
}
