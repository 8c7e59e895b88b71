//! Γ-graphs: vertex sets with group-labeled edges.
//!
//! An edge set is stored as a support `T`, the explicit triples with labels
//! in `T`, and a cofinite flag. With the flag set every triple labeled
//! outside `T` is an edge (a finite Γ-graph); without it, labels outside `T`
//! are simply not represented and checks ignore them.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::group::{Element, GenSet, Group};
use crate::lcl::{LclInstance, Pattern};
use crate::window::{check_partial_action, Color, Space};

pub type Triple = (Element, usize, usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaGraph {
    vertices: usize,
    support: Vec<Element>,
    triples: Vec<Triple>,
    cofinite: bool,
}

/// Outcome of [`is_gamma_map`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MapCheck {
    GammaMap,
    /// Lexicographically first edge of the source whose image is not an edge.
    Violation(Triple),
}

impl GammaGraph {
    pub fn new(
        vertices: usize,
        support: impl IntoIterator<Item = Element>,
        triples: impl IntoIterator<Item = Triple>,
        cofinite: bool,
    ) -> Result<Self> {
        let mut support: Vec<Element> = support.into_iter().collect();
        support.sort();
        support.dedup();
        let mut triples: Vec<Triple> = triples.into_iter().collect();
        for (g, v, w) in &triples {
            if support.binary_search(g).is_err() {
                return Err(Error::InvalidParameter(format!("edge label {g} is outside the support")));
            }
            if *v >= vertices || *w >= vertices {
                return Err(Error::InvalidParameter(format!("edge ({g}, {v}, {w}) has a missing vertex")));
            }
        }
        triples.sort();
        triples.dedup();
        Ok(GammaGraph {
            vertices,
            support,
            triples,
            cofinite,
        })
    }

    /// The Γ-graph of a space restricted to `support`: edges `(γ, x, γ·x)`
    /// for the sources selected by `include`, where `γ·x` is defined.
    pub fn from_space<S: Space>(
        space: &S,
        support: &[Element],
        include: impl Fn(usize) -> bool,
    ) -> Self {
        let mut triples = Vec::new();
        for g in support {
            for x in (0..space.len()).filter(|&x| include(x)) {
                if let Some(y) = space.act(g, x) {
                    triples.push((g.clone(), x, y));
                }
            }
        }
        Self::new(space.len(), support.iter().cloned(), triples, false)
            .expect("triples built from the support")
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn support(&self) -> &[Element] {
        &self.support
    }

    pub fn triples(&self) -> &[Triple] {
        &self.triples
    }

    pub fn is_cofinite(&self) -> bool {
        self.cofinite
    }

    pub fn in_support(&self, g: &Element) -> bool {
        self.support.binary_search(g).is_ok()
    }

    pub fn has_edge(&self, g: &Element, v: usize, w: usize) -> bool {
        if self.in_support(g) {
            self.triples
                .binary_search_by(|(h, a, b)| (h, *a, *b).cmp(&(g, v, w)))
                .is_ok()
        } else {
            self.cofinite
        }
    }

    fn triples_with(&self, g: &Element) -> &[Triple] {
        let lo = self.triples.partition_point(|(h, _, _)| h < g);
        let hi = self.triples.partition_point(|(h, _, _)| h <= g);
        &self.triples[lo..hi]
    }

    pub fn encode(&self, group: &Group) -> Value {
        json!({
            "vertices": self.vertices,
            "support": self.support.iter().map(|g| group.encode(g)).collect::<Vec<_>>(),
            "triples": self.triples.iter()
                .map(|(g, v, w)| json!([group.encode(g), v, w]))
                .collect::<Vec<_>>(),
            "cofinite": self.cofinite,
        })
    }

    pub fn decode(group: &Group, v: &Value) -> Result<Self> {
        let bad = |what: &str| Error::InvalidParameter(format!("gamma graph: {what}"));
        let vertices = v.get("vertices").and_then(Value::as_u64).ok_or_else(|| bad("vertices"))? as usize;
        let support = v
            .get("support")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("support"))?
            .iter()
            .map(|g| group.decode(g))
            .collect::<Result<Vec<_>>>()?;
        let triples = v
            .get("triples")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("triples"))?
            .iter()
            .map(|t| match t.as_array().map(Vec::as_slice) {
                Some([g, a, b]) => Ok((
                    group.decode(g)?,
                    a.as_u64().ok_or_else(|| bad("vertex"))? as usize,
                    b.as_u64().ok_or_else(|| bad("vertex"))? as usize,
                )),
                _ => Err(bad("triple")),
            })
            .collect::<Result<Vec<_>>>()?;
        let cofinite = v.get("cofinite").and_then(Value::as_bool).ok_or_else(|| bad("cofinite"))?;
        Self::new(vertices, support, triples, cofinite)
    }
}

/// The Γ-graph of a finite action given on a support: edges `(γ, x, γ·x)`.
///
/// `table[i][x]` is `support[i] · x`.
pub fn action_to_gamma_graph(
    group: &Group,
    vertices: usize,
    support: &[Element],
    table: &[Vec<usize>],
) -> Result<GammaGraph> {
    if support.len() != table.len() {
        return Err(Error::InconsistentAction(format!(
            "{} rows for a support of {}",
            table.len(),
            support.len()
        )));
    }
    let map: BTreeMap<Element, Vec<usize>> =
        support.iter().cloned().zip(table.iter().cloned()).collect();
    if map.len() != support.len() {
        return Err(Error::InconsistentAction("support lists an element twice".into()));
    }
    check_partial_action(group, vertices, &map)?;
    let triples = map
        .iter()
        .flat_map(|(g, row)| row.iter().enumerate().map(move |(x, &y)| (g.clone(), x, y)));
    GammaGraph::new(vertices, support.iter().cloned(), triples, false)
}

/// Checks that `f` carries every represented edge of `g` to an edge of `h`.
///
/// Represented edges of `g` are its explicit triples plus, when `g` is
/// cofinite, every triple labeled in `T(h) ∖ T(g)`. Labels outside both
/// supports are edges of both implicitly or of neither, and pass.
pub fn is_gamma_map(f: &[usize], g: &GammaGraph, h: &GammaGraph) -> Result<MapCheck> {
    if f.len() != g.vertices {
        return Err(Error::NotTotal(format!(
            "{} images for {} vertices",
            f.len(),
            g.vertices
        )));
    }
    if let Some(v) = f.iter().position(|&y| y >= h.vertices) {
        return Err(Error::NotTotal(format!("vertex {v} maps outside the target")));
    }
    let mut labels: Vec<&Element> = g.support.iter().collect();
    if g.cofinite {
        labels.extend(h.support.iter());
    }
    labels.sort();
    labels.dedup();
    for gamma in labels {
        if g.in_support(gamma) {
            for (_, v, w) in g.triples_with(gamma) {
                if !h.has_edge(gamma, f[*v], f[*w]) {
                    return Ok(MapCheck::Violation((gamma.clone(), *v, *w)));
                }
            }
        } else {
            for v in 0..g.vertices {
                for w in 0..g.vertices {
                    if !h.has_edge(gamma, f[v], f[w]) {
                        return Ok(MapCheck::Violation((gamma.clone(), v, w)));
                    }
                }
            }
        }
    }
    Ok(MapCheck::GammaMap)
}

/// Γ-graph on the patterns of `lcl`: `(γ, P, Q)` is an edge iff `γP ∪ Q` is
/// a function. Labels outside `support` are left implicit (cofinite).
pub fn lcl_to_gamma_graph(group: &Group, lcl: &LclInstance, support: &[Element]) -> GammaGraph {
    let mut triples = Vec::new();
    for gamma in support {
        let moved: Vec<Pattern> = lcl
            .patterns()
            .iter()
            .map(|p| p.translate(group, gamma))
            .collect();
        for (i, gp) in moved.iter().enumerate() {
            for (j, q) in lcl.patterns().iter().enumerate() {
                if gp.is_compatible(q) {
                    triples.push((gamma.clone(), i, j));
                }
            }
        }
    }
    GammaGraph::new(lcl.len(), support.iter().cloned(), triples, true)
        .expect("triples built from the support")
}

/// The LCL of all `P : S → V(G)` with `(s, P(1), P(s)) ∈ E(G)` for each
/// `s ∈ S`; colors are vertex indices.
pub fn gamma_graph_to_lcl(
    group: &Group,
    graph: &GammaGraph,
    s: &GenSet,
    limit: usize,
) -> Result<LclInstance> {
    if !graph.cofinite {
        return Err(Error::InvalidParameter(
            "only finite (cofinite-edge) Γ-graphs define an LCL".into(),
        ));
    }
    if let Some(g) = graph.support.iter().find(|g| !s.contains(g)) {
        return Err(Error::SupportNotCovered(g.to_string()));
    }
    let id = group.identity();
    let others: Vec<&Element> = s.iter().filter(|g| **g != id).collect();
    let mut patterns = Vec::new();
    for v in 0..graph.vertices {
        if !graph.has_edge(&id, v, v) {
            continue;
        }
        let options: Vec<Vec<usize>> = others
            .iter()
            .map(|g| (0..graph.vertices).filter(|&w| graph.has_edge(g, v, w)).collect())
            .collect();
        if options.iter().any(Vec::is_empty) {
            continue;
        }
        let mut digits = vec![0usize; others.len()];
        'odometer: loop {
            if patterns.len() >= limit {
                return Err(Error::SizeLimit {
                    what: "pattern enumeration",
                    limit,
                });
            }
            let entries = std::iter::once((id.clone(), v as Color)).chain(
                others
                    .iter()
                    .zip(&digits)
                    .zip(&options)
                    .map(|((g, &d), opts)| ((*g).clone(), opts[d] as Color)),
            );
            patterns.push(Pattern::new(entries)?);
            for pos in (0..digits.len()).rev() {
                digits[pos] += 1;
                if digits[pos] < options[pos].len() {
                    continue 'odometer;
                }
                digits[pos] = 0;
            }
            break;
        }
    }
    LclInstance::with_alphabet(patterns, graph.vertices)
}
