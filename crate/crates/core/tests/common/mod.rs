//! Brute-force oracles shared by the integration tests. Each one enumerates
//! everything and recomputes from the definitions, sharing no code with the
//! library beyond group arithmetic and `Space::act`.
#![allow(dead_code)]

use gammalab::window::Space;
use gammalab::{Color, Element, GenSet, Group, LclInstance, Pattern, Window};
use rand::seq::SliceRandom;
use rand::Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Assigned(usize),
    Skipped,
    Failed,
}

/// Point status straight from the definitions: assigned to the first fitting
/// pattern that matches, skipped when undecidable inside the space.
pub fn status<S: Space>(space: &S, colors: &[Color], lcl: &LclInstance, x: usize) -> Status {
    if lcl.is_empty() {
        return Status::Failed;
    }
    let mut fits_somewhere = false;
    let mut open = false;
    for (i, p) in lcl.patterns().iter().enumerate() {
        let cells: Vec<(Option<usize>, Color)> =
            p.entries().iter().map(|(g, c)| (space.act(g, x), *c)).collect();
        let fits = cells.iter().all(|(y, _)| y.is_some());
        let agrees = cells.iter().all(|(y, c)| y.is_none_or(|y| colors[y] == *c));
        if fits && agrees {
            return Status::Assigned(i);
        }
        fits_somewhere |= fits;
        open |= !fits && agrees;
    }
    if !fits_somewhere || open {
        Status::Skipped
    } else {
        Status::Failed
    }
}

pub fn is_valid<S: Space>(space: &S, colors: &[Color], lcl: &LclInstance) -> bool {
    (0..space.len()).all(|x| status(space, colors, lcl, x) != Status::Failed)
}

/// Every coloring in lexicographic order (point 0 most significant).
pub fn all_colorings(len: usize, alphabet: usize) -> impl Iterator<Item = Vec<Color>> {
    let total = (alphabet as u64).checked_pow(len as u32).expect("small enumeration");
    let total = if alphabet == 0 && len > 0 { 0 } else { total };
    (0..total).map(move |mut code| {
        let mut c = vec![0; len];
        for slot in c.iter_mut().rev() {
            *slot = (code % alphabet as u64) as Color;
            code /= alphabet as u64;
        }
        c
    })
}

pub fn naive_configs<S: Space>(space: &S, lcl: &LclInstance) -> Vec<Vec<Color>> {
    all_colorings(space.len(), lcl.alphabet())
        .filter(|c| is_valid(space, c, lcl))
        .collect()
}

/// `(x, y)` with `y = t·x` for some `t ∈ S`, `y ≠ x`.
pub fn s_edges<S: Space>(space: &S, s: &GenSet) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for x in 0..space.len() {
        for t in s.iter() {
            if let Some(y) = space.act(t, x) {
                if y != x {
                    edges.push((x.min(y), x.max(y)));
                }
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();
    edges
}

/// Monochromatic components by breadth-first search, each sorted.
pub fn components(len: usize, edges: &[(usize, usize)], colors: &[Color]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); len];
    for &(a, b) in edges {
        if colors[a] == colors[b] {
            adj[a].push(b);
            adj[b].push(a);
        }
    }
    let mut seen = vec![false; len];
    let mut out = Vec::new();
    for start in 0..len {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut queue = std::collections::VecDeque::from([start]);
        let mut members = Vec::new();
        while let Some(x) = queue.pop_front() {
            members.push(x);
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

pub fn component_sizes(len: usize, edges: &[(usize, usize)], colors: &[Color]) -> Vec<usize> {
    components(len, edges, colors).iter().map(Vec::len).collect()
}

pub fn max_component(len: usize, edges: &[(usize, usize)], colors: &[Color]) -> usize {
    component_sizes(len, edges, colors).into_iter().max().unwrap_or(0)
}

/// `best[m]` is the least possible largest component over colorings with
/// colors below `m`, for `m = 1..=n` (`best[0]` unused). Point 0 is fixed to
/// color 0, which loses nothing by symmetry.
pub fn min_max_component(len: usize, edges: &[(usize, usize)], n: usize) -> Vec<usize> {
    let mut best = vec![usize::MAX; n + 1];
    if len == 0 {
        return vec![0; n + 1];
    }
    let mut parent = vec![0usize; len];
    let mut size = vec![0usize; len];
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for rest in all_colorings(len - 1, n) {
        let mut colors = Vec::with_capacity(len);
        colors.push(0);
        colors.extend(rest);
        for i in 0..len {
            parent[i] = i;
            size[i] = 1;
        }
        let mut worst = 1;
        for &(a, b) in edges {
            if colors[a] != colors[b] {
                continue;
            }
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[rb] = ra;
                size[ra] += size[rb];
                worst = worst.max(size[ra]);
            }
        }
        let used = *colors.iter().max().unwrap() as usize + 1;
        for slot in best.iter_mut().skip(used) {
            *slot = (*slot).min(worst);
        }
    }
    best
}

pub fn z(i: i64) -> Element {
    Element::Vector(vec![i])
}

pub fn z2(a: i64, b: i64) -> Element {
    Element::Vector(vec![a, b])
}

/// A random instance over `alphabet` colors: `count` patterns, each on a
/// random subset of `domain_pool` of size `1..=max_domain`.
pub fn random_lcl(
    rng: &mut impl Rng,
    domain_pool: &[Element],
    alphabet: usize,
    count: usize,
    max_domain: usize,
) -> LclInstance {
    let patterns = (0..count)
        .map(|_| {
            let size = rng.gen_range(1..=max_domain.min(domain_pool.len()));
            let dom: Vec<&Element> = domain_pool.choose_multiple(rng, size).collect();
            Pattern::new(dom.into_iter().map(|g| (g.clone(), rng.gen_range(0..alphabet) as Color)))
                .expect("distinct domain")
        })
        .collect();
    LclInstance::with_alphabet(patterns, alphabet).expect("colors below the alphabet")
}

/// The first `m` points of a window, in its canonical order.
pub fn prefix(w: &Window, m: usize) -> Window {
    Window::from_points(w.points().iter().take(m).cloned())
}

pub fn f2() -> Group {
    Group::Free(2)
}
