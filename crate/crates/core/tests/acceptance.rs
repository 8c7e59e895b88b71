//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Criterion 3b cannot hold as stated for `k < r` and is expected to fail on
//! exactly those rows; any other failure makes the target exit nonzero.

mod common;

use std::collections::{BTreeSet, HashMap, HashSet};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use gammalab::gamma_graph::{is_gamma_map, lcl_to_gamma_graph, GammaGraph, MapCheck};
use gammalab::group::{set_power, DEFAULT_SIZE_LIMIT};
use gammalab::lcl::{
    first_match_map, freeness_lcl, pi_sn_conditions, pi_sn_generate, verify_pi_coloring,
    PatternIndex, PointStatus, DEFAULT_PATTERN_LIMIT,
};
use gammalab::reports::{run_config, RunConfig, RunOptions};
use gammalab::search::{
    brick_witness, exact_search, min_colors_table, tree_band_witness, SearchOutcome,
    SearchProblem, TableSpec, WindowPolicy,
};
use gammalab::separation::{is_s_separated, pi_to_separated_bound, separated_to_pi};
use gammalab::subshift::{enumerate_window_configs, ConfigIter};
use gammalab::window::FiniteAction;
use gammalab::{Color, Element, GenSet, Group, LclInstance, Pattern, Space, Window, WindowConfiguration};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{z, z2};

/// Interior component bound of the F₂ band coloring (r = 1, L = 2, ball 6),
/// frozen from the first verified run and recomputed by a word-level oracle.
const F2_BAND_BOUND: usize = 5;

/// Rows `(r, k)` of criterion 3 with `k < r`: a 2-coloring of a path with
/// monochromatic r-components of at most k points does not exist there.
const EXPECTED_3B_FAILURES: [(usize, usize); 3] = [(2, 1), (3, 1), (3, 2)];

struct Line {
    id: &'static str,
    pass: bool,
    expected_failure: bool,
    detail: String,
    elapsed: Duration,
}

#[derive(Default)]
struct Report {
    lines: Vec<Line>,
}

impl Report {
    fn record(&mut self, id: &'static str, started: Instant, outcome: Result<String, String>) {
        let elapsed = started.elapsed();
        let (pass, detail) = match outcome {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        let line = Line {
            id,
            pass,
            expected_failure: false,
            detail,
            elapsed,
        };
        println!("{}", render(&line));
        self.lines.push(line);
    }
}

fn render(l: &Line) -> String {
    let mark = if l.pass { "PASS" } else { "FAIL" };
    let note = if l.expected_failure { " [expected, see notes]" } else { "" };
    format!("{mark} {:<3} {}{note} ({:.2?})", l.id, l.detail, l.elapsed)
}

fn within(limit_secs: u64, started: Instant, detail: String) -> Result<String, String> {
    let t = started.elapsed();
    if t <= Duration::from_secs(limit_secs) {
        Ok(detail)
    } else {
        Err(format!("{detail}; took {t:.2?}, limit {limit_secs}s"))
    }
}

fn ball(g: &Group, r: usize) -> GenSet {
    GenSet::ball(g, r).expect("small ball")
}

fn space<'a>(g: &'a Group, w: &'a Window) -> gammalab::window::WindowSpace<'a> {
    w.space(g)
}

// 1. Valid colorings of Π_{S,n} fragments have components inside dom(P)·x.
fn forward_direction() -> Result<String, String> {
    let started = Instant::now();
    let g = Group::FreeAbelian(1);
    let window = Window::interval(-20, 20);
    let sp = space(&g, &window);
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let (mut fragments, mut colorings, mut points, mut violations) = (0, 0, 0usize, Vec::new());
    for r in 1..=2usize {
        let s = ball(&g, r);
        let edges = common::s_edges(&sp, &s);
        for n in 1..=3usize {
            let m = r as i64 + 1;
            let full = pi_sn_generate(&g, &s, n, &Window::interval(-m, m), DEFAULT_PATTERN_LIMIT)
                .map_err(|e| e.to_string())?;
            let mut family = vec![full.clone()];
            for _ in 0..4 {
                let mut ps: Vec<Pattern> = full.patterns().to_vec();
                ps.shuffle(&mut rng);
                ps.truncate(rng.gen_range(1..=ps.len().max(1)));
                family.push(LclInstance::with_alphabet(ps, n).map_err(|e| e.to_string())?);
            }
            for lcl in &family {
                fragments += 1;
                let index = PatternIndex::new(&sp, lcl);
                let mut found: Vec<Vec<Color>> =
                    ConfigIter::new(&index, n, 200_000).take(3).collect();
                for _ in 0..6 {
                    let mut fixed = vec![None; window.len()];
                    for _ in 0..4 {
                        let i = rng.gen_range(0..window.len());
                        fixed[i] = Some(rng.gen_range(0..n) as Color);
                    }
                    found.extend(ConfigIter::with_fixed(&index, n, fixed, 200_000).take(1));
                }
                found.sort();
                found.dedup();
                for colors in found {
                    colorings += 1;
                    let c = WindowConfiguration::new(window.clone(), colors.clone())
                        .map_err(|e| e.to_string())?;
                    let assignment = first_match_map(&sp, &colors, lcl).map_err(|e| e.to_string())?;
                    if let Err(e) = pi_to_separated_bound(&g, &c, &s, n, lcl, &assignment) {
                        violations.push(format!("r={r} n={n}: {e}"));
                    }
                    // independent recount of the containment
                    let comps = common::components(window.len(), &edges, &colors);
                    let mut of = vec![0; window.len()];
                    for (i, comp) in comps.iter().enumerate() {
                        for &y in comp {
                            of[y] = i;
                        }
                    }
                    for (x, pi) in assignment.iter() {
                        points += 1;
                        let p = &lcl.patterns()[pi];
                        let xv = c.window.points()[x].as_vector().unwrap()[0];
                        let comp = &comps[of[x]];
                        let inside = comp.iter().all(|&y| {
                            let yv = c.window.points()[y].as_vector().unwrap()[0];
                            p.get(&z(yv - xv)).is_some()
                        });
                        if !inside || comp.len() > lcl.max_domain() {
                            violations.push(format!("r={r} n={n}: component of {xv} escapes"));
                        }
                    }
                }
            }
        }
    }
    if !violations.is_empty() {
        return Err(format!("{} violations, first: {}", violations.len(), violations[0]));
    }
    if colorings == 0 {
        return Err("no valid coloring found for any fragment".into());
    }
    within(
        30,
        started,
        format!("{fragments} fragments, {colorings} colorings, {points} assigned points, 0 violations"),
    )
}

// 2. Separated witnesses give Π_{S,n} patterns inside S^{k+1}, and round-trip.
fn converse_direction() -> Result<String, String> {
    let started = Instant::now();
    let mut witnesses = 0;
    let mut patterns = 0;
    let mut violations: Vec<String> = Vec::new();
    let mut cases: Vec<(Group, GenSet, usize, Window, String)> = Vec::new();
    let zg = Group::FreeAbelian(1);
    for r in 1..=2 {
        for k in 1..=4 {
            cases.push((zg.clone(), ball(&zg, r), k, Window::interval(0, 23), format!("Z r={r} k={k}")));
        }
    }
    let z2g = Group::FreeAbelian(2);
    cases.push((z2g.clone(), ball(&z2g, 1), 1, Window::grid(&[0, 0], &[5, 5]), "Z^2 k=1".into()));

    for (g, s, k, window, label) in cases {
        let sk1: HashSet<Element> =
            set_power(&g, &s, k + 1, DEFAULT_SIZE_LIMIT).map_err(|e| e.to_string())?.into_iter().collect();
        for seed in 0..5 {
            let mut p = SearchProblem::new(g.clone(), s.clone(), 2, k, window.clone());
            p.seed = seed;
            let cert = exact_search(&p).map_err(|e| e.to_string())?;
            let Some(c) = cert.witness else { continue };
            witnesses += 1;
            let frag = match separated_to_pi(&g, &c, &s, k, 2) {
                Ok(f) => f,
                Err(e) => {
                    violations.push(format!("{label} seed {seed}: {e}"));
                    continue;
                }
            };
            patterns += frag.lcl.len();
            for p in frag.lcl.patterns() {
                if let Err(why) = pi_sn_conditions(&g, &s, 2, p) {
                    violations.push(format!("{label}: {why}"));
                }
                if let Some(d) = p.domain().find(|d| !sk1.contains(*d)) {
                    violations.push(format!("{label}: {d} outside S^(k+1)"));
                }
            }
            // near the window edge a pattern may fit without matching, so
            // the round trip is judged on in-scope points
            let index = PatternIndex::new(&window.space(&g), &frag.lcl);
            let missed: Vec<usize> = frag
                .assignment
                .iter()
                .filter(|&(x, _)| !matches!(index.status(x, &c.colors), PointStatus::Assigned(_)))
                .map(|(x, _)| x)
                .collect();
            if !missed.is_empty() || frag.in_scope == 0 {
                violations.push(format!("{label}: in-scope points {missed:?} not assigned"));
            }
        }
    }
    if !violations.is_empty() {
        return Err(format!("{} violations, first: {}", violations.len(), violations[0]));
    }
    within(60, started, format!("{witnesses} witnesses, {patterns} patterns, 0 violations"))
}

// 3. Window evidence for Z: exhaustion with one color, witnesses with two.
fn z_evidence(report: &mut Report) {
    let g = Group::FreeAbelian(1);
    let started = Instant::now();
    let mut out_3a = Ok(());
    let mut failing_3b = Vec::new();
    let mut witnesses = 0;
    for r in 1..=3usize {
        let s = ball(&g, r);
        for k in 1..=8usize {
            let window = Window::interval(0, 2 * k as i64 + 3);
            let one = exact_search(&SearchProblem::new(g.clone(), s.clone(), 1, k, window.clone()));
            match one.map(|c| c.outcome) {
                Ok(SearchOutcome::Exhausted) => {}
                other => {
                    if out_3a.is_ok() {
                        out_3a = Err(format!("r={r} k={k}: n=1 gave {other:?}"));
                    }
                }
            }
            let two = exact_search(&SearchProblem::new(g.clone(), s.clone(), 2, k, window.clone()));
            let verified = match two {
                Ok(cert) => cert.witness.is_some_and(|c| {
                    let sp = c.window.space(&g);
                    let oracle = common::max_component(c.len(), &common::s_edges(&sp, &s), &c.colors);
                    let lib = is_s_separated(&sp, &c.colors, &s, k).map(|r| r.closed_within());
                    oracle <= k && lib.unwrap_or(false)
                }),
                Err(_) => false,
            };
            if verified {
                witnesses += 1;
            } else {
                failing_3b.push((r, k));
            }
        }
    }
    let t_search = started;
    report.record(
        "3a",
        started,
        out_3a.and_then(|_| within(60, t_search, "n=1 exhausted on all 24 paths of length 2k+4".into())),
    );

    let started = Instant::now();
    let detail = format!("{witnesses}/24 rows have a verified n=2 witness");
    let outcome = if failing_3b.is_empty() {
        Ok(detail)
    } else {
        let rows: Vec<String> = failing_3b.iter().map(|(r, k)| format!("(r={r},k={k})")).collect();
        Err(format!("{detail}; none exists for {}", rows.join(" ")))
    };
    report.record("3b", started, outcome);
    if failing_3b == EXPECTED_3B_FAILURES {
        report.lines.last_mut().unwrap().expected_failure = true;
    }

    let started = Instant::now();
    let spec = TableSpec {
        s_list: (1..=3).map(|r| (format!("ball({r})"), ball(&g, r))).collect(),
        ks: (1..=8).collect(),
        window: WindowPolicy::Path { per_k: 2, base: 4 },
        max_colors: 4,
        budget: 50_000_000,
        seed: 0,
    };
    let outcome = match min_colors_table(&g, &spec) {
        Ok(ev) => match ev.estimate() {
            Some(1) => within(60, started, format!("evidence value 1 from {} rows", ev.rows.len())),
            other => Err(format!("evidence value {other:?}")),
        },
        Err(e) => Err(e.to_string()),
    };
    report.record("3c", started, outcome);
}

// 4. Z^2: checkerboard, bricks, and a 4×4 search.
fn z2_evidence() -> Result<String, String> {
    let g = Group::FreeAbelian(2);
    let s = ball(&g, 1);
    let board = WindowConfiguration::from_fn(Window::grid(&[-6, -6], &[5, 5]), |p| {
        let v = p.as_vector().unwrap();
        (v[0] + v[1]).rem_euclid(2) as Color
    });
    let sp = board.window.space(&g);
    let rep = is_s_separated(&sp, &board.colors, &s, 1).map_err(|e| e.to_string())?;
    let oracle = common::max_component(board.len(), &common::s_edges(&sp, &s), &board.colors);
    if !rep.closed_within() || oracle != 1 {
        return Err("checkerboard is not 1-separated".into());
    }

    let w = brick_witness(2, 1, 2, &Window::grid(&[-8, -8], &[7, 7])).map_err(|e| e.to_string())?;
    let bsp = w.config.window.space(&g);
    let boracle = common::max_component(w.config.len(), &common::s_edges(&bsp, &s), &w.config.colors);
    if w.k != 4 || !w.report.closed_within() || boracle > 4 || w.config.num_colors() != 4 {
        return Err(format!("bricks: k = {}, oracle max {boracle}", w.k));
    }

    let started = Instant::now();
    let cert = exact_search(&SearchProblem::new(g.clone(), s.clone(), 2, 1, Window::grid(&[0, 0], &[3, 3])))
        .map_err(|e| e.to_string())?;
    let t = started.elapsed();
    let Some(c) = cert.witness else {
        return Err(format!("4x4 search gave {}", cert.outcome.as_str()));
    };
    let csp = c.window.space(&g);
    if common::max_component(c.len(), &common::s_edges(&csp, &s), &c.colors) != 1 {
        return Err("4x4 witness is not 1-separated".into());
    }
    if t > Duration::from_secs(10) {
        return Err(format!("4x4 search took {t:.2?}"));
    }
    Ok(format!(
        "checkerboard k=1, bricks n=4 k=4, 4x4 witness after {} nodes",
        cert.stats.nodes
    ))
}

fn reduce_word(word: &str) -> String {
    let mut out: Vec<char> = Vec::new();
    for ch in word.chars().filter(|&c| c != '1') {
        let inverse = if ch.is_lowercase() { ch.to_ascii_uppercase() } else { ch.to_ascii_lowercase() };
        if out.last() == Some(&inverse) {
            out.pop();
        } else {
            out.push(ch);
        }
    }
    if out.is_empty() {
        "1".into()
    } else {
        out.into_iter().collect()
    }
}

// 5. Band coloring of the F₂ ball; components recomputed on word strings.
fn f2_bands() -> Result<String, String> {
    let w = tree_band_witness(2, 1, 2, 6).map_err(|e| e.to_string())?;
    if !w.report.closed_within() {
        return Err("band coloring is not separated".into());
    }
    let g = &w.group;
    let color: HashMap<String, Color> = w
        .config
        .window
        .points()
        .iter()
        .zip(&w.config.colors)
        .map(|(p, c)| (g.encode(p).as_str().unwrap().to_string(), *c))
        .collect();
    let letters = ["a", "A", "b", "B"];
    let mut seen: HashSet<String> = HashSet::new();
    let mut interior_max = 0;
    for start in color.keys() {
        if seen.contains(start) {
            continue;
        }
        seen.insert(start.clone());
        let mut stack = vec![start.clone()];
        let (mut size, mut boundary) = (0, false);
        while let Some(x) = stack.pop() {
            size += 1;
            for l in letters {
                let y = reduce_word(&format!("{l}{x}"));
                match color.get(&y) {
                    None => boundary = true,
                    Some(c) if *c == color[&x] && seen.insert(y.clone()) => stack.push(y),
                    Some(_) => {}
                }
            }
        }
        if !boundary {
            interior_max = interior_max.max(size);
        }
    }
    if interior_max != w.k || w.k != F2_BAND_BOUND {
        return Err(format!(
            "interior bound {} (oracle {interior_max}), frozen {F2_BAND_BOUND}",
            w.k
        ));
    }
    Ok(format!(
        "{} points, interior components at most {interior_max} (frozen {F2_BAND_BOUND})",
        color.len()
    ))
}

// 6. The first-match map of a valid configuration is a Γ-map.
fn first_match_is_gamma_map() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut edges = 0;
    let mut violations = Vec::new();
    for trial in 0..100 {
        let (g, window, pool) = if trial % 2 == 0 {
            (Group::FreeAbelian(1), Window::interval(-8, 8), (-2..=2).map(z).collect::<Vec<_>>())
        } else {
            let pool = (-1..=1).flat_map(|a| (-1..=1).map(move |b| z2(a, b))).collect();
            (Group::FreeAbelian(2), Window::grid(&[0, 0], &[4, 4]), pool)
        };
        let alphabet = rng.gen_range(2..=3);
        let colors: Vec<Color> = (0..window.len()).map(|_| rng.gen_range(0..alphabet) as Color).collect();
        let id = g.identity();
        let mut dom: Vec<Element> = pool.iter().filter(|p| **p != id).cloned().collect();
        dom.shuffle(&mut rng);
        dom.truncate(rng.gen_range(1..=3));
        dom.push(id);
        let sp = window.space(&g);
        let mut patterns: BTreeSet<Pattern> = BTreeSet::new();
        for x in 0..window.len() {
            let cells: Option<Vec<(Element, Color)>> = dom
                .iter()
                .map(|d| sp.act(d, x).map(|y| (d.clone(), colors[y])))
                .collect();
            if let Some(cells) = cells {
                patterns.insert(Pattern::new(cells).unwrap());
            }
        }
        for _ in 0..3 {
            patterns.insert(Pattern::new(dom.iter().map(|d| (d.clone(), rng.gen_range(0..alphabet) as Color))).unwrap());
        }
        let mut patterns: Vec<Pattern> = patterns.into_iter().collect();
        patterns.shuffle(&mut rng);
        let lcl = LclInstance::with_alphabet(patterns, alphabet).unwrap();

        let assignment = first_match_map(&sp, &colors, &lcl).map_err(|e| format!("trial {trial}: {e}"))?;
        let support: Vec<Element> = {
            let mut t: Vec<Element> = dom
                .iter()
                .flat_map(|a| dom.iter().map(|b| g.mul(a, &g.inv(b))))
                .collect();
            t.sort();
            t.dedup();
            t
        };
        let assigned: Vec<(usize, usize)> = assignment.iter().collect();
        let local: HashMap<usize, usize> = assigned.iter().enumerate().map(|(i, &(x, _))| (x, i)).collect();
        let mut triples = Vec::new();
        for gamma in &support {
            for (i, &(x, _)) in assigned.iter().enumerate() {
                if let Some(j) = sp.act(gamma, x).and_then(|y| local.get(&y)) {
                    triples.push((gamma.clone(), i, *j));
                }
            }
        }
        edges += triples.len();
        let source = GammaGraph::new(assigned.len(), support.iter().cloned(), triples.clone(), false).unwrap();
        let target = lcl_to_gamma_graph(&g, &lcl, &support);
        let f: Vec<usize> = assigned.iter().map(|&(_, p)| p).collect();
        match is_gamma_map(&f, &source, &target) {
            Ok(MapCheck::GammaMap) => {}
            Ok(MapCheck::Violation(t)) => violations.push(format!("trial {trial}: edge {t:?}")),
            Err(e) => violations.push(format!("trial {trial}: {e}")),
        }
        // (γP) ∪ Q is a function, with (γP)(δ) = P(δγ)
        for (gamma, i, j) in &triples {
            let (p, q) = (&lcl.patterns()[f[*i]], &lcl.patterns()[f[*j]]);
            let clash = q
                .entries()
                .iter()
                .any(|(d, c)| p.get(&g.mul(d, gamma)).is_some_and(|pc| pc != *c));
            if clash {
                violations.push(format!("trial {trial}: ({gamma}, {i}, {j}) clashes"));
            }
        }
    }
    if violations.is_empty() {
        Ok(format!("100 configurations, {edges} interior edges, 0 violations"))
    } else {
        Err(format!("{} violations, first: {}", violations.len(), violations[0]))
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn colorable<S: Space>(sp: &S, lcl: &LclInstance) -> bool {
    let index = PatternIndex::new(sp, lcl);
    ConfigIter::new(&index, lcl.alphabet(), 10_000_000).next().is_some()
}

// 7. The freeness instance detects fixed points.
fn freeness() -> Result<String, String> {
    let zg = Group::FreeAbelian(1);
    let f2 = common::f2();
    let gens = f2.generators();
    let ab = f2.mul(&gens[0], &gens[1]);
    let z5 = Group::cyclic(5).unwrap();
    let z2g = Group::FreeAbelian(2);
    for (g, gamma) in [
        (&zg, z(1)),
        (&zg, z(2)),
        (&f2, gens[0].clone()),
        (&f2, ab.clone()),
        (&z5, Element::Index(1)),
        (&z2g, z2(1, 0)),
    ] {
        let n = freeness_lcl(g, &gamma).map_err(|e| e.to_string())?.len();
        if n != 6 {
            return Err(format!("freeness_lcl({gamma}) has {n} patterns"));
        }
    }

    let mut with_fixed = 0;
    let mut without = 0;
    for gamma in [1i64, 2] {
        let lcl = freeness_lcl(&zg, &z(gamma)).unwrap();
        for perm in permutations(5) {
            let action = FiniteAction::by_generators(&zg, 5, vec![perm]).unwrap();
            let fixed = (0..5).any(|x| action.act(&z(gamma), x) == Some(x));
            if colorable(&action, &lcl) == fixed {
                return Err(format!("Z, γ = {gamma}: fixed point {fixed} but colorability disagrees"));
            }
            if fixed {
                with_fixed += 1;
            } else {
                without += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for gamma in [gens[0].clone(), ab] {
        let lcl = freeness_lcl(&f2, &gamma).unwrap();
        for _ in 0..60 {
            let mut a: Vec<usize> = (0..4).collect();
            let mut b: Vec<usize> = (0..4).collect();
            a.shuffle(&mut rng);
            b.shuffle(&mut rng);
            let action = FiniteAction::by_generators(&f2, 4, vec![a, b]).unwrap();
            let fixed = (0..4).any(|x| action.act(&gamma, x) == Some(x));
            if colorable(&action, &lcl) == fixed {
                return Err(format!("F2, γ = {gamma}: fixed point {fixed} but colorability disagrees"));
            }
            if fixed {
                with_fixed += 1;
            } else {
                without += 1;
            }
        }
    }

    let parity = WindowConfiguration::from_fn(Window::interval(-10, 10), |p| {
        p.as_vector().unwrap()[0].rem_euclid(2) as Color
    });
    let lcl = freeness_lcl(&zg, &z(1)).unwrap();
    if !verify_pi_coloring(&parity.window.space(&zg), &parity.colors, &lcl).is_valid() {
        return Err("parity coloring of Z is rejected".into());
    }
    let z6 = Group::cyclic(6).unwrap();
    let regular = FiniteAction::regular(&z6).unwrap();
    let colors: Vec<Color> = (0..6).map(|i| (i % 2) as Color).collect();
    if !verify_pi_coloring(&regular, &colors, &freeness_lcl(&z6, &Element::Index(1)).unwrap()).is_valid() {
        return Err("parity coloring of Z/6 is rejected".into());
    }
    Ok(format!(
        "6 patterns each; {with_fixed} actions with a fixed point uncolorable, {without} without colorable; parity valid"
    ))
}

// 8. Window enumeration agrees with enumerate-and-filter.
fn subshift_oracle() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let zg = Group::FreeAbelian(1);
    let z2g = Group::FreeAbelian(2);
    let z5 = Group::cyclic(5).unwrap();
    let f2 = common::f2();
    let alt = LclInstance::new(vec![
        Pattern::new([(z(-1), 1), (z(0), 0), (z(1), 1)]).unwrap(),
        Pattern::new([(z(-1), 0), (z(0), 1), (z(1), 0)]).unwrap(),
    ]);
    let mut cases: Vec<(Group, LclInstance, Window)> = vec![
        (zg.clone(), alt.clone(), Window::interval(0, 5)),
        (zg.clone(), alt, Window::interval(0, 7)),
        (zg.clone(), freeness_lcl(&zg, &z(1)).unwrap(), Window::interval(0, 7)),
        (zg.clone(), LclInstance::new(vec![]), Window::interval(0, 3)),
    ];
    let zpool: Vec<Element> = (-2..=2).map(z).collect();
    let z2pool: Vec<Element> = ball(&z2g, 1).elements().to_vec();
    let z5w = Window::whole(&z5).unwrap();
    let f2ball = Window::ball(&f2, &GenSet::standard(&f2), 1).unwrap();
    for i in 0..60 {
        let k = 2 + i % 2;
        let count = rng.gen_range(1..=6);
        let case = match i % 5 {
            0 => (zg.clone(), common::random_lcl(&mut rng, &zpool, k, count, 3), Window::interval(0, 7)),
            1 => (z2g.clone(), common::random_lcl(&mut rng, &z2pool, k, count, 3), Window::grid(&[0, 0], &[1, 3])),
            2 => (z5.clone(), common::random_lcl(&mut rng, z5w.points(), k, count, 3), z5w.clone()),
            3 => (f2.clone(), common::random_lcl(&mut rng, f2ball.points(), k, count, 3), f2ball.clone()),
            _ => {
                let w = common::prefix(&Window::ball(&f2, &GenSet::standard(&f2), 2).unwrap(), 8);
                (f2.clone(), common::random_lcl(&mut rng, f2ball.points(), k, count, 2), w)
            }
        };
        cases.push(case);
    }
    let mut total = 0;
    for (n, (g, lcl, w)) in cases.iter().enumerate() {
        let lib = enumerate_window_configs(g, lcl, w, usize::MAX).map_err(|e| e.to_string())?;
        let got: Vec<Vec<Color>> = lib.configs.into_iter().map(|c| c.colors).collect();
        let want = common::naive_configs(&w.space(g), lcl);
        if got != want {
            return Err(format!(
                "case {n} on {} ({} points): {} configurations, oracle {}",
                g.describe(),
                w.len(),
                got.len(),
                want.len()
            ));
        }
        total += want.len();
    }
    Ok(format!("{} instances, {total} configurations, identical lists", cases.len()))
}

// 9. Search outcomes agree with brute force.
fn exhaustion_soundness() -> Result<String, String> {
    let zg = Group::FreeAbelian(1);
    let z2g = Group::FreeAbelian(2);
    let z5 = Group::cyclic(5).unwrap();
    let f2 = common::f2();
    let f2ball2 = Window::ball(&f2, &GenSet::standard(&f2), 2).unwrap();
    let cases: Vec<(&str, Group, GenSet, Window)> = vec![
        ("Z ball(1)", zg.clone(), ball(&zg, 1), Window::interval(0, 15)),
        ("Z ball(2)", zg.clone(), ball(&zg, 2), Window::interval(0, 15)),
        ("Z {±2}", zg.clone(), GenSet::new(&zg, &[z(2)]).unwrap(), Window::interval(0, 15)),
        ("Z^2 ball(1)", z2g.clone(), ball(&z2g, 1), Window::grid(&[0, 0], &[3, 3])),
        ("Z^2 ball(2)", z2g.clone(), ball(&z2g, 2), Window::grid(&[0, 0], &[2, 3])),
        ("Z/5 {±1}", z5.clone(), GenSet::new(&z5, &[Element::Index(1)]).unwrap(), Window::whole(&z5).unwrap()),
        ("Z/5 ball(1)", z5.clone(), ball(&z5, 1), Window::whole(&z5).unwrap()),
        ("F2 ball(1) in B1", f2.clone(), ball(&f2, 1), Window::ball(&f2, &GenSet::standard(&f2), 1).unwrap()),
        ("F2 ball(1) in B2", f2.clone(), ball(&f2, 1), common::prefix(&f2ball2, 16)),
        ("F2 ball(2) in B2", f2.clone(), ball(&f2, 2), common::prefix(&f2ball2, 12)),
    ];
    let mut runs = 0;
    for (label, g, s, w) in &cases {
        let sp = w.space(g);
        let edges = common::s_edges(&sp, s);
        let best = common::min_max_component(w.len(), &edges, 3);
        for n in 1..=3 {
            for k in 1..=4 {
                for seed in [0, 9] {
                    let mut p = SearchProblem::new(g.clone(), s.clone(), n, k, w.clone());
                    p.seed = seed;
                    let cert = exact_search(&p).map_err(|e| e.to_string())?;
                    runs += 1;
                    let expect = best[n] <= k;
                    let ok = match (&cert.outcome, &cert.witness) {
                        (SearchOutcome::Witness, Some(c)) => {
                            expect
                                && c.num_colors() <= n
                                && common::max_component(c.len(), &edges, &c.colors) <= k
                        }
                        (SearchOutcome::Exhausted, None) => !expect,
                        _ => false,
                    };
                    if !ok {
                        return Err(format!(
                            "{label} n={n} k={k} seed={seed}: {} but brute force gives {}",
                            cert.outcome.as_str(),
                            best[n]
                        ));
                    }
                }
            }
        }
    }
    Ok(format!("{} windows, {runs} searches agree with brute force", cases.len()))
}

fn read_dir_sorted(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<(String, Vec<u8>)> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let p = e.unwrap().path();
            (p.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read(&p).unwrap())
        })
        .collect();
    files.sort();
    files
}

// 10. Two runs of the acceptance config are byte-identical.
fn determinism() -> Result<String, String> {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs/acceptance.toml");
    let cfg = RunConfig::load(&path).map_err(|e| e.to_string())?;
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut runs = Vec::new();
    for (i, jobs) in [None, None, Some(1)].into_iter().enumerate() {
        let out = tmp.path().join(format!("run{i}"));
        let opts = RunOptions {
            jobs,
            out: Some(out.clone()),
            ..RunOptions::default()
        };
        run_config(&cfg, &opts).map_err(|e| e.to_string())?;
        runs.push(read_dir_sorted(&out));
    }
    for (i, other) in runs.iter().enumerate().skip(1) {
        if *other != runs[0] {
            let names: Vec<&String> = runs[0]
                .iter()
                .zip(other)
                .filter(|(a, b)| a != b)
                .map(|(a, _)| &a.0)
                .collect();
            return Err(format!("run {i} differs from run 0 in {names:?}"));
        }
    }
    let certs = runs[0].iter().filter(|(n, _)| n.ends_with(".cert.json")).count();
    Ok(format!("{certs} certificates identical across 2 runs and a single-thread run"))
}

fn main() -> ExitCode {
    let mut report = Report::default();
    let t = Instant::now();
    report.record("1", t, forward_direction());
    let t = Instant::now();
    report.record("2", t, converse_direction());
    z_evidence(&mut report);
    let t = Instant::now();
    report.record("4", t, z2_evidence());
    let t = Instant::now();
    report.record("5", t, f2_bands());
    let t = Instant::now();
    report.record("6", t, first_match_is_gamma_map());
    let t = Instant::now();
    report.record("7", t, freeness());
    let t = Instant::now();
    report.record("8", t, subshift_oracle());
    let t = Instant::now();
    report.record("9", t, exhaustion_soundness());
    let t = Instant::now();
    report.record("10", t, determinism());

    let unexpected: Vec<&Line> = report
        .lines
        .iter()
        .filter(|l| !l.pass && !l.expected_failure)
        .collect();
    let passed = report.lines.iter().filter(|l| l.pass).count();
    println!(
        "acceptance: {passed}/{} passed, {} expected failure(s), {} unexpected",
        report.lines.len(),
        report.lines.iter().filter(|l| l.expected_failure).count(),
        unexpected.len()
    );
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
