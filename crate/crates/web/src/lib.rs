//! Browser bindings. Every export returns a JSON string; `www/index.html`
//! draws it on a canvas.

use gammalab::search::{brick_witness, exact_search, tree_band_witness, SearchOutcome, SearchProblem};
use gammalab::separation::component_graph;
use gammalab::{Error, GenSet, Group, Window, WindowConfiguration};
use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

fn grid_json(c: &WindowConfiguration, s: &GenSet, group: &Group) -> Value {
    let cg = component_graph(&c.window.space(group), &c.colors, s);
    let cells: Vec<Value> = c
        .window
        .points()
        .iter()
        .zip(&c.colors)
        .enumerate()
        .map(|(i, (p, col))| {
            let v = p.as_vector().expect("Z^2 point");
            json!([v[0], v[1], col, cg.component_of[i]])
        })
        .collect();
    let largest = cg.members.iter().map(Vec::len).max().unwrap_or(0);
    json!({ "cells": cells, "components": cg.len(), "largest": largest })
}

fn error_json(e: Error) -> Value {
    json!({ "error": e.to_string() })
}

/// Brick coloring of `[0, side)^2` with blocks of length `block`, checked
/// against the radius-`radius` ball.
pub fn bricks(side: u32, block: u32, radius: u32) -> Value {
    let hi = side as i64 - 1;
    let window = Window::grid(&[0, 0], &[hi, hi]);
    match brick_witness(2, radius as usize, block as i64, &window) {
        Ok(w) => {
            let mut v = grid_json(&w.config, &w.s, &w.group);
            v["k"] = json!(w.k);
            v["verdict"] = json!("separated");
            v
        }
        Err(Error::NotSeparated(reason)) => {
            let g = Group::FreeAbelian(2);
            let c = gammalab::search::brick_coloring(&window, block.max(1) as i64).expect("Z^2 window");
            let s = GenSet::ball(&g, radius as usize).expect("small ball");
            let mut v = grid_json(&c, &s, &g);
            v["verdict"] = json!(reason);
            v
        }
        Err(e) => error_json(e),
    }
}

/// Exact search for an `n`-coloring of `[0, side)^2` with components of at
/// most `k` points.
pub fn search(side: u32, radius: u32, n: u32, k: u32, seed: u64, budget: u64) -> Value {
    let g = Group::FreeAbelian(2);
    let s = match GenSet::ball(&g, radius as usize) {
        Ok(s) => s,
        Err(e) => return error_json(e),
    };
    let hi = side as i64 - 1;
    let mut p = SearchProblem::new(g.clone(), s.clone(), n as usize, k as usize, Window::grid(&[0, 0], &[hi, hi]));
    p.seed = seed;
    p.budget = budget;
    match exact_search(&p) {
        Ok(cert) => {
            let mut v = match (&cert.outcome, &cert.witness) {
                (SearchOutcome::Witness, Some(w)) => grid_json(w, &s, &g),
                _ => json!({ "cells": [] }),
            };
            v["outcome"] = json!(cert.outcome.as_str());
            v["nodes"] = json!(cert.stats.nodes);
            v
        }
        Err(e) => error_json(e),
    }
}

/// Band coloring of a ball in `F_2`. Each point carries its word, so the
/// page can lay the tree out.
pub fn bands(radius: u32, band: u32, ball: u32) -> Value {
    match tree_band_witness(2, radius as usize, band as usize, ball as usize) {
        Ok(w) => {
            let cg = component_graph(&w.config.window.space(&w.group), &w.config.colors, &w.s);
            let points: Vec<Value> = w
                .config
                .window
                .points()
                .iter()
                .zip(&w.config.colors)
                .enumerate()
                .map(|(i, (p, c))| json!([p.to_string(), c, cg.component_of[i]]))
                .collect();
            json!({
                "points": points,
                "k": w.k,
                "interior_max": w.report.interior_max,
                "boundary_max": w.report.boundary_max,
            })
        }
        Err(e) => error_json(e),
    }
}

#[wasm_bindgen]
pub fn brick_demo(side: u32, block: u32, radius: u32) -> String {
    bricks(side, block, radius).to_string()
}

#[wasm_bindgen]
pub fn search_demo(side: u32, radius: u32, n: u32, k: u32, seed: u32, budget: u32) -> String {
    search(side, radius, n, k, seed as u64, budget as u64).to_string()
}

#[wasm_bindgen]
pub fn band_demo(radius: u32, band: u32, ball: u32) -> String {
    bands(radius, band, ball).to_string()
}
