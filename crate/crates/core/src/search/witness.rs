//! Schematic witnesses: colorings given by a formula rather than found by
//! search, always re-verified on a concrete window.

use crate::error::{Error, Result};
use crate::group::{GenSet, Group};
use crate::separation::{is_s_separated, SeparationReport};
use crate::window::{Color, Window, WindowConfiguration};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub group: Group,
    pub s: GenSet,
    pub config: WindowConfiguration,
    pub report: SeparationReport,
    /// Component bound the witness certifies.
    pub k: usize,
}

/// `c(x) = Σ_i (⌊x_i / L⌋ mod 2) · 2^i` on a window of Z^d.
pub fn brick_coloring(window: &Window, block: i64) -> Result<WindowConfiguration> {
    if block < 1 {
        return Err(Error::InvalidParameter("block length must be at least 1".into()));
    }
    let mut colors = Vec::with_capacity(window.len());
    for x in window.points() {
        let v = x
            .as_vector()
            .ok_or_else(|| Error::InvalidParameter("brick colorings live on Z^d".into()))?;
        let c = v
            .iter()
            .enumerate()
            .map(|(i, &xi)| (xi.div_euclid(block).rem_euclid(2) as Color) << i)
            .sum();
        colors.push(c);
    }
    WindowConfiguration::new(window.clone(), colors)
}

/// Brick coloring of Z^d with `2^d` colors, checked against the radius-`r`
/// ball with `k = L^d`. Valid when `L ≥ r`.
pub fn brick_witness(dim: usize, radius: usize, block: i64, window: &Window) -> Result<Witness> {
    if dim == 0 {
        return Err(Error::InvalidParameter("dimension must be at least 1".into()));
    }
    let group = Group::FreeAbelian(dim);
    let s = GenSet::ball(&group, radius)?;
    let config = brick_coloring(window, block)?;
    let k = usize::try_from(block)
        .ok()
        .and_then(|b| b.checked_pow(dim as u32))
        .ok_or_else(|| Error::InvalidParameter("block volume overflows".into()))?;
    let report = is_s_separated(&config.window.space(&group), &config.colors, &s, k)?;
    if !report.closed_within() {
        return Err(Error::NotSeparated(format!(
            "brick coloring with L = {block}, r = {radius} has a component of {} points, above {k}",
            report.max_component()
        )));
    }
    Ok(Witness {
        group,
        s,
        config,
        report,
        k,
    })
}

fn band_report(
    group: &Group,
    s: &GenSet,
    band: usize,
    ball_radius: usize,
) -> Result<(WindowConfiguration, SeparationReport)> {
    let window = Window::ball(group, &GenSet::standard(group), ball_radius)?;
    let config = WindowConfiguration::from_fn(window, |w| ((w.length() / band) % 2) as Color);
    // k is provisional here; only the measured sizes are used
    let report = is_s_separated(&config.window.space(group), &config.colors, s, usize::MAX)?;
    Ok((config, report))
}

/// `c(w) = ⌊|w| / L⌋ mod 2` on the ball of the given radius in `F_m`.
///
/// Needs `L ≥ r`. The certified `k` is the largest component away from the
/// boundary. The measurement is repeated on a ball `L` larger and the witness
/// fails unless it is unchanged there, so a bound that keeps growing with the
/// window is never certified.
pub fn tree_band_witness(rank: usize, radius: usize, band: usize, ball_radius: usize) -> Result<Witness> {
    if rank == 0 {
        return Err(Error::InvalidParameter("rank must be at least 1".into()));
    }
    if band < radius {
        return Err(Error::InvalidParameter(format!(
            "band width {band} is below the adjacency radius {radius}"
        )));
    }
    let group = Group::Free(rank);
    let s = GenSet::ball(&group, radius)?;
    let (config, report) = band_report(&group, &s, band, ball_radius)?;
    if report.interior_histogram.is_empty() {
        return Err(Error::NotSeparated(
            "every band component touches the ball boundary; enlarge the ball".into(),
        ));
    }
    let k = report.interior_max;
    let (_, wider) = band_report(&group, &s, band, ball_radius + band)?;
    if wider.interior_max != k {
        return Err(Error::NotSeparated(format!(
            "interior components grow from {k} to {} on a larger ball",
            wider.interior_max
        )));
    }
    let report = is_s_separated(&config.window.space(&group), &config.colors, &s, k)?;
    Ok(Witness {
        group,
        s,
        config,
        report,
        k,
    })
}
