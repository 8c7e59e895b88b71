//! The separation LCL `Π_{S,n}` and the freeness LCL.

use super::{LclInstance, Pattern};
use crate::error::{Error, Result};
use crate::group::{Element, GenSet, Group};
use crate::window::{Color, Window};

/// Cap on the number of patterns [`pi_sn_generate`] may produce.
pub const DEFAULT_PATTERN_LIMIT: usize = 1_000_000;

/// Largest window [`pi_sn_generate`] will enumerate subsets of.
const MAX_PATTERN_WINDOW: usize = 30;

/// Checks membership in `Π_{S,n}`: colors below `n`, identity in the domain,
/// and `Sγ ⊆ dom(P)` whenever `P(γ) = P(1)`.
pub fn pi_sn_conditions(
    group: &Group,
    s: &GenSet,
    n: usize,
    p: &Pattern,
) -> std::result::Result<(), String> {
    if let Some((g, c)) = p.entries().iter().find(|(_, c)| *c as usize >= n) {
        return Err(format!("color {c} at {g} is not below {n}"));
    }
    let base = p
        .get(&group.identity())
        .ok_or_else(|| "identity is not in the domain".to_string())?;
    for (g, c) in p.entries() {
        if *c != base {
            continue;
        }
        for t in s.iter() {
            let tg = group.mul(t, g);
            if p.get(&tg).is_none() {
                return Err(format!("{g} has the identity's color but {tg} is missing"));
            }
        }
    }
    Ok(())
}

/// All patterns of `Π_{S,n}` whose domain lies in `window`, sorted.
///
/// `Π_{S,n}` itself is infinite; this is its fragment bounded by the window.
pub fn pi_sn_generate(
    group: &Group,
    s: &GenSet,
    n: usize,
    window: &Window,
    limit: usize,
) -> Result<LclInstance> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    let size = window.len();
    let id = window
        .index_of(&group.identity())
        .ok_or_else(|| Error::InvalidParameter("pattern window must contain the identity".into()))?;
    if size > MAX_PATTERN_WINDOW {
        return Err(Error::SizeLimit {
            what: "pattern window",
            limit: MAX_PATTERN_WINDOW,
        });
    }

    // closure[i]: bitmask of S·w_i, or None when it leaves the window
    let closure: Vec<Option<u64>> = window
        .points()
        .iter()
        .map(|w| {
            s.iter().try_fold(0u64, |acc, t| {
                window.index_of(&group.mul(t, w)).map(|j| acc | 1 << j)
            })
        })
        .collect();

    let mut out = Vec::new();
    let rest: Vec<usize> = (0..size).filter(|&i| i != id).collect();
    // same-colored part A: the identity plus any subset of the rest
    for sub in 0u64..(1u64 << rest.len()) {
        let mut a_mask = 1u64 << id;
        for (bit, &i) in rest.iter().enumerate() {
            if sub >> bit & 1 == 1 {
                a_mask |= 1 << i;
            }
        }
        let Some(forced) = (0..size)
            .filter(|i| a_mask >> i & 1 == 1)
            .try_fold(0u64, |acc, i| closure[i].map(|m| acc | m))
        else {
            continue;
        };
        let forced = forced | a_mask;
        let free: Vec<usize> = (0..size).filter(|i| forced >> i & 1 == 0).collect();
        for extra in 0u64..(1u64 << free.len()) {
            let mut dom = forced;
            for (bit, &i) in free.iter().enumerate() {
                if extra >> bit & 1 == 1 {
                    dom |= 1 << i;
                }
            }
            let others: Vec<usize> = (0..size)
                .filter(|&i| dom >> i & 1 == 1 && a_mask >> i & 1 == 0)
                .collect();
            for base in 0..n as Color {
                emit_colorings(window, a_mask, &others, base, n, limit, &mut out)?;
            }
        }
    }
    out.sort();
    LclInstance::with_alphabet(out, n)
}

/// Every coloring of `others` avoiding `base`, with `a_mask` colored `base`.
fn emit_colorings(
    window: &Window,
    a_mask: u64,
    others: &[usize],
    base: Color,
    n: usize,
    limit: usize,
    out: &mut Vec<Pattern>,
) -> Result<()> {
    let choices: Vec<Color> = (0..n as Color).filter(|&c| c != base).collect();
    if choices.is_empty() && !others.is_empty() {
        return Ok(());
    }
    let mut digits = vec![0usize; others.len()];
    loop {
        if out.len() >= limit {
            return Err(Error::SizeLimit {
                what: "pattern enumeration",
                limit,
            });
        }
        let entries = window
            .points()
            .iter()
            .enumerate()
            .filter(|(i, _)| a_mask >> i & 1 == 1)
            .map(|(_, g)| (g.clone(), base))
            .chain(
                others
                    .iter()
                    .zip(&digits)
                    .map(|(&i, &d)| (window.points()[i].clone(), choices[d])),
            );
        out.push(Pattern::new(entries)?);

        let mut pos = 0;
        loop {
            if pos == digits.len() {
                return Ok(());
            }
            digits[pos] += 1;
            if digits[pos] < choices.len() {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
    }
}

/// The six injections `{1, γ} → {0, 1, 2}`. A coloring of an action exists
/// only if `γ` has no fixed point.
pub fn freeness_lcl(group: &Group, g: &Element) -> Result<LclInstance> {
    group.check(g)?;
    if group.is_identity(g) {
        return Err(Error::InvalidParameter(
            "the freeness LCL needs a non-identity element".into(),
        ));
    }
    let id = group.identity();
    let mut patterns = Vec::with_capacity(6);
    for a in 0..3 {
        for b in 0..3 {
            if a != b {
                patterns.push(Pattern::new([(id.clone(), a), (g.clone(), b)])?);
            }
        }
    }
    LclInstance::with_alphabet(patterns, 3)
}
