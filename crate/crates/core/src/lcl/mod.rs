//! Patterns, LCL instances and Π-coloring checks.
//!
//! A pattern is a partial coloring of the group with finite domain. A
//! coloring `c` of a space matches `P` at `x` when `c(γx) = P(γ)` for every
//! `γ ∈ dom(P)`.
//!
//! Translation follows the shift `(γ·x)_δ = x_{δγ}`: `(γP)(δ) = P(δγ)` on
//! `dom(P)·γ⁻¹`. With this convention, if `P` matches at `x` and `Q` matches
//! at `γx` then `γP` and `Q` agree on their overlap.

mod pisn;
mod verify;

use serde_json::{json, Value};

pub use pisn::{freeness_lcl, pi_sn_conditions, pi_sn_generate, DEFAULT_PATTERN_LIMIT};
pub use verify::{
    first_match_map, matches_at, matches_at_point, verify_pi_coloring, Match, PatternAssignment, PatternIndex, PiVerdict,
    PointStatus,
};

use crate::error::{Error, Result};
use crate::group::{Element, Group};
use crate::window::Color;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pattern {
    entries: Vec<(Element, Color)>,
}

impl Pattern {
    pub fn new(entries: impl IntoIterator<Item = (Element, Color)>) -> Result<Self> {
        let mut entries: Vec<(Element, Color)> = entries.into_iter().collect();
        entries.sort();
        entries.dedup();
        if entries.is_empty() {
            return Err(Error::InvalidParameter("pattern with empty domain".into()));
        }
        if let Some(p) = entries.windows(2).find(|p| p[0].0 == p[1].0) {
            return Err(Error::InvalidParameter(format!(
                "pattern assigns two colors to {}",
                p[0].0
            )));
        }
        Ok(Pattern { entries })
    }

    pub fn entries(&self) -> &[(Element, Color)] {
        &self.entries
    }

    pub fn domain(&self) -> impl Iterator<Item = &Element> {
        self.entries.iter().map(|(g, _)| g)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, g: &Element) -> Option<Color> {
        self.entries
            .binary_search_by(|(h, _)| h.cmp(g))
            .ok()
            .map(|i| self.entries[i].1)
    }

    pub fn max_color(&self) -> Color {
        self.entries.iter().map(|&(_, c)| c).max().unwrap_or(0)
    }

    /// `γP`: domain `dom(P)·γ⁻¹`, `(γP)(δ) = P(δγ)`.
    pub fn translate(&self, group: &Group, g: &Element) -> Pattern {
        let ginv = group.inv(g);
        let mut entries: Vec<(Element, Color)> = self
            .entries
            .iter()
            .map(|(d, c)| (group.mul(d, &ginv), *c))
            .collect();
        entries.sort();
        Pattern { entries }
    }

    /// Whether `self ∪ other` is still a function.
    pub fn is_compatible(&self, other: &Pattern) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.entries.len() && j < other.entries.len() {
            let (a, ca) = &self.entries[i];
            let (b, cb) = &other.entries[j];
            match a.cmp(b) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    if ca != cb {
                        return false;
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        true
    }

    pub fn encode(&self, group: &Group) -> Value {
        Value::Array(
            self.entries
                .iter()
                .map(|(g, c)| json!([group.encode(g), c]))
                .collect(),
        )
    }

    pub fn decode(group: &Group, v: &Value) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("bad pattern {v}"));
        let arr = v.as_array().ok_or_else(bad)?;
        let entries = arr
            .iter()
            .map(|e| match e.as_array().map(Vec::as_slice) {
                Some([g, c]) => Ok((
                    group.decode(g)?,
                    c.as_u64().ok_or_else(bad)? as Color,
                )),
                _ => Err(bad()),
            })
            .collect::<Result<Vec<_>>>()?;
        Pattern::new(entries)
    }
}

/// An ordered finite family of patterns over the colors `0..alphabet`.
///
/// Order matters: the first-match map picks the earliest matching pattern.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LclInstance {
    patterns: Vec<Pattern>,
    alphabet: usize,
}

impl LclInstance {
    pub fn new(patterns: Vec<Pattern>) -> Self {
        let alphabet = patterns
            .iter()
            .map(|p| p.max_color() as usize + 1)
            .max()
            .unwrap_or(0);
        LclInstance { patterns, alphabet }
    }

    /// Same as [`LclInstance::new`] but with the alphabet padded to `alphabet`.
    pub fn with_alphabet(patterns: Vec<Pattern>, alphabet: usize) -> Result<Self> {
        let mut inst = Self::new(patterns);
        if alphabet < inst.alphabet {
            return Err(Error::InvalidParameter(format!(
                "alphabet {alphabet} is smaller than the {} colors in use",
                inst.alphabet
            )));
        }
        inst.alphabet = alphabet;
        Ok(inst)
    }

    pub fn patterns(&self) -> &[Pattern] {
        &self.patterns
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    pub fn max_domain(&self) -> usize {
        self.patterns.iter().map(Pattern::len).max().unwrap_or(0)
    }

    pub fn contains(&self, p: &Pattern) -> bool {
        self.patterns.contains(p)
    }

    pub fn encode(&self, group: &Group) -> Value {
        json!({
            "alphabet": self.alphabet,
            "patterns": self.patterns.iter().map(|p| p.encode(group)).collect::<Vec<_>>(),
        })
    }

    pub fn decode(group: &Group, v: &Value) -> Result<Self> {
        let patterns = v
            .get("patterns")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::InvalidParameter("instance without patterns".into()))?
            .iter()
            .map(|p| Pattern::decode(group, p))
            .collect::<Result<Vec<_>>>()?;
        match v.get("alphabet").and_then(Value::as_u64) {
            Some(a) => Self::with_alphabet(patterns, a as usize),
            None => Ok(Self::new(patterns)),
        }
    }
}
