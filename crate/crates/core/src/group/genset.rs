use std::collections::BTreeSet;

use serde_json::Value;

use super::{Element, Group};
use crate::error::{Error, Result};

/// Default element-count cap for [`set_power`] and related products.
pub const DEFAULT_SIZE_LIMIT: usize = 1_000_000;

/// A finite symmetric subset of a group containing the identity.
///
/// Elements are deduplicated and kept in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GenSet {
    elems: Vec<Element>,
}

impl GenSet {
    /// Smallest generating set containing `elems`: adds the identity and all
    /// inverses.
    pub fn new(group: &Group, elems: &[Element]) -> Result<Self> {
        let mut set = BTreeSet::new();
        set.insert(group.identity());
        for x in elems {
            group.check(x)?;
            set.insert(group.inv(x));
            set.insert(x.clone());
        }
        Ok(GenSet {
            elems: set.into_iter().collect(),
        })
    }

    /// Generating set of the subgroup spanned by `gens`. The subgroup acts on
    /// the ambient group by restriction, so this is the set to hand to any
    /// operation that should see only that subgroup.
    pub fn subgroup(group: &Group, gens: &[Element]) -> Result<Self> {
        Self::new(group, gens)
    }

    /// The standard generators symmetrized.
    pub fn standard(group: &Group) -> Self {
        Self::new(group, &group.generators()).expect("standard generators are valid")
    }

    /// Word-metric ball of the given radius around the identity.
    pub fn ball(group: &Group, radius: usize) -> Result<Self> {
        let elems = set_power(group, &Self::standard(group), radius, DEFAULT_SIZE_LIMIT)?;
        Ok(GenSet { elems })
    }

    pub fn elements(&self) -> &[Element] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn contains(&self, x: &Element) -> bool {
        self.elems.binary_search(x).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Element> {
        self.elems.iter()
    }

    pub fn encode(&self, group: &Group) -> Value {
        Value::Array(self.elems.iter().map(|x| group.encode(x)).collect())
    }

    pub fn describe(&self) -> String {
        let parts: Vec<String> = self.elems.iter().map(ToString::to_string).collect();
        format!("{{{}}}", parts.join(" "))
    }

    /// Re-checks the invariants; used when a set arrives from outside.
    pub fn validate(&self, group: &Group) -> Result<()> {
        if !self.contains(&group.identity()) {
            return Err(Error::InvalidParameter("generating set lacks the identity".into()));
        }
        for x in &self.elems {
            group.check(x)?;
            if !self.contains(&group.inv(x)) {
                return Err(Error::InvalidParameter(format!(
                    "generating set is not symmetric at {x}"
                )));
            }
        }
        Ok(())
    }
}

/// `A · B` as a sorted, deduplicated set.
pub fn product_set(
    group: &Group,
    a: &[Element],
    b: &[Element],
    limit: usize,
) -> Result<Vec<Element>> {
    let mut out = BTreeSet::new();
    for x in a {
        for y in b {
            out.insert(group.mul(x, y));
            if out.len() > limit {
                return Err(Error::SizeLimit {
                    what: "set product",
                    limit,
                });
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// `S^k`, with `S^0 = {1}`.
pub fn set_power(group: &Group, s: &GenSet, k: usize, limit: usize) -> Result<Vec<Element>> {
    let mut acc = vec![group.identity()];
    for _ in 0..k {
        let next = product_set(group, &acc, s.elements(), limit)?;
        if next.len() == acc.len() {
            // S contains 1, so equal sizes mean equal sets: the subgroup is reached
            break;
        }
        acc = next;
    }
    Ok(acc)
}
