//! Decidable arithmetic for the supported group families.
//!
//! A [`Group`] is an oracle: it multiplies, inverts and compares elements in
//! canonical form. Everything downstream (patterns, windows, searches) only
//! talks to groups through this interface.

mod element;
mod genset;
mod table;

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub use element::{Element, Letter};
pub use genset::{product_set, set_power, GenSet, DEFAULT_SIZE_LIMIT};
pub use table::CayleyTable;

use crate::error::{Error, Result};
use element::{is_reduced, letter_char, reduce_concat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Group {
    /// Z^d under addition.
    FreeAbelian(usize),
    /// Free group on `rank` generators named `a`, `b`, ….
    Free(usize),
    Finite(Arc<CayleyTable>),
    Product(Box<Group>, Box<Group>),
}

/// Serializable description of a group, as it appears in configs and certificates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case", deny_unknown_fields)]
pub enum GroupSpec {
    FreeAbelian { rank: usize },
    Free { rank: usize },
    Cyclic { order: usize },
    Finite { table: Vec<Vec<usize>> },
    Product { factors: Vec<GroupSpec> },
}

/// The three primitive operations, for callers that dispatch on a tag.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Mul,
    Inv,
    Id,
}

impl Group {
    pub fn finite(table: CayleyTable) -> Self {
        Group::Finite(Arc::new(table))
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        Ok(Group::finite(CayleyTable::cyclic(n)?))
    }

    pub fn product(a: Group, b: Group) -> Self {
        Group::Product(Box::new(a), Box::new(b))
    }

    pub fn from_spec(spec: &GroupSpec) -> Result<Self> {
        match spec {
            GroupSpec::FreeAbelian { rank } => Ok(Group::FreeAbelian(*rank)),
            GroupSpec::Free { rank } if *rank > 26 => Err(Error::InvalidParameter(
                "free groups of rank above 26 are not supported".into(),
            )),
            GroupSpec::Free { rank } => Ok(Group::Free(*rank)),
            GroupSpec::Cyclic { order } => Group::cyclic(*order),
            GroupSpec::Finite { table } => Ok(Group::finite(CayleyTable::new(table.clone())?)),
            GroupSpec::Product { factors } => {
                let mut it = factors.iter().rev();
                let last = it
                    .next()
                    .ok_or_else(|| Error::InvalidParameter("product of no factors".into()))?;
                if factors.len() < 2 {
                    return Err(Error::InvalidParameter(
                        "a product needs at least two factors".into(),
                    ));
                }
                let mut acc = Group::from_spec(last)?;
                for f in it {
                    acc = Group::product(Group::from_spec(f)?, acc);
                }
                Ok(acc)
            }
        }
    }

    pub fn to_spec(&self) -> GroupSpec {
        match self {
            Group::FreeAbelian(d) => GroupSpec::FreeAbelian { rank: *d },
            Group::Free(r) => GroupSpec::Free { rank: *r },
            Group::Finite(t) => GroupSpec::Finite { table: t.rows() },
            Group::Product(a, b) => {
                let mut factors = vec![a.to_spec()];
                match b.to_spec() {
                    GroupSpec::Product { factors: rest } => factors.extend(rest),
                    other => factors.push(other),
                }
                GroupSpec::Product { factors }
            }
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Group::FreeAbelian(d) => format!("Z^{d}"),
            Group::Free(r) => format!("F_{r}"),
            Group::Finite(t) => format!("finite({})", t.order()),
            Group::Product(a, b) => format!("{} x {}", a.describe(), b.describe()),
        }
    }

    pub fn is_finite(&self) -> bool {
        match self {
            Group::Finite(_) => true,
            Group::FreeAbelian(d) | Group::Free(d) => *d == 0,
            Group::Product(a, b) => a.is_finite() && b.is_finite(),
        }
    }

    pub fn identity(&self) -> Element {
        match self {
            Group::FreeAbelian(d) => Element::Vector(vec![0; *d]),
            Group::Free(_) => Element::Word(Vec::new()),
            Group::Finite(t) => Element::Index(t.identity()),
            Group::Product(a, b) => Element::pair(a.identity(), b.identity()),
        }
    }

    pub fn is_identity(&self, x: &Element) -> bool {
        *x == self.identity()
    }

    /// Whether `x` is a canonical-form element of this group.
    pub fn contains(&self, x: &Element) -> bool {
        match (self, x) {
            (Group::FreeAbelian(d), Element::Vector(v)) => v.len() == *d,
            (Group::Free(r), Element::Word(w)) => {
                is_reduced(w) && w.iter().all(|&l| l != 0 && l.unsigned_abs() as usize <= *r)
            }
            (Group::Finite(t), Element::Index(i)) => *i < t.order(),
            (Group::Product(a, b), Element::Pair(x, y)) => a.contains(x) && b.contains(y),
            _ => false,
        }
    }

    pub fn check(&self, x: &Element) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::InvalidElement(x.to_string()))
        }
    }

    /// Product `x · y`. Both arguments must belong to this group.
    pub fn mul(&self, x: &Element, y: &Element) -> Element {
        match (self, x, y) {
            (Group::FreeAbelian(_), Element::Vector(a), Element::Vector(b)) => {
                Element::Vector(a.iter().zip(b).map(|(p, q)| p + q).collect())
            }
            (Group::Free(_), Element::Word(a), Element::Word(b)) => {
                Element::Word(reduce_concat(a, b))
            }
            (Group::Finite(t), Element::Index(a), Element::Index(b)) => {
                Element::Index(t.mul(*a, *b))
            }
            (Group::Product(g, h), Element::Pair(a1, a2), Element::Pair(b1, b2)) => {
                Element::pair(g.mul(a1, b1), h.mul(a2, b2))
            }
            _ => panic!("mul: {x} or {y} is not an element of {}", self.describe()),
        }
    }

    pub fn inv(&self, x: &Element) -> Element {
        match (self, x) {
            (Group::FreeAbelian(_), Element::Vector(a)) => {
                Element::Vector(a.iter().map(|p| -p).collect())
            }
            (Group::Free(_), Element::Word(w)) => {
                Element::Word(w.iter().rev().map(|l| -l).collect())
            }
            (Group::Finite(t), Element::Index(a)) => Element::Index(t.inv(*a)),
            (Group::Product(g, h), Element::Pair(a, b)) => Element::pair(g.inv(a), h.inv(b)),
            _ => panic!("inv: {x} is not an element of {}", self.describe()),
        }
    }

    /// Checked arithmetic entry point: validates arguments before computing.
    pub fn arith(&self, op: ArithOp, args: &[Element]) -> Result<Element> {
        for a in args {
            self.check(a)?;
        }
        let arity = |n: usize| {
            if args.len() == n {
                Ok(())
            } else {
                Err(Error::InvalidParameter(format!(
                    "{op:?} takes {n} arguments, got {}",
                    args.len()
                )))
            }
        };
        match op {
            ArithOp::Mul => {
                arity(2)?;
                Ok(self.mul(&args[0], &args[1]))
            }
            ArithOp::Inv => {
                arity(1)?;
                Ok(self.inv(&args[0]))
            }
            ArithOp::Id => {
                arity(0)?;
                Ok(self.identity())
            }
        }
    }

    /// The standard generators: unit vectors, free letters, every
    /// non-identity element of a finite table, and the factor generators of
    /// a product embedded coordinate-wise.
    pub fn generators(&self) -> Vec<Element> {
        match self {
            Group::FreeAbelian(d) => (0..*d)
                .map(|i| {
                    let mut v = vec![0; *d];
                    v[i] = 1;
                    Element::Vector(v)
                })
                .collect(),
            Group::Free(r) => (1..=*r as Letter).map(|l| Element::Word(vec![l])).collect(),
            Group::Finite(t) => (0..t.order())
                .filter(|&i| i != t.identity())
                .map(Element::Index)
                .collect(),
            Group::Product(a, b) => {
                let ida = a.identity();
                let idb = b.identity();
                a.generators()
                    .into_iter()
                    .map(|g| Element::pair(g, idb.clone()))
                    .chain(b.generators().into_iter().map(|h| Element::pair(ida.clone(), h)))
                    .collect()
            }
        }
    }

    /// JSON form of an element: integer arrays for vectors, strings such as
    /// `"aB"` for words (uppercase is the inverse letter, `"1"` the identity),
    /// integers for table indices, two-element arrays for pairs.
    pub fn encode(&self, x: &Element) -> Value {
        match x {
            Element::Vector(v) => Value::from(v.clone()),
            Element::Word(w) if w.is_empty() => Value::from("1"),
            Element::Word(w) => Value::from(w.iter().map(|&l| letter_char(l)).collect::<String>()),
            Element::Index(i) => Value::from(*i),
            Element::Pair(a, b) => match self {
                Group::Product(g, h) => Value::Array(vec![g.encode(a), h.encode(b)]),
                _ => Value::Null,
            },
        }
    }

    pub fn decode(&self, v: &Value) -> Result<Element> {
        let bad = || Error::InvalidElement(v.to_string());
        let x = match self {
            Group::FreeAbelian(_) => {
                // Z accepts bare integers as well as one-element arrays
                if let Some(i) = v.as_i64() {
                    Element::Vector(vec![i])
                } else {
                    let arr = v.as_array().ok_or_else(bad)?;
                    Element::Vector(
                        arr.iter()
                            .map(|c| c.as_i64().ok_or_else(bad))
                            .collect::<Result<_>>()?,
                    )
                }
            }
            Group::Free(_) => {
                let s = v.as_str().ok_or_else(bad)?;
                let mut word = Vec::new();
                if s != "1" {
                    for ch in s.chars().filter(|c| !c.is_whitespace()) {
                        let l = match ch {
                            'a'..='z' => (ch as u8 - b'a' + 1) as Letter,
                            'A'..='Z' => -((ch as u8 - b'A' + 1) as Letter),
                            _ => return Err(bad()),
                        };
                        word = reduce_concat(&word, &[l]);
                    }
                }
                Element::Word(word)
            }
            Group::Finite(_) => Element::Index(v.as_u64().ok_or_else(bad)? as usize),
            Group::Product(g, h) => match v.as_array().map(Vec::as_slice) {
                Some([a, b]) => Element::pair(g.decode(a)?, h.decode(b)?),
                _ => return Err(bad()),
            },
        };
        self.check(&x)?;
        Ok(x)
    }
}
