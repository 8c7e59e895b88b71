use std::cmp::Ordering;
use std::fmt;

/// A letter of a free-group word: `+g` is generator `g` (1-based), `-g` its inverse.
pub type Letter = i32;

/// Canonical-form group element.
///
/// Equality is structural, so every family must keep its elements in normal
/// form: vectors for free abelian groups, freely reduced words for free
/// groups, table indices for finite groups.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Element {
    Vector(Vec<i64>),
    Word(Vec<Letter>),
    Index(usize),
    Pair(Box<Element>, Box<Element>),
}

impl Element {
    pub fn pair(a: Element, b: Element) -> Self {
        Element::Pair(Box::new(a), Box::new(b))
    }

    /// Word length for free-group elements, ℓ¹ norm for vectors.
    pub fn length(&self) -> usize {
        match self {
            Element::Vector(v) => v.iter().map(|x| x.unsigned_abs() as usize).sum(),
            Element::Word(w) => w.len(),
            Element::Index(_) => 0,
            Element::Pair(a, b) => a.length() + b.length(),
        }
    }

    pub fn as_vector(&self) -> Option<&[i64]> {
        match self {
            Element::Vector(v) => Some(v),
            _ => None,
        }
    }

    fn rank(&self) -> u8 {
        match self {
            Element::Vector(_) => 0,
            Element::Word(_) => 1,
            Element::Index(_) => 2,
            Element::Pair(..) => 3,
        }
    }
}

/// Letters order as `a < A < b < B < …`.
fn letter_key(l: Letter) -> (u32, bool) {
    (l.unsigned_abs(), l < 0)
}

impl Ord for Element {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Element::Vector(a), Element::Vector(b)) => a.cmp(b),
            // shortlex, so that canonical order is breadth-first in word length
            (Element::Word(a), Element::Word(b)) => a.len().cmp(&b.len()).then_with(|| {
                a.iter()
                    .map(|&l| letter_key(l))
                    .cmp(b.iter().map(|&l| letter_key(l)))
            }),
            (Element::Index(a), Element::Index(b)) => a.cmp(b),
            (Element::Pair(a1, a2), Element::Pair(b1, b2)) => a1.cmp(b1).then_with(|| a2.cmp(b2)),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl PartialOrd for Element {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub(crate) fn letter_char(l: Letter) -> char {
    let base = (l.unsigned_abs() - 1) as u8;
    if l > 0 {
        (b'a' + base) as char
    } else {
        (b'A' + base) as char
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Vector(v) => {
                if v.len() == 1 {
                    return write!(f, "{}", v[0]);
                }
                write!(f, "(")?;
                for (i, x) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
            Element::Word(w) if w.is_empty() => write!(f, "1"),
            Element::Word(w) => w.iter().try_for_each(|&l| write!(f, "{}", letter_char(l))),
            Element::Index(i) => write!(f, "#{i}"),
            Element::Pair(a, b) => write!(f, "<{a};{b}>"),
        }
    }
}

/// Free reduction of `a · b` for words already in reduced form.
pub(crate) fn reduce_concat(a: &[Letter], b: &[Letter]) -> Vec<Letter> {
    let mut out = a.to_vec();
    for &l in b {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

pub(crate) fn is_reduced(w: &[Letter]) -> bool {
    w.windows(2).all(|p| p[0] != -p[1])
}
