//! Finite topological spaces on points `0..n`, with point subsets as bitmasks.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::bits::mask_members;
use crate::error::{capacity, input, Result};

/// A set of points, bit `i` standing for point `i`.
pub type PointSet = u32;

/// Widest point set a mask can hold.
pub const MAX_POINTS: usize = 32;

/// Largest `n` for exhaustive enumeration of topologies and preorders.
pub const ENUMERATION_LIMIT: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteTopology {
    n: usize,
    opens: Vec<PointSet>,
}

/// The first axiom a candidate family violates, with witness sets as point lists.
#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum TopologyViolation {
    #[error("{n} points exceeds the {MAX_POINTS}-point limit")]
    TooManyPoints { n: usize },
    #[error("set {set:?} mentions a point outside 0..{n}")]
    OutOfRange { n: usize, set: Vec<usize> },
    #[error("∅ missing")]
    EmptyMissing,
    #[error("S missing")]
    WholeMissing,
    #[error("union of {a:?} and {b:?} is not open")]
    UnionEscape { a: Vec<usize>, b: Vec<usize> },
    #[error("intersection of {a:?} and {b:?} is not open")]
    IntersectionEscape { a: Vec<usize>, b: Vec<usize> },
}

pub fn members(set: PointSet) -> Vec<usize> {
    mask_members(set as u64).collect()
}

pub fn full_set(n: usize) -> PointSet {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

impl FiniteTopology {
    /// Validates a candidate family of open sets on `n` points.
    pub fn validate(n: usize, family: &[PointSet]) -> Result<Self, TopologyViolation> {
        if n > MAX_POINTS {
            return Err(TopologyViolation::TooManyPoints { n });
        }
        let whole = full_set(n);
        if let Some(&bad) = family.iter().find(|&&s| s & !whole != 0) {
            // Report every index present in the mask, including the illegal ones.
            return Err(TopologyViolation::OutOfRange { n, set: members(bad) });
        }
        let mut opens = family.to_vec();
        opens.sort_unstable();
        opens.dedup();
        if opens.binary_search(&0).is_err() {
            return Err(TopologyViolation::EmptyMissing);
        }
        if opens.binary_search(&whole).is_err() {
            return Err(TopologyViolation::WholeMissing);
        }
        for (i, &a) in opens.iter().enumerate() {
            for &b in &opens[i + 1..] {
                if opens.binary_search(&(a | b)).is_err() {
                    return Err(TopologyViolation::UnionEscape { a: members(a), b: members(b) });
                }
                if opens.binary_search(&(a & b)).is_err() {
                    return Err(TopologyViolation::IntersectionEscape { a: members(a), b: members(b) });
                }
            }
        }
        Ok(FiniteTopology { n, opens })
    }

    pub fn discrete(n: usize) -> Result<Self> {
        if n > 16 {
            return Err(capacity("discrete topologies are built for at most 16 points"));
        }
        Ok(FiniteTopology { n, opens: (0..=full_set(n)).collect() })
    }

    pub fn indiscrete(n: usize) -> Result<Self> {
        Ok(Self::validate(n, &[0, full_set(n)])?)
    }

    /// Points `0, 1` with `{1}` open.
    pub fn sierpinski() -> Self {
        Self::validate(2, &[0b00, 0b10, 0b11]).expect("Sierpiński space is a topology")
    }

    pub fn points(&self) -> usize {
        self.n
    }

    /// Open sets in ascending mask order; index `i` here is "open `i`".
    pub fn opens(&self) -> &[PointSet] {
        &self.opens
    }

    pub fn is_open(&self, set: PointSet) -> bool {
        self.opens.binary_search(&set).is_ok()
    }

    pub fn open_index(&self, set: PointSet) -> Option<usize> {
        self.opens.binary_search(&set).ok()
    }

    pub fn whole(&self) -> PointSet {
        full_set(self.n)
    }

    pub fn check_point(&self, x: usize) -> Result<()> {
        if x < self.n {
            Ok(())
        } else {
            Err(input(format!("point {x} out of range (space has {} points)", self.n)))
        }
    }

    /// The smallest open set containing `x`.
    pub fn neighborhood(&self, x: usize) -> PointSet {
        self.opens.iter().filter(|&&u| u >> x & 1 == 1).fold(self.whole(), |acc, &u| acc & u)
    }

    pub fn is_discrete(&self) -> bool {
        (0..self.n).all(|x| self.neighborhood(x) == 1 << x)
    }

    pub fn specialization_preorder(&self) -> Relation {
        Relation { n: self.n, rows: (0..self.n).map(|x| self.neighborhood(x)).collect() }
    }

    /// Opens present in exactly one of the two topologies.
    pub fn symmetric_difference(&self, other: &FiniteTopology) -> Vec<PointSet> {
        let mut out: Vec<PointSet> = self
            .opens
            .iter()
            .filter(|u| !other.is_open(**u))
            .chain(other.opens.iter().filter(|u| !self.is_open(**u)))
            .copied()
            .collect();
        out.sort_unstable();
        out
    }
}

impl fmt::Display for FiniteTopology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sets: Vec<String> = self.opens.iter().map(|&u| format!("{:?}", members(u))).collect();
        write!(f, "{} points: {{{}}}", self.n, sets.join(", "))
    }
}

/// Every labeled topology on `n ≤ 4` points, sorted by open-set list.
pub fn enumerate_topologies(n: usize) -> Result<Vec<FiniteTopology>> {
    if n > ENUMERATION_LIMIT {
        return Err(capacity(format!("exhaustive topology enumeration is limited to n <= {ENUMERATION_LIMIT}")));
    }
    let whole = full_set(n);
    let middle: Vec<PointSet> = (1..whole).collect();
    let mut chosen = vec![0];
    let mut out = Vec::new();
    extend_family(&middle, 0, &mut chosen, n, &mut out);
    out.sort();
    Ok(out)
}

/// Decides each proper nonempty subset in ascending order. Intersections of
/// two chosen sets are numerically no larger than either, so they are
/// already decided when the larger one is considered and can prune early.
fn extend_family(
    middle: &[PointSet],
    next: usize,
    chosen: &mut Vec<PointSet>,
    n: usize,
    out: &mut Vec<FiniteTopology>,
) {
    if next == middle.len() {
        let mut family = chosen.clone();
        family.push(full_set(n));
        if let Ok(t) = FiniteTopology::validate(n, &family) {
            out.push(t);
        }
        return;
    }
    let m = middle[next];
    extend_family(middle, next + 1, chosen, n, out);
    let closed = chosen.iter().all(|&a| {
        let meet = a & m;
        meet == a || chosen.binary_search(&meet).is_ok()
    });
    if closed {
        chosen.push(m);
        extend_family(middle, next + 1, chosen, n, out);
        chosen.pop();
    }
}

/// A binary relation on `0..n`; row `x` holds the `y` with `x R y`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    n: usize,
    rows: Vec<PointSet>,
}

impl Relation {
    pub fn new(n: usize, rows: Vec<PointSet>) -> Result<Self> {
        if n > MAX_POINTS || rows.len() != n || rows.iter().any(|&r| r & !full_set(n) != 0) {
            return Err(input("relation rows must be n masks over 0..n"));
        }
        Ok(Relation { n, rows })
    }

    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut rows = vec![0; n];
        for &(x, y) in pairs {
            if x >= n || y >= n {
                return Err(input(format!("pair ({x}, {y}) out of range")));
            }
            rows[x] |= 1 << y;
        }
        Relation::new(n, rows)
    }

    pub fn points(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[PointSet] {
        &self.rows
    }

    pub fn holds(&self, x: usize, y: usize) -> bool {
        self.rows[x] >> y & 1 == 1
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.n).all(|x| self.holds(x, x))
    }

    pub fn is_transitive(&self) -> bool {
        (0..self.n).all(|x| members(self.rows[x]).into_iter().all(|y| self.rows[y] & !self.rows[x] == 0))
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..self.n).all(|x| (0..self.n).all(|y| x == y || !(self.holds(x, y) && self.holds(y, x))))
    }

    pub fn is_preorder(&self) -> bool {
        self.is_reflexive() && self.is_transitive()
    }

    /// Up-sets of a preorder as a topology.
    pub fn alexandrov_topology(&self) -> Result<FiniteTopology> {
        if !self.is_preorder() {
            return Err(input("Alexandrov topology needs a preorder"));
        }
        if self.n > 16 {
            return Err(capacity("Alexandrov topology is enumerated for at most 16 points"));
        }
        let opens: Vec<PointSet> =
            (0..=full_set(self.n)).filter(|&u| members(u).into_iter().all(|x| self.rows[x] & !u == 0)).collect();
        Ok(FiniteTopology::validate(self.n, &opens)?)
    }
}

/// Every preorder on `n ≤ 4` points, by brute force over all relations.
pub fn enumerate_preorders(n: usize) -> Result<Vec<Relation>> {
    if n > ENUMERATION_LIMIT {
        return Err(capacity(format!("preorder enumeration is limited to n <= {ENUMERATION_LIMIT}")));
    }
    let cells = n * n;
    let mut out = Vec::new();
    for bits in 0u32..1 << cells {
        let rows = (0..n).map(|x| (bits >> (x * n)) & full_set(n)).collect();
        let r = Relation { n, rows };
        if r.is_preorder() {
            out.push(r);
        }
    }
    Ok(out)
}
