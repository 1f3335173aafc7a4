//! Finite complete lattices over a dense index carrier.
//!
//! Elements are `0..n`. The order is held as up-set and down-set bit rows and
//! binary meets are tabulated at construction, so every query below is a
//! table scan. Construction rejects posets that are not lattices.

use std::collections::HashSet;
use std::fmt::Write as _;

use serde::Serialize;

use crate::bits::Bits;
use crate::error::{capacity, input, Error, Result};

pub type Element = usize;

/// Largest carrier a table-backed lattice accepts (indices are stored as `u16`).
pub const MAX_ELEMENTS: usize = u16::MAX as usize;

/// Largest carrier accepted by [`FiniteLattice::brute_force_well_above`].
pub const BRUTE_FORCE_LIMIT: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteLattice {
    names: Vec<String>,
    up: Vec<Bits>,
    down: Vec<Bits>,
    meet: Vec<u16>,
    bottom: Element,
    top: Element,
    /// `⋀{s : s ≰ y}` for each `y`; `x ≺ y` iff this is not `≤ x`.
    not_below_meet: Vec<u16>,
}

impl FiniteLattice {
    /// Builds a lattice from an order table, `leq[x][y]` meaning `x ≤ y`.
    pub fn new(names: Vec<String>, leq: Vec<Vec<bool>>) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::Invalid("a complete lattice has at least one element".into()));
        }
        if n > MAX_ELEMENTS {
            return Err(capacity(format!("{n} elements exceeds the {MAX_ELEMENTS}-element table limit")));
        }
        if leq.len() != n || leq.iter().any(|row| row.len() != n) {
            return Err(Error::Invalid(format!("order table must be {n}x{n}")));
        }
        let mut seen = HashSet::new();
        for name in &names {
            if !seen.insert(name.as_str()) {
                return Err(Error::Invalid(format!("duplicate element name {name:?}")));
            }
        }

        let mut up = vec![Bits::new(n); n];
        let mut down = vec![Bits::new(n); n];
        for x in 0..n {
            for y in 0..n {
                if leq[x][y] {
                    up[x].set(y);
                    down[y].set(x);
                }
            }
        }
        for x in 0..n {
            if !leq[x][x] {
                return Err(Error::Invalid(format!("not reflexive at {}", names[x])));
            }
            for y in up[x].iter() {
                if y != x && leq[y][x] {
                    return Err(Error::Invalid(format!("not antisymmetric: {} and {}", names[x], names[y])));
                }
                if !up[y].is_subset(&up[x]) {
                    let z = up[y].iter().find(|&z| !up[x].get(z)).unwrap();
                    return Err(Error::Invalid(format!(
                        "not transitive: {} <= {} <= {}",
                        names[x], names[y], names[z]
                    )));
                }
            }
        }

        let mut meet = vec![0u16; n * n];
        for a in 0..n {
            for b in a..n {
                let m = bound(&down, a, b).ok_or_else(|| {
                    Error::Invalid(format!("no greatest lower bound for {} and {}", names[a], names[b]))
                })?;
                meet[a * n + b] = m as u16;
                meet[b * n + a] = m as u16;
                bound(&up, a, b)
                    .ok_or_else(|| Error::Invalid(format!("no least upper bound for {} and {}", names[a], names[b])))?;
            }
        }
        Self::from_parts(names, up, down, meet)
    }

    /// Assembles a lattice from an already-verified order and meet table.
    pub(crate) fn from_parts(names: Vec<String>, up: Vec<Bits>, down: Vec<Bits>, meet: Vec<u16>) -> Result<Self> {
        let n = names.len();
        let bottom = (0..n).find(|&x| up[x].count() == n).ok_or_else(|| Error::Invalid("no bottom element".into()))?;
        let top = (0..n).find(|&x| down[x].count() == n).ok_or_else(|| Error::Invalid("no top element".into()))?;
        let mut lattice = FiniteLattice { names, up, down, meet, bottom, top, not_below_meet: Vec::new() };
        lattice.not_below_meet = (0..n)
            .map(|y| (0..n).filter(|&s| !lattice.leq(s, y)).fold(top, |acc, s| lattice.meet2(acc, s)) as u16)
            .collect();
        Ok(lattice)
    }

    /// Builds a lattice from a covering (Hasse) relation by reflexive-transitive closure.
    pub fn from_covers(names: Vec<String>, covers: &[(Element, Element)]) -> Result<Self> {
        let n = names.len();
        let mut leq = vec![vec![false; n]; n];
        for (x, row) in leq.iter_mut().enumerate() {
            row[x] = true;
        }
        for &(a, b) in covers {
            if a >= n || b >= n {
                return Err(input(format!("cover ({a}, {b}) out of range")));
            }
            leq[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    let via = leq[k].clone();
                    for (cell, &b) in leq[i].iter_mut().zip(&via) {
                        *cell |= b;
                    }
                }
            }
        }
        Self::new(names, leq)
    }

    /// The chain `0 < 1 < ... < len-1`.
    pub fn chain(len: usize) -> Result<Self> {
        if len == 0 {
            return Err(input("a chain needs at least one element"));
        }
        let names = (0..len).map(|i| i.to_string()).collect();
        let leq = (0..len).map(|i| (0..len).map(|j| i <= j).collect()).collect();
        Self::new(names, leq)
    }

    /// Subsets of a `k`-element set under inclusion, indexed by bitmask.
    pub fn powerset(k: usize) -> Result<Self> {
        if k > 15 {
            return Err(capacity("powerset lattices are limited to 15 atoms"));
        }
        let n = 1usize << k;
        let names = (0..n)
            .map(|m| {
                let members: Vec<String> = crate::bits::mask_members(m as u64).map(|i| i.to_string()).collect();
                format!("{{{}}}", members.join(","))
            })
            .collect();
        let leq = (0..n).map(|a| (0..n).map(|b| a & !b == 0).collect()).collect();
        Self::new(names, leq)
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: Element) -> &str {
        &self.names[x]
    }

    pub fn index_of(&self, name: &str) -> Option<Element> {
        self.names.iter().position(|n| n == name)
    }

    pub fn bottom(&self) -> Element {
        self.bottom
    }

    pub fn top(&self) -> Element {
        self.top
    }

    pub fn check(&self, x: Element) -> Result<()> {
        if x < self.size() {
            Ok(())
        } else {
            Err(input(format!("unknown element {x} (lattice has {} elements)", self.size())))
        }
    }

    /// `a ≤ b`. Panics on an index outside the carrier.
    #[inline]
    pub fn leq(&self, a: Element, b: Element) -> bool {
        self.up[a].get(b)
    }

    /// Elements above `x`, as a bit row.
    pub fn up_set(&self, x: Element) -> &Bits {
        &self.up[x]
    }

    /// Elements below `x`, as a bit row.
    pub fn down_set(&self, x: Element) -> &Bits {
        &self.down[x]
    }

    #[inline]
    pub fn meet2(&self, a: Element, b: Element) -> Element {
        self.meet[a * self.size() + b] as Element
    }

    pub fn join2(&self, a: Element, b: Element) -> Element {
        bound(&self.up, a, b).expect("validated lattice has all binary joins")
    }

    pub fn meet(&self, set: &[Element]) -> Result<Element> {
        set.iter().try_fold(self.top, |acc, &s| {
            self.check(s)?;
            Ok(self.meet2(acc, s))
        })
    }

    pub fn join(&self, set: &[Element]) -> Result<Element> {
        set.iter().try_fold(self.bottom, |acc, &s| {
            self.check(s)?;
            Ok(self.join2(acc, s))
        })
    }

    /// `x ≺ y` by the meet criterion: `⋀{s : s ≰ y} ≰ x`.
    #[inline]
    pub fn well_above(&self, y: Element, x: Element) -> bool {
        !self.leq(self.not_below_meet[y] as Element, x)
    }

    /// Checked form of [`Self::well_above`]; decides whether `y` is well above `x`.
    pub fn is_well_above(&self, y: Element, x: Element) -> Result<bool> {
        self.check(y)?;
        self.check(x)?;
        Ok(self.well_above(y, x))
    }

    /// Decides `x ≺ y` from the definition, quantifying over all `2^n` subsets.
    pub fn brute_force_well_above(&self, y: Element, x: Element) -> Result<bool> {
        self.check(y)?;
        self.check(x)?;
        let subset_meets = self.subset_meets()?;
        Ok(self.brute_force_from(&subset_meets, y, x))
    }

    /// All pairs at once: entry `[y][x]` is the brute-force verdict for `x ≺ y`.
    pub fn brute_force_well_above_table(&self) -> Result<Vec<Vec<bool>>> {
        let subset_meets = self.subset_meets()?;
        let n = self.size();
        Ok((0..n).map(|y| (0..n).map(|x| self.brute_force_from(&subset_meets, y, x)).collect()).collect())
    }

    fn subset_meets(&self) -> Result<Vec<u16>> {
        let n = self.size();
        if n > BRUTE_FORCE_LIMIT {
            return Err(capacity(format!(
                "brute-force well-above enumerates 2^{n} subsets; limit is {BRUTE_FORCE_LIMIT} elements"
            )));
        }
        let mut meets = vec![self.top as u16; 1 << n];
        for mask in 1usize..1 << n {
            let low = mask.trailing_zeros() as usize;
            meets[mask] = self.meet2(meets[mask & (mask - 1)] as Element, low) as u16;
        }
        Ok(meets)
    }

    fn brute_force_from(&self, subset_meets: &[u16], y: Element, x: Element) -> bool {
        // A counterexample is a subset S with ⋀S ≤ x and no member below y.
        let below_y: usize = self.down[y].iter().fold(0, |m, s| m | 1 << s);
        !subset_meets.iter().enumerate().any(|(mask, &m)| mask & below_y == 0 && self.leq(m as Element, x))
    }

    /// Elements well above `0`.
    pub fn positives(&self) -> Vec<Element> {
        (0..self.size()).filter(|&x| self.well_above(x, self.bottom)).collect()
    }

    pub fn is_completely_distributive(&self) -> bool {
        self.completely_distributive_witness().is_none()
    }

    pub fn is_value_distributive(&self) -> bool {
        self.distributivity_report().value_distributive
    }

    /// First `y` with `⋀{x : y ≺ x} ≠ y`.
    fn completely_distributive_witness(&self) -> Option<Element> {
        (0..self.size()).find(|&y| {
            let m = (0..self.size()).filter(|&x| self.well_above(x, y)).fold(self.top, |acc, x| self.meet2(acc, x));
            m != y
        })
    }

    pub fn distributivity_report(&self) -> DistributivityReport {
        let cd = self.completely_distributive_witness();
        let top_above_bottom = self.well_above(self.top, self.bottom);
        let positives = self.positives();
        let mut meet_witness = None;
        'outer: for (i, &a) in positives.iter().enumerate() {
            for &b in &positives[i..] {
                if !self.well_above(self.meet2(a, b), self.bottom) {
                    meet_witness = Some((a, b));
                    break 'outer;
                }
            }
        }
        DistributivityReport {
            completely_distributive: cd.is_none(),
            completely_distributive_witness: cd.map(|y| self.names[y].clone()),
            top_well_above_bottom: top_above_bottom,
            positives_meet_closed: meet_witness.is_none(),
            positives_meet_witness: meet_witness.map(|(a, b)| [self.names[a].clone(), self.names[b].clone()]),
            value_distributive: cd.is_none() && top_above_bottom && meet_witness.is_none(),
        }
    }

    /// Covering pairs `(x, y)`: `x < y` with nothing strictly between.
    pub fn covers(&self) -> Vec<(Element, Element)> {
        let mut out = Vec::new();
        for x in 0..self.size() {
            for y in self.up[x].iter() {
                if y != x && self.up[x].and(&self.down[y]).count() == 2 {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Graphviz digraph of the Hasse diagram, edges pointing upward.
    pub fn to_dot(&self, graph_name: &str) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "digraph {} {{", dot_id(graph_name));
        let _ = writeln!(s, "  rankdir=BT;");
        for (i, name) in self.names.iter().enumerate() {
            let _ = writeln!(s, "  n{i} [label={}];", dot_id(name));
        }
        for (a, b) in self.covers() {
            let _ = writeln!(s, "  n{a} -> n{b};");
        }
        s.push_str("}\n");
        s
    }

    pub fn leq_table(&self) -> Vec<Vec<bool>> {
        let n = self.size();
        (0..n).map(|a| (0..n).map(|b| self.leq(a, b)).collect()).collect()
    }
}

/// The greatest element of `rows[a] ∩ rows[b]` measured by `rows` itself,
/// i.e. a meet when `rows` are down-sets and a join when they are up-sets.
fn bound(rows: &[Bits], a: usize, b: usize) -> Option<usize> {
    let common = rows[a].and(&rows[b]);
    let candidate = common.iter().max_by_key(|&c| rows[c].count())?;
    (rows[candidate] == common).then_some(candidate)
}

fn dot_id(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistributivityReport {
    pub completely_distributive: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub completely_distributive_witness: Option<String>,
    pub top_well_above_bottom: bool,
    pub positives_meet_closed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub positives_meet_witness: Option<[String; 2]>,
    pub value_distributive: bool,
}
