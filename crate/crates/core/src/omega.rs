//! The value quantale Ω(τ) of a finite topology and the continuity space
//! whose open-ball topology is τ itself.
//!
//! With the opens of τ numbered `0..k`, a finite subfamily `G ⊆ τ` is a
//! `k`-bit mask. An element of Ω(τ) is a down-closed collection of such
//! families, stored as the antichain of its maximal members. The order is
//! reverse inclusion of the collections, so the collection of all families
//! (antichain `{τ}`) is `0` and the empty collection is `∞`. Meet is union of
//! collections, join is intersection, and `+` is join.
//!
//! The distance is `d(x, y) = {F ⊆ τ : ∀U ∈ F, x ∈ U ⟹ y ∈ U}`, which is
//! the principal collection below `Gmax(x, y) = {U : x ∈ U ⟹ y ∈ U}`. A ball
//! of principal radius `↓G` around `x` is the intersection of the members of
//! `G` containing `x`, which is how every open set of τ is recovered.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::bits::{mask_members, Bits};
use crate::continuity::ContinuitySpace;
use crate::error::{capacity, input, Error, Result};
use crate::lattice::FiniteLattice;
use crate::quantale::{FiniteQuantale, Quantale};
use crate::topology::{members, FiniteTopology};

/// Widest family mask.
pub const MAX_OPENS: usize = 64;

/// Largest `|τ|` for which Ω(τ) is materialized as a finite table.
pub const ENUMERATION_LIMIT: usize = 5;

/// Up to this many opens the basis is every principal element `↓G`.
pub const FULL_PRINCIPAL_BASIS_LIMIT: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OmegaElement {
    width: usize,
    antichain: Vec<u64>,
}

fn family_mask(width: usize) -> u64 {
    if width >= 64 {
        u64::MAX
    } else {
        (1u64 << width) - 1
    }
}

/// Keep only maximal members, sorted and deduplicated.
fn prune(mut families: Vec<u64>) -> Vec<u64> {
    families.sort_unstable();
    families.dedup();
    let keep: Vec<bool> = families.iter().map(|&g| !families.iter().any(|&h| h != g && g & !h == 0)).collect();
    families.into_iter().zip(keep).filter_map(|(g, k)| k.then_some(g)).collect()
}

impl OmegaElement {
    pub fn new(width: usize, families: Vec<u64>) -> Result<Self> {
        if width > MAX_OPENS {
            return Err(capacity(format!("Ω(τ) supports at most {MAX_OPENS} opens")));
        }
        if let Some(bad) = families.iter().find(|&&g| g & !family_mask(width) != 0) {
            return Err(input(format!("family {:?} mentions an open outside 0..{width}", members_u64(*bad))));
        }
        Ok(OmegaElement { width, antichain: prune(families) })
    }

    /// `0`: every family.
    pub fn zero(width: usize) -> Self {
        OmegaElement { width, antichain: vec![family_mask(width)] }
    }

    /// `∞`: no family.
    pub fn top(width: usize) -> Self {
        OmegaElement { width, antichain: Vec::new() }
    }

    /// `↓G`.
    pub fn principal(width: usize, family: u64) -> Self {
        OmegaElement { width, antichain: vec![family & family_mask(width)] }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn antichain(&self) -> &[u64] {
        &self.antichain
    }

    pub fn is_principal(&self) -> bool {
        self.antichain.len() == 1
    }

    pub fn is_zero(&self) -> bool {
        self.antichain == [family_mask(self.width)]
    }

    pub fn is_top(&self) -> bool {
        self.antichain.is_empty()
    }

    /// Whether the down-closed collection contains the family `g`.
    pub fn contains_family(&self, g: u64) -> bool {
        self.antichain.iter().any(|&h| g & !h == 0)
    }

    fn le_unchecked(&self, other: &Self) -> bool {
        other.antichain.iter().all(|&h| self.contains_family(h))
    }

    fn meet_unchecked(&self, other: &Self) -> Self {
        let mut all = self.antichain.clone();
        all.extend_from_slice(&other.antichain);
        OmegaElement { width: self.width, antichain: prune(all) }
    }

    fn join_unchecked(&self, other: &Self) -> Self {
        let all = self.antichain.iter().flat_map(|&g| other.antichain.iter().map(move |&h| g & h)).collect();
        OmegaElement { width: self.width, antichain: prune(all) }
    }

    /// `self ≺ eps`: some member of `self` contains every member of `eps`.
    fn well_below_unchecked(&self, eps: &Self) -> bool {
        let needed = eps.antichain.iter().fold(0, |acc, &h| acc | h);
        self.antichain.iter().any(|&g| needed & !g == 0)
    }

    pub fn to_doc(&self) -> OmegaDoc {
        OmegaDoc { antichain: self.antichain.iter().map(|&g| members_u64(g)).collect() }
    }

    pub fn from_doc(width: usize, doc: &OmegaDoc) -> Result<Self> {
        let mut families = Vec::with_capacity(doc.antichain.len());
        for fam in &doc.antichain {
            let mut g = 0u64;
            for &i in fam {
                if i >= width {
                    return Err(input(format!("open index {i} out of range (τ has {width} opens)")));
                }
                g |= 1 << i;
            }
            families.push(g);
        }
        Self::new(width, families)
    }

    /// Human rendering: `0`, `∞`, or meets of principal elements such as
    /// `↓{∅,S}` with each open spelled out by its points.
    pub fn describe(&self, topology: &FiniteTopology, point_names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        if self.is_top() {
            return "∞".into();
        }
        let whole = topology.whole();
        let open = |i: usize| {
            let u = topology.opens()[i];
            if u == 0 {
                "∅".to_string()
            } else if u == whole {
                "S".to_string()
            } else {
                let pts: Vec<&str> = members(u).into_iter().map(|p| point_names[p].as_str()).collect();
                format!("{{{}}}", pts.join(","))
            }
        };
        let parts: Vec<String> = self
            .antichain
            .iter()
            .map(|&g| {
                let fam: Vec<String> = mask_members(g).map(open).collect();
                format!("↓{{{}}}", fam.join(","))
            })
            .collect();
        parts.join(" ∧ ")
    }
}

fn members_u64(g: u64) -> Vec<usize> {
    mask_members(g).collect()
}

fn same_width(a: &OmegaElement, b: &OmegaElement) -> Result<()> {
    if a.width == b.width {
        Ok(())
    } else {
        Err(Error::Mismatch { left: a.width, right: b.width })
    }
}

/// JSON form: maximal families as lists of open indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OmegaDoc {
    pub antichain: Vec<Vec<usize>>,
}

pub fn omega_le(a: &OmegaElement, b: &OmegaElement) -> Result<bool> {
    same_width(a, b)?;
    Ok(a.le_unchecked(b))
}

pub fn omega_meet(a: &OmegaElement, b: &OmegaElement) -> Result<OmegaElement> {
    same_width(a, b)?;
    Ok(a.meet_unchecked(b))
}

pub fn omega_join(a: &OmegaElement, b: &OmegaElement) -> Result<OmegaElement> {
    same_width(a, b)?;
    Ok(a.join_unchecked(b))
}

pub fn omega_plus(a: &OmegaElement, b: &OmegaElement) -> Result<OmegaElement> {
    omega_join(a, b)
}

/// Decides `d ≺ eps`.
pub fn omega_well_above(eps: &OmegaElement, d: &OmegaElement) -> Result<bool> {
    same_width(eps, d)?;
    Ok(d.well_below_unchecked(eps))
}

/// Ω(τ) for a topology with `width` opens.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OmegaQuantale {
    width: usize,
}

impl OmegaQuantale {
    pub fn new(width: usize) -> Result<Self> {
        if width > MAX_OPENS {
            return Err(capacity(format!("Ω(τ) supports at most {MAX_OPENS} opens")));
        }
        Ok(OmegaQuantale { width })
    }

    pub fn width(&self) -> usize {
        self.width
    }
}

impl Quantale for OmegaQuantale {
    type Elem = OmegaElement;

    fn zero(&self) -> OmegaElement {
        OmegaElement::zero(self.width)
    }

    fn top(&self) -> OmegaElement {
        OmegaElement::top(self.width)
    }

    fn le(&self, a: &OmegaElement, b: &OmegaElement) -> bool {
        debug_assert_eq!((a.width, b.width), (self.width, self.width));
        a.le_unchecked(b)
    }

    fn plus(&self, a: &OmegaElement, b: &OmegaElement) -> OmegaElement {
        debug_assert_eq!((a.width, b.width), (self.width, self.width));
        a.join_unchecked(b)
    }

    fn well_above(&self, eps: &OmegaElement, d: &OmegaElement) -> bool {
        debug_assert_eq!((eps.width, d.width), (self.width, self.width));
        d.well_below_unchecked(eps)
    }

    fn element_json(&self, e: &OmegaElement) -> serde_json::Value {
        serde_json::to_value(e.to_doc()).expect("antichain doc serializes")
    }
}

/// `Gmax(x, y)`: the opens `U` with `x ∈ U ⟹ y ∈ U`, as a family mask.
pub fn flagg_family(topology: &FiniteTopology, x: usize, y: usize) -> u64 {
    topology
        .opens()
        .iter()
        .enumerate()
        .filter(|(_, &u)| u >> x & 1 == 0 || u >> y & 1 == 1)
        .fold(0, |acc, (i, _)| acc | 1 << i)
}

pub fn flagg_distance(topology: &FiniteTopology, x: usize, y: usize) -> Result<OmegaElement> {
    topology.check_point(x)?;
    topology.check_point(y)?;
    let width = topology.opens().len();
    if width > MAX_OPENS {
        return Err(capacity(format!("Ω(τ) supports at most {MAX_OPENS} opens; τ has {width}")));
    }
    Ok(OmegaElement::principal(width, flagg_family(topology, x, y)))
}

/// The Ω(τ)-continuity space on the points of τ.
pub fn flagg_space(topology: &FiniteTopology) -> Result<ContinuitySpace<OmegaQuantale>> {
    let n = topology.points();
    let width = topology.opens().len();
    let dist = (0..n)
        .map(|x| (0..n).map(|y| flagg_distance(topology, x, y)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    omega_space(width, dist)
}

/// An Ω(τ)-continuity space with principal basis radii.
///
/// Up to [`FULL_PRINCIPAL_BASIS_LIMIT`] opens the basis is every principal
/// element `↓G`. Beyond that, and only when every distance is principal, it
/// is `↓∅`, `↓τ` and each `↓{U}`: then `B_↓G(x)` is the intersection of the
/// members of `G` containing `x`, which equals `B_↓{V}(x)` for `V` that
/// intersection (or `B_↓∅(x)` when no member contains `x`).
pub fn omega_space(width: usize, dist: Vec<Vec<OmegaElement>>) -> Result<ContinuitySpace<OmegaQuantale>> {
    let quantale = OmegaQuantale::new(width)?;
    if let Some(e) = dist.iter().flatten().find(|e| e.width != width) {
        return Err(Error::Mismatch { left: width, right: e.width });
    }
    let basis = if width <= FULL_PRINCIPAL_BASIS_LIMIT {
        (0..1u64 << width).map(|g| OmegaElement::principal(width, g)).collect()
    } else if dist.iter().flatten().all(OmegaElement::is_principal) {
        std::iter::once(0)
            .chain((0..width).map(|i| 1u64 << i))
            .chain(std::iter::once(family_mask(width)))
            .map(|g| OmegaElement::principal(width, g))
            .collect()
    } else {
        return Err(capacity(format!(
            "non-principal distances need all 2^{width} principal radii; limit is {FULL_PRINCIPAL_BASIS_LIMIT} opens"
        )));
    };
    ContinuitySpace::new(quantale, dist, basis)
}

/// Ω(τ) materialized as finite tables, with the element behind each index.
#[derive(Clone, Debug)]
pub struct OmegaEnumeration {
    pub quantale: FiniteQuantale,
    pub elements: Vec<OmegaElement>,
    index: HashMap<OmegaElement, usize>,
}

impl OmegaEnumeration {
    pub fn index_of(&self, e: &OmegaElement) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }
}

/// Down-closed collections of subfamilies of a `width`-element set, as masks
/// over the `2^width` families. Built by splitting on the last open: a
/// collection is a pair `(D0, D1)` of collections over one fewer open with
/// `D1 ⊆ D0`, `D1` holding the families that contain the last open.
fn down_sets(width: usize) -> Vec<u64> {
    if width == 0 {
        return vec![0b0, 0b1];
    }
    let smaller = down_sets(width - 1);
    let shift = 1u32 << (width - 1);
    let mut out = Vec::new();
    for &d0 in &smaller {
        for &d1 in &smaller {
            if d1 & !d0 == 0 {
                out.push(d0 | d1 << shift);
            }
        }
    }
    out
}

/// Materializes Ω(τ) for `|τ| ≤ 5` as a [`FiniteQuantale`] for axiom checking.
///
/// Sizes follow the Dedekind numbers: 3, 6, 20, 168, 7581 for one to five opens.
pub fn enumerate_omega(topology: &FiniteTopology) -> Result<OmegaEnumeration> {
    enumerate_omega_width(topology.opens().len())
}

pub fn enumerate_omega_width(width: usize) -> Result<OmegaEnumeration> {
    if width > ENUMERATION_LIMIT {
        return Err(capacity(format!("Ω(τ) is enumerated for |τ| <= {ENUMERATION_LIMIT}; τ has {width} opens")));
    }
    let mut sets = down_sets(width);
    // Larger collections sit lower in the order; index 0 is `0`, the last is `∞`.
    sets.sort_by_key(|d| (std::cmp::Reverse(d.count_ones()), *d));
    let n = sets.len();
    let position: HashMap<u64, u16> = sets.iter().enumerate().map(|(i, &d)| (d, i as u16)).collect();

    let elements: Vec<OmegaElement> = sets
        .iter()
        .map(|&d| {
            let families = (0..1u64 << width).filter(|f| d >> f & 1 == 1);
            let maximal =
                families.filter(|&f| (0..width).all(|i| f >> i & 1 == 1 || d >> (f | 1 << i) & 1 == 0)).collect();
            OmegaElement { width, antichain: maximal }
        })
        .collect();

    let mut up = vec![Bits::new(n); n];
    let mut down = vec![Bits::new(n); n];
    let mut meet = vec![0u16; n * n];
    let mut join = vec![0u16; n * n];
    for (a, &da) in sets.iter().enumerate() {
        for (b, &db) in sets.iter().enumerate() {
            if db & !da == 0 {
                up[a].set(b);
                down[b].set(a);
            }
            meet[a * n + b] = position[&(da | db)];
            join[a * n + b] = position[&(da & db)];
        }
    }
    let names = elements.iter().map(antichain_name).collect();
    let lattice = FiniteLattice::from_parts(names, up, down, meet)?;
    let index = elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
    Ok(OmegaEnumeration { quantale: FiniteQuantale::from_flat(lattice, join), elements, index })
}

/// Element name by open indices, e.g. `{{0,2},{1}}`.
fn antichain_name(e: &OmegaElement) -> String {
    let mut s = String::from("{");
    for (i, &g) in e.antichain.iter().enumerate() {
        if i > 0 {
            s.push(',');
        }
        let idx: Vec<String> = mask_members(g).map(|m| m.to_string()).collect();
        let _ = write!(s, "{{{}}}", idx.join(","));
    }
    s.push('}');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::continuity::{is_continuous_epsilon_delta, PointMap};

    fn sierpinski_names() -> Vec<String> {
        vec!["0".into(), "1".into()]
    }

    #[test]
    fn order_worked_values() {
        let w = 3;
        let zero = OmegaElement::zero(w);
        let top = OmegaElement::top(w);
        let u = OmegaElement::principal(w, 0b001);
        let uv = OmegaElement::principal(w, 0b011);
        for x in [&zero, &top, &u, &uv] {
            assert!(omega_le(&zero, x).unwrap());
            assert!(omega_le(x, &top).unwrap());
        }
        assert!(!omega_le(&u, &uv).unwrap());
        assert!(omega_le(&uv, &u).unwrap());
    }

    #[test]
    fn lattice_operations() {
        let w = 3;
        let zero = OmegaElement::zero(w);
        let g1 = OmegaElement::principal(w, 0b011);
        let g2 = OmegaElement::principal(w, 0b110);
        assert_eq!(omega_meet(&g1, &zero).unwrap(), zero);
        assert_eq!(omega_join(&g1, &g2).unwrap(), OmegaElement::principal(w, 0b010));
        assert_eq!(omega_meet(&g1, &g2).unwrap().antichain(), &[0b011, 0b110]);
        assert_eq!(omega_plus(&g1, &zero).unwrap(), g1);
        assert_eq!(omega_plus(&g1, &g2).unwrap(), OmegaElement::principal(w, 0b010));
        assert_eq!(omega_plus(&g1, &OmegaElement::top(w)).unwrap(), OmegaElement::top(w));
    }

    #[test]
    fn mismatched_widths_are_rejected() {
        let a = OmegaElement::zero(2);
        let b = OmegaElement::zero(3);
        assert!(matches!(omega_le(&a, &b), Err(Error::Mismatch { left: 2, right: 3 })));
        assert!(omega_meet(&a, &b).is_err());
        assert!(omega_plus(&a, &b).is_err());
        assert!(omega_well_above(&a, &b).is_err());
    }

    #[test]
    fn constructor_prunes_and_validates() {
        let e = OmegaElement::new(3, vec![0b001, 0b011, 0b100, 0b011]).unwrap();
        assert_eq!(e.antichain(), &[0b011, 0b100]);
        assert!(OmegaElement::new(2, vec![0b100]).is_err());
        assert!(OmegaElement::new(65, vec![]).is_err());
    }

    #[test]
    fn sierpinski_distances_and_well_above() {
        let s = FiniteTopology::sierpinski();
        // opens: 0 = ∅, 1 = {1}, 2 = S
        let d01 = flagg_distance(&s, 0, 1).unwrap();
        let d10 = flagg_distance(&s, 1, 0).unwrap();
        assert!(d01.is_zero());
        assert_eq!(d10, OmegaElement::principal(3, 0b101));
        assert_eq!(d10.describe(&s, &sierpinski_names()), "↓{∅,S}");
        assert_eq!(d01.describe(&s, &sierpinski_names()), "0");
        assert!(flagg_distance(&s, 0, 0).unwrap().is_zero());
        assert!(flagg_distance(&s, 0, 2).is_err());

        let eps = OmegaElement::principal(3, 0b010);
        assert!(!omega_well_above(&eps, &d10).unwrap());
        assert!(omega_well_above(&eps, &OmegaElement::zero(3)).unwrap());
        assert!(omega_well_above(&OmegaElement::top(3), &OmegaElement::zero(3)).unwrap());
        assert_eq!(eps.describe(&s, &sierpinski_names()), "↓{{1}}");
    }

    #[test]
    fn flagg_spaces_of_two_point_topologies() {
        let s = flagg_space(&FiniteTopology::sierpinski()).unwrap();
        assert!(s.distance(0, 1).is_zero());
        assert_eq!(s.distance(1, 0), &OmegaElement::principal(3, 0b101));
        assert!(!s.is_symmetric());
        let eps = OmegaElement::principal(3, 0b010);
        assert_eq!(s.open_ball(1, &eps).unwrap(), 0b10);
        assert_eq!(s.open_ball(0, &eps).unwrap(), 0b11);
        assert_eq!(s.open_ball(0, &OmegaElement::top(3)).unwrap(), 0b11);
        assert_eq!(s.open_sets().unwrap(), FiniteTopology::sierpinski());

        let ind = flagg_space(&FiniteTopology::indiscrete(2).unwrap()).unwrap();
        assert!(ind.matrix().iter().flatten().all(|d| d.is_zero()));
        assert!(!ind.is_separated());

        let disc = FiniteTopology::discrete(2).unwrap();
        let ds = flagg_space(&disc).unwrap();
        // opens ∅, {0}, {1}, S: d(0,1) drops {0}
        assert_eq!(ds.distance(0, 1), &OmegaElement::principal(4, 0b1101));
        assert_eq!(ds.distance(1, 0), &OmegaElement::principal(4, 0b1011));
        assert!(ds.is_separated());
    }

    #[test]
    fn swap_on_sierpinski_is_not_continuous() {
        let s = flagg_space(&FiniteTopology::sierpinski()).unwrap();
        assert!(!is_continuous_epsilon_delta(&PointMap::new(vec![1, 0]), &s, &s).unwrap());
        let d = flagg_space(&FiniteTopology::discrete(2).unwrap()).unwrap();
        for m in [vec![0, 0], vec![1, 0], vec![0, 1]] {
            assert!(is_continuous_epsilon_delta(&PointMap::new(m), &d, &s).unwrap());
        }
    }

    #[test]
    fn enumeration_sizes() {
        assert_eq!(enumerate_omega_width(1).unwrap().size(), 3);
        assert_eq!(enumerate_omega(&FiniteTopology::indiscrete(2).unwrap()).unwrap().size(), 6);
        assert_eq!(enumerate_omega(&FiniteTopology::sierpinski()).unwrap().size(), 20);
        assert_eq!(enumerate_omega(&FiniteTopology::discrete(2).unwrap()).unwrap().size(), 168);
        assert!(matches!(enumerate_omega(&FiniteTopology::discrete(3).unwrap()), Err(Error::Capacity(_))));
    }

    #[test]
    fn enumeration_orientation() {
        let e = enumerate_omega(&FiniteTopology::sierpinski()).unwrap();
        let l = e.quantale.lattice();
        assert!(e.elements[l.bottom()].is_zero());
        assert!(e.elements[l.top()].is_top());
        assert_eq!(l.name(l.bottom()), "{{0,1,2}}");
        assert_eq!(l.name(l.top()), "{}");
        let d10 = OmegaElement::principal(3, 0b101);
        assert!(e.index_of(&d10).is_some());
    }

    #[test]
    fn large_topologies_use_the_reduced_basis() {
        // 5-point discrete space has 32 opens
        let t = FiniteTopology::discrete(5).unwrap();
        let s = flagg_space(&t).unwrap();
        assert_eq!(s.basis().len(), 34);
        assert_eq!(s.open_sets().unwrap(), t);
    }
}
