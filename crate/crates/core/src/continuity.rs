//! Continuity spaces over a value quantale, their open balls and induced
//! topology, and the two notions of continuity for point maps.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::builtin::{ExtRationalLine, ExtendedRational};
use crate::error::{capacity, input, Error, Result};
use crate::lattice::Element;
use crate::quantale::{FiniteQuantale, Quantale};
use crate::topology::{full_set, FiniteTopology, PointSet, Relation, MAX_POINTS};

/// Largest space whose open sets are found by brute force over all subsets.
pub const OPEN_SETS_LIMIT: usize = 16;

/// A set of points with a quantale-valued distance.
///
/// `basis` is a finite family of radii, each well above `0`, such that every
/// open ball of any positive radius is also a ball of some basis radius around
/// the same center. Quantifying over the basis is then equivalent to
/// quantifying over all positive radii.
#[derive(Clone, Debug)]
pub struct ContinuitySpace<Q: Quantale> {
    quantale: Q,
    dist: Vec<Vec<Q::Elem>>,
    basis: Vec<Q::Elem>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpaceAxiomReport {
    pub passed: bool,
    /// A point with `d(x, x) ≠ 0`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub self_distance_witness: Option<usize>,
    /// `(x, y, z)` with `d(x, z) ≰ d(x, y) + d(y, z)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub triangle_witness: Option<[usize; 3]>,
}

impl<Q: Quantale> ContinuitySpace<Q> {
    /// Checks the matrix shape and that every basis radius is positive. The
    /// distance axioms are reported by [`ContinuitySpace::check_axioms`].
    pub fn new(quantale: Q, dist: Vec<Vec<Q::Elem>>, basis: Vec<Q::Elem>) -> Result<Self> {
        let n = dist.len();
        if n > MAX_POINTS {
            return Err(capacity(format!("{n} points exceeds the {MAX_POINTS}-point limit")));
        }
        if dist.iter().any(|row| row.len() != n) {
            return Err(Error::Invalid(format!("distance matrix must be {n}x{n}")));
        }
        let zero = quantale.zero();
        if let Some(p) = basis.iter().find(|p| !quantale.well_above(p, &zero)) {
            return Err(input(format!("basis radius {} is not well above 0", quantale.element_json(p))));
        }
        Ok(ContinuitySpace { quantale, dist, basis })
    }

    pub fn quantale(&self) -> &Q {
        &self.quantale
    }

    pub fn points(&self) -> usize {
        self.dist.len()
    }

    pub fn distance(&self, x: usize, y: usize) -> &Q::Elem {
        &self.dist[x][y]
    }

    pub fn matrix(&self) -> &[Vec<Q::Elem>] {
        &self.dist
    }

    pub fn basis(&self) -> &[Q::Elem] {
        &self.basis
    }

    pub fn check_axioms(&self) -> SpaceAxiomReport {
        let q = &self.quantale;
        let n = self.points();
        let zero = q.zero();
        let self_distance_witness = (0..n).find(|&x| self.dist[x][x] != zero);
        let mut triangle_witness = None;
        'outer: for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if !q.le(&self.dist[x][z], &q.plus(&self.dist[x][y], &self.dist[y][z])) {
                        triangle_witness = Some([x, y, z]);
                        break 'outer;
                    }
                }
            }
        }
        SpaceAxiomReport {
            passed: self_distance_witness.is_none() && triangle_witness.is_none(),
            self_distance_witness,
            triangle_witness,
        }
    }

    pub fn is_separated(&self) -> bool {
        let zero = self.quantale.zero();
        let n = self.points();
        (0..n).all(|x| (0..n).all(|y| x == y || !(self.dist[x][y] == zero && self.dist[y][x] == zero)))
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.points();
        (0..n).all(|x| (0..x).all(|y| self.dist[x][y] == self.dist[y][x]))
    }

    fn ball(&self, x: usize, eps: &Q::Elem) -> PointSet {
        (0..self.points()).filter(|&y| self.quantale.well_above(eps, &self.dist[x][y])).fold(0, |acc, y| acc | 1 << y)
    }

    /// `B_eps(x) = {y : d(x, y) ≺ eps}` for a radius well above `0`.
    pub fn open_ball(&self, x: usize, eps: &Q::Elem) -> Result<PointSet> {
        if x >= self.points() {
            return Err(input(format!("point {x} out of range")));
        }
        if !self.quantale.well_above(eps, &self.quantale.zero()) {
            return Err(input(format!("radius {} is not well above 0", self.quantale.element_json(eps))));
        }
        Ok(self.ball(x, eps))
    }

    /// For each center, the distinct balls over the basis radii.
    pub fn ball_table(&self) -> Result<BallTable> {
        if self.basis.is_empty() {
            return Err(Error::Unsupported("space has no positive radii to form balls".into()));
        }
        let rows = (0..self.points())
            .map(|x| {
                let distinct: BTreeSet<PointSet> = self.basis.iter().map(|p| self.ball(x, p)).collect();
                distinct.into_iter().collect()
            })
            .collect();
        Ok(BallTable { rows })
    }

    /// Sets `U` such that every `x ∈ U` has a ball `B_p(x) ⊆ U`.
    pub fn open_sets(&self) -> Result<FiniteTopology> {
        if self.points() > OPEN_SETS_LIMIT {
            return Err(capacity(format!(
                "open sets are enumerated over 2^n subsets for at most {OPEN_SETS_LIMIT} points"
            )));
        }
        self.ball_table()?.open_sets()
    }
}

/// Distinct balls around each center, sorted by mask.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BallTable {
    rows: Vec<Vec<PointSet>>,
}

impl BallTable {
    pub fn points(&self) -> usize {
        self.rows.len()
    }

    pub fn balls(&self, x: usize) -> &[PointSet] {
        &self.rows[x]
    }

    pub fn open_sets(&self) -> Result<FiniteTopology> {
        let n = self.points();
        let opens: Vec<PointSet> = (0..=full_set(n))
            .filter(|&u| (0..n).filter(|x| u >> x & 1 == 1).all(|x| self.rows[x].iter().any(|&b| b & !u == 0)))
            .collect();
        Ok(FiniteTopology::validate(n, &opens)?)
    }

    /// For every `x` and target radius `eps` there is a source radius `delta`
    /// with `d(fx, fy) ≺ eps` whenever `d(x, y) ≺ delta`.
    pub fn is_continuous(&self, f: &PointMap, target: &BallTable) -> Result<bool> {
        f.check(self.points(), target.points())?;
        Ok((0..self.points()).all(|x| {
            let fx = f.apply(x);
            target.rows[fx].iter().all(|&eps_ball| {
                let pre = f.preimage(eps_ball);
                self.rows[x].iter().any(|&delta_ball| delta_ball & !pre == 0)
            })
        }))
    }
}

/// A function between finite carriers, as a table of targets.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, serde::Deserialize)]
pub struct PointMap {
    map: Vec<usize>,
}

impl PointMap {
    pub fn new(map: Vec<usize>) -> Self {
        PointMap { map }
    }

    pub fn identity(n: usize) -> Self {
        PointMap { map: (0..n).collect() }
    }

    pub fn table(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn check(&self, source: usize, target: usize) -> Result<()> {
        if self.map.len() != source {
            return Err(input(format!("map has {} entries for {source} source points", self.map.len())));
        }
        if let Some(&bad) = self.map.iter().find(|&&t| t >= target) {
            return Err(input(format!("map target {bad} out of range (target has {target} points)")));
        }
        Ok(())
    }

    pub fn preimage(&self, set: PointSet) -> PointSet {
        self.map.iter().enumerate().filter(|(_, &t)| set >> t & 1 == 1).fold(0, |acc, (x, _)| acc | 1 << x)
    }
}

/// Every function `0..source → 0..target`, in lexicographic order.
pub fn all_maps(source: usize, target: usize) -> impl Iterator<Item = PointMap> {
    let total = if target == 0 && source > 0 { 0 } else { target.pow(source as u32) };
    (0..total).map(move |mut code| {
        let mut map = vec![0; source];
        for slot in map.iter_mut().rev() {
            *slot = code % target;
            code /= target;
        }
        PointMap { map }
    })
}

pub fn is_continuous_epsilon_delta<P: Quantale, Q: Quantale>(
    f: &PointMap,
    source: &ContinuitySpace<P>,
    target: &ContinuitySpace<Q>,
) -> Result<bool> {
    f.check(source.points(), target.points())?;
    source.ball_table()?.is_continuous(f, &target.ball_table()?)
}

/// Preimages of opens are open.
pub fn is_continuous_topologically(f: &PointMap, source: &FiniteTopology, target: &FiniteTopology) -> Result<bool> {
    f.check(source.points(), target.points())?;
    Ok(target.opens().iter().all(|&v| source.is_open(f.preimage(v))))
}

/// A space over `[0, ∞]` whose basis is `∞` plus every attained positive
/// finite distance: between consecutive attained values the ball family is
/// constant, so these radii produce every ball.
pub fn rational_space(dist: Vec<Vec<ExtendedRational>>) -> Result<ContinuitySpace<ExtRationalLine>> {
    let mut radii: BTreeSet<ExtendedRational> =
        dist.iter().flatten().filter(|d| !d.is_zero() && !d.is_infinite()).cloned().collect();
    radii.insert(ExtendedRational::Infinity);
    ContinuitySpace::new(ExtRationalLine, dist, radii.into_iter().collect())
}

/// A space over a finite quantale with every positive element as a basis radius.
pub fn finite_space(quantale: FiniteQuantale, dist: Vec<Vec<Element>>) -> Result<ContinuitySpace<FiniteQuantale>> {
    let n = quantale.size();
    if let Some(&bad) = dist.iter().flatten().find(|&&d| d >= n) {
        return Err(input(format!("distance {bad} is not an element")));
    }
    let basis = quantale.lattice().positives();
    ContinuitySpace::new(quantale, dist, basis)
}

/// A preorder as a space over `{0, ∞}`: `d(x, y) = 0` iff `x ⊑ y`.
pub fn preorder_space(relation: &Relation) -> Result<ContinuitySpace<FiniteQuantale>> {
    let two = crate::builtin::make_two_element();
    let (zero, top) = (two.lattice().bottom(), two.lattice().top());
    let n = relation.points();
    let dist = (0..n).map(|x| (0..n).map(|y| if relation.holds(x, y) { zero } else { top }).collect()).collect();
    finite_space(two, dist)
}
