//! Separation and basis conditions for metrizability of finite spaces.
//!
//! Conventions: "regular" does not include T0, and a discrete family is one
//! where every point has a neighborhood meeting at most one member. On a
//! finite space any basis splits into finitely many singleton families, each
//! trivially discrete, so the σ-discrete condition always holds; it is still
//! checked through [`is_discrete_family`] rather than assumed.

use serde::Serialize;

use crate::builtin::{ExtRationalLine, ExtendedRational};
use crate::continuity::{rational_space, ContinuitySpace};
use crate::error::{Error, Result};
use crate::topology::{members, FiniteTopology, PointSet};

pub fn is_t0(t: &FiniteTopology) -> bool {
    t0_witness(t).is_none()
}

/// Two distinct points with the same open neighborhoods.
fn t0_witness(t: &FiniteTopology) -> Option<[usize; 2]> {
    let n = t.points();
    (0..n)
        .flat_map(|x| (x + 1..n).map(move |y| [x, y]))
        .find(|&[x, y]| t.opens().iter().all(|&u| (u >> x & 1) == (u >> y & 1)))
}

pub fn is_regular(t: &FiniteTopology) -> bool {
    regularity_witness(t).is_none()
}

/// A point `x` and closed `C ∌ x` admitting no disjoint opens `U ∋ x`, `W ⊇ C`.
fn regularity_witness(t: &FiniteTopology) -> Option<(usize, PointSet)> {
    let whole = t.whole();
    for &complement in t.opens() {
        let closed = whole & !complement;
        for x in members(complement) {
            let separated = t
                .opens()
                .iter()
                .filter(|&&u| u >> x & 1 == 1)
                .any(|&u| t.opens().iter().any(|&w| w & closed == closed && w & u == 0));
            if !separated {
                return Some((x, closed));
            }
        }
    }
    None
}

pub fn is_discrete_family(t: &FiniteTopology, family: &[PointSet]) -> bool {
    (0..t.points()).all(|x| {
        t.opens().iter().filter(|&&u| u >> x & 1 == 1).any(|&u| family.iter().filter(|&&a| a & u != 0).count() <= 1)
    })
}

/// A basis split into discrete families.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SigmaDiscreteBasis {
    pub parts: Vec<Vec<PointSet>>,
}

impl SigmaDiscreteBasis {
    pub fn members(&self) -> impl Iterator<Item = PointSet> + '_ {
        self.parts.iter().flatten().copied()
    }
}

fn is_basis(t: &FiniteTopology, candidate: &[PointSet]) -> bool {
    candidate.iter().all(|&b| t.is_open(b))
        && t.opens().iter().all(|&u| candidate.iter().filter(|&&b| b & !u == 0).fold(0, |acc, &b| acc | b) == u)
}

/// The minimal neighborhoods of the points form a basis; each is placed in
/// its own family and every family is checked for discreteness.
pub fn sigma_discrete_basis(t: &FiniteTopology) -> Option<SigmaDiscreteBasis> {
    let mut basis: Vec<PointSet> = (0..t.points()).map(|x| t.neighborhood(x)).collect();
    basis.sort_unstable();
    basis.dedup();
    if !is_basis(t, &basis) {
        return None;
    }
    let parts: Vec<Vec<PointSet>> = basis.into_iter().map(|b| vec![b]).collect();
    parts.iter().all(|p| is_discrete_family(t, p)).then_some(SigmaDiscreteBasis { parts })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub indistinguishable: Option<[usize; 2]>,
    /// A point and a closed set (as point indices) that cannot be separated.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unseparated: Option<(usize, Vec<usize>)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BnsVerdict {
    pub t0: bool,
    pub regular: bool,
    pub sigma_discrete: bool,
    pub metrizable: bool,
    pub witness: Witness,
}

impl BnsVerdict {
    pub fn failed_predicates(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.t0 {
            out.push("is_T0");
        }
        if !self.regular {
            out.push("is_regular");
        }
        if !self.sigma_discrete {
            out.push("sigma_discrete_basis");
        }
        out
    }
}

pub fn bns_verdict(t: &FiniteTopology) -> BnsVerdict {
    let t0 = t0_witness(t);
    let reg = regularity_witness(t);
    let sigma_discrete = sigma_discrete_basis(t).is_some();
    BnsVerdict {
        t0: t0.is_none(),
        regular: reg.is_none(),
        sigma_discrete,
        metrizable: t0.is_none() && reg.is_none() && sigma_discrete,
        witness: Witness { indistinguishable: t0, unseparated: reg.map(|(x, c)| (x, members(c))) },
    }
}

pub fn bns_metrizable(t: &FiniteTopology) -> bool {
    bns_verdict(t).metrizable
}

/// The unit metric `d(x, y) = 1` for `x ≠ y`, offered only for spaces that
/// pass all three conditions.
pub fn build_metric(t: &FiniteTopology) -> Result<ContinuitySpace<ExtRationalLine>> {
    let verdict = bns_verdict(t);
    if !verdict.metrizable {
        return Err(Error::NotMetrizable { failed: verdict.failed_predicates() });
    }
    let n = t.points();
    let dist = (0..n)
        .map(|x| (0..n).map(|y| if x == y { ExtendedRational::zero() } else { ExtendedRational::integer(1) }).collect())
        .collect();
    rational_space(dist)
}
