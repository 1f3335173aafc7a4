//! Quantales in the meet-preserving convention: a complete lattice with a
//! commutative, associative `+` whose unit is the bottom element `0` and which
//! distributes over arbitrary meets.

use std::fmt::Debug;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{input, Error, Result};
use crate::lattice::{DistributivityReport, Element, FiniteLattice};

/// Subset enumeration is never attempted beyond `2^24` subsets, whatever the policy says.
const MAX_EXHAUSTIVE_SUBSETS: usize = 24;

/// The operations a continuity space needs from its value quantale.
pub trait Quantale {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn top(&self) -> Self::Elem;
    fn le(&self, a: &Self::Elem, b: &Self::Elem) -> bool;
    fn plus(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Decides `d ≺ eps`.
    fn well_above(&self, eps: &Self::Elem, d: &Self::Elem) -> bool;
    /// Stable JSON rendering of an element.
    fn element_json(&self, e: &Self::Elem) -> serde_json::Value;
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteQuantale {
    lattice: FiniteLattice,
    add: Vec<u16>,
}

impl FiniteQuantale {
    /// Checks the shape of the addition table only; the algebraic laws are
    /// reported by [`FiniteQuantale::check_axioms`].
    pub fn new(lattice: FiniteLattice, add: Vec<Vec<Element>>) -> Result<Self> {
        let n = lattice.size();
        if add.len() != n || add.iter().any(|row| row.len() != n) {
            return Err(Error::Invalid(format!("addition table must be {n}x{n}")));
        }
        if let Some(bad) = add.iter().flatten().find(|&&v| v >= n) {
            return Err(input(format!("addition table entry {bad} is not an element")));
        }
        let add = add.into_iter().flatten().map(|v| v as u16).collect();
        Ok(FiniteQuantale { lattice, add })
    }

    pub(crate) fn from_flat(lattice: FiniteLattice, add: Vec<u16>) -> Self {
        debug_assert_eq!(add.len(), lattice.size() * lattice.size());
        FiniteQuantale { lattice, add }
    }

    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    pub fn size(&self) -> usize {
        self.lattice.size()
    }

    #[inline]
    pub fn add(&self, x: Element, y: Element) -> Element {
        self.add[x * self.size() + y] as Element
    }

    pub fn plus(&self, x: Element, y: Element) -> Result<Element> {
        self.lattice.check(x)?;
        self.lattice.check(y)?;
        Ok(self.add(x, y))
    }

    pub fn add_table(&self) -> Vec<Vec<Element>> {
        let n = self.size();
        (0..n).map(|x| (0..n).map(|y| self.add(x, y)).collect()).collect()
    }

    pub fn check_axioms(&self, policy: &CheckPolicy) -> AxiomReport {
        let n = self.size();
        let exhaustive = n <= policy.exhaustive_limit.min(MAX_EXHAUSTIVE_SUBSETS);
        let mut rng = ChaCha8Rng::seed_from_u64(policy.seed);
        let axioms = vec![
            self.check_associativity(policy, &mut rng),
            self.check_commutativity(),
            self.check_unit(),
            if exhaustive {
                self.check_meet_distribution_exhaustive()
            } else {
                self.check_meet_distribution_structured(policy, &mut rng)
            },
        ];
        AxiomReport {
            elements: n,
            regime: if exhaustive { Regime::Exhaustive } else { Regime::StructuredAndSampled },
            seed: policy.seed,
            passed: axioms.iter().all(|a| a.status != Status::Failed),
            axioms,
        }
    }

    pub fn check_value_quantale(&self, policy: &CheckPolicy) -> ValueQuantaleReport {
        let axioms = self.check_axioms(policy);
        let lattice = self.lattice.distributivity_report();
        ValueQuantaleReport { value_quantale: axioms.passed && lattice.value_distributive, axioms, lattice }
    }

    pub fn is_value_quantale(&self) -> bool {
        self.check_value_quantale(&CheckPolicy::default()).value_quantale
    }

    fn names<const K: usize>(&self, xs: [Element; K]) -> Vec<String> {
        xs.iter().map(|&x| self.lattice.name(x).to_string()).collect()
    }

    fn check_associativity(&self, policy: &CheckPolicy, rng: &mut ChaCha8Rng) -> AxiomResult {
        let n = self.size();
        let assoc = |x, y, z| self.add(self.add(x, y), z) == self.add(x, self.add(y, z));
        let total = (n as u64).pow(3);
        if total <= policy.triple_budget {
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        if !assoc(x, y, z) {
                            return AxiomResult::failed(Axiom::Associativity, self.names([x, y, z]), None);
                        }
                    }
                }
            }
            return AxiomResult::verified(Axiom::Associativity, total);
        }
        for _ in 0..policy.sampled_triples {
            let (x, y, z) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
            if !assoc(x, y, z) {
                return AxiomResult::failed(Axiom::Associativity, self.names([x, y, z]), None);
            }
        }
        AxiomResult::not_falsified(Axiom::Associativity, policy.sampled_triples)
    }

    fn check_commutativity(&self) -> AxiomResult {
        let n = self.size();
        for x in 0..n {
            for y in x + 1..n {
                if self.add(x, y) != self.add(y, x) {
                    return AxiomResult::failed(Axiom::Commutativity, self.names([x, y]), None);
                }
            }
        }
        AxiomResult::verified(Axiom::Commutativity, (n * n) as u64)
    }

    fn check_unit(&self) -> AxiomResult {
        let zero = self.lattice.bottom();
        for x in 0..self.size() {
            if self.add(x, zero) != x {
                return AxiomResult::failed(Axiom::Unit, self.names([x]), None);
            }
        }
        AxiomResult::verified(Axiom::Unit, self.size() as u64)
    }

    /// `x + ⋀S == ⋀{x + s}` for one `x` and a subset given by its members.
    fn distributes(&self, x: Element, subset: &[Element]) -> bool {
        let l = &self.lattice;
        let m = subset.iter().fold(l.top(), |acc, &s| l.meet2(acc, s));
        let rhs = subset.iter().fold(l.top(), |acc, &s| l.meet2(acc, self.add(x, s)));
        self.add(x, m) == rhs
    }

    fn meet_failure(&self, x: Element, subset: &[Element]) -> AxiomResult {
        let set = subset.iter().map(|&s| self.lattice.name(s).to_string()).collect();
        AxiomResult::failed(Axiom::MeetDistribution, self.names([x]), Some(set))
    }

    fn check_meet_distribution_exhaustive(&self) -> AxiomResult {
        let n = self.size();
        let l = &self.lattice;
        let subsets = 1usize << n;
        let mut meets = vec![l.top() as u16; subsets];
        for mask in 1..subsets {
            meets[mask] = l.meet2(meets[mask & (mask - 1)] as Element, mask.trailing_zeros() as usize) as u16;
        }
        let mut shifted = vec![l.top() as u16; subsets];
        for x in 0..n {
            for mask in 1..subsets {
                let s = mask.trailing_zeros() as usize;
                shifted[mask] = l.meet2(shifted[mask & (mask - 1)] as Element, self.add(x, s)) as u16;
            }
            for mask in 0..subsets {
                if self.add(x, meets[mask] as Element) != shifted[mask] as Element {
                    let members: Vec<Element> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
                    return self.meet_failure(x, &members);
                }
            }
        }
        AxiomResult::verified(Axiom::MeetDistribution, (n * subsets) as u64)
    }

    fn check_meet_distribution_structured(&self, policy: &CheckPolicy, rng: &mut ChaCha8Rng) -> AxiomResult {
        let n = self.size();
        let everything: Vec<Element> = (0..n).collect();
        let mut cases = 0u64;
        let mut check = |x: Element, subset: &[Element]| {
            cases += 1;
            if self.distributes(x, subset) {
                None
            } else {
                Some(self.meet_failure(x, subset))
            }
        };
        for x in 0..n {
            for s in [&[][..], &everything[..]] {
                if let Some(f) = check(x, s) {
                    return f;
                }
            }
            for a in 0..n {
                if let Some(f) = check(x, &[a]) {
                    return f;
                }
            }
        }
        let pair_cases = (n as u64) * (n as u64) * (n as u64 - 1) / 2;
        if pair_cases <= policy.triple_budget {
            for x in 0..n {
                for a in 0..n {
                    for b in a + 1..n {
                        if let Some(f) = check(x, &[a, b]) {
                            return f;
                        }
                    }
                }
            }
        } else {
            for _ in 0..policy.sampled_triples {
                let (x, a, b) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if let Some(f) = check(x, &[a, b]) {
                    return f;
                }
            }
        }
        // a random subset has about n/2 members
        let per_subset = policy.subset_budget / (policy.samples.max(1) as u64 * (n as u64 / 2).max(1));
        let partners = (per_subset as usize).clamp(1, n);
        let mut subset = Vec::with_capacity(n);
        for _ in 0..policy.samples {
            subset.clear();
            subset.extend((0..n).filter(|_| rng.gen_bool(0.5)));
            for k in 0..partners {
                let x = if partners == n { k } else { rng.gen_range(0..n) };
                if let Some(f) = check(x, &subset) {
                    return f;
                }
            }
        }
        AxiomResult::not_falsified(Axiom::MeetDistribution, cases)
    }
}

impl Quantale for FiniteQuantale {
    type Elem = Element;

    fn zero(&self) -> Element {
        self.lattice.bottom()
    }

    fn top(&self) -> Element {
        self.lattice.top()
    }

    fn le(&self, a: &Element, b: &Element) -> bool {
        self.lattice.leq(*a, *b)
    }

    fn plus(&self, a: &Element, b: &Element) -> Element {
        self.add(*a, *b)
    }

    fn well_above(&self, eps: &Element, d: &Element) -> bool {
        self.lattice.well_above(*eps, *d)
    }

    fn element_json(&self, e: &Element) -> serde_json::Value {
        self.lattice.name(*e).into()
    }
}

/// How much of the meet-distribution law (and associativity) is enumerated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckPolicy {
    /// Carriers up to this size get every subset `S` checked.
    pub exhaustive_limit: usize,
    /// Uniformly sampled subsets for carriers above the limit.
    pub samples: usize,
    /// Triple-indexed checks run exhaustively while `n^3` stays within this budget.
    pub triple_budget: u64,
    /// Sampled triples once the budget is exceeded.
    pub sampled_triples: u64,
    /// Meet operations spent on the sampled subsets. Each subset is checked
    /// against every element while that fits, otherwise against a seeded
    /// sample of elements sized to the budget.
    pub subset_budget: u64,
    pub seed: u64,
}

impl Default for CheckPolicy {
    fn default() -> Self {
        CheckPolicy {
            exhaustive_limit: 12,
            samples: 10_000,
            triple_budget: 1 << 24,
            sampled_triples: 1_000_000,
            subset_budget: 1 << 28,
            seed: 0x005e_ed0f_f1a6,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    Associativity,
    Commutativity,
    Unit,
    MeetDistribution,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    VerifiedExhaustively,
    /// Sampled and structured cases passed; the law is not certified.
    NotFalsified,
    Failed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    Exhaustive,
    StructuredAndSampled,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    /// The elements `x, y, z` (as many as the law quantifies over).
    pub elements: Vec<String>,
    /// The subset `S` for meet distribution.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subset: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomResult {
    pub axiom: Axiom,
    pub status: Status,
    pub cases: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

impl AxiomResult {
    fn verified(axiom: Axiom, cases: u64) -> Self {
        AxiomResult { axiom, status: Status::VerifiedExhaustively, cases, counterexample: None }
    }

    fn not_falsified(axiom: Axiom, cases: u64) -> Self {
        AxiomResult { axiom, status: Status::NotFalsified, cases, counterexample: None }
    }

    fn failed(axiom: Axiom, elements: Vec<String>, subset: Option<Vec<String>>) -> Self {
        AxiomResult {
            axiom,
            status: Status::Failed,
            cases: 0,
            counterexample: Some(Counterexample { elements, subset }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub elements: usize,
    pub regime: Regime,
    pub seed: u64,
    pub passed: bool,
    pub axioms: Vec<AxiomResult>,
}

impl AxiomReport {
    pub fn get(&self, axiom: Axiom) -> &AxiomResult {
        self.axioms.iter().find(|a| a.axiom == axiom).expect("every axiom is reported")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValueQuantaleReport {
    pub value_quantale: bool,
    pub axioms: AxiomReport,
    pub lattice: DistributivityReport,
}
