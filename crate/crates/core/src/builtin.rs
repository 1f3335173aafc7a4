//! Concrete value quantales: the extended non-negative rationals standing in
//! for `[0, ∞]`, the two-element quantale, and truncated-addition chains.
//!
//! In `[0, ∞]` the well-above relation is strict order: `x ≺ y` iff `x < y`.
//! If `x < y` and `⋀S ≤ x`, some member of `S` lies below `y` because the
//! infimum is approached from above. If `x ≥ y` then `S = {x + 1/n : n ≥ 1}`
//! (or `S = ∅` when `x = ∞`) has `⋀S ≤ x` with no member `≤ y`. In
//! particular `0 ⊀ 0`, unlike in every finite lattice.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{input, Error, Result};
use crate::lattice::{Element, FiniteLattice};
use crate::quantale::{FiniteQuantale, Quantale};

/// A non-negative rational or `∞`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtendedRational {
    Finite(BigRational),
    Infinity,
}

impl ExtendedRational {
    pub fn zero() -> Self {
        ExtendedRational::Finite(BigRational::zero())
    }

    pub fn integer(n: u64) -> Self {
        ExtendedRational::Finite(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(input("zero denominator"));
        }
        Self::from_rational(BigRational::new(num.into(), den.into()))
    }

    pub fn from_rational(r: BigRational) -> Result<Self> {
        if r.is_negative() {
            return Err(input(format!("distance {r} is negative")));
        }
        Ok(ExtendedRational::Finite(r))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtendedRational::Infinity)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ExtendedRational::Finite(r) if r.is_zero())
    }
}

impl Ord for ExtendedRational {
    fn cmp(&self, other: &Self) -> Ordering {
        use ExtendedRational::*;
        match (self, other) {
            (Finite(a), Finite(b)) => a.cmp(b),
            (Finite(_), Infinity) => Ordering::Less,
            (Infinity, Finite(_)) => Ordering::Greater,
            (Infinity, Infinity) => Ordering::Equal,
        }
    }
}

impl PartialOrd for ExtendedRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &ExtendedRational {
    type Output = ExtendedRational;

    fn add(self, rhs: &ExtendedRational) -> ExtendedRational {
        match (self, rhs) {
            (ExtendedRational::Finite(a), ExtendedRational::Finite(b)) => ExtendedRational::Finite(a + b),
            _ => ExtendedRational::Infinity,
        }
    }
}

impl Add for ExtendedRational {
    type Output = ExtendedRational;

    fn add(self, rhs: ExtendedRational) -> ExtendedRational {
        &self + &rhs
    }
}

/// Canonical text form: `"inf"`, `"p"` for integers, `"p/q"` in lowest terms.
impl fmt::Display for ExtendedRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedRational::Infinity => f.write_str("inf"),
            ExtendedRational::Finite(r) if r.is_integer() => write!(f, "{}", r.numer()),
            ExtendedRational::Finite(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl FromStr for ExtendedRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if matches!(s, "inf" | "∞" | "infinity") {
            return Ok(ExtendedRational::Infinity);
        }
        let parse = |t: &str| t.trim().parse::<BigInt>().map_err(|_| input(format!("not a rational: {s:?}")));
        let r = match s.split_once('/') {
            Some((p, q)) => {
                let q = parse(q)?;
                if q.is_zero() {
                    return Err(input(format!("zero denominator in {s:?}")));
                }
                BigRational::new(parse(p)?, q)
            }
            None => BigRational::from_integer(parse(s)?),
        };
        Self::from_rational(r)
    }
}

impl serde::Serialize for ExtendedRational {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for ExtendedRational {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub fn er_plus(a: &ExtendedRational, b: &ExtendedRational) -> ExtendedRational {
    a + b
}

/// Decides `x ≺ y` in `[0, ∞]`, which is `x < y`.
pub fn er_well_above(y: &ExtendedRational, x: &ExtendedRational) -> bool {
    x < y
}

/// `[0, ∞]` restricted to exact rationals, with ordinary addition.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ExtRationalLine;

impl Quantale for ExtRationalLine {
    type Elem = ExtendedRational;

    fn zero(&self) -> ExtendedRational {
        ExtendedRational::zero()
    }

    fn top(&self) -> ExtendedRational {
        ExtendedRational::Infinity
    }

    fn le(&self, a: &ExtendedRational, b: &ExtendedRational) -> bool {
        a <= b
    }

    fn plus(&self, a: &ExtendedRational, b: &ExtendedRational) -> ExtendedRational {
        a + b
    }

    fn well_above(&self, eps: &ExtendedRational, d: &ExtendedRational) -> bool {
        er_well_above(eps, d)
    }

    fn element_json(&self, e: &ExtendedRational) -> serde_json::Value {
        e.to_string().into()
    }
}

/// `{0, ∞}` with `+` as join.
pub fn make_two_element() -> FiniteQuantale {
    make_chain(1).expect("n = 1 is a valid chain length")
}

/// `{0, 1, ..., n-1, ∞}` with addition truncated to `∞` at `n`.
pub fn make_chain(n: usize) -> Result<FiniteQuantale> {
    if n == 0 {
        return Err(input("truncated chain needs n >= 1"));
    }
    let size = n + 1;
    let mut names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    names.push("inf".into());
    let leq = (0..size).map(|i| (0..size).map(|j| i <= j).collect()).collect();
    let lattice = FiniteLattice::new(names, leq)?;
    let add =
        (0..size).map(|a| (0..size).map(|b| if a + b >= n { n } else { a + b }).collect::<Vec<Element>>()).collect();
    FiniteQuantale::new(lattice, add)
}
