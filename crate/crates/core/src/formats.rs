//! JSON documents for topologies, lattices, quantales, spaces and maps.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::builtin::{make_chain, make_two_element, ExtRationalLine, ExtendedRational};
use crate::continuity::{finite_space, rational_space, BallTable, ContinuitySpace, SpaceAxiomReport};
use crate::error::{input, Error, Result};
use crate::lattice::{Element, FiniteLattice};
use crate::omega::{omega_space, OmegaDoc, OmegaElement, OmegaQuantale};
use crate::quantale::FiniteQuantale;
use crate::topology::{FiniteTopology, TopologyViolation};

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

/// `{"points": ["a","b"], "opens": [[],[1],[0,1]]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TopologyDoc {
    pub points: Vec<String>,
    pub opens: Vec<Vec<usize>>,
}

impl TopologyDoc {
    pub fn to_topology(&self) -> Result<FiniteTopology> {
        let n = self.points.len();
        let mut family = Vec::with_capacity(self.opens.len());
        for open in &self.opens {
            if let Some(&p) = open.iter().find(|&&p| p >= n || p >= 32) {
                return Err(TopologyViolation::OutOfRange { n, set: vec![p] }.into());
            }
            family.push(open.iter().fold(0u32, |acc, &p| acc | 1 << p));
        }
        Ok(FiniteTopology::validate(n, &family)?)
    }

    pub fn from_topology(t: &FiniteTopology, points: Vec<String>) -> Self {
        TopologyDoc { points, opens: t.opens().iter().map(|&u| crate::topology::members(u)).collect() }
    }

    pub fn default_names(n: usize) -> Vec<String> {
        (0..n).map(|i| i.to_string()).collect()
    }
}

/// `{"elements": ["e0",...], "leq": [[bool,...],...]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeDoc {
    pub elements: Vec<String>,
    pub leq: Vec<Vec<bool>>,
}

impl LatticeDoc {
    pub fn to_lattice(&self) -> Result<FiniteLattice> {
        FiniteLattice::new(self.elements.clone(), self.leq.clone())
    }

    pub fn from_lattice(l: &FiniteLattice) -> Self {
        LatticeDoc { elements: l.names().to_vec(), leq: l.leq_table() }
    }
}

/// Lattice document plus `{"add": [[elementIndex,...],...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuantaleDoc {
    #[serde(flatten)]
    pub lattice: LatticeDoc,
    pub add: Vec<Vec<Element>>,
}

impl QuantaleDoc {
    pub fn to_quantale(&self) -> Result<FiniteQuantale> {
        FiniteQuantale::new(self.lattice.to_lattice()?, self.add.clone())
    }

    pub fn from_quantale(q: &FiniteQuantale) -> Self {
        QuantaleDoc { lattice: LatticeDoc::from_lattice(q.lattice()), add: q.add_table() }
    }
}

/// Either a lattice or a quantale document; quantale fields are ignored.
#[derive(Clone, Debug, Deserialize)]
pub struct LatticeOrQuantaleDoc {
    #[serde(flatten)]
    pub lattice: LatticeDoc,
}

/// `{"quantale": <ref or "ext-rational">, "points": n, "dist": [[elem,...],...]}`
///
/// The quantale reference is one of `"ext-rational"`, `"two-element"`,
/// `{"chain": n}`, `{"omega": <topology document>}`, an inline quantale
/// document, or a path (relative to the space file) to a quantale document.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpaceDoc {
    pub quantale: Value,
    pub points: usize,
    pub dist: Vec<Vec<Value>>,
}

/// A continuity space over one of the supported quantales.
#[derive(Clone, Debug)]
pub enum AnySpace {
    Finite(ContinuitySpace<FiniteQuantale>),
    Omega(ContinuitySpace<OmegaQuantale>),
    Rational(ContinuitySpace<ExtRationalLine>),
}

macro_rules! each_space {
    ($self:expr, $s:ident => $body:expr) => {
        match $self {
            AnySpace::Finite($s) => $body,
            AnySpace::Omega($s) => $body,
            AnySpace::Rational($s) => $body,
        }
    };
}

impl AnySpace {
    pub fn points(&self) -> usize {
        each_space!(self, s => s.points())
    }

    pub fn ball_table(&self) -> Result<BallTable> {
        each_space!(self, s => s.ball_table())
    }

    pub fn open_sets(&self) -> Result<FiniteTopology> {
        each_space!(self, s => s.open_sets())
    }

    pub fn check_axioms(&self) -> SpaceAxiomReport {
        each_space!(self, s => s.check_axioms())
    }

    pub fn is_separated(&self) -> bool {
        each_space!(self, s => s.is_separated())
    }

    pub fn is_symmetric(&self) -> bool {
        each_space!(self, s => s.is_symmetric())
    }
}

fn finite_elem(q: &FiniteQuantale, v: &Value) -> Result<Element> {
    match v {
        Value::String(name) => q.lattice().index_of(name).ok_or_else(|| input(format!("unknown element {name:?}"))),
        Value::Number(k) => {
            let k = k.as_u64().ok_or_else(|| input(format!("bad element index {k}")))? as usize;
            q.lattice().check(k)?;
            Ok(k)
        }
        other => Err(input(format!("expected an element name or index, got {other}"))),
    }
}

fn rows<T>(doc: &SpaceDoc, mut f: impl FnMut(&Value) -> Result<T>) -> Result<Vec<Vec<T>>> {
    if doc.dist.len() != doc.points || doc.dist.iter().any(|r| r.len() != doc.points) {
        return Err(Error::Invalid(format!("dist must be {0}x{0}", doc.points)));
    }
    doc.dist.iter().map(|r| r.iter().map(&mut f).collect()).collect()
}

impl SpaceDoc {
    /// Resolves the quantale reference (paths relative to `base`) and builds the space.
    pub fn to_space(&self, base: &Path) -> Result<AnySpace> {
        let quantale = match &self.quantale {
            Value::String(s) if s == "ext-rational" => {
                let dist = rows(self, |v| match v {
                    Value::String(s) => s.parse::<ExtendedRational>(),
                    other => Err(input(format!("distances are \"p/q\" or \"inf\" strings, got {other}"))),
                })?;
                return Ok(AnySpace::Rational(rational_space(dist)?));
            }
            Value::String(s) if s == "two-element" => make_two_element(),
            Value::String(path) => {
                let p: PathBuf = base.join(path);
                read_json::<QuantaleDoc>(&p)?.to_quantale()?
            }
            Value::Object(map) if map.contains_key("chain") => {
                let n = map["chain"].as_u64().ok_or_else(|| input("chain length must be a number"))?;
                make_chain(n as usize)?
            }
            Value::Object(map) if map.contains_key("omega") => {
                let topo: TopologyDoc = serde_json::from_value(map["omega"].clone())?;
                let width = topo.to_topology()?.opens().len();
                let dist = rows(self, |v| {
                    let doc: OmegaDoc = serde_json::from_value(v.clone())?;
                    OmegaElement::from_doc(width, &doc)
                })?;
                return Ok(AnySpace::Omega(omega_space(width, dist)?));
            }
            Value::Object(_) => serde_json::from_value::<QuantaleDoc>(self.quantale.clone())?.to_quantale()?,
            other => return Err(input(format!("unrecognized quantale reference {other}"))),
        };
        let dist = rows(self, |v| finite_elem(&quantale, v))?;
        Ok(AnySpace::Finite(finite_space(quantale, dist)?))
    }
}
