//! Macdonald parameters, symbols, and the Springer gate for catalog pairs.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::catalog::{PairSource, PairSpec};
use crate::error::{Error, Result};
use crate::orbits::{complex_orbit, ClassicalFamily, ComplexOrbit, Partition};
use crate::rootdata::RealPair;
use crate::scalar::Q;

/// Parameter of a Macdonald representation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MacdonaldParameter {
    /// Type A: one partition of `n`.
    TypeA(Partition),
    /// Types B/C: a pair `(α, β)` with `|α| + |β| = n`.
    TypeBC(Partition, Partition),
}

impl fmt::Display for MacdonaldParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MacdonaldParameter::TypeA(p) => write!(f, "{p}"),
            MacdonaldParameter::TypeBC(a, b) => write!(f, "({a}, {b})"),
        }
    }
}

/// A two-row symbol with `#top = #bottom + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Symbol {
    pub top: Vec<usize>,
    pub bottom: Vec<usize>,
}

impl Symbol {
    pub fn new(top: Vec<usize>, bottom: Vec<usize>) -> Result<Self> {
        if top.len() != bottom.len() + 1 {
            return Err(Error::InvalidParameters(format!(
                "symbol rows have lengths {} and {}",
                top.len(),
                bottom.len()
            )));
        }
        let increasing = |r: &[usize]| r.windows(2).all(|w| w[0] < w[1]);
        if !increasing(&top) || !increasing(&bottom) {
            return Err(Error::InvalidParameters("symbol rows must increase strictly".into()));
        }
        Ok(Self { top, bottom })
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let row = |r: &[usize]| r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ");
        write!(f, "({} / {})", row(&self.top), row(&self.bottom))
    }
}

/// `[2^p, 1^{q−p}]`.
fn two_one(p: usize, q: usize) -> Partition {
    Partition::from_blocks(&[(2, p), (1, q - p)])
}

/// The Macdonald parameter of `σ_K` for `SU(p,q)` and `Sp(p,q)`.
pub fn macdonald_parameter(spec: &PairSpec) -> Result<MacdonaldParameter> {
    match &spec.source {
        PairSource::Classical(ClassicalFamily::Su { p, q }) => Ok(MacdonaldParameter::TypeA(two_one(*p, *q))),
        PairSource::Classical(ClassicalFamily::SpQuat { p, q }) => {
            Ok(MacdonaldParameter::TypeBC(Partition::new(vec![]), two_one(*p, *q)))
        }
        _ => {
            Err(Error::NotCovered(format!("no Macdonald parameter is recorded for {}; use the Springer gate", spec.id)))
        }
    }
}

/// Symbol of a type B/C Macdonald parameter `(α, β)` of `n`.
///
/// With `α` padded to `m + 1` and `β` to `m` increasing parts (`m` minimal),
/// `top_i = α_i + 2(i−1)` and `bottom_i = β_i + 2(i−1) + 1`.
pub fn symbol_c(param: &MacdonaldParameter, n: usize) -> Result<Symbol> {
    let MacdonaldParameter::TypeBC(alpha, beta) = param else {
        return Err(Error::InvalidParameters("symbols need a pair of partitions".into()));
    };
    if alpha.size() + beta.size() != n {
        return Err(Error::InvalidParameters(format!("|α| + |β| = {} but n = {n}", alpha.size() + beta.size())));
    }
    let m = beta.len().max(alpha.len().saturating_sub(1));
    let padded = |p: &Partition, len: usize| -> Vec<usize> {
        let mut v = vec![0; len - p.len()];
        v.extend(p.parts().iter().rev());
        v
    };
    let a = padded(alpha, m + 1);
    let b = padded(beta, m);
    let top = a.iter().enumerate().map(|(i, x)| x + 2 * i).collect();
    let bottom = b.iter().enumerate().map(|(i, x)| x + 2 * i + 1).collect();
    Symbol::new(top, bottom)
}

/// One line of the gate's dimension trace.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateCheck {
    pub name: String,
    pub expected: usize,
    pub actual: usize,
}

/// Outcome of the Springer gate.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpringerVerdict {
    pub pair_id: String,
    pub is_springer: bool,
    pub orbit: Option<ComplexOrbit>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub checks: Vec<GateCheck>,
}

/// Accepts a table pair after checking `dim 𝒪 = 2·#Δ_n^+`, or reports why the
/// pair is excluded.
pub fn springer_gate(spec: &PairSpec, pair: &RealPair<Q>) -> Result<SpringerVerdict> {
    if !spec.springer {
        return Ok(SpringerVerdict {
            pair_id: spec.id.clone(),
            is_springer: false,
            orbit: None,
            reason: spec.reason.clone(),
            checks: vec![],
        });
    }
    let orbit = complex_orbit(spec, pair)?
        .ok_or_else(|| Error::Catalog(format!("{}: included pair without an orbit", spec.id)))?;
    let n_plus = pair.num_noncompact_positive();
    let mut checks = vec![GateCheck { name: "dim O = 2·#Δn+".into(), expected: 2 * n_plus, actual: orbit.dim }];
    match &spec.source {
        // The exceptional tables print the real dimension #Δn+.
        PairSource::Exceptional(e) => {
            if let Some(d) = e.dim_column {
                checks.push(GateCheck { name: "table dimension = #Δn+".into(), expected: d, actual: n_plus });
            }
        }
        PairSource::Classical(f) => {
            if let Some(d) = f.table_dim() {
                checks.push(GateCheck { name: "table dimension = dim O".into(), expected: d, actual: orbit.dim });
            }
        }
    }
    if let Some(bad) = checks.iter().find(|c| c.expected != c.actual) {
        return Err(Error::Catalog(format!("{}: {} fails ({} ≠ {})", spec.id, bad.name, bad.actual, bad.expected)));
    }
    Ok(SpringerVerdict { pair_id: spec.id.clone(), is_springer: true, orbit: Some(orbit), reason: None, checks })
}
