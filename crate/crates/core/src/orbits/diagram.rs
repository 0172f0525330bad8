use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootdata::{RealPair, Weight};
use crate::scalar::Scalar;

/// Labels of an extended Dynkin diagram: node (1-based) → `α(h)`, plus the
/// extended node `−γ`. Unlisted nodes are 0, except that an unlabelled
/// noncompact node is solved from the extended-node equation.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramLabels {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ext: Option<i64>,
    #[serde(default)]
    pub nodes: BTreeMap<usize, i64>,
}

impl DiagramLabels {
    pub fn new(ext: Option<i64>, nodes: &[(usize, i64)]) -> Self {
        Self { ext, nodes: nodes.iter().copied().collect() }
    }
}

impl std::fmt::Display for DiagramLabels {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        if let Some(e) = self.ext {
            parts.push(format!("-γ:{e}"));
        }
        for (n, v) in &self.nodes {
            parts.push(format!("α{n}:{v}"));
        }
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Node values `α_i(h)` determined by the labels.
pub fn decode_node_values<T: Scalar>(pair: &RealPair<T>, labels: &DiagramLabels) -> Result<Vec<i64>> {
    let rank = pair.rank();
    if let Some(&bad) = labels.nodes.keys().find(|&&n| n == 0 || n > rank) {
        return Err(Error::InvalidParameters(format!("label on node {bad} outside 1..={rank}")));
    }
    let nc = pair.noncompact_node()?;
    let gamma = &pair.system().highest_root().coeffs;
    let mut values: Vec<i64> = (1..=rank).map(|i| labels.nodes.get(&i).copied().unwrap_or(0)).collect();
    if let Some(ext) = labels.ext {
        // (−γ)(h) = ext, i.e. Σ g_i h_i = −ext.
        let rest: i64 = (0..rank).filter(|&i| i != nc).map(|i| gamma[i] as i64 * values[i]).sum();
        let num = -ext - rest;
        let g = gamma[nc] as i64;
        match labels.nodes.get(&(nc + 1)) {
            Some(&printed) => {
                if printed * g != num {
                    return Err(Error::Inconsistent(format!(
                        "printed α{}(h) = {printed} but the extended node forces {num}/{g}",
                        nc + 1
                    )));
                }
            }
            None => {
                if num % g != 0 {
                    return Err(Error::NonIntegral(format!("α{}(h) = {num}/{g}", nc + 1)));
                }
                values[nc] = num / g;
            }
        }
    }
    Ok(values)
}

/// The characteristic `h` in ambient coordinates described by the labels.
pub fn decode_characteristic<T: Scalar>(pair: &RealPair<T>, labels: &DiagramLabels) -> Result<Weight<T>> {
    let values = decode_node_values(pair, labels)?;
    let tv: Vec<T> = values.iter().map(|&v| T::from_i64(v).unwrap()).collect();
    pair.system().dual_vector(&tv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbits::grading::Grading;
    use crate::rootdata::{build_root_system, LieType};

    #[test]
    fn g2_decode() {
        let pair = RealPair::new(build_root_system(LieType::G, 2).unwrap(), vec![1]).unwrap();
        let labels = DiagramLabels::new(Some(3), &[(1, 1)]);
        assert_eq!(decode_node_values(&pair, &labels).unwrap(), vec![1, -3]);
        let h = decode_characteristic(&pair, &labels).unwrap();
        let g = Grading::from_h(&pair, &h).unwrap();
        assert_eq!(g.u_roots.len() - g.p1_roots.len(), 4);
    }

    #[test]
    fn distinct_errors() {
        let pair = RealPair::new(build_root_system(LieType::G, 2).unwrap(), vec![1]).unwrap();
        let frac = DiagramLabels::new(Some(2), &[(1, 1)]);
        assert!(matches!(decode_node_values(&pair, &frac), Err(Error::NonIntegral(_))));
        let clash = DiagramLabels::new(Some(3), &[(1, 1), (2, 0)]);
        assert!(matches!(decode_node_values(&pair, &clash), Err(Error::Inconsistent(_))));
    }
}
