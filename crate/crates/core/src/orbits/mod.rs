//! Nilpotent orbits: partitions, signed tableaux, labelled diagrams and the
//! grading attached to a characteristic.

mod classical;
mod diagram;
mod grading;
mod partition;
mod tableau;

use serde::{Deserialize, Serialize};

pub use classical::ClassicalFamily;
pub use diagram::{decode_characteristic, decode_node_values, DiagramLabels};
pub use grading::{integral_node_values, Chamber, Grading, RealFormOrbit};
pub use partition::{natural_dimension, orbit_dimension, validate_partition, Partition};
pub use tableau::{enumerate_signed_tableaux, Sign, SignRule, SignedTableau};

use crate::catalog::{PairSource, PairSpec};
use crate::error::{Error, Result};
use crate::rootdata::{LieType, RealPair, Weight};
use crate::scalar::{Scalar, Q};

/// How a complex orbit is named.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrbitDescriptor {
    Partition(Partition),
    BalaCarter(String),
}

/// A complex nilpotent orbit with its dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexOrbit {
    pub lie_type: LieType,
    pub descriptor: OrbitDescriptor,
    pub dim: usize,
    /// Type D partitions with all parts even label two orbits.
    pub very_even: bool,
}

/// Dimension of `G·h`-orbit data read off a characteristic: the number of
/// roots minus those at levels 0 and 1.
pub fn orbit_dimension_from_grading<T: Scalar>(grading: &Grading<T>) -> usize {
    let hist = grading.level_histogram();
    let total: usize = hist.values().sum();
    total - hist.get(&0).copied().unwrap_or(0) - hist.get(&1).copied().unwrap_or(0)
}

/// The complex orbit of a catalog pair, or `None` if the pair has no Table entry.
pub fn complex_orbit(spec: &PairSpec, pair: &RealPair<Q>) -> Result<Option<ComplexOrbit>> {
    match &spec.source {
        PairSource::Classical(f) => {
            let Some(part) = f.orbit_partition() else { return Ok(None) };
            let dim = orbit_dimension(f.lie_type(), f.rank(), &part)?;
            let very_even = f.lie_type() == LieType::D && part.is_very_even();
            Ok(Some(ComplexOrbit {
                lie_type: f.lie_type(),
                descriptor: OrbitDescriptor::Partition(part),
                dim,
                very_even,
            }))
        }
        PairSource::Exceptional(e) => {
            let Some(label) = &e.orbit else { return Ok(None) };
            let forms = enumerate_real_forms(spec, pair)?;
            let first = forms.first().ok_or_else(|| Error::Catalog(format!("{}: no forms", spec.id)))?;
            let dim = orbit_dimension_from_grading(&first.grading);
            for f in &forms[1..] {
                let d = orbit_dimension_from_grading(&f.grading);
                if d != dim {
                    return Err(Error::invariant(
                        "same complex orbit",
                        format!("form {} has dim {d}, not {dim}", f.form_id),
                    ));
                }
            }
            Ok(Some(ComplexOrbit {
                lie_type: e.lie_type,
                descriptor: OrbitDescriptor::BalaCarter(label.clone()),
                dim,
                very_even: false,
            }))
        }
    }
}

/// All real forms of the pair's orbit, each checked against the grading invariants.
pub fn enumerate_real_forms(spec: &PairSpec, pair: &RealPair<Q>) -> Result<Vec<RealFormOrbit<Q>>> {
    match &spec.source {
        PairSource::Classical(f) => f
            .real_forms()?
            .into_iter()
            .enumerate()
            .map(|(k, (t, h))| RealFormOrbit::new(pair, k, t.to_string(), Weight::from_ints(&h), Chamber::Dynkin))
            .collect(),
        PairSource::Exceptional(e) => e
            .forms
            .iter()
            .enumerate()
            .map(|(k, labels)| {
                let h = decode_characteristic(pair, labels)?;
                RealFormOrbit::new(pair, k, labels.to_string(), h, Chamber::Diagram)
            })
            .collect(),
    }
}
