//! Classical real families of Table-1 type and their real orbit forms.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::partition::Partition;
use super::tableau::{enumerate_signed_tableaux, SignRule, SignedTableau};
use crate::error::{Error, Result};
use crate::rootdata::{dynkin, LieType};

/// An equal-rank classical real form with its parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum ClassicalFamily {
    /// `SU(p,q)`, `1 ≤ p ≤ q`.
    Su { p: usize, q: usize },
    /// `SO_e(2p,2q+1)`, `q ≥ p−1 ≥ 0`.
    SoOdd { p: usize, q: usize },
    /// `Sp(2n,ℝ)`, `n ≥ 1`.
    SpReal { n: usize },
    /// `SO*(2n)`, `n ≥ 3`.
    SoStar { n: usize },
    /// `SO_e(2p,2q)`, `1 ≤ p ≤ q`, `p+q ≥ 3`.
    SoEven { p: usize, q: usize },
    /// `Sp(p,q)`, `1 ≤ p ≤ q`.
    SpQuat { p: usize, q: usize },
}

impl ClassicalFamily {
    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            ClassicalFamily::Su { p, q } => p >= 1 && q >= p,
            ClassicalFamily::SoOdd { p, q } => p >= 1 && q + 1 >= p,
            ClassicalFamily::SpReal { n } => n >= 1,
            ClassicalFamily::SoStar { n } => n >= 3,
            ClassicalFamily::SoEven { p, q } => p >= 1 && q >= p && p + q >= 3,
            ClassicalFamily::SpQuat { p, q } => p >= 1 && q >= p,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameters(format!("{self} violates the family constraints")))
        }
    }

    pub fn lie_type(&self) -> LieType {
        match self {
            ClassicalFamily::Su { .. } => LieType::A,
            ClassicalFamily::SoOdd { .. } => LieType::B,
            ClassicalFamily::SpReal { .. } | ClassicalFamily::SpQuat { .. } => LieType::C,
            ClassicalFamily::SoStar { .. } | ClassicalFamily::SoEven { .. } => LieType::D,
        }
    }

    pub fn rank(&self) -> usize {
        match *self {
            ClassicalFamily::Su { p, q } => p + q - 1,
            ClassicalFamily::SoOdd { p, q } | ClassicalFamily::SoEven { p, q } | ClassicalFamily::SpQuat { p, q } => {
                p + q
            }
            ClassicalFamily::SpReal { n } | ClassicalFamily::SoStar { n } => n,
        }
    }

    /// The noncompact simple root, 1-based.
    pub fn noncompact_node(&self) -> usize {
        match *self {
            ClassicalFamily::Su { p, .. }
            | ClassicalFamily::SoOdd { p, .. }
            | ClassicalFamily::SoEven { p, .. }
            | ClassicalFamily::SpQuat { p, .. } => p,
            ClassicalFamily::SpReal { n } | ClassicalFamily::SoStar { n } => n,
        }
    }

    /// Expected Dynkin type of `K`.
    pub fn k_type_label(&self) -> String {
        match *self {
            ClassicalFamily::Su { p, q } => dynkin::label_from_factors(&[('A', p - 1), ('A', q - 1)], 1),
            ClassicalFamily::SoOdd { p, q } => dynkin::label_from_factors(&[('D', p), ('B', q)], 0),
            ClassicalFamily::SpReal { n } | ClassicalFamily::SoStar { n } => {
                dynkin::label_from_factors(&[('A', n - 1)], 1)
            }
            ClassicalFamily::SoEven { p, q } => dynkin::label_from_factors(&[('D', p), ('D', q)], 0),
            ClassicalFamily::SpQuat { p, q } => dynkin::label_from_factors(&[('C', p), ('C', q)], 0),
        }
    }

    /// The Table-1 orbit, or `None` for `Sp(p,q)`.
    pub fn orbit_partition(&self) -> Option<Partition> {
        match *self {
            ClassicalFamily::Su { p, q } => Some(Partition::from_blocks(&[(2, p), (1, q - p)])),
            ClassicalFamily::SoOdd { p, q } => {
                Some(Partition::from_blocks(&[(3, 1), (2, 2 * p - 2), (1, 2 * (q + 1 - p))]))
            }
            ClassicalFamily::SpReal { n } => Some(Partition::from_blocks(&[(2, n)])),
            ClassicalFamily::SoStar { n } => Some(if n % 2 == 0 {
                Partition::from_blocks(&[(2, n)])
            } else {
                Partition::from_blocks(&[(2, n - 1), (1, 2)])
            }),
            ClassicalFamily::SoEven { p, q } => {
                Some(Partition::from_blocks(&[(3, 1), (2, 2 * p - 2), (1, 2 * (q - p) + 1)]))
            }
            ClassicalFamily::SpQuat { .. } => None,
        }
    }

    /// Table-1 dimension column: `dim 𝒪^ℂ`.
    pub fn table_dim(&self) -> Option<usize> {
        match *self {
            ClassicalFamily::Su { p, q } => Some(2 * p * q),
            ClassicalFamily::SoOdd { p, q } => Some(2 * p * (2 * q + 1)),
            ClassicalFamily::SpReal { n } => Some(n * (n + 1)),
            ClassicalFamily::SoStar { n } => Some(n * (n - 1)),
            ClassicalFamily::SoEven { p, q } => Some(4 * p * q),
            ClassicalFamily::SpQuat { .. } => None,
        }
    }

    /// Table-1 "# real forms" column.
    pub fn table_real_forms(&self) -> Option<usize> {
        match *self {
            ClassicalFamily::Su { p, .. } => Some(p + 1),
            ClassicalFamily::SoOdd { p, q } => Some(if q + 1 == p { 2 } else { 3 }),
            ClassicalFamily::SpReal { n } => Some(n + 1),
            ClassicalFamily::SoStar { n } => Some(if n % 2 == 0 { n / 2 + 1 } else { n.div_ceil(2) }),
            ClassicalFamily::SoEven { p, q } => Some(if q == p { 4 } else { 3 }),
            ClassicalFamily::SpQuat { .. } => None,
        }
    }

    fn sign_rule(&self) -> SignRule {
        match self {
            ClassicalFamily::Su { .. } => SignRule::Unitary,
            ClassicalFamily::SpReal { .. } => SignRule::RealSymplectic,
            ClassicalFamily::SoStar { .. } => SignRule::Star,
            _ => SignRule::Orthogonal,
        }
    }

    /// Numbers of `+` and `−` boxes for the defining signature.
    fn signature(&self) -> (usize, usize) {
        match *self {
            ClassicalFamily::Su { p, q } => (p, q),
            ClassicalFamily::SoOdd { p, q } => (2 * p, 2 * q + 1),
            ClassicalFamily::SpReal { n } | ClassicalFamily::SoStar { n } => (n, n),
            ClassicalFamily::SoEven { p, q } => (2 * p, 2 * q),
            ClassicalFamily::SpQuat { p, q } => (2 * p, 2 * q),
        }
    }

    /// Real forms of the Table-1 orbit as signed tableaux with their
    /// characteristics in ε-coordinates.
    pub fn real_forms(&self) -> Result<Vec<(SignedTableau, Vec<i64>)>> {
        self.validate()?;
        let shape = self.orbit_partition().ok_or_else(|| Error::NotCovered(format!("{self} has no Table-1 orbit")))?;
        let (plus, minus) = self.signature();
        let mut out = Vec::new();
        for t in enumerate_signed_tableaux(&shape, self.sign_rule(), plus, minus) {
            let (pv, mv) = t.box_values();
            let hs: Vec<Vec<i64>> = match *self {
                ClassicalFamily::Su { .. } => vec![[pv, mv].concat()],
                ClassicalFamily::SpReal { .. } | ClassicalFamily::SoStar { .. } => vec![pv],
                ClassicalFamily::SoOdd { .. } => {
                    let b = half(&mv)?;
                    d_block_variants(&pv)?.into_iter().map(|d| [d, b.clone()].concat()).collect()
                }
                ClassicalFamily::SoEven { .. } => {
                    let mut v = Vec::new();
                    for d1 in d_block_variants(&pv)? {
                        for d2 in d_block_variants(&mv)? {
                            v.push([d1.clone(), d2].concat());
                        }
                    }
                    v
                }
                ClassicalFamily::SpQuat { .. } => unreachable!(),
            };
            out.extend(hs.into_iter().map(|h| (t.clone(), h)));
        }
        Ok(out)
    }
}

/// Nonnegative half of a multiset symmetric under negation (sorted decreasingly).
fn half(values: &[i64]) -> Result<Vec<i64>> {
    let n = values.len();
    for i in 0..n {
        if values[i] != -values[n - 1 - i] {
            return Err(Error::invariant("symmetric eigenvalues", format!("{values:?}")));
        }
    }
    Ok(values[..n / 2].to_vec())
}

// W(D_m) changes an even number of signs, so without a zero coordinate the
// last sign gives a second, non-conjugate characteristic.
fn d_block_variants(values: &[i64]) -> Result<Vec<Vec<i64>>> {
    let h = half(values)?;
    if h.is_empty() || h.contains(&0) {
        return Ok(vec![h]);
    }
    let mut flipped = h.clone();
    let last = flipped.len() - 1;
    flipped[last] = -flipped[last];
    Ok(vec![h, flipped])
}

impl fmt::Display for ClassicalFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ClassicalFamily::Su { p, q } => write!(f, "SU({p},{q})"),
            ClassicalFamily::SoOdd { p, q } => write!(f, "SO_e({},{})", 2 * p, 2 * q + 1),
            ClassicalFamily::SpReal { n } => write!(f, "Sp({},R)", 2 * n),
            ClassicalFamily::SoStar { n } => write!(f, "SO*({})", 2 * n),
            ClassicalFamily::SoEven { p, q } => write!(f, "SO_e({},{})", 2 * p, 2 * q),
            ClassicalFamily::SpQuat { p, q } => write!(f, "Sp({p},{q})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn su_characteristics_match_closed_form() {
        for p in 1..=3 {
            for q in p..=4 {
                let forms = ClassicalFamily::Su { p, q }.real_forms().unwrap();
                assert_eq!(forms.len(), p + 1);
                for (k, (_, h)) in forms.iter().enumerate() {
                    let mut want = vec![1; k];
                    want.extend(vec![-1; p - k]);
                    want.extend(vec![1; p - k]);
                    want.extend(vec![0; q - p]);
                    want.extend(vec![-1; k]);
                    assert_eq!(h, &want, "p={p} q={q} k={k}");
                }
            }
        }
    }

    #[test]
    fn counts_match_table() {
        let fams = [
            ClassicalFamily::SoOdd { p: 1, q: 0 },
            ClassicalFamily::SoOdd { p: 2, q: 1 },
            ClassicalFamily::SoOdd { p: 2, q: 3 },
            ClassicalFamily::SpReal { n: 4 },
            ClassicalFamily::SoStar { n: 4 },
            ClassicalFamily::SoStar { n: 5 },
            ClassicalFamily::SoEven { p: 2, q: 2 },
            ClassicalFamily::SoEven { p: 1, q: 3 },
        ];
        for f in fams {
            assert_eq!(Some(f.real_forms().unwrap().len()), f.table_real_forms(), "{f}");
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(ClassicalFamily::Su { p: 0, q: 2 }.validate().is_err());
        assert!(ClassicalFamily::SoOdd { p: 3, q: 1 }.validate().is_err());
        assert!(ClassicalFamily::SpQuat { p: 1, q: 1 }.real_forms().is_err());
    }
}
