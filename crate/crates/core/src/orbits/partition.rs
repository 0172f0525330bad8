use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootdata::LieType;

/// A partition `[d_1 ≥ d_2 ≥ …]`, stored with positive parts only.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Sorts the parts decreasingly and drops zeros.
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&d| d > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self(parts)
    }

    /// `[d^m]` blocks, e.g. `from_blocks(&[(2, 3), (1, 2)]) = [2,2,2,1,1]`.
    pub fn from_blocks(blocks: &[(usize, usize)]) -> Self {
        Self::new(blocks.iter().flat_map(|&(d, m)| std::iter::repeat_n(d, m)).collect())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn multiplicity(&self, d: usize) -> usize {
        self.0.iter().filter(|&&x| x == d).count()
    }

    pub fn transpose(&self) -> Partition {
        let max = self.0.first().copied().unwrap_or(0);
        Partition((1..=max).map(|i| self.0.iter().filter(|&&d| d >= i).count()).collect())
    }

    /// Distinct parts in decreasing order with multiplicities.
    pub fn blocks(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &d in &self.0 {
            match out.last_mut() {
                Some((last, m)) if *last == d => *m += 1,
                _ => out.push((d, 1)),
            }
        }
        out
    }

    /// Type D partitions with only even parts, each of even multiplicity.
    pub fn is_very_even(&self) -> bool {
        !self.0.is_empty() && self.blocks().iter().all(|&(d, m)| d % 2 == 0 && m % 2 == 0)
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for (i, (d, m)) in self.blocks().into_iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            if m == 1 {
                write!(f, "{d}")?;
            } else {
                write!(f, "{d}^{m}")?;
            }
        }
        write!(f, "]")
    }
}

/// Size of the natural representation for a classical type of the given rank.
pub fn natural_dimension(lie_type: LieType, rank: usize) -> Result<usize> {
    match lie_type {
        LieType::A => Ok(rank + 1),
        LieType::B => Ok(2 * rank + 1),
        LieType::C | LieType::D => Ok(2 * rank),
        other => Err(Error::InvalidType(format!("type {other} has no partition classification"))),
    }
}

/// Checks the classical parity rules for a partition of the natural representation.
///
/// B and D: even parts occur with even multiplicity. C: odd parts occur with
/// even multiplicity. A: any partition of `n + 1`.
pub fn validate_partition(lie_type: LieType, rank: usize, partition: &Partition) -> Result<bool> {
    let n = natural_dimension(lie_type, rank)?;
    if partition.size() != n {
        return Ok(false);
    }
    let ok = match lie_type {
        LieType::A => true,
        LieType::B | LieType::D => partition.blocks().iter().all(|&(d, m)| d % 2 == 1 || m % 2 == 0),
        LieType::C => partition.blocks().iter().all(|&(d, m)| d % 2 == 0 || m % 2 == 0),
        _ => unreachable!(),
    };
    Ok(ok)
}

/// Complex dimension of the nilpotent orbit with the given partition.
pub fn orbit_dimension(lie_type: LieType, rank: usize, partition: &Partition) -> Result<usize> {
    if !validate_partition(lie_type, rank, partition)? {
        return Err(Error::InvalidPartition(format!("{partition} for {lie_type}{rank}")));
    }
    let s2: usize = partition.transpose().parts().iter().map(|s| s * s).sum();
    let odd = partition.parts().iter().filter(|&&d| d % 2 == 1).count();
    let n = rank;
    let dim = match lie_type {
        LieType::A => (n + 1) * (n + 1) - s2,
        LieType::B => (4 * n * n + 2 * n + odd - s2) / 2,
        LieType::C => (4 * n * n + 2 * n - odd - s2) / 2,
        LieType::D => (4 * n * n - 2 * n + odd - s2) / 2,
        _ => unreachable!(),
    };
    Ok(dim)
}
