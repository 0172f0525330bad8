use std::fmt;

use serde::{Deserialize, Serialize};

use super::partition::Partition;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// Sign constraints on rows of equal length, per real form of the classical algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignRule {
    /// `su(p,q)`: no constraint.
    Unitary,
    /// `sp(2n,ℝ)`: odd rows of each length split evenly between leading signs.
    RealSymplectic,
    /// `so*(2n)`: even rows come in pairs with equal leading sign; odd rows split evenly.
    Star,
    /// `so(p,q)`: even rows of each length split evenly between leading signs.
    Orthogonal,
}

impl SignRule {
    fn allows(self, length: usize, plus: usize, minus: usize) -> bool {
        let even = length.is_multiple_of(2);
        match self {
            SignRule::Unitary => true,
            SignRule::RealSymplectic => even || plus == minus,
            SignRule::Star => {
                if even {
                    plus.is_multiple_of(2) && minus.is_multiple_of(2)
                } else {
                    plus == minus
                }
            }
            SignRule::Orthogonal => !even || plus == minus,
        }
    }
}

/// A signed Young tableau: rows with alternating signs, given by their leading sign.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignedTableau {
    pub rows: Vec<(usize, Sign)>,
}

impl SignedTableau {
    /// Counts of `+` and `−` boxes.
    pub fn signature(&self) -> (usize, usize) {
        let mut plus = 0;
        let mut minus = 0;
        for &(d, s) in &self.rows {
            let lead = d.div_ceil(2);
            let rest = d / 2;
            match s {
                Sign::Plus => {
                    plus += lead;
                    minus += rest;
                }
                Sign::Minus => {
                    minus += lead;
                    plus += rest;
                }
            }
        }
        (plus, minus)
    }

    /// Eigenvalues of the characteristic carried by `+` and `−` boxes.
    ///
    /// A row of length `d` carries `d−1, d−3, …, −(d−1)` along its boxes.
    /// Each list is sorted decreasingly.
    pub fn box_values(&self) -> (Vec<i64>, Vec<i64>) {
        let mut plus = Vec::new();
        let mut minus = Vec::new();
        for &(d, s) in &self.rows {
            let mut sign = s;
            for j in 0..d {
                let v = d as i64 - 1 - 2 * j as i64;
                match sign {
                    Sign::Plus => plus.push(v),
                    Sign::Minus => minus.push(v),
                }
                sign = sign.flip();
            }
        }
        plus.sort_unstable_by(|a, b| b.cmp(a));
        minus.sort_unstable_by(|a, b| b.cmp(a));
        (plus, minus)
    }

    /// Number of rows of length `d` with leading sign `s`.
    pub fn count(&self, d: usize, s: Sign) -> usize {
        self.rows.iter().filter(|&&(l, t)| l == d && t == s).count()
    }
}

impl fmt::Display for SignedTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &(d, s)) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, "|")?;
            }
            let mut sign = s;
            for _ in 0..d {
                write!(f, "{sign}")?;
                sign = sign.flip();
            }
        }
        Ok(())
    }
}

/// All signed tableaux of the given shape with `plus` `+` boxes obeying `rule`.
///
/// Rows of equal length are unordered, so a tableau is determined by how many
/// rows of each length start with `+`. Output is ordered by those counts,
/// longest rows first, each count increasing.
pub fn enumerate_signed_tableaux(shape: &Partition, rule: SignRule, plus: usize, minus: usize) -> Vec<SignedTableau> {
    let blocks = shape.blocks();
    let mut out = Vec::new();
    let mut choice = vec![0usize; blocks.len()];
    fn rec(
        i: usize,
        blocks: &[(usize, usize)],
        choice: &mut [usize],
        rule: SignRule,
        target: (usize, usize),
        out: &mut Vec<SignedTableau>,
    ) {
        if i == blocks.len() {
            let mut rows = Vec::new();
            for (&(d, m), &a) in blocks.iter().zip(choice.iter()) {
                rows.extend(std::iter::repeat_n((d, Sign::Plus), a));
                rows.extend(std::iter::repeat_n((d, Sign::Minus), m - a));
            }
            let t = SignedTableau { rows };
            if t.signature() == target {
                out.push(t);
            }
            return;
        }
        let (d, m) = blocks[i];
        for a in 0..=m {
            if rule.allows(d, a, m - a) {
                choice[i] = a;
                rec(i + 1, blocks, choice, rule, target, out);
            }
        }
    }
    rec(0, &blocks, &mut choice, rule, (plus, minus), &mut out);
    out
}
