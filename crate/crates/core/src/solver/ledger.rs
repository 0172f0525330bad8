//! The shift ledger: a sorted map from lattice shifts to integer coefficients.
//!
//! Shifts are written in simple-root coordinates and packed into one integer
//! key with a biased bit field per coordinate. Translating every point by the
//! same vector is then a single wrapping addition on the key, which preserves
//! key order, so a fold step is a linear merge of two sorted runs.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Bit layout of packed shift keys.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KeyLayout {
    /// Bias added to each coordinate so stored fields are nonnegative.
    pub bias: Vec<i64>,
    /// Bit offset of each field.
    pub offset: Vec<u32>,
    /// Width of each field.
    pub width: Vec<u32>,
}

impl KeyLayout {
    /// Layout able to hold `−Σ_{β∈S} β` for every subset `S` of `roots`.
    pub fn for_roots(rank: usize, roots: &[Vec<i32>]) -> Result<Self> {
        let mut bias = vec![0i64; rank];
        let mut span = vec![0i64; rank];
        for r in roots {
            for i in 0..rank {
                let c = r[i] as i64;
                if c > 0 {
                    bias[i] += c;
                }
                span[i] += c.abs();
            }
        }
        let width: Vec<u32> = span.iter().map(|&s| 64 - (s as u64).leading_zeros()).map(|w| w.max(1)).collect();
        let mut offset = Vec::with_capacity(rank);
        let mut acc = 0u32;
        for &w in &width {
            offset.push(acc);
            acc += w;
        }
        if acc > 128 {
            return Err(Error::Guard(format!("shift keys need {acc} bits")));
        }
        Ok(Self { bias, offset, width })
    }

    pub fn total_bits(&self) -> u32 {
        self.offset.last().copied().unwrap_or(0) + self.width.last().copied().unwrap_or(0)
    }

    pub fn rank(&self) -> usize {
        self.bias.len()
    }

    /// Key of the zero shift.
    pub fn origin(&self) -> u128 {
        self.bias.iter().zip(&self.offset).fold(0u128, |k, (&b, &o)| k | ((b as u128) << o))
    }

    /// Signed translation amount for adding `v` to a shift, as a wrapping key delta.
    pub fn delta(&self, v: &[i32]) -> u128 {
        v.iter().zip(&self.offset).fold(0u128, |k, (&c, &o)| k.wrapping_add(((c as i128) << o) as u128))
    }

    /// Shift coordinates of a key.
    pub fn decode(&self, key: u128, out: &mut [i64]) {
        for (i, o) in out.iter_mut().enumerate().take(self.rank()) {
            let mask = (1u128 << self.width[i]) - 1;
            *o = ((key >> self.offset[i]) & mask) as i64 - self.bias[i];
        }
    }
}

/// Fixed-width key types used by the fold.
pub trait PackedKey: Copy + Ord + Send + Sync + 'static {
    fn from_u128(v: u128) -> Self;
    fn to_u128(self) -> u128;
    fn wrapping_add(self, other: Self) -> Self;
}

impl PackedKey for u64 {
    fn from_u128(v: u128) -> Self {
        v as u64
    }
    fn to_u128(self) -> u128 {
        self as u128
    }
    fn wrapping_add(self, other: Self) -> Self {
        u64::wrapping_add(self, other)
    }
}

impl PackedKey for u128 {
    fn from_u128(v: u128) -> Self {
        v
    }
    fn to_u128(self) -> u128 {
        self
    }
    fn wrapping_add(self, other: Self) -> Self {
        u128::wrapping_add(self, other)
    }
}

/// Coefficient map produced by folding `Π_β (1 − e^{−β})` into `{0 ↦ 1}`.
///
/// Coefficients are `i64`: the fold roots lie in an open half-space, so the
/// subsets with a common sum form an antichain and every coefficient is at
/// most `binom(m, m/2)` in absolute value, which fits for `m ≤ 64`.
#[derive(Clone, Debug)]
pub struct ShiftLedger<K: PackedKey = u128> {
    layout: KeyLayout,
    entries: Vec<(K, i64)>,
    folded: usize,
}

impl<K: PackedKey> ShiftLedger<K> {
    /// The ledger `{0 ↦ 1}`.
    pub fn new(layout: KeyLayout) -> Self {
        let origin = K::from_u128(layout.origin());
        Self { layout, entries: vec![(origin, 1)], folded: 0 }
    }

    pub(crate) fn from_parts(layout: KeyLayout, entries: Vec<(K, i64)>, folded: usize) -> Self {
        Self { layout, entries, folded }
    }

    pub fn layout(&self) -> &KeyLayout {
        &self.layout
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of roots folded so far.
    pub fn folded(&self) -> usize {
        self.folded
    }

    pub fn entries(&self) -> &[(K, i64)] {
        &self.entries
    }

    /// `L ← L − shift(L, −β)`.
    pub fn fold(&mut self, beta: &[i32]) -> Result<()> {
        if self.folded >= 64 {
            return Err(Error::Guard("more than 64 folded roots overflow i64 coefficients".into()));
        }
        let neg: Vec<i32> = beta.iter().map(|c| -c).collect();
        let delta = K::from_u128(self.layout.delta(&neg));
        let a = &self.entries;
        let mut out: Vec<(K, i64)> = Vec::with_capacity(a.len() * 2);
        let (mut i, mut j) = (0, 0);
        // Second run: (k + delta, −c) for each (k, c) in a; same order as a.
        while i < a.len() || j < a.len() {
            let bk = (j < a.len()).then(|| a[j].0.wrapping_add(delta));
            match (i < a.len(), bk) {
                (true, Some(b)) if a[i].0 == b => {
                    let c = a[i].1 - a[j].1;
                    if c != 0 {
                        out.push((b, c));
                    }
                    i += 1;
                    j += 1;
                }
                (true, Some(b)) if a[i].0 < b => {
                    out.push(a[i]);
                    i += 1;
                }
                (_, Some(b)) => {
                    out.push((b, -a[j].1));
                    j += 1;
                }
                (true, None) => {
                    out.push(a[i]);
                    i += 1;
                }
                (false, None) => unreachable!(),
            }
        }
        out.shrink_to_fit();
        self.entries = out;
        self.folded += 1;
        Ok(())
    }

    /// Shift coordinates (simple-root basis) and coefficient of each entry.
    pub fn iter_shifts(&self) -> impl Iterator<Item = (Vec<i64>, i64)> + '_ {
        self.entries.iter().map(move |&(k, c)| {
            let mut v = vec![0; self.layout.rank()];
            self.layout.decode(k.to_u128(), &mut v);
            (v, c)
        })
    }

    /// `Σ_p L(p)`.
    pub fn coefficient_sum(&self) -> i128 {
        self.entries.iter().map(|&(_, c)| c as i128).sum()
    }

    /// `Σ_p |L(p)|`.
    pub fn abs_sum(&self) -> u128 {
        self.entries.iter().map(|&(_, c)| c.unsigned_abs() as u128).sum()
    }
}
