//! Batched exact evaluation of `P_K` on ledger points.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use super::ledger::{PackedKey, ShiftLedger};
use crate::error::{Error, Result};
use crate::rootdata::{RealPair, Weight};
use crate::scalar::Q;

/// `P_K(λ_0 + Σ s_i α_i)` as an integer polynomial in the shift `s`.
///
/// Every pairing is scaled by a common `D` so that
/// `D⟨λ_0 + Σ s_i α_i, α⟩ = base_α + Σ s_i g_{α,i}` with integer data.
#[derive(Clone, Debug)]
pub struct IntegerEvaluator {
    rank: usize,
    base: Vec<i64>,
    /// Row-major `[compact root][node]`.
    gram: Vec<i64>,
    /// `D^{#Δ_c^+} · Π ⟨ρ_c, α⟩`.
    denominator: Q,
}

impl IntegerEvaluator {
    pub fn new(pair: &RealPair<Q>, lambda0: &Weight<Q>) -> Result<Self> {
        let rank = pair.rank();
        let simple = pair.system().simple_roots();
        let compact: Vec<&Weight<Q>> = pair.compact_positive().map(|r| &r.vector).collect();
        let mut scale = BigInt::one();
        let mut raw_base = Vec::with_capacity(compact.len());
        let mut raw_gram = Vec::with_capacity(compact.len() * rank);
        for a in &compact {
            let b = lambda0.dot(a);
            scale = scale.lcm(b.denom());
            raw_base.push(b);
            for s in simple {
                let g = s.dot(a);
                scale = scale.lcm(g.denom());
                raw_gram.push(g);
            }
        }
        let d = Q::from_integer(scale.clone());
        let to_i64 = |q: &Q| -> Result<i64> {
            (q * &d).to_integer().to_i64().ok_or_else(|| Error::Guard("evaluation data exceeds i64".into()))
        };
        let base = raw_base.iter().map(to_i64).collect::<Result<Vec<_>>>()?;
        let gram = raw_gram.iter().map(to_i64).collect::<Result<Vec<_>>>()?;
        let pow = num_traits::pow(d, compact.len());
        let denominator = pow * pair.weyl_k().denominator();
        Ok(Self { rank, base, gram, denominator })
    }

    pub fn denominator(&self) -> &Q {
        &self.denominator
    }

    /// `Π_α (base_α + Σ s_i g_{α,i})`, or zero on a wall.
    pub fn scaled_product(&self, shift: &[i64]) -> BigInt {
        let mut factors = [0i64; 128];
        let m = self.base.len();
        let mut buf: Vec<i64>;
        let f: &mut [i64] = if m <= factors.len() {
            &mut factors[..m]
        } else {
            buf = vec![0; m];
            &mut buf
        };
        for (k, out) in f.iter_mut().enumerate() {
            let row = &self.gram[k * self.rank..(k + 1) * self.rank];
            let v = self.base[k] + row.iter().zip(shift).map(|(g, s)| g * s).sum::<i64>();
            if v == 0 {
                return BigInt::zero();
            }
            *out = v;
        }
        product(f)
    }

    /// `Σ_p L(p) · D^m Π ⟨p, α⟩` over the ledger, in parallel.
    pub fn weighted_sum<K: PackedKey>(&self, ledger: &ShiftLedger<K>) -> BigInt {
        let layout = ledger.layout();
        ledger
            .entries()
            .par_chunks(4096)
            .map(|chunk| {
                let mut shift = vec![0i64; self.rank];
                let mut acc = BigInt::zero();
                for &(k, c) in chunk {
                    layout.decode(k.to_u128(), &mut shift);
                    let p = self.scaled_product(&shift);
                    if !p.is_zero() {
                        acc += p * c;
                    }
                }
                acc
            })
            .reduce(BigInt::zero, |a, b| a + b)
    }
}

// Multiplies small factors in i128 chunks before touching big integers.
pub(crate) fn product(factors: &[i64]) -> BigInt {
    let mut big: Option<BigInt> = None;
    let mut acc: i128 = 1;
    for &f in factors {
        match acc.checked_mul(f as i128) {
            Some(v) => acc = v,
            None => {
                big = Some(match big {
                    Some(b) => b * acc,
                    None => BigInt::from(acc),
                });
                acc = f as i128;
            }
        }
    }
    match big {
        Some(b) => b * acc,
        None => BigInt::from(acc),
    }
}
