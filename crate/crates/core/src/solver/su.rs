//! The `SU(p,q)` constants: shuffle enumeration and the closed form.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Q;

fn check(p: usize, q: usize, k: usize) -> Result<()> {
    if p == 0 || q < p || k > p {
        return Err(Error::InvalidParameters(format!("need 1 ≤ p ≤ q and 0 ≤ k ≤ p, got p={p}, q={q}, k={k}")));
    }
    Ok(())
}

// Vandermonde ratio Π_{a<b}(x_a − x_b) / Π_{a<b}(b − a) for one block of `P_K`.
fn block_value(xs: &[i64]) -> Q {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for a in 0..xs.len() {
        for b in a + 1..xs.len() {
            num *= xs[a] - xs[b];
            den *= (b - a) as i64;
        }
    }
    Q::new(num, den)
}

/// `c_k` for `SU(p,q)` from the shuffle description of the surviving terms.
///
/// Each `(k, p−k)`-shuffle `i_1 > … > i_k`, `j_1 > … > j_{p−k}` of `p, …, 1`
/// contributes `P_K(i, j | j, q, …, p+1, i)` with sign `(−1)^{#A + #C}`, where
/// `#A = k(p−k)` and `#C = k(q−p)`.
pub fn compute_constant_shuffle_su(p: usize, q: usize, k: usize) -> Result<BigInt> {
    check(p, q, k)?;
    let n_sign = k * q + (p - k) * (q - p + k) + (q - p) * k;
    let nl = 2 * k * (p - k);
    let subsets = k * (p - k) + k * (q - p);
    let mut total = Q::zero();
    for mask in 0u64..(1u64 << p) {
        if mask.count_ones() as usize != k {
            continue;
        }
        // Values p..1 in descending order; bit v−1 marks membership in i.
        let is: Vec<i64> = (1..=p as i64).rev().filter(|v| mask >> (v - 1) & 1 == 1).collect();
        let js: Vec<i64> = (1..=p as i64).rev().filter(|v| mask >> (v - 1) & 1 == 0).collect();
        let left: Vec<i64> = is.iter().chain(&js).copied().collect();
        let middle: Vec<i64> = (p as i64 + 1..=q as i64).rev().collect();
        let right: Vec<i64> = js.iter().chain(&middle).chain(&is).copied().collect();
        total += block_value(&left) * block_value(&right);
    }
    if (n_sign + nl + subsets) % 2 == 1 {
        total = -total;
    }
    if !total.is_integer() {
        return Err(Error::invariant("integrality", format!("shuffle sum {total} is not an integer")));
    }
    Ok(total.to_integer())
}

/// `(−1)^{k(n−k)} · binom(p, k)` with `n = p + q`.
pub fn closed_form_su(p: usize, q: usize, k: usize) -> Result<BigInt> {
    check(p, q, k)?;
    let n = p + q;
    let binom = (0..k).fold(BigInt::one(), |acc, i| acc * (p - i) / (i + 1));
    Ok(if (k * (n - k)) % 2 == 1 { -binom } else { binom })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert_eq!(compute_constant_shuffle_su(1, 2, 0).unwrap(), BigInt::from(1));
        assert_eq!(compute_constant_shuffle_su(1, 2, 1).unwrap(), BigInt::from(1));
        assert_eq!(compute_constant_shuffle_su(2, 2, 1).unwrap(), BigInt::from(-2));
        assert_eq!(closed_form_su(2, 2, 1).unwrap(), BigInt::from(-2));
        assert!(compute_constant_shuffle_su(3, 2, 1).is_err());
        assert!(closed_form_su(2, 3, 3).is_err());
    }

    #[test]
    fn shuffle_matches_closed_form() {
        for q in 1..=8 {
            for p in 1..=q {
                for k in 0..=p {
                    assert_eq!(compute_constant_shuffle_su(p, q, k).unwrap(), closed_form_su(p, q, k).unwrap());
                }
            }
        }
    }
}
