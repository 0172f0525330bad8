//! Direct subset enumeration of the constant identity.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::eval::product;
use super::sign_power;
use crate::error::{Error, Result};
use crate::orbits::RealFormOrbit;
use crate::rootdata::{RealPair, Weight};
use crate::scalar::Q;

/// Largest `#Δ_n^+(𝔩) + #Δ(𝔭_1)` the naive engine accepts.
pub const NAIVE_GUARD: usize = 24;

/// Which form of the identity to enumerate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    /// Base point `λ − ρ_n(𝔩)`, roots of `A` added, sign `(−1)^N`.
    Additive,
    /// Base point `λ + ρ_n(𝔩)`, roots of `A` subtracted, sign `(−1)^{N + #Δ_n^+(𝔩)}`.
    Subtractive,
}

/// The Dynkin-normalized quotient by enumeration of all `2^m` subsets.
///
/// Subsets are visited in Gray-code order; the pairings `⟨p, α⟩` with the
/// compact positive roots are kept as scaled integers and updated by one root
/// per step.
pub fn compute_constant_naive(
    pair: &RealPair<Q>,
    form: &RealFormOrbit<Q>,
    lambda0: &Weight<Q>,
    variant: Variant,
) -> Result<Q> {
    let g = &form.grading;
    let m = g.nl_roots.len() + g.p1_roots.len();
    if m > NAIVE_GUARD {
        return Err(Error::Guard(format!(
            "{m} roots to enumerate exceed the naive limit of {NAIVE_GUARD}; use the dp method"
        )));
    }
    let pkl = g.weyl_kl.eval(lambda0);
    if pkl.is_zero() {
        return Err(Error::DegeneratePoint(format!("P_(K∩L) vanishes at {lambda0}; use ρ_c(l) = {}", g.rho_c_l)));
    }
    let (base, a_sign, sign) = match variant {
        Variant::Additive => (lambda0 - &g.rho_n_l, Q::one(), sign_power(g.n_sign)),
        Variant::Subtractive => (lambda0 + &g.rho_n_l, -Q::one(), sign_power(g.n_sign + g.nl_roots.len())),
    };
    // Step vectors: +β for A in the additive form, −β otherwise.
    let steps: Vec<Weight<Q>> =
        g.nl_roots.iter().map(|r| r.vector.scale(&a_sign)).chain(g.p1_roots.iter().map(|r| -&r.vector)).collect();
    // Wall test in integers: D·⟨p, α⟩ for a common denominator D.
    let compact = pair.weyl_k().roots();
    let raw_base: Vec<Q> = compact.iter().map(|a| base.dot(a)).collect();
    let raw_steps: Vec<Vec<Q>> = steps.iter().map(|s| compact.iter().map(|a| s.dot(a)).collect()).collect();
    let scale = raw_base.iter().chain(raw_steps.iter().flatten()).fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let to_int = |q: &Q| -> Result<i64> {
        (q * &scale).to_integer().to_i64().ok_or_else(|| Error::Guard("pairings exceed i64".into()))
    };
    let mut pairing = raw_base.iter().map(to_int).collect::<Result<Vec<i64>>>()?;
    let deltas =
        raw_steps.iter().map(|row| row.iter().map(to_int).collect::<Result<Vec<i64>>>()).collect::<Result<Vec<_>>>()?;
    let mut in_set = vec![false; m];
    let mut parity = false;
    let mut total = BigInt::zero();
    let mut add_term = |pairing: &[i64], parity: bool| {
        if pairing.contains(&0) {
            return;
        }
        let v = product(pairing);
        if parity {
            total -= v;
        } else {
            total += v;
        }
    };
    add_term(&pairing, parity);
    for step in 1u64..(1u64 << m) {
        let bit = step.trailing_zeros() as usize;
        let entering = !in_set[bit];
        in_set[bit] = entering;
        for (p, d) in pairing.iter_mut().zip(&deltas[bit]) {
            if entering {
                *p += d;
            } else {
                *p -= d;
            }
        }
        parity = !parity;
        add_term(&pairing, parity);
    }
    let denominator = num_traits::pow(Q::from_integer(scale), compact.len()) * pair.weyl_k().denominator();
    Ok(sign * Q::from_integer(total) / denominator / pkl)
}
