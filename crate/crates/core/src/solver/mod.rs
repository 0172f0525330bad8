//! Exact evaluation of the constants `c_k`.
//!
//! For a real form with grading data `(N, Δ_n^+(𝔩), Δ(𝔭_1))` the constant is
//! defined by the polynomial identity
//!
//! ```text
//! c · P_{K∩L}(λ) = (−1)^N Σ_{A,C} (−1)^{#A+#C} P_K(λ − ρ_n(𝔩) + 2ρ(A) − 2ρ(C))
//!                = (−1)^{N + #Δ_n^+(𝔩)} Σ_{A,C} (−1)^{#A+#C} P_K(λ + ρ_n(𝔩) − 2ρ(A) − 2ρ(C))
//! ```
//!
//! with `A ⊆ Δ_n^+(𝔩)`, `C ⊆ Δ(𝔭_1)`, evaluated at a point with
//! `P_{K∩L}(λ) ≠ 0`. The second line replaces `A` by its complement. It
//! subtracts every root, so the DP engine folds it into a [`ShiftLedger`]
//! anchored at `λ + ρ_n(𝔩)`. The naive engine enumerates subsets of either line.

mod checkpoint;
mod eval;
mod ledger;
mod naive;
mod su;

use std::path::PathBuf;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

pub use checkpoint::Checkpoint;
pub use eval::IntegerEvaluator;
pub use ledger::{KeyLayout, PackedKey, ShiftLedger};
pub use naive::{compute_constant_naive, Variant, NAIVE_GUARD};
pub use su::{closed_form_su, compute_constant_shuffle_su};

use crate::error::{Error, Result};
use crate::orbits::RealFormOrbit;
use crate::rootdata::{RealPair, Weight};
use crate::scalar::{as_integer, Q};

/// How a constant was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Dp,
    Naive,
    ShuffleOracle,
    ClosedForm,
}

impl std::str::FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dp" => Ok(Method::Dp),
            "naive" => Ok(Method::Naive),
            "shuffle" | "shuffle-oracle" => Ok(Method::ShuffleOracle),
            "closed" | "closed-form" => Ok(Method::ClosedForm),
            other => Err(Error::InvalidParameters(format!("unknown method {other:?}"))),
        }
    }
}

/// A computed constant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstantResult {
    pub pair_id: String,
    pub form_id: usize,
    /// The constant in the diagram-chamber normalization of `P_K`.
    #[serde(with = "bigint_string")]
    pub c: BigInt,
    /// The constant with `P_K` normalized by the Dynkin positive system.
    #[serde(with = "bigint_string")]
    pub c_dynkin: BigInt,
    pub method: Method,
    pub eval_points_used: usize,
    pub distinct_shifts: usize,
    pub fold_roots: usize,
    pub elapsed_ms: u64,
}

pub(crate) mod bigint_string {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// `(−1)^k` as a rational.
pub(crate) fn sign_power(k: usize) -> Q {
    if k.is_multiple_of(2) {
        Q::one()
    } else {
        -Q::one()
    }
}

/// `±1` converting Dynkin-normalized constants to the diagram chamber.
pub fn normalization_sign(pair: &RealPair<Q>) -> Result<Q> {
    Ok(sign_power(pair.diagram_flip_count()?))
}

/// Default evaluation point `ρ_c(𝔩)`, where `P_{K∩L} = 1`.
pub fn default_point(form: &RealFormOrbit<Q>) -> Weight<Q> {
    form.grading.rho_c_l.clone()
}

fn check_point(form: &RealFormOrbit<Q>, lambda0: &Weight<Q>) -> Result<Q> {
    let pkl = form.grading.weyl_kl.eval(lambda0);
    if pkl.is_zero() {
        return Err(Error::DegeneratePoint(format!(
            "P_(K∩L) vanishes at {lambda0}; use ρ_c(l) = {}",
            form.grading.rho_c_l
        )));
    }
    Ok(pkl)
}

/// Fold order: simple-root coefficient vectors in lexicographic order. The
/// order is part of a checkpoint's fingerprint.
pub fn fold_order(form: &RealFormOrbit<Q>) -> Vec<Vec<i32>> {
    let mut roots: Vec<Vec<i32>> = form.grading.fold_roots().into_iter().map(|r| r.coeffs.clone()).collect();
    roots.sort();
    roots
}

/// Options for the DP engine.
#[derive(Clone, Debug, Default)]
pub struct DpOptions {
    /// Directory for per-step ledger snapshots.
    pub checkpoint_dir: Option<PathBuf>,
    /// Resume from a snapshot in `checkpoint_dir` when one matches.
    pub resume: bool,
    /// Identifier stored in snapshot headers.
    pub label: String,
}

/// Outcome of a DP evaluation.
#[derive(Clone, Debug)]
pub struct DpOutcome {
    /// The Dynkin-normalized quotient.
    pub value: Q,
    pub distinct_shifts: usize,
    pub peak_shifts: usize,
}

/// Evaluates the constant with the zonotope DP.
pub fn compute_constant_dp(
    pair: &RealPair<Q>,
    form: &RealFormOrbit<Q>,
    lambda0: &Weight<Q>,
    options: &DpOptions,
) -> Result<DpOutcome> {
    let (values, distinct_shifts, peak_shifts) = dp_quotients(pair, form, std::slice::from_ref(lambda0), options)?;
    let value = values.into_iter().next().expect("one point in, one value out");
    Ok(DpOutcome { value, distinct_shifts, peak_shifts })
}

/// Dynkin-normalized quotients at several points from a single fold; the
/// ledger does not depend on the point.
fn dp_quotients(
    pair: &RealPair<Q>,
    form: &RealFormOrbit<Q>,
    points: &[Weight<Q>],
    options: &DpOptions,
) -> Result<(Vec<Q>, usize, usize)> {
    let pkls = points.iter().map(|p| check_point(form, p)).collect::<Result<Vec<Q>>>()?;
    let roots = fold_order(form);
    let layout = KeyLayout::for_roots(pair.rank(), &roots)?;
    if layout.total_bits() <= 64 {
        run_dp::<u64>(pair, form, points, &pkls, &roots, layout, options)
    } else {
        run_dp::<u128>(pair, form, points, &pkls, &roots, layout, options)
    }
}

fn run_dp<K: PackedKey>(
    pair: &RealPair<Q>,
    form: &RealFormOrbit<Q>,
    points: &[Weight<Q>],
    pkls: &[Q],
    roots: &[Vec<i32>],
    layout: KeyLayout,
    options: &DpOptions,
) -> Result<(Vec<Q>, usize, usize)> {
    let fingerprint = checkpoint::fingerprint(&options.label, roots);
    let mut ledger = match (&options.checkpoint_dir, options.resume) {
        (Some(dir), true) => match Checkpoint::load::<K>(dir, &fingerprint, &layout)? {
            Some(l) => {
                log::info!("resumed after {} of {} folds ({} shifts)", l.folded(), roots.len(), l.len());
                l
            }
            None => ShiftLedger::new(layout),
        },
        _ => ShiftLedger::new(layout),
    };
    let mut peak = ledger.len();
    for (step, beta) in roots.iter().enumerate().skip(ledger.folded()) {
        let t = Instant::now();
        ledger.fold(beta)?;
        peak = peak.max(ledger.len());
        log::info!("fold {}/{}: {} shifts ({} ms)", step + 1, roots.len(), ledger.len(), t.elapsed().as_millis());
        if let Some(dir) = &options.checkpoint_dir {
            Checkpoint::save(dir, &fingerprint, &ledger)?;
        }
    }
    let sign = sign_power(form.grading.n_sign + form.grading.nl_roots.len());
    let mut values = Vec::with_capacity(points.len());
    for (p, pkl) in points.iter().zip(pkls) {
        let evaluator = IntegerEvaluator::new(pair, &(p + &form.grading.rho_n_l))?;
        let t = Instant::now();
        let sum = evaluator.weighted_sum(&ledger);
        log::info!("evaluated {} shifts ({} ms)", ledger.len(), t.elapsed().as_millis());
        values.push(&sign * Q::from_integer(sum) / evaluator.denominator() / pkl);
    }
    Ok((values, ledger.len(), peak))
}

/// Exact integer value of a quotient, or an integrality error.
pub fn integral(value: &Q) -> Result<BigInt> {
    as_integer(value).ok_or_else(|| Error::invariant("integrality", format!("quotient {value} is not an integer")))
}

// SplitMix64 finalizer.
fn mix(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// `count` evaluation points other than the default one, with
/// `P_{K∩L} ≠ 0`: `ρ_c(𝔩)` plus integer combinations of fundamental weights
/// with coefficients in `[−20, 20]`, from a fixed hash sequence.
pub fn evaluation_points(pair: &RealPair<Q>, form: &RealFormOrbit<Q>, count: usize) -> Result<Vec<Weight<Q>>> {
    let base = default_point(form);
    let fund = pair.system().fundamental_weights()?;
    let mut points: Vec<Weight<Q>> = Vec::with_capacity(count);
    let mut t = 0u64;
    while points.len() < count {
        if t > 64 * (count as u64 + 1) {
            return Err(Error::DegeneratePoint(format!("found only {} of {count} evaluation points", points.len())));
        }
        let mut p = base.clone();
        for (i, w) in fund.iter().enumerate() {
            let a = (mix(t << 8 | i as u64) % 41) as i64 - 20;
            p = &p + &w.scale(&Q::from_integer(BigInt::from(a)));
        }
        t += 1;
        if p == base || points.contains(&p) || form.grading.weyl_kl.eval(&p).is_zero() {
            continue;
        }
        points.push(p);
    }
    Ok(points)
}

/// The diagram-normalized quotient at each of `num_points` evaluation points.
pub fn point_quotients(pair: &RealPair<Q>, form: &RealFormOrbit<Q>, num_points: usize) -> Result<Vec<(Weight<Q>, Q)>> {
    if num_points == 0 {
        return Err(Error::InvalidParameters("num_points must be at least 1".into()));
    }
    let norm = normalization_sign(pair)?;
    let points = evaluation_points(pair, form, num_points)?;
    let (values, _, _) = dp_quotients(pair, form, &points, &DpOptions::default())?;
    Ok(points.into_iter().zip(values).map(|(p, q)| (p, q * &norm)).collect())
}

/// Recomputes the quotient at `num_points` points and compares with `c`
/// (diagram-chamber normalization).
pub fn verify_constant(pair: &RealPair<Q>, form: &RealFormOrbit<Q>, c: &BigInt, num_points: usize) -> Result<bool> {
    let quotients = point_quotients(pair, form, num_points)?;
    let c = Q::from_integer(c.clone());
    Ok(quotients.len() >= num_points && quotients.iter().all(|(_, q)| *q == c))
}

/// Computes one constant with the requested engine.
pub fn compute_constant(
    pair_id: &str,
    pair: &RealPair<Q>,
    form: &RealFormOrbit<Q>,
    method: Method,
    options: &DpOptions,
) -> Result<ConstantResult> {
    let t = Instant::now();
    let lambda0 = default_point(form);
    let norm = normalization_sign(pair)?;
    let (value, distinct) = match method {
        Method::Dp => {
            let out = compute_constant_dp(pair, form, &lambda0, options)?;
            (out.value, out.distinct_shifts)
        }
        Method::Naive => (compute_constant_naive(pair, form, &lambda0, Variant::Subtractive)?, 0),
        Method::ShuffleOracle | Method::ClosedForm => {
            return Err(Error::NotCovered(format!("{method:?} applies to SU(p,q) only; use su_constant")));
        }
    };
    let c_dynkin = integral(&value)?;
    let c = integral(&(value * norm))?;
    Ok(ConstantResult {
        pair_id: pair_id.to_string(),
        form_id: form.form_id,
        c,
        c_dynkin,
        method,
        eval_points_used: 1,
        distinct_shifts: distinct,
        fold_roots: form.grading.fold_roots().len(),
        elapsed_ms: t.elapsed().as_millis() as u64,
    })
}
