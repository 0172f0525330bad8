//! Truncated formal characters for checking the discrete-series identities.
//!
//! Characters are maps from weights to integer multiplicities. Infinite
//! characters are stored up to a validity height. Heights are measured by the
//! central element `z` of `𝔨` with `β(z) = 1` on every noncompact positive
//! root, which exists for Hermitian symmetric pairs. `W_K` fixes `z`, so
//! truncating by height keeps `K`-characters intact.

use std::cell::RefCell;
use std::collections::BTreeMap;

use num_traits::{One, Signed, ToPrimitive, Zero};
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootdata::{RealPair, Weight};
use crate::scalar::{as_integer, Q};

/// A virtual character, exact for weights `ν` with
/// `height(ν) − height(anchor) ≤ valid_height`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VirtualCharacter {
    mults: FxHashMap<Weight<Q>, i64>,
    anchor: Weight<Q>,
    anchor_level: Q,
    /// `None` for a finite character known exactly.
    valid_height: Option<Q>,
}

impl VirtualCharacter {
    fn finite(dim: usize, mults: FxHashMap<Weight<Q>, i64>) -> Self {
        Self { mults, anchor: Weight::zero(dim), anchor_level: Q::zero(), valid_height: None }
    }

    pub fn get(&self, weight: &Weight<Q>) -> i64 {
        self.mults.get(weight).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.mults.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mults.is_empty()
    }

    pub fn anchor(&self) -> &Weight<Q> {
        &self.anchor
    }

    pub fn valid_height(&self) -> Option<&Q> {
        self.valid_height.as_ref()
    }

    /// Largest exact level, `None` when every level is exact.
    pub fn valid_level(&self) -> Option<Q> {
        self.valid_height.as_ref().map(|h| &self.anchor_level + h)
    }

    /// Sum of multiplicities.
    pub fn dimension(&self) -> i64 {
        self.mults.values().sum()
    }

    /// Entries sorted by weight coordinates.
    pub fn sorted(&self) -> Vec<(&Weight<Q>, i64)> {
        let mut v: Vec<(&Weight<Q>, i64)> = self.mults.iter().map(|(w, &m)| (w, m)).collect();
        v.sort_by(|a, b| a.0.coords().cmp(b.0.coords()));
        v
    }

    fn add_term(&mut self, weight: Weight<Q>, mult: i64) {
        if mult == 0 {
            return;
        }
        let e = self.mults.entry(weight).or_insert(0);
        *e += mult;
    }

    fn prune(&mut self) {
        self.mults.retain(|_, m| *m != 0);
    }
}

/// `±E_μ` from the Borel–Weil–Bott theorem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BwbTerm {
    pub sign: i64,
    pub highest_weight: Weight<Q>,
}

/// Result of one identity check.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// All identity checks for one pair.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CharlabReport {
    pub pair_id: String,
    pub cutoff: usize,
    pub checks: Vec<IdentityCheck>,
    pub passed: bool,
}

fn min_opt(a: Option<Q>, b: Option<Q>) -> Option<Q> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

/// Character calculus for one Hermitian pair.
pub struct CharLab<'a> {
    pair: &'a RealPair<Q>,
    z: Weight<Q>,
    compact: Vec<Weight<Q>>,
    compact_simple: Vec<Weight<Q>>,
    noncompact: Vec<Weight<Q>>,
    irr_cache: RefCell<FxHashMap<Weight<Q>, VirtualCharacter>>,
}

impl<'a> CharLab<'a> {
    pub fn new(pair: &'a RealPair<Q>) -> Result<Self> {
        if pair.noncompact_mark()? != 1 {
            return Err(Error::NotCovered("character checks need a Hermitian pair (noncompact node of mark 1)".into()));
        }
        let nc = pair.noncompact_node()?;
        let values: Vec<Q> = (0..pair.rank()).map(|i| if i == nc { Q::one() } else { Q::zero() }).collect();
        let z = pair.system().dual_vector(&values)?;
        Ok(Self {
            pair,
            z,
            compact: pair.compact_positive().map(|r| r.vector.clone()).collect(),
            compact_simple: pair.compact_simple().map(|r| r.vector.clone()).collect(),
            noncompact: pair.noncompact_positive().map(|r| r.vector.clone()).collect(),
            irr_cache: RefCell::new(FxHashMap::default()),
        })
    }

    pub fn pair(&self) -> &RealPair<Q> {
        self.pair
    }

    /// `⟨ν, z⟩`.
    pub fn level(&self, weight: &Weight<Q>) -> Q {
        weight.dot(&self.z)
    }

    fn dim(&self) -> usize {
        self.pair.ambient_dim()
    }

    /// The zero character, exact everywhere.
    pub fn empty(&self) -> VirtualCharacter {
        VirtualCharacter::finite(self.dim(), FxHashMap::default())
    }

    fn min_level(&self, c: &VirtualCharacter) -> Option<Q> {
        c.mults.keys().map(|w| self.level(w)).min().or_else(|| c.valid_level())
    }

    fn truncate(&self, c: &mut VirtualCharacter) {
        c.prune();
        if let Some(v) = c.valid_level() {
            c.mults.retain(|w, _| self.level(w) <= v);
        }
    }

    fn with_validity(
        &self,
        mults: FxHashMap<Weight<Q>, i64>,
        anchor: Weight<Q>,
        valid_level: Option<Q>,
    ) -> VirtualCharacter {
        let anchor_level = self.level(&anchor);
        let valid_height = valid_level.map(|v| v - &anchor_level);
        let mut c = VirtualCharacter { mults, anchor, anchor_level, valid_height };
        self.truncate(&mut c);
        c
    }

    /// `a + k·b`, exact up to the smaller validity.
    pub fn add(&self, a: &VirtualCharacter, b: &VirtualCharacter, k: i64) -> VirtualCharacter {
        let mut mults = a.mults.clone();
        for (w, &m) in &b.mults {
            *mults.entry(w.clone()).or_insert(0) += k * m;
        }
        self.with_validity(mults, a.anchor.clone(), min_opt(a.valid_level(), b.valid_level()))
    }

    /// `a ⊗ b`. A level is exact when every pair of factors reaching it is.
    pub fn tensor(&self, a: &VirtualCharacter, b: &VirtualCharacter) -> VirtualCharacter {
        let bound = |x: &VirtualCharacter, y: &VirtualCharacter| -> Option<Q> {
            let vx = x.valid_level()?;
            Some(vx + self.min_level(y).unwrap_or_else(Q::zero))
        };
        let valid = if b.is_empty() && b.valid_height.is_none() || a.is_empty() && a.valid_height.is_none() {
            None
        } else {
            min_opt(bound(a, b), bound(b, a))
        };
        let mut mults: FxHashMap<Weight<Q>, i64> = FxHashMap::default();
        for (wa, &ma) in &a.mults {
            for (wb, &mb) in &b.mults {
                *mults.entry(wa + wb).or_insert(0) += ma * mb;
            }
        }
        self.with_validity(mults, &a.anchor + &b.anchor, valid)
    }

    /// True iff `a` and `b` agree at every level exact in both.
    pub fn agree(&self, a: &VirtualCharacter, b: &VirtualCharacter) -> bool {
        let v = min_opt(a.valid_level(), b.valid_level());
        let inside = |w: &Weight<Q>| v.as_ref().is_none_or(|v| &self.level(w) <= v);
        a.mults.iter().filter(|(w, _)| inside(w)).all(|(w, &m)| b.get(w) == m)
            && b.mults.iter().filter(|(w, _)| inside(w)).all(|(w, &m)| a.get(w) == m)
    }

    fn coroot(&self, weight: &Weight<Q>, alpha: &Weight<Q>) -> Q {
        Q::from_integer(2.into()) * weight.dot(alpha) / alpha.norm2()
    }

    /// Checks that `hw` is `Δ_c^+`-dominant and integral.
    pub fn check_dominant(&self, hw: &Weight<Q>) -> Result<()> {
        for a in &self.compact_simple {
            let c = self.coroot(hw, a);
            if !c.is_integer() || c.is_negative() {
                return Err(Error::InvalidParameters(format!("{hw} is not dominant integral for K")));
            }
        }
        Ok(())
    }

    /// Character of the irreducible `K`-module `E_hw`, by Freudenthal's recursion.
    pub fn irr_char(&self, hw: &Weight<Q>) -> Result<VirtualCharacter> {
        if let Some(c) = self.irr_cache.borrow().get(hw) {
            return Ok(c.clone());
        }
        self.check_dominant(hw)?;
        let rho_c = self.pair.rho_c();
        let top = (hw + rho_c).norm2();
        let mut mults: FxHashMap<Weight<Q>, i64> = FxHashMap::default();
        mults.insert(hw.clone(), 1);
        let mut layer = vec![hw.clone()];
        while !layer.is_empty() {
            let mut candidates: Vec<Weight<Q>> = Vec::new();
            for w in &layer {
                for a in &self.compact_simple {
                    let c = w - a;
                    if !mults.contains_key(&c) && !candidates.contains(&c) {
                        candidates.push(c);
                    }
                }
            }
            let mut next = Vec::new();
            for mu in candidates {
                let mut rhs = Q::zero();
                for a in &self.compact {
                    let mut shifted = &mu + a;
                    while let Some(&m) = mults.get(&shifted) {
                        rhs += Q::from_integer(m.into()) * shifted.dot(a);
                        shifted += a;
                    }
                }
                rhs *= Q::from_integer(2.into());
                let den = &top - (&mu + rho_c).norm2();
                if den.is_zero() {
                    if !rhs.is_zero() {
                        return Err(Error::invariant("Freudenthal", format!("nonzero sum at {mu} on the ρ-sphere")));
                    }
                    continue;
                }
                let m = rhs / den;
                let m = as_integer(&m)
                    .and_then(|v| v.to_i64())
                    .ok_or_else(|| Error::invariant("Freudenthal", format!("multiplicity {m} at {mu}")))?;
                if m < 0 {
                    return Err(Error::invariant("Freudenthal", format!("negative multiplicity at {mu}")));
                }
                if m > 0 {
                    mults.insert(mu.clone(), m);
                    next.push(mu);
                }
            }
            layer = next;
        }
        let c = VirtualCharacter::finite(self.dim(), mults);
        let c = VirtualCharacter { anchor: hw.clone(), anchor_level: self.level(hw), ..c };
        self.irr_cache.borrow_mut().insert(hw.clone(), c.clone());
        Ok(c)
    }

    /// The `2^{#Δ_n^+}` signed weights `Σ_{β∈I} β − ρ_n` of `S^+ − S^−`, unmerged.
    pub fn spin_terms_for(&self, noncompact: &[Weight<Q>]) -> Vec<(Weight<Q>, i64)> {
        let rho_n = Weight::half_sum(self.dim(), noncompact);
        let mut terms = vec![(-&rho_n, 1i64)];
        for b in noncompact {
            let more: Vec<(Weight<Q>, i64)> = terms.iter().map(|(w, s)| (w + b, -s)).collect();
            terms.extend(more);
        }
        terms
    }

    pub fn spin_terms(&self) -> Vec<(Weight<Q>, i64)> {
        self.spin_terms_for(&self.noncompact)
    }

    /// `S^+ − S^−` for the isotropic subspace spanned by `noncompact`.
    pub fn spin_difference_for(&self, noncompact: &[Weight<Q>]) -> VirtualCharacter {
        let mut c = self.empty();
        for (w, s) in self.spin_terms_for(noncompact) {
            c.add_term(w, s);
        }
        c.prune();
        c
    }

    /// `S^+ − S^−` for the Dynkin positive system.
    pub fn spin_difference(&self) -> VirtualCharacter {
        self.spin_difference_for(&self.noncompact)
    }

    /// Weights of `S(𝔫 ∩ 𝔭)` up to degree `cutoff`, with multiplicities.
    pub fn symmetric_algebra(&self, cutoff: usize) -> VirtualCharacter {
        let cap = Q::from_integer(cutoff.into());
        let mut mults: FxHashMap<Weight<Q>, i64> = FxHashMap::default();
        mults.insert(Weight::zero(self.dim()), 1);
        for b in &self.noncompact {
            let mut next: FxHashMap<Weight<Q>, i64> = FxHashMap::default();
            for (w, &m) in &mults {
                let mut v = w.clone();
                while self.level(&v) <= cap {
                    *next.entry(v.clone()).or_insert(0) += m;
                    v += b;
                }
            }
            mults = next;
        }
        self.with_validity(mults, Weight::zero(self.dim()), Some(cap))
    }

    /// Euler characteristic of `𝒪(ν)` on `K/(K∩B)`: zero if `ν + ρ_c` is
    /// singular, else `(−1)^{ℓ(w)} E_{w(ν+ρ_c)−ρ_c}` with `w(ν+ρ_c)` dominant.
    pub fn bwb_euler(&self, nu: &Weight<Q>) -> Option<BwbTerm> {
        let mut mu = nu + self.pair.rho_c();
        if self.compact.iter().any(|a| mu.dot(a).is_zero()) {
            return None;
        }
        let mut sign = 1;
        while let Some(a) = self.compact_simple.iter().find(|a| mu.dot(a).is_negative()) {
            mu = mu.reflect(a);
            sign = -sign;
        }
        Some(BwbTerm { sign, highest_weight: &mu - self.pair.rho_c() })
    }

    /// `K`-types of the discrete-series family member `X(λ)` up to height
    /// `cutoff` above the lowest `K`-type `λ + ρ_n − ρ_c`.
    ///
    /// `X(λ)|_K = Σ_δ E(λ + ρ_n − ρ_c + δ)` over the weights `δ` of `S(𝔫∩𝔭)`,
    /// where `E` is [`Self::bwb_euler`].
    pub fn ds_k_types(&self, lambda: &Weight<Q>, cutoff: usize) -> BTreeMap<Vec<Q>, i64> {
        let base = &(lambda + self.pair.rho_n()) - self.pair.rho_c();
        let mut out: BTreeMap<Vec<Q>, i64> = BTreeMap::new();
        for (delta, &m) in &self.symmetric_algebra(cutoff).mults {
            if let Some(t) = self.bwb_euler(&(&base + delta)) {
                *out.entry(t.highest_weight.coords().to_vec()).or_insert(0) += t.sign * m;
            }
        }
        out.retain(|_, m| *m != 0);
        out
    }

    /// `X(λ)|_K` as a weight character, exact to height `cutoff`.
    pub fn ds_spectrum(&self, lambda: &Weight<Q>, cutoff: usize) -> Result<VirtualCharacter> {
        let base = &(lambda + self.pair.rho_n()) - self.pair.rho_c();
        let mut mults: FxHashMap<Weight<Q>, i64> = FxHashMap::default();
        for (hw, m) in self.ds_k_types(lambda, cutoff) {
            let e = self.irr_char(&Weight::new(hw))?;
            for (w, &k) in &e.mults {
                *mults.entry(w.clone()).or_insert(0) += m * k;
            }
        }
        let valid = self.level(&base) + Q::from_integer(cutoff.into());
        Ok(self.with_validity(mults, base, Some(valid)))
    }

    /// `X ⊗ (S^+ − S^−)`.
    pub fn dirac_index_char(&self, x: &VirtualCharacter) -> Result<VirtualCharacter> {
        let spin = self.spin_difference();
        let spread = Q::from_integer(self.noncompact.len().into());
        if let Some(h) = x.valid_height() {
            if h < &spread {
                return Err(Error::Validity(format!(
                    "character is exact to height {h} but the Dirac index needs {spread}; raise the cutoff to at least {spread}"
                )));
            }
        }
        Ok(self.tensor(x, &spin))
    }

    /// `S(𝔫∩𝔭) ⊗ spin = 𝐂_{−ρ_n}` up to `cutoff`, for a given spin character.
    pub fn koszul_identity(&self, spin: &VirtualCharacter, cutoff: usize) -> bool {
        let lhs = self.tensor(&self.symmetric_algebra(cutoff), spin);
        let mut rhs = self.empty();
        rhs.add_term(-self.pair.rho_n(), 1);
        let covered = lhs.valid_level().is_none_or(|v| self.level(&-self.pair.rho_n()) <= v);
        covered && self.agree(&lhs, &rhs)
    }

    pub fn koszul_check(&self, cutoff: usize) -> bool {
        self.koszul_identity(&self.spin_difference(), cutoff)
    }

    /// `E_γ = Σ_{A⊆Δ_n^+} (−1)^{#A} X(γ + ρ_c − ρ_n + 2ρ(A))|_K` up to `cutoff`.
    pub fn blattner_inversion_check(&self, gamma: &Weight<Q>, cutoff: usize) -> Result<bool> {
        let target = self.irr_char(gamma)?;
        let base = &(gamma + self.pair.rho_c()) - self.pair.rho_n();
        let mut sum = self.empty();
        for (shift, sign) in self.spin_terms() {
            // Spin terms are 2ρ(A) − ρ_n with sign (−1)^{#A}.
            let lambda = &(&base + &shift) + self.pair.rho_n();
            sum = self.add(&sum, &self.ds_spectrum(&lambda, cutoff)?, sign);
        }
        if sum.valid_level().is_some_and(|v| v < self.level(gamma)) {
            return Err(Error::Validity(format!("cutoff {cutoff} does not reach the level of γ")));
        }
        Ok(self.agree(&sum, &target))
    }

    // Noncompact parts of w(Δ^+) for words w of length ≤ depth in the simple
    // reflections of 𝔤, with #(w(Δ^+)_n ∖ Δ_n^+).
    fn positive_system_images(&self, depth: usize) -> Vec<(Vec<Weight<Q>>, usize)> {
        let simple = self.pair.system().simple_roots();
        let positive: Vec<Weight<Q>> = self.pair.system().positive_roots().iter().map(|r| r.vector.clone()).collect();
        let mut out = vec![positive.clone()];
        let mut frontier = vec![positive];
        for _ in 0..depth {
            let mut next = Vec::new();
            for set in &frontier {
                for a in simple {
                    next.push(set.iter().map(|b| b.reflect(a)).collect::<Vec<_>>());
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        let is_noncompact = |v: &Weight<Q>| self.noncompact.iter().any(|b| b == v || &-b == v);
        out.into_iter()
            .map(|img| {
                let nc: Vec<Weight<Q>> = img.into_iter().filter(|v| is_noncompact(v)).collect();
                let outside = nc.iter().filter(|b| !self.noncompact.contains(b)).count();
                (nc, outside)
            })
            .collect()
    }

    /// Runs every identity at `cutoff`.
    pub fn verify(&self, pair_id: &str, cutoff: usize) -> Result<CharlabReport> {
        let mut checks = Vec::new();
        let mut push = |name: &str, passed: bool, detail: String| {
            checks.push(IdentityCheck { name: name.to_string(), passed, detail });
        };
        let sys = self.pair.system();
        let fund = sys.fundamental_weights()?;
        let rho = self.pair.rho().clone();

        // Freudenthal dimensions against P_K, and W_K-invariance.
        let mut hws = vec![Weight::zero(self.dim())];
        for (i, a) in fund.iter().enumerate() {
            hws.push(a.clone());
            hws.push(a.scale(&Q::from_integer(2.into())));
            for b in &fund[i + 1..] {
                hws.push(a + b);
            }
        }
        let mut dims_ok = true;
        let mut sym_ok = true;
        for hw in &hws {
            let c = self.irr_char(hw)?;
            let want = self.pair.p_k(&(hw + self.pair.rho_c()));
            if Q::from_integer(c.dimension().into()) != want {
                dims_ok = false;
            }
            for a in &self.compact_simple {
                if c.mults.iter().any(|(w, &m)| c.get(&w.reflect(a)) != m) {
                    sym_ok = false;
                }
            }
        }
        push("irreducible dimension = P_K(μ+ρ_c)", dims_ok, format!("{} highest weights", hws.len()));
        push("W_K symmetry of irreducible characters", sym_ok, format!("{} highest weights", hws.len()));

        let terms = self.spin_terms();
        let total: i64 = terms.iter().map(|t| t.1).sum();
        let count_ok = terms.len() == 1usize << self.noncompact.len() && (self.noncompact.is_empty() || total == 0);
        push("spin difference term count", count_ok, format!("{} terms, coefficient sum {total}", terms.len()));

        push("Koszul identity", self.koszul_check(cutoff), format!("cutoff {cutoff}"));
        let spin = self.spin_difference();
        let mut corrupt = spin.clone();
        let first = spin.sorted()[0].0.clone();
        corrupt.add_term(first, 1);
        corrupt.prune();
        push("Koszul negative control", !self.koszul_identity(&corrupt, cutoff), "one spin weight altered".into());

        let sign_images = self.positive_system_images(3);
        let sign_ok = sign_images.iter().all(|(img, outside)| {
            let s = if outside % 2 == 0 { 1 } else { -1 };
            let got = self.spin_difference_for(img);
            let want = self.add(&self.empty(), &spin, s);
            self.agree(&got, &want) && got.len() == want.len()
        });
        push("spin sign under change of positive system", sign_ok, format!("{} Weyl images", sign_images.len()));

        // Discrete series: lowest K-type and Dirac index.
        let lambdas: Vec<Weight<Q>> =
            [0usize, 1, 2].iter().map(|&k| &rho + &fund[k % fund.len()].scale(&Q::from_integer(k.into()))).collect();
        let sym = self.symmetric_algebra(cutoff);
        let mut lkt_ok = true;
        let mut di_ok = true;
        for lambda in &lambdas {
            let kt = self.ds_k_types(lambda, cutoff);
            let lowest = &(lambda + self.pair.rho_n()) - self.pair.rho_c();
            if kt.get(lowest.coords()) != Some(&1) {
                lkt_ok = false;
            }
            for (hw, &m) in &kt {
                let d = &Weight::new(hw.clone()) - &lowest;
                if m < 0 || sym.get(&d) == 0 {
                    lkt_ok = false;
                }
            }
            let x = self.ds_spectrum(lambda, cutoff)?;
            let di = self.dirac_index_char(&x)?;
            let want = self.irr_char(&(lambda - self.pair.rho_c()))?;
            let dim_ok = Q::from_integer(di.dimension().into()) == self.pair.p_k(lambda);
            if !self.agree(&di, &want) || !dim_ok {
                di_ok = false;
            }
        }
        push("lowest K-type λ+ρ_n−ρ_c with multiplicity one", lkt_ok, format!("{} parameters", lambdas.len()));
        push("Dirac index of discrete series = E_(λ−ρ_c)", di_ok, format!("{} parameters", lambdas.len()));

        // Coherent continuation: dimension equals P_K(λ) on a grid.
        let mut grid_ok = true;
        let mut grid = 0;
        let steps: Vec<i64> = vec![-2, -1, 0, 1, 2];
        let mut coeffs = vec![0usize; fund.len()];
        loop {
            let mut lambda = rho.clone();
            for (c, f) in coeffs.iter().zip(&fund) {
                lambda += &f.scale(&Q::from_integer(steps[*c].into()));
            }
            let di = self.dirac_index_char(&self.ds_spectrum(&lambda, cutoff.min(6))?)?;
            if Q::from_integer(di.dimension().into()) != self.pair.p_k(&lambda) {
                grid_ok = false;
            }
            grid += 1;
            let mut i = 0;
            while i < coeffs.len() {
                coeffs[i] += 1;
                if coeffs[i] < steps.len() {
                    break;
                }
                coeffs[i] = 0;
                i += 1;
            }
            if i == coeffs.len() || grid >= 125 {
                break;
            }
        }
        push("Dirac index dimension = P_K(λ) on a grid", grid_ok, format!("{grid} parameters"));

        let mut bi_ok = true;
        let gammas = [Weight::zero(self.dim()), fund[0].clone()];
        for g in &gammas {
            bi_ok &= self.blattner_inversion_check(g, cutoff)?;
        }
        push("Blattner inversion", bi_ok, format!("{} highest weights", gammas.len()));

        let passed = checks.iter().all(|c| c.passed);
        Ok(CharlabReport { pair_id: pair_id.to_string(), cutoff, checks, passed })
    }
}
