use super::dynkin;
use super::system::{Root, RootSystem};
use super::weight::Weight;
use crate::error::{Error, Result};
use crate::scalar::{Scalar, Q};

/// `λ ↦ Π ⟨λ, α⟩ / Π ⟨ρ_S, α⟩` over a positive system `S` of a sub-root-system.
#[derive(Clone, Debug)]
pub struct WeylDimPoly<T = Q> {
    roots: Vec<Weight<T>>,
    rho: Weight<T>,
    denominator: T,
}

impl<T: Scalar> WeylDimPoly<T> {
    pub fn new(dim: usize, roots: Vec<Weight<T>>) -> Self {
        let rho = Weight::half_sum(dim, &roots);
        let denominator = roots.iter().fold(T::one(), |acc, a| acc * rho.dot(a));
        assert!(!denominator.is_zero(), "ρ of a positive system is regular");
        Self { roots, rho, denominator }
    }

    pub fn roots(&self) -> &[Weight<T>] {
        &self.roots
    }

    pub fn rho(&self) -> &Weight<T> {
        &self.rho
    }

    /// `Π ⟨ρ_S, α⟩`.
    pub fn denominator(&self) -> &T {
        &self.denominator
    }

    pub fn degree(&self) -> usize {
        self.roots.len()
    }

    /// Numerator `Π ⟨λ, α⟩`.
    pub fn numerator(&self, lambda: &Weight<T>) -> T {
        let mut acc = T::one();
        for a in &self.roots {
            let v = lambda.dot(a);
            if v.is_zero() {
                return T::zero();
            }
            acc = acc * v;
        }
        acc
    }

    pub fn eval(&self, lambda: &Weight<T>) -> T {
        self.numerator(lambda) / self.denominator.clone()
    }
}

/// An equal-rank pair: a root system with its noncompact simple roots marked.
#[derive(Clone, Debug)]
pub struct RealPair<T = Q> {
    system: RootSystem<T>,
    noncompact_nodes: Vec<usize>,
    compact_pos: Vec<usize>,
    noncompact_pos: Vec<usize>,
    rho: Weight<T>,
    rho_c: Weight<T>,
    rho_n: Weight<T>,
    compact_simple: Vec<usize>,
    k_type_label: String,
    weyl_k: WeylDimPoly<T>,
}

impl<T: Scalar> RealPair<T> {
    /// Builds the pair; `noncompact_nodes` are 0-based simple-root indices.
    pub fn new(system: RootSystem<T>, noncompact_nodes: Vec<usize>) -> Result<Self> {
        if noncompact_nodes.iter().any(|&i| i >= system.rank()) {
            return Err(Error::InvalidParameters(format!("noncompact node out of range for rank {}", system.rank())));
        }
        let dim = system.ambient_dim();
        let mut compact_pos = Vec::new();
        let mut noncompact_pos = Vec::new();
        for (i, r) in system.positive_roots().iter().enumerate() {
            if is_noncompact_coeffs(&r.coeffs, &noncompact_nodes) {
                noncompact_pos.push(i);
            } else {
                compact_pos.push(i);
            }
        }
        let pos = system.positive_roots();
        let rho = Weight::half_sum(dim, pos.iter().map(|r| &r.vector));
        let rho_c = Weight::half_sum(dim, compact_pos.iter().map(|&i| &pos[i].vector));
        let rho_n = Weight::half_sum(dim, noncompact_pos.iter().map(|&i| &pos[i].vector));

        // Simple roots of Δ_c^+: compact positive roots that are not a sum of two others.
        let compact_set: rustc_hash::FxHashSet<&[i32]> =
            compact_pos.iter().map(|&i| pos[i].coeffs.as_slice()).collect();
        let compact_simple: Vec<usize> = compact_pos
            .iter()
            .copied()
            .filter(|&i| {
                let c = &pos[i].coeffs;
                !compact_pos.iter().any(|&j| {
                    let d: Vec<i32> = c.iter().zip(&pos[j].coeffs).map(|(a, b)| a - b).collect();
                    j != i && compact_set.contains(d.as_slice())
                })
            })
            .collect();
        let simple_vecs: Vec<Weight<T>> = compact_simple.iter().map(|&i| pos[i].vector.clone()).collect();
        let torus = system.rank() - compact_simple.len();
        let k_type_label = dynkin::type_label(&simple_vecs, torus);
        let weyl_k = WeylDimPoly::new(dim, compact_pos.iter().map(|&i| pos[i].vector.clone()).collect());
        Ok(Self {
            system,
            noncompact_nodes,
            compact_pos,
            noncompact_pos,
            rho,
            rho_c,
            rho_n,
            compact_simple,
            k_type_label,
            weyl_k,
        })
    }

    pub fn system(&self) -> &RootSystem<T> {
        &self.system
    }

    pub fn rank(&self) -> usize {
        self.system.rank()
    }

    pub fn ambient_dim(&self) -> usize {
        self.system.ambient_dim()
    }

    pub fn noncompact_nodes(&self) -> &[usize] {
        &self.noncompact_nodes
    }

    /// Whether a root with the given simple-root coefficients is noncompact.
    pub fn is_noncompact(&self, coeffs: &[i32]) -> bool {
        is_noncompact_coeffs(coeffs, &self.noncompact_nodes)
    }

    pub fn compact_positive(&self) -> impl Iterator<Item = &Root<T>> + '_ {
        self.compact_pos.iter().map(|&i| &self.system.positive_roots()[i])
    }

    pub fn noncompact_positive(&self) -> impl Iterator<Item = &Root<T>> + '_ {
        self.noncompact_pos.iter().map(|&i| &self.system.positive_roots()[i])
    }

    pub fn num_compact_positive(&self) -> usize {
        self.compact_pos.len()
    }

    pub fn num_noncompact_positive(&self) -> usize {
        self.noncompact_pos.len()
    }

    /// Simple roots of `Δ_c^+` (as indices into the positive roots).
    pub fn compact_simple(&self) -> impl Iterator<Item = &Root<T>> + '_ {
        self.compact_simple.iter().map(|&i| &self.system.positive_roots()[i])
    }

    pub fn rho(&self) -> &Weight<T> {
        &self.rho
    }

    pub fn rho_c(&self) -> &Weight<T> {
        &self.rho_c
    }

    pub fn rho_n(&self) -> &Weight<T> {
        &self.rho_n
    }

    pub fn k_type_label(&self) -> &str {
        &self.k_type_label
    }

    /// Weyl dimension polynomial of `K` for `Δ_c^+`.
    pub fn weyl_k(&self) -> &WeylDimPoly<T> {
        &self.weyl_k
    }

    /// `P_K(λ)`.
    pub fn p_k(&self, lambda: &Weight<T>) -> T {
        self.weyl_k.eval(lambda)
    }

    /// The single noncompact node, required by the diagram conventions.
    pub fn noncompact_node(&self) -> Result<usize> {
        match self.noncompact_nodes.as_slice() {
            [i] => Ok(*i),
            _ => Err(Error::InvalidParameters("expected exactly one noncompact node".into())),
        }
    }

    /// Coefficient of the noncompact node in the highest root.
    pub fn noncompact_mark(&self) -> Result<i32> {
        Ok(self.system.highest_root().coeffs[self.noncompact_node()?])
    }

    /// Node values of the vector `z` with value 1 on every simple root of the
    /// extended `𝔨`-diagram: the compact nodes, plus `−γ` when the noncompact
    /// node has even mark. When the mark is 1 the noncompact value is 0.
    pub fn diagram_chamber_values(&self) -> Result<Vec<T>> {
        let nc = self.noncompact_node()?;
        let gamma = &self.system.highest_root().coeffs;
        let mut z: Vec<T> = vec![T::one(); self.rank()];
        z[nc] = T::zero();
        match gamma[nc] {
            1 => {}
            2 => {
                let s: i64 = (0..self.rank()).filter(|&i| i != nc).map(|i| gamma[i] as i64).sum();
                z[nc] = T::ratio(-1 - s, 2);
            }
            m => {
                return Err(Error::NotCovered(format!("noncompact node with mark {m}")));
            }
        }
        Ok(z)
    }

    /// Number of roots of `Δ_c^+` that are negative on the `𝔨`-diagram chamber.
    ///
    /// `(−1)` to this power converts constants computed with the Dynkin positive
    /// system into the diagram-chamber normalization of `P_K`.
    pub fn diagram_flip_count(&self) -> Result<usize> {
        let z = self.diagram_chamber_values()?;
        Ok(self
            .compact_positive()
            .filter(|r| {
                let level =
                    r.coeffs.iter().zip(&z).fold(T::zero(), |acc, (&c, v)| acc + T::from_i32(c).unwrap() * v.clone());
                level.is_negative()
            })
            .count())
    }
}

fn is_noncompact_coeffs(coeffs: &[i32], noncompact_nodes: &[usize]) -> bool {
    noncompact_nodes.iter().map(|&i| coeffs[i]).sum::<i32>().rem_euclid(2) == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{build_root_system, LieType};
    use num_traits::{One, Zero};

    fn pair(t: LieType, r: usize, nc: usize) -> RealPair {
        RealPair::new(build_root_system(t, r).unwrap(), vec![nc - 1]).unwrap()
    }

    #[test]
    fn su21_split() {
        let p = pair(LieType::A, 2, 2);
        let c: Vec<Vec<i32>> = p.compact_positive().map(|r| r.coeffs.clone()).collect();
        assert_eq!(c, vec![vec![1, 0]]);
        assert_eq!(p.num_noncompact_positive(), 2);
        assert_eq!(p.k_type_label(), "A1+T1");
    }

    #[test]
    fn exceptional_labels() {
        let cases = [
            (LieType::G, 2, 2, "A1+A1", 2, 4),
            (LieType::F, 4, 1, "C3+A1", 10, 14),
            (LieType::F, 4, 4, "B4", 16, 8),
            (LieType::E, 6, 2, "A5+A1", 16, 20),
            (LieType::E, 6, 6, "D5+T1", 20, 16),
            (LieType::E, 7, 1, "D6+A1", 31, 32),
            (LieType::E, 7, 2, "A7", 28, 35),
            (LieType::E, 7, 7, "E6+T1", 36, 27),
            (LieType::E, 8, 8, "E7+A1", 64, 56),
            (LieType::E, 8, 1, "D8", 56, 64),
        ];
        for (t, r, nc, label, c, n) in cases {
            let p = pair(t, r, nc);
            assert_eq!(p.k_type_label(), label, "{t}{r} node {nc}");
            assert_eq!(p.num_compact_positive(), c);
            assert_eq!(p.num_noncompact_positive(), n);
        }
    }

    #[test]
    fn weyl_dimension_basics() {
        let p = pair(LieType::E, 6, 2);
        assert!(p.p_k(p.rho_c()).is_one());
        let su = pair(LieType::A, 2, 2);
        let lam = Weight::from_ints(&[3, 0, 7]);
        assert_eq!(su.p_k(&lam), Q::from_integer(3.into()));
        assert!(su.p_k(&Weight::from_ints(&[1, 1, 0])).is_zero());
    }
}
