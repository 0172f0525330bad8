use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootdata::{RealPair, Root, Weight, WeylDimPoly};
use crate::scalar::{as_integer, Scalar, Q};

/// Which compact positive system the characteristic is dominant for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Chamber {
    /// Simple roots of `Δ_c^+ = Δ_c ∩ Δ^+`.
    Dynkin,
    /// Compact nodes of the extended diagram, with `−γ` when the noncompact mark is even.
    Diagram,
}

/// The grading of `𝔤` by `ad h` restricted to roots.
#[derive(Clone, Debug)]
pub struct Grading<T = Q> {
    /// `α_i(h)` on the simple roots.
    pub node_values: Vec<i64>,
    /// `α(h)` for each positive root, in root-system order.
    pub levels: Vec<i64>,
    /// Roots (either sign) with `α(h) < 0`.
    pub u_roots: Vec<Root<T>>,
    /// Noncompact roots (either sign) with `α(h) = 1`.
    pub p1_roots: Vec<Root<T>>,
    /// Positive noncompact roots with `α(h) = 0`.
    pub nl_roots: Vec<Root<T>>,
    /// Positive compact roots with `α(h) = 0`.
    pub cl_roots: Vec<Root<T>>,
    /// `#{α ∈ Δ^+ : α(h) > 0}`.
    pub n_sign: usize,
    pub rho_n_l: Weight<T>,
    pub rho_c_l: Weight<T>,
    /// Weyl dimension polynomial of `K ∩ L` for `Δ_c^+(𝔩)`.
    pub weyl_kl: WeylDimPoly<T>,
}

impl<T: Scalar> Grading<T> {
    /// Grades by the node values `α_i(h)`.
    pub fn from_node_values(pair: &RealPair<T>, node_values: &[i64]) -> Self {
        let sys = pair.system();
        let dim = sys.ambient_dim();
        let mut levels = Vec::with_capacity(sys.positive_roots().len());
        let mut u_roots = Vec::new();
        let mut p1_roots = Vec::new();
        let mut nl_roots = Vec::new();
        let mut cl_roots = Vec::new();
        let mut n_sign = 0;
        for r in sys.positive_roots() {
            let level: i64 = r.coeffs.iter().zip(node_values).map(|(&c, &v)| c as i64 * v).sum();
            levels.push(level);
            let nc = pair.is_noncompact(&r.coeffs);
            let neg = || Root { coeffs: r.coeffs.iter().map(|c| -c).collect(), vector: -&r.vector };
            if level > 0 {
                n_sign += 1;
                u_roots.push(neg());
            } else if level < 0 {
                u_roots.push(r.clone());
            }
            if nc && level == 1 {
                p1_roots.push(r.clone());
            }
            if nc && level == -1 {
                p1_roots.push(neg());
            }
            if level == 0 {
                if nc {
                    nl_roots.push(r.clone());
                } else {
                    cl_roots.push(r.clone());
                }
            }
        }
        let rho_n_l = Weight::half_sum(dim, nl_roots.iter().map(|r| &r.vector));
        let weyl_kl = WeylDimPoly::new(dim, cl_roots.iter().map(|r| r.vector.clone()).collect());
        let rho_c_l = weyl_kl.rho().clone();
        Self {
            node_values: node_values.to_vec(),
            levels,
            u_roots,
            p1_roots,
            nl_roots,
            cl_roots,
            n_sign,
            rho_n_l,
            rho_c_l,
            weyl_kl,
        }
    }

    /// Grades by a characteristic `h` given in ambient coordinates.
    pub fn from_h(pair: &RealPair<T>, h: &Weight<T>) -> Result<Self> {
        let values = integral_node_values(pair, h)?;
        Ok(Self::from_node_values(pair, &values))
    }

    /// Histogram of `α(h)` over all roots.
    pub fn level_histogram(&self) -> BTreeMap<i64, usize> {
        let mut m = BTreeMap::new();
        for &l in &self.levels {
            *m.entry(l).or_insert(0) += 1;
            *m.entry(-l).or_insert(0) += 1;
        }
        m
    }

    /// The roots folded by the constant computation: `Δ_n^+(𝔩) ∪ Δ(𝔭_1)`.
    pub fn fold_roots(&self) -> Vec<&Root<T>> {
        self.nl_roots.iter().chain(&self.p1_roots).collect()
    }

    /// Checks the two dimension identities against the pair.
    pub fn check_dimensions(&self, pair: &RealPair<T>) -> Result<()> {
        let lhs = pair.num_compact_positive() as i64 - self.cl_roots.len() as i64 - self.nl_roots.len() as i64;
        if lhs != self.p1_roots.len() as i64 {
            return Err(Error::invariant(
                "degree identity",
                format!("#Δc+ − #Δc+(l) − #Δn+(l) = {lhs}, #Δ(p1) = {}", self.p1_roots.len()),
            ));
        }
        let d = self.u_roots.len() as i64 - self.p1_roots.len() as i64;
        if d != pair.num_noncompact_positive() as i64 {
            return Err(Error::invariant(
                "dim u − dim p1 = #Δn+",
                format!("#Δ(u) − #Δ(p1) = {d}, #Δn+ = {}", pair.num_noncompact_positive()),
            ));
        }
        Ok(())
    }
}

/// `α_i(h)` for each simple root, rejecting non-integral values.
pub fn integral_node_values<T: Scalar>(pair: &RealPair<T>, h: &Weight<T>) -> Result<Vec<i64>> {
    pair.system()
        .simple_roots()
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let v = a.dot(h);
            v.to_big_rational()
                .and_then(|q| as_integer(&q))
                .and_then(|z| i64::try_from(z).ok())
                .ok_or_else(|| Error::NonIntegral(format!("α_{}(h) = {v}", i + 1)))
        })
        .collect()
}

/// A real form of the complex orbit, given by a characteristic `h`.
#[derive(Clone, Debug)]
pub struct RealFormOrbit<T = Q> {
    pub form_id: usize,
    /// Human-readable origin: a signed tableau or diagram labels.
    pub description: String,
    pub h: Weight<T>,
    pub chamber: Chamber,
    pub grading: Grading<T>,
}

impl<T: Scalar> RealFormOrbit<T> {
    /// Builds the form and checks every invariant, naming the first failure.
    pub fn new(
        pair: &RealPair<T>,
        form_id: usize,
        description: String,
        h: Weight<T>,
        chamber: Chamber,
    ) -> Result<Self> {
        let grading = Grading::from_h(pair, &h)?;
        let form = Self { form_id, description, h, chamber, grading };
        form.check_invariants(pair)?;
        Ok(form)
    }

    pub fn check_invariants(&self, pair: &RealPair<T>) -> Result<()> {
        self.check_dominance(pair)?;
        self.grading.check_dimensions(pair)
    }

    fn check_dominance(&self, pair: &RealPair<T>) -> Result<()> {
        let values = &self.grading.node_values;
        let level = |coeffs: &[i32]| -> i64 { coeffs.iter().zip(values).map(|(&c, &v)| c as i64 * v).sum() };
        match self.chamber {
            Chamber::Dynkin => {
                for r in pair.compact_simple() {
                    if level(&r.coeffs) < 0 {
                        return Err(Error::invariant(
                            "dominance",
                            format!("compact simple root {:?} has negative value", r.coeffs),
                        ));
                    }
                }
            }
            Chamber::Diagram => {
                let nc = pair.noncompact_node()?;
                let gamma = pair.system().highest_root().coeffs.clone();
                for (i, &v) in values.iter().enumerate() {
                    if i != nc && v < 0 {
                        return Err(Error::invariant("dominance", format!("α_{}(h) < 0", i + 1)));
                    }
                }
                if gamma[nc] % 2 == 0 && level(&gamma) > 0 {
                    return Err(Error::invariant("dominance", "(−γ)(h) < 0".to_string()));
                }
            }
        }
        Ok(())
    }

    pub fn n_sign(&self) -> usize {
        self.grading.n_sign
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{build_root_system, LieType};

    fn su(p: usize, q: usize) -> RealPair {
        RealPair::new(build_root_system(LieType::A, p + q - 1).unwrap(), vec![p - 1]).unwrap()
    }

    #[test]
    fn su_pp_k0_is_trivial() {
        for p in 1..4 {
            let pair = su(p, p);
            let mut h = vec![-1; p];
            h.extend(vec![1; p]);
            let g = Grading::from_h(&pair, &Weight::from_ints(&h)).unwrap();
            assert!(g.nl_roots.is_empty());
            assert!(g.p1_roots.is_empty());
            assert_eq!(g.n_sign, 0);
            g.check_dimensions(&pair).unwrap();
        }
    }

    #[test]
    fn su21_form1() {
        let pair = su(1, 2);
        let form =
            RealFormOrbit::new(&pair, 1, "+-|-".into(), Weight::from_ints(&[1, 0, -1]), Chamber::Dynkin).unwrap();
        assert_eq!(form.n_sign(), 3);
        assert_eq!(form.grading.nl_roots.len(), 0);
        assert_eq!(form.grading.p1_roots.len(), 1);
    }

    #[test]
    fn rejects_fractional_h() {
        let pair = su(1, 2);
        let h = Weight::from_scaled(&[1, 0, -1], 2);
        assert!(matches!(Grading::from_h(&pair, &h), Err(Error::NonIntegral(_))));
    }
}
