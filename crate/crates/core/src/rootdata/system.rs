use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};

use super::weight::Weight;
use crate::error::{Error, Result};
use crate::scalar::{Scalar, Q};

/// Cartan–Killing type of a simple Lie algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LieType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl LieType {
    pub fn is_classical(self) -> bool {
        matches!(self, LieType::A | LieType::B | LieType::C | LieType::D)
    }

    /// Checks that `(self, rank)` names a simple type.
    pub fn check_rank(self, rank: usize) -> Result<()> {
        let ok = match self {
            LieType::A | LieType::B | LieType::C => rank >= 1,
            LieType::D => rank >= 3,
            LieType::E => (6..=8).contains(&rank),
            LieType::F => rank == 4,
            LieType::G => rank == 2,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidType(format!("{self}{rank} is not a simple type")))
        }
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            LieType::A => 'A',
            LieType::B => 'B',
            LieType::C => 'C',
            LieType::D => 'D',
            LieType::E => 'E',
            LieType::F => 'F',
            LieType::G => 'G',
        };
        write!(f, "{c}")
    }
}

impl FromStr for LieType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(LieType::A),
            "B" => Ok(LieType::B),
            "C" => Ok(LieType::C),
            "D" => Ok(LieType::D),
            "E" => Ok(LieType::E),
            "F" => Ok(LieType::F),
            "G" => Ok(LieType::G),
            other => Err(Error::InvalidType(format!("unknown Lie type {other:?}"))),
        }
    }
}

/// A positive root, stored both as simple-root coefficients and as a vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Root<T = Q> {
    pub coeffs: Vec<i32>,
    pub vector: Weight<T>,
}

impl<T: Scalar> Root<T> {
    pub fn height(&self) -> i32 {
        self.coeffs.iter().sum()
    }
}

/// Exact root data of a simple Lie algebra.
///
/// Node numbering follows Bourbaki. Ambient coordinates:
///
/// * `A_n`: `ε_i − ε_{i+1}` in dimension `n + 1`.
/// * `B_n`, `C_n`, `D_n`: `ε_i − ε_{i+1}` for `i < n`, then `ε_n`, `2ε_n`, `ε_{n−1} + ε_n`.
/// * `G_2`: `α_1 = (1, −1, 0)` short, `α_2 = (−2, 1, 1)` long.
/// * `F_4`: `ε_2 − ε_3`, `ε_3 − ε_4`, `ε_4`, `½(ε_1 − ε_2 − ε_3 − ε_4)`.
/// * `E_8`: `½(ε_1 − ε_2 − … − ε_7 + ε_8)`, `ε_1 + ε_2`, `ε_{i−2} − ε_{i−3}` for `i ≥ 3`.
///   `E_7` and `E_6` use the first seven and six of these.
#[derive(Clone, Debug)]
pub struct RootSystem<T = Q> {
    lie_type: LieType,
    rank: usize,
    simple_roots: Vec<Weight<T>>,
    positive_roots: Vec<Root<T>>,
    cartan: Vec<Vec<i64>>,
}

impl<T: Scalar> RootSystem<T> {
    pub fn new(lie_type: LieType, rank: usize) -> Result<Self> {
        lie_type.check_rank(rank)?;
        let simple_roots = simple_roots::<T>(lie_type, rank);
        Ok(Self::from_simple_roots(lie_type, simple_roots))
    }

    fn from_simple_roots(lie_type: LieType, simple_roots: Vec<Weight<T>>) -> Self {
        let rank = simple_roots.len();
        let cartan = cartan_matrix(&simple_roots);
        let mut coeffs = positive_root_coefficients(&cartan);
        coeffs.sort_by(|a, b| {
            let ha: i32 = a.iter().sum();
            let hb: i32 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let dim = simple_roots[0].dim();
        let positive_roots = coeffs
            .into_iter()
            .map(|c| {
                let mut v = Weight::zero(dim);
                for (i, &m) in c.iter().enumerate() {
                    if m != 0 {
                        v += &simple_roots[i].scale(&T::from_i32(m).expect("small integer"));
                    }
                }
                Root { coeffs: c, vector: v }
            })
            .collect();
        Self { lie_type, rank, simple_roots, positive_roots, cartan }
    }

    pub fn lie_type(&self) -> LieType {
        self.lie_type
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Dimension of the ambient coordinate space.
    pub fn ambient_dim(&self) -> usize {
        self.simple_roots[0].dim()
    }

    pub fn simple_roots(&self) -> &[Weight<T>] {
        &self.simple_roots
    }

    /// Positive roots sorted by height; the last one is the highest root.
    pub fn positive_roots(&self) -> &[Root<T>] {
        &self.positive_roots
    }

    pub fn highest_root(&self) -> &Root<T> {
        self.positive_roots.last().expect("nonempty root system")
    }

    /// `cartan[i][j] = 2(α_i, α_j) / (α_j, α_j)`.
    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Vector `Σ c_i α_i` for integer coefficients.
    pub fn combination(&self, coeffs: &[i32]) -> Weight<T> {
        let mut v = Weight::zero(self.ambient_dim());
        for (i, &m) in coeffs.iter().enumerate() {
            if m != 0 {
                v += &self.simple_roots[i].scale(&T::from_i32(m).expect("small integer"));
            }
        }
        v
    }

    /// Values `⟨λ, α_i^∨⟩` on the simple coroots.
    pub fn coroot_values(&self, weight: &Weight<T>) -> Vec<T> {
        let two = T::one() + T::one();
        self.simple_roots.iter().map(|a| two.clone() * weight.dot(a) / a.norm2()).collect()
    }

    /// Fundamental weights `ϖ_i` with `⟨ϖ_i, α_j^∨⟩ = δ_ij`, in the span of the roots.
    pub fn fundamental_weights(&self) -> Result<Vec<Weight<T>>> {
        let two = T::one() + T::one();
        (0..self.rank)
            .map(|i| {
                let values: Vec<T> = (0..self.rank)
                    .map(|j| if i == j { self.simple_roots[j].norm2() / two.clone() } else { T::zero() })
                    .collect();
                self.dual_vector(&values)
            })
            .collect()
    }

    /// The unique vector `h` in the span of the roots with `α_i(h) = values[i]`,
    /// where `α(h)` is read as `⟨α, h⟩`.
    pub fn dual_vector(&self, values: &[T]) -> Result<Weight<T>> {
        // Solve the Gram system G x = values for h = Σ x_j α_j.
        let n = self.rank;
        let mut m: Vec<Vec<T>> = (0..n)
            .map(|i| {
                let mut row: Vec<T> = (0..n).map(|j| self.simple_roots[i].dot(&self.simple_roots[j])).collect();
                row.push(values[i].clone());
                row
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !m[r][col].is_zero())
                .ok_or_else(|| Error::Inconsistent("singular Gram matrix".into()))?;
            m.swap(col, pivot);
            for r in 0..n {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col].clone() / m[col][col].clone();
                    for c in col..=n {
                        let sub = f.clone() * m[col][c].clone();
                        m[r][c] = m[r][c].clone() - sub;
                    }
                }
            }
        }
        let mut h = Weight::zero(self.ambient_dim());
        for (j, row) in m.iter().enumerate() {
            let x = row[n].clone() / row[j].clone();
            h += &self.simple_roots[j].scale(&x);
        }
        Ok(h)
    }
}

/// Builds the root system of the given type and rank.
pub fn build_root_system(lie_type: LieType, rank: usize) -> Result<RootSystem<Q>> {
    RootSystem::new(lie_type, rank)
}

fn unit(dim: usize, i: usize, scale: i64) -> Vec<i64> {
    let mut v = vec![0; dim];
    v[i] = scale;
    v
}

// Simple roots as doubled integer coordinates.
fn doubled_simple_roots(lie_type: LieType, rank: usize) -> Vec<Vec<i64>> {
    let diff = |dim: usize, i: usize, j: usize| {
        let mut v = vec![0i64; dim];
        v[i] = 2;
        v[j] = -2;
        v
    };
    match lie_type {
        LieType::A => (0..rank).map(|i| diff(rank + 1, i, i + 1)).collect(),
        LieType::B | LieType::C | LieType::D => {
            let n = rank;
            let mut s: Vec<Vec<i64>> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
            let last = match lie_type {
                LieType::B => unit(n, n - 1, 2),
                LieType::C => unit(n, n - 1, 4),
                _ => {
                    let mut v = vec![0; n];
                    v[n - 2] = 2;
                    v[n - 1] = 2;
                    v
                }
            };
            s.push(last);
            s
        }
        LieType::G => vec![vec![2, -2, 0], vec![-4, 2, 2]],
        LieType::F => vec![diff(4, 1, 2), diff(4, 2, 3), unit(4, 3, 2), vec![1, -1, -1, -1]],
        LieType::E => {
            let mut s = vec![vec![1, -1, -1, -1, -1, -1, -1, 1], vec![2, 2, 0, 0, 0, 0, 0, 0]];
            for i in 3..=8 {
                s.push(diff(8, i - 2, i - 3));
            }
            s.truncate(rank);
            s
        }
    }
}

fn simple_roots<T: Scalar>(lie_type: LieType, rank: usize) -> Vec<Weight<T>> {
    doubled_simple_roots(lie_type, rank).iter().map(|v| Weight::from_scaled(v, 2)).collect()
}

fn cartan_matrix<T: Scalar>(simple: &[Weight<T>]) -> Vec<Vec<i64>> {
    let two = T::one() + T::one();
    simple
        .iter()
        .map(|a| {
            simple
                .iter()
                .map(|b| {
                    let v = two.clone() * a.dot(b) / b.norm2();
                    v.to_big_rational()
                        .and_then(|q| crate::scalar::as_integer(&q))
                        .and_then(|z| i64::try_from(z).ok())
                        .expect("Cartan entries are integers")
                })
                .collect()
        })
        .collect()
}

/// Positive roots in simple-root coordinates via closure under simple reflections.
fn positive_root_coefficients(cartan: &[Vec<i64>]) -> Vec<Vec<i32>> {
    let n = cartan.len();
    let mut seen: FxHashSet<Vec<i32>> = FxHashSet::default();
    let mut queue = VecDeque::new();
    for i in 0..n {
        let mut c = vec![0; n];
        c[i] = 1;
        seen.insert(c.clone());
        queue.push_back(c);
    }
    while let Some(c) = queue.pop_front() {
        for j in 0..n {
            // ⟨β, α_j^∨⟩ = Σ_i c_i · cartan[i][j]
            let pairing: i64 = (0..n).map(|i| c[i] as i64 * cartan[i][j]).sum();
            let mut r = c.clone();
            r[j] -= pairing as i32;
            if r.iter().all(|&x| x >= 0) && r.iter().any(|&x| x > 0) && seen.insert(r.clone()) {
                queue.push_back(r);
            }
        }
    }
    seen.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_counts() {
        let cases = [
            (LieType::A, 4, 10),
            (LieType::B, 3, 9),
            (LieType::C, 3, 9),
            (LieType::D, 4, 12),
            (LieType::G, 2, 6),
            (LieType::F, 4, 24),
            (LieType::E, 6, 36),
            (LieType::E, 7, 63),
            (LieType::E, 8, 120),
        ];
        for (t, r, count) in cases {
            let rs = build_root_system(t, r).unwrap();
            assert_eq!(rs.positive_roots().len(), count, "{t}{r}");
        }
    }

    #[test]
    fn highest_roots() {
        let g2 = build_root_system(LieType::G, 2).unwrap();
        assert_eq!(g2.highest_root().coeffs, vec![3, 2]);
        let e8 = build_root_system(LieType::E, 8).unwrap();
        assert_eq!(e8.highest_root().coeffs, vec![2, 3, 4, 6, 5, 4, 3, 2]);
        let f4 = build_root_system(LieType::F, 4).unwrap();
        assert_eq!(f4.highest_root().coeffs, vec![2, 3, 4, 2]);
    }

    #[test]
    fn rejects_bad_rank() {
        assert!(build_root_system(LieType::E, 5).is_err());
        assert!(build_root_system(LieType::G, 3).is_err());
        assert!(build_root_system(LieType::A, 0).is_err());
    }

    #[test]
    fn dual_vector_solves() {
        let rs = build_root_system(LieType::G, 2).unwrap();
        let vals = [Q::from_integer(1.into()), Q::from_integer((-4).into())];
        let h = rs.dual_vector(&vals).unwrap();
        for (a, v) in rs.simple_roots().iter().zip(&vals) {
            assert_eq!(&a.dot(&h), v);
        }
    }
}
