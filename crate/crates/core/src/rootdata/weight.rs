use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::scalar::{parse_q, render_q, Scalar, Q};

/// A vector in the ambient coordinate space of a root system.
///
/// All root realizations used by this crate are orthonormal, so the invariant
/// form is the standard dot product of coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Weight<T = Q> {
    coords: Vec<T>,
}

impl<T: Scalar> Weight<T> {
    pub fn new(coords: Vec<T>) -> Self {
        Self { coords }
    }

    pub fn zero(dim: usize) -> Self {
        Self { coords: vec![T::zero(); dim] }
    }

    /// Builds a weight from integer numerators over a common denominator.
    pub fn from_scaled(numerators: &[i64], denominator: i64) -> Self {
        Self { coords: numerators.iter().map(|&n| T::ratio(n, denominator)).collect() }
    }

    pub fn from_ints(values: &[i64]) -> Self {
        Self::from_scaled(values, 1)
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn dot(&self, other: &Self) -> T {
        debug_assert_eq!(self.dim(), other.dim());
        self.coords.iter().zip(&other.coords).fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
    }

    pub fn norm2(&self) -> T {
        self.dot(self)
    }

    pub fn scale(&self, factor: &T) -> Self {
        Self { coords: self.coords.iter().map(|c| c.clone() * factor.clone()).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// Reflection of `self` in the hyperplane orthogonal to `root`.
    pub fn reflect(&self, root: &Self) -> Self {
        let two = T::one() + T::one();
        let k = two * self.dot(root) / root.norm2();
        self - &root.scale(&k)
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Weight<U> {
        Weight { coords: self.coords.iter().map(f).collect() }
    }
}

impl<T: Scalar> Weight<T> {
    /// Half the sum of the given vectors.
    pub fn half_sum<'a>(dim: usize, vectors: impl IntoIterator<Item = &'a Weight<T>>) -> Self {
        let mut acc = Weight::zero(dim);
        for v in vectors {
            acc += v;
        }
        acc.scale(&T::ratio(1, 2))
    }
}

impl<'a, T: Scalar> Add<&'a Weight<T>> for &'a Weight<T> {
    type Output = Weight<T>;
    fn add(self, rhs: &'a Weight<T>) -> Weight<T> {
        Weight { coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a.clone() + b.clone()).collect() }
    }
}

impl<'a, T: Scalar> Sub<&'a Weight<T>> for &'a Weight<T> {
    type Output = Weight<T>;
    fn sub(self, rhs: &'a Weight<T>) -> Weight<T> {
        Weight { coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a.clone() - b.clone()).collect() }
    }
}

impl<T: Scalar> Add for Weight<T> {
    type Output = Weight<T>;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl<T: Scalar> Sub for Weight<T> {
    type Output = Weight<T>;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl<T: Scalar> Neg for &Weight<T> {
    type Output = Weight<T>;
    fn neg(self) -> Weight<T> {
        Weight { coords: self.coords.iter().map(|c| -c.clone()).collect() }
    }
}

impl<T: Scalar> Neg for Weight<T> {
    type Output = Weight<T>;
    fn neg(self) -> Weight<T> {
        -&self
    }
}

impl<T: Scalar> AddAssign<&Weight<T>> for Weight<T> {
    fn add_assign(&mut self, rhs: &Weight<T>) {
        for (a, b) in self.coords.iter_mut().zip(&rhs.coords) {
            *a = a.clone() + b.clone();
        }
    }
}

impl<T: Scalar> SubAssign<&Weight<T>> for Weight<T> {
    fn sub_assign(&mut self, rhs: &Weight<T>) {
        for (a, b) in self.coords.iter_mut().zip(&rhs.coords) {
            *a = a.clone() - b.clone();
        }
    }
}

impl<T: Scalar> fmt::Display for Weight<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

// Exact weights serialize as a list of "n" / "n/d" strings.
impl Serialize for Weight<Q> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let strings: Vec<String> = self.coords.iter().map(render_q).collect();
        strings.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Weight<Q> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let strings = Vec::<String>::deserialize(deserializer)?;
        let coords = strings
            .iter()
            .map(|s| parse_q(s).ok_or_else(|| serde::de::Error::custom(format!("bad rational {s:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Weight { coords })
    }
}
