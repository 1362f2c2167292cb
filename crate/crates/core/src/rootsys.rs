//! Root systems of type A_{n-1} (for sl_n) and type C_g (for sp_2g).
//!
//! Weights are integer coordinate vectors on t_1, ..., t_ambient. For type A
//! the coordinates are taken modulo the all-ones vector; comparisons
//! normalize by subtracting the last coordinate, which is well defined on
//! classes. The inner product is the standard dot product, a positive
//! rescaling of the Killing form; every criterion downstream only consumes
//! vanishing and the integer ratios 2(a,b)/(b,b), which are scale invariant.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::{rat, ratio, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    TypeA,
    TypeC,
}

/// An integer weight-lattice element, as coordinates on t_1..t_ambient.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight {
    pub coords: Vec<i64>,
}

impl Weight {
    pub fn new(coords: Vec<i64>) -> Self {
        Weight { coords }
    }

    pub fn zero(len: usize) -> Self {
        Weight {
            coords: vec![0; len],
        }
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn plus(&self, other: &Weight) -> Weight {
        Weight {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn minus(&self, other: &Weight) -> Weight {
        Weight {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scaled(&self, c: i64) -> Weight {
        Weight {
            coords: self.coords.iter().map(|a| a * c).collect(),
        }
    }
}

/// A root system of type A_{ambient-1} or C_ambient.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RootSystem {
    family: Family,
    ambient: usize,
}

impl RootSystem {
    /// Type A on coordinates t_1..t_n, rank n - 1.
    pub fn type_a(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::IndexOutOfRange { index: n, max: 2 });
        }
        Ok(RootSystem {
            family: Family::TypeA,
            ambient: n,
        })
    }

    /// Type C on coordinates t_1..t_g, rank g.
    pub fn type_c(g: usize) -> Result<Self> {
        if g < 1 {
            return Err(Error::IndexOutOfRange { index: g, max: 1 });
        }
        Ok(RootSystem {
            family: Family::TypeC,
            ambient: g,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        match self.family {
            Family::TypeA => self.ambient - 1,
            Family::TypeC => self.ambient,
        }
    }

    /// t_i - t_{i+1} for both families, plus 2 t_g for type C.
    pub fn simple_roots(&self) -> Vec<Weight> {
        let mut roots = Vec::with_capacity(self.rank());
        for i in 0..self.ambient - 1 {
            let mut c = vec![0i64; self.ambient];
            c[i] = 1;
            c[i + 1] = -1;
            roots.push(Weight::new(c));
        }
        if self.family == Family::TypeC {
            let mut c = vec![0i64; self.ambient];
            c[self.ambient - 1] = 2;
            roots.push(Weight::new(c));
        }
        roots
    }

    /// lambda_i = t_1 + ... + t_i, for 1 <= i <= rank.
    pub fn fundamental_weight(&self, i: usize) -> Result<Weight> {
        if i < 1 || i > self.rank() {
            return Err(Error::IndexOutOfRange {
                index: i,
                max: self.rank(),
            });
        }
        let mut c = vec![0i64; self.ambient];
        for x in c.iter_mut().take(i) {
            *x = 1;
        }
        Ok(Weight::new(c))
    }

    /// Standard dot product on coordinate representatives. Against roots
    /// this is well defined on type A classes, since all roots are
    /// orthogonal to the all-ones vector.
    pub fn inner(&self, u: &Weight, v: &Weight) -> Rational {
        assert_eq!(u.len(), self.ambient, "weight length mismatch");
        assert_eq!(v.len(), self.ambient, "weight length mismatch");
        rat(u.coords.iter().zip(&v.coords).map(|(a, b)| a * b).sum())
    }

    /// 2 (alpha, beta) / (beta, beta).
    pub fn bracket(&self, alpha: &Weight, beta: &Weight) -> Result<Rational> {
        let bb = self.inner(beta, beta);
        if bb.is_zero() {
            return Err(Error::ZeroWeight);
        }
        Ok(rat(2) * self.inner(alpha, beta) / bb)
    }

    /// Canonical representative: type A subtracts the last coordinate,
    /// type C is untouched.
    pub fn normalize(&self, w: &Weight) -> Weight {
        match self.family {
            Family::TypeA => {
                let last = *w.coords.last().expect("nonempty weight");
                Weight::new(w.coords.iter().map(|c| c - last).collect())
            }
            Family::TypeC => w.clone(),
        }
    }

    /// Equality of weights, modulo the all-ones vector for type A.
    pub fn weights_equal(&self, u: &Weight, v: &Weight) -> bool {
        self.normalize(u) == self.normalize(v)
    }

    pub fn is_simple_root(&self, w: &Weight) -> bool {
        self.simple_roots().iter().any(|r| self.weights_equal(r, w))
    }

    /// True iff <w, alpha> is a non-negative integer for every simple root.
    /// Integer coordinates make the brackets integers automatically, so
    /// only the sign is checked.
    pub fn is_dominant(&self, w: &Weight) -> bool {
        self.simple_roots()
            .iter()
            .all(|a| self.bracket(w, a).expect("roots are nonzero") >= Rational::zero())
    }

    /// Coefficients of w over the simple-root basis. For type A the class
    /// must meet the span of the roots: the coordinate sum has to be
    /// divisible by the ambient dimension, and the sum-zero representative
    /// is expanded. For type C the simple roots span everything.
    fn simple_root_coefficients(&self, w: &Weight) -> Result<Vec<Rational>> {
        assert_eq!(w.len(), self.ambient, "weight length mismatch");
        match self.family {
            Family::TypeA => {
                let total: i64 = w.coords.iter().sum();
                if total.rem_euclid(self.ambient as i64) != 0 {
                    return Err(Error::NotInRootSpan);
                }
                let mean = total / self.ambient as i64;
                let rep: Vec<i64> = w.coords.iter().map(|c| c - mean).collect();
                let mut coeffs = Vec::with_capacity(self.ambient - 1);
                let mut partial = 0i64;
                for &c in rep.iter().take(self.ambient - 1) {
                    partial += c;
                    coeffs.push(rat(partial));
                }
                Ok(coeffs)
            }
            Family::TypeC => {
                let mut coeffs = Vec::with_capacity(self.ambient);
                let mut partial = 0i64;
                for &c in w.coords.iter().take(self.ambient - 1) {
                    partial += c;
                    coeffs.push(rat(partial));
                }
                partial += w.coords[self.ambient - 1];
                coeffs.push(ratio(partial, 2));
                Ok(coeffs)
            }
        }
    }

    /// Sum of the simple-root coefficients.
    pub fn height(&self, w: &Weight) -> Result<Rational> {
        Ok(self
            .simple_root_coefficients(w)?
            .into_iter()
            .fold(Rational::zero(), |acc, c| acc + c))
    }

    /// True iff all simple-root coefficients are non-negative integers.
    pub fn in_positive_cone(&self, w: &Weight) -> Result<bool> {
        Ok(self
            .simple_root_coefficients(w)?
            .iter()
            .all(|c| c.is_integer() && *c >= Rational::zero()))
    }
}

/// Standalone weight serialization: family, rank, and coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightRepr {
    pub family: Family,
    pub rank: usize,
    pub coords: Vec<i64>,
}

impl WeightRepr {
    pub fn of(rs: &RootSystem, w: &Weight) -> Self {
        WeightRepr {
            family: rs.family(),
            rank: rs.rank(),
            coords: w.coords.clone(),
        }
    }

    pub fn into_parts(self) -> Result<(RootSystem, Weight)> {
        let rs = match self.family {
            Family::TypeA => RootSystem::type_a(self.rank + 1)?,
            Family::TypeC => RootSystem::type_c(self.rank)?,
        };
        if self.coords.len() != rs.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: rs.ambient_dim(),
                got: self.coords.len(),
            });
        }
        Ok((rs, Weight::new(self.coords)))
    }
}
