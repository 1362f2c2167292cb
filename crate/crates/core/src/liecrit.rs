//! Roots-and-weights vanishing criteria for resonance varieties of
//! irreducible modules, and the Torelli presets.
//!
//! The data of a problem is the root system, the highest weight of the dual
//! module V*, and the dominant weights occurring in the annihilator of K.
//! The decomposition of the second exterior power is an input, not
//! computed: the structured cases import it from the literature.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::resonance::{NonVanishingReason, VanishingDecision};
use crate::rootsys::{Family, RootSystem, Weight};

/// A vanishing problem phrased entirely in weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieResonanceProblem {
    rs: RootSystem,
    lambda_star: Weight,
    vv_kperp: Vec<Weight>,
}

/// Outcome of the summand criterion, with the witnessing simple root when
/// the resonance variety is nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CorollaryVerdict {
    Vanishes,
    NonVanishes { witness_root: Weight },
}

impl LieResonanceProblem {
    /// Checks dominance of the highest weight and of every annihilator
    /// weight.
    pub fn new(rs: RootSystem, lambda_star: Weight, vv_kperp: Vec<Weight>) -> Result<Self> {
        if !rs.is_dominant(&lambda_star) {
            return Err(Error::NotDominant);
        }
        for w in &vv_kperp {
            if !rs.is_dominant(w) {
                return Err(Error::NotDominant);
            }
        }
        Ok(LieResonanceProblem {
            rs,
            lambda_star,
            vv_kperp,
        })
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn lambda_star(&self) -> &Weight {
        &self.lambda_star
    }

    pub fn vv_kperp(&self) -> &[Weight] {
        &self.vv_kperp
    }

    /// Sufficient vanishing test: for every annihilator weight mu, the
    /// difference 2 lambda* - mu is not a simple root.
    pub fn vanishes_by_theorem(&self) -> bool {
        let twice = self.lambda_star.scaled(2);
        self.vv_kperp
            .iter()
            .all(|mu| !self.rs.is_simple_root(&twice.minus(mu)))
    }

    /// Exact test: the resonance variety vanishes iff no simple root beta
    /// with (lambda*, beta) != 0 has 2 lambda* - beta among the annihilator
    /// weights. Reports the witnessing root in the non-vanishing case.
    pub fn corollary_verdict(&self) -> CorollaryVerdict {
        let twice = self.lambda_star.scaled(2);
        for beta in self.rs.simple_roots() {
            if self.rs.inner(&self.lambda_star, &beta) == crate::exactlin::rat(0) {
                continue;
            }
            let candidate = twice.minus(&beta);
            if self
                .vv_kperp
                .iter()
                .any(|mu| self.rs.weights_equal(mu, &candidate))
            {
                return CorollaryVerdict::NonVanishes { witness_root: beta };
            }
        }
        CorollaryVerdict::Vanishes
    }

    pub fn vanishes_by_corollary(&self) -> bool {
        matches!(self.corollary_verdict(), CorollaryVerdict::Vanishes)
    }

    /// The corollary verdict as a vanishing decision. No graded degree is
    /// available on this route.
    pub fn decide(&self) -> VanishingDecision {
        match self.corollary_verdict() {
            CorollaryVerdict::Vanishes => VanishingDecision::Vanishes { degree: None },
            CorollaryVerdict::NonVanishes { .. } => VanishingDecision::NonVanishes {
                reason: NonVanishingReason::LieCriterion,
            },
        }
    }
}

/// Whether the wedge square of V(lambda) contains the summand of highest
/// weight 2 lambda - beta, for a simple root beta: exactly when
/// (lambda, beta) != 0.
pub fn summand_exists(rs: &RootSystem, lambda: &Weight, beta: &Weight) -> Result<bool> {
    if !rs.is_dominant(lambda) {
        return Err(Error::NotDominant);
    }
    if !rs.is_simple_root(beta) {
        return Err(Error::NotSimpleRoot);
    }
    Ok(rs.inner(lambda, beta) != crate::exactlin::rat(0))
}

/// Weight data for the Torelli group of a free group on n >= 3 generators:
/// type A, dual highest weight lambda_1 + lambda_{n-2}, annihilator weight
/// lambda_1 + lambda_{n-2} + lambda_{n-1}.
pub fn torelli_free_preset(n: usize) -> Result<LieResonanceProblem> {
    if n < 3 {
        return Err(Error::PresetParameter { min: 3, got: n });
    }
    let rs = RootSystem::type_a(n)?;
    let l1 = rs.fundamental_weight(1)?;
    let ln2 = rs.fundamental_weight(n - 2)?;
    let ln1 = rs.fundamental_weight(n - 1)?;
    let lambda_star = l1.plus(&ln2);
    let mu = lambda_star.plus(&ln1);
    LieResonanceProblem::new(rs, lambda_star, vec![mu])
}

/// Weight data for the Torelli group of a genus-g surface, g >= 3: type C,
/// dual highest weight lambda_3, annihilator weights 2 lambda_2 and 0.
pub fn torelli_surface_preset(g: usize) -> Result<LieResonanceProblem> {
    if g < 3 {
        return Err(Error::PresetParameter { min: 3, got: g });
    }
    let rs = RootSystem::type_c(g)?;
    let lambda_star = rs.fundamental_weight(3)?;
    let vv = vec![rs.fundamental_weight(2)?.scaled(2), Weight::zero(g)];
    LieResonanceProblem::new(rs, lambda_star, vv)
}

#[derive(Serialize, Deserialize)]
struct ProblemRepr {
    family: Family,
    rank: usize,
    lambda_star: Vec<i64>,
    vv_kperp: Vec<Vec<i64>>,
}

impl Serialize for LieResonanceProblem {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ProblemRepr {
            family: self.rs.family(),
            rank: self.rs.rank(),
            lambda_star: self.lambda_star.coords.clone(),
            vv_kperp: self.vv_kperp.iter().map(|w| w.coords.clone()).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LieResonanceProblem {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = ProblemRepr::deserialize(deserializer)?;
        let rs = match repr.family {
            Family::TypeA => RootSystem::type_a(repr.rank + 1),
            Family::TypeC => RootSystem::type_c(repr.rank),
        }
        .map_err(D::Error::custom)?;
        let expect = rs.ambient_dim();
        let check_len = |v: &Vec<i64>| -> std::result::Result<(), D::Error> {
            if v.len() != expect {
                Err(D::Error::custom(format!(
                    "weight length {} does not match ambient dimension {expect}",
                    v.len()
                )))
            } else {
                Ok(())
            }
        };
        check_len(&repr.lambda_star)?;
        for w in &repr.vv_kperp {
            check_len(w)?;
        }
        LieResonanceProblem::new(
            rs,
            Weight::new(repr.lambda_star),
            repr.vv_kperp.into_iter().map(Weight::new).collect(),
        )
        .map_err(D::Error::custom)
    }
}
