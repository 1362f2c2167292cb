//! Reproducible random sampling of 2-form subspaces and their vanishing
//! decisions, for threshold experiments over the Grassmannian of m-planes.
//!
//! Sampling is deterministic: sample k draws from a ChaCha8 stream keyed by
//! (seed, k), so records do not depend on evaluation order.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::{rat, Rational};
use crate::koszul::{wedge2_dim, TwoFormSubspace};
use crate::resonance::{vanishing_decision, VanishingDecision};

/// One sampled subspace and its decision.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScanRecord {
    pub n: usize,
    pub m: usize,
    pub seed: u64,
    pub sample_index: usize,
    pub decision: VanishingDecision,
    /// First certified vanishing degree, when the decision is Vanishes
    /// with a degree.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_vanishing_degree: Option<usize>,
}

/// Draws a subspace with integer coefficients uniform in [-9, 9], redrawing
/// until the generators are independent.
pub fn random_subspace(n: usize, m: usize, rng: &mut impl RngCore) -> TwoFormSubspace {
    let w2 = wedge2_dim(n);
    loop {
        let gens: Vec<Vec<Rational>> = (0..m)
            .map(|_| {
                (0..w2)
                    .map(|_| rat((rng.next_u32() % 19) as i64 - 9))
                    .collect()
            })
            .collect();
        if let Ok(k) = TwoFormSubspace::new(n, gens) {
            return k;
        }
    }
}

/// Runs `samples` independent draws at the given (n, m) and decides each.
/// Fully reproducible from the seed.
pub fn run_scan(
    n: usize,
    m: usize,
    samples: usize,
    seed: u64,
    q_max: usize,
) -> Result<Vec<ScanRecord>> {
    if n == 0 {
        return Err(Error::InvalidScanDimension { n, m, max: 0 });
    }
    let max = wedge2_dim(n);
    if m > max {
        return Err(Error::InvalidScanDimension { n, m, max });
    }
    let mut records = Vec::with_capacity(samples);
    for sample_index in 0..samples {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(sample_index as u64);
        let k = random_subspace(n, m, &mut rng);
        let decision = vanishing_decision(&k, q_max);
        let min_vanishing_degree = match &decision {
            VanishingDecision::Vanishes { degree } => *degree,
            _ => None,
        };
        records.push(ScanRecord {
            n,
            m,
            seed,
            sample_index,
            decision,
            min_vanishing_degree,
        });
    }
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resonance::NonVanishingReason;

    #[test]
    fn invalid_m_rejected() {
        assert!(matches!(
            run_scan(4, 7, 1, 0, 2),
            Err(Error::InvalidScanDimension { .. })
        ));
    }

    #[test]
    fn below_threshold_everything_non_vanishes() {
        // n = 4, m = 4 < 2n - 3 = 5
        for record in run_scan(4, 4, 10, 42, 3).unwrap() {
            assert_eq!(
                record.decision,
                VanishingDecision::NonVanishes {
                    reason: NonVanishingReason::DimensionCount
                }
            );
            assert!(record.min_vanishing_degree.is_none());
        }
    }

    #[test]
    fn full_wedge_square_always_vanishes_at_zero() {
        for record in run_scan(4, 6, 5, 7, 3).unwrap() {
            assert_eq!(
                record.decision,
                VanishingDecision::Vanishes { degree: Some(0) }
            );
            assert_eq!(record.min_vanishing_degree, Some(0));
        }
    }

    #[test]
    fn at_threshold_some_sample_vanishes_at_degree_one() {
        let records = run_scan(4, 5, 50, 123, 3).unwrap();
        let vanished: Vec<_> = records.iter().filter(|r| r.decision.vanishes()).collect();
        assert!(!vanished.is_empty());
        for r in vanished {
            assert_eq!(r.min_vanishing_degree, Some(1));
        }
    }

    #[test]
    fn near_full_subspaces_vanish_by_degree_one() {
        // m = C(n,2) - 1: any vanishing happens exactly at degree 1
        let records = run_scan(5, 9, 20, 11, 3).unwrap();
        let vanished: Vec<_> = records.iter().filter(|r| r.decision.vanishes()).collect();
        assert!(!vanished.is_empty());
        for r in vanished {
            assert_eq!(r.min_vanishing_degree, Some(1));
        }
    }

    #[test]
    fn scans_are_deterministic() {
        let a = run_scan(4, 5, 6, 99, 3).unwrap();
        let b = run_scan(4, 5, 6, 99, 3).unwrap();
        let ja = serde_json::to_string(&a).unwrap();
        let jb = serde_json::to_string(&b).unwrap();
        assert_eq!(ja, jb);
        let c = run_scan(4, 5, 6, 100, 3).unwrap();
        let jc = serde_json::to_string(&c).unwrap();
        assert_ne!(ja, jc);
    }
}
