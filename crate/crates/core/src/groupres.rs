//! Commutator-relators group presentations, the induced subspace of the
//! wedge square, and the resonance report with the deficiency bound.
//!
//! A relator is a product of commutators (x_i, x_j)^c of distinct
//! generators. Its image in /\2 V under the abelianized boundary is the sum
//! of c e_i /\ e_j, with the sign flipped when i > j. Relators that are not
//! in commutator form are rejected rather than reinterpreted.

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::{rat, Rational, SparseMatrix};
use crate::koszul::{pair_index, w_dims_scan, wedge2_dim, GradedDims, TwoFormSubspace};
use crate::resonance::{vanishing_decision, VanishingDecision};

/// A presentation with n generators whose relators are products of
/// commutators (x_i, x_j)^c, stored as (i, j, c) triples with 1-based
/// generator indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutatorPresentation {
    generator_count: usize,
    relators: Vec<Vec<(usize, usize, i64)>>,
}

impl CommutatorPresentation {
    pub fn new(generator_count: usize, relators: Vec<Vec<(usize, usize, i64)>>) -> Result<Self> {
        if generator_count == 0 {
            return Err(Error::InvalidPresentation(
                "at least one generator required".into(),
            ));
        }
        for (ridx, rel) in relators.iter().enumerate() {
            for &(i, j, c) in rel {
                if i < 1 || i > generator_count || j < 1 || j > generator_count {
                    return Err(Error::InvalidPresentation(format!(
                        "relator {}: generator index out of range 1..={generator_count}",
                        ridx + 1
                    )));
                }
                if i == j {
                    return Err(Error::InvalidPresentation(format!(
                        "relator {}: commutator of a generator with itself",
                        ridx + 1
                    )));
                }
                if c == 0 {
                    return Err(Error::InvalidPresentation(format!(
                        "relator {}: zero exponent",
                        ridx + 1
                    )));
                }
            }
        }
        Ok(CommutatorPresentation {
            generator_count,
            relators,
        })
    }

    /// Parses `gens n; rel [1,2] [3,4]^-2; ...`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut generator_count = None;
        let mut relators = Vec::new();
        for raw in text.split(';') {
            let stmt = raw.trim();
            if stmt.is_empty() {
                continue;
            }
            if let Some(rest) = stmt.strip_prefix("gens") {
                let n = rest
                    .trim()
                    .parse()
                    .map_err(|_| Error::InvalidPresentation(format!("bad gens count {rest:?}")))?;
                if generator_count.replace(n).is_some() {
                    return Err(Error::InvalidPresentation(
                        "duplicate gens statement".into(),
                    ));
                }
            } else if let Some(rest) = stmt.strip_prefix("rel") {
                relators.push(parse_relator(rest)?);
            } else {
                return Err(Error::InvalidPresentation(format!(
                    "unrecognized statement {stmt:?}"
                )));
            }
        }
        let n = generator_count
            .ok_or_else(|| Error::InvalidPresentation("missing gens statement".into()))?;
        CommutatorPresentation::new(n, relators)
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    pub fn relators(&self) -> &[Vec<(usize, usize, i64)>] {
        &self.relators
    }
}

fn parse_relator(s: &str) -> Result<Vec<(usize, usize, i64)>> {
    let bad = |msg: &str| Error::InvalidPresentation(format!("{msg} in relator {s:?}"));
    let mut triples = Vec::new();
    let mut chars = s.chars().peekable();
    loop {
        while matches!(chars.peek(), Some(c) if c.is_whitespace()) {
            chars.next();
        }
        if chars.peek().is_none() {
            break;
        }
        if chars.next() != Some('[') {
            return Err(bad("expected '['"));
        }
        let i = read_int(&mut chars).ok_or_else(|| bad("expected generator index"))?;
        while matches!(chars.peek(), Some(c) if c.is_whitespace()) {
            chars.next();
        }
        if chars.next() != Some(',') {
            return Err(bad("expected ','"));
        }
        let j = read_int(&mut chars).ok_or_else(|| bad("expected generator index"))?;
        while matches!(chars.peek(), Some(c) if c.is_whitespace()) {
            chars.next();
        }
        if chars.next() != Some(']') {
            return Err(bad("expected ']'"));
        }
        let exponent = if chars.peek() == Some(&'^') {
            chars.next();
            read_int(&mut chars).ok_or_else(|| bad("expected exponent"))?
        } else {
            1
        };
        if i < 1 || j < 1 {
            return Err(bad("generator indices are 1-based"));
        }
        triples.push((i as usize, j as usize, exponent));
    }
    if triples.is_empty() {
        return Err(bad("empty relator"));
    }
    Ok(triples)
}

fn read_int(chars: &mut std::iter::Peekable<std::str::Chars>) -> Option<i64> {
    while matches!(chars.peek(), Some(c) if c.is_whitespace()) {
        chars.next();
    }
    let mut text = String::new();
    if chars.peek() == Some(&'-') {
        text.push('-');
        chars.next();
    }
    while matches!(chars.peek(), Some(c) if c.is_ascii_digit()) {
        text.push(chars.next().unwrap());
    }
    text.parse().ok()
}

/// Image of the abelianized boundary map: each relator contributes the sum
/// of its commutator terms as a 2-form, and a maximal independent subset of
/// the images spans K. Zero and dependent images are dropped.
pub fn partial_image(p: &CommutatorPresentation) -> TwoFormSubspace {
    let n = p.generator_count();
    let w2 = wedge2_dim(n);
    let mut kept: Vec<Vec<Rational>> = Vec::new();
    for rel in p.relators() {
        let mut v = vec![Rational::zero(); w2];
        for &(i, j, c) in rel {
            let (a, b, sign) = if i < j { (i, j, 1) } else { (j, i, -1) };
            v[pair_index(n, a - 1, b - 1)] += rat(sign * c);
        }
        if v.iter().all(|x| x.is_zero()) {
            continue;
        }
        let mut candidate = kept.clone();
        candidate.push(v);
        if SparseMatrix::from_dense(candidate.clone()).rank() == candidate.len() {
            kept = candidate;
        }
    }
    TwoFormSubspace::new(n, kept).expect("kept images are independent by construction")
}

/// Resonance data for a commutator-relators group.
#[derive(Clone, Debug, Serialize)]
pub struct GroupResonanceReport {
    /// First Betti number; commutator relators abelianize to zero, so this
    /// is the generator count.
    pub b1: usize,
    /// The subspace K induced by the relators.
    pub k: TwoFormSubspace,
    /// Graded dimensions of the associated Koszul module, the degree-0
    /// entry being C(n,2) - dim K.
    pub dims: GradedDims,
    pub decision: VanishingDecision,
    /// 3 - b1, present only when the decision is Vanishes.
    pub deficiency_bound: Option<i64>,
}

/// Full resonance report for a presentation.
pub fn group_resonance(p: &CommutatorPresentation, q_max: usize) -> GroupResonanceReport {
    let k = partial_image(p);
    let decision = vanishing_decision(&k, q_max);
    let dims = w_dims_scan(&k, q_max);
    let b1 = p.generator_count();
    let deficiency_bound = decision.vanishes().then_some(3 - b1 as i64);
    GroupResonanceReport {
        b1,
        k,
        dims,
        decision,
        deficiency_bound,
    }
}

/// Certified upper bound 3 - b1 on the deficiency; only valid when the
/// resonance variety vanishes.
pub fn deficiency_bound(report: &GroupResonanceReport) -> Result<i64> {
    if !report.decision.vanishes() {
        return Err(Error::DecisionNotVanishes);
    }
    Ok(3 - report.b1 as i64)
}

/// The five-relator example presentation on four generators whose
/// annihilator line misses the Pluecker quadric.
pub fn example_four_generator_presentation() -> CommutatorPresentation {
    CommutatorPresentation::parse(
        "gens 4; rel [1,2]; rel [2,3]; rel [3,4]; rel [1,4]; rel [1,3] [2,4];",
    )
    .expect("example presentation is well formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::koszul::binomial;
    use crate::resonance::NonVanishingReason;

    #[test]
    fn parser_accepts_example() {
        let p = example_four_generator_presentation();
        assert_eq!(p.generator_count(), 4);
        assert_eq!(p.relators().len(), 5);
        assert_eq!(p.relators()[4], vec![(1, 3, 1), (2, 4, 1)]);
    }

    #[test]
    fn parser_accepts_exponents() {
        let p = CommutatorPresentation::parse("gens 3; rel [1,2] [2,3]^-2;").unwrap();
        assert_eq!(p.relators()[0], vec![(1, 2, 1), (2, 3, -2)]);
    }

    #[test]
    fn parser_rejects_garbage() {
        for text in [
            "rel [1,2];",
            "gens 3; rel [1,2;",
            "gens 3; rel [1 2];",
            "gens 3; rel;",
            "gens 3; hello;",
            "gens 3; rel [1,2]^0;",
            "gens 3; rel [1,1];",
            "gens 3; rel [1,4];",
            "gens x; rel [1,2];",
        ] {
            assert!(CommutatorPresentation::parse(text).is_err(), "{text:?}");
        }
    }

    #[test]
    fn single_commutator_image() {
        let p = CommutatorPresentation::parse("gens 2; rel [1,2];").unwrap();
        let k = partial_image(&p);
        assert_eq!(k.dim(), 1);
        assert_eq!(k.generators()[0], vec![rat(1)]);
    }

    #[test]
    fn reversed_commutator_spans_the_same_line() {
        let forward = partial_image(&CommutatorPresentation::parse("gens 3; rel [1,2];").unwrap());
        let backward = partial_image(&CommutatorPresentation::parse("gens 3; rel [2,1];").unwrap());
        assert_eq!(backward.generators()[0][0], rat(-1));
        assert!(forward.contains_subspace(&backward));
        assert!(backward.contains_subspace(&forward));
    }

    #[test]
    fn dependent_relators_are_dropped() {
        let p =
            CommutatorPresentation::parse("gens 3; rel [1,2]; rel [1,2]^3; rel [1,2]^-1 [2,1];")
                .unwrap();
        // images: e12, 3 e12, -2 e12: one independent, none zero
        let k = partial_image(&p);
        assert_eq!(k.dim(), 1);

        let cancelling = CommutatorPresentation::parse("gens 3; rel [1,2] [2,1];").unwrap();
        assert_eq!(partial_image(&cancelling).dim(), 0);
    }

    #[test]
    fn example_annihilator_is_the_expected_line() {
        let k = partial_image(&example_four_generator_presentation());
        assert_eq!(k.dim(), 5);
        let perp = k.perp();
        assert_eq!(perp.len(), 1);
        // p12 = p14 = p23 = p34 = 0 and p13 + p24 = 0
        let omega = &perp[0];
        assert!(
            omega[0].is_zero() && omega[2].is_zero() && omega[3].is_zero() && omega[5].is_zero()
        );
        assert_eq!(omega[1], -omega[4].clone());
        assert!(!omega[1].is_zero());
    }

    #[test]
    fn example_group_end_to_end() {
        let p = example_four_generator_presentation();
        let report = group_resonance(&p, 6);
        assert_eq!(report.b1, 4);
        assert_eq!(report.dims.dims, vec![1, 0]);
        assert_eq!(report.dims.vanished_at, Some(1));
        assert_eq!(
            report.decision,
            VanishingDecision::Vanishes { degree: Some(1) }
        );
        assert_eq!(report.deficiency_bound, Some(-1));
        assert_eq!(deficiency_bound(&report).unwrap(), -1);
    }

    #[test]
    fn two_generator_single_relator() {
        let p = CommutatorPresentation::parse("gens 2; rel [1,2];").unwrap();
        let report = group_resonance(&p, 4);
        assert_eq!(
            report.decision,
            VanishingDecision::Vanishes { degree: Some(0) }
        );
        assert_eq!(deficiency_bound(&report).unwrap(), 1);
    }

    #[test]
    fn free_group_does_not_vanish() {
        let p = CommutatorPresentation::new(3, vec![]).unwrap();
        let report = group_resonance(&p, 3);
        assert_eq!(
            report.decision,
            VanishingDecision::NonVanishes {
                reason: NonVanishingReason::DimensionCount
            }
        );
        assert!(report.deficiency_bound.is_none());
        assert_eq!(deficiency_bound(&report), Err(Error::DecisionNotVanishes));
    }

    #[test]
    fn vanishing_needs_enough_relators() {
        // contrapositive of the threshold: certified vanishing forces
        // dim K >= 2n - 3
        let presentations = [
            "gens 2; rel [1,2];",
            "gens 3; rel [1,2]; rel [1,3]; rel [2,3];",
            "gens 4; rel [1,2]; rel [2,3]; rel [3,4]; rel [1,4]; rel [1,3] [2,4];",
            "gens 3; rel [1,2];",
            "gens 4; rel [1,2] [3,4]; rel [1,3];",
        ];
        for text in presentations {
            let p = CommutatorPresentation::parse(text).unwrap();
            let report = group_resonance(&p, 5);
            if report.decision.vanishes() {
                assert!(
                    report.k.dim() as i64 >= 2 * report.b1 as i64 - 3,
                    "{text:?}"
                );
            }
        }
    }

    #[test]
    fn five_generator_group_with_vanishing_resonance_has_bound_minus_two() {
        // seven generic commutator relators on five generators
        let mut state = 0xdef1_c1e5u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % 19) as i64 - 9
        };
        let pairs: Vec<(usize, usize)> = (1..=5usize)
            .flat_map(|i| ((i + 1)..=5).map(move |j| (i, j)))
            .collect();
        loop {
            let relators: Vec<Vec<(usize, usize, i64)>> = (0..7)
                .map(|_| {
                    pairs
                        .iter()
                        .filter_map(|&(i, j)| {
                            let c = next();
                            (c != 0).then_some((i, j, c))
                        })
                        .collect()
                })
                .collect();
            let p = CommutatorPresentation::new(5, relators).unwrap();
            let report = group_resonance(&p, 6);
            if report.k.dim() < 7 {
                continue; // dependent draw, try again
            }
            if report.decision.vanishes() {
                assert_eq!(deficiency_bound(&report).unwrap(), -2);
                return;
            }
        }
    }

    #[test]
    fn degree_zero_dimension_reported() {
        let p = CommutatorPresentation::parse("gens 4; rel [1,2]; rel [3,4]^2;").unwrap();
        let report = group_resonance(&p, 2);
        assert_eq!(report.dims.dims[0], binomial(4, 2) - report.k.dim() as u64);
    }
}
