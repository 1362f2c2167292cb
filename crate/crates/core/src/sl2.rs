//! Explicit sl2 representations, the Clebsch-Gordan decomposition of the
//! wedge square, submodules as 2-form subspaces, and the modules W(n)
//! attached to the top summand.
//!
//! Basis convention for the irreducible of highest weight n: w_0..w_n with
//! h w_k = (n - 2k) w_k, y w_k = (k+1) w_{k+1}, x w_k = (n-k+1) w_{k-1}.
//! All action matrices are integral. The wedge square is spanned by
//! w_i /\ w_j, i < j, in lexicographic order.

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactlin::{integer_primitive, rat, Rational, SparseMatrix};
use crate::koszul::{w_dims_scan, GradedDims, TwoFormSubspace, WedgeBasis};

/// The irreducible sl2 module of highest weight n, with explicit action
/// matrices on the basis w_0..w_n.
#[derive(Clone, Debug)]
pub struct Sl2Module {
    highest_weight: usize,
    action_x: SparseMatrix,
    action_y: SparseMatrix,
    action_h: SparseMatrix,
}

impl Sl2Module {
    pub fn highest_weight(&self) -> usize {
        self.highest_weight
    }

    pub fn dim(&self) -> usize {
        self.highest_weight + 1
    }

    pub fn action_x(&self) -> &SparseMatrix {
        &self.action_x
    }

    pub fn action_y(&self) -> &SparseMatrix {
        &self.action_y
    }

    pub fn action_h(&self) -> &SparseMatrix {
        &self.action_h
    }
}

/// Builds the irreducible of highest weight n.
pub fn irrep(n: usize) -> Sl2Module {
    let dim = n + 1;
    let mut x = SparseMatrix::new(dim, dim);
    let mut y = SparseMatrix::new(dim, dim);
    let mut h = SparseMatrix::new(dim, dim);
    for k in 0..dim {
        h.set(k, k, rat(n as i64 - 2 * k as i64));
        if k + 1 < dim {
            y.set(k + 1, k, rat(k as i64 + 1));
            x.set(k, k + 1, rat(n as i64 - k as i64));
        }
    }
    Sl2Module {
        highest_weight: n,
        action_x: x,
        action_y: y,
        action_h: h,
    }
}

/// Highest weights of the summands of V_n /\ V_n, by the Clebsch-Gordan
/// rule: 2n - 2 - 4j for j >= 0 while non-negative. Multiplicity free.
pub fn clebsch_gordan_wedge(n: usize) -> Vec<usize> {
    if n == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut w = 2 * n as i64 - 2;
    while w >= 0 {
        out.push(w as usize);
        w -= 4;
    }
    out
}

/// Indices j valid for highest weight n.
pub fn summand_indices(n: usize) -> Vec<usize> {
    (0..clebsch_gordan_wedge(n).len()).collect()
}

/// A choice of Clebsch-Gordan summands of V_n /\ V_n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SummandSelection {
    n: usize,
    selected: BTreeSet<usize>,
}

impl SummandSelection {
    pub fn new(n: usize, selected: impl IntoIterator<Item = usize>) -> Result<Self> {
        let count = clebsch_gordan_wedge(n).len();
        let selected: BTreeSet<usize> = selected.into_iter().collect();
        if let Some(&bad) = selected.iter().find(|&&j| j >= count) {
            return Err(Error::InvalidSummand(bad));
        }
        Ok(SummandSelection { n, selected })
    }

    pub fn full(n: usize) -> Self {
        SummandSelection {
            n,
            selected: summand_indices(n).into_iter().collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn selected(&self) -> impl Iterator<Item = usize> + '_ {
        self.selected.iter().copied()
    }

    pub fn contains(&self, j: usize) -> bool {
        self.selected.contains(&j)
    }
}

/// Action induced on the wedge square: a /\ b goes to Xa /\ b + a /\ Xb.
pub fn induced_wedge_action(action: &SparseMatrix, dim: usize) -> SparseMatrix {
    let w2 = WedgeBasis::new(dim, 2);
    let mut out = SparseMatrix::new(w2.len(), w2.len());
    // column k of the action = image of basis vector k
    let mut columns: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); dim];
    for (r, c, v) in action.iter() {
        columns[c].push((r, v.clone()));
    }
    for pi in 0..w2.len() {
        let t = w2.tuple(pi);
        let (i, j) = (t[0], t[1]);
        // (X w_i) /\ w_j: each target t gives w_t /\ w_j
        for (target, v) in &columns[i] {
            if *target == j {
                continue; // repeated factor wedges to zero
            }
            let (a, b, s) = if *target < j {
                (*target, j, 1)
            } else {
                (j, *target, -1)
            };
            out.add_to(crate::koszul::pair_index(dim, a, b), pi, v * rat(s));
        }
        // w_i /\ (X w_j): each target t gives w_i /\ w_t
        for (target, v) in &columns[j] {
            if *target == i {
                continue;
            }
            let (a, b, s) = if i < *target {
                (i, *target, 1)
            } else {
                (*target, i, -1)
            };
            out.add_to(crate::koszul::pair_index(dim, a, b), pi, v * rat(s));
        }
    }
    out
}

/// Constructs the selected summands inside /\2 V_n as a 2-form subspace:
/// for each selected j the highest-weight vector (the kernel of the raising
/// action on the weight-(2n-2-4j) subspace, one-dimensional by
/// multiplicity-freeness) is extracted and lowered repeatedly.
pub fn submodule_from_summands(sel: &SummandSelection) -> Result<TwoFormSubspace> {
    let n = sel.n();
    let module = irrep(n);
    let dim = module.dim();
    let w2 = WedgeBasis::new(dim, 2);
    let x2 = induced_wedge_action(module.action_x(), dim);
    let y2 = induced_wedge_action(module.action_y(), dim);

    let pair_weight = |pi: usize| -> i64 {
        let t = w2.tuple(pi);
        (n as i64 - 2 * t[0] as i64) + (n as i64 - 2 * t[1] as i64)
    };

    let weights = clebsch_gordan_wedge(n);
    let mut generators: Vec<Vec<Rational>> = Vec::new();
    for j in sel.selected() {
        let mu = weights[j] as i64;
        let weight_space: Vec<usize> = (0..w2.len()).filter(|&pi| pair_weight(pi) == mu).collect();
        let raised_space: Vec<usize> = (0..w2.len())
            .filter(|&pi| pair_weight(pi) == mu + 2)
            .collect();
        // raising action restricted to the weight-mu subspace
        let mut restricted = SparseMatrix::new(raised_space.len(), weight_space.len());
        for (local_col, &pi) in weight_space.iter().enumerate() {
            for (local_row, &target) in raised_space.iter().enumerate() {
                let v = x2.get(target, pi);
                if !v.is_zero() {
                    restricted.set(local_row, local_col, v);
                }
            }
        }
        let kernel = restricted.kernel_basis();
        assert_eq!(
            kernel.len(),
            1,
            "highest-weight space of weight {mu} must be one-dimensional"
        );
        let mut hwv = vec![Rational::zero(); w2.len()];
        for (local, &pi) in weight_space.iter().enumerate() {
            hwv[pi] = kernel[0][local].clone();
        }
        let mut v = primitive_signed(&hwv);
        generators.push(v.clone());
        for _ in 0..mu {
            v = y2.mul_vec(&v).expect("dimension fixed");
            generators.push(v.clone());
        }
    }
    TwoFormSubspace::new(dim, generators)
}

/// Scales to a primitive integer vector with positive leading entry.
fn primitive_signed(v: &[Rational]) -> Vec<Rational> {
    let ints = integer_primitive(v);
    let flip = ints
        .iter()
        .find(|x| !x.is_zero())
        .is_some_and(|x| x < &num_bigint::BigInt::from(0));
    ints.into_iter()
        .map(|x| Rational::from_integer(if flip { -x } else { x }))
        .collect()
}

/// Graded dimensions of W(n), the Koszul module of the pair
/// (V_n, top Clebsch-Gordan summand).
pub fn weyman_dims(n: usize, q_max: usize) -> Result<GradedDims> {
    if n == 0 {
        return Err(Error::InvalidSummand(0));
    }
    let sel = SummandSelection::new(n, [0])?;
    let k = submodule_from_summands(&sel)?;
    Ok(w_dims_scan(&k, q_max))
}

/// Finite-dimensionality criterion for the Koszul module of a selection:
/// true exactly when the top summand (j = 0) is selected.
pub fn findim_criterion(sel: &SummandSelection) -> bool {
    sel.contains(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::koszul::{w_dim, wedge2_dim};
    use crate::resonance::vanishing_decision;

    fn commutator(a: &SparseMatrix, b: &SparseMatrix) -> SparseMatrix {
        let ab = a.mul(b).unwrap();
        let ba = b.mul(a).unwrap();
        let mut out = SparseMatrix::new(ab.rows(), ab.cols());
        for (r, c, v) in ab.iter() {
            out.add_to(r, c, v.clone());
        }
        for (r, c, v) in ba.iter() {
            out.add_to(r, c, -v.clone());
        }
        out
    }

    fn assert_sl2_relations(x: &SparseMatrix, y: &SparseMatrix, h: &SparseMatrix) {
        assert_eq!(commutator(x, y), *h);
        let two_x = {
            let mut m = SparseMatrix::new(x.rows(), x.cols());
            for (r, c, v) in x.iter() {
                m.set(r, c, v * rat(2));
            }
            m
        };
        let minus_two_y = {
            let mut m = SparseMatrix::new(y.rows(), y.cols());
            for (r, c, v) in y.iter() {
                m.set(r, c, v * rat(-2));
            }
            m
        };
        assert_eq!(commutator(h, x), two_x);
        assert_eq!(commutator(h, y), minus_two_y);
    }

    #[test]
    fn defining_representation() {
        let m = irrep(1);
        assert_eq!(m.dim(), 2);
        assert_eq!(m.action_h().get(0, 0), rat(1));
        assert_eq!(m.action_h().get(1, 1), rat(-1));
    }

    #[test]
    fn trivial_representation() {
        let m = irrep(0);
        assert!(m.action_x().is_zero());
        assert!(m.action_y().is_zero());
        assert!(m.action_h().is_zero());
    }

    #[test]
    fn raising_after_lowering_on_highest_vector() {
        let m = irrep(3);
        let w0: Vec<Rational> = vec![rat(1), rat(0), rat(0), rat(0)];
        let lowered = m.action_y().mul_vec(&w0).unwrap();
        let back = m.action_x().mul_vec(&lowered).unwrap();
        assert_eq!(back[0], rat(3));
        assert!(back[1..].iter().all(|v| v.is_zero()));
    }

    #[test]
    fn commutation_relations_hold() {
        for n in 0..=10 {
            let m = irrep(n);
            assert_sl2_relations(m.action_x(), m.action_y(), m.action_h());
        }
    }

    #[test]
    fn induced_action_satisfies_relations() {
        for n in 1..=5 {
            let m = irrep(n);
            let dim = m.dim();
            let x2 = induced_wedge_action(m.action_x(), dim);
            let y2 = induced_wedge_action(m.action_y(), dim);
            let h2 = induced_wedge_action(m.action_h(), dim);
            assert_sl2_relations(&x2, &y2, &h2);
        }
    }

    #[test]
    fn wedge_weights_are_pairwise_sums() {
        for n in 1..=6 {
            let m = irrep(n);
            let dim = m.dim();
            let h2 = induced_wedge_action(m.action_h(), dim);
            let w2 = WedgeBasis::new(dim, 2);
            let mut from_action: Vec<i64> = Vec::new();
            for pi in 0..w2.len() {
                let v = h2.get(pi, pi);
                from_action.push(v.to_integer().try_into().unwrap());
            }
            let mut expected: Vec<i64> = (0..dim)
                .flat_map(|i| {
                    ((i + 1)..dim)
                        .map(move |j| (n as i64 - 2 * i as i64) + (n as i64 - 2 * j as i64))
                })
                .collect();
            let mut got = from_action.clone();
            got.sort_unstable();
            expected.sort_unstable();
            assert_eq!(got, expected);
        }
    }

    #[test]
    fn clebsch_gordan_summands() {
        assert_eq!(clebsch_gordan_wedge(3), vec![4, 0]);
        assert_eq!(clebsch_gordan_wedge(4), vec![6, 2]);
        assert_eq!(clebsch_gordan_wedge(1), vec![0]);
        for n in 1..=8 {
            let total: u64 = clebsch_gordan_wedge(n).iter().map(|&w| w as u64 + 1).sum();
            assert_eq!(total, crate::koszul::binomial(n + 1, 2));
        }
    }

    #[test]
    fn full_selection_gives_everything() {
        for n in 1..=4 {
            let k = submodule_from_summands(&SummandSelection::full(n)).unwrap();
            assert_eq!(k.dim(), wedge2_dim(n + 1));
        }
    }

    #[test]
    fn empty_selection_gives_zero() {
        let k = submodule_from_summands(&SummandSelection::new(3, []).unwrap()).unwrap();
        assert_eq!(k.dim(), 0);
    }

    #[test]
    fn weyman_submodule_for_n3() {
        let sel = SummandSelection::new(3, [0]).unwrap();
        let k = submodule_from_summands(&sel).unwrap();
        assert_eq!(k.dim(), 5);
    }

    #[test]
    fn invalid_selection_rejected() {
        assert!(matches!(
            SummandSelection::new(3, [2]),
            Err(Error::InvalidSummand(2))
        ));
    }

    #[test]
    fn submodules_are_action_stable() {
        for n in 2..=4 {
            for j in summand_indices(n) {
                let sel = SummandSelection::new(n, [j]).unwrap();
                let k = submodule_from_summands(&sel).unwrap();
                let m = irrep(n);
                let dim = m.dim();
                for action in [m.action_x(), m.action_y(), m.action_h()] {
                    let a2 = induced_wedge_action(action, dim);
                    for g in k.generators() {
                        let image = a2.mul_vec(g).unwrap();
                        let mut stacked = k.generators().to_vec();
                        stacked.push(image);
                        let rank = SparseMatrix::from_dense(stacked).rank();
                        assert_eq!(rank, k.dim(), "n={n} j={j}");
                    }
                }
            }
        }
    }

    #[test]
    fn weyman_dims_small() {
        let w1 = weyman_dims(1, 5).unwrap();
        assert_eq!(w1.dims, vec![0]);
        assert_eq!(w1.vanished_at, Some(0));

        let w3 = weyman_dims(3, 5).unwrap();
        assert_eq!(w3.dims, vec![1, 0]);
        assert_eq!(w3.vanished_at, Some(1));
    }

    #[test]
    fn weyman_w2_of_4_vanishes() {
        let sel = SummandSelection::new(4, [0]).unwrap();
        let k = submodule_from_summands(&sel).unwrap();
        assert_eq!(w_dim(&k, 2), 0);
    }

    #[test]
    fn findim_criterion_cases() {
        assert!(findim_criterion(&SummandSelection::new(3, [0]).unwrap()));
        assert!(findim_criterion(&SummandSelection::full(4)));
        assert!(!findim_criterion(&SummandSelection::new(4, [1]).unwrap()));
    }

    #[test]
    fn non_top_selection_does_not_vanish_at_small_degrees() {
        let sel = SummandSelection::new(4, [1]).unwrap();
        let k = submodule_from_summands(&sel).unwrap();
        let scan = w_dims_scan(&k, 4);
        assert_eq!(scan.vanished_at, None);
    }

    #[test]
    fn decision_cross_validation() {
        // every selection for n <= 5 at cap 10; non-top selections are all
        // caught by the dimension count (m stays below 2 dim V - 3)
        for n in 1..=5usize {
            let count = summand_indices(n).len();
            for mask in 0u32..(1 << count) {
                let sel =
                    SummandSelection::new(n, (0..count).filter(|j| mask & (1 << j) != 0)).unwrap();
                let k = submodule_from_summands(&sel).unwrap();
                let decision = vanishing_decision(&k, 10);
                assert_eq!(
                    decision.vanishes(),
                    findim_criterion(&sel),
                    "n={n} mask={mask:b}"
                );
            }
        }
    }
}
