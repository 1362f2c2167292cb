//! The Koszul presentation of W(V,K) and its graded dimensions.
//!
//! Basis conventions, fixed so that all matrices are reproducible:
//! - degree-q monomials in n variables are enumerated colexicographically on
//!   exponent vectors;
//! - wedge tuples i1 < ... < ip are enumerated lexicographically;
//! - the basis of S_q (x) /\^p V is indexed monomial-major:
//!   monomial_index * wedge_count + wedge_index.
//!
//! Degrees follow the presentation grading, with /\3 V in degree 1 and
//! /\2 V in degree 0: the degree-q block of delta_3 maps S_{q-1} (x) /\3 V
//! into S_q (x) /\2 V, and the degree-q block of delta_2 maps S_q (x) /\2 V
//! into S_{q+1} (x) V.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactlin::{self, format_rational, parse_rational, Rational, SparseMatrix};

/// C(n, k) as u64; zero when k > n.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        0
    } else {
        num_integer::binomial(n as u64, k as u64)
    }
}

/// Dimension of /\2 of an n-dimensional space.
pub fn wedge2_dim(n: usize) -> usize {
    n * (n - 1) / 2
}

/// Index of the pair i < j in the lexicographic enumeration of 2-element
/// tuples from {0, ..., n-1}.
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

/// Degree-q monomials in n variables, enumerated colexicographically on
/// exponent vectors (smaller trailing exponents first).
pub struct MonomialBasis {
    n: usize,
    q: usize,
    exps: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
}

impl MonomialBasis {
    pub fn new(n: usize, q: usize) -> Self {
        assert!(n >= 1);
        let mut exps = Vec::with_capacity(binomial(q + n - 1, n - 1) as usize);
        let mut current = vec![0u32; n];
        fill_colex(&mut exps, &mut current, n - 1, q as u32);
        let index = exps
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        MonomialBasis { n, q, exps, index }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponents(&self, i: usize) -> &[u32] {
        &self.exps[i]
    }

    pub fn index_of(&self, exps: &[u32]) -> Option<usize> {
        self.index.get(exps).copied()
    }
}

// Writes positions 0..=pos of `current`, distributing `left` among them with
// the colex order: all vectors with current[pos] = 0 first.
fn fill_colex(out: &mut Vec<Vec<u32>>, current: &mut Vec<u32>, pos: usize, left: u32) {
    if pos == 0 {
        current[0] = left;
        out.push(current.clone());
        return;
    }
    for last in 0..=left {
        current[pos] = last;
        fill_colex(out, current, pos - 1, left - last);
    }
    current[pos] = 0;
}

/// Strictly increasing p-tuples from {0, ..., n-1} in lexicographic order.
pub struct WedgeBasis {
    n: usize,
    p: usize,
    tuples: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl WedgeBasis {
    pub fn new(n: usize, p: usize) -> Self {
        let mut tuples = Vec::new();
        let mut current = Vec::with_capacity(p);
        fill_tuples(&mut tuples, &mut current, 0, n, p);
        let index = tuples
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i))
            .collect();
        WedgeBasis {
            n,
            p,
            tuples,
            index,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn tuple(&self, i: usize) -> &[usize] {
        &self.tuples[i]
    }

    pub fn index_of(&self, t: &[usize]) -> Option<usize> {
        self.index.get(t).copied()
    }
}

fn fill_tuples(
    out: &mut Vec<Vec<usize>>,
    current: &mut Vec<usize>,
    start: usize,
    n: usize,
    p: usize,
) {
    if current.len() == p {
        out.push(current.clone());
        return;
    }
    let needed = p - current.len();
    for i in start..n {
        if n - i < needed {
            break;
        }
        current.push(i);
        fill_tuples(out, current, i + 1, n, p);
        current.pop();
    }
}

/// A subspace K of /\2 V, given by a basis of 2-form coefficient vectors in
/// the lexicographic pair basis. Generators are checked for independence on
/// construction.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoFormSubspace {
    n: usize,
    generators: Vec<Vec<Rational>>,
}

impl TwoFormSubspace {
    pub fn new(n: usize, generators: Vec<Vec<Rational>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSubspace(
                "the ambient space must be nonzero".into(),
            ));
        }
        let w2 = wedge2_dim(n);
        for g in &generators {
            if g.len() != w2 {
                return Err(Error::DimensionMismatch {
                    expected: w2,
                    got: g.len(),
                });
            }
        }
        let k = TwoFormSubspace { n, generators };
        if k.generator_matrix().rank() != k.generators.len() {
            return Err(Error::DependentGenerators);
        }
        Ok(k)
    }

    /// K = 0.
    pub fn zero(n: usize) -> Self {
        TwoFormSubspace {
            n,
            generators: Vec::new(),
        }
    }

    /// K = /\2 V, with the unit-vector basis.
    pub fn full(n: usize) -> Self {
        let w2 = wedge2_dim(n);
        let generators = (0..w2)
            .map(|i| {
                let mut v = vec![Rational::zero(); w2];
                v[i] = Rational::from_integer(1.into());
                v
            })
            .collect();
        TwoFormSubspace { n, generators }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// m = dim K.
    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[Vec<Rational>] {
        &self.generators
    }

    /// Generators as rows of an m x C(n,2) matrix.
    pub fn generator_matrix(&self) -> SparseMatrix {
        let mut m = SparseMatrix::new(self.generators.len(), wedge2_dim(self.n));
        for (r, g) in self.generators.iter().enumerate() {
            for (c, v) in g.iter().enumerate() {
                if !v.is_zero() {
                    m.set(r, c, v.clone());
                }
            }
        }
        m
    }

    /// A basis of the annihilator of K inside the dual wedge space.
    pub fn perp(&self) -> Vec<Vec<Rational>> {
        self.generator_matrix().kernel_basis()
    }

    /// True iff `other` is contained in this subspace.
    pub fn contains_subspace(&self, other: &TwoFormSubspace) -> bool {
        if other.n != self.n {
            return false;
        }
        let mut stacked = self.generators.clone();
        stacked.extend(other.generators.iter().cloned());
        let m = SparseMatrix::from_dense(stacked);
        m.rank() == self.dim()
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    i: usize,
    j: usize,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct SubspaceRepr {
    n: usize,
    generators: Vec<Vec<TermRepr>>,
}

impl Serialize for TwoFormSubspace {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let w2 = WedgeBasis::new(self.n, 2);
        let generators = self
            .generators
            .iter()
            .map(|g| {
                g.iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(idx, v)| {
                        let t = w2.tuple(idx);
                        TermRepr {
                            i: t[0] + 1,
                            j: t[1] + 1,
                            coeff: format_rational(v),
                        }
                    })
                    .collect()
            })
            .collect();
        SubspaceRepr {
            n: self.n,
            generators,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TwoFormSubspace {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = SubspaceRepr::deserialize(deserializer)?;
        let w2 = wedge2_dim(repr.n);
        let mut generators = Vec::with_capacity(repr.generators.len());
        for terms in repr.generators {
            let mut v = vec![Rational::zero(); w2];
            for t in terms {
                if t.i == 0 || t.j == 0 || t.i >= t.j || t.j > repr.n {
                    return Err(D::Error::custom(format!(
                        "bad wedge indices ({}, {}): need 1 <= i < j <= n",
                        t.i, t.j
                    )));
                }
                let c = parse_rational(&t.coeff).map_err(D::Error::custom)?;
                v[pair_index(repr.n, t.i - 1, t.j - 1)] += c;
            }
            generators.push(v);
        }
        TwoFormSubspace::new(repr.n, generators).map_err(D::Error::custom)
    }
}

/// Graded dimensions of W(V,K), with the first vanishing degree when the
/// scan found one. Since W is generated in degree 0, a zero at q0 forces
/// zeros at all later degrees.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedDims {
    pub dims: Vec<u64>,
    pub vanished_at: Option<usize>,
}

/// Matrix of the degree-q graded block of the Koszul differential delta_p,
/// p = 2 or 3. For p = 3 the source is S_{q-1} (x) /\3 V (empty when q = 0)
/// and the target S_q (x) /\2 V; for p = 2 the source is S_q (x) /\2 V and
/// the target S_{q+1} (x) V. Entries are the signs of the alternating sum.
pub fn delta_block(n: usize, p: usize, q: usize) -> Result<SparseMatrix> {
    match p {
        3 => {
            let target_mono = MonomialBasis::new(n, q);
            let w2 = WedgeBasis::new(n, 2);
            let rows = target_mono.len() * w2.len();
            if q == 0 {
                return Ok(SparseMatrix::new(rows, 0));
            }
            let source_mono = MonomialBasis::new(n, q - 1);
            let w3 = WedgeBasis::new(n, 3);
            let mut m = SparseMatrix::new(rows, source_mono.len() * w3.len());
            for mi in 0..source_mono.len() {
                let exps = source_mono.exponents(mi);
                for ti in 0..w3.len() {
                    let col = mi * w3.len() + ti;
                    let t = w3.tuple(ti);
                    for (pos, &var) in t.iter().enumerate() {
                        let rest: Vec<usize> = t.iter().copied().filter(|&x| x != var).collect();
                        let mut e = exps.to_vec();
                        e[var] += 1;
                        let target = target_mono.index_of(&e).unwrap();
                        let row = target * w2.len() + w2.index_of(&rest).unwrap();
                        let sign = if pos % 2 == 0 { 1 } else { -1 };
                        m.add_to(row, col, exactlin::rat(sign));
                    }
                }
            }
            Ok(m)
        }
        2 => {
            let source_mono = MonomialBasis::new(n, q);
            let target_mono = MonomialBasis::new(n, q + 1);
            let w2 = WedgeBasis::new(n, 2);
            let mut m = SparseMatrix::new(target_mono.len() * n, source_mono.len() * w2.len());
            for mi in 0..source_mono.len() {
                let exps = source_mono.exponents(mi);
                for pi in 0..w2.len() {
                    let col = mi * w2.len() + pi;
                    let t = w2.tuple(pi);
                    let (i, j) = (t[0], t[1]);
                    let mut ei = exps.to_vec();
                    ei[i] += 1;
                    let mut ej = exps.to_vec();
                    ej[j] += 1;
                    m.add_to(
                        target_mono.index_of(&ei).unwrap() * n + j,
                        col,
                        exactlin::rat(1),
                    );
                    m.add_to(
                        target_mono.index_of(&ej).unwrap() * n + i,
                        col,
                        exactlin::rat(-1),
                    );
                }
            }
            Ok(m)
        }
        other => Err(Error::InvalidExteriorDegree(other)),
    }
}

/// Degree-q block of the presentation map delta_3 + id (x) iota:
/// the horizontal concatenation of `delta_block(n, 3, q)` with the block
/// sending m (x) kappa to m (x) iota(kappa). Rows are indexed by
/// S_q (x) /\2 V.
pub fn presentation_block(k: &TwoFormSubspace, q: usize) -> SparseMatrix {
    let n = k.n();
    let mono = MonomialBasis::new(n, q);
    let w2 = wedge2_dim(n);
    let delta = delta_block(n, 3, q).expect("p = 3 is valid");
    let delta_cols = delta.cols();
    let mut m = SparseMatrix::new(mono.len() * w2, delta_cols + mono.len() * k.dim());
    for (r, c, v) in delta.iter() {
        m.set(r, c, v.clone());
    }
    for mi in 0..mono.len() {
        for (r, g) in k.generators().iter().enumerate() {
            let col = delta_cols + mi * k.dim() + r;
            for (pi, coeff) in g.iter().enumerate() {
                if !coeff.is_zero() {
                    m.set(mi * w2 + pi, col, coeff.clone());
                }
            }
        }
    }
    m
}

// ---------------------------------------------------------------------------
// Graded dimensions.
//
// The presentation block is equivariant for every diagonal torus symmetry of
// K: any integer grading of the variables that makes each generator
// homogeneous splits the block into independent class blocks. Detecting the
// finest such grading (all of Z^n for monomial subspaces, the h-weight for
// sl2 submodules, just total degree for generic K) keeps the eliminations
// small without changing any result; the sum of per-block coranks equals the
// corank of the whole block because rows and columns are only permuted.
// ---------------------------------------------------------------------------

/// Integer grading vectors under which every generator of K is homogeneous.
fn symmetry_grading(k: &TwoFormSubspace) -> Vec<Vec<i64>> {
    let n = k.n();
    let w2 = WedgeBasis::new(n, 2);
    let mut constraints: Vec<Vec<Rational>> = Vec::new();
    for g in k.generators() {
        let support: Vec<usize> = (0..g.len()).filter(|&i| !g[i].is_zero()).collect();
        for window in support.windows(2) {
            let (a, b) = (w2.tuple(window[0]), w2.tuple(window[1]));
            let mut row = vec![Rational::zero(); n];
            row[a[0]] += exactlin::rat(1);
            row[a[1]] += exactlin::rat(1);
            row[b[0]] -= exactlin::rat(1);
            row[b[1]] -= exactlin::rat(1);
            constraints.push(row);
        }
    }
    let kernel = if constraints.is_empty() {
        SparseMatrix::new(0, n).kernel_basis()
    } else {
        SparseMatrix::from_dense(constraints).kernel_basis()
    };
    let mut gradings = Vec::with_capacity(kernel.len());
    for v in kernel {
        let ints = exactlin::integer_primitive(&v);
        match ints
            .iter()
            .map(|x| x.to_i64())
            .collect::<Option<Vec<i64>>>()
        {
            Some(g) => gradings.push(g),
            // give up on the finer split; total degree alone is always valid
            None => return vec![vec![1; n]],
        }
    }
    if gradings.is_empty() {
        vec![vec![1; n]]
    } else {
        gradings
    }
}

struct Block {
    nrows: usize,
    ncols: usize,
    triplets: Vec<(usize, usize, BigInt)>,
}

impl Block {
    fn rows(&self) -> Vec<Vec<(usize, BigInt)>> {
        let mut rows: Vec<Vec<(usize, BigInt)>> = vec![Vec::new(); self.nrows];
        for (r, c, v) in &self.triplets {
            rows[*r].push((*c, v.clone()));
        }
        for row in &mut rows {
            row.sort_unstable_by_key(|e| e.0);
        }
        rows
    }
}

fn class_of(gradings: &[Vec<i64>], exps: &[u32], extra: &[usize]) -> Vec<i64> {
    gradings
        .iter()
        .map(|g| {
            let mut s: i64 = exps.iter().zip(g).map(|(&e, &w)| e as i64 * w).sum();
            for &v in extra {
                s += g[v];
            }
            s
        })
        .collect()
}

/// Splits the degree-q presentation block along the symmetry grading of K.
fn graded_blocks(k: &TwoFormSubspace, q: usize) -> Vec<Block> {
    let n = k.n();
    let w2 = WedgeBasis::new(n, 2);
    let mono = MonomialBasis::new(n, q);
    let gradings = symmetry_grading(k);

    let mut blocks: Vec<Block> = Vec::new();
    let mut class_ids: HashMap<Vec<i64>, usize> = HashMap::new();
    // global row -> (block, local row)
    let mut row_map: Vec<(usize, usize)> = Vec::with_capacity(mono.len() * w2.len());
    for mi in 0..mono.len() {
        let exps = mono.exponents(mi);
        for pi in 0..w2.len() {
            let class = class_of(&gradings, exps, w2.tuple(pi));
            let id = *class_ids.entry(class).or_insert_with(|| {
                blocks.push(Block {
                    nrows: 0,
                    ncols: 0,
                    triplets: Vec::new(),
                });
                blocks.len() - 1
            });
            row_map.push((id, blocks[id].nrows));
            blocks[id].nrows += 1;
        }
    }

    let push_column = |entries: &[(usize, BigInt)], blocks: &mut Vec<Block>| {
        let (block_id, _) = row_map[entries[0].0];
        let col = blocks[block_id].ncols;
        blocks[block_id].ncols += 1;
        for (grow, v) in entries {
            let (b, local) = row_map[*grow];
            debug_assert_eq!(b, block_id, "column crosses grading classes");
            blocks[block_id].triplets.push((local, col, v.clone()));
        }
    };

    if q >= 1 {
        let source = MonomialBasis::new(n, q - 1);
        let w3 = WedgeBasis::new(n, 3);
        for mi in 0..source.len() {
            let exps = source.exponents(mi);
            for ti in 0..w3.len() {
                let t = w3.tuple(ti);
                let mut entries = Vec::with_capacity(3);
                for (pos, &var) in t.iter().enumerate() {
                    let rest: Vec<usize> = t.iter().copied().filter(|&x| x != var).collect();
                    let mut e = exps.to_vec();
                    e[var] += 1;
                    let row = mono.index_of(&e).unwrap() * w2.len() + w2.index_of(&rest).unwrap();
                    let sign = if pos % 2 == 0 { 1 } else { -1 };
                    entries.push((row, BigInt::from(sign)));
                }
                push_column(&entries, &mut blocks);
            }
        }
    }

    let int_generators: Vec<Vec<BigInt>> = k
        .generators()
        .iter()
        .map(|g| exactlin::integer_primitive(g))
        .collect();
    for mi in 0..mono.len() {
        for g in &int_generators {
            let entries: Vec<(usize, BigInt)> = g
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(pi, v)| (mi * w2.len() + pi, v.clone()))
                .collect();
            push_column(&entries, &mut blocks);
        }
    }

    blocks
}

/// dim W_q(V,K) = dim(S_q (x) /\2 V) - rank of the degree-q presentation
/// block, computed exactly.
pub fn w_dim(k: &TwoFormSubspace, q: usize) -> u64 {
    graded_blocks(k, q)
        .into_iter()
        .map(|b| {
            let rank = exactlin::rank_certified_rows(b.rows(), b.nrows, b.ncols);
            (b.nrows - rank) as u64
        })
        .sum()
}

/// Certified test for W_q = 0. A `true` answer is exact: every block either
/// has full row rank modulo a random 31-bit prime (the witnessing minor
/// lifts to Q) or is confirmed by exact elimination. A `false` answer may
/// in rare cases be an uncertified "not proven zero"; callers treat it as
/// "keep scanning", which never produces a wrong verdict.
pub(crate) fn w_dim_zero_probe(k: &TwoFormSubspace, q: usize) -> bool {
    const EXACT_FALLBACK_ROWS: usize = 2000;
    for b in graded_blocks(k, q) {
        if b.nrows == 0 {
            continue;
        }
        if b.nrows > b.ncols {
            return false; // rank <= ncols < nrows, so the block has corank
        }
        let rows = b.rows();
        let certified_full = if b.nrows <= EXACT_FALLBACK_ROWS {
            exactlin::has_full_rank_certified(&rows, b.nrows)
        } else {
            exactlin::has_full_rank_modular(&rows, b.nrows)
        };
        if !certified_full {
            return false;
        }
    }
    true
}

/// Graded dimensions for q = 0..q_max, stopping at the first zero. The early
/// stop is sound because W is generated in degree 0.
pub fn w_dims_scan(k: &TwoFormSubspace, q_max: usize) -> GradedDims {
    let mut dims = Vec::new();
    for q in 0..=q_max {
        let d = w_dim(k, q);
        dims.push(d);
        if d == 0 {
            return GradedDims {
                dims,
                vanished_at: Some(q),
            };
        }
    }
    GradedDims {
        dims,
        vanished_at: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rat;
    use proptest::prelude::*;

    #[test]
    fn monomial_basis_is_colex() {
        let b = MonomialBasis::new(3, 2);
        let expect: Vec<Vec<u32>> = vec![
            vec![2, 0, 0],
            vec![1, 1, 0],
            vec![0, 2, 0],
            vec![1, 0, 1],
            vec![0, 1, 1],
            vec![0, 0, 2],
        ];
        let got: Vec<Vec<u32>> = (0..b.len()).map(|i| b.exponents(i).to_vec()).collect();
        assert_eq!(got, expect);
        assert_eq!(b.len() as u64, binomial(2 + 3 - 1, 3 - 1));
    }

    #[test]
    fn monomial_basis_sizes() {
        for n in 1..=5 {
            for q in 0..=6 {
                let b = MonomialBasis::new(n, q);
                assert_eq!(b.len() as u64, binomial(q + n - 1, n - 1));
                for i in 0..b.len() {
                    assert_eq!(b.index_of(b.exponents(i)), Some(i));
                }
            }
        }
    }

    #[test]
    fn wedge_basis_lex() {
        let b = WedgeBasis::new(4, 2);
        let got: Vec<Vec<usize>> = (0..b.len()).map(|i| b.tuple(i).to_vec()).collect();
        assert_eq!(
            got,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        for n in 2..=6 {
            for p in 2..=3 {
                assert_eq!(WedgeBasis::new(n, p).len() as u64, binomial(n, p));
            }
        }
        for (i, t) in got.iter().enumerate() {
            assert_eq!(pair_index(4, t[0], t[1]), i);
        }
    }

    #[test]
    fn delta3_on_three_variables() {
        // e1^e2^e3 -> v1 (x) e2^e3 - v2 (x) e1^e3 + v3 (x) e1^e2
        let m = delta_block(3, 3, 1).unwrap();
        assert_eq!((m.rows(), m.cols()), (9, 1));
        assert_eq!(m.get(pair_index(3, 1, 2), 0), rat(1));
        assert_eq!(m.get(3 + pair_index(3, 0, 2), 0), rat(-1));
        assert_eq!(m.get(2 * 3 + pair_index(3, 0, 1), 0), rat(1));
        assert_eq!(m.nnz(), 3);
    }

    #[test]
    fn delta3_vanishes_in_two_variables() {
        for q in 0..3 {
            assert_eq!(delta_block(2, 3, q).unwrap().cols(), 0);
        }
    }

    #[test]
    fn invalid_exterior_degree_rejected() {
        assert!(matches!(
            delta_block(3, 4, 1),
            Err(Error::InvalidExteriorDegree(4))
        ));
    }

    #[test]
    fn koszul_complex_composes_to_zero() {
        for n in 2..=4 {
            for q in 1..=3 {
                let d3 = delta_block(n, 3, q).unwrap();
                let d2 = delta_block(n, 2, q).unwrap();
                assert!(d2.mul(&d3).unwrap().is_zero(), "n={n} q={q}");
            }
        }
    }

    #[test]
    fn presentation_in_degree_zero_is_the_inclusion() {
        let k = TwoFormSubspace::new(3, vec![vec![rat(1), rat(0), rat(0)]]).unwrap();
        let m = presentation_block(&k, 0);
        assert_eq!((m.rows(), m.cols()), (3, 1));
        assert_eq!(m.get(0, 0), rat(1));
        assert_eq!(m.nnz(), 1);
        assert_eq!(m.rank(), k.dim());
    }

    #[test]
    fn full_subspace_has_full_rank_in_degree_one() {
        let k = TwoFormSubspace::full(4);
        let m = presentation_block(&k, 1);
        assert_eq!(m.rank_certified(), 4 * 6);
    }

    #[test]
    fn degree_zero_dimension_law() {
        for n in 2..=5 {
            let full = TwoFormSubspace::full(n);
            assert_eq!(w_dim(&full, 0), 0);
            let zero = TwoFormSubspace::zero(n);
            assert_eq!(w_dim(&zero, 0), binomial(n, 2));
        }
    }

    #[test]
    fn no_relations_in_two_variables() {
        // K = 0, n = 2: dim S_q (x) /\2 is q+1 and nothing cancels
        let k = TwoFormSubspace::zero(2);
        let scan = w_dims_scan(&k, 4);
        assert_eq!(scan.dims, vec![1, 2, 3, 4, 5]);
        assert_eq!(scan.vanished_at, None);
    }

    #[test]
    fn full_subspace_vanishes_at_zero() {
        let scan = w_dims_scan(&TwoFormSubspace::full(4), 5);
        assert_eq!(scan.dims, vec![0]);
        assert_eq!(scan.vanished_at, Some(0));
    }

    #[test]
    fn one_variable_space_is_trivial() {
        let k = TwoFormSubspace::zero(1);
        assert_eq!(w_dims_scan(&k, 3).vanished_at, Some(0));
    }

    #[test]
    fn dependent_generators_rejected() {
        let gens = vec![vec![rat(1), rat(2), rat(0)], vec![rat(2), rat(4), rat(0)]];
        assert_eq!(
            TwoFormSubspace::new(3, gens),
            Err(Error::DependentGenerators)
        );
    }

    #[test]
    fn subspace_json_round_trip() {
        let k = TwoFormSubspace::new(
            4,
            vec![vec![rat(1), rat(0), rat(0), rat(0), rat(0), rat(0)], {
                let mut v = vec![rat(0); 6];
                v[pair_index(4, 0, 2)] = crate::exactlin::ratio(1, 2);
                v[pair_index(4, 1, 3)] = rat(1);
                v
            }],
        )
        .unwrap();
        let json = serde_json::to_string(&k).unwrap();
        assert!(json.contains("\"coeff\":\"1/2\""));
        let back: TwoFormSubspace = serde_json::from_str(&json).unwrap();
        assert_eq!(back, k);
    }

    fn pseudo_random_subspace(n: usize, m: usize, seed: u64) -> TwoFormSubspace {
        let w2 = wedge2_dim(n);
        let mut state = seed.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(1);
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        loop {
            let gens: Vec<Vec<Rational>> = (0..m)
                .map(|_| (0..w2).map(|_| rat((next() % 19) as i64 - 9)).collect())
                .collect();
            if let Ok(k) = TwoFormSubspace::new(n, gens) {
                return k;
            }
        }
    }

    #[test]
    fn blocked_rank_matches_monolithic_presentation_rank() {
        for seed in 0..6u64 {
            let n = 3 + (seed % 3) as usize;
            let m = 1 + (seed % wedge2_dim(n) as u64) as usize;
            let k = pseudo_random_subspace(n, m, seed + 1);
            for q in 0..=2 {
                let direct = presentation_block(&k, q);
                let expected = direct.rows() as u64 - direct.rank() as u64;
                assert_eq!(w_dim(&k, q), expected, "seed={seed} q={q}");
            }
        }
    }

    #[test]
    fn early_stop_is_sound() {
        for seed in 0..4u64 {
            let k = pseudo_random_subspace(4, 5, seed + 11);
            let scan = w_dims_scan(&k, 6);
            if let Some(q0) = scan.vanished_at {
                assert_eq!(w_dim(&k, q0 + 1), 0, "seed={seed}");
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12))]

        #[test]
        fn degree_zero_law_random(seed in 0u64..1000, n in 2usize..6) {
            let w2 = wedge2_dim(n);
            let m = (seed as usize % (w2 + 1)).min(w2);
            let k = if m == 0 {
                TwoFormSubspace::zero(n)
            } else {
                pseudo_random_subspace(n, m, seed + 1)
            };
            prop_assert_eq!(w_dim(&k, 0), binomial(n, 2) - k.dim() as u64);
        }

        #[test]
        fn larger_subspace_means_smaller_quotient(seed in 0u64..500) {
            let n = 4usize;
            let small = pseudo_random_subspace(n, 2, seed + 3);
            // extend to a larger subspace containing the small one
            let mut gens = small.generators().to_vec();
            let extra = pseudo_random_subspace(n, 4, seed + 17);
            for g in extra.generators() {
                let mut candidate = gens.clone();
                candidate.push(g.clone());
                if TwoFormSubspace::new(n, candidate.clone()).is_ok() {
                    gens = candidate;
                }
            }
            let large = TwoFormSubspace::new(n, gens).unwrap();
            prop_assert!(large.contains_subspace(&small));
            for q in 0..=2 {
                prop_assert!(w_dim(&large, q) <= w_dim(&small, q));
            }
        }
    }
}
