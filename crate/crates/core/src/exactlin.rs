//! Exact sparse linear algebra over the rationals.
//!
//! Everything downstream reduces to ranks and kernels of sparse rational
//! matrices. Elimination is exact. `rank_certified` first runs a modular
//! elimination for a random prime p > 2^30 and accepts the result only when
//! the modular rank is full: a nonsingular minor mod p lifts to a nonsingular
//! minor over Q, so full modular rank is an exact certificate. Anything less
//! is treated as a hint and the rank is recomputed by exact elimination.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact scalar: arbitrary-precision rational, kept in lowest terms with a
/// positive denominator by `num_rational`.
pub type Rational = BigRational;

/// Integer as a rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// n/d as a rational. Panics on d = 0.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses "7", "-7" or "-3/4". Rejects zero denominators.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let err = || Error::ParseRational(s.to_string());
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (t, "1"),
    };
    let n: BigInt = num.parse().map_err(|_| err())?;
    let d: BigInt = den.parse().map_err(|_| err())?;
    if d.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(n, d))
}

/// "n" when the denominator is 1, otherwise "n/d".
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Scales a rational vector to a primitive integer vector (content 1),
/// preserving its line. The zero vector maps to the zero vector.
pub fn integer_primitive(v: &[Rational]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for x in v {
        if !x.is_zero() {
            lcm = lcm.lcm(x.denom());
        }
    }
    let mut ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if !g.is_zero() && !g.is_one() {
        for x in &mut ints {
            *x /= &g;
        }
    }
    ints
}

/// An immutable sparse matrix over the rationals. Only nonzero entries are
/// stored; all mutating constructors keep that invariant.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Rational>,
}

impl SparseMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = SparseMatrix::new(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_dense(data: Vec<Vec<Rational>>) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, |r| r.len());
        let mut m = SparseMatrix::new(rows, cols);
        for (i, row) in data.into_iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows");
            for (j, v) in row.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        self.entries
            .get(&(r, c))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Stores `v` at (r, c); zero removes the entry.
    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    /// Adds `v` to the entry at (r, c).
    pub fn add_to(&mut self, r: usize, c: usize, v: Rational) {
        let cur = self.get(r, c);
        self.set(r, c, cur + v);
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut t = SparseMatrix::new(self.cols, self.rows);
        for (r, c, v) in self.iter() {
            t.entries.insert((c, r), v.clone());
        }
        t
    }

    pub fn mul(&self, rhs: &SparseMatrix) -> Result<SparseMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: rhs.rows,
            });
        }
        let rhs_rows = rhs.row_vecs();
        let mut out = SparseMatrix::new(self.rows, rhs.cols);
        for (r, k, v) in self.iter() {
            for (c, w) in &rhs_rows[k] {
                out.add_to(r, *c, v * w);
            }
        }
        Ok(out)
    }

    /// Applies the matrix to a dense vector.
    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        let mut out = vec![Rational::zero(); self.rows];
        for (r, c, w) in self.iter() {
            if !v[c].is_zero() {
                out[r] += w * &v[c];
            }
        }
        Ok(out)
    }

    fn row_vecs(&self) -> Vec<Vec<(usize, Rational)>> {
        let mut rows = vec![Vec::new(); self.rows];
        for (r, c, v) in self.iter() {
            rows[r].push((c, v.clone()));
        }
        rows
    }

    /// Rows as primitive integer vectors; empty rows dropped.
    fn int_rows(&self) -> Vec<Vec<(usize, BigInt)>> {
        let mut out = Vec::new();
        for row in self.row_vecs() {
            if row.is_empty() {
                continue;
            }
            let (cols, vals): (Vec<usize>, Vec<Rational>) = row.into_iter().unzip();
            let ints = integer_primitive(&vals);
            out.push(cols.into_iter().zip(ints).collect());
        }
        out
    }

    /// Rank over Q by exact sparse elimination.
    pub fn rank(&self) -> usize {
        exact_rank(self.int_rows())
    }

    /// Rank over Q, equal to `rank` on every input. A modular elimination
    /// runs first; full modular rank is accepted as an exact certificate,
    /// anything else falls back to exact elimination.
    pub fn rank_certified(&self) -> usize {
        let rows = self.int_rows();
        rank_certified_int(rows, self.rows.min(self.cols))
    }

    /// A basis of the right kernel. The vectors are linearly independent,
    /// each is annihilated by the matrix, and there are cols - rank of them.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        // Dense reduced row echelon; kernels are only taken of small matrices.
        let mut m: Vec<Vec<Rational>> = vec![vec![Rational::zero(); self.cols]; self.rows];
        for (r, c, v) in self.iter() {
            m[r][c] = v.clone();
        }
        let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
        let mut prow = 0;
        for col in 0..self.cols {
            let Some(sel) = (prow..self.rows).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(prow, sel);
            let inv = m[prow][col].recip();
            for x in m[prow].iter_mut() {
                *x *= &inv;
            }
            let pivot_row = m[prow].clone();
            for (r, row) in m.iter_mut().enumerate() {
                if r != prow && !row[col].is_zero() {
                    let f = row[col].clone();
                    for (c2, pv) in pivot_row.iter().enumerate().skip(col) {
                        let sub = &f * pv;
                        row[c2] -= sub;
                    }
                }
            }
            pivots.push((prow, col));
            prow += 1;
            if prow == self.rows {
                break;
            }
        }
        let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_cols.contains(&free) {
                continue;
            }
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            for &(pr, pc) in &pivots {
                v[pc] = -m[pr][free].clone();
            }
            basis.push(v);
        }
        basis
    }
}

impl fmt::Debug for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "SparseMatrix {}x{} ({} nnz)",
            self.rows,
            self.cols,
            self.nnz()
        )?;
        if self.rows <= 12 && self.cols <= 12 {
            for r in 0..self.rows {
                let row: Vec<String> = (0..self.cols)
                    .map(|c| format_rational(&self.get(r, c)))
                    .collect();
                writeln!(f, "  [{}]", row.join(", "))?;
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Exact elimination on integer rows.
//
// Rows are kept as sorted sparse integer vectors with content 1. A pivot
// step replaces row_j by (p*row_j - a*row_p)/content, so all arithmetic
// stays integral. Pivots are chosen Markowitz-style: a row of minimal fill,
// then within it the column occurring in the fewest rows.
// ---------------------------------------------------------------------------

struct Elim {
    rows: Vec<Option<Vec<(usize, BigInt)>>>,
    // column -> ids of active rows with a nonzero entry there
    col_rows: HashMap<usize, Vec<usize>>,
}

impl Elim {
    fn new(rows: Vec<Vec<(usize, BigInt)>>) -> Self {
        let mut col_rows: HashMap<usize, Vec<usize>> = HashMap::new();
        for (i, row) in rows.iter().enumerate() {
            for (c, _) in row {
                col_rows.entry(*c).or_default().push(i);
            }
        }
        Elim {
            rows: rows.into_iter().map(Some).collect(),
            col_rows,
        }
    }

    fn col_count(&self, c: usize) -> usize {
        self.col_rows.get(&c).map_or(0, |v| v.len())
    }

    /// (row id, column) minimizing row fill then column occupancy.
    fn pick_pivot(&self, active: &[usize]) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, usize, usize)> = None; // nnz, colcnt, row, col
        for &i in active {
            let row = self.rows[i].as_ref().unwrap();
            let nnz = row.len();
            if let Some((bn, _, _, _)) = best {
                if nnz > bn {
                    continue;
                }
            }
            for (c, _) in row {
                let cc = self.col_count(*c);
                let cand = (nnz, cc, i, *c);
                if best.is_none_or(|b| (cand.0, cand.1, cand.2, cand.3) < b) {
                    best = Some(cand);
                }
            }
        }
        best.map(|(_, _, r, c)| (r, c))
    }

    fn detach(&mut self, i: usize) -> Vec<(usize, BigInt)> {
        let row = self.rows[i].take().unwrap();
        for (c, _) in &row {
            if let Some(list) = self.col_rows.get_mut(c) {
                list.retain(|&r| r != i);
            }
        }
        row
    }

    fn attach(&mut self, i: usize, row: Vec<(usize, BigInt)>) {
        for (c, _) in &row {
            self.col_rows.entry(*c).or_default().push(i);
        }
        self.rows[i] = Some(row);
    }
}

/// (p*target - a*source), merged on sorted column indices, divided by content.
fn int_axpy(
    target: &[(usize, BigInt)],
    source: &[(usize, BigInt)],
    p: &BigInt,
    a: &BigInt,
) -> Vec<(usize, BigInt)> {
    let mut out: Vec<(usize, BigInt)> = Vec::with_capacity(target.len() + source.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < source.len() {
        let tc = target.get(i).map(|e| e.0);
        let sc = source.get(j).map(|e| e.0);
        match (tc, sc) {
            (Some(c1), Some(c2)) if c1 == c2 => {
                let v = p * &target[i].1 - a * &source[j].1;
                if !v.is_zero() {
                    out.push((c1, v));
                }
                i += 1;
                j += 1;
            }
            (Some(c1), Some(c2)) if c1 < c2 => {
                out.push((c1, p * &target[i].1));
                i += 1;
            }
            (Some(_), Some(c2)) => {
                out.push((c2, -(a * &source[j].1)));
                j += 1;
            }
            (Some(c1), None) => {
                out.push((c1, p * &target[i].1));
                i += 1;
            }
            (None, Some(c2)) => {
                out.push((c2, -(a * &source[j].1)));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    let mut g = BigInt::zero();
    for (_, v) in &out {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    if !g.is_zero() && !g.is_one() {
        for (_, v) in &mut out {
            *v /= &g;
        }
    }
    out
}

fn exact_rank(rows: Vec<Vec<(usize, BigInt)>>) -> usize {
    let n = rows.len();
    let mut elim = Elim::new(rows);
    let mut active: Vec<usize> = (0..n).collect();
    let mut rank = 0;
    while let Some((pr, pc)) = elim.pick_pivot(&active) {
        rank += 1;
        let pivot_row = elim.detach(pr);
        let pval = pivot_row.iter().find(|(c, _)| *c == pc).unwrap().1.clone();
        let victims: Vec<usize> = elim.col_rows.get(&pc).cloned().unwrap_or_default();
        for v in victims {
            let row = elim.detach(v);
            let aval = row.iter().find(|(c, _)| *c == pc).unwrap().1.clone();
            let next = int_axpy(&row, &pivot_row, &pval, &aval);
            if !next.is_empty() {
                elim.attach(v, next);
            }
        }
        active.retain(|&i| i != pr && elim.rows[i].is_some());
    }
    rank
}

// ---------------------------------------------------------------------------
// Modular elimination and rank certification.
// ---------------------------------------------------------------------------

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, valid for n < 3_215_031_751 (bases 2,3,5,7).
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13] {
        if n == q {
            return true;
        }
        if n.is_multiple_of(q) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'base: for a in [2u64, 3, 5, 7] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'base;
            }
        }
        return false;
    }
    true
}

/// Deterministic stream of pseudo-random 31-bit primes above 2^30.
/// The generator is SplitMix64 with a fixed seed; results are exact no
/// matter which primes come out, so a fixed stream keeps runs reproducible.
struct PrimeStream {
    state: u64,
}

impl PrimeStream {
    fn new() -> Self {
        PrimeStream {
            state: 0x9e37_79b9_7f4a_7c15,
        }
    }

    fn next_prime(&mut self) -> u64 {
        loop {
            self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
            let mut z = self.state;
            z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
            z ^= z >> 31;
            let candidate = (1u64 << 30) | (z % (1u64 << 30)) | 1;
            if is_prime_u64(candidate) {
                return candidate;
            }
        }
    }
}

fn reduce_mod(v: &BigInt, p: u64) -> u64 {
    let m = (v % BigInt::from(p)).to_i64().unwrap();
    if m < 0 {
        (m + p as i64) as u64
    } else {
        m as u64
    }
}

fn modular_rank(rows: &[Vec<(usize, BigInt)>], p: u64) -> usize {
    let reduced: Vec<Vec<(usize, u64)>> = rows
        .iter()
        .map(|row| {
            row.iter()
                .filter_map(|(c, v)| {
                    let m = reduce_mod(v, p);
                    (m != 0).then_some((*c, m))
                })
                .collect()
        })
        .filter(|r: &Vec<(usize, u64)>| !r.is_empty())
        .collect();
    modular_rank_inner(reduced, p)
}

struct ModElim {
    rows: Vec<Option<Vec<(usize, u64)>>>,
    col_rows: HashMap<usize, Vec<usize>>,
}

fn modular_rank_inner(rows: Vec<Vec<(usize, u64)>>, p: u64) -> usize {
    let n = rows.len();
    let mut col_rows: HashMap<usize, Vec<usize>> = HashMap::new();
    for (i, row) in rows.iter().enumerate() {
        for (c, _) in row {
            col_rows.entry(*c).or_default().push(i);
        }
    }
    let mut st = ModElim {
        rows: rows.into_iter().map(Some).collect(),
        col_rows,
    };
    let mut active: Vec<usize> = (0..n).collect();
    let mut rank = 0;
    loop {
        // same pivot heuristic as the exact path
        let mut best: Option<(usize, usize, usize, usize)> = None;
        for &i in &active {
            let row = st.rows[i].as_ref().unwrap();
            let nnz = row.len();
            if let Some((bn, _, _, _)) = best {
                if nnz > bn {
                    continue;
                }
            }
            for (c, _) in row {
                let cc = st.col_rows.get(c).map_or(0, |v| v.len());
                let cand = (nnz, cc, i, *c);
                if best.is_none_or(|b| (cand.0, cand.1, cand.2, cand.3) < b) {
                    best = Some(cand);
                }
            }
        }
        let Some((_, _, pr, pc)) = best else { break };
        rank += 1;
        let pivot_row = st.rows[pr].take().unwrap();
        for (c, _) in &pivot_row {
            if let Some(list) = st.col_rows.get_mut(c) {
                list.retain(|&r| r != pr);
            }
        }
        let pval = pivot_row.iter().find(|(c, _)| *c == pc).unwrap().1;
        let pinv = pow_mod(pval, p - 2, p);
        let victims: Vec<usize> = st.col_rows.get(&pc).cloned().unwrap_or_default();
        for vid in victims {
            let row = st.rows[vid].take().unwrap();
            for (c, _) in &row {
                if let Some(list) = st.col_rows.get_mut(c) {
                    list.retain(|&r| r != vid);
                }
            }
            let aval = row.iter().find(|(c, _)| *c == pc).unwrap().1;
            let factor = mul_mod(aval, pinv, p);
            // row - factor * pivot_row
            let mut out: Vec<(usize, u64)> = Vec::with_capacity(row.len() + pivot_row.len());
            let (mut i, mut j) = (0, 0);
            while i < row.len() || j < pivot_row.len() {
                let tc = row.get(i).map(|e| e.0);
                let sc = pivot_row.get(j).map(|e| e.0);
                match (tc, sc) {
                    (Some(c1), Some(c2)) if c1 == c2 => {
                        let sub = mul_mod(factor, pivot_row[j].1, p);
                        let v = (row[i].1 + p - sub) % p;
                        if v != 0 {
                            out.push((c1, v));
                        }
                        i += 1;
                        j += 1;
                    }
                    (Some(c1), Some(c2)) if c1 < c2 => {
                        out.push((c1, row[i].1));
                        i += 1;
                    }
                    (Some(_), Some(c2)) => {
                        let sub = mul_mod(factor, pivot_row[j].1, p);
                        out.push((c2, p - sub));
                        j += 1;
                    }
                    (Some(c1), None) => {
                        out.push((c1, row[i].1));
                        i += 1;
                    }
                    (None, Some(c2)) => {
                        let sub = mul_mod(factor, pivot_row[j].1, p);
                        out.push((c2, p - sub));
                        j += 1;
                    }
                    (None, None) => unreachable!(),
                }
            }
            if !out.is_empty() {
                for (c, _) in &out {
                    st.col_rows.entry(*c).or_default().push(vid);
                }
                st.rows[vid] = Some(out);
            }
        }
        active.retain(|&i| i != pr && st.rows[i].is_some());
    }
    rank
}

/// Rank with modular acceleration. `full` is min(rows, cols) of the ambient
/// matrix; a modular rank reaching it is already exact.
fn rank_certified_int(rows: Vec<Vec<(usize, BigInt)>>, full: usize) -> usize {
    if rows.is_empty() || full == 0 {
        return 0;
    }
    let mut primes = PrimeStream::new();
    for _ in 0..2 {
        let p = primes.next_prime();
        if modular_rank(&rows, p) == full {
            return full;
        }
    }
    exact_rank(rows)
}

/// Rank of a matrix handed over directly as sparse integer rows, with the
/// same modular-then-exact certification as `SparseMatrix::rank_certified`.
pub(crate) fn rank_certified_rows(
    rows: Vec<Vec<(usize, BigInt)>>,
    nrows: usize,
    ncols: usize,
) -> usize {
    let rows: Vec<Vec<(usize, BigInt)>> = rows.into_iter().filter(|r| !r.is_empty()).collect();
    rank_certified_int(rows, nrows.min(ncols))
}

/// True iff the rows have full rank `full`, certified. Tries modular
/// eliminations first and falls back to exact elimination.
pub(crate) fn has_full_rank_certified(rows: &[Vec<(usize, BigInt)>], full: usize) -> bool {
    has_full_rank_modular(rows, full) || exact_rank(rows.to_vec()) == full
}

/// Modular-only full-rank test. `true` is an exact certificate (the
/// witnessing minor is nonsingular mod p, hence over Q); `false` only means
/// "not certified by the primes tried".
pub(crate) fn has_full_rank_modular(rows: &[Vec<(usize, BigInt)>], full: usize) -> bool {
    if full == 0 {
        return true;
    }
    if rows.len() < full {
        return false;
    }
    let mut primes = PrimeStream::new();
    (0..2).any(|_| modular_rank(rows, primes.next_prime()) == full)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn dense(data: &[&[i64]]) -> SparseMatrix {
        SparseMatrix::from_dense(
            data.iter()
                .map(|row| row.iter().map(|&v| rat(v)).collect())
                .collect(),
        )
    }

    #[test]
    fn rank_identity() {
        assert_eq!(SparseMatrix::identity(3).rank(), 3);
    }

    #[test]
    fn rank_zero_matrix() {
        assert_eq!(SparseMatrix::new(4, 6).rank(), 0);
    }

    #[test]
    fn rank_proportional_rows() {
        assert_eq!(dense(&[&[1, 2], &[2, 4]]).rank(), 1);
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        assert!(SparseMatrix::identity(2).kernel_basis().is_empty());
    }

    #[test]
    fn kernel_of_difference_functional() {
        let m = dense(&[&[1, -1]]);
        let basis = m.kernel_basis();
        assert_eq!(basis.len(), 1);
        // spans (1, 1)
        assert_eq!(basis[0][0], basis[0][1]);
        assert!(!basis[0][0].is_zero());
    }

    #[test]
    fn kernel_of_zero_matrix_is_everything() {
        let m = SparseMatrix::new(2, 3);
        assert_eq!(m.kernel_basis().len(), 3);
    }

    #[test]
    fn certified_matches_rank_on_examples() {
        for m in [
            SparseMatrix::identity(3),
            SparseMatrix::new(4, 6),
            dense(&[&[1, 2], &[2, 4]]),
        ] {
            assert_eq!(m.rank_certified(), m.rank());
        }
        let diag = SparseMatrix::from_dense(vec![
            vec![rat(1), rat(0), rat(0), rat(0)],
            vec![rat(0), rat(2), rat(0), rat(0)],
            vec![rat(0), rat(0), rat(0), rat(0)],
            vec![rat(0), rat(0), rat(0), rat(5)],
        ]);
        assert_eq!(diag.rank_certified(), 3);
    }

    #[test]
    fn certified_matches_rank_on_random_sign_matrix() {
        // 100x100 sparse +-1 matrix from a fixed linear congruence
        let mut m = SparseMatrix::new(100, 100);
        let mut state: u64 = 12345;
        let mut next = || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            state >> 33
        };
        for r in 0..100 {
            for c in 0..100 {
                let roll = next() % 10;
                if roll == 0 {
                    m.set(r, c, rat(1));
                } else if roll == 1 {
                    m.set(r, c, rat(-1));
                }
            }
        }
        assert_eq!(m.rank_certified(), m.rank());
    }

    #[test]
    fn mul_and_transpose() {
        let a = dense(&[&[1, 2], &[3, 4]]);
        let b = dense(&[&[0, 1], &[1, 0]]);
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab, dense(&[&[2, 1], &[4, 3]]));
        assert_eq!(a.transpose().transpose(), a);
        assert!(a.mul(&SparseMatrix::new(3, 1)).is_err());
    }

    #[test]
    fn parse_and_format_rationals() {
        assert_eq!(parse_rational("7").unwrap(), rat(7));
        assert_eq!(parse_rational("-3/4").unwrap(), ratio(-3, 4));
        assert_eq!(parse_rational(" 6/4 ").unwrap(), ratio(3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(format_rational(&ratio(-3, 4)), "-3/4");
        assert_eq!(format_rational(&rat(5)), "5");
    }

    #[test]
    fn primes_are_31_bit() {
        let mut s = PrimeStream::new();
        for _ in 0..5 {
            let p = s.next_prime();
            assert!(p > (1 << 30) && p < (1 << 31));
            assert!(is_prime_u64(p));
        }
    }

    fn arb_matrix() -> impl Strategy<Value = SparseMatrix> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-4i64..5, r * c).prop_map(move |vals| {
                let data = vals
                    .chunks(c)
                    .map(|row| row.iter().map(|&v| rat(v)).collect())
                    .collect();
                SparseMatrix::from_dense(data)
            })
        })
    }

    proptest! {
        #[test]
        fn rank_equals_rank_of_transpose(m in arb_matrix()) {
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn rank_nullity(m in arb_matrix()) {
            prop_assert_eq!(m.cols(), m.rank() + m.kernel_basis().len());
        }

        #[test]
        fn certified_equals_exact(m in arb_matrix()) {
            prop_assert_eq!(m.rank_certified(), m.rank());
        }

        #[test]
        fn kernel_vectors_are_annihilated(m in arb_matrix()) {
            for v in m.kernel_basis() {
                let image = m.mul_vec(&v).unwrap();
                prop_assert!(image.iter().all(|x| x.is_zero()));
            }
        }
    }
}
