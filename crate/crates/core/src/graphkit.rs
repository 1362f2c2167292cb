//! Monomial subspaces from graphs and the cut-polynomial route to the
//! graded dimensions of W(V,K), an independent oracle for the direct
//! presentation-rank computation.
//!
//! For K spanned by basis wedges e_i /\ e_j over the edges of a graph, the
//! generating function of the graded dimensions is Q(t/(1-t)) shifted by
//! t^2, where Q is the cut polynomial: its j-th coefficient sums, over all
//! vertex subsets of size j, one less than the number of connected
//! components of the induced subgraph.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactlin::{rat, Rational};
use crate::koszul::{binomial, pair_index, wedge2_dim, GradedDims, TwoFormSubspace};

/// Vertex-subset enumeration is exponential; refuse beyond this.
const SUBSET_CAP: usize = 20;

/// A simple graph on vertices 1..=n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>, // 0-based, i < j, sorted, distinct
}

impl Graph {
    /// Builds a graph from 1-based endpoints.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGraph("at least one vertex required".into()));
        }
        let mut normalized = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            if a == b {
                return Err(Error::InvalidGraph(format!("loop at vertex {a}")));
            }
            if a < 1 || a > n || b < 1 || b > n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({a}, {b}) out of range 1..={n}"
                )));
            }
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            normalized.push((lo - 1, hi - 1));
        }
        normalized.sort_unstable();
        if normalized.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidGraph("duplicate edge".into()));
        }
        Ok(Graph {
            n,
            edges: normalized,
        })
    }

    pub fn complete(n: usize) -> Self {
        let edges: Vec<(usize, usize)> = (1..=n)
            .flat_map(|i| ((i + 1)..=n).map(move |j| (i, j)))
            .collect();
        Graph::new(n, &edges).expect("complete graph is valid")
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
        }
    }

    /// Parses the text format: first line the vertex count, one "i j" edge
    /// per following line, 1-based.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let n: usize = lines
            .next()
            .ok_or_else(|| Error::InvalidGraph("empty input".into()))?
            .parse()
            .map_err(|_| Error::InvalidGraph("first line must be the vertex count".into()))?;
        let mut edges = Vec::new();
        for line in lines {
            let mut parts = line.split_whitespace();
            let parse_vertex = |s: Option<&str>| -> Result<usize> {
                s.ok_or_else(|| Error::InvalidGraph(format!("bad edge line {line:?}")))?
                    .parse()
                    .map_err(|_| Error::InvalidGraph(format!("bad edge line {line:?}")))
            };
            let i = parse_vertex(parts.next())?;
            let j = parse_vertex(parts.next())?;
            if parts.next().is_some() {
                return Err(Error::InvalidGraph(format!("bad edge line {line:?}")));
            }
            edges.push((i, j));
        }
        Graph::new(n, &edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges with 1-based endpoints.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().map(|&(a, b)| (a + 1, b + 1))
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

/// The monomial subspace spanned by e_i /\ e_j over the edges.
pub fn monomial_k(g: &Graph) -> TwoFormSubspace {
    let w2 = wedge2_dim(g.n);
    let generators = g
        .edges
        .iter()
        .map(|&(i, j)| {
            let mut v = vec![Rational::zero(); w2];
            v[pair_index(g.n, i, j)] = rat(1);
            v
        })
        .collect();
    TwoFormSubspace::new(g.n, generators).expect("distinct basis wedges are independent")
}

/// Cut-polynomial coefficients c_j for j = 0..=n (c_0 = c_1 = 0): each
/// size-j vertex subset contributes one less than the number of connected
/// components of its induced subgraph.
pub fn cut_polynomial(g: &Graph) -> Result<Vec<u64>> {
    if g.n > SUBSET_CAP {
        return Err(Error::GraphTooLarge(g.n, SUBSET_CAP));
    }
    let mut coeffs = vec![0u64; g.n + 1];
    for mask in 0u32..(1u32 << g.n) {
        let size = mask.count_ones() as usize;
        if size < 2 {
            continue;
        }
        let mut uf = UnionFind::new(g.n);
        for &(a, b) in &g.edges {
            if mask & (1 << a) != 0 && mask & (1 << b) != 0 {
                uf.union(a, b);
            }
        }
        let mut roots = Vec::with_capacity(size);
        for v in 0..g.n {
            if mask & (1 << v) != 0 {
                let r = uf.find(v);
                if !roots.contains(&r) {
                    roots.push(r);
                }
            }
        }
        coeffs[size] += roots.len() as u64 - 1;
    }
    Ok(coeffs)
}

/// Graded dimensions from the cut polynomial: the coefficient of t^(q+2)
/// in Q(t/(1-t)), which expands to the sum over j of c_j * C(q+1, j-1).
pub fn hilbert_dims_from_graph(g: &Graph, q_max: usize) -> Result<GradedDims> {
    let coeffs = cut_polynomial(g)?;
    let dim_at = |q: usize| -> u64 { (2..=g.n).map(|j| coeffs[j] * binomial(q + 1, j - 1)).sum() };
    let mut dims = Vec::new();
    for q in 0..=q_max {
        let d = dim_at(q);
        dims.push(d);
        if d == 0 {
            return Ok(GradedDims {
                dims,
                vanished_at: Some(q),
            });
        }
    }
    Ok(GradedDims {
        dims,
        vanished_at: None,
    })
}
