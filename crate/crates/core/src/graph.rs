//! Simple undirected graphs.
//!
//! Vertices are `0..n`. Edges are kept as a sorted list of pairs `(u, v)`
//! with `u < v`, alongside one adjacency bitset per vertex.

use crate::error::{Error, Result};
use crate::numeric::DenseMatrix;
use crate::partition::Partition;

#[derive(Debug, Clone, PartialEq, Eq)]
struct BitRow(Vec<u64>);

impl BitRow {
    fn new(n: usize) -> Self {
        BitRow(vec![0; n.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<BitRow>,
}

impl Graph {
    /// Builds a graph from 0-based edges. Self-loops, duplicates and
    /// out-of-range endpoints are rejected.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut list = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge {{{}, {}}} has an endpoint outside 1..={n}",
                    u + 1,
                    v + 1
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!(
                    "self-loop at vertex {}",
                    u + 1
                )));
            }
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidGraph(format!(
                "duplicate edge {{{}, {}}}",
                w[0].0 + 1,
                w[0].1 + 1
            )));
        }
        let mut adjacency = vec![BitRow::new(n); n];
        for &(u, v) in &list {
            adjacency[u].set(v);
            adjacency[v].set(u);
        }
        Ok(Self {
            n,
            edges: list,
            adjacency,
        })
    }

    /// Builds a graph from 1-based edge labels.
    pub fn from_one_based(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut zero = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u == 0 || v == 0 {
                return Err(Error::InvalidGraph("vertex labels start at 1".into()));
            }
            zero.push((u - 1, v - 1));
        }
        Self::new(n, zero)
    }

    pub fn empty(n: usize) -> Self {
        Self::new(n, []).expect("edgeless graph is valid")
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Self::new(n, edges).expect("complete graph is valid")
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidGraph(format!(
                "a cycle needs at least 3 vertices, got {n}"
            )));
        }
        Self::new(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    pub fn path(n: usize) -> Self {
        Self::new(n, (1..n).map(|i| (i - 1, i))).expect("path is valid")
    }

    /// `K_{1,leaves}` with the center at vertex 0.
    pub fn star(leaves: usize) -> Self {
        Self::new(leaves + 1, (1..=leaves).map(|i| (0, i))).expect("star is valid")
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let edges = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)));
        Self::new(a + b, edges).expect("complete bipartite graph is valid")
    }

    /// The `d`-dimensional hypercube `Q_d`.
    pub fn hypercube(d: u32) -> Self {
        let n = 1usize << d;
        let edges = (0..n).flat_map(|u| {
            (0..d)
                .map(move |b| (u, u ^ (1 << b)))
                .filter(|&(u, v)| u < v)
        });
        Self::new(n, edges).expect("hypercube is valid")
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Sorted 0-based edges `(u, v)` with `u < v`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adjacency[u].get(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v]
            .0
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&u| self.adjacency[v].get(u))
    }

    /// Number of neighbours of `v` inside `set`.
    pub fn degree_into(&self, v: usize, set: &[usize]) -> usize {
        set.iter().filter(|&&u| self.adjacency[v].get(u)).count()
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for u in self.neighbors(v) {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn is_regular(&self) -> bool {
        let all: Vec<usize> = (0..self.n).collect();
        self.regularity(&all, None).unwrap_or(false)
    }

    pub fn adjacency_matrix(&self) -> DenseMatrix {
        let mut a = DenseMatrix::zeros(self.n, self.n);
        for &(u, v) in &self.edges {
            a[(u, v)] = 1.0;
            a[(v, u)] = 1.0;
        }
        a
    }

    /// `D − A`.
    pub fn laplacian_matrix(&self) -> DenseMatrix {
        let mut l = DenseMatrix::zeros(self.n, self.n);
        for &(u, v) in &self.edges {
            l[(u, v)] = -1.0;
            l[(v, u)] = -1.0;
            l[(u, u)] += 1.0;
            l[(v, v)] += 1.0;
        }
        l
    }

    fn check_sets(&self, x: &[usize], y: Option<&[usize]>) -> Result<()> {
        let mut seen = vec![false; self.n];
        for &v in x {
            if v >= self.n {
                return Err(Error::IndexOutOfRange {
                    index: v,
                    bound: self.n,
                });
            }
            seen[v] = true;
        }
        if let Some(y) = y {
            for &v in y {
                if v >= self.n {
                    return Err(Error::IndexOutOfRange {
                        index: v,
                        bound: self.n,
                    });
                }
                if seen[v] {
                    return Err(Error::OverlappingSets(v));
                }
            }
        }
        Ok(())
    }

    /// `e(X)` when `y` is `None`, otherwise `e(X, Y)` for disjoint `X`, `Y`.
    pub fn edge_counts(&self, x: &[usize], y: Option<&[usize]>) -> Result<usize> {
        self.check_sets(x, y)?;
        Ok(match y {
            None => {
                let inside: usize = x.iter().map(|&v| self.degree_into(v, x)).sum();
                inside / 2
            }
            Some(y) => x.iter().map(|&v| self.degree_into(v, y)).sum(),
        })
    }

    /// With only `x`: whether `G[X]` is regular. With `y`: whether the
    /// bipartite graph `G[X, Y]` is semiregular. Empty induced graphs count
    /// as 0-regular.
    pub fn regularity(&self, x: &[usize], y: Option<&[usize]>) -> Result<bool> {
        self.check_sets(x, y)?;
        Ok(match y {
            None => all_equal(x.iter().map(|&v| self.degree_into(v, x))),
            Some(y) => {
                all_equal(x.iter().map(|&v| self.degree_into(v, y)))
                    && all_equal(y.iter().map(|&v| self.degree_into(v, x)))
            }
        })
    }

    /// Canonical edge-list text: `n m` followed by one sorted 1-based pair per line.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.edges.len());
        for &(u, v) in &self.edges {
            out.push_str(&format!("{} {}\n", u + 1, v + 1));
        }
        out
    }
}

fn all_equal(mut it: impl Iterator<Item = usize>) -> bool {
    match it.next() {
        None => true,
        Some(first) => it.all(|d| d == first),
    }
}

/// Join of two or more graphs: their disjoint union plus every edge between
/// distinct constituents. Returns the graph and the constituent blocks in
/// input order.
pub fn join(graphs: &[Graph]) -> Result<(Graph, Partition)> {
    if graphs.len() < 2 {
        return Err(Error::InvalidArgument(format!(
            "join needs at least two graphs, got {}",
            graphs.len()
        )));
    }
    let mut offsets = Vec::with_capacity(graphs.len());
    let mut n = 0;
    for g in graphs {
        offsets.push(n);
        n += g.order();
    }
    let mut edges = Vec::new();
    for (g, &off) in graphs.iter().zip(&offsets) {
        edges.extend(g.edges().iter().map(|&(u, v)| (u + off, v + off)));
    }
    for i in 0..graphs.len() {
        for j in i + 1..graphs.len() {
            for u in 0..graphs[i].order() {
                for v in 0..graphs[j].order() {
                    edges.push((offsets[i] + u, offsets[j] + v));
                }
            }
        }
    }
    let blocks: Vec<Vec<usize>> = graphs
        .iter()
        .zip(&offsets)
        .map(|(g, &off)| (off..off + g.order()).collect())
        .collect();
    Ok((Graph::new(n, edges)?, Partition::new(n, blocks)?))
}

/// Blow-up of a template graph: template vertex `i` becomes an independent
/// set of `sizes[i]` vertices, and two such sets are completely joined iff the
/// template vertices are adjacent.
pub fn blow_up(template: &Graph, sizes: &[usize]) -> Result<(Graph, Partition)> {
    if sizes.len() != template.order() {
        return Err(Error::DimensionMismatch {
            expected: template.order(),
            found: sizes.len(),
        });
    }
    if sizes.contains(&0) {
        return Err(Error::InvalidArgument(
            "blow-up block sizes must be positive".into(),
        ));
    }
    let mut offsets = Vec::with_capacity(sizes.len());
    let mut n = 0;
    for &s in sizes {
        offsets.push(n);
        n += s;
    }
    let mut edges = Vec::new();
    for &(a, b) in template.edges() {
        for u in offsets[a]..offsets[a] + sizes[a] {
            for v in offsets[b]..offsets[b] + sizes[b] {
                edges.push((u, v));
            }
        }
    }
    let blocks = offsets
        .iter()
        .zip(sizes)
        .map(|(&o, &s)| (o..o + s).collect())
        .collect();
    Ok((Graph::new(n, edges)?, Partition::new(n, blocks)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{symmetric_eigen, TolerancePolicy};

    fn c4() -> Graph {
        Graph::cycle(4).unwrap()
    }

    fn assert_spectrum(m: &DenseMatrix, expected: &[f64]) {
        let s = symmetric_eigen(m, &TolerancePolicy::default()).unwrap();
        assert_eq!(s.len(), expected.len());
        for (g, e) in s.values().iter().zip(expected) {
            assert!((g - e).abs() < 1e-10, "{:?} vs {:?}", s.values(), expected);
        }
    }

    #[test]
    fn rejects_invalid_edges() {
        assert!(Graph::new(3, [(0, 0)]).is_err());
        assert!(Graph::new(3, [(0, 1), (1, 0)]).is_err());
        assert!(Graph::new(3, [(0, 3)]).is_err());
        assert!(Graph::from_one_based(3, &[(0, 1)]).is_err());
    }

    #[test]
    fn adjacency_examples() {
        let k2 = Graph::complete(2).adjacency_matrix();
        assert_eq!(k2.to_rows(), vec![vec![0.0, 1.0], vec![1.0, 0.0]]);
        assert_eq!(Graph::empty(3).adjacency_matrix(), DenseMatrix::zeros(3, 3));
        let a = c4().adjacency_matrix();
        for i in 0..4 {
            for j in 0..4 {
                let cyclic = (i + 1) % 4 == j || (j + 1) % 4 == i;
                assert_eq!(a[(i, j)], if cyclic { 1.0 } else { 0.0 });
            }
        }
    }

    #[test]
    fn laplacian_examples() {
        let l = Graph::complete(2).laplacian_matrix();
        assert_eq!(l.to_rows(), vec![vec![1.0, -1.0], vec![-1.0, 1.0]]);
        let star = Graph::star(3).laplacian_matrix();
        assert_eq!(star.row(0), &[3.0, -1.0, -1.0, -1.0]);
        assert_spectrum(&star, &[4.0, 1.0, 1.0, 0.0]);
        assert_spectrum(&c4().laplacian_matrix(), &[4.0, 2.0, 2.0, 0.0]);
    }

    #[test]
    fn edge_count_examples() {
        let g = c4();
        assert_eq!(g.edge_counts(&[0, 2], None).unwrap(), 0);
        assert_eq!(g.edge_counts(&[0, 2], Some(&[1, 3])).unwrap(), 4);
        assert_eq!(Graph::complete(3).edge_counts(&[1, 2], None).unwrap(), 1);
        assert_eq!(
            g.edge_counts(&[0, 1], Some(&[1])),
            Err(Error::OverlappingSets(1))
        );
        assert!(matches!(
            g.edge_counts(&[7], None),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn join_examples() {
        let (g, blocks) = join(&[Graph::empty(2), Graph::empty(3)]).unwrap();
        assert_eq!(g, Graph::complete_bipartite(2, 3));
        assert_eq!(blocks.blocks(), &[vec![0, 1], vec![2, 3, 4]]);
        let (k2, _) = join(&[Graph::complete(1), Graph::complete(1)]).unwrap();
        assert_eq!(k2, Graph::complete(2));
        let (g, _) = join(&[c4(), Graph::complete(2)]).unwrap();
        assert_eq!((g.order(), g.edge_count()), (6, 13));
        assert!(join(&[c4()]).is_err());
    }

    #[test]
    fn regularity_examples() {
        assert!(c4().regularity(&[0, 2], None).unwrap());
        assert!(Graph::star(3).regularity(&[0], Some(&[1, 2, 3])).unwrap());
        assert!(!Graph::path(3).regularity(&[0, 1, 2], None).unwrap());
        assert!(c4().is_regular());
        assert!(!Graph::path(3).is_regular());
    }

    #[test]
    fn adjacency_invariants() {
        for g in [c4(), Graph::hypercube(3), Graph::star(4), Graph::path(5)] {
            let a = g.adjacency_matrix();
            assert_eq!(a.trace(), 0.0);
            assert_eq!(
                a.as_slice().iter().sum::<f64>(),
                2.0 * g.edge_count() as f64
            );
            let l = g.laplacian_matrix();
            let ones = vec![1.0; g.order()];
            assert!(l.mul_vec(&ones).unwrap().iter().all(|&x| x == 0.0));
        }
    }

    #[test]
    fn blow_up_of_an_edge_is_complete_bipartite() {
        let (g, p) = blow_up(&Graph::complete(2), &[2, 3]).unwrap();
        assert_eq!(g, Graph::complete_bipartite(2, 3));
        assert_eq!(p.len(), 2);
        assert!(blow_up(&Graph::complete(2), &[2]).is_err());
        assert!(blow_up(&Graph::complete(2), &[2, 0]).is_err());
    }

    #[test]
    fn hypercube_is_cubic() {
        let q3 = Graph::hypercube(3);
        assert_eq!((q3.order(), q3.edge_count()), (8, 12));
        assert!((0..8).all(|v| q3.degree(v) == 3));
    }

    #[test]
    fn edge_list_round_trip_is_canonical() {
        let g = Graph::new(4, [(3, 0), (2, 1), (0, 1)]).unwrap();
        assert_eq!(g.to_edge_list(), "4 3\n1 2\n1 4\n2 3\n");
    }
}
