//! Partitions of `0..n`, block regularity and the equitable / semiequitable
//! predicates, plus exhaustive enumeration in restricted-growth-string order.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::numeric::{DenseMatrix, TolerancePolicy};

/// Default bound on the ground-set size for exhaustive enumeration.
/// Bell(10) = 115975.
pub const ENUMERATION_CAP: usize = 10;

/// Ordered list of nonempty, pairwise disjoint blocks covering `0..n`.
///
/// Blocks are kept sorted internally and ordered by their smallest element,
/// so two partitions are equal iff they describe the same set partition.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut owner = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidPartition(format!("block {} is empty", b + 1)));
            }
            for &v in block {
                if v >= n {
                    return Err(Error::InvalidPartition(format!(
                        "element {} outside 1..={n}",
                        v + 1
                    )));
                }
                if owner[v] != usize::MAX {
                    return Err(Error::InvalidPartition(format!(
                        "element {} appears more than once",
                        v + 1
                    )));
                }
                owner[v] = b;
            }
        }
        if let Some(v) = owner.iter().position(|&o| o == usize::MAX) {
            return Err(Error::InvalidPartition(format!(
                "element {} is not covered",
                v + 1
            )));
        }
        let mut blocks = blocks;
        for block in &mut blocks {
            block.sort_unstable();
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(Self { n, blocks })
    }

    pub fn from_one_based(n: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut zero = Vec::with_capacity(blocks.len());
        for block in blocks {
            if block.contains(&0) {
                return Err(Error::InvalidPartition("element labels start at 1".into()));
            }
            zero.push(block.iter().map(|&v| v - 1).collect());
        }
        Self::new(n, zero)
    }

    /// Partition whose blocks are the classes of `labels[i]`.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut slot = std::collections::BTreeMap::new();
        for (i, &l) in labels.iter().enumerate() {
            let idx = *slot.entry(l).or_insert_with(|| {
                blocks.push(Vec::new());
                blocks.len() - 1
            });
            blocks[idx].push(i);
        }
        // first occurrences are increasing, so blocks are already canonical
        blocks.sort_unstable_by_key(|b| b[0]);
        Self {
            n: labels.len(),
            blocks,
        }
    }

    pub fn single_block(n: usize) -> Self {
        Self::from_labels(&vec![0; n])
    }

    pub fn singletons(n: usize) -> Self {
        Self::from_labels(&(0..n).collect::<Vec<_>>())
    }

    /// Size of the ground set.
    pub fn ground(&self) -> usize {
        self.n
    }

    /// Number of blocks.
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &[usize] {
        &self.blocks[i]
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    /// Block index of every element.
    pub fn labels(&self) -> Vec<usize> {
        let mut labels = vec![0; self.n];
        for (b, block) in self.blocks.iter().enumerate() {
            for &v in block {
                labels[v] = b;
            }
        }
        labels
    }

    pub fn to_one_based(&self) -> Vec<Vec<usize>> {
        self.blocks
            .iter()
            .map(|b| b.iter().map(|v| v + 1).collect())
            .collect()
    }

    /// Text format: one block per line, 1-based labels separated by spaces.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for block in self.to_one_based() {
            let line: Vec<String> = block.iter().map(ToString::to_string).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    /// Whether every block of `self` lies inside a block of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        if self.n != coarser.n {
            return false;
        }
        let labels = coarser.labels();
        self.blocks
            .iter()
            .all(|b| b.iter().all(|&v| labels[v] == labels[b[0]]))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, block) in self.to_one_based().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            let items: Vec<String> = block.iter().map(ToString::to_string).collect();
            write!(f, "{{{}}}", items.join(","))?;
        }
        write!(f, "}}")
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_one_based().serialize(serializer)
    }
}

/// `P × Q` for a partition `P` of the rows and `Q` of the columns.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProductPartition {
    rows: Partition,
    cols: Partition,
}

impl ProductPartition {
    pub fn new(rows: Partition, cols: Partition) -> Self {
        Self { rows, cols }
    }

    /// `P × P`.
    pub fn square(p: Partition) -> Self {
        Self {
            rows: p.clone(),
            cols: p,
        }
    }

    pub fn rows(&self) -> &Partition {
        &self.rows
    }

    pub fn cols(&self) -> &Partition {
        &self.cols
    }

    pub fn check_dims(&self, a: &DenseMatrix) -> Result<()> {
        if self.rows.ground() != a.rows() {
            return Err(Error::DimensionMismatch {
                expected: a.rows(),
                found: self.rows.ground(),
            });
        }
        if self.cols.ground() != a.cols() {
            return Err(Error::DimensionMismatch {
                expected: a.cols(),
                found: self.cols.ground(),
            });
        }
        Ok(())
    }
}

/// Whether `A[I,J]` has equal row sums and equal column sums.
///
/// Integral blocks are compared exactly; otherwise sums are compared to the
/// first one within `eq_tol · max(1, ‖A[I,J]‖_∞)`.
pub fn block_is_regular(
    a: &DenseMatrix,
    rows: &[usize],
    cols: &[usize],
    policy: &TolerancePolicy,
) -> Result<bool> {
    if rows.is_empty() || cols.is_empty() {
        return Err(Error::EmptyIndexSet);
    }
    let block = a.submatrix(rows, cols)?;
    let row_sums: Vec<f64> = (0..block.rows())
        .map(|i| block.row(i).iter().sum())
        .collect();
    let col_sums: Vec<f64> = (0..block.cols())
        .map(|j| (0..block.rows()).map(|i| block[(i, j)]).sum())
        .collect();
    let threshold = if block.is_integral() {
        0.0
    } else {
        policy.eq_threshold(block.inf_norm().max(block.transpose().inf_norm()))
    };
    let same = |x: f64, y: f64| (x - y).abs() <= threshold;
    Ok(row_sums.iter().all(|&s| same(s, row_sums[0]))
        && col_sums.iter().all(|&s| same(s, col_sums[0])))
}

/// First block `(p, q)` of `P × Q` that is not regular, scanning row-major.
pub fn first_irregular_block(
    a: &DenseMatrix,
    pp: &ProductPartition,
    policy: &TolerancePolicy,
) -> Result<Option<(usize, usize)>> {
    pp.check_dims(a)?;
    for (p, rows) in pp.rows().blocks().iter().enumerate() {
        for (q, cols) in pp.cols().blocks().iter().enumerate() {
            if !block_is_regular(a, rows, cols, policy)? {
                return Ok(Some((p, q)));
            }
        }
    }
    Ok(None)
}

/// Whether every block `A[P_p, Q_q]` is regular.
pub fn is_equitable_for_matrix(
    a: &DenseMatrix,
    pp: &ProductPartition,
    policy: &TolerancePolicy,
) -> Result<bool> {
    Ok(first_irregular_block(a, pp, policy)?.is_none())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraphPartitionClass {
    Equitable,
    SemiequitableOnly,
    Neither,
}

impl GraphPartitionClass {
    pub fn is_semiequitable(self) -> bool {
        !matches!(self, Self::Neither)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Equitable => "equitable",
            Self::SemiequitableOnly => "semiequitable-only",
            Self::Neither => "neither",
        }
    }
}

/// Semiequitable: every cross pair `G[P_i, P_j]` is semiregular.
/// Equitable: additionally every `G[P_i]` is regular.
pub fn classify_graph_partition(g: &Graph, p: &Partition) -> Result<GraphPartitionClass> {
    if p.ground() != g.order() {
        return Err(Error::DimensionMismatch {
            expected: g.order(),
            found: p.ground(),
        });
    }
    let blocks = p.blocks();
    for i in 0..blocks.len() {
        for j in i + 1..blocks.len() {
            if !g.regularity(&blocks[i], Some(&blocks[j]))? {
                return Ok(GraphPartitionClass::Neither);
            }
        }
    }
    for block in blocks {
        if !g.regularity(block, None)? {
            return Ok(GraphPartitionClass::SemiequitableOnly);
        }
    }
    Ok(GraphPartitionClass::Equitable)
}

/// Every set partition of `0..n` (optionally with exactly `k` blocks), once
/// each, in lexicographic order of restricted growth strings.
///
/// `n` above [`ENUMERATION_CAP`] requires `allow_over_cap`.
pub fn enumerate_partitions(
    n: usize,
    k: Option<usize>,
    allow_over_cap: bool,
) -> Result<PartitionEnumerator> {
    if n == 0 {
        return Err(Error::InvalidArgument("ground set must be nonempty".into()));
    }
    if n > ENUMERATION_CAP && !allow_over_cap {
        return Err(Error::EnumerationCap {
            n,
            cap: ENUMERATION_CAP,
        });
    }
    if let Some(k) = k {
        if k == 0 || k > n {
            return Err(Error::InvalidBlockCount { k, n });
        }
    }
    Ok(PartitionEnumerator {
        rgs: RestrictedGrowth::new(n),
        k,
    })
}

pub struct PartitionEnumerator {
    rgs: RestrictedGrowth,
    k: Option<usize>,
}

impl Iterator for PartitionEnumerator {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        loop {
            let (labels, blocks) = self.rgs.next_string()?;
            if self.k.is_none_or(|k| k == blocks) {
                return Some(Partition::from_labels(labels));
            }
        }
    }
}

/// Restricted growth strings `a` with `a[0] = 0` and
/// `a[i] ≤ 1 + max(a[0..i])`, in lexicographic order.
struct RestrictedGrowth {
    labels: Vec<usize>,
    // prefix_max[i] = max(labels[0..=i])
    prefix_max: Vec<usize>,
    started: bool,
    done: bool,
}

impl RestrictedGrowth {
    fn new(n: usize) -> Self {
        Self {
            labels: vec![0; n],
            prefix_max: vec![0; n],
            started: false,
            done: false,
        }
    }

    fn next_string(&mut self) -> Option<(&[usize], usize)> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
        } else {
            let n = self.labels.len();
            let mut i = n;
            loop {
                if i <= 1 {
                    self.done = true;
                    return None;
                }
                i -= 1;
                if self.labels[i] <= self.prefix_max[i - 1] {
                    break;
                }
            }
            self.labels[i] += 1;
            self.prefix_max[i] = self.prefix_max[i - 1].max(self.labels[i]);
            for j in i + 1..n {
                self.labels[j] = 0;
                self.prefix_max[j] = self.prefix_max[i];
            }
        }
        let blocks = self.prefix_max.last().map_or(0, |m| m + 1);
        Some((&self.labels, blocks))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, blocks: &[&[usize]]) -> Partition {
        Partition::from_one_based(n, &blocks.iter().map(|b| b.to_vec()).collect::<Vec<_>>())
            .unwrap()
    }

    fn k4_minus_13() -> Graph {
        Graph::from_one_based(4, &[(1, 2), (1, 4), (2, 3), (2, 4), (3, 4)]).unwrap()
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::new(3, vec![vec![0], vec![], vec![1, 2]]).is_err());
        assert!(Partition::new(3, vec![vec![0, 1], vec![1, 2]]).is_err());
        assert!(Partition::new(3, vec![vec![0, 1]]).is_err());
        assert!(Partition::new(3, vec![vec![0, 3], vec![1, 2]]).is_err());
        let q = Partition::new(4, vec![vec![3, 1], vec![2, 0]]).unwrap();
        assert_eq!(q.blocks(), &[vec![0, 2], vec![1, 3]]);
        assert_eq!(q.to_string(), "{{1,3},{2,4}}");
        assert_eq!(q.to_text(), "1 3\n2 4\n");
        assert_eq!(Partition::from_labels(&[1, 0, 1, 0]), q);
    }

    #[test]
    fn regular_blocks() {
        let policy = TolerancePolicy::default();
        let c4 = Graph::cycle(4).unwrap().adjacency_matrix();
        assert!(block_is_regular(&c4, &[0, 2], &[1, 3], &policy).unwrap());
        let p3 = Graph::path(3).adjacency_matrix();
        assert!(!block_is_regular(&p3, &[0, 1, 2], &[0, 1, 2], &policy).unwrap());
        assert!(block_is_regular(&p3, &[1], &[2], &policy).unwrap());
        assert_eq!(
            block_is_regular(&p3, &[], &[2], &policy),
            Err(Error::EmptyIndexSet)
        );
        assert!(block_is_regular(&p3, &[5], &[2], &policy).is_err());
    }

    #[test]
    fn regular_blocks_with_real_entries_use_tolerance() {
        let policy = TolerancePolicy::default();
        let a = DenseMatrix::from_rows(&[vec![0.1, 0.2], vec![0.2, 0.1 + 1e-12]]).unwrap();
        assert!(block_is_regular(&a, &[0, 1], &[0, 1], &policy).unwrap());
        let b = DenseMatrix::from_rows(&[vec![0.1, 0.2], vec![0.2, 0.1 + 1e-6]]).unwrap();
        assert!(!block_is_regular(&b, &[0, 1], &[0, 1], &policy).unwrap());
    }

    #[test]
    fn equitable_for_matrix() {
        let policy = TolerancePolicy::default();
        let c4 = Graph::cycle(4).unwrap().adjacency_matrix();
        let bip = ProductPartition::square(p(4, &[&[1, 3], &[2, 4]]));
        assert!(is_equitable_for_matrix(&c4, &bip, &policy).unwrap());
        let a = k4_minus_13().adjacency_matrix();
        let pp = ProductPartition::square(p(4, &[&[1, 2, 3], &[4]]));
        assert!(!is_equitable_for_matrix(&a, &pp, &policy).unwrap());
        assert_eq!(
            first_irregular_block(&a, &pp, &policy).unwrap(),
            Some((0, 0))
        );
        let single = ProductPartition::square(Partition::singletons(4));
        assert!(is_equitable_for_matrix(&a, &single, &policy).unwrap());
        let wrong = ProductPartition::square(Partition::singletons(3));
        assert!(is_equitable_for_matrix(&a, &wrong, &policy).is_err());
    }

    #[test]
    fn graph_classification() {
        let c4 = Graph::cycle(4).unwrap();
        assert_eq!(
            classify_graph_partition(&c4, &p(4, &[&[1, 3], &[2, 4]])).unwrap(),
            GraphPartitionClass::Equitable
        );
        assert_eq!(
            classify_graph_partition(&k4_minus_13(), &p(4, &[&[1, 2, 3], &[4]])).unwrap(),
            GraphPartitionClass::SemiequitableOnly
        );
        assert_eq!(
            classify_graph_partition(&Graph::path(3), &p(3, &[&[1, 2], &[3]])).unwrap(),
            GraphPartitionClass::Neither
        );
        // empty cross blocks are semiregular
        let two_k2 = Graph::from_one_based(4, &[(1, 2), (3, 4)]).unwrap();
        assert_eq!(
            classify_graph_partition(&two_k2, &p(4, &[&[1, 2], &[3, 4]])).unwrap(),
            GraphPartitionClass::Equitable
        );
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_partitions(3, None, false).unwrap().count(), 5);
        assert_eq!(enumerate_partitions(4, Some(2), false).unwrap().count(), 7);
        let one: Vec<_> = enumerate_partitions(1, None, false).unwrap().collect();
        assert_eq!(one, vec![Partition::single_block(1)]);
        // Bell numbers
        for (n, bell) in [(1, 1), (2, 2), (3, 5), (4, 15), (5, 52), (6, 203), (7, 877)] {
            assert_eq!(enumerate_partitions(n, None, false).unwrap().count(), bell);
        }
    }

    #[test]
    fn enumeration_order_and_errors() {
        let all: Vec<String> = enumerate_partitions(3, None, false)
            .unwrap()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(
            all,
            [
                "{{1,2,3}}",
                "{{1,2},{3}}",
                "{{1,3},{2}}",
                "{{1},{2,3}}",
                "{{1},{2},{3}}"
            ]
        );
        assert!(matches!(
            enumerate_partitions(11, None, false),
            Err(Error::EnumerationCap { .. })
        ));
        assert!(enumerate_partitions(11, Some(10), true).is_ok());
        assert!(enumerate_partitions(3, Some(4), false).is_err());
        assert!(enumerate_partitions(3, Some(0), false).is_err());
        assert!(enumerate_partitions(0, None, false).is_err());
    }
}
