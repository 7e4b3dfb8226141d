//! Equitable refinement and exhaustive partition search.

use serde::Serialize;

use crate::audit::{rhs_value, BoundId, Sense};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::partition::{
    classify_graph_partition, enumerate_partitions, GraphPartitionClass, Partition,
};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchResult {
    pub bound: BoundId,
    pub k: usize,
    pub best_partition: Partition,
    pub objective: f64,
    pub candidates_examined: usize,
    pub exhaustive: bool,
}

/// Coarsest equitable partition refining `seed`.
///
/// Each round splits every block by the signature "number of neighbours in
/// each current block" until no block splits.
pub fn equitable_refinement(g: &Graph, seed: &Partition) -> Result<Partition> {
    if seed.ground() != g.order() {
        return Err(Error::DimensionMismatch {
            expected: g.order(),
            found: seed.ground(),
        });
    }
    let mut current = seed.clone();
    loop {
        let labels = current.labels();
        let k = current.len();
        let mut next: Vec<Vec<usize>> = Vec::with_capacity(k);
        for block in current.blocks() {
            let mut keyed: Vec<(Vec<usize>, usize)> = block
                .iter()
                .map(|&v| {
                    let mut sig = vec![0; k];
                    for u in g.neighbors(v) {
                        sig[labels[u]] += 1;
                    }
                    (sig, v)
                })
                .collect();
            keyed.sort();
            for group in keyed.chunk_by(|a, b| a.0 == b.0) {
                next.push(group.iter().map(|&(_, v)| v).collect());
            }
        }
        if next.len() == k {
            return Ok(current);
        }
        current = Partition::new(g.order(), next)?;
    }
}

/// All partitions with at most `max_k` blocks that are equitable for `g`, in
/// enumeration order.
pub fn find_equitable_partitions(
    g: &Graph,
    max_k: usize,
    allow_over_cap: bool,
) -> Result<Vec<Partition>> {
    let n = g.order();
    let mut found = Vec::new();
    for p in enumerate_partitions(n, None, allow_over_cap)? {
        if p.len() <= max_k && classify_graph_partition(g, &p)? == GraphPartitionClass::Equitable {
            found.push(p);
        }
    }
    Ok(found)
}

/// Best right-hand side of a bound over all `k`-block partitions: the largest
/// lower bound (ineq4, lapl2) or the smallest upper bound (ineq3, lapl1).
/// Ties keep the earliest partition in enumeration order.
pub fn maximize_bound(
    g: &Graph,
    k: usize,
    id: BoundId,
    allow_over_cap: bool,
) -> Result<SearchResult> {
    let n = g.order();
    if k < 2 || k >= n {
        return Err(Error::InvalidBlockCount { k, n });
    }
    let better = |candidate: f64, incumbent: f64| match id.sense() {
        Sense::LhsAtLeastRhs => candidate > incumbent,
        Sense::LhsAtMostRhs => candidate < incumbent,
    };
    let mut best: Option<(Partition, f64)> = None;
    let mut examined = 0;
    for p in enumerate_partitions(n, Some(k), allow_over_cap)? {
        examined += 1;
        let value = rhs_value(g, &p, id)?;
        if best.as_ref().is_none_or(|(_, b)| better(value, *b)) {
            best = Some((p, value));
        }
    }
    let (best_partition, objective) = best.expect("at least one k-block partition exists");
    Ok(SearchResult {
        bound: id,
        k,
        best_partition,
        objective,
        candidates_examined: examined,
        exhaustive: true,
    })
}
