//! The four partition bounds relating eigenvalue sums of a graph to edge
//! counts. For a partition `P_1, …, P_k` of the vertices:
//!
//! ```text
//! ineq4:  μ_1 + … + μ_k            ≥ Σ_i 2e(P_i)/|P_i|
//! ineq3:  μ_{n−k+2} + … + μ_n      ≤ Σ_i 2e(P_i)/|P_i| − 2e(G)/n
//! lapl1:  λ_2 + … + λ_k            ≤ Σ_{i<j} e(P_i,P_j)(1/|P_i| + 1/|P_j|)
//! lapl2:  λ_{n−k+1} + … + λ_n      ≥ Σ_{i<j} e(P_i,P_j)(1/|P_i| + 1/|P_j|)
//! ```
//!
//! `μ` are adjacency eigenvalues in descending order and `λ` Laplacian
//! eigenvalues in ascending order. Left sides come from the eigensolver and
//! right sides from integer edge counts; the two never share intermediates.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::numeric::{symmetric_eigen, TolerancePolicy};
use crate::partition::Partition;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BoundId {
    Ineq4,
    Ineq3,
    Lapl1,
    Lapl2,
}

/// Which way a bound points, reading the display as `lhs ? rhs`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Sense {
    /// `lhs ≥ rhs`: the right side is a lower bound.
    LhsAtLeastRhs,
    /// `lhs ≤ rhs`: the right side is an upper bound.
    LhsAtMostRhs,
}

impl BoundId {
    pub const ALL: [BoundId; 4] = [
        BoundId::Ineq4,
        BoundId::Ineq3,
        BoundId::Lapl1,
        BoundId::Lapl2,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Ineq4 => "ineq4",
            Self::Ineq3 => "ineq3",
            Self::Lapl1 => "lapl1",
            Self::Lapl2 => "lapl2",
        }
    }

    pub fn sense(self) -> Sense {
        match self {
            Self::Ineq4 | Self::Lapl2 => Sense::LhsAtLeastRhs,
            Self::Ineq3 | Self::Lapl1 => Sense::LhsAtMostRhs,
        }
    }
}

impl fmt::Display for BoundId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BoundId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BoundId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown bound id {s:?}")))
    }
}

impl Serialize for BoundId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundTerm {
    pub label: String,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub id: BoundId,
    pub sense: Sense,
    pub lhs: f64,
    pub rhs: f64,
    /// Slack of the bound: `lhs − rhs` for lower bounds, `rhs − lhs` for
    /// upper bounds. Never below `−eq_tol` when the bound holds.
    pub gap: f64,
    pub equality: bool,
    pub partition: Partition,
    pub lhs_terms: Vec<BoundTerm>,
    pub rhs_terms: Vec<BoundTerm>,
    pub tolerance: f64,
}

impl BoundReport {
    pub fn holds(&self) -> bool {
        self.gap >= -self.tolerance
    }
}

/// `λ_i` (1-based, ascending) from a descending spectrum: `values[n − i]`.
pub fn laplacian_lambda(descending: &[f64], i: usize) -> f64 {
    descending[descending.len() - i]
}

/// Graph spectra computed once and reused across many partitions.
#[derive(Debug, Clone)]
pub struct BoundEvaluator<'g> {
    graph: &'g Graph,
    adjacency: Vec<f64>,
    laplacian: Vec<f64>,
    policy: TolerancePolicy,
}

impl<'g> BoundEvaluator<'g> {
    pub fn new(graph: &'g Graph, policy: &TolerancePolicy) -> Result<Self> {
        let adjacency = symmetric_eigen(&graph.adjacency_matrix(), policy)?.into_values();
        let laplacian = symmetric_eigen(&graph.laplacian_matrix(), policy)?.into_values();
        Ok(Self {
            graph,
            adjacency,
            laplacian,
            policy: *policy,
        })
    }

    pub fn graph(&self) -> &Graph {
        self.graph
    }

    pub fn policy(&self) -> &TolerancePolicy {
        &self.policy
    }

    pub fn adjacency_spectrum(&self) -> &[f64] {
        &self.adjacency
    }

    pub fn laplacian_spectrum(&self) -> &[f64] {
        &self.laplacian
    }

    pub fn evaluate(&self, p: &Partition, id: BoundId) -> Result<BoundReport> {
        let n = self.graph.order();
        let k = check_partition(self.graph, p)?;
        let mu = |i: usize| BoundTerm {
            label: format!("mu_{i}"),
            value: self.adjacency[i - 1],
        };
        let lambda = |i: usize| BoundTerm {
            label: format!("lambda_{i}"),
            value: laplacian_lambda(&self.laplacian, i),
        };
        let lhs_terms: Vec<BoundTerm> = match id {
            BoundId::Ineq4 => (1..=k).map(mu).collect(),
            BoundId::Ineq3 => (n - k + 2..=n).map(mu).collect(),
            BoundId::Lapl1 => (2..=k).map(lambda).collect(),
            BoundId::Lapl2 => (n - k + 1..=n).map(lambda).collect(),
        };
        let rhs_terms = rhs_terms(self.graph, p, id);
        let lhs: f64 = lhs_terms.iter().map(|t| t.value).sum();
        let rhs: f64 = rhs_terms.iter().map(|t| t.value).sum();
        let gap = match id.sense() {
            Sense::LhsAtLeastRhs => lhs - rhs,
            Sense::LhsAtMostRhs => rhs - lhs,
        };
        let tolerance = self.policy.eq_threshold(lhs.abs().max(rhs.abs()));
        Ok(BoundReport {
            id,
            sense: id.sense(),
            lhs,
            rhs,
            gap,
            equality: gap.abs() <= tolerance,
            partition: p.clone(),
            lhs_terms,
            rhs_terms,
            tolerance,
        })
    }

    pub fn evaluate_all(&self, p: &Partition) -> Result<Vec<BoundReport>> {
        BoundId::ALL
            .iter()
            .map(|&id| self.evaluate(p, id))
            .collect()
    }
}

pub fn evaluate_bound(
    g: &Graph,
    p: &Partition,
    id: BoundId,
    policy: &TolerancePolicy,
) -> Result<BoundReport> {
    check_partition(g, p)?;
    BoundEvaluator::new(g, policy)?.evaluate(p, id)
}

/// Right-hand side of a bound from edge counts alone.
pub fn rhs_value(g: &Graph, p: &Partition, id: BoundId) -> Result<f64> {
    check_partition(g, p)?;
    Ok(rhs_terms(g, p, id).iter().map(|t| t.value).sum())
}

fn check_partition(g: &Graph, p: &Partition) -> Result<usize> {
    let n = g.order();
    if p.ground() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: p.ground(),
        });
    }
    let k = p.len();
    if k < 2 || k > n {
        return Err(Error::InvalidBlockCount { k, n });
    }
    Ok(k)
}

fn rhs_terms(g: &Graph, p: &Partition, id: BoundId) -> Vec<BoundTerm> {
    let blocks = p.blocks();
    let inside = || {
        blocks.iter().enumerate().map(|(i, b)| {
            let e = g
                .edge_counts(b, None)
                .expect("partition blocks are valid vertex sets");
            BoundTerm {
                label: format!("2e(P{0})/|P{0}|", i + 1),
                value: 2.0 * e as f64 / b.len() as f64,
            }
        })
    };
    match id {
        BoundId::Ineq4 => inside().collect(),
        BoundId::Ineq3 => {
            let mut terms: Vec<BoundTerm> = inside().collect();
            terms.push(BoundTerm {
                label: "-2e(G)/n".into(),
                value: -2.0 * g.edge_count() as f64 / g.order() as f64,
            });
            terms
        }
        BoundId::Lapl1 | BoundId::Lapl2 => {
            let mut terms = Vec::new();
            for i in 0..blocks.len() {
                for j in i + 1..blocks.len() {
                    let e = g
                        .edge_counts(&blocks[i], Some(&blocks[j]))
                        .expect("partition blocks are disjoint");
                    let weight = 1.0 / blocks[i].len() as f64 + 1.0 / blocks[j].len() as f64;
                    terms.push(BoundTerm {
                        label: format!("e(P{},P{})(1/|P{}|+1/|P{}|)", i + 1, j + 1, i + 1, j + 1),
                        value: e as f64 * weight,
                    });
                }
            }
            terms
        }
    }
}
