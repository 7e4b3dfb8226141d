use num_rational::Ratio;
use serde_json::json;

use super::bounds::{BoundEvaluator, BoundId};
use super::{AuditVerdict, Check, TheoremId};
use crate::error::{Error, Result};
use crate::graph::{join, Graph};
use crate::numeric::{
    is_irreducible, singular_values, symmetric_eigen, DenseMatrix, TolerancePolicy,
};
use crate::partition::{
    block_is_regular, classify_graph_partition, first_irregular_block, GraphPartitionClass,
    Partition, ProductPartition,
};
use crate::quotient::{lift_vector, quotient_matrix, symmetric_quotient};

fn fmt12(x: f64) -> String {
    format!("{x:.12e}")
}

/// Equality in a bound forces a structural property of the partition:
/// ineq4 or ineq3 ⇒ equitable (ineq3 also ⇒ `G` regular); lapl1 or lapl2 ⇒
/// semiequitable.
pub fn audit_theorem1(g: &Graph, p: &Partition, policy: &TolerancePolicy) -> Result<AuditVerdict> {
    let evaluator = BoundEvaluator::new(g, policy)?;
    audit_theorem1_with(&evaluator, p)
}

pub fn audit_theorem1_with(evaluator: &BoundEvaluator<'_>, p: &Partition) -> Result<AuditVerdict> {
    let g = evaluator.graph();
    let mut v = AuditVerdict::new(TheoremId::One, evaluator.policy().eq_tol());
    let reports = evaluator.evaluate_all(p)?;
    let class = classify_graph_partition(g, p)?;

    v.hypotheses.hold = false;
    for r in &reports {
        v.hypotheses.checks.push(Check::new(
            format!("equality in {}", r.id),
            r.equality,
            format!(
                "lhs={} rhs={} gap={}",
                fmt12(r.lhs),
                fmt12(r.rhs),
                fmt12(r.gap)
            ),
        ));
        v.hypotheses.hold |= r.equality;
    }
    for r in reports.iter().filter(|r| r.equality) {
        match r.id {
            BoundId::Ineq4 | BoundId::Ineq3 => {
                v.conclude(Check::new(
                    format!("{} => equitable", r.id),
                    class == GraphPartitionClass::Equitable,
                    class.as_str(),
                ));
                if r.id == BoundId::Ineq3 {
                    let regular = g.is_regular();
                    v.conclude(Check::new(
                        "ineq3 => G regular",
                        regular,
                        format!("regular={regular}"),
                    ));
                }
            }
            BoundId::Lapl1 | BoundId::Lapl2 => v.conclude(Check::new(
                format!("{} => semiequitable", r.id),
                class.is_semiequitable(),
                class.as_str(),
            )),
        }
    }
    v.witness("partition", p);
    v.witness("classification", class.as_str());
    v.witness("bounds", &reports);
    Ok(v)
}

/// Exact `tr(A²)` for an integral symmetric matrix.
pub fn square_trace_exact(a: &DenseMatrix) -> Option<i128> {
    if !a.is_integral() {
        return None;
    }
    Some(
        a.as_slice()
            .iter()
            .map(|&x| (x as i128) * (x as i128))
            .sum(),
    )
}

/// Exact `tr((A|P×P)²) = Σ_pq s_pq² / (|P_p|·|P_q|)` for integral `A`, where
/// `s_pq` are the integer block sums.
pub fn quotient_square_trace_exact(a: &DenseMatrix, p: &Partition) -> Option<Ratio<i128>> {
    if !a.is_integral() || p.ground() != a.rows() || !a.is_square() {
        return None;
    }
    let mut total = Ratio::from_integer(0i128);
    for bp in p.blocks() {
        for bq in p.blocks() {
            let s: i128 = bp
                .iter()
                .flat_map(|&i| bq.iter().map(move |&j| (i, j)))
                .map(|ij| a[ij] as i128)
                .sum();
            total += Ratio::new(s * s, (bp.len() * bq.len()) as i128);
        }
    }
    Some(total)
}

/// Whether the nonzero eigenvalues of two descending spectra agree as
/// multisets. Values with `|μ| ≤ tol` count as zero.
pub fn nonzero_spectra_agree(a: &[f64], b: &[f64], tol: f64) -> bool {
    let nz = |s: &[f64]| {
        s.iter()
            .copied()
            .filter(|x| x.abs() > tol)
            .collect::<Vec<_>>()
    };
    let (x, y) = (nz(a), nz(b));
    x.len() == y.len() && x.iter().zip(&y).all(|(u, w)| (u - w).abs() <= tol)
}

/// Blow-up structure: every `G[P_i]` is empty and every `G[P_i, P_j]` is
/// empty or complete. Under it, the nonzero adjacency spectrum of `G` equals
/// that of the quotient and `tr(A²) = tr((A|P×P)²)`. The claimed equality in
/// the partition bounds is only observed, never asserted.
pub fn audit_theorem2(g: &Graph, p: &Partition, policy: &TolerancePolicy) -> Result<AuditVerdict> {
    if p.ground() != g.order() {
        return Err(Error::DimensionMismatch {
            expected: g.order(),
            found: p.ground(),
        });
    }
    let mut v = AuditVerdict::new(TheoremId::Two, policy.eq_tol());
    let blocks = p.blocks();

    let dense_block = blocks
        .iter()
        .position(|b| g.edge_counts(b, None).map_or(true, |e| e > 0));
    v.hypothesis(Check::new(
        "every G[P_i] empty",
        dense_block.is_none(),
        dense_block.map_or("all blocks independent".into(), |i| {
            format!("P{} spans edges", i + 1)
        }),
    ));
    let mut mixed = None;
    'outer: for i in 0..blocks.len() {
        for j in i + 1..blocks.len() {
            let e = g.edge_counts(&blocks[i], Some(&blocks[j]))?;
            if e != 0 && e != blocks[i].len() * blocks[j].len() {
                mixed = Some((i, j));
                break 'outer;
            }
        }
    }
    v.hypothesis(Check::new(
        "every G[P_i,P_j] empty or complete",
        mixed.is_none(),
        mixed.map_or("all cross pairs empty or complete".into(), |(i, j)| {
            format!("G[P{},P{}] is neither", i + 1, j + 1)
        }),
    ));
    v.witness("partition", p);
    if !v.hypotheses.hold {
        return Ok(v);
    }

    let a = g.adjacency_matrix();
    let q = symmetric_quotient(&a, p)?;
    let spec_a = symmetric_eigen(&a, policy)?.into_values();
    let spec_q = symmetric_eigen(q.matrix(), policy)?.into_values();
    let tol = policy.eq_threshold(a.inf_norm());
    let agree = nonzero_spectra_agree(&spec_a, &spec_q, tol);
    let nonzero = |s: &[f64]| {
        s.iter()
            .copied()
            .filter(|x| x.abs() > tol)
            .collect::<Vec<_>>()
    };
    v.conclude(Check::new(
        "nonzero spectra coincide",
        agree,
        format!(
            "{} vs {} nonzero eigenvalues",
            nonzero(&spec_a).len(),
            nonzero(&spec_q).len()
        ),
    ));
    v.witness("nonzero_spectrum_matrix", nonzero(&spec_a));
    v.witness("nonzero_spectrum_quotient", nonzero(&spec_q));

    match (square_trace_exact(&a), quotient_square_trace_exact(&a, p)) {
        (Some(ta), Some(tq)) => {
            let holds = Ratio::from_integer(ta) == tq;
            v.conclude(Check::new(
                "trace of squares",
                holds,
                format!("tr(A^2)={ta} tr(B^2)={tq}"),
            ));
            v.witness("trace_square_matrix", ta as f64);
            v.witness(
                "trace_square_quotient",
                *tq.numer() as f64 / *tq.denom() as f64,
            );
        }
        _ => {
            let ta = a.matmul(&a)?.trace();
            let tq = q.matrix().matmul(q.matrix())?.trace();
            v.conclude(Check::new(
                "trace of squares",
                policy.approx_eq(ta, tq, ta.abs()),
                format!("tr(A^2)={} tr(B^2)={}", fmt12(ta), fmt12(tq)),
            ));
            v.witness("trace_square_matrix", ta);
            v.witness("trace_square_quotient", tq);
        }
    }

    let k = p.len();
    if k >= 2 {
        let evaluator = BoundEvaluator::new(g, policy)?;
        let mut ids = vec![BoundId::Ineq4, BoundId::Lapl1, BoundId::Lapl2];
        if g.is_regular() {
            ids.insert(1, BoundId::Ineq3);
        } else {
            v.notes
                .push("G is not regular; ineq3 is not claimed".into());
        }
        let mut gaps = serde_json::Map::new();
        for id in ids {
            let r = evaluator.evaluate(p, id)?;
            v.observations.push(Check::new(
                format!("literal equality in {id}"),
                r.equality,
                format!(
                    "lhs={} rhs={} gap={}",
                    fmt12(r.lhs),
                    fmt12(r.rhs),
                    fmt12(r.gap)
                ),
            ));
            gaps.insert(id.to_string(), json!(r.gap));
        }
        v.witness("bound_gaps", gaps);
        v.notes
            .push("equality in the partition bounds is reported, not asserted".into());
    } else {
        v.notes
            .push("single-block partition: partition bounds not evaluated".into());
    }
    Ok(v)
}

struct SquareHypotheses {
    nonnegative: bool,
    symmetric: bool,
}

fn square_hypotheses(
    v: &mut AuditVerdict,
    a: &DenseMatrix,
    policy: &TolerancePolicy,
) -> Result<SquareHypotheses> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let nonnegative = a.is_nonnegative();
    v.hypothesis(Check::new(
        "nonnegative",
        nonnegative,
        a.first_negative()
            .map_or("all entries >= 0".into(), |(i, j)| {
                format!("entry ({}, {}) < 0", i + 1, j + 1)
            }),
    ));
    let asym = a.asymmetry()?;
    let symmetric = asym <= policy.eigen_tol() * a.inf_norm().max(1.0);
    v.hypothesis(Check::new(
        "symmetric",
        symmetric,
        format!("asymmetry={}", fmt12(asym)),
    ));
    let irreducible = nonnegative && is_irreducible(a)?;
    v.hypothesis(Check::new(
        "irreducible",
        irreducible,
        if nonnegative {
            "support graph strong connectivity"
        } else {
            "requires nonnegative entries"
        },
    ));
    Ok(SquareHypotheses {
        nonnegative,
        symmetric,
    })
}

/// Top eigenvalues of `A` and `A|P×P` and the quotient's top eigenvector.
fn top_pair(
    a: &DenseMatrix,
    p: &Partition,
    policy: &TolerancePolicy,
) -> Result<(f64, f64, Vec<f64>)> {
    let q = symmetric_quotient(a, p)?;
    let sa = symmetric_eigen(a, policy)?;
    let sq = symmetric_eigen(q.matrix(), policy)?;
    let mu_a = sa.values().first().copied().unwrap_or(0.0);
    let mu_q = sq.values().first().copied().unwrap_or(0.0);
    Ok((mu_a, mu_q, sq.vector(0)))
}

/// Irreducible nonnegative symmetric `A` with `P×P` equitable ⇒
/// `μ_1(A) = μ_1(A|P×P)`, and the lifted quotient Perron vector is a
/// positive eigenvector of `A`.
pub fn audit_theorem3(
    a: &DenseMatrix,
    p: &Partition,
    policy: &TolerancePolicy,
) -> Result<AuditVerdict> {
    let mut v = AuditVerdict::new(TheoremId::Three, policy.eq_tol());
    let pp = ProductPartition::square(p.clone());
    pp.check_dims(a)?;
    let h = square_hypotheses(&mut v, a, policy)?;
    let irregular = first_irregular_block(a, &pp, policy)?;
    v.hypothesis(Check::new(
        "P x P equitable",
        irregular.is_none(),
        irregular.map_or("all blocks regular".into(), |(r, s)| {
            format!("block ({}, {}) irregular", r + 1, s + 1)
        }),
    ));
    v.witness("partition", p);
    if !h.symmetric {
        return Ok(v);
    }
    let (mu_a, mu_q, y) = top_pair(a, p, policy)?;
    let tol = policy.eq_threshold(a.inf_norm());
    v.witness("mu1_matrix", mu_a);
    v.witness("mu1_quotient", mu_q);
    v.witness("gap", mu_a - mu_q);
    if !v.hypotheses.hold {
        return Ok(v);
    }
    v.conclude(Check::new(
        "mu1 equality",
        (mu_a - mu_q).abs() <= tol,
        format!("mu1(A)={} mu1(B)={}", fmt12(mu_a), fmt12(mu_q)),
    ));
    let x = lift_vector(&y, p)?;
    let ax = a.mul_vec(&x)?;
    let residual = ax
        .iter()
        .zip(&x)
        .map(|(l, r)| (l - mu_q * r).abs())
        .fold(0.0, f64::max);
    v.conclude(Check::new(
        "lifted Perron vector is positive",
        x.iter().all(|&xi| xi > 0.0),
        format!(
            "min entry {}",
            fmt12(x.iter().copied().fold(f64::INFINITY, f64::min))
        ),
    ));
    v.conclude(Check::new(
        "lifted Perron vector is an eigenvector",
        residual <= tol,
        format!("residual {}", fmt12(residual)),
    ));
    v.witness("lifted_vector", x);
    Ok(v)
}

/// `σ_1(A) ≥ σ_1(A|P×Q)` for every real matrix; equality when `A` is
/// nonnegative, `AAᵀ` and `AᵀA` are irreducible and `P×Q` is equitable.
///
/// The inequality is checked unconditionally; the hypotheses listed in the
/// verdict govern only the equality clause.
pub fn audit_theorem4(
    a: &DenseMatrix,
    rows: &Partition,
    cols: &Partition,
    policy: &TolerancePolicy,
) -> Result<AuditVerdict> {
    let mut v = AuditVerdict::new(TheoremId::Four, policy.eq_tol());
    let pp = ProductPartition::new(rows.clone(), cols.clone());
    let q = quotient_matrix(a, &pp)?;
    let nonnegative = a.is_nonnegative();
    v.hypothesis(Check::new("nonnegative", nonnegative, ""));
    let at = a.transpose();
    let (left, right) = if nonnegative {
        (
            is_irreducible(&a.matmul(&at)?)?,
            is_irreducible(&at.matmul(a)?)?,
        )
    } else {
        (false, false)
    };
    v.hypothesis(Check::new("A A^T irreducible", left, ""));
    v.hypothesis(Check::new("A^T A irreducible", right, ""));
    let irregular = first_irregular_block(a, &pp, policy)?;
    v.hypothesis(Check::new(
        "P x Q equitable",
        irregular.is_none(),
        irregular.map_or("all blocks regular".into(), |(r, s)| {
            format!("block ({}, {}) irregular", r + 1, s + 1)
        }),
    ));

    let s_a = singular_values(a, policy)?.first().copied().unwrap_or(0.0);
    let s_q = singular_values(q.matrix(), policy)?
        .first()
        .copied()
        .unwrap_or(0.0);
    let tol = policy.eq_threshold(a.inf_norm().max(at.inf_norm()));
    v.witness("row_partition", rows);
    v.witness("col_partition", cols);
    v.witness("sigma1_matrix", s_a);
    v.witness("sigma1_quotient", s_q);
    v.witness("gap", s_a - s_q);
    v.notes.push(
        "the sigma1 inequality is unconditional; hypotheses govern the equality clause".into(),
    );
    v.conclude(Check::new(
        "sigma1 inequality",
        s_a >= s_q - tol,
        format!("sigma1(A)={} sigma1(B)={}", fmt12(s_a), fmt12(s_q)),
    ));
    if v.hypotheses.hold {
        v.conclude(Check::new(
            "sigma1 equality",
            (s_a - s_q).abs() <= tol,
            format!("gap={}", fmt12(s_a - s_q)),
        ));
    }
    Ok(v)
}

/// For irreducible nonnegative symmetric `A` whose off-diagonal blocks
/// `A[P_i, P_j]` are regular: `μ_1(A) = μ_1(A|P×P)` iff every diagonal
/// block `A[P_i, P_i]` is regular.
pub fn audit_theorem5(
    a: &DenseMatrix,
    p: &Partition,
    policy: &TolerancePolicy,
) -> Result<AuditVerdict> {
    let mut v = AuditVerdict::new(TheoremId::Five, policy.eq_tol());
    ProductPartition::square(p.clone()).check_dims(a)?;
    let h = square_hypotheses(&mut v, a, policy)?;
    let blocks = p.blocks();
    let mut off = None;
    'outer: for i in 0..blocks.len() {
        for j in i + 1..blocks.len() {
            if !block_is_regular(a, &blocks[i], &blocks[j], policy)? {
                off = Some((i, j));
                break 'outer;
            }
        }
    }
    v.hypothesis(Check::new(
        "off-diagonal blocks regular",
        off.is_none(),
        off.map_or("all A[P_i,P_j] regular".into(), |(i, j)| {
            format!("A[P{},P{}] irregular", i + 1, j + 1)
        }),
    ));
    v.witness("partition", p);
    v.notes
        .push("\"P x P regular in A\" is read as \"P x P equitable for A\"".into());
    if !h.symmetric || !h.nonnegative {
        return Ok(v);
    }
    let mut irregular_diag = None;
    for (i, b) in blocks.iter().enumerate() {
        if !block_is_regular(a, b, b, policy)? {
            irregular_diag = Some(i);
            break;
        }
    }
    let (mu_a, mu_q, _) = top_pair(a, p, policy)?;
    let tol = policy.eq_threshold(a.inf_norm());
    let equality = (mu_a - mu_q).abs() <= tol;
    v.witness("mu1_matrix", mu_a);
    v.witness("mu1_quotient", mu_q);
    v.witness("gap", mu_a - mu_q);
    v.witness(
        "first_irregular_diagonal_block",
        irregular_diag.map(|i| i + 1),
    );
    if !v.hypotheses.hold {
        return Ok(v);
    }
    let diagonal_regular = irregular_diag.is_none();
    v.conclude(Check::new(
        "diagonal blocks regular <=> mu1 equality",
        diagonal_regular == equality,
        format!("diagonal_regular={diagonal_regular} equality={equality}"),
    ));
    Ok(v)
}

/// Connected `G` with a semiequitable partition: `μ_1(G) = μ_1(A(G)|P×P)`
/// iff the partition is equitable.
pub fn audit_corollary1(
    g: &Graph,
    p: &Partition,
    policy: &TolerancePolicy,
) -> Result<AuditVerdict> {
    let mut v = AuditVerdict::new(TheoremId::Corollary1, policy.eq_tol());
    let class = classify_graph_partition(g, p)?;
    let connected = g.is_connected();
    v.hypothesis(Check::new("connected", connected, ""));
    v.hypothesis(Check::new(
        "semiequitable",
        class.is_semiequitable(),
        class.as_str(),
    ));
    v.witness("partition", p);
    v.witness("classification", class.as_str());
    let a = g.adjacency_matrix();
    let (mu_a, mu_q, _) = top_pair(&a, p, policy)?;
    let tol = policy.eq_threshold(a.inf_norm());
    let equality = (mu_a - mu_q).abs() <= tol;
    v.witness("mu1_matrix", mu_a);
    v.witness("mu1_quotient", mu_q);
    v.witness("gap", mu_a - mu_q);
    if !v.hypotheses.hold {
        return Ok(v);
    }
    let equitable = class == GraphPartitionClass::Equitable;
    v.conclude(Check::new(
        "equitable <=> mu1 equality",
        equitable == equality,
        format!("equitable={equitable} equality={equality}"),
    ));
    Ok(v)
}

/// Largest root of `(x − r1)(x − r2) − n1·n2 = 0`: the top adjacency
/// eigenvalue of the join of an `r1`-regular graph on `n1` vertices with an
/// `r2`-regular graph on `n2` vertices.
pub fn finck_grohmann_mu1(r1: usize, n1: usize, r2: usize, n2: usize) -> Result<f64> {
    for (r, n) in [(r1, n1), (r2, n2)] {
        if n == 0 {
            return Err(Error::InvalidArgument(
                "graph orders must be at least 1".into(),
            ));
        }
        if r >= n {
            return Err(Error::InvalidArgument(format!(
                "degree {r} impossible on {n} vertices"
            )));
        }
        if r % 2 == 1 && n % 2 == 1 {
            return Err(Error::InvalidArgument(format!(
                "no {r}-regular graph on {n} vertices"
            )));
        }
    }
    let (r1, n1, r2, n2) = (r1 as f64, n1 as f64, r2 as f64, n2 as f64);
    Ok((r1 + r2 + ((r1 - r2).powi(2) + 4.0 * n1 * n2).sqrt()) / 2.0)
}

/// Compares the closed-form root against a direct eigensolve of the join and
/// against the top eigenvalue of its two-block quotient.
pub fn audit_finck_grohmann(
    g1: &Graph,
    g2: &Graph,
    policy: &TolerancePolicy,
) -> Result<AuditVerdict> {
    let mut v = AuditVerdict::new(TheoremId::FinckGrohmann, policy.eq_tol());
    let r1 = g1.is_regular();
    let r2 = g2.is_regular();
    v.hypothesis(Check::new("G1 regular", r1, ""));
    v.hypothesis(Check::new("G2 regular", r2, ""));
    if !v.hypotheses.hold {
        return Ok(v);
    }
    let d1 = if g1.order() > 0 { g1.degree(0) } else { 0 };
    let d2 = if g2.order() > 0 { g2.degree(0) } else { 0 };
    let root = finck_grohmann_mu1(d1, g1.order(), d2, g2.order())?;
    let (g, blocks) = join(&[g1.clone(), g2.clone()])?;
    let a = g.adjacency_matrix();
    let (mu_a, mu_q, _) = top_pair(&a, &blocks, policy)?;
    let tol = policy.eq_threshold(a.inf_norm());
    v.witness("root", root);
    v.witness("mu1_join", mu_a);
    v.witness("mu1_quotient", mu_q);
    v.conclude(Check::new(
        "root = mu1(join)",
        (root - mu_a).abs() <= tol,
        format!("diff={}", fmt12(root - mu_a)),
    ));
    v.conclude(Check::new(
        "root = mu1(quotient)",
        (root - mu_q).abs() <= tol,
        format!("diff={}", fmt12(root - mu_q)),
    ));
    Ok(v)
}
