//! Interlacing between a descending spectrum `α` of length `n` and a
//! descending spectrum `β` of length `k ≤ n`:
//!
//! ```text
//! α_i ≥ β_i ≥ α_{n−k+i}    for i = 1..k
//! ```
//!
//! The interlacing is *r-tight* when `β_i = α_i` for `i ≤ r` and
//! `β_i = α_{n−k+i}` for `i > r`; it is *(p,q)-exact* when the top `p` and the
//! bottom `q` eigenvalues of `β` match the corresponding extremes of `α`, with
//! `0 < p + q ≤ k`. Head indices start at 1.
//!
//! All comparisons use `eq_tol · max(1, |α_1|, |α_n|)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::TolerancePolicy;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InterlacingReport {
    pub n: usize,
    pub k: usize,
    pub holds: bool,
    /// `k == n`: the comparison is accepted but interlacing is only defined
    /// for `k < n`.
    pub degenerate: bool,
    pub tight: bool,
    pub tight_r_values: Vec<usize>,
    pub exact: bool,
    pub p_max: usize,
    pub q_max: usize,
    pub tolerance: f64,
}

struct Comparison<'a> {
    alpha: &'a [f64],
    beta: &'a [f64],
    tol: f64,
}

impl<'a> Comparison<'a> {
    fn new(alpha: &'a [f64], beta: &'a [f64], policy: &TolerancePolicy) -> Result<Self> {
        if beta.is_empty() {
            return Err(Error::InvalidArgument(
                "the smaller spectrum is empty".into(),
            ));
        }
        if beta.len() > alpha.len() {
            return Err(Error::InvalidBlockCount {
                k: beta.len(),
                n: alpha.len(),
            });
        }
        for list in [alpha, beta] {
            if let Some(i) = list.windows(2).position(|w| w[0] < w[1]) {
                return Err(Error::UnsortedSpectrum(i + 1));
            }
            if list.iter().any(|x| !x.is_finite()) {
                return Err(Error::InvalidArgument(
                    "spectrum contains a non-finite value".into(),
                ));
            }
        }
        let scale = alpha[0].abs().max(alpha[alpha.len() - 1].abs());
        Ok(Self {
            alpha,
            beta,
            tol: policy.eq_threshold(scale),
        })
    }

    fn n(&self) -> usize {
        self.alpha.len()
    }

    fn k(&self) -> usize {
        self.beta.len()
    }

    fn eq(&self, x: f64, y: f64) -> bool {
        (x - y).abs() <= self.tol
    }

    fn holds(&self) -> bool {
        let (n, k) = (self.n(), self.k());
        (0..k).all(|i| {
            self.alpha[i] >= self.beta[i] - self.tol
                && self.beta[i] >= self.alpha[n - k + i] - self.tol
        })
    }

    fn head_matches(&self) -> usize {
        (0..self.k())
            .take_while(|&i| self.eq(self.alpha[i], self.beta[i]))
            .count()
    }

    fn tail_matches(&self) -> usize {
        let (n, k) = (self.n(), self.k());
        (0..k)
            .rev()
            .take_while(|&i| self.eq(self.alpha[n - k + i], self.beta[i]))
            .count()
    }
}

pub fn check_interlacing(alpha: &[f64], beta: &[f64], policy: &TolerancePolicy) -> Result<bool> {
    Ok(Comparison::new(alpha, beta, policy)?.holds())
}

/// Every `r ∈ [0, k]` for which the interlacing is r-tight.
pub fn classify_tight(alpha: &[f64], beta: &[f64], policy: &TolerancePolicy) -> Result<Vec<usize>> {
    let c = Comparison::new(alpha, beta, policy)?;
    if !c.holds() {
        return Err(Error::NotInterlaced);
    }
    Ok(tight_values(c.k(), c.head_matches(), c.tail_matches()))
}

/// Longest matching prefix and suffix `(p_max, q_max)`. The interlacing is
/// (p,q)-exact for every `p ≤ p_max`, `q ≤ q_max` with `0 < p + q ≤ k`.
pub fn classify_exact(
    alpha: &[f64],
    beta: &[f64],
    policy: &TolerancePolicy,
) -> Result<(usize, usize)> {
    let c = Comparison::new(alpha, beta, policy)?;
    if !c.holds() {
        return Err(Error::NotInterlaced);
    }
    Ok((c.head_matches(), c.tail_matches()))
}

pub fn interlacing_report(
    alpha: &[f64],
    beta: &[f64],
    policy: &TolerancePolicy,
) -> Result<InterlacingReport> {
    let c = Comparison::new(alpha, beta, policy)?;
    let holds = c.holds();
    let (p_max, q_max) = if holds {
        (c.head_matches(), c.tail_matches())
    } else {
        (0, 0)
    };
    let tight_r_values = if holds {
        tight_values(c.k(), p_max, q_max)
    } else {
        Vec::new()
    };
    Ok(InterlacingReport {
        n: c.n(),
        k: c.k(),
        holds,
        degenerate: c.k() == c.n(),
        tight: !tight_r_values.is_empty(),
        tight_r_values,
        exact: holds && p_max + q_max >= 1,
        p_max,
        q_max,
        tolerance: c.tol,
    })
}

// r-tight iff the head matches through r and the tail matches over r+1..=k
fn tight_values(k: usize, p_max: usize, q_max: usize) -> Vec<usize> {
    (0..=k).filter(|&r| r <= p_max && k - r <= q_max).collect()
}
