//! Multivariate moments of Dirichlet and Gamma distributions.
//!
//! For `x ~ Dir(alpha)` on the simplex and columns `s_1, .., s_q` of a
//! `k × q` matrix `S`, the moment `E[prod_j (s_j · x)^{n_j}]` is computed
//! three independent ways:
//!
//! - [`moment_via_theorem`]: through the refined cycle index,
//!   `n! / (|alpha|)_{|n|} · Z_n(Omega_n[S; alpha])`;
//! - [`moment_via_matrix_sum`]: expanding every power with the multinomial
//!   theorem and integrating monomials, a sum over nonnegative integer
//!   matrices with prescribed column sums;
//! - [`moment_via_recursion`]: a degree-lowering recursion that never
//!   enumerates colored partitions or matrices.
//!
//! All three are exact. [`monte_carlo_moment`] estimates the same quantity
//! from Dirichlet draws.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand_distr::{Distribution, Gamma};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cycle_index::{weighted_partition_sum, AlphaVector, DummyMatrix};
use crate::partition::{compositions, vectors_below};
use crate::rational::{factorial, multinomial, pochhammer, pow, to_f64, vec_factorial};
use crate::{random, Error, Limits, Result};

/// A moment to compute: evaluation matrix `S` (`k × q`), Dirichlet
/// parameters `alpha` (length `k`) and exponents `n` (length `q`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ProblemJson", into = "ProblemJson")]
pub struct MomentProblem {
    s: DummyMatrix,
    alpha: AlphaVector,
    n: Vec<u32>,
}

/// `{"alpha": ["1/2", ...], "S": [["1","0"], ...], "n": [1, 1]}`
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProblemJson {
    #[serde(with = "crate::json::rational_vec")]
    pub alpha: Vec<BigRational>,
    #[serde(rename = "S", with = "crate::json::rational_matrix")]
    pub s: Vec<Vec<BigRational>>,
    pub n: Vec<u32>,
}

impl TryFrom<ProblemJson> for MomentProblem {
    type Error = Error;

    fn try_from(j: ProblemJson) -> Result<Self> {
        MomentProblem::new(DummyMatrix::new(j.s)?, AlphaVector::new(j.alpha)?, j.n)
    }
}

impl From<MomentProblem> for ProblemJson {
    fn from(p: MomentProblem) -> Self {
        ProblemJson {
            alpha: p.alpha.entries().to_vec(),
            s: p.s.rows().to_vec(),
            n: p.n,
        }
    }
}

impl MomentProblem {
    pub fn new(s: DummyMatrix, alpha: AlphaVector, n: Vec<u32>) -> Result<Self> {
        if s.k() != alpha.k() {
            return Err(Error::DimensionMismatch(format!(
                "S has {} rows but alpha has {} entries",
                s.k(),
                alpha.k()
            )));
        }
        if s.q() != n.len() {
            return Err(Error::DimensionMismatch(format!(
                "S has {} columns but n has {} entries",
                s.q(),
                n.len()
            )));
        }
        Ok(MomentProblem { s, alpha, n })
    }

    pub fn s(&self) -> &DummyMatrix {
        &self.s
    }

    pub fn alpha(&self) -> &AlphaVector {
        &self.alpha
    }

    pub fn n(&self) -> &[u32] {
        &self.n
    }

    pub fn k(&self) -> usize {
        self.s.k()
    }

    pub fn q(&self) -> usize {
        self.s.q()
    }

    pub fn degree(&self) -> u32 {
        self.n.iter().sum()
    }

    /// `n! / (|alpha|)_{|n|}`, the factor turning the unnormalized sums into
    /// Dirichlet moments.
    fn normalization(&self) -> BigRational {
        BigRational::from_integer(vec_factorial(&self.n))
            / pochhammer(&self.alpha.total(), self.degree())
    }
}

/// Dirichlet moment through the refined cycle index.
pub fn moment_via_theorem(p: &MomentProblem, limits: &Limits) -> Result<BigRational> {
    let sum = weighted_partition_sum(&p.n, &p.s, &p.alpha, limits)?;
    Ok(sum / pochhammer(&p.alpha.total(), p.degree()))
}

/// Dirichlet moment as
/// `n!/(|alpha|)_{|n|} sum_{M: col(M) = n} (alpha)_{row(M)} S^M / M!`.
///
/// Matrices are built column by column; column `j` ranges over the weak
/// compositions of `n_j` into `k` parts.
pub fn moment_via_matrix_sum(p: &MomentProblem, limits: &Limits) -> Result<BigRational> {
    let k = p.k();
    let count = p.n.iter().try_fold(1usize, |acc, &nj| {
        let c = num_traits::ToPrimitive::to_usize(&multinomial(&[nj, k as u32 - 1]))?;
        acc.checked_mul(c)
    });
    match count {
        Some(c) if c <= limits.enumeration => {}
        _ => return Err(Error::capacity("number of matrices", limits.enumeration)),
    }

    // Per column: every composition m of n_j with weight prod_i S[i][j]^m_i / m_i!.
    let columns: Vec<Vec<(Vec<u32>, BigRational)>> = (0..p.q())
        .map(|j| {
            compositions(p.n[j], k)
                .into_iter()
                .map(|m| {
                    let mut w = BigRational::one();
                    for (i, &mi) in m.iter().enumerate() {
                        w *= pow(p.s.get(i, j), mi);
                    }
                    let w = w / BigRational::from_integer(vec_factorial(&m));
                    (m, w)
                })
                .collect()
        })
        .collect();

    // poch[i][r] = (alpha_i)_r
    let degree = p.degree();
    let poch: Vec<Vec<BigRational>> = p
        .alpha
        .entries()
        .iter()
        .map(|a| (0..=degree).map(|r| pochhammer(a, r)).collect())
        .collect();

    fn walk(
        columns: &[Vec<(Vec<u32>, BigRational)>],
        poch: &[Vec<BigRational>],
        rows: &mut [u32],
        weight: &BigRational,
        total: &mut BigRational,
    ) {
        let Some((first, rest)) = columns.split_first() else {
            let mut term = weight.clone();
            for (i, &r) in rows.iter().enumerate() {
                term *= &poch[i][r as usize];
            }
            *total += term;
            return;
        };
        for (m, w) in first {
            if w.is_zero() {
                continue;
            }
            for (r, &mi) in rows.iter_mut().zip(m) {
                *r += mi;
            }
            walk(rest, poch, rows, &(weight * w), total);
            for (r, &mi) in rows.iter_mut().zip(m) {
                *r -= mi;
            }
        }
    }

    let mut total = BigRational::zero();
    walk(&columns, &poch, &mut vec![0; k], &BigRational::one(), &mut total);
    Ok(total * p.normalization())
}

/// Dirichlet moment by recursion on the degree.
///
/// Write `nu(n) = (|alpha|)_{|n|} / n! · E[prod_j (s_j·x)^{n_j}]`, a
/// polynomial in `S` homogeneous of degree `|n|`, with `nu(0) = 1`. Two
/// facts combine into a recursion at fixed `alpha`:
///
/// - the derivative of `nu(n)` along `S[l][j]` is
///   `alpha_l · nu_{alpha + e_l}(n - e_j)`;
/// - the shifted value satisfies
///   `nu_{alpha+e_l}(n - e_j) = sum_{e_j <= h <= n} S_l^{h-e_j} (|h|-1)!/(h-e_j)! nu(n - h)`.
///
/// Euler's identity for homogeneous polynomials then gives
/// `|n| nu(n) = sum_{l,j} S[l][j] alpha_l nu_{alpha+e_l}(n - e_j)`.
pub fn moment_via_recursion(p: &MomentProblem) -> Result<BigRational> {
    let mut memo: HashMap<Vec<u32>, BigRational> = HashMap::new();
    let nu = reduced_moment(p, &p.n, &mut memo);
    Ok(nu * p.normalization())
}

fn reduced_moment(
    p: &MomentProblem,
    n: &[u32],
    memo: &mut HashMap<Vec<u32>, BigRational>,
) -> BigRational {
    let degree: u32 = n.iter().sum();
    if degree == 0 {
        return BigRational::one();
    }
    if let Some(v) = memo.get(n) {
        return v.clone();
    }
    let mut total = BigRational::zero();
    for (l, alpha_l) in p.alpha.entries().iter().enumerate() {
        for j in (0..n.len()).filter(|&j| n[j] > 0) {
            let s_lj = p.s.get(l, j);
            if s_lj.is_zero() {
                continue;
            }
            let shifted = shifted_reduced_moment(p, n, j, l, memo);
            total += s_lj * alpha_l * shifted;
        }
    }
    let value = total / BigRational::from_integer(BigInt::from(degree));
    memo.insert(n.to_vec(), value.clone());
    value
}

/// `nu_{alpha + e_l}(n - e_j)` expressed through unshifted values of lower
/// degree.
fn shifted_reduced_moment(
    p: &MomentProblem,
    n: &[u32],
    j: usize,
    l: usize,
    memo: &mut HashMap<Vec<u32>, BigRational>,
) -> BigRational {
    let mut total = BigRational::zero();
    for h in vectors_below(n) {
        if h[j] == 0 {
            continue;
        }
        let mut h_minus = h.clone();
        h_minus[j] -= 1;
        let mut coeff = BigRational::new(
            factorial(h.iter().sum::<u32>() - 1),
            vec_factorial(&h_minus),
        );
        for (c, &e) in h_minus.iter().enumerate() {
            coeff *= pow(p.s.get(l, c), e);
        }
        if coeff.is_zero() {
            continue;
        }
        let rest: Vec<u32> = n.iter().zip(&h).map(|(a, b)| a - b).collect();
        total += coeff * reduced_moment(p, &rest, memo);
    }
    total
}

/// Moment of the Gamma vector `eta_i ~ Gamma(alpha_i, 1)` (independent):
/// `E[prod_j (s_j·eta)^{n_j}] = n! Z_n(Omega_n[S; alpha])`.
pub fn gamma_moment(p: &MomentProblem, limits: &Limits) -> Result<BigRational> {
    weighted_partition_sum(&p.n, &p.s, &p.alpha, limits)
}

/// Draws a point of the simplex from `Dir(alpha)` by normalizing
/// independent `Gamma(alpha_i, 1)` variables.
pub fn sample_dirichlet<R: Rng + ?Sized>(alpha: &[f64], rng: &mut R) -> Vec<f64> {
    assert!(!alpha.is_empty(), "alpha must be nonempty");
    assert!(alpha.iter().all(|&a| a > 0.0), "alpha entries must be positive");
    if alpha.len() == 1 {
        return vec![1.0];
    }
    let gammas: Vec<Gamma<f64>> = alpha
        .iter()
        .map(|&a| Gamma::new(a, 1.0).expect("positive shape"))
        .collect();
    loop {
        let draws: Vec<f64> = gammas.iter().map(|g| g.sample(rng)).collect();
        let total: f64 = draws.iter().sum();
        // All draws can underflow to zero for very small shapes; redraw.
        if total > 0.0 {
            return draws.into_iter().map(|x| x / total).collect();
        }
    }
}

/// Running count, mean and sum of squared deviations; merges are exact
/// in the usual parallel-variance sense.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct RunningStats {
    count: u64,
    mean: f64,
    m2: f64,
}

impl RunningStats {
    pub fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    pub fn merge(self, other: RunningStats) -> RunningStats {
        if self.count == 0 {
            return other;
        }
        if other.count == 0 {
            return self;
        }
        let count = self.count + other.count;
        let delta = other.mean - self.mean;
        RunningStats {
            count,
            mean: self.mean + delta * other.count as f64 / count as f64,
            m2: self.m2 + other.m2 + delta * delta * (self.count * other.count) as f64 / count as f64,
        }
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// Standard error of the mean.
    pub fn std_error(&self) -> f64 {
        if self.count < 2 {
            return 0.0;
        }
        (self.m2 / (self.count - 1) as f64 / self.count as f64).sqrt()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MonteCarloEstimate {
    pub estimate: f64,
    pub std_error: f64,
    pub samples: u64,
}

impl MonteCarloEstimate {
    /// Distance from `exact` in units of the standard error. An exact match
    /// with zero standard error counts as zero.
    pub fn z_score(&self, exact: f64) -> f64 {
        let diff = (self.estimate - exact).abs();
        if diff == 0.0 {
            0.0
        } else {
            diff / self.std_error
        }
    }
}

fn integrand(s: &[Vec<f64>], n: &[u32], x: &[f64]) -> f64 {
    n.iter()
        .enumerate()
        .map(|(j, &nj)| {
            let dot: f64 = s.iter().zip(x).map(|(row, xi)| row[j] * xi).sum();
            dot.powi(nj as i32)
        })
        .product()
}

fn monte_carlo<F>(p: &MomentProblem, samples: u64, seed: u64, draw: F) -> MonteCarloEstimate
where
    F: Fn(&[f64], &mut random::Rng) -> Vec<f64> + Sync,
{
    assert!(samples >= 1, "at least one sample is needed");
    let s: Vec<Vec<f64>> = p
        .s
        .rows()
        .iter()
        .map(|r| r.iter().map(to_f64).collect())
        .collect();
    let alpha: Vec<f64> = p.alpha.entries().iter().map(to_f64).collect();
    let per_block: Vec<RunningStats> = random::blocks(samples)
        .into_par_iter()
        .map(|(index, size)| {
            let mut rng = random::stream(seed, index);
            let mut stats = RunningStats::default();
            for _ in 0..size {
                let x = draw(&alpha, &mut rng);
                stats.push(integrand(&s, &p.n, &x));
            }
            stats
        })
        .collect();
    let stats = per_block
        .into_iter()
        .fold(RunningStats::default(), RunningStats::merge);
    MonteCarloEstimate {
        estimate: stats.mean(),
        std_error: stats.std_error(),
        samples: stats.count(),
    }
}

/// Monte Carlo estimate of the Dirichlet moment with its standard error.
pub fn monte_carlo_moment(p: &MomentProblem, samples: u64, seed: u64) -> MonteCarloEstimate {
    monte_carlo(p, samples, seed, sample_dirichlet)
}

/// Monte Carlo estimate of the Gamma moment (see [`gamma_moment`]).
pub fn monte_carlo_gamma_moment(p: &MomentProblem, samples: u64, seed: u64) -> MonteCarloEstimate {
    monte_carlo(p, samples, seed, |alpha, rng| {
        alpha
            .iter()
            .map(|&a| Gamma::new(a, 1.0).expect("positive shape").sample(rng))
            .collect()
    })
}

/// Checks `binom(|v|, v) = sum_{w <= v, |w| = m} binom(|w|, w) binom(|v|-|w|, v-w)`
/// in exact integer arithmetic.
pub fn multinomial_split_check(v: &[u32], m: u32) -> bool {
    let total: u32 = v.iter().sum();
    if m > total {
        return false;
    }
    let rhs: BigInt = vectors_below(v)
        .into_iter()
        .filter(|w| w.iter().sum::<u32>() == m)
        .map(|w| {
            let rest: Vec<u32> = v.iter().zip(&w).map(|(a, b)| a - b).collect();
            multinomial(&w) * multinomial(&rest)
        })
        .sum();
    multinomial(v) == rhs
}
