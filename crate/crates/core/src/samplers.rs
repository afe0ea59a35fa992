//! Forward simulation: the polychromatic Hoppe urn, the restaurant process
//! with a random menu per customer, and theta-biased permutations.
//!
//! Samplers run in `f64`. Histogram runners split the work into seeded
//! blocks (see [`crate::random`]) so a given seed always yields the same
//! counts regardless of thread scheduling.

use std::collections::{BTreeMap, BTreeSet};

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::Rng;
use rayon::prelude::*;

use crate::cycle_index::{cycle_structure, Permutation};
use crate::esf::{EsfParams, ExactDistribution};
use crate::partition::{ColorVector, ColoredPartition, IntegerPartition};
use crate::random;
use crate::rational::to_f64;
use crate::{Error, Result};

/// Floating-point sampler parameters.
#[derive(Clone, Debug)]
pub struct SamplerParams {
    theta: f64,
    p: Vec<f64>,
    colors: WeightedIndex<f64>,
}

impl SamplerParams {
    pub fn new(theta: f64, p: Vec<f64>) -> Result<Self> {
        if !(theta.is_finite() && theta > 0.0) {
            return Err(Error::InvalidInput("theta must be positive".into()));
        }
        let colors = WeightedIndex::new(&p)
            .map_err(|e| Error::InvalidInput(format!("bad color weights: {e}")))?;
        Ok(SamplerParams { theta, p, colors })
    }

    pub fn from_exact(params: &EsfParams) -> Result<Self> {
        Self::new(
            to_f64(params.theta()),
            params.p().iter().map(to_f64).collect(),
        )
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn p(&self) -> &[f64] {
        &self.p
    }

    pub fn q(&self) -> usize {
        self.p.len()
    }

    fn draw_color<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        self.colors.sample(rng)
    }
}

/// State of the Hoppe urn after `t` draws: one color-count vector per label
/// and, for O(1) selection, the label of every ball.
#[derive(Clone, Debug)]
pub struct UrnState {
    q: usize,
    labels: Vec<Vec<u32>>,
    ball_labels: Vec<usize>,
}

impl UrnState {
    /// The urn holding only the cube.
    pub fn new(q: usize) -> Self {
        UrnState {
            q,
            labels: Vec::new(),
            ball_labels: Vec::new(),
        }
    }

    pub fn t(&self) -> usize {
        self.ball_labels.len()
    }

    /// Number of labels so far.
    pub fn labels(&self) -> usize {
        self.labels.len()
    }

    /// Color counts of label `i` (0-based).
    pub fn label_counts(&self, i: usize) -> &[u32] {
        &self.labels[i]
    }

    /// One draw. With probability `theta/(theta + t)` the cube is drawn and a
    /// new label starts; otherwise a uniform ball's label is copied. The new
    /// ball's color is drawn from `p` either way.
    pub fn step<R: Rng + ?Sized>(&mut self, params: &SamplerParams, rng: &mut R) {
        debug_assert_eq!(params.q(), self.q);
        let t = self.t();
        let u = rng.random::<f64>() * (params.theta + t as f64);
        let label = if u < params.theta {
            self.labels.push(vec![0; self.q]);
            self.labels.len() - 1
        } else {
            self.ball_labels[rng.random_range(0..t)]
        };
        self.labels[label][params.draw_color(rng)] += 1;
        self.ball_labels.push(label);
    }

    /// The colored partition made of the labels' color counts.
    pub fn partition(&self) -> ColoredPartition {
        let mut a = ColoredPartition::empty(self.q);
        for counts in &self.labels {
            a.add(ColorVector::new(counts.clone()).expect("labels are nonempty"), 1);
        }
        a
    }
}

/// Runs the urn for `t_max` steps and returns the colored partition.
pub fn sample_hoppe_partition<R: Rng + ?Sized>(
    t_max: usize,
    params: &SamplerParams,
    rng: &mut R,
) -> ColoredPartition {
    let mut urn = UrnState::new(params.q());
    for _ in 0..t_max {
        urn.step(params, rng);
    }
    urn.partition()
}

/// Seats `t_max` customers. Customer `j` sits with each earlier customer's
/// table with probability `1/(j - 1 + theta)` per customer, or opens a table
/// with probability `theta/(j - 1 + theta)`, and orders a menu drawn from
/// `p`. Returns the per-table menu counts.
pub fn sample_crp_partition<R: Rng + ?Sized>(
    t_max: usize,
    params: &SamplerParams,
    rng: &mut R,
) -> ColoredPartition {
    let q = params.q();
    let mut table_of: Vec<usize> = Vec::with_capacity(t_max);
    let mut menus: Vec<Vec<u32>> = Vec::new();
    for j in 0..t_max {
        let u = rng.random::<f64>() * (j as f64 + params.theta);
        let table = if u < j as f64 {
            table_of[(u as usize).min(j - 1)]
        } else {
            menus.push(vec![0; q]);
            menus.len() - 1
        };
        table_of.push(table);
        menus[table][params.draw_color(rng)] += 1;
    }
    let mut a = ColoredPartition::empty(q);
    for m in menus {
        a.add(ColorVector::new(m).expect("tables are nonempty"), 1);
    }
    a
}

/// Random permutation of `{0, .., n-1}` with probability proportional to
/// `theta^(number of cycles)`. Element `j` is placed right after one of the
/// `j` earlier elements in its cycle (probability `1/(j + theta)` each) or
/// starts a new fixed point (probability `theta/(j + theta)`).
pub fn sample_theta_biased_permutation<R: Rng + ?Sized>(
    n: usize,
    theta: f64,
    rng: &mut R,
) -> Permutation {
    assert!(theta > 0.0, "theta must be positive");
    let mut succ: Vec<usize> = Vec::with_capacity(n);
    for j in 0..n {
        let u = rng.random::<f64>() * (j as f64 + theta);
        if u < j as f64 {
            let i = (u as usize).min(j - 1);
            succ.push(succ[i]);
            succ[i] = j;
        } else {
            succ.push(j);
        }
    }
    Permutation::new(succ).expect("insertion keeps a bijection")
}

/// Which partition sampler a histogram runner uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PartitionSampler {
    Hoppe,
    Crp,
}

/// Empirical counts of a partition-valued sampler over `runs` seeded draws.
pub fn partition_histogram(
    sampler: PartitionSampler,
    t_max: usize,
    params: &SamplerParams,
    runs: u64,
    seed: u64,
) -> BTreeMap<ColoredPartition, u64> {
    histogram(runs, seed, |rng| match sampler {
        PartitionSampler::Hoppe => sample_hoppe_partition(t_max, params, rng),
        PartitionSampler::Crp => sample_crp_partition(t_max, params, rng),
    })
}

/// Empirical counts of the cycle structure of theta-biased permutations.
pub fn permutation_shape_histogram(
    n: usize,
    theta: f64,
    runs: u64,
    seed: u64,
) -> BTreeMap<IntegerPartition, u64> {
    histogram(runs, seed, |rng| {
        cycle_structure(&sample_theta_biased_permutation(n, theta, rng))
    })
}

fn histogram<K, F>(runs: u64, seed: u64, draw: F) -> BTreeMap<K, u64>
where
    K: Ord + Send,
    F: Fn(&mut random::Rng) -> K + Sync,
{
    let per_block: Vec<BTreeMap<K, u64>> = random::blocks(runs)
        .into_par_iter()
        .map(|(index, size)| {
            let mut rng = random::stream(seed, index);
            let mut counts = BTreeMap::new();
            for _ in 0..size {
                *counts.entry(draw(&mut rng)).or_insert(0) += 1;
            }
            counts
        })
        .collect();
    let mut total = BTreeMap::new();
    for block in per_block {
        for (k, v) in block {
            *total.entry(k).or_insert(0) += v;
        }
    }
    total
}

/// Total-variation distance between empirical counts and an exact law given
/// as `f64` masses. Atoms never observed contribute their full exact mass;
/// observed atoms outside the exact support contribute their frequency.
pub fn tv_distance<K: Ord>(counts: &BTreeMap<K, u64>, exact: &BTreeMap<K, f64>) -> f64 {
    let runs: u64 = counts.values().sum();
    let runs = runs.max(1) as f64;
    let keys: BTreeSet<&K> = counts.keys().chain(exact.keys()).collect();
    let total: f64 = keys
        .into_iter()
        .map(|k| {
            let emp = counts.get(k).copied().unwrap_or(0) as f64 / runs;
            let ex = exact.get(k).copied().unwrap_or(0.0);
            (emp - ex).abs()
        })
        .sum();
    total / 2.0
}

/// Total-variation distance between two empirical histograms.
pub fn tv_between<K: Ord>(a: &BTreeMap<K, u64>, b: &BTreeMap<K, u64>) -> f64 {
    let nb: u64 = b.values().sum();
    let nb = nb.max(1) as f64;
    let freq: BTreeMap<&K, f64> = b.iter().map(|(k, &v)| (k, v as f64 / nb)).collect();
    let na: u64 = a.values().sum();
    let na = na.max(1) as f64;
    let keys: BTreeSet<&K> = a.keys().chain(b.keys()).collect();
    keys.into_iter()
        .map(|k| {
            let fa = a.get(k).copied().unwrap_or(0) as f64 / na;
            let fb = freq.get(k).copied().unwrap_or(0.0);
            (fa - fb).abs()
        })
        .sum::<f64>()
        / 2.0
}

/// Exact distribution as `f64` masses, for [`tv_distance`].
pub fn exact_as_f64(d: &ExactDistribution) -> BTreeMap<ColoredPartition, f64> {
    d.iter().map(|(a, m)| (a.clone(), to_f64(m))).collect()
}
