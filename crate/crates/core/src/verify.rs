//! Named cross-module identity checks.
//!
//! Each check runs a family of instances and reports how many it ran, and
//! the first counterexample if any. Random instances are drawn from a seeded
//! stream, so a report is reproducible from its seed.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::cycle_index::{
    classical_cycle_index, orbit_counts_bruteforce, pattern_inventory_bruteforce,
    refined_cycle_index, row_sum_power_sums, AlphaVector, Coloring, DummyMatrix,
};
use crate::esf::{
    apply_deletion, classical_esf, condition_on_colors, esf_conditional, esf_distribution,
    kernel_power, kernel_power_via, pushforward_aggregate, shape_pushforward,
    theta_biased_pushforward, EsfParams,
};
use crate::moments::{
    moment_via_matrix_sum, moment_via_recursion, moment_via_theorem, monte_carlo_moment,
    multinomial_split_check, MomentProblem,
};
use crate::necklaces::{all_fiber_sizes, multinomial_via_necklaces};
use crate::partition::{
    compositions, enumerate_all_colored_partitions, enumerate_colored_partitions,
    enumerate_integer_partitions, m2, multinomial_coefficient, shape,
    DegeneracyMap,
};
use crate::random::{self, Rng as StreamRng};
use crate::rational::{factorial, format_rational, int, is_integer, ratio, to_f64};
use crate::samplers::{exact_as_f64, partition_histogram, tv_distance, PartitionSampler, SamplerParams};
use crate::{Error, Limits, Result};

/// Names accepted by [`run_check`], in the order [`run_all`] runs them.
pub const CHECKS: &[&str] = &[
    "moments",
    "spot-values",
    "orbit-counts",
    "pattern-inventory",
    "esf-normalization",
    "conditional",
    "consistency",
    "hoppe",
    "necklaces",
    "corollaries",
    "split-identity",
];

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Overrides the size bound of every check.
    pub n_max: Option<u32>,
    /// Monte Carlo sample count per instance.
    pub runs: u64,
    pub seed: u64,
    /// Perturbs one side of every comparison; every check must then fail.
    pub inject_fault: bool,
    pub limits: Limits,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            n_max: None,
            runs: 1_000_000,
            seed: 0,
            inject_fault: false,
            limits: Limits::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub instances: u64,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

/// Tracks instances and keeps the first failure.
struct Tally<'a> {
    opts: &'a VerifyOptions,
    instances: u64,
    counterexample: Option<String>,
}

impl<'a> Tally<'a> {
    fn new(opts: &'a VerifyOptions) -> Self {
        Tally {
            opts,
            instances: 0,
            counterexample: None,
        }
    }

    fn bound(&self, default: u32) -> u32 {
        self.opts.n_max.unwrap_or(default)
    }

    /// Applies the injected fault to an exact value.
    fn tamper(&self, x: BigRational) -> BigRational {
        if self.opts.inject_fault {
            x + ratio(1, 1_000_003)
        } else {
            x
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.instances += 1;
        let ok = ok && !self.opts.inject_fault;
        if !ok && self.counterexample.is_none() {
            self.counterexample = Some(describe());
        }
    }

    fn equal(&mut self, lhs: &BigRational, rhs: &BigRational, describe: impl FnOnce() -> String) {
        let lhs = self.tamper(lhs.clone());
        let ok = lhs == *rhs;
        self.instances += 1;
        if !ok && self.counterexample.is_none() {
            self.counterexample = Some(format!(
                "{}: {} != {}",
                describe(),
                format_rational(&lhs),
                format_rational(rhs)
            ));
        }
    }

    fn finish(self, name: &str) -> CheckReport {
        CheckReport {
            check: name.to_string(),
            instances: self.instances,
            status: if self.counterexample.is_none() {
                Status::Pass
            } else {
                Status::Fail
            },
            counterexample: self.counterexample,
        }
    }
}

/// Runs one named check.
pub fn run_check(name: &str, opts: &VerifyOptions) -> Result<CheckReport> {
    let index = CHECKS
        .iter()
        .position(|c| *c == name)
        .ok_or_else(|| Error::InvalidInput(format!("unknown check {name:?}")))?;
    let mut t = Tally::new(opts);
    let mut rng = random::stream(opts.seed, 1_000 + index as u64);
    match name {
        "moments" => check_moments(&mut t, &mut rng)?,
        "spot-values" => check_spot_values(&mut t)?,
        "orbit-counts" => check_orbit_counts(&mut t, &mut rng)?,
        "pattern-inventory" => check_pattern_inventory(&mut t, &mut rng)?,
        "esf-normalization" => check_esf_normalization(&mut t)?,
        "conditional" => check_conditional(&mut t, &mut rng)?,
        "consistency" => check_consistency(&mut t, &mut rng)?,
        "hoppe" => check_hoppe(&mut t)?,
        "necklaces" => check_necklaces(&mut t)?,
        "corollaries" => check_corollaries(&mut t, &mut rng)?,
        "split-identity" => check_split(&mut t, &mut rng),
        _ => unreachable!(),
    }
    Ok(t.finish(name))
}

/// Runs the named checks (all of them when `only` is empty).
pub fn run_all(only: &[String], opts: &VerifyOptions) -> Result<Vec<CheckReport>> {
    let names: Vec<&str> = if only.is_empty() {
        CHECKS.to_vec()
    } else {
        only.iter().map(String::as_str).collect()
    };
    names.into_iter().map(|n| run_check(n, opts)).collect()
}

/// Positive rational with numerator and denominator in `1..=20`.
pub fn random_positive<R: Rng + ?Sized>(rng: &mut R) -> BigRational {
    ratio(rng.random_range(1..=20), rng.random_range(1..=20))
}

/// Nonnegative rational with numerator in `0..=20`, denominator in `1..=20`.
pub fn random_nonnegative<R: Rng + ?Sized>(rng: &mut R) -> BigRational {
    ratio(rng.random_range(0..=20), rng.random_range(1..=20))
}

pub fn random_matrix<R: Rng + ?Sized>(k: usize, q: usize, rng: &mut R) -> DummyMatrix {
    DummyMatrix::new(
        (0..k)
            .map(|_| (0..q).map(|_| random_nonnegative(rng)).collect())
            .collect(),
    )
    .expect("k, q >= 1")
}

pub fn random_alpha<R: Rng + ?Sized>(k: usize, rng: &mut R) -> AlphaVector {
    AlphaVector::new((0..k).map(|_| random_positive(rng)).collect()).expect("positive")
}

/// A random point of the simplex with rational coordinates.
pub fn random_simplex_point<R: Rng + ?Sized>(q: usize, rng: &mut R) -> Vec<BigRational> {
    let w: Vec<BigRational> = (0..q).map(|_| random_positive(rng)).collect();
    let total = w.iter().fold(BigRational::zero(), |acc, x| acc + x);
    w.into_iter().map(|x| x / &total).collect()
}

/// Color counts with total in `0..=max`, each element colored uniformly.
pub fn random_n_vec<R: Rng + ?Sized>(q: usize, max: u32, rng: &mut R) -> Vec<u32> {
    let total = rng.random_range(0..=max);
    random_composition(q, total, rng)
}

/// Color counts of `n` uniformly colored elements.
pub fn random_composition<R: Rng + ?Sized>(q: usize, n: u32, rng: &mut R) -> Vec<u32> {
    let mut v = vec![0u32; q];
    for _ in 0..n {
        v[rng.random_range(0..q)] += 1;
    }
    v
}

/// All color-count vectors with `q` entries and total at most `max`.
pub fn n_vecs_up_to(q: usize, max: u32) -> Vec<Vec<u32>> {
    (0..=max).flat_map(|n| compositions(n, q)).collect()
}

/// The canonical coloring with its positions shuffled.
pub fn shuffled_coloring<R: Rng + ?Sized>(n_vec: &[u32], rng: &mut R) -> Coloring {
    let mut colors = Coloring::canonical_blocks(n_vec).colors().to_vec();
    colors.shuffle(rng);
    Coloring::new(colors, n_vec.len()).expect("same colors")
}

fn show_vec(v: &[BigRational]) -> String {
    let items: Vec<String> = v.iter().map(format_rational).collect();
    format!("({})", items.join(","))
}

fn show_matrix(s: &DummyMatrix) -> String {
    let rows: Vec<String> = s.rows().iter().map(|r| show_vec(r)).collect();
    format!("[{}]", rows.join(","))
}

fn check_moments(t: &mut Tally, rng: &mut StreamRng) -> Result<()> {
    let max = t.bound(5);
    for _ in 0..60 {
        let k = rng.random_range(1..=3);
        let q = rng.random_range(1..=3);
        let n_vec = random_n_vec(q, max, rng);
        let s = random_matrix(k, q, rng);
        let alpha = random_alpha(k, rng);
        let p = MomentProblem::new(s, alpha, n_vec)?;
        let theorem = moment_via_theorem(&p, &t.opts.limits)?;
        let matrix = moment_via_matrix_sum(&p, &t.opts.limits)?;
        let recursion = moment_via_recursion(&p)?;
        let describe = || {
            format!(
                "n={:?} S={} alpha={}",
                p.n(),
                show_matrix(p.s()),
                show_vec(p.alpha().entries())
            )
        };
        t.equal(&theorem, &matrix, || format!("theorem vs matrix sum, {}", describe()));
        t.equal(&recursion, &matrix, || format!("recursion vs matrix sum, {}", describe()));
    }
    Ok(())
}

/// `Dir(1,1)`: `E[x_1^2] = 1/3` and `E[x_1 x_2] = 1/6`.
pub fn spot_value_problems() -> Vec<(MomentProblem, BigRational)> {
    let identity = DummyMatrix::new(vec![vec![int(1), int(0)], vec![int(0), int(1)]])
        .expect("2x2");
    let alpha = AlphaVector::new(vec![int(1), int(1)]).expect("positive");
    vec![
        (
            MomentProblem::new(identity.clone(), alpha.clone(), vec![2, 0]).expect("dims"),
            ratio(1, 3),
        ),
        (
            MomentProblem::new(identity, alpha, vec![1, 1]).expect("dims"),
            ratio(1, 6),
        ),
    ]
}

fn check_spot_values(t: &mut Tally) -> Result<()> {
    for (i, (p, exact)) in spot_value_problems().into_iter().enumerate() {
        let name = format!("Dir(1,1) moment n={:?}", p.n());
        t.equal(&moment_via_theorem(&p, &t.opts.limits)?, &exact, || name.clone() + " (theorem)");
        t.equal(&moment_via_matrix_sum(&p, &t.opts.limits)?, &exact, || {
            name.clone() + " (matrix sum)"
        });
        t.equal(&moment_via_recursion(&p)?, &exact, || name.clone() + " (recursion)");
        let mc = monte_carlo_moment(&p, t.opts.runs, t.opts.seed.wrapping_add(i as u64));
        let z = mc.z_score(to_f64(&exact));
        t.record(z <= 3.0, || {
            format!(
                "{name}: Monte Carlo {} (se {}) is {z:.2} standard errors from {}",
                mc.estimate,
                mc.std_error,
                format_rational(&exact)
            )
        });
    }
    Ok(())
}

fn check_orbit_counts(t: &mut Tally, rng: &mut StreamRng) -> Result<()> {
    let max = t.bound(7);
    for q in 1..=3 {
        for n_vec in n_vecs_up_to(q, max) {
            let c = shuffled_coloring(&n_vec, rng);
            let counts = orbit_counts_bruteforce(&n_vec, &c, &t.opts.limits)?;
            let all = enumerate_colored_partitions(&n_vec, &t.opts.limits)?;
            t.record(counts.len() == all.len(), || {
                format!(
                    "n={n_vec:?}: {} partitions realized, {} enumerated",
                    counts.len(),
                    all.len()
                )
            });
            for a in all {
                let observed = BigRational::from_integer(BigInt::from(
                    counts.get(&a).copied().unwrap_or(0),
                ));
                t.equal(&observed, &multinomial_coefficient(&a), || {
                    format!("fiber of {a} under coloring {:?}", c.colors())
                });
            }
        }
    }
    Ok(())
}

fn check_pattern_inventory(t: &mut Tally, rng: &mut StreamRng) -> Result<()> {
    let max = t.bound(6);
    for q in 1..=3 {
        for n_vec in n_vecs_up_to(q, max) {
            let c = shuffled_coloring(&n_vec, rng);
            for _ in 0..20 {
                let k = rng.random_range(1..=3);
                let s = random_matrix(k, q, rng);
                let alpha = random_alpha(k, rng);
                let brute = pattern_inventory_bruteforce(&n_vec, &c, &s, &alpha, &t.opts.limits)?;
                let z = refined_cycle_index(&n_vec, &s, &alpha, &t.opts.limits)?;
                t.equal(&brute, &z, || {
                    format!(
                        "n={n_vec:?} S={} alpha={}",
                        show_matrix(&s),
                        show_vec(alpha.entries())
                    )
                });
            }
        }
    }
    Ok(())
}

/// Two color laws per number of colors: uniform and a skewed one.
pub fn p_grid(q: usize) -> Vec<Vec<BigRational>> {
    match q {
        1 => vec![vec![int(1)]],
        2 => vec![vec![ratio(1, 2), ratio(1, 2)], vec![ratio(1, 3), ratio(2, 3)]],
        3 => vec![
            vec![ratio(1, 3), ratio(1, 3), ratio(1, 3)],
            vec![ratio(1, 6), ratio(1, 3), ratio(1, 2)],
        ],
        _ => {
            let uniform = vec![ratio(1, q as i64); q];
            let total = (q * (q + 1) / 2) as i64;
            let skewed = (1..=q as i64).map(|i| ratio(i, total)).collect();
            vec![uniform, skewed]
        }
    }
}

pub fn theta_grid() -> [BigRational; 3] {
    [ratio(1, 2), int(1), int(2)]
}

fn check_esf_normalization(t: &mut Tally) -> Result<()> {
    let max = t.bound(8);
    for q in 1..=3 {
        for p in p_grid(q) {
            for theta in theta_grid() {
                let params = EsfParams::new(theta.clone(), p.clone())?;
                for n in 0..=max {
                    let total = enumerate_all_colored_partitions(n, q, &t.opts.limits)?
                        .iter()
                        .map(|a| crate::esf::esf_mass(a, &params))
                        .try_fold(BigRational::zero(), |acc, m| m.map(|m| acc + m))?;
                    t.equal(&total, &BigRational::one(), || {
                        format!(
                            "total ESF mass, n={n} theta={} p={}",
                            format_rational(&theta),
                            show_vec(&p)
                        )
                    });
                }
            }
        }
    }
    Ok(())
}

fn check_conditional(t: &mut Tally, rng: &mut StreamRng) -> Result<()> {
    let max = t.bound(7);
    for q in 1..=3 {
        let p = random_simplex_point(q, rng);
        let theta = random_positive(rng);
        let params = EsfParams::new(theta.clone(), p.clone())?;
        let full: Vec<_> = (0..=max)
            .map(|n| esf_distribution(n, &params, &t.opts.limits))
            .collect::<Result<_>>()?;
        for n_vec in n_vecs_up_to(q, max) {
            let n: u32 = n_vec.iter().sum();
            let conditional = esf_conditional(&n_vec, &theta, &t.opts.limits)?;
            let c = shuffled_coloring(&n_vec, rng);
            let pushed = theta_biased_pushforward(&n_vec, &theta, &c, &t.opts.limits)?;
            let (event, restricted) = condition_on_colors(&full[n as usize], &n_vec)?;
            let expected_event = BigRational::from_integer(crate::rational::multinomial(&n_vec))
                * p.iter()
                    .zip(&n_vec)
                    .fold(BigRational::one(), |acc, (pj, &nj)| {
                        acc * crate::rational::pow(pj, nj)
                    });
            let describe = |what: &str| {
                format!(
                    "{what}, n={n_vec:?} theta={} p={}",
                    format_rational(&theta),
                    show_vec(&p)
                )
            };
            t.equal(&event, &expected_event, || describe("event mass"));
            for a in conditional.support() {
                let m = conditional.mass_of(a);
                t.equal(&pushed.mass_of(a), &m, || describe(&format!("pushforward at {a}")));
                t.equal(&restricted.mass_of(a), &m, || describe(&format!("restriction at {a}")));
            }
            t.record(
                pushed.len() == conditional.len() && restricted.len() == conditional.len(),
                || describe("supports differ"),
            );
        }
    }
    Ok(())
}

fn check_consistency(t: &mut Tally, rng: &mut StreamRng) -> Result<()> {
    let max = t.bound(8);
    for q in 1..=3 {
        let params = EsfParams::new(random_positive(rng), random_simplex_point(q, rng))?;
        let mut lower = esf_distribution(0, &params, &t.opts.limits)?;
        for n in 1..=max {
            let upper = esf_distribution(n, &params, &t.opts.limits)?;
            let projected = apply_deletion(&upper)?;
            for a in lower.support() {
                t.equal(&projected.mass_of(a), &lower.mass_of(a), || {
                    format!(
                        "deletion image at {a}, n={n} theta={} p={}",
                        format_rational(params.theta()),
                        show_vec(params.p())
                    )
                });
            }
            t.record(projected.len() <= lower.len(), || {
                format!("deletion image of level {n} leaves the level below")
            });
            lower = upper;
        }
    }
    // Cocycle: deleting n - l elements directly or through level m.
    let max = t.bound(6);
    for q in 1..=3 {
        for n in 0..=max {
            for a in enumerate_all_colored_partitions(n, q, &t.opts.limits)? {
                if rng.random_range(0..4) != 0 {
                    continue;
                }
                let l = rng.random_range(0..=n);
                let m = rng.random_range(l..=n);
                let direct = kernel_power(&a, l)?;
                let via = kernel_power_via(&a, m, l)?;
                for b in direct.support() {
                    t.equal(&via.mass_of(b), &direct.mass_of(b), || {
                        format!("cocycle S_{{{n},{l}}} via level {m} at A={a}, B={b}")
                    });
                }
            }
        }
    }
    Ok(())
}

fn check_hoppe(t: &mut Tally) -> Result<()> {
    let max = t.bound(5);
    let runs = t.opts.runs;
    let bound = if t.opts.inject_fault { 0.0 } else { 0.01 };
    let mut index = 0u64;
    for p in p_grid(2) {
        for theta in theta_grid() {
            let exact_params = EsfParams::new(theta.clone(), p.clone())?;
            let params = SamplerParams::from_exact(&exact_params)?;
            for size in 1..=max {
                let exact = exact_as_f64(&esf_distribution(size, &exact_params, &t.opts.limits)?);
                for sampler in [PartitionSampler::Hoppe, PartitionSampler::Crp] {
                    index += 1;
                    let seed = t.opts.seed.wrapping_add(index.wrapping_mul(0x9e37_79b9));
                    let counts = partition_histogram(sampler, size as usize, &params, runs, seed);
                    let tv = tv_distance(&counts, &exact);
                    t.instances += 1;
                    if tv >= bound && t.counterexample.is_none() {
                        t.counterexample = Some(format!(
                            "{sampler:?} T={size} theta={} p={}: TV {tv:.5} over {runs} runs (seed {seed})",
                            format_rational(&theta),
                            show_vec(&p)
                        ));
                    }
                }
            }
        }
    }
    Ok(())
}

fn check_necklaces(t: &mut Tally) -> Result<()> {
    let max = t.bound(6);
    for q in 1..=3 {
        for n_vec in n_vecs_up_to(q, max) {
            for a in enumerate_colored_partitions(&n_vec, &t.opts.limits)? {
                t.equal(
                    &multinomial_via_necklaces(&a, &t.opts.limits)?,
                    &multinomial_coefficient(&a),
                    || format!("necklace sum for {a}"),
                );
            }
            let sizes = all_fiber_sizes(&n_vec, &t.opts.limits)?;
            t.record(sizes.iter().all(|(_, s)| is_integer(s)), || {
                format!("non-integer necklace fiber for n={n_vec:?}")
            });
            let total = sizes
                .iter()
                .fold(BigRational::zero(), |acc, (_, s)| acc + s);
            let n: u32 = n_vec.iter().sum();
            t.equal(&total, &BigRational::from_integer(factorial(n)), || {
                format!("necklace fibers over n={n_vec:?}")
            });
        }
    }
    Ok(())
}

fn check_corollaries(t: &mut Tally, rng: &mut StreamRng) -> Result<()> {
    let limits = t.opts.limits;

    // Multi summed over a shape is M_2 of the shape.
    for q in 1..=3 {
        for n_vec in n_vecs_up_to(q, t.bound(7)) {
            let mut by_shape = BTreeMap::new();
            for a in enumerate_colored_partitions(&n_vec, &limits)? {
                *by_shape.entry(shape(&a)).or_insert_with(BigRational::zero) +=
                    multinomial_coefficient(&a);
            }
            let n: u32 = n_vec.iter().sum();
            for lambda in enumerate_integer_partitions(n) {
                let sum = by_shape.remove(&lambda).unwrap_or_else(BigRational::zero);
                t.equal(&sum, &m2(&lambda), || {
                    format!("Multi summed over shape {lambda}, n={n_vec:?}")
                });
            }
        }
    }

    // Refined cycle indices summed over |n_vec| = n.
    for n in 0..=t.bound(5) {
        for _ in 0..4 {
            let k = rng.random_range(1..=3);
            let q = rng.random_range(1..=3);
            let s = random_matrix(k, q, rng);
            let alpha = random_alpha(k, rng);
            let mut lhs = BigRational::zero();
            for n_vec in compositions(n, q) {
                lhs += refined_cycle_index(&n_vec, &s, &alpha, &limits)?;
            }
            let rhs = classical_cycle_index(n, &row_sum_power_sums(&s, &alpha, n))?;
            t.equal(&lhs, &rhs, || {
                format!(
                    "row sums, n={n} S={} alpha={}",
                    show_matrix(&s),
                    show_vec(alpha.entries())
                )
            });
        }
    }

    // Relabeling colors in n_vec and the columns of S together.
    for q in 1..=3 {
        for n_vec in n_vecs_up_to(q, t.bound(5)) {
            let k = rng.random_range(1..=3);
            let s = random_matrix(k, q, rng);
            let alpha = random_alpha(k, rng);
            let mut perm: Vec<usize> = (0..q).collect();
            perm.shuffle(rng);
            let permuted_n: Vec<u32> = perm.iter().map(|&j| n_vec[j]).collect();
            let lhs = refined_cycle_index(&permuted_n, &s.permute_columns(&perm), &alpha, &limits)?;
            let rhs = refined_cycle_index(&n_vec, &s, &alpha, &limits)?;
            t.equal(&lhs, &rhs, || {
                format!("color relabeling {perm:?}, n={n_vec:?} S={}", show_matrix(&s))
            });
        }
    }

    // Merging colors commutes with the ESF.
    let merges: Vec<(usize, Vec<Vec<usize>>)> = vec![
        (2, vec![vec![0, 1]]),
        (3, vec![vec![0, 1], vec![2]]),
        (3, vec![vec![0, 2], vec![1]]),
        (3, vec![vec![0], vec![1, 2]]),
        (3, vec![vec![0, 1, 2]]),
        (3, vec![vec![2], vec![0], vec![1]]),
    ];
    for (q, blocks) in merges {
        let map = DegeneracyMap::from_blocks(q, &blocks)?;
        let params = EsfParams::new(random_positive(rng), random_simplex_point(q, rng))?;
        let merged = params.aggregate(&map)?;
        for n in 0..=t.bound(6) {
            let pushed = pushforward_aggregate(&esf_distribution(n, &params, &limits)?, &map)?;
            let direct = esf_distribution(n, &merged, &limits)?;
            for a in direct.support() {
                t.equal(&pushed.mass_of(a), &direct.mass_of(a), || {
                    format!("merge {blocks:?} at {a}, n={n} p={}", show_vec(params.p()))
                });
            }
        }
    }

    // One color: the classical Ewens formula.
    for theta in theta_grid().into_iter().chain([random_positive(rng)]) {
        let params = EsfParams::monochrome(theta.clone())?;
        for n in 0..=t.bound(8) {
            let classical = classical_esf(n, &theta);
            let d = esf_distribution(n, &params, &limits)?;
            for (a, m) in d.iter() {
                t.equal(m, &classical[&shape(a)], || {
                    format!("one color, {a} theta={}", format_rational(&theta))
                });
            }
            // shape pushforward of a three-colored conditional law
            let n_vec = random_composition(3, n, rng);
            let shapes = shape_pushforward(&esf_conditional(&n_vec, &theta, &limits)?);
            for (lambda, m) in &shapes {
                t.equal(m, &classical[lambda], || {
                    format!("shape law at {lambda}, n={n_vec:?}")
                });
            }
        }
    }
    Ok(())
}

fn check_split(t: &mut Tally, rng: &mut StreamRng) {
    for _ in 0..200 {
        let k = rng.random_range(1..=4);
        let v = random_n_vec(k, 12, rng);
        let total: u32 = v.iter().sum();
        let m = rng.random_range(0..=total);
        t.record(multinomial_split_check(&v, m), || {
            format!("split identity v={v:?} m={m}")
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> VerifyOptions {
        VerifyOptions {
            n_max: Some(3),
            runs: 20_000,
            seed: 5,
            ..VerifyOptions::default()
        }
    }

    #[test]
    fn every_check_passes_at_small_scale() {
        let opts = small();
        for name in CHECKS {
            let mut opts = opts.clone();
            if *name == "hoppe" {
                // TV noise at 2e4 runs can exceed 0.01
                opts.n_max = Some(1);
                opts.runs = 200_000;
            }
            let report = run_check(name, &opts).unwrap();
            assert_eq!(report.status, Status::Pass, "{report:?}");
            assert!(report.instances > 0, "{name}");
        }
    }

    #[test]
    fn injected_faults_are_caught() {
        let opts = VerifyOptions {
            inject_fault: true,
            n_max: Some(2),
            runs: 2_000,
            ..small()
        };
        for name in CHECKS {
            let report = run_check(name, &opts).unwrap();
            assert_eq!(report.status, Status::Fail, "{name}");
            assert!(report.counterexample.is_some());
        }
    }

    #[test]
    fn unknown_check_is_an_error() {
        assert!(run_check("nope", &VerifyOptions::default()).is_err());
    }
}
