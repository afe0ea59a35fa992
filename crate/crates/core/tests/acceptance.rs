//! Acceptance suite. Prints one line per criterion and fails if any
//! criterion fails. Runs without the libtest harness so lines appear in
//! order.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use polyesf::cycle_index::{
    classical_cycle_index, refined_cycle_index, row_sum_power_sums, AlphaVector, DummyMatrix,
};
use polyesf::esf::{
    apply_deletion, classical_esf, condition_on_colors, esf_conditional, esf_distribution,
    esf_mass, kernel_power, kernel_power_via, pushforward_aggregate, shape_pushforward, EsfParams,
};
use polyesf::moments::{
    moment_via_matrix_sum, moment_via_recursion, moment_via_theorem, monte_carlo_moment,
    MomentProblem,
};
use polyesf::necklaces::{all_fiber_sizes, multinomial_via_necklaces};
use polyesf::partition::{
    compositions, enumerate_all_colored_partitions, enumerate_colored_partitions,
    enumerate_integer_partitions, m2, multinomial_coefficient, shape, ColorVector,
    ColoredPartition, DegeneracyMap,
};
use polyesf::rational::{factorial, int, is_integer, pochhammer, pow, ratio, to_f64};
use polyesf::samplers::{exact_as_f64, partition_histogram, tv_distance, PartitionSampler, SamplerParams};
use polyesf::{BigRational, Limits};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const MOMENT_INSTANCES: usize = 60;
const MOMENT_MAX_DEGREE: u32 = 5;
const MOMENT_BUDGET: Duration = Duration::from_secs(60);
const MC_SAMPLES: u64 = 1_000_000;
const MC_MAX_Z: f64 = 3.0;
const MC_BUDGET: Duration = Duration::from_secs(60);
const ORBIT_MAX_DEGREE: u32 = 7;
const ORBIT_BUDGET: Duration = Duration::from_secs(120);
const INVENTORY_MAX_DEGREE: u32 = 6;
const INVENTORY_POINTS: usize = 20;
const NORMALIZATION_MAX_N: u32 = 8;
const CONDITIONAL_MAX_DEGREE: u32 = 7;
const CONSISTENCY_MAX_N: u32 = 8;
const COCYCLE_MAX_N: u32 = 6;
const HOPPE_RUNS: u64 = 1_000_000;
const HOPPE_MAX_T: u32 = 5;
const HOPPE_MAX_TV: f64 = 0.01;
const HOPPE_BUDGET: Duration = Duration::from_secs(180);
const NECKLACE_MAX_DEGREE: u32 = 6;
const MULTI_SHAPE_MAX_N: u32 = 7;
const ROW_SUM_MAX_N: u32 = 5;
const SYMMETRY_MAX_DEGREE: u32 = 5;
const AGGREGATION_MAX_N: u32 = 6;
const MONOCHROME_MAX_N: u32 = 8;
const SPLIT_INSTANCES: usize = 200;
const SPLIT_MAX_SIZE: u32 = 12;
const MAX_COLORS: usize = 3;

struct Outcome {
    ok: bool,
    detail: String,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            ok: true,
            detail: String::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok && self.ok {
            self.ok = false;
            self.detail = what();
        }
    }
}

fn rng(criterion: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x5eed_0000 + criterion)
}

fn positive(rng: &mut ChaCha8Rng) -> BigRational {
    ratio(rng.random_range(1..=20), rng.random_range(1..=20))
}

fn nonnegative(rng: &mut ChaCha8Rng) -> BigRational {
    ratio(rng.random_range(0..=20), rng.random_range(1..=20))
}

fn matrix(k: usize, q: usize, rng: &mut ChaCha8Rng) -> DummyMatrix {
    DummyMatrix::new(
        (0..k)
            .map(|_| (0..q).map(|_| nonnegative(rng)).collect())
            .collect(),
    )
    .unwrap()
}

fn alpha(k: usize, rng: &mut ChaCha8Rng) -> AlphaVector {
    AlphaVector::new((0..k).map(|_| positive(rng)).collect()).unwrap()
}

fn simplex_point(q: usize, rng: &mut ChaCha8Rng) -> Vec<BigRational> {
    let w: Vec<BigRational> = (0..q).map(|_| positive(rng)).collect();
    let total = w.iter().fold(BigRational::zero(), |a, x| a + x);
    w.into_iter().map(|x| x / &total).collect()
}

fn n_vecs(q: usize, max: u32) -> Vec<Vec<u32>> {
    (0..=max).flat_map(|n| compositions(n, q)).collect()
}

fn all_n_vecs(max: u32) -> Vec<Vec<u32>> {
    (1..=MAX_COLORS).flat_map(|q| n_vecs(q, max)).collect()
}

/// Colors of `0..|n|` in a random order with the given counts.
fn random_coloring(n_vec: &[u32], rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut colors: Vec<usize> = n_vec
        .iter()
        .enumerate()
        .flat_map(|(j, &c)| std::iter::repeat_n(j, c as usize))
        .collect();
    colors.shuffle(rng);
    colors
}

/// Every permutation of `0..n` as an image vector (Heap's algorithm).
fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut a: Vec<usize> = (0..n).collect();
    let mut out = vec![a.clone()];
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            out.push(a.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

fn cycles(images: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; images.len()];
    let mut out = Vec::new();
    for start in 0..images.len() {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            cycle.push(x);
            x = images[x];
        }
        out.push(cycle);
    }
    out
}

/// Colored partition of per-cycle color counts.
fn colored_cycle_type(images: &[usize], colors: &[usize], q: usize) -> ColoredPartition {
    let mut a = ColoredPartition::empty(q);
    for cycle in cycles(images) {
        let mut counts = vec![0u32; q];
        for x in cycle {
            counts[colors[x]] += 1;
        }
        a.add(ColorVector::new(counts).unwrap(), 1);
    }
    a
}

fn criterion_1() -> Outcome {
    let mut out = Outcome::new();
    let mut rng = rng(1);
    let limits = Limits::default();
    let start = Instant::now();
    for _ in 0..MOMENT_INSTANCES {
        let k = rng.random_range(1..=3);
        let q = rng.random_range(1..=3);
        let total = rng.random_range(0..=MOMENT_MAX_DEGREE);
        let mut n = vec![0u32; q];
        for _ in 0..total {
            n[rng.random_range(0..q)] += 1;
        }
        let p = MomentProblem::new(matrix(k, q, &mut rng), alpha(k, &mut rng), n).unwrap();
        let a = moment_via_theorem(&p, &limits).unwrap();
        let b = moment_via_matrix_sum(&p, &limits).unwrap();
        let c = moment_via_recursion(&p).unwrap();
        out.check(a == b && b == c, || format!("{p:?}: {a} {b} {c}"));
    }
    let elapsed = start.elapsed();
    out.check(elapsed <= MOMENT_BUDGET, || format!("took {elapsed:?}"));
    out
}

fn criterion_2() -> Outcome {
    let mut out = Outcome::new();
    let limits = Limits::default();
    let id = DummyMatrix::new(vec![vec![int(1), int(0)], vec![int(0), int(1)]]).unwrap();
    let a = AlphaVector::new(vec![int(1), int(1)]).unwrap();
    let start = Instant::now();
    for (n, exact, seed) in [(vec![2, 0], ratio(1, 3), 21), (vec![1, 1], ratio(1, 6), 22)] {
        let p = MomentProblem::new(id.clone(), a.clone(), n.clone()).unwrap();
        for (name, v) in [
            ("theorem", moment_via_theorem(&p, &limits).unwrap()),
            ("matrix sum", moment_via_matrix_sum(&p, &limits).unwrap()),
            ("recursion", moment_via_recursion(&p).unwrap()),
        ] {
            out.check(v == exact, || format!("{name} at n={n:?}: {v}"));
        }
        let mc = monte_carlo_moment(&p, MC_SAMPLES, seed);
        let z = mc.z_score(to_f64(&exact));
        out.check(z <= MC_MAX_Z, || format!("Monte Carlo at n={n:?}: z = {z:.2}"));
    }
    let elapsed = start.elapsed();
    out.check(elapsed <= MC_BUDGET, || format!("took {elapsed:?}"));
    out
}

fn criterion_3() -> Outcome {
    let mut out = Outcome::new();
    let mut rng = rng(3);
    let limits = Limits::default();
    let start = Instant::now();
    let perms: Vec<Vec<Vec<usize>>> = (0..=ORBIT_MAX_DEGREE as usize).map(all_permutations).collect();
    for n_vec in all_n_vecs(ORBIT_MAX_DEGREE) {
        let q = n_vec.len();
        let colors = random_coloring(&n_vec, &mut rng);
        let mut fibers: BTreeMap<ColoredPartition, u64> = BTreeMap::new();
        for images in &perms[colors.len()] {
            *fibers.entry(colored_cycle_type(images, &colors, q)).or_insert(0) += 1;
        }
        let all = enumerate_colored_partitions(&n_vec, &limits).unwrap();
        out.check(all.len() == fibers.len(), || format!("support size at {n_vec:?}"));
        for a in all {
            let observed = BigRational::from_integer(BigInt::from(fibers.get(&a).copied().unwrap_or(0)));
            let multi = multinomial_coefficient(&a);
            out.check(observed == multi, || format!("{a}: {observed} != {multi}"));
        }
    }
    let elapsed = start.elapsed();
    out.check(elapsed <= ORBIT_BUDGET, || format!("took {elapsed:?}"));
    out
}

fn criterion_4() -> Outcome {
    let mut out = Outcome::new();
    let mut rng = rng(4);
    let limits = Limits::default();
    let perms: Vec<Vec<Vec<usize>>> = (0..=INVENTORY_MAX_DEGREE as usize).map(all_permutations).collect();
    for n_vec in all_n_vecs(INVENTORY_MAX_DEGREE) {
        let q = n_vec.len();
        let colors = random_coloring(&n_vec, &mut rng);
        let cycle_lists: Vec<Vec<Vec<usize>>> = perms[colors.len()].iter().map(|p| cycles(p)).collect();
        let n_fact = BigRational::from_integer(n_vec.iter().map(|&c| factorial(c)).product());
        for _ in 0..INVENTORY_POINTS {
            let k = rng.random_range(1..=3);
            let s = matrix(k, q, &mut rng);
            let al = alpha(k, &mut rng);
            // weight of a cycle: sum_i alpha_i prod_{x in cycle} S[i][color(x)]
            let mut cache: BTreeMap<Vec<usize>, BigRational> = BTreeMap::new();
            let mut total = BigRational::zero();
            for cs in &cycle_lists {
                let mut term = BigRational::one();
                for cycle in cs {
                    let mut word: Vec<usize> = cycle.iter().map(|&x| colors[x]).collect();
                    word.sort_unstable();
                    let w = cache.entry(word.clone()).or_insert_with(|| {
                        (0..k).fold(BigRational::zero(), |acc, i| {
                            acc + &al.entries()[i]
                                * word.iter().fold(BigRational::one(), |m, &c| m * s.get(i, c))
                        })
                    });
                    term *= &*w;
                }
                total += term;
            }
            let brute = total / &n_fact;
            let z = refined_cycle_index(&n_vec, &s, &al, &limits).unwrap();
            out.check(brute == z, || format!("n={n_vec:?}: {brute} != {z}"));
        }
    }
    out
}

fn theta_grid() -> Vec<BigRational> {
    vec![ratio(1, 2), int(1), int(2)]
}

fn p_grid(q: usize) -> Vec<Vec<BigRational>> {
    match q {
        1 => vec![vec![int(1)]],
        2 => vec![vec![ratio(1, 2), ratio(1, 2)], vec![ratio(1, 3), ratio(2, 3)]],
        _ => vec![
            vec![ratio(1, 3), ratio(1, 3), ratio(1, 3)],
            vec![ratio(1, 6), ratio(1, 3), ratio(1, 2)],
        ],
    }
}

fn criterion_5() -> Outcome {
    let mut out = Outcome::new();
    let limits = Limits::default();
    for q in 1..=MAX_COLORS {
        for p in p_grid(q) {
            for theta in theta_grid() {
                let params = EsfParams::new(theta.clone(), p.clone()).unwrap();
                for n in 0..=NORMALIZATION_MAX_N {
                    let total = enumerate_all_colored_partitions(n, q, &limits)
                        .unwrap()
                        .iter()
                        .fold(BigRational::zero(), |acc, a| acc + esf_mass(a, &params).unwrap());
                    out.check(total.is_one(), || format!("n={n} theta={theta} p={p:?}: {total}"));
                }
            }
        }
    }
    out
}

fn criterion_6() -> Outcome {
    let mut out = Outcome::new();
    let mut rng = rng(6);
    let limits = Limits::default();
    let perms: Vec<Vec<Vec<usize>>> = (0..=CONDITIONAL_MAX_DEGREE as usize).map(all_permutations).collect();
    for q in 1..=MAX_COLORS {
        let theta = positive(&mut rng);
        let params = EsfParams::new(theta.clone(), simplex_point(q, &mut rng)).unwrap();
        let levels: Vec<_> = (0..=CONDITIONAL_MAX_DEGREE)
            .map(|n| esf_distribution(n, &params, &limits).unwrap())
            .collect();
        for n_vec in n_vecs(q, CONDITIONAL_MAX_DEGREE) {
            let n: u32 = n_vec.iter().sum();
            let colors = random_coloring(&n_vec, &mut rng);
            // theta-biased permutation law pushed through the coloring map
            let mut weights: BTreeMap<ColoredPartition, BigRational> = BTreeMap::new();
            for images in &perms[n as usize] {
                let r = cycles(images).len() as u32;
                *weights
                    .entry(colored_cycle_type(images, &colors, q))
                    .or_insert_with(BigRational::zero) += pow(&theta, r);
            }
            let norm = pochhammer(&theta, n);
            let conditional = esf_conditional(&n_vec, &theta, &limits).unwrap();
            let (_, restricted) = condition_on_colors(&levels[n as usize], &n_vec).unwrap();
            out.check(conditional.len() == weights.len(), || format!("support at {n_vec:?}"));
            out.check(restricted == conditional, || format!("restriction at {n_vec:?}"));
            for (a, w) in &weights {
                let m = w / &norm;
                out.check(m == conditional.mass_of(a), || {
                    format!("{a} at theta={theta}: {m} != {}", conditional.mass_of(a))
                });
            }
        }
    }
    out
}

fn criterion_7() -> Outcome {
    let mut out = Outcome::new();
    let mut rng = rng(7);
    let limits = Limits::default();
    for q in 1..=MAX_COLORS {
        let params = EsfParams::new(positive(&mut rng), simplex_point(q, &mut rng)).unwrap();
        for n in 1..=CONSISTENCY_MAX_N {
            let upper = esf_distribution(n, &params, &limits).unwrap();
            let lower = esf_distribution(n - 1, &params, &limits).unwrap();
            out.check(apply_deletion(&upper).unwrap().same_law(&lower), || {
                format!("q={q} n={n} {params:?}")
            });
        }
    }
    for q in 1..=MAX_COLORS {
        for n in 0..=COCYCLE_MAX_N {
            for a in enumerate_all_colored_partitions(n, q, &limits).unwrap() {
                let l = rng.random_range(0..=n);
                let m = rng.random_range(l..=n);
                let direct = kernel_power(&a, l).unwrap();
                let via = kernel_power_via(&a, m, l).unwrap();
                out.check(direct == via, || format!("{a} through {m} to {l}"));
            }
        }
    }
    out
}

fn criterion_8() -> Outcome {
    let mut out = Outcome::new();
    let limits = Limits::default();
    let start = Instant::now();
    let mut seed = 800u64;
    let mut worst = 0f64;
    for p in p_grid(2) {
        for theta in theta_grid() {
            let exact_params = EsfParams::new(theta.clone(), p.clone()).unwrap();
            let params = SamplerParams::from_exact(&exact_params).unwrap();
            for t in 1..=HOPPE_MAX_T {
                let exact = exact_as_f64(&esf_distribution(t, &exact_params, &limits).unwrap());
                for sampler in [PartitionSampler::Hoppe, PartitionSampler::Crp] {
                    seed += 1;
                    let counts = partition_histogram(sampler, t as usize, &params, HOPPE_RUNS, seed);
                    let tv = tv_distance(&counts, &exact);
                    worst = worst.max(tv);
                    out.check(tv < HOPPE_MAX_TV, || {
                        format!("{sampler:?} T={t} theta={theta} p={p:?}: TV {tv:.5}")
                    });
                }
            }
        }
    }
    let elapsed = start.elapsed();
    out.check(elapsed <= HOPPE_BUDGET, || format!("took {elapsed:?}"));
    if out.ok {
        out.detail = format!("max TV {worst:.5}");
    }
    out
}

fn criterion_9() -> Outcome {
    let mut out = Outcome::new();
    let limits = Limits::default();
    for n_vec in all_n_vecs(NECKLACE_MAX_DEGREE) {
        for a in enumerate_colored_partitions(&n_vec, &limits).unwrap() {
            let via = multinomial_via_necklaces(&a, &limits).unwrap();
            let multi = multinomial_coefficient(&a);
            out.check(via == multi, || format!("{a}: {via} != {multi}"));
        }
        let fibers = all_fiber_sizes(&n_vec, &limits).unwrap();
        out.check(fibers.iter().all(|(_, s)| is_integer(s)), || format!("non-integer fiber at {n_vec:?}"));
        let total = fibers.iter().fold(BigRational::zero(), |acc, (_, s)| acc + s);
        let n: u32 = n_vec.iter().sum();
        out.check(total == BigRational::from_integer(factorial(n)), || {
            format!("fibers at {n_vec:?} sum to {total}")
        });
    }
    out
}

fn criterion_10() -> Outcome {
    let mut out = Outcome::new();
    let mut rng = rng(10);
    let limits = Limits::default();

    for n_vec in all_n_vecs(MULTI_SHAPE_MAX_N) {
        let mut by_shape = BTreeMap::new();
        for a in enumerate_colored_partitions(&n_vec, &limits).unwrap() {
            *by_shape.entry(shape(&a)).or_insert_with(BigRational::zero) += multinomial_coefficient(&a);
        }
        let n: u32 = n_vec.iter().sum();
        for lambda in enumerate_integer_partitions(n) {
            let sum = by_shape.get(&lambda).cloned().unwrap_or_else(BigRational::zero);
            out.check(sum == m2(&lambda), || format!("shape {lambda} at {n_vec:?}"));
        }
    }

    for n in 0..=ROW_SUM_MAX_N {
        for q in 1..=MAX_COLORS {
            let k = rng.random_range(1..=3);
            let s = matrix(k, q, &mut rng);
            let al = alpha(k, &mut rng);
            let lhs = compositions(n, q)
                .iter()
                .fold(BigRational::zero(), |acc, nv| acc + refined_cycle_index(nv, &s, &al, &limits).unwrap());
            let rhs = classical_cycle_index(n, &row_sum_power_sums(&s, &al, n)).unwrap();
            out.check(lhs == rhs, || format!("row sums n={n} q={q}: {lhs} != {rhs}"));
        }
    }

    for n_vec in all_n_vecs(SYMMETRY_MAX_DEGREE) {
        let q = n_vec.len();
        let k = rng.random_range(1..=3);
        let s = matrix(k, q, &mut rng);
        let al = alpha(k, &mut rng);
        let mut perm: Vec<usize> = (0..q).collect();
        perm.shuffle(&mut rng);
        let permuted: Vec<u32> = perm.iter().map(|&j| n_vec[j]).collect();
        let lhs = refined_cycle_index(&permuted, &s.permute_columns(&perm), &al, &limits).unwrap();
        let rhs = refined_cycle_index(&n_vec, &s, &al, &limits).unwrap();
        out.check(lhs == rhs, || format!("relabeling {perm:?} at {n_vec:?}"));
    }

    let merges: [(usize, Vec<Vec<usize>>); 5] = [
        (2, vec![vec![0, 1]]),
        (3, vec![vec![0, 1], vec![2]]),
        (3, vec![vec![0, 2], vec![1]]),
        (3, vec![vec![0], vec![1, 2]]),
        (3, vec![vec![0, 1, 2]]),
    ];
    for (q, blocks) in merges {
        let map = DegeneracyMap::from_blocks(q, &blocks).unwrap();
        let params = EsfParams::new(positive(&mut rng), simplex_point(q, &mut rng)).unwrap();
        let merged = params.aggregate(&map).unwrap();
        for n in 0..=AGGREGATION_MAX_N {
            let pushed = pushforward_aggregate(&esf_distribution(n, &params, &limits).unwrap(), &map).unwrap();
            let direct = esf_distribution(n, &merged, &limits).unwrap();
            out.check(pushed.same_law(&direct), || format!("merge {blocks:?} n={n}"));
        }
    }

    for theta in theta_grid().into_iter().chain([positive(&mut rng)]) {
        let params = EsfParams::monochrome(theta.clone()).unwrap();
        for n in 0..=MONOCHROME_MAX_N {
            let classical = classical_esf(n, &theta);
            for (a, m) in esf_distribution(n, &params, &limits).unwrap().iter() {
                out.check(*m == classical[&shape(a)], || format!("one color {a} theta={theta}"));
            }
            let mut n_vec = vec![0u32; 3];
            for _ in 0..n {
                n_vec[rng.random_range(0..3)] += 1;
            }
            let shapes = shape_pushforward(&esf_conditional(&n_vec, &theta, &limits).unwrap());
            out.check(shapes == classical, || format!("shape law at {n_vec:?} theta={theta}"));
        }
    }
    out
}

fn criterion_11() -> Outcome {
    let mut out = Outcome::new();
    let mut rng = rng(11);
    for _ in 0..SPLIT_INSTANCES {
        let k = rng.random_range(1..=4);
        let total = rng.random_range(0..=SPLIT_MAX_SIZE);
        let mut v = vec![0u32; k];
        for _ in 0..total {
            v[rng.random_range(0..k)] += 1;
        }
        let m = rng.random_range(0..=total);
        // independent evaluation of both sides
        let multi = |w: &[u32]| -> BigInt {
            factorial(w.iter().sum()) / w.iter().map(|&x| factorial(x)).product::<BigInt>()
        };
        let mut rhs = BigInt::zero();
        let mut w = vec![0u32; k];
        loop {
            if w.iter().sum::<u32>() == m {
                let rest: Vec<u32> = v.iter().zip(&w).map(|(a, b)| a - b).collect();
                rhs += multi(&w) * multi(&rest);
            }
            // odometer over w <= v
            let mut i = 0;
            while i < k && w[i] == v[i] {
                w[i] = 0;
                i += 1;
            }
            if i == k {
                break;
            }
            w[i] += 1;
        }
        let lhs = multi(&v);
        out.check(lhs == rhs, || format!("v={v:?} m={m}"));
        out.check(polyesf::moments::multinomial_split_check(&v, m), || {
            format!("library check rejects v={v:?} m={m}")
        });
    }
    out
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 11] = [
        ("three-way moment agreement", criterion_1),
        ("Dir(1,1) spot values, exact and Monte Carlo", criterion_2),
        ("orbit counts equal multinomial coefficients", criterion_3),
        ("pattern inventory equals refined cycle index", criterion_4),
        ("ESF normalization", criterion_5),
        ("theta-biased pushforward, conditional and restriction agree", criterion_6),
        ("consistency and cocycle", criterion_7),
        ("Hoppe and CRP marginals within TV 0.01", criterion_8),
        ("necklace identities", criterion_9),
        ("corollaries", criterion_10),
        ("multinomial splitting identity", criterion_11),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let status = if outcome.ok { "PASS" } else { "FAIL" };
        if !outcome.ok {
            failed += 1;
        }
        let detail = if outcome.detail.is_empty() {
            String::new()
        } else {
            format!(" ({})", outcome.detail)
        };
        println!(
            "criterion {:>2}: {status} {name} [{:.1}s]{detail}",
            i + 1,
            start.elapsed().as_secs_f64()
        );
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
