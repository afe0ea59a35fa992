//! The polychromatic Ewens sampling formula.
//!
//! For `theta > 0` and a color distribution `p` on `q` colors,
//!
//! ```text
//! Esf(A) = n!/(theta)_n · theta^|A| · p^col(A) / col(A)! · Multi(A)
//! ```
//!
//! is a probability on the q-colored partitions of size `n`. It describes a
//! theta-biased random permutation whose elements are colored independently
//! with law `p`, keeping per-cycle color counts.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::cycle_index::{fold_permutations, project_pi, Coloring, Permutation};
use crate::partition::{
    aggregate, enumerate_all_colored_partitions, enumerate_colored_partitions,
    enumerate_integer_partitions, m2, multinomial_coefficient, shape, ColorVector,
    ColoredPartition, DegeneracyMap, IntegerPartition,
};
use crate::rational::{factorial, format_rational, pochhammer, pow, vec_factorial};
use crate::{Error, Limits, Result};

/// `theta > 0` and `p` in the probability simplex, both exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EsfParams {
    theta: BigRational,
    p: Vec<BigRational>,
}

impl EsfParams {
    pub fn new(theta: BigRational, p: Vec<BigRational>) -> Result<Self> {
        if theta <= BigRational::zero() {
            return Err(Error::InvalidInput("theta must be positive".into()));
        }
        if p.is_empty() {
            return Err(Error::InvalidInput("p needs at least one color".into()));
        }
        if p.iter().any(|x| *x < BigRational::zero()) {
            return Err(Error::InvalidInput("p entries must be nonnegative".into()));
        }
        let total = p.iter().fold(BigRational::zero(), |acc, x| acc + x);
        if !total.is_one() {
            return Err(Error::InvalidInput(format!(
                "p must sum to 1, sums to {total}"
            )));
        }
        Ok(EsfParams { theta, p })
    }

    /// One color with `p = (1)`: the classical Ewens distribution.
    pub fn monochrome(theta: BigRational) -> Result<Self> {
        Self::new(theta, vec![BigRational::one()])
    }

    pub fn theta(&self) -> &BigRational {
        &self.theta
    }

    pub fn p(&self) -> &[BigRational] {
        &self.p
    }

    pub fn q(&self) -> usize {
        self.p.len()
    }

    /// Parameters after merging colors: `p ↦ S_L p`.
    pub fn aggregate(&self, d: &DegeneracyMap) -> Result<EsfParams> {
        if d.source_colors() != self.q() {
            return Err(Error::DimensionMismatch(format!(
                "degeneracy map acts on {} colors, p has {}",
                d.source_colors(),
                self.q()
            )));
        }
        EsfParams::new(self.theta.clone(), d.apply(&self.p))
    }
}

/// A finitely supported exact probability distribution over colored
/// partitions. The support is sorted and duplicate free.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactDistribution {
    support: Vec<ColoredPartition>,
    mass: Vec<BigRational>,
}

#[derive(Serialize)]
pub struct AtomJson<'a> {
    pub partition: &'a ColoredPartition,
    pub mass: String,
}

impl ExactDistribution {
    /// Builds a distribution, checking that masses are nonnegative and sum
    /// to one exactly.
    pub fn from_map(masses: BTreeMap<ColoredPartition, BigRational>) -> Result<Self> {
        let d = Self::from_map_unchecked(masses);
        if d.mass.iter().any(|m| *m < BigRational::zero()) {
            return Err(Error::InvalidInput("negative probability mass".into()));
        }
        let total = d.total();
        if !total.is_one() {
            return Err(Error::InvalidInput(format!(
                "masses sum to {total}, not 1"
            )));
        }
        Ok(d)
    }

    /// Builds a distribution without validating the total. Used where the
    /// total is itself under test.
    pub fn from_map_unchecked(masses: BTreeMap<ColoredPartition, BigRational>) -> Self {
        let (support, mass) = masses.into_iter().unzip();
        ExactDistribution { support, mass }
    }

    pub fn point_mass(a: ColoredPartition) -> Self {
        ExactDistribution {
            support: vec![a],
            mass: vec![BigRational::one()],
        }
    }

    pub fn support(&self) -> &[ColoredPartition] {
        &self.support
    }

    pub fn masses(&self) -> &[BigRational] {
        &self.mass
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ColoredPartition, &BigRational)> {
        self.support.iter().zip(&self.mass)
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    /// Mass of `a` (zero outside the support).
    pub fn mass_of(&self, a: &ColoredPartition) -> BigRational {
        match self.support.binary_search(a) {
            Ok(i) => self.mass[i].clone(),
            Err(_) => BigRational::zero(),
        }
    }

    pub fn total(&self) -> BigRational {
        self.mass.iter().fold(BigRational::zero(), |acc, m| acc + m)
    }

    /// Equality as measures: atoms of mass zero are ignored.
    pub fn same_law(&self, other: &ExactDistribution) -> bool {
        let positive = |d: &ExactDistribution| -> Vec<(ColoredPartition, BigRational)> {
            d.iter()
                .filter(|(_, m)| !m.is_zero())
                .map(|(a, m)| (a.clone(), m.clone()))
                .collect()
        };
        positive(self) == positive(other)
    }

    /// Returns a copy with `delta` added to the mass of the `index`-th atom.
    /// For negative controls in tests and in `verify --inject-fault`.
    pub fn perturbed(&self, index: usize, delta: &BigRational) -> ExactDistribution {
        let mut out = self.clone();
        out.mass[index] += delta;
        out
    }

    pub fn to_json(&self) -> Vec<AtomJson<'_>> {
        self.iter()
            .map(|(partition, m)| AtomJson {
                partition,
                mass: format_rational(m),
            })
            .collect()
    }
}

/// Exact polychromatic ESF mass of `A` (of size `n = |col(A)|`).
pub fn esf_mass(a: &ColoredPartition, params: &EsfParams) -> Result<BigRational> {
    if a.q() != params.q() {
        return Err(Error::DimensionMismatch(format!(
            "partition has {} colors, p has {}",
            a.q(),
            params.q()
        )));
    }
    let col = a.col();
    let n: u32 = col.iter().sum();
    let mut mass = BigRational::from_integer(factorial(n)) / pochhammer(&params.theta, n);
    mass *= pow(&params.theta, a.size());
    for (pj, &cj) in params.p.iter().zip(&col) {
        mass *= pow(pj, cj);
    }
    mass /= BigRational::from_integer(vec_factorial(&col));
    Ok(mass * multinomial_coefficient(a))
}

/// The full polychromatic ESF on q-colored partitions of size `n`. Atoms of
/// mass zero (colors with `p_j = 0`) are kept so the support is all of the
/// partition family.
pub fn esf_distribution(n: u32, params: &EsfParams, limits: &Limits) -> Result<ExactDistribution> {
    let mut masses = BTreeMap::new();
    for a in enumerate_all_colored_partitions(n, params.q(), limits)? {
        let m = esf_mass(&a, params)?;
        masses.insert(a, m);
    }
    ExactDistribution::from_map(masses)
}

/// The ESF conditioned on `col(A) = n_vec`:
/// `theta^|A| / (theta)_{|n|} · Multi(A)`. It does not depend on `p`.
pub fn esf_conditional(
    n_vec: &[u32],
    theta: &BigRational,
    limits: &Limits,
) -> Result<ExactDistribution> {
    if *theta <= BigRational::zero() {
        return Err(Error::InvalidInput("theta must be positive".into()));
    }
    let n: u32 = n_vec.iter().sum();
    let norm = pochhammer(theta, n);
    let mut masses = BTreeMap::new();
    for a in enumerate_colored_partitions(n_vec, limits)? {
        let m = pow(theta, a.size()) * multinomial_coefficient(&a) / &norm;
        masses.insert(a, m);
    }
    ExactDistribution::from_map(masses)
}

/// Restricts `d` to `{A : col(A) = n_vec}` and renormalizes. Returns the
/// event's probability alongside the conditional law.
pub fn condition_on_colors(
    d: &ExactDistribution,
    n_vec: &[u32],
) -> Result<(BigRational, ExactDistribution)> {
    let restricted: BTreeMap<ColoredPartition, BigRational> = d
        .iter()
        .filter(|(a, _)| a.col() == n_vec)
        .map(|(a, m)| (a.clone(), m.clone()))
        .collect();
    let event = restricted
        .values()
        .fold(BigRational::zero(), |acc, m| acc + m);
    if event.is_zero() {
        return Err(Error::InvalidInput(format!(
            "the event col(A) = {n_vec:?} has probability zero"
        )));
    }
    let conditional = restricted
        .into_iter()
        .map(|(a, m)| (a, m / &event))
        .collect();
    Ok((event, ExactDistribution::from_map(conditional)?))
}

/// Law of the coloring map under a theta-biased permutation, by walking all
/// of `S_|n|`: each permutation gets weight `theta^(cycles)`, normalized by
/// the enumerated total (which must equal `(theta)_{|n|}`).
pub fn theta_biased_pushforward(
    n_vec: &[u32],
    theta: &BigRational,
    c: &Coloring,
    limits: &Limits,
) -> Result<ExactDistribution> {
    if c.n_vec() != n_vec {
        return Err(Error::DimensionMismatch(format!(
            "coloring has color counts {:?}, expected {n_vec:?}",
            c.n_vec()
        )));
    }
    if *theta <= BigRational::zero() {
        return Err(Error::InvalidInput("theta must be positive".into()));
    }
    let n = c.degree();
    limits.check_degree(n)?;
    let theta_powers: Vec<BigRational> = (0..=n as u32).map(|r| pow(theta, r)).collect();
    // Bucket by (partition) and count permutations per cycle number; weights
    // are applied once per bucket.
    let buckets = fold_permutations(
        n,
        BTreeMap::new,
        |acc: &mut BTreeMap<ColoredPartition, u64>, images| {
            let pi = Permutation::new(images.to_vec()).expect("valid permutation");
            let a = project_pi(&pi, c).expect("degrees match");
            *acc.entry(a).or_insert(0) += 1;
        },
        |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        },
    );
    let mut weights = BTreeMap::new();
    let mut total = BigRational::zero();
    for (a, count) in buckets {
        // every permutation in the fiber of A has |A| cycles
        let w = &theta_powers[a.size() as usize] * BigRational::from_integer(BigInt::from(count));
        total += &w;
        weights.insert(a, w);
    }
    let expected = pochhammer(theta, n as u32);
    if total != expected {
        return Err(Error::InvalidInput(format!(
            "theta-biased weights total {total}, expected (theta)_n = {expected}"
        )));
    }
    let masses = weights.into_iter().map(|(a, w)| (a, w / &total)).collect();
    ExactDistribution::from_map(masses)
}

/// Sums masses over partitions with equal shape.
pub fn shape_pushforward(d: &ExactDistribution) -> BTreeMap<IntegerPartition, BigRational> {
    let mut out: BTreeMap<IntegerPartition, BigRational> = BTreeMap::new();
    for (a, m) in d.iter() {
        *out.entry(shape(a)).or_insert_with(BigRational::zero) += m;
    }
    out
}

/// Classical Ewens mass `n!/(theta)_n prod_i theta^lambda_i / (i^lambda_i lambda_i!)`.
pub fn classical_esf_mass(lambda: &IntegerPartition, theta: &BigRational) -> BigRational {
    m2(lambda) * pow(theta, lambda.len()) / pochhammer(theta, lambda.n())
}

/// The classical Ewens distribution on integer partitions of `n`.
pub fn classical_esf(n: u32, theta: &BigRational) -> BTreeMap<IntegerPartition, BigRational> {
    enumerate_integer_partitions(n)
        .into_iter()
        .map(|lambda| {
            let m = classical_esf_mass(&lambda, theta);
            (lambda, m)
        })
        .collect()
}

/// Pushes a distribution forward through the color-merging map.
pub fn pushforward_aggregate(
    d: &ExactDistribution,
    map: &DegeneracyMap,
) -> Result<ExactDistribution> {
    let mut out: BTreeMap<ColoredPartition, BigRational> = BTreeMap::new();
    for (a, m) in d.iter() {
        *out.entry(aggregate(a, map)?)
            .or_insert_with(BigRational::zero) += m;
    }
    ExactDistribution::from_map(out)
}

/// `Esf^n_{theta,p}` pushed through `S_L`, checked against
/// `Esf^n_{theta, S_L p}` computed directly.
pub fn aggregation_pushforward(
    n: u32,
    params: &EsfParams,
    map: &DegeneracyMap,
    limits: &Limits,
) -> Result<ExactDistribution> {
    let pushed = pushforward_aggregate(&esf_distribution(n, params, limits)?, map)?;
    let direct = esf_distribution(n, &params.aggregate(map)?, limits)?;
    if !pushed.same_law(&direct) {
        return Err(Error::InvalidInput(
            "aggregated ESF differs from the ESF with merged colors".into(),
        ));
    }
    Ok(pushed)
}

/// `A` with one element of color `j` removed from the part `a`.
fn delete_from(a: &ColoredPartition, part: &ColorVector, color: usize) -> ColoredPartition {
    let mut b = a.clone();
    b.remove_one(part);
    if let Some(smaller) = part.remove_color(color) {
        b.add(smaller, 1);
    }
    b
}

/// One row of the deletion kernel: from `A` of size `n`, remove one element
/// uniformly at random. The move hitting color `j` in a part `a` has mass
/// `a_j A(a) / n`; moves landing on the same partition add up.
pub fn deletion_kernel(a: &ColoredPartition) -> Result<ExactDistribution> {
    let n = a.degree();
    if n == 0 {
        return Err(Error::InvalidInput(
            "cannot delete from the empty partition".into(),
        ));
    }
    let n = BigRational::from_integer(BigInt::from(n));
    let mut out: BTreeMap<ColoredPartition, BigRational> = BTreeMap::new();
    for (part, mult) in a.parts() {
        for (color, &count) in part.counts().iter().enumerate() {
            if count == 0 {
                continue;
            }
            let w = BigRational::from_integer(BigInt::from(count * mult)) / &n;
            *out.entry(delete_from(a, part, color))
                .or_insert_with(BigRational::zero) += w;
        }
    }
    ExactDistribution::from_map(out)
}

/// Applies the one-step deletion kernel to a whole distribution.
pub fn apply_deletion(d: &ExactDistribution) -> Result<ExactDistribution> {
    let mut out: BTreeMap<ColoredPartition, BigRational> = BTreeMap::new();
    for (a, m) in d.iter() {
        if m.is_zero() {
            continue;
        }
        for (b, w) in deletion_kernel(a)?.iter() {
            *out.entry(b.clone()).or_insert_with(BigRational::zero) += m * w;
        }
    }
    ExactDistribution::from_map(out)
}

/// `S_{n,m}(A, ·)`: the law after deleting `n - m` uniformly chosen
/// elements one at a time.
pub fn kernel_power(a: &ColoredPartition, m: u32) -> Result<ExactDistribution> {
    let n = a.degree();
    if m > n {
        return Err(Error::InvalidInput(format!(
            "cannot reduce a partition of size {n} to size {m}"
        )));
    }
    let mut d = ExactDistribution::point_mass(a.clone());
    for _ in m..n {
        d = apply_deletion(&d)?;
    }
    Ok(d)
}

/// Composes kernels through an intermediate level:
/// `sum_B S_{n,m}(A, B) S_{m,l}(B, ·)`.
pub fn kernel_power_via(a: &ColoredPartition, m: u32, l: u32) -> Result<ExactDistribution> {
    if l > m {
        return Err(Error::InvalidInput(format!("need l <= m, got {l} > {m}")));
    }
    let mut out: BTreeMap<ColoredPartition, BigRational> = BTreeMap::new();
    for (b, w) in kernel_power(a, m)?.iter() {
        for (c, v) in kernel_power(b, l)?.iter() {
            *out.entry(c.clone()).or_insert_with(BigRational::zero) += w * v;
        }
    }
    ExactDistribution::from_map(out)
}

/// True when `lower` is the one-step deletion image of `upper`.
pub fn check_consistency(upper: &ExactDistribution, lower: &ExactDistribution) -> Result<bool> {
    let upper_total = upper.total();
    if !upper_total.is_one() {
        return Ok(false);
    }
    Ok(apply_deletion(upper)?.same_law(lower))
}

/// Verifies that deleting one element from `Esf^n` yields `Esf^{n-1}`.
pub fn verify_consistency(n: u32, params: &EsfParams, limits: &Limits) -> Result<bool> {
    if n == 0 {
        return Err(Error::InvalidInput("consistency needs n >= 1".into()));
    }
    let upper = esf_distribution(n, params, limits)?;
    let lower = esf_distribution(n - 1, params, limits)?;
    check_consistency(&upper, &lower)
}
