//! Permutations, colorings and the refined cycle index.
//!
//! A permutation of `[n]` together with a coloring of `[n]` by `q` colors
//! determines a colored partition: one part per cycle, recording how many
//! elements of each color the cycle contains. The refined cycle index
//! `Z_n` sums the monomials of those colored partitions weighted by their
//! multinomial coefficients. Everything here is evaluated numerically at
//! rational points; there is no symbolic polynomial type.
//!
//! The `*_bruteforce` functions walk the whole symmetric group and serve as
//! independent oracles for the closed forms.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::partition::{
    enumerate_colored_partitions, enumerate_integer_partitions, m2, multinomial_coefficient,
    ColorVector, ColoredPartition, IntegerPartition,
};
use crate::rational::{pow, vec_factorial};
use crate::{Error, Limits, Result};

/// A permutation of `{0, .., n-1}` in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::InvalidInput(format!(
                    "{images:?} is not a permutation of 0..{n}"
                )));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// Builds a permutation from disjoint cycles over `0..n`; elements not
    /// mentioned are fixed points.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if x >= n || touched[x] {
                    return Err(Error::InvalidInput(format!("bad cycle {cycle:?}")));
                }
                touched[x] = true;
                images[x] = cycle[(i + 1) % cycle.len()];
            }
        }
        Permutation::new(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { images: inv }
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    /// Cycles including fixed points, each listed from its smallest element,
    /// ordered by that element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        cycles_of(&self.images)
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles().len()
    }
}

fn cycles_of(images: &[usize]) -> Vec<Vec<usize>> {
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

/// An assignment of one of `q` colors (0-based) to every element of `[n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    color_of: Vec<usize>,
    q: usize,
}

impl Coloring {
    pub fn new(color_of: Vec<usize>, q: usize) -> Result<Self> {
        if q == 0 {
            return Err(Error::InvalidInput("q must be at least 1".into()));
        }
        if let Some(&c) = color_of.iter().find(|&&c| c >= q) {
            return Err(Error::InvalidInput(format!("color {c} out of range for q = {q}")));
        }
        Ok(Coloring { color_of, q })
    }

    /// The first `n_1` elements get color 0, the next `n_2` color 1, and so on.
    pub fn canonical_blocks(n_vec: &[u32]) -> Self {
        let color_of = n_vec
            .iter()
            .enumerate()
            .flat_map(|(color, &count)| std::iter::repeat_n(color, count as usize))
            .collect();
        Coloring {
            color_of,
            q: n_vec.len(),
        }
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn degree(&self) -> usize {
        self.color_of.len()
    }

    pub fn color(&self, i: usize) -> usize {
        self.color_of[i]
    }

    pub fn colors(&self) -> &[usize] {
        &self.color_of
    }

    /// How many elements carry each color.
    pub fn n_vec(&self) -> Vec<u32> {
        let mut counts = vec![0; self.q];
        for &c in &self.color_of {
            counts[c] += 1;
        }
        counts
    }

    fn check_for(&self, n_vec: &[u32]) -> Result<()> {
        if self.n_vec() != n_vec {
            return Err(Error::DimensionMismatch(format!(
                "coloring has color counts {:?}, expected {n_vec:?}",
                self.n_vec()
            )));
        }
        Ok(())
    }
}

/// A `k × q` matrix of rationals: the point at which the dummy variables of
/// the cycle index are evaluated. Column `j` belongs to color `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DummyMatrix {
    rows: Vec<Vec<BigRational>>,
}

impl DummyMatrix {
    pub fn new(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let q = rows.first().map(Vec::len).unwrap_or(0);
        if rows.is_empty() || q == 0 {
            return Err(Error::InvalidInput("the matrix must be at least 1 × 1".into()));
        }
        if rows.iter().any(|r| r.len() != q) {
            return Err(Error::DimensionMismatch("ragged matrix rows".into()));
        }
        Ok(DummyMatrix { rows })
    }

    pub fn k(&self) -> usize {
        self.rows.len()
    }

    pub fn q(&self) -> usize {
        self.rows[0].len()
    }

    pub fn get(&self, row: usize, col: usize) -> &BigRational {
        &self.rows[row][col]
    }

    pub fn rows(&self) -> &[Vec<BigRational>] {
        &self.rows
    }

    /// Reorders columns: column `j` of the result is column `perm[j]` of `self`.
    pub fn permute_columns(&self, perm: &[usize]) -> DummyMatrix {
        DummyMatrix {
            rows: self
                .rows
                .iter()
                .map(|r| perm.iter().map(|&j| r[j].clone()).collect())
                .collect(),
        }
    }

    /// Multiplies column `col` by `factor`.
    pub fn scale_column(&self, col: usize, factor: &BigRational) -> DummyMatrix {
        let mut out = self.clone();
        for r in &mut out.rows {
            r[col] = &r[col] * factor;
        }
        out
    }

    /// Row sums `S·1`, a vector of length `k`.
    pub fn row_sums(&self) -> Vec<BigRational> {
        self.rows
            .iter()
            .map(|r| r.iter().fold(BigRational::zero(), |acc, x| acc + x))
            .collect()
    }
}

/// Positive weights `alpha ∈ Q_+^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaVector(Vec<BigRational>);

impl AlphaVector {
    pub fn new(entries: Vec<BigRational>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidInput("alpha must have at least one entry".into()));
        }
        if entries.iter().any(|a| *a <= BigRational::zero()) {
            return Err(Error::InvalidInput("alpha entries must be positive".into()));
        }
        Ok(AlphaVector(entries))
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.0
    }

    pub fn k(&self) -> usize {
        self.0.len()
    }

    /// `|alpha|`.
    pub fn total(&self) -> BigRational {
        self.0.iter().fold(BigRational::zero(), |acc, a| acc + a)
    }
}

fn check_dims(q: usize, s: &DummyMatrix, alpha: &AlphaVector) -> Result<()> {
    if s.k() != alpha.k() {
        return Err(Error::DimensionMismatch(format!(
            "matrix has {} rows but alpha has {} entries",
            s.k(),
            alpha.k()
        )));
    }
    if s.q() != q {
        return Err(Error::DimensionMismatch(format!(
            "matrix has {} columns, expected q = {q}",
            s.q()
        )));
    }
    Ok(())
}

/// Cycle type of `pi`: entry `i - 1` counts the `i`-cycles, fixed points
/// included.
pub fn cycle_structure(pi: &Permutation) -> IntegerPartition {
    let mut multiplicities = vec![0; pi.degree()];
    for cycle in pi.cycles() {
        multiplicities[cycle.len() - 1] += 1;
    }
    IntegerPartition::from_multiplicities(multiplicities)
}

/// The coloring map: one part per cycle of `pi`, counting the colors of the
/// cycle's elements.
pub fn project_pi(pi: &Permutation, c: &Coloring) -> Result<ColoredPartition> {
    if pi.degree() != c.degree() {
        return Err(Error::DimensionMismatch(format!(
            "permutation of degree {} with a coloring of {} elements",
            pi.degree(),
            c.degree()
        )));
    }
    Ok(project_images(pi.images(), c))
}

fn project_images(images: &[usize], c: &Coloring) -> ColoredPartition {
    let mut out = ColoredPartition::empty(c.q());
    for cycle in cycles_of(images) {
        let mut counts = vec![0; c.q()];
        for x in cycle {
            counts[c.color(x)] += 1;
        }
        out.add(ColorVector::new(counts).expect("cycles are nonempty"), 1);
    }
    out
}

/// Advances `v` to the next permutation in lexicographic order; returns
/// false after the last one.
fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// All permutations of `[n]` in lexicographic one-line order.
pub fn permutations(n: usize) -> impl Iterator<Item = Permutation> {
    let mut current: Option<Vec<usize>> = Some((0..n).collect());
    std::iter::from_fn(move || {
        let out = current.clone()?;
        let mut next = out.clone();
        current = next_permutation(&mut next).then_some(next);
        Some(Permutation { images: out })
    })
}

/// Folds over every permutation of `[n]` in parallel, splitting on the
/// first image. `merge` must be associative.
pub fn fold_permutations<T, I, F, M>(n: usize, init: I, fold: F, merge: M) -> T
where
    T: Send,
    I: Fn() -> T + Sync + Send,
    F: Fn(&mut T, &[usize]) + Sync + Send,
    M: Fn(T, T) -> T + Sync + Send,
{
    if n == 0 {
        let mut acc = init();
        fold(&mut acc, &[]);
        return acc;
    }
    (0..n)
        .into_par_iter()
        .map(|first| {
            let mut acc = init();
            let mut v: Vec<usize> = std::iter::once(first)
                .chain((0..n).filter(|&x| x != first))
                .collect();
            loop {
                fold(&mut acc, &v);
                if !next_permutation(&mut v[1..]) {
                    break;
                }
            }
            acc
        })
        .reduce(&init, &merge)
}

/// Sizes of the fibers of the coloring map over all of `S_|n_vec|`.
pub fn orbit_counts_bruteforce(
    n_vec: &[u32],
    c: &Coloring,
    limits: &Limits,
) -> Result<BTreeMap<ColoredPartition, u64>> {
    c.check_for(n_vec)?;
    limits.check_degree(c.degree())?;
    Ok(fold_permutations(
        c.degree(),
        BTreeMap::new,
        |acc: &mut BTreeMap<ColoredPartition, u64>, images| {
            *acc.entry(project_images(images, c)).or_insert(0) += 1;
        },
        |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        },
    ))
}

/// `omega_a[S; alpha] = sum_i alpha_i prod_j S[i][j]^a_j`.
pub fn omega(a: &ColorVector, s: &DummyMatrix, alpha: &AlphaVector) -> Result<BigRational> {
    check_dims(a.q(), s, alpha)?;
    Ok(omega_unchecked(a.counts(), s, alpha))
}

fn omega_unchecked(a: &[u32], s: &DummyMatrix, alpha: &AlphaVector) -> BigRational {
    s.rows()
        .iter()
        .zip(alpha.entries())
        .fold(BigRational::zero(), |acc, (row, w)| {
            let mono = row
                .iter()
                .zip(a)
                .fold(BigRational::one(), |m, (x, &e)| m * pow(x, e));
            acc + w * mono
        })
}

/// Memoized `omega_a` values at a fixed evaluation point.
pub(crate) struct OmegaTable<'a> {
    s: &'a DummyMatrix,
    alpha: &'a AlphaVector,
    cache: HashMap<Vec<u32>, BigRational>,
}

impl<'a> OmegaTable<'a> {
    pub(crate) fn new(s: &'a DummyMatrix, alpha: &'a AlphaVector) -> Self {
        OmegaTable {
            s,
            alpha,
            cache: HashMap::new(),
        }
    }

    pub(crate) fn get(&mut self, a: &[u32]) -> &BigRational {
        if !self.cache.contains_key(a) {
            let v = omega_unchecked(a, self.s, self.alpha);
            self.cache.insert(a.to_vec(), v);
        }
        &self.cache[a]
    }
}

/// `sum_{A ⊨ n_vec} Multi(A) prod_a omega_a^A(a)`, i.e. `n_vec! Z_n(Omega)`.
pub(crate) fn weighted_partition_sum(
    n_vec: &[u32],
    s: &DummyMatrix,
    alpha: &AlphaVector,
    limits: &Limits,
) -> Result<BigRational> {
    check_dims(n_vec.len(), s, alpha)?;
    let mut table = OmegaTable::new(s, alpha);
    let mut total = BigRational::zero();
    for a in enumerate_colored_partitions(n_vec, limits)? {
        let mut term = multinomial_coefficient(&a);
        for (v, m) in a.parts() {
            term *= pow(table.get(v.counts()), m);
        }
        total += term;
    }
    Ok(total)
}

/// The refined cycle index evaluated at `Omega_n[S; alpha]`:
/// `(1/n_vec!) sum_{A ⊨ n_vec} Multi(A) prod_a omega_a^A(a)`.
pub fn refined_cycle_index(
    n_vec: &[u32],
    s: &DummyMatrix,
    alpha: &AlphaVector,
    limits: &Limits,
) -> Result<BigRational> {
    let total = weighted_partition_sum(n_vec, s, alpha, limits)?;
    Ok(total / BigRational::from_integer(vec_factorial(n_vec)))
}

/// The pattern inventory computed straight from its definition: the average
/// over `S_|n|` (normalized by `n_vec!`) of the product, over cycles, of
/// `(Hadamard product of the columns met along the cycle) · alpha`.
pub fn pattern_inventory_bruteforce(
    n_vec: &[u32],
    c: &Coloring,
    s: &DummyMatrix,
    alpha: &AlphaVector,
    limits: &Limits,
) -> Result<BigRational> {
    c.check_for(n_vec)?;
    check_dims(n_vec.len(), s, alpha)?;
    limits.check_degree(c.degree())?;

    // A cycle's weight only depends on the multiset of colors along it, so
    // it is cached under the sorted color word.
    let cycle_weight = |word: &[usize]| -> BigRational {
        s.rows()
            .iter()
            .zip(alpha.entries())
            .fold(BigRational::zero(), |acc, (row, w)| {
                let hadamard = word
                    .iter()
                    .fold(BigRational::one(), |m, &color| m * &row[color]);
                acc + w * hadamard
            })
    };

    let total = fold_permutations(
        c.degree(),
        || (BigRational::zero(), HashMap::<Vec<usize>, BigRational>::new()),
        |(sum, cache), images| {
            let mut pattern = BigRational::one();
            for cycle in cycles_of(images) {
                let mut word: Vec<usize> = cycle.iter().map(|&x| c.color(x)).collect();
                word.sort_unstable();
                let w = cache
                    .entry(word)
                    .or_insert_with_key(|word| cycle_weight(word));
                pattern *= &*w;
            }
            *sum += pattern;
        },
        |(a, cache), (b, _)| (a + b, cache),
    )
    .0;
    Ok(total / BigRational::from_integer(vec_factorial(n_vec)))
}

/// Classical cycle index of `S_n`:
/// `Z_n(t) = (1/n!) sum_{lambda ⊢ n} M_2(lambda) t^lambda`.
pub fn classical_cycle_index(n: u32, t: &[BigRational]) -> Result<BigRational> {
    if t.len() < n as usize {
        return Err(Error::DimensionMismatch(format!(
            "Z_{n} needs {n} variables, got {}",
            t.len()
        )));
    }
    let mut total = BigRational::zero();
    for lambda in enumerate_integer_partitions(n) {
        let mut term = m2(&lambda);
        for (ti, &m) in t.iter().zip(lambda.multiplicities()) {
            term *= pow(ti, m);
        }
        total += term;
    }
    Ok(total / BigRational::from_integer((1..=n).map(BigInt::from).product::<BigInt>()))
}

/// The arguments `(r·alpha, r^{◇2}·alpha, ..., r^{◇n}·alpha)` with
/// `r = S·1` the row sums, under which the classical cycle index equals the
/// sum of refined cycle indices over `|n_vec| = n`.
pub fn row_sum_power_sums(s: &DummyMatrix, alpha: &AlphaVector, n: u32) -> Vec<BigRational> {
    let rows = s.row_sums();
    (1..=n)
        .map(|i| {
            rows.iter()
                .zip(alpha.entries())
                .fold(BigRational::zero(), |acc, (r, a)| acc + a * pow(r, i))
        })
        .collect()
}
