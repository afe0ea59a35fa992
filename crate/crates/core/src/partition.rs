//! Colored partitions and the counting primitives built on them.
//!
//! A q-colored partition is a finite multiset of nonzero vectors in `N^q`.
//! Each vector records how many elements of each color sit in one block
//! (one cycle of a permutation, one table of a restaurant).

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::rational::{factorial, multinomial, vec_factorial};
use crate::{Error, Limits, Result};

/// A nonzero vector of color counts. Ordered lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColorVector(Vec<u32>);

impl ColorVector {
    pub fn new(counts: Vec<u32>) -> Result<Self> {
        if counts.is_empty() {
            return Err(Error::InvalidInput("a color vector needs q >= 1".into()));
        }
        if counts.iter().all(|&c| c == 0) {
            return Err(Error::InvalidInput("color vectors must be nonzero".into()));
        }
        Ok(ColorVector(counts))
    }

    /// The basis vector `e_j` (0-based color index).
    pub fn unit(q: usize, color: usize) -> Self {
        assert!(color < q, "color {color} out of range for q = {q}");
        let mut counts = vec![0; q];
        counts[color] = 1;
        ColorVector(counts)
    }

    pub fn counts(&self) -> &[u32] {
        &self.0
    }

    pub fn q(&self) -> usize {
        self.0.len()
    }

    /// Total number of elements, `|a|`.
    pub fn length(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_unit(&self) -> bool {
        self.length() == 1
    }

    /// `a - e_j`, or `None` if that is the zero vector or not in `N^q`.
    pub fn remove_color(&self, color: usize) -> Option<ColorVector> {
        if self.0[color] == 0 || self.is_unit() {
            return None;
        }
        let mut counts = self.0.clone();
        counts[color] -= 1;
        Some(ColorVector(counts))
    }
}

impl fmt::Display for ColorVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A finite multiset of [`ColorVector`]s sharing the same `q`.
///
/// Parts are kept in a sorted map, so equality, hashing and ordering are
/// structural and iteration follows the canonical (lexicographic) order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "crate::json::PartitionJson", try_from = "crate::json::PartitionJson")]
pub struct ColoredPartition {
    q: usize,
    parts: BTreeMap<ColorVector, u32>,
}

impl ColoredPartition {
    /// The empty partition (of the zero vector).
    pub fn empty(q: usize) -> Self {
        assert!(q >= 1, "q must be at least 1");
        ColoredPartition {
            q,
            parts: BTreeMap::new(),
        }
    }

    pub fn from_parts<I>(q: usize, parts: I) -> Result<Self>
    where
        I: IntoIterator<Item = (ColorVector, u32)>,
    {
        if q == 0 {
            return Err(Error::InvalidInput("q must be at least 1".into()));
        }
        let mut out = ColoredPartition::empty(q);
        for (a, mult) in parts {
            if a.q() != q {
                return Err(Error::DimensionMismatch(format!(
                    "part {a} has {} colors, expected {q}",
                    a.q()
                )));
            }
            if mult == 0 {
                return Err(Error::InvalidInput(format!(
                    "part {a} has multiplicity 0"
                )));
            }
            out.add(a, mult);
        }
        Ok(out)
    }

    /// Convenience constructor from raw vectors; panics on invalid input.
    /// Intended for tests and literals.
    pub fn from_counts(q: usize, parts: &[(&[u32], u32)]) -> Self {
        Self::from_parts(
            q,
            parts
                .iter()
                .map(|(a, m)| (ColorVector::new(a.to_vec()).expect("nonzero part"), *m)),
        )
        .expect("valid colored partition")
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn parts(&self) -> impl Iterator<Item = (&ColorVector, u32)> {
        self.parts.iter().map(|(a, &m)| (a, m))
    }

    pub fn multiplicity(&self, a: &ColorVector) -> u32 {
        self.parts.get(a).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn add(&mut self, a: ColorVector, mult: u32) {
        if mult > 0 {
            *self.parts.entry(a).or_insert(0) += mult;
        }
    }

    /// Removes one copy of `a`. Returns false if `a` is not a part.
    pub fn remove_one(&mut self, a: &ColorVector) -> bool {
        match self.parts.get_mut(a) {
            Some(m) if *m > 1 => {
                *m -= 1;
                true
            }
            Some(_) => {
                self.parts.remove(a);
                true
            }
            None => false,
        }
    }

    /// `col(A) = sum_a A(a) a`.
    pub fn col(&self) -> Vec<u32> {
        let mut total = vec![0; self.q];
        for (a, m) in &self.parts {
            for (t, c) in total.iter_mut().zip(a.counts()) {
                *t += m * c;
            }
        }
        total
    }

    /// Number of parts counted with multiplicity, `|A|`.
    pub fn size(&self) -> u32 {
        self.parts.values().sum()
    }

    /// Total number of colored elements, `|col(A)|`.
    pub fn degree(&self) -> u32 {
        self.parts.iter().map(|(a, m)| a.length() * m).sum()
    }

    pub fn shape(&self) -> IntegerPartition {
        shape(self)
    }
}

impl fmt::Display for ColoredPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (a, m)) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}:{m}")?;
        }
        write!(f, "}}")
    }
}

/// An integer partition `lambda |- n` in multiplicity form: entry `i - 1`
/// holds the number of parts equal to `i`. Always stored with length `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct IntegerPartition {
    multiplicities: Vec<u32>,
}

impl IntegerPartition {
    pub fn from_multiplicities(mut multiplicities: Vec<u32>) -> Self {
        let n: u32 = multiplicities
            .iter()
            .enumerate()
            .map(|(i, &m)| (i as u32 + 1) * m)
            .sum();
        multiplicities.resize(n as usize, 0);
        IntegerPartition { multiplicities }
    }

    /// From a list of part sizes, e.g. `[2, 1, 1]`.
    pub fn from_parts(parts: &[u32]) -> Self {
        let n: u32 = parts.iter().sum();
        let mut multiplicities = vec![0; n as usize];
        for &p in parts {
            assert!(p >= 1, "parts are positive");
            multiplicities[p as usize - 1] += 1;
        }
        IntegerPartition { multiplicities }
    }

    pub fn multiplicities(&self) -> &[u32] {
        &self.multiplicities
    }

    pub fn n(&self) -> u32 {
        self.multiplicities.len() as u32
    }

    /// Number of parts.
    pub fn len(&self) -> u32 {
        self.multiplicities.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.multiplicities.is_empty()
    }
}

impl fmt::Display for IntegerPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, m) in self.multiplicities.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, ")")
    }
}

/// A set partition `L` of the colors `[q]` into `r` blocks, viewed as the
/// color-merging map `s_L: [q] -> [r]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegeneracyMap {
    block_of: Vec<usize>,
    blocks: usize,
}

impl DegeneracyMap {
    /// Builds the map from explicit blocks of 0-based colors. Blocks must be
    /// nonempty, disjoint and cover `0..q`; block order fixes the target
    /// color order.
    pub fn from_blocks(q: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut block_of = vec![usize::MAX; q];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidInput("empty block in color partition".into()));
            }
            for &color in block {
                if color >= q {
                    return Err(Error::InvalidInput(format!(
                        "color {color} out of range for q = {q}"
                    )));
                }
                if block_of[color] != usize::MAX {
                    return Err(Error::InvalidInput(format!(
                        "color {color} appears in two blocks"
                    )));
                }
                block_of[color] = b;
            }
        }
        if block_of.contains(&usize::MAX) {
            return Err(Error::InvalidInput("blocks do not cover all colors".into()));
        }
        Ok(DegeneracyMap {
            block_of,
            blocks: blocks.len(),
        })
    }

    pub fn identity(q: usize) -> Self {
        DegeneracyMap {
            block_of: (0..q).collect(),
            blocks: q,
        }
    }

    /// Merges every color into one.
    pub fn full_merge(q: usize) -> Self {
        DegeneracyMap {
            block_of: vec![0; q],
            blocks: 1,
        }
    }

    pub fn source_colors(&self) -> usize {
        self.block_of.len()
    }

    pub fn target_colors(&self) -> usize {
        self.blocks
    }

    pub fn block_of(&self, color: usize) -> usize {
        self.block_of[color]
    }

    /// `S_L v`: sums the entries of `v` within each block.
    pub fn apply<T>(&self, v: &[T]) -> Vec<T>
    where
        T: Clone + Default + std::ops::AddAssign<T>,
    {
        assert_eq!(v.len(), self.block_of.len(), "vector length must be q");
        let mut out = vec![T::default(); self.blocks];
        for (x, &b) in v.iter().zip(&self.block_of) {
            out[b] += x.clone();
        }
        out
    }
}

/// Enumerates every colored partition `A` with `col(A) = n_vec`, sorted
/// canonically.
///
/// Candidate parts are visited in decreasing lexicographic order and each
/// one is assigned a multiplicity before moving on, so every partition is
/// produced exactly once without a deduplication pass.
pub fn enumerate_colored_partitions(
    n_vec: &[u32],
    limits: &Limits,
) -> Result<Vec<ColoredPartition>> {
    let mut out = Vec::new();
    push_colored_partitions(n_vec, limits, &mut out)?;
    out.sort();
    Ok(out)
}

fn push_colored_partitions(
    n_vec: &[u32],
    limits: &Limits,
    out: &mut Vec<ColoredPartition>,
) -> Result<()> {
    let q = n_vec.len();
    if q == 0 {
        return Err(Error::InvalidInput("q must be at least 1".into()));
    }
    let mut candidates: Vec<ColorVector> = vectors_below(n_vec)
        .into_iter()
        .filter(|v| v.iter().any(|&c| c > 0))
        .map(ColorVector)
        .collect();
    candidates.sort_by(|a, b| b.cmp(a));

    struct Search<'a> {
        q: usize,
        candidates: &'a [ColorVector],
        chosen: Vec<(usize, u32)>,
        out: &'a mut Vec<ColoredPartition>,
        limit: usize,
    }

    impl Search<'_> {
        fn run(&mut self, idx: usize, remaining: &mut [u32]) -> Result<()> {
            if remaining.iter().all(|&r| r == 0) {
                if self.out.len() >= self.limit {
                    return Err(Error::capacity("number of colored partitions", self.limit));
                }
                let mut partition = ColoredPartition::empty(self.q);
                for &(i, m) in &self.chosen {
                    partition.add(self.candidates[i].clone(), m);
                }
                self.out.push(partition);
                return Ok(());
            }
            if idx == self.candidates.len() {
                return Ok(());
            }
            let a = self.candidates[idx].counts();
            let max_mult = a
                .iter()
                .zip(remaining.iter())
                .filter(|(&c, _)| c > 0)
                .map(|(&c, &r)| r / c)
                .min()
                .unwrap_or(0);
            for mult in (0..=max_mult).rev() {
                for (r, &c) in remaining.iter_mut().zip(a) {
                    *r -= c * mult;
                }
                if mult > 0 {
                    self.chosen.push((idx, mult));
                }
                let result = self.run(idx + 1, remaining);
                if mult > 0 {
                    self.chosen.pop();
                }
                for (r, &c) in remaining.iter_mut().zip(a) {
                    *r += c * mult;
                }
                result?;
            }
            Ok(())
        }
    }

    let budget = limits.enumeration.saturating_sub(out.len());
    let mut found = Vec::new();
    let mut search = Search {
        q,
        candidates: &candidates,
        chosen: Vec::new(),
        out: &mut found,
        limit: budget,
    };
    search.run(0, &mut n_vec.to_vec())?;
    out.append(&mut found);
    Ok(())
}

/// Every vector `v` with `0 <= v <= bound` componentwise, in lexicographic
/// order (including the zero vector).
pub fn vectors_below(bound: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::with_capacity(bound.len())];
    for &b in bound {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..=b).map(move |x| {
                    let mut v = prefix.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}

/// Weak compositions of `n` into `parts` nonnegative entries, in decreasing
/// lexicographic order.
pub fn compositions(n: u32, parts: usize) -> Vec<Vec<u32>> {
    fn rec(n: u32, parts: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 1 {
            prefix.push(n);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in (0..=n).rev() {
            prefix.push(first);
            rec(n - first, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if parts == 0 {
        if n == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(n, parts, &mut Vec::with_capacity(parts), &mut out);
    out
}

/// All q-colored partitions of total size `n` (the union over `|n_vec| = n`).
pub fn enumerate_all_colored_partitions(
    n: u32,
    q: usize,
    limits: &Limits,
) -> Result<Vec<ColoredPartition>> {
    if q == 0 {
        return Err(Error::InvalidInput("q must be at least 1".into()));
    }
    let mut out = Vec::new();
    for n_vec in compositions(n, q) {
        push_colored_partitions(&n_vec, limits, &mut out)?;
    }
    out.sort();
    Ok(out)
}

/// All integer partitions of `n`, in multiplicity form.
pub fn enumerate_integer_partitions(n: u32) -> Vec<IntegerPartition> {
    fn rec(remaining: u32, max_part: u32, parts: &mut Vec<u32>, out: &mut Vec<IntegerPartition>) {
        if remaining == 0 {
            out.push(IntegerPartition::from_parts(parts));
            return;
        }
        for p in (1..=max_part.min(remaining)).rev() {
            parts.push(p);
            rec(remaining - p, p, parts, out);
            parts.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// `Multi(A) = n! prod_a binom(|a|, a)^A(a) / (|a|^A(a) A(a)!)` where
/// `n! = col(A)!` is the product of the color factorials.
///
/// This counts the permutations of `S_|n|` whose cycles realize `A`, so it is
/// always an integer.
pub fn multinomial_coefficient(a: &ColoredPartition) -> BigRational {
    let mut numer = vec_factorial(&a.col());
    let mut denom = BigInt::one();
    for (v, m) in a.parts() {
        numer *= multinomial(v.counts()).pow(m);
        denom *= BigInt::from(v.length()).pow(m) * factorial(m);
    }
    BigRational::new(numer, denom)
}

/// Multinomial coefficient of the second kind,
/// `M_2(lambda) = n! prod_i 1 / (i^lambda_i lambda_i!)`: the number of
/// permutations of `S_n` with cycle type `lambda`.
pub fn m2(lambda: &IntegerPartition) -> BigRational {
    let mut denom = BigInt::one();
    for (i, &m) in lambda.multiplicities().iter().enumerate() {
        denom *= BigInt::from(i as u32 + 1).pow(m) * factorial(m);
    }
    BigRational::new(factorial(lambda.n()), denom)
}

/// Forgets colors: `shape(A)_i = sum over |a| = i of A(a)`.
pub fn shape(a: &ColoredPartition) -> IntegerPartition {
    let mut multiplicities = vec![0; a.degree() as usize];
    for (v, m) in a.parts() {
        multiplicities[v.length() as usize - 1] += m;
    }
    IntegerPartition { multiplicities }
}

/// Pushes `A` forward through the color-merging map: every part `a` becomes
/// `S_L a`, and multiplicities of colliding images add up.
pub fn aggregate(a: &ColoredPartition, d: &DegeneracyMap) -> Result<ColoredPartition> {
    if d.source_colors() != a.q() {
        return Err(Error::DimensionMismatch(format!(
            "degeneracy map acts on {} colors, partition has {}",
            d.source_colors(),
            a.q()
        )));
    }
    let mut out = ColoredPartition::empty(d.target_colors());
    for (v, m) in a.parts() {
        out.add(ColorVector(d.apply(v.counts())), m);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn cp(q: usize, parts: &[(&[u32], u32)]) -> ColoredPartition {
        ColoredPartition::from_counts(q, parts)
    }

    /// Classical partition count p(n) by the recursion on the largest part.
    fn partition_count(n: u32) -> usize {
        fn p(n: u32, max: u32) -> usize {
            if n == 0 {
                return 1;
            }
            (1..=max.min(n)).map(|k| p(n - k, k)).sum()
        }
        p(n, n)
    }

    #[test]
    fn zero_vector_has_only_the_empty_partition() {
        let all = enumerate_colored_partitions(&[0, 0, 0], &Limits::default()).unwrap();
        assert_eq!(all, vec![ColoredPartition::empty(3)]);
    }

    #[test]
    fn partitions_of_one_one() {
        let all = enumerate_colored_partitions(&[1, 1], &Limits::default()).unwrap();
        assert_eq!(all.len(), 2);
        assert!(all.contains(&cp(2, &[(&[1, 1], 1)])));
        assert!(all.contains(&cp(2, &[(&[1, 0], 1), (&[0, 1], 1)])));
    }

    #[test]
    fn one_color_matches_partition_counts() {
        for n in 0..=10 {
            let all = enumerate_colored_partitions(&[n], &Limits::default()).unwrap();
            assert_eq!(all.len(), partition_count(n), "n = {n}");
            assert_eq!(all.len(), enumerate_integer_partitions(n).len());
        }
        assert_eq!(
            enumerate_colored_partitions(&[5], &Limits::default()).unwrap().len(),
            7
        );
    }

    #[test]
    fn all_partitions_of_small_sizes() {
        let limits = Limits::default();
        assert_eq!(
            enumerate_all_colored_partitions(0, 2, &limits).unwrap(),
            vec![ColoredPartition::empty(2)]
        );
        let one = enumerate_all_colored_partitions(1, 2, &limits).unwrap();
        assert_eq!(one.len(), 2);
        assert!(one.contains(&cp(2, &[(&[1, 0], 1)])));
        assert!(one.contains(&cp(2, &[(&[0, 1], 1)])));
        // {(2,0)}, {(1,1)}, {(0,2)}, {(1,0)^2}, {(1,0),(0,1)}, {(0,1)^2}
        assert_eq!(enumerate_all_colored_partitions(2, 2, &limits).unwrap().len(), 6);
    }

    #[test]
    fn enumeration_is_sorted_and_duplicate_free() {
        let all = enumerate_all_colored_partitions(5, 3, &Limits::default()).unwrap();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn capacity_limit_is_an_error() {
        let limits = Limits::default().with_enumeration(10);
        let err = enumerate_colored_partitions(&[3, 3], &limits).unwrap_err();
        assert!(err.is_capacity());
        assert!(enumerate_all_colored_partitions(4, 3, &limits).is_err());
        // exactly at the limit is fine
        let n = enumerate_colored_partitions(&[4], &Limits::default()).unwrap().len();
        let at_limit = Limits::default().with_enumeration(n);
        assert_eq!(enumerate_colored_partitions(&[4], &at_limit).unwrap().len(), n);
    }

    #[test]
    fn multinomial_coefficient_examples() {
        assert_eq!(multinomial_coefficient(&cp(2, &[(&[1, 1], 1)])), int(1));
        assert_eq!(
            multinomial_coefficient(&cp(2, &[(&[1, 0], 1), (&[0, 1], 1)])),
            int(1)
        );
        assert_eq!(multinomial_coefficient(&cp(1, &[(&[3], 1)])), int(2));
        assert_eq!(multinomial_coefficient(&ColoredPartition::empty(2)), int(1));
    }

    #[test]
    fn m2_examples() {
        assert_eq!(m2(&IntegerPartition::from_multiplicities(vec![4])), int(1));
        assert_eq!(m2(&IntegerPartition::from_multiplicities(vec![1, 1, 0])), int(3));
        for n in 0..=8 {
            let total = enumerate_integer_partitions(n)
                .iter()
                .fold(int(0), |acc, l| acc + m2(l));
            assert_eq!(total, BigRational::from_integer(factorial(n)), "n = {n}");
        }
    }

    #[test]
    fn shape_examples() {
        assert!(shape(&ColoredPartition::empty(2)).is_empty());
        assert_eq!(
            shape(&cp(2, &[(&[1, 1], 1)])),
            IntegerPartition::from_multiplicities(vec![0, 1])
        );
        assert_eq!(
            shape(&cp(2, &[(&[2, 1], 1), (&[1, 0], 2)])),
            IntegerPartition::from_multiplicities(vec![2, 0, 1])
        );
    }

    #[test]
    fn integer_partition_normalizes_length() {
        let a = IntegerPartition::from_multiplicities(vec![1, 1, 0, 0, 0]);
        assert_eq!(a.multiplicities(), &[1, 1, 0]);
        assert_eq!(a.n(), 3);
        assert_eq!(a, IntegerPartition::from_parts(&[2, 1]));
    }

    #[test]
    fn aggregate_examples() {
        let a = cp(2, &[(&[1, 1], 1)]);
        assert_eq!(aggregate(&a, &DegeneracyMap::identity(2)).unwrap(), a);
        let merge = DegeneracyMap::full_merge(2);
        assert_eq!(aggregate(&a, &merge).unwrap(), cp(1, &[(&[2], 1)]));
        let b = cp(2, &[(&[1, 0], 1), (&[0, 1], 1)]);
        assert_eq!(aggregate(&b, &merge).unwrap(), cp(1, &[(&[1], 2)]));
        assert!(aggregate(&b, &DegeneracyMap::identity(3)).is_err());
    }

    #[test]
    fn degeneracy_map_validation() {
        assert!(DegeneracyMap::from_blocks(3, &[vec![0, 2], vec![1]]).is_ok());
        assert!(DegeneracyMap::from_blocks(3, &[vec![0, 2]]).is_err());
        assert!(DegeneracyMap::from_blocks(3, &[vec![0, 1], vec![1, 2]]).is_err());
        assert!(DegeneracyMap::from_blocks(2, &[vec![0], vec![], vec![1]]).is_err());
        let d = DegeneracyMap::from_blocks(3, &[vec![0, 2], vec![1]]).unwrap();
        assert_eq!(d.apply(&[1u32, 2, 3]), vec![4, 2]);
    }

    #[test]
    fn invalid_parts_are_rejected() {
        assert!(ColorVector::new(vec![0, 0]).is_err());
        assert!(ColorVector::new(vec![]).is_err());
        let a = ColorVector::new(vec![1, 0]).unwrap();
        assert!(ColoredPartition::from_parts(3, [(a.clone(), 1)]).is_err());
        assert!(ColoredPartition::from_parts(2, [(a, 0)]).is_err());
    }

    #[test]
    fn compositions_count() {
        assert_eq!(compositions(3, 2).len(), 4);
        assert_eq!(compositions(4, 3).len(), 15);
        assert_eq!(compositions(0, 3), vec![vec![0, 0, 0]]);
    }
}
