//! Colored necklaces and the necklace form of the multinomial coefficient.
//!
//! Reading the colors around each cycle of a permutation gives a word up to
//! rotation, a necklace. The multiset `N` of necklaces of `pi` refines the
//! colored partition of `pi`: applying the occurrence-count map `epsilon`
//! to every necklace recovers it. Fibers of `pi ↦ N` have size
//! `n_vec! prod_nu (p_nu / l_nu) / N(nu)!`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::cycle_index::{Coloring, Permutation};
use crate::partition::{compositions, enumerate_colored_partitions, ColorVector, ColoredPartition};
use crate::rational::{factorial, is_integer, vec_factorial};
use crate::{Error, Limits, Result};

/// A necklace: a word over `{0, .., q-1}` stored as its lexicographically
/// minimal rotation. Displayed with 1-based letters, e.g. `[12]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Necklace {
    word: Vec<u8>,
    q: usize,
    period: usize,
}

impl Necklace {
    /// Canonicalizes `word` (letters `< q`).
    pub fn new(word: &[u8], q: usize) -> Result<Self> {
        if word.is_empty() {
            return Err(Error::InvalidInput("necklace words are nonempty".into()));
        }
        if q == 0 || q > u8::MAX as usize + 1 {
            return Err(Error::InvalidInput(format!("unsupported q = {q}")));
        }
        if let Some(&c) = word.iter().find(|&&c| c as usize >= q) {
            return Err(Error::InvalidInput(format!(
                "letter {} outside an alphabet of size {q}",
                c as usize + 1
            )));
        }
        let word = min_rotation(word);
        let period = period(&word);
        Ok(Necklace { word, q, period })
    }

    pub fn word(&self) -> &[u8] {
        &self.word
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// Smallest positive rotation fixing the word.
    pub fn period(&self) -> usize {
        self.period
    }
}

impl fmt::Display for Necklace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, &c) in self.word.iter().enumerate() {
            if self.q > 9 && i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", c as usize + 1)?;
        }
        write!(f, "]")
    }
}

impl Serialize for Necklace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn min_rotation(word: &[u8]) -> Vec<u8> {
    let n = word.len();
    (0..n)
        .map(|r| {
            let mut w = word[r..].to_vec();
            w.extend_from_slice(&word[..r]);
            w
        })
        .min()
        .expect("nonempty word")
}

fn period(word: &[u8]) -> usize {
    let n = word.len();
    (1..=n)
        .find(|&r| (0..n).all(|i| word[i] == word[(i + r) % n]))
        .expect("rotation by n fixes every word")
}

/// Occurrence counts of the letters of `nu`.
pub fn epsilon(nu: &Necklace) -> ColorVector {
    let mut counts = vec![0u32; nu.q];
    for &c in &nu.word {
        counts[c as usize] += 1;
    }
    ColorVector::new(counts).expect("necklaces are nonempty")
}

/// All necklaces of length `ell` over `q` letters, found by quotienting the
/// `q^ell` words by rotation. Sorted by canonical word.
pub fn enumerate_necklaces(q: usize, ell: usize, limits: &Limits) -> Result<Vec<Necklace>> {
    if q == 0 || ell == 0 {
        return Err(Error::InvalidInput("q and ell must be positive".into()));
    }
    let words = (q as u128)
        .checked_pow(ell as u32)
        .filter(|&w| w <= limits.enumeration as u128)
        .ok_or_else(|| Error::capacity("necklace words", limits.enumeration))?;
    let mut out = BTreeSet::new();
    let mut word = vec![0u8; ell];
    for _ in 0..words {
        out.insert(Necklace::new(&word, q)?);
        // odometer increment
        for c in word.iter_mut().rev() {
            if (*c as usize) + 1 < q {
                *c += 1;
                break;
            }
            *c = 0;
        }
    }
    Ok(out.into_iter().collect())
}

/// Necklaces whose occurrence vector is `a`: canonical forms of the
/// distinct rearrangements of the multiset of letters `a`.
pub fn necklaces_with_content(a: &ColorVector, limits: &Limits) -> Result<Vec<Necklace>> {
    let q = a.q();
    let mut remaining = a.counts().to_vec();
    let mut word = Vec::with_capacity(a.length() as usize);
    let mut out = BTreeSet::new();
    let mut visited = 0usize;
    fill_words(&mut remaining, &mut word, q, &mut out, &mut visited, limits)?;
    Ok(out.into_iter().collect())
}

fn fill_words(
    remaining: &mut [u32],
    word: &mut Vec<u8>,
    q: usize,
    out: &mut BTreeSet<Necklace>,
    visited: &mut usize,
    limits: &Limits,
) -> Result<()> {
    if remaining.iter().all(|&r| r == 0) {
        *visited += 1;
        if *visited > limits.enumeration {
            return Err(Error::capacity("necklace words", limits.enumeration));
        }
        out.insert(Necklace::new(word, q)?);
        return Ok(());
    }
    // Fixing the first letter to the smallest available one loses no
    // necklace: every class has a rotation starting with its minimal letter.
    let first_only = word.is_empty();
    for c in 0..q {
        if remaining[c] == 0 {
            continue;
        }
        remaining[c] -= 1;
        word.push(c as u8);
        fill_words(remaining, word, q, out, visited, limits)?;
        word.pop();
        remaining[c] += 1;
        if first_only {
            break;
        }
    }
    Ok(())
}

/// A finite multiset of necklaces over a common alphabet.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NecklaceMultiset {
    q: usize,
    counts: BTreeMap<Necklace, u32>,
}

impl NecklaceMultiset {
    pub fn empty(q: usize) -> Self {
        NecklaceMultiset {
            q,
            counts: BTreeMap::new(),
        }
    }

    pub fn from_counts<I: IntoIterator<Item = (Necklace, u32)>>(q: usize, items: I) -> Result<Self> {
        let mut n = Self::empty(q);
        for (nu, m) in items {
            if nu.q != q {
                return Err(Error::DimensionMismatch(format!(
                    "necklace {nu} is over {} letters, expected {q}",
                    nu.q
                )));
            }
            n.add(nu, m);
        }
        Ok(n)
    }

    pub fn add(&mut self, nu: Necklace, mult: u32) {
        if mult > 0 {
            *self.counts.entry(nu).or_insert(0) += mult;
        }
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Necklace, u32)> {
        self.counts.iter().map(|(nu, &m)| (nu, m))
    }

    /// The colored partition `epsilon_* N`.
    pub fn pushforward(&self) -> ColoredPartition {
        let mut a = ColoredPartition::empty(self.q);
        for (nu, m) in self.iter() {
            a.add(epsilon(nu), m);
        }
        a
    }
}

impl fmt::Display for NecklaceMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (nu, m)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{nu}:{m}")?;
        }
        write!(f, "}}")
    }
}

/// Number of permutations, under a coloring with counts `n_vec`, whose
/// necklace multiset is `N`: `n_vec! prod_nu (p_nu / l_nu) / N(nu)!`.
pub fn necklace_multiset_fiber_size(n: &NecklaceMultiset, n_vec: &[u32]) -> Result<BigRational> {
    let col = n.pushforward().col();
    if col != n_vec {
        return Err(Error::DimensionMismatch(format!(
            "necklaces have color counts {col:?}, expected {n_vec:?}"
        )));
    }
    let mut size = BigRational::from_integer(vec_factorial(n_vec));
    for (nu, m) in n.iter() {
        let ratio = BigRational::new(BigInt::from(nu.period()), BigInt::from(nu.len()));
        for _ in 0..m {
            size *= &ratio;
        }
        size /= BigRational::from_integer(factorial(m));
    }
    if !is_integer(&size) {
        return Err(Error::InvalidInput(format!(
            "fiber size {size} of {n} is not an integer"
        )));
    }
    Ok(size)
}

/// Every necklace multiset `N` with `epsilon_* N = A`.
pub fn enumerate_necklace_multisets(
    a: &ColoredPartition,
    limits: &Limits,
) -> Result<Vec<NecklaceMultiset>> {
    // per part: the necklaces with that content and the multiplicity to fill
    let mut slots = Vec::new();
    let mut terms = 0f64;
    for (part, mult) in a.parts() {
        let candidates = necklaces_with_content(part, limits)?;
        terms += (candidates.len() as f64).powi(mult as i32);
        if terms > limits.enumeration as f64 {
            return Err(Error::capacity("necklace multisets", limits.enumeration));
        }
        slots.push((candidates, mult));
    }
    let mut out = vec![NecklaceMultiset::empty(a.q())];
    for (candidates, mult) in slots {
        // multiplicity vectors of size-`mult` multisets of candidates
        let choices = compositions(mult, candidates.len());
        let mut next = Vec::with_capacity(out.len() * choices.len());
        for base in &out {
            for choice in &choices {
                let mut n = base.clone();
                for (i, &m) in choice.iter().enumerate() {
                    n.add(candidates[i].clone(), m);
                }
                next.push(n);
            }
        }
        out = next;
    }
    Ok(out)
}

/// `Multi(A)` computed as the sum of necklace fiber sizes over all `N` with
/// `epsilon_* N = A`.
pub fn multinomial_via_necklaces(a: &ColoredPartition, limits: &Limits) -> Result<BigRational> {
    let col = a.col();
    let mut total = BigRational::zero();
    for n in enumerate_necklace_multisets(a, limits)? {
        total += necklace_multiset_fiber_size(&n, &col)?;
    }
    Ok(total)
}

/// Fiber sizes of every `N` whose pushforward has color counts `n_vec`.
pub fn all_fiber_sizes(
    n_vec: &[u32],
    limits: &Limits,
) -> Result<Vec<(NecklaceMultiset, BigRational)>> {
    let mut out = Vec::new();
    for a in enumerate_colored_partitions(n_vec, limits)? {
        for n in enumerate_necklace_multisets(&a, limits)? {
            let size = necklace_multiset_fiber_size(&n, n_vec)?;
            out.push((n, size));
        }
    }
    Ok(out)
}

/// The necklace multiset of `pi` under the coloring `c`: one necklace per
/// cycle, read along the cycle.
pub fn necklace_projection(pi: &Permutation, c: &Coloring) -> Result<NecklaceMultiset> {
    if pi.degree() != c.degree() {
        return Err(Error::DimensionMismatch(format!(
            "permutation of degree {} with a coloring of {} elements",
            pi.degree(),
            c.degree()
        )));
    }
    let mut n = NecklaceMultiset::empty(c.q());
    for cycle in pi.cycles() {
        let word: Vec<u8> = cycle.iter().map(|&i| c.color(i) as u8).collect();
        n.add(Necklace::new(&word, c.q())?, 1);
    }
    Ok(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycle_index::permutations;
    use crate::partition::{m2, multinomial_coefficient, shape};
    use crate::rational::int;

    fn nk(word: &[u8], q: usize) -> Necklace {
        Necklace::new(word, q).unwrap()
    }

    #[test]
    fn canonical_form_and_period() {
        let nu = nk(&[1, 0, 1, 0], 2);
        assert_eq!(nu.word(), &[0, 1, 0, 1]);
        assert_eq!(nu.period(), 2);
        assert_eq!(nk(&[1, 1, 0], 2), nk(&[0, 1, 1], 2));
        assert_eq!(nk(&[0, 0, 0], 1).period(), 1);
        assert_eq!(nk(&[0, 1], 2).to_string(), "[12]");
        assert!(Necklace::new(&[], 2).is_err());
        assert!(Necklace::new(&[2], 2).is_err());
    }

    #[test]
    fn small_enumerations() {
        let limits = Limits::default();
        let two: Vec<String> = enumerate_necklaces(2, 1, &limits)
            .unwrap()
            .iter()
            .map(|n| n.to_string())
            .collect();
        assert_eq!(two, ["[1]", "[2]"]);
        let len2 = enumerate_necklaces(2, 2, &limits).unwrap();
        let shown: Vec<(String, usize)> =
            len2.iter().map(|n| (n.to_string(), n.period())).collect();
        assert_eq!(
            shown,
            [("[11]".into(), 1), ("[12]".into(), 2), ("[22]".into(), 1)]
        );
        assert_eq!(enumerate_necklaces(2, 3, &limits).unwrap().len(), 4);
        assert!(enumerate_necklaces(3, 20, &limits).is_err());
    }

    #[test]
    fn epsilon_examples() {
        assert_eq!(epsilon(&nk(&[0, 1], 2)).counts(), &[1, 1]);
        assert_eq!(epsilon(&nk(&[0, 0, 0], 2)).counts(), &[3, 0]);
        assert_eq!(epsilon(&nk(&[0, 0, 1, 1], 2)).counts(), &[2, 2]);
    }

    #[test]
    fn content_filter_matches_full_enumeration() {
        let limits = Limits::default();
        for ell in 1..=6usize {
            let all = enumerate_necklaces(3, ell, &limits).unwrap();
            let mut by_content: BTreeMap<ColorVector, Vec<Necklace>> = BTreeMap::new();
            for nu in all {
                by_content.entry(epsilon(&nu)).or_default().push(nu);
            }
            for (a, expected) in by_content {
                assert_eq!(necklaces_with_content(&a, &limits).unwrap(), expected);
            }
        }
    }

    #[test]
    fn fiber_size_examples() {
        let n = NecklaceMultiset::from_counts(2, [(nk(&[0, 1], 2), 1)]).unwrap();
        assert_eq!(necklace_multiset_fiber_size(&n, &[1, 1]).unwrap(), int(1));
        let n = NecklaceMultiset::from_counts(1, [(nk(&[0, 0, 0], 1), 1)]).unwrap();
        assert_eq!(necklace_multiset_fiber_size(&n, &[3]).unwrap(), int(2));
        let n = NecklaceMultiset::from_counts(2, [(nk(&[0], 2), 2)]).unwrap();
        assert_eq!(necklace_multiset_fiber_size(&n, &[2, 0]).unwrap(), int(1));
        assert!(necklace_multiset_fiber_size(&n, &[1, 1]).is_err());
    }

    #[test]
    fn fibers_match_brute_force() {
        let limits = Limits::default();
        let n_vec = [2, 1, 2];
        let c = Coloring::canonical_blocks(&n_vec);
        let mut observed: BTreeMap<NecklaceMultiset, u64> = BTreeMap::new();
        for pi in permutations(5) {
            *observed.entry(necklace_projection(&pi, &c).unwrap()).or_insert(0) += 1;
        }
        let predicted = all_fiber_sizes(&n_vec, &limits).unwrap();
        assert_eq!(predicted.len(), observed.len());
        for (n, size) in predicted {
            assert_eq!(BigRational::from_integer(observed[&n].into()), size, "{n}");
        }
    }

    #[test]
    fn multinomial_agrees() {
        let limits = Limits::default();
        let a = ColoredPartition::from_counts(2, &[(&[1, 1], 1)]);
        assert_eq!(multinomial_via_necklaces(&a, &limits).unwrap(), int(1));
        for n in 0..=6 {
            for a in enumerate_colored_partitions(&[n], &limits).unwrap() {
                assert_eq!(multinomial_via_necklaces(&a, &limits).unwrap(), m2(&shape(&a)));
            }
        }
        for a in enumerate_colored_partitions(&[2, 2, 1], &limits).unwrap() {
            assert_eq!(
                multinomial_via_necklaces(&a, &limits).unwrap(),
                multinomial_coefficient(&a)
            );
        }
    }
}
