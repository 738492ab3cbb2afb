//! Permutations of `{1..n}`.
//!
//! Elements are 0-based internally and 1-based in every external format
//! (cycle notation, JSON image arrays). Composition follows
//! `(f·g)(k) = f(g(k))`: the right factor acts first.

use std::fmt;

use crate::{Error, Partition, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// Builds a permutation from 0-based images.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::InvalidPermutation("empty ground set".into()));
        }
        let mut seen = vec![false; n];
        for &v in &images {
            if v >= n {
                return Err(Error::InvalidPermutation(format!(
                    "image {} out of range 1..={n}",
                    v + 1
                )));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidPermutation(format!(
                    "image {} appears twice",
                    v + 1
                )));
            }
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation from 1-based images: `images[k-1]` is the image of `k`.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::InvalidPermutation(
                "image 0 in a 1-based array".into(),
            ));
        }
        Self::from_images(images.iter().map(|&v| v - 1).collect())
    }

    /// Builds a permutation of `{1..n}` from disjoint cycles in 1-based
    /// notation. Omitted elements are fixed points.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidPermutation("empty ground set".into()));
        }
        let mut images: Vec<Option<usize>> = vec![None; n];
        for cycle in cycles {
            for (idx, &x) in cycle.iter().enumerate() {
                if x == 0 || x > n {
                    return Err(Error::InvalidPermutation(format!(
                        "cycle element {x} out of range 1..={n}"
                    )));
                }
                let next = cycle[(idx + 1) % cycle.len()];
                if images[x - 1].replace(next - 1).is_some() {
                    return Err(Error::InvalidPermutation(format!(
                        "element {x} appears in two cycles"
                    )));
                }
            }
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(k, v)| v.unwrap_or(k))
            .collect();
        Self::from_images(images)
    }

    /// The long cycle `(1 2 … n)`.
    pub fn long_cycle(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidPermutation(
                "the long cycle needs n >= 1".into(),
            ));
        }
        Ok(Permutation {
            images: (0..n).map(|k| (k + 1) % n).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// Image of the 0-based element `k`.
    #[inline]
    pub fn apply(&self, k: usize) -> usize {
        self.images[k]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn one_based_images(&self) -> Vec<usize> {
        self.images.iter().map(|&v| v + 1).collect()
    }

    /// `self · other`, i.e. `k ↦ self(other(k))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.len() != other.len() {
            return Err(Error::SizeMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(Permutation {
            images: other.images.iter().map(|&k| self.images[k]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (k, &v) in self.images.iter().enumerate() {
            inv[v] = k;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &v)| k == v)
    }

    /// Disjoint cycles (0-based), each rotated so that its maximum comes
    /// last, listed by decreasing maximum.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        // Scanning from the top means each cycle is first met at its maximum.
        for start in (0..n).rev() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut k = self.images[start];
            seen[start] = true;
            while k != start {
                seen[k] = true;
                cycle.push(k);
                k = self.images[k];
            }
            cycle.push(start);
            out.push(cycle);
        }
        out
    }

    pub fn cycle_type(&self) -> Partition {
        Partition::from_unsorted(self.cycles().iter().map(Vec::len).collect())
            .expect("cycle lengths are positive")
    }

    pub fn cycle_count(&self) -> usize {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut count = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut k = start;
            while !seen[k] {
                seen[k] = true;
                k = self.images[k];
            }
        }
        count
    }

    /// True iff the permutation is a single n-cycle. The identity on `{1}`
    /// counts as a long cycle.
    pub fn is_long_cycle(&self) -> bool {
        let n = self.len();
        if n == 0 {
            return false;
        }
        let mut k = self.images[0];
        let mut steps = 1;
        while k != 0 {
            k = self.images[k];
            steps += 1;
        }
        steps == n
    }

    /// Iterates over the whole symmetric group in lexicographic order of the
    /// image arrays.
    pub fn all(n: usize) -> LexPermutations {
        LexPermutations::new((0..n).collect())
    }

    /// All permutations sending 0 to `first`, in lexicographic order. The
    /// `n` ranges for `first in 0..n` partition the symmetric group.
    pub fn all_with_first(n: usize, first: usize) -> LexPermutations {
        assert!(first < n);
        let mut start = vec![first];
        start.extend((0..n).filter(|&v| v != first));
        let mut it = LexPermutations::new(start);
        it.fixed_prefix = 1;
        it
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation, 1-based, each cycle starting at its minimum.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.len();
        let mut seen = vec![false; n];
        for start in 0..n {
            if seen[start] {
                continue;
            }
            write!(f, "(")?;
            let mut k = start;
            let mut first = true;
            while !seen[k] {
                seen[k] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{}", k + 1)?;
                first = false;
                k = self.images[k];
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// Rearranges `a` into its lexicographic successor. Returns false
/// (leaving the slice sorted ascending) when it was already the last one.
pub(crate) fn next_permutation(a: &mut [usize]) -> bool {
    let n = a.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        a.reverse();
        return false;
    }
    let mut j = n - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// Lexicographic stream of permutations, optionally with a frozen prefix.
pub struct LexPermutations {
    current: Vec<usize>,
    fixed_prefix: usize,
    done: bool,
}

impl LexPermutations {
    fn new(start: Vec<usize>) -> Self {
        LexPermutations {
            done: start.is_empty(),
            current: start,
            fixed_prefix: 0,
        }
    }
}

impl Iterator for LexPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        let out = Permutation {
            images: self.current.clone(),
        };
        let prefix = self.fixed_prefix;
        self.done = !next_permutation(&mut self.current[prefix..]);
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn perm(n: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    #[test]
    fn compose_reproduces_example_map() {
        let alpha = perm(7, &[&[1, 2, 6, 7, 4, 5, 3]]);
        let beta = perm(7, &[&[2, 5], &[3, 7]]);
        assert_eq!(
            alpha.compose(&beta).unwrap(),
            Permutation::long_cycle(7).unwrap()
        );
    }

    #[test]
    fn compose_reproduces_inverse_fixture() {
        let alpha = perm(5, &[&[1, 3, 2, 4, 5]]);
        let beta = perm(5, &[&[1, 3, 2]]);
        assert_eq!(alpha.apply(beta.apply(0)), 1);
        assert_eq!(
            alpha.compose(&beta).unwrap(),
            Permutation::long_cycle(5).unwrap()
        );
    }

    #[test]
    fn compose_identity_and_mismatch() {
        let g = perm(5, &[&[1, 4], &[2, 5, 3]]);
        assert_eq!(Permutation::identity(5).compose(&g).unwrap(), g);
        assert!(matches!(
            Permutation::identity(4).compose(&g),
            Err(Error::SizeMismatch { left: 4, right: 5 })
        ));
    }

    #[test]
    fn inverse_of_three_cycle() {
        let c = perm(3, &[&[1, 2, 3]]);
        assert_eq!(c.inverse(), perm(3, &[&[1, 3, 2]]));
        assert!(Permutation::identity(4).inverse().is_identity());
    }

    #[test]
    fn long_cycle_images() {
        assert!(Permutation::long_cycle(1).unwrap().is_identity());
        assert_eq!(
            Permutation::long_cycle(3).unwrap().one_based_images(),
            vec![2, 3, 1]
        );
        assert_eq!(
            Permutation::long_cycle(7).unwrap().to_string(),
            "(1 2 3 4 5 6 7)"
        );
        assert!(Permutation::long_cycle(0).is_err());
    }

    #[test]
    fn cycle_types_of_fixtures() {
        let beta = perm(7, &[&[2, 5], &[3, 7]]);
        assert_eq!(beta.cycle_type().parts(), &[2, 2, 1, 1, 1]);
        assert_eq!(Permutation::identity(4).cycle_type().parts(), &[1, 1, 1, 1]);
        assert_eq!(perm(5, &[&[2, 1, 3]]).cycle_type().parts(), &[3, 1, 1]);
    }

    #[test]
    fn cycles_have_maximum_last_by_decreasing_maximum() {
        let beta = perm(7, &[&[2, 5], &[3, 7]]);
        let one_based: Vec<Vec<usize>> = beta
            .cycles()
            .into_iter()
            .map(|c| c.into_iter().map(|x| x + 1).collect())
            .collect();
        assert_eq!(
            one_based,
            vec![vec![3, 7], vec![6], vec![2, 5], vec![4], vec![1]]
        );
    }

    #[test]
    fn long_cycle_detection() {
        assert!(perm(3, &[&[1, 2, 3]]).is_long_cycle());
        assert!(!Permutation::identity(3).is_long_cycle());
        assert!(perm(7, &[&[1, 2, 6, 7, 4, 5, 3]]).is_long_cycle());
        assert!(Permutation::identity(1).is_long_cycle());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Permutation::from_one_based(&[1, 1, 2]).is_err());
        assert!(Permutation::from_one_based(&[1, 4, 2]).is_err());
        assert!(Permutation::from_cycles(3, &[&[1, 2], &[2, 3]]).is_err());
    }

    #[test]
    fn cycle_type_sizes_sum_to_n() {
        for n in 1..=6 {
            let mut count = 0;
            for p in Permutation::all(n) {
                assert_eq!(p.cycle_type().size(), n);
                assert_eq!(p.cycle_type().len(), p.cycle_count());
                count += 1;
            }
            assert_eq!(count, (1..=n).product::<usize>());
        }
    }

    #[test]
    fn prefix_split_covers_group() {
        let n = 5;
        let mut all: Vec<Permutation> = (0..n)
            .flat_map(|first| Permutation::all_with_first(n, first))
            .collect();
        assert_eq!(all.len(), 120);
        all.sort();
        all.dedup();
        assert_eq!(all.len(), 120);
    }

    fn arb_perm(n: usize) -> impl Strategy<Value = Permutation> {
        Just((0..n).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::from_images(v).unwrap())
    }

    fn arb_triple() -> impl Strategy<Value = (Permutation, Permutation, Permutation)> {
        (1usize..=8).prop_flat_map(|n| (arb_perm(n), arb_perm(n), arb_perm(n)))
    }

    proptest! {
        #[test]
        fn group_laws((f, g, h) in arb_triple()) {
            let n = f.len();
            let fg_h = f.compose(&g).unwrap().compose(&h).unwrap();
            let f_gh = f.compose(&g.compose(&h).unwrap()).unwrap();
            prop_assert_eq!(fg_h, f_gh);
            prop_assert!(f.compose(&f.inverse()).unwrap().is_identity());
            prop_assert!(f.inverse().compose(&f).unwrap().is_identity());
            prop_assert_eq!(f.compose(&Permutation::identity(n)).unwrap(), f.clone());
        }
    }
}
