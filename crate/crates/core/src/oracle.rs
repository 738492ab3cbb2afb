//! Brute-force enumerators. Every count here comes from walking the whole
//! object space; nothing is derived from a closed form.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;

use crate::{Error, ExactRational, Partition, Permutation, Result, SetPartition};

/// Size limits for exhaustive sweeps. Requests beyond a limit are refused,
/// never truncated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Largest `n` for sweeps over the symmetric group `S_n`.
    pub sweep: usize,
    /// Largest `n` for sweeps over (map, set partition) pairs and over
    /// permuted thorn trees.
    pub pairs: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { sweep: 8, pairs: 6 }
    }
}

impl Budget {
    pub fn uniform(limit: usize) -> Self {
        Budget {
            sweep: limit,
            pairs: limit,
        }
    }

    pub fn check_sweep(&self, n: usize) -> Result<()> {
        if n > self.sweep {
            return Err(Error::BudgetExceeded {
                n,
                limit: self.sweep,
            });
        }
        Ok(())
    }

    pub fn check_pairs(&self, n: usize) -> Result<()> {
        if n > self.pairs {
            return Err(Error::BudgetExceeded {
                n,
                limit: self.pairs,
            });
        }
        Ok(())
    }
}

/// Per-type tallies of one sweep over `S_n`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TypeCensus {
    /// Permutations of each cycle type.
    pub all: BTreeMap<Partition, u64>,
    /// Permutations `β` of each type with `(1 2 … n)·β⁻¹` a long cycle.
    pub star: BTreeMap<Partition, u64>,
}

/// Walks `S_n` once, split by the image of 1 into independent work units.
pub fn census(n: usize, budget: &Budget) -> Result<TypeCensus> {
    if n == 0 {
        return Err(Error::OutOfRange("census needs n >= 1".into()));
    }
    budget.check_sweep(n)?;
    let long = Permutation::long_cycle(n)?;
    let parts: Vec<TypeCensus> = (0..n)
        .into_par_iter()
        .map(|first| {
            let mut local = TypeCensus::default();
            for beta in Permutation::all_with_first(n, first) {
                let shape = beta.cycle_type();
                let alpha = long.compose(&beta.inverse()).expect("same size");
                if alpha.is_long_cycle() {
                    *local.star.entry(shape.clone()).or_default() += 1;
                }
                *local.all.entry(shape).or_default() += 1;
            }
            local
        })
        .collect();
    let mut total = TypeCensus::default();
    for part in parts {
        for (k, v) in part.all {
            *total.all.entry(k).or_default() += v;
        }
        for (k, v) in part.star {
            *total.star.entry(k).or_default() += v;
        }
    }
    Ok(total)
}

/// Number of permutations of type `λ`.
pub fn enumerate_a(lam: &Partition, budget: &Budget) -> Result<BigUint> {
    let c = census(lam.size(), budget)?;
    Ok(BigUint::from(c.all.get(lam).copied().unwrap_or(0)))
}

/// Number of permutations `β` of type `λ` with `(1 2 … n)·β⁻¹` a long cycle.
pub fn enumerate_b(lam: &Partition, budget: &Budget) -> Result<BigUint> {
    let c = census(lam.size(), budget)?;
    Ok(BigUint::from(c.star.get(lam).copied().unwrap_or(0)))
}

/// `B′(n, m)` by direct sweep.
pub fn enumerate_bprime(n: usize, m: usize, budget: &Budget) -> Result<BigUint> {
    Ok(bprime_all(n, budget)?.get(m).cloned().unwrap_or_default())
}

/// `B′(n, m)` for `m = 0..=n` from a single sweep.
pub fn bprime_all(n: usize, budget: &Budget) -> Result<Vec<BigUint>> {
    let c = census(n, budget)?;
    let mut out = vec![BigUint::zero(); n + 1];
    for (lam, v) in c.star {
        out[lam.len()] += v;
    }
    Ok(out)
}

/// `(C(λ), D(λ))`: pairs `(β, π)` with `π` of type `λ` and every cycle of
/// `β` inside a block, and among them those with `(1 2 … n)·β⁻¹` long.
pub fn enumerate_cd(lam: &Partition, budget: &Budget) -> Result<(BigUint, BigUint)> {
    let n = lam.size();
    if n == 0 {
        return Err(Error::OutOfRange("pairs need n >= 1".into()));
    }
    budget.check_pairs(n)?;
    let long = Permutation::long_cycle(n)?;
    let (c, d) = SetPartition::all_of_type(lam)
        .par_iter()
        .map(|pi| {
            let mut c = 0u64;
            let mut d = 0u64;
            for beta in pi.permutations_within() {
                c += 1;
                if long
                    .compose(&beta.inverse())
                    .expect("same size")
                    .is_long_cycle()
                {
                    d += 1;
                }
            }
            (c, d)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    Ok((BigUint::from(c), BigUint::from(d)))
}

/// Counts star thorn trees of type `μ` by listing every placement of `p`
/// edges among the `N` root slots together with every ordering of the black
/// degrees, and deduplicating.
pub fn enumerate_st(mu: &Partition, budget: &Budget) -> Result<BigUint> {
    let n = mu.size();
    budget.check_sweep(n)?;
    let p = mu.len();
    let mut degrees: Vec<usize> = mu.parts().to_vec();
    degrees.sort_unstable();
    let mut orders = Vec::new();
    // Plain p! orderings, duplicates included; the set below removes them.
    let mut idx: Vec<usize> = (0..p).collect();
    loop {
        orders.push(idx.iter().map(|&i| degrees[i]).collect::<Vec<_>>());
        if !crate::permutation::next_permutation(&mut idx) {
            break;
        }
    }
    let mut seen = HashSet::new();
    for mask in 0u32..(1u32 << n) {
        if mask.count_ones() as usize != p {
            continue;
        }
        for order in &orders {
            seen.insert((mask, order.clone()));
        }
    }
    Ok(BigUint::from(seen.len()))
}

/// `D(λ)/C(λ)` as a reduced fraction: the chance that `(1 2 … n)·β⁻¹` is
/// long when `π` of type `λ` is drawn uniformly and then `β` uniformly inside
/// `π`. Pair-uniform counting agrees with that two-stage draw because every
/// `π` of type `λ` contains the same number of `β`.
pub fn reformulation_probability(lam: &Partition, budget: &Budget) -> Result<ExactRational> {
    let (c, d) = enumerate_cd(lam, budget)?;
    Ok(ExactRational::new(d.into(), c.into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn sweep_examples() {
        let b = Budget::default();
        assert_eq!(enumerate_a(&p("2,1,1"), &b).unwrap(), big(6));
        assert_eq!(enumerate_b(&p("3"), &b).unwrap(), big(1));
        assert_eq!(enumerate_b(&p("2,1"), &b).unwrap(), big(0));
        assert_eq!(enumerate_bprime(3, 1, &b).unwrap(), big(1));
        assert_eq!(enumerate_bprime(4, 2, &b).unwrap(), big(5));
        assert_eq!(enumerate_bprime(5, 1, &b).unwrap(), big(8));
    }

    #[test]
    fn stirling_by_enumeration() {
        let b = Budget::default();
        for n in 1..=7 {
            let c = census(n, &b).unwrap();
            let mut by_cycles = vec![0u64; n + 1];
            for (lam, v) in &c.all {
                by_cycles[lam.len()] += v;
            }
            for (k, &count) in by_cycles.iter().enumerate() {
                assert_eq!(big(count), crate::counting::stirling1_unsigned(n, k));
            }
        }
    }

    #[test]
    fn pair_examples() {
        let b = Budget::default();
        assert_eq!(enumerate_cd(&p("2,1"), &b).unwrap(), (big(6), big(3)));
        for n in 1..=6 {
            let fact: u64 = (1..=n as u64).product();
            assert_eq!(
                enumerate_cd(&Partition::row(n), &b).unwrap(),
                (big(fact), big(fact / n as u64))
            );
            assert_eq!(
                enumerate_cd(&Partition::column(n), &b).unwrap(),
                (big(1), big(1))
            );
        }
    }

    #[test]
    fn thorn_tree_examples() {
        let b = Budget::default();
        assert_eq!(enumerate_st(&p("1"), &b).unwrap(), big(1));
        assert_eq!(enumerate_st(&p("2"), &b).unwrap(), big(2));
        assert_eq!(enumerate_st(&p("2,1"), &b).unwrap(), big(6));
        assert_eq!(enumerate_st(&p("2,2"), &b).unwrap(), big(6));
    }

    #[test]
    fn probabilities() {
        let b = Budget::default();
        let half = ExactRational::new(1.into(), 2.into());
        assert_eq!(reformulation_probability(&p("2,1"), &b).unwrap(), half);
        assert_eq!(
            reformulation_probability(&Partition::row(5), &b).unwrap(),
            ExactRational::new(1.into(), 5.into())
        );
        assert_eq!(
            reformulation_probability(&Partition::column(4), &b).unwrap(),
            ExactRational::new(1.into(), 1.into())
        );
    }

    #[test]
    fn budget_is_enforced() {
        let b = Budget { sweep: 4, pairs: 3 };
        assert_eq!(
            enumerate_b(&p("5"), &b),
            Err(Error::BudgetExceeded { n: 5, limit: 4 })
        );
        assert!(enumerate_cd(&p("2,2"), &b).is_err());
        assert!(enumerate_st(&p("3,2"), &b).is_err());
    }
}
