//! Integer partitions with the size-changing, length-preserving operators
//! `λ↑(i)` and `μ↓(j)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;

use crate::{Error, Result};

/// Weakly decreasing sequence of positive parts. The derived `Ord` compares
/// parts lexicographically, so the decreasing lexicographic order used by the
/// triangular solver is `Ord` reversed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("zero part in {parts:?}")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "parts {parts:?} are not weakly decreasing"
            )));
        }
        Ok(Partition { parts })
    }

    pub fn from_unsorted(mut parts: Vec<usize>) -> Result<Self> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::new(parts)
    }

    /// The one-row partition `(n)`.
    pub fn row(n: usize) -> Self {
        Partition { parts: vec![n] }
    }

    /// The one-column partition `1ⁿ`.
    pub fn column(n: usize) -> Self {
        Partition { parts: vec![1; n] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of parts, `ℓ(λ)`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn largest(&self) -> Option<usize> {
        self.parts.first().copied()
    }

    /// `m_i(λ)`, the number of parts equal to `i`.
    pub fn multiplicity(&self, i: usize) -> usize {
        self.parts.iter().filter(|&&p| p == i).count()
    }

    /// `(part, multiplicity)` pairs by increasing part.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in self.parts.iter().rev() {
            match out.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// Distinct part values, increasing.
    pub fn distinct_parts(&self) -> Vec<usize> {
        self.multiplicities().into_iter().map(|(p, _)| p).collect()
    }

    /// `λ↑(i)`: one part `i` becomes `i + 1`.
    pub fn up(&self, i: usize) -> Result<Partition> {
        let idx = self.position(i)?;
        let mut parts = self.parts.clone();
        parts[idx] += 1;
        Ok(Partition { parts })
    }

    /// `μ↓(j)`: one part `j ≥ 2` becomes `j - 1`.
    pub fn down(&self, j: usize) -> Result<Partition> {
        if j < 2 {
            return Err(Error::InvalidPartition(format!(
                "cannot lower a part {j} while keeping the length"
            )));
        }
        let idx = self.position(j)?;
        let mut parts = self.parts.clone();
        // The last occurrence keeps the sequence sorted after decrementing.
        let last = idx + self.parts[idx..].iter().take_while(|&&p| p == j).count() - 1;
        parts[last] -= 1;
        Ok(Partition { parts })
    }

    /// Removes one part equal to `k`.
    pub fn without_part(&self, k: usize) -> Result<Partition> {
        let idx = self.position(k)?;
        let mut parts = self.parts.clone();
        parts.remove(idx);
        Ok(Partition { parts })
    }

    /// Adds a part `k ≥ 1`.
    pub fn with_part(&self, k: usize) -> Result<Partition> {
        let mut parts = self.parts.clone();
        parts.push(k);
        Partition::from_unsorted(parts)
    }

    /// `μ↓(j,k) = μ ∖ (j, k) ∪ (j + k − 1)`: merges a part `j` and a part `k`.
    pub fn merge_parts(&self, j: usize, k: usize) -> Result<Partition> {
        self.without_part(j)?.without_part(k)?.with_part(j + k - 1)
    }

    fn position(&self, i: usize) -> Result<usize> {
        self.parts
            .iter()
            .position(|&p| p == i)
            .ok_or_else(|| Error::MissingPart {
                partition: self.to_string(),
                part: i,
            })
    }

    /// `z_λ = ∏ i^{m_i} · m_i!`, the centralizer order of a permutation of
    /// type `λ`.
    pub fn z(&self) -> BigUint {
        self.multiplicities()
            .into_iter()
            .fold(BigUint::one(), |acc, (i, m)| {
                acc * BigUint::from(i).pow(m as u32) * factorial(m)
            })
    }

    /// `Aut(λ) = ∏ m_i!`.
    pub fn aut(&self) -> BigUint {
        self.multiplicities()
            .into_iter()
            .fold(BigUint::one(), |acc, (_, m)| acc * factorial(m))
    }

    /// All partitions of `n` in decreasing lexicographic order.
    pub fn all(n: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut current = Vec::new();
        fill(n, n, &mut current, &mut out);
        out
    }

    /// Partitions of `n` whose length is congruent to `parity` modulo 2.
    pub fn all_with_parity(n: usize, parity: usize) -> Vec<Partition> {
        Self::all(n)
            .into_iter()
            .filter(|p| p.len() % 2 == parity % 2)
            .collect()
    }

    /// Exponential notation, e.g. `1^2 3^1 4^2`. The empty partition is `∅`.
    pub fn exponential(&self) -> String {
        if self.is_empty() {
            return "∅".into();
        }
        self.multiplicities()
            .into_iter()
            .map(|(i, m)| format!("{i}^{m}"))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn fill(remaining: usize, max: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition {
            parts: current.clone(),
        });
        return;
    }
    for part in (1..=remaining.min(max)).rev() {
        current.push(part);
        fill(remaining - part, part, current, out);
        current.pop();
    }
}

pub fn factorial(n: usize) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::default();
    }
    let k = k.min(n - k);
    (0..k).fold(BigUint::one(), |acc, i| {
        acc * BigUint::from(n - i) / BigUint::from(i + 1)
    })
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (idx, p) in self.parts.iter().enumerate() {
            if idx > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `4,2,1`, `(4,2,1)`, `4 2 1` or exponential `1^1 2^1 4^1`.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        let mut parts = Vec::new();
        for token in body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
        {
            let bad = || Error::InvalidPartition(format!("cannot parse {token:?}"));
            match token.split_once('^') {
                Some((base, exp)) => {
                    let base: usize = base.parse().map_err(|_| bad())?;
                    let exp: usize = exp.parse().map_err(|_| bad())?;
                    parts.extend(std::iter::repeat_n(base, exp));
                }
                None => parts.push(token.parse().map_err(|_| bad())?),
            }
        }
        Partition::from_unsorted(parts)
    }
}

impl serde::Serialize for Partition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(s)
    }
}

impl<'de> serde::Deserialize<'de> for Partition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<usize>::deserialize(d)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn operators_match_worked_examples() {
        assert_eq!(p("1^2 3^1 4^2").down(4).unwrap(), p("1^2 3^2 4^1"));
        assert_eq!(p("2^2 3^2 4^1").up(2).unwrap(), p("2^1 3^3 4^1"));
    }

    #[test]
    fn up_and_down_are_inverse() {
        for n in 1..=8 {
            for mu in Partition::all(n) {
                for j in mu.distinct_parts().into_iter().filter(|&j| j >= 2) {
                    let lowered = mu.down(j).unwrap();
                    assert_eq!(lowered.len(), mu.len());
                    assert_eq!(lowered.size() + 1, mu.size());
                    assert_eq!(lowered.up(j - 1).unwrap(), mu);
                }
                for i in mu.distinct_parts() {
                    let raised = mu.up(i).unwrap();
                    assert_eq!(raised.len(), mu.len());
                    assert_eq!(raised.down(i + 1).unwrap(), mu);
                }
            }
        }
    }

    #[test]
    fn missing_parts_are_rejected() {
        assert!(matches!(
            p("3,1").up(2),
            Err(Error::MissingPart { part: 2, .. })
        ));
        assert!(p("3,1").down(2).is_err());
        assert!(p("3,1").down(1).is_err());
    }

    #[test]
    fn z_and_aut() {
        assert_eq!(Partition::row(7).z(), BigUint::from(7u32));
        assert_eq!(p("2,1,1").z(), BigUint::from(4u32));
        assert_eq!(p("1^2 3^1 4^2").aut(), BigUint::from(4u32));
    }

    #[test]
    fn generation_order() {
        let four: Vec<String> = Partition::all(4).iter().map(|x| x.to_string()).collect();
        assert_eq!(four, ["(4)", "(3,1)", "(2,2)", "(2,1,1)", "(1,1,1,1)"]);
        assert_eq!(Partition::all(0), vec![Partition::default()]);
        let even: Vec<String> = Partition::all_with_parity(4, 0)
            .iter()
            .map(|x| x.to_string())
            .collect();
        assert_eq!(even, ["(3,1)", "(2,2)", "(1,1,1,1)"]);
        let counts: Vec<usize> = (0..=10).map(|n| Partition::all(n).len()).collect();
        assert_eq!(counts, [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
        for n in 1..=9 {
            let all = Partition::all(n);
            assert!(all.windows(2).all(|w| w[0] > w[1]));
        }
    }

    #[test]
    fn class_sizes_sum_to_factorial() {
        for n in 0..=10 {
            let total: BigUint = Partition::all(n).iter().map(|l| factorial(n) / l.z()).sum();
            assert_eq!(total, factorial(n));
        }
    }

    #[test]
    fn multiplicity_bookkeeping() {
        for lam in Partition::all(9) {
            let m = lam.multiplicities();
            assert_eq!(m.iter().map(|(i, c)| i * c).sum::<usize>(), lam.size());
            assert_eq!(m.iter().map(|(_, c)| c).sum::<usize>(), lam.len());
        }
    }

    #[test]
    fn merge_parts_lowers_length() {
        assert_eq!(p("3,2,2,1").merge_parts(2, 3).unwrap(), p("4,2,1"));
        assert_eq!(p("2,2").merge_parts(2, 2).unwrap(), p("3"));
        assert!(p("2,1").merge_parts(2, 2).is_err());
    }

    #[test]
    fn parsing_and_display() {
        assert_eq!(p("(4,2,1)").parts(), &[4, 2, 1]);
        assert_eq!(p("1 2 4").parts(), &[4, 2, 1]);
        assert_eq!(p("1^3 2^2").exponential(), "1^3 2^2");
        assert!("a,b".parse::<Partition>().is_err());
        assert!("0,1".parse::<Partition>().is_err());
        assert_eq!(binomial(6, 2), BigUint::from(15u32));
    }
}
