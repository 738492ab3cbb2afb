//! Exact counts: Stirling numbers of the first kind, the class sizes `A(λ)`,
//! star thorn trees `S̃T(μ)`, partitioned maps `C(μ)` and star maps `D(λ)`,
//! and the triangular solver producing `B(λ)`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::partition::{binomial, factorial};
use crate::report::{Provenance, Report};
use crate::{Error, Partition, Result};

/// Largest size accepted by [`solve_b`].
pub const SOLVER_LIMIT: usize = 60;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    ST,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::ST => "ST",
        };
        f.write_str(s)
    }
}

/// One exact value per partition of `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    pub n: usize,
    pub family: Family,
    pub provenance: Provenance,
    entries: BTreeMap<Partition, BigUint>,
}

impl CountTable {
    pub fn new(n: usize, family: Family, provenance: Provenance) -> Self {
        CountTable {
            n,
            family,
            provenance,
            entries: BTreeMap::new(),
        }
    }

    pub fn from_fn(
        n: usize,
        family: Family,
        provenance: Provenance,
        mut f: impl FnMut(&Partition) -> Result<BigUint>,
    ) -> Result<Self> {
        let mut table = Self::new(n, family, provenance);
        for lam in Partition::all(n) {
            let v = f(&lam)?;
            table.entries.insert(lam, v);
        }
        Ok(table)
    }

    pub fn get(&self, lam: &Partition) -> Option<&BigUint> {
        self.entries.get(lam)
    }

    pub fn insert(&mut self, lam: Partition, value: BigUint) {
        self.entries.insert(lam, value);
    }

    /// Entries in decreasing lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = (&Partition, &BigUint)> {
        self.entries.iter().rev()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total(&self) -> BigUint {
        self.entries.values().sum()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("partition,value,provenance\n");
        for (lam, v) in self.iter() {
            out.push_str(&format!(
                "{},{},{}\n",
                lam.exponential(),
                v,
                provenance_name(self.provenance)
            ));
        }
        out
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Row<'a> {
            partition: &'a Partition,
            exponential: String,
            value: String,
        }
        #[derive(Serialize)]
        struct Wire<'a> {
            family: String,
            n: usize,
            provenance: Provenance,
            entries: Vec<Row<'a>>,
        }
        let wire = Wire {
            family: self.family.to_string(),
            n: self.n,
            provenance: self.provenance,
            entries: self
                .iter()
                .map(|(p, v)| Row {
                    partition: p,
                    exponential: p.exponential(),
                    value: v.to_string(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&wire).expect("tables serialize")
    }
}

pub(crate) fn provenance_name(p: Provenance) -> &'static str {
    match p {
        Provenance::Formula => "formula",
        Provenance::Solver => "solver",
        Provenance::Oracle => "oracle",
        Provenance::Bijection => "bijection",
        Provenance::Symfun => "symfun",
    }
}

/// Rows `s(0,·) … s(n,·)` of unsigned Stirling numbers of the first kind,
/// filled by `s(n,k) = s(n−1,k−1) + (n−1)·s(n−1,k)`.
pub fn stirling1_triangle(n: usize) -> Vec<Vec<BigUint>> {
    let mut rows: Vec<Vec<BigUint>> = vec![vec![BigUint::one()]];
    for m in 1..=n {
        let prev = &rows[m - 1];
        let row = (0..=m)
            .map(|k| {
                let from_new_cycle = if k >= 1 && k - 1 < prev.len() {
                    prev[k - 1].clone()
                } else {
                    BigUint::zero()
                };
                let from_insert = prev.get(k).map_or_else(BigUint::zero, |v| v * (m - 1));
                from_new_cycle + from_insert
            })
            .collect();
        rows.push(row);
    }
    rows
}

/// Number of permutations of `n` elements with exactly `k` cycles.
pub fn stirling1_unsigned(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    stirling1_triangle(n)[n][k].clone()
}

/// `A(μ) = |μ|!/z_μ`, the size of the conjugacy class of type `μ`.
pub fn count_a(mu: &Partition) -> BigUint {
    let (q, r) = factorial(mu.size()).div_rem(&mu.z());
    debug_assert!(r.is_zero());
    q
}

/// Number of star thorn trees of type `μ ⊢ N` with `p` parts:
/// `binomial(N, p) · p! / ∏ m_i(μ)!`. Edge positions on the white root are a
/// `p`-subset of the `N` slots; the black degrees along them are an
/// arrangement of the multiset `μ`.
pub fn count_st(mu: &Partition) -> BigUint {
    let n = mu.size();
    let p = mu.len();
    binomial(n, p) * factorial(p) / mu.aut()
}

/// `C(μ) = (N − p)! · S̃T(μ)`.
pub fn count_c(mu: &Partition) -> BigUint {
    factorial(mu.size() - mu.len()) * count_st(mu)
}

/// `D(λ) = (N − p)! · S̃T(λ) / (N − p + 1)`.
pub fn count_d(lam: &Partition) -> Result<BigUint> {
    let free = lam.size() - lam.len();
    let (q, r) = (factorial(free) * count_st(lam)).div_rem(&BigUint::from(free + 1));
    if !r.is_zero() {
        return Err(Error::InexactDivision(format!(
            "(N-p)!·ST({lam}) is not divisible by N-p+1 = {}",
            free + 1
        )));
    }
    Ok(q)
}

/// `B(λ)` for every `λ ⊢ n`, solving the main identity as a triangular
/// system.
///
/// Entries with `ℓ(λ) ≢ n (mod 2)` are zero. The others are resolved in
/// decreasing lexicographic order from the instance at `μ = λ↑(λ₁)`:
///
/// ```text
/// (n+1)/2 · Σ_{λ' = μ↓(i+1), i > 0} i · m_i(λ') · B(λ') = (n+1)!/z_μ
/// ```
///
/// Every `λ' ≠ λ` in that sum keeps the part `λ₁ + 1`, so it is already known.
pub fn solve_b(n: usize) -> Result<CountTable> {
    if n == 0 || n > SOLVER_LIMIT {
        return Err(Error::OutOfRange(format!(
            "solver accepts 1 <= n <= {SOLVER_LIMIT}, got {n}"
        )));
    }
    let mut table = CountTable::new(n, Family::B, Provenance::Solver);
    let n_plus_one = BigInt::from(n + 1);
    for lam in Partition::all(n) {
        if lam.len() % 2 != n % 2 {
            table.insert(lam, BigUint::zero());
            continue;
        }
        let top = lam.largest().expect("n >= 1");
        let mu = lam.up(top)?;
        let (weighted_sum, r) =
            (BigInt::from(count_a(&mu)) * BigInt::from(2u32)).div_rem(&n_plus_one);
        if !r.is_zero() {
            return Err(Error::InexactDivision(format!(
                "2·A({mu}) is not divisible by {}",
                n + 1
            )));
        }
        let mut residual = weighted_sum;
        for v in mu
            .distinct_parts()
            .into_iter()
            .filter(|&v| v >= 2 && v != top + 1)
        {
            let other = mu.down(v)?;
            let i = v - 1;
            let known = table
                .get(&other)
                .ok_or_else(|| Error::OutOfRange(format!("{other} not resolved before {lam}")))?;
            residual -= BigInt::from(i * other.multiplicity(i)) * BigInt::from(known.clone());
        }
        let coefficient = BigInt::from(top * lam.multiplicity(top));
        let (value, r) = residual.div_rem(&coefficient);
        if !r.is_zero() || value.sign() == num_bigint::Sign::Minus {
            return Err(Error::InexactDivision(format!(
                "B({lam}) = {residual}/{coefficient} is not a nonnegative integer"
            )));
        }
        table.insert(lam, value.to_biguint().expect("checked nonnegative"));
    }
    Ok(table)
}

/// `B′(n, m)` for `m = 0..=n` from a table of `B`.
pub fn bprime_from_table(table: &CountTable) -> Vec<BigUint> {
    let mut out = vec![BigUint::zero(); table.n + 1];
    for (lam, v) in table.iter() {
        out[lam.len()] += v;
    }
    out
}

/// `B′(n, m) = Σ_{λ ⊢ n, ℓ(λ) = m} B(λ)`, via the solver.
pub fn count_bprime(n: usize, m: usize) -> Result<BigUint> {
    if m == 0 || m > n {
        return Err(Error::OutOfRange(format!(
            "cycle count must satisfy 1 <= m <= n, got m = {m}, n = {n}"
        )));
    }
    Ok(bprime_from_table(&solve_b(n)?)[m].clone())
}

/// Checks `n(n+1)/2 · B′(n,m) = s(n+1,m)` for every `m ≡ n (mod 2)` and
/// `B′(n,m) = 0` for the other `m`. `bprime[m]` holds `B′(n,m)` for
/// `m = 0..=n`.
pub fn verify_zagier_with(n: usize, bprime: &[BigUint], provenance: Provenance) -> Report {
    let mut report = Report::new(format!("verify zagier {n}"));
    let stirling = &stirling1_triangle(n + 1)[n + 1];
    let weight = BigUint::from(n * (n + 1) / 2);
    for (m, s) in stirling.iter().enumerate().take(n + 1).skip(1) {
        let value = bprime.get(m).cloned().unwrap_or_default();
        if m % 2 == n % 2 {
            report.check(
                format!("n={n} m={m}: n(n+1)/2·B'(n,m) = s(n+1,m)"),
                s,
                &weight * value,
                provenance,
            );
        } else {
            report.check(format!("n={n} m={m}: B'(n,m) = 0"), 0, value, provenance);
        }
    }
    report
}

/// [`verify_zagier_with`] fed by the triangular solver.
pub fn verify_zagier(n: usize) -> Result<Report> {
    let table = solve_b(n)?;
    Ok(verify_zagier_with(
        n,
        &bprime_from_table(&table),
        Provenance::Solver,
    ))
}

/// Both sides of the main identity at `μ ⊢ N+1`:
/// `((N+1)/2 · Σ i·m_i(λ)·B(λ), A(μ))`, with the left side doubled to stay
/// integral, i.e. returns `((N+1)·Σ …, 2·A(μ))`.
pub fn main_identity_sides(mu: &Partition, b: &CountTable) -> Result<(BigUint, BigUint)> {
    let size = mu.size();
    let mut sum = BigUint::zero();
    for v in mu.distinct_parts().into_iter().filter(|&v| v >= 2) {
        let lam = mu.down(v)?;
        let i = v - 1;
        let value = b.get(&lam).ok_or_else(|| {
            Error::OutOfRange(format!("table of size {} has no entry {lam}", b.n))
        })?;
        sum += BigUint::from(i * lam.multiplicity(i)) * value;
    }
    Ok((BigUint::from(size) * sum, count_a(mu) * 2u32))
}

/// Checks `S̃T(μ)·(N+1−p)!·i·m_{i+1}(μ) = (N+1)·i·m_i(λ)·S̃T(λ)·(N−p)!`
/// for `μ = λ↑(i)`.
pub fn check_lift_recurrence(lam: &Partition, i: usize) -> Result<bool> {
    let mu = lam.up(i)?;
    let n = lam.size();
    let p = lam.len();
    let left = count_st(&mu) * factorial(n + 1 - p) * (i * mu.multiplicity(i + 1));
    let right = count_st(lam) * factorial(n - p) * ((n + 1) * i * lam.multiplicity(i));
    Ok(left == right)
}
