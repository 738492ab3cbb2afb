//! Symmetric functions of a fixed degree in the monomial and power-sum
//! bases, with exact rational coefficients.

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::Serialize;

use crate::counting::{count_a, count_c, count_d, main_identity_sides, solve_b};
use crate::partition::factorial;
use crate::report::{Provenance, Report};
use crate::{Error, ExactRational, Partition, Result};

/// Largest degree for which transition matrices are built.
pub const MAX_DEGREE: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    Monomial,
    Powersum,
}

impl Basis {
    fn name(self) -> &'static str {
        match self {
            Basis::Monomial => "monomial",
            Basis::Powersum => "powersum",
        }
    }
}

/// Dense coefficient vector over the partitions of `degree`, in decreasing
/// lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymPoly {
    degree: usize,
    basis: Basis,
    coeffs: Vec<ExactRational>,
}

struct Index {
    parts: Vec<Partition>,
    position: HashMap<Partition, usize>,
}

fn index(degree: usize) -> &'static Index {
    static CACHE: [OnceLock<Index>; MAX_DEGREE + 2] = [const { OnceLock::new() }; MAX_DEGREE + 2];
    CACHE[degree].get_or_init(|| {
        let parts = Partition::all(degree);
        let position = parts
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        Index { parts, position }
    })
}

fn check_degree(degree: usize) -> Result<()> {
    if degree > MAX_DEGREE + 1 {
        return Err(Error::OutOfRange(format!(
            "symmetric functions are limited to degree {}",
            MAX_DEGREE + 1
        )));
    }
    Ok(())
}

impl SymPoly {
    pub fn zero(degree: usize, basis: Basis) -> Result<Self> {
        check_degree(degree)?;
        Ok(SymPoly {
            degree,
            basis,
            coeffs: vec![ExactRational::zero(); index(degree).parts.len()],
        })
    }

    /// A single basis element, `m_λ` or `p_λ`.
    pub fn basis_element(lam: &Partition, basis: Basis) -> Result<Self> {
        let mut f = Self::zero(lam.size(), basis)?;
        f.coeffs[index(lam.size()).position[lam]] = ExactRational::one();
        Ok(f)
    }

    pub fn monomial(lam: &Partition) -> Result<Self> {
        Self::basis_element(lam, Basis::Monomial)
    }

    pub fn powersum(lam: &Partition) -> Result<Self> {
        Self::basis_element(lam, Basis::Powersum)
    }

    pub fn from_terms<I>(degree: usize, basis: Basis, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Partition, ExactRational)>,
    {
        let mut f = Self::zero(degree, basis)?;
        for (lam, c) in terms {
            if lam.size() != degree {
                return Err(Error::SizeMismatch {
                    left: degree,
                    right: lam.size(),
                });
            }
            f.coeffs[index(degree).position[&lam]] += c;
        }
        Ok(f)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn coeff(&self, lam: &Partition) -> ExactRational {
        index(self.degree)
            .position
            .get(lam)
            .map(|&i| self.coeffs[i].clone())
            .unwrap_or_default()
    }

    /// Nonzero terms in decreasing lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &ExactRational)> {
        index(self.degree)
            .parts
            .iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn same_space(&self, other: &SymPoly) -> Result<()> {
        if self.degree != other.degree {
            return Err(Error::SizeMismatch {
                left: self.degree,
                right: other.degree,
            });
        }
        self.expect_basis(other.basis)
    }

    fn expect_basis(&self, basis: Basis) -> Result<()> {
        if self.basis != basis {
            return Err(Error::BasisMismatch {
                expected: basis.name(),
                actual: self.basis.name(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &SymPoly) -> Result<SymPoly> {
        self.same_space(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(self.with_coeffs(coeffs))
    }

    pub fn sub(&self, other: &SymPoly) -> Result<SymPoly> {
        self.same_space(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(self.with_coeffs(coeffs))
    }

    pub fn scale(&self, c: &ExactRational) -> SymPoly {
        self.with_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    fn with_coeffs(&self, coeffs: Vec<ExactRational>) -> SymPoly {
        SymPoly {
            degree: self.degree,
            basis: self.basis,
            coeffs,
        }
    }

    /// Product of two power-sum expansions: `p_a · p_b = p_{a ∪ b}`.
    pub fn mul(&self, other: &SymPoly) -> Result<SymPoly> {
        self.expect_basis(Basis::Powersum)?;
        other.expect_basis(Basis::Powersum)?;
        let mut out = SymPoly::zero(self.degree + other.degree, Basis::Powersum)?;
        for (a, x) in self.terms() {
            for (b, y) in other.terms() {
                let mut parts = a.parts().to_vec();
                parts.extend_from_slice(b.parts());
                let lam = Partition::from_unsorted(parts)?;
                out.coeffs[index(out.degree).position[&lam]] += x * y;
            }
        }
        Ok(out)
    }

    pub fn to_basis(&self, basis: Basis) -> Result<SymPoly> {
        match (self.basis, basis) {
            (a, b) if a == b => Ok(self.clone()),
            (Basis::Monomial, Basis::Powersum) => m_to_p(self),
            _ => p_to_m(self),
        }
    }

    /// Value at a point; `m_λ` vanishes when the point has fewer coordinates
    /// than `λ` has parts.
    pub fn evaluate(&self, point: &[ExactRational]) -> ExactRational {
        let mut total = ExactRational::zero();
        for (lam, c) in self.terms() {
            let v = match self.basis {
                Basis::Powersum => lam
                    .parts()
                    .iter()
                    .map(|&k| point.iter().map(|x| pow(x, k)).sum::<ExactRational>())
                    .product(),
                Basis::Monomial => eval_monomial(lam, point),
            };
            total += c * v;
        }
        total
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Wire<'a> {
            basis: Basis,
            degree: usize,
            terms: Vec<(&'a Partition, String)>,
        }
        let wire = Wire {
            basis: self.basis,
            degree: self.degree,
            terms: self.terms().map(|(l, c)| (l, c.to_string())).collect(),
        };
        serde_json::to_string(&wire).expect("serializable")
    }
}

impl fmt::Display for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letter = match self.basis {
            Basis::Monomial => 'm',
            Basis::Powersum => 'p',
        };
        let mut first = true;
        for (lam, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}·{letter}{lam}")?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn pow(x: &ExactRational, k: usize) -> ExactRational {
    (0..k).fold(ExactRational::one(), |acc, _| acc * x)
}

fn eval_monomial(lam: &Partition, point: &[ExactRational]) -> ExactRational {
    if lam.len() > point.len() {
        return ExactRational::zero();
    }
    let mut exps: Vec<usize> = lam.parts().to_vec();
    exps.resize(point.len(), 0);
    exps.sort_unstable();
    let mut total = ExactRational::zero();
    loop {
        total += exps
            .iter()
            .zip(point)
            .map(|(&e, x)| pow(x, e))
            .product::<ExactRational>();
        if !crate::permutation::next_permutation(&mut exps) {
            break;
        }
    }
    total
}

// ---------------------------------------------------------------------------
// Change of basis
// ---------------------------------------------------------------------------

struct Transition {
    /// `p_ν = Σ_λ p_in_m[ν][λ] · m_λ`.
    p_in_m: Vec<Vec<ExactRational>>,
    /// `m_λ = Σ_ν m_in_p[λ][ν] · p_ν`.
    m_in_p: Vec<Vec<ExactRational>>,
}

fn transition(degree: usize) -> Result<&'static Transition> {
    static CACHE: [OnceLock<Transition>; MAX_DEGREE + 2] =
        [const { OnceLock::new() }; MAX_DEGREE + 2];
    check_degree(degree)?;
    Ok(CACHE[degree].get_or_init(|| build_transition(degree)))
}

/// Multiplies out each `p_ν` over `degree` variables. The coefficient of
/// `m_λ` is that of the monomial whose exponents are `λ` padded with zeros.
fn build_transition(degree: usize) -> Transition {
    let idx = index(degree);
    let vars = degree.max(1);
    let p_in_m: Vec<Vec<ExactRational>> = idx
        .parts
        .iter()
        .map(|nu| {
            let mut poly: HashMap<Vec<u8>, BigInt> = HashMap::new();
            poly.insert(vec![0; vars], BigInt::one());
            for &k in nu.parts() {
                let mut next: HashMap<Vec<u8>, BigInt> = HashMap::with_capacity(poly.len() * vars);
                for (exps, c) in &poly {
                    for v in 0..vars {
                        let mut e = exps.clone();
                        e[v] += k as u8;
                        *next.entry(e).or_default() += c;
                    }
                }
                poly = next;
            }
            idx.parts
                .iter()
                .map(|lam| {
                    let mut key: Vec<u8> = lam.parts().iter().map(|&x| x as u8).collect();
                    key.resize(vars, 0);
                    poly.get(&key)
                        .cloned()
                        .map(ExactRational::from_integer)
                        .unwrap_or_default()
                })
                .collect()
        })
        .collect();
    let m_in_p = invert(&p_in_m).expect("power sums form a basis");
    Transition { p_in_m, m_in_p }
}

/// Gauss–Jordan inverse over the rationals.
fn invert(m: &[Vec<ExactRational>]) -> Option<Vec<Vec<ExactRational>>> {
    let n = m.len();
    let mut a: Vec<Vec<ExactRational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    ExactRational::one()
                } else {
                    ExactRational::zero()
                }
            }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                let (src, dst) = if r < col {
                    let (lo, hi) = a.split_at_mut(col);
                    (&hi[0], &mut lo[r])
                } else {
                    let (lo, hi) = a.split_at_mut(r);
                    (&lo[col], &mut hi[0])
                };
                for (d, s) in dst.iter_mut().zip(src.iter()) {
                    *d -= &factor * s;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

fn apply(f: &SymPoly, matrix: &[Vec<ExactRational>], basis: Basis) -> SymPoly {
    let n = f.coeffs.len();
    let mut coeffs = vec![ExactRational::zero(); n];
    for (i, c) in f.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (j, x) in matrix[i].iter().enumerate() {
            if !x.is_zero() {
                coeffs[j] += c * x;
            }
        }
    }
    SymPoly {
        degree: f.degree,
        basis,
        coeffs,
    }
}

pub fn m_to_p(f: &SymPoly) -> Result<SymPoly> {
    f.expect_basis(Basis::Monomial)?;
    Ok(apply(f, &transition(f.degree)?.m_in_p, Basis::Powersum))
}

pub fn p_to_m(f: &SymPoly) -> Result<SymPoly> {
    f.expect_basis(Basis::Powersum)?;
    Ok(apply(f, &transition(f.degree)?.p_in_m, Basis::Monomial))
}

// ---------------------------------------------------------------------------
// The derivation Σ x_i² ∂/∂x_i
// ---------------------------------------------------------------------------

/// `Δ(p_π) = Σ_i i·m_i(π)·p_{π↑(i)}`, extended linearly.
pub fn delta(f: &SymPoly) -> Result<SymPoly> {
    f.expect_basis(Basis::Powersum)?;
    let mut out = SymPoly::zero(f.degree + 1, Basis::Powersum)?;
    let idx = index(out.degree);
    for (pi, c) in f.terms() {
        for i in pi.distinct_parts() {
            let w = ExactRational::from_integer(BigInt::from(i * pi.multiplicity(i)));
            out.coeffs[idx.position[&pi.up(i)?]] += c * w;
        }
    }
    Ok(out)
}

/// `Δ(m_λ) = Σ_i i·m_{i+1}(λ↑(i))·m_{λ↑(i)}`, extended linearly.
pub fn delta_monomial(f: &SymPoly) -> Result<SymPoly> {
    f.expect_basis(Basis::Monomial)?;
    let mut out = SymPoly::zero(f.degree + 1, Basis::Monomial)?;
    let idx = index(out.degree);
    for (lam, c) in f.terms() {
        for i in lam.distinct_parts() {
            let up = lam.up(i)?;
            let w = ExactRational::from_integer(BigInt::from(i * up.multiplicity(i + 1)));
            out.coeffs[idx.position[&up]] += c * w;
        }
    }
    Ok(out)
}

/// `e_n = Σ_{ν ⊢ n} (−1)^{n−ℓ(ν)} p_ν / z_ν`.
pub fn elementary_in_p(n: usize) -> Result<SymPoly> {
    if n == 0 {
        return Err(Error::OutOfRange("elementary functions need n >= 1".into()));
    }
    let terms = Partition::all(n).into_iter().map(|nu| {
        let sign = if (n - nu.len()).is_multiple_of(2) {
            1
        } else {
            -1
        };
        let c = ExactRational::new(BigInt::from(sign), BigInt::from(nu.z()));
        (nu, c)
    });
    SymPoly::from_terms(n, Basis::Powersum, terms)
}

// ---------------------------------------------------------------------------
// Generating-series identities
// ---------------------------------------------------------------------------

fn int(x: BigUint) -> ExactRational {
    ExactRational::from_integer(BigInt::from(x))
}

/// `Σ_μ C(μ)·Aut(μ)·m_μ` over `μ ⊢ n`.
pub fn c_series(n: usize) -> Result<SymPoly> {
    SymPoly::from_terms(
        n,
        Basis::Monomial,
        Partition::all(n).into_iter().map(|mu| {
            let c = int(count_c(&mu) * mu.aut());
            (mu, c)
        }),
    )
}

/// `Σ_λ D(λ)·Aut(λ)·m_λ` over `λ ⊢ n`.
pub fn d_series(n: usize) -> Result<SymPoly> {
    let mut terms = Vec::new();
    for lam in Partition::all(n) {
        let c = int(count_d(&lam)? * lam.aut());
        terms.push((lam, c));
    }
    SymPoly::from_terms(n, Basis::Monomial, terms)
}

/// `Σ_ν A(ν)·p_ν` over `ν ⊢ n`.
pub fn a_series(n: usize) -> Result<SymPoly> {
    SymPoly::from_terms(
        n,
        Basis::Powersum,
        Partition::all(n).into_iter().map(|nu| {
            let c = int(count_a(&nu));
            (nu, c)
        }),
    )
}

/// `Σ_π B(π)·p_π` over `π ⊢ n`, with `B` from the triangular solver.
pub fn b_series(n: usize) -> Result<SymPoly> {
    let table = solve_b(n)?;
    SymPoly::from_terms(
        n,
        Basis::Powersum,
        table.iter().map(|(lam, b)| (lam.clone(), int(b.clone()))),
    )
}

fn compare(report: &mut Report, label: &str, left: &SymPoly, right: &SymPoly) {
    for lam in &index(left.degree).parts {
        report.check(
            format!("{label} [{}]", lam.exponential()),
            right.coeff(lam),
            left.coeff(lam),
            Provenance::Symfun,
        );
    }
}

fn check_symfun_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_DEGREE {
        return Err(Error::OutOfRange(format!(
            "identity checks accept 1 <= n <= {MAX_DEGREE}, got {n}"
        )));
    }
    Ok(())
}

/// `Σ_μ C(μ)Aut(μ)m_μ = Σ_ν A(ν)p_ν`, compared coefficient-wise in both
/// bases.
pub fn verify_c2a(n: usize) -> Result<Report> {
    check_symfun_n(n)?;
    let mut report = Report::new(format!("verify c2a {n}"));
    let c = c_series(n)?;
    let a = a_series(n)?;
    compare(&mut report, "m-basis", &c, &p_to_m(&a)?);
    compare(&mut report, "p-basis", &m_to_p(&c)?, &a);
    Ok(report)
}

/// `Σ_λ D(λ)Aut(λ)m_λ = Σ_π B(π)p_π`, compared coefficient-wise in both
/// bases.
pub fn verify_d2b(n: usize) -> Result<Report> {
    check_symfun_n(n)?;
    let mut report = Report::new(format!("verify d2b {n}"));
    let d = d_series(n)?;
    let b = b_series(n)?;
    compare(&mut report, "m-basis", &d, &p_to_m(&b)?);
    compare(&mut report, "p-basis", &m_to_p(&d)?, &b);
    Ok(report)
}

/// Checks, at degree `n + 1`,
///
/// ```text
/// Σ_μ C(μ)Aut(μ)m_μ − (n+1)!·m_{1^{n+1}} = (n+1)·Δ(Σ_λ D(λ)Aut(λ)m_λ)
/// ```
///
/// and then reads each `p_μ` coefficient of the left side against both
/// sides of the main identity at `μ`.
pub fn verify_reduction(n: usize) -> Result<Report> {
    check_symfun_n(n + 1)?;
    let mut report = Report::new(format!("verify reduction {n}"));
    let size = n + 1;
    let fact = int(factorial(size));
    let column = SymPoly::monomial(&Partition::column(size))?;
    let left_m = c_series(size)?.sub(&column.scale(&fact))?;
    let scale = ExactRational::from_integer(BigInt::from(size));

    // Δ taken in the monomial basis and, independently, through power sums.
    let right_m = delta_monomial(&d_series(n)?)?.scale(&scale);
    compare(&mut report, "reduction m-basis", &left_m, &right_m);
    let right_p = delta(&m_to_p(&d_series(n)?)?)?.scale(&scale);
    let left_p = m_to_p(&left_m)?;
    compare(&mut report, "reduction p-basis", &left_p, &right_p);

    // The column term is (n+1)!·e_{n+1}.
    compare(
        &mut report,
        "column = e",
        &m_to_p(&column.scale(&fact))?,
        &elementary_in_p(size)?.scale(&fact),
    );

    let table = solve_b(n)?;
    for mu in Partition::all(size) {
        let (lifted, twice_a) = main_identity_sides(&mu, &table)?;
        let extracted = left_p.coeff(&mu);
        report.check(
            format!("extract [{}]: (n+1)·Σ i·m_i·B", mu.exponential()),
            int(lifted),
            &extracted,
            Provenance::Symfun,
        );
        let expected = if (size - mu.len()) % 2 == 1 {
            int(twice_a)
        } else {
            ExactRational::zero()
        };
        report.check(
            format!("extract [{}]: 2·A or 0 by parity", mu.exponential()),
            expected,
            &extracted,
            Provenance::Symfun,
        );
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn q(a: i64, b: i64) -> ExactRational {
        ExactRational::new(a.into(), b.into())
    }

    fn pt(xs: &[i64]) -> Vec<ExactRational> {
        xs.iter().map(|&x| q(x, 1)).collect()
    }

    #[test]
    fn low_degree_expansions() {
        let p1 = SymPoly::powersum(&p("1")).unwrap();
        assert_eq!(p_to_m(&p1).unwrap(), SymPoly::monomial(&p("1")).unwrap());
        let p2 = p_to_m(&SymPoly::powersum(&p("2")).unwrap()).unwrap();
        assert_eq!(p2.coeff(&p("2")), q(1, 1));
        assert_eq!(p2.coeff(&p("1,1")), q(0, 1));
        let p11 = p_to_m(&SymPoly::powersum(&p("1,1")).unwrap()).unwrap();
        assert_eq!(p11.coeff(&p("2")), q(1, 1));
        assert_eq!(p11.coeff(&p("1,1")), q(2, 1));
        for point in [pt(&[1, 1]), pt(&[1, 2]), pt(&[1, 2, 0])] {
            let f = SymPoly::powersum(&p("1,1")).unwrap();
            assert_eq!(f.evaluate(&point), p11.evaluate(&point));
        }
    }

    #[test]
    fn delta_examples() {
        let d = delta(&SymPoly::powersum(&p("1")).unwrap()).unwrap();
        assert_eq!(d, SymPoly::powersum(&p("2")).unwrap());
        let d = delta(&SymPoly::powersum(&p("2,2")).unwrap()).unwrap();
        assert_eq!(d, SymPoly::powersum(&p("3,2")).unwrap().scale(&q(4, 1)));
        assert!(delta(&SymPoly::monomial(&p("1")).unwrap()).is_err());
    }

    /// `Σ x_i² ∂/∂x_i (Σ x_i²)²` in five variables equals `4·p_3·p_2`.
    #[test]
    fn delta_against_explicit_derivative() {
        let x = pt(&[2, -1, 3, 5, 7]);
        let x = [
            x[0].clone(),
            x[1].clone(),
            x[2].clone(),
            x[3].clone(),
            x[4].clone(),
        ];
        let p2: ExactRational = x.iter().map(|v| v * v).sum();
        let p3: ExactRational = x.iter().map(|v| v * v * v).sum();
        // ∂/∂x_i (p_2)² = 4 x_i p_2, so Σ x_i² · 4 x_i p_2 = 4 p_3 p_2.
        let explicit: ExactRational = x.iter().map(|v| v * v * (q(4, 1) * v * &p2)).sum();
        assert_eq!(explicit, q(4, 1) * &p3 * &p2);
        let d = delta(&SymPoly::powersum(&p("2,2")).unwrap()).unwrap();
        assert_eq!(d.evaluate(&x), explicit);
    }

    #[test]
    fn delta_is_a_derivation() {
        for a in 1..=4 {
            for b in 1..=4 {
                for la in Partition::all(a) {
                    for lb in Partition::all(b) {
                        let pa = SymPoly::powersum(&la).unwrap();
                        let pb = SymPoly::powersum(&lb).unwrap();
                        let left = delta(&pa.mul(&pb).unwrap()).unwrap();
                        let right = delta(&pa)
                            .unwrap()
                            .mul(&pb)
                            .unwrap()
                            .add(&pa.mul(&delta(&pb).unwrap()).unwrap())
                            .unwrap();
                        assert_eq!(left, right);
                    }
                }
            }
        }
    }

    #[test]
    fn delta_agrees_across_bases() {
        for n in 1..=6 {
            for lam in Partition::all(n) {
                let m = SymPoly::monomial(&lam).unwrap();
                let via_p = p_to_m(&delta(&m_to_p(&m).unwrap()).unwrap()).unwrap();
                assert_eq!(delta_monomial(&m).unwrap(), via_p, "{lam}");
            }
        }
    }

    #[test]
    fn elementary() {
        assert_eq!(
            elementary_in_p(1).unwrap(),
            SymPoly::powersum(&p("1")).unwrap()
        );
        let e2 = elementary_in_p(2).unwrap();
        assert_eq!(e2.coeff(&p("1,1")), q(1, 2));
        assert_eq!(e2.coeff(&p("2")), q(-1, 2));
        // e_2(1, 2, 3) = 2 + 3 + 6.
        assert_eq!(e2.evaluate(&pt(&[1, 2, 3])), q(11, 1));
        for n in 1..=6 {
            let m = p_to_m(&elementary_in_p(n).unwrap()).unwrap();
            assert_eq!(m, SymPoly::monomial(&Partition::column(n)).unwrap());
        }
    }

    #[test]
    fn series_identities() {
        for n in 1..=5 {
            assert!(verify_c2a(n).unwrap().passed(), "c2a {n}");
            assert!(verify_d2b(n).unwrap().passed(), "d2b {n}");
        }
        for n in 1..=4 {
            let r = verify_reduction(n).unwrap();
            assert!(r.passed(), "{}", r.to_json());
        }
    }

    #[test]
    fn basis_errors() {
        let m = SymPoly::monomial(&p("2")).unwrap();
        assert!(p_to_m(&m).is_err());
        assert!(m.add(&SymPoly::monomial(&p("3")).unwrap()).is_err());
        assert!(SymPoly::zero(40, Basis::Monomial).is_err());
        assert_eq!(
            m.to_json(),
            r#"{"basis":"monomial","degree":2,"terms":[[[2],"1"]]}"#
        );
        assert_eq!(m.to_string(), "1·m(2)");
    }

    fn arb_poly() -> impl Strategy<Value = SymPoly> {
        (1usize..=7).prop_flat_map(|d| {
            let k = Partition::all(d).len();
            prop::collection::vec((-20i64..20, 1i64..6), k).prop_map(move |cs| SymPoly {
                degree: d,
                basis: Basis::Monomial,
                coeffs: cs.into_iter().map(|(a, b)| q(a, b)).collect(),
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn roundtrip(f in arb_poly()) {
            let p = m_to_p(&f).unwrap();
            prop_assert_eq!(&p_to_m(&p).unwrap(), &f);
            prop_assert_eq!(&m_to_p(&p_to_m(&p).unwrap()).unwrap(), &p);
        }

        #[test]
        fn evaluation_is_basis_free(f in arb_poly(), xs in prop::collection::vec(-3i64..4, 1..=7)) {
            let xs = pt(&xs);
            prop_assert_eq!(f.evaluate(&xs), m_to_p(&f).unwrap().evaluate(&xs));
        }
    }
}
