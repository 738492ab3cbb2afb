//! Verification suites behind `thorntree verify`. Each covers every size
//! from 1 up to the requested `n`.

use std::collections::HashSet;

use thorntree::bijection::{
    classify, proportion_stats, psi, psi_inverse, Classification, InverseOutcome,
};
use thorntree::counting::{bprime_from_table, count_d, solve_b, verify_zagier_with};
use thorntree::oracle::{bprime_all, reformulation_probability, Budget};
use thorntree::report::{Provenance, Report};
use thorntree::structures::{BlackPartitionedStarMap, PermutedThornTree};
use thorntree::symfun::{verify_c2a, verify_d2b, verify_reduction};
use thorntree::{ExactRational, Partition, Result};

fn ratio(a: usize, b: usize) -> ExactRational {
    ExactRational::new(a.into(), b.into())
}

pub fn zagier(n: usize, budget: &Budget) -> Result<Report> {
    budget.check_sweep(n)?;
    let mut report = Report::new(format!("verify zagier {n}"));
    for size in 1..=n {
        let brute = bprime_all(size, budget)?;
        report.absorb(
            "oracle: ",
            verify_zagier_with(size, &brute, Provenance::Oracle),
        );
        let solved = bprime_from_table(&solve_b(size)?);
        report.absorb(
            "solver: ",
            verify_zagier_with(size, &solved, Provenance::Solver),
        );
    }
    Ok(report)
}

pub fn reformulation(n: usize, budget: &Budget) -> Result<Report> {
    budget.check_pairs(n)?;
    let mut report = Report::new(format!("verify reformulation {n}"));
    for size in 1..=n {
        for lam in Partition::all(size) {
            report.check(
                format!("D/C [{}]", lam.exponential()),
                ratio(1, size - lam.len() + 1),
                reformulation_probability(&lam, budget)?,
                Provenance::Oracle,
            );
        }
    }
    Ok(report)
}

pub fn identities(n: usize, budget: &Budget) -> Result<Report> {
    budget.check_sweep(n)?;
    let mut report = Report::new(format!("verify identities {n}"));
    for size in 1..=n {
        report.absorb(&format!("c2a n={size} "), verify_c2a(size)?);
        report.absorb(&format!("d2b n={size} "), verify_d2b(size)?);
        report.absorb(&format!("reduction n={size} "), verify_reduction(size)?);
    }
    Ok(report)
}

pub fn bijection(n: usize, budget: &Budget) -> Result<Report> {
    budget.check_pairs(n)?;
    let mut report = Report::new(format!("verify bijection {n}"));
    for size in 1..=n {
        for lam in Partition::all(size) {
            let tag = lam.exponential();
            let maps = BlackPartitionedStarMap::all_star_of_type(&lam, budget)?;
            let mut images = HashSet::new();
            let mut roundtrips = 0usize;
            for m in &maps {
                let t = psi(m)?;
                if let InverseOutcome::Success { map, .. } = psi_inverse(&t) {
                    if &map == m {
                        roundtrips += 1;
                    }
                }
                images.insert(t);
            }
            report.check(
                format!("injective [{tag}]"),
                maps.len(),
                images.len(),
                Provenance::Bijection,
            );
            report.check(
                format!("roundtrip [{tag}]"),
                maps.len(),
                roundtrips,
                Provenance::Bijection,
            );

            let mut image = 0usize;
            let mut agree = 0usize;
            let mut total = 0usize;
            for t in PermutedThornTree::all_of_type(&lam, budget)? {
                total += 1;
                let by_graph = classify(&t) == Classification::Image;
                if by_graph == psi_inverse(&t).is_success() {
                    agree += 1;
                }
                if by_graph {
                    image += 1;
                }
            }
            report.check(
                format!("image = P1 and P2 [{tag}]"),
                total,
                agree,
                Provenance::Bijection,
            );
            report.check(
                format!("|image| = D [{tag}]"),
                count_d(&lam)?,
                image,
                Provenance::Bijection,
            );
            report.check(
                format!("|image| = maps [{tag}]"),
                maps.len(),
                image,
                Provenance::Bijection,
            );
        }
    }
    Ok(report)
}

pub fn proportions(n: usize, budget: &Budget) -> Result<Report> {
    budget.check_pairs(n)?;
    let mut report = Report::new(format!("verify proportions {n}"));
    for size in 1..=n {
        for lam in Partition::all(size) {
            let p = lam.len();
            let tag = lam.exponential();
            let s = proportion_stats(&lam, budget)?;
            report.check(
                format!("P [{tag}]"),
                ratio(1, size - p + 1),
                &s.p,
                Provenance::Bijection,
            );
            report.check(
                format!("P' [{tag}]"),
                ratio(size, p * (size - p + 1)),
                &s.p_prime,
                Provenance::Bijection,
            );
            report.check(
                format!("P1 rate [{tag}]"),
                ratio(p, size),
                &s.p1_rate,
                Provenance::Bijection,
            );
        }
    }
    Ok(report)
}
