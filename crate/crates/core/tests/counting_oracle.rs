use num_bigint::BigUint;
use thorntree::counting::{count_a, count_bprime, solve_b, CountTable, Family};
use thorntree::oracle::{census, enumerate_bprime, Budget};
use thorntree::partition::factorial;
use thorntree::report::Provenance;
use thorntree::Partition;

#[test]
fn class_sizes_match_the_sweep() {
    for n in 1..=7 {
        let c = census(n, &Budget::default()).unwrap();
        for lam in Partition::all(n) {
            assert_eq!(BigUint::from(c.all[&lam]), count_a(&lam), "{lam}");
        }
        let table =
            CountTable::from_fn(n, Family::A, Provenance::Formula, |l| Ok(count_a(l))).unwrap();
        assert_eq!(table.total(), factorial(n));
    }
}

#[test]
fn bprime_solver_matches_sweep() {
    for n in 1..=7 {
        for m in 1..=n {
            assert_eq!(
                count_bprime(n, m).unwrap(),
                enumerate_bprime(n, m, &Budget::default()).unwrap()
            );
        }
    }
}

#[test]
fn golden_b_tables() {
    assert_eq!(
        solve_b(3).unwrap().to_csv(),
        "partition,value,provenance\n3^1,1,solver\n1^1 2^1,0,solver\n1^3,1,solver\n"
    );
    let t = solve_b(5).unwrap();
    assert_eq!(t.get(&Partition::row(5)), Some(&BigUint::from(8u8)));
    assert_eq!(t.get(&Partition::column(5)), Some(&BigUint::from(1u8)));
}

#[test]
fn solver_handles_large_sizes() {
    let t = solve_b(40).unwrap();
    assert_eq!(t.len(), Partition::all(40).len());
    assert!(solve_b(61).is_err());
    assert!(solve_b(0).is_err());
}
