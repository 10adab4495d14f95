mod common;

use std::time::Duration;

use covercraft::codes::{verify_saturating, Partition};
use covercraft::gf::field_of_order;
use covercraft::io;
use covercraft::pg::{pg_points, PointSet};
use covercraft::search::*;
use covercraft::tables::{parse_tables, tables, write_tables, TableId};
use covercraft::Error;

const BUDGET: Duration = Duration::from_secs(120);

/// Calls `each` on every k-subset of the points of PG(v,q) until it returns true.
fn any_subset(v: usize, q: u64, k: usize, mut each: impl FnMut(&PointSet) -> bool) -> bool {
    let f = field_of_order(q).unwrap();
    let all = pg_points(v, &f).unwrap();
    let n = all.len();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let s = PointSet::new(&f, v, idx.iter().map(|&i| all.points()[i].clone()).collect()).unwrap();
        if each(&s) {
            return true;
        }
        let mut i = k;
        while i > 0 && idx[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return false;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn saturates(s: &PointSet, rho: usize) -> bool {
    common::smallest_rho_by_rank(s).is_some_and(|r| r <= rho)
}

#[test]
fn plane_minimum_sizes() {
    for (q, want) in [(3u64, 4usize), (4, 5), (5, 6)] {
        let f = field_of_order(q).unwrap();
        let res = exhaustive_min_saturating(2, &f, 1, 10, BUDGET).unwrap();
        assert_eq!(res.n_min, want, "q = {q}");
        assert!(res.lower_proven);
        assert_eq!(res.witness.len(), want);
        assert!(saturates(&res.witness, 1));
    }
}

#[test]
fn non_existence_agrees_with_brute_force() {
    assert!(!any_subset(2, 4, 4, |s| saturates(s, 1)));
    assert!(any_subset(2, 4, 5, |s| saturates(s, 1)));
    let f4 = field_of_order(4).unwrap();
    assert!(find_saturating_of_size(2, &f4, 1, 4, BUDGET).unwrap().witness.is_none());
    let f2 = field_of_order(2).unwrap();
    let brute = any_subset(3, 2, 4, |s| saturates(s, 1));
    assert_eq!(find_saturating_of_size(3, &f2, 1, 4, BUDGET).unwrap().witness.is_some(), brute);
    for n in 4..=6 {
        let brute = any_subset(3, 2, n, |s| saturates(s, 1));
        assert_eq!(find_saturating_of_size(3, &f2, 1, n, BUDGET).unwrap().witness.is_some(), brute, "n = {n}");
    }
}

#[test]
fn greedy_is_an_upper_bound() {
    for (v, q, rho) in [(2usize, 3u64, 1usize), (2, 4, 1), (2, 5, 1), (3, 2, 1), (3, 3, 2), (3, 4, 1)] {
        let f = field_of_order(q).unwrap();
        let g = greedy_saturating(v, &f, rho, &Seed::Basis).unwrap();
        assert!(saturates(&g, rho), "v={v} q={q}");
        assert!(verify_saturating(&g, None).unwrap().smallest_rho.is_some_and(|r| r <= rho));
        let e = exhaustive_min_saturating(v, &f, rho, g.len(), BUDGET).unwrap();
        assert!(e.n_min <= g.len());
    }
    let f4 = field_of_order(4).unwrap();
    let g = greedy_saturating(3, &f4, 1, &Seed::Basis).unwrap();
    assert!(g.len() <= 10, "{}", g.len());
    assert_eq!(exhaustive_min_saturating(3, &f4, 1, 10, BUDGET).unwrap().n_min, 9);
    let from_empty = greedy_saturating(2, &f4, 1, &Seed::Empty).unwrap();
    assert!(verify_saturating(&from_empty, Some(1)).unwrap().matches_claim);
    assert!(matches!(greedy_saturating(2, &f4, 3, &Seed::Basis), Err(Error::DomainViolation(_))));
}

#[test]
fn budget_is_enforced() {
    let f = field_of_order(4).unwrap();
    match exhaustive_min_saturating(3, &f, 1, 10, Duration::ZERO) {
        Err(Error::BudgetExceeded { upper, .. }) => assert!(upper.is_some()),
        other => panic!("{other:?}"),
    }
}

#[test]
fn small_tables() {
    let opts = ReproOptions { exact_qmax: 5, upper_qmax: 7, budget: BUDGET, r_max: 12 };
    let rows = table_reproduce(TableId::I, &opts).unwrap();
    assert!(!rows.is_empty());
    for r in &rows {
        assert!(matches!(r.status, ReproStatus::MatchExact | ReproStatus::MatchUpper), "{r:?}");
    }
    let vi = table_reproduce(TableId::VI, &opts).unwrap();
    assert_eq!(vi.len(), 18);
    assert_eq!(vi.iter().filter(|r| r.status == ReproStatus::Mismatch).count(), 1);
    let v = table_reproduce(TableId::V, &opts).unwrap();
    assert!(v.iter().all(|r| r.status == ReproStatus::FormulaMatch));
    assert!(table_reproduce(TableId::II, &opts).is_err());
}

#[test]
fn bound_checks() {
    assert!(bound_theorem_check(BoundKind::A).unwrap().pass);
    // l_64(4,3) = 16 puts b_64 exactly on its threshold
    let b = bound_theorem_check(BoundKind::B).unwrap();
    assert_eq!(b.rows.iter().map(|r| r.failures.clone()).collect::<Vec<_>>(), [vec![64], vec![], vec![]]);
    let c = bound_theorem_check(BoundKind::C).unwrap();
    assert!(!c.pass);
    assert!(c.rows.iter().any(|r| r.failures.contains(&27)));
    assert_eq!("5.3".parse::<BoundKind>().unwrap(), BoundKind::C);
}

#[test]
fn stored_tables_round_trip() {
    let text = write_tables(tables());
    assert_eq!(parse_tables(&text).unwrap(), tables());
}

#[test]
fn file_formats_round_trip() {
    let f = field_of_order(4).unwrap();
    let g = greedy_saturating(2, &f, 1, &Seed::Basis).unwrap();
    assert_eq!(io::read_points(&io::write_points(&g)).unwrap(), g);
    let c = covercraft::codes::code_from_set(&g).unwrap();
    assert_eq!(io::read_code(&io::write_code(&c)).unwrap(), c);
    let part = Partition::new(vec![vec![0, 2], vec![1], vec![3, 4]]);
    assert_eq!(io::read_partition(&io::write_partition(&part, 5)).unwrap(), (part, 5));
    assert!(io::read_code("garbage").is_err());
}
