use std::collections::BTreeSet;

use covercraft::blocking::*;
use covercraft::codes::{sphere_size, verify_saturating};
use covercraft::gf::{field_of_order, rank_of, FieldSpec};
use covercraft::pg::{line_points, pg_points, subgeometry_points, theta, PointSet, ProjPoint};
use covercraft::Error;
use num_traits::ToPrimitive;

/// Every hyperplane a.x = 0 meets B in a set of rank v.
fn hyperplanes_spanned(b: &PointSet) -> bool {
    let f = b.field();
    let v = b.v();
    pg_points(v, f).unwrap().points().iter().all(|a| {
        let inside: Vec<&[u32]> = b
            .points()
            .iter()
            .map(|p| p.coords())
            .filter(|x| x.iter().zip(a.coords()).fold(0, |acc, (&xi, &ai)| f.add(acc, f.mul(xi, ai))) == 0)
            .collect();
        rank_of(f, &inside) == v
    })
}

fn coords(s: &PointSet) -> BTreeSet<Vec<u32>> {
    s.points().iter().map(|p| p.coords().to_vec()).collect()
}

fn field(q: u64) -> FieldSpec {
    field_of_order(q).unwrap()
}

#[test]
fn strong_blocking_examples() {
    let all = pg_points(3, &field(2)).unwrap();
    assert!(verify_strong_blocking(&all, 3).unwrap().is_tfold_strong);
    let f = field(3);
    let collinear =
        PointSet::from_coords(&f, 2, &[vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 0]]).unwrap();
    let rep = verify_strong_blocking(&collinear, 2).unwrap();
    assert!(!rep.is_tfold_strong);
    assert!(!rep.failing_subspace_witnesses.is_empty());
}

#[test]
fn plain_blocking_examples() {
    let f = field(2);
    let all = pg_points(2, &f).unwrap();
    let minus = PointSet::new(&f, 2, all.points()[1..].to_vec()).unwrap();
    assert!(verify_tfold_blocking(&minus, 2, 1).unwrap());
    let f5 = field(5);
    let line = line_points(&f5, &ProjPoint::unit(2, 0), &ProjPoint::unit(2, 1)).unwrap();
    assert!(verify_tfold_blocking(&line, 1, 1).unwrap());
    assert!(!verify_tfold_blocking(&line, 2, 1).unwrap());
}

#[test]
fn four_lines_sets() {
    for q in 2..=5u64 {
        let f = field(q);
        let b = four_lines_set(&f).unwrap();
        assert_eq!(b.len() as u64, 4 * q + 4);
        let rep = verify_strong_blocking(&b, 3).unwrap();
        assert!(rep.is_tfold_strong && rep.is_tfold, "q = {q}");
        assert_eq!(rep.subspaces_checked as u128, theta(4, q));
        assert!(hyperplanes_spanned(&b));
        // l1, l2, l3 lie on x0 x1 = x2 x3 and the fourth line misses it
        let on = b.points().iter().filter(|p| {
            let x = p.coords();
            f.mul(x[0], x[1]) == f.mul(x[2], x[3])
        });
        assert_eq!(on.count() as u64, 3 * q + 3);
    }
    assert_eq!(four_lines_k(&field(3)).unwrap(), 2);
}

#[test]
fn shrunken_four_lines_are_not_strong() {
    // fewer than 3q+3 points can never be 3-fold strong in PG(3,q)
    for q in [2u64, 3] {
        let b = four_lines_set(&field(q)).unwrap();
        let keep = (3 * q + 2) as usize;
        let n = b.len();
        let mut idx: Vec<usize> = (0..keep).collect();
        loop {
            let sub = PointSet::new(b.field(), 3, idx.iter().map(|&i| b.points()[i].clone()).collect()).unwrap();
            assert!(!verify_strong_blocking(&sub, 3).unwrap().is_tfold_strong);
            let mut i = keep;
            while i > 0 && idx[i - 1] == n - keep + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            idx[i - 1] += 1;
            for j in i..keep {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
}

#[test]
fn construction_a_chain() {
    for q in [2u64, 3] {
        let f = field(q);
        let mut b = four_lines_set(&f).unwrap();
        for v in 4..=5usize {
            if q == 3 && v == 5 {
                break;
            }
            let next = construction_a_step(&b).unwrap();
            assert_eq!(next.len() as u64, b.len() as u64 + 1 + v as u64 * (q - 1));
            let vv = v as u64;
            assert_eq!(next.len() as u64, (q - 1) * (vv * (vv + 1) / 2 - 2) + vv + 5);
            assert!(hyperplanes_spanned(&next));
            b = next;
        }
    }
    let f = field(2);
    let sizes: Vec<usize> = {
        let b4 = construction_a_step(&four_lines_set(&f).unwrap()).unwrap();
        let b5 = construction_a_step(&b4).unwrap();
        vec![b4.len(), b5.len()]
    };
    assert_eq!(sizes, [17, 23]);
    let line = line_points(&f, &ProjPoint::unit(3, 0), &ProjPoint::unit(3, 1)).unwrap();
    assert_eq!(construction_a_step(&line).unwrap_err(), Error::NotStrongBlocking { t: 3 });
}

#[test]
fn weight_sets() {
    for v in 2..=5usize {
        for q in 2..=4u64 {
            let f = field(q);
            for k in 1..v {
                let s = weight_set_bk(v, &f, k).unwrap();
                let want = (sphere_size(v as u64 + 1, (v - k + 1) as u64, q) - 1u32) / (q - 1);
                assert_eq!(s.len() as u64, want.to_u64().unwrap(), "v={v} q={q} k={k}");
            }
        }
    }
    let s = weight_set_bk(3, &field(2), 2).unwrap();
    assert_eq!(s.len(), 10);
    assert!(verify_strong_blocking(&s, 3).unwrap().is_tfold_strong);
    assert!(verify_strong_blocking(&weight_set_bk(3, &field(3), 2).unwrap(), 3).unwrap().is_tfold_strong);
    assert!(verify_strong_blocking(&weight_set_bk(4, &field(2), 3).unwrap(), 4).unwrap().is_tfold_strong);
    assert!(verify_strong_blocking(&weight_set_bk(4, &field(2), 2).unwrap(), 3).unwrap().is_tfold_strong);
    // k = v-1 keeps exactly the points on coordinate lines
    let s = weight_set_bk(4, &field(3), 3).unwrap();
    assert!(s.points().iter().all(|p| p.weight() <= 2));
    assert!(weight_set_bk(3, &field(2), 3).is_err());
}

#[test]
fn nine_planes() {
    for qp in [2u64, 3, 4] {
        let s = nine_planes_set(qp).unwrap();
        assert_eq!(s.len() as u64, 9 * qp * qp - 8 * qp + 4);
        let members = coords(&s);
        for p in pg_points(4, s.field()).unwrap().points() {
            let x = p.coords();
            let zeros = x.iter().filter(|&&c| c == 0).count();
            let excluded = zeros == 0 || zeros == 1 || (zeros == 2 && x[1] == 0 && x[4] == 0);
            assert_eq!(members.contains(x), !excluded, "{x:?}");
        }
    }
}

#[test]
fn strong_blocking_to_saturating() {
    let f2 = field(2);
    let fano = pg_points(2, &f2).unwrap();
    let six = PointSet::new(&f2, 2, fano.points()[1..].to_vec()).unwrap();
    let s = strong_to_saturating(&six, 1).unwrap();
    assert_eq!((s.len(), s.field().q()), (6, 4));
    assert_eq!(verify_saturating(&s, Some(1)).unwrap().smallest_rho, Some(1));

    let b = four_lines_set(&f2).unwrap();
    let s = strong_to_saturating(&b, 2).unwrap();
    assert_eq!((s.len(), s.field().q()), (12, 8));
    assert!(verify_saturating(&s, None).unwrap().smallest_rho.is_some_and(|r| r <= 2));

    let line = line_points(&f2, &ProjPoint::unit(2, 0), &ProjPoint::unit(2, 1)).unwrap();
    assert_eq!(strong_to_saturating(&line, 1).unwrap_err(), Error::NotStrongBlocking { t: 2 });
}

#[test]
fn baer_pairs() {
    for (qp, root) in [(4u64, 2u64), (9, 3)] {
        let s = baer_pair_set(qp).unwrap();
        assert_eq!(s.len() as u64, 2 * (qp + root + 1));
        assert!(verify_tfold_blocking(&s, 2, 1).unwrap());
        let sub = subgeometry_points(2, &field(root), &field(qp)).unwrap();
        let base = coords(&sub);
        let both = coords(&s);
        assert!(base.is_subset(&both));
        assert_eq!(both.len(), 2 * base.len());
    }
    assert!(baer_pair_set(8).is_err());
}

#[test]
fn cubic_pairs() {
    let pair = cubic_blocking_pair(3).unwrap();
    assert_eq!(pair.set.len(), 80);
    assert_eq!(pair.set.field().q(), 27);
    assert!(verify_tfold_blocking(&pair.set, 2, 1).unwrap());
    assert_eq!(cubic_blocking_pair(2).unwrap_err(), Error::NoSuitableC(2));
}

#[test]
fn line_witnesses() {
    for q in [3u64, 4, 5, 7] {
        let f = field(q);
        let line = line_points(&f, &ProjPoint::unit(1, 0), &ProjPoint::unit(1, 1)).unwrap();
        for u in 2..=q as usize {
            if !admissible_u(q, u) {
                continue;
            }
            for target in 0..line.len() {
                let w = line_combination_witness(&line, target, u).unwrap();
                assert_eq!(w.len(), u);
                assert!(w.iter().all(|&(i, c)| i != target && c != 0));
            }
        }
    }
    let f = field(4);
    let line = line_points(&f, &ProjPoint::unit(1, 0), &ProjPoint::unit(1, 1)).unwrap();
    assert_eq!(line_combination_witness(&line, 0, 3).unwrap().len(), 3);
    assert!(admissible_u(5, 4));
}
