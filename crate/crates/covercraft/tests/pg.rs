use std::collections::BTreeSet;

use covercraft::gf::field_of_order;
use covercraft::pg::{
    frobenius_orbit, frobenius_point, line_points, normalize, pg_points, point_index, span_contains, span_dim,
    subgeometry_points, theta, PointSet, ProjPoint,
};
use covercraft::Error;

fn set_of(s: &PointSet) -> BTreeSet<Vec<u32>> {
    s.points().iter().map(|p| p.coords().to_vec()).collect()
}

#[test]
fn theta_and_counts() {
    assert_eq!(theta(1, 7), 1);
    assert_eq!(theta(2, 3), 4);
    assert_eq!(theta(5, 8), 4681);
    for (v, q) in [(2usize, 2u64), (2, 3), (3, 4), (4, 3), (2, 9), (3, 5)] {
        let f = field_of_order(q).unwrap();
        let pts = pg_points(v, &f).unwrap();
        assert_eq!(pts.len() as u128, theta(v as u32 + 1, q));
        let idx: Vec<u64> = pts.indices();
        assert!(idx.windows(2).all(|w| w[0] < w[1]), "enumeration order");
    }
}

#[test]
fn normalization_is_canonical() {
    for q in [2u64, 3, 4, 5, 7, 8, 9] {
        let f = field_of_order(q).unwrap();
        let vmax = if q <= 4 { 4 } else { 3 };
        for v in 1..=vmax {
            for p in pg_points(v, &f).unwrap().points() {
                let mut again = p.coords().to_vec();
                assert!(normalize(&f, &mut again));
                assert_eq!(again, p.coords());
                for a in 1..f.q() {
                    let mut x: Vec<u32> = p.coords().iter().map(|&c| f.mul(a, c)).collect();
                    normalize(&f, &mut x);
                    assert_eq!(x, p.coords());
                }
            }
        }
    }
    let f = field_of_order(3).unwrap();
    assert_eq!(ProjPoint::new(&f, vec![0, 0, 0]).unwrap_err(), Error::ZeroVector);
}

#[test]
fn spans() {
    let f = field_of_order(2).unwrap();
    let e = |i: usize| ProjPoint::unit(3, i);
    let plane = PointSet::new(&f, 3, vec![e(0), e(1), e(2)]).unwrap();
    assert_eq!(span_dim(&plane), 2);
    let inside = pg_points(3, &f).unwrap().points().iter().filter(|x| span_contains(&plane, x).unwrap()).count();
    assert_eq!(inside, 7);
    let one = PointSet::new(&f, 3, vec![e(1)]).unwrap();
    let only: Vec<_> =
        pg_points(3, &f).unwrap().points().iter().filter(|x| span_contains(&one, x).unwrap()).cloned().collect();
    assert_eq!(only, vec![e(1)]);
    assert_eq!(span_dim(&PointSet::new(&f, 3, vec![]).unwrap()), -1);
}

#[test]
fn lines() {
    let f = field_of_order(2).unwrap();
    let a = ProjPoint::unit(2, 0);
    let b = ProjPoint::unit(2, 1);
    let l = line_points(&f, &a, &b).unwrap();
    assert_eq!(set_of(&l), [vec![0, 1, 0], vec![1, 0, 0], vec![1, 1, 0]].into_iter().collect());
    assert_eq!(line_points(&f, &a, &a).unwrap_err(), Error::SamePoint);

    let f = field_of_order(3).unwrap();
    let pts = pg_points(3, &f).unwrap();
    for (i, p) in pts.points().iter().enumerate().step_by(3) {
        for q in pts.points()[i + 1..].iter().step_by(5) {
            let l = line_points(&f, p, q).unwrap();
            assert_eq!(l.len(), 4);
            assert_eq!(span_dim(&l), 1);
            assert_eq!(set_of(&l), set_of(&line_points(&f, q, p).unwrap()));
        }
    }
}

#[test]
fn subgeometries() {
    let (sub, sup) = (field_of_order(2).unwrap(), field_of_order(4).unwrap());
    let s = subgeometry_points(2, &sub, &sup).unwrap();
    assert_eq!(s.len(), 7);
    // each subgeometry line extends to a full line of PG(2,4) whose subgeometry part is 3 points
    let members = set_of(&s);
    for (i, a) in s.points().iter().enumerate() {
        for b in &s.points()[i + 1..] {
            let l = line_points(&sup, a, b).unwrap();
            assert_eq!(set_of(&l).intersection(&members).count(), 3);
        }
    }
    for x in s.points() {
        let y = frobenius_point(&sup, x, 2).unwrap();
        assert!(members.contains(y.coords()));
    }
    let big = subgeometry_points(3, &field_of_order(3).unwrap(), &field_of_order(27).unwrap()).unwrap();
    assert_eq!(big.len(), 40);
    let members = set_of(&big);
    for x in big.points() {
        assert!(members.contains(frobenius_point(big.field(), x, 3).unwrap().coords()));
    }
}

#[test]
fn frobenius_orbits() {
    let (sub, sup) = (field_of_order(2).unwrap(), field_of_order(4).unwrap());
    let base = subgeometry_points(2, &sub, &sup).unwrap();
    let members = set_of(&base);
    for x in base.points() {
        assert_eq!(frobenius_orbit(&sup, x, 2, 1).unwrap().len(), 1);
    }
    // the span of {P, P^2} is defined over GF(2), so it meets PG(2,2)
    for p in pg_points(2, &sup).unwrap().points() {
        let orbit = frobenius_orbit(&sup, p, 2, 1).unwrap();
        let meets =
            pg_points(2, &sup).unwrap().points().iter().any(|x| members.contains(x.coords()) && span_contains(&orbit, x).unwrap());
        assert!(meets, "{:?}", p.coords());
    }
    let f16 = field_of_order(16).unwrap();
    let p = ProjPoint::new(&f16, vec![1, 2, 7]).unwrap();
    let mut y = p.clone();
    for _ in 0..4 {
        y = frobenius_point(&f16, &y, 2).unwrap();
    }
    assert_eq!(y, p);
    assert_eq!(frobenius_orbit(&f16, &p, 8, 1).unwrap_err(), Error::NotSubfieldOrder(8));
}

#[test]
fn point_index_round_trip() {
    let f = field_of_order(5).unwrap();
    for (i, p) in pg_points(3, &f).unwrap().points().iter().enumerate() {
        assert_eq!(point_index(5, p.coords()), i as u64);
    }
}
