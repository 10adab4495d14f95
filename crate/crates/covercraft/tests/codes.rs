mod common;

use covercraft::codes::{
    code_from_set, covering_density, covering_radius_oracle, extend, find_max_ell, min_distance, set_from_code,
    sphere_size, verify_partition, verify_saturating, Code, Partition,
};
use covercraft::concat::hamming_pcm;
use covercraft::gf::{field_of_order, Matrix};
use covercraft::pg::{embed_set, pg_points, PointSet};
use covercraft::Error;
use num_bigint::BigUint;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn arc4() -> Code {
    let f = field_of_order(3).unwrap();
    Code::from_columns(&f, 3, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 1]]).unwrap()
}

fn hamming(q: u64, m: usize) -> Code {
    Code::new(hamming_pcm(m, &field_of_order(q).unwrap()).unwrap()).unwrap()
}

#[test]
fn radius_examples() {
    let f = field_of_order(3).unwrap();
    assert_eq!(Code::new(Matrix::identity(&f, 3)).unwrap().covering_radius().unwrap(), 3);
    assert_eq!(hamming(3, 2).covering_radius().unwrap(), 1);
    assert_eq!(arc4().covering_radius().unwrap(), 2);
    assert_eq!(covering_radius_oracle(&hamming(3, 2)).unwrap(), 1);
    let f2 = field_of_order(2).unwrap();
    assert_eq!(covering_radius_oracle(&Code::new(Matrix::identity(&f2, 3)).unwrap()).unwrap(), 3);
}

#[test]
fn distance_examples() {
    assert_eq!(min_distance(&hamming(3, 2)).unwrap(), Some(3));
    let f = field_of_order(3).unwrap();
    let c = Code::from_columns(&f, 2, &[vec![1, 0], vec![2, 0], vec![0, 1]]).unwrap();
    assert!(min_distance(&c).unwrap().unwrap() <= 2);
    // a [5,1]_4 code of radius 2: five points of PG(3,4), no four dependent
    let f4 = field_of_order(4).unwrap();
    let c = Code::from_columns(
        &f4,
        4,
        &[vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1], vec![1, 1, 1, 1]],
    )
    .unwrap();
    assert_eq!(min_distance(&c).unwrap(), Some(5));
}

#[test]
fn spheres_and_density() {
    assert_eq!(sphere_size(9, 0, 5), BigUint::from(1u32));
    assert_eq!(sphere_size(4, 2, 3), BigUint::from(33u32));
    assert_eq!(sphere_size(4, 2, 2), BigUint::from(11u32));
    let one = BigRational::from_integer(1.into());
    assert_eq!(covering_density(&hamming(3, 2), 1), one);
    assert_eq!(covering_density(&arc4(), 2), BigRational::new(33.into(), 27.into()));
    let ext = extend(&arc4(), 1);
    assert_eq!((ext.n(), ext.r()), (5, 3));
    assert_eq!(ext.covering_radius().unwrap(), 2);
    assert!(covering_density(&ext, 2) > covering_density(&arc4(), 2));
}

#[test]
fn partitions() {
    assert!(verify_partition(&hamming(3, 2), &Partition::trivial(4), 1, 0).unwrap());
    assert!(!verify_partition(&arc4(), &Partition::trivial(4), 2, 1).unwrap());
    assert_eq!(find_max_ell(&hamming(3, 2), 1).unwrap().unwrap().1, 0);
    assert!(matches!(
        verify_partition(&arc4(), &Partition::new(vec![vec![0, 1]]), 2, 0),
        Err(Error::InvalidPartition(_))
    ));
}

#[test]
fn set_code_correspondence_examples() {
    let f = field_of_order(3).unwrap();
    let arc = PointSet::from_coords(&f, 2, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 1]]).unwrap();
    let c = code_from_set(&arc).unwrap();
    assert_eq!((c.n(), c.r(), c.covering_radius().unwrap()), (4, 3, 2));
    assert_eq!(set_from_code(&c).0, arc);
    assert_eq!(verify_saturating(&arc, Some(1)).unwrap().smallest_rho, Some(1));
    let all = pg_points(2, &f).unwrap();
    assert_eq!(verify_saturating(&all, None).unwrap().smallest_rho, Some(0));

    let f2 = field_of_order(2).unwrap();
    let fano = pg_points(2, &f2).unwrap();
    let h = code_from_set(&fano).unwrap();
    assert_eq!((h.n(), h.covering_radius().unwrap()), (7, 1));

    // the Fano plane minus a point is 1-saturating in PG(2,4)
    let six = PointSet::new(&f2, 2, fano.points()[1..].to_vec()).unwrap();
    let big = embed_set(&six, &field_of_order(4).unwrap()).unwrap();
    assert_eq!(verify_saturating(&big, Some(1)).unwrap().smallest_rho, Some(1));

    let dup = Code::from_columns(&f, 2, &[vec![1, 0], vec![2, 0], vec![0, 1]]).unwrap();
    let (set, dropped) = set_from_code(&dup);
    assert_eq!(set.len(), 2);
    assert_eq!(dropped, vec![1]);
    assert_eq!(code_from_set(&PointSet::new(&f, 2, vec![]).unwrap()).unwrap_err(), Error::EmptySet);
}

#[test]
fn radius_matches_oracles_on_random_codes() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    for &(q, nmax) in &[(2u64, 10usize), (3, 7), (4, 6), (5, 5)] {
        let f = field_of_order(q).unwrap();
        for _ in 0..130 {
            let n = 2 + checked % (nmax - 1);
            let r = 1 + (checked / 3) % n;
            let c = common::random_code(&mut rng, &f, r, n);
            let want = common::radius_by_vectors(&c);
            assert_eq!(c.covering_radius().unwrap(), want, "{:?}", c.h());
            assert_eq!(covering_radius_oracle(&c).unwrap(), want);
            checked += 1;
        }
    }
    assert!(checked >= 500);
}

#[test]
fn radius_equals_saturation_plus_one() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for q in 2..=5u64 {
        let f = field_of_order(q).unwrap();
        for v in 1..=3usize {
            let npts = pg_points(v, &f).unwrap().len();
            for size in (v + 1)..=npts.min(12) {
                let s = common::random_point_set(&mut rng, &f, v, size);
                let rho = verify_saturating(&s, None).unwrap().smallest_rho;
                assert_eq!(rho, common::smallest_rho_by_rank(&s));
                match code_from_set(&s).and_then(|c| c.covering_radius()) {
                    Ok(radius) => assert_eq!(Some(radius), rho.map(|x| x + 1)),
                    Err(Error::RankDeficient) => assert_eq!(rho, None),
                    Err(e) => panic!("{e}"),
                }
            }
        }
    }
}

#[test]
fn max_ell_positive_iff_distance_at_most_radius() {
    for (q, nmax) in [(2u64, 6usize), (3, 6)] {
        for n in 1..=nmax {
            for c in common::systematic_codes(q, n) {
                let radius = c.covering_radius().unwrap();
                let d = min_distance(&c).unwrap();
                let (part, ell) = find_max_ell(&c, radius).unwrap().expect("trivial partition works with ell 0");
                assert_eq!(ell >= 1, d.is_some_and(|d| d <= radius), "q={q} H={:?}", c.h());
                assert!(verify_partition(&c, &part, radius, ell).unwrap());
            }
        }
    }
}

#[test]
fn trivial_partition_matches_radius() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let f = field_of_order(3).unwrap();
    for _ in 0..60 {
        let c = common::random_code(&mut rng, &f, 3, 5);
        let radius = c.covering_radius().unwrap();
        for r in 1..=4 {
            assert_eq!(verify_partition(&c, &Partition::trivial(5), r, 0).unwrap(), radius <= r);
        }
        assert!(covering_density(&c, radius) >= BigRational::from_integer(1.into()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn extension_keeps_radius(seed in any::<u64>(), delta in 1usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = field_of_order(4).unwrap();
        let c = common::random_code(&mut rng, &f, 3, 4);
        let e = extend(&c, delta);
        prop_assert_eq!(e.n(), c.n() + delta);
        prop_assert_eq!(e.r(), c.r());
        prop_assert_eq!(e.covering_radius().unwrap(), c.covering_radius().unwrap());
    }

    #[test]
    fn set_code_round_trip(seed in any::<u64>(), size in 3usize..10) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = field_of_order(5).unwrap();
        let s = common::random_point_set(&mut rng, &f, 2, size).sorted();
        if let Ok(c) = code_from_set(&s) {
            prop_assert_eq!(set_from_code(&c).0, s);
        }
    }
}
