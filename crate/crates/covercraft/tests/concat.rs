use covercraft::codes::{extend, Code, Partition};
use covercraft::concat::*;
use covercraft::gf::field_create;
use covercraft::pg::theta;
use covercraft::Error;

fn arc4() -> Code {
    let f = field_create(3, 1).unwrap();
    Code::from_columns(&f, 3, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 1]]).unwrap()
}

fn sigma_code(copies: usize, m: usize, q: u64) -> Code {
    let f = covercraft::gf::field_of_order(q).unwrap();
    Code::new(sigma_matrix(copies, m, &f).unwrap()).unwrap()
}

fn check(out: &QmOutput) {
    assert_eq!(out.code.n() as u128, out.expected_length, "{}", out.variant);
    assert!(out.verified, "{} m={} not verified", out.variant, out.m);
    assert_eq!(out.radius, Some(out.radius_target), "{} m={}", out.variant, out.m);
}

#[test]
fn qm1_on_arc_code() {
    let v0 = arc4();
    for m in 1..=3 {
        let out = qm_construct(QmVariant::Qm1, &v0, &Partition::trivial(4), 0, m, None).unwrap();
        check(&out);
        assert_eq!(out.code.r(), 3 + 2 * m as usize);
    }
    let out = qm_construct(QmVariant::Qm1, &v0, &Partition::trivial(4), 0, 1, None).unwrap();
    assert_eq!((out.code.n(), out.code.n() - out.code.r()), (14, 9));
}

#[test]
fn qm2_on_extended_arc() {
    let v0 = extend(&arc4(), 1);
    // the repeated column must sit in its own subset to reach the zero syndrome
    let part = Partition::trivial(5);
    let out = qm_construct(QmVariant::Qm2, &v0, &part, 1, 2, None).unwrap();
    check(&out);
    assert_eq!(out.code.n(), 9 * 5 + 4);
}

#[test]
fn qm3_and_qm5_on_sigma() {
    // Sigma_{2,2} over GF(3) is a (2,2)-object once a column is repeated.
    let s = sigma_code(2, 2, 3);
    let v0 = extend(&s, 1);
    let part = Partition::trivial(9);
    let ell = covercraft::codes::partition_max_ell(&v0, &part, 2).unwrap();
    assert_eq!(ell, Some(2));
    let out = qm_construct(QmVariant::Qm3, &v0, &part, 2, 2, None).unwrap();
    check(&out);
    assert_eq!(out.code.n(), 81);

    for q in [2u64, 3, 4] {
        let v0 = sigma_code(2, 2, q);
        let n0 = v0.n();
        let part = Partition::new(vec![(0..n0 / 2).collect(), (n0 / 2..n0).collect()]);
        let out = qm_construct(QmVariant::Qm5, &v0, &part, 0, 1, None).unwrap();
        check(&out);
        assert_eq!(out.code.n() as u128, q as u128 * n0 as u128 + theta(1, q));
    }
}

#[test]
fn constraints_are_enforced() {
    let v0 = arc4();
    let e = qm_construct(QmVariant::Qm2, &v0, &Partition::trivial(4), 1, 1, None).unwrap_err();
    assert!(matches!(e, Error::PartitionInvalid | Error::ConstraintViolated { .. }));
    let e = qm_construct(QmVariant::Qm4, &v0, &Partition::trivial(4), 0, 2, None).unwrap_err();
    assert!(matches!(e, Error::AuxMissing(_)));
    let e = qm_construct(QmVariant::Qm7, &v0, &Partition::trivial(4), 0, 1, None).unwrap_err();
    assert!(matches!(e, Error::ConstraintViolated { .. }));
}

#[test]
fn qm4_with_aux_block() {
    let v0 = arc4();
    let f = v0.field().clone();
    // A_{1,2}: Hamming matrix W_2, radius 1.
    let aux = Code::new(hamming_pcm(2, &f).unwrap()).unwrap();
    let out = qm_construct(QmVariant::Qm4, &v0, &Partition::trivial(4), 0, 2, Some(&aux)).unwrap();
    check(&out);
    assert_eq!(out.code.n(), 9 * 4 + 4 + 4);
}

#[test]
fn direct_sum_and_doubling() {
    let f = field_create(3, 1).unwrap();
    let w = Code::new(hamming_pcm(2, &f).unwrap()).unwrap();
    let ds = direct_sum(&[w.clone(), w.clone()]).unwrap();
    assert_eq!((ds.n(), ds.r(), ds.covering_radius().unwrap()), (8, 4, 2));
    let mixed = direct_sum(&[arc4(), w]).unwrap();
    assert_eq!((mixed.n(), mixed.r(), mixed.covering_radius().unwrap()), (8, 5, 3));
    assert!(matches!(direct_sum(&[]), Err(Error::EmptyCode)));

    let d1 = doubling(&arc4()).unwrap();
    assert_eq!((d1.n(), d1.r(), d1.covering_radius().unwrap()), (8, 4, 2));
    let d2 = doubling(&d1).unwrap();
    assert_eq!((d2.n(), d2.n() - d2.r(), d2.covering_radius().unwrap()), (16, 11, 2));
    let f4 = field_create(2, 2).unwrap();
    let c4 = Code::new(hamming_pcm(2, &f4).unwrap()).unwrap();
    assert!(matches!(doubling(&c4), Err(Error::WrongField(_))));
}

#[test]
fn qm2_length_bookkeeping() {
    assert_eq!(QmVariant::Qm2.length(5, 3, 1, 3, 2, 0), 53);
    assert_eq!(QmVariant::Qm3.length(20, 3, 3, 64, 1, 0), 1280);
}
