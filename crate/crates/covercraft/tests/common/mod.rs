//! Independent brute-force oracles shared by the integration suites and the
//! acceptance harness.
#![allow(dead_code)]

use covercraft::codes::Code;
use covercraft::gf::{field_of_order, FieldSpec, Matrix};
use covercraft::pg::{pg_points, PointSet};
use rand::Rng;

/// max over syndromes of the least weight of a vector with that syndrome,
/// by enumerating all of F_q^n.
pub fn radius_by_vectors(c: &Code) -> usize {
    let f = c.field();
    let (q, n, r) = (f.q() as u64, c.n(), c.r());
    let h = c.h();
    let total = q.pow(n as u32);
    let mut best = vec![usize::MAX; q.pow(r as u32) as usize];
    let mut x = vec![0u32; n];
    for _ in 0..total {
        let w = x.iter().filter(|&&a| a != 0).count();
        let s = (0..r).fold(0u64, |acc, i| {
            let v = (0..n).fold(0u32, |a, j| f.add(a, f.mul(h.get(i, j), x[j])));
            acc * q + v as u64
        }) as usize;
        best[s] = best[s].min(w);
        for d in x.iter_mut() {
            *d += 1;
            if *d < q as u32 {
                break;
            }
            *d = 0;
        }
    }
    *best.iter().max().unwrap()
}

/// Random full-rank parity-check matrix without zero columns.
pub fn random_code(rng: &mut impl Rng, f: &FieldSpec, r: usize, n: usize) -> Code {
    loop {
        let data: Vec<u32> = (0..r * n).map(|_| rng.gen_range(0..f.q())).collect();
        let h = Matrix::new(f, r, n, data).unwrap();
        if h.rank() < r {
            continue;
        }
        if let Ok(c) = Code::new(h) {
            return c;
        }
    }
}

fn rank(f: &FieldSpec, rows: &[&[u32]]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let cols = rows[0].len();
    let data: Vec<u32> = rows.iter().flat_map(|r| r.iter().copied()).collect();
    Matrix::new(f, rows.len(), cols, data).unwrap().rank()
}

/// Smallest rho with every ambient point in the span of rho+1 points of S,
/// testing each point against each subset by a rank comparison.
pub fn smallest_rho_by_rank(s: &PointSet) -> Option<usize> {
    let f = s.field();
    let all = pg_points(s.v(), f).unwrap();
    let pts: Vec<&[u32]> = s.points().iter().map(|p| p.coords()).collect();
    'rho: for rho in 0..=s.v().min(pts.len() - 1) {
        let k = rho + 1;
        let mut subsets = Vec::new();
        combos(pts.len(), k, &mut Vec::new(), 0, &mut subsets);
        for x in all.points() {
            let hit = subsets.iter().any(|idx| {
                let mut gens: Vec<&[u32]> = idx.iter().map(|&i| pts[i]).collect();
                let before = rank(f, &gens);
                gens.push(x.coords());
                rank(f, &gens) == before
            });
            if !hit {
                continue 'rho;
            }
        }
        return Some(rho);
    }
    None
}

fn combos(n: usize, k: usize, cur: &mut Vec<usize>, start: usize, out: &mut Vec<Vec<usize>>) {
    if cur.len() == k {
        out.push(cur.clone());
        return;
    }
    for i in start..n {
        cur.push(i);
        combos(n, k, cur, i + 1, out);
        cur.pop();
    }
}

/// One representative of every [n, n-r]_q code up to column scaling and
/// permutation: H = [I_r | A] with the columns of A a multiset of
/// normalized nonzero vectors.
pub fn systematic_codes(q: u64, n: usize) -> Vec<Code> {
    let f = field_of_order(q).unwrap();
    let mut out = Vec::new();
    for r in 1..=n {
        let points: Vec<Vec<u32>> = pg_points(r - 1, &f).unwrap().points().iter().map(|p| p.coords().to_vec()).collect();
        let mut multisets = Vec::new();
        multisets_of(points.len(), n - r, &mut Vec::new(), 0, &mut multisets);
        for m in multisets {
            let mut cols: Vec<Vec<u32>> = (0..r).map(|i| (0..r).map(|j| u32::from(i == j)).collect()).collect();
            cols.extend(m.iter().map(|&i| points[i].clone()));
            out.push(Code::from_columns(&f, r, &cols).unwrap());
        }
    }
    out
}

fn multisets_of(n: usize, k: usize, cur: &mut Vec<usize>, start: usize, out: &mut Vec<Vec<usize>>) {
    if cur.len() == k {
        out.push(cur.clone());
        return;
    }
    for i in start..n {
        cur.push(i);
        multisets_of(n, k, cur, i, out);
        cur.pop();
    }
}

/// Random duplicate-free subset of PG(v,q) of the given size.
pub fn random_point_set(rng: &mut impl Rng, f: &FieldSpec, v: usize, size: usize) -> PointSet {
    let all = pg_points(v, f).unwrap();
    let mut idx: Vec<usize> = (0..all.len()).collect();
    for i in 0..size {
        let j = rng.gen_range(i..idx.len());
        idx.swap(i, j);
    }
    PointSet::new(f, v, idx[..size].iter().map(|&i| all.points()[i].clone()).collect()).unwrap()
}
