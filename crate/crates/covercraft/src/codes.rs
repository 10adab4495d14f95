//! Linear codes given by a parity-check matrix: covering radius, minimum
//! distance, density, (R,l)-partitions and the point-set correspondence.

use std::sync::OnceLock;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{rank_of, row_reduce, FieldSpec, Matrix};
use crate::pg::{check_point_cap, for_each_span_point, normalize, PointSet, ProjPoint, DEFAULT_POINT_CAP};
use crate::syndrome::{Bitset, SyndromeSpace, DEFAULT_SYNDROME_CAP};
use crate::util::{binomial, for_each_combination};

/// Limit on n*log2(q) for the definitional radius oracle.
pub const ORACLE_MAX_BITS: f64 = 22.0;
const DISTANCE_CAP: u128 = 1 << 28;
const PARTITION_WORK_CAP: u128 = 1 << 32;
const SATURATION_SUBSET_CAP: u128 = 1 << 24;

#[derive(Clone, Debug)]
pub struct Code {
    h: Matrix,
    radius: OnceLock<usize>,
    distance: OnceLock<Option<usize>>,
}

impl PartialEq for Code {
    fn eq(&self, other: &Self) -> bool {
        self.h == other.h
    }
}

impl Code {
    pub fn new(h: Matrix) -> Result<Code> {
        if h.rows() == 0 || h.cols() == 0 {
            return Err(Error::EmptyCode);
        }
        if let Some(j) = (0..h.cols()).find(|&j| (0..h.rows()).all(|i| h.get(i, j) == 0)) {
            return Err(Error::ZeroColumn(j));
        }
        Ok(Code { h, radius: OnceLock::new(), distance: OnceLock::new() })
    }

    pub fn from_columns(field: &FieldSpec, r: usize, cols: &[Vec<u32>]) -> Result<Code> {
        Code::new(Matrix::from_columns(field, r, cols)?)
    }

    pub fn h(&self) -> &Matrix {
        &self.h
    }
    pub fn field(&self) -> &FieldSpec {
        self.h.field()
    }
    pub fn n(&self) -> usize {
        self.h.cols()
    }
    pub fn r(&self) -> usize {
        self.h.rows()
    }

    pub fn covering_radius(&self) -> Result<usize> {
        self.covering_radius_capped(DEFAULT_SYNDROME_CAP)
    }

    pub fn covering_radius_capped(&self, cap: u64) -> Result<usize> {
        if let Some(&r) = self.radius.get() {
            return Ok(r);
        }
        let r = covering_radius_bfs(self, cap)?;
        let _ = self.radius.set(r);
        Ok(r)
    }

    /// Minimum distance; None when the columns are independent (the code is {0}).
    pub fn min_distance(&self) -> Result<Option<usize>> {
        if let Some(&d) = self.distance.get() {
            return Ok(d);
        }
        let d = min_distance_search(self)?;
        let _ = self.distance.set(d);
        Ok(d)
    }

    /// Packed multiples a*h_j for every column and nonzero scalar.
    fn generators(&self, sp: &SyndromeSpace) -> Vec<Vec<u64>> {
        let f = self.field();
        (0..self.n())
            .map(|j| {
                let c = self.h.column(j);
                (1..f.q()).map(|a| sp.scaled(&c, a)).collect()
            })
            .collect()
    }
}

pub fn covering_radius(c: &Code) -> Result<usize> {
    c.covering_radius()
}

pub fn min_distance(c: &Code) -> Result<Option<usize>> {
    c.min_distance()
}

fn covering_radius_bfs(c: &Code, cap: u64) -> Result<usize> {
    let sp = SyndromeSpace::new(c.field(), c.r(), cap)?;
    let mut gens: Vec<u64> = c.generators(&sp).into_iter().flatten().collect();
    gens.sort_unstable();
    gens.dedup();
    let total = sp.total();
    let mut visited = Bitset::new(total);
    let mut layer = Bitset::new(total);
    let mut next = Bitset::new(total);
    visited.insert(0);
    layer.insert(0);
    let mut reached = 1u64;
    let mut radius = 0;
    while reached < total {
        next.clear();
        let mut fresh = 0u64;
        for idx in layer.ones() {
            let s = sp.from_index(idx);
            for &g in &gens {
                let j = sp.index(sp.add(s, g));
                if visited.insert(j) {
                    next.insert(j);
                    fresh += 1;
                }
            }
        }
        if fresh == 0 {
            return Err(Error::RankDeficient);
        }
        reached += fresh;
        radius += 1;
        std::mem::swap(&mut layer, &mut next);
    }
    Ok(radius)
}

/// Basis of the code {x : Hx = 0}.
pub fn null_space(h: &Matrix) -> Vec<Vec<u32>> {
    let f = h.field();
    let n = h.cols();
    let mut rows: Vec<Vec<u32>> = (0..h.rows()).map(|i| h.row(i).to_vec()).collect();
    let pivots = row_reduce(f, &mut rows, n);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut x = vec![0u32; n];
            x[fc] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                x[pc] = f.neg(rows[i][fc]);
            }
            x
        })
        .collect()
}

/// Radius from the sphere-covering definition: the largest Hamming distance
/// from a vector of F_q^n to the code, by multi-source BFS from all codewords.
pub fn covering_radius_oracle(c: &Code) -> Result<usize> {
    let f = c.field();
    let q = f.q() as u64;
    let n = c.n();
    let bits = n as f64 * (q as f64).log2();
    if bits > ORACLE_MAX_BITS + 1e-9 {
        return Err(Error::CapExceeded {
            what: "oracle vector space q^n",
            value: (q as u128).pow(n as u32),
            cap: 1 << 22,
        });
    }
    let total = q.pow(n as u32);
    let basis = null_space(c.h());
    let enc = |x: &[u32]| x.iter().rev().fold(0u64, |acc, &d| acc * q + d as u64);
    let mut dist = vec![u8::MAX; total as usize];
    let mut frontier = Vec::new();
    let k = basis.len();
    let mut coef = vec![0u32; k];
    loop {
        let mut w = vec![0u32; n];
        for (b, &a) in basis.iter().zip(&coef) {
            if a != 0 {
                for (wi, &bi) in w.iter_mut().zip(b) {
                    *wi = f.add(*wi, f.mul(a, bi));
                }
            }
        }
        let i = enc(&w);
        if dist[i as usize] != 0 {
            dist[i as usize] = 0;
            frontier.push(i);
        }
        let mut t = 0;
        while t < k {
            coef[t] += 1;
            if coef[t] < q as u32 {
                break;
            }
            coef[t] = 0;
            t += 1;
        }
        if t == k {
            break;
        }
    }
    let pw: Vec<u64> = (0..n).map(|i| q.pow(i as u32)).collect();
    let mut d = 0u8;
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &x in &frontier {
            for &p in &pw {
                let digit = (x / p) % q;
                for b in 0..q {
                    if b != digit {
                        let y = x - digit * p + b * p;
                        if dist[y as usize] == u8::MAX {
                            dist[y as usize] = d + 1;
                            next.push(y);
                        }
                    }
                }
            }
        }
        if !next.is_empty() {
            d += 1;
        }
        frontier = next;
    }
    Ok(d as usize)
}

fn min_distance_search(c: &Code) -> Result<Option<usize>> {
    let f = c.field();
    let n = c.n();
    let cols = c.h.columns();
    let mut normed: Vec<Vec<u32>> = cols.clone();
    for x in normed.iter_mut() {
        normalize(f, x);
    }
    let mut uniq = normed.clone();
    uniq.sort();
    uniq.dedup();
    if uniq.len() < n {
        return Ok(Some(2));
    }
    let r = c.r();
    let full = rank_of(f, &cols.iter().map(|v| v.as_slice()).collect::<Vec<_>>());
    if full == n {
        return Ok(None);
    }
    let mut work = 0u128;
    for d in 3..=r + 1 {
        work += binomial(n as u64, d as u64);
        if work > DISTANCE_CAP {
            return Err(Error::CapExceeded { what: "minimum distance combinations", value: work, cap: DISTANCE_CAP });
        }
        let mut found = false;
        for_each_combination(n, d, |idx| {
            let vs: Vec<&[u32]> = idx.iter().map(|&j| cols[j].as_slice()).collect();
            if rank_of(f, &vs) < d {
                found = true;
                return false;
            }
            true
        });
        if found {
            return Ok(Some(d));
        }
    }
    unreachable!("r+1 columns are always dependent")
}

/// V_q(n,R) = sum_{i<=R} (q-1)^i C(n,i).
pub fn sphere_size(n: u64, radius: u64, q: u64) -> BigUint {
    let mut total = BigUint::zero();
    let mut binom = BigUint::one();
    let mut pw = BigUint::one();
    for i in 0..=radius.min(n) {
        total += &binom * &pw;
        binom = binom * BigUint::from(n - i) / BigUint::from(i + 1);
        pw *= BigUint::from(q - 1);
    }
    total
}

/// V_q(n,R)/q^r as an exact rational.
pub fn covering_density(c: &Code, radius: usize) -> BigRational {
    let q = c.field().q() as u64;
    let v = sphere_size(c.n() as u64, radius as u64, q);
    let d = BigUint::from(q).pow(c.r() as u32);
    BigRational::new(v.into(), d.into())
}

/// Appends `delta` copies of the first column.
pub fn extend(c: &Code, delta: usize) -> Code {
    let mut cols = c.h.columns();
    let first = cols[0].clone();
    cols.extend(std::iter::repeat_n(first, delta));
    Code::from_columns(c.field(), c.r(), &cols).expect("duplicated nonzero column")
}

/// A partition of the column indices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    subsets: Vec<Vec<usize>>,
}

impl Partition {
    /// Sorts each subset and orders subsets by their smallest column.
    pub fn new(mut subsets: Vec<Vec<usize>>) -> Partition {
        for s in subsets.iter_mut() {
            s.sort_unstable();
        }
        subsets.sort_by_key(|s| s.first().copied().unwrap_or(usize::MAX));
        Partition { subsets }
    }

    /// Every column in its own subset.
    pub fn trivial(n: usize) -> Partition {
        Partition { subsets: (0..n).map(|j| vec![j]).collect() }
    }

    pub fn subsets(&self) -> &[Vec<usize>] {
        &self.subsets
    }

    pub fn len(&self) -> usize {
        self.subsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subsets.is_empty()
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        let mut seen = vec![false; n];
        for s in &self.subsets {
            if s.is_empty() {
                return Err(Error::InvalidPartition("empty subset".into()));
            }
            for &j in s {
                if j >= n {
                    return Err(Error::InvalidPartition(format!("column {j} out of range")));
                }
                if seen[j] {
                    return Err(Error::InvalidPartition(format!("column {j} repeated")));
                }
                seen[j] = true;
            }
        }
        if let Some(j) = seen.iter().position(|&b| !b) {
            return Err(Error::InvalidPartition(format!("column {j} missing")));
        }
        Ok(())
    }

    /// Subset index of every column.
    pub fn owner(&self, n: usize) -> Vec<usize> {
        let mut own = vec![0; n];
        for (i, s) in self.subsets.iter().enumerate() {
            for &j in s {
                own[j] = i;
            }
        }
        own
    }
}

/// Marks, per syndrome, which column counts k <= radius admit a combination
/// with nonzero coefficients from pairwise distinct subsets. Bit k of the
/// result byte is set when k columns suffice (k = 0 only for the zero syndrome).
fn partition_reach(c: &Code, part: &Partition, radius: usize) -> Result<(SyndromeSpace, Vec<u8>)> {
    part.validate(c.n())?;
    if radius > 7 {
        return Err(Error::CapExceeded { what: "partition radius", value: radius as u128, cap: 7 });
    }
    let sp = SyndromeSpace::new(c.field(), c.r(), DEFAULT_SYNDROME_CAP)?;
    let q = c.field().q() as u128;
    let work = sphere_size(c.n() as u64, radius as u64, q as u64);
    if work > BigUint::from(PARTITION_WORK_CAP) {
        return Err(Error::CapExceeded {
            what: "partition combinations",
            value: u128::MAX,
            cap: PARTITION_WORK_CAP,
        });
    }
    let gens = c.generators(&sp);
    let mut reach = vec![0u8; sp.total() as usize];
    fn rec(
        sp: &SyndromeSpace,
        subsets: &[Vec<usize>],
        gens: &[Vec<u64>],
        reach: &mut [u8],
        start: usize,
        k: usize,
        radius: usize,
        acc: u64,
    ) {
        reach[sp.index(acc) as usize] |= 1 << k;
        if k == radius {
            return;
        }
        for s in start..subsets.len() {
            for &j in &subsets[s] {
                for &g in &gens[j] {
                    rec(sp, subsets, gens, reach, s + 1, k + 1, radius, sp.add(acc, g));
                }
            }
        }
    }
    rec(&sp, part.subsets(), &gens, &mut reach, 0, 0, radius, 0);
    Ok((sp, reach))
}

/// True iff every syndrome (the zero one included) is a combination with
/// nonzero coefficients of k columns from distinct subsets for some
/// ell <= k <= radius. The zero syndrome counts as the empty combination
/// only when ell = 0.
pub fn verify_partition(c: &Code, part: &Partition, radius: usize, ell: usize) -> Result<bool> {
    if ell > radius {
        return Err(Error::InvalidPartition(format!("ell = {ell} exceeds R = {radius}")));
    }
    let (_, reach) = partition_reach(c, part, radius)?;
    let window: u8 = ((1u16 << (radius + 1)) - (1u16 << ell)) as u8;
    Ok(reach.iter().all(|&b| b & window != 0))
}

/// Largest ell for which `part` is an (R,ell)-partition; None when it is not
/// even an (R,0)-partition.
pub fn partition_max_ell(c: &Code, part: &Partition, radius: usize) -> Result<Option<usize>> {
    let (_, reach) = partition_reach(c, part, radius)?;
    Ok(max_ell_from_reach(&reach))
}

fn max_ell_from_reach(reach: &[u8]) -> Option<usize> {
    reach.iter().map(|&b| if b == 0 { None } else { Some(7 - b.leading_zeros() as usize) }).try_fold(
        usize::MAX,
        |acc, x| x.map(|x| acc.min(x)),
    )
}

/// Set partitions of 0..n as restricted growth strings.
pub fn set_partitions(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut a = vec![0usize; n];
    fn rec(a: &mut Vec<usize>, i: usize, maxv: usize, out: &mut Vec<Partition>) {
        if i == a.len() {
            let k = a.iter().copied().max().map_or(0, |m| m + 1);
            let mut subsets = vec![Vec::new(); k];
            for (j, &b) in a.iter().enumerate() {
                subsets[b].push(j);
            }
            out.push(Partition::new(subsets));
            return;
        }
        for v in 0..=maxv + 1 {
            a[i] = v;
            rec(a, i + 1, maxv.max(v), out);
        }
    }
    if n == 0 {
        return out;
    }
    a[0] = 0;
    rec(&mut a, 1, 0, &mut out);
    out
}

/// Exhaustive search over all set partitions (n <= 8) for the largest ell.
/// Returns None when the covering radius exceeds `radius`.
pub fn find_max_ell(c: &Code, radius: usize) -> Result<Option<(Partition, usize)>> {
    if c.n() > 8 {
        return Err(Error::CapExceeded { what: "columns for partition search", value: c.n() as u128, cap: 8 });
    }
    let mut best: Option<(Partition, usize)> = None;
    for part in set_partitions(c.n()) {
        if let Some(ell) = partition_max_ell(c, &part, radius)? {
            if best.as_ref().is_none_or(|(_, b)| ell > *b) {
                best = Some((part, ell));
                if ell == radius {
                    break;
                }
            }
        }
    }
    Ok(best)
}

pub fn code_from_set(s: &PointSet) -> Result<Code> {
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    let cols: Vec<Vec<u32>> = s.points().iter().map(|p| p.coords().to_vec()).collect();
    Code::from_columns(s.field(), s.v() + 1, &cols)
}

/// Normalized columns as points; also returns the indices of columns dropped
/// as repeats of an earlier column.
pub fn set_from_code(c: &Code) -> (PointSet, Vec<usize>) {
    let f = c.field();
    let mut pts = Vec::new();
    let mut dropped = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for j in 0..c.n() {
        let p = ProjPoint::new(f, c.h.column(j)).expect("nonzero column");
        if seen.insert(p.clone()) {
            pts.push(p);
        } else {
            dropped.push(j);
        }
    }
    (PointSet::new(f, c.r() - 1, pts).expect("deduplicated"), dropped)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RhoFailure {
    pub rho: usize,
    pub uncovered: u64,
    pub sample: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SaturationReport {
    /// None when S does not span the space (no rho works).
    pub smallest_rho: Option<usize>,
    pub claimed: Option<usize>,
    pub matches_claim: bool,
    pub witness_failures: Vec<RhoFailure>,
}

const FAILURE_SAMPLE: usize = 10;

/// Points covered by the spans of all (rho+1)-subsets of `s`.
pub fn saturation_coverage(s: &PointSet, rho: usize) -> Result<Bitset> {
    let q = s.field().q() as u64;
    let total = check_point_cap(s.v(), q, DEFAULT_POINT_CAP)?;
    let k = rho + 1;
    let subsets = binomial(s.len() as u64, k as u64);
    if subsets > SATURATION_SUBSET_CAP {
        return Err(Error::CapExceeded { what: "subsets of S", value: subsets, cap: SATURATION_SUBSET_CAP });
    }
    let mut cov = Bitset::new(total);
    let mut covered = 0u64;
    let pts: Vec<&[u32]> = s.points().iter().map(|p| p.coords()).collect();
    let f = s.field();
    for_each_combination(pts.len(), k, |idx| {
        let gens: Vec<&[u32]> = idx.iter().map(|&i| pts[i]).collect();
        for_each_span_point(f, &gens, |i| {
            if cov.insert(i) {
                covered += 1;
            }
        });
        covered < total
    });
    Ok(cov)
}

/// Smallest rho such that every point of PG(v,q) lies in the span of some
/// rho+1 points of S.
pub fn verify_saturating(s: &PointSet, claimed: Option<usize>) -> Result<SaturationReport> {
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    let q = s.field().q() as u64;
    let mut failures = Vec::new();
    let mut smallest = None;
    let top = s.v().min(s.len() - 1);
    for rho in 0..=top {
        let cov = saturation_coverage(s, rho)?;
        let uncovered = cov.len() - cov.count();
        if uncovered == 0 {
            smallest = Some(rho);
            break;
        }
        let sample = cov
            .zeros()
            .take(FAILURE_SAMPLE)
            .map(|i| crate::pg::point_from_index(q, s.v(), i))
            .collect();
        failures.push(RhoFailure { rho, uncovered, sample });
    }
    let matches_claim = claimed.is_none_or(|c| smallest == Some(c));
    Ok(SaturationReport { smallest_rho: smallest, claimed, matches_claim, witness_failures: failures })
}
