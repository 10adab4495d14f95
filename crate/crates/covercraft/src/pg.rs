//! Points and subspaces of PG(v,q).
//!
//! Points are normalized so the leftmost nonzero coordinate is 1. Enumeration
//! order is lexicographic on the integer-encoded coordinate vectors, which
//! gives a closed form for the index of a point (see [`point_index`]).

use crate::error::{Error, Result};
use crate::gf::{rank_of, Embedding, FieldSpec};

pub const DEFAULT_POINT_CAP: u64 = 1 << 24;

/// theta(m,q) = (q^m - 1)/(q - 1), the number of points of PG(m-1,q).
pub fn theta(m: u32, q: u64) -> u128 {
    (0..m).fold(0u128, |acc, _| acc * q as u128 + 1)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    coords: Vec<u32>,
}

impl ProjPoint {
    pub fn new(field: &FieldSpec, mut coords: Vec<u32>) -> Result<ProjPoint> {
        if let Some(&bad) = coords.iter().find(|&&x| x >= field.q()) {
            return Err(Error::OutOfRange { value: bad as u64, q: field.q() as u64 });
        }
        if !normalize(field, &mut coords) {
            return Err(Error::ZeroVector);
        }
        Ok(ProjPoint { coords })
    }

    /// Standard basis point e_i of PG(v,q).
    pub fn unit(v: usize, i: usize) -> ProjPoint {
        let mut coords = vec![0; v + 1];
        coords[i] = 1;
        ProjPoint { coords }
    }

    pub(crate) fn from_normalized(coords: Vec<u32>) -> ProjPoint {
        ProjPoint { coords }
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn weight(&self) -> usize {
        self.coords.iter().filter(|&&x| x != 0).count()
    }
}

/// Scales `x` so its leftmost nonzero entry is 1. Returns false for zero.
pub fn normalize(field: &FieldSpec, x: &mut [u32]) -> bool {
    let Some(lead) = x.iter().position(|&c| c != 0) else {
        return false;
    };
    let c = x[lead];
    if c != 1 {
        let inv = field.inv(c);
        for y in x[lead..].iter_mut() {
            *y = field.mul(*y, inv);
        }
    }
    true
}

/// Position of a normalized vector in the enumeration of PG(v,q).
pub fn point_index(q: u64, x: &[u32]) -> u64 {
    let lead = x.iter().position(|&c| c != 0).expect("nonzero point");
    let tail = &x[lead + 1..];
    let offset = tail.iter().fold(0u64, |acc, &c| acc * q + c as u64);
    theta(tail.len() as u32, q) as u64 + offset
}

/// Inverse of [`point_index`].
pub fn point_from_index(q: u64, v: usize, mut idx: u64) -> Vec<u32> {
    let mut len = 0u32;
    while theta(len + 1, q) as u64 <= idx {
        len += 1;
    }
    idx -= theta(len, q) as u64;
    let mut x = vec![0u32; v + 1];
    let lead = v - len as usize;
    x[lead] = 1;
    for i in (lead + 1..=v).rev() {
        x[i] = (idx % q) as u32;
        idx /= q;
    }
    x
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    v: usize,
    field: FieldSpec,
    points: Vec<ProjPoint>,
}

impl PointSet {
    /// Rejects repeated points and points of the wrong dimension.
    pub fn new(field: &FieldSpec, v: usize, points: Vec<ProjPoint>) -> Result<PointSet> {
        let mut seen = std::collections::HashSet::new();
        for pt in &points {
            if pt.dim() != v {
                return Err(Error::DimensionMismatch(format!(
                    "point of PG({},q) in a set of PG({v},q)",
                    pt.dim()
                )));
            }
            if !seen.insert(pt) {
                return Err(Error::DuplicatePoint);
            }
        }
        Ok(PointSet { v, field: field.clone(), points })
    }

    /// Keeps the first occurrence of every point.
    pub fn dedup(field: &FieldSpec, v: usize, points: impl IntoIterator<Item = ProjPoint>) -> PointSet {
        let mut seen = std::collections::HashSet::new();
        let points = points.into_iter().filter(|p| seen.insert(p.clone())).collect();
        PointSet { v, field: field.clone(), points }
    }

    pub fn from_coords(field: &FieldSpec, v: usize, rows: &[Vec<u32>]) -> Result<PointSet> {
        let pts = rows.iter().map(|r| ProjPoint::new(field, r.clone())).collect::<Result<Vec<_>>>()?;
        PointSet::new(field, v, pts)
    }

    pub fn v(&self) -> usize {
        self.v
    }
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }
    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }
    pub fn len(&self) -> usize {
        self.points.len()
    }
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.points.contains(p)
    }

    /// Ambient point indices of the members.
    pub fn indices(&self) -> Vec<u64> {
        let q = self.field.q() as u64;
        self.points.iter().map(|p| point_index(q, p.coords())).collect()
    }

    /// Same points listed in enumeration order.
    pub fn sorted(&self) -> PointSet {
        let q = self.field.q() as u64;
        let mut pts = self.points.clone();
        pts.sort_by_key(|p| point_index(q, p.coords()));
        PointSet { points: pts, ..self.clone() }
    }

    /// Union keeping the order of `self` then new points of `other`.
    pub fn union(&self, other: &PointSet) -> Result<PointSet> {
        if self.field != other.field || self.v != other.v {
            return Err(Error::DimensionMismatch("union of sets in different spaces".into()));
        }
        Ok(PointSet::dedup(&self.field, self.v, self.points.iter().chain(other.points.iter()).cloned()))
    }
}

pub fn check_point_cap(v: usize, q: u64, cap: u64) -> Result<u64> {
    let n = theta(v as u32 + 1, q);
    if n > cap as u128 {
        return Err(Error::CapExceeded { what: "points of PG(v,q)", value: n, cap: cap as u128 });
    }
    Ok(n as u64)
}

pub fn pg_points(v: usize, field: &FieldSpec) -> Result<PointSet> {
    pg_points_capped(v, field, DEFAULT_POINT_CAP)
}

pub fn pg_points_capped(v: usize, field: &FieldSpec, cap: u64) -> Result<PointSet> {
    let q = field.q() as u64;
    let n = check_point_cap(v, q, cap)?;
    let points = (0..n).map(|i| ProjPoint::from_normalized(point_from_index(q, v, i))).collect();
    Ok(PointSet { v, field: field.clone(), points })
}

fn check_dims(gens: &PointSet, x: &ProjPoint) -> Result<()> {
    if x.dim() != gens.v {
        return Err(Error::DimensionMismatch(format!("point of PG({},q) against PG({},q)", x.dim(), gens.v)));
    }
    Ok(())
}

pub fn span_dim(gens: &PointSet) -> isize {
    let vs: Vec<&[u32]> = gens.points.iter().map(|p| p.coords()).collect();
    rank_of(&gens.field, &vs) as isize - 1
}

pub fn span_contains(gens: &PointSet, x: &ProjPoint) -> Result<bool> {
    check_dims(gens, x)?;
    let mut vs: Vec<&[u32]> = gens.points.iter().map(|p| p.coords()).collect();
    let r = rank_of(&gens.field, &vs);
    vs.push(x.coords());
    Ok(rank_of(&gens.field, &vs) == r)
}

pub fn line_points(field: &FieldSpec, a: &ProjPoint, b: &ProjPoint) -> Result<PointSet> {
    if a == b {
        return Err(Error::SamePoint);
    }
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch("points of different spaces".into()));
    }
    let mut pts = vec![b.clone()];
    for lambda in 0..field.q() {
        let c: Vec<u32> =
            a.coords().iter().zip(b.coords()).map(|(&x, &y)| field.add(x, field.mul(lambda, y))).collect();
        pts.push(ProjPoint::new(field, c)?);
    }
    Ok(PointSet::dedup(field, a.dim(), pts).sorted())
}

/// Calls `f` with the ambient index of every point in the span of `gens`
/// (points may repeat when the generators are dependent).
pub fn for_each_span_point(field: &FieldSpec, gens: &[&[u32]], mut f: impl FnMut(u64)) {
    let k = gens.len();
    if k == 0 {
        return;
    }
    let n = gens[0].len();
    let q = field.q();
    let mut coef = vec![0u32; k];
    let mut buf = vec![0u32; n];
    // Normalized coefficient vectors: leading coefficient 1 at position `lead`.
    for lead in 0..k {
        coef.iter_mut().for_each(|c| *c = 0);
        coef[lead] = 1;
        loop {
            buf.copy_from_slice(gens[lead]);
            for i in lead + 1..k {
                if coef[i] != 0 {
                    for (b, &g) in buf.iter_mut().zip(gens[i]) {
                        *b = field.add(*b, field.mul(coef[i], g));
                    }
                }
            }
            if normalize(field, &mut buf) {
                f(point_index(q as u64, &buf));
            }
            let mut done = true;
            let mut i = k;
            while i > lead + 1 {
                i -= 1;
                coef[i] += 1;
                if coef[i] < q {
                    done = false;
                    break;
                }
                coef[i] = 0;
            }
            if done {
                break;
            }
        }
    }
}

/// Points of PG(v, sub) mapped coordinate-wise into PG(v, sup).
pub fn subgeometry_points(v: usize, sub: &FieldSpec, sup: &FieldSpec) -> Result<PointSet> {
    let emb = Embedding::new(sub, sup)?;
    let base = pg_points(v, sub)?;
    let pts = base
        .points
        .iter()
        .map(|p| ProjPoint::from_normalized(p.coords().iter().map(|&c| emb.apply(c)).collect()))
        .collect();
    Ok(PointSet { v, field: sup.clone(), points: pts })
}

/// Re-embeds a point set over a subfield into an extension field.
pub fn embed_set(set: &PointSet, sup: &FieldSpec) -> Result<PointSet> {
    let emb = Embedding::new(&set.field, sup)?;
    let pts = set
        .points
        .iter()
        .map(|p| ProjPoint::from_normalized(p.coords().iter().map(|&c| emb.apply(c)).collect()))
        .collect();
    Ok(PointSet { v: set.v, field: sup.clone(), points: pts })
}

pub fn frobenius_point(field: &FieldSpec, p: &ProjPoint, s: u64) -> Result<ProjPoint> {
    let c = p.coords().iter().map(|&x| field.frobenius(x, s)).collect::<Result<Vec<_>>>()?;
    ProjPoint::new(field, c)
}

/// {P, P^s, P^(s^2), ..., P^(s^rho)}, deduplicated.
pub fn frobenius_orbit(field: &FieldSpec, p: &ProjPoint, s: u64, rho: usize) -> Result<PointSet> {
    field.subfield_degree(s)?;
    let mut pts = vec![p.clone()];
    let mut cur = p.clone();
    for _ in 0..rho {
        cur = frobenius_point(field, &cur, s)?;
        pts.push(cur.clone());
    }
    Ok(PointSet::dedup(field, p.dim(), pts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::field_create;

    #[test]
    fn theta_values() {
        assert_eq!(theta(1, 7), 1);
        assert_eq!(theta(2, 3), 4);
        assert_eq!(theta(5, 8), 4681);
        assert_eq!(theta(0, 5), 0);
    }

    #[test]
    fn index_roundtrip() {
        let f = field_create(3, 1).unwrap();
        let all = pg_points(3, &f).unwrap();
        assert_eq!(all.len(), 40);
        for (i, p) in all.points().iter().enumerate() {
            assert_eq!(point_index(3, p.coords()), i as u64);
        }
        let mut sorted: Vec<Vec<u32>> = all.points().iter().map(|p| p.coords().to_vec()).collect();
        sorted.sort();
        assert_eq!(sorted, all.points().iter().map(|p| p.coords().to_vec()).collect::<Vec<_>>());
    }

    #[test]
    fn span_enumeration_counts() {
        let f = field_create(2, 2).unwrap();
        let a = [1, 0, 0, 0];
        let b = [0, 1, 1, 0];
        let c = [0, 0, 1, 1];
        let mut seen = std::collections::BTreeSet::new();
        for_each_span_point(&f, &[&a, &b, &c], |i| {
            seen.insert(i);
        });
        assert_eq!(seen.len(), 21);
        let mut n = 0;
        for_each_span_point(&f, &[&a], |_| n += 1);
        assert_eq!(n, 1);
    }

    #[test]
    fn fano_line() {
        let f = field_create(2, 1).unwrap();
        let a = ProjPoint::new(&f, vec![1, 0, 0]).unwrap();
        let b = ProjPoint::new(&f, vec![0, 1, 0]).unwrap();
        let l = line_points(&f, &a, &b).unwrap();
        let got: Vec<Vec<u32>> = l.points().iter().map(|p| p.coords().to_vec()).collect();
        assert_eq!(got, vec![vec![0, 1, 0], vec![1, 0, 0], vec![1, 1, 0]]);
        assert_eq!(line_points(&f, &a, &a).unwrap_err(), Error::SamePoint);
    }
}
