//! Multifold (strong) blocking sets and the point-set constructions built
//! from them.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{field_create, field_of_order, prime_power, rank_of, FieldSpec, Matrix};
use crate::pg::{embed_set, line_points, normalize, pg_points, subgeometry_points, theta, PointSet, ProjPoint};
use crate::util::for_each_combination;

pub const DEFAULT_SUBSPACE_CAP: u128 = 1 << 24;
const WITNESS_SAMPLE: usize = 10;

/// Number of k-dimensional vector subspaces of F_q^n.
pub fn gaussian_binomial(n: u32, k: u32, q: u64) -> u128 {
    if k > n {
        return 0;
    }
    let q = q as u128;
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..k {
        num *= q.pow(n - i) - 1;
        den *= q.pow(i + 1) - 1;
    }
    num / den
}

/// A subspace given by a generator matrix in reduced row echelon form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subspace {
    pub rows: Vec<Vec<u32>>,
    pub pivots: Vec<usize>,
}

impl Subspace {
    pub fn contains(&self, f: &FieldSpec, x: &[u32]) -> bool {
        let mut y = x.to_vec();
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let a = y[c];
            if a != 0 {
                for (yi, &ri) in y.iter_mut().zip(row) {
                    *yi = f.sub(*yi, f.mul(a, ri));
                }
            }
        }
        y.iter().all(|&v| v == 0)
    }
}

/// Visits every t-dimensional subspace of F_q^n exactly once, as the row
/// space of its canonical RREF generator matrix. Stops when `f` returns false.
pub fn for_each_subspace(field: &FieldSpec, n: usize, t: usize, mut f: impl FnMut(&Subspace) -> bool) -> Result<()> {
    let count = gaussian_binomial(n as u32, t as u32, field.q() as u64);
    if count > DEFAULT_SUBSPACE_CAP {
        return Err(Error::CapExceeded { what: "subspaces", value: count, cap: DEFAULT_SUBSPACE_CAP });
    }
    let q = field.q();
    for_each_combination(n, t, |piv| {
        let free: Vec<(usize, usize)> = (0..t)
            .flat_map(|i| (piv[i] + 1..n).filter(|c| !piv.contains(c)).map(move |c| (i, c)))
            .collect();
        let mut vals = vec![0u32; free.len()];
        let mut sub = Subspace { rows: vec![vec![0u32; n]; t], pivots: piv.to_vec() };
        for (i, &c) in piv.iter().enumerate() {
            sub.rows[i][c] = 1;
        }
        loop {
            for (&(i, c), &v) in free.iter().zip(&vals) {
                sub.rows[i][c] = v;
            }
            if !f(&sub) {
                return false;
            }
            let mut k = 0;
            while k < vals.len() {
                vals[k] += 1;
                if vals[k] < q {
                    break;
                }
                vals[k] = 0;
                k += 1;
            }
            if k == vals.len() {
                return true;
            }
        }
    });
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockingReport {
    pub t: usize,
    pub is_tfold_strong: bool,
    pub is_tfold: bool,
    pub subspaces_checked: u64,
    /// Generator rows of up to ten subspaces not spanned by points of B.
    pub failing_subspace_witnesses: Vec<Vec<Vec<u32>>>,
}

/// Every (t-1)-dimensional projective subspace must be spanned by t points of B.
pub fn verify_strong_blocking(b: &PointSet, t: usize) -> Result<BlockingReport> {
    let v = b.v();
    if t < 1 || t > v {
        return Err(Error::DimensionMismatch(format!("t = {t} outside 1..={v}")));
    }
    let f = b.field();
    let pts: Vec<&[u32]> = b.points().iter().map(|p| p.coords()).collect();
    let mut strong = true;
    let mut plain = true;
    let mut checked = 0u64;
    let mut witnesses = Vec::new();
    for_each_subspace(f, v + 1, t, |w| {
        checked += 1;
        let inside: Vec<&[u32]> = pts.iter().copied().filter(|x| w.contains(f, x)).collect();
        if inside.len() < t {
            plain = false;
        }
        if rank_of(f, &inside) < t {
            strong = false;
            if witnesses.len() < WITNESS_SAMPLE {
                witnesses.push(w.rows.clone());
            }
        }
        true
    })?;
    witnesses.sort();
    Ok(BlockingReport {
        t,
        is_tfold_strong: strong,
        is_tfold: plain,
        subspaces_checked: checked,
        failing_subspace_witnesses: witnesses,
    })
}

/// Smallest number of points of B on a subspace of projective dimension `dim`.
pub fn min_subspace_intersection(b: &PointSet, dim: usize) -> Result<usize> {
    let f = b.field();
    let pts: Vec<&[u32]> = b.points().iter().map(|p| p.coords()).collect();
    let mut best = usize::MAX;
    for_each_subspace(f, b.v() + 1, dim + 1, |w| {
        let c = pts.iter().filter(|x| w.contains(f, x)).count();
        best = best.min(c);
        true
    })?;
    Ok(best)
}

/// Every subspace of projective dimension `dim` meets B in at least t points.
pub fn verify_tfold_blocking(b: &PointSet, t: usize, dim: usize) -> Result<bool> {
    if dim >= b.v() {
        return Err(Error::DimensionMismatch(format!("subspace dimension {dim} in PG({},q)", b.v())));
    }
    let f = b.field();
    let pts: Vec<&[u32]> = b.points().iter().map(|p| p.coords()).collect();
    let mut ok = true;
    for_each_subspace(f, b.v() + 1, dim + 1, |w| {
        ok = pts.iter().filter(|x| w.contains(f, x)).take(t).count() >= t;
        ok
    })?;
    Ok(ok)
}

/// Re-embeds a (rho+1)-fold strong blocking set over GF(q') into
/// PG(v, q'^(rho+1)), where it is rho-saturating.
pub fn strong_to_saturating(b: &PointSet, rho: usize) -> Result<PointSet> {
    let t = rho + 1;
    let rep = verify_strong_blocking(b, t)?;
    if !rep.is_tfold_strong {
        return Err(Error::NotStrongBlocking { t });
    }
    let f = b.field();
    let sup = field_create(f.p() as u64, f.m() * t as u32)?;
    embed_set(b, &sup)
}

fn apply(f: &FieldSpec, m: &[[u32; 3]; 3], x: &[u32]) -> ProjPoint {
    let y: Vec<u32> =
        (0..3).map(|i| (0..3).fold(0, |acc, j| f.add(acc, f.mul(m[i][j], x[j])))).collect();
    ProjPoint::new(f, y).expect("invertible map")
}

fn mat_mul(f: &FieldSpec, a: &[[u32; 3]; 3], b: &[[u32; 3]; 3]) -> [[u32; 3]; 3] {
    let mut c = [[0u32; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            c[i][j] = (0..3).fold(0, |acc, k| f.add(acc, f.mul(a[i][k], b[k][j])));
        }
    }
    c
}

fn is_scalar(m: &[[u32; 3]; 3]) -> bool {
    (0..3).all(|i| (0..3).all(|j| if i == j { m[i][i] == m[0][0] } else { m[i][j] == 0 }))
}

fn companion(f: &FieldSpec, [c0, c1, c2]: [u32; 3]) -> [[u32; 3]; 3] {
    [[0, 0, f.neg(c0)], [1, 0, f.neg(c1)], [0, 1, f.neg(c2)]]
}

/// First monic cubic (coefficients compared constant term first) whose
/// companion matrix acts on PG(2,q) with order q^2+q+1, i.e. a Singer cycle.
fn singer_cubic(f: &FieldSpec) -> [u32; 3] {
    let q = f.q();
    let order = theta(3, q as u64) as usize;
    for c0 in 1..q {
        for c1 in 0..q {
            for c2 in 0..q {
                let comp = companion(f, [c0, c1, c2]);
                let mut power = comp;
                let mut k = 1;
                while !is_scalar(&power) && k <= order {
                    power = mat_mul(f, &power, &comp);
                    k += 1;
                }
                if k == order {
                    return [c0, c1, c2];
                }
            }
        }
    }
    unreachable!("primitive cubics exist")
}

/// Two disjoint Baer subplanes of PG(2,qp), qp a square: the canonical
/// subplane and its first disjoint image under diag(1, g^i, g^j) * C^s, with
/// C a Singer companion matrix and g primitive.
pub fn baer_pair_set(qp: u64) -> Result<PointSet> {
    let (p, e) = prime_power(qp).ok_or(Error::NonPrime(qp))?;
    if e % 2 != 0 {
        return Err(Error::NotExtension { src: 0, dst: qp });
    }
    let sup = field_of_order(qp)?;
    let sub = field_create(p, e / 2)?;
    let base = subgeometry_points(2, &sub, &sup)?;
    let members: HashSet<ProjPoint> = base.points().iter().cloned().collect();
    let f = &sup;
    let comp = companion(f, singer_cubic(f));
    let g = f.primitive();
    let order = theta(3, qp) as u64;
    let mut power = comp;
    for _s in 1..=order {
        for i in 0..qp - 1 {
            for j in 0..qp - 1 {
                let d = [[1, 0, 0], [0, f.pow(g, i), 0], [0, 0, f.pow(g, j)]];
                let m = mat_mul(f, &d, &power);
                let image: Vec<ProjPoint> = base.points().iter().map(|x| apply(f, &m, x.coords())).collect();
                if image.iter().all(|x| !members.contains(x)) {
                    let other = PointSet::new(f, 2, image)?;
                    let set = base.union(&other)?;
                    if verify_tfold_blocking(&set, 2, 1)? {
                        return Ok(set);
                    }
                }
            }
        }
        power = mat_mul(f, &power, &comp);
    }
    Err(Error::SearchExhausted("no disjoint Baer subplane image".into()))
}

#[derive(Clone, Debug)]
pub struct CubicPair {
    pub set: PointSet,
    pub c: u32,
    pub d: u32,
    pub a: u32,
    pub b: u32,
}

/// The 2-fold blocking set B u gamma_{a,b}(B) in PG(2,p^3), where
/// B = {(1,x,x^p)} u {(0,1,m) : m^(p^2+p+1) = 1} and
/// gamma_{a,b}(r,s,t) = (t - r, a b r, a s).
pub fn cubic_blocking_pair(p: u64) -> Result<CubicPair> {
    let f = field_create(p, 3)?;
    let q = f.q();
    let e = p * p + p + 1;
    let in_h = |y: u32| y != 0 && f.pow(y, e) == 1;
    let forbidden: HashSet<u32> = (0..q)
        .map(|x| {
            let t = f.sub(f.pow(x, p), 1);
            f.mul(f.pow(t, p - 1), x)
        })
        .collect();
    let c = (1..q).find(|&y| !in_h(y) && !forbidden.contains(&y)).ok_or(Error::NoSuitableC(p))?;
    let h: Vec<u32> = (1..q).filter(|&y| in_h(y)).collect();
    let d = h.iter().map(|&y| f.mul(c, y)).min().expect("H is nonempty");
    let a = (1..q).find(|&a| f.mul(d, f.pow(a, p - 1)) == c).ok_or(Error::NoSuitableC(p))?;
    let b = f.pow(d, p * p);
    if in_h(b) {
        return Err(Error::NoSuitableC(p));
    }
    let mut base = Vec::new();
    for x in 0..q {
        base.push(ProjPoint::new(&f, vec![1, x, f.pow(x, p)])?);
    }
    for &m in &h {
        base.push(ProjPoint::new(&f, vec![0, 1, m])?);
    }
    let ab = f.mul(a, b);
    let image: Vec<ProjPoint> = base
        .iter()
        .map(|x| {
            let [r, s, t] = [x.coords()[0], x.coords()[1], x.coords()[2]];
            ProjPoint::new(&f, vec![f.sub(t, r), f.mul(ab, r), f.mul(a, s)])
        })
        .collect::<Result<_>>()?;
    let first = PointSet::new(&f, 2, base)?;
    let second = PointSet::new(&f, 2, image)?;
    let set = first.union(&second)?;
    if set.len() != 2 * first.len() {
        return Err(Error::SearchExhausted(format!("gamma(B) meets B for c = {c}")));
    }
    if !verify_tfold_blocking(&set, 2, 1)? {
        return Err(Error::SearchExhausted(format!("union is not 2-fold blocking for c = {c}")));
    }
    Ok(CubicPair { set, c, d, a, b })
}

/// Smallest k making the line g miss the quadric x0 x1 = x2 x3: a non-square
/// for odd q, and k with T^2 + T + k irreducible for even q.
pub fn four_lines_k(f: &FieldSpec) -> Result<u32> {
    let q = f.q();
    if f.p() == 2 {
        (1..q)
            .find(|&k| (0..q).all(|x| f.add(f.add(f.mul(x, x), x), k) != 0))
            .ok_or(Error::NoWitnessK(q as u64))
    } else {
        (1..q).find(|&k| !f.is_square(k)).ok_or(Error::NoWitnessK(q as u64))
    }
}

fn line_from(f: &FieldSpec, a: Vec<u32>, b: Vec<u32>) -> Result<PointSet> {
    line_points(f, &ProjPoint::new(f, a)?, &ProjPoint::new(f, b)?)
}

/// l1: x0=x2=0, l2: x1=x3=0, l3: x0=x3, x1=x2, and the line g off the
/// hyperbolic quadric x0 x1 = x2 x3.
pub fn four_lines_set(f: &FieldSpec) -> Result<PointSet> {
    let k = four_lines_k(f)?;
    let l1 = line_from(f, vec![0, 1, 0, 0], vec![0, 0, 0, 1])?;
    let l2 = line_from(f, vec![1, 0, 0, 0], vec![0, 0, 1, 0])?;
    let l3 = line_from(f, vec![1, 0, 0, 1], vec![0, 1, 1, 0])?;
    let g = if f.p() == 2 {
        line_from(f, vec![1, 1, 0, 0], vec![1, 0, k, 1])?
    } else {
        line_from(f, vec![1, 1, 0, 0], vec![0, 0, k, 1])?
    };
    let on_quadric = |x: &[u32]| f.mul(x[0], x[1]) == f.mul(x[2], x[3]);
    if g.points().iter().any(|x| on_quadric(x.coords())) {
        return Err(Error::NoWitnessK(f.q() as u64));
    }
    let set = l1.union(&l2)?.union(&l3)?.union(&g)?;
    let q = f.q() as usize;
    if set.len() != 4 * q + 4 {
        return Err(Error::SearchExhausted("the four lines are not pairwise skew".into()));
    }
    Ok(set)
}

/// Lifts a v-fold strong blocking set of PG(v,q) to a (v+1)-fold one of
/// PG(v+1,q): B in x_{v+1} = 0, apex e_{v+1}, lines from the apex to e_0..e_v.
pub fn construction_a_step(b: &PointSet) -> Result<PointSet> {
    let v = b.v();
    let rep = verify_strong_blocking(b, v)?;
    if !rep.is_tfold_strong {
        return Err(Error::NotStrongBlocking { t: v });
    }
    let f = b.field();
    let mut pts: Vec<ProjPoint> = b
        .points()
        .iter()
        .map(|p| {
            let mut c = p.coords().to_vec();
            c.push(0);
            ProjPoint::new(f, c)
        })
        .collect::<Result<_>>()?;
    pts.push(ProjPoint::unit(v + 1, v + 1));
    for i in 0..=v {
        for lambda in 1..f.q() {
            let mut c = vec![0u32; v + 2];
            c[i] = 1;
            c[v + 1] = lambda;
            pts.push(ProjPoint::new(f, c)?);
        }
    }
    PointSet::new(f, v + 1, pts)
}

/// Points of PG(v,q) of Hamming weight at most v - k + 1.
pub fn weight_set_bk(v: usize, f: &FieldSpec, k: usize) -> Result<PointSet> {
    if k < 1 || k + 1 > v {
        return Err(Error::DimensionMismatch(format!("k = {k} outside 1..={}", v.saturating_sub(1))));
    }
    let all = pg_points(v, f)?;
    let pts = all.points().iter().filter(|p| p.weight() <= v - k + 1).cloned().collect();
    PointSet::new(f, v, pts)
}

/// Coordinate supports of the nine planes of PG(4,q'); the triple {0,2,3}
/// is the one left out.
pub const NINE_PLANES: [[usize; 3]; 9] =
    [[0, 1, 2], [0, 3, 4], [0, 1, 3], [0, 2, 4], [0, 1, 4], [1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]];

pub fn nine_planes_set(qp: u64) -> Result<PointSet> {
    let f = field_of_order(qp)?;
    let all = pg_points(4, &f)?;
    let pts = all
        .points()
        .iter()
        .filter(|p| {
            NINE_PLANES.iter().any(|s| p.coords().iter().enumerate().all(|(i, &x)| x == 0 || s.contains(&i)))
        })
        .cloned()
        .collect();
    PointSet::new(&f, 4, pts)
}

/// u values for which a witness is guaranteed on a line of PG(v,q).
pub fn admissible_u(q: u64, u: usize) -> bool {
    let u = u as u64;
    (2..=(q + 2) / 2).contains(&u) || u == q - 1 || (q >= 4 && (3..=q).contains(&u))
}

const WITNESS_BUDGET: u64 = 50_000_000;

/// Nonzero coefficients c_i and distinct line points P_i (i != target) with
/// sum c_i P_i equal to the target point's coordinate vector.
pub fn line_combination_witness(line: &PointSet, target: usize, u: usize) -> Result<Vec<(usize, u32)>> {
    let f = line.field();
    let q = f.q() as u64;
    if line.len() as u64 != q + 1 || target >= line.len() || u < 1 {
        return Err(Error::DimensionMismatch("need a full line and a valid target".into()));
    }
    let pts: Vec<&[u32]> = line.points().iter().map(|p| p.coords()).collect();
    let n = pts[0].len();
    let tgt = pts[target];
    let others: Vec<usize> = (0..line.len()).filter(|&i| i != target).collect();
    let mut budget = WITNESS_BUDGET;
    let mut result = None;
    if u >= 2 && u <= others.len() {
        for_each_combination(others.len(), u, |idx| {
            let chosen: Vec<usize> = idx.iter().map(|&i| others[i]).collect();
            let head = &chosen[..u - 2];
            let (x, y) = (pts[chosen[u - 2]], pts[chosen[u - 1]]);
            let m = Matrix::from_columns(f, n, &[x.to_vec(), y.to_vec()]).expect("same length");
            let mut coef = vec![1u32; head.len()];
            loop {
                if budget == 0 {
                    return false;
                }
                budget -= 1;
                let mut rest = tgt.to_vec();
                for (&i, &c) in head.iter().zip(&coef) {
                    for (r, &pv) in rest.iter_mut().zip(pts[i]) {
                        *r = f.sub(*r, f.mul(c, pv));
                    }
                }
                if let Ok(Some(ab)) = m.solve_membership(&rest) {
                    if ab[0] != 0 && ab[1] != 0 {
                        let mut w: Vec<(usize, u32)> = head.iter().copied().zip(coef.iter().copied()).collect();
                        w.push((chosen[u - 2], ab[0]));
                        w.push((chosen[u - 1], ab[1]));
                        result = Some(w);
                        return false;
                    }
                }
                let mut k = 0;
                while k < coef.len() {
                    coef[k] += 1;
                    if (coef[k] as u64) < q {
                        break;
                    }
                    coef[k] = 1;
                    k += 1;
                }
                if k == coef.len() {
                    return true;
                }
            }
        });
    }
    let w = result.ok_or(Error::NoWitness { u })?;
    // substitution check
    let mut acc = vec![0u32; n];
    for &(i, c) in &w {
        for (a, &pv) in acc.iter_mut().zip(pts[i]) {
            *a = f.add(*a, f.mul(c, pv));
        }
    }
    let mut t = tgt.to_vec();
    normalize(f, &mut t);
    if acc != t || w.iter().any(|&(_, c)| c == 0) {
        return Err(Error::NoWitness { u });
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subspace_counts() {
        let f = field_create(3, 1).unwrap();
        for (n, t) in [(3, 1), (3, 2), (4, 2), (4, 3), (5, 2)] {
            let mut c = 0u128;
            for_each_subspace(&f, n, t, |_| {
                c += 1;
                true
            })
            .unwrap();
            assert_eq!(c, gaussian_binomial(n as u32, t as u32, 3));
        }
        assert_eq!(gaussian_binomial(3, 2, 27), 757);
    }

    #[test]
    fn collinear_triple_fails() {
        let f = field_create(2, 1).unwrap();
        let s = PointSet::from_coords(&f, 2, &[vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 0]]).unwrap();
        assert!(!verify_strong_blocking(&s, 2).unwrap().is_tfold_strong);
    }

    #[test]
    fn four_lines_q3_uses_k2() {
        let f = field_create(3, 1).unwrap();
        assert_eq!(four_lines_k(&f).unwrap(), 2);
        assert_eq!(four_lines_set(&f).unwrap().len(), 16);
    }

    #[test]
    fn nine_planes_q2() {
        assert_eq!(nine_planes_set(2).unwrap().len(), 24);
    }
}
