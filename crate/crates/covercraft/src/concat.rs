//! Code-building constructions: Hamming and Sigma matrices, direct sum,
//! ternary doubling, and the q^m-concatenating constructions QM1..QM8.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::codes::{verify_partition, Code, Partition};
use crate::error::{Error, Result};
use crate::gf::{field_create, Embedding, FieldSpec, Matrix};
use crate::pg::{pg_points, theta};
use crate::syndrome::DEFAULT_SYNDROME_CAP;

/// Parity-check matrix of the [theta_{m,q}, theta_{m,q} - m]_q 1 Hamming code,
/// columns in point enumeration order.
pub fn hamming_pcm(m: usize, f: &FieldSpec) -> Result<Matrix> {
    if m == 0 {
        return Err(Error::DimensionMismatch("Hamming matrix needs m >= 1".into()));
    }
    let pts = pg_points(m - 1, f)?;
    let cols: Vec<Vec<u32>> = pts.points().iter().map(|p| p.coords().to_vec()).collect();
    Matrix::from_columns(f, m, &cols)
}

/// Block diagonal sum of `copies` Hamming matrices W_m.
pub fn sigma_matrix(copies: usize, m: usize, f: &FieldSpec) -> Result<Matrix> {
    let w = hamming_pcm(m, f)?;
    let mut s = Matrix::zeros(f, copies * m, copies * w.cols());
    for i in 0..copies {
        s.put_block(i * m, i * w.cols(), &w);
    }
    Ok(s)
}

pub fn direct_sum(parts: &[Code]) -> Result<Code> {
    let first = parts.first().ok_or(Error::EmptyCode)?;
    let f = first.field();
    if parts.iter().any(|c| c.field() != f) {
        return Err(Error::FieldMismatch);
    }
    let r: usize = parts.iter().map(Code::r).sum();
    let n: usize = parts.iter().map(Code::n).sum();
    let mut h = Matrix::zeros(f, r, n);
    let (mut r0, mut c0) = (0, 0);
    for c in parts {
        h.put_block(r0, c0, c.h());
        r0 += c.r();
        c0 += c.n();
    }
    Code::new(h)
}

/// [0 1; H H] over GF(3): codimension grows by one, length doubles.
pub fn doubling(c: &Code) -> Result<Code> {
    let f = c.field();
    if f.q() != 3 {
        return Err(Error::WrongField(format!("doubling needs GF(3), got GF({})", f.q())));
    }
    if c.covering_radius()? != 2 {
        return Err(Error::ConstraintViolated { variant: "doubling".into(), which: "covering radius 2".into() });
    }
    let n = c.n();
    let mut h = Matrix::zeros(f, c.r() + 1, 2 * n);
    for j in n..2 * n {
        h.set(0, j, 1);
    }
    h.put_block(1, 0, c.h());
    h.put_block(1, n, c.h());
    Code::new(h)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum QmVariant {
    Qm1,
    Qm2,
    Qm3,
    Qm4,
    Qm5,
    Qm6,
    Qm7,
    Qm8,
}

impl fmt::Display for QmVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QM{}", *self as usize + 1)
    }
}

impl std::str::FromStr for QmVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<QmVariant> {
        let k: usize = s
            .trim_start_matches(['Q', 'q'])
            .trim_start_matches(['M', 'm'])
            .parse()
            .map_err(|_| Error::Parse(format!("unknown construction {s}")))?;
        QmVariant::ALL.get(k.wrapping_sub(1)).copied().ok_or_else(|| Error::Parse(format!("unknown construction {s}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Universe {
    /// F_{q^m}
    Field,
    /// F_{q^m} with the extra symbol *
    FieldStar,
    /// nonzero elements of F_{q^m}
    Units,
}

impl QmVariant {
    pub const ALL: [QmVariant; 8] = [
        QmVariant::Qm1,
        QmVariant::Qm2,
        QmVariant::Qm3,
        QmVariant::Qm4,
        QmVariant::Qm5,
        QmVariant::Qm6,
        QmVariant::Qm7,
        QmVariant::Qm8,
    ];

    pub fn universe(self) -> Universe {
        use QmVariant::*;
        match self {
            Qm1 | Qm3 | Qm6 | Qm7 => Universe::FieldStar,
            Qm2 | Qm5 | Qm8 => Universe::Field,
            Qm4 => Universe::Units,
        }
    }

    /// Complete set of indicators required.
    pub fn csi(self) -> bool {
        matches!(self, QmVariant::Qm5 | QmVariant::Qm6 | QmVariant::Qm7 | QmVariant::Qm8)
    }

    pub fn needs_aux(self) -> bool {
        matches!(self, QmVariant::Qm4 | QmVariant::Qm8)
    }

    /// Rows of the auxiliary A block, if any.
    pub fn aux_rows(self, radius: usize, m: usize) -> Option<usize> {
        match self {
            QmVariant::Qm4 => Some(radius.div_ceil(2) * m),
            QmVariant::Qm8 => Some(2 * m),
            _ => None,
        }
    }

    /// Checks the side conditions on R, ell0, q^m, p0 and n0.
    pub fn check(self, radius: usize, ell0: usize, q: u64, m: u32, p0: usize, n0: usize) -> Result<()> {
        use QmVariant::*;
        let qm = (q as u128).pow(m);
        let (p0, n0) = (p0 as u128, n0 as u128);
        let fail = |which: &str| Err(Error::ConstraintViolated { variant: self.to_string(), which: which.into() });
        let r_ok = match self {
            Qm6 => radius >= 3,
            Qm7 => radius == 3,
            Qm8 => radius == 4,
            _ => radius >= 2,
        };
        if !r_ok {
            return fail("covering radius");
        }
        let ell_ok = match self {
            Qm2 => ell0 >= 1 && ell0 < radius,
            Qm3 => ell0 == radius,
            _ => ell0 == 0,
        };
        if !ell_ok {
            return fail("ell0");
        }
        let size_ok = match self {
            Qm1 | Qm3 => qm + 1 >= p0,
            Qm2 => qm >= p0,
            Qm4 => qm >= p0 + 1,
            Qm5 | Qm8 => n0 >= qm && qm >= p0,
            Qm6 | Qm7 => n0 > qm && qm + 1 >= p0,
        };
        if !size_ok {
            return fail("q^m against p0 and n0");
        }
        if self == Qm7 && q % 2 != 0 {
            return fail("q even");
        }
        if self == Qm8 && (qm - 1) % 3 == 0 {
            return fail("3 does not divide q^m - 1");
        }
        Ok(())
    }

    /// Closed-form length; `aux_n` is the length of the A block for QM4/QM8.
    pub fn length(self, n0: usize, radius: usize, ell0: usize, q: u64, m: u32, aux_n: usize) -> u128 {
        use QmVariant::*;
        let qm = (q as u128).pow(m);
        let th = theta(m, q);
        let base = qm * n0 as u128;
        base + match self {
            Qm1 => radius as u128 * th,
            Qm2 => (radius - ell0) as u128 * th,
            Qm3 => 0,
            Qm4 => (radius / 2) as u128 * th + aux_n as u128,
            Qm5 | Qm6 => (radius - 1) as u128 * th,
            Qm7 => th,
            Qm8 => aux_n as u128 + th,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Indicator {
    Elem(u32),
    Star,
}

impl fmt::Display for Indicator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Indicator::Elem(v) => write!(f, "{v}"),
            Indicator::Star => write!(f, "*"),
        }
    }
}

/// Universe in assignment order: elements by encoding, * last.
pub fn universe_elements(kind: Universe, qm: u64) -> Vec<Indicator> {
    let start = if kind == Universe::Units { 1 } else { 0 };
    let mut u: Vec<Indicator> = (start..qm as u32).map(Indicator::Elem).collect();
    if kind == Universe::FieldStar {
        u.push(Indicator::Star);
    }
    u
}

/// Distinct indicators per subset, subsets taken by smallest column. With
/// `csi`, leftover universe elements go to the non-leading columns of the
/// subsets in column order until every element is used.
pub fn assign_indicators(part: &Partition, universe: &[Indicator], csi: bool) -> Result<Vec<Indicator>> {
    let n0: usize = part.subsets().iter().map(Vec::len).sum();
    part.validate(n0)?;
    let p0 = part.len();
    if universe.len() < p0 {
        return Err(Error::UniverseTooSmall { universe: universe.len(), needed: p0 });
    }
    if csi && n0 < universe.len() {
        return Err(Error::CsiInfeasible { universe: universe.len(), n: n0 });
    }
    let mut out = vec![Indicator::Star; n0];
    let mut leading = vec![false; n0];
    for (i, s) in part.subsets().iter().enumerate() {
        for &c in s {
            out[c] = universe[i];
        }
        leading[s[0]] = true;
    }
    if csi {
        let mut spare = universe[p0..].iter();
        for c in 0..n0 {
            if leading[c] {
                continue;
            }
            match spare.next() {
                Some(&u) => out[c] = u,
                None => break,
            }
        }
    }
    Ok(out)
}

/// Coordinates of every element of F_{q^m} in the power basis 1, T, ..., T^{m-1}
/// over F_q.
fn basis_coordinates(small: &FieldSpec, big: &FieldSpec, m: usize) -> Result<Vec<Vec<u32>>> {
    let emb = Embedding::new(small, big)?;
    let t = if m == 1 { 1 } else { big.generator() };
    let mut powers = vec![1u32];
    for i in 1..m {
        powers.push(big.mul(powers[i - 1], t));
    }
    let q = small.q();
    let mut coords = vec![Vec::new(); big.q() as usize];
    let mut c = vec![0u32; m];
    loop {
        let y = c.iter().zip(&powers).fold(0, |acc, (&ci, &pw)| big.add(acc, big.mul(emb.apply(ci), pw)));
        coords[y as usize] = c.clone();
        let mut k = 0;
        while k < m {
            c[k] += 1;
            if c[k] < q {
                break;
            }
            c[k] = 0;
            k += 1;
        }
        if k == m {
            break;
        }
    }
    if coords.iter().any(Vec::is_empty) {
        return Err(Error::NotExtension { src: q as u64, dst: big.q() as u64 });
    }
    Ok(coords)
}

#[derive(Clone, Debug)]
pub struct QmOutput {
    pub code: Code,
    pub variant: QmVariant,
    pub m: u32,
    pub radius_target: usize,
    pub ell0: usize,
    pub indicators: Vec<Indicator>,
    /// Whether the covering radius was computed exhaustively.
    pub verified: bool,
    pub radius: Option<usize>,
    pub expected_length: u128,
}

/// Assembles H_V = [C B_1 ... B_{n0}] for the given variant.
pub fn qm_construct(
    variant: QmVariant,
    v0: &Code,
    part: &Partition,
    ell0: usize,
    m: u32,
    aux: Option<&Code>,
) -> Result<QmOutput> {
    if m == 0 {
        return Err(Error::DimensionMismatch("m >= 1".into()));
    }
    let f = v0.field();
    let q = f.q() as u64;
    let radius = v0.covering_radius()?;
    part.validate(v0.n())?;
    variant.check(radius, ell0, q, m, part.len(), v0.n())?;
    if !verify_partition(v0, part, radius, ell0)? {
        return Err(Error::PartitionInvalid);
    }
    let mu = m as usize;
    let aux_n = match variant.aux_rows(radius, mu) {
        Some(rows) => {
            let a = aux.ok_or_else(|| Error::AuxMissing(variant.to_string()))?;
            if a.field() != f || a.r() != rows {
                return Err(Error::DimensionMismatch(format!("{variant} needs an A block with {rows} rows")));
            }
            a.n()
        }
        None => 0,
    };
    let big = field_create(f.p() as u64, f.m() * m)?;
    let coords = basis_coordinates(f, &big, mu)?;
    let universe = universe_elements(variant.universe(), big.q() as u64);
    let indicators = assign_indicators(part, &universe, variant.csi())?;

    let r0 = v0.r();
    let rows = r0 + radius * mu;
    let mut cols: Vec<Vec<u32>> = Vec::new();

    // C block, column by column
    let w = hamming_pcm(mu, f)?;
    let band = |blocks: &[(usize, &Matrix)]| -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        for &(row0, b) in blocks {
            for j in 0..b.cols() {
                let mut col = vec![0u32; rows];
                for i in 0..b.rows() {
                    col[row0 + i] = b.get(i, j);
                }
                out.push(col);
            }
        }
        out
    };
    let sigma = |k: usize| sigma_matrix(k, mu, f);
    use QmVariant::*;
    match variant {
        Qm1 => cols.extend(band(&[(r0, &sigma(radius)?)])),
        Qm2 => cols.extend(band(&[(r0 + ell0 * mu, &sigma(radius - ell0)?)])),
        Qm3 => {}
        Qm4 => {
            let lo = radius / 2;
            cols.extend(band(&[(r0, &sigma(lo)?), (r0 + lo * mu, aux.expect("checked").h())]));
        }
        Qm5 | Qm6 => cols.extend(band(&[(r0 + mu, &sigma(radius - 1)?)])),
        Qm7 => cols.extend(band(&[(r0 + mu, &w)])),
        Qm8 => cols.extend(band(&[(r0 + mu, aux.expect("checked").h()), (r0 + 3 * mu, &w)])),
    }

    // B_j blocks
    for (j, ind) in indicators.iter().enumerate() {
        let h = v0.h().column(j);
        for xi in 0..big.q() {
            let mut col = h.clone();
            match *ind {
                Indicator::Elem(beta) => {
                    let mut y = xi;
                    for _ in 0..radius {
                        col.extend_from_slice(&coords[y as usize]);
                        y = big.mul(y, beta);
                    }
                }
                Indicator::Star => {
                    col.extend(std::iter::repeat_n(0, (radius - 1) * mu));
                    col.extend_from_slice(&coords[xi as usize]);
                }
            }
            cols.push(col);
        }
    }
    let expected_length = variant.length(v0.n(), radius, ell0, q, m, aux_n);
    if cols.len() as u128 != expected_length {
        return Err(Error::DimensionMismatch(format!(
            "{variant} produced {} columns, expected {expected_length}",
            cols.len()
        )));
    }
    let code = Code::from_columns(f, rows, &cols)?;
    let small_enough = (q as u128).checked_pow(rows as u32).is_some_and(|t| t <= DEFAULT_SYNDROME_CAP as u128);
    let radius_v = if small_enough { Some(code.covering_radius()?) } else { None };
    Ok(QmOutput {
        code,
        variant,
        m,
        radius_target: radius,
        ell0,
        indicators,
        verified: radius_v.is_some(),
        radius: radius_v,
        expected_length,
    })
}

/// Upper bound on l_q(r0 + R m, R) from the concatenating constructions,
/// given best known lengths `table(q, r, R)`.
pub fn qm_length_bound(
    r0: u32,
    radius: u32,
    m: u32,
    q: u64,
    table: impl Fn(u64, u32, u32) -> Option<u64>,
) -> Result<u128> {
    let ell = table(q, r0, radius).ok_or_else(|| Error::MissingTableEntry(format!("q={q} r={r0} R={radius}")))? as u128;
    let qm = (q as u128).pow(m);
    let th = theta(m, q);
    let mut best: Option<u128> = None;
    if qm + 1 >= ell {
        best = Some(qm * ell + radius as u128 * th);
    }
    if qm > ell {
        let half = radius.div_ceil(2);
        match table(q, half * m, half) {
            Some(a) => {
                let b = qm * ell + (radius / 2) as u128 * th + a as u128;
                best = Some(best.map_or(b, |x| x.min(b)));
            }
            None if best.is_none() => {
                return Err(Error::MissingTableEntry(format!("q={q} r={} R={half}", half * m)));
            }
            None => {}
        }
    }
    best.ok_or_else(|| Error::DomainViolation(format!("q^m + 1 < {ell}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma_shapes() {
        let f = field_create(3, 1).unwrap();
        let s = sigma_matrix(2, 2, &f).unwrap();
        assert_eq!((s.rows(), s.cols()), (4, 8));
        assert_eq!(Code::new(s).unwrap().covering_radius().unwrap(), 2);
        assert_eq!(hamming_pcm(1, &f).unwrap().data(), &[1]);
    }

    #[test]
    fn basis_roundtrip() {
        let small = field_create(2, 2).unwrap();
        let big = field_create(2, 4).unwrap();
        let c = basis_coordinates(&small, &big, 2).unwrap();
        let mut seen: Vec<&Vec<u32>> = c.iter().collect();
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), 16);
    }

    #[test]
    fn indicators() {
        let u = universe_elements(Universe::FieldStar, 3);
        let part = Partition::trivial(4);
        let a = assign_indicators(&part, &u, false).unwrap();
        assert_eq!(a, vec![Indicator::Elem(0), Indicator::Elem(1), Indicator::Elem(2), Indicator::Star]);
        let part = Partition::new(vec![vec![0, 2], vec![1, 3]]);
        let u = universe_elements(Universe::Field, 4);
        let a = assign_indicators(&part, &u, true).unwrap();
        assert_eq!(a, vec![Indicator::Elem(0), Indicator::Elem(1), Indicator::Elem(2), Indicator::Elem(3)]);
        assert!(matches!(assign_indicators(&part, &u[..1], false), Err(Error::UniverseTooSmall { .. })));
    }

    #[test]
    fn length_bound_examples() {
        let t = |q: u64, r: u32, rr: u32| match (q, r, rr) {
            (3, 3, 2) => Some(4),
            (4, 4, 3) => Some(5),
            _ => None,
        };
        assert_eq!(qm_length_bound(3, 2, 1, 3, t).unwrap(), 14);
        assert_eq!(qm_length_bound(4, 3, 1, 4, t).unwrap(), 23);
    }
}
