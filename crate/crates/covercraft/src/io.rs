//! Plain-text formats for codes, point sets and partitions.
//!
//! Every file starts with `#` header lines carrying the format version and
//! the field modulus, followed by a type line and whitespace-separated
//! field elements:
//!
//! ```text
//! # covercraft 1
//! # modulus 1 0 1 1
//! code 8 3 4
//! 1 0 0 1
//! 0 1 0 1
//! 0 0 1 1
//! ```
//!
//! Point sets use `pg v q` followed by one normalized point per line;
//! partitions use `partition n k` followed by one subset per line.

use crate::codes::{Code, Partition};
use crate::error::{Error, Result};
use crate::gf::{field_of_order, FieldSpec, Matrix};
use crate::pg::{PointSet, ProjPoint};

pub const FORMAT_VERSION: u32 = 1;

fn header(f: Option<&FieldSpec>) -> String {
    let mut s = format!("# covercraft {FORMAT_VERSION}\n");
    if let Some(f) = f {
        let m: Vec<String> = f.modulus().iter().map(u32::to_string).collect();
        s.push_str(&format!("# modulus {}\n", m.join(" ")));
    }
    s
}

struct Parsed<'a> {
    modulus: Option<Vec<u32>>,
    kind: &'a str,
    params: Vec<u64>,
    rows: Vec<Vec<u64>>,
}

fn parse(text: &str) -> Result<Parsed<'_>> {
    let mut modulus = None;
    let mut head: Option<(&str, Vec<u64>)> = None;
    let mut rows = Vec::new();
    let num = |t: &str| t.parse::<u64>().map_err(|_| Error::Parse(format!("bad number {t:?}")));
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(c) = line.strip_prefix('#') {
            let mut it = c.split_whitespace();
            match it.next() {
                Some("covercraft") => {
                    let v = it.next().map(num).transpose()?.unwrap_or(0);
                    if v != FORMAT_VERSION as u64 {
                        return Err(Error::Parse(format!("format version {v}, expected {FORMAT_VERSION}")));
                    }
                }
                Some("modulus") => modulus = Some(it.map(|t| num(t).map(|x| x as u32)).collect::<Result<_>>()?),
                _ => {}
            }
            continue;
        }
        let mut it = line.split_whitespace();
        if head.is_none() {
            let kind = it.next().expect("nonempty line");
            head = Some((kind, it.map(num).collect::<Result<_>>()?));
        } else {
            rows.push(it.map(num).collect::<Result<_>>()?);
        }
    }
    let (kind, params) = head.ok_or_else(|| Error::Parse("missing type line".into()))?;
    Ok(Parsed { modulus, kind, params, rows })
}

fn field_checked(q: u64, modulus: &Option<Vec<u32>>) -> Result<FieldSpec> {
    let f = field_of_order(q)?;
    if let Some(m) = modulus {
        if m.as_slice() != f.modulus() {
            return Err(Error::Parse(format!("modulus {m:?} differs from the GF({q}) modulus {:?}", f.modulus())));
        }
    }
    Ok(f)
}

fn expect(p: &Parsed, kind: &str, nparams: usize) -> Result<()> {
    if p.kind != kind || p.params.len() != nparams {
        return Err(Error::Parse(format!("expected a `{kind}` line with {nparams} parameters, got `{}`", p.kind)));
    }
    Ok(())
}

fn elements(f: &FieldSpec, row: &[u64]) -> Result<Vec<u32>> {
    row.iter()
        .map(|&x| if x < f.q() as u64 { Ok(x as u32) } else { Err(Error::OutOfRange { value: x, q: f.q() as u64 }) })
        .collect()
}

/// Parity-check matrix as `code q r n` plus r rows of n entries.
pub fn write_code(c: &Code) -> String {
    let h = c.h();
    let mut s = header(Some(c.field()));
    s.push_str(&format!("code {} {} {}\n", c.field().q(), h.rows(), h.cols()));
    for i in 0..h.rows() {
        let row: Vec<String> = h.row(i).iter().map(u32::to_string).collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}

pub fn read_code(text: &str) -> Result<Code> {
    let p = parse(text)?;
    expect(&p, "code", 3)?;
    let (q, r, n) = (p.params[0], p.params[1] as usize, p.params[2] as usize);
    let f = field_checked(q, &p.modulus)?;
    if p.rows.len() != r || p.rows.iter().any(|row| row.len() != n) {
        return Err(Error::Parse(format!("expected {r} rows of {n} entries")));
    }
    let mut data = Vec::with_capacity(r * n);
    for row in &p.rows {
        data.extend(elements(&f, row)?);
    }
    Code::new(Matrix::new(&f, r, n, data)?)
}

/// Point set as `pg v q` plus one point per line.
pub fn write_points(s: &PointSet) -> String {
    let mut out = header(Some(s.field()));
    out.push_str(&format!("pg {} {}\n", s.v(), s.field().q()));
    for p in s.points() {
        let c: Vec<String> = p.coords().iter().map(u32::to_string).collect();
        out.push_str(&c.join(" "));
        out.push('\n');
    }
    out
}

pub fn read_points(text: &str) -> Result<PointSet> {
    let p = parse(text)?;
    expect(&p, "pg", 2)?;
    let (v, q) = (p.params[0] as usize, p.params[1]);
    let f = field_checked(q, &p.modulus)?;
    let mut pts = Vec::with_capacity(p.rows.len());
    for row in &p.rows {
        if row.len() != v + 1 {
            return Err(Error::Parse(format!("point {row:?} does not have {} coordinates", v + 1)));
        }
        pts.push(ProjPoint::new(&f, elements(&f, row)?)?);
    }
    PointSet::new(&f, v, pts)
}

/// Column partition as `partition n k` plus one subset per line.
pub fn write_partition(part: &Partition, n: usize) -> String {
    let mut out = header(None);
    out.push_str(&format!("partition {n} {}\n", part.len()));
    for s in part.subsets() {
        let c: Vec<String> = s.iter().map(usize::to_string).collect();
        out.push_str(&c.join(" "));
        out.push('\n');
    }
    out
}

pub fn read_partition(text: &str) -> Result<(Partition, usize)> {
    let p = parse(text)?;
    expect(&p, "partition", 2)?;
    let (n, k) = (p.params[0] as usize, p.params[1] as usize);
    if p.rows.len() != k {
        return Err(Error::Parse(format!("expected {k} subsets, found {}", p.rows.len())));
    }
    let part = Partition::new(p.rows.iter().map(|r| r.iter().map(|&x| x as usize).collect()).collect());
    part.validate(n)?;
    Ok((part, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::concat::hamming_pcm;

    #[test]
    fn code_round_trip() {
        let f = field_of_order(8).unwrap();
        let c = Code::new(hamming_pcm(2, &f).unwrap()).unwrap();
        let text = write_code(&c);
        assert!(text.starts_with("# covercraft 1\n# modulus "));
        assert_eq!(read_code(&text).unwrap(), c);
    }

    #[test]
    fn rejects_foreign_modulus() {
        let text = "# covercraft 1\n# modulus 1 1 1 1\ncode 8 1 1\n1\n";
        assert!(matches!(read_code(text), Err(Error::Parse(_))));
        assert!(matches!(read_code("# covercraft 7\ncode 2 1 1\n1\n"), Err(Error::Parse(_))));
        assert!(matches!(read_code("code 3 1 1\n5\n"), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn points_and_partition_round_trip() {
        let f = field_of_order(3).unwrap();
        let s = crate::blocking::four_lines_set(&f).unwrap();
        assert_eq!(read_points(&write_points(&s)).unwrap(), s);
        let part = Partition::new(vec![vec![2, 0], vec![1]]);
        assert_eq!(read_partition(&write_partition(&part, 3)).unwrap(), (part, 3));
    }
}
