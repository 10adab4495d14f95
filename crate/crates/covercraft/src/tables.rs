//! Stored length-function and density tables, shipped as CSV.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const TABLES_CSV: &str = include_str!("../data/tables.csv");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TableId {
    I,
    II,
    III,
    IV,
    V,
    VI,
}

impl std::str::FromStr for TableId {
    type Err = Error;
    fn from_str(s: &str) -> Result<TableId> {
        Ok(match s.trim().to_ascii_uppercase().as_str() {
            "I" | "1" => TableId::I,
            "II" | "2" => TableId::II,
            "III" | "3" => TableId::III,
            "IV" | "4" => TableId::IV,
            "V" | "5" => TableId::V,
            "VI" | "6" => TableId::VI,
            _ => return Err(Error::Parse(format!("unknown table {s}"))),
        })
    }
}

impl std::fmt::Display for TableId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableEntry {
    pub table: TableId,
    pub q: u64,
    pub r: Option<u32>,
    #[serde(rename = "R")]
    pub radius: u32,
    pub gamma: Option<u32>,
    /// Kept as text: integer lengths, or densities with three decimals.
    pub value: String,
    pub distances: Vec<u32>,
    pub dot: bool,
    pub provenance: String,
}

impl TableEntry {
    pub fn length(&self) -> Option<u64> {
        self.value.parse().ok()
    }

    /// Density entries in thousandths.
    pub fn millis(&self) -> Option<i64> {
        let (a, b) = self.value.split_once('.')?;
        if b.len() != 3 {
            return None;
        }
        Some(a.parse::<i64>().ok()? * 1000 + b.parse::<i64>().ok()?)
    }
}

#[derive(Deserialize)]
struct Row {
    table: String,
    q: u64,
    r: String,
    #[serde(rename = "R")]
    radius: u32,
    gamma: String,
    value: String,
    distances: String,
    dot: u8,
    provenance: String,
}

fn opt_u32(s: &str) -> Result<Option<u32>> {
    if s.is_empty() {
        Ok(None)
    } else {
        s.parse().map(Some).map_err(|_| Error::Parse(format!("bad integer {s:?}")))
    }
}

pub fn parse_tables(text: &str) -> Result<Vec<TableEntry>> {
    let mut rd = csv::Reader::from_reader(text.as_bytes());
    let mut out = Vec::new();
    for row in rd.deserialize::<Row>() {
        let row = row.map_err(|e| Error::Parse(e.to_string()))?;
        let distances = row
            .distances
            .split_whitespace()
            .map(|d| d.parse().map_err(|_| Error::Parse(format!("bad distance {d:?}"))))
            .collect::<Result<_>>()?;
        out.push(TableEntry {
            table: row.table.parse()?,
            q: row.q,
            r: opt_u32(&row.r)?,
            radius: row.radius,
            gamma: opt_u32(&row.gamma)?,
            value: row.value,
            distances,
            dot: row.dot != 0,
            provenance: row.provenance,
        });
    }
    Ok(out)
}

/// Inverse of `parse_tables`.
pub fn write_tables(entries: &[TableEntry]) -> String {
    let mut out = String::from("table,q,r,R,gamma,value,distances,dot,provenance\n");
    for e in entries {
        let opt = |x: Option<u32>| x.map_or(String::new(), |v| v.to_string());
        let d: Vec<String> = e.distances.iter().map(u32::to_string).collect();
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            e.table,
            e.q,
            opt(e.r),
            e.radius,
            opt(e.gamma),
            e.value,
            d.join(" "),
            e.dot as u8,
            e.provenance
        ));
    }
    out
}

pub fn tables() -> &'static [TableEntry] {
    static T: OnceLock<Vec<TableEntry>> = OnceLock::new();
    T.get_or_init(|| parse_tables(TABLES_CSV).expect("embedded tables parse"))
}

pub fn table(id: TableId) -> impl Iterator<Item = &'static TableEntry> {
    tables().iter().filter(move |e| e.table == id)
}

/// Stored entry for l_q(r,R), if some table has it.
pub fn entry(q: u64, r: u32, radius: u32) -> Option<&'static TableEntry> {
    tables().iter().find(|e| e.q == q && e.r == Some(r) && e.radius == radius && e.table != TableId::VI)
}

/// Smallest stored length of a q-ary code of codimension r and radius R.
/// Codimension 0 gives the empty code.
pub fn ell_bar(q: u64, r: u32, radius: u32) -> Option<u64> {
    if r == 0 {
        return Some(0);
    }
    entry(q, r, radius).and_then(TableEntry::length)
}

/// Whether the stored optimal code for (q,r,R) can have minimum distance 3.
pub fn has_distance_three(q: u64, r: u32, radius: u32) -> bool {
    entry(q, r, radius).is_some_and(|e| e.distances.contains(&3))
}

pub fn density(q: u64, gamma: u32) -> Option<&'static TableEntry> {
    table(TableId::VI).find(|e| e.q == q && e.gamma == Some(gamma))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let t = tables();
        assert_eq!(t.len(), 498);
        assert_eq!(write_tables(t), TABLES_CSV);
    }

    #[test]
    fn lookups() {
        assert_eq!(ell_bar(3, 3, 2), Some(4));
        assert_eq!(ell_bar(5, 4, 3), Some(6));
        assert_eq!(ell_bar(7, 12, 2), Some(36407));
        assert!(has_distance_three(16, 3, 2));
        assert_eq!(density(8, 1).unwrap().millis(), Some(1880));
    }
}
