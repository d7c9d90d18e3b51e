//! Knot names, Dowker–Thistlethwaite codes and knot tables.

use std::fmt;
use std::io::BufRead;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::braid::{BraidError, BraidWord};

/// Alternating (`a`) or non-alternating (`n`) part of a knot table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KnotClass {
    A,
    N,
}

/// A knot-table name such as `12n_584`, or anything else as free text.
///
/// Table names sort by crossing number, class, then index; free-text names
/// sort after them.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KnotName {
    Table { crossings: u32, class: KnotClass, index: u32 },
    Other(String),
}

impl KnotName {
    pub fn table(crossings: u32, class: KnotClass, index: u32) -> Self {
        KnotName::Table { crossings, class, index }
    }

    pub fn crossings(&self) -> Option<u32> {
        match self {
            KnotName::Table { crossings, .. } => Some(*crossings),
            _ => None,
        }
    }
}

impl fmt::Display for KnotName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KnotName::Table { crossings, class, index } => {
                let c = if *class == KnotClass::A { 'a' } else { 'n' };
                write!(f, "{crossings}{c}_{index}")
            }
            KnotName::Other(s) => f.write_str(s),
        }
    }
}

impl FromStr for KnotName {
    type Err = std::convert::Infallible;

    /// Accepts `12n_584`, `12N584`, `K12n584`; anything else is free text.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.strip_prefix('K').unwrap_or(s);
        let split = t.find(|c: char| !c.is_ascii_digit()).unwrap_or(t.len());
        let (c, rest) = t.split_at(split);
        let mut chars = rest.chars();
        let class = chars.next();
        let idx = chars.as_str();
        let idx = idx.strip_prefix('_').unwrap_or(idx);
        let class = match class {
            Some('a' | 'A') => Some(KnotClass::A),
            Some('n' | 'N') => Some(KnotClass::N),
            _ => None,
        };
        let valid_num = |x: &str| !x.is_empty() && x.bytes().all(|b| b.is_ascii_digit());
        Ok(match class {
            Some(a) if valid_num(c) && valid_num(idx) => match (c.parse(), idx.parse()) {
                (Ok(c), Ok(i)) => KnotName::table(c, a, i),
                _ => KnotName::Other(s.to_string()),
            },
            _ => KnotName::Other(s.to_string()),
        })
    }
}

impl Serialize for KnotName {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for KnotName {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Ok(s.parse().unwrap())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DtError {
    #[error("invalid DT entry '{0}'")]
    Syntax(String),
    #[error("DT entry {value} at position {pos} is odd")]
    Odd { pos: usize, value: i32 },
    #[error("DT entry {value} at position {pos} is outside [2, {max}]")]
    OutOfRange { pos: usize, value: i32, max: i32 },
    #[error("DT entry {value} at position {pos} repeats an earlier entry")]
    Duplicate { pos: usize, value: i32 },
}

/// A Dowker–Thistlethwaite code: the even labels paired with `1, 3, 5, ...`.
/// A negative entry marks a crossing where the even passage is an
/// overcrossing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DtCode(Vec<i32>);

impl DtCode {
    pub fn new(entries: Vec<i32>) -> Result<Self, DtError> {
        let max = 2 * entries.len() as i32;
        let mut seen = vec![false; entries.len() + 1];
        for (pos, &value) in entries.iter().enumerate() {
            if value % 2 != 0 {
                return Err(DtError::Odd { pos, value });
            }
            let a = value.abs();
            if a < 2 || a > max {
                return Err(DtError::OutOfRange { pos, value, max });
            }
            let slot = &mut seen[(a / 2) as usize];
            if *slot {
                return Err(DtError::Duplicate { pos, value });
            }
            *slot = true;
        }
        Ok(DtCode(entries))
    }

    pub fn entries(&self) -> &[i32] {
        &self.0
    }

    pub fn crossings(&self) -> usize {
        self.0.len()
    }
}

impl FromStr for DtCode {
    type Err = DtError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let entries: Vec<i32> = s
            .split(|c: char| c == ',' || c.is_whitespace() || c == '[' || c == ']')
            .filter(|t| !t.is_empty())
            .map(|t| t.parse().map_err(|_| DtError::Syntax(t.to_string())))
            .try_collect()?;
        Self::new(entries)
    }
}

impl fmt::Display for DtCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.iter().join(" "))
    }
}

/// Chirality as recorded in a knot table.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SymmetryClass {
    Chiral,
    Achiral,
    #[default]
    Unknown,
}

impl FromStr for SymmetryClass {
    type Err = TableError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "chiral" => Ok(SymmetryClass::Chiral),
            "achiral" | "amphichiral" | "amphicheiral" => Ok(SymmetryClass::Achiral),
            "" | "unknown" | "-" => Ok(SymmetryClass::Unknown),
            other => Err(TableError::Field { line: 0, msg: format!("unknown symmetry '{other}'") }),
        }
    }
}

impl fmt::Display for SymmetryClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SymmetryClass::Chiral => "chiral",
            SymmetryClass::Achiral => "achiral",
            SymmetryClass::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnotRecord {
    pub name: KnotName,
    pub braid: BraidWord,
    pub dt: Option<DtCode>,
    pub symmetry: SymmetryClass,
}

impl KnotRecord {
    pub fn new(name: impl AsRef<str>, braid: BraidWord) -> Self {
        KnotRecord { name: name.as_ref().parse().unwrap(), braid, dt: None, symmetry: SymmetryClass::Unknown }
    }

    /// One TSV row: name, strands, braid word, DT code, symmetry.
    pub fn to_tsv_row(&self) -> String {
        let dt = self.dt.as_ref().map(|d| d.to_string()).unwrap_or_default();
        format!("{}\t{}\t{}\t{}\t{}", self.name, self.braid.strands(), self.braid, dt, self.symmetry)
    }
}

#[derive(Debug, Error)]
pub enum TableError {
    #[error("line {line}: {msg}")]
    Field { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Braid { line: usize, source: BraidError },
    #[error("line {line}: {source}")]
    Dt { line: usize, source: DtError },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl TableError {
    fn at(self, line: usize) -> Self {
        match self {
            TableError::Field { msg, .. } => TableError::Field { line, msg },
            e => e,
        }
    }
}

/// Parses one TSV row. `line` is used for error messages only.
pub fn parse_tsv_row(row: &str, line: usize) -> Result<KnotRecord, TableError> {
    let cols: Vec<&str> = row.split('\t').map(str::trim).collect();
    if cols.len() < 3 {
        return Err(TableError::Field { line, msg: format!("expected at least 3 columns, found {}", cols.len()) });
    }
    if cols.len() > 5 {
        return Err(TableError::Field { line, msg: format!("expected at most 5 columns, found {}", cols.len()) });
    }
    let name: KnotName = cols[0].parse().unwrap();
    if cols[0].is_empty() {
        return Err(TableError::Field { line, msg: "empty name".into() });
    }
    let strands: usize =
        cols[1].parse().map_err(|_| TableError::Field { line, msg: format!("bad strand count '{}'", cols[1]) })?;
    let braid = BraidWord::parse(cols[2], Some(strands)).map_err(|source| TableError::Braid { line, source })?;
    let dt = match cols.get(3) {
        Some(s) if !s.is_empty() => Some(s.parse().map_err(|source| TableError::Dt { line, source })?),
        _ => None,
    };
    let symmetry = match cols.get(4) {
        Some(s) => s.parse().map_err(|e: TableError| e.at(line))?,
        None => SymmetryClass::Unknown,
    };
    Ok(KnotRecord { name, braid, dt, symmetry })
}

/// Reads a knot table, skipping blank lines and `#` comments. Each row is
/// parsed independently so that one bad row does not hide the others.
pub fn read_knot_table<R: BufRead>(r: R) -> Result<Vec<Result<KnotRecord, TableError>>, std::io::Error> {
    let mut out = vec![];
    for (i, line) in r.lines().enumerate() {
        let line = line?;
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        out.push(parse_tsv_row(&line, i + 1));
    }
    Ok(out)
}

/// Like [`read_knot_table`] but fails on the first bad row.
pub fn read_knot_table_strict<R: BufRead>(r: R) -> Result<Vec<KnotRecord>, TableError> {
    read_knot_table(r)?.into_iter().collect()
}
