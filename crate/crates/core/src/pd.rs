//! Planar diagram codes.
//!
//! `X[a,b,c,d]` lists the four edge labels at a crossing counterclockwise,
//! starting from the incoming under-strand; `c` is the outgoing under-strand.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PdError {
    #[error("PD syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("edge label {label} occurs {count} times (expected 2)")]
    LabelCount { label: u32, count: usize },
    #[error("inconsistent orientation at edge {0}")]
    Orientation(u32),
}

/// A validated, oriented planar diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PdCode {
    crossings: Vec<[u32; 4]>,
    // Slot (1 or 3) where the over-strand enters, per crossing.
    over_in: Vec<u8>,
}

impl PdCode {
    pub fn new(crossings: Vec<[u32; 4]>) -> Result<Self, PdError> {
        let mut slots: HashMap<u32, Vec<(usize, usize)>> = HashMap::new();
        for (c, x) in crossings.iter().enumerate() {
            for (s, &l) in x.iter().enumerate() {
                slots.entry(l).or_default().push((c, s));
            }
        }
        if let Some((&label, v)) = slots.iter().filter(|(_, v)| v.len() != 2).min_by_key(|(l, _)| **l) {
            return Err(PdError::LabelCount { label, count: v.len() });
        }

        // dir[c][s]: Some(true) if the edge at that slot enters crossing c.
        let n = crossings.len();
        let mut dir: Vec<[Option<bool>; 4]> = vec![[Some(true), None, Some(false), None]; n];
        let mut queue: Vec<(usize, usize)> = (0..n).flat_map(|c| [(c, 0), (c, 2)]).collect();
        let mut next_seed = 0;
        loop {
            while let Some((c, s)) = queue.pop() {
                let d = dir[c][s].unwrap();
                let label = crossings[c][s];
                // The other end of the same edge has the opposite direction.
                let ends = &slots[&label];
                let other = if ends[0] == (c, s) { ends[1] } else { ends[0] };
                if other != (c, s) {
                    set(&mut dir, &mut queue, other, !d, label)?;
                }
                // Across an over-crossing, one slot enters and the other leaves.
                if s % 2 == 1 {
                    set(&mut dir, &mut queue, (c, 4 - s), !d, label)?;
                }
            }
            // Components that never pass under anything are oriented by
            // label order.
            while next_seed < n && dir[next_seed][1].is_some() {
                next_seed += 1;
            }
            if next_seed == n {
                break;
            }
            let x = crossings[next_seed];
            let enters_at_1 = x[3] != x[1] + 1;
            dir[next_seed][1] = Some(enters_at_1);
            queue.push((next_seed, 1));
        }
        let over_in = dir.iter().map(|d| if d[1] == Some(true) { 1 } else { 3 }).collect();
        Ok(PdCode { crossings, over_in })
    }

    /// Parses `X[a,b,c,d]` groups; anything between groups other than
    /// whitespace, commas and an optional `PD[...]` wrapper is an error.
    /// Empty input is the crossingless unknot diagram.
    pub fn parse(s: &str) -> Result<Self, PdError> {
        let b = s.as_bytes();
        let mut i = 0;
        let mut out = vec![];
        let err = |pos: usize, msg: &str| PdError::Syntax { pos, msg: msg.into() };
        while i < b.len() {
            match b[i] {
                c if c.is_ascii_whitespace() || c == b',' || c == b']' => i += 1,
                b'P' if b[i..].starts_with(b"PD[") => i += 3,
                b'X' => {
                    if b.get(i + 1) != Some(&b'[') {
                        return Err(err(i + 1, "expected '['"));
                    }
                    let close = b[i..].iter().position(|&c| c == b']').ok_or(err(i, "unterminated crossing"))?;
                    let body = &s[i + 2..i + close];
                    let labels: Vec<u32> = body
                        .split(',')
                        .map(|t| t.trim().parse::<u32>())
                        .try_collect()
                        .map_err(|_| err(i + 2, "expected four non-negative integers"))?;
                    let x: [u32; 4] = labels.try_into().map_err(|_| err(i + 2, "expected four labels"))?;
                    out.push(x);
                    i += close + 1;
                }
                _ => return Err(err(i, "unexpected character")),
            }
        }
        Self::new(out)
    }

    pub fn crossings(&self) -> &[[u32; 4]] {
        &self.crossings
    }

    pub fn len(&self) -> usize {
        self.crossings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.crossings.is_empty()
    }

    /// Slot (1 or 3) where the over-strand enters crossing `c`.
    pub fn over_in(&self, c: usize) -> usize {
        self.over_in[c] as usize
    }

    /// `+1` or `-1`.
    pub fn sign(&self, c: usize) -> i32 {
        if self.over_in[c] == 3 {
            1
        } else {
            -1
        }
    }

    pub fn writhe(&self) -> i64 {
        (0..self.len()).map(|c| self.sign(c) as i64).sum()
    }

    /// Number of link components; a crossingless diagram has one.
    pub fn components(&self) -> usize {
        let n = self.crossings.len();
        if n == 0 {
            return 1;
        }
        let mut next: HashMap<u32, u32> = HashMap::new();
        for (c, x) in self.crossings.iter().enumerate() {
            let oi = self.over_in(c);
            next.insert(x[0], x[2]);
            next.insert(x[oi], x[4 - oi]);
        }
        let mut seen = std::collections::HashSet::new();
        let mut comps = 0;
        for &start in next.keys().sorted() {
            if seen.contains(&start) {
                continue;
            }
            comps += 1;
            let mut e = start;
            while seen.insert(e) {
                e = next[&e];
            }
        }
        comps
    }
}

fn set(
    dir: &mut [[Option<bool>; 4]],
    queue: &mut Vec<(usize, usize)>,
    (c, s): (usize, usize),
    d: bool,
    label: u32,
) -> Result<(), PdError> {
    match dir[c][s] {
        Some(x) if x != d => Err(PdError::Orientation(label)),
        Some(_) => Ok(()),
        None => {
            dir[c][s] = Some(d);
            queue.push((c, s));
            Ok(())
        }
    }
}

impl FromStr for PdCode {
    type Err = PdError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

impl fmt::Display for PdCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.crossings.iter().map(|x| format!("X[{}]", x.iter().join(","))).join(" ");
        f.write_str(&s)
    }
}
