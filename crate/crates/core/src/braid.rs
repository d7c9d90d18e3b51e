//! Braid words in the Artin generators.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidError {
    #[error("invalid braid letter '{0}'")]
    Syntax(String),
    #[error("braid letter 0 at position {0}")]
    ZeroLetter(usize),
    #[error("letter {letter} at position {pos} needs more than {strands} strands")]
    LetterOutOfRange { letter: i32, pos: usize, strands: usize },
    #[error("a braid needs at least one strand")]
    NoStrands,
    #[error("cannot destabilize: {0}")]
    Destabilize(String),
    #[error("no braid relation applies at position {0}")]
    NoRelation(usize),
}

/// A braid on `strands` strands. Letter `±i` is `σ_i^{±1}`, crossing strands
/// `i-1` and `i` (0-based); a positive letter is a positive crossing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self, BraidError> {
        if strands < 1 {
            return Err(BraidError::NoStrands);
        }
        for (pos, &l) in letters.iter().enumerate() {
            if l == 0 {
                return Err(BraidError::ZeroLetter(pos));
            }
            if l.unsigned_abs() as usize >= strands {
                return Err(BraidError::LetterOutOfRange { letter: l, pos, strands });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    /// The trivial braid on one strand, whose closure is the unknot.
    pub fn unknot() -> Self {
        BraidWord { strands: 1, letters: vec![] }
    }

    /// Parses comma or whitespace separated letters. Without `strands`, the
    /// strand count is one more than the largest generator index.
    pub fn parse(s: &str, strands: Option<usize>) -> Result<Self, BraidError> {
        let letters: Vec<i32> = s
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse().map_err(|_| BraidError::Syntax(t.to_string())))
            .try_collect()?;
        let strands =
            strands.unwrap_or_else(|| letters.iter().map(|l| l.unsigned_abs() as usize).max().unwrap_or(0) + 1);
        Self::new(strands, letters)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn writhe(&self) -> i64 {
        self.letters.iter().map(|l| l.signum() as i64).sum()
    }

    /// `w β w⁻¹`.
    pub fn conjugate(&self, w: &[i32]) -> Result<Self, BraidError> {
        let letters = w.iter().copied().chain(self.letters.iter().copied()).chain(w.iter().rev().map(|l| -l)).collect();
        Self::new(self.strands, letters)
    }

    /// Cyclic rotation, moving the first `k` letters to the end.
    pub fn rotate(&self, k: usize) -> Self {
        let mut letters = self.letters.clone();
        if !letters.is_empty() {
            let n = letters.len();
            letters.rotate_left(k % n);
        }
        BraidWord { strands: self.strands, letters }
    }

    /// Markov stabilization: adds a strand and the letter `±σ_s` joining it.
    pub fn stabilize(&self, positive: bool) -> Self {
        let s = self.strands as i32;
        let mut letters = self.letters.clone();
        letters.push(if positive { s } else { -s });
        BraidWord { strands: self.strands + 1, letters }
    }

    /// Inverse of [`stabilize`](Self::stabilize). The last letter must be the
    /// only occurrence of the top generator.
    pub fn destabilize(&self) -> Result<Self, BraidError> {
        let top = self.strands as i32 - 1;
        if top < 1 {
            return Err(BraidError::Destabilize("single strand".into()));
        }
        match self.letters.last() {
            Some(l) if l.abs() == top => {}
            _ => return Err(BraidError::Destabilize(format!("last letter is not ±{top}"))),
        }
        let count = self.letters.iter().filter(|l| l.abs() == top).count();
        if count != 1 {
            return Err(BraidError::Destabilize(format!("generator {top} occurs {count} times")));
        }
        let letters = self.letters[..self.letters.len() - 1].to_vec();
        Ok(BraidWord { strands: self.strands - 1, letters })
    }

    /// Rewrites at position `i` by `aba = bab` (adjacent generators, equal
    /// signs) or `ab = ba` (distant generators).
    pub fn braid_relation_rewrite(&self, i: usize) -> Result<Self, BraidError> {
        let w = &self.letters;
        let mut letters = w.clone();
        if i + 1 < w.len() && (w[i].abs() - w[i + 1].abs()).abs() >= 2 {
            letters.swap(i, i + 1);
        } else if i + 2 < w.len()
            && w[i] == w[i + 2]
            && (w[i].abs() - w[i + 1].abs()).abs() == 1
            && w[i].signum() == w[i + 1].signum()
        {
            letters[i] = w[i + 1];
            letters[i + 1] = w[i];
            letters[i + 2] = w[i + 1];
        } else {
            return Err(BraidError::NoRelation(i));
        }
        Ok(BraidWord { strands: self.strands, letters })
    }

    /// The mirror image: every crossing changes sign.
    pub fn reflect(&self) -> Self {
        BraidWord { strands: self.strands, letters: self.letters.iter().map(|l| -l).collect() }
    }

    /// The reversed word, whose closure is the knot with opposite orientation.
    pub fn invert(&self) -> Self {
        BraidWord { strands: self.strands, letters: self.letters.iter().rev().copied().collect() }
    }

    /// Number of components of the closure.
    pub fn closure_components(&self) -> usize {
        let mut pos_of: Vec<usize> = (0..self.strands).collect();
        for l in &self.letters {
            let i = l.unsigned_abs() as usize;
            pos_of.swap(i - 1, i);
        }
        // pos_of[j] = strand that ends at position j; follow cycles.
        let mut seen = vec![false; self.strands];
        let mut n = 0;
        for s in 0..self.strands {
            if !seen[s] {
                n += 1;
                let mut x = s;
                while !seen[x] {
                    seen[x] = true;
                    x = pos_of[x];
                }
            }
        }
        n
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letters.iter().join(","))
    }
}

impl FromStr for BraidWord {
    type Err = BraidError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s, None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_infer() {
        let b = BraidWord::parse("1, -2 1 -2", None).unwrap();
        assert_eq!(b.strands(), 3);
        assert_eq!(b.letters(), &[1, -2, 1, -2]);
        assert_eq!(b.to_string(), "1,-2,1,-2");
        assert_eq!(BraidWord::parse("", None).unwrap().strands(), 1);
        assert_eq!(BraidWord::parse("1,1,1", Some(4)).unwrap().strands(), 4);
    }

    #[test]
    fn parse_errors() {
        assert_eq!(BraidWord::parse("1,0", None), Err(BraidError::ZeroLetter(1)));
        assert!(matches!(
            BraidWord::parse("1,3", Some(3)),
            Err(BraidError::LetterOutOfRange { letter: 3, pos: 1, strands: 3 })
        ));
        assert_eq!(BraidWord::parse("", Some(0)), Err(BraidError::NoStrands));
        assert!(matches!(BraidWord::parse("1,a", None), Err(BraidError::Syntax(_))));
    }

    #[test]
    fn markov_moves() {
        let b: BraidWord = "1,-2,1,-2".parse().unwrap();
        let s = b.stabilize(false);
        assert_eq!(s.strands(), 4);
        assert_eq!(s.letters().last(), Some(&-3));
        assert_eq!(s.destabilize().unwrap(), b);
        assert!(b.destabilize().is_err());
        assert!(BraidWord::parse("2,1,2", None).unwrap().destabilize().is_err());
    }

    #[test]
    fn relations() {
        let b: BraidWord = "1,2,1,3".parse().unwrap();
        assert_eq!(b.braid_relation_rewrite(0).unwrap().letters(), &[2, 1, 2, 3]);
        assert_eq!(b.braid_relation_rewrite(2).unwrap().letters(), &[1, 2, 3, 1]);
        assert!(b.braid_relation_rewrite(1).is_err());
        assert!("1,-2,1".parse::<BraidWord>().unwrap().braid_relation_rewrite(0).is_err());
    }

    #[test]
    fn components() {
        assert_eq!("1,1,1".parse::<BraidWord>().unwrap().closure_components(), 1);
        assert_eq!("1,1".parse::<BraidWord>().unwrap().closure_components(), 2);
        assert_eq!("1,-2,1,-2".parse::<BraidWord>().unwrap().closure_components(), 1);
        assert_eq!(BraidWord::unknot().closure_components(), 1);
    }
}
