use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use lg_core::KnotName;

const BUNDLED: &str = include_str!("../data/cliques.tsv");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CliqueKind {
    Mutant,
    Nonmutant,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Clique {
    pub kind: CliqueKind,
    pub members: Vec<KnotName>,
}

#[derive(Debug, Error)]
#[error("line {line}: {msg}")]
pub struct AnnotationError {
    pub line: usize,
    pub msg: String,
}

/// Known groups of knots sharing an invariant value.
#[derive(Clone, Debug, Default)]
pub struct Annotations {
    pub cliques: Vec<Clique>,
}

impl Annotations {
    pub fn bundled() -> Self {
        Self::parse(BUNDLED).expect("bundled clique file is valid")
    }

    /// Lines are `kind<TAB>name name ...`; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, AnnotationError> {
        let mut cliques = vec![];
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: &str| AnnotationError { line: i + 1, msg: msg.to_string() };
            let (kind, rest) = line.split_once(char::is_whitespace).ok_or_else(|| err("missing members"))?;
            let kind = match kind {
                "mutant" => CliqueKind::Mutant,
                "nonmutant" => CliqueKind::Nonmutant,
                _ => return Err(err("kind must be mutant or nonmutant")),
            };
            let members: Vec<KnotName> = rest.split_whitespace().map(|s| s.parse().unwrap()).collect();
            if members.len() < 2 {
                return Err(err("a clique needs at least two members"));
            }
            cliques.push(Clique { kind, members });
        }
        Ok(Annotations { cliques })
    }

    pub fn members(&self) -> BTreeSet<KnotName> {
        self.cliques.iter().flat_map(|c| c.members.iter().cloned()).collect()
    }

    /// Cliques sharing a member merged together, restricted to knots with
    /// `crossings` crossings when given. Sorted like cluster output.
    pub fn expected_groups(&self, crossings: Option<u32>) -> Vec<Vec<KnotName>> {
        let keep = |n: &KnotName| crossings.is_none() || n.crossings() == crossings;
        let names: Vec<KnotName> = self.members().into_iter().filter(keep).collect();
        let index: BTreeMap<&KnotName, usize> = names.iter().enumerate().map(|(i, n)| (n, i)).collect();
        let mut parent: Vec<usize> = (0..names.len()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for c in &self.cliques {
            let ids: Vec<usize> = c.members.iter().filter_map(|m| index.get(m).copied()).collect();
            for w in ids.windows(2) {
                let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
                parent[a] = b;
            }
        }
        let mut groups: BTreeMap<usize, Vec<KnotName>> = BTreeMap::new();
        for (i, n) in names.iter().enumerate() {
            let r = find(&mut parent, i);
            groups.entry(r).or_default().push(n.clone());
        }
        let mut out: Vec<Vec<KnotName>> = groups.into_values().filter(|g| g.len() >= 2).collect();
        out.sort();
        out
    }

    /// The kinds of the cliques lying inside `group`.
    pub fn kinds_within(&self, group: &[KnotName]) -> BTreeSet<CliqueKind> {
        let set: BTreeSet<&KnotName> = group.iter().collect();
        self.cliques.iter().filter(|c| c.members.iter().all(|m| set.contains(m))).map(|c| c.kind).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_counts() {
        let a = Annotations::bundled();
        assert_eq!(a.expected_groups(Some(11)).len(), 16);
        let twelve = a.expected_groups(Some(12));
        assert_eq!(
            a.cliques.iter().filter(|c| c.kind == CliqueKind::Mutant && c.members[0].crossings() == Some(12)).count(),
            75
        );
        assert_eq!(twelve.len(), 77);
    }

    #[test]
    fn merges_overlapping() {
        let a = Annotations::parse("mutant\tx1 x2\nnonmutant x2 x3 # comment\nmutant y1 y2\n").unwrap();
        let g = a.expected_groups(None);
        assert_eq!(g.len(), 2);
        assert_eq!(g[0].len(), 3);
        assert_eq!(a.kinds_within(&g[0]).len(), 2);
        assert!(Annotations::parse("other a b").is_err());
        assert!(Annotations::parse("mutant a").is_err());
    }
}
