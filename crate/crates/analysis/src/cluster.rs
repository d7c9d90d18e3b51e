use std::collections::BTreeMap;

use lg_core::{KnotName, LaurentPoly2};

use crate::fingerprint::InvariantFingerprint;

/// Knots with equal canonical fingerprints, in groups of two or more.
/// Members are sorted by name and groups by their least member.
pub fn cluster_fingerprints(fps: &[InvariantFingerprint]) -> Vec<Vec<KnotName>> {
    let mut groups: BTreeMap<&LaurentPoly2, Vec<KnotName>> = BTreeMap::new();
    for f in fps {
        groups.entry(&f.canonical).or_default().push(f.name.clone());
    }
    let mut out: Vec<Vec<KnotName>> = groups
        .into_values()
        .filter(|g| g.len() >= 2)
        .map(|mut g| {
            g.sort();
            g.dedup();
            g
        })
        .filter(|g| g.len() >= 2)
        .collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fingerprint::fingerprint;
    use lg_core::Var;

    #[test]
    fn groups_up_to_symmetry() {
        let f: LaurentPoly2 = "1*q^1*p^2;-3;1*q^-1*p^-2".parse().unwrap();
        let g: LaurentPoly2 = "5;1*q^2".parse().unwrap();
        let fps = vec![
            fingerprint("k3".parse().unwrap(), &f),
            fingerprint("k1".parse().unwrap(), &g),
            fingerprint("k2".parse().unwrap(), &f.substitute_inverse(Var::Q)),
            fingerprint("k0".parse().unwrap(), &-&f),
            fingerprint("k4".parse().unwrap(), &"7".parse().unwrap()),
        ];
        let c = cluster_fingerprints(&fps);
        let names: Vec<Vec<String>> = c.iter().map(|g| g.iter().map(|n| n.to_string()).collect()).collect();
        assert_eq!(names, vec![vec!["k0", "k2", "k3"]]);
    }
}
