use serde::{Deserialize, Serialize};

use lg_core::{KnotName, LaurentPoly2, Var};

/// Parity of the `q`-exponents, looked at one power of `p` at a time.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QParity {
    AllEven,
    AllOdd,
    /// Each block has a single parity, but not the same one throughout.
    MixedPerBlock,
    /// Some block mixes even and odd exponents.
    Violation,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SymmetryFlags {
    pub p_palindromic: bool,
    pub q_palindromic: bool,
    pub q_parity_by_p_degree: QParity,
    /// Each block `p^{2k}` has the parity of `k` in its `q`-exponents.
    pub q_parity_matches_p_degree: bool,
    /// Coefficients in block `p^{2k}` all have sign `(-1)^k`. Reported
    /// only, since it is not a theorem.
    pub sign_pattern: bool,
    pub chirality_detected: bool,
}

/// Symmetry diagnostics of an invariant value. Comparisons are up to sign.
pub fn symmetry_flags(f: &LaurentPoly2) -> SymmetryFlags {
    let p_palindromic = f.dot_eq(&f.substitute_inverse(Var::P));
    let fq = f.substitute_inverse(Var::Q);
    let q_palindromic = f.dot_eq(&fq) || f.dot_eq(&fq.substitute_inverse(Var::P));

    let mut parities = vec![];
    let mut matches = true;
    let mut signs = true;
    for (p2, block) in f.p_blocks() {
        let par: Vec<bool> = block.terms().iter().map(|(m, _)| (m.q2 / 2).rem_euclid(2) == 1).collect();
        let uniform = par.iter().all(|&x| x == par[0]);
        parities.push(uniform.then_some(par[0]));
        let k_odd = p2.div_euclid(4).rem_euclid(2) == 1;
        matches &= p2 % 4 == 0 && uniform && par[0] == k_odd;
        signs &= block.terms().iter().all(|(_, c)| (c.sign() == num_bigint::Sign::Minus) == k_odd);
    }
    let q_parity_by_p_degree = if parities.iter().any(Option::is_none) {
        QParity::Violation
    } else if parities.iter().all(|x| *x == Some(false)) {
        QParity::AllEven
    } else if parities.iter().all(|x| *x == Some(true)) {
        QParity::AllOdd
    } else {
        QParity::MixedPerBlock
    };
    SymmetryFlags {
        p_palindromic,
        q_palindromic,
        q_parity_by_p_degree,
        q_parity_matches_p_degree: matches,
        sign_pattern: signs,
        chirality_detected: !q_palindromic,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantFingerprint {
    pub name: KnotName,
    pub canonical: LaurentPoly2,
    pub flags: SymmetryFlags,
}

pub fn fingerprint(name: KnotName, value: &LaurentPoly2) -> InvariantFingerprint {
    InvariantFingerprint { name, canonical: value.canonical_fingerprint(), flags: symmetry_flags(value) }
}
