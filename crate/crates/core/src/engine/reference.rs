//! A direct implementation of the state sweep on [`ExtendedPoly`] values.
//! It is slow but easy to audit; the tests compare it with the packed
//! engine.

use std::collections::BTreeMap;

use crate::braid::BraidWord;
use crate::extended::ExtendedPoly;
use crate::laurent::LaurentPoly2;
use crate::rep::RepresentationData;

use super::EngineError;

/// A vector in `V^{⊗s}`: basis tuples mapped to nonzero amplitudes.
/// Strand 0 is the open strand.
#[derive(Clone, Debug)]
pub struct EvaluationState<'a> {
    rep: &'a RepresentationData,
    pub amplitudes: BTreeMap<Vec<usize>, ExtendedPoly>,
}

impl<'a> EvaluationState<'a> {
    /// The basis vector `v_{t_0} ⊗ ... ⊗ v_{t_{s-1}}`.
    pub fn basis(rep: &'a RepresentationData, tuple: Vec<usize>) -> Self {
        let one = ExtendedPoly::one(&rep.discriminant);
        EvaluationState { rep, amplitudes: [(tuple, one)].into_iter().collect() }
    }

    /// Applies one braid letter to the adjacent factors it acts on.
    pub fn apply(&mut self, letter: i32) {
        let i = letter.unsigned_abs() as usize;
        let t = if letter > 0 { &self.rep.r } else { &self.rep.r_inv };
        let mut out: BTreeMap<Vec<usize>, ExtendedPoly> = BTreeMap::new();
        for (tuple, x) in &self.amplitudes {
            for (k, c) in t.range([0, 0, 0, 0]..) {
                if k[2] != tuple[i - 1] || k[3] != tuple[i] {
                    continue;
                }
                let mut u = tuple.clone();
                u[i - 1] = k[0];
                u[i] = k[1];
                let y = c.mul(x).expect("single discriminant");
                let z = match out.remove(&u) {
                    Some(z) => z.add(&y).expect("single discriminant"),
                    None => y,
                };
                if !z.is_zero() {
                    out.insert(u, z);
                }
            }
        }
        self.amplitudes = out;
    }

    pub fn amplitude(&self, tuple: &[usize]) -> Option<&ExtendedPoly> {
        self.amplitudes.get(tuple)
    }
}

/// `Σ_x μ(x) ⟨0,x| β |0,x⟩` computed with [`EvaluationState`].
pub fn evaluate_reference(braid: &BraidWord, rep: &RepresentationData) -> Result<LaurentPoly2, EngineError> {
    let s = braid.strands();
    let mut total = ExtendedPoly::zero(&rep.discriminant);
    let ncols = rep.dim.pow(s as u32 - 1);
    for x in 0..ncols {
        let mut tuple = vec![0; s];
        let mut y = x;
        let mut weight = ExtendedPoly::one(&rep.discriminant);
        for slot in tuple.iter_mut().skip(1) {
            *slot = y % rep.dim;
            y /= rep.dim;
            weight = weight.mul(&rep.mu[*slot]).expect("single discriminant");
        }
        let mut st = EvaluationState::basis(rep, tuple.clone());
        for &l in braid.letters() {
            st.apply(l);
        }
        if let Some(a) = st.amplitude(&tuple) {
            total = total.add(&a.mul(&weight).unwrap()).unwrap();
        }
    }
    if !total.radical.is_zero() {
        return Err(EngineError::Assertion(format!("nonzero radical part {}", total.radical)));
    }
    Ok(total.base)
}
