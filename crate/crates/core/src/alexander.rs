//! The Alexander polynomial of a closed braid from the reduced Burau
//! representation:
//!
//! `Δ(t) ≐ det(I − ψ(β)) / (1 + t + ... + t^{n-1})`,
//!
//! normalized so that `Δ(t) = Δ(1/t)` and `Δ(1) = 1`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::braid::BraidWord;
use crate::laurent::{LaurentPoly2, Mono};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlexanderError {
    #[error("closure has {0} components")]
    NotAKnot(usize),
    #[error("Burau determinant is not divisible by the cyclotomic factor")]
    NotDivisible,
}

/// A Laurent polynomial in one variable `t`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlexanderPolynomial(LaurentPoly2);

impl AlexanderPolynomial {
    /// `(exponent of t, coefficient)` in ascending order.
    pub fn coeffs(&self) -> impl Iterator<Item = (i32, &BigInt)> {
        self.0.terms().iter().map(|(m, c)| (m.p2 / 2, c))
    }

    pub fn from_coeffs<I: IntoIterator<Item = (i32, i64)>>(it: I) -> Self {
        AlexanderPolynomial(LaurentPoly2::from_int_terms(it.into_iter().map(|(e, c)| (e, 0, c))))
    }

    /// Substitutes `t = p²`, the form in which `LG^{1,1}` produces it.
    pub fn in_p_squared(&self) -> LaurentPoly2 {
        self.0.map_monos(|m| Mono::doubled(2 * m.p2, 0))
    }
}

impl fmt::Display for AlexanderPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.coeffs().enumerate() {
            let (neg, a) = (c.is_negative(), c.abs());
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            match e {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}")?;
                    }
                    if e == 1 {
                        f.write_str("t")?
                    } else {
                        write!(f, "t^{e}")?
                    }
                }
            }
        }
        Ok(())
    }
}

fn t_pow(e: i32) -> LaurentPoly2 {
    LaurentPoly2::mono(Mono::new(e, 0), 1)
}

fn c(x: i64) -> LaurentPoly2 {
    LaurentPoly2::constant(x)
}

pub fn alexander_oracle(braid: &BraidWord) -> Result<AlexanderPolynomial, AlexanderError> {
    let comps = braid.closure_components();
    if comps != 1 {
        return Err(AlexanderError::NotAKnot(comps));
    }
    let n = braid.strands();
    if n == 1 {
        return Ok(AlexanderPolynomial(LaurentPoly2::one()));
    }
    let m = n - 1;
    let mut mat: Vec<Vec<LaurentPoly2>> =
        (0..m).map(|i| (0..m).map(|j| if i == j { c(1) } else { c(0) }).collect()).collect();
    for &l in braid.letters() {
        // The generator differs from the identity in row i only.
        let i = l.unsigned_abs() as usize - 1;
        let (left, mid, right) = if l > 0 { (t_pow(1), -&t_pow(1), c(1)) } else { (c(1), -&t_pow(-1), t_pow(-1)) };
        let mut row = vec![c(0); m];
        row[i] = mid;
        if i >= 1 {
            row[i - 1] = left;
        }
        if i + 1 < m {
            row[i + 1] = right;
        }
        // mat := mat · g, so only column combinations of row i change.
        for r in mat.iter_mut() {
            let x = r[i].clone();
            if x.is_zero() {
                continue;
            }
            for (j, g) in row.iter().enumerate() {
                let delta = if j == i { &(g * &x) - &x } else { g * &x };
                r[j] = &r[j] + &delta;
            }
        }
    }
    for (i, r) in mat.iter_mut().enumerate() {
        for (j, x) in r.iter_mut().enumerate() {
            *x = if i == j { &c(1) - x } else { -&*x };
        }
    }
    let det = determinant(&mat);
    let cyclo = LaurentPoly2::from_int_terms((0..n as i32).map(|e| (e, 0, 1)));
    let q = divide(&det, &cyclo).ok_or(AlexanderError::NotDivisible)?;
    Ok(AlexanderPolynomial(normalize(&q)))
}

/// Determinant by expansion along rows, memoized over column subsets.
fn determinant(mat: &[Vec<LaurentPoly2>]) -> LaurentPoly2 {
    let m = mat.len();
    let mut minors: Vec<LaurentPoly2> = vec![LaurentPoly2::zero(); 1 << m];
    minors[0] = c(1);
    for set in 1usize..(1 << m) {
        let row = set.count_ones() as usize - 1;
        let mut acc = LaurentPoly2::zero();
        let mut sign_neg = false;
        for j in (0..m).rev() {
            if set & (1 << j) == 0 {
                continue;
            }
            let term = &mat[row][j] * &minors[set & !(1 << j)];
            acc = if sign_neg { &acc - &term } else { &acc + &term };
            sign_neg = !sign_neg;
        }
        minors[set] = acc;
    }
    minors[(1 << m) - 1].clone()
}

/// Exact division in `Z[t^±1]` by a polynomial with unit leading coefficient.
fn divide(a: &LaurentPoly2, b: &LaurentPoly2) -> Option<LaurentPoly2> {
    if a.is_zero() {
        return Some(a.clone());
    }
    let dense = |f: &LaurentPoly2| -> (i32, Vec<BigInt>) {
        let lo = f.terms()[0].0.p2 / 2;
        let hi = f.terms().last().unwrap().0.p2 / 2;
        let mut v = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (mo, x) in f.terms() {
            v[(mo.p2 / 2 - lo) as usize] = x.clone();
        }
        (lo, v)
    };
    let (alo, mut av) = dense(a);
    let (blo, bv) = dense(b);
    let lead = bv.last().unwrap().clone();
    if av.len() < bv.len() {
        return None;
    }
    let qlen = av.len() - bv.len() + 1;
    let mut qv = vec![BigInt::zero(); qlen];
    for k in (0..qlen).rev() {
        let top = av[k + bv.len() - 1].clone();
        if top.is_zero() {
            continue;
        }
        if (&top % &lead) != BigInt::zero() {
            return None;
        }
        let f = &top / &lead;
        for (j, y) in bv.iter().enumerate() {
            av[k + j] -= &f * y;
        }
        qv[k] = f;
    }
    if av.iter().any(|x| !x.is_zero()) {
        return None;
    }
    Some(LaurentPoly2::from_terms(qv.into_iter().enumerate().map(|(k, x)| (Mono::new(alo - blo + k as i32, 0), x))))
}

fn normalize(f: &LaurentPoly2) -> LaurentPoly2 {
    if f.is_zero() {
        return f.clone();
    }
    let lo = f.terms()[0].0.p2;
    let hi = f.terms().last().unwrap().0.p2;
    // Centre the exponents; knots have an even span.
    let shift = -(lo + hi) / 2;
    let g = f.mul_mono(Mono::doubled(shift - shift % 2, 0));
    if g.sum_of_coeffs().is_negative() {
        -g
    } else {
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alex(w: &str) -> String {
        alexander_oracle(&w.parse().unwrap()).unwrap().to_string()
    }

    #[test]
    fn small_knots() {
        assert_eq!(alex("1,1,1"), "t^-1 - 1 + t");
        assert_eq!(alex("1,-2,1,-2"), "-t^-1 + 3 - t");
        assert_eq!(alex(""), "1");
        assert_eq!(alex("1,1,1,1,1"), "t^-2 - t^-1 + 1 - t + t^2");
        // Stevedore 6_1.
        assert_eq!(alex("1,1,2,-1,-3,2,-3"), "-2t^-1 + 5 - 2t");
    }

    #[test]
    fn rejects_links() {
        assert_eq!(alexander_oracle(&"1,1".parse().unwrap()), Err(AlexanderError::NotAKnot(2)));
    }
}
