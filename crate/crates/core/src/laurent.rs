//! Two-variable Laurent polynomials in `p` and `q` with integer coefficients.
//!
//! Exponents are kept doubled so that half-integral powers such as `q^{1/2}`
//! can appear in intermediate values (entries of the R-matrix, for instance).

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::{self, SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// `p^(p2/2) q^(q2/2)`. The derived order is ascending `(e_p, e_q)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mono {
    pub p2: i32,
    pub q2: i32,
}

impl Mono {
    pub const ONE: Mono = Mono { p2: 0, q2: 0 };

    /// Monomial with integral exponents `p^p q^q`.
    pub fn new(p: i32, q: i32) -> Self {
        Mono { p2: 2 * p, q2: 2 * q }
    }

    pub fn doubled(p2: i32, q2: i32) -> Self {
        Mono { p2, q2 }
    }

    pub fn is_integral(&self) -> bool {
        self.p2 % 2 == 0 && self.q2 % 2 == 0
    }

    pub fn inv(&self) -> Self {
        Mono { p2: -self.p2, q2: -self.q2 }
    }
}

impl Mul for Mono {
    type Output = Mono;
    fn mul(self, o: Mono) -> Mono {
        Mono { p2: self.p2 + o.p2, q2: self.q2 + o.q2 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    P,
    Q,
}

/// A Laurent polynomial in `p, q`: a strictly increasing list of monomials
/// with nonzero coefficients.
///
/// The derived order compares the term lists lexicographically; it is the
/// order used to pick canonical representatives.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly2 {
    terms: Vec<(Mono, BigInt)>,
}

impl LaurentPoly2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::mono(Mono::ONE, c)
    }

    pub fn mono(m: Mono, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        if c.is_zero() {
            Self::zero()
        } else {
            LaurentPoly2 { terms: vec![(m, c)] }
        }
    }

    /// The variable `p` or `q` itself.
    pub fn var(v: Var) -> Self {
        match v {
            Var::P => Self::mono(Mono::new(1, 0), 1),
            Var::Q => Self::mono(Mono::new(0, 1), 1),
        }
    }

    /// Collects terms, merging repeated monomials and dropping zeros.
    pub fn from_terms<I>(iter: I) -> Self
    where
        I: IntoIterator<Item = (Mono, BigInt)>,
    {
        let mut terms: Vec<_> = iter.into_iter().collect();
        terms.sort_by_key(|t| t.0);
        let mut out: Vec<(Mono, BigInt)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        LaurentPoly2 { terms: out }
    }

    /// Builds from `(p, q, coeff)` triples with integral exponents.
    pub fn from_int_terms<I, C>(iter: I) -> Self
    where
        I: IntoIterator<Item = (i32, i32, C)>,
        C: Into<BigInt>,
    {
        Self::from_terms(iter.into_iter().map(|(p, q, c)| (Mono::new(p, q), c.into())))
    }

    pub fn terms(&self) -> &[(Mono, BigInt)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Mono, BigInt)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == Mono::ONE && self.terms[0].1.is_one()
    }

    pub fn coeff(&self, m: Mono) -> BigInt {
        match self.terms.binary_search_by(|(x, _)| x.cmp(&m)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    pub fn has_integral_exponents(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_integral())
    }

    /// Value at `p = q = 1`. Only meaningful for integral exponents.
    pub fn sum_of_coeffs(&self) -> BigInt {
        self.terms.iter().map(|(_, c)| c).sum()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly2 { terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect() }
    }

    pub fn mul_mono(&self, m: Mono) -> Self {
        LaurentPoly2 { terms: self.terms.iter().map(|(x, c)| (*x * m, c.clone())).collect() }
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Applies a monomial map. Not required to preserve the order.
    pub fn map_monos(&self, f: impl Fn(Mono) -> Mono) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (f(*m), c.clone())))
    }

    /// Replaces `var` by its inverse.
    pub fn substitute_inverse(&self, var: Var) -> Self {
        match var {
            Var::P => self.map_monos(|m| Mono::doubled(-m.p2, m.q2)),
            Var::Q => self.map_monos(|m| Mono::doubled(m.p2, -m.q2)),
        }
    }

    /// Equality up to an overall sign.
    pub fn dot_eq(&self, other: &Self) -> bool {
        self == other || *self == -other
    }

    /// The least of the eight images of `self` under sign change and the two
    /// variable inversions. Two polynomials related by any of these
    /// operations have the same fingerprint.
    pub fn canonical_fingerprint(&self) -> Self {
        let mut best: Option<Self> = None;
        for ip in [false, true] {
            for iq in [false, true] {
                let f = self.map_monos(|m| Mono::doubled(if ip { -m.p2 } else { m.p2 }, if iq { -m.q2 } else { m.q2 }));
                for g in [-&f, f] {
                    if best.as_ref().is_none_or(|b| g < *b) {
                        best = Some(g);
                    }
                }
            }
        }
        best.unwrap_or_default()
    }

    /// Groups terms by `p`-exponent, in ascending order of that exponent.
    pub fn p_blocks(&self) -> Vec<(i32, LaurentPoly2)> {
        let mut out: Vec<(i32, LaurentPoly2)> = vec![];
        for (m, c) in &self.terms {
            let t = (Mono::doubled(0, m.q2), c.clone());
            match out.last_mut() {
                Some((p2, blk)) if *p2 == m.p2 => blk.terms.push(t),
                _ => out.push((m.p2, LaurentPoly2 { terms: vec![t] })),
            }
        }
        out
    }

    /// Text form: `coeff*q^a*p^b` terms joined by `;`, with `0` for zero.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn parse_text(s: &str) -> Result<Self, ParsePolyError> {
        TextParser { src: s.as_bytes(), pos: 0 }.poly()
    }

    fn add_impl(&self, other: &Self, negate: bool) -> Self {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let rhs = |c: &BigInt| if negate { -c } else { c.clone() };
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push((b[j].0, rhs(&b[j].1)));
                j += 1;
            } else {
                let c = &a[i].1 + rhs(&b[j].1);
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        LaurentPoly2 { terms: out }
    }
}

impl<'a> Add<&'a LaurentPoly2> for &'a LaurentPoly2 {
    type Output = LaurentPoly2;
    fn add(self, o: &LaurentPoly2) -> LaurentPoly2 {
        self.add_impl(o, false)
    }
}

impl<'a> Sub<&'a LaurentPoly2> for &'a LaurentPoly2 {
    type Output = LaurentPoly2;
    fn sub(self, o: &LaurentPoly2) -> LaurentPoly2 {
        self.add_impl(o, true)
    }
}

impl<'a> Mul<&'a LaurentPoly2> for &'a LaurentPoly2 {
    type Output = LaurentPoly2;
    fn mul(self, o: &LaurentPoly2) -> LaurentPoly2 {
        LaurentPoly2::from_terms(
            self.terms.iter().flat_map(|(m, c)| o.terms.iter().map(move |(n, d)| (*m * *n, c * d))),
        )
    }
}

impl Neg for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn neg(self) -> LaurentPoly2 {
        LaurentPoly2 { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

impl Neg for LaurentPoly2 {
    type Output = LaurentPoly2;
    fn neg(mut self) -> LaurentPoly2 {
        for (_, c) in self.terms.iter_mut() {
            *c = -&*c;
        }
        self
    }
}

impl AddAssign<&LaurentPoly2> for LaurentPoly2 {
    fn add_assign(&mut self, o: &LaurentPoly2) {
        *self = &*self + o;
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for LaurentPoly2 {
            type Output = LaurentPoly2;
            fn $f(self, o: LaurentPoly2) -> LaurentPoly2 {
                (&self).$f(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

fn fmt_exp(x2: i32) -> String {
    if x2 % 2 == 0 {
        (x2 / 2).to_string()
    } else {
        format!("{x2}/2")
    }
}

impl fmt::Display for LaurentPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{c}")?;
            if m.q2 != 0 {
                write!(f, "*q^{}", fmt_exp(m.q2))?;
            }
            if m.p2 != 0 {
                write!(f, "*p^{}", fmt_exp(m.p2))?;
            }
        }
        Ok(())
    }
}

impl FromStr for LaurentPoly2 {
    type Err = ParsePolyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse_text(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("polynomial syntax error at byte {pos}: {msg}")]
pub struct ParsePolyError {
    pub pos: usize,
    pub msg: String,
}

struct TextParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl TextParser<'_> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParsePolyError> {
        Err(ParsePolyError { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Result<&str, ParsePolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn sign(&mut self) -> bool {
        if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        }
    }

    fn poly(mut self) -> Result<LaurentPoly2, ParsePolyError> {
        if self.peek().is_none() {
            return self.err("empty input");
        }
        let mut terms = vec![];
        loop {
            terms.push(self.term()?);
            if self.peek().is_none() {
                break;
            }
            if !self.eat(b';') {
                return self.err("expected ';'");
            }
        }
        Ok(LaurentPoly2::from_terms(terms))
    }

    fn term(&mut self) -> Result<(Mono, BigInt), ParsePolyError> {
        let neg = self.sign();
        let mut coeff = BigInt::one();
        let mut need_factor = true;
        if matches!(self.peek(), Some(b'0'..=b'9')) {
            coeff = self.digits()?.parse().unwrap();
            need_factor = false;
        }
        if neg {
            coeff = -coeff;
        }
        let mut mono = Mono::ONE;
        let (mut seen_p, mut seen_q) = (false, false);
        loop {
            if !need_factor && !self.eat(b'*') {
                break;
            }
            need_factor = false;
            let seen = match self.peek() {
                Some(b'p') => &mut seen_p,
                Some(b'q') => &mut seen_q,
                _ => return self.err("expected 'p' or 'q'"),
            };
            if *seen {
                return self.err("repeated variable");
            }
            *seen = true;
            let is_p = self.src[self.pos] == b'p';
            self.pos += 1;
            let e2 = if self.eat(b'^') { self.exponent()? } else { 2 };
            if is_p {
                mono.p2 = e2;
            } else {
                mono.q2 = e2;
            }
        }
        Ok((mono, coeff))
    }

    fn exponent(&mut self) -> Result<i32, ParsePolyError> {
        let neg = self.sign();
        let start = self.pos;
        let n: i64 =
            self.digits()?.parse().map_err(|_| ParsePolyError { pos: start, msg: "exponent out of range".into() })?;
        let half = if self.eat(b'/') {
            if self.digits()? != "2" {
                return self.err("only halves are allowed as fractional exponents");
            }
            true
        } else {
            false
        };
        let e2 = if half { n } else { 2 * n };
        let e2 = if neg { -e2 } else { e2 };
        i32::try_from(e2)
            .ok()
            .filter(|e| e.abs() < (1 << 28))
            .ok_or(ParsePolyError { pos: start, msg: "exponent out of range".into() })
    }
}

/// JSON exponent: an integer, or an `x.5` number for half-integers.
pub(crate) fn exp_to_json(x2: i32) -> serde_json::Value {
    if x2 % 2 == 0 {
        serde_json::Value::from(x2 / 2)
    } else {
        serde_json::Value::from(x2 as f64 / 2.0)
    }
}

pub(crate) fn exp_from_json(v: &serde_json::Value) -> Option<i32> {
    if let Some(i) = v.as_i64() {
        return i32::try_from(i.checked_mul(2)?).ok();
    }
    let f = v.as_f64()?;
    let d = f * 2.0;
    (d.fract() == 0.0 && d.abs() < (1u32 << 30) as f64).then_some(d as i32)
}

impl Serialize for LaurentPoly2 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (m, c) in &self.terms {
            seq.serialize_element(&(exp_to_json(m.p2), exp_to_json(m.q2), c.to_string()))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPoly2 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = LaurentPoly2;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a list of [e_p, e_q, \"coeff\"] terms")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Self::Value, A::Error> {
                let mut terms = vec![];
                while let Some((ep, eq, c)) = seq.next_element::<(serde_json::Value, serde_json::Value, String)>()? {
                    let p2 = exp_from_json(&ep).ok_or_else(|| de::Error::custom("bad p exponent"))?;
                    let q2 = exp_from_json(&eq).ok_or_else(|| de::Error::custom("bad q exponent"))?;
                    let c: BigInt = c.parse().map_err(de::Error::custom)?;
                    terms.push((Mono::doubled(p2, q2), c));
                }
                Ok(LaurentPoly2::from_terms(terms))
            }
        }
        d.deserialize_seq(V)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(s: &str) -> LaurentPoly2 {
        s.parse().unwrap()
    }

    #[test]
    fn text_roundtrip() {
        let f = lp("2*q^-6;-10*q^-4*p^2;181;p^-1;-q^1/2");
        assert_eq!(f.to_text().parse::<LaurentPoly2>().unwrap(), f);
        assert_eq!(f.coeff(Mono::new(0, -6)), BigInt::from(2));
        assert_eq!(f.coeff(Mono::doubled(0, 1)), BigInt::from(-1));
        assert_eq!(LaurentPoly2::zero().to_text(), "0");
        assert_eq!(lp("0"), LaurentPoly2::zero());
        assert_eq!(lp("3;-3"), LaurentPoly2::zero());
    }

    #[test]
    fn canonical_order() {
        let f = lp("1*p^1;1*q^5;1*q^-1*p^-1");
        let ms: Vec<_> = f.terms().iter().map(|(m, _)| *m).collect();
        assert_eq!(ms, vec![Mono::new(-1, -1), Mono::new(0, 5), Mono::new(1, 0)]);
    }

    #[test]
    fn parse_errors_have_positions() {
        let e = lp_err("1*q^2;;3");
        assert_eq!(e.pos, 6);
        assert_eq!(lp_err("").pos, 0);
        assert_eq!(lp_err("2*x").pos, 2);
        assert_eq!(lp_err("2*q^").pos, 4);
        assert_eq!(lp_err("2*q^1*q^2").pos, 6);
    }

    fn lp_err(s: &str) -> ParsePolyError {
        s.parse::<LaurentPoly2>().unwrap_err()
    }

    #[test]
    fn arithmetic() {
        let a = lp("1*p^1;-1*p^-1");
        let b = lp("1*p^1;1*p^-1");
        assert_eq!(&a * &b, lp("1*p^2;-1*p^-2"));
        assert_eq!(&a + &b, lp("2*p^1"));
        assert_eq!(&a - &a, LaurentPoly2::zero());
        assert_eq!(a.pow(2), lp("1*p^2;-2;1*p^-2"));
    }

    #[test]
    fn json_roundtrip() {
        let f = lp("2*q^-1/2*p^3;-7");
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"[[0,0,"-7"],[3,-0.5,"2"]]"#);
        assert_eq!(serde_json::from_str::<LaurentPoly2>(&s).unwrap(), f);
    }

    #[test]
    fn fingerprint_orbit() {
        let f = lp("3*q^2*p^1;-1*q^-1;5*p^-4");
        let fp = f.canonical_fingerprint();
        for g in [
            -&f,
            f.substitute_inverse(Var::Q),
            f.substitute_inverse(Var::P),
            -f.substitute_inverse(Var::P).substitute_inverse(Var::Q),
        ] {
            assert_eq!(g.canonical_fingerprint(), fp);
        }
        assert_ne!(lp("1*q^1;2").canonical_fingerprint(), fp);
    }

    #[test]
    fn dot_eq_is_up_to_sign() {
        let f = lp("1*q^1;-2");
        assert!(f.dot_eq(&-&f));
        assert!(!f.dot_eq(&f.substitute_inverse(Var::Q)));
    }
}
