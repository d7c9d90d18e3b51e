//! Packed polynomial arithmetic for the state sweep.
//!
//! Monomials are flattened into a box `[plo, phi] × [qlo, qhi]` of doubled
//! exponents so that a monomial is a single `i32` key and multiplying by a
//! fixed monomial adds a constant offset. The box is chosen large enough
//! for every intermediate value of one evaluation.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::laurent::{LaurentPoly2, Mono};

pub(crate) trait Coef: Clone + Default + PartialEq + Send + Sync + 'static {
    fn is_zero(&self) -> bool;
    fn one() -> Self;
    fn from_big(b: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
    /// `acc += a * b`; false on overflow.
    fn mul_add(acc: &mut Self, a: &Self, b: &Self) -> bool;
    fn add(acc: &mut Self, a: &Self) -> bool;
}

impl Coef for i64 {
    #[inline]
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn one() -> Self {
        1
    }
    fn from_big(b: &BigInt) -> Option<Self> {
        b.to_i64()
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    #[inline]
    fn mul_add(acc: &mut Self, a: &Self, b: &Self) -> bool {
        match a.checked_mul(*b).and_then(|x| acc.checked_add(x)) {
            Some(v) => {
                *acc = v;
                true
            }
            None => false,
        }
    }
    #[inline]
    fn add(acc: &mut Self, a: &Self) -> bool {
        match acc.checked_add(*a) {
            Some(v) => {
                *acc = v;
                true
            }
            None => false,
        }
    }
}

impl Coef for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn one() -> Self {
        BigInt::from(1)
    }
    fn from_big(b: &BigInt) -> Option<Self> {
        Some(b.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn mul_add(acc: &mut Self, a: &Self, b: &Self) -> bool {
        *acc += a * b;
        true
    }
    fn add(acc: &mut Self, a: &Self) -> bool {
        *acc += a;
        true
    }
}

/// Unordered terms with distinct keys.
pub(crate) type KPoly<C> = Vec<(i32, C)>;

#[derive(Clone, Copy, Debug)]
pub(crate) struct Layout {
    pub plo: i32,
    pub qlo: i32,
    pub width: i32,
    pub size: usize,
}

impl Layout {
    pub fn new(plo: i32, phi: i32, qlo: i32, qhi: i32) -> Self {
        let width = qhi - qlo + 1;
        let size = (phi - plo + 1) as usize * width as usize;
        Layout { plo, qlo, width, size }
    }

    /// Key of a monomial inside the box.
    pub fn key(&self, m: Mono) -> i32 {
        (m.p2 - self.plo) * self.width + (m.q2 - self.qlo)
    }

    /// Key shift for multiplying by `m`.
    pub fn offset(&self, m: Mono) -> i32 {
        m.p2 * self.width + m.q2
    }

    pub fn mono(&self, key: i32) -> Mono {
        Mono::doubled(key / self.width + self.plo, key % self.width + self.qlo)
    }

    pub fn origin(&self) -> i32 {
        self.key(Mono::ONE)
    }

    pub fn offsets<C: Coef>(&self, f: &LaurentPoly2) -> Option<KPoly<C>> {
        f.terms().iter().map(|(m, c)| Some((self.offset(*m), C::from_big(c)?))).collect()
    }

    pub fn poly_of<C: Coef>(&self, f: &[(i32, C)]) -> LaurentPoly2 {
        LaurentPoly2::from_terms(f.iter().map(|(k, c)| (self.mono(*k), c.to_big())))
    }
}

/// Dense scratch accumulator with a list of touched keys.
pub(crate) struct Acc<C> {
    buf: Vec<C>,
    stamp: Vec<u32>,
    gen: u32,
    touched: Vec<i32>,
    pub ok: bool,
}

impl<C: Coef> Acc<C> {
    pub fn new(size: usize) -> Self {
        Acc { buf: vec![C::default(); size], stamp: vec![0; size], gen: 1, touched: vec![], ok: true }
    }

    /// `self += a * b` where `a` holds offsets and `b` holds keys.
    #[inline]
    pub fn add_product(&mut self, a: &[(i32, C)], b: &[(i32, C)]) {
        let gen = self.gen;
        for (ka, ca) in a {
            for (kb, cb) in b {
                let k = (ka + kb) as usize;
                if self.stamp[k] != gen {
                    self.stamp[k] = gen;
                    self.touched.push(k as i32);
                }
                self.ok &= C::mul_add(&mut self.buf[k], ca, cb);
            }
        }
    }

    pub fn add_terms(&mut self, b: &[(i32, C)]) {
        let gen = self.gen;
        for (kb, cb) in b {
            let k = *kb as usize;
            if self.stamp[k] != gen {
                self.stamp[k] = gen;
                self.touched.push(k as i32);
            }
            self.ok &= C::add(&mut self.buf[k], cb);
        }
    }

    /// Moves the nonzero terms into `out` (cleared first) and resets.
    pub fn drain_into(&mut self, out: &mut KPoly<C>) {
        out.clear();
        for &k in &self.touched {
            let c = std::mem::take(&mut self.buf[k as usize]);
            if !c.is_zero() {
                out.push((k, c));
            }
        }
        self.touched.clear();
        self.gen = self.gen.wrapping_add(1);
        if self.gen == 0 {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.gen = 1;
        }
    }
}
