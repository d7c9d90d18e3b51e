//! Elements `a + b·Y` of the quadratic extension `Z[p^±½, q^±½][Y] / (Y² − D)`.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::laurent::LaurentPoly2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot combine values over different discriminants ({0} vs {1})")]
pub struct DiscriminantMismatch(pub String, pub String);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendedPoly {
    pub base: LaurentPoly2,
    pub radical: LaurentPoly2,
    disc: Arc<LaurentPoly2>,
}

impl ExtendedPoly {
    pub fn new(base: LaurentPoly2, radical: LaurentPoly2, disc: &Arc<LaurentPoly2>) -> Self {
        ExtendedPoly { base, radical, disc: disc.clone() }
    }

    pub fn from_base(base: LaurentPoly2, disc: &Arc<LaurentPoly2>) -> Self {
        Self::new(base, LaurentPoly2::zero(), disc)
    }

    pub fn zero(disc: &Arc<LaurentPoly2>) -> Self {
        Self::from_base(LaurentPoly2::zero(), disc)
    }

    pub fn one(disc: &Arc<LaurentPoly2>) -> Self {
        Self::from_base(LaurentPoly2::one(), disc)
    }

    pub fn discriminant(&self) -> &Arc<LaurentPoly2> {
        &self.disc
    }

    pub fn is_zero(&self) -> bool {
        self.base.is_zero() && self.radical.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.base.is_one() && self.radical.is_zero()
    }

    fn check(&self, o: &Self) -> Result<(), DiscriminantMismatch> {
        if Arc::ptr_eq(&self.disc, &o.disc) || self.disc == o.disc {
            Ok(())
        } else {
            Err(DiscriminantMismatch(self.disc.to_text(), o.disc.to_text()))
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self, DiscriminantMismatch> {
        self.check(o)?;
        Ok(Self::new(&self.base + &o.base, &self.radical + &o.radical, &self.disc))
    }

    pub fn sub(&self, o: &Self) -> Result<Self, DiscriminantMismatch> {
        self.check(o)?;
        Ok(Self::new(&self.base - &o.base, &self.radical - &o.radical, &self.disc))
    }

    pub fn mul(&self, o: &Self) -> Result<Self, DiscriminantMismatch> {
        self.check(o)?;
        let rr = &self.radical * &o.radical;
        let base = &(&self.base * &o.base) + &(&rr * &self.disc);
        let radical = &(&self.base * &o.radical) + &(&self.radical * &o.base);
        Ok(Self::new(base, radical, &self.disc))
    }

    pub fn neg(&self) -> Self {
        Self::new(-&self.base, -&self.radical, &self.disc)
    }
}

impl fmt::Display for ExtendedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.radical.is_zero() {
            write!(f, "{}", self.base)
        } else {
            write!(f, "({}) + Y·({})", self.base, self.radical)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn y_squares_to_discriminant() {
        let d = Arc::new("1*p^2;-1*q^1".parse::<LaurentPoly2>().unwrap());
        let y = ExtendedPoly::new(LaurentPoly2::zero(), LaurentPoly2::one(), &d);
        let y2 = y.mul(&y).unwrap();
        assert_eq!(y2.base, *d);
        assert!(y2.radical.is_zero());
    }

    #[test]
    fn mismatched_discriminants_are_rejected() {
        let d1 = Arc::new(LaurentPoly2::constant(2));
        let d2 = Arc::new(LaurentPoly2::constant(3));
        let a = ExtendedPoly::one(&d1);
        let b = ExtendedPoly::one(&d2);
        assert!(a.mul(&b).is_err());
        assert!(a.add(&b).is_err());
        let d1b = Arc::new(LaurentPoly2::constant(2));
        assert!(a.add(&ExtendedPoly::one(&d1b)).is_ok());
    }
}
