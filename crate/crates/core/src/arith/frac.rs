//! Rational functions as unreduced quotients of Laurent polynomials.

use super::laurent::Laurent;
use super::q::Q;
use crate::error::{Error, Result};

/// A quotient `num / den` with `den ≠ 0`. Equality is decided by cross-multiplication.
#[derive(Clone, Debug)]
pub struct Frac {
    pub num: Laurent,
    pub den: Laurent,
}

impl PartialEq for Frac {
    fn eq(&self, o: &Frac) -> bool {
        self.num.mul(&o.den) == o.num.mul(&self.den)
    }
}

impl std::fmt::Display for Frac {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl From<Laurent> for Frac {
    fn from(p: Laurent) -> Frac {
        let den = p.one_like();
        Frac { num: p, den }
    }
}

impl Frac {
    pub fn new(num: Laurent, den: Laurent) -> Result<Frac> {
        if den.is_zero() {
            return Err(Error::Invalid("zero denominator".into()));
        }
        Ok(Frac { num, den }.normalized())
    }

    /// Folds the denominator into the numerator when the division is exact.
    fn normalized(self) -> Frac {
        if self.den.is_one() {
            return self;
        }
        match self.num.exact_div(&self.den) {
            Ok(q) => Frac::from(q),
            Err(_) => self,
        }
    }

    pub fn one_like(&self) -> Frac {
        Frac::from(self.num.one_like())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &Frac) -> Frac {
        if self.den == o.den {
            return Frac { num: self.num.add(&o.num), den: self.den.clone() }.normalized();
        }
        Frac { num: self.num.mul(&o.den).add(&o.num.mul(&self.den)), den: self.den.mul(&o.den) }.normalized()
    }

    pub fn mul(&self, o: &Frac) -> Frac {
        Frac { num: self.num.mul(&o.num), den: self.den.mul(&o.den) }.normalized()
    }

    pub fn scale(&self, c: &Q) -> Frac {
        Frac { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<Frac> {
        if self.num.is_zero() {
            return Err(Error::Invalid("inverse of zero".into()));
        }
        Ok(Frac { num: self.den.clone(), den: self.num.clone() }.normalized())
    }

    pub fn pow(&self, e: i32) -> Result<Frac> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = self.one_like();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// `1 + self`.
    pub fn one_plus(&self) -> Frac {
        Frac { num: self.num.add(&self.den), den: self.den.clone() }.normalized()
    }

    /// The Laurent polynomial equal to this quotient, if there is one.
    pub fn to_laurent(&self) -> Option<Laurent> {
        self.num.exact_div(&self.den).ok()
    }

    /// Evaluates a Laurent polynomial at rational-function values.
    pub fn evaluate(p: &Laurent, vals: &[Frac], unit: &Frac) -> Result<Frac> {
        let mut acc = Frac::from(unit.num.zero_like());
        for (e, c) in p.terms() {
            let mut t = unit.scale(c);
            for (v, &k) in vals.iter().zip(e) {
                if k != 0 {
                    t = t.mul(&v.pow(k)?);
                }
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::laurent::var_names;

    #[test]
    fn cross_multiplication_equality() {
        let v = var_names("y", 2);
        let y1 = Laurent::var(&v, 0);
        let one = Laurent::one(&v);
        let a = Frac::new(y1.add(&one), one.clone()).unwrap();
        let b = Frac::new(y1.mul(&y1).sub(&one), y1.sub(&one)).unwrap();
        assert_eq!(a, b);
        assert_eq!(b.to_laurent().unwrap(), y1.add(&one));
        let inv = a.inv().unwrap();
        assert!(inv.to_laurent().is_none());
        assert_eq!(inv.mul(&a), a.one_like());
    }
}
