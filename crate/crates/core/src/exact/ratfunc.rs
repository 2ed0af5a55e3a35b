//! Rational functions in one variable over the rationals, kept gcd-reduced
//! with a monic denominator so equality is structural. Response matrices of
//! annular networks have entries here.

use super::laurent::LaurentPoly;
use super::unipoly::UniPoly;
use super::Rat;
use num_traits::{One, Zero};
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFunc {
    num: UniPoly,
    den: UniPoly,
}

impl RatFunc {
    pub fn new(num: UniPoly, den: UniPoly) -> Self {
        assert!(!den.is_zero_poly(), "zero denominator");
        let mut rf = RatFunc { num, den };
        rf.reduce();
        rf
    }

    pub fn from_poly(p: UniPoly) -> Self {
        RatFunc {
            num: p,
            den: UniPoly::one(),
        }
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_poly(UniPoly::constant(c))
    }

    /// Embed a 1-variable Laurent polynomial: negative powers of z go to the
    /// denominator.
    pub fn from_laurent(p: &LaurentPoly) -> Self {
        let (shift, q) = p.to_unipoly();
        if shift >= 0 {
            let zk = monomial(shift as usize);
            RatFunc::new(&q * &zk, UniPoly::one())
        } else {
            RatFunc::new(q, monomial((-shift) as usize))
        }
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == 0
    }

    /// As a Laurent polynomial when the denominator is a monomial `z^k`
    /// (possible after reduction for entries that are genuinely Laurent).
    pub fn to_laurent(&self) -> Option<LaurentPoly> {
        let k = self.den.degree();
        // denominator must be exactly z^k (monic, all lower coeffs zero)
        for i in 0..k {
            if !self.den.coeff(i).is_zero() {
                return None;
            }
        }
        if !self.den.leading().is_one() {
            return None;
        }
        Some(LaurentPoly::from_unipoly(&self.num, -(k as i64)))
    }

    pub fn eval(&self, x: &Rat) -> Option<Rat> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(x) / d)
    }

    fn reduce(&mut self) {
        if self.num.is_zero_poly() {
            self.den = UniPoly::one();
            return;
        }
        let g = self.num.gcd(&self.den);
        if g.degree() > 0 {
            let (n, _) = self.num.div_rem(&g);
            let (d, _) = self.den.div_rem(&g);
            self.num = n;
            self.den = d;
        }
        let lead = self.den.leading();
        if !lead.is_one() {
            let inv = lead.recip();
            self.num = self.num.scale(&inv);
            self.den = self.den.scale(&inv);
        }
    }
}

fn monomial(k: usize) -> UniPoly {
    let mut c = vec![Rat::zero(); k + 1];
    c[k] = Rat::one();
    UniPoly::new(c)
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: RatFunc) -> RatFunc {
        RatFunc::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: RatFunc) -> RatFunc {
        self + (-rhs)
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den,
        }
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: RatFunc) -> RatFunc {
        assert!(!rhs.num.is_zero_poly(), "division by zero rational function");
        RatFunc::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc::from_poly(UniPoly::zero())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero_poly()
    }
}

impl One for RatFunc {
    fn one() -> Self {
        RatFunc::from_poly(UniPoly::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn reduction_is_canonical() {
        // (x^2 - 1)/(x - 1) reduces to x + 1.
        let num = UniPoly::new(vec![rat(-1, 1), rat(0, 1), rat(1, 1)]);
        let den = UniPoly::new(vec![rat(-1, 1), rat(1, 1)]);
        let f = RatFunc::new(num, den);
        assert!(f.is_polynomial());
        assert_eq!(f.num(), &UniPoly::new(vec![rat(1, 1), rat(1, 1)]));
    }

    #[test]
    fn field_ops() {
        let x = RatFunc::from_poly(UniPoly::x());
        let one = RatFunc::one();
        // x + 1/x = (x^2+1)/x
        let f = x.clone() + one.clone() / x.clone();
        assert_eq!(
            f,
            RatFunc::new(
                UniPoly::new(vec![rat(1, 1), rat(0, 1), rat(1, 1)]),
                UniPoly::x()
            )
        );
        let lau = f.to_laurent().unwrap();
        assert_eq!(lau.coeff((1, 0)), rat(1, 1));
        assert_eq!(lau.coeff((-1, 0)), rat(1, 1));
    }
}
