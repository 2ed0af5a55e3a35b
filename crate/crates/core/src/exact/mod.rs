//! Exact scalar arithmetic: arbitrary-precision rationals and Gaussian
//! rationals, plus parsing/printing in the canonical `"p/q"` form used by the
//! JSON interchange format.

pub mod laurent;
pub mod matrix;
pub mod ratfunc;
pub mod roots;
pub mod unipoly;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator.
pub type Rat = BigRational;

/// Rational from an integer pair. Panics on zero denominator.
pub fn rat(num: i64, den: i64) -> Rat {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Rational from an integer.
pub fn rat_int(n: i64) -> Rat {
    BigRational::from(BigInt::from(n))
}

/// Canonical string form: `"p"` for integers, `"p/q"` otherwise.
pub fn rat_to_string(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parse `"p"` or `"p/q"`. The denominator must be nonzero.
pub fn rat_from_str(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = n
        .parse()
        .map_err(|_| format!("bad rational numerator: {s:?}"))?;
    let den: BigInt = d
        .parse()
        .map_err(|_| format!("bad rational denominator: {s:?}"))?;
    if den.is_zero() {
        return Err(format!("zero denominator in rational: {s:?}"));
    }
    Ok(BigRational::new(num, den))
}

/// Rational to `f64`, for the numeric (non-exact) code paths.
pub fn rat_to_f64(x: &Rat) -> f64 {
    // Split into integer and fractional parts so huge numerators stay accurate.
    let trunc = x.trunc();
    let frac = x - &trunc;
    let t = bigint_to_f64(trunc.numer());
    let f = bigint_to_f64(frac.numer()) / bigint_to_f64(frac.denom());
    t + f
}

fn bigint_to_f64(n: &BigInt) -> f64 {
    let s = n.to_string();
    s.parse::<f64>().unwrap_or(if n.is_negative() {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    })
}

/// Gaussian rational `re + im·i`. Used for unitary line-bundle transports,
/// where the invariant `re² + im² = 1` holds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussRat {
    pub re: Rat,
    pub im: Rat,
}

impl GaussRat {
    pub fn new(re: Rat, im: Rat) -> Self {
        GaussRat { re, im }
    }

    pub fn from_rat(re: Rat) -> Self {
        GaussRat {
            re,
            im: Rat::zero(),
        }
    }

    pub fn conj(&self) -> Self {
        GaussRat {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn norm_sq(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }

    /// True when `|self| = 1` exactly.
    pub fn is_unit_modulus(&self) -> bool {
        self.norm_sq().is_one()
    }

    pub fn inv(&self) -> Self {
        let n = self.norm_sq();
        assert!(!n.is_zero(), "inverse of zero Gaussian rational");
        GaussRat {
            re: &self.re / &n,
            im: -&self.im / &n,
        }
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}i", rat_to_string(&self.re), rat_to_string(&self.im))
    }
}

impl std::ops::Add for GaussRat {
    type Output = GaussRat;
    fn add(self, rhs: GaussRat) -> GaussRat {
        GaussRat {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl std::ops::Sub for GaussRat {
    type Output = GaussRat;
    fn sub(self, rhs: GaussRat) -> GaussRat {
        GaussRat {
            re: self.re - rhs.re,
            im: self.im - rhs.im,
        }
    }
}

impl std::ops::Mul for GaussRat {
    type Output = GaussRat;
    fn mul(self, rhs: GaussRat) -> GaussRat {
        GaussRat {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl std::ops::Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl std::ops::Div for GaussRat {
    type Output = GaussRat;
    fn div(self, rhs: GaussRat) -> GaussRat {
        self * rhs.inv()
    }
}

impl Zero for GaussRat {
    fn zero() -> Self {
        GaussRat {
            re: Rat::zero(),
            im: Rat::zero(),
        }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussRat {
    fn one() -> Self {
        GaussRat {
            re: Rat::one(),
            im: Rat::zero(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_string_round_trip() {
        for (n, d, s) in [(1, 2, "1/2"), (-3, 4, "-3/4"), (6, 3, "2"), (0, 5, "0")] {
            let x = rat(n, d);
            assert_eq!(rat_to_string(&x), s);
            assert_eq!(rat_from_str(s).unwrap(), x);
        }
        assert!(rat_from_str("1/0").is_err());
        assert!(rat_from_str("a/b").is_err());
    }

    #[test]
    fn gauss_rat_unit_modulus() {
        // 3/5 + 4/5 i lies on the unit circle.
        let g = GaussRat::new(rat(3, 5), rat(4, 5));
        assert!(g.is_unit_modulus());
        assert_eq!(g.clone() * g.inv(), GaussRat::one());
    }
}
