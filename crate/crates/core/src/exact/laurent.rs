//! Sparse Laurent polynomials in one or two variables over the rationals.
//!
//! Terms live in a sorted exponent map with no stored zero coefficients, so
//! structural equality is semantic equality. One-variable polynomials keep the
//! second exponent at zero.

use super::unipoly::UniPoly;
use super::{rat_to_string, Rat};
use num_complex::Complex64;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly {
    pub vars: u8,
    terms: BTreeMap<(i64, i64), Rat>,
}

impl LaurentPoly {
    pub fn zero_vars(vars: u8) -> Self {
        assert!(vars == 1 || vars == 2);
        LaurentPoly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: u8, c: Rat) -> Self {
        let mut p = Self::zero_vars(vars);
        if !c.is_zero() {
            p.terms.insert((0, 0), c);
        }
        p
    }

    /// `c · z1^a z2^b` (one variable: `c · z^a`, pass `b = 0`).
    pub fn monomial(vars: u8, a: i64, b: i64, c: Rat) -> Self {
        assert!(vars == 2 || b == 0, "second exponent in a 1-variable poly");
        let mut p = Self::zero_vars(vars);
        if !c.is_zero() {
            p.terms.insert((a, b), c);
        }
        p
    }

    pub fn var(vars: u8, which: usize) -> Self {
        match which {
            0 => Self::monomial(vars, 1, 0, Rat::one()),
            1 => Self::monomial(vars, 0, 1, Rat::one()),
            _ => panic!("variable index out of range"),
        }
    }

    pub fn from_terms(vars: u8, terms: impl IntoIterator<Item = ((i64, i64), Rat)>) -> Self {
        let mut p = Self::zero_vars(vars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exp: (i64, i64), c: Rat) {
        assert!(self.vars == 2 || exp.1 == 0);
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn coeff(&self, exp: (i64, i64)) -> Rat {
        self.terms.get(&exp).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, i64), &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn support(&self) -> Vec<(i64, i64)> {
        self.terms.keys().copied().collect()
    }

    /// Evaluate at exact rational points. Points must be nonzero when a
    /// negative exponent is present.
    pub fn eval(&self, at: &[Rat]) -> Result<Rat, String> {
        assert_eq!(at.len(), self.vars as usize);
        let mut acc = Rat::zero();
        for (&(a, b), c) in &self.terms {
            let mut t = c.clone();
            for (exp, x) in [(a, at.first()), (b, at.get(1))] {
                if exp == 0 {
                    continue;
                }
                let x = x.expect("missing evaluation point");
                if x.is_zero() {
                    return Err("evaluation at 0 with a negative or positive exponent on a Laurent term".into());
                }
                t *= pow_rat(x, exp);
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Numeric evaluation on the complex torus.
    pub fn eval_complex(&self, at: &[Complex64]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (&(a, b), c) in &self.terms {
            let mut t = Complex64::new(super::rat_to_f64(c), 0.0);
            if a != 0 {
                t *= at[0].powi(a as i32);
            }
            if b != 0 {
                t *= at[1].powi(b as i32);
            }
            acc += t;
        }
        acc
    }

    /// Substitute `z -> 1/z` in every variable.
    pub fn reciprocal(&self) -> Self {
        LaurentPoly {
            vars: self.vars,
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), c)| ((-a, -b), c.clone()))
                .collect(),
        }
    }

    /// True when `p(z1, z2) = p(1/z1, 1/z2)` exactly.
    pub fn is_reciprocal_symmetric(&self) -> bool {
        self == &self.reciprocal()
    }

    /// One-variable only: split off the lowest power, returning `(k, q)` with
    /// `self = z^k · q(z)` and `q` an ordinary polynomial, `q(0) != 0`.
    pub fn to_unipoly(&self) -> (i64, UniPoly) {
        assert_eq!(self.vars, 1, "to_unipoly needs a 1-variable poly");
        if self.terms.is_empty() {
            return (0, UniPoly::zero());
        }
        let min = self.terms.keys().map(|&(a, _)| a).min().unwrap();
        let max = self.terms.keys().map(|&(a, _)| a).max().unwrap();
        let mut coeffs = vec![Rat::zero(); (max - min + 1) as usize];
        for (&(a, _), c) in &self.terms {
            coeffs[(a - min) as usize] = c.clone();
        }
        (min, UniPoly::new(coeffs))
    }

    pub fn from_unipoly(p: &UniPoly, shift: i64) -> Self {
        let mut out = Self::zero_vars(1);
        for (i, c) in p.coeffs().iter().enumerate() {
            out.add_term((i as i64 + shift, 0), c.clone());
        }
        out
    }

    /// Restrict to one variable by specializing the exponent lattice along
    /// `dir`: keeps only terms with exponent `k·dir` and maps them to `m^k`.
    pub fn ray_restrict(&self, dir: (i64, i64)) -> LaurentPoly {
        assert!(self.vars == 2 || dir == (1, 0));
        let mut out = LaurentPoly::zero_vars(1);
        for (&(a, b), c) in &self.terms {
            if (a, b) == (0, 0) {
                continue;
            }
            if let Some(k) = ray_multiple((a, b), dir) {
                out.add_term((k, 0), c.clone());
            }
        }
        out
    }

    /// Substitute the monomial `z1^i z2^j` for the single variable of a
    /// 1-variable polynomial, producing a 2-variable polynomial.
    pub fn substitute_monomial(&self, dir: (i64, i64)) -> LaurentPoly {
        assert_eq!(self.vars, 1);
        let mut out = LaurentPoly::zero_vars(2);
        for (&(k, _), c) in &self.terms {
            out.add_term((k * dir.0, k * dir.1), c.clone());
        }
        out
    }
}

fn ray_multiple(p: (i64, i64), dir: (i64, i64)) -> Option<i64> {
    // p = k·dir for integer k (dir primitive, nonzero)?
    let k = if dir.0 != 0 {
        if p.0 % dir.0 != 0 {
            return None;
        }
        p.0 / dir.0
    } else {
        if p.1 % dir.1 != 0 {
            return None;
        }
        p.1 / dir.1
    };
    if p.0 == k * dir.0 && p.1 == k * dir.1 {
        Some(k)
    } else {
        None
    }
}

fn pow_rat(x: &Rat, e: i64) -> Rat {
    let mut base = if e < 0 { x.recip() } else { x.clone() };
    let mut e = e.unsigned_abs();
    let mut acc = Rat::one();
    while e > 0 {
        if e & 1 == 1 {
            acc *= &base;
        }
        let sq = &base * &base;
        base = sq;
        e >>= 1;
    }
    acc
}

/// `X = 2 − z − 1/z` as a 1-variable Laurent polynomial.
pub fn x_in_z() -> LaurentPoly {
    LaurentPoly::from_terms(
        1,
        [
            ((0, 0), Rat::from_integer(2.into())),
            ((1, 0), -Rat::one()),
            ((-1, 0), -Rat::one()),
        ],
    )
}

/// Evaluate a polynomial `q(X)` at `X = 2 − m − 1/m`, where `m` is the
/// monomial `z1^i z2^j` (use `dir = (1, 0)` for a plain 1-variable result).
pub fn substitute_x(q: &UniPoly, dir: (i64, i64), vars: u8) -> LaurentPoly {
    let x = if vars == 1 {
        assert_eq!(dir, (1, 0));
        x_in_z()
    } else {
        LaurentPoly::from_terms(
            2,
            [
                ((0, 0), Rat::from_integer(2.into())),
                (dir, -Rat::one()),
                ((-dir.0, -dir.1), -Rat::one()),
            ],
        )
    };
    let mut acc = LaurentPoly::zero_vars(vars);
    let mut power = LaurentPoly::constant(vars, Rat::one());
    for (k, c) in q.coeffs().iter().enumerate() {
        if k > 0 {
            power = power * x.clone();
        }
        if !c.is_zero() {
            acc = acc + power.clone().scale(c);
        }
    }
    acc
}

/// Rewrite a reciprocal-symmetric 1-variable Laurent polynomial as an ordinary
/// polynomial in `X = 2 − z − 1/z`. Returns `None` when the input is not
/// symmetric. Uses `z^k + z^{-k} = T_k`, with `T_0 = 2, T_1 = 2 − X,
/// T_k = (2 − X)·T_{k−1} − T_{k−2}`.
pub fn symmetric_to_x_basis(p: &LaurentPoly) -> Option<UniPoly> {
    assert_eq!(p.vars, 1);
    if !p.is_reciprocal_symmetric() {
        return None;
    }
    let deg = p.terms.keys().map(|&(a, _)| a.abs()).max().unwrap_or(0);
    let two_minus_x = UniPoly::new(vec![Rat::from_integer(2.into()), -Rat::one()]);
    let mut t_prev = UniPoly::constant(Rat::from_integer(2.into())); // T_0
    let mut t_cur = two_minus_x.clone(); // T_1
    let mut acc = UniPoly::constant(p.coeff((0, 0)));
    for k in 1..=deg {
        let t_k = if k == 1 {
            t_cur.clone()
        } else {
            let next = &(&two_minus_x * &t_cur) - &t_prev;
            t_prev = std::mem::replace(&mut t_cur, next);
            t_cur.clone()
        };
        let c = p.coeff((k, 0));
        if !c.is_zero() {
            acc = &acc + &t_k.scale(&c);
        }
    }
    Some(acc)
}

impl LaurentPoly {
    pub fn scale(&self, s: &Rat) -> Self {
        if s.is_zero() {
            return Self::zero_vars(self.vars);
        }
        LaurentPoly {
            vars: self.vars,
            terms: self.terms.iter().map(|(&e, c)| (e, c * s)).collect(),
        }
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        let vars = self.vars.max(rhs.vars);
        let mut out = LaurentPoly {
            vars,
            terms: self.terms,
        };
        for (e, c) in rhs.terms {
            out.add_term(e, c);
        }
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        self + (-rhs)
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            vars: self.vars,
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        let vars = self.vars.max(rhs.vars);
        let mut out = LaurentPoly::zero_vars(vars);
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                out.add_term((a1 + a2, b1 + b2), c1 * c2);
            }
        }
        out
    }
}

impl Zero for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero_vars(1)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for LaurentPoly {
    fn one() -> Self {
        LaurentPoly::constant(1, Rat::one())
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(a, b), c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", rat_to_string(c))?;
            if a != 0 {
                write!(f, "*z1^{}", a)?;
            }
            if b != 0 {
                write!(f, "*z2^{}", b)?;
            }
        }
        Ok(())
    }
}
