//! Dense univariate polynomials over the rationals: Euclidean division, gcd,
//! Yun square-free decomposition and Sturm-sequence root counting. These back
//! the exact half of the root reports for annulus characteristic polynomials.

use super::Rat;
use num_traits::{One, Signed, Zero};
use std::ops::{Add, Mul, Neg, Sub};

/// Coefficients in ascending degree order; empty means zero, and the leading
/// coefficient is nonzero otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rat>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: vec![] }
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    pub fn x() -> Self {
        Self::new(vec![Rat::zero(), Rat::one()])
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero_poly(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; zero polynomial reports degree 0 by convention here, guard with
    /// `is_zero_poly` when it matters.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + super::rat_to_f64(c);
        }
        acc
    }

    pub fn scale(&self, s: &Rat) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * Rat::from_integer((i as i64 + 1).into()))
                .collect(),
        )
    }

    /// Euclidean division: `self = q·d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!d.is_zero_poly(), "division by zero polynomial");
        let mut r = self.coeffs.clone();
        let dd = d.degree();
        let dl = d.leading();
        if self.is_zero_poly() || self.degree() < dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut q = vec![Rat::zero(); self.degree() - dd + 1];
        for k in (dd..r.len()).rev() {
            let c = &r[k] / &dl;
            if c.is_zero() {
                continue;
            }
            q[k - dd] = c.clone();
            for (i, dc) in d.coeffs.iter().enumerate() {
                let v = &r[k - dd + i] - &(dc * &c);
                r[k - dd + i] = v;
            }
        }
        (UniPoly::new(q), UniPoly::new(r))
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero_poly() {
            let (_, r) = a.div_rem(&b);
            a = std::mem::replace(&mut b, r);
        }
        a.monic()
    }

    pub fn monic(&self) -> UniPoly {
        if self.is_zero_poly() {
            return self.clone();
        }
        let l = self.leading();
        self.scale(&l.recip())
    }

    /// Square-free part: `self / gcd(self, self')`, monic.
    pub fn square_free_part(&self) -> UniPoly {
        let g = self.gcd(&self.derivative());
        let (q, r) = self.div_rem(&g);
        debug_assert!(r.is_zero_poly());
        q.monic()
    }

    /// Yun's algorithm: returns `[(f1, 1), (f2, 2), ...]` with
    /// `self = lc · Π fi^i` and the `fi` monic, square-free, pairwise coprime.
    pub fn square_free_decomposition(&self) -> Vec<(UniPoly, usize)> {
        if self.is_zero_poly() || self.degree() == 0 {
            return vec![];
        }
        let f = self.monic();
        let df = f.derivative();
        let mut a = f.gcd(&df);
        let (mut b, _) = f.div_rem(&a);
        let (mut c, _) = df.div_rem(&a);
        let mut d = &c - &b.derivative();
        let mut out = Vec::new();
        let mut mult = 1usize;
        loop {
            if b.degree() == 0 {
                break;
            }
            a = b.gcd(&d);
            if a.degree() > 0 {
                out.push((a.monic(), mult));
            }
            let (nb, _) = b.div_rem(&a);
            let (nc, _) = d.div_rem(&a);
            b = nb;
            c = nc;
            d = &c - &b.derivative();
            mult += 1;
        }
        out
    }

    /// Sturm chain of the polynomial (caller usually passes the square-free
    /// part).
    fn sturm_chain(&self) -> Vec<UniPoly> {
        let mut chain = vec![self.clone(), self.derivative()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero_poly() {
                chain.pop();
                break;
            }
            let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
            if r.is_zero_poly() {
                break;
            }
            chain.push(-&r);
        }
        chain
    }

    /// Number of distinct real roots in the open interval `(0, +inf)`.
    /// The polynomial must not vanish at 0 (strip powers of x first).
    pub fn count_positive_roots(&self) -> usize {
        assert!(!self.is_zero_poly());
        assert!(!self.coeff(0).is_zero(), "root at 0; strip x powers first");
        let sf = self.square_free_part();
        let chain = sf.sturm_chain();
        let sign_at_zero: Vec<i8> = chain
            .iter()
            .map(|p| sign_of(&p.coeff(0)))
            .collect();
        let sign_at_inf: Vec<i8> = chain.iter().map(|p| sign_of(&p.leading())).collect();
        let v0 = sign_changes(&sign_at_zero);
        let vinf = sign_changes(&sign_at_inf);
        v0 - vinf
    }
}

fn sign_of(x: &Rat) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

fn sign_changes(signs: &[i8]) -> usize {
    let mut count = 0;
    let mut last = 0i8;
    for &s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new(
            (0..n)
                .map(|i| self.coeff(i) + rhs.coeff(i))
                .collect(),
        )
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new(
            (0..n)
                .map(|i| self.coeff(i) - rhs.coeff(i))
                .collect(),
        )
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero_poly() || rhs.is_zero_poly() {
            return UniPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

// Owned-value operator impls so UniPoly satisfies the `Ring` trait bounds and
// can sit inside a generic `Matrix`.
impl Add for UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: UniPoly) -> UniPoly {
        &self + &rhs
    }
}
impl Sub for UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: UniPoly) -> UniPoly {
        &self - &rhs
    }
}
impl Mul for UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: UniPoly) -> UniPoly {
        &self * &rhs
    }
}
impl Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        -&self
    }
}
impl Zero for UniPoly {
    fn zero() -> Self {
        UniPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.is_zero_poly()
    }
}
impl One for UniPoly {
    fn one() -> Self {
        UniPoly::constant(Rat::one())
    }
}
