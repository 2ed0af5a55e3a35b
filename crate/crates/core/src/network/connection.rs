//! Parallel transports along darts: trivial, monomial line bundles riding the
//! embedding's homology weights, unitary line bundles, and SL2 bundles.

use crate::exact::{GaussRat, Rat};
use num_traits::{One, Zero};

/// Exact-rational 2x2 matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat2(pub [[Rat; 2]; 2]);

impl Mat2 {
    pub fn identity() -> Self {
        Mat2([
            [Rat::one(), Rat::zero()],
            [Rat::zero(), Rat::one()],
        ])
    }

    pub fn new(a: Rat, b: Rat, c: Rat, d: Rat) -> Self {
        Mat2([[a, b], [c, d]])
    }

    pub fn det(&self) -> Rat {
        &self.0[0][0] * &self.0[1][1] - &self.0[0][1] * &self.0[1][0]
    }

    pub fn trace(&self) -> Rat {
        &self.0[0][0] + &self.0[1][1]
    }

    pub fn mul(&self, rhs: &Mat2) -> Mat2 {
        let a = &self.0;
        let b = &rhs.0;
        Mat2([
            [
                &a[0][0] * &b[0][0] + &a[0][1] * &b[1][0],
                &a[0][0] * &b[0][1] + &a[0][1] * &b[1][1],
            ],
            [
                &a[1][0] * &b[0][0] + &a[1][1] * &b[1][0],
                &a[1][0] * &b[0][1] + &a[1][1] * &b[1][1],
            ],
        ])
    }

    /// Inverse of a determinant-1 matrix: the adjugate.
    pub fn inv_sl2(&self) -> Mat2 {
        debug_assert!(self.det().is_one());
        Mat2([
            [self.0[1][1].clone(), -self.0[0][1].clone()],
            [-self.0[1][0].clone(), self.0[0][0].clone()],
        ])
    }

    pub fn pow(&self, e: i64) -> Mat2 {
        let mut base = if e < 0 { self.inv_sl2() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Mat2::identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

/// Transport data for a network. Reversed darts always carry the inverse
/// transport; constructors only store the forward half.
#[derive(Clone, Debug, PartialEq)]
pub enum Connection {
    /// Identity transports.
    Trivial,
    /// Monomial `z1^a z2^b` on each dart, with `(a, b)` the embedding weights.
    Line,
    /// Unit-modulus Gaussian rational per forward dart.
    UnitaryLine(Vec<GaussRat>),
    /// Determinant-1 rational matrix per forward dart.
    Sl2(Vec<Mat2>),
}

impl Connection {
    /// SL2 transport of a dart (identity for non-SL2 connections).
    pub fn sl2_transport(&self, d: usize) -> Mat2 {
        match self {
            Connection::Sl2(mats) => {
                let m = &mats[d / 2];
                if d & 1 == 0 {
                    m.clone()
                } else {
                    m.inv_sl2()
                }
            }
            _ => Mat2::identity(),
        }
    }

    pub fn unitary_transport(&self, d: usize) -> GaussRat {
        match self {
            Connection::UnitaryLine(ws) => {
                let w = &ws[d / 2];
                if d & 1 == 0 {
                    w.clone()
                } else {
                    w.inv()
                }
            }
            _ => GaussRat::one(),
        }
    }

    pub fn validate(&self, num_edges: usize) -> Result<(), String> {
        match self {
            Connection::Trivial | Connection::Line => Ok(()),
            Connection::UnitaryLine(ws) => {
                if ws.len() != num_edges {
                    return Err("one unitary transport per edge required".into());
                }
                for (e, w) in ws.iter().enumerate() {
                    if !w.is_unit_modulus() {
                        return Err(format!("transport on edge {e} is not unit modulus"));
                    }
                }
                Ok(())
            }
            Connection::Sl2(mats) => {
                if mats.len() != num_edges {
                    return Err("one SL2 transport per edge required".into());
                }
                for (e, m) in mats.iter().enumerate() {
                    if !m.det().is_one() {
                        return Err(format!("transport on edge {e} has determinant != 1"));
                    }
                }
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn sl2_inverse_and_power() {
        let m = Mat2::new(rat(2, 1), rat(3, 1), rat(1, 1), rat(2, 1)); // det 1
        assert!(m.det().is_one());
        assert_eq!(m.mul(&m.inv_sl2()), Mat2::identity());
        assert_eq!(m.pow(3), m.mul(&m).mul(&m));
        assert_eq!(m.pow(-2), m.inv_sl2().mul(&m.inv_sl2()));
    }
}
