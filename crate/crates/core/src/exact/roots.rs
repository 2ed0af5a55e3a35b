//! Root reports for one-variable Laurent polynomials: exact square-free and
//! Sturm analysis over the rationals, plus floating approximations of all
//! complex roots via Durand–Kerner iteration with Newton polishing.

use super::laurent::LaurentPoly;
use super::unipoly::UniPoly;
use num_complex::Complex64;
use num_traits::Zero;

#[derive(Clone, Debug)]
pub struct RootReport {
    /// Monic gcd(p, p′) over the rationals (p taken as an ordinary polynomial
    /// after stripping the z power). Degree 0 means p is square-free.
    pub gcd_with_derivative: UniPoly,
    /// Sturm count of distinct real roots in (0, ∞).
    pub positive_real_count: usize,
    /// All complex roots with multiplicities, polished to ~1e-12.
    pub roots: Vec<(Complex64, usize)>,
    /// Power of z factored out of the Laurent polynomial.
    pub z_shift: i64,
}

/// Analyze the roots of a nonzero 1-variable Laurent polynomial.
pub fn real_roots(p: &LaurentPoly) -> Result<RootReport, String> {
    if p.is_zero() {
        return Err("zero polynomial".into());
    }
    let (shift, q) = p.to_unipoly();
    let gcd = q.gcd(&q.derivative());
    let positive = q.count_positive_roots();
    let mut roots = Vec::new();
    for (factor, mult) in q.square_free_decomposition() {
        for r in complex_roots(&factor) {
            roots.push((r, mult));
        }
    }
    roots.sort_by(|a, b| {
        (a.0.re, a.0.im)
            .partial_cmp(&(b.0.re, b.0.im))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(RootReport {
        gcd_with_derivative: gcd,
        positive_real_count: positive,
        roots,
        z_shift: shift,
    })
}

/// All roots of a square-free polynomial by Durand–Kerner, polished by Newton.
pub fn complex_roots(p: &UniPoly) -> Vec<Complex64> {
    let coeffs: Vec<Complex64> = p
        .coeffs()
        .iter()
        .map(|c| Complex64::new(super::rat_to_f64(c), 0.0))
        .collect();
    complex_roots_c64(&coeffs)
}

/// Durand–Kerner roots of a polynomial given by complex coefficients in
/// ascending degree order.
pub fn complex_roots_c64(coeffs_in: &[Complex64]) -> Vec<Complex64> {
    let mut coeffs = coeffs_in.to_vec();
    while coeffs.last().is_some_and(|c| c.norm() == 0.0) {
        coeffs.pop();
    }
    let n = coeffs.len().saturating_sub(1);
    if n == 0 {
        return vec![];
    }
    let lead = coeffs[n];
    let coeffs: Vec<Complex64> = coeffs.iter().map(|c| c / lead).collect();
    // Cauchy bound for the root radius.
    let radius = 1.0
        + coeffs[..n]
            .iter()
            .map(|c| c.norm())
            .fold(0.0f64, f64::max);
    let mut w: Vec<Complex64> = (0..n)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64) + 0.4;
            Complex64::from_polar(radius * 0.7, angle)
        })
        .collect();
    let eval = |x: Complex64| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    };
    for _ in 0..400 {
        let mut max_step = 0.0f64;
        for i in 0..n {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    denom *= w[i] - w[j];
                }
            }
            if denom.norm() == 0.0 {
                continue;
            }
            let step = eval(w[i]) / denom;
            w[i] -= step;
            max_step = max_step.max(step.norm());
        }
        if max_step < 1e-14 * radius.max(1.0) {
            break;
        }
    }
    // Newton polish (roots are simple: quadratic convergence).
    let dcoeffs: Vec<Complex64> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * Complex64::new(i as f64, 0.0))
        .collect();
    let deval = |x: Complex64| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in dcoeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    };
    for r in w.iter_mut() {
        for _ in 0..40 {
            let d = deval(*r);
            if d.norm() < 1e-300 {
                break;
            }
            let step = eval(*r) / d;
            *r -= step;
            if step.norm() < 1e-15 * (r.norm() + 1.0) {
                break;
            }
        }
        // Snap tiny imaginary parts of near-real roots.
        if r.im.abs() < 1e-12 * (1.0 + r.re.abs()) {
            let cand = Complex64::new(r.re, 0.0);
            if eval(cand).norm() <= eval(*r).norm() * 4.0 + 1e-300 {
                *r = cand;
            }
        }
    }
    w
}
