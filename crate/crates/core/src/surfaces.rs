//! Spectral data of bundle Laplacians: characteristic polynomials on the
//! annulus and torus, root structure, the cylinder closed form, Newton
//! polygons, decomposition over homology classes, free energy, amoeba scans,
//! quaternion determinants, and the pair-of-pants polynomial.

use crate::combin;
use crate::exact::laurent::{substitute_x, symmetric_to_x_basis, LaurentPoly};
use crate::exact::matrix::{Matrix, RatMatrix};
use crate::exact::roots::{complex_roots_c64, real_roots, RootReport};
use crate::exact::unipoly::UniPoly;
use crate::exact::{rat_to_f64, Rat};
use crate::laplacian::{assemble_line, assemble_sl2, is_self_dual};
use crate::network::{Connection, Embedding, Mat2, Network, Surface};
use crate::par;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

/// Characteristic polynomial of a flat line bundle: the determinant of the
/// Laplacian over the Laurent ring, one variable on the annulus, two on the
/// torus. Always reciprocal-symmetric and vanishing at all-ones.
#[derive(Clone, Debug, PartialEq)]
pub struct CharPoly {
    pub poly: LaurentPoly,
    pub provenance: String,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SurfaceError {
    WrongSurface(&'static str),
    NotNetworkPolynomial(String),
    DegenerateGrid(String),
}

impl std::fmt::Display for SurfaceError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SurfaceError::WrongSurface(s) => write!(f, "operation needs a {s}"),
            SurfaceError::NotNetworkPolynomial(s) => {
                write!(f, "not a network characteristic polynomial: {s}")
            }
            SurfaceError::DegenerateGrid(s) => write!(f, "interpolation grid degenerate: {s}"),
        }
    }
}

impl std::error::Error for SurfaceError {}

pub fn char_poly(net: &Network, emb: &Embedding, provenance: &str) -> CharPoly {
    assert!(
        matches!(emb.surface, Surface::Annulus | Surface::Torus),
        "characteristic polynomials live on the annulus or torus"
    );
    let delta = assemble_line(net, emb);
    let poly = delta.det_ring();
    let cp = CharPoly {
        poly,
        provenance: provenance.to_string(),
    };
    debug_assert!(cp.check_invariants().is_ok());
    cp
}

impl CharPoly {
    /// Reciprocal symmetry and vanishing at all-ones.
    pub fn check_invariants(&self) -> Result<(), String> {
        if !self.poly.is_reciprocal_symmetric() {
            return Err("not reciprocal-symmetric".into());
        }
        let ones = vec![Rat::one(); self.poly.vars as usize];
        let v = self.poly.eval(&ones).map_err(|e| e.to_string())?;
        if !v.is_zero() {
            return Err(format!("value at all-ones is {v}, not 0"));
        }
        Ok(())
    }
}

/// Root verdict for an annulus characteristic polynomial: all roots must be
/// real, positive and simple apart from the forced double root at 1.
#[derive(Clone, Debug)]
pub struct AnnulusRootReport {
    pub report: RootReport,
    /// gcd(p, p′) is exactly (z − 1).
    pub square_free_except_one: bool,
    /// every root of the square-free part is a positive real.
    pub all_positive_real: bool,
}

impl AnnulusRootReport {
    pub fn pass(&self) -> bool {
        self.square_free_except_one && self.all_positive_real
    }
}

pub fn annulus_root_report(p: &CharPoly) -> Result<AnnulusRootReport, String> {
    if p.poly.vars != 1 {
        return Err("annulus polynomial has one variable".into());
    }
    let report = real_roots(&p.poly)?;
    let g = &report.gcd_with_derivative;
    let square_free_except_one =
        g.degree() == 1 && g.eval(&Rat::one()).is_zero();
    let (_, q) = p.poly.to_unipoly();
    let sf = q.square_free_part();
    let all_positive_real = q.count_positive_roots() == sf.degree();
    Ok(AnnulusRootReport {
        report,
        square_free_except_one,
        all_positive_real,
    })
}

/// `Ch_n`, defined by `Ch_n(α + 1/α) = α^n + α^(-n)`:
/// `Ch_0 = 2, Ch_1 = y, Ch_n = y·Ch_{n−1} − Ch_{n−2}`.
pub fn chebyshev_like(n: usize) -> UniPoly {
    let mut prev = UniPoly::constant(Rat::from_integer(2.into()));
    if n == 0 {
        return prev;
    }
    let y = UniPoly::x();
    let mut cur = y.clone();
    for _ in 1..n {
        let next = &(&y * &cur) - &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// Closed form for the characteristic polynomial of the cylinder grid
/// `H(m, n)` (an m-vertex path crossed with an n-cycle):
///
/// ```text
/// det Δ(z) = Π_{k=0}^{m−1}  ( Ch_n(R_k) − z − 1/z ),
/// ```
///
/// with `R_k` the eigenvalues of the path Laplacian plus 2. The product over
/// the eigenvalue index runs from 0 to m−1 (the k = 0 eigenvector is the
/// constant one, giving the leading `2 − z − 1/z` factor; an upper limit of
/// m would insert a spurious factor for an identically-zero eigenvector).
/// Evaluated exactly: the product is `det(Ch_n(T) − (z + 1/z)·I)` for the
/// path matrix `T = Δ_path + 2I`, a polynomial in `w = z + 1/z` with
/// rational coefficients.
pub fn cylinder_closed_form(m: usize, n: usize) -> CharPoly {
    assert!(m >= 1 && n >= 1 && m <= 8);
    // path Laplacian + 2I
    let mut t = RatMatrix::zero(m, m);
    for i in 0..m {
        let deg = if m == 1 {
            Rat::zero()
        } else if i == 0 || i == m - 1 {
            Rat::one()
        } else {
            Rat::from_integer(2.into())
        };
        t[(i, i)] = deg + Rat::from_integer(2.into());
        if i + 1 < m {
            t[(i, i + 1)] = -Rat::one();
            t[(i + 1, i)] = -Rat::one();
        }
    }
    // Ch_n(T)
    let ch = chebyshev_like(n);
    let mut cht = RatMatrix::zero(m, m);
    let mut power = RatMatrix::identity(m);
    for (k, c) in ch.coeffs().iter().enumerate() {
        if k > 0 {
            power = power.mul_mat(&t);
        }
        if !c.is_zero() {
            cht = cht.add_mat(&power.scale(c));
        }
    }
    // det(Ch_n(T) − w·I) over polynomials in w
    let w = UniPoly::x();
    let mat_w: Matrix<UniPoly> = Matrix::from_fn(m, m, |i, j| {
        let c = UniPoly::constant(cht[(i, j)].clone());
        if i == j {
            &c - &w
        } else {
            c
        }
    });
    let det_w = mat_w.det_ring();
    // substitute w = z + 1/z
    let z_plus_inv = LaurentPoly::from_terms(1, [((1, 0), Rat::one()), ((-1, 0), Rat::one())]);
    let mut acc = LaurentPoly::zero_vars(1);
    let mut pw = LaurentPoly::constant(1, Rat::one());
    for (k, c) in det_w.coeffs().iter().enumerate() {
        if k > 0 {
            pw = pw * z_plus_inv.clone();
        }
        if !c.is_zero() {
            acc = acc + pw.scale(c);
        }
    }
    CharPoly {
        poly: acc,
        provenance: format!("cylinder({m},{n}) closed form"),
    }
}

/// Cycle-count generating polynomial of an annulus polynomial: rewrite
/// `P(z)` as `Q(x)` with `x = 2 − z − 1/z`; `Q(x)/Q(1)` generates the number
/// of cycles in a random essential CRSF.
pub fn cycle_count_pgf(p: &CharPoly) -> Result<UniPoly, SurfaceError> {
    if p.poly.vars != 1 {
        return Err(SurfaceError::WrongSurface("one-variable annulus polynomial"));
    }
    let q = symmetric_to_x_basis(&p.poly)
        .ok_or(SurfaceError::NotNetworkPolynomial("not symmetric".into()))?;
    if q.coeff(0) != Rat::zero() {
        return Err(SurfaceError::NotNetworkPolynomial(
            "nonzero constant term in the cycle basis".into(),
        ));
    }
    if q.coeffs().iter().any(Signed::is_negative) {
        return Err(SurfaceError::NotNetworkPolynomial(
            "negative cycle-count coefficient".into(),
        ));
    }
    Ok(q)
}

/// Convex hull of the exponent support, counterclockwise. Centrally
/// symmetric for characteristic polynomials.
#[derive(Clone, Debug, PartialEq)]
pub struct NewtonPolygon {
    pub vertices: Vec<(i64, i64)>,
}

impl NewtonPolygon {
    pub fn is_centrally_symmetric(&self) -> bool {
        let neg: std::collections::BTreeSet<(i64, i64)> =
            self.vertices.iter().map(|&(a, b)| (-a, -b)).collect();
        let pos: std::collections::BTreeSet<(i64, i64)> =
            self.vertices.iter().copied().collect();
        neg == pos
    }
}

pub fn newton_polygon(p: &LaurentPoly) -> NewtonPolygon {
    let pts = p.support();
    NewtonPolygon {
        vertices: convex_hull(&pts),
    }
}

/// Andrew monotone chain; returns hull vertices counterclockwise. Collinear
/// points are dropped. Degenerate cases (point, segment) keep their extremes.
fn convex_hull(pts: &[(i64, i64)]) -> Vec<(i64, i64)> {
    let mut pts: Vec<(i64, i64)> = pts.to_vec();
    pts.sort_unstable();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let cross = |o: (i64, i64), a: (i64, i64), b: (i64, i64)| -> i64 {
        (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
    };
    let mut lower: Vec<(i64, i64)> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(i64, i64)> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Decomposition of a characteristic polynomial over homology classes:
/// coefficients `C_{(r,s)} ≥ 0` with
/// `P = Σ C_{(r,s)} · (2 − m − 1/m)^k`, `m = z1^i z2^j`, `(r,s) = k·(i,j)`
/// primitive `(i,j)`. The rewrite is exact with zero residual; anything else
/// is rejected as not coming from a network.
#[derive(Clone, Debug, PartialEq)]
pub struct HomologyDecomposition {
    pub coeffs: BTreeMap<(i64, i64), Rat>,
}

pub fn homology_decompose(p: &CharPoly) -> Result<HomologyDecomposition, SurfaceError> {
    let vars = p.poly.vars;
    // collect primitive rays present in the support
    let mut rays: std::collections::BTreeSet<(i64, i64)> = Default::default();
    for &(a, b) in &p.poly.support() {
        if (a, b) == (0, 0) {
            continue;
        }
        let g = gcd64(a.abs(), b.abs());
        let prim = combin::canonical_orientation((a / g, b / g));
        rays.insert(prim);
    }
    let mut coeffs = BTreeMap::new();
    let mut reassembled = LaurentPoly::zero_vars(vars);
    for &ray in &rays {
        let restricted = p.poly.ray_restrict(ray);
        let q = symmetric_to_x_basis(&restricted).ok_or_else(|| {
            SurfaceError::NotNetworkPolynomial(format!("ray {ray:?} not symmetric"))
        })?;
        for (k, c) in q.coeffs().iter().enumerate().skip(1) {
            if c.is_negative() {
                return Err(SurfaceError::NotNetworkPolynomial(format!(
                    "negative coefficient {c} at class {}·{ray:?}",
                    k
                )));
            }
            if !c.is_zero() {
                coeffs.insert((ray.0 * k as i64, ray.1 * k as i64), c.clone());
            }
        }
        // reassemble this ray's contribution Σ_k C_k X^k (dropping q's
        // constant, which only bookkeeps the origin coefficient)
        let mut no_const = q.coeffs().to_vec();
        if !no_const.is_empty() {
            no_const[0] = Rat::zero();
        }
        let contribution = substitute_x(&UniPoly::new(no_const), ray, vars);
        reassembled = reassembled + contribution;
    }
    if reassembled != p.poly {
        return Err(SurfaceError::NotNetworkPolynomial(
            "nonzero residual after reassembling the homology classes".into(),
        ));
    }
    Ok(HomologyDecomposition { coeffs })
}

fn gcd64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a.max(1)
}

/// Trapezoid quadrature of `(2πi)^{-2} ∮∮ log P dz1/z1 dz2/z2` on an offset
/// `n × n` grid of unit-modulus points (the offset dodges the zero at
/// all-ones), Richardson-extrapolated between `n` and `2n`.
pub fn free_energy(p: &LaurentPoly, n: usize) -> f64 {
    let f_n = free_energy_grid(p, n);
    let f_2n = free_energy_grid(p, 2 * n);
    (4.0 * f_2n - f_n) / 3.0
}

pub fn free_energy_grid(p: &LaurentPoly, n: usize) -> f64 {
    assert_eq!(p.vars, 2);
    let rows: Vec<f64> = par::map_range(n, |j| {
        let theta1 = 2.0 * std::f64::consts::PI * (j as f64 + 0.5) / n as f64;
        let z1 = Complex64::from_polar(1.0, theta1);
        let mut acc = 0.0;
        for k in 0..n {
            let theta2 = 2.0 * std::f64::consts::PI * (k as f64 + 0.5) / n as f64;
            let z2 = Complex64::from_polar(1.0, theta2);
            let v = p.eval_complex(&[z1, z2]);
            acc += v.norm().max(1e-300).ln();
        }
        acc
    });
    rows.iter().sum::<f64>() / (n * n) as f64
}

/// Free-energy oracle from finite covers: `log(tree partition sum of the
/// k × k cover)/k²`, computed from the product of `P` over k-th roots of
/// unity, extrapolated over the last three doublings with basis
/// `{1, 1/k², log k /k²}`.
pub fn free_energy_finite_torus(p: &LaurentPoly, ks: &[usize]) -> f64 {
    assert!(ks.len() >= 3);
    let f = |k: usize| -> f64 {
        // log Z_k = sum over nonzero frequency pairs of log P, minus log k²
        let mut acc = 0.0;
        for a in 0..k {
            for b in 0..k {
                if a == 0 && b == 0 {
                    continue;
                }
                let z1 = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * a as f64 / k as f64);
                let z2 = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * b as f64 / k as f64);
                acc += p.eval_complex(&[z1, z2]).norm().max(1e-300).ln();
            }
        }
        (acc - ((k * k) as f64).ln()) / (k * k) as f64
    };
    let n = ks.len();
    let pts: Vec<(f64, f64)> = ks[n - 3..]
        .iter()
        .map(|&k| (k as f64, f(k)))
        .collect();
    // solve F + A/k² + B·log k/k² = f(k) for the three largest k
    let mut m = [[0.0f64; 3]; 3];
    let mut rhs = [0.0f64; 3];
    for (i, &(k, fk)) in pts.iter().enumerate() {
        m[i] = [1.0, 1.0 / (k * k), k.ln() / (k * k)];
        rhs[i] = fk;
    }
    solve3(m, rhs)[0]
}

fn solve3(mut m: [[f64; 3]; 3], mut b: [f64; 3]) -> [f64; 3] {
    for k in 0..3 {
        let p = (k..3).max_by(|&i, &j| m[i][k].abs().partial_cmp(&m[j][k].abs()).unwrap()).unwrap();
        m.swap(k, p);
        b.swap(k, p);
        for i in k + 1..3 {
            let f = m[i][k] / m[k][k];
            for j in k..3 {
                m[i][j] -= f * m[k][j];
            }
            b[i] -= f * b[k];
        }
    }
    let mut x = [0.0; 3];
    for k in (0..3).rev() {
        let mut acc = b[k];
        for j in k + 1..3 {
            acc -= m[k][j] * x[j];
        }
        x[k] = acc / m[k][k];
    }
    x
}

/// One amoeba sample: at log-radii `(logr1, logr2)`, the number of points of
/// the curve `P = 0` on the torus `|z1| = exp(logr1), |z2| = exp(logr2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct AmoebaPoint {
    pub logr1: f64,
    pub logr2: f64,
    pub root_count: usize,
}

/// Scan a `grid × grid` lattice of log-radii in `[-range, range]²`, counting
/// curve-torus intersections by tracking the roots of `P(c1·e^{iθ}, ·)` as θ
/// sweeps the circle and counting crossings of `|z2| = c2` (with `tol` for
/// tangential contact). Harnack verdict: all counts ≤ 2.
pub struct AmoebaScan {
    pub points: Vec<AmoebaPoint>,
    pub harnack: bool,
}

pub fn amoeba_sample(p: &LaurentPoly, grid: usize, range: f64, tol: f64) -> AmoebaScan {
    assert_eq!(p.vars, 2);
    // coefficients in z2 as functions of z1
    let support = p.support();
    let bmin = support.iter().map(|&(_, b)| b).min().unwrap_or(0);
    let bmax = support.iter().map(|&(_, b)| b).max().unwrap_or(0);
    let points: Vec<AmoebaPoint> = par::map_range(grid * grid, |idx| {
        let gi = idx / grid;
        let gj = idx % grid;
        let logr1 = -range + 2.0 * range * (gi as f64 + 0.5) / grid as f64;
        let logr2 = -range + 2.0 * range * (gj as f64 + 0.5) / grid as f64;
        let c1 = logr1.exp();
        let c2 = logr2.exp();
        let count = count_torus_roots(p, bmin, bmax, c1, c2, tol);
        AmoebaPoint {
            logr1,
            logr2,
            root_count: count,
        }
    });
    let harnack = points.iter().all(|pt| pt.root_count <= 2);
    AmoebaScan { points, harnack }
}

fn count_torus_roots(
    p: &LaurentPoly,
    bmin: i64,
    bmax: i64,
    c1: f64,
    c2: f64,
    tol: f64,
) -> usize {
    let deg = (bmax - bmin) as usize;
    if deg == 0 {
        return 0;
    }
    let steps = 256usize;
    let mut prev_roots: Option<Vec<Complex64>> = None;
    let mut first_signs: Vec<f64> = Vec::new();
    let mut signs: Vec<f64> = Vec::new();
    let mut crossings = 0usize;
    let mut tangent = false;
    for s in 0..=steps {
        let theta = 2.0 * std::f64::consts::PI * s as f64 / steps as f64;
        let z1 = Complex64::from_polar(c1, theta);
        // coefficients of z2^(b - bmin)
        let mut coeffs = vec![Complex64::new(0.0, 0.0); deg + 1];
        for (&(a, b), c) in p.terms() {
            let w = Complex64::new(rat_to_f64(c), 0.0) * z1.powi(a as i32);
            coeffs[(b - bmin) as usize] += w;
        }
        let mut roots = complex_roots_c64(&coeffs);
        if roots.len() != deg {
            // leading coefficient degenerated; treat missing roots as far away
            while roots.len() < deg {
                roots.push(Complex64::new(1e9, 0.0));
            }
        }
        // match to previous roots for branch continuity
        if let Some(prev) = &prev_roots {
            let mut ordered = vec![Complex64::new(0.0, 0.0); deg];
            let mut used = vec![false; deg];
            for (slot, pr) in prev.iter().enumerate() {
                let mut best = usize::MAX;
                let mut best_d = f64::INFINITY;
                for (i, r) in roots.iter().enumerate() {
                    if !used[i] {
                        let d = (r - pr).norm();
                        if d < best_d {
                            best_d = d;
                            best = i;
                        }
                    }
                }
                used[best] = true;
                ordered[slot] = roots[best];
            }
            roots = ordered;
        }
        let cur_signs: Vec<f64> = roots.iter().map(|r| r.norm() - c2).collect();
        if s == 0 {
            first_signs = cur_signs.clone();
        } else {
            for (i, &v) in cur_signs.iter().enumerate() {
                let prev_v = signs[i];
                if prev_v == 0.0 || v == 0.0 {
                    tangent = true;
                } else if prev_v.signum() != v.signum() {
                    crossings += 1;
                } else if v.abs() < tol && prev_v.abs() < tol {
                    tangent = true;
                }
            }
        }
        signs = cur_signs;
        prev_roots = Some(roots);
        let _ = &first_signs;
    }
    if crossings == 0 && tangent {
        2
    } else {
        crossings
    }
}

// ---------------------------------------------------------------------------
// Quaternion determinant and the pair of pants
// ---------------------------------------------------------------------------

/// Quaternion determinant of a self-dual 2n×2n block matrix, as the Pfaffian
/// of Z·M with Z the block diagonal of [[0,1],[-1,0]]. Satisfies
/// `qdet(M)² = det(M)` and `qdet(I) = 1`.
pub fn qdet(m: &RatMatrix) -> Result<Rat, String> {
    if !is_self_dual(m) {
        return Err("matrix is not self-dual".into());
    }
    let n2 = m.rows;
    let mut zm = RatMatrix::zero(n2, n2);
    for bi in 0..n2 / 2 {
        for j in 0..n2 {
            // Z block [[0,1],[-1,0]]: row 2bi takes +row 2bi+1 of M, row
            // 2bi+1 takes −row 2bi.
            zm[(2 * bi, j)] = m[(2 * bi + 1, j)].clone();
            zm[(2 * bi + 1, j)] = -m[(2 * bi, j)].clone();
        }
    }
    zm.pfaffian().map_err(|e| e.to_string())
}

/// CRSF sum of an SL2 connection, which the quaternion determinant of the
/// bundle Laplacian reproduces.
pub fn sl2_crsf_sum(net: &Network, conn: &Connection) -> Result<Rat, combin::EnumError> {
    combin::crsf_sum_sl2(net, conn)
}

/// qdet of the SL2 bundle Laplacian.
pub fn qdet_laplacian(net: &Network, conn: &Connection) -> Result<Rat, String> {
    let delta = assemble_sl2(net, conn);
    qdet(&delta)
}

/// SL2 transports realizing prescribed trace coordinates on the pants:
/// `X = 2 − tr A`, `Y = 2 − tr B`, `Z = 2 − tr AB`. The sample `(A, B)` is
/// rational for every rational `(x, y, a)`, with `Z = −a² − a(y − x)`.
pub fn pants_sample(x: &Rat, y: &Rat, a: &Rat) -> (Mat2, Mat2, Rat, Rat, Rat) {
    let two = Rat::from_integer(2.into());
    let ta = &two - x;
    let am = Mat2::new(ta, -Rat::one(), Rat::one(), Rat::zero());
    let d = &two - y - a;
    let c = a * &d - Rat::one();
    let bm = Mat2::new(a.clone(), Rat::one(), c, d);
    let z = -(a * a) - a * &(y - x);
    (am, bm, x.clone(), y.clone(), z)
}

/// Per-edge SL2 transports from the pants zipper weights: `A^w1 · B^w2`
/// (at most one weight is nonzero on a valid pants embedding).
pub fn pants_connection(net: &Network, emb: &Embedding, a: &Mat2, b: &Mat2) -> Connection {
    let mats: Vec<Mat2> = net
        .edges
        .iter()
        .map(|e| {
            let (w1, w2) = emb.weights[2 * e.id];
            a.pow(w1).mul(&b.pow(w2))
        })
        .collect();
    Connection::Sl2(mats)
}

/// The pair-of-pants polynomial `P(X, Y, Z) = Σ c_{ijk} X^i Y^j Z^k` with
/// `qdet Δ = P(2−trA, 2−trB, 2−trAB)`: evaluated on an interpolation grid of
/// rational SL2 samples and solved exactly.
pub fn pair_of_pants_poly(
    net: &Network,
    emb: &Embedding,
    max_deg: usize,
) -> Result<BTreeMap<(usize, usize, usize), Rat>, SurfaceError> {
    if emb.surface != Surface::Pants {
        return Err(SurfaceError::WrongSurface("pants embedding"));
    }
    // monomials with i + j + k ≤ max_deg
    let mut monos: Vec<(usize, usize, usize)> = Vec::new();
    for i in 0..=max_deg {
        for j in 0..=max_deg - i {
            for k in 0..=max_deg - i - j {
                monos.push((i, j, k));
            }
        }
    }
    // sample points: x, y over small grids, a varying for z diversity
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    let mut rhs: Vec<Rat> = Vec::new();
    let side = max_deg + 2;
    for xi in 0..side {
        for yi in 0..side {
            for ai in 1..=side {
                let x = crate::exact::rat(3 * xi as i64 + 1, 2);
                let y = crate::exact::rat(5 * yi as i64 + 2, 3);
                let a = crate::exact::rat(ai as i64, 1);
                let (am, bm, x, y, z) = pants_sample(&x, &y, &a);
                let conn = pants_connection(net, emb, &am, &bm);
                let q = qdet_laplacian(net, &conn)
                    .map_err(SurfaceError::DegenerateGrid)?;
                let row: Vec<Rat> = monos
                    .iter()
                    .map(|&(i, j, k)| pow(&x, i) * pow(&y, j) * pow(&z, k))
                    .collect();
                rows.push(row);
                rhs.push(q);
            }
        }
    }
    // exact least-structure solve: eliminate and check consistency
    let m = Matrix::from_rows(rows.clone());
    let sol = solve_overdetermined(&m, &rhs)
        .ok_or_else(|| SurfaceError::DegenerateGrid("rank-deficient sample matrix".into()))?;
    // verify every equation
    for (row, want) in rows.iter().zip(&rhs) {
        let mut acc = Rat::zero();
        for (c, s) in row.iter().zip(&sol) {
            acc += c * s;
        }
        if &acc != want {
            return Err(SurfaceError::DegenerateGrid(
                "inconsistent system: raise the degree bound".into(),
            ));
        }
    }
    let mut out = BTreeMap::new();
    for (mono, c) in monos.into_iter().zip(sol) {
        if !c.is_zero() {
            out.insert(mono, c);
        }
    }
    Ok(out)
}

fn pow(x: &Rat, e: usize) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..e {
        acc *= x;
    }
    acc
}

/// Solve an overdetermined exact system in least-structure sense: Gaussian
/// elimination on the stacked (A | b), requiring full column rank.
fn solve_overdetermined(a: &Matrix<Rat>, b: &[Rat]) -> Option<Vec<Rat>> {
    let rows = a.rows;
    let cols = a.cols;
    let mut m = Matrix::from_fn(rows, cols + 1, |i, j| {
        if j < cols {
            a[(i, j)].clone()
        } else {
            b[i].clone()
        }
    });
    let mut pivot_row = 0usize;
    let mut pivots: Vec<usize> = Vec::new();
    for col in 0..cols {
        let p = (pivot_row..rows).find(|&r| !m[(r, col)].is_zero())?;
        // swap
        for j in 0..=cols {
            let tmp = m[(p, j)].clone();
            m[(p, j)] = m[(pivot_row, j)].clone();
            m[(pivot_row, j)] = tmp;
        }
        let pv = m[(pivot_row, col)].clone();
        for j in 0..=cols {
            m[(pivot_row, j)] = m[(pivot_row, j)].clone() / pv.clone();
        }
        for r in 0..rows {
            if r != pivot_row && !m[(r, col)].is_zero() {
                let f = m[(r, col)].clone();
                for j in 0..=cols {
                    let v = m[(r, j)].clone() - f.clone() * m[(pivot_row, j)].clone();
                    m[(r, j)] = v;
                }
            }
        }
        pivots.push(col);
        pivot_row += 1;
        if pivot_row == rows {
            break;
        }
    }
    if pivots.len() < cols {
        return None;
    }
    let mut sol = vec![Rat::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        sol[c] = m[(r, cols)].clone();
    }
    Some(sol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::network::families::{string_of_loops, torus_grid};

    #[test]
    fn chebyshev_like_values() {
        // Ch_2(R) = R² − 2
        let ch2 = chebyshev_like(2);
        assert_eq!(
            ch2,
            UniPoly::new(vec![rat(-2, 1), rat(0, 1), rat(1, 1)])
        );
        // Ch_n(2) = 2 for all n (α = 1)
        for n in 0..6 {
            assert_eq!(chebyshev_like(n).eval(&rat(2, 1)), rat(2, 1));
        }
    }

    #[test]
    fn single_loop_char_poly() {
        let (net, emb) = string_of_loops(&[], &[rat(3, 1)]).unwrap();
        let cp = char_poly(&net, &emb, "loop");
        let expect = crate::exact::laurent::x_in_z().scale(&rat(3, 1));
        assert_eq!(cp.poly, expect);
        cp.check_invariants().unwrap();
    }

    #[test]
    fn two_loop_string_in_x_basis() {
        // a = (1), b = (1,1): determinant is X² + 2X in X = 2 − z − 1/z
        let (net, emb) = string_of_loops(&[rat(1, 1)], &[rat(1, 1), rat(1, 1)]).unwrap();
        let cp = char_poly(&net, &emb, "string");
        let q = symmetric_to_x_basis(&cp.poly).unwrap();
        assert_eq!(
            q,
            UniPoly::new(vec![rat(0, 1), rat(2, 1), rat(1, 1)])
        );
        // roots {1, 1, 2 ± √3}
        let rep = annulus_root_report(&cp).unwrap();
        assert!(rep.pass());
        let mut reals: Vec<f64> = rep.report.roots.iter().map(|(r, _)| r.re).collect();
        reals.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let s3 = 3.0f64.sqrt();
        assert!((reals[0] - (2.0 - s3)).abs() < 1e-10);
        assert!((reals[1] - 1.0).abs() < 1e-10);
        assert!((reals[2] - (2.0 + s3)).abs() < 1e-10);
        // cycle count pgf: Q(x) = x² + 2x
        let q = cycle_count_pgf(&cp).unwrap();
        assert_eq!(q.coeff(1), rat(2, 1));
        assert_eq!(q.coeff(2), rat(1, 1));
    }

    #[test]
    fn disconnected_detector() {
        // (2 − z − 1/z)² has a quadruple root at 1: the report must fail
        let x = crate::exact::laurent::x_in_z();
        let p = CharPoly {
            poly: x.clone() * x,
            provenance: "square".into(),
        };
        let rep = annulus_root_report(&p).unwrap();
        assert!(!rep.pass());
        assert!(!rep.square_free_except_one);
    }

    #[test]
    fn cylinder_closed_form_matches_determinant() {
        for (m, n) in [(1, 2), (2, 2), (2, 3), (3, 2)] {
            let closed = cylinder_closed_form(m, n);
            let (net, emb) = crate::network::families::cylinder(m, n).unwrap();
            let direct = char_poly(&net, &emb, "direct");
            assert_eq!(closed.poly, direct.poly, "H({m},{n})");
        }
    }

    #[test]
    fn newton_polygon_cases() {
        // single (1,0) loop: segment
        let x = crate::exact::laurent::x_in_z();
        let np = newton_polygon(&x);
        assert_eq!(np.vertices, vec![(-1, 0), (1, 0)]);
        // torus grid 2x2: square with vertices (±2, 0), (0, ±2)
        let (net, emb) = torus_grid(2, 2).unwrap();
        let cp = char_poly(&net, &emb, "t22");
        let np = newton_polygon(&cp.poly);
        assert!(np.is_centrally_symmetric());
        let vs: std::collections::BTreeSet<(i64, i64)> = np.vertices.into_iter().collect();
        assert_eq!(
            vs,
            [(2, 0), (-2, 0), (0, 2), (0, -2)].into_iter().collect()
        );
    }

    #[test]
    fn decompose_single_loop() {
        let (net, emb) = string_of_loops(&[], &[rat(5, 1)]).unwrap();
        let cp = char_poly(&net, &emb, "loop");
        let d = homology_decompose(&cp).unwrap();
        assert_eq!(d.coeffs.len(), 1);
        assert_eq!(d.coeffs.get(&(1, 0)), Some(&rat(5, 1)));
        // hand-built non-network symmetric polynomial is rejected:
        // z + 1/z − 2·(z²+1/z²)... has a negative class coefficient
        let bad = LaurentPoly::from_terms(
            2,
            [
                ((1, 0), rat(-1, 1)),
                ((-1, 0), rat(-1, 1)),
                ((2, 0), rat(1, 1)),
                ((-2, 0), rat(1, 1)),
                ((0, 0), rat(0, 1)),
            ],
        );
        let cp = CharPoly {
            poly: bad,
            provenance: "bad".into(),
        };
        assert!(homology_decompose(&cp).is_err());
    }

    #[test]
    fn qdet_block_example() {
        // Qdet [[aI, B], [B~, cI]] = ac − det B
        let (a, c) = (rat(3, 1), rat(5, 1));
        let (b1, b2, b3, b4) = (rat(1, 1), rat(2, 1), rat(7, 1), rat(4, 1));
        let mut m = RatMatrix::zero(4, 4);
        m[(0, 0)] = a.clone();
        m[(1, 1)] = a.clone();
        m[(2, 2)] = c.clone();
        m[(3, 3)] = c.clone();
        // B block at (0..2, 2..4)
        m[(0, 2)] = b1.clone();
        m[(0, 3)] = b2.clone();
        m[(1, 2)] = b3.clone();
        m[(1, 3)] = b4.clone();
        // B~ at (2..4, 0..2): adjugate of B
        m[(2, 0)] = b4.clone();
        m[(2, 1)] = -b2.clone();
        m[(3, 0)] = -b3.clone();
        m[(3, 1)] = b1.clone();
        let q = qdet(&m).unwrap();
        let expect = &a * &c - (&b1 * &b4 - &b2 * &b3);
        assert_eq!(q, expect);
        // qdet(I) = 1 and qdet² = det
        assert_eq!(qdet(&RatMatrix::identity(6)).unwrap(), rat(1, 1));
        assert_eq!(&q * &q, m.det().unwrap());
    }

    #[test]
    fn qdet_equals_crsf_sum_on_k3() {
        use crate::network::families::complete_graph;
        let net = complete_graph(3);
        // a non-flat rational SL2 connection
        let mats = vec![
            Mat2::new(rat(2, 1), rat(3, 1), rat(1, 1), rat(2, 1)),
            Mat2::new(rat(1, 1), rat(1, 2), rat(0, 1), rat(1, 1)),
            Mat2::new(rat(5, 3), rat(2, 1), rat(1, 3), rat(1, 1)),
        ];
        let conn = Connection::Sl2(mats);
        conn.validate(3).unwrap();
        let q = qdet_laplacian(&net, &conn).unwrap();
        let s = sl2_crsf_sum(&net, &conn).unwrap();
        assert_eq!(q, s);
        // trivial connection: qdet² = det
        let conn = Connection::Sl2(vec![Mat2::identity(); 3]);
        let delta = assemble_sl2(&net, &conn);
        let q = qdet(&delta).unwrap();
        assert_eq!(&q * &q, delta.det().unwrap());
    }
}
