//! Laplacian assembly and everything derived from it: Dirichlet problems,
//! response matrices, Dirichlet energy, harmonic conjugates, and transfer
//! currents.
//!
//! Matrix convention: `Δ[u][v] = −Σ c_e · φ(u→v)` over the edges joining `u`
//! and `v`, with `φ` the parallel transport along the dart from `u` to `v`;
//! diagonal entries make each row sum to zero at trivial monodromy.
//! Self-loops contribute `c·(2 − φ − φ⁻¹)` to their diagonal entry, which
//! vanishes for the trivial connection.

use crate::exact::laurent::LaurentPoly;
use crate::exact::matrix::{Matrix, MatrixError, RatMatrix};
use crate::exact::ratfunc::RatFunc;
use crate::exact::{GaussRat, Rat};
use crate::network::{
    dart_head, dart_of, dart_rev, dart_tail, Connection, Embedding, Network, Surface,
};
use num_traits::{Signed, Zero};

/// Plain (trivial-bundle) Laplacian.
pub fn assemble(net: &Network) -> RatMatrix {
    let n = net.num_vertices;
    let mut m = RatMatrix::zero(n, n);
    for e in &net.edges {
        if e.u == e.v {
            continue;
        }
        m[(e.u, e.u)] = m[(e.u, e.u)].clone() + e.c.clone();
        m[(e.v, e.v)] = m[(e.v, e.v)].clone() + e.c.clone();
        m[(e.u, e.v)] = m[(e.u, e.v)].clone() - e.c.clone();
        m[(e.v, e.u)] = m[(e.v, e.u)].clone() - e.c.clone();
    }
    m
}

/// Line-bundle Laplacian with monomial transports from the embedding weights.
/// One variable on the annulus, two on the torus and pants.
pub fn assemble_line(net: &Network, emb: &Embedding) -> Matrix<LaurentPoly> {
    let vars: u8 = match emb.surface {
        Surface::Annulus => 1,
        _ => 2,
    };
    let n = net.num_vertices;
    let mut m = Matrix::<LaurentPoly>::zero(n, n);
    let two = LaurentPoly::constant(vars, Rat::from_integer(2.into()));
    for e in &net.edges {
        let (a, b) = emb.weights[dart_of(e.id, false)];
        let fwd = LaurentPoly::monomial(vars, a, b, e.c.clone());
        let bwd = LaurentPoly::monomial(vars, -a, -b, e.c.clone());
        if e.u == e.v {
            let diag = two.scale(&e.c) - fwd - bwd;
            m[(e.u, e.u)] = m[(e.u, e.u)].clone() + diag;
        } else {
            let c = LaurentPoly::constant(vars, e.c.clone());
            m[(e.u, e.u)] = m[(e.u, e.u)].clone() + c.clone();
            m[(e.v, e.v)] = m[(e.v, e.v)].clone() + c;
            m[(e.u, e.v)] = m[(e.u, e.v)].clone() - fwd;
            m[(e.v, e.u)] = m[(e.v, e.u)].clone() - bwd;
        }
    }
    m
}

/// Unitary line-bundle Laplacian (Hermitian).
pub fn assemble_unitary(net: &Network, conn: &Connection) -> Matrix<GaussRat> {
    let n = net.num_vertices;
    let mut m = Matrix::<GaussRat>::zero(n, n);
    let two = GaussRat::from_rat(Rat::from_integer(2.into()));
    for e in &net.edges {
        let fwd = conn.unitary_transport(dart_of(e.id, false));
        let bwd = conn.unitary_transport(dart_of(e.id, true));
        let c = GaussRat::from_rat(e.c.clone());
        if e.u == e.v {
            let diag = c.clone() * (two.clone() - fwd - bwd);
            m[(e.u, e.u)] = m[(e.u, e.u)].clone() + diag;
        } else {
            m[(e.u, e.u)] = m[(e.u, e.u)].clone() + c.clone();
            m[(e.v, e.v)] = m[(e.v, e.v)].clone() + c.clone();
            m[(e.u, e.v)] = m[(e.u, e.v)].clone() - c.clone() * fwd;
            m[(e.v, e.u)] = m[(e.v, e.u)].clone() - c * bwd;
        }
    }
    m
}

/// SL2-bundle Laplacian as the expanded 2V x 2V rational matrix. The result
/// is self-dual in the block sense (see [`is_self_dual`]).
pub fn assemble_sl2(net: &Network, conn: &Connection) -> RatMatrix {
    let n = net.num_vertices;
    let mut m = RatMatrix::zero(2 * n, 2 * n);
    fn add_block(m: &mut RatMatrix, u: usize, v: usize, blk: &[[Rat; 2]; 2], add: bool) {
        for i in 0..2 {
            for j in 0..2 {
                let cur = m[(2 * u + i, 2 * v + j)].clone();
                m[(2 * u + i, 2 * v + j)] = if add {
                    cur + blk[i][j].clone()
                } else {
                    cur - blk[i][j].clone()
                };
            }
        }
    }
    fn scaled(mm: &crate::network::Mat2, c: &Rat) -> [[Rat; 2]; 2] {
        [
            [&mm.0[0][0] * c, &mm.0[0][1] * c],
            [&mm.0[1][0] * c, &mm.0[1][1] * c],
        ]
    }
    for e in &net.edges {
        let fwd = conn.sl2_transport(dart_of(e.id, false));
        let bwd = conn.sl2_transport(dart_of(e.id, true));
        let c_id = [
            [e.c.clone(), Rat::zero()],
            [Rat::zero(), e.c.clone()],
        ];
        if e.u == e.v {
            let two_id = [
                [&e.c + &e.c, Rat::zero()],
                [Rat::zero(), &e.c + &e.c],
            ];
            add_block(&mut m, e.u, e.u, &two_id, true);
            add_block(&mut m, e.u, e.u, &scaled(&fwd, &e.c), false);
            add_block(&mut m, e.u, e.u, &scaled(&bwd, &e.c), false);
        } else {
            add_block(&mut m, e.u, e.u, &c_id, true);
            add_block(&mut m, e.v, e.v, &c_id, true);
            add_block(&mut m, e.u, e.v, &scaled(&fwd, &e.c), false);
            add_block(&mut m, e.v, e.u, &scaled(&bwd, &e.c), false);
        }
    }
    m
}

#[derive(Debug)]
pub enum LaplacianError {
    EmptyBoundary,
    NoNodes,
    SingularInterior(String),
    NotHarmonic { vertex: usize },
    NeedsDisk,
}

impl std::fmt::Display for LaplacianError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LaplacianError::EmptyBoundary => write!(f, "boundary set is empty"),
            LaplacianError::NoNodes => write!(f, "network has no boundary nodes"),
            LaplacianError::SingularInterior(s) => write!(f, "interior block singular: {s}"),
            LaplacianError::NotHarmonic { vertex } => {
                write!(f, "potential is not harmonic at interior vertex {vertex}")
            }
            LaplacianError::NeedsDisk => write!(f, "operation requires a disk embedding"),
        }
    }
}

impl std::error::Error for LaplacianError {}

/// Laplacian restricted to the non-boundary rows and columns.
pub fn dirichlet_submatrix(net: &Network, boundary: &[usize]) -> Result<RatMatrix, LaplacianError> {
    if boundary.is_empty() {
        return Err(LaplacianError::EmptyBoundary);
    }
    let interior: Vec<usize> = (0..net.num_vertices)
        .filter(|v| !boundary.contains(v))
        .collect();
    Ok(assemble(net).submatrix(&interior, &interior))
}

/// Solve the Dirichlet problem: the potential agreeing with `values` on
/// `boundary` and harmonic elsewhere.
pub fn harmonic_extension(
    net: &Network,
    boundary: &[usize],
    values: &[Rat],
) -> Result<Vec<Rat>, LaplacianError> {
    assert_eq!(boundary.len(), values.len());
    if boundary.is_empty() {
        return Err(LaplacianError::EmptyBoundary);
    }
    let interior: Vec<usize> = (0..net.num_vertices)
        .filter(|v| !boundary.contains(v))
        .collect();
    let delta = assemble(net);
    let c = delta.submatrix(&interior, &interior);
    let bt = delta.submatrix(&interior, boundary);
    let rhs = Matrix::from_fn(interior.len(), 1, |i, _| {
        let mut acc = Rat::zero();
        for (j, val) in values.iter().enumerate() {
            acc -= bt[(i, j)].clone() * val.clone();
        }
        acc
    });
    let sol = c
        .solve(&rhs)
        .ok_or_else(|| LaplacianError::SingularInterior("Dirichlet block".into()))?;
    let mut f = vec![Rat::zero(); net.num_vertices];
    for (j, &b) in boundary.iter().enumerate() {
        f[b] = values[j].clone();
    }
    for (i, &v) in interior.iter().enumerate() {
        f[v] = sol[(i, 0)].clone();
    }
    Ok(f)
}

/// Response matrix of the trivial bundle: `L = −A + B·C⁻¹·Bᵗ`, rows and
/// columns in node order.
#[derive(Clone, Debug, PartialEq)]
pub struct ResponseMatrix {
    pub m: RatMatrix,
}

impl ResponseMatrix {
    pub fn n(&self) -> usize {
        self.m.rows
    }

    /// Structural invariants for a connected trivial-bundle network:
    /// symmetry and zero row sums; with `strict_signs`, negative diagonal and
    /// positive off-diagonal entries as well.
    pub fn check_invariants(&self, strict_signs: bool) -> Result<(), String> {
        if !self.m.is_symmetric() {
            return Err("response matrix not symmetric".into());
        }
        for (i, s) in self.m.row_sums().iter().enumerate() {
            if !s.is_zero() {
                return Err(format!("row {i} sums to {s}"));
            }
        }
        if strict_signs && self.n() > 1 {
            for i in 0..self.n() {
                if !self.m[(i, i)].is_negative() {
                    return Err(format!("diagonal entry {i} not negative"));
                }
                for j in 0..self.n() {
                    if i != j && !self.m[(i, j)].is_positive() {
                        return Err(format!("off-diagonal ({i},{j}) not positive"));
                    }
                }
            }
        }
        Ok(())
    }
}

pub fn response_matrix(net: &Network) -> Result<ResponseMatrix, LaplacianError> {
    if net.nodes.is_empty() {
        return Err(LaplacianError::NoNodes);
    }
    let delta = assemble(net);
    let schur = delta
        .schur_complement(&net.nodes)
        .map_err(|e| LaplacianError::SingularInterior(e.to_string()))?;
    Ok(ResponseMatrix {
        m: schur.neg_mat(),
    })
}

/// Response matrix of an annular network with the line bundle live: entries
/// are rational functions of the monodromy variable.
pub fn response_matrix_line(
    net: &Network,
    emb: &Embedding,
) -> Result<Matrix<RatFunc>, LaplacianError> {
    if net.nodes.is_empty() {
        return Err(LaplacianError::NoNodes);
    }
    assert_eq!(emb.surface, Surface::Annulus, "line response needs an annulus");
    let delta = assemble_line(net, emb).map(RatFunc::from_laurent);
    let schur = delta.schur_complement(&net.nodes).map_err(|e| match e {
        MatrixError::SingularBlock(_) => LaplacianError::SingularInterior(
            "interior block singular as a function of z".into(),
        ),
        other => LaplacianError::SingularInterior(other.to_string()),
    })?;
    Ok(schur.map(|x| -x.clone()))
}

/// `⟨f, Δf⟩ = Σ_e c_e (f(u) − f(v))²`.
pub fn dirichlet_energy(net: &Network, f: &[Rat]) -> Rat {
    assert_eq!(f.len(), net.num_vertices);
    let mut acc = Rat::zero();
    for e in &net.edges {
        let d = &f[e.u] - &f[e.v];
        acc += &e.c * &d * &d;
    }
    acc
}

/// Face indexing used by the harmonic conjugate: interior faces of the disk
/// map plus one exterior face per boundary arc between consecutive nodes
/// (the outer region is cut at the nodes).
pub struct ConjugateFaces {
    /// Conjugate-face id per dart (the face left of the dart).
    pub face_of: Vec<usize>,
    pub num_faces: usize,
    /// Ids of the exterior faces, in the order their arcs leave the nodes.
    pub exterior: Vec<usize>,
}

pub fn conjugate_faces(net: &Network, emb: &Embedding) -> Result<ConjugateFaces, LaplacianError> {
    if emb.surface != Surface::Disk {
        return Err(LaplacianError::NeedsDisk);
    }
    let faces = emb.faces(net);
    let outer = emb.outer_face.expect("disk embedding has an outer face");
    let mut face_of = faces.face_of.clone();
    let interior_count = faces.cycles.len() - 1;
    // Re-index so interior faces come first.
    for f in face_of.iter_mut() {
        if *f == outer {
            *f = usize::MAX;
        } else if *f > outer {
            *f -= 1;
        }
    }
    // Split the outer cycle at node visits. The cycle visits nodes in reverse
    // circular order; each maximal dart run starting at a node visit is one
    // exterior face.
    let cycle = &faces.cycles[outer];
    if net.nodes.is_empty() {
        // no nodes: single exterior face
        for f in face_of.iter_mut() {
            if *f == usize::MAX {
                *f = interior_count;
            }
        }
        return Ok(ConjugateFaces {
            face_of,
            num_faces: interior_count + 1,
            exterior: vec![interior_count],
        });
    }
    let starts: Vec<usize> = (0..cycle.len())
        .filter(|&i| net.is_node(dart_tail(net, cycle[i])))
        .collect();
    let mut exterior = Vec::new();
    for (k, &s) in starts.iter().enumerate() {
        let end = starts[(k + 1) % starts.len()];
        let id = interior_count + k;
        exterior.push(id);
        let mut i = s;
        loop {
            face_of[cycle[i]] = id;
            i = (i + 1) % cycle.len();
            if i == end {
                break;
            }
        }
    }
    Ok(ConjugateFaces {
        face_of,
        num_faces: interior_count + starts.len(),
        exterior,
    })
}

/// Harmonic conjugate on the (cut) faces of a disk network: `g` satisfies
/// `c_e·(f(head) − f(tail)) = g(left of d) − g(right of d)` on every edge,
/// anchored to zero on the first exterior face. Fails with a witness vertex
/// when `f` is not harmonic at an interior vertex.
pub fn harmonic_conjugate(
    net: &Network,
    emb: &Embedding,
    f: &[Rat],
) -> Result<Vec<Rat>, LaplacianError> {
    let delta = assemble(net);
    for v in net.internal_vertices() {
        let mut acc = Rat::zero();
        for j in 0..net.num_vertices {
            acc += delta[(v, j)].clone() * f[j].clone();
        }
        if !acc.is_zero() {
            return Err(LaplacianError::NotHarmonic { vertex: v });
        }
    }
    let cf = conjugate_faces(net, emb)?;
    let mut g: Vec<Option<Rat>> = vec![None; cf.num_faces];
    let anchor = cf.exterior[0];
    g[anchor] = Some(Rat::zero());
    let mut queue = std::collections::VecDeque::from([anchor]);
    // adjacency: darts grouped by left face
    let mut darts_of_face: Vec<Vec<usize>> = vec![Vec::new(); cf.num_faces];
    for (d, &fid) in cf.face_of.iter().enumerate() {
        darts_of_face[fid].push(d);
    }
    while let Some(face) = queue.pop_front() {
        let base = g[face].clone().unwrap();
        for &d in &darts_of_face[face] {
            let other = cf.face_of[dart_rev(d)];
            let e = &net.edges[crate::network::dart_edge(d)];
            let (u, v) = (dart_tail(net, d), dart_head(net, d));
            // g(left of d) − g(right of d) = c·(f(v) − f(u))
            let drop = &e.c * &(&f[v] - &f[u]);
            let val = base.clone() - drop;
            match &g[other] {
                None => {
                    g[other] = Some(val);
                    queue.push_back(other);
                }
                Some(existing) => {
                    if *existing != val {
                        return Err(LaplacianError::NotHarmonic {
                            vertex: dart_tail(net, d),
                        });
                    }
                }
            }
        }
    }
    Ok(g
        .into_iter()
        .map(|x| x.expect("dual graph of a disk map is connected"))
        .collect())
}

/// Transfer currents over edge pairs, with the raw Green-difference form.
/// `current[e][f]` is the current through `f` when a unit current enters at
/// `e⁺` and exits at `e⁻`. Grounds the first vertex by convention; the result
/// is grounding-invariant.
pub struct TransferCurrent {
    pub current: RatMatrix,
    pub green_diff: RatMatrix,
}

pub fn transfer_current(net: &Network) -> TransferCurrent {
    transfer_current_grounded(net, 0)
}

pub fn transfer_current_grounded(net: &Network, ground: usize) -> TransferCurrent {
    let n = net.num_vertices;
    let delta = assemble(net);
    let rest: Vec<usize> = (0..n).filter(|&v| v != ground).collect();
    let inv = delta
        .submatrix(&rest, &rest)
        .inverse()
        .expect("grounded Laplacian of a connected network is invertible");
    let mut green = RatMatrix::zero(n, n);
    for (i, &a) in rest.iter().enumerate() {
        for (j, &b) in rest.iter().enumerate() {
            green[(a, b)] = inv[(i, j)].clone();
        }
    }
    let ne = net.num_edges();
    let mut current = RatMatrix::zero(ne, ne);
    let mut gdiff = RatMatrix::zero(ne, ne);
    for e in &net.edges {
        for ep in &net.edges {
            let d = green[(ep.u, e.u)].clone() - green[(ep.u, e.v)].clone()
                - green[(ep.v, e.u)].clone()
                + green[(ep.v, e.v)].clone();
            gdiff[(e.id, ep.id)] = d.clone();
            current[(e.id, ep.id)] = d * ep.c.clone();
        }
    }
    TransferCurrent {
        current,
        green_diff: gdiff,
    }
}

/// Self-duality of a 2V x 2V block matrix: block (i,j) is the adjugate of
/// block (j,i).
pub fn is_self_dual(m: &RatMatrix) -> bool {
    if m.rows != m.cols || m.rows % 2 != 0 {
        return false;
    }
    let n = m.rows / 2;
    for i in 0..n {
        for j in 0..n {
            if m[(2 * i, 2 * j)] != m[(2 * j + 1, 2 * i + 1)]
                || m[(2 * i, 2 * j + 1)] != -m[(2 * j, 2 * i + 1)].clone()
                || m[(2 * i + 1, 2 * j)] != -m[(2 * j + 1, 2 * i)].clone()
                || m[(2 * i + 1, 2 * j + 1)] != m[(2 * j, 2 * i)]
            {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};
    use crate::network::families::{complete_graph, y_network};

    #[test]
    fn y_network_laplacian_matches_closed_form() {
        let (c1, c2, c3) = (rat(2, 1), rat(3, 1), rat(5, 1));
        let (net, _) = y_network(c1.clone(), c2.clone(), c3.clone());
        let d = assemble(&net);
        let s = &c1 + &c2 + &c3;
        let expect = RatMatrix::from_rows(vec![
            vec![c1.clone(), rat(0, 1), rat(0, 1), -c1.clone()],
            vec![rat(0, 1), c2.clone(), rat(0, 1), -c2.clone()],
            vec![rat(0, 1), rat(0, 1), c3.clone(), -c3.clone()],
            vec![-c1.clone(), -c2.clone(), -c3.clone(), s],
        ]);
        assert_eq!(d, expect);
    }

    #[test]
    fn y_network_response_closed_form() {
        let (c1, c2, c3) = (rat(2, 1), rat(3, 1), rat(5, 1));
        let (net, _) = y_network(c1.clone(), c2.clone(), c3.clone());
        let l = response_matrix(&net).unwrap();
        let s = &c1 + &c2 + &c3;
        assert_eq!(l.m[(0, 1)], &c1 * &c2 / &s);
        assert_eq!(l.m[(0, 2)], &c1 * &c3 / &s);
        assert_eq!(l.m[(1, 2)], &c2 * &c3 / &s);
        assert_eq!(l.m[(0, 0)], -(&c1 * &c2 + &c1 * &c3) / &s);
        l.check_invariants(true).unwrap();
    }

    #[test]
    fn single_edge_response() {
        let net = Network::new(2, vec![(0, 1, rat(7, 2))], vec![0, 1]).unwrap();
        let l = response_matrix(&net).unwrap();
        assert_eq!(l.m[(0, 0)], rat(-7, 2));
        assert_eq!(l.m[(0, 1)], rat(7, 2));
    }

    #[test]
    fn dirichlet_submatrix_cases() {
        let (net, _) = y_network(rat(1, 1), rat(1, 1), rat(1, 1));
        let d = dirichlet_submatrix(&net, &[0, 1, 2]).unwrap();
        assert_eq!(d.rows, 1);
        assert_eq!(d[(0, 0)], rat(3, 1));
        let path = Network::new(3, vec![(0, 1, rat(1, 1)), (1, 2, rat(1, 1))], vec![0, 2]).unwrap();
        let d = dirichlet_submatrix(&path, &[0, 2]).unwrap();
        assert_eq!(d[(0, 0)], rat(2, 1));
        let d = dirichlet_submatrix(&path, &[0, 1, 2]).unwrap();
        assert_eq!(d.rows, 0);
        assert_eq!(d.det().unwrap(), rat(1, 1));
        assert!(dirichlet_submatrix(&path, &[]).is_err());
    }

    #[test]
    fn harmonic_extension_cases() {
        let (c1, c2, c3) = (rat(2, 1), rat(3, 1), rat(5, 1));
        let (net, _) = y_network(c1.clone(), c2.clone(), c3.clone());
        let f =
            harmonic_extension(&net, &[0, 1, 2], &[rat_int(1), rat_int(0), rat_int(0)]).unwrap();
        assert_eq!(f[3], &c1 / &(&c1 + &c2 + &c3));
        let f = harmonic_extension(&net, &[0, 1, 2], &[rat(4, 3), rat(4, 3), rat(4, 3)]).unwrap();
        assert!(f.iter().all(|x| *x == rat(4, 3)));
        let path = Network::new(3, vec![(0, 1, rat(1, 1)), (1, 2, rat(1, 1))], vec![0, 2]).unwrap();
        let f = harmonic_extension(&path, &[0, 2], &[rat_int(0), rat_int(1)]).unwrap();
        assert_eq!(f[1], rat(1, 2));
        assert!(f.iter().all(|x| *x >= rat_int(0) && *x <= rat_int(1)));
    }

    #[test]
    fn energy_matches_quadratic_form() {
        let (net, _) = y_network(rat(1, 1), rat(1, 1), rat(1, 1));
        let f =
            harmonic_extension(&net, &[0, 1, 2], &[rat_int(1), rat_int(0), rat_int(0)]).unwrap();
        let e = dirichlet_energy(&net, &f);
        assert_eq!(e, rat(2, 3));
        let delta = assemble(&net);
        let df = delta.mul_vec(&f);
        let ip: Rat = f.iter().zip(&df).map(|(a, b)| a * b).sum();
        assert_eq!(e, ip);
        let l = response_matrix(&net).unwrap();
        assert_eq!(e, -l.m[(0, 0)].clone());
        assert!(dirichlet_energy(&net, &vec![rat(5, 1); 4]).is_zero());
        let single = Network::new(2, vec![(0, 1, rat(2, 1))], vec![0, 1]).unwrap();
        assert_eq!(
            dirichlet_energy(&single, &[rat_int(0), rat_int(1)]),
            rat(2, 1)
        );
    }

    #[test]
    fn self_loop_line_laplacian() {
        let net = Network::new(1, vec![(0, 0, rat(5, 1))], vec![]).unwrap();
        let rot = vec![vec![0, 1]];
        let emb = Embedding::new(&net, Surface::Annulus, rot, vec![(1, 0)], None, vec![]).unwrap();
        let m = assemble_line(&net, &emb);
        let expect = crate::exact::laurent::x_in_z().scale(&rat(5, 1));
        assert_eq!(m[(0, 0)], expect);
    }

    #[test]
    fn transfer_current_triangle() {
        let net = complete_graph(3);
        let tc = transfer_current(&net);
        for e in 0..3 {
            assert_eq!(tc.current[(e, e)], rat(2, 3));
        }
        for g in 0..3 {
            let tg = transfer_current_grounded(&net, g);
            assert_eq!(tg.current, tc.current);
        }
        let single = Network::new(2, vec![(0, 1, rat(3, 1))], vec![0, 1]).unwrap();
        let t1 = transfer_current(&single);
        assert_eq!(t1.current[(0, 0)], rat(1, 1));
    }

    #[test]
    fn conjugate_on_single_edge() {
        // Two nodes joined by one edge: the outer region is cut at the nodes
        // into two exterior faces, and g jumps by c·df across the edge.
        let net = Network::new(2, vec![(0, 1, rat(1, 1))], vec![0, 1]).unwrap();
        let rot = vec![vec![0], vec![1]];
        let emb = Embedding::new(&net, Surface::Disk, rot, vec![(0, 0)], None, vec![]).unwrap();
        let f = vec![rat_int(0), rat_int(1)];
        let g = harmonic_conjugate(&net, &emb, &f).unwrap();
        assert_eq!(g.len(), 2);
        let jump = (&g[0] - &g[1]).abs();
        assert_eq!(jump, rat(1, 1));
    }

    #[test]
    fn conjugate_constant_is_constant() {
        let tri = Network::new(
            3,
            vec![(0, 1, rat(1, 1)), (1, 2, rat(1, 1)), (2, 0, rat(1, 1))],
            vec![0, 1, 2],
        )
        .unwrap();
        let rot = vec![vec![0, 5], vec![2, 1], vec![4, 3]];
        let emb = Embedding::new(&tri, Surface::Disk, rot, vec![(0, 0); 3], None, vec![]).unwrap();
        let g = harmonic_conjugate(&tri, &emb, &vec![rat(2, 1); 3]).unwrap();
        assert!(g.iter().all(|x| x.is_zero()));
        // non-harmonic data is rejected with a witness on a network with an
        // interior vertex
        let (y, yemb) = y_network(rat(1, 1), rat(1, 1), rat(1, 1));
        let bad = vec![rat_int(1), rat_int(0), rat_int(0), rat_int(0)];
        match harmonic_conjugate(&y, &yemb, &bad) {
            Err(LaplacianError::NotHarmonic { vertex }) => assert_eq!(vertex, 3),
            other => panic!("expected NotHarmonic, got {other:?}"),
        }
    }

    #[test]
    fn grid_conjugate_path_independent() {
        // 2x2 grid in the disk, unit conductances, alternating boundary data.
        // Path-independence of g is exactly what harmonic_conjugate asserts.
        let net = Network::new(
            4,
            vec![
                (0, 1, rat(1, 1)),
                (1, 2, rat(1, 1)),
                (2, 3, rat(1, 1)),
                (3, 0, rat(1, 1)),
            ],
            vec![0, 1, 2, 3],
        )
        .unwrap();
        let rot = vec![vec![0, 7], vec![2, 1], vec![4, 3], vec![6, 5]];
        let emb = Embedding::new(&net, Surface::Disk, rot, vec![(0, 0); 4], None, vec![]).unwrap();
        let f = vec![rat_int(1), rat_int(0), rat_int(1), rat_int(0)];
        let g = harmonic_conjugate(&net, &emb, &f).unwrap();
        assert_eq!(g.len(), 1 + 4); // inner square + 4 exterior arcs
    }
}
