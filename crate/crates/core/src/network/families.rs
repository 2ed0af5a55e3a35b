//! Standard network families: the well-connected disk networks `gamma(n)`,
//! the annular string of loops, the cylinder grid with a zipper column, and
//! the torus grid.

use super::{dart_of, Embedding, Network, Surface};
use crate::exact::{rat_int, Rat};
use num_traits::One;

#[derive(Debug, Clone, PartialEq)]
pub enum FamilyError {
    OutOfRange(String),
    WrongConductanceCount { expected: usize, got: usize },
}

impl std::fmt::Display for FamilyError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FamilyError::OutOfRange(s) => write!(f, "family parameter out of range: {s}"),
            FamilyError::WrongConductanceCount { expected, got } => {
                write!(f, "expected {expected} conductances, got {got}")
            }
        }
    }
}

impl std::error::Error for FamilyError {}

/// The standard well-connected network on `n` boundary nodes, with
/// `n(n-1)/2` edges. Built from the wiring diagram of `n` pseudolines that
/// pairwise cross once: network vertices are the even-depth faces of the
/// arrangement, edges are the crossings, and the medial strands are the
/// pseudolines themselves, pairing each boundary stub with the diametrically
/// opposite one.
pub fn gamma(n: usize, conductances: &[Rat]) -> Result<(Network, Embedding), FamilyError> {
    if !(2..=8).contains(&n) {
        return Err(FamilyError::OutOfRange(format!(
            "gamma defined for 2..=8 nodes, got {n}"
        )));
    }
    let k = n * (n - 1) / 2;
    let cs = splat(conductances, k)?;

    // Column order of the crossings: (s1)(s2 s1)(s3 s2 s1)... One crossing
    // per time step, at gap `xg[t]` (gaps 1..n-1 between wire slots).
    let mut xg = Vec::with_capacity(k);
    for block in 1..n {
        for g in (1..=block).rev() {
            xg.push(g);
        }
    }
    debug_assert_eq!(xg.len(), k);

    // Faces of the diagram: cells (t, g) for t in 0..=k, g in 0..=n, merged
    // horizontally except across a crossing at that gap.
    let cols = k + 1;
    let cell = |t: usize, g: usize| t * (n + 1) + g;
    let mut uf = UnionFind::new(cols * (n + 1));
    for t in 1..=k {
        for g in 0..=n {
            if g != xg[t - 1] {
                uf.union(cell(t - 1, g), cell(t, g));
            }
        }
    }

    // Network vertices are the even-gap faces.
    let mut vertex_of_face: std::collections::BTreeMap<usize, usize> = Default::default();
    let mut face_reps: Vec<usize> = Vec::new();
    for t in 0..cols {
        for g in (0..=n).step_by(2) {
            let r = uf.find(cell(t, g));
            vertex_of_face.entry(r).or_insert_with(|| {
                face_reps.push(r);
                face_reps.len() - 1
            });
        }
    }
    let num_vertices = face_reps.len();
    let vert = |uf: &mut UnionFind, t: usize, g: usize| -> usize {
        vertex_of_face[&uf.find(cell(t, g))]
    };

    // One edge per crossing.
    let mut edges: Vec<(usize, usize, Rat)> = Vec::with_capacity(k);
    for t in 1..=k {
        let g = xg[t - 1];
        let (u, v) = if g % 2 == 1 {
            (vert(&mut uf, t, g - 1), vert(&mut uf, t, g + 1))
        } else {
            (vert(&mut uf, t - 1, g), vert(&mut uf, t, g))
        };
        edges.push((u, v, cs[t - 1].clone()));
    }

    // Rotation: for each face, its boundary crossings in counterclockwise
    // order: left end, bottom side left-to-right, right end, top side
    // right-to-left. Runs are maximal horizontal spans at a fixed gap.
    let mut rotation: Vec<Vec<usize>> = vec![Vec::new(); num_vertices];
    for g in (0..=n).step_by(2) {
        let mut t0 = 0;
        while t0 <= k {
            let mut t1 = t0;
            while t1 < k && xg[t1] != g {
                t1 += 1;
            }
            // run spans cells t0..=t1 at gap g
            let v = vert(&mut uf, t0, g);
            let mut order: Vec<usize> = Vec::new();
            if t0 > 0 {
                order.push(t0 - 1); // left-end crossing (edge index t0-1)
            }
            if g < n {
                for t in t0 + 1..=t1 {
                    if xg[t - 1] == g + 1 {
                        order.push(t - 1);
                    }
                }
            }
            if t1 < k {
                order.push(t1); // right-end crossing
            }
            if g > 0 {
                for t in (t0 + 1..=t1).rev() {
                    if xg[t - 1] == g - 1 {
                        order.push(t - 1);
                    }
                }
            }
            for e in order {
                let (u, _, _) = edges[e];
                rotation[v].push(dart_of(e, u != v));
            }
            t0 = t1 + 1;
        }
    }

    // Boundary nodes in counterclockwise order: top face, then down the left
    // side, across the bottom, and up the right side.
    let mut nodes: Vec<usize> = Vec::new();
    nodes.push(vert(&mut uf, 0, 0));
    for g in (2..=n).step_by(2) {
        let v = vert(&mut uf, 0, g);
        if !nodes.contains(&v) {
            nodes.push(v);
        }
    }
    for g in (2..n).step_by(2).rev() {
        let v = vert(&mut uf, k, g);
        if !nodes.contains(&v) {
            nodes.push(v);
        }
    }
    debug_assert_eq!(nodes.len(), n);

    let net = Network::new(num_vertices, edges, nodes).expect("gamma network is valid");
    let emb = Embedding::new(
        &net,
        Surface::Disk,
        rotation,
        vec![(0, 0); k],
        None,
        vec![],
    )
    .expect("gamma embedding is valid");
    Ok((net, emb))
}

/// String of loops on the annulus: `n` vertices in a radial chain, a
/// noncontractible loop of conductance `b[i]` at each, chain edges `a[i]`
/// between neighbors. `n = 1` is a single vertex with one loop.
pub fn string_of_loops(a: &[Rat], b: &[Rat]) -> Result<(Network, Embedding), FamilyError> {
    let n = b.len();
    if n == 0 || a.len() + 1 != n {
        return Err(FamilyError::OutOfRange(
            "need loop conductances b (len n) and chain conductances a (len n-1)".into(),
        ));
    }
    // edges: loops first (ids 0..n), then chain (ids n..2n-1)
    let mut edges: Vec<(usize, usize, Rat)> = (0..n).map(|i| (i, i, b[i].clone())).collect();
    for i in 0..n - 1 {
        edges.push((i, i + 1, a[i].clone()));
    }
    let mut weights = vec![(1i64, 0i64); n];
    weights.extend(vec![(0, 0); n - 1]);
    // Rotation at vertex i: loop east, chain up, loop west, chain down.
    let mut rotation: Vec<Vec<usize>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut r = vec![dart_of(i, false)];
        if i + 1 < n {
            r.push(dart_of(n + i, false));
        }
        r.push(dart_of(i, true));
        if i > 0 {
            r.push(dart_of(n + i - 1, true));
        }
        rotation.push(r);
    }
    let net = Network::new(n, edges, vec![]).expect("string of loops is valid");
    let emb = Embedding::new(&net, Surface::Annulus, rotation, weights, None, vec![])
        .expect("string of loops embedding is valid");
    Ok((net, emb))
}

/// Cylinder grid: an `m`-vertex path crossed with an `n`-cycle, unit
/// conductances, the wrap column carrying the zipper. Vertex `(i, j)` has id
/// `i*n + j`; cycle edges come first (id `i*n + j`), then path edges
/// (id `m*n + i*n + j`).
pub fn cylinder(m: usize, n: usize) -> Result<(Network, Embedding), FamilyError> {
    grid(m, n, false)
}

/// Torus grid: an `m`-cycle crossed with an `n`-cycle, unit conductances,
/// horizontal wraps carrying `z1` and vertical wraps `z2`. Edge ids as in
/// [`cylinder`], with vertical wrap edges included.
pub fn torus_grid(m: usize, n: usize) -> Result<(Network, Embedding), FamilyError> {
    grid(m, n, true)
}

fn grid(m: usize, n: usize, torus: bool) -> Result<(Network, Embedding), FamilyError> {
    if m == 0 || n == 0 || m * n > 36 {
        return Err(FamilyError::OutOfRange(format!("grid {m}x{n}")));
    }
    if !torus && n < 1 {
        return Err(FamilyError::OutOfRange("cylinder needs n >= 1".into()));
    }
    let vid = |i: usize, j: usize| i * n + j;
    let mut edges: Vec<(usize, usize, Rat)> = Vec::new();
    let mut weights: Vec<(i64, i64)> = Vec::new();
    // horizontal (cycle direction): (i,j) -> (i, j+1 mod n)
    let mut h_edge = vec![vec![usize::MAX; n]; m];
    for i in 0..m {
        for j in 0..n {
            h_edge[i][j] = edges.len();
            edges.push((vid(i, j), vid(i, (j + 1) % n), Rat::one()));
            weights.push(if j + 1 == n { (1, 0) } else { (0, 0) });
        }
    }
    // vertical (path direction): (i,j) -> (i+1, j); wraps only on the torus
    let mut v_edge = vec![vec![usize::MAX; n]; m];
    let vrows = if torus { m } else { m - 1 };
    for i in 0..vrows {
        for j in 0..n {
            v_edge[i][j] = edges.len();
            edges.push((vid(i, j), vid((i + 1) % m, j), Rat::one()));
            weights.push(if torus && i + 1 == m { (0, 1) } else { (0, 0) });
        }
    }
    // Rotation at (i,j), counterclockwise: E, N, W, S.
    let mut rotation: Vec<Vec<usize>> = Vec::with_capacity(m * n);
    for i in 0..m {
        for j in 0..n {
            let mut r = Vec::new();
            r.push(dart_of(h_edge[i][j], false)); // east
            if torus || i + 1 < m {
                r.push(dart_of(v_edge[i][j], false)); // north
            }
            r.push(dart_of(h_edge[i][(j + n - 1) % n], true)); // west
            if torus || i > 0 {
                r.push(dart_of(v_edge[(i + m - 1) % m][j], true)); // south
            }
            rotation.push(r);
        }
    }
    let net = Network::new(m * n, edges, vec![]).expect("grid is valid");
    let surface = if torus { Surface::Torus } else { Surface::Annulus };
    let emb = Embedding::new(&net, surface, rotation, weights, None, vec![])
        .expect("grid embedding is valid");
    Ok((net, emb))
}

/// Complete graph on `n` vertices, all nodes, unit conductances. No embedding.
pub fn complete_graph(n: usize) -> Network {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            edges.push((i, j, Rat::one()));
        }
    }
    Network::new(n, edges, (0..n).collect()).expect("complete graph is valid")
}

/// The three-spoke star: nodes 0, 1, 2 on the boundary, internal hub 3.
pub fn y_network(c1: Rat, c2: Rat, c3: Rat) -> (Network, Embedding) {
    let net = Network::new(
        4,
        vec![(0, 3, c1), (1, 3, c2), (2, 3, c3)],
        vec![0, 1, 2],
    )
    .unwrap();
    // Counterclockwise at the hub: toward 0, then 1, then 2.
    let rotation = vec![vec![0], vec![2], vec![4], vec![1, 3, 5]];
    let emb = Embedding::new(&net, Surface::Disk, rotation, vec![(0, 0); 3], None, vec![])
        .expect("Y embedding is valid");
    (net, emb)
}

fn splat(cs: &[Rat], k: usize) -> Result<Vec<Rat>, FamilyError> {
    match cs.len() {
        0 => Ok(vec![Rat::one(); k]),
        1 => Ok(vec![cs[0].clone(); k]),
        l if l == k => Ok(cs.to_vec()),
        got => Err(FamilyError::WrongConductanceCount { expected: k, got }),
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }
    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

pub fn rat_units(k: usize) -> Vec<Rat> {
    vec![rat_int(1); k]
}
