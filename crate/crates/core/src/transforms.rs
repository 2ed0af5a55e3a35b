//! Electrical transformations, response invariance, EIT reconstruction,
//! central minors, determinant identities, and the conductance-to-minors
//! log-Jacobian.
//!
//! All moves rewrite the rotation system along with the graph, so medial
//! invariants stay checkable across a move. Reconstruction peels a minimal
//! disk network from the boundary: at each step it finds a boundary edge
//! (between circularly adjacent nodes) or a boundary spike (a degree-1 node
//! on an interior vertex), determines its conductance exactly by forcing the
//! noninterlaced minor that dies in the peeled network to vanish, applies the
//! closed-form response update, and recurses.

use crate::exact::matrix::RatMatrix;
use crate::exact::{rat_to_f64, Rat};
use crate::laplacian::{assemble, response_matrix, ResponseMatrix};
use crate::network::{dart_of, dart_rev, Embedding, Network, Surface};
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq)]
pub enum Move {
    /// Remove an internal degree-1 vertex and its edge.
    DeadBranch { vertex: usize },
    /// Remove a self-loop bounding a face.
    SelfLoop { edge: usize },
    /// Merge the two edges at an internal degree-2 vertex: c1·c2/(c1+c2).
    Series { vertex: usize },
    /// Merge two parallel edges bounding a bigon face: c1 + c2.
    Parallel { keep: usize, merge: usize },
    /// Replace an internal degree-3 vertex by a triangle: C_ij = c_i·c_j/Σc.
    YDelta { vertex: usize },
    /// Replace a triangular face by a star: leg opposite edge i gets
    /// (c1c2 + c1c3 + c2c3)/c_i. The face is named by one of its darts.
    DeltaY { face_dart: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub enum TransformError {
    PatternMismatch(String),
    NodeProtected(usize),
}

impl std::fmt::Display for TransformError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TransformError::PatternMismatch(s) => write!(f, "site does not match the move: {s}"),
            TransformError::NodeProtected(v) => {
                write!(f, "move would remove boundary node {v}")
            }
        }
    }
}

impl std::error::Error for TransformError {}

/// Working description of the rewritten network: edges keyed by synthetic
/// slots so rotations can reference both surviving and new darts before
/// renumbering.
struct Rebuild {
    /// (u, v, c, weight of the u→v dart)
    edges: Vec<(usize, usize, Rat, (i64, i64))>,
    /// rotation over slot darts (2·slot + dir)
    rotation: Vec<Vec<usize>>,
    /// kept vertices, old ids in order
    vertex_keep: Vec<usize>,
}

fn finish(
    net: &Network,
    emb: &Embedding,
    rb: Rebuild,
    outer_hint: Option<usize>,
) -> Result<(Network, Embedding), TransformError> {
    let old_to_new_vertex: std::collections::BTreeMap<usize, usize> = rb
        .vertex_keep
        .iter()
        .enumerate()
        .map(|(n, &o)| (o, n))
        .collect();
    let edges: Vec<(usize, usize, Rat)> = rb
        .edges
        .iter()
        .map(|(u, v, c, _)| (old_to_new_vertex[u], old_to_new_vertex[v], c.clone()))
        .collect();
    let weights: Vec<(i64, i64)> = rb.edges.iter().map(|e| e.3).collect();
    let nodes: Vec<usize> = net.nodes.iter().map(|n| old_to_new_vertex[n]).collect();
    let rotation: Vec<Vec<usize>> = rb
        .vertex_keep
        .iter()
        .map(|&o| rb.rotation[o].clone())
        .collect();
    let new_net = Network::new(rb.vertex_keep.len(), edges, nodes)
        .map_err(|e| TransformError::PatternMismatch(format!("rewrite produced {e}")))?;
    let emb2 = Embedding::new(
        &new_net,
        emb.surface,
        rotation,
        weights,
        outer_hint,
        vec![],
    )
    .map_err(|e| TransformError::PatternMismatch(format!("rewrite broke the embedding: {e}")))?;
    Ok((new_net, emb2))
}

/// Apply an electrical transformation, rewriting graph, conductances,
/// homology weights and rotation together.
pub fn apply(
    net: &Network,
    emb: &Embedding,
    mv: &Move,
) -> Result<(Network, Embedding), TransformError> {
    let mut rb = Rebuild {
        edges: net
            .edges
            .iter()
            .map(|e| (e.u, e.v, e.c.clone(), emb.weights[dart_of(e.id, false)]))
            .collect(),
        rotation: emb.rotation.clone(),
        vertex_keep: (0..net.num_vertices).collect(),
    };
    match *mv {
        Move::DeadBranch { vertex } => {
            if net.is_node(vertex) {
                return Err(TransformError::NodeProtected(vertex));
            }
            let incident: Vec<usize> = net
                .edges
                .iter()
                .filter(|e| e.u == vertex || e.v == vertex)
                .map(|e| e.id)
                .collect();
            let [e] = incident.as_slice() else {
                return Err(TransformError::PatternMismatch(format!(
                    "vertex {vertex} has degree {} != 1",
                    net.degree(vertex)
                )));
            };
            let ed = &net.edges[*e];
            if ed.u == ed.v {
                return Err(TransformError::PatternMismatch("pendant loop".into()));
            }
            let other = if ed.u == vertex { ed.v } else { ed.u };
            remove_edge_slot(&mut rb, *e);
            rb.rotation[other].retain(|&d| d / 2 != *e);
            rb.rotation[vertex].clear();
            rb.vertex_keep.retain(|&v| v != vertex);
            finish(net, emb, rb, None)
        }
        Move::SelfLoop { edge } => {
            let ed = &net.edges[edge];
            if ed.u != ed.v {
                return Err(TransformError::PatternMismatch("not a self-loop".into()));
            }
            // must bound a face alone (contractible petal)
            let faces = emb.faces(net);
            let is_monogon = faces
                .cycles
                .iter()
                .any(|c| c.len() == 1 && c[0] / 2 == edge);
            if !is_monogon {
                return Err(TransformError::PatternMismatch(
                    "self-loop does not bound a face".into(),
                ));
            }
            remove_edge_slot(&mut rb, edge);
            rb.rotation[ed.u].retain(|&d| d / 2 != edge);
            finish(net, emb, rb, None)
        }
        Move::Series { vertex } => {
            if net.is_node(vertex) {
                return Err(TransformError::NodeProtected(vertex));
            }
            let incident: Vec<usize> = net
                .edges
                .iter()
                .filter(|e| e.u == vertex || e.v == vertex)
                .map(|e| e.id)
                .collect();
            let [e1, e2] = incident.as_slice() else {
                return Err(TransformError::PatternMismatch(format!(
                    "vertex {vertex} has degree {} != 2",
                    net.degree(vertex)
                )));
            };
            let (e1, e2) = (*e1, *e2);
            if net.edges[e1].u == net.edges[e1].v || net.edges[e2].u == net.edges[e2].v {
                return Err(TransformError::PatternMismatch(
                    "series through a loop".into(),
                ));
            }
            let a = other_end(net, e1, vertex);
            let b = other_end(net, e2, vertex);
            let (c1, c2) = (net.edges[e1].c.clone(), net.edges[e2].c.clone());
            let c = &c1 * &c2 / (&c1 + &c2);
            // weight along a -> vertex -> b
            let w1 = dart_weight_into(emb, e1, net, vertex);
            let w2 = dart_weight_from(emb, e2, net, vertex);
            let w = (w1.0 + w2.0, w1.1 + w2.1);
            // new edge occupies e1's slot with endpoints (a, b); fix up the
            // darts at both ends before the slot renumbering
            let old_adart = dart_of(e1, net.edges[e1].u != a);
            let old_bdart = dart_of(e2, net.edges[e2].u != b);
            rb.edges[e1] = (a, b, c, w);
            for d in rb.rotation[a].iter_mut() {
                if *d == old_adart {
                    *d = dart_of(e1, false);
                }
            }
            for d in rb.rotation[b].iter_mut() {
                if *d == old_bdart {
                    *d = dart_of(e1, true);
                }
            }
            remove_edge_slot(&mut rb, e2);
            rb.rotation[vertex].clear();
            rb.vertex_keep.retain(|&v| v != vertex);
            finish(net, emb, rb, None)
        }
        Move::Parallel { keep, merge } => {
            let (ek, em) = (&net.edges[keep], &net.edges[merge]);
            if keep == merge
                || !((ek.u == em.u && ek.v == em.v) || (ek.u == em.v && ek.v == em.u))
            {
                return Err(TransformError::PatternMismatch(
                    "edges are not parallel".into(),
                ));
            }
            // they must bound a bigon face
            let faces = emb.faces(net);
            let bigon = faces.cycles.iter().any(|c| {
                c.len() == 2 && {
                    let (x, y) = (c[0] / 2, c[1] / 2);
                    (x, y) == (keep, merge) || (x, y) == (merge, keep)
                }
            });
            if !bigon {
                return Err(TransformError::PatternMismatch(
                    "parallel edges do not bound a bigon".into(),
                ));
            }
            rb.edges[keep].2 = &ek.c + &em.c;
            remove_edge_slot(&mut rb, merge);
            rb.rotation[em.u].retain(|&d| d / 2 != merge);
            if em.u != em.v {
                rb.rotation[em.v].retain(|&d| d / 2 != merge);
            }
            finish(net, emb, rb, None)
        }
        Move::YDelta { vertex } => {
            if net.is_node(vertex) {
                return Err(TransformError::NodeProtected(vertex));
            }
            // rotation order gives the counterclockwise legs
            let legs: Vec<usize> = emb.rotation[vertex].clone();
            if legs.len() != 3 || net.degree(vertex) != 3 {
                return Err(TransformError::PatternMismatch(format!(
                    "vertex {vertex} is not an internal degree-3 star center"
                )));
            }
            let leg_edge: Vec<usize> = legs.iter().map(|&d| d / 2).collect();
            if leg_edge.iter().any(|&e| net.edges[e].u == net.edges[e].v) {
                return Err(TransformError::PatternMismatch("star leg is a loop".into()));
            }
            let nbr: Vec<usize> = leg_edge
                .iter()
                .map(|&e| other_end(net, e, vertex))
                .collect();
            let cs: Vec<Rat> = leg_edge.iter().map(|&e| net.edges[e].c.clone()).collect();
            let s = &(&cs[0] + &cs[1]) + &cs[2];
            // new triangle edges: slot i holds the edge between nbr[i] and
            // nbr[i+1], replacing leg slots; conductance c_i·c_{i+1}/S;
            // weight = (nbr[i] -> vertex) + (vertex -> nbr[i+1])
            let mut new_darts = Vec::new(); // (i, dart at nbr[i] of edge i, dart at nbr[i+1])
            for i in 0..3 {
                let j = (i + 1) % 3;
                let w_in = dart_weight_into(emb, leg_edge[i], net, vertex);
                let w_out = dart_weight_from(emb, leg_edge[j], net, vertex);
                let w = (w_in.0 + w_out.0, w_in.1 + w_out.1);
                let c = &cs[i] * &cs[j] / &s;
                rb.edges[leg_edge[i]] = (nbr[i], nbr[j], c, w);
                new_darts.push((dart_of(leg_edge[i], false), dart_of(leg_edge[i], true)));
            }
            // at each neighbor, replace the dart toward the old center by the
            // two triangle darts: (toward previous nbr, toward next nbr) ccw
            for i in 0..3 {
                let j_prev = (i + 2) % 3;
                let old = dart_toward(net, leg_edge[i], nbr[i]);
                let d_next = new_darts[i].0; // nbr[i] -> nbr[i+1]
                let d_prev = new_darts[j_prev].1; // nbr[i] -> nbr[i-1]
                let pos = rb.rotation[nbr[i]]
                    .iter()
                    .position(|&d| d == old)
                    .expect("leg dart present");
                rb.rotation[nbr[i]].splice(pos..=pos, [d_prev, d_next]);
            }
            rb.rotation[vertex].clear();
            rb.vertex_keep.retain(|&v| v != vertex);
            finish(net, emb, rb, None)
        }
        Move::DeltaY { face_dart } => {
            let faces = emb.faces(net);
            let f = faces.face_of[face_dart];
            let cycle = faces.cycles[f].clone();
            if cycle.len() != 3 {
                return Err(TransformError::PatternMismatch(
                    "face is not a triangle".into(),
                ));
            }
            let tri_edges: Vec<usize> = cycle.iter().map(|&d| d / 2).collect();
            if tri_edges[0] == tri_edges[1]
                || tri_edges[1] == tri_edges[2]
                || tri_edges[0] == tri_edges[2]
            {
                return Err(TransformError::PatternMismatch(
                    "triangle reuses an edge".into(),
                ));
            }
            // corners: cycle = (d1: x->y, d2: y->z, d3: z->x)
            let xs: Vec<usize> = cycle
                .iter()
                .map(|&d| crate::network::dart_tail(net, d))
                .collect();
            if xs[0] == xs[1] || xs[1] == xs[2] || xs[0] == xs[2] {
                return Err(TransformError::PatternMismatch(
                    "triangle corners coincide".into(),
                ));
            }
            let cs: Vec<Rat> = tri_edges.iter().map(|&e| net.edges[e].c.clone()).collect();
            let p = &(&(&cs[0] * &cs[1]) + &(&cs[0] * &cs[2])) + &(&cs[1] * &cs[2]);
            let w = net.num_vertices; // new hub id (old ids untouched)
            // leg from corner xs[i]: opposite edge is the cycle edge not at
            // xs[i], which is tri_edges[(i+1)%3]
            // legs occupy the triangle edge slots: slot tri_edges[i] becomes
            // edge (xs[i], w) with conductance P / c(opposite)
            let mut leg_dart = vec![0usize; 3];
            for i in 0..3 {
                let opp = (i + 1) % 3;
                let c = &p / &cs[opp];
                // weights: w(x_i -> w) chosen as gauge 0 for i = 0; determined
                // by the old darts for the rest
                rb.edges[tri_edges[i]] = (xs[i], w, c, (0, 0));
                leg_dart[i] = dart_of(tri_edges[i], false);
            }
            // weights: old dart d1 (x0 -> x1) must equal w(x0->w) + w(w->x1)
            let wd: Vec<(i64, i64)> = cycle.iter().map(|&d| emb.weights[d]).collect();
            // gauge: w(x0->w) = 0; w(x1->w) = -(wd0); w(x2->w) = wd2
            rb.edges[tri_edges[0]].3 = (0, 0);
            rb.edges[tri_edges[1]].3 = (-wd[0].0, -wd[0].1);
            rb.edges[tri_edges[2]].3 = (wd[2].0, wd[2].1);
            // rotations at corners: the two triangle darts at x_i are
            // d_out = cycle[i] and d_in = rev(cycle[(i+2)%3]), adjacent in ccw
            // order (d_out, then d_in); replace the pair by the leg dart.
            for i in 0..3 {
                let d_out = cycle[i];
                let d_in = dart_rev(cycle[(i + 2) % 3]);
                let rot = &mut rb.rotation[xs[i]];
                let pos_out = rot.iter().position(|&d| d == d_out).unwrap();
                // d_in must follow d_out counterclockwise for the face corner
                let pos_in = rot.iter().position(|&d| d == d_in).unwrap();
                if (pos_out + 1) % rot.len() != pos_in {
                    return Err(TransformError::PatternMismatch(
                        "triangle corner darts are not adjacent".into(),
                    ));
                }
                if pos_in == 0 {
                    rot.remove(pos_out);
                    rot.remove(0);
                    rot.insert(0, leg_dart[i]);
                } else {
                    rot.splice(pos_out..=pos_in, [leg_dart[i]]);
                }
            }
            // hub rotation: counterclockwise toward x0, x1, x2
            rb.rotation.push(vec![
                dart_rev(leg_dart[0]),
                dart_rev(leg_dart[1]),
                dart_rev(leg_dart[2]),
            ]);
            rb.vertex_keep.push(w);
            finish(net, emb, rb, None)
        }
    }
}

fn other_end(net: &Network, e: usize, v: usize) -> usize {
    let ed = &net.edges[e];
    if ed.u == v {
        ed.v
    } else {
        ed.u
    }
}

fn dart_toward(net: &Network, e: usize, from: usize) -> usize {
    dart_of(e, net.edges[e].u != from)
}

/// Weight of the dart of `e` pointing into `v`.
fn dart_weight_into(emb: &Embedding, e: usize, net: &Network, v: usize) -> (i64, i64) {
    emb.weights[dart_of(e, net.edges[e].v != v)]
}

/// Weight of the dart of `e` leaving `v`.
fn dart_weight_from(emb: &Embedding, e: usize, net: &Network, v: usize) -> (i64, i64) {
    emb.weights[dart_of(e, net.edges[e].u != v)]
}

fn remove_edge_slot(rb: &mut Rebuild, e: usize) {
    // mark the slot dead; renumber at the end
    rb.edges[e].2 = Rat::zero(); // sentinel
    // compress: drop the slot and renumber darts in rotations
    let mut map = Vec::with_capacity(rb.edges.len());
    let mut next = 0usize;
    for i in 0..rb.edges.len() {
        if i == e {
            map.push(usize::MAX);
        } else {
            map.push(next);
            next += 1;
        }
    }
    rb.edges.remove(e);
    for rot in rb.rotation.iter_mut() {
        rot.retain(|&d| map[d / 2] != usize::MAX);
        for d in rot.iter_mut() {
            *d = 2 * map[*d / 2] + (*d & 1);
        }
    }
}

/// Before/after responses of a move, with the exact equality flag.
pub struct InvarianceCheck {
    pub before: ResponseMatrix,
    pub after: ResponseMatrix,
    pub equal: bool,
}

pub fn response_invariance_check(
    net: &Network,
    emb: &Embedding,
    mv: &Move,
) -> Result<InvarianceCheck, Box<dyn std::error::Error>> {
    let before = response_matrix(net)?;
    let (net2, _) = apply(net, emb, mv)?;
    let after = response_matrix(&net2)?;
    let equal = before.m == after.m;
    Ok(InvarianceCheck {
        before,
        after,
        equal,
    })
}

// ---------------------------------------------------------------------------
// Reconstruction
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
pub enum ReconstructError {
    NotMinimal(String),
    Inconsistent { step: usize, reason: String },
}

impl std::fmt::Display for ReconstructError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ReconstructError::NotMinimal(s) => write!(f, "topology is not minimal: {s}"),
            ReconstructError::Inconsistent { step, reason } => {
                write!(f, "response matrix inconsistent at peel step {step}: {reason}")
            }
        }
    }
}

impl std::error::Error for ReconstructError {}

struct Peel {
    /// surviving edges: (original id, u, v)
    edges: Vec<(usize, usize, usize)>,
    /// current boundary nodes, vertex ids in circular order
    nodes: Vec<usize>,
    /// vertices still alive
    alive: std::collections::BTreeSet<usize>,
    /// Λ = −L on the current nodes, in their order
    lambda: RatMatrix,
}

impl Peel {
    fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|&(_, a, b)| (a == v) as usize + (b == v) as usize)
            .sum()
    }

    fn is_node(&self, v: usize) -> bool {
        self.nodes.contains(&v)
    }

    /// `k` internally node-avoiding vertex-disjoint paths joining `a_set` to
    /// `b_set`, with `blocked` additionally forbidden?
    fn connected(&self, a_set: &[usize], b_set: &[usize], blocked: &[usize]) -> bool {
        let k = a_set.len();
        // max-flow with unit vertex capacities (vertices split in/out)
        let mut ids = std::collections::BTreeMap::new();
        for &v in &self.alive {
            let n = ids.len();
            ids.insert(v, n);
        }
        let n = ids.len();
        let node_in = |v: usize, ids: &std::collections::BTreeMap<usize, usize>| 2 * ids[&v];
        let node_out = |v: usize, ids: &std::collections::BTreeMap<usize, usize>| 2 * ids[&v] + 1;
        let src = 2 * n;
        let dst = 2 * n + 1;
        let mut graph = FlowGraph::new(2 * n + 2);
        for &v in &self.alive {
            if blocked.contains(&v) {
                continue;
            }
            let cap = if a_set.contains(&v) || b_set.contains(&v) {
                // endpoints may host exactly one path end
                1
            } else if self.is_node(v) {
                0 // other boundary nodes may not be crossed
            } else {
                1
            };
            graph.add_edge(node_in(v, &ids), node_out(v, &ids), cap);
        }
        for &(_, u, v) in &self.edges {
            if blocked.contains(&u) || blocked.contains(&v) || u == v {
                continue;
            }
            graph.add_edge(node_out(u, &ids), node_in(v, &ids), 1);
            graph.add_edge(node_out(v, &ids), node_in(u, &ids), 1);
        }
        for &a in a_set {
            graph.add_edge(src, node_in(a, &ids), 1);
        }
        for &b in b_set {
            graph.add_edge(node_out(b, &ids), dst, 1);
        }
        graph.max_flow(src, dst) >= k as i64
    }

    /// Noninterlaced candidate pairs (positions into `self.nodes`), smallest
    /// size first: disjoint equal-size subsets of the nodes that still carry
    /// edges, lying in disjoint circular intervals — around the circle the
    /// labels of A ∪ B form one A-block and one B-block.
    fn noninterlaced_pairs(&self) -> Vec<(Vec<usize>, Vec<usize>)> {
        let active: Vec<usize> = (0..self.nodes.len())
            .filter(|&i| self.degree(self.nodes[i]) > 0)
            .collect();
        let n = active.len();
        let mut out = Vec::new();
        let subsets = |k: usize| -> Vec<Vec<usize>> {
            let mut subs = Vec::new();
            let mut cur = Vec::new();
            fn rec(
                start: usize,
                n: usize,
                k: usize,
                cur: &mut Vec<usize>,
                out: &mut Vec<Vec<usize>>,
            ) {
                if cur.len() == k {
                    out.push(cur.clone());
                    return;
                }
                for i in start..n {
                    cur.push(i);
                    rec(i + 1, n, k, cur, out);
                    cur.pop();
                }
            }
            rec(0, n, k, &mut cur, &mut subs);
            subs
        };
        for k in 1..=(n / 2) {
            let subs = subsets(k);
            for (ai, a_ix) in subs.iter().enumerate() {
                for b_ix in &subs[ai + 1..] {
                    if a_ix.iter().any(|x| b_ix.contains(x)) {
                        continue;
                    }
                    // noninterlaced: going around the circle, the union shows
                    // at most one A-to-B and one B-to-A transition
                    let mut labels: Vec<bool> = Vec::new(); // true = in A
                    for pos in 0..n {
                        if a_ix.contains(&pos) {
                            labels.push(true);
                        } else if b_ix.contains(&pos) {
                            labels.push(false);
                        }
                    }
                    let m = labels.len();
                    let transitions = (0..m)
                        .filter(|&i| labels[i] != labels[(i + 1) % m])
                        .count();
                    if transitions > 2 {
                        continue;
                    }
                    out.push((
                        a_ix.iter().map(|&i| active[i]).collect(),
                        b_ix.iter().map(|&i| active[i]).collect(),
                    ));
                }
            }
        }
        out
    }
}

/// Recover the conductances of a minimal disk network from its response
/// matrix. Returns one conductance per edge id of `net`.
pub fn reconstruct(
    net: &Network,
    emb: &Embedding,
    l: &RatMatrix,
) -> Result<Vec<Rat>, ReconstructError> {
    let verdict = crate::medial::is_minimal(net, emb)
        .map_err(|e| ReconstructError::NotMinimal(e.to_string()))?;
    if !verdict.is_minimal() {
        return Err(ReconstructError::NotMinimal(format!("{verdict:?}")));
    }
    if emb.surface != Surface::Disk {
        return Err(ReconstructError::NotMinimal("needs a disk embedding".into()));
    }
    let n = net.nodes.len();
    assert_eq!((l.rows, l.cols), (n, n), "response matrix size");
    let mut peel = Peel {
        edges: net.edges.iter().map(|e| (e.id, e.u, e.v)).collect(),
        nodes: net.nodes.clone(),
        alive: (0..net.num_vertices).collect(),
        lambda: l.neg_mat(),
    };
    let mut out = vec![Rat::zero(); net.num_edges()];
    let mut step = 0usize;
    while !peel.edges.is_empty() {
        step += 1;
        // Candidate sites in preference order: boundary edges scanning the
        // nodes counterclockwise (lowest original edge id first), then
        // spikes. The first site whose conductance is pinned by a dying
        // minor wins.
        let sites = find_sites(&peel);
        if sites.is_empty() {
            return Err(ReconstructError::Inconsistent {
                step,
                reason: "no boundary edge or spike found".into(),
            });
        }
        let mut solved = None;
        for site in &sites {
            match *site {
                Site::BoundaryEdge { edge_pos, pi, qi } => {
                    if let Some(c) = solve_boundary_edge(&peel, edge_pos, pi, qi) {
                        solved = Some((site.clone(), c));
                        break;
                    }
                }
                Site::Spike { pi, w, .. } => {
                    if let Some(c) = solve_spike(&peel, pi, w) {
                        solved = Some((site.clone(), c));
                        break;
                    }
                }
            }
        }
        let (site, c) = solved.ok_or_else(|| ReconstructError::Inconsistent {
            step,
            reason: "no site has a determining minor".into(),
        })?;
        if !c.is_positive() {
            return Err(ReconstructError::Inconsistent {
                step,
                reason: format!("recovered non-positive conductance {c}"),
            });
        }
        match site {
            Site::BoundaryEdge { edge_pos, pi, qi } => {
                let (orig, _, _) = peel.edges[edge_pos];
                // Λ' = Λ − c · (δp − δq)(δp − δq)ᵗ
                let m = &mut peel.lambda;
                m[(pi, pi)] = m[(pi, pi)].clone() - c.clone();
                m[(qi, qi)] = m[(qi, qi)].clone() - c.clone();
                m[(pi, qi)] = m[(pi, qi)].clone() + c.clone();
                m[(qi, pi)] = m[(qi, pi)].clone() + c.clone();
                out[orig] = c;
                peel.edges.remove(edge_pos);
            }
            Site::Spike { edge_pos, pi, w } => {
                let (orig, _, _) = peel.edges[edge_pos];
                let p = peel.nodes[pi];
                let lam_pp = peel.lambda[(pi, pi)].clone();
                let denom = &c - &lam_pp;
                if denom.is_zero() {
                    return Err(ReconstructError::Inconsistent {
                        step,
                        reason: "contraction update degenerate".into(),
                    });
                }
                // Λ' over the same node positions with w in p's slot:
                // Λ'_{st} = Λ_st + Λ_sp Λ_pt / (c − Λ_pp)
                // Λ'_{ws} = c Λ_ps / (c − Λ_pp),  Λ'_{ww} = c Λ_pp / (c − Λ_pp)
                let nn = peel.nodes.len();
                let mut lam2 = RatMatrix::zero(nn, nn);
                for s in 0..nn {
                    for t in 0..nn {
                        lam2[(s, t)] = if s == pi && t == pi {
                            &c * &lam_pp / &denom
                        } else if s == pi {
                            &c * &peel.lambda[(pi, t)] / &denom
                        } else if t == pi {
                            &c * &peel.lambda[(s, pi)] / &denom
                        } else {
                            peel.lambda[(s, t)].clone()
                                + &peel.lambda[(s, pi)] * &peel.lambda[(pi, t)] / &denom
                        };
                    }
                }
                peel.lambda = lam2;
                out[orig] = c;
                peel.edges.remove(edge_pos);
                peel.alive.remove(&p);
                peel.nodes[pi] = w;
            }
        }
    }
    // all edges peeled: the residual response must vanish
    if peel.lambda.row_sums().iter().any(|x| !x.is_zero())
        || (0..peel.nodes.len()).any(|i| !peel.lambda[(i, i)].is_zero())
    {
        return Err(ReconstructError::Inconsistent {
            step,
            reason: "nonzero residual response after peeling".into(),
        });
    }
    Ok(out)
}

#[derive(Clone)]
enum Site {
    BoundaryEdge { edge_pos: usize, pi: usize, qi: usize },
    Spike { edge_pos: usize, pi: usize, w: usize },
}

/// All candidate sites, in preference order: boundary edges scanning the
/// nodes counterclockwise (lowest original edge id first within a node
/// pair), then spikes in node order. Isolated nodes are skipped when
/// deciding circular adjacency: peeled-out terminals no longer separate
/// their neighbors.
fn find_sites(peel: &Peel) -> Vec<Site> {
    let n = peel.nodes.len();
    let mut out = Vec::new();
    let active: Vec<usize> = (0..n)
        .filter(|&i| peel.degree(peel.nodes[i]) > 0)
        .collect();
    let na = active.len();
    for t in 0..na {
        let i = active[t];
        let j = active[(t + 1) % na];
        let p = peel.nodes[i];
        let q = peel.nodes[j];
        if p == q {
            continue;
        }
        let mut hits: Vec<(usize, usize)> = peel
            .edges
            .iter()
            .enumerate()
            .filter(|(_, &(_, u, v))| (u == p && v == q) || (u == q && v == p))
            .map(|(pos, &(orig, _, _))| (orig, pos))
            .collect();
        hits.sort_unstable();
        for (_, pos) in hits {
            out.push(Site::BoundaryEdge {
                edge_pos: pos,
                pi: i,
                qi: j,
            });
        }
    }
    for i in 0..n {
        let p = peel.nodes[i];
        if peel.degree(p) != 1 {
            continue;
        }
        let (pos, &(_, u, v)) = peel
            .edges
            .iter()
            .enumerate()
            .find(|(_, &(_, u, v))| u == p || v == p)
            .expect("degree 1");
        let w = if u == p { v } else { u };
        if peel.is_node(w) {
            continue; // a node-node pendant is handled as a boundary edge
        }
        out.push(Site::Spike {
            edge_pos: pos,
            pi: i,
            w,
        });
    }
    out
}

/// Conductance of the boundary edge between node positions `pi`, `qi`: the
/// smallest noninterlaced pair separating p from q that is connected now but
/// not after deleting the edge gives det(Λ_A^B − c·M₀) = 0, linear in `c`.
fn solve_boundary_edge(peel: &Peel, edge_pos: usize, pi: usize, qi: usize) -> Option<Rat> {
    let p = peel.nodes[pi];
    let q = peel.nodes[qi];
    let mut without = peel.edges.to_vec();
    without.remove(edge_pos);
    for (a, b) in peel.noninterlaced_pairs() {
        let sep = (a.contains(&pi) && b.contains(&qi)) || (a.contains(&qi) && b.contains(&pi));
        if !sep {
            continue;
        }
        let av: Vec<usize> = a.iter().map(|&i| peel.nodes[i]).collect();
        let bv: Vec<usize> = b.iter().map(|&i| peel.nodes[i]).collect();
        if !peel.connected(&av, &bv, &[]) {
            continue;
        }
        let sub = Peel {
            edges: without.clone(),
            nodes: peel.nodes.clone(),
            alive: peel.alive.clone(),
            lambda: peel.lambda.clone(),
        };
        if sub.connected(&av, &bv, &[]) {
            continue;
        }
        // det(Λ_A^B + c·Δ) with Δ from Λ' = Λ − c(δp−δq)(δp−δq)ᵗ restricted
        let sgn = |i: usize, x: &Rat| -> Rat {
            // entry change of Λ'[A,B] at (row for i?...) handled below
            let _ = i;
            x.clone()
        };
        let _ = sgn;
        let f_at = |c: &Rat| -> Rat {
            let mut m = peel.lambda.submatrix(&a, &b);
            for (ri, &ai) in a.iter().enumerate() {
                for (ci, &bi) in b.iter().enumerate() {
                    let d0 = delta_entry(ai, bi, pi, qi);
                    if d0 != 0 {
                        let shift = c * Rat::from_integer(d0.into());
                        m[(ri, ci)] = m[(ri, ci)].clone() - shift;
                    }
                }
            }
            m.det().expect("square")
        };
        let f0 = f_at(&Rat::zero());
        let f1 = f_at(&Rat::one());
        let slope = &f1 - &f0;
        if slope.is_zero() {
            continue;
        }
        let c = -f0 / slope;
        if c.is_positive() {
            let _ = (p, q);
            return Some(c);
        }
    }
    None
}

/// (δp − δq)(δp − δq)ᵗ entry at node positions (i, j).
fn delta_entry(i: usize, j: usize, pi: usize, qi: usize) -> i64 {
    let s = |x: usize| -> i64 {
        if x == pi {
            1
        } else if x == qi {
            -1
        } else {
            0
        }
    };
    s(i) * s(j)
}

/// Conductance of the boundary spike at node position `pi` with interior
/// neighbor `w`: a noninterlaced pair avoiding p that is connected now but
/// disconnected when `w` is blocked gives det(Λ_A^B + t·Λ_Ap·Λ_pB) = 0 with
/// t = 1/(c − Λ_pp), linear in t.
fn solve_spike(peel: &Peel, pi: usize, w: usize) -> Option<Rat> {
    let n = peel.nodes.len();
    for (a, b) in peel.noninterlaced_pairs() {
        if a.contains(&pi) || b.contains(&pi) {
            continue;
        }
        let av: Vec<usize> = a.iter().map(|&i| peel.nodes[i]).collect();
        let bv: Vec<usize> = b.iter().map(|&i| peel.nodes[i]).collect();
        if !peel.connected(&av, &bv, &[]) {
            continue;
        }
        if peel.connected(&av, &bv, &[w]) {
            continue;
        }
        let f_at = |t: &Rat| -> Rat {
            let mut m = peel.lambda.submatrix(&a, &b);
            for (ri, &ai) in a.iter().enumerate() {
                for (ci, &bi) in b.iter().enumerate() {
                    let corr = t * &(&peel.lambda[(ai, pi)] * &peel.lambda[(pi, bi)]);
                    m[(ri, ci)] = m[(ri, ci)].clone() + corr;
                }
            }
            m.det().expect("square")
        };
        let f0 = f_at(&Rat::zero());
        let f1 = f_at(&Rat::one());
        let slope = &f1 - &f0;
        if slope.is_zero() {
            continue;
        }
        let t = -f0 / slope;
        if t.is_zero() {
            continue;
        }
        let c = peel.lambda[(pi, pi)].clone() + t.recip();
        if c.is_positive() {
            let _ = n;
            return Some(c);
        }
    }
    None
}

struct FlowGraph {
    to: Vec<usize>,
    cap: Vec<i64>,
    next: Vec<i64>,
    head: Vec<i64>,
}

impl FlowGraph {
    fn new(n: usize) -> Self {
        FlowGraph {
            to: vec![],
            cap: vec![],
            next: vec![],
            head: vec![-1; n],
        }
    }

    fn add_edge(&mut self, u: usize, v: usize, cap: i64) {
        for (a, b, c) in [(u, v, cap), (v, u, 0)] {
            self.to.push(b);
            self.cap.push(c);
            self.next.push(self.head[a]);
            self.head[a] = (self.to.len() - 1) as i64;
        }
    }

    fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        let n = self.head.len();
        let mut flow = 0;
        loop {
            // BFS for an augmenting path
            let mut prev_edge = vec![-1i64; n];
            let mut seen = vec![false; n];
            let mut queue = std::collections::VecDeque::from([s]);
            seen[s] = true;
            while let Some(u) = queue.pop_front() {
                let mut e = self.head[u];
                while e >= 0 {
                    let eu = e as usize;
                    let v = self.to[eu];
                    if !seen[v] && self.cap[eu] > 0 {
                        seen[v] = true;
                        prev_edge[v] = e;
                        queue.push_back(v);
                    }
                    e = self.next[eu];
                }
            }
            if !seen[t] {
                return flow;
            }
            // bottleneck along the path (unit capacities: 1)
            let mut v = t;
            while v != s {
                let e = prev_edge[v] as usize;
                self.cap[e] -= 1;
                self.cap[e ^ 1] += 1;
                v = self.to[e ^ 1];
            }
            flow += 1;
        }
    }
}

// ---------------------------------------------------------------------------
// Central minors, determinant identities, log-Jacobian
// ---------------------------------------------------------------------------

/// One central minor: paired row/column node positions (0-based), aligned so
/// the chord pairing is row[k] ↔ col[k].
#[derive(Clone, Debug, PartialEq)]
pub struct CentralMinor {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

/// The `n(n−1)/2` central minors: for each of the `n` parallel chord classes
/// `{a, s−a mod n}` and each size `i`, the `i` most central disjoint chords
/// of the class (ties — the off-center pairs for even `n` — broken toward
/// the chord with the smaller minimum endpoint).
pub fn central_minors(n: usize) -> Vec<CentralMinor> {
    assert!(n >= 2);
    let mut out = Vec::new();
    for s in 0..n {
        // chords {a, b} with a + b ≡ s (mod n), a != b, widest first
        let mut chords: Vec<(usize, usize, usize)> = Vec::new(); // (width, lo, hi)
        for a in 0..n {
            let b = (s + 2 * n - a) % n;
            if a >= b {
                continue;
            }
            let w = (b - a).min(n - (b - a));
            chords.push((w, a, b));
        }
        chords.sort_by(|x, y| (y.0, x.1).cmp(&(x.0, y.1)));
        for i in 1..=chords.len() {
            let picked = &chords[..i];
            // terminate this class when widths force a crossing (only the
            // greedy nested prefixes are central)
            if !disjoint_parallel(picked) {
                break;
            }
            // split endpoints into the two arcs along the class axis
            let mut rows = Vec::new();
            let mut cols = Vec::new();
            for &(_, a, b) in picked {
                let key = |e: usize| (2 * e + 2 * n - s) % (2 * n);
                if key(a) < n {
                    rows.push(a);
                    cols.push(b);
                } else {
                    rows.push(b);
                    cols.push(a);
                }
            }
            // order rows along the arc, columns following their chords
            let mut order: Vec<usize> = (0..rows.len()).collect();
            let keyr = |e: usize| (2 * e + 2 * n - s) % (2 * n);
            order.sort_by_key(|&k| keyr(rows[k]));
            let rows: Vec<usize> = order.iter().map(|&k| rows[k]).collect();
            let cols: Vec<usize> = order.iter().map(|&k| cols[k]).collect();
            let cm = CentralMinor { rows, cols };
            if !out.contains(&cm) {
                out.push(cm);
            }
        }
    }
    out
}

fn disjoint_parallel(chords: &[(usize, usize, usize)]) -> bool {
    for (i, &(_, a1, b1)) in chords.iter().enumerate() {
        for &(_, a2, b2) in &chords[i + 1..] {
            if a1 == a2 || a1 == b2 || b1 == a2 || b1 == b2 {
                return false;
            }
        }
    }
    true
}

/// Evaluate central minors on a response matrix.
pub fn evaluate_minors(l: &RatMatrix, minors: &[CentralMinor]) -> Vec<Rat> {
    minors
        .iter()
        .map(|m| l.submatrix(&m.rows, &m.cols).det().expect("square"))
        .collect()
}

/// Both sides of the jaw identity on the k×(k−1) matrix `L[rows, cols]`:
/// with rows `a`, `b`, `c` and column `d` (indexes into `rows`/`cols`),
///
/// ```text
/// det(rm b) · det(rm {a,c}, rm d) =
///     det(rm a) · det(rm {b,c}, rm d) + det(rm c) · det(rm {a,b}, rm d)
/// ```
pub fn jaw_identity(
    l: &RatMatrix,
    rows: &[usize],
    cols: &[usize],
    a: usize,
    b: usize,
    c: usize,
    d: usize,
) -> (Rat, Rat) {
    assert_eq!(rows.len(), cols.len() + 1);
    let m = l.submatrix(rows, cols);
    let rm_rows = |drop: &[usize]| -> Vec<usize> {
        (0..rows.len()).filter(|i| !drop.contains(i)).collect()
    };
    let rm_cols = |drop: &[usize]| -> Vec<usize> {
        (0..cols.len()).filter(|i| !drop.contains(i)).collect()
    };
    let det = |rs: Vec<usize>, cs: Vec<usize>| -> Rat {
        m.submatrix(&rs, &cs).det().expect("square")
    };
    let all_cols: Vec<usize> = (0..cols.len()).collect();
    let lhs = det(rm_rows(&[b]), all_cols.clone()) * det(rm_rows(&[a, c]), rm_cols(&[d]));
    let rhs = det(rm_rows(&[a]), all_cols.clone()) * det(rm_rows(&[b, c]), rm_cols(&[d]))
        + det(rm_rows(&[c]), all_cols) * det(rm_rows(&[a, b]), rm_cols(&[d]));
    (lhs, rhs)
}

/// Both sides of the Dodgson condensation identity on the square matrix
/// `L[rows, cols]` with rows `a < b` and columns `c < d` (position indexes):
///
/// ```text
/// det(rm a, rm c) · det(rm b, rm d) =
///     det(M) · det(rm {a,b}, rm {c,d}) + det(rm b, rm c) · det(rm a, rm d)
/// ```
pub fn condensation_identity(
    l: &RatMatrix,
    rows: &[usize],
    cols: &[usize],
    a: usize,
    b: usize,
    c: usize,
    d: usize,
) -> (Rat, Rat) {
    assert_eq!(rows.len(), cols.len());
    // normalize to sorted positions; the identity is stated for a < b, c < d
    let (a, b) = (a.min(b), a.max(b));
    let (c, d) = (c.min(d), c.max(d));
    let m = l.submatrix(rows, cols);
    let k = rows.len();
    let rm = |drop: &[usize]| -> Vec<usize> { (0..k).filter(|i| !drop.contains(i)).collect() };
    let det = |rs: Vec<usize>, cs: Vec<usize>| -> Rat {
        m.submatrix(&rs, &cs).det().expect("square")
    };
    let lhs = det(rm(&[a]), rm(&[c])) * det(rm(&[b]), rm(&[d]));
    let rhs = det(rm(&[]), rm(&[])) * det(rm(&[a, b]), rm(&[c, d]))
        + det(rm(&[b]), rm(&[c])) * det(rm(&[a]), rm(&[d]));
    (lhs, rhs)
}

/// Exact log-Jacobian `∂ log M_i / ∂ log c_j` of the minor map at the given
/// conductance point, evaluated through the derivative of the Schur
/// complement: `dL/dc_j = −v_j v_jᵗ` with `v_j` the harmonic-extension drop
/// of edge `j` seen from the boundary.
pub fn log_jacobian(net: &Network, minors: &[CentralMinor]) -> RatMatrix {
    let n = net.nodes.len();
    let interior = net.internal_vertices();
    let delta = assemble(net);
    // extension matrix H: vertices × nodes, H[v][k] = harmonic extension of
    // the k-th node indicator evaluated at v
    let mut h = RatMatrix::zero(net.num_vertices, n);
    for (k, &b) in net.nodes.iter().enumerate() {
        h[(b, k)] = Rat::one();
    }
    if !interior.is_empty() {
        let cmat = delta.submatrix(&interior, &interior);
        let bt = delta.submatrix(&interior, &net.nodes);
        let rhs = bt.neg_mat();
        let x = cmat.solve(&rhs).expect("interior block invertible");
        for (i, &v) in interior.iter().enumerate() {
            for k in 0..n {
                h[(v, k)] = x[(i, k)].clone();
            }
        }
    }
    let l = response_matrix(net).expect("nodes nonempty").m;
    let ne = net.num_edges();
    assert_eq!(
        minors.len(),
        ne,
        "square Jacobian needs as many minors as edges"
    );
    let mut jac = RatMatrix::zero(minors.len(), ne);
    for (mi, cm) in minors.iter().enumerate() {
        let sub = l.submatrix(&cm.rows, &cm.cols);
        let det = sub.det().expect("square");
        assert!(!det.is_zero(), "central minor vanishes at this point");
        let inv = sub.inverse().expect("nonsingular");
        for e in &net.edges {
            // v_j over nodes
            let v: Vec<Rat> = (0..n)
                .map(|k| h[(e.u, k)].clone() - h[(e.v, k)].clone())
                .collect();
            let va: Vec<Rat> = cm.rows.iter().map(|&r| v[r].clone()).collect();
            let vb: Vec<Rat> = cm.cols.iter().map(|&cc| v[cc].clone()).collect();
            // d det / dc_j = det · tr(sub⁻¹ · dSub) with dSub = −va·vbᵗ
            let mut tr = Rat::zero();
            for (bi, vb_i) in vb.iter().enumerate() {
                for (ai, va_i) in va.iter().enumerate() {
                    tr += &inv[(bi, ai)] * &(va_i * vb_i);
                }
            }
            jac[(mi, e.id)] = -&e.c * tr;
        }
    }
    jac
}

/// |det| of the log-Jacobian by central finite differences in float, as an
/// independent numeric cross-check of [`log_jacobian`].
pub fn log_jacobian_fd(net: &Network, minors: &[CentralMinor], step: &Rat) -> f64 {
    let ne = net.num_edges();
    let eval = |net: &Network| -> Vec<Rat> {
        let l = response_matrix(net).unwrap().m;
        evaluate_minors(&l, minors)
    };
    let mut jac = vec![vec![0.0f64; ne]; minors.len()];
    for j in 0..ne {
        let mut up = net.clone();
        let mut dn = net.clone();
        let c = net.edges[j].c.clone();
        up.edges[j].c = &c * &(Rat::one() + step.clone());
        dn.edges[j].c = &c * &(Rat::one() - step.clone());
        let mu = eval(&up);
        let md = eval(&dn);
        let m0 = eval(net);
        for i in 0..minors.len() {
            // d log M / d log c ≈ (log M(+) − log M(−)) / (2·step)
            let num = rat_to_f64(&mu[i]) / rat_to_f64(&md[i]);
            let _ = &m0;
            jac[i][j] = num.ln() / (2.0 * rat_to_f64(step));
        }
    }
    det_f64(jac).abs()
}

fn det_f64(mut a: Vec<Vec<f64>>) -> f64 {
    let n = a.len();
    let mut det = 1.0;
    for k in 0..n {
        let pivot = (k..n).max_by(|&i, &j| {
            a[i][k].abs().partial_cmp(&a[j][k].abs()).unwrap()
        });
        let p = pivot.unwrap();
        if a[p][k] == 0.0 {
            return 0.0;
        }
        if p != k {
            a.swap(p, k);
            det = -det;
        }
        det *= a[k][k];
        for i in k + 1..n {
            let f = a[i][k] / a[k][k];
            for j in k..n {
                a[i][j] -= f * a[k][j];
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::network::families::{gamma, y_network};

    #[test]
    fn y_delta_round_trip() {
        let (c1, c2, c3) = (rat(2, 1), rat(3, 1), rat(5, 1));
        let (net, emb) = y_network(c1.clone(), c2.clone(), c3.clone());
        let (tri, tri_emb) = apply(&net, &emb, &Move::YDelta { vertex: 3 }).unwrap();
        assert_eq!(tri.num_vertices, 3);
        assert_eq!(tri.num_edges(), 3);
        let s = &(&c1 + &c2) + &c3;
        // conductances c_i c_j / S in rotation order at the hub (0,1,2)
        let mut got: Vec<Rat> = tri.edges.iter().map(|e| e.c.clone()).collect();
        got.sort();
        let mut want = vec![&c1 * &c2 / &s, &c2 * &c3 / &s, &c3 * &c1 / &s];
        want.sort();
        assert_eq!(got, want);
        // responses agree
        let l1 = response_matrix(&net).unwrap();
        let l2 = response_matrix(&tri).unwrap();
        assert_eq!(l1.m, l2.m);
        // and back: find the triangular face
        let faces = tri_emb.faces(&tri);
        let tri_face_dart = (0..tri.num_darts())
            .find(|&d| faces.cycles[faces.face_of[d]].len() == 3)
            .unwrap();
        let (back, _) = apply(&tri, &tri_emb, &Move::DeltaY {
            face_dart: tri_face_dart,
        })
        .unwrap();
        let mut cs: Vec<Rat> = back.edges.iter().map(|e| e.c.clone()).collect();
        cs.sort();
        let mut want2 = vec![c1, c2, c3];
        want2.sort();
        assert_eq!(cs, want2);
    }

    #[test]
    fn series_reduces() {
        // 1 —2— x —2— 2 becomes a single edge of conductance 1
        let net = Network::new(3, vec![(0, 2, rat(2, 1)), (2, 1, rat(2, 1))], vec![0, 1]).unwrap();
        let rot = vec![vec![0], vec![3], vec![1, 2]];
        let emb = Embedding::new(&net, Surface::Disk, rot, vec![(0, 0); 2], None, vec![]).unwrap();
        let (net2, _) = apply(&net, &emb, &Move::Series { vertex: 2 }).unwrap();
        assert_eq!(net2.num_edges(), 1);
        assert_eq!(net2.edges[0].c, rat(1, 1));
        let chk = response_invariance_check(&net, &emb, &Move::Series { vertex: 2 }).unwrap();
        assert!(chk.equal);
    }

    #[test]
    fn parallel_merges() {
        let net = Network::new(2, vec![(0, 1, rat(1, 1)), (0, 1, rat(2, 1))], vec![0, 1]).unwrap();
        let rot = vec![vec![0, 2], vec![3, 1]];
        let emb =
            Embedding::new(&net, Surface::Disk, rot, vec![(0, 0); 2], Some(1), vec![]).unwrap();
        let (net2, _) = apply(&net, &emb, &Move::Parallel { keep: 0, merge: 1 }).unwrap();
        assert_eq!(net2.num_edges(), 1);
        assert_eq!(net2.edges[0].c, rat(3, 1));
    }

    #[test]
    fn dead_branch_removal() {
        // Y with an extra pendant internal vertex
        let net = Network::new(
            5,
            vec![
                (0, 3, rat(1, 1)),
                (1, 3, rat(1, 1)),
                (2, 3, rat(1, 1)),
                (3, 4, rat(7, 1)),
            ],
            vec![0, 1, 2],
        )
        .unwrap();
        let rot = vec![vec![0], vec![2], vec![4], vec![1, 6, 3, 5], vec![7]];
        let emb = Embedding::new(&net, Surface::Disk, rot, vec![(0, 0); 4], None, vec![]).unwrap();
        let chk = response_invariance_check(&net, &emb, &Move::DeadBranch { vertex: 4 }).unwrap();
        assert!(chk.equal);
        let (net2, _) = apply(&net, &emb, &Move::DeadBranch { vertex: 4 }).unwrap();
        assert_eq!(net2.num_vertices, 4);
        // protected nodes stay protected
        assert!(matches!(
            apply(&net, &emb, &Move::DeadBranch { vertex: 0 }),
            Err(TransformError::PatternMismatch(_)) | Err(TransformError::NodeProtected(_))
        ));
    }

    #[test]
    fn reconstruct_y_network() {
        let (net, emb) = y_network(rat(2, 1), rat(3, 1), rat(5, 1));
        let l = response_matrix(&net).unwrap();
        let cs = reconstruct(&net, &emb, &l.m).unwrap();
        assert_eq!(cs, vec![rat(2, 1), rat(3, 1), rat(5, 1)]);
    }

    #[test]
    fn reconstruct_single_edge() {
        let net = Network::new(2, vec![(0, 1, rat(7, 3))], vec![0, 1]).unwrap();
        let rot = vec![vec![0], vec![1]];
        let emb = Embedding::new(&net, Surface::Disk, rot, vec![(0, 0)], None, vec![]).unwrap();
        let l = response_matrix(&net).unwrap();
        let cs = reconstruct(&net, &emb, &l.m).unwrap();
        assert_eq!(cs, vec![rat(7, 3)]);
    }

    #[test]
    fn reconstruct_gamma4() {
        let conds: Vec<Rat> = (0..6).map(|i| rat(2 * i as i64 + 1, 2)).collect();
        let (net, emb) = gamma(4, &conds).unwrap();
        let l = response_matrix(&net).unwrap();
        let cs = reconstruct(&net, &emb, &l.m).unwrap();
        for e in &net.edges {
            assert_eq!(cs[e.id], e.c, "edge {}", e.id);
        }
    }

    #[test]
    fn central_minor_counts() {
        for n in 2..=7 {
            let ms = central_minors(n);
            assert_eq!(ms.len(), n * (n - 1) / 2, "n = {n}");
        }
        // n = 3: the three 1-chord minors
        let ms = central_minors(3);
        for m in &ms {
            assert_eq!(m.rows.len(), 1);
        }
    }

    #[test]
    fn jaw_and_condensation_on_random_matrices() {
        let mut rng = crate::rng::SplitMix::new(99);
        for _ in 0..50 {
            let l = RatMatrix::from_fn(9, 9, |_, _| {
                rat(rng.next_u64() as i64 % 19 - 9, 1 + (rng.next_u64() % 5) as i64)
            });
            // 9-point jaw instance: rows {8,7,6,5,4}, cols {0,1,2,3}
            let rows = vec![8, 7, 6, 5, 4];
            let cols = vec![0, 1, 2, 3];
            let (lhs, rhs) = jaw_identity(&l, &rows, &cols, 0, 1, 4, 3);
            assert_eq!(lhs, rhs);
            // condensation on a 3x3 minor
            let (lhs, rhs) =
                condensation_identity(&l, &[7, 6, 5], &[0, 1, 2], 0, 2, 2, 0);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn jacobian_of_y_is_one() {
        let (net, _) = y_network(rat(2, 1), rat(3, 1), rat(7, 1));
        // minors ordered L12, L23, L13: this order makes the determinant
        // exactly +1 (swapping two minors flips the sign, nothing else)
        let minors = vec![
            CentralMinor { rows: vec![0], cols: vec![1] },
            CentralMinor { rows: vec![1], cols: vec![2] },
            CentralMinor { rows: vec![0], cols: vec![2] },
        ];
        let j = log_jacobian(&net, &minors);
        assert_eq!(j.det().unwrap(), rat(1, 1));
        // a conductance change keeps it at +1
        let (net2, _) = y_network(rat(1, 1), rat(1, 1), rat(1, 1));
        let j2 = log_jacobian(&net2, &minors);
        assert_eq!(j2.det().unwrap(), rat(1, 1));
    }
}
