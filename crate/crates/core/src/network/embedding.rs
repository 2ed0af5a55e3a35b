//! Rotation-system embeddings and their face structure.
//!
//! A rotation system lists the darts leaving each vertex in counterclockwise
//! order; tracing `next(d) = rotate_before(head(d), reverse(d))` walks each
//! face with the face on the left of every dart. The surface tag pins down
//! the expected Euler characteristic and which faces are boundary holes.
//!
//! Flat line-bundle connections are stored cohomologically: every dart
//! carries a pair of integer weights, antisymmetric under reversal, whose sum
//! around every non-hole face vanishes. The monodromy of a cycle is then the
//! dot of its dart weights — one integer per annulus generator, a pair on the
//! torus, and the two zipper coordinates on the pants.

use super::{dart_rev, Network};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Surface {
    Disk,
    Annulus,
    Torus,
    Pants,
}

impl Surface {
    pub fn as_str(&self) -> &'static str {
        match self {
            Surface::Disk => "disk",
            Surface::Annulus => "annulus",
            Surface::Torus => "torus",
            Surface::Pants => "pants",
        }
    }

    pub fn from_str(s: &str) -> Option<Surface> {
        match s {
            "disk" => Some(Surface::Disk),
            "annulus" => Some(Surface::Annulus),
            "torus" => Some(Surface::Torus),
            "pants" => Some(Surface::Pants),
            _ => None,
        }
    }

    /// Number of boundary holes carried by the surface tag.
    pub fn num_holes(&self) -> usize {
        match self {
            Surface::Disk => 0, // the outer face is tracked separately
            Surface::Annulus => 2,
            Surface::Torus => 0,
            Surface::Pants => 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Embedding {
    pub surface: Surface,
    /// Per vertex, outgoing darts in counterclockwise order.
    pub rotation: Vec<Vec<usize>>,
    /// Per dart, homology weights; `weights[rev(d)] = -weights[d]`.
    pub weights: Vec<(i64, i64)>,
    /// Face id of the disk's outer face.
    pub outer_face: Option<usize>,
    /// Face ids of the annulus / pants holes.
    pub holes: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct Faces {
    /// Dart cycles, one per face.
    pub cycles: Vec<Vec<usize>>,
    /// Face id of each dart.
    pub face_of: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum EmbeddingError {
    BadRotation(String),
    EulerMismatch { expected: i64, got: i64 },
    NonCocycle(String),
    BadHoles(String),
    NodeOrder(String),
}

impl std::fmt::Display for EmbeddingError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EmbeddingError::BadRotation(s) => write!(f, "invalid rotation system: {s}"),
            EmbeddingError::EulerMismatch { expected, got } => {
                write!(f, "Euler characteristic {got}, expected {expected}")
            }
            EmbeddingError::NonCocycle(s) => write!(f, "homology weights are not a cocycle: {s}"),
            EmbeddingError::BadHoles(s) => write!(f, "hole faces: {s}"),
            EmbeddingError::NodeOrder(s) => write!(f, "boundary node order: {s}"),
        }
    }
}

impl std::error::Error for EmbeddingError {}

impl Embedding {
    /// Build and validate. `outer` and `holes` identify faces by one of their
    /// darts; when omitted they are inferred where possible (disk: the face
    /// containing every node; annulus/pants: the faces with nonzero weight sum).
    pub fn new(
        net: &Network,
        surface: Surface,
        rotation: Vec<Vec<usize>>,
        weights_by_edge: Vec<(i64, i64)>,
        outer_dart: Option<usize>,
        hole_darts: Vec<usize>,
    ) -> Result<Self, EmbeddingError> {
        let nd = net.num_darts();
        let mut weights = vec![(0, 0); nd];
        for (e, &(a, b)) in weights_by_edge.iter().enumerate() {
            weights[2 * e] = (a, b);
            weights[2 * e + 1] = (-a, -b);
        }
        let mut emb = Embedding {
            surface,
            rotation,
            weights,
            outer_face: None,
            holes: Vec::new(),
        };
        emb.check_rotation(net)?;
        let faces = emb.faces(net);
        // Genus from Euler characteristic of the closed-up map.
        let chi = net.num_vertices as i64 - net.num_edges() as i64 + faces.cycles.len() as i64;
        let expected = match surface {
            Surface::Torus => 0,
            _ => 2, // disk, annulus and pants are genus-0 maps with marked faces
        };
        if chi != expected {
            return Err(EmbeddingError::EulerMismatch { expected, got: chi });
        }
        match surface {
            Surface::Disk => {
                let f = match outer_dart {
                    Some(d) => faces.face_of[d],
                    None => infer_outer_face(net, &faces)?,
                };
                emb.outer_face = Some(f);
                check_node_order(net, &faces, f)?;
                if emb.weights.iter().any(|&w| w != (0, 0)) {
                    return Err(EmbeddingError::NonCocycle(
                        "disk networks carry no homology weights".into(),
                    ));
                }
            }
            Surface::Annulus | Surface::Pants => {
                let nholes = surface.num_holes();
                let holes: Vec<usize> = if !hole_darts.is_empty() {
                    let mut hs: Vec<usize> =
                        hole_darts.iter().map(|&d| faces.face_of[d]).collect();
                    hs.sort_unstable();
                    hs.dedup();
                    hs
                } else {
                    (0..faces.cycles.len())
                        .filter(|&f| face_weight_sum(&emb, &faces, f) != (0, 0))
                        .collect()
                };
                if holes.len() != nholes {
                    return Err(EmbeddingError::BadHoles(format!(
                        "expected {nholes} holes, identified {}",
                        holes.len()
                    )));
                }
                emb.holes = holes;
                emb.check_cocycle(net, &faces)?;
                if surface == Surface::Annulus {
                    if emb.weights.iter().any(|&(_, b)| b != 0) {
                        return Err(EmbeddingError::NonCocycle(
                            "annulus weights use the first coordinate only".into(),
                        ));
                    }
                } else {
                    // Pants zippers must be disjoint so SL2 transports stay flat.
                    if emb.weights.iter().any(|&(a, b)| a != 0 && b != 0) {
                        return Err(EmbeddingError::NonCocycle(
                            "pants zipper weights must have disjoint supports".into(),
                        ));
                    }
                }
            }
            Surface::Torus => {
                emb.check_cocycle(net, &faces)?;
            }
        }
        Ok(emb)
    }

    fn check_rotation(&self, net: &Network) -> Result<(), EmbeddingError> {
        if self.rotation.len() != net.num_vertices {
            return Err(EmbeddingError::BadRotation(
                "rotation must list every vertex".into(),
            ));
        }
        let mut seen = vec![false; net.num_darts()];
        for (v, darts) in self.rotation.iter().enumerate() {
            for &d in darts {
                if d >= net.num_darts() {
                    return Err(EmbeddingError::BadRotation(format!("dart {d} out of range")));
                }
                if super::dart_tail(net, d) != v {
                    return Err(EmbeddingError::BadRotation(format!(
                        "dart {} listed at vertex {v} but leaves {}",
                        super::dart_name(d),
                        super::dart_tail(net, d)
                    )));
                }
                if seen[d] {
                    return Err(EmbeddingError::BadRotation(format!(
                        "dart {} listed twice",
                        super::dart_name(d)
                    )));
                }
                seen[d] = true;
            }
        }
        if let Some(d) = seen.iter().position(|&s| !s) {
            return Err(EmbeddingError::BadRotation(format!(
                "dart {} missing from rotation",
                super::dart_name(d)
            )));
        }
        Ok(())
    }

    /// Trace all faces, each kept on the left of its darts:
    /// `next(d) = rotate_before(reverse(d))` for counterclockwise rotations.
    /// Each dart lies in exactly one face cycle.
    pub fn faces(&self, net: &Network) -> Faces {
        let nd = net.num_darts();
        let next_at: Vec<usize> = {
            // previous dart within its vertex rotation
            let mut nxt = vec![usize::MAX; nd];
            for darts in &self.rotation {
                for (i, &d) in darts.iter().enumerate() {
                    nxt[d] = darts[(i + darts.len() - 1) % darts.len()];
                }
            }
            nxt
        };
        let mut face_of = vec![usize::MAX; nd];
        let mut cycles = Vec::new();
        for start in 0..nd {
            if face_of[start] != usize::MAX {
                continue;
            }
            let mut cycle = Vec::new();
            let mut d = start;
            loop {
                face_of[d] = cycles.len();
                cycle.push(d);
                d = next_at[dart_rev(d)];
                if d == start {
                    break;
                }
            }
            cycles.push(cycle);
        }
        Faces { cycles, face_of }
    }

    fn check_cocycle(&self, _net: &Network, faces: &Faces) -> Result<(), EmbeddingError> {
        for f in 0..faces.cycles.len() {
            if self.holes.contains(&f) {
                continue;
            }
            let s = face_weight_sum(self, faces, f);
            if s != (0, 0) {
                return Err(EmbeddingError::NonCocycle(format!(
                    "face {f} has weight sum {s:?}"
                )));
            }
        }
        Ok(())
    }

    /// Monodromy exponents of a dart walk.
    pub fn walk_weight(&self, darts: &[usize]) -> (i64, i64) {
        darts.iter().fold((0, 0), |(a, b), &d| {
            let (wa, wb) = self.weights[d];
            (a + wa, b + wb)
        })
    }

    /// The vertex sequence along a face cycle (tails of its darts).
    pub fn face_vertices(&self, net: &Network, faces: &Faces, f: usize) -> Vec<usize> {
        faces.cycles[f]
            .iter()
            .map(|&d| super::dart_tail(net, d))
            .collect()
    }
}

pub fn face_weight_sum(emb: &Embedding, faces: &Faces, f: usize) -> (i64, i64) {
    emb.walk_weight(&faces.cycles[f])
}

fn infer_outer_face(net: &Network, faces: &Faces) -> Result<usize, EmbeddingError> {
    if net.nodes.is_empty() {
        return Err(EmbeddingError::BadHoles(
            "disk without nodes needs an explicit outer face".into(),
        ));
    }
    let candidates: Vec<usize> = (0..faces.cycles.len())
        .filter(|&f| {
            let verts: Vec<usize> = faces.cycles[f]
                .iter()
                .map(|&d| super::dart_tail(net, d))
                .collect();
            net.nodes.iter().all(|n| verts.contains(n))
        })
        .filter(|&f| check_node_order(net, faces, f).is_ok())
        .collect();
    match candidates.as_slice() {
        [f] => Ok(*f),
        [] => Err(EmbeddingError::NodeOrder(
            "no face holds the nodes in boundary order".into(),
        )),
        _ => Err(EmbeddingError::BadHoles(
            "outer face ambiguous; specify it explicitly".into(),
        )),
    }
}

/// Nodes must sit on the outer face in counterclockwise circular order, which
/// means the outer face cycle (traced with the face on the left, hence
/// clockwise around the disk) visits them in reverse order.
fn check_node_order(net: &Network, faces: &Faces, outer: usize) -> Result<(), EmbeddingError> {
    if net.nodes.is_empty() {
        return Ok(());
    }
    let verts: Vec<usize> = faces.cycles[outer]
        .iter()
        .map(|&d| super::dart_tail(net, d))
        .collect();
    let mut appearance: Vec<usize> = Vec::new();
    for &v in &verts {
        if net.is_node(v) {
            appearance.push(v);
        }
    }
    // Collapse consecutive repeats (a node may anchor several outer darts).
    appearance.dedup();
    if appearance.len() > 1 && appearance.first() == appearance.last() {
        appearance.pop();
    }
    if appearance.len() != net.nodes.len() {
        return Err(EmbeddingError::NodeOrder(format!(
            "nodes appear {} times around the outer face, expected once each",
            appearance.len()
        )));
    }
    let mut expect = net.nodes.clone();
    expect.reverse();
    let start = match appearance.iter().position(|&v| v == expect[0]) {
        Some(p) => p,
        None => {
            return Err(EmbeddingError::NodeOrder("node missing from outer face".into()));
        }
    };
    for (i, &want) in expect.iter().enumerate() {
        if appearance[(start + i) % appearance.len()] != want {
            return Err(EmbeddingError::NodeOrder(
                "nodes are not in counterclockwise order".into(),
            ));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::network::Network;

    fn triangle() -> (Network, Embedding) {
        let net = Network::new(
            3,
            vec![
                (0, 1, rat(1, 1)),
                (1, 2, rat(1, 1)),
                (2, 0, rat(1, 1)),
            ],
            vec![0, 1, 2],
        )
        .unwrap();
        // ccw rotations for the standard drawing
        let rotation = vec![vec![0, 5], vec![2, 1], vec![4, 3]];
        let emb = Embedding::new(&net, Surface::Disk, rotation, vec![(0, 0); 3], None, vec![])
            .unwrap();
        (net, emb)
    }

    #[test]
    fn triangle_has_two_faces() {
        let (net, emb) = triangle();
        let faces = emb.faces(&net);
        assert_eq!(faces.cycles.len(), 2);
        // every dart in exactly one face
        let mut seen = vec![0; net.num_darts()];
        for c in &faces.cycles {
            for &d in c {
                seen[d] += 1;
            }
        }
        assert!(seen.iter().all(|&s| s == 1));
        assert!(emb.outer_face.is_some());
    }

    #[test]
    fn torus_self_loop_single_face() {
        // One vertex, one noncontractible loop carrying homology (1,0) is a
        // valid torus map only with a second loop; a lone loop has 2 faces and
        // Euler characteristic 2, which the torus tag rejects.
        let net = Network::new(1, vec![(0, 0, rat(1, 1))], vec![]).unwrap();
        let rot = vec![vec![0, 1]];
        assert!(Embedding::new(&net, Surface::Torus, rot.clone(), vec![(1, 0)], None, vec![]).is_err());
        // On the annulus the same picture is fine: two hole faces.
        let emb = Embedding::new(&net, Surface::Annulus, rot, vec![(1, 0)], None, vec![]).unwrap();
        assert_eq!(emb.holes.len(), 2);
    }

    #[test]
    fn torus_two_loops() {
        // Standard one-vertex torus map: two loops, rotation (E, N, W, S).
        let net = Network::new(1, vec![(0, 0, rat(1, 1)), (0, 0, rat(1, 1))], vec![]).unwrap();
        let rot = vec![vec![0, 2, 1, 3]];
        let emb =
            Embedding::new(&net, Surface::Torus, rot, vec![(1, 0), (0, 1)], None, vec![]).unwrap();
        let faces = emb.faces(&net);
        assert_eq!(faces.cycles.len(), 1);
    }

    #[test]
    fn node_order_enforced() {
        let net = Network::new(
            3,
            vec![
                (0, 1, rat(1, 1)),
                (1, 2, rat(1, 1)),
                (2, 0, rat(1, 1)),
            ],
            vec![0, 2, 1], // wrong circular order for this outer face
        )
        .unwrap();
        let rotation = vec![vec![0, 5], vec![2, 1], vec![4, 3]];
        // Dart e0- (1 -> 0) lies on the true outer face of this drawing.
        assert!(matches!(
            Embedding::new(&net, Surface::Disk, rotation, vec![(0, 0); 3], Some(1), vec![]),
            Err(EmbeddingError::NodeOrder(_))
        ));
    }
}
