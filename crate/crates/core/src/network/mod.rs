//! The network data model: weighted multigraphs with ordered boundary nodes,
//! rotation-system embeddings, flat connections, and edge-subset
//! classification.
//!
//! Darts (directed edge-ends) are numbered `2e` (from `u` to `v`, printed
//! `e<k>+`) and `2e+1` (from `v` to `u`, printed `e<k>-`). Rotations list the
//! darts leaving each vertex in counterclockwise order.

pub mod connection;
pub mod embedding;
pub mod families;
pub mod json;
pub mod subset;

pub use connection::{Connection, Mat2};
pub use embedding::{Embedding, Faces, Surface};
pub use subset::{classify_subset, ComponentInfo, ComponentKind};

use crate::exact::Rat;
use num_traits::Signed;

#[derive(Clone, Debug, PartialEq)]
pub struct Edge {
    pub id: usize,
    pub u: usize,
    pub v: usize,
    pub c: Rat,
}

/// A connected weighted multigraph (self-loops allowed) with an ordered,
/// possibly empty list of boundary nodes. Conductances are strictly positive.
#[derive(Clone, Debug, PartialEq)]
pub struct Network {
    pub num_vertices: usize,
    pub edges: Vec<Edge>,
    pub nodes: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum NetworkError {
    Disconnected,
    NonPositiveConductance(usize),
    DuplicateNode(usize),
    VertexOutOfRange(usize),
    EdgeIdMismatch(usize),
}

impl std::fmt::Display for NetworkError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NetworkError::Disconnected => write!(f, "network is not connected"),
            NetworkError::NonPositiveConductance(e) => {
                write!(f, "edge {e} has non-positive conductance")
            }
            NetworkError::DuplicateNode(v) => write!(f, "node {v} listed twice"),
            NetworkError::VertexOutOfRange(v) => write!(f, "vertex {v} out of range"),
            NetworkError::EdgeIdMismatch(e) => write!(f, "edge id {e} does not match its index"),
        }
    }
}

impl std::error::Error for NetworkError {}

impl Network {
    pub fn new(
        num_vertices: usize,
        edges: Vec<(usize, usize, Rat)>,
        nodes: Vec<usize>,
    ) -> Result<Self, NetworkError> {
        let edges = edges
            .into_iter()
            .enumerate()
            .map(|(id, (u, v, c))| Edge { id, u, v, c })
            .collect();
        let net = Network {
            num_vertices,
            edges,
            nodes,
        };
        net.validate()?;
        Ok(net)
    }

    pub fn validate(&self) -> Result<(), NetworkError> {
        for (i, e) in self.edges.iter().enumerate() {
            if e.id != i {
                return Err(NetworkError::EdgeIdMismatch(e.id));
            }
            if e.u >= self.num_vertices || e.v >= self.num_vertices {
                return Err(NetworkError::VertexOutOfRange(e.u.max(e.v)));
            }
            if !e.c.is_positive() {
                return Err(NetworkError::NonPositiveConductance(e.id));
            }
        }
        for (i, &n) in self.nodes.iter().enumerate() {
            if n >= self.num_vertices {
                return Err(NetworkError::VertexOutOfRange(n));
            }
            if self.nodes[..i].contains(&n) {
                return Err(NetworkError::DuplicateNode(n));
            }
        }
        if !self.is_connected() {
            return Err(NetworkError::Disconnected);
        }
        Ok(())
    }

    pub fn is_connected(&self) -> bool {
        if self.num_vertices == 0 {
            return false;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; self.num_vertices];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &(w, _) in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.num_vertices
    }

    /// Adjacency list: for each vertex the (neighbor, edge id) pairs.
    /// Self-loops appear twice at their vertex.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.num_vertices];
        for e in &self.edges {
            adj[e.u].push((e.v, e.id));
            adj[e.v].push((e.u, e.id));
        }
        adj
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_darts(&self) -> usize {
        2 * self.edges.len()
    }

    /// Internal (non-node) vertices, ascending.
    pub fn internal_vertices(&self) -> Vec<usize> {
        (0..self.num_vertices)
            .filter(|v| !self.nodes.contains(v))
            .collect()
    }

    pub fn is_node(&self, v: usize) -> bool {
        self.nodes.contains(&v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|e| (e.u == v) as usize + (e.v == v) as usize)
            .sum()
    }
}

// Dart helpers.

pub fn dart_of(edge: usize, reversed: bool) -> usize {
    2 * edge + reversed as usize
}

pub fn dart_edge(d: usize) -> usize {
    d / 2
}

pub fn dart_rev(d: usize) -> usize {
    d ^ 1
}

pub fn dart_is_rev(d: usize) -> bool {
    d & 1 == 1
}

pub fn dart_tail(net: &Network, d: usize) -> usize {
    let e = &net.edges[dart_edge(d)];
    if dart_is_rev(d) {
        e.v
    } else {
        e.u
    }
}

pub fn dart_head(net: &Network, d: usize) -> usize {
    dart_tail(net, dart_rev(d))
}

pub fn dart_name(d: usize) -> String {
    format!("e{}{}", dart_edge(d), if dart_is_rev(d) { "-" } else { "+" })
}

pub fn dart_from_name(s: &str) -> Option<usize> {
    let s = s.strip_prefix('e')?;
    let (num, sign) = s.split_at(s.len().checked_sub(1)?);
    let e: usize = num.parse().ok()?;
    match sign {
        "+" => Some(dart_of(e, false)),
        "-" => Some(dart_of(e, true)),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn rejects_bad_networks() {
        assert!(matches!(
            Network::new(2, vec![], vec![0]),
            Err(NetworkError::Disconnected)
        ));
        assert!(matches!(
            Network::new(2, vec![(0, 1, rat(-1, 1))], vec![]),
            Err(NetworkError::NonPositiveConductance(0))
        ));
        assert!(matches!(
            Network::new(2, vec![(0, 1, rat(1, 1))], vec![0, 0]),
            Err(NetworkError::DuplicateNode(0))
        ));
    }

    #[test]
    fn dart_names_round_trip() {
        for d in 0..10 {
            assert_eq!(dart_from_name(&dart_name(d)), Some(d));
        }
        assert_eq!(dart_from_name("x1+"), None);
        assert_eq!(dart_from_name("e1"), None);
    }

    #[test]
    fn self_loop_degree() {
        let net = Network::new(
            1,
            vec![(0, 0, rat(1, 1))],
            vec![],
        )
        .unwrap();
        assert_eq!(net.degree(0), 2);
    }
}
