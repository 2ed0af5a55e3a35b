//! Reproducible random test corpora: general multigraphs, circular planar
//! disk networks carved out of the well-connected templates, annular strings
//! of loops, and torus grids. Everything is a deterministic function of the
//! seeded generator.

use crate::exact::{rat, Rat};
use crate::medial::is_minimal;
use crate::network::families;
use crate::network::{Embedding, Network};
use crate::rng::SplitMix;

/// Random positive rational with small numerator and denominator.
pub fn random_conductance(rng: &mut SplitMix) -> Rat {
    rat(1 + rng.below(9) as i64, 1 + rng.below(4) as i64)
}

/// Connected multigraph with boundary nodes, for enumeration oracles.
/// Vertices ≤ `max_v`, edges ≤ `max_e` (at least a spanning tree).
pub fn random_network(rng: &mut SplitMix, max_v: usize, max_e: usize) -> Network {
    let nv = 2 + rng.below(max_v as u64 - 1) as usize;
    let mut edges: Vec<(usize, usize, Rat)> = Vec::new();
    // random spanning tree first
    for v in 1..nv {
        let u = rng.below(v as u64) as usize;
        edges.push((u, v, random_conductance(rng)));
    }
    let extra = rng.below((max_e - (nv - 1)) as u64 + 1) as usize;
    for _ in 0..extra {
        let u = rng.below(nv as u64) as usize;
        let v = rng.below(nv as u64) as usize;
        if u == v {
            continue; // plain graphs here; loops are exercised elsewhere
        }
        edges.push((u, v, random_conductance(rng)));
    }
    let n_nodes = 1 + rng.below((nv.min(5)) as u64) as usize;
    let nodes: Vec<usize> = (0..n_nodes).collect();
    Network::new(nv, edges, nodes).expect("construction is valid")
}

/// Circular planar disk network: one of the well-connected templates with a
/// random subset of edges deleted (keeping it connected with every node
/// present on the outer face) and fresh random conductances.
pub fn random_disk_network(rng: &mut SplitMix, n_nodes: usize) -> (Network, Embedding) {
    loop {
        let k = n_nodes.clamp(3, 5);
        let (net, emb) = families::gamma(k, &[]).expect("template");
        let ne = net.num_edges();
        let drop_mask = rng.below(1 << ne);
        if let Some((net2, emb2)) = delete_edges(&net, &emb, drop_mask) {
            let mut net2 = net2;
            for e in net2.edges.iter_mut() {
                e.c = random_conductance(rng);
            }
            return (net2, emb2);
        }
    }
}

/// Random minimal disk network (template carving filtered by minimality).
pub fn random_minimal_disk_network(rng: &mut SplitMix, n_nodes: usize) -> (Network, Embedding) {
    loop {
        let (net, emb) = random_disk_network(rng, n_nodes);
        if is_minimal(&net, &emb).map(|v| v.is_minimal()).unwrap_or(false) {
            return (net, emb);
        }
    }
}

/// Delete the masked edges, keeping the disk embedding valid. Returns None
/// when the leftover graph is disconnected, loses a node from the boundary,
/// or has no edges.
pub fn delete_edges(net: &Network, emb: &Embedding, mask: u64) -> Option<(Network, Embedding)> {
    let keep: Vec<usize> = (0..net.num_edges())
        .filter(|e| mask >> e & 1 == 0)
        .collect();
    if keep.is_empty() || keep.len() == net.num_edges() && mask != 0 {
        return None;
    }
    let mut new_id = vec![usize::MAX; net.num_edges()];
    for (i, &e) in keep.iter().enumerate() {
        new_id[e] = i;
    }
    let edges: Vec<(usize, usize, Rat)> = keep
        .iter()
        .map(|&e| {
            let ed = &net.edges[e];
            (ed.u, ed.v, ed.c.clone())
        })
        .collect();
    let net2 = Network::new(net.num_vertices, edges, net.nodes.clone()).ok()?;
    // drop isolated internal vertices? keep the vertex set: isolated internal
    // vertices would break connectivity and were rejected above.
    let rotation: Vec<Vec<usize>> = emb
        .rotation
        .iter()
        .map(|darts| {
            darts
                .iter()
                .filter(|&&d| new_id[d / 2] != usize::MAX)
                .map(|&d| 2 * new_id[d / 2] + (d & 1))
                .collect()
        })
        .collect();
    let weights: Vec<(i64, i64)> = keep.iter().map(|&e| emb.weights[2 * e]).collect();
    Embedding::new(&net2, emb.surface, rotation, weights, None, vec![])
        .ok()
        .map(|emb2| (net2, emb2))
}

/// Random annular string of loops with `n` loops.
pub fn random_string_of_loops(rng: &mut SplitMix, n: usize) -> (Network, Embedding) {
    let a: Vec<Rat> = (1..n).map(|_| random_conductance(rng)).collect();
    let b: Vec<Rat> = (0..n).map(|_| random_conductance(rng)).collect();
    families::string_of_loops(&a, &b).expect("valid string")
}

/// Random torus grid with random conductances.
pub fn random_torus_grid(rng: &mut SplitMix, m: usize, n: usize) -> (Network, Embedding) {
    let (mut net, emb) = families::torus_grid(m, n).expect("valid grid");
    for e in net.edges.iter_mut() {
        e.c = random_conductance(rng);
    }
    (net, emb)
}

/// Random self-dual 2n×2n block matrix: blocks (i, j) free for i < j with
/// the adjugate mirrored, diagonal blocks of the form a·I.
pub fn random_self_dual(rng: &mut SplitMix, blocks: usize) -> crate::exact::matrix::RatMatrix {
    use crate::exact::matrix::RatMatrix;
    let n = blocks;
    let mut m = RatMatrix::zero(2 * n, 2 * n);
    let r = |rng: &mut SplitMix| rat(rng.next_u64() as i64 % 9 - 4, 1 + rng.below(3) as i64);
    for i in 0..n {
        let a = r(rng);
        m[(2 * i, 2 * i)] = a.clone();
        m[(2 * i + 1, 2 * i + 1)] = a;
        for j in i + 1..n {
            let (b1, b2, b3, b4) = (r(rng), r(rng), r(rng), r(rng));
            m[(2 * i, 2 * j)] = b1.clone();
            m[(2 * i, 2 * j + 1)] = b2.clone();
            m[(2 * i + 1, 2 * j)] = b3.clone();
            m[(2 * i + 1, 2 * j + 1)] = b4.clone();
            // block (j, i) = adjugate of block (i, j)
            m[(2 * j, 2 * i)] = b4;
            m[(2 * j, 2 * i + 1)] = -b2;
            m[(2 * j + 1, 2 * i)] = -b3;
            m[(2 * j + 1, 2 * i + 1)] = b1;
        }
    }
    m
}

/// Random symmetric matrix, for the determinant identities.
pub fn random_symmetric(rng: &mut SplitMix, n: usize) -> crate::exact::matrix::RatMatrix {
    use crate::exact::matrix::RatMatrix;
    let mut m = RatMatrix::zero(n, n);
    for i in 0..n {
        for j in 0..=i {
            let v = rat(rng.next_u64() as i64 % 17 - 8, 1 + rng.below(4) as i64);
            m[(i, j)] = v.clone();
            m[(j, i)] = v;
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_given_seed() {
        let mut a = SplitMix::new(5);
        let mut b = SplitMix::new(5);
        let n1 = random_network(&mut a, 6, 10);
        let n2 = random_network(&mut b, 6, 10);
        assert_eq!(n1, n2);
    }

    #[test]
    fn disk_networks_are_valid() {
        let mut rng = SplitMix::new(9);
        for _ in 0..10 {
            let (net, emb) = random_disk_network(&mut rng, 4);
            net.validate().unwrap();
            assert_eq!(emb.surface, crate::network::Surface::Disk);
        }
    }

    #[test]
    fn minimal_disk_networks_are_minimal() {
        let mut rng = SplitMix::new(11);
        for _ in 0..5 {
            let (net, emb) = random_minimal_disk_network(&mut rng, 4);
            assert!(is_minimal(&net, &emb).unwrap().is_minimal());
        }
    }
}
