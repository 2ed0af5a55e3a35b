//! Classification of edge subsets: per component, a tree tagged with its node
//! set, or a cycle-rooted component (as many edges as vertices) tagged with
//! its unique cycle and the cycle's homology class.

use super::{dart_of, Embedding, Network};

#[derive(Clone, Debug, PartialEq)]
pub enum ComponentKind {
    /// A tree; carries the boundary nodes it contains (possibly none).
    Tree { nodes: Vec<usize> },
    /// Exactly one independent cycle.
    CycleRooted {
        cycle_edges: Vec<usize>,
        /// Darts of one traversal of the cycle.
        cycle_darts: Vec<usize>,
        /// Weight sum of the traversal (zero without an embedding).
        homology: (i64, i64),
        nodes: Vec<usize>,
    },
    /// More than one independent cycle.
    Other,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComponentInfo {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
    pub kind: ComponentKind,
}

/// Classify the spanning subgraph picked out by `mask` (bit `e` = edge `e`).
/// Isolated vertices form singleton tree components.
pub fn classify_subset(net: &Network, emb: Option<&Embedding>, mask: u64) -> Vec<ComponentInfo> {
    let n = net.num_vertices;
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for e in &net.edges {
        if mask >> e.id & 1 == 1 {
            let (a, b) = (find(&mut parent, e.u), find(&mut parent, e.v));
            if a != b {
                parent[a] = b;
            }
        }
    }
    let mut comp_vertices: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for v in 0..n {
        let r = find(&mut parent, v);
        comp_vertices.entry(r).or_default().push(v);
    }
    let mut comp_edges: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for e in &net.edges {
        if mask >> e.id & 1 == 1 {
            let r = find(&mut parent, e.u);
            comp_edges.entry(r).or_default().push(e.id);
        }
    }
    comp_vertices
        .into_iter()
        .map(|(root, vertices)| {
            let edges = comp_edges.remove(&root).unwrap_or_default();
            let nodes: Vec<usize> = vertices
                .iter()
                .copied()
                .filter(|v| net.is_node(*v))
                .collect();
            let kind = if edges.len() + 1 == vertices.len() {
                ComponentKind::Tree { nodes }
            } else if edges.len() == vertices.len() {
                let (cycle_edges, cycle_darts) = unique_cycle(net, &vertices, &edges);
                let homology = emb.map_or((0, 0), |em| em.walk_weight(&cycle_darts));
                ComponentKind::CycleRooted {
                    cycle_edges,
                    cycle_darts,
                    homology,
                    nodes,
                }
            } else {
                ComponentKind::Other
            };
            ComponentInfo {
                vertices,
                edges,
                kind,
            }
        })
        .collect()
}

/// The unique cycle of a component with |E| = |V|: prune leaves, then walk.
fn unique_cycle(net: &Network, vertices: &[usize], edges: &[usize]) -> (Vec<usize>, Vec<usize>) {
    use std::collections::BTreeMap;
    let mut incident: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &v in vertices {
        incident.insert(v, Vec::new());
    }
    for &e in edges {
        let ed = &net.edges[e];
        incident.get_mut(&ed.u).unwrap().push(e);
        if ed.u != ed.v {
            incident.get_mut(&ed.v).unwrap().push(e);
        }
    }
    let mut alive: std::collections::BTreeSet<usize> = edges.iter().copied().collect();
    // prune degree-1 vertices repeatedly
    let mut changed = true;
    while changed {
        changed = false;
        let verts: Vec<usize> = incident.keys().copied().collect();
        for v in verts {
            let live: Vec<usize> = incident[&v]
                .iter()
                .copied()
                .filter(|e| alive.contains(e))
                .collect();
            if live.len() == 1 {
                let e = live[0];
                let ed = &net.edges[e];
                if ed.u != ed.v {
                    alive.remove(&e);
                    changed = true;
                }
            }
        }
    }
    // walk the remaining cycle as darts
    let cycle_edges: Vec<usize> = alive.iter().copied().collect();
    if cycle_edges.len() == 1 {
        // self-loop
        let e = cycle_edges[0];
        return (cycle_edges, vec![dart_of(e, false)]);
    }
    let first = cycle_edges[0];
    let start_v = net.edges[first].u;
    let mut darts = vec![dart_of(first, false)];
    let mut at = net.edges[first].v;
    let mut used = std::collections::BTreeSet::from([first]);
    while at != start_v {
        let e = *cycle_edges
            .iter()
            .find(|&&e| {
                !used.contains(&e) && (net.edges[e].u == at || net.edges[e].v == at)
            })
            .expect("cycle walk must close");
        used.insert(e);
        let rev = net.edges[e].v == at;
        darts.push(dart_of(e, rev));
        at = if rev { net.edges[e].u } else { net.edges[e].v };
    }
    (cycle_edges, darts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn classify_tree_and_cycle() {
        // Square with a pendant: vertices 0-3 in a cycle, 4 hanging off 0.
        let net = Network::new(
            5,
            vec![
                (0, 1, rat(1, 1)),
                (1, 2, rat(1, 1)),
                (2, 3, rat(1, 1)),
                (3, 0, rat(1, 1)),
                (0, 4, rat(1, 1)),
            ],
            vec![4],
        )
        .unwrap();
        // full mask: one component, cycle-rooted (5 vertices, 5 edges)
        let comps = classify_subset(&net, None, 0b11111);
        assert_eq!(comps.len(), 1);
        match &comps[0].kind {
            ComponentKind::CycleRooted {
                cycle_edges, nodes, ..
            } => {
                assert_eq!(cycle_edges, &vec![0, 1, 2, 3]);
                assert_eq!(nodes, &vec![4]);
            }
            k => panic!("expected cycle-rooted, got {k:?}"),
        }
        // spanning tree mask
        let comps = classify_subset(&net, None, 0b10111);
        assert!(matches!(&comps[0].kind, ComponentKind::Tree { nodes } if nodes == &vec![4]));
        // empty mask: all isolated
        let comps = classify_subset(&net, None, 0);
        assert_eq!(comps.len(), 5);
    }
}
