//! Brute-force enumeration oracles over edge subsets: spanning trees, groves,
//! cycle-rooted spanning forests and cycle-rooted groves. Everything walks all
//! `2^E` masks (parallelized over mask ranges), with hard caps on the edge
//! count — exceeding a cap is an error, never a truncation.

use super::partition::Partition;
use crate::exact::laurent::LaurentPoly;
use crate::exact::Rat;
use crate::network::{
    classify_subset, ComponentKind, Connection, Embedding, Network,
};
use crate::par;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq)]
pub enum EnumError {
    TooManyEdges { edges: usize, cap: usize },
}

impl std::fmt::Display for EnumError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EnumError::TooManyEdges { edges, cap } => {
                write!(f, "{edges} edges exceeds the enumeration cap {cap} (override with OHMLAB_MAX_EDGES)")
            }
        }
    }
}

impl std::error::Error for EnumError {}

/// Enumeration cap, overridable through `OHMLAB_MAX_EDGES` (still a hard
/// error past the override).
pub fn check_cap(edges: usize, default_cap: usize) -> Result<(), EnumError> {
    let cap = std::env::var("OHMLAB_MAX_EDGES")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .unwrap_or(default_cap);
    if edges > cap {
        Err(EnumError::TooManyEdges { edges, cap })
    } else {
        Ok(())
    }
}

fn mask_weight(net: &Network, mask: u64) -> Rat {
    let mut w = Rat::one();
    for e in &net.edges {
        if mask >> e.id & 1 == 1 {
            w *= &e.c;
        }
    }
    w
}

/// All spanning trees: the weighted sum and the tree masks.
pub fn spanning_trees(net: &Network) -> Result<(Rat, Vec<u64>), EnumError> {
    check_cap(net.num_edges(), 20)?;
    let ne = net.num_edges();
    let nv = net.num_vertices;
    let fold = |mut acc: (Rat, Vec<u64>), mask: u64| {
        if mask.count_ones() as usize + 1 != nv {
            return acc;
        }
        if is_spanning_tree(net, mask) {
            acc.0 += mask_weight(net, mask);
            acc.1.push(mask);
        }
        acc
    };
    let merge = |mut a: (Rat, Vec<u64>), b: (Rat, Vec<u64>)| {
        a.0 += b.0;
        a.1.extend(b.1);
        a
    };
    let (sum, mut masks) = par::fold_range(1u64 << ne, || (Rat::zero(), Vec::new()), fold, merge);
    masks.sort_unstable();
    Ok((sum, masks))
}

pub fn is_spanning_tree(net: &Network, mask: u64) -> bool {
    let nv = net.num_vertices;
    if mask.count_ones() as usize + 1 != nv {
        return false;
    }
    let mut parent: Vec<usize> = (0..nv).collect();
    fn find(p: &mut Vec<usize>, mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for e in &net.edges {
        if mask >> e.id & 1 == 1 {
            let (a, b) = (find(&mut parent, e.u), find(&mut parent, e.v));
            if a == b {
                return false;
            }
            parent[a] = b;
        }
    }
    true
}

/// Weighted grove sums keyed by the node partition each grove induces.
#[derive(Clone, Debug)]
pub struct GroveSums {
    pub by_partition: BTreeMap<Partition, Rat>,
    pub total: Rat,
}

impl GroveSums {
    pub fn uncrossing(&self) -> Rat {
        let n = self
            .by_partition
            .keys()
            .next()
            .map_or(0, Partition::ground_size);
        self.by_partition
            .get(&Partition::singletons(n))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    pub fn tree_sum(&self) -> Rat {
        let n = self
            .by_partition
            .keys()
            .next()
            .map_or(0, Partition::ground_size);
        self.by_partition
            .get(&Partition::one_block(n))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }
}

/// Enumerate all groves: edge subsets whose every component is a tree
/// containing at least one node. The partition key records which nodes each
/// component joins, with node indices renumbered by position in `net.nodes`.
pub fn grove_sums(net: &Network) -> Result<GroveSums, EnumError> {
    check_cap(net.num_edges(), 16)?;
    let ne = net.num_edges();
    let fold = |mut acc: BTreeMap<Partition, Rat>, mask: u64| {
        if let Some(partition) = grove_partition(net, mask) {
            let w = mask_weight(net, mask);
            *acc.entry(partition).or_insert_with(Rat::zero) += w;
        }
        acc
    };
    let merge = |mut a: BTreeMap<Partition, Rat>, b: BTreeMap<Partition, Rat>| {
        for (k, v) in b {
            *a.entry(k).or_insert_with(Rat::zero) += v;
        }
        a
    };
    let by_partition = par::fold_range(1u64 << ne, BTreeMap::new, fold, merge);
    let total = by_partition.values().sum();
    Ok(GroveSums {
        by_partition,
        total,
    })
}

/// The node partition induced by a grove, or None when the mask is not a
/// grove (a cycle, or a component without nodes).
pub fn grove_partition(net: &Network, mask: u64) -> Option<Partition> {
    let comps = classify_subset(net, None, mask);
    let mut parts = Vec::new();
    for comp in &comps {
        match &comp.kind {
            ComponentKind::Tree { nodes } if !nodes.is_empty() => {
                parts.push(
                    nodes
                        .iter()
                        .map(|v| net.nodes.iter().position(|n| n == v).unwrap())
                        .collect(),
                );
            }
            _ => return None,
        }
    }
    Some(Partition::new(parts))
}

/// Cycle-rooted spanning forest sums for a line bundle: the full weighted sum
/// as a Laurent polynomial in the monodromy variables, together with buckets
/// of essential CRSFs by total homology class (canonical orientation) and by
/// cycle count. Bucket weights are plain conductance products.
#[derive(Clone, Debug)]
pub struct CrsfSums {
    pub total: LaurentPoly,
    pub by_homology: BTreeMap<(i64, i64), Rat>,
    pub by_cycle_count: BTreeMap<usize, Rat>,
}

pub fn crsf_sums(net: &Network, emb: &Embedding) -> Result<CrsfSums, EnumError> {
    check_cap(net.num_edges(), 16)?;
    let vars: u8 = match emb.surface {
        crate::network::Surface::Annulus => 1,
        _ => 2,
    };
    let ne = net.num_edges();
    type Acc = (LaurentPoly, BTreeMap<(i64, i64), Rat>, BTreeMap<usize, Rat>);
    let identity = || {
        (
            LaurentPoly::zero_vars(1),
            BTreeMap::new(),
            BTreeMap::new(),
        )
    };
    let fold = |mut acc: Acc, mask: u64| {
        let comps = classify_subset(net, Some(emb), mask);
        let mut homologies = Vec::new();
        for comp in &comps {
            match &comp.kind {
                ComponentKind::CycleRooted { homology, .. } => homologies.push(*homology),
                _ => return acc,
            }
        }
        let w = mask_weight(net, mask);
        // monodromy factor Π (2 − z^h − z^{-h})
        let mut factor = LaurentPoly::constant(vars, Rat::one());
        for &(a, b) in &homologies {
            let term = LaurentPoly::constant(vars, Rat::from_integer(2.into()))
                - LaurentPoly::monomial(vars, a, b, Rat::one())
                - LaurentPoly::monomial(vars, -a, -b, Rat::one());
            factor = factor * term;
        }
        acc.0 = acc.0 + factor.scale(&w);
        // essential buckets
        if !homologies.is_empty() && homologies.iter().all(|&h| h != (0, 0)) {
            let mut total = (0i64, 0i64);
            for h in &homologies {
                let h = canonical_orientation(*h);
                total = (total.0 + h.0, total.1 + h.1);
            }
            let key = canonical_orientation(total);
            *acc.1.entry(key).or_insert_with(Rat::zero) += w.clone();
            *acc.2.entry(homologies.len()).or_insert_with(Rat::zero) += w;
        }
        acc
    };
    let merge = |mut a: Acc, b: Acc| {
        a.0 = a.0 + b.0;
        for (k, v) in b.1 {
            *a.1.entry(k).or_insert_with(Rat::zero) += v;
        }
        for (k, v) in b.2 {
            *a.2.entry(k).or_insert_with(Rat::zero) += v;
        }
        a
    };
    let (total, by_homology, by_cycle_count) =
        par::fold_range(1u64 << ne, identity, fold, merge);
    Ok(CrsfSums {
        total,
        by_homology,
        by_cycle_count,
    })
}

pub fn canonical_orientation(h: (i64, i64)) -> (i64, i64) {
    if h.0 > 0 || (h.0 == 0 && h.1 > 0) {
        h
    } else {
        (-h.0, -h.1)
    }
}

/// CRSF sum for an SL2 connection: Σ over CRSFs of Π c_e · Π (2 − tr w).
pub fn crsf_sum_sl2(net: &Network, conn: &Connection) -> Result<Rat, EnumError> {
    check_cap(net.num_edges(), 16)?;
    let ne = net.num_edges();
    let two = Rat::from_integer(2.into());
    let fold = |mut acc: Rat, mask: u64| {
        let comps = classify_subset(net, None, mask);
        let mut factor = Rat::one();
        for comp in &comps {
            match &comp.kind {
                ComponentKind::CycleRooted { cycle_darts, .. } => {
                    let mut m = crate::network::Mat2::identity();
                    for &d in cycle_darts {
                        m = m.mul(&conn.sl2_transport(d));
                    }
                    factor *= &two - &m.trace();
                }
                _ => return acc,
            }
        }
        acc += factor * mask_weight(net, mask);
        acc
    };
    Ok(par::fold_range(
        1u64 << ne,
        Rat::zero,
        fold,
        |a: Rat, b: Rat| a + b,
    ))
}

/// CRSF sum for a unitary line connection: Π (2 − w − 1/w) = Π (2 − 2·Re w).
pub fn crsf_sum_unitary(net: &Network, conn: &Connection) -> Result<Rat, EnumError> {
    check_cap(net.num_edges(), 16)?;
    let ne = net.num_edges();
    let two = Rat::from_integer(2.into());
    let fold = |mut acc: Rat, mask: u64| {
        let comps = classify_subset(net, None, mask);
        let mut factor = Rat::one();
        for comp in &comps {
            match &comp.kind {
                ComponentKind::CycleRooted { cycle_darts, .. } => {
                    let mut w = crate::exact::GaussRat::one();
                    for &d in cycle_darts {
                        w = w * conn.unitary_transport(d);
                    }
                    factor *= &two - &(&w.re + &w.re);
                }
                _ => return acc,
            }
        }
        acc += factor * mask_weight(net, mask);
        acc
    };
    Ok(par::fold_range(
        1u64 << ne,
        Rat::zero,
        fold,
        |a: Rat, b: Rat| a + b,
    ))
}

/// A pairing specification for cycle-rooted groves: `pairs[i] = (r, s)` asks
/// for a tree joining nodes `r` and `s` (and no other active node), `lone`
/// nodes sit in singleton trees, `internal` nodes are demoted to internal
/// vertices. All ids are vertex ids.
#[derive(Clone, Debug)]
pub struct PairingSpec {
    pub pairs: Vec<(usize, usize)>,
    pub lone: Vec<usize>,
    pub internal: Vec<usize>,
}

/// Weighted sum over cycle-rooted groves matching `spec`: components are
/// either trees holding exactly one pair `{r, s}` or one lone node, or
/// node-free cycle-rooted pieces; the weight is
/// `Π c_e · Π_cycles (2 − z^h − z^{-h}) · Π_pairs z^(path s -> r)`.
pub fn cycle_rooted_grove_sum(
    net: &Network,
    emb: &Embedding,
    spec: &PairingSpec,
) -> Result<LaurentPoly, EnumError> {
    check_cap(net.num_edges(), 14)?;
    let vars: u8 = match emb.surface {
        crate::network::Surface::Annulus => 1,
        _ => 2,
    };
    let ne = net.num_edges();
    let active: Vec<usize> = spec
        .pairs
        .iter()
        .flat_map(|&(r, s)| [r, s])
        .chain(spec.lone.iter().copied())
        .collect();
    let fold = |mut acc: LaurentPoly, mask: u64| {
        let comps = classify_subset(net, Some(emb), mask);
        let mut factor = LaurentPoly::constant(vars, Rat::one());
        for comp in &comps {
            let comp_active: Vec<usize> = comp
                .vertices
                .iter()
                .copied()
                .filter(|v| active.contains(v))
                .collect();
            match &comp.kind {
                ComponentKind::Tree { .. } => {
                    match comp_active.len() {
                        1 => {
                            if !spec.lone.contains(&comp_active[0]) {
                                return acc;
                            }
                        }
                        2 => {
                            let (x, y) = (comp_active[0], comp_active[1]);
                            let pair = spec
                                .pairs
                                .iter()
                                .find(|&&(r, s)| (r, s) == (x, y) || (r, s) == (y, x));
                            match pair {
                                None => return acc,
                                Some(&(r, s)) => {
                                    // transport orientation matching the
                                    // Laplacian convention Δ[i][j] = −c·φ(i→j)
                                    let w = tree_path_weight(net, emb, &comp.edges, r, s);
                                    factor = factor
                                        * LaurentPoly::monomial(vars, w.0, w.1, Rat::one());
                                }
                            }
                        }
                        _ => return acc,
                    }
                }
                ComponentKind::CycleRooted { homology, .. } => {
                    if !comp_active.is_empty() {
                        return acc;
                    }
                    let (a, b) = *homology;
                    let term = LaurentPoly::constant(vars, Rat::from_integer(2.into()))
                        - LaurentPoly::monomial(vars, a, b, Rat::one())
                        - LaurentPoly::monomial(vars, -a, -b, Rat::one());
                    factor = factor * term;
                }
                ComponentKind::Other => return acc,
            }
        }
        acc = acc + factor.scale(&mask_weight(net, mask));
        acc
    };
    Ok(par::fold_range(
        1u64 << ne,
        || LaurentPoly::zero_vars(vars),
        fold,
        |a: LaurentPoly, b: LaurentPoly| a + b,
    ))
}

/// Monodromy exponents of the unique path from `from` to `to` inside a tree
/// given by its edge list.
fn tree_path_weight(
    net: &Network,
    emb: &Embedding,
    edges: &[usize],
    from: usize,
    to: usize,
) -> (i64, i64) {
    // BFS in the tree
    let mut adj: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new(); // v -> (nbr, dart)
    for &e in edges {
        let ed = &net.edges[e];
        adj.entry(ed.u).or_default().push((ed.v, 2 * e));
        adj.entry(ed.v).or_default().push((ed.u, 2 * e + 1));
    }
    let mut prev: BTreeMap<usize, usize> = BTreeMap::new(); // v -> dart into v
    let mut queue = std::collections::VecDeque::from([from]);
    let mut seen = std::collections::BTreeSet::from([from]);
    while let Some(v) = queue.pop_front() {
        if v == to {
            break;
        }
        if let Some(nbrs) = adj.get(&v) {
            for &(w, d) in nbrs {
                if seen.insert(w) {
                    prev.insert(w, d);
                    queue.push_back(w);
                }
            }
        }
    }
    let mut acc = (0i64, 0i64);
    let mut at = to;
    while at != from {
        let d = prev[&at];
        let (a, b) = emb.weights[d];
        acc = (acc.0 + a, acc.1 + b);
        at = crate::network::dart_tail(net, d);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::network::families::{complete_graph, string_of_loops, y_network};

    #[test]
    fn cayley_counts() {
        let (sum, trees) = spanning_trees(&complete_graph(3)).unwrap();
        assert_eq!(sum, rat(3, 1));
        assert_eq!(trees.len(), 3);
        let (sum, trees) = spanning_trees(&complete_graph(5)).unwrap();
        assert_eq!(sum, rat(125, 1));
        assert_eq!(trees.len(), 125);
    }

    #[test]
    fn y_network_grove_sums() {
        let (c1, c2, c3) = (rat(2, 1), rat(3, 1), rat(5, 1));
        let (net, _) = y_network(c1.clone(), c2.clone(), c3.clone());
        let gs = grove_sums(&net).unwrap();
        // unique grove of type 12|3 has weight c1·c2
        let p12 = Partition::new(vec![vec![0, 1], vec![2]]);
        assert_eq!(gs.by_partition.get(&p12), Some(&(&c1 * &c2)));
        // three uncrossings with weights c1, c2, c3
        assert_eq!(gs.uncrossing(), &c1 + &c2 + &c3);
        // one spanning tree of weight c1 c2 c3
        assert_eq!(gs.tree_sum(), &c1 * &c2 * &c3);
    }

    #[test]
    fn single_edge_groves() {
        let net = Network::new(2, vec![(0, 1, rat(7, 1))], vec![0, 1]).unwrap();
        let gs = grove_sums(&net).unwrap();
        assert_eq!(
            gs.by_partition.get(&Partition::one_block(2)),
            Some(&rat(7, 1))
        );
        // empty grove: both nodes isolated
        assert_eq!(gs.uncrossing(), rat(1, 1));
    }

    #[test]
    fn single_loop_crsf() {
        let (net, emb) = string_of_loops(&[], &[rat(4, 1)]).unwrap();
        let s = crsf_sums(&net, &emb).unwrap();
        // c(2 − z − 1/z)
        let expect = crate::exact::laurent::x_in_z().scale(&rat(4, 1));
        assert_eq!(s.total, expect);
        assert_eq!(s.by_homology.get(&(1, 0)), Some(&rat(4, 1)));
        assert_eq!(s.by_cycle_count.get(&1), Some(&rat(4, 1)));
    }

    #[test]
    fn cap_is_hard() {
        // a 21-edge network trips the spanning-tree cap
        let mut edges = vec![];
        for i in 0..21 {
            edges.push((i % 2, (i % 2 + 1) % 2, rat(1, 1)));
        }
        let net = Network::new(2, edges, vec![0]).unwrap();
        assert!(matches!(
            spanning_trees(&net),
            Err(EnumError::TooManyEdges { .. })
        ));
    }
}
