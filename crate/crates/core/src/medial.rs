//! Medial graphs, strands, stub involutions, minimality, and the crossing
//! partial order on involutions.
//!
//! The medial graph has a vertex on every network edge and its strands go
//! straight through each degree-4 medial vertex. Strands are traced as corner
//! walks: a state is a corner `(a, σ(a))` of the rotation system together
//! with the direction of travel, and each step crosses one network edge.
//! On the disk (and on hole boundaries of the annulus and pants) the corners
//! of boundary nodes facing the boundary are cut, producing `2n` stubs; on
//! the annulus and torus strands may close up, and their deck displacement —
//! the weight sum of the darts walked — is the homology class.
//!
//! Minimality is decided exactly, without building infinite lifts: crossings
//! between two strands are grouped by the deck-translation offset between the
//! lifts involved, using the strands' homology classes as periods. A lift
//! pair crossing twice, a self-intersecting lift, a closed null-homologous
//! strand, or two parallel closed lifts sharing any crossing all defeat
//! minimality.

use crate::network::{dart_rev, Embedding, Network, Surface};

/// One transversal crossing of a network edge by a strand.
#[derive(Clone, Debug, PartialEq)]
pub struct StrandPass {
    pub edge: usize,
    /// Deck label of the crossed edge copy, relative to the strand's start:
    /// the sheet of the edge's `u` endpoint.
    pub sheet: (i64, i64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Strand {
    pub passes: Vec<StrandPass>,
    /// Stub ids (0-based, counterclockwise from just ccw of node 1) for open
    /// strands; `None` for closed strands.
    pub endpoints: Option<(usize, usize)>,
    /// Total deck displacement of a closed strand; zero for open strands.
    pub homology: (i64, i64),
}

impl Strand {
    pub fn is_closed(&self) -> bool {
        self.endpoints.is_none()
    }
}

#[derive(Clone, Debug)]
pub struct MedialGraph {
    pub strands: Vec<Strand>,
    /// For each edge, the two (strand, pass index) entries crossing it.
    pub passes_at: Vec<Vec<(usize, usize)>>,
    /// Number of stubs (2 per node on a cut boundary).
    pub num_stubs: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum MedialError {
    UnsupportedSurface,
    NoEmbedding,
    NodeNotOnBoundary(usize),
}

impl std::fmt::Display for MedialError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MedialError::UnsupportedSurface => write!(f, "surface not supported here"),
            MedialError::NoEmbedding => write!(f, "operation requires an embedding"),
            MedialError::NodeNotOnBoundary(v) => {
                write!(f, "node {v} has no corner on the boundary")
            }
        }
    }
}

impl std::error::Error for MedialError {}

/// Strand walk state: the corner `(dart, rotate_after(dart))` plus travel
/// direction. `Forward(a)` is about to cross `edge(σ(a))`; `Backward(a)` is
/// about to cross `edge(a)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum State {
    Forward(usize),
    Backward(usize),
}

impl State {
    fn mirror(self) -> State {
        match self {
            State::Forward(a) => State::Backward(a),
            State::Backward(a) => State::Forward(a),
        }
    }
}

struct Tracer<'a> {
    emb: &'a Embedding,
    sigma_next: Vec<usize>,
    sigma_prev: Vec<usize>,
    /// stub id of the cut corner at each dart (usize::MAX when not cut)
    cut_corner: Vec<usize>,
}

impl<'a> Tracer<'a> {
    fn new(net: &'a Network, emb: &'a Embedding) -> Result<Self, MedialError> {
        let nd = net.num_darts();
        let mut sigma_next = vec![usize::MAX; nd];
        let mut sigma_prev = vec![usize::MAX; nd];
        for darts in &emb.rotation {
            for (i, &d) in darts.iter().enumerate() {
                sigma_next[d] = darts[(i + 1) % darts.len()];
                sigma_prev[d] = darts[(i + darts.len() - 1) % darts.len()];
            }
        }
        // Cut corners: at each node, the corner facing the outer face (disk)
        // or a hole face (annulus / pants). Stubs are numbered ccw starting
        // just ccw of node 1: node i (0-based) owns ccw stub 2i and cw stub
        // (2i − 1 mod 2n).
        let mut cut_corner = vec![usize::MAX; nd];
        if !net.nodes.is_empty() {
            let faces = emb.faces(net);
            let mut boundary_faces: Vec<usize> = emb.holes.clone();
            if let Some(outer) = emb.outer_face {
                boundary_faces.push(outer);
            }
            for (i, &v) in net.nodes.iter().enumerate() {
                // The corner (a, σ(a)) sweeps counterclockwise from a, so its
                // region is the face left of a. The gap corner of a boundary
                // node is the one whose face is the outer face or a hole.
                let mut found = usize::MAX;
                for &a in &emb.rotation[v] {
                    if boundary_faces.contains(&faces.face_of[a]) {
                        found = a;
                        break;
                    }
                }
                if found == usize::MAX {
                    return Err(MedialError::NodeNotOnBoundary(v));
                }
                cut_corner[found] = 2 * i; // ccw stub id stored; cw is derived
            }
        }
        Ok(Tracer {
            emb,
            sigma_next,
            sigma_prev,
            cut_corner,
        })
    }

    /// The dart crossed when stepping out of `state`.
    fn crossed_dart(&self, state: State) -> usize {
        match state {
            State::Forward(a) => self.sigma_next[a],
            State::Backward(a) => a,
        }
    }

    fn step(&self, state: State) -> State {
        match state {
            State::Forward(a) => {
                let d = self.sigma_next[a];
                State::Backward(self.sigma_prev[dart_rev(d)])
            }
            State::Backward(a) => State::Forward(dart_rev(a)),
        }
    }
}

/// Trace all medial strands of an embedded network.
pub fn build_medial(net: &Network, emb: &Embedding) -> Result<MedialGraph, MedialError> {
    let tracer = Tracer::new(net, emb)?;
    let n = net.nodes.len();
    let num_stubs = 2 * n;
    // Interior states visited by some strand. Cut-corner states are excluded:
    // the cut splits a corner into two stub pieces that share a state, so
    // stub usage is tracked separately.
    let mut visited: std::collections::HashSet<State> = Default::default();
    let mut stub_used = vec![false; num_stubs];
    let mut strands: Vec<Strand> = Vec::new();

    let is_cut = |state: State| -> bool {
        let corner = match state {
            State::Forward(a) | State::Backward(a) => a,
        };
        tracer.cut_corner[corner] != usize::MAX
    };

    // Open strands: one walk per unused stub.
    for a in 0..net.num_darts() {
        if tracer.cut_corner[a] == usize::MAX {
            continue;
        }
        let ccw_stub = tracer.cut_corner[a];
        let cw_stub = (ccw_stub + num_stubs - 1) % num_stubs;
        for (stub, st) in [(ccw_stub, State::Forward(a)), (cw_stub, State::Backward(a))] {
            if stub_used[stub] {
                continue;
            }
            stub_used[stub] = true;
            let mut passes = Vec::new();
            let mut sheet = (0i64, 0i64);
            let mut state = st;
            let end = loop {
                let d = tracer.crossed_dart(state);
                let e = crate::network::dart_edge(d);
                let copy = if d % 2 == 0 {
                    sheet
                } else {
                    let (a, b) = tracer.emb.weights[d];
                    (sheet.0 + a, sheet.1 + b)
                };
                passes.push(StrandPass { edge: e, sheet: copy });
                let (wa, wb) = tracer.emb.weights[d];
                sheet = (sheet.0 + wa, sheet.1 + wb);
                state = tracer.step(state);
                if is_cut(state) {
                    let corner = match state {
                        State::Forward(a) | State::Backward(a) => a,
                    };
                    let ccw = tracer.cut_corner[corner];
                    // arriving Forward ends on the cw side; Backward on ccw
                    break match state {
                        State::Forward(_) => (ccw + num_stubs - 1) % num_stubs,
                        State::Backward(_) => ccw,
                    };
                }
                visited.insert(state);
                visited.insert(state.mirror());
            };
            stub_used[end] = true;
            strands.push(Strand {
                passes,
                endpoints: Some((stub, end)),
                homology: (0, 0),
            });
        }
    }

    // Closed strands from any unvisited interior state.
    for d in 0..net.num_darts() {
        for st0 in [State::Forward(d), State::Backward(d)] {
            if visited.contains(&st0) || is_cut(st0) {
                continue;
            }
            let mut passes = Vec::new();
            let mut sheet = (0i64, 0i64);
            let mut state = st0;
            loop {
                visited.insert(state);
                visited.insert(state.mirror());
                let dd = tracer.crossed_dart(state);
                let e = crate::network::dart_edge(dd);
                let copy = if dd % 2 == 0 {
                    sheet
                } else {
                    let (a, b) = tracer.emb.weights[dd];
                    (sheet.0 + a, sheet.1 + b)
                };
                passes.push(StrandPass { edge: e, sheet: copy });
                let (wa, wb) = tracer.emb.weights[dd];
                sheet = (sheet.0 + wa, sheet.1 + wb);
                state = tracer.step(state);
                if state == st0 {
                    break;
                }
            }
            strands.push(Strand {
                passes,
                endpoints: None,
                homology: sheet,
            });
        }
    }

    let mut passes_at = vec![Vec::new(); net.num_edges()];
    for (si, s) in strands.iter().enumerate() {
        for (pi, p) in s.passes.iter().enumerate() {
            passes_at[p.edge].push((si, pi));
        }
    }
    debug_assert!(passes_at.iter().all(|v| v.len() == 2));
    Ok(MedialGraph {
        strands,
        passes_at,
        num_stubs,
    })
}

/// Verdict of the minimality test, with a witness when it fails.
#[derive(Clone, Debug, PartialEq)]
pub enum MinimalityVerdict {
    Minimal,
    ClosedNullStrand { strand: usize },
    SelfCrossing { strand: usize, edge: usize },
    DoubleCrossing { strands: (usize, usize), edges: (usize, usize) },
    ParallelCrossing { strands: (usize, usize), edge: usize },
}

impl MinimalityVerdict {
    pub fn is_minimal(&self) -> bool {
        matches!(self, MinimalityVerdict::Minimal)
    }
}

pub fn is_minimal(net: &Network, emb: &Embedding) -> Result<MinimalityVerdict, MedialError> {
    if emb.surface == Surface::Pants {
        return Err(MedialError::UnsupportedSurface);
    }
    let medial = build_medial(net, emb)?;
    Ok(minimality_of(&medial))
}

pub fn minimality_of(medial: &MedialGraph) -> MinimalityVerdict {
    // A closed strand that is null-homologous bounds: it lifts to closed
    // loops, which a minimal picture cannot contain (loops on the disk are
    // this case with trivial weights).
    for (si, s) in medial.strands.iter().enumerate() {
        if s.is_closed() && s.homology == (0, 0) {
            return MinimalityVerdict::ClosedNullStrand { strand: si };
        }
    }
    // Gather the shared-edge pass pairs per strand pair.
    use std::collections::BTreeMap;
    let mut by_pair: BTreeMap<(usize, usize), Vec<(usize, (i64, i64), (i64, i64))>> =
        BTreeMap::new();
    for (e, entries) in medial.passes_at.iter().enumerate() {
        let (s1, p1) = entries[0];
        let (s2, p2) = entries[1];
        let (a, b) = (
            medial.strands[s1].passes[p1].sheet,
            medial.strands[s2].passes[p2].sheet,
        );
        let key = if s1 <= s2 { (s1, s2) } else { (s2, s1) };
        let (a, b) = if s1 <= s2 { (a, b) } else { (b, a) };
        by_pair.entry(key).or_default().push((e, a, b));
    }
    for (&(s1, s2), shared) in &by_pair {
        let st1 = &medial.strands[s1];
        let st2 = &medial.strands[s2];
        let periods: Vec<(i64, i64)> = [st1, st2]
            .iter()
            .filter(|s| s.is_closed())
            .map(|s| s.homology)
            .collect();
        if s1 == s2 {
            // one strand crossing itself or a parallel translate
            for &(e, a, b) in shared {
                let d = (a.0 - b.0, a.1 - b.1);
                if in_lattice(d, &periods) {
                    return MinimalityVerdict::SelfCrossing { strand: s1, edge: e };
                }
                if st1.is_closed() {
                    // translates of one closed strand are parallel: a single
                    // crossing repeats in every period
                    return MinimalityVerdict::ParallelCrossing {
                        strands: (s1, s2),
                        edge: e,
                    };
                }
            }
            // open strand vs its translates: group below
        }
        if st1.is_closed() && st2.is_closed() {
            let wedge = st1.homology.0 * st2.homology.1 - st1.homology.1 * st2.homology.0;
            if wedge == 0 {
                if let Some(&(e, _, _)) = shared.first() {
                    if s1 != s2 {
                        return MinimalityVerdict::ParallelCrossing {
                            strands: (s1, s2),
                            edge: e,
                        };
                    }
                }
                continue; // s1 == s2 handled above
            }
        }
        // group the pass pairs by deck offset modulo the period lattice
        let offsets: Vec<(usize, (i64, i64))> = shared
            .iter()
            .map(|&(e, a, b)| (e, (a.0 - b.0, a.1 - b.1)))
            .collect();
        for i in 0..offsets.len() {
            for j in i + 1..offsets.len() {
                let diff = (
                    offsets[i].1 .0 - offsets[j].1 .0,
                    offsets[i].1 .1 - offsets[j].1 .1,
                );
                // For a strand against its own translate the two pass roles
                // can swap, so the mirrored offset identifies the same pair.
                let sum = (
                    offsets[i].1 .0 + offsets[j].1 .0,
                    offsets[i].1 .1 + offsets[j].1 .1,
                );
                if in_lattice(diff, &periods) || (s1 == s2 && in_lattice(sum, &periods)) {
                    return MinimalityVerdict::DoubleCrossing {
                        strands: (s1, s2),
                        edges: (offsets[i].0, offsets[j].0),
                    };
                }
            }
        }
    }
    MinimalityVerdict::Minimal
}

/// Is `d` in the lattice spanned by `gens` (each possibly zero)?
fn in_lattice(d: (i64, i64), gens: &[(i64, i64)]) -> bool {
    let gens: Vec<(i64, i64)> = gens.iter().copied().filter(|&g| g != (0, 0)).collect();
    match gens.as_slice() {
        [] => d == (0, 0),
        [g] => {
            // d = k g for integer k
            if g.0 * d.1 != g.1 * d.0 {
                return false;
            }
            if g.0 != 0 {
                d.0 % g.0 == 0
            } else {
                d.1 % g.1 == 0
            }
        }
        [g, h] => {
            let det = g.0 * h.1 - g.1 * h.0;
            if det == 0 {
                // rank 1: reduce to a single generator via gcd direction
                return in_lattice(d, &[*g]) || in_lattice(d, &[*h]) || rank1_combined(d, *g, *h);
            }
            let m_num = d.0 * h.1 - d.1 * h.0;
            let n_num = g.0 * d.1 - g.1 * d.0;
            m_num % det == 0 && n_num % det == 0
        }
        _ => unreachable!("at most two periods"),
    }
}

fn rank1_combined(d: (i64, i64), g: (i64, i64), h: (i64, i64)) -> bool {
    // g, h parallel: lattice Zg + Zh along the common direction with step
    // gcd of the scalar lengths
    if g.0 * d.1 != g.1 * d.0 {
        return false;
    }
    let proj = |v: (i64, i64)| if g.0 != 0 { v.0 } else { v.1 };
    let step = gcd_i64(proj(g), proj(h));
    step != 0 && proj(d) % step == 0
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Fixed-point-free involution of `{0, .., 2n-1}` encoding the stub pairing.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StubInvolution {
    pair: Vec<usize>,
}

impl StubInvolution {
    pub fn new(pair: Vec<usize>) -> Self {
        assert!(pair.len() % 2 == 0);
        for (i, &p) in pair.iter().enumerate() {
            assert_ne!(i, p, "involution must be fixed-point free");
            assert_eq!(pair[p], i, "not an involution");
        }
        StubInvolution { pair }
    }

    pub fn size(&self) -> usize {
        self.pair.len()
    }

    pub fn pair_of(&self, i: usize) -> usize {
        self.pair[i]
    }

    /// The pairing of diametrically opposite stubs, `i <-> i + n`.
    pub fn well_connected(n: usize) -> Self {
        StubInvolution::new((0..2 * n).map(|i| (i + n) % (2 * n)).collect())
    }

    /// Crossings: quadruples `i < j < k < l` with `i~k` and `j~l`.
    pub fn crossing_number(&self) -> usize {
        let m = self.pair.len();
        let mut count = 0;
        for i in 0..m {
            let k = self.pair[i];
            if k <= i {
                continue;
            }
            for j in i + 1..k {
                let l = self.pair[j];
                if l > k {
                    count += 1;
                }
            }
        }
        count
    }

    /// Compare up to rotation of the stub labels.
    pub fn eq_up_to_rotation(&self, other: &StubInvolution) -> bool {
        let m = self.pair.len();
        if other.pair.len() != m {
            return false;
        }
        (0..m).any(|r| {
            (0..m).all(|i| (self.pair[(i + r) % m] + m - r) % m == other.pair[i])
        })
    }

    /// All fixed-point-free involutions of `{0, .., 2n-1}`.
    pub fn all(n: usize) -> Vec<StubInvolution> {
        let mut out = Vec::new();
        let mut pair = vec![usize::MAX; 2 * n];
        fn rec(pair: &mut Vec<usize>, out: &mut Vec<StubInvolution>) {
            let i = match pair.iter().position(|&p| p == usize::MAX) {
                None => {
                    out.push(StubInvolution::new(pair.clone()));
                    return;
                }
                Some(i) => i,
            };
            for j in i + 1..pair.len() {
                if pair[j] == usize::MAX {
                    pair[i] = j;
                    pair[j] = i;
                    rec(pair, out);
                    pair[i] = usize::MAX;
                    pair[j] = usize::MAX;
                }
            }
        }
        rec(&mut pair, &mut out);
        out
    }

    /// Both smoothings of the crossing formed by the chords through `i` and
    /// `j` (which must cross).
    pub fn smoothings(&self, i: usize, j: usize) -> [StubInvolution; 2] {
        let k = self.pair[i];
        let l = self.pair[j];
        let mut a = self.pair.clone();
        a[i] = j;
        a[j] = i;
        a[k] = l;
        a[l] = k;
        let mut b = self.pair.clone();
        b[i] = l;
        b[l] = i;
        b[j] = k;
        b[k] = j;
        [StubInvolution::new(a), StubInvolution::new(b)]
    }

    /// Do the chords through `i` and `j` cross?
    pub fn crosses(&self, i: usize, j: usize) -> bool {
        let (a, b) = (i.min(self.pair[i]), i.max(self.pair[i]));
        let x = j.min(self.pair[j]);
        let y = j.max(self.pair[j]);
        (a < x && x < b && b < y) || (x < a && a < y && y < b)
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut seen = vec![false; self.pair.len()];
        let mut out = Vec::new();
        for i in 0..self.pair.len() {
            if !seen[i] {
                seen[i] = true;
                seen[self.pair[i]] = true;
                out.push((i, self.pair[i]));
            }
        }
        out
    }
}

/// Stub involution of a disk network from its medial strands.
pub fn stub_involution(net: &Network, emb: &Embedding) -> Result<StubInvolution, MedialError> {
    if emb.surface != Surface::Disk {
        return Err(MedialError::UnsupportedSurface);
    }
    let medial = build_medial(net, emb)?;
    let mut pair = vec![usize::MAX; medial.num_stubs];
    for s in &medial.strands {
        let (a, b) = s.endpoints.expect("disk strands are open");
        pair[a] = b;
        pair[b] = a;
    }
    Ok(StubInvolution::new(pair))
}

#[derive(Debug, Clone, PartialEq)]
pub enum ResolveError {
    NotACrossing,
    NotBoundaryAdjacent,
}

impl std::fmt::Display for ResolveError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ResolveError::NotACrossing => write!(f, "chords do not cross"),
            ResolveError::NotBoundaryAdjacent => {
                write!(f, "crossing is not boundary-adjacent: no smoothing drops the count by 1")
            }
        }
    }
}

impl std::error::Error for ResolveError {}

/// Resolve the crossing of the chords through stubs `i` and `j`. A crossing
/// is boundary-adjacent exactly when one of its two smoothings lowers the
/// crossing number by one; that smoothing is returned.
pub fn resolve_boundary_crossing(
    inv: &StubInvolution,
    i: usize,
    j: usize,
) -> Result<StubInvolution, ResolveError> {
    if !inv.crosses(i, j) {
        return Err(ResolveError::NotACrossing);
    }
    let target = inv.crossing_number() - 1;
    for cand in inv.smoothings(i, j) {
        if cand.crossing_number() == target {
            return Ok(cand);
        }
    }
    Err(ResolveError::NotBoundaryAdjacent)
}

/// The crossing partial order on fixed-point-free involutions of
/// `{0, .., 2n-1}`: covers are single boundary-adjacent crossing resolutions.
pub struct HasseDiagram {
    pub involutions: Vec<StubInvolution>,
    /// `covers[k]` lists indexes of involutions covered by `involutions[k]`.
    pub covers: Vec<Vec<usize>>,
}

pub fn hasse_diagram(n: usize) -> HasseDiagram {
    assert!(n <= 5, "involution poset capped at n = 5");
    let involutions = StubInvolution::all(n);
    let index: std::collections::HashMap<StubInvolution, usize> = involutions
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, inv)| (inv, i))
        .collect();
    let mut covers = vec![Vec::new(); involutions.len()];
    for (k, inv) in involutions.iter().enumerate() {
        let cn = inv.crossing_number();
        if cn == 0 {
            continue;
        }
        for (i, _) in inv.pairs() {
            for (j, _) in inv.pairs() {
                if i < j && inv.crosses(i, j) {
                    for cand in inv.smoothings(i, j) {
                        if cand.crossing_number() + 1 == cn {
                            let t = index[&cand];
                            if !covers[k].contains(&t) {
                                covers[k].push(t);
                            }
                        }
                    }
                }
            }
        }
        covers[k].sort_unstable();
    }
    HasseDiagram {
        involutions,
        covers,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::network::families::{gamma, string_of_loops, torus_grid, y_network};

    #[test]
    fn single_edge_strands() {
        let net = Network::new(2, vec![(0, 1, rat(1, 1))], vec![0, 1]).unwrap();
        let rot = vec![vec![0], vec![1]];
        let emb = Embedding::new(&net, Surface::Disk, rot, vec![(0, 0)], None, vec![]).unwrap();
        let inv = stub_involution(&net, &emb).unwrap();
        assert_eq!(inv, StubInvolution::well_connected(2));
        let m = build_medial(&net, &emb).unwrap();
        assert_eq!(m.strands.len(), 2);
        assert!(m.strands.iter().all(|s| s.passes.len() == 1));
    }

    #[test]
    fn y_network_strands() {
        let (net, emb) = y_network(rat(1, 1), rat(1, 1), rat(1, 1));
        let m = build_medial(&net, &emb).unwrap();
        assert_eq!(m.strands.len(), 3);
        // each strand crosses two edges (one crossing with each other strand)
        assert!(m.strands.iter().all(|s| s.passes.len() == 2));
        let inv = stub_involution(&net, &emb).unwrap();
        assert_eq!(inv, StubInvolution::well_connected(3));
        assert!(is_minimal(&net, &emb).unwrap().is_minimal());
    }

    #[test]
    fn gamma_involutions_are_well_connected() {
        for n in 2..=5 {
            let (net, emb) = gamma(n, &[]).unwrap();
            let inv = stub_involution(&net, &emb).unwrap();
            assert_eq!(
                inv,
                StubInvolution::well_connected(n),
                "gamma({n}) must pair i with i+n"
            );
            assert!(is_minimal(&net, &emb).unwrap().is_minimal(), "gamma({n})");
        }
    }

    #[test]
    fn self_loop_not_minimal() {
        // a pendant self-loop on a disk network: the strand through the loop
        // crosses itself
        let net = Network::new(
            2,
            vec![(0, 1, rat(1, 1)), (1, 1, rat(1, 1))],
            vec![0],
        )
        .unwrap();
        // rotation at 1: edge to 0, then the loop darts
        let rot = vec![vec![0], vec![1, 2, 3]];
        let emb = Embedding::new(&net, Surface::Disk, rot, vec![(0, 0); 2], None, vec![]).unwrap();
        let v = is_minimal(&net, &emb).unwrap();
        assert!(
            matches!(
                v,
                MinimalityVerdict::SelfCrossing { .. } | MinimalityVerdict::ClosedNullStrand { .. }
            ),
            "{v:?}"
        );
    }

    #[test]
    fn parallel_edges_not_minimal() {
        let net = Network::new(2, vec![(0, 1, rat(1, 1)), (0, 1, rat(2, 1))], vec![0, 1]).unwrap();
        let rot = vec![vec![0, 2], vec![3, 1]];
        // with two nodes both faces hold them in order; pin the outer face
        let emb =
            Embedding::new(&net, Surface::Disk, rot, vec![(0, 0); 2], Some(1), vec![]).unwrap();
        let v = is_minimal(&net, &emb).unwrap();
        assert!(!v.is_minimal(), "bigon must not be minimal: {v:?}");
    }

    #[test]
    fn torus_grid_strands() {
        // 1x1: two closed diagonal strands with homology (1, ±1)
        let (net, emb) = torus_grid(1, 1).unwrap();
        let m = build_medial(&net, &emb).unwrap();
        assert_eq!(m.strands.len(), 2);
        let mut hs: Vec<(i64, i64)> = m
            .strands
            .iter()
            .map(|s| crate::combin::canonical_orientation(s.homology))
            .collect();
        hs.sort_unstable();
        assert_eq!(hs, vec![(1, -1), (1, 1)]);
        assert!(is_minimal(&net, &emb).unwrap().is_minimal());

        // 2x2: four strands, each crossing 4 edges
        let (net, emb) = torus_grid(2, 2).unwrap();
        let m = build_medial(&net, &emb).unwrap();
        assert_eq!(m.strands.len(), 4);
        assert!(m.strands.iter().all(|s| s.passes.len() == 4));
        assert!(is_minimal(&net, &emb).unwrap().is_minimal());
    }

    #[test]
    fn string_of_loops_strands() {
        // The n-loop string has a single medial strand snaking through every
        // channel: it winds 2n times and crosses itself at each medial
        // vertex, so it is not minimal in the universal-cover sense even
        // though it is the reduced normal form for annular networks.
        let (net, emb) = string_of_loops(&[rat(1, 1)], &[rat(1, 1), rat(1, 1)]).unwrap();
        let m = build_medial(&net, &emb).unwrap();
        assert_eq!(m.strands.len(), 1);
        assert_eq!(m.strands[0].homology.0.abs(), 4);
        assert!(!minimality_of(&m).is_minimal());

        let (net, emb) = string_of_loops(&[], &[rat(1, 1)]).unwrap();
        let m = build_medial(&net, &emb).unwrap();
        assert_eq!(m.strands.len(), 1);
        assert_eq!(m.strands[0].homology.0.abs(), 2);
    }

    #[test]
    fn crossing_numbers() {
        assert_eq!(StubInvolution::well_connected(3).crossing_number(), 3);
        // non-crossing matching: adjacent pairs
        let nc = StubInvolution::new(vec![1, 0, 3, 2, 5, 4]);
        assert_eq!(nc.crossing_number(), 0);
    }

    #[test]
    fn resolving_well_connected_n3() {
        let inv = StubInvolution::well_connected(3);
        // every crossing of the maximal element is boundary-adjacent
        for (i, _) in inv.pairs() {
            for (j, _) in inv.pairs() {
                if i < j && inv.crosses(i, j) {
                    let r = resolve_boundary_crossing(&inv, i, j).unwrap();
                    assert_eq!(r.crossing_number(), 2);
                }
            }
        }
    }

    #[test]
    fn hasse_n2_and_n3() {
        let h = hasse_diagram(2);
        assert_eq!(h.involutions.len(), 3);
        let max: Vec<usize> = (0..3)
            .filter(|&i| h.involutions[i].crossing_number() == 1)
            .collect();
        assert_eq!(max.len(), 1);
        assert_eq!(h.covers[max[0]].len(), 2);

        let h = hasse_diagram(3);
        assert_eq!(h.involutions.len(), 15);
        // unique maximum with 3 crossings, equal to the diametric pairing
        let maxima: Vec<usize> = (0..15)
            .filter(|&i| h.involutions[i].crossing_number() == 3)
            .collect();
        assert_eq!(maxima.len(), 1);
        assert_eq!(h.involutions[maxima[0]], StubInvolution::well_connected(3));
        // grading: every cover drops the crossing number by exactly one
        for (k, cs) in h.covers.iter().enumerate() {
            for &t in cs {
                assert_eq!(
                    h.involutions[t].crossing_number() + 1,
                    h.involutions[k].crossing_number()
                );
            }
        }
        // n = 1: single involution, trivial poset
        let h1 = hasse_diagram(1);
        assert_eq!(h1.involutions.len(), 1);
        assert!(h1.covers[0].is_empty());
    }
}
