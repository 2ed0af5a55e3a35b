//! Grove and forest combinatorics: enumeration oracles, partition algebra,
//! the minor ↔ grove-ratio identities, and Wilson's sampler.

pub mod enumerate;
pub mod partition;
pub mod wilson;

pub use enumerate::{
    canonical_orientation, check_cap, crsf_sum_sl2, crsf_sum_unitary, crsf_sums,
    cycle_rooted_grove_sum, grove_sums, spanning_trees, CrsfSums, EnumError, GroveSums,
    PairingSpec,
};
pub use partition::{
    grove_probability, l_tau, project_partition, Partition, PartitionCombo, SplitPolicy,
};
pub use wilson::{chi_square_p_value, wilson_chi_square, wilson_sample};

use crate::exact::matrix::RatMatrix;
use crate::exact::Rat;
use crate::network::Network;
use num_traits::Zero;

/// The signed minor `(-1)^{|T|} · det L[R∪T, S∪T]`, with rows ordered as
/// sorted R then sorted T and columns as sorted S then sorted T (the aligned
/// block order that makes the identity pairing the diagonal). Node indices
/// are positions into the node list.
pub fn minor_side(l: &RatMatrix, r: &[usize], s: &[usize], t: &[usize]) -> Rat {
    assert_eq!(r.len(), s.len(), "pairing needs |R| = |S|");
    let sorted = |xs: &[usize]| {
        let mut v = xs.to_vec();
        v.sort_unstable();
        v
    };
    let mut rows = sorted(r);
    rows.extend(sorted(t));
    let mut cols = sorted(s);
    cols.extend(sorted(t));
    let d = l.submatrix(&rows, &cols).det().expect("square minor");
    if t.len() % 2 == 0 {
        d
    } else {
        -d
    }
}

/// The grove side of the same identity: over permutations ρ, the signed sums
/// `Σ_ρ sign(ρ) · Z[r_i ~ s_ρ(i) | q singletons] / Z_unc` on the network with
/// the nodes of `T` demoted to internal vertices. Arguments are node
/// positions; `q` is the complement of r ∪ s ∪ t.
pub fn grove_side(net: &Network, r: &[usize], s: &[usize], t: &[usize]) -> Result<Rat, EnumError> {
    assert_eq!(r.len(), s.len());
    let n = net.nodes.len();
    let q: Vec<usize> = (0..n)
        .filter(|i| !r.contains(i) && !s.contains(i) && !t.contains(i))
        .collect();
    let r: Vec<usize> = {
        let mut v = r.to_vec();
        v.sort_unstable();
        v
    };
    let s: Vec<usize> = {
        let mut v = s.to_vec();
        v.sort_unstable();
        v
    };
    // demote T to internal; the denominator stays the uncrossing sum of the
    // original network (the determinant of its interior block)
    let mut sub = net.clone();
    sub.nodes = net
        .nodes
        .iter()
        .enumerate()
        .filter(|(i, _)| !t.contains(i))
        .map(|(_, &v)| v)
        .collect();
    let sums = grove_sums(&sub)?;
    // positions of the surviving nodes within sub.nodes
    let pos = |node_ix: usize| -> usize {
        let v = net.nodes[node_ix];
        sub.nodes.iter().position(|&w| w == v).unwrap()
    };
    let uncrossing = grove_sums(net)?.uncrossing();
    let mut acc = Rat::zero();
    for (perm, sign) in permutations_signed(s.len()) {
        let mut parts: Vec<Vec<usize>> = q.iter().map(|&x| vec![pos(x)]).collect();
        for (i, &p) in perm.iter().enumerate() {
            parts.push(vec![pos(r[i]), pos(s[p])]);
        }
        let key = Partition::new(parts);
        if let Some(z) = sums.by_partition.get(&key) {
            let term = z / &uncrossing;
            acc += if sign { term } else { -term };
        }
    }
    Ok(acc)
}

/// All permutations of 0..k with their signs (true = even).
pub fn permutations_signed(k: usize) -> Vec<(Vec<usize>, bool)> {
    let mut out = Vec::new();
    let mut used = vec![false; k];
    let mut cur = Vec::with_capacity(k);
    fn rec(k: usize, used: &mut Vec<bool>, cur: &mut Vec<usize>, out: &mut Vec<(Vec<usize>, bool)>) {
        if cur.len() == k {
            let mut inv = 0;
            for i in 0..k {
                for j in i + 1..k {
                    if cur[i] > cur[j] {
                        inv += 1;
                    }
                }
            }
            out.push((cur.clone(), inv % 2 == 0));
            return;
        }
        for x in 0..k {
            if !used[x] {
                used[x] = true;
                cur.push(x);
                rec(k, used, cur, out);
                cur.pop();
                used[x] = false;
            }
        }
    }
    rec(k, &mut used, &mut cur, &mut out);
    out
}
