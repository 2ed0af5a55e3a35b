//! Partition algebra on boundary nodes: planarity, the crossing-resolution
//! rewrite that projects arbitrary partitions onto planar ones, and the
//! forest polynomials `L_tau` evaluated on a response matrix.

use crate::exact::matrix::RatMatrix;
use crate::exact::Rat;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// Set partition of `{0, .., n-1}` in canonical form: parts sorted
/// internally, parts ordered by minimum element.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    parts: Vec<Vec<usize>>,
}

impl Partition {
    pub fn new(mut parts: Vec<Vec<usize>>) -> Self {
        parts.retain(|p| !p.is_empty());
        for p in parts.iter_mut() {
            p.sort_unstable();
        }
        parts.sort_by_key(|p| p[0]);
        Partition { parts }
    }

    pub fn singletons(n: usize) -> Self {
        Partition::new((0..n).map(|i| vec![i]).collect())
    }

    pub fn one_block(n: usize) -> Self {
        Partition::new(vec![(0..n).collect()])
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    pub fn ground_size(&self) -> usize {
        self.parts.iter().map(Vec::len).sum()
    }

    pub fn part_of(&self, x: usize) -> Option<usize> {
        self.parts.iter().position(|p| p.contains(&x))
    }

    /// Planar means no `a < b < c < d` with `a, c` together and `b, d`
    /// together in a different part.
    pub fn is_planar(&self) -> bool {
        self.crossing_witness().is_none()
    }

    fn crossing_witness(&self) -> Option<(usize, usize, usize, usize)> {
        let n = self.ground_size();
        // elements are 0..n-1 exactly in our usage
        let mut part_ix = vec![usize::MAX; n];
        for (i, p) in self.parts.iter().enumerate() {
            for &x in p {
                part_ix[x] = i;
            }
        }
        for a in 0..n {
            for b in a + 1..n {
                if part_ix[a] == part_ix[b] {
                    continue;
                }
                for c in b + 1..n {
                    if part_ix[c] != part_ix[a] {
                        continue;
                    }
                    for d in c + 1..n {
                        if part_ix[d] == part_ix[b] {
                            return Some((a, b, c, d));
                        }
                    }
                }
            }
        }
        None
    }

    /// All partitions of `{0..n-1}` (restricted growth strings).
    pub fn all(n: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut rgs = vec![0usize; n];
        fn rec(rgs: &mut Vec<usize>, k: usize, max: usize, out: &mut Vec<Partition>) {
            let n = rgs.len();
            if k == n {
                let nparts = max + 1;
                let mut parts = vec![Vec::new(); nparts];
                for (i, &b) in rgs.iter().enumerate() {
                    parts[b].push(i);
                }
                out.push(Partition::new(parts));
                return;
            }
            for b in 0..=max + 1 {
                rgs[k] = b;
                rec(rgs, k + 1, max.max(b), out);
            }
        }
        if n == 0 {
            return vec![Partition { parts: vec![] }];
        }
        rgs[0] = 0;
        rec(&mut rgs, 1, 0, &mut out);
        out
    }

    pub fn display_one_based(&self) -> String {
        self.parts
            .iter()
            .map(|p| {
                p.iter()
                    .map(|x| (x + 1).to_string())
                    .collect::<Vec<_>>()
                    .join("")
            })
            .collect::<Vec<_>>()
            .join("|")
    }
}

/// Formal rational combination of partitions.
pub type PartitionCombo = BTreeMap<Partition, Rat>;

fn combo_add(acc: &mut PartitionCombo, p: Partition, c: Rat) {
    let entry = acc.entry(p).or_insert_with(Rat::zero);
    *entry += c;
    if entry.is_zero() {
        // keep the map free of stored zeros
        let key: Vec<_> = acc
            .iter()
            .filter(|(_, v)| v.is_zero())
            .map(|(k, _)| k.clone())
            .collect();
        for k in key {
            acc.remove(&k);
        }
    }
}

/// Split policies for the crossing-resolution rule. Both must produce the
/// same projection; having two lets tests assert choice-independence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SplitPolicy {
    /// Attach each remaining item to the nearest witness in circular order.
    NearestCircular,
    /// Attach each remaining item to the nearest witness in linear order.
    NearestLinear,
}

/// Project a partition onto a combination of planar partitions by repeatedly
/// resolving a crossing `a < b < c < d`: the part holding `{a, c}` splits
/// into `A ∋ a`, `C ∋ c` and the part holding `{b, d}` into `B ∋ b`,
/// `D ∋ d`, and
///
/// ```text
/// AC|BD|rest -> A|BCD + B|ACD + C|ABD + D|ABC − AB|CD − AD|BC  (rest fixed)
/// ```
///
/// Planar partitions are fixed points. The result does not depend on how the
/// non-witness items are attached.
pub fn project_partition(p: &Partition, policy: SplitPolicy) -> PartitionCombo {
    let mut memo: BTreeMap<Partition, PartitionCombo> = BTreeMap::new();
    project_rec(p, policy, &mut memo)
}

fn project_rec(
    p: &Partition,
    policy: SplitPolicy,
    memo: &mut BTreeMap<Partition, PartitionCombo>,
) -> PartitionCombo {
    if let Some(hit) = memo.get(p) {
        return hit.clone();
    }
    let (a, b, c, d) = match p.crossing_witness() {
        None => {
            let mut combo = PartitionCombo::new();
            combo.insert(p.clone(), Rat::one());
            memo.insert(p.clone(), combo.clone());
            return combo;
        }
        Some(w) => w,
    };
    let n = p.ground_size();
    let pa = p.part_of(a).unwrap();
    let pb = p.part_of(b).unwrap();
    let split = |wit1: usize, wit2: usize, part: &[usize]| -> (Vec<usize>, Vec<usize>) {
        let mut s1 = vec![wit1];
        let mut s2 = vec![wit2];
        for &x in part {
            if x == wit1 || x == wit2 {
                continue;
            }
            let (d1, d2) = match policy {
                SplitPolicy::NearestCircular => (circ_dist(x, wit1, n), circ_dist(x, wit2, n)),
                SplitPolicy::NearestLinear => (x.abs_diff(wit1), x.abs_diff(wit2)),
            };
            if d1 <= d2 {
                s1.push(x);
            } else {
                s2.push(x);
            }
        }
        (s1, s2)
    };
    let (aa, cc) = split(a, c, &p.parts[pa]);
    let (bb, dd) = split(b, d, &p.parts[pb]);
    let rest: Vec<Vec<usize>> = p
        .parts
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != pa && *i != pb)
        .map(|(_, q)| q.clone())
        .collect();
    let build = |groups: Vec<Vec<usize>>| -> Partition {
        let mut parts = rest.clone();
        parts.extend(groups);
        Partition::new(parts)
    };
    let cat = |x: &[usize], y: &[usize]| {
        let mut v = x.to_vec();
        v.extend_from_slice(y);
        v
    };
    let terms: [(Partition, i64); 6] = [
        (build(vec![aa.clone(), cat(&bb, &cat(&cc, &dd))]), 1),
        (build(vec![bb.clone(), cat(&aa, &cat(&cc, &dd))]), 1),
        (build(vec![cc.clone(), cat(&aa, &cat(&bb, &dd))]), 1),
        (build(vec![dd.clone(), cat(&aa, &cat(&bb, &cc))]), 1),
        (build(vec![cat(&aa, &bb), cat(&cc, &dd)]), -1),
        (build(vec![cat(&aa, &dd), cat(&bb, &cc)]), -1),
    ];
    let mut combo = PartitionCombo::new();
    for (q, sign) in terms {
        let sub = project_rec(&q, policy, memo);
        for (part, coeff) in sub {
            combo_add(&mut combo, part, coeff * Rat::from_integer(sign.into()));
        }
    }
    memo.insert(p.clone(), combo.clone());
    combo
}

fn circ_dist(x: usize, y: usize, n: usize) -> usize {
    let d = x.abs_diff(y);
    d.min(n - d)
}

/// Forest polynomial: the sum over spanning forests of the complete graph on
/// the nodes whose trees span exactly the parts of `tau`, of the product of
/// `L[i][j]` over forest edges. The all-singleton partition gives 1.
pub fn l_tau(l: &RatMatrix, tau: &Partition) -> Rat {
    let mut acc = Rat::one();
    for part in tau.parts() {
        acc *= tree_sum_on(l, part);
    }
    acc
}

/// Σ over labeled trees on `labels` of Π L[i][j] (Prüfer enumeration).
fn tree_sum_on(l: &RatMatrix, labels: &[usize]) -> Rat {
    let k = labels.len();
    if k <= 1 {
        return Rat::one();
    }
    if k == 2 {
        return l[(labels[0], labels[1])].clone();
    }
    let mut total = Rat::zero();
    let seq_len = k - 2;
    let mut seq = vec![0usize; seq_len];
    loop {
        total += prufer_weight(l, labels, &seq);
        // increment the Prüfer sequence in base k
        let mut i = 0;
        loop {
            if i == seq_len {
                return total;
            }
            seq[i] += 1;
            if seq[i] < k {
                break;
            }
            seq[i] = 0;
            i += 1;
        }
    }
}

fn prufer_weight(l: &RatMatrix, labels: &[usize], seq: &[usize]) -> Rat {
    let k = labels.len();
    let mut degree = vec![1usize; k];
    for &s in seq {
        degree[s] += 1;
    }
    let mut weight = Rat::one();
    for &s in seq {
        let leaf = (0..k).find(|&i| degree[i] == 1).expect("valid sequence");
        weight *= &l[(labels[leaf], labels[s])];
        degree[leaf] = 0;
        degree[s] -= 1;
    }
    let rem: Vec<usize> = (0..k).filter(|&i| degree[i] >= 1).collect();
    debug_assert_eq!(rem.len(), 2);
    weight *= &l[(labels[rem[0]], labels[rem[1]])];
    weight
}

/// Σ_tau P[sigma, tau] · L_tau over all partitions tau: the grove probability
/// ratio Pr(sigma)/Pr(all-singletons) as a function of the response matrix.
pub fn grove_probability(l: &RatMatrix, sigma: &Partition) -> Rat {
    assert!(sigma.is_planar(), "grove probability needs a planar partition");
    let n = sigma.ground_size();
    let mut acc = Rat::zero();
    for tau in Partition::all(n) {
        let combo = project_partition(&tau, SplitPolicy::NearestCircular);
        if let Some(coeff) = combo.get(sigma) {
            acc += coeff * &l_tau(l, &tau);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn part(parts: &[&[usize]]) -> Partition {
        Partition::new(parts.iter().map(|p| p.to_vec()).collect())
    }

    #[test]
    fn planarity() {
        assert!(!part(&[&[0, 2], &[1, 3]]).is_planar()); // 13|24
        assert!(part(&[&[0, 1], &[2, 3]]).is_planar()); // 12|34
        assert!(Partition::singletons(5).is_planar());
        assert!(Partition::one_block(6).is_planar());
    }

    #[test]
    fn projection_of_crossing_pair() {
        // 13|24 -> -12|34 - 14|23 + 1|234 + 2|134 + 3|124 + 4|123
        let combo = project_partition(&part(&[&[0, 2], &[1, 3]]), SplitPolicy::NearestCircular);
        let expect: Vec<(Partition, i64)> = vec![
            (part(&[&[0, 1], &[2, 3]]), -1),
            (part(&[&[0, 3], &[1, 2]]), -1),
            (part(&[&[0], &[1, 2, 3]]), 1),
            (part(&[&[1], &[0, 2, 3]]), 1),
            (part(&[&[2], &[0, 1, 3]]), 1),
            (part(&[&[3], &[0, 1, 2]]), 1),
        ];
        assert_eq!(combo.len(), expect.len());
        for (p, c) in expect {
            assert_eq!(combo.get(&p), Some(&rat(c, 1)), "{}", p.display_one_based());
        }
    }

    #[test]
    fn planar_partitions_are_fixed() {
        for p in Partition::all(4).into_iter().filter(Partition::is_planar) {
            let combo = project_partition(&p, SplitPolicy::NearestCircular);
            assert_eq!(combo.len(), 1);
            assert_eq!(combo.get(&p), Some(&rat(1, 1)));
        }
    }

    #[test]
    fn policies_agree_up_to_n5() {
        for n in [4usize, 5] {
            for p in Partition::all(n) {
                let a = project_partition(&p, SplitPolicy::NearestCircular);
                let b = project_partition(&p, SplitPolicy::NearestLinear);
                assert_eq!(a, b, "policy mismatch on {}", p.display_one_based());
            }
        }
    }

    #[test]
    fn l_tau_matches_displayed_cases() {
        // on a generic symmetric 4x4 matrix
        let mut l = RatMatrix::zero(4, 4);
        let mut v = 2i64;
        for i in 0..4 {
            for j in i + 1..4 {
                l[(i, j)] = rat(v, 1);
                l[(j, i)] = rat(v, 1);
                v += 1;
            }
        }
        // L_(123|4) = L12 L13 + L12 L23 + L13 L23
        let lhs = l_tau(&l, &part(&[&[0, 1, 2], &[3]]));
        let rhs = &l[(0, 1)] * &l[(0, 2)] + &l[(0, 1)] * &l[(1, 2)] + &l[(0, 2)] * &l[(1, 2)];
        assert_eq!(lhs, rhs);
        // L_(13|24) = L13 L24
        let lhs = l_tau(&l, &part(&[&[0, 2], &[1, 3]]));
        assert_eq!(lhs, &l[(0, 2)] * &l[(1, 3)]);
        // all singletons -> 1
        assert_eq!(l_tau(&l, &Partition::singletons(4)), rat(1, 1));
    }

    #[test]
    fn bell_numbers() {
        assert_eq!(Partition::all(3).len(), 5);
        assert_eq!(Partition::all(4).len(), 15);
        assert_eq!(Partition::all(5).len(), 52);
    }
}
