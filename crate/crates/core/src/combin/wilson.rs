//! Random spanning trees by loop-erased random walk, with chi-square helpers
//! for distribution tests. Sampling uses the seeded counter generator, so a
//! given seed reproduces the same tree on every platform.

use crate::exact::{rat_to_f64, Rat};
use crate::network::Network;
use crate::rng::SplitMix;

/// Sample a spanning tree with probability proportional to Π c_e: walk from
/// each vertex in turn, erasing loops by next-pointer overwrite, until the
/// walk hits the growing tree. Returns the edge mask.
pub fn wilson_sample(net: &Network, seed: u64) -> u64 {
    let mut rng = SplitMix::new(seed);
    let n = net.num_vertices;
    // incident darts (never self-loops: they are erased instantly and would
    // only slow the walk)
    let mut out: Vec<Vec<(usize, usize, f64)>> = vec![Vec::new(); n]; // (nbr, edge, c)
    for e in &net.edges {
        if e.u == e.v {
            continue;
        }
        let c = rat_to_f64(&e.c);
        out[e.u].push((e.v, e.id, c));
        out[e.v].push((e.u, e.id, c));
    }
    let total: Vec<f64> = out.iter().map(|d| d.iter().map(|x| x.2).sum()).collect();
    let mut in_tree = vec![false; n];
    let mut next_edge = vec![usize::MAX; n];
    let mut next_vert = vec![usize::MAX; n];
    in_tree[0] = true;
    for start in 1..n {
        let mut u = start;
        while !in_tree[u] {
            // pick an incident dart with probability proportional to c
            let mut t = rng.unit_f64() * total[u];
            let mut pick = out[u].len() - 1;
            for (i, &(_, _, c)) in out[u].iter().enumerate() {
                if t < c {
                    pick = i;
                    break;
                }
                t -= c;
            }
            let (v, e, _) = out[u][pick];
            next_edge[u] = e;
            next_vert[u] = v;
            u = v;
        }
        let mut u = start;
        while !in_tree[u] {
            in_tree[u] = true;
            u = next_vert[u];
        }
    }
    let mut mask = 0u64;
    for v in 1..n {
        if next_edge[v] != usize::MAX {
            mask |= 1 << next_edge[v];
        }
    }
    mask
}


/// Empirical tree frequencies over `samples` draws with seeds
/// `seed, seed+1, ...`, keyed by tree mask.
pub fn sample_histogram(
    net: &Network,
    seed: u64,
    samples: usize,
) -> std::collections::BTreeMap<u64, usize> {
    let mut hist = std::collections::BTreeMap::new();
    for i in 0..samples {
        let mask = wilson_sample(net, seed.wrapping_add(i as u64));
        *hist.entry(mask).or_insert(0) += 1;
    }
    hist
}

/// Chi-square statistic of observed counts against expected weights.
pub fn chi_square(observed: &[(f64, f64)]) -> f64 {
    observed
        .iter()
        .map(|&(obs, exp)| (obs - exp) * (obs - exp) / exp)
        .sum()
}

/// p-value of a chi-square statistic with `dof` degrees of freedom:
/// `Q(dof/2, x/2)`, the regularized upper incomplete gamma function.
pub fn chi_square_p_value(stat: f64, dof: usize) -> f64 {
    gamma_q(dof as f64 / 2.0, stat / 2.0)
}

/// Regularized upper incomplete gamma Q(a, x), by series for x < a+1 and by
/// continued fraction otherwise.
pub fn gamma_q(a: f64, x: f64) -> f64 {
    if x < 0.0 || a <= 0.0 {
        return f64::NAN;
    }
    if x == 0.0 {
        return 1.0;
    }
    if x < a + 1.0 {
        1.0 - gamma_p_series(a, x)
    } else {
        gamma_q_cf(a, x)
    }
}

fn ln_gamma(x: f64) -> f64 {
    // Lanczos approximation, g = 7.
    const COEF: [f64; 9] = [
        0.999_999_999_999_809_93,
        676.520_368_121_885_1,
        -1259.139_216_722_402_8,
        771.323_428_777_653_1,
        -176.615_029_162_140_6,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_572e-6,
        1.505_632_735_149_311_6e-7,
    ];
    if x < 0.5 {
        let pi = std::f64::consts::PI;
        return (pi / (pi * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut acc = COEF[0];
    for (i, &c) in COEF.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + 7.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + acc.ln()
}

fn gamma_p_series(a: f64, x: f64) -> f64 {
    let mut ap = a;
    let mut sum = 1.0 / a;
    let mut del = sum;
    for _ in 0..500 {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if del.abs() < sum.abs() * 1e-15 {
            break;
        }
    }
    sum * (-x + a * x.ln() - ln_gamma(a)).exp()
}

fn gamma_q_cf(a: f64, x: f64) -> f64 {
    let tiny = 1e-300;
    let mut b = x + 1.0 - a;
    let mut c = 1.0 / tiny;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..500 {
        let an = -(i as f64) * (i as f64 - a);
        b += 2.0;
        d = an * d + b;
        if d.abs() < tiny {
            d = tiny;
        }
        c = b + an / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < 1e-15 {
            break;
        }
    }
    h * (-x + a * x.ln() - ln_gamma(a)).exp()
}

/// Convenience: chi-square test of Wilson samples against the exact tree
/// distribution. Returns (statistic, p-value, #trees).
pub fn wilson_chi_square(net: &Network, seed: u64, samples: usize) -> (f64, f64, usize) {
    let (z, trees) = super::enumerate::spanning_trees(net).expect("within cap");
    let hist = sample_histogram(net, seed, samples);
    let z_f = rat_to_f64(&z);
    let mut cells = Vec::new();
    for &mask in &trees {
        let mut w = Rat::from_integer(1.into());
        for e in &net.edges {
            if mask >> e.id & 1 == 1 {
                w *= &e.c;
            }
        }
        let expect = rat_to_f64(&w) / z_f * samples as f64;
        let obs = *hist.get(&mask).unwrap_or(&0) as f64;
        cells.push((obs, expect));
    }
    // every sampled mask must be a real tree
    let known: f64 = cells.iter().map(|c| c.0).sum();
    assert_eq!(known as usize, samples, "sampler produced a non-tree");
    let stat = chi_square(&cells);
    let p = chi_square_p_value(stat, trees.len() - 1);
    (stat, p, trees.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::network::families::complete_graph;

    #[test]
    fn tree_input_returns_that_tree() {
        let net = Network::new(
            4,
            vec![(0, 1, rat(2, 1)), (1, 2, rat(1, 3)), (1, 3, rat(5, 1))],
            vec![0],
        )
        .unwrap();
        for seed in 0..20 {
            assert_eq!(wilson_sample(&net, seed), 0b111);
        }
    }

    #[test]
    fn sampler_is_reproducible() {
        let net = complete_graph(4);
        assert_eq!(wilson_sample(&net, 42), wilson_sample(&net, 42));
    }

    #[test]
    fn gamma_q_known_values() {
        // Q(1/2, x/2) relates to erfc; chi-square dof=1 at x=3.841 -> p≈0.05
        let p = chi_square_p_value(3.841, 1);
        assert!((p - 0.05).abs() < 1e-3, "p = {p}");
        // dof=2: p = exp(-x/2)
        let p = chi_square_p_value(4.0, 2);
        assert!((p - (-2.0f64).exp()).abs() < 1e-12);
    }

    #[test]
    fn triangle_frequencies_roughly_uniform() {
        let net = complete_graph(3);
        let (_, p, ntrees) = wilson_chi_square(&net, 7, 3000);
        assert_eq!(ntrees, 3);
        assert!(p > 0.001, "p = {p}");
    }
}
