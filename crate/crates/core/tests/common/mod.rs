#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use relnet::ubcn::{ReliabilityAssignment, Topology};
use relnet::RawDataset;

/// `n_attr` attributes, each the 0/1 class plus uniform noise in
/// `[-noise, noise]`; the first `round(n * majority)` instances are "pos".
pub fn separable(n: usize, n_attr: usize, majority: f64, noise: f64, seed: u64) -> RawDataset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n_pos = (n as f64 * majority).round() as usize;
    let mut instances = Vec::with_capacity(n);
    let mut labels = Vec::with_capacity(n);
    for i in 0..n {
        let class = if i < n_pos { 1.0 } else { 0.0 };
        instances.push((0..n_attr).map(|_| class + rng.random_range(-noise..=noise)).collect());
        labels.push(if i < n_pos { "pos" } else { "neg" }.to_string());
    }
    RawDataset::new(instances, labels).unwrap()
}

/// Node reliabilities shaped like transformed separable data (class 1 near
/// the top of [0,1], class 0 near the bottom) with arcs drawn from
/// `[0.5, 1]`, as a trained model on such data tends to have.
pub fn separable_pair(t: &Topology, rng: &mut ChaCha8Rng) -> ReliabilityAssignment {
    let class_one = rng.random::<f64>() < 0.6;
    let node_rel = (0..t.n())
        .map(|_| {
            let v: f64 = rng.random_range(0.0..=0.4);
            if class_one { 1.0 - v } else { v }
        })
        .collect();
    let arc_rel = (0..t.n_var()).map(|_| rng.random_range(0.5..=1.0)).collect();
    ReliabilityAssignment::new(t, arc_rel, node_rel).unwrap()
}

/// Two-terminal reliability of the n = 2 network by inclusion-exclusion over
/// its four source-sink paths. Components are indexed: arcs 0..5 in the
/// canonical order, then node A = 5, node B = 6.
pub fn inclusion_exclusion_n2(arc: &[f64; 5], node: &[f64; 2]) -> f64 {
    // arcs: 0 = A-B, 1 = s-A, 2 = s-B, 3 = A-t, 4 = B-t
    const A: usize = 5;
    const B: usize = 6;
    let paths: [&[usize]; 4] = [&[1, A, 3], &[2, B, 4], &[1, A, 0, B, 4], &[2, B, 0, A, 3]];
    let p = |c: usize| if c < 5 { arc[c] } else { node[c - 5] };
    let mut total = 0.0;
    for subset in 1u32..16 {
        let mut members = [false; 7];
        for (k, path) in paths.iter().enumerate() {
            if subset & (1 << k) != 0 {
                path.iter().for_each(|&c| members[c] = true);
            }
        }
        let prob: f64 = (0..7).filter(|&c| members[c]).map(p).product();
        let sign = if subset.count_ones() % 2 == 1 { 1.0 } else { -1.0 };
        total += sign * prob;
    }
    total
}
