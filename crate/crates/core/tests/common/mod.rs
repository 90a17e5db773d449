//! Oracles that recompute everything from raw image arrays.
#![allow(dead_code)]

use std::path::PathBuf;

use mapforge::random;
use mapforge::Constellation;

pub fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../golden")
        .join(format!("{name}.map"))
}

pub fn golden(name: &str) -> Constellation {
    let text = std::fs::read_to_string(golden_path(name)).unwrap();
    mapforge::parse_constellation_file(&text).unwrap()
}

/// 0-based image arrays.
pub fn raw(p: &mapforge::Permutation) -> Vec<usize> {
    p.images().into_iter().map(|x| x - 1).collect()
}

pub fn count_cycles(p: &[usize]) -> usize {
    let mut seen = vec![false; p.len()];
    let mut count = 0;
    for s in 0..p.len() {
        if !seen[s] {
            count += 1;
            let mut d = s;
            while !seen[d] {
                seen[d] = true;
                d = p[d];
            }
        }
    }
    count
}

/// Face permutation traced directly: leave along the edge, then turn
/// backwards around the next vertex.
pub fn trace_faces(sigma: &[usize], alpha: &[usize]) -> Vec<usize> {
    let n = sigma.len();
    let mut sigma_inv = vec![0; n];
    for d in 0..n {
        sigma_inv[sigma[d]] = d;
    }
    (0..n).map(|d| sigma_inv[alpha[d]]).collect()
}

/// Genus from vertex, edge and face counts of the raw arrays.
pub fn genus_oracle(c: &Constellation) -> i64 {
    let sigma = raw(c.sigma());
    let alpha = raw(c.alpha());
    let faces = count_cycles(&trace_faces(&sigma, &alpha)) as i64;
    let v = count_cycles(&sigma) as i64;
    let e = (sigma.len() / 2) as i64;
    let chi = v - e + faces;
    assert_eq!(chi % 2, 0, "odd Euler characteristic");
    (2 - chi) / 2
}

/// Stream of `(edge pair, dart pair)` for the simple at darts `(d1, d2)`,
/// steps `1..=steps`; the edge pair is ordered by min dart of each edge.
pub fn dart_stream(c: &Constellation, d1: usize, d2: usize, steps: usize) -> Vec<((usize, usize), (usize, usize))> {
    let phi = trace_faces(&raw(c.sigma()), &raw(c.alpha()));
    let alpha = raw(c.alpha());
    let edge = |d: usize| d.min(alpha[d]) + 1;
    let (mut a, mut b) = (d1 - 1, d2 - 1);
    let mut out = Vec::with_capacity(steps);
    for _ in 0..steps {
        a = phi[a];
        b = phi[b];
        out.push(((edge(a), edge(b)), (a + 1, b + 1)));
    }
    out
}

/// Smallest shift under which the materialised stream agrees with itself.
pub fn first_repeat<T: PartialEq>(stream: &[T]) -> Option<usize> {
    (1..=stream.len() / 2).find(|&p| (0..stream.len() - p).all(|i| stream[i] == stream[i + p]))
}

pub fn corpus(seed: u64, count: usize, max_darts: usize) -> Vec<Constellation> {
    let mut rng = random::rng(seed);
    (0..count)
        .map(|_| random::random_map_up_to(&mut rng, max_darts))
        .collect()
}
