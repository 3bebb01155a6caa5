//! Helpers shared by the integration tests, including oracles that do not
//! go through the library's clique enumeration or linear algebra.

#![allow(dead_code)]

use rand::Rng;
use ymgraph_core::Graph;

/// Erdős–Rényi graph on `min_n..=max_n` vertices, oriented low to high.
pub fn random_graph<R: Rng>(rng: &mut R, min_n: usize, max_n: usize, p: f64) -> Graph {
    let n = rng.random_range(min_n..=max_n);
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                pairs.push((u, v));
            }
        }
    }
    Graph::natural(n, &pairs).expect("natural orientation is acyclic")
}

/// Random graph conditioned on being connected.
pub fn random_connected_graph<R: Rng>(rng: &mut R, min_n: usize, max_n: usize, p: f64) -> Graph {
    loop {
        let g = random_graph(rng, min_n, max_n, p);
        if g.components().len() == 1 {
            return g;
        }
    }
}

/// All cliques of a graph with at most 16 vertices by scanning every vertex
/// subset, grouped by size minus one and sorted by the orientation rank.
pub fn brute_force_cliques(g: &Graph) -> Vec<Vec<Vec<usize>>> {
    let n = g.num_vertices();
    assert!(n <= 16, "subset scan is exponential");
    let mut by_size: Vec<Vec<Vec<usize>>> = Vec::new();
    for mask in 1u32..(1u32 << n) {
        let mut members: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let pairwise = members
            .iter()
            .enumerate()
            .all(|(i, &u)| members[i + 1..].iter().all(|&v| g.is_adjacent(u, v)));
        if !pairwise {
            continue;
        }
        members.sort_by_key(|&v| g.rank(v));
        let k = members.len() - 1;
        if by_size.len() <= k {
            by_size.resize(k + 1, Vec::new());
        }
        by_size[k].push(members);
    }
    for level in &mut by_size {
        level.sort();
    }
    by_size
}

const PRIME: u128 = (1 << 61) - 1;

fn pow_mod(mut b: u128, mut e: u128) -> u128 {
    let mut r = 1;
    b %= PRIME;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % PRIME;
        }
        b = b * b % PRIME;
        e >>= 1;
    }
    r
}

/// Rank of an integer matrix by Gaussian elimination modulo the Mersenne
/// prime 2^61 - 1. For the small signed incidence matrices used here this
/// equals the rank over the rationals.
pub fn rank_mod_p(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<u128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x.rem_euclid(PRIME as i64) as u128).collect())
        .collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, p);
        let inv = pow_mod(m[rank][c], PRIME - 2);
        let pivot = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && row[c] != 0 {
                let f = row[c] * inv % PRIME;
                for (x, &p) in row[c..].iter_mut().zip(&pivot[c..]) {
                    *x = (*x + PRIME - f * p % PRIME) % PRIME;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Betti numbers from the ranks of the signed boundary matrices of the
/// brute-force clique complex.
pub fn betti_oracle(g: &Graph) -> Vec<usize> {
    let cliques = brute_force_cliques(g);
    let boundary_rank = |k: usize| -> usize {
        // Boundary from k-simplices to (k-1)-simplices.
        if k == 0 || k >= cliques.len() {
            return 0;
        }
        let rows: Vec<Vec<i64>> = cliques[k]
            .iter()
            .map(|s| {
                let mut row = vec![0i64; cliques[k - 1].len()];
                for j in 0..s.len() {
                    let mut face = s.clone();
                    face.remove(j);
                    let idx = cliques[k - 1].binary_search(&face).expect("face is a clique");
                    row[idx] = if j % 2 == 0 { 1 } else { -1 };
                }
                row
            })
            .collect();
        rank_mod_p(&rows)
    };
    (0..cliques.len())
        .map(|k| cliques[k].len() - boundary_rank(k) - boundary_rank(k + 1))
        .collect()
}
