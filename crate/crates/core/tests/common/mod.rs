#![allow(dead_code)]

use gaussnet_core::Dag;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random DAG on `1..=n` with edges `i → j` (i < j) kept with probability `p`.
pub fn random_dag(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Dag {
    let mut edges = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            if rng.gen_bool(p) {
                edges.push((i, j));
            }
        }
    }
    Dag::from_edges(n, &edges).unwrap()
}

/// Random rooted tree with edges directed away from vertex 1, decoded from a
/// Prüfer sequence.
pub fn random_tree(rng: &mut ChaCha8Rng, n: usize) -> Dag {
    let undirected = prufer_tree(rng, n);
    orient_from(n, &undirected, 1)
}

pub fn prufer_tree(rng: &mut ChaCha8Rng, n: usize) -> Vec<(usize, usize)> {
    if n < 2 {
        return Vec::new();
    }
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(1..=n)).collect();
    prufer_decode(n, &seq)
}

/// Edges of the labeled tree on `1..=n` with the given Prüfer sequence.
pub fn prufer_decode(n: usize, seq: &[usize]) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; n + 1];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::new();
    for &s in seq {
        let leaf = (1..=n).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf, s));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (1..=n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

/// Orient an undirected tree away from `root`; vertices keep their numbers
/// as labels.
pub fn orient_from(n: usize, undirected: &[(usize, usize)], root: usize) -> Dag {
    let mut adj = vec![Vec::new(); n + 1];
    for &(u, v) in undirected {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut seen = vec![false; n + 1];
    let mut stack = vec![root];
    seen[root] = true;
    let mut edges = Vec::new();
    while let Some(u) = stack.pop() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                edges.push((u, v));
                stack.push(v);
            }
        }
    }
    let labels = (1..=n).map(|v| v.to_string()).collect();
    Dag::from_labeled(labels, &edges).unwrap()
}

/// Random polytree: a Prüfer tree with each edge oriented by a coin flip.
pub fn random_polytree(rng: &mut ChaCha8Rng, n: usize) -> Dag {
    let edges: Vec<(usize, usize)> = prufer_tree(rng, n)
        .into_iter()
        .map(|(u, v)| if rng.gen_bool(0.5) { (u, v) } else { (v, u) })
        .collect();
    let labels = (1..=n).map(|v| v.to_string()).collect();
    Dag::from_labeled(labels, &edges).unwrap()
}
