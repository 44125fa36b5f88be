//! Choke points, the tetrad representation theorem as a decision
//! procedure, and membership in `I_G` by substitution.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::algebra::{AlgebraError, Poly};
use crate::graph::{Dag, GraphError};
use crate::trek::{has_trek, treks_with, Trek, TrekRule};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    ISide,
    JSide,
    Both,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChokeReport {
    /// Choke points in the order a trek from `I` to `J` passes them.
    pub points: Vec<(usize, Side)>,
    /// No trek joins `I` and `J` at all.
    pub trivially_vanishing: bool,
}

impl ChokeReport {
    pub fn vertices(&self) -> Vec<usize> {
        self.points.iter().map(|&(v, _)| v).collect()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.points.iter().any(|&(c, _)| c == v)
    }
}

/// Treks from every `i ∈ I` to every `j ∈ J`.
fn treks_between(g: &Dag, reach: &[Vec<bool>], i_set: &[usize], j_set: &[usize]) -> Vec<Trek> {
    let mut out = Vec::new();
    for &i in i_set {
        for &j in j_set {
            out.extend(treks_with(g, reach, i, j));
        }
    }
    out
}

/// A vertex `c` is a choke point between `I` and `J` if every trek from `I`
/// to `J` contains `c` and either every such trek has `c` on its `I`-side
/// (top down to the `I` end) or every one has it on its `J`-side. The top of
/// a trek belongs to both sides.
pub fn choke_points(g: &Dag, i_set: &[usize], j_set: &[usize]) -> Result<ChokeReport, GraphError> {
    for &v in i_set.iter().chain(j_set) {
        g.check_vertex(v)?;
    }
    if i_set.is_empty() || j_set.is_empty() {
        return Err(GraphError::Shape("choke points need nonempty I and J"));
    }
    Ok(choke_report(g, &g.reachability(), i_set, j_set))
}

fn choke_report(g: &Dag, reach: &[Vec<bool>], i_set: &[usize], j_set: &[usize]) -> ChokeReport {
    let treks = treks_between(g, reach, i_set, j_set);
    let Some(first) = treks.first() else {
        return ChokeReport { points: Vec::new(), trivially_vanishing: true };
    };
    let mut points = Vec::new();
    for c in first.traversal() {
        let (mut all_i, mut all_j) = (true, true);
        for t in &treks {
            all_i &= t.on_left(c);
            all_j &= t.on_right(c);
            if !all_i && !all_j {
                break;
            }
        }
        let side = match (all_i, all_j) {
            (true, true) => Side::Both,
            (true, false) => Side::ISide,
            (false, true) => Side::JSide,
            (false, false) => continue,
        };
        points.push((c, side));
    }
    ChokeReport { points, trivially_vanishing: false }
}

/// `σ_ij σ_kl − σ_il σ_jk`.
pub fn tetrad(i: usize, j: usize, k: usize, l: usize) -> Poly {
    &(&Poly::sigma(i, j) * &Poly::sigma(k, l)) - &(&Poly::sigma(i, l) * &Poly::sigma(j, k))
}

/// Whether `σ_ij σ_kl − σ_il σ_jk` vanishes on the model of `g`.
///
/// With all four entries nonzero this is the existence of a choke point
/// between `{i, k}` and `{j, l}`. A zero entry kills its product: the
/// tetrad then vanishes iff the other product is killed too.
pub fn tetrad_vanishes(g: &Dag, i: usize, j: usize, k: usize, l: usize) -> Result<bool, GraphError> {
    for v in [i, j, k, l] {
        g.check_vertex(v)?;
    }
    Ok(tetrad_vanishes_with(g, &g.reachability(), i, j, k, l))
}

pub(crate) fn tetrad_vanishes_with(g: &Dag, reach: &[Vec<bool>], i: usize, j: usize, k: usize, l: usize) -> bool {
    let nz = |a, b| has_trek(reach, g.n(), a, b);
    let first_alive = nz(i, j) && nz(k, l);
    let second_alive = nz(i, l) && nz(j, k);
    match (first_alive, second_alive) {
        (false, false) => true,
        (true, false) | (false, true) => false,
        (true, true) => !choke_report(g, reach, &[i, k], &[j, l]).points.is_empty(),
    }
}

/// Vanishing tetrads on 4-element subsets of `vertices`, each 4-set taken
/// with its three pairings, sign-normalized, deduplicated and sorted with
/// the largest leading term first.
pub fn vanishing_tetrads_among(g: &Dag, vertices: &[usize]) -> Result<Vec<Poly>, GraphError> {
    let mut vs = vertices.to_vec();
    vs.sort_unstable();
    vs.dedup();
    for &v in &vs {
        g.check_vertex(v)?;
    }
    let reach = g.reachability();
    let mut out = BTreeSet::new();
    let m = vs.len();
    for p in 0..m {
        for q in p + 1..m {
            for r in q + 1..m {
                for s in r + 1..m {
                    let (a, b, c, d) = (vs[p], vs[q], vs[r], vs[s]);
                    for (i, j, k, l) in [(a, b, c, d), (a, c, b, d), (a, b, d, c)] {
                        if tetrad_vanishes_with(g, &reach, i, j, k, l) {
                            out.insert(tetrad(i, j, k, l).normalize_sign());
                        }
                    }
                }
            }
        }
    }
    Ok(out.into_iter().rev().collect())
}

/// Vanishing tetrads over all 4-subsets of the vertex set.
pub fn all_vanishing_tetrads(g: &Dag) -> Vec<Poly> {
    let all: Vec<usize> = g.vertices().collect();
    vanishing_tetrads_among(g, &all).expect("vertices of g are valid")
}

/// `p ∈ I_G`, decided by substituting the trek rule.
pub fn verify_vanishing(g: &Dag, p: &Poly) -> Result<bool, AlgebraError> {
    verify_with(&TrekRule::new(g), p)
}

pub fn verify_with(rule: &TrekRule, p: &Poly) -> Result<bool, AlgebraError> {
    Ok(rule.apply(p)?.is_zero())
}
