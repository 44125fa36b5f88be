//! Fully observed trees: generators of the toric ideal `I_T`, the facet
//! description of `P_T = conv(A_T)`, and the degree recursion for
//! downward directed forests.

mod oracle;

pub use oracle::{polytope_vertex_oracle, PolytopeOracle, ORACLE_MAX_N};

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::algebra::Poly;
use crate::graph::{Dag, GraphError};
use crate::tetrad::{tetrad, tetrad_vanishes_with};
use crate::trek::{has_trek, treks_with};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ToricError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("graph is not a forest")]
    NotForest,
    #[error("component is not downward directed")]
    NotDownwardDirected,
    #[error("oracle is limited to {max} vertices, got {n}")]
    TooLarge { n: usize, max: usize },
    #[error("polytope has a non-integral vertex")]
    NonIntegralVertex,
}

fn require_forest(t: &Dag) -> Result<(), ToricError> {
    if t.classify().is_forest {
        Ok(())
    } else {
        Err(ToricError::NotForest)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeGenerators {
    /// `σ_ij` with `T(i, j) = ∅`.
    pub linear: Vec<Poly>,
    /// Vanishing tetrads, repeated indices allowed.
    pub quadratic: Vec<Poly>,
}

/// Generators of `I_T` for a tree (forests accepted): the `σ_ij` that are
/// identically zero, and every tetrad `σ_ij σ_kl − σ_il σ_jk`, indices
/// possibly repeated, whose four entries are nonzero and which has a choke
/// point. Tetrads that cancel formally are dropped; the rest are
/// sign-normalized, deduplicated and sorted largest leading term first.
pub fn tree_ideal_generators(t: &Dag) -> Result<TreeGenerators, ToricError> {
    require_forest(t)?;
    let n = t.n();
    let reach = t.reachability();
    let mut linear = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            if !has_trek(&reach, n, i, j) {
                linear.push(Poly::sigma(i, j));
            }
        }
    }
    let nz = |a, b| has_trek(&reach, n, a, b);
    let mut quadratic = BTreeSet::new();
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                for l in 1..=n {
                    if !(nz(i, j) && nz(k, l) && nz(i, l) && nz(j, k)) {
                        continue;
                    }
                    let p = tetrad(i, j, k, l);
                    if !p.is_zero() && tetrad_vanishes_with(t, &reach, i, j, k, l) {
                        quadratic.insert(p.normalize_sign());
                    }
                }
            }
        }
    }
    Ok(TreeGenerators { linear, quadratic: quadratic.into_iter().rev().collect() })
}

/// A polyhedron in named coordinates. Each row is `(coefficients, rhs)`;
/// equalities read `c·v = rhs`, inequalities `c·v ≥ rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSystem {
    pub coordinates: Vec<String>,
    pub equalities: Vec<(Vec<i64>, i64)>,
    pub inequalities: Vec<(Vec<i64>, i64)>,
}

impl LinearSystem {
    pub fn dim(&self) -> usize {
        self.coordinates.len()
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        let dot = |c: &[i64]| c.iter().zip(v).map(|(a, b)| a * b).sum::<i64>();
        self.equalities.iter().all(|(c, r)| dot(c) == *r)
            && self.inequalities.iter().all(|(c, r)| dot(c) >= *r)
    }

    /// Human-readable form of one row, e.g. `2x1 - y(1,2) >= 0`.
    pub fn render_row(&self, coeffs: &[i64], rel: &str, rhs: i64) -> String {
        let mut s = String::new();
        for (c, name) in coeffs.iter().zip(&self.coordinates) {
            if *c == 0 {
                continue;
            }
            let mag = c.unsigned_abs();
            if s.is_empty() {
                if *c < 0 {
                    s.push('-');
                }
            } else {
                s.push_str(if *c < 0 { " - " } else { " + " });
            }
            if mag != 1 {
                s.push_str(&format!("{mag}"));
            }
            s.push_str(name);
        }
        if s.is_empty() {
            s.push('0');
        }
        format!("{s} {rel} {rhs}")
    }
}

/// Coordinates `x_1..x_n` followed by `y_ij` for the edges in sorted order.
fn coordinate_index(t: &Dag) -> (Vec<String>, BTreeMap<(usize, usize), usize>) {
    let n = t.n();
    let mut names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let mut edge_at = BTreeMap::new();
    for (k, &(i, j)) in t.edges().iter().enumerate() {
        names.push(format!("y({i},{j})"));
        edge_at.insert((i, j), n + k);
    }
    (names, edge_at)
}

/// The facet system of `P_T`: `x_i ≥ 0`, `y_ij ≥ 0`, `Σ x_i = 1`, one
/// inequality `x_j + Σ_{i→j} y_ij − y_jk ≥ 0` per edge `j → k`, and one
/// `2x_j + Σ_{i→j} y_ij − Σ_{j→k} y_jk ≥ 0` per vertex, in that order.
pub fn polytope_system(t: &Dag) -> Result<LinearSystem, ToricError> {
    require_forest(t)?;
    let n = t.n();
    let (coordinates, edge_at) = coordinate_index(t);
    let d = coordinates.len();
    let unit = |k: usize, c: i64| {
        let mut v = vec![0i64; d];
        v[k] = c;
        v
    };
    let mut inequalities = Vec::new();
    for k in 0..d {
        inequalities.push((unit(k, 1), 0));
    }
    let equalities = vec![((0..d).map(|k| i64::from(k < n)).collect(), 1)];
    let incoming = |j: usize, v: &mut Vec<i64>| {
        for &i in t.parents(j) {
            v[edge_at[&(i, j)]] += 1;
        }
    };
    for &(j, k) in t.edges() {
        let mut v = unit(j - 1, 1);
        incoming(j, &mut v);
        v[edge_at[&(j, k)]] -= 1;
        inequalities.push((v, 0));
    }
    for j in 1..=n {
        let mut v = unit(j - 1, 2);
        incoming(j, &mut v);
        for &k in t.children(j) {
            v[edge_at[&(j, k)]] -= 1;
        }
        inequalities.push((v, 0));
    }
    Ok(LinearSystem { coordinates, equalities, inequalities })
}

/// The 0/1 exponent vector of the trek-rule monomial of `σ_ij`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ExponentVector {
    pub pair: (usize, usize),
    pub entries: Vec<i64>,
}

/// `A_T`: one vector per pair `i ≤ j` with `T(i, j) ≠ ∅`, in pair order.
pub fn exponent_vectors(t: &Dag) -> Result<Vec<ExponentVector>, ToricError> {
    require_forest(t)?;
    let n = t.n();
    let (coordinates, edge_at) = coordinate_index(t);
    let reach = t.reachability();
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i..=n {
            // in a forest there is at most one trek between two vertices
            if let Some(trek) = treks_with(t, &reach, i, j).first() {
                let mut entries = vec![0i64; coordinates.len()];
                entries[trek.top - 1] = 1;
                for e in trek.edges() {
                    entries[edge_at[&e]] = 1;
                }
                out.push(ExponentVector { pair: (i, j), entries });
            }
        }
    }
    Ok(out)
}

/// An in-tree: the vertex and the subtrees hanging above it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Shape(Vec<Shape>);

impl Shape {
    fn build(t: &Dag, v: usize) -> Shape {
        let mut kids: Vec<Shape> = t.parents(v).iter().map(|&p| Shape::build(t, p)).collect();
        kids.sort();
        Shape(kids)
    }

    fn size(&self) -> usize {
        1 + self.0.iter().map(Shape::size).sum::<usize>()
    }
}

/// `deg I_T` for a downward directed forest: the product over components
/// of the recursion `deg I_T = Σ_{k→l ∈ P} deg I_{T∖k→l}` along the path
/// `P` from a leaf to the sink, with `1` for a single vertex.
pub fn tree_degree(t: &Dag) -> Result<BigUint, ToricError> {
    if !t.classify().is_forest {
        return Err(ToricError::NotForest);
    }
    if t.vertices().any(|v| t.children(v).len() > 1) {
        return Err(ToricError::NotDownwardDirected);
    }
    let mut memo = BTreeMap::new();
    let mut deg = BigUint::one();
    for s in t.sinks() {
        deg *= shape_degree(&Shape::build(t, s), &mut memo);
    }
    Ok(deg)
}

fn shape_degree(s: &Shape, memo: &mut BTreeMap<Shape, BigUint>) -> BigUint {
    if s.0.is_empty() {
        return BigUint::one();
    }
    if let Some(d) = memo.get(s) {
        return d.clone();
    }
    // Walk from the sink up the first subtree until a leaf; cutting the
    // t-th edge of that path detaches `path[t+1]` from the rest.
    let mut total = BigUint::zero();
    let mut depth = 0;
    loop {
        let (detached, rest) = cut_along_first_path(s, depth);
        let Some(detached) = detached else { break };
        total += shape_degree(&detached, memo) * shape_degree(&rest, memo);
        depth += 1;
    }
    debug_assert!(s.size() > 1);
    memo.insert(s.clone(), total.clone());
    total
}

/// Remove the edge entering the node at `depth` along the first-child path
/// (depth 0 is the edge into the sink). Returns the detached subtree and
/// what remains, or `None` once the path is exhausted.
fn cut_along_first_path(s: &Shape, depth: usize) -> (Option<Shape>, Shape) {
    if s.0.is_empty() {
        return (None, s.clone());
    }
    if depth == 0 {
        let mut kids = s.0.clone();
        let detached = kids.remove(0);
        return (Some(detached), Shape(kids));
    }
    let (detached, new_first) = cut_along_first_path(&s.0[0], depth - 1);
    let mut kids = s.0.clone();
    kids[0] = new_first;
    kids.sort();
    (detached, Shape(kids))
}
