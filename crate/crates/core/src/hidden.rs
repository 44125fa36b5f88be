//! Hidden variables: the upstream bigrading, tetrad generators of hidden
//! trees, matrix Schubert graphs and the classical join constructions.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::algebra::{sigma_minor, Monomial, Poly, Var, VarKind};
use crate::graph::{Dag, GraphError, VertexPartition};
use crate::markov::d_separated;
use crate::tetrad::vanishing_tetrads_among;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HiddenError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("hidden set is not upstream: edge {0} -> {1} enters it from an observed vertex")]
    NotUpstream(usize, usize),
    #[error("polynomial mixes covariance and parameter variables")]
    MixedVariables,
    #[error("graph is not a rooted directed tree")]
    NotRootedTree,
    #[error("not a binomial of two quadratic covariance monomials")]
    MalformedBinomial,
    #[error("invalid partial permutation: {0}")]
    InvalidPermutation(String),
    #[error("size {n} exceeds the supported maximum {max}")]
    TooLarge { n: usize, max: usize },
    #[error("unsupported construction: {0}")]
    Unsupported(String),
}

/// The `Z²` grading for an upstream hidden set `H`:
/// `deg σ_ij = (1,0)`, `(1,1)` or `(1,2)` as zero, one or two of `i, j` are
/// observed; on parameters `deg a_h = (1,0)`, `deg a_o = (1,2)`,
/// `deg λ_ho = (0,1)` and every other `λ` has degree `(0,0)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UpstreamGrading {
    partition: VertexPartition,
}

pub type Bidegree = (u32, u32);

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Grade {
    Homogeneous(Bidegree),
    /// Two terms with different degrees, leading one first.
    Mixed {
        first: (Monomial, Bidegree),
        second: (Monomial, Bidegree),
    },
    Zero,
}

impl fmt::Display for Grade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Grade::Homogeneous((a, b)) => write!(f, "({a},{b})"),
            Grade::Mixed { first, second } => write!(
                f,
                "not homogeneous: {} has degree ({},{}), {} has degree ({},{})",
                first.0, first.1 .0, first.1 .1, second.0, second.1 .0, second.1 .1
            ),
            Grade::Zero => f.write_str("zero polynomial"),
        }
    }
}

impl UpstreamGrading {
    pub fn new(g: &Dag, partition: VertexPartition) -> Result<Self, HiddenError> {
        for &(i, j) in g.edges() {
            if partition.is_hidden(j) && !partition.is_hidden(i) {
                return Err(HiddenError::NotUpstream(i, j));
            }
        }
        Ok(UpstreamGrading { partition })
    }

    pub fn partition(&self) -> &VertexPartition {
        &self.partition
    }

    pub fn var_degree(&self, v: Var) -> Bidegree {
        let (i, j) = v.indices();
        let h = |x| self.partition.is_hidden(x);
        match v.kind() {
            VarKind::Covariance => (1, u32::from(!h(i)) + u32::from(!h(j))),
            VarKind::NodeVariance => {
                if h(i) {
                    (1, 0)
                } else {
                    (1, 2)
                }
            }
            VarKind::EdgeWeight => (0, u32::from(h(i) && !h(j))),
        }
    }

    pub fn monomial_degree(&self, m: &Monomial) -> Bidegree {
        m.pairs().iter().fold((0, 0), |acc, &(v, e)| {
            let d = self.var_degree(v);
            (acc.0 + e * d.0, acc.1 + e * d.1)
        })
    }
}

/// The common bidegree of all terms of `p`, which must be written either in
/// `σ`-variables only or in `a`/`λ`-variables only.
pub fn upstream_degree(grading: &UpstreamGrading, p: &Poly) -> Result<Grade, HiddenError> {
    let vars = p.variables();
    let sigma = vars.iter().filter(|v| v.is_sigma()).count();
    if sigma != 0 && sigma != vars.len() {
        return Err(HiddenError::MixedVariables);
    }
    let mut terms = p.terms().iter();
    let Some((m0, _)) = terms.next() else {
        return Ok(Grade::Zero);
    };
    let d0 = grading.monomial_degree(m0);
    for (m, _) in terms {
        let d = grading.monomial_degree(m);
        if d != d0 {
            return Ok(Grade::Mixed { first: (m0.clone(), d0), second: (m.clone(), d) });
        }
    }
    Ok(Grade::Homogeneous(d0))
}

/// Vanishing tetrads of a rooted directed tree on its leaves, which are the
/// observed variables.
pub fn hidden_tree_generators(t: &Dag) -> Result<Vec<Poly>, HiddenError> {
    let report = t.classify();
    if !report.is_rooted_directed_tree {
        return Err(HiddenError::NotRootedTree);
    }
    Ok(vanishing_tetrads_among(t, &report.leaves)?)
}

/// Whether the binomial `m1 − m2` uses two of the three monomials
/// `σ_ij σ_kl`, `σ_ik σ_jl`, `σ_il σ_jk` of the Plücker relation on one
/// 4-set `{i, j, k, l}`.
pub fn plucker_support_check(b: &Poly) -> Result<bool, HiddenError> {
    let terms = b.terms();
    let well_formed = terms.len() == 2
        && terms[0].1.clone() * &terms[1].1 == -BigInt::one()
        && terms.iter().all(|(m, _)| m.degree() == 2 && m.pairs().iter().all(|p| p.0.is_sigma()));
    if !well_formed {
        return Err(HiddenError::MalformedBinomial);
    }
    let cover = |m: &Monomial| -> Option<BTreeSet<usize>> {
        let mut idx = Vec::new();
        for &(v, e) in m.pairs() {
            let (i, j) = v.indices();
            for _ in 0..e {
                idx.push(i);
                idx.push(j);
            }
        }
        let set: BTreeSet<usize> = idx.iter().copied().collect();
        (set.len() == 4).then_some(set)
    };
    Ok(match (cover(&terms[0].0), cover(&terms[1].0)) {
        (Some(a), Some(b)) => a == b && terms[0].0 != terms[1].0,
        _ => false,
    })
}

/// A partial permutation matrix of size `n`, given by the positions of its
/// ones (1-based, at most one per row and column), kept in row order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialPermutation {
    n: usize,
    ones: Vec<(usize, usize)>,
}

impl PartialPermutation {
    pub fn new(n: usize, ones: &[(usize, usize)]) -> Result<Self, HiddenError> {
        let mut ones = ones.to_vec();
        ones.sort_unstable();
        for &(i, j) in &ones {
            if i == 0 || j == 0 || i > n || j > n {
                return Err(HiddenError::InvalidPermutation(format!("({i},{j}) outside a {n}x{n} matrix")));
            }
        }
        let rows: BTreeSet<usize> = ones.iter().map(|p| p.0).collect();
        let cols: BTreeSet<usize> = ones.iter().map(|p| p.1).collect();
        if rows.len() != ones.len() || cols.len() != ones.len() {
            return Err(HiddenError::InvalidPermutation("two ones share a row or column".into()));
        }
        Ok(PartialPermutation { n, ones })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ones(&self) -> &[(usize, usize)] {
        &self.ones
    }
}

/// `G(w)` with its observed blocks located by vertex id.
#[derive(Debug, Clone)]
pub struct SchubertGraph {
    pub dag: Dag,
    pub partition: VertexPartition,
    /// Vertex ids of `1..n`.
    pub rows: Vec<usize>,
    /// Vertex ids of `1'..n'`.
    pub cols: Vec<usize>,
    /// Vertex ids of the hidden `(i, j) ∈ S(w)`, in row order.
    pub hidden: Vec<usize>,
}

/// `G(w)` on `[n] ∪ [n'] ∪ S(w)`: complete DAGs `k → l` (`k < l`) on `[n]`
/// and on `[n']`, and `(i, j) → k` for `k ≥ i`, `(i, j) → k'` for `k' ≥ j`.
/// Vertices are labeled `1`, `1'`, `h(i,j)` and renumbered topologically;
/// `S(w)` is hidden.
pub fn build_schubert_graph(w: &PartialPermutation) -> Result<SchubertGraph, HiddenError> {
    let n = w.n;
    let s = w.ones.len();
    let mut labels: Vec<String> = (1..=n).map(|i| format!("{i}")).collect();
    labels.extend((1..=n).map(|i| format!("{i}'")));
    labels.extend(w.ones.iter().map(|(i, j)| format!("h({i},{j})")));
    let mut edges = Vec::new();
    for k in 1..=n {
        for l in k + 1..=n {
            edges.push((k, l));
            edges.push((n + k, n + l));
        }
    }
    for (t, &(i, j)) in w.ones.iter().enumerate() {
        let h = 2 * n + t + 1;
        edges.extend((i..=n).map(|k| (h, k)));
        edges.extend((j..=n).map(|k| (h, n + k)));
    }
    let dag = Dag::from_labeled(labels, &edges)?;
    let id = |name: String| dag.vertex_by_label(&name).expect("label present");
    let rows: Vec<usize> = (1..=n).map(|i| id(format!("{i}"))).collect();
    let cols: Vec<usize> = (1..=n).map(|i| id(format!("{i}'"))).collect();
    let hidden: Vec<usize> = w.ones.iter().map(|(i, j)| id(format!("h({i},{j})"))).collect();
    debug_assert_eq!(hidden.len(), s);
    let partition = VertexPartition::new(dag.n(), &hidden)?;
    debug_assert!(partition.is_upstream(&dag));
    Ok(SchubertGraph { dag, partition, rows, cols, hidden })
}

pub const SCHUBERT_MAX_N: usize = 3;

fn subsets(items: &[usize]) -> Vec<Vec<usize>> {
    (0u32..1 << items.len())
        .map(|m| (0..items.len()).filter(|&k| m & (1 << k) != 0).map(|k| items[k]).collect())
        .collect()
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    subsets(items).into_iter().filter(|s| s.len() == k).collect()
}

/// The `(|C|+1)`-minors of `Σ_{A,B}` over `A ⊆ [n]`, `B ⊆ [n']` and
/// `C ⊆ S(w)` with `C` d-separating `A` from `B` in `G(w)`, in vertex ids of
/// the graph, sign-normalized, deduplicated and sorted largest first.
pub fn schubert_generators(w: &PartialPermutation) -> Result<(SchubertGraph, Vec<Poly>), HiddenError> {
    if w.n > SCHUBERT_MAX_N {
        return Err(HiddenError::TooLarge { n: w.n, max: SCHUBERT_MAX_N });
    }
    let sg = build_schubert_graph(w)?;
    let mut out = BTreeSet::new();
    let a_sets: Vec<Vec<usize>> = subsets(&sg.rows).into_iter().filter(|s| !s.is_empty()).collect();
    let b_sets: Vec<Vec<usize>> = subsets(&sg.cols).into_iter().filter(|s| !s.is_empty()).collect();
    for c in subsets(&sg.hidden) {
        let k = c.len() + 1;
        for a in &a_sets {
            for b in &b_sets {
                if k > a.len() || k > b.len() || !d_separated(&sg.dag, a, b, &c)? {
                    continue;
                }
                for r in combinations(a, k) {
                    for cc in combinations(b, k) {
                        let p = sigma_minor(&r, &cc);
                        if !p.is_zero() {
                            out.insert(p.normalize_sign());
                        }
                    }
                }
            }
        }
    }
    Ok((sg, out.into_iter().rev().collect()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassicalKind {
    FactorAnalysis { p: usize, m: usize },
    DoubledCaterpillar,
    DoubledSnowflake,
}

/// A hidden-variable DAG whose observed vertices carry the labels `1..m`.
#[derive(Debug, Clone)]
pub struct ClassicalModel {
    pub dag: Dag,
    pub partition: VertexPartition,
    /// The hidden vertices split into blocks with no edges between blocks.
    pub hidden_blocks: Vec<Vec<usize>>,
}

impl ClassicalModel {
    /// Vertex id of the observed variable labeled `k`.
    pub fn observed_vertex(&self, k: usize) -> Option<usize> {
        self.dag.vertex_by_label(&format!("{k}"))
    }

    /// Rewrites a polynomial in `σ_kl` over observed labels into vertex ids.
    pub fn in_vertex_ids(&self, p: &Poly) -> Option<Poly> {
        for v in p.variables() {
            let (i, j) = v.indices();
            self.observed_vertex(i)?;
            self.observed_vertex(j)?;
        }
        Some(p.map_sigma_indices(|k| self.observed_vertex(k).expect("checked above")))
    }
}

pub const FACTOR_ANALYSIS_MAX: usize = 12;

/// Builds one of the classical joins and checks the join hypotheses: no
/// edge between observed vertices and none between distinct hidden blocks.
pub fn construct_classical_graph(kind: ClassicalKind) -> Result<ClassicalModel, HiddenError> {
    // (labels, edges over label positions, hidden blocks as label positions)
    let mut labels: Vec<String> = Vec::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let observed_count = match kind {
        ClassicalKind::FactorAnalysis { p, m } => {
            if p == 0 || m == 0 || p > FACTOR_ANALYSIS_MAX || m > FACTOR_ANALYSIS_MAX {
                return Err(HiddenError::Unsupported(format!(
                    "factor_analysis needs 1 <= p, m <= {FACTOR_ANALYSIS_MAX}"
                )));
            }
            labels.extend((1..=p).map(|i| format!("h{i}")));
            labels.extend((1..=m).map(|j| format!("{j}")));
            for i in 1..=p {
                edges.extend((1..=m).map(|j| (i, p + j)));
                blocks.push(vec![i]);
            }
            m
        }
        ClassicalKind::DoubledCaterpillar | ClassicalKind::DoubledSnowflake => {
            // one copy of the tree internals, as (name, parent) plus leaf parents
            let (internal, leaf_parent): (&[(&str, Option<usize>)], [usize; 6]) = match kind {
                ClassicalKind::DoubledCaterpillar => (
                    &[("u1", None), ("u2", Some(0)), ("u3", Some(1)), ("u4", Some(2))],
                    [0, 0, 1, 2, 3, 3],
                ),
                _ => (
                    &[("r", None), ("c1", Some(0)), ("c2", Some(0)), ("c3", Some(0))],
                    [1, 1, 2, 2, 3, 3],
                ),
            };
            labels.extend((1..=6).map(|j| format!("{j}")));
            for suffix in ["", "'"] {
                let base = labels.len();
                let mut block = Vec::new();
                for (k, (name, parent)) in internal.iter().enumerate() {
                    labels.push(format!("{name}{suffix}"));
                    block.push(base + k + 1);
                    if let Some(p) = parent {
                        edges.push((base + p + 1, base + k + 1));
                    }
                }
                for (leaf, &p) in leaf_parent.iter().enumerate() {
                    edges.push((base + p + 1, leaf + 1));
                }
                blocks.push(block);
            }
            6
        }
    };
    let dag = Dag::from_labeled(labels.clone(), &edges)?;
    let id = |pos: usize| dag.vertex_by_label(&labels[pos - 1]).expect("label present");
    let hidden_blocks: Vec<Vec<usize>> = blocks.iter().map(|b| b.iter().map(|&v| id(v)).collect()).collect();
    let hidden: Vec<usize> = hidden_blocks.iter().flatten().copied().collect();
    let partition = VertexPartition::new(dag.n(), &hidden)?;
    debug_assert_eq!(partition.observed().len(), observed_count);
    let block_of = |v: usize| hidden_blocks.iter().position(|b| b.contains(&v));
    for &(i, j) in dag.edges() {
        let oo = !partition.is_hidden(i) && !partition.is_hidden(j);
        let cross = matches!((block_of(i), block_of(j)), (Some(x), Some(y)) if x != y);
        assert!(!oo && !cross, "join hypotheses violated by edge {i} -> {j}");
    }
    Ok(ClassicalModel { dag, partition, hidden_blocks })
}
