//! Treks, the trek-rule parametrization `σ_ij ↦ Σ_P a_top(P) Π λ_kl`,
//! sampling from the parameter region Ω, and exact parameter recovery.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{AlgebraError, Monomial, Poly, RationalMatrix, Var, VarKind};
use crate::graph::{Dag, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TrekError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("parameters violate the Ω constraint at vertex {0}")]
    OmegaViolation(usize),
    #[error("model covariance failed the positive-definiteness check")]
    NotPositiveDefinite,
    #[error("covariance matrix must be symmetric positive definite of size {0}")]
    InvalidCovariance(usize),
    #[error("parameter assignment does not match the graph")]
    ParameterShape,
}

/// A colliderless path: a directed descent from `top` to each endpoint.
///
/// `left` runs `top → … → i`, `right` runs `top → … → j`; the two share only
/// `top`. The empty trek from `i` to `i` has both paths equal to `[i]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Trek {
    pub top: usize,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

impl Trek {
    pub fn is_empty(&self) -> bool {
        self.left.len() == 1 && self.right.len() == 1
    }

    /// Edges of the trek, left side first.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.left
            .windows(2)
            .chain(self.right.windows(2))
            .map(|w| (w[0], w[1]))
    }

    /// `a_top · Π λ_kl`.
    pub fn monomial(&self) -> Monomial {
        Monomial::from_pairs(
            core::iter::once((Var::node_variance(self.top), 1))
                .chain(self.edges().map(|(k, l)| (Var::edge_weight(k, l), 1))),
        )
    }

    /// Vertices in traversal order from the `i` end up to the top and down
    /// to the `j` end.
    pub fn traversal(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.left.iter().rev().copied().collect();
        v.extend_from_slice(&self.right[1..]);
        v
    }

    pub fn on_left(&self, v: usize) -> bool {
        self.left.contains(&v)
    }

    pub fn on_right(&self, v: usize) -> bool {
        self.right.contains(&v)
    }
}

/// All directed paths `from → … → to`, each as a vertex list.
fn directed_paths(g: &Dag, reach: &[Vec<bool>], from: usize, to: usize) -> Vec<Vec<usize>> {
    fn dfs(g: &Dag, reach: &[Vec<bool>], to: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let v = *path.last().unwrap();
        if v == to {
            out.push(path.clone());
            return;
        }
        for &c in g.children(v) {
            if reach[c][to] {
                path.push(c);
                dfs(g, reach, to, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    if reach[from][to] {
        dfs(g, reach, to, &mut vec![from], &mut out);
    }
    out
}

/// Treks from `i` to `j`, ordered by top, then left path, then right path.
pub fn enumerate_treks(g: &Dag, i: usize, j: usize) -> Result<Vec<Trek>, GraphError> {
    g.check_vertex(i)?;
    g.check_vertex(j)?;
    Ok(treks_with(g, &g.reachability(), i, j))
}

pub(crate) fn treks_with(g: &Dag, reach: &[Vec<bool>], i: usize, j: usize) -> Vec<Trek> {
    if i == j {
        return vec![Trek { top: i, left: vec![i], right: vec![i] }];
    }
    let mut out = Vec::new();
    for top in 1..=g.n() {
        if !(reach[top][i] && reach[top][j]) {
            continue;
        }
        let lefts = directed_paths(g, reach, top, i);
        let rights = directed_paths(g, reach, top, j);
        for l in &lefts {
            for r in &rights {
                if r[1..].iter().all(|v| !l.contains(v)) {
                    out.push(Trek { top, left: l.clone(), right: r.clone() });
                }
            }
        }
    }
    out.sort();
    out
}

/// Whether `T(i, j)` is nonempty, i.e. `i` and `j` share an ancestor.
pub(crate) fn has_trek(reach: &[Vec<bool>], n: usize, i: usize, j: usize) -> bool {
    (1..=n).any(|t| reach[t][i] && reach[t][j])
}

/// Trek-rule image of `σ_ij`.
pub fn trek_rule_sigma(g: &Dag, i: usize, j: usize) -> Result<Poly, GraphError> {
    let treks = enumerate_treks(g, i, j)?;
    Ok(Poly::from_terms(treks.iter().map(|t| (t.monomial(), BigInt::one()))))
}

/// The homomorphism `φ_G` tabulated on every `σ_ij`, `i ≤ j`.
#[derive(Debug, Clone)]
pub struct TrekRule {
    n: usize,
    images: BTreeMap<Var, Poly>,
}

impl TrekRule {
    pub fn new(g: &Dag) -> Self {
        let reach = g.reachability();
        let mut images = BTreeMap::new();
        for i in 1..=g.n() {
            for j in i..=g.n() {
                let treks = treks_with(g, &reach, i, j);
                let p = Poly::from_terms(treks.iter().map(|t| (t.monomial(), BigInt::one())));
                images.insert(Var::sigma(i, j), p);
            }
        }
        TrekRule { n: g.n(), images }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn image(&self, i: usize, j: usize) -> &Poly {
        &self.images[&Var::sigma(i, j)]
    }

    pub fn images(&self) -> &BTreeMap<Var, Poly> {
        &self.images
    }

    /// `φ_G(p)` for a polynomial in σ-variables.
    pub fn apply(&self, p: &Poly) -> Result<Poly, AlgebraError> {
        p.substitute_sigma(&self.images)
    }
}

/// A point of parameter space: the `a_i`, `λ_ij` and the noise variances
/// `ψ_i²`. Vertex-indexed vectors hold vertex `v` at position `v - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParameterAssignment {
    pub a: Vec<BigRational>,
    pub lambda: BTreeMap<(usize, usize), BigRational>,
    pub psi2: Vec<BigRational>,
}

impl ParameterAssignment {
    pub fn value(&self, v: Var) -> Option<BigRational> {
        let (i, j) = v.indices();
        match v.kind() {
            VarKind::NodeVariance => self.a.get(i.checked_sub(1)?).cloned(),
            VarKind::EdgeWeight => self.lambda.get(&(i, j)).cloned(),
            VarKind::Covariance => None,
        }
    }

    fn check_shape(&self, g: &Dag) -> Result<(), TrekError> {
        let edges_match = self.lambda.len() == g.edges().len()
            && g.edges().iter().all(|e| self.lambda.contains_key(e));
        if self.a.len() != g.n() || self.psi2.len() != g.n() || !edges_match {
            return Err(TrekError::ParameterShape);
        }
        Ok(())
    }
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Deterministic draw from Ω.
///
/// Each `λ_ij` is `p/q` with `p ∈ [-9, 9] \ {0}` and `q ∈ [1, 4]`; each
/// `ψ_j²` is `p/q` with `q ∈ [1, 4]` and `p ∈ [1, 4q]`, so `ψ_j² ∈ (0, 4]`.
/// The `a_j` follow from the variance recursion, which puts the draw in Ω.
pub fn sample_omega(g: &Dag, seed: u64) -> ParameterAssignment {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut lambda = BTreeMap::new();
    for &e in g.edges() {
        let mut p: i64 = rng.gen_range(-9..=8);
        if p >= 0 {
            p += 1;
        }
        let d: i64 = rng.gen_range(1..=4);
        lambda.insert(e, q(p, d));
    }
    let psi2: Vec<BigRational> = g
        .vertices()
        .map(|_| {
            let d: i64 = rng.gen_range(1..=4);
            let p: i64 = rng.gen_range(1..=4 * d);
            q(p, d)
        })
        .collect();
    let cov = covariance_by_recursion(g, &lambda, &psi2);
    let a = g.vertices().map(|v| cov.get(v - 1, v - 1).clone()).collect();
    ParameterAssignment { a, lambda, psi2 }
}

/// Covariance of the structural equations `X_j = Σ λ_ij X_i + W_j` computed
/// vertex by vertex in numeric order:
/// `σ_kj = Σ_{i ∈ pa(j)} λ_ij σ_ik` for `k < j` and
/// `σ_jj = Σ_{i,k ∈ pa(j)} λ_ij λ_kj σ_ik + ψ_j²`.
pub fn covariance_by_recursion(
    g: &Dag,
    lambda: &BTreeMap<(usize, usize), BigRational>,
    psi2: &[BigRational],
) -> RationalMatrix {
    let n = g.n();
    let mut s = vec![vec![BigRational::zero(); n + 1]; n + 1];
    for j in 1..=n {
        let pa = g.parents(j);
        #[allow(clippy::needless_range_loop)] // s is filled in both triangles
        for k in 1..j {
            let v: BigRational = pa.iter().map(|&i| &lambda[&(i, j)] * &s[i][k]).sum();
            s[k][j] = v.clone();
            s[j][k] = v;
        }
        let mut var = psi2[j - 1].clone();
        for &i in pa {
            for &k in pa {
                var += &lambda[&(i, j)] * &lambda[&(k, j)] * &s[i][k];
            }
        }
        s[j][j] = var;
    }
    let rows = (1..=n).map(|i| s[i][1..].to_vec()).collect();
    RationalMatrix::from_rows(rows).expect("square by construction")
}

/// Exact Ω membership: `a_i > Σ_{j,k ∈ pa(i)} λ_ji λ_ki σ_jk(a, λ)`.
pub fn check_omega(g: &Dag, theta: &ParameterAssignment, rule: &TrekRule) -> Result<(), TrekError> {
    theta.check_shape(g)?;
    for i in g.vertices() {
        let pa = g.parents(i);
        let mut bound = BigRational::zero();
        for &j in pa {
            for &k in pa {
                let s = rule.image(j, k).evaluate(|v| theta.value(v))?;
                bound += &theta.lambda[&(j, i)] * &theta.lambda[&(k, i)] * s;
            }
        }
        if theta.a[i - 1] <= bound {
            return Err(TrekError::OmegaViolation(i));
        }
    }
    Ok(())
}

/// `φ*_G(θ)`: the covariance matrix with entries the evaluated trek-rule
/// polynomials. Checked exactly for Ω membership and positive
/// definiteness.
pub fn model_covariance(g: &Dag, theta: &ParameterAssignment) -> Result<RationalMatrix, TrekError> {
    let rule = TrekRule::new(g);
    model_covariance_with(g, &rule, theta)
}

pub fn model_covariance_with(
    g: &Dag,
    rule: &TrekRule,
    theta: &ParameterAssignment,
) -> Result<RationalMatrix, TrekError> {
    check_omega(g, theta, rule)?;
    let n = g.n();
    let mut m = RationalMatrix::zeros(n, n);
    for i in 1..=n {
        for j in i..=n {
            let v = rule.image(i, j).evaluate(|v| theta.value(v))?;
            m.set(i - 1, j - 1, v.clone());
            m.set(j - 1, i - 1, v);
        }
    }
    if !m.is_positive_definite() {
        return Err(TrekError::NotPositiveDefinite);
    }
    Ok(m)
}

/// Inverts the parametrization: `a_i = σ_ii`,
/// `λ_{pa(j),j} = Σ_{pa(j),pa(j)}⁻¹ Σ_{pa(j),j}`, and `ψ_j²` from the
/// variance recursion.
pub fn recover_parameters(g: &Dag, sigma: &RationalMatrix) -> Result<ParameterAssignment, TrekError> {
    let n = g.n();
    if sigma.rows() != n || !sigma.is_positive_definite() {
        return Err(TrekError::InvalidCovariance(n));
    }
    let a: Vec<BigRational> = (0..n).map(|i| sigma.get(i, i).clone()).collect();
    let mut lambda = BTreeMap::new();
    let mut psi2 = Vec::with_capacity(n);
    for j in 1..=n {
        let pa: Vec<usize> = g.parents(j).iter().map(|&p| p - 1).collect();
        if pa.is_empty() {
            psi2.push(a[j - 1].clone());
            continue;
        }
        let s_pp = sigma.submatrix(&pa, &pa)?;
        let s_pj: Vec<BigRational> = pa.iter().map(|&p| sigma.get(p, j - 1).clone()).collect();
        let coef = s_pp.solve(&s_pj)?;
        let mut explained = BigRational::zero();
        for (x, &p) in pa.iter().enumerate() {
            for (y, &r) in pa.iter().enumerate() {
                explained += &coef[x] * &coef[y] * sigma.get(p, r);
            }
        }
        let noise = &a[j - 1] - explained;
        debug_assert!(noise.is_positive());
        psi2.push(noise);
        for (x, &p) in pa.iter().enumerate() {
            lambda.insert((p + 1, j), coef[x].clone());
        }
    }
    Ok(ParameterAssignment { a, lambda, psi2 })
}
