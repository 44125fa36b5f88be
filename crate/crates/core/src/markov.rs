//! d-separation, the conditional-independence statements a DAG implies, and
//! their determinantal constraints.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::{sigma_minor, AlgebraError, Poly, RationalMatrix};
use crate::graph::{describe_set, Dag, GraphError};

/// `A ⊥ B | C` with `A`, `B` nonempty and the three sets pairwise disjoint.
/// Canonical form: each set sorted and `min(A) < min(B)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CiStatement {
    a: Vec<usize>,
    b: Vec<usize>,
    c: Vec<usize>,
}

impl CiStatement {
    pub fn new(a: &[usize], b: &[usize], c: &[usize]) -> Result<Self, GraphError> {
        let norm = |s: &[usize]| {
            let mut v = s.to_vec();
            v.sort_unstable();
            v.dedup();
            v
        };
        let (mut a, mut b, c) = (norm(a), norm(b), norm(c));
        if a.is_empty() || b.is_empty() {
            return Err(GraphError::Shape("a statement with nonempty A and B"));
        }
        if !disjoint(&a, &b) || !disjoint(&a, &c) || !disjoint(&b, &c) {
            return Err(GraphError::OverlappingSets);
        }
        if b[0] < a[0] {
            core::mem::swap(&mut a, &mut b);
        }
        Ok(CiStatement { a, b, c })
    }

    pub fn a(&self) -> &[usize] {
        &self.a
    }

    pub fn b(&self) -> &[usize] {
        &self.b
    }

    pub fn c(&self) -> &[usize] {
        &self.c
    }

    /// Row indices of `Σ_{A∪C, B∪C}`: `A` then `C`.
    pub fn row_indices(&self) -> Vec<usize> {
        self.a.iter().chain(self.c.iter()).copied().collect()
    }

    /// Column indices of `Σ_{A∪C, B∪C}`: `B` then `C`.
    pub fn col_indices(&self) -> Vec<usize> {
        self.b.iter().chain(self.c.iter()).copied().collect()
    }
}

impl fmt::Display for CiStatement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} _||_ {} | {}",
            describe_set(&self.a),
            describe_set(&self.b),
            describe_set(&self.c)
        )
    }
}

fn disjoint(x: &[usize], y: &[usize]) -> bool {
    x.iter().all(|v| !y.contains(v))
}

/// Whether `C` d-separates `A` from `B`.
///
/// Reachability over (vertex, direction of entry) states: a trail may pass
/// a non-collider only outside `C`, and a collider only if it is an ancestor
/// of `C` (itself included).
pub fn d_separated(g: &Dag, a: &[usize], b: &[usize], c: &[usize]) -> Result<bool, GraphError> {
    for &v in a.iter().chain(b).chain(c) {
        g.check_vertex(v)?;
    }
    if !disjoint(a, b) || !disjoint(a, c) || !disjoint(b, c) {
        return Err(GraphError::OverlappingSets);
    }
    Ok(!reachable_given(g, a, b, c))
}

fn reachable_given(g: &Dag, a: &[usize], b: &[usize], c: &[usize]) -> bool {
    let n = g.n();
    let mut in_c = vec![false; n + 1];
    for &v in c {
        in_c[v] = true;
    }
    let mut in_b = vec![false; n + 1];
    for &v in b {
        in_b[v] = true;
    }
    let anc_c = g.ancestors_of(c);
    // visited[v][0]: entered from a child (moving up); [1]: from a parent.
    let mut visited = vec![[false; 2]; n + 1];
    let mut stack: Vec<(usize, usize)> = a.iter().map(|&v| (v, 0)).collect();
    while let Some((v, dir)) = stack.pop() {
        if visited[v][dir] {
            continue;
        }
        visited[v][dir] = true;
        if in_b[v] {
            return true;
        }
        if dir == 0 {
            if !in_c[v] {
                stack.extend(g.parents(v).iter().map(|&p| (p, 0)));
                stack.extend(g.children(v).iter().map(|&ch| (ch, 1)));
            }
        } else {
            if !in_c[v] {
                stack.extend(g.children(v).iter().map(|&ch| (ch, 1)));
            }
            if anc_c[v] {
                stack.extend(g.parents(v).iter().map(|&p| (p, 0)));
            }
        }
    }
    false
}

/// Every canonical triple `(A, B, C)` on `1..=n` with `|A|, |B| ≤ amax` and
/// `|C| ≤ cmax`, sorted.
pub fn candidate_statements(n: usize, amax: usize, cmax: usize) -> Vec<CiStatement> {
    assert!(n < 32, "statement enumeration supports at most 31 vertices");
    let subsets = |mask: u32, max: usize, nonempty: bool| -> Vec<u32> {
        // all submasks of `mask` with bounded popcount
        let mut out = Vec::new();
        let mut s = mask;
        loop {
            let k = s.count_ones() as usize;
            if k <= max && (!nonempty || k > 0) {
                out.push(s);
            }
            if s == 0 {
                break;
            }
            s = (s - 1) & mask;
        }
        out
    };
    let to_vec = |m: u32| -> Vec<usize> { (0..n).filter(|&i| m & (1 << i) != 0).map(|i| i + 1).collect() };
    let full: u32 = if n == 0 { 0 } else { (1u32 << n) - 1 };
    let mut out = Vec::new();
    for am in subsets(full, amax, true) {
        let amin = am.trailing_zeros();
        for bm in subsets(full & !am, amax, true) {
            if bm.trailing_zeros() < amin {
                continue;
            }
            for cm in subsets(full & !am & !bm, cmax, false) {
                out.push(CiStatement { a: to_vec(am), b: to_vec(bm), c: to_vec(cm) });
            }
        }
    }
    out.sort();
    out
}

/// All canonical d-separation statements within the size caps, sorted by
/// `(A, B, C)`. No implication-based pruning.
pub fn enumerate_ci_statements(g: &Dag, amax: usize, cmax: usize) -> Vec<CiStatement> {
    candidate_statements(g.n(), amax, cmax)
        .into_iter()
        .filter(|s| !reachable_given(g, &s.a, &s.b, &s.c))
        .collect()
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

/// The `(|C|+1)`-minors of the symbolic `Σ_{A∪C, B∪C}`, row subsets and
/// column subsets in lexicographic order of their positions.
pub fn ci_minor_polynomials(stmt: &CiStatement) -> Vec<Poly> {
    let rows = stmt.row_indices();
    let cols = stmt.col_indices();
    let k = stmt.c.len() + 1;
    let mut out = Vec::new();
    for rs in combinations(rows.len(), k) {
        let r: Vec<usize> = rs.iter().map(|&x| rows[x]).collect();
        for cs in combinations(cols.len(), k) {
            let c: Vec<usize> = cs.iter().map(|&x| cols[x]).collect();
            out.push(sigma_minor(&r, &c));
        }
    }
    out
}

/// `rank Σ_{A∪C, B∪C} ≤ |C|`, exactly. Vertices are 1-based.
pub fn ci_rank_test(sigma: &RationalMatrix, stmt: &CiStatement) -> Result<bool, AlgebraError> {
    let idx = |v: &usize| -> Result<usize, AlgebraError> {
        if *v == 0 || *v > sigma.rows() || *v > sigma.cols() {
            Err(AlgebraError::IndexOutOfRange { index: *v, bound: sigma.rows() })
        } else {
            Ok(*v - 1)
        }
    };
    let rows: Vec<usize> = stmt.row_indices().iter().map(idx).collect::<Result<_, _>>()?;
    let cols: Vec<usize> = stmt.col_indices().iter().map(idx).collect::<Result<_, _>>()?;
    Ok(sigma.submatrix(&rows, &cols)?.rank() <= stmt.c.len())
}
