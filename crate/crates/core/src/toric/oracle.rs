//! Brute-force check of the facet description: enumerate the vertices of
//! the polyhedron cut out by `polytope_system` and measure its normalized
//! volume by a pulling triangulation. Exact `i128` arithmetic throughout;
//! the size guard keeps every intermediate far from overflow.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::Zero;

use super::{polytope_system, LinearSystem, ToricError};
use crate::graph::Dag;

pub const ORACLE_MAX_N: usize = 5;

type Q = Ratio<i128>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolytopeOracle {
    /// Vertices in the coordinates of `polytope_system`, sorted.
    pub vertices: Vec<Vec<BigRational>>,
    /// Affine dimension of the polytope.
    pub dimension: usize,
    /// Volume in units of the smallest simplex of the lattice generated by
    /// differences of vertices.
    pub normalized_volume: BigUint,
    /// Number of simplices in the triangulation.
    pub simplices: usize,
}

/// Vertices and normalized volume of the polytope described by
/// `polytope_system(t)`; forests up to `ORACLE_MAX_N` vertices.
pub fn polytope_vertex_oracle(t: &Dag) -> Result<PolytopeOracle, ToricError> {
    if t.n() > ORACLE_MAX_N {
        return Err(ToricError::TooLarge { n: t.n(), max: ORACLE_MAX_N });
    }
    let sys = polytope_system(t)?;
    let verts = enumerate_vertices(&sys);
    let points: Vec<Vec<i128>> = verts
        .iter()
        .map(|v| v.iter().map(|q| q.is_integer().then(|| q.to_integer())).collect::<Option<_>>())
        .collect::<Option<_>>()
        .ok_or(ToricError::NonIntegralVertex)?;
    let (volume, dimension, simplices) = normalized_volume(&sys, &points);
    let vertices = verts
        .iter()
        .map(|v| {
            v.iter()
                .map(|q| BigRational::new(BigInt::from(*q.numer()), BigInt::from(*q.denom())))
                .collect()
        })
        .collect();
    Ok(PolytopeOracle {
        vertices,
        dimension,
        normalized_volume: BigUint::from(volume),
        simplices,
    })
}

fn row_i128(c: &[i64]) -> Vec<i128> {
    c.iter().map(|&x| i128::from(x)).collect()
}

/// Every point where `dim` linearly independent constraints (the
/// equalities plus a choice of inequalities) are tight and all the others
/// hold. Subsets are scanned depth first with incremental elimination, so
/// a dependent prefix prunes all its supersets.
fn enumerate_vertices(sys: &LinearSystem) -> Vec<Vec<Q>> {
    let d = sys.dim();
    let mut basis: Vec<(usize, Vec<i128>)> = Vec::new();
    for (c, r) in &sys.equalities {
        let mut row = row_i128(c);
        row.push(i128::from(*r));
        match reduce(&basis, row, d) {
            Some(b) => basis.push(b),
            None => return Vec::new(),
        }
    }
    let rows: Vec<Vec<i128>> = sys
        .inequalities
        .iter()
        .map(|(c, r)| {
            let mut row = row_i128(c);
            row.push(i128::from(*r));
            row
        })
        .collect();
    let mut found = BTreeSet::new();
    scan(sys, &rows, 0, &mut basis, &mut found);
    found.into_iter().collect()
}

fn scan(
    sys: &LinearSystem,
    rows: &[Vec<i128>],
    from: usize,
    basis: &mut Vec<(usize, Vec<i128>)>,
    found: &mut BTreeSet<Vec<Q>>,
) {
    let d = sys.dim();
    if basis.len() == d {
        let x = back_substitute(basis, d);
        if feasible(sys, &x) {
            found.insert(x);
        }
        return;
    }
    if rows.len() - from < d - basis.len() {
        return;
    }
    for k in from..rows.len() {
        if let Some(b) = reduce(basis, rows[k].clone(), d) {
            basis.push(b);
            scan(sys, rows, k + 1, basis, found);
            basis.pop();
        }
    }
}

/// Eliminate the pivots of `basis` from an augmented row; `None` if the
/// coefficient part vanishes.
fn reduce(basis: &[(usize, Vec<i128>)], mut row: Vec<i128>, d: usize) -> Option<(usize, Vec<i128>)> {
    for (pc, b) in basis {
        let f = row[*pc];
        if f != 0 {
            let p = b[*pc];
            for (x, y) in row.iter_mut().zip(b) {
                *x = *x * p - y * f;
            }
            let g = row.iter().fold(0i128, |g, x| g.gcd(x));
            if g > 1 {
                row.iter_mut().for_each(|x| *x /= g);
            }
        }
    }
    let pivot = (0..d).find(|&c| row[c] != 0)?;
    Some((pivot, row))
}

/// Solve a full-rank system kept in the form produced by `reduce`: each row
/// vanishes on the pivots of the rows before it.
fn back_substitute(basis: &[(usize, Vec<i128>)], d: usize) -> Vec<Q> {
    let mut x = vec![Q::zero(); d];
    for (pc, row) in basis.iter().rev() {
        let mut acc = Q::from(row[d]);
        for c in 0..d {
            if c != *pc && row[c] != 0 {
                acc -= x[c] * row[c];
            }
        }
        x[*pc] = acc / row[*pc];
    }
    x
}

fn feasible(sys: &LinearSystem, x: &[Q]) -> bool {
    let dot = |c: &[i64]| -> Q { c.iter().zip(x).map(|(&a, b)| b * i128::from(a)).sum() };
    sys.equalities.iter().all(|(c, r)| dot(c) == Q::from(i128::from(*r)))
        && sys.inequalities.iter().all(|(c, r)| dot(c) >= Q::from(i128::from(*r)))
}

/// Integer row echelon basis of the lattice spanned by `rows`, with the
/// pivot column of each basis row.
fn lattice_basis(rows: Vec<Vec<i128>>, d: usize) -> Vec<(usize, Vec<i128>)> {
    let mut pool: Vec<Vec<i128>> = rows.into_iter().filter(|r| r.iter().any(|&x| x != 0)).collect();
    let mut basis = Vec::new();
    for col in 0..d {
        loop {
            let nz: Vec<usize> = (0..pool.len()).filter(|&r| pool[r][col] != 0).collect();
            if nz.len() <= 1 {
                if let Some(&r) = nz.first() {
                    let mut row = pool.swap_remove(r);
                    if row[col] < 0 {
                        row.iter_mut().for_each(|x| *x = -*x);
                    }
                    basis.push((col, row));
                }
                break;
            }
            let &piv = nz.iter().min_by_key(|&&r| pool[r][col].abs()).unwrap();
            let prow = pool[piv].clone();
            for &r in &nz {
                if r != piv {
                    let q = Integer::div_floor(&pool[r][col], &prow[col]);
                    for (x, y) in pool[r].iter_mut().zip(&prow) {
                        *x -= q * y;
                    }
                }
            }
        }
        pool.retain(|r| r.iter().any(|&x| x != 0));
    }
    basis
}

fn rank(rows: &[Vec<i128>]) -> usize {
    let d = rows.first().map_or(0, Vec::len);
    lattice_basis(rows.to_vec(), d).len()
}

fn det(mut a: Vec<Vec<i128>>) -> i128 {
    let k = a.len();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for c in 0..k {
        let Some(p) = (c..k).find(|&r| a[r][c] != 0) else { return 0 };
        if p != c {
            a.swap(c, p);
            sign = -sign;
        }
        for i in c + 1..k {
            for j in c + 1..k {
                a[i][j] = (a[c][c] * a[i][j] - a[i][c] * a[c][j]) / prev;
            }
            a[i][c] = 0;
        }
        prev = a[c][c];
    }
    if k == 0 {
        1
    } else {
        sign * a[k - 1][k - 1]
    }
}

struct Triangulator<'a> {
    points: &'a [Vec<i128>],
    tight: Vec<u32>,
    dims: BTreeMap<u32, usize>,
    faces: BTreeMap<u32, Vec<u32>>,
}

impl Triangulator<'_> {
    fn affine_dim(&mut self, mask: u32) -> usize {
        if let Some(&d) = self.dims.get(&mask) {
            return d;
        }
        let members: Vec<usize> = (0..self.points.len()).filter(|&k| mask & (1 << k) != 0).collect();
        let base = &self.points[members[0]];
        let diffs: Vec<Vec<i128>> = members[1..]
            .iter()
            .map(|&k| self.points[k].iter().zip(base).map(|(a, b)| a - b).collect())
            .collect();
        let r = if diffs.is_empty() { 0 } else { rank(&diffs) };
        self.dims.insert(mask, r);
        r
    }

    /// Pull from the lowest-numbered vertex of the face, recursing into the
    /// facets that do not contain it.
    fn triangulate(&mut self, mask: u32, dim: usize, out: &mut Vec<u32>) {
        if mask.count_ones() as usize == dim + 1 {
            out.push(mask);
            return;
        }
        if let Some(done) = self.faces.get(&mask) {
            out.extend_from_slice(done);
            return;
        }
        let start = out.len();
        let v = 1u32 << mask.trailing_zeros();
        let mut facets = BTreeSet::new();
        for t in 0..self.tight.len() {
            let f = mask & self.tight[t];
            if f != 0 && f & v == 0 && !facets.contains(&f) && self.affine_dim(f) + 1 == dim {
                facets.insert(f);
            }
        }
        for f in facets {
            let mut sub = Vec::new();
            self.triangulate(f, dim - 1, &mut sub);
            out.extend(sub.into_iter().map(|s| s | v));
        }
        self.faces.insert(mask, out[start..].to_vec());
    }
}

/// Returns (normalized volume, dimension, number of simplices).
fn normalized_volume(sys: &LinearSystem, points: &[Vec<i128>]) -> (u128, usize, usize) {
    assert!(points.len() <= 32);
    let d = sys.dim();
    let dot = |c: &[i64], p: &[i128]| c.iter().zip(p).map(|(&a, b)| i128::from(a) * b).sum::<i128>();
    let tight = sys
        .inequalities
        .iter()
        .map(|(c, r)| {
            (0..points.len())
                .filter(|&k| dot(c, &points[k]) == i128::from(*r))
                .fold(0u32, |m, k| m | (1 << k))
        })
        .collect();
    let diffs: Vec<Vec<i128>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(&points[0]).map(|(a, b)| a - b).collect())
        .collect();
    let basis = lattice_basis(diffs, d);
    let dim = basis.len();
    let pivots: Vec<usize> = basis.iter().map(|b| b.0).collect();
    let lattice_det: i128 = basis.iter().map(|(c, row)| row[*c]).product();

    let mut tr = Triangulator { points, tight, dims: BTreeMap::new(), faces: BTreeMap::new() };
    let all = if points.len() == 32 { u32::MAX } else { (1u32 << points.len()) - 1 };
    let mut simplices = Vec::new();
    tr.triangulate(all, dim, &mut simplices);

    let mut total: u128 = 0;
    for s in &simplices {
        let members: Vec<usize> = (0..points.len()).filter(|&k| s & (1 << k) != 0).collect();
        let base = &points[members[0]];
        let e: Vec<Vec<i128>> = members[1..]
            .iter()
            .map(|&k| pivots.iter().map(|&c| points[k][c] - base[c]).collect())
            .collect();
        let v = det(e).abs();
        assert!(v % lattice_det == 0, "simplex volume not a lattice multiple");
        total += (v / lattice_det) as u128;
    }
    (total, dim, simplices.len())
}
