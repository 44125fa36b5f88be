use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};
use smallvec::SmallVec;

use super::var::Var;
use super::AlgebraError;

/// A monomial stored as sparse `(variable, exponent)` pairs sorted by
/// variable. Exponents are always positive.
///
/// `Ord` is the canonical term order: higher total degree first, then
/// lexicographic in the global variable order. `Greater` means "leads".
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(SmallVec<[(Var, u32); 6]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(v: Var) -> Self {
        Self::from_pairs([(v, 1)])
    }

    /// Builds a monomial from arbitrary pairs; repeated variables are merged
    /// and zero exponents dropped.
    pub fn from_pairs<I: IntoIterator<Item = (Var, u32)>>(pairs: I) -> Self {
        let mut v: SmallVec<[(Var, u32); 6]> = pairs.into_iter().filter(|p| p.1 > 0).collect();
        v.sort_unstable_by_key(|p| p.0);
        let mut out: SmallVec<[(Var, u32); 6]> = SmallVec::with_capacity(v.len());
        for (var, e) in v {
            match out.last_mut() {
                Some(last) if last.0 == var => last.1 += e,
                _ => out.push((var, e)),
            }
        }
        Monomial(out)
    }

    pub fn pairs(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|p| p.1).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0
            .binary_search_by_key(&v, |p| p.0)
            .map(|k| self.0[k].1)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// The monomial with every occurrence of `v` removed.
    fn without(&self, v: Var) -> Monomial {
        Monomial(self.0.iter().copied().filter(|p| p.0 != v).collect())
    }

    fn lex_cmp(&self, other: &Monomial) -> Ordering {
        for (x, y) in self.0.iter().zip(other.0.iter()) {
            if x.0 != y.0 {
                // The smaller variable id is the more significant one, so
                // the monomial holding it leads.
                return if x.0 < y.0 { Ordering::Greater } else { Ordering::Less };
            }
            if x.1 != y.1 {
                return x.1.cmp(&y.1);
            }
        }
        self.0.len().cmp(&other.0.len())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.lex_cmp(other))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, (v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Sparse polynomial with arbitrary-precision integer coefficients over the
/// model variables `a_i`, `λ_ij`, `σ_ij`.
///
/// Terms are kept sorted in canonical order (leading term first) with no
/// zero coefficients, so derived equality is structural equality. The
/// derived `Ord` compares term lists in canonical order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Poly {
    terms: Vec<(Monomial, BigInt)>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn var(v: Var) -> Self {
        Self::term(BigInt::one(), Monomial::var(v))
    }

    pub fn sigma(i: usize, j: usize) -> Self {
        Self::var(Var::sigma(i, j))
    }

    pub fn term(c: BigInt, m: Monomial) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Poly { terms: alloc::vec![(m, c)] }
        }
    }

    /// Canonicalizes an arbitrary list of terms: sorts, merges duplicates and
    /// drops zero coefficients.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigInt)>>(terms: I) -> Self {
        let mut v: Vec<(Monomial, BigInt)> = terms.into_iter().collect();
        v.sort_unstable_by(|x, y| y.0.cmp(&x.0));
        let mut out: Vec<(Monomial, BigInt)> = Vec::with_capacity(v.len());
        for (m, c) in v {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 += c,
                _ => {
                    if out.last().is_some_and(|l| l.1.is_zero()) {
                        out.pop();
                    }
                    out.push((m, c));
                }
            }
        }
        if out.last().is_some_and(|l| l.1.is_zero()) {
            out.pop();
        }
        Poly { terms: out }
    }

    pub fn terms(&self) -> &[(Monomial, BigInt)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.first().map(|t| t.0.degree())
    }

    pub fn leading_coefficient(&self) -> Option<&BigInt> {
        self.terms.first().map(|t| &t.1)
    }

    /// `self` or `-self`, whichever has a positive leading coefficient.
    /// Used to compare generators up to sign.
    pub fn normalize_sign(&self) -> Poly {
        match self.leading_coefficient() {
            Some(c) if c.is_negative() => -self,
            _ => self.clone(),
        }
    }

    /// Sorted, deduplicated list of the variables that occur.
    pub fn variables(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self
            .terms
            .iter()
            .flat_map(|t| t.0.pairs().iter().map(|p| p.0))
            .collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    fn merge(&self, other: &Poly, negate_other: bool) -> Poly {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let rhs = |c: &BigInt| if negate_other { -c } else { c.clone() };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0.clone(), rhs(&b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &a[i].1 + rhs(&b[j].1);
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|t| (t.0.clone(), rhs(&t.1))));
        Poly { terms: out }
    }

    fn product(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut raw = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                raw.push((m1.mul(m2), c1 * c2));
            }
        }
        Poly::from_terms(raw)
    }

    /// Renames the indices of every `σ_ij` through `f`; other variables are
    /// left alone.
    pub fn map_sigma_indices(&self, f: impl Fn(usize) -> usize) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(m, c)| {
            let pairs = m.pairs().iter().map(|&(v, e)| {
                if v.is_sigma() {
                    let (i, j) = v.indices();
                    (Var::sigma(f(i), f(j)), e)
                } else {
                    (v, e)
                }
            });
            (Monomial::from_pairs(pairs), c.clone())
        }))
    }

    /// Exact evaluation at a rational point.
    pub fn evaluate<F>(&self, mut value: F) -> Result<BigRational, AlgebraError>
    where
        F: FnMut(Var) -> Option<BigRational>,
    {
        let mut cache: BTreeMap<Var, BigRational> = BTreeMap::new();
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = BigRational::from_integer(c.clone());
            for &(v, e) in m.pairs() {
                let x = match cache.get(&v) {
                    Some(x) => x.clone(),
                    None => {
                        let x = value(v).ok_or(AlgebraError::UnassignedVariable(v))?;
                        cache.insert(v, x.clone());
                        x
                    }
                };
                t *= Pow::pow(x, e);
            }
            total += t;
        }
        Ok(total)
    }

    /// Applies the ring homomorphism sending each `σ_ij` to `images[σ_ij]`.
    ///
    /// The expansion is organised Horner-style on the most significant
    /// variable, which keeps determinant-shaped inputs from expanding every
    /// term separately.
    pub fn substitute_sigma(&self, images: &BTreeMap<Var, Poly>) -> Result<Poly, AlgebraError> {
        for v in self.variables() {
            if !v.is_sigma() {
                return Err(AlgebraError::NonSigmaVariable(v));
            }
            if !images.contains_key(&v) {
                return Err(AlgebraError::UnmappedSigma(v));
            }
        }
        let terms: Vec<(Monomial, BigInt)> = self.terms.clone();
        Ok(horner(terms, images))
    }
}

fn horner(terms: Vec<(Monomial, BigInt)>, images: &BTreeMap<Var, Poly>) -> Poly {
    let lead = terms
        .iter()
        .filter_map(|t| t.0.pairs().first().map(|p| p.0))
        .min();
    let Some(v) = lead else {
        // all terms constant
        return Poly::from_terms(terms);
    };
    let mut groups: BTreeMap<u32, Vec<(Monomial, BigInt)>> = BTreeMap::new();
    for (m, c) in terms {
        let e = m.exponent(v);
        let rest = if e == 0 { m } else { m.without(v) };
        groups.entry(e).or_default().push((rest, c));
    }
    let image = &images[&v];
    let mut acc = Poly::zero();
    let mut prev: Option<u32> = None;
    for (e, group) in groups.into_iter().rev() {
        if let Some(p) = prev {
            acc = &acc * &image.pow(p - e);
        }
        acc = &acc + &horner(group, images);
        prev = Some(e);
    }
    if let Some(p) = prev {
        if p > 0 {
            acc = &acc * &image.pow(p);
        }
    }
    acc
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.merge(rhs, false)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.merge(rhs, true)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.product(rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Determinant of a square matrix of polynomials by Laplace expansion along
/// rows, memoised on the set of remaining columns.
pub fn poly_determinant(m: &[Vec<Poly>]) -> Poly {
    let k = m.len();
    if k == 0 {
        return Poly::one();
    }
    assert!(k <= 20, "symbolic determinant too large");
    assert!(m.iter().all(|r| r.len() == k), "matrix must be square");
    let mut memo: BTreeMap<u32, Poly> = BTreeMap::new();
    det_rec(m, 0, (1u32 << k) - 1, &mut memo)
}

fn det_rec(m: &[Vec<Poly>], row: usize, cols: u32, memo: &mut BTreeMap<u32, Poly>) -> Poly {
    if row == m.len() {
        return Poly::one();
    }
    if let Some(p) = memo.get(&cols) {
        return p.clone();
    }
    let mut acc = Poly::zero();
    let mut sign_positive = true;
    for c in 0..m.len() {
        if cols & (1 << c) == 0 {
            continue;
        }
        let entry = &m[row][c];
        if !entry.is_zero() {
            let sub = det_rec(m, row + 1, cols & !(1 << c), memo);
            let t = entry * &sub;
            acc = if sign_positive { &acc + &t } else { &acc - &t };
        }
        sign_positive = !sign_positive;
    }
    memo.insert(cols, acc.clone());
    acc
}

/// Symbolic minor `det Σ_{rows, cols}` with entries `σ_{min(i,j),max(i,j)}`,
/// rows and columns taken in the given order.
pub fn sigma_minor(rows: &[usize], cols: &[usize]) -> Poly {
    assert_eq!(rows.len(), cols.len(), "minor needs equally many rows and columns");
    let m: Vec<Vec<Poly>> = rows
        .iter()
        .map(|&i| cols.iter().map(|&j| Poly::sigma(i, j)).collect())
        .collect();
    poly_determinant(&m)
}
