use core::fmt;

const KIND_SHIFT: u32 = 30;
const HI_SHIFT: u32 = 15;
const INDEX_MASK: u32 = (1 << HI_SHIFT) - 1;

/// Largest vertex index a variable can carry.
pub const MAX_INDEX: usize = INDEX_MASK as usize;

/// The three variable families of the model ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VarKind {
    /// `a_i`, the variance parameter of vertex `i`.
    NodeVariance,
    /// `λ_ij`, the regression weight of edge `i → j`.
    EdgeWeight,
    /// `σ_ij`, a covariance entry.
    Covariance,
}

/// A packed model variable.
///
/// The packing is chosen so that the integer order is the global variable
/// order: all `a_i` by `i`, then all `λ_ij` lexicographically, then all
/// `σ_ij` lexicographically.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(u32);

impl Var {
    pub fn node_variance(i: usize) -> Self {
        assert!(i <= MAX_INDEX, "vertex index {i} too large");
        Var(i as u32)
    }

    /// `λ_ij`; edges are numerically ordered so `i < j` is required.
    pub fn edge_weight(i: usize, j: usize) -> Self {
        assert!(i < j, "edge weight λ({i},{j}) requires i < j");
        assert!(j <= MAX_INDEX, "vertex index {j} too large");
        Var((1 << KIND_SHIFT) | ((i as u32) << HI_SHIFT) | j as u32)
    }

    /// `σ_ij`, symmetric: `sigma(j, i) == sigma(i, j)`.
    pub fn sigma(i: usize, j: usize) -> Self {
        let (lo, hi) = if i <= j { (i, j) } else { (j, i) };
        assert!(hi <= MAX_INDEX, "vertex index {hi} too large");
        Var((2 << KIND_SHIFT) | ((lo as u32) << HI_SHIFT) | hi as u32)
    }

    pub fn kind(self) -> VarKind {
        match self.0 >> KIND_SHIFT {
            0 => VarKind::NodeVariance,
            1 => VarKind::EdgeWeight,
            _ => VarKind::Covariance,
        }
    }

    /// Index pair of the variable; for `a_i` both components are `i`.
    pub fn indices(self) -> (usize, usize) {
        match self.kind() {
            VarKind::NodeVariance => (self.0 as usize, self.0 as usize),
            _ => (
                ((self.0 >> HI_SHIFT) & INDEX_MASK) as usize,
                (self.0 & INDEX_MASK) as usize,
            ),
        }
    }

    pub fn is_sigma(self) -> bool {
        self.kind() == VarKind::Covariance
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (i, j) = self.indices();
        match self.kind() {
            VarKind::NodeVariance => write!(f, "a{i}"),
            VarKind::EdgeWeight => write!(f, "l({i},{j})"),
            VarKind::Covariance => write!(f, "s({i},{j})"),
        }
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
