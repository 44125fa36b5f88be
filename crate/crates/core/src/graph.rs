//! Directed acyclic graphs on vertices `1..=n` and the structural queries the
//! other modules are built on.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("cycle detected")]
    Cycle,
    #[error("unknown vertex {vertex} (graph has {n} vertices)")]
    UnknownVertex { vertex: usize, n: usize },
    #[error("duplicate edge {0} -> {1}")]
    DuplicateEdge(usize, usize),
    #[error("edge {0} -> {1} is not in the graph")]
    EdgeNotFound(usize, usize),
    #[error("label table has {labels} entries for {n} vertices")]
    LabelCount { labels: usize, n: usize },
    #[error("vertex sets overlap")]
    OverlappingSets,
    #[error("graph is not {0}")]
    Shape(&'static str),
}

/// A DAG on vertices `1..=n` whose edges all satisfy `i < j`.
///
/// Graphs built from arbitrarily numbered input are relabeled by a
/// topological sort; `labels` then records the original name of every
/// vertex.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dag {
    n: usize,
    edges: Vec<(usize, usize)>,
    parents: Vec<Vec<usize>>,
    children: Vec<Vec<usize>>,
    labels: Option<Vec<String>>,
}

impl Dag {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Dag::assemble(n, Vec::new(), None)
    }

    /// Builds a DAG from edges over `1..=n`. If some edge points from a
    /// larger to a smaller vertex, the graph is relabeled and the original
    /// numbers are kept as labels.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        validate(n, edges)?;
        if edges.iter().all(|&(i, j)| i < j) {
            return Ok(Dag::assemble(n, edges.to_vec(), None));
        }
        let names = (1..=n).map(|v| v.to_string()).collect();
        Dag::relabeled(n, edges, names)
    }

    /// Builds a DAG over named vertices (`labels[v - 1]` names vertex `v` of
    /// the input numbering) and always renumbers by topological order.
    pub fn from_labeled(labels: Vec<String>, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let n = labels.len();
        validate(n, edges)?;
        Dag::relabeled(n, edges, labels)
    }

    fn relabeled(n: usize, edges: &[(usize, usize)], names: Vec<String>) -> Result<Self, GraphError> {
        let order = topological_order(n, edges)?;
        let mut new_id = vec![0usize; n + 1];
        for (pos, &v) in order.iter().enumerate() {
            new_id[v] = pos + 1;
        }
        let mapped: Vec<(usize, usize)> = edges.iter().map(|&(i, j)| (new_id[i], new_id[j])).collect();
        let labels = order.iter().map(|&v| names[v - 1].clone()).collect();
        Ok(Dag::assemble(n, mapped, Some(labels)))
    }

    fn assemble(n: usize, mut edges: Vec<(usize, usize)>, labels: Option<Vec<String>>) -> Self {
        edges.sort_unstable();
        let mut parents = vec![Vec::new(); n + 1];
        let mut children = vec![Vec::new(); n + 1];
        for &(i, j) in &edges {
            debug_assert!(i < j);
            parents[j].push(i);
            children[i].push(j);
        }
        for list in parents.iter_mut().chain(children.iter_mut()) {
            list.sort_unstable();
        }
        Dag { n, edges, parents, children, labels }
    }

    /// Replaces the label table.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, GraphError> {
        if labels.len() != self.n {
            return Err(GraphError::LabelCount { labels: labels.len(), n: self.n });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> core::ops::RangeInclusive<usize> {
        1..=self.n
    }

    /// Edges sorted lexicographically.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.edges.binary_search(&(i, j)).is_ok()
    }

    pub fn parents(&self, v: usize) -> &[usize] {
        &self.parents[v]
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Original name of `v`, or its number when no label table is present.
    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v - 1].clone(),
            None => v.to_string(),
        }
    }

    pub fn vertex_by_label(&self, name: &str) -> Option<usize> {
        self.vertices().find(|&v| self.label(v) == name)
    }

    pub fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v == 0 || v > self.n {
            Err(GraphError::UnknownVertex { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    /// `reach[u][v]` is true iff there is a directed path (possibly empty)
    /// from `u` to `v`.
    pub fn reachability(&self) -> Vec<Vec<bool>> {
        let mut reach = vec![vec![false; self.n + 1]; self.n + 1];
        for u in (1..=self.n).rev() {
            reach[u][u] = true;
            for &c in &self.children[u] {
                let (lo, hi) = reach.split_at_mut(c);
                for (r, &below) in lo[u].iter_mut().zip(&hi[0]).skip(c) {
                    *r |= below;
                }
            }
        }
        reach
    }

    /// Ancestors of the given vertices, the vertices themselves included.
    pub fn ancestors_of(&self, vs: &[usize]) -> Vec<bool> {
        let mut mark = vec![false; self.n + 1];
        let mut stack: Vec<usize> = vs.to_vec();
        while let Some(v) = stack.pop() {
            if !mark[v] {
                mark[v] = true;
                stack.extend_from_slice(&self.parents[v]);
            }
        }
        mark
    }

    /// Descendants of `v`, `v` itself included.
    pub fn descendants_of(&self, v: usize) -> Vec<bool> {
        let mut mark = vec![false; self.n + 1];
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            if !mark[u] {
                mark[u] = true;
                stack.extend_from_slice(&self.children[u]);
            }
        }
        mark
    }

    /// Undirected neighbours of `v`.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.parents[v].iter().chain(self.children[v].iter()).copied()
    }

    pub fn sources(&self) -> Vec<usize> {
        self.vertices().filter(|&v| self.parents[v].is_empty()).collect()
    }

    pub fn sinks(&self) -> Vec<usize> {
        self.vertices().filter(|&v| self.children[v].is_empty()).collect()
    }

    /// Connected components of the underlying undirected graph, each sorted,
    /// ordered by smallest vertex.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n + 1];
        let mut out = Vec::new();
        for s in self.vertices() {
            if seen[s] {
                continue;
            }
            let mut comp = Vec::new();
            let mut queue = VecDeque::from([s]);
            seen[s] = true;
            while let Some(v) = queue.pop_front() {
                comp.push(v);
                for w in self.neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Induced subgraph on `s`, renumbered in increasing order. Labels of
    /// the kept vertices carry over.
    pub fn induced_subgraph(&self, s: &[usize]) -> Result<Dag, GraphError> {
        let keep: BTreeSet<usize> = s.iter().copied().collect();
        for &v in &keep {
            self.check_vertex(v)?;
        }
        let mut new_id = vec![0usize; self.n + 1];
        for (k, &v) in keep.iter().enumerate() {
            new_id[v] = k + 1;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(i, j)| new_id[i] > 0 && new_id[j] > 0)
            .map(|&(i, j)| (new_id[i], new_id[j]))
            .collect();
        let labels = keep.iter().map(|&v| self.label(v)).collect();
        Ok(Dag::assemble(keep.len(), edges, Some(labels)))
    }

    /// The same graph with edge `e` deleted.
    pub fn without_edge(&self, e: (usize, usize)) -> Result<Dag, GraphError> {
        if !self.has_edge(e.0, e.1) {
            return Err(GraphError::EdgeNotFound(e.0, e.1));
        }
        let edges = self.edges.iter().copied().filter(|&f| f != e).collect();
        Ok(Dag::assemble(self.n, edges, self.labels.clone()))
    }

    /// Connected components of the graph with `e` removed, each as an
    /// induced subgraph with labels preserved.
    pub fn components_after_edge_removal(&self, e: (usize, usize)) -> Result<Vec<Dag>, GraphError> {
        let g = self.without_edge(e)?;
        g.connected_components()
            .iter()
            .map(|c| g.induced_subgraph(c))
            .collect()
    }

    pub fn classify(&self) -> StructureReport {
        let components = self.connected_components().len();
        let is_forest = self.edges.len() + components == self.n;
        let is_tree = is_forest && components == 1;
        let sources = self.sources();
        let sinks = self.sinks();
        let is_rooted_directed_tree =
            is_tree && self.vertices().all(|v| self.parents[v].len() <= 1);
        let is_downward_directed =
            is_tree && self.vertices().all(|v| self.children[v].len() <= 1);
        let leaves = if is_rooted_directed_tree { sinks.clone() } else { Vec::new() };
        StructureReport {
            is_forest,
            is_tree,
            is_rooted_directed_tree,
            is_downward_directed,
            leaves,
            sources,
            sinks,
        }
    }
}

impl core::fmt::Debug for Dag {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "Dag(n={}, edges={:?}", self.n, self.edges)?;
        if let Some(l) = &self.labels {
            write!(f, ", labels={l:?}")?;
        }
        f.write_str(")")
    }
}

/// Shape facts about a DAG. Trees are DAGs whose underlying undirected
/// graph is a tree (polytrees).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureReport {
    pub is_forest: bool,
    pub is_tree: bool,
    /// A tree with all edges directed away from a single source.
    pub is_rooted_directed_tree: bool,
    /// A tree with all edges pointing towards a single sink.
    pub is_downward_directed: bool,
    /// Childless vertices of a rooted directed tree; empty otherwise.
    pub leaves: Vec<usize>,
    pub sources: Vec<usize>,
    pub sinks: Vec<usize>,
}

/// A split of the vertices into hidden and observed sets.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexPartition {
    hidden: Vec<usize>,
    observed: Vec<usize>,
}

impl VertexPartition {
    pub fn new(n: usize, hidden: &[usize]) -> Result<Self, GraphError> {
        let h: BTreeSet<usize> = hidden.iter().copied().collect();
        if let Some(&v) = h.iter().find(|&&v| v == 0 || v > n) {
            return Err(GraphError::UnknownVertex { vertex: v, n });
        }
        let observed = (1..=n).filter(|v| !h.contains(v)).collect();
        Ok(VertexPartition { hidden: h.into_iter().collect(), observed })
    }

    pub fn hidden(&self) -> &[usize] {
        &self.hidden
    }

    pub fn observed(&self) -> &[usize] {
        &self.observed
    }

    pub fn is_hidden(&self, v: usize) -> bool {
        self.hidden.binary_search(&v).is_ok()
    }

    /// No edge runs from an observed to a hidden vertex.
    pub fn is_upstream(&self, g: &Dag) -> bool {
        g.edges().iter().all(|&(i, j)| !(self.is_hidden(j) && !self.is_hidden(i)))
    }
}

fn validate(n: usize, edges: &[(usize, usize)]) -> Result<(), GraphError> {
    let mut seen = BTreeSet::new();
    for &(i, j) in edges {
        for v in [i, j] {
            if v == 0 || v > n {
                return Err(GraphError::UnknownVertex { vertex: v, n });
            }
        }
        if i == j {
            return Err(GraphError::Cycle);
        }
        if !seen.insert((i, j)) {
            return Err(GraphError::DuplicateEdge(i, j));
        }
    }
    Ok(())
}

/// Vertices sorted by (longest-path depth from a source, input number);
/// errors on cycles.
fn topological_order(n: usize, edges: &[(usize, usize)]) -> Result<Vec<usize>, GraphError> {
    let mut indeg = vec![0usize; n + 1];
    let mut out = vec![Vec::new(); n + 1];
    for &(i, j) in edges {
        indeg[j] += 1;
        out[i].push(j);
    }
    let mut depth = vec![0usize; n + 1];
    let mut queue: VecDeque<usize> = (1..=n).filter(|&v| indeg[v] == 0).collect();
    let mut visited = 0;
    while let Some(v) = queue.pop_front() {
        visited += 1;
        for &w in &out[v] {
            depth[w] = depth[w].max(depth[v] + 1);
            indeg[w] -= 1;
            if indeg[w] == 0 {
                queue.push_back(w);
            }
        }
    }
    if visited != n {
        return Err(GraphError::Cycle);
    }
    let mut order: Vec<usize> = (1..=n).collect();
    order.sort_by_key(|&v| (depth[v], v));
    Ok(order)
}

/// A short human-readable description used in error messages.
pub fn describe_set(s: &[usize]) -> String {
    let items: Vec<String> = s.iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", items.join(","))
}
