//! Finite simple graphs with named vertices.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A finite simple graph. Vertices keep their insertion order, which fixes
/// the column layout of rigidity matrices; every edge is stored as an index
/// pair `(i, j)` with `i < j`.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    names: Vec<String>,
    index: HashMap<String, usize>,
    edges: Vec<(usize, usize)>,
    adj: Vec<BTreeSet<usize>>,
}

impl Graph {
    pub fn empty() -> Self {
        Self {
            names: Vec::new(),
            index: HashMap::new(),
            edges: Vec::new(),
            adj: Vec::new(),
        }
    }

    pub fn new<S: AsRef<str>>(vertices: &[S], edges: &[(S, S)]) -> Result<Self> {
        let mut g = Self::empty();
        for v in vertices {
            g.add_vertex(v.as_ref())?;
        }
        for (a, b) in edges {
            let i = g.require(a.as_ref())?;
            let j = g.require(b.as_ref())?;
            g.add_edge(i, j)?;
        }
        Ok(g)
    }

    /// Graph on vertices named `"0"`, …, `"n-1"`.
    pub fn from_indices(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty();
        for i in 0..n {
            g.add_vertex(&i.to_string())?;
        }
        for &(i, j) in edges {
            g.add_edge(i, j)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let edges: Vec<_> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        Self::from_indices(n, &edges).expect("complete graph is simple")
    }

    /// Two copies of `K4` sharing one vertex: 7 vertices, 12 edges.
    pub fn double_k4() -> Self {
        let mut edges = Vec::new();
        for block in [[0, 1, 2, 3], [3, 4, 5, 6]] {
            for a in 0..4 {
                for b in a + 1..4 {
                    edges.push((block[a], block[b]));
                }
            }
        }
        Self::from_indices(7, &edges).unwrap()
    }

    /// The triangular prism: two triangles joined by a perfect matching.
    pub fn prism() -> Self {
        Self::from_indices(
            6,
            &[
                (0, 1),
                (1, 2),
                (0, 2),
                (3, 4),
                (4, 5),
                (3, 5),
                (0, 3),
                (1, 4),
                (2, 5),
            ],
        )
        .unwrap()
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_indices(n, &edges).unwrap()
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn require(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::InvalidGraph(format!("unknown vertex \"{name}\"")))
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_names(&self, e: (usize, usize)) -> (String, String) {
        (self.names[e.0].clone(), self.names[e.1].clone())
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().copied()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i < self.adj.len() && self.adj[i].contains(&j)
    }

    pub fn edge_position(&self, i: usize, j: usize) -> Option<usize> {
        let e = (i.min(j), i.max(j));
        self.edges.iter().position(|&f| f == e)
    }

    /// A vertex name not yet in use, derived from `hint`.
    pub fn fresh_name(&self, hint: &str) -> String {
        if !self.index.contains_key(hint) {
            return hint.to_string();
        }
        (1..)
            .map(|k| format!("{hint}_{k}"))
            .find(|s| !self.index.contains_key(s))
            .expect("unbounded search")
    }

    pub fn add_vertex(&mut self, name: &str) -> Result<usize> {
        if self.index.contains_key(name) {
            return Err(Error::InvalidGraph(format!("duplicate vertex \"{name}\"")));
        }
        let i = self.names.len();
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), i);
        self.adj.push(BTreeSet::new());
        Ok(i)
    }

    pub fn add_edge(&mut self, i: usize, j: usize) -> Result<()> {
        let n = self.names.len();
        if i >= n || j >= n {
            return Err(Error::InvalidGraph(format!("edge ({i}, {j}) out of range")));
        }
        if i == j {
            return Err(Error::InvalidGraph(format!(
                "loop at \"{}\"",
                self.names[i]
            )));
        }
        if self.adj[i].contains(&j) {
            return Err(Error::InvalidGraph(format!(
                "duplicate edge \"{}\"-\"{}\"",
                self.names[i], self.names[j]
            )));
        }
        self.edges.push((i.min(j), i.max(j)));
        self.adj[i].insert(j);
        self.adj[j].insert(i);
        Ok(())
    }

    pub fn remove_edge(&mut self, i: usize, j: usize) -> Result<()> {
        let pos = self
            .edge_position(i, j)
            .ok_or_else(|| Error::InvalidGraph(format!("no edge between {i} and {j}")))?;
        self.edges.remove(pos);
        self.adj[i].remove(&j);
        self.adj[j].remove(&i);
        Ok(())
    }

    /// Removes a vertex and its edges; later vertices shift down by one.
    pub fn remove_vertex(&mut self, v: usize) -> Result<()> {
        if v >= self.names.len() {
            return Err(Error::InvalidGraph(format!("vertex {v} out of range")));
        }
        let names: Vec<String> = self
            .names
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != v)
            .map(|(_, s)| s.clone())
            .collect();
        let shift = |i: usize| if i > v { i - 1 } else { i };
        let edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .filter(|&&(a, b)| a != v && b != v)
            .map(|&(a, b)| (shift(a), shift(b)))
            .collect();
        let mut g = Graph::empty();
        for s in &names {
            g.add_vertex(s)?;
        }
        for (a, b) in edges {
            g.add_edge(a, b)?;
        }
        *self = g;
        Ok(())
    }

    /// Subgraph on the given edge indices, keeping every vertex.
    pub fn spanning_subgraph(&self, edge_ids: &[usize]) -> Graph {
        let mut g = Graph::empty();
        for s in &self.names {
            g.add_vertex(s).unwrap();
        }
        for &k in edge_ids {
            let (a, b) = self.edges[k];
            g.add_edge(a, b).unwrap();
        }
        g
    }

    /// Subgraph induced on a vertex subset (vertex order preserved).
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let keep: BTreeSet<usize> = vertices.iter().copied().collect();
        let mut g = Graph::empty();
        let mut map = HashMap::new();
        for &v in &keep {
            map.insert(v, g.add_vertex(&self.names[v]).unwrap());
        }
        for &(a, b) in &self.edges {
            if let (Some(&x), Some(&y)) = (map.get(&a), map.get(&b)) {
                g.add_edge(x, y).unwrap();
            }
        }
        g
    }

    /// Subgraph with the given edges and exactly their endpoints.
    pub fn edge_induced(&self, edge_ids: &[usize]) -> Graph {
        let verts: BTreeSet<usize> = edge_ids
            .iter()
            .flat_map(|&k| [self.edges[k].0, self.edges[k].1])
            .collect();
        let mut g = Graph::empty();
        let mut map = HashMap::new();
        for &v in &verts {
            map.insert(v, g.add_vertex(&self.names[v]).unwrap());
        }
        for &k in edge_ids {
            let (a, b) = self.edges[k];
            g.add_edge(map[&a], map[&b]).unwrap();
        }
        g
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for w in self.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Relabels vertices by `names[i] -> new_names[i]`.
    pub fn renamed(&self, new_names: &[String]) -> Result<Graph> {
        let edges: Vec<(String, String)> = self
            .edges
            .iter()
            .map(|&(a, b)| (new_names[a].clone(), new_names[b].clone()))
            .collect();
        Graph::new(new_names, &edges)
    }

    /// A labelling-independent form: two graphs are isomorphic iff their
    /// canonical forms are equal.
    pub fn canonical_form(&self) -> CanonicalForm {
        canonical::canonical_form(self)
    }

    pub fn is_isomorphic(&self, other: &Graph) -> bool {
        self.vertex_count() == other.vertex_count()
            && self.edge_count() == other.edge_count()
            && self.canonical_form() == other.canonical_form()
    }
}

/// Adjacency bitmask of a canonically ordered graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub n: usize,
    pub bits: Vec<u64>,
}

mod canonical {
    use super::{CanonicalForm, Graph};

    /// Colour refinement to a stable partition; colour ids are assigned by
    /// sorting the (colour, neighbour colours) signatures, so they do not
    /// depend on the labelling.
    fn refine(g: &Graph, mut colour: Vec<usize>) -> Vec<usize> {
        let n = g.vertex_count();
        loop {
            let classes_before = count_classes(&colour);
            let mut sigs: Vec<(usize, Vec<usize>, usize)> = (0..n)
                .map(|v| {
                    let mut nb: Vec<usize> = g.neighbors(v).map(|w| colour[w]).collect();
                    nb.sort_unstable();
                    (colour[v], nb, v)
                })
                .collect();
            sigs.sort();
            let mut next = vec![0; n];
            let mut c = 0;
            for k in 0..n {
                if k > 0 && (sigs[k].0 != sigs[k - 1].0 || sigs[k].1 != sigs[k - 1].1) {
                    c += 1;
                }
                next[sigs[k].2] = c;
            }
            colour = next;
            if count_classes(&colour) == classes_before {
                return colour;
            }
        }
    }

    fn count_classes(colour: &[usize]) -> usize {
        let mut c = colour.to_vec();
        c.sort_unstable();
        c.dedup();
        c.len()
    }

    fn encode(g: &Graph, colour: &[usize]) -> CanonicalForm {
        let n = g.vertex_count();
        // colour[v] is the position of v in the canonical order
        let words = (n * n.saturating_sub(1) / 2).div_ceil(64);
        let mut bits = vec![0u64; words];
        for &(a, b) in g.edges() {
            let (x, y) = (colour[a].min(colour[b]), colour[a].max(colour[b]));
            let k = y * (y - 1) / 2 + x;
            bits[k / 64] |= 1 << (k % 64);
        }
        CanonicalForm { n, bits }
    }

    fn search(g: &Graph, colour: Vec<usize>, best: &mut Option<CanonicalForm>) {
        let n = g.vertex_count();
        let colour = refine(g, colour);
        if count_classes(&colour) == n {
            let form = encode(g, &colour);
            if best.as_ref().is_none_or(|b| form < *b) {
                *best = Some(form);
            }
            return;
        }
        // branch on the smallest non-singleton cell (first by colour)
        let mut sizes = vec![0usize; n];
        for &c in &colour {
            sizes[c] += 1;
        }
        let target = (0..n)
            .filter(|&c| sizes[c] > 1)
            .min_by_key(|&c| (sizes[c], c))
            .expect("non-discrete partition");
        for v in (0..n).filter(|&v| colour[v] == target) {
            let split: Vec<usize> = (0..n)
                .map(|u| 2 * colour[u] + usize::from(colour[u] == target && u != v))
                .collect();
            search(g, split, best);
        }
    }

    pub(super) fn canonical_form(g: &Graph) -> CanonicalForm {
        let n = g.vertex_count();
        if n == 0 {
            return CanonicalForm {
                n: 0,
                bits: Vec::new(),
            };
        }
        let mut best = None;
        search(g, vec![0; n], &mut best);
        best.expect("at least one leaf")
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self
            .edges
            .iter()
            .map(|&(a, b)| format!("{}-{}", self.names[a], self.names[b]))
            .collect();
        write!(f, "Graph({:?}; {})", self.names, edges.join(" "))
    }
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    vertices: Vec<VertexId>,
    edges: Vec<[VertexId; 2]>,
}

/// JSON vertex identifier: a string, or an integer read as its decimal form.
#[derive(Serialize, Deserialize, Clone)]
#[serde(untagged)]
pub(crate) enum VertexId {
    Name(String),
    Number(i64),
}

impl VertexId {
    pub(crate) fn into_name(self) -> String {
        match self {
            VertexId::Name(s) => s,
            VertexId::Number(k) => k.to_string(),
        }
    }
}

impl Serialize for Graph {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphJson {
            vertices: self.names.iter().cloned().map(VertexId::Name).collect(),
            edges: self
                .edges
                .iter()
                .map(|&(a, b)| {
                    [
                        VertexId::Name(self.names[a].clone()),
                        VertexId::Name(self.names[b].clone()),
                    ]
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = GraphJson::deserialize(d)?;
        let vertices: Vec<String> = raw.vertices.into_iter().map(VertexId::into_name).collect();
        let edges: Vec<(String, String)> = raw
            .edges
            .into_iter()
            .map(|[a, b]| (a.into_name(), b.into_name()))
            .collect();
        Graph::new(&vertices, &edges).map_err(serde::de::Error::custom)
    }
}
