//! Edge-disjoint spanning tree packings by matroid partition.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::{connectivity::edge_connectivity, is_tight};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Edge sets (as edge indices) of edge-disjoint spanning trees.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeDecomposition {
    pub trees: Vec<Vec<usize>>,
}

/// A forest over a fixed vertex set, stored by adjacency.
#[derive(Clone)]
struct Forest {
    adj: Vec<BTreeSet<(usize, usize)>>,
    edges: BTreeSet<usize>,
}

impl Forest {
    fn new(n: usize) -> Self {
        Self {
            adj: vec![BTreeSet::new(); n],
            edges: BTreeSet::new(),
        }
    }

    fn add(&mut self, id: usize, (a, b): (usize, usize)) {
        self.adj[a].insert((b, id));
        self.adj[b].insert((a, id));
        self.edges.insert(id);
    }

    fn remove(&mut self, id: usize, (a, b): (usize, usize)) {
        self.adj[a].remove(&(b, id));
        self.adj[b].remove(&(a, id));
        self.edges.remove(&id);
    }

    /// Edge ids on the forest path from `a` to `b`, if they are connected.
    fn path(&self, a: usize, b: usize) -> Option<Vec<usize>> {
        let n = self.adj.len();
        let mut via = vec![None; n];
        let mut seen = vec![false; n];
        seen[a] = true;
        let mut queue = VecDeque::from([a]);
        while let Some(x) = queue.pop_front() {
            if x == b {
                let mut path = Vec::new();
                let mut cur = b;
                while let Some((prev, id)) = via[cur] {
                    path.push(id);
                    cur = prev;
                }
                return Some(path);
            }
            for &(y, id) in &self.adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    via[y] = Some((x, id));
                    queue.push_back(y);
                }
            }
        }
        None
    }
}

/// Inserts edge `e` into one of the forests, possibly after a chain of
/// exchanges, along a shortest augmenting path.
fn augment(g: &Graph, forests: &mut [Forest], e: usize) -> bool {
    let m = g.edge_count();
    // parent[y] = (x, i): x enters forest i in place of y
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; m];
    let mut seen = vec![false; m];
    seen[e] = true;
    let mut queue = VecDeque::from([e]);
    while let Some(x) = queue.pop_front() {
        let (a, b) = g.edges()[x];
        for i in 0..forests.len() {
            if forests[i].edges.contains(&x) {
                continue;
            }
            match forests[i].path(a, b) {
                None => {
                    // x fits into forest i; unwind the exchange chain
                    let mut cur = x;
                    let mut target = i;
                    loop {
                        let owner = (0..forests.len()).find(|&j| forests[j].edges.contains(&cur));
                        if let Some(j) = owner {
                            forests[j].remove(cur, g.edges()[cur]);
                        }
                        forests[target].add(cur, g.edges()[cur]);
                        match parent[cur] {
                            None => return true,
                            Some((p, _)) => {
                                // p takes cur's old place
                                target = owner.expect("exchanged edges belong to a forest");
                                cur = p;
                            }
                        }
                    }
                }
                Some(cycle) => {
                    for y in cycle {
                        if !seen[y] {
                            seen[y] = true;
                            parent[y] = Some((x, i));
                            queue.push_back(y);
                        }
                    }
                }
            }
        }
    }
    false
}

/// Greedy matroid partition: a maximum union of `k` edge-disjoint forests,
/// returned as edge-index sets.
pub fn pack_forests(g: &Graph, k: usize) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut forests = vec![Forest::new(n); k];
    if k > 0 {
        for e in 0..g.edge_count() {
            augment(g, &mut forests, e);
        }
    }
    forests
        .into_iter()
        .map(|f| f.edges.into_iter().collect())
        .collect()
}

fn is_spanning_tree(g: &Graph, ids: &[usize]) -> bool {
    let n = g.vertex_count();
    n == 0 && ids.is_empty() || ids.len() + 1 == n && g.spanning_subgraph(ids).is_connected()
}

/// Exhaustive search over 2-colourings of the edges.
pub(super) fn exhaustive_two_trees(g: &Graph) -> Option<TreeDecomposition> {
    let m = g.edge_count();
    if m > 16 {
        return None;
    }
    for mask in 0u32..(1 << m) {
        let (a, b): (Vec<usize>, Vec<usize>) = (0..m).partition(|&k| mask >> k & 1 == 0);
        if is_spanning_tree(g, &a) && is_spanning_tree(g, &b) {
            return Some(TreeDecomposition { trees: vec![a, b] });
        }
    }
    None
}

/// Splits a (2,2)-tight graph into two edge-disjoint spanning trees.
pub fn tree_decomposition(g: &Graph) -> Result<TreeDecomposition> {
    if !is_tight(g) {
        return Err(Error::NotTight);
    }
    let trees = pack_forests(g, 2);
    if trees.iter().all(|t| is_spanning_tree(g, t)) {
        return Ok(TreeDecomposition { trees });
    }
    exhaustive_two_trees(g).ok_or_else(|| {
        Error::SearchExhausted("no decomposition into two spanning trees was found".into())
    })
}

/// `k` pairwise edge-disjoint (2,2)-tight spanning subgraphs, each the union
/// of two of `2k` packed spanning trees.
pub fn edge_disjoint_tight_subgraphs(g: &Graph, k: usize) -> Result<Vec<Vec<usize>>> {
    if k == 0 {
        return Err(Error::Precondition("k must be at least 1".into()));
    }
    let n = g.vertex_count();
    let needed = 2 * k * n.saturating_sub(1);
    if g.edge_count() < needed {
        return Err(Error::SearchExhausted(format!(
            "{} edges cannot hold {} edge-disjoint spanning trees ({needed} edges needed)",
            g.edge_count(),
            2 * k
        )));
    }
    let trees = pack_forests(g, 2 * k);
    if !trees.iter().all(|t| is_spanning_tree(g, t)) {
        let lambda = edge_connectivity(g);
        return Err(Error::SearchExhausted(format!(
            "only {} of {} edge-disjoint spanning trees fit; edge connectivity is {lambda}, below the {} that guarantees a packing",
            trees.iter().filter(|t| is_spanning_tree(g, t)).count(),
            2 * k,
            4 * k
        )));
    }
    Ok(trees
        .chunks(2)
        .map(|pair| {
            let mut s: Vec<usize> = pair.concat();
            s.sort_unstable();
            s
        })
        .collect())
}
