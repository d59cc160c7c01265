//! Enumerated families of small graphs, up to isomorphism.

use std::collections::BTreeMap;
use std::sync::{Mutex, OnceLock};

use rand::Rng;

use crate::graph::{CanonicalForm, Graph};
use crate::sparsity::is_tight;

/// Largest vertex count for which `all_graphs` enumerates labelled graphs.
pub const MAX_ALL_GRAPHS: usize = 6;

fn dedup(graphs: impl IntoIterator<Item = Graph>) -> Vec<Graph> {
    let mut seen: BTreeMap<CanonicalForm, Graph> = BTreeMap::new();
    for g in graphs {
        seen.entry(g.canonical_form()).or_insert(g);
    }
    seen.into_values().collect()
}

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect()
}

/// Every graph on `n` vertices up to isomorphism (`n ≤ 6`).
pub fn all_graphs(n: usize) -> Vec<Graph> {
    assert!(
        n <= MAX_ALL_GRAPHS,
        "enumeration is limited to {MAX_ALL_GRAPHS} vertices"
    );
    static CACHE: OnceLock<Mutex<BTreeMap<usize, Vec<Graph>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(BTreeMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&n) {
        return v.clone();
    }
    let p = pairs(n);
    let graphs = dedup((0u32..(1 << p.len())).map(|mask| {
        let edges: Vec<_> = p
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        Graph::from_indices(n, &edges).unwrap()
    }));
    cache.lock().unwrap().insert(n, graphs.clone());
    graphs
}

/// Connected graphs on `n` vertices up to isomorphism (`n ≤ 6`).
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    all_graphs(n)
        .into_iter()
        .filter(Graph::is_connected)
        .collect()
}

fn with_new_vertex(g: &Graph, neighbours: &[usize]) -> Graph {
    let n = g.vertex_count();
    let mut h = g.clone();
    let v = h.add_vertex(&n.to_string()).unwrap();
    for &u in neighbours {
        h.add_edge(u, v).unwrap();
    }
    h
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// (2,2)-sparse graphs on `m` vertices with `2m - 3` edges.
fn near_tight(m: usize) -> Vec<Graph> {
    match m {
        0 | 1 => Vec::new(),
        2 => vec![Graph::complete(2)],
        3 => vec![Graph::complete(3)],
        _ => dedup(tight_graphs(m).iter().flat_map(|t| {
            t.edges().iter().map(move |&(a, b)| {
                let mut h = t.clone();
                h.remove_edge(a, b).unwrap();
                h
            })
        })),
    }
}

/// Every (2,2)-tight graph on `n` vertices up to isomorphism.
///
/// A tight graph has a vertex of degree 2 or 3; deleting it leaves a tight
/// graph, or a sparse graph one edge short of tight, which is a tight graph
/// minus an edge. So the family is generated from the previous one.
pub fn tight_graphs(n: usize) -> Vec<Graph> {
    static CACHE: OnceLock<Mutex<BTreeMap<usize, Vec<Graph>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(BTreeMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&n) {
        return v.clone();
    }
    let graphs = match n {
        0 => Vec::new(),
        1 => vec![Graph::complete(1)],
        _ => {
            let m = n - 1;
            let mut candidates = Vec::new();
            for t in tight_graphs(m) {
                for s in subsets(m, 2) {
                    candidates.push(with_new_vertex(&t, &s));
                }
            }
            for t in near_tight(m) {
                for s in subsets(m, 3) {
                    candidates.push(with_new_vertex(&t, &s));
                }
            }
            dedup(candidates.into_iter().filter(is_tight))
        }
    };
    cache.lock().unwrap().insert(n, graphs.clone());
    graphs
}

/// Erdős–Rényi graph on `n` vertices with edge probability `p`.
pub fn random_graph<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    let edges: Vec<_> = pairs(n).into_iter().filter(|_| rng.gen_bool(p)).collect();
    Graph::from_indices(n, &edges).unwrap()
}
