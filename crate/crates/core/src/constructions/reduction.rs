//! Reduction of a (2,2)-tight graph to `K1` by inverse moves.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use super::moves::{Move, MoveSequence};
use crate::error::{Error, Result};
use crate::graph::{CanonicalForm, Graph};
use crate::sparsity::is_tight;

/// Graphs expanded before the search gives up.
const SEARCH_BUDGET: usize = 200_000;

/// An inverse move: the smaller graph and the forward move that rebuilds the
/// larger one from it.
type Step = (Graph, Move);

fn names(g: &Graph, ids: &[usize]) -> Vec<String> {
    ids.iter().map(|&i| g.name(i).to_string()).collect()
}

/// Deletes a vertex of degree 2.
fn inverse_ext0(g: &Graph) -> Vec<Step> {
    (0..g.vertex_count())
        .filter(|&v| g.degree(v) == 2)
        .map(|v| {
            let nb: Vec<usize> = g.neighbors(v).collect();
            let mut h = g.clone();
            h.remove_vertex(v).expect("vertex exists");
            let [v1, v2]: [String; 2] = names(g, &nb).try_into().expect("degree 2");
            let m = Move::Ext0 {
                v1,
                v2,
                new_vertex: g.name(v).to_string(),
            };
            (h, m)
        })
        .collect()
}

/// Deletes a vertex of degree 3 and joins two of its neighbours.
fn inverse_ext1(g: &Graph) -> Vec<Step> {
    let mut out = Vec::new();
    for v in (0..g.vertex_count()).filter(|&v| g.degree(v) == 3) {
        let nb: Vec<usize> = g.neighbors(v).collect();
        for k in 0..3 {
            let (a, b, c) = (nb[k], nb[(k + 1) % 3], nb[(k + 2) % 3]);
            if g.has_edge(a, b) {
                continue;
            }
            let mut h = g.clone();
            h.add_edge(a, b).expect("not yet an edge");
            h.remove_vertex(v).expect("vertex exists");
            if is_tight(&h) {
                let m = Move::Ext1 {
                    deleted_edge: (g.name(a).to_string(), g.name(b).to_string()),
                    v3: g.name(c).to_string(),
                    new_vertex: g.name(v).to_string(),
                };
                out.push((h, m));
            }
        }
    }
    out
}

/// Contracts a copy of `K4` whose outside neighbours are distinct.
fn inverse_vertex_to_k4(g: &Graph, fresh: &mut impl FnMut() -> String) -> Vec<Step> {
    let mut out = Vec::new();
    for &(a, b) in g.edges() {
        let common: Vec<usize> = g
            .neighbors(a)
            .filter(|&c| c > b && g.has_edge(b, c))
            .collect();
        for (i, &c) in common.iter().enumerate() {
            for &d in &common[i + 1..] {
                if !g.has_edge(c, d) {
                    continue;
                }
                let quad = [a, b, c, d];
                let mut assignment = BTreeMap::new();
                let mut clash = false;
                for &q in &quad {
                    for w in g.neighbors(q).filter(|w| !quad.contains(w)) {
                        let name = g.name(w).to_string();
                        clash |= assignment.insert(name, g.name(q).to_string()).is_some();
                    }
                }
                if clash {
                    continue;
                }
                let v0 = fresh();
                let mut h = g.clone();
                let mut sorted = quad;
                sorted.sort_unstable_by(|x, y| y.cmp(x));
                for q in sorted {
                    h.remove_vertex(q).expect("vertex exists");
                }
                let u = h.add_vertex(&v0).expect("fresh name");
                for w in assignment.keys() {
                    let w = h.require(w).expect("outside vertex survives");
                    h.add_edge(u, w).expect("distinct neighbours");
                }
                if is_tight(&h) {
                    let new_vertices: [String; 4] = names(g, &quad).try_into().expect("four");
                    let m = Move::VertexToK4 {
                        v0,
                        new_vertices,
                        neighbor_assignment: assignment,
                    };
                    out.push((h, m));
                }
            }
        }
    }
    out
}

/// Contracts an edge `w0 w1` lying on a triangle `v0 w0 w1` into `w0`.
fn inverse_vertex_split(g: &Graph) -> Vec<Step> {
    let mut out = Vec::new();
    for &(x, y) in g.edges() {
        for (w0, w1) in [(x, y), (y, x)] {
            let rest: BTreeSet<usize> = g.neighbors(w1).filter(|&u| u != w0).collect();
            for &v0 in rest.iter().filter(|&&u| g.has_edge(u, w0)) {
                let moved: Vec<usize> = rest.iter().copied().filter(|&u| u != v0).collect();
                if moved.iter().any(|&u| g.has_edge(u, w0)) {
                    continue;
                }
                let mut h = g.clone();
                for &u in &moved {
                    h.add_edge(u, w0).expect("not yet an edge");
                }
                h.remove_vertex(w1).expect("vertex exists");
                if is_tight(&h) {
                    let m = Move::VertexSplit {
                        v0: g.name(v0).to_string(),
                        w0: g.name(w0).to_string(),
                        new_vertex: g.name(w1).to_string(),
                        reassigned_neighbors: moved
                            .iter()
                            .map(|&u| g.name(u).to_string())
                            .collect(),
                    };
                    out.push((h, m));
                }
            }
        }
    }
    out
}

struct Search {
    failed: HashSet<CanonicalForm>,
    expanded: usize,
    used: HashSet<String>,
    counter: usize,
    smallest: Option<Graph>,
}

impl Search {
    fn fresh_name(&mut self) -> String {
        loop {
            let name = format!("k{}", self.counter);
            self.counter += 1;
            if self.used.insert(name.clone()) {
                return name;
            }
        }
    }

    fn run(&mut self, g: &Graph, path: &mut Vec<Move>) -> Result<Option<String>> {
        if g.vertex_count() == 1 {
            return Ok(Some(g.name(0).to_string()));
        }
        let form = g.canonical_form();
        if self.failed.contains(&form) {
            return Ok(None);
        }
        self.expanded += 1;
        if self.expanded > SEARCH_BUDGET {
            let frontier = self.smallest.as_ref().map_or(0, Graph::vertex_count);
            return Err(Error::SearchExhausted(format!(
                "reduction search expanded {SEARCH_BUDGET} graphs; smallest reached has {frontier} vertices"
            )));
        }
        if self
            .smallest
            .as_ref()
            .map_or(true, |s| g.vertex_count() < s.vertex_count())
        {
            self.smallest = Some(g.clone());
        }
        // cheap moves first
        let mut steps = inverse_ext0(g);
        steps.extend(inverse_ext1(g));
        let mut fresh = || self.fresh_name();
        let k4 = inverse_vertex_to_k4(g, &mut fresh);
        steps.extend(k4);
        steps.extend(inverse_vertex_split(g));
        for (h, m) in steps {
            path.push(m);
            if let Some(start) = self.run(&h, path)? {
                return Ok(Some(start));
            }
            path.pop();
        }
        self.failed.insert(form);
        Ok(None)
    }
}

/// A sequence of moves building `g` from `K1`. Vertex names are kept, so
/// replaying the sequence gives `g` itself up to the order of its vertices;
/// vertices that appear only in intermediate graphs get fresh names `k0`,
/// `k1`, ...
pub fn find_reduction(g: &Graph) -> Result<MoveSequence> {
    if !is_tight(g) {
        return Err(Error::NotTight);
    }
    let mut search = Search {
        failed: HashSet::new(),
        expanded: 0,
        used: g.names().iter().cloned().collect(),
        counter: 0,
        smallest: None,
    };
    let mut path = Vec::new();
    match search.run(g, &mut path)? {
        Some(start) => {
            path.reverse();
            Ok(MoveSequence::new(start, path))
        }
        None => Err(Error::SearchExhausted(format!(
            "no reduction to K1 found; smallest graph reached has {} vertices",
            search.smallest.map_or(0, |s| s.vertex_count())
        ))),
    }
}
