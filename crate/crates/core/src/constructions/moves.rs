//! The four graph moves, by vertex name.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::sparsity::is_tight;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Move {
    /// Add `new_vertex` joined to `v1` and `v2`.
    Ext0 {
        v1: String,
        v2: String,
        new_vertex: String,
    },
    /// Delete `deleted_edge` and add `new_vertex` joined to its ends and `v3`.
    Ext1 {
        deleted_edge: (String, String),
        v3: String,
        new_vertex: String,
    },
    /// Split `w0` along the edge `v0 w0`: `new_vertex` is joined to `v0` and
    /// `w0`, and takes over the edges from `w0` to `reassigned_neighbors`.
    VertexSplit {
        v0: String,
        w0: String,
        new_vertex: String,
        reassigned_neighbors: BTreeSet<String>,
    },
    /// Replace `v0` by a complete graph on `new_vertices`, handing each former
    /// edge `v0 w` to the vertex `neighbor_assignment[w]`.
    VertexToK4 {
        v0: String,
        new_vertices: [String; 4],
        neighbor_assignment: BTreeMap<String, String>,
    },
}

impl Move {
    pub fn kind(&self) -> &'static str {
        match self {
            Move::Ext0 { .. } => "ext0",
            Move::Ext1 { .. } => "ext1",
            Move::VertexSplit { .. } => "vertex-split",
            Move::VertexToK4 { .. } => "vertex-to-k4",
        }
    }

    /// Names of the vertices the move creates.
    pub fn new_vertices(&self) -> Vec<&str> {
        match self {
            Move::Ext0 { new_vertex, .. }
            | Move::Ext1 { new_vertex, .. }
            | Move::VertexSplit { new_vertex, .. } => vec![new_vertex],
            Move::VertexToK4 { new_vertices, .. } => {
                new_vertices.iter().map(String::as_str).collect()
            }
        }
    }
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidMove(msg.into())
}

fn existing(g: &Graph, name: &str) -> Result<usize> {
    g.index_of(name)
        .ok_or_else(|| invalid(format!("vertex \"{name}\" is not in the graph")))
}

fn fresh(g: &Graph, name: &str) -> Result<()> {
    if g.index_of(name).is_some() {
        Err(invalid(format!("vertex \"{name}\" already exists")))
    } else {
        Ok(())
    }
}

/// Applies a move to a graph.
pub fn apply_move(g: &Graph, m: &Move) -> Result<Graph> {
    let out = apply_unchecked(g, m)?;
    debug_assert!(
        !is_tight(g) || is_tight(&out),
        "{} broke tightness",
        m.kind()
    );
    Ok(out)
}

fn apply_unchecked(g: &Graph, m: &Move) -> Result<Graph> {
    let mut h = g.clone();
    match m {
        Move::Ext0 { v1, v2, new_vertex } => {
            let (a, b) = (existing(g, v1)?, existing(g, v2)?);
            if a == b {
                return Err(invalid("a 0-extension needs two distinct vertices"));
            }
            fresh(g, new_vertex)?;
            let v = h.add_vertex(new_vertex)?;
            h.add_edge(a, v)?;
            h.add_edge(b, v)?;
        }
        Move::Ext1 {
            deleted_edge: (v1, v2),
            v3,
            new_vertex,
        } => {
            let (a, b, c) = (existing(g, v1)?, existing(g, v2)?, existing(g, v3)?);
            if !g.has_edge(a, b) {
                return Err(invalid(format!("\"{v1}\"-\"{v2}\" is not an edge")));
            }
            if c == a || c == b {
                return Err(invalid(
                    "the third vertex of a 1-extension must be off the deleted edge",
                ));
            }
            fresh(g, new_vertex)?;
            h.remove_edge(a, b)?;
            let v = h.add_vertex(new_vertex)?;
            for u in [a, b, c] {
                h.add_edge(u, v)?;
            }
        }
        Move::VertexSplit {
            v0,
            w0,
            new_vertex,
            reassigned_neighbors,
        } => {
            let (a, w) = (existing(g, v0)?, existing(g, w0)?);
            if !g.has_edge(a, w) {
                return Err(invalid(format!("\"{v0}\"-\"{w0}\" is not an edge")));
            }
            fresh(g, new_vertex)?;
            let mut moved = Vec::new();
            for name in reassigned_neighbors {
                let u = existing(g, name)?;
                if u == a || !g.has_edge(u, w) {
                    return Err(invalid(format!(
                        "\"{name}\" is not a neighbour of \"{w0}\" other than \"{v0}\""
                    )));
                }
                moved.push(u);
            }
            let v = h.add_vertex(new_vertex)?;
            for &u in &moved {
                h.remove_edge(u, w)?;
                h.add_edge(u, v)?;
            }
            h.add_edge(a, v)?;
            h.add_edge(w, v)?;
        }
        Move::VertexToK4 {
            v0,
            new_vertices,
            neighbor_assignment,
        } => {
            let c = existing(g, v0)?;
            let names: BTreeSet<&String> = new_vertices.iter().collect();
            if names.len() != 4 {
                return Err(invalid(
                    "a vertex-to-K4 move needs four distinct new vertices",
                ));
            }
            for name in new_vertices {
                fresh(g, name)?;
            }
            let neighbours: BTreeSet<&str> = g.neighbors(c).map(|u| g.name(u)).collect();
            let assigned: BTreeSet<&str> = neighbor_assignment.keys().map(String::as_str).collect();
            if neighbours != assigned {
                return Err(invalid(format!(
                    "the assignment must cover exactly the neighbours of \"{v0}\""
                )));
            }
            if let Some((w, t)) = neighbor_assignment.iter().find(|(_, t)| !names.contains(t)) {
                return Err(invalid(format!(
                    "\"{w}\" is assigned to \"{t}\", not a new vertex"
                )));
            }
            h.remove_vertex(c)?;
            let ids: Vec<usize> = new_vertices
                .iter()
                .map(|n| h.add_vertex(n))
                .collect::<Result<_>>()?;
            for i in 0..4 {
                for j in i + 1..4 {
                    h.add_edge(ids[i], ids[j])?;
                }
            }
            for (w, t) in neighbor_assignment {
                let (w, t) = (h.require(w)?, h.require(t)?);
                h.add_edge(w, t)?;
            }
        }
    }
    Ok(h)
}

/// Names not used in `g`, of the form `n0`, `n1`, ...
fn fresh_names(g: &Graph, count: usize) -> Vec<String> {
    (0..)
        .map(|i| format!("n{i}"))
        .filter(|s| g.index_of(s).is_none())
        .take(count)
        .collect()
}

/// A uniformly chosen valid move on `g`, or `None` if `g` is empty.
pub fn random_move<R: Rng + ?Sized>(g: &Graph, rng: &mut R) -> Option<Move> {
    let n = g.vertex_count();
    if n == 0 {
        return None;
    }
    let mut kinds = vec![3];
    if n >= 2 {
        kinds.push(0);
    }
    if g.edge_count() > 0 {
        kinds.push(2);
        if n >= 3 {
            kinds.push(1);
        }
    }
    let name = |i: usize| g.name(i).to_string();
    let m = match *kinds.choose(rng)? {
        0 => {
            let pick: Vec<usize> = rand::seq::index::sample(rng, n, 2).into_vec();
            Move::Ext0 {
                v1: name(pick[0]),
                v2: name(pick[1]),
                new_vertex: fresh_names(g, 1).remove(0),
            }
        }
        1 => {
            let &(a, b) = g.edges().choose(rng)?;
            let others: Vec<usize> = (0..n).filter(|&c| c != a && c != b).collect();
            Move::Ext1 {
                deleted_edge: (name(a), name(b)),
                v3: name(*others.choose(rng)?),
                new_vertex: fresh_names(g, 1).remove(0),
            }
        }
        2 => {
            let &(a, b) = g.edges().choose(rng)?;
            let (v0, w0) = if rng.gen_bool(0.5) { (a, b) } else { (b, a) };
            Move::VertexSplit {
                v0: name(v0),
                w0: name(w0),
                new_vertex: fresh_names(g, 1).remove(0),
                reassigned_neighbors: g
                    .neighbors(w0)
                    .filter(|&u| u != v0 && rng.gen_bool(0.5))
                    .map(name)
                    .collect(),
            }
        }
        _ => {
            let v0 = rng.gen_range(0..n);
            let new_vertices: [String; 4] = fresh_names(g, 4).try_into().expect("four names");
            let neighbor_assignment = g
                .neighbors(v0)
                .map(|u| (name(u), new_vertices[rng.gen_range(0..4)].clone()))
                .collect();
            Move::VertexToK4 {
                v0: name(v0),
                new_vertices,
                neighbor_assignment,
            }
        }
    };
    Some(m)
}

/// Moves applied in order to the one-vertex graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveSequence {
    #[serde(default = "k1_tag", deserialize_with = "k1_only")]
    pub start: String,
    /// Name of the single starting vertex.
    #[serde(default = "default_start_vertex")]
    pub start_vertex: String,
    pub moves: Vec<Move>,
}

fn k1_tag() -> String {
    "K1".into()
}

fn default_start_vertex() -> String {
    "0".into()
}

fn k1_only<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<String, D::Error> {
    let s = String::deserialize(d)?;
    if s == "K1" {
        Ok(s)
    } else {
        Err(serde::de::Error::custom(format!(
            "move sequences start from \"K1\", not \"{s}\""
        )))
    }
}

impl MoveSequence {
    pub fn new(start_vertex: impl Into<String>, moves: Vec<Move>) -> Self {
        Self {
            start: k1_tag(),
            start_vertex: start_vertex.into(),
            moves,
        }
    }

    pub fn start_graph(&self) -> Graph {
        Graph::new(&[self.start_vertex.as_str()], &[]).expect("a single vertex is a graph")
    }
}

/// The graph a move sequence builds; an invalid move is reported with its
/// position in the sequence.
pub fn replay(ms: &MoveSequence) -> Result<Graph> {
    let mut g = ms.start_graph();
    for (i, m) in ms.moves.iter().enumerate() {
        g = apply_move(&g, m).map_err(|e| {
            let msg = match e {
                Error::InvalidMove(s) => s,
                other => other.to_string(),
            };
            invalid(format!("move {i} ({}): {msg}", m.kind()))
        })?;
    }
    Ok(g)
}
