//! (2, l)-sparsity, tree packings, edge connectivity, and the combinatorial
//! rigidity decisions built on them.

mod connectivity;
mod pebble;
mod trees;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

pub use connectivity::edge_connectivity;
pub use trees::{
    edge_disjoint_tight_subgraphs, pack_forests, tree_decomposition, TreeDecomposition,
};

/// Verdict of a (2, l)-pebble game.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SparsityReport {
    pub l: usize,
    pub sparse: bool,
    pub tight: bool,
    /// The violating subgraph when not sparse, else the accepted basis as a
    /// spanning subgraph.
    pub witness: Option<Graph>,
    /// Indices of the accepted edges: a maximum (2, l)-sparse edge set.
    pub basis: Vec<usize>,
    pub basis_size: usize,
}

fn check_l(l: usize) -> Result<()> {
    if l == 2 || l == 3 {
        Ok(())
    } else {
        Err(Error::Precondition(format!("l must be 2 or 3, got {l}")))
    }
}

/// Runs the pebble game with edges in their stored order.
pub fn pebble_game(g: &Graph, l: usize) -> Result<SparsityReport> {
    let order: Vec<usize> = (0..g.edge_count()).collect();
    pebble_game_ordered(g, l, &order)
}

/// Runs the pebble game inserting edges in the given order (a permutation of
/// the edge indices). The basis depends on the order; its size does not.
pub fn pebble_game_ordered(g: &Graph, l: usize, order: &[usize]) -> Result<SparsityReport> {
    check_l(l)?;
    let mut seen = vec![false; g.edge_count()];
    if order.len() != g.edge_count()
        || order
            .iter()
            .any(|&k| k >= seen.len() || std::mem::replace(&mut seen[k], true))
    {
        return Err(Error::Precondition(
            "order must be a permutation of the edges".into(),
        ));
    }
    let run = pebble::run(g, l, order);
    let sparse = run.first_rejection.is_none();
    let n = g.vertex_count();
    let tight = sparse && 2 * n == g.edge_count() + l;
    let witness = match &run.first_rejection {
        Some(rej) => {
            let mut ids: Vec<usize> = rej
                .accepted_before
                .iter()
                .copied()
                .filter(|&a| {
                    let (x, y) = g.edges()[a];
                    rej.reach.binary_search(&x).is_ok() && rej.reach.binary_search(&y).is_ok()
                })
                .collect();
            ids.push(rej.edge);
            ids.sort_unstable();
            Some(g.edge_induced(&ids))
        }
        None => Some(g.spanning_subgraph(&run.accepted)),
    };
    Ok(SparsityReport {
        l,
        sparse,
        tight,
        witness,
        basis_size: run.accepted.len(),
        basis: run.accepted,
    })
}

/// Whether `g` has a spanning (2, l)-tight subgraph, i.e. whether the
/// (2, l)-sparsity matroid has rank `2|V| - l`.
pub fn has_tight_spanning(g: &Graph, l: usize) -> Result<bool> {
    let r = pebble_game(g, l)?;
    Ok(r.basis_size + l == 2 * g.vertex_count())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NormClass {
    Euclidean,
    NonEuclidean,
}

impl std::str::FromStr for NormClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "euclidean" => Ok(NormClass::Euclidean),
            "non-euclidean" | "non_euclidean" => Ok(NormClass::NonEuclidean),
            _ => Err(Error::Input(format!(
                "unknown norm class \"{s}\" (expected euclidean or non-euclidean)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RigidityReason {
    /// At most one vertex: rigid by convention.
    Trivial,
    TightSpanningSubgraph,
    NoTightSpanningSubgraph,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RigidityDecision {
    pub rigid: bool,
    pub reason: RigidityReason,
    /// A tight spanning subgraph when rigid.
    pub witness: Option<Graph>,
}

/// Rigidity of a graph in the Euclidean plane ((2,3)-tight spanning
/// subgraph) or in any non-Euclidean normed plane ((2,2)-tight spanning
/// subgraph).
pub fn decide_rigidity(g: &Graph, class: NormClass) -> RigidityDecision {
    if g.vertex_count() <= 1 {
        return RigidityDecision {
            rigid: true,
            reason: RigidityReason::Trivial,
            witness: Some(g.clone()),
        };
    }
    let l = match class {
        NormClass::Euclidean => 3,
        NormClass::NonEuclidean => 2,
    };
    let r = pebble_game(g, l).expect("l is valid");
    if r.basis_size + l == 2 * g.vertex_count() {
        RigidityDecision {
            rigid: true,
            reason: RigidityReason::TightSpanningSubgraph,
            witness: Some(g.spanning_subgraph(&r.basis)),
        }
    } else {
        RigidityDecision {
            rigid: false,
            reason: RigidityReason::NoTightSpanningSubgraph,
            witness: None,
        }
    }
}

/// Convenience: `(2,2)`-tightness.
pub fn is_tight(g: &Graph) -> bool {
    pebble_game(g, 2).map(|r| r.tight).unwrap_or(false)
}
