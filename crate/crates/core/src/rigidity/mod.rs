//! Frameworks, rigidity matrices, flexes and stresses.

mod json;
mod matrix;
mod placement;
mod rank;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::norms::{Norm, RationalPair};
use crate::vector::Vector2;

pub use matrix::{
    framework_limit_check, limit_gaps, pseudo_rigidity_matrix, rigidity_matrix, PseudoAssignment,
    RigidityMatrix,
};
pub use placement::{in_general_position, random_well_positioned_placement, DEFAULT_ATTEMPTS};
pub use rank::{exact_rank, numeric_rank, RankMethod, RankReport, DEFAULT_TOL};

/// A graph, a placement of its vertices, and the ambient norm.
///
/// The placement is indexed like the graph's vertex list. A framework built
/// from rational data keeps the exact coordinates alongside the floating
/// ones so that polygonal norms can be handled in exact arithmetic.
#[derive(Debug, Clone)]
pub struct Framework {
    graph: Graph,
    placement: Vec<Vector2>,
    exact: Option<Vec<RationalPair>>,
    norm: Norm,
}

impl Framework {
    pub fn new(graph: Graph, placement: Vec<Vector2>, norm: Norm) -> Result<Self> {
        if placement.len() != graph.vertex_count() {
            return Err(Error::InvalidPlacement(format!(
                "{} points for {} vertices",
                placement.len(),
                graph.vertex_count()
            )));
        }
        if let Some(i) = placement
            .iter()
            .position(|p| Vector2::try_new(p.x, p.y).is_none())
        {
            return Err(Error::InvalidPlacement(format!(
                "non-finite coordinate at \"{}\"",
                graph.name(i)
            )));
        }
        Ok(Self {
            graph,
            placement,
            exact: None,
            norm,
        })
    }

    pub fn from_rational(graph: Graph, exact: Vec<RationalPair>, norm: Norm) -> Result<Self> {
        let placement = exact
            .iter()
            .map(|(x, y)| Vector2::new(to_f64(x), to_f64(y)))
            .collect();
        let mut fw = Self::new(graph, placement, norm)?;
        fw.exact = Some(exact);
        Ok(fw)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn placement(&self) -> &[Vector2] {
        &self.placement
    }

    pub fn norm(&self) -> &Norm {
        &self.norm
    }

    pub fn point(&self, v: usize) -> Vector2 {
        self.placement[v]
    }

    pub fn has_rational_placement(&self) -> bool {
        self.exact.is_some()
    }

    /// Exact coordinates: the stored rationals, or the exact value of each
    /// floating coordinate.
    pub fn exact_placement(&self) -> Vec<RationalPair> {
        match &self.exact {
            Some(e) => e.clone(),
            None => self
                .placement
                .iter()
                .map(|p| {
                    (
                        BigRational::from_float(p.x).expect("finite"),
                        BigRational::from_float(p.y).expect("finite"),
                    )
                })
                .collect(),
        }
    }

    /// Same graph and norm, new placement.
    pub fn with_placement(&self, placement: Vec<Vector2>) -> Result<Self> {
        Self::new(self.graph.clone(), placement, self.norm.clone())
    }

    pub fn with_norm(&self, norm: Norm) -> Self {
        Self {
            norm,
            ..self.clone()
        }
    }

    /// `p_v - p_w` for an edge `(v, w)`.
    pub fn edge_vector(&self, e: (usize, usize)) -> Vector2 {
        self.placement[e.0] - self.placement[e.1]
    }

    pub fn is_well_positioned(&self) -> bool {
        well_positioned_report(self).is_empty()
    }
}

pub(crate) fn to_f64(q: &BigRational) -> f64 {
    num_traits::ToPrimitive::to_f64(q).unwrap_or(f64::NAN)
}

/// An edge whose direction has no unique support functional.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OffendingEdge {
    pub edge: (usize, usize),
    pub names: (String, String),
    /// Both endpoints sit at the same point.
    pub coincident: bool,
}

/// The edges of `fw` whose direction is not a smooth point of the norm.
pub fn well_positioned_report(fw: &Framework) -> Vec<OffendingEdge> {
    fw.graph
        .edges()
        .iter()
        .filter_map(|&e| {
            let d = fw.edge_vector(e);
            let coincident = d.is_zero();
            let smooth = !coincident && fw.norm.is_smooth_at(d).unwrap_or(false);
            (!smooth).then(|| OffendingEdge {
                edge: e,
                names: fw.graph.edge_names(e),
                coincident,
            })
        })
        .collect()
}

/// Dimension of the space of trivial infinitesimal motions: translations,
/// plus rotations in the Euclidean plane.
pub fn trivial_motion_dim(norm: &Norm) -> usize {
    if norm.is_euclidean() {
        3
    } else {
        2
    }
}

/// Verdicts for a well-positioned framework.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrameworkClass {
    pub independent: bool,
    pub rigid: bool,
    pub isostatic: bool,
}

impl FrameworkClass {
    pub fn from_rank(rank: usize, vertices: usize, edges: usize, norm: &Norm) -> Self {
        let independent = rank == edges;
        let rigid = vertices <= 1 || rank + trivial_motion_dim(norm) == 2 * vertices;
        Self {
            independent,
            rigid,
            isostatic: independent && rigid,
        }
    }
}

pub fn classify_framework(fw: &Framework, tol: f64) -> Result<FrameworkClass> {
    let m = rigidity_matrix(fw)?;
    let rank = numeric_rank(&m, tol)?.rank;
    Ok(FrameworkClass::from_rank(
        rank,
        fw.graph.vertex_count(),
        fw.graph.edge_count(),
        &fw.norm,
    ))
}

/// Rank of a matrix, exactly when it carries a rational mirror and
/// numerically otherwise.
pub fn certified_rank(m: &RigidityMatrix, tol: f64) -> Result<RankReport> {
    if m.exact().is_some() {
        exact_rank(m)
    } else {
        numeric_rank(m, tol)
    }
}

/// Orthonormal basis of the infinitesimal flexes, one velocity per vertex.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FlexBasis {
    pub vectors: Vec<Vec<Vector2>>,
}

/// Orthonormal basis of the stresses, one weight per edge.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StressBasis {
    pub vectors: Vec<Vec<f64>>,
}

pub fn flex_space(fw: &Framework, tol: f64) -> Result<FlexBasis> {
    let m = rigidity_matrix(fw)?;
    Ok(flexes_of(&m, tol))
}

pub fn stress_space(fw: &Framework, tol: f64) -> Result<StressBasis> {
    let m = rigidity_matrix(fw)?;
    Ok(stresses_of(&m, tol))
}

/// Kernel of a (pseudo-)rigidity matrix.
pub fn flexes_of(m: &RigidityMatrix, tol: f64) -> FlexBasis {
    let vectors = rank::null_space(m.matrix(), tol)
        .into_iter()
        .map(|u| {
            u.as_slice()
                .chunks(2)
                .map(|c| Vector2::new(c[0], c[1]))
                .collect()
        })
        .collect();
    FlexBasis { vectors }
}

/// Left kernel of a (pseudo-)rigidity matrix.
pub fn stresses_of(m: &RigidityMatrix, tol: f64) -> StressBasis {
    let vectors = rank::null_space(&m.matrix().transpose(), tol)
        .into_iter()
        .map(|a| a.as_slice().to_vec())
        .collect();
    StressBasis { vectors }
}
