use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_rational::BigRational;
use num_traits::Zero;

use super::{well_positioned_report, Framework};
use crate::error::{Error, Result};
use crate::norms::RationalPair;
use crate::vector::Covector2;

/// `|E| × 2|V|` matrix of a framework. Row `k` belongs to edge `(v, w)` with
/// `v` before `w`; it holds `φ` in the two columns of `v` and `-φ` in those of
/// `w`, where `φ` is the unit support functional of `p_v - p_w`.
#[derive(Debug, Clone)]
pub struct RigidityMatrix {
    matrix: DMatrix<f64>,
    exact: Option<Vec<Vec<BigRational>>>,
    edges: Vec<(usize, usize)>,
    vertex_count: usize,
}

impl RigidityMatrix {
    pub fn from_rows(rows: &[Vec<f64>], cols: usize) -> Self {
        let matrix = DMatrix::from_fn(rows.len(), cols, |i, j| rows[i][j]);
        Self {
            matrix,
            exact: None,
            edges: Vec::new(),
            vertex_count: cols / 2,
        }
    }

    pub fn from_rational_rows(rows: Vec<Vec<BigRational>>, cols: usize) -> Self {
        let float: Vec<Vec<f64>> = rows
            .iter()
            .map(|r| r.iter().map(super::to_f64).collect())
            .collect();
        let mut m = Self::from_rows(&float, cols);
        m.exact = Some(rows);
        m
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn exact(&self) -> Option<&[Vec<BigRational>]> {
        self.exact.as_deref()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn rows(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn cols(&self) -> usize {
        self.matrix.ncols()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Row-major copy of the entries.
    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.rows())
            .map(|i| self.matrix.row(i).iter().copied().collect())
            .collect()
    }

    /// Submatrix on a subset of rows.
    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let matrix = self.matrix.select_rows(rows);
        let exact = self
            .exact
            .as_ref()
            .map(|e| rows.iter().map(|&i| e[i].clone()).collect());
        let edges = if self.edges.is_empty() {
            Vec::new()
        } else {
            rows.iter().map(|&i| self.edges[i]).collect()
        };
        Self {
            matrix,
            exact,
            edges,
            vertex_count: self.vertex_count,
        }
    }

    /// Largest entrywise difference to another matrix of the same shape.
    pub fn max_gap(&self, other: &RigidityMatrix) -> f64 {
        (&self.matrix - &other.matrix).amax()
    }
}

/// Pseudo-support functionals for the non-well-positioned edges, keyed by
/// edge index pair.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PseudoAssignment {
    entries: BTreeMap<(usize, usize), Covector2>,
}

impl PseudoAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, edge: (usize, usize), f: Covector2) {
        self.entries
            .insert((edge.0.min(edge.1), edge.0.max(edge.1)), f);
    }

    pub fn with(mut self, edge: (usize, usize), f: Covector2) -> Self {
        self.insert(edge, f);
        self
    }

    pub fn get(&self, edge: (usize, usize)) -> Option<Covector2> {
        self.entries.get(&edge).copied()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.entries.keys().copied()
    }
}

pub fn rigidity_matrix(fw: &Framework) -> Result<RigidityMatrix> {
    let bad = well_positioned_report(fw);
    if !bad.is_empty() {
        return Err(Error::NotWellPositioned(
            bad.into_iter().map(|b| b.names).collect(),
        ));
    }
    build(fw, &PseudoAssignment::new())
}

/// Rigidity matrix with the assigned pseudo-support functionals on the
/// edges that are not well-positioned. The assignment must cover exactly
/// those edges.
pub fn pseudo_rigidity_matrix(fw: &Framework, pa: &PseudoAssignment) -> Result<RigidityMatrix> {
    let bad: Vec<(usize, usize)> = well_positioned_report(fw).iter().map(|b| b.edge).collect();
    for &e in &bad {
        if pa.get(e).is_none() {
            let (v, w) = fw.graph().edge_names(e);
            return Err(Error::PseudoAssignment(format!(
                "edge \"{v}\"-\"{w}\" is not well-positioned and has no pseudo-support functional"
            )));
        }
    }
    for e in pa.edges() {
        if !fw.graph().has_edge(e.0, e.1) {
            return Err(Error::PseudoAssignment(format!(
                "assigned pair ({}, {}) is not an edge",
                e.0, e.1
            )));
        }
        if !bad.contains(&e) {
            let (v, w) = fw.graph().edge_names(e);
            return Err(Error::PseudoAssignment(format!(
                "edge \"{v}\"-\"{w}\" is well-positioned and must not be assigned"
            )));
        }
    }
    build(fw, pa)
}

fn build(fw: &Framework, pa: &PseudoAssignment) -> Result<RigidityMatrix> {
    let g = fw.graph();
    let (m, n) = (g.edge_count(), g.vertex_count());
    let mut matrix = DMatrix::zeros(m, 2 * n);
    let mut functionals = Vec::with_capacity(m);
    for (k, &e) in g.edges().iter().enumerate() {
        let f = match pa.get(e) {
            Some(f) => f,
            None => fw.norm().dual_map_unit(fw.edge_vector(e))?,
        };
        let (v, w) = e;
        matrix[(k, 2 * v)] = f.a;
        matrix[(k, 2 * v + 1)] = f.b;
        matrix[(k, 2 * w)] = -f.a;
        matrix[(k, 2 * w + 1)] = -f.b;
        functionals.push(f);
    }
    let exact = if fw.norm().is_polyhedral() {
        exact_rows(fw, pa, &functionals)
    } else {
        None
    };
    Ok(RigidityMatrix {
        matrix,
        exact,
        edges: g.edges().to_vec(),
        vertex_count: n,
    })
}

/// Rational mirror for polygonal norms: exact edge vectors, exact facet
/// normals, and pseudo functionals taken at their exact floating value.
/// Absent if the exact classification of some edge disagrees with the
/// floating one.
fn exact_rows(
    fw: &Framework,
    pa: &PseudoAssignment,
    functionals: &[Covector2],
) -> Option<Vec<Vec<BigRational>>> {
    let g = fw.graph();
    let n = g.vertex_count();
    let pts = fw.exact_placement();
    let mut rows = Vec::with_capacity(g.edge_count());
    for (&(v, w), float) in g.edges().iter().zip(functionals) {
        let f: RationalPair = match pa.get((v, w)) {
            Some(f) => (BigRational::from_float(f.a)?, BigRational::from_float(f.b)?),
            None => {
                let d = (&pts[v].0 - &pts[w].0, &pts[v].1 - &pts[w].1);
                fw.norm().exact_dual_map_unit(&d)?
            }
        };
        let close =
            |q: &BigRational, x: f64| (super::to_f64(q) - x).abs() <= 1e-12 * (1.0 + x.abs());
        if !close(&f.0, float.a) || !close(&f.1, float.b) {
            return None;
        }
        let mut row = vec![BigRational::zero(); 2 * n];
        row[2 * w] = -f.0.clone();
        row[2 * w + 1] = -f.1.clone();
        row[2 * v] = f.0;
        row[2 * v + 1] = f.1;
        rows.push(row);
    }
    Some(rows)
}

/// Largest entry gap between each member's rigidity matrix and the target
/// pseudo-rigidity matrix.
pub fn limit_gaps(
    seq: &[Framework],
    target: &Framework,
    pa: &PseudoAssignment,
) -> Result<Vec<f64>> {
    let limit = pseudo_rigidity_matrix(target, pa)?;
    seq.iter()
        .map(|fw| {
            if fw.graph() != target.graph() {
                return Err(Error::Precondition(
                    "sequence member has a different graph than the target".into(),
                ));
            }
            Ok(rigidity_matrix(fw)?.max_gap(&limit))
        })
        .collect()
}

/// Whether the rigidity matrices of `seq` approach the pseudo-rigidity
/// matrix of `target`: the last member's largest entry gap is at most `tol`.
pub fn framework_limit_check(
    seq: &[Framework],
    target: &Framework,
    pa: &PseudoAssignment,
    tol: f64,
) -> Result<bool> {
    let gaps = limit_gaps(seq, target, pa)?;
    Ok(gaps.last().is_some_and(|&g| g <= tol))
}
