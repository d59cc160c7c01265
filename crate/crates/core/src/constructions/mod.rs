//! Graph moves, their geometric realisations, reduction to `K1`, and
//! independent placements of `K4`.

mod geometric;
mod k4;
mod moves;
mod reduction;
mod sweep;

use serde::{Deserialize, Serialize};

pub use geometric::{apply_move_geometric, realize};
pub use k4::{
    k4_not_strictly_convex, k4_rigid_placement, k4_sc_nonsmooth, nonsmooth_setup, NonSmoothSetup,
};
pub use moves::{apply_move, random_move, replay, Move, MoveSequence};
pub use reduction::find_reduction;
pub use sweep::{
    circle_intersect, k4_sc_smooth, sweep, sweep_derivative, SweepSample, DERIVATIVE_THRESHOLD,
};

use crate::error::Result;
use crate::rigidity::{certified_rank, rigidity_matrix, Framework, RankMethod};

/// Perturbation schedules run over `n = 2^k` for `k = 1..=SCHEDULE_MAX_EXP`.
pub(crate) const SCHEDULE_MAX_EXP: u32 = 16;

/// Default `ε` for the path construction.
pub const DEFAULT_EPSILON: f64 = 0.9;

/// Default number of path samples.
pub const DEFAULT_GRID: usize = 720;

/// Rank record attached to a constructed framework.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub rank: usize,
    pub tolerance: f64,
    pub method: RankMethod,
    pub flex_dim: usize,
}

/// Rank of the rigidity matrix, exact when the placement is rational, with
/// the dimension of the flex space.
pub fn certify(fw: &Framework, tol: f64) -> Result<Certificate> {
    let m = rigidity_matrix(fw)?;
    let r = certified_rank(&m, tol)?;
    Ok(Certificate {
        rank: r.rank,
        tolerance: r.tolerance,
        method: r.method,
        flex_dim: 2 * fw.graph().vertex_count() - r.rank,
    })
}

#[cfg(test)]
mod tests;
