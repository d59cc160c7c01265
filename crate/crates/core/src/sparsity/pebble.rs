//! The (2, l)-pebble game.
//!
//! Every vertex starts with two pebbles. An accepted edge is oriented away
//! from a vertex that pays one pebble for it. An edge `uv` is accepted when
//! `l + 1` pebbles can be gathered on `u` and `v` by reversing directed paths
//! towards free pebbles; otherwise the vertices reachable from `u` and `v`
//! span a subgraph that, together with `uv`, violates the sparsity count.

use std::collections::BTreeSet;

use crate::graph::Graph;

/// State of a pebble game run on a fixed vertex set.
pub(crate) struct PebbleGame {
    pebbles: Vec<u8>,
    out: Vec<Vec<usize>>,
    l: usize,
}

impl PebbleGame {
    pub(crate) fn new(n: usize, l: usize) -> Self {
        assert!(l == 2 || l == 3, "l must be 2 or 3");
        Self {
            pebbles: vec![2; n],
            out: vec![Vec::new(); n],
            l,
        }
    }

    /// Depth-first search from `start` along out-edges for a vertex with a
    /// free pebble, skipping `blocked`; on success the path is reversed and
    /// the pebble moves to `start`.
    fn fetch(&mut self, start: usize, blocked: usize) -> bool {
        let n = self.pebbles.len();
        let mut parent = vec![usize::MAX; n];
        let mut seen = vec![false; n];
        seen[start] = true;
        seen[blocked] = true;
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            // heads are visited in vertex order
            let mut heads = self.out[x].clone();
            heads.sort_unstable();
            for y in heads {
                if seen[y] {
                    continue;
                }
                seen[y] = true;
                parent[y] = x;
                if self.pebbles[y] > 0 {
                    self.pebbles[y] -= 1;
                    let mut cur = y;
                    while cur != start {
                        let p = parent[cur];
                        let pos = self.out[p].iter().position(|&h| h == cur).unwrap();
                        self.out[p].swap_remove(pos);
                        self.out[cur].push(p);
                        cur = p;
                    }
                    self.pebbles[start] += 1;
                    return true;
                }
                stack.push(y);
            }
        }
        false
    }

    fn reach(&self, sources: &[usize]) -> Vec<usize> {
        let mut seen = BTreeSet::new();
        let mut stack: Vec<usize> = sources.to_vec();
        seen.extend(sources.iter().copied());
        while let Some(x) = stack.pop() {
            for &y in &self.out[x] {
                if seen.insert(y) {
                    stack.push(y);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Tries to accept `uv`. On rejection returns the vertex set whose
    /// induced accepted edges, plus `uv`, overfill the count.
    pub(crate) fn try_insert(&mut self, u: usize, v: usize) -> Result<(), Vec<usize>> {
        let need = self.l + 1;
        while usize::from(self.pebbles[u] + self.pebbles[v]) < need {
            if !(self.fetch(u, v) || self.fetch(v, u)) {
                return Err(self.reach(&[u, v]));
            }
        }
        if self.pebbles[u] > 0 {
            self.pebbles[u] -= 1;
            self.out[u].push(v);
        } else {
            self.pebbles[v] -= 1;
            self.out[v].push(u);
        }
        Ok(())
    }
}

/// Outcome of running the game over a graph's edges in a given order.
pub(crate) struct PebbleRun {
    pub accepted: Vec<usize>,
    /// First rejected edge with the reach set certifying the rejection and
    /// the edges accepted before it.
    pub first_rejection: Option<Rejection>,
}

pub(crate) struct Rejection {
    pub edge: usize,
    pub reach: Vec<usize>,
    pub accepted_before: Vec<usize>,
}

pub(crate) fn run(g: &Graph, l: usize, order: &[usize]) -> PebbleRun {
    let mut game = PebbleGame::new(g.vertex_count(), l);
    let mut accepted = Vec::new();
    let mut first_rejection = None;
    for &k in order {
        let (u, v) = g.edges()[k];
        match game.try_insert(u, v) {
            Ok(()) => accepted.push(k),
            Err(reach) => {
                if first_rejection.is_none() {
                    first_rejection = Some(Rejection {
                        edge: k,
                        reach,
                        accepted_before: accepted.clone(),
                    });
                }
            }
        }
    }
    accepted.sort_unstable();
    PebbleRun {
        accepted,
        first_rejection,
    }
}
