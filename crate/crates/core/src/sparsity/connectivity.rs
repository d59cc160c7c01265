use std::collections::VecDeque;

use crate::graph::Graph;

/// Unit-capacity maximum flow between `s` and `t`, each undirected edge
/// carrying one unit in either direction (Edmonds–Karp).
fn max_flow(g: &Graph, s: usize, t: usize) -> usize {
    let n = g.vertex_count();
    // residual capacity on each ordered pair of an edge
    let mut cap = vec![vec![0i32; n]; n];
    for &(a, b) in g.edges() {
        cap[a][b] = 1;
        cap[b][a] = 1;
    }
    let mut flow = 0;
    loop {
        let mut prev = vec![usize::MAX; n];
        prev[s] = s;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            if x == t {
                break;
            }
            for y in g.neighbors(x) {
                if prev[y] == usize::MAX && cap[x][y] > 0 {
                    prev[y] = x;
                    queue.push_back(y);
                }
            }
        }
        if prev[t] == usize::MAX {
            return flow;
        }
        let mut cur = t;
        while cur != s {
            let p = prev[cur];
            cap[p][cur] -= 1;
            cap[cur][p] += 1;
            cur = p;
        }
        flow += 1;
    }
}

/// Size of a minimum edge cut; 0 for disconnected graphs and for graphs with
/// fewer than two vertices.
pub fn edge_connectivity(g: &Graph) -> usize {
    let n = g.vertex_count();
    if n < 2 || !g.is_connected() {
        return 0;
    }
    (1..n).map(|t| max_flow(g, 0, t)).min().unwrap_or(0)
}
