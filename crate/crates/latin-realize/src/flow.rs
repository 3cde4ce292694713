//! Small integral flow and matching routines.
//!
//! Everything here runs on dense bipartite graphs with a few dozen nodes, so
//! the implementations favour determinism and clarity over asymptotics:
//! breadth-first augmentation with fixed neighbour order, lowest index first.

/// A bipartite transportation problem: ship `supply[l]` units out of each
/// left node and `demand[r]` units into each right node, moving at most
/// `cap[l][r]` units along the edge (l, r).
///
/// Total supply must equal total demand; `solve` finds an integral flow
/// meeting every bound exactly, or reports infeasibility.
#[derive(Debug, Clone)]
pub struct FlowProblem {
    pub supply: Vec<usize>,
    pub demand: Vec<usize>,
    pub cap: Vec<Vec<usize>>,
}

impl FlowProblem {
    pub fn new(supply: Vec<usize>, demand: Vec<usize>, cap: Vec<Vec<usize>>) -> Self {
        debug_assert_eq!(cap.len(), supply.len());
        debug_assert!(cap.iter().all(|row| row.len() == demand.len()));
        FlowProblem { supply, demand, cap }
    }

    /// Max-flow from a super-source to a super-sink; returns the edge flows
    /// when every supply and demand is saturated, None otherwise.
    pub fn solve(&self) -> Option<Vec<Vec<usize>>> {
        let nl = self.supply.len();
        let nr = self.demand.len();
        let total: usize = self.supply.iter().sum();
        if total != self.demand.iter().sum::<usize>() {
            return None;
        }
        // residual capacities: res_s[l] from source, res[l][r] and flow[l][r]
        // across, res_t[r] to sink
        let mut res_s = self.supply.clone();
        let mut res_t = self.demand.clone();
        let mut flow = vec![vec![0usize; nr]; nl];
        let mut shipped = 0usize;

        // BFS over the layered residual graph; node ids: 0 = source,
        // 1..=nl left, nl+1..=nl+nr right, nl+nr+1 sink
        let sink = nl + nr + 1;
        let mut parent = vec![usize::MAX; nl + nr + 2];
        while shipped < total {
            parent.fill(usize::MAX);
            parent[0] = 0;
            let mut queue = std::collections::VecDeque::new();
            queue.push_back(0usize);
            'bfs: while let Some(u) = queue.pop_front() {
                if u == 0 {
                    for l in 0..nl {
                        if res_s[l] > 0 && parent[1 + l] == usize::MAX {
                            parent[1 + l] = 0;
                            queue.push_back(1 + l);
                        }
                    }
                } else if u <= nl {
                    let l = u - 1;
                    for r in 0..nr {
                        if self.cap[l][r] > flow[l][r] && parent[1 + nl + r] == usize::MAX {
                            parent[1 + nl + r] = u;
                            queue.push_back(1 + nl + r);
                        }
                    }
                } else if u <= nl + nr {
                    let r = u - 1 - nl;
                    if res_t[r] > 0 && parent[sink] == usize::MAX {
                        parent[sink] = u;
                        break 'bfs;
                    }
                    // residual back-edges right -> left
                    for l in 0..nl {
                        if flow[l][r] > 0 && parent[1 + l] == usize::MAX {
                            parent[1 + l] = u;
                            queue.push_back(1 + l);
                        }
                    }
                }
            }
            if parent[sink] == usize::MAX {
                return None; // no augmenting path but flow not saturated
            }
            // bottleneck along the path
            let mut bottleneck = usize::MAX;
            let mut v = sink;
            while v != 0 {
                let u = parent[v];
                let avail = if u == 0 {
                    res_s[v - 1]
                } else if v == sink {
                    res_t[u - 1 - nl]
                } else if u <= nl {
                    let (l, r) = (u - 1, v - 1 - nl);
                    self.cap[l][r] - flow[l][r]
                } else {
                    let (r, l) = (u - 1 - nl, v - 1);
                    flow[l][r]
                };
                bottleneck = bottleneck.min(avail);
                v = u;
            }
            // apply
            let mut v = sink;
            while v != 0 {
                let u = parent[v];
                if u == 0 {
                    res_s[v - 1] -= bottleneck;
                } else if v == sink {
                    res_t[u - 1 - nl] -= bottleneck;
                } else if u <= nl {
                    flow[u - 1][v - 1 - nl] += bottleneck;
                } else {
                    flow[v - 1][u - 1 - nl] -= bottleneck;
                }
                v = u;
            }
            shipped += bottleneck;
        }
        Some(flow)
    }
}

/// Decomposes an r-regular bipartite occurrence matrix (row sums and column
/// sums all equal to `r`, entries are multiplicities) into `r` permutation
/// matrices, returned as column assignments per round.
///
/// Regular bipartite graphs always decompose into perfect matchings; a dead
/// end here means the input was not regular.
pub fn regular_decomposition(mut occ: Vec<Vec<usize>>, r: usize) -> Option<Vec<Vec<usize>>> {
    let n = occ.len();
    if n == 0 {
        return Some(vec![]);
    }
    let mut rounds = Vec::with_capacity(r);
    for _ in 0..r {
        let matching = perfect_matching(&occ)?;
        for (row, &col) in matching.iter().enumerate() {
            occ[row][col] -= 1;
        }
        rounds.push(matching);
    }
    Some(rounds)
}

/// Kuhn's augmenting-path matching over the positive entries of `occ`.
/// Returns `match_of_row[row] = col` when a perfect matching exists.
pub fn perfect_matching(occ: &[Vec<usize>]) -> Option<Vec<usize>> {
    let n = occ.len();
    let mut col_of: Vec<Option<usize>> = vec![None; n];
    let mut row_of: Vec<Option<usize>> = vec![None; n];

    fn try_augment(
        row: usize,
        occ: &[Vec<usize>],
        col_of: &mut [Option<usize>],
        row_of: &mut [Option<usize>],
        visited: &mut [bool],
    ) -> bool {
        for col in 0..occ.len() {
            if occ[row][col] > 0 && !visited[col] {
                visited[col] = true;
                if row_of[col].is_none()
                    || try_augment(row_of[col].unwrap(), occ, col_of, row_of, visited)
                {
                    col_of[row] = Some(col);
                    row_of[col] = Some(row);
                    return true;
                }
            }
        }
        false
    }

    for row in 0..n {
        let mut visited = vec![false; n];
        if !try_augment(row, occ, &mut col_of, &mut row_of, &mut visited) {
            return None;
        }
    }
    col_of.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_transport() {
        let f = FlowProblem::new(
            vec![2, 2],
            vec![1, 3],
            vec![vec![1, 2], vec![1, 2]],
        );
        let x = f.solve().unwrap();
        assert_eq!(x[0][0] + x[0][1], 2);
        assert_eq!(x[1][0] + x[1][1], 2);
        assert_eq!(x[0][0] + x[1][0], 1);
        assert_eq!(x[0][1] + x[1][1], 3);
    }

    #[test]
    fn infeasible_when_capacity_short() {
        let f = FlowProblem::new(vec![2], vec![2], vec![vec![1]]);
        assert!(f.solve().is_none());
    }

    #[test]
    fn infeasible_when_totals_differ() {
        let f = FlowProblem::new(vec![2], vec![1], vec![vec![5]]);
        assert!(f.solve().is_none());
    }

    #[test]
    fn decomposes_regular_multigraph() {
        // 3-regular on 3+3 nodes with a doubled edge
        let occ = vec![
            vec![2, 1, 0],
            vec![1, 0, 2],
            vec![0, 2, 1],
        ];
        let rounds = regular_decomposition(occ.clone(), 3).unwrap();
        assert_eq!(rounds.len(), 3);
        let mut recount = vec![vec![0usize; 3]; 3];
        for round in &rounds {
            let mut seen = vec![false; 3];
            for (row, &col) in round.iter().enumerate() {
                assert!(!seen[col]);
                seen[col] = true;
                recount[row][col] += 1;
            }
        }
        assert_eq!(recount, occ);
    }

    #[test]
    fn no_perfect_matching_detected() {
        let occ = vec![vec![1, 0], vec![1, 0]];
        assert!(perfect_matching(&occ).is_none());
    }
}
