//! Strong connectivity of small digraphs, used as the irreducibility test for
//! exponent matrices (edge `i -> j` iff the off-diagonal entry is positive).

/// `true` iff every ordered pair of distinct vertices is joined by a directed
/// path. Self-loops are ignored. A single vertex is vacuously strongly
/// connected.
///
/// One forward and one backward reachability sweep from vertex 0: the graph is
/// strongly connected iff vertex 0 reaches everything and is reached by
/// everything.
pub fn strongly_connected(adjacency: &[Vec<bool>]) -> bool {
    let n = adjacency.len();
    assert!(adjacency.iter().all(|row| row.len() == n), "not square");
    if n <= 1 {
        return true;
    }
    let forward = reach_from_zero(adjacency, false);
    if !forward {
        return false;
    }
    reach_from_zero(adjacency, true)
}

fn reach_from_zero(adjacency: &[Vec<bool>], transpose: bool) -> bool {
    let n = adjacency.len();
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for w in 0..n {
            if w == v || seen[w] {
                continue;
            }
            let edge = if transpose {
                adjacency[w][v]
            } else {
                adjacency[v][w]
            };
            if edge {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == n
}
