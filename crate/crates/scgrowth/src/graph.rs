//! Strongly connected components (iterative Tarjan) and a topological order
//! on the condensation.

/// Tarjan's algorithm over adjacency lists. Returns one vector of vertex ids
/// per component; the components come out in reverse topological order
/// (a component is emitted only after everything it reaches).
pub fn tarjan_scc(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = adj.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut next_index = 0usize;
    let mut comps: Vec<Vec<usize>> = Vec::new();

    // Explicit DFS stack: (vertex, next child position).
    let mut call: Vec<(usize, usize)> = Vec::new();

    for start in 0..n {
        if index[start] != usize::MAX {
            continue;
        }
        call.push((start, 0));
        index[start] = next_index;
        low[start] = next_index;
        next_index += 1;
        stack.push(start);
        on_stack[start] = true;

        while let Some(&mut (v, ref mut ci)) = call.last_mut() {
            if *ci < adj[v].len() {
                let w = adj[v][*ci];
                *ci += 1;
                if index[w] == usize::MAX {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack underflow");
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    comps.push(comp);
                }
            }
        }
    }
    comps
}

/// Components in topological order: if any edge runs from component `k` to
/// component `m` with `k != m`, then `k < m` in the returned order.
/// Ties (no constraint) are broken by smallest contained vertex, so the
/// order is deterministic.
pub fn scc_topological(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut comps = tarjan_scc(adj);
    // Tarjan emits reverse-topological; flipping gives sources first.
    comps.reverse();
    comps
}

/// Component id per vertex for a component list.
pub fn component_ids(n: usize, comps: &[Vec<usize>]) -> Vec<usize> {
    let mut ids = vec![usize::MAX; n];
    for (c, comp) in comps.iter().enumerate() {
        for &v in comp {
            ids[v] = c;
        }
    }
    ids
}

/// Whether the digraph on `n >= 1` vertices is strongly connected.
pub fn is_strongly_connected(adj: &[Vec<usize>]) -> bool {
    tarjan_scc(adj).len() == 1
}
