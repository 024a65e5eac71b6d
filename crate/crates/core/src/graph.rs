// Directed-graph helpers over adjacency lists indexed by node.

use alloc::vec;
use alloc::vec::Vec;

/// Tarjan's algorithm, iterative. Components come out in reverse
/// topological order: a component is emitted only after every component
/// reachable from it. `filter` restricts the graph to a node subset.
pub(crate) fn tarjan(adj: &[Vec<usize>], filter: impl Fn(usize) -> bool) -> Vec<Vec<usize>> {
    const UNVISITED: usize = usize::MAX;
    let n = adj.len();
    let mut index = vec![UNVISITED; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut components = Vec::new();
    let mut next_index = 0;
    // (node, next edge to inspect)
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNVISITED || !filter(root) {
            continue;
        }
        call.push((root, 0));
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut edge)) = call.last_mut() {
            if let Some(&w) = adj[v].get(*edge) {
                *edge += 1;
                if !filter(w) {
                    continue;
                }
                if index[w] == UNVISITED {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack");
                    on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comp.sort_unstable();
                components.push(comp);
            }
        }
    }
    components
}

pub(crate) fn reachable(adj: &[Vec<usize>], sources: impl IntoIterator<Item = usize>) -> Vec<bool> {
    let mut seen = vec![false; adj.len()];
    let mut todo: Vec<usize> = Vec::new();
    for s in sources {
        if !seen[s] {
            seen[s] = true;
            todo.push(s);
        }
    }
    while let Some(v) = todo.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                todo.push(w);
            }
        }
    }
    seen
}

/// A component is nontrivial if it has a cycle: more than one node or a
/// self-loop.
pub(crate) fn is_nontrivial(adj: &[Vec<usize>], comp: &[usize]) -> bool {
    comp.len() > 1 || adj[comp[0]].contains(&comp[0])
}

/// Nodes lying on some cycle whose maximal color is even, restricted to
/// `within`.
///
/// For each even color `c` the graph is cut down to nodes of color `≤ c`;
/// a nontrivial SCC of that subgraph containing a node of color `c` is
/// covered by such cycles, and every such cycle lives in one.
pub(crate) fn even_cycle_nodes(adj: &[Vec<usize>], colors: &[u32], within: &[bool]) -> Vec<bool> {
    let mut evens: Vec<u32> = (0..adj.len())
        .filter(|&v| within[v] && colors[v].is_multiple_of(2))
        .map(|v| colors[v])
        .collect();
    evens.sort_unstable();
    evens.dedup();
    let mut on = vec![false; adj.len()];
    for c in evens {
        for comp in tarjan(adj, |v| within[v] && colors[v] <= c) {
            if comp.iter().any(|&v| colors[v] == c) && is_nontrivial(adj, &comp) {
                for v in comp {
                    on[v] = true;
                }
            }
        }
    }
    on
}

/// Is there a cycle reachable from `sources` whose maximal color is even?
pub(crate) fn even_cycle_reachable(
    adj: &[Vec<usize>],
    colors: &[u32],
    sources: impl IntoIterator<Item = usize>,
) -> bool {
    let reach = reachable(adj, sources);
    even_cycle_nodes(adj, colors, &reach).contains(&true)
}

/// Nodes that can reach a marked node (marked nodes included).
pub(crate) fn can_reach(adj: &[Vec<usize>], marked: &[bool]) -> Vec<bool> {
    let mut rev = vec![Vec::new(); adj.len()];
    for (v, succ) in adj.iter().enumerate() {
        for &w in succ {
            rev[w].push(v);
        }
    }
    reachable(&rev, (0..adj.len()).filter(|&v| marked[v]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn components_in_reverse_topological_order() {
        // 0 -> 1 <-> 2 -> 3, 3 self-loop, 4 isolated
        let adj = vec![vec![1], vec![2], vec![1, 3], vec![3], vec![]];
        let comps = tarjan(&adj, |_| true);
        assert_eq!(comps, vec![vec![3], vec![1, 2], vec![0], vec![4]]);
        assert!(is_nontrivial(&adj, &[3]));
        assert!(!is_nontrivial(&adj, &[0]));
    }

    #[test]
    fn deep_chain_does_not_overflow() {
        let n = 200_000;
        let adj: Vec<Vec<usize>> = (0..n).map(|i| vec![(i + 1) % n]).collect();
        let comps = tarjan(&adj, |_| true);
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].len(), n);
    }

    #[test]
    fn even_cycles() {
        // 0 -> 1 -> 0 with colors 1, 2: max 2, accepting.
        let adj = vec![vec![1], vec![0]];
        assert!(even_cycle_reachable(&adj, &[1, 2], [0]));
        assert!(!even_cycle_reachable(&adj, &[3, 2], [0]));
        // 0 self-loop color 2, 1 self-loop color 3, 0 -> 1.
        let adj = vec![vec![0, 1], vec![1]];
        assert!(even_cycle_reachable(&adj, &[2, 3], [0]));
        assert!(!even_cycle_reachable(&adj, &[2, 3], [1]));
        // No cycle through the even node.
        let adj = vec![vec![1], vec![1]];
        assert!(!even_cycle_reachable(&adj, &[2, 1], [0]));
    }
}
