//! Standard and random graph families used by the verification suites.

use std::collections::BTreeSet;

use rand::Rng;

use crate::graph::WeightedGraph;

/// Path on `n ≥ 2` vertices with unit weights.
pub fn path_graph(n: usize) -> WeightedGraph {
    WeightedGraph::new(n, (1..n).map(|i| (i - 1, i, 1.0))).expect("path is a valid graph")
}

/// Cycle on `n ≥ 3` vertices with unit weights.
pub fn cycle_graph(n: usize) -> WeightedGraph {
    WeightedGraph::new(n, (0..n).map(|i| (i, (i + 1) % n, 1.0))).expect("cycle is a valid graph")
}

/// Complete graph on `n ≥ 2` vertices with unit weights.
pub fn complete_graph(n: usize) -> WeightedGraph {
    let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j, 1.0)));
    WeightedGraph::new(n, edges).expect("complete graph is valid")
}

/// Random connected graph: a random spanning tree plus each remaining pair
/// with probability `extra`; weights uniform in `[0.1, 5]`.
pub fn random_connected_graph<R: Rng + ?Sized>(rng: &mut R, n: usize, extra: f64) -> WeightedGraph {
    assert!(n >= 2, "need at least two vertices");
    let mut pairs = BTreeSet::new();
    for v in 1..n {
        let u = rng.random_range(0..v);
        pairs.insert((u, v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if !pairs.contains(&(u, v)) && rng.random_bool(extra) {
                pairs.insert((u, v));
            }
        }
    }
    let edges: Vec<_> = pairs
        .into_iter()
        .map(|(u, v)| (u, v, rng.random_range(0.1..=5.0)))
        .collect();
    WeightedGraph::new(n, edges).expect("spanning tree keeps the graph connected")
}

/// Random connected graph with a random vertex count in `2..=max_n`.
pub fn random_graph_up_to<R: Rng + ?Sized>(rng: &mut R, max_n: usize) -> WeightedGraph {
    let n = rng.random_range(2..=max_n);
    let extra = rng.random_range(0.0..0.6);
    random_connected_graph(rng, n, extra)
}

/// All connected simple graphs on `n` vertices with unit weights, one per
/// isomorphism class. Brute force; intended for `n ≤ 6`.
pub fn connected_graphs(n: usize) -> Vec<WeightedGraph> {
    assert!((2..=7).contains(&n), "enumeration supports 2..=7 vertices");
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let mut pair_index = vec![vec![0usize; n]; n];
    for (i, &(a, b)) in pairs.iter().enumerate() {
        pair_index[a][b] = i;
        pair_index[b][a] = i;
    }
    let perms = permutations(n);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u32..(1 << pairs.len()) {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        if !is_connected(n, &edges) {
            continue;
        }
        let canonical = perms
            .iter()
            .map(|perm| {
                let mut code = 0u32;
                for &(a, b) in &edges {
                    code |= 1 << pair_index[perm[a]][perm[b]];
                }
                code
            })
            .min()
            .unwrap_or(mask);
        if seen.insert(canonical) {
            let g = WeightedGraph::new(n, edges.iter().map(|&(a, b)| (a, b, 1.0)))
                .expect("connected by construction");
            out.push(g);
        }
    }
    out
}

fn is_connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    let mut components = n;
    for &(a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
            components -= 1;
        }
    }
    components == 1
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn extend(current: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if current.len() == used.len() {
            out.push(current.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                current.push(i);
                extend(current, used, out);
                current.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn connected_graph_counts() {
        // OEIS A001349
        let counts: Vec<usize> = (2..=6).map(|n| connected_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 6, 21, 112]);
    }
}
