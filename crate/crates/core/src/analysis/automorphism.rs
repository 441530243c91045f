//! Search for a non-identity automorphism by color refinement and
//! individualization with backtracking.
//!
//! Refinement assigns each vertex the signature (color, sorted neighbor
//! colors) and renumbers colors by sorted signature until the number of
//! classes stops growing. Renumbering depends only on the signatures, so the
//! coloring is invariant under isomorphism and every automorphism maps each
//! class onto itself. Candidates are verified edge by edge before returning.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use super::bitgraph::BitGraph;

#[derive(Clone, Debug, PartialEq, Eq)]
struct Coloring {
    colors: Vec<u32>,
    classes: usize,
    trace: u64,
}

fn refine(graph: &BitGraph, mut colors: Vec<u32>) -> Coloring {
    let mut trace = DefaultHasher::new();
    let mut classes = count_classes(&colors);
    loop {
        let mut signatures: Vec<(u32, Vec<u32>, usize)> = (0..graph.n())
            .map(|v| {
                let mut around: Vec<u32> = graph.neighbors(v).map(|u| colors[u]).collect();
                around.sort_unstable();
                (colors[v], around, v)
            })
            .collect();
        signatures.sort_unstable();
        let mut next = vec![0u32; graph.n()];
        let mut color = 0u32;
        for i in 0..signatures.len() {
            let fresh = i == 0
                || (signatures[i].0, &signatures[i].1) != (signatures[i - 1].0, &signatures[i - 1].1);
            if fresh {
                if i > 0 {
                    color += 1;
                }
                (signatures[i].0, &signatures[i].1).hash(&mut trace);
            }
            next[signatures[i].2] = color;
        }
        let refined = if graph.n() == 0 { 0 } else { color as usize + 1 };
        colors = next;
        if refined == classes {
            return Coloring {
                colors,
                classes,
                trace: trace.finish(),
            };
        }
        classes = refined;
    }
}

fn count_classes(colors: &[u32]) -> usize {
    let mut seen = colors.to_vec();
    seen.sort_unstable();
    seen.dedup();
    seen.len()
}

fn individualize(c: &Coloring, v: usize) -> Vec<u32> {
    c.colors
        .iter()
        .enumerate()
        .map(|(u, &k)| 2 * k + (u == v) as u32)
        .collect()
}

fn histogram(c: &Coloring) -> Vec<usize> {
    let mut h = vec![0; c.classes];
    for &k in &c.colors {
        h[k as usize] += 1;
    }
    h
}

fn compatible(a: &Coloring, b: &Coloring) -> bool {
    a.classes == b.classes && a.trace == b.trace && histogram(a) == histogram(b)
}

/// True when `perm` maps edges onto edges; `perm` is a bijection by construction.
pub(crate) fn preserves_edges(graph: &BitGraph, perm: &[usize]) -> bool {
    (0..graph.n()).all(|a| {
        graph
            .neighbors(a)
            .all(|b| graph.has_edge(perm[a], perm[b]))
    })
}

/// Finds an isomorphism from `left` to `right` colorings of the same graph.
fn matching(graph: &BitGraph, left: &Coloring, right: &Coloring) -> Option<Vec<usize>> {
    if !compatible(left, right) {
        return None;
    }
    if left.classes == graph.n() {
        let mut by_color = vec![0; graph.n()];
        for (v, &k) in right.colors.iter().enumerate() {
            by_color[k as usize] = v;
        }
        let perm: Vec<usize> = left.colors.iter().map(|&k| by_color[k as usize]).collect();
        return preserves_edges(graph, &perm).then_some(perm);
    }
    let hist = histogram(left);
    let target = hist.iter().position(|&size| size > 1)? as u32;
    let x = left.colors.iter().position(|&k| k == target)?;
    let left_next = refine(graph, individualize(left, x));
    for y in (0..graph.n()).filter(|&y| right.colors[y] == target) {
        let right_next = refine(graph, individualize(right, y));
        if let Some(perm) = matching(graph, &left_next, &right_next) {
            return Some(perm);
        }
    }
    None
}

/// A non-identity automorphism of `graph` as an image table, if one exists.
pub fn nontrivial_automorphism(graph: &BitGraph) -> Option<Vec<usize>> {
    let base = refine(graph, vec![0; graph.n()]);
    if base.classes == graph.n() {
        return None;
    }
    let hist = histogram(&base);
    for (color, _) in hist.iter().enumerate().filter(|(_, &size)| size > 1) {
        let cell: Vec<usize> = (0..graph.n())
            .filter(|&v| base.colors[v] == color as u32)
            .collect();
        for &v in &cell {
            let left = refine(graph, individualize(&base, v));
            for &w in cell.iter().filter(|&&w| w != v) {
                let right = refine(graph, individualize(&base, w));
                if let Some(perm) = matching(graph, &left, &right) {
                    debug_assert_eq!(perm[v], w);
                    return Some(perm);
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> BitGraph {
        let mut g = BitGraph::new(n);
        for &(a, b) in edges {
            g.add_edge(a, b);
        }
        g
    }

    #[test]
    fn cycle_has_rotation() {
        let c4 = graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let perm = nontrivial_automorphism(&c4).unwrap();
        assert!(perm.iter().enumerate().any(|(i, &p)| i != p));
        assert!(preserves_edges(&c4, &perm));
    }

    #[test]
    fn asymmetric_tree_is_rigid() {
        // smallest asymmetric tree: legs of length 1, 2 and 3 at one center
        let t = graph(7, &[(0, 1), (0, 2), (2, 3), (0, 4), (4, 5), (5, 6)]);
        assert_eq!(nontrivial_automorphism(&t), None);
    }

    #[test]
    fn regular_graphs_need_backtracking() {
        // Petersen graph is vertex-transitive: refinement alone does nothing
        let outer: Vec<_> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        let spokes: Vec<_> = (0..5).map(|i| (i, i + 5)).collect();
        let inner: Vec<_> = (0..5).map(|i| (i + 5, (i + 2) % 5 + 5)).collect();
        let edges: Vec<_> = outer.into_iter().chain(spokes).chain(inner).collect();
        let p = graph(10, &edges);
        let perm = nontrivial_automorphism(&p).unwrap();
        assert!(preserves_edges(&p, &perm));
    }

    #[test]
    fn trivial_sizes() {
        assert_eq!(nontrivial_automorphism(&graph(0, &[])), None);
        assert_eq!(nontrivial_automorphism(&graph(1, &[])), None);
        assert!(nontrivial_automorphism(&graph(2, &[])).is_some());
    }
}
