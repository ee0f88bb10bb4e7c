//! Graph universes for exhaustive sweeps.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{bit, Graph, VertexSet};
use crate::graph6;
use crate::iso::canonical_form;
use crate::matching::has_perfect_matching;

/// Largest order accepted by [`labeled_graphs`]; the edge mask must fit in a `u64`.
pub const LABELED_ORDER_CAP: usize = 11;

fn vertex_pairs(order: usize) -> Vec<(usize, usize)> {
    (0..order).flat_map(|a| (a + 1..order).map(move |b| (a, b))).collect()
}

fn from_mask(order: usize, pairs: &[(usize, usize)], mask: u64) -> Graph {
    let edges: Vec<(usize, usize)> =
        pairs.iter().enumerate().filter(|(t, _)| mask >> t & 1 == 1).map(|(_, &p)| p).collect();
    Graph::new(order, &edges).expect("pairs are in range")
}

/// Number of labeled graphs on `order` vertices.
pub fn labeled_count(order: usize) -> u64 {
    1u64 << (order * order.saturating_sub(1) / 2)
}

/// Every labeled graph on `order` vertices, by edge subset in increasing mask order.
pub fn labeled_graphs(order: usize) -> Result<impl Iterator<Item = Graph>> {
    if order > LABELED_ORDER_CAP {
        return Err(Error::OrderOutOfRange(order));
    }
    let pairs = vertex_pairs(order);
    Ok((0..labeled_count(order)).map(move |mask| from_mask(order, &pairs, mask)))
}

/// The labeled graph with edge mask `mask` in [`labeled_graphs`] order.
pub fn labeled_graph(order: usize, mask: u64) -> Graph {
    from_mask(order, &vertex_pairs(order), mask)
}

/// One canonical representative of every isomorphism class on `order`
/// vertices, sorted by graph6. Built by adding a vertex to each class of the
/// previous order in every possible way.
pub fn unlabeled_graphs(order: usize) -> Result<Vec<Graph>> {
    if order == 0 || order > 10 {
        return Err(Error::OrderOutOfRange(order));
    }
    let mut level = vec![Graph::empty(1)?];
    for k in 1..order {
        let next: BTreeMap<String, Graph> = level
            .par_iter()
            .flat_map_iter(|parent| {
                let rows = parent.rows().to_vec();
                (0..1u32 << k).map(move |nbrs: VertexSet| {
                    let edges: Vec<(usize, usize)> = (0..k)
                        .flat_map(|a| {
                            let row = rows[a];
                            (a + 1..k).filter(move |&b| row & bit(b) != 0).map(move |b| (a, b))
                        })
                        .chain((0..k).filter(|&a| nbrs & bit(a) != 0).map(|a| (a, k)))
                        .collect();
                    let g = canonical_form(&Graph::new(k + 1, &edges).expect("in range"));
                    (graph6::encode(&g), g)
                })
            })
            .collect();
        level = next.into_values().collect();
    }
    Ok(level)
}

/// Graphs of every even order up to `max_order` that have a perfect matching,
/// either one per isomorphism class (`dedup`) or every labeled graph.
pub fn graphs_with_pm(max_order: usize, dedup: bool) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for order in (2..=max_order).step_by(2) {
        if dedup {
            out.extend(unlabeled_graphs(order)?.into_iter().filter(has_perfect_matching));
        } else {
            if order > LABELED_ORDER_CAP {
                return Err(Error::OrderOutOfRange(order));
            }
            let pairs = vertex_pairs(order);
            let found: Vec<Graph> = (0..labeled_count(order))
                .into_par_iter()
                .map(|mask| from_mask(order, &pairs, mask))
                .filter(has_perfect_matching)
                .collect();
            out.extend(found);
        }
    }
    Ok(out)
}

/// Every bipartite graph with sides `U = 0..n` and `V = n..2n`, by subset of the
/// `n^2` possible edges.
pub fn bipartite_balanced(n: usize) -> Result<Vec<Graph>> {
    if n == 0 || n * n > 36 || 2 * n > crate::graph::MAX_ORDER {
        return Err(Error::OrderOutOfRange(2 * n));
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (n..2 * n).map(move |v| (u, v))).collect();
    Ok((0..1u64 << pairs.len()).into_par_iter().map(|mask| from_mask(2 * n, &pairs, mask)).collect())
}

/// [`bipartite_balanced`] for every side size up to `max_side`, restricted to
/// graphs with a perfect matching.
pub fn bipartite_with_pm(max_side: usize) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for n in 1..=max_side {
        out.extend(bipartite_balanced(n)?.into_par_iter().filter(has_perfect_matching).collect::<Vec<_>>());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn unlabeled_counts() {
        let counts: Vec<usize> = (1..=7).map(|k| unlabeled_graphs(k).unwrap().len()).collect();
        assert_eq!(counts, [1, 2, 4, 11, 34, 156, 1044]);
    }

    #[test]
    fn labeled_dedup_agrees_with_augmentation() {
        for order in 1..=5 {
            let classes: HashSet<Graph> = labeled_graphs(order).unwrap().map(|g| canonical_form(&g)).collect();
            let generated: HashSet<Graph> = unlabeled_graphs(order).unwrap().into_iter().collect();
            assert_eq!(classes, generated);
        }
    }

    #[test]
    fn labeled_order_and_cap() {
        let gs: Vec<Graph> = labeled_graphs(3).unwrap().collect();
        assert_eq!(gs.len(), 8);
        assert_eq!(gs[0].edge_count(), 0);
        assert_eq!(gs[7].edge_count(), 3);
        assert_eq!(labeled_graph(3, 1).edges()[0].u(), 0);
        assert!(labeled_graphs(12).is_err());
    }

    #[test]
    fn pm_universe_sizes() {
        // Classes with a perfect matching on 2, 4 and 6 vertices.
        let by_order = |max| graphs_with_pm(max, true).unwrap().len();
        assert_eq!(by_order(2), 1);
        assert_eq!(by_order(4) - by_order(2), 6);
        let labeled = graphs_with_pm(4, false).unwrap();
        assert_eq!(labeled.iter().filter(|g| g.order() == 4).count(), 37);
    }

    #[test]
    fn bipartite_universe() {
        assert_eq!(bipartite_balanced(2).unwrap().len(), 16);
        // Hall's condition on the U side.
        let hall = |g: &Graph, n: usize| {
            (1u32..1 << n).all(|s| {
                let nbrs = (0..n).filter(|&u| s & bit(u) != 0).fold(0, |acc, u| acc | g.neighbors(u));
                nbrs.count_ones() >= s.count_ones()
            })
        };
        for n in 1..=3 {
            for g in bipartite_balanced(n).unwrap() {
                assert_eq!(has_perfect_matching(&g), hall(&g, n));
            }
        }
        let with_pm: Vec<usize> = (1..=2)
            .map(|n| bipartite_balanced(n).unwrap().into_iter().filter(has_perfect_matching).count())
            .collect();
        assert_eq!(with_pm, [1, 7]);
    }
}
