//! Recognisers for split graphs, cographs, F0-free bipartite graphs and the
//! two families whose forcing number is `n - 2`.

use serde::Serialize;

use crate::graph::{bipartition_of, bit, members, Bipartition, Graph, VertexSet};
use crate::matching::{allowed_edges, has_perfect_matching, is_elementary};

/// A partition into a clique and an independent set, if one exists.
///
/// With degrees `d_1 >= ... >= d_n` and `m = max{i : d_i >= i - 1}`, the graph is
/// split iff `sum_{i<=m} d_i = m(m-1) + sum_{i>m} d_i`, and then the `m`
/// highest-degree vertices form a clique whose complement is independent.
pub fn split_partition(g: &Graph) -> Option<(VertexSet, VertexSet)> {
    let mut order: Vec<usize> = (0..g.order()).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    let d: Vec<usize> = order.iter().map(|&v| g.degree(v)).collect();
    let m = (0..d.len()).filter(|&i| d[i] >= i).map(|i| i + 1).max().unwrap_or(0);
    let head: usize = d[..m].iter().sum();
    let tail: usize = d[m..].iter().sum();
    if head != m * (m.saturating_sub(1)) + tail {
        return None;
    }
    let clique = order[..m].iter().fold(0, |acc, &v| acc | bit(v));
    let independent = g.vertices() & !clique;
    (g.is_clique(clique) && g.is_independent(independent)).then_some((clique, independent))
}

pub fn is_split(g: &Graph) -> bool {
    split_partition(g).is_some()
}

/// No induced `P_4`: every induced subgraph on two or more vertices is
/// disconnected or has a disconnected complement.
pub fn is_cograph(g: &Graph) -> bool {
    let co = g.complement();
    cograph_rec(g, &co, g.vertices())
}

fn cograph_rec(g: &Graph, co: &Graph, set: VertexSet) -> bool {
    if set.count_ones() <= 1 {
        return true;
    }
    let parts = g.components_in(set);
    if parts.len() > 1 {
        return parts.into_iter().all(|p| cograph_rec(g, co, p));
    }
    let parts = co.components_in(set);
    parts.len() > 1 && parts.into_iter().all(|p| cograph_rec(g, co, p))
}

/// Components of the bipartite complement `K_{U,V} - E(G)` that have an edge,
/// as `(U-part, V-part)` masks, or `None` if one of them is not complete bipartite.
pub fn complement_parts(g: &Graph, bp: &Bipartition) -> Option<Vec<(VertexSet, VertexSet)>> {
    let mut rows = [0 as VertexSet; crate::graph::MAX_ORDER];
    for x in members(bp.side_u) {
        rows[x] = bp.side_v & !g.neighbors(x);
        for y in members(rows[x]) {
            rows[y] |= bit(x);
        }
    }
    let mut seen = 0;
    let mut parts = Vec::new();
    for x in members(g.vertices()) {
        if seen & bit(x) != 0 || rows[x] == 0 {
            continue;
        }
        let mut comp = bit(x);
        let mut frontier = bit(x);
        while frontier != 0 {
            let mut next = 0;
            for y in members(frontier) {
                next |= rows[y];
            }
            frontier = next & !comp;
            comp |= next;
        }
        seen |= comp;
        let (cu, cv) = (comp & bp.side_u, comp & bp.side_v);
        if members(cu).any(|y| rows[y] != cv) {
            return None;
        }
        parts.push((cu, cv));
    }
    Some(parts)
}

/// No induced subgraph with two vertices on each side and exactly one edge.
pub fn is_f0_free(g: &Graph, bp: &Bipartition) -> bool {
    complement_parts(g, bp).is_some()
}

fn part_sizes(parts: &[(VertexSet, VertexSet)]) -> Vec<(usize, usize)> {
    let mut sizes: Vec<(usize, usize)> =
        parts.iter().map(|(a, b)| (a.count_ones() as usize, b.count_ones() as usize)).collect();
    sizes.sort_unstable_by(|x, y| y.cmp(x));
    sizes
}

/// Every bipartition of `g`, one per choice of side for each non-least component.
fn bipartitions(g: &Graph) -> Vec<Bipartition> {
    let Some(base) = bipartition_of(g) else {
        return Vec::new();
    };
    let comps = g.components();
    let flippable = &comps[1.min(comps.len())..];
    let mut out = Vec::new();
    for mask in 0u64..1 << flippable.len().min(16) {
        let mut bp = base;
        for (i, &c) in flippable.iter().enumerate() {
            if mask >> i & 1 == 1 {
                let (cu, cv) = (bp.side_u & c, bp.side_v & c);
                bp.side_u = (bp.side_u & !c) | cv;
                bp.side_v = (bp.side_v & !c) | cu;
            }
        }
        out.push(bp);
    }
    out
}

/// A balanced bipartition under which `g` is `K_{n,n}` minus disjoint complete
/// bipartite subgraphs, none of order above `n`, at least one of them.
pub fn g1_witness(g: &Graph) -> Option<(Bipartition, Vec<(usize, usize)>)> {
    let n = g.order() / 2;
    if g.order() % 2 == 1 {
        return None;
    }
    bipartitions(g).into_iter().filter(Bipartition::balanced).find_map(|bp| {
        let parts = complement_parts(g, &bp)?;
        let sizes = part_sizes(&parts);
        (!sizes.is_empty() && sizes.iter().all(|&(a, b)| a + b <= n)).then_some((bp, sizes))
    })
}

pub fn is_g1_member(g: &Graph) -> bool {
    g1_witness(g).is_some()
}

/// The two components of the allowed-edge subgraph when `g` is a `G2` member:
/// bipartite, with exactly two such components, each a balanced complete bipartite graph.
pub fn g2_witness(g: &Graph) -> Option<[VertexSet; 2]> {
    bipartition_of(g)?;
    if !has_perfect_matching(g) {
        return None;
    }
    let allowed = allowed_edges(g);
    let pairs: Vec<(usize, usize)> = allowed.iter().map(|e| (e.u(), e.v())).collect();
    let a = Graph::new(g.order(), &pairs).ok()?;
    let comps = a.components();
    if comps.len() != 2 {
        return None;
    }
    for &c in &comps {
        let bp = bipartition_of(&a.induced(c).ok()?)?;
        let (x, y) = (bp.side_u.count_ones() as usize, bp.side_v.count_ones() as usize);
        if x != y || a.edge_count_in(c) != x * y {
            return None;
        }
    }
    Some([comps[0], comps[1]])
}

pub fn is_g2_member(g: &Graph) -> bool {
    g2_witness(g).is_some()
}

/// Complete multipartite with parts of size at most `n`, or `K_{n,n}` with any
/// extra edges inside one of its sides.
pub fn recognize_f_n1(g: &Graph) -> bool {
    if g.order() % 2 == 1 {
        return false;
    }
    let n = g.order() / 2;
    let co = g.complement();
    let comps = co.components();
    let multipartite = comps.iter().all(|&c| co.is_clique(c) && c.count_ones() as usize <= n);
    if multipartite {
        return true;
    }
    // K_{n,n} with extra edges inside one side: the other side is a clique
    // component of the complement.
    comps.iter().any(|&c| c.count_ones() as usize == n && co.is_clique(c))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassReport {
    pub is_bipartite: bool,
    pub is_split: bool,
    pub is_cograph: bool,
    pub is_f0_free: Option<bool>,
    pub is_elementary: bool,
    pub deleted_subgraphs: Option<Vec<(usize, usize)>>,
    pub g1_member: bool,
    pub g2_member: bool,
    pub g2_components: Option<[VertexSet; 2]>,
}

pub fn classify(g: &Graph) -> ClassReport {
    let g1 = g1_witness(g);
    let g2 = g2_witness(g);
    let default_bp = bipartition_of(g);
    let bp = g1.as_ref().map(|(bp, _)| *bp).or(default_bp);
    let parts = bp.as_ref().map(|bp| complement_parts(g, bp));
    ClassReport {
        is_bipartite: default_bp.is_some(),
        is_split: is_split(g),
        is_cograph: is_cograph(g),
        is_f0_free: parts.as_ref().map(Option::is_some),
        is_elementary: is_elementary(g),
        deleted_subgraphs: parts.flatten().map(|p| part_sizes(&p)),
        g1_member: g1.is_some(),
        g2_member: g2.is_some(),
        g2_components: g2,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::full_mask;
    use crate::families::{make_g1_member, make_g2_member, make_h_hat, uv_bipartition};

    fn graph_from_mask(n: usize, mask: u32) -> Graph {
        let mut edges = Vec::new();
        let mut k = 0;
        for j in 1..n {
            for i in 0..j {
                if mask >> k & 1 == 1 {
                    edges.push((i, j));
                }
                k += 1;
            }
        }
        Graph::new(n, &edges).unwrap()
    }

    fn split_oracle(g: &Graph) -> bool {
        (0u32..1 << g.order()).any(|c| g.is_clique(c) && g.is_independent(g.vertices() & !c))
    }

    fn has_induced_p4(g: &Graph) -> bool {
        use itertools::Itertools;
        (0..g.order()).permutations(4).any(|p| {
            g.has_edge(p[0], p[1])
                && g.has_edge(p[1], p[2])
                && g.has_edge(p[2], p[3])
                && !g.has_edge(p[0], p[2])
                && !g.has_edge(p[0], p[3])
                && !g.has_edge(p[1], p[3])
        })
    }

    fn f0_oracle(g: &Graph, bp: &Bipartition) -> bool {
        let us: Vec<usize> = members(bp.side_u).collect();
        let vs: Vec<usize> = members(bp.side_v).collect();
        for (i, &u1) in us.iter().enumerate() {
            for &u2 in &us[i + 1..] {
                for (j, &v1) in vs.iter().enumerate() {
                    for &v2 in &vs[j + 1..] {
                        let count = [(u1, v1), (u1, v2), (u2, v1), (u2, v2)]
                            .iter()
                            .filter(|&&(a, b)| g.has_edge(a, b))
                            .count();
                        if count == 1 {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    #[test]
    fn split_and_cograph_agree_with_oracles() {
        for n in 1..=6usize {
            for mask in 0u32..1 << (n * (n - 1) / 2) {
                let g = graph_from_mask(n, mask);
                assert_eq!(is_split(&g), split_oracle(&g), "{g:?}");
                assert_eq!(is_cograph(&g), !has_induced_p4(&g), "{g:?}");
            }
        }
    }

    #[test]
    fn f0_free_agrees_with_quadruple_scan() {
        for a in 1..=4usize {
            for b in 1..=4usize {
                for mask in 0u32..1 << (a * b) {
                    let edges: Vec<(usize, usize)> = (0..a * b)
                        .filter(|p| mask >> p & 1 == 1)
                        .map(|p| (p / b, a + p % b))
                        .collect();
                    let g = Graph::new(a + b, &edges).unwrap();
                    let bp = Bipartition {
                        side_u: full_mask(a),
                        side_v: full_mask(a + b) & !full_mask(a),
                    };
                    assert_eq!(is_f0_free(&g, &bp), f0_oracle(&g, &bp));
                }
            }
        }
    }

    #[test]
    fn examples() {
        assert!(is_split(&make_h_hat(5).unwrap()));
        let f0 = Graph::new(4, &[(0, 2)]).unwrap();
        let bp = Bipartition { side_u: 0b0011, side_v: 0b1100 };
        assert!(!is_f0_free(&f0, &bp));
        let g = make_g1_member(3, &[(1, 1), (1, 2)]).unwrap();
        let r = classify(&g);
        assert!(r.g1_member && r.is_f0_free == Some(true));
        assert_eq!(r.deleted_subgraphs, Some(vec![(1, 2), (1, 1)]));
        assert!(!classify(&Graph::complete_bipartite(3, 3).unwrap()).g1_member);
        assert!(recognize_f_n1(&Graph::complete(4).unwrap()));
        assert!(recognize_f_n1(&Graph::cycle(4).unwrap().with_edges(&[(0, 2)]).unwrap()));
        assert!(!recognize_f_n1(&Graph::cycle(6).unwrap()));
        assert!(recognize_f_n1(&Graph::complete_bipartite(3, 3).unwrap().with_edges(&[(0, 1)]).unwrap()));
        // Edges inside both sides can drop the forcing number to 1.
        assert!(!recognize_f_n1(&Graph::complete_bipartite(3, 3).unwrap().with_edges(&[(0, 1), (3, 4)]).unwrap()));
        assert!(!recognize_f_n1(&Graph::complete_bipartite(1, 3).unwrap()));
    }

    #[test]
    fn g2_members_are_recognised() {
        let g = make_g2_member((2, 1), &[(0, 5)]).unwrap();
        let w = g2_witness(&g).unwrap();
        assert_eq!(w, [0b011011, 0b100100]);
        assert!(!is_g2_member(&Graph::complete_bipartite(3, 3).unwrap()));
        // Disconnected members of both families.
        let two = Graph::complete_bipartite(2, 2).unwrap().disjoint_union(&Graph::complete(2).unwrap()).unwrap();
        assert!(is_g1_member(&two) && is_g2_member(&two));
    }

    #[test]
    fn g1_fixed_bipartition() {
        let g = make_g1_member(4, &[(2, 1)]).unwrap();
        let (bp, sizes) = g1_witness(&g).unwrap();
        assert_eq!(bp, uv_bipartition(4));
        assert_eq!(sizes, vec![(2, 1)]);
    }
}
