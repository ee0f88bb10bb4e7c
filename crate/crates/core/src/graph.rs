//! Simple undirected graphs on at most 32 vertices, stored as adjacency bit-rows.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Hard cap on the number of vertices; a vertex set fits in one `u32`.
pub const MAX_ORDER: usize = 32;

/// A set of vertices as a bitmask (bit `v` set iff vertex `v` is a member).
pub type VertexSet = u32;

#[inline]
pub const fn bit(v: usize) -> VertexSet {
    1u32 << v
}

/// Mask with the lowest `n` bits set.
#[inline]
pub const fn full_mask(n: usize) -> VertexSet {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// Iterates the members of a vertex set in increasing order.
pub fn members(mut set: VertexSet) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if set == 0 {
            None
        } else {
            let v = set.trailing_zeros() as usize;
            set &= set - 1;
            Some(v)
        }
    })
}

/// An undirected edge, always stored with the smaller endpoint first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge(usize, usize);

impl Edge {
    pub fn new(a: usize, b: usize) -> Self {
        if a <= b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }

    pub fn u(self) -> usize {
        self.0
    }

    pub fn v(self) -> usize {
        self.1
    }

    pub fn mask(self) -> VertexSet {
        bit(self.0) | bit(self.1)
    }

    /// The endpoint opposite `x`; `x` must be an endpoint.
    pub fn other(self, x: usize) -> usize {
        debug_assert!(x == self.0 || x == self.1);
        self.0 ^ self.1 ^ x
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

/// Immutable simple graph. Edges are kept in lexicographic `(u, v)` order, which
/// is the canonical iteration order used for every witness in this crate.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    order: usize,
    adj: [VertexSet; MAX_ORDER],
    edges: Vec<Edge>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({}; ", self.order)?;
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

impl Graph {
    /// Builds a graph from an edge list; duplicate edges collapse.
    pub fn new(order: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if order == 0 || order > MAX_ORDER {
            return Err(Error::OrderOutOfRange(order));
        }
        let mut adj = [0; MAX_ORDER];
        for &(a, b) in edges {
            for endpoint in [a, b] {
                if endpoint >= order {
                    return Err(Error::EndpointOutOfRange { endpoint, order });
                }
            }
            if a == b {
                return Err(Error::LoopEdge(a));
            }
            adj[a] |= bit(b);
            adj[b] |= bit(a);
        }
        Ok(Self::from_rows(order, adj))
    }

    /// Edgeless graph on `order` vertices.
    pub fn empty(order: usize) -> Result<Self> {
        Self::new(order, &[])
    }

    /// Builds from symmetric, irreflexive adjacency rows. Callers inside the crate
    /// guarantee the invariants; they are checked in debug builds.
    pub(crate) fn from_rows(order: usize, mut adj: [VertexSet; MAX_ORDER]) -> Self {
        debug_assert!((1..=MAX_ORDER).contains(&order));
        let all = full_mask(order);
        for (v, row) in adj.iter_mut().enumerate() {
            if v >= order {
                *row = 0;
            }
            *row &= all & !bit(v);
        }
        let mut edges = Vec::new();
        for u in 0..order {
            debug_assert!(members(adj[u]).all(|w| adj[w] & bit(u) != 0), "asymmetric row {u}");
            for v in members(adj[u] & !full_mask(u + 1)) {
                edges.push(Edge(u, v));
            }
        }
        Graph { order, adj, edges }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Mask of all vertices.
    pub fn vertices(&self) -> VertexSet {
        full_mask(self.order)
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    pub fn rows(&self) -> &[VertexSet] {
        &self.adj[..self.order]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.order && b < self.order && self.adj[a] & bit(b) != 0
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Position of `e` in the canonical edge order.
    pub fn edge_position(&self, e: Edge) -> Option<usize> {
        self.edges.binary_search(&e).ok()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn degree_in(&self, v: usize, within: VertexSet) -> usize {
        (self.adj[v] & within).count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.order).map(|v| self.degree(v)).collect()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.order).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.order).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Vertex set of the component of `start` inside `within`.
    pub fn component_of(&self, start: usize, within: VertexSet) -> VertexSet {
        let mut seen = bit(start);
        let mut frontier = bit(start);
        while frontier != 0 {
            let mut next = 0;
            for v in members(frontier) {
                next |= self.adj[v] & within;
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen
    }

    /// Connected components of the subgraph induced by `within`, ordered by least vertex.
    pub fn components_in(&self, within: VertexSet) -> Vec<VertexSet> {
        let mut rest = within;
        let mut out = Vec::new();
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            let comp = self.component_of(v, within);
            out.push(comp);
            rest &= !comp;
        }
        out
    }

    pub fn components(&self) -> Vec<VertexSet> {
        self.components_in(self.vertices())
    }

    pub fn is_connected(&self) -> bool {
        self.component_of(0, self.vertices()) == self.vertices()
    }

    pub fn is_connected_in(&self, within: VertexSet) -> bool {
        within == 0 || {
            let v = within.trailing_zeros() as usize;
            self.component_of(v, within) == within
        }
    }

    pub fn is_clique(&self, set: VertexSet) -> bool {
        members(set).all(|v| self.adj[v] & set == set & !bit(v))
    }

    pub fn is_independent(&self, set: VertexSet) -> bool {
        members(set).all(|v| self.adj[v] & set == 0)
    }

    /// Number of edges with both ends in `set`.
    pub fn edge_count_in(&self, set: VertexSet) -> usize {
        members(set).map(|v| self.degree_in(v, set)).sum::<usize>() / 2
    }

    pub fn complement(&self) -> Graph {
        let all = self.vertices();
        let mut adj = [0; MAX_ORDER];
        for (v, row) in adj.iter_mut().enumerate().take(self.order) {
            *row = all & !self.adj[v] & !bit(v);
        }
        Graph::from_rows(self.order, adj)
    }

    /// Subgraph induced by `set`, relabelled so members keep their relative order.
    pub fn induced(&self, set: VertexSet) -> Result<Graph> {
        let keep: Vec<usize> = members(set & self.vertices()).collect();
        if keep.is_empty() {
            return Err(Error::OrderOutOfRange(0));
        }
        let mut adj = [0; MAX_ORDER];
        for (i, &a) in keep.iter().enumerate() {
            for (j, &b) in keep.iter().enumerate() {
                if self.adj[a] & bit(b) != 0 {
                    adj[i] |= bit(j);
                }
            }
        }
        Ok(Graph::from_rows(keep.len(), adj))
    }

    /// Graph with the given edges removed (edges absent from `self` are ignored).
    pub fn without_edges(&self, removed: &[Edge]) -> Graph {
        let mut adj = self.adj;
        for e in removed {
            adj[e.u()] &= !bit(e.v());
            adj[e.v()] &= !bit(e.u());
        }
        Graph::from_rows(self.order, adj)
    }

    /// Graph with the given edges added.
    pub fn with_edges(&self, added: &[(usize, usize)]) -> Result<Graph> {
        let mut pairs: Vec<(usize, usize)> = self.edges.iter().map(|e| (e.u(), e.v())).collect();
        pairs.extend_from_slice(added);
        Graph::new(self.order, &pairs)
    }

    /// Relabels vertices: old vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.order);
        let mut adj = [0; MAX_ORDER];
        for v in 0..self.order {
            for w in members(self.adj[v]) {
                adj[perm[v]] |= bit(perm[w]);
            }
        }
        Graph::from_rows(self.order, adj)
    }

    /// Disjoint union; vertices of `h` follow those of `self`.
    pub fn disjoint_union(&self, h: &Graph) -> Result<Graph> {
        let order = self.order + h.order;
        if order > MAX_ORDER {
            return Err(Error::OrderOutOfRange(order));
        }
        let mut adj = self.adj;
        for v in 0..h.order {
            adj[self.order + v] = h.adj[v] << self.order;
        }
        Ok(Graph::from_rows(order, adj))
    }

    /// Join: disjoint union plus every edge between the two vertex sets.
    pub fn join(&self, h: &Graph) -> Result<Graph> {
        let union = self.disjoint_union(h)?;
        let left = self.vertices();
        let right = h.vertices() << self.order;
        let mut adj = union.adj;
        for v in members(left) {
            adj[v] |= right;
        }
        for v in members(right) {
            adj[v] |= left;
        }
        Ok(Graph::from_rows(union.order, adj))
    }

    /// Cartesian product; vertex `(a, x)` is numbered `a * |V(h)| + x`.
    pub fn cartesian_product(&self, h: &Graph) -> Result<Graph> {
        let order = self.order * h.order;
        if order == 0 || order > MAX_ORDER {
            return Err(Error::OrderOutOfRange(order));
        }
        let mut pairs = Vec::new();
        let id = |a: usize, x: usize| a * h.order + x;
        for a in 0..self.order {
            for e in h.edges() {
                pairs.push((id(a, e.u()), id(a, e.v())));
            }
        }
        for x in 0..h.order {
            for e in self.edges() {
                pairs.push((id(e.u(), x), id(e.v(), x)));
            }
        }
        Graph::new(order, &pairs)
    }

    /// Path `P_n` on vertices `0..n` in order.
    pub fn path(n: usize) -> Result<Graph> {
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::new(n, &pairs)
    }

    /// Cycle `C_n`, `n >= 3`.
    pub fn cycle(n: usize) -> Result<Graph> {
        if n < 3 {
            return Err(Error::InvalidParameters {
                family: "cycle".into(),
                reason: format!("length {n} < 3"),
            });
        }
        let pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &pairs)
    }

    pub fn complete(n: usize) -> Result<Graph> {
        if n == 0 || n > MAX_ORDER {
            return Err(Error::OrderOutOfRange(n));
        }
        let all = full_mask(n);
        let mut adj = [0; MAX_ORDER];
        for (v, row) in adj.iter_mut().enumerate().take(n) {
            *row = all & !bit(v);
        }
        Ok(Graph::from_rows(n, adj))
    }

    /// `K_{a,b}` with sides `{0..a}` and `{a..a+b}`.
    pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph> {
        let mut pairs = Vec::with_capacity(a * b);
        for u in 0..a {
            for v in a..a + b {
                pairs.push((u, v));
            }
        }
        Graph::new(a + b, &pairs)
    }

    /// Hypercube `Q_k`; vertex labels are the bit strings themselves.
    pub fn hypercube(k: usize) -> Result<Graph> {
        if k > 5 {
            return Err(Error::OrderOutOfRange(1 << k.min(16)));
        }
        let n = 1usize << k;
        let mut pairs = Vec::new();
        for v in 0..n {
            for d in 0..k {
                let w = v ^ (1 << d);
                if v < w {
                    pairs.push((v, w));
                }
            }
        }
        Graph::new(n, &pairs)
    }

    /// `n` disjoint copies of `K_2`, pairs `(2i, 2i+1)`.
    pub fn matching_graph(n: usize) -> Result<Graph> {
        let pairs: Vec<_> = (0..n).map(|i| (2 * i, 2 * i + 1)).collect();
        Graph::new(2 * n, &pairs)
    }
}

/// Generator kinds for [`generate`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphKind {
    Path,
    Cycle,
    Complete,
    CompleteBipartite,
    Hypercube,
    Empty,
}

/// Builds a canonical labelled member of a basic family.
pub fn generate(kind: GraphKind, params: &[usize]) -> Result<Graph> {
    let bad = |reason: &str| Error::InvalidParameters {
        family: format!("{kind:?}"),
        reason: reason.to_string(),
    };
    match (kind, params) {
        (GraphKind::Path, &[n]) => Graph::path(n),
        (GraphKind::Cycle, &[n]) => Graph::cycle(n),
        (GraphKind::Complete, &[n]) => Graph::complete(n),
        (GraphKind::CompleteBipartite, &[a, b]) => Graph::complete_bipartite(a, b),
        (GraphKind::Hypercube, &[k]) => Graph::hypercube(k),
        (GraphKind::Empty, &[n]) => Graph::empty(n),
        _ => Err(bad("wrong number of parameters")),
    }
}

/// A proper 2-colouring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Bipartition {
    pub side_u: VertexSet,
    pub side_v: VertexSet,
}

impl Bipartition {
    pub fn balanced(&self) -> bool {
        self.side_u.count_ones() == self.side_v.count_ones()
    }

    pub fn swapped(self) -> Self {
        Bipartition {
            side_u: self.side_v,
            side_v: self.side_u,
        }
    }
}

/// Two-colours each component, putting its least vertex in `side_u`.
/// Returns `None` iff the graph has an odd cycle.
pub fn bipartition_of(g: &Graph) -> Option<Bipartition> {
    let mut side_u = 0;
    let mut side_v = 0;
    for comp in g.components() {
        let start = comp.trailing_zeros() as usize;
        let mut colour_u = bit(start);
        let mut colour_v = 0;
        let mut frontier = bit(start);
        let mut frontier_is_u = true;
        while frontier != 0 {
            let mut next = 0;
            for v in members(frontier) {
                next |= g.neighbors(v);
            }
            if frontier_is_u {
                next &= !colour_v;
                if next & colour_u != 0 {
                    return None;
                }
                colour_v |= next;
            } else {
                next &= !colour_u;
                if next & colour_v != 0 {
                    return None;
                }
                colour_u |= next;
            }
            frontier = next;
            frontier_is_u = !frontier_is_u;
        }
        side_u |= colour_u;
        side_v |= colour_v;
    }
    let ok = members(side_u).all(|v| g.neighbors(v) & side_u == 0)
        && members(side_v).all(|v| g.neighbors(v) & side_v == 0);
    ok.then_some(Bipartition { side_u, side_v })
}

pub fn is_bipartite(g: &Graph) -> bool {
    bipartition_of(g).is_some()
}

/// Cyclomatic number `e - v + 1`, defined for connected graphs only.
pub fn cyclomatic_number(g: &Graph) -> Result<i64> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(g.edge_count() as i64 - g.order() as i64 + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k33() -> Graph {
        Graph::complete_bipartite(3, 3).unwrap()
    }

    #[test]
    fn build_examples() {
        let k2 = Graph::new(2, &[(0, 1)]).unwrap();
        assert_eq!(k2.edge_count(), 1);
        let c4 = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(c4.edge_count(), 4);
        assert!(c4.degrees().iter().all(|&d| d == 2));
        let g = k33();
        assert_eq!(g.edge_count(), 9);
        assert_eq!((g.min_degree(), g.max_degree()), (3, 3));
    }

    #[test]
    fn build_errors() {
        assert_eq!(Graph::new(0, &[]), Err(Error::OrderOutOfRange(0)));
        assert_eq!(Graph::new(33, &[]), Err(Error::OrderOutOfRange(33)));
        assert_eq!(Graph::new(3, &[(1, 1)]), Err(Error::LoopEdge(1)));
        assert_eq!(
            Graph::new(3, &[(0, 3)]),
            Err(Error::EndpointOutOfRange { endpoint: 3, order: 3 })
        );
    }

    #[test]
    fn duplicate_edges_collapse_and_sort() {
        let g = Graph::new(4, &[(3, 2), (0, 1), (2, 3), (1, 0)]).unwrap();
        assert_eq!(g.edges(), &[Edge::new(0, 1), Edge::new(2, 3)]);
    }

    #[test]
    fn join_examples() {
        let k2 = Graph::complete(2).unwrap();
        assert_eq!(k2.join(&k2).unwrap(), Graph::complete(4).unwrap());
        let two_k2 = Graph::matching_graph(2).unwrap();
        assert_eq!(two_k2.join(&k2).unwrap().edge_count(), 11);
        let big = Graph::empty(20).unwrap();
        assert!(big.join(&Graph::empty(13).unwrap()).is_err());
    }

    #[test]
    fn product_examples() {
        let p2 = Graph::path(2).unwrap();
        let c4 = Graph::cycle(4).unwrap();
        let sq = p2.cartesian_product(&p2).unwrap();
        assert_eq!(sq.edge_count(), 4);
        assert!(sq.degrees().iter().all(|&d| d == 2));
        assert!(crate::iso::are_isomorphic(&sq, &c4));
        let p4 = Graph::path(4).unwrap();
        let grid = p4.cartesian_product(&p4).unwrap();
        assert_eq!((grid.order(), grid.edge_count()), (16, 24));
        let torus = c4.cartesian_product(&c4).unwrap();
        assert_eq!((torus.order(), torus.edge_count()), (16, 32));
        assert!(torus.degrees().iter().all(|&d| d == 4));
        assert!(Graph::path(6).unwrap().cartesian_product(&Graph::path(6).unwrap()).is_err());
    }

    #[test]
    fn generators() {
        let c6 = generate(GraphKind::Cycle, &[6]).unwrap();
        assert!(is_bipartite(&c6));
        let q3 = generate(GraphKind::Hypercube, &[3]).unwrap();
        assert_eq!((q3.order(), q3.edge_count()), (8, 12));
        assert_eq!(generate(GraphKind::CompleteBipartite, &[3, 3]).unwrap(), k33());
        assert!(generate(GraphKind::Cycle, &[2]).is_err());
        assert!(generate(GraphKind::Path, &[1, 2]).is_err());
        assert!(generate(GraphKind::Hypercube, &[6]).is_err());
    }

    #[test]
    fn bipartitions() {
        let c6 = Graph::cycle(6).unwrap();
        let bp = bipartition_of(&c6).unwrap();
        assert_eq!((bp.side_u.count_ones(), bp.side_v.count_ones()), (3, 3));
        assert!(bipartition_of(&Graph::cycle(5).unwrap()).is_none());
        let iso = Graph::new(3, &[(1, 2)]).unwrap();
        let bp = bipartition_of(&iso).unwrap();
        assert_eq!(bp.side_u, 0b011);
        assert!(bipartition_of(&Graph::complete(3).unwrap().disjoint_union(&Graph::path(2).unwrap()).unwrap()).is_none());
    }

    #[test]
    fn cyclomatic() {
        assert_eq!(cyclomatic_number(&Graph::cycle(4).unwrap()), Ok(1));
        assert_eq!(cyclomatic_number(&Graph::complete(4).unwrap()), Ok(3));
        assert_eq!(cyclomatic_number(&k33()), Ok(4));
        assert_eq!(cyclomatic_number(&Graph::matching_graph(2).unwrap()), Err(Error::Disconnected));
    }
}
