//! Perfect matchings: enumeration, uniqueness, M-alternating cycles, allowed edges.

use std::ops::ControlFlow;

use serde::Serialize;

use crate::error::{Error, Resource, Result};
use crate::graph::{bit, members, Edge, Graph, VertexSet, MAX_ORDER};

/// A set of pairwise disjoint edges.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Matching {
    edges: Vec<Edge>,
    #[serde(skip)]
    covered: VertexSet,
}

impl Matching {
    /// Sorts the edges and checks they are pairwise disjoint.
    pub fn new(mut edges: Vec<Edge>) -> Result<Self> {
        edges.sort_unstable();
        edges.dedup();
        let mut covered = 0;
        for e in &edges {
            if e.u() >= MAX_ORDER || e.v() >= MAX_ORDER || e.u() == e.v() || covered & e.mask() != 0 {
                return Err(Error::NotPerfectMatching);
            }
            covered |= e.mask();
        }
        Ok(Matching { edges, covered })
    }

    /// Checks that the matching is a perfect matching of `g`.
    pub fn perfect_in(g: &Graph, edges: Vec<Edge>) -> Result<Self> {
        let m = Matching::new(edges).map_err(|_| Error::NotPerfectMatching)?;
        m.ensure_perfect(g)?;
        Ok(m)
    }

    pub(crate) fn from_sorted_unchecked(edges: Vec<Edge>) -> Self {
        let covered = edges.iter().fold(0, |acc, e| acc | e.mask());
        Matching { edges, covered }
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn covered(&self) -> VertexSet {
        self.covered
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    pub fn is_perfect_for(&self, g: &Graph) -> bool {
        self.covered == g.vertices() && self.edges.iter().all(|e| g.has_edge(e.u(), e.v()))
    }

    pub fn ensure_perfect(&self, g: &Graph) -> Result<()> {
        if self.is_perfect_for(g) {
            Ok(())
        } else {
            Err(Error::NotPerfectMatching)
        }
    }

    /// `mates[v]` is the partner of `v`, or `usize::MAX` when uncovered.
    pub fn mates(&self) -> [usize; MAX_ORDER] {
        let mut mates = [usize::MAX; MAX_ORDER];
        for e in &self.edges {
            mates[e.u()] = e.v();
            mates[e.v()] = e.u();
        }
        mates
    }
}

/// Calls `visit` with every perfect matching of `g[within]`, in the canonical
/// order: branch on the least uncovered vertex, try its neighbours increasingly.
pub fn for_each_perfect_matching<F>(g: &Graph, within: VertexSet, mut visit: F)
where
    F: FnMut(&[Edge]) -> ControlFlow<()>,
{
    if within.count_ones() % 2 == 1 {
        return;
    }
    let mut stack = Vec::with_capacity(within.count_ones() as usize / 2);
    let _ = pm_rec(g, within, &mut stack, &mut visit);
}

fn pm_rec<F>(g: &Graph, rest: VertexSet, stack: &mut Vec<Edge>, visit: &mut F) -> ControlFlow<()>
where
    F: FnMut(&[Edge]) -> ControlFlow<()>,
{
    if rest == 0 {
        return visit(stack);
    }
    for w in members(rest) {
        if g.neighbors(w) & rest == 0 {
            return ControlFlow::Continue(());
        }
    }
    let v = rest.trailing_zeros() as usize;
    let rest = rest & !bit(v);
    for w in members(g.neighbors(v) & rest) {
        stack.push(Edge::new(v, w));
        pm_rec(g, rest & !bit(w), stack, visit)?;
        stack.pop();
    }
    ControlFlow::Continue(())
}

/// Counts perfect matchings of `g[within]`, stopping once `limit` is reached.
pub fn count_perfect_matchings_in(g: &Graph, within: VertexSet, limit: usize) -> usize {
    let mut count = 0;
    for_each_perfect_matching(g, within, |_| {
        count += 1;
        if count >= limit {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    count
}

pub fn has_perfect_matching_in(g: &Graph, within: VertexSet) -> bool {
    count_perfect_matchings_in(g, within, 1) == 1
}

pub fn has_perfect_matching(g: &Graph) -> bool {
    has_perfect_matching_in(g, g.vertices())
}

/// All perfect matchings, in canonical order, truncated at `limit` when given.
pub fn enumerate_perfect_matchings(g: &Graph, limit: Option<usize>) -> Vec<Matching> {
    let mut out = Vec::new();
    for_each_perfect_matching(g, g.vertices(), |edges| {
        let mut edges = edges.to_vec();
        edges.sort_unstable();
        out.push(Matching::from_sorted_unchecked(edges));
        if limit.is_some_and(|l| out.len() >= l) {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    out
}

/// Like [`enumerate_perfect_matchings`] but a ceiling overrun is an error.
pub fn all_perfect_matchings(g: &Graph, ceiling: usize) -> Result<Vec<Matching>> {
    let found = enumerate_perfect_matchings(g, Some(ceiling.saturating_add(1)));
    if found.len() > ceiling {
        return Err(Error::Resource {
            what: Resource::PerfectMatchings,
            limit: ceiling as u64,
        });
    }
    Ok(found)
}

pub fn has_unique_perfect_matching(g: &Graph) -> bool {
    count_perfect_matchings_in(g, g.vertices(), 2) == 1
}

/// A perfect matching of `g[within]` other than `current` (which must be one), if any.
pub fn other_perfect_matching_in(g: &Graph, within: VertexSet, current: &[Edge]) -> Option<Vec<Edge>> {
    let mut found = None;
    for_each_perfect_matching(g, within, |edges| {
        if edges.iter().any(|e| !current.contains(e)) {
            found = Some(edges.to_vec());
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    found
}

/// A cycle whose edges alternate between a perfect matching `M` and the rest.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct AlternatingCycle {
    /// Cyclic vertex sequence starting at its least vertex, oriented toward the
    /// smaller of that vertex's two cycle neighbours.
    pub vertices: Vec<usize>,
    pub m_edges: Vec<Edge>,
    pub non_m_edges: Vec<Edge>,
}

impl AlternatingCycle {
    pub fn vertex_set(&self) -> VertexSet {
        self.vertices.iter().fold(0, |acc, &v| acc | bit(v))
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Consecutive vertices are adjacent, edges alternate, and the halves balance.
    pub fn is_valid_for(&self, g: &Graph, m: &Matching) -> bool {
        let k = self.vertices.len();
        if k < 4 || k % 2 == 1 || self.vertex_set().count_ones() as usize != k {
            return false;
        }
        let mut in_m = Vec::new();
        let mut out_m = Vec::new();
        for i in 0..k {
            let e = Edge::new(self.vertices[i], self.vertices[(i + 1) % k]);
            if !g.has_edge(e.u(), e.v()) {
                return false;
            }
            if m.contains(e) { in_m.push(e) } else { out_m.push(e) }
            let prev = Edge::new(self.vertices[(i + k - 1) % k], self.vertices[i]);
            if m.contains(e) == m.contains(prev) {
                return false;
            }
        }
        in_m.sort_unstable();
        out_m.sort_unstable();
        in_m == self.m_edges && out_m == self.non_m_edges && in_m.len() == k / 2
    }
}

/// Every M-alternating cycle of `g`, each exactly once in canonical form.
pub fn alternating_cycles(g: &Graph, m: &Matching) -> Result<Vec<AlternatingCycle>> {
    alternating_cycles_limited(g, m, DEFAULT_CYCLE_LIMIT)
}

pub const DEFAULT_CYCLE_LIMIT: usize = 1_000_000;

/// Enumerates alternating cycles by walking matched-edge jumps: from the cycle's
/// least vertex `s` take its M-edge, then repeatedly a non-M edge to a fresh
/// vertex above `s` followed by that vertex's M-edge, closing back at `s`.
pub fn alternating_cycles_limited(g: &Graph, m: &Matching, limit: usize) -> Result<Vec<AlternatingCycle>> {
    m.ensure_perfect(g)?;
    let mates = m.mates();
    let mut out = Vec::new();
    let mut path = Vec::with_capacity(g.order());
    for s in 0..g.order() {
        let t = mates[s];
        if t < s {
            continue;
        }
        let above = !crate::graph::full_mask(s + 1);
        path.clear();
        path.push(s);
        path.push(t);
        let mut walk = CycleWalk {
            g,
            mates: &mates,
            start: s,
            above,
            path: &mut path,
            out: &mut out,
            limit,
        };
        walk.extend(bit(s) | bit(t))?;
    }
    out.sort_unstable();
    Ok(out)
}

struct CycleWalk<'a> {
    g: &'a Graph,
    mates: &'a [usize; MAX_ORDER],
    start: usize,
    above: VertexSet,
    path: &'a mut Vec<usize>,
    out: &'a mut Vec<AlternatingCycle>,
    limit: usize,
}

impl CycleWalk<'_> {
    fn extend(&mut self, visited: VertexSet) -> Result<()> {
        let cur = *self.path.last().expect("path holds the start edge");
        let s = self.start;
        if self.path.len() >= 4 && self.g.has_edge(cur, s) {
            self.record()?;
        }
        for x in members(self.g.neighbors(cur) & self.above & !visited) {
            let y = self.mates[x];
            if self.above & bit(y) == 0 {
                continue;
            }
            self.path.push(x);
            self.path.push(y);
            self.extend(visited | bit(x) | bit(y))?;
            self.path.pop();
            self.path.pop();
        }
        Ok(())
    }

    fn record(&mut self) -> Result<()> {
        if self.out.len() >= self.limit {
            return Err(Error::Resource {
                what: Resource::AlternatingCycles,
                limit: self.limit as u64,
            });
        }
        let mut vertices = self.path.clone();
        if vertices[vertices.len() - 1] < vertices[1] {
            vertices[1..].reverse();
        }
        let k = vertices.len();
        let mut m_edges = Vec::with_capacity(k / 2);
        let mut non_m_edges = Vec::with_capacity(k / 2);
        for i in 0..k {
            let (a, b) = (vertices[i], vertices[(i + 1) % k]);
            let e = Edge::new(a, b);
            if self.mates[a] == b {
                m_edges.push(e);
            } else {
                non_m_edges.push(e);
            }
        }
        m_edges.sort_unstable();
        non_m_edges.sort_unstable();
        self.out.push(AlternatingCycle {
            vertices,
            m_edges,
            non_m_edges,
        });
        Ok(())
    }
}

/// Edges lying in at least one perfect matching: `e` is allowed iff `g - V(e)` has one.
pub fn allowed_edges(g: &Graph) -> Vec<Edge> {
    let all = g.vertices();
    g.edges()
        .iter()
        .copied()
        .filter(|e| has_perfect_matching_in(g, all & !e.mask()))
        .collect()
}

pub fn forbidden_edges(g: &Graph) -> Vec<Edge> {
    let allowed = allowed_edges(g);
    g.edges().iter().copied().filter(|e| allowed.binary_search(e).is_err()).collect()
}

/// Connected, has a perfect matching, and every edge is allowed.
pub fn is_elementary(g: &Graph) -> bool {
    g.is_connected() && has_perfect_matching(g) && forbidden_edges(g).is_empty()
}

/// Exact maximum independent set size by branch and bound over bitmasks.
pub fn independence_number(g: &Graph) -> usize {
    let mut best = 0;
    mis_rec(g, g.vertices(), 0, &mut best);
    best
}

fn mis_rec(g: &Graph, cand: VertexSet, size: usize, best: &mut usize) {
    if cand == 0 {
        *best = (*best).max(size);
        return;
    }
    if size + cand.count_ones() as usize <= *best {
        return;
    }
    // A vertex of degree <= 1 in the candidate set can always be taken.
    let mut pick = None;
    let mut hub = (0, 0);
    for v in members(cand) {
        let d = g.degree_in(v, cand);
        if d <= 1 {
            pick = Some(v);
            break;
        }
        if d > hub.1 {
            hub = (v, d);
        }
    }
    if let Some(v) = pick {
        return mis_rec(g, cand & !bit(v) & !g.neighbors(v), size + 1, best);
    }
    let v = hub.0;
    mis_rec(g, cand & !bit(v) & !g.neighbors(v), size + 1, best);
    mis_rec(g, cand & !bit(v), size, best);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    fn pm(g: &Graph) -> Matching {
        enumerate_perfect_matchings(g, Some(1)).remove(0)
    }

    /// Brute force: every edge subset that forms one cycle alternating w.r.t. `m`.
    fn brute_alternating_cycle_count(g: &Graph, m: &Matching) -> usize {
        let edges = g.edges();
        let mut count = 0;
        for mask in 1u64..(1u64 << edges.len()) {
            let chosen: Vec<Edge> = (0..edges.len()).filter(|&i| mask >> i & 1 == 1).map(|i| edges[i]).collect();
            let mut deg = [0usize; MAX_ORDER];
            let mut mdeg = [0usize; MAX_ORDER];
            let mut verts = 0u32;
            for e in &chosen {
                for x in [e.u(), e.v()] {
                    deg[x] += 1;
                    if m.contains(*e) {
                        mdeg[x] += 1;
                    }
                    verts |= bit(x);
                }
            }
            let sub = Graph::new(g.order(), &chosen.iter().map(|e| (e.u(), e.v())).collect::<Vec<_>>()).unwrap();
            let is_cycle = members(verts).all(|v| deg[v] == 2 && mdeg[v] == 1) && sub.is_connected_in(verts);
            if is_cycle {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn pm_counts() {
        assert_eq!(enumerate_perfect_matchings(&Graph::cycle(6).unwrap(), None).len(), 2);
        assert_eq!(enumerate_perfect_matchings(&Graph::complete_bipartite(3, 3).unwrap(), None).len(), 6);
        let h50 = families::make_h(5, 0).unwrap();
        let pms = enumerate_perfect_matchings(&h50, None);
        assert_eq!(pms.len(), 1);
        let expected: Vec<Edge> = (0..5).map(|i| Edge::new(i, 5 + i)).collect();
        assert_eq!(pms[0].edges(), expected.as_slice());
        assert!(enumerate_perfect_matchings(&Graph::path(3).unwrap(), None).is_empty());
        assert_eq!(enumerate_perfect_matchings(&Graph::complete(6).unwrap(), Some(4)).len(), 4);
        assert!(all_perfect_matchings(&Graph::complete(8).unwrap(), 100).is_err());
        assert_eq!(all_perfect_matchings(&Graph::complete(8).unwrap(), 105).unwrap().len(), 105);
    }

    #[test]
    fn uniqueness() {
        assert!(has_unique_perfect_matching(&families::make_h_hat(5).unwrap()));
        assert!(!has_unique_perfect_matching(&Graph::cycle(4).unwrap()));
        assert!(has_unique_perfect_matching(&Graph::complete(2).unwrap()));
        assert!(!has_unique_perfect_matching(&Graph::path(3).unwrap()));
    }

    #[test]
    fn cycles_c4_and_h_hat() {
        let c4 = Graph::cycle(4).unwrap();
        for m in enumerate_perfect_matchings(&c4, None) {
            let cycles = alternating_cycles(&c4, &m).unwrap();
            assert_eq!(cycles.len(), 1);
            assert_eq!(cycles[0].vertices, vec![0, 1, 2, 3]);
        }
        let hh = families::make_h_hat(5).unwrap();
        assert!(alternating_cycles(&hh, &pm(&hh)).unwrap().is_empty());
    }

    #[test]
    fn cycles_k33_match_brute_force() {
        let k33 = Graph::complete_bipartite(3, 3).unwrap();
        for m in enumerate_perfect_matchings(&k33, None) {
            let cycles = alternating_cycles(&k33, &m).unwrap();
            assert_eq!(cycles.len(), brute_alternating_cycle_count(&k33, &m));
            // Frozen from the brute-force count: three 4-cycles and two 6-cycles.
            assert_eq!(cycles.len(), 5);
            assert_eq!(cycles.iter().filter(|c| c.len() == 4).count(), 3);
            assert!(cycles.iter().all(|c| c.is_valid_for(&k33, &m)));
        }
    }

    #[test]
    fn cycles_match_brute_force_on_small_graphs() {
        for g in [
            Graph::complete(4).unwrap(),
            Graph::complete(6).unwrap(),
            families::make_h(3, 1).unwrap(),
            Graph::hypercube(3).unwrap(),
            families::make_matching_join(3, 1).unwrap(),
        ] {
            for m in enumerate_perfect_matchings(&g, None) {
                let cycles = alternating_cycles(&g, &m).unwrap();
                assert_eq!(cycles.len(), brute_alternating_cycle_count(&g, &m), "{g:?}");
                let mut dedup = cycles.clone();
                dedup.dedup();
                assert_eq!(dedup.len(), cycles.len());
            }
        }
    }

    #[test]
    fn cycle_limit_and_bad_matching() {
        let k8 = Graph::complete(8).unwrap();
        let m = pm(&k8);
        assert!(matches!(
            alternating_cycles_limited(&k8, &m, 10),
            Err(Error::Resource { what: Resource::AlternatingCycles, .. })
        ));
        let not_perfect = Matching::new(vec![Edge::new(0, 1)]).unwrap();
        assert_eq!(alternating_cycles(&k8, &not_perfect), Err(Error::NotPerfectMatching));
    }

    #[test]
    fn allowed_and_elementary() {
        let k22 = Graph::complete_bipartite(2, 2).unwrap();
        assert_eq!(allowed_edges(&k22).len(), 4);
        let p4 = Graph::path(4).unwrap();
        assert_eq!(allowed_edges(&p4), vec![Edge::new(0, 1), Edge::new(2, 3)]);
        assert_eq!(forbidden_edges(&p4), vec![Edge::new(1, 2)]);
        assert!(is_elementary(&Graph::complete_bipartite(3, 3).unwrap()));
        assert!(!is_elementary(&p4));
    }

    #[test]
    fn independence_examples() {
        assert_eq!(independence_number(&Graph::cycle(6).unwrap()), 3);
        assert_eq!(independence_number(&Graph::complete_bipartite(3, 3).unwrap()), 3);
        assert_eq!(independence_number(&families::make_h_hat(5).unwrap()), 5);
        assert_eq!(independence_number(&Graph::complete(7).unwrap()), 1);
        assert_eq!(independence_number(&Graph::empty(32).unwrap()), 32);
        assert_eq!(independence_number(&Graph::cycle(7).unwrap()), 3);
    }
}
