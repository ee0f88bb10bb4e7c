//! Graph isomorphism for small graphs: a canonical form by individualisation and
//! colour refinement, and a direct backtracking matcher.

use crate::error::{Error, Resource, Result};
use crate::graph::{bit, members, Graph, MAX_ORDER};
use crate::graph6;

/// Orders above this are refused by [`isomorphic_capped`].
pub const BRUTE_FORCE_ORDER_CAP: usize = 12;

/// Refines `colours` until every vertex's colour determines the multiset of its
/// neighbours' colours. Colours are re-ranked `0..c`; the result is equivariant.
fn refine(g: &Graph, colours: &mut [u32]) {
    let n = g.order();
    let mut classes = count_classes(colours);
    loop {
        let mut sigs: Vec<(u32, Vec<u32>, usize)> = (0..n)
            .map(|v| {
                let mut nb: Vec<u32> = members(g.neighbors(v)).map(|w| colours[w]).collect();
                nb.sort_unstable();
                (colours[v], nb, v)
            })
            .collect();
        sigs.sort();
        let mut rank = 0;
        for i in 0..n {
            if i > 0 && (sigs[i].0 != sigs[i - 1].0 || sigs[i].1 != sigs[i - 1].1) {
                rank += 1;
            }
            colours[sigs[i].2] = rank;
        }
        let now = rank as usize + 1;
        if now == classes {
            return;
        }
        classes = now;
    }
}

fn count_classes(colours: &[u32]) -> usize {
    let mut c = colours.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

fn degree_colours(g: &Graph) -> Vec<u32> {
    let mut colours: Vec<u32> = (0..g.order()).map(|v| g.degree(v) as u32).collect();
    refine(g, &mut colours);
    colours
}

/// Column-major upper-triangle adjacency code of `g` under the vertex order `ord`.
fn code_of(g: &Graph, ord: &[usize]) -> Vec<u32> {
    (1..ord.len())
        .map(|j| (0..j).fold(0u32, |acc, i| acc << 1 | g.has_edge(ord[i], ord[j]) as u32))
        .collect()
}

struct Canon<'a> {
    g: &'a Graph,
    best: Option<(Vec<u32>, Vec<usize>)>,
}

impl Canon<'_> {
    fn search(&mut self, colours: Vec<u32>) {
        let n = self.g.order();
        let classes = count_classes(&colours);
        if classes == n {
            let mut ord = vec![0; n];
            for (v, &c) in colours.iter().enumerate() {
                ord[c as usize] = v;
            }
            let code = code_of(self.g, &ord);
            if self.best.as_ref().is_none_or(|(b, _)| code < *b) {
                self.best = Some((code, ord));
            }
            return;
        }
        // First smallest non-singleton cell.
        let mut sizes = vec![0usize; n];
        for &c in &colours {
            sizes[c as usize] += 1;
        }
        let target = (0..n)
            .filter(|&c| sizes[c] > 1)
            .min_by_key(|&c| (sizes[c], c))
            .expect("non-discrete partition") as u32;
        let cell: Vec<usize> = (0..n).filter(|&v| colours[v] == target).collect();
        let mut tried: Vec<usize> = Vec::new();
        for &v in &cell {
            // Swapping twins is an automorphism fixing everything already individualised.
            if tried.iter().any(|&w| self.twins(v, w)) {
                continue;
            }
            tried.push(v);
            let mut next: Vec<u32> = colours.iter().map(|&c| 2 * c + 1).collect();
            next[v] = 2 * colours[v];
            refine(self.g, &mut next);
            self.search(next);
        }
    }

    fn twins(&self, a: usize, b: usize) -> bool {
        self.g.neighbors(a) & !bit(b) == self.g.neighbors(b) & !bit(a)
    }
}

/// A labelling `ord` (new position to old vertex) that is the same for all
/// graphs in an isomorphism class up to automorphism.
pub fn canonical_labelling(g: &Graph) -> Vec<usize> {
    let mut canon = Canon { g, best: None };
    canon.search(degree_colours(g));
    canon.best.expect("at least one leaf").1
}

/// The canonical representative of `g`'s isomorphism class.
pub fn canonical_form(g: &Graph) -> Graph {
    let ord = canonical_labelling(g);
    let mut perm = vec![0; g.order()];
    for (new, &old) in ord.iter().enumerate() {
        perm[old] = new;
    }
    g.permuted(&perm)
}

pub fn canonical_graph6(g: &Graph) -> String {
    graph6::encode(&canonical_form(g))
}

pub fn are_isomorphic(g: &Graph, h: &Graph) -> bool {
    if g.order() != h.order() || g.edge_count() != h.edge_count() {
        return false;
    }
    let (mut a, mut b) = (g.degrees(), h.degrees());
    a.sort_unstable();
    b.sort_unstable();
    a == b && canonical_form(g) == canonical_form(h)
}

/// An isomorphism `g -> h` as `map[v]`, by backtracking over colour-respecting maps.
pub fn find_isomorphism(g: &Graph, h: &Graph) -> Option<Vec<usize>> {
    if g.order() != h.order() || g.edge_count() != h.edge_count() {
        return None;
    }
    let n = g.order();
    let (cg, ch) = joint_colours(g, h)?;
    let mut map = vec![usize::MAX; n];
    let mut used = 0u32;
    fn rec(g: &Graph, h: &Graph, cg: &[u32], ch: &[u32], v: usize, map: &mut [usize], used: &mut u32) -> bool {
        let n = g.order();
        if v == n {
            return true;
        }
        for w in 0..n {
            if *used & bit(w) != 0 || cg[v] != ch[w] {
                continue;
            }
            if (0..v).any(|x| g.has_edge(x, v) != h.has_edge(map[x], w)) {
                continue;
            }
            map[v] = w;
            *used |= bit(w);
            if rec(g, h, cg, ch, v + 1, map, used) {
                return true;
            }
            *used &= !bit(w);
        }
        false
    }
    rec(g, h, &cg, &ch, 0, &mut map, &mut used).then_some(map)
}

/// Refines both graphs as one disjoint union so their colours are comparable.
fn joint_colours(g: &Graph, h: &Graph) -> Option<(Vec<u32>, Vec<u32>)> {
    let n = g.order();
    if 2 * n > MAX_ORDER {
        let (cg, ch) = (degree_colours_raw(g), degree_colours_raw(h));
        let (mut a, mut b) = (cg.clone(), ch.clone());
        a.sort_unstable();
        b.sort_unstable();
        return (a == b).then_some((cg, ch));
    }
    let both = g.disjoint_union(h).ok()?;
    let mut colours: Vec<u32> = (0..2 * n).map(|v| both.degree(v) as u32).collect();
    refine(&both, &mut colours);
    let (cg, ch) = colours.split_at(n);
    let (mut a, mut b) = (cg.to_vec(), ch.to_vec());
    a.sort_unstable();
    b.sort_unstable();
    (a == b).then(|| (cg.to_vec(), ch.to_vec()))
}

fn degree_colours_raw(g: &Graph) -> Vec<u32> {
    (0..g.order()).map(|v| g.degree(v) as u32).collect()
}

/// Backtracking isomorphism test refused above [`BRUTE_FORCE_ORDER_CAP`].
pub fn isomorphic_capped(g: &Graph, h: &Graph) -> Result<bool> {
    if g.order().max(h.order()) > BRUTE_FORCE_ORDER_CAP {
        return Err(Error::Resource {
            what: Resource::IsomorphismOrder,
            limit: BRUTE_FORCE_ORDER_CAP as u64,
        });
    }
    Ok(find_isomorphism(g, h).is_some())
}

/// Peels isolated and dominating vertices; `Some` sorted degrees iff `g` is a threshold graph.
fn threshold_degrees(g: &Graph) -> Option<Vec<usize>> {
    let mut rest = g.vertices();
    while rest != 0 {
        let size = rest.count_ones() as usize;
        let peel = members(rest).find(|&v| {
            let d = g.degree_in(v, rest);
            d == 0 || d + 1 == size
        })?;
        rest &= !bit(peel);
    }
    let mut d = g.degrees();
    d.sort_unstable();
    Some(d)
}

/// Sorted degrees of each side when `g` is a connected bipartite graph whose
/// neighbourhoods on one side are nested.
fn chain_sides(g: &Graph) -> Option<(Vec<usize>, Vec<usize>)> {
    if !g.is_connected() {
        return None;
    }
    let bp = crate::graph::bipartition_of(g)?;
    let mut us: Vec<usize> = members(bp.side_u).collect();
    us.sort_by_key(|&x| std::cmp::Reverse(g.degree(x)));
    let nested = us.windows(2).all(|w| g.neighbors(w[1]) & !g.neighbors(w[0]) == 0);
    if !nested {
        return None;
    }
    let side = |s: u32| {
        let mut d: Vec<usize> = members(s).map(|x| g.degree(x)).collect();
        d.sort_unstable();
        d
    };
    Some((side(bp.side_u), side(bp.side_v)))
}

/// Decides isomorphism to `target` without search when `target` is a threshold
/// graph or a connected bipartite chain graph; both classes are determined up to
/// isomorphism by their degrees. `None` when neither shape applies to `target`.
pub fn structural_isomorphic(g: &Graph, target: &Graph) -> Option<bool> {
    if g.order() != target.order() {
        return Some(false);
    }
    if let Some(t) = threshold_degrees(target) {
        return Some(threshold_degrees(g) == Some(t));
    }
    if let Some((tu, tv)) = chain_sides(target) {
        return Some(match chain_sides(g) {
            Some((gu, gv)) => (gu == tu && gv == tv) || (gu == tv && gv == tu),
            None => false,
        });
    }
    None
}

/// Structural recogniser first, then [`isomorphic_capped`].
pub fn isomorphic_to_extremal(g: &Graph, target: &Graph) -> Result<bool> {
    match structural_isomorphic(g, target) {
        Some(answer) => Ok(answer),
        None => isomorphic_capped(g, target),
    }
}
