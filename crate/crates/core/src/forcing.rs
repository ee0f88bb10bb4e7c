//! Forcing numbers, cycle packings and anti-forcing numbers, with witnesses.

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Resource, Result};
use crate::graph::{Edge, Graph, VertexSet};
use crate::hitting::{max_disjoint_packing, BitSet512, HittingSetSolver};
use crate::matching::{
    alternating_cycles_limited, all_perfect_matchings, count_perfect_matchings_in, other_perfect_matching_in,
    Matching, DEFAULT_CYCLE_LIMIT,
};

/// Ceilings that turn runaway searches into [`Error::Resource`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Limits {
    pub pm_limit: usize,
    pub node_limit: u64,
    pub cycle_limit: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            pm_limit: 100_000,
            node_limit: 10_000_000,
            cycle_limit: DEFAULT_CYCLE_LIMIT,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    SubsetSearch,
    CycleHitting,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ForcingResult {
    pub value: usize,
    pub witness_matching: Matching,
    pub witness_set: Vec<Edge>,
    pub method: Method,
}

fn covered_by(edges: &[Edge]) -> VertexSet {
    edges.iter().fold(0, |acc, e| acc | e.mask())
}

/// Does `s ⊆ m` leave `m \ s` as the only perfect matching of `g - V(s)`?
pub fn is_forcing_set(g: &Graph, m: &Matching, s: &[Edge]) -> Result<bool> {
    m.ensure_perfect(g)?;
    if s.iter().any(|&e| !m.contains(e)) {
        return Err(Error::NotSubsetOfMatching);
    }
    let residue = g.vertices() & !covered_by(s);
    Ok(count_perfect_matchings_in(g, residue, 2) == 1)
}

/// Is `m` the only perfect matching of `g - x`, for `x` disjoint from `m`?
pub fn is_anti_forcing_set(g: &Graph, m: &Matching, x: &[Edge]) -> Result<bool> {
    m.ensure_perfect(g)?;
    if x.iter().any(|&e| m.contains(e)) {
        return Err(Error::IntersectsMatching);
    }
    if let Some(e) = x.iter().find(|e| !g.has_edge(e.u(), e.v())) {
        return Err(Error::EndpointOutOfRange {
            endpoint: e.v(),
            order: g.order(),
        });
    }
    let h = g.without_edges(x);
    Ok(count_perfect_matchings_in(&h, h.vertices(), 2) == 1)
}

/// Splits `m Δ other` into its cycles, each given as a mask over positions in `m`.
fn difference_cycles(m: &Matching, other: &[Edge]) -> Vec<u32> {
    let m_mates = m.mates();
    let mut o_mates = [usize::MAX; crate::graph::MAX_ORDER];
    for e in other {
        o_mates[e.u()] = e.v();
        o_mates[e.v()] = e.u();
    }
    let mut seen: VertexSet = 0;
    let mut cycles = Vec::new();
    for e in m.edges() {
        if seen & e.mask() != 0 || o_mates[e.u()] == e.v() || o_mates[e.u()] == usize::MAX {
            continue;
        }
        let mut mask = 0u32;
        let start = e.u();
        let mut x = start;
        loop {
            let y = m_mates[x];
            seen |= crate::graph::bit(x) | crate::graph::bit(y);
            let pos = m.edges().binary_search(&Edge::new(x, y)).expect("matching edge");
            mask |= 1 << pos;
            x = o_mates[y];
            if x == start {
                break;
            }
        }
        cycles.push(mask);
    }
    cycles
}

fn greedy_packing(cycles: &[u32]) -> usize {
    let mut sorted: Vec<u32> = cycles.to_vec();
    sorted.sort_by_key(|c| c.count_ones());
    let mut used = 0u32;
    let mut count = 0;
    for c in sorted {
        if c & used == 0 {
            used |= c;
            count += 1;
        }
    }
    count
}

/// `f(G, M)` by iterative deepening over subsets of `m` in lexicographic order.
///
/// Each failed candidate yields a second perfect matching of its residue, whose
/// difference with `m` gives alternating cycles the candidate misses; later
/// candidates missing a known cycle are skipped, and a greedy disjoint packing
/// of known cycles skips whole sizes.
pub fn forcing_number(g: &Graph, m: &Matching, limits: &Limits) -> Result<ForcingResult> {
    m.ensure_perfect(g)?;
    let edges = m.edges();
    let n = edges.len();
    let mut learned: Vec<u32> = Vec::new();
    let mut nodes = 0u64;
    for size in 0..=n {
        if greedy_packing(&learned) > size {
            continue;
        }
        'subsets: for combo in (0..n).combinations(size) {
            let mask = combo.iter().fold(0u32, |acc, &p| acc | 1 << p);
            if learned.iter().any(|&c| c & mask == 0) {
                continue;
            }
            nodes += 1;
            if nodes > limits.node_limit {
                return Err(Error::Resource {
                    what: Resource::SearchNodes,
                    limit: limits.node_limit,
                });
            }
            let chosen: Vec<Edge> = combo.iter().map(|&p| edges[p]).collect();
            let rest: Vec<Edge> = (0..n).filter(|p| mask >> p & 1 == 0).map(|p| edges[p]).collect();
            let residue = g.vertices() & !covered_by(&chosen);
            match other_perfect_matching_in(g, residue, &rest) {
                None => {
                    return Ok(ForcingResult {
                        value: size,
                        witness_matching: m.clone(),
                        witness_set: chosen,
                        method: Method::SubsetSearch,
                    })
                }
                Some(other) => {
                    learned.extend(difference_cycles(m, &other));
                    if greedy_packing(&learned) > size {
                        break 'subsets;
                    }
                }
            }
        }
    }
    unreachable!("the whole matching is always a forcing set")
}

/// `f(G, M)` as a minimum hitting set of the M-edges of all M-alternating cycles.
pub fn forcing_number_by_hitting(g: &Graph, m: &Matching, limits: &Limits) -> Result<ForcingResult> {
    let cycles = alternating_cycles_limited(g, m, limits.cycle_limit)?;
    let sets = cycles.iter().map(|c| {
        BitSet512::from_positions(c.m_edges.iter().map(|e| m.edges().binary_search(e).expect("matching edge")))
    });
    let (value, hit) = HittingSetSolver::new(sets, limits.node_limit).solve()?;
    Ok(ForcingResult {
        value,
        witness_matching: m.clone(),
        witness_set: hit.iter().map(|p| m.edges()[p]).collect(),
        method: Method::CycleHitting,
    })
}

/// `C(G, M)`: the most vertex-disjoint M-alternating cycles.
pub fn cycle_packing(g: &Graph, m: &Matching, limits: &Limits) -> Result<usize> {
    let cycles = alternating_cycles_limited(g, m, limits.cycle_limit)?;
    let masks: Vec<VertexSet> = cycles.iter().map(|c| c.vertex_set()).collect();
    max_disjoint_packing(&masks, limits.node_limit)
}

/// `af(G, M)`: fewest non-M edges whose removal leaves `m` as the only perfect matching.
pub fn anti_forcing_number(g: &Graph, m: &Matching, limits: &Limits) -> Result<ForcingResult> {
    let cycles = alternating_cycles_limited(g, m, limits.cycle_limit)?;
    let sets = cycles.iter().map(|c| {
        BitSet512::from_positions(c.non_m_edges.iter().map(|&e| g.edge_position(e).expect("graph edge")))
    });
    let (value, hit) = HittingSetSolver::new(sets, limits.node_limit).solve()?;
    Ok(ForcingResult {
        value,
        witness_matching: m.clone(),
        witness_set: hit.iter().map(|p| g.edges()[p]).collect(),
        method: Method::CycleHitting,
    })
}

fn perfect_matchings_or_err(g: &Graph, limits: &Limits) -> Result<Vec<Matching>> {
    let pms = all_perfect_matchings(g, limits.pm_limit)?;
    if pms.is_empty() {
        return Err(Error::NoPerfectMatching);
    }
    Ok(pms)
}

/// `Af(G)`, with the first perfect matching attaining it as witness.
pub fn max_anti_forcing(g: &Graph, limits: &Limits) -> Result<ForcingResult> {
    let pms = perfect_matchings_or_err(g, limits)?;
    let results: Vec<ForcingResult> = pms
        .par_iter()
        .map(|m| anti_forcing_number(g, m, limits))
        .collect::<Result<_>>()?;
    let best = results.iter().map(|r| r.value).max().expect("non-empty");
    Ok(results.into_iter().find(|r| r.value == best).expect("maximum attained"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatchingForcing {
    pub matching: Matching,
    pub forcing: usize,
    pub witness: Vec<Edge>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumReport {
    pub per_matching: Vec<MatchingForcing>,
    pub f_min: usize,
    pub f_max: usize,
    pub c_values: Option<Vec<usize>>,
}

impl SpectrumReport {
    pub fn min_witness(&self) -> &MatchingForcing {
        self.per_matching.iter().find(|p| p.forcing == self.f_min).expect("minimum attained")
    }

    pub fn max_witness(&self) -> &MatchingForcing {
        self.per_matching.iter().find(|p| p.forcing == self.f_max).expect("maximum attained")
    }
}

/// `f(G, M)` for every perfect matching, hence `f(G)` and `F(G)`.
pub fn spectrum(g: &Graph, limits: &Limits) -> Result<SpectrumReport> {
    spectrum_impl(g, limits, false)
}

/// As [`spectrum`], also recording `C(G, M)` per matching.
pub fn spectrum_with_packing(g: &Graph, limits: &Limits) -> Result<SpectrumReport> {
    spectrum_impl(g, limits, true)
}

fn spectrum_impl(g: &Graph, limits: &Limits, packing: bool) -> Result<SpectrumReport> {
    let pms = perfect_matchings_or_err(g, limits)?;
    let rows: Vec<(MatchingForcing, Option<usize>)> = pms
        .into_par_iter()
        .map(|m| {
            let r = forcing_number(g, &m, limits)?;
            let c = if packing { Some(cycle_packing(g, &m, limits)?) } else { None };
            Ok((
                MatchingForcing {
                    matching: m,
                    forcing: r.value,
                    witness: r.witness_set,
                },
                c,
            ))
        })
        .collect::<Result<_>>()?;
    let f_min = rows.iter().map(|r| r.0.forcing).min().expect("non-empty");
    let f_max = rows.iter().map(|r| r.0.forcing).max().expect("non-empty");
    let c_values = packing.then(|| rows.iter().map(|r| r.1.expect("computed")).collect());
    Ok(SpectrumReport {
        per_matching: rows.into_iter().map(|r| r.0).collect(),
        f_min,
        f_max,
        c_values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::matching::enumerate_perfect_matchings;
    use proptest::prelude::*;

    fn lim() -> Limits {
        Limits::default()
    }

    fn first_pm(g: &Graph) -> Matching {
        enumerate_perfect_matchings(g, Some(1)).remove(0)
    }

    /// Smallest forcing set size by brute force over all subsets of `m`.
    fn forcing_oracle(g: &Graph, m: &Matching) -> usize {
        let n = m.len();
        (0u32..1 << n)
            .filter(|mask| {
                let s: Vec<Edge> = (0..n).filter(|p| mask >> p & 1 == 1).map(|p| m.edges()[p]).collect();
                is_forcing_set(g, m, &s).unwrap()
            })
            .map(|mask| mask.count_ones() as usize)
            .min()
            .unwrap()
    }

    /// Smallest anti-forcing set size by brute force over non-M edge subsets.
    fn anti_forcing_oracle(g: &Graph, m: &Matching) -> usize {
        let outside: Vec<Edge> = g.edges().iter().copied().filter(|&e| !m.contains(e)).collect();
        (0u64..1 << outside.len())
            .filter(|mask| {
                let x: Vec<Edge> = (0..outside.len()).filter(|p| mask >> p & 1 == 1).map(|p| outside[p]).collect();
                is_anti_forcing_set(g, m, &x).unwrap()
            })
            .map(|mask| mask.count_ones() as usize)
            .min()
            .unwrap()
    }

    fn random_graph(n: usize, seed: u64, density: u64) -> Graph {
        let mut state = seed | 1;
        let mut edges = Vec::new();
        for j in 1..n {
            for i in 0..j {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                if state % 100 < density {
                    edges.push((i, j));
                }
            }
        }
        Graph::new(n, &edges).unwrap()
    }

    #[test]
    fn c4_forcing_sets() {
        let c4 = Graph::cycle(4).unwrap();
        let m = first_pm(&c4);
        assert!(is_forcing_set(&c4, &m, &m.edges()[..1]).unwrap());
        assert!(!is_forcing_set(&c4, &m, &[]).unwrap());
        assert_eq!(is_forcing_set(&c4, &m, &[Edge::new(1, 2)]), Err(Error::NotSubsetOfMatching));
    }

    #[test]
    fn k33_any_two_edges_force() {
        let g = Graph::complete_bipartite(3, 3).unwrap();
        for m in enumerate_perfect_matchings(&g, None) {
            for pair in m.edges().iter().copied().combinations(2) {
                assert!(is_forcing_set(&g, &m, &pair).unwrap());
            }
        }
    }

    #[test]
    fn forcing_examples() {
        let h = families::make_h_hat(5).unwrap();
        assert_eq!(forcing_number(&h, &first_pm(&h), &lim()).unwrap().value, 0);
        let c6 = Graph::cycle(6).unwrap();
        for m in enumerate_perfect_matchings(&c6, None) {
            assert_eq!(forcing_number(&c6, &m, &lim()).unwrap().value, 1);
        }
    }

    #[test]
    fn spectrum_examples() {
        let s = spectrum(&Graph::complete_bipartite(3, 3).unwrap(), &lim()).unwrap();
        assert_eq!((s.f_min, s.f_max), (2, 2));
        assert_eq!(spectrum(&Graph::hypercube(3).unwrap(), &lim()).unwrap().f_min, 2);
        assert_eq!(spectrum(&families::make_h(6, 2).unwrap(), &lim()).unwrap().f_min, 2);
        assert_eq!(spectrum(&Graph::cycle(5).unwrap(), &lim()), Err(Error::NoPerfectMatching));
    }

    #[test]
    fn grid_minimum_forcing() {
        let p4 = Graph::path(4).unwrap();
        let grid = p4.cartesian_product(&p4).unwrap();
        let s = spectrum(&grid, &lim()).unwrap();
        assert_eq!((s.f_min, s.f_max), (2, 4));
    }

    #[test]
    fn packing_examples() {
        let c4 = Graph::cycle(4).unwrap();
        assert_eq!(cycle_packing(&c4, &first_pm(&c4), &lim()).unwrap(), 1);
        let two = c4.disjoint_union(&c4).unwrap();
        assert_eq!(cycle_packing(&two, &first_pm(&two), &lim()).unwrap(), 2);
    }

    #[test]
    fn anti_forcing_examples() {
        let c4 = Graph::cycle(4).unwrap();
        let r = anti_forcing_number(&c4, &first_pm(&c4), &lim()).unwrap();
        assert_eq!(r.value, 1);
        assert!(is_anti_forcing_set(&c4, &r.witness_matching, &r.witness_set).unwrap());
        let h = families::make_h_hat(5).unwrap();
        assert_eq!(anti_forcing_number(&h, &first_pm(&h), &lim()).unwrap().value, 0);
        assert_eq!(max_anti_forcing(&c4, &lim()).unwrap().value, 1);
        assert_eq!(max_anti_forcing(&Graph::matching_graph(3).unwrap(), &lim()).unwrap().value, 0);
        assert_eq!(max_anti_forcing(&Graph::cycle(6).unwrap(), &lim()).unwrap().value, 1);
        let m = first_pm(&c4);
        assert_eq!(is_anti_forcing_set(&c4, &m, &m.edges()[..1]), Err(Error::IntersectsMatching));
    }

    #[test]
    fn k33_anti_forcing_matches_oracle() {
        // Brute force over all 2^6 subsets of the non-matching edges gives 3.
        let g = Graph::complete_bipartite(3, 3).unwrap();
        for m in enumerate_perfect_matchings(&g, None) {
            assert_eq!(anti_forcing_oracle(&g, &m), 3);
            assert_eq!(anti_forcing_number(&g, &m, &lim()).unwrap().value, 3);
        }
    }

    #[test]
    fn subset_search_and_hitting_agree_with_same_witness() {
        for seed in 1..60u64 {
            let g = random_graph(8, seed * 7919, 55);
            for m in enumerate_perfect_matchings(&g, Some(6)) {
                let a = forcing_number(&g, &m, &lim()).unwrap();
                let b = forcing_number_by_hitting(&g, &m, &lim()).unwrap();
                assert_eq!(a.value, forcing_oracle(&g, &m));
                assert_eq!((a.value, &a.witness_set), (b.value, &b.witness_set));
            }
        }
    }

    #[test]
    fn node_limit_is_reported() {
        let g = Graph::complete_bipartite(4, 4).unwrap();
        let m = first_pm(&g);
        let tight = Limits {
            node_limit: 2,
            ..Limits::default()
        };
        assert!(forcing_number(&g, &m, &tight).unwrap_err().is_resource());
        let few_pms = Limits {
            pm_limit: 3,
            ..Limits::default()
        };
        assert!(spectrum(&g, &few_pms).unwrap_err().is_resource());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn witness_properties(seed in any::<u64>(), half in 1usize..=4, density in 30u64..90) {
            let g = random_graph(2 * half, seed, density);
            for m in enumerate_perfect_matchings(&g, Some(4)) {
                let r = forcing_number(&g, &m, &lim()).unwrap();
                prop_assert!(is_forcing_set(&g, &m, &r.witness_set).unwrap());
                for drop in 0..r.witness_set.len() {
                    let mut smaller = r.witness_set.clone();
                    smaller.remove(drop);
                    prop_assert!(!is_forcing_set(&g, &m, &smaller).unwrap());
                }
                for &e in m.edges() {
                    if !r.witness_set.contains(&e) {
                        let mut bigger = r.witness_set.clone();
                        bigger.push(e);
                        prop_assert!(is_forcing_set(&g, &m, &bigger).unwrap());
                    }
                }
                let c = cycle_packing(&g, &m, &lim()).unwrap();
                prop_assert!(c <= r.value);
                prop_assert!(r.value < half);
                let a = anti_forcing_number(&g, &m, &lim()).unwrap();
                prop_assert!(is_anti_forcing_set(&g, &m, &a.witness_set).unwrap());
                prop_assert!(a.value >= r.value);
                if g.edge_count() - m.len() <= 14 {
                    prop_assert_eq!(a.value, anti_forcing_oracle(&g, &m));
                }
            }
        }
    }
}
