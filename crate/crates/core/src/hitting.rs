//! Exact minimum hitting set and maximum disjoint packing, both by branch and bound.
//!
//! These back the cycle-based formulations: a forcing (anti-forcing) set is a
//! hitting set of the M-edge (non-M-edge) sides of the alternating cycles, and
//! `C(G, M)` is a maximum packing of vertex-disjoint alternating cycles.

use crate::error::{Error, Resource, Result};
use crate::graph::VertexSet;

const WORDS: usize = 8;

/// Fixed 512-bit set; large enough to index every edge of a 32-vertex graph.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitSet512([u64; WORDS]);

impl std::fmt::Debug for BitSet512 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl BitSet512 {
    pub const CAPACITY: usize = 64 * WORDS;

    pub fn from_positions(positions: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::default();
        for p in positions {
            s.insert(p);
        }
        s
    }

    /// Positions `0..n`.
    pub fn prefix(n: usize) -> Self {
        Self::from_positions(0..n)
    }

    pub fn insert(&mut self, p: usize) {
        self.0[p / 64] |= 1 << (p % 64);
    }

    pub fn remove(&mut self, p: usize) {
        self.0[p / 64] &= !(1 << (p % 64));
    }

    pub fn with(mut self, p: usize) -> Self {
        self.insert(p);
        self
    }

    pub fn without(mut self, p: usize) -> Self {
        self.remove(p);
        self
    }

    pub fn contains(&self, p: usize) -> bool {
        self.0[p / 64] >> (p % 64) & 1 == 1
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn intersects(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).any(|(a, b)| a & b != 0)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }

    pub fn and(&self, other: &Self) -> Self {
        let mut out = *self;
        for (a, b) in out.0.iter_mut().zip(&other.0) {
            *a &= b;
        }
        out
    }

    pub fn or(&self, other: &Self) -> Self {
        let mut out = *self;
        for (a, b) in out.0.iter_mut().zip(&other.0) {
            *a |= b;
        }
        out
    }

    /// Members strictly greater than `p`.
    pub fn above(&self, p: usize) -> Self {
        let mut out = *self;
        let w = p / 64;
        for word in out.0.iter_mut().take(w) {
            *word = 0;
        }
        let keep = if p % 64 == 63 { 0 } else { !0u64 << (p % 64 + 1) };
        out.0[w] &= keep;
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(i * 64 + b)
                }
            })
        })
    }
}

/// Minimum hitting set over a fixed family of non-empty sets.
pub struct HittingSetSolver {
    sets: Vec<BitSet512>,
    universe: BitSet512,
    node_limit: u64,
    nodes: u64,
}

impl HittingSetSolver {
    /// Supersets of other members are dropped: hitting the subset hits them too.
    pub fn new(sets: impl IntoIterator<Item = BitSet512>, node_limit: u64) -> Self {
        let mut sets: Vec<BitSet512> = sets.into_iter().collect();
        assert!(sets.iter().all(|s| !s.is_empty()), "empty set cannot be hit");
        sets.sort_by_key(|s| (s.len(), *s));
        sets.dedup();
        let mut kept: Vec<BitSet512> = Vec::with_capacity(sets.len());
        for s in sets {
            if !kept.iter().any(|k| k.is_subset(&s)) {
                kept.push(s);
            }
        }
        let universe = kept.iter().fold(BitSet512::default(), |acc, s| acc.or(s));
        HittingSetSolver {
            sets: kept,
            universe,
            node_limit,
            nodes: 0,
        }
    }

    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    /// Minimum size and the lexicographically first minimum hitting set.
    pub fn solve(&mut self) -> Result<(usize, BitSet512)> {
        let universe = self.universe;
        let mut size = self.packing_bound(&BitSet512::default(), &universe);
        while !self.feasible(BitSet512::default(), universe, size)? {
            size += 1;
        }
        let mut chosen = BitSet512::default();
        let mut candidates = universe;
        for slot in 0..size {
            let mut placed = false;
            for p in candidates.iter().collect::<Vec<_>>() {
                let allowed = universe.above(p);
                if self.feasible(chosen.with(p), allowed, size - slot - 1)? {
                    chosen.insert(p);
                    candidates = allowed;
                    placed = true;
                    break;
                }
            }
            assert!(placed, "a feasible budget always admits a lexicographic completion");
        }
        Ok((size, chosen))
    }

    /// Greedy disjoint packing of the sets not hit by `chosen`, restricted to `allowed`.
    fn packing_bound(&self, chosen: &BitSet512, allowed: &BitSet512) -> usize {
        let mut used = BitSet512::default();
        let mut count = 0;
        for s in &self.sets {
            if s.intersects(chosen) {
                continue;
            }
            let r = s.and(allowed);
            if !r.intersects(&used) {
                used = used.or(&r);
                count += 1;
            }
        }
        count
    }

    /// Is there a hitting set `X` with `chosen ⊆ X ⊆ chosen ∪ allowed` and
    /// `|X \ chosen| <= budget`?
    fn feasible(&mut self, chosen: BitSet512, allowed: BitSet512, budget: usize) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.node_limit {
            return Err(Error::Resource {
                what: Resource::SearchNodes,
                limit: self.node_limit,
            });
        }
        let mut branch: Option<BitSet512> = None;
        for s in &self.sets {
            if s.intersects(&chosen) {
                continue;
            }
            let r = s.and(&allowed);
            if r.is_empty() {
                return Ok(false);
            }
            if branch.is_none_or(|b| r.len() < b.len()) {
                branch = Some(r);
            }
        }
        let Some(branch) = branch else {
            return Ok(true);
        };
        if budget == 0 || self.packing_bound(&chosen, &allowed) > budget {
            return Ok(false);
        }
        let mut allowed = allowed;
        for p in branch.iter() {
            allowed.remove(p);
            if self.feasible(chosen.with(p), allowed, budget - 1)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// Largest number of pairwise disjoint sets among `sets` (vertex masks).
pub fn max_disjoint_packing(sets: &[VertexSet], node_limit: u64) -> Result<usize> {
    let mut sets: Vec<VertexSet> = sets.iter().copied().filter(|&s| s != 0).collect();
    sets.sort_unstable();
    sets.dedup();
    let min_size = sets.iter().map(|s| s.count_ones()).min().unwrap_or(1).max(1);
    let mut search = Packing {
        min_size,
        best: 0,
        nodes: 0,
        node_limit,
    };
    search.run(&sets, 0)?;
    Ok(search.best)
}

struct Packing {
    min_size: u32,
    best: usize,
    nodes: u64,
    node_limit: u64,
}

impl Packing {
    fn run(&mut self, cands: &[VertexSet], count: usize) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.node_limit {
            return Err(Error::Resource {
                what: Resource::SearchNodes,
                limit: self.node_limit,
            });
        }
        if cands.is_empty() {
            self.best = self.best.max(count);
            return Ok(());
        }
        let span = cands.iter().fold(0, |acc, &s| acc | s);
        let bound = (span.count_ones() / self.min_size) as usize;
        if count + bound.min(cands.len()) <= self.best {
            return Ok(());
        }
        // Branch on the least covered vertex: some set through it is taken, or none is.
        let v = span.trailing_zeros();
        let through = 1u32 << v;
        for &s in cands.iter().filter(|&&s| s & through != 0) {
            let rest: Vec<VertexSet> = cands.iter().copied().filter(|&t| t & s == 0).collect();
            self.run(&rest, count + 1)?;
        }
        let rest: Vec<VertexSet> = cands.iter().copied().filter(|&t| t & through == 0).collect();
        self.run(&rest, count)
    }
}
