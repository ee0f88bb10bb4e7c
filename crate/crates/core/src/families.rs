//! Canonical labelled constructions of the extremal families.
//!
//! Bipartite-style families of order `2n` label `u_1..u_n` as `0..n-1` and
//! `v_1..v_n` as `n..2n-1`. The non-bipartite ones (`Ĥ`, joins) keep the same
//! labels, with `V` the clique side and the `K_{2k}` part on the highest indices
//! of both sides.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{full_mask, Bipartition, Edge, Graph, MAX_ORDER};
use crate::matching::{allowed_edges, has_perfect_matching};

fn invalid(family: &str, reason: impl Into<String>) -> Error {
    Error::InvalidParameters {
        family: family.to_string(),
        reason: reason.into(),
    }
}

fn check_order(family: &str, order: usize) -> Result<()> {
    if order == 0 || order > MAX_ORDER {
        return Err(invalid(family, format!("order {order} outside 1..=32")));
    }
    Ok(())
}

fn check_k(family: &str, n: usize, k: usize, max_k: Option<usize>) -> Result<()> {
    check_order(family, 2 * n)?;
    let top = max_k.unwrap_or(n.saturating_sub(1));
    if n == 0 || k > top {
        return Err(invalid(family, format!("need n >= 1 and 0 <= k <= {top}, got n={n}, k={k}")));
    }
    Ok(())
}

/// The `U = {0..n-1}`, `V = {n..2n-1}` split used by every bipartite family.
pub fn uv_bipartition(n: usize) -> Bipartition {
    Bipartition {
        side_u: full_mask(n),
        side_v: full_mask(2 * n) & !full_mask(n),
    }
}

fn u(i: usize) -> usize {
    i - 1
}

fn v(n: usize, j: usize) -> usize {
    n + j - 1
}

/// `H_{n,k}`: `K_{n,n}` without `u_i v_j` for `1 <= i < j <= n-k`.
pub fn make_h(n: usize, k: usize) -> Result<Graph> {
    check_k("H", n, k, None)?;
    let mut edges = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            if !(i < j && j <= n - k) {
                edges.push((u(i), v(n, j)));
            }
        }
    }
    Graph::new(2 * n, &edges)
}

/// `Ĥ_{n,0}`: `H_{n,0}` with `V` made a clique.
pub fn make_h_hat(n: usize) -> Result<Graph> {
    make_h_hat_join(n, 0)
}

/// `Ĥ_{n-k,0} ∨ K_{2k}`, the `K_{2k}` on `u_{n-k+1..n}` and `v_{n-k+1..n}`.
pub fn make_h_hat_join(n: usize, k: usize) -> Result<Graph> {
    check_k("HhatJoin", n, k, None)?;
    let m = n - k;
    let mut edges = Vec::new();
    let order = 2 * n;
    for a in 0..order {
        for b in a + 1..order {
            let in_k = |x: usize| (x < n && x >= m) || x >= n + m;
            let keep = if in_k(a) || in_k(b) {
                true
            } else if a < n && b >= n {
                b - n <= a
            } else {
                a >= n
            };
            if keep {
                edges.push((a, b));
            }
        }
    }
    Graph::new(order, &edges)
}

/// `(n-k)K_2 ∨ K_{2k}`: edges `u_i v_i` for `i <= n-k`, joined to a `K_{2k}`.
pub fn make_matching_join(n: usize, k: usize) -> Result<Graph> {
    check_k("MatchJoin", n, k, None)?;
    let m = n - k;
    let in_k = |x: usize| (x < n && x >= m) || x >= n + m;
    let mut edges = Vec::new();
    for a in 0..2 * n {
        for b in a + 1..2 * n {
            if in_k(a) || in_k(b) || (a < m && b == a + n) {
                edges.push((a, b));
            }
        }
    }
    Graph::new(2 * n, &edges)
}

/// `Ĥ⁺_{n-k,0} ∨ K_{2k}` where `Ĥ⁺` adds `T = {u_i v_{i+1} : i < n-k}`.
pub fn make_g4(n: usize, k: usize) -> Result<Graph> {
    if n < 2 {
        return Err(invalid("G4", "need n >= 2"));
    }
    check_k("G4", n, k, Some(n - 2))?;
    let base = make_h_hat_join(n, k)?;
    let t: Vec<_> = (1..n - k).map(|i| (u(i), v(n, i + 1))).collect();
    base.with_edges(&t)
}

/// `H_{n,k}` plus `u_i v_{n-k-1}`, `u_i v_{n-k}` and `u_{i+1} v_{n-k}`.
pub fn make_g5(n: usize, k: usize, i: usize) -> Result<Graph> {
    check_order("G5", 2 * n)?;
    if k + 3 > n || i == 0 || i + k + 2 > n {
        return Err(invalid("G5", format!("need 1 <= i <= n-k-2, got n={n}, k={k}, i={i}")));
    }
    let base = make_h(n, k)?;
    base.with_edges(&[
        (u(i), v(n, n - k - 1)),
        (u(i), v(n, n - k)),
        (u(i + 1), v(n, n - k)),
    ])
}

/// `K_{n,n}` minus disjoint `K_{a,b}`'s placed on the lowest free indices of each side.
pub fn make_g1_member(n: usize, parts: &[(usize, usize)]) -> Result<Graph> {
    check_order("G1", 2 * n)?;
    if parts.is_empty() {
        return Err(invalid("G1", "at least one deleted subgraph is required"));
    }
    let mut removed = Vec::new();
    let (mut next_u, mut next_v) = (0, 0);
    for &(a, b) in parts {
        if a == 0 || b == 0 || a + b > n {
            return Err(invalid("G1", format!("part {a}x{b} needs a, b >= 1 and a + b <= {n}")));
        }
        if next_u + a > n || next_v + b > n {
            return Err(invalid("G1", "deleted subgraphs do not fit disjointly"));
        }
        for x in next_u..next_u + a {
            for y in next_v..next_v + b {
                removed.push(Edge::new(x, n + y));
            }
        }
        next_u += a;
        next_v += b;
    }
    let g = Graph::complete_bipartite(n, n)?.without_edges(&removed);
    if !has_perfect_matching(&g) {
        return Err(invalid("G1", "result has no perfect matching"));
    }
    Ok(g)
}

/// `K_{a,a} ⊔ K_{b,b}` plus cross edges, each of which must be forbidden.
///
/// The `K_{a,a}` uses `u_1..u_a` and `v_1..v_a`.
pub fn make_g2_member(parts: (usize, usize), cross_edges: &[(usize, usize)]) -> Result<Graph> {
    let (a, b) = parts;
    let n = a + b;
    check_order("G2", 2 * n)?;
    if a == 0 || b == 0 {
        return Err(invalid("G2", "both parts need at least one vertex per side"));
    }
    let first = |x: usize| x < a || (x >= n && x < n + a);
    let mut edges = Vec::new();
    for x in 0..n {
        for y in n..2 * n {
            if first(x) == first(y) {
                edges.push((x, y));
            }
        }
    }
    for &(x, y) in cross_edges {
        let (x, y) = (x.min(y), x.max(y));
        if y >= 2 * n || x >= n || y < n || first(x) == first(y) {
            return Err(invalid("G2", format!("{x}-{y} is not a U-V edge between the two parts")));
        }
        edges.push((x, y));
    }
    let g = Graph::new(2 * n, &edges)?;
    let allowed = allowed_edges(&g);
    for &(x, y) in cross_edges {
        let e = Edge::new(x, y);
        if allowed.contains(&e) {
            return Err(Error::AllowedCrossEdge(e));
        }
    }
    Ok(g)
}

/// A family member in its canonical text form, e.g. `H:6,2` or `G1:3;1x1,1x2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    H { n: usize, k: usize },
    HHat { n: usize },
    HHatJoin { n: usize, k: usize },
    MatchingJoin { n: usize, k: usize },
    G4 { n: usize, k: usize },
    G5 { n: usize, k: usize, i: usize },
    G1 { n: usize, parts: Vec<(usize, usize)> },
    G2 { a: usize, b: usize, cross: Vec<(usize, usize)> },
    Grid { a: usize, b: usize },
    Torus { a: usize, b: usize },
    Cylinder { a: usize, b: usize },
    Hypercube { k: usize },
    Knn { n: usize },
    NK2 { n: usize },
    Path { n: usize },
    Cycle { n: usize },
    Complete { n: usize },
}

impl FamilySpec {
    pub fn build(&self) -> Result<Graph> {
        use FamilySpec::*;
        match self {
            H { n, k } => make_h(*n, *k),
            HHat { n } => make_h_hat(*n),
            HHatJoin { n, k } => make_h_hat_join(*n, *k),
            MatchingJoin { n, k } => make_matching_join(*n, *k),
            G4 { n, k } => make_g4(*n, *k),
            G5 { n, k, i } => make_g5(*n, *k, *i),
            G1 { n, parts } => make_g1_member(*n, parts),
            G2 { a, b, cross } => make_g2_member((*a, *b), cross),
            Grid { a, b } => Graph::path(*a)?.cartesian_product(&Graph::path(*b)?),
            Torus { a, b } => Graph::cycle(*a)?.cartesian_product(&Graph::cycle(*b)?),
            Cylinder { a, b } => Graph::path(*a)?.cartesian_product(&Graph::cycle(*b)?),
            Hypercube { k } => Graph::hypercube(*k),
            Knn { n } => Graph::complete_bipartite(*n, *n),
            NK2 { n } => Graph::matching_graph(*n),
            Path { n } => Graph::path(*n),
            Cycle { n } => Graph::cycle(*n),
            Complete { n } => Graph::complete(*n),
        }
    }

    /// Built as a plane bipartite graph: grids, even cycles, cylinders over even
    /// cycles, cubes up to `Q_3`, paths and disjoint edges.
    pub fn is_plane_bipartite(&self) -> bool {
        use FamilySpec::*;
        match self {
            Grid { .. } | Path { .. } | NK2 { .. } => true,
            Cycle { n } => n % 2 == 0,
            Cylinder { b, .. } => b % 2 == 0,
            Hypercube { k } => *k <= 3,
            Knn { n } => *n <= 2,
            _ => false,
        }
    }

    /// All members described by a possibly partial spec: missing trailing
    /// parameters range over every feasible value.
    pub fn expand(text: &str) -> Result<Vec<FamilySpec>> {
        if let Ok(spec) = text.parse::<FamilySpec>() {
            return Ok(vec![spec]);
        }
        let bad = || Error::FamilyParse(text.to_string());
        let (name, rest) = text.split_once(':').ok_or_else(bad)?;
        let nums: Vec<usize> = if rest.is_empty() {
            Vec::new()
        } else {
            rest.split(',').map(|t| t.trim().parse().map_err(|_| bad())).collect::<Result<_>>()?
        };
        let out = match (name, nums.as_slice()) {
            ("H", &[n]) => (0..n).map(|k| FamilySpec::H { n, k }).collect(),
            ("HhatJoin", &[n]) => (0..n).map(|k| FamilySpec::HHatJoin { n, k }).collect(),
            ("MatchJoin", &[n]) => (0..n).map(|k| FamilySpec::MatchingJoin { n, k }).collect(),
            ("G4", &[n]) if n >= 2 => (0..=n - 2).map(|k| FamilySpec::G4 { n, k }).collect(),
            ("G5", &[n]) => (0..n)
                .flat_map(|k| (1..=n.saturating_sub(k + 2)).map(move |i| FamilySpec::G5 { n, k, i }))
                .collect(),
            ("G5", &[n, k]) => (1..=n.saturating_sub(k + 2)).map(|i| FamilySpec::G5 { n, k, i }).collect(),
            ("G1", &[n]) => g1_deletion_lists(n).into_iter().map(|parts| FamilySpec::G1 { n, parts }).collect(),
            ("G2", &[n]) => g2_members(n),
            _ => return Err(bad()),
        };
        Ok(out)
    }
}

/// Every multiset of deletable `K_{a,b}` parts for `G1` at side size `n`,
/// each listed in non-increasing order.
pub fn g1_deletion_lists(n: usize) -> Vec<Vec<(usize, usize)>> {
    fn rec(n: usize, used_a: usize, used_b: usize, cur: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        for a in 1..n {
            for b in 1..=n - a {
                if used_a + a > n || used_b + b > n || cur.last().is_some_and(|&last| (a, b) > last) {
                    continue;
                }
                cur.push((a, b));
                rec(n, used_a + a, used_b + b, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(n, 0, 0, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Every `G2` member at side size `n` with `a >= b`: each subset of the cross
/// edges running from one part's `U` side to the other part's `V` side.
fn g2_members(n: usize) -> Vec<FamilySpec> {
    let mut out = Vec::new();
    for b in 1..=n / 2 {
        let a = n - b;
        let forward: Vec<(usize, usize)> = (0..a).flat_map(|x| (a..n).map(move |y| (x, n + y))).collect();
        let backward: Vec<(usize, usize)> = (a..n).flat_map(|x| (0..a).map(move |y| (x, n + y))).collect();
        out.push(FamilySpec::G2 { a, b, cross: Vec::new() });
        for side in [forward, backward] {
            for mask in 1u64..1 << side.len() {
                let cross = (0..side.len()).filter(|p| mask >> p & 1 == 1).map(|p| side[p]).collect();
                out.push(FamilySpec::G2 { a, b, cross });
            }
        }
    }
    out
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use FamilySpec::*;
        match self {
            H { n, k } => write!(f, "H:{n},{k}"),
            HHat { n } => write!(f, "Hhat:{n}"),
            HHatJoin { n, k } => write!(f, "HhatJoin:{n},{k}"),
            MatchingJoin { n, k } => write!(f, "MatchJoin:{n},{k}"),
            G4 { n, k } => write!(f, "G4:{n},{k}"),
            G5 { n, k, i } => write!(f, "G5:{n},{k},{i}"),
            G1 { n, parts } => {
                let p: Vec<String> = parts.iter().map(|(a, b)| format!("{a}x{b}")).collect();
                write!(f, "G1:{n};{}", p.join(","))
            }
            G2 { a, b, cross } => {
                let c: Vec<String> = cross.iter().map(|(x, y)| format!("{x}-{y}")).collect();
                write!(f, "G2:{a},{b};{}", c.join(","))
            }
            Grid { a, b } => write!(f, "grid:{a}x{b}"),
            Torus { a, b } => write!(f, "torus:{a}x{b}"),
            Cylinder { a, b } => write!(f, "cyl:{a}x{b}"),
            Hypercube { k } => write!(f, "Q:{k}"),
            Knn { n } => write!(f, "Knn:{n}"),
            NK2 { n } => write!(f, "nK2:{n}"),
            Path { n } => write!(f, "P:{n}"),
            Cycle { n } => write!(f, "C:{n}"),
            Complete { n } => write!(f, "K:{n}"),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let bad = || Error::FamilyParse(text.to_string());
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
        let list = |t: &str| -> Result<Vec<usize>> { t.split(',').map(num).collect() };
        let pair = |t: &str, sep: char| -> Result<(usize, usize)> {
            let (x, y) = t.split_once(sep).ok_or_else(bad)?;
            Ok((num(x)?, num(y)?))
        };
        let (name, rest) = text.trim().split_once(':').ok_or_else(bad)?;
        use FamilySpec::*;
        let spec = match name {
            "G1" => {
                let (n, parts) = rest.split_once(';').ok_or_else(bad)?;
                let parts = parts.split(',').map(|p| pair(p, 'x')).collect::<Result<Vec<_>>>()?;
                G1 { n: num(n)?, parts }
            }
            "G2" => {
                let (ab, cross) = rest.split_once(';').unwrap_or((rest, ""));
                let (a, b) = pair(ab, ',')?;
                let cross = if cross.is_empty() {
                    Vec::new()
                } else {
                    cross.split(',').map(|c| pair(c, '-')).collect::<Result<Vec<_>>>()?
                };
                G2 { a, b, cross }
            }
            "grid" | "torus" | "cyl" => {
                let (a, b) = pair(rest, 'x')?;
                match name {
                    "grid" => Grid { a, b },
                    "torus" => Torus { a, b },
                    _ => Cylinder { a, b },
                }
            }
            _ => {
                let p = list(rest)?;
                match (name, p.as_slice()) {
                    ("H", &[n, k]) => H { n, k },
                    ("Hhat", &[n]) => HHat { n },
                    ("HhatJoin", &[n, k]) => HHatJoin { n, k },
                    ("MatchJoin", &[n, k]) => MatchingJoin { n, k },
                    ("G4", &[n, k]) => G4 { n, k },
                    ("G5", &[n, k, i]) => G5 { n, k, i },
                    ("Q", &[k]) => Hypercube { k },
                    ("Knn", &[n]) => Knn { n },
                    ("nK2", &[n]) => NK2 { n },
                    ("P", &[n]) => Path { n },
                    ("C", &[n]) => Cycle { n },
                    ("K", &[n]) => Complete { n },
                    _ => return Err(bad()),
                }
            }
        };
        Ok(spec)
    }
}
