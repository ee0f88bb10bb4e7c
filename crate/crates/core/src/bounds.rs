//! Closed-form bounds on `f(G)`, `F(G)` and `Af(G)`, evaluated exactly.
//!
//! Square-root bounds are kept as `a + b·√r` and compared against rationals by
//! sign analysis and squaring, so equality cases are decided without rounding.

use std::cmp::Ordering;
use std::fmt;

use num_rational::Ratio;
use num_traits::Signed;
use serde::{Serialize, Serializer};

use crate::classify;
use crate::graph::{bipartition_of, Graph};

pub type Rational = Ratio<i128>;

pub fn int(x: i128) -> Rational {
    Rational::from_integer(x)
}

pub fn frac(num: i128, den: i128) -> Rational {
    Rational::new(num, den)
}

/// The real number `rational + coefficient * sqrt(radicand)`, `radicand >= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Surd {
    pub rational: Rational,
    pub coefficient: Rational,
    pub radicand: i128,
}

fn isqrt_exact(x: i128) -> Option<i128> {
    if x < 0 {
        return None;
    }
    let mut r = (x as f64).sqrt() as i128;
    while r * r > x {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= x {
        r += 1;
    }
    (r * r == x).then_some(r)
}

impl Surd {
    pub fn new(rational: Rational, coefficient: Rational, radicand: i128) -> Option<Self> {
        if radicand < 0 {
            return None;
        }
        let s = Surd {
            rational,
            coefficient,
            radicand,
        };
        Some(s.simplified())
    }

    pub fn from_rational(r: Rational) -> Self {
        Surd {
            rational: r,
            coefficient: int(0),
            radicand: 0,
        }
    }

    fn simplified(self) -> Self {
        if self.coefficient == int(0) || self.radicand == 0 {
            return Surd::from_rational(self.rational);
        }
        match isqrt_exact(self.radicand) {
            Some(root) => Surd::from_rational(self.rational + self.coefficient * int(root)),
            None => self,
        }
    }

    pub fn as_rational(&self) -> Option<Rational> {
        (self.coefficient == int(0)).then_some(self.rational)
    }

    /// Exact comparison of `self` with `x`.
    pub fn cmp_rational(&self, x: Rational) -> Ordering {
        // self - x = coefficient*sqrt(radicand) - d
        let d = x - self.rational;
        let zero = int(0);
        if self.coefficient == zero || self.radicand == 0 {
            return zero.cmp(&d);
        }
        let root_sq = self.coefficient * self.coefficient * int(self.radicand);
        let d_sq = d * d;
        if self.coefficient > zero {
            if d <= zero {
                Ordering::Greater
            } else {
                root_sq.cmp(&d_sq)
            }
        } else if d >= zero {
            Ordering::Less
        } else {
            d_sq.cmp(&root_sq)
        }
    }

    pub fn cmp_int(&self, x: i128) -> Ordering {
        self.cmp_rational(int(x))
    }

    pub fn approx(&self) -> f64 {
        let r = |q: Rational| *q.numer() as f64 / *q.denom() as f64;
        r(self.rational) + r(self.coefficient) * (self.radicand as f64).sqrt()
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coefficient == int(0) {
            return write!(f, "{}", self.rational);
        }
        if self.rational != int(0) {
            write!(f, "{} ", self.rational)?;
            if self.coefficient < int(0) {
                write!(f, "- ")?;
            } else {
                write!(f, "+ ")?;
            }
            write!(f, "{}*sqrt({})", self.coefficient.abs(), self.radicand)
        } else {
            write!(f, "{}*sqrt({})", self.coefficient, self.radicand)
        }
    }
}

impl Serialize for Surd {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("Surd", 2)?;
        st.serialize_field("expr", &self.to_string())?;
        st.serialize_field("approx", &self.approx())?;
        st.end()
    }
}

// Each bound below is a function of n = |V|/2, e = |E| (and k where stated).

/// Largest size of an order-2n graph with `f(G) = k`.
pub fn max_edges_given_f(n: i128, k: i128) -> i128 {
    n * n + 2 * n * k - k * k - k
}

/// Largest size of an order-2n bipartite graph with `f(G) = k`.
pub fn max_edges_bipartite_given_f(n: i128, k: i128) -> i128 {
    (n - k) * (n + k + 1) / 2 + n * k
}

/// Smallest size of an order-2n graph with `F(G) = k`, `k < n`.
pub fn min_edges_given_max_f(n: i128, k: i128) -> Rational {
    frac(n * (n + 1), n - k) - int(k + 1)
}

/// Lower bound `n - 1/2 - sqrt(2n^2 - n - e + 1/4)` on `f(G)`.
pub fn f_lower_general(n: i128, e: i128) -> Option<Surd> {
    Surd::new(frac(2 * n - 1, 2), frac(-1, 2), 8 * n * n - 4 * n - 4 * e + 1)
}

/// Lower bound `n - 1/2 - sqrt(2n^2 - 2e + 1/4)` on `f(G)` for bipartite graphs.
pub fn f_lower_bipartite(n: i128, e: i128) -> Option<Surd> {
    Surd::new(frac(2 * n - 1, 2), frac(-1, 2), 8 * n * n - 8 * e + 1)
}

/// Upper bound `(e - n)/2` on `F(G)`.
pub fn max_f_upper_edges(n: i128, e: i128) -> Rational {
    frac(e - n, 2)
}

/// Piecewise anti-forcing-derived upper bound on `F(G)` for connected graphs.
pub fn max_f_upper_connected(n: i128, e: i128) -> Rational {
    if e >= 3 * n - 2 {
        frac(e - n, 2)
    } else {
        int(e - 2 * n + 1)
    }
}

/// Upper bound `sqrt(e^2 + 2(n+1)e - 3n^2 - 2n + 1)/2 - (e + 1 - n)/2` on `F(G)`.
pub fn max_f_upper_sqrt(n: i128, e: i128) -> Option<Surd> {
    Surd::new(frac(n - e - 1, 2), frac(1, 2), e * e + 2 * (n + 1) * e - 3 * n * n - 2 * n + 1)
}

/// Conjectured upper bound `(ne - n^2)/e` on `F(G)`.
pub fn max_f_upper_conjectured(n: i128, e: i128) -> Rational {
    frac(n * e - n * n, e)
}

/// `Af(G) <= (2|E| - |V|)/4`.
pub fn af_upper_edges(n: i128, e: i128) -> Rational {
    frac(2 * e - 2 * n, 4)
}

/// Every closed-form bound for one graph, with applicability encoded as `Option`.
#[derive(Clone, Debug, Serialize)]
pub struct BoundValues {
    pub n: i128,
    pub edges: i128,
    pub min_degree: i128,
    pub bipartite: bool,
    pub connected: bool,
    pub split_or_cograph: bool,
    pub f_lower_general: Option<Surd>,
    pub f_lower_bipartite: Option<Surd>,
    pub f_lower_degree_bipartite: Option<Surd>,
    pub f_lower_degree_split_cograph: Option<Surd>,
    pub max_f_upper_edges: Surd,
    pub max_f_upper_connected: Option<Surd>,
    pub max_f_upper_sqrt: Option<Surd>,
    pub max_f_upper_conjectured: Option<Surd>,
    pub af_upper_cyclomatic: Option<Surd>,
    pub af_upper_edges: Option<Surd>,
}

/// Evaluates all bounds; `g` should have even order and at least one edge.
pub fn bound_values(g: &Graph) -> BoundValues {
    let n = g.order() as i128 / 2;
    let e = g.edge_count() as i128;
    let delta = g.min_degree() as i128;
    let bipartite = bipartition_of(g).is_some();
    let connected = g.is_connected();
    let split_or_cograph = classify::is_split(g) || classify::is_cograph(g);
    let r = Surd::from_rational;
    BoundValues {
        n,
        edges: e,
        min_degree: delta,
        bipartite,
        connected,
        split_or_cograph,
        f_lower_general: f_lower_general(n, e),
        f_lower_bipartite: if bipartite { f_lower_bipartite(n, e) } else { None },
        f_lower_degree_bipartite: bipartite.then(|| r(int(delta - 1))),
        f_lower_degree_split_cograph: split_or_cograph.then(|| r(frac(delta - 1, 2))),
        max_f_upper_edges: r(max_f_upper_edges(n, e)),
        max_f_upper_connected: connected.then(|| r(max_f_upper_connected(n, e))),
        max_f_upper_sqrt: max_f_upper_sqrt(n, e),
        max_f_upper_conjectured: (e > 0).then(|| r(max_f_upper_conjectured(n, e))),
        af_upper_cyclomatic: connected.then(|| r(int(e - 2 * n + 1))),
        af_upper_edges: connected.then(|| r(af_upper_edges(n, e))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn surd_comparisons() {
        // 1 + sqrt(2) vs 2 and 3
        let s = Surd::new(int(1), int(1), 2).unwrap();
        assert_eq!(s.cmp_int(2), Ordering::Greater);
        assert_eq!(s.cmp_int(3), Ordering::Less);
        // 3 - sqrt(2) vs 1 and 2
        let t = Surd::new(int(3), int(-1), 2).unwrap();
        assert_eq!(t.cmp_int(1), Ordering::Greater);
        assert_eq!(t.cmp_int(2), Ordering::Less);
        // perfect squares fold
        let u = Surd::new(frac(5, 2), frac(-1, 2), 1).unwrap();
        assert_eq!(u.as_rational(), Some(int(2)));
        assert_eq!(u.cmp_int(2), Ordering::Equal);
        assert!(Surd::new(int(0), int(1), -1).is_none());
        assert_eq!(Surd::new(int(0), int(-1), 3).unwrap().cmp_int(0), Ordering::Less);
    }

    #[test]
    fn surd_matches_float_on_grid() {
        for a in -6i128..=6 {
            for b in [-3i128, -1, 1, 2] {
                for rad in [2i128, 3, 5, 7, 10] {
                    let s = Surd::new(frac(a, 2), frac(b, 3), rad).unwrap();
                    for x in -10i128..=10 {
                        let expected = s.approx().partial_cmp(&(x as f64)).unwrap();
                        assert_eq!(s.cmp_int(x), expected, "{s} vs {x}");
                    }
                }
            }
        }
    }

    #[test]
    fn closed_form_examples() {
        // K_{3,3}: bipartite lower bound is exactly 2.
        let k33 = Graph::complete_bipartite(3, 3).unwrap();
        let b = bound_values(&k33);
        assert_eq!(b.f_lower_bipartite.unwrap().as_rational(), Some(int(2)));
        // nK2, n = 4: (e - n)/2 = 0.
        let b = bound_values(&Graph::matching_graph(4).unwrap());
        assert_eq!(b.max_f_upper_edges.as_rational(), Some(int(0)));
        assert!(b.max_f_upper_connected.is_none());
        // K_{4,4}: conjectured bound is 3 = n - 1.
        let b = bound_values(&Graph::complete_bipartite(4, 4).unwrap());
        assert_eq!(b.max_f_upper_conjectured.unwrap().as_rational(), Some(int(3)));
    }

    #[test]
    fn extremal_edge_counts() {
        assert_eq!(max_edges_given_f(4, 1), 22);
        assert_eq!(max_edges_bipartite_given_f(6, 2), 30);
        assert_eq!(max_edges_bipartite_given_f(5, 0), 15);
        assert_eq!(min_edges_given_max_f(3, 2), int(9));
        assert_eq!(min_edges_given_max_f(3, 0), int(3));
    }

    #[test]
    fn join_family_attains_general_bound() {
        let g = families::make_h_hat_join(4, 1).unwrap();
        let b = f_lower_general(4, g.edge_count() as i128).unwrap();
        assert_eq!(b.cmp_int(1), Ordering::Equal);
    }

    #[test]
    fn sqrt_bound_at_k22() {
        // e = n^2 with n = 2: bound is exactly n - 1.
        assert_eq!(max_f_upper_sqrt(2, 4).unwrap().as_rational(), Some(int(1)));
    }
}
