//! One executable check per bound, equality case and characterisation, each
//! producing a [`VerdictRecord`].

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bounds::{self, frac, int, Rational, Surd};
use crate::classify::{self, ClassReport};
use crate::error::{Error, Result};
use crate::families::{self, FamilySpec};
use crate::forcing::{
    cycle_packing, forcing_number_by_hitting, max_anti_forcing, spectrum, spectrum_with_packing, ForcingResult,
    Limits, SpectrumReport,
};
use crate::graph::{bipartition_of, members, Bipartition, Edge, Graph};
use crate::graph6;
use crate::iso;
use crate::matching::{allowed_edges, has_perfect_matching, independence_number, is_elementary};

/// Identifier of the statement a record checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TheoremId {
    Parse,
    PmExists,
    Spectrum,
    Range,
    Lemma1_1,
    PackingLeForcing,
    Thm1_4,
    Thm1_5,
    Thm2_1,
    Cor2_2,
    Thm2_3,
    Cor2_4,
    Thm2_5,
    Thm2_8,
    Cor3_1,
    Prop3_2,
    Lemma3_3,
    Thm3_4,
    Cor3_5,
    FLeAf,
    AfLeR,
    AfLeEdges,
    Thm4_2,
    Thm4_3,
    Lemma4_4,
    Thm4_5,
    Lemma4_6,
    Rem4_8,
    Rem4_9,
    Prop4_10,
    Prop5_2,
    Prop5_3,
    Conj5_1,
    Rem3_6,
    PkMinimax,
    KnownValue,
}

impl TheoremId {
    pub const ALL: [TheoremId; 36] = [
        TheoremId::Parse,
        TheoremId::PmExists,
        TheoremId::Spectrum,
        TheoremId::Range,
        TheoremId::Lemma1_1,
        TheoremId::PackingLeForcing,
        TheoremId::Thm1_4,
        TheoremId::Thm1_5,
        TheoremId::Thm2_1,
        TheoremId::Cor2_2,
        TheoremId::Thm2_3,
        TheoremId::Cor2_4,
        TheoremId::Thm2_5,
        TheoremId::Thm2_8,
        TheoremId::Cor3_1,
        TheoremId::Prop3_2,
        TheoremId::Lemma3_3,
        TheoremId::Thm3_4,
        TheoremId::Cor3_5,
        TheoremId::FLeAf,
        TheoremId::AfLeR,
        TheoremId::AfLeEdges,
        TheoremId::Thm4_2,
        TheoremId::Thm4_3,
        TheoremId::Lemma4_4,
        TheoremId::Thm4_5,
        TheoremId::Lemma4_6,
        TheoremId::Rem4_8,
        TheoremId::Rem4_9,
        TheoremId::Prop4_10,
        TheoremId::Prop5_2,
        TheoremId::Prop5_3,
        TheoremId::Conj5_1,
        TheoremId::Rem3_6,
        TheoremId::PkMinimax,
        TheoremId::KnownValue,
    ];

    pub fn as_str(self) -> &'static str {
        use TheoremId::*;
        match self {
            Parse => "PARSE",
            PmExists => "PM_EXISTS",
            Spectrum => "SPECTRUM",
            Range => "RANGE",
            Lemma1_1 => "LEMMA_1_1",
            PackingLeForcing => "PACKING_LE_FORCING",
            Thm1_4 => "THM_1_4",
            Thm1_5 => "THM_1_5",
            Thm2_1 => "THM_2_1",
            Cor2_2 => "COR_2_2",
            Thm2_3 => "THM_2_3",
            Cor2_4 => "COR_2_4",
            Thm2_5 => "THM_2_5",
            Thm2_8 => "THM_2_8",
            Cor3_1 => "COR_3_1",
            Prop3_2 => "PROP_3_2",
            Lemma3_3 => "LEMMA_3_3",
            Thm3_4 => "THM_3_4",
            Cor3_5 => "COR_3_5",
            FLeAf => "F_LE_AF",
            AfLeR => "AF_LE_R",
            AfLeEdges => "AF_LE_EDGES",
            Thm4_2 => "THM_4_2",
            Thm4_3 => "THM_4_3",
            Lemma4_4 => "LEMMA_4_4",
            Thm4_5 => "THM_4_5",
            Lemma4_6 => "LEMMA_4_6",
            Rem4_8 => "REM_4_8",
            Rem4_9 => "REM_4_9",
            Prop4_10 => "PROP_4_10",
            Prop5_2 => "PROP_5_2",
            Prop5_3 => "PROP_5_3",
            Conj5_1 => "CONJ_5_1",
            Rem3_6 => "REM_3_6",
            PkMinimax => "PK_MINIMAX",
            KnownValue => "KNOWN_VALUE",
        }
    }

    pub fn parse(text: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|t| t.as_str() == text)
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for TheoremId {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for TheoremId {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        TheoremId::parse(&text).ok_or_else(|| serde::de::Error::custom(format!("unknown theorem id {text}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Inapplicable,
    Counterexample,
    Aborted,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inapplicable => "inapplicable",
            Status::Counterexample => "counterexample",
            Status::Aborted => "aborted",
        }
    }
}

/// How an equality instance relates to the statement's extremal graphs.
/// `Tight` marks equality in a bound whose equality case is not characterised.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EqualityCase {
    #[serde(rename = "strict")]
    Strict,
    #[serde(rename = "equality_matches_extremal")]
    EqualityMatchesExtremal,
    #[serde(rename = "equality_mismatch")]
    EqualityMismatch,
    #[serde(rename = "tight")]
    Tight,
    #[serde(rename = "n/a")]
    NotApplicable,
}

impl EqualityCase {
    pub fn as_str(self) -> &'static str {
        match self {
            EqualityCase::Strict => "strict",
            EqualityCase::EqualityMatchesExtremal => "equality_matches_extremal",
            EqualityCase::EqualityMismatch => "equality_mismatch",
            EqualityCase::Tight => "tight",
            EqualityCase::NotApplicable => "n/a",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inputs {
    pub n: usize,
    pub e: usize,
    pub f: Option<usize>,
    #[serde(rename = "F")]
    pub big_f: Option<usize>,
    pub delta: usize,
    #[serde(rename = "Af")]
    pub af: Option<usize>,
    pub r: Option<i64>,
    pub connected: bool,
    pub bipartite: bool,
    pub split: bool,
    pub cograph: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub label: String,
    pub matching: Vec<Edge>,
    pub set: Vec<Edge>,
    pub value: usize,
}

/// Everything needed to replay a failing check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reproduction {
    pub graph6: String,
    pub witnesses: Vec<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictRecord {
    pub theorem_id: TheoremId,
    pub graph_id: String,
    pub inputs: Inputs,
    pub bound: Option<String>,
    pub observed: Option<i64>,
    pub status: Status,
    pub equality_case: EqualityCase,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reproduction: Option<Reproduction>,
}

/// Values shared by all checks on one graph.
struct Ctx<'a> {
    g: &'a Graph,
    graph_id: String,
    n: usize,
    e: usize,
    bp: Option<Bipartition>,
    spectrum: SpectrumReport,
    af: Option<Result<ForcingResult>>,
    class: ClassReport,
    inputs: Inputs,
}

impl Ctx<'_> {
    fn f(&self) -> usize {
        self.spectrum.f_min
    }

    fn big_f(&self) -> usize {
        self.spectrum.f_max
    }

    fn ni(&self) -> i128 {
        self.n as i128
    }

    fn ei(&self) -> i128 {
        self.e as i128
    }

    fn record(&self, id: TheoremId) -> RecordBuilder<'_> {
        RecordBuilder {
            ctx: self,
            id,
            bound: None,
            observed: None,
            equality: EqualityCase::NotApplicable,
            detail: None,
        }
    }

    fn witnesses(&self) -> Vec<Witness> {
        let mut out = Vec::new();
        let min = self.spectrum.min_witness();
        out.push(Witness {
            label: "f".into(),
            matching: min.matching.edges().to_vec(),
            set: min.witness.clone(),
            value: min.forcing,
        });
        let max = self.spectrum.max_witness();
        out.push(Witness {
            label: "F".into(),
            matching: max.matching.edges().to_vec(),
            set: max.witness.clone(),
            value: max.forcing,
        });
        if let Some(Ok(af)) = &self.af {
            out.push(Witness {
                label: "Af".into(),
                matching: af.witness_matching.edges().to_vec(),
                set: af.witness_set.clone(),
                value: af.value,
            });
        }
        out
    }
}

struct RecordBuilder<'a> {
    ctx: &'a Ctx<'a>,
    id: TheoremId,
    bound: Option<String>,
    observed: Option<i64>,
    equality: EqualityCase,
    detail: Option<String>,
}

impl RecordBuilder<'_> {
    fn bound(mut self, b: impl fmt::Display) -> Self {
        self.bound = Some(b.to_string());
        self
    }

    fn observed(mut self, o: usize) -> Self {
        self.observed = Some(o as i64);
        self
    }

    fn equality(mut self, eq: EqualityCase) -> Self {
        self.equality = eq;
        self
    }

    fn detail(mut self, d: impl Into<String>) -> Self {
        self.detail = Some(d.into());
        self
    }

    fn status(self, status: Status) -> VerdictRecord {
        let reproduction = (status == Status::Fail).then(|| Reproduction {
            graph6: self.ctx.graph_id.clone(),
            witnesses: self.ctx.witnesses(),
        });
        VerdictRecord {
            theorem_id: self.id,
            graph_id: self.ctx.graph_id.clone(),
            inputs: self.ctx.inputs.clone(),
            bound: self.bound,
            observed: self.observed,
            status,
            equality_case: self.equality,
            detail: self.detail,
            reproduction,
        }
    }

    fn pass_if(self, ok: bool) -> VerdictRecord {
        self.status(if ok { Status::Pass } else { Status::Fail })
    }

    fn inapplicable(self, why: &str) -> VerdictRecord {
        self.detail(why).status(Status::Inapplicable)
    }

    fn aborted(self, err: &Error) -> VerdictRecord {
        self.detail(err.to_string()).status(Status::Aborted)
    }
}

fn bare_record(id: TheoremId, g: &Graph, inputs: Inputs, status: Status, detail: String) -> VerdictRecord {
    VerdictRecord {
        theorem_id: id,
        graph_id: graph6::encode(g),
        inputs,
        bound: None,
        observed: None,
        status,
        equality_case: EqualityCase::NotApplicable,
        detail: Some(detail),
        reproduction: None,
    }
}

fn base_inputs(g: &Graph) -> Inputs {
    Inputs {
        n: g.order() / 2,
        e: g.edge_count(),
        delta: g.min_degree(),
        connected: g.is_connected(),
        bipartite: bipartition_of(g).is_some(),
        split: classify::is_split(g),
        cograph: classify::is_cograph(g),
        r: crate::graph::cyclomatic_number(g).ok(),
        ..Inputs::default()
    }
}

fn classify_equality(equal: bool, extremal: Result<bool>) -> (EqualityCase, Option<Status>) {
    match (equal, extremal) {
        (false, _) => (EqualityCase::Strict, None),
        (true, Ok(true)) => (EqualityCase::EqualityMatchesExtremal, None),
        (true, Ok(false)) => (EqualityCase::EqualityMismatch, Some(Status::Fail)),
        (true, Err(_)) => (EqualityCase::NotApplicable, Some(Status::Aborted)),
    }
}

/// Upper bound check `observed <= bound` whose equality case is exactly `extremal`.
fn upper_with_extremal(
    rb: RecordBuilder<'_>,
    cmp: Ordering,
    extremal: impl FnOnce() -> Result<bool>,
) -> VerdictRecord {
    if cmp == Ordering::Greater {
        return rb.equality(EqualityCase::Strict).status(Status::Fail);
    }
    let equal = cmp == Ordering::Equal;
    let (eq, forced) = classify_equality(equal, if equal { extremal() } else { Ok(false) });
    let rb = rb.equality(eq);
    match forced {
        Some(Status::Aborted) => rb.detail("isomorphism test exceeded its order cap").status(Status::Aborted),
        Some(s) => rb.status(s),
        None => rb.status(Status::Pass),
    }
}

fn tightness(cmp: Ordering) -> EqualityCase {
    if cmp == Ordering::Equal {
        EqualityCase::Tight
    } else {
        EqualityCase::Strict
    }
}

fn is_k2_c4_union(g: &Graph) -> bool {
    g.components().into_iter().all(|c| {
        let size = c.count_ones();
        let edges = g.edge_count_in(c);
        (size == 2 && edges == 1) || (size == 4 && edges == 4 && members(c).all(|v| g.degree(v) == 2))
    })
}

fn is_knn(g: &Graph, n: usize) -> bool {
    bipartition_of(g).is_some_and(|bp| bp.balanced()) && g.edge_count() == n * n && g.is_connected()
}

fn is_nk2(g: &Graph, n: usize) -> bool {
    g.edge_count() == n && (0..g.order()).all(|v| g.degree(v) == 1)
}

/// Equality in the size bound for `F(G) = k` is attained by `nK_2` and `K_{n,n}`.
fn size_bound_equality(g: &Graph, n: usize, equal: bool) -> EqualityCase {
    if !equal {
        EqualityCase::Strict
    } else if is_nk2(g, n) || is_knn(g, n) {
        EqualityCase::EqualityMatchesExtremal
    } else {
        EqualityCase::Tight
    }
}

fn check_range(c: &Ctx) -> VerdictRecord {
    let ok = c.f() <= c.big_f() && c.big_f() < c.n.max(1);
    c.record(TheoremId::Range).bound(format!("0 <= f <= F <= {}", c.n as i64 - 1)).observed(c.big_f()).pass_if(ok)
}

fn check_lemma_1_1(c: &Ctx, limits: &Limits) -> VerdictRecord {
    let rb = c.record(TheoremId::Lemma1_1);
    for row in &c.spectrum.per_matching {
        match forcing_number_by_hitting(c.g, &row.matching, limits) {
            Err(e) => return rb.aborted(&e),
            Ok(h) if h.value != row.forcing || h.witness_set != row.witness => {
                let d = format!("subset search {} vs hitting set {} on {:?}", row.forcing, h.value, row.matching.edges());
                return rb.detail(d).status(Status::Fail);
            }
            Ok(_) => {}
        }
    }
    rb.observed(c.spectrum.per_matching.len()).status(Status::Pass)
}

fn check_packing(c: &Ctx, limits: &Limits) -> VerdictRecord {
    let rb = c.record(TheoremId::PackingLeForcing);
    let mut tight = true;
    for row in &c.spectrum.per_matching {
        match cycle_packing(c.g, &row.matching, limits) {
            Err(e) => return rb.aborted(&e),
            Ok(p) if p > row.forcing => {
                return rb.detail(format!("C = {p} > f = {} on {:?}", row.forcing, row.matching.edges())).status(Status::Fail)
            }
            Ok(p) => tight &= p == row.forcing,
        }
    }
    let eq = if tight { EqualityCase::Tight } else { EqualityCase::Strict };
    rb.equality(eq).status(Status::Pass)
}

fn check_thm_1_4(c: &Ctx) -> VerdictRecord {
    let rb = c.record(TheoremId::Thm1_4);
    let Some(bp) = c.bp else { return rb.inapplicable("not bipartite") };
    if c.f() != 0 {
        return rb.inapplicable("more than one perfect matching");
    }
    let pendant_u = members(bp.side_u).any(|v| c.g.degree(v) == 1);
    let pendant_v = members(bp.side_v).any(|v| c.g.degree(v) == 1);
    let bound = c.n * (c.n + 1) / 2;
    let rb = rb.bound(bound).observed(c.e);
    if !(pendant_u && pendant_v) {
        return rb.detail("no pendant vertex on one side").status(Status::Fail);
    }
    let target = families::make_h(c.n, 0);
    upper_with_extremal(rb, c.e.cmp(&bound), || iso::isomorphic_to_extremal(c.g, &target?))
}

fn check_thm_1_5(c: &Ctx) -> VerdictRecord {
    let rb = c.record(TheoremId::Thm1_5);
    if c.f() != 0 {
        return rb.inapplicable("more than one perfect matching");
    }
    let bound = c.n * c.n;
    let target = families::make_h_hat(c.n);
    upper_with_extremal(rb.bound(bound).observed(c.e), c.e.cmp(&bound), || {
        iso::isomorphic_to_extremal(c.g, &target?)
    })
}

fn check_thm_2_1(c: &Ctx) -> VerdictRecord {
    let k = c.f() as i128;
    let bound = bounds::max_edges_given_f(c.ni(), k);
    let target = families::make_h_hat_join(c.n, c.f());
    upper_with_extremal(c.record(TheoremId::Thm2_1).bound(bound).observed(c.e), c.ei().cmp(&bound), || {
        iso::isomorphic_to_extremal(c.g, &target?)
    })
}

fn check_cor_2_2(c: &Ctx) -> VerdictRecord {
    let rb = c.record(TheoremId::Cor2_2);
    let Some(bound) = bounds::f_lower_general(c.ni(), c.ei()) else {
        return rb.detail("negative radicand").status(Status::Fail);
    };
    // A lower bound: the observed f plays the role of the bound side.
    let cmp = bound.cmp_int(c.f() as i128);
    let target = families::make_h_hat_join(c.n, c.f());
    upper_with_extremal(rb.bound(&bound).observed(c.f()), cmp, || iso::isomorphic_to_extremal(c.g, &target?))
}

fn check_thm_2_3(c: &Ctx) -> VerdictRecord {
    let rb = c.record(TheoremId::Thm2_3);
    if c.bp.is_none() {
        return rb.inapplicable("not bipartite");
    }
    let bound = bounds::max_edges_bipartite_given_f(c.ni(), c.f() as i128);
    let target = families::make_h(c.n, c.f());
    upper_with_extremal(rb.bound(bound).observed(c.e), c.ei().cmp(&bound), || {
        iso::isomorphic_to_extremal(c.g, &target?)
    })
}

fn check_cor_2_4(c: &Ctx) -> VerdictRecord {
    let rb = c.record(TheoremId::Cor2_4);
    if c.bp.is_none() {
        return rb.inapplicable("not bipartite");
    }
    let Some(bound) = bounds::f_lower_bipartite(c.ni(), c.ei()) else {
        return rb.detail("negative radicand").status(Status::Fail);
    };
    let cmp = bound.cmp_int(c.f() as i128);
    let target = families::make_h(c.n, c.f());
    upper_with_extremal(rb.bound(&bound).observed(c.f()), cmp, || iso::isomorphic_to_extremal(c.g, &target?))
}

fn check_thm_2_5(c: &Ctx) -> VerdictRecord {
    let rb = c.record(TheoremId::Thm2_5);
    if c.bp.is_none() {
        return rb.inapplicable("not bipartite");
    }
    let bound = c.g.min_degree() as i64 - 1;
    let cmp = bound.cmp(&(c.f() as i64));
    rb.bound(bound).observed(c.f()).equality(tightness(cmp)).pass_if(cmp != Ordering::Greater)
}

fn check_thm_2_8(c: &Ctx) -> VerdictRecord {
    let rb = c.record(TheoremId::Thm2_8);
    if !(c.inputs.split || c.inputs.cograph) {
        return rb.inapplicable("neither split nor cograph");
    }
    let bound = frac(c.g.min_degree() as i128 - 1, 2);
    let cmp = bound.cmp(&int(c.f() as i128));
    rb.bound(bound).observed(c.f()).equality(tightness(cmp)).pass_if(cmp != Ordering::Greater)
}

fn check_cor_3_1(c: &Ctx) -> VerdictRecord {
    let rb = c.record(TheoremId::Cor3_1);
    if !c.inputs.connected {
        return rb.inapplicable("disconnected");
    }
    let bound = bounds::max_f_upper_connected(c.ni(), c.ei());
    let cmp = int(c.big_f() as i128).cmp(&bound);
    rb.bound(bound).observed(c.big_f()).equality(tightness(cmp)).pass_if(cmp != Ordering::Greater)
}

fn check_prop_3_2(c: &Ctx) -> VerdictRecord {
    let bound = bounds::max_f_upper_edges(c.ni(), c.ei());
    let cmp = int(c.big_f() as i128).cmp(&bound);
    let structure = is_k2_c4_union(c.g);
    let rb = c.record(TheoremId::Prop3_2).bound(bound).observed(c.big_f());
    if cmp == Ordering::Greater {
        return rb.equality(EqualityCase::Strict).status(Status::Fail);
    }
    match (cmp == Ordering::Equal, structure) {
        (true, true) => rb.equality(EqualityCase::EqualityMatchesExtremal).status(Status::Pass),
        (true, false) => rb.equality(EqualityCase::EqualityMismatch).status(Status::Fail),
        (false, true) => rb
            .equality(EqualityCase::Strict)
            .detail("union of 4-cycles and edges without equality")
            .status(Status::Fail),
        (false, false) => rb.equality(EqualityCase::Strict).status(Status::Pass),
    }
}

fn check_lemma_3_3(c: &Ctx) -> VerdictRecord {
    let rb = c.record(TheoremId::Lemma3_3);
    let n = c.n;
    let mut equal_any = false;
    let mut worst: Option<(Rational, usize)> = None;
    for row in &c.spectrum.per_matching {
        let k = row.forcing;
        let best = row.matching.edges().iter().map(|e| c.g.degree(e.u()) + c.g.degree(e.v())).max().unwrap_or(0);
        // best >= 2n/(n-k), compared as best*(n-k) against 2n.
        let lhs = best * (n - k);
        if lhs < 2 * n {
            return rb
                .bound(frac(2 * n as i128, (n - k) as i128))
                .observed(best)
                .detail(format!("matching {:?}", row.matching.edges()))
                .status(Status::Fail);
        }
        if lhs == 2 * n {
            equal_any = true;
            if !n.is_multiple_of(n - k) {
                return rb
                    .bound(frac(2 * n as i128, (n - k) as i128))
                    .observed(best)
                    .equality(EqualityCase::EqualityMismatch)
                    .detail(format!("equality with (n-k) = {} not dividing n", n - k))
                    .status(Status::Fail);
            }
        }
        let slack = Rational::new(lhs as i128, (n - k) as i128) - frac(2 * n as i128, (n - k) as i128);
        if worst.as_ref().is_none_or(|(s, _)| slack < *s) {
            worst = Some((slack, best));
        }
    }
    let (slack, best) = worst.expect("at least one perfect matching");
    let eq = if equal_any { EqualityCase::EqualityMatchesExtremal } else { EqualityCase::Strict };
    rb.bound(format!("slack {slack}")).observed(best).equality(eq).status(Status::Pass)
}

fn check_thm_3_4(c: &Ctx) -> VerdictRecord {
    let k = c.big_f() as i128;
    let bound = bounds::min_edges_given_max_f(c.ni(), k);
    let cmp = int(c.ei()).cmp(&bound);
    let rb = c.record(TheoremId::Thm3_4).bound(bound).observed(c.e);
    rb.equality(size_bound_equality(c.g, c.n, cmp == Ordering::Equal)).pass_if(cmp != Ordering::Less)
}

fn check_cor_3_5(c: &Ctx) -> VerdictRecord {
    let rb = c.record(TheoremId::Cor3_5);
    let Some(bound) = bounds::max_f_upper_sqrt(c.ni(), c.ei()) else {
        return rb.detail("negative radicand").status(Status::Fail);
    };
    let cmp = bound.cmp_int(c.big_f() as i128).reverse();
    let rb = rb.bound(&bound).observed(c.big_f());
    rb.equality(size_bound_equality(c.g, c.n, cmp == Ordering::Equal)).pass_if(cmp != Ordering::Greater)
}

fn with_af(c: &Ctx, id: TheoremId, check: impl FnOnce(RecordBuilder<'_>, usize) -> VerdictRecord) -> VerdictRecord {
    let rb = c.record(id);
    match &c.af {
        None => rb.inapplicable("anti-forcing number not computed"),
        Some(Err(e)) => rb.aborted(e),
        Some(Ok(r)) => check(rb, r.value),
    }
}

fn check_f_le_af(c: &Ctx) -> VerdictRecord {
    with_af(c, TheoremId::FLeAf, |rb, af| {
        let cmp = c.big_f().cmp(&af);
        rb.bound(af).observed(c.big_f()).equality(tightness(cmp)).pass_if(cmp != Ordering::Greater)
    })
}

fn check_af_le_r(c: &Ctx) -> VerdictRecord {
    with_af(c, TheoremId::AfLeR, |rb, af| {
        let Some(r) = c.inputs.r else { return rb.inapplicable("disconnected") };
        let cmp = (af as i64).cmp(&r);
        rb.bound(r).observed(af).equality(tightness(cmp)).pass_if(cmp != Ordering::Greater)
    })
}

fn check_af_le_edges(c: &Ctx) -> VerdictRecord {
    with_af(c, TheoremId::AfLeEdges, |rb, af| {
        if !c.inputs.connected {
            return rb.inapplicable("disconnected");
        }
        let bound = bounds::af_upper_edges(c.ni(), c.ei());
        let cmp = int(af as i128).cmp(&bound);
        rb.bound(bound).observed(af).equality(tightness(cmp)).pass_if(cmp != Ordering::Greater)
    })
}

/// `f = n - 1` exactly on the recognised class.
fn iff_record(rb: RecordBuilder<'_>, value_hit: bool, in_class: bool) -> VerdictRecord {
    let eq = match (value_hit, in_class) {
        (true, true) => EqualityCase::EqualityMatchesExtremal,
        (true, false) => EqualityCase::EqualityMismatch,
        _ => EqualityCase::Strict,
    };
    let rb = rb.equality(eq);
    if value_hit == in_class {
        rb.status(Status::Pass)
    } else {
        rb.detail(format!("value condition {value_hit}, class membership {in_class}")).status(Status::Fail)
    }
}

fn check_thm_4_2(c: &Ctx) -> VerdictRecord {
    let rb = c.record(TheoremId::Thm4_2);
    if c.bp.is_none() {
        return rb.inapplicable("not bipartite");
    }
    let rb = rb.bound(c.n - 1).observed(c.f());
    iff_record(rb, c.f() + 1 == c.n, is_knn(c.g, c.n))
}

fn check_thm_4_3(c: &Ctx) -> VerdictRecord {
    let rb = c.record(TheoremId::Thm4_3).bound(c.n - 1).observed(c.f());
    iff_record(rb, c.f() + 1 == c.n, classify::recognize_f_n1(c.g))
}

fn check_lemma_4_4(c: &Ctx) -> VerdictRecord {
    let rb = c.record(TheoremId::Lemma4_4);
    if c.bp.is_none() {
        return rb.inapplicable("not bipartite");
    }
    // Elementary by definition: the allowed edges span a connected subgraph.
    let allowed: Vec<(usize, usize)> = allowed_edges(c.g).iter().map(|e| (e.u(), e.v())).collect();
    let by_definition = has_perfect_matching(c.g)
        && Graph::new(c.g.order(), &allowed).map(|a| a.is_connected()).unwrap_or(false);
    rb.pass_if(by_definition == is_elementary(c.g))
}

fn check_thm_4_5(c: &Ctx) -> VerdictRecord {
    let rb = c.record(TheoremId::Thm4_5);
    if c.bp.is_none() {
        return rb.inapplicable("not bipartite");
    }
    if c.n < 2 {
        return rb.inapplicable("n < 2");
    }
    let rb = rb.bound(c.n - 2).observed(c.f());
    iff_record(rb, c.f() + 2 == c.n, c.class.g1_member || c.class.g2_member)
}

fn check_lemma_4_6(c: &Ctx) -> VerdictRecord {
    let rb = c.record(TheoremId::Lemma4_6);
    if c.bp.is_none() {
        return rb.inapplicable("not bipartite");
    }
    let alpha = independence_number(c.g);
    rb.bound(c.n).observed(alpha).pass_if(alpha == c.n)
}

fn check_rem_4_8(c: &Ctx) -> VerdictRecord {
    let rb = c.record(TheoremId::Rem4_8);
    if c.bp.is_none() {
        return rb.inapplicable("not bipartite");
    }
    if c.n < 2 {
        return rb.inapplicable("n < 2");
    }
    let all = c.f() == c.big_f() && c.f() + 2 == c.n;
    rb.bound(c.n - 2).observed(c.big_f()).pass_if((c.f() + 2 == c.n) == all)
}

fn check_rem_4_9(c: &Ctx) -> VerdictRecord {
    let rb = c.record(TheoremId::Rem4_9);
    if !(c.class.g1_member || c.class.g2_member) {
        return rb.inapplicable("not a G1 or G2 member");
    }
    let comps = c.g.components();
    let two_complete = comps.len() == 2
        && comps.iter().all(|&comp| {
            c.g.induced(comp).ok().and_then(|h| bipartition_of(&h).map(|bp| (h, bp))).is_some_and(|(h, bp)| {
                let (a, b) = (bp.side_u.count_ones() as usize, bp.side_v.count_ones() as usize);
                a == b && h.edge_count() == a * b
            })
        });
    rb.observed(comps.len()).pass_if(!c.inputs.connected == two_complete)
}

fn check_prop_4_10(c: &Ctx) -> VerdictRecord {
    let rb = c.record(TheoremId::Prop4_10);
    let Some((_, sizes)) = classify::g1_witness(c.g) else {
        return rb.inapplicable("not a G1 member");
    };
    let small = sizes.iter().all(|&(a, b)| a + b < c.n);
    rb.pass_if(c.class.is_elementary == small)
}

/// `F <= (ne - n^2)/e`, i.e. `e(n - F) >= n^2`.
fn conjecture_holds(n: usize, e: usize, big_f: usize) -> bool {
    e as i128 * (n as i128 - big_f as i128) >= (n * n) as i128
}

fn check_prop_5_2(c: &Ctx) -> VerdictRecord {
    let rb = c.record(TheoremId::Prop5_2);
    if 2 * c.big_f() > c.n {
        return rb.inapplicable("F > n/2");
    }
    rb.bound(frac(c.ni(), 2)).observed(c.big_f()).pass_if(conjecture_holds(c.n, c.e, c.big_f()))
}

fn check_prop_5_3(c: &Ctx) -> VerdictRecord {
    let rb = c.record(TheoremId::Prop5_3);
    if !(c.big_f() + 1 == c.n || c.big_f() + 2 == c.n) {
        return rb.inapplicable("F not in {n-1, n-2}");
    }
    rb.observed(c.big_f()).pass_if(conjecture_holds(c.n, c.e, c.big_f()))
}

/// The conjecture record for given `n`, `e`, `F`; exposed so that the
/// counterexample path can be exercised with fabricated values.
pub fn conjecture_record(graph_id: &str, inputs: Inputs) -> VerdictRecord {
    let big_f = inputs.big_f.expect("F is required");
    let (n, e) = (inputs.n, inputs.e);
    let bound = bounds::max_f_upper_conjectured(n as i128, e as i128);
    let holds = conjecture_holds(n, e, big_f);
    let cmp = int(big_f as i128).cmp(&bound);
    VerdictRecord {
        theorem_id: TheoremId::Conj5_1,
        graph_id: graph_id.to_string(),
        inputs,
        bound: Some(bound.to_string()),
        observed: Some(big_f as i64),
        status: if holds { Status::Pass } else { Status::Counterexample },
        equality_case: tightness(cmp),
        detail: None,
        reproduction: None,
    }
}

fn check_conj_5_1(c: &Ctx) -> VerdictRecord {
    let mut r = conjecture_record(&c.graph_id, c.inputs.clone());
    if r.status == Status::Counterexample {
        r.reproduction = Some(Reproduction {
            graph6: c.graph_id.clone(),
            witnesses: c.witnesses(),
        });
    }
    r
}

/// Which optional computations [`verify_graph_with`] performs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub anti_forcing: bool,
    pub cycle_checks: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            anti_forcing: true,
            cycle_checks: true,
        }
    }
}

pub fn verify_graph(g: &Graph, limits: &Limits) -> Vec<VerdictRecord> {
    verify_graph_with(g, limits, VerifyOptions::default())
}

/// Every applicable check on `g`, in the fixed [`TheoremId`] order.
pub fn verify_graph_with(g: &Graph, limits: &Limits, options: VerifyOptions) -> Vec<VerdictRecord> {
    let mut inputs = base_inputs(g);
    if g.order() % 2 == 1 || !has_perfect_matching(g) {
        return vec![bare_record(
            TheoremId::PmExists,
            g,
            inputs,
            Status::Inapplicable,
            "no perfect matching".into(),
        )];
    }
    let spectrum = match spectrum(g, limits) {
        Ok(s) => s,
        Err(e) => return vec![bare_record(TheoremId::Spectrum, g, inputs, Status::Aborted, e.to_string())],
    };
    let af = options.anti_forcing.then(|| max_anti_forcing(g, limits));
    inputs.f = Some(spectrum.f_min);
    inputs.big_f = Some(spectrum.f_max);
    inputs.af = af.as_ref().and_then(|r| r.as_ref().ok()).map(|r| r.value);
    let ctx = Ctx {
        g,
        graph_id: graph6::encode(g),
        n: g.order() / 2,
        e: g.edge_count(),
        bp: bipartition_of(g),
        spectrum,
        af,
        class: classify::classify(g),
        inputs,
    };
    let c = &ctx;
    let mut out = vec![check_range(c)];
    if options.cycle_checks {
        out.push(check_lemma_1_1(c, limits));
        out.push(check_packing(c, limits));
    }
    out.extend([
        check_thm_1_4(c),
        check_thm_1_5(c),
        check_thm_2_1(c),
        check_cor_2_2(c),
        check_thm_2_3(c),
        check_cor_2_4(c),
        check_thm_2_5(c),
        check_thm_2_8(c),
        check_cor_3_1(c),
        check_prop_3_2(c),
        check_lemma_3_3(c),
        check_thm_3_4(c),
        check_cor_3_5(c),
        check_f_le_af(c),
        check_af_le_r(c),
        check_af_le_edges(c),
        check_thm_4_2(c),
        check_thm_4_3(c),
        check_lemma_4_4(c),
        check_thm_4_5(c),
        check_lemma_4_6(c),
        check_rem_4_8(c),
        check_rem_4_9(c),
        check_prop_4_10(c),
        check_prop_5_2(c),
        check_prop_5_3(c),
        check_conj_5_1(c),
    ]);
    out
}

/// The equality-case check of one size bound, computing only the spectrum.
pub fn verify_equality_case(theorem: TheoremId, g: &Graph, limits: &Limits) -> Result<VerdictRecord> {
    let mut inputs = base_inputs(g);
    let spectrum = spectrum(g, limits)?;
    inputs.f = Some(spectrum.f_min);
    inputs.big_f = Some(spectrum.f_max);
    let ctx = Ctx {
        g,
        graph_id: graph6::encode(g),
        n: g.order() / 2,
        e: g.edge_count(),
        bp: bipartition_of(g),
        spectrum,
        af: None,
        class: classify::classify(g),
        inputs,
    };
    let c = &ctx;
    Ok(match theorem {
        TheoremId::Thm1_4 => check_thm_1_4(c),
        TheoremId::Thm1_5 => check_thm_1_5(c),
        TheoremId::Thm2_1 => check_thm_2_1(c),
        TheoremId::Cor2_2 => check_cor_2_2(c),
        TheoremId::Thm2_3 => check_thm_2_3(c),
        TheoremId::Cor2_4 => check_cor_2_4(c),
        TheoremId::Prop3_2 => check_prop_3_2(c),
        TheoremId::Thm3_4 => check_thm_3_4(c),
        TheoremId::Cor3_5 => check_cor_3_5(c),
        other => {
            return Err(Error::InvalidParameters {
                family: other.to_string(),
                reason: "no equality case to classify".into(),
            })
        }
    })
}

/// `f(G, M) = C(G, M)` for every perfect matching; only meaningful for graphs
/// constructed as plane bipartite.
pub fn verify_plane_bipartite(spec: &FamilySpec, limits: &Limits) -> Result<VerdictRecord> {
    let g = spec.build()?;
    let mut inputs = base_inputs(&g);
    let make = |inputs: Inputs, status: Status, detail: String| VerdictRecord {
        theorem_id: TheoremId::PkMinimax,
        graph_id: graph6::encode(&g),
        inputs,
        bound: None,
        observed: None,
        status,
        equality_case: EqualityCase::NotApplicable,
        detail: Some(detail),
        reproduction: None,
    };
    if !spec.is_plane_bipartite() {
        return Ok(make(inputs, Status::Inapplicable, format!("{spec} is not constructed as plane bipartite")));
    }
    let s = match spectrum_with_packing(&g, limits) {
        Ok(s) => s,
        Err(e) => return Ok(make(inputs, Status::Aborted, e.to_string())),
    };
    inputs.f = Some(s.f_min);
    inputs.big_f = Some(s.f_max);
    let c_values = s.c_values.as_ref().expect("packing requested");
    let bad = s.per_matching.iter().zip(c_values).find(|(row, &c)| row.forcing != c);
    let mut r = make(inputs, Status::Pass, spec.to_string());
    r.observed = Some(s.per_matching.len() as i64);
    r.equality_case = EqualityCase::EqualityMatchesExtremal;
    if let Some((row, c)) = bad {
        r.status = Status::Fail;
        r.equality_case = EqualityCase::EqualityMismatch;
        r.detail = Some(format!("{spec}: f = {} but C = {c} on {:?}", row.forcing, row.matching.edges()));
        r.reproduction = Some(Reproduction {
            graph6: r.graph_id.clone(),
            witnesses: vec![Witness {
                label: "f".into(),
                matching: row.matching.edges().to_vec(),
                set: row.witness.clone(),
                value: row.forcing,
            }],
        });
    }
    Ok(r)
}

/// Which spectrum end a known value refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Which {
    Min,
    Max,
}

/// `(spec, quantity, value)` for every known closed-form value that fits in 32 vertices.
pub fn known_value_table() -> Vec<(FamilySpec, Which, usize)> {
    use FamilySpec::*;
    use Which::*;
    vec![
        (Grid { a: 4, b: 4 }, Min, 2),
        (Grid { a: 4, b: 4 }, Max, 4),
        (Torus { a: 4, b: 4 }, Min, 4),
        (Torus { a: 4, b: 4 }, Max, 4),
        (Torus { a: 4, b: 6 }, Min, 4),
        (Torus { a: 4, b: 6 }, Max, 6),
        (Cylinder { a: 2, b: 4 }, Max, 2),
        (Cylinder { a: 2, b: 6 }, Max, 3),
        (Cylinder { a: 4, b: 4 }, Max, 4),
        (Cylinder { a: 3, b: 4 }, Max, 3),
        (Cylinder { a: 3, b: 6 }, Max, 4),
        (Cylinder { a: 2, b: 3 }, Max, 2),
        (Cylinder { a: 2, b: 5 }, Max, 3),
        (Cylinder { a: 4, b: 3 }, Max, 4),
        (Hypercube { k: 2 }, Min, 1),
        (Hypercube { k: 3 }, Min, 2),
        (Hypercube { k: 4 }, Min, 4),
    ]
}

/// Spectra of the known-value graphs compared with their closed forms.
pub fn verify_known_values(limits: &Limits) -> Vec<VerdictRecord> {
    use rayon::prelude::*;
    let table = known_value_table();
    let mut specs: Vec<FamilySpec> = table.iter().map(|(s, _, _)| s.clone()).collect();
    specs.dedup();
    let spectra: Vec<(FamilySpec, Result<(Graph, SpectrumReport)>)> = specs
        .into_par_iter()
        .map(|s| {
            let r = s.build().and_then(|g| spectrum(&g, limits).map(|sp| (g, sp)));
            (s, r)
        })
        .collect();
    table
        .into_iter()
        .map(|(spec, which, expected)| {
            let (_, result) = spectra.iter().find(|(s, _)| *s == spec).expect("computed");
            let label = format!("{spec} {}", if which == Which::Min { "f" } else { "F" });
            match result {
                Err(e) => VerdictRecord {
                    theorem_id: TheoremId::KnownValue,
                    graph_id: spec.build().map(|g| graph6::encode(&g)).unwrap_or_default(),
                    inputs: Inputs::default(),
                    bound: Some(expected.to_string()),
                    observed: None,
                    status: Status::Aborted,
                    equality_case: EqualityCase::NotApplicable,
                    detail: Some(format!("{label}: {e}")),
                    reproduction: None,
                },
                Ok((g, sp)) => {
                    let mut inputs = base_inputs(g);
                    inputs.f = Some(sp.f_min);
                    inputs.big_f = Some(sp.f_max);
                    let observed = if which == Which::Min { sp.f_min } else { sp.f_max };
                    let ok = observed == expected;
                    VerdictRecord {
                        theorem_id: TheoremId::KnownValue,
                        graph_id: graph6::encode(g),
                        inputs,
                        bound: Some(expected.to_string()),
                        observed: Some(observed as i64),
                        status: if ok { Status::Pass } else { Status::Fail },
                        equality_case: if ok { EqualityCase::EqualityMatchesExtremal } else { EqualityCase::EqualityMismatch },
                        detail: Some(label),
                        reproduction: None,
                    }
                }
            }
        })
        .collect()
}

/// The size-bound upper estimate on `F` is below `(e - n)/2` once `3e > 7n - 2`, and
/// below `e - 2n + 1` once `e > 2n - 1 + sqrt(2n^2 - 2n)/2`. One record per `n` and
/// claim over the sampled sizes, using exact arithmetic.
pub fn verify_crossover_remark(n_range: std::ops::RangeInclusive<usize>, e_samples: &[usize]) -> Vec<VerdictRecord> {
    let mut out = Vec::new();
    for n in n_range {
        let ni = n as i128;
        let threshold = Surd::new(int(2 * ni - 1), frac(1, 2), 2 * ni * ni - 2 * ni).expect("non-negative");
        for claim in 0..2 {
            let mut checked = 0usize;
            let mut violation = None;
            for &e in e_samples {
                let ei = e as i128;
                let applies = if claim == 0 { 3 * ei > 7 * ni - 2 } else { threshold.cmp_int(ei) == Ordering::Less };
                let Some(cor) = bounds::max_f_upper_sqrt(ni, ei) else { continue };
                if !applies {
                    continue;
                }
                checked += 1;
                let other = if claim == 0 { frac(ei - ni, 2) } else { int(ei - 2 * ni + 1) };
                if cor.cmp_rational(other) != Ordering::Less && violation.is_none() {
                    violation = Some(format!("n={n}, e={e}: {cor} is not below {other}"));
                }
            }
            let what = if claim == 0 { "(e-n)/2" } else { "e-2n+1" };
            out.push(VerdictRecord {
                theorem_id: TheoremId::Rem3_6,
                graph_id: format!("n={n}"),
                inputs: Inputs {
                    n,
                    ..Inputs::default()
                },
                bound: Some(what.to_string()),
                observed: Some(checked as i64),
                status: if violation.is_some() { Status::Fail } else { Status::Pass },
                equality_case: EqualityCase::NotApplicable,
                detail: violation.or(Some(format!("{checked} sizes above the crossover checked against {what}"))),
                reproduction: None,
            });
        }
    }
    out
}
