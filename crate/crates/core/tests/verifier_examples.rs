use forcing_core::families::{make_g2_member, make_h, make_h_hat, FamilySpec};
use forcing_core::forcing::spectrum;
use forcing_core::verifier::{
    verify_crossover_remark, verify_equality_case, verify_graph, verify_known_values, EqualityCase, Status, TheoremId,
    VerdictRecord,
};
use forcing_core::{graph6, Graph, Limits};

fn record(records: &[VerdictRecord], id: TheoremId) -> &VerdictRecord {
    records.iter().find(|r| r.theorem_id == id).unwrap_or_else(|| panic!("no {id} record"))
}

fn build(text: &str) -> Graph {
    text.parse::<FamilySpec>().unwrap().build().unwrap()
}

#[test]
fn k33_reaches_the_size_bound_for_f_max() {
    let records = verify_graph(&Graph::complete_bipartite(3, 3).unwrap(), &Limits::default());
    let r = record(&records, TheoremId::Thm3_4);
    assert_eq!(r.inputs.e, 9);
    assert_eq!(r.inputs.big_f, Some(2));
    assert_eq!(r.equality_case, EqualityCase::EqualityMatchesExtremal);
}

#[test]
fn h62_is_the_bipartite_extremal_graph() {
    let records = verify_graph(&make_h(6, 2).unwrap(), &Limits::default());
    let r = record(&records, TheoremId::Thm2_3);
    assert_eq!((r.status, r.equality_case), (Status::Pass, EqualityCase::EqualityMatchesExtremal));
    assert_eq!(r.observed, Some(30));
}

#[test]
fn two_four_cycles_attain_the_packing_bound() {
    let c4 = Graph::cycle(4).unwrap();
    let records = verify_graph(&c4.disjoint_union(&c4).unwrap(), &Limits::default());
    let r = record(&records, TheoremId::Prop3_2);
    assert_eq!(r.equality_case, EqualityCase::EqualityMatchesExtremal);
    assert_eq!(r.inputs.big_f, Some(2));
}

#[test]
fn c5_has_a_single_inapplicable_record() {
    let records = verify_graph(&Graph::cycle(5).unwrap(), &Limits::default());
    assert_eq!(records.len(), 1);
    assert_eq!((records[0].theorem_id, records[0].status), (TheoremId::PmExists, Status::Inapplicable));
}

#[test]
fn equality_cases_match_named_graphs() {
    let lim = Limits::default();
    // Relabelled H_{4,0}: unique PM and n(n+1)/2 edges.
    let g = make_h(4, 0).unwrap().permuted(&[6, 2, 5, 0, 7, 1, 3, 4]);
    assert_eq!(g.edge_count(), 10);
    let r = verify_equality_case(TheoremId::Thm1_4, &g, &lim).unwrap();
    assert_eq!(r.equality_case, EqualityCase::EqualityMatchesExtremal);
    let g = make_h_hat(3).unwrap().permuted(&[5, 4, 3, 2, 1, 0]);
    let r = verify_equality_case(TheoremId::Thm1_5, &g, &lim).unwrap();
    assert_eq!(r.equality_case, EqualityCase::EqualityMatchesExtremal);
    let r = verify_equality_case(TheoremId::Thm2_3, &make_h(3, 1).unwrap(), &lim).unwrap();
    assert_eq!((r.observed, r.equality_case), (Some(8), EqualityCase::EqualityMatchesExtremal));
    let r = verify_equality_case(TheoremId::Thm2_1, &build("HhatJoin:5,2"), &lim).unwrap();
    assert_eq!(r.equality_case, EqualityCase::EqualityMatchesExtremal);
}

#[test]
fn large_equality_instances_are_decided_structurally() {
    // 24 and 32 vertices: beyond the brute-force cap.
    let lim = Limits::default();
    let g = build("HhatJoin:12,0");
    let r = verify_equality_case(TheoremId::Thm1_5, &g.permuted(&(0..24).rev().collect::<Vec<_>>()), &lim).unwrap();
    assert_eq!(r.equality_case, EqualityCase::EqualityMatchesExtremal);
    let r = verify_equality_case(TheoremId::Thm1_4, &make_h(16, 0).unwrap(), &lim).unwrap();
    assert_eq!(r.equality_case, EqualityCase::EqualityMatchesExtremal);
}

#[test]
fn known_values_examples() {
    let records = verify_known_values(&Limits::default());
    assert_eq!(records.len(), 17);
    assert!(records.iter().all(|r| r.status == Status::Pass), "{records:#?}");
    let s = spectrum(&build("grid:4x4"), &Limits::default()).unwrap();
    assert_eq!((s.f_min, s.f_max), (2, 4));
    let s = spectrum(&build("torus:4x4"), &Limits::default()).unwrap();
    assert_eq!((s.f_min, s.f_max), (4, 4));
    assert_eq!(spectrum(&build("Q:3"), &Limits::default()).unwrap().f_min, 2);
}

#[test]
fn crossover_grid() {
    let samples: Vec<usize> = (1..=256).collect();
    let records = verify_crossover_remark(2..=16, &samples);
    assert_eq!(records.len(), 30);
    assert!(records.iter().all(|r| r.status == Status::Pass));
}

#[test]
fn g2_members_and_complete_bipartite_stream() {
    for spec in FamilySpec::expand("G2:3").unwrap() {
        let records = verify_graph(&spec.build().unwrap(), &Limits::default());
        assert_eq!(record(&records, TheoremId::Thm4_5).status, Status::Pass, "{spec}");
    }
    let g = make_g2_member((2, 1), &[]).unwrap();
    assert_eq!(record(&verify_graph(&g, &Limits::default()), TheoremId::Rem4_9).status, Status::Pass);
    for n in 2..=4 {
        let records = verify_graph(&Graph::complete_bipartite(n, n).unwrap(), &Limits::default());
        let r = record(&records, TheoremId::Thm4_2);
        assert_eq!((r.status, r.equality_case), (Status::Pass, EqualityCase::EqualityMatchesExtremal));
    }
}

#[test]
fn fail_records_carry_reproduction() {
    // Every record of a clean graph is free of reproduction payloads.
    let g = graph6::decode("EN~w").unwrap();
    let records = verify_graph(&g, &Limits::default());
    assert!(records.iter().all(|r| r.status != Status::Fail && r.reproduction.is_none()));
    assert_eq!(record(&records, TheoremId::Thm4_3).status, Status::Pass);
}
