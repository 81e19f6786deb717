use std::io::Write as _;

use estrada::io::{
    parse_documents, parse_edge_list, parse_graph6, read_documents, write_edge_list, write_graph6,
    FormatError, InputFormat,
};
use estrada_core::families::{complete_bipartite, cycle, erdos_renyi, path};
use estrada_core::{enumerate_graphs, invariant_set, Graph};
use proptest::prelude::*;

#[test]
fn graph6_round_trip_on_all_graphs_up_to_six() {
    for n in 1..=6 {
        for g in enumerate_graphs(n, |_| true).unwrap() {
            let s = write_graph6(&g).unwrap();
            assert_eq!(parse_graph6(&s).unwrap(), g, "{s}");
        }
    }
}

#[test]
fn graph6_round_trip_past_the_short_prefix() {
    for seed in 0..100u64 {
        let n = [63, 64, 100][seed as usize % 3];
        let g = erdos_renyi(n, 0.3, seed).unwrap();
        let s = write_graph6(&g).unwrap();
        assert!(s.starts_with('~'));
        assert_eq!(parse_graph6(&s).unwrap(), g);
    }
    // 62 is the last order with a one-byte prefix
    assert!(!write_graph6(&path(62)).unwrap().starts_with('~'));
}

#[test]
fn known_encodings() {
    // C_4 labeled 0-1-2-3-0: bits (0,1) (1,2) (0,3) (2,3)
    assert_eq!(write_graph6(&cycle(4).unwrap()).unwrap(), "Cl");
    assert_eq!(write_graph6(&complete_bipartite(1, 3)).unwrap(), "Cs");
    assert_eq!(write_graph6(&Graph::empty(4)).unwrap(), "C?");
}

#[test]
fn edge_list_and_graph6_agree() {
    let text = "# K_{2,3}\n5 6\n0 2\n0 3\n0 4\n1 2\n1 3\n1 4\n";
    let from_el = parse_edge_list(text).unwrap();
    let from_g6 = parse_graph6(&write_graph6(&complete_bipartite(2, 3)).unwrap()).unwrap();
    assert_eq!(from_el, from_g6);
    assert_eq!(
        invariant_set(&from_el).unwrap(),
        invariant_set(&from_g6).unwrap()
    );
}

#[test]
fn files_are_sniffed_by_extension() {
    let dir = tempfile::tempdir().unwrap();
    let g6 = dir.path().join("graphs.g6");
    let mut f = std::fs::File::create(&g6).unwrap();
    writeln!(f, ">>graph6<<A_\nCl\n\nDQc").unwrap();
    drop(f);
    let docs = read_documents(&g6, None).unwrap();
    assert_eq!(docs.len(), 3);
    assert_eq!(docs[1].graph, cycle(4).unwrap());
    assert_eq!(docs[2].index, 2);

    let el = dir.path().join("c4.el");
    std::fs::write(&el, write_edge_list(&cycle(4).unwrap())).unwrap();
    assert_eq!(
        read_documents(&el, None).unwrap()[0].graph,
        cycle(4).unwrap()
    );

    let txt = dir.path().join("c4.txt");
    std::fs::write(&txt, "Cr\n").unwrap();
    assert!(matches!(
        read_documents(&txt, None),
        Err(FormatError::UnknownFormat(_))
    ));
    assert_eq!(
        read_documents(&txt, Some(InputFormat::Graph6))
            .unwrap()
            .len(),
        1
    );

    let missing = dir.path().join("absent.g6");
    assert!(matches!(
        read_documents(&missing, None),
        Err(FormatError::Io { .. })
    ));
}

#[test]
fn errors_name_the_offending_line() {
    let err = parse_documents("in.g6", "A_\nCr\nC!\n", InputFormat::Graph6).unwrap_err();
    let msg = err.to_string();
    assert!(msg.contains("in.g6") && msg.contains("line 3"), "{msg}");

    let err = parse_documents("in.el", "3 1\n0 1\n1 7\n", InputFormat::EdgeList).unwrap_err();
    let msg = err.to_string();
    assert!(msg.contains("in.el") && msg.contains("line 3"), "{msg}");
}

proptest! {
    #[test]
    fn graph6_round_trip(n in 1usize..=100, p in 0.0..=1.0f64, seed in any::<u64>()) {
        let g = erdos_renyi(n, p, seed).unwrap();
        let s = write_graph6(&g).unwrap();
        prop_assert!(s.bytes().all(|b| (63..=126).contains(&b)));
        prop_assert_eq!(parse_graph6(&s).unwrap(), g);
    }

    #[test]
    fn edge_list_round_trip(n in 1usize..=40, p in 0.0..=1.0f64, seed in any::<u64>()) {
        let g = erdos_renyi(n, p, seed).unwrap();
        prop_assert_eq!(parse_edge_list(&write_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn garbage_never_panics(line in "[ -~]{0,40}") {
        let _ = parse_graph6(&line);
        let _ = parse_edge_list(&line);
    }
}
