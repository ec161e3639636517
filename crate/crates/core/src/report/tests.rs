use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::poly::parse_poly;
use crate::sis::{build_gamma, inner_rates, xyz_vars, Mode, SISPresentation};

fn gamma_graph(src: &str, mode: Mode) -> DecoratedGraph {
    let f = parse_poly(src, &xyz_vars(), &[]).unwrap();
    let s = SISPresentation::from_polynomial(&f).unwrap();
    let mut g = build_gamma(&s, mode).unwrap();
    inner_rates(&mut g, &s, 1).unwrap();
    g.graph
}

fn shuffled(g: &DecoratedGraph, seed: u64) -> (DecoratedGraph, Vec<usize>) {
    let mut order: Vec<usize> = (0..g.vertices.len()).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    (permute(g, &order), order)
}

#[test]
fn cubic_dot() {
    let doc = GraphDocument::new(&gamma_graph("y^3+x*z^2-x^4", Mode::Min), Provenance::default());
    let dot = doc.to_dot();
    assert_eq!(dot.matches("[label=").count(), 4);
    assert_eq!(dot.matches("fillcolor=black").count(), 1);
    for si in ["\"-9", "\"-3", "\"-2", "\"-1"] {
        assert!(dot.contains(si), "{si}");
    }
    // Ⓛ first
    assert!(doc.graph.vertices[0].is_l);
}

#[test]
fn empty_document_round_trips() {
    let doc = GraphDocument::default();
    let text = doc.to_json();
    assert_eq!(GraphDocument::from_json(&text).unwrap(), doc);
    assert!(doc.to_dot().starts_with("graph G {"));
}

#[test]
fn two_cubics_json() {
    let g = gamma_graph("(z*x^2+y^3)*(x^3+z*y^2)+z^7", Mode::Inner);
    let mut prov = Provenance { input: vec!["(z*x^2+y^3)*(x^3+z*y^2)+z^7".into()], ..Default::default() };
    prov.mode = Some("inner".into());
    prov.seed = Some(1);
    let doc = GraphDocument::new(&g, prov);
    let text = doc.to_json();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["vertices"].as_array().unwrap().len(), 12);
    let halves = v["vertices"].as_array().unwrap().iter().filter(|x| x["rate"] == "3/2").count();
    assert_eq!(halves, 5);
    let back = GraphDocument::from_json(&text).unwrap();
    assert_eq!(back, doc);
    assert!(isomorphic(&back.graph, &g));
}

#[test]
fn schema_mismatch() {
    let text = GraphDocument::default().to_json().replace("\"schema\": 1", "\"schema\": 2");
    assert_eq!(
        GraphDocument::from_json(&text).unwrap_err(),
        Error::SchemaVersionMismatch { found: 2, expected: 1 }
    );
    assert!(matches!(GraphDocument::from_json("{"), Err(Error::Document(_))));
    let bad = r#"{"schema":1,"vertices":[],"edges":[[0,1]],"arrows":[]}"#;
    assert!(matches!(GraphDocument::from_json(bad), Err(Error::Document(_))));
}

#[test]
fn relabelled_graph_is_isomorphic() {
    let mut g = gamma_graph("(z*x^2+y^3)*(x^3+z*y^2)+z^7", Mode::Inner);
    // the two Ⓛ-vertices are swapped by an automorphism
    g.vertices.iter_mut().for_each(|v| v.component = None);
    for seed in 0..5 {
        let (h, order) = shuffled(&g, seed);
        let phi = isomorphism(&g, &h).expect("isomorphic");
        // phi must respect every decoration and edge multiplicity
        let back = permute(&h, &(0..g.vertices.len()).map(|i| phi[i]).collect::<Vec<_>>());
        assert_eq!(permute(&g, &(0..g.vertices.len()).collect::<Vec<_>>()), back);
        assert_eq!(order.len(), g.vertices.len());
    }
}

#[test]
fn different_graphs_are_not_isomorphic() {
    let a = gamma_graph("y^3+x*z^2-x^4", Mode::Min);
    let b = gamma_graph("(z*x^2+y^3)*(x^3+z*y^2)+z^7", Mode::Inner);
    assert!(!isomorphic(&a, &b));
    let mut c = a.clone();
    c.vertices[1].rate = Some(Rat::from_integer(2.into()));
    assert!(!isomorphic(&a, &c));
    let mut d = a.clone();
    d.edges[0] = (d.edges[0].1, d.edges[0].0);
    assert!(isomorphic(&a, &d));
}

#[test]
fn equisingular_pair_inner_graphs_are_isomorphic() {
    let a = gamma_graph("(y^3-z^2*x)*(y^3+z^2*x)+(x+y+z)^7", Mode::Inner);
    let b = gamma_graph("(y^3-z^2*x)*(y^3+2*z^2*x)+(x+y+z)^7", Mode::Inner);
    assert!(isomorphism(&a, &b).is_some());
}

#[test]
fn canonical_order_is_invariant() {
    let g = gamma_graph("(z*x^2+y^3)*(x^3+z*y^2)+z^7", Mode::Min);
    let doc = GraphDocument::new(&g, Provenance::default());
    for seed in 0..5 {
        let (h, _) = shuffled(&g, seed);
        let d2 = GraphDocument::new(&h, Provenance::default());
        // labels in canonical position agree even where ties remain
        let key = |d: &GraphDocument| {
            d.graph.vertices.iter().map(|v| (v.is_l, v.self_int, v.rate.clone())).collect::<Vec<_>>()
        };
        assert_eq!(key(&doc), key(&d2));
    }
}
