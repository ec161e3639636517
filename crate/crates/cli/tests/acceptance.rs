//! Acceptance suite: one PASS/FAIL line per criterion.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::collections::BTreeMap;
use std::process::Command;
use std::time::{Duration, Instant};

use common::*;
use proptest::strategy::Strategy;
use proptest::test_runner::{Config, TestCaseError, TestRunner};
use sisgraph::polar::{generic_polar, outer_evidence_report, partials_table, polar_branch_count, DEFAULT_SAMPLES, POLAR};
use sisgraph::report::{isomorphic, isomorphism, GraphDocument};
use sisgraph::resolve::{ab_vars, detect_nodes, mult_along_poly};
use sisgraph::scalar::AlgNum;
use sisgraph::sis::{annotate, build_gamma, inner_rates, multiplicity_table, DArrow, DVertex, DecoratedGraph, Mode, SISPresentation};
use sisgraph::poly::MPoly;
use sisgraph::Rat;

const CUBIC_LIMIT: Duration = Duration::from_secs(1);
const TWO_CUBICS_LIMIT: Duration = Duration::from_secs(30);
const POLAR_LIMIT: Duration = Duration::from_secs(60);
const PROPERTY_CASES: u32 = 128;
const CHANGES_PER_FIXTURE: u32 = 25;
const SEED: u64 = 1;

type Outcome = Result<String, String>;

fn rat(p: i64, q: i64) -> Rat {
    Rat::new(p.into(), q.into())
}

fn cli(args: &[&str]) -> Result<(Vec<u8>, Duration), String> {
    let t = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_sisgraph"))
        .args(args)
        .output()
        .map_err(|e| format!("cannot run sisgraph: {e}"))?;
    let took = t.elapsed();
    if !out.status.success() {
        return Err(format!("sisgraph {args:?} failed: {}", String::from_utf8_lossy(&out.stderr)));
    }
    Ok((out.stdout, took))
}

fn pres(text: &str) -> SISPresentation {
    SISPresentation::from_polynomial(&surface(text)).expect("fixture is superisolated")
}

// ---------------------------------------------------------------- hand-built reference graphs

struct Builder(DecoratedGraph);

impl Builder {
    fn new() -> Self {
        Builder(DecoratedGraph::default())
    }

    fn vertex(&mut self, self_int: i64, is_l: bool, rate: Option<Rat>, mult: &[(&str, i64)]) -> usize {
        let mult: BTreeMap<String, i64> = mult.iter().map(|&(k, x)| (k.to_string(), x)).collect();
        self.0.vertices.push(DVertex { self_int, is_l, rate, component: None, mult });
        self.0.vertices.len() - 1
    }

    fn edge(&mut self, a: usize, b: usize) {
        self.0.edges.push((a, b));
    }

    fn arrows(&mut self, at: usize, k: usize) {
        for _ in 0..k {
            self.0.arrows.push(DArrow { at: Some(at), mult: None });
        }
    }
}

/// Keeps the named annotations, and rates only when asked.
fn project(g: &DecoratedGraph, keys: &[&str], rates: bool) -> DecoratedGraph {
    let mut g = g.clone();
    for v in &mut g.vertices {
        v.mult.retain(|k, _| keys.contains(&k.as_str()));
        v.component = None;
        if !rates {
            v.rate = None;
        }
    }
    for a in &mut g.arrows {
        a.mult = None;
    }
    g
}

/// Named vertices of the reference inner graph of X₁ and X₂.
struct XNames {
    la: usize,
    lb: usize,
    a: [usize; 3],
    b: usize,
    b3: usize,
    b2: usize,
}

/// Inner graph of X₁, X₂: Ⓛ-nodes joined to two nodes, one carrying a
/// (−2)(−2) chain, the other a (−3) and a (−2) leaf. `vals` gives the
/// annotations in the order Ⓛa, Ⓛb, A, A2, A3, B, B3, B2.
fn x_expected(keys: &[&str], vals: [[i64; 3]; 8], rates: bool) -> (DecoratedGraph, XNames) {
    let mut g = Builder::new();
    let m = |i: usize| -> Vec<(&str, i64)> { keys.iter().zip(vals[i]).map(|(k, x)| (*k, x)).collect() };
    let r = |q: Rat| rates.then_some(q);
    let la = g.vertex(-21, true, r(rat(1, 1)), &m(0));
    let lb = g.vertex(-21, true, r(rat(1, 1)), &m(1));
    let a = g.vertex(-1, false, r(rat(7, 6)), &m(2));
    let a2 = g.vertex(-2, false, None, &m(3));
    let a3 = g.vertex(-2, false, None, &m(4));
    let b = g.vertex(-1, false, r(rat(7, 6)), &m(5));
    let b3 = g.vertex(-3, false, None, &m(6));
    let b2 = g.vertex(-2, false, None, &m(7));
    for (x, y) in [(la, a), (lb, a), (la, b), (lb, b), (a, a2), (a2, a3), (b, b3), (b, b2)] {
        g.edge(x, y);
    }
    (g.0, XNames { la, lb, a: [a, a2, a3], b, b3, b2 })
}

const TRIPLES: [[i64; 3]; 8] =
    [[1, 1, 1], [1, 1, 1], [9, 7, 6], [6, 5, 4], [3, 3, 2], [12, 14, 15], [4, 5, 5], [6, 7, 8]];

fn partials_expected(first: bool) -> [[i64; 3]; 8] {
    let (node_fy, side_fz) = if first { (70, 36) } else { (69, 35) };
    [[5, 5, 5], [5, 5, 5], [33, 35, 36], [22, 24, 24], [11, 12, 12], [72, node_fy, 69], [24, 24, 23], [36, 35, side_fz]]
}

/// Reference polar graph: X₁ has one more curve at the intersection of
/// the node with its (−2) leaf.
fn polar_expected(first: bool) -> DecoratedGraph {
    let mut g = Builder::new();
    let p = |x: i64| [(POLAR, x)];
    let la = g.vertex(-21, true, None, &p(5));
    let lb = g.vertex(-21, true, None, &p(5));
    let a = g.vertex(-1, false, None, &p(33));
    let a2 = g.vertex(-2, false, None, &p(22));
    let a3 = g.vertex(-2, false, None, &p(11));
    let b3 = g.vertex(-3, false, None, &p(23));
    for (x, y) in [(la, a), (lb, a), (a, a2), (a2, a3)] {
        g.edge(x, y);
    }
    g.arrows(la, 3);
    g.arrows(lb, 3);
    g.arrows(a, 1);
    if first {
        let b = g.vertex(-2, false, None, &p(69));
        let b2 = g.vertex(-3, false, None, &p(35));
        let e = g.vertex(-1, false, None, &p(105));
        for (x, y) in [(la, b), (lb, b), (b, b3), (b, e), (e, b2)] {
            g.edge(x, y);
        }
        g.arrows(e, 1);
    } else {
        let b = g.vertex(-1, false, None, &p(69));
        let b2 = g.vertex(-2, false, None, &p(35));
        for (x, y) in [(la, b), (lb, b), (b, b3), (b, b2)] {
            g.edge(x, y);
        }
        g.arrows(b, 1);
        g.arrows(b2, 1);
    }
    g.0
}

/// Inner graph of the two-cubic example: Ⓛ-nodes joined through five
/// double-point curves, and the chain (−2)(−1)(−5)(−1)(−2) at the third
/// point, its (−1) curves meeting one Ⓛ-node each.
fn two_cubics_expected() -> DecoratedGraph {
    let mut g = Builder::new();
    let l1 = g.vertex(-23, true, Some(rat(1, 1)), &[]);
    let l2 = g.vertex(-23, true, Some(rat(1, 1)), &[]);
    for _ in 0..5 {
        let d = g.vertex(-1, false, Some(rat(3, 2)), &[]);
        g.edge(l1, d);
        g.edge(l2, d);
    }
    let p = g.vertex(-2, false, None, &[]);
    let q1 = g.vertex(-1, false, Some(rat(6, 5)), &[]);
    let c = g.vertex(-5, false, Some(rat(5, 4)), &[]);
    let q2 = g.vertex(-1, false, Some(rat(6, 5)), &[]);
    let r = g.vertex(-2, false, None, &[]);
    for (x, y) in [(p, q1), (q1, c), (c, q2), (q2, r), (q1, l1), (q2, l2)] {
        g.edge(x, y);
    }
    g.0
}

// ---------------------------------------------------------------- criteria

fn criterion_1() -> Outcome {
    let (out, took) = cli(&["sis-graph", CUBIC, "--mode", "min"])?;
    let doc = GraphDocument::from_json(&String::from_utf8_lossy(&out)).map_err(|e| e.to_string())?;
    let mut g = Builder::new();
    let l = g.vertex(-9, true, None, &[("l", 1)]);
    let e2 = g.vertex(-2, false, None, &[("l", 3)]);
    let e3 = g.vertex(-1, false, None, &[("l", 6)]);
    let e4 = g.vertex(-3, false, None, &[("l", 2)]);
    for (x, y) in [(e2, e3), (e3, e4), (l, e3)] {
        g.edge(x, y);
    }
    if !isomorphic(&project(&doc.graph, &["l"], true), &g.0) {
        return Err(format!("graph differs from the chain: {:?}", doc.graph));
    }
    if took >= CUBIC_LIMIT {
        return Err(format!("took {took:?}"));
    }
    Ok(format!("chain (−2)(−1)(−3), Ⓛ −9 on the (−1), mults (1,3,6,2); {took:.2?}"))
}

fn criterion_2() -> Outcome {
    let s = pres(CUBIC);
    let mut gamma = build_gamma(&s, Mode::Min).map_err(|e| e.to_string())?;
    let loc = &gamma.locals[0];
    let nodes = detect_nodes(&loc.dual, &s.points[0].germ).map_err(|e| e.to_string())?;
    let [node] = nodes[..] else { return Err(format!("expected one node, found {}", nodes.len())) };
    let c = loc.dual.vertices[node].curve;
    let mf = loc.branch_mult(c);
    let vars = ab_vars();
    let ml = [1i64, 2, -5, 7]
        .iter()
        .map(|&t| {
            let l = &MPoly::var(&vars, 0) + &MPoly::var(&vars, 1).scale(&AlgNum::from_int(t));
            mult_along_poly(&loc.tree, c, &l)
        })
        .collect::<Result<Vec<i64>, _>>()
        .map_err(|e| e.to_string())?
        .into_iter()
        .min()
        .expect("samples");
    inner_rates(&mut gamma, &s, SEED).map_err(|e| e.to_string())?;
    let rates: Vec<Rat> = gamma.graph.vertices.iter().filter(|v| !v.is_l).filter_map(|v| v.rate.clone()).collect();
    let q = rat(ml, mf) + rat(1, 1);
    if (ml, mf) != (2, 6) || q != rat(4, 3) || rates != vec![rat(4, 3)] {
        return Err(format!("(m(l), m(f̃)) = ({ml}, {mf}), node rates {rates:?}"));
    }
    Ok("(m(l), m(f̃)) = (2, 6), rate 4/3".into())
}

fn criterion_3() -> Outcome {
    let (out, took) = cli(&["sis-graph", TWO_CUBICS, "--mode", "inner", "--rates"])?;
    let doc = GraphDocument::from_json(&String::from_utf8_lossy(&out)).map_err(|e| e.to_string())?;
    if !isomorphic(&project(&doc.graph, &[], true), &two_cubics_expected()) {
        return Err(format!("graph differs from the reference graph: {:?}", doc.graph));
    }
    if took >= TWO_CUBICS_LIMIT {
        return Err(format!("took {took:?}"));
    }
    let ext = doc.provenance.field_extensions.join(", ");
    Ok(format!("isomorphic to the reference graph, extensions [{ext}]; {took:.2?}"))
}

fn criterion_4() -> Outcome {
    let (fig, _) = x_expected(&[], TRIPLES, true);
    let g1 = project(&fixture_graph(X1, SEED), &[], true);
    let g2 = project(&fixture_graph(X2, SEED), &[], true);
    for (name, g) in [("X1", &g1), ("X2", &g2)] {
        if !isomorphic(g, &fig) {
            return Err(format!("{name} differs from the reference graph: {g:?}"));
        }
    }
    isomorphism(&g1, &g2).ok_or("no bijection between X1 and X2")?;
    Ok("Ⓛ −21/−21, {−1,−1,−2,−2,−2,−3}, node rates 7/6, X1 ≅ X2".into())
}

fn criterion_5() -> Outcome {
    let keys = ["x", "y", "z"];
    let pkeys = ["Fx", "Fy", "Fz"];
    let (fig, names) = x_expected(&keys, TRIPLES, false);
    let mut failures = Vec::new();
    let mut found = Vec::new();
    for (name, text, first) in [("X1", X1, true), ("X2", X2, false)] {
        let s = pres(text);
        let mut gamma = build_gamma(&s, Mode::Inner).map_err(|e| e.to_string())?;
        for (k, v) in keys.iter().zip(["x", "y", "z"]) {
            let t = multiplicity_table(&gamma, &s, &surface(v)).map_err(|e| e.to_string())?;
            annotate(&mut gamma, k, &t);
        }
        let parts = partials_table(&gamma, &s).map_err(|e| e.to_string())?;
        for (k, t) in pkeys.iter().zip(&parts) {
            annotate(&mut gamma, k, t);
        }
        let Some(phi) = isomorphism(&fig, &project(&gamma.graph, &keys, false)) else {
            failures.push(format!("{name}: triples differ from the reference graph"));
            continue;
        };
        let at = |v: usize, k: &str| gamma.graph.vertices[phi[v]].mult[k];
        let (pfig, _) = x_expected(&pkeys, partials_expected(first), false);
        let want = partials_expected(first);
        let (node_fy, side_fz) = (at(names.b, "Fy"), at(names.b2, "Fz"));
        found.push(format!("{name}: node F_y {node_fy}, side F_z {side_fz}"));
        if !isomorphic(&pfig, &project(&gamma.graph, &pkeys, false)) {
            let mut bad = Vec::new();
            let order = [names.la, names.lb, names.a[0], names.a[1], names.a[2], names.b, names.b3, names.b2];
            for (i, &v) in order.iter().enumerate() {
                let got = [at(v, "Fx"), at(v, "Fy"), at(v, "Fz")];
                if got != want[i] {
                    bad.push(format!("{:?} where the reference graph has {:?}", got, want[i]));
                }
            }
            failures.push(format!("{name} partials: {}", bad.join("; ")));
        }
    }
    if failures.is_empty() {
        Ok(format!("triples exact for X1, X2; {}", found.join(", ")))
    } else {
        Err(format!("triples exact; {}; {}", found.join(", "), failures.join("; ")))
    }
}

fn criterion_6() -> Outcome {
    let t = Instant::now();
    let report = outer_evidence_report(&pres(X1), &pres(X2), DEFAULT_SAMPLES, SEED).map_err(|e| e.to_string())?;
    let took = t.elapsed();
    if report.verdict.name() != "inner-equivalent, polar data differ" {
        return Err(format!("verdict `{}`", report.verdict.name()));
    }
    if took > POLAR_LIMIT {
        return Err(format!("compare took {took:?}"));
    }
    let mut counts = Vec::new();
    for (name, text, first) in [("X1", X1, true), ("X2", X2, false)] {
        let p = generic_polar(&pres(text), DEFAULT_SAMPLES, SEED).map_err(|e| e.to_string())?;
        if !isomorphic(&project(&p.gamma.graph, &[POLAR], false), &polar_expected(first)) {
            return Err(format!("{name} polar graph differs from the reference graph: {:?}", p.gamma.graph));
        }
        let extra: Vec<i64> = p.extra.iter().map(|&v| p.gamma.graph.vertices[v].mult[POLAR]).collect();
        if extra != if first { vec![105] } else { vec![] } {
            return Err(format!("{name}: extra curves {extra:?}"));
        }
        counts.push(polar_branch_count(&p));
    }
    if counts != [8, 9] || report.branch_counts != [8, 9] {
        return Err(format!("branch counts {counts:?}"));
    }
    Ok(format!("polar graphs match, (105) for X1 only, branches 8 vs 9, verdict ok; compare {took:.2?}"))
}

fn run_property<S: Strategy>(
    name: &str,
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Check,
) -> Result<String, String> {
    let mut runner = TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() });
    runner
        .run(&strategy, |v| test(v).map_err(TestCaseError::fail))
        .map(|()| format!("{name} {cases}"))
        .map_err(|e| format!("{name}: {e}"))
}

fn criterion_7() -> Outcome {
    let bases: Vec<DecoratedGraph> = FIXTURES.iter().map(|f| fixture_graph(f, SEED)).collect();
    let mut done = vec![
        run_property("divisor", PROPERTY_CASES, germ_text(), |t| divisor_identity(&t))?,
        run_property("definite", PROPERTY_CASES, germ_text(), |t| germ_negative_definite(&t))?,
        run_property("additivity", PROPERTY_CASES, (germ_text(), any_text(), any_text()), |(b, g, h)| {
            additivity(&b, &g, &h)
        })?,
        run_property("euclid", PROPERTY_CASES, coprime_pair(), |(p, q)| euclid_oracle(p, q))?,
    ];
    for (text, base) in FIXTURES.iter().zip(&bases) {
        if !base.is_negative_definite() {
            return Err(format!("{text}: Γ not negative definite"));
        }
    }
    let mut changes = 0;
    for (text, base) in FIXTURES.iter().zip(&bases) {
        run_property("coordinates", CHANGES_PER_FIXTURE, linear_change3(), |m| {
            surface_change_invariance(base, text, m, 5)
        })?;
        changes += CHANGES_PER_FIXTURE;
    }
    done.push(format!("coordinates {changes}"));
    Ok(format!("cases: {}", done.join(", ")))
}

fn criterion_8() -> Outcome {
    let seed = SEED.to_string();
    let runs: Vec<Vec<&str>> = vec![
        vec!["resolve-germ", "w^2-v^3"],
        vec!["sis-graph", CUBIC, "--mode", "min"],
        vec!["sis-graph", TWO_CUBICS, "--mode", "inner", "--rates", "--seed", &seed],
        vec!["sis-graph", TWO_CUBICS, "--format", "dot"],
        vec!["inner-rates", X1, "--seed", &seed],
        vec!["polar", X2, "--seed", &seed],
        vec!["compare", X1, X2, "--seed", &seed],
        vec!["check", TWO_CUBICS],
    ];
    for args in &runs {
        let (a, _) = cli(args)?;
        let (b, _) = cli(args)?;
        if a != b {
            return Err(format!("{args:?}: outputs differ"));
        }
    }
    Ok(format!("{} commands byte-identical across two runs", runs.len()))
}

fn main() {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 8] = [
        ("criterion 1 (minimal graph of the cubic example)", criterion_1),
        ("criterion 2 (rate 4/3)", criterion_2),
        ("criterion 3 (two-cubic example)", criterion_3),
        ("criterion 4 (inner graphs of X1, X2)", criterion_4),
        ("criterion 5 (multiplicity triples and partials)", criterion_5),
        ("criterion 6 (polar curves of X1, X2)", criterion_6),
        ("criterion 7 (property suites)", criterion_7),
        ("criterion 8 (CLI determinism)", criterion_8),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let t = Instant::now();
        match f() {
            Ok(msg) => println!("PASS {name}: {msg} [{:.1?}]", t.elapsed()),
            Err(msg) => {
                failed += 1;
                println!("FAIL {name}: {msg} [{:.1?}]", t.elapsed());
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 8 - failed);
}
