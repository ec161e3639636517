//! Property checks shared by the proptest suite and the acceptance harness.
//! Every check returns `Err(message)` on a counterexample.

#![allow(dead_code)]

use std::collections::BTreeMap;

use proptest::prelude::*;
use sisgraph::poly::{parse_poly, MPoly};
use sisgraph::report::{isomorphic, isomorphism, permute, GraphDocument, Provenance};
use sisgraph::resolve::{ab_vars, is_squarefree, mult_along_poly, resolve_germ, BlowupTree, DualGraph, GermCurve};
use sisgraph::scalar::{AlgNum, FieldCtx};
use sisgraph::sis::{build_gamma, inner_rates, vw_vars, xyz_vars, DArrow, DVertex, DecoratedGraph, Mode, SISPresentation};
use sisgraph::{Error, Poly, Rat, RatPoly};

pub const CUBIC: &str = "y^3+x*z^2-x^4";
pub const TWO_CUBICS: &str = "(z*x^2+y^3)*(x^3+z*y^2)+z^7";
pub const X1: &str = "(y^3-z^2*x)*(y^3+z^2*x)+(x+y+z)^7";
pub const X2: &str = "(y^3-z^2*x)*(y^3+2*z^2*x)+(x+y+z)^7";
pub const FIXTURES: [&str; 4] = [CUBIC, TWO_CUBICS, X1, X2];

pub type Check = Result<(), String>;

pub fn germ(text: &str) -> Poly {
    parse_poly::<AlgNum>(text, &vw_vars(), &[]).expect("germ parses").with_vars(&ab_vars())
}

pub fn surface(text: &str) -> RatPoly {
    parse_poly(text, &xyz_vars(), &[]).expect("surface parses")
}

// ---------------------------------------------------------------- strategies

/// `v^a + w^b` plus up to four higher terms, `a, b ≤ 5`.
pub fn germ_text() -> impl Strategy<Value = String> {
    let term = (0u32..=7, 0u32..=7, prop_oneof![-3i64..=-1, 1i64..=3]);
    (1u32..=5, 1u32..=5, proptest::collection::vec(term, 0..=4)).prop_map(|(a, b, extra)| {
        let mut s = format!("v^{a}+w^{b}");
        for (i, j, c) in extra {
            if i + j > a.min(b) {
                s.push_str(&format!("+({c})*v^{i}*w^{j}"));
            }
        }
        s
    })
}

/// Nonzero polynomial in v, w with distinct monomials of degree ≤ 8.
pub fn any_text() -> impl Strategy<Value = String> {
    let coeff = prop_oneof![-4i64..=-1, 1i64..=4];
    proptest::collection::btree_map((0u32..=4, 0u32..=4), coeff, 1..=4).prop_map(|ts| {
        let body: Vec<String> = ts.iter().map(|((i, j), c)| format!("({c})*v^{i}*w^{j}")).collect();
        body.join("+")
    })
}

pub fn coprime_pair() -> impl Strategy<Value = (u32, u32)> {
    (2u32..=12, 2u32..=12).prop_filter("coprime", |&(p, q)| gcd(p, q) == 1)
}

fn det3(m: &[[i64; 3]; 3]) -> i64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

pub fn linear_change3() -> impl Strategy<Value = [[i64; 3]; 3]> {
    proptest::array::uniform3(proptest::array::uniform3(-2i64..=2)).prop_filter("invertible", |m| det3(m) != 0)
}

pub fn linear_change2() -> impl Strategy<Value = [[i64; 2]; 2]> {
    proptest::array::uniform2(proptest::array::uniform2(-3i64..=3))
        .prop_filter("invertible", |m| m[0][0] * m[1][1] - m[0][1] * m[1][0] != 0)
}

/// Connected random decorated graph with up to 12 vertices.
pub fn decorated_graph() -> impl Strategy<Value = DecoratedGraph> {
    let vertex = (
        -30i64..=-1,
        any::<bool>(),
        proptest::option::of((1i64..=9, 1i64..=9)),
        proptest::option::of(0i64..=50),
    );
    (proptest::collection::vec(vertex, 1..=12), any::<u64>()).prop_map(|(vs, salt)| {
        let n = vs.len();
        let vertices: Vec<DVertex> = vs
            .into_iter()
            .map(|(si, is_l, rate, m)| DVertex {
                self_int: si,
                is_l,
                rate: rate.map(|(p, q)| Rat::new((p + q).into(), q.into())),
                component: None,
                mult: m.map(|x| BTreeMap::from([("l".to_string(), x)])).unwrap_or_default(),
            })
            .collect();
        let mut h = salt;
        let mut next = move |k: usize| {
            h = h.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((h >> 33) as usize) % k
        };
        let mut edges: Vec<(usize, usize)> = (1..n).map(|i| (next(i), i)).collect();
        for _ in 0..next(3) {
            let (a, b) = (next(n), next(n));
            if a != b {
                edges.push((a.min(b), a.max(b)));
            }
        }
        let arrows = (0..next(4)).map(|_| DArrow { at: Some(next(n)), mult: Some(next(40) as i64) }).collect();
        DecoratedGraph { vertices, edges, arrows }
    })
}

pub fn permutation(n: usize, seed: u64) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    let mut h = seed | 1;
    for i in (1..n).rev() {
        h ^= h << 13;
        h ^= h >> 7;
        h ^= h << 17;
        p.swap(i, (h % (i as u64 + 1)) as usize);
    }
    p
}

// ---------------------------------------------------------------- helpers

pub fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Resolves a germ given as text; `None` when it is not a reduced germ
/// through the origin or needs a field tower beyond the cap.
pub fn resolve_text(text: &str) -> Result<Option<(BlowupTree, DualGraph)>, String> {
    let h = germ(text);
    if h.constant_term() != AlgNum::from_int(0) || !is_squarefree(&h).map_err(|e| e.to_string())? {
        return Ok(None);
    }
    let c = GermCurve::new(&FieldCtx::rationals(), h).map_err(|e| e.to_string())?;
    match resolve_germ(&c) {
        Ok(r) => Ok(Some(r)),
        Err(e) if out_of_reach(&e) => Ok(None),
        Err(e) => Err(format!("{text}: {e}")),
    }
}

/// Field or degree limits: the case says nothing about the property.
fn out_of_reach(e: &Error) -> bool {
    matches!(e, Error::FieldExtensionFailure(_) | Error::TowerDepthExceeded { .. } | Error::DegreeTooLarge { .. })
}

fn linear_image(vars: &sisgraph::poly::Vars, row: &[i64]) -> Poly {
    let mut p = MPoly::zero(vars);
    for (i, &c) in row.iter().enumerate() {
        p = &p + &MPoly::var(vars, i).scale(&AlgNum::from_int(c));
    }
    p
}

fn strip(g: &DecoratedGraph) -> DecoratedGraph {
    let mut g = g.clone();
    for v in &mut g.vertices {
        v.mult.clear();
        v.component = None;
    }
    g
}

// ---------------------------------------------------------------- checks

/// Σ_j m_j (E_j·E_i) + #branches through E_i = 0 on every curve.
pub fn divisor_identity(text: &str) -> Check {
    let Some((tree, dual)) = resolve_text(text)? else { return Ok(()) };
    let m = dual.intersection_matrix();
    let mult: Vec<i64> = dual.vertices.iter().map(|v| tree.curves[v.curve].mults[0]).collect();
    for i in 0..dual.vertices.len() {
        let arrows = dual.arrows.iter().filter(|a| a.at == Some(i)).count() as i64;
        let s: i64 = (0..mult.len()).map(|j| mult[j] * m[j][i]).sum::<i64>() + arrows;
        if s != 0 {
            return Err(format!("{text}: identity fails on curve {i}: {s}"));
        }
    }
    Ok(())
}

pub fn germ_negative_definite(text: &str) -> Check {
    let Some((_, dual)) = resolve_text(text)? else { return Ok(()) };
    if dual.vertices.is_empty() || sisgraph::resolve::is_negative_definite(&dual.intersection_matrix()) {
        Ok(())
    } else {
        Err(format!("{text}: intersection matrix not negative definite"))
    }
}

/// m_E(g·h) = m_E(g) + m_E(h) on every curve of the resolution of `base`.
pub fn additivity(base: &str, g: &str, h: &str) -> Check {
    let Some((tree, _)) = resolve_text(base)? else { return Ok(()) };
    let (g, h) = (germ(g), germ(h));
    for e in 0..tree.curves.len() {
        let mg = mult_along_poly(&tree, e, &g).map_err(|x| x.to_string())?;
        let mh = mult_along_poly(&tree, e, &h).map_err(|x| x.to_string())?;
        let mgh = mult_along_poly(&tree, e, &(&g * &h)).map_err(|x| x.to_string())?;
        if mgh != mg + mh {
            return Err(format!("curve {e}: {mgh} ≠ {mg} + {mh}"));
        }
    }
    Ok(())
}

/// Toric resolution of v^p + w^q: the exceptional rays are the mediants on
/// the Stern–Brocot path to (q, p), with weights (m(v), m(w)).
pub fn euclid_graph(p: u32, q: u32) -> DecoratedGraph {
    let (p, q) = (p as i64, q as i64);
    let (mut left, mut right) = ((1i64, 0i64), (0i64, 1i64));
    let mut rays = vec![left, right];
    loop {
        let med = (left.0 + right.0, left.1 + right.1);
        rays.push(med);
        if med == (q, p) {
            break;
        }
        if q * med.1 > p * med.0 {
            right = med;
        } else {
            left = med;
        }
    }
    // descending slope m(v)/m(w)
    rays.sort_by(|a, b| (b.0 * a.1).cmp(&(a.0 * b.1)));
    let exc: Vec<(i64, i64)> = rays[1..rays.len() - 1].to_vec();
    let vertices = (1..rays.len() - 1)
        .map(|i| {
            let (a, u, b) = (rays[i - 1], rays[i], rays[i + 1]);
            let k = (a.0 + b.0) / u.0;
            assert_eq!((a.0 + b.0, a.1 + b.1), (k * u.0, k * u.1));
            DVertex {
                self_int: -k,
                mult: BTreeMap::from([("f".to_string(), (p * u.0).min(q * u.1))]),
                ..Default::default()
            }
        })
        .collect();
    let edges = (1..exc.len()).map(|i| (i - 1, i)).collect();
    let at = exc.iter().position(|&u| u == (q, p));
    DecoratedGraph { vertices, edges, arrows: vec![DArrow { at, mult: None }] }
}

pub fn euclid_oracle(p: u32, q: u32) -> Check {
    let text = format!("v^{p}+w^{q}");
    let (tree, dual) = resolve_text(&text)?.ok_or("not resolved")?;
    let mut g = DecoratedGraph::from_dual(&dual);
    for (v, d) in g.vertices.iter_mut().zip(&dual.vertices) {
        v.mult.insert("f".into(), tree.curves[d.curve].mults[0]);
    }
    for a in &mut g.arrows {
        a.mult = None;
    }
    if isomorphic(&g, &euclid_graph(p, q)) {
        Ok(())
    } else {
        Err(format!("{text}: engine {g:?} vs oracle {:?}", euclid_graph(p, q)))
    }
}

/// The resolution graph does not depend on linear coordinates in (v, w).
pub fn germ_change_invariance(text: &str, m: [[i64; 2]; 2]) -> Check {
    let Some((_, dual)) = resolve_text(text)? else { return Ok(()) };
    let h = germ(text);
    let vars = ab_vars();
    let images = [linear_image(&vars, &m[0]), linear_image(&vars, &m[1])];
    let changed = h.compose(&images);
    let c = GermCurve::new(&FieldCtx::rationals(), changed).map_err(|e| e.to_string())?;
    let (_, dual2) = match resolve_germ(&c) {
        Ok(r) => r,
        Err(e) if out_of_reach(&e) => return Ok(()),
        Err(e) => return Err(e.to_string()),
    };
    if isomorphic(&DecoratedGraph::from_dual(&dual), &DecoratedGraph::from_dual(&dual2)) {
        Ok(())
    } else {
        Err(format!("{text} under {m:?}: graphs differ"))
    }
}

/// Inner Γ with rates of `F ∘ M` is isomorphic to that of `F`, and both
/// intersection matrices are negative definite.
pub fn surface_change_invariance(base: &DecoratedGraph, text: &str, m: [[i64; 3]; 3], seed: u64) -> Check {
    let f = surface(text);
    let vars = xyz_vars();
    let images: Vec<RatPoly> = m
        .iter()
        .map(|row| {
            let mut p = MPoly::zero(&vars);
            for (i, &c) in row.iter().enumerate() {
                p = &p + &MPoly::var(&vars, i).scale(&Rat::from_integer(c.into()));
            }
            p
        })
        .collect();
    let g = f.compose(&images);
    let s = SISPresentation::from_polynomial(&g).map_err(|e| format!("{text} under {m:?}: {e}"))?;
    let mut gamma = build_gamma(&s, Mode::Inner).map_err(|e| format!("{text} under {m:?}: {e}"))?;
    inner_rates(&mut gamma, &s, seed).map_err(|e| format!("{text} under {m:?}: {e}"))?;
    if !gamma.graph.is_negative_definite() {
        return Err(format!("{text} under {m:?}: not negative definite"));
    }
    if isomorphic(&strip(base), &strip(&gamma.graph)) {
        Ok(())
    } else {
        Err(format!("{text} under {m:?}: decorated graph changed"))
    }
}

/// Inner Γ with rates of a fixture.
pub fn fixture_graph(text: &str, seed: u64) -> DecoratedGraph {
    let s = SISPresentation::from_polynomial(&surface(text)).expect("fixture is superisolated");
    let mut g = build_gamma(&s, Mode::Inner).expect("fixture resolves");
    inner_rates(&mut g, &s, seed).expect("rates");
    g.graph
}

pub fn json_round_trip(g: &DecoratedGraph) -> Check {
    let prov = Provenance { input: vec!["x".into()], seed: Some(3), ..Default::default() };
    let doc = GraphDocument::new(g, prov);
    let back = GraphDocument::from_json(&doc.to_json()).map_err(|e| e.to_string())?;
    if back == doc {
        Ok(())
    } else {
        Err("document changed in a JSON round trip".into())
    }
}

/// Reflexive, symmetric and transitive on relabellings; the bijection found
/// really maps edges, arrows and labels.
pub fn isomorphism_equivalence(g: &DecoratedGraph, s1: u64, s2: u64) -> Check {
    let n = g.vertices.len();
    let a = permute(g, &permutation(n, s1));
    let b = permute(&a, &permutation(n, s2));
    for (x, y) in [(g, g), (g, &a), (&a, g), (&a, &b), (g, &b)] {
        let phi = isomorphism(x, y).ok_or("relabelled graphs not found isomorphic")?;
        let mut mapped: Vec<(usize, usize)> =
            x.edges.iter().map(|&(u, v)| (phi[u].min(phi[v]), phi[u].max(phi[v]))).collect();
        let mut target: Vec<(usize, usize)> = y.edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        mapped.sort();
        target.sort();
        if mapped != target {
            return Err("bijection does not preserve edges".into());
        }
        if (0..n).any(|v| x.vertices[v] != y.vertices[phi[v]]) {
            return Err("bijection does not preserve vertex labels".into());
        }
        let mut am: Vec<_> = x.arrows.iter().map(|a| (a.at.map(|v| phi[v]), a.mult)).collect();
        let mut at: Vec<_> = y.arrows.iter().map(|a| (a.at, a.mult)).collect();
        am.sort();
        at.sort();
        if am != at {
            return Err("bijection does not preserve arrows".into());
        }
    }
    let mut c = g.clone();
    c.vertices[0].self_int -= 1;
    if isomorphic(g, &c) {
        return Err("graphs with different self-intersections found isomorphic".into());
    }
    Ok(())
}

/// Two runs of the pipeline give identical graphs.
pub fn determinism(text: &str, seed: u64) -> Check {
    if fixture_graph(text, seed) == fixture_graph(text, seed) {
        Ok(())
    } else {
        Err(format!("{text}: two runs differ"))
    }
}
