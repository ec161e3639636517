//! Generic polar curves `a·F_x + b·F_y + c·F_z = 0` on a superisolated
//! surface: multiplicities along the resolution, base-point blow-ups and
//! branch counts.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::report::isomorphic;
use crate::resolve::{resolve_capped, BlowupTree, PointKey};
use crate::scalar::Rat;
use crate::sis::pullback::{l_valuation, pullback, split_at};
use crate::sis::{assemble, build_gamma, inner_rates, multiplicity_table, Gamma, Mode, RatPoly, SISPresentation, VertexOrigin};

/// Default number of sampled coefficient triples.
pub const DEFAULT_SAMPLES: usize = 5;
/// Most extra curve classes allowed per singular point.
pub const BASE_POINT_CAP: usize = 8;
/// Coefficients are drawn from `[-COEFF_BOX, COEFF_BOX]`.
pub const COEFF_BOX: i64 = 97;
/// Annotation name of the polar multiplicities.
pub const POLAR: &str = "polar";

/// A certified-generic member of the polar family.
#[derive(Clone, Debug)]
pub struct PolarSample {
    pub coefficients: [Rat; 3],
    pub g: RatPoly,
    /// Γ extended by the base-point blow-ups, with the multiplicities of
    /// `g` under [`POLAR`] and one arrow per branch of the strict transform.
    pub gamma: Gamma,
    /// Vertices created by base-point blow-ups.
    pub extra: Vec<usize>,
    pub samples: usize,
    /// Samples whose data agree with the certified one.
    pub agreeing: usize,
}

impl PolarSample {
    pub fn multiplicities(&self) -> Vec<i64> {
        self.gamma.graph.mult_vector(POLAR).expect("annotated")
    }
}

/// Multiplicities of `F_x`, `F_y`, `F_z` along the vertices of `gamma`.
pub fn partials_table(gamma: &Gamma, s: &SISPresentation) -> Result<[Vec<i64>; 3]> {
    let f = s.polynomial();
    Ok([
        multiplicity_table(gamma, s, &f.derivative(0))?,
        multiplicity_table(gamma, s, &f.derivative(1))?,
        multiplicity_table(gamma, s, &f.derivative(2))?,
    ])
}

fn combination(s: &SISPresentation, c: &[Rat; 3]) -> RatPoly {
    let f = s.polynomial();
    let mut g = RatPoly::zero(f.vars());
    for (i, ci) in c.iter().enumerate() {
        g = &g + &f.derivative(i).scale(ci);
    }
    g
}

fn sample_triple(rng: &mut ChaCha8Rng) -> [Rat; 3] {
    loop {
        let t: [i64; 3] = std::array::from_fn(|_| rng.gen_range(-COEFF_BOX..=COEFF_BOX));
        if t.iter().any(|&x| x != 0) {
            return t.map(|x| Rat::from_integer(x.into()));
        }
    }
}

/// Samples `k` members of the polar family and returns a generic one.
///
/// A sample is accepted when its multiplicities on Γ are the vertexwise
/// minimum and its extended graph agrees with the other accepted samples;
/// at least `k - 1` samples must be accepted.
pub fn generic_polar(s: &SISPresentation, k: usize, seed: u64) -> Result<PolarSample> {
    if k < 3 {
        return Err(Error::GenericityAlarm(format!("{k} samples are too few to certify genericity")));
    }
    let inner = build_gamma(s, Mode::Inner)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cands = Vec::with_capacity(k);
    while cands.len() < k {
        let c = sample_triple(&mut rng);
        let g = combination(s, &c);
        if g.is_zero() {
            return Err(Error::ZeroOnComponent);
        }
        let vals = multiplicity_table(&inner, s, &g)?;
        cands.push((c, g, vals));
    }
    let n = inner.graph.vertices.len();
    let min: Vec<i64> = (0..n).map(|i| cands.iter().map(|c| c.2[i]).min().expect("k ≥ 3")).collect();

    let mut built: Vec<PolarSample> = Vec::new();
    let mut last_err = None;
    let mut keys = Vec::new();
    for (c, g, vals) in cands {
        if vals != min {
            continue;
        }
        let (gamma, extra) = match extend(s, &inner, &g) {
            Ok(x) => x,
            // a strict transform that does not separate marks a special member
            Err(e @ Error::BasePointLimit { .. }) => {
                last_err = Some(e);
                continue;
            }
            Err(e) => return Err(e),
        };
        keys.push(sample_key(&gamma));
        built.push(PolarSample { coefficients: c, g, gamma, extra, samples: k, agreeing: 0 });
    }
    let Some(first) = keys.first().cloned() else {
        return Err(last_err.unwrap_or_else(|| Error::GenericityAlarm("no sample attains the minimal multiplicities".into())));
    };
    let agreeing = keys.iter().filter(|x| **x == first).count();
    if agreeing + 1 < k {
        return Err(Error::GenericityAlarm(format!(
            "only {agreeing} of {k} polar samples agree"
        )));
    }
    let mut out = built.swap_remove(0);
    out.agreeing = agreeing;
    Ok(out)
}

/// Sorted `(self_int, polar multiplicity, arrows)` per vertex.
fn sample_key(g: &Gamma) -> Vec<(i64, i64, usize)> {
    let gr = &g.graph;
    let mut key: Vec<_> = (0..gr.vertices.len())
        .map(|i| {
            let arrows = gr.arrows.iter().filter(|a| a.at == Some(i)).count();
            (gr.vertices[i].self_int, gr.vertices[i].mult[POLAR], arrows)
        })
        .collect();
    key.sort();
    key
}

/// Resolves the strict transform of `{g = 0}` together with the branches at
/// every point and assembles the extended graph.
fn extend(s: &SISPresentation, inner: &Gamma, g: &RatPoly) -> Result<(Gamma, Vec<usize>)> {
    let mut trees = Vec::with_capacity(s.points.len());
    let mut values = Vec::with_capacity(s.points.len());
    let mut is_extra = Vec::with_capacity(s.points.len());
    for (p, loc) in s.points.iter().zip(&inner.locals) {
        let (num, _) = pullback(&p.chart_images(), &p.germ, &p.unit, g)?;
        let (nus, rest) = split_at(p, &num);
        let mut labels = p.branches.clone();
        // the strict transform may carry repeated factors of f_(d+1) away
        // from the point, so reducedness is only local
        labels.push(rest);
        let cap = loc.tree.curves.len() + BASE_POINT_CAP;
        let tree = resolve_capped(&p.ctx, &labels, cap)?.ok_or(Error::BasePointLimit { cap: BASE_POINT_CAP })?;
        let fresh = new_curves(&loc.tree, &tree);
        let nb = p.branches.len();
        let vals: Vec<i64> = tree
            .curves
            .iter()
            .map(|c| nus.iter().zip(&c.mults).map(|(n, m)| n * m).sum::<i64>() + c.mults[nb])
            .collect();
        trees.push(tree);
        values.push(vals);
        is_extra.push(fresh);
    }
    let mut gamma = assemble(s, Mode::Inner, trees)?;

    let mut l_vals = BTreeMap::new();
    let mut m = Vec::with_capacity(gamma.origins.len());
    let mut extra = Vec::new();
    for (i, o) in gamma.origins.iter().enumerate() {
        let v = match *o {
            VertexOrigin::L(c) => match l_vals.get(&c) {
                Some(&x) => x,
                None => {
                    let x = l_valuation(s, c, g)?;
                    l_vals.insert(c, x);
                    x
                }
            },
            VertexOrigin::Local { point, vertex, .. } => {
                let c = gamma.locals[point].dual.vertices[vertex].curve;
                if is_extra[point][c] {
                    extra.push(i);
                }
                values[point][c]
            }
        };
        m.push(v);
    }
    crate::sis::annotate(&mut gamma, POLAR, &m);

    // (g)·E = 0: the strict transform meets E in -Σ_j (E_j·E) m_j points
    let mat = gamma.graph.intersection_matrix();
    let n = m.len();
    for i in 0..n {
        let meet = -(0..n).map(|j| mat[i][j] * m[j]).sum::<i64>();
        if gamma.graph.vertices[i].is_l {
            if meet < 0 {
                return Err(Error::InconsistentDivisor(format!("polar meets Ⓛ-vertex {i} {meet} times")));
            }
            for _ in 0..meet {
                gamma.graph.arrows.push(crate::sis::DArrow { at: Some(i), mult: None });
            }
        } else {
            let arrows = gamma.graph.arrows.iter().filter(|a| a.at == Some(i)).count() as i64;
            if arrows != meet {
                return Err(Error::InconsistentDivisor(format!(
                    "polar arrows at vertex {i}: {arrows}, divisor gives {meet}"
                )));
            }
        }
    }
    Ok((gamma, extra))
}

/// Flags the curve classes of `new` that do not occur in `old`.
fn new_curves(old: &BlowupTree, new: &BlowupTree) -> Vec<bool> {
    let known: Vec<&Vec<PointKey>> = old.curves.iter().map(|c| &c.address).collect();
    new.curves.iter().map(|c| !known.contains(&&c.address)).collect()
}

/// Number of branches of the strict transform of the polar curve.
pub fn polar_branch_count(sample: &PolarSample) -> usize {
    sample.gamma.graph.arrows.len()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// The inner graphs differ.
    InnerInequivalent,
    /// Same inner graph, different polar data.
    PolarDataDiffer,
    /// Nothing tells the two apart. This is not a proof of outer
    /// equivalence.
    NoDifferenceFound,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::InnerInequivalent => "inner-inequivalent",
            Verdict::PolarDataDiffer => "inner-equivalent, polar data differ",
            Verdict::NoDifferenceFound => "inner-equivalent, no polar difference found",
        }
    }
}

#[derive(Clone, Debug)]
pub struct OuterEvidence {
    pub inner_equivalent: bool,
    /// Sorted polar multiplicities of each surface.
    pub polar_multiplicities: [Vec<i64>; 2],
    pub branch_counts: [usize; 2],
    /// Whether the extended graphs with polar data are isomorphic.
    pub polar_graphs_isomorphic: bool,
    pub verdict: Verdict,
}

impl OuterEvidence {
    /// One-line reading of the verdict.
    pub fn summary(&self) -> String {
        let tail = match self.verdict {
            Verdict::InnerInequivalent => "the surfaces are not inner bilipschitz equivalent",
            Verdict::PolarDataDiffer if self.branch_counts[0] != self.branch_counts[1] => {
                "the polar curves have different numbers of branches, so the outer geometries differ"
            }
            Verdict::PolarDataDiffer => "the outer geometries likely differ",
            Verdict::NoDifferenceFound => "equal polar data does not prove outer equivalence",
        };
        format!("{}: {tail}", self.verdict.name())
    }
}

/// Compares the inner graphs and the generic polar data of two surfaces.
pub fn outer_evidence_report(s1: &SISPresentation, s2: &SISPresentation, k: usize, seed: u64) -> Result<OuterEvidence> {
    let mut inner = Vec::with_capacity(2);
    let mut polar = Vec::with_capacity(2);
    for s in [s1, s2] {
        let mut g = build_gamma(s, Mode::Inner)?;
        inner_rates(&mut g, s, seed)?;
        g.graph.vertices.iter_mut().for_each(|v| v.mult.clear());
        inner.push(g.graph);
        polar.push(generic_polar(s, k, seed)?);
    }
    let inner_equivalent = isomorphic(&inner[0], &inner[1]);
    let sorted = |p: &PolarSample| {
        let mut v = p.multiplicities();
        v.sort();
        v
    };
    let polar_multiplicities = [sorted(&polar[0]), sorted(&polar[1])];
    let branch_counts = [polar_branch_count(&polar[0]), polar_branch_count(&polar[1])];
    let strip = |p: &PolarSample| {
        let mut g = p.gamma.graph.clone();
        for v in &mut g.vertices {
            v.mult.retain(|k, _| k == POLAR);
        }
        g
    };
    let polar_graphs_isomorphic = isomorphic(&strip(&polar[0]), &strip(&polar[1]));
    let verdict = if !inner_equivalent {
        Verdict::InnerInequivalent
    } else if polar_graphs_isomorphic {
        Verdict::NoDifferenceFound
    } else {
        Verdict::PolarDataDiffer
    };
    Ok(OuterEvidence { inner_equivalent, polar_multiplicities, branch_counts, polar_graphs_isomorphic, verdict })
}
