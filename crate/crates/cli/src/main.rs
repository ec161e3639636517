use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use sisgraph::polar::{generic_polar, outer_evidence_report, polar_branch_count, DEFAULT_SAMPLES};
use sisgraph::poly::parse_poly;
use sisgraph::report::{isomorphic, GraphDocument, Provenance};
use sisgraph::resolve::{ab_vars, resolve_germ, GermCurve};
use sisgraph::scalar::{AlgNum, FieldCtx};
use sisgraph::sis::{build_gamma, inner_rates, xyz_vars, Gamma, Mode, SISPresentation};
use sisgraph::{Error, RatPoly};

#[derive(Parser)]
#[command(name = "sisgraph", version, about = "Resolution graphs and inner-geometry invariants of superisolated surface singularities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Minimal embedded resolution of a plane-curve germ in v, w.
    ResolveGerm {
        /// Polynomial in v, w, or @FILE.
        germ: String,
        #[command(flatten)]
        out: Output,
    },
    /// Decorated graph Γ of the surface F = f_d + f_(d+1) = 0.
    SisGraph {
        /// Polynomial in x, y, z, or @FILE.
        surface: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Inner)]
        mode: ModeArg,
        /// Annotate inner rates.
        #[arg(long)]
        rates: bool,
        /// Replace Γ by the graph of a generic polar curve.
        #[arg(long)]
        polar: bool,
        #[command(flatten)]
        sampling: Sampling,
        #[command(flatten)]
        out: Output,
    },
    /// Γ with inner rates.
    InnerRates {
        surface: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Inner)]
        mode: ModeArg,
        #[command(flatten)]
        sampling: Sampling,
        #[command(flatten)]
        out: Output,
    },
    /// Resolution graph of a generic polar curve.
    Polar {
        surface: String,
        #[command(flatten)]
        sampling: Sampling,
        #[command(flatten)]
        out: Output,
    },
    /// Compares two surfaces.
    Compare {
        first: String,
        second: String,
        /// Also compare generic polar curves.
        #[arg(long)]
        polar: bool,
        #[command(flatten)]
        sampling: Sampling,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Validates a presentation.
    Check { surface: String },
}

#[derive(Args)]
struct Sampling {
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Min,
    Inner,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Min => Mode::Min,
            ModeArg::Inner => Mode::Inner,
        }
    }
}

enum Failure {
    Usage(String),
    Math(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Syntax { .. } | Error::UnknownVariable(_) | Error::UnknownGenerator(_) => {
                Failure::Usage(e.to_string())
            }
            other => Failure::Math(other),
        }
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

fn read_input(arg: &str) -> Outcome<String> {
    match arg.strip_prefix('@') {
        Some(path) => fs::read_to_string(path)
            .map(|s| s.trim().to_string())
            .map_err(|e| Failure::Usage(format!("cannot read {path}: {e}"))),
        None => Ok(arg.to_string()),
    }
}

fn surface(arg: &str) -> Outcome<(String, SISPresentation)> {
    let text = read_input(arg)?;
    let f: RatPoly = parse_poly(&text, &xyz_vars(), &[])?;
    Ok((text.clone(), SISPresentation::from_polynomial(&f)?))
}

fn extensions(s: &SISPresentation) -> Vec<String> {
    let mut out: Vec<String> = s.points.iter().filter(|p| !p.ctx.is_rationals()).map(|p| p.ctx.describe()).collect();
    out.dedup();
    out
}

fn provenance(input: Vec<String>, mode: Option<Mode>, s: Option<&SISPresentation>, seed: Option<u64>) -> Provenance {
    Provenance {
        input,
        mode: mode.map(|m| m.name().to_string()),
        coordinate_changes: Vec::new(),
        field_extensions: s.map(extensions).unwrap_or_default(),
        seed,
        notes: Default::default(),
    }
}

fn render(doc: &GraphDocument, format: Format) -> String {
    match format {
        Format::Json => doc.to_json(),
        Format::Dot => doc.to_dot(),
    }
}

fn emit(text: &str, out: &Option<PathBuf>) -> Outcome<()> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            let mut o = std::io::stdout().lock();
            o.write_all(text.as_bytes()).map_err(|e| Failure::Usage(e.to_string()))
        }
    }
}

fn gamma_with_rates(s: &SISPresentation, mode: Mode, rates: bool, seed: u64) -> Outcome<Gamma> {
    let mut g = build_gamma(s, mode)?;
    if rates {
        inner_rates(&mut g, s, seed)?;
    }
    Ok(g)
}

fn polar_document(text: String, s: &SISPresentation, sampling: &Sampling) -> Outcome<GraphDocument> {
    let p = generic_polar(s, sampling.samples, sampling.seed)?;
    let mut prov = provenance(vec![text], Some(Mode::Inner), Some(s), Some(sampling.seed));
    let c: Vec<String> = p.coefficients.iter().map(|c| c.to_string()).collect();
    prov.notes.insert("polar_coefficients".into(), c.join(" "));
    prov.notes.insert("polar_branches".into(), polar_branch_count(&p).to_string());
    prov.notes.insert("polar_extra_vertices".into(), p.extra.len().to_string());
    prov.notes.insert("polar_samples_agreeing".into(), format!("{}/{}", p.agreeing, p.samples));
    Ok(GraphDocument::new(&p.gamma.graph, prov))
}

fn run(cli: Cli) -> Outcome<()> {
    match cli.command {
        Command::ResolveGerm { germ, out } => {
            let text = read_input(&germ)?;
            let vw = sisgraph::sis::vw_vars();
            let h = parse_poly::<AlgNum>(&text, &vw, &[])?.with_vars(&ab_vars());
            let (_, dual) = resolve_germ(&GermCurve::new(&FieldCtx::rationals(), h)?)?;
            let mut prov = provenance(vec![text], None, None, None);
            if dual.vertices.is_empty() {
                prov.notes.insert("convention".into(), "smooth germ: no blow-up, one arrow with at = null".into());
            }
            emit(&render(&GraphDocument::from_dual(&dual, prov), out.format), &out.out)
        }
        Command::SisGraph { surface: arg, mode, rates, polar, sampling, out } => {
            let (text, s) = surface(&arg)?;
            let doc = if polar {
                polar_document(text, &s, &sampling)?
            } else {
                let mode = Mode::from(mode);
                let g = gamma_with_rates(&s, mode, rates, sampling.seed)?;
                GraphDocument::new(&g.graph, provenance(vec![text], Some(mode), Some(&s), rates.then_some(sampling.seed)))
            };
            emit(&render(&doc, out.format), &out.out)
        }
        Command::InnerRates { surface: arg, mode, sampling, out } => {
            let (text, s) = surface(&arg)?;
            let mode = Mode::from(mode);
            let g = gamma_with_rates(&s, mode, true, sampling.seed)?;
            let doc = GraphDocument::new(&g.graph, provenance(vec![text], Some(mode), Some(&s), Some(sampling.seed)));
            emit(&render(&doc, out.format), &out.out)
        }
        Command::Polar { surface: arg, sampling, out } => {
            let (text, s) = surface(&arg)?;
            emit(&render(&polar_document(text, &s, &sampling)?, out.format), &out.out)
        }
        Command::Compare { first, second, polar, sampling, out } => {
            let (t1, s1) = surface(&first)?;
            let (t2, s2) = surface(&second)?;
            let report = if polar {
                let r = outer_evidence_report(&s1, &s2, sampling.samples, sampling.seed)?;
                json!({
                    "input": [t1, t2],
                    "seed": sampling.seed,
                    "samples": sampling.samples,
                    "inner_equivalent": r.inner_equivalent,
                    "polar_multiplicities": r.polar_multiplicities,
                    "branch_counts": r.branch_counts,
                    "polar_graphs_isomorphic": r.polar_graphs_isomorphic,
                    "verdict": r.verdict.name(),
                    "summary": r.summary(),
                })
            } else {
                let a = gamma_with_rates(&s1, Mode::Inner, true, sampling.seed)?;
                let b = gamma_with_rates(&s2, Mode::Inner, true, sampling.seed)?;
                let strip = |g: &Gamma| {
                    let mut g = g.graph.clone();
                    g.vertices.iter_mut().for_each(|v| v.mult.clear());
                    g
                };
                let eq = isomorphic(&strip(&a), &strip(&b));
                json!({
                    "input": [t1, t2],
                    "seed": sampling.seed,
                    "inner_equivalent": eq,
                    "verdict": if eq { "inner-equivalent" } else { "inner-inequivalent" },
                })
            };
            let mut text = serde_json::to_string_pretty(&report).expect("plain values");
            text.push('\n');
            emit(&text, &out)
        }
        Command::Check { surface: arg } => {
            let (_, s) = surface(&arg)?;
            let mut text = format!(
                "superisolated: degree {}, {} tangent-cone component(s), {} singular point class(es)\n",
                s.degree,
                s.components.len(),
                s.points.len()
            );
            for p in &s.points {
                let kind = if p.ordinary_double { "ordinary double point" } else { "singular point" };
                text.push_str(&format!("  {p}: {kind}\n"));
            }
            emit(&text, &None)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Math(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
