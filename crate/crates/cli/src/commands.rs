use std::path::PathBuf;

use clap::Args;
use nalgebra::DMatrix;
use serde::Serialize;
use toric_kahler::calabi::{Classification, Constraint, PolytopeSpec, RadialDomain};
use toric_kahler::curvature::{CurvatureOptions, FdConfig};
use toric_kahler::dim2::GaussCheck;
use toric_kahler::rational::{format_rational, parse_rational, Num, Rational};
use toric_kahler::sampling::{interior_samples, SampleConfig, SamplingDomain};
use toric_kahler::schema::{PotentialSpec, ProfileJson, SpecJson};
use toric_kahler::validate::ValidationConfig;
use toric_kahler::{
    classify, classify_dim2, gauss_curvature_check, potential_dim2, q_positivity, scalar_curvature_general,
    solve_parameters, transform_potential, validate_potential, verify_extremal, CurvatureReport, Dim2Family,
    LinearChange, PolyhedralSet, ValidationReport,
};

use crate::input::{potential_doc, solve_doc, Tolerances};
use crate::{write_report, CliError, Global};

/// Mesh for the `Q > 0` check reported by `solve`.
const SOLVE_Q_MESH: usize = 400;
const DEFAULT_SAMPLES: usize = 30;

fn rational_arg(name: &str, text: &str) -> Result<Rational, CliError> {
    parse_rational(text).map_err(|e| CliError::Schema(format!("--{name}: {e}")))
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    #[arg(long, conflicts_with = "input", required_unless_present = "input")]
    pub n: Option<u32>,
    #[arg(long, conflicts_with = "input", required_unless_present = "input")]
    pub m: Option<u32>,
    /// Lower end of the radial interval, e.g. `1` or `3/2`.
    #[arg(long, conflicts_with = "input", required_unless_present = "input")]
    pub a: Option<String>,
    /// Upper end; omit for the unbounded set.
    #[arg(long, conflicts_with = "input")]
    pub b: Option<String>,
    /// Pinned parameter, `X=value`; repeatable.
    #[arg(long = "constraint", conflicts_with = "input", allow_hyphen_values = true)]
    pub constraints: Vec<String>,
    /// JSON job document (path or inline) instead of flags.
    #[arg(long)]
    pub input: Option<String>,
}

#[derive(Serialize)]
struct SolveBody {
    spec: SpecJson,
    constraints: Vec<String>,
    profile: ProfileJson,
    classification: Classification,
    domain: RadialDomain,
    /// Min of `Q` on the radial interval.
    q_min: f64,
}

pub fn solve(g: &Global, args: &SolveArgs) -> Result<(), CliError> {
    let (spec, constraint_text) = match &args.input {
        Some(input) => {
            let doc = solve_doc(input)?;
            (doc.spec.exact().map_err(|e| CliError::Schema(e.to_string()))?, doc.constraints)
        }
        None => {
            let (Some(n), Some(m), Some(a)) = (args.n, args.m, &args.a) else {
                return Err(CliError::Schema("solve needs --n, --m and --a".into()));
            };
            let a = rational_arg("a", a)?;
            let b = args.b.as_deref().map(|b| rational_arg("b", b)).transpose()?;
            let spec = PolytopeSpec::new(n, m, a, b).map_err(|e| CliError::Schema(e.to_string()))?;
            (spec, args.constraints.clone())
        }
    };
    let constraints: Vec<Constraint<Rational>> = constraint_text
        .iter()
        .map(|c| Constraint::parse(c))
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::Schema(e.to_string()))?;
    let profile = solve_parameters(&spec, &constraints)?;
    let prof_f = profile.to_f64();
    let spec_f = spec.to_f64();
    let body = SolveBody {
        spec: SpecJson::from_exact(&spec),
        constraints: constraints.iter().map(ToString::to_string).collect(),
        profile: ProfileJson::from_exact(&profile),
        classification: classify(&profile),
        domain: spec_f.domain().closed_by(&prof_f),
        q_min: q_positivity(&prof_f, &spec_f, SOLVE_Q_MESH),
    };
    write_report(g, "solve", body)
}

#[derive(Args, Debug)]
pub struct CurvatureArgs {
    /// Potential document (path or inline JSON).
    #[arg(long)]
    pub spec: String,
    #[arg(long)]
    pub samples: Option<usize>,
    /// Also write the samples as CSV: x_1..x_n, r, Sc_general, Sc_closed, rel_err.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Stencil step as a fraction of the distance to the boundary.
    #[arg(long)]
    pub step_fraction: Option<f64>,
    /// Sample clearance as a fraction of the box diameter.
    #[arg(long)]
    pub margin_fraction: Option<f64>,
}

fn options(g: &Global, tol: &Tolerances, step: Option<f64>, margin: Option<f64>) -> CurvatureOptions {
    let mut opts = CurvatureOptions {
        exec: g.exec(),
        sample: SampleConfig {
            seed: g.seed,
            ..SampleConfig::default()
        },
        fd: FdConfig::default(),
    };
    if let Some(s) = step.or(tol.step_fraction) {
        opts.fd.step_fraction = s;
    }
    if let Some(m) = margin.or(tol.margin_fraction) {
        opts.sample.margin_fraction = m;
    }
    opts
}

#[derive(Serialize)]
struct CurvatureBody {
    seed: u64,
    report: CurvatureReport,
}

fn write_csv(path: &PathBuf, report: &CurvatureReport) -> Result<(), CliError> {
    let io = |e: csv::Error| CliError::Io(format!("{}: {e}", path.display()));
    let mut w = csv::Writer::from_path(path).map_err(io)?;
    w.write_record(report.csv_header()).map_err(io)?;
    for row in report.csv_records() {
        w.write_record(row).map_err(io)?;
    }
    w.flush().map_err(|e| CliError::Io(e.to_string()))
}

pub fn curvature(g: &Global, args: &CurvatureArgs) -> Result<(), CliError> {
    let doc = potential_doc(&args.spec)?;
    let s = doc.potential.build()?;
    let region = doc.polytope.clone().unwrap_or_else(|| s.domain().clone());
    let opts = options(g, &doc.tolerances, args.step_fraction, args.margin_fraction);
    let n = args.samples.or(doc.samples).unwrap_or(DEFAULT_SAMPLES);
    let report = verify_extremal(&s, &region, n, &opts)?;
    if let Some(path) = &args.csv {
        write_csv(path, &report)?;
    }
    write_report(g, "curvature", CurvatureBody { seed: g.seed, report })
}

#[derive(Args, Debug)]
pub struct ValidateArgs {
    /// Potential document (path or inline JSON).
    #[arg(long)]
    pub spec: String,
    /// Positivity mesh density; `mesh²` interior points.
    #[arg(long)]
    pub mesh: Option<usize>,
}

#[derive(Serialize)]
struct ValidateBody {
    seed: u64,
    report: ValidationReport,
}

pub fn validate(g: &Global, args: &ValidateArgs) -> Result<(), CliError> {
    let doc = potential_doc(&args.spec)?;
    let s = doc.potential.build()?;
    let region = doc.polytope.clone().unwrap_or_else(|| s.domain().clone());
    let mut cfg = ValidationConfig {
        seed: g.seed,
        exec: g.exec(),
        ..ValidationConfig::default()
    };
    if let Some(m) = args.mesh.or(doc.tolerances.mesh) {
        cfg.mesh = m;
    }
    let report = validate_potential(&s, &region, &cfg)?;
    let pass = report.verdict.pass;
    write_report(g, "validate", ValidateBody { seed: g.seed, report })?;
    if pass {
        Ok(())
    } else {
        Err(CliError::Validation)
    }
}

#[derive(Args, Debug)]
pub struct Dim2Args {
    #[arg(long, allow_hyphen_values = true)]
    pub k: String,
    #[arg(long, allow_hyphen_values = true)]
    pub b: String,
    #[arg(long, allow_hyphen_values = true)]
    pub c: String,
    /// Interior points for the numeric curvature check.
    #[arg(long, default_value_t = 10)]
    pub points: usize,
}

#[derive(Serialize)]
pub struct Dim2Body {
    pub family: Dim2Family,
    pub case: &'static str,
    /// `πb` for cones, `π√(ck)` for footballs and hyperbolic discs.
    pub angle: Option<f64>,
    pub smooth: Option<bool>,
    pub orbifold_order: Option<u64>,
    pub exact_scalar: Option<f64>,
    pub gauss_curvature: Option<f64>,
    pub checks: Vec<GaussCheck>,
}

pub fn dim2_body(family: Dim2Family, points: usize, seed: u64) -> Result<Dim2Body, CliError> {
    let s = potential_dim2(&family)?;
    let domain = SamplingDomain::for_potential(&s)?;
    let xs = interior_samples(&domain, points, &SampleConfig { seed, ..SampleConfig::default() })?;
    let checks = xs
        .iter()
        .map(|x| gauss_curvature_check(&family, x[0]))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Dim2Body {
        case: family.case.name(),
        angle: family.cone_angle(),
        smooth: family.smooth(),
        orbifold_order: family.orbifold_order(),
        exact_scalar: family.exact_scalar(),
        gauss_curvature: family.gauss_curvature(),
        checks,
        family,
    })
}

pub fn dim2(g: &Global, args: &Dim2Args) -> Result<(), CliError> {
    let k = rational_arg("k", &args.k)?;
    let b = rational_arg("b", &args.b)?;
    let c = rational_arg("c", &args.c)?;
    let to = toric_kahler::rational::to_f64;
    let family = classify_dim2(to(&k), to(&b), to(&c));
    let body = dim2_body(family, args.points, g.seed)?;
    write_report(g, "dim2", body)
}

#[derive(Args, Debug)]
pub struct TransformArgs {
    /// Potential document (path or inline JSON).
    #[arg(long)]
    pub spec: String,
    /// Rows separated by `;`, entries by `,`: `"1,-1;0,1"`.
    #[arg(long, allow_hyphen_values = true)]
    pub matrix: String,
    #[arg(long, default_value_t = 10)]
    pub points: usize,
}

#[derive(Serialize)]
struct TransformCheck {
    x: Vec<f64>,
    tx: Vec<f64>,
    sc: f64,
    sc_inner: f64,
    rel_err: f64,
    /// `max |S(x) − Tᵗ S'(Tx) T| / max |S(x)|`.
    congruence_err: f64,
}

#[derive(Serialize)]
struct TransformBody {
    matrix: Vec<Vec<String>>,
    potential: PotentialSpec,
    domain: PolyhedralSet,
    checks: Vec<TransformCheck>,
    max_rel_err: f64,
    max_congruence_err: f64,
}

pub fn parse_matrix(text: &str) -> Result<LinearChange, CliError> {
    let rows: Vec<Vec<Rational>> = text
        .split(';')
        .map(|row| row.split(',').map(|v| rational_arg("matrix", v)).collect())
        .collect::<Result<_, _>>()?;
    LinearChange::new(rows).map_err(|e| CliError::Schema(format!("--matrix: {e}")))
}

pub fn transform(g: &Global, args: &TransformArgs) -> Result<(), CliError> {
    let doc = potential_doc(&args.spec)?;
    let inner = doc.potential.build()?;
    let t = parse_matrix(&args.matrix)?;
    if t.dim() != inner.dim() {
        return Err(CliError::Schema(format!(
            "--matrix is {0}x{0} but the potential has dimension {1}",
            t.dim(),
            inner.dim()
        )));
    }
    let pulled = transform_potential(&inner, &t)?;
    let domain = SamplingDomain::for_potential(&pulled)?;
    let xs = interior_samples(&domain, args.points, &SampleConfig { seed: g.seed, ..SampleConfig::default() })?;
    let fd = FdConfig::default();
    let n = t.dim();
    let tm = DMatrix::from_fn(n, n, |i, j| t.matrix_f64()[i][j]);
    let checks = g.exec().map(&xs, |x| -> Result<TransformCheck, toric_kahler::Error> {
        let tx = t.apply(x);
        let sc = scalar_curvature_general(&pulled, x, &fd)?;
        let sc_inner = scalar_curvature_general(&inner, &tx, &fd)?;
        let s = pulled.hessian_matrix(x)?;
        let want = tm.transpose() * inner.hessian_matrix(&tx)? * &tm;
        Ok(TransformCheck {
            x: x.to_vec(),
            congruence_err: (&s - want).amax() / s.amax(),
            rel_err: (sc - sc_inner).abs() / (1.0 + sc_inner.abs()),
            tx,
            sc,
            sc_inner,
        })
    });
    let checks = checks.into_iter().collect::<Result<Vec<_>, _>>()?;
    let matrix: Vec<Vec<Num>> = t.matrix().iter().map(|r| r.iter().cloned().map(Num).collect()).collect();
    let body = TransformBody {
        matrix: t.matrix().iter().map(|r| r.iter().map(format_rational).collect()).collect(),
        potential: PotentialSpec::Pullback {
            matrix,
            inner: Box::new(doc.potential),
        },
        domain: pulled.domain().clone(),
        max_rel_err: checks.iter().map(|c| c.rel_err).fold(0.0, f64::max),
        max_congruence_err: checks.iter().map(|c| c.congruence_err).fold(0.0, f64::max),
        checks,
    };
    write_report(g, "transform", body)
}
