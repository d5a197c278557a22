//! One report with the parameter table of Calabi's family and the catalogue
//! of constant curvature surfaces.

use clap::Args;
use num_traits::{One, Zero};
use serde::Serialize;
use toric_kahler::calabi::{presets, Classification, Constraint, PolytopeSpec, RadialDomain, RadialProfile};
use toric_kahler::curvature::CurvatureOptions;
use toric_kahler::rational::{int, rat, Rational};
use toric_kahler::sampling::SampleConfig;
use toric_kahler::schema::{ProfileJson, SpecJson};
use toric_kahler::validate::ValidationConfig;
use toric_kahler::{
    build_potential, classify, classify_dim2, solve_parameters, validate_potential, verify_extremal, Potential,
};

use crate::commands::{dim2_body, Dim2Body};
use crate::{write_report, CliError, Global};

#[derive(Args, Debug)]
pub struct DemoArgs {
    /// Curvature samples per construction.
    #[arg(long, default_value_t = 30)]
    pub samples: usize,
    /// Validation mesh density.
    #[arg(long, default_value_t = 6)]
    pub mesh: usize,
}

#[derive(Serialize)]
struct CalabiRow {
    case: &'static str,
    spec: Option<SpecJson>,
    constraints: Vec<String>,
    profile: ProfileJson,
    /// The case's textbook closed form for `(A, B, C, D)`.
    closed_form: Option<ProfileJson>,
    matches_closed_form: Option<bool>,
    classification: Classification,
    domain: RadialDomain,
    /// General route against `2(n+1)((n+2)Dr + nC)`.
    max_rel_err: Option<f64>,
    extremal: bool,
    valid: bool,
}

#[derive(Serialize)]
struct CatalogueRow {
    k: f64,
    b: f64,
    c: f64,
    #[serde(flatten)]
    body: Dim2Body,
}

#[derive(Serialize)]
struct DemoBody {
    seed: u64,
    calabi: Vec<CalabiRow>,
    catalogue: Vec<CatalogueRow>,
}

fn pow(a: &Rational, e: u32) -> Rational {
    (0..e).fold(Rational::one(), |acc, _| acc * a)
}

fn profile(n: u32, c: [Rational; 4]) -> RadialProfile<Rational> {
    let [a, b, cc, d] = c;
    RadialProfile::new(n, a, b, cc, d)
}

/// Closed forms for the unbounded cases, as functions of `(n, m, a)`.
fn closed_form(case: &str, n: u32, m: u32, a: &Rational) -> Option<RadialProfile<Rational>> {
    let (ni, mi) = (int(n as i64), int(m as i64));
    let an = pow(a, n);
    let an1 = pow(a, n - 1);
    let z = Rational::zero;
    let row = match case {
        "ricci_flat" => [an, z(), z(), z()],
        "scalar_flat" => [&an * (int(1) - &ni + &mi), (&ni - &mi) * an1, z(), z()],
        "kahler_einstein" => [
            (&mi + int(1)) * &an / (&ni + int(1)),
            z(),
            (&ni - &mi) / ((&ni + int(1)) * a),
            z(),
        ],
        "negative_csc" => [
            (&mi - &ni + (int(1) - &ni) * a) * &an,
            (&ni - &mi + int(1) + &ni * a) * an1,
            -int(1),
            z(),
        ],
        _ => return None,
    };
    Some(profile(n, row))
}

struct Job {
    case: &'static str,
    n: u32,
    m: u32,
    a: Rational,
    b: Option<Rational>,
    constraints: Vec<Constraint<Rational>>,
}

fn jobs() -> Vec<Job> {
    let job = |case, n, m, a: Rational, b: Option<Rational>, constraints| Job {
        case,
        n,
        m,
        a,
        b,
        constraints,
    };
    let ke = presets::kahler_einstein::<Rational>;
    vec![
        job("ricci_flat", 2, 2, int(1), None, ke()),
        job("ricci_flat", 3, 3, int(2), None, ke()),
        job("scalar_flat", 2, 1, int(1), None, presets::scalar_flat()),
        job("scalar_flat", 3, 2, int(1), None, presets::scalar_flat()),
        job("scalar_flat", 3, 1, rat(3, 2), None, presets::scalar_flat()),
        job("kahler_einstein", 2, 3, int(1), None, ke()),
        job("kahler_einstein", 3, 5, rat(1, 2), None, ke()),
        job("kahler_einstein", 3, 1, int(1), None, ke()),
        job("negative_csc", 2, 1, int(1), None, presets::negative_csc()),
        job("negative_csc", 3, 4, int(1), None, presets::negative_csc()),
        job("negative_csc", 2, 3, rat(3, 2), None, presets::negative_csc()),
        job("bounded_extremal", 2, 1, int(1), Some(int(2)), vec![]),
        job("bounded_extremal", 3, 2, int(1), Some(int(3)), vec![]),
    ]
}

fn curvature_and_validity(
    s: &Potential,
    g: &Global,
    args: &DemoArgs,
) -> Result<(Option<f64>, bool, bool), CliError> {
    let opts = CurvatureOptions {
        exec: g.exec(),
        sample: SampleConfig {
            seed: g.seed,
            ..SampleConfig::default()
        },
        ..CurvatureOptions::default()
    };
    let report = verify_extremal(s, &s.domain().clone(), args.samples, &opts)?;
    let cfg = ValidationConfig {
        mesh: args.mesh,
        seed: g.seed,
        exec: g.exec(),
    };
    let valid = validate_potential(s, &s.domain().clone(), &cfg)?.verdict.pass;
    Ok((report.max_rel_err, report.extremal, valid))
}

fn calabi_rows(g: &Global, args: &DemoArgs) -> Result<Vec<CalabiRow>, CliError> {
    let mut rows = Vec::new();
    for job in jobs() {
        let spec = PolytopeSpec::new(job.n, job.m, job.a.clone(), job.b.clone())?;
        let prof = solve_parameters(&spec, &job.constraints)?;
        let (pf, sf) = (prof.to_f64(), spec.to_f64());
        let s = build_potential(&pf, &sf)?;
        let (max_rel_err, extremal, valid) = curvature_and_validity(&s, g, args)?;
        let closed = closed_form(job.case, job.n, job.m, &job.a);
        rows.push(CalabiRow {
            case: job.case,
            spec: Some(SpecJson::from_exact(&spec)),
            constraints: job.constraints.iter().map(ToString::to_string).collect(),
            matches_closed_form: closed.as_ref().map(|c| *c == prof),
            closed_form: closed.as_ref().map(ProfileJson::from_exact),
            profile: ProfileJson::from_exact(&prof),
            classification: classify(&prof),
            domain: sf.domain().closed_by(&pf),
            max_rel_err,
            extremal,
            valid,
        });
    }
    for (case, c) in [("fubini_study", int(1)), ("bergman", -int(1))] {
        let n = 2;
        let prof = profile(n, [Rational::zero(), Rational::zero(), c.clone(), Rational::zero()]);
        let cf = toric_kahler::rational::to_f64(&c);
        let (pf, domain) = if case == "fubini_study" {
            presets::fubini_study(n, cf)?
        } else {
            presets::bergman(n, cf)?
        };
        let s = Potential::radial(pf, &domain)?;
        let (max_rel_err, extremal, valid) = curvature_and_validity(&s, g, args)?;
        rows.push(CalabiRow {
            case,
            spec: None,
            constraints: vec![format!("C={}", toric_kahler::rational::format_rational(&c))],
            profile: ProfileJson::from_exact(&prof),
            closed_form: None,
            matches_closed_form: None,
            classification: classify(&prof),
            domain,
            max_rel_err,
            extremal,
            valid,
        });
    }
    Ok(rows)
}

const CATALOGUE: [(f64, f64, f64); 9] = [
    (0.0, 0.0, 4.0),
    (0.0, 1.0, 0.0),
    (0.0, 0.5, 0.0),
    (0.0, 0.75, 0.0),
    (1.0, 0.0, 1.0),
    (1.0, 0.0, 4.0),
    (-1.0, 0.0, 1.0),
    (-1.0, 0.0, -1.0),
    (-1.0, 0.0, 0.0),
];

pub fn demo(g: &Global, args: &DemoArgs) -> Result<(), CliError> {
    let calabi = calabi_rows(g, args)?;
    let catalogue = CATALOGUE
        .iter()
        .map(|&(k, b, c)| {
            Ok(CatalogueRow {
                k,
                b,
                c,
                body: dim2_body(classify_dim2(k, b, c), 10, g.seed)?,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    write_report(
        g,
        "demo",
        DemoBody {
            seed: g.seed,
            calabi,
            catalogue,
        },
    )
}
