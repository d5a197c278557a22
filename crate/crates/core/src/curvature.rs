//! Scalar curvature by the general route `Sc = −Σ_{j,k} ∂²s^{jk}/∂x_j∂x_k`.
//!
//! `s^{jk}` are the entries of `S⁻¹`, obtained by inverting the closed-form
//! Hessian at each stencil point. Second derivatives use central differences
//! with step `h = step_fraction · margin(x)`; mixed partials use the
//! four-point cross stencil. This route knows nothing about the potential's
//! family and serves as the oracle for the closed forms.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::calabi::{build_potential, classify, Classification, PolytopeSpec, RadialProfile};
use crate::error::{Error, Result};
use crate::polytope::PolyhedralSet;
use crate::potential::Potential;
use crate::sampling::{interior_samples, Exec, SampleConfig, SamplingDomain};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FdConfig {
    /// Stencil step as a fraction of the distance to the boundary.
    pub step_fraction: f64,
}

impl Default for FdConfig {
    fn default() -> Self {
        FdConfig {
            step_fraction: 1e-3,
        }
    }
}

/// The finite-difference step used at `x`.
pub fn fd_step(s: &Potential, x: &[f64], cfg: &FdConfig) -> f64 {
    cfg.step_fraction * s.domain().step_scale(x)
}

/// `−Σ ∂²s^{jk}/∂x_j∂x_k` at an interior point.
pub fn scalar_curvature_general(s: &Potential, x: &[f64], cfg: &FdConfig) -> Result<f64> {
    s.domain().require_interior(x)?;
    let n = x.len();
    let h = fd_step(s, x, cfg);
    if !(h > 0.0) {
        return Err(Error::NotInterior {
            point: x.to_vec(),
            facet: 0,
            value: h,
        });
    }
    let inv_at = |moves: &[(usize, f64)]| -> Result<DMatrix<f64>> {
        let mut p = x.to_vec();
        for &(i, d) in moves {
            p[i] += d;
        }
        s.inverse_hessian(&p)
    };
    let center = inv_at(&[])?;
    let mut total = 0.0;
    for j in 0..n {
        let plus = inv_at(&[(j, h)])?;
        let minus = inv_at(&[(j, -h)])?;
        total += (plus[(j, j)] - 2.0 * center[(j, j)] + minus[(j, j)]) / (h * h);
        for k in (j + 1)..n {
            let pp = inv_at(&[(j, h), (k, h)])?[(j, k)];
            let pm = inv_at(&[(j, h), (k, -h)])?[(j, k)];
            let mp = inv_at(&[(j, -h), (k, h)])?[(j, k)];
            let mm = inv_at(&[(j, -h), (k, -h)])?[(j, k)];
            // s^{jk} and s^{kj} contribute equally.
            total += 2.0 * (pp - pm - mp + mm) / (4.0 * h * h);
        }
    }
    if !total.is_finite() {
        return Err(Error::NonFinite(format!("Sc at {x:?}")));
    }
    Ok(-total)
}

/// Sampling, execution and stencil settings for the report builders.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct CurvatureOptions {
    pub sample: SampleConfig,
    pub exec: Exec,
    pub fd: FdConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurvatureSample {
    pub x: Vec<f64>,
    pub r: f64,
    pub sc_general: f64,
    pub sc_closed: Option<f64>,
    /// `|Sc_general − Sc_closed| / (1 + |Sc_closed|)`.
    pub rel_err: Option<f64>,
}

/// Least-squares `Sc ≈ ⟨gradient, x⟩ + intercept`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AffineFit {
    pub gradient: Vec<f64>,
    pub intercept: f64,
    /// Max absolute deviation of the samples from the fit.
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurvatureReport {
    pub samples: Vec<CurvatureSample>,
    /// Over samples where both routes are finite; `None` without a closed form.
    pub max_rel_err: Option<f64>,
    pub max_abs_sc: f64,
    pub affine_fit: AffineFit,
    /// `1e-4 · (1 + max |Sc|)`.
    pub tolerance: f64,
    pub extremal: bool,
    pub flags: Option<Classification>,
    /// Sample points where the general route failed.
    pub skipped: usize,
}

impl CurvatureReport {
    pub fn csv_header(&self) -> Vec<String> {
        let n = self.samples.first().map_or(0, |s| s.x.len());
        let mut h: Vec<String> = (1..=n).map(|i| format!("x_{i}")).collect();
        h.extend(["r", "Sc_general", "Sc_closed", "rel_err"].map(String::from));
        h
    }

    pub fn csv_records(&self) -> Vec<Vec<String>> {
        let opt = |v: Option<f64>| v.map_or_else(String::new, |v| v.to_string());
        self.samples
            .iter()
            .map(|s| {
                let mut row: Vec<String> = s.x.iter().map(f64::to_string).collect();
                row.push(s.r.to_string());
                row.push(s.sc_general.to_string());
                row.push(opt(s.sc_closed));
                row.push(opt(s.rel_err));
                row
            })
            .collect()
    }
}

/// Relative extremality threshold.
pub const TOL_EXTREMAL: f64 = 1e-4;

/// Least-squares affine fit by QR.
pub fn affine_fit(points: &[Vec<f64>], values: &[f64]) -> Result<AffineFit> {
    let n = points.first().map_or(0, Vec::len);
    if points.len() < n + 1 {
        return Err(Error::TooFewSamples {
            found: points.len(),
            needed: n + 1,
        });
    }
    let a = DMatrix::from_fn(points.len(), n + 1, |i, j| if j < n { points[i][j] } else { 1.0 });
    let b = DVector::from_column_slice(values);
    let (q, r) = a.clone().qr().unpack();
    let coef = r
        .solve_upper_triangular(&(q.transpose() * &b))
        .ok_or(Error::SingularMatrix)?;
    let residual = (a * &coef - b).amax();
    Ok(AffineFit {
        gradient: coef.rows(0, n).iter().copied().collect(),
        intercept: coef[n],
        residual,
    })
}

fn radial_profile(s: &Potential) -> Option<&RadialProfile<f64>> {
    match s {
        Potential::Radial(rp) => Some(rp.profile()),
        _ => None,
    }
}

/// Samples `Sc` by the general route on `p` (intersected with the
/// potential's sampling region) and tests whether it is affine.
pub fn verify_extremal(
    s: &Potential,
    p: &PolyhedralSet,
    n_samples: usize,
    opts: &CurvatureOptions,
) -> Result<CurvatureReport> {
    let n = s.dim();
    if n_samples < n + 2 {
        return Err(Error::TooFewSamples {
            found: n_samples,
            needed: n + 2,
        });
    }
    let domain = SamplingDomain::for_potential(s)?.intersect(p)?;
    let points = interior_samples(&domain, n_samples, &opts.sample)?;
    let evaluated = opts.exec.map(&points, |x| {
        scalar_curvature_general(s, x, &opts.fd).map(|g| (g, s.closed_form_scalar(x)))
    });
    let mut samples = Vec::with_capacity(points.len());
    let mut skipped = 0;
    for (x, res) in points.into_iter().zip(evaluated) {
        match res {
            Ok((g, closed)) => {
                let closed = closed.filter(|c| c.is_finite());
                samples.push(CurvatureSample {
                    r: x.iter().sum(),
                    x,
                    sc_general: g,
                    sc_closed: closed,
                    rel_err: closed.map(|c| (g - c).abs() / (1.0 + c.abs())),
                });
            }
            Err(_) => skipped += 1,
        }
    }
    if samples.len() < n + 2 {
        return Err(Error::TooFewSamples {
            found: samples.len(),
            needed: n + 2,
        });
    }
    let xs: Vec<Vec<f64>> = samples.iter().map(|s| s.x.clone()).collect();
    let vals: Vec<f64> = samples.iter().map(|s| s.sc_general).collect();
    let fit = affine_fit(&xs, &vals)?;
    let max_abs_sc = vals.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    let tolerance = TOL_EXTREMAL * (1.0 + max_abs_sc);
    let max_rel_err = samples
        .iter()
        .filter_map(|s| s.rel_err)
        .reduce(f64::max);
    Ok(CurvatureReport {
        extremal: fit.residual < tolerance,
        samples,
        max_rel_err,
        max_abs_sc,
        affine_fit: fit,
        tolerance,
        flags: radial_profile(s).map(classify),
        skipped,
    })
}

/// General route against the closed form `2(n+1)((n+2)Dr + nC)` on the
/// potential built from `profile` and `spec`.
pub fn cross_validate(
    profile: &RadialProfile<f64>,
    spec: &PolytopeSpec<f64>,
    n_samples: usize,
    opts: &CurvatureOptions,
) -> Result<CurvatureReport> {
    let s = build_potential(profile, spec)?;
    let mut report = verify_extremal(&s, &s.domain().clone(), n_samples, opts)?;
    report.flags = Some(classify(profile));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potential::canonical_potential;
    use approx::assert_relative_eq;

    #[test]
    fn flat_is_zero() {
        let s = canonical_potential(&PolyhedralSet::orthant(3));
        let sc = scalar_curvature_general(&s, &[0.4, 1.2, 2.0], &FdConfig::default()).unwrap();
        assert!(sc.abs() < 1e-6, "{sc}");
    }

    #[test]
    fn simplex_values() {
        let s = canonical_potential(&PolyhedralSet::standard_simplex(2));
        let sc = scalar_curvature_general(&s, &[1.0 / 3.0, 1.0 / 3.0], &FdConfig::default()).unwrap();
        assert_relative_eq!(sc, 12.0, max_relative = 1e-5);
        let s1 = canonical_potential(&PolyhedralSet::standard_simplex(1));
        let sc1 = scalar_curvature_general(&s1, &[0.3], &FdConfig::default()).unwrap();
        assert_relative_eq!(sc1, 4.0, max_relative = 1e-5);
    }

    #[test]
    fn affine_fit_recovers_plane() {
        let pts: Vec<Vec<f64>> = (0..10).map(|i| vec![i as f64, (i * i) as f64 * 0.1]).collect();
        let vals: Vec<f64> = pts.iter().map(|p| 2.0 * p[0] - 3.0 * p[1] + 0.5).collect();
        let fit = affine_fit(&pts, &vals).unwrap();
        assert_relative_eq!(fit.gradient[0], 2.0, epsilon = 1e-12);
        assert_relative_eq!(fit.gradient[1], -3.0, epsilon = 1e-12);
        assert_relative_eq!(fit.intercept, 0.5, epsilon = 1e-12);
        assert!(fit.residual < 1e-12);
    }

    #[test]
    fn flat_report_is_extremal() {
        let p = PolyhedralSet::orthant(2);
        let s = canonical_potential(&p);
        let r = verify_extremal(&s, &p, 12, &CurvatureOptions::default()).unwrap();
        assert!(r.extremal);
        assert!(r.max_abs_sc < 1e-6);
        assert_eq!(r.max_rel_err, None);
        assert_eq!(r.csv_header(), vec!["x_1", "x_2", "r", "Sc_general", "Sc_closed", "rel_err"]);
        assert_eq!(r.csv_records().len(), 12);
        assert!(verify_extremal(&s, &p, 3, &CurvatureOptions::default()).is_err());
    }
}
