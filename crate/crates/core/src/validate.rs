//! Numerical evidence that a potential defines a toric Kähler metric on the
//! whole polytope: `S` positive definite on the interior and
//! `det S = (δ Π ℓ_r)⁻¹` with `δ` positive and bounded near every facet.
//!
//! Smoothness of `δ` cannot be decided from samples. A passing report means
//! the samples are consistent with the boundary conditions, nothing more.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::calabi::{PolytopeSpec, RadialProfile, R_MAX_FACTOR};
use crate::error::{Error, Result};
use crate::polytope::PolyhedralSet;
use crate::potential::{is_positive_definite, radial_inverse_hessian, Potential};
use crate::sampling::{interior_samples, Exec, SampleConfig, SamplingDomain};

/// Approach distances, as fractions of the local clearance.
pub const APPROACH_DISTANCES: [f64; 3] = [1e-2, 1e-3, 1e-4];
/// Allowed relative change of `δ` between the two closest approach points.
pub const DELTA_VARIATION: f64 = 0.1;
/// Agreement between the two `δ` routes for radial potentials.
pub const DELTA_ROUTE_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ValidationConfig {
    /// Mesh density; the positivity check uses `mesh²` interior points.
    pub mesh: usize,
    pub seed: u64,
    pub exec: Exec,
}

impl Default for ValidationConfig {
    fn default() -> Self {
        ValidationConfig {
            mesh: 8,
            seed: 0,
            exec: Exec::default(),
        }
    }
}

/// `δ` along one approach to a facet (one index) or a codimension-two face
/// (two indices).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeltaApproach {
    pub facets: Vec<usize>,
    pub foot: Vec<f64>,
    pub distances: Vec<f64>,
    pub delta: Vec<f64>,
    /// Linear extrapolation of `δ` to the face.
    pub limit: f64,
    pub variation_ok: bool,
    /// `δ` from the closed-form determinant, radial potentials only.
    pub delta_closed: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub pass: bool,
    pub reasons: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub pd_samples: usize,
    pub pd_failures: usize,
    pub pd_failure_points: Vec<Vec<f64>>,
    pub delta_values: Vec<DeltaApproach>,
    pub delta_min: f64,
    pub delta_max: f64,
    /// Min of `Q` over the radial interval, radial potentials only.
    pub q_positivity: Option<f64>,
    /// Max relative gap between general and closed-form `δ`.
    pub delta_route_max_rel_err: Option<f64>,
    pub verdict: Verdict,
}

/// `δ(x) = 1 / (det S(x) · Π ℓ_r(x))` over the facets of `s`'s domain.
pub fn delta(s: &Potential, x: &[f64]) -> Result<f64> {
    let h = s.hessian(x)?;
    let prod: f64 = s.domain().affine_values(x)?.iter().product();
    Ok(1.0 / (h.det_s * prod))
}

fn delta_closed(profile: &RadialProfile<f64>, s: &Potential, x: &[f64]) -> Result<f64> {
    let h = radial_inverse_hessian(profile, x)?;
    let prod: f64 = s.domain().affine_values(x)?.iter().product();
    Ok(1.0 / (h.det_s * prod))
}

/// Min of `Q` on a uniform mesh of `[lo, hi]`.
pub fn q_positivity_on(profile: &RadialProfile<f64>, lo: f64, hi: f64, mesh: usize) -> f64 {
    let mesh = mesh.max(2);
    (0..=mesh)
        .map(|i| profile.q(lo + (hi - lo) * i as f64 / mesh as f64))
        .fold(f64::INFINITY, f64::min)
}

/// Min of `Q` over `[a + ε, b − ε]` (bounded) or `[a + ε, r_max]`, with
/// `ε = 1e-6 (b − a)` or `1e-6 a`.
pub fn q_positivity(profile: &RadialProfile<f64>, spec: &PolytopeSpec<f64>, mesh: usize) -> f64 {
    let a = spec.a;
    match spec.b {
        Some(b) => {
            let eps = 1e-6 * (b - a);
            q_positivity_on(profile, a + eps, b - eps, mesh)
        }
        None => q_positivity_on(profile, a + 1e-6 * a, R_MAX_FACTOR * a.max(1.0), mesh),
    }
}

fn radial_interval_positivity(s: &Potential, mesh: usize) -> Option<f64> {
    let Potential::Radial(rp) = s else { return None };
    let d = rp.radial_domain();
    let (lo, hi) = d.r_interval();
    let hi = if hi.is_finite() { hi } else { d.r_max() };
    let eps = if d.lower.is_some() && d.upper.is_none() {
        1e-6 * lo
    } else {
        1e-6 * (hi - lo)
    };
    let upper_eps = if d.upper.is_some() { eps } else { 0.0 };
    Some(q_positivity_on(rp.profile(), lo + eps, hi - upper_eps, mesh))
}

struct Approach {
    facets: Vec<usize>,
    foot: Vec<f64>,
    direction: Vec<f64>,
    clearance: f64,
}

/// Foot points and inward directions for every facet and every pair of
/// facets meeting in a codimension-two face of the sampling region.
fn approaches(domain: &SamplingDomain, facets_of_s: usize, seeds: &[Vec<f64>]) -> Vec<Approach> {
    let region = &domain.region;
    let facets = region.facets();
    let n = region.dim();
    let mut out = Vec::new();
    let mut groups: Vec<Vec<usize>> = (0..facets_of_s).map(|i| vec![i]).collect();
    if n >= 2 {
        for i in 0..facets_of_s {
            for j in (i + 1)..facets_of_s {
                groups.push(vec![i, j]);
            }
        }
    }
    for group in groups {
        let rows: Vec<&[f64]> = group.iter().map(|&i| facets[i].normal_f64()).collect();
        let nmat = DMatrix::from_fn(group.len(), n, |a, b| rows[a][b]);
        let gram = &nmat * nmat.transpose();
        let Some(gram_inv) = gram.try_inverse() else { continue };
        if gram_inv.iter().any(|v| !v.is_finite()) {
            continue;
        }
        let norms = DVector::from_iterator(group.len(), group.iter().map(|&i| facets[i].norm()));
        let dir = nmat.transpose() * (&gram_inv * norms);
        let dir_norm = dir.norm();
        if !(dir_norm > 0.0) {
            continue;
        }
        let dir: Vec<f64> = dir.iter().map(|v| v / dir_norm).collect();
        let mut best: Option<(Vec<f64>, f64)> = None;
        for y in seeds {
            let l = DVector::from_iterator(group.len(), group.iter().map(|&i| facets[i].value(y)));
            let shift = nmat.transpose() * (&gram_inv * l);
            let p: Vec<f64> = y.iter().zip(shift.iter()).map(|(a, b)| a - b).collect();
            let clearance = facets
                .iter()
                .enumerate()
                .filter(|(k, _)| !group.contains(k))
                .map(|(_, f)| f.value(&p) / f.norm())
                .fold(f64::INFINITY, f64::min);
            if clearance > 0.0 && best.as_ref().map_or(true, |b| clearance > b.1) {
                best = Some((p, clearance));
            }
        }
        if let Some((foot, clearance)) = best {
            out.push(Approach {
                facets: group,
                foot,
                direction: dir,
                clearance: clearance.min(1.0),
            });
        }
    }
    out
}

/// Positive definiteness on an interior mesh and `δ` along approaches to
/// every facet and codimension-two face of `p ∩ domain(s)`.
pub fn validate_potential(s: &Potential, p: &PolyhedralSet, cfg: &ValidationConfig) -> Result<ValidationReport> {
    if cfg.mesh < 4 {
        return Err(Error::TooFewSamples {
            found: cfg.mesh,
            needed: 4,
        });
    }
    let base = SamplingDomain::for_potential(s)?;
    let domain = SamplingDomain {
        region: s.domain().intersect(p)?,
        probe: base.probe,
    };
    let sampling = base.intersect(p)?;
    let mut reasons = Vec::new();

    let pd_points = interior_samples(
        &sampling,
        cfg.mesh * cfg.mesh,
        &SampleConfig {
            seed: cfg.seed,
            margin_fraction: 0.005,
        },
    )?;
    let pd = cfg.exec.map(&pd_points, |x| {
        s.hessian_matrix(x).map(|h| is_positive_definite(&h)).unwrap_or(false)
    });
    let pd_failure_points: Vec<Vec<f64>> = pd_points
        .iter()
        .zip(&pd)
        .filter(|(_, ok)| !**ok)
        .map(|(x, _)| x.clone())
        .collect();
    let pd_failures = pd_failure_points.len();
    if pd_failures > 0 {
        reasons.push(format!("S not positive definite at {pd_failures} of {} points", pd_points.len()));
    }

    let seeds = interior_samples(
        &sampling,
        4 * cfg.mesh,
        &SampleConfig {
            seed: cfg.seed.wrapping_add(1),
            margin_fraction: 0.05,
        },
    )?;
    let n_facets = s.domain().facets().len();
    let profile = match s {
        Potential::Radial(rp) => Some(rp.profile()),
        _ => None,
    };
    let mut delta_values = Vec::new();
    let mut route_err: Option<f64> = None;
    for a in approaches(&domain, n_facets, &seeds) {
        let pts: Vec<Vec<f64>> = APPROACH_DISTANCES
            .iter()
            .map(|d| {
                a.foot
                    .iter()
                    .zip(&a.direction)
                    .map(|(f, u)| f + d * a.clearance * u)
                    .collect()
            })
            .collect();
        let general: Vec<f64> = pts.iter().map(|x| delta(s, x).unwrap_or(f64::NAN)).collect();
        let closed = profile.map(|pr| {
            pts.iter()
                .map(|x| delta_closed(pr, s, x).unwrap_or(f64::NAN))
                .collect::<Vec<f64>>()
        });
        if let Some(c) = &closed {
            for (g, c) in general.iter().zip(c) {
                let e = (g - c).abs() / c.abs();
                route_err = Some(route_err.map_or(e, |m: f64| if e.is_nan() { e } else { m.max(e) }));
            }
        }
        let (d1, d2) = (general[1], general[2]);
        let limit = d2 + (d2 - d1) / 9.0;
        let variation_ok = (d1 - d2).abs() < DELTA_VARIATION * d2;
        let label = format!("{:?}", a.facets);
        if general.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
            reasons.push(format!("δ not finite and positive approaching facets {label}"));
        } else if !(limit.is_finite() && limit > 0.0) {
            reasons.push(format!("δ limit {limit} approaching facets {label}"));
        } else if !variation_ok {
            reasons.push(format!("δ varies from {d1} to {d2} approaching facets {label}"));
        }
        delta_values.push(DeltaApproach {
            facets: a.facets,
            foot: a.foot,
            distances: APPROACH_DISTANCES.iter().map(|d| d * a.clearance).collect(),
            delta: general,
            limit,
            variation_ok,
            delta_closed: closed,
        });
    }
    let all_delta = delta_values.iter().flat_map(|d| d.delta.iter().copied());
    let delta_min = all_delta.clone().fold(f64::INFINITY, f64::min);
    let delta_max = all_delta.fold(f64::NEG_INFINITY, f64::max);

    if let Some(e) = route_err {
        if !(e <= DELTA_ROUTE_TOL) {
            reasons.push(format!("δ routes disagree by {e:e}"));
        }
    }
    let q_pos = radial_interval_positivity(s, 64 * cfg.mesh);
    if let Some(q) = q_pos {
        if !(q > 0.0) {
            reasons.push(format!("Q has minimum {q} on the radial interval"));
        }
    }
    Ok(ValidationReport {
        pd_samples: pd_points.len(),
        pd_failures,
        pd_failure_points,
        delta_values,
        delta_min,
        delta_max,
        q_positivity: q_pos,
        delta_route_max_rel_err: route_err,
        verdict: Verdict {
            pass: reasons.is_empty(),
            reasons,
        },
    })
}
