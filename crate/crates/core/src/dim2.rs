//! Toric surfaces with one action variable and constant Gauss curvature.
//!
//! Every potential here satisfies `s''(x) = −1/(k x² − 2 b x − c)`, so that
//! `−(1/s'')'' = 2k`. After an affine change `u = σ (x + t)`, `σ = ±1`, the
//! parameters are brought to one of the catalogue forms
//!
//! | case            | normalized `(k, b, c)` | domain in `u`        |
//! |-----------------|------------------------|----------------------|
//! | cylinder        | `(0, 0, c > 0)`        | `ℝ`                  |
//! | cone            | `(0, b > 0, 0)`        | `[0, ∞)`             |
//! | football        | `(k > 0, 0, c > 0)`    | `[−√(c/k), √(c/k)]`  |
//! | hyperboloid     | `(k < 0, 0, c > 0)`    | `ℝ`                  |
//! | hyperbolic disc | `(k < 0, 0, c < 0)`    | `[√(c/k), ∞)`        |
//! | cusp            | `(k < 0, 0, 0)`        | `(0, ∞)`             |
//!
//! The hyperbolic disc is taken on the right component; its mirror
//! `(−∞, −√(c/k)]` is the image under `u ↦ −u`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::curvature::{scalar_curvature_general, FdConfig};
use crate::error::{Error, Result};
use crate::polytope::{Facet, PolyhedralSet};
use crate::potential::Potential;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Dim2Case {
    Cylinder,
    Cone,
    Football,
    Hyperboloid,
    HyperbolicDisc,
    Cusp,
    Invalid,
}

impl Dim2Case {
    pub fn name(self) -> &'static str {
        match self {
            Dim2Case::Cylinder => "cylinder",
            Dim2Case::Cone => "cone",
            Dim2Case::Football => "football",
            Dim2Case::Hyperboloid => "hyperboloid",
            Dim2Case::HyperbolicDisc => "hyperbolic_disc",
            Dim2Case::Cusp => "cusp",
            Dim2Case::Invalid => "invalid",
        }
    }
}

/// The change `u = sign · (x + shift)` taking the caller's coordinate to the
/// normalized one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Normalization {
    pub sign: f64,
    pub shift: f64,
}

impl Normalization {
    pub const IDENTITY: Normalization = Normalization {
        sign: 1.0,
        shift: 0.0,
    };

    pub fn to_normal(&self, x: f64) -> f64 {
        self.sign * (x + self.shift)
    }

    pub fn from_normal(&self, u: f64) -> f64 {
        self.sign * u - self.shift
    }
}

/// A closed interval of the real line; `None` ends are infinite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: Option<f64>,
    pub hi: Option<f64>,
}

impl Interval {
    pub fn contains_interior(&self, x: f64) -> bool {
        self.lo.map_or(true, |l| x > l) && self.hi.map_or(true, |h| x < h)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dim2Family {
    pub k: f64,
    pub b: f64,
    pub c: f64,
    pub case: Dim2Case,
    pub normalization: Normalization,
    /// `(k, b, c)` after normalization.
    pub normalized: (f64, f64, f64),
    /// Domain in the caller's coordinate; `None` for invalid families.
    pub domain: Option<Interval>,
}

/// Classifies `s'' = −1/(k x² − 2bx − c)` and derives its domain.
///
/// `k = 0, b ≠ 0` is translated (and reflected when `b < 0`) to `c = 0, b > 0`;
/// `k ≠ 0` is translated to `b = 0`. Invalid means `s'' > 0` holds on no
/// interval: `k > 0` with normalized `c <= 0`, or `k = b = 0` with `c <= 0`.
pub fn classify_dim2(k: f64, b: f64, c: f64) -> Dim2Family {
    let (case, norm, normalized) = if k == 0.0 && b == 0.0 {
        let case = if c > 0.0 {
            Dim2Case::Cylinder
        } else {
            Dim2Case::Invalid
        };
        (case, Normalization::IDENTITY, (0.0, 0.0, c))
    } else if k == 0.0 {
        let norm = Normalization {
            sign: b.signum(),
            shift: c / (2.0 * b),
        };
        (Dim2Case::Cone, norm, (0.0, b.abs(), 0.0))
    } else {
        let norm = Normalization {
            sign: 1.0,
            shift: 0.0 - b / k,
        };
        let c2 = c + b * b / k;
        let case = match (k > 0.0, c2.partial_cmp(&0.0)) {
            (true, Some(std::cmp::Ordering::Greater)) => Dim2Case::Football,
            (true, _) => Dim2Case::Invalid,
            (false, Some(std::cmp::Ordering::Greater)) => Dim2Case::Hyperboloid,
            (false, Some(std::cmp::Ordering::Less)) => Dim2Case::HyperbolicDisc,
            (false, Some(std::cmp::Ordering::Equal)) => Dim2Case::Cusp,
            (false, None) => Dim2Case::Invalid,
        };
        (case, norm, (k, 0.0, c2))
    };
    let (nk, _, nc) = normalized;
    let normal_domain = match case {
        Dim2Case::Cylinder | Dim2Case::Hyperboloid => Some((None, None)),
        Dim2Case::Cone | Dim2Case::Cusp => Some((Some(0.0), None)),
        Dim2Case::Football => {
            let beta = (nc / nk).sqrt();
            Some((Some(-beta), Some(beta)))
        }
        Dim2Case::HyperbolicDisc => Some((Some((nc / nk).sqrt()), None)),
        Dim2Case::Invalid => None,
    };
    let domain = normal_domain.map(|(lo, hi)| {
        let (a, b) = (lo.map(|u| norm.from_normal(u)), hi.map(|u| norm.from_normal(u)));
        if norm.sign > 0.0 {
            Interval { lo: a, hi: b }
        } else {
            Interval { lo: b, hi: a }
        }
    });
    Dim2Family {
        k,
        b,
        c,
        case,
        normalization: norm,
        normalized,
        domain,
    }
}

impl Dim2Family {
    pub fn new(k: f64, b: f64, c: f64) -> Self {
        classify_dim2(k, b, c)
    }

    pub fn is_valid(&self) -> bool {
        self.case != Dim2Case::Invalid
    }

    /// `−(1/s'')'' = 2k`, the scalar curvature (twice the Gauss curvature).
    pub fn exact_scalar(&self) -> Option<f64> {
        self.is_valid().then_some(2.0 * self.k)
    }

    pub fn gauss_curvature(&self) -> Option<f64> {
        self.is_valid().then_some(self.k)
    }

    /// Coefficients `[c, 2b, −k]` of `1/s''(x) = c + 2bx − kx²`.
    pub fn inverse_second_derivative_poly(&self) -> [f64; 3] {
        [self.c, 2.0 * self.b, -self.k]
    }

    /// Cone angle `π b` (cone) or `π √(ck)` at the poles (football) or the
    /// origin (hyperbolic disc), in normalized parameters.
    pub fn cone_angle(&self) -> Option<f64> {
        let (k, b, c) = self.normalized;
        match self.case {
            Dim2Case::Cone => Some(PI * b),
            Dim2Case::Football | Dim2Case::HyperbolicDisc => Some(PI * (c * k).sqrt()),
            _ => None,
        }
    }

    /// Whether the cone points are smooth: `b = 1` or `ck = 1`.
    pub fn smooth(&self) -> Option<bool> {
        let (k, b, c) = self.normalized;
        match self.case {
            Dim2Case::Cone => Some((b - 1.0).abs() <= 1e-12),
            Dim2Case::Football | Dim2Case::HyperbolicDisc => Some((c * k - 1.0).abs() <= 1e-12),
            _ => None,
        }
    }

    /// `p` when the cone has `b = 1/p`, the flat orbifold `ℝ²/ℤ_p`.
    pub fn orbifold_order(&self) -> Option<u64> {
        if self.case != Dim2Case::Cone {
            return None;
        }
        let p = 1.0 / self.normalized.1;
        let rounded = p.round();
        ((p - rounded).abs() <= 1e-12 * p.max(1.0) && rounded >= 1.0).then_some(rounded as u64)
    }

    fn require_valid(&self) -> Result<()> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidFamily {
                k: self.k,
                b: self.b,
                c: self.c,
            })
        }
    }

    /// `s, s', s''` in the normalized coordinate `u`.
    fn normal_derivatives(&self, u: f64) -> (f64, f64, f64) {
        let (k, b, c) = self.normalized;
        match self.case {
            Dim2Case::Cylinder => (u * u / (2.0 * c), u / c, 1.0 / c),
            Dim2Case::Cone => (
                0.5 * u * u.ln() / b,
                0.5 * (u.ln() + 1.0) / b,
                0.5 / (b * u),
            ),
            Dim2Case::Football => {
                let beta = (c / k).sqrt();
                let alpha = 1.0 / (c * k).sqrt();
                let (p, m) = (u + beta, beta - u);
                (
                    0.5 * alpha * (p * p.ln() + m * m.ln()),
                    0.5 * alpha * (p.ln() - m.ln()),
                    1.0 / (c - k * u * u),
                )
            }
            Dim2Case::Hyperboloid => {
                let alpha = 1.0 / (-c * k).sqrt();
                let w = (-k / c).sqrt();
                let wu = w * u;
                (
                    alpha * (u * wu.atan() - (1.0 + wu * wu).ln() / (2.0 * w)),
                    alpha * wu.atan(),
                    1.0 / (c - k * u * u),
                )
            }
            Dim2Case::HyperbolicDisc => {
                let beta = (c / k).sqrt();
                let alpha = 1.0 / (c * k).sqrt();
                let (m, p) = (u - beta, u + beta);
                (
                    0.5 * alpha * (m * m.ln() - p * p.ln()),
                    0.5 * alpha * (m.ln() - p.ln()),
                    1.0 / (c - k * u * u),
                )
            }
            Dim2Case::Cusp => (u.ln() / k, 1.0 / (k * u), -1.0 / (k * u * u)),
            Dim2Case::Invalid => (f64::NAN, f64::NAN, f64::NAN),
        }
    }

    fn at(&self, x: f64) -> Result<(f64, f64, f64)> {
        self.require_valid()?;
        let domain = self.domain.expect("valid family has a domain");
        if !domain.contains_interior(x) {
            return Err(Error::NotInterior {
                point: vec![x],
                facet: 0,
                value: x,
            });
        }
        let (s, ds, dds) = self.normal_derivatives(self.normalization.to_normal(x));
        Ok((s, self.normalization.sign * ds, dds))
    }

    /// Metric blocks `diag(s'', 1/s'')` at `x`.
    pub fn metric_blocks(&self, x: f64) -> Result<[[f64; 2]; 2]> {
        let (_, _, dds) = self.at(x)?;
        Ok([[dds, 0.0], [0.0, 1.0 / dds]])
    }
}

/// A [`Dim2Family`] as a potential on its interval.
#[derive(Debug, Clone)]
pub struct Dim2Potential {
    family: Dim2Family,
    domain: PolyhedralSet,
}

impl Dim2Potential {
    pub fn new(family: Dim2Family) -> Result<Self> {
        family.require_valid()?;
        let interval = family.domain.expect("valid family has a domain");
        let mut facets = Vec::new();
        if let Some(lo) = interval.lo {
            facets.push(Facet::from_f64(&[1.0], -lo)?);
        }
        if let Some(hi) = interval.hi {
            facets.push(Facet::from_f64(&[-1.0], hi)?);
        }
        let witness = match (interval.lo, interval.hi) {
            (Some(l), Some(h)) => 0.5 * (l + h),
            (Some(l), None) => l + witness_offset(&family),
            (None, Some(h)) => h - witness_offset(&family),
            (None, None) => family.normalization.from_normal(0.0),
        };
        let domain = PolyhedralSet::with_interior(1, facets, vec![witness])?;
        Ok(Dim2Potential { family, domain })
    }

    pub fn family(&self) -> &Dim2Family {
        &self.family
    }

    pub fn domain(&self) -> &PolyhedralSet {
        &self.domain
    }

    pub fn value(&self, x: f64) -> Result<f64> {
        Ok(self.family.at(x)?.0)
    }

    pub fn first_derivative(&self, x: f64) -> Result<f64> {
        Ok(self.family.at(x)?.1)
    }

    pub fn second_derivative(&self, x: f64) -> Result<f64> {
        Ok(self.family.at(x)?.2)
    }
}

fn witness_offset(family: &Dim2Family) -> f64 {
    let (k, _, c) = family.normalized;
    match family.case {
        Dim2Case::HyperbolicDisc => (c / k).sqrt(),
        _ => 1.0,
    }
}

/// The catalogue potential of a valid family.
pub fn potential_dim2(family: &Dim2Family) -> Result<Potential> {
    Ok(Potential::Dim2(Dim2Potential::new(family.clone())?))
}

/// Both curvature routes at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussCheck {
    pub x: f64,
    /// `−(1/s'')''` from the general finite-difference evaluator.
    pub scalar: f64,
    /// `scalar / 2`.
    pub gauss: f64,
    /// `2k`.
    pub exact_scalar: f64,
}

/// Evaluates `−(1/s'')''` at `x` numerically, alongside the exact `2k`.
pub fn gauss_curvature_check(family: &Dim2Family, x: f64) -> Result<GaussCheck> {
    let s = potential_dim2(family)?;
    let scalar = scalar_curvature_general(&s, &[x], &FdConfig::default())?;
    Ok(GaussCheck {
        x,
        scalar,
        gauss: scalar / 2.0,
        exact_scalar: 2.0 * family.k,
    })
}
