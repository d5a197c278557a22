//! Reproducible interior sample points and the point-parallel executor.
//!
//! Points come from a Halton sequence with a seeded Cranley–Patterson shift,
//! mapped into the bounding box of the sampling region and kept when their
//! distance to the boundary is at least a fraction of the box diameter.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polytope::{PolyhedralSet, DEFAULT_PROBE};
use crate::potential::Potential;

const PRIMES: [u32; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];

/// Sequential or rayon-parallel evaluation over sample points. Without the
/// `parallel` feature both variants run sequentially.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    /// `f` at every point, in input order.
    pub fn map<T, F>(self, points: &[Vec<f64>], f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(&[f64]) -> T + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                points.par_iter().map(|p| f(p)).collect()
            }
            _ => points.iter().map(|p| f(p)).collect(),
        }
    }
}

/// Region to sample: a bounded polyhedral set and the probe half-width used
/// for its bounding box.
#[derive(Debug, Clone)]
pub struct SamplingDomain {
    pub region: PolyhedralSet,
    pub probe: f64,
}

impl SamplingDomain {
    pub fn from_set(p: &PolyhedralSet) -> Self {
        let extent = p.interior_point().iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        SamplingDomain {
            region: p.clone(),
            probe: DEFAULT_PROBE.max(4.0 * extent),
        }
    }

    /// The potential's domain, with unbounded radial directions cut at
    /// `r_max`.
    pub fn for_potential(s: &Potential) -> Result<Self> {
        let mut d = SamplingDomain::from_set(&truncated_region(s)?);
        if let Some(r) = radial_cap(s) {
            d.probe = d.probe.max(r);
        }
        Ok(d)
    }

    /// Restricts to `p` as well.
    pub fn intersect(&self, p: &PolyhedralSet) -> Result<Self> {
        let other = SamplingDomain::from_set(p);
        Ok(SamplingDomain {
            region: self.region.intersect(p)?,
            probe: self.probe.max(other.probe),
        })
    }

    pub fn bounding_box(&self) -> Result<(Vec<f64>, Vec<f64>)> {
        self.region.bounding_box(self.probe)
    }

    /// Largest side of the bounding box.
    pub fn diameter(&self) -> Result<f64> {
        let (lo, hi) = self.bounding_box()?;
        Ok(lo.iter().zip(&hi).map(|(l, h)| h - l).fold(0.0, f64::max))
    }
}

fn truncated_region(s: &Potential) -> Result<PolyhedralSet> {
    match s {
        Potential::Radial(rp) => {
            let extra = rp.radial_domain().truncation()?;
            if extra.is_empty() {
                return Ok(s.domain().clone());
            }
            let cut = PolyhedralSet::new(s.dim(), extra)?;
            s.domain().intersect(&cut)
        }
        Potential::Pullback(p) => truncated_region(p.inner())?.transform(p.change()),
        Potential::Sum(sum) => sum
            .terms()
            .iter()
            .try_fold(s.domain().clone(), |acc, t| acc.intersect(&truncated_region(t)?)),
        _ => Ok(s.domain().clone()),
    }
}

fn radial_cap(s: &Potential) -> Option<f64> {
    match s {
        Potential::Radial(rp) => Some(rp.radial_domain().r_max()),
        Potential::Pullback(p) => radial_cap(p.inner()).map(|r| {
            // Coordinates of the pulled-back set scale by at most ‖T⁻¹‖.
            let inv = p.change().inverse();
            let norm = inv
                .matrix_f64()
                .iter()
                .map(|row| row.iter().map(|v| v.abs()).sum::<f64>())
                .fold(0.0, f64::max);
            r * norm.max(1.0)
        }),
        Potential::Sum(sum) => sum.terms().iter().filter_map(radial_cap).reduce(f64::max),
        _ => None,
    }
}

/// Placement parameters for [`interior_samples`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleConfig {
    pub seed: u64,
    /// Required distance to the boundary as a fraction of the box diameter.
    pub margin_fraction: f64,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig {
            seed: 0,
            margin_fraction: 0.05,
        }
    }
}

fn radical_inverse(mut i: u64, base: u32) -> f64 {
    let b = base as u64;
    let inv = 1.0 / base as f64;
    let (mut f, mut v) = (inv, 0.0);
    while i > 0 {
        v += (i % b) as f64 * f;
        i /= b;
        f *= inv;
    }
    v
}

/// Shifted Halton points in `[0, 1)^dim`.
pub struct Halton {
    shift: Vec<f64>,
    index: u64,
}

impl Halton {
    pub fn new(dim: usize, seed: u64) -> Result<Self> {
        if dim > PRIMES.len() {
            return Err(Error::InvalidPolytope(format!(
                "sampling supports at most {} dimensions",
                PRIMES.len()
            )));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let shift = (0..dim).map(|_| rng.gen::<f64>()).collect();
        Ok(Halton { shift, index: 0 })
    }
}

impl Iterator for Halton {
    type Item = Vec<f64>;

    fn next(&mut self) -> Option<Vec<f64>> {
        self.index += 1;
        let i = self.index;
        Some(
            self.shift
                .iter()
                .zip(PRIMES)
                .map(|(s, p)| (radical_inverse(i, p) + s).fract())
                .collect(),
        )
    }
}

/// `count` interior points of `domain` at distance `>= margin_fraction · diam`
/// from the boundary. The threshold is halved when the region is too thin
/// to supply enough points.
pub fn interior_samples(domain: &SamplingDomain, count: usize, cfg: &SampleConfig) -> Result<Vec<Vec<f64>>> {
    let n = domain.region.dim();
    let (lo, hi) = domain.bounding_box()?;
    let diam = lo.iter().zip(&hi).map(|(l, h)| h - l).fold(0.0, f64::max);
    let mut threshold = cfg.margin_fraction * diam;
    let budget = 200 * count.max(1) + 2000;
    let mut best = 0;
    for _ in 0..16 {
        let mut out = Vec::with_capacity(count);
        for u in Halton::new(n, cfg.seed)?.take(budget) {
            let x: Vec<f64> = (0..n).map(|j| lo[j] + u[j] * (hi[j] - lo[j])).collect();
            if domain.region.margin(&x) >= threshold && domain.region.contains_interior(&x, 0.0)? {
                out.push(x);
                if out.len() == count {
                    return Ok(out);
                }
            }
        }
        best = best.max(out.len());
        threshold *= 0.5;
    }
    Err(Error::TooFewSamples {
        found: best,
        needed: count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calabi::RadialDomain;
    use crate::rational::int;

    #[test]
    fn radical_inverse_base_two() {
        let v: Vec<f64> = (1..5).map(|i| radical_inverse(i, 2)).collect();
        assert_eq!(v, vec![0.5, 0.25, 0.75, 0.125]);
    }

    #[test]
    fn samples_are_deterministic_and_interior() {
        let p = PolyhedralSet::standard_simplex(3);
        let d = SamplingDomain::from_set(&p);
        let cfg = SampleConfig {
            seed: 11,
            ..Default::default()
        };
        let a = interior_samples(&d, 40, &cfg).unwrap();
        let b = interior_samples(&d, 40, &cfg).unwrap();
        assert_eq!(a, b);
        for x in &a {
            assert!(p.margin(x) >= 0.05 * 1.0 - 1e-15);
        }
        let other = interior_samples(&d, 40, &SampleConfig { seed: 12, ..cfg }).unwrap();
        assert_ne!(a, other);
    }

    #[test]
    fn unbounded_radial_domain_is_truncated() {
        let dom = RadialDomain {
            n: 2,
            lower: Some(crate::calabi::RadialBoundary { r: 2.0, label: 1.0 }),
            upper: None,
        };
        let s = Potential::radial(crate::calabi::RadialProfile::new(2, 4.0, 0.0, 0.0, 0.0), &dom).unwrap();
        let d = SamplingDomain::for_potential(&s).unwrap();
        let (_, hi) = d.bounding_box().unwrap();
        assert!((hi[0] - 20.0).abs() < 1e-9);
        let pts = interior_samples(&d, 30, &SampleConfig::default()).unwrap();
        assert!(pts.iter().all(|x| x.iter().sum::<f64>() > 2.0 && x.iter().sum::<f64>() < 20.0));
    }

    #[test]
    fn thin_region_relaxes_threshold() {
        let p = PolyhedralSet::hirzebruch(&int(3), &int(1), &int(2)).unwrap();
        let d = SamplingDomain::from_set(&p);
        let pts = interior_samples(&d, 30, &SampleConfig::default()).unwrap();
        assert_eq!(pts.len(), 30);
    }

    #[test]
    fn exec_variants_agree() {
        let pts: Vec<Vec<f64>> = (0..100).map(|i| vec![i as f64, 1.0]).collect();
        let f = |x: &[f64]| x[0] * x[1] + 1.0;
        assert_eq!(Exec::Sequential.map(&pts, f), Exec::Parallel.map(&pts, f));
    }
}
