//! Symplectic potentials on polytope interiors.
//!
//! Every potential evaluates `s`, `∇s` and the Hessian `S = Hess s` in closed
//! form. The toric metric in action-angle coordinates is the block matrix
//! `diag(S, S⁻¹)`; only `S` and `S⁻¹` are ever materialized.

use nalgebra::{Complex, DMatrix, DVector};

use crate::calabi::{RadialDomain, RadialProfile};
use crate::dim2::Dim2Potential;
use crate::error::{Error, Result};
use crate::polytope::{LinearChange, PolyhedralSet};
use crate::quadrature;

/// Relative tolerance on `S · S⁻¹ = 1`.
pub const TOL_LINALG: f64 = 1e-10;

#[derive(Debug, Clone)]
pub enum Potential {
    /// `½ Σ ℓ_i log ℓ_i` over all facets.
    Canonical(PolyhedralSet),
    /// `½ (Σ x_i log x_i + h(r))` for a Calabi profile.
    Radial(RadialPotential),
    /// One action variable, constant Gauss curvature.
    Dim2(Dim2Potential),
    Sum(SumPotential),
    /// A polynomial `p(r)` in `r = Σ x_i`, smooth on all of `ℝⁿ`.
    Correction(RadialCorrection),
    /// `s(x) = s'(T x)` on `T⁻¹(P')`.
    Pullback(PullbackPotential),
}

#[derive(Debug, Clone)]
pub struct RadialPotential {
    profile: RadialProfile<f64>,
    radial: RadialDomain,
    domain: PolyhedralSet,
    /// `h` and `h'` vanish here; the affine gauge of `h` is otherwise free.
    r_ref: f64,
}

impl RadialPotential {
    pub fn profile(&self) -> &RadialProfile<f64> {
        &self.profile
    }

    pub fn radial_domain(&self) -> &RadialDomain {
        &self.radial
    }

    pub fn r_ref(&self) -> f64 {
        self.r_ref
    }

    /// `(h(r), h'(r))` by quadrature of `h''` from the reference radius.
    pub fn h_and_derivative(&self, r: f64) -> Result<(f64, f64)> {
        let h1 = quadrature::integrate(self.r_ref, r, |t| {
            self.profile.h_second(t).map(|v| v.h_second)
        })?;
        let h0 = quadrature::integrate(self.r_ref, r, |t| {
            self.profile.h_second(t).map(|v| (r - t) * v.h_second)
        })?;
        Ok((h0, h1))
    }
}

#[derive(Debug, Clone)]
pub struct SumPotential {
    terms: Vec<Potential>,
    domain: PolyhedralSet,
}

impl SumPotential {
    pub fn terms(&self) -> &[Potential] {
        &self.terms
    }
}

#[derive(Debug, Clone)]
pub struct RadialCorrection {
    /// `coeffs[k]` multiplies `r^k`.
    coeffs: Vec<f64>,
    domain: PolyhedralSet,
}

impl RadialCorrection {
    fn derivs(&self, r: f64) -> (f64, f64, f64) {
        let (mut p, mut dp, mut ddp) = (0.0, 0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            ddp = ddp * r + 2.0 * dp;
            dp = dp * r + p;
            p = p * r + c;
        }
        (p, dp, ddp)
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }
}

#[derive(Debug, Clone)]
pub struct PullbackPotential {
    inner: Box<Potential>,
    change: LinearChange,
    domain: PolyhedralSet,
}

impl PullbackPotential {
    pub fn inner(&self) -> &Potential {
        &self.inner
    }

    pub fn change(&self) -> &LinearChange {
        &self.change
    }
}

/// Hessian data at one interior point.
#[derive(Debug, Clone)]
pub struct HessianSample {
    pub point: Vec<f64>,
    pub s: DMatrix<f64>,
    pub s_inv: DMatrix<f64>,
    pub det_s: f64,
}

impl HessianSample {
    /// `max |S S⁻¹ − 1|`.
    pub fn identity_residual(&self) -> f64 {
        let n = self.s.nrows();
        (&self.s * &self.s_inv - DMatrix::<f64>::identity(n, n)).amax()
    }
}

fn x_log_x(v: f64) -> f64 {
    if v == 0.0 {
        0.0
    } else {
        v * v.ln()
    }
}

fn ones(n: usize) -> DMatrix<f64> {
    DMatrix::from_element(n, n, 1.0)
}

/// The canonical (Guillemin) potential `½ Σ ℓ_i log ℓ_i`.
pub fn canonical_potential(p: &PolyhedralSet) -> Potential {
    Potential::Canonical(p.clone())
}

impl Potential {
    /// A radial Calabi potential on the given radial domain.
    pub fn radial(profile: RadialProfile<f64>, domain: &RadialDomain) -> Result<Self> {
        if profile.n != domain.n {
            return Err(Error::DimensionMismatch {
                expected: domain.n as usize,
                got: profile.n as usize,
            });
        }
        let poly = domain.polytope()?;
        let r_ref = poly.interior_point().iter().sum();
        Ok(Potential::Radial(RadialPotential {
            profile,
            radial: *domain,
            domain: poly,
            r_ref,
        }))
    }

    pub fn sum(terms: Vec<Potential>) -> Result<Self> {
        let first = terms
            .first()
            .ok_or_else(|| Error::InvalidPolytope("empty sum".into()))?;
        let mut domain = first.domain().clone();
        for t in &terms[1..] {
            domain = domain.intersect(t.domain())?;
        }
        Ok(Potential::Sum(SumPotential { terms, domain }))
    }

    pub fn correction(dim: usize, coeffs: Vec<f64>) -> Result<Self> {
        let domain = PolyhedralSet::with_interior(dim, Vec::new(), vec![0.0; dim])?;
        Ok(Potential::Correction(RadialCorrection {
            coeffs,
            domain,
        }))
    }

    pub fn dim(&self) -> usize {
        self.domain().dim()
    }

    /// The open set where the potential is defined (its closure is the polytope).
    pub fn domain(&self) -> &PolyhedralSet {
        match self {
            Potential::Canonical(p) => p,
            Potential::Radial(r) => &r.domain,
            Potential::Dim2(d) => d.domain(),
            Potential::Sum(s) => &s.domain,
            Potential::Correction(c) => &c.domain,
            Potential::Pullback(p) => &p.domain,
        }
    }

    fn check(&self, x: &[f64]) -> Result<()> {
        self.domain().require_interior(x)
    }

    /// `s(x)`. On a canonical potential, boundary points are allowed and use
    /// `0 log 0 = 0`.
    pub fn eval(&self, x: &[f64]) -> Result<f64> {
        match self {
            Potential::Canonical(p) => {
                let vals = p.affine_values(x)?;
                if let Some((i, &v)) = vals.iter().enumerate().find(|(_, v)| **v < 0.0) {
                    return Err(Error::NotInterior {
                        point: x.to_vec(),
                        facet: i,
                        value: v,
                    });
                }
                Ok(0.5 * vals.into_iter().map(x_log_x).sum::<f64>())
            }
            Potential::Radial(rp) => {
                self.check(x)?;
                let r: f64 = x.iter().sum();
                let (h, _) = rp.h_and_derivative(r)?;
                Ok(0.5 * (x.iter().map(|&v| x_log_x(v)).sum::<f64>() + h))
            }
            Potential::Dim2(d) => {
                self.check(x)?;
                d.value(x[0])
            }
            Potential::Sum(s) => {
                self.check(x)?;
                s.terms.iter().map(|t| t.eval(x)).sum()
            }
            Potential::Correction(c) => {
                self.check(x)?;
                Ok(c.derivs(x.iter().sum()).0)
            }
            Potential::Pullback(p) => {
                self.check(x)?;
                p.inner.eval(&p.change.apply(x))
            }
        }
    }

    /// `∇s(x)`; `x` must be strictly interior.
    pub fn grad(&self, x: &[f64]) -> Result<DVector<f64>> {
        self.check(x)?;
        let n = x.len();
        match self {
            Potential::Canonical(p) => {
                let mut g = DVector::zeros(n);
                for f in p.facets() {
                    let l = f.value(x);
                    let w = 0.5 * (l.ln() + 1.0);
                    for (gi, ni) in g.iter_mut().zip(f.normal_f64()) {
                        *gi += w * ni;
                    }
                }
                Ok(g)
            }
            Potential::Radial(rp) => {
                let (_, h1) = rp.h_and_derivative(x.iter().sum())?;
                Ok(DVector::from_iterator(
                    n,
                    x.iter().map(|&v| 0.5 * (v.ln() + 1.0 + h1)),
                ))
            }
            Potential::Dim2(d) => Ok(DVector::from_element(1, d.first_derivative(x[0])?)),
            Potential::Sum(s) => s
                .terms
                .iter()
                .try_fold(DVector::zeros(n), |acc, t| Ok(acc + t.grad(x)?)),
            Potential::Correction(c) => Ok(DVector::from_element(n, c.derivs(x.iter().sum()).1)),
            Potential::Pullback(p) => {
                let g = p.inner.grad(&p.change.apply(x))?;
                Ok(transpose_times(&p.change, &g))
            }
        }
    }

    /// The closed-form Hessian `S(x)`.
    pub fn hessian_matrix(&self, x: &[f64]) -> Result<DMatrix<f64>> {
        self.check(x)?;
        let n = x.len();
        let s = match self {
            Potential::Canonical(p) => {
                let mut s = DMatrix::zeros(n, n);
                for f in p.facets() {
                    let l = f.value(x);
                    let nu = f.normal_f64();
                    for i in 0..n {
                        for j in 0..n {
                            s[(i, j)] += 0.5 * nu[i] * nu[j] / l;
                        }
                    }
                }
                s
            }
            Potential::Radial(rp) => {
                let v = rp.profile.h_second(x.iter().sum())?;
                let mut s = ones(n) * (0.5 * v.h_second);
                for i in 0..n {
                    s[(i, i)] += 0.5 / x[i];
                }
                s
            }
            Potential::Dim2(d) => DMatrix::from_element(1, 1, d.second_derivative(x[0])?),
            Potential::Sum(sp) => sp
                .terms
                .iter()
                .try_fold(DMatrix::zeros(n, n), |acc, t| Ok::<_, Error>(acc + t.hessian_matrix(x)?))?,
            Potential::Correction(c) => ones(n) * c.derivs(x.iter().sum()).2,
            Potential::Pullback(p) => {
                let inner = p.inner.hessian_matrix(&p.change.apply(x))?;
                let t = change_matrix(&p.change);
                t.transpose() * inner * t
            }
        };
        if s.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite(format!("Hessian at {x:?}")));
        }
        Ok(s)
    }

    /// `S`, a numerically inverted `S⁻¹`, and `det S`.
    pub fn hessian(&self, x: &[f64]) -> Result<HessianSample> {
        let s = self.hessian_matrix(x)?;
        let (s_inv, det_s) = invert_symmetric(&s)?;
        Ok(HessianSample {
            point: x.to_vec(),
            s,
            s_inv,
            det_s,
        })
    }

    /// `S⁻¹(x)` only.
    pub fn inverse_hessian(&self, x: &[f64]) -> Result<DMatrix<f64>> {
        Ok(invert_symmetric(&self.hessian_matrix(x)?)?.0)
    }

    /// Closed-form scalar curvature where the potential family has one.
    pub fn closed_form_scalar(&self, x: &[f64]) -> Option<f64> {
        match self {
            Potential::Radial(rp) => {
                crate::calabi::scalar_curvature_radial(&rp.profile, x.iter().sum()).ok()
            }
            Potential::Dim2(d) => d.family().exact_scalar(),
            Potential::Pullback(p) => p.inner.closed_form_scalar(&p.change.apply(x)),
            _ => None,
        }
    }
}

/// `(S⁻¹, det S)`: Cholesky when positive definite, LU otherwise.
pub fn invert_symmetric(s: &DMatrix<f64>) -> Result<(DMatrix<f64>, f64)> {
    if let Some(ch) = s.clone().cholesky() {
        let det = ch.l_dirty().diagonal().iter().map(|d| d * d).product();
        return Ok((ch.inverse(), det));
    }
    let lu = s.clone().lu();
    let det = lu.determinant();
    let inv = lu.try_inverse().ok_or(Error::SingularMatrix)?;
    Ok((inv, det))
}

pub fn is_positive_definite(s: &DMatrix<f64>) -> bool {
    s.clone().cholesky().is_some()
}

fn change_matrix(t: &LinearChange) -> DMatrix<f64> {
    let n = t.dim();
    DMatrix::from_fn(n, n, |i, j| t.matrix_f64()[i][j])
}

fn transpose_times(t: &LinearChange, g: &DVector<f64>) -> DVector<f64> {
    change_matrix(t).transpose() * g
}

/// Closed-form `S⁻¹` and `det S` of a radial Calabi potential:
/// `s^{ij} = 2(δ_ij x_i − x_i x_j f(r))`, `det S = (1 + r h'')/(2ⁿ Π x_i)`.
pub fn radial_inverse_hessian(profile: &RadialProfile<f64>, x: &[f64]) -> Result<HessianSample> {
    let n = profile.n as usize;
    if x.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: x.len(),
        });
    }
    if let Some((i, &v)) = x.iter().enumerate().find(|(_, v)| !(**v > 0.0)) {
        return Err(Error::NotInterior {
            point: x.to_vec(),
            facet: i,
            value: v,
        });
    }
    let r: f64 = x.iter().sum();
    let v = profile.h_second(r)?;
    if !(v.one_plus_r_h2 > 0.0) {
        return Err(Error::Degenerate {
            r,
            value: v.one_plus_r_h2,
        });
    }
    let mut s = ones(n) * (0.5 * v.h_second);
    let mut s_inv = DMatrix::zeros(n, n);
    for i in 0..n {
        s[(i, i)] += 0.5 / x[i];
        for j in 0..n {
            let delta = if i == j { x[i] } else { 0.0 };
            s_inv[(i, j)] = 2.0 * (delta - x[i] * x[j] * v.f);
        }
    }
    let det_s = v.one_plus_r_h2 / (2f64.powi(n as i32) * x.iter().product::<f64>());
    let sample = HessianSample {
        point: x.to_vec(),
        s,
        s_inv,
        det_s,
    };
    let scale = sample.s.amax() * sample.s_inv.amax();
    let residual = sample.identity_residual();
    if residual > TOL_LINALG * scale.max(1.0) {
        return Err(Error::Inconsistent(format!(
            "S S⁻¹ deviates from identity by {residual:e} at {x:?}"
        )));
    }
    Ok(sample)
}

/// Holomorphic coordinates `z = ∂s/∂x + i y`.
pub fn complex_coordinates(s: &Potential, x: &[f64], y: &[f64]) -> Result<Vec<Complex<f64>>> {
    if y.len() != x.len() {
        return Err(Error::DimensionMismatch {
            expected: x.len(),
            got: y.len(),
        });
    }
    let g = s.grad(x)?;
    Ok(g.iter().zip(y).map(|(&u, &v)| Complex::new(u, v)).collect())
}

/// The pullback `s = s' ∘ T`, defined on `T⁻¹(P')`. Hessians satisfy
/// `S(x) = Tᵗ S'(T x) T`.
pub fn transform_potential(s: &Potential, t: &LinearChange) -> Result<Potential> {
    if t.dim() != s.dim() {
        return Err(Error::DimensionMismatch {
            expected: s.dim(),
            got: t.dim(),
        });
    }
    let domain = s.domain().transform(t)?;
    Ok(Potential::Pullback(PullbackPotential {
        inner: Box::new(s.clone()),
        change: t.clone(),
        domain,
    }))
}

/// Central-difference Hessian of `s.eval` with step `step_fraction · margin(x)`,
/// refined once by Richardson extrapolation (steps `h` and `h/2`).
pub fn fd_hessian(s: &Potential, x: &[f64], step_fraction: f64) -> Result<DMatrix<f64>> {
    let margin = s.domain().step_scale(x);
    let h = step_fraction * margin;
    let coarse = central_hessian(s, x, h)?;
    let fine = central_hessian(s, x, h / 2.0)?;
    Ok((fine * 4.0 - coarse) / 3.0)
}

fn central_hessian(s: &Potential, x: &[f64], h: f64) -> Result<DMatrix<f64>> {
    let n = x.len();
    let f = |dx: &[(usize, f64)]| -> Result<f64> {
        let mut p = x.to_vec();
        for &(i, d) in dx {
            p[i] += d;
        }
        s.eval(&p)
    };
    let f0 = f(&[])?;
    let mut hess = DMatrix::zeros(n, n);
    for i in 0..n {
        hess[(i, i)] = (f(&[(i, h)])? - 2.0 * f0 + f(&[(i, -h)])?) / (h * h);
        for j in (i + 1)..n {
            let v = (f(&[(i, h), (j, h)])? - f(&[(i, h), (j, -h)])? - f(&[(i, -h), (j, h)])?
                + f(&[(i, -h), (j, -h)])?)
                / (4.0 * h * h);
            hess[(i, j)] = v;
            hess[(j, i)] = v;
        }
    }
    Ok(hess)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calabi::{PolytopeSpec, RadialBoundary};
    use crate::rational::int;
    use approx::assert_relative_eq;

    #[test]
    fn flat_hessian_at_half_is_identity() {
        let s = canonical_potential(&PolyhedralSet::orthant(3));
        let h = s.hessian(&[0.5, 0.5, 0.5]).unwrap();
        assert_relative_eq!(h.s, DMatrix::identity(3, 3), epsilon = 1e-15);
        assert_relative_eq!(h.det_s, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn segment_second_derivative() {
        let s = canonical_potential(&PolyhedralSet::standard_simplex(1));
        let h = s.hessian_matrix(&[0.5]).unwrap();
        assert_relative_eq!(h[(0, 0)], 2.0, epsilon = 1e-15);
    }

    #[test]
    fn boundary_value_uses_zero_log_zero() {
        let s = canonical_potential(&PolyhedralSet::standard_simplex(2));
        let v = s.eval(&[0.0, 0.5]).unwrap();
        assert_relative_eq!(v, 0.5 * (0.5 * 0.5f64.ln() * 2.0), epsilon = 1e-15);
        assert!(s.grad(&[0.0, 0.5]).is_err());
        assert!(s.hessian(&[0.7, 0.5]).is_err());
    }

    #[test]
    fn zero_profile_matches_orthant_canonical() {
        let domain = RadialDomain {
            n: 3,
            lower: None,
            upper: None,
        };
        let radial = Potential::radial(RadialProfile::zero(3), &domain).unwrap();
        let flat = canonical_potential(&PolyhedralSet::orthant(3));
        for k in 0..10 {
            let x = [0.1 + 0.3 * k as f64, 1.7 - 0.1 * k as f64, 0.05 + 0.01 * k as f64];
            assert_relative_eq!(
                radial.hessian_matrix(&x).unwrap(),
                flat.hessian_matrix(&x).unwrap(),
                max_relative = 1e-14
            );
        }
    }

    #[test]
    fn radial_closed_inverse_matches_numeric() {
        let p = RadialProfile::new(2, 1.0, 0.0, 0.0, 0.0);
        let spec = PolytopeSpec::new(2, 2, 1.0, None).unwrap();
        let s = crate::calabi::build_potential(&p, &spec).unwrap();
        let x = [0.9, 1.3];
        let closed = radial_inverse_hessian(&p, &x).unwrap();
        let numeric = s.hessian(&x).unwrap();
        assert_relative_eq!(closed.s_inv, numeric.s_inv, max_relative = 1e-12);
        assert_relative_eq!(closed.det_s, numeric.det_s, max_relative = 1e-12);
    }

    #[test]
    fn zero_profile_inverse_at_ones() {
        let h = radial_inverse_hessian(&RadialProfile::zero(2), &[1.0, 1.0]).unwrap();
        assert_relative_eq!(h.s_inv, DMatrix::from_diagonal_element(2, 2, 2.0), epsilon = 1e-15);
        assert_relative_eq!(h.det_s, 0.25, epsilon = 1e-15);
    }

    #[test]
    fn degenerate_profile_is_rejected() {
        // Q(r) = r² − 4 is negative at r = 1, so 1 + r h'' < 0.
        let p = RadialProfile::new(2, 4.0, 0.0, 0.0, 0.0);
        assert!(matches!(
            radial_inverse_hessian(&p, &[0.5, 0.5]),
            Err(Error::Degenerate { .. })
        ));
        assert!(matches!(
            radial_inverse_hessian(&p, &[1.0, 1.0]),
            Err(Error::Pole { .. })
        ));
    }

    #[test]
    fn flat_complex_coordinates() {
        let s = canonical_potential(&PolyhedralSet::orthant(2));
        let z = complex_coordinates(&s, &[1.0, 1.0], &[0.0, 0.0]).unwrap();
        assert!(z.iter().all(|c| (c.re - 0.5).abs() < 1e-15 && c.im == 0.0));
        let y = [0.3, 2.0];
        let z1 = complex_coordinates(&s, &[0.4, 2.0], &y).unwrap();
        let z2 = complex_coordinates(&s, &[0.4, 2.0], &[y[0] + std::f64::consts::TAU, y[1]]).unwrap();
        assert_relative_eq!(z2[0].im - z1[0].im, std::f64::consts::TAU, epsilon = 1e-15);
        assert_eq!(z2[0].re, z1[0].re);
    }

    #[test]
    fn simplex_complex_coordinate_at_symmetric_point() {
        let s = canonical_potential(&PolyhedralSet::standard_simplex(1));
        let z = complex_coordinates(&s, &[0.5], &[0.0]).unwrap();
        assert!(z[0].re.abs() < 1e-15);
    }

    #[test]
    fn correction_and_sum_are_additive() {
        let base = canonical_potential(&PolyhedralSet::standard_simplex(2));
        let corr = Potential::correction(2, vec![1.0, -2.0, 3.0, 0.5]).unwrap();
        let sum = Potential::sum(vec![base.clone(), corr.clone()]).unwrap();
        let x = [0.2, 0.3];
        assert_eq!(
            sum.hessian_matrix(&x).unwrap(),
            base.hessian_matrix(&x).unwrap() + corr.hessian_matrix(&x).unwrap()
        );
        assert_eq!(
            sum.grad(&x).unwrap(),
            base.grad(&x).unwrap() + corr.grad(&x).unwrap()
        );
        // p(r) = 1 - 2r + 3r² + r³/2 at r = 1/2
        assert_relative_eq!(corr.eval(&x).unwrap(), 1.0 - 1.0 + 0.75 + 0.0625, epsilon = 1e-15);
        assert_relative_eq!(corr.hessian_matrix(&x).unwrap()[(0, 1)], 6.0 + 1.5, epsilon = 1e-15);
    }

    #[test]
    fn pullback_by_identity_is_unchanged() {
        let s = canonical_potential(&PolyhedralSet::standard_simplex(2));
        let t = transform_potential(&s, &LinearChange::identity(2)).unwrap();
        let x = [0.2, 0.45];
        assert_eq!(t.eval(&x).unwrap(), s.eval(&x).unwrap());
        assert_eq!(t.hessian_matrix(&x).unwrap(), s.hessian_matrix(&x).unwrap());
    }

    #[test]
    fn canonical_of_transformed_set_is_pullback() {
        let p = PolyhedralSet::calabi(2, &int(2), &int(1), Some(&int(3))).unwrap();
        let t = LinearChange::hirzebruch(2);
        let pulled = transform_potential(&canonical_potential(&p), &t).unwrap();
        let direct = canonical_potential(&p.transform(&t).unwrap());
        let x = pulled.domain().interior_point().to_vec();
        assert_relative_eq!(pulled.eval(&x).unwrap(), direct.eval(&x).unwrap(), max_relative = 1e-13);
        assert_relative_eq!(
            pulled.hessian_matrix(&x).unwrap(),
            direct.hessian_matrix(&x).unwrap(),
            max_relative = 1e-13
        );
    }

    #[test]
    fn radial_h_gauge_vanishes_at_reference() {
        let (p, d) = crate::calabi::presets::fubini_study(2, 1.0).unwrap();
        let s = Potential::radial(p, &d).unwrap();
        let Potential::Radial(rp) = &s else { unreachable!() };
        let (h, h1) = rp.h_and_derivative(rp.r_ref()).unwrap();
        assert_eq!((h, h1), (0.0, 0.0));
        // h'' = 1/(1 - r): h'(r) = -log(1 - r) + log(1 - r_ref)
        let r = 0.3;
        let (_, h1) = rp.h_and_derivative(r).unwrap();
        let want = -(1.0 - r).ln() + (1.0 - rp.r_ref()).ln();
        assert_relative_eq!(h1, want, max_relative = 1e-12);
        let _ = RadialBoundary { r: 1.0, label: 1.0 };
    }
}
