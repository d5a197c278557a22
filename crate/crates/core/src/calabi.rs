//! Calabi's four-parameter family of `U(n)`-invariant extremal metrics.
//!
//! A profile `(n, A, B, C, D)` defines
//!
//! ```text
//! Q(r)   = rⁿ − A − B r − C r^{n+1} − D r^{n+2}
//! h''(r) = −1/r + r^{n−1} / Q(r)
//! f(r)   = h'' / (1 + r h'')        with 1 + r h'' = rⁿ / Q(r)
//! ```
//!
//! for the radial symplectic potential `s = ½(Σ x_i log x_i + h(r))`,
//! `r = Σ x_i`. Only `h''` and its consequences are used; `h` itself is fixed
//! up to affine terms and never enters a curvature formula.
//!
//! The parameters for a polytope `P^n_m(a, b)` come from matching the simple
//! poles of `r^{n−1}/Q` with the facet terms `(1/m)/(r − a)` and
//! `(1/m)/(b − r)`:
//!
//! ```text
//! Q(a) = 0,  Q'(a) =  m a^{n−1},   Q(b) = 0,  Q'(b) = −m b^{n−1}
//! ```
//!
//! For unbounded sets (`b = ∞`) the two equations at `b` are replaced by two
//! parameter constraints such as `D = 0, C = 0`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polytope::{Facet, PolyhedralSet};
use crate::potential::Potential;
use crate::rational::{self, parse_rational, solve_dense, Field, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Param {
    A,
    B,
    C,
    D,
}

impl Param {
    pub const ALL: [Param; 4] = [Param::A, Param::B, Param::C, Param::D];

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Param::A => "A",
            Param::B => "B",
            Param::C => "C",
            Param::D => "D",
        };
        f.write_str(s)
    }
}

impl FromStr for Param {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(Param::A),
            "B" | "b" => Ok(Param::B),
            "C" | "c" => Ok(Param::C),
            "D" | "d" => Ok(Param::D),
            other => Err(Error::Parse(format!("unknown parameter {other:?}"))),
        }
    }
}

/// `(n, A, B, C, D)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialProfile<F = f64> {
    pub n: u32,
    pub coeffs: [F; 4],
}

impl<F: Field> RadialProfile<F> {
    pub fn new(n: u32, a: F, b: F, c: F, d: F) -> Self {
        RadialProfile {
            n,
            coeffs: [a, b, c, d],
        }
    }

    pub fn zero(n: u32) -> Self {
        Self::new(n, F::zero(), F::zero(), F::zero(), F::zero())
    }

    pub fn get(&self, p: Param) -> &F {
        &self.coeffs[p.index()]
    }

    pub fn to_f64(&self) -> RadialProfile<f64> {
        RadialProfile {
            n: self.n,
            coeffs: [
                self.coeffs[0].to_f64(),
                self.coeffs[1].to_f64(),
                self.coeffs[2].to_f64(),
                self.coeffs[3].to_f64(),
            ],
        }
    }

    /// `Q(r)` in the profile's own field.
    pub fn q_at(&self, r: &F) -> F {
        let n = self.n;
        let [a, b, c, d] = &self.coeffs;
        r.powi(n)
            - a.clone()
            - b.clone() * r.clone()
            - c.clone() * r.powi(n + 1)
            - d.clone() * r.powi(n + 2)
    }

    /// `Q'(r)` in the profile's own field.
    pub fn q_prime_at(&self, r: &F) -> F {
        let n = self.n;
        let [_, b, c, d] = &self.coeffs;
        F::from_i64(n as i64) * r.powi(n.saturating_sub(1))
            - b.clone()
            - F::from_i64(n as i64 + 1) * c.clone() * r.powi(n)
            - F::from_i64(n as i64 + 2) * d.clone() * r.powi(n + 1)
    }

    /// `Q` as a dense coefficient list, index = power of `r`.
    pub fn q_coefficients(&self) -> Vec<F> {
        let n = self.n as usize;
        let mut q = vec![F::zero(); n + 3];
        q[n] = F::one();
        q[0] = q[0].clone() - self.coeffs[0].clone();
        q[1] = q[1].clone() - self.coeffs[1].clone();
        q[n + 1] = q[n + 1].clone() - self.coeffs[2].clone();
        q[n + 2] = q[n + 2].clone() - self.coeffs[3].clone();
        q
    }

    /// `f(r) = (rⁿ − Q(r)) / r^{n+1}` as an exact Laurent polynomial.
    pub fn f_laurent(&self) -> Laurent<F> {
        let n = self.n as i32;
        let mut numerator = Laurent::monomial(n, F::one());
        for (p, c) in self.q_coefficients().into_iter().enumerate() {
            numerator = numerator.add(&Laurent::monomial(p as i32, -c));
        }
        numerator.shift(-(n + 1))
    }
}

impl RadialProfile<f64> {
    pub fn q(&self, r: f64) -> f64 {
        self.q_at(&r)
    }

    pub fn q_prime(&self, r: f64) -> f64 {
        self.q_prime_at(&r)
    }

    fn check_r(&self, r: f64) -> Result<f64> {
        if !(r > 0.0) || !r.is_finite() {
            return Err(Error::InvalidPolytope(format!("radial variable must be positive, got {r}")));
        }
        let q = self.q(r);
        if q == 0.0 || !q.is_finite() {
            return Err(Error::Pole { r, q });
        }
        Ok(q)
    }

    /// `h''(r)`, `1 + r h''(r)` and `f(r)` at one radius.
    pub fn h_second(&self, r: f64) -> Result<RadialValues> {
        let q = self.check_r(r)?;
        let rn = r.powi(self.n as i32);
        let h2 = -1.0 / r + r.powi(self.n as i32 - 1) / q;
        let one_plus = rn / q;
        let f = h2 * q / rn;
        if !h2.is_finite() || !f.is_finite() {
            return Err(Error::NonFinite(format!("h''({r})")));
        }
        Ok(RadialValues {
            r,
            q,
            h_second: h2,
            one_plus_r_h2: one_plus,
            f,
        })
    }

    /// Closed form `2(n+1)((n+2) D r + n C)`.
    pub fn scalar_closed(&self, r: f64) -> f64 {
        let n = self.n as f64;
        let [_, _, c, d] = self.coeffs;
        2.0 * (n + 1.0) * ((n + 2.0) * d * r + n * c)
    }

    /// Long form `2r² f'' + 4(n+1) r f' + 2n(n+1) f` from the exact Laurent
    /// polynomial of `f`, plus the magnitude of its summands at `r`.
    pub fn scalar_long_form(&self, r: f64) -> (f64, f64) {
        let n = self.n as f64;
        let f = self.f_laurent();
        let f1 = f.derivative();
        let f2 = f1.derivative();
        let expr = f2
            .shift(2)
            .scale(2.0)
            .add(&f1.shift(1).scale(4.0 * (n + 1.0)))
            .add(&f.scale(2.0 * n * (n + 1.0)));
        let magnitude = [f2.shift(2).scale(2.0), f1.shift(1).scale(4.0 * (n + 1.0)), f.scale(2.0 * n * (n + 1.0))]
            .iter()
            .map(|l| l.eval_abs(r))
            .sum::<f64>();
        (expr.eval(r), magnitude)
    }
}

/// Values of the radial profile at one `r`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RadialValues {
    pub r: f64,
    pub q: f64,
    pub h_second: f64,
    pub one_plus_r_h2: f64,
    pub f: f64,
}

/// Agreement tolerance between the closed and long scalar-curvature forms.
pub const LONG_FORM_TOL: f64 = 1e-9;

/// Scalar curvature of a radial profile at `r`. Both the affine closed form
/// and the long form in `f` are evaluated; a disagreement beyond
/// [`LONG_FORM_TOL`] (relative to the size of the summands) is an error.
pub fn scalar_curvature_radial(profile: &RadialProfile<f64>, r: f64) -> Result<f64> {
    profile.h_second(r)?;
    let short = profile.scalar_closed(r);
    let (long, magnitude) = profile.scalar_long_form(r);
    let scale = 1.0_f64.max(short.abs()).max(magnitude);
    if (long - short).abs() > LONG_FORM_TOL * scale {
        return Err(Error::Inconsistent(format!(
            "Sc({r}): closed form {short}, long form {long}"
        )));
    }
    Ok(short)
}

/// Sparse Laurent polynomial `Σ c_p r^p`.
#[derive(Debug, Clone, PartialEq)]
pub struct Laurent<F> {
    terms: BTreeMap<i32, F>,
}

impl<F: Field> Laurent<F> {
    pub fn monomial(power: i32, coeff: F) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(power, coeff);
        Laurent { terms }.pruned()
    }

    fn pruned(mut self) -> Self {
        self.terms.retain(|_, c| !c.is_zero_value());
        self
    }

    pub fn coefficient(&self, power: i32) -> F {
        self.terms.get(&power).cloned().unwrap_or_else(F::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (p, c) in &other.terms {
            let v = terms.remove(p).unwrap_or_else(F::zero) + c.clone();
            terms.insert(*p, v);
        }
        Laurent { terms }.pruned()
    }

    pub fn scale(&self, k: F) -> Self {
        Laurent {
            terms: self
                .terms
                .iter()
                .map(|(p, c)| (*p, c.clone() * k.clone()))
                .collect(),
        }
        .pruned()
    }

    /// Multiplication by `r^k`.
    pub fn shift(&self, k: i32) -> Self {
        Laurent {
            terms: self.terms.iter().map(|(p, c)| (p + k, c.clone())).collect(),
        }
    }

    pub fn derivative(&self) -> Self {
        Laurent {
            terms: self
                .terms
                .iter()
                .filter(|(p, _)| **p != 0)
                .map(|(p, c)| (p - 1, c.clone() * F::from_i64(*p as i64)))
                .collect(),
        }
        .pruned()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, r: f64) -> f64 {
        self.terms.iter().map(|(p, c)| c.to_f64() * r.powi(*p)).sum()
    }

    fn eval_abs(&self, r: f64) -> f64 {
        self.terms
            .iter()
            .map(|(p, c)| (c.to_f64() * r.powi(*p)).abs())
            .sum()
    }
}

/// Polytope data `P^n_m(a, b)`; `b = None` is the unbounded set `P^n_m(a)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolytopeSpec<F = f64> {
    pub n: u32,
    pub m: u32,
    pub a: F,
    pub b: Option<F>,
}

impl<F: Field + PartialOrd> PolytopeSpec<F> {
    pub fn new(n: u32, m: u32, a: F, b: Option<F>) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(Error::InvalidPolytope("need n >= 1 and m >= 1".into()));
        }
        if !(a > F::zero()) {
            return Err(Error::InvalidPolytope("need a > 0".into()));
        }
        if let Some(b) = &b {
            if !(*b > a) {
                return Err(Error::InvalidPolytope("need b > a".into()));
            }
        }
        Ok(PolytopeSpec { n, m, a, b })
    }

    pub fn to_f64(&self) -> PolytopeSpec<f64> {
        PolytopeSpec {
            n: self.n,
            m: self.m,
            a: self.a.to_f64(),
            b: self.b.as_ref().map(Field::to_f64),
        }
    }

    pub fn domain(&self) -> RadialDomain {
        let label = self.m as f64;
        RadialDomain {
            n: self.n,
            lower: Some(RadialBoundary {
                r: self.a.to_f64(),
                label,
            }),
            upper: self.b.as_ref().map(|b| RadialBoundary {
                r: b.to_f64(),
                label,
            }),
        }
    }
}

impl PolytopeSpec<Rational> {
    /// The exact polytope `P^n_m(a, b)`.
    pub fn polytope(&self) -> Result<PolyhedralSet> {
        PolyhedralSet::calabi(
            self.n as usize,
            &rational::int(self.m as i64),
            &self.a,
            self.b.as_ref(),
        )
    }
}

/// A parameter pinned to a value, written `"C=-1"`, `"D=0"`, `"C=1/3"`.
#[derive(Debug, Clone, PartialEq)]
pub struct Constraint<F = f64> {
    pub param: Param,
    pub value: F,
}

impl<F: Field> Constraint<F> {
    pub fn new(param: Param, value: F) -> Self {
        Constraint { param, value }
    }

    pub fn zero(param: Param) -> Self {
        Constraint::new(param, F::zero())
    }

    pub fn parse(text: &str) -> Result<Self> {
        let (lhs, rhs) = text
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("constraint {text:?} is not of the form X=value")))?;
        Ok(Constraint {
            param: lhs.parse()?,
            value: F::from_rational(&parse_rational(rhs)?),
        })
    }
}

impl fmt::Display for Constraint<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}={}", self.param, rational::format_rational(&self.value))
    }
}

/// Named unbounded cases of the family.
pub mod presets {
    use super::*;

    /// Scalar-flat: `C = D = 0`.
    pub fn scalar_flat<F: Field>() -> Vec<Constraint<F>> {
        vec![Constraint::zero(Param::C), Constraint::zero(Param::D)]
    }

    /// Kähler–Einstein: `B = D = 0`.
    pub fn kahler_einstein<F: Field>() -> Vec<Constraint<F>> {
        vec![Constraint::zero(Param::B), Constraint::zero(Param::D)]
    }

    /// Constant scalar curvature `−2n(n+1)`: `D = 0, C = −1`.
    pub fn negative_csc<F: Field>() -> Vec<Constraint<F>> {
        vec![
            Constraint::zero(Param::D),
            Constraint::new(Param::C, -F::one()),
        ]
    }

    /// Fubini–Study (`C > 0`) on the simplex `r <= 1/C`.
    pub fn fubini_study(n: u32, c: f64) -> Result<(RadialProfile<f64>, RadialDomain)> {
        if !(c > 0.0) {
            return Err(Error::InvalidPolytope("Fubini-Study needs C > 0".into()));
        }
        Ok((
            RadialProfile::new(n, 0.0, 0.0, c, 0.0),
            RadialDomain {
                n,
                lower: None,
                upper: Some(RadialBoundary { r: 1.0 / c, label: 1.0 }),
            },
        ))
    }

    /// Bergman (`C < 0`) on the orthant.
    pub fn bergman(n: u32, c: f64) -> Result<(RadialProfile<f64>, RadialDomain)> {
        if !(c < 0.0) {
            return Err(Error::InvalidPolytope("Bergman needs C < 0".into()));
        }
        Ok((
            RadialProfile::new(n, 0.0, 0.0, c, 0.0),
            RadialDomain {
                n,
                lower: None,
                upper: None,
            },
        ))
    }
}

/// Solves the residue-matching system for `(A, B, C, D)`.
///
/// Bounded specs take no constraints; unbounded specs take exactly two on
/// distinct parameters. Over rationals the answer is exact and is checked by
/// substitution; over doubles the residual must be `<= 1e-12 ‖rhs‖`.
pub fn solve_parameters<F: Field + PartialOrd>(
    spec: &PolytopeSpec<F>,
    constraints: &[Constraint<F>],
) -> Result<RadialProfile<F>> {
    let spec = PolytopeSpec::new(spec.n, spec.m, spec.a.clone(), spec.b.clone())?;
    let needed = if spec.b.is_some() { 0 } else { 2 };
    if constraints.len() != needed {
        return Err(Error::ConstraintMismatch(format!(
            "{} boundary equations need {} constraints, got {}",
            4 - needed,
            needed,
            constraints.len()
        )));
    }
    if constraints.len() == 2 && constraints[0].param == constraints[1].param {
        return Err(Error::ConstraintMismatch(format!(
            "both constraints fix {}",
            constraints[0].param
        )));
    }

    let n = spec.n;
    let m = F::from_i64(spec.m as i64);
    let mut rows: Vec<Vec<F>> = Vec::with_capacity(4);
    let mut rhs: Vec<F> = Vec::with_capacity(4);
    let mut boundary = |r: &F, sign: F| {
        // Q(r) = 0  <=>  A + B r + C r^{n+1} + D r^{n+2} = rⁿ
        rows.push(vec![F::one(), r.clone(), r.powi(n + 1), r.powi(n + 2)]);
        rhs.push(r.powi(n));
        // Q'(r) = ±m r^{n-1}
        rows.push(vec![
            F::zero(),
            F::one(),
            F::from_i64(n as i64 + 1) * r.powi(n),
            F::from_i64(n as i64 + 2) * r.powi(n + 1),
        ]);
        rhs.push((F::from_i64(n as i64) - sign * m.clone()) * r.powi(n - 1));
    };
    boundary(&spec.a, F::one());
    if let Some(b) = &spec.b {
        boundary(b, -F::one());
    }
    for c in constraints {
        let mut row = vec![F::zero(); 4];
        row[c.param.index()] = F::one();
        rows.push(row);
        rhs.push(c.value.clone());
    }

    let x = solve_dense(&rows, &rhs).map_err(|e| match e {
        Error::SingularMatrix => Error::SingularSystem(format!(
            "n={}, m={}, a={:?}, b={:?}, constraints={:?}",
            spec.n, spec.m, spec.a, spec.b, constraints
        )),
        other => other,
    })?;

    let residual = rows
        .iter()
        .zip(&rhs)
        .map(|(row, b)| {
            let lhs = row
                .iter()
                .zip(&x)
                .fold(F::zero(), |acc, (r, v)| acc + r.clone() * v.clone());
            lhs - b.clone()
        })
        .collect::<Vec<_>>();
    if F::exact() {
        if residual.iter().any(|v| !v.is_negligible(0.0)) {
            return Err(Error::Residual {
                residual: residual.iter().map(Field::abs_f64).fold(0.0, f64::max),
                tolerance: 0.0,
            });
        }
    } else {
        let res = residual.iter().map(Field::abs_f64).fold(0.0, f64::max);
        let norm = rhs.iter().map(Field::abs_f64).fold(0.0, f64::max);
        let tolerance = 1e-12 * norm.max(f64::MIN_POSITIVE);
        if res > tolerance {
            return Err(Error::Residual {
                residual: res,
                tolerance,
            });
        }
    }
    Ok(RadialProfile {
        n,
        coeffs: [x[0].clone(), x[1].clone(), x[2].clone(), x[3].clone()],
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flags {
    pub extremal: bool,
    pub constant_scalar: bool,
    pub scalar_flat: bool,
    pub kahler_einstein: bool,
    pub ricci_flat: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub flags: Flags,
    /// `(slope, intercept)` of `Sc` as a function of `r`.
    pub sc_affine: (f64, f64),
}

pub fn classify<F: Field>(profile: &RadialProfile<F>) -> Classification {
    let zero = |p: Param| profile.get(p).is_negligible(1.0);
    let (b0, c0, d0) = (zero(Param::B), zero(Param::C), zero(Param::D));
    let n = profile.n as f64;
    Classification {
        flags: Flags {
            extremal: true,
            constant_scalar: d0,
            scalar_flat: c0 && d0,
            kahler_einstein: b0 && d0,
            ricci_flat: b0 && c0 && d0,
        },
        sc_affine: (
            2.0 * (n + 1.0) * (n + 2.0) * profile.get(Param::D).to_f64(),
            2.0 * n * (n + 1.0) * profile.get(Param::C).to_f64(),
        ),
    }
}

/// One end of the radial interval: the facet `±(r − r₀)/label`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadialBoundary {
    pub r: f64,
    pub label: f64,
}

/// Domain of a radial potential: the orthant cut by up to two radial facets.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadialDomain {
    pub n: u32,
    pub lower: Option<RadialBoundary>,
    pub upper: Option<RadialBoundary>,
}

/// Default truncation of unbounded radial domains, as a multiple of the lower end.
pub const R_MAX_FACTOR: f64 = 10.0;

impl RadialDomain {
    pub fn polytope(&self) -> Result<PolyhedralSet> {
        let n = self.n as usize;
        let mut facets = Vec::with_capacity(n + 2);
        for i in 0..n {
            let mut e = vec![0.0; n];
            e[i] = 1.0;
            facets.push(Facet::from_f64(&e, 0.0)?);
        }
        if let Some(lo) = self.lower {
            facets.push(Facet::from_f64(&vec![1.0 / lo.label; n], -lo.r / lo.label)?);
        }
        if let Some(hi) = self.upper {
            facets.push(Facet::from_f64(&vec![-1.0 / hi.label; n], hi.r / hi.label)?);
        }
        let (lo, hi) = self.r_interval();
        let mid = if hi.is_finite() { (lo + hi) / 2.0 } else { lo + 1.0_f64.max(lo) };
        PolyhedralSet::with_interior(n, facets, vec![mid / n as f64; n])
    }

    pub fn r_interval(&self) -> (f64, f64) {
        (
            self.lower.map_or(0.0, |b| b.r),
            self.upper.map_or(f64::INFINITY, |b| b.r),
        )
    }

    /// Upper end used for sampling: the real upper facet, else
    /// `R_MAX_FACTOR · max(a, 1)`.
    pub fn r_max(&self) -> f64 {
        match self.upper {
            Some(b) => b.r,
            None => R_MAX_FACTOR * self.lower.map_or(1.0, |b| b.r.max(1.0)),
        }
    }

    /// The half-space `r <= r_max` used to bound sampling regions.
    pub fn truncation(&self) -> Result<Vec<Facet>> {
        if self.upper.is_some() {
            return Ok(Vec::new());
        }
        let n = self.n as usize;
        Ok(vec![Facet::from_f64(&vec![-1.0; n], self.r_max())?])
    }

    /// If `Q` vanishes above the lower end (before the sampling cap), cut the
    /// domain there with a label-one facet. Used for unbounded specs whose
    /// profile closes up, such as Kähler–Einstein with `m < n`.
    pub fn closed_by(&self, profile: &RadialProfile<f64>) -> RadialDomain {
        if self.upper.is_some() {
            return *self;
        }
        let lo = self.lower.map_or(0.0, |b| b.r);
        let hi = 100.0 * self.r_max();
        match first_root_above(profile, lo, hi) {
            Some(r) => RadialDomain {
                upper: Some(RadialBoundary { r, label: 1.0 }),
                ..*self
            },
            None => *self,
        }
    }
}

/// First sign change of `Q` on `(lo, hi)`, located by a quadratic grid and bisection.
pub fn first_root_above(profile: &RadialProfile<f64>, lo: f64, hi: f64) -> Option<f64> {
    const STEPS: usize = 4000;
    let width = hi - lo;
    let at = |k: usize| lo + width * (k as f64 / STEPS as f64).powi(2);
    let mut prev_r = at(1);
    let sign = profile.q(prev_r).signum();
    for k in 2..=STEPS {
        let r = at(k);
        let q = profile.q(r);
        if q.signum() != sign || q == 0.0 {
            let (mut a, mut b) = (prev_r, r);
            for _ in 0..200 {
                let mid = 0.5 * (a + b);
                if mid <= a || mid >= b {
                    break;
                }
                if profile.q(mid).signum() == sign {
                    a = mid;
                } else {
                    b = mid;
                }
            }
            return Some(0.5 * (a + b));
        }
        prev_r = r;
    }
    None
}

/// Relative tolerance for the boundary conditions checked by [`build_potential`].
pub const BOUNDARY_TOL: f64 = 1e-9;

/// Checks that `profile` has the prescribed simple poles for `spec`.
pub fn check_boundary(profile: &RadialProfile<f64>, spec: &PolytopeSpec<f64>) -> Result<()> {
    if profile.n != spec.n {
        return Err(Error::ProfileMismatch(format!(
            "profile n = {}, spec n = {}",
            profile.n, spec.n
        )));
    }
    let n = spec.n as i32;
    let m = spec.m as f64;
    let mut ends = vec![(spec.a, 1.0)];
    if let Some(b) = spec.b {
        ends.push((b, -1.0));
    }
    for (r, sign) in ends {
        let scale = r.powi(n).abs().max(1.0)
            + profile.coeffs.iter().map(|c| c.abs()).sum::<f64>() * r.max(1.0).powi(n + 2);
        let q = profile.q(r);
        if q.abs() > BOUNDARY_TOL * scale {
            return Err(Error::ProfileMismatch(format!("Q({r}) = {q}, expected 0")));
        }
        let target = sign * m * r.powi(n - 1);
        let qp = profile.q_prime(r);
        if (qp - target).abs() > BOUNDARY_TOL * scale {
            return Err(Error::ProfileMismatch(format!(
                "Q'({r}) = {qp}, expected {target} (residue 1/m)"
            )));
        }
    }
    Ok(())
}

/// The radial potential of a profile solved for `spec`, on the domain
/// `P^n_m(a, b)` (closed above by the next zero of `Q` when the spec is
/// unbounded and `Q` turns negative).
pub fn build_potential(profile: &RadialProfile<f64>, spec: &PolytopeSpec<f64>) -> Result<Potential> {
    check_boundary(profile, spec)?;
    let domain = spec.domain().closed_by(profile);
    Potential::radial(profile.clone(), &domain)
}
