//! Facet-presented rational polyhedral sets.
//!
//! Sign convention used everywhere in this crate: a facet with inward normal
//! `ν` and offset `c` has affine defining function `ℓ(x) = ⟨x, ν⟩ + c`, and
//! the set is `{x : ℓ_i(x) >= 0 for all i}`. Facet labels are carried by the
//! length of the normal (a normal `ν/m` encodes label `m` on the primitive
//! normal `ν`).
//!
//! Sets may be unbounded. Only a nonempty interior is checked; the Delzant
//! smoothness conditions are not verified.

use minilp::{ComparisonOp, OptimizationDirection, Problem};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, int, invert_dense, mat_vec, Rational};

/// Half-width of the probe box used when searching for interior witnesses
/// and bounding boxes of unbounded sets.
pub const DEFAULT_PROBE: f64 = 10.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "FacetWire", into = "FacetWire")]
pub struct Facet {
    normal: Vec<Rational>,
    offset: Rational,
    normal_f64: Vec<f64>,
    offset_f64: f64,
    norm: f64,
}

#[derive(Serialize, Deserialize)]
struct FacetWire {
    #[serde(with = "rational::serde_rational_vec")]
    normal: Vec<Rational>,
    #[serde(with = "rational::serde_rational")]
    offset: Rational,
}

impl TryFrom<FacetWire> for Facet {
    type Error = Error;
    fn try_from(w: FacetWire) -> Result<Self> {
        Facet::new(w.normal, w.offset)
    }
}

impl From<Facet> for FacetWire {
    fn from(f: Facet) -> Self {
        FacetWire {
            normal: f.normal,
            offset: f.offset,
        }
    }
}

impl Facet {
    pub fn new(normal: Vec<Rational>, offset: Rational) -> Result<Self> {
        if normal.is_empty() || normal.iter().all(Zero::is_zero) {
            return Err(Error::InvalidPolytope("zero facet normal".into()));
        }
        let normal_f64: Vec<f64> = normal.iter().map(rational::to_f64).collect();
        let norm = normal_f64.iter().map(|v| v * v).sum::<f64>().sqrt();
        let offset_f64 = rational::to_f64(&offset);
        Ok(Facet {
            normal,
            offset,
            normal_f64,
            offset_f64,
            norm,
        })
    }

    /// Builds a facet from doubles, stored as their exact binary rationals.
    pub fn from_f64(normal: &[f64], offset: f64) -> Result<Self> {
        let normal = normal
            .iter()
            .map(|&v| rational::from_f64(v))
            .collect::<Result<Vec<_>>>()?;
        Facet::new(normal, rational::from_f64(offset)?)
    }

    pub fn normal(&self) -> &[Rational] {
        &self.normal
    }

    pub fn offset(&self) -> &Rational {
        &self.offset
    }

    pub fn normal_f64(&self) -> &[f64] {
        &self.normal_f64
    }

    pub fn offset_f64(&self) -> f64 {
        self.offset_f64
    }

    /// Euclidean length of the normal.
    pub fn norm(&self) -> f64 {
        self.norm
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    /// `ℓ(x) = ⟨x, ν⟩ + offset`.
    pub fn value(&self, x: &[f64]) -> f64 {
        self.normal_f64
            .iter()
            .zip(x)
            .map(|(n, v)| n * v)
            .sum::<f64>()
            + self.offset_f64
    }

    pub fn value_exact(&self, x: &[Rational]) -> Rational {
        self.normal
            .iter()
            .zip(x)
            .fold(self.offset.clone(), |acc, (n, v)| acc + n * v)
    }

    /// Euclidean distance from `x` to the facet hyperplane, signed.
    pub fn distance(&self, x: &[f64]) -> f64 {
        self.value(x) / self.norm
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "PolyhedralSetWire", into = "PolyhedralSetWire")]
pub struct PolyhedralSet {
    dim: usize,
    facets: Vec<Facet>,
    interior: Vec<f64>,
}

impl PartialEq for PolyhedralSet {
    /// Facet-wise exact equality; the stored witness is not compared.
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.facets == other.facets
    }
}

#[derive(Serialize, Deserialize)]
struct PolyhedralSetWire {
    dim: usize,
    facets: Vec<Facet>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    interior: Option<Vec<f64>>,
}

impl TryFrom<PolyhedralSetWire> for PolyhedralSet {
    type Error = Error;
    fn try_from(w: PolyhedralSetWire) -> Result<Self> {
        match w.interior {
            Some(p) => PolyhedralSet::with_interior(w.dim, w.facets, p),
            None => PolyhedralSet::new(w.dim, w.facets),
        }
    }
}

impl From<PolyhedralSet> for PolyhedralSetWire {
    fn from(p: PolyhedralSet) -> Self {
        PolyhedralSetWire {
            dim: p.dim,
            facets: p.facets,
            interior: Some(p.interior),
        }
    }
}

impl PolyhedralSet {
    /// Builds the set and finds an interior witness by maximizing the
    /// distance to the boundary over the default probe box.
    pub fn new(dim: usize, facets: Vec<Facet>) -> Result<Self> {
        Self::check_dims(dim, &facets)?;
        let (point, margin) = chebyshev_center(dim, &facets, DEFAULT_PROBE)?;
        if margin <= 0.0 {
            return Err(Error::EmptyInterior);
        }
        Ok(PolyhedralSet {
            dim,
            facets,
            interior: point,
        })
    }

    /// Builds the set with a caller-supplied interior point.
    pub fn with_interior(dim: usize, facets: Vec<Facet>, interior: Vec<f64>) -> Result<Self> {
        Self::check_dims(dim, &facets)?;
        if interior.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: interior.len(),
            });
        }
        if let Some((i, v)) = facets
            .iter()
            .map(|f| f.value(&interior))
            .enumerate()
            .find(|(_, v)| *v <= 0.0)
        {
            return Err(Error::NotInterior {
                point: interior,
                facet: i,
                value: v,
            });
        }
        Ok(PolyhedralSet {
            dim,
            facets,
            interior,
        })
    }

    fn check_dims(dim: usize, facets: &[Facet]) -> Result<()> {
        if dim == 0 {
            return Err(Error::InvalidPolytope("dimension must be positive".into()));
        }
        for f in facets {
            if f.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: f.dim(),
                });
            }
        }
        Ok(())
    }

    /// The positive orthant `{x_i >= 0}`.
    pub fn orthant(n: usize) -> Self {
        let facets = (0..n).map(|i| coordinate_facet(n, i)).collect();
        PolyhedralSet::with_interior(n, facets, vec![1.0; n]).expect("orthant")
    }

    /// The simplex `{x_i >= 0, r <= size}` with `r = Σ x_i`.
    pub fn simplex(n: usize, size: &Rational) -> Result<Self> {
        let mut facets: Vec<Facet> = (0..n).map(|i| coordinate_facet(n, i)).collect();
        facets.push(Facet::new(vec![int(-1); n], size.clone())?);
        let c = rational::to_f64(size) / (n as f64 + 1.0);
        PolyhedralSet::with_interior(n, facets, vec![c; n])
    }

    pub fn standard_simplex(n: usize) -> Self {
        Self::simplex(n, &int(1)).expect("standard simplex")
    }

    /// The closed interval `[lo, hi]` in one dimension; either end may be open-ended.
    pub fn interval(lo: Option<&Rational>, hi: Option<&Rational>) -> Result<Self> {
        let mut facets = Vec::new();
        if let Some(lo) = lo {
            facets.push(Facet::new(vec![int(1)], -lo.clone())?);
        }
        if let Some(hi) = hi {
            facets.push(Facet::new(vec![int(-1)], hi.clone())?);
        }
        let w = match (lo, hi) {
            (Some(l), Some(h)) => (rational::to_f64(l) + rational::to_f64(h)) / 2.0,
            (Some(l), None) => rational::to_f64(l) + 1.0,
            (None, Some(h)) => rational::to_f64(h) - 1.0,
            (None, None) => 0.0,
        };
        PolyhedralSet::with_interior(1, facets, vec![w])
    }

    /// `P^n_m(a, b)`: `ℓ_i = x_i`, `ℓ_{n+1} = (r - a)/m` and, when `b` is
    /// given, `ℓ_{n+2} = (b - r)/m`.
    pub fn calabi(n: usize, m: &Rational, a: &Rational, b: Option<&Rational>) -> Result<Self> {
        if n == 0 || *m <= Zero::zero() || *a <= Zero::zero() {
            return Err(Error::InvalidPolytope("need n >= 1, m > 0, a > 0".into()));
        }
        let inv_m = Rational::one() / m;
        let mut facets: Vec<Facet> = (0..n).map(|i| coordinate_facet(n, i)).collect();
        facets.push(Facet::new(vec![inv_m.clone(); n], -(a * &inv_m))?);
        let af = rational::to_f64(a);
        let r_mid = match b {
            Some(b) => {
                if b <= a {
                    return Err(Error::InvalidPolytope("need a < b".into()));
                }
                facets.push(Facet::new(vec![-inv_m.clone(); n], b * &inv_m)?);
                (af + rational::to_f64(b)) / 2.0
            }
            None => 2.0 * af,
        };
        PolyhedralSet::with_interior(n, facets, vec![r_mid / n as f64; n])
    }

    /// The standard Delzant trapezoid of the Hirzebruch surface `H²_m`:
    /// `a/m <= x_1 <= b/m`, `0 <= x_2 <= m x_1`.
    pub fn hirzebruch(m: &Rational, a: &Rational, b: &Rational) -> Result<Self> {
        let facets = vec![
            Facet::new(vec![m.clone(), int(-1)], int(0))?,
            Facet::new(vec![int(0), int(1)], int(0))?,
            Facet::new(vec![int(1), int(0)], -(a / m))?,
            Facet::new(vec![int(-1), int(0)], b / m)?,
        ];
        let mf = rational::to_f64(m);
        let x1 = (rational::to_f64(a) + rational::to_f64(b)) / (2.0 * mf);
        PolyhedralSet::with_interior(2, facets, vec![x1, mf * x1 / 2.0])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn interior_point(&self) -> &[f64] {
        &self.interior
    }

    fn check_point(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.len(),
            });
        }
        Ok(())
    }

    /// `ℓ_i(x)` in facet order.
    pub fn affine_values(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check_point(x)?;
        Ok(self.facets.iter().map(|f| f.value(x)).collect())
    }

    pub fn affine_values_exact(&self, x: &[Rational]) -> Result<Vec<Rational>> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.len(),
            });
        }
        Ok(self.facets.iter().map(|f| f.value_exact(x)).collect())
    }

    /// True iff `ℓ_i(x) > margin` for every facet.
    pub fn contains_interior(&self, x: &[f64], margin: f64) -> Result<bool> {
        if margin < 0.0 || margin.is_nan() {
            return Err(Error::InvalidPolytope(format!("negative margin {margin}")));
        }
        self.check_point(x)?;
        Ok(self.facets.iter().all(|f| f.value(x) > margin))
    }

    /// Fails with [`Error::NotInterior`] naming the first offending facet.
    pub fn require_interior(&self, x: &[f64]) -> Result<()> {
        self.check_point(x)?;
        for (i, f) in self.facets.iter().enumerate() {
            let v = f.value(x);
            if !(v > 0.0) {
                return Err(Error::NotInterior {
                    point: x.to_vec(),
                    facet: i,
                    value: v,
                });
            }
        }
        Ok(())
    }

    /// Euclidean distance to the nearest facet hyperplane (infinite without facets).
    pub fn margin(&self, x: &[f64]) -> f64 {
        self.facets
            .iter()
            .map(|f| f.distance(x))
            .fold(f64::INFINITY, f64::min)
    }

    /// Length scale for finite-difference steps at `x`: the margin, or
    /// `max(1, |x|_∞)` when no facet bounds it.
    pub fn step_scale(&self, x: &[f64]) -> f64 {
        let m = self.margin(x);
        if m.is_finite() {
            m
        } else {
            x.iter().fold(1.0_f64, |a, v| a.max(v.abs()))
        }
    }

    /// `T⁻¹(P)`: normals mapped by `Tᵗ`, offsets unchanged.
    pub fn transform(&self, t: &LinearChange) -> Result<Self> {
        if t.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: t.dim(),
            });
        }
        let tt = t.transpose_exact();
        let facets = self
            .facets
            .iter()
            .map(|f| Facet::new(mat_vec(&tt, f.normal()), f.offset().clone()))
            .collect::<Result<Vec<_>>>()?;
        let interior = t.apply_inverse(&self.interior);
        match PolyhedralSet::with_interior(self.dim, facets.clone(), interior) {
            Ok(p) => Ok(p),
            Err(_) => PolyhedralSet::new(self.dim, facets),
        }
    }

    /// Intersection: the union of both facet lists, without repeats.
    pub fn intersect(&self, other: &PolyhedralSet) -> Result<Self> {
        if other.dim != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        let mut facets = self.facets.clone();
        for f in &other.facets {
            if !facets.contains(f) {
                facets.push(f.clone());
            }
        }
        if facets.iter().all(|f| f.value(&self.interior) > 0.0) {
            return PolyhedralSet::with_interior(self.dim, facets, self.interior.clone());
        }
        if facets.iter().all(|f| f.value(&other.interior) > 0.0) {
            return PolyhedralSet::with_interior(self.dim, facets, other.interior.clone());
        }
        PolyhedralSet::new(self.dim, facets)
    }

    /// Axis-aligned bounding box of the set clipped to `[-probe, probe]^n`.
    pub fn bounding_box(&self, probe: f64) -> Result<(Vec<f64>, Vec<f64>)> {
        let mut lo = vec![0.0; self.dim];
        let mut hi = vec![0.0; self.dim];
        for j in 0..self.dim {
            lo[j] = coordinate_extreme(self.dim, &self.facets, probe, j, false)?;
            hi[j] = coordinate_extreme(self.dim, &self.facets, probe, j, true)?;
        }
        Ok((lo, hi))
    }
}

fn coordinate_facet(n: usize, i: usize) -> Facet {
    let normal = (0..n).map(|j| if i == j { int(1) } else { int(0) }).collect();
    Facet::new(normal, int(0)).expect("coordinate facet")
}

/// Center of the largest ball inside the set and the probe box, and its radius.
fn chebyshev_center(dim: usize, facets: &[Facet], probe: f64) -> Result<(Vec<f64>, f64)> {
    let mut lp = Problem::new(OptimizationDirection::Maximize);
    let xs: Vec<_> = (0..dim).map(|_| lp.add_var(0.0, (-probe, probe))).collect();
    let t = lp.add_var(1.0, (f64::NEG_INFINITY, probe));
    for f in facets {
        let mut row: Vec<_> = xs.iter().zip(f.normal_f64()).map(|(&v, &c)| (v, c)).collect();
        row.push((t, -f.norm()));
        lp.add_constraint(row.as_slice(), ComparisonOp::Ge, -f.offset_f64());
    }
    let sol = lp.solve().map_err(|e| Error::Lp(e.to_string()))?;
    Ok((xs.iter().map(|&v| sol[v]).collect(), sol[t]))
}

fn coordinate_extreme(dim: usize, facets: &[Facet], probe: f64, j: usize, max: bool) -> Result<f64> {
    let dir = if max {
        OptimizationDirection::Maximize
    } else {
        OptimizationDirection::Minimize
    };
    let mut lp = Problem::new(dir);
    let xs: Vec<_> = (0..dim)
        .map(|i| lp.add_var(if i == j { 1.0 } else { 0.0 }, (-probe, probe)))
        .collect();
    for f in facets {
        let row: Vec<_> = xs.iter().zip(f.normal_f64()).map(|(&v, &c)| (v, c)).collect();
        lp.add_constraint(row.as_slice(), ComparisonOp::Ge, -f.offset_f64());
    }
    let sol = lp.solve().map_err(|e| Error::Lp(e.to_string()))?;
    Ok(sol[xs[j]])
}

/// An invertible linear change of action coordinates `x = T⁻¹ x'`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearChange {
    matrix: Vec<Vec<Rational>>,
    inverse: Vec<Vec<Rational>>,
    matrix_f64: Vec<Vec<f64>>,
    inverse_f64: Vec<Vec<f64>>,
}

impl LinearChange {
    pub fn new(matrix: Vec<Vec<Rational>>) -> Result<Self> {
        let n = matrix.len();
        if n == 0 || matrix.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidPolytope("matrix must be square".into()));
        }
        let inverse = invert_dense(&matrix)?;
        let to_f = |m: &Vec<Vec<Rational>>| -> Vec<Vec<f64>> {
            m.iter()
                .map(|row| row.iter().map(rational::to_f64).collect())
                .collect()
        };
        Ok(LinearChange {
            matrix_f64: to_f(&matrix),
            inverse_f64: to_f(&inverse),
            matrix,
            inverse,
        })
    }

    pub fn from_f64(rows: &[Vec<f64>]) -> Result<Self> {
        let m = rows
            .iter()
            .map(|row| row.iter().map(|&v| rational::from_f64(v)).collect())
            .collect::<Result<Vec<Vec<_>>>>()?;
        Self::new(m)
    }

    pub fn identity(n: usize) -> Self {
        let m = (0..n)
            .map(|i| (0..n).map(|j| if i == j { int(1) } else { int(0) }).collect())
            .collect();
        Self::new(m).expect("identity")
    }

    /// The map relating the two Hirzebruch pictures: `[[m, -1], [0, 1]]`.
    pub fn hirzebruch(m: i64) -> Self {
        Self::new(vec![vec![int(m), int(-1)], vec![int(0), int(1)]]).expect("invertible")
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &[Vec<Rational>] {
        &self.matrix
    }

    pub fn matrix_f64(&self) -> &[Vec<f64>] {
        &self.matrix_f64
    }

    pub fn inverse(&self) -> LinearChange {
        LinearChange {
            matrix: self.inverse.clone(),
            inverse: self.matrix.clone(),
            matrix_f64: self.inverse_f64.clone(),
            inverse_f64: self.matrix_f64.clone(),
        }
    }

    /// `self ∘ other`, i.e. the matrix product `T₁ T₂`.
    pub fn compose(&self, other: &LinearChange) -> Result<Self> {
        let n = self.dim();
        if other.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: other.dim(),
            });
        }
        let prod = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (0..n).fold(Rational::zero(), |acc, k| {
                            acc + &self.matrix[i][k] * &other.matrix[k][j]
                        })
                    })
                    .collect()
            })
            .collect();
        Self::new(prod)
    }

    pub fn determinant_f64(&self) -> f64 {
        nalgebra::DMatrix::from_fn(self.dim(), self.dim(), |i, j| self.matrix_f64[i][j])
            .determinant()
    }

    pub(crate) fn transpose_exact(&self) -> Vec<Vec<Rational>> {
        let n = self.dim();
        (0..n)
            .map(|i| (0..n).map(|j| self.matrix[j][i].clone()).collect())
            .collect()
    }

    /// `T x`.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        mul_f64(&self.matrix_f64, x)
    }

    /// `T⁻¹ x'`.
    pub fn apply_inverse(&self, x: &[f64]) -> Vec<f64> {
        mul_f64(&self.inverse_f64, x)
    }
}

fn mul_f64(m: &[Vec<f64>], x: &[f64]) -> Vec<f64> {
    m.iter()
        .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn simplex_affine_values() {
        let p = PolyhedralSet::standard_simplex(2);
        assert_eq!(p.affine_values(&[0.25, 0.25]).unwrap(), vec![0.25, 0.25, 0.5]);
        let exact = p.affine_values_exact(&[rat(1, 4), rat(1, 4)]).unwrap();
        assert_eq!(exact, vec![rat(1, 4), rat(1, 4), rat(1, 2)]);
    }

    #[test]
    fn orthant_vertex_is_all_zero() {
        let p = PolyhedralSet::orthant(3);
        assert_eq!(p.affine_values(&[0.0; 3]).unwrap(), vec![0.0; 3]);
        assert!(matches!(
            p.affine_values(&[0.0; 2]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn calabi_polytope_facets() {
        let (m, a, b) = (int(3), int(1), int(4));
        let p = PolyhedralSet::calabi(2, &m, &a, Some(&b)).unwrap();
        let x = [rat(1, 2), rat(3, 2)];
        let v = p.affine_values_exact(&x).unwrap();
        // r = 2: (r - a)/m = 1/3, (b - r)/m = 2/3
        assert_eq!(v, vec![rat(1, 2), rat(3, 2), rat(1, 3), rat(2, 3)]);
    }

    #[test]
    fn contains_interior_cases() {
        let s = PolyhedralSet::standard_simplex(2);
        assert!(s.contains_interior(&[1.0 / 3.0, 1.0 / 3.0], 0.0).unwrap());
        assert!(!s.contains_interior(&[0.5, 0.5], 0.0).unwrap());
        let o = PolyhedralSet::orthant(2);
        assert!(!o.contains_interior(&[0.05, 1.0], 0.1).unwrap());
        assert!(o.contains_interior(&[0.05, 1.0], -1.0).is_err());
    }

    #[test]
    fn witness_is_found_by_lp() {
        let facets = vec![
            Facet::new(vec![int(1), int(0)], int(0)).unwrap(),
            Facet::new(vec![int(0), int(1)], int(0)).unwrap(),
            Facet::new(vec![int(-1), int(-1)], int(1)).unwrap(),
        ];
        let p = PolyhedralSet::new(2, facets).unwrap();
        assert!(p.contains_interior(p.interior_point(), 0.2).unwrap());
        // The inradius of the unit simplex is 1/(2 + √2).
        assert!((p.margin(p.interior_point()) - 1.0 / (2.0 + 2f64.sqrt())).abs() < 1e-9);
    }

    #[test]
    fn empty_interior_rejected() {
        let facets = vec![
            Facet::new(vec![int(1)], int(-1)).unwrap(),
            Facet::new(vec![int(-1)], int(1)).unwrap(),
        ];
        assert_eq!(PolyhedralSet::new(1, facets).unwrap_err(), Error::EmptyInterior);
        assert!(Facet::new(vec![int(0), int(0)], int(1)).is_err());
    }

    #[test]
    fn hirzebruch_map_relates_the_two_pictures() {
        for m in 1..=3 {
            let (mq, a, b) = (int(m), rat(1, 2), int(2));
            let calabi = PolyhedralSet::calabi(2, &mq, &a, Some(&b)).unwrap();
            let standard = PolyhedralSet::hirzebruch(&mq, &a, &b).unwrap();
            let t = LinearChange::hirzebruch(m);
            assert_eq!(calabi.transform(&t).unwrap(), standard);
            assert_eq!(standard.transform(&t.inverse()).unwrap(), calabi);
        }
    }

    #[test]
    fn identity_and_inverse_pair() {
        let p = PolyhedralSet::calabi(3, &int(2), &int(1), Some(&int(3))).unwrap();
        assert_eq!(p.transform(&LinearChange::identity(3)).unwrap(), p);
        let t = LinearChange::new(vec![
            vec![int(2), int(1), int(0)],
            vec![rat(1, 3), int(1), int(-1)],
            vec![int(0), int(0), rat(5, 2)],
        ])
        .unwrap();
        let back = p.transform(&t).unwrap().transform(&t.inverse()).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn bounding_box_of_simplex() {
        let p = PolyhedralSet::simplex(2, &int(3)).unwrap();
        let (lo, hi) = p.bounding_box(DEFAULT_PROBE).unwrap();
        for j in 0..2 {
            assert!(lo[j].abs() < 1e-9 && (hi[j] - 3.0).abs() < 1e-9);
        }
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"dim": 2, "facets": [
            {"normal": [1, 0], "offset": 0},
            {"normal": ["0", "1"], "offset": "0"},
            {"normal": ["-1/2", "-1/2"], "offset": 0.5}]}"#;
        let p: PolyhedralSet = serde_json::from_str(text).unwrap();
        assert_eq!(p.facets()[2].offset(), &rat(1, 2));
        let again: PolyhedralSet =
            serde_json::from_str(&serde_json::to_string(&p).unwrap()).unwrap();
        assert_eq!(again, p);
        assert!(serde_json::from_str::<PolyhedralSet>(r#"{"dim":1,"facets":[{"normal":[0],"offset":1}]}"#).is_err());
    }
}
