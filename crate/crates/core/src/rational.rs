//! Exact rationals, the scalar [`Field`] abstraction shared by the exact and
//! floating point code paths, and a small dense Gaussian-elimination solver.
//!
//! Rationals travel through JSON as strings: `"p/q"`, a plain integer, or a
//! decimal literal such as `"0.125"`. JSON numbers are accepted too and are
//! read through their decimal text, so `0.1` becomes exactly `1/10`.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Exact rational value of a finite double (binary expansion, no rounding).
pub fn from_f64(v: f64) -> Result<Rational> {
    Rational::from_float(v).ok_or_else(|| Error::Parse(format!("non-finite value {v}")))
}

pub fn to_f64(q: &Rational) -> f64 {
    ToPrimitive::to_f64(q).unwrap_or(f64::NAN)
}

/// Parses `"p/q"`, `"p"`, or a decimal literal with optional exponent.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|e| Error::Parse(format!("{s}: {e}")))?;
        let q = BigInt::from_str(q.trim()).map_err(|e| Error::Parse(format!("{s}: {e}")))?;
        if q.is_zero() {
            return Err(Error::Parse(format!("{s}: zero denominator")));
        }
        return Ok(Rational::new(p, q));
    }
    parse_decimal(s)
}

fn parse_decimal(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all: String = format!("{whole}{frac}");
    let numer = BigInt::from_str(if all.is_empty() { "0" } else { &all }).map_err(|_| bad())?;
    let scale = exponent - frac.len() as i32;
    let ten = BigInt::from(10);
    let mut q = if scale >= 0 {
        Rational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(numer, num_traits::pow(ten, (-scale) as usize))
    };
    if neg {
        q = -q;
    }
    Ok(q)
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub(crate) fn value_to_rational(v: &serde_json::Value) -> Result<Rational> {
    match v {
        serde_json::Value::String(s) => parse_rational(s),
        serde_json::Value::Number(n) => parse_decimal(&n.to_string()),
        other => Err(Error::Parse(format!("expected rational, found {other}"))),
    }
}

/// Serde adapter for a [`Rational`] stored as `"p/q"`.
pub mod serde_rational {
    use super::*;

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        value_to_rational(&v).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for `Vec<Rational>`.
pub mod serde_rational_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        let strs: Vec<String> = v.iter().map(format_rational).collect();
        strs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Rational>, D::Error> {
        let v = Vec::<serde_json::Value>::deserialize(d)?;
        v.iter()
            .map(value_to_rational)
            .collect::<Result<_>>()
            .map_err(serde::de::Error::custom)
    }
}

/// A number accepted from JSON either as a number or as a rational string.
/// Keeps the exact value alongside its double.
#[derive(Debug, Clone, PartialEq)]
pub struct Num(pub Rational);

impl Num {
    pub fn to_f64(&self) -> f64 {
        to_f64(&self.0)
    }
}

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for Num {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        value_to_rational(&v)
            .map(Num)
            .map_err(serde::de::Error::custom)
    }
}

/// Scalars the solver and the Calabi profile code are generic over: exact
/// rationals and doubles.
pub trait Field:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_rational(q: &Rational) -> Self;
    fn to_f64(&self) -> f64;
    /// Exact zero for rationals; `|x| <= tol * scale` for doubles.
    fn is_negligible(&self, scale: f64) -> bool;
    /// Whether results in this field are exact.
    fn exact() -> bool;

    fn is_zero_value(&self) -> bool {
        self.to_f64() == 0.0 && self.is_negligible(0.0)
    }

    fn powi(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc * self.clone();
        }
        acc
    }

    fn abs_f64(&self) -> f64 {
        self.to_f64().abs()
    }
}

/// Absolute tolerance used by [`Field::is_negligible`] for doubles.
pub const FLOAT_ZERO_TOL: f64 = 1e-12;

impl Field for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn from_rational(q: &Rational) -> Self {
        to_f64(q)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn is_negligible(&self, scale: f64) -> bool {
        self.abs() <= FLOAT_ZERO_TOL * scale.max(1.0)
    }
    fn exact() -> bool {
        false
    }
}

impl Field for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        int(v)
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn to_f64(&self) -> f64 {
        to_f64(self)
    }
    fn is_negligible(&self, _scale: f64) -> bool {
        Zero::is_zero(self)
    }
    fn exact() -> bool {
        true
    }
    fn abs_f64(&self) -> f64 {
        to_f64(&self.abs())
    }
}

/// Solves `a x = rhs` by Gaussian elimination with partial pivoting on
/// magnitude. Over rationals the result is exact; over doubles a pivot below
/// `1e-13 * max|a|` is treated as singular.
pub fn solve_dense<F: Field>(a: &[Vec<F>], rhs: &[F]) -> Result<Vec<F>> {
    let n = a.len();
    if rhs.len() != n || a.iter().any(|row| row.len() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: rhs.len(),
        });
    }
    let mut m: Vec<Vec<F>> = a
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let scale = a
        .iter()
        .flat_map(|row| row.iter().map(Field::abs_f64))
        .fold(0.0_f64, f64::max);

    for col in 0..n {
        let pivot = (col..n)
            .filter(|&r| !m[r][col].is_zero_value())
            .max_by(|&i, &j| m[i][col].abs_f64().total_cmp(&m[j][col].abs_f64()))
            .ok_or(Error::SingularMatrix)?;
        if !F::exact() && m[pivot][col].abs_f64() <= 1e-13 * scale {
            return Err(Error::SingularMatrix);
        }
        m.swap(col, pivot);
        let p = m[col][col].clone();
        for r in (col + 1)..n {
            if m[r][col].is_zero_value() {
                continue;
            }
            let factor = m[r][col].clone() / p.clone();
            for c in col..=n {
                let v = m[col][c].clone() * factor.clone();
                m[r][c] = m[r][c].clone() - v;
            }
        }
    }

    let mut x = vec![F::zero(); n];
    for row in (0..n).rev() {
        let mut acc = m[row][n].clone();
        for c in (row + 1)..n {
            acc = acc - m[row][c].clone() * x[c].clone();
        }
        x[row] = acc / m[row][row].clone();
    }
    Ok(x)
}

/// Inverse of a square matrix, column by column.
pub fn invert_dense<F: Field>(a: &[Vec<F>]) -> Result<Vec<Vec<F>>> {
    let n = a.len();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let e: Vec<F> = (0..n)
            .map(|i| if i == j { F::one() } else { F::zero() })
            .collect();
        cols.push(solve_dense(a, &e)?);
    }
    Ok((0..n)
        .map(|i| (0..n).map(|j| cols[j][i].clone()).collect())
        .collect())
}

pub fn mat_vec<F: Field>(a: &[Vec<F>], x: &[F]) -> Vec<F> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(x)
                .fold(F::zero(), |acc, (r, v)| acc + r.clone() * v.clone())
        })
        .collect()
}
