//! Oracles shared by the integration tests. Nothing here calls into the
//! library's own Q/Q' evaluation or solver.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use toric_kahler::rational::Rational;
use toric_kahler::RadialProfile;

pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(v: i64) -> Rational {
    rat(v, 1)
}

pub fn pow(a: &Rational, e: u32) -> Rational {
    (0..e).fold(Rational::one(), |acc, _| acc * a)
}

/// Coefficients of `Q(r) = rⁿ − A − Br − Cr^{n+1} − Dr^{n+2}`, lowest power first.
pub fn q_poly(p: &RadialProfile<Rational>) -> Vec<Rational> {
    let n = p.n as usize;
    let mut q = vec![Rational::zero(); n + 3];
    q[n] += Rational::one();
    q[0] -= &p.coeffs[0];
    q[1] -= &p.coeffs[1];
    q[n + 1] -= &p.coeffs[2];
    q[n + 2] -= &p.coeffs[3];
    q
}

pub fn horner(poly: &[Rational], r: &Rational) -> Rational {
    poly.iter().rev().fold(Rational::zero(), |acc, c| acc * r + c)
}

/// `poly = (r − root) · quotient + remainder`.
pub fn synthetic_division(poly: &[Rational], root: &Rational) -> (Vec<Rational>, Rational) {
    let deg = poly.len() - 1;
    let mut quotient = vec![Rational::zero(); deg];
    let mut carry = Rational::zero();
    for k in (0..=deg).rev() {
        let v = &poly[k] + &carry * root;
        if k == 0 {
            return (quotient, v);
        }
        quotient[k - 1] = v.clone();
        carry = v;
    }
    unreachable!()
}

/// Residue of `r^{n−1}/Q(r)` at a simple root, by dividing out `(r − root)`.
/// `None` when `root` is not a root of `Q`.
pub fn residue(p: &RadialProfile<Rational>, root: &Rational) -> Option<Rational> {
    let (quot, rem) = synthetic_division(&q_poly(p), root);
    if !rem.is_zero() {
        return None;
    }
    Some(pow(root, p.n - 1) / horner(&quot, root))
}

/// Reproducible `(n, m, a)` with `n ∈ 2..=5`, `m ∈ 1..=6`, rational `a ∈ (0, 10)`.
pub fn random_cases(seed: u64, count: usize) -> Vec<(u32, u32, Rational)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(2..=5);
            let m = rng.gen_range(1..=6);
            let q: i64 = rng.gen_range(1..=20);
            let p: i64 = rng.gen_range(1..10 * q);
            (n, m, rat(p, q))
        })
        .collect()
}

/// `|a − b| / (1 + |b|)`.
pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / (1.0 + b.abs())
}
