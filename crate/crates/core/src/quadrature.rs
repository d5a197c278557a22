//! Fixed composite Gauss–Legendre rules.
//!
//! The panel layout depends smoothly on the endpoints, so integrals computed
//! here are smooth functions of their limits and can be finite-differenced.

use std::sync::OnceLock;

const ORDER: usize = 16;
const PANELS: usize = 48;

fn nodes() -> &'static [(f64, f64)] {
    static NODES: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    NODES.get_or_init(|| gauss_legendre(ORDER))
}

/// Nodes and weights on `[-1, 1]` by Newton iteration on `P_n`.
fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let pk = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = pk;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

/// `∫_lo^hi g(t) dt` with panels clustered towards both ends.
pub fn integrate<G, E>(lo: f64, hi: f64, mut g: G) -> Result<f64, E>
where
    G: FnMut(f64) -> Result<f64, E>,
{
    if lo == hi {
        return Ok(0.0);
    }
    let width = hi - lo;
    let edge = |k: usize| {
        let theta = std::f64::consts::PI * k as f64 / PANELS as f64;
        lo + width * 0.5 * (1.0 - theta.cos())
    };
    let mut total = 0.0;
    for k in 0..PANELS {
        let (a, b) = (edge(k), edge(k + 1));
        let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
        for &(x, w) in nodes() {
            total += w * half * g(mid + half * x)?;
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_two() {
        let s: f64 = nodes().iter().map(|(_, w)| w).sum();
        assert!((s - 2.0).abs() < 1e-14);
    }

    #[test]
    fn integrates_log_and_polynomial() {
        let v: Result<f64, ()> = integrate(1.0, 3.0, |t| Ok(1.0 / t));
        assert!((v.unwrap() - 3f64.ln()).abs() < 1e-14);
        let p: Result<f64, ()> = integrate(-1.0, 2.0, |t| Ok(t.powi(7)));
        assert!((p.unwrap() - (2f64.powi(8) - 1.0) / 8.0).abs() < 1e-12);
        let back: Result<f64, ()> = integrate(3.0, 1.0, |t| Ok(1.0 / t));
        assert!((back.unwrap() + 3f64.ln()).abs() < 1e-14);
    }
}
