mod common;

use nalgebra::DMatrix;
use num_traits::Zero;
use proptest::prelude::*;
use toric_kahler::calabi::{classify, solve_parameters, Constraint, Param, PolytopeSpec, RadialProfile};
use toric_kahler::curvature::{scalar_curvature_general, FdConfig};
use toric_kahler::potential::{canonical_potential, fd_hessian, transform_potential, Potential};
use toric_kahler::rational::Rational;
use toric_kahler::{build_potential, LinearChange, PolyhedralSet};

use common::{horner, int, q_poly, rat};

fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=2).prop_map(|(p, q)| rat(p, q))
}

fn invertible(n: usize) -> impl Strategy<Value = LinearChange> {
    prop::collection::vec(small_rational(), n * n)
        .prop_filter_map("singular", move |v| {
            let rows: Vec<Vec<Rational>> = v.chunks(n).map(<[Rational]>::to_vec).collect();
            LinearChange::new(rows).ok()
        })
}

fn to_matrix(t: &LinearChange) -> DMatrix<f64> {
    let n = t.dim();
    DMatrix::from_fn(n, n, |i, j| t.matrix_f64()[i][j])
}

fn condition_number(m: &DMatrix<f64>) -> f64 {
    let sv = m.clone().singular_values();
    sv.max() / sv.min()
}

/// A point with barycentric-style weights inside `p`'s witness neighbourhood.
fn point_in(p: &PolyhedralSet, w: &[f64]) -> Option<Vec<f64>> {
    let c = p.interior_point();
    let m = p.margin(c).min(1.0);
    let x: Vec<f64> = c.iter().zip(w).map(|(c, w)| c + 0.5 * m * w).collect();
    (p.margin(&x) > 0.2 * m).then_some(x)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn transform_respects_composition(t1 in invertible(2), t2 in invertible(2)) {
        let p = PolyhedralSet::hirzebruch(&int(2), &int(1), &int(3)).unwrap();
        let composed = p.transform(&t1.compose(&t2).unwrap()).unwrap();
        let stepwise = p.transform(&t1).unwrap().transform(&t2).unwrap();
        prop_assert_eq!(&composed, &stepwise);
        let back = p.transform(&t1).unwrap().transform(&t1.inverse()).unwrap();
        prop_assert_eq!(&back, &p);
    }

    #[test]
    fn affine_values_are_invariant(t in invertible(3), w in prop::collection::vec(-1.0f64..1.0, 3)) {
        let p = PolyhedralSet::standard_simplex(3);
        let q = p.transform(&t).unwrap();
        let xp: Vec<f64> = p.interior_point().iter().zip(&w).map(|(c, w)| c + 0.1 * w).collect();
        let x = t.apply_inverse(&xp);
        let a = p.affine_values(&xp).unwrap();
        let b = q.affine_values(&x).unwrap();
        for (u, v) in a.iter().zip(&b) {
            prop_assert!((u - v).abs() <= 1e-12 * (1.0 + u.abs()));
        }
        let exact: Vec<Rational> = vec![rat(1, 5), rat(1, 7), rat(1, 3)];
        let xe = toric_kahler::rational::mat_vec(t.inverse().matrix(), &exact);
        prop_assert_eq!(p.affine_values_exact(&exact).unwrap(), q.affine_values_exact(&xe).unwrap());
    }

    #[test]
    fn hessian_congruence(t in invertible(2), w in prop::collection::vec(-1.0f64..1.0, 2)) {
        let base = PolyhedralSet::calabi(2, &int(1), &int(1), Some(&int(2))).unwrap();
        let s = canonical_potential(&base);
        let pulled = transform_potential(&s, &t).unwrap();
        let Some(x) = point_in(pulled.domain(), &w) else { return Ok(()) };
        let tm = to_matrix(&t);
        let inner = s.hessian(&t.apply(&x)).unwrap();
        let want = tm.transpose() * &inner.s * &tm;
        let got = pulled.hessian(&x).unwrap();
        prop_assert!((&got.s - &want).amax() <= 1e-10 * want.amax());
        let det_t = t.determinant_f64();
        let det_want = det_t * det_t * inner.det_s;
        prop_assert!((got.det_s - det_want).abs() <= 1e-10 * det_want.abs());
    }

    #[test]
    fn gl_equivariance(t in invertible(2), w in prop::collection::vec(-1.0f64..1.0, 2)) {
        prop_assume!(condition_number(&to_matrix(&t)) <= 10.0);
        let s = canonical_potential(&PolyhedralSet::hirzebruch(&int(1), &int(1), &int(2)).unwrap());
        let pulled = transform_potential(&s, &t).unwrap();
        let Some(x) = point_in(pulled.domain(), &w) else { return Ok(()) };
        let fd = FdConfig::default();
        let lhs = scalar_curvature_general(&pulled, &x, &fd).unwrap();
        let rhs = scalar_curvature_general(&s, &t.apply(&x), &fd).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-5 * rhs.abs().max(1.0), "{} vs {}", lhs, rhs);
    }

    #[test]
    fn classification_lattice(
        coeffs in prop::collection::vec(prop_oneof![Just(0i64), -3i64..=3], 4),
        n in 1u32..=5,
    ) {
        let c: Vec<Rational> = coeffs.iter().map(|v| int(*v)).collect();
        let p = RadialProfile::new(n, c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone());
        let f = classify(&p).flags;
        prop_assert!(f.extremal);
        prop_assert!(!f.scalar_flat || f.constant_scalar);
        prop_assert!(!f.ricci_flat || (f.kahler_einstein && f.scalar_flat));
        prop_assert!(!f.kahler_einstein || f.constant_scalar);
        prop_assert_eq!(f.constant_scalar, c[3].is_zero());
        prop_assert_eq!(f.scalar_flat, c[2].is_zero() && c[3].is_zero());
        prop_assert_eq!(f.kahler_einstein, c[1].is_zero() && c[3].is_zero());
        let fl = classify(&p.to_f64()).flags;
        prop_assert_eq!(f, fl);
    }

    #[test]
    fn exact_solve_substitutes_back(n in 2u32..=5, m in 1u32..=6, p in 1i64..60, q in 1i64..=7, extra in 1i64..20) {
        let a = rat(p, q);
        let b = &a + rat(extra, q);
        for (spec, constraints) in [
            (PolytopeSpec::new(n, m, a.clone(), None).unwrap(),
             vec![Constraint::zero(Param::D), Constraint::new(Param::C, rat(-1, 2))]),
            (PolytopeSpec::new(n, m, a.clone(), Some(b.clone())).unwrap(), vec![]),
        ] {
            let prof = solve_parameters(&spec, &constraints).unwrap();
            let poly = q_poly(&prof);
            prop_assert!(horner(&poly, &a).is_zero());
            if let Some(b) = &spec.b {
                prop_assert!(horner(&poly, b).is_zero());
            }
        }
    }

    #[test]
    fn fd_hessian_matches_closed_form(w in prop::collection::vec(0.0f64..1.0, 2), which in 0usize..3) {
        let s: Potential = match which {
            0 => canonical_potential(&PolyhedralSet::hirzebruch(&int(2), &int(1), &int(3)).unwrap()),
            1 => {
                let spec = PolytopeSpec::new(2, 1, 1.0, Some(2.0)).unwrap();
                let prof = solve_parameters(&spec, &[]).unwrap();
                build_potential(&prof, &spec).unwrap()
            }
            _ => {
                let (p, d) = toric_kahler::calabi::presets::fubini_study(2, 1.0).unwrap();
                Potential::radial(p, &d).unwrap()
            }
        };
        let (lo, hi) = s.domain().bounding_box(10.0).unwrap();
        let x: Vec<f64> = (0..2).map(|i| lo[i] + w[i] * (hi[i] - lo[i])).collect();
        let diam = (0..2).map(|i| hi[i] - lo[i]).fold(0.0, f64::max);
        prop_assume!(s.domain().margin(&x) >= 0.05 * diam);
        let closed = s.hessian_matrix(&x).unwrap();
        let fd = fd_hessian(&s, &x, 1e-2).unwrap();
        let err = (&fd - &closed).amax() / closed.amax();
        prop_assert!(err < 1e-6, "rel err {:e}", err);
    }

    #[test]
    fn sum_is_additive(w in prop::collection::vec(0.05f64..0.3, 2), c in prop::collection::vec(-2.0f64..2.0, 4)) {
        let a = canonical_potential(&PolyhedralSet::standard_simplex(2));
        let b = Potential::correction(2, c).unwrap();
        let s = Potential::sum(vec![a.clone(), b.clone()]).unwrap();
        prop_assert_eq!(s.hessian_matrix(&w).unwrap(), a.hessian_matrix(&w).unwrap() + b.hessian_matrix(&w).unwrap());
        prop_assert_eq!(s.grad(&w).unwrap(), a.grad(&w).unwrap() + b.grad(&w).unwrap());
    }
}

#[test]
fn fd_convergence_is_second_order() {
    let hirz = canonical_potential(&PolyhedralSet::hirzebruch(&int(2), &int(1), &int(3)).unwrap());
    let spec = PolytopeSpec::new(2, 1, 1.0, Some(2.0)).unwrap();
    let prof = solve_parameters(&spec, &[]).unwrap();
    let calabi = build_potential(&prof, &spec).unwrap();
    for s in [&hirz, &calabi] {
        let x = s.domain().interior_point().to_vec();
        let sc = |frac: f64| scalar_curvature_general(s, &x, &FdConfig { step_fraction: frac }).unwrap();
        let reference = sc(0.004);
        let (e1, e2) = ((sc(0.2) - reference).abs(), (sc(0.1) - reference).abs());
        let ratio = e1 / e2;
        assert!((3.5..4.5).contains(&ratio), "ratio {ratio} ({e1:e}, {e2:e})");
    }
}

#[test]
fn simplex_sign_lock() {
    for n in 1..=3 {
        let s = canonical_potential(&PolyhedralSet::standard_simplex(n));
        let x = vec![0.7 / (n as f64 + 1.0); n];
        let sc = scalar_curvature_general(&s, &x, &FdConfig::default()).unwrap();
        let want = 2.0 * (n * (n + 1)) as f64;
        assert!((sc - want).abs() < 1e-5 * want, "n={n}: {sc}");
        assert!((sc - want / 2.0).abs() > 0.4 * want);
    }
}
