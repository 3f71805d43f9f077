use num_complex::Complex;
use proptest::prelude::*;

use subordlab::disk::{boundary_min_re, image_contains, subordination_check, ProbeConfig, Status};
use subordlab::lemmas::in_royster_region;
use subordlab::operators::{f_op, operator_series, OperatorParams};
use subordlab::series::Series;
use subordlab::zoo::{make_binomial_power, make_moebius, make_pvalent, AnalyticMap, DominantSpec, PValentSpec};

type C = Complex<f64>;

fn cplx(r: f64) -> impl Strategy<Value = C> {
    (-r..r, -r..r).prop_map(|(a, b)| C::new(a, b))
}

fn int_series(n: usize) -> impl Strategy<Value = Series<f64>> {
    proptest::collection::vec((-5i32..=5, -5i32..=5), n).prop_map(|v| {
        Series::new(v.into_iter().map(|(a, b)| C::new(a as f64, b as f64)).collect()).unwrap()
    })
}

/// Series with `|c0 - 1| < 0.5` and coefficients bounded by 1.
fn unit_series(n: usize) -> impl Strategy<Value = Series<f64>> {
    (cplx(0.35), proptest::collection::vec(cplx(0.7), n - 1)).prop_map(|(d, rest)| {
        let mut v = vec![C::new(1.0, 0.0) + d];
        v.extend(rest);
        Series::new(v).unwrap()
    })
}

fn small_probe() -> ProbeConfig {
    ProbeConfig {
        radii: vec![0.5, 0.9, 0.99],
        n_theta: 256,
        ..ProbeConfig::default()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws_are_exact(a in int_series(8), b in int_series(8), c in int_series(8)) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn exp_log_and_power_round_trips(s in unit_series(16), lam in cplx(2.0)) {
        prop_assume!(lam.norm() > 0.2);
        let back = s.log().unwrap().exp().unwrap();
        prop_assert!(back.max_abs_diff(&s) < 1e-10);
        let back = s.pow(lam).unwrap().pow(lam.inv()).unwrap();
        prop_assert!(back.max_abs_diff(&s) < 1e-10);
    }

    #[test]
    fn derivative_linear_and_leibniz(a in unit_series(12), b in unit_series(12), k in cplx(2.0)) {
        let lin = a.scale(k).add(&b).derivative();
        prop_assert!(lin.max_abs_diff(&a.derivative().scale(k).add(&b.derivative())) < 1e-12);
        let lhs = a.mul(&b).derivative();
        let rhs = a.derivative().mul(&b).add(&a.mul(&b.derivative()));
        prop_assert!(lhs.max_abs_diff(&rhs.truncate(lhs.order())) < 1e-12);
    }

    #[test]
    fn zoo_series_matches_evaluator(b in -0.9f64..0.9, lam in cplx(1.0), z in cplx(0.3)) {
        prop_assume!(b.abs() > 1e-3 && lam.norm() > 1e-3);
        let q = make_binomial_power(b, lam).unwrap();
        let s = q.series_at_origin(30).unwrap();
        prop_assert!((s.eval(z) - q.eval(z)).norm() < 1e-9);
    }

    #[test]
    fn operator_is_one_at_origin_and_matches_first_coefficient(
        p in 1u32..=3,
        eta in cplx(1.5),
        mu in cplx(1.5),
        a in cplx(0.2),
    ) {
        let f = make_pvalent(&PValentSpec::new(p).with(p as usize + 1, a)).unwrap();
        let prm = OperatorParams::new(p, eta, mu);
        prop_assert_eq!(f_op(&f, &prm, C::new(0.0, 0.0)).unwrap(), C::new(1.0, 0.0));
        let s = operator_series(&f, &prm, 4).unwrap();
        let expect = (eta - mu + eta / p as f64) * a;
        prop_assert!((s.coeff(1) - expect).norm() < 1e-10);
    }

    #[test]
    fn royster_reflection(re in -2.5f64..2.5, im in -1.5f64..1.5) {
        let l = C::new(re, im);
        prop_assert_eq!(in_royster_region(l), in_royster_region(-l));
        prop_assert_eq!((l - 1.0).norm() <= 1.0, (-l + 1.0).norm() <= 1.0);
    }

    #[test]
    fn conjugation_invariance(b in -0.9f64..0.9, a in -1.0f64..1.0, n in 64usize..512) {
        prop_assume!(b < a);
        let q = make_moebius(a, b).unwrap();
        let up = boundary_min_re(|z| q.eval(z), 0.99, n);
        let down = boundary_min_re(|z: C| q.eval(z.conj()), 0.99, n);
        prop_assert!((up.value - down.value).abs() < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn self_subordination_never_fails(b in -0.9f64..0.5, a in 0.6f64..1.0) {
        let q = make_moebius(a, b).unwrap();
        let v = subordination_check(&q, &q, &small_probe());
        prop_assert_ne!(v.status, Status::Fails);
    }

    #[test]
    fn holds_implies_pointwise_containment(k in 0.05f64..0.95, phase in -3.0f64..3.0) {
        let h = DominantSpec::Moebius { a: 1.0, b: -0.5 }.build().unwrap();
        let inner = make_moebius(1.0, -0.5).unwrap();
        let rot = C::from_polar(k, phase);
        let gm = subordlab::zoo::FnMap::new("g", move |z: C| inner.eval(z * rot));
        let cfg = small_probe();
        let v = subordination_check(&gm, h.as_ref(), &cfg);
        prop_assert_eq!(v.status, Status::Holds);
        for &r in &cfg.radii {
            for j in 0..16 {
                let z = C::from_polar(r, j as f64 * 0.39);
                prop_assert!(image_contains(h.as_ref(), gm.eval(z), &cfg).unwrap().inside());
            }
        }
    }

    #[test]
    fn holds_is_monotone_in_radius(k in 0.1f64..0.95) {
        let h = make_moebius(1.0, -1.0).unwrap();
        let g = subordlab::zoo::FnMap::new("g", move |z: C| (1.0 + k * z) / (1.0 - k * z));
        let full = small_probe();
        if subordination_check(&g, &h, &full).status == Status::Holds {
            for cut in 1..full.radii.len() {
                let cfg = ProbeConfig { radii: full.radii[..cut].to_vec(), ..full.clone() };
                prop_assert_eq!(subordination_check(&g, &h, &cfg).status, Status::Holds);
            }
        }
    }
}
