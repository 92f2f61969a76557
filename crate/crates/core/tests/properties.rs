use chaoscert::criterion::f2m_closed_form;
use chaoscert::oracle::baseline_residuals;
use chaoscert::period::period_two_roots;
use chaoscert::threshold::{chaos_margin, f2m_margin};
use chaoscert::{
    alpha_bounds, check_membership, classify, classify_with, compute_pi, f2m_condition,
    period_two_closed_form_beta1, scan, threshold_report, verdict_boundary_probe, ChaosStatus,
    ClassifyOptions, Map, RegionLabel,
};
use proptest::prelude::*;

fn admissible() -> impl Strategy<Value = (f64, f64)> {
    (0.5_f64..12.0, 0.001_f64..0.999).prop_map(|(beta, t)| {
        let b = alpha_bounds(beta);
        (b.lower + t * (b.upper - b.lower), beta)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn unimodal_on_unit_interval((alpha, beta) in admissible(), u in 0.0_f64..1.0, v in 0.0_f64..1.0) {
        let f = Map::new(alpha, beta).unwrap();
        let m = 1.0 / (1.0 + beta);
        let (x, y) = if u < v { (u, v) } else { (v, u) };
        prop_assume!(y - x > 1e-9);
        if y <= m {
            prop_assert!(f.eval(x).unwrap() <= f.eval(y).unwrap());
        }
        if x >= m {
            prop_assert!(f.eval(x).unwrap() >= f.eval(y).unwrap());
        }
        prop_assert!(f.eval(u).unwrap() <= f.eval(m).unwrap());
    }

    #[test]
    fn derivative_matches_central_difference((alpha, beta) in admissible(), k in 0.01_f64..0.99) {
        let f = Map::new(alpha, beta).unwrap();
        let h = 1e-6;
        let fd = (f.value(k + h) - f.value(k - h)) / (2.0 * h);
        let d = f.derivative(k).unwrap();
        prop_assert!((d - fd).abs() <= 1e-5 * (1.0 + d.abs()), "{} vs {}", d, fd);
    }

    #[test]
    fn fixed_point_residual((alpha, beta) in admissible()) {
        let f = Map::new(alpha, beta).unwrap();
        let z = f.fixed_point().unwrap().z;
        prop_assert!((f.eval(z).unwrap() - z).abs() <= 1e-10);
        prop_assert!(z > 1.0 / (1.0 + beta));
    }

    #[test]
    fn class_membership_agrees_with_bounds(beta in 0.5_f64..12.0, t in -0.3_f64..1.3) {
        let b = alpha_bounds(beta);
        let alpha = b.lower + t * (b.upper - b.lower);
        prop_assume!(alpha > 0.0);
        prop_assume!((alpha - b.lower).abs() > 1e-9 && (alpha - b.upper).abs() > 1e-9);
        let f = Map::new(alpha, beta).unwrap();
        prop_assert_eq!(check_membership(&f, 2_000).in_class, b.contains(alpha));
    }

    #[test]
    fn g_upper_identity(beta in 0.5_f64..12.0) {
        let b = alpha_bounds(beta);
        let expected = (beta + 1.0).powf(beta + 1.0) / beta.powf(beta);
        prop_assert!((b.upper - expected).abs() <= 1e-12 * expected);
        prop_assert!((b.upper - (beta + 1.0) * b.lower).abs() <= 1e-12 * expected);
    }

    #[test]
    fn f2m_closed_form_matches_iteration((alpha, beta) in admissible()) {
        let f = Map::new(alpha, beta).unwrap();
        let m = 1.0 / (1.0 + beta);
        let direct = m - f.iterate(m, 2).unwrap();
        let lhs = f2m_closed_form(alpha, beta);
        prop_assert!((lhs - (beta + 1.0) * direct).abs() <= 1e-10, "{} vs {}", lhs, direct);
        prop_assert!((f2m_margin(alpha, beta) - direct).abs() <= 1e-15);
    }

    #[test]
    fn baseline_converges_monotonically(gamma in 0.05_f64..0.8, sa in 0.2_f64..5.0, k0 in 0.01_f64..10.0) {
        let r = baseline_residuals(gamma, sa, k0, 200).unwrap();
        for w in r.windows(2) {
            prop_assert!(w[1] <= w[0] + 1e-12);
        }
        prop_assert!(*r.last().unwrap() <= 1e-10);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn pi_members_are_genuine_period_two_points((alpha, beta) in admissible()) {
        let f = Map::new(alpha, beta).unwrap();
        let m = 1.0 / (1.0 + beta);
        let pi = match compute_pi(&f) {
            Ok(pi) => pi,
            Err(e) => return Err(TestCaseError::fail(format!("{e}"))),
        };
        prop_assert!(!pi.roots.is_empty());
        for x in pi.values() {
            prop_assert!(x >= m - 1e-12 && x <= 1.0);
            prop_assert!(f.value(x) >= m - 1e-12);
            prop_assert!((f.value(f.value(x)) - x).abs() <= 1e-10);
        }
        prop_assert!(pi.min_pi <= pi.max_pi);
        // the fixed point always qualifies
        let z = f.fixed_point().unwrap().z;
        prop_assert!(pi.values().any(|x| (x - z).abs() <= 1e-9));
    }

    #[test]
    fn beta_one_period_two_matches_closed_form(alpha in 3.05_f64..4.0) {
        let f = Map::new(alpha, 1.0).unwrap();
        let pair = period_two_closed_form_beta1(alpha).unwrap();
        let roots: Vec<f64> = period_two_roots(&f, (0.0, 1.0), 100_000).unwrap().iter().map(|r| r.x).collect();
        for want in [pair.low, pair.high] {
            prop_assert!(roots.iter().any(|x| (x - want).abs() <= 1e-12), "{} not in {:?}", want, roots);
        }
    }

    #[test]
    fn odd_cycle_status_orbit_closes((alpha, beta) in admissible()) {
        let f = Map::new(alpha, beta).unwrap();
        let v = classify(&f).unwrap();
        if let (Some(f2m), Some(f3m)) = (v.f2m, v.f3m) {
            prop_assert!((f.iterate(v.m, 2).unwrap() - f2m).abs() <= 1e-15);
            prop_assert!((f.eval(f2m).unwrap() - f3m).abs() <= 1e-15);
        }
        if v.status.has_odd_cycle() {
            prop_assert!(v.status.second_iterate_turbulent());
        }
    }
}

/// A sign change or near-touch of `f^2(x) - x` in every fine cell is matched by a reported root.
#[test]
fn root_isolation_is_complete_against_dense_scan() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let n = 1_000_000;
    for _ in 0..50 {
        let beta = rng.gen_range(0.5..12.0);
        let b = alpha_bounds(beta);
        let alpha = rng.gen_range(b.lower..b.upper);
        let f = Map::new(alpha, beta).unwrap();
        let roots = period_two_roots(&f, (0.0, 1.0), 100_000).unwrap();
        let r = |x: f64| f.value(f.value(x)) - x;
        let mut prev = r(0.0);
        for i in 1..=n {
            let x = i as f64 / n as f64;
            let cur = r(x);
            if prev.signum() != cur.signum() && prev != 0.0 && cur != 0.0 {
                let lo = (i - 1) as f64 / n as f64;
                assert!(
                    roots.iter().any(|p| p.x >= lo - 1e-6 && p.x <= x + 1e-6),
                    "alpha {alpha} beta {beta}: sign change in [{lo}, {x}] missed; roots {roots:?}"
                );
            }
            prev = cur;
        }
    }
}

#[test]
fn closed_form_and_direct_f2m_agree_on_grid() {
    let mut checked = 0;
    for j in 0..50 {
        let beta = 0.5 + 11.5 * j as f64 / 49.0;
        for i in 1..=200 {
            let alpha = 30.0 * i as f64 / 200.0;
            if Map::new(alpha, beta)
                .unwrap()
                .eval(1.0 / (1.0 + beta))
                .is_err()
            {
                continue;
            }
            let c = f2m_condition(&Map::new(alpha, beta).unwrap()).unwrap();
            assert_eq!(c.satisfied, c.lhs > 0.0);
            checked += 1;
        }
    }
    assert!(checked > 3_000);
}

#[test]
fn verdict_stable_under_finer_subdivision() {
    let points = [
        (3.9, 1.0),
        (3.5, 1.0),
        (6.0, 2.0),
        (5.0, 2.0),
        (8.0, 3.0),
        (6.5, 3.0),
        (15.0, 10.0),
        (10.0, 10.0),
    ];
    for (alpha, beta) in points {
        let f = Map::new(alpha, beta).unwrap();
        let statuses: Vec<ChaosStatus> = [10_000, 100_000, 1_000_000]
            .into_iter()
            .map(|s| {
                classify_with(
                    &f,
                    ClassifyOptions {
                        subdivisions: s,
                        ..Default::default()
                    },
                )
                .unwrap()
                .status
            })
            .collect();
        assert!(
            statuses.windows(2).all(|w| w[0] == w[1]),
            "({alpha}, {beta}): {statuses:?}"
        );
    }
}

#[test]
fn verdict_flips_across_threshold() {
    let tol = 1e-9;
    for beta in [1.0, 2.0, 3.0, 5.5, 10.0] {
        let report = threshold_report(beta, tol).unwrap();
        let (below, above) =
            verdict_boundary_probe(beta, report.chaos_threshold, 10.0 * tol).unwrap();
        assert!(
            !below.status.has_odd_cycle(),
            "beta {beta}: {:?}",
            below.status
        );
        assert_eq!(
            above.status,
            ChaosStatus::OddCycleAndTurbulent,
            "beta {beta}"
        );
        assert!(chaos_margin(report.chaos_threshold - 10.0 * tol, beta) < 0.0);
    }
}

#[test]
fn chaos_window_shrinks_relative_to_strip() {
    let ratios: Vec<f64> = (1..=12)
        .map(|b| {
            let r = threshold_report(b as f64, 1e-10).unwrap();
            r.chaos_threshold / r.g_upper
        })
        .collect();
    assert!(ratios.windows(2).all(|w| w[1] < w[0]), "{ratios:?}");
}

#[test]
fn region_boundaries_within_one_grid_step() {
    let (nx, ny) = (300, 48);
    let grid = scan((0.0_f64, 30.0), (0.0, 12.0), nx, ny).unwrap();
    let step = 30.0 / nx as f64;
    for iy in 0..ny {
        let row = grid.row(iy);
        let beta = row[0].beta;
        let b = alpha_bounds(beta);
        for w in row.windows(2) {
            if w[0].in_g != w[1].in_g {
                let edge = if w[1].in_g { b.lower } else { b.upper };
                assert!(
                    (w[0].alpha - edge).abs() <= step + 1e-12,
                    "beta {beta}: {w:?}"
                );
            }
            if w[0].label == RegionLabel::B && w[1].label == RegionLabel::C {
                let t = threshold_report(beta, 1e-10).unwrap().f2m_threshold;
                assert!((w[0].alpha - t).abs() <= step, "beta {beta}");
            }
        }
    }
}
