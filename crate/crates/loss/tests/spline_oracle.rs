//! Global spline fit against a dense-elimination oracle.

mod common;

use common::{dense_fit, max_abs, max_abs_diff};
use loss::grid::Grid1D;
use loss::spline::{derivative_at_knots, eval_spline, fit_global};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn random_fit_matches_dense_solve() {
    let n = 8;
    let grid = Grid1D::new(-1.0, 1.5, n).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for _ in 0..20 {
        let samples: Vec<f64> = (0..=n).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let fast = fit_global(&samples, &grid).unwrap();
        let dense = dense_fit(&samples, n, grid.h());
        assert!(max_abs_diff(fast.values(), &dense) <= 1e-12);
    }
}

#[test]
fn midpoint_evaluation_matches_dense_coefficients() {
    let n = 8;
    let grid = Grid1D::new(0.0, 4.0, n).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let samples: Vec<f64> = (0..=n).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let fast = fit_global(&samples, &grid).unwrap();
    let dense = dense_fit(&samples, n, grid.h());
    for cell in 0..n {
        let x = grid.knot(cell as i64) + 0.5 * grid.h();
        let got = eval_spline(&fast, x).unwrap();
        let want: f64 = (-1..=n as i64 + 1)
            .map(|j| dense[(j + 1) as usize] * loss::spline::eval_basis(j, x, &grid))
            .sum();
        assert!((got - want).abs() <= 1e-12, "cell {cell}: {got} vs {want}");
    }
}

#[test]
fn sine_derivative_converges_at_fourth_order() {
    // Max knot-derivative error for sin and a Gaussian over three
    // refinements; each halving should reduce the error ~16x. The test
    // functions have (numerically) vanishing second derivatives at the
    // domain ends, as the natural closure demands.
    let tau = 2.0 * std::f64::consts::PI;
    let cases: [(f64, f64, Box<dyn Fn(f64) -> f64>, Box<dyn Fn(f64) -> f64>); 2] = [
        (0.0, tau, Box::new(|x: f64| x.sin()), Box::new(|x: f64| x.cos())),
        (
            -6.0,
            6.0,
            Box::new(|x: f64| (-x * x).exp()),
            Box::new(|x: f64| -2.0 * x * (-x * x).exp()),
        ),
    ];
    for (a, b, f, df) in cases {
        let err = |n: usize| {
            let grid = Grid1D::new(a, b, n).unwrap();
            let samples: Vec<f64> = (0..=n as i64).map(|i| f(grid.knot(i))).collect();
            let d = derivative_at_knots(&fit_global(&samples, &grid).unwrap());
            d.iter()
                .enumerate()
                .map(|(i, v)| (v - df(grid.knot(i as i64))).abs())
                .fold(0.0f64, f64::max)
        };
        for n in [32usize, 64] {
            let order = (err(n) / err(2 * n)).log2();
            assert!(
                (3.5..=4.5).contains(&order),
                "observed order {order} at n = {n}"
            );
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    // Interpolation invariant: the fitted spline passes through every
    // sample to machine precision, for arbitrary data and grids.
    #[test]
    fn fit_interpolates_samples(
        seed in 0u64..1u64 << 48,
        n in 4usize..80,
        x_min in -10.0f64..10.0,
        span in 0.1f64..20.0,
    ) {
        let grid = Grid1D::new(x_min, x_min + span, n).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let samples: Vec<f64> = (0..=n).map(|_| rng.gen_range(-5.0..5.0)).collect();
        let c = fit_global(&samples, &grid).unwrap();
        let scale = max_abs(&samples).max(1e-300);
        for i in 0..=n {
            let v = eval_spline(&c, grid.knot(i as i64)).unwrap();
            prop_assert!((v - samples[i]).abs() <= 1e-12 * scale);
        }
        let (rl, rr) = c.natural_residuals();
        prop_assert!(rl.abs() <= 1e-12 && rr.abs() <= 1e-12);
    }
}
