//! Property-based invariants of the numerical kernels.

use presslab_core::numerics::{bessel_i0, derivative, find_root, integrate};
use presslab_core::qbox::gibbs_populations;
use proptest::prelude::*;

proptest! {
    #[test]
    fn bessel_even_and_at_least_one(x in -300.0f64..300.0) {
        let v = bessel_i0(x);
        prop_assert!(v >= 1.0);
        prop_assert_eq!(v, bessel_i0(-x));
    }

    #[test]
    fn quadrature_additive(
        a in -3.0f64..3.0,
        len1 in 0.01f64..2.0,
        len2 in 0.01f64..2.0,
        c0 in -2.0f64..2.0,
        c1 in -2.0f64..2.0,
        freq in 0.2f64..3.0,
    ) {
        let f = |x: f64| c0 + c1 * (freq * x).sin();
        let b = a + len1;
        let c = b + len2;
        let whole = integrate(f, a, c, 1e-11).unwrap();
        let left = integrate(f, a, b, 1e-11).unwrap();
        let right = integrate(f, b, c, 1e-11).unwrap();
        let budget = whole.error_estimate + left.error_estimate + right.error_estimate + 1e-11;
        prop_assert!(
            (whole.value - left.value - right.value).abs() <= budget,
            "{} vs {} + {}", whole.value, left.value, right.value
        );
    }

    #[test]
    fn root_stays_in_bracket(
        root in -10.0f64..10.0,
        below in 0.01f64..5.0,
        above in 0.01f64..5.0,
        steep in 0.5f64..4.0,
    ) {
        // monotone cubic crossing zero at `root`
        let g = move |x: f64| {
            let t = x - root;
            steep * t * (1.0 + t * t)
        };
        let (lo, hi) = (root - below, root + above);
        let r = find_root(g, lo, hi, 1e-11).unwrap();
        prop_assert!(r.root >= lo && r.root <= hi);
        prop_assert!(r.residual.abs() <= 1e-11);
        prop_assert!((r.root - root).abs() < 1e-9);
    }

    #[test]
    fn derivative_exact_on_cubics(
        c3 in -3.0f64..3.0,
        c2 in -3.0f64..3.0,
        c1 in -3.0f64..3.0,
        c0 in -3.0f64..3.0,
        x in -5.0f64..5.0,
    ) {
        let f = move |t: f64| ((c3 * t + c2) * t + c1) * t + c0;
        let df = (3.0 * c3 * x + 2.0 * c2) * x + c1;
        let got = derivative(f, x, 1e-3);
        let scale = df.abs().max(1.0);
        prop_assert!((got - df).abs() / scale < 1e-9, "{got} vs {df}");
    }

    #[test]
    fn gibbs_is_a_distribution(
        energies in prop::collection::vec(-50.0f64..50.0, 1..12),
        beta in 0.0f64..10.0,
    ) {
        let p = gibbs_populations(&energies, beta).unwrap();
        let sum: f64 = p.populations().iter().sum();
        prop_assert!((sum - 1.0).abs() < 1e-12);
        prop_assert!(p.populations().iter().all(|&t| t >= 0.0));
        // colder levels never get less weight
        for i in 0..energies.len() {
            for j in 0..energies.len() {
                if energies[i] < energies[j] {
                    prop_assert!(p.populations()[i] >= p.populations()[j] - 1e-12);
                }
            }
        }
    }
}
