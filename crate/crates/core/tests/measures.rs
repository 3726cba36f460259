use pinlab::measures::{
    cantor_product_measure, uniform_measure, DiscreteMeasure, Shape, TestFunction,
};
use pinlab::operators::{ball_energy_curve, pinned_grid, pinned_l2, pinned_measure, triweight_cdf};
use proptest::prelude::*;
use std::time::Instant;

#[test]
fn disk_profile_is_two_t() {
    let mu = uniform_measure(Shape::Disk, 100_000).unwrap();
    let h = 0.01;
    let grid = pinned_grid(1.0 + 2.0 * h, h).unwrap();
    let p = pinned_measure(&mu, &[0.0, 0.0], h, &grid).unwrap();
    let worst = grid
        .nodes
        .iter()
        .zip(p.real())
        .filter(|(t, _)| **t <= 1.0 - h)
        .map(|(t, v)| (v - 2.0 * t).abs())
        .fold(0.0, f64::max);
    // 2% of the density's maximum
    assert!(worst <= 0.02 * 2.0, "{worst}");
    assert!((p.mass() - 1.0).abs() < 1e-6);
}

#[test]
fn circle_energy_grows_like_inverse_bandwidth() {
    let mu = uniform_measure(Shape::Circle, 4096).unwrap();
    let hs = [0.04, 0.02, 0.01];
    let e: Vec<f64> = hs
        .iter()
        .map(|&h| pinned_l2(&mu, &[0.0, 0.0], [0.0, 2.0], h).unwrap())
        .collect();
    let (lx, ly): (Vec<f64>, Vec<f64>) = hs.iter().zip(&e).map(|(h, v)| (h.ln(), v.ln())).unzip();
    let mx = lx.iter().sum::<f64>() / 3.0;
    let my = ly.iter().sum::<f64>() / 3.0;
    let slope = lx
        .iter()
        .zip(&ly)
        .map(|(x, y)| (x - mx) * (y - my))
        .sum::<f64>()
        / lx.iter().map(|x| (x - mx) * (x - mx)).sum::<f64>();
    assert!((slope + 1.0).abs() <= 0.1, "slope {slope}");
}

#[test]
fn cantor_ball_energy_is_linear_in_radius() {
    let start = Instant::now();
    let mu = cantor_product_measure(2, 0.25, 6).unwrap();
    let one = TestFunction::Constant { d: 2, value: 1.0 };
    let radii: Vec<f64> = (0..=6).map(|k| 2f64.powi(k)).collect();
    let e = ball_energy_curve(&one, &mu, &radii).unwrap();
    let ratios: Vec<f64> = e.iter().zip(&radii).map(|(v, r)| v / r).collect();
    let max = ratios.iter().cloned().fold(0.0, f64::max);
    let min = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
    assert!(min > 0.0 && max / min <= 20.0, "{ratios:?}");
    assert!(start.elapsed().as_secs() <= 120);
}

fn shape_measure(which: u8) -> DiscreteMeasure {
    match which {
        0 => uniform_measure(Shape::Circle, 2048).unwrap(),
        1 => uniform_measure(Shape::Square, 4096).unwrap(),
        2 => uniform_measure(Shape::Sphere, 2048).unwrap(),
        _ => cantor_product_measure(2, 0.25, 4).unwrap(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn pinned_mass_is_one(which in 0u8..4, pin in prop::collection::vec(-1.5f64..1.5, 3), h in 0.02f64..0.2) {
        let mu = shape_measure(which);
        let x = &pin[..mu.dim()];
        let h = h.max(mu.resolution());
        let far = mu.iter().map(|(p, _)| p.iter().zip(x).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt()).fold(0.0, f64::max);
        let grid = pinned_grid(far + 2.0 * h, h).unwrap();
        let p = pinned_measure(&mu, x, h, &grid).unwrap();
        prop_assert!((p.mass() - 1.0).abs() < 1e-6);
        prop_assert!(p.real().iter().all(|v| *v >= 0.0));
    }

    #[test]
    fn kernel_cdf_is_monotone(a in -1.2f64..1.2, b in -1.2f64..1.2) {
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        prop_assert!(triweight_cdf(lo) <= triweight_cdf(hi) + 1e-15);
        prop_assert!((triweight_cdf(lo) + triweight_cdf(-lo) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn measures_round_trip_through_json(depth in 1u32..4, ratio in 0.1f64..0.45) {
        let mu = cantor_product_measure(2, ratio, depth).unwrap();
        let back = DiscreteMeasure::from_json(&mu.to_json().unwrap()).unwrap();
        prop_assert_eq!(back.points_flat(), mu.points_flat());
        prop_assert_eq!(back.weights(), mu.weights());
    }

    #[test]
    fn ball_mass_is_monotone(r1 in 0.01f64..1.5, r2 in 0.01f64..1.5) {
        let mu = cantor_product_measure(2, 0.25, 4).unwrap();
        let c = mu.point(3).to_vec();
        let (lo, hi) = if r1 < r2 { (r1, r2) } else { (r2, r1) };
        prop_assert!(mu.ball_mass(&c, lo) <= mu.ball_mass(&c, hi));
    }
}
