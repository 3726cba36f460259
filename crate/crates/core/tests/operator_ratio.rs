use pinlab::analysis::{beta_known, operator_bound_ratio};
use pinlab::measures::{uniform_measure, DiscreteMeasure, Shape, TestFunction};
use std::f64::consts::PI;

fn dilations(d: usize) -> Vec<TestFunction> {
    [0.25, 0.5, 1.0, 2.0, 4.0]
        .iter()
        .map(|&s| TestFunction::gaussian(&vec![0.0; d], s))
        .collect()
}

#[test]
fn atom_at_origin_reduces_to_plancherel() {
    // T_t f(0) = e^{-πt²/σ²}; the ratio against ‖f‖²_{L²} is σ-free
    for (d, oracle) in [(2, 1.0 / (2.0 * PI)), (3, 1.0 / (4.0 * PI))] {
        let atom = DiscreteMeasure::dirac(&vec![0.0; d]);
        for r in operator_bound_ratio(&dilations(d), &atom, 0.0, 0.0).unwrap() {
            assert!(
                (r.ratio - oracle).abs() <= 1e-6 * oracle,
                "d={d}: {} vs {oracle}",
                r.ratio
            );
        }
    }
}

#[test]
fn circle_pins_give_bounded_ratios() {
    let lambda = uniform_measure(Shape::Circle, 64).unwrap();
    let beta = beta_known(2, 1.0).unwrap();
    let ratios: Vec<f64> = operator_bound_ratio(&dilations(2), &lambda, beta, 0.01)
        .unwrap()
        .iter()
        .map(|r| r.ratio)
        .collect();
    assert!(
        ratios.iter().all(|r| r.is_finite() && *r > 0.0),
        "{ratios:?}"
    );
    let max = ratios.iter().cloned().fold(0.0, f64::max);
    let min = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
    assert!(max / min < 10.0, "{ratios:?}");
}
