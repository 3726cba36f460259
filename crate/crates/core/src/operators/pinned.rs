use super::RadialProfile;
use crate::error::{domain, Error, Result};
use crate::measures::{dist2, DiscreteMeasure};
use crate::quadrature::{panels_on_edges, RadialGrid, RadialScheme};

/// Triweight kernel `(35/32)(1-u²)³` on `[-1, 1]`, twice continuously differentiable.
pub fn triweight(u: f64) -> f64 {
    if u.abs() >= 1.0 {
        0.0
    } else {
        let q = 1.0 - u * u;
        35.0 / 32.0 * q * q * q
    }
}

/// `∫_{-1}^{u} K`.
pub fn triweight_cdf(u: f64) -> f64 {
    if u <= -1.0 {
        0.0
    } else if u >= 1.0 {
        1.0
    } else {
        let u2 = u * u;
        0.5 + 35.0 / 32.0 * u * (1.0 - u2 + 0.6 * u2 * u2 - u2 * u2 * u2 / 7.0)
    }
}

/// Gauss–Legendre grid on `[0, t_max]`, panels of width `h/2`, 8 nodes each.
pub fn pinned_grid(t_max: f64, bandwidth: f64) -> Result<RadialGrid> {
    if !(bandwidth > 0.0 && t_max > 0.0) {
        return Err(domain("pinned grid needs positive range and bandwidth"));
    }
    let panels = (2.0 * t_max / bandwidth).ceil() as usize;
    let edges: Vec<f64> = (0..=panels)
        .map(|k| t_max * k as f64 / panels as f64)
        .collect();
    let (nodes, base_weights) = panels_on_edges(&edges, 8);
    Ok(RadialGrid {
        d: 1,
        scheme: RadialScheme::Uniform,
        r_min: 0.0,
        r_max: t_max,
        weights: base_weights.clone(),
        nodes,
        base_weights,
    })
}

/// Kernel-smoothed density of the distances `|x - y|`, `y ~ μ`, reported as
/// cell averages over the grid's cells. Mass below `t = 0` is reflected.
pub fn pinned_measure(
    mu: &DiscreteMeasure,
    x: &[f64],
    bandwidth: f64,
    grid: &RadialGrid,
) -> Result<RadialProfile> {
    if x.len() != mu.dim() {
        return Err(domain(format!(
            "pin in R^{}, measure in R^{}",
            x.len(),
            mu.dim()
        )));
    }
    if !(bandwidth >= mu.resolution()) || !bandwidth.is_finite() {
        return Err(Error::Precondition {
            message: format!("bandwidth {bandwidth} is below the measure's resolution scale"),
            minimum: mu.resolution(),
        });
    }
    let h = bandwidth;
    let dists: Vec<f64> = (0..mu.len())
        .map(|j| dist2(mu.point(j), x).sqrt())
        .collect();
    let far = dists.iter().cloned().fold(0.0, f64::max);
    if grid.r_max < far + h {
        return Err(Error::Precondition {
            message: "profile grid ends before the smoothed distances do".into(),
            minimum: far + h,
        });
    }
    let near = dists.iter().cloned().fold(f64::INFINITY, f64::min);
    if grid.r_min > 0.0 && near - h < grid.r_min {
        return Err(domain(
            "profile grid must start at 0 or below every smoothed distance",
        ));
    }
    let edges = grid.cell_edges();
    let mut mass = vec![0.0; grid.len()];
    let cell_of = |t: f64| edges.partition_point(|&e| e <= t).saturating_sub(1);
    for (&dj, &wj) in dists.iter().zip(mu.weights()) {
        let lo = cell_of(dj - h);
        let hi = cell_of(dj + h).min(grid.len() - 1);
        for i in lo..=hi {
            let a = (edges[i] - dj) / h;
            let b = (edges[i + 1] - dj) / h;
            mass[i] += wj * (triweight_cdf(b) - triweight_cdf(a));
        }
        if grid.r_min == 0.0 && dj < h {
            let hi = cell_of(h - dj).min(grid.len() - 1);
            for i in 0..=hi {
                let a = (edges[i] + dj) / h;
                let b = (edges[i + 1] + dj) / h;
                mass[i] += wj * (triweight_cdf(b) - triweight_cdf(a));
            }
        }
    }
    let values = mass
        .iter()
        .zip(&grid.base_weights)
        .map(|(m, v)| m / v)
        .collect();
    Ok(RadialProfile::from_real(grid.clone(), values))
}

/// `∫_a^b ν_x(t)² dt` for the smoothed density at bandwidth `h`.
pub fn pinned_l2(
    mu: &DiscreteMeasure,
    x: &[f64],
    interval: [f64; 2],
    bandwidth: f64,
) -> Result<f64> {
    let [a, b] = interval;
    if !(a < b) {
        return Err(domain(format!("interval [{a}, {b}] is empty")));
    }
    let far = (0..mu.len())
        .map(|j| dist2(mu.point(j), x).sqrt())
        .fold(0.0, f64::max);
    let grid = pinned_grid(far.max(b) + 2.0 * bandwidth, bandwidth)?;
    let profile = pinned_measure(mu, x, bandwidth, &grid)?;
    Ok(grid
        .nodes
        .iter()
        .zip(&grid.base_weights)
        .zip(&profile.values)
        .filter(|((t, _), _)| (a..=b).contains(*t))
        .map(|((_, w), v)| w * v.re * v.re)
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::{cantor_product_measure, uniform_measure, Shape};

    #[test]
    fn kernel_is_a_c2_density() {
        let n = 20000;
        let h = 2.0 / n as f64;
        let integral: f64 = (0..n)
            .map(|k| triweight(-1.0 + (k as f64 + 0.5) * h) * h)
            .sum();
        assert!((integral - 1.0).abs() < 1e-8);
        for u in [-0.7, -0.1, 0.0, 0.4, 0.95] {
            let eps = 1e-6;
            let deriv = (triweight_cdf(u + eps) - triweight_cdf(u - eps)) / (2.0 * eps);
            assert!((deriv - triweight(u)).abs() < 1e-8);
        }
        // value, slope and curvature all vanish at the support edge
        let e = 1e-4;
        assert!(triweight(1.0 - e) < 1e-10);
        assert!((triweight(1.0 - e) - triweight(1.0 - 2.0 * e)).abs() / e < 1e-6);
        assert_eq!(triweight_cdf(-1.0), 0.0);
        assert_eq!(triweight_cdf(1.0), 1.0);
    }

    #[test]
    fn disk_density_is_linear() {
        let mu = uniform_measure(Shape::Disk, 100_000).unwrap();
        let h = 0.01;
        let grid = pinned_grid(1.0 + 2.0 * h, h).unwrap();
        let p = pinned_measure(&mu, &[0.0, 0.0], h, &grid).unwrap();
        assert!((p.mass() - 1.0).abs() < 1e-6);
        let worst = grid
            .nodes
            .iter()
            .zip(&p.values)
            .filter(|(t, _)| **t <= 1.0 - h)
            .map(|(t, v)| (v.re - 2.0 * t).abs())
            .fold(0.0, f64::max);
        assert!(worst <= 0.02 * 2.0, "sup error {worst}");
        let l2 = pinned_l2(&mu, &[0.0, 0.0], [0.0, 1.0], h).unwrap();
        assert!((l2 - 4.0 / 3.0).abs() < 0.03 * 4.0 / 3.0);
    }

    #[test]
    fn circle_mass_concentrates_and_energy_scales() {
        let mu = uniform_measure(Shape::Circle, 4096).unwrap();
        let h = 0.02;
        let grid = pinned_grid(1.1, h).unwrap();
        let p = pinned_measure(&mu, &[0.0, 0.0], h, &grid).unwrap();
        let inside: f64 = grid
            .nodes
            .iter()
            .zip(&grid.base_weights)
            .zip(&p.values)
            .filter(|((t, _), _)| (1.0 - 3.0 * h..=1.0 + 3.0 * h).contains(*t))
            .map(|((_, w), v)| w * v.re)
            .sum();
        assert!(inside >= 0.99);
        // a point mass smoothed at bandwidth h has L² energy ∫K²/h = (350/429)/h
        let self_energy = 350.0 / 429.0;
        for h in [0.04, 0.02, 0.01] {
            let e = pinned_l2(&mu, &[0.0, 0.0], [0.0, 2.0], h).unwrap();
            assert!(
                (e * h - self_energy).abs() < 5e-3 * self_energy,
                "h={h}: {}",
                e * h
            );
        }
    }

    #[test]
    fn reflection_keeps_mass_near_the_pin() {
        let mu = cantor_product_measure(2, 0.25, 4).unwrap();
        let x = mu.point(7).to_vec();
        let h = 0.05;
        let grid = pinned_grid(2.0, h).unwrap();
        let p = pinned_measure(&mu, &x, h, &grid).unwrap();
        assert!((p.mass() - 1.0).abs() < 1e-12);
        assert!(p.values.iter().all(|v| v.re >= 0.0));
    }

    #[test]
    fn bandwidth_below_resolution_is_rejected() {
        let mu = cantor_product_measure(2, 0.25, 3).unwrap();
        let err = pinned_l2(&mu, &[0.0, 0.0], [0.0, 1.0], 1e-4).unwrap_err();
        match err {
            Error::Precondition { minimum, .. } => assert_eq!(minimum, mu.resolution()),
            other => panic!("unexpected {other:?}"),
        }
    }
}
