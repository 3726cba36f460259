use super::RadialProfile;
use crate::error::{domain, Result};
use crate::measures::{DiscreteMeasure, TestFunction};
use crate::quadrature::{RadialGrid, SphereRule};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;

/// `T_t f(x) = ∫ f(x - tω) dω` by the sphere rule; exact `f(x)` at `t = 0`.
pub fn spherical_mean(f: &TestFunction, x: &[f64], t: f64, rule: &SphereRule) -> f64 {
    if t == 0.0 {
        return f.value(x);
    }
    let mut y = vec![0.0; x.len()];
    rule.iter()
        .map(|(w, v)| {
            for ((yi, xi), wi) in y.iter_mut().zip(x).zip(w) {
                *yi = xi - t * wi;
            }
            v * f.value(&y)
        })
        .sum()
}

// ∫ f̂(rω) e^{2πi x·rω} dω, i.e. (ω̂_r * f)(x).
fn extension_value(f: &TestFunction, x: &[f64], r: f64, rule: &SphereRule) -> Result<Complex64> {
    let mut xi = vec![0.0; x.len()];
    let mut acc = Complex64::new(0.0, 0.0);
    for (w, v) in rule.iter() {
        let mut phase = 0.0;
        for ((s, xk), wk) in xi.iter_mut().zip(x).zip(w) {
            *s = r * wk;
            phase += xk * *s;
        }
        acc += f.fourier(&xi)? * Complex64::from_polar(v, 2.0 * PI * phase);
    }
    Ok(acc)
}

fn check_dims(f: &TestFunction, x: &[f64], grid: &RadialGrid, rule: &SphereRule) -> Result<()> {
    let d = f.dim();
    if x.len() != d || grid.d != d || rule.dim() != d {
        return Err(domain(format!(
            "dimension mismatch: f in R^{d}, x in R^{}, grid d = {}, sphere rule d = {}",
            x.len(),
            grid.d,
            rule.dim()
        )));
    }
    Ok(())
}

/// `values[i] = ∫ conj(f̂(r_i ω)) e^{-2πi x·r_i ω} dω`.
pub fn extension_profile(
    f: &TestFunction,
    x: &[f64],
    grid: &RadialGrid,
    rule: &SphereRule,
) -> Result<RadialProfile> {
    check_dims(f, x, grid, rule)?;
    let values = grid
        .nodes
        .par_iter()
        .map(|&r| extension_value(f, x, r, rule).map(|v| v.conj()))
        .collect::<Result<Vec<_>>>()?;
    Ok(RadialProfile::new(grid.clone(), values))
}

#[derive(Debug, Clone, Serialize)]
pub struct Truncation {
    pub d: usize,
    pub r_max: f64,
    pub radial_nodes: usize,
    pub sphere_nodes: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityReport {
    pub x: Vec<f64>,
    pub lhs: f64,
    pub rhs: f64,
    pub rel_err: f64,
    pub truncation: Truncation,
}

fn rel_err(a: f64, b: f64) -> f64 {
    let m = a.max(b);
    if m == 0.0 {
        0.0
    } else {
        (a - b).abs() / m
    }
}

fn truncation(grid: &RadialGrid, rule: &SphereRule) -> Truncation {
    Truncation {
        d: grid.d,
        r_max: grid.r_max,
        radial_nodes: grid.len(),
        sphere_nodes: rule.len(),
    }
}

/// Physical side `Σ w_i |T_{t_i} f(x)|²` against the extension side
/// `Σ w_i |(ω̂_{r_i} * f)(x)|²` on the same radial grid.
pub fn identity_report(
    f: &TestFunction,
    x: &[f64],
    grid: &RadialGrid,
    rule: &SphereRule,
) -> Result<IdentityReport> {
    check_dims(f, x, grid, rule)?;
    let means: Vec<f64> = grid
        .nodes
        .par_iter()
        .map(|&t| spherical_mean(f, x, t, rule))
        .collect();
    let lhs = grid
        .weights
        .iter()
        .zip(&means)
        .map(|(w, m)| w * m * m)
        .sum();
    let rhs = extension_profile(f, x, grid, rule)?.energy();
    Ok(IdentityReport {
        x: x.to_vec(),
        lhs,
        rhs,
        rel_err: rel_err(lhs, rhs),
        truncation: truncation(grid, rule),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct WeightedNorm {
    /// `∫∫ |T_t f(x)|² t^{d-1} dt dλ(x)`.
    pub physical: f64,
    /// `∫∫ |(ω̂_r * f)(x)|² r^{d-1} dr dλ(x)`.
    pub extension: f64,
    pub rel_err: f64,
    pub pins: usize,
    pub truncation: Truncation,
}

/// Squared norm of `T_t f` in `L²(t^{d-1}dt × dλ)`, by both paths.
pub fn weighted_t_norm(
    f: &TestFunction,
    lambda: &DiscreteMeasure,
    grid: &RadialGrid,
    rule: &SphereRule,
) -> Result<WeightedNorm> {
    if lambda.dim() != f.dim() {
        return Err(domain(format!(
            "pin measure lives in R^{}, f in R^{}",
            lambda.dim(),
            f.dim()
        )));
    }
    check_dims(f, lambda.point(0), grid, rule)?;
    let per_pin = (0..lambda.len())
        .into_par_iter()
        .map(|j| {
            let x = lambda.point(j);
            let mut phys = 0.0;
            let mut ext = 0.0;
            for (&r, &w) in grid.nodes.iter().zip(&grid.weights) {
                let m = spherical_mean(f, x, r, rule);
                phys += w * m * m;
                ext += w * extension_value(f, x, r, rule)?.norm_sqr();
            }
            Ok((phys, ext))
        })
        .collect::<Result<Vec<_>>>()?;
    let (mut physical, mut extension) = (0.0, 0.0);
    for ((p, e), a) in per_pin.iter().zip(lambda.weights()) {
        physical += a * p;
        extension += a * e;
    }
    Ok(WeightedNorm {
        physical,
        extension,
        rel_err: rel_err(physical, extension),
        pins: lambda.len(),
        truncation: truncation(grid, rule),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::MeasureMeta;
    use crate::quadrature::{radial_grid, sphere_rule, RadialScheme};

    fn polar_oracle(a: f64, t: f64) -> f64 {
        // (1/2)∫_0^π e^{-π(a²+t²-2at cos θ)} sin θ dθ by composite Simpson
        let n = 20000;
        let h = PI / n as f64;
        let g = |th: f64| (-PI * (a * a + t * t - 2.0 * a * t * th.cos())).exp() * th.sin();
        let mut s = g(0.0) + g(PI);
        for k in 1..n {
            s += g(k as f64 * h) * if k % 2 == 1 { 4.0 } else { 2.0 };
        }
        0.5 * s * h / 3.0
    }

    #[test]
    fn mean_of_constant_and_centered_gaussian() {
        let rule = SphereRule::default_for(2).unwrap();
        let one = TestFunction::Constant { d: 2, value: 1.0 };
        assert!((spherical_mean(&one, &[0.3, 0.1], 2.0, &rule) - 1.0).abs() < 1e-14);
        let g = TestFunction::standard_gaussian(2);
        for t in [0.0, 0.5, 1.3] {
            let m = spherical_mean(&g, &[0.0, 0.0], t, &rule);
            assert!((m - (-PI * t * t).exp()).abs() < 1e-14);
        }
    }

    #[test]
    fn mean_matches_polar_integral_in_3d() {
        let rule = SphereRule::default_for(3).unwrap();
        let g = TestFunction::standard_gaussian(3);
        let a = 0.7;
        for t in [0.2, 0.6, 1.0, 1.7] {
            let m = spherical_mean(&g, &[a, 0.0, 0.0], t, &rule);
            let oracle = polar_oracle(a, t);
            assert!((m - oracle).abs() < 1e-9, "t={t}: {m} vs {oracle}");
        }
    }

    #[test]
    fn extension_of_centered_gaussian() {
        let rule = SphereRule::default_for(3).unwrap();
        let grid = radial_grid(3, 0.0, 3.0, 32, RadialScheme::Uniform).unwrap();
        let g = TestFunction::standard_gaussian(3);
        let p = extension_profile(&g, &[0.0; 3], &grid, &rule).unwrap();
        for (r, v) in grid.nodes.iter().zip(&p.values) {
            assert!((v.re - (-PI * r * r).exp()).abs() < 1e-12);
            assert!(v.im.abs() < 1e-12);
        }
        let a = 0.7;
        let p = extension_profile(&g, &[a, 0.0, 0.0], &grid, &rule).unwrap();
        for (r, v) in grid.nodes.iter().zip(&p.values) {
            let u = 2.0 * PI * r * a;
            let oracle = (-PI * r * r).exp() * u.sin() / u;
            assert!((v.norm() - oracle.abs()).abs() < 1e-9);
            assert!(v.norm() <= (-PI * r * r).exp() + 1e-13);
        }
    }

    #[test]
    fn gaussian_identity_has_closed_value() {
        // both sides equal ∫ e^{-2πr²} r dr = 1/(4π) at x = 0 in the plane
        let rule = SphereRule::default_for(2).unwrap();
        let grid = radial_grid(2, 0.0, 6.0, 128, RadialScheme::Uniform).unwrap();
        let rep = identity_report(
            &TestFunction::standard_gaussian(2),
            &[0.0, 0.0],
            &grid,
            &rule,
        )
        .unwrap();
        let exact = 1.0 / (4.0 * PI);
        assert!((rep.lhs - exact).abs() < 1e-12);
        assert!((rep.rhs - exact).abs() < 1e-12);
        assert!(rep.rel_err < 1e-10);
    }

    #[test]
    fn grid_input_without_resolution_is_rejected() {
        let field = crate::measures::gaussian_density(2, 16).unwrap();
        let f = TestFunction::Grid(field);
        let rule = sphere_rule(2, 32).unwrap();
        let grid = radial_grid(2, 0.0, 6.0, 16, RadialScheme::Uniform).unwrap();
        assert!(matches!(
            extension_profile(&f, &[0.0, 0.0], &grid, &rule),
            Err(crate::Error::Resolution(_))
        ));
    }

    #[test]
    fn weighted_norm_degenerate_and_linear() {
        let rule = sphere_rule(2, 128).unwrap();
        let grid = radial_grid(2, 0.0, 5.0, 64, RadialScheme::Uniform).unwrap();
        let f = TestFunction::shifted_gaussian(2);
        let p = [0.2, -0.4];
        let q = [-0.5, 0.1];
        let single = weighted_t_norm(&f, &DiscreteMeasure::dirac(&p), &grid, &rule).unwrap();
        let rep = identity_report(&f, &p, &grid, &rule).unwrap();
        assert!((single.physical - rep.lhs).abs() < 1e-15);
        let other = identity_report(&f, &q, &grid, &rule).unwrap();
        let pair =
            DiscreteMeasure::uniform_on(2, [p, q].concat(), MeasureMeta::new("pair", &[], 0.0))
                .unwrap();
        let both = weighted_t_norm(&f, &pair, &grid, &rule).unwrap();
        assert!((both.physical - 0.5 * (rep.lhs + other.lhs)).abs() < 1e-14);
        assert!(both.rel_err < 1e-8);
    }
}
