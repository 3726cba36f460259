//! Sphere rules for the normalized surface measure and radial grids for
//! integrals of the form `∫ g(r) r^{d-1} dr`.

use crate::error::{domain, Error, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Gauss–Legendre nodes and weights on `[-1, 1]`, nodes ascending.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n > 0);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - z * z) * dp * dp);
        nodes[i] = -z;
        nodes[n - 1 - i] = z;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

/// Quadrature rule for the normalized surface measure on `S^{d-1}`.
#[derive(Debug, Clone)]
pub struct SphereRule {
    d: usize,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl SphereRule {
    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn node(&self, k: usize) -> &[f64] {
        &self.nodes[k * self.d..(k + 1) * self.d]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[f64], f64)> + '_ {
        self.nodes
            .chunks_exact(self.d)
            .zip(self.weights.iter().copied())
    }

    pub fn integrate(&self, f: impl Fn(&[f64]) -> f64) -> f64 {
        self.iter().map(|(w, wt)| wt * f(w)).sum()
    }

    /// Default resolution, chosen so that `e^{-2πi u e_1·ω}` is integrated to
    /// 1e-8 for `u ≤ 20`.
    pub fn default_resolution(d: usize) -> usize {
        match d {
            2 => 256,
            _ => 96,
        }
    }

    pub fn default_for(d: usize) -> Result<Self> {
        sphere_rule(d, Self::default_resolution(d))
    }
}

/// Sphere rule on `S^{d-1}`.
///
/// `d = 2`: `resolution` equally spaced angles. `d = 3`: `resolution`
/// Gauss–Legendre nodes in the polar cosine times `2·resolution` equally
/// spaced azimuths.
pub fn sphere_rule(d: usize, resolution: usize) -> Result<SphereRule> {
    if resolution == 0 {
        return Err(domain("sphere rule resolution must be positive"));
    }
    match d {
        2 => {
            let n = resolution;
            let mut nodes = Vec::with_capacity(2 * n);
            for k in 0..n {
                let th = 2.0 * PI * k as f64 / n as f64;
                nodes.push(th.cos());
                nodes.push(th.sin());
            }
            Ok(SphereRule {
                d,
                nodes,
                weights: vec![1.0 / n as f64; n],
            })
        }
        3 => {
            let (z, wz) = gauss_legendre(resolution);
            let na = 2 * resolution;
            let mut nodes = Vec::with_capacity(3 * resolution * na);
            let mut weights = Vec::with_capacity(resolution * na);
            for (zi, wi) in z.iter().zip(&wz) {
                let rho = (1.0 - zi * zi).max(0.0).sqrt();
                for k in 0..na {
                    let ph = 2.0 * PI * (k as f64 + 0.5) / na as f64;
                    nodes.extend_from_slice(&[rho * ph.cos(), rho * ph.sin(), *zi]);
                    weights.push(0.5 * wi / na as f64);
                }
            }
            Ok(SphereRule { d, nodes, weights })
        }
        _ => Err(Error::UnsupportedDimension {
            d,
            reason: "sphere rules are implemented for d = 2 and d = 3",
        }),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RadialScheme {
    /// Composite Gauss–Legendre on panels of equal width.
    Uniform,
    /// Geometrically spaced nodes with exact piecewise-linear product weights.
    Log,
}

const PANEL_ORDER: usize = 8;

/// Quadrature grid on `[r_min, r_max]` for `∫ g(r) r^{d-1} dr`.
///
/// `base_weights` integrate against plain `dr`; `weights` carry the
/// `r^{d-1}` factor.
#[derive(Debug, Clone, Serialize)]
pub struct RadialGrid {
    pub d: usize,
    pub scheme: RadialScheme,
    pub r_min: f64,
    pub r_max: f64,
    pub nodes: Vec<f64>,
    pub base_weights: Vec<f64>,
    pub weights: Vec<f64>,
}

impl RadialGrid {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `Σ w_i g(r_i) ≈ ∫ g(r) r^{d-1} dr`.
    pub fn integrate(&self, g: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&r, &w)| w * g(r))
            .sum()
    }

    /// Cell edges formed by cumulative base weights; node `i` lies in
    /// `[edges[i], edges[i+1]]`.
    pub fn cell_edges(&self) -> Vec<f64> {
        let mut edges = Vec::with_capacity(self.len() + 1);
        let mut acc = self.r_min;
        edges.push(acc);
        for w in &self.base_weights {
            acc += w;
            edges.push(acc);
        }
        edges
    }

    /// Image of this grid under `r' = r²`, carrying weights for
    /// `∫ h(r') r'^{(d-2)/2} dr'`.
    pub fn squared_image(&self) -> RadialGrid {
        let nodes: Vec<f64> = self.nodes.iter().map(|r| r * r).collect();
        let base_weights = self
            .nodes
            .iter()
            .zip(&self.base_weights)
            .map(|(r, v)| 2.0 * r * v)
            .collect();
        // dr' = 2r dr and r'^{(d-2)/2} = r^{d-2}
        let weights = self.weights.iter().map(|w| 2.0 * w).collect();
        RadialGrid {
            d: self.d,
            scheme: self.scheme,
            r_min: self.r_min * self.r_min,
            r_max: self.r_max * self.r_max,
            nodes,
            base_weights,
            weights,
        }
    }
}

/// Build a radial grid with at least `n` nodes.
pub fn radial_grid(
    d: usize,
    r_min: f64,
    r_max: f64,
    n: usize,
    scheme: RadialScheme,
) -> Result<RadialGrid> {
    if !(r_min >= 0.0 && r_max > r_min && r_max.is_finite()) {
        return Err(domain(format!(
            "radial range must satisfy 0 <= r_min < r_max, got [{r_min}, {r_max}]"
        )));
    }
    if n < 2 {
        return Err(domain("radial grid needs n >= 2"));
    }
    let p = (d as i32) - 1;
    let (nodes, base_weights) = match scheme {
        RadialScheme::Uniform => panel_rule(r_min, r_max, n),
        RadialScheme::Log => {
            if r_min <= 0.0 {
                return Err(domain("log radial grid requires r_min > 0"));
            }
            let q = (r_max / r_min).powf(1.0 / (n - 1) as f64);
            let mut nodes: Vec<f64> = (0..n).map(|i| r_min * q.powi(i as i32)).collect();
            nodes[n - 1] = r_max;
            let base = hat_weights(&nodes, 0);
            (nodes, base)
        }
    };
    let weights = match scheme {
        RadialScheme::Uniform => nodes
            .iter()
            .zip(&base_weights)
            .map(|(r, v)| v * r.powi(p))
            .collect(),
        RadialScheme::Log => hat_weights(&nodes, p),
    };
    Ok(RadialGrid {
        d,
        scheme,
        r_min,
        r_max,
        nodes,
        base_weights,
        weights,
    })
}

/// Composite Gauss–Legendre on equal panels covering `[a, b]`, at least `n` nodes.
pub fn panel_rule(a: f64, b: f64, n: usize) -> (Vec<f64>, Vec<f64>) {
    let order = PANEL_ORDER.min(n);
    let panels = n.div_ceil(order);
    let edges: Vec<f64> = (0..=panels)
        .map(|k| a + (b - a) * k as f64 / panels as f64)
        .collect();
    panels_on_edges(&edges, order)
}

/// Gauss–Legendre rule of the given order on each interval of `edges`.
pub fn panels_on_edges(edges: &[f64], order: usize) -> (Vec<f64>, Vec<f64>) {
    let (x, w) = gauss_legendre(order);
    let mut nodes = Vec::with_capacity(order * edges.len());
    let mut weights = Vec::with_capacity(order * edges.len());
    for pair in edges.windows(2) {
        let (lo, hi) = (pair[0], pair[1]);
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        for (xi, wi) in x.iter().zip(&w) {
            nodes.push(mid + half * xi);
            weights.push(half * wi);
        }
    }
    (nodes, weights)
}

// ∫ hat_i(r) r^p dr for the piecewise-linear hats on `nodes`. Each interval
// integrand is a polynomial of degree p+1, integrated exactly by 8-point GL.
fn hat_weights(nodes: &[f64], p: i32) -> Vec<f64> {
    let (x, w) = gauss_legendre(PANEL_ORDER);
    let mut out = vec![0.0; nodes.len()];
    for i in 0..nodes.len() - 1 {
        let (a, b) = (nodes[i], nodes[i + 1]);
        let len = b - a;
        let (mut left, mut right) = (0.0, 0.0);
        for (xi, wi) in x.iter().zip(&w) {
            let tau = 0.5 * (xi + 1.0);
            let r = a + len * tau;
            let f = 0.5 * wi * len * r.powi(p);
            left += (1.0 - tau) * f;
            right += tau * f;
        }
        out[i] += left;
        out[i + 1] += right;
    }
    out
}

/// Symmetric time grid on `[-t_max, t_max]`: equal panels of width `step`
/// on `[-t_core, t_core]` plus geometric panels (ratio 1.25) beyond.
#[derive(Debug, Clone)]
pub struct TimeGrid {
    pub t_core: f64,
    pub t_max: f64,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

pub fn symmetric_time_grid(t_core: f64, t_max: f64, step: f64) -> Result<TimeGrid> {
    if !(t_core > 0.0 && t_max >= t_core && step > 0.0) {
        return Err(domain(format!(
            "time grid requires 0 < t_core <= t_max and step > 0, got {t_core}, {t_max}, {step}"
        )));
    }
    let core_panels = (2.0 * t_core / step).ceil() as usize;
    let edges: Vec<f64> = (0..=core_panels)
        .map(|k| -t_core + 2.0 * t_core * k as f64 / core_panels as f64)
        .collect();
    let mut outer = vec![t_core];
    while *outer.last().unwrap() < t_max {
        let next = (outer.last().unwrap() * 1.25).min(t_max);
        outer.push(next);
    }
    let (mut nodes, mut weights) = panels_on_edges(&edges, 16);
    if outer.len() > 1 {
        let (pn, pw) = panels_on_edges(&outer, 8);
        let neg: Vec<f64> = pn.iter().map(|t| -t).collect();
        nodes.extend(neg.iter().rev());
        weights.extend(pw.iter().rev());
        nodes.extend(&pn);
        weights.extend(&pw);
    }
    let mut idx: Vec<usize> = (0..nodes.len()).collect();
    idx.sort_by(|&a, &b| nodes[a].total_cmp(&nodes[b]));
    let nodes_sorted = idx.iter().map(|&i| nodes[i]).collect();
    let weights_sorted = idx.iter().map(|&i| weights[i]).collect();
    Ok(TimeGrid {
        t_core,
        t_max,
        nodes: nodes_sorted,
        weights: weights_sorted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        for n in 1..20 {
            let (x, w) = gauss_legendre(n);
            for k in 0..(2 * n) {
                let got: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(k as i32)).sum();
                let want = if k % 2 == 0 {
                    2.0 / (k + 1) as f64
                } else {
                    0.0
                };
                assert!((got - want).abs() < 1e-13, "n={n} k={k}");
            }
            assert!(x.windows(2).all(|p| p[0] < p[1]));
        }
    }

    #[test]
    fn sphere_rules_are_normalized() {
        let r = sphere_rule(2, 8).unwrap();
        assert!((r.integrate(|_| 1.0) - 1.0).abs() < 1e-15);
        let r = sphere_rule(2, 256).unwrap();
        assert!((r.integrate(|w| w[0] * w[0]) - 0.5).abs() < 1e-12);
        let r = sphere_rule(3, 64).unwrap();
        assert!((r.integrate(|w| w[2] * w[2]) - 1.0 / 3.0).abs() < 1e-10);
        assert!((r.integrate(|w| w[0] * w[0]) - 1.0 / 3.0).abs() < 1e-10);
        for rule in [sphere_rule(2, 31).unwrap(), sphere_rule(3, 17).unwrap()] {
            assert!(rule.weights().iter().all(|&w| w > 0.0));
            for (w, _) in rule.iter() {
                let n: f64 = w.iter().map(|x| x * x).sum();
                assert!((n.sqrt() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn unsupported_sphere_dimension() {
        assert!(matches!(
            sphere_rule(4, 10),
            Err(Error::UnsupportedDimension { d: 4, .. })
        ));
    }

    #[test]
    fn default_rules_resolve_plane_waves() {
        for d in [2, 3] {
            let rule = SphereRule::default_for(d).unwrap();
            for i in 0..=80 {
                let u = i as f64 * 0.25;
                let got: Complex64 = rule
                    .iter()
                    .map(|(w, wt)| wt * Complex64::from_polar(1.0, -2.0 * PI * u * w[0]))
                    .sum();
                let want = crate::specfun::surface_ft(d, u).unwrap();
                assert!(
                    (got.re - want).abs() < 1e-8 && got.im.abs() < 1e-8,
                    "d={d} u={u}"
                );
            }
        }
    }

    #[test]
    fn radial_constant_integrals() {
        let g = radial_grid(2, 0.0, 1.0, 16, RadialScheme::Uniform).unwrap();
        assert!((g.integrate(|_| 1.0) - 0.5).abs() < 1e-14);
        let g = radial_grid(3, 0.0, 2.0, 512, RadialScheme::Uniform).unwrap();
        assert!((g.integrate(|_| 1.0) - 8.0 / 3.0).abs() < 1e-10 * 8.0 / 3.0);
        for d in 1..=4 {
            let g = radial_grid(d, 0.5, 40.0, 300, RadialScheme::Log).unwrap();
            let want = (40f64.powi(d as i32) - 0.5f64.powi(d as i32)) / d as f64;
            assert!((g.integrate(|_| 1.0) / want - 1.0).abs() < 1e-10, "d={d}");
        }
    }

    #[test]
    fn radial_gaussian_integral() {
        let g = radial_grid(2, 0.0, 6.0, 1024, RadialScheme::Uniform).unwrap();
        let v = g.integrate(|r| (-4.0 * PI * r * r).exp());
        assert!((v - 1.0 / (8.0 * PI)).abs() < 1e-9);
    }

    #[test]
    fn radial_grid_errors() {
        assert!(radial_grid(2, 1.0, 0.5, 10, RadialScheme::Uniform).is_err());
        assert!(radial_grid(2, 0.0, 1.0, 10, RadialScheme::Log).is_err());
        assert!(radial_grid(2, 0.0, 1.0, 1, RadialScheme::Uniform).is_err());
    }

    #[test]
    fn doubling_resolution_converges_at_second_order() {
        // smooth integrands: ∫ cos(3r) e^{-r} r^{d-1} dr over [0.2, 5]
        for scheme in [RadialScheme::Uniform, RadialScheme::Log] {
            for d in [2, 3] {
                let f = |r: f64| (3.0 * r).cos() * (-r).exp();
                let fine = radial_grid(d, 0.2, 5.0, 8192, scheme).unwrap().integrate(f);
                let mut prev = f64::INFINITY;
                for n in [16, 32, 64] {
                    let err =
                        (radial_grid(d, 0.2, 5.0, n, scheme).unwrap().integrate(f) - fine).abs();
                    if prev.is_finite() && prev > 1e-13 {
                        assert!(err * 4.0 <= prev, "{scheme:?} d={d} n={n}: {err} vs {prev}");
                    }
                    prev = err;
                }
            }
        }
    }

    #[test]
    fn cell_edges_interlace_nodes() {
        for scheme in [RadialScheme::Uniform, RadialScheme::Log] {
            let g = radial_grid(1, 0.1, 3.0, 64, scheme).unwrap();
            let e = g.cell_edges();
            for (i, r) in g.nodes.iter().enumerate() {
                assert!(e[i] <= *r && *r <= e[i + 1], "{scheme:?} node {i}");
            }
            assert!((e[g.len()] - 3.0).abs() < 1e-12);
        }
    }

    #[test]
    fn time_grid_is_symmetric_and_integrates_lengths() {
        let t = symmetric_time_grid(16.0, 1500.0, 0.25).unwrap();
        let len: f64 = t.weights.iter().sum();
        assert!((len - 3000.0).abs() < 1e-9);
        let odd: f64 = t.nodes.iter().zip(&t.weights).map(|(t, w)| t * w).sum();
        assert!(odd.abs() < 1e-8);
        assert!(t.nodes.windows(2).all(|p| p[0] < p[1]));
    }
}
