use super::RadialProfile;
use crate::error::{domain, Result};
use crate::measures::{DiscreteMeasure, GridField};
use crate::quadrature::{RadialGrid, SphereRule};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;

/// `σ(R_max)` above this marks a Mattila integral whose integrand has not decayed.
pub const NON_DECAY_THRESHOLD: f64 = 0.01;

/// Anything with a Fourier transform on `R^d`.
pub trait FourierSource: Sync {
    fn dim(&self) -> usize;
    fn transform(&self, xi: &[f64]) -> Complex64;
}

impl FourierSource for DiscreteMeasure {
    fn dim(&self) -> usize {
        DiscreteMeasure::dim(self)
    }

    fn transform(&self, xi: &[f64]) -> Complex64 {
        mu_hat(self, xi)
    }
}

impl FourierSource for GridField {
    fn dim(&self) -> usize {
        GridField::dim(self)
    }

    fn transform(&self, xi: &[f64]) -> Complex64 {
        self.fourier(xi)
    }
}

/// `μ̂(ξ) = Σ_j w_j e^{-2πi x_j·ξ}`.
pub fn mu_hat(mu: &DiscreteMeasure, xi: &[f64]) -> Complex64 {
    let (mut re, mut im) = (0.0, 0.0);
    for (p, w) in mu.iter() {
        let phase: f64 = p.iter().zip(xi).map(|(a, b)| a * b).sum();
        let (s, c) = (2.0 * PI * phase).sin_cos();
        re += w * c;
        im -= w * s;
    }
    Complex64::new(re, im)
}

/// `σ(r) = ∫ |μ̂(rω)|² dω`.
pub fn spherical_average<S: FourierSource + ?Sized>(src: &S, r: f64, rule: &SphereRule) -> f64 {
    let mut xi = vec![0.0; src.dim()];
    rule.iter()
        .map(|(w, v)| {
            for (s, wk) in xi.iter_mut().zip(w) {
                *s = r * wk;
            }
            v * src.transform(&xi).norm_sqr()
        })
        .sum()
}

/// `σ` sampled on every node of `grid`.
pub fn sigma_profile<S: FourierSource + ?Sized>(
    src: &S,
    grid: &RadialGrid,
    rule: &SphereRule,
) -> Result<RadialProfile> {
    if grid.d != src.dim() || rule.dim() != src.dim() {
        return Err(domain(format!(
            "dimension mismatch: source in R^{}, grid d = {}, sphere rule d = {}",
            src.dim(),
            grid.d,
            rule.dim()
        )));
    }
    let values: Vec<f64> = grid
        .nodes
        .par_iter()
        .map(|&r| spherical_average(src, r, rule))
        .collect();
    Ok(RadialProfile::from_real(grid.clone(), values))
}

#[derive(Debug, Clone, Serialize)]
pub struct MattilaReport {
    pub value: f64,
    pub r_max: f64,
    pub sigma_at_rmax: f64,
    pub non_decay: bool,
    pub radial_nodes: usize,
    pub sphere_nodes: usize,
}

/// `M(μ) = ∫ σ(r)² r^{d-1} dr` truncated at the grid's `r_max`.
pub fn mattila_integral<S: FourierSource + ?Sized>(
    src: &S,
    grid: &RadialGrid,
    rule: &SphereRule,
) -> Result<MattilaReport> {
    let profile = sigma_profile(src, grid, rule)?;
    let value = grid
        .weights
        .iter()
        .zip(&profile.values)
        .map(|(w, s)| w * s.re * s.re)
        .sum();
    let sigma_at_rmax = spherical_average(src, grid.r_max, rule);
    Ok(MattilaReport {
        value,
        r_max: grid.r_max,
        sigma_at_rmax,
        non_decay: sigma_at_rmax > NON_DECAY_THRESHOLD,
        radial_nodes: grid.len(),
        sphere_nodes: rule.len(),
    })
}
