//! Spherical means, extension profiles and the integrals built from them.

mod energy;
mod fourier;
mod group;
mod identity;
mod pinned;

pub use energy::{
    ball_energy, ball_energy_curve, ball_energy_quadrature, sobolev_norm, wave_energy, WaveEnergy,
    WaveOptions, WAVE_TRUNCATION_LIMIT,
};
pub use fourier::{
    mattila_integral, mu_hat, sigma_profile, spherical_average, FourierSource, MattilaReport,
    NON_DECAY_THRESHOLD,
};
pub use group::{group_action_functional_2d, GroupActionOptions};
pub use identity::{
    extension_profile, identity_report, spherical_mean, weighted_t_norm, IdentityReport,
    Truncation, WeightedNorm,
};
pub use pinned::{pinned_grid, pinned_l2, pinned_measure, triweight, triweight_cdf};

use crate::error::Result;
use crate::quadrature::RadialGrid;
use crate::report::{write_csv, ReportHeader};
use num_complex::Complex64;
use serde::Serialize;
use std::io::Write;

/// Samples `g(r_i)` on a radial grid.
#[derive(Debug, Clone, Serialize)]
pub struct RadialProfile {
    pub grid: RadialGrid,
    pub values: Vec<Complex64>,
}

impl RadialProfile {
    pub fn new(grid: RadialGrid, values: Vec<Complex64>) -> Self {
        assert_eq!(grid.len(), values.len(), "profile length must match grid");
        RadialProfile { grid, values }
    }

    pub fn from_real(grid: RadialGrid, values: Vec<f64>) -> Self {
        let values = values.into_iter().map(|v| Complex64::new(v, 0.0)).collect();
        Self::new(grid, values)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn real(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.re).collect()
    }

    /// `Σ w_i |g(r_i)|²` against `r^{d-1} dr`.
    pub fn energy(&self) -> f64 {
        self.grid
            .weights
            .iter()
            .zip(&self.values)
            .map(|(w, v)| w * v.norm_sqr())
            .sum()
    }

    /// `Σ v_i Re g(r_i)` against plain `dr`.
    pub fn mass(&self) -> f64 {
        self.grid
            .base_weights
            .iter()
            .zip(&self.values)
            .map(|(w, v)| w * v.re)
            .sum()
    }

    /// Header block, then `r,value` (plus `imag` when any value is complex).
    pub fn write_csv(&self, out: &mut impl Write, header: &ReportHeader) -> Result<()> {
        let complex = self.values.iter().any(|v| v.im != 0.0);
        let rows = self.grid.nodes.iter().zip(&self.values).map(|(r, v)| {
            if complex {
                vec![*r, v.re, v.im]
            } else {
                vec![*r, v.re]
            }
        });
        let cols: &[&str] = if complex {
            &["r", "value", "imag"]
        } else {
            &["r", "value"]
        };
        write_csv(out, Some(header), cols, rows)
    }
}
