use crate::error::{domain, Error, Result};
use crate::measures::GridField;
use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};
use serde::Serialize;
use std::f64::consts::PI;
use std::sync::Arc;

#[derive(Debug, Clone, Copy, Serialize)]
pub struct GroupActionOptions {
    pub n_angles: usize,
    /// Largest boundary sample allowed, relative to the peak.
    pub support_tol: f64,
}

impl Default for GroupActionOptions {
    fn default() -> Self {
        GroupActionOptions {
            n_angles: 64,
            support_tol: 1e-10,
        }
    }
}

struct Fft2 {
    p: usize,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl Fft2 {
    fn new(p: usize) -> Self {
        let mut planner = FftPlanner::new();
        Fft2 {
            p,
            forward: planner.plan_fft_forward(p),
            inverse: planner.plan_fft_inverse(p),
        }
    }

    fn run(&self, data: &mut [Complex64], inverse: bool) {
        let fft = if inverse {
            &self.inverse
        } else {
            &self.forward
        };
        fft.process(data);
        transpose(data, self.p);
        fft.process(data);
        transpose(data, self.p);
    }
}

fn transpose(data: &mut [Complex64], p: usize) {
    for i in 0..p {
        for j in i + 1..p {
            data.swap(i * p + j, j * p + i);
        }
    }
}

/// `∫_{SO(2)} ∫ |∫ μ(x) μ(θx + z) dx|² dz dθ` for a compactly supported
/// density on a square grid, with `dθ` the normalized Haar measure.
///
/// Each correlation in `z` is a zero-padded FFT cross-correlation of `μ`
/// with the rotated samples `μ(θx)`; reflections give the same integrand,
/// so the `O(2)` average equals the rotation average.
pub fn group_action_functional_2d(density: &GridField, opts: &GroupActionOptions) -> Result<f64> {
    if density.dim() != 2 {
        return Err(Error::UnsupportedDimension {
            d: density.dim(),
            reason: "the group-action functional is implemented in the plane",
        });
    }
    let shape = density.shape();
    if shape[0] != shape[1] {
        return Err(domain("group-action functional needs a square grid"));
    }
    if opts.n_angles == 0 {
        return Err(domain("at least one rotation angle is required"));
    }
    let peak = density.max_abs();
    if !(density.boundary_max() <= opts.support_tol * peak) {
        return Err(domain(format!(
            "density is not compactly supported inside the grid: boundary/peak = {:.3e}",
            density.boundary_max() / peak
        )));
    }
    let mu = density.normalized_density()?;
    let n = shape[0];
    let p = (2 * n).next_power_of_two();
    let h = mu.spacing();
    let fft = Fft2::new(p);
    let pad = |vals: &dyn Fn(usize, usize) -> f64| {
        let mut buf = vec![Complex64::new(0.0, 0.0); p * p];
        for i in 0..n {
            for j in 0..n {
                buf[i * p + j] = Complex64::new(vals(i, j), 0.0);
            }
        }
        buf
    };
    let mut base = pad(&|i, j| mu.samples()[i * n + j].re);
    fft.run(&mut base, false);
    let per_angle: Vec<f64> = (0..opts.n_angles)
        .into_par_iter()
        .map(|k| {
            let (s, c) = (2.0 * PI * k as f64 / opts.n_angles as f64).sin_cos();
            let mut rotated = pad(&|i, j| {
                let x = mu.node(i * n + j);
                mu.interpolate(&[c * x[0] - s * x[1], s * x[0] + c * x[1]])
                    .re
            });
            fft.run(&mut rotated, false);
            for (r, b) in rotated.iter_mut().zip(&base) {
                *r *= b.conj();
            }
            fft.run(&mut rotated, true);
            // unnormalized inverse FFT scales by p²; the correlation carries h²
            let scale = h * h / (p * p) as f64;
            rotated.iter().map(|v| (v * scale).norm_sqr()).sum::<f64>() * h * h
        })
        .collect();
    Ok(per_angle.iter().sum::<f64>() / opts.n_angles as f64)
}
