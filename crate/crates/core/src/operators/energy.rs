use crate::constants::polar_jacobian;
use crate::error::{domain, Error, Result};
use crate::measures::{dist2, DiscreteMeasure, TestFunction};
use crate::quadrature::{
    gauss_legendre, panels_on_edges, radial_grid, symmetric_time_grid, RadialScheme, SphereRule,
};
use crate::specfun::{ball_indicator_ft, surface_ft};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::HashMap;
use std::f64::consts::PI;

fn atom_masses(f: &TestFunction, mu: &DiscreteMeasure) -> Result<Vec<f64>> {
    if f.dim() != mu.dim() {
        return Err(domain(format!(
            "f in R^{}, measure in R^{}",
            f.dim(),
            mu.dim()
        )));
    }
    Ok(mu.iter().map(|(p, w)| w * f.value(p)).collect())
}

/// `∫_{|ξ|≤R} |(f dμ)^(ξ)|² dξ` for each radius, summed exactly over pairs of atoms
/// with the ball-indicator kernel.
pub fn ball_energy_curve(
    f: &TestFunction,
    mu: &DiscreteMeasure,
    radii: &[f64],
) -> Result<Vec<f64>> {
    if let Some(r) = radii.iter().find(|r| !(**r > 0.0)) {
        return Err(domain(format!("ball radius must be positive, got {r}")));
    }
    let d = mu.dim();
    let a = atom_masses(f, mu)?;
    let n = mu.len();
    let rows: Vec<Vec<(u64, f64)>> = (0..n)
        .into_par_iter()
        .map(|i| {
            (i + 1..n)
                .filter(|&j| a[i] * a[j] != 0.0)
                .map(|j| (dist2(mu.point(i), mu.point(j)).to_bits(), a[i] * a[j]))
                .collect()
        })
        .collect();
    let mut pairs: HashMap<u64, f64> = HashMap::new();
    for row in rows {
        for (k, w) in row {
            *pairs.entry(k).or_insert(0.0) += w;
        }
    }
    let mut pairs: Vec<(f64, f64)> = pairs
        .into_iter()
        .map(|(k, w)| (f64::from_bits(k).sqrt(), w))
        .collect();
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
    let diag: f64 = a.iter().map(|v| v * v).sum();
    Ok(radii
        .par_iter()
        .map(|&r| {
            let off: f64 = pairs
                .iter()
                .map(|&(s, w)| w * ball_indicator_ft(d, r, s))
                .sum();
            diag * ball_indicator_ft(d, r, 0.0) + 2.0 * off
        })
        .collect())
}

pub fn ball_energy(f: &TestFunction, mu: &DiscreteMeasure, radius: f64) -> Result<f64> {
    Ok(ball_energy_curve(f, mu, &[radius])?[0])
}

/// The same energy by polar quadrature of `|Σ a_j e^{-2πi x_j·ξ}|²` over the ball.
pub fn ball_energy_quadrature(
    f: &TestFunction,
    mu: &DiscreteMeasure,
    radius: f64,
    rule: &SphereRule,
    radial_nodes: usize,
) -> Result<f64> {
    let d = mu.dim();
    if rule.dim() != d {
        return Err(domain("sphere rule dimension does not match the measure"));
    }
    let a = atom_masses(f, mu)?;
    let grid = radial_grid(d, 0.0, radius, radial_nodes, RadialScheme::Uniform)?;
    let vals: Vec<f64> = grid
        .nodes
        .par_iter()
        .map(|&r| {
            rule.iter()
                .map(|(w, v)| {
                    let mut z = Complex64::new(0.0, 0.0);
                    for (p, aj) in mu.iter().map(|(p, _)| p).zip(&a) {
                        let phase: f64 = p.iter().zip(w).map(|(x, y)| x * y).sum::<f64>() * r;
                        z += Complex64::from_polar(*aj, -2.0 * PI * phase);
                    }
                    v * z.norm_sqr()
                })
                .sum()
        })
        .collect();
    Ok(polar_jacobian(d)
        * grid
            .weights
            .iter()
            .zip(&vals)
            .map(|(w, v)| w * v)
            .sum::<f64>())
}

// Angular average of |f̂(rω)|², exact for gaussian sums.
fn angular_power(f: &TestFunction, r: f64, rule: Option<&SphereRule>) -> Result<f64> {
    let d = f.dim();
    if let Some(atoms) = f.gaussian_atoms() {
        let mut acc = 0.0;
        for (cg, sg, ag) in &atoms {
            for (ch, sh, ah) in &atoms {
                let m =
                    ag * ah * (sg * sh).powi(d as i32) * (-PI * (sg * sg + sh * sh) * r * r).exp();
                if m == 0.0 {
                    continue;
                }
                let sep = dist2(cg, ch).sqrt();
                let omega = if d == 1 {
                    (2.0 * PI * r * sep).cos()
                } else {
                    surface_ft(d, r * sep)?
                };
                acc += m * omega;
            }
        }
        return Ok(acc);
    }
    if d == 1 {
        return Ok(0.5 * (f.fourier(&[r])?.norm_sqr() + f.fourier(&[-r])?.norm_sqr()));
    }
    if let TestFunction::Bump { .. } = f {
        // radial up to a phase
        let mut xi = vec![0.0; d];
        xi[0] = r;
        return Ok(f.fourier(&xi)?.norm_sqr());
    }
    let rule = rule.expect("sphere rule for d >= 2");
    let mut xi = vec![0.0; d];
    let mut acc = 0.0;
    for (w, v) in rule.iter() {
        for (s, wk) in xi.iter_mut().zip(w) {
            *s = r * wk;
        }
        acc += v * f.fourier(&xi)?.norm_sqr();
    }
    Ok(acc)
}

/// `‖f‖²_{Ḣ^s} = ∫ |f̂(ξ)|² |ξ|^{2s} dξ`.
///
/// The cell `[0, r_0]` is integrated after `τ = (r/r_0)^{a+1}`, `a = 2s+d-1`,
/// which absorbs the `r^a` weight exactly.
pub fn sobolev_norm(f: &TestFunction, s: f64) -> Result<f64> {
    let d = f.dim();
    if !f.has_transform() {
        return Err(Error::Resolution(
            "f has no function-valued transform".into(),
        ));
    }
    if 2.0 * s + d as f64 <= 0.0 {
        return Err(Error::Divergent(format!(
            "Ḣ^s norm needs 2s > -d, got s = {s} in d = {d}"
        )));
    }
    let rule = if d >= 2 && f.gaussian_atoms().is_none() && !matches!(f, TestFunction::Bump { .. })
    {
        Some(SphereRule::default_for(d)?)
    } else {
        None
    };
    let a = 2.0 * s + d as f64 - 1.0;
    let r_max = f.spectral_radius(1e-10);
    let r0 = r_max / 64.0;
    let (x, w) = gauss_legendre(48);
    let mut origin = 0.0;
    for (xi, wi) in x.iter().zip(&w) {
        let tau = 0.5 * (xi + 1.0);
        origin += 0.5 * wi * angular_power(f, r0 * tau.powf(1.0 / (a + 1.0)), rule.as_ref())?;
    }
    origin *= r0.powf(a + 1.0) / (a + 1.0);
    let edges: Vec<f64> = (1..=64).map(|k| r_max * k as f64 / 64.0).collect();
    let (nodes, weights) = panels_on_edges(&edges, 16);
    let body = nodes
        .par_iter()
        .zip(&weights)
        .map(|(&r, &wt)| Ok(wt * r.powf(a) * angular_power(f, r, rule.as_ref())?))
        .collect::<Result<Vec<f64>>>()?;
    Ok(polar_jacobian(d) * (origin + body.iter().sum::<f64>()))
}

/// `|u(±t_max)|` above this fraction of `max |u|` is a truncation error.
pub const WAVE_TRUNCATION_LIMIT: f64 = 1e-5;

#[derive(Debug, Clone, Copy, Serialize)]
pub struct WaveOptions {
    pub t_core: f64,
    pub t_max: f64,
    pub step: f64,
    pub spectral_tol: f64,
}

impl WaveOptions {
    pub fn for_dim(d: usize) -> Self {
        WaveOptions {
            t_core: 16.0,
            t_max: if d == 2 { 4000.0 } else { 1000.0 },
            step: 0.25,
            spectral_tol: 1e-10,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct WaveEnergy {
    /// `∫ |u(t, x)|² dt` over `[-t_max, t_max]`.
    pub energy: f64,
    pub boundary_ratio: f64,
    pub t_max: f64,
    pub time_nodes: usize,
    pub frequency_nodes: usize,
}

// Frequency grid in ρ = √r resolving the phase 2πtρ² for |t| ≤ t_level,
// carrying the weights of u(t) = Σ g_j e^{-2πitρ_j²}.
struct Level {
    t_level: f64,
    rho2: Vec<f64>,
    g: Vec<Complex64>,
}

impl Level {
    fn eval(&self, t: f64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (r, g) in self.rho2.iter().zip(&self.g) {
            let (s, c) = (-2.0 * PI * t * r).sin_cos();
            acc += g * Complex64::new(c, s);
        }
        acc
    }
}

/// `∫ |D^{-(d-1)/2} e^{-2πit√-Δ} f(x)|² dt` with
/// `u(t) = ∫ f̂(ξ) |ξ|^{-(d-1)/2} e^{-2πit|ξ|} e^{2πix·ξ} dξ`.
///
/// In polar coordinates with `r = ρ²` the radial integrand
/// `2|S^{d-1}| ρ^d E(ρ²)` is smooth at the origin, where `E(r)` is the
/// sphere average of `f̂(rω) e^{2πix·rω}`.
pub fn wave_energy(f: &TestFunction, x: &[f64], opts: &WaveOptions) -> Result<WaveEnergy> {
    let d = f.dim();
    if !(2..=3).contains(&d) {
        return Err(Error::UnsupportedDimension {
            d,
            reason: "wave energy is implemented for d = 2, 3",
        });
    }
    if x.len() != d {
        return Err(domain("pin dimension does not match f"));
    }
    let tgrid = symmetric_time_grid(opts.t_core, opts.t_max, opts.step)?;
    let rho_max = f.spectral_radius(opts.spectral_tol).sqrt();
    let rule = match f.gaussian_atoms() {
        Some(_) => None,
        None => Some(SphereRule::default_for(d)?),
    };
    let ext = |r: f64| -> Result<Complex64> {
        if let Some(atoms) = f.gaussian_atoms() {
            let mut acc = 0.0;
            for (c, s, a) in atoms {
                acc += a
                    * s.powi(d as i32)
                    * (-PI * s * s * r * r).exp()
                    * surface_ft(d, r * dist2(x, c).sqrt())?;
            }
            return Ok(Complex64::new(acc, 0.0));
        }
        let rule = rule.as_ref().expect("rule");
        let mut xi = vec![0.0; d];
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
    };
    let jac = 2.0 * polar_jacobian(d);
    let mut bounds = vec![opts.t_core];
    while *bounds.last().unwrap() < opts.t_max {
        bounds.push((bounds.last().unwrap() * 1.25).min(opts.t_max));
    }
    let levels = bounds
        .iter()
        .map(|&t_level| {
            // ≤ 12 radians of phase per 16-node panel
            let dr = 12.0 / (4.0 * PI * t_level * rho_max);
            let panels = ((rho_max / dr).ceil() as usize).max(16);
            let edges: Vec<f64> = (0..=panels)
                .map(|k| rho_max * k as f64 / panels as f64)
                .collect();
            let (nodes, weights) = panels_on_edges(&edges, 16);
            let g = nodes
                .par_iter()
                .zip(&weights)
                .map(|(&rho, &w)| Ok(ext(rho * rho)? * (jac * w * rho.powi(d as i32))))
                .collect::<Result<Vec<_>>>()?;
            Ok(Level {
                t_level,
                rho2: nodes.iter().map(|r| r * r).collect(),
                g,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let level_for = |t: f64| {
        levels
            .iter()
            .find(|l| t.abs() <= l.t_level * (1.0 + 1e-12))
            .unwrap_or_else(|| levels.last().unwrap())
    };
    let u: Vec<Complex64> = tgrid
        .nodes
        .par_iter()
        .map(|&t| level_for(t).eval(t))
        .collect();
    let energy = tgrid
        .weights
        .iter()
        .zip(&u)
        .map(|(w, v)| w * v.norm_sqr())
        .sum();
    let peak = u.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let top = levels.last().unwrap();
    let edge = top
        .eval(opts.t_max)
        .norm()
        .max(top.eval(-opts.t_max).norm());
    let boundary_ratio = edge / peak;
    if !(boundary_ratio <= WAVE_TRUNCATION_LIMIT) {
        return Err(Error::Truncation {
            ratio: boundary_ratio,
            limit: WAVE_TRUNCATION_LIMIT,
        });
    }
    Ok(WaveEnergy {
        energy,
        boundary_ratio,
        t_max: opts.t_max,
        time_nodes: tgrid.nodes.len(),
        frequency_nodes: levels.iter().map(|l| l.rho2.len()).sum(),
    })
}
