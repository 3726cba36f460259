//! Discrete probability measures, sampled grid fields and the test functions
//! fed to the spherical-mean and extension operators.

use crate::error::{domain, Error, Result};
use crate::quadrature::gauss_legendre;
use crate::specfun::{sphere_area, surface_ft};
use num_complex::Complex64;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::io::Write;

/// Largest point cloud a constructor will allocate.
pub const POINT_BUDGET: usize = 1 << 22;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasureMeta {
    pub kind: String,
    pub params: BTreeMap<String, f64>,
    pub seed: u64,
    /// Scale below which the discrete cloud no longer resembles the ideal measure.
    #[serde(default)]
    pub resolution: f64,
    /// Similarity dimension, when the construction has one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dimension: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub depth: Option<u32>,
}

impl MeasureMeta {
    pub fn new(kind: &str, params: &[(&str, f64)], resolution: f64) -> Self {
        MeasureMeta {
            kind: kind.to_string(),
            params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            seed: 0,
            resolution,
            dimension: None,
            depth: None,
        }
    }
}

/// Weighted point cloud representing a compactly supported probability measure.
#[derive(Debug, Clone)]
pub struct DiscreteMeasure {
    d: usize,
    points: Vec<f64>,
    weights: Vec<f64>,
    support_radius: f64,
    pub meta: MeasureMeta,
}

#[derive(Serialize, Deserialize)]
struct MeasureJson {
    d: usize,
    points: Vec<Vec<f64>>,
    weights: Vec<f64>,
    meta: MeasureMeta,
}

impl DiscreteMeasure {
    /// `points` is row-major with stride `d`. Weights must be positive and sum to 1.
    pub fn new(d: usize, points: Vec<f64>, weights: Vec<f64>, meta: MeasureMeta) -> Result<Self> {
        if d == 0 || points.len() != d * weights.len() || weights.is_empty() {
            return Err(domain("point/weight shapes do not match"));
        }
        if weights.iter().any(|w| !(*w > 0.0) || !w.is_finite()) {
            return Err(domain("measure weights must be positive and finite"));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(domain(format!(
                "measure weights sum to {total}, expected 1"
            )));
        }
        if points.iter().any(|x| !x.is_finite()) {
            return Err(domain("measure points must be finite"));
        }
        let support_radius = points
            .chunks_exact(d)
            .map(|p| p.iter().map(|x| x * x).sum::<f64>().sqrt())
            .fold(0.0, f64::max);
        Ok(DiscreteMeasure {
            d,
            points,
            weights,
            support_radius,
            meta,
        })
    }

    /// Equal weights on the given points.
    pub fn uniform_on(d: usize, points: Vec<f64>, meta: MeasureMeta) -> Result<Self> {
        let n = points.len() / d.max(1);
        let w = 1.0 / n as f64;
        let mut weights = vec![w; n];
        // keep the total within rounding of 1 for huge n
        let drift = 1.0 - weights.iter().sum::<f64>();
        weights[0] += drift;
        Self::new(d, points, weights, meta)
    }

    pub fn dirac(point: &[f64]) -> Self {
        let meta = MeasureMeta::new("dirac", &[], 0.0);
        DiscreteMeasure::new(point.len(), point.to_vec(), vec![1.0], meta)
            .expect("a single unit atom is a valid measure")
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.points[i * self.d..(i + 1) * self.d]
    }

    pub fn points_flat(&self) -> &[f64] {
        &self.points
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn support_radius(&self) -> f64 {
        self.support_radius
    }

    pub fn resolution(&self) -> f64 {
        self.meta.resolution
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[f64], f64)> + '_ {
        self.points
            .chunks_exact(self.d)
            .zip(self.weights.iter().copied())
    }

    /// Push forward under `x ↦ (x, 0, ..., 0) ∈ R^target`.
    pub fn embed(&self, target: usize) -> Result<Self> {
        if target < self.d {
            return Err(domain("cannot embed into a lower dimension"));
        }
        let mut points = Vec::with_capacity(target * self.len());
        for p in self.points.chunks_exact(self.d) {
            points.extend_from_slice(p);
            points.extend(std::iter::repeat_n(0.0, target - self.d));
        }
        let mut meta = self.meta.clone();
        meta.kind = format!("{}-embedded", meta.kind);
        Self::new(target, points, self.weights.clone(), meta)
    }

    /// Diagonal of the coordinate bounding box, an upper bound for the diameter.
    pub fn bounding_diagonal(&self) -> f64 {
        (0..self.d)
            .map(|a| {
                let (lo, hi) = (0..self.len())
                    .map(|i| self.point(i)[a])
                    .fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), v| {
                        (l.min(v), h.max(v))
                    });
                (hi - lo).powi(2)
            })
            .sum::<f64>()
            .sqrt()
    }

    pub fn diameter(&self) -> f64 {
        let n = self.len();
        (0..n)
            .into_par_iter()
            .map(|i| {
                let p = self.point(i);
                (i + 1..n)
                    .map(|j| dist2(p, self.point(j)))
                    .fold(0.0, f64::max)
            })
            .collect::<Vec<_>>()
            .into_iter()
            .fold(0.0, f64::max)
            .sqrt()
    }

    pub fn to_json(&self) -> Result<String> {
        let j = MeasureJson {
            d: self.d,
            points: self
                .points
                .chunks_exact(self.d)
                .map(|p| p.to_vec())
                .collect(),
            weights: self.weights.clone(),
            meta: self.meta.clone(),
        };
        Ok(serde_json::to_string_pretty(&j)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: MeasureJson = serde_json::from_str(s)?;
        if j.points.iter().any(|p| p.len() != j.d) {
            return Err(domain("every point must have d coordinates"));
        }
        let points = j.points.into_iter().flatten().collect();
        Self::new(j.d, points, j.weights, j.meta)
    }

    /// CSV with header `x1,...,xd,weight`.
    pub fn write_csv(&self, mut out: impl Write) -> Result<()> {
        let header: Vec<String> = (1..=self.d).map(|i| format!("x{i}")).collect();
        writeln!(out, "{},weight", header.join(","))?;
        for (p, w) in self.iter() {
            let cols: Vec<String> = p.iter().map(|x| x.to_string()).collect();
            writeln!(out, "{},{}", cols.join(","), w)?;
        }
        Ok(())
    }

    /// `μ(B(x, r))` for the closed ball.
    pub fn ball_mass(&self, center: &[f64], r: f64) -> f64 {
        let r2 = r * r * (1.0 + 1e-12);
        self.iter()
            .filter(|(p, _)| dist2(p, center) <= r2)
            .map(|(_, w)| w)
            .sum()
    }
}

pub(crate) fn dist2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Uniform measure on the `d`-fold product of the depth-`depth` Cantor
/// iterate with dissection ratio `ratio`; atoms sit at the cell centres.
pub fn cantor_product_measure(d: usize, ratio: f64, depth: u32) -> Result<DiscreteMeasure> {
    if d == 0 {
        return Err(domain("dimension must be positive"));
    }
    if !(ratio > 0.0 && ratio <= 0.5) {
        return Err(domain(format!("ratio must lie in (0, 1/2], got {ratio}")));
    }
    if depth == 0 {
        return Err(domain("depth must be at least 1"));
    }
    let requested = 1u128.checked_shl(depth * d as u32).unwrap_or(u128::MAX);
    if requested > POINT_BUDGET as u128 {
        return Err(Error::Budget {
            requested,
            budget: POINT_BUDGET,
        });
    }
    let width = ratio.powi(depth as i32);
    let mut coords = vec![0.0];
    let mut scale = 1.0;
    for _ in 0..depth {
        let gap = scale * (1.0 - ratio);
        coords = coords.iter().flat_map(|&a| [a, a + gap]).collect();
        scale *= ratio;
    }
    for c in &mut coords {
        *c += 0.5 * width;
    }
    let m = coords.len();
    let n = requested as usize;
    let mut points = Vec::with_capacity(n * d);
    for idx in 0..n {
        let mut rem = idx;
        let mut p = vec![0.0; d];
        for axis in (0..d).rev() {
            p[axis] = coords[rem % m];
            rem /= m;
        }
        points.extend(p);
    }
    let mut meta = MeasureMeta::new(
        "cantor",
        &[("d", d as f64), ("ratio", ratio), ("depth", depth as f64)],
        width,
    );
    meta.dimension = Some(d as f64 * 2f64.ln() / (1.0 / ratio).ln());
    meta.depth = Some(depth);
    DiscreteMeasure::uniform_on(d, points, meta)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    /// Unit circle in the plane.
    Circle,
    /// Unit disk in the plane.
    Disk,
    /// `[0, 1]²`.
    Square,
    /// Unit sphere in `R³`.
    Sphere,
}

const GOLDEN_ANGLE: f64 = 2.399_963_229_728_653;
const PLASTIC: f64 = 1.324_717_957_244_746;

/// Equal-weight low-discrepancy points on a standard shape.
pub fn uniform_measure(shape: Shape, n: usize) -> Result<DiscreteMeasure> {
    if n < 8 {
        return Err(domain("uniform measures need n >= 8"));
    }
    if n > POINT_BUDGET {
        return Err(Error::Budget {
            requested: n as u128,
            budget: POINT_BUDGET,
        });
    }
    let nf = n as f64;
    let (d, points, name, resolution) = match shape {
        Shape::Circle => {
            let pts = (0..n)
                .flat_map(|k| {
                    let th = 2.0 * PI * k as f64 / nf;
                    [th.cos(), th.sin()]
                })
                .collect();
            (2, pts, "circle", 2.0 * PI / nf)
        }
        Shape::Disk => {
            // sunflower lattice: radii are exact quantiles of the area law
            let pts = (0..n)
                .flat_map(|k| {
                    let r = ((k as f64 + 0.5) / nf).sqrt();
                    let th = k as f64 * GOLDEN_ANGLE;
                    [r * th.cos(), r * th.sin()]
                })
                .collect();
            (2, pts, "disk", (PI / nf).sqrt())
        }
        Shape::Square => {
            let (a1, a2) = (1.0 / PLASTIC, 1.0 / (PLASTIC * PLASTIC));
            let pts = (0..n)
                .flat_map(|k| {
                    let k = (k + 1) as f64;
                    [(0.5 + a1 * k).fract(), (0.5 + a2 * k).fract()]
                })
                .collect();
            (2, pts, "square", 1.0 / nf.sqrt())
        }
        Shape::Sphere => {
            let pts = (0..n)
                .flat_map(|k| {
                    let z = 1.0 - (2.0 * k as f64 + 1.0) / nf;
                    let rho = (1.0 - z * z).max(0.0).sqrt();
                    let ph = k as f64 * GOLDEN_ANGLE;
                    [rho * ph.cos(), rho * ph.sin(), z]
                })
                .collect();
            (3, pts, "sphere", (4.0 * PI / nf).sqrt())
        }
    };
    let meta = MeasureMeta::new(name, &[("n", nf)], resolution);
    DiscreteMeasure::uniform_on(d, points, meta)
}

/// Empirical Frostman constant `max μ(B(x,r))/r^s` over sampled balls.
#[derive(Debug, Clone, Serialize)]
pub struct FrostmanReport {
    pub s: f64,
    pub constant_estimate: f64,
    pub witness_center: Vec<f64>,
    pub witness_radius: f64,
    pub resolution: f64,
    pub depth: Option<u32>,
    pub n_centers: usize,
}

/// Sample `n_centers` support points (deterministically from `seed`) and
/// report the largest ratio `μ(B(x,r))/r^s` over the given radii.
pub fn frostman_check(
    mu: &DiscreteMeasure,
    s: f64,
    n_centers: usize,
    radii: &[f64],
    seed: u64,
) -> Result<FrostmanReport> {
    if radii.is_empty() || n_centers == 0 {
        return Err(domain("frostman_check needs radii and at least one center"));
    }
    let min_r = radii.iter().copied().fold(f64::INFINITY, f64::min);
    if !(min_r >= mu.resolution()) {
        return Err(Error::Precondition {
            message: format!("radius {min_r} is below the measure's resolution scale"),
            minimum: mu.resolution(),
        });
    }
    let centers: Vec<usize> = if n_centers >= mu.len() {
        (0..mu.len()).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut idx = sample(&mut rng, mu.len(), n_centers).into_vec();
        idx.sort_unstable();
        idx
    };
    let best = centers
        .par_iter()
        .map(|&c| {
            let x = mu.point(c);
            radii
                .iter()
                .map(|&r| (mu.ball_mass(x, r) / r.powf(s), c, r))
                .fold((f64::NEG_INFINITY, c, radii[0]), |a, b| {
                    if b.0 > a.0 {
                        b
                    } else {
                        a
                    }
                })
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(
            (f64::NEG_INFINITY, 0, 0.0),
            |a, b| if b.0 > a.0 { b } else { a },
        );
    Ok(FrostmanReport {
        s,
        constant_estimate: best.0,
        witness_center: mu.point(best.1).to_vec(),
        witness_radius: best.2,
        resolution: mu.resolution(),
        depth: mu.meta.depth,
        n_centers: centers.len(),
    })
}

/// Complex samples on a regular grid; node `i` sits at `origin + i·spacing`.
///
/// Samples are stored row-major, last axis fastest.
#[derive(Debug, Clone)]
pub struct GridField {
    d: usize,
    origin: Vec<f64>,
    spacing: f64,
    shape: Vec<usize>,
    samples: Vec<Complex64>,
}

impl GridField {
    pub fn new(
        origin: Vec<f64>,
        spacing: f64,
        shape: Vec<usize>,
        samples: Vec<Complex64>,
    ) -> Result<Self> {
        let d = origin.len();
        if d == 0 || shape.len() != d {
            return Err(domain("grid origin and shape must have the same dimension"));
        }
        if !(spacing > 0.0) || !spacing.is_finite() {
            return Err(domain("grid spacing must be positive"));
        }
        if shape.iter().product::<usize>() != samples.len() || shape.contains(&0) {
            return Err(domain("grid shape does not match sample count"));
        }
        Ok(GridField {
            d,
            origin,
            spacing,
            shape,
            samples,
        })
    }

    /// Sample `f` on `n^d` nodes symmetric about the origin covering `[-half_width, half_width]^d`.
    pub fn centered(
        d: usize,
        n: usize,
        half_width: f64,
        f: impl Fn(&[f64]) -> f64,
    ) -> Result<Self> {
        let h = 2.0 * half_width / n as f64;
        let origin = vec![-half_width + 0.5 * h; d];
        let shape = vec![n; d];
        let total = n.pow(d as u32);
        let mut samples = Vec::with_capacity(total);
        let mut x = vec![0.0; d];
        for idx in 0..total {
            let mut rem = idx;
            for axis in (0..d).rev() {
                x[axis] = origin[axis] + (rem % n) as f64 * h;
                rem /= n;
            }
            samples.push(Complex64::new(f(&x), 0.0));
        }
        GridField::new(origin, h, shape, samples)
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn origin(&self) -> &[f64] {
        &self.origin
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn node(&self, idx: usize) -> Vec<f64> {
        let mut rem = idx;
        let mut x = vec![0.0; self.d];
        for axis in (0..self.d).rev() {
            x[axis] = self.origin[axis] + (rem % self.shape[axis]) as f64 * self.spacing;
            rem /= self.shape[axis];
        }
        x
    }

    pub fn cell_volume(&self) -> f64 {
        self.spacing.powi(self.d as i32)
    }

    /// Highest frequency representable without aliasing.
    pub fn nyquist(&self) -> f64 {
        0.5 / self.spacing
    }

    /// Multilinear interpolation; zero outside the grid.
    pub fn interpolate(&self, x: &[f64]) -> Complex64 {
        let mut base = vec![0usize; self.d];
        let mut frac = vec![0.0; self.d];
        for axis in 0..self.d {
            let u = (x[axis] - self.origin[axis]) / self.spacing;
            if u < 0.0 || u > (self.shape[axis] - 1) as f64 {
                return Complex64::new(0.0, 0.0);
            }
            let i = (u.floor() as usize).min(self.shape[axis].saturating_sub(2));
            base[axis] = i;
            frac[axis] = u - i as f64;
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for corner in 0..(1usize << self.d) {
            let mut w = 1.0;
            let mut flat = 0;
            for axis in 0..self.d {
                let bit = (corner >> (self.d - 1 - axis)) & 1;
                let i = (base[axis] + bit).min(self.shape[axis] - 1);
                w *= if bit == 1 {
                    frac[axis]
                } else {
                    1.0 - frac[axis]
                };
                flat = flat * self.shape[axis] + i;
            }
            if w != 0.0 {
                acc += self.samples[flat] * w;
            }
        }
        acc
    }

    /// Riemann-sum Fourier transform `h^d Σ f(x_k) e^{-2πi x_k·ξ}`, contracted
    /// one axis at a time.
    pub fn fourier(&self, xi: &[f64]) -> Complex64 {
        let mut data: Vec<Complex64> = self.samples.clone();
        let mut len = data.len();
        for axis in (0..self.d).rev() {
            let n = self.shape[axis];
            let phases: Vec<Complex64> = (0..n)
                .map(|i| {
                    let x = self.origin[axis] + i as f64 * self.spacing;
                    Complex64::from_polar(1.0, -2.0 * PI * x * xi[axis])
                })
                .collect();
            let outer = len / n;
            for o in 0..outer {
                let row = &data[o * n..(o + 1) * n];
                let s: Complex64 = row.iter().zip(&phases).map(|(a, p)| a * p).sum();
                data[o] = s;
            }
            len = outer;
        }
        data[0] * self.cell_volume()
    }

    /// Largest modulus on the outermost layer of nodes.
    pub fn boundary_max(&self) -> f64 {
        (0..self.samples.len())
            .filter(|&idx| {
                let mut rem = idx;
                let mut edge = false;
                for axis in (0..self.d).rev() {
                    let i = rem % self.shape[axis];
                    rem /= self.shape[axis];
                    edge |= i == 0 || i + 1 == self.shape[axis];
                }
                edge
            })
            .map(|idx| self.samples[idx].norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.samples.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Rescaled copy whose real part integrates to one.
    pub fn normalized_density(&self) -> Result<GridField> {
        let mass: f64 = self.samples.iter().map(|z| z.re).sum::<f64>() * self.cell_volume();
        if !(mass > 0.0) {
            return Err(domain("density has non-positive mass"));
        }
        let mut out = self.clone();
        for z in &mut out.samples {
            *z /= mass;
        }
        Ok(out)
    }

    /// Atoms at the grid nodes carrying the (positive) real samples as mass.
    pub fn to_measure(&self) -> Result<DiscreteMeasure> {
        if self.samples.iter().any(|z| z.re < 0.0) {
            return Err(domain("density samples must be non-negative"));
        }
        let total: f64 = self.samples.iter().map(|z| z.re).sum();
        let mut points = Vec::new();
        let mut weights = Vec::new();
        for (idx, z) in self.samples.iter().enumerate() {
            if z.re > 0.0 {
                points.extend(self.node(idx));
                weights.push(z.re / total);
            }
        }
        let drift = 1.0 - weights.iter().sum::<f64>();
        if let Some(w) = weights.iter_mut().max_by(|a, b| a.total_cmp(b)) {
            *w += drift;
        }
        let meta = MeasureMeta::new("grid-density", &[("spacing", self.spacing)], self.spacing);
        DiscreteMeasure::new(self.d, points, weights, meta)
    }
}

/// `e^{-π|x|²}` on `[-4, 4]^d` with `n` nodes per axis.
pub fn gaussian_density(d: usize, n: usize) -> Result<GridField> {
    GridField::centered(d, n, 4.0, |x| {
        (-PI * x.iter().map(|v| v * v).sum::<f64>()).exp()
    })
}

/// Off-centre bump density on `[-4, 4]²`.
pub fn bump_density(n: usize) -> Result<GridField> {
    GridField::centered(2, n, 4.0, |x| bump_profile(x, &[0.6, -0.4], 1.5))
}

/// Two bumps of different radii and heights on `[-4, 4]²`.
pub fn two_bump_density(n: usize) -> Result<GridField> {
    GridField::centered(2, n, 4.0, |x| {
        bump_profile(x, &[-1.0, 0.5], 1.2) + 0.6 * bump_profile(x, &[1.2, -0.3], 0.9)
    })
}

/// Smooth compactly supported bump `exp(1 - 1/(1-|x-c|²/ρ²))`, zero outside `B(c, ρ)`.
pub fn bump_profile(x: &[f64], center: &[f64], radius: f64) -> f64 {
    let q = dist2(x, center) / (radius * radius);
    if q >= 1.0 {
        0.0
    } else {
        (1.0 - 1.0 / (1.0 - q)).exp()
    }
}

/// Schwartz-class inputs of the spherical-mean and extension operators.
#[derive(Debug, Clone)]
pub enum TestFunction {
    /// `amplitude · e^{-π|x-c|²/σ²}`, with `f̂(ξ) = amplitude · σ^d e^{-πσ²|ξ|²} e^{-2πi c·ξ}`.
    Gaussian {
        center: Vec<f64>,
        scale: f64,
        amplitude: f64,
    },
    /// `amplitude · exp(1 - 1/(1-|x-c|²/ρ²))` on `B(c, ρ)`.
    Bump {
        center: Vec<f64>,
        radius: f64,
        amplitude: f64,
    },
    /// Sampled field, multilinearly interpolated.
    Grid(GridField),
    /// The constant function (no function-valued Fourier transform).
    Constant {
        d: usize,
        value: f64,
    },
    Sum(Vec<TestFunction>),
}

impl TestFunction {
    pub fn gaussian(center: &[f64], scale: f64) -> Self {
        TestFunction::Gaussian {
            center: center.to_vec(),
            scale,
            amplitude: 1.0,
        }
    }

    /// `e^{-π|x|²}` centred at the origin.
    pub fn standard_gaussian(d: usize) -> Self {
        Self::gaussian(&vec![0.0; d], 1.0)
    }

    pub fn shifted_gaussian(d: usize) -> Self {
        let base = [0.35, -0.2, 0.15];
        let center: Vec<f64> = (0..d)
            .map(|i| base.get(i).copied().unwrap_or(0.0))
            .collect();
        Self::gaussian(&center, 0.9)
    }

    /// Two off-centre gaussians of different widths and heights.
    pub fn two_bump(d: usize) -> Self {
        let mut a = vec![0.0; d];
        let mut b = vec![0.0; d];
        a[0] = -0.55;
        b[0] = 0.45;
        if d > 1 {
            a[1] = 0.1;
            b[1] = 0.3;
        }
        if d > 2 {
            b[2] = -0.25;
        }
        TestFunction::Sum(vec![
            TestFunction::Gaussian {
                center: a,
                scale: 0.6,
                amplitude: 1.0,
            },
            TestFunction::Gaussian {
                center: b,
                scale: 0.8,
                amplitude: 0.7,
            },
        ])
    }

    pub fn dim(&self) -> usize {
        match self {
            TestFunction::Gaussian { center, .. } | TestFunction::Bump { center, .. } => {
                center.len()
            }
            TestFunction::Grid(g) => g.dim(),
            TestFunction::Constant { d, .. } => *d,
            TestFunction::Sum(parts) => parts.first().map_or(0, |p| p.dim()),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            TestFunction::Gaussian { .. } => "gaussian",
            TestFunction::Bump { .. } => "bump",
            TestFunction::Grid(_) => "grid",
            TestFunction::Constant { .. } => "constant",
            TestFunction::Sum(_) => "sum",
        }
    }

    pub fn value(&self, x: &[f64]) -> f64 {
        match self {
            TestFunction::Gaussian {
                center,
                scale,
                amplitude,
            } => amplitude * (-PI * dist2(x, center) / (scale * scale)).exp(),
            TestFunction::Bump {
                center,
                radius,
                amplitude,
            } => amplitude * bump_profile(x, center, *radius),
            TestFunction::Grid(g) => g.interpolate(x).re,
            TestFunction::Constant { value, .. } => *value,
            TestFunction::Sum(parts) => parts.iter().map(|p| p.value(x)).sum(),
        }
    }

    /// Whether `fourier` yields a function (everything except constants).
    pub fn has_transform(&self) -> bool {
        match self {
            TestFunction::Constant { .. } => false,
            TestFunction::Sum(parts) => parts.iter().all(|p| p.has_transform()),
            _ => true,
        }
    }

    /// `f̂(ξ)`. Gaussians are closed form, bumps use a radial Hankel
    /// quadrature, grids a direct Riemann sum.
    pub fn fourier(&self, xi: &[f64]) -> Result<Complex64> {
        Ok(match self {
            TestFunction::Gaussian {
                center,
                scale,
                amplitude,
            } => {
                let r2: f64 = xi.iter().map(|v| v * v).sum();
                let phase: f64 = center.iter().zip(xi).map(|(c, v)| c * v).sum();
                let m = amplitude * scale.powi(xi.len() as i32) * (-PI * scale * scale * r2).exp();
                Complex64::from_polar(m, -2.0 * PI * phase)
            }
            TestFunction::Bump {
                center,
                radius,
                amplitude,
            } => {
                let k = xi.iter().map(|v| v * v).sum::<f64>().sqrt();
                let phase: f64 = center.iter().zip(xi).map(|(c, v)| c * v).sum();
                let m = amplitude * bump_radial_ft(center.len(), *radius, k)?;
                Complex64::from_polar(1.0, -2.0 * PI * phase) * m
            }
            TestFunction::Grid(g) => {
                let k = xi.iter().map(|v| v * v).sum::<f64>().sqrt();
                if k > g.nyquist() {
                    return Err(Error::Resolution(format!(
                        "|ξ| = {k} exceeds grid Nyquist frequency {}",
                        g.nyquist()
                    )));
                }
                g.fourier(xi)
            }
            TestFunction::Constant { .. } => {
                return Err(Error::Resolution(
                    "the constant function has no function-valued transform".into(),
                ))
            }
            TestFunction::Sum(parts) => {
                let mut acc = Complex64::new(0.0, 0.0);
                for p in parts {
                    acc += p.fourier(xi)?;
                }
                acc
            }
        })
    }

    /// Gaussian components `(center, scale, amplitude)` when the function is a
    /// pure gaussian sum.
    pub fn gaussian_atoms(&self) -> Option<Vec<(&[f64], f64, f64)>> {
        match self {
            TestFunction::Gaussian {
                center,
                scale,
                amplitude,
            } => Some(vec![(center.as_slice(), *scale, *amplitude)]),
            TestFunction::Sum(parts) => {
                let mut out = Vec::new();
                for p in parts {
                    out.extend(p.gaussian_atoms()?);
                }
                Some(out)
            }
            _ => None,
        }
    }

    /// Radius beyond which `|f̂|` has fallen below `tol` times its scale.
    pub fn spectral_radius(&self, tol: f64) -> f64 {
        let l = (1.0 / tol).ln();
        match self {
            TestFunction::Gaussian { scale, .. } => (l / PI).sqrt() / scale,
            // |b̂(k)| ~ exp(-2√(πkρ)) for the exp(-1/(1-q)) profile
            TestFunction::Bump { radius, .. } => l * l / (4.0 * PI * radius),
            TestFunction::Grid(g) => g.nyquist(),
            TestFunction::Constant { .. } => 0.0,
            TestFunction::Sum(parts) => parts
                .iter()
                .map(|p| p.spectral_radius(tol))
                .fold(0.0, f64::max),
        }
    }

    /// Radius of a ball about the origin outside which `|f| < tol` times its scale.
    pub fn spatial_reach(&self, tol: f64) -> f64 {
        let l = (1.0 / tol).ln();
        let norm = |c: &[f64]| c.iter().map(|v| v * v).sum::<f64>().sqrt();
        match self {
            TestFunction::Gaussian { center, scale, .. } => norm(center) + scale * (l / PI).sqrt(),
            TestFunction::Bump { center, radius, .. } => norm(center) + radius,
            TestFunction::Grid(g) => {
                let far: Vec<f64> = (0..g.dim())
                    .map(|a| {
                        g.origin()[a]
                            .abs()
                            .max((g.origin()[a] + (g.shape()[a] - 1) as f64 * g.spacing()).abs())
                    })
                    .collect();
                norm(&far)
            }
            TestFunction::Constant { .. } => f64::INFINITY,
            TestFunction::Sum(parts) => parts
                .iter()
                .map(|p| p.spatial_reach(tol))
                .fold(0.0, f64::max),
        }
    }

    /// Dilate `x ↦ f(x/λ)` (gaussians only widen their scale and centre).
    pub fn dilate(&self, lambda: f64) -> Self {
        match self {
            TestFunction::Gaussian {
                center,
                scale,
                amplitude,
            } => TestFunction::Gaussian {
                center: center.iter().map(|c| c * lambda).collect(),
                scale: scale * lambda,
                amplitude: *amplitude,
            },
            TestFunction::Bump {
                center,
                radius,
                amplitude,
            } => TestFunction::Bump {
                center: center.iter().map(|c| c * lambda).collect(),
                radius: radius * lambda,
                amplitude: *amplitude,
            },
            TestFunction::Sum(parts) => {
                TestFunction::Sum(parts.iter().map(|p| p.dilate(lambda)).collect())
            }
            other => other.clone(),
        }
    }
}

/// Radial Fourier transform of the unit-height bump of radius `rho`:
/// `|S^{d-1}| ∫_0^ρ b(r) Ω_d(k r) r^{d-1} dr`.
fn bump_radial_ft(d: usize, rho: f64, k: f64) -> Result<f64> {
    if d < 2 {
        // d = 1: 2∫_0^ρ b(r) cos(2πkr) dr
        let panels = (4.0 * k * rho).ceil().max(4.0) as usize;
        return Ok(panel_sum(rho, panels, |r| {
            2.0 * bump_1d(r / rho) * (2.0 * PI * k * r).cos()
        }));
    }
    let area = sphere_area(d);
    let panels = (4.0 * k * rho).ceil().max(4.0) as usize;
    let mut err = None;
    let v = panel_sum(rho, panels, |r| match surface_ft(d, k * r) {
        Ok(o) => bump_1d(r / rho) * o * r.powi(d as i32 - 1),
        Err(e) => {
            err = Some(e);
            0.0
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    Ok(area * v)
}

fn bump_1d(t: f64) -> f64 {
    let q = t * t;
    if q >= 1.0 {
        0.0
    } else {
        (1.0 - 1.0 / (1.0 - q)).exp()
    }
}

fn panel_sum(b: f64, panels: usize, mut f: impl FnMut(f64) -> f64) -> f64 {
    let (x, w) = gauss_legendre(16);
    let h = b / panels as f64;
    let mut s = 0.0;
    for p in 0..panels {
        let mid = (p as f64 + 0.5) * h;
        for (xi, wi) in x.iter().zip(&w) {
            s += 0.5 * h * wi * f(mid + 0.5 * h * xi);
        }
    }
    s
}
