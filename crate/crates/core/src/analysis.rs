//! Exponent algebra, decay fits, operator-ratio audits and chain-set estimates.

use crate::error::{domain, Error, Result};
use crate::measures::{DiscreteMeasure, TestFunction, POINT_BUDGET};
use crate::operators::{sobolev_norm, weighted_t_norm, RadialProfile};
use crate::quadrature::{radial_grid, RadialScheme, SphereRule};
use rand::distributions::{Distribution, WeightedIndex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BetaProvenance {
    Mattila,
    WolffErdogan,
}

#[derive(Debug, Clone, Serialize)]
pub struct BetaPiece {
    pub lo: f64,
    pub hi: f64,
    pub formula: &'static str,
    pub provenance: BetaProvenance,
}

/// Known lower bounds for the spherical-average decay exponent, piecewise in `s`.
#[derive(Debug, Clone, Serialize)]
pub struct BetaCurve {
    pub d: usize,
    pub pieces: Vec<BetaPiece>,
}

impl BetaCurve {
    pub fn known(d: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::UnsupportedDimension {
                d,
                reason: "d >= 2 required",
            });
        }
        let h = d as f64 / 2.0;
        Ok(BetaCurve {
            d,
            pieces: vec![
                BetaPiece {
                    lo: 0.0,
                    hi: h - 0.5,
                    formula: "s",
                    provenance: BetaProvenance::Mattila,
                },
                BetaPiece {
                    lo: h - 0.5,
                    hi: h,
                    formula: "(d-1)/2",
                    provenance: BetaProvenance::Mattila,
                },
                BetaPiece {
                    lo: h,
                    hi: h + 1.0,
                    formula: "(d+2s-2)/4",
                    provenance: BetaProvenance::WolffErdogan,
                },
            ],
        })
    }

    pub fn upper(&self) -> f64 {
        self.d as f64 / 2.0 + 1.0
    }

    /// The piece whose half-open interval `(lo, hi]` contains `s`.
    pub fn piece(&self, s: f64) -> Result<&BetaPiece> {
        self.pieces
            .iter()
            .find(|p| s > p.lo && s <= p.hi)
            .ok_or_else(|| {
                domain(format!(
                    "no decay exponent is known at s = {s} in d = {}",
                    self.d
                ))
            })
    }

    pub fn eval(&self, s: f64) -> Result<f64> {
        Ok(self.eval_piece(self.piece(s)?, s))
    }

    /// Evaluate a piece's formula at `s`, also outside its own interval.
    pub fn eval_piece(&self, piece: &BetaPiece, s: f64) -> f64 {
        let d = self.d as f64;
        match piece.formula {
            "s" => s,
            "(d-1)/2" => (d - 1.0) / 2.0,
            _ => (d + 2.0 * s - 2.0) / 4.0,
        }
    }
}

pub fn beta_known(d: usize, s: f64) -> Result<f64> {
    BetaCurve::known(d)?.eval(s)
}

/// `inf{s ∈ [lo, hi] : s + β(s) > d}` by bisection, for non-decreasing `β`.
pub fn threshold(beta: impl Fn(f64) -> f64, d: usize, lo: f64, hi: f64) -> Result<f64> {
    let target = d as f64;
    let above = |s: f64| s + beta(s) > target;
    if !above(hi) {
        return Err(domain(format!(
            "s + β(s) never exceeds d = {d} on [{lo}, {hi}]"
        )));
    }
    if above(lo) {
        return Ok(lo);
    }
    let (mut a, mut b) = (lo, hi);
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        if above(m) {
            b = m;
        } else {
            a = m;
        }
    }
    Ok(b)
}

/// Dimension threshold from the known exponents, `d/2 + 1/3`.
pub fn pinned_threshold(d: usize) -> Result<f64> {
    BetaCurve::known(d)?;
    Ok(d as f64 / 2.0 + 1.0 / 3.0)
}

/// The same threshold found by the bisection solver on the known β curve.
pub fn pinned_threshold_solved(d: usize) -> Result<f64> {
    let curve = BetaCurve::known(d)?;
    let upper = curve.upper();
    threshold(|s| curve.eval(s).unwrap_or(f64::NAN), d, 1e-12, upper)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExceptionalMethod {
    PeresSchlag,
    Liu,
}

/// Upper bound for the dimension of the set of pins with a null pinned distance set.
pub fn exceptional_bound(method: ExceptionalMethod, d: usize, dim_e: f64) -> Result<f64> {
    let df = d as f64;
    if !(0.0..=df).contains(&dim_e) {
        return Err(domain(format!("dim E = {dim_e} must lie in [0, {d}]")));
    }
    let v = match method {
        ExceptionalMethod::PeresSchlag => df + 1.0 - dim_e,
        ExceptionalMethod::Liu => {
            if dim_e < df / 2.0 {
                return Err(domain(format!(
                    "no bound is stated for dim E = {dim_e} < d/2"
                )));
            }
            if dim_e <= (df + 1.0) / 2.0 {
                1.5 * df + 1.0 - 2.0 * dim_e
            } else {
                df - dim_e
            }
        }
    };
    Ok(v.max(0.0))
}

pub fn best_known_threshold(d: usize) -> Result<f64> {
    match d {
        0 | 1 => Err(Error::UnsupportedDimension {
            d,
            reason: "d >= 2 required",
        }),
        2 => Ok(4.0 / 3.0),
        3 => Ok(1.8),
        _ => {
            let df = d as f64;
            Ok(df / 2.0 + 0.25 + 1.0 / (8.0 * df - 4.0))
        }
    }
}

/// Residual (RMS in natural log) above which a power-law fit is rejected.
pub const FIT_RESIDUAL_LIMIT: f64 = 0.5;

/// Unit of the averaging half-width in `ln r`.
pub const AVERAGING_STEP: f64 = 1.0 / 32.0;

#[derive(Debug, Clone, Serialize)]
pub struct DecayFit {
    pub beta_hat: f64,
    pub log_constant: f64,
    pub residual: f64,
    pub r_window: [f64; 2],
    pub averaging_window: usize,
    pub samples: usize,
}

/// Least-squares fit `ln σ̄(r) ≈ c - β ln r` on `[r_lo, r_hi]`.
///
/// `σ̄(r_i)` is the `dr`-weighted mean of the profile over the nodes whose
/// `ln r` lies within `averaging · AVERAGING_STEP` of `ln r_i` (counted in
/// log-grid steps), so the window is geometric and the fit scale invariant.
pub fn decay_fit(
    profile: &RadialProfile,
    window: [f64; 2],
    averaging: usize,
    max_residual: f64,
) -> Result<DecayFit> {
    let [lo, hi] = window;
    if !(lo > 1.0 && hi > lo) {
        return Err(Error::Window(format!(
            "window [{lo}, {hi}] must satisfy 1 < r_lo < r_hi"
        )));
    }
    let grid = &profile.grid;
    if grid.scheme != RadialScheme::Log {
        return Err(Error::Window("decay fits need a log-spaced profile".into()));
    }
    let n = grid.len();
    let step = (grid.r_max / grid.r_min).ln() / (n - 1) as f64;
    let k = if averaging == 0 {
        0
    } else {
        ((averaging as f64 * AVERAGING_STEP / step).round() as usize).max(1)
    };
    let sigma = profile.real();
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for i in 0..n {
        let r = grid.nodes[i];
        if r < lo || r > hi {
            continue;
        }
        if i < k || i + k >= n {
            return Err(Error::Window(format!(
                "profile on [{}, {}] does not cover the averaging window around r = {r}",
                grid.r_min, grid.r_max
            )));
        }
        let (mut num, mut den) = (0.0, 0.0);
        for (w, s) in grid.base_weights[i - k..=i + k]
            .iter()
            .zip(&sigma[i - k..=i + k])
        {
            num += w * s;
            den += w;
        }
        let avg = num / den;
        if !(avg > 0.0) {
            return Err(Error::Window(format!(
                "averaged profile is {avg:e} at r = {r}"
            )));
        }
        xs.push(r.ln());
        ys.push(avg.ln());
    }
    if xs.len() < 16 {
        return Err(Error::Window(format!(
            "{} samples in [{lo}, {hi}], at least 16 required",
            xs.len()
        )));
    }
    let m = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / m;
    let my = ys.iter().sum::<f64>() / m;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residual = (xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum::<f64>()
        / m)
        .sqrt();
    if residual > max_residual {
        return Err(Error::FitRejected {
            residual,
            threshold: max_residual,
        });
    }
    Ok(DecayFit {
        beta_hat: -slope,
        log_constant: intercept,
        residual,
        r_window: window,
        averaging_window: averaging,
        samples: xs.len(),
    })
}

/// Radial grid on which both sides of the identity are resolved for `f`,
/// with pins up to `pin_radius` from the origin.
pub fn auto_radial_grid(
    f: &TestFunction,
    pin_radius: f64,
) -> Result<crate::quadrature::RadialGrid> {
    let spectral = f.spectral_radius(1e-10);
    let reach = f.spatial_reach(1e-10);
    if !reach.is_finite() {
        return Err(domain("f has no spatial decay"));
    }
    let r_max = (reach + pin_radius).max(spectral);
    let width = (0.5 / spectral).min(0.25);
    let n = ((r_max / width).ceil() as usize).max(2) * 8;
    radial_grid(f.dim(), 0.0, r_max, n, RadialScheme::Uniform)
}

#[derive(Debug, Clone, Serialize)]
pub struct OperatorRatio {
    pub weighted_norm_sq: f64,
    pub sobolev_norm_sq: f64,
    pub ratio: f64,
}

/// `‖T_t f‖²_{L²(t^{d-1}dt × dλ)} / ‖f‖²_{Ḣ^{-β/2+ε}}` for each member of the family.
pub fn operator_bound_ratio(
    family: &[TestFunction],
    lambda: &DiscreteMeasure,
    beta: f64,
    epsilon: f64,
) -> Result<Vec<OperatorRatio>> {
    let pin_radius = lambda.support_radius();
    family
        .iter()
        .map(|f| {
            let grid = auto_radial_grid(f, pin_radius)?;
            let rule = SphereRule::default_for(f.dim())?;
            let w = weighted_t_norm(f, lambda, &grid, &rule)?.physical;
            let s = sobolev_norm(f, -beta / 2.0 + epsilon)?;
            Ok(OperatorRatio {
                weighted_norm_sq: w,
                sobolev_norm_sq: s,
                ratio: w / s,
            })
        })
        .collect()
}

/// Samples drawn per Monte Carlo block; block `b` uses ChaCha stream `b`.
pub const CHAIN_BLOCK: usize = 1 << 16;
const CHAIN_CELL_BUDGET: u128 = 1 << 28;

#[derive(Debug, Clone, Serialize)]
pub struct ChainEstimate {
    pub k: usize,
    pub cell: f64,
    pub n_samples: usize,
    pub seed: u64,
    pub occupied: usize,
    /// `occupied · cell^k`, a lower estimate of the chain set's measure.
    pub estimate: f64,
    pub lower_bound: bool,
}

/// Occupied-cell estimate of the Lebesgue measure of the `k`-chain set
/// `{(|x_1-x_2|, …, |x_k-x_{k+1}|)}` from i.i.d. tuples drawn from `μ`.
/// Cells tile `[0, D]^k` with `D` the bounding-box diagonal of the support.
pub fn chain_volume_estimate(
    mu: &DiscreteMeasure,
    k: usize,
    n_samples: usize,
    cell: f64,
    seed: u64,
) -> Result<ChainEstimate> {
    if k == 0 {
        return Err(domain("chain length k must be at least 1"));
    }
    if !(cell > 0.0) {
        return Err(domain("cell size must be positive"));
    }
    let per_axis = ((mu.bounding_diagonal() / cell).floor() as usize + 1) as u128;
    let total = per_axis.checked_pow(k as u32).unwrap_or(u128::MAX);
    if total > CHAIN_CELL_BUDGET {
        return Err(Error::Budget {
            requested: total,
            budget: CHAIN_CELL_BUDGET as usize,
        });
    }
    if n_samples as u128 * (k as u128 + 1) > (POINT_BUDGET as u128) << 6 {
        return Err(Error::Budget {
            requested: n_samples as u128 * (k as u128 + 1),
            budget: POINT_BUDGET << 6,
        });
    }
    let per_axis = per_axis as usize;
    let picker = WeightedIndex::new(mu.weights()).map_err(|e| domain(e.to_string()))?;
    let blocks = n_samples.div_ceil(CHAIN_BLOCK);
    let cells: Vec<Vec<usize>> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(b as u64);
            let count = CHAIN_BLOCK.min(n_samples - b * CHAIN_BLOCK);
            let mut out = Vec::with_capacity(count);
            let mut tuple = vec![0usize; k + 1];
            for _ in 0..count {
                for slot in tuple.iter_mut() {
                    *slot = picker.sample(&mut rng);
                }
                let mut idx = 0;
                for w in tuple.windows(2) {
                    let dist = crate::measures::dist2(mu.point(w[0]), mu.point(w[1])).sqrt();
                    let c = ((dist / cell) as usize).min(per_axis - 1);
                    idx = idx * per_axis + c;
                }
                out.push(idx);
            }
            out
        })
        .collect();
    let mut seen = vec![false; per_axis.pow(k as u32)];
    let mut occupied = 0;
    for c in cells.iter().flatten() {
        if !seen[*c] {
            seen[*c] = true;
            occupied += 1;
        }
    }
    Ok(ChainEstimate {
        k,
        cell,
        n_samples,
        seed,
        occupied,
        estimate: occupied as f64 * cell.powi(k as i32),
        lower_bound: true,
    })
}
