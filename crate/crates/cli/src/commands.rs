use crate::config::{hash, resolve};
use crate::output::Output;
use crate::spec::{self, MeasureInput, FUNCTIONS};
use crate::*;
use pinlab::analysis::{
    best_known_threshold, chain_volume_estimate, decay_fit, exceptional_bound, pinned_threshold,
    pinned_threshold_solved, BetaCurve, ChainEstimate, DecayFit, ExceptionalMethod, AVERAGING_STEP,
    FIT_RESIDUAL_LIMIT,
};
use pinlab::constants::{wave_constant, GROUP_ACTION_CONSTANT_D2};
use pinlab::measures::{frostman_check, DiscreteMeasure};
use pinlab::operators::{
    extension_profile, group_action_functional_2d, identity_report, mattila_integral, pinned_grid,
    pinned_l2, pinned_measure, sigma_profile, wave_energy, weighted_t_norm, FourierSource,
    GroupActionOptions, IdentityReport, MattilaReport, WaveOptions, WeightedNorm,
};
use pinlab::quadrature::{radial_grid, sphere_rule, RadialScheme, SphereRule};
use pinlab::report::ReportHeader;
use serde::{Deserialize, Serialize};
use serde_json::json;
use std::path::Path;

fn require_plane_or_higher(d: usize) -> Result<(), CliError> {
    if d < 2 {
        Err(CliError::Usage("d ≥ 2 required".into()))
    } else {
        Ok(())
    }
}

fn rule_for(d: usize, res: Option<usize>) -> Result<SphereRule, CliError> {
    Ok(match res {
        Some(r) => sphere_rule(d, r)?,
        None => SphereRule::default_for(d)?,
    })
}

fn check(pass: bool, msg: impl FnOnce() -> String) -> Result<(), CliError> {
    if pass {
        Ok(())
    } else {
        Err(CliError::Tolerance(msg()))
    }
}

fn fmt_point(x: &[f64]) -> String {
    x.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(";")
}

// ---------------------------------------------------------------- identity

#[derive(Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct IdentityConfig {
    pub d: usize,
    pub f: String,
    pub x: Option<Vec<f64>>,
    pub rmax: f64,
    pub radial_nodes: usize,
    pub sphere_res: Option<usize>,
    pub tol: f64,
    pub gaussian_tol: f64,
    pub matrix: bool,
    pub wave: bool,
    pub wave_tol: f64,
    pub lambda: Option<String>,
}

impl Default for IdentityConfig {
    fn default() -> Self {
        IdentityConfig {
            d: 2,
            f: "gaussian".into(),
            x: None,
            rmax: 6.0,
            radial_nodes: 128,
            sphere_res: None,
            tol: 1e-5,
            gaussian_tol: 1e-6,
            matrix: false,
            wave: false,
            wave_tol: 1e-2,
            lambda: None,
        }
    }
}

#[derive(Serialize)]
struct IdentityCase {
    d: usize,
    f: String,
    tol: f64,
    pass: bool,
    #[serde(flatten)]
    report: IdentityReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    wave: Option<WaveCheck>,
}

#[derive(Serialize)]
struct WaveCheck {
    energy: f64,
    constant: f64,
    scaled: f64,
    rel_err: f64,
    boundary_ratio: f64,
    t_max: f64,
    pass: bool,
}

#[derive(Serialize)]
struct WeightedCase {
    d: usize,
    f: String,
    pass: bool,
    #[serde(flatten)]
    norm: WeightedNorm,
}

fn off_centre(d: usize) -> Vec<f64> {
    let mut x = vec![0.0; d];
    if d == 2 {
        x[0] = 0.4;
        x[1] = -0.3;
    } else {
        x[d - 1] = 0.7;
    }
    x
}

pub fn identity(file: Option<&Path>, flags: &IdentityFlags, out: &Output) -> Result<(), CliError> {
    let cfg: IdentityConfig = resolve(file, "identity", flags)?;
    let h = hash("identity", &cfg);
    let mut runs: Vec<(usize, &str, Vec<f64>)> = Vec::new();
    if cfg.matrix {
        for d in [2, 3] {
            for f in FUNCTIONS {
                runs.push((d, f, vec![0.0; d]));
                runs.push((d, f, off_centre(d)));
            }
        }
    } else {
        require_plane_or_higher(cfg.d)?;
        let x = cfg.x.clone().unwrap_or_else(|| vec![0.0; cfg.d]);
        if x.len() != cfg.d {
            return Err(CliError::Usage(format!(
                "x has {} coordinates, d = {}",
                x.len(),
                cfg.d
            )));
        }
        runs.push((cfg.d, cfg.f.as_str(), x));
    }

    let mut cases = Vec::new();
    let mut profile = None;
    for (d, name, x) in &runs {
        let f = spec::function(name, *d)?;
        let grid = radial_grid(*d, 0.0, cfg.rmax, cfg.radial_nodes, RadialScheme::Uniform)?;
        let rule = rule_for(*d, cfg.sphere_res)?;
        let report = identity_report(&f, x, &grid, &rule)?;
        if runs.len() == 1 {
            profile = Some((
                extension_profile(&f, x, &grid, &rule)?,
                grid.clone(),
                rule.len(),
            ));
        }
        let tol = if *name == "gaussian" {
            cfg.gaussian_tol
        } else {
            cfg.tol
        };
        let wave = match (cfg.wave, wave_constant(*d)) {
            (true, Some(c)) => {
                let w = wave_energy(&f, x, &WaveOptions::for_dim(*d))?;
                let scaled = c * w.energy;
                let rel_err = (scaled - report.rhs).abs() / report.rhs;
                Some(WaveCheck {
                    energy: w.energy,
                    constant: c,
                    scaled,
                    rel_err,
                    boundary_ratio: w.boundary_ratio,
                    t_max: w.t_max,
                    pass: rel_err <= cfg.wave_tol,
                })
            }
            _ => None,
        };
        cases.push(IdentityCase {
            d: *d,
            f: name.to_string(),
            tol,
            pass: report.rel_err <= tol && wave.as_ref().is_none_or(|w| w.pass),
            report,
            wave,
        });
    }

    let mut weighted = Vec::new();
    if let Some(spec_str) = &cfg.lambda {
        let lambda = spec::measure(spec_str)?.points()?;
        let mut seen = Vec::new();
        for (d, name, _) in &runs {
            if seen.contains(&(*d, *name)) {
                continue;
            }
            seen.push((*d, *name));
            let f = spec::function(name, *d)?;
            let grid = radial_grid(*d, 0.0, cfg.rmax, cfg.radial_nodes, RadialScheme::Uniform)?;
            let rule = rule_for(*d, cfg.sphere_res)?;
            let norm = weighted_t_norm(&f, &lambda.embed(*d)?, &grid, &rule)?;
            weighted.push(WeightedCase {
                d: *d,
                f: name.to_string(),
                pass: norm.rel_err <= cfg.tol,
                norm,
            });
        }
    }

    let pass = cases.iter().all(|c| c.pass) && weighted.iter().all(|w| w.pass);
    let result = json!({ "cases": cases, "weighted": weighted });
    out.report("identity", &h, &cfg, pass, &result)?;

    let header = ReportHeader::new(if cfg.matrix { 0 } else { cfg.d })
        .with_r_max(cfg.rmax)
        .with_resolution("radial", cfg.radial_nodes)
        .with_config_hash(&h);
    let header = match cfg.sphere_res {
        Some(r) => header.with_resolution("sphere", r),
        None => header,
    };
    out.csv(
        "identity.csv",
        &header,
        &["d", "f", "x", "lhs", "rhs", "rel_err", "pass"],
        cases.iter().map(|c| {
            vec![
                c.d.to_string(),
                c.f.clone(),
                fmt_point(&c.report.x),
                c.report.lhs.to_string(),
                c.report.rhs.to_string(),
                c.report.rel_err.to_string(),
                c.pass.to_string(),
            ]
        }),
    )?;
    if let Some((p, _, sphere_nodes)) = profile {
        let header = header.with_resolution("sphere_nodes", sphere_nodes);
        p.write_csv(&mut out.file("identity_profile.csv")?, &header)?;
    }
    for c in &cases {
        println!(
            "d={} f={} x=[{}] lhs={:.12e} rhs={:.12e} rel_err={:.3e} {}",
            c.d,
            c.f,
            fmt_point(&c.report.x),
            c.report.lhs,
            c.report.rhs,
            c.report.rel_err,
            if c.pass { "ok" } else { "FAIL" }
        );
    }
    for w in &weighted {
        println!(
            "weighted d={} f={} physical={:.12e} extension={:.12e} rel_err={:.3e} {}",
            w.d,
            w.f,
            w.norm.physical,
            w.norm.extension,
            w.norm.rel_err,
            if w.pass { "ok" } else { "FAIL" }
        );
    }
    check(pass, || "identity rel_err outside tolerance".into())
}

// ---------------------------------------------------------------- mattila

#[derive(Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MattilaConfig {
    pub measure: String,
    pub rmax: f64,
    pub radial_nodes: usize,
    pub sphere_res: Option<usize>,
    pub expect: Option<f64>,
    pub tol: f64,
}

impl Default for MattilaConfig {
    fn default() -> Self {
        MattilaConfig {
            measure: "gaussian-density:grid=256".into(),
            rmax: 4.0,
            radial_nodes: 64,
            sphere_res: None,
            expect: None,
            tol: 1e-6,
        }
    }
}

fn source(m: &MeasureInput) -> &dyn FourierSource {
    match m {
        MeasureInput::Points(p) => p,
        MeasureInput::Density(g) => g,
    }
}

pub fn mattila(file: Option<&Path>, flags: &MattilaFlags, out: &Output) -> Result<(), CliError> {
    let cfg: MattilaConfig = resolve(file, "mattila", flags)?;
    let h = hash("mattila", &cfg);
    let m = spec::measure(&cfg.measure)?;
    let d = m.dim();
    require_plane_or_higher(d)?;
    let grid = radial_grid(d, 0.0, cfg.rmax, cfg.radial_nodes, RadialScheme::Uniform)?;
    let rule = rule_for(d, cfg.sphere_res)?;
    let report: MattilaReport = mattila_integral(source(&m), &grid, &rule)?;
    let profile = sigma_profile(source(&m), &grid, &rule)?;
    let pass = cfg
        .expect
        .is_none_or(|e| (report.value - e).abs() <= cfg.tol);
    out.report("mattila", &h, &cfg, pass, &report)?;
    let header = ReportHeader::new(d)
        .with_r_max(cfg.rmax)
        .with_resolution("radial", grid.len())
        .with_resolution("sphere_nodes", rule.len())
        .with_config_hash(&h);
    profile.write_csv(&mut out.file("mattila.csv")?, &header)?;
    println!(
        "M = {:.12e} (r_max {}, sigma(r_max) = {:.3e}{})",
        report.value,
        report.r_max,
        report.sigma_at_rmax,
        if report.non_decay { ", no decay" } else { "" }
    );
    check(pass, || {
        format!(
            "M = {} differs from {:?} by more than {}",
            report.value, cfg.expect, cfg.tol
        )
    })
}

// ---------------------------------------------------------------- pinned

#[derive(Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PinnedConfig {
    pub measure: String,
    pub x: Option<Vec<f64>>,
    pub bandwidth: f64,
    pub t_max: Option<f64>,
    pub interval: Option<Vec<f64>>,
}

impl Default for PinnedConfig {
    fn default() -> Self {
        PinnedConfig {
            measure: "disk:n=100000".into(),
            x: None,
            bandwidth: 0.01,
            t_max: None,
            interval: None,
        }
    }
}

fn farthest(mu: &DiscreteMeasure, x: &[f64]) -> f64 {
    mu.iter()
        .map(|(p, _)| {
            p.iter()
                .zip(x)
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt()
        })
        .fold(0.0, f64::max)
}

pub fn pinned(file: Option<&Path>, flags: &PinnedFlags, out: &Output) -> Result<(), CliError> {
    let cfg: PinnedConfig = resolve(file, "pinned", flags)?;
    let h = hash("pinned", &cfg);
    let mu = spec::measure(&cfg.measure)?.points()?;
    let x = cfg.x.clone().unwrap_or_else(|| vec![0.0; mu.dim()]);
    if x.len() != mu.dim() {
        return Err(CliError::Usage(format!(
            "x has {} coordinates, measure lives in R^{}",
            x.len(),
            mu.dim()
        )));
    }
    let bw = cfg.bandwidth;
    let t_max = cfg.t_max.unwrap_or_else(|| farthest(&mu, &x) + 2.0 * bw);
    let grid = pinned_grid(t_max, bw)?;
    let profile = pinned_measure(&mu, &x, bw, &grid)?;
    let l2 = match &cfg.interval {
        None => None,
        Some(iv) if iv.len() == 2 => Some(pinned_l2(&mu, &x, [iv[0], iv[1]], bw)?),
        Some(_) => {
            return Err(CliError::Usage(
                "interval takes exactly two values a,b".into(),
            ))
        }
    };
    let result = json!({
        "x": x,
        "bandwidth": bw,
        "t_max": t_max,
        "cells": grid.len(),
        "mass": profile.mass(),
        "l2": l2,
        "measure": mu.meta,
    });
    out.report("pinned", &h, &cfg, true, &result)?;
    let header = ReportHeader::new(1)
        .with_r_max(t_max)
        .with_resolution("cells", grid.len())
        .with_bandwidth(bw)
        .with_config_hash(&h);
    profile.write_csv(&mut out.file("pinned.csv")?, &header)?;
    println!(
        "mass = {:.12}, cells = {}{}",
        profile.mass(),
        grid.len(),
        l2.map_or(String::new(), |v| format!(", l2 = {v:.12e}"))
    );
    Ok(())
}

// ---------------------------------------------------------------- decay

#[derive(Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DecayConfig {
    pub measure: String,
    pub window: Vec<f64>,
    pub averaging: usize,
    pub nodes: usize,
    pub sphere_res: usize,
    pub max_residual: f64,
    pub expect: Option<f64>,
    pub tol: f64,
}

impl Default for DecayConfig {
    fn default() -> Self {
        DecayConfig {
            measure: "circle:n=4096".into(),
            window: vec![2.0, 40.0],
            averaging: 8,
            nodes: 1024,
            sphere_res: 64,
            max_residual: FIT_RESIDUAL_LIMIT,
            expect: None,
            tol: 0.15,
        }
    }
}

pub fn decay(file: Option<&Path>, flags: &DecayFlags, out: &Output) -> Result<(), CliError> {
    let cfg: DecayConfig = resolve(file, "decay", flags)?;
    let h = hash("decay", &cfg);
    let [lo, hi] = match cfg.window.as_slice() {
        [a, b] => [*a, *b],
        _ => {
            return Err(CliError::Usage(
                "window takes exactly two values r_lo,r_hi".into(),
            ))
        }
    };
    let m = spec::measure(&cfg.measure)?;
    let d = m.dim();
    require_plane_or_higher(d)?;
    let pad = (cfg.averaging as f64 * AVERAGING_STEP).exp() * 1.02;
    let grid = radial_grid(d, lo / pad, hi * pad, cfg.nodes, RadialScheme::Log)?;
    let rule = sphere_rule(d, cfg.sphere_res)?;
    let profile = sigma_profile(source(&m), &grid, &rule)?;
    let header = ReportHeader::new(d)
        .with_r_max(grid.r_max)
        .with_resolution("radial", grid.len())
        .with_resolution("sphere_nodes", rule.len())
        .with_config_hash(&h);
    profile.write_csv(&mut out.file("decay.csv")?, &header)?;
    let fit: Result<DecayFit, _> = decay_fit(&profile, [lo, hi], cfg.averaging, cfg.max_residual);
    let fit = match fit {
        Ok(f) => f,
        Err(e @ pinlab::Error::FitRejected { .. }) => {
            let result = json!({ "error": e.to_string() });
            out.report("decay", &h, &cfg, false, &result)?;
            return Err(CliError::Tolerance(e.to_string()));
        }
        Err(e) => return Err(e.into()),
    };
    let pass = cfg
        .expect
        .is_none_or(|e| (fit.beta_hat - e).abs() <= cfg.tol);
    out.report("decay", &h, &cfg, pass, &fit)?;
    println!(
        "beta_hat = {:.6} (residual {:.4}, {} samples)",
        fit.beta_hat, fit.residual, fit.samples
    );
    check(pass, || {
        format!(
            "beta_hat {} outside {:?} ± {}",
            fit.beta_hat, cfg.expect, cfg.tol
        )
    })
}

// ---------------------------------------------------------------- thresholds

#[derive(Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ThresholdConfig {
    pub d: usize,
    pub dim_e: Option<f64>,
}

impl Default for ThresholdConfig {
    fn default() -> Self {
        ThresholdConfig { d: 2, dim_e: None }
    }
}

pub fn thresholds(
    file: Option<&Path>,
    flags: &ThresholdFlags,
    out: &Output,
) -> Result<(), CliError> {
    let cfg: ThresholdConfig = resolve(file, "thresholds", flags)?;
    let h = hash("thresholds", &cfg);
    require_plane_or_higher(cfg.d)?;
    let d = cfg.d;
    let dim_e = cfg.dim_e.unwrap_or((d as f64 + 1.0) / 2.0);
    let mut table = serde_json::Map::new();
    table.insert("d".into(), json!(d));
    table.insert("pinned".into(), json!(pinned_threshold(d)?));
    table.insert("pinned_solved".into(), json!(pinned_threshold_solved(d)?));
    table.insert("best_known".into(), json!(best_known_threshold(d)?));
    table.insert(
        format!("peres_schlag_at({dim_e})"),
        json!(exceptional_bound(ExceptionalMethod::PeresSchlag, d, dim_e)?),
    );
    table.insert(
        format!("liu_at({dim_e})"),
        json!(exceptional_bound(ExceptionalMethod::Liu, d, dim_e)?),
    );
    table.insert("beta".into(), json!(BetaCurve::known(d)?));
    let table = serde_json::Value::Object(table);
    out.report("thresholds", &h, &cfg, true, &table)?;
    for (k, v) in table.as_object().expect("object") {
        if v.is_number() {
            println!("{k}: {v}");
        }
    }
    Ok(())
}

// ---------------------------------------------------------------- chains

#[derive(Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ChainConfig {
    pub measure: String,
    pub k: usize,
    pub samples: Vec<usize>,
    pub cell: f64,
    pub seed: u64,
    pub expect: Option<f64>,
    pub tol: f64,
}

impl Default for ChainConfig {
    fn default() -> Self {
        ChainConfig {
            measure: "square:n=100000".into(),
            k: 2,
            samples: vec![1_000_000],
            cell: 0.01,
            seed: 42,
            expect: None,
            tol: 0.1,
        }
    }
}

pub fn chains(file: Option<&Path>, flags: &ChainFlags, out: &Output) -> Result<(), CliError> {
    let cfg: ChainConfig = resolve(file, "chains", flags)?;
    let h = hash("chains", &cfg);
    if cfg.samples.is_empty() {
        return Err(CliError::Usage("samples needs at least one count".into()));
    }
    let mu = spec::measure(&cfg.measure)?.points()?;
    let runs = cfg
        .samples
        .iter()
        .map(|&n| chain_volume_estimate(&mu, cfg.k, n, cfg.cell, cfg.seed))
        .collect::<pinlab::Result<Vec<ChainEstimate>>>()?;
    let mut order: Vec<&ChainEstimate> = runs.iter().collect();
    order.sort_by_key(|r| r.n_samples);
    let monotone = order.windows(2).all(|w| w[1].estimate >= w[0].estimate);
    let last = order.last().expect("nonempty");
    let rel_err = cfg.expect.map(|e| (last.estimate - e).abs() / e);
    let pass = monotone && rel_err.is_none_or(|r| r <= cfg.tol);
    let result = json!({ "runs": runs, "monotone": monotone, "rel_err": rel_err });
    out.report("chains", &h, &cfg, pass, &result)?;
    let header = ReportHeader::new(mu.dim()).with_config_hash(&h);
    out.csv(
        "chains.csv",
        &header,
        &["k", "cell", "n_samples", "occupied", "estimate", "seed"],
        runs.iter().map(|r| {
            vec![
                r.k.to_string(),
                r.cell.to_string(),
                r.n_samples.to_string(),
                r.occupied.to_string(),
                r.estimate.to_string(),
                r.seed.to_string(),
            ]
        }),
    )?;
    for r in &runs {
        println!("k={} n={} estimate={:.6}", r.k, r.n_samples, r.estimate);
    }
    check(pass, || match rel_err {
        Some(r) if r > cfg.tol => format!(
            "estimate {} is {:.1}% from {:?} (tolerance {:.1}%)",
            last.estimate,
            100.0 * r,
            cfg.expect,
            100.0 * cfg.tol
        ),
        _ => "estimates are not monotone in the sample count".into(),
    })
}

// ---------------------------------------------------------------- appendix

#[derive(Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AppendixConfig {
    pub density: String,
    pub grid: usize,
    pub angles: usize,
    pub rmax: f64,
    pub radial_nodes: usize,
    pub sphere_res: Option<usize>,
    pub tol: f64,
}

impl Default for AppendixConfig {
    fn default() -> Self {
        AppendixConfig {
            density: "gaussian".into(),
            grid: 256,
            angles: 64,
            rmax: 12.0,
            radial_nodes: 256,
            sphere_res: None,
            tol: 0.02,
        }
    }
}

pub fn appendix(file: Option<&Path>, flags: &AppendixFlags, out: &Output) -> Result<(), CliError> {
    let cfg: AppendixConfig = resolve(file, "appendix", flags)?;
    let h = hash("appendix", &cfg);
    let spec_str = match cfg.density.as_str() {
        "gaussian" => format!("gaussian-density:grid={}", cfg.grid),
        "bump" => format!("bump-density:grid={}", cfg.grid),
        "two-bump" => format!("two-bump-density:grid={}", cfg.grid),
        other => return Err(CliError::Usage(format!("unknown density '{other}'"))),
    };
    let MeasureInput::Density(rho) = spec::measure(&spec_str)? else {
        unreachable!("density specs build grid fields")
    };
    let opts = GroupActionOptions {
        n_angles: cfg.angles,
        ..GroupActionOptions::default()
    };
    let functional = group_action_functional_2d(&rho, &opts)?;
    let grid = radial_grid(2, 0.0, cfg.rmax, cfg.radial_nodes, RadialScheme::Uniform)?;
    let rule = rule_for(2, cfg.sphere_res)?;
    let m = mattila_integral(&rho, &grid, &rule)?;
    let ratio = functional / m.value;
    let rel_dev = (ratio / GROUP_ACTION_CONSTANT_D2 - 1.0).abs();
    let pass = rel_dev <= cfg.tol;
    let result = json!({
        "functional": functional,
        "mattila": m,
        "ratio": ratio,
        "stored_constant": GROUP_ACTION_CONSTANT_D2,
        "rel_dev": rel_dev,
    });
    out.report("appendix", &h, &cfg, pass, &result)?;
    let header = ReportHeader::new(2)
        .with_r_max(cfg.rmax)
        .with_resolution("grid", cfg.grid)
        .with_resolution("angles", cfg.angles)
        .with_resolution("radial", grid.len())
        .with_config_hash(&h);
    out.csv(
        "appendix.csv",
        &header,
        &[
            "density",
            "functional",
            "mattila",
            "ratio",
            "stored_constant",
            "rel_dev",
        ],
        [vec![
            cfg.density.clone(),
            functional.to_string(),
            m.value.to_string(),
            ratio.to_string(),
            GROUP_ACTION_CONSTANT_D2.to_string(),
            rel_dev.to_string(),
        ]],
    )?;
    println!(
        "ratio = {ratio:.9} (stored {GROUP_ACTION_CONSTANT_D2}, deviation {:.3}%)",
        100.0 * rel_dev
    );
    check(pass, || {
        format!(
            "ratio deviates {:.3}% from the stored constant",
            100.0 * rel_dev
        )
    })
}

// ---------------------------------------------------------------- frostman

#[derive(Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FrostmanConfig {
    pub measure: String,
    pub s: Option<f64>,
    pub centers: usize,
    pub radii: Option<Vec<f64>>,
    pub seed: u64,
    pub max_constant: Option<f64>,
}

impl Default for FrostmanConfig {
    fn default() -> Self {
        FrostmanConfig {
            measure: "cantor:d=2,ratio=0.25,depth=5".into(),
            s: None,
            centers: 256,
            radii: None,
            seed: 0,
            max_constant: None,
        }
    }
}

pub fn frostman(file: Option<&Path>, flags: &FrostmanFlags, out: &Output) -> Result<(), CliError> {
    let cfg: FrostmanConfig = resolve(file, "frostman", flags)?;
    let h = hash("frostman", &cfg);
    let mu = spec::measure(&cfg.measure)?.points()?;
    let s = match cfg.s.or(mu.meta.dimension) {
        Some(s) => s,
        None => {
            return Err(CliError::Usage(
                "s is required for measures without a known dimension".into(),
            ))
        }
    };
    let radii = cfg.radii.clone().unwrap_or_else(|| {
        let mut r = 2.0 * mu.resolution();
        let mut v = Vec::new();
        while r <= 1.0 {
            v.push(r);
            r *= 2.0;
        }
        v
    });
    let report = frostman_check(&mu, s, cfg.centers, &radii, cfg.seed)?;
    let pass = cfg
        .max_constant
        .is_none_or(|c| report.constant_estimate <= c);
    out.report(
        "frostman",
        &h,
        &cfg,
        pass,
        &json!({ "report": report, "radii": radii }),
    )?;
    println!(
        "s = {s}, constant = {:.6} at r = {} (centers {})",
        report.constant_estimate, report.witness_radius, report.n_centers
    );
    check(pass, || {
        format!(
            "Frostman constant {} exceeds {:?}",
            report.constant_estimate, cfg.max_constant
        )
    })
}
