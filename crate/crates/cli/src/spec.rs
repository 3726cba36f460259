//! Measure and test-function spec strings such as `cantor:d=2,ratio=0.25,depth=5`.

use crate::CliError;
use pinlab::measures::{
    bump_density, cantor_product_measure, gaussian_density, two_bump_density, uniform_measure,
    DiscreteMeasure, GridField, Shape, TestFunction,
};
use std::collections::BTreeMap;

pub enum MeasureInput {
    Points(DiscreteMeasure),
    Density(GridField),
}

impl MeasureInput {
    pub fn dim(&self) -> usize {
        match self {
            MeasureInput::Points(m) => m.dim(),
            MeasureInput::Density(g) => g.dim(),
        }
    }

    pub fn points(self) -> Result<DiscreteMeasure, CliError> {
        match self {
            MeasureInput::Points(m) => Ok(m),
            MeasureInput::Density(g) => Ok(g.to_measure()?),
        }
    }
}

struct Params {
    name: String,
    values: BTreeMap<String, String>,
}

impl Params {
    fn parse(spec: &str) -> Result<Self, CliError> {
        let (name, rest) = spec.split_once(':').unwrap_or((spec, ""));
        let mut values = BTreeMap::new();
        for kv in rest.split(',').filter(|s| !s.is_empty()) {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("expected key=value in '{kv}'")))?;
            values.insert(k.trim().to_string(), v.trim().to_string());
        }
        Ok(Params {
            name: name.trim().to_string(),
            values,
        })
    }

    fn take<T: std::str::FromStr>(&mut self, key: &str, default: T) -> Result<T, CliError> {
        match self.values.remove(key) {
            None => Ok(default),
            Some(v) => v.parse().map_err(|_| {
                CliError::Usage(format!("bad value '{v}' for {key} in {}", self.name))
            }),
        }
    }

    fn finish(self) -> Result<(), CliError> {
        match self.values.keys().next() {
            None => Ok(()),
            Some(k) => Err(CliError::Usage(format!(
                "unknown parameter '{k}' for {}",
                self.name
            ))),
        }
    }
}

pub fn measure(spec: &str) -> Result<MeasureInput, CliError> {
    let mut p = Params::parse(spec)?;
    let name = p.name.clone();
    let out = match name.as_str() {
        "cantor" => {
            let d = p.take("d", 2usize)?;
            let ratio = p.take("ratio", 0.25)?;
            let depth = p.take("depth", 5u32)?;
            MeasureInput::Points(cantor_product_measure(d, ratio, depth)?)
        }
        "circle" | "sphere" | "disk" | "square" => {
            let (s, n0) = match name.as_str() {
                "circle" => (Shape::Circle, 4096),
                "sphere" => (Shape::Sphere, 4096),
                "disk" => (Shape::Disk, 100_000),
                _ => (Shape::Square, 100_000),
            };
            let n = p.take("n", n0)?;
            MeasureInput::Points(uniform_measure(s, n)?)
        }
        "gaussian-density" | "bump-density" | "two-bump-density" => {
            let n = p.take("grid", 256usize)?;
            MeasureInput::Density(
                match name.as_str() {
                    "gaussian-density" => {
                        let d = p.take("d", 2usize)?;
                        gaussian_density(d, n)?
                    }
                    "bump-density" => bump_density(n)?,
                    _ => two_bump_density(n)?,
                }
                .normalized_density()?,
            )
        }
        "file" => {
            let path: String = p.take("path", String::new())?;
            let text = std::fs::read_to_string(&path)
                .map_err(|e| CliError::Usage(format!("cannot read measure {path}: {e}")))?;
            MeasureInput::Points(DiscreteMeasure::from_json(&text)?)
        }
        other => return Err(CliError::Usage(format!("unknown measure '{other}'"))),
    };
    p.finish()?;
    Ok(out)
}

pub fn function(name: &str, d: usize) -> Result<TestFunction, CliError> {
    Ok(match name {
        "gaussian" => TestFunction::standard_gaussian(d),
        "shifted-gaussian" => TestFunction::shifted_gaussian(d),
        "two-bump" => TestFunction::two_bump(d),
        other => return Err(CliError::Usage(format!("unknown function '{other}'"))),
    })
}

pub const FUNCTIONS: [&str; 3] = ["gaussian", "shifted-gaussian", "two-bump"];
