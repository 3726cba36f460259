//! Header blocks and CSV/JSON emission shared by profiles and reports.

use crate::constants::CONSTANTS_VERSION;
use crate::error::Result;
use serde::Serialize;
use std::collections::BTreeMap;
use std::io::Write;

pub const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Metadata written ahead of every CSV and embedded in every JSON report.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct ReportHeader {
    pub d: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_max: Option<f64>,
    pub resolutions: BTreeMap<String, usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bandwidth: Option<f64>,
    pub constants_version: String,
    pub artifact_version: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub config_hash: Option<String>,
}

impl ReportHeader {
    pub fn new(d: usize) -> Self {
        ReportHeader {
            d,
            r_max: None,
            resolutions: BTreeMap::new(),
            bandwidth: None,
            constants_version: CONSTANTS_VERSION.to_string(),
            artifact_version: ARTIFACT_VERSION.to_string(),
            config_hash: None,
        }
    }

    pub fn with_r_max(mut self, r_max: f64) -> Self {
        self.r_max = Some(r_max);
        self
    }

    pub fn with_resolution(mut self, name: &str, n: usize) -> Self {
        self.resolutions.insert(name.to_string(), n);
        self
    }

    pub fn with_bandwidth(mut self, h: f64) -> Self {
        self.bandwidth = Some(h);
        self
    }

    pub fn with_config_hash(mut self, hash: &str) -> Self {
        self.config_hash = Some(hash.to_string());
        self
    }

    /// `# key: value` lines.
    pub fn write_block(&self, out: &mut impl Write) -> Result<()> {
        writeln!(out, "# d: {}", self.d)?;
        if let Some(r) = self.r_max {
            writeln!(out, "# r_max: {r}")?;
        }
        for (k, v) in &self.resolutions {
            writeln!(out, "# resolution.{k}: {v}")?;
        }
        if let Some(h) = self.bandwidth {
            writeln!(out, "# bandwidth: {h}")?;
        }
        writeln!(out, "# constants_version: {}", self.constants_version)?;
        writeln!(out, "# artifact_version: {}", self.artifact_version)?;
        if let Some(h) = &self.config_hash {
            writeln!(out, "# config_hash: {h}")?;
        }
        Ok(())
    }
}

/// Write rows under a header block. Every row must match `columns` in length.
pub fn write_csv(
    out: &mut impl Write,
    header: Option<&ReportHeader>,
    columns: &[&str],
    rows: impl IntoIterator<Item = Vec<f64>>,
) -> Result<()> {
    if let Some(h) = header {
        h.write_block(out)?;
    }
    writeln!(out, "{}", columns.join(","))?;
    for row in rows {
        debug_assert_eq!(row.len(), columns.len());
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        writeln!(out, "{}", cells.join(","))?;
    }
    Ok(())
}
