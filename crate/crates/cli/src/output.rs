use crate::CliError;
use pinlab::constants::CONSTANTS_VERSION;
use pinlab::report::{ReportHeader, ARTIFACT_VERSION};
use serde::Serialize;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

pub struct Output {
    dir: PathBuf,
}

#[derive(Serialize)]
struct Envelope<'a, C: Serialize, R: Serialize> {
    command: &'a str,
    artifact_version: &'a str,
    constants_version: &'a str,
    config_hash: &'a str,
    config: &'a C,
    pass: bool,
    result: &'a R,
}

impl Output {
    pub fn new(dir: PathBuf) -> Self {
        Output { dir }
    }

    fn create(&self, name: &str) -> Result<BufWriter<File>, CliError> {
        std::fs::create_dir_all(&self.dir)?;
        Ok(BufWriter::new(File::create(self.dir.join(name))?))
    }

    /// `<command>.json` with the effective config, its hash and the versions.
    pub fn report<C: Serialize, R: Serialize>(
        &self,
        command: &str,
        hash: &str,
        config: &C,
        pass: bool,
        result: &R,
    ) -> Result<PathBuf, CliError> {
        let env = Envelope {
            command,
            artifact_version: ARTIFACT_VERSION,
            constants_version: CONSTANTS_VERSION,
            config_hash: hash,
            config,
            pass,
            result,
        };
        let name = format!("{command}.json");
        let mut w = self.create(&name)?;
        serde_json::to_writer_pretty(&mut w, &env).map_err(pinlab::Error::from)?;
        writeln!(w)?;
        w.flush()?;
        Ok(self.dir.join(name))
    }

    /// CSV under a `#` header block; cells are written verbatim.
    pub fn csv(
        &self,
        name: &str,
        header: &ReportHeader,
        columns: &[&str],
        rows: impl IntoIterator<Item = Vec<String>>,
    ) -> Result<(), CliError> {
        let mut w = self.create(name)?;
        header.write_block(&mut w)?;
        writeln!(w, "{}", columns.join(","))?;
        for row in rows {
            writeln!(w, "{}", row.join(","))?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn file(&self, name: &str) -> Result<BufWriter<File>, CliError> {
        self.create(name)
    }
}
