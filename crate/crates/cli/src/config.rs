use crate::CliError;
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};
use std::path::Path;

/// Merge a config file section with explicitly given flags (flags win) and
/// fill the rest from the command's defaults.
pub fn resolve<C, F>(file: Option<&Path>, command: &str, flags: &F) -> Result<C, CliError>
where
    C: DeserializeOwned,
    F: Serialize,
{
    let mut merged = Map::new();
    if let Some(path) = file {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        let value: Value = serde_json::from_str(&text)
            .map_err(|e| CliError::Usage(format!("config {} is not JSON: {e}", path.display())))?;
        let Value::Object(obj) = value else {
            return Err(CliError::Usage("config must be a JSON object".into()));
        };
        // either a flat object or one keyed by subcommand
        let section = match obj.get(command) {
            Some(Value::Object(inner)) => inner.clone(),
            _ => obj,
        };
        merged.extend(section);
    }
    let Value::Object(given) = serde_json::to_value(flags).expect("flags serialize") else {
        unreachable!("flag structs serialize to objects")
    };
    merged.extend(given);
    serde_json::from_value(Value::Object(merged))
        .map_err(|e| CliError::Usage(format!("invalid {command} config: {e}")))
}

pub fn hash<C: Serialize>(command: &str, config: &C) -> String {
    let text = serde_json::to_string(&(command, config)).expect("config serializes");
    Sha256::digest(text.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}
