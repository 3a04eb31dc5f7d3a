//! `--config FILE`: a JSON object whose entries become long flags.
//!
//! Config flags are inserted right after the subcommand name, ahead of the
//! flags given on the command line, so explicit flags win.

use std::ffi::OsString;

use serde_json::{Map, Value};

use crate::{CliError, CliResult};

const SUBCOMMANDS: [&str; 10] = [
    "generate",
    "ingest",
    "preprocess",
    "solve",
    "export-lp",
    "evaluate",
    "hypervolume",
    "score",
    "render",
    "bench",
];

pub fn expand(argv: Vec<OsString>) -> CliResult<Vec<OsString>> {
    let Some(pos) = argv.iter().position(|a| a == "--config" || a.to_string_lossy().starts_with("--config=")) else {
        return Ok(argv);
    };
    let path = match argv[pos].to_string_lossy().strip_prefix("--config=") {
        Some(p) => p.to_string(),
        None => argv
            .get(pos + 1)
            .map(|p| p.to_string_lossy().into_owned())
            .ok_or_else(|| CliError::invalid("--config needs a file"))?,
    };
    let Some(sub) = argv.iter().position(|a| SUBCOMMANDS.contains(&a.to_string_lossy().as_ref())) else {
        return Ok(argv);
    };
    let text = std::fs::read_to_string(&path).map_err(|e| CliError::invalid(format!("{path}: {e}")))?;
    let root: Value = serde_json::from_str(&text).map_err(|e| CliError::invalid(format!("{path}: {e}")))?;
    let Value::Object(obj) = root else {
        return Err(CliError::invalid(format!("{path}: config must be a JSON object")));
    };
    let name = argv[sub].to_string_lossy().into_owned();
    let section = match obj.get(&name) {
        Some(Value::Object(inner)) => inner.clone(),
        _ => obj.into_iter().filter(|(k, _)| !SUBCOMMANDS.contains(&k.as_str())).collect(),
    };

    let mut out = argv[..=sub].to_vec();
    out.extend(flags(&section)?);
    out.extend(argv[sub + 1..].iter().cloned());
    Ok(out)
}

fn flags(section: &Map<String, Value>) -> CliResult<Vec<OsString>> {
    let mut out = Vec::new();
    for (key, value) in section {
        let flag = format!("--{}", key.replace('_', "-"));
        match value {
            Value::Bool(true) => out.push(flag.into()),
            Value::Bool(false) | Value::Null => {}
            Value::Array(items) => {
                for item in items {
                    out.push(flag.clone().into());
                    out.push(scalar(key, item)?.into());
                }
            }
            other => {
                out.push(flag.into());
                out.push(scalar(key, other)?.into());
            }
        }
    }
    Ok(out)
}

fn scalar(key: &str, value: &Value) -> CliResult<String> {
    match value {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        Value::Bool(b) => Ok(b.to_string()),
        _ => Err(CliError::invalid(format!("config key `{key}`: expected a scalar"))),
    }
}
