use std::collections::BTreeMap;
use std::fmt::Display;
use std::path::Path;
use std::str::FromStr;

use clap::parser::ValueSource;
use clap::{ArgMatches, Command};

use crate::error::CliError;

/// Arguments that steer where and how a run executes but not what it
/// computes; they never enter the replayable parameter set.
const RUNTIME_ARGS: &[&str] = &["out", "config", "jobs", "help", "version"];

/// Fully resolved parameters of one run, keyed by long flag name.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Params(pub BTreeMap<String, String>);

impl Params {
    pub fn raw(&self, key: &str) -> Option<&str> {
        self.0.get(key).map(String::as_str)
    }

    pub fn get<T>(&self, key: &str) -> Result<T, CliError>
    where
        T: FromStr,
        T::Err: Display,
    {
        let raw = self
            .raw(key)
            .ok_or_else(|| CliError::Usage(format!("missing required parameter --{key}")))?;
        raw.parse()
            .map_err(|e| CliError::Usage(format!("--{key} '{raw}': {e}")))
    }

    pub fn get_opt<T>(&self, key: &str) -> Result<Option<T>, CliError>
    where
        T: FromStr,
        T::Err: Display,
    {
        match self.raw(key) {
            Some(_) => self.get(key).map(Some),
            None => Ok(None),
        }
    }

    pub fn set(&mut self, key: &str, value: impl ToString) {
        self.0.insert(key.to_string(), value.to_string());
    }
}

fn scalar_json(key: &str, v: &serde_json::Value) -> Result<String, CliError> {
    match v {
        serde_json::Value::String(s) => Ok(s.clone()),
        serde_json::Value::Number(n) => Ok(n.to_string()),
        serde_json::Value::Bool(b) => Ok(b.to_string()),
        _ => Err(CliError::Usage(format!("config key '{key}' must be a scalar"))),
    }
}

fn scalar_toml(key: &str, v: &toml::Value) -> Result<String, CliError> {
    match v {
        toml::Value::String(s) => Ok(s.clone()),
        toml::Value::Integer(i) => Ok(i.to_string()),
        toml::Value::Float(f) => Ok(f.to_string()),
        toml::Value::Boolean(b) => Ok(b.to_string()),
        _ => Err(CliError::Usage(format!("config key '{key}' must be a scalar"))),
    }
}

/// Reads a key-value config: a TOML table, or a JSON object. A JSON run
/// manifest contributes its `params` and must name the same subcommand.
pub fn load_config(path: &Path, subcommand: &str) -> Result<BTreeMap<String, String>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let bad = |e: &dyn Display| CliError::Usage(format!("config {}: {e}", path.display()));
    let mut out = BTreeMap::new();
    if path.extension().is_some_and(|e| e == "json") {
        let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| bad(&e))?;
        let mut object = value
            .as_object()
            .ok_or_else(|| bad(&"expected a JSON object"))?
            .clone();
        if let Some(recorded) = object.get("subcommand").and_then(|s| s.as_str()) {
            if recorded != subcommand {
                return Err(bad(&format!(
                    "manifest is for '{recorded}', not '{subcommand}'"
                )));
            }
        }
        if let Some(params) = object.remove("params") {
            object = params
                .as_object()
                .ok_or_else(|| bad(&"'params' must be an object"))?
                .clone();
        }
        for (k, v) in &object {
            out.insert(k.clone(), scalar_json(k, v)?);
        }
    } else {
        let table: toml::Table = toml::from_str(&text).map_err(|e| bad(&e))?;
        for (k, v) in &table {
            out.insert(k.clone(), scalar_toml(k, v)?);
        }
    }
    Ok(out)
}

/// Merges command-line values, config values and defaults, in that order of
/// precedence.
pub fn resolve(
    command: &Command,
    matches: &ArgMatches,
    config: BTreeMap<String, String>,
) -> Result<Params, CliError> {
    let ids: Vec<String> = command
        .get_arguments()
        .map(|a| a.get_id().to_string())
        .filter(|id| !RUNTIME_ARGS.contains(&id.as_str()))
        .collect();
    if let Some(unknown) = config.keys().find(|k| !ids.contains(k)) {
        return Err(CliError::Usage(format!(
            "config key '{unknown}' is not a parameter of '{}'",
            command.get_name()
        )));
    }

    let mut params = Params::default();
    for id in &ids {
        let source = matches.value_source(id);
        let from_matches = || {
            matches
                .get_raw(id)
                .and_then(|mut values| values.next())
                .map(|v| v.to_string_lossy().into_owned())
        };
        let value = match (source, config.get(id)) {
            (Some(ValueSource::CommandLine), _) => from_matches(),
            (_, Some(v)) => Some(v.clone()),
            _ => from_matches(),
        };
        if let Some(v) = value {
            params.set(id, v);
        }
    }
    Ok(params)
}
