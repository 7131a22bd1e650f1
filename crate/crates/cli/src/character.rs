//! Character files: `{"alpha":"2/5","dim":1,"space":"L","values":{"P(1)":"1/3"}}`.
//! Config fields are optional; values are rationals written as strings or
//! integers.

use std::path::Path;

use postlie::text::{parse_generator, parse_rational};
use postlie::{Character, Config};
use serde_json::Value;

use crate::CliError;

pub(crate) struct CharacterFile {
    pub dim: Option<usize>,
    pub alpha: Option<String>,
    pub space: Option<String>,
    values: Vec<(String, String)>,
}

impl CharacterFile {
    pub fn to_character(&self, cfg: &Config) -> Result<Character, CliError> {
        let mut out = Character::unit(cfg.dim);
        for (key, value) in &self.values {
            let g = parse_generator(key, cfg).map_err(|e| CliError::Parse(format!("key {key:?}: {e}")))?;
            let q = parse_rational(value).map_err(|e| CliError::Parse(format!("value of {key:?}: {e}")))?;
            out.set(g, q);
        }
        Ok(out)
    }
}

fn parse_doc(src: &str) -> Result<CharacterFile, CliError> {
    let doc: Value = serde_json::from_str(src).map_err(|e| CliError::Parse(format!("character file: {e}")))?;
    let obj = doc.as_object().ok_or_else(|| CliError::Parse("character file must be a JSON object".into()))?;
    let text = |key: &str| -> Result<Option<String>, CliError> {
        match obj.get(key) {
            None | Some(Value::Null) => Ok(None),
            Some(Value::String(s)) => Ok(Some(s.clone())),
            Some(Value::Number(n)) => Ok(Some(n.to_string())),
            Some(other) => Err(CliError::Parse(format!("key {key:?}: expected a string, found {other}"))),
        }
    };
    let dim = match obj.get("dim") {
        None | Some(Value::Null) => None,
        Some(v) => Some(
            v.as_u64()
                .and_then(|d| usize::try_from(d).ok())
                .ok_or_else(|| CliError::Parse(format!("key \"dim\": expected a positive integer, found {v}")))?,
        ),
    };
    let mut values = Vec::new();
    if let Some(v) = obj.get("values") {
        let map = v.as_object().ok_or_else(|| CliError::Parse("key \"values\": expected an object".into()))?;
        for (k, v) in map {
            let q = match v {
                Value::String(s) => s.clone(),
                Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
                other => return Err(CliError::Parse(format!("key {k:?}: expected a rational string, found {other}"))),
            };
            values.push((k.clone(), q));
        }
    }
    for k in obj.keys() {
        if !matches!(k.as_str(), "dim" | "alpha" | "space" | "values") {
            return Err(CliError::Parse(format!("unknown key {k:?} in character file")));
        }
    }
    Ok(CharacterFile { dim, alpha: text("alpha")?, space: text("space")?, values })
}

pub(crate) fn read_file(path: &Path) -> Result<CharacterFile, CliError> {
    let src = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    parse_doc(&src).map_err(|e| match e {
        CliError::Parse(m) => CliError::Parse(format!("{}: {m}", path.display())),
        other => other,
    })
}

/// Parses character JSON against a fixed configuration; config fields in the
/// document must agree with it.
pub fn parse_character(src: &str, cfg: &Config) -> Result<Character, CliError> {
    let file = parse_doc(src)?;
    if file.dim.is_some_and(|d| d != cfg.dim) {
        return Err(CliError::Config(format!("character has dim {} but {} is in effect", file.dim.unwrap_or(0), cfg.dim)));
    }
    file.to_character(cfg)
}

/// Reads a character file against a fixed configuration.
pub fn load_character(path: &Path, cfg: &Config) -> Result<Character, CliError> {
    let src = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    parse_character(&src, cfg)
}
