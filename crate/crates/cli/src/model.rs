//! Semi-axis model specifications given on the command line.
//!
//! Accepted forms:
//! * inline JSON, e.g. `{"kind":"canonical","b":1,"c":1}`
//! * `@path` or a path to a file holding that JSON
//! * `canonical:b=1,c=1`
//! * `two-term:c1=1,c2=0.5,a1=1,a2=1.25`
//! * `table:1,0.5,0.25`

use std::collections::HashMap;
use std::path::Path;

use ellipsoid_entropy::SemiAxisModel;

use crate::error::{usage, CliError, CliResult};

pub fn parse_model(text: &str) -> CliResult<SemiAxisModel> {
    let text = text.trim();
    if text.starts_with('{') {
        return Ok(serde_json::from_str(text)?);
    }
    if let Some(path) = text.strip_prefix('@') {
        return read_model_file(path);
    }
    if let Some((head, rest)) = text.split_once(':') {
        match head {
            "canonical" => {
                let kv = key_values(rest)?;
                return Ok(SemiAxisModel::canonical(need(&kv, "b")?, need(&kv, "c")?)?);
            }
            "two-term" | "two_term" => {
                let kv = key_values(rest)?;
                return Ok(SemiAxisModel::two_term(
                    need(&kv, "c1")?,
                    need(&kv, "c2")?,
                    need(&kv, "a1")?,
                    need(&kv, "a2")?,
                )?);
            }
            "table" => return Ok(SemiAxisModel::table(parse_list(rest)?, None)?),
            _ => {}
        }
    }
    if Path::new(text).is_file() {
        return read_model_file(text);
    }
    Err(usage(format!("unrecognised model {text:?}; expected JSON, @file, canonical:, two-term: or table:")))
}

fn read_model_file(path: &str) -> CliResult<SemiAxisModel> {
    let raw = std::fs::read_to_string(path).map_err(|source| CliError::Read { path: path.to_string(), source })?;
    Ok(serde_json::from_str(&raw)?)
}

fn key_values(s: &str) -> CliResult<HashMap<&str, f64>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|pair| {
            let (k, v) = pair.split_once('=').ok_or_else(|| usage(format!("expected key=value, got {pair:?}")))?;
            let v = v.trim().parse::<f64>().map_err(|_| usage(format!("{k} is not a number: {v:?}")))?;
            Ok((k.trim(), v))
        })
        .collect()
}

fn need(kv: &HashMap<&str, f64>, key: &str) -> CliResult<f64> {
    kv.get(key).copied().ok_or_else(|| usage(format!("model is missing {key}")))
}

pub fn parse_list(s: &str) -> CliResult<Vec<f64>> {
    s.split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|_| usage(format!("not a number: {t:?}"))))
        .collect()
}

/// `start:stop:count`, log-spaced.
pub fn parse_eps_grid(s: &str) -> CliResult<Vec<f64>> {
    let parts: Vec<&str> = s.split(':').collect();
    let [start, stop, count] = parts.as_slice() else {
        return Err(usage(format!("--eps-grid wants start:stop:count, got {s:?}")));
    };
    let num = |t: &str| t.parse::<f64>().map_err(|_| usage(format!("--eps-grid: not a number {t:?}")));
    let (start, stop) = (num(start)?, num(stop)?);
    let count: usize = count.parse().map_err(|_| usage(format!("--eps-grid: bad count {count:?}")))?;
    if !(start > 0.0 && stop > 0.0 && start.is_finite() && stop.is_finite()) || count == 0 {
        return Err(usage("--eps-grid needs positive finite endpoints and a positive count"));
    }
    Ok(ellipsoid_entropy::log_grid(start, stop, count))
}
