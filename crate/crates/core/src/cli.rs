//! Flag parsing for scenario subcommands.
//!
//! `ergokit decay --type tls --pbar 0.8 -o out.csv` becomes a
//! [`ScenarioConfig`] with parameters `{type: "tls", p_bar: 0.8}`. Values
//! parse as integers, numbers, comma-separated number lists or strings.

use std::path::PathBuf;

use serde_json::Value;

use crate::error::{Error, Result};
use crate::scenario::{Scenario, ScenarioConfig};
use crate::series::Format;

/// Short flag spellings accepted for canonical parameter names.
pub const ALIASES: [(&str, &str); 4] = [("pbar", "p_bar"), ("nbar", "n_bar"), ("mu-bar-sq", "mu_bar_sq"), ("n-thermal", "n_thermal")];

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioInvocation {
    pub config: ScenarioConfig,
    pub jobs: Option<usize>,
}

fn canonical(flag: &str) -> String {
    ALIASES
        .iter()
        .find(|(a, _)| *a == flag)
        .map(|(_, c)| c.to_string())
        .unwrap_or_else(|| flag.replace('-', "_"))
}

pub fn parse_value(text: &str) -> Value {
    if let Ok(i) = text.parse::<u64>() {
        return Value::from(i);
    }
    if let Ok(x) = text.parse::<f64>() {
        return Value::from(x);
    }
    if text.contains(',') {
        let parts: Option<Vec<Value>> = text.split(',').map(|p| p.trim().parse::<f64>().ok().map(Value::from)).collect();
        if let Some(xs) = parts {
            return Value::Array(xs);
        }
    }
    Value::from(text)
}

pub fn parse_jobs(text: &str) -> Result<usize> {
    match text.parse::<usize>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(Error::Config(format!("--jobs must be a positive integer, got '{text}'"))),
    }
}

/// Parses `name --key value ... [-o path] [--format csv|json] [--jobs n]`.
pub fn parse_scenario_args(args: &[String]) -> Result<ScenarioInvocation> {
    let (name, rest) = args.split_first().ok_or_else(|| Error::Config("missing scenario name".into()))?;
    let mut config = ScenarioConfig::new(name.parse::<Scenario>()?);
    let mut jobs = None;
    let mut it = rest.iter();
    while let Some(flag) = it.next() {
        let key = flag
            .strip_prefix("--")
            .or_else(|| flag.strip_prefix('-').filter(|k| k.len() == 1))
            .ok_or_else(|| Error::Config(format!("unexpected argument '{flag}'")))?;
        let (key, inline) = match key.split_once('=') {
            Some((k, v)) => (k, Some(v.to_string())),
            None => (key, None),
        };
        let value = match inline {
            Some(v) => v,
            None => it.next().cloned().ok_or_else(|| Error::Config(format!("flag '{flag}' needs a value")))?,
        };
        match key {
            "o" | "output" => config.output = Some(PathBuf::from(value)),
            "format" => {
                config.format = Some(match value.as_str() {
                    "csv" => Format::Csv,
                    "json" => Format::Json,
                    other => return Err(Error::Config(format!("unknown format '{other}'"))),
                })
            }
            "jobs" => jobs = Some(parse_jobs(&value)?),
            _ => {
                let k = canonical(key);
                if config.parameters.insert(k.clone(), parse_value(&value)).is_some() {
                    return Err(Error::Config(format!("parameter '{k}' given twice")));
                }
            }
        }
    }
    Ok(ScenarioInvocation { config, jobs })
}
