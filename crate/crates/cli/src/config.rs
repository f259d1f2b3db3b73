//! Optional `key = value` config file.
//!
//! Each key is a flag name without the leading dashes. The pairs are inserted
//! right after the subcommand, so anything given on the command line comes
//! later and overrides them.

use std::ffi::OsString;
use std::path::PathBuf;

use crate::CliError;

/// Flags that take no value; `true`/`yes`/`1` turns them on.
const SWITCHES: [&str; 3] = ["table", "with-minimizer", "inject-failure"];

pub fn parse_config(text: &str) -> Result<Vec<(String, String)>, CliError> {
    let mut pairs = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| CliError::Input(format!("config line {}: expected key = value", no + 1)))?;
        let key = k.trim().replace('_', "-");
        if key.is_empty() || key == "config" {
            return Err(CliError::Input(format!("config line {}: bad key `{}`", no + 1, k.trim())));
        }
        pairs.push((key, v.trim().to_string()));
    }
    Ok(pairs)
}

fn config_path(args: &[OsString]) -> Option<PathBuf> {
    let mut it = args.iter();
    while let Some(a) = it.next() {
        let s = a.to_string_lossy();
        if s == "--config" {
            return it.next().map(PathBuf::from);
        }
        if let Some(p) = s.strip_prefix("--config=") {
            return Some(PathBuf::from(p));
        }
    }
    None
}

pub fn merge_config(args: Vec<OsString>) -> Result<Vec<OsString>, CliError> {
    let Some(path) = config_path(&args) else {
        return Ok(args);
    };
    let text = std::fs::read_to_string(&path).map_err(|e| CliError::io(&path, e))?;
    let mut extra: Vec<OsString> = Vec::new();
    for (k, v) in parse_config(&text)? {
        if SWITCHES.contains(&k.as_str()) {
            if matches!(v.as_str(), "true" | "yes" | "1") {
                extra.push(format!("--{k}").into());
            }
        } else {
            extra.push(format!("--{k}={v}").into());
        }
    }
    // first positional after the program name is the subcommand
    let sub = args
        .iter()
        .enumerate()
        .skip(1)
        .scan(false, |skip_next, (i, a)| {
            let s = a.to_string_lossy();
            let res = if *skip_next {
                *skip_next = false;
                Some(None)
            } else if s == "--config" {
                *skip_next = true;
                Some(None)
            } else if s.starts_with('-') {
                Some(None)
            } else {
                Some(Some(i))
            };
            res
        })
        .flatten()
        .next();
    let Some(at) = sub else {
        return Ok(args);
    };
    let mut merged = args[..=at].to_vec();
    merged.extend(extra);
    merged.extend_from_slice(&args[at + 1..]);
    Ok(merged)
}
