use std::ffi::OsString;
use std::fs;

use crate::error::{Error, Result};

const BOOLEAN_KEYS: &[&str] = &["canonical", "verify"];

/// Splices `--key value` pairs from a `--config FILE` right after the
/// subcommand, so that later command-line flags override them.
pub(super) fn merge_config_file(args: Vec<OsString>) -> Result<Vec<OsString>> {
    let Some(path) = find_config_path(&args) else {
        return Ok(args);
    };
    let text = fs::read_to_string(&path)
        .map_err(|e| Error::InvalidParams(format!("cannot read config {path}: {e}")))?;
    let from_file = parse_config(&text)?;

    // args[0] is the program, args[1] the subcommand.
    let split = args.len().min(2);
    let mut merged: Vec<OsString> = args[..split].to_vec();
    merged.extend(from_file.into_iter().map(OsString::from));
    merged.extend_from_slice(&args[split..]);
    Ok(merged)
}

fn find_config_path(args: &[OsString]) -> Option<String> {
    let mut it = args.iter().map(|a| a.to_string_lossy().into_owned());
    while let Some(a) = it.next() {
        if a == "--config" {
            return it.next();
        }
        if let Some(v) = a.strip_prefix("--config=") {
            return Some(v.to_string());
        }
    }
    None
}

/// `key = value` or `key value` per line; `#` starts a comment.
pub(super) fn parse_config(text: &str) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = match line.split_once('=') {
            Some((k, v)) => (k.trim(), v.trim()),
            None => match line.split_once(char::is_whitespace) {
                Some((k, v)) => (k.trim(), v.trim()),
                None => (line, ""),
            },
        };
        let key = key.trim_start_matches("--").replace('_', "-");
        if key.is_empty() || key == "config" {
            return Err(Error::InvalidParams(format!(
                "config line {}: invalid key",
                lineno + 1
            )));
        }
        if BOOLEAN_KEYS.contains(&key.as_str()) {
            match value {
                "" | "true" | "yes" | "1" => out.push(format!("--{key}")),
                "false" | "no" | "0" => {}
                other => {
                    return Err(Error::InvalidParams(format!(
                        "config line {}: {key} expects a boolean, got {other:?}",
                        lineno + 1
                    )))
                }
            }
        } else {
            out.push(format!("--{key}"));
            out.push(value.to_string());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_flat_pairs() {
        let text = "# campaign\nk-max = 4\nmod 2,3\ncanonical = true\nverify = false\ncap_exact=10\n";
        assert_eq!(
            parse_config(text).unwrap(),
            vec!["--k-max", "4", "--mod", "2,3", "--canonical", "--cap-exact", "10"]
        );
    }

    #[test]
    fn rejects_bad_boolean() {
        assert!(parse_config("canonical = maybe").is_err());
        assert!(parse_config("= 3").is_err());
    }
}
