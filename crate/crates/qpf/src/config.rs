//! Optional `key=value` defaults file, one pair per line, `#` comments.
//!
//! Each pair becomes `--key value` inserted right after the subcommand name,
//! ahead of the user's own flags, so flags given on the command line win.
//! A value of `true` for a switch such as `invert` or `all` inserts the bare
//! switch; `false` inserts nothing.

use std::fs;
use std::path::Path;

use crate::error::{AppError, AppResult};

const SWITCHES: &[&str] = &["invert", "all", "table"];

pub fn parse(text: &str) -> AppResult<Vec<(String, String)>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split_once('#').map_or(raw, |(a, _)| a).trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| AppError::Usage(format!("config line {}: expected key=value", i + 1)))?;
        let (k, v) = (k.trim(), v.trim());
        if k.is_empty() || k.starts_with('-') {
            return Err(AppError::Usage(format!("config line {}: bad key {k:?}", i + 1)));
        }
        out.push((k.to_owned(), v.to_owned()));
    }
    Ok(out)
}

fn to_flags(pairs: &[(String, String)]) -> AppResult<Vec<String>> {
    let mut flags = Vec::new();
    for (k, v) in pairs {
        if SWITCHES.contains(&k.as_str()) {
            match v.as_str() {
                "true" => flags.push(format!("--{k}")),
                "false" => {}
                _ => return Err(AppError::Usage(format!("config: {k} must be true or false"))),
            }
        } else {
            flags.push(format!("--{k}"));
            flags.extend(v.split_whitespace().map(str::to_owned));
        }
    }
    Ok(flags)
}

/// Removes `--config PATH` from `argv` and splices the file's flags in after
/// the first of `subcommands` found.
pub fn expand(argv: &[String], subcommands: &[&str]) -> AppResult<Vec<String>> {
    let mut rest = Vec::with_capacity(argv.len());
    let mut path = None;
    let mut it = argv.iter();
    while let Some(a) = it.next() {
        if a == "--config" {
            let p = it.next().ok_or_else(|| AppError::Usage("--config needs a path".into()))?;
            path = Some(p.clone());
        } else if let Some(p) = a.strip_prefix("--config=") {
            path = Some(p.to_owned());
        } else {
            rest.push(a.clone());
        }
    }
    let Some(path) = path else { return Ok(rest) };
    let text = fs::read_to_string(&path).map_err(AppError::io(Path::new(&path)))?;
    let flags = to_flags(&parse(&text)?)?;
    let at = rest
        .iter()
        .position(|a| subcommands.contains(&a.as_str()))
        .ok_or_else(|| AppError::Usage("--config given without a subcommand".into()))?;
    rest.splice(at + 1..at + 1, flags);
    Ok(rest)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strings(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn parses_pairs_and_comments() {
        let pairs = parse("# defaults\nL = 4\n\nsigma=0.1 # radians\n").unwrap();
        assert_eq!(pairs, vec![("L".into(), "4".into()), ("sigma".into(), "0.1".into())]);
        assert!(parse("nonsense").is_err());
    }

    #[test]
    fn splices_after_subcommand() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = dir.path().join("c.conf");
        fs::write(&cfg, "L=4\ninvert=true\nall=false\ndmax-list=1,2\n").unwrap();
        let argv = strings(&["qpf", "--threads", "2", "--config", cfg.to_str().unwrap(), "lmax", "--L", "9"]);
        let out = expand(&argv, &["lmax"]).unwrap();
        assert_eq!(out, strings(&["qpf", "--threads", "2", "lmax", "--L", "4", "--invert", "--dmax-list", "1,2", "--L", "9"]));
        assert_eq!(expand(&strings(&["qpf", "cf", "1", "2"]), &["cf"]).unwrap(), strings(&["qpf", "cf", "1", "2"]));
    }
}
