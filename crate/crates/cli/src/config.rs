//! `--config` files: `key = value` lines merged into the argument list.

use std::collections::HashSet;
use std::ffi::OsString;
use std::path::Path;

use clap::CommandFactory;

use crate::args::Cli;
use crate::Failure;

/// Options where giving one on the command line rules out the others.
const EXCLUSIVE: &[&[&str]] = &[&["c", "p"]];

/// Parses config text into `(key, value)` pairs. Blank lines and lines
/// starting with `#` are skipped; keys may be written with `_` or `-`.
pub fn parse(text: &str) -> Result<Vec<(String, String)>, String> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("line {}: expected `key = value`", i + 1))?;
        let key = key.trim().trim_start_matches("--").replace('_', "-");
        if key.is_empty() {
            return Err(format!("line {}: missing key", i + 1));
        }
        out.push((key, value.trim().to_string()));
    }
    Ok(out)
}

/// Returns `argv` with entries from the `--config` file (if any) appended as
/// flags, skipping every key already given on the command line. Keys that
/// no subcommand knows are an error; keys known elsewhere but not to the
/// chosen subcommand are ignored so that one file can serve several
/// subcommands.
pub fn merge(argv: Vec<OsString>) -> Result<Vec<OsString>, Failure> {
    let words: Vec<String> = argv
        .iter()
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    let Some(path) = config_path(&words) else {
        return Ok(argv);
    };
    let text = std::fs::read_to_string(&path)
        .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    let entries = parse(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;

    let mut cmd = Cli::command();
    cmd.build();
    let longs = |c: &clap::Command| -> HashSet<String> {
        c.get_arguments()
            .filter_map(|a| a.get_long())
            .map(str::to_string)
            .collect()
    };
    let known: HashSet<String> = cmd
        .get_subcommands()
        .flat_map(&longs)
        .chain(longs(&cmd))
        .collect();
    let chosen = words
        .iter()
        .skip(1)
        .find_map(|w| cmd.find_subcommand(w))
        .map(&longs)
        .unwrap_or_else(|| longs(&cmd));

    let given: HashSet<&str> = words
        .iter()
        .filter_map(|w| w.strip_prefix("--"))
        .map(|w| w.split_once('=').map_or(w, |(k, _)| k))
        .collect();
    let blocked = |key: &str| {
        given.contains(key)
            || EXCLUSIVE
                .iter()
                .any(|group| group.contains(&key) && group.iter().any(|k| given.contains(k)))
    };

    let mut out = argv;
    for (key, value) in entries {
        if key == "config" {
            return Err(Failure::Usage(format!(
                "{}: config files cannot nest",
                path.display()
            )));
        }
        if !known.contains(&key) {
            return Err(Failure::Usage(format!(
                "{}: unknown key `{key}`",
                path.display()
            )));
        }
        if !chosen.contains(&key) || blocked(&key) {
            continue;
        }
        match value.as_str() {
            "true" => out.push(format!("--{key}").into()),
            "false" => {}
            _ => out.push(format!("--{key}={value}").into()),
        }
    }
    Ok(out)
}

fn config_path(words: &[String]) -> Option<std::path::PathBuf> {
    let mut it = words.iter().skip(1);
    while let Some(w) = it.next() {
        if w == "--" {
            break;
        }
        if w == "--config" {
            return it.next().map(|p| Path::new(p).to_path_buf());
        }
        if let Some(p) = w.strip_prefix("--config=") {
            return Some(p.into());
        }
    }
    None
}
