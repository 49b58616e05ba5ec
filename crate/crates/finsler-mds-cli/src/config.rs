//! Flat key=value configuration files.
//!
//! Every command-line flag has a config key of the same name with dashes
//! replaced by underscores; a flag given on the command line overrides the
//! config entry. Lines are `key = value`, blank, or `#` comments.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{CliError, CliResult, EXIT_IO};

#[derive(Debug)]
struct Entry {
    line: usize,
    value: String,
    used: bool,
}

/// A parsed config file, or an empty stand-in when no file was given.
/// Typed lookups mark their key as used; [`ConfigFile::finish`] rejects
/// whatever remains, so misspelled keys fail loudly with their line.
#[derive(Debug)]
pub struct ConfigFile {
    path: String,
    entries: BTreeMap<String, Entry>,
}

impl ConfigFile {
    pub fn empty() -> Self {
        ConfigFile {
            path: String::new(),
            entries: BTreeMap::new(),
        }
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError {
            code: EXIT_IO,
            message: format!("cannot read config {}: {e}", path.display()),
        })?;
        Self::parse(&path.display().to_string(), &text)
    }

    pub fn load_opt(path: Option<&PathBuf>) -> CliResult<Self> {
        match path {
            Some(p) => Self::load(p),
            None => Ok(Self::empty()),
        }
    }

    fn parse(path: &str, text: &str) -> CliResult<Self> {
        let mut entries = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content.split_once('=').ok_or_else(|| {
                CliError::usage(format!("{path}:{line}: expected `key = value`, found {raw:?}"))
            })?;
            let key = key.trim().to_string();
            if key.is_empty() {
                return Err(CliError::usage(format!("{path}:{line}: empty key")));
            }
            if entries.contains_key(&key) {
                return Err(CliError::usage(format!(
                    "{path}:{line}: duplicate key {key}"
                )));
            }
            entries.insert(
                key,
                Entry {
                    line,
                    value: value.trim().to_string(),
                    used: false,
                },
            );
        }
        Ok(ConfigFile {
            path: path.to_string(),
            entries,
        })
    }

    /// Whether the file sets `key`, used or not.
    pub fn has(&self, key: &str) -> bool {
        self.entries.contains_key(key)
    }

    fn take(&mut self, key: &str) -> Option<(usize, String)> {
        self.entries.get_mut(key).map(|e| {
            e.used = true;
            (e.line, e.value.clone())
        })
    }

    /// Flag wins over config; then the default, if any.
    pub fn resolve<T>(&mut self, flag: Option<T>, key: &str, default: Option<T>) -> CliResult<T>
    where
        T: FromStr,
        T::Err: Display,
    {
        if let Some(v) = flag {
            self.take(key);
            return Ok(v);
        }
        if let Some((line, value)) = self.take(key) {
            return value.parse::<T>().map_err(|e| {
                CliError::usage(format!(
                    "{}:{line}: bad value {value:?} for {key}: {e}",
                    self.path
                ))
            });
        }
        default.ok_or_else(|| CliError::usage(format!("missing required setting `{key}`")))
    }

    /// As [`resolve`](Self::resolve), but absence is not an error.
    pub fn resolve_opt<T>(&mut self, flag: Option<T>, key: &str) -> CliResult<Option<T>>
    where
        T: FromStr,
        T::Err: Display,
    {
        match self.resolve(flag, key, None) {
            Ok(v) => Ok(Some(v)),
            Err(e) if e.message.starts_with("missing required") => Ok(None),
            Err(e) => Err(e),
        }
    }

    pub fn resolve_flag(&mut self, flag: bool, key: &str) -> CliResult<bool> {
        if flag {
            self.take(key);
            return Ok(true);
        }
        self.resolve(None, key, Some(false))
    }

    /// Rejects any key no lookup asked for.
    pub fn finish(self) -> CliResult<()> {
        let mut unused: Vec<&String> = self
            .entries
            .iter()
            .filter(|(_, e)| !e.used)
            .map(|(k, _)| k)
            .collect();
        unused.sort();
        if let Some(first) = unused.first() {
            let line = self.entries[*first].line;
            return Err(CliError::usage(format!(
                "{}:{line}: unrecognized key {first}",
                self.path
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_blanks_and_overrides() {
        let mut cfg = ConfigFile::parse(
            "test.cfg",
            "# a comment\nn = 40\nalpha = 0.5 # trailing\n\nkind=tree\n",
        )
        .unwrap();
        assert_eq!(cfg.resolve(Some(7usize), "n", None).unwrap(), 7);
        assert_eq!(cfg.resolve::<f64>(None, "alpha", None).unwrap(), 0.5);
        assert_eq!(
            cfg.resolve::<String>(None, "kind", None).unwrap(),
            "tree".to_string()
        );
        cfg.finish().unwrap();
    }

    #[test]
    fn unknown_key_is_reported_with_its_line() {
        let cfg = ConfigFile::parse("test.cfg", "n = 40\nmystery = 1\n").unwrap();
        let err = cfg.finish().unwrap_err();
        assert_eq!(err.code, 2);
        assert!(err.message.contains("test.cfg:2"), "{}", err.message);
        assert!(err.message.contains("mystery"));
    }

    #[test]
    fn bad_value_and_missing_key_fail() {
        let mut cfg = ConfigFile::parse("test.cfg", "n = not-a-number\n").unwrap();
        let err = cfg.resolve::<usize>(None, "n", None).unwrap_err();
        assert!(err.message.contains("test.cfg:1"));
        let err = ConfigFile::empty()
            .resolve::<usize>(None, "n", None)
            .unwrap_err();
        assert!(err.message.contains("missing required setting `n`"));
    }

    #[test]
    fn malformed_line_is_rejected() {
        let err = ConfigFile::parse("c", "just words\n").unwrap_err();
        assert_eq!(err.code, 2);
        assert!(err.message.contains("c:1"));
    }
}
