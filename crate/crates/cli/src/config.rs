//! Run settings shared by the subcommands. A config file uses the flag grammar itself:
//! `--name value` pairs separated by whitespace or newlines, with `#` comments.

use std::fmt;
use std::str::FromStr;

use dioph_core::arith::DEFAULT_MAX_BITS;
use dioph_core::{Error, Result};

pub const MAX_BITS_ENV: &str = "DIOPH_MAX_BITS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Emit {
    Jsonl,
    Csv,
    Pretty,
}

impl Emit {
    fn name(self) -> &'static str {
        match self {
            Emit::Jsonl => "jsonl",
            Emit::Csv => "csv",
            Emit::Pretty => "pretty",
        }
    }
}

impl FromStr for Emit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Emit> {
        match s {
            "jsonl" => Ok(Emit::Jsonl),
            "csv" => Ok(Emit::Csv),
            "pretty" => Ok(Emit::Pretty),
            _ => Err(Error::Parse(format!("unknown emit format {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub xi: Option<String>,
    pub n: Option<usize>,
    pub xmax: Option<u64>,
    pub max_bits: u32,
    pub emit: Emit,
    pub seed: u64,
    pub shards: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            xi: None,
            n: None,
            xmax: None,
            max_bits: DEFAULT_MAX_BITS,
            emit: Emit::Jsonl,
            seed: 0,
            shards: 1,
        }
    }
}

fn value<T: FromStr>(key: &str, v: &str) -> Result<T> {
    v.parse()
        .map_err(|_| Error::Parse(format!("bad value {v:?} for --{key}")))
}

/// A non-negative integer, also written as `<mantissa>e<exponent>` (`1e6`, `25e3`).
pub fn parse_count(s: &str) -> Result<u64> {
    let bad = || Error::Parse(format!("bad count {s:?}"));
    match s.split_once(['e', 'E']) {
        None => s.parse().map_err(|_| bad()),
        Some((m, e)) => {
            let m: u64 = m.parse().map_err(|_| bad())?;
            let e: u32 = e.parse().map_err(|_| bad())?;
            10u64
                .checked_pow(e)
                .and_then(|p| p.checked_mul(m))
                .ok_or_else(bad)
        }
    }
}

impl RunConfig {
    /// Defaults, with `max_bits` taken from the environment when set.
    pub fn from_env() -> Result<RunConfig> {
        let mut c = RunConfig::default();
        if let Ok(v) = std::env::var(MAX_BITS_ENV) {
            c.max_bits = value(MAX_BITS_ENV, v.trim())?;
        }
        Ok(c)
    }

    /// Apply the settings in `text` on top of `self`.
    pub fn merge_text(mut self, text: &str) -> Result<RunConfig> {
        let tokens: Vec<&str> = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or(""))
            .flat_map(str::split_whitespace)
            .collect();
        let mut it = tokens.into_iter();
        while let Some(flag) = it.next() {
            let key = flag
                .strip_prefix("--")
                .ok_or_else(|| Error::Parse(format!("expected --name, got {flag:?}")))?;
            let v = it
                .next()
                .ok_or_else(|| Error::Parse(format!("--{key} needs a value")))?;
            match key {
                "xi" => self.xi = Some(v.to_string()),
                "n" => self.n = Some(value(key, v)?),
                "xmax" => self.xmax = Some(parse_count(v)?),
                "max-bits" => self.max_bits = value(key, v)?,
                "emit" => self.emit = v.parse()?,
                "seed" => self.seed = value(key, v)?,
                "shards" => self.shards = value(key, v)?,
                _ => return Err(Error::Parse(format!("unknown setting --{key}"))),
            }
        }
        if self.shards == 0 {
            return Err(Error::InvalidArgument("--shards must be at least 1".into()));
        }
        Ok(self)
    }
}

impl FromStr for RunConfig {
    type Err = Error;

    fn from_str(s: &str) -> Result<RunConfig> {
        RunConfig::default().merge_text(s)
    }
}

impl fmt::Display for RunConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(xi) = &self.xi {
            writeln!(f, "--xi {xi}")?;
        }
        if let Some(n) = self.n {
            writeln!(f, "--n {n}")?;
        }
        if let Some(x) = self.xmax {
            writeln!(f, "--xmax {x}")?;
        }
        writeln!(f, "--max-bits {}", self.max_bits)?;
        writeln!(f, "--emit {}", self.emit.name())?;
        writeln!(f, "--seed {}", self.seed)?;
        writeln!(f, "--shards {}", self.shards)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_through_text() {
        let c = RunConfig {
            xi: Some("alg:-2,0,1:1,2".into()),
            n: Some(3),
            xmax: Some(1000),
            max_bits: 2048,
            emit: Emit::Csv,
            seed: 17,
            shards: 4,
        };
        assert_eq!(c.to_string().parse::<RunConfig>().unwrap(), c);
        let d = RunConfig::default();
        assert_eq!(d.to_string().parse::<RunConfig>().unwrap(), d);
    }

    #[test]
    fn comments_and_layout_are_free() {
        let c: RunConfig = "# demo\n--n 2 --xmax 30  # inline\n\n--emit pretty".parse().unwrap();
        assert_eq!((c.n, c.xmax, c.emit), (Some(2), Some(30), Emit::Pretty));
        assert_eq!(c.max_bits, DEFAULT_MAX_BITS);
    }

    #[test]
    fn counts_take_exponents() {
        assert_eq!(parse_count("1e8").unwrap(), 100_000_000);
        assert_eq!(parse_count("25E3").unwrap(), 25_000);
        assert_eq!(parse_count("51").unwrap(), 51);
        for bad in ["1.5e3", "e3", "1e", "-1", "1e30"] {
            assert!(parse_count(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn rejects_garbage() {
        assert!("--n".parse::<RunConfig>().is_err());
        assert!("n 2".parse::<RunConfig>().is_err());
        assert!("--colour red".parse::<RunConfig>().is_err());
        assert!("--shards 0".parse::<RunConfig>().is_err());
    }
}
