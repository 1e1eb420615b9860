use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::localization::{Backend, EngineConfig, QuotProblem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Vi,
    Localize,
    Bees,
    Fl,
    Verify,
    Pontrjagin,
    ShiftCheck,
}

impl Command {
    pub const ALL: [Command; 7] = [
        Command::Vi,
        Command::Localize,
        Command::Bees,
        Command::Fl,
        Command::Verify,
        Command::Pontrjagin,
        Command::ShiftCheck,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Command::Vi => "vi",
            Command::Localize => "localize",
            Command::Bees => "bees",
            Command::Fl => "fl",
            Command::Verify => "verify",
            Command::Pontrjagin => "pontrjagin",
            Command::ShiftCheck => "shift-check",
        }
    }

    fn needs_problem(&self) -> bool {
        *self != Command::Verify
    }

    fn needs_insertion(&self) -> bool {
        !matches!(self, Command::Verify | Command::Pontrjagin)
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Command::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::Config(format!("unknown command '{s}'")))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Human,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "human" | "table" => Ok(Format::Human),
            "json" | "structured" => Ok(Format::Json),
            other => Err(Error::Config(format!("unknown format '{other}'"))),
        }
    }
}

/// Loosely typed settings gathered from a config file or command-line flags.
/// Every field is optional so that two layers can be merged before validation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Settings {
    pub command: Option<String>,
    pub r: Option<String>,
    pub n: Option<String>,
    pub g: Option<String>,
    pub d: Option<String>,
    pub insertion: Option<String>,
    pub h: Option<String>,
    pub breakdown: Option<String>,
    pub backend: Option<String>,
    pub s: Option<String>,
    pub l: Option<String>,
    pub workers: Option<String>,
    pub format: Option<String>,
    pub out: Option<String>,
    pub timings: Option<String>,
}

impl Settings {
    fn slot(&mut self, key: &str) -> Option<&mut Option<String>> {
        Some(match key {
            "command" => &mut self.command,
            "r" => &mut self.r,
            "N" => &mut self.n,
            "g" => &mut self.g,
            "d" => &mut self.d,
            "insertion" => &mut self.insertion,
            "h" => &mut self.h,
            "breakdown" => &mut self.breakdown,
            "backend" => &mut self.backend,
            "s" => &mut self.s,
            "l" => &mut self.l,
            "workers" => &mut self.workers,
            "format" => &mut self.format,
            "out" => &mut self.out,
            "timings" => &mut self.timings,
            _ => return None,
        })
    }

    /// Parses flat `key = value` text. Blank lines and lines starting with `#`
    /// are skipped; unknown or repeated keys are errors.
    pub fn from_config_text(text: &str) -> Result<Self> {
        let mut out = Settings::default();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key = value", no + 1)))?;
            let key = key.trim();
            let slot = out
                .slot(key)
                .ok_or_else(|| Error::Config(format!("line {}: unknown key '{key}'", no + 1)))?;
            if slot.is_some() {
                return Err(Error::Config(format!("line {}: key '{key}' repeated", no + 1)));
            }
            *slot = Some(value.trim().to_string());
        }
        Ok(out)
    }

    /// `self` with every value present in `over` replaced.
    pub fn overlay(mut self, over: Settings) -> Settings {
        let Settings {
            command,
            r,
            n,
            g,
            d,
            insertion,
            h,
            breakdown,
            backend,
            s,
            l,
            workers,
            format,
            out,
            timings,
        } = over;
        let pairs = [
            ("command", command),
            ("r", r),
            ("N", n),
            ("g", g),
            ("d", d),
            ("insertion", insertion),
            ("h", h),
            ("breakdown", breakdown),
            ("backend", backend),
            ("s", s),
            ("l", l),
            ("workers", workers),
            ("format", format),
            ("out", out),
            ("timings", timings),
        ];
        for (key, value) in pairs {
            if value.is_some() {
                *self.slot(key).expect("known key") = value;
            }
        }
        self
    }

    pub fn into_request(self) -> Result<RunRequest> {
        let command: Command = self
            .command
            .as_deref()
            .ok_or_else(|| Error::Config("no command given".into()))?
            .parse()?;
        let problem = match (&self.r, &self.n, &self.g, &self.d) {
            (None, None, None, None) => None,
            (Some(r), Some(n), Some(g), Some(d)) => Some(QuotProblem::new(
                number("r", r)?,
                number("N", n)?,
                number("g", g)?,
                number("d", d)?,
            )?),
            _ => return Err(Error::Config("a problem needs all of r, N, g and d".into())),
        };
        let h: Rational = match &self.h {
            Some(text) => text
                .parse()
                .map_err(|_| Error::Config(format!("h = '{text}' is not a rational number")))?,
            None => Rational::from_integer(1.into()),
        };
        let backend: Backend = self.backend.as_deref().unwrap_or("exact").parse()?;
        let workers = self.workers.as_deref().map(|w| number("workers", w)).transpose()?.unwrap_or(1);
        let req = RunRequest {
            command,
            problem,
            insertion: self.insertion,
            config: EngineConfig::new(h, backend, workers)?,
            breakdown: flag("breakdown", self.breakdown.as_deref())?,
            s: self.s.as_deref().map(|v| number("s", v)).transpose()?,
            l: self.l.as_deref().map(|v| number("l", v)).transpose()?,
            timings: flag("timings", self.timings.as_deref())?,
            format: self.format.as_deref().unwrap_or("human").parse()?,
            out: self.out.map(PathBuf::from),
        };
        req.validate()?;
        Ok(req)
    }
}

fn number(key: &str, text: &str) -> Result<usize> {
    text.parse()
        .map_err(|_| Error::Config(format!("{key} = '{text}' is not a nonnegative integer")))
}

fn flag(key: &str, text: Option<&str>) -> Result<bool> {
    match text {
        None | Some("false") | Some("no") | Some("0") => Ok(false),
        Some("true") | Some("yes") | Some("1") => Ok(true),
        Some(other) => Err(Error::Config(format!("{key} = '{other}' is not a boolean"))),
    }
}

/// A validated request. For `bees` and `fl`, `insertion` is the pure
/// `a`-class factor `P`; the odd pairs or `f_l` are implied by `s` or `l`.
#[derive(Clone, Debug, PartialEq)]
pub struct RunRequest {
    pub command: Command,
    pub problem: Option<QuotProblem>,
    pub insertion: Option<String>,
    pub config: EngineConfig,
    pub breakdown: bool,
    pub s: Option<usize>,
    pub l: Option<usize>,
    pub timings: bool,
    pub format: Format,
    pub out: Option<PathBuf>,
}

impl RunRequest {
    pub fn new(command: Command) -> Self {
        RunRequest {
            command,
            problem: None,
            insertion: None,
            config: EngineConfig::default(),
            breakdown: false,
            s: None,
            l: None,
            timings: false,
            format: Format::Human,
            out: None,
        }
    }

    pub fn with_problem(mut self, p: QuotProblem, insertion: &str) -> Self {
        self.problem = Some(p);
        self.insertion = Some(insertion.to_string());
        self
    }

    /// Command-specific completeness.
    pub fn validate(&self) -> Result<()> {
        let c = self.command;
        if c.needs_problem() && self.problem.is_none() {
            return Err(Error::Config(format!("{c} needs r, N, g and d")));
        }
        if c.needs_insertion() && self.insertion.is_none() {
            return Err(Error::Config(format!("{c} needs an insertion")));
        }
        if c == Command::Bees && self.s.is_none() {
            return Err(Error::Config("bees needs s".into()));
        }
        if c == Command::Fl && self.l.is_none() {
            return Err(Error::Config("fl needs l".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_then_flags() {
        let file = "# sample\ncommand = localize\nr=2\nN = 4\ng=0\nd=1\ninsertion = a1^8\nbreakdown = true\n";
        let base = Settings::from_config_text(file).unwrap();
        let flags = Settings {
            h: Some("2".into()),
            d: Some("1".into()),
            ..Settings::default()
        };
        let req = base.overlay(flags).into_request().unwrap();
        assert_eq!(req.command, Command::Localize);
        assert_eq!(req.problem, Some(QuotProblem::new(2, 4, 0, 1).unwrap()));
        assert_eq!(req.config.h(), &Rational::from_integer(2.into()));
        assert!(req.breakdown);
    }

    #[test]
    fn bad_config_lines() {
        assert!(matches!(Settings::from_config_text("r 2"), Err(Error::Config(_))));
        assert!(matches!(Settings::from_config_text("q = 2"), Err(Error::Config(_))));
        assert!(matches!(Settings::from_config_text("r=1\nr=2"), Err(Error::Config(_))));
    }

    #[test]
    fn completeness() {
        let s = |kv: &str| Settings::from_config_text(kv).unwrap().into_request();
        assert!(s("command = verify").is_ok());
        assert!(s("command = vi\nr=1\nN=2\ng=0\nd=1").is_err());
        assert!(s("command = bees\nr=1\nN=2\ng=1\nd=1\ninsertion=a1").is_err());
        assert!(s("command = vi\nr=1\nN=2").is_err());
        assert!(s("command = verify\nh = 0").is_err());
        assert!(s("command = nope").is_err());
    }
}
