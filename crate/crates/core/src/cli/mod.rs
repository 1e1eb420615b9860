//! Command-line plumbing: the insertion parser, flat config files, the
//! request/report types and the dispatcher behind the `quotvi` binary.

mod parse;
mod report;
mod request;
mod run;

pub use parse::parse_polynomial;
pub use report::{
    Check, ComputationReport, ErrorBody, ErrorReport, LocusRow, ProblemEcho, RequestEcho, SCHEMA_VERSION,
};
pub use request::{Command, Format, RunRequest, Settings};
pub use run::run;

use serde::Serializer;

use crate::error::{Error, Result};
use crate::exactnum::Rational;

/// Rationals as `"num/den"` strings (`"num"` when integral), never as floats.
pub fn serialize_rational<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

/// A rendered report or error, ready for the binary to emit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rendered {
    pub text: String,
    /// Destination file; stdout (or stderr for errors) when absent.
    pub out: Option<std::path::PathBuf>,
    pub exit_code: i32,
    pub is_error: bool,
}

/// Merges an optional config file under `flags`, runs the request and
/// renders the outcome.
pub fn execute(config: Option<&str>, flags: Settings) -> Rendered {
    let fallback_json = flags.format.as_deref().map(|f| f.parse() == Ok(Format::Json)).unwrap_or(false);
    let req = match load(config).map(|base| base.overlay(flags)).and_then(Settings::into_request) {
        Ok(req) => req,
        Err(e) => return render_error(&e, fallback_json, None),
    };
    let json = req.format == Format::Json;
    match run(&req) {
        Ok(rep) => Rendered {
            text: if json { rep.to_json() } else { rep.to_human() },
            out: req.out.clone(),
            exit_code: rep.exit_code(),
            is_error: false,
        },
        Err(e) => render_error(&e, json, req.out.clone()),
    }
}

fn load(config: Option<&str>) -> Result<Settings> {
    match config {
        None => Ok(Settings::default()),
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{path}: {e}")))?;
            Settings::from_config_text(&text)
        }
    }
}

fn render_error(e: &Error, json: bool, out: Option<std::path::PathBuf>) -> Rendered {
    let rep = ErrorReport::new(e);
    Rendered {
        text: if json { rep.to_json() } else { rep.to_human() },
        out,
        exit_code: e.exit_code(),
        is_error: true,
    }
}
