use std::collections::BTreeMap;
use std::time::Instant;

use crate::closedform::{bees_evaluate, degree_shift_values, fl_evaluate, pontrjagin_report, vi_evaluate};
use crate::error::{Error, Result};
use crate::exactnum::{int, Rational};
use crate::identities::{run_all, IdentityBounds};
use crate::localization::{
    evaluate_approx, Backend, EngineConfig, InsertionPolynomial, LocalizationEngine, QuotProblem,
};

use super::parse::parse_polynomial;
use super::report::{Check, ComputationReport, LocusRow, ProblemEcho, RequestEcho, SCHEMA_VERSION};
use super::request::{Command, RunRequest};

struct Timer {
    enabled: bool,
    phases: BTreeMap<String, String>,
}

impl Timer {
    fn time<T>(&mut self, phase: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        if self.enabled {
            let ms = start.elapsed().as_secs_f64() * 1e3;
            self.phases.insert(phase.to_string(), format!("{ms:.3}"));
        }
        out
    }
}

fn check(name: &str, passed: bool, detail: impl Into<String>) -> Check {
    Check {
        name: name.into(),
        passed,
        detail: detail.into(),
    }
}

fn integrality(value: &Rational) -> Check {
    check(
        "integrality",
        value.is_integer(),
        format!("denominator {}", value.denom()),
    )
}

/// Everything a command handler fills in.
#[derive(Default)]
struct Outcome {
    result: String,
    exact: bool,
    h_values: Vec<Rational>,
    checks: Vec<Check>,
    details: BTreeMap<String, String>,
    breakdown: Option<Vec<LocusRow>>,
    notes: Vec<String>,
}

impl Outcome {
    fn exact(result: &Rational) -> Self {
        Outcome {
            result: result.to_string(),
            exact: true,
            ..Outcome::default()
        }
    }
}

fn odd_pairs(s: usize, g: usize) -> InsertionPolynomial {
    (1..=s).fold(InsertionPolynomial::one(), |acc, j| {
        acc.mul(&InsertionPolynomial::b(1, j)).mul(&InsertionPolynomial::b(1, j + g))
    })
}

/// `h` values for a localize run: the configured one, then `1` and `2`.
fn h_schedule(cfg: &EngineConfig) -> Vec<Rational> {
    let mut hs = vec![cfg.h().clone()];
    for h in [int(1), int(2)] {
        if !hs.contains(&h) {
            hs.push(h);
        }
    }
    hs
}

fn localize(p: &QuotProblem, m: &InsertionPolynomial, req: &RunRequest, timer: &mut Timer) -> Result<Outcome> {
    let cfg = &req.config;
    if cfg.backend == Backend::Floating {
        let z = timer.time("localize", || evaluate_approx(p, m, cfg))?;
        let mut out = Outcome {
            result: format!("{:.6}", z.re),
            exact: false,
            h_values: vec![cfg.h().clone()],
            ..Outcome::default()
        };
        out.notes.push(format!(
            "floating backend: value is approximate (imaginary part {:.3e}); integrality is not certified",
            z.im
        ));
        return Ok(out);
    }

    let hs = h_schedule(cfg);
    let mut values = Vec::with_capacity(hs.len());
    let mut first_breakdown = None;
    for (k, h) in hs.iter().enumerate() {
        let run_cfg = EngineConfig::new(h.clone(), Backend::Exact, cfg.workers)?;
        let engine = timer.time(&format!("setup h={h}"), || LocalizationEngine::exact(p, &run_cfg))?;
        if k == 0 && req.breakdown {
            let b = timer.time(&format!("evaluate h={h}"), || engine.breakdown(m))?;
            values.push(b.total.clone());
            first_breakdown = Some(b);
        } else {
            values.push(timer.time(&format!("evaluate h={h}"), || engine.evaluate(m))?);
        }
    }
    let value = values[0].clone();
    let mut out = Outcome::exact(&value);
    let agree = values.iter().all(|v| *v == value);
    let listing: Vec<String> = hs.iter().zip(&values).map(|(h, v)| format!("h={h}: {v}")).collect();
    out.checks.push(check("h-invariance", agree, listing.join("; ")));
    out.checks.push(integrality(&value));
    if let Some(b) = first_breakdown {
        let rows: Vec<LocusRow> = b
            .loci
            .iter()
            .map(|c| LocusRow {
                subset: c.locus.subset.iter().map(|k| k.to_string()).collect(),
                composition: c.locus.splitting.iter().map(|k| k.to_string()).collect(),
                contribution: c.value.to_string(),
            })
            .collect();
        out.checks.push(check(
            "breakdown-sum",
            b.total == value,
            format!("{} loci sum to {}", rows.len(), b.total),
        ));
        out.breakdown = Some(rows);
    }
    if m.is_pure_a() {
        let closed = timer.time("closed form", || vi_evaluate(p, m))?;
        out.checks.push(check("closed-form", closed == value, format!("closed form gives {closed}")));
    }
    out.h_values = hs;
    Ok(out)
}

fn oracle(
    name: &str,
    p: &QuotProblem,
    full: &InsertionPolynomial,
    closed: &Rational,
    cfg: &EngineConfig,
    timer: &mut Timer,
) -> Result<(Check, Vec<Rational>)> {
    let engine = timer.time("setup", || {
        LocalizationEngine::exact(p, &EngineConfig::new(cfg.h().clone(), Backend::Exact, cfg.workers)?)
    })?;
    let local = timer.time("localize", || engine.evaluate(full))?;
    let c = check(
        name,
        local == *closed,
        format!("localization of {full} gives {local}"),
    );
    Ok((c, vec![cfg.h().clone()]))
}

fn problem_and_insertion(req: &RunRequest) -> Result<(QuotProblem, InsertionPolynomial)> {
    let p = req.problem.ok_or_else(|| Error::Config(format!("{} needs a problem", req.command)))?;
    let text = req
        .insertion
        .as_deref()
        .ok_or_else(|| Error::Config(format!("{} needs an insertion", req.command)))?;
    let m = parse_polynomial(text, p.r(), p.g())?;
    Ok((p, m))
}

fn dispatch(req: &RunRequest, timer: &mut Timer) -> Result<(Outcome, Option<InsertionPolynomial>)> {
    let floating_ignored = req.config.backend == Backend::Floating && req.command != Command::Localize;
    let (mut out, m) = match req.command {
        Command::Vi => {
            let (p, m) = problem_and_insertion(req)?;
            let value = timer.time("closed form", || vi_evaluate(&p, &m))?;
            let mut out = Outcome::exact(&value);
            out.checks.push(integrality(&value));
            (out, Some(m))
        }
        Command::Localize => {
            let (p, m) = problem_and_insertion(req)?;
            (localize(&p, &m, req, timer)?, Some(m))
        }
        Command::Bees => {
            let (p, m) = problem_and_insertion(req)?;
            let s = req.s.expect("validated");
            let value = timer.time("closed form", || bees_evaluate(&p, &m, s))?;
            let full = odd_pairs(s, p.g()).mul(&m);
            let mut out = Outcome::exact(&value);
            let (c, hs) = oracle("localization-oracle", &p, &full, &value, &req.config, timer)?;
            out.checks.push(c);
            out.checks.push(integrality(&value));
            out.h_values = hs;
            out.details.insert("full".into(), full.to_string());
            (out, Some(m))
        }
        Command::Fl => {
            let (p, m) = problem_and_insertion(req)?;
            let l = req.l.expect("validated");
            let value = timer.time("closed form", || fl_evaluate(&p, &m, l))?;
            let full = InsertionPolynomial::f(l).mul(&m);
            let mut out = Outcome::exact(&value);
            let (c, hs) = oracle("localization-oracle", &p, &full, &value, &req.config, timer)?;
            out.checks.push(c);
            out.checks.push(integrality(&value));
            out.h_values = hs;
            out.details.insert("full".into(), full.to_string());
            (out, Some(m))
        }
        Command::ShiftCheck => {
            let (p, m) = problem_and_insertion(req)?;
            let (lhs, rhs) = timer.time("closed form", || degree_shift_values(&p, &m))?;
            let mut out = Outcome::exact(&lhs);
            out.details.insert("shifted".into(), rhs.to_string());
            out.checks.push(check(
                "degree-shift",
                lhs == rhs,
                format!("d={} gives {lhs}, d={} gives {rhs}", p.d(), p.d() + p.r()),
            ));
            (out, Some(m))
        }
        Command::Pontrjagin => {
            let p = req.problem.ok_or_else(|| Error::Config("pontrjagin needs a problem".into()))?;
            let rep = timer.time("witness sum", || pontrjagin_report(p.r(), p.n(), p.g(), p.d()))?;
            let mut out = Outcome::exact(&rep.value);
            out.checks.push(check("nonzero", true, "witness sum is nonzero"));
            out.details.insert("M".into(), rep.m.to_string());
            out.details.insert("t_coeff".into(), rep.t_coefficient.to_string());
            out.details.insert("t_claimed".into(), rep.t_coefficient_claimed.to_string());
            out.details.insert("ratio".into(), rep.ratio_to_reduction.to_string());
            out.notes = rep.notes;
            out.notes.push(
                "ratio compares the sum with u N^(r(g-1)+1) times the t coefficient; no value is asserted".into(),
            );
            (out, None)
        }
        Command::Verify => {
            let summaries = timer.time("identity grids", || run_all(&IdentityBounds::default()));
            let mut out = Outcome {
                exact: true,
                ..Outcome::default()
            };
            for s in &summaries {
                let mut detail = format!("{} cases, {} failures", s.checked, s.failures.len());
                if let Some(first) = s.failures.first() {
                    detail.push_str(&format!(" (first: {first})"));
                }
                out.checks.push(check(&s.identity, s.passed(), detail));
            }
            out.result = if out.checks.iter().all(|c| c.passed) { "pass" } else { "fail" }.into();
            (out, None)
        }
    };
    if floating_ignored {
        out.notes.push(format!("floating backend ignored: {} is always exact", req.command));
    }
    Ok((out, m))
}

/// Executes a request. Engine errors propagate; failed cross-checks are
/// recorded in the report and flip its status instead.
pub fn run(req: &RunRequest) -> Result<ComputationReport> {
    req.validate()?;
    let mut timer = Timer {
        enabled: req.timings,
        phases: BTreeMap::new(),
    };
    let start = Instant::now();
    let (out, m) = dispatch(req, &mut timer)?;
    if timer.enabled {
        let ms = start.elapsed().as_secs_f64() * 1e3;
        timer.phases.insert("total".into(), format!("{ms:.3}"));
    }
    let request = RequestEcho {
        command: req.command.as_str().into(),
        problem: req.problem.map(|p| ProblemEcho {
            r: p.r().to_string(),
            n: p.n().to_string(),
            g: p.g().to_string(),
            d: p.d().to_string(),
            e: p.e().to_string(),
        }),
        insertion: m.map(|m| m.to_string()),
        h: req.config.h().to_string(),
        backend: match req.config.backend {
            Backend::Exact => "exact".into(),
            Backend::Floating => "floating".into(),
        },
        breakdown: req.breakdown,
        s: req.s.map(|s| s.to_string()),
        l: req.l.map(|l| l.to_string()),
    };
    let passed = out.checks.iter().all(|c| c.passed);
    Ok(ComputationReport {
        schema_version: SCHEMA_VERSION,
        tool_version: env!("CARGO_PKG_VERSION").into(),
        status: if passed { "ok" } else { "check-failed" }.into(),
        request,
        result: out.result,
        exact: out.exact,
        h_values_checked: out.h_values.iter().map(|h| h.to_string()).collect(),
        checks: out.checks,
        details: out.details,
        breakdown: out.breakdown,
        notes: out.notes,
        timings_ms: timer.enabled.then_some(timer.phases),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn request(command: Command, p: (usize, usize, usize, usize), insertion: &str) -> RunRequest {
        let p = QuotProblem::new(p.0, p.1, p.2, p.3).unwrap();
        RunRequest::new(command).with_problem(p, insertion)
    }

    #[test]
    fn vi_rank_one() {
        let rep = run(&request(Command::Vi, (1, 2, 1, 2), "a1^4")).unwrap();
        assert_eq!(rep.result, "2");
        assert!(rep.passed());
    }

    #[test]
    fn localize_with_breakdown() {
        let mut req = request(Command::Localize, (2, 4, 0, 1), "a1^8");
        req.breakdown = true;
        let rep = run(&req).unwrap();
        assert_eq!(rep.result, "8");
        assert_eq!(rep.breakdown.as_ref().unwrap().len(), 12);
        assert_eq!(rep.h_values_checked, vec!["1", "2"]);
        assert!(rep.passed(), "{rep:?}");
        assert_eq!(rep.to_json(), run(&req).unwrap().to_json());
    }

    #[test]
    fn bees_and_fl_cross_check() {
        let mut req = request(Command::Bees, (2, 3, 1, 2), "a1^5");
        req.s = Some(1);
        let rep = run(&req).unwrap();
        assert!(rep.passed(), "{rep:?}");
        let mut req = request(Command::Fl, (2, 3, 1, 2), "a1^5");
        req.l = Some(2);
        let rep = run(&req).unwrap();
        assert!(rep.passed(), "{rep:?}");
    }

    #[test]
    fn pontrjagin_anchor() {
        let mut req = RunRequest::new(Command::Pontrjagin);
        req.problem = Some(QuotProblem::new(2, 3, 2, 3).unwrap());
        let rep = run(&req).unwrap();
        assert_eq!(rep.result, "-27");
        assert_eq!(rep.details["M"], "1");
        assert!(!rep.notes.is_empty());
    }

    #[test]
    fn input_errors_surface() {
        let err = run(&request(Command::Vi, (2, 4, 0, 1), "a1^7")).unwrap_err();
        assert_eq!(err.exit_code(), 1);
        let err = run(&request(Command::Vi, (2, 4, 0, 1), "a3")).unwrap_err();
        assert_eq!(err.code(), "index-out-of-range");
    }
}
