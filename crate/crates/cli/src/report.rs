//! Verification reports.
//!
//! The text layout is stable: a header, one `== suite ==` section per suite
//! in the order they ran, one line per check as `STATUS  name` with an
//! optional indented `witness:` line, and a closing summary. Timings are
//! printed only when requested, so two identical runs produce identical
//! bytes.

use std::fmt::{self, Write as _};
use std::time::{Duration, Instant};

use pfspec_core::Error;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIPPED(cap)",
        })
    }
}

#[derive(Clone, Debug)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub status: Status,
    pub witness: Option<String>,
    pub timing: Duration,
}

/// A passing or failing verdict with an optional detail.
pub struct Verdict {
    pub pass: bool,
    pub detail: Option<String>,
}

impl Verdict {
    pub fn pass(detail: impl Into<String>) -> Self {
        Verdict {
            pass: true,
            detail: Some(detail.into()),
        }
    }

    pub fn fail(detail: impl Into<String>) -> Self {
        Verdict {
            pass: false,
            detail: Some(detail.into()),
        }
    }

    pub fn when(pass: bool, detail: impl Into<String>) -> Self {
        Verdict {
            pass,
            detail: Some(detail.into()),
        }
    }
}

/// Run one check; a cap turns into `SKIPPED(cap)`, any other error into `FAIL`.
pub fn run_check(suite: &'static str, name: impl Into<String>, f: impl FnOnce() -> Result<Verdict, Error>) -> Check {
    let start = Instant::now();
    let outcome = f();
    let timing = start.elapsed();
    let (status, witness) = match outcome {
        Ok(v) => (if v.pass { Status::Pass } else { Status::Fail }, v.detail),
        Err(e @ Error::CapExceeded { .. }) => (Status::Skipped, Some(e.to_string())),
        Err(e) => (Status::Fail, Some(e.to_string())),
    };
    Check {
        suite,
        name: name.into(),
        status,
        witness,
        timing,
    }
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub header: Vec<(String, String)>,
    pub checks: Vec<Check>,
    pub timings: bool,
}

impl Report {
    pub fn count(&self, s: Status) -> usize {
        self.checks.iter().filter(|c| c.status == s).count()
    }

    /// 0 when every check passed; skipped checks fail only under `strict`.
    pub fn exit_code(&self, strict: bool) -> i32 {
        let failed = self.count(Status::Fail) > 0 || (strict && self.count(Status::Skipped) > 0);
        i32::from(failed)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "pfspec report v{FORMAT_VERSION}");
        for (k, v) in &self.header {
            let _ = writeln!(out, "{k}: {v}");
        }
        let mut suite = None;
        for c in &self.checks {
            if suite != Some(c.suite) {
                let _ = writeln!(out, "\n== {} ==", c.suite);
                suite = Some(c.suite);
            }
            let _ = write!(out, "{:<13} {}", c.status.to_string(), c.name);
            if self.timings {
                let _ = write!(out, "  [{:.3} ms]", c.timing.as_secs_f64() * 1e3);
            }
            out.push('\n');
            if let Some(w) = &c.witness {
                let _ = writeln!(out, "    {}: {w}", if c.status == Status::Pass { "detail" } else { "witness" });
            }
        }
        let _ = writeln!(
            out,
            "\nsummary: {} PASS, {} FAIL, {} SKIPPED(cap)",
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Skipped)
        );
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn statuses_and_exit_codes() {
        let mut r = Report::default();
        r.checks.push(run_check("s", "ok", || Ok(Verdict::pass("fine"))));
        assert_eq!(r.exit_code(true), 0);
        r.checks.push(run_check("s", "capped", || {
            Err(Error::CapExceeded {
                what: "carrier",
                size: 40,
                cap: 24,
            })
        }));
        assert_eq!(r.checks[1].status, Status::Skipped);
        assert_eq!((r.exit_code(false), r.exit_code(true)), (0, 1));
        r.checks.push(run_check("t", "bad", || Err(Error::NotTwoSided)));
        assert_eq!(r.exit_code(false), 1);
        let text = r.render();
        assert!(text.contains("\n== t ==\nFAIL          bad\n    witness: quantale is not two-sided\n"));
        assert!(text.ends_with("summary: 1 PASS, 1 FAIL, 1 SKIPPED(cap)\n"));
        assert!(!text.contains(" ms]"));
    }
}
