//! Dispatch of session commands; every result is a JSON value.

use serde_json::{json, Value};

use homlev::adams::{adams_tower, verify_splice};
use homlev::level::{bass_check, depth_complex, depth_module, level_report, LevelCertificate};
use homlev::resolutions::{dimension, minimal_free_resolution, DimValue};

use crate::corpus;
use crate::parse::{print_command, Binding, Command, Session};
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// No verdict could be certified.
    Inconclusive,
    /// A check carried out by the command failed.
    Failed,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Inconclusive => "inconclusive",
            Status::Failed => "failed",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub line: usize,
    pub command: String,
    pub status: Status,
    pub result: Value,
}

impl Outcome {
    pub fn to_json(&self) -> Value {
        json!({
            "line": self.line,
            "command": self.command,
            "status": self.status.name(),
            "result": self.result,
        })
    }
}

/// Results of every command, stopping at the first error.
#[derive(Clone, Debug)]
pub struct Report {
    pub outcomes: Vec<Outcome>,
    pub error: Option<CliError>,
}

impl Report {
    /// 1 on errors or failed checks, 2 when some result is inconclusive,
    /// 0 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.error.is_some() || self.outcomes.iter().any(|o| o.status == Status::Failed) {
            1
        } else if self.outcomes.iter().any(|o| o.status == Status::Inconclusive) {
            2
        } else {
            0
        }
    }

    pub fn to_json(&self) -> Value {
        let mut items: Vec<Value> = self.outcomes.iter().map(Outcome::to_json).collect();
        if let Some(e) = &self.error {
            items.push(json!({ "line": e.line(), "error": e.to_string() }));
        }
        Value::Array(items)
    }
}

pub fn run_session(session: &Session) -> Report {
    let mut outcomes = Vec::new();
    for (line, cmd) in session.commands() {
        match run_command(session, line, cmd) {
            Ok(o) => outcomes.push(o),
            Err(e) => {
                return Report {
                    outcomes,
                    error: Some(e),
                }
            }
        }
    }
    Report {
        outcomes,
        error: None,
    }
}

fn certificate_json(c: &LevelCertificate) -> Value {
    serde_json::to_value(c.summary()).expect("summaries serialize")
}

fn conclusive(v: &DimValue) -> bool {
    !matches!(v, DimValue::AtLeast(_) | DimValue::Inconclusive { .. })
}

pub fn run_command(session: &Session, line: usize, cmd: &Command) -> Result<Outcome, CliError> {
    let core = |source: homlev::Error| CliError::Core { line, source };
    let opts = session.config.level_options();
    let complex = |name: &str| session.complex(name).expect("checked while parsing");
    let module = |name: &str| session.module(name).expect("checked while parsing");
    let mut status = Status::Ok;
    let result = match cmd {
        Command::Homology(x) => {
            let c = complex(x);
            let mut degrees = Vec::new();
            for i in c.degrees() {
                let h = c.homology(i).map_err(core)?;
                let m = h.module();
                degrees.push(json!({
                    "degree": i,
                    "generators": m.num_generators(),
                    "generator_degrees": if m.is_artin() { Value::Null } else { json!(m.generator_degrees()) },
                    "dim": m.dim(),
                }));
            }
            json!({ "exact": c.is_exact().map_err(core)?, "degrees": degrees })
        }
        Command::Resolve { module: m, length } => {
            let r = minimal_free_resolution(module(m), length.unwrap_or(opts.cutoff)).map_err(core)?;
            let verified = r.verify().map_err(core)?;
            if !verified {
                status = Status::Failed;
            }
            let twists: Vec<Value> = r
                .complex
                .degrees()
                .map(|i| json!(r.complex.module(i).generator_degrees()))
                .collect();
            json!({
                "betti": r.betti(),
                "generator_degrees": twists,
                "complete": r.complete,
                "length": r.length(),
                "verified": verified,
            })
        }
        Command::Dimension { kind, module: m } => {
            let rep = dimension(module(m), *kind, opts.cutoff).map_err(core)?;
            if !conclusive(&rep.value) {
                status = Status::Inconclusive;
            }
            serde_json::to_value(&rep).expect("reports serialize")
        }
        Command::Depth(x) => {
            let depth = match session.get(x) {
                Some(Binding::Module(m)) => depth_module(m).map_err(core)?.map(|d| d as i64),
                _ => depth_complex(&complex(x)).map_err(core)?.map(i64::from),
            };
            json!({ "depth": depth, "ring_depth": complex(x).ring().depth() })
        }
        Command::Adams { target, side, steps } => {
            let t = adams_tower(&complex(target), *side, *steps).map_err(core)?;
            if !t.verified() {
                status = Status::Failed;
            }
            let mut v = serde_json::to_value(t.summary().map_err(core)?).expect("summaries serialize");
            v["verified"] = json!(t.verified());
            v
        }
        Command::Splice { target, side, steps } => {
            let t = adams_tower(&complex(target), *side, *steps).map_err(core)?;
            let rep = verify_splice(&t).map_err(core)?;
            if !rep.exact() || !t.verified() {
                status = Status::Failed;
            }
            json!({
                "steps": t.len(),
                "terms": rep.terms,
                "failure": rep.failure,
                "exact": rep.exact(),
                "tower_verified": t.verified(),
            })
        }
        Command::Level { class, target } => {
            let c = level_report(&complex(target), *class, &opts).map_err(core)?;
            if c.verdict.is_none() {
                status = Status::Inconclusive;
            }
            certificate_json(&c)
        }
        Command::Bass(x) => {
            let b = bass_check(&complex(x), &opts).map_err(core)?;
            if b.level.verdict.is_none() {
                status = Status::Inconclusive;
            }
            json!({
                "ring_depth": b.ring_depth,
                "predicted": b.predicted,
                "homology_injective_dimension": b.injective_dimension,
                "hypothesis_failure": b.hypothesis_failure,
                "holds": b.holds,
                "level": certificate_json(&b.level),
                "gorenstein_injective": {
                    "note": b.gi.note,
                    "theorem_bound": b.gi.theorem_bound,
                    "consistent": b.gi.consistent,
                    "certificate": certificate_json(&b.gi.certificate),
                },
            })
        }
        Command::Corpus => {
            let table = corpus::run_corpus(&corpus::bundled(), session.config.corpus_filter.as_deref());
            if table.failed() > 0 {
                status = Status::Failed;
            }
            table.to_json()
        }
    };
    Ok(Outcome {
        line,
        command: print_command(cmd),
        status,
        result,
    })
}
