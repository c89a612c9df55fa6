//! Bundled example sessions with their expected results.

use serde_json::{json, Value};

use crate::parse::parse;
use crate::run::run_session;
use crate::Config;

#[derive(Clone, Debug)]
pub struct CorpusCase {
    pub name: String,
    pub script: String,
    /// JSON pointer into the array of command results.
    pub pointer: String,
    pub expected: Value,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CorpusRow {
    pub name: String,
    pub pointer: String,
    pub expected: Value,
    pub actual: Value,
    pub pass: bool,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct CorpusTable {
    pub rows: Vec<CorpusRow>,
}

impl CorpusTable {
    pub fn passed(&self) -> usize {
        self.rows.iter().filter(|r| r.pass).count()
    }

    pub fn failed(&self) -> usize {
        self.rows.len() - self.passed()
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                json!({
                    "case": r.name,
                    "expected": r.expected,
                    "actual": r.actual,
                    "pass": r.pass,
                })
            })
            .collect();
        json!({ "rows": rows, "passed": self.passed(), "failed": self.failed() })
    }
}

const DUAL_NUMBERS: &str = "\
ring A = artin(F2; x | x^2)
module k over A = residue
module E over A = injective
module F over A = free 1
complex K over A : range 1..0 ; d1 = [[x]]
";

const REGULAR: &str = "\
ring R = poly(F101; x, y, z)
module k over R = coker [[x, y, z]]
module S over R = free 1
";

const SPLIT: &str = "\
ring P = poly(F101; x, y)
complex C over P : range 1..0 ; d1 = [[1], [0]]
";

fn case(name: &str, preamble: &str, command: &str, pointer: &str, expected: Value) -> CorpusCase {
    CorpusCase {
        name: name.into(),
        script: format!("{preamble}{command}\n"),
        pointer: format!("/0/result{pointer}"),
        expected,
    }
}

pub fn bundled() -> Vec<CorpusCase> {
    vec![
        case("dual-numbers-basis", DUAL_NUMBERS, "homology F", "/degrees/0/dim", json!(2)),
        case("dual-numbers-residue-gid", DUAL_NUMBERS, "gid k", "/value", json!({ "Finite": 0 })),
        case("koszul-inj-lower", DUAL_NUMBERS, "level Inj K", "/lower/value", json!(2)),
        case("koszul-inj-level", DUAL_NUMBERS, "level Inj K", "/verdict", json!(2)),
        case("koszul-gi-level", DUAL_NUMBERS, "level GI K", "/verdict", json!(2)),
        case("residue-gi-level", DUAL_NUMBERS, "level GI k", "/verdict", json!(1)),
        case("bass-injective-hull", DUAL_NUMBERS, "bass E", "/holds", json!(true)),
        case("bass-koszul-level", DUAL_NUMBERS, "bass K", "/level/verdict", json!(2)),
        case("koszul-splice", DUAL_NUMBERS, "splice K proj 2", "/exact", json!(true)),
        case("split-proj-level-one", SPLIT, "level Proj C", "/upper/rule", json!("level one")),
        case("split-flat-level", SPLIT, "level Flat C", "/verdict", json!(1)),
        case("regular-pd", REGULAR, "pd k", "/value", json!({ "Finite": 3 })),
        case("regular-betti", REGULAR, "pd k", "/betti", json!([1, 3, 3, 1])),
        case("regular-proj-level", REGULAR, "level Proj k", "/verdict", json!(4)),
        case("regular-depth-free", REGULAR, "depth S", "/depth", json!(3)),
        case("regular-depth-residue", REGULAR, "depth k", "/depth", json!(0)),
    ]
}

/// Runs the cases whose name contains `filter` (all when `None`).
pub fn run_corpus(cases: &[CorpusCase], filter: Option<&str>) -> CorpusTable {
    let mut rows = Vec::new();
    for c in cases.iter().filter(|c| filter.is_none_or(|f| c.name.contains(f))) {
        let actual = match parse(&c.script, &Config::default()) {
            Ok(s) => {
                let rep = run_session(&s);
                match &rep.error {
                    Some(e) => json!({ "error": e.to_string() }),
                    None => rep.to_json().pointer(&c.pointer).cloned().unwrap_or(Value::Null),
                }
            }
            Err(e) => json!({ "error": e.to_string() }),
        };
        rows.push(CorpusRow {
            name: c.name.clone(),
            pointer: c.pointer.clone(),
            pass: actual == c.expected,
            expected: c.expected.clone(),
            actual,
        });
    }
    CorpusTable { rows }
}
