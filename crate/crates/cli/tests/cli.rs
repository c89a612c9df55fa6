use std::process::Command as Process;

use proptest::prelude::*;
use serde_json::{json, Value};

use homlev::level::LevelClass;
use homlev_cli::corpus::{bundled, run_corpus};
use homlev_cli::parse::Command;
use homlev_cli::run::Report;
use homlev_cli::{parse, run_command, run_session, CliError, Config, Status};

const KOSZUL: &str = include_str!("../scripts/koszul.hl");

fn cfg() -> Config {
    Config::default()
}

fn results(src: &str) -> Report {
    let s = parse(src, &cfg()).unwrap();
    let r = run_session(&s);
    assert!(r.error.is_none(), "{:?}", r.error);
    r
}

fn binary() -> Process {
    Process::new(env!("CARGO_BIN_EXE_homlev"))
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn koszul_file_binds_ring_and_complex() {
    let s = parse(KOSZUL, &cfg()).unwrap();
    let a = s.ring("A").unwrap();
    assert!(a.is_artin());
    assert_eq!(a.dim(), Some(2));
    let k = s.complex("K").unwrap();
    assert_eq!(k.window(), Some((0, 1)));
    assert!(!k.is_exact().unwrap());
    assert!(s.commands().count() >= 1);
}

#[test]
fn empty_file_gives_empty_session() {
    for src in ["", "\n\n", "# only a comment\n   # another\n"] {
        let s = parse(src, &cfg()).unwrap();
        assert!(s.stmts.is_empty());
        assert!(s.names().is_empty());
        let r = run_session(&s);
        assert_eq!(r.exit_code(), 0);
        assert_eq!(r.to_json(), json!([]));
    }
}

#[test]
fn nonzero_square_is_rejected_with_its_degree() {
    let src = "ring A = artin(F2; x | x^2)\ncomplex K over A : range 2..0 ; d1 = [[x]] ; d2 = [[1]]\n";
    let err = parse(src, &cfg()).unwrap_err();
    let CliError::Verification { line, msg } = err else {
        panic!("expected a verification error, got {err:?}");
    };
    assert_eq!(line, 2);
    assert!(msg.contains("degree 2"), "{msg}");
}

#[test]
fn parse_errors_carry_line_and_column() {
    let src = "ring A = artin(F2; x | x^2)\nlevel GI Q\n";
    assert_eq!(
        parse(src, &cfg()).unwrap_err(),
        CliError::Parse {
            line: 2,
            col: 10,
            msg: "`Q` is not declared".into()
        }
    );
    let dup = "ring A = artin(F2; x | x^2)\nmodule A over A = residue\n";
    assert!(matches!(parse(dup, &cfg()), Err(CliError::Parse { line: 2, .. })));
    let bad = "ring A = artin(F2; x | x^2)\nmodule M over A = coker [[x, w]]\n";
    assert!(matches!(parse(bad, &cfg()), Err(CliError::Parse { line: 2, col: 30, .. })));
    let unbounded = "ring A = artin(F2; x, y | x^2)\n";
    assert!(matches!(parse(unbounded, &cfg()), Err(CliError::Parse { line: 1, .. })));
}

#[test]
fn field_flag_fills_in_missing_fields() {
    let src = "ring A = artin(x | x^2)\n";
    assert!(matches!(parse(src, &cfg()), Err(CliError::Parse { .. })));
    let c = Config {
        field: Some(homlev::algebra::parse_field("F3").unwrap()),
        ..cfg()
    };
    let s = parse(src, &c).unwrap();
    assert_eq!(s.ring("A").unwrap().field.name(), "F3");
}

#[test]
fn gorenstein_injective_level_of_koszul_is_two() {
    let s = parse(KOSZUL, &cfg()).unwrap();
    let cmd = Command::Level {
        class: LevelClass::GI,
        target: "K".into(),
    };
    let o = run_command(&s, 0, &cmd).unwrap();
    assert_eq!(o.status, Status::Ok);
    assert_eq!(o.result["verdict"], json!(2));
    assert_eq!(o.result["upper"]["value"], json!(2));
    assert_eq!(o.result["lower"]["value"], json!(2));
}

#[test]
fn residue_field_of_regular_ring_has_koszul_betti_numbers() {
    let src = "ring R = poly(F101; x, y, z)\nmodule k over R = coker [[x, y, z]]\npd k\nresolve k\n";
    let r = results(src);
    let pd = &r.outcomes[0].result;
    assert_eq!(pd["value"], json!({ "Finite": 3 }));
    let koszul: Vec<usize> = (0..=3).map(|i| binomial(3, i)).collect();
    assert_eq!(pd["betti"], json!(koszul));
    let res = &r.outcomes[1].result;
    assert_eq!(res["complete"], json!(true));
    assert_eq!(res["verified"], json!(true));
    // generators of the i-th free module sit in degree i
    let degs: Vec<Vec<i32>> = (0..=3).map(|i| vec![i as i32; binomial(3, i)]).collect();
    assert_eq!(res["generator_degrees"], json!(degs));
}

#[test]
fn splice_of_two_step_towers_is_exact() {
    let src = format!("{KOSZUL}splice K proj 2\nsplice K inj 2\nadams K proj 2\n");
    let r = results(&src);
    let n = r.outcomes.len();
    for o in &r.outcomes[n - 3..n - 1] {
        assert_eq!(o.result["exact"], json!(true), "{}", o.command);
        assert_eq!(o.result["steps"], json!(2));
    }
    assert_eq!(r.outcomes[n - 1].result["verified"], json!(true));
}

#[test]
fn graded_twists_are_inferred() {
    let src = "ring P = poly(F101; x, y)\n\
               complex K over P : range 2..0 ; d1 = [[x, y]] ; d2 = [[-y], [x]]\n\
               homology K\n";
    let s = parse(src, &cfg()).unwrap();
    let k = s.complex("K").unwrap();
    assert_eq!(k.module(1).generator_degrees(), vec![1, 1]);
    assert_eq!(k.module(2).generator_degrees(), vec![2]);
    let h = &run_session(&s).outcomes[0].result;
    assert_eq!(h["degrees"][0]["generators"], json!(1));
    assert_eq!(h["degrees"][1]["generators"], json!(0));
    assert_eq!(h["degrees"][2]["generators"], json!(0));
}

#[test]
fn modules_from_actions_and_named_terms() {
    let src = "ring A = artin(F2; x | x^2)\n\
               module M over A = actions [[0, 0], [1, 0]]\n\
               module k over A = residue\n\
               complex T over A : range 1..0 ; C0 = k ; C1 = M ; d1 = [[1]]\n\
               homology T\n";
    let s = parse(src, &cfg()).unwrap();
    assert!(s.module("M").unwrap().is_free());
    let h = &run_session(&s).outcomes[0].result;
    assert_eq!(h["degrees"][0]["dim"], json!(0));
    assert_eq!(h["degrees"][1]["dim"], json!(1));
}

#[test]
fn printing_round_trips() {
    let src = "ring A = artin(F3; x, y | x^2, y^2)\n\
               module k over A = residue\n\
               module E over A = injective\n\
               module N over A = coker [[x, y+x]]\n\
               complex K over A : range 1..0 ; C0 = N ; d1 = [[1]]\n\
               ring P = poly(F101; x, y)\n\
               module G over P = free(0, 1)\n\
               module Q over P = coker [[x^2, x*y]]\n\
               complex L over P : range 0..-1 ; d0 = [[x, y]]\n\
               homology K\nresolve Q 3\ngid k\ndepth L\nadams K inj 2\nsplice L proj 1\n\
               level GF K\nbass K\ncorpus\n";
    let s = parse(src, &cfg()).unwrap();
    let printed = s.print();
    let t = parse(&printed, &cfg()).unwrap();
    let strip = |s: &homlev_cli::Session| s.stmts.iter().map(|x| x.1.clone()).collect::<Vec<_>>();
    assert_eq!(strip(&s), strip(&t));
    assert_eq!(t.print(), printed);
    assert_eq!(s.names(), t.names());
}

#[test]
fn same_seed_gives_identical_json() {
    let src = format!("{KOSZUL}level Flat K\nlevel GP K\n");
    let c = Config { seed: 7, ..cfg() };
    let a = run_session(&parse(&src, &c).unwrap()).to_json().to_string();
    let b = run_session(&parse(&src, &c).unwrap()).to_json().to_string();
    assert_eq!(a, b);
}

#[test]
fn binary_writes_identical_files_and_exit_codes() {
    let dir = std::env::temp_dir().join(format!("homlev-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let script = dir.join("k.hl");
    std::fs::write(&script, KOSZUL).unwrap();
    let mut outs = Vec::new();
    for i in 0..2 {
        let out = dir.join(format!("out{i}.json"));
        let st = binary()
            .args([script.to_str().unwrap(), "--seed", "3", "--out", out.to_str().unwrap()])
            .output()
            .unwrap();
        assert_eq!(st.status.code(), Some(0));
        outs.push(std::fs::read(&out).unwrap());
    }
    assert_eq!(outs[0], outs[1]);
    let v: Value = serde_json::from_slice(&outs[0]).unwrap();
    assert!(v.as_array().unwrap().iter().all(|o| o["status"] == "ok"));

    let inconclusive = dir.join("pd.hl");
    std::fs::write(
        &inconclusive,
        "ring R = poly(F101; x, y, z)\nmodule k over R = coker [[x, y, z]]\npd k\n",
    )
    .unwrap();
    let st = binary().args([inconclusive.to_str().unwrap(), "--cutoff", "1"]).output().unwrap();
    assert_eq!(st.status.code(), Some(2));

    let broken = dir.join("broken.hl");
    std::fs::write(&broken, "ring A = artin(F2; x | x^2)\npd B\n").unwrap();
    let st = binary().arg(broken.to_str().unwrap()).output().unwrap();
    assert_eq!(st.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&st.stderr).contains("line 2"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn bundled_corpus_passes() {
    let t = run_corpus(&bundled(), None);
    assert!(!t.rows.is_empty());
    for r in &t.rows {
        assert!(r.pass, "{}: expected {} got {}", r.name, r.expected, r.actual);
    }
}

#[test]
fn perturbed_expectation_fails_its_row() {
    let mut cases = bundled();
    let idx = cases.iter().position(|c| c.name == "koszul-gi-level").unwrap();
    cases[idx].expected = json!(3);
    let t = run_corpus(&cases, Some("koszul"));
    assert_eq!(t.failed(), 1);
    let bad: Vec<&str> = t.rows.iter().filter(|r| !r.pass).map(|r| r.name.as_str()).collect();
    assert_eq!(bad, ["koszul-gi-level"]);
}

#[test]
fn empty_corpus_selection_exits_zero() {
    let t = run_corpus(&bundled(), Some("no-such-case"));
    assert!(t.rows.is_empty());
    let st = binary()
        .args([
            concat!(env!("CARGO_MANIFEST_DIR"), "/scripts/corpus.hl"),
            "--corpus-filter",
            "no-such-case",
        ])
        .output()
        .unwrap();
    assert_eq!(st.status.code(), Some(0));
    let text = String::from_utf8_lossy(&st.stdout);
    assert!(text.contains("passed: 0"), "{text}");
}

fn entry() -> impl Strategy<Value = &'static str> {
    prop::sample::select(vec!["0", "1", "2", "x", "y", "x+y", "2*x*y", "x^2", "y-x"])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_declarations_round_trip(
        rows in 1usize..3,
        entries in prop::collection::vec(entry(), 6),
        seed in any::<u64>(),
    ) {
        let cols = entries.len() / rows.max(1) / 2 + 1;
        let mat: Vec<String> = (0..rows)
            .map(|i| format!("[{}]", entries[i * cols..(i + 1) * cols].join(", ")))
            .collect();
        let src = format!(
            "ring A = artin(F3; x, y | x^2, y^2)\n\
             module N over A = coker [{m}]\n\
             complex K over A : range 1..0 ; d1 = [{m}]\n\
             level GI K\n",
            m = mat.join(", ")
        );
        let c = Config { seed, ..Config::default() };
        let s = parse(&src, &c).unwrap();
        let t = parse(&s.print(), &c).unwrap();
        prop_assert_eq!(
            s.stmts.iter().map(|x| &x.1).collect::<Vec<_>>(),
            t.stmts.iter().map(|x| &x.1).collect::<Vec<_>>()
        );
        let a = run_session(&s).to_json();
        let b = run_session(&t).to_json();
        prop_assert_eq!(a.to_string(), b.to_string());
        for o in a.as_array().unwrap() {
            let r = &o["result"];
            if let (Some(l), Some(u)) = (r["lower"]["value"].as_u64(), r["upper"]["value"].as_u64()) {
                prop_assert!(l <= u);
            }
        }
    }
}
