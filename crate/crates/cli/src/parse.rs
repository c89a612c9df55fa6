//! Line-oriented session scripts.
//!
//! ```text
//! ring A = artin(F2; x | x^2)
//! module k over A = residue
//! complex K over A : range 1..0 ; d1 = [[x]]
//! level GI K
//! ```
//!
//! Matrices list rows; column `j` holds the image of the `j`-th generator
//! of the source in terms of the generators of the target. Complex terms
//! are free of the inferred rank unless named with `C<i> = <module>`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use homlev::adams::TowerSide;
use homlev::algebra::parse::split_top;
use homlev::algebra::{make_ring, parse_poly, Ring};
use homlev::complexes::Complex;
use homlev::grobner::{Poly, PolyVec};
use homlev::level::LevelClass;
use homlev::linalg::{Mat, Scalar};
use homlev::modules::{Elem, FgModule, ModuleMap};
use homlev::resolutions::DimKind;

use crate::{CliError, Config};

/// Rows of polynomial entries, kept in normal form.
pub type Matrix = Vec<Vec<String>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleDef {
    Residue,
    Injective,
    Free(Vec<i32>),
    /// Cokernel of a map between free modules.
    Coker(Matrix),
    /// Variable actions on `k^n` (artinian mode).
    Actions(Vec<Matrix>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexDef {
    pub hi: i32,
    pub lo: i32,
    /// Terms given by a declared module; the rest are free.
    pub terms: BTreeMap<i32, String>,
    /// `d<i>: C_i → C_{i-1}`; missing differentials are zero.
    pub diffs: BTreeMap<i32, Matrix>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Homology(String),
    Resolve { module: String, length: Option<usize> },
    Dimension { kind: DimKind, module: String },
    Depth(String),
    Adams { target: String, side: TowerSide, steps: usize },
    Splice { target: String, side: TowerSide, steps: usize },
    Level { class: LevelClass, target: String },
    Bass(String),
    Corpus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stmt {
    Ring { name: String, spec: String },
    Module { name: String, ring: String, def: ModuleDef },
    Complex { name: String, ring: String, def: ComplexDef },
    Command(Command),
}

#[derive(Clone, Debug)]
pub enum Binding {
    Ring(Ring),
    Module(FgModule),
    Complex(Complex),
}

impl Binding {
    fn kind(&self) -> &'static str {
        match self {
            Binding::Ring(_) => "ring",
            Binding::Module(_) => "module",
            Binding::Complex(_) => "complex",
        }
    }
}

/// Parsed statements with every declared object built and checked.
#[derive(Clone, Debug)]
pub struct Session {
    pub config: Config,
    /// Statements with their line numbers.
    pub stmts: Vec<(usize, Stmt)>,
    bindings: BTreeMap<String, Binding>,
}

impl Session {
    pub fn empty(config: Config) -> Session {
        Session {
            config,
            stmts: Vec::new(),
            bindings: BTreeMap::new(),
        }
    }

    pub fn names(&self) -> Vec<&str> {
        self.bindings.keys().map(String::as_str).collect()
    }

    pub fn get(&self, name: &str) -> Option<&Binding> {
        self.bindings.get(name)
    }

    pub fn ring(&self, name: &str) -> Option<&Ring> {
        match self.bindings.get(name)? {
            Binding::Ring(r) => Some(r),
            _ => None,
        }
    }

    pub fn module(&self, name: &str) -> Option<&FgModule> {
        match self.bindings.get(name)? {
            Binding::Module(m) => Some(m),
            _ => None,
        }
    }

    /// A complex, or a module viewed as a complex in degree 0.
    pub fn complex(&self, name: &str) -> Option<Complex> {
        match self.bindings.get(name)? {
            Binding::Complex(c) => Some(c.clone()),
            Binding::Module(m) => Some(Complex::stalk(m, 0)),
            Binding::Ring(_) => None,
        }
    }

    pub fn commands(&self) -> impl Iterator<Item = (usize, &Command)> {
        self.stmts.iter().filter_map(|(l, s)| match s {
            Stmt::Command(c) => Some((*l, c)),
            _ => None,
        })
    }

    /// The statements in canonical form, one per line.
    pub fn print(&self) -> String {
        let mut out = String::new();
        for (_, s) in &self.stmts {
            out.push_str(&print_stmt(s));
            out.push('\n');
        }
        out
    }

    /// Parses and binds one more line.
    pub fn push_line(&mut self, line_no: usize, raw: &str) -> Result<(), CliError> {
        let text = raw.split('#').next().unwrap_or("").trim();
        if text.is_empty() {
            return Ok(());
        }
        let lx = Line { no: line_no, raw };
        let (stmt, ring) = lx.statement(self, text)?;
        match &stmt {
            Stmt::Ring { name, .. } => {
                let ring = ring.expect("built while parsing");
                self.bind(line_no, raw, name, Binding::Ring(ring))?;
            }
            Stmt::Module { name, ring, def } => {
                let r = self.ring(ring).cloned().expect("checked while parsing");
                let m = build_module(&r, def).map_err(|e| core_err(line_no, e))?;
                self.bind(line_no, raw, name, Binding::Module(m))?;
            }
            Stmt::Complex { name, ring, def } => {
                let r = self.ring(ring).cloned().expect("checked while parsing");
                let c = self.build_complex(&r, def).map_err(|e| core_err(line_no, e))?;
                self.bind(line_no, raw, name, Binding::Complex(c))?;
            }
            Stmt::Command(_) => {}
        }
        self.stmts.push((line_no, stmt));
        Ok(())
    }

    fn bind(&mut self, line: usize, raw: &str, name: &str, b: Binding) -> Result<(), CliError> {
        if let Some(old) = self.bindings.get(name) {
            return Err(CliError::Parse {
                line,
                col: col_of(raw, name),
                msg: format!("`{name}` is already bound to a {}", old.kind()),
            });
        }
        self.bindings.insert(name.to_string(), b);
        Ok(())
    }

    fn build_complex(&self, ring: &Ring, def: &ComplexDef) -> homlev::Result<Complex> {
        let (lo, hi) = (def.lo, def.hi);
        let mut terms: Vec<FgModule> = Vec::new();
        for i in lo..=hi {
            let m = match def.terms.get(&i) {
                Some(name) => self.module(name).cloned().expect("checked while parsing"),
                None => {
                    let rank = term_rank(def, i)?;
                    let twists = match def.diffs.get(&i) {
                        Some(mat) if !ring.is_artin() && i > lo => {
                            infer_twists(&terms[(i - 1 - lo) as usize], mat, rank)?
                        }
                        _ => vec![0; rank],
                    };
                    FgModule::free_twisted(ring, &twists)
                }
            };
            terms.push(m);
        }
        let mut diffs = Vec::new();
        for i in lo + 1..=hi {
            let (src, tgt) = (&terms[(i - lo) as usize], &terms[(i - 1 - lo) as usize]);
            diffs.push(match def.diffs.get(&i) {
                Some(mat) => matrix_map(ring, src, tgt, mat)?,
                None => ModuleMap::zero(src, tgt),
            });
        }
        Complex::new(ring, lo, terms, diffs)
    }
}

/// Parses a whole script, building and checking every declaration.
pub fn parse(source: &str, config: &Config) -> Result<Session, CliError> {
    let mut s = Session::empty(config.clone());
    for (i, line) in source.lines().enumerate() {
        s.push_line(i + 1, line)?;
    }
    Ok(s)
}

fn core_err(line: usize, e: homlev::Error) -> CliError {
    match e {
        homlev::Error::Verification(msg) => CliError::Verification { line, msg },
        source => CliError::Core { line, source },
    }
}

fn col_of(raw: &str, needle: &str) -> usize {
    raw.find(needle).map_or(1, |p| raw[..p].chars().count() + 1)
}

struct Line<'a> {
    no: usize,
    raw: &'a str,
}

fn split_word(s: &str) -> (&str, &str) {
    let s = s.trim();
    match s.find(char::is_whitespace) {
        Some(p) => (&s[..p], s[p..].trim()),
        None => (s, ""),
    }
}

fn is_ident(s: &str) -> bool {
    s.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

impl Line<'_> {
    fn err_at(&self, near: &str, msg: impl Into<String>) -> CliError {
        CliError::Parse {
            line: self.no,
            col: col_of(self.raw, near),
            msg: msg.into(),
        }
    }

    fn statement(&self, s: &Session, text: &str) -> Result<(Stmt, Option<Ring>), CliError> {
        let (head, rest) = split_word(text);
        match head {
            "ring" => self.ring_decl(s, rest).map(|(st, r)| (st, Some(r))),
            "module" => Ok((self.module_decl(s, rest)?, None)),
            "complex" => Ok((self.complex_decl(s, rest)?, None)),
            _ => Ok((Stmt::Command(self.command(s, head, rest)?), None)),
        }
    }

    fn ident(&self, s: &str) -> Result<String, CliError> {
        if is_ident(s) {
            Ok(s.to_string())
        } else {
            Err(self.err_at(s, format!("expected a name, found `{s}`")))
        }
    }

    fn ring_decl(&self, s: &Session, rest: &str) -> Result<(Stmt, Ring), CliError> {
        let (name, spec) = rest
            .split_once('=')
            .ok_or_else(|| self.err_at(rest, "expected `ring <name> = <ring>`"))?;
        let name = self.ident(name.trim())?;
        let mut spec = spec.trim().to_string();
        if let Some((head, body)) = spec.split_once('(') {
            if !body.contains(';') {
                let f = s.config.field.ok_or_else(|| {
                    self.err_at(&spec, "the ring names no field and --field was not given")
                })?;
                spec = format!("{head}({f}; {body}");
            }
        }
        let ring = make_ring(&spec).map_err(|e| self.err_at(spec.split('(').next().unwrap_or(""), e.to_string()))?;
        Ok((
            Stmt::Ring {
                name,
                spec: ring.describe(),
            },
            ring,
        ))
    }

    /// `<name> over <ring> <sep> <rest>`.
    fn header<'s>(
        &self,
        s: &'s Session,
        text: &'s str,
        sep: char,
        what: &str,
    ) -> Result<(String, String, &'s Ring, &'s str), CliError> {
        let (lhs, body) = text
            .split_once(sep)
            .ok_or_else(|| self.err_at(text, format!("expected `{what} <name> over <ring> {sep} ...`")))?;
        let words: Vec<&str> = lhs.split_whitespace().collect();
        let [name, over, ring] = words[..] else {
            return Err(self.err_at(lhs, format!("expected `{what} <name> over <ring>`")));
        };
        if over != "over" {
            return Err(self.err_at(over, format!("expected `over`, found `{over}`")));
        }
        let name = self.ident(name)?;
        let r = s
            .ring(ring)
            .ok_or_else(|| self.err_at(ring, format!("`{ring}` is not a declared ring")))?;
        Ok((name, ring.to_string(), r, body.trim()))
    }

    fn module_decl(&self, s: &Session, text: &str) -> Result<Stmt, CliError> {
        let (name, ring_name, ring, body) = self.header(s, text, '=', "module")?;
        let (head, rest) = split_word(body);
        let def = if head == "residue" && rest.is_empty() {
            ModuleDef::Residue
        } else if head == "injective" && rest.is_empty() {
            ModuleDef::Injective
        } else if head == "free" {
            let n: usize = rest
                .parse()
                .map_err(|_| self.err_at(body, "expected `free <rank>`"))?;
            ModuleDef::Free(vec![0; n])
        } else if let Some(list) = body.strip_prefix("free(") {
            let list = list
                .strip_suffix(')')
                .ok_or_else(|| self.err_at(body, "missing `)` after the twists"))?;
            let twists = split_top(list, ',')
                .iter()
                .map(|t| t.parse::<i32>().map_err(|_| self.err_at(t, format!("bad twist `{t}`"))))
                .collect::<Result<_, _>>()?;
            ModuleDef::Free(twists)
        } else if head == "coker" {
            ModuleDef::Coker(self.matrix(ring, rest, false)?)
        } else if head == "actions" {
            if !ring.is_artin() {
                return Err(self.err_at(head, "action matrices need an artinian ring"));
            }
            let mats: Vec<Matrix> = split_top(rest, ' ')
                .iter()
                .filter(|m| !m.is_empty())
                .map(|m| self.matrix(ring, m, true))
                .collect::<Result<_, _>>()?;
            if mats.len() != ring.nvars() {
                return Err(self.err_at(
                    rest,
                    format!("{} action matrices for {} variables", mats.len(), ring.nvars()),
                ));
            }
            ModuleDef::Actions(mats)
        } else {
            return Err(self.err_at(
                body,
                "expected `residue`, `injective`, `free`, `coker [...]` or `actions [...]`",
            ));
        };
        Ok(Stmt::Module {
            name,
            ring: ring_name,
            def,
        })
    }

    fn complex_decl(&self, s: &Session, text: &str) -> Result<Stmt, CliError> {
        let (name, ring_name, ring, body) = self.header(s, text, ':', "complex")?;
        let parts = split_top(body, ';');
        let range = parts.first().map(String::as_str).unwrap_or("");
        let bounds = range
            .strip_prefix("range")
            .and_then(|r| r.trim().split_once(".."))
            .and_then(|(a, b)| Some((a.trim().parse::<i32>().ok()?, b.trim().parse::<i32>().ok()?)))
            .ok_or_else(|| self.err_at(body, "expected `range <hi>..<lo>`"))?;
        let (hi, lo) = (bounds.0.max(bounds.1), bounds.0.min(bounds.1));
        let mut def = ComplexDef {
            hi,
            lo,
            terms: BTreeMap::new(),
            diffs: BTreeMap::new(),
        };
        for part in &parts[1..] {
            let (lhs, rhs) = part
                .split_once('=')
                .ok_or_else(|| self.err_at(part, "expected `d<i> = [...]` or `C<i> = <module>`"))?;
            let (lhs, rhs) = (lhs.trim(), rhs.trim());
            let degree = |p: &str| {
                lhs[1..]
                    .parse::<i32>()
                    .map_err(|_| self.err_at(lhs, format!("expected a degree after `{p}`")))
            };
            if lhs.starts_with('d') {
                let i = degree("d")?;
                if i <= lo || i > hi {
                    return Err(self.err_at(lhs, format!("d{i} lies outside the range {hi}..{lo}")));
                }
                if def.diffs.insert(i, self.matrix(ring, rhs, false)?).is_some() {
                    return Err(self.err_at(lhs, format!("d{i} given twice")));
                }
            } else if lhs.starts_with('C') {
                let i = degree("C")?;
                if i < lo || i > hi {
                    return Err(self.err_at(lhs, format!("C{i} lies outside the range {hi}..{lo}")));
                }
                let m = s
                    .module(rhs)
                    .ok_or_else(|| self.err_at(rhs, format!("`{rhs}` is not a declared module")))?;
                if m.ring() != ring {
                    return Err(self.err_at(rhs, format!("`{rhs}` is over another ring")));
                }
                if def.terms.insert(i, rhs.to_string()).is_some() {
                    return Err(self.err_at(lhs, format!("C{i} given twice")));
                }
            } else {
                return Err(self.err_at(lhs, format!("unknown complex part `{lhs}`")));
            }
        }
        Ok(Stmt::Complex {
            name,
            ring: ring_name,
            def,
        })
    }

    /// `[[a, b], [c, d]]`, entries put in normal form; `scalar` requires
    /// constants.
    fn matrix(&self, ring: &Ring, text: &str, scalar: bool) -> Result<Matrix, CliError> {
        let bad = || self.err_at(text, format!("expected a matrix `[[...], ...]`, found `{text}`"));
        let inner = text
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(bad)?;
        let mut rows: Matrix = Vec::new();
        for row in split_top(inner, ',') {
            let entries = row
                .strip_prefix('[')
                .and_then(|t| t.strip_suffix(']'))
                .ok_or_else(bad)?;
            let mut out = Vec::new();
            for e in split_top(entries, ',') {
                let p = parse_poly(&e, ring.field, &ring.vars)
                    .map_err(|err| self.err_at(&e, err.to_string()))?;
                if scalar && p.terms().iter().any(|t| t.mono.degree() > 0) {
                    return Err(self.err_at(&e, format!("`{e}` is not a scalar")));
                }
                out.push(p.fmt_with(&ring.vars));
            }
            rows.push(out);
        }
        if rows.is_empty() || rows[0].is_empty() {
            return Err(self.err_at(text, "empty matrix"));
        }
        if rows.iter().any(|r| r.len() != rows[0].len()) {
            return Err(self.err_at(text, "rows of different lengths"));
        }
        Ok(rows)
    }

    fn target(&self, s: &Session, name: &str, module_only: bool) -> Result<String, CliError> {
        match s.get(name) {
            Some(Binding::Module(_)) => Ok(name.to_string()),
            Some(Binding::Complex(_)) if !module_only => Ok(name.to_string()),
            Some(b) => Err(self.err_at(name, format!("`{name}` is a {}, expected a module", b.kind()))),
            None if name.is_empty() => Err(self.err_at(self.raw.trim(), "missing argument")),
            None => Err(self.err_at(name, format!("`{name}` is not declared"))),
        }
    }

    fn command(&self, s: &Session, head: &str, rest: &str) -> Result<Command, CliError> {
        let args: Vec<&str> = rest.split_whitespace().collect();
        let arity = |n: std::ops::RangeInclusive<usize>| {
            if n.contains(&args.len()) {
                Ok(())
            } else {
                Err(self.err_at(head, format!("wrong number of arguments to `{head}`")))
            }
        };
        let first = args.first().copied().unwrap_or("");
        let tower = |args: &[&str]| -> Result<(TowerSide, usize), CliError> {
            let side = match args[1] {
                "proj" => TowerSide::Projective,
                "inj" => TowerSide::Injective,
                o => return Err(self.err_at(o, format!("expected `proj` or `inj`, found `{o}`"))),
            };
            let n = args[2]
                .parse()
                .map_err(|_| self.err_at(args[2], format!("bad step count `{}`", args[2])))?;
            Ok((side, n))
        };
        let cmd = match head {
            "homology" => {
                arity(1..=1)?;
                Command::Homology(self.target(s, first, false)?)
            }
            "resolve" => {
                arity(1..=2)?;
                let length = match args.get(1) {
                    Some(n) => Some(n.parse().map_err(|_| self.err_at(n, format!("bad length `{n}`")))?),
                    None => None,
                };
                Command::Resolve {
                    module: self.target(s, first, true)?,
                    length,
                }
            }
            "pd" | "id" | "fd" | "gpd" | "gid" | "gfd" => {
                arity(1..=1)?;
                Command::Dimension {
                    kind: dim_kind(head).expect("listed above"),
                    module: self.target(s, first, true)?,
                }
            }
            "depth" => {
                arity(1..=1)?;
                Command::Depth(self.target(s, first, false)?)
            }
            "adams" | "splice" => {
                arity(3..=3)?;
                let target = self.target(s, first, false)?;
                let (side, steps) = tower(&args)?;
                if head == "adams" {
                    Command::Adams { target, side, steps }
                } else {
                    Command::Splice { target, side, steps }
                }
            }
            "level" => {
                arity(2..=2)?;
                let class = LevelClass::parse(first).map_err(|e| self.err_at(first, e.to_string()))?;
                Command::Level {
                    class,
                    target: self.target(s, args[1], false)?,
                }
            }
            "bass" => {
                arity(1..=1)?;
                Command::Bass(self.target(s, first, false)?)
            }
            "corpus" => {
                arity(0..=0)?;
                Command::Corpus
            }
            _ => return Err(self.err_at(head, format!("unknown statement `{head}`"))),
        };
        Ok(cmd)
    }
}

fn dim_kind(s: &str) -> Option<DimKind> {
    Some(match s {
        "pd" => DimKind::Pd,
        "id" => DimKind::Id,
        "fd" => DimKind::Fd,
        "gpd" => DimKind::Gpd,
        "gid" => DimKind::Gid,
        "gfd" => DimKind::Gfd,
        _ => return None,
    })
}

fn side_name(s: TowerSide) -> &'static str {
    match s {
        TowerSide::Projective => "proj",
        TowerSide::Injective => "inj",
    }
}

fn print_matrix(m: &Matrix) -> String {
    let rows: Vec<String> = m.iter().map(|r| format!("[{}]", r.join(", "))).collect();
    format!("[{}]", rows.join(", "))
}

pub fn print_command(c: &Command) -> String {
    match c {
        Command::Homology(x) => format!("homology {x}"),
        Command::Resolve { module, length: None } => format!("resolve {module}"),
        Command::Resolve {
            module,
            length: Some(n),
        } => format!("resolve {module} {n}"),
        Command::Dimension { kind, module } => format!("{} {module}", kind.name().to_lowercase()),
        Command::Depth(x) => format!("depth {x}"),
        Command::Adams { target, side, steps } => format!("adams {target} {} {steps}", side_name(*side)),
        Command::Splice { target, side, steps } => format!("splice {target} {} {steps}", side_name(*side)),
        Command::Level { class, target } => format!("level {} {target}", class.name()),
        Command::Bass(x) => format!("bass {x}"),
        Command::Corpus => "corpus".into(),
    }
}

pub fn print_stmt(s: &Stmt) -> String {
    match s {
        Stmt::Ring { name, spec } => format!("ring {name} = {spec}"),
        Stmt::Module { name, ring, def } => {
            let body = match def {
                ModuleDef::Residue => "residue".to_string(),
                ModuleDef::Injective => "injective".to_string(),
                ModuleDef::Free(t) if t.iter().all(|&x| x == 0) => format!("free {}", t.len()),
                ModuleDef::Free(t) => {
                    let t: Vec<String> = t.iter().map(i32::to_string).collect();
                    format!("free({})", t.join(", "))
                }
                ModuleDef::Coker(m) => format!("coker {}", print_matrix(m)),
                ModuleDef::Actions(ms) => {
                    let ms: Vec<String> = ms.iter().map(print_matrix).collect();
                    format!("actions {}", ms.join(" "))
                }
            };
            format!("module {name} over {ring} = {body}")
        }
        Stmt::Complex { name, ring, def } => {
            let mut out = format!("complex {name} over {ring} : range {}..{}", def.hi, def.lo);
            for (i, m) in &def.terms {
                let _ = write!(out, " ; C{i} = {m}");
            }
            for (i, d) in &def.diffs {
                let _ = write!(out, " ; d{i} = {}", print_matrix(d));
            }
            out
        }
        Stmt::Command(c) => print_command(c),
    }
}

fn term_rank(def: &ComplexDef, i: i32) -> homlev::Result<usize> {
    let from_out = def.diffs.get(&i).map(|m| m[0].len());
    let from_in = def.diffs.get(&(i + 1)).map(|m| m.len());
    match (from_out, from_in) {
        (Some(a), Some(b)) if a != b => Err(homlev::Error::Shape(format!(
            "d{i} has {a} columns but d{} has {b} rows",
            i + 1
        ))),
        (Some(a), _) | (None, Some(a)) => Ok(a),
        (None, None) => Err(homlev::Error::Shape(format!(
            "the rank of C{i} cannot be inferred; give d{i}, d{} or C{i}",
            i + 1
        ))),
    }
}

fn entry(ring: &Ring, e: &str) -> homlev::Result<Poly> {
    parse_poly(e, ring.field, &ring.vars)
}

/// Twists making the columns homogeneous, read off the first nonzero entry.
fn infer_twists(target: &FgModule, mat: &Matrix, rank: usize) -> homlev::Result<Vec<i32>> {
    let ring = target.ring();
    let degs = target.generator_degrees();
    let mut out = vec![0; rank];
    for (j, t) in out.iter_mut().enumerate() {
        for (i, row) in mat.iter().enumerate() {
            let p = entry(ring, &row[j])?;
            if let (Some(d), Some(&g)) = (p.degree(&[0]), degs.get(i)) {
                *t = g + d;
                break;
            }
        }
    }
    Ok(out)
}

/// `Σ_i p_i · g_i` in `m`.
fn combination(m: &FgModule, gens: &[Elem], coeffs: &[Poly]) -> Elem {
    let mut acc = m.zero_elem();
    for (g, p) in gens.iter().zip(coeffs) {
        for t in p.terms() {
            let mut e = g.clone();
            for (v, &exp) in t.mono.0.iter().enumerate() {
                for _ in 0..exp {
                    e = m.act_var(v, &e);
                }
            }
            acc = m.add_elems(&acc, &m.scale_elem(&t.coef, &e));
        }
    }
    acc
}

fn matrix_map(ring: &Ring, src: &FgModule, tgt: &FgModule, mat: &Matrix) -> homlev::Result<ModuleMap> {
    let (r, c) = (tgt.num_generators(), src.num_generators());
    if mat.len() != r || mat[0].len() != c {
        return Err(homlev::Error::Shape(format!(
            "a {}x{} matrix between modules with {c} and {r} generators",
            mat.len(),
            mat[0].len()
        )));
    }
    let gens: Vec<Elem> = tgt.minimal_generators().into_iter().map(|g| g.0).collect();
    let images = (0..c)
        .map(|j| {
            let col: Vec<Poly> = mat.iter().map(|row| entry(ring, &row[j])).collect::<homlev::Result<_>>()?;
            Ok(combination(tgt, &gens, &col))
        })
        .collect::<homlev::Result<Vec<Elem>>>()?;
    ModuleMap::from_generator_images(src, tgt, &images)
}

fn build_module(ring: &Ring, def: &ModuleDef) -> homlev::Result<FgModule> {
    match def {
        ModuleDef::Residue => Ok(FgModule::residue_field(ring)),
        ModuleDef::Injective => FgModule::injective_hull(ring),
        ModuleDef::Free(t) => Ok(FgModule::free_twisted(ring, t)),
        ModuleDef::Coker(mat) => {
            let (r, c) = (mat.len(), mat[0].len());
            if ring.is_artin() {
                let f0 = FgModule::free(ring, r);
                let f1 = FgModule::free(ring, c);
                Ok(matrix_map(ring, &f1, &f0, mat)?.cokernel()?.target().clone())
            } else {
                let n = ring.nvars();
                let relations = (0..c)
                    .map(|j| {
                        let mut v = PolyVec::zero(ring.field, n);
                        for (i, row) in mat.iter().enumerate() {
                            v = v.add(&PolyVec::unit(ring.field, n, i).mul_poly(&entry(ring, &row[j])?));
                        }
                        Ok(v)
                    })
                    .collect::<homlev::Result<Vec<_>>>()?;
                FgModule::from_presentation(ring, vec![0; r], relations)
            }
        }
        ModuleDef::Actions(ms) => {
            let dim = ms[0].len();
            let mats = ms
                .iter()
                .map(|m| {
                    let rows = m
                        .iter()
                        .map(|row| row.iter().map(|e| Ok(scalar(&entry(ring, e)?, ring))).collect())
                        .collect::<homlev::Result<Vec<Vec<Scalar>>>>()?;
                    Ok(Mat::from_rows(ring.field, rows))
                })
                .collect::<homlev::Result<Vec<Mat>>>()?;
            if mats.iter().any(|m| m.rows() != dim || m.cols() != dim) {
                return Err(homlev::Error::Shape("action matrices must be square of one size".into()));
            }
            FgModule::from_actions(ring, dim, mats)
        }
    }
}

fn scalar(p: &Poly, ring: &Ring) -> Scalar {
    p.terms().first().map_or(ring.field.zero(), |t| t.coef.clone())
}
