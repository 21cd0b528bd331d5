use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::ValueEnum;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tsh_core::algebra::{validate_algebra, FiniteTshAlgebra};
use tsh_core::duality::{embedding_h, embedding_k};
use tsh_core::frame::{enumerate_frames, validate_frame, TshFrame};
use tsh_core::io::{format_algebra, format_frame, format_model, parse_algebra, parse_frame};
use tsh_core::logic::{self, parse_proof, random_formula, Formula, Verdict};
use tsh_core::report::{LawCode, Report};
use tsh_core::semantics::{algebra_refutation, find_countermodel, frame_valid};
use tsh_core::Error;

/// Largest frame size searched without `--force`.
pub const MAX_STATES: usize = 4;
/// Most distinct variables in a formula checked on frames without `--force`.
pub const MAX_VARS: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u8)]
pub enum Status {
    Ok = 0,
    Violation = 1,
    ParseError = 2,
    ResourceBound = 3,
}

#[derive(Debug)]
pub struct Outcome {
    pub status: Status,
    /// A structure file produced by the command.
    pub artifact: Option<String>,
    pub human: String,
    pub records: String,
    /// Lines for standard error.
    pub diagnostics: Vec<String>,
}

impl Outcome {
    fn new(status: Status) -> Self {
        Outcome {
            status,
            artifact: None,
            human: String::new(),
            records: String::new(),
            diagnostics: Vec::new(),
        }
    }

    fn failure(status: Status, message: String) -> Self {
        let mut out = Outcome::new(status);
        out.diagnostics.push(message);
        out
    }

    fn from_report<C: LawCode>(report: &Report<C>, ok: String) -> Self {
        let mut out = Outcome::new(if report.is_empty() {
            Status::Ok
        } else {
            Status::Violation
        });
        out.human = if report.is_empty() {
            ok
        } else {
            format!("{report}{} violated law(s)\n", report.len())
        };
        out.records = report.records();
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Direction {
    AlgebraToFrame,
    FrameToAlgebra,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Mode {
    Frames,
    Countermodel,
    Algebra(PathBuf),
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "frames" => Ok(Mode::Frames),
            "countermodel" => Ok(Mode::Countermodel),
            _ => match s.strip_prefix("algebra:") {
                Some(path) if !path.is_empty() => Ok(Mode::Algebra(PathBuf::from(path))),
                _ => Err(format!(
                    "expected `frames`, `countermodel` or `algebra:PATH`, got `{s}`"
                )),
            },
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Bounds {
    pub max_states: usize,
    pub max_vars: usize,
    pub force: bool,
}

impl Bounds {
    fn check(&self, states: usize, vars: usize) -> Result<(), Outcome> {
        if self.force {
            return Ok(());
        }
        if states > self.max_states {
            return Err(Outcome::failure(
                Status::ResourceBound,
                format!(
                    "size {states} exceeds the bound {}; pass --force to search anyway",
                    self.max_states
                ),
            ));
        }
        if vars > self.max_vars {
            return Err(Outcome::failure(
                Status::ResourceBound,
                format!(
                    "{vars} variables exceed the bound {}; pass --force to search anyway",
                    self.max_vars
                ),
            ));
        }
        Ok(())
    }
}

/// Maps a library error to an outcome, with `origin` naming the input.
fn error_outcome(origin: &str, e: Error) -> Outcome {
    match e {
        Error::Syntax {
            line,
            column,
            message,
        } => Outcome::failure(
            Status::ParseError,
            format!("{origin}:{line}:{column}: {message}"),
        ),
        Error::InvalidInput(msg) | Error::UnboundVariable(msg) => {
            Outcome::failure(Status::ParseError, format!("{origin}: {msg}"))
        }
        Error::Consistency(msg) => Outcome::failure(Status::Violation, format!("{origin}: {msg}")),
    }
}

fn read(path: &Path) -> Result<String, Outcome> {
    fs::read_to_string(path).map_err(|e| {
        Outcome::failure(
            Status::ParseError,
            format!("cannot read {}: {e}", path.display()),
        )
    })
}

fn load_algebra(path: &Path) -> Result<FiniteTshAlgebra, Outcome> {
    parse_algebra(&read(path)?).map_err(|e| error_outcome(&path.display().to_string(), e))
}

fn load_frame(path: &Path) -> Result<TshFrame, Outcome> {
    parse_frame(&read(path)?).map_err(|e| error_outcome(&path.display().to_string(), e))
}

fn load_formula(text: &str) -> Result<Formula, Outcome> {
    logic::parse(text).map_err(|e| error_outcome("formula", e))
}

fn count(n: usize, noun: &str) -> String {
    if n == 1 {
        format!("1 {noun}")
    } else {
        format!("{n} {noun}s")
    }
}

fn members(s: impl Iterator<Item = usize>) -> String {
    s.map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn check_algebra(path: &Path) -> Outcome {
    let w = match load_algebra(path) {
        Ok(w) => w,
        Err(out) => return out,
    };
    Outcome::from_report(
        &validate_algebra(&w),
        format!("ok: TSH-algebra with {}\n", count(w.size(), "element")),
    )
}

pub fn check_frame(path: &Path) -> Outcome {
    let k = match load_frame(path) {
        Ok(k) => k,
        Err(out) => return out,
    };
    Outcome::from_report(
        &validate_frame(&k),
        format!("ok: TSH-frame with {}\n", count(k.size(), "state")),
    )
}

fn invalid_input<C: LawCode>(report: &Report<C>, what: &str) -> Outcome {
    let mut out = Outcome::from_report(report, String::new());
    out.human = format!("input is not a {what}:\n{}", out.human);
    out
}

pub fn dualize(path: &Path, direction: Direction) -> Outcome {
    let origin = path.display().to_string();
    let mut human = String::new();
    let mut records = String::new();
    let (artifact, report_ok, report_text, report_records) = match direction {
        Direction::AlgebraToFrame => {
            let w = match load_algebra(path) {
                Ok(w) => w,
                Err(out) => return out,
            };
            let report = validate_algebra(&w);
            if !report.is_empty() {
                return invalid_input(&report, "TSH-algebra");
            }
            let e = match embedding_h(&w) {
                Ok(e) => e,
                Err(err) => return error_outcome(&origin, err),
            };
            for (i, f) in e.canonical.filter_index.iter().enumerate() {
                let _ = writeln!(human, "# state {i} = prime filter {}", f.members());
                let _ = writeln!(records, "state\t{i} {}", members(f.members().members()));
            }
            for (a, &j) in e.map.iter().enumerate() {
                let _ = writeln!(
                    human,
                    "# h({a}) = {} (element {j} of the complex algebra)",
                    e.complex.set_index[j]
                );
                let _ = writeln!(records, "h\t{a} {j}");
            }
            (
                format_frame(&e.canonical.frame),
                e.report.is_empty(),
                e.report.to_string(),
                e.report.records(),
            )
        }
        Direction::FrameToAlgebra => {
            let k = match load_frame(path) {
                Ok(k) => k,
                Err(out) => return out,
            };
            let report = validate_frame(&k);
            if !report.is_empty() {
                return invalid_input(&report, "TSH-frame");
            }
            let e = match embedding_k(&k) {
                Ok(e) => e,
                Err(err) => return error_outcome(&origin, err),
            };
            for (i, s) in e.complex.set_index.iter().enumerate() {
                let _ = writeln!(human, "# element {i} = up-set {s}");
                let _ = writeln!(records, "element\t{i} {}", members(s.members()));
            }
            for (x, &j) in e.map.iter().enumerate() {
                let _ = writeln!(
                    human,
                    "# k({x}) = {} (state {j} of the canonical frame)",
                    e.canonical.filter_index[j].members()
                );
                let _ = writeln!(records, "k\t{x} {j}");
            }
            for (x, y) in &e.collisions {
                let _ = writeln!(
                    human,
                    "# k identifies the order-equivalent states {x} and {y}"
                );
                let _ = writeln!(records, "collision\t{x} {y}");
            }
            (
                format_algebra(&e.complex.algebra),
                e.report.is_empty(),
                e.report.to_string(),
                e.report.records(),
            )
        }
    };
    let name = match direction {
        Direction::AlgebraToFrame => "h",
        Direction::FrameToAlgebra => "k",
    };
    for line in report_text.lines() {
        let _ = writeln!(human, "# embedding {name}: {line}");
    }
    records.push_str(&report_records);
    let mut out = Outcome::new(if report_ok {
        Status::Ok
    } else {
        Status::Violation
    });
    out.artifact = Some(artifact);
    out.human = human;
    out.records = records;
    out
}

pub fn parse_formulas(texts: &[String]) -> Outcome {
    let mut out = Outcome::new(Status::Ok);
    for (i, text) in texts.iter().enumerate() {
        match logic::parse(text) {
            Ok(f) => {
                let _ = writeln!(out.human, "{f}");
                let _ = writeln!(out.records, "{f}");
            }
            Err(e) => {
                let failed = error_outcome(&format!("argument {}", i + 1), e);
                out.status = failed.status;
                out.diagnostics.extend(failed.diagnostics);
            }
        }
    }
    out
}

pub fn random_formulas(count: usize, seed: u64, depth: usize, vars: &[String]) -> Outcome {
    let names: Vec<&str> = vars
        .iter()
        .map(String::as_str)
        .filter(|v| !v.is_empty())
        .collect();
    if let Some(bad) = names
        .iter()
        .find(|v| !matches!(logic::parse(v), Ok(Formula::Var(_))))
    {
        return Outcome::failure(
            Status::ParseError,
            format!("`{bad}` is not a variable name"),
        );
    }
    if names.is_empty() {
        return Outcome::failure(Status::ParseError, "no variable names given".into());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Outcome::new(Status::Ok);
    for _ in 0..count {
        let _ = writeln!(out.human, "{}", random_formula(&mut rng, depth, &names));
    }
    out.records = out.human.clone();
    out
}

pub fn check_proof(path: &Path) -> Outcome {
    let text = match read(path) {
        Ok(t) => t,
        Err(out) => return out,
    };
    let steps = match parse_proof(&text) {
        Ok(s) => s,
        Err(e) => return error_outcome(&path.display().to_string(), e),
    };
    match logic::check_proof(&steps) {
        Verdict::Accepted => {
            let mut out = Outcome::new(Status::Ok);
            out.human = format!("accepted: {}\n", count(steps.len(), "step"));
            out.records = format!("accepted\t{}\n", steps.len());
            out
        }
        Verdict::Rejected(r) => {
            let mut out = Outcome::new(Status::Violation);
            out.human = format!("rejected at step {}: {}\n", r.step, r.reason);
            out.records = format!("rejected\t{}\n", r.step);
            out
        }
    }
}

pub fn validity(text: &str, mode: &Mode, max_size: usize, bounds: Bounds) -> Outcome {
    let f = match load_formula(text) {
        Ok(f) => f,
        Err(out) => return out,
    };
    let vars = f.variables().len();
    match mode {
        Mode::Frames => {
            if let Err(out) = bounds.check(max_size, vars) {
                return out;
            }
            let frames = enumerate_frames(max_size, true);
            let failing: Vec<usize> = (0..frames.len())
                .filter(|&i| !frame_valid(&frames[i], &f))
                .collect();
            let mut out = Outcome::new(if failing.is_empty() {
                Status::Ok
            } else {
                Status::Violation
            });
            match failing.first() {
                None => {
                    out.human = format!(
                        "holds on all {} frames up to size {max_size} (one per isomorphism class)\n",
                        frames.len()
                    );
                }
                Some(&first) => {
                    out.human = format!(
                        "fails on {} of {} frames up to size {max_size}; the first is frame {first}\n",
                        failing.len(),
                        frames.len()
                    );
                    out.artifact = Some(format_frame(&frames[first]));
                }
            }
            out.records = failing
                .iter()
                .map(|i| format!("fails-on-frame\t{i}\n"))
                .collect();
            out
        }
        Mode::Countermodel => {
            if let Err(out) = bounds.check(max_size, vars) {
                return out;
            }
            match find_countermodel(&f, max_size) {
                None => {
                    let mut out = Outcome::new(Status::Ok);
                    out.human = format!("no countermodel up to size {max_size}\n");
                    out
                }
                Some(cm) => {
                    let mut out = Outcome::new(Status::Violation);
                    out.artifact = Some(format_model(&cm.model));
                    out.human = format!(
                        "countermodel on {}, refuted at state {}\n",
                        count(cm.model.frame().size(), "state"),
                        cm.state
                    );
                    out.records = format!("countermodel\t{}\n", cm.state);
                    out
                }
            }
        }
        Mode::Algebra(path) => {
            let w = match load_algebra(path) {
                Ok(w) => w,
                Err(out) => return out,
            };
            let report = validate_algebra(&w);
            if !report.is_empty() {
                return invalid_input(&report, "TSH-algebra");
            }
            match algebra_refutation(&w, &f) {
                None => {
                    let mut out = Outcome::new(Status::Ok);
                    out.human = format!(
                        "evaluates to the top element {} under all {}\n",
                        w.top(),
                        count(w.size().pow(vars as u32), "valuation")
                    );
                    out
                }
                Some(valuation) => refuted_in_algebra(&w, &f, &valuation),
            }
        }
    }
}

fn refuted_in_algebra(
    w: &FiniteTshAlgebra,
    f: &Formula,
    valuation: &BTreeMap<String, usize>,
) -> Outcome {
    let value =
        tsh_core::semantics::algebra_eval(w, valuation, f).expect("valuation covers the formula");
    let assignment: Vec<String> = valuation
        .iter()
        .map(|(v, x)| format!("{v} = {x}"))
        .collect();
    let mut out = Outcome::new(Status::Violation);
    out.human = format!(
        "evaluates to {value}, not the top element {}, under {}\n",
        w.top(),
        assignment.join(", ")
    );
    out.records = format!("refuted\t{}\n", members(valuation.values().copied()));
    out
}

pub fn enumerate(max_size: usize, labeled: bool, bounds: Bounds) -> Outcome {
    if let Err(out) = bounds.check(max_size, 0) {
        return out;
    }
    let frames = enumerate_frames(max_size, !labeled);
    let mut artifact = String::new();
    for (i, k) in frames.iter().enumerate() {
        let _ = writeln!(artifact, "# frame {i}\n{}", format_frame(k));
    }
    let mut out = Outcome::new(Status::Ok);
    out.artifact = Some(artifact);
    let kind = if labeled {
        "labeled"
    } else {
        "one per isomorphism class"
    };
    out.human = format!(
        "# {} up to size {max_size} ({kind})\n",
        count(frames.len(), "frame")
    );
    out.records = format!("count\t{}\n", frames.len());
    out
}
