//! Command line driver: axiom validation, lexicographic extensions,
//! directed-cycle search, the lemma scans and the two preservation
//! checkers, all emitting deterministic JSON.
//!
//! Exit codes: 0 clean, 1 violations found, 2 usage or input errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use omprog::ingest::{
    self, format_extension, generate_corpus, load_instance, om_from_vectors, CheckKind,
    CorpusParams, FileFormat, Scenario,
};
use omprog::lemmas::constellation::scan_extension_lemmas;
use omprog::lemmas::normalize::scan_path_lemmas;
use omprog::lemmas::theorems::{verify_theorem1, verify_theorem2, TheoremReport};
use omprog::lemmas::{scan_core_lemmas, ScanReport};
use omprog::program::admissible_pairs;
use omprog::{extend_lexicographic, LexSpec, OmError, OrientedMatroid, Program, Violation};

#[derive(Parser)]
#[command(
    name = "omprog",
    about = "Oriented matroid programming toolkit",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct InputArgs {
    /// Input file
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
    /// Input format (om|vec|chi); sniffed from the header when omitted
    #[arg(long, value_name = "FMT")]
    format: Option<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the cocircuit axioms and report every violation
    Validate {
        #[command(flatten)]
        io: InputArgs,
        /// Write the JSON report here instead of stdout
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Build a lexicographic extension and write the extended instance
    Extend {
        #[command(flatten)]
        io: InputArgs,
        /// Extension order with signs, 1-based, e.g. "[1+,2-]"
        #[arg(long, value_name = "SPEC")]
        lex: String,
        /// Write the extension here instead of stdout
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Search directed cycles in one pair program or in all of them
    Euclid {
        #[command(flatten)]
        io: InputArgs,
        /// Single program as "g,f", 1-based
        #[arg(long, value_name = "G,F")]
        pair: Option<String>,
        /// Every admissible pair
        #[arg(long = "all-pairs")]
        all_pairs: bool,
        /// Write the graph of the --pair program in DOT format
        #[arg(long, value_name = "FILE")]
        dot: Option<PathBuf>,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        /// Refuse instances with more elements than this
        #[arg(long = "max-n", value_name = "N", default_value_t = 12)]
        max_n: usize,
    },
    /// Run the lemma scans on the base and, with --lex, on the extension
    Lemmas {
        #[command(flatten)]
        io: InputArgs,
        #[arg(long, value_name = "SPEC")]
        lex: Option<String>,
        /// Restrict the report to one scan by name
        #[arg(long, value_name = "NAME")]
        lemma: Option<String>,
        /// Seed for the sampled reorientation masks
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        #[arg(long = "max-n", value_name = "N", default_value_t = 12)]
        max_n: usize,
    },
    /// Check the two extension preservation statements
    Theorems {
        #[command(flatten)]
        io: InputArgs,
        #[arg(long, value_name = "SPEC")]
        lex: String,
        /// Which statement to check
        #[arg(long, default_value = "both", value_parser = ["1", "2", "both"])]
        which: String,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        #[arg(long = "max-n", value_name = "N", default_value_t = 12)]
        max_n: usize,
    },
    /// Run the checks listed in a scenario file
    Scenario {
        /// Scenario file; its input path is resolved next to it
        file: PathBuf,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Print seeded corpus instances in vec format
    Corpus {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        count: usize,
        #[arg(long = "max-n", value_name = "N", default_value_t = 8)]
        max_n: usize,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
}

#[derive(Serialize)]
struct ValidateOut {
    command: &'static str,
    n: usize,
    rank: usize,
    cocircuits: usize,
    ok: bool,
    violations: Vec<Violation>,
}

#[derive(Serialize)]
struct PairOut {
    /// 1-based (g, f).
    pair: [usize; 2],
    euclidean: bool,
    witness_cycle: Option<Vec<String>>,
}

#[derive(Serialize)]
struct EuclidOut {
    command: &'static str,
    pairs: Vec<PairOut>,
    ok: bool,
}

#[derive(Serialize)]
struct LemmasOut {
    command: &'static str,
    checked: u64,
    skipped: u64,
    violations: u64,
    ok: bool,
    reports: Vec<ScanReport>,
}

#[derive(Serialize)]
struct TheoremsOut {
    command: &'static str,
    which: String,
    hypotheses_ok: bool,
    conclusions_ok: bool,
    reports: Vec<TheoremReport>,
}

#[derive(Serialize)]
struct ScenarioOut {
    command: &'static str,
    input: String,
    checks: Vec<serde_json::Value>,
}

fn main() -> ExitCode {
    if let Ok(v) = std::env::var("OM_EUCLID_THREADS") {
        if let Ok(k) = v.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(k.max(1))
                .build_global();
        }
    }
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn parse_format(s: &Option<String>) -> Result<Option<FileFormat>, OmError> {
    s.as_deref().map(str::parse).transpose()
}

fn load(io: &InputArgs) -> Result<OrientedMatroid, OmError> {
    load_instance(&io.input, parse_format(&io.format)?)
}

fn guard_size(om: &OrientedMatroid, max_n: usize) -> Result<(), OmError> {
    if om.n() > max_n {
        return Err(OmError::InvalidScenario(format!(
            "instance has {} elements, over the --max-n cap {}",
            om.n(),
            max_n
        )));
    }
    Ok(())
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), OmError> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn to_json<T: Serialize>(value: &T) -> Result<String, OmError> {
    let mut s = serde_json::to_string_pretty(value)
        .map_err(|e| OmError::InvalidScenario(format!("serialization failed: {e}")))?;
    s.push('\n');
    Ok(s)
}

fn run(cli: Cli) -> Result<u8, OmError> {
    match cli.cmd {
        Cmd::Validate { io, out } => {
            let om = load(&io)?;
            let (value, code) = do_validate(&om);
            emit(&out, &to_json(&value)?)?;
            Ok(code)
        }
        Cmd::Extend { io, lex, out } => {
            let om = load(&io)?;
            let text = do_extend(&om, &lex.parse()?)?;
            emit(&out, &text)?;
            Ok(0)
        }
        Cmd::Euclid {
            io,
            pair,
            all_pairs,
            dot,
            out,
            max_n,
        } => {
            let om = load(&io)?;
            guard_size(&om, max_n)?;
            let pair = pair.as_deref().map(ingest::parse_pair).transpose()?;
            let (value, code) = do_euclid(&om, pair, all_pairs, dot.as_deref())?;
            emit(&out, &to_json(&value)?)?;
            Ok(code)
        }
        Cmd::Lemmas {
            io,
            lex,
            lemma,
            seed,
            out,
            max_n,
        } => {
            let om = load(&io)?;
            guard_size(&om, max_n)?;
            let lex: Option<LexSpec> = lex.as_deref().map(str::parse).transpose()?;
            let (value, code) = do_lemmas(&om, lex.as_ref(), lemma.as_deref(), seed)?;
            emit(&out, &to_json(&value)?)?;
            Ok(code)
        }
        Cmd::Theorems {
            io,
            lex,
            which,
            out,
            max_n,
        } => {
            let om = load(&io)?;
            guard_size(&om, max_n)?;
            let (value, code) = do_theorems(&om, &lex.parse()?, &which)?;
            emit(&out, &to_json(&value)?)?;
            Ok(code)
        }
        Cmd::Scenario { file, out } => run_scenario(&file, &out),
        Cmd::Corpus {
            seed,
            count,
            max_n,
            out,
        } => {
            let params = CorpusParams {
                seed,
                count,
                max_n,
                ..CorpusParams::default()
            };
            let mut text = String::new();
            for cfg in generate_corpus(&params) {
                // every instance must satisfy the axioms it is offered for
                om_from_vectors(&cfg)?;
                text.push_str(&ingest::format_vec(&cfg));
                text.push('\n');
            }
            emit(&out, &text)?;
            Ok(0)
        }
    }
}

fn do_validate(om: &OrientedMatroid) -> (serde_json::Value, u8) {
    let report = om.validate();
    let ok = report.is_valid();
    let value = serde_json::to_value(ValidateOut {
        command: "validate",
        n: om.n(),
        rank: om.rank(),
        cocircuits: om.cocircuits().len(),
        ok,
        violations: report.violations,
    })
    .expect("validate report serializes");
    (value, u8::from(!ok))
}

fn do_extend(om: &OrientedMatroid, lex: &LexSpec) -> Result<String, OmError> {
    Ok(format_extension(&extend_lexicographic(om, lex)?))
}

fn do_euclid(
    om: &OrientedMatroid,
    pair: Option<(usize, usize)>,
    all_pairs: bool,
    dot: Option<&Path>,
) -> Result<(serde_json::Value, u8), OmError> {
    let pairs: Vec<(usize, usize)> = match (pair, all_pairs) {
        (Some(_), true) | (None, false) => {
            return Err(OmError::InvalidScenario(
                "pick exactly one of --pair and --all-pairs".into(),
            ));
        }
        (Some(p), false) => vec![p],
        (None, true) => admissible_pairs(om),
    };
    if dot.is_some() && pair.is_none() {
        return Err(OmError::InvalidScenario("--dot needs --pair".into()));
    }
    let mut records = Vec::with_capacity(pairs.len());
    for (g, f) in pairs {
        let prog = Program::new(om, g, f)?;
        if let Some(path) = dot {
            fs::write(path, prog.build_graph()?.to_dot())?;
        }
        let witness = prog.euclidean_witness()?;
        records.push(PairOut {
            pair: [g + 1, f + 1],
            euclidean: witness.is_none(),
            witness_cycle: witness.map(|c| c.iter().map(ToString::to_string).collect()),
        });
    }
    let ok = records.iter().all(|r| r.euclidean);
    let value = serde_json::to_value(EuclidOut {
        command: "euclid",
        pairs: records,
        ok,
    })
    .expect("euclid report serializes");
    Ok((value, u8::from(!ok)))
}

fn do_lemmas(
    om: &OrientedMatroid,
    lex: Option<&LexSpec>,
    filter: Option<&str>,
    seed: u64,
) -> Result<(serde_json::Value, u8), OmError> {
    let mut reports = scan_core_lemmas(om, seed, false)?;
    if let Some(spec) = lex {
        let ext = extend_lexicographic(om, spec)?;
        reports.extend(scan_extension_lemmas(&ext, false)?);
        reports.extend(scan_path_lemmas(&ext, false)?);
    }
    if let Some(name) = filter {
        if name != "all" {
            let names: Vec<String> = reports.iter().map(|r| r.lemma.clone()).collect();
            reports.retain(|r| r.lemma == name);
            if reports.is_empty() {
                return Err(OmError::InvalidScenario(format!(
                    "no scan named {name:?}; available: {}",
                    names.join(", ")
                )));
            }
        }
    }
    let checked = reports.iter().map(|r| r.checked).sum();
    let skipped = reports.iter().map(|r| r.skipped).sum();
    let violations = reports.iter().map(|r| r.violations).sum();
    let ok = violations == 0;
    let value = serde_json::to_value(LemmasOut {
        command: "lemmas",
        checked,
        skipped,
        violations,
        ok,
        reports,
    })
    .expect("lemma report serializes");
    Ok((value, u8::from(!ok)))
}

fn do_theorems(
    om: &OrientedMatroid,
    lex: &LexSpec,
    which: &str,
) -> Result<(serde_json::Value, u8), OmError> {
    let mut reports = Vec::new();
    if which != "2" {
        reports.push(verify_theorem1(om, lex)?);
    }
    if which != "1" {
        reports.push(verify_theorem2(om, lex)?);
    }
    let hypotheses_ok = reports
        .iter()
        .all(|r| r.instances.iter().all(|i| i.hypotheses_met));
    let conclusions_ok = reports
        .iter()
        .all(|r| r.instances.iter().all(|i| i.conclusion.satisfied));
    if !hypotheses_ok {
        eprintln!("warning: some hypothesis programs are not Euclidean; conclusions evaluated anyway");
    }
    let value = serde_json::to_value(TheoremsOut {
        command: "theorems",
        which: which.into(),
        hypotheses_ok,
        conclusions_ok,
        reports,
    })
    .expect("theorem report serializes");
    Ok((value, u8::from(!conclusions_ok)))
}

fn run_scenario(file: &Path, out: &Option<PathBuf>) -> Result<u8, OmError> {
    let scenario: Scenario = ingest::parse_scenario(&fs::read_to_string(file)?)?;
    let base = file.parent().unwrap_or(Path::new("."));
    let input = base.join(&scenario.input);
    let om = load_instance(&input, scenario.format)?;
    let seed = scenario.seed.unwrap_or(1);
    let mut checks = Vec::new();
    let mut code = 0u8;
    for kind in &scenario.checks {
        let (value, c) = run_check(&om, &scenario, *kind, seed)?;
        checks.push(value);
        code = code.max(c);
    }
    let value = ScenarioOut {
        command: "scenario",
        input: scenario.input.clone(),
        checks,
    };
    let text = to_json(&value)?;
    match (&scenario.out, out) {
        (_, Some(path)) => fs::write(path, text)?,
        (Some(path), None) => fs::write(base.join(path), text)?,
        (None, None) => print!("{text}"),
    }
    Ok(code)
}

fn run_check(
    om: &OrientedMatroid,
    sc: &Scenario,
    kind: CheckKind,
    seed: u64,
) -> Result<(serde_json::Value, u8), OmError> {
    match kind {
        CheckKind::Validate => Ok(do_validate(om)),
        CheckKind::Extend => {
            let spec = sc
                .lex
                .as_ref()
                .ok_or_else(|| OmError::InvalidScenario("extend needs a lex line".into()))?;
            let text = do_extend(om, spec)?;
            Ok((
                serde_json::json!({ "command": "extend", "text": text }),
                0,
            ))
        }
        CheckKind::Euclid => do_euclid(
            om,
            sc.pair,
            sc.all_pairs || sc.pair.is_none(),
            sc.dot.as_deref().map(Path::new),
        ),
        CheckKind::Lemmas => do_lemmas(om, sc.lex.as_ref(), None, seed),
        CheckKind::Theorems => {
            let spec = sc
                .lex
                .as_ref()
                .ok_or_else(|| OmError::InvalidScenario("theorems needs a lex line".into()))?;
            do_theorems(om, spec, "both")
        }
    }
}
