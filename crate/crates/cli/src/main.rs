//! Command-line front end: reads documents from files or `fixtures:NAME`,
//! writes reports to standard output.
//!
//! Exit codes: 0 yes/pass, 1 no/fail, 2 unknown, 3 usage error, 4 invalid
//! input or failed operation.

use std::fs;
use std::io::Read;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use ncofinal::cofinality::{
    cofinal, cosifted, limit_probe_with, multi_sifted_with, preservation_probe_with, product_preservation_probe_with,
    sifted, CheckOptions, Direction,
};
use ncofinal::colimit::{colim_finset, colim_in_category, lim_finset, reshape_build, reshape_colim_check};
use ncofinal::fincat::{comma, coslice, coslice_along, nerve, opposite, slice, slice_along, FinCategory, Functor};
use ncofinal::fixtures;
use ncofinal::harness::{determinism, reports_text, run_suite, DEFAULT_SEED, SUITES};
use ncofinal::io::{report_document, to_text, Document, FORMAT_VERSION};
use ncofinal::par::Exec;
use ncofinal::sset::SSet;
use ncofinal::topology::{connectivity, homology, weak_contractible, Verdict, DEFAULT_TIETZE_BUDGET};
use ncofinal::Error;

const EXIT_USAGE: u8 = 3;
const EXIT_INVALID: u8 = 4;

#[derive(Parser)]
#[command(name = "ncofinal", version, about = "Exact checks of n-cofinality and n-siftedness for finite categories")]
struct Cli {
    /// Run independent sub-checks on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a document and check its invariants.
    Validate { input: String },
    /// Nerve of a category, truncated at `--dim`.
    Nerve {
        category: String,
        #[arg(long)]
        dim: usize,
    },
    /// Comma category of two functors with a common codomain.
    Comma {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Slice over an object of a category, or along a functor.
    Slice(SliceArgs),
    /// Coslice under an object of a category, or along a functor.
    Coslice(SliceArgs),
    /// Colimit of a set-valued diagram.
    Colim { diagram: String },
    /// Limit of a set-valued diagram.
    Lim { diagram: String },
    /// Colimit of a functor into a finite category, searched inside it.
    ColimInCat { category: String, diagram: String },
    /// The reshaped diagram over the truncated simplex category.
    Reshape {
        diagram: String,
        #[arg(long)]
        level: usize,
        /// Compare its colimit with the direct colimit instead.
        #[arg(long)]
        check: bool,
    },
    /// Integral homology.
    Homology { sset: String },
    /// Whether a simplicial set is n-connective.
    Connectivity {
        sset: String,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, default_value_t = DEFAULT_TIETZE_BUDGET)]
        tietze_budget: usize,
    },
    /// Whether a simplicial set is weakly contractible.
    Contractible {
        sset: String,
        #[arg(long, default_value_t = DEFAULT_TIETZE_BUDGET)]
        tietze_budget: usize,
    },
    /// Whether a functor is left or right n-cofinal.
    Cofinal {
        functor: String,
        #[arg(long, value_enum)]
        side: Side,
        /// An integer, or `inf`.
        #[arg(long, allow_hyphen_values = true)]
        n: String,
        #[arg(long, default_value_t = DEFAULT_TIETZE_BUDGET)]
        tietze_budget: usize,
    },
    /// Whether a category is n-sifted.
    Sifted {
        category: String,
        /// An integer, or `inf`.
        #[arg(long, allow_hyphen_values = true)]
        n: String,
        #[arg(long)]
        cosifted: bool,
        /// Check tuples of this size instead of pairs.
        #[arg(long)]
        tuples: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_TIETZE_BUDGET)]
        tietze_budget: usize,
    },
    /// Randomized and exhaustive comparisons of colimits or limits.
    Probe {
        #[arg(value_enum)]
        kind: ProbeArg,
        /// A functor, or a category for `products`.
        input: String,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Print a built-in document.
    Fixtures {
        name: Option<String>,
        #[arg(long)]
        list: bool,
    },
    /// Run the seeded property suites.
    Harness {
        /// A single suite, 1 to 9.
        #[arg(long)]
        suite: Option<u32>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Args)]
struct SliceArgs {
    input: String,
    #[arg(long)]
    at: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum Side {
    Left,
    Right,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProbeArg {
    Preservation,
    Limits,
    Products,
}

enum Failure {
    Usage(String),
    Invalid(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Invalid(e)
    }
}

type Outcome = Result<(String, u8), Failure>;

fn verdict_code(v: Verdict) -> u8 {
    match v {
        Verdict::Yes => 0,
        Verdict::No => 1,
        Verdict::Unknown => 2,
    }
}

fn pass_code(ok: bool) -> u8 {
    if ok {
        0
    } else {
        1
    }
}

fn load(source: &str) -> Result<Document, Failure> {
    if let Some(name) = source.strip_prefix("fixtures:") {
        return Ok(fixtures::fixture(name)?);
    }
    let text = if source == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Usage(format!("cannot read standard input: {e}")))?;
        s
    } else {
        fs::read_to_string(source).map_err(|e| Failure::Usage(format!("cannot read `{source}`: {e}")))?
    };
    Ok(Document::parse(&text)?)
}

fn wrong_kind(source: &str, want: &str, got: &Document) -> Failure {
    Failure::Invalid(Error::Parse {
        location: format!("{source}: $.kind"),
        message: format!("expected {want}, found {}", got.kind()),
    })
}

fn load_category(source: &str) -> Result<Arc<FinCategory>, Failure> {
    match load(source)? {
        Document::Category(c) => Ok(c),
        d => Err(wrong_kind(source, "category", &d)),
    }
}

fn load_functor(source: &str) -> Result<Functor, Failure> {
    match load(source)? {
        Document::Functor(f) => Ok(f),
        d => Err(wrong_kind(source, "functor", &d)),
    }
}

fn load_sset(source: &str) -> Result<SSet, Failure> {
    match load(source)? {
        Document::SSet(s) => Ok(s),
        d => Err(wrong_kind(source, "sset", &d)),
    }
}

fn parse_level(n: &str) -> Result<Option<i64>, Failure> {
    match n {
        "inf" | "infinity" => Ok(None),
        _ => n
            .parse::<i64>()
            .map(Some)
            .map_err(|_| Failure::Usage(format!("`--n {n}` is neither an integer nor `inf`"))),
    }
}

fn run(cli: Cli) -> Outcome {
    let exec = if cli.sequential { Exec::Sequential } else { Exec::Auto };
    match cli.command {
        Command::Validate { input } => {
            let doc = load(&input)?;
            let problems = doc.validate();
            let report = json!({ "kind": doc.kind(), "valid": problems.is_empty(), "problems": problems });
            Ok((report_document("validate", &report), pass_code(problems.is_empty())))
        }
        Command::Nerve { category, dim } => {
            let c = load_category(&category)?;
            Ok((Document::SSet(nerve(&c, dim).sset).print(), 0))
        }
        Command::Comma { left, right } => {
            let (f, g) = (load_functor(&left)?, load_functor(&right)?);
            Ok((Document::Category(comma(&f, &g)?.category).print(), 0))
        }
        Command::Slice(a) => slice_command(&a, false),
        Command::Coslice(a) => slice_command(&a, true),
        Command::Colim { diagram } => match load(&diagram)? {
            Document::SetDiagram(d) => Ok((report_document("colimit", &colim_finset(&d)), 0)),
            d => Err(wrong_kind(&diagram, "set_diagram", &d)),
        },
        Command::Lim { diagram } => match load(&diagram)? {
            Document::SetDiagram(d) => Ok((report_document("limit", &lim_finset(&d)), 0)),
            d => Err(wrong_kind(&diagram, "set_diagram", &d)),
        },
        Command::ColimInCat { category, diagram } => {
            let c = load_category(&category)?;
            let d = load_functor(&diagram)?;
            if **d.codomain() != *c {
                return Err(Failure::Invalid(Error::ShapeMismatch(
                    "the diagram does not land in the given category".into(),
                )));
            }
            let found = colim_in_category(&d);
            let report = match &found {
                Some(w) => json!({
                    "exists": true,
                    "object": c.object_id(w.object),
                    "legs": w.legs.iter().map(|&m| c.morphism_id(m)).collect::<Vec<_>>(),
                }),
                None => json!({ "exists": false }),
            };
            Ok((report_document("colimit_in_category", &report), pass_code(found.is_some())))
        }
        Command::Reshape { diagram, level, check } => match load(&diagram)? {
            Document::SSetDiagram(f) => {
                if check {
                    let r = reshape_colim_check(&f)?;
                    let code = pass_code(r.holds);
                    Ok((report_document("reshape_check", &r), code))
                } else {
                    Ok((Document::SetDiagram(reshape_build(&f, level)?.diagram).print(), 0))
                }
            }
            d => Err(wrong_kind(&diagram, "sset_diagram", &d)),
        },
        Command::Homology { sset } => {
            let s = load_sset(&sset)?;
            Ok((report_document("homology", &json!({ "groups": homology(&s) })), 0))
        }
        Command::Connectivity { sset, n, tietze_budget } => {
            let s = load_sset(&sset)?;
            let r = connectivity(&s, n, tietze_budget);
            Ok((report_document("connectivity", &r), verdict_code(r.verdict)))
        }
        Command::Contractible { sset, tietze_budget } => {
            let s = load_sset(&sset)?;
            let r = weak_contractible(&s, tietze_budget);
            Ok((report_document("contractible", &r), verdict_code(r.verdict)))
        }
        Command::Cofinal {
            functor,
            side,
            n,
            tietze_budget,
        } => {
            let p = load_functor(&functor)?;
            let direction = match side {
                Side::Left => Direction::Left,
                Side::Right => Direction::Right,
            };
            let opts = CheckOptions { exec, tietze_budget };
            let r = cofinal(&p, direction, parse_level(&n)?, &opts)?;
            Ok((report_document("cofinality", &r), verdict_code(r.overall)))
        }
        Command::Sifted {
            category,
            n,
            cosifted: co,
            tuples,
            tietze_budget,
        } => {
            let c = load_category(&category)?;
            let level = parse_level(&n)?;
            let opts = CheckOptions { exec, tietze_budget };
            let r = match (tuples, co) {
                (Some(m), false) => multi_sifted_with(&c, level, m, &opts),
                (Some(m), true) => {
                    let mut r = multi_sifted_with(&Arc::new(opposite(&c)), level, m, &opts);
                    r.cosifted = true;
                    r
                }
                (None, false) => sifted(&c, level, &opts),
                (None, true) => cosifted(&c, level, &opts),
            };
            Ok((report_document("siftedness", &r), verdict_code(r.overall)))
        }
        Command::Probe {
            kind,
            input,
            trials,
            seed,
        } => {
            let r = match kind {
                ProbeArg::Preservation => preservation_probe_with(&load_functor(&input)?, trials, seed, exec)?,
                ProbeArg::Limits => limit_probe_with(&load_functor(&input)?, trials, seed, exec)?,
                ProbeArg::Products => product_preservation_probe_with(&load_category(&input)?, trials, seed, exec),
            };
            let code = pass_code(r.passed());
            Ok((report_document("probe", &r), code))
        }
        Command::Fixtures { name, list } => match (name, list) {
            (_, true) => {
                let v = json!({ "format_version": FORMAT_VERSION, "kind": "fixture_list", "names": fixtures::names() });
                Ok((to_text(&v), 0))
            }
            (Some(n), false) => Ok((fixtures::fixture(&n)?.print(), 0)),
            (None, false) => Err(Failure::Usage("give a fixture name or --list".into())),
        },
        Command::Harness { suite, seed } => {
            let reports = match suite {
                Some(9) => vec![run_suite(9, seed, exec).expect("suite 9")],
                Some(k) => vec![run_suite(k, seed, exec)
                    .ok_or_else(|| Failure::Usage(format!("suites are numbered 1 to {}", SUITES.len())))?],
                None => {
                    let mut all: Vec<_> = (1..=8).filter_map(|k| run_suite(k, seed, exec)).collect();
                    let det = determinism(&all, exec);
                    all.push(det);
                    all
                }
            };
            let ok = reports.iter().all(|r| r.passed);
            Ok((reports_text(&reports), pass_code(ok)))
        }
    }
}

fn slice_command(a: &SliceArgs, co: bool) -> Outcome {
    let (category, _) = match load(&a.input)? {
        Document::Category(c) => {
            let d = c.object(&a.at)?;
            if co {
                coslice(&c, d)?
            } else {
                slice(&c, d)?
            }
        }
        Document::Functor(p) => {
            let d = p.codomain().object(&a.at)?;
            if co {
                coslice_along(&p, d)?
            } else {
                slice_along(&p, d)?
            }
        }
        d => return Err(wrong_kind(&a.input, "category or functor", &d)),
    };
    Ok((Document::Category(category).print(), 0))
}

fn error_document(e: &Error) -> String {
    let location = match e {
        Error::Parse { location, .. } => Some(location.clone()),
        _ => None,
    };
    to_text(&json!({
        "format_version": FORMAT_VERSION,
        "kind": "error",
        "message": e.to_string(),
        "location": location,
    }))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Invalid(e)) => {
            print!("{}", error_document(&e));
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INVALID)
        }
    }
}
