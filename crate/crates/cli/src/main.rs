use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use loopforge::corpus::{corpus, corpus_entry, report, Labeling, LoopReport, CORPUS_NAMES};
use loopforge::finder::{solve, Budget, Mode, SearchProblem, Status};
use loopforge::steiner::{steiner_loop, z13_system, TripleSystem};
use loopforge::varieties::{block_length, pi_all, pi_k, pi_r, SuiteConfig, Word};
use loopforge::CayleyLoop;

/// Exit status for a completed run whose check or search came out negative.
const FAILED: u8 = 1;
/// Exit status for bad arguments or unreadable input.
const USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "loopforge",
    version,
    about = "Finite loop classification and model search"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct LoopSource {
    /// Loop table file.
    file: Option<PathBuf>,
    /// Built-in corpus loop.
    #[arg(long, value_name = "NAME")]
    corpus: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a loop and run the property suites that apply to it.
    Check {
        #[command(flatten)]
        source: LoopSource,
        /// Emit the JSON report.
        #[arg(long)]
        json: bool,
        /// Property that must hold; `name=false` for one that must not. Repeatable.
        #[arg(long = "expect", value_name = "PROPERTY[=BOOL]")]
        expect: Vec<String>,
    },
    /// Search for loops described by a problem file.
    Search {
        problem: PathBuf,
        #[arg(long, value_enum, default_value_t = SearchMode::First)]
        mode: SearchMode,
        /// Exit successfully when the problem turns out unsatisfiable.
        #[arg(long)]
        expect_unsat: bool,
    },
    /// Build the Steiner loop of a triple system.
    Steiner {
        /// The cyclic system on Z13.
        #[arg(long, conflicts_with = "file", required_unless_present = "file")]
        z13: bool,
        /// Triple system file.
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Evaluate products of a word.
    Words {
        #[command(flatten)]
        source: LoopSource,
        /// Comma-separated letters, in the loop's labels.
        #[arg(long, value_delimiter = ',', required = true)]
        word: Vec<String>,
        #[arg(long, value_enum)]
        ops: WordOp,
        /// Split point for `--ops pik`.
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
    /// Direct product of two loops.
    Product { first: PathBuf, second: PathBuf },
    /// Chein double of a group.
    Chein { group: PathBuf },
    /// Run the property suites over the corpus.
    Suite {
        /// Restrict to one suite.
        #[arg(long)]
        lemma: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SearchMode {
    First,
    Count,
    Iso,
}

#[derive(Clone, Copy, ValueEnum)]
enum WordOp {
    /// Every parenthesization.
    Pi,
    /// The right-associated product.
    Pir,
    /// The product split after position k.
    Pik,
    /// Block length.
    Blocks,
}

const SUITE_NAMES: [&str; 9] = [
    "c_loop_right_squares",
    "commutative_diassociative",
    "conjugate_powers",
    "opposite_invariance",
    "p_xyx",
    "premoufang",
    "three_associative_powers",
    "translation_shifts",
    "word_association",
];

fn read_loop(path: &Path) -> Result<CayleyLoop> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    CayleyLoop::parse_text(&text).with_context(|| format!("{}", path.display()))
}

/// The loop, its report name and its element labeling.
fn load(source: &LoopSource) -> Result<(CayleyLoop, String, Labeling)> {
    match (&source.file, &source.corpus) {
        (Some(path), _) => {
            let name = path.file_stem().map_or_else(
                || path.display().to_string(),
                |s| s.to_string_lossy().into_owned(),
            );
            Ok((read_loop(path)?, name, Labeling::Elements))
        }
        (None, Some(name)) => {
            let entry = corpus_entry(name).with_context(|| {
                format!(
                    "unknown corpus loop {name:?}; known: {}",
                    CORPUS_NAMES.join(", ")
                )
            })?;
            Ok((entry.cayley, entry.name.to_string(), entry.labeling))
        }
        (None, None) => bail!("give a loop file or --corpus"),
    }
}

fn parse_expectation(s: &str) -> Result<(loopforge::Property, bool)> {
    let (name, want) = match s.split_once('=') {
        Some((n, v)) => (
            n,
            v.parse::<bool>()
                .with_context(|| format!("bad value in {s:?}"))?,
        ),
        None => (s, true),
    };
    let p = loopforge::Property::from_name(name)
        .with_context(|| format!("unknown property {name:?}"))?;
    Ok((p, want))
}

fn print_report(r: &LoopReport, labeling: Labeling) {
    println!("loop {} of order {}", r.name, r.order);
    for (p, v) in r.properties.iter() {
        let mut line = format!("  {:<18} {}", p.name(), v.holds);
        if let Some(w) = &v.witness {
            let elems: Vec<String> = w.iter().map(i64::to_string).collect();
            line.push_str(&format!("  witness {}", elems.join(" ")));
            if labeling == Labeling::SteinerPoints {
                let labels: Vec<String> = w.iter().map(|&x| labeling.label(x as usize)).collect();
                line.push_str(&format!(" (points {})", labels.join(" ")));
            }
        }
        println!("{line}");
    }
    for (name, s) in &r.suites {
        println!("  suite {name}: {} passed, {} failed", s.passed, s.failed);
        if let Some(f) = &s.first_failure {
            println!("    first failure: {} at {:?}", f.case, f.values);
        }
    }
}

fn check(source: &LoopSource, json: bool, expect: &[String]) -> Result<ExitCode> {
    let expectations = expect
        .iter()
        .map(|s| parse_expectation(s))
        .collect::<Result<Vec<_>>>()?;
    let (l, name, labeling) = load(source)?;
    let r = report(&name, &l, &SuiteConfig::default())?;
    if json {
        print!("{}", r.to_json());
    } else {
        print_report(&r, labeling);
    }
    let mut problems: Vec<String> = r.properties.violations();
    for (suite, s) in &r.suites {
        if s.failed > 0 {
            problems.push(format!("suite {suite} failed"));
        }
    }
    for (p, want) in expectations {
        if r.properties.holds(p) != want {
            problems.push(format!("{p} is {}, expected {want}", !want));
        }
    }
    for p in &problems {
        eprintln!("check failed: {p}");
    }
    Ok(if problems.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(FAILED)
    })
}

fn search(path: &Path, mode: SearchMode, expect_unsat: bool) -> Result<ExitCode> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut problem = SearchProblem::parse(&text).with_context(|| format!("{}", path.display()))?;
    problem.mode = match mode {
        SearchMode::First => Mode::First,
        SearchMode::Count => Mode::Count,
        SearchMode::Iso => Mode::EnumerateUpToIso,
    };
    if let Ok(s) = std::env::var("LOOPFORGE_BUDGET") {
        problem.budget = Budget::parse(&s)
            .with_context(|| format!("LOOPFORGE_BUDGET={s:?} is not <nodes>[:<seconds>]"))?;
    }
    let out = solve(&problem)?;
    for (i, m) in out.models.iter().enumerate() {
        if i > 0 {
            println!();
        }
        print!("{}", m.to_text());
    }
    if matches!(mode, SearchMode::Count | SearchMode::Iso) {
        println!("# count {}", out.count);
    }
    let s = &out.stats;
    eprintln!(
        "status {:?}, nodes {}, propagations {}, elapsed {:.3?}",
        out.status, s.nodes, s.propagations, s.elapsed
    );
    if let Some(reason) = &out.unsat_reason {
        eprintln!("unsat: {reason}");
    }
    let ok = match out.status {
        Status::Sat => !expect_unsat,
        Status::Unsat => expect_unsat,
        Status::BudgetExhausted => false,
    };
    Ok(if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(FAILED)
    })
}

fn steiner(z13: bool, file: Option<&Path>) -> Result<ExitCode> {
    let ts = match file {
        Some(path) if !z13 => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            TripleSystem::parse_text(&text).with_context(|| format!("{}", path.display()))?
        }
        _ => z13_system(),
    };
    print!("{}", steiner_loop(&ts)?.to_text());
    Ok(ExitCode::SUCCESS)
}

fn words(source: &LoopSource, letters: &[String], op: WordOp, k: usize) -> Result<ExitCode> {
    let (l, _, labeling) = load(source)?;
    let entries = letters
        .iter()
        .map(|s| {
            labeling
                .element(s.trim())
                .filter(|&x| x < l.order())
                .with_context(|| format!("{s:?} is not an element"))
        })
        .collect::<Result<Vec<_>>>()?;
    let w = Word::new(entries);
    match op {
        WordOp::Pi => {
            let set: BTreeSet<usize> = pi_all(&l, &w)?;
            let labels: Vec<String> = set.into_iter().map(|x| labeling.label(x)).collect();
            println!("{{{}}}", labels.join(", "));
        }
        WordOp::Pir => println!("{}", labeling.label(pi_r(&l, &w)?)),
        WordOp::Pik => println!("{}", labeling.label(pi_k(&l, &w, k)?)),
        WordOp::Blocks => println!("{}", block_length(&l, &w)?),
    }
    Ok(ExitCode::SUCCESS)
}

fn suite(lemma: Option<&str>) -> Result<ExitCode> {
    if let Some(name) = lemma {
        if !SUITE_NAMES.contains(&name) {
            bail!("unknown suite {name:?}; known: {}", SUITE_NAMES.join(", "));
        }
    }
    let cfg = SuiteConfig::default();
    let mut failed = 0;
    for entry in corpus() {
        let r = entry.report(&cfg)?;
        for (name, s) in r
            .suites
            .iter()
            .filter(|(n, _)| lemma.is_none_or(|l| l == n.as_str()))
        {
            let verdict = if s.failed == 0 { "ok" } else { "FAILED" };
            println!(
                "{:<22} {:<28} {verdict} ({} passed, {} failed)",
                entry.name, name, s.passed, s.failed
            );
            if s.failed > 0 {
                failed += 1;
            }
        }
        if lemma.is_none() {
            for v in r.properties.violations() {
                println!("{:<22} violation: {v}", entry.name);
                failed += 1;
            }
        }
    }
    Ok(if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(FAILED)
    })
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Check {
            source,
            json,
            expect,
        } => check(&source, json, &expect),
        Command::Search {
            problem,
            mode,
            expect_unsat,
        } => search(&problem, mode, expect_unsat),
        Command::Steiner { z13, file } => steiner(z13, file.as_deref()),
        Command::Words {
            source,
            word,
            ops,
            k,
        } => words(&source, &word, ops, k),
        Command::Product { first, second } => {
            print!(
                "{}",
                read_loop(&first)?
                    .direct_product(&read_loop(&second)?)
                    .to_text()
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Chein { group } => {
            let g = read_loop(&group)?;
            match g.chein_double() {
                Ok(m) => {
                    print!("{}", m.to_text());
                    Ok(ExitCode::SUCCESS)
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    Ok(ExitCode::from(FAILED))
                }
            }
        }
        Command::Suite { lemma } => suite(lemma.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    run(cli).unwrap_or_else(|e| {
        eprintln!("error: {e:#}");
        ExitCode::from(USAGE)
    })
}
