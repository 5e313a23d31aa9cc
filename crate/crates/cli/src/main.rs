//! `mindchange`: ranks, guessers and difference-hierarchy conversions for
//! parity-automaton sets of infinite words.
//!
//! Exit status: 0 when the checked property holds, 1 when a counterexample
//! or failed certificate is reported, 2 on unreadable or invalid input.

mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use mindchange::corpus::canonical_up_words;
use mindchange::diff_hierarchy::reroot_zero;
use mindchange::format::{self, ParsedGuesser};
use mindchange::oracle::{cross_validate, exhaustive_tables, sampled_tables, TruncatedTree};
use mindchange::{
    chain_to_guesser, classify, cylinder_simulator, d_theta, divergence_witness, equivalent, guesser_to_chain,
    last_bit_guesser, limsup_liminf_check, remainder_chain, synthesize, verify_based, ClopenTable, MooreGuesser,
    OpenChain, ParitySet, Side, UpWord,
};

use report::{Format, Report};

#[derive(Parser)]
#[command(name = "mindchange", version, about = "Mind-change ranks and guessers for parity-automaton sets")]
struct Cli {
    /// Output style.
    #[arg(long, value_enum, global = true, default_value = "kv")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Guessability, mind-change rank and stabilization stage of a set.
    Rank {
        automaton: PathBuf,
        /// Also print the state chain.
        #[arg(long)]
        trace: bool,
    },
    /// The remainder chain on states.
    Remainder {
        automaton: PathBuf,
        #[arg(long)]
        trace: bool,
    },
    /// The canonical guesser with its mind-change bound.
    Synthesize {
        automaton: PathBuf,
        /// Write the guesser here instead of standard output.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Checks that a guesser guesses a set.
    Verify {
        guesser: PathBuf,
        automaton: PathBuf,
        #[command(flatten)]
        words: WordSource,
    },
    /// A point on which a guesser fails, if any.
    Witness { guesser: PathBuf, automaton: PathBuf },
    /// Difference-hierarchy sets from open chains and back.
    #[command(subcommand)]
    Diff(DiffCommand),
    /// Places a set or its complement in the difference hierarchy.
    Classify {
        automaton: PathBuf,
        /// Write the witnessing chain as `<stem>.chain` plus member files.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Converts a set to a chain or a chain to a bounded guesser, with a certificate.
    Convert {
        input: PathBuf,
        #[arg(long, value_enum)]
        direction: Direction,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Guessers reading membership bits of a family of sets.
    #[command(subcommand)]
    Based(BasedCommand),
    /// Brute-force cross-validation over clopen tables.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Graphviz rendering of an automaton or guesser file.
    ExportDot {
        input: PathBuf,
        /// Read the input as a guesser.
        #[arg(long)]
        guesser: bool,
    },
}

#[derive(Subcommand)]
enum DiffCommand {
    /// `D_theta` of a chain file, as an automaton.
    Build {
        chain: PathBuf,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// The chain `{f : H(f) <= eta}` of a ranked guesser with root output 0.
    Extract {
        guesser: PathBuf,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum BasedCommand {
    /// Checks a bit guesser against a set through a family's membership bits.
    Verify {
        family: PathBuf,
        automaton: PathBuf,
        /// Bit guesser file; the last-bit guesser by default.
        #[arg(long, conflicts_with = "simulate")]
        guesser: Option<PathBuf>,
        /// Symbol guesser to run on decoded cylinder-family bits.
        #[arg(long)]
        simulate: Option<PathBuf>,
        #[command(flatten)]
        words: WordSource,
    },
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Compares the brute-force oracle with the automaton pipeline.
    Check {
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 3)]
        d: usize,
        /// Check this many random tables instead of all of them.
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Longest word compared; `d + 1` by default.
        #[arg(long)]
        max_len: Option<usize>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Direction {
    ToChain,
    ToGuesser,
}

#[derive(Args)]
struct WordSource {
    /// File of `u(v)` literals to check.
    #[arg(long)]
    words: Option<PathBuf>,
    /// Number of canonical points to check when no file is given.
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    budget: u64,
}

impl WordSource {
    fn load(&self, set: &ParitySet) -> Result<Vec<UpWord>> {
        let words = match &self.words {
            Some(path) => in_file(path, format::read_text(path).and_then(|t| format::parse_up_words(&t)))?,
            None => canonical_up_words(set.alphabet(), self.budget as usize),
        };
        if let Some(w) = words.iter().find(|w| !w.fits(set.alphabet())) {
            bail!("point {w} is not over the set's alphabet");
        }
        Ok(words)
    }
}

/// A computed answer; `holds == false` maps to exit 1. Input problems are
/// errors instead and map to exit 2.
struct Outcome {
    report: Report,
    holds: bool,
}

fn holds(report: Report) -> Outcome {
    Outcome { report, holds: true }
}

/// Attaches the file name to parse errors; I/O errors already carry it.
fn in_file<T>(path: &Path, r: mindchange::Result<T>) -> Result<T> {
    match r {
        Err(e @ mindchange::Error::Io { .. }) => Err(e.into()),
        r => r.with_context(|| path.display().to_string()),
    }
}

fn load_set(path: &Path) -> Result<ParitySet> {
    let parsed = in_file(path, format::read_automaton(path))?;
    if parsed.completed {
        eprintln!("note: {}: completed partial transitions with a rejecting sink", path.display());
    }
    Ok(parsed.set)
}

fn load_guesser(path: &Path) -> Result<ParsedGuesser> {
    in_file(path, format::read_guesser(path))
}

fn load_chain(path: &Path) -> Result<OpenChain> {
    in_file(path, format::read_chain(path))
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

/// Writes a chain as `<output>` plus member automata next to it.
fn write_chain(chain: &OpenChain, output: &Path) -> Result<()> {
    let stem = output
        .file_stem()
        .and_then(|s| s.to_str())
        .context("chain output needs a file name")?;
    let (text, members) = format::write_chain(chain, stem);
    let dir = output.parent().unwrap_or(Path::new("."));
    for (name, body) in members {
        write_file(&dir.join(name), &body)?;
    }
    write_file(output, &text)
}

fn set_names(mask: &[bool]) -> String {
    let states: Vec<String> = (0..mask.len()).filter(|&q| mask[q]).map(|q| q.to_string()).collect();
    format!("{{{}}}", states.join(","))
}

fn rank(path: &Path, trace: bool) -> Result<Outcome> {
    let s = load_set(path)?;
    let t = remainder_chain(&s);
    let mut r = Report::default();
    r.kv("guessable", t.is_guessable());
    match t.mind_change_rank() {
        Some(o) => r.kv("rank", o),
        None => r.kv("rank", "NOT_GUESSABLE"),
    };
    r.kv("alpha_S", t.alpha());
    if trace {
        for (i, stage) in t.chain().iter().enumerate() {
            r.kv(&format!("Q[{i}]"), set_names(stage));
        }
    }
    Ok(holds(r))
}

fn remainder(path: &Path, trace: bool) -> Result<Outcome> {
    let s = load_set(path)?;
    let t = remainder_chain(&s);
    let mut r = Report::default();
    if trace {
        for (i, stage) in t.chain().iter().enumerate() {
            r.line(format!("Q[{i}] = {}", set_names(stage)));
        }
    }
    r.line(format!("alpha(S) = {}", t.alpha()));
    r.line(format!("S_infty_empty = {}", t.is_guessable()));
    let finite_only: Vec<String> = t.finite_only_stages().iter().map(|b| b.to_string()).collect();
    r.line(format!("finite_only_stages = {{{}}}", finite_only.join(",")));
    Ok(holds(r))
}

fn synthesize_cmd(path: &Path, output: Option<&Path>) -> Result<Outcome> {
    let s = load_set(path)?;
    let mut r = Report::default();
    let rg = match synthesize(&s) {
        Ok(rg) => rg,
        Err(mindchange::Error::NotGuessable) => {
            r.kv("guessable", false);
            return Ok(Outcome { report: r, holds: false });
        }
        Err(e) => return Err(e.into()),
    };
    let text = format::write_ranked_guesser(&rg);
    match output {
        Some(out) => {
            write_file(out, &text)?;
            r.kv("guessable", true)
                .kv("states", rg.guesser().num_states())
                .kv("codomain", rg.codomain())
                .kv("output", out.display());
        }
        None => {
            r.line(text.trim_end());
        }
    }
    Ok(holds(r))
}

fn report_witness(r: &mut Report, g: &MooreGuesser, s: &ParitySet) -> Result<bool> {
    let w = divergence_witness(g, s)?;
    match &w {
        Some(w) => r.kv("witness", w),
        None => r.kv("witness", "NONE"),
    };
    Ok(w.is_none())
}

fn verify(guesser: &Path, automaton: &Path, words: &WordSource) -> Result<Outcome> {
    let parsed = load_guesser(guesser)?;
    let s = load_set(automaton)?;
    let g = parsed.guesser();
    g.alphabet().ensure_same(s.alphabet())?;
    let points = words.load(&s)?;
    let mut r = Report::default();
    let mut ok = true;
    let mut failures = 0;
    let mut first = None;
    for w in &points {
        if !g.verify_on_up(&s, w)? {
            failures += 1;
            first.get_or_insert_with(|| w.clone());
        }
    }
    r.kv("words_checked", points.len()).kv("word_failures", failures);
    if let Some(w) = first {
        r.kv("first_failure", w);
        ok = false;
    }
    if let ParsedGuesser::Ranked(rg) = &parsed {
        let violation = rg.bound_violation();
        r.kv("bound_ok", violation.is_none());
        if let Some(v) = violation {
            r.kv("bound_violation", v);
            ok = false;
        }
    }
    ok &= report_witness(&mut r, g, &s)?;
    Ok(Outcome { report: r, holds: ok })
}

fn witness(guesser: &Path, automaton: &Path) -> Result<Outcome> {
    let parsed = load_guesser(guesser)?;
    let s = load_set(automaton)?;
    let mut r = Report::default();
    let ok = report_witness(&mut r, parsed.guesser(), &s)?;
    Ok(Outcome { report: r, holds: ok })
}

fn diff_build(chain: &Path, output: Option<&Path>) -> Result<Outcome> {
    let c = load_chain(chain)?;
    let s = d_theta(&c);
    let mut r = Report::default();
    r.kv("theta", c.theta()).kv("states", s.num_states());
    match output {
        Some(out) => {
            write_file(out, &format::write_automaton(&s))?;
            r.kv("output", out.display());
        }
        None => {
            r.line(format::write_automaton(&s).trim_end());
        }
    }
    Ok(holds(r))
}

fn diff_extract(guesser: &Path, output: Option<&Path>) -> Result<Outcome> {
    let ParsedGuesser::Ranked(rg) = load_guesser(guesser)? else {
        bail!("{}: extraction needs `bound` lines", guesser.display());
    };
    let chain = guesser_to_chain(&rg)?;
    let mut r = Report::default();
    r.kv("chain", chain.len());
    if let Some(out) = output {
        write_chain(&chain, out)?;
        r.kv("output", out.display());
    }
    Ok(holds(r))
}

fn classify_cmd(path: &Path, output: Option<&Path>) -> Result<Outcome> {
    let s = load_set(path)?;
    let c = classify(&s)?;
    let mut r = Report::default();
    match &c.rank {
        Some(o) => r.kv("rank", o),
        None => r.kv("rank", "NOT_GUESSABLE"),
    };
    r.kv("side", c.side);
    match &c.chain {
        Some(chain) => {
            r.kv("chain", chain.len());
            if let Some(out) = output {
                write_chain(chain, out)?;
                r.kv("output", out.display());
            }
        }
        None => {
            r.kv("chain", "NONE");
        }
    }
    Ok(Outcome {
        report: r,
        holds: c.side != Side::Neither,
    })
}

fn convert(input: &Path, direction: Direction, output: Option<&Path>) -> Result<Outcome> {
    let mut r = Report::default();
    match direction {
        Direction::ToChain => {
            let s = load_set(input)?;
            let c = classify(&s)?;
            let Some(chain) = &c.chain else {
                r.kv("rank", "NOT_GUESSABLE").kv("side", c.side);
                return Ok(Outcome { report: r, holds: false });
            };
            let target = if c.side == Side::Complement { s.complement() } else { s.clone() };
            let round_trip = equivalent(&d_theta(chain), &target)?;
            let rg = chain_to_guesser(chain);
            let bound_ok = rg.check_bound();
            r.kv("rank", c.rank.as_ref().expect("chain implies rank"))
                .kv("side", c.side)
                .kv("chain", chain.len())
                .kv("round_trip", round_trip)
                .kv("bound_ok", bound_ok);
            if let Some(out) = output {
                write_chain(chain, out)?;
                r.kv("output", out.display());
            }
            Ok(Outcome {
                report: r,
                holds: round_trip && bound_ok,
            })
        }
        Direction::ToGuesser => {
            let chain = load_chain(input)?;
            let s = d_theta(&chain);
            let rg = chain_to_guesser(&chain);
            let bound_ok = rg.check_bound();
            r.kv("theta", chain.theta()).kv("codomain", rg.codomain()).kv("bound_ok", bound_ok);
            let correct = report_witness(&mut r, rg.guesser(), &s)?;
            let round_trip = match reroot_zero(&rg)? {
                Some(rooted) => equivalent(&d_theta(&guesser_to_chain(&rooted)?), &s)?,
                None => false,
            };
            r.kv("round_trip", round_trip);
            let text = format::write_ranked_guesser(&rg);
            match output {
                Some(out) => {
                    write_file(out, &text)?;
                    r.kv("output", out.display());
                }
                None => {
                    r.line(text.trim_end());
                }
            }
            Ok(Outcome {
                report: r,
                holds: bound_ok && correct && round_trip,
            })
        }
    }
}

fn based_verify(
    family: &Path,
    automaton: &Path,
    guesser: Option<&Path>,
    simulate: Option<&Path>,
    words: &WordSource,
) -> Result<Outcome> {
    let f = in_file(family, format::read_family(family))?;
    let s = load_set(automaton)?;
    let g = match (guesser, simulate) {
        (Some(p), _) => load_guesser(p)?.guesser().clone(),
        (None, Some(p)) => cylinder_simulator(load_guesser(p)?.guesser()),
        (None, None) => last_bit_guesser(),
    };
    let points = words.load(&s)?;
    let mut r = Report::default();
    let mut failures = 0;
    let mut first = None;
    let mut decomposed = 0;
    for w in &points {
        if !verify_based(&g, &f, &s, w)? {
            failures += 1;
            first.get_or_insert_with(|| w.clone());
        }
        if f.is_explicit() && limsup_liminf_check(&f, &s, w)? {
            decomposed += 1;
        }
    }
    r.kv("words_checked", points.len()).kv("failures", failures);
    if f.is_explicit() {
        r.kv("limsup_liminf_holds", decomposed);
    }
    match &first {
        Some(w) => r.kv("first_failure", w),
        None => r.kv("first_failure", "NONE"),
    };
    Ok(Outcome {
        report: r,
        holds: failures == 0,
    })
}

fn pass(b: bool) -> &'static str {
    if b {
        "PASS"
    } else {
        "FAIL"
    }
}

fn oracle_check(k: usize, d: usize, sample: Option<usize>, seed: u64, max_len: Option<usize>) -> Result<Outcome> {
    let tables = match sample {
        Some(n) => sampled_tables(k, d, n, seed)?,
        None => exhaustive_tables(k, d)?,
    };
    let report = cross_validate(&tables, max_len.unwrap_or(d + 1))?;
    let alphabet = mindchange::Alphabet::new(k)?;
    let fixtures_ok = [
        (ClopenTable::constant(alphabet, 0, false), 1),
        (ClopenTable::constant(alphabet, 0, true), 1),
        (mindchange::space::cylinder(alphabet, &mindchange::Word::from(vec![1]))?, 2),
    ]
    .into_iter()
    .all(|(t, want)| {
        let oracle = TruncatedTree::build(&t, t.depth() + 1).rank(&mindchange::Word::default());
        let pipeline = mindchange::mind_change_rank(&t.compile());
        oracle == Some(want) && pipeline == Some(mindchange::Ordinal::finite(want as u64))
    });
    let mut r = Report::default();
    r.kv("tables", report.tables)
        .kv("rank_agreement", pass(report.ranks_agree()))
        .kv("rank_checks", report.rank_checks)
        .kv("guesser_agreement", pass(report.guesses_agree()))
        .kv("guesser_checks", report.guess_checks)
        .kv("fixture_ranks", pass(fixtures_ok));
    if let Some(f) = &report.first_failure {
        r.kv("first_failure", f);
    }
    Ok(Outcome {
        report: r,
        holds: report.ranks_agree() && report.guesses_agree() && fixtures_ok,
    })
}

fn export_dot(input: &Path, guesser: bool) -> Result<Outcome> {
    let mut r = Report::default();
    let text = if guesser {
        format::guesser_to_dot(load_guesser(input)?.guesser())
    } else {
        format::to_dot(&load_set(input)?)
    };
    r.line(text.trim_end());
    Ok(holds(r))
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Rank { automaton, trace } => rank(automaton, *trace),
        Command::Remainder { automaton, trace } => remainder(automaton, *trace),
        Command::Synthesize { automaton, output } => synthesize_cmd(automaton, output.as_deref()),
        Command::Verify {
            guesser,
            automaton,
            words,
        } => verify(guesser, automaton, words),
        Command::Witness { guesser, automaton } => witness(guesser, automaton),
        Command::Diff(DiffCommand::Build { chain, output }) => diff_build(chain, output.as_deref()),
        Command::Diff(DiffCommand::Extract { guesser, output }) => diff_extract(guesser, output.as_deref()),
        Command::Classify { automaton, output } => classify_cmd(automaton, output.as_deref()),
        Command::Convert {
            input,
            direction,
            output,
        } => convert(input, *direction, output.as_deref()),
        Command::Based(BasedCommand::Verify {
            family,
            automaton,
            guesser,
            simulate,
            words,
        }) => based_verify(family, automaton, guesser.as_deref(), simulate.as_deref(), words),
        Command::Oracle(OracleCommand::Check {
            k,
            d,
            sample,
            seed,
            max_len,
        }) => oracle_check(*k, *d, *sample, *seed, *max_len),
        Command::ExportDot { input, guesser } => export_dot(input, *guesser),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            print!("{}", outcome.report.render(cli.format));
            if outcome.holds {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
