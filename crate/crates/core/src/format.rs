//! Line-oriented text formats for automata, guessers, chains, oracle
//! families and word lists, plus DOT export.
//!
//! ```text
//! # comments run to end of line
//! alphabet 2
//! states 3
//! start 0
//! acceptance max-even      # optional; min-even, max-odd, min-odd convert
//! priority 0 1
//! trans 0 1 2              # from symbol to
//! ```
//!
//! Guessers use `output <state> <bit>` in place of `priority`, with
//! optional `bound <state> <ordinal>` lines and a `codomain <ordinal>` line.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::based::OracleFamily;
use crate::diff_hierarchy::OpenChain;
use crate::error::{Error, Result};
use crate::graph::TransitionTable;
use crate::guesser::{MooreGuesser, RankedGuesser};
use crate::ordinal::Ordinal;
use crate::space::{Alphabet, OpenSet, ParitySet, UpWord};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Acceptance {
    MaxEven,
    MaxOdd,
    MinEven,
    MinOdd,
}

impl Acceptance {
    fn parse(s: &str) -> Option<Acceptance> {
        Some(match s {
            "max-even" => Acceptance::MaxEven,
            "max-odd" => Acceptance::MaxOdd,
            "min-even" => Acceptance::MinEven,
            "min-odd" => Acceptance::MinOdd,
            _ => return None,
        })
    }

    /// Rewrites priorities so that max-even acceptance gives the same set.
    fn to_max_even(self, priority: &[u32]) -> Vec<u32> {
        let top = priority.iter().copied().max().unwrap_or(0);
        match self {
            Acceptance::MaxEven => priority.to_vec(),
            Acceptance::MaxOdd => priority.iter().map(|p| p + 1).collect(),
            Acceptance::MinEven => {
                let m = top + top % 2;
                priority.iter().map(|p| m - p).collect()
            }
            Acceptance::MinOdd => {
                let m = top + 1 - top % 2;
                priority.iter().map(|p| m - p).collect()
            }
        }
    }
}

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Tokenized non-empty lines with 1-based line numbers.
fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = body.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

fn num<T: std::str::FromStr>(line: usize, tok: &str, what: &str) -> Result<T> {
    tok.parse().map_err(|_| err(line, format!("bad {what} `{tok}`")))
}

fn arity(line: usize, tokens: &[&str], n: usize) -> Result<()> {
    if tokens.len() != n + 1 {
        return Err(err(line, format!("`{}` takes {n} argument(s)", tokens[0])));
    }
    Ok(())
}

/// Fields shared by the automaton and guesser formats.
#[derive(Default)]
struct Skeleton {
    alphabet: Option<(usize, Alphabet)>,
    states: Option<usize>,
    start: Option<usize>,
    trans: BTreeMap<(usize, usize), usize>,
}

impl Skeleton {
    fn alphabet(&self) -> Result<Alphabet> {
        self.alphabet.map(|(_, a)| a).ok_or_else(|| err(0, "missing `alphabet`"))
    }

    fn states(&self) -> Result<usize> {
        self.states.filter(|&n| n > 0).ok_or_else(|| err(0, "missing or zero `states`"))
    }

    fn state(&self, line: usize, tok: &str) -> Result<usize> {
        let n = self.states.ok_or_else(|| err(line, "`states` must come first"))?;
        let q: usize = num(line, tok, "state")?;
        if q >= n {
            return Err(err(line, format!("state {q} out of range (states {n})")));
        }
        Ok(q)
    }

    /// Handles the shared keywords; `Ok(false)` for anything else.
    fn accept(&mut self, line: usize, tokens: &[&str]) -> Result<bool> {
        match tokens[0] {
            "alphabet" => {
                arity(line, tokens, 1)?;
                let k: usize = num(line, tokens[1], "alphabet size")?;
                let a = Alphabet::new(k).map_err(|e| err(line, e.to_string()))?;
                self.alphabet = Some((line, a));
            }
            "states" => {
                arity(line, tokens, 1)?;
                self.states = Some(num(line, tokens[1], "state count")?);
            }
            "start" => {
                arity(line, tokens, 1)?;
                self.start = Some(self.state(line, tokens[1])?);
            }
            "trans" => {
                arity(line, tokens, 3)?;
                let from = self.state(line, tokens[1])?;
                let k = self.alphabet.ok_or_else(|| err(line, "`alphabet` must come first"))?.1.size();
                let a: usize = num(line, tokens[2], "symbol")?;
                if a >= k {
                    return Err(err(line, format!("symbol {a} out of range (alphabet {k})")));
                }
                let to = self.state(line, tokens[3])?;
                if self.trans.insert((from, a), to).is_some_and(|old| old != to) {
                    return Err(err(line, format!("nondeterministic transition from {from} on {a}")));
                }
            }
            _ => return Ok(false),
        }
        Ok(true)
    }

    /// Rows with missing entries pointing at `sink`.
    fn rows(&self, sink: usize) -> Result<(Vec<Vec<usize>>, bool)> {
        let n = self.states()?;
        let k = self.alphabet()?.size();
        let mut missing = false;
        let rows = (0..n)
            .map(|q| {
                (0..k)
                    .map(|a| {
                        self.trans.get(&(q, a)).copied().unwrap_or_else(|| {
                            missing = true;
                            sink
                        })
                    })
                    .collect()
            })
            .collect();
        Ok((rows, missing))
    }
}

/// A parsed automaton and whether a rejecting sink was added to complete it.
#[derive(Debug, Clone)]
pub struct ParsedAutomaton {
    pub set: ParitySet,
    pub completed: bool,
}

pub fn parse_automaton(text: &str) -> Result<ParsedAutomaton> {
    let mut sk = Skeleton::default();
    let mut priority: BTreeMap<usize, u32> = BTreeMap::new();
    let mut acceptance = Acceptance::MaxEven;
    for (line, tokens) in lines(text) {
        if sk.accept(line, &tokens)? {
            continue;
        }
        match tokens[0] {
            "priority" => {
                arity(line, &tokens, 2)?;
                let q = sk.state(line, tokens[1])?;
                priority.insert(q, num(line, tokens[2], "priority")?);
            }
            "acceptance" => {
                arity(line, &tokens, 1)?;
                acceptance = Acceptance::parse(tokens[1])
                    .ok_or_else(|| err(line, format!("unknown acceptance `{}`", tokens[1])))?;
            }
            other => return Err(err(line, format!("unknown keyword `{other}`"))),
        }
    }
    let n = sk.states()?;
    let mut prio = (0..n)
        .map(|q| priority.get(&q).copied().ok_or_else(|| err(0, format!("missing priority for state {q}"))))
        .collect::<Result<Vec<u32>>>()?;
    prio = acceptance.to_max_even(&prio);
    let (mut rows, completed) = sk.rows(n)?;
    if completed {
        rows.push(vec![n; sk.alphabet()?.size()]);
        prio.push(1);
    }
    let start = sk.start.unwrap_or(0);
    let set = ParitySet::from_rows(sk.alphabet()?, start, rows, prio)?;
    Ok(ParsedAutomaton { set, completed })
}

pub fn write_automaton(s: &ParitySet) -> String {
    let mut out = String::new();
    writeln!(out, "alphabet {}", s.alphabet().size()).unwrap();
    writeln!(out, "states {}", s.num_states()).unwrap();
    writeln!(out, "start {}", s.start()).unwrap();
    for q in 0..s.num_states() {
        writeln!(out, "priority {q} {}", s.priority(q)).unwrap();
    }
    write_trans(&mut out, s.transitions());
    out
}

fn write_trans(out: &mut String, t: &TransitionTable) {
    for q in 0..t.num_states() {
        for (a, to) in t.successors(q).iter().enumerate() {
            writeln!(out, "trans {q} {a} {to}").unwrap();
        }
    }
}

/// A guesser file: the guesser plus its bound if `bound` lines were given.
#[derive(Debug, Clone)]
pub enum ParsedGuesser {
    Plain(MooreGuesser),
    Ranked(RankedGuesser),
}

impl ParsedGuesser {
    pub fn guesser(&self) -> &MooreGuesser {
        match self {
            ParsedGuesser::Plain(g) => g,
            ParsedGuesser::Ranked(rg) => rg.guesser(),
        }
    }
}

pub fn parse_guesser(text: &str) -> Result<ParsedGuesser> {
    let mut sk = Skeleton::default();
    let mut output: BTreeMap<usize, bool> = BTreeMap::new();
    let mut bound: BTreeMap<usize, Ordinal> = BTreeMap::new();
    let mut codomain: Option<Ordinal> = None;
    for (line, tokens) in lines(text) {
        if sk.accept(line, &tokens)? {
            continue;
        }
        match tokens[0] {
            "output" => {
                arity(line, &tokens, 2)?;
                let q = sk.state(line, tokens[1])?;
                let bit = match tokens[2] {
                    "0" => false,
                    "1" => true,
                    other => return Err(err(line, format!("output must be 0 or 1, got `{other}`"))),
                };
                output.insert(q, bit);
            }
            "bound" => {
                if tokens.len() < 3 {
                    return Err(err(line, "`bound` takes a state and an ordinal"));
                }
                let q = sk.state(line, tokens[1])?;
                let o: Ordinal = tokens[2..].join(" ").parse().map_err(|e: crate::ordinal::OrdinalError| err(line, e.to_string()))?;
                bound.insert(q, o);
            }
            "codomain" => {
                if tokens.len() < 2 {
                    return Err(err(line, "`codomain` takes an ordinal"));
                }
                let o: Ordinal = tokens[1..].join(" ").parse().map_err(|e: crate::ordinal::OrdinalError| err(line, e.to_string()))?;
                codomain = Some(o);
            }
            other => return Err(err(line, format!("unknown keyword `{other}`"))),
        }
    }
    let n = sk.states()?;
    let (rows, missing) = sk.rows(0)?;
    if missing {
        return Err(err(0, "guesser transition table is incomplete"));
    }
    let out = (0..n)
        .map(|q| output.get(&q).copied().ok_or_else(|| err(0, format!("missing output for state {q}"))))
        .collect::<Result<Vec<bool>>>()?;
    let g = MooreGuesser::from_rows(sk.alphabet()?, sk.start.unwrap_or(0), rows, out)?;
    if bound.is_empty() {
        if codomain.is_some() {
            return Err(err(0, "`codomain` given without `bound` lines"));
        }
        return Ok(ParsedGuesser::Plain(g));
    }
    let h = (0..n)
        .map(|q| bound.get(&q).cloned().ok_or_else(|| err(0, format!("missing bound for state {q}"))))
        .collect::<Result<Vec<Ordinal>>>()?;
    let codomain = match codomain {
        Some(c) => c,
        None => h.iter().max().expect("nonempty").succ()?,
    };
    Ok(ParsedGuesser::Ranked(RankedGuesser::new(g, h, codomain)?))
}

pub fn write_guesser(g: &MooreGuesser) -> String {
    let mut out = String::new();
    writeln!(out, "alphabet {}", g.alphabet().size()).unwrap();
    writeln!(out, "states {}", g.num_states()).unwrap();
    writeln!(out, "start {}", g.start()).unwrap();
    for p in 0..g.num_states() {
        writeln!(out, "output {p} {}", u8::from(g.output(p))).unwrap();
    }
    write_trans(&mut out, g.transitions());
    out
}

pub fn write_ranked_guesser(rg: &RankedGuesser) -> String {
    let mut out = write_guesser(rg.guesser());
    for (p, h) in rg.bounds().iter().enumerate() {
        writeln!(out, "bound {p} {h}").unwrap();
    }
    writeln!(out, "codomain {}", rg.codomain()).unwrap();
    out
}

pub fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

fn sibling(base: &Path, name: &str) -> PathBuf {
    base.parent().unwrap_or(Path::new(".")).join(name)
}

pub fn read_automaton(path: &Path) -> Result<ParsedAutomaton> {
    parse_automaton(&read_text(path)?)
}

pub fn read_guesser(path: &Path) -> Result<ParsedGuesser> {
    parse_guesser(&read_text(path)?)
}

/// Parses a chain file; `load` resolves the automaton file names.
pub fn parse_chain(text: &str, mut load: impl FnMut(&str) -> Result<ParitySet>) -> Result<OpenChain> {
    let mut theta: Option<usize> = None;
    let mut sets: BTreeMap<usize, OpenSet> = BTreeMap::new();
    for (line, tokens) in lines(text) {
        match tokens[0] {
            "theta" => {
                arity(line, &tokens, 1)?;
                theta = Some(num(line, tokens[1], "theta")?);
            }
            "set" => {
                arity(line, &tokens, 2)?;
                let i: usize = num(line, tokens[1], "index")?;
                let open = OpenSet::new(load(tokens[2])?).map_err(|e| err(line, e.to_string()))?;
                if sets.insert(i, open).is_some() {
                    return Err(err(line, format!("set {i} given twice")));
                }
            }
            other => return Err(err(line, format!("unknown keyword `{other}`"))),
        }
    }
    let theta = theta.ok_or_else(|| err(0, "missing `theta`"))?;
    if sets.keys().copied().ne(0..theta) {
        return Err(err(0, format!("expected sets 0..{theta}")));
    }
    OpenChain::new(sets.into_values().collect())
}

pub fn read_chain(path: &Path) -> Result<OpenChain> {
    parse_chain(&read_text(path)?, |name| Ok(read_automaton(&sibling(path, name))?.set))
}

/// The chain file text plus the member files it names, as `(name, text)`.
pub fn write_chain(chain: &OpenChain, stem: &str) -> (String, Vec<(String, String)>) {
    let mut out = format!("theta {}\n", chain.len());
    let mut files = Vec::new();
    for (i, a) in chain.sets().iter().enumerate() {
        let name = format!("{stem}.set{i}.aut");
        writeln!(out, "set {i} {name}").unwrap();
        files.push((name, write_automaton(a.automaton())));
    }
    (out, files)
}

pub fn parse_family(text: &str, mut load: impl FnMut(&str) -> Result<ParitySet>) -> Result<OracleFamily> {
    let mut kind: Option<(usize, String)> = None;
    let mut prefix = Vec::new();
    let mut cycle = Vec::new();
    for (line, tokens) in lines(text) {
        match tokens[0] {
            "family" if tokens.get(1) == Some(&"explicit") => {
                arity(line, &tokens, 1)?;
                kind = Some((line, "explicit".into()));
            }
            "family" if tokens.get(1) == Some(&"cylinders") => {
                arity(line, &tokens, 2)?;
                let k: usize = num(line, tokens[2], "alphabet size")?;
                Alphabet::new(k).map_err(|e| err(line, e.to_string()))?;
                kind = Some((line, format!("cylinders {k}")));
            }
            "family" => return Err(err(line, "expected `family explicit` or `family cylinders <k>`")),
            "prefix" | "cycle" => {
                arity(line, &tokens, 1)?;
                let set = load(tokens[1])?;
                if tokens[0] == "prefix" {
                    prefix.push(set);
                } else {
                    cycle.push(set);
                }
            }
            other => return Err(err(line, format!("unknown keyword `{other}`"))),
        }
    }
    let (line, kind) = kind.ok_or_else(|| err(0, "missing `family` line"))?;
    match kind.strip_prefix("cylinders ") {
        Some(k) => {
            if !prefix.is_empty() || !cycle.is_empty() {
                return Err(err(line, "cylinder families take no member files"));
            }
            Ok(OracleFamily::cylinders(Alphabet::new(k.parse().expect("checked"))?))
        }
        None => OracleFamily::explicit(prefix, cycle).map_err(|e| err(line, e.to_string())),
    }
}

pub fn read_family(path: &Path) -> Result<OracleFamily> {
    parse_family(&read_text(path)?, |name| Ok(read_automaton(&sibling(path, name))?.set))
}

/// One `u(v)` literal per line.
pub fn parse_up_words(text: &str) -> Result<Vec<UpWord>> {
    lines(text)
        .map(|(line, tokens)| {
            arity(line, &tokens, 0)?;
            tokens[0].parse().map_err(|e: Error| err(line, e.to_string()))
        })
        .collect()
}

pub fn to_dot(s: &ParitySet) -> String {
    let labels: Vec<String> = s.priorities().iter().map(|p| p.to_string()).collect();
    dot(s.transitions(), s.start(), &labels, |q| s.priority(q).is_multiple_of(2))
}

pub fn guesser_to_dot(g: &MooreGuesser) -> String {
    let labels: Vec<String> = g.outputs().iter().map(|&b| u8::from(b).to_string()).collect();
    dot(g.transitions(), g.start(), &labels, |p| g.output(p))
}

fn dot(t: &TransitionTable, start: usize, labels: &[String], doubled: impl Fn(usize) -> bool) -> String {
    let mut out = String::from("digraph automaton {\n  rankdir=LR;\n  init [shape=point];\n");
    for (q, label) in labels.iter().enumerate() {
        let shape = if doubled(q) { "doublecircle" } else { "circle" };
        writeln!(out, "  q{q} [shape={shape}, label=\"q{q} / {label}\"];").unwrap();
    }
    writeln!(out, "  init -> q{start};").unwrap();
    for q in 0..t.num_states() {
        let mut by_target: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (a, &to) in t.successors(q).iter().enumerate() {
            by_target.entry(to).or_default().push(a);
        }
        for (to, symbols) in by_target {
            let label: Vec<String> = symbols.iter().map(|a| a.to_string()).collect();
            writeln!(out, "  q{q} -> q{to} [label=\"{}\"];", label.join(",")).unwrap();
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::guesser::synthesize;
    use crate::space::equivalent;

    const F_ONE: &str = "\
# some 1
alphabet 2
states 2
start 0
priority 0 1
priority 1 0
trans 0 0 0
trans 0 1 1
trans 1 0 1
trans 1 1 1
";

    #[test]
    fn automaton_round_trip() {
        let p = parse_automaton(F_ONE).unwrap();
        assert!(!p.completed);
        assert!(equivalent(&p.set, &fixtures::f_one()).unwrap());
        for (_, s) in fixtures::all() {
            let back = parse_automaton(&write_automaton(&s)).unwrap().set;
            assert_eq!(back, s);
        }
    }

    #[test]
    fn partial_tables_get_a_sink() {
        let text = "alphabet 2\nstates 1\nstart 0\npriority 0 0\ntrans 0 0 0\n";
        let p = parse_automaton(text).unwrap();
        assert!(p.completed);
        assert_eq!(p.set.num_states(), 2);
        assert!(p.set.membership_up(&"(0)".parse().unwrap()).unwrap());
        assert!(!p.set.membership_up(&"(01)".parse().unwrap()).unwrap());
    }

    #[test]
    fn acceptance_conversion() {
        // min-even over F_ONE's graph: state 1 gets 0, state 0 gets 1
        let text = F_ONE.replace("start 0\n", "start 0\nacceptance min-even\n");
        let p = parse_automaton(&text.replace("priority 0 1", "priority 0 3").replace("priority 1 0", "priority 1 2"))
            .unwrap();
        // visiting both 3 and 2 forever has minimum 2, even: accept; only 3: reject
        assert!(equivalent(&p.set, &fixtures::f_one()).unwrap());
        let odd = parse_automaton(&F_ONE.replace("start 0\n", "start 0\nacceptance max-odd\n")).unwrap();
        assert!(equivalent(&odd.set, &fixtures::f_one().complement()).unwrap());
        let min_odd = parse_automaton(&F_ONE.replace("start 0\n", "start 0\nacceptance min-odd\n")).unwrap();
        assert!(equivalent(&min_odd.set, &fixtures::f_one().complement()).unwrap());
    }

    #[test]
    fn parse_errors_carry_lines() {
        let bad = "alphabet 2\nstates 2\ntrans 0 5 1\n";
        assert!(matches!(parse_automaton(bad), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_automaton("alphabet 2\nstates 1\nbogus\n"), Err(Error::Parse { line: 3, .. })));
        assert!(parse_automaton("alphabet 2\nstates 2\npriority 0 0\n").is_err());
        assert!(parse_automaton("alphabet 1\n").is_err());
    }

    #[test]
    fn guesser_round_trip() {
        let rg = synthesize(&fixtures::f_no11()).unwrap();
        match parse_guesser(&write_ranked_guesser(&rg)).unwrap() {
            ParsedGuesser::Ranked(back) => assert_eq!(back, rg),
            ParsedGuesser::Plain(_) => panic!("bounds lost"),
        }
        match parse_guesser(&write_guesser(rg.guesser())).unwrap() {
            ParsedGuesser::Plain(g) => assert_eq!(&g, rg.guesser()),
            ParsedGuesser::Ranked(_) => panic!("unexpected bounds"),
        }
    }

    #[test]
    fn chain_and_family_parsing() {
        let files: BTreeMap<&str, ParitySet> = [
            ("a.aut", fixtures::contains_11().into_automaton()),
            ("b.aut", fixtures::contains_1().into_automaton()),
            ("one.aut", fixtures::f_one()),
        ]
        .into_iter()
        .collect();
        let load = |name: &str| files.get(name).cloned().ok_or_else(|| err(0, name.to_string()));
        let chain = parse_chain("theta 2\nset 0 a.aut\nset 1 b.aut\n", load).unwrap();
        assert_eq!(chain.len(), 2);
        assert!(parse_chain("theta 2\nset 0 b.aut\nset 1 a.aut\n", load).is_err());
        assert!(parse_chain("theta 2\nset 0 a.aut\n", load).is_err());

        let fam = parse_family("family explicit\nprefix one.aut\ncycle one.aut\n", load).unwrap();
        assert!(fam.is_explicit());
        let cyl = parse_family("family cylinders 3\n", load).unwrap();
        assert_eq!(cyl.alphabet().size(), 3);
        assert!(parse_family("family explicit\n", load).is_err());
    }

    #[test]
    fn word_lists() {
        let words = parse_up_words("(0)\n# c\n01(1)\n").unwrap();
        assert_eq!(words.len(), 2);
        assert!(matches!(parse_up_words("(0)\nxx\n"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn dot_has_priorities() {
        let d = to_dot(&fixtures::f_one());
        assert!(d.contains("q1 [shape=doublecircle, label=\"q1 / 0\"]"));
        assert!(d.contains("q0 -> q1 [label=\"1\"]"));
    }
}
