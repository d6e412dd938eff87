//! `scover`: subsequence covers from the command line.
//!
//! Exit codes: 0 computed/true, 1 computed/false, 2 usage error, 3 input
//! error, 4 resource limit.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use scover::extremal::{render_bounds_table, render_table};
use scover::{
    bounds_table, count_shortest_s_covers, cover_report, gamma_search, is_s_primitive, lower_bound_word,
    multicover_word, reduce_to_bounded_cover, shortest_s_cover, verify_xy_lemma, zimin, AlphabetMap, Error,
    GammaConfig, ParseMode, SearchConfig, Word,
};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "scover", version, about = "Subsequence covers of words")]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Read words as comma/whitespace separated tokens instead of characters.
    #[arg(long, global = true)]
    tokens: bool,
    /// Print nothing; the exit code carries the answer.
    #[arg(long, short, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Budget {
    /// Give up (exit 4) after visiting this many search nodes.
    #[arg(long)]
    budget: Option<u64>,
    /// Disable the square-free, subsequence and coverage pruning rules.
    #[arg(long)]
    no_pruning: bool,
    /// Split the candidate search across threads.
    #[arg(long)]
    parallel: bool,
}

impl Budget {
    fn config(&self) -> SearchConfig {
        let mut cfg = if self.no_pruning {
            SearchConfig::no_pruning()
        } else {
            SearchConfig::default()
        };
        cfg.node_budget = self.budget;
        cfg.parallel = self.parallel;
        cfg
    }
}

#[derive(Subcommand)]
enum Command {
    /// Is C an s-cover of S? Exit 0 if yes, 1 if no.
    Test {
        cover: String,
        word: String,
        /// List an occurrence through every position.
        #[arg(long)]
        witnesses: bool,
    },
    /// How many positions of S lie on an occurrence of C.
    Coverage { cover: String, word: String },
    /// A shortest s-cover of S.
    Shortest {
        word: String,
        /// List every shortest s-cover.
        #[arg(long)]
        all: bool,
        /// Count the shortest s-covers.
        #[arg(long)]
        count: bool,
        /// Do not try candidates longer than this (exit 4 if none is found).
        #[arg(long)]
        max_len: Option<usize>,
        #[command(flatten)]
        budget: Budget,
    },
    /// Is S s-primitive? Exit 0 if yes, 1 if no.
    Primitive {
        word: String,
        #[command(flatten)]
        budget: Budget,
    },
    /// An s-cover of S of length at most gamma(k).
    Reduce {
        word: String,
        #[command(flatten)]
        budget: Budget,
    },
    /// Number of distinct shortest s-covers of S.
    Count {
        word: String,
        #[command(flatten)]
        budget: Budget,
    },
    /// Exhaustive search for the longest s-primitive words over k letters.
    Gamma {
        k: usize,
        /// Stop extending words at this length.
        #[arg(long)]
        max_len: Option<usize>,
        /// Print the canonical longest words.
        #[arg(long)]
        list: bool,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Depth at which the search tree is split into jobs.
        #[arg(long, default_value_t = 6)]
        split_depth: usize,
        /// Save progress here and resume from it if it exists.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Stop after this many jobs, leaving the rest in the checkpoint.
        #[arg(long)]
        max_jobs: Option<usize>,
        /// Print a table for every alphabet size from 1 to k.
        #[arg(long)]
        table: bool,
    },
    /// Lower and upper bounds on gamma(k) for k up to K.
    Bounds {
        #[arg(default_value_t = 8)]
        k_max: usize,
    },
    /// Print a word from one of the built-in families.
    Construct { family: Family, n: usize },
    /// Machine check of Phi(X, Y) for square-free X, Y of lengths 4 and 6.
    VerifyXy,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    /// Zimin word Z_n.
    Zimin,
    /// Long s-primitive word over n letters.
    Lowerbound,
    /// Prefix of length n of the word with many shortest s-covers.
    Multicover,
}

struct Output {
    lines: Vec<String>,
    json: Value,
    code: u8,
}

impl Output {
    fn new(json: Value) -> Self {
        Output {
            lines: Vec::new(),
            json,
            code: 0,
        }
    }

    fn line(mut self, s: impl Into<String>) -> Self {
        self.lines.push(s.into());
        self
    }

    fn verdict(mut self, yes: bool) -> Self {
        self.code = u8::from(!yes);
        self
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(out) => {
            if !cli.quiet {
                if cli.json {
                    println!("{}", out.json);
                } else {
                    for l in &out.lines {
                        println!("{l}");
                    }
                }
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            if !cli.quiet {
                eprintln!("scover: {e}");
            }
            ExitCode::from(match e {
                Error::Resource(_) => 4,
                _ => 3,
            })
        }
    }
}

/// Inline text, or the contents of a file for `@path`.
fn read_arg(arg: &str) -> scover::Result<String> {
    match arg.strip_prefix('@') {
        Some(path) => {
            let text = std::fs::read_to_string(path)?;
            Ok(text.trim_end_matches(['\n', '\r']).to_owned())
        }
        None => Ok(arg.to_owned()),
    }
}

fn mode(cli: &Cli) -> ParseMode {
    if cli.tokens {
        ParseMode::Tokens
    } else {
        ParseMode::Chars
    }
}

/// Parses S before C so that letter ids follow S.
fn parse_pair(cli: &Cli, cover: &str, word: &str) -> scover::Result<(AlphabetMap, Word, Word)> {
    let mut map = AlphabetMap::new(mode(cli));
    let s = map.parse(&read_arg(word)?)?;
    let c = map.parse(&read_arg(cover)?)?;
    Ok((map, c, s))
}

fn parse_one(cli: &Cli, word: &str) -> scover::Result<(AlphabetMap, Word)> {
    let mut map = AlphabetMap::new(mode(cli));
    let s = map.parse(&read_arg(word)?)?;
    Ok((map, s))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn search_json(
    length: Option<usize>,
    witness: Option<String>,
    count: Option<Value>,
    all: Option<Vec<String>>,
    primitive: Option<bool>,
) -> Value {
    json!({
        "shortest_length": length,
        "witness": witness,
        "count": count,
        "all": all,
        "primitive": primitive,
    })
}

/// Exact JSON number from a big integer's decimal digits.
fn big(v: &impl std::fmt::Display) -> Value {
    Value::Number(v.to_string().parse().expect("decimal digits form a JSON number"))
}

fn run(cli: &Cli) -> scover::Result<Output> {
    match &cli.command {
        Command::Test { cover, word, witnesses } => {
            let (_, c, s) = parse_pair(cli, cover, word)?;
            let r = cover_report(&c, &s);
            let mut out = Output::new(r.to_json(*witnesses)).line(format!("s-cover: {}", yes_no(r.is_cover)));
            if *witnesses {
                for (i, w) in r.witnesses.iter().enumerate() {
                    out = out.line(match w {
                        Some(pos) => format!(
                            "{i}: {}",
                            pos.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
                        ),
                        None => format!("{i}: uncovered"),
                    });
                }
            }
            Ok(out.verdict(r.is_cover))
        }
        Command::Coverage { cover, word } => {
            let (_, c, s) = parse_pair(cli, cover, word)?;
            let r = cover_report(&c, &s);
            let mask: String = r.covered.iter().map(|&b| if b { '1' } else { '0' }).collect();
            Ok(Output::new(r.to_json(false))
                .line(format!("coverage: {}", r.coverage))
                .line(format!("covered: {mask}")))
        }
        Command::Shortest {
            word,
            all,
            count,
            max_len,
            budget,
        } => {
            let (map, s) = parse_one(cli, word)?;
            let mut cfg = budget.config();
            cfg.enumerate_all = *all;
            cfg.max_candidate_len = *max_len;
            let r = shortest_s_cover(&s, &cfg)?;
            let witness = map.render(&r.witness);
            let every = r
                .all
                .as_ref()
                .map(|ws| ws.iter().map(|w| map.render(w)).collect::<Vec<_>>());
            let n = if *count {
                Some(count_shortest_s_covers(&s, &budget.config())?.count)
            } else {
                None
            };
            let mut out = Output::new(search_json(
                Some(r.length),
                Some(witness.clone()),
                n.as_ref().map(big),
                every.clone(),
                None,
            ))
            .line(format!("length: {}", r.length))
            .line(format!("witness: {witness}"));
            if let Some(n) = n {
                out = out.line(format!("count: {n}"));
            }
            if let Some(ws) = every {
                out = out.line("all:");
                for w in ws {
                    out = out.line(w);
                }
            }
            Ok(out)
        }
        Command::Primitive { word, budget } => {
            let (map, s) = parse_one(cli, word)?;
            let p = is_s_primitive(&s, &budget.config())?;
            let witness = p.witness.as_ref().map(|w| map.render(w));
            let line = match &witness {
                None => "primitive: yes".to_string(),
                Some(w) => format!("primitive: no (cover: {w})"),
            };
            Ok(Output::new(search_json(
                p.witness.as_ref().map(|w| w.len()),
                witness,
                None,
                None,
                Some(p.primitive),
            ))
            .line(line)
            .verdict(p.primitive))
        }
        Command::Reduce { word, budget } => {
            let (map, s) = parse_one(cli, word)?;
            let c = reduce_to_bounded_cover(&s, &budget.config())?;
            let text = map.render(&c);
            Ok(
                Output::new(search_json(Some(c.len()), Some(text.clone()), None, None, None))
                    .line(format!("reduced: {text}"))
                    .line(format!("length: {}", c.len())),
            )
        }
        Command::Count { word, budget } => {
            let (_, s) = parse_one(cli, word)?;
            let r = count_shortest_s_covers(&s, &budget.config())?;
            Ok(
                Output::new(search_json(Some(r.length), None, Some(big(&r.count)), None, None))
                    .line(format!("count: {}", r.count))
                    .line(format!("length: {}", r.length)),
            )
        }
        Command::Gamma {
            k,
            max_len,
            list,
            workers,
            split_depth,
            checkpoint,
            max_jobs,
            table,
        } => {
            let cfg = GammaConfig {
                max_len: *max_len,
                workers: *workers,
                split_depth: *split_depth,
                collect_words: true,
                checkpoint: checkpoint.clone(),
                job_limit: *max_jobs,
                ..GammaConfig::new(*k)
            };
            if *table {
                let reports = (1..=*k)
                    .map(|j| {
                        gamma_search(&GammaConfig {
                            k: j,
                            checkpoint: None,
                            job_limit: None,
                            ..cfg.clone()
                        })
                    })
                    .collect::<scover::Result<Vec<_>>>()?;
                let mut out = Output::new(Value::Array(reports.iter().map(|r| r.to_json()).collect()));
                for l in render_table(&reports).lines() {
                    out = out.line(l);
                }
                return Ok(out);
            }
            let r = gamma_search(&cfg)?;
            let mut json = r.to_json();
            if !*list {
                json["canonical_words"] = Value::Null;
            }
            let words = if r.total_count == 1u32.into() { "word" } else { "words" };
            let head = if r.truncated {
                format!(
                    "gamma({k}) >= {} ({} {words}; stopped at max length)",
                    r.gamma, r.total_count
                )
            } else {
                format!("gamma({k}) = {} ({} {words})", r.gamma, r.total_count)
            };
            let mut out = Output::new(json).line(head);
            if r.pending_jobs > 0 {
                out = out.line(format!("partial: {} jobs pending", r.pending_jobs));
            }
            if *list {
                for w in r.canonical_words.iter().flatten() {
                    out = out.line(w.render());
                }
            }
            Ok(out)
        }
        Command::Bounds { k_max } => {
            let rows = bounds_table(*k_max)?;
            let mut out = Output::new(Value::Array(rows.iter().map(|r| r.to_json()).collect()));
            for l in render_bounds_table(&rows).lines() {
                out = out.line(l);
            }
            Ok(out)
        }
        Command::Construct { family, n } => {
            let w = match family {
                Family::Zimin => zimin(*n)?,
                Family::Lowerbound => lower_bound_word(*n)?,
                Family::Multicover => multicover_word(*n)?,
            };
            let text = w.render();
            Ok(Output::new(json!({
                "word": text,
                "length": w.len(),
                "alphabet_size": w.alphabet_size(),
            }))
            .line(text))
        }
        Command::VerifyXy => {
            let r = verify_xy_lemma();
            let line = if r.passed() {
                format!("XY-Lemma verified over {} pairs; 0 counterexamples", r.pairs)
            } else {
                let (x, y) = r.first_counterexample.clone().expect("a failure has a witness");
                format!(
                    "XY-Lemma failed over {} pairs; {} counterexamples (first: X={x} Y={y})",
                    r.pairs, r.counterexamples
                )
            };
            Ok(Output::new(r.to_json()).line(line).verdict(r.passed()))
        }
    }
}
