//! Command-line front end. Exit status: 0 yes/success, 1 no, 2 unknown,
//! 3 invalid input, 4 I/O failure.

use std::fmt::Write as _;
use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use nanophrase::decompose::{hr_report, psi, reduce_fully, symmetry_obstruction, Certification};
use nanophrase::invariants::InvariantKind;
use nanophrase::rewrite::{decide_equal, decide_reducible, Decision, SearchBudget};
use nanophrase::tabulate::tabulate;
use nanophrase::{parse_phrase, parse_triple, Error, HomotopyDataTriple, Nanophrase};

const EXIT_INPUT: u8 = 3;
const EXIT_IO: u8 = 4;

#[derive(Parser)]
#[command(name = "nanophrase", version, about = "Homotopy of nanophrases over homotopy data triples")]
struct Cli {
    /// Output style. `lines` is tab-separated and parseable.
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Lines,
}

#[derive(Subcommand)]
enum Command {
    /// Split the triple into prime factors.
    Factor {
        #[command(flatten)]
        triple: TripleArg,
    },
    /// Compute invariants of each phrase.
    Invariants {
        #[command(flatten)]
        input: Input,
        /// Comma-separated subset of parity,linking,v,u,so.
        #[arg(long, value_delimiter = ',')]
        which: Vec<String>,
    },
    /// Print the decomposition of each phrase along the prime factors.
    Decompose {
        #[command(flatten)]
        input: Input,
    },
    /// Reduce each phrase and print its reduced class.
    Reduce {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Also print homotopy rank bounds.
        #[arg(long)]
        hr: bool,
        /// Also check whether the nanoword can be homotopic to its opposite.
        #[arg(long)]
        symmetry: bool,
    },
    /// Decide whether two phrases are homotopic, or whether one is
    /// i-reducible.
    Decide {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Decide reducibility of this component (1-based) instead.
        #[arg(long, value_name = "I")]
        reducible: Option<usize>,
    },
    /// Enumerate canonical phrases and group them by invariants.
    Tabulate {
        #[command(flatten)]
        triple: TripleArg,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long, default_value_t = 3)]
        max_rank: usize,
        #[arg(long, default_value_t = 1)]
        components: usize,
        /// Allow ranks above the default limit.
        #[arg(long)]
        force: bool,
    },
}

#[derive(Args)]
struct TripleArg {
    /// Triple file, inline triple text, or one of alpha_G, alpha_F.
    #[arg(short = 't', long = "triple", value_name = "FILE")]
    triple: String,
}

#[derive(Args)]
struct Input {
    #[command(flatten)]
    triple: TripleArg,
    /// Phrase file (one phrase per line) or inline phrase. Repeatable.
    #[arg(short = 'p', long = "phrase", value_name = "FILE|STRING", required = true)]
    phrases: Vec<String>,
}

#[derive(Args, Clone, Copy)]
struct BudgetArgs {
    /// How far above the input ranks the search may go.
    #[arg(long, default_value_t = SearchBudget::default().rank_delta)]
    rank_delta: usize,
    /// Maximum number of phrases visited by a search.
    #[arg(long, default_value_t = SearchBudget::default().node_budget)]
    node_budget: usize,
}

impl From<BudgetArgs> for SearchBudget {
    fn from(b: BudgetArgs) -> Self {
        SearchBudget { rank_delta: b.rank_delta, node_budget: b.node_budget }
    }
}

enum Failure {
    Io(String),
    Input(String),
}

type Run<T> = std::result::Result<T, Failure>;

/// Renders a parse error with a caret under the offending byte.
fn diagnose(source: &str, text: &str, err: Error) -> Failure {
    let Error::Syntax { offset, .. } = &err else {
        return Failure::Input(format!("{source}: {err}"));
    };
    let offset = (*offset).min(text.len());
    let line_start = text[..offset].rfind('\n').map_or(0, |k| k + 1);
    let line_end = text[offset..].find('\n').map_or(text.len(), |k| offset + k);
    let line_no = text[..offset].matches('\n').count() + 1;
    let col = text[line_start..offset].chars().count();
    Failure::Input(format!(
        "{source}:{line_no}:{}: {err}\n  {}\n  {}^",
        col + 1,
        &text[line_start..line_end],
        " ".repeat(col)
    ))
}

fn read(path: &str) -> Run<String> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{path}: {e}")))
}

fn load_triple(arg: &TripleArg) -> Run<HomotopyDataTriple> {
    let value = arg.triple.as_str();
    match value {
        "alpha_G" | "alpha_g" => return Ok(HomotopyDataTriple::alpha_g()),
        "alpha_F" | "alpha_f" => return Ok(HomotopyDataTriple::alpha_f()),
        _ => {}
    }
    let (source, text) = if Path::new(value).exists() || !value.contains(':') {
        (value.to_string(), read(value)?)
    } else {
        ("<triple>".to_string(), value.to_string())
    };
    parse_triple(&text).map_err(|e| diagnose(&source, &text, e))
}

fn load_phrases(input: &Input, triple: &HomotopyDataTriple) -> Run<Vec<Nanophrase>> {
    let mut out = Vec::new();
    for arg in &input.phrases {
        let sources: Vec<(String, String)> = if Path::new(arg).is_file() {
            read(arg)?
                .lines()
                .enumerate()
                .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
                .map(|(k, l)| (format!("{arg}:{}", k + 1), l.to_string()))
                .collect()
        } else {
            vec![("<phrase>".to_string(), arg.clone())]
        };
        for (source, text) in sources {
            let p = parse_phrase(&text).map_err(|e| diagnose(&source, &text, e))?;
            triple.check_phrase(&p).map_err(|e| Failure::Input(format!("{source}: {e}")))?;
            out.push(p);
        }
    }
    Ok(out)
}

fn input_err(e: Error) -> Failure {
    Failure::Input(e.to_string())
}

fn one_line(s: &str) -> String {
    s.replace('\n', " ; ")
}

fn factor(triple: &HomotopyDataTriple, format: Format) -> String {
    let fz = triple.factorize();
    let mut out = String::new();
    if format == Format::Human {
        let _ = writeln!(out, "{} prime factor(s)", fz.len());
    }
    for (k, f) in fz.factors().iter().enumerate() {
        let known = f.triple.known_prime().map_or("-".to_string(), |kp| kp.to_string());
        match format {
            Format::Human => {
                let _ = writeln!(out, "factor {} ({known}):", k + 1);
                for line in f.triple.to_string().lines() {
                    let _ = writeln!(out, "  {line}");
                }
            }
            Format::Lines => {
                let _ = writeln!(out, "factor\t{}\t{}\t{known}", k + 1, one_line(&f.triple.to_string()));
            }
        }
    }
    out
}

fn selected_invariants(which: &[String], triple: &HomotopyDataTriple) -> Run<Vec<InvariantKind>> {
    if which.is_empty() {
        return Ok(InvariantKind::ALL.into_iter().filter(|k| k.applies_to(triple)).collect());
    }
    which
        .iter()
        .map(|w| {
            let k = InvariantKind::from_name(w.trim())
                .ok_or_else(|| Failure::Input(format!("unknown invariant '{w}' (expected parity, linking, v, u, so)")))?;
            if !k.applies_to(triple) {
                return Err(input_err(Error::NotDiagonal));
            }
            Ok(k)
        })
        .collect()
}

fn decision_text(d: &Decision, format: Format) -> String {
    match format {
        Format::Human => format!("{d}\n"),
        Format::Lines => {
            let mut lines = d.to_string();
            let verdict = d.verdict().to_string();
            if let Some(rest) = lines.strip_prefix(&verdict) {
                lines = rest.trim_start_matches('\n').to_string();
            }
            let mut out = format!("verdict\t{verdict}\n");
            for l in lines.lines().filter(|l| !l.trim().is_empty()) {
                let _ = writeln!(out, "detail\t{}", l.trim());
            }
            out
        }
    }
}

fn run(cli: Cli) -> Run<(String, u8)> {
    let format = cli.format;
    match cli.command {
        Command::Factor { triple } => Ok((factor(&load_triple(&triple)?, format), 0)),
        Command::Invariants { input, which } => {
            let t = load_triple(&input.triple)?;
            let kinds = selected_invariants(&which, &t)?;
            let mut out = String::new();
            for p in load_phrases(&input, &t)? {
                if format == Format::Human {
                    let _ = writeln!(out, "{p}");
                } else {
                    let _ = writeln!(out, "phrase\t{p}");
                }
                for k in &kinds {
                    let value = k.render(&p, &t).map_err(input_err)?;
                    match format {
                        Format::Human => {
                            let _ = writeln!(out, "  {k}:");
                            for line in value.lines() {
                                let _ = writeln!(out, "    {line}");
                            }
                        }
                        Format::Lines => {
                            let _ = writeln!(out, "{k}\t{}", one_line(&value));
                        }
                    }
                }
            }
            Ok((out, 0))
        }
        Command::Decompose { input } => {
            let t = load_triple(&input.triple)?;
            let mut out = String::new();
            for p in load_phrases(&input, &t)? {
                let d = psi(&p, &t).map_err(input_err)?;
                match format {
                    Format::Human => {
                        let _ = writeln!(out, "{p}\n  {d}");
                    }
                    Format::Lines => {
                        let _ = writeln!(out, "{}\t{}", d.multiphrase(), d.theta_string());
                    }
                }
            }
            Ok((out, 0))
        }
        Command::Reduce { input, budget, hr, symmetry } => {
            let t = load_triple(&input.triple)?;
            let budget = SearchBudget::from(budget);
            let mut out = String::new();
            let mut code = 0;
            for p in load_phrases(&input, &t)? {
                let red = reduce_fully(&psi(&p, &t).map_err(input_err)?, &t, budget).map_err(input_err)?;
                if red.class.certification() == Certification::Partial {
                    code = 2;
                }
                if format == Format::Human {
                    let _ = writeln!(out, "{p}\n  reduced: {}", red.representative);
                }
                let _ = writeln!(out, "{}", red.class);
                if hr {
                    let report = hr_report(&p, &t, budget).map_err(input_err)?;
                    let _ = writeln!(out, "{}", if format == Format::Lines { one_line(&report.to_string()) } else { report.to_string() });
                }
                if symmetry {
                    let s = symmetry_obstruction(&p, &t, budget).map_err(input_err)?;
                    let _ = write!(out, "symmetric: {}skew: {}", decision_text(&s.symmetric, format), decision_text(&s.skew, format));
                }
            }
            Ok((out, code))
        }
        Command::Decide { input, budget, reducible } => {
            let t = load_triple(&input.triple)?;
            let budget = SearchBudget::from(budget);
            let ps = load_phrases(&input, &t)?;
            let decision = match reducible {
                Some(i) => {
                    let [p] = ps.as_slice() else {
                        return Err(Failure::Input("--reducible takes exactly one phrase".into()));
                    };
                    if i == 0 || i > p.num_components() {
                        return Err(input_err(Error::IndexOutOfRange { index: i, len: p.num_components() }));
                    }
                    decide_reducible(p, i - 1, &t, budget)
                }
                None => {
                    let [p, q] = ps.as_slice() else {
                        return Err(Failure::Input("decide takes exactly two phrases".into()));
                    };
                    decide_equal(p, q, &t, budget)
                }
            }
            .map_err(input_err)?;
            let code = decision.verdict().exit_code() as u8;
            Ok((decision_text(&decision, format), code))
        }
        Command::Tabulate { triple, budget, max_rank, components, force } => {
            let t = load_triple(&triple)?;
            let census = tabulate(&t, max_rank, components, force, budget.into()).map_err(input_err)?;
            Ok((if format == Format::Lines { census.to_lines() } else { census.to_string() }, 0))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { 0 });
        }
    };
    match run(cli) {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_IO)
        }
    }
}
