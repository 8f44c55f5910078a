use std::fs;
use std::io::Read as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use thompson_core::acceptance;
use thompson_core::brin2v::{
    complement_init, embed_v_to_2v, eval2v, maximal_extension_n, table_checks, table_checks_oracle, NGenSet, Tuple,
    TupleCode,
};
use thompson_core::circuits::{circuit_eval, compile_circuit, cvp_decide, Circuit};
use thompson_core::codes::{complement, complement_single, BitString, PrefixCode};
use thompson_core::eval_v::{
    classify_input, evaluate, evaluate_universal, sequential_apply, word_problem, word_problem_via_eval,
    word_to_element, GenSet, GenWord,
};
use thompson_core::fixators::{fixator_generators, CommutationDecider};
use thompson_core::format::{
    format_code, format_ntable, format_vtable, parse_code, parse_genset, parse_ngenset, parse_ntable, parse_vtable,
};
use thompson_core::monoid::{eval_m, eval_reduction_check, reduction_depth, MGenSet};
use thompson_core::recognizer::{parse_stream, Recognizer};
use thompson_core::{Error, Result};

#[derive(Parser)]
#[command(
    name = "thompson",
    version,
    about = "Evaluation and word problems in V, 2V and M_{2,1}"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Decider {
    Table,
    Universal,
    Commutation,
}

#[derive(Args)]
struct WordArgs {
    /// Generating set: a file, or the built-in `standard` ({A,B}) or `thompson-v` ({A,B,C,P0,P1}).
    #[arg(long, default_value = "standard")]
    genset: String,
    /// The word, tokens separated by spaces.
    #[arg(long, conflicts_with = "word_file")]
    word: Option<String>,
    #[arg(long)]
    word_file: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Decide E_w(x) = y in V.
    Eval {
        #[command(flatten)]
        w: WordArgs,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long, value_enum, default_value_t = Decider::Table)]
        decider: Decider,
        /// Run all three deciders and fail on disagreement.
        #[arg(long)]
        cross_check: bool,
    },
    /// Apply w generator by generator; succeeds when x is a long input.
    EvalLong {
        #[command(flatten)]
        w: WordArgs,
        #[arg(long)]
        x: String,
    },
    /// Classify x as a long, short or too-short input for w.
    Classify {
        #[command(flatten)]
        w: WordArgs,
        #[arg(long)]
        x: String,
    },
    /// Decide w = 1 in V.
    Wp {
        #[command(flatten)]
        w: WordArgs,
        #[arg(long)]
        cross_check: bool,
    },
    /// Decide w = 1 through evaluations E_w(x) = x for all x of length N.
    WpViaEval {
        #[command(flatten)]
        w: WordArgs,
        /// Input length; defaults to the longest table entry reached by w.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Run the stack recognizer on a token stream read from FILE or standard input.
    Recognize {
        #[arg(long)]
        genset: String,
        /// Read the reversed language.
        #[arg(long)]
        rev: bool,
        file: Option<PathBuf>,
    },
    /// Complementary prefix code of a code file, or of one string with --single.
    Complement {
        #[arg(required_unless_present = "single")]
        file: Option<PathBuf>,
        #[arg(long)]
        single: Option<String>,
    },
    /// Generator tables and factor words of the partial fixator of P.
    Fixgen {
        #[arg(long)]
        code: PathBuf,
        #[arg(long, default_value = "thompson-v")]
        genset: String,
    },
    /// Decide g ∈ PFix(P) by commutation.
    Commtest {
        #[arg(long)]
        g: PathBuf,
        #[arg(long)]
        code: PathBuf,
        #[arg(long, default_value = "thompson-v")]
        genset: String,
        /// Also compare with the direct membership check.
        #[arg(long)]
        cross_check: bool,
    },
    /// Decide g(x) = y by commutation.
    EvalComm {
        #[arg(long)]
        g: PathBuf,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long, default_value = "thompson-v")]
        genset: String,
        #[arg(long)]
        cross_check: bool,
    },
    /// Compile a circuit to a word w_C over the gadget generators.
    CompileCircuit { file: PathBuf },
    /// Decide C(x) = y through w_C(0x) = 0yx.
    Cvp {
        file: PathBuf,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long)]
        cross_check: bool,
    },
    /// Q1–Q5 for a 2V table; exits 0 when it is a group element.
    Check2v {
        file: PathBuf,
        #[arg(long)]
        cross_check: bool,
    },
    /// Maximal extension of a 2V table.
    Extend2v { file: PathBuf },
    /// Complementary initial factor code of a tuple code (one tuple per line).
    Complement2v { file: PathBuf },
    /// Decide E_w(x) = y in 2V.
    Eval2v {
        /// 2V generating set file; defaults to the embedded standard set with sigma and t12*1.
        #[arg(long)]
        genset: Option<PathBuf>,
        #[arg(long, conflicts_with = "word_file")]
        word: Option<String>,
        #[arg(long)]
        word_file: Option<PathBuf>,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// Rewrite a V word as a 2V word.
    Embed {
        #[arg(required_unless_present = "word")]
        file: Option<PathBuf>,
        #[arg(long)]
        word: Option<String>,
    },
    /// Decide E_w(x) = y in M_{2,1} over push0, push1, pop0, pop1.
    MonoidCheck {
        #[arg(long, conflicts_with = "word_file")]
        word: Option<String>,
        #[arg(long)]
        word_file: Option<PathBuf>,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        /// Also decide through the bracket reduction at this depth.
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long)]
        cross_check: bool,
    },
    /// Run the acceptance suite.
    Selftest {
        #[arg(long, default_value_t = acceptance::DEFAULT_SEED)]
        seed: u64,
        /// Run one criterion only.
        #[arg(long)]
        only: Option<u8>,
    },
}

/// What a subcommand decided, by which deciders, and what it printed.
#[derive(Serialize, Default)]
struct RunReport {
    command: String,
    decision: Option<bool>,
    deciders: Vec<(String, bool)>,
    agree: bool,
    output: Vec<String>,
    elapsed_ms: f64,
}

impl RunReport {
    fn new(command: &str) -> RunReport {
        RunReport {
            command: command.to_string(),
            agree: true,
            ..RunReport::default()
        }
    }

    fn decided(&mut self, name: &str, v: bool) {
        if let Some(d) = self.decision {
            self.agree &= d == v;
        } else {
            self.decision = Some(v);
        }
        self.deciders.push((name.to_string(), v));
    }

    fn line(&mut self, s: impl Into<String>) {
        self.output.push(s.into());
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Format(format!("{}: {e}", path.display())))
}

fn bits(s: &str) -> Result<BitString> {
    s.parse()
}

fn genset(spec: &str) -> Result<GenSet> {
    match spec {
        "standard" => Ok(GenSet::standard()),
        "thompson-v" => Ok(GenSet::thompson_v()),
        path => parse_genset(&read(Path::new(path))?),
    }
}

fn word(inline: &Option<String>, file: &Option<PathBuf>) -> Result<GenWord> {
    match (inline, file) {
        (Some(w), _) => GenWord::parse(w),
        (None, Some(f)) => GenWord::parse(&read(f)?),
        (None, None) => Err(Error::Format("give --word or --word-file".into())),
    }
}

fn load(w: &WordArgs) -> Result<(GenWord, GenSet)> {
    let g = genset(&w.genset)?;
    let word = word(&w.word, &w.word_file)?;
    g.check_word(&word)?;
    Ok((word, g))
}

fn run(cmd: &Command, r: &mut RunReport) -> Result<()> {
    match cmd {
        Command::Eval {
            w,
            x,
            y,
            decider,
            cross_check,
        } => {
            let (w, g) = load(w)?;
            let (x, y) = (bits(x)?, bits(y)?);
            let all = [Decider::Table, Decider::Universal, Decider::Commutation];
            let chosen: Vec<Decider> = if *cross_check { all.to_vec() } else { vec![*decider] };
            for d in chosen {
                match d {
                    Decider::Table => r.decided("table", evaluate(&w, &x, &y, &g)?),
                    Decider::Universal => r.decided("universal", evaluate_universal(&w, &x, &y, &g)?),
                    Decider::Commutation => {
                        let e = word_to_element(&w, &g)?;
                        let v = CommutationDecider::new(&GenSet::thompson_v()).eval(&e, &x, &y)?;
                        r.decided("commutation", v);
                    }
                }
            }
        }
        Command::EvalLong { w, x } => {
            let (w, g) = load(w)?;
            let x = bits(x)?;
            match sequential_apply(&w, &x, &g)? {
                thompson_core::ApplyOutcome::Value(v) => {
                    r.line(v.to_string());
                    r.decided("sequential", true);
                }
                other => {
                    r.line(format!("not a long input: {other:?}"));
                    r.decided("sequential", false);
                }
            }
        }
        Command::Classify { w, x } => {
            let (w, g) = load(w)?;
            let c = classify_input(&w, &bits(x)?, &g)?;
            r.line(format!("{c:?}"));
        }
        Command::Wp { w, cross_check } => {
            let (w, g) = load(w)?;
            r.decided("table", word_problem(&w, &g)?);
            if *cross_check {
                let n = word_to_element(&w, &g)?.maxlen();
                r.decided("evaluation", word_problem_via_eval(&w, n, &g)?.0);
            }
        }
        Command::WpViaEval { w, n } => {
            let (w, g) = load(w)?;
            let n = match n {
                Some(n) => *n,
                None => word_to_element(&w, &g)?.maxlen(),
            };
            let (holds, moved) = word_problem_via_eval(&w, n, &g)?;
            if let Some(x) = moved {
                r.line(format!("moved input {x}"));
            }
            r.decided("evaluation", holds);
        }
        Command::Recognize { genset: gs, rev, file } => {
            let g = genset(gs)?;
            let text = match file {
                Some(f) => read(f)?,
                None => {
                    let mut s = String::new();
                    std::io::stdin()
                        .read_to_string(&mut s)
                        .map_err(|e| Error::Format(format!("standard input: {e}")))?;
                    s
                }
            };
            let stream = parse_stream(&text)?;
            let rec = Recognizer::new(&g);
            let (accept, trace) = if *rev {
                rec.recognize_rev(&stream)?
            } else {
                rec.recognize(&stream)?
            };
            r.line(format!(
                "steps {} (reads {}, pushes {}, pops {})",
                trace.steps(),
                trace.reads,
                trace.pushes,
                trace.pops
            ));
            r.decided(if *rev { "reverse recognizer" } else { "recognizer" }, accept);
        }
        Command::Complement { file, single } => {
            let c = match (single, file) {
                (Some(u), _) => complement_single(&bits(u)?)?,
                (None, Some(f)) => complement(&parse_code(&read(f)?)?),
                (None, None) => unreachable!("clap requires one of them"),
            };
            r.line(format_code(&c).trim_end().to_string());
        }
        Command::Fixgen { code, genset: gs } => {
            let p = parse_code(&read(code)?)?;
            let fg = fixator_generators(&p, &genset(gs)?)?;
            r.line(format!("# P = {}", code_line(&fg.base_code)));
            r.line(format!("# P' = {}", code_line(&fg.complement_code)));
            r.line(format!("# B = {}", code_line(&fg.bridge_code)));
            for (name, table, factors) in &fg.generators {
                r.line(format!("[{name}]"));
                r.line(format_vtable(table).trim_end().to_string());
                r.line(format!("# word: {factors}"));
            }
        }
        Command::Commtest {
            g,
            code,
            genset: gs,
            cross_check,
        } => {
            let g = parse_vtable(&read(g)?)?;
            let p = parse_code(&read(code)?)?;
            let o = CommutationDecider::new(&genset(gs)?).membership(&g, &p)?;
            r.line(format!("{} equalities checked", o.equalities_checked));
            if let Some(w) = &o.witness {
                r.line(format!("failing equality: {w}"));
            }
            r.decided("commutation", o.holds);
            if *cross_check {
                r.decided("direct", thompson_core::fixators::pfix_membership_direct(&g, &p));
            }
        }
        Command::EvalComm {
            g,
            x,
            y,
            genset: gs,
            cross_check,
        } => {
            let g = parse_vtable(&read(g)?)?;
            let (x, y) = (bits(x)?, bits(y)?);
            let rep = CommutationDecider::new(&genset(gs)?).eval_report(&g, &x, &y)?;
            r.line(format!(
                "coset test {}, conjugation test {}",
                rep.coset.holds, rep.conjugation.holds
            ));
            r.decided("commutation", rep.holds());
            if *cross_check {
                r.decided("table", g.eval_oracle(&x, &y));
            }
        }
        Command::CompileCircuit { file } => {
            let c: Circuit = read(file)?.parse()?;
            let rep = compile_circuit(&c)?;
            r.line(rep.word.to_string());
            r.line(format!(
                "# size {} for |C| = {}, widths {:?}, |Z| = {}",
                rep.size,
                c.size(),
                rep.widths,
                rep.z_len
            ));
        }
        Command::Cvp {
            file,
            x,
            y,
            cross_check,
        } => {
            let c: Circuit = read(file)?.parse()?;
            let (x, y) = (bits(x)?, bits(y)?);
            r.decided("word", cvp_decide(&c, &x, &y)?);
            if *cross_check {
                r.decided("circuit", circuit_eval(&c, &x)? == y);
            }
        }
        Command::Check2v { file, cross_check } => {
            let f = parse_ntable(&read(file)?)?;
            let q = table_checks(&f)?;
            for (i, a) in q.answers().iter().enumerate() {
                r.line(format!("Q{}={a}", i + 1));
            }
            if let Some(w) = &q.witness {
                r.line(format!("witness {w}"));
            }
            r.decided("joins", q.q5);
            if *cross_check {
                let o = table_checks_oracle(&f)?;
                r.agree &= o.answers() == q.answers();
                r.decided("expansion", o.q5);
            }
        }
        Command::Extend2v { file } => {
            let f = parse_ntable(&read(file)?)?;
            r.line(format_ntable(&maximal_extension_n(&f)?).trim_end().to_string());
        }
        Command::Complement2v { file } => {
            let text = read(file)?;
            let mut members = Vec::new();
            let mut n = 2;
            for l in text
                .lines()
                .map(|l| l.split('#').next().unwrap_or("").trim())
                .filter(|l| !l.is_empty())
            {
                let t: Tuple = l.parse()?;
                n = t.n();
                members.push(t);
            }
            let c = complement_init(&TupleCode::new(n, members)?)?;
            for t in c.members() {
                r.line(t.to_string());
            }
            r.decided("essential", c.is_empty());
        }
        Command::Eval2v {
            genset: gs,
            word: w,
            word_file,
            x,
            y,
        } => {
            let g = match gs {
                Some(f) => parse_ngenset(&read(f)?)?,
                None => NGenSet::embedded(&GenSet::standard())?,
            };
            let w = word(w, word_file)?;
            let (x, y): (Tuple, Tuple) = (x.parse()?, y.parse()?);
            r.decided("2V", eval2v(&w, &x, &y, &g)?);
        }
        Command::Embed { file, word: w } => {
            let w = word(w, file)?;
            r.line(embed_v_to_2v(&w).to_string());
        }
        Command::MonoidCheck {
            word: w,
            word_file,
            x,
            y,
            depth,
            cross_check,
        } => {
            let g = MGenSet::pushpop();
            let w = word(w, word_file)?;
            let (x, y) = (bits(x)?, bits(y)?);
            r.decided("table", eval_m(&w, &x, &y, &g)?);
            if *cross_check || depth.is_some() {
                let d = match depth {
                    Some(d) => *d,
                    None => reduction_depth(&w, &x, &g)?,
                };
                r.decided("bracket", eval_reduction_check(&w, &x, &y, d, &g)?);
            }
        }
        Command::Selftest { seed, only } => {
            let outcomes: Vec<_> = match only {
                Some(id) if (1..=10).contains(id) => vec![acceptance::run(*id, *seed)],
                Some(id) => return Err(Error::Format(format!("no criterion {id}"))),
                None => acceptance::run_all(*seed),
            };
            for o in &outcomes {
                r.line(o.to_string());
            }
            r.decision = Some(outcomes.iter().all(|o| o.passed()));
        }
    }
    Ok(())
}

fn code_line(c: &PrefixCode) -> String {
    let parts: Vec<String> = c.members().iter().map(ToString::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Eval { .. } => "eval",
        Command::EvalLong { .. } => "eval-long",
        Command::Classify { .. } => "classify",
        Command::Wp { .. } => "wp",
        Command::WpViaEval { .. } => "wp-via-eval",
        Command::Recognize { .. } => "recognize",
        Command::Complement { .. } => "complement",
        Command::Fixgen { .. } => "fixgen",
        Command::Commtest { .. } => "commtest",
        Command::EvalComm { .. } => "eval-comm",
        Command::CompileCircuit { .. } => "compile-circuit",
        Command::Cvp { .. } => "cvp",
        Command::Check2v { .. } => "check2v",
        Command::Extend2v { .. } => "extend2v",
        Command::Complement2v { .. } => "complement2v",
        Command::Eval2v { .. } => "eval2v",
        Command::Embed { .. } => "embed",
        Command::MonoidCheck { .. } => "monoid-check",
        Command::Selftest { .. } => "selftest",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut report = RunReport::new(command_name(&cli.command));
    let start = Instant::now();
    let result = run(&cli.command, &mut report);
    report.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    if let Err(e) = result {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    match cli.format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("serializable report")
        ),
        Format::Text => {
            for l in &report.output {
                println!("{l}");
            }
            for (name, v) in &report.deciders {
                println!("{name}: {}", if *v { "yes" } else { "no" });
            }
        }
    }
    if !report.agree {
        eprintln!("error: deciders disagree");
        return ExitCode::from(3);
    }
    match report.decision {
        Some(false) => ExitCode::from(1),
        _ => ExitCode::SUCCESS,
    }
}
