//! `degseq` command-line front end.
//!
//! Exit status: 0 on success, 1 when the library refuses the input (range,
//! precondition or budget), 2 on malformed arguments or syntax.

use std::io::Read;
use std::process::ExitCode;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use degseq::potential::is_potentially_with;
use degseq::realize::for_each_realization;
use degseq::sigma::sigma_bruteforce_with_progress;
use degseq::{
    closed_form_sigma, extremal_construction, extremal_sequence, is_graphical, is_potentially_clique_top, layoff,
    realize, sufficient_condition, verify_theorem, DegreeSequence, Error, FormulaFamily, Limits, PatternSpec, RuleTag,
    SearchMode, SimpleGraph, SufficientRule,
};

#[derive(Parser, Debug)]
#[command(
    name = "degseq",
    version,
    about = "Graphical degree sequences and potentially H-graphic sequences"
)]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads for parallel searches (default: all cores).
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,

    /// Search nodes allowed per backtracking search.
    #[arg(long, global = true, env = "DEGSEQ_NODE_BUDGET", default_value_t = Limits::default().node_budget)]
    node_budget: u64,

    /// Largest n for full realization enumeration.
    #[arg(long, global = true, env = "DEGSEQ_REALIZE_LIMIT", default_value_t = Limits::default().max_realization_n)]
    realize_limit: usize,

    /// Largest n for the brute-force threshold sweep.
    #[arg(long, global = true, env = "DEGSEQ_SIGMA_LIMIT", default_value_t = Limits::default().max_sigma_n)]
    sigma_limit: usize,

    /// States the 2-switch search may visit.
    #[arg(long, global = true, env = "DEGSEQ_SWITCH_STATES", default_value_t = Limits::default().switch_states)]
    switch_states: usize,

    /// Run exhaustive searches past the size limits.
    #[arg(long, global = true)]
    accept_cost: bool,

    /// Suppress progress output on stderr.
    #[arg(long, short, global = true)]
    quiet: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Erdős–Gallai graphicality test.
    Graphical { seq: String },
    /// Lay off the k-th term (1-based).
    Layoff { seq: String, k: usize },
    /// Print a realization, or every labeled realization with --all.
    Realize {
        seq: String,
        #[arg(long)]
        all: bool,
    },
    /// Search for a realization containing the pattern.
    Potential {
        seq: String,
        pattern: String,
        /// Enumerate realizations instead of the top-placed search.
        #[arg(long)]
        unpruned: bool,
    },
    /// Whether some realization has a clique on its r + 1 largest degrees.
    CliqueTop { seq: String, r: usize },
    /// Check the hypotheses of a sufficient condition.
    Rule { seq: String, tag: String, r: usize },
    /// Evaluate a closed-form threshold: thm11 r=R | ejl k=K | matching p=P | c4 | turan-k3.
    SigmaFormula {
        family: String,
        /// Family parameters as key=value, followed by n.
        #[arg(num_args = 1.., required = true)]
        rest: Vec<String>,
    },
    /// Brute-force σ(H, n) over every graphical sequence of length n.
    SigmaBrute {
        pattern: String,
        n: usize,
        /// Skip sequences with a zero term.
        #[arg(long)]
        no_zeros: bool,
    },
    /// The extremal construction for K_{r+1} - U.
    Extremal {
        r: usize,
        n: usize,
        /// Print the graph in text format instead of its sequence.
        #[arg(long)]
        graph: bool,
    },
    /// Verify the lower-bound certificate for K_{r+1} - U.
    Verify { r: usize, n: usize, pattern: String },
    /// Degree sequence of a graph file (text or JSON; `-` reads stdin).
    Degrees { file: String },
}

struct Ctx {
    json: bool,
    quiet: bool,
    limits: Limits,
}

enum Failure {
    Domain(String),
    Syntax(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_parse() {
            Failure::Syntax(e.to_string())
        } else {
            Failure::Domain(e.to_string())
        }
    }
}

type Outcome = Result<ExitCode, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    if let Some(t) = cli.threads {
        if t == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .expect("thread pool already built");
    }
    let ctx = Ctx {
        json: cli.json,
        quiet: cli.quiet,
        limits: Limits {
            max_realization_n: cli.realize_limit,
            accept_cost: cli.accept_cost,
            max_sigma_n: cli.sigma_limit,
            node_budget: cli.node_budget,
            switch_states: cli.switch_states,
        },
    };
    match run(&ctx, cli.command) {
        Ok(code) => code,
        Err(Failure::Domain(msg)) => {
            eprintln!("refused: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Syntax(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn sequence(text: &str) -> Result<DegreeSequence, Failure> {
    let (seq, resorted) = DegreeSequence::parse_lenient(text)?;
    if resorted {
        eprintln!("warning: input was not nonincreasing; using {seq}");
    }
    Ok(seq)
}

fn pattern(text: &str) -> Result<(PatternSpec, SimpleGraph), Failure> {
    let spec: PatternSpec = text.parse()?;
    let g = spec.build()?;
    Ok((spec, g))
}

fn emit(ctx: &Ctx, value: Value, text: impl FnOnce() -> String) {
    if ctx.json {
        println!("{value}");
    } else {
        println!("{}", text());
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn run(ctx: &Ctx, command: Command) -> Outcome {
    match command {
        Command::Graphical { seq } => {
            let s = sequence(&seq)?;
            let ok = is_graphical(&s);
            emit(ctx, json!({ "sequence": s, "graphical": ok }), || ok.to_string());
        }
        Command::Layoff { seq, k } => {
            let s = sequence(&seq)?;
            let out = layoff(&s, k)?;
            emit(ctx, json!({ "sequence": s, "k": k, "result": out }), || out.to_string());
        }
        Command::Realize { seq, all } => {
            let s = sequence(&seq)?;
            if all {
                let mut graphs = Vec::new();
                for_each_realization(&s, &ctx.limits, |g| {
                    graphs.push(g.clone());
                    std::ops::ControlFlow::Continue(())
                })?;
                emit(ctx, to_value(&graphs), || {
                    let mut out = format!("# {} labeled realizations", graphs.len());
                    for (i, g) in graphs.iter().enumerate() {
                        out.push_str(&format!("\n# realization {}\n{}", i + 1, g.to_text().trim_end()));
                    }
                    out
                });
            } else {
                let g = realize(&s)?;
                emit(ctx, to_value(&g), || g.to_text().trim_end().to_string());
            }
        }
        Command::Potential {
            seq,
            pattern: p,
            unpruned,
        } => {
            let s = sequence(&seq)?;
            let (spec, h) = pattern(&p)?;
            let mode = if unpruned {
                SearchMode::Exhaustive
            } else {
                SearchMode::Pruned
            };
            let w = is_potentially_with(&s, &h, mode, &ctx.limits)?;
            let value = json!({
                "sequence": s,
                "pattern": spec.to_string(),
                "potential": w.is_some(),
                "witness": w,
            });
            emit(ctx, value, || match &w {
                None => "false".into(),
                Some(w) => {
                    let emb: Vec<String> = w.embedding.0.iter().map(|v| v.to_string()).collect();
                    format!(
                        "true\n# pattern vertex i -> {}\n{}",
                        emb.join(" "),
                        w.realization.to_text().trim_end()
                    )
                }
            });
        }
        Command::CliqueTop { seq, r } => {
            let s = sequence(&seq)?;
            let ok = is_potentially_clique_top(&s, r)?;
            emit(ctx, json!({ "sequence": s, "r": r, "clique_top": ok }), || {
                ok.to_string()
            });
        }
        Command::Rule { seq, tag, r } => {
            let s = sequence(&seq)?;
            let tag: RuleTag = tag.parse()?;
            let ok = sufficient_condition(&s, SufficientRule::new(tag, r))?;
            emit(ctx, json!({ "sequence": s, "rule": tag, "r": r, "holds": ok }), || {
                ok.to_string()
            });
        }
        Command::SigmaFormula { family, rest } => {
            let (fam, n) = formula_family(&family, &rest)?;
            let v = closed_form_sigma(fam, n)?;
            emit(ctx, json!({ "family": fam.to_string(), "n": n, "value": v }), || {
                v.to_string()
            });
        }
        Command::SigmaBrute {
            pattern: p,
            n,
            no_zeros,
        } => {
            let (spec, h) = pattern(&p)?;
            let progress = Progress::new(ctx.quiet, "sequences");
            let res = sigma_bruteforce_with_progress(&h, n, !no_zeros, &ctx.limits, &|c, t| progress.tick(c, t))?;
            progress.finish();
            let mut value = to_value(&res);
            value["pattern"] = json!(spec.to_string());
            emit(ctx, value, || {
                let cert = res.certificate.as_ref().map_or("none".to_string(), |c| c.to_string());
                format!("{}\ncertificate: {cert}\nsequences: {}", res.value, res.sequences)
            });
        }
        Command::Extremal { r, n, graph } => {
            let g = extremal_construction(r, n)?;
            let s = extremal_sequence(r, n)?;
            let formula = closed_form_sigma(FormulaFamily::Thm11 { r }, n).ok();
            let value = json!({
                "r": r,
                "n": n,
                "sequence": s,
                "sigma": s.sigma(),
                "formula": formula,
                "graph": g,
            });
            emit(ctx, value, || {
                if graph {
                    g.to_text().trim_end().to_string()
                } else {
                    s.to_string()
                }
            });
        }
        Command::Verify { r, n, pattern: p } => {
            let (spec, _) = pattern(&p)?;
            if !ctx.quiet {
                eprintln!("verifying K_{} - {spec} at n = {n} ...", r + 1);
            }
            let t = Instant::now();
            let report = verify_theorem(r, n, &spec, &ctx.limits)?;
            if !ctx.quiet {
                eprintln!("done in {:.2?}", t.elapsed());
            }
            emit(ctx, to_value(&report), || report.to_string());
            if !report.passed {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Degrees { file } => {
            let g = read_graph(&file)?;
            let s = g.degree_sequence();
            emit(ctx, json!({ "n": g.n(), "m": g.edge_count(), "sequence": s }), || {
                s.to_string()
            });
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn formula_family(name: &str, rest: &[String]) -> Result<(FormulaFamily, usize), Failure> {
    let (n, params) = rest.split_last().expect("clap requires one value");
    let n: usize = n.parse().map_err(|_| Failure::Syntax(format!("bad n {n:?}")))?;
    let param = |key: &str| -> Result<usize, Failure> {
        let mut found = None;
        for p in params {
            let (k, v) = p
                .split_once('=')
                .ok_or_else(|| Failure::Syntax(format!("expected key=value, got {p:?}")))?;
            if k.trim() != key {
                return Err(Failure::Syntax(format!("unknown parameter {k:?} for {name}")));
            }
            found = Some(
                v.trim()
                    .parse()
                    .map_err(|_| Failure::Syntax(format!("bad value {v:?} for {key}")))?,
            );
        }
        found.ok_or_else(|| Failure::Syntax(format!("{name} needs {key}=<value>")))
    };
    let no_params = || {
        if params.is_empty() {
            Ok(())
        } else {
            Err(Failure::Syntax(format!("{name} takes no parameters")))
        }
    };
    let fam = match name.to_ascii_lowercase().as_str() {
        "thm11" => FormulaFamily::Thm11 { r: param("r")? },
        "ejl" => FormulaFamily::EjlLower { k: param("k")? },
        "matching" => FormulaFamily::PMatching { p: param("p")? },
        "c4" => {
            no_params()?;
            FormulaFamily::C4
        }
        "turan-k3" => {
            no_params()?;
            FormulaFamily::TuranK3
        }
        other => return Err(Failure::Syntax(format!("unknown family {other:?}"))),
    };
    Ok((fam, n))
}

/// Reads a graph in the `n m` text format or as JSON. A JSON object with a
/// `graph`, `realization` or `witness.realization` field is unwrapped, so the
/// output of `extremal --json` and `potential --json` is accepted as is.
fn read_graph(file: &str) -> Result<SimpleGraph, Failure> {
    let text = if file == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Domain(format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(file).map_err(|e| Failure::Domain(format!("{file}: {e}")))?
    };
    let trimmed = text.trim_start();
    if !trimmed.starts_with('{') {
        return Ok(SimpleGraph::parse_text(&text)?);
    }
    let mut v: Value = serde_json::from_str(trimmed).map_err(|e| Failure::Syntax(e.to_string()))?;
    for key in ["graph", "witness", "realization"] {
        if let Some(inner) = v.get_mut(key).map(Value::take) {
            v = inner;
        }
    }
    serde_json::from_value(v).map_err(|e| Failure::Syntax(e.to_string()))
}

/// Throttled `checked/total` lines on stderr.
struct Progress {
    quiet: bool,
    what: &'static str,
    start: Instant,
    last: Mutex<Instant>,
}

impl Progress {
    fn new(quiet: bool, what: &'static str) -> Self {
        let now = Instant::now();
        Progress {
            quiet,
            what,
            start: now,
            last: Mutex::new(now),
        }
    }

    fn tick(&self, checked: usize, total: usize) {
        if self.quiet {
            return;
        }
        let mut last = self.last.lock().unwrap();
        if last.elapsed() >= Duration::from_secs(1) {
            *last = Instant::now();
            eprintln!("  {checked}/{total} {} ({:.1?})", self.what, self.start.elapsed());
        }
    }

    fn finish(&self) {
        if !self.quiet && self.start.elapsed() >= Duration::from_secs(1) {
            eprintln!("  finished in {:.1?}", self.start.elapsed());
        }
    }
}
