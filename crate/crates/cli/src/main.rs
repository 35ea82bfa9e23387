//! `cjsr` — bounds on the joint spectral radius of a matrix set, optionally
//! constrained by a DFA on the switching sequence.
//!
//! One JSON input file carries the matrix set plus optional `dfa` and
//! `omega` sections; each subcommand picks the interpretation it needs.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use cjsr_core::schema::SystemFile;
use cjsr_core::systems::{edge_lift, omega_lift, stp_lift, t_product_lift};
use cjsr_core::word::Word;
use cjsr_core::{
    cjsr_bounds_with, gripenberg, jsr_bounds_with, BoundOptions, BoundsResult, NormKind,
};

#[derive(Parser)]
#[command(name = "cjsr", version, about = "Certified joint spectral radius bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum NormArg {
    One,
    Inf,
    Fro,
    Two,
}

impl NormArg {
    fn kind(self) -> NormKind {
        match self {
            NormArg::One => NormKind::One,
            NormArg::Inf => NormKind::Inf,
            NormArg::Fro => NormKind::Frobenius,
            NormArg::Two => NormKind::Two,
        }
    }

    fn name(self) -> &'static str {
        match self {
            NormArg::One => "one",
            NormArg::Inf => "inf",
            NormArg::Fro => "fro",
            NormArg::Two => "two",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputArg {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum LiftKind {
    /// Structure-matrix Kronecker lift of the DFA-constrained system.
    Stp,
    /// One matrix per DFA edge.
    Edge,
    /// Adjacency lift from the omega section.
    Omega,
}

#[derive(Subcommand)]
enum Command {
    /// Fixed-horizon lower/upper bracket (constrained when a DFA is present).
    Bounds {
        input: PathBuf,
        #[arg(long, default_value_t = 6)]
        k: usize,
        #[arg(long, value_enum, default_value_t = NormArg::Two)]
        norm: NormArg,
        #[arg(long, default_value_t = 10_000_000)]
        cap: u64,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        #[arg(long, value_enum, default_value_t = OutputArg::Text)]
        output: OutputArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a lifted matrix set as a system JSON file.
    Lift {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = LiftKind::Stp)]
        kind: LiftKind,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Branch-and-bound bracket of width delta (lifted when a DFA is present).
    Gripenberg {
        input: PathBuf,
        #[arg(long, default_value_t = 0.05)]
        delta: f64,
        #[arg(long, value_enum, default_value_t = NormArg::Two)]
        norm: NormArg,
        #[arg(long, default_value_t = 10_000_000)]
        cap: u64,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        #[arg(long, value_enum, default_value_t = OutputArg::Text)]
        output: OutputArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the T-product lift (labels = accepted length-T words).
    Tproduct {
        input: PathBuf,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check words against the DFA section.
    Accepts {
        input: PathBuf,
        words: Vec<String>,
    },
    /// Bounds at every horizon 1..=k, as a JSON table.
    Report {
        input: PathBuf,
        #[arg(long, default_value_t = 6)]
        k: usize,
        #[arg(long, value_enum, default_value_t = NormArg::Two)]
        norm: NormArg,
        #[arg(long, default_value_t = 10_000_000)]
        cap: u64,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// 12 significant digits, diff-stable.
fn sig12(x: f64) -> String {
    format!("{x:.11e}")
}

fn emit(text: &str, out: &Option<PathBuf>) -> cjsr_core::Result<()> {
    match out {
        Some(path) => std::fs::write(path, format!("{text}\n"))?,
        None => println!("{text}"),
    }
    Ok(())
}

#[derive(Serialize)]
struct BoundsReport {
    command: &'static str,
    k: Option<usize>,
    delta: Option<f64>,
    norm: &'static str,
    lower: f64,
    upper: f64,
    witness: String,
    verdict: &'static str,
    products_evaluated: u64,
    truncated: bool,
}

impl BoundsReport {
    fn new(
        command: &'static str,
        k: Option<usize>,
        delta: Option<f64>,
        norm: NormArg,
        b: &BoundsResult<f64>,
    ) -> Self {
        Self {
            command,
            k,
            delta,
            norm: norm.name(),
            lower: b.lower,
            upper: b.upper,
            witness: b.lower_witness.to_string(),
            verdict: b.verdict(),
            products_evaluated: b.products_evaluated,
            truncated: b.truncated,
        }
    }

    fn text(&self) -> String {
        let mut lines = Vec::new();
        if let Some(k) = self.k {
            lines.push(format!("k = {k}"));
        }
        if let Some(d) = self.delta {
            lines.push(format!("delta = {}", sig12(d)));
        }
        lines.push(format!("norm = {}", self.norm));
        lines.push(format!("lower = {}", sig12(self.lower)));
        lines.push(format!("upper = {}", sig12(self.upper)));
        lines.push(format!("witness = {}", self.witness));
        lines.push(format!("verdict = {}", self.verdict));
        lines.push(format!("products = {}", self.products_evaluated));
        lines.push(format!("truncated = {}", self.truncated));
        lines.join("\n")
    }
}

fn render(report: &BoundsReport, output: OutputArg, out: &Option<PathBuf>) -> cjsr_core::Result<()> {
    let text = match output {
        OutputArg::Text => report.text(),
        OutputArg::Json => serde_json::to_string_pretty(report)?,
    };
    emit(&text, out)
}

fn run(cli: Cli) -> cjsr_core::Result<u8> {
    match cli.command {
        Command::Bounds {
            input,
            k,
            norm,
            cap,
            threads,
            output,
            out,
        } => {
            let file = SystemFile::load(&input)?;
            let opts = BoundOptions {
                threads,
                product_cap: cap,
            };
            let b = match file.to_dfa()? {
                Some(dfa) => {
                    let c = cjsr_core::ConstrainedSystem::new(file.to_arbitrary()?, dfa)?;
                    cjsr_bounds_with(&c, k, &norm.kind(), &opts)?
                }
                None => jsr_bounds_with(&file.to_arbitrary()?, k, &norm.kind(), &opts)?,
            };
            let report = BoundsReport::new("bounds", Some(k), None, norm, &b);
            render(&report, output, &out)?;
            Ok(if b.truncated { 2 } else { 0 })
        }
        Command::Gripenberg {
            input,
            delta,
            norm,
            cap,
            threads: _,
            output,
            out,
        } => {
            let file = SystemFile::load(&input)?;
            let b = match file.to_dfa()? {
                Some(dfa) => {
                    let c = cjsr_core::ConstrainedSystem::new(file.to_arbitrary()?, dfa.clone())?;
                    let lifted = stp_lift(&c)?.to_arbitrary();
                    let block = NormKind::block(norm.kind(), dfa.num_states());
                    gripenberg(&lifted, delta, &block, cap)?
                }
                None => gripenberg(&file.to_arbitrary()?, delta, &norm.kind(), cap)?,
            };
            let report = BoundsReport::new("gripenberg", None, Some(delta), norm, &b);
            render(&report, output, &out)?;
            Ok(if b.truncated { 2 } else { 0 })
        }
        Command::Lift { input, kind, out } => {
            let file = SystemFile::load(&input)?;
            let lifted = match kind {
                LiftKind::Stp => {
                    let c = file.to_constrained()?;
                    stp_lift(&c)?.to_arbitrary()
                }
                LiftKind::Edge => {
                    let c = file.to_constrained()?;
                    cjsr_core::ArbitrarySystem::new(edge_lift(&c)?)?
                }
                LiftKind::Omega => {
                    let omega = file.to_omega()?.ok_or_else(|| {
                        cjsr_core::Error::Invalid("input has no omega section".into())
                    })?;
                    omega_lift(&file.to_arbitrary()?, &omega)?
                }
            };
            let text = SystemFile::from_arbitrary(&lifted).to_json()?;
            emit(&text, &out)?;
            Ok(0)
        }
        Command::Tproduct { input, t, out } => {
            let file = SystemFile::load(&input)?;
            let c = file.to_constrained()?;
            let tp = t_product_lift(&c, t)?;
            let sys_file = SystemFile::from_constrained(&tp.system);
            let mut value = serde_json::to_value(&sys_file)?;
            let words: Vec<String> = tp.label_words.iter().map(|w| w.to_string()).collect();
            value
                .as_object_mut()
                .expect("system file serializes to an object")
                .insert("label_words".into(), serde_json::to_value(words)?);
            emit(&serde_json::to_string_pretty(&value)?, &out)?;
            Ok(0)
        }
        Command::Accepts { input, words } => {
            let file = SystemFile::load(&input)?;
            let dfa = file.to_dfa()?.ok_or_else(|| {
                cjsr_core::Error::Invalid("input has no dfa section".into())
            })?;
            if words.is_empty() {
                return Err(cjsr_core::Error::Invalid("no words given".into()));
            }
            for text in &words {
                let w = Word::parse(text, dfa.num_labels())?;
                let verdict = if dfa.accepts(&w)? { "accept" } else { "reject" };
                println!("{w}: {verdict}");
            }
            Ok(0)
        }
        Command::Report {
            input,
            k,
            norm,
            cap,
            threads,
            out,
        } => {
            let file = SystemFile::load(&input)?;
            let opts = BoundOptions {
                threads,
                product_cap: cap,
            };
            let dfa = file.to_dfa()?;
            let system = file.to_arbitrary()?;
            let mut rows = Vec::new();
            let mut any_truncated = false;
            for horizon in 1..=k {
                let b = match &dfa {
                    Some(d) => {
                        let c = cjsr_core::ConstrainedSystem::new(system.clone(), d.clone())?;
                        cjsr_bounds_with(&c, horizon, &norm.kind(), &opts)?
                    }
                    None => jsr_bounds_with(&system, horizon, &norm.kind(), &opts)?,
                };
                any_truncated |= b.truncated;
                rows.push(BoundsReport::new("bounds", Some(horizon), None, norm, &b));
            }
            emit(&serde_json::to_string_pretty(&rows)?, &out)?;
            Ok(if any_truncated { 2 } else { 0 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
