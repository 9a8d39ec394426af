use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use lspace_core::classify::{self, Format, PropagationInput, RegionVerdict, Verdict};
use lspace_core::surgery::{ShapeChoice, TruncationOptions};
use lspace_core::{corpus, obstruction_report, Error, LinkData, NTable, Surgeon};

/// `print!` that reports write errors instead of panicking on a closed pipe.
macro_rules! out {
    ($($t:tt)*) => { write!(std::io::stdout(), $($t)*)? };
}

macro_rules! outln {
    ($($t:tt)*) => { writeln!(std::io::stdout(), $($t)*)? };
}

const UNRELIABLE: &str = "UNRELIABLE: input failed L-space gate";

#[derive(Parser)]
#[command(
    name = "lspace",
    version,
    about = "Hat Heegaard Floer dimensions and L-space surgeries of two-component L-space links"
)]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    /// Run on links that fail the L-space obstruction gate; output is stamped unreliable.
    #[arg(long, global = true)]
    force: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Per-Spin^c dimensions, total and verdict for one framing.
    Surgery {
        #[arg(long)]
        link: String,
        #[arg(long, num_args = 2, value_names = ["P1", "P2"], allow_negative_numbers = true)]
        framing: Vec<i64>,
        #[arg(long, value_enum, default_value_t = ShapeArg::Auto)]
        shape: ShapeArg,
        /// Grow the truncation by this much.
        #[arg(long, default_value_t = 0)]
        enlarge: i64,
    },
    /// Classify every framing in [A, B]^2.
    Classify {
        #[arg(long)]
        link: String,
        #[arg(long, num_args = 2, value_names = ["A", "B"], allow_negative_numbers = true)]
        range: Vec<i64>,
        #[arg(long, value_enum, default_value_t = FormatArg::Ascii)]
        format: FormatArg,
        /// Write the document here instead of stdout.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Polynomial obstructions to being an L-space link.
    Obstruct {
        #[arg(long)]
        link: String,
    },
    /// The table of n^(+L2) on a square window.
    Nmatrix {
        #[arg(long)]
        link: String,
        #[arg(long, default_value_t = 4)]
        window: i64,
    },
    /// Vanishing thresholds of both n-tables and the truncation bound b.
    Nu {
        #[arg(long)]
        link: String,
    },
    /// Verdicts of the explicit T(2,2n) conditions.
    Torus {
        #[arg(long)]
        n: i64,
        #[arg(long, num_args = 2, value_names = ["A", "B"], allow_negative_numbers = true)]
        range: Vec<i64>,
        /// Also run the classifier and report disagreements.
        #[arg(long)]
        compare: bool,
    },
    /// Close a set of known L-space framings under the induction rules.
    Propagate {
        #[arg(long)]
        seeds: PathBuf,
    },
    /// Print a link as a JSON descriptor.
    Export {
        #[arg(long)]
        link: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ShapeArg {
    Auto,
    Parallelogram,
    Sheared,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Ascii,
    Svg,
    Json,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) if is_broken_pipe(&e) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn is_broken_pipe(e: &anyhow::Error) -> bool {
    e.downcast_ref::<std::io::Error>()
        .is_some_and(|e| e.kind() == std::io::ErrorKind::BrokenPipe)
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(Error::Obstructed(_)) => 2,
        Some(Error::UnsupportedFraming { .. }) => 3,
        _ => 1,
    }
}

/// A corpus name, or a path to a JSON descriptor.
fn load_link(spec: &str) -> anyhow::Result<LinkData> {
    let path = Path::new(spec);
    if path.is_file() {
        return Ok(lspace_core::parse_link_file(path)?);
    }
    corpus::by_name(spec).with_context(|| format!("no corpus link or file named {spec:?}"))
}

fn surgeon(spec: &str, force: bool) -> anyhow::Result<Surgeon> {
    Ok(Surgeon::new(load_link(spec)?, force)?)
}

fn print_json<T: serde::Serialize>(value: &T) -> anyhow::Result<()> {
    outln!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn run(cli: &Cli) -> anyhow::Result<ExitCode> {
    match &cli.command {
        Command::Surgery {
            link,
            framing,
            shape,
            enlarge,
        } => {
            let s = surgeon(link, cli.force)?;
            let opts = TruncationOptions {
                shape: match shape {
                    ShapeArg::Auto => ShapeChoice::Auto,
                    ShapeArg::Parallelogram => ShapeChoice::Parallelogram,
                    ShapeArg::Sheared => ShapeChoice::Sheared,
                },
                enlarge: *enlarge,
            };
            let r = s.hf_hat_with(framing[0], framing[1], opts)?;
            if cli.json {
                print_json(&r)?;
            } else {
                out!("{r}");
            }
        }
        Command::Classify {
            link,
            range,
            format,
            output,
        } => {
            let s = surgeon(link, cli.force)?;
            let region = classify::region_scan(&s, range[0], range[1])?;
            let format = match (cli.json, format) {
                (true, _) | (_, FormatArg::Json) => Format::Json,
                (_, FormatArg::Svg) => Format::Svg,
                (_, FormatArg::Ascii) => Format::Ascii,
            };
            let mut doc = classify::render(&region, format);
            if region.unreliable && format == Format::Ascii {
                doc = format!("{UNRELIABLE}\n{doc}");
            }
            match output {
                Some(path) => std::fs::write(path, doc)
                    .with_context(|| format!("cannot write {}", path.display()))?,
                None => out!("{doc}"),
            }
        }
        Command::Obstruct { link } => {
            let link = load_link(link)?;
            let report = obstruction_report(&link);
            if cli.json {
                print_json(&report)?;
            } else {
                out!("{report}");
            }
            if !report.passes() {
                return Ok(ExitCode::from(2));
            }
        }
        Command::Nmatrix { link, window } => {
            let link = load_link(link)?;
            let m = NTable::new(&link).nmatrix(*window);
            if cli.json {
                print_json(&m)?;
            } else {
                out!("{m}");
            }
        }
        Command::Nu { link } => {
            let s = surgeon(link, cli.force)?;
            let profile = s.table().nu_profile()?;
            if cli.json {
                print_json(&serde_json::json!({
                    "link": s.link().name,
                    "unreliable": !s.report().passes(),
                    "b": profile.b,
                    "nu1": profile.nu1,
                    "nu2": profile.nu2,
                }))?;
            } else {
                if !s.report().passes() {
                    outln!("{UNRELIABLE}");
                }
                outln!("{}: b = {}", s.link().name, profile.b);
                outln!("{:>8} {:>10} {:>10}", "s", "nu+L1", "nu+L2");
                for (&(s1, n1), &(_, n2)) in profile.nu1.iter().zip(&profile.nu2) {
                    outln!(
                        "{:>8} {:>10} {:>10}",
                        s1.to_string(),
                        n1.to_string(),
                        n2.to_string()
                    );
                }
            }
        }
        Command::Torus { n, range, compare } => {
            return torus(cli, *n, range[0], range[1], *compare)
        }
        Command::Propagate { seeds } => {
            let text = std::fs::read_to_string(seeds)
                .with_context(|| format!("cannot read {}", seeds.display()))?;
            let input: PropagationInput =
                serde_json::from_str(&text).context("malformed seeds file")?;
            let facts = classify::propagate(&input).list(input.lk);
            if cli.json {
                print_json(&facts)?;
            } else {
                for f in &facts {
                    outln!("({}, {}) det {}: {:?}", f.p1, f.p2, f.det, f.provenance);
                }
                outln!("{} framings certified", facts.len());
            }
        }
        Command::Export { link } => {
            outln!("{}", lspace_core::serialize_link(&load_link(link)?))
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn torus(cli: &Cli, n: i64, lo: i64, hi: i64, compare: bool) -> anyhow::Result<ExitCode> {
    if n < 2 {
        bail!("n must be at least 2");
    }
    let mut cells = Vec::new();
    for p2 in (lo..=hi).rev() {
        for p1 in lo..=hi {
            let verdict = match classify::torus_oracle(n, p1, p2) {
                None => Verdict::B1Positive,
                Some(true) => Verdict::Lspace,
                Some(false) => Verdict::NotLspace,
            };
            cells.push(classify::Cell { p1, p2, verdict });
        }
    }
    let oracle = RegionVerdict {
        link: format!("T(2,{})", 2 * n),
        lk: n,
        range: (lo, hi),
        cells,
        unreliable: false,
    };
    if !compare {
        let format = if cli.json {
            Format::Json
        } else {
            Format::Ascii
        };
        out!("{}", classify::render(&oracle, format));
        return Ok(ExitCode::SUCCESS);
    }
    let s = Surgeon::new(corpus::torus(n), false)?;
    let computed = classify::region_scan(&s, lo, hi)?;
    let mismatches: Vec<_> = oracle
        .cells
        .iter()
        .zip(&computed.cells)
        .filter(|(o, c)| c.verdict != Verdict::Unsupported && o.verdict != c.verdict)
        .map(|(o, c)| (o.p1, o.p2, o.verdict, c.verdict))
        .collect();
    let unsupported = computed
        .cells
        .iter()
        .filter(|c| c.verdict == Verdict::Unsupported)
        .count();
    if cli.json {
        let rows: Vec<_> = mismatches
            .iter()
            .map(|(p1, p2, o, c)| serde_json::json!({"p1": p1, "p2": p2, "oracle": o, "classifier": c}))
            .collect();
        print_json(&serde_json::json!({
            "n": n,
            "range": [lo, hi],
            "cells": oracle.cells.len(),
            "unsupported": unsupported,
            "mismatches": rows,
        }))?;
    } else {
        out!("{}", classify::render_ascii(&computed));
        outln!(
            "{} cells, {unsupported} unsupported, {} disagreements with the oracle",
            oracle.cells.len(),
            mismatches.len()
        );
        for (p1, p2, o, c) in &mismatches {
            outln!("  ({p1}, {p2}): oracle {o:?}, classifier {c:?}");
        }
    }
    Ok(if mismatches.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
