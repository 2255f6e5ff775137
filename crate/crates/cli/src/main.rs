mod dot;
mod formats;
mod render;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use formats::{Format, RelationDocument};
use relkit::quotient::quotient_relation;
use relkit::relation::Relation;
use relkit::rng::{random_relation, SplitMix64};
use relkit::solutions::{deb_decompose, solve};
use relkit::verify::{run_sweep, SweepConfig};
use relkit::zorn::{check_hypothesis, extend_chain, find_top_cycle, verify_theorem};

#[derive(Parser)]
#[command(
    name = "relkit",
    version,
    about = "Analyze finite binary relations: closures, quotient spaces, Schwartz sets, chain extension"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArgs {
    /// Input file, or `-` for stdin
    #[arg(default_value = "-")]
    input: String,
    /// Input format
    #[arg(long, value_enum, default_value = "edge")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a relation: reflexivity, transitivity, antisymmetry, totality
    Props {
        #[command(flatten)]
        input: InputArgs,
        /// Emit JSON instead of text
        #[arg(long)]
        json: bool,
    },
    /// Print the transitive closure as a relation document
    Closure {
        #[command(flatten)]
        input: InputArgs,
        /// Output format (defaults to the input format)
        #[arg(long, value_enum)]
        output_format: Option<Format>,
    },
    /// Equivalence classes and the induced order on them
    Quotient {
        #[command(flatten)]
        input: InputArgs,
        /// Emit JSON instead of text
        #[arg(long)]
        json: bool,
        /// Also write the condensation as DOT to this path (`-` for stdout)
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
    },
    /// Maximal elements, undominated sets, top cycles and both Schwartz sets
    Solve {
        #[command(flatten)]
        input: InputArgs,
        /// Emit JSON instead of text
        #[arg(long)]
        json: bool,
    },
    /// Chain-extension procedures; prints a JSON trace
    Zorn {
        #[command(subcommand)]
        procedure: ZornCommand,
    },
    /// Generate a seeded random relation document
    Random {
        /// Universe size
        #[arg(long)]
        n: usize,
        /// Probability of including each ordered pair (self-loops included)
        #[arg(long)]
        density: f64,
        /// Generator seed
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "edge")]
        output_format: Format,
    },
    /// Run the brute-force oracle sweep; exits 1 on any violation
    Verify {
        /// Largest universe size (exhaustive up to 3, random beyond)
        #[arg(long, default_value_t = 6)]
        nmax: usize,
        /// Random instances per universe size above 3
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum ZornCommand {
    /// Does every chain have an upper bound?
    CheckHypothesis {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Grow a chain by repeatedly adding a fresh upper bound
    ExtendChain {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Extract a top cycle around a maximal element of the strict closure order
    FindTopCycle {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Check the hypothesis and the top-cycle conclusion side by side
    VerifyTheorem {
        #[command(flatten)]
        input: InputArgs,
    },
}

fn read_input(args: &InputArgs) -> Result<Relation> {
    let text = if args.input == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .context("reading stdin")?;
        buf
    } else {
        std::fs::read_to_string(&args.input)
            .with_context(|| format!("reading {}", args.input))?
    };
    let doc = RelationDocument::parse(&text, args.format)?;
    Ok(doc.to_relation()?)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Props { input, json } => {
            let r = read_input(&input)?;
            let props = r.classify();
            if json {
                println!("{}", serde_json::to_string_pretty(&render::props_json(&r, &props))?);
            } else {
                print!("{}", render::props_text(&r, &props));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Closure { input, output_format } => {
            let r = read_input(&input)?;
            let closure = r.transitive_closure();
            let doc = RelationDocument::from_relation(&closure);
            print!("{}", doc.write(output_format.unwrap_or(input.format)));
            Ok(ExitCode::SUCCESS)
        }
        Command::Quotient { input, json, dot } => {
            let r = read_input(&input)?;
            let q = quotient_relation(&r)?;
            if let Some(path) = dot {
                let rendered = dot::emit_dot(&r, &q);
                if path.as_os_str() == "-" {
                    print!("{rendered}");
                } else {
                    std::fs::write(&path, rendered)
                        .with_context(|| format!("writing {}", path.display()))?;
                }
            }
            if json {
                println!("{}", serde_json::to_string_pretty(&render::quotient_json(&r, &q))?);
            } else {
                print!("{}", render::quotient_text(&r, &q));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Solve { input, json } => {
            let r = read_input(&input)?;
            let report = solve(&r)?;
            let deb = deb_decompose(&r)?;
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&render::solve_json(&r, &report, &deb))?
                );
            } else {
                print!("{}", render::solve_text(&r, &report, &deb));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Zorn { procedure } => run_zorn(procedure),
        Command::Random { n, density, seed, output_format } => {
            if !(0.0..=1.0).contains(&density) {
                bail!("--density must lie in [0, 1], got {density}");
            }
            let mut rng = SplitMix64::new(seed);
            let r = random_relation(n, density, &mut rng);
            let doc = RelationDocument::from_relation(&r);
            print!("{}", doc.write(output_format));
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { nmax, count, seed } => {
            let report = run_sweep(&SweepConfig::new(nmax, count, seed));
            for stage in &report.stages {
                println!(
                    "{}: {} instances, {} violations",
                    stage.label, stage.instances, stage.violations
                );
            }
            println!(
                "total: {} instances, {} checks, {} violations",
                report.instances,
                report.checks,
                report.violations.len()
            );
            if report.passed() {
                Ok(ExitCode::SUCCESS)
            } else {
                for v in report.violations.iter().take(5) {
                    eprintln!("violation [{}] {} on {}", v.check, v.detail, v.relation);
                }
                Ok(ExitCode::from(1))
            }
        }
    }
}

fn run_zorn(procedure: ZornCommand) -> Result<ExitCode> {
    match procedure {
        ZornCommand::CheckHypothesis { input } => {
            let r = read_input(&input)?;
            let check = check_hypothesis(&r)?;
            println!("{}", serde_json::to_string_pretty(&render::hypothesis_json(&r, &check))?);
            Ok(ExitCode::SUCCESS)
        }
        ZornCommand::ExtendChain { input } => {
            let r = read_input(&input)?;
            let run = extend_chain(&r, &relkit::quotient::MinIndexChoice)?;
            println!("{}", serde_json::to_string_pretty(&render::extend_chain_json(&r, &run))?);
            Ok(ExitCode::SUCCESS)
        }
        ZornCommand::FindTopCycle { input } => {
            let r = read_input(&input)?;
            let extraction = find_top_cycle(&r)?;
            println!(
                "{}",
                serde_json::to_string_pretty(&render::extraction_json(&r, &extraction))?
            );
            Ok(ExitCode::SUCCESS)
        }
        ZornCommand::VerifyTheorem { input } => {
            let r = read_input(&input)?;
            let report = verify_theorem(&r)?;
            println!("{}", serde_json::to_string_pretty(&render::theorem_json(&r, &report))?);
            let violated = report.hypothesis && !report.conclusion;
            if violated || !report.extraction_is_top_cycle {
                Ok(ExitCode::from(1))
            } else {
                Ok(ExitCode::SUCCESS)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
