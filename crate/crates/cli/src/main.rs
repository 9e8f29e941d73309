use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use boolnet::reductions::Family;
use boolnet::NetType;
use boolnet_cli::{parse_omega, run, Command, RunConfig};
use clap::{Args, Parser, Subcommand};

/// Boolean Petri net synthesis from transition systems.
#[derive(Parser)]
#[command(name = "boolnet", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide whether a transition system is solvable by a net of the given type.
    Check(Solve),
    /// Like check, but always emit the synthesized net and verify it.
    Synth(Solve),
    /// Report the complexity of synthesis for a type at a bound.
    Classify {
        #[arg(long = "type")]
        ty: NetType,
        /// Bound on in- and out-degree; unbounded if omitted.
        #[arg(long)]
        g: Option<usize>,
    },
    /// Build the hardness gadget for a one-in-three instance.
    Gadget {
        #[command(flatten)]
        fam: FamilyArgs,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Build a gadget and compare its solvability with a brute-force oracle.
    VerifyGadget {
        #[command(flatten)]
        fam: FamilyArgs,
        #[arg(long, default_value_t = boolnet::DEFAULT_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
        budget: u64,
    },
    /// Report the bound of a transition system and run a polynomial decider if one applies.
    Bounds {
        #[arg(long)]
        input: PathBuf,
        #[arg(long = "type")]
        ty: Option<NetType>,
        #[arg(long)]
        g: Option<usize>,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Compute the reachability graph of a net.
    Reach {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Maximum number of markings to explore.
        #[arg(long, default_value_t = boolnet::DEFAULT_CAP)]
        cap: usize,
    },
}

#[derive(Args)]
struct Solve {
    /// Comma separated interactions, e.g. nop,inp,set.
    #[arg(long = "type")]
    ty: NetType,
    #[arg(long)]
    input: PathBuf,
    /// Where to write the synthesized net.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long)]
    dot: Option<PathBuf>,
    /// Search node limit per separation atom.
    #[arg(long, default_value_t = boolnet::DEFAULT_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    budget: u64,
    #[arg(long, default_value_t = boolnet::DEFAULT_CAP)]
    cap: usize,
}

#[derive(Args)]
struct FamilyArgs {
    /// One of T1..T7.
    #[arg(long)]
    family: Family,
    /// Instance file, one clause per line.
    #[arg(long)]
    input: PathBuf,
    /// Extension of the family's base type; `none` for the empty set.
    #[arg(long, value_parser = parse_omega)]
    omega: Option<NetType>,
}

fn config(cmd: Cmd) -> RunConfig {
    match cmd {
        Cmd::Check(s) => solve(Command::Check, s),
        Cmd::Synth(s) => solve(Command::Synth, s),
        Cmd::Classify { ty, g } => RunConfig {
            type_spec: Some(ty),
            g,
            ..RunConfig::new(Command::Classify)
        },
        Cmd::Gadget { fam, output, dot } => RunConfig {
            output,
            dot,
            ..family(Command::Gadget, fam)
        },
        Cmd::VerifyGadget { fam, budget } => RunConfig {
            budget,
            ..family(Command::VerifyGadget, fam)
        },
        Cmd::Bounds { input, ty, g, dot } => RunConfig {
            input: Some(input),
            type_spec: ty,
            g,
            dot,
            ..RunConfig::new(Command::Bounds)
        },
        Cmd::Reach { input, output, dot, cap } => RunConfig {
            input: Some(input),
            output,
            dot,
            cap,
            ..RunConfig::new(Command::Reach)
        },
    }
}

fn solve(command: Command, s: Solve) -> RunConfig {
    RunConfig {
        type_spec: Some(s.ty),
        input: Some(s.input),
        output: s.output,
        dot: s.dot,
        budget: s.budget,
        cap: s.cap,
        ..RunConfig::new(command)
    }
}

fn family(command: Command, f: FamilyArgs) -> RunConfig {
    RunConfig {
        family: Some(f.family),
        input: Some(f.input),
        omega: f.omega,
        ..RunConfig::new(command)
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let cfg = config(cli.cmd);
    let stdout = io::stdout();
    match run(&cfg, &mut stdout.lock()) {
        Ok(v) => ExitCode::from(v.exit_code()),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
