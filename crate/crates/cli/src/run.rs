use std::fmt;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use boolnet::polytime::{condition_for, decide_one_bounded, decide_small_g, PolyVerdict};
use boolnet::reductions::{build_gadget, verify_gadget, Family, GadgetError, Verification, VerifyError};
use boolnet::{
    classify_complexity, decide_solvable, reachability_graph, synthesize, ts_isomorphic, Bound, Decision, NetError,
    NetType, SynthesisError, TransitionSystem, TypeError, DEFAULT_BUDGET, DEFAULT_CAP,
};
use thiserror::Error;

use crate::format::{emit_net, emit_ts, parse_instance, parse_net, parse_ts, ts_to_dot, FormatError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Check,
    Synth,
    Classify,
    Gadget,
    VerifyGadget,
    Bounds,
    Reach,
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Command::Check => "check",
            Command::Synth => "synth",
            Command::Classify => "classify",
            Command::Gadget => "gadget",
            Command::VerifyGadget => "verify-gadget",
            Command::Bounds => "bounds",
            Command::Reach => "reach",
        })
    }
}

/// Everything one invocation needs. Paths equal to `-` mean standard
/// input or output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub type_spec: Option<NetType>,
    pub input: Option<PathBuf>,
    pub output: Option<PathBuf>,
    pub dot: Option<PathBuf>,
    pub budget: u64,
    pub g: Option<usize>,
    pub family: Option<Family>,
    pub omega: Option<NetType>,
    pub cap: usize,
}

impl RunConfig {
    pub fn new(command: Command) -> RunConfig {
        RunConfig {
            command,
            type_spec: None,
            input: None,
            output: None,
            dot: None,
            budget: DEFAULT_BUDGET,
            g: None,
            family: None,
            omega: None,
            cap: DEFAULT_CAP,
        }
    }
}

/// The outcome of a successful run; decides the exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// Solvable, confirmed, or a purely informational command.
    Positive,
    /// Unsolvable or refuted.
    Negative,
    /// A budget or cap ran out.
    Inconclusive,
}

impl Verdict {
    pub fn exit_code(self) -> u8 {
        match self {
            Verdict::Positive => 0,
            Verdict::Negative => 1,
            Verdict::Inconclusive => 3,
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("{}: {source}", path.display())]
    Format { path: PathBuf, source: FormatError },
    #[error(transparent)]
    Type(#[from] TypeError),
    #[error(transparent)]
    Gadget(#[from] GadgetError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error(transparent)]
    Net(#[from] NetError),
    #[error(transparent)]
    Synthesis(#[from] SynthesisError),
    #[error("internal check failed: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        2
    }
}

/// Parses an extension list; `none` or an empty string is the empty set.
pub fn parse_omega(s: &str) -> Result<NetType, TypeError> {
    match s.trim() {
        "" | "none" | "{}" => Ok(NetType::EMPTY),
        list => list.parse(),
    }
}

fn need<T: Copy>(v: Option<T>, flag: &str, cmd: Command) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("`{cmd}` needs {flag}")))
}

fn read_input(cfg: &RunConfig) -> Result<(PathBuf, String), CliError> {
    let path = cfg
        .input
        .clone()
        .ok_or_else(|| CliError::Usage(format!("`{}` needs --input", cfg.command)))?;
    let mut text = String::new();
    let res = if path == Path::new("-") {
        io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        fs::read_to_string(&path).map(|t| text = t)
    };
    res.map_err(|source| CliError::Io { path: path.clone(), source })?;
    Ok((path, text))
}

fn parsed<T>(path: &Path, r: Result<T, FormatError>) -> Result<T, CliError> {
    r.map_err(|source| CliError::Format { path: path.to_path_buf(), source })
}

fn write_file(path: &Path, text: &str, out: &mut dyn Write) -> Result<(), CliError> {
    let res = if path == Path::new("-") {
        out.write_all(text.as_bytes())
    } else {
        fs::write(path, text)
    };
    res.map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn say(out: &mut dyn Write, line: impl fmt::Display) -> Result<(), CliError> {
    writeln!(out, "{line}").map_err(|source| CliError::Io { path: PathBuf::from("-"), source })
}

fn write_dot(cfg: &RunConfig, ts: &TransitionSystem, out: &mut dyn Write) -> Result<(), CliError> {
    match &cfg.dot {
        Some(p) => write_file(p, &ts_to_dot(ts), out),
        None => Ok(()),
    }
}

/// Executes `cfg`, writing reports to `out`.
pub fn run(cfg: &RunConfig, out: &mut dyn Write) -> Result<Verdict, CliError> {
    if cfg.budget == 0 {
        return Err(CliError::Usage("--budget must be at least 1".into()));
    }
    match cfg.command {
        Command::Check | Command::Synth => check(cfg, out),
        Command::Classify => classify(cfg, out),
        Command::Gadget => gadget(cfg, out),
        Command::VerifyGadget => verify(cfg, out),
        Command::Bounds => bounds(cfg, out),
        Command::Reach => reach(cfg, out),
    }
}

fn check(cfg: &RunConfig, out: &mut dyn Write) -> Result<Verdict, CliError> {
    let ty = need(cfg.type_spec, "--type", cfg.command)?;
    let (path, text) = read_input(cfg)?;
    let ts = parsed(&path, parse_ts(&text))?;
    write_dot(cfg, &ts, out)?;
    match decide_solvable(&ts, ty, cfg.budget) {
        Decision::Solvable(set) => {
            say(out, format_args!("solvable: {} regions", set.regions.len()))?;
            let net = synthesize(&ts, ty, &set.regions)?;
            if cfg.command == Command::Synth {
                let rg = reachability_graph(&net, cfg.cap)?;
                if ts_isomorphic(&rg, &ts).is_none() {
                    return Err(CliError::Internal("reachability graph differs from the input".into()));
                }
            }
            match (&cfg.output, cfg.command) {
                (Some(p), _) => write_file(p, &emit_net(&net), out)?,
                (None, Command::Synth) => write_file(Path::new("-"), &emit_net(&net), out)?,
                (None, _) => {}
            }
            Ok(Verdict::Positive)
        }
        Decision::Unsolvable(atom) => {
            say(out, format_args!("unsolvable: no region solves {}", atom.display(&ts)))?;
            Ok(Verdict::Negative)
        }
        Decision::Inconclusive(atom) => {
            say(out, format_args!("inconclusive: budget exhausted on {}", atom.display(&ts)))?;
            Ok(Verdict::Inconclusive)
        }
    }
}

fn classify(cfg: &RunConfig, out: &mut dyn Write) -> Result<Verdict, CliError> {
    let ty = need(cfg.type_spec, "--type", cfg.command)?;
    let g = cfg.g.map_or(Bound::Unbounded, Bound::Fixed);
    say(out, classify_complexity(ty, g))?;
    Ok(Verdict::Positive)
}

fn gadget(cfg: &RunConfig, out: &mut dyn Write) -> Result<Verdict, CliError> {
    let family = need(cfg.family, "--family", cfg.command)?;
    let (path, text) = read_input(cfg)?;
    let phi = parsed(&path, parse_instance(&text))?;
    let g = build_gadget(family, &phi, cfg.omega)?;
    let summary = format!(
        "{} over {}: {} states, {} events, bound {}, atom {}",
        g.family,
        g.ty,
        g.ts.num_states(),
        g.ts.num_events(),
        g.declared_bound,
        g.atom.display(&g.ts)
    );
    let body = format!("# {summary}\n{}", emit_ts(&g.ts));
    match &cfg.output {
        Some(p) => {
            write_file(p, &body, out)?;
            say(out, summary)?;
        }
        None => write_file(Path::new("-"), &body, out)?,
    }
    write_dot(cfg, &g.ts, out)?;
    Ok(Verdict::Positive)
}

fn verify(cfg: &RunConfig, out: &mut dyn Write) -> Result<Verdict, CliError> {
    let family = need(cfg.family, "--family", cfg.command)?;
    let (path, text) = read_input(cfg)?;
    let phi = parsed(&path, parse_instance(&text))?;
    let v = verify_gadget(family, &phi, cfg.omega, cfg.budget)?;
    match v {
        Verification::Confirmed { positive } => {
            let side = if positive { "satisfiable and solvable" } else { "unsatisfiable and unsolvable" };
            say(out, format_args!("confirmed: {side}"))?;
            Ok(Verdict::Positive)
        }
        Verification::Refuted { oracle, detail } => {
            say(out, format_args!("refuted: oracle model {oracle:?}; {detail}"))?;
            Ok(Verdict::Negative)
        }
        Verification::Inconclusive(atom) => {
            let g = build_gadget(family, &phi, cfg.omega)?;
            say(out, format_args!("inconclusive: budget exhausted on {}", atom.display(&g.ts)))?;
            Ok(Verdict::Inconclusive)
        }
    }
}

fn bounds(cfg: &RunConfig, out: &mut dyn Write) -> Result<Verdict, CliError> {
    let (path, text) = read_input(cfg)?;
    let ts = parsed(&path, parse_ts(&text))?;
    write_dot(cfg, &ts, out)?;
    let bound = ts.bound();
    say(out, format_args!("bound {bound}"))?;
    let Some(ty) = cfg.type_spec else {
        return Ok(Verdict::Positive);
    };
    let g = cfg.g.unwrap_or(bound);
    if g < bound {
        return Err(CliError::Usage(format!("--g {g} is below the input's bound {bound}")));
    }
    say(out, format_args!("{ty} at g = {g}: {}", classify_complexity(ty, g)))?;
    let verdict = if bound <= 1 {
        decide_one_bounded(&ts, ty).ok()
    } else {
        None
    };
    let verdict = match verdict {
        Some(v) => Some(v),
        None if condition_for(ty, g).is_some() => decide_small_g(&ts, ty, g).ok(),
        None => None,
    };
    match verdict {
        Some(PolyVerdict::Solvable(_)) => {
            say(out, "polynomial decider: solvable")?;
            Ok(Verdict::Positive)
        }
        Some(PolyVerdict::Unsolvable(atom)) => {
            say(out, format_args!("polynomial decider: unsolvable at {}", atom.display(&ts)))?;
            Ok(Verdict::Negative)
        }
        None => {
            say(out, "no polynomial decider applies")?;
            Ok(Verdict::Positive)
        }
    }
}

fn reach(cfg: &RunConfig, out: &mut dyn Write) -> Result<Verdict, CliError> {
    let (path, text) = read_input(cfg)?;
    let net = parsed(&path, parse_net(&text))?;
    let rg = match reachability_graph(&net, cfg.cap) {
        Ok(rg) => rg,
        Err(NetError::CapExceeded(cap)) => {
            say(out, format_args!("inconclusive: more than {cap} reachable markings"))?;
            return Ok(Verdict::Inconclusive);
        }
        Err(e) => return Err(e.into()),
    };
    let text = emit_ts(&rg);
    match &cfg.output {
        Some(p) => {
            write_file(p, &text, out)?;
            say(out, format_args!("{} reachable markings, {} arcs", rg.num_states(), rg.arcs().len()))?;
        }
        None => write_file(Path::new("-"), &text, out)?,
    }
    write_dot(cfg, &rg, out)?;
    Ok(Verdict::Positive)
}
