//! Line-oriented text formats for transition systems, nets and one-in-three
//! instances, plus DOT export.
//!
//! All formats share the same lexical rules: UTF-8, one directive per line,
//! whitespace separated tokens, and `#` starting a comment that runs to the
//! end of the line.

use std::fmt::Write as _;

use boolnet::reductions::{validate_instance, InstanceError, OneInThreeInstance};
use boolnet::{BooleanNet, Interaction, NetError, NetType, TransitionSystem, TsBuilder, TsError, TypeError};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Type { line: usize, source: TypeError },
    #[error("{0}")]
    Ts(#[from] TsError),
    #[error("line {line}: {source}")]
    NetAt { line: usize, source: NetError },
    #[error("{0}")]
    Net(NetError),
    #[error("line {line}: {source}")]
    InstanceAt { line: usize, source: InstanceError },
    #[error("{0}")]
    Instance(InstanceError),
}

fn syntax(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, msg: msg.into() }
}

/// Non-empty lines with comments stripped, as `(line number, tokens)`.
fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let toks: Vec<&str> = body.split_whitespace().collect();
        (!toks.is_empty()).then_some((i + 1, toks))
    })
}

fn arity(line: usize, toks: &[&str], n: usize) -> Result<(), FormatError> {
    if toks.len() != n + 1 {
        return Err(syntax(
            line,
            format!("`{}` takes {n} argument{}, found {}", toks[0], if n == 1 { "" } else { "s" }, toks.len() - 1),
        ));
    }
    Ok(())
}

/// True if `s` survives tokenization unchanged.
pub fn is_token(s: &str) -> bool {
    !s.is_empty() && !s.contains('#') && !s.chars().any(char::is_whitespace)
}

/// Parses the TS format:
///
/// ```text
/// ts a1
/// initial s0
/// arc s0 a s1
/// ```
///
/// `state <s>` and `event <e>` lines are optional. Once one of them is
/// present, every name of that kind must be declared, and the declaration
/// order fixes the numbering.
pub fn parse_ts(text: &str) -> Result<TransitionSystem, FormatError> {
    let mut builder: Option<TsBuilder> = None;
    let mut initial: Option<usize> = None;
    let mut last = 0;
    for (n, toks) in lines(text) {
        last = n;
        if toks[0] == "ts" {
            arity(n, &toks, 1)?;
            if builder.is_some() {
                return Err(syntax(n, "second `ts` header"));
            }
            builder = Some(TsBuilder::new(toks[1]));
            continue;
        }
        let b = builder
            .as_mut()
            .ok_or_else(|| syntax(n, "expected `ts <name>` before any other line"))?;
        match toks[0] {
            "initial" => {
                arity(n, &toks, 1)?;
                if let Some(first) = initial {
                    return Err(syntax(n, format!("second `initial` line (first on line {first})")));
                }
                initial = Some(n);
                b.initial(toks[1]);
            }
            "state" => {
                arity(n, &toks, 1)?;
                b.declare_state(toks[1]);
            }
            "event" => {
                arity(n, &toks, 1)?;
                b.declare_event(toks[1]);
            }
            "arc" => {
                arity(n, &toks, 3)?;
                b.arc(toks[1], toks[2], toks[3]);
            }
            other => return Err(syntax(n, format!("unknown directive `{other}`"))),
        }
    }
    let b = builder.ok_or_else(|| syntax(last.max(1), "missing `ts <name>` header"))?;
    if initial.is_none() {
        return Err(syntax(last.max(1), "missing `initial` line"));
    }
    Ok(b.build()?)
}

/// Writes `ts` with explicit declarations so that [`parse_ts`] restores the
/// same numbering.
pub fn emit_ts(ts: &TransitionSystem) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "ts {}", ts.name());
    let _ = writeln!(out, "initial {}", ts.state_name(ts.initial()));
    for s in ts.states() {
        let _ = writeln!(out, "state {s}");
    }
    for e in ts.events() {
        let _ = writeln!(out, "event {e}");
    }
    for a in ts.arcs() {
        let _ = writeln!(out, "arc {} {} {}", ts.state_name(a.src), ts.event_name(a.event), ts.state_name(a.dst));
    }
    out
}

/// Parses the net format. Flows not listed are `nop`, which must then be a
/// member of the type; `flow` lines may appear before the place or
/// transition they mention.
///
/// ```text
/// net n
/// type nop,inp,set
/// place p 1
/// transition a
/// flow p a inp
/// ```
pub fn parse_net(text: &str) -> Result<BooleanNet, FormatError> {
    let mut name: Option<String> = None;
    let mut ty: Option<NetType> = None;
    let mut places = Vec::new();
    let mut transitions = Vec::new();
    let mut flows: Vec<(usize, String, String, Interaction)> = Vec::new();
    let mut last = 0;
    for (n, toks) in lines(text) {
        last = n;
        if toks[0] != "net" && name.is_none() {
            return Err(syntax(n, "expected `net <name>` before any other line"));
        }
        match toks[0] {
            "net" => {
                arity(n, &toks, 1)?;
                if name.is_some() {
                    return Err(syntax(n, "second `net` header"));
                }
                name = Some(toks[1].to_string());
            }
            "type" => {
                arity(n, &toks, 1)?;
                if ty.is_some() {
                    return Err(syntax(n, "second `type` line"));
                }
                ty = Some(toks[1].parse().map_err(|source| FormatError::Type { line: n, source })?);
            }
            "place" => {
                arity(n, &toks, 2)?;
                let marked = match toks[2] {
                    "0" => false,
                    "1" => true,
                    other => return Err(syntax(n, format!("initial marking must be 0 or 1, found `{other}`"))),
                };
                places.push((toks[1].to_string(), marked));
            }
            "transition" => {
                arity(n, &toks, 1)?;
                transitions.push(toks[1].to_string());
            }
            "flow" => {
                arity(n, &toks, 3)?;
                let i: Interaction = toks[3].parse().map_err(|source| FormatError::Type { line: n, source })?;
                flows.push((n, toks[1].to_string(), toks[2].to_string(), i));
            }
            other => return Err(syntax(n, format!("unknown directive `{other}`"))),
        }
    }
    let name = name.ok_or_else(|| syntax(last.max(1), "missing `net <name>` header"))?;
    let ty = ty.ok_or_else(|| syntax(last.max(1), "missing `type` line"))?;
    let mut flow = vec![vec![Interaction::Nop; transitions.len()]; places.len()];
    for (n, p, t, i) in flows {
        let at = |source| FormatError::NetAt { line: n, source };
        let pi = places.iter().position(|(q, _)| *q == p).ok_or_else(|| at(NetError::UnknownPlace(p.clone())))?;
        let ti = transitions.iter().position(|u| *u == t).ok_or_else(|| at(NetError::UnknownTransition(t.clone())))?;
        if !ty.contains(i) {
            return Err(at(NetError::FlowOutsideType { place: p, transition: t, interaction: i, ty }));
        }
        flow[pi][ti] = i;
    }
    BooleanNet::with_flows(name, ty, places, transitions, flow).map_err(FormatError::Net)
}

/// Writes `net`, listing only the flows other than `nop`.
pub fn emit_net(net: &BooleanNet) -> String {
    let mut out = String::new();
    let names: Vec<&str> = net.net_type().iter().map(Interaction::name).collect();
    let _ = writeln!(out, "net {}", net.name());
    let _ = writeln!(out, "type {}", names.join(","));
    for (p, name) in net.places().iter().enumerate() {
        let _ = writeln!(out, "place {name} {}", u8::from(net.initial_marking()[p]));
    }
    for t in net.transitions() {
        let _ = writeln!(out, "transition {t}");
    }
    for (p, place) in net.places().iter().enumerate() {
        for (t, tr) in net.transitions().iter().enumerate() {
            let i = net.flow(p, t);
            if i != Interaction::Nop {
                let _ = writeln!(out, "flow {place} {tr} {i}");
            }
        }
    }
    out
}

/// Parses one clause per line, three variable indices each.
pub fn parse_instance(text: &str) -> Result<OneInThreeInstance, FormatError> {
    let mut clauses = Vec::new();
    let mut line_of = Vec::new();
    for (n, toks) in lines(text) {
        if toks.len() != 3 {
            return Err(syntax(n, format!("a clause has three variables, found {}", toks.len())));
        }
        let mut c = [0usize; 3];
        for (slot, tok) in c.iter_mut().zip(&toks) {
            *slot = tok
                .parse()
                .map_err(|_| syntax(n, format!("`{tok}` is not a variable index")))?;
        }
        clauses.push(c);
        line_of.push(n);
    }
    validate_instance(&clauses).map_err(|source| {
        let clause = match source {
            InstanceError::Unordered { clause, .. } | InstanceError::OutOfRange { clause, .. } => Some(clause),
            InstanceError::DuplicateClause { second, .. } => Some(second),
            _ => None,
        };
        match clause {
            Some(c) => FormatError::InstanceAt { line: line_of[c], source },
            None => FormatError::Instance(source),
        }
    })
}

pub fn emit_instance(phi: &OneInThreeInstance) -> String {
    phi.to_string()
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// DOT rendering with states in index order and arcs in sorted order. The
/// initial state gets an incoming arrow from an invisible point node.
pub fn ts_to_dot(ts: &TransitionSystem) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph {} {{", quote(ts.name()));
    let _ = writeln!(out, "  rankdir=LR;");
    let _ = writeln!(out, "  node [shape=circle];");
    let _ = writeln!(out, "  \"\" [shape=point];");
    for s in ts.states() {
        let _ = writeln!(out, "  {};", quote(s));
    }
    let _ = writeln!(out, "  \"\" -> {};", quote(ts.state_name(ts.initial())));
    for a in ts.arcs() {
        let _ = writeln!(
            out,
            "  {} -> {} [label={}];",
            quote(ts.state_name(a.src)),
            quote(ts.state_name(a.dst)),
            quote(ts.event_name(a.event))
        );
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use boolnet::reductions::example_instance;

    const A1: &str = "ts a1\ninitial s0\narc s0 a s1\narc s1 a s2\narc s2 a s1\n";

    #[test]
    fn a1() {
        let ts = parse_ts(A1).unwrap();
        assert_eq!(ts.name(), "a1");
        assert_eq!(ts.num_states(), 3);
        assert_eq!(ts.num_events(), 1);
        assert_eq!(ts.arcs().len(), 3);
        assert_eq!(ts.state_name(ts.initial()), "s0");
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "# header\n\nts x # name\n  initial q\narc q e q   # loop\n";
        let ts = parse_ts(text).unwrap();
        assert_eq!(ts.arcs().len(), 1);
    }

    #[test]
    fn missing_initial() {
        let err = parse_ts("ts x\narc a e b\n").unwrap_err();
        assert!(matches!(err, FormatError::Syntax { line: 2, .. }), "{err}");
        assert!(err.to_string().contains("initial"));
    }

    #[test]
    fn nondeterminism_surfaces() {
        let err = parse_ts("ts x\ninitial s0\narc s0 a s1\narc s0 a s2\n").unwrap_err();
        assert!(matches!(err, FormatError::Ts(_)), "{err}");
    }

    #[test]
    fn syntax_errors_carry_lines() {
        let e = parse_ts("ts x\ninitial s0\narc s0 a\n").unwrap_err();
        assert!(matches!(e, FormatError::Syntax { line: 3, .. }));
        let e = parse_ts("initial s0\n").unwrap_err();
        assert!(matches!(e, FormatError::Syntax { line: 1, .. }));
        let e = parse_ts("ts x\ninitial s0\nfoo\n").unwrap_err();
        assert!(matches!(e, FormatError::Syntax { line: 3, .. }));
    }

    #[test]
    fn declarations_fix_order() {
        let text = "ts x\ninitial b\nstate a\nstate b\nevent f\nevent e\narc b e a\narc b f b\n";
        let ts = parse_ts(text).unwrap();
        assert_eq!(ts.states(), ["a", "b"]);
        assert_eq!(ts.events(), ["f", "e"]);
        assert_eq!(parse_ts(&emit_ts(&ts)).unwrap(), ts);
    }

    #[test]
    fn ts_round_trip() {
        let ts = parse_ts(A1).unwrap();
        assert_eq!(parse_ts(&emit_ts(&ts)).unwrap(), ts);
    }

    #[test]
    fn net_defaults_to_nop() {
        let text = "net n\ntype nop,inp\nplace p 1\ntransition a\ntransition b\nflow p a inp\n";
        let net = parse_net(text).unwrap();
        assert_eq!(net.flow(0, 0), Interaction::Inp);
        assert_eq!(net.flow(0, 1), Interaction::Nop);
        assert_eq!(parse_net(&emit_net(&net)).unwrap(), net);
    }

    #[test]
    fn net_errors() {
        let e = parse_net("net n\ntype nop\nplace p 1\ntransition a\nflow p a inp\n").unwrap_err();
        assert!(matches!(e, FormatError::NetAt { line: 5, .. }), "{e}");
        let e = parse_net("net n\ntype nop,bogus\n").unwrap_err();
        assert!(matches!(e, FormatError::Type { line: 2, .. }));
        let e = parse_net("net n\ntype nop\nplace p 2\n").unwrap_err();
        assert!(matches!(e, FormatError::Syntax { line: 3, .. }));
        let e = parse_net("net n\ntype inp\nplace p 1\ntransition a\ntransition b\nflow p a inp\n").unwrap_err();
        assert!(matches!(e, FormatError::Net(NetError::FlowOutsideType { .. })), "{e}");
        assert!(parse_net("net n\ntype inp\nplace p 1\ntransition a\nflow p a inp\n").is_ok());
        let e = parse_net("net n\nplace p 1\n").unwrap_err();
        assert!(e.to_string().contains("type"));
    }

    #[test]
    fn example_instance_parses() {
        let phi = parse_instance("0 1 2\n0 2 3\n0 1 3\n2 4 5\n1 4 5\n3 4 5\n").unwrap();
        assert_eq!(phi, example_instance());
        assert_eq!(parse_instance(&emit_instance(&phi)).unwrap(), phi);
    }

    #[test]
    fn instance_errors() {
        let e = parse_instance("2 1 0\n").unwrap_err();
        assert!(matches!(
            e,
            FormatError::InstanceAt {
                line: 1,
                source: InstanceError::Unordered { .. }
            }
        ));
        let e = parse_instance("0 1\n").unwrap_err();
        assert!(matches!(e, FormatError::Syntax { line: 1, .. }));
        let e = parse_instance("# c\n0 1 x\n").unwrap_err();
        assert!(matches!(e, FormatError::Syntax { line: 2, .. }));
        assert!(parse_instance("").unwrap().is_empty());
    }

    #[test]
    fn dot_is_stable() {
        let ts = parse_ts(A1).unwrap();
        let dot = ts_to_dot(&ts);
        assert_eq!(dot, ts_to_dot(&parse_ts(&emit_ts(&ts)).unwrap()));
        assert!(dot.contains("\"s2\" -> \"s1\" [label=\"a\"];"));
        assert!(dot.starts_with("digraph \"a1\" {"));
    }

    #[test]
    fn tokens() {
        assert!(is_token("bot_0"));
        assert!(!is_token("a b"));
        assert!(!is_token("a#b"));
        assert!(!is_token(""));
    }
}
