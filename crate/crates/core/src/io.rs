//! Line-oriented text formats and DOT output.
//!
//! ```text
//! # the diamond
//! elements: bot l r top
//! le: bot l
//! le: bot r
//! le: l top
//! le: r top
//! ```
//!
//! Lattice files may add `top:` and `bot:` lines, which must name the derived
//! top and bottom. Domain files must add `bot:`.

use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

use crate::cap::DEFAULT_CAP;
use crate::lattice::{build_lattice, Lattice, LatticeError};
use crate::order::{hasse_cover, OrderError, Poset};
use crate::scott::{validate_scott_domain, ScottDomain, ScottError};

#[derive(Debug, Error)]
pub enum InputError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Scott(#[from] ScottError),
}

fn parse_error(line: usize, message: impl Into<String>) -> InputError {
    InputError::Parse {
        line,
        message: message.into(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputKind {
    Poset,
    Lattice,
    Domain,
}

#[derive(Debug, Clone)]
pub enum Input {
    Poset(Poset),
    Lattice(Lattice),
    Domain(ScottDomain),
}

/// The raw content of a file: a poset plus optional `top:`/`bot:` lines.
#[derive(Debug, Clone)]
pub struct Parsed {
    pub poset: Poset,
    pub top: Option<(usize, usize)>,
    pub bot: Option<(usize, usize)>,
}

pub fn parse_text(text: &str) -> Result<Parsed, InputError> {
    let mut labels: Option<Vec<String>> = None;
    let mut pairs = Vec::new();
    let mut top = None;
    let mut bot = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, rest) = content
            .split_once(':')
            .ok_or_else(|| parse_error(line, format!("expected `key: ...`, got `{content}`")))?;
        let words: Vec<&str> = rest.split_whitespace().collect();
        let lookup = |labels: &Option<Vec<String>>, w: &str| {
            let labels = labels
                .as_ref()
                .ok_or_else(|| parse_error(line, "`elements:` must come first"))?;
            labels
                .iter()
                .position(|l| l == w)
                .ok_or_else(|| parse_error(line, format!("unknown element `{w}`")))
        };
        match key.trim() {
            "elements" => {
                if labels.is_some() {
                    return Err(parse_error(line, "duplicate `elements:` line"));
                }
                if words.is_empty() {
                    return Err(parse_error(line, "no elements"));
                }
                for (k, w) in words.iter().enumerate() {
                    if words[..k].contains(w) {
                        return Err(parse_error(line, format!("duplicate element `{w}`")));
                    }
                }
                labels = Some(words.iter().map(|w| w.to_string()).collect());
            }
            "le" => match words.as_slice() {
                [a, b] => pairs.push((lookup(&labels, a)?, lookup(&labels, b)?)),
                _ => return Err(parse_error(line, "`le:` takes two elements")),
            },
            k @ ("top" | "bot") => {
                let slot = if k == "top" { &mut top } else { &mut bot };
                if slot.is_some() {
                    return Err(parse_error(line, format!("duplicate `{k}:` line")));
                }
                match words.as_slice() {
                    [a] => *slot = Some((line, lookup(&labels, a)?)),
                    _ => return Err(parse_error(line, format!("`{k}:` takes one element"))),
                }
            }
            other => return Err(parse_error(line, format!("unknown key `{other}`"))),
        }
    }
    let labels = labels.ok_or_else(|| parse_error(text.lines().count().max(1), "missing `elements:` line"))?;
    let poset = Poset::from_generators(labels, &pairs)?;
    Ok(Parsed { poset, top, bot })
}

pub fn parse_poset(text: &str) -> Result<Poset, InputError> {
    let p = parse_text(text)?;
    if let Some((line, _)) = p.top.or(p.bot) {
        return Err(parse_error(line, "`top:`/`bot:` not allowed in a poset file"));
    }
    Ok(p.poset)
}

pub fn parse_lattice(text: &str) -> Result<Lattice, InputError> {
    let p = parse_text(text)?;
    let l = build_lattice(p.poset)?;
    for (given, derived, key) in [(p.top, l.top(), "top"), (p.bot, l.bot(), "bot")] {
        if let Some((line, x)) = given {
            if x != derived {
                return Err(parse_error(
                    line,
                    format!("`{key}: {}` but the {key} is `{}`", l.label(x), l.label(derived)),
                ));
            }
        }
    }
    Ok(l)
}

pub fn parse_domain(text: &str) -> Result<ScottDomain, InputError> {
    let p = parse_text(text)?;
    if let Some((line, _)) = p.top {
        return Err(parse_error(line, "`top:` not allowed in a domain file"));
    }
    let (_, bot) = p
        .bot
        .ok_or_else(|| parse_error(text.lines().count().max(1), "domain file needs a `bot:` line"))?;
    Ok(validate_scott_domain(p.poset, bot, DEFAULT_CAP)?)
}

pub fn parse_input(path: &Path, kind: InputKind) -> Result<Input, InputError> {
    let text = std::fs::read_to_string(path)?;
    parse_str(&text, kind)
}

pub fn parse_str(text: &str, kind: InputKind) -> Result<Input, InputError> {
    Ok(match kind {
        InputKind::Poset => Input::Poset(parse_poset(text)?),
        InputKind::Lattice => Input::Lattice(parse_lattice(text)?),
        InputKind::Domain => Input::Domain(parse_domain(text)?),
    })
}

/// Labels are single words in the text format.
pub fn file_label(s: &str) -> String {
    let s: String = s
        .chars()
        .map(|c| if c.is_whitespace() || c == '#' || c == ':' { '_' } else { c })
        .collect();
    if s.is_empty() {
        "_".into()
    } else {
        s
    }
}

/// Writes `p` as generating pairs from its Hasse cover.
pub fn format_poset(p: &Poset) -> String {
    let labels: Vec<String> = p.labels().iter().map(|l| file_label(l)).collect();
    let mut out = format!("elements: {}\n", labels.join(" "));
    for (a, b) in hasse_cover(p).pairs() {
        let _ = writeln!(out, "le: {} {}", labels[a], labels[b]);
    }
    out
}

pub fn format_lattice(l: &Lattice) -> String {
    let mut out = format_poset(l.poset());
    let _ = writeln!(out, "top: {}", file_label(l.label(l.top())));
    let _ = writeln!(out, "bot: {}", file_label(l.label(l.bot())));
    out
}

pub fn format_domain(d: &ScottDomain) -> String {
    let mut out = format_poset(d.poset());
    let _ = writeln!(out, "bot: {}", file_label(d.poset().label(d.bot())));
    out
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Hasse diagram, bottom to top.
pub fn emit_dot(p: &Poset) -> String {
    let mut out = String::from("digraph hasse {\n  rankdir=BT;\n");
    for i in 0..p.len() {
        let _ = writeln!(out, "  n{i} [label=\"{}\"];", dot_escape(p.label(i)));
    }
    for (a, b) in hasse_cover(p).pairs() {
        let _ = writeln!(out, "  n{a} -> n{b};");
    }
    out.push_str("}\n");
    out
}

/// Node labels and `(from, to)` edges of a diagram.
pub type DotGraph = (Vec<String>, Vec<(usize, usize)>);

/// Reads back the node labels and edges written by [`emit_dot`].
pub fn parse_dot(text: &str) -> Result<DotGraph, String> {
    let mut labels = Vec::new();
    let mut edges = Vec::new();
    let node = |s: &str| {
        s.trim()
            .strip_prefix('n')
            .and_then(|k| k.parse::<usize>().ok())
            .ok_or_else(|| format!("bad node `{s}`"))
    };
    for line in text.lines().map(str::trim) {
        if let Some((lhs, rhs)) = line.strip_suffix(';').and_then(|l| l.split_once("->")) {
            edges.push((node(lhs)?, node(rhs)?));
        } else if let Some((id, rest)) = line.split_once(" [label=\"") {
            let k = node(id)?;
            if k != labels.len() {
                return Err(format!("node n{k} out of order"));
            }
            let body = rest.strip_suffix("\"];").ok_or_else(|| format!("bad node line `{line}`"))?;
            let mut label = String::new();
            let mut chars = body.chars();
            while let Some(c) = chars.next() {
                label.push(if c == '\\' { chars.next().unwrap_or('\\') } else { c });
            }
            labels.push(label);
        }
    }
    Ok((labels, edges))
}
