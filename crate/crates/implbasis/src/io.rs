//! Text and JSON formats for implication sets.
//!
//! Text format: one implication per line, `a b -> c d`, whitespace-separated
//! attribute tokens, `#` starts a comment, and an optional first line
//! `ground: a b c d` fixes the attribute order. Without a header the
//! attribute order is first-appearance order.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ground::GroundSet;
use crate::implication::{Implication, ImplicationSet};

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

struct RawLine {
    lineno: usize,
    premise: Vec<String>,
    conclusion: Vec<String>,
}

pub fn parse_implications(text: &str) -> Result<ImplicationSet> {
    let mut header: Option<Vec<String>> = None;
    let mut raws: Vec<RawLine> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("ground:") {
            if header.is_some() || !raws.is_empty() {
                return Err(parse_err(lineno, "ground header must be the first line"));
            }
            header = Some(rest.split_whitespace().map(str::to_string).collect());
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let arrows: Vec<usize> =
            tokens.iter().enumerate().filter(|(_, t)| **t == "->").map(|(i, _)| i).collect();
        if arrows.len() != 1 {
            return Err(parse_err(lineno, "expected exactly one `->`"));
        }
        let at = arrows[0];
        let premise: Vec<String> = tokens[..at].iter().map(|t| t.to_string()).collect();
        let conclusion: Vec<String> = tokens[at + 1..].iter().map(|t| t.to_string()).collect();
        if premise.is_empty() {
            return Err(parse_err(lineno, "empty premise"));
        }
        if conclusion.is_empty() {
            return Err(parse_err(lineno, "empty conclusion"));
        }
        raws.push(RawLine { lineno, premise, conclusion });
    }

    let ground = match header {
        Some(names) => Arc::new(GroundSet::new(names)?),
        None => {
            let mut names: Vec<String> = Vec::new();
            for raw in &raws {
                for name in raw.premise.iter().chain(&raw.conclusion) {
                    if !names.contains(name) {
                        names.push(name.clone());
                    }
                }
            }
            Arc::new(GroundSet::new(names)?)
        }
    };

    let mut out = ImplicationSet::new(Arc::clone(&ground));
    for raw in raws {
        let premise = ground
            .set_of(raw.premise.iter().map(String::as_str))
            .map_err(|e| parse_err(raw.lineno, e.to_string()))?;
        let conclusion = ground
            .set_of(raw.conclusion.iter().map(String::as_str))
            .map_err(|e| parse_err(raw.lineno, e.to_string()))?;
        let imp = Implication::new(premise, conclusion)
            .map_err(|e| parse_err(raw.lineno, e.to_string()))?;
        out.push(imp);
    }
    Ok(out)
}

/// Render in the text format, starting with a `ground:` header so the
/// attribute order survives a round trip.
pub fn render_text(sigma: &ImplicationSet) -> String {
    let g = sigma.ground();
    let mut out = format!("ground: {}\n", g.names().join(" "));
    for imp in sigma.iter() {
        out.push_str(&format!(
            "{} -> {}\n",
            g.render_set(imp.premise()),
            g.render_set(imp.conclusion())
        ));
    }
    out
}

#[derive(Serialize, Deserialize)]
pub struct JsonImplication {
    pub premise: Vec<String>,
    pub conclusion: Vec<String>,
}

#[derive(Serialize, Deserialize)]
pub struct JsonBasis {
    pub ground: Vec<String>,
    pub implications: Vec<JsonImplication>,
}

impl JsonBasis {
    pub fn from_set(sigma: &ImplicationSet) -> Self {
        let g = sigma.ground();
        JsonBasis {
            ground: g.names().to_vec(),
            implications: sigma
                .iter()
                .map(|imp| JsonImplication {
                    premise: imp.premise().iter().map(|i| g.name(i).to_string()).collect(),
                    conclusion: imp.conclusion().iter().map(|i| g.name(i).to_string()).collect(),
                })
                .collect(),
        }
    }

    pub fn into_set(self) -> Result<ImplicationSet> {
        let ground = Arc::new(GroundSet::new(self.ground)?);
        let mut out = ImplicationSet::new(Arc::clone(&ground));
        for ji in self.implications {
            let premise = ground.set_of(ji.premise.iter().map(String::as_str))?;
            let conclusion = ground.set_of(ji.conclusion.iter().map(String::as_str))?;
            out.push(Implication::new(premise, conclusion)?);
        }
        Ok(out)
    }
}

pub fn to_json(sigma: &ImplicationSet) -> String {
    serde_json::to_string_pretty(&JsonBasis::from_set(sigma)).expect("serializable")
}

pub fn from_json(text: &str) -> Result<ImplicationSet> {
    let basis: JsonBasis = serde_json::from_str(text)?;
    basis.into_set()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_basic() {
        let s = parse_implications("a c -> b\nb d -> c\n").unwrap();
        assert_eq!(s.len(), 2);
        // first-appearance order
        assert_eq!(s.ground().names(), ["a", "c", "b", "d"]);
    }

    #[test]
    fn overlap_is_an_error() {
        assert!(matches!(parse_implications("a -> a b\n"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn empty_needs_header() {
        assert!(parse_implications("").is_err());
        let s = parse_implications("ground: a b c d\n# nothing\n").unwrap();
        assert_eq!(s.len(), 0);
        assert_eq!(s.ground().len(), 4);
    }

    #[test]
    fn header_fixes_order_and_rejects_unknowns() {
        let s = parse_implications("ground: d c b a\na -> b\n").unwrap();
        assert_eq!(s.ground().names(), ["d", "c", "b", "a"]);
        assert!(parse_implications("ground: a b\na -> z\n").is_err());
    }

    #[test]
    fn text_round_trip() {
        let s = parse_implications("a c -> b\nb d -> c\n").unwrap();
        let t = parse_implications(&render_text(&s)).unwrap();
        assert_eq!(s, t);
    }

    #[test]
    fn json_round_trip() {
        let s = parse_implications("a c -> b\nb d -> c\n").unwrap();
        let t = from_json(&to_json(&s)).unwrap();
        assert_eq!(s, t);
    }
}
