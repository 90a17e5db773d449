//! Constellation text and JSON formats.
//!
//! Text records are `key: value` lines:
//!
//! ```text
//! # the torus map
//! n: 6
//! sigma: (1,2,3)(4,5,6)
//! alpha: (1,4)(2,5)(3,6)
//! ```
//!
//! `n` defaults to the largest dart mentioned, `phi` is completed when
//! absent, and `mode` (`map` or `hypermap`) defaults to `map`. Fixed points
//! may be omitted from cycle lists. Blank lines and `#` comments are ignored.
//!
//! The JSON mirror carries `n`, `sigma`, `alpha`, optional `phi` and `mode`,
//! with permutations as 1-based image arrays.

use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::constellation::{complete_phi, validate, Constellation, Mode, ValidationReport};
use crate::error::Result;
use crate::permutation::Permutation;

#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize)]
#[error("{line}:{column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "kind", content = "detail")]
pub enum ParseErrorKind {
    #[error("{0}")]
    Syntax(String),
    #[error("duplicate key `{0}`")]
    DuplicateKey(String),
    #[error("unknown key `{0}`")]
    UnknownKey(String),
    #[error("missing key `{0}`")]
    MissingKey(String),
    #[error("invalid JSON: {0}")]
    Json(String),
}

impl ParseError {
    fn at(line: usize, column: usize, kind: ParseErrorKind) -> Self {
        ParseError { line, column, kind }
    }

    fn syntax(line: usize, column: usize, msg: impl Into<String>) -> Self {
        ParseError::at(line, column, ParseErrorKind::Syntax(msg.into()))
    }
}

/// A parsed but not yet validated triple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawConstellation {
    pub n: usize,
    pub sigma: Permutation,
    pub alpha: Permutation,
    pub phi: Option<Permutation>,
    pub mode: Mode,
}

impl RawConstellation {
    /// `phi` as given, or completed from `sigma` and `alpha`.
    pub fn phi_or_completed(&self) -> Permutation {
        match &self.phi {
            Some(phi) => phi.clone(),
            None => complete_phi(&self.sigma, &self.alpha).unwrap_or_else(|_| Permutation::identity(self.n)),
        }
    }

    pub fn validate(&self) -> ValidationReport {
        validate(self.n, &self.sigma, &self.alpha, &self.phi_or_completed(), self.mode)
    }

    pub fn into_constellation(self) -> Result<Constellation> {
        let phi = self.phi_or_completed();
        Constellation::new(self.sigma, self.alpha, phi, self.mode)
    }
}

#[derive(Serialize, Deserialize)]
struct JsonConstellation {
    n: usize,
    sigma: Permutation,
    alpha: Permutation,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    phi: Option<Permutation>,
    #[serde(default = "default_mode")]
    mode: Mode,
}

fn default_mode() -> Mode {
    Mode::Map
}

/// Parses either format; input whose first non-blank character is `{` is
/// read as JSON.
pub fn parse_constellation(text: &str) -> Result<RawConstellation, ParseError> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_text(text)
    }
}

/// Parses and validates.
pub fn parse_constellation_file(text: &str) -> Result<Constellation> {
    parse_constellation(text)?.into_constellation()
}

fn parse_json(text: &str) -> Result<RawConstellation, ParseError> {
    let j: JsonConstellation = serde_json::from_str(text)
        .map_err(|e| ParseError::at(e.line(), e.column(), ParseErrorKind::Json(e.to_string())))?;
    Ok(RawConstellation {
        n: j.n,
        sigma: j.sigma,
        alpha: j.alpha,
        phi: j.phi,
        mode: j.mode,
    })
}

struct Field {
    line: usize,
    column: usize,
    cycles: Vec<Vec<usize>>,
}

fn parse_text(text: &str) -> Result<RawConstellation, ParseError> {
    let mut n: Option<(usize, usize, usize)> = None;
    let mut mode: Option<Mode> = None;
    let mut fields: [Option<Field>; 3] = [None, None, None];
    let mut seen_keys: Vec<String> = Vec::new();

    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let content = raw_line.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let Some(colon) = content.find(':') else {
            let col = content.len() - content.trim_start().len() + 1;
            return Err(ParseError::syntax(line_no, col, "expected `key: value`"));
        };
        let key = content[..colon].trim();
        let key_col = content.len() - content.trim_start().len() + 1;
        let value = &content[colon + 1..];
        let value_col = colon + 2;

        if seen_keys.iter().any(|k| k == key) {
            return Err(ParseError::at(
                line_no,
                key_col,
                ParseErrorKind::DuplicateKey(key.to_string()),
            ));
        }
        seen_keys.push(key.to_string());

        match key {
            "n" => {
                let v = value.trim();
                let parsed = v.parse::<usize>().ok().filter(|&v| v > 0).ok_or_else(|| {
                    ParseError::syntax(line_no, value_col, format!("`{v}` is not a positive integer"))
                })?;
                n = Some((parsed, line_no, value_col));
            }
            "mode" => {
                mode = Some(match value.trim() {
                    "map" => Mode::Map,
                    "hypermap" => Mode::Hypermap,
                    other => {
                        return Err(ParseError::syntax(
                            line_no,
                            value_col,
                            format!("mode must be `map` or `hypermap`, got `{other}`"),
                        ))
                    }
                });
            }
            "sigma" | "alpha" | "phi" => {
                let slot = ["sigma", "alpha", "phi"].iter().position(|k| *k == key).unwrap();
                fields[slot] = Some(Field {
                    line: line_no,
                    column: value_col,
                    cycles: parse_cycles(value, line_no, value_col)?,
                });
            }
            other => {
                return Err(ParseError::at(
                    line_no,
                    key_col,
                    ParseErrorKind::UnknownKey(other.to_string()),
                ));
            }
        }
    }

    let [sigma, alpha, phi] = fields;
    let last_line = text.lines().count().max(1);
    let sigma = sigma.ok_or_else(|| ParseError::at(last_line, 1, ParseErrorKind::MissingKey("sigma".into())))?;
    let alpha = alpha.ok_or_else(|| ParseError::at(last_line, 1, ParseErrorKind::MissingKey("alpha".into())))?;

    let max_dart = [Some(&sigma), Some(&alpha), phi.as_ref()]
        .into_iter()
        .flatten()
        .flat_map(|f| f.cycles.iter().flatten().copied())
        .max()
        .unwrap_or(1);
    let n = match n {
        Some((n, line, col)) if n < max_dart => {
            return Err(ParseError::syntax(
                line,
                col,
                format!("n = {n} but dart {max_dart} is used"),
            ));
        }
        Some((n, _, _)) => n,
        None => max_dart,
    };

    let build = |f: &Field| {
        Permutation::from_cycles(n, &f.cycles).map_err(|e| ParseError::syntax(f.line, f.column, e.to_string()))
    };
    Ok(RawConstellation {
        n,
        sigma: build(&sigma)?,
        alpha: build(&alpha)?,
        phi: phi.as_ref().map(build).transpose()?,
        mode: mode.unwrap_or(Mode::Map),
    })
}

/// Parses `(1,2,3)(4,5)`; separators inside a cycle are commas or blanks.
/// `()` and the empty string denote the identity.
fn parse_cycles(value: &str, line: usize, offset: usize) -> Result<Vec<Vec<usize>>, ParseError> {
    let chars: Vec<char> = value.chars().collect();
    let col = |i: usize| offset + i;
    let mut cycles = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c != '(' {
            return Err(ParseError::syntax(line, col(i), format!("expected `(`, found `{c}`")));
        }
        let open = i;
        i += 1;
        let mut cycle = Vec::new();
        let mut number = String::new();
        let mut closed = false;
        while i < chars.len() {
            let c = chars[i];
            if c.is_ascii_digit() {
                number.push(c);
            } else if c == ',' || c.is_whitespace() || c == ')' {
                if !number.is_empty() {
                    let d: usize = number
                        .parse()
                        .map_err(|_| ParseError::syntax(line, col(i), "dart label too large"))?;
                    if d == 0 {
                        return Err(ParseError::syntax(
                            line,
                            col(i - number.len()),
                            "darts are numbered from 1",
                        ));
                    }
                    cycle.push(d);
                    number.clear();
                } else if c == ',' {
                    return Err(ParseError::syntax(line, col(i), "empty entry in cycle"));
                }
                if c == ')' {
                    closed = true;
                    i += 1;
                    break;
                }
            } else {
                return Err(ParseError::syntax(line, col(i), format!("unexpected `{c}` in cycle")));
            }
            i += 1;
        }
        if !closed {
            return Err(ParseError::syntax(line, col(open), "unclosed cycle"));
        }
        if !cycle.is_empty() {
            cycles.push(cycle);
        }
    }
    Ok(cycles)
}

/// Canonical text record; reparses to an equal constellation.
pub fn to_text(c: &Constellation) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "n: {}", c.n_darts());
    let _ = writeln!(out, "mode: {}", c.mode());
    let _ = writeln!(out, "sigma: {}", c.sigma());
    let _ = writeln!(out, "alpha: {}", c.alpha());
    let _ = writeln!(out, "phi: {}", c.phi());
    out
}

pub fn to_json_value(c: &Constellation) -> serde_json::Value {
    serde_json::to_value(JsonConstellation {
        n: c.n_darts(),
        sigma: c.sigma().clone(),
        alpha: c.alpha().clone(),
        phi: Some(c.phi().clone()),
        mode: c.mode(),
    })
    .expect("constellation serialises")
}

impl fmt::Display for Constellation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}]", self.sigma(), self.alpha(), self.phi())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn completes_phi_for_single_loop() {
        let c = parse_constellation_file("n: 2\nsigma: (1,2)\nalpha: (1,2)").unwrap();
        assert!(c.phi().is_identity());
        assert_eq!(c.n_darts(), 2);
    }

    #[test]
    fn torus_record() {
        let c = parse_constellation_file("n: 6\nsigma: (1,2,3)(4,5,6)\nalpha: (1,4)(2,5)(3,6)").unwrap();
        assert_eq!(c.phi().to_string(), "(1,6,2,4,3,5)");
        assert_eq!(c.euler_and_genus().unwrap().genus, 1);
    }

    #[test]
    fn unclosed_cycle_location() {
        let err = parse_constellation("sigma: (1,2").unwrap_err();
        assert_eq!((err.line, err.column), (1, 8));
        assert!(matches!(err.kind, ParseErrorKind::Syntax(ref m) if m.contains("unclosed")));
    }

    #[test]
    fn duplicate_key_rejected() {
        let err = parse_constellation("sigma: (1,2)\nalpha: (1,2)\nsigma: (1,2)").unwrap_err();
        assert_eq!(err.line, 3);
        assert_eq!(err.kind, ParseErrorKind::DuplicateKey("sigma".into()));
    }

    #[test]
    fn whitespace_and_fixed_points() {
        let raw = parse_constellation("  n :  6 \n sigma : ( 2 3 ) (4, 5)\nalpha: (1,2)(3,4)(5,6) # path\n").unwrap();
        assert_eq!(raw.sigma.cycles(), vec![vec![1], vec![2, 3], vec![4, 5], vec![6]]);
    }

    #[test]
    fn n_inferred_and_checked() {
        assert_eq!(parse_constellation("sigma: (1,2)\nalpha: (3,4)").unwrap().n, 4);
        assert!(parse_constellation("n: 3\nsigma: (1,2)\nalpha: (3,4)").is_err());
    }

    #[test]
    fn unknown_key_and_missing_key() {
        assert!(matches!(
            parse_constellation("sigma: (1,2)\nbeta: (1,2)").unwrap_err().kind,
            ParseErrorKind::UnknownKey(_)
        ));
        assert!(matches!(
            parse_constellation("sigma: (1,2)").unwrap_err().kind,
            ParseErrorKind::MissingKey(_)
        ));
    }

    #[test]
    fn json_mirror() {
        let c = parse_constellation_file(r#"{"n": 4, "sigma": [4,3,2,1], "alpha": [3,4,1,2]}"#).unwrap();
        assert_eq!(c.phi().to_string(), "(1,2)(3,4)");
        let back = parse_constellation_file(&to_json_value(&c).to_string()).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn json_degree_mismatch_is_a_violation() {
        let raw = parse_constellation(r#"{"n": 2, "sigma": [2,1], "alpha": [2,1,3], "phi": [1,2]}"#).unwrap();
        assert!(!raw.validate().is_ok());
    }

    #[test]
    fn text_round_trip() {
        let c = parse_constellation_file("mode: hypermap\nsigma: (1,2,3)\nalpha: (1,2,3)").unwrap();
        assert_eq!(parse_constellation_file(&to_text(&c)).unwrap(), c);
    }
}
