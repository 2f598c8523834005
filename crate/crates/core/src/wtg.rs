//! The WTG text format.
//!
//! ```text
//! # comments run to end of line
//! wtg 1
//! mode undirected        # or: directed
//! n 3
//! v 1 1                  # v <id> <tau>
//! v 2 1
//! v 3 1
//! e 1 2 1                # e <u> <v> <weight>
//! e 2 3 3/2
//! p 1 1                  # optional incentives: p <id> <value>
//! ```
//!
//! Numbers are `int` or `int/int`. The header lines come first and in this
//! order; `v`, `e` and `p` lines may be interleaved. Every vertex needs
//! exactly one `v` line. Vertices without a `p` line get incentive 0.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::engine::IncentiveVector;
use crate::instance::{Edge, Instance, Mode, RawInstance, Violation};
use crate::rational::{Rational, RationalParseError};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WtgDocument {
    pub instance: Instance,
    pub incentives: Option<IncentiveVector>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("{0}")]
    Syntax(String),
    #[error("bad number: {0}")]
    Number(RationalParseError),
    #[error("vertex {0} declared twice")]
    DuplicateVertex(usize),
    #[error("vertex {0} has no `v` line")]
    MissingVertex(usize),
    #[error("incentive for vertex {0} given twice")]
    DuplicateIncentive(usize),
    #[error("negative incentive {value} for vertex {vertex}")]
    NegativeIncentive { vertex: usize, value: Rational },
    #[error("unknown vertex {0}")]
    UnknownVertex(usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0},{1})")]
    DuplicateEdge(usize, usize),
    #[error(transparent)]
    Invalid(Violation),
}

/// Positions are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

impl<'a> Token<'a> {
    fn error(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            line: self.line,
            column: self.column,
            kind,
        }
    }

    fn rational(&self) -> Result<Rational, ParseError> {
        Rational::from_str(self.text).map_err(|e| self.error(ParseErrorKind::Number(e)))
    }

    fn count(&self) -> Result<usize, ParseError> {
        self.text.parse().map_err(|_| {
            self.error(ParseErrorKind::Syntax(format!(
                "expected a non-negative integer, found `{}`",
                self.text
            )))
        })
    }

    fn vertex(&self, n: usize) -> Result<usize, ParseError> {
        let id = self.count()?;
        if id == 0 || id > n {
            return Err(self.error(ParseErrorKind::UnknownVertex(id)));
        }
        Ok(id)
    }
}

fn tokenize(line: &str, number: usize) -> Vec<Token<'_>> {
    let content = line.split('#').next().unwrap_or("");
    let mut tokens = Vec::new();
    let mut start = None;
    for (i, ch) in content.char_indices().chain([(content.len(), ' ')]) {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                tokens.push(Token {
                    text: &content[s..i],
                    line: number,
                    column: content[..s].chars().count() + 1,
                });
                start = None;
            }
            _ => {}
        }
    }
    tokens
}

fn expect_arity(tokens: &[Token<'_>], arity: usize) -> Result<(), ParseError> {
    if tokens.len() == arity {
        return Ok(());
    }
    let at = tokens.get(arity).unwrap_or(&tokens[0]);
    Err(at.error(ParseErrorKind::Syntax(format!(
        "`{}` takes {} field(s), found {}",
        tokens[0].text,
        arity - 1,
        tokens.len() - 1
    ))))
}

pub fn parse_wtg(text: &str) -> Result<WtgDocument, ParseError> {
    let lines: Vec<Vec<Token<'_>>> = text
        .lines()
        .enumerate()
        .map(|(i, l)| tokenize(l, i + 1))
        .filter(|t| !t.is_empty())
        .collect();
    let end = ParseError {
        line: text.lines().count().max(1),
        column: 1,
        kind: ParseErrorKind::Syntax("unexpected end of file".into()),
    };
    let mut it = lines.iter();

    let header = it.next().ok_or_else(|| end.clone())?;
    if header[0].text != "wtg" {
        return Err(header[0].error(ParseErrorKind::Syntax("expected `wtg 1` header".into())));
    }
    expect_arity(header, 2)?;
    if header[1].text != FORMAT_VERSION.to_string() {
        return Err(header[1].error(ParseErrorKind::Syntax(format!(
            "unsupported format version `{}`",
            header[1].text
        ))));
    }

    let mode_line = it.next().ok_or_else(|| end.clone())?;
    if mode_line[0].text != "mode" {
        return Err(mode_line[0].error(ParseErrorKind::Syntax("expected `mode` line".into())));
    }
    expect_arity(mode_line, 2)?;
    let mode = match mode_line[1].text {
        "undirected" => Mode::Undirected,
        "directed" => Mode::Directed,
        other => {
            return Err(mode_line[1].error(ParseErrorKind::Syntax(format!(
                "mode must be `undirected` or `directed`, found `{other}`"
            ))))
        }
    };

    let n_line = it.next().ok_or_else(|| end.clone())?;
    if n_line[0].text != "n" {
        return Err(n_line[0].error(ParseErrorKind::Syntax("expected `n` line".into())));
    }
    expect_arity(n_line, 2)?;
    let n = n_line[1].count()?;
    if n == 0 {
        return Err(n_line[1].error(ParseErrorKind::Invalid(Violation::NoVertices)));
    }

    let mut thresholds: Vec<Option<Rational>> = vec![None; n];
    let mut incentives: Vec<Option<Rational>> = vec![None; n];
    let mut any_incentive = false;
    let mut edges = Vec::new();
    // Tokens of each edge, for mapping validation errors back.
    let mut edge_tokens: Vec<[Token<'_>; 4]> = Vec::new();

    for tokens in it {
        match tokens[0].text {
            "v" => {
                expect_arity(tokens, 3)?;
                let id = tokens[1].vertex(n)?;
                if thresholds[id - 1].is_some() {
                    return Err(tokens[1].error(ParseErrorKind::DuplicateVertex(id)));
                }
                let tau = tokens[2].rational()?;
                if tau.is_negative() {
                    return Err(tokens[2].error(ParseErrorKind::Invalid(
                        Violation::NegativeThreshold { vertex: id, tau },
                    )));
                }
                thresholds[id - 1] = Some(tau);
            }
            "e" => {
                expect_arity(tokens, 4)?;
                let u = tokens[1].vertex(n)?;
                let v = tokens[2].vertex(n)?;
                let w = tokens[3].rational()?;
                edges.push(Edge::new(u, v, w));
                edge_tokens.push([tokens[0], tokens[1], tokens[2], tokens[3]]);
            }
            "p" => {
                expect_arity(tokens, 3)?;
                let id = tokens[1].vertex(n)?;
                let value = tokens[2].rational()?;
                if incentives[id - 1].is_some() {
                    return Err(tokens[1].error(ParseErrorKind::DuplicateIncentive(id)));
                }
                if value.is_negative() {
                    return Err(
                        tokens[2].error(ParseErrorKind::NegativeIncentive { vertex: id, value })
                    );
                }
                incentives[id - 1] = Some(value);
                any_incentive = true;
            }
            other => {
                return Err(tokens[0].error(ParseErrorKind::Syntax(format!(
                    "unknown directive `{other}`"
                ))))
            }
        }
    }

    let thresholds = thresholds
        .into_iter()
        .enumerate()
        .map(|(i, t)| {
            t.ok_or(ParseError {
                line: n_line[0].line,
                column: n_line[0].column,
                kind: ParseErrorKind::MissingVertex(i + 1),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;

    let raw = RawInstance {
        mode,
        n,
        thresholds,
        edges,
    };
    if let Err(violation) = raw.validate() {
        let err = match (&violation, violation.edge_index()) {
            (Violation::SelfLoop { vertex, .. }, Some(i)) => {
                edge_tokens[i][2].error(ParseErrorKind::SelfLoop(*vertex))
            }
            (Violation::DuplicateEdge { u, v, .. }, Some(i)) => {
                edge_tokens[i][0].error(ParseErrorKind::DuplicateEdge(*u, *v))
            }
            (Violation::NegativeWeight { .. }, Some(i)) => {
                edge_tokens[i][3].error(ParseErrorKind::Invalid(violation.clone()))
            }
            (_, Some(i)) => edge_tokens[i][0].error(ParseErrorKind::Invalid(violation.clone())),
            (_, None) => n_line[0].error(ParseErrorKind::Invalid(violation.clone())),
        };
        return Err(err);
    }
    let instance = Instance::try_from(raw).expect("validated above");
    let incentives = any_incentive.then(|| {
        IncentiveVector::new(
            incentives
                .into_iter()
                .map(Option::unwrap_or_default)
                .collect(),
        )
        .expect("negatives rejected above")
    });
    Ok(WtgDocument {
        instance,
        incentives,
    })
}

/// Standalone incentive file: only `p <id> <value>` lines and comments.
pub fn parse_incentives(text: &str, n: usize) -> Result<IncentiveVector, ParseError> {
    let mut values: Vec<Option<Rational>> = vec![None; n];
    for (i, line) in text.lines().enumerate() {
        let tokens = tokenize(line, i + 1);
        if tokens.is_empty() {
            continue;
        }
        if tokens[0].text != "p" {
            return Err(tokens[0].error(ParseErrorKind::Syntax(format!(
                "expected `p` line, found `{}`",
                tokens[0].text
            ))));
        }
        expect_arity(&tokens, 3)?;
        let id = tokens[1].vertex(n)?;
        let value = tokens[2].rational()?;
        if values[id - 1].is_some() {
            return Err(tokens[1].error(ParseErrorKind::DuplicateIncentive(id)));
        }
        if value.is_negative() {
            return Err(tokens[2].error(ParseErrorKind::NegativeIncentive { vertex: id, value }));
        }
        values[id - 1] = Some(value);
    }
    Ok(
        IncentiveVector::new(values.into_iter().map(Option::unwrap_or_default).collect())
            .expect("negatives rejected above"),
    )
}

/// Canonical text: header, vertices ascending, edges in lexicographic order,
/// then nonzero incentives ascending.
pub fn serialize_wtg(instance: &Instance, incentives: Option<&IncentiveVector>) -> String {
    let mut out = String::new();
    write_wtg(&mut out, instance, incentives).expect("writing to a String cannot fail");
    out
}

fn write_wtg(
    out: &mut impl fmt::Write,
    instance: &Instance,
    incentives: Option<&IncentiveVector>,
) -> fmt::Result {
    writeln!(out, "wtg {FORMAT_VERSION}")?;
    writeln!(out, "mode {}", instance.mode())?;
    writeln!(out, "n {}", instance.n())?;
    for v in instance.vertices() {
        writeln!(out, "v {v} {}", instance.threshold(v))?;
    }
    let mut edges = instance.edges().to_vec();
    edges.sort_by_key(|e| (e.u, e.v));
    for e in edges {
        writeln!(out, "e {} {} {}", e.u, e.v, e.weight)?;
    }
    if let Some(p) = incentives {
        for v in instance.vertices() {
            if !p.get(v).is_zero() {
                writeln!(out, "p {v} {}", p.get(v))?;
            }
        }
    }
    Ok(())
}

impl WtgDocument {
    pub fn to_text(&self) -> String {
        serialize_wtg(&self.instance, self.incentives.as_ref())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::path3;

    const P3: &str = "wtg 1\nmode undirected\nn 3\nv 1 1\nv 2 1\nv 3 1\ne 1 2 1\ne 2 3 1\n";

    fn err(text: &str) -> ParseError {
        parse_wtg(text).unwrap_err()
    }

    #[test]
    fn p3_fixture() {
        let doc = parse_wtg(P3).unwrap();
        assert_eq!(doc.instance, path3());
        assert!(doc.incentives.is_none());
        assert_eq!(doc.to_text(), P3);
    }

    #[test]
    fn comments_order_and_fractions() {
        let text =
            "# header\nwtg 1 # v1\nmode directed\nn 2\n\ne 2 1 3/2\nv 2 0\n  v 1 6/4\np 2 1/3\n";
        let doc = parse_wtg(text).unwrap();
        assert_eq!(doc.instance.weight(2, 1), Some(Rational::new(3, 2)));
        assert_eq!(doc.instance.threshold(1), Rational::new(3, 2));
        assert_eq!(
            doc.to_text(),
            "wtg 1\nmode directed\nn 2\nv 1 3/2\nv 2 0\ne 2 1 3/2\np 2 1/3\n"
        );
        assert_eq!(parse_wtg(&doc.to_text()).unwrap(), doc);
    }

    #[test]
    fn undirected_edges_are_canonicalized() {
        let doc = parse_wtg("wtg 1\nmode undirected\nn 2\nv 1 0\nv 2 0\ne 2 1 1\n").unwrap();
        assert!(doc.to_text().ends_with("e 1 2 1\n"));
    }

    #[test]
    fn self_loop_reported_with_position() {
        let e = err("wtg 1\nmode undirected\nn 2\nv 1 1\nv 2 1\ne 1 1 1\n");
        assert_eq!(e.kind, ParseErrorKind::SelfLoop(1));
        assert_eq!((e.line, e.column), (6, 5));
        assert_eq!(e.to_string(), "line 6, column 5: self-loop at vertex 1");
    }

    #[test]
    fn zero_denominator() {
        let e = err("wtg 1\nmode undirected\nn 2\nv 1 1\nv 2 1\ne 1 2 3/0\n");
        assert_eq!(
            e.kind,
            ParseErrorKind::Number(RationalParseError::ZeroDenominator)
        );
        assert_eq!((e.line, e.column), (6, 7));
    }

    #[test]
    fn incentive_files() {
        let p = parse_incentives("# paid\np 2 1/2\n\np 3 1\n", 3).unwrap();
        assert_eq!(
            p.values(),
            &[Rational::ZERO, Rational::new(1, 2), Rational::ONE]
        );
        let e = parse_incentives("p 4 1\n", 3).unwrap_err();
        assert_eq!(
            (e.kind, e.line, e.column),
            (ParseErrorKind::UnknownVertex(4), 1, 3)
        );
        assert!(parse_incentives("v 1 1\n", 3).is_err());
        assert!(parse_incentives("p 1 1\np 1 2\n", 3).is_err());
    }

    #[test]
    fn structural_errors() {
        let base = "wtg 1\nmode undirected\nn 2\nv 1 1\nv 2 1\n";
        assert_eq!(
            err(&format!("{base}e 1 2 1\ne 2 1 1\n")).kind,
            ParseErrorKind::DuplicateEdge(2, 1)
        );
        let e = err(&format!("{base}e 1 3 1\n"));
        assert_eq!(
            (e.kind, e.line, e.column),
            (ParseErrorKind::UnknownVertex(3), 6, 5)
        );
        assert!(matches!(
            err(&format!("{base}e 1 2 -1\n")).kind,
            ParseErrorKind::Invalid(Violation::NegativeWeight { .. })
        ));
        assert_eq!(
            err("wtg 1\nmode undirected\nn 2\nv 1 1\n").kind,
            ParseErrorKind::MissingVertex(2)
        );
        assert_eq!(
            err(&format!("{base}v 1 2\n")).kind,
            ParseErrorKind::DuplicateVertex(1)
        );
        assert!(matches!(
            err(&format!("{base}x 1\n")).kind,
            ParseErrorKind::Syntax(_)
        ));
        assert!(matches!(
            err(&format!("{base}e 1 2\n")).kind,
            ParseErrorKind::Syntax(_)
        ));
        assert!(matches!(err("wtg 2\n").kind, ParseErrorKind::Syntax(_)));
        assert!(matches!(
            err("mode undirected\n").kind,
            ParseErrorKind::Syntax(_)
        ));
        assert!(matches!(
            err("wtg 1\nmode undirected\n").kind,
            ParseErrorKind::Syntax(_)
        ));
        assert!(matches!(
            err(&format!("{base}p 1 -1\n")).kind,
            ParseErrorKind::NegativeIncentive { .. }
        ));
    }
}
