//! Line-oriented text format for characteristic pairs (`.qtm`).
//!
//! ```text
//! # complex projective plane
//! dim 2
//! facets 3
//! vertex 0 1
//! vertex 0 2
//! vertex 1 2
//! lambda
//! 1 0 -1
//! 0 1 -1
//! omniorientation +1 +1 +1 +1
//! ```
//!
//! `#` starts a comment and blank lines are ignored, also inside the
//! `lambda` block. Matrix entries are arbitrary precision integers. The
//! omniorientation line is optional: the global sign followed by one sign per
//! facet.

use std::fmt::Write as _;

use num_bigint::BigInt;
use thiserror::Error;

use crate::charpair::{
    validate_char, CharError, CharacteristicMatrix, CharacteristicPair, Omniorientation,
};
use crate::polytope::validate_polytope;
use crate::sign::Sign;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: unknown directive `{directive}`")]
    UnknownDirective { line: usize, directive: String },
    #[error("line {line}: `{directive}` expects {expected}, got {got} value(s)")]
    ArityError {
        line: usize,
        directive: String,
        expected: String,
        got: usize,
    },
    #[error("line {line}: `{token}` is not a valid integer")]
    BadInteger { line: usize, token: String },
    #[error("line {line}: `{token}` is not a sign (+1 or -1)")]
    BadSign { line: usize, token: String },
    #[error("line {line}: duplicate `{directive}` directive")]
    DuplicateDirective { line: usize, directive: String },
    #[error("line {line}: `{directive}` must come after `{needs}`")]
    OutOfOrder {
        line: usize,
        directive: String,
        needs: String,
    },
    #[error("missing `{0}` directive")]
    MissingDirective(&'static str),
    #[error("missing `lambda` block")]
    MissingLambda,
    #[error("line {line}: `lambda` block ended after {got} of {expected} rows")]
    TruncatedLambda {
        line: usize,
        expected: usize,
        got: usize,
    },
}

/// Parsed, canonicalized but not yet validated document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairDocument {
    pub dim: usize,
    pub facets: usize,
    /// Each set ascending, list sorted.
    pub vertices: Vec<Vec<usize>>,
    pub lambda: Vec<Vec<BigInt>>,
    pub omniorientation: Option<Omniorientation>,
}

impl PairDocument {
    pub fn from_pair(pair: &CharacteristicPair, omni: Option<&Omniorientation>) -> PairDocument {
        PairDocument {
            dim: pair.dim(),
            facets: pair.num_facets(),
            vertices: pair.polytope().vertices().to_vec(),
            lambda: pair.lambda().rows().to_vec(),
            omniorientation: omni.cloned(),
        }
    }

    /// Validates the polytope, the characteristic matrix and the length of
    /// the omniorientation.
    pub fn to_pair(&self) -> Result<CharacteristicPair, CharError> {
        let polytope = validate_polytope(self.dim, self.facets, self.vertices.clone())?;
        let pair = validate_char(polytope, CharacteristicMatrix::new(self.lambda.clone()))?;
        if let Some(omni) = &self.omniorientation {
            pair.check_omniorientation(omni)?;
        }
        Ok(pair)
    }
}

fn parse_usize(line: usize, token: &str) -> Result<usize, ParseError> {
    token.parse().map_err(|_| ParseError::BadInteger {
        line,
        token: token.to_string(),
    })
}

fn parse_sign(line: usize, token: &str) -> Result<Sign, ParseError> {
    match token {
        "+1" | "1" => Ok(Sign::Plus),
        "-1" => Ok(Sign::Minus),
        _ => Err(ParseError::BadSign {
            line,
            token: token.to_string(),
        }),
    }
}

fn single(line: usize, directive: &str, args: &[&str]) -> Result<usize, ParseError> {
    match args {
        [x] => parse_usize(line, x),
        _ => Err(ParseError::ArityError {
            line,
            directive: directive.to_string(),
            expected: "1".into(),
            got: args.len(),
        }),
    }
}

pub fn parse(text: &str) -> Result<PairDocument, ParseError> {
    let mut dim: Option<usize> = None;
    let mut facets: Option<usize> = None;
    let mut vertices: Vec<(usize, Vec<usize>)> = Vec::new();
    let mut lambda: Option<Vec<Vec<BigInt>>> = None;
    let mut lambda_rows: Vec<(usize, Vec<BigInt>)> = Vec::new();
    let mut lambda_pending = 0usize;
    let mut lambda_line = 0usize;
    let mut omni: Option<(usize, Vec<Sign>)> = None;
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();

        if lambda_pending > 0 {
            let row = tokens
                .iter()
                .map(|t| {
                    t.parse::<BigInt>().map_err(|_| ParseError::BadInteger {
                        line,
                        token: t.to_string(),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            lambda_rows.push((line, row));
            lambda_pending -= 1;
            if lambda_pending == 0 {
                lambda = Some(lambda_rows.iter().map(|(_, r)| r.clone()).collect());
            }
            continue;
        }

        let (directive, args) = (tokens[0], &tokens[1..]);
        let duplicate = || ParseError::DuplicateDirective {
            line,
            directive: directive.to_string(),
        };
        match directive {
            "dim" => {
                if dim.is_some() {
                    return Err(duplicate());
                }
                dim = Some(single(line, directive, args)?);
            }
            "facets" => {
                if facets.is_some() {
                    return Err(duplicate());
                }
                facets = Some(single(line, directive, args)?);
            }
            "vertex" => {
                let set = args
                    .iter()
                    .map(|t| parse_usize(line, t))
                    .collect::<Result<Vec<_>, _>>()?;
                vertices.push((line, set));
            }
            "lambda" => {
                if lambda.is_some() {
                    return Err(duplicate());
                }
                if !args.is_empty() {
                    return Err(ParseError::ArityError {
                        line,
                        directive: directive.into(),
                        expected: "0".into(),
                        got: args.len(),
                    });
                }
                let n = dim.ok_or_else(|| ParseError::OutOfOrder {
                    line,
                    directive: directive.into(),
                    needs: "dim".into(),
                })?;
                lambda_line = line;
                lambda_pending = n;
                if n == 0 {
                    lambda = Some(Vec::new());
                }
            }
            "omniorientation" => {
                if omni.is_some() {
                    return Err(duplicate());
                }
                let signs = args
                    .iter()
                    .map(|t| parse_sign(line, t))
                    .collect::<Result<Vec<_>, _>>()?;
                omni = Some((line, signs));
            }
            _ => {
                return Err(ParseError::UnknownDirective {
                    line,
                    directive: directive.to_string(),
                })
            }
        }
    }

    if lambda_pending > 0 {
        return Err(ParseError::TruncatedLambda {
            line: last_line.max(lambda_line),
            expected: dim.unwrap_or(0),
            got: lambda_rows.len(),
        });
    }
    let dim = dim.ok_or(ParseError::MissingDirective("dim"))?;
    let facets = facets.ok_or(ParseError::MissingDirective("facets"))?;
    let lambda = lambda.ok_or(ParseError::MissingLambda)?;

    for (line, row) in &lambda_rows {
        if row.len() != facets {
            return Err(ParseError::ArityError {
                line: *line,
                directive: "lambda row".into(),
                expected: facets.to_string(),
                got: row.len(),
            });
        }
    }
    for (line, set) in &vertices {
        if set.len() != dim {
            return Err(ParseError::ArityError {
                line: *line,
                directive: "vertex".into(),
                expected: dim.to_string(),
                got: set.len(),
            });
        }
    }
    let omniorientation = match omni {
        None => None,
        Some((line, signs)) => {
            if signs.len() != facets + 1 {
                return Err(ParseError::ArityError {
                    line,
                    directive: "omniorientation".into(),
                    expected: (facets + 1).to_string(),
                    got: signs.len(),
                });
            }
            Some(Omniorientation {
                global: signs[0],
                facets: signs[1..].to_vec(),
            })
        }
    };

    let mut vertices: Vec<Vec<usize>> = vertices
        .into_iter()
        .map(|(_, mut s)| {
            s.sort_unstable();
            s
        })
        .collect();
    vertices.sort();

    Ok(PairDocument {
        dim,
        facets,
        vertices,
        lambda,
        omniorientation,
    })
}

/// The `omniorientation ...` line, without trailing newline.
pub fn omniorientation_line(omni: &Omniorientation) -> String {
    let mut out = format!("omniorientation {}", omni.global);
    for s in &omni.facets {
        let _ = write!(out, " {s}");
    }
    out
}

pub fn vertex_line(facets: &[usize]) -> String {
    let mut out = String::from("vertex");
    for f in facets {
        let _ = write!(out, " {f}");
    }
    out
}

pub fn serialize(doc: &PairDocument) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "dim {}", doc.dim);
    let _ = writeln!(out, "facets {}", doc.facets);
    let mut vertices = doc.vertices.clone();
    for s in vertices.iter_mut() {
        s.sort_unstable();
    }
    vertices.sort();
    for s in &vertices {
        let _ = writeln!(out, "{}", vertex_line(s));
    }
    out.push_str("lambda\n");
    for row in &doc.lambda {
        let cells: Vec<String> = row.iter().map(BigInt::to_string).collect();
        let _ = writeln!(out, "{}", cells.join(" "));
    }
    if let Some(omni) = &doc.omniorientation {
        let _ = writeln!(out, "{}", omniorientation_line(omni));
    }
    out
}
