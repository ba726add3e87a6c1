//! Path text format.
//!
//! ```text
//! esp variant=edge epsilon=1e-10 length=4.0000000000000000e0 loops=1
//! vertex 1.0000000000000000e0 1.0000000000000000e0 0.0000000000000000e0 edge=0 t=0.0000000000000000e0
//! ```

use std::fmt::Write;

use super::{PathVertex, Pin, Polyline, Variant};
use crate::error::ParseError;
use crate::geometry::Point3;

/// Contents of a path file.
#[derive(Clone, Debug, PartialEq)]
pub struct PathFile {
    pub variant: String,
    pub epsilon: f64,
    pub length: f64,
    pub loops: usize,
    pub vertices: Vec<PathVertex>,
}

impl PathFile {
    pub fn polyline(&self) -> Polyline {
        Polyline::new(self.vertices.clone())
    }
}

/// 17 significant digits.
fn num(v: f64) -> String {
    format!("{v:.16e}")
}

/// `variant` is free text so that oracle cycles can be written as `oracle`.
pub fn write_path(path: &Polyline, variant: &str, epsilon: f64, loops: usize) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "esp variant={variant} epsilon={epsilon:e} length={} loops={loops}",
        num(path.length())
    );
    for v in path.vertices() {
        let p = v.position;
        let _ = write!(s, "vertex {} {} {}", num(p.x), num(p.y), num(p.z));
        if let Pin::Edge { index, t } = v.pin {
            let _ = write!(s, " edge={index} t={}", num(t));
        }
        s.push('\n');
    }
    s
}

impl Variant {
    pub fn write_path(self, path: &Polyline, epsilon: f64, loops: usize) -> String {
        write_path(path, self.as_str(), epsilon, loops)
    }
}

fn key_value<'a>(tok: &'a str, key: &str, line: usize) -> Result<&'a str, ParseError> {
    tok.strip_prefix(key)
        .and_then(|r| r.strip_prefix('='))
        .ok_or_else(|| ParseError::syntax(line, format!("expected `{key}=...`, found `{tok}`")))
}

fn parse_num<T: std::str::FromStr>(tok: &str, line: usize) -> Result<T, ParseError> {
    tok.parse()
        .map_err(|_| ParseError::syntax(line, format!("invalid number `{tok}`")))
}

pub fn parse_path(text: &str) -> Result<PathFile, ParseError> {
    let mut header = None;
    let mut vertices = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let toks: Vec<&str> = content.split_whitespace().collect();
        match toks[0] {
            "esp" => {
                if toks.len() != 5 {
                    return Err(ParseError::syntax(
                        line,
                        "expected `esp variant= epsilon= length= loops=`",
                    ));
                }
                header = Some((
                    key_value(toks[1], "variant", line)?.to_string(),
                    parse_num::<f64>(key_value(toks[2], "epsilon", line)?, line)?,
                    parse_num::<f64>(key_value(toks[3], "length", line)?, line)?,
                    parse_num::<usize>(key_value(toks[4], "loops", line)?, line)?,
                ));
            }
            "vertex" => {
                if toks.len() != 4 && toks.len() != 6 {
                    return Err(ParseError::syntax(line, "expected `vertex x y z [edge=<i> t=<t>]`"));
                }
                let position = Point3::new(
                    parse_num(toks[1], line)?,
                    parse_num(toks[2], line)?,
                    parse_num(toks[3], line)?,
                );
                let pin = if toks.len() == 6 {
                    Pin::Edge {
                        index: parse_num(key_value(toks[4], "edge", line)?, line)?,
                        t: parse_num(key_value(toks[5], "t", line)?, line)?,
                    }
                } else {
                    Pin::Free
                };
                vertices.push(PathVertex { position, pin });
            }
            other => {
                return Err(ParseError::syntax(line, format!("unknown directive `{other}`")));
            }
        }
    }
    let (variant, epsilon, length, loops) = header.ok_or_else(|| ParseError::syntax(1, "missing `esp` header line"))?;
    Ok(PathFile {
        variant,
        epsilon,
        length,
        loops,
        vertices,
    })
}
