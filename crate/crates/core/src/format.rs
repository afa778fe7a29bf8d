//! Line-oriented text formats for flag maps and rotation systems.
//!
//! ```text
//! format flagmap 1
//! flags 12
//! tau0 (1 2)(3 4)(5 8)(6 7)(9 12)(10 11)
//! tau1 (1 11)(4 12)(2 6)(3 5)(7 10)(8 9)
//! tau2 (1 4)(2 3)(5 6)(7 8)(9 10)(11 12)
//! edge e1 1
//! ```
//!
//! Keys appear in the order shown. Blank lines and lines starting with `#`
//! are ignored. `edge` lines are optional and name an edge by any one of
//! its flags; the writer always emits them, one per edge, at the minimal
//! flag.

use std::fmt::Write as _;

use thiserror::Error;

use crate::map::{FlagMap, MapError};
use crate::permutation::{Permutation, PermutationError};
use crate::rotation::{RotationError, RotationSystem};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Permutation {
        line: usize,
        source: PermutationError,
    },
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Rotation(#[from] RotationError),
}

/// A parsed map file of either kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MapFile {
    Flag(FlagMap),
    Rotation(RotationSystem),
}

impl MapFile {
    /// The file's map as a flag map, converting rotation systems.
    pub fn into_flag_map(self) -> FlagMap {
        match self {
            MapFile::Flag(m) => m,
            MapFile::Rotation(rs) => rs.to_flag_map(),
        }
    }
}

struct Lines<'a> {
    inner: std::iter::Peekable<Box<dyn Iterator<Item = (usize, &'a str)> + 'a>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let it: Box<dyn Iterator<Item = (usize, &'a str)> + 'a> = Box::new(
            text.lines()
                .enumerate()
                .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
                .filter(|(_, l)| {
                    let t = l.trim_start();
                    !t.is_empty() && !t.starts_with('#')
                }),
        );
        Lines {
            inner: it.peekable(),
        }
    }

    fn last_line(&mut self) -> usize {
        self.inner.peek().map_or(0, |&(i, _)| i)
    }

    /// Next line, which must be `key <value>`; returns `(line, value)`.
    fn expect(&mut self, key: &str) -> Result<(usize, &'a str), FormatError> {
        let line = self.last_line();
        let (line, text) = self.inner.next().ok_or_else(|| FormatError::Syntax {
            line,
            message: format!("expected `{key}`, found end of file"),
        })?;
        text.strip_prefix(key)
            .and_then(|rest| rest.strip_prefix(' '))
            .map(|v| (line, v))
            .ok_or_else(|| FormatError::Syntax {
                line,
                message: format!("expected `{key} ...`"),
            })
    }

    fn finish(&mut self) -> Result<(), FormatError> {
        match self.inner.next() {
            None => Ok(()),
            Some((line, _)) => Err(FormatError::Syntax {
                line,
                message: "unexpected trailing content".into(),
            }),
        }
    }
}

fn parse_count(line: usize, value: &str) -> Result<usize, FormatError> {
    value.parse().map_err(|_| FormatError::Syntax {
        line,
        message: format!("expected a nonnegative integer, found {value:?}"),
    })
}

fn parse_perm(line: usize, value: &str, n: usize) -> Result<Permutation, FormatError> {
    Permutation::parse_cycles(value, n).map_err(|source| FormatError::Permutation { line, source })
}

fn header(lines: &mut Lines<'_>) -> Result<(usize, &'static str), FormatError> {
    let (line, value) = lines.expect("format")?;
    match value {
        "flagmap 1" => Ok((line, "flagmap")),
        "rotation 1" => Ok((line, "rotation")),
        other => Err(FormatError::Syntax {
            line,
            message: format!("unsupported format {other:?}"),
        }),
    }
}

/// Parses either file kind, dispatching on the `format` line.
pub fn parse_map_file(text: &str) -> Result<MapFile, FormatError> {
    let mut lines = Lines::new(text);
    let (_, kind) = header(&mut lines)?;
    if kind == "flagmap" {
        parse_flagmap_body(&mut lines).map(MapFile::Flag)
    } else {
        parse_rotation_body(&mut lines).map(MapFile::Rotation)
    }
}

pub fn parse_flagmap(text: &str) -> Result<FlagMap, FormatError> {
    match parse_map_file(text)? {
        MapFile::Flag(m) => Ok(m),
        MapFile::Rotation(_) => Err(FormatError::Syntax {
            line: 1,
            message: "expected a flagmap file".into(),
        }),
    }
}

pub fn parse_rotation(text: &str) -> Result<RotationSystem, FormatError> {
    match parse_map_file(text)? {
        MapFile::Rotation(rs) => Ok(rs),
        MapFile::Flag(_) => Err(FormatError::Syntax {
            line: 1,
            message: "expected a rotation file".into(),
        }),
    }
}

fn parse_flagmap_body(lines: &mut Lines<'_>) -> Result<FlagMap, FormatError> {
    let (line, value) = lines.expect("flags")?;
    let n = parse_count(line, value)?;
    let (l0, v0) = lines.expect("tau0")?;
    let t0 = parse_perm(l0, v0, n)?;
    let (l1, v1) = lines.expect("tau1")?;
    let t1 = parse_perm(l1, v1, n)?;
    let (l2, v2) = lines.expect("tau2")?;
    let t2 = parse_perm(l2, v2, n)?;
    let mut labels = Vec::new();
    while lines.inner.peek().is_some() {
        let (line, value) = lines.expect("edge")?;
        let (label, flag) = value.split_once(' ').ok_or_else(|| FormatError::Syntax {
            line,
            message: "expected `edge <label> <flag>`".into(),
        })?;
        labels.push((label.to_string(), parse_count(line, flag)?));
    }
    lines.finish()?;
    let labels = (!labels.is_empty()).then_some(labels);
    Ok(FlagMap::new(t0, t1, t2, labels)?)
}

fn parse_rotation_body(lines: &mut Lines<'_>) -> Result<RotationSystem, FormatError> {
    let (line, value) = lines.expect("halfedges")?;
    let h = parse_count(line, value)?;
    let (lv, vv) = lines.expect("sigma_v")?;
    let sv = parse_perm(lv, vv, h)?;
    let (le, ve) = lines.expect("sigma_e")?;
    let se = parse_perm(le, ve, h)?;
    lines.finish()?;
    Ok(RotationSystem::new(sv, se)?)
}

pub fn write_flagmap(m: &FlagMap) -> String {
    let mut out = String::from("format flagmap 1\n");
    writeln!(out, "flags {}", m.flag_count()).unwrap();
    for (i, t) in m.taus().iter().enumerate() {
        writeln!(out, "tau{i} {t}").unwrap();
    }
    for e in m.edges() {
        writeln!(out, "edge {} {}", e.label, e.flags[0]).unwrap();
    }
    out
}

pub fn write_rotation(rs: &RotationSystem) -> String {
    format!(
        "format rotation 1\nhalfedges {}\nsigma_v {}\nsigma_e {}\n",
        rs.half_edges(),
        rs.sigma_v(),
        rs.sigma_e()
    )
}
