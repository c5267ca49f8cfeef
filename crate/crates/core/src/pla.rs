//! Reading and writing functions: Berkeley PLA covers and plain truth tables.
//!
//! PLA rows are read as the cover of a fully specified function. A `0` in an
//! output column means that output is 0 on the cube, so output don't-cares
//! and `.type` values other than `f` are rejected.
//!
//! Truth-table files start with a header line `N M` followed by `2^N` rows
//! `<input bits> <output bits>` in any order. `#` starts a comment line.

use std::fmt::Write as _;
use std::path::Path;

use crate::bits::{format_bits, BitPattern};
use crate::error::{Error, Result};
use crate::function::{BooleanFunction, Cube, Literal, Uncovered, MAX_TABLE_INPUTS};

/// Largest input count `serialize_tt` expands.
pub const MAX_SERIALIZE_INPUTS: u32 = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Warning {
    pub line: usize,
    pub message: String,
}

/// Raw contents of a PLA file before conversion.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PlaDocument {
    pub declared_inputs: u32,
    pub declared_outputs: u32,
    pub declared_terms: Option<usize>,
    pub rows: Vec<(String, String)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Pla,
    TruthTable,
}

impl Format {
    /// `.pla` and `.tt` by extension.
    pub fn from_path(path: &Path) -> Option<Self> {
        match path.extension()?.to_str()? {
            "pla" => Some(Format::Pla),
            "tt" => Some(Format::TruthTable),
            _ => None,
        }
    }
}

pub fn parse_pla(text: &str) -> Result<BooleanFunction> {
    parse_pla_with_warnings(text).map(|(f, _)| f)
}

pub fn parse_pla_with_warnings(text: &str) -> Result<(BooleanFunction, Vec<Warning>)> {
    let (doc, mut warnings) = read_pla_document(text)?;
    if let Some(p) = doc.declared_terms {
        if p != doc.rows.len() {
            warnings.push(Warning {
                line: 0,
                message: format!(".p declares {p} terms, found {}", doc.rows.len()),
            });
        }
    }
    let cubes = doc
        .rows
        .iter()
        .map(|(i, o)| {
            let literals: Vec<Literal> = i.chars().filter_map(Literal::from_char).collect();
            Cube::new(&literals, BitPattern::parse(o)?)
        })
        .collect::<Result<Vec<_>>>()?;
    let f = BooleanFunction::new("", doc.declared_inputs, doc.declared_outputs, cubes)?;
    Ok((f, warnings))
}

pub fn read_pla_document(text: &str) -> Result<(PlaDocument, Vec<Warning>)> {
    let mut doc = PlaDocument::default();
    let mut inputs: Option<u32> = None;
    let mut outputs: Option<u32> = None;
    let mut warnings = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(directive) = line.strip_prefix('.') {
            let mut parts = directive.split_whitespace();
            let key = parts.next().unwrap_or("");
            let arg = parts.next();
            let number = |what: &str| -> Result<u32> {
                arg.and_then(|a| a.parse().ok())
                    .ok_or_else(|| Error::syntax(line_no, format!(".{what} needs a number")))
            };
            match key {
                "i" => inputs = Some(number("i")?),
                "o" => outputs = Some(number("o")?),
                "p" => doc.declared_terms = Some(number("p")? as usize),
                "e" | "end" => break,
                "type" => match arg {
                    Some("f") => {}
                    other => {
                        return Err(Error::UnsupportedFeature {
                            line: line_no,
                            message: format!(
                                ".type {} (only fully specified 'f' covers are accepted)",
                                other.unwrap_or("")
                            ),
                        })
                    }
                },
                _ => warnings.push(Warning {
                    line: line_no,
                    message: format!("ignoring directive .{key}"),
                }),
            }
            continue;
        }

        let (n, m) = match (inputs, outputs) {
            (Some(n), Some(m)) => (n, m),
            _ => return Err(Error::syntax(line_no, "row before .i and .o")),
        };
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let (ins, outs) = match tokens.as_slice() {
            [i, o] => (i.to_string(), o.to_string()),
            [joined] if joined.len() == (n + m) as usize => {
                let (i, o) = joined.split_at(n as usize);
                (i.to_string(), o.to_string())
            }
            _ => {
                // Some writers space out the input columns.
                let all: String = tokens.concat();
                if all.len() != (n + m) as usize {
                    return Err(Error::syntax(line_no, format!("malformed row {line:?}")));
                }
                let (i, o) = all.split_at(n as usize);
                (i.to_string(), o.to_string())
            }
        };
        if ins.len() != n as usize {
            return Err(Error::syntax(
                line_no,
                format!("input field has {} columns, expected {n}", ins.len()),
            ));
        }
        if outs.len() != m as usize {
            return Err(Error::syntax(
                line_no,
                format!("output field has {} columns, expected {m}", outs.len()),
            ));
        }
        if let Some(c) = ins.chars().find(|c| Literal::from_char(*c).is_none()) {
            return Err(Error::syntax(line_no, format!("bad input character {c:?}")));
        }
        for c in outs.chars() {
            match c {
                '0' | '1' => {}
                '-' | '~' | '2' => {
                    return Err(Error::UnsupportedFeature {
                        line: line_no,
                        message: format!("output don't-care {c:?}"),
                    })
                }
                _ => return Err(Error::syntax(line_no, format!("bad output character {c:?}"))),
            }
        }
        doc.rows.push((ins, outs));
    }

    match (inputs, outputs) {
        (Some(n), Some(m)) => {
            doc.declared_inputs = n;
            doc.declared_outputs = m;
        }
        _ => return Err(Error::syntax(0, "missing .i or .o")),
    }
    if doc.rows.is_empty() {
        return Err(Error::EmptyFunction);
    }
    Ok((doc, warnings))
}

pub fn parse_tt(text: &str) -> Result<BooleanFunction> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines.next().ok_or(Error::EmptyFunction)?;
    let dims: Vec<u32> = header
        .split_whitespace()
        .map(|t| t.parse())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::syntax(header_line, "header must be \"N M\""))?;
    let [n, m] = dims[..] else {
        return Err(Error::syntax(header_line, "header must be \"N M\""));
    };
    if n == 0 || m == 0 || m > 64 {
        return Err(Error::syntax(header_line, "widths must be 1..=64"));
    }
    if n > MAX_TABLE_INPUTS {
        return Err(Error::TooLarge {
            n,
            limit: MAX_TABLE_INPUTS,
        });
    }

    let size = 1usize << n;
    let mut outputs: Vec<Option<u64>> = vec![None; size];
    for (line_no, line) in lines {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let [input, output] = tokens[..] else {
            return Err(Error::syntax(line_no, format!("malformed row {line:?}")));
        };
        if input.len() != n as usize || output.len() != m as usize {
            return Err(Error::syntax(
                line_no,
                format!("row {line:?} does not match header {n} {m}"),
            ));
        }
        let x = BitPattern::parse(input).map_err(|_| Error::syntax(line_no, "bad input bits"))?;
        let y = BitPattern::parse(output).map_err(|_| Error::syntax(line_no, "bad output bits"))?;
        let slot = &mut outputs[x.value() as usize];
        if slot.is_some() {
            return Err(Error::DuplicateRow {
                input: input.to_string(),
            });
        }
        *slot = Some(y.value());
    }
    let table = outputs
        .into_iter()
        .enumerate()
        .map(|(x, y)| {
            y.ok_or_else(|| Error::MissingRow {
                input: format_bits(x as u128, n),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    BooleanFunction::from_truth_table("", n, m, table)
}

/// Canonical truth table in ascending input order, header included.
pub fn serialize_tt(f: &BooleanFunction) -> Result<String> {
    let n = f.inputs();
    if n > MAX_SERIALIZE_INPUTS {
        return Err(Error::TooLarge {
            n,
            limit: MAX_SERIALIZE_INPUTS,
        });
    }
    let mut out = String::with_capacity((1usize << n) * (n + f.outputs() + 2) as usize);
    let _ = writeln!(out, "{} {}", n, f.outputs());
    for x in 0..1u64 << n {
        let y = f.evaluate(BitPattern::truncated(x, n))?;
        let _ = writeln!(out, "{} {}", format_bits(x as u128, n), y);
    }
    Ok(out)
}

/// Loads a function from disk, naming it after the file stem. Uncovered
/// minterms become output zero when `implicit_zero` is set.
pub fn read_function(
    path: &Path,
    format: Option<Format>,
    implicit_zero: bool,
) -> Result<(BooleanFunction, Vec<Warning>)> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    let format = format
        .or_else(|| Format::from_path(path))
        .ok_or_else(|| Error::Io {
            path: path.to_path_buf(),
            message: "cannot tell the format from the extension (use .pla or .tt)".into(),
        })?;
    let (f, warnings) = match format {
        Format::Pla => parse_pla_with_warnings(&text),
        Format::TruthTable => parse_tt(&text).map(|f| (f, Vec::new())),
    }
    .map_err(|e| e.in_file(path))?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let uncovered = if implicit_zero {
        Uncovered::Zero
    } else {
        Uncovered::Error
    };
    Ok((f.with_name(name).with_uncovered(uncovered), warnings))
}
