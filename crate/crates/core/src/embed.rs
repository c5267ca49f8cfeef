//! Reversible embeddings and their widths.
//!
//! Word layout, most significant bits first:
//!
//! * Minimal and coded inputs are `ancilla ++ x`, so the rows with all
//!   ancillae at zero are the words `0..2^n`.
//! * Minimal outputs are `garbage ++ f(x)`.
//! * Coded outputs are `code(f(x)) ++ garbage`.
//! * Bennett maps `x ++ g` to `x ++ (g xor f(x))`.
//!
//! Garbage values are assigned per output pattern in ascending input order
//! (`0, 1, 2, ...`). Rows with a non-zero ancilla then take the unused output
//! words in ascending order, so every table is a bijection by construction.

use std::collections::HashMap;
use std::fmt::{self, Write as _};
use std::sync::Arc;

use crate::bits::{format_bits, BitPattern};
use crate::coder::{ceil_log2, root_weight_bound, CodeBook, Codeword};
use crate::error::{Error, Result};
use crate::function::{BooleanFunction, OutputHistogram};
use crate::pla;

/// Widest bijection that is completed and checked as an explicit table.
pub const MAX_COMPLETION_WIDTH: u32 = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    Bennett,
    Minimal,
    Coded,
}

impl Scheme {
    pub fn as_str(self) -> &'static str {
        match self {
            Scheme::Bennett => "bennett",
            Scheme::Minimal => "minimal",
            Scheme::Coded => "coded",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "bennett" => Some(Scheme::Bennett),
            "minimal" => Some(Scheme::Minimal),
            "coded" => Some(Scheme::Coded),
            _ => None,
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone)]
pub enum Mapping {
    /// `table[input] = output` over all `2^width` words.
    Table(Arc<Vec<u64>>),
    /// `x ++ g -> x ++ (g xor f(x))` for the wrapped function.
    BennettRule(BooleanFunction),
}

#[derive(Debug, Clone)]
pub struct EmbeddingSpec {
    pub scheme: Scheme,
    pub width: u32,
    /// Inputs of the original function.
    pub inputs: u32,
    /// Outputs of the original function.
    pub outputs: u32,
    pub ancilla_inputs: u32,
    pub mapping: Mapping,
    pub codebook: Option<CodeBook>,
    /// Output bit positions (LSB = 0) carrying the primary outputs, most
    /// significant first. For coded embeddings this is the whole word; the
    /// codeword is read from its top.
    pub primary_output_positions: Vec<u32>,
}

impl EmbeddingSpec {
    pub fn apply(&self, word: u128) -> Result<u128> {
        match &self.mapping {
            Mapping::Table(table) => table
                .get(word as usize)
                .map(|&y| y as u128)
                .filter(|_| word >> self.width == 0)
                .ok_or_else(|| Error::BadEmbedding(format!("word {word} outside the table"))),
            Mapping::BennettRule(f) => {
                let m = f.outputs();
                let x = (word >> m) as u64;
                let g = word & ((1u128 << m) - 1);
                Ok((word >> m << m) | (g ^ f.eval_raw(x)? as u128))
            }
        }
    }

    /// The input word for `x` with every ancilla at zero.
    pub fn input_word(&self, x: u64) -> u128 {
        match self.scheme {
            Scheme::Bennett => (x as u128) << self.outputs,
            Scheme::Minimal | Scheme::Coded => x as u128,
        }
    }

    /// Reads the primary outputs back out of an output word.
    pub fn project(&self, word: u128) -> u128 {
        self.primary_output_positions
            .iter()
            .fold(0u128, |acc, &pos| (acc << 1) | ((word >> pos) & 1))
    }

    /// The original output pattern carried by `word`, decoding if needed.
    pub fn decode(&self, word: u128) -> Option<BitPattern> {
        match (&self.codebook, self.scheme) {
            (Some(cb), Scheme::Coded) => cb.decode(word, self.width),
            _ => Some(BitPattern::truncated(self.project(word) as u64, self.outputs)),
        }
    }

    /// Explicit table for widths up to [`MAX_COMPLETION_WIDTH`].
    pub fn tabulate(&self) -> Result<Vec<u64>> {
        if self.width > MAX_COMPLETION_WIDTH {
            return Err(Error::TooWideForCompletion {
                width: self.width,
                limit: MAX_COMPLETION_WIDTH,
            });
        }
        match &self.mapping {
            Mapping::Table(t) => Ok(t.as_ref().clone()),
            Mapping::BennettRule(_) => (0..1u128 << self.width)
                .map(|w| self.apply(w).map(|y| y as u64))
                .collect(),
        }
    }
}

pub fn width_bennett(f: &BooleanFunction) -> u32 {
    f.inputs() + f.outputs()
}

/// `max(n, m + ceil(log2 mu(p1)))`.
pub fn width_minimal(f: &BooleanFunction, h: &OutputHistogram) -> Result<u32> {
    let top = h.max_multiplicity().ok_or(Error::EmptyHistogram)?;
    Ok(f.inputs().max(f.outputs() + ceil_log2(top)))
}

pub fn width_encoded(f: &BooleanFunction, h: &OutputHistogram) -> Result<u32> {
    Ok(root_weight_bound(h)?.width(f.inputs()))
}

pub fn embed_bennett(f: &BooleanFunction) -> EmbeddingSpec {
    let m = f.outputs();
    EmbeddingSpec {
        scheme: Scheme::Bennett,
        width: width_bennett(f),
        inputs: f.inputs(),
        outputs: m,
        ancilla_inputs: m,
        mapping: Mapping::BennettRule(f.clone()),
        codebook: None,
        primary_output_positions: (0..m).rev().collect(),
    }
}

pub fn embed_minimal(f: &BooleanFunction, h: &OutputHistogram) -> Result<EmbeddingSpec> {
    let width = width_minimal(f, h)?;
    check_completion_width(width)?;
    let m = f.outputs();
    let garbage_bits = width - m;
    let mut next: HashMap<u64, u64> = HashMap::new();
    let mut primary = Vec::with_capacity(1 << f.inputs());
    for x in 0..1u64 << f.inputs() {
        let y = f.eval_raw(x)?;
        let g = bump(&mut next, y);
        if g >> garbage_bits != 0 {
            return Err(Error::GarbageOverflow {
                pattern: format_bits(y as u128, m),
            });
        }
        primary.push((g << m) | y);
    }
    Ok(EmbeddingSpec {
        scheme: Scheme::Minimal,
        width,
        inputs: f.inputs(),
        outputs: m,
        ancilla_inputs: width - f.inputs(),
        mapping: Mapping::Table(Arc::new(complete(width, primary)?)),
        codebook: None,
        primary_output_positions: (0..m).rev().collect(),
    })
}

pub fn embed_coded(f: &BooleanFunction, h: &OutputHistogram, cb: &CodeBook) -> Result<EmbeddingSpec> {
    let _ = root_weight_bound(h)?;
    let width = f.inputs().max(cb.total_width());
    check_completion_width(width)?;
    let m = f.outputs();
    let mut next: HashMap<u64, u64> = HashMap::new();
    let mut primary = Vec::with_capacity(1 << f.inputs());
    for x in 0..1u64 << f.inputs() {
        let y = f.eval_raw(x)?;
        let pattern = BitPattern::truncated(y, m);
        let code = cb
            .codeword(&pattern)
            .ok_or_else(|| Error::BadEmbedding(format!("pattern {pattern} has no codeword")))?;
        let garbage_bits = width - code.len();
        let g = bump(&mut next, y);
        if g >> garbage_bits != 0 {
            return Err(Error::GarbageOverflow {
                pattern: pattern.to_string(),
            });
        }
        primary.push(((code.bits() as u64) << garbage_bits) | g);
    }
    Ok(EmbeddingSpec {
        scheme: Scheme::Coded,
        width,
        inputs: f.inputs(),
        outputs: m,
        ancilla_inputs: width - f.inputs(),
        mapping: Mapping::Table(Arc::new(complete(width, primary)?)),
        codebook: Some(cb.clone()),
        primary_output_positions: (0..width).rev().collect(),
    })
}

fn bump(next: &mut HashMap<u64, u64>, y: u64) -> u64 {
    let slot = next.entry(y).or_insert(0);
    let g = *slot;
    *slot += 1;
    g
}

fn check_completion_width(width: u32) -> Result<()> {
    if width > MAX_COMPLETION_WIDTH {
        return Err(Error::TooWideForCompletion {
            width,
            limit: MAX_COMPLETION_WIDTH,
        });
    }
    Ok(())
}

/// Extends the images of the ancilla-zero rows to a permutation of
/// `0..2^width`.
fn complete(width: u32, primary: Vec<u64>) -> Result<Vec<u64>> {
    let size = 1usize << width;
    let mut used = vec![false; size];
    for &y in &primary {
        if std::mem::replace(&mut used[y as usize], true) {
            return Err(Error::BadEmbedding(format!(
                "output word {} produced twice",
                format_bits(y as u128, width)
            )));
        }
    }
    let mut table = primary;
    table.reserve(size - table.len());
    let mut free = used.iter().enumerate().filter(|(_, &u)| !u).map(|(y, _)| y as u64);
    while table.len() < size {
        table.push(free.next().expect("as many free outputs as free inputs"));
    }
    Ok(table)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Failure {
    TooWide { width: u32 },
    ShapeMismatch(String),
    OutOfRange { input: String },
    NotBijective { first: String, second: String, output: String },
    WrongOutput { input: String, expected: String, actual: String },
    DecodeMismatch { input: String, expected: String, decoded: Option<String> },
    Evaluation(Error),
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::TooWide { width } => write!(f, "width {width} too wide to verify"),
            Failure::ShapeMismatch(msg) => write!(f, "shape mismatch: {msg}"),
            Failure::OutOfRange { input } => write!(f, "input {input} maps outside the word range"),
            Failure::NotBijective { first, second, output } => {
                write!(f, "not bijective: {first} and {second} both map to {output}")
            }
            Failure::WrongOutput { input, expected, actual } => {
                write!(f, "input {input}: expected {expected}, got {actual}")
            }
            Failure::DecodeMismatch { input, expected, decoded } => write!(
                f,
                "input {input}: decodes to {}, expected {expected}",
                decoded.as_deref().unwrap_or("nothing")
            ),
            Failure::Evaluation(e) => write!(f, "evaluation failed: {e}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub scheme: Scheme,
    pub width: u32,
    pub failure: Option<Failure>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(f, "verify {} embedding ({} lines): pass", self.scheme, self.width),
            Some(fail) => write!(f, "verify {} embedding ({} lines): FAIL: {fail}", self.scheme, self.width),
        }
    }
}

/// Checks bijectivity, that the ancilla-zero rows carry `f` (or its
/// codewords), and for coded embeddings that decoding recovers `f(x)`.
pub fn verify_embedding(spec: &EmbeddingSpec, f: &BooleanFunction) -> VerificationReport {
    VerificationReport {
        scheme: spec.scheme,
        width: spec.width,
        failure: find_failure(spec, f).err(),
    }
}

fn find_failure(spec: &EmbeddingSpec, f: &BooleanFunction) -> std::result::Result<(), Failure> {
    let width = spec.width;
    if width > MAX_COMPLETION_WIDTH {
        return Err(Failure::TooWide { width });
    }
    if spec.inputs != f.inputs() || spec.outputs != f.outputs() || width < f.inputs() {
        return Err(Failure::ShapeMismatch(format!(
            "embedding of {}x{} on {} lines, function is {}x{}",
            spec.inputs,
            spec.outputs,
            width,
            f.inputs(),
            f.outputs()
        )));
    }
    let word = |w: u128| format_bits(w, width);

    let table = spec.tabulate().map_err(Failure::Evaluation)?;
    if table.len() != 1 << width {
        return Err(Failure::ShapeMismatch(format!(
            "table has {} rows, expected {}",
            table.len(),
            1u64 << width
        )));
    }
    let mut preimage: Vec<Option<u64>> = vec![None; table.len()];
    for (x, &y) in table.iter().enumerate() {
        if y >> width != 0 {
            return Err(Failure::OutOfRange { input: word(x as u128) });
        }
        if let Some(first) = preimage[y as usize].replace(x as u64) {
            return Err(Failure::NotBijective {
                first: word(first as u128),
                second: word(x as u128),
                output: word(y as u128),
            });
        }
    }

    let m = f.outputs();
    for x in 0..1u64 << f.inputs() {
        let expected = f.evaluate(BitPattern::truncated(x, f.inputs())).map_err(Failure::Evaluation)?;
        let input = spec.input_word(x);
        let out = table[input as usize] as u128;
        match spec.scheme {
            Scheme::Bennett => {
                let want = (input >> m << m) | expected.value() as u128;
                if out != want {
                    return Err(Failure::WrongOutput {
                        input: word(input),
                        expected: word(want),
                        actual: word(out),
                    });
                }
            }
            Scheme::Minimal => {
                let got = spec.project(out);
                if got != expected.value() as u128 {
                    return Err(Failure::WrongOutput {
                        input: word(input),
                        expected: expected.to_string(),
                        actual: format_bits(got, m),
                    });
                }
            }
            Scheme::Coded => {
                let cb = spec
                    .codebook
                    .as_ref()
                    .ok_or_else(|| Failure::ShapeMismatch("coded embedding without codebook".into()))?;
                let code = cb.codeword(&expected).ok_or_else(|| Failure::DecodeMismatch {
                    input: word(input),
                    expected: expected.to_string(),
                    decoded: None,
                })?;
                if code.len() > width
                    || Codeword::new(out >> (width - code.len()), code.len()) != code
                {
                    return Err(Failure::WrongOutput {
                        input: word(input),
                        expected: format!("{code}..."),
                        actual: word(out),
                    });
                }
                let decoded = spec.decode(out);
                if decoded != Some(expected) {
                    return Err(Failure::DecodeMismatch {
                        input: word(input),
                        expected: expected.to_string(),
                        decoded: decoded.map(|p| p.to_string()),
                    });
                }
            }
        }
    }
    Ok(())
}

const HEADER_TAG: &str = "#!";

/// Writes the embedding as a truth table over `width` bits, preceded by
/// `#!` header lines. Plain truth-table readers see the headers as comments.
pub fn write_embedding(spec: &EmbeddingSpec) -> Result<String> {
    let table = spec.tabulate()?;
    let positions: Vec<String> = spec.primary_output_positions.iter().map(u32::to_string).collect();
    let mut out = String::new();
    let _ = writeln!(out, "{HEADER_TAG} qembed-embedding");
    let _ = writeln!(
        out,
        "{HEADER_TAG} scheme={} width={} ancilla={} inputs={} outputs={}",
        spec.scheme, spec.width, spec.ancilla_inputs, spec.inputs, spec.outputs
    );
    let _ = writeln!(out, "{HEADER_TAG} primary={}", positions.join(","));
    if let Some(cb) = &spec.codebook {
        let pairs: Vec<String> = cb.iter().map(|(p, e)| format!("{p}={}", e.codeword)).collect();
        let _ = writeln!(out, "{HEADER_TAG} codebook {}", pairs.join(" "));
    }
    let body = BooleanFunction::from_truth_table("embedding", spec.width, spec.width, table)?;
    out.push_str(&pla::serialize_tt(&body)?);
    Ok(out)
}

/// Reads back the output of [`write_embedding`]. The mapping is always a
/// table, also for Bennett embeddings.
pub fn read_embedding(text: &str) -> Result<EmbeddingSpec> {
    let bad = |msg: &str| Error::BadEmbedding(msg.to_string());
    let mut fields: HashMap<String, String> = HashMap::new();
    let mut codes: Option<Vec<(BitPattern, Codeword)>> = None;
    for line in text.lines().filter_map(|l| l.trim().strip_prefix(HEADER_TAG)) {
        let line = line.trim();
        if let Some(rest) = line.strip_prefix("codebook") {
            let mut list = Vec::new();
            for pair in rest.split_whitespace() {
                let (p, c) = pair.split_once('=').ok_or_else(|| bad("codebook entry without '='"))?;
                list.push((BitPattern::parse(p)?, Codeword::parse(c)?));
            }
            codes = Some(list);
        } else {
            for kv in line.split_whitespace() {
                if let Some((k, v)) = kv.split_once('=') {
                    fields.insert(k.to_string(), v.to_string());
                }
            }
        }
    }
    let num = |k: &str| -> Result<u32> {
        fields
            .get(k)
            .ok_or_else(|| bad(&format!("missing {k}")))?
            .parse()
            .map_err(|_| bad(&format!("bad {k}")))
    };
    let scheme = fields
        .get("scheme")
        .and_then(|s| Scheme::parse(s))
        .ok_or_else(|| bad("missing or unknown scheme"))?;
    let width = num("width")?;
    let primary_output_positions = fields
        .get("primary")
        .ok_or_else(|| bad("missing primary"))?
        .split(',')
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<u32>().map_err(|_| bad("bad primary position")))
        .collect::<Result<Vec<_>>>()?;
    let body = pla::parse_tt(text)?;
    if body.inputs() != width || body.outputs() != width {
        return Err(bad("table width disagrees with header"));
    }
    let table = body.table().expect("truth tables are tabulated").to_vec();
    let codebook = match codes {
        Some(list) => Some(CodeBook::from_codes(width, list)?),
        None if scheme == Scheme::Coded => return Err(bad("coded embedding without codebook")),
        None => None,
    };
    Ok(EmbeddingSpec {
        scheme,
        width,
        inputs: num("inputs")?,
        outputs: num("outputs")?,
        ancilla_inputs: num("ancilla")?,
        mapping: Mapping::Table(Arc::new(table)),
        codebook,
        primary_output_positions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coder::{assign_codes, build_ph_tree};
    use crate::count::count_enumerate;

    fn half_adder() -> BooleanFunction {
        BooleanFunction::from_truth_table("ha", 2, 2, vec![0b00, 0b01, 0b01, 0b10]).unwrap()
    }

    fn table2() -> BooleanFunction {
        BooleanFunction::from_truth_table(
            "t2",
            3,
            3,
            vec![0b110, 0b000, 0b110, 0b100, 0b000, 0b111, 0b110, 0b110],
        )
        .unwrap()
    }

    fn coded(f: &BooleanFunction) -> EmbeddingSpec {
        let h = count_enumerate(f).unwrap();
        let cb = assign_codes(&build_ph_tree(&h).unwrap());
        embed_coded(f, &h, &cb).unwrap()
    }

    #[test]
    fn widths_for_worked_examples() {
        let ha = half_adder();
        let h = count_enumerate(&ha).unwrap();
        assert_eq!(width_bennett(&ha), 4);
        assert_eq!(width_minimal(&ha, &h).unwrap(), 3);
        assert_eq!(width_encoded(&ha, &h).unwrap(), 2);

        let t2 = table2();
        let h = count_enumerate(&t2).unwrap();
        assert_eq!(width_bennett(&t2), 6);
        assert_eq!(width_minimal(&t2, &h).unwrap(), 5);
        assert_eq!(width_encoded(&t2, &h).unwrap(), 3);
    }

    #[test]
    fn not_power_of_two_needs_extra_line() {
        let f = BooleanFunction::from_truth_table("f", 2, 1, vec![1, 1, 1, 0]).unwrap();
        let h = count_enumerate(&f).unwrap();
        assert_eq!(width_encoded(&f, &h).unwrap(), 3);
        let spec = coded(&f);
        assert_eq!(spec.width, 3);
        assert_eq!(spec.ancilla_inputs, 1);
        assert!(verify_embedding(&spec, &f).passed());
    }

    #[test]
    fn half_adder_minimal_restriction() {
        let f = half_adder();
        let h = count_enumerate(&f).unwrap();
        let spec = embed_minimal(&f, &h).unwrap();
        assert_eq!(spec.width, 3);
        assert_eq!(spec.ancilla_inputs, 1);
        let outs: Vec<u128> = (0..4).map(|x| spec.project(spec.apply(x).unwrap())).collect();
        assert_eq!(outs, vec![0b00, 0b01, 0b01, 0b10]);
        assert!(verify_embedding(&spec, &f).passed());
    }

    #[test]
    fn half_adder_coded_table() {
        let spec = coded(&half_adder());
        assert_eq!(spec.width, 2);
        let table = spec.tabulate().unwrap();
        assert_eq!(table, vec![0b10, 0b00, 0b01, 0b11]);
        assert!(verify_embedding(&spec, &half_adder()).passed());
    }

    #[test]
    fn table2_coded_rows_without_garbage_freedom() {
        let spec = coded(&table2());
        assert_eq!(spec.width, 3);
        assert_eq!(spec.apply(0b011).unwrap(), 0b110);
        assert_eq!(spec.apply(0b101).unwrap(), 0b111);
        // code "0" rows carry two garbage bits, code "10" rows one.
        assert_eq!(spec.apply(0b000).unwrap() >> 2, 0);
        assert_eq!(spec.apply(0b001).unwrap() >> 1, 0b10);
        assert!(verify_embedding(&spec, &table2()).passed());
    }

    #[test]
    fn constant_coded_is_identity() {
        let f = BooleanFunction::from_truth_table("c", 3, 2, vec![1; 8]).unwrap();
        let spec = coded(&f);
        assert_eq!(spec.tabulate().unwrap(), (0..8).collect::<Vec<u64>>());
        assert!(verify_embedding(&spec, &f).passed());
    }

    #[test]
    fn reversible_minimal_is_the_function() {
        let perm = vec![3, 0, 2, 1, 7, 5, 6, 4];
        let f = BooleanFunction::from_truth_table("p", 3, 3, perm.clone()).unwrap();
        let h = count_enumerate(&f).unwrap();
        let spec = embed_minimal(&f, &h).unwrap();
        assert_eq!(spec.width, 3);
        assert_eq!(spec.ancilla_inputs, 0);
        assert_eq!(spec.tabulate().unwrap(), perm);
    }

    #[test]
    fn bennett_rule() {
        let f = half_adder();
        let spec = embed_bennett(&f);
        assert_eq!(spec.width, 4);
        assert_eq!(spec.apply(0b11_00).unwrap(), 0b11_10);
        assert_eq!(spec.apply(0b11_10).unwrap(), 0b11_00);
        assert!(verify_embedding(&spec, &f).passed());
    }

    #[test]
    fn duplicate_images_are_caught() {
        let f = half_adder();
        let mut spec = embed_minimal(&f, &count_enumerate(&f).unwrap()).unwrap();
        let mut table = spec.tabulate().unwrap();
        table[5] = table[4];
        spec.mapping = Mapping::Table(Arc::new(table));
        let report = verify_embedding(&spec, &f);
        assert_eq!(
            report.failure,
            Some(Failure::NotBijective {
                first: "100".into(),
                second: "101".into(),
                output: format_bits(spec.apply(4).unwrap(), 3),
            })
        );
    }

    #[test]
    fn wrong_primary_output_is_caught() {
        let f = half_adder();
        let mut spec = embed_minimal(&f, &count_enumerate(&f).unwrap()).unwrap();
        let mut table = spec.tabulate().unwrap();
        table.swap(0, 4);
        spec.mapping = Mapping::Table(Arc::new(table));
        assert!(matches!(
            verify_embedding(&spec, &f).failure,
            Some(Failure::WrongOutput { .. })
        ));
    }

    #[test]
    fn too_wide_for_completion() {
        let f = BooleanFunction::from_truth_table("wide", 4, 18, vec![0; 16]).unwrap();
        let h = count_enumerate(&f).unwrap();
        assert_eq!(width_minimal(&f, &h).unwrap(), 22);
        assert_eq!(
            embed_minimal(&f, &h).unwrap_err(),
            Error::TooWideForCompletion { width: 22, limit: 20 }
        );
        assert!(matches!(
            verify_embedding(&embed_bennett(&f), &f).failure,
            Some(Failure::TooWide { width: 22 })
        ));
    }

    #[test]
    fn serialization_round_trip() {
        for spec in [coded(&table2()), embed_bennett(&half_adder())] {
            let text = write_embedding(&spec).unwrap();
            let back = read_embedding(&text).unwrap();
            assert_eq!(back.scheme, spec.scheme);
            assert_eq!(back.width, spec.width);
            assert_eq!(back.ancilla_inputs, spec.ancilla_inputs);
            assert_eq!(back.primary_output_positions, spec.primary_output_positions);
            assert_eq!(back.codebook, spec.codebook);
            assert_eq!(back.tabulate().unwrap(), spec.tabulate().unwrap());
        }
        let text = write_embedding(&coded(&table2())).unwrap();
        assert!(text.contains("#! codebook 000=10 100=110 110=0 111=111"));
        assert!(text.contains("#! scheme=coded width=3 ancilla=0 inputs=3 outputs=3"));
    }
}
