//! Multi-output Boolean functions given as cube lists, and the histogram of
//! their output patterns.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::bits::{format_bits, low_mask, BitPattern, MAX_WIDTH};
use crate::error::{Error, Result};

/// Largest input count for which an explicit truth table is kept.
pub const MAX_TABLE_INPUTS: u32 = 26;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Literal {
    Zero,
    One,
    DontCare,
}

impl Literal {
    pub fn from_char(c: char) -> Option<Self> {
        match c {
            '0' => Some(Literal::Zero),
            '1' => Some(Literal::One),
            '-' => Some(Literal::DontCare),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Literal::Zero => '0',
            Literal::One => '1',
            Literal::DontCare => '-',
        }
    }
}

/// One row of a two-level cover: an input cube and the output pattern of
/// every minterm it covers.
///
/// Input literal `i` in string order corresponds to bit `n - 1 - i` of the
/// input value. `care` marks bound variables and `value` their polarity.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cube {
    n: u8,
    care: u64,
    value: u64,
    output: BitPattern,
}

impl Cube {
    pub fn new(literals: &[Literal], output: BitPattern) -> Result<Self> {
        let n = literals.len() as u32;
        if n == 0 || n > MAX_WIDTH {
            return Err(Error::InvalidWidth(n));
        }
        let mut care = 0u64;
        let mut value = 0u64;
        for lit in literals {
            care <<= 1;
            value <<= 1;
            match lit {
                Literal::Zero => care |= 1,
                Literal::One => {
                    care |= 1;
                    value |= 1;
                }
                Literal::DontCare => {}
            }
        }
        Ok(Cube {
            n: n as u8,
            care,
            value,
            output,
        })
    }

    /// Parses an input string over `{0, 1, -}`.
    pub fn parse(inputs: &str, output: BitPattern) -> Result<Self> {
        let literals = inputs
            .chars()
            .map(|c| Literal::from_char(c).ok_or_else(|| Error::BadBitString(inputs.to_string())))
            .collect::<Result<Vec<_>>>()?;
        Cube::new(&literals, output)
    }

    /// The full-care cube for a single minterm.
    pub fn minterm(input: BitPattern, output: BitPattern) -> Self {
        Cube {
            n: input.width() as u8,
            care: low_mask(input.width()),
            value: input.value(),
            output,
        }
    }

    pub fn input_count(&self) -> u32 {
        self.n as u32
    }

    pub fn literals(&self) -> Vec<Literal> {
        (0..self.input_count())
            .rev()
            .map(|i| {
                if (self.care >> i) & 1 == 0 {
                    Literal::DontCare
                } else if (self.value >> i) & 1 == 1 {
                    Literal::One
                } else {
                    Literal::Zero
                }
            })
            .collect()
    }

    pub fn output(&self) -> BitPattern {
        self.output
    }

    pub fn care_mask(&self) -> u64 {
        self.care
    }

    pub fn value_mask(&self) -> u64 {
        self.value
    }

    pub fn dont_cares(&self) -> u32 {
        self.input_count() - self.care.count_ones()
    }

    pub fn covers(&self, x: u64) -> bool {
        x & self.care == self.value
    }
}

impl fmt::Display for Cube {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inputs: String = self.literals().into_iter().map(Literal::as_char).collect();
        write!(f, "{} {}", inputs, self.output)
    }
}

impl fmt::Debug for Cube {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cube({self})")
    }
}

/// What happens to input minterms that no cube covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Uncovered {
    /// Uncovered minterms are an error.
    #[default]
    Error,
    /// Uncovered minterms produce the all-zero output pattern.
    Zero,
}

/// A function `B^n -> B^m` given as an ordered cube list.
///
/// Functions built from a full truth table also keep the table, which makes
/// `evaluate` a lookup. The cubes remain the authoritative description.
#[derive(Clone)]
pub struct BooleanFunction {
    name: String,
    n: u32,
    m: u32,
    cubes: Vec<Cube>,
    table: Option<Arc<Vec<u64>>>,
    uncovered: Uncovered,
}

impl BooleanFunction {
    pub fn new(name: impl Into<String>, n: u32, m: u32, cubes: Vec<Cube>) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(Error::InvalidWidth(0));
        }
        if n > MAX_WIDTH {
            return Err(Error::WidthOverflow(n));
        }
        if m > MAX_WIDTH {
            return Err(Error::InvalidWidth(m));
        }
        for cube in &cubes {
            if cube.input_count() != n {
                return Err(Error::WidthMismatch {
                    expected: n,
                    actual: cube.input_count(),
                });
            }
            if cube.output.width() != m {
                return Err(Error::WidthMismatch {
                    expected: m,
                    actual: cube.output.width(),
                });
            }
        }
        Ok(BooleanFunction {
            name: name.into(),
            n,
            m,
            cubes,
            table: None,
            uncovered: Uncovered::Error,
        })
    }

    /// Builds a function from its complete truth table, `outputs[x] = f(x)`.
    pub fn from_truth_table(
        name: impl Into<String>,
        n: u32,
        m: u32,
        outputs: Vec<u64>,
    ) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(Error::InvalidWidth(0));
        }
        if n > MAX_TABLE_INPUTS {
            return Err(Error::TooLarge {
                n,
                limit: MAX_TABLE_INPUTS,
            });
        }
        if outputs.len() != 1usize << n {
            return Err(Error::MissingRow {
                input: format_bits(outputs.len() as u128, n),
            });
        }
        let cubes = outputs
            .iter()
            .enumerate()
            .map(|(x, &y)| {
                Ok(Cube::minterm(
                    BitPattern::truncated(x as u64, n),
                    BitPattern::new(y, m)?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut f = BooleanFunction::new(name, n, m, cubes)?;
        f.table = Some(Arc::new(outputs));
        Ok(f)
    }

    pub fn with_uncovered(mut self, uncovered: Uncovered) -> Self {
        self.uncovered = uncovered;
        self
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn inputs(&self) -> u32 {
        self.n
    }

    pub fn outputs(&self) -> u32 {
        self.m
    }

    pub fn cubes(&self) -> &[Cube] {
        &self.cubes
    }

    pub fn uncovered(&self) -> Uncovered {
        self.uncovered
    }

    pub(crate) fn table(&self) -> Option<&[u64]> {
        self.table.as_deref().map(Vec::as_slice)
    }

    /// Output value of the first cube covering `x`.
    pub(crate) fn eval_raw(&self, x: u64) -> Result<u64> {
        if let Some(table) = &self.table {
            return Ok(table[x as usize]);
        }
        match self.cubes.iter().find(|c| c.covers(x)) {
            Some(c) => Ok(c.output.value()),
            None => match self.uncovered {
                Uncovered::Zero => Ok(0),
                Uncovered::Error => Err(Error::UncoveredMinterm {
                    input: format_bits(x as u128, self.n),
                }),
            },
        }
    }

    pub fn evaluate(&self, x: BitPattern) -> Result<BitPattern> {
        if x.width() != self.n {
            return Err(Error::WidthMismatch {
                expected: self.n,
                actual: x.width(),
            });
        }
        Ok(BitPattern::truncated(self.eval_raw(x.value())?, self.m))
    }

    pub fn is_fully_tabulated(&self) -> bool {
        self.table.is_some()
    }
}

impl fmt::Debug for BooleanFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BooleanFunction")
            .field("name", &self.name)
            .field("n", &self.n)
            .field("m", &self.m)
            .field("cubes", &self.cubes.len())
            .field("uncovered", &self.uncovered)
            .finish()
    }
}

/// Occurring output patterns and their multiplicities `mu(p)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OutputHistogram {
    n: u32,
    m: u32,
    entries: BTreeMap<BitPattern, u128>,
}

impl OutputHistogram {
    /// Zero counts are dropped; patterns must all have width `m`.
    pub fn new(n: u32, m: u32, counts: impl IntoIterator<Item = (BitPattern, u128)>) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (p, mu) in counts {
            if p.width() != m {
                return Err(Error::WidthMismatch {
                    expected: m,
                    actual: p.width(),
                });
            }
            if mu > 0 {
                *entries.entry(p).or_insert(0) += mu;
            }
        }
        Ok(OutputHistogram { n, m, entries })
    }

    /// Histogram over anonymous patterns `0..counts.len()` of width `m`.
    /// Handy for reasoning about multiplicities alone.
    pub fn from_counts(n: u32, m: u32, counts: &[u128]) -> Result<Self> {
        let pairs = counts
            .iter()
            .enumerate()
            .map(|(i, &mu)| Ok((BitPattern::new(i as u64, m)?, mu)))
            .collect::<Result<Vec<_>>>()?;
        OutputHistogram::new(n, m, pairs)
    }

    pub fn inputs(&self) -> u32 {
        self.n
    }

    pub fn outputs(&self) -> u32 {
        self.m
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, p: &BitPattern) -> Option<u128> {
        self.entries.get(p).copied()
    }

    /// Entries in ascending pattern order.
    pub fn iter(&self) -> impl Iterator<Item = (BitPattern, u128)> + '_ {
        self.entries.iter().map(|(p, mu)| (*p, *mu))
    }

    pub fn total(&self) -> u128 {
        self.entries.values().sum()
    }

    pub fn is_complete(&self) -> bool {
        self.total() == 1u128 << self.n
    }

    /// `mu(p1)`, the largest multiplicity.
    pub fn max_multiplicity(&self) -> Option<u128> {
        self.entries.values().copied().max()
    }

    /// Patterns `p1, p2, ...` by descending multiplicity, ties by ascending
    /// pattern.
    pub fn by_multiplicity(&self) -> Vec<(BitPattern, u128)> {
        let mut v: Vec<_> = self.iter().collect();
        v.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
        v
    }

    /// True when every pattern occurs once and `n == m`.
    pub fn is_reversible(&self) -> bool {
        self.n == self.m && self.entries.values().all(|&mu| mu == 1) && self.is_complete()
    }
}
