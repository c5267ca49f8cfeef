//! Fixed-width bit patterns.
//!
//! Patterns print most-significant bit first, so the string `"110"` is the
//! value 6 at width 3 and the leftmost character is bit `width - 1`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub const MAX_WIDTH: u32 = 64;

/// A value of `width` bits (1..=64). Bits above `width` are always zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitPattern {
    width: u8,
    bits: u64,
}

/// Mask with the low `width` bits set.
pub(crate) fn low_mask(width: u32) -> u64 {
    if width >= 64 {
        u64::MAX
    } else {
        (1u64 << width) - 1
    }
}

impl BitPattern {
    pub fn new(bits: u64, width: u32) -> Result<Self> {
        if width == 0 || width > MAX_WIDTH {
            return Err(Error::InvalidWidth(width));
        }
        if bits & !low_mask(width) != 0 {
            return Err(Error::ValueOverflow { value: bits, width });
        }
        Ok(BitPattern {
            width: width as u8,
            bits,
        })
    }

    /// Builds a pattern, keeping only the low `width` bits of `bits`.
    pub(crate) fn truncated(bits: u64, width: u32) -> Self {
        debug_assert!((1..=MAX_WIDTH).contains(&width));
        BitPattern {
            width: width as u8,
            bits: bits & low_mask(width),
        }
    }

    pub fn zero(width: u32) -> Result<Self> {
        Self::new(0, width)
    }

    pub fn value(&self) -> u64 {
        self.bits
    }

    pub fn width(&self) -> u32 {
        self.width as u32
    }

    /// Bit `i`, counted from the least significant end.
    pub fn bit(&self, i: u32) -> bool {
        i < self.width() && (self.bits >> i) & 1 == 1
    }

    pub fn parse(s: &str) -> Result<Self> {
        let width = s.len() as u32;
        if width == 0 || width > MAX_WIDTH {
            return Err(Error::BadBitString(s.to_string()));
        }
        let mut bits = 0u64;
        for c in s.chars() {
            bits <<= 1;
            match c {
                '0' => {}
                '1' => bits |= 1,
                _ => return Err(Error::BadBitString(s.to_string())),
            }
        }
        Ok(BitPattern {
            width: width as u8,
            bits,
        })
    }
}

/// Formats the low `width` bits of `value` MSB first.
pub(crate) fn format_bits(value: u128, width: u32) -> String {
    (0..width)
        .rev()
        .map(|i| if (value >> i) & 1 == 1 { '1' } else { '0' })
        .collect()
}

impl fmt::Display for BitPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_bits(self.bits as u128, self.width()))
    }
}

impl fmt::Debug for BitPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitPattern({self})")
    }
}

impl FromStr for BitPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BitPattern::parse(s)
    }
}
