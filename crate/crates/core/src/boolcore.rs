//! Three-variable Boolean rules, the carry value transformation and its
//! level-sensitive variant.
//!
//! Rules follow Wolfram numbering: the output for input triple `(a, b, c)`
//! is bit `4a + 2b + c` of the rule number, so `f(0,0,0)` lives in the
//! least-significant bit.

use std::fmt;

use crate::error::{Error, Result};

/// Rule used throughout the crate unless another one is requested.
pub const DEFAULT_RULE: u8 = 3;

/// Widest word the level-sensitive transform can operate on.
pub const MAX_WIDTH: u32 = u64::BITS;

/// An 8-row truth table for a Boolean function of three variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BooleanRule {
    number: u8,
    table: [bool; 8],
}

impl BooleanRule {
    pub fn new(number: u8) -> Self {
        let mut table = [false; 8];
        for (i, slot) in table.iter_mut().enumerate() {
            *slot = (number >> i) & 1 == 1;
        }
        BooleanRule { number, table }
    }

    pub fn rule3() -> Self {
        BooleanRule::new(DEFAULT_RULE)
    }

    pub fn number(&self) -> u8 {
        self.number
    }

    /// Outputs indexed by `4a + 2b + c`.
    pub fn table(&self) -> [bool; 8] {
        self.table
    }

    #[inline]
    pub fn eval(&self, a: bool, b: bool, c: bool) -> bool {
        self.table[(usize::from(a) << 2) | (usize::from(b) << 1) | usize::from(c)]
    }

    /// Rebuilds the rule number from the eight outputs.
    pub fn number_from_outputs(&self) -> u8 {
        (0..8u8).fold(0, |acc, i| {
            let (a, b, c) = (i & 4 != 0, i & 2 != 0, i & 1 != 0);
            acc | (u8::from(self.eval(a, b, c)) << i)
        })
    }

    /// Applies the rule to every bit column of three words at once.
    ///
    /// Each truth-table row contributes the positions where the inputs match
    /// that row; the result is masked to `mask`.
    #[inline]
    pub fn eval_words(&self, a: u64, b: u64, c: u64, mask: u64) -> u64 {
        let mut out = 0u64;
        for (i, &on) in self.table.iter().enumerate() {
            if !on {
                continue;
            }
            let pick = |word: u64, bit: usize| if i & bit != 0 { word } else { !word };
            out |= pick(a, 4) & pick(b, 2) & pick(c, 1);
        }
        out & mask
    }
}

impl Default for BooleanRule {
    fn default() -> Self {
        BooleanRule::rule3()
    }
}

impl From<u8> for BooleanRule {
    fn from(number: u8) -> Self {
        BooleanRule::new(number)
    }
}

impl fmt::Display for BooleanRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rule {}", self.number)
    }
}

/// Builds a rule from an arbitrary integer, rejecting anything outside 0..=255.
pub fn rule_from_number(r: i64) -> Result<BooleanRule> {
    u8::try_from(r)
        .map(BooleanRule::new)
        .map_err(|_| Error::invalid(format!("rule number {r} is outside 0..=255")))
}

pub fn eval_rule(rule: &BooleanRule, a: bool, b: bool, c: bool) -> bool {
    rule.eval(a, b, c)
}

/// A non-negative integer tagged with the bit width it is read at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BitWord {
    value: u64,
    width: u32,
}

impl BitWord {
    pub fn new(value: u64, width: u32) -> Result<Self> {
        if width == 0 || width > MAX_WIDTH {
            return Err(Error::invalid(format!(
                "bit width {width} is outside 1..={MAX_WIDTH}"
            )));
        }
        if value > width_mask(width) {
            return Err(Error::invalid(format!(
                "{value} does not fit in {width} bits"
            )));
        }
        Ok(BitWord { value, width })
    }

    /// Keeps only the low `width` bits of `value`.
    pub fn truncating(value: u64, width: u32) -> Result<Self> {
        BitWord::new(value & width_mask(width.clamp(1, MAX_WIDTH)), width)
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    /// Bit `i`, counting from the least-significant end.
    pub fn bit(&self, i: u32) -> bool {
        i < self.width && (self.value >> i) & 1 == 1
    }
}

impl fmt::Display for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:0width$b}", self.value, width = self.width as usize)
    }
}

/// Output of [`lscvt`]: the transformed value and the width it was computed at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LsCvtResult {
    pub value: u64,
    pub width: u32,
}

impl From<LsCvtResult> for BitWord {
    fn from(r: LsCvtResult) -> Self {
        BitWord {
            value: r.value,
            width: r.width,
        }
    }
}

/// Carry value transformation: `(a AND b) << 1`.
pub fn cvt(a: u64, b: u64) -> Result<u64> {
    let carry = a & b;
    if carry.leading_zeros() == 0 {
        return Err(Error::Overflow("cvt"));
    }
    Ok(carry << 1)
}

/// Bit width shared by every level in `2^n ..= 2^(n+1) - 1`, i.e. `n + 1`.
/// Level 0 is read at width 1.
pub fn level_width(z: u64) -> u32 {
    (MAX_WIDTH - z.leading_zeros()).max(1)
}

#[inline]
pub(crate) fn width_mask(width: u32) -> u64 {
    if width >= MAX_WIDTH {
        u64::MAX
    } else {
        (1u64 << width) - 1
    }
}

/// Level sensitive carry value transformation.
///
/// The width comes from `z` alone; `x` and `y` only contribute their low
/// `level_width(z)` bits. Result bit `i` is `rule(x_i, y_i, z_i)`.
pub fn lscvt(x: u64, y: u64, z: u64, rule: &BooleanRule) -> LsCvtResult {
    let width = level_width(z);
    LsCvtResult {
        value: rule.eval_words(x, y, z, width_mask(width)),
        width,
    }
}
