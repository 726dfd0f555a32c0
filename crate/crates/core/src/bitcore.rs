//! Fixed-width bit vectors, transition counting, and a ripple-carry adder
//! that reports how many of its internal signals switched.
//!
//! Switching in combinational logic is measured with a zero-delay model:
//! the Hamming distance between consecutive steady-state values of every
//! full-adder sum and carry output. Glitches are not modeled.

use std::fmt;

use crate::error::{Result, SimError};

pub const MAX_WIDTH: u32 = 64;

#[inline]
fn mask(width: u32) -> u64 {
    if width >= 64 {
        u64::MAX
    } else {
        (1u64 << width) - 1
    }
}

/// An unsigned value held in a register of fixed width.
///
/// The value is masked to `width` bits on construction and by every
/// operation, so `value < 2^width` always holds.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Word {
    value: u64,
    width: u32,
}

impl Word {
    /// Builds a word, truncating `value` to `width` bits.
    pub fn new(value: u64, width: u32) -> Result<Self> {
        if width == 0 || width > MAX_WIDTH {
            return Err(SimError::InvalidWidth {
                width,
                max: MAX_WIDTH,
            });
        }
        Ok(Self {
            value: value & mask(width),
            width,
        })
    }

    /// Like [`Word::new`] but rejects values that would be truncated.
    pub fn exact(value: u64, width: u32) -> Result<Self> {
        let w = Self::new(value, width)?;
        if w.value != value {
            return Err(SimError::ValueTooWide { value, width });
        }
        Ok(w)
    }

    pub fn zero(width: u32) -> Result<Self> {
        Self::new(0, width)
    }

    #[inline]
    pub fn value(self) -> u64 {
        self.value
    }

    #[inline]
    pub fn width(self) -> u32 {
        self.width
    }

    /// Same width, new contents (masked).
    #[inline]
    pub(crate) fn with_value(self, value: u64) -> Self {
        Self {
            value: value & mask(self.width),
            width: self.width,
        }
    }

    /// Bit `index`, LSB at index 0.
    pub fn bit(self, index: u32) -> Result<bool> {
        if index >= self.width {
            return Err(SimError::BitIndexOutOfRange {
                index,
                width: self.width,
            });
        }
        Ok((self.value >> index) & 1 == 1)
    }

    /// Logical shift right; vacated MSBs fill with zero.
    pub fn shift_right(self, amount: u32) -> Self {
        let v = if amount >= 64 {
            0
        } else {
            self.value >> amount
        };
        self.with_value(v)
    }

    pub fn count_ones(self) -> u32 {
        self.value.count_ones()
    }

    /// Number of bit positions in which `self` and `other` differ.
    pub fn hamming(self, other: Word) -> Result<u32> {
        check_same_width(self, other)?;
        Ok((self.value ^ other.value).count_ones())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

/// Binary, MSB first, zero-padded to the full width.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:0w$b}", self.value, w = self.width as usize)
    }
}

pub(crate) fn check_same_width(a: Word, b: Word) -> Result<()> {
    if a.width != b.width {
        return Err(SimError::WidthMismatch {
            left: a.width,
            right: b.width,
        });
    }
    Ok(())
}

/// Bit `i` of `w`.
pub fn get_bit(w: Word, i: u32) -> Result<bool> {
    w.bit(i)
}

/// Transition count between two register values of the same width.
pub fn hamming(a: Word, b: Word) -> Result<u32> {
    a.hamming(b)
}

/// One full-adder cell: `(sum, carry_out)`.
#[inline]
pub fn full_add(a: bool, b: bool, cin: bool) -> (bool, bool) {
    let sum = a ^ b ^ cin;
    let cout = (a & b) | (a & cin) | (b & cin);
    (sum, cout)
}

/// Steady-state values of every internal adder output.
///
/// `carry_bits` bit `i` is the carry out of stage `i`, so the adder's
/// carry-out is the MSB of `carry_bits`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AdderState {
    pub sum_bits: Word,
    pub carry_bits: Word,
}

impl AdderState {
    /// All-zero state, as after a synchronous reset.
    pub fn new(width: u32) -> Result<Self> {
        Ok(Self {
            sum_bits: Word::zero(width)?,
            carry_bits: Word::zero(width)?,
        })
    }

    pub fn width(&self) -> u32 {
        self.sum_bits.width()
    }
}

/// Result of one combinational evaluation of an adder.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AddOutcome {
    pub sum: Word,
    pub cout: bool,
    /// Internal signals that changed relative to the previous evaluation.
    pub transitions: u32,
}

/// Evaluates the `n`-stage full-adder chain and counts switched signals.
pub fn ripple_carry_add(
    state: &AdderState,
    x: Word,
    y: Word,
    cin: bool,
) -> Result<(AddOutcome, AdderState)> {
    check_same_width(x, y)?;
    check_same_width(x, state.sum_bits)?;
    check_same_width(x, state.carry_bits)?;

    let width = x.width();
    let mut sum = 0u64;
    let mut carries = 0u64;
    let mut carry = cin;
    for i in 0..width {
        let (s, c) = full_add((x.value >> i) & 1 == 1, (y.value >> i) & 1 == 1, carry);
        sum |= (s as u64) << i;
        carries |= (c as u64) << i;
        carry = c;
    }

    let next = AdderState {
        sum_bits: x.with_value(sum),
        carry_bits: x.with_value(carries),
    };
    let transitions =
        state.sum_bits.hamming(next.sum_bits)? + state.carry_bits.hamming(next.carry_bits)?;
    Ok((
        AddOutcome {
            sum: next.sum_bits,
            cout: carry,
            transitions,
        },
        next,
    ))
}

/// An adder whose activity the datapath can measure.
///
/// The datapaths are generic over this so verification can swap in a
/// faulty model and confirm the checker notices.
pub trait AdderModel {
    fn add(&mut self, x: Word, y: Word, cin: bool) -> Result<AddOutcome>;
}

/// The ripple-carry adder used by both multiplier datapaths.
#[derive(Debug, Clone)]
pub struct RippleCarryAdder {
    state: AdderState,
}

impl RippleCarryAdder {
    pub fn new(width: u32) -> Result<Self> {
        Ok(Self {
            state: AdderState::new(width)?,
        })
    }

    pub fn state(&self) -> &AdderState {
        &self.state
    }
}

impl AdderModel for RippleCarryAdder {
    fn add(&mut self, x: Word, y: Word, cin: bool) -> Result<AddOutcome> {
        let (out, next) = ripple_carry_add(&self.state, x, y, cin)?;
        self.state = next;
        Ok(out)
    }
}
