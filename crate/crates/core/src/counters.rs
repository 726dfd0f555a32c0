//! Cycle counters: the binary counter of the conventional multiplier, a
//! plain synchronous ring counter, and the block clock-gated ring counter,
//! plus the one-hot bit selector driven by a ring.
//!
//! Ring counters rotate toward the MSB (`001 -> 010 -> 100 -> 001`), so the
//! hot position after `i` steps from reset is `i mod n`.

use crate::bitcore::{check_same_width, Word};
use crate::error::{Result, SimError};

/// Smallest `k` with `2^k >= n`, but at least one bit.
pub fn binary_counter_width(modulus: u64) -> u32 {
    let bits = if modulus <= 1 {
        0
    } else {
        64 - (modulus - 1).leading_zeros()
    };
    bits.max(1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BinaryCounter {
    state: Word,
    modulus: u64,
}

impl BinaryCounter {
    pub fn new(modulus: u64) -> Result<Self> {
        if modulus == 0 {
            return Err(SimError::InvalidConfig(
                "counter modulus must be >= 1".into(),
            ));
        }
        Ok(Self {
            state: Word::zero(binary_counter_width(modulus))?,
            modulus,
        })
    }

    pub fn state(&self) -> Word {
        self.state
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Increments modulo `modulus`; returns the next counter and how many
    /// of its bits toggled.
    pub fn step(&self) -> (Self, u32) {
        let next_value = (self.state.value() + 1) % self.modulus;
        let next = self.state.with_value(next_value);
        let toggles = (self.state.value() ^ next.value()).count_ones();
        (
            Self {
                state: next,
                modulus: self.modulus,
            },
            toggles,
        )
    }
}

pub fn binary_counter_step(c: &BinaryCounter) -> (BinaryCounter, u32) {
    c.step()
}

/// A one-hot ring counter state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RingState {
    state: Word,
}

impl RingState {
    /// Reset state: hot bit at position 0.
    pub fn new(width: u32) -> Result<Self> {
        Ok(Self {
            state: Word::new(1, width)?,
        })
    }

    pub fn from_word(state: Word) -> Result<Self> {
        if state.count_ones() != 1 {
            return Err(SimError::NotOneHot {
                value: state.value(),
            });
        }
        Ok(Self { state })
    }

    pub fn at(position: u32, width: u32) -> Result<Self> {
        if position >= width {
            return Err(SimError::BitIndexOutOfRange {
                index: position,
                width,
            });
        }
        Self::from_word(Word::new(1u64 << position, width)?)
    }

    pub fn word(&self) -> Word {
        self.state
    }

    pub fn width(&self) -> u32 {
        self.state.width()
    }

    pub fn position(&self) -> u32 {
        self.state.value().trailing_zeros()
    }

    fn rotated(&self) -> Self {
        let n = self.width();
        let next = (self.position() + 1) % n;
        Self {
            state: self.state.with_value(1u64 << next),
        }
    }

    fn output_toggles(&self, next: &Self) -> u32 {
        (self.state.value() ^ next.state.value()).count_ones()
    }
}

/// Cost parameters of the ring counters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RingCostModel {
    /// `s`: internal transitions of one flip-flop per clock edge.
    pub ff_cost: u64,
    /// `g`: transitions of one block's gating logic per clock.
    pub gate_cost: u64,
    /// Flip-flops per clock-gated block.
    pub block_size: u32,
}

impl Default for RingCostModel {
    fn default() -> Self {
        Self {
            ff_cost: 2,
            gate_cost: 1,
            block_size: 4,
        }
    }
}

impl RingCostModel {
    pub fn validate(&self, width: u32) -> Result<()> {
        if self.ff_cost < 1 {
            return Err(SimError::InvalidConfig(
                "flip-flop cost s must be >= 1".into(),
            ));
        }
        if self.block_size < 1 || self.block_size > width {
            return Err(SimError::InvalidConfig(format!(
                "block size {} must be within 1..={width}",
                self.block_size
            )));
        }
        Ok(())
    }

    /// Number of gated blocks for a ring of `width`; the last block may be
    /// short when `width` is not a multiple of the block size.
    pub fn block_count(&self, width: u32) -> u32 {
        width.div_ceil(self.block_size)
    }

    fn block_of(&self, position: u32) -> u32 {
        position / self.block_size
    }

    fn block_len(&self, block: u32, width: u32) -> u32 {
        let start = block * self.block_size;
        (width - start).min(self.block_size)
    }

    /// Internal flip-flop transitions caused by `clock_events` clocked cells.
    pub fn clock_transitions(&self, clock_events: u64) -> u64 {
        clock_events * self.ff_cost
    }

    /// Transitions wasted per pulse by an ungated ring: every cell but the
    /// two that actually change is clocked for nothing.
    pub fn unnecessary_transitions(&self, width: u32) -> u64 {
        u64::from(width.saturating_sub(2)) * self.ff_cost
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RingStep {
    pub next: RingState,
    /// Flip-flops that received a clock edge.
    pub clock_events: u64,
    /// Gating-logic transitions (zero for the ungated ring).
    pub gating_transitions: u64,
    /// Output bits that changed value.
    pub output_toggles: u32,
}

/// Ungated ring: every flip-flop sees every edge.
pub fn ring_conventional_step(r: &RingState, _cost: &RingCostModel) -> Result<RingStep> {
    let r = RingState::from_word(r.word())?;
    let next = r.rotated();
    Ok(RingStep {
        next,
        clock_events: u64::from(r.width()),
        gating_transitions: 0,
        output_toggles: r.output_toggles(&next),
    })
}

/// Block-gated ring: only the block holding the hot bit is clocked, plus the
/// destination block when the bit crosses a block boundary. Every block's
/// gate re-evaluates each clock and costs `gate_cost`.
pub fn ring_lowpower_step(r: &RingState, cost: &RingCostModel) -> Result<RingStep> {
    let r = RingState::from_word(r.word())?;
    let width = r.width();
    cost.validate(width)?;
    let next = r.rotated();

    let src = cost.block_of(r.position());
    let dst = cost.block_of(next.position());
    let mut clock_events = cost.block_len(src, width);
    if dst != src {
        clock_events += cost.block_len(dst, width);
    }

    Ok(RingStep {
        next,
        clock_events: u64::from(clock_events),
        gating_transitions: cost.gate_cost * u64::from(cost.block_count(width)),
        output_toggles: r.output_toggles(&next),
    })
}

/// One-hot multiplexer: the `data` bit at the ring's hot position.
pub fn hot_one_select(sel: &RingState, data: Word) -> Result<bool> {
    check_same_width(sel.word(), data)?;
    data.bit(sel.position())
}
