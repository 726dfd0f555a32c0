//! Cycle-accurate models of the two multiplier datapaths.
//!
//! Both models run one cycle per processed multiplier bit and record every
//! register, counter, multiplexer and adder transition in a [`ToggleLedger`].
//! All registers start at zero before cycle 0.

mod conventional;
mod lowpower;
mod trace;

use std::fmt;
use std::ops::{AddAssign, Index, IndexMut};
use std::str::FromStr;

use serde::Serialize;

use crate::bitcore::{AdderModel, RippleCarryAdder, Word};
use crate::counters::RingCostModel;
use crate::error::{Result, SimError};

pub use conventional::run_conventional_with;
pub use lowpower::run_lowpower_with;
pub use trace::render_trace;

/// Widest operand accepted; the `2n`-bit product must fit a machine word.
pub const MAX_OPERAND_WIDTH: u32 = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Conventional,
    LowPower,
}

impl Variant {
    pub const ALL: [Variant; 2] = [Variant::Conventional, Variant::LowPower];

    pub fn name(self) -> &'static str {
        match self {
            Variant::Conventional => "conv",
            Variant::LowPower => "lowpower",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = SimError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "conv" | "conventional" => Ok(Variant::Conventional),
            "lowpower" | "low-power" | "lp" => Ok(Variant::LowPower),
            other => Err(SimError::InvalidConfig(format!(
                "unknown architecture `{other}`"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ArchConfig {
    pub variant: Variant,
    pub width: u32,
    pub cost: RingCostModel,
    /// Number of low multiplier bits processed (`k + 1`).
    pub effective_width: u32,
}

impl ArchConfig {
    /// Full-width configuration with default ring costs.
    pub fn new(variant: Variant, width: u32) -> Result<Self> {
        let cfg = Self {
            variant,
            width,
            cost: RingCostModel::default(),
            effective_width: width,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_cost(mut self, cost: RingCostModel) -> Result<Self> {
        self.cost = cost;
        self.validate()?;
        Ok(self)
    }

    pub fn with_effective_width(mut self, effective_width: u32) -> Result<Self> {
        self.effective_width = effective_width;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if self.width == 0 || self.width > MAX_OPERAND_WIDTH {
            return Err(SimError::InvalidWidth {
                width: self.width,
                max: MAX_OPERAND_WIDTH,
            });
        }
        if self.effective_width == 0 || self.effective_width > self.width {
            return Err(SimError::InvalidConfig(format!(
                "effective width {} must be within 1..={}",
                self.effective_width, self.width
            )));
        }
        if self.cost.block_size == 0 {
            return Err(SimError::InvalidConfig("block size must be >= 1".into()));
        }
        self.ring_cost().validate(self.width)
    }

    /// Ring costs with the block size clamped to the ring width, so a
    /// default block of 4 still works on narrow multipliers.
    pub fn ring_cost(&self) -> RingCostModel {
        RingCostModel {
            block_size: self.cost.block_size.min(self.width),
            ..self.cost
        }
    }
}

/// Switching-activity categories, in report column order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Category {
    MultiplierShift,
    PartialProductShift,
    Adder,
    CounterInternal,
    CounterOutput,
    MuxSelect,
    MuxData,
    FeederBypassClock,
    Gating,
}

impl Category {
    pub const ALL: [Category; 9] = [
        Category::MultiplierShift,
        Category::PartialProductShift,
        Category::Adder,
        Category::CounterInternal,
        Category::CounterOutput,
        Category::MuxSelect,
        Category::MuxData,
        Category::FeederBypassClock,
        Category::Gating,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Category::MultiplierShift => "multiplier_shift",
            Category::PartialProductShift => "partial_product_shift",
            Category::Adder => "adder",
            Category::CounterInternal => "counter_internal",
            Category::CounterOutput => "counter_output",
            Category::MuxSelect => "mux_select",
            Category::MuxData => "mux_data",
            Category::FeederBypassClock => "feeder_bypass_clock",
            Category::Gating => "gating",
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

impl FromStr for Category {
    type Err = SimError;

    fn from_str(s: &str) -> Result<Self> {
        Category::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| SimError::InvalidConfig(format!("unknown category `{s}`")))
    }
}

/// Per-category transition and clock-event counts.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct ToggleLedger {
    counts: [u64; 9],
}

impl ToggleLedger {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, cat: Category) -> u64 {
        self.counts[cat.index()]
    }

    pub fn add(&mut self, cat: Category, amount: u64) {
        self.counts[cat.index()] += amount;
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Category, u64)> + '_ {
        Category::ALL.into_iter().map(|c| (c, self.get(c)))
    }

    pub fn is_zero(&self) -> bool {
        self.counts.iter().all(|&c| c == 0)
    }
}

impl Index<Category> for ToggleLedger {
    type Output = u64;

    fn index(&self, cat: Category) -> &u64 {
        &self.counts[cat.index()]
    }
}

impl IndexMut<Category> for ToggleLedger {
    fn index_mut(&mut self, cat: Category) -> &mut u64 {
        &mut self.counts[cat.index()]
    }
}

impl AddAssign<&ToggleLedger> for ToggleLedger {
    fn add_assign(&mut self, rhs: &ToggleLedger) {
        for (a, b) in self.counts.iter_mut().zip(rhs.counts) {
            *a += b;
        }
    }
}

impl std::iter::Sum for ToggleLedger {
    fn sum<I: Iterator<Item = ToggleLedger>>(iter: I) -> Self {
        iter.fold(ToggleLedger::new(), |mut acc, l| {
            acc += &l;
            acc
        })
    }
}

/// One row of a cycle trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleTrace {
    pub cycle: u32,
    /// Binary counter (conventional) or ring (low-power) value driving the select.
    pub counter: Word,
    pub selected_bit: bool,
    /// Operand presented to the adder this cycle: `A` or zero.
    pub addend: Word,
    /// Whether the multiplicand was added this cycle.
    pub adder_fired: bool,
    /// Adder transitions charged this cycle.
    pub adder_transitions: u32,
    /// Carry and sum of the partial product high part after this cycle.
    pub running_sum: Word,
    pub product_so_far: Word,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimResult {
    pub product: Word,
    pub ledger: ToggleLedger,
    pub cycles: u32,
    pub trace: Option<Vec<CycleTrace>>,
}

impl SimResult {
    /// Cycles in which the multiplicand was added; needs a trace.
    pub fn adder_firings(&self) -> Option<usize> {
        self.trace
            .as_ref()
            .map(|t| t.iter().filter(|r| r.adder_fired).count())
    }
}

fn check_operands(a: Word, b: Word, cfg: &ArchConfig) -> Result<()> {
    cfg.validate()?;
    for w in [a, b] {
        if w.width() != cfg.width {
            return Err(SimError::WidthMismatch {
                left: w.width(),
                right: cfg.width,
            });
        }
    }
    Ok(())
}

/// Conventional datapath with the ripple-carry adder.
pub fn run_conventional(a: Word, b: Word, cfg: &ArchConfig, trace: bool) -> Result<SimResult> {
    let mut adder = RippleCarryAdder::new(cfg.width)?;
    run_conventional_with(a, b, cfg, &mut adder, trace)
}

/// Low-power datapath with the ripple-carry adder.
pub fn run_lowpower(a: Word, b: Word, cfg: &ArchConfig, trace: bool) -> Result<SimResult> {
    let mut adder = RippleCarryAdder::new(cfg.width)?;
    run_lowpower_with(a, b, cfg, &mut adder, trace)
}

/// Runs whichever datapath `cfg.variant` names.
pub fn run(a: Word, b: Word, cfg: &ArchConfig, trace: bool) -> Result<SimResult> {
    match cfg.variant {
        Variant::Conventional => run_conventional(a, b, cfg, trace),
        Variant::LowPower => run_lowpower(a, b, cfg, trace),
    }
}

/// Runs `cfg.variant` with a caller-supplied adder.
pub fn run_with<A: AdderModel>(
    a: Word,
    b: Word,
    cfg: &ArchConfig,
    adder: &mut A,
    trace: bool,
) -> Result<SimResult> {
    match cfg.variant {
        Variant::Conventional => run_conventional_with(a, b, cfg, adder, trace),
        Variant::LowPower => run_lowpower_with(a, b, cfg, adder, trace),
    }
}
