use rayon::prelude::*;

use super::operands::{gen_operands, DistKind, OperandDistribution};
use crate::bitcore::Word;
use crate::counters::RingCostModel;
use crate::datapath::{run, ArchConfig, ToggleLedger, Variant};
use crate::error::{Result, SimError};
use crate::power::{
    area_proxy, average_power, estimate_energy, reduction_percent, AreaInventory, PowerModel,
};

/// Widest operand for random sweeps.
pub const SWEEP_LIMIT: u32 = 16;
/// Widest operand for exhaustive sweeps.
pub const EXHAUSTIVE_SWEEP_LIMIT: u32 = 8;

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub widths: Vec<u32>,
    pub dist: OperandDistribution,
    pub trials: u64,
    pub model: PowerModel,
    pub cost: RingCostModel,
}

/// Aggregate of one architecture at one width.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub width: u32,
    pub arch: Variant,
    /// Operand pairs simulated.
    pub trials: u64,
    pub ledger: ToggleLedger,
    pub cycles: u64,
    pub adder_firings: u64,
    pub energy: f64,
    pub avg_power: f64,
    pub area: AreaInventory,
    /// Energy reduction relative to the conventional row of the same width.
    pub reduction_pct: f64,
}

#[derive(Default)]
struct Totals {
    ledger: ToggleLedger,
    cycles: u64,
    adder_firings: u64,
}

impl Totals {
    fn merge(mut self, other: Totals) -> Totals {
        self.ledger += &other.ledger;
        self.cycles += other.cycles;
        self.adder_firings += other.adder_firings;
        self
    }
}

fn simulate(cfg: &ArchConfig, pairs: &[(u64, u64)]) -> Result<Totals> {
    pairs
        .par_iter()
        .map(|&(a, b)| {
            let r = run(
                Word::new(a, cfg.width)?,
                Word::new(b, cfg.width)?,
                cfg,
                false,
            )?;
            Ok(Totals {
                ledger: r.ledger,
                cycles: u64::from(r.cycles),
                adder_firings: u64::from((b & ((1u64 << cfg.effective_width) - 1)).count_ones()),
            })
        })
        .try_reduce(Totals::default, |x, y| Ok(x.merge(y)))
}

/// Runs both architectures over a shared operand stream at every width and
/// returns one row per (width, architecture), conventional first.
pub fn sweep(cfg: &SweepConfig) -> Result<Vec<ReportRow>> {
    cfg.model.validate()?;
    let limit = match cfg.dist.kind {
        DistKind::Exhaustive => EXHAUSTIVE_SWEEP_LIMIT,
        _ => SWEEP_LIMIT,
    };
    if cfg.widths.is_empty() {
        return Err(SimError::InvalidConfig("no widths given".into()));
    }

    let mut rows = Vec::with_capacity(cfg.widths.len() * 2);
    for &width in &cfg.widths {
        if width == 0 || width > limit {
            return Err(SimError::InvalidWidth { width, max: limit });
        }
        let pairs = gen_operands(&cfg.dist, width, cfg.trials)?;
        let mut baseline = None;
        for variant in Variant::ALL {
            let arch = ArchConfig::new(variant, width)?.with_cost(cfg.cost)?;
            let totals = simulate(&arch, &pairs)?;
            let energy = estimate_energy(&totals.ledger, &cfg.model);
            let base = *baseline.get_or_insert(energy);
            let reduction_pct = if base == 0.0 && energy == 0.0 {
                0.0
            } else {
                reduction_percent(base, energy)?
            };
            rows.push(ReportRow {
                width,
                arch: variant,
                trials: pairs.len() as u64,
                ledger: totals.ledger,
                cycles: totals.cycles,
                adder_firings: totals.adder_firings,
                energy,
                avg_power: average_power(energy, totals.cycles, &cfg.model),
                area: area_proxy(&arch),
                reduction_pct,
            });
        }
    }
    Ok(rows)
}
