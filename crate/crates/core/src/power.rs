//! Dynamic switching energy, structural area inventories, and comparisons.
//!
//! Energy follows `P = a * C * Vdd^2 * f` with the activity factor `a`
//! replaced by measured transition counts: each ledger category is charged
//! its own capacitance weight, so
//! `energy = sum(count_c * C_c) * Vdd^2` and
//! `avg_power = energy * f_clk / cycles`.
//!
//! A model file is plain `key = value` lines. Keys are ledger category
//! names, `vdd`, or `f_clk`; `#` starts a comment. Missing keys keep their
//! defaults (weight 1.0, `vdd = 1.0`, `f_clk = 1.0`).

use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;

use crate::counters::binary_counter_width;
use crate::datapath::{ArchConfig, Category, ToggleLedger, Variant};
use crate::error::{Result, SimError};

#[derive(Debug, Clone, PartialEq)]
pub struct PowerModel {
    weights: [f64; 9],
    pub vdd: f64,
    pub f_clk: f64,
}

impl Default for PowerModel {
    fn default() -> Self {
        Self {
            weights: [1.0; 9],
            vdd: 1.0,
            f_clk: 1.0,
        }
    }
}

impl PowerModel {
    pub fn new(vdd: f64, f_clk: f64) -> Result<Self> {
        let m = Self {
            vdd,
            f_clk,
            ..Self::default()
        };
        m.validate()?;
        Ok(m)
    }

    pub fn weight(&self, cat: Category) -> f64 {
        self.weights[cat as usize]
    }

    pub fn set_weight(&mut self, cat: Category, weight: f64) -> Result<()> {
        if !(weight.is_finite() && weight >= 0.0) {
            return Err(SimError::InvalidConfig(format!(
                "weight for {} must be finite and >= 0, got {weight}",
                cat.name()
            )));
        }
        self.weights[cat as usize] = weight;
        Ok(())
    }

    pub fn with_weight(mut self, cat: Category, weight: f64) -> Result<Self> {
        self.set_weight(cat, weight)?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.vdd.is_finite() && self.vdd > 0.0) {
            return Err(SimError::InvalidConfig(format!(
                "vdd must be > 0, got {}",
                self.vdd
            )));
        }
        if !(self.f_clk.is_finite() && self.f_clk > 0.0) {
            return Err(SimError::InvalidConfig(format!(
                "f_clk must be > 0, got {}",
                self.f_clk
            )));
        }
        if let Some(w) = self.weights.iter().find(|w| !(w.is_finite() && **w >= 0.0)) {
            return Err(SimError::InvalidConfig(format!(
                "negative or non-finite weight {w}"
            )));
        }
        Ok(())
    }

    /// Parses the `key = value` format described in the module docs.
    pub fn parse(text: &str, origin: &str) -> Result<Self> {
        let mut model = Self::default();
        for (idx, raw) in text.lines().enumerate() {
            let err = |msg: String| SimError::ModelParse {
                path: origin.to_string(),
                line: idx + 1,
                msg,
            };
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err(format!("expected `key = value`, got `{line}`")))?;
            let key = key.trim();
            let value: f64 = value
                .trim()
                .parse()
                .map_err(|_| err(format!("`{}` is not a number", value.trim())))?;
            match key {
                "vdd" => model.vdd = value,
                "f_clk" => model.f_clk = value,
                other => {
                    let cat: Category = other
                        .parse()
                        .map_err(|_| err(format!("unknown key `{other}`")))?;
                    model
                        .set_weight(cat, value)
                        .map_err(|e| err(e.to_string()))?;
                }
            }
        }
        model.validate().map_err(|e| SimError::ModelParse {
            path: origin.to_string(),
            line: 0,
            msg: e.to_string(),
        })?;
        Ok(model)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| SimError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text, &path.display().to_string())
    }
}

/// Energy of a run in capacitance-volt² units.
pub fn estimate_energy(ledger: &ToggleLedger, model: &PowerModel) -> f64 {
    let switched: f64 = ledger
        .iter()
        .map(|(cat, count)| count as f64 * model.weight(cat))
        .sum();
    switched * model.vdd * model.vdd
}

/// Energy spread over `cycles` clock periods at `f_clk`.
pub fn average_power(energy: f64, cycles: u64, model: &PowerModel) -> f64 {
    if cycles == 0 {
        0.0
    } else {
        energy * model.f_clk / cycles as f64
    }
}

/// Structural inventory standing in for silicon area.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AreaInventory {
    pub flip_flops: u64,
    pub full_adders: u64,
    pub mux_inputs: u64,
    pub gates: u64,
}

impl AreaInventory {
    pub fn total(&self) -> u64 {
        self.flip_flops + self.full_adders + self.mux_inputs + self.gates
    }
}

/// Cell counts for a configuration; independent of operand values.
///
/// Conventional: `B`, the `2n+1`-bit partial product and the binary
/// counter; one terminal-count gate. Low-power: `B`, the ring, the `n+1`
/// feeder/bypass bits, `n` product bits, and one gating latch per ring
/// block; gates are the per-block clock gates plus the feeder and bypass
/// clock enables.
pub fn area_proxy(cfg: &ArchConfig) -> AreaInventory {
    let n = u64::from(cfg.width);
    match cfg.variant {
        Variant::Conventional => AreaInventory {
            flip_flops: n + (2 * n + 1) + u64::from(binary_counter_width(n)),
            full_adders: n,
            mux_inputs: 2 * n,
            gates: 1,
        },
        Variant::LowPower => {
            let blocks = u64::from(cfg.ring_cost().block_count(cfg.width));
            AreaInventory {
                flip_flops: n + n + (n + 1) + n + blocks,
                full_adders: n,
                mux_inputs: n,
                gates: blocks + 2,
            }
        }
    }
}

/// `100 * (base - new) / base`.
pub fn reduction_percent(base: f64, new: f64) -> Result<f64> {
    if base == 0.0 {
        return Err(SimError::ZeroBaseline);
    }
    Ok(100.0 * (base - new) / base)
}

/// Ledger, energy and area of one architecture under a shared model.
#[derive(Debug, Clone, PartialEq)]
pub struct Measured {
    pub ledger: ToggleLedger,
    pub energy: f64,
    pub area: AreaInventory,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Comparison {
    pub energy_reduction_percent: f64,
    /// Over the total cell count of the inventories.
    pub area_reduction_percent: f64,
    /// `new - base` per ledger category.
    pub category_deltas: BTreeMap<&'static str, i128>,
}

pub fn compare(base: &Measured, new: &Measured) -> Result<Comparison> {
    let energy_reduction_percent = reduction_percent(base.energy, new.energy)?;
    let area_reduction_percent =
        reduction_percent(base.area.total() as f64, new.area.total() as f64)?;
    let category_deltas = Category::ALL
        .into_iter()
        .map(|c| {
            (
                c.name(),
                i128::from(new.ledger.get(c)) - i128::from(base.ledger.get(c)),
            )
        })
        .collect();
    Ok(Comparison {
        energy_reduction_percent,
        area_reduction_percent,
        category_deltas,
    })
}
