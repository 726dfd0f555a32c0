use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::sweep::ReportRow;
use crate::datapath::Category;
use crate::error::{Result, SimError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
}

impl FromStr for ReportFormat {
    type Err = SimError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            other => Err(SimError::InvalidConfig(format!(
                "unknown report format `{other}`"
            ))),
        }
    }
}

/// Stimulus description recorded alongside the rows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportMeta {
    pub generator: String,
    pub seed: u64,
    pub dist: String,
    pub trials: u64,
    pub block_size: u32,
    pub ff_cost: u64,
    pub gate_cost: u64,
}

/// One flat report line; field order is the column order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub width: u32,
    pub arch: String,
    pub trials: u64,
    pub multiplier_shift: u64,
    pub partial_product_shift: u64,
    pub adder: u64,
    pub counter_internal: u64,
    pub counter_output: u64,
    pub mux_select: u64,
    pub mux_data: u64,
    pub feeder_bypass_clock: u64,
    pub gating: u64,
    pub energy: f64,
    pub avg_power: f64,
    pub flip_flops: u64,
    pub full_adders: u64,
    pub reduction_pct: f64,
}

pub const COLUMNS: [&str; 17] = [
    "width",
    "arch",
    "trials",
    "multiplier_shift",
    "partial_product_shift",
    "adder",
    "counter_internal",
    "counter_output",
    "mux_select",
    "mux_data",
    "feeder_bypass_clock",
    "gating",
    "energy",
    "avg_power",
    "flip_flops",
    "full_adders",
    "reduction_pct",
];

impl From<&ReportRow> for ReportRecord {
    fn from(r: &ReportRow) -> Self {
        let l = &r.ledger;
        Self {
            width: r.width,
            arch: r.arch.name().to_string(),
            trials: r.trials,
            multiplier_shift: l[Category::MultiplierShift],
            partial_product_shift: l[Category::PartialProductShift],
            adder: l[Category::Adder],
            counter_internal: l[Category::CounterInternal],
            counter_output: l[Category::CounterOutput],
            mux_select: l[Category::MuxSelect],
            mux_data: l[Category::MuxData],
            feeder_bypass_clock: l[Category::FeederBypassClock],
            gating: l[Category::Gating],
            energy: r.energy,
            avg_power: r.avg_power,
            flip_flops: r.area.flip_flops,
            full_adders: r.area.full_adders,
            reduction_pct: r.reduction_pct,
        }
    }
}

#[derive(Serialize)]
struct JsonReport<'a> {
    #[serde(skip_serializing_if = "Option::is_none")]
    meta: Option<&'a ReportMeta>,
    rows: Vec<ReportRecord>,
}

/// Writes the report to any sink. CSV gets the metadata as `#` comment
/// lines ahead of the header; JSON is `{"meta": .., "rows": [..]}`.
pub fn write_report<W: Write>(
    rows: &[ReportRow],
    format: ReportFormat,
    meta: Option<&ReportMeta>,
    mut out: W,
) -> Result<()> {
    if rows.is_empty() {
        return Err(SimError::InvalidConfig("report has no rows".into()));
    }
    let ser = |e: &dyn std::fmt::Display| SimError::Serialize(e.to_string());
    let records: Vec<ReportRecord> = rows.iter().map(ReportRecord::from).collect();
    match format {
        ReportFormat::Csv => {
            if let Some(m) = meta {
                writeln!(
                    out,
                    "# generator={} seed={} dist={} trials={} block_size={} ff_cost={} gate_cost={}",
                    m.generator, m.seed, m.dist, m.trials, m.block_size, m.ff_cost, m.gate_cost
                )
                .map_err(|e| ser(&e))?;
            }
            let mut w = csv::Writer::from_writer(&mut out);
            for r in &records {
                w.serialize(r).map_err(|e| ser(&e))?;
            }
            w.flush().map_err(|e| ser(&e))?;
        }
        ReportFormat::Json => {
            let doc = JsonReport {
                meta,
                rows: records,
            };
            serde_json::to_writer_pretty(&mut out, &doc).map_err(|e| ser(&e))?;
            writeln!(out).map_err(|e| ser(&e))?;
        }
    }
    Ok(())
}

/// Writes the report to `dest`.
pub fn emit_report(
    rows: &[ReportRow],
    format: ReportFormat,
    meta: Option<&ReportMeta>,
    dest: &Path,
) -> Result<()> {
    let io_err = |source| SimError::Io {
        path: dest.to_path_buf(),
        source,
    };
    let file = File::create(dest).map_err(io_err)?;
    let mut out = BufWriter::new(file);
    write_report(rows, format, meta, &mut out)?;
    out.flush().map_err(io_err)
}
