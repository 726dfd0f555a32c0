use std::fmt::Write;

use super::SimResult;

/// Renders a cycle table: one row per cycle with the counter value, the
/// selected multiplier bit, the addend, and the partial product, followed
/// by the final product.
pub fn render_trace(result: &SimResult) -> String {
    let mut out = String::new();
    if let Some(rows) = &result.trace {
        let _ = writeln!(
            out,
            "{:>5}  {:<counter$}  {:<8}  {:<addend$}  {:<6}  {:<pair$}  product",
            "cycle",
            "counter",
            "select",
            "addend",
            "action",
            "pair",
            counter = col_width(rows.first().map(|r| r.counter.width()), 7),
            addend = col_width(rows.first().map(|r| r.addend.width()), 6),
            pair = col_width(rows.first().map(|r| r.running_sum.width()), 4),
        );
        for r in rows {
            let select = format!("B({})={}", r.cycle, u8::from(r.selected_bit));
            let action = if r.adder_fired { "add" } else { "bypass" };
            let _ = writeln!(
                out,
                "{:>5}  {:<counter$}  {:<8}  {:<addend$}  {:<6}  {:<pair$}  {}",
                r.cycle,
                r.counter.to_string(),
                select,
                r.addend.to_string(),
                action,
                r.running_sum.to_string(),
                r.product_so_far,
                counter = col_width(Some(r.counter.width()), 7),
                addend = col_width(Some(r.addend.width()), 6),
                pair = col_width(Some(r.running_sum.width()), 4),
            );
        }
    }
    let _ = writeln!(
        out,
        "product {} ({})",
        result.product,
        result.product.value()
    );
    out
}

fn col_width(bits: Option<u32>, header: usize) -> usize {
    bits.map_or(header, |b| (b as usize).max(header))
}
