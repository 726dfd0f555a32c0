use super::{check_operands, ArchConfig, Category, CycleTrace, SimResult, ToggleLedger};
use crate::bitcore::{AdderModel, Word};
use crate::counters::BinaryCounter;
use crate::error::Result;

/// Conventional shift-and-add multiplier.
///
/// Each cycle the LSB of `B` selects `A` or zero through a 2:1 mux, the
/// adder sums that with the high half of a `2n+1`-bit partial-product
/// register (carry, high, low), the register shifts right one place, `B`
/// shifts right one place, and a binary counter counts the cycle.
///
/// All three registers are clocked every cycle. Each flip-flop pays the
/// configured `s` internal transitions per edge in addition to its output
/// toggles, the same charge the low-power model pays for its clocked cells.
pub fn run_conventional_with<A: AdderModel>(
    a: Word,
    b: Word,
    cfg: &ArchConfig,
    adder: &mut A,
    trace: bool,
) -> Result<SimResult> {
    check_operands(a, b, cfg)?;
    let n = cfg.width;
    let pp_width = 2 * n + 1;
    let s = cfg.cost.ff_cost;

    let mut ledger = ToggleLedger::new();
    let mut rows = trace.then(Vec::new);

    let mut multiplier = b;
    // The register is 2n+1 bits wide but its carry cell is always zero
    // after the shift, so the stored value fits 2n bits.
    let mut partial = Word::zero(2 * n)?;
    let mut counter = BinaryCounter::new(u64::from(n))?;
    let multiplier_clock = u64::from(n) * s;
    let partial_clock = u64::from(pp_width) * s;
    let counter_clock = u64::from(counter.state().width()) * s;
    let mut prev_select = false;
    let mut prev_mux = Word::zero(n)?;

    for cycle in 0..cfg.effective_width {
        let select = multiplier.bit(0)?;
        if select != prev_select {
            ledger.add(Category::MuxSelect, 1);
        }
        prev_select = select;

        let mux_out = if select { a } else { Word::zero(n)? };
        ledger.add(Category::MuxData, u64::from(prev_mux.hamming(mux_out)?));
        prev_mux = mux_out;

        let high = Word::new(partial.value() >> n, n)?;
        let sum = adder.add(high, mux_out, false)?;
        ledger.add(Category::Adder, u64::from(sum.transitions));

        let low = u128::from(partial.value() & ((1u64 << n) - 1));
        let loaded = (u128::from(sum.cout) << (2 * n)) | (u128::from(sum.sum.value()) << n) | low;
        let shifted = partial.with_value((loaded >> 1) as u64);
        ledger.add(
            Category::PartialProductShift,
            partial_clock + u64::from(partial.hamming(shifted)?),
        );
        partial = shifted;

        let next_b = multiplier.shift_right(1);
        ledger.add(
            Category::MultiplierShift,
            multiplier_clock + u64::from(multiplier.hamming(next_b)?),
        );
        multiplier = next_b;

        let counter_before = counter.state();
        let (next_counter, toggles) = counter.step();
        ledger.add(
            Category::CounterInternal,
            counter_clock + u64::from(toggles),
        );
        counter = next_counter;

        if let Some(rows) = rows.as_mut() {
            rows.push(CycleTrace {
                cycle,
                counter: counter_before,
                selected_bit: select,
                addend: mux_out,
                adder_fired: select,
                adder_transitions: sum.transitions,
                running_sum: Word::new((u64::from(sum.cout) << n) | sum.sum.value(), n + 1)?,
                product_so_far: partial,
            });
        }
    }

    // After k shifts the register holds A * B[k-1:0] scaled by 2^(n-k).
    let product = partial.shift_right(n - cfg.effective_width);
    Ok(SimResult {
        product,
        ledger,
        cycles: cfg.effective_width,
        trace: rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datapath::{run_conventional, Variant};

    fn w(v: u64, n: u32) -> Word {
        Word::new(v, n).unwrap()
    }

    fn cfg(n: u32) -> ArchConfig {
        ArchConfig::new(Variant::Conventional, n).unwrap()
    }

    #[test]
    fn small_worked_example() {
        let r = run_conventional(w(0b011, 3), w(0b010, 3), &cfg(3), true).unwrap();
        assert_eq!(r.product.value(), 0b00110);
        assert_eq!(r.product.width(), 6);
        assert_eq!(r.cycles, 3);
        let bits: Vec<_> = r.trace.unwrap().iter().map(|t| t.selected_bit).collect();
        assert_eq!(bits, [false, true, false]);
    }

    #[test]
    fn full_byte_operands() {
        let r = run_conventional(w(255, 8), w(255, 8), &cfg(8), false).unwrap();
        assert_eq!(r.product.value(), 65025);
        assert!(r.trace.is_none());
    }

    #[test]
    fn zero_multiplicand_settles_adder() {
        for b in [0u64, 1, 0b1010, 0xff] {
            let r = run_conventional(w(0, 8), w(b, 8), &cfg(8), true).unwrap();
            assert_eq!(r.product.value(), 0);
            let trace = r.trace.unwrap();
            assert!(trace[1..].iter().all(|t| t.adder_transitions == 0));
            assert_eq!(r.ledger.get(Category::Adder), 0);
        }
    }

    #[test]
    fn multiplier_shift_activity() {
        // 4 cycles x 4 flip-flops x s=2 of clocking, plus shifted-out ones
        let r = run_conventional(w(5, 4), w(0b0001, 4), &cfg(4), false).unwrap();
        assert_eq!(r.ledger.get(Category::MultiplierShift), 32 + 1);
        // 0010 -> 0001 flips two bits, 0001 -> 0000 one more
        let r = run_conventional(w(5, 4), w(0b0010, 4), &cfg(4), false).unwrap();
        assert_eq!(r.ledger.get(Category::MultiplierShift), 32 + 3);
        let r = run_conventional(w(5, 4), w(0, 4), &cfg(4), false).unwrap();
        assert_eq!(r.ledger.get(Category::MultiplierShift), 32);
    }

    #[test]
    fn partial_product_register_charges() {
        // A=0: the register never changes, only its 9 cells are clocked
        let c = cfg(4)
            .with_cost(crate::counters::RingCostModel {
                ff_cost: 3,
                ..Default::default()
            })
            .unwrap();
        let r = run_conventional(w(0, 4), w(0b1011, 4), &c, false).unwrap();
        assert_eq!(r.ledger.get(Category::PartialProductShift), 4 * 9 * 3);
    }

    #[test]
    fn truncated_width_uses_low_bits() {
        let c = cfg(8).with_effective_width(3).unwrap();
        let r = run_conventional(w(200, 8), w(0b1111_0101, 8), &c, false).unwrap();
        assert_eq!(r.cycles, 3);
        assert_eq!(r.product.value(), 200 * 0b101);
    }

    #[test]
    fn binary_counter_toggles_over_a_run() {
        // modulus 8: 0->1->...->7->0 is 14 toggles; 3 bits clocked 8 times at s=2
        let r = run_conventional(w(1, 8), w(1, 8), &cfg(8), false).unwrap();
        assert_eq!(r.ledger.get(Category::CounterInternal), 14 + 48);
        assert_eq!(r.ledger.get(Category::FeederBypassClock), 0);
        assert_eq!(r.ledger.get(Category::Gating), 0);
    }
}
