use super::{check_operands, ArchConfig, Category, CycleTrace, SimResult, ToggleLedger};
use crate::bitcore::{AdderModel, Word};
use crate::counters::{hot_one_select, ring_lowpower_step, RingState};
use crate::error::Result;

/// Low-power shift-and-add multiplier.
///
/// `B` is never shifted: a block-gated ring counter drives a one-hot mux
/// that picks `B(i)` in cycle `i`. The `(n+1)`-bit high part (carry plus
/// sum) lives in feeder/bypass storage. On a one bit the adder computes
/// `H + A` and the feeder is clocked; on a zero bit the adder inputs stay
/// frozen and the bypass path forwards `(0, H)`. The pair's LSB is the next
/// product bit and `H` for the following cycle is the pair without that
/// bit, taken by wiring. The product bit is latched into its own cell of
/// the low-product register, one clocked flip-flop per cycle.
pub fn run_lowpower_with<A: AdderModel>(
    a: Word,
    b: Word,
    cfg: &ArchConfig,
    adder: &mut A,
    trace: bool,
) -> Result<SimResult> {
    check_operands(a, b, cfg)?;
    let n = cfg.width;
    let k = cfg.effective_width;
    let cost = cfg.ring_cost();
    let s = cost.ff_cost;

    let mut ledger = ToggleLedger::new();
    let mut rows = trace.then(Vec::new);

    let mut ring = RingState::new(n)?;
    let mut pair = Word::zero(n + 1)?;
    let mut low_bits = 0u64;
    let mut prev_bit = false;

    for cycle in 0..k {
        // Select with the current ring value, then advance it for the next
        // cycle; cycle i therefore reads B(i).
        let bit = hot_one_select(&ring, b)?;
        let step = ring_lowpower_step(&ring, &cost)?;
        ledger.add(
            Category::CounterInternal,
            cost.clock_transitions(step.clock_events),
        );
        ledger.add(Category::Gating, step.gating_transitions);
        ledger.add(Category::CounterOutput, u64::from(step.output_toggles));

        // one select line falls, one rises
        ledger.add(Category::MuxSelect, u64::from(step.output_toggles));
        if bit != prev_bit {
            ledger.add(Category::MuxData, 1);
        }
        prev_bit = bit;

        let high = Word::new(pair.value() >> 1, n)?;
        let (next_pair, adder_transitions) = if bit {
            let sum = adder.add(high, a, false)?;
            ledger.add(Category::FeederBypassClock, u64::from(n + 1) * s);
            (
                pair.with_value((u64::from(sum.cout) << n) | sum.sum.value()),
                sum.transitions,
            )
        } else {
            ledger.add(Category::FeederBypassClock, cost.gate_cost);
            (pair.with_value(high.value()), 0)
        };
        ledger.add(Category::Adder, u64::from(adder_transitions));
        ledger.add(
            Category::PartialProductShift,
            s + u64::from(pair.hamming(next_pair)?),
        );
        pair = next_pair;
        low_bits |= (pair.value() & 1) << cycle;

        if let Some(rows) = rows.as_mut() {
            let so_far = ((pair.value() >> 1) << (cycle + 1)) | low_bits;
            rows.push(CycleTrace {
                cycle,
                counter: ring.word(),
                selected_bit: bit,
                addend: if bit { a } else { Word::zero(n)? },
                adder_fired: bit,
                adder_transitions,
                running_sum: pair,
                product_so_far: Word::new(so_far, 2 * n)?,
            });
        }
        ring = step.next;
    }

    let product = Word::new(((pair.value() >> 1) << k) | low_bits, 2 * n)?;
    Ok(SimResult {
        product,
        ledger,
        cycles: k,
        trace: rows,
    })
}
