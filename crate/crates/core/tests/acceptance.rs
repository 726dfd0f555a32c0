//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails. Runs as part of `cargo test`.

use std::process::Command;
use std::time::{Duration, Instant};

use shiftmul::bitcore::{get_bit, Word};
use shiftmul::counters::{ring_conventional_step, ring_lowpower_step, RingCostModel, RingState};
use shiftmul::datapath::{run, ArchConfig, Category, SimResult, Variant};
use shiftmul::harness::{
    exhaustive_verify, gen_operands, sweep, DistKind, OperandDistribution, SweepConfig,
};
use shiftmul::power::PowerModel;

const BIN: &str = env!("CARGO_BIN_EXE_shiftmul");
const SEED: u64 = 0x5eed;
const TRIALS: u64 = 100_000;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// 1. Exhaustive n=8 correctness on both architectures in under 60 s.
fn exhaustive_correctness() -> Outcome {
    let start = Instant::now();
    let v = exhaustive_verify(8).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(v.pairs == 65_536, || format!("checked {} pairs", v.pairs))?;
    ensure(v.ok(), || {
        format!(
            "{} mismatches, first {:?}",
            v.mismatches.len(),
            v.mismatches.first()
        )
    })?;
    ensure(elapsed < Duration::from_secs(60), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "65536/65536 pairs, 0 mismatches, {:.2} s",
        elapsed.as_secs_f64()
    ))
}

/// 2. The 3-bit worked example through the CLI.
fn golden_trace() -> Outcome {
    let out = Command::new(BIN)
        .args([
            "run", "--arch", "lowpower", "--width", "3", "--a", "3", "--b", "2", "--trace",
        ])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), || {
        format!("exit {:?}", out.status.code())
    })?;
    let text = String::from_utf8_lossy(&out.stdout);
    let expected = "\
cycle  counter  select    addend  action  pair  product
    0  001      B(0)=0    000     bypass  0000  000000
    1  010      B(1)=1    011     add     0011  000110
    2  100      B(2)=0    000     bypass  0001  000110
product 000110 (6)
";
    ensure(text.starts_with(expected), || {
        format!("unexpected trace:\n{text}")
    })?;
    let adds = text.lines().filter(|l| l.contains(" add ")).count();
    ensure(adds == 1, || format!("{adds} adder firings"))?;
    Ok("product 6, bits (0,1,0), one adder firing".into())
}

fn check_lowpower_run(a: u64, b: u64, n: u32, r: &SimResult) -> Result<(), String> {
    let ctx = || format!("n={n} a={a} b={b}");
    ensure(r.ledger.get(Category::MultiplierShift) == 0, || {
        format!("{}: multiplier shifted", ctx())
    })?;
    let trace = r.trace.as_ref().ok_or("no trace")?;
    let mut adder_sum = 0u64;
    for row in trace {
        if !row.adder_fired {
            ensure(row.adder_transitions == 0, || {
                format!("{}: bypass cycle {} switched adder", ctx(), row.cycle)
            })?;
        }
        let expected = get_bit(Word::new(b, n).unwrap(), row.cycle).unwrap();
        ensure(row.selected_bit == expected, || {
            format!("{}: cycle {} selected wrong bit", ctx(), row.cycle)
        })?;
        adder_sum += u64::from(row.adder_transitions);
    }
    ensure(adder_sum == r.ledger.get(Category::Adder), || {
        format!("{}: adder ledger mismatch", ctx())
    })?;
    let fired = r.adder_firings().unwrap_or(0) as u32;
    ensure(fired == b.count_ones(), || {
        format!("{}: {fired} firings, popcount {}", ctx(), b.count_ones())
    })?;
    ensure(r.product.value() == a * b, || {
        format!("{}: product {}", ctx(), r.product.value())
    })
}

/// 3. Low-power architectural invariants, exhaustive for n<=6 and random at 8 and 16.
fn architectural_invariants() -> Outcome {
    let mut runs = 0u64;
    for n in 1..=6u32 {
        let cfg = ArchConfig::new(Variant::LowPower, n).unwrap();
        for a in 0..(1u64 << n) {
            for b in 0..(1u64 << n) {
                let r = run(
                    Word::new(a, n).unwrap(),
                    Word::new(b, n).unwrap(),
                    &cfg,
                    true,
                )
                .map_err(|e| e.to_string())?;
                check_lowpower_run(a, b, n, &r)?;
                runs += 1;
            }
        }
    }
    for n in [8u32, 16] {
        let cfg = ArchConfig::new(Variant::LowPower, n).unwrap();
        let pairs = gen_operands(
            &OperandDistribution::new(DistKind::Uniform, SEED),
            n,
            TRIALS,
        )
        .map_err(|e| e.to_string())?;
        for (a, b) in pairs {
            let r = run(
                Word::new(a, n).unwrap(),
                Word::new(b, n).unwrap(),
                &cfg,
                true,
            )
            .map_err(|e| e.to_string())?;
            check_lowpower_run(a, b, n, &r)?;
            runs += 1;
        }
    }
    Ok(format!("{runs} low-power runs checked"))
}

/// 4. Ring-counter accounting for n=8, b=4, s=2, g=1.
fn ring_accounting() -> Outcome {
    let cost = RingCostModel {
        ff_cost: 2,
        gate_cost: 1,
        block_size: 4,
    };
    let n = 8;
    let start = RingState::new(n).unwrap();
    let step = ring_conventional_step(&start, &cost).unwrap();
    let per_step = cost.clock_transitions(step.clock_events);
    ensure(per_step == 16, || {
        format!("conventional per-step cost {per_step}")
    })?;
    let unnecessary = cost.unnecessary_transitions(n);
    ensure(unnecessary == 12, || {
        format!("unnecessary share {unnecessary}")
    })?;

    let (mut lp, mut conv) = (0u64, 0u64);
    let mut r = start;
    for _ in 0..n {
        lp += cost.clock_transitions(ring_lowpower_step(&r, &cost).unwrap().clock_events);
        let s = ring_conventional_step(&r, &cost).unwrap();
        conv += cost.clock_transitions(s.clock_events);
        r = s.next;
    }
    ensure(r == start, || "ring did not return to reset".into())?;
    ensure(lp == 80 && conv == 128, || {
        format!("rotation: low-power {lp}, conventional {conv}")
    })?;
    Ok("per step 16 (12 unnecessary); rotation 80 vs 128".into())
}

fn sweep_reductions(kind: DistKind, widths: Vec<u32>) -> Result<Vec<(u32, f64)>, String> {
    let rows = sweep(&SweepConfig {
        widths,
        dist: OperandDistribution::new(kind, SEED),
        trials: TRIALS,
        model: PowerModel::default(),
        cost: RingCostModel::default(),
    })
    .map_err(|e| e.to_string())?;
    Ok(rows
        .iter()
        .filter(|r| r.arch == Variant::LowPower)
        .map(|r| (r.width, r.reduction_pct))
        .collect())
}

/// 5. Positive reduction at 4, 8, 16 that does not decrease with width.
fn power_trend() -> Outcome {
    let red = sweep_reductions(DistKind::Uniform, vec![4, 8, 16])?;
    let shown = red
        .iter()
        .map(|(w, p)| {
            let published = match w {
                4 => " (published 20.51%)",
                8 => " (published 35.25%)",
                _ => "",
            };
            format!("n={w}: {p:.2}%{published}")
        })
        .collect::<Vec<_>>()
        .join(", ");
    ensure(red.iter().all(|(_, p)| *p > 0.0), || {
        format!("non-positive reduction: {shown}")
    })?;
    ensure(red.windows(2).all(|w| w[1].1 >= w[0].1), || {
        format!("decreasing: {shown}")
    })?;
    Ok(shown)
}

/// 6. Sparse multipliers save more than dense ones at n=8.
fn sensitivity() -> Outcome {
    let sparse = sweep_reductions(DistKind::Sparse, vec![8])?[0].1;
    let dense = sweep_reductions(DistKind::Dense, vec![8])?[0].1;
    ensure(sparse > dense, || {
        format!("sparse {sparse:.2}% <= dense {dense:.2}%")
    })?;
    Ok(format!("sparse {sparse:.2}% > dense {dense:.2}%"))
}

/// 7. Byte-identical reports from two identical sweep invocations.
fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut outputs = Vec::new();
    for (i, format) in [(0, "csv"), (1, "csv"), (2, "json"), (3, "json")] {
        let path = dir.path().join(format!("report{i}.{format}"));
        let status = Command::new(BIN)
            .args([
                "sweep", "--widths", "4,8,16", "--dist", "uniform", "--trials", "20000",
            ])
            .args(["--seed", "7", "--format", format, "--out"])
            .arg(&path)
            .output()
            .map_err(|e| e.to_string())?
            .status;
        ensure(status.success(), || {
            format!("sweep exited {:?}", status.code())
        })?;
        outputs.push(std::fs::read(&path).map_err(|e| e.to_string())?);
    }
    ensure(outputs[0] == outputs[1], || "csv reports differ".into())?;
    ensure(outputs[2] == outputs[3], || "json reports differ".into())?;
    Ok(format!(
        "csv {} bytes, json {} bytes, identical",
        outputs[0].len(),
        outputs[2].len()
    ))
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("1 exhaustive correctness (n=8)", exhaustive_correctness),
        ("2 worked-example trace", golden_trace),
        ("3 architectural invariants", architectural_invariants),
        ("4 ring-counter accounting", ring_accounting),
        ("5 power reduction trend", power_trend),
        ("6 sparse vs dense sensitivity", sensitivity),
        ("7 report determinism", determinism),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS  criterion {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  criterion {name}: {why}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
