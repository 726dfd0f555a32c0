use rayon::prelude::*;

use crate::bitcore::{AdderModel, RippleCarryAdder, Word};
use crate::datapath::{run_with, ArchConfig, Variant};
use crate::error::{Result, SimError};

/// Widest operand accepted by [`exhaustive_verify`].
pub const VERIFY_LIMIT: u32 = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub variant: Variant,
    pub a: u64,
    pub b: u64,
    pub expected: u64,
    pub got: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub width: u32,
    /// Operand pairs checked (each on both architectures).
    pub pairs: u64,
    /// Pairs where both architectures matched the oracle.
    pub passed: u64,
    pub mismatches: Vec<Mismatch>,
}

impl Verdict {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty() && self.passed == self.pairs
    }
}

/// Runs both architectures on every operand pair of `width` bits and checks
/// each product against native multiplication.
pub fn exhaustive_verify(width: u32) -> Result<Verdict> {
    exhaustive_verify_with(width, RippleCarryAdder::new)
}

/// [`exhaustive_verify`] with a custom adder, built fresh for every run.
pub fn exhaustive_verify_with<A, F>(width: u32, make_adder: F) -> Result<Verdict>
where
    A: AdderModel,
    F: Fn(u32) -> Result<A> + Sync,
{
    if width == 0 || width > VERIFY_LIMIT {
        return Err(SimError::InvalidWidth {
            width,
            max: VERIFY_LIMIT,
        });
    }
    let configs = [
        ArchConfig::new(Variant::Conventional, width)?,
        ArchConfig::new(Variant::LowPower, width)?,
    ];
    let side = 1u64 << width;

    let per_pair: Vec<Vec<Mismatch>> = (0..side * side)
        .into_par_iter()
        .map(|idx| {
            let (a, b) = (idx / side, idx % side);
            let wa = Word::new(a, width)?;
            let wb = Word::new(b, width)?;
            let mut bad = Vec::new();
            for cfg in &configs {
                let mut adder = make_adder(width)?;
                let got = run_with(wa, wb, cfg, &mut adder, false)?.product.value();
                if got != a * b {
                    bad.push(Mismatch {
                        variant: cfg.variant,
                        a,
                        b,
                        expected: a * b,
                        got,
                    });
                }
            }
            Ok(bad)
        })
        .collect::<Result<_>>()?;

    let passed = per_pair.iter().filter(|m| m.is_empty()).count() as u64;
    Ok(Verdict {
        width,
        pairs: side * side,
        passed,
        mismatches: per_pair.into_iter().flatten().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitcore::AddOutcome;

    /// Ripple-carry adder whose carry chain is stuck at zero.
    struct StuckCarryAdder;

    impl AdderModel for StuckCarryAdder {
        fn add(&mut self, x: Word, y: Word, _cin: bool) -> Result<AddOutcome> {
            Ok(AddOutcome {
                sum: Word::new(x.value() ^ y.value(), x.width())?,
                cout: false,
                transitions: 0,
            })
        }
    }

    #[test]
    fn three_bits_all_pass() {
        let v = exhaustive_verify(3).unwrap();
        assert_eq!((v.pairs, v.passed), (64, 64));
        assert!(v.ok());
    }

    #[test]
    fn stuck_carry_is_caught() {
        let v = exhaustive_verify_with(3, |_| Ok(StuckCarryAdder)).unwrap();
        assert!(!v.ok());
        assert!(!v.mismatches.is_empty());
        assert!(v
            .mismatches
            .iter()
            .any(|m| m.variant == Variant::LowPower && m.a == 3 && m.b == 3));
        assert!(v.mismatches.iter().all(|m| m.got != m.expected));
    }

    #[test]
    fn rejects_wide_widths() {
        assert!(exhaustive_verify(0).is_err());
        assert!(exhaustive_verify(9).is_err());
    }
}
