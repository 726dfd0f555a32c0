use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Result, SimError};

/// Widest operand for which exhaustive enumeration is allowed.
pub const EXHAUSTIVE_LIMIT: u32 = 12;

/// Name of the generator behind every random stream, for report metadata.
pub const RNG_NAME: &str = "ChaCha8Rng (rand_chacha 0.3, seed_from_u64)";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistKind {
    /// Every bit of both operands is a fair coin.
    Uniform,
    /// Multiplier bits are one with probability 0.25; multiplicand uniform.
    Sparse,
    /// Multiplier bits are one with probability 0.75; multiplicand uniform.
    Dense,
    /// All `2^(2n)` pairs, `a` major, `b` minor.
    Exhaustive,
    /// The same pair repeated.
    FixedPair { a: u64, b: u64 },
}

impl DistKind {
    pub fn name(&self) -> &'static str {
        match self {
            DistKind::Uniform => "uniform",
            DistKind::Sparse => "sparse",
            DistKind::Dense => "dense",
            DistKind::Exhaustive => "exhaustive",
            DistKind::FixedPair { .. } => "fixed",
        }
    }

    fn one_probability(&self) -> Option<f64> {
        match self {
            DistKind::Sparse => Some(0.25),
            DistKind::Dense => Some(0.75),
            _ => None,
        }
    }
}

impl fmt::Display for DistKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DistKind::FixedPair { a, b } => write!(f, "fixed({a},{b})"),
            other => f.write_str(other.name()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OperandDistribution {
    pub kind: DistKind,
    pub seed: u64,
}

impl OperandDistribution {
    pub fn new(kind: DistKind, seed: u64) -> Self {
        Self { kind, seed }
    }
}

fn mask(width: u32) -> u64 {
    if width >= 64 {
        u64::MAX
    } else {
        (1u64 << width) - 1
    }
}

/// Operand pairs for one sweep cell. Exhaustive streams ignore `trials`.
pub fn gen_operands(
    dist: &OperandDistribution,
    width: u32,
    trials: u64,
) -> Result<Vec<(u64, u64)>> {
    if width == 0 || width > 64 {
        return Err(SimError::InvalidWidth { width, max: 64 });
    }
    let m = mask(width);
    let mut rng = ChaCha8Rng::seed_from_u64(dist.seed);
    match dist.kind {
        DistKind::Exhaustive => {
            if width > EXHAUSTIVE_LIMIT {
                return Err(SimError::ExhaustiveTooWide {
                    width,
                    limit: EXHAUSTIVE_LIMIT,
                });
            }
            let side = 1u64 << width;
            Ok((0..side)
                .flat_map(|a| (0..side).map(move |b| (a, b)))
                .collect())
        }
        DistKind::FixedPair { a, b } => {
            for v in [a, b] {
                if v & !m != 0 {
                    return Err(SimError::ValueTooWide { value: v, width });
                }
            }
            Ok(vec![(a, b); trials as usize])
        }
        DistKind::Uniform => Ok((0..trials)
            .map(|_| (rng.gen::<u64>() & m, rng.gen::<u64>() & m))
            .collect()),
        kind @ (DistKind::Sparse | DistKind::Dense) => {
            let p = kind.one_probability().unwrap_or(0.5);
            Ok((0..trials)
                .map(|_| {
                    let a = rng.gen::<u64>() & m;
                    let b = (0..width).fold(0u64, |acc, i| acc | (u64::from(rng.gen_bool(p)) << i));
                    (a, b)
                })
                .collect())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exhaustive_order() {
        let d = OperandDistribution::new(DistKind::Exhaustive, 0);
        let pairs = gen_operands(&d, 3, 0).unwrap();
        assert_eq!(pairs.len(), 64);
        assert_eq!(pairs[0], (0, 0));
        assert_eq!(pairs[1], (0, 1));
        assert_eq!(pairs[8], (1, 0));
        assert_eq!(pairs[63], (7, 7));
    }

    #[test]
    fn exhaustive_guard() {
        let d = OperandDistribution::new(DistKind::Exhaustive, 0);
        assert!(gen_operands(&d, 12, 0).is_ok());
        assert!(matches!(
            gen_operands(&d, 13, 0),
            Err(SimError::ExhaustiveTooWide { width: 13, .. })
        ));
    }

    #[test]
    fn same_seed_same_stream() {
        for kind in [DistKind::Uniform, DistKind::Sparse, DistKind::Dense] {
            let d = OperandDistribution::new(kind, 42);
            let x = gen_operands(&d, 16, 500).unwrap();
            assert_eq!(x, gen_operands(&d, 16, 500).unwrap());
            assert!(x.iter().all(|&(a, b)| a < 1 << 16 && b < 1 << 16));
            let other = OperandDistribution::new(kind, 43);
            assert_ne!(x, gen_operands(&other, 16, 500).unwrap());
        }
    }

    #[test]
    fn bit_density_matches_binomial_mean() {
        // mean popcount n*p over 10^4 trials; 3 sigma of the mean is
        // 3 * sqrt(n p (1-p) / trials) = 3 * sqrt(1.5 / 10^4) ~ 0.037, well
        // inside the +-0.15 band
        let trials = 10_000;
        for (kind, expected) in [
            (DistKind::Sparse, 2.0),
            (DistKind::Dense, 6.0),
            (DistKind::Uniform, 4.0),
        ] {
            let d = OperandDistribution::new(kind, 7);
            let pairs = gen_operands(&d, 8, trials).unwrap();
            let mean = pairs
                .iter()
                .map(|&(_, b)| b.count_ones() as f64)
                .sum::<f64>()
                / trials as f64;
            assert!((mean - expected).abs() <= 0.15, "{kind}: mean {mean}");
        }
    }

    #[test]
    fn fixed_pair_repeats_and_checks_width() {
        let d = OperandDistribution::new(DistKind::FixedPair { a: 3, b: 2 }, 0);
        assert_eq!(gen_operands(&d, 8, 3).unwrap(), vec![(3, 2); 3]);
        assert!(gen_operands(&d, 1, 3).is_err());
    }
}
