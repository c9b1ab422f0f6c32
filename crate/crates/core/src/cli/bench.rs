use std::time::{Duration, Instant};

use num_bigint::BigUint;

use crate::chains::{count_from_root_formula, ChainError, Enumerator};
use crate::poset::build_cobweb;

/// Formula evaluations per timing sample; single evaluations are too short
/// to time reliably.
const FORMULA_REPS: u32 = 200;

#[derive(Debug, Clone)]
pub struct BenchRow {
    pub n: usize,
    pub formula: BigUint,
    /// Mean wall time of one formula evaluation.
    pub formula_time: Duration,
    /// `None` when the guard refused the enumeration.
    pub enumeration: Option<(BigUint, Duration)>,
}

impl BenchRow {
    pub fn agrees(&self) -> bool {
        self.enumeration
            .as_ref()
            .is_none_or(|(c, _)| *c == self.formula)
    }

    /// Enumeration time over formula time.
    pub fn speedup(&self) -> Option<f64> {
        let (_, t) = self.enumeration.as_ref()?;
        Some(t.as_secs_f64() / self.formula_time.as_secs_f64().max(1e-12))
    }
}

/// Times root-chain counting by formula and by enumeration for `n = 1..=max_n`.
/// Levels whose predicted chain count exceeds `guard` get formula rows only.
pub fn bench(max_n: usize, guard: u64) -> Result<Vec<BenchRow>, ChainError> {
    let poset = build_cobweb(max_n)?;
    let enumerator = Enumerator::new(&poset).with_guard(guard);
    let mut rows = Vec::with_capacity(max_n);
    for n in 1..=max_n {
        let start = Instant::now();
        let mut formula = count_from_root_formula(n)?;
        for _ in 1..FORMULA_REPS {
            formula = std::hint::black_box(count_from_root_formula(std::hint::black_box(n))?);
        }
        let formula_time = start.elapsed() / FORMULA_REPS;

        let start = Instant::now();
        let enumeration = match enumerator.count_from_root(n) {
            Ok(count) => Some((count, start.elapsed())),
            Err(ChainError::GuardExceeded { .. }) => None,
            Err(e) => return Err(e),
        };
        rows.push(BenchRow {
            n,
            formula,
            formula_time,
            enumeration,
        });
    }
    Ok(rows)
}
