//! Helpers for the acceptance run in `tests/acceptance.rs`.
//!
//! The package is named so that cargo schedules it after the other
//! workspace members: a failing criterion then never hides their results.

use std::time::{Duration, Instant};

/// Result of one acceptance criterion.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub pass: bool,
    pub detail: String,
}

impl Outcome {
    pub fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self {
            pass,
            detail: detail.into(),
        }
    }
}

/// Runs `check`, prints one PASS/FAIL line and returns whether it passed.
/// A `budget` turns the runtime into part of the criterion.
pub fn run_criterion(
    number: u32,
    title: &str,
    budget: Option<Duration>,
    check: impl FnOnce() -> Outcome,
) -> bool {
    let start = Instant::now();
    let mut outcome = check();
    let elapsed = start.elapsed();
    if let Some(limit) = budget {
        if elapsed > limit {
            outcome.pass = false;
            outcome.detail = format!(
                "{}; over the {:.0}s budget",
                outcome.detail,
                limit.as_secs_f64()
            );
        }
    }
    println!(
        "criterion {number:>2}: {} {title} ({:.2}s) {}",
        if outcome.pass { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        outcome.detail
    );
    outcome.pass
}

/// Midpoint rule with `panels` equal panels. Never evaluates `f` at the
/// ends, so a piecewise integrand can be split at its jumps.
pub fn midpoint(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    let h = (b - a) / panels as f64;
    (0..panels)
        .map(|k| f(a + (k as f64 + 0.5) * h))
        .sum::<f64>()
        * h
}

pub fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}
