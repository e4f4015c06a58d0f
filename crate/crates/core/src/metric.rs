//! The ball metric on rooted graphs.
//!
//! The distance between two rooted graphs is `2^(-s)` where `s` is the
//! supremum of radii at which their balls are isomorphic. Ball contents only
//! change at half-integer radii, so the scan walks the half-step lattice
//! `m = 0, 1, 2, ...` and reports the first disagreement; values are powers
//! `2^(-m/2)`.
//!
//! The scan terminates in three ways: a disagreement pins the distance
//! exactly; a saturated (stub-free) agreeing ball proves the graphs equal,
//! so the distance is zero; or the half-step budget runs out, which bounds
//! the distance from above without deciding it. On inputs backed by lazy
//! oracles the budget is what keeps the computation finite — distance zero
//! is only ever certified for finite graphs.

use std::fmt;

use crate::ball::Radius;
use crate::error::Result;
use crate::iso::balls_equivalent;
use crate::oracle::GraphInput;

/// Outcome of a distance scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DyadicDistance {
    /// The graphs agree at every radius (certified by a saturated ball).
    Zero,
    /// The distance is exactly `2^(-half_exponent/2)`.
    Exact { half_exponent: u32 },
    /// Every ball up to the budget agreed: distance `<= 2^(-half_exponent/2)`.
    UpperBound { half_exponent: u32 },
}

fn fmt_half_exponent(he: u32) -> String {
    if he % 2 == 0 {
        format!("{}", he / 2)
    } else {
        format!("{he}/2")
    }
}

impl DyadicDistance {
    /// Numeric value (for `UpperBound` this is the bound, not the distance).
    pub fn approx(&self) -> f64 {
        match self {
            DyadicDistance::Zero => 0.0,
            DyadicDistance::Exact { half_exponent } | DyadicDistance::UpperBound { half_exponent } => {
                2f64.powf(-(*half_exponent as f64) / 2.0)
            }
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, DyadicDistance::Zero | DyadicDistance::Exact { .. })
    }
}

impl fmt::Display for DyadicDistance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DyadicDistance::Zero => write!(f, "0"),
            DyadicDistance::Exact { half_exponent } => write!(
                f,
                "exact 2^-{} (~{:.8})",
                fmt_half_exponent(*half_exponent),
                self.approx()
            ),
            DyadicDistance::UpperBound { half_exponent } => write!(
                f,
                "at most 2^-{} (~{:.8})",
                fmt_half_exponent(*half_exponent),
                self.approx()
            ),
        }
    }
}

/// Scans half-steps `0..=budget` and reports the first radius at which the
/// two inputs' balls differ. Balls are re-extracted per step, so a large
/// early disagreement never pays for the full budget.
pub fn distance(a: &GraphInput, b: &GraphInput, budget_half_steps: u32) -> Result<DyadicDistance> {
    for m in 0..=budget_half_steps {
        let ball_a = a.ball(Radius(m))?;
        let ball_b = b.ball(Radius(m))?;
        if !balls_equivalent(&ball_a, &ball_b) {
            // Balls agreed strictly below m/2 and differ at m/2.
            return Ok(DyadicDistance::Exact {
                half_exponent: m.saturating_sub(1),
            });
        }
        if ball_a.is_saturated() {
            // The whole graph is inside; agreement is now permanent.
            return Ok(DyadicDistance::Zero);
        }
    }
    Ok(DyadicDistance::UpperBound {
        half_exponent: budget_half_steps,
    })
}

/// Membership of `g` in the basic open set around `center` at the given
/// radius: do the two balls agree?
pub fn in_basic_open(g: &GraphInput, center: &GraphInput, radius: Radius) -> Result<bool> {
    let bg = g.ball(radius)?;
    let bc = center.ball(radius)?;
    Ok(balls_equivalent(&bg, &bc))
}
