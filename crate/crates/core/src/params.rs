//! Distribution parameters and the two-piece envelope used for the X marginal.

use crate::error::{check_nonneg, check_positive, Result};

/// Parameters of the density `exp(-(beta x + gamma y + delta beta gamma x y))` on the
/// positive quadrant.
///
/// `beta` and `gamma` are rates on the x and y axes; `delta` is the dimensionless
/// interaction strength. `delta = 0` is the independent product of exponentials.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BecParams {
    beta: f64,
    gamma: f64,
    delta: f64,
}

impl BecParams {
    pub fn new(beta: f64, gamma: f64, delta: f64) -> Result<Self> {
        check_positive("beta", beta)?;
        check_positive("gamma", gamma)?;
        check_nonneg("delta", delta)?;
        Ok(Self { beta, gamma, delta })
    }

    /// Unit rates with the given interaction, i.e. the standardized scale.
    pub fn standard(delta: f64) -> Result<Self> {
        Self::new(1.0, 1.0, delta)
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }
}

/// Below this value of `delta * c` the weight `ln(1 + delta c) / delta` is taken from its
/// two-term series.
const SERIES_CUTOFF: f64 = 1e-8;

/// Split point `c` of the envelope
///
/// ```text
/// g(x; c) = 1 / (1 + delta x)             0 <= x < c
///         = exp(-x) / (1 + delta c)       x >= c
/// ```
///
/// together with the masses of its two pieces, `d1` on `[0, c)` and `d2` on `[c, inf)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvelopeConfig {
    c: f64,
    d1: f64,
    d2: f64,
}

impl EnvelopeConfig {
    /// Computes the mixture masses for a given interaction strength and split point.
    ///
    /// At `delta = 0` the continuous limits `d1 = c`, `d2 = exp(-c)` are used.
    pub fn new(delta: f64, c: f64) -> Result<Self> {
        check_nonneg("delta", delta)?;
        check_nonneg("c", c)?;
        let dc = delta * c;
        let d1 = if c == 0.0 {
            0.0
        } else if dc < SERIES_CUTOFF {
            c * (1.0 - 0.5 * dc)
        } else {
            dc.ln_1p() / delta
        };
        let d2 = (-c).exp() / (1.0 + dc);
        Ok(Self { c, d1, d2 })
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn d1(&self) -> f64 {
        self.d1
    }

    pub fn d2(&self) -> f64 {
        self.d2
    }

    /// Total mass of the envelope, `d1 + d2`.
    pub fn mass(&self) -> f64 {
        self.d1 + self.d2
    }

    /// Probability of drawing from the bounded piece, `d1 / (d1 + d2)`.
    pub fn low_branch_probability(&self) -> f64 {
        self.d1 / self.mass()
    }
}
