//! Rejection samplers for the bivariate exponential conditionals density.
//!
//! Uniform consumption per proposal is fixed:
//!
//! * A: `u1, u2, u3`
//! * B: `u0, u1, u2`, then `u3` once accepted
//! * C: `u1, u2`, then `u3` once accepted

use crate::error::{check_positive, BecError, Result};
use crate::math::Algorithm;
use crate::params::{BecParams, EnvelopeConfig};
use crate::uniform::UniformStream;

/// Proposal cap per accepted draw unless overridden.
pub const DEFAULT_MAX_PROPOSALS: u64 = 1_000_000_000;

/// One accepted draw in original units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplePair {
    pub x: f64,
    pub y: f64,
}

/// Proposal and acceptance counts accumulated over a run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DrawStats {
    pub proposals: u64,
    pub accepted: u64,
}

impl DrawStats {
    pub fn merge(&mut self, other: DrawStats) {
        self.proposals += other.proposals;
        self.accepted += other.accepted;
    }

    /// Mean proposals per accepted draw.
    pub fn mean_trials(&self) -> f64 {
        self.proposals as f64 / self.accepted as f64
    }

    pub fn acceptance_fraction(&self) -> f64 {
        self.accepted as f64 / self.proposals as f64
    }
}

#[derive(Debug, Clone, Copy)]
enum Kernel {
    A,
    B {
        envelope: EnvelopeConfig,
        threshold: f64,
        /// `ln(1 + c delta)`
        log_mass: f64,
        /// `1 + c delta`
        scale: f64,
    },
    C,
}

/// A configured sampler. Envelope weights for algorithm B are computed once here.
#[derive(Debug, Clone, Copy)]
pub struct Sampler {
    params: BecParams,
    algorithm: Algorithm,
    kernel: Kernel,
    max_proposals: u64,
}

impl Sampler {
    /// `Algorithm::Auto` is resolved against `params.delta()`.
    ///
    /// Algorithm B needs `delta > 0` and `c > 0`; at `delta = 0` use C, whose accept
    /// test always passes.
    pub fn new(params: BecParams, algorithm: Algorithm) -> Result<Self> {
        let algorithm = algorithm.resolve(params.delta());
        let kernel = match algorithm {
            Algorithm::A => Kernel::A,
            Algorithm::C => Kernel::C,
            Algorithm::B { c } => {
                let delta = params.delta();
                if delta == 0.0 {
                    return Err(BecError::Precondition(
                        "algorithm B requires delta > 0; use algorithm C at delta = 0".into(),
                    ));
                }
                if !(c > 0.0 && c.is_finite()) {
                    return Err(BecError::Precondition(format!(
                        "algorithm B requires a split point c > 0, got {c}; c = 0 is algorithm C"
                    )));
                }
                let envelope = EnvelopeConfig::new(delta, c)?;
                Kernel::B {
                    envelope,
                    threshold: envelope.low_branch_probability(),
                    log_mass: (c * delta).ln_1p(),
                    scale: 1.0 + c * delta,
                }
            }
            Algorithm::Auto => unreachable!("resolved above"),
        };
        Ok(Self {
            params,
            algorithm,
            kernel,
            max_proposals: DEFAULT_MAX_PROPOSALS,
        })
    }

    pub fn with_max_proposals(mut self, limit: u64) -> Self {
        self.max_proposals = limit;
        self
    }

    pub fn params(&self) -> &BecParams {
        &self.params
    }

    /// The concrete algorithm (never `Auto`).
    pub fn algorithm(&self) -> Algorithm {
        self.algorithm
    }

    pub fn envelope(&self) -> Option<&EnvelopeConfig> {
        match &self.kernel {
            Kernel::B { envelope, .. } => Some(envelope),
            _ => None,
        }
    }

    /// Runs a single proposal. Returns the pair if it was accepted.
    #[inline]
    pub fn propose<S: UniformStream + ?Sized>(&self, source: &mut S) -> Option<SamplePair> {
        let delta = self.params.delta();
        match self.kernel {
            Kernel::A => {
                let u1 = source.next_uniform();
                let u2 = source.next_uniform();
                let u3 = source.next_uniform();
                let x = -u1.ln();
                let y = -u2.ln();
                (u3 <= (-delta * x * y).exp()).then(|| SamplePair {
                    x: x / self.params.beta(),
                    y: y / self.params.gamma(),
                })
            }
            Kernel::B {
                envelope,
                threshold,
                log_mass,
                scale,
            } => {
                let u0 = source.next_uniform();
                let u1 = source.next_uniform();
                let u2 = source.next_uniform();
                let (x, accept) = if u0 < threshold {
                    let x = crate::math::g1_quantile(delta, log_mass, u1);
                    (x, u2 < (-x).exp())
                } else {
                    let x = envelope.c() - u1.ln();
                    (x, u2 < scale / (1.0 + delta * x))
                };
                accept.then(|| self.finish(x, source))
            }
            Kernel::C => {
                let u1 = source.next_uniform();
                let u2 = source.next_uniform();
                let x = -u1.ln();
                (u2 < 1.0 / (1.0 + delta * x)).then(|| self.finish(x, source))
            }
        }
    }

    /// Draws Y from its exact conditional given the standardized X.
    #[inline]
    fn finish<S: UniformStream + ?Sized>(&self, x: f64, source: &mut S) -> SamplePair {
        let u3 = source.next_uniform();
        SamplePair {
            x: x / self.params.beta(),
            y: -u3.ln() / (self.params.gamma() * (1.0 + self.params.delta() * x)),
        }
    }

    /// Proposes until acceptance. Returns the pair and the number of proposals used.
    pub fn sample<S: UniformStream + ?Sized>(&self, source: &mut S) -> Result<(SamplePair, u64)> {
        let mut trials = 0;
        while trials < self.max_proposals {
            trials += 1;
            if let Some(pair) = self.propose(source) {
                return Ok((pair, trials));
            }
        }
        Err(BecError::Runaway {
            limit: self.max_proposals,
        })
    }

    /// Draws exactly `n` pairs.
    pub fn sample_many<S: UniformStream + ?Sized>(
        &self,
        n: usize,
        source: &mut S,
    ) -> Result<(Vec<SamplePair>, DrawStats)> {
        let mut pairs = Vec::with_capacity(n);
        let mut stats = DrawStats::default();
        for _ in 0..n {
            let (pair, trials) = self.sample(source)?;
            pairs.push(pair);
            stats.proposals += trials;
            stats.accepted += 1;
        }
        Ok((pairs, stats))
    }
}

pub fn sample_a<S: UniformStream + ?Sized>(
    params: &BecParams,
    source: &mut S,
) -> Result<(SamplePair, u64)> {
    Sampler::new(*params, Algorithm::A)?.sample(source)
}

/// Builds the envelope on every call; hold a [`Sampler`] to reuse it across draws.
pub fn sample_b<S: UniformStream + ?Sized>(
    params: &BecParams,
    c: f64,
    source: &mut S,
) -> Result<(SamplePair, u64)> {
    check_positive("c", c)?;
    Sampler::new(*params, Algorithm::B { c })?.sample(source)
}

pub fn sample_c<S: UniformStream + ?Sized>(
    params: &BecParams,
    source: &mut S,
) -> Result<(SamplePair, u64)> {
    Sampler::new(*params, Algorithm::C)?.sample(source)
}

pub fn sample_auto<S: UniformStream + ?Sized>(
    params: &BecParams,
    source: &mut S,
) -> Result<(SamplePair, u64)> {
    Sampler::new(*params, Algorithm::Auto)?.sample(source)
}

/// Draws `n >= 1` pairs with `algorithm`, returning them with aggregate counts.
pub fn sample_many<S: UniformStream + ?Sized>(
    params: &BecParams,
    n: usize,
    algorithm: Algorithm,
    source: &mut S,
) -> Result<(Vec<SamplePair>, DrawStats)> {
    if n == 0 {
        return Err(BecError::Domain {
            name: "n",
            value: 0.0,
            constraint: "must be >= 1",
        });
    }
    Sampler::new(*params, algorithm)?.sample_many(n, source)
}
