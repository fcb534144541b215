//! Random variates from the bivariate exponential conditionals (BEC) distribution.
//!
//! The unnormalized density on the positive quadrant is
//!
//! ```text
//! f(x, y) = exp(-(beta x + gamma y + delta beta gamma x y))
//! ```
//!
//! Both conditionals are exponential. Three rejection samplers are provided:
//!
//! * [`Algorithm::A`]: product-exponential proposal for the pair. Its acceptance rate
//!   tends to zero as `delta` grows.
//! * [`Algorithm::C`]: exponential proposal for the X marginal, then Y from its exact
//!   conditional. Same rate as A but one fewer uniform per rejection.
//! * [`Algorithm::B`]: a two-piece envelope for the X marginal split at `c`. Its rate is
//!   bounded below by `1 / (exp(c) + 1/c)` for every `delta`.
//!
//! [`Algorithm::Auto`] uses C for `delta < 1` and B with `c = 0.7` otherwise.
//!
//! ```
//! use bec::{Algorithm, BecParams, Sampler, UniformSource};
//!
//! let params = BecParams::new(1.0, 2.0, 5.0).unwrap();
//! let sampler = Sampler::new(params, Algorithm::Auto).unwrap();
//! let mut source = UniformSource::new(42);
//! let (pairs, stats) = sampler.sample_many(1000, &mut source).unwrap();
//! assert_eq!(pairs.len(), 1000);
//! assert!(stats.proposals >= 1000);
//! ```

pub mod error;
pub mod math;
pub mod parallel;
pub mod params;
pub mod quadrature;
pub mod sampler;
pub mod table1;
pub mod uniform;
pub mod verification;

pub use error::{BecError, Result};
pub use math::{
    acceptance_rate_a, acceptance_rate_b, choose_algorithm, conditional_y_rate, envelope_g,
    g1_cdf, g1_inverse_cdf, marginal_x_unnormalized, mixture_weights, normalizing_constant,
    proposition_lower_bound, rate_cell, tail_integral, theoretical_rate, unnormalized_density,
    Algorithm, DEFAULT_SPLIT,
};
pub use params::{BecParams, EnvelopeConfig};
pub use quadrature::QuadratureSettings;
pub use sampler::{
    sample_a, sample_auto, sample_b, sample_c, sample_many, DrawStats, SamplePair, Sampler,
};
pub use uniform::{UniformSource, UniformStream};
