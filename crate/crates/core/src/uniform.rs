//! Seedable streams of uniforms on the open interval (0, 1).

use rand::distr::Open01;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Anything that can hand out uniforms strictly inside (0, 1).
///
/// The samplers consume uniforms through this trait so that a scripted stream can
/// drive them step by step.
pub trait UniformStream {
    fn next_uniform(&mut self) -> f64;
}

/// ChaCha8-backed uniform source. The same `(seed, stream)` always yields the same
/// sequence.
#[derive(Debug, Clone)]
pub struct UniformSource {
    seed: u64,
    rng: ChaCha8Rng,
}

impl UniformSource {
    pub fn new(seed: u64) -> Self {
        Self::with_stream(seed, 0)
    }

    /// An independent stream under the same seed; stream 0 is [`UniformSource::new`].
    pub fn with_stream(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Self { seed, rng }
    }

    /// Seeds from system entropy. The chosen seed is available from [`UniformSource::seed`].
    pub fn from_entropy() -> Self {
        Self::new(rand::random())
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

impl UniformStream for UniformSource {
    #[inline]
    fn next_uniform(&mut self) -> f64 {
        self.rng.sample(Open01)
    }
}

impl<S: UniformStream + ?Sized> UniformStream for &mut S {
    #[inline]
    fn next_uniform(&mut self) -> f64 {
        (**self).next_uniform()
    }
}
