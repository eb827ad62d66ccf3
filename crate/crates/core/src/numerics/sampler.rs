use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Result, SymgateError};

/// 64-bit words of ChaCha output consumed per sphere point (two `u64` draws).
const WORDS_PER_POINT: u128 = 4;

/// A point on the unit sphere in polar coordinates, `θ ∈ [0, π]`, `φ ∈ [0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpherePoint {
    pub theta: f64,
    pub phi: f64,
}

impl SpherePoint {
    pub fn unit_vector(&self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }
}

/// Uniform sampler on the unit sphere backed by ChaCha8, a counter-based
/// stream cipher generator. `(seed, stream)` selects an independent stream and
/// `counter` is the index of the next point, so any position of any stream
/// can be reproduced directly with [`SphereSampler::at`].
#[derive(Debug, Clone)]
pub struct SphereSampler {
    seed: u64,
    stream: u64,
    counter: u64,
    rng: ChaCha8Rng,
}

impl SphereSampler {
    pub fn new(seed: u64) -> Self {
        Self::with_stream(seed, 0)
    }

    pub fn with_stream(seed: u64, stream: u64) -> Self {
        Self::at(seed, stream, 0)
    }

    pub fn at(seed: u64, stream: u64, counter: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        rng.set_word_pos(counter as u128 * WORDS_PER_POINT);
        Self {
            seed,
            stream,
            counter,
            rng,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }

    pub fn counter(&self) -> u64 {
        self.counter
    }

    /// Two independent uniforms on `[0, 1)`; advances the counter by one.
    pub fn next_unit_pair(&mut self) -> (f64, f64) {
        let u: f64 = self.rng.random();
        let v: f64 = self.rng.random();
        self.counter += 1;
        (u, v)
    }

    /// `cos θ` uniform on `[-1, 1]`, `φ` uniform on `[0, 2π)`.
    pub fn next_point(&mut self) -> SpherePoint {
        let (u, v) = self.next_unit_pair();
        let cos_theta = (1.0 - 2.0 * u).clamp(-1.0, 1.0);
        SpherePoint {
            theta: cos_theta.acos(),
            phi: 2.0 * PI * v,
        }
    }

    pub fn sample(&mut self, n: usize) -> Result<Vec<SpherePoint>> {
        if n == 0 {
            return Err(SymgateError::InvalidCount { count: 0, minimum: 1 });
        }
        Ok((0..n).map(|_| self.next_point()).collect())
    }
}
