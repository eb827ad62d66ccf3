//! Small dense complex linear algebra, eigenphases, Hermitian exponentials
//! and seeded sphere sampling.

mod eigen;
mod matrix;
mod sampler;

pub use eigen::{
    canonical_phase, hermitian_eigenvalues, hermitian_expm, unitary_eigenphases, unitary_eigenvalues, PhaseList,
    MODULUS_TOL,
};
pub use matrix::{ComplexMatrix, HERMITIAN_TOL, UNITARY_TOL};
pub use sampler::{SphereSampler, SpherePoint};

/// Running mean/variance with Neumaier-compensated sums.
///
/// Partial accumulators are merged with [`MeanAccumulator::merge`]; merging in
/// a fixed order keeps sharded Monte Carlo results bit-reproducible.
#[derive(Debug, Clone, Copy, Default)]
pub struct MeanAccumulator {
    count: u64,
    sum: f64,
    sum_comp: f64,
    sum_sq: f64,
    sum_sq_comp: f64,
}

fn neumaier_add(sum: &mut f64, comp: &mut f64, x: f64) {
    let t = *sum + x;
    if sum.abs() >= x.abs() {
        *comp += (*sum - t) + x;
    } else {
        *comp += (x - t) + *sum;
    }
    *sum = t;
}

impl MeanAccumulator {
    pub fn push(&mut self, x: f64) {
        self.count += 1;
        neumaier_add(&mut self.sum, &mut self.sum_comp, x);
        neumaier_add(&mut self.sum_sq, &mut self.sum_sq_comp, x * x);
    }

    pub fn merge(&mut self, other: &MeanAccumulator) {
        self.count += other.count;
        neumaier_add(&mut self.sum, &mut self.sum_comp, other.sum);
        neumaier_add(&mut self.sum, &mut self.sum_comp, other.sum_comp);
        neumaier_add(&mut self.sum_sq, &mut self.sum_sq_comp, other.sum_sq);
        neumaier_add(&mut self.sum_sq, &mut self.sum_sq_comp, other.sum_sq_comp);
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn mean(&self) -> f64 {
        if self.count == 0 {
            0.0
        } else {
            (self.sum + self.sum_comp) / self.count as f64
        }
    }

    /// Unbiased sample variance.
    pub fn variance(&self) -> f64 {
        if self.count < 2 {
            return 0.0;
        }
        let n = self.count as f64;
        let mean = self.mean();
        let ss = (self.sum_sq + self.sum_sq_comp) - n * mean * mean;
        (ss / (n - 1.0)).max(0.0)
    }

    pub fn std_error(&self) -> f64 {
        if self.count == 0 {
            0.0
        } else {
            (self.variance() / self.count as f64).sqrt()
        }
    }
}
