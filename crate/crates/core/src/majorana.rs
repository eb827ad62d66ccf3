//! Two-star Majorana constellations of symmetric two-qubit states and
//! linear-entropy maps over the sphere of separable inputs.

use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2, TAU};

use num_complex::Complex64;
use rayon::prelude::*;

use crate::entangling::EntropyKernel;
use crate::error::{Result, SymgateError};
use crate::gates::SymmetricGate;

const NORM_TOL: f64 = 1e-10;
/// Stars closer than this to a pole are placed on it with `φ = 0`.
const POLE_SNAP: f64 = 1e-12;

/// Normalized amplitudes `(a₀, a₁, a₂)` in the `CompSym` basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymmetricState {
    amps: [Complex64; 3],
}

impl SymmetricState {
    /// Accepts amplitudes that are already normalized.
    pub fn new(amps: [Complex64; 3]) -> Result<Self> {
        if amps.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(SymgateError::NonFinite);
        }
        let norm = norm3(&amps);
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(SymgateError::NotNormalized { norm });
        }
        Ok(Self { amps })
    }

    /// Rescales to unit norm.
    pub fn normalized(amps: [Complex64; 3]) -> Result<Self> {
        if amps.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(SymgateError::NonFinite);
        }
        let norm = norm3(&amps);
        if norm < f64::MIN_POSITIVE.sqrt() {
            return Err(SymgateError::ZeroState);
        }
        Ok(Self {
            amps: amps.map(|z| z / norm),
        })
    }

    pub fn amplitudes(&self) -> [Complex64; 3] {
        self.amps
    }

    /// `(a₀, a₁/√2, a₁/√2, a₂)`
    pub fn two_qubit_vector(&self) -> [Complex64; 4] {
        let [a0, a1, a2] = self.amps;
        [a0, a1 * FRAC_1_SQRT_2, a1 * FRAC_1_SQRT_2, a2]
    }

    /// `|⟨other|self⟩|`, 1 for equal rays.
    pub fn fidelity(&self, other: &SymmetricState) -> f64 {
        self.amps
            .iter()
            .zip(other.amps.iter())
            .map(|(a, b)| b.conj() * a)
            .sum::<Complex64>()
            .norm()
    }

    /// Applies a symmetric gate given in `CompSym` or `Spin1` coordinates.
    pub fn evolve(&self, g: &SymmetricGate) -> SymmetricState {
        let u = g.to_basis(crate::gates::BasisTag::CompSym);
        let out = u.matrix().apply(&self.amps);
        Self {
            amps: [out[0], out[1], out[2]],
        }
    }
}

fn norm3(a: &[Complex64; 3]) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MajoranaStar {
    pub theta: f64,
    pub phi: f64,
}

impl MajoranaStar {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta) {
            return Err(SymgateError::InvalidAngle { name: "theta", value: theta });
        }
        if !phi.is_finite() {
            return Err(SymgateError::InvalidAngle { name: "phi", value: phi });
        }
        Ok(Self::canonical(theta, phi))
    }

    fn canonical(theta: f64, phi: f64) -> Self {
        if theta <= POLE_SNAP {
            Self { theta: 0.0, phi: 0.0 }
        } else if theta >= PI - POLE_SNAP {
            Self { theta: PI, phi: 0.0 }
        } else {
            Self {
                theta,
                phi: phi.rem_euclid(TAU),
            }
        }
    }

    /// Star at the projective point `(u₀ : u₁)`, i.e. `z = u₁/u₀`.
    fn from_homogeneous(u0: Complex64, u1: Complex64) -> Self {
        let theta = 2.0 * u1.norm().atan2(u0.norm());
        let phi = if u0.norm() == 0.0 || u1.norm() == 0.0 {
            0.0
        } else {
            (u1 / u0).arg()
        };
        Self::canonical(theta, phi)
    }

    pub fn unit_vector(&self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }

    /// `(cos θ/2, e^{iφ} sin θ/2)`
    pub fn spinor(&self) -> [Complex64; 2] {
        let (s, c) = (self.theta / 2.0).sin_cos();
        [Complex64::new(c, 0.0), Complex64::from_polar(s, self.phi)]
    }
}

/// An unordered pair of stars.
#[derive(Debug, Clone, Copy)]
pub struct Constellation {
    pub stars: [MajoranaStar; 2],
}

impl Constellation {
    pub fn new(a: MajoranaStar, b: MajoranaStar) -> Self {
        Self { stars: [a, b] }
    }

    /// Equality up to swapping the stars, comparing unit vectors.
    pub fn approx_eq(&self, other: &Constellation, tol: f64) -> bool {
        let d = |a: &MajoranaStar, b: &MajoranaStar| dist(a.unit_vector(), b.unit_vector());
        let [a0, a1] = &self.stars;
        let [b0, b1] = &other.stars;
        (d(a0, b0) <= tol && d(a1, b1) <= tol) || (d(a0, b1) <= tol && d(a1, b0) <= tol)
    }
}

impl PartialEq for Constellation {
    fn eq(&self, other: &Self) -> bool {
        let [a0, a1] = self.stars;
        let [b0, b1] = other.stars;
        (a0 == b0 && a1 == b1) || (a0 == b1 && a1 == b0)
    }
}

fn dist(a: [f64; 3], b: [f64; 3]) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt()
}

/// Roots of `p x² + q x + r` with `p ≠ 0`, avoiding cancellation.
fn stable_quadratic(p: Complex64, q: Complex64, r: Complex64) -> [Complex64; 2] {
    let disc = (q * q - 4.0 * p * r).sqrt();
    let s = if (q.conj() * disc).re >= 0.0 {
        -(q + disc) / 2.0
    } else {
        -(q - disc) / 2.0
    };
    if s == Complex64::ZERO {
        [Complex64::ZERO, Complex64::ZERO]
    } else {
        [s / p, r / s]
    }
}

/// Roots of `a₀ z² − √2 a₁ z + a₂` mapped through `z = tan(θ/2) e^{iφ}`.
/// Each unit of degree lost as `a₀ → 0` contributes a star at `θ = π`.
pub fn stars_of(state: &SymmetricState) -> Result<Constellation> {
    let [a0, a1, a2] = state.amps;
    let scale = norm3(&state.amps);
    if scale < f64::MIN_POSITIVE.sqrt() {
        return Err(SymgateError::ZeroState);
    }
    let negligible = |z: Complex64| z.norm() <= 1e-15 * scale;
    let q = -SQRT_2 * a1;
    let one = Complex64::ONE;
    let stars = if negligible(a0) && negligible(a2) {
        // z(−√2 a₁) = 0: one root at z = 0, one lost to infinity.
        [
            MajoranaStar::from_homogeneous(one, Complex64::ZERO),
            MajoranaStar::from_homogeneous(Complex64::ZERO, one),
        ]
    } else if a0.norm() >= a2.norm() {
        let [z1, z2] = stable_quadratic(a0, q, a2);
        [
            MajoranaStar::from_homogeneous(one, z1),
            MajoranaStar::from_homogeneous(one, z2),
        ]
    } else {
        // Solve for w = 1/z: a₂ w² − √2 a₁ w + a₀ = 0.
        let [w1, w2] = stable_quadratic(a2, q, a0);
        [
            MajoranaStar::from_homogeneous(w1, one),
            MajoranaStar::from_homogeneous(w2, one),
        ]
    };
    Ok(Constellation { stars })
}

/// Normalized symmetrization of `|u₁⟩⊗|u₂⟩`.
pub fn state_from_stars(c: &Constellation) -> SymmetricState {
    let [u, v] = c.stars.map(|s| s.spinor());
    let amps = [u[0] * v[0], (u[0] * v[1] + u[1] * v[0]) * FRAC_1_SQRT_2, u[1] * v[1]];
    // Never zero: the symmetric projection of a product state has norm ≥ 1/√2.
    SymmetricState::normalized(amps).expect("symmetrized product state is nonzero")
}

/// `C = |2a₀a₂ − a₁²|`
pub fn concurrence(state: &SymmetricState) -> f64 {
    let [a0, a1, a2] = state.amps;
    (2.0 * a0 * a2 - a1 * a1).norm().min(1.0)
}

/// Concurrence `|ψᵀ(σ_y⊗σ_y)ψ|` on the two-qubit vector.
pub fn concurrence_two_qubit(state: &SymmetricState) -> f64 {
    let psi = state.two_qubit_vector();
    let p = [-1.0, 1.0, 1.0, -1.0];
    (0..4).map(|k| psi[k] * p[k] * psi[3 - k]).sum::<Complex64>().norm()
}

/// Euclidean distance between the stars' unit vectors.
pub fn chordal_distance(c: &Constellation) -> f64 {
    dist(c.stars[0].unit_vector(), c.stars[1].unit_vector()).clamp(0.0, 2.0)
}

/// `C = d²/(8 − d²)`
pub fn concurrence_from_distance(d: f64) -> f64 {
    let d2 = d * d;
    d2 / (8.0 - d2)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphereSample {
    pub theta: f64,
    pub phi: f64,
    pub entropy: f64,
}

/// Linear entropy on `θᵢ = iπ/(n_θ−1)`, `φⱼ = 2πj/n_φ`, `θ` outer.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereGrid {
    pub n_theta: usize,
    pub n_phi: usize,
    pub samples: Vec<SphereSample>,
}

impl SphereGrid {
    pub fn at(&self, i: usize, j: usize) -> &SphereSample {
        &self.samples[i * self.n_phi + j]
    }

    /// Trapezoid rule in `θ` with the `sin θ` Jacobian, uniform in `φ`.
    pub fn area_weighted_mean(&self) -> f64 {
        let mut num = 0.0;
        let mut den = 0.0;
        for i in 0..self.n_theta {
            let edge = if i == 0 || i + 1 == self.n_theta { 0.5 } else { 1.0 };
            let theta = self.at(i, 0).theta;
            let w = edge * theta.sin();
            let row: f64 = (0..self.n_phi).map(|j| self.at(i, j).entropy).sum();
            num += w * row;
            den += w * self.n_phi as f64;
        }
        if den == 0.0 {
            0.0
        } else {
            num / den
        }
    }

    /// Grid index pair of the largest value (first in θ-major order on ties).
    pub fn argmax(&self) -> (usize, usize) {
        let mut best = 0;
        for (k, s) in self.samples.iter().enumerate() {
            if s.entropy > self.samples[best].entropy {
                best = k;
            }
        }
        (best / self.n_phi, best % self.n_phi)
    }

    /// Value at the grid node closest to the antipode of node `(i, j)`.
    pub fn antipode_value(&self, i: usize, j: usize) -> f64 {
        let s = self.at(i, j);
        let target = MajoranaStar::canonical(PI - s.theta, s.phi + PI).unit_vector();
        self.samples
            .iter()
            .min_by(|a, b| {
                let da = dist(MajoranaStar::canonical(a.theta, a.phi).unit_vector(), target);
                let db = dist(MajoranaStar::canonical(b.theta, b.phi).unit_vector(), target);
                da.total_cmp(&db)
            })
            .expect("non-empty grid")
            .entropy
    }
}

pub fn entropy_sphere(g: &SymmetricGate, n_theta: usize, n_phi: usize) -> Result<SphereGrid> {
    if n_theta < 2 || n_phi < 2 {
        return Err(SymgateError::InvalidResolution {
            resolution: n_theta.min(n_phi),
            minimum: 2,
        });
    }
    let kernel = EntropyKernel::new(g)?;
    let rows: Vec<Result<Vec<SphereSample>>> = (0..n_theta)
        .into_par_iter()
        .map(|i| {
            let theta = if i + 1 == n_theta { PI } else { i as f64 * PI / (n_theta - 1) as f64 };
            (0..n_phi)
                .map(|j| {
                    let phi = j as f64 * TAU / n_phi as f64;
                    Ok(SphereSample {
                        theta,
                        phi,
                        entropy: kernel.entropy(theta, phi)?,
                    })
                })
                .collect()
        })
        .collect();
    let mut samples = Vec::with_capacity(n_theta * n_phi);
    for row in rows {
        samples.extend(row?);
    }
    Ok(SphereGrid { n_theta, n_phi, samples })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates::{gate_from_point, BasisTag, GeometricPoint};
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn star(theta: f64, phi: f64) -> MajoranaStar {
        MajoranaStar::new(theta, phi).unwrap()
    }

    #[test]
    fn pole_states() {
        let s = stars_of(&SymmetricState::new([c(1.0), c(0.0), c(0.0)]).unwrap()).unwrap();
        assert_eq!(s, Constellation::new(star(0.0, 0.0), star(0.0, 0.0)));
        let s = stars_of(&SymmetricState::new([c(0.0), c(0.0), c(1.0)]).unwrap()).unwrap();
        assert_eq!(s, Constellation::new(star(PI, 0.0), star(PI, 0.0)));
        let s = stars_of(&SymmetricState::new([c(0.0), c(1.0), c(0.0)]).unwrap()).unwrap();
        assert_eq!(s, Constellation::new(star(0.0, 0.0), star(PI, 0.0)));
    }

    #[test]
    fn bell_state_stars() {
        let s = FRAC_1_SQRT_2;
        let state = SymmetricState::new([c(s), c(0.0), c(s)]).unwrap();
        let stars = stars_of(&state).unwrap();
        let expected = Constellation::new(star(FRAC_PI_2, FRAC_PI_2), star(FRAC_PI_2, 3.0 * FRAC_PI_2));
        assert!(stars.approx_eq(&expected, 1e-12));
        assert!((concurrence(&state) - 1.0).abs() < 1e-15);
        assert!((concurrence_two_qubit(&state) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn state_from_stars_examples() {
        let a = state_from_stars(&Constellation::new(star(0.0, 0.0), star(0.0, 0.0)));
        assert!(a.fidelity(&SymmetricState::new([c(1.0), c(0.0), c(0.0)]).unwrap()) > 1.0 - 1e-15);
        let b = state_from_stars(&Constellation::new(star(0.0, 0.0), star(PI, 0.0)));
        assert!(b.fidelity(&SymmetricState::new([c(0.0), c(1.0), c(0.0)]).unwrap()) > 1.0 - 1e-15);
    }

    #[test]
    fn concurrence_and_distance_examples() {
        let right_angle = Constellation::new(star(0.0, 0.0), star(FRAC_PI_2, 0.0));
        assert!((chordal_distance(&right_angle) - SQRT_2).abs() < 1e-15);
        assert!((concurrence(&state_from_stars(&right_angle)) - 1.0 / 3.0).abs() < 1e-12);
        assert_eq!(concurrence_from_distance(0.0), 0.0);
        assert_eq!(concurrence_from_distance(2.0), 1.0);
        let same = Constellation::new(star(1.0, 2.0), star(1.0, 2.0));
        assert_eq!(chordal_distance(&same), 0.0);
        assert_eq!(chordal_distance(&Constellation::new(star(0.0, 0.0), star(PI, 0.0))), 2.0);
    }

    #[test]
    fn validation() {
        assert!(matches!(
            SymmetricState::normalized([c(0.0); 3]),
            Err(SymgateError::ZeroState)
        ));
        assert!(matches!(
            SymmetricState::new([c(1.0), c(1.0), c(0.0)]),
            Err(SymgateError::NotNormalized { .. })
        ));
        assert!(MajoranaStar::new(4.0, 0.0).is_err());
    }

    #[test]
    fn sphere_grid_shape_and_identity() {
        let g = entropy_sphere(&SymmetricGate::identity(BasisTag::Spin1), 4, 4).unwrap();
        assert_eq!(g.samples.len(), 16);
        assert!(g.samples.iter().all(|s| s.entropy == 0.0));
        assert_eq!(g.at(3, 0).theta, PI);
        assert_eq!(g.at(0, 1).phi, FRAC_PI_2);
        assert!(entropy_sphere(&SymmetricGate::identity(BasisTag::Spin1), 1, 4).is_err());
    }

    #[test]
    fn max_ep_sphere_mean() {
        let g = gate_from_point(GeometricPoint::new(-FRAC_PI_3, 0.0, FRAC_PI_3));
        let grid = entropy_sphere(&g, 91, 180).unwrap();
        assert!((grid.area_weighted_mean() - 0.3).abs() < 0.005);
    }
}
