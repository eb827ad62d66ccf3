//! Entangling power, perfect-entangler classification and the chamber
//! fraction of perfect entanglers.

use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2, TAU};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Result, SymgateError};
use crate::gates::{embed_reducible, gate_from_point, BasisTag, GeometricPoint, SymmetricGate};
use crate::invariants::{
    abs_g_from_point, eigenphases_of_m, invariant_g, point_from_gate, reduce_phases, ChamberCoords,
    EigenPhaseTriple, WeylGeometry,
};
use crate::numerics::{MeanAccumulator, SphereSampler};

/// Default classification tolerance.
pub const DEFAULT_TOL: f64 = 1e-9;
/// Maximum entangling power of a symmetric gate.
pub const EP_MAX: f64 = 0.3;
/// Entangling power of the weakest perfect entangler.
pub const EP_PERFECT_MIN: f64 = 4.0 / 15.0;
/// Fixed shard count for Monte Carlo runs.
pub const MC_SHARDS: u64 = 8;
pub const MC_MIN_SAMPLES: usize = 100;
pub const FRACTION_MIN_SAMPLES: usize = 10_000;

const CROSS_CHECK_TOL: f64 = 1e-10;
/// Below this the linear entropy is reported as exactly zero.
const ENTROPY_FLOOR: f64 = 1e-14;
/// Route disagreement closer than this to the hull boundary is not an error.
const MISMATCH_BAND: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EpMethod {
    ClosedForm,
    MonteCarlo,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EpResult {
    pub ep: f64,
    pub method: EpMethod,
    pub n_samples: usize,
    pub std_error: f64,
}

impl EpResult {
    fn closed(ep: f64) -> Self {
        Self {
            ep,
            method: EpMethod::ClosedForm,
            n_samples: 0,
            std_error: 0.0,
        }
    }
}

/// `ep = (3/10)(1 − |G|)`
pub fn ep_from_abs_g(abs_g: f64) -> f64 {
    EP_MAX * (1.0 - abs_g)
}

fn ep_sine_form(c: GeometricPoint) -> f64 {
    let s = (c.c1 - c.c2).sin().powi(2) + (c.c2 - c.c3).sin().powi(2) + (c.c3 - c.c1).sin().powi(2);
    2.0 / 15.0 * s
}

/// Evaluates the `|G|` form and the sine-sum form and insists they agree.
pub fn ep_closed_form(c: GeometricPoint) -> Result<EpResult> {
    let via_g = ep_from_abs_g(abs_g_from_point(c));
    let via_sines = ep_sine_form(c);
    if (via_g - via_sines).abs() > CROSS_CHECK_TOL {
        return Err(SymgateError::InternalMismatch {
            what: "closed-form entangling power",
            lhs: via_g,
            rhs: via_sines,
        });
    }
    Ok(EpResult::closed(via_g))
}

/// Closed-form entangling power of a gate, from its m-matrix.
pub fn ep_of_gate(g: &SymmetricGate) -> Result<EpResult> {
    Ok(EpResult::closed(ep_from_abs_g(invariant_g(g)?.abs_g)))
}

fn check_angles(theta: f64, phi: f64) -> Result<()> {
    if !(0.0..=PI).contains(&theta) {
        return Err(SymgateError::InvalidAngle { name: "theta", value: theta });
    }
    if !(0.0..TAU).contains(&phi) {
        return Err(SymgateError::InvalidAngle { name: "phi", value: phi });
    }
    Ok(())
}

/// `|u⟩ = (cos θ/2, e^{iφ} sin θ/2)`
fn spinor(theta: f64, phi: f64) -> [Complex64; 2] {
    let (s, c) = (theta / 2.0).sin_cos();
    [Complex64::new(c, 0.0), Complex64::from_polar(s, phi)]
}

fn snap_entropy(e: f64) -> f64 {
    if e < ENTROPY_FLOOR {
        0.0
    } else {
        e
    }
}

/// Gate data reused across many sphere points.
#[derive(Debug, Clone)]
pub struct EntropyKernel {
    /// Full 4×4 embedding, row-major.
    v: [[Complex64; 4]; 4],
    /// Bell-basis 3×3 block, row-major.
    ub: [[Complex64; 3]; 3],
    /// `CompSym` 3×3 block, row-major.
    us: [[Complex64; 3]; 3],
}

impl EntropyKernel {
    pub fn new(g: &SymmetricGate) -> Result<Self> {
        g.matrix().ensure_unitary()?;
        let v4 = embed_reducible(g);
        let bell = g.to_basis(BasisTag::BellSym);
        let sym = g.to_basis(BasisTag::CompSym);
        let mut v = [[Complex64::ZERO; 4]; 4];
        let mut ub = [[Complex64::ZERO; 3]; 3];
        let mut us = [[Complex64::ZERO; 3]; 3];
        for i in 0..4 {
            for j in 0..4 {
                v[i][j] = v4.matrix()[(i, j)];
                if i < 3 && j < 3 {
                    ub[i][j] = bell.matrix()[(i, j)];
                    us[i][j] = sym.matrix()[(i, j)];
                }
            }
        }
        Ok(Self { v, ub, us })
    }

    /// Output state `V|u,u⟩` in the computational basis.
    pub fn output_state(&self, theta: f64, phi: f64) -> [Complex64; 4] {
        let u = spinor(theta, phi);
        let input = [u[0] * u[0], u[0] * u[1], u[1] * u[0], u[1] * u[1]];
        let mut out = [Complex64::ZERO; 4];
        for (i, row) in self.v.iter().enumerate() {
            out[i] = row.iter().zip(input.iter()).map(|(a, b)| a * b).sum();
        }
        out
    }

    /// Partial trace over the second qubit of the 4×4 pure state.
    pub fn entropy_partial_trace(&self, theta: f64, phi: f64) -> f64 {
        let psi = self.output_state(theta, phi);
        let mut rho = [[Complex64::ZERO; 2]; 2];
        for (a, row) in rho.iter_mut().enumerate() {
            for (b, cell) in row.iter_mut().enumerate() {
                *cell = (0..2).map(|k| psi[2 * a + k] * psi[2 * b + k].conj()).sum();
            }
        }
        let purity: f64 = (0..2)
            .flat_map(|a| (0..2).map(move |b| (a, b)))
            .map(|(a, b)| (rho[a][b] * rho[b][a]).re)
            .sum();
        1.0 - purity
    }

    /// Bell coordinates of `|u,u⟩` (up to the phase `e^{iφ}`) pushed through
    /// the Bell block, then the reduced purity from the output amplitudes
    /// `A = 2ψ₀₀`, `B = 2ψ₀₁`, `C = 2ψ₁₁`.
    pub fn entropy_closed_coefficients(&self, theta: f64, phi: f64) -> f64 {
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        let a = Complex64::new(cp, -sp * ct);
        let b = Complex64::new(0.0, st);
        let c = Complex64::new(cp * ct, -sp);
        let x = [a * FRAC_1_SQRT_2, b * FRAC_1_SQRT_2, Complex64::i() * c * FRAC_1_SQRT_2];
        let y: Vec<Complex64> = self
            .ub
            .iter()
            .map(|row| row.iter().zip(x.iter()).map(|(m, v)| m * v).sum())
            .collect();
        let i = Complex64::i();
        let big_a = SQRT_2 * (y[0] - i * y[2]);
        let big_b = -i * SQRT_2 * y[1];
        let big_c = SQRT_2 * (y[0] + i * y[2]);
        let (na, nb, nc) = (big_a.norm_sqr(), big_b.norm_sqr(), big_c.norm_sqr());
        let cross = big_a * big_b.conj() + big_b * big_c.conj();
        let purity = ((na + nb).powi(2) + (nb + nc).powi(2) + 2.0 * cross.norm_sqr()) / 16.0;
        1.0 - purity
    }

    /// Linear entropy by both routes, checked against each other.
    pub fn entropy(&self, theta: f64, phi: f64) -> Result<f64> {
        let generic = self.entropy_partial_trace(theta, phi);
        let closed = self.entropy_closed_coefficients(theta, phi);
        if (generic - closed).abs() > CROSS_CHECK_TOL {
            return Err(SymgateError::InternalMismatch {
                what: "linear entropy",
                lhs: generic,
                rhs: closed,
            });
        }
        Ok(snap_entropy(generic))
    }

    /// `C = 2|ψ₀₀ψ₁₁ − ψ₀₁ψ₁₀|`, computed on the symmetric block.
    pub fn concurrence(&self, theta: f64, phi: f64) -> f64 {
        let u = spinor(theta, phi);
        let input = [u[0] * u[0], SQRT_2 * u[0] * u[1], u[1] * u[1]];
        let mut p = [Complex64::ZERO; 3];
        for (i, row) in self.us.iter().enumerate() {
            p[i] = row.iter().zip(input.iter()).map(|(a, b)| a * b).sum();
        }
        (2.0 * p[0] * p[2] - p[1] * p[1]).norm().min(1.0)
    }
}

/// Linear entropy `E = 1 − Tr ρ₁²` of `g|u,u⟩` for the spin coherent
/// direction `(θ, φ)`.
pub fn linear_entropy_after(g: &SymmetricGate, theta: f64, phi: f64) -> Result<f64> {
    check_angles(theta, phi)?;
    EntropyKernel::new(g)?.entropy(theta, phi)
}

/// Concurrence of `g|u,u⟩`, in `[0, 1]`.
pub fn concurrence_after(g: &SymmetricGate, theta: f64, phi: f64) -> Result<f64> {
    check_angles(theta, phi)?;
    Ok(EntropyKernel::new(g)?.concurrence(theta, phi))
}

/// Concurrence through the full 4×4 state and `P = −σ_y⊗σ_y`:
/// `|ψᵀ P ψ|`. Slower than [`concurrence_after`]; kept as a cross-check.
pub fn concurrence_after_full(g: &SymmetricGate, theta: f64, phi: f64) -> Result<f64> {
    check_angles(theta, phi)?;
    let psi = EntropyKernel::new(g)?.output_state(theta, phi);
    // −σ_y⊗σ_y is the antidiagonal (−1, 1, 1, −1).
    let p = [-1.0, 1.0, 1.0, -1.0];
    let v: Complex64 = (0..4).map(|k| psi[k] * p[k] * psi[3 - k]).sum();
    Ok(v.norm())
}

/// Mean linear entropy over `n` uniform sphere points, split across
/// [`MC_SHARDS`] independent ChaCha streams and merged in shard order.
pub fn ep_monte_carlo(g: &SymmetricGate, n: usize, seed: u64) -> Result<EpResult> {
    if n < MC_MIN_SAMPLES {
        return Err(SymgateError::InvalidCount {
            count: n,
            minimum: MC_MIN_SAMPLES,
        });
    }
    let kernel = EntropyKernel::new(g)?;
    let partials: Vec<Result<MeanAccumulator>> = shard_sizes(n)
        .into_par_iter()
        .enumerate()
        .map(|(shard, size)| {
            let mut sampler = SphereSampler::with_stream(seed, shard as u64);
            let mut acc = MeanAccumulator::default();
            for _ in 0..size {
                let p = sampler.next_point();
                acc.push(kernel.entropy(p.theta, p.phi)?);
            }
            Ok(acc)
        })
        .collect();
    let mut total = MeanAccumulator::default();
    for part in partials {
        total.merge(&part?);
    }
    Ok(EpResult {
        ep: total.mean(),
        method: EpMethod::MonteCarlo,
        n_samples: n,
        std_error: total.std_error(),
    })
}

fn shard_sizes(n: usize) -> Vec<usize> {
    let k = MC_SHARDS as usize;
    (0..k).map(|i| n / k + usize::from(i < n % k)).collect()
}

/// Best concurrence found on a `181 × 361` sphere grid, polished by pattern
/// search from the best grid cells.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaxConcurrence {
    pub value: f64,
    pub theta: f64,
    pub phi: f64,
}

pub const ORACLE_N_THETA: usize = 181;
pub const ORACLE_N_PHI: usize = 361;

pub fn max_concurrence(g: &SymmetricGate) -> Result<MaxConcurrence> {
    let kernel = EntropyKernel::new(g)?;
    let mut grid: Vec<MaxConcurrence> = Vec::with_capacity(ORACLE_N_THETA * ORACLE_N_PHI);
    for i in 0..ORACLE_N_THETA {
        let theta = i as f64 * PI / (ORACLE_N_THETA - 1) as f64;
        for j in 0..ORACLE_N_PHI {
            let phi = j as f64 * TAU / ORACLE_N_PHI as f64;
            grid.push(MaxConcurrence {
                value: kernel.concurrence(theta, phi),
                theta,
                phi,
            });
        }
    }
    grid.sort_by(|a, b| b.value.total_cmp(&a.value));
    let best = grid
        .iter()
        .take(4)
        .map(|start| polish(&kernel, *start))
        .max_by(|a, b| a.value.total_cmp(&b.value))
        .expect("non-empty grid");
    Ok(best)
}

fn polish(kernel: &EntropyKernel, start: MaxConcurrence) -> MaxConcurrence {
    let mut best = start;
    let mut step = PI / 180.0;
    while step > 1e-10 {
        let mut improved = false;
        for (dt, dp) in [(1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0)] {
            let theta = (best.theta + dt * step).clamp(0.0, PI);
            let phi = (best.phi + dp * step).rem_euclid(TAU);
            let value = kernel.concurrence(theta, phi);
            if value > best.value {
                best = MaxConcurrence { value, theta, phi };
                improved = true;
            }
        }
        if !improved {
            step /= 2.0;
        }
    }
    best
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EntanglerClass {
    pub is_perfect: bool,
    pub on_boundary: bool,
    /// `cos(g_max/2)` where `g_max` is the widest arc between eigenphases of
    /// `m`: the signed distance from the origin to the nearest hull edge,
    /// positive inside.
    pub hull_margin: f64,
}

fn cyclic_gaps(mu: EigenPhaseTriple) -> [f64; 3] {
    let [a, b, c] = mu.to_array();
    [b - a, c - b, TAU - (c - a)]
}

fn distinct_points(mu: EigenPhaseTriple, tol: f64) -> usize {
    let gaps = cyclic_gaps(mu);
    let coincident = gaps.iter().filter(|g| g.sin().abs() <= tol && g.cos() > 0.0).count();
    match coincident {
        0 => 3,
        1 => 2,
        _ => 1,
    }
}

/// Origin-in-triangle test on the unit-circle points `e^{iμ_k}`: with the
/// points in counter-clockwise order, each signed area `½ sin(g_k)` of the
/// fan around the origin must be nonnegative.
fn hull_contains_origin(mu: EigenPhaseTriple, tol: f64) -> bool {
    let gaps = cyclic_gaps(mu);
    match distinct_points(mu, tol) {
        1 => false,
        2 => {
            let g = gaps.iter().copied().fold(0.0, f64::max);
            (g - PI).abs() <= tol
        }
        _ => gaps.iter().all(|g| g.sin() >= -tol),
    }
}

fn chamber_condition(coords: ChamberCoords, tol: f64) -> bool {
    let phi1 = PI * (coords.s1 + coords.s2);
    let phi3 = PI * (coords.s2 - coords.s1);
    phi1 <= PI + tol && phi3 <= -PI + phi1 + tol
}

fn classify_phases(mu: EigenPhaseTriple, tol: f64) -> Result<EntanglerClass> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(SymgateError::InvalidAngle { name: "tol", value: tol });
    }
    let g_max = cyclic_gaps(mu).iter().copied().fold(0.0, f64::max);
    let hull_margin = (g_max / 2.0).cos();
    let hull = hull_contains_origin(mu, tol);
    let chamber = chamber_condition(reduce_phases(mu).coords, tol);
    if hull != chamber && hull_margin.abs() > MISMATCH_BAND {
        return Err(SymgateError::ClassifierMismatch {
            hull,
            chamber,
            margin: hull_margin,
        });
    }
    let on_boundary = hull_margin.abs() <= tol;
    Ok(EntanglerClass {
        is_perfect: hull || on_boundary,
        on_boundary,
        hull_margin,
    })
}

pub fn classify_point(c: GeometricPoint, tol: f64) -> Result<EntanglerClass> {
    classify_phases(EigenPhaseTriple::from_unsorted(c.m_phases()), tol)
}

pub fn classify_gate(g: &SymmetricGate, tol: f64) -> Result<EntanglerClass> {
    classify_phases(eigenphases_of_m(g)?, tol)
}

/// Everything reported for a single gate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Analysis {
    pub point: GeometricPoint,
    pub coords: ChamberCoords,
    pub abs_g: f64,
    pub ep: f64,
    pub class: EntanglerClass,
}

pub fn analyze_gate(g: &SymmetricGate) -> Result<Analysis> {
    analyze_gate_with(g, DEFAULT_TOL)
}

pub fn analyze_point(c: GeometricPoint) -> Result<Analysis> {
    analyze_point_with(c, DEFAULT_TOL)
}

/// [`analyze_gate`] with an explicit boundary tolerance.
pub fn analyze_gate_with(g: &SymmetricGate, tol: f64) -> Result<Analysis> {
    let point = point_from_gate(g)?;
    let abs_g = invariant_g(g)?.abs_g;
    Ok(Analysis {
        point,
        coords: WeylGeometry::coords(point),
        abs_g,
        ep: ep_from_abs_g(abs_g),
        class: classify_gate(g, tol)?,
    })
}

pub fn analyze_point_with(c: GeometricPoint, tol: f64) -> Result<Analysis> {
    let mut a = analyze_gate_with(&gate_from_point(c), tol)?;
    // Same class, but the closed form avoids an eigensolve on the ep value.
    a.ep = ep_closed_form(c)?.ep;
    a.abs_g = abs_g_from_point(c);
    Ok(a)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FractionMode {
    Analytic,
    MonteCarlo,
}

/// Fraction of the triangle `0 ≤ s2 ≤ s1 ≤ 1` occupied by perfect
/// entanglers.
pub fn chamber_fraction_perfect(mode: FractionMode, n: usize, seed: u64) -> Result<f64> {
    match mode {
        FractionMode::Analytic => {
            // ∫_{1/2}^{1} (1 − s1) ds1 over the triangle area 1/2.
            let region = 0.5 * 0.5 * 0.5;
            let triangle = 0.5;
            Ok(region / triangle)
        }
        FractionMode::MonteCarlo => {
            if n < FRACTION_MIN_SAMPLES {
                return Err(SymgateError::InvalidCount {
                    count: n,
                    minimum: FRACTION_MIN_SAMPLES,
                });
            }
            let counts: Vec<Result<usize>> = shard_sizes(n)
                .into_par_iter()
                .enumerate()
                .map(|(shard, size)| {
                    let mut sampler = SphereSampler::with_stream(seed, shard as u64);
                    let mut hits = 0;
                    for _ in 0..size {
                        let coords = sample_triangle(&mut sampler);
                        if classify_point(WeylGeometry::point(coords), DEFAULT_TOL)?.is_perfect {
                            hits += 1;
                        }
                    }
                    Ok(hits)
                })
                .collect();
            let mut hits = 0usize;
            for c in counts {
                hits += c?;
            }
            Ok(hits as f64 / n as f64)
        }
    }
}

/// Uniform point of `0 ≤ s2 ≤ s1 ≤ 1`: the ordered pair of two uniforms.
pub fn sample_triangle(sampler: &mut SphereSampler) -> ChamberCoords {
    let (u, v) = sampler.next_unit_pair();
    ChamberCoords {
        s1: u.max(v),
        s2: u.min(v),
    }
}
