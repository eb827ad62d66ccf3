//! Eigenphases of small unitary matrices and Hermitian exponentials.
//!
//! Eigenvalues come from the characteristic polynomial (closed form for
//! degree 2 and 3, Durand-Kerner for degree 4), followed by a shifted
//! inverse-iteration pass whose Rayleigh quotient restores full precision
//! even for repeated eigenvalues. Tight clusters that the polynomial route
//! cannot resolve fall back to a complex Schur decomposition.

use std::f64::consts::PI;

use nalgebra::{DVector, SymmetricEigen};
use num_complex::Complex64;

use super::matrix::{ComplexMatrix, HERMITIAN_TOL, UNITARY_TOL};
use crate::error::{Result, SymgateError};

/// Eigenvalue moduli of a unitary matrix must lie within this distance of 1.
pub const MODULUS_TOL: f64 = 1e-9;

/// Largest accepted `σ_min(M − λI)` (the distance from `λ` to the spectrum
/// of a normal matrix) and trace mismatch before falling back to Schur.
const BACKWARD_TOL: f64 = 1e-10;

/// Phases closer than this to `-π` are reported as `+π`.
const PHASE_TIE_TOL: f64 = 1e-12;

/// Wraps an angle into `(-π, π]`.
pub fn canonical_phase(angle: f64) -> f64 {
    let mut x = angle.rem_euclid(2.0 * PI);
    if x > PI {
        x -= 2.0 * PI;
    }
    if x <= -PI + PHASE_TIE_TOL {
        x += 2.0 * PI;
    }
    x
}

/// Eigenphases sorted ascending, each in `(-π, π]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseList(Vec<f64>);

impl PhaseList {
    pub fn new(mut phases: Vec<f64>) -> Self {
        for p in phases.iter_mut() {
            *p = canonical_phase(*p);
        }
        phases.sort_by(f64::total_cmp);
        Self(phases)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Product of `e^{iφ}` over the list.
    pub fn product(&self) -> Complex64 {
        self.0.iter().map(|&p| Complex64::from_polar(1.0, p)).product()
    }
}

/// Coefficients `[a1, .., an]` of `det(λI - A) = λⁿ + a1 λⁿ⁻¹ + .. + an`
/// by the Faddeev-LeVerrier recursion.
fn characteristic_coefficients(a: &ComplexMatrix) -> Vec<Complex64> {
    let n = a.dim();
    let ident = ComplexMatrix::identity(n);
    let mut coeffs = Vec::with_capacity(n);
    let mut m = ident.clone();
    for k in 1..=n {
        let am = a * &m;
        let ck = -am.trace() / k as f64;
        coeffs.push(ck);
        m = ComplexMatrix::from_fn(n, |i, j| am[(i, j)] + if i == j { ck } else { Complex64::ZERO });
    }
    coeffs
}

fn quadratic_roots(b: Complex64, c: Complex64) -> [Complex64; 2] {
    // z² + b z + c, avoiding cancellation between -b and the root.
    let disc = (b * b - 4.0 * c).sqrt();
    let plus = b + disc;
    let minus = b - disc;
    let q = if plus.norm() >= minus.norm() { -0.5 * plus } else { -0.5 * minus };
    if q.norm() == 0.0 {
        [Complex64::ZERO, Complex64::ZERO]
    } else {
        [q, c / q]
    }
}

fn cubic_roots(a: Complex64, b: Complex64, c: Complex64) -> [Complex64; 3] {
    // λ³ + aλ² + bλ + c, depressed by λ = y - a/3.
    let p = b - a * a / 3.0;
    let q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    let disc = (q * q / 4.0 + p * p * p / 27.0).sqrt();
    let u3_plus = -q / 2.0 + disc;
    let u3_minus = -q / 2.0 - disc;
    let u3 = if u3_plus.norm() >= u3_minus.norm() { u3_plus } else { u3_minus };
    let shift = a / 3.0;
    if u3.norm() == 0.0 {
        return [-shift; 3];
    }
    let u = u3.powf(1.0 / 3.0);
    let omega = Complex64::from_polar(1.0, 2.0 * PI / 3.0);
    let mut roots = [Complex64::ZERO; 3];
    let mut w = Complex64::ONE;
    for root in roots.iter_mut() {
        let uk = u * w;
        *root = uk - p / (3.0 * uk) - shift;
        w *= omega;
    }
    roots
}

fn durand_kerner(coeffs: &[Complex64]) -> Vec<Complex64> {
    let n = coeffs.len();
    let eval = |z: Complex64| coeffs.iter().fold(Complex64::ONE, |acc, &c| acc * z + c);
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32)).collect();
    for _ in 0..500 {
        let mut delta: f64 = 0.0;
        for i in 0..n {
            let mut denom = Complex64::ONE;
            for j in 0..n {
                if i != j {
                    denom *= roots[i] - roots[j];
                }
            }
            if denom.norm() == 0.0 {
                denom = Complex64::new(1e-300, 0.0);
            }
            let step = eval(roots[i]) / denom;
            roots[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 {
            break;
        }
    }
    roots
}

fn polynomial_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    match coeffs.len() {
        2 => quadratic_roots(coeffs[0], coeffs[1]).to_vec(),
        3 => cubic_roots(coeffs[0], coeffs[1], coeffs[2]).to_vec(),
        _ => durand_kerner(coeffs),
    }
}

/// Shifted inverse iteration followed by a Rayleigh quotient. Falls back to
/// the unrefined estimate if the refined pair does not have a small residual.
fn refine_eigenvalue(m: &ComplexMatrix, estimate: Complex64) -> Complex64 {
    let n = m.dim();
    let a = m.as_nalgebra();
    let mut x = DVector::from_fn(n, |i, _| Complex64::new(1.0 + 0.37 * i as f64, 0.21 * i as f64 - 0.05));
    let nudge = Complex64::new(0.6e-12, 0.8e-12);
    let mut shift = estimate + nudge;
    for _attempt in 0..3 {
        let shifted = a - nalgebra::DMatrix::from_diagonal_element(n, n, shift);
        let lu = shifted.lu();
        let mut ok = true;
        for _ in 0..3 {
            match lu.solve(&x) {
                Some(y) => {
                    let norm = y.norm();
                    if !norm.is_finite() || norm == 0.0 {
                        ok = false;
                        break;
                    }
                    x = y / Complex64::new(norm, 0.0);
                }
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            let ax = a * &x;
            let rq = x.dotc(&ax) / x.dotc(&x);
            let residual = (&ax - &x * rq).norm();
            if residual < 1e-8 {
                return rq;
            }
            return estimate;
        }
        shift += nudge * 1e3;
    }
    estimate
}

fn backward_error(m: &ComplexMatrix, values: &[Complex64]) -> f64 {
    let n = m.dim();
    let a = m.as_nalgebra();
    let trace = (values.iter().sum::<Complex64>() - m.trace()).norm();
    values.iter().fold(trace, |acc, &z| {
        let shifted = a - nalgebra::DMatrix::from_diagonal_element(n, n, z);
        let sigma = shifted.singular_values().min();
        if sigma.is_finite() {
            acc.max(sigma)
        } else {
            f64::INFINITY
        }
    })
}

fn schur_eigenvalues(m: &ComplexMatrix) -> Vec<Complex64> {
    let (_, t) = m.as_nalgebra().clone().schur().unpack();
    (0..m.dim()).map(|i| t[(i, i)]).collect()
}

/// Eigenvalues of a unitary matrix (dimension ≤ 4), in no particular order.
pub fn unitary_eigenvalues(m: &ComplexMatrix) -> Result<Vec<Complex64>> {
    m.ensure_unitary()?;
    let coeffs = characteristic_coefficients(m);
    let values: Vec<Complex64> = polynomial_roots(&coeffs)
        .into_iter()
        .map(|r| refine_eigenvalue(m, r))
        .collect();
    let values = if backward_error(m, &values) > BACKWARD_TOL {
        schur_eigenvalues(m)
    } else {
        values
    };
    let worst = values.iter().map(|z| (z.norm() - 1.0).abs()).fold(0.0, f64::max);
    if worst > MODULUS_TOL {
        return Err(SymgateError::NotUnitary { residual: worst });
    }
    Ok(values)
}

/// Arguments of the eigenvalues of a unitary matrix, each in `(-π, π]`,
/// sorted ascending.
pub fn unitary_eigenphases(m: &ComplexMatrix) -> Result<PhaseList> {
    let values = unitary_eigenvalues(m)?;
    Ok(PhaseList::new(values.iter().map(|z| z.arg()).collect()))
}

/// `exp(-i H t)` for Hermitian `H`, via its spectral decomposition.
pub fn hermitian_expm(h: &ComplexMatrix, t: f64) -> Result<ComplexMatrix> {
    let residual = h.hermiticity_residual();
    if residual >= HERMITIAN_TOL {
        return Err(SymgateError::NotHermitian { residual });
    }
    let n = h.dim();
    let sym = (h.as_nalgebra() + h.as_nalgebra().adjoint()) * Complex64::new(0.5, 0.0);
    let eig = SymmetricEigen::new(sym);
    let q = &eig.eigenvectors;
    let phases = nalgebra::DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            Complex64::from_polar(1.0, -eig.eigenvalues[i] * t)
        } else {
            Complex64::ZERO
        }
    });
    let out = ComplexMatrix::from_nalgebra(q * phases * q.adjoint())?;
    debug_assert!(out.unitarity_residual() < UNITARY_TOL);
    Ok(out)
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(h: &ComplexMatrix) -> Result<Vec<f64>> {
    let residual = h.hermiticity_residual();
    if residual >= HERMITIAN_TOL {
        return Err(SymgateError::NotHermitian { residual });
    }
    let sym = (h.as_nalgebra() + h.as_nalgebra().adjoint()) * Complex64::new(0.5, 0.0);
    let mut values: Vec<f64> = SymmetricEigen::new(sym).eigenvalues.iter().copied().collect();
    values.sort_by(f64::total_cmp);
    Ok(values)
}
