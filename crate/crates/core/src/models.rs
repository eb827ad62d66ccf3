//! Time-parameterized symmetric gates from three interacting models: the
//! anisotropic Heisenberg exchange, the three-level Lipkin-Meshkov-Glick
//! Hamiltonian and two cross-Kerr coupled modes.
//!
//! Couplings are angular frequencies and `t` is in inverse units, so every
//! product that reaches a phase is dimensionless.

use std::fmt;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::entangling::{classify_gate, ep_from_abs_g, DEFAULT_TOL};
use crate::error::{Result, SymgateError};
use crate::gates::{gate_from_point, BasisTag, GeometricPoint, SymmetricGate};
use crate::invariants::invariant_g;
use crate::numerics::{hermitian_expm, ComplexMatrix};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeisenbergParams {
    pub ix: f64,
    pub iy: f64,
    pub iz: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LmgParams {
    pub b: f64,
    pub g1: f64,
    pub g2: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossKerrParams {
    pub omega_a: f64,
    pub omega_b: f64,
    pub g_ck: f64,
}

impl CrossKerrParams {
    /// Equivalent LMG couplings: `B = ω_a − ω_b`, `g₁ = −g_ck`, `g₂ = 0`.
    pub fn as_lmg(&self) -> LmgParams {
        LmgParams {
            b: self.omega_a - self.omega_b,
            g1: -self.g_ck,
            g2: 0.0,
        }
    }
}

/// `diag(e^{i(Ix−Iy+Iz)t/2}, e^{i(Ix+Iy−Iz)t/2}, e^{i(−Ix+Iy+Iz)t/2})` in `BellSym`.
pub fn heisenberg_gate(p: &HeisenbergParams, t: f64) -> SymmetricGate {
    gate_from_point(GeometricPoint::new(p.ix * t, p.iy * t, p.iz * t))
}

/// `(2/15)[sin²(I_xy t) + sin²(I_yz t) + sin²(I_xz t)]`
pub fn heisenberg_ep(p: &HeisenbergParams, t: f64) -> f64 {
    let s = |a: f64, b: f64| ((a - b) * t).sin().powi(2);
    2.0 / 15.0 * (s(p.ix, p.iy) + s(p.iy, p.iz) + s(p.ix, p.iz))
}

/// The LMG Hamiltonian on `{|1,1⟩, |1,0⟩, |1,−1⟩}`.
pub fn lmg_hamiltonian(p: &LmgParams) -> ComplexMatrix {
    let r = |x: f64| Complex64::new(x, 0.0);
    let z = Complex64::ZERO;
    ComplexMatrix::from_rows(&[
        vec![r(p.b + p.g1 - p.g2 / 2.0), z, r(-p.g2 / 2.0)],
        vec![z, r(-p.g2), z],
        vec![r(-p.g2 / 2.0), z, r(-p.b + p.g1 - p.g2 / 2.0)],
    ])
    .expect("finite parameters")
}

/// `{−g₂, g₁ − g₂/2 − R, g₁ − g₂/2 + R}` with `R = √(B² + g₂²/4)`, unsorted.
pub fn lmg_eigenvalues(p: &LmgParams) -> [f64; 3] {
    let r = lmg_r(p);
    [-p.g2, p.g1 - p.g2 / 2.0 - r, p.g1 - p.g2 / 2.0 + r]
}

fn lmg_r(p: &LmgParams) -> f64 {
    p.b.hypot(p.g2 / 2.0)
}

/// `exp(−iHt)` taken to `BellSym` and su3-normalized.
pub fn lmg_gate(p: &LmgParams, t: f64) -> Result<SymmetricGate> {
    let u = hermitian_expm(&lmg_hamiltonian(p), t)?;
    Ok(SymmetricGate::new(u, BasisTag::Spin1)?
        .to_basis(BasisTag::BellSym)
        .su3_normalize())
}

/// The three readings of `|G|` for an LMG gate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LmgAbsGReport {
    /// With `G₁ = 1 − g₂² sin²(Rt)/(2R)`.
    pub linear_r: f64,
    /// With `G₁ = 1 − g₂² sin²(Rt)/(2R²)`, which matches the pipeline.
    pub fitted: f64,
    /// From the m-matrix of [`lmg_gate`]; authoritative.
    pub pipeline: f64,
    /// `linear_r − pipeline`
    pub discrepancy: f64,
}

fn lmg_abs_g_with(p: &LmgParams, t: f64, g1_factor: f64) -> f64 {
    let r = lmg_r(p);
    let g1 = if r == 0.0 {
        1.0
    } else {
        1.0 - p.g2 * p.g2 * (r * t).sin().powi(2) / g1_factor
    };
    (1.0 + 4.0 * g1 * (2.0 * (p.g1 + p.g2 / 2.0) * t).cos() + 4.0 * g1 * g1) / 9.0
}

pub fn lmg_abs_g_closed(p: &LmgParams, t: f64) -> Result<LmgAbsGReport> {
    let r = lmg_r(p);
    let linear_r = lmg_abs_g_with(p, t, 2.0 * r);
    let fitted = lmg_abs_g_with(p, t, 2.0 * r * r);
    let pipeline = invariant_g(&lmg_gate(p, t)?)?.abs_g;
    Ok(LmgAbsGReport {
        linear_r,
        fitted,
        pipeline,
        discrepancy: linear_r - pipeline,
    })
}

/// `(4/15) sin²(g_ck t)`
pub fn crosskerr_ep(p: &CrossKerrParams, t: f64) -> f64 {
    4.0 / 15.0 * (p.g_ck * t).sin().powi(2)
}

/// `exp(−iHt)` on the two-excitation block `{|2,0⟩, |1,1⟩, |0,2⟩}` of
/// `H = ω_a n_a + ω_b n_b + g_ck n_a n_b`, identified with `Spin1` and taken
/// to `BellSym`, su3-normalized.
pub fn crosskerr_gate(p: &CrossKerrParams, t: f64) -> Result<SymmetricGate> {
    let energies = [2.0 * p.omega_a, p.omega_a + p.omega_b + p.g_ck, 2.0 * p.omega_b];
    let diag = energies.map(|e| Complex64::from_polar(1.0, -e * t));
    Ok(SymmetricGate::new(ComplexMatrix::diagonal(&diag), BasisTag::Spin1)?
        .to_basis(BasisTag::BellSym)
        .su3_normalize())
}

/// `min_φ max |A − e^{iφ}B|` for the best-aligned global phase.
pub fn phase_distance(a: &SymmetricGate, b: &SymmetricGate) -> f64 {
    let b = b.to_basis(a.basis());
    let overlap = (&a.matrix().adjoint() * b.matrix()).trace();
    let phase = if overlap.norm() == 0.0 {
        Complex64::ONE
    } else {
        overlap.conj() / overlap.norm()
    };
    a.matrix().max_abs_diff(&b.matrix().scale(phase))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Model {
    Heisenberg(HeisenbergParams),
    Lmg(LmgParams),
    CrossKerr(CrossKerrParams),
}

impl Model {
    pub const NAMES: [&'static str; 3] = ["heisenberg", "lmg", "crosskerr"];
    pub const PRESETS: [&'static str; 3] = ["fig6a", "fig6b", "fig6c"];

    /// All couplings zero.
    pub fn by_name(name: &str) -> Result<Model> {
        match name {
            "heisenberg" => Ok(Model::Heisenberg(HeisenbergParams { ix: 0.0, iy: 0.0, iz: 0.0 })),
            "lmg" => Ok(Model::Lmg(LmgParams { b: 0.0, g1: 0.0, g2: 0.0 })),
            "crosskerr" => Ok(Model::CrossKerr(CrossKerrParams {
                omega_a: 0.0,
                omega_b: 0.0,
                g_ck: 0.0,
            })),
            other => Err(SymgateError::InvalidParameter(format!(
                "unknown model '{other}' (expected one of {})",
                Model::NAMES.join(", ")
            ))),
        }
    }

    /// Named parameter sets with `ω = 1`.
    pub fn preset(name: &str) -> Result<Model> {
        match name {
            "fig6a" => Ok(Model::Heisenberg(HeisenbergParams { ix: 1.0, iy: 0.0, iz: -1.0 })),
            "fig6b" => Ok(Model::Lmg(LmgParams { b: -3.5, g1: 2.0, g2: 4.0 })),
            "fig6c" => Ok(Model::CrossKerr(CrossKerrParams {
                omega_a: 1.0,
                omega_b: 0.0,
                g_ck: -2.0,
            })),
            other => Err(SymgateError::InvalidParameter(format!(
                "unknown preset '{other}' (expected one of {})",
                Model::PRESETS.join(", ")
            ))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Model::Heisenberg(_) => "heisenberg",
            Model::Lmg(_) => "lmg",
            Model::CrossKerr(_) => "crosskerr",
        }
    }

    pub fn param_names(&self) -> &'static [&'static str] {
        match self {
            Model::Heisenberg(_) => &["ix", "iy", "iz"],
            Model::Lmg(_) => &["b", "g1", "g2"],
            Model::CrossKerr(_) => &["omega_a", "omega_b", "g_ck"],
        }
    }

    pub fn set_param(&mut self, key: &str, value: f64) -> Result<()> {
        if !value.is_finite() {
            return Err(SymgateError::InvalidParameter(format!("{key} = {value} is not finite")));
        }
        let slot = match (self, key) {
            (Model::Heisenberg(p), "ix") => &mut p.ix,
            (Model::Heisenberg(p), "iy") => &mut p.iy,
            (Model::Heisenberg(p), "iz") => &mut p.iz,
            (Model::Lmg(p), "b") => &mut p.b,
            (Model::Lmg(p), "g1") => &mut p.g1,
            (Model::Lmg(p), "g2") => &mut p.g2,
            (Model::CrossKerr(p), "omega_a") => &mut p.omega_a,
            (Model::CrossKerr(p), "omega_b") => &mut p.omega_b,
            (Model::CrossKerr(p), "g_ck") => &mut p.g_ck,
            (m, k) => {
                return Err(SymgateError::InvalidParameter(format!(
                    "model {} has no parameter '{k}' (expected one of {})",
                    m.name(),
                    m.param_names().join(", ")
                )))
            }
        };
        *slot = value;
        Ok(())
    }

    pub fn gate(&self, t: f64) -> Result<SymmetricGate> {
        match self {
            Model::Heisenberg(p) => Ok(heisenberg_gate(p, t)),
            Model::Lmg(p) => lmg_gate(p, t),
            Model::CrossKerr(p) => crosskerr_gate(p, t),
        }
    }

    /// Closed-form ep where the model has one.
    pub fn closed_ep(&self, t: f64) -> Option<f64> {
        match self {
            Model::Heisenberg(p) => Some(heisenberg_ep(p, t)),
            Model::Lmg(_) => None,
            Model::CrossKerr(p) => Some(crosskerr_ep(p, t)),
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Model::Heisenberg(p) => write!(f, "heisenberg(ix={}, iy={}, iz={})", p.ix, p.iy, p.iz),
            Model::Lmg(p) => write!(f, "lmg(b={}, g1={}, g2={})", p.b, p.g1, p.g2),
            Model::CrossKerr(p) => write!(f, "crosskerr(omega_a={}, omega_b={}, g_ck={})", p.omega_a, p.omega_b, p.g_ck),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRecord {
    pub t: f64,
    pub ep: f64,
    pub abs_g: f64,
    pub perfect: bool,
    pub boundary: bool,
}

/// `n_steps` equally spaced times from `t_start` to `t_end` inclusive, each
/// run through gate → |G| → ep → classification.
pub fn sweep(model: &Model, t_start: f64, t_end: f64, n_steps: usize) -> Result<Vec<SweepRecord>> {
    if !(t_start.is_finite() && t_end.is_finite()) || t_end <= t_start || n_steps < 2 {
        return Err(SymgateError::InvalidRange {
            start: t_start,
            end: t_end,
            steps: n_steps,
        });
    }
    let dt = (t_end - t_start) / (n_steps - 1) as f64;
    (0..n_steps)
        .into_par_iter()
        .map(|i| {
            let t = if i + 1 == n_steps { t_end } else { t_start + i as f64 * dt };
            let g = model.gate(t)?;
            let abs_g = invariant_g(&g)?.abs_g;
            let class = classify_gate(&g, DEFAULT_TOL)?;
            Ok(SweepRecord {
                t,
                ep: ep_from_abs_g(abs_g),
                abs_g,
                perfect: class.is_perfect,
                boundary: class.on_boundary,
            })
        })
        .collect()
}
