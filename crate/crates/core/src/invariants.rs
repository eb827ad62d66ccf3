//! The m-matrix, the local invariant `G = (Tr m)²/9`, and reduction of
//! Cartan points onto the canonical Weyl chamber.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::Serialize;

use crate::entangling::{classify_point, ep_from_abs_g, DEFAULT_TOL};
use crate::error::{Result, SymgateError};
use crate::gates::{gate_from_point, BasisTag, GeometricPoint, SymmetricGate};
use crate::numerics::{canonical_phase, unitary_eigenphases, ComplexMatrix};

/// Clamp window for `|G|`.
const ABS_G_CLAMP_TOL: f64 = 1e-12;

pub type Reflection = [[f64; 3]; 3];

/// Fixed 𝔰𝔲(3) root-system constants of the O-plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeylGeometry;

impl WeylGeometry {
    pub const ALPHA1: GeometricPoint = GeometricPoint::new(-PI, 0.0, PI);
    pub const ALPHA2: GeometricPoint = GeometricPoint::new(0.0, PI, -PI);
    pub const VX: GeometricPoint = GeometricPoint::new(-PI / 2.0, PI / 2.0, 0.0);
    pub const VY: GeometricPoint = GeometricPoint::new(-PI / 6.0, -PI / 6.0, PI / 3.0);

    /// Directions of the three positive roots.
    pub const ROOTS: [[f64; 3]; 3] = [[-1.0, 0.0, 1.0], [0.0, 1.0, -1.0], [-1.0, 1.0, 0.0]];
    /// Directions bisecting pairs of roots; reflecting across them conjugates
    /// `Tr m`.
    pub const BISECTORS: [[f64; 3]; 3] = [[-2.0, 1.0, 1.0], [-1.0, 2.0, -1.0], [-1.0, -1.0, 2.0]];

    /// `σᵢⱼ = δᵢⱼ − 2βᵢβⱼ/β²`
    pub fn reflection(beta: [f64; 3]) -> Reflection {
        let b2: f64 = beta.iter().map(|b| b * b).sum();
        let mut s = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                s[i][j] = if i == j { 1.0 } else { 0.0 } - 2.0 * beta[i] * beta[j] / b2;
            }
        }
        s
    }

    pub fn root_reflections() -> [Reflection; 3] {
        Self::ROOTS.map(Self::reflection)
    }

    pub fn bisector_reflections() -> [Reflection; 3] {
        Self::BISECTORS.map(Self::reflection)
    }

    pub fn apply(sigma: &Reflection, c: GeometricPoint) -> GeometricPoint {
        let v = c.to_array();
        GeometricPoint::from_array(sigma.map(|row| row[0] * v[0] + row[1] * v[1] + row[2] * v[2]))
    }

    /// Point with chamber coordinates `(s1, s2)`: `s1·v_x + s2·v_y`.
    pub fn point(coords: ChamberCoords) -> GeometricPoint {
        coords.s1 * Self::VX + coords.s2 * Self::VY
    }

    /// Inverse of [`WeylGeometry::point`] for points in the O-plane.
    pub fn coords(c: GeometricPoint) -> ChamberCoords {
        ChamberCoords {
            s1: c.dot(Self::VX) / Self::VX.dot(Self::VX),
            s2: c.dot(Self::VY) / Self::VY.dot(Self::VY),
        }
    }
}

/// Removes the `(1,1,1)` component.
pub fn project_oplane(c: GeometricPoint) -> GeometricPoint {
    let mean = (c.c1 + c.c2 + c.c3) / 3.0;
    GeometricPoint::new(c.c1 - mean, c.c2 - mean, c.c3 - mean)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChamberCoords {
    pub s1: f64,
    pub s2: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalInvariant {
    pub g: Complex64,
    pub abs_g: f64,
}

/// Sorted eigenphases of `m`, each in `(-π, π]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenPhaseTriple {
    pub mu1: f64,
    pub mu2: f64,
    pub mu3: f64,
}

impl EigenPhaseTriple {
    pub fn from_unsorted(mut mu: [f64; 3]) -> Self {
        for x in mu.iter_mut() {
            *x = canonical_phase(*x);
        }
        mu.sort_by(f64::total_cmp);
        Self {
            mu1: mu[0],
            mu2: mu[1],
            mu3: mu[2],
        }
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.mu1, self.mu2, self.mu3]
    }

    /// Arc lengths between circularly adjacent phases, ascending; they sum to `2π`.
    pub fn sorted_gaps(self) -> [f64; 3] {
        let [a, b, c] = self.to_array();
        let mut gaps = [b - a, c - b, TAU - (c - a)];
        for g in gaps.iter_mut() {
            *g = g.clamp(0.0, TAU);
        }
        gaps.sort_by(f64::total_cmp);
        gaps
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeylReduction {
    pub point: GeometricPoint,
    pub coords: ChamberCoords,
}

/// `m = U_Bᵀ U_B` of the su3-normalized gate.
pub fn m_matrix(g: &SymmetricGate) -> Result<ComplexMatrix> {
    g.matrix().ensure_unitary()?;
    Ok(raw_m(&g.su3_normalize()))
}

fn raw_m(g: &SymmetricGate) -> ComplexMatrix {
    let u = g.to_basis(BasisTag::BellSym).into_matrix();
    &u.transpose() * &u
}

pub fn invariant_g(g: &SymmetricGate) -> Result<LocalInvariant> {
    let tr = m_matrix(g)?.trace();
    let g = tr * tr / 9.0;
    Ok(LocalInvariant {
        g,
        abs_g: clamp_abs_g(g.norm()),
    })
}

/// Snaps values within the clamp window of 0 or 1 onto the endpoint.
fn clamp_abs_g(x: f64) -> f64 {
    if (x - 1.0).abs() <= ABS_G_CLAMP_TOL {
        1.0
    } else if x.abs() <= ABS_G_CLAMP_TOL {
        0.0
    } else {
        x
    }
}

/// `|G| = 1 − (4/9)[sin²(c₁−c₂) + sin²(c₁−c₃) + sin²(c₃−c₂)]`
pub fn abs_g_from_point(c: GeometricPoint) -> f64 {
    let s = (c.c1 - c.c2).sin().powi(2) + (c.c1 - c.c3).sin().powi(2) + (c.c3 - c.c2).sin().powi(2);
    clamp_abs_g(1.0 - 4.0 / 9.0 * s)
}

/// Sorted eigenphases of `U_Bᵀ U_B` without removing the determinant, so a
/// gate with `det ≠ 1` keeps its overall phase in the triple.
pub fn eigenphases_of_m(g: &SymmetricGate) -> Result<EigenPhaseTriple> {
    g.matrix().ensure_unitary()?;
    let phases = unitary_eigenphases(&raw_m(g))?;
    let p = phases.as_slice();
    Ok(EigenPhaseTriple::from_unsorted([p[0], p[1], p[2]]))
}

/// Canonical chamber point determined by the three eigenphases of `m` up
/// to a common rotation and reflection of the circle.
pub fn reduce_phases(mu: EigenPhaseTriple) -> WeylReduction {
    let [a, b, _] = mu.sorted_gaps();
    let coords = ChamberCoords {
        s1: ((a + b) / TAU).clamp(0.0, 1.0),
        s2: ((b - a) / TAU).clamp(0.0, 1.0),
    };
    WeylReduction {
        point: WeylGeometry::point(coords),
        coords,
    }
}

/// Maps `c` onto the canonical chamber.
///
/// The chamber is the part of the triangle `0 ≤ s2 ≤ s1 ≤ 1` with
/// `s2 ≤ 2 − 3·s1`. Within it the sorted gaps `a ≤ b ≤ c` between the
/// eigenphases of `m` are `π(s1−s2)`, `π(s1+s2)` and `2π(1−s1)`. Matching gaps
/// replaces the lattice and reflection search by a sort.
pub fn weyl_reduce(c: GeometricPoint) -> WeylReduction {
    let c = project_oplane(c);
    reduce_phases(EigenPhaseTriple::from_unsorted(c.m_phases()))
}

pub fn point_from_gate(g: &SymmetricGate) -> Result<GeometricPoint> {
    let mu = eigenphases_of_m(g)?;
    Ok(weyl_reduce(GeometricPoint::from_m_phases(mu.to_array())).point)
}

/// One sample of the O-plane raster.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridRecord {
    pub c: GeometricPoint,
    pub coords: ChamberCoords,
    pub arg_tr_m: f64,
    pub abs_g: f64,
    pub ep: f64,
    pub perfect: bool,
}

/// Rasterizes the primitive cell `{x·α₁ + y·α₂ : x, y ∈ [0,1]}` on a
/// `resolution × resolution` grid, `x` varying slowest.
pub fn oplane_grid(resolution: usize) -> Result<Vec<GridRecord>> {
    if resolution < 2 {
        return Err(SymgateError::InvalidResolution { resolution, minimum: 2 });
    }
    let step = 1.0 / (resolution - 1) as f64;
    let mut out = Vec::with_capacity(resolution * resolution);
    for i in 0..resolution {
        for j in 0..resolution {
            let c = (i as f64 * step) * WeylGeometry::ALPHA1 + (j as f64 * step) * WeylGeometry::ALPHA2;
            out.push(grid_record(c)?);
        }
    }
    Ok(out)
}

fn grid_record(c: GeometricPoint) -> Result<GridRecord> {
    let m = m_matrix(&gate_from_point(c))?;
    let tr = m.trace();
    let abs_g = clamp_abs_g((tr * tr).norm() / 9.0);
    let arg_tr_m = if tr.norm() < 1e-12 { 0.0 } else { tr.arg() };
    let class = classify_point(c, DEFAULT_TOL)?;
    Ok(GridRecord {
        c,
        coords: weyl_reduce(c).coords,
        arg_tr_m,
        abs_g,
        ep: ep_from_abs_g(abs_g),
        perfect: class.is_perfect,
    })
}
