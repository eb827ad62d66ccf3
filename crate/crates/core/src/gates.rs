//! Symmetric gate representations and the constant basis changes between
//! the computational, spin-1 and Bell pictures.
//!
//! Coordinates in `CompSym` and `Spin1` coincide: the spin-1 kets
//! `|1,1⟩, |1,0⟩, |1,-1⟩` are identified with `|00⟩, (|01⟩+|10⟩)/√2, |11⟩`.
//! `BellSym` coordinates are the first three rows of the two-qubit Bell
//! transform `Q†`, in which local spin-1 rotations become real orthogonal
//! matrices.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Result, SymgateError};
use crate::numerics::{hermitian_expm, ComplexMatrix};

const ZERO: Complex64 = Complex64::ZERO;

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn im(x: f64) -> Complex64 {
    Complex64::new(0.0, x)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BasisTag {
    /// `{|00⟩, (|01⟩+|10⟩)/√2, |11⟩}`
    #[serde(rename = "comp-sym")]
    CompSym,
    /// `{|1,1⟩, |1,0⟩, |1,-1⟩}`
    #[serde(rename = "spin1")]
    Spin1,
    /// `{|ψ⁺⟩, |ψ⁻⟩, |φ⁺⟩}` of the Bell transform.
    #[serde(rename = "bell-sym")]
    BellSym,
}

impl BasisTag {
    pub fn as_str(self) -> &'static str {
        match self {
            BasisTag::CompSym => "comp-sym",
            BasisTag::Spin1 => "spin1",
            BasisTag::BellSym => "bell-sym",
        }
    }
}

impl fmt::Display for BasisTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Cartan coordinates `c = (c1, c2, c3)` of a gate's nonlocal part.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct GeometricPoint {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
}

impl GeometricPoint {
    pub const ORIGIN: GeometricPoint = GeometricPoint::new(0.0, 0.0, 0.0);

    pub const fn new(c1: f64, c2: f64, c3: f64) -> Self {
        Self { c1, c2, c3 }
    }

    pub const fn from_array(c: [f64; 3]) -> Self {
        Self::new(c[0], c[1], c[2])
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.c1, self.c2, self.c3]
    }

    pub fn dot(self, other: GeometricPoint) -> f64 {
        self.c1 * other.c1 + self.c2 * other.c2 + self.c3 * other.c3
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn is_finite(self) -> bool {
        self.to_array().iter().all(|x| x.is_finite())
    }

    /// Phases of the squared Bell eigenvalues, `μ = (c1-c2+c3, c1+c2-c3, -c1+c2+c3)`.
    pub fn m_phases(self) -> [f64; 3] {
        let GeometricPoint { c1, c2, c3 } = self;
        [c1 - c2 + c3, c1 + c2 - c3, -c1 + c2 + c3]
    }

    /// Inverse of [`GeometricPoint::m_phases`].
    pub fn from_m_phases(mu: [f64; 3]) -> Self {
        Self::new((mu[0] + mu[1]) / 2.0, (mu[1] + mu[2]) / 2.0, (mu[0] + mu[2]) / 2.0)
    }

    pub fn max_abs_diff(self, other: GeometricPoint) -> f64 {
        (self - other).to_array().iter().fold(0.0, |m, x| m.max(x.abs()))
    }
}

impl Add for GeometricPoint {
    type Output = GeometricPoint;

    fn add(self, o: GeometricPoint) -> GeometricPoint {
        GeometricPoint::new(self.c1 + o.c1, self.c2 + o.c2, self.c3 + o.c3)
    }
}

impl Sub for GeometricPoint {
    type Output = GeometricPoint;

    fn sub(self, o: GeometricPoint) -> GeometricPoint {
        GeometricPoint::new(self.c1 - o.c1, self.c2 - o.c2, self.c3 - o.c3)
    }
}

impl Mul<GeometricPoint> for f64 {
    type Output = GeometricPoint;

    fn mul(self, p: GeometricPoint) -> GeometricPoint {
        GeometricPoint::new(self * p.c1, self * p.c2, self * p.c3)
    }
}

/// A 3×3 unitary acting on the symmetric two-qubit subspace.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricGate {
    matrix: ComplexMatrix,
    basis: BasisTag,
}

/// `Q†` from the Bell transform, rows ordered `ψ⁺, ψ⁻, φ⁺, φ⁻`, columns
/// `|00⟩, |01⟩, |10⟩, |11⟩`.
pub fn bell_q_matrix() -> ComplexMatrix {
    let s = FRAC_1_SQRT_2;
    ComplexMatrix::from_rows(&[
        vec![re(s), ZERO, ZERO, re(s)],
        vec![ZERO, im(s), im(s), ZERO],
        vec![im(s), ZERO, ZERO, im(-s)],
        vec![ZERO, re(s), re(-s), ZERO],
    ])
    .expect("constant matrix")
}

/// Unitary change of coordinates from `Spin1` (equivalently `CompSym`) to
/// `BellSym`: the symmetric rows of `Q†` restricted to the symmetric
/// subspace.
pub fn spin1_bell_matrix() -> ComplexMatrix {
    let s = FRAC_1_SQRT_2;
    ComplexMatrix::from_rows(&[
        vec![re(s), ZERO, re(s)],
        vec![ZERO, im(1.0), ZERO],
        vec![im(s), ZERO, im(-s)],
    ])
    .expect("constant matrix")
}

/// Columns are the `CompSym` kets written in the computational basis.
fn symmetric_isometry() -> [[Complex64; 3]; 4] {
    let s = re(FRAC_1_SQRT_2);
    [
        [re(1.0), ZERO, ZERO],
        [ZERO, s, ZERO],
        [ZERO, s, ZERO],
        [ZERO, ZERO, re(1.0)],
    ]
}

/// `(|01⟩ - |10⟩)/√2`
pub fn antisymmetric_state() -> [Complex64; 4] {
    [ZERO, re(FRAC_1_SQRT_2), re(-FRAC_1_SQRT_2), ZERO]
}

impl SymmetricGate {
    pub fn new(matrix: ComplexMatrix, basis: BasisTag) -> Result<Self> {
        if matrix.dim() != 3 {
            return Err(SymgateError::InvalidDimension(matrix.dim(), "3"));
        }
        matrix.ensure_unitary()?;
        Ok(Self { matrix, basis })
    }

    pub(crate) fn new_unchecked(matrix: ComplexMatrix, basis: BasisTag) -> Self {
        debug_assert_eq!(matrix.dim(), 3);
        Self { matrix, basis }
    }

    pub fn identity(basis: BasisTag) -> Self {
        Self::new_unchecked(ComplexMatrix::identity(3), basis)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn basis(&self) -> BasisTag {
        self.basis
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    /// Re-expresses the gate in `target` by conjugating with the constant
    /// transforms.
    pub fn to_basis(&self, target: BasisTag) -> SymmetricGate {
        use BasisTag::*;
        let matrix = match (self.basis, target) {
            (BellSym, BellSym) | (CompSym | Spin1, CompSym | Spin1) => self.matrix.clone(),
            (CompSym | Spin1, BellSym) => {
                let w = spin1_bell_matrix();
                &(&w * &self.matrix) * &w.adjoint()
            }
            (BellSym, CompSym | Spin1) => {
                let w = spin1_bell_matrix();
                &(&w.adjoint() * &self.matrix) * &w
            }
        };
        SymmetricGate::new_unchecked(matrix, target)
    }

    /// Divides by the principal cube root of the determinant (argument in
    /// `(-π/3, π/3]`), so the result has unit determinant.
    pub fn su3_normalize(&self) -> SymmetricGate {
        let det = self.matrix.determinant();
        let root = Complex64::from_polar(det.norm().cbrt(), crate::numerics::canonical_phase(det.arg()) / 3.0);
        SymmetricGate::new_unchecked(self.matrix.scale(root.inv()), self.basis)
    }

    /// `self · other`, both taken in `self`'s basis.
    pub fn compose(&self, other: &SymmetricGate) -> SymmetricGate {
        let rhs = other.to_basis(self.basis);
        SymmetricGate::new_unchecked(&self.matrix * rhs.matrix(), self.basis)
    }

    pub fn adjoint(&self) -> SymmetricGate {
        SymmetricGate::new_unchecked(self.matrix.adjoint(), self.basis)
    }

    pub fn max_abs_diff(&self, other: &SymmetricGate) -> f64 {
        self.matrix.max_abs_diff(other.to_basis(self.basis).matrix())
    }
}

/// A 4×4 unitary in the computational basis `{|00⟩, |01⟩, |10⟩, |11⟩}`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoQubitGate {
    matrix: ComplexMatrix,
}

impl TwoQubitGate {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        if matrix.dim() != 4 {
            return Err(SymgateError::InvalidDimension(matrix.dim(), "4"));
        }
        matrix.ensure_unitary()?;
        Ok(Self { matrix })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[Complex64; 4]) -> [Complex64; 4] {
        let out = self.matrix.apply(v);
        [out[0], out[1], out[2], out[3]]
    }

    /// CNOT with the first qubit as control (`|10⟩ ↔ |11⟩`).
    pub fn cnot() -> Self {
        let one = re(1.0);
        let m = ComplexMatrix::from_rows(&[
            vec![one, ZERO, ZERO, ZERO],
            vec![ZERO, one, ZERO, ZERO],
            vec![ZERO, ZERO, ZERO, one],
            vec![ZERO, ZERO, one, ZERO],
        ])
        .expect("constant matrix");
        Self { matrix: m }
    }

    /// The nonlocal Cartan factor `exp[(i/2) Σ c_k σ_k ⊗ σ_k]`.
    pub fn cartan(c: GeometricPoint) -> Self {
        let sx = [[ZERO, re(1.0)], [re(1.0), ZERO]];
        let sy = [[ZERO, im(-1.0)], [im(1.0), ZERO]];
        let sz = [[re(1.0), ZERO], [ZERO, re(-1.0)]];
        let kron = |a: [[Complex64; 2]; 2]| move |i: usize, j: usize| a[i / 2][j / 2] * a[i % 2][j % 2];
        let (kx, ky, kz) = (kron(sx), kron(sy), kron(sz));
        // exp(-iHt) with t = 1 and H = -(1/2) Σ c_k σ_k⊗σ_k.
        let h = ComplexMatrix::from_fn(4, |i, j| -0.5 * (c.c1 * kx(i, j) + c.c2 * ky(i, j) + c.c3 * kz(i, j)));
        Self {
            matrix: hermitian_expm(&h, 1.0).expect("Hermitian by construction"),
        }
    }

    /// The 3×3 block acting on the symmetric subspace, in `CompSym`.
    pub fn symmetric_block(&self) -> Result<SymmetricGate> {
        let off = self.off_block_norm();
        if off >= REDUCIBLE_TOL {
            return Err(SymgateError::NotReducible { off_block: off });
        }
        let s = symmetric_isometry();
        let block = ComplexMatrix::from_fn(3, |i, j| {
            let mut acc = ZERO;
            for a in 0..4 {
                for b in 0..4 {
                    acc += s[a][i].conj() * self.matrix[(a, b)] * s[b][j];
                }
            }
            acc
        });
        SymmetricGate::new(block, BasisTag::CompSym)
    }

    /// Largest magnitude coupling between the symmetric and antisymmetric
    /// subspaces in either direction.
    #[allow(clippy::needless_range_loop)]
    pub fn off_block_norm(&self) -> f64 {
        let s = symmetric_isometry();
        let a = antisymmetric_state();
        let mut worst: f64 = 0.0;
        for k in 0..3 {
            let mut to_anti = ZERO;
            let mut from_anti = ZERO;
            for x in 0..4 {
                for y in 0..4 {
                    to_anti += a[x].conj() * self.matrix[(x, y)] * s[y][k];
                    from_anti += s[x][k].conj() * self.matrix[(x, y)] * a[y];
                }
            }
            worst = worst.max(to_anti.norm()).max(from_anti.norm());
        }
        worst
    }
}

/// Default tolerance for [`is_reducible`].
pub const REDUCIBLE_TOL: f64 = 1e-9;

/// Block gate acting as `g` on the symmetric subspace and trivially on
/// `(|01⟩-|10⟩)/√2`, in the computational basis.
pub fn embed_reducible(g: &SymmetricGate) -> TwoQubitGate {
    let block = g.to_basis(BasisTag::CompSym);
    let u = block.matrix();
    let s = symmetric_isometry();
    let a = antisymmetric_state();
    let m = ComplexMatrix::from_fn(4, |x, y| {
        let mut acc = a[x] * a[y].conj();
        for i in 0..3 {
            for j in 0..3 {
                acc += s[x][i] * u[(i, j)] * s[y][j].conj();
            }
        }
        acc
    });
    TwoQubitGate { matrix: m }
}

/// `true` iff `v` maps the symmetric subspace into itself within `tol`.
pub fn is_reducible(v: &TwoQubitGate, tol: f64) -> bool {
    v.off_block_norm() < tol
}

/// `diag(λ1, λ2, λ3)` in `BellSym` with `λ1 = e^{i(c1-c2+c3)/2}`,
/// `λ2 = e^{i(c1+c2-c3)/2}`, `λ3 = e^{i(-c1+c2+c3)/2}`.
pub fn gate_from_point(c: GeometricPoint) -> SymmetricGate {
    let mu = c.m_phases();
    let diag = mu.map(|m| Complex64::from_polar(1.0, m / 2.0));
    SymmetricGate::new_unchecked(ComplexMatrix::diagonal(&diag), BasisTag::BellSym)
}

/// Spin-1 angular momentum matrices `(Jx, Jy, Jz)` in the `Spin1` basis.
pub fn spin1_operators() -> [ComplexMatrix; 3] {
    let s = FRAC_1_SQRT_2;
    let jx = ComplexMatrix::from_rows(&[
        vec![ZERO, re(s), ZERO],
        vec![re(s), ZERO, re(s)],
        vec![ZERO, re(s), ZERO],
    ])
    .expect("constant matrix");
    let jy = ComplexMatrix::from_rows(&[
        vec![ZERO, im(-s), ZERO],
        vec![im(s), ZERO, im(-s)],
        vec![ZERO, im(s), ZERO],
    ])
    .expect("constant matrix");
    let jz = ComplexMatrix::diagonal(&[re(1.0), ZERO, re(-1.0)]);
    [jx, jy, jz]
}

/// `exp(-i·angle·(n·J))` in the `Spin1` basis.
pub fn local_rotation(axis: [f64; 3], angle: f64) -> Result<SymmetricGate> {
    let norm = axis.iter().map(|x| x * x).sum::<f64>().sqrt();
    if !norm.is_finite() || (norm - 1.0).abs() > 1e-10 {
        return Err(SymgateError::BadAxis { norm });
    }
    let [jx, jy, jz] = spin1_operators();
    let h = ComplexMatrix::from_fn(3, |i, j| axis[0] * jx[(i, j)] + axis[1] * jy[(i, j)] + axis[2] * jz[(i, j)]);
    Ok(SymmetricGate::new_unchecked(hermitian_expm(&h, angle)?, BasisTag::Spin1))
}

fn gaussian_complex(rng: &mut ChaCha8Rng) -> Complex64 {
    let a: f64 = StandardNormal.sample(rng);
    let b: f64 = StandardNormal.sample(rng);
    Complex64::new(a, b) * FRAC_1_SQRT_2
}

/// Haar-distributed element of SU(3), deterministic per seed.
///
/// Columns of a complex Gaussian matrix are orthonormalized by modified
/// Gram-Schmidt; the positive real pivots fix the column phases so the
/// result is Haar on U(3) before the determinant is removed.
#[allow(clippy::needless_range_loop)]
pub fn random_gate(seed: u64) -> SymmetricGate {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cols: Vec<[Complex64; 3]> = (0..3)
        .map(|_| [gaussian_complex(&mut rng), gaussian_complex(&mut rng), gaussian_complex(&mut rng)])
        .collect();
    for k in 0..3 {
        for j in 0..k {
            let proj: Complex64 = (0..3).map(|i| cols[j][i].conj() * cols[k][i]).sum();
            for i in 0..3 {
                let sub = proj * cols[j][i];
                cols[k][i] -= sub;
            }
        }
        let norm = cols[k].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in cols[k].iter_mut() {
            *z /= norm;
        }
    }
    let m = ComplexMatrix::from_fn(3, |i, j| cols[j][i]);
    SymmetricGate::new_unchecked(m, BasisTag::Spin1).su3_normalize()
}

/// A spin-1 rotation about a uniformly random axis by a uniform angle in
/// `[0, 2π)`, deterministic per seed.
pub fn random_local_rotation(seed: u64) -> SymmetricGate {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let z: f64 = 2.0 * rng.random::<f64>() - 1.0;
    let phi: f64 = 2.0 * std::f64::consts::PI * rng.random::<f64>();
    let r = (1.0 - z * z).max(0.0).sqrt();
    let axis = [r * phi.cos(), r * phi.sin(), z];
    let norm = axis.iter().map(|x| x * x).sum::<f64>().sqrt();
    let axis = axis.map(|x| x / norm);
    let angle = 2.0 * std::f64::consts::PI * rng.random::<f64>();
    local_rotation(axis, angle).expect("normalized axis")
}

/// On-disk gate description: `{"basis": ..., "matrix": [[[re, im], ...], ...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GateFile {
    pub basis: BasisTag,
    pub matrix: Vec<Vec<[f64; 2]>>,
}

/// A parsed gate file: 3×3 symmetric gates carry their basis tag; 4×4
/// matrices are two-qubit gates in the computational basis.
#[derive(Debug, Clone)]
pub enum ParsedGate {
    Symmetric(SymmetricGate),
    TwoQubit(TwoQubitGate),
}

impl GateFile {
    pub fn from_gate(g: &SymmetricGate) -> Self {
        Self {
            basis: g.basis(),
            matrix: g
                .matrix()
                .rows()
                .iter()
                .map(|row| row.iter().map(|z| [z.re, z.im]).collect())
                .collect(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| SymgateError::Schema(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    /// Validates shape (rejecting anything larger than 4×4) and unitarity.
    pub fn parse(&self) -> Result<ParsedGate> {
        let n = self.matrix.len();
        if n > 4 {
            return Err(SymgateError::Schema(format!("matrix: {n}x{n} exceeds the 4x4 limit")));
        }
        if n != 3 && n != 4 {
            return Err(SymgateError::Schema(format!("matrix: expected 3 or 4 rows, got {n}")));
        }
        for (i, row) in self.matrix.iter().enumerate() {
            if row.len() != n {
                return Err(SymgateError::Schema(format!("matrix[{i}]: expected {n} entries, got {}", row.len())));
            }
        }
        let rows: Vec<Vec<Complex64>> = self
            .matrix
            .iter()
            .map(|row| row.iter().map(|[a, b]| Complex64::new(*a, *b)).collect())
            .collect();
        let m = ComplexMatrix::from_rows(&rows).map_err(|e| match e {
            SymgateError::NonFinite => SymgateError::Schema("matrix: non-finite entry".into()),
            other => other,
        })?;
        if n == 3 {
            Ok(ParsedGate::Symmetric(SymmetricGate::new(m, self.basis)?))
        } else {
            Ok(ParsedGate::TwoQubit(TwoQubitGate::new(m)?))
        }
    }

    /// Parses and reduces to a symmetric gate; 4×4 input must be reducible.
    pub fn symmetric_gate(&self) -> Result<SymmetricGate> {
        match self.parse()? {
            ParsedGate::Symmetric(g) => Ok(g),
            ParsedGate::TwoQubit(v) => v.symmetric_block(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, PI};

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn bell_q_is_unitary_and_matches_columns() {
        let q = bell_q_matrix();
        assert!(q.unitarity_residual() < 1e-15);
        let col = q.apply(&[re(1.0), ZERO, ZERO, ZERO]);
        let s = FRAC_1_SQRT_2;
        assert!(close(col[0], re(s)) && close(col[1], ZERO) && close(col[2], im(s)) && close(col[3], ZERO));
        // Last row picks out the antisymmetric state.
        let last = q.apply(&antisymmetric_state())[3];
        assert!(close(last, re(1.0)));
    }

    #[test]
    fn spin1_bell_transform() {
        let w = spin1_bell_matrix();
        assert!((&w * &w.adjoint()).max_abs_diff(&ComplexMatrix::identity(3)) < 1e-15);
        let m0 = w.apply(&[ZERO, re(1.0), ZERO]);
        assert!(close(m0[0], ZERO) && close(m0[1], im(1.0)) && close(m0[2], ZERO));
        let p1 = w.apply(&[re(1.0), ZERO, ZERO]);
        let s = FRAC_1_SQRT_2;
        assert!(close(p1[0], re(s)) && close(p1[1], ZERO) && close(p1[2], im(s)));
    }

    #[test]
    fn spin1_bell_transform_is_the_symmetric_block_of_q() {
        // W = (Q† S) restricted to the first three Bell rows.
        let q = bell_q_matrix();
        let s = symmetric_isometry();
        let w = spin1_bell_matrix();
        for r in 0..3 {
            for k in 0..3 {
                let v: Complex64 = (0..4).map(|x| q[(r, x)] * s[x][k]).sum();
                assert!(close(v, w[(r, k)]));
            }
            let anti: Complex64 = (0..4).map(|x| q[(3, x)] * s[x][r]).sum();
            assert!(close(anti, ZERO));
        }
    }

    #[test]
    fn basis_round_trip_and_identity() {
        let id = SymmetricGate::identity(BasisTag::Spin1).to_basis(BasisTag::BellSym);
        assert!(id.matrix().max_abs_diff(&ComplexMatrix::identity(3)) < 1e-15);
        for seed in 0..10 {
            let g = random_gate(seed);
            let back = g.to_basis(BasisTag::BellSym).to_basis(BasisTag::Spin1);
            assert!(back.matrix().max_abs_diff(g.matrix()) < 1e-12);
        }
    }

    #[test]
    fn rotations_are_real_orthogonal_in_bell_basis() {
        for seed in 0..100 {
            let r = random_local_rotation(seed).to_basis(BasisTag::BellSym);
            assert!(r.matrix().max_abs_imag() < 1e-10);
            let rtr = &r.matrix().transpose() * r.matrix();
            assert!(rtr.max_abs_diff(&ComplexMatrix::identity(3)) < 1e-10);
        }
    }

    #[test]
    fn su3_normalization() {
        let phase = Complex64::from_polar(1.0, PI / 6.0);
        let g = SymmetricGate::new(ComplexMatrix::identity(3).scale(phase), BasisTag::Spin1).unwrap();
        assert!((g.matrix().determinant() - im(1.0)).norm() < 1e-15);
        assert!(g.su3_normalize().matrix().max_abs_diff(&ComplexMatrix::identity(3)) < 1e-15);

        let h = random_gate(3);
        assert!(h.su3_normalize().max_abs_diff(&h) < 1e-12);
        assert!((h.matrix().determinant() - re(1.0)).norm() < 1e-9);
    }

    #[test]
    fn gate_from_point_examples() {
        let id = gate_from_point(GeometricPoint::ORIGIN);
        assert!(id.matrix().max_abs_diff(&ComplexMatrix::identity(3)) < 1e-15);

        let g = gate_from_point(GeometricPoint::new(-FRAC_PI_3, 0.0, FRAC_PI_3));
        let expected = [re(1.0), Complex64::from_polar(1.0, -FRAC_PI_3), Complex64::from_polar(1.0, FRAC_PI_3)];
        for (k, e) in expected.iter().enumerate() {
            assert!(close(g.matrix()[(k, k)], *e));
        }

        let g = gate_from_point(GeometricPoint::new(0.0, FRAC_PI_2, FRAC_PI_2));
        let expected = [re(1.0), re(1.0), im(1.0)];
        for (k, e) in expected.iter().enumerate() {
            assert!(close(g.matrix()[(k, k)], *e));
        }
    }

    #[test]
    fn gate_from_point_is_additive_and_has_expected_determinant() {
        let a = GeometricPoint::new(0.3, -1.1, 2.0);
        let b = GeometricPoint::new(-0.7, 0.4, 0.25);
        let lhs = gate_from_point(a).compose(&gate_from_point(b));
        assert!(lhs.max_abs_diff(&gate_from_point(a + b)) < 1e-12);
        let det = gate_from_point(a).matrix().determinant();
        let expected = Complex64::from_polar(1.0, (a.c1 + a.c2 + a.c3) / 2.0);
        assert!((det - expected).norm() < 1e-12);
        let plane = GeometricPoint::new(0.4, -1.0, 0.6);
        assert!((gate_from_point(plane).matrix().determinant() - re(1.0)).norm() < 1e-12);
    }

    #[test]
    fn embedding_preserves_antisymmetric_state() {
        let id = embed_reducible(&SymmetricGate::identity(BasisTag::BellSym));
        assert!(id.matrix().max_abs_diff(&ComplexMatrix::identity(4)) < 1e-15);
        for seed in 0..20 {
            let g = random_gate(seed);
            let v = embed_reducible(&g);
            assert!(v.matrix().is_unitary());
            let a = antisymmetric_state();
            let out = v.apply(&a);
            for k in 0..4 {
                assert!(close(out[k], a[k]));
            }
            assert!(is_reducible(&v, REDUCIBLE_TOL));
            let back = v.symmetric_block().unwrap();
            assert!(back.max_abs_diff(&g) < 1e-12);
        }
    }

    #[test]
    fn cnot_is_not_reducible_but_cartan_factors_are() {
        let cnot = TwoQubitGate::cnot();
        assert!(!is_reducible(&cnot, REDUCIBLE_TOL));
        assert!(cnot.off_block_norm() > 0.1);
        assert!(matches!(cnot.symmetric_block(), Err(SymgateError::NotReducible { .. })));
        for k in 0..20 {
            let c = GeometricPoint::new(0.3 * k as f64, -0.7 + 0.11 * k as f64, 1.9 - 0.2 * k as f64);
            assert!(is_reducible(&TwoQubitGate::cartan(c), REDUCIBLE_TOL));
        }
    }

    #[test]
    fn cartan_factor_is_diagonal_in_bell_basis_with_listed_eigenvalues() {
        let c = GeometricPoint::new(0.9, -0.4, 1.3);
        let a = TwoQubitGate::cartan(c);
        let q = bell_q_matrix();
        let f = &(&q * a.matrix()) * &q.adjoint();
        let mu = c.m_phases();
        let lambda4 = Complex64::from_polar(1.0, -(c.c1 + c.c2 + c.c3) / 2.0);
        for i in 0..4 {
            for j in 0..4 {
                let expected = match (i, j) {
                    (k, l) if k == l && k < 3 => Complex64::from_polar(1.0, mu[k] / 2.0),
                    (3, 3) => lambda4,
                    _ => ZERO,
                };
                assert!((f[(i, j)] - expected).norm() < 1e-12, "({i},{j})");
            }
        }
        // The symmetric block agrees with gate_from_point.
        let block = a.symmetric_block().unwrap().to_basis(BasisTag::BellSym);
        assert!(block.max_abs_diff(&gate_from_point(c)) < 1e-12);
    }

    #[test]
    fn local_rotation_examples() {
        let id = local_rotation([0.0, 0.0, 1.0], 0.0).unwrap();
        assert!(id.matrix().max_abs_diff(&ComplexMatrix::identity(3)) < 1e-15);
        let full = local_rotation([0.0, 0.0, 1.0], 2.0 * PI).unwrap();
        assert!(full.matrix().max_abs_diff(&ComplexMatrix::identity(3)) < 1e-12);
        assert!(matches!(local_rotation([1.0, 1.0, 0.0], 0.3), Err(SymgateError::BadAxis { .. })));
    }

    #[test]
    fn random_gate_contract() {
        let a = random_gate(11);
        let b = random_gate(11);
        assert_eq!(a, b);
        assert!(a.matrix().unitarity_residual() < 1e-10);
        assert!((a.matrix().determinant() - re(1.0)).norm() < 1e-9);
        assert_ne!(random_gate(12), a);
    }

    #[test]
    fn gate_file_round_trip_and_validation() {
        let g = random_gate(5);
        let text = GateFile::from_gate(&g).to_json();
        let back = GateFile::from_json(&text).unwrap().symmetric_gate().unwrap();
        assert_eq!(back.basis(), BasisTag::Spin1);
        assert!(back.max_abs_diff(&g) < 1e-15);

        let bad = r#"{"basis": "spin1", "matrix": [[[1,0],[0,0],[0,0]],[[0,0],[2,0],[0,0]],[[0,0],[0,0],[1,0]]]}"#;
        let err = GateFile::from_json(bad).unwrap().symmetric_gate().unwrap_err();
        assert!(err.is_numerical());

        let five = serde_json::json!({"basis": "spin1", "matrix": vec![vec![[0.0, 0.0]; 5]; 5]}).to_string();
        let err = GateFile::from_json(&five).unwrap().parse().unwrap_err();
        assert!(matches!(err, SymgateError::Schema(ref m) if m.contains("4x4")));

        let unknown_basis = r#"{"basis": "weird", "matrix": []}"#;
        assert!(matches!(GateFile::from_json(unknown_basis), Err(SymgateError::Schema(_))));
    }
}
