//! Analysis of symmetric two-qubit gates: local invariants, Weyl chamber
//! canonicalization, entangling power and perfect-entangler classification,
//! Majorana constellations and sweeps of physical models.

pub mod entangling;
pub mod error;
pub mod gates;
pub mod invariants;
pub mod majorana;
pub mod models;
pub mod numerics;
pub mod report;

pub use entangling::{
    analyze_gate, analyze_gate_with, analyze_point, analyze_point_with, chamber_fraction_perfect, classify_gate, classify_point, concurrence_after,
    ep_closed_form, ep_monte_carlo, ep_of_gate, linear_entropy_after, max_concurrence, Analysis, EntanglerClass,
    EpMethod, EpResult, FractionMode, DEFAULT_TOL,
};
pub use error::{Result, SymgateError};
pub use gates::{
    embed_reducible, gate_from_point, is_reducible, local_rotation, random_gate, random_local_rotation, BasisTag,
    GateFile, GeometricPoint, SymmetricGate, TwoQubitGate,
};
pub use invariants::{
    abs_g_from_point, eigenphases_of_m, invariant_g, m_matrix, oplane_grid, point_from_gate, weyl_reduce,
    ChamberCoords, EigenPhaseTriple, GridRecord, LocalInvariant, WeylGeometry, WeylReduction,
};
pub use majorana::{
    chordal_distance, concurrence, entropy_sphere, state_from_stars, stars_of, Constellation, MajoranaStar,
    SphereGrid, SymmetricState,
};
pub use models::{
    crosskerr_ep, crosskerr_gate, heisenberg_ep, heisenberg_gate, lmg_abs_g_closed, lmg_gate, lmg_hamiltonian, sweep,
    CrossKerrParams, HeisenbergParams, LmgParams, Model, SweepRecord,
};
pub use numerics::ComplexMatrix;
