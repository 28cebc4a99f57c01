//! Two-mode photon-added entangled coherent states.
//!
//! The four families `ψ₁± ∝ a†^m b†^n (|α, α⟩ ± |-α, -α⟩)` and
//! `ψ₂± ∝ a†^m b†^n (|α, -α⟩ ± |-α, α⟩)` are handled twice:
//!
//! - [`analytic`] and [`quasiprob`] evaluate the closed forms (normalization,
//!   Fock expansion, scalar products, Schmidt decomposition, entanglement
//!   entropy, Husimi Q-function) on top of the polynomial layer in
//!   [`special`];
//! - [`fock`] builds the same states as explicit truncated Fock vectors and
//!   recomputes everything by brute force.
//!
//! [`verify`] runs the two against each other, and [`scan`] produces the
//! parameter sweeps written by the `paecs` command-line tool.

pub mod analytic;
pub mod error;
pub mod fock;
pub mod jacobi;
pub mod quadrature;
pub mod quasiprob;
pub mod scan;
pub mod special;
pub mod state;
pub mod verify;

pub use analytic::{
    entropy, excited_parity_coherent, fock_coefficients, normalization, scalar_product,
    schmidt_decomposition, schmidt_eigenvalues, EigenvaluePair, EntropyResult, SchmidtBranch,
    SchmidtForm,
};
pub use error::{Error, Result};
pub use fock::{
    apply_creation, build_paecs_numeric, coherent_fock, husimi_q_numeric, inner_product,
    partial_trace_b, vn_entropy, DensityMatrix, Mode, NumericPaecs, TruncationPolicy,
    TwoModeFockState,
};
pub use quasiprob::{
    q_analytic, q_grid, q_normalization, HusimiQ, PhaseSpaceSlice, QGrid, SliceAxis,
};
pub use special::{
    hermite2, laguerre, laguerre_combo, laguerre_pm, overlap_kernel, HermiteArgs, Sign,
};
pub use state::{Family, PaecsSpec, Pairing, Parity};

pub use num_complex::Complex64 as C64;
