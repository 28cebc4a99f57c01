//! Brute-force ground truth in a truncated two-mode Fock space.
//!
//! Everything here is assembled from coherent-state Fock coefficients and
//! ladder-operator actions only: states are superposed numerically, photons
//! are added by shifting coefficients, reduced density matrices come from an
//! explicit partial trace and eigenvalues from the Jacobi solver. None of the
//! closed forms in [`crate::analytic`] or [`crate::quasiprob`] is used, so
//! agreement between the two paths is a genuine check.

use std::f64::consts::PI;

use ndarray::Array2;
use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::jacobi::hermitian_eigen;
use crate::state::PaecsSpec;

/// Smallest eigenvalue of a density matrix tolerated before clamping.
pub const EIGENVALUE_FLOOR: f64 = -1e-10;

/// Controls the Fock cutoff of the oracle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationPolicy {
    /// Minimum number of coherent-state levels kept per mode before photons
    /// are added. The amplitude-dependent estimate is used when it is larger.
    pub base_dim: usize,
    /// Largest probability mass tolerated in the top two Fock levels.
    pub tail_tol: f64,
    pub max_dim: usize,
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        TruncationPolicy {
            base_dim: 1,
            tail_tol: 1e-14,
            max_dim: 256,
        }
    }
}

impl TruncationPolicy {
    pub fn with_base_dim(self, base_dim: usize) -> Self {
        TruncationPolicy { base_dim, ..self }
    }

    pub fn with_max_dim(self, max_dim: usize) -> Self {
        TruncationPolicy { max_dim, ..self }
    }

    /// Default policy with `max_dim` taken from `PAECS_MAX_DIM` when set.
    pub fn from_env() -> Result<Self> {
        let policy = TruncationPolicy::default();
        match std::env::var("PAECS_MAX_DIM") {
            Ok(raw) => {
                let max_dim = raw.trim().parse::<usize>().map_err(|_| {
                    Error::InvalidConfig(format!(
                        "PAECS_MAX_DIM must be a positive integer, got {raw:?}"
                    ))
                })?;
                if max_dim == 0 {
                    return Err(Error::InvalidConfig(
                        "PAECS_MAX_DIM must be positive".into(),
                    ));
                }
                Ok(policy.with_max_dim(max_dim))
            }
            Err(_) => Ok(policy),
        }
    }

    /// Coherent levels kept for intensity `|alpha|^2`: a Poisson tail bound
    /// `ceil(x + 10 sqrt(x + 1)) + 8`, raised to `base_dim` if smaller.
    pub fn levels_for(&self, intensity: f64) -> usize {
        let estimate = (intensity + 10.0 * (intensity + 1.0).sqrt()).ceil() as usize + 8;
        estimate.max(self.base_dim).max(1)
    }
}

/// Amplitudes of a two-mode pure state; entry `[p, q]` multiplies `|p, q⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoModeFockState {
    coeff: Array2<C64>,
}

impl TwoModeFockState {
    pub fn from_coeffs(coeff: Array2<C64>) -> Self {
        TwoModeFockState { coeff }
    }

    pub fn zeros(dim_a: usize, dim_b: usize) -> Self {
        TwoModeFockState {
            coeff: Array2::zeros((dim_a, dim_b)),
        }
    }

    /// `|p, q⟩` in a space of the given dimensions.
    pub fn basis(dim_a: usize, dim_b: usize, p: usize, q: usize) -> Self {
        let mut s = Self::zeros(dim_a, dim_b);
        s.coeff[[p, q]] = C64::new(1.0, 0.0);
        s
    }

    /// Tensor product of two single-mode vectors.
    pub fn product(a: &[C64], b: &[C64]) -> Self {
        let coeff = Array2::from_shape_fn((a.len(), b.len()), |(p, q)| a[p] * b[q]);
        TwoModeFockState { coeff }
    }

    pub fn dim_a(&self) -> usize {
        self.coeff.nrows()
    }

    pub fn dim_b(&self) -> usize {
        self.coeff.ncols()
    }

    pub fn coeffs(&self) -> &Array2<C64> {
        &self.coeff
    }

    /// Amplitude on `|p, q⟩`, zero outside the stored block.
    pub fn get(&self, p: usize, q: usize) -> C64 {
        self.coeff.get((p, q)).copied().unwrap_or_default()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coeff.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn scaled(&self, factor: C64) -> Self {
        TwoModeFockState {
            coeff: self.coeff.mapv(|z| z * factor),
        }
    }

    /// `self + factor * other`, zero-padding to the larger dimensions.
    pub fn add_scaled(&self, factor: C64, other: &TwoModeFockState) -> Self {
        let dim_a = self.dim_a().max(other.dim_a());
        let dim_b = self.dim_b().max(other.dim_b());
        let coeff = Array2::from_shape_fn((dim_a, dim_b), |(p, q)| {
            self.get(p, q) + factor * other.get(p, q)
        });
        TwoModeFockState { coeff }
    }

    /// Probability mass in the top two rows and columns relative to the
    /// total mass.
    pub fn tail_mass(&self) -> f64 {
        let total = self.norm_sqr();
        if total == 0.0 {
            return 0.0;
        }
        let (da, db) = (self.dim_a(), self.dim_b());
        let mut tail = 0.0;
        for ((p, q), z) in self.coeff.indexed_iter() {
            if p + 2 >= da || q + 2 >= db {
                tail += z.norm_sqr();
            }
        }
        tail / total
    }

    /// Largest entrywise deviation from `other`, zero-padding as needed.
    pub fn max_abs_diff(&self, other: &TwoModeFockState) -> f64 {
        let dim_a = self.dim_a().max(other.dim_a());
        let dim_b = self.dim_b().max(other.dim_b());
        let mut worst = 0.0_f64;
        for p in 0..dim_a {
            for q in 0..dim_b {
                worst = worst.max((self.get(p, q) - other.get(p, q)).norm());
            }
        }
        worst
    }
}

/// Row-major dump of a normalized oracle state.
#[derive(Debug, Clone, Serialize)]
pub struct StateDump {
    pub family: String,
    pub alpha_re: f64,
    pub alpha_im: f64,
    pub m: u32,
    pub n: u32,
    pub dim_a: usize,
    pub dim_b: usize,
    pub coeffs: Vec<[f64; 2]>,
}

impl StateDump {
    pub fn new(spec: &PaecsSpec, state: &TwoModeFockState) -> Self {
        StateDump {
            family: spec.family.to_string(),
            alpha_re: spec.alpha.re,
            alpha_im: spec.alpha.im,
            m: spec.m,
            n: spec.n,
            dim_a: state.dim_a(),
            dim_b: state.dim_b(),
            coeffs: state.coeffs().iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

/// Hermitian, unit-trace, positive semidefinite matrix.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    rho: Array2<C64>,
}

impl DensityMatrix {
    pub fn from_matrix(rho: Array2<C64>) -> Result<Self> {
        if rho.nrows() != rho.ncols() {
            return Err(Error::Domain("density matrix must be square".into()));
        }
        Ok(DensityMatrix { rho })
    }

    pub fn dim(&self) -> usize {
        self.rho.nrows()
    }

    pub fn matrix(&self) -> &Array2<C64> {
        &self.rho
    }

    pub fn trace(&self) -> C64 {
        self.rho.diag().sum()
    }

    /// `max |ρ - ρ†|`
    pub fn hermiticity_error(&self) -> f64 {
        let dim = self.dim();
        let mut worst = 0.0_f64;
        for i in 0..dim {
            for j in 0..dim {
                worst = worst.max((self.rho[[i, j]] - self.rho[[j, i]].conj()).norm());
            }
        }
        worst
    }

    /// Eigenvalues in descending order, checked against
    /// [`EIGENVALUE_FLOOR`] and clamped to `[0, 1]`.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        let eig = hermitian_eigen(&self.rho)?;
        if let Some(&low) = eig.values.last() {
            if low < EIGENVALUE_FLOOR {
                return Err(Error::NumericalConsistency(format!(
                    "density matrix eigenvalue {low:e} below {EIGENVALUE_FLOOR:e}"
                )));
            }
        }
        Ok(eig.values.iter().map(|&v| v.clamp(0.0, 1.0)).collect())
    }
}

/// Fock amplitudes `e^{-|α|²/2} α^p / sqrt(p!)` for `p < dim`.
pub fn coherent_fock(alpha: C64, dim: usize) -> Vec<C64> {
    let mut out = Vec::with_capacity(dim);
    let mut c = C64::new((-0.5 * alpha.norm_sqr()).exp(), 0.0);
    for p in 0..dim {
        out.push(c);
        c = c * alpha / ((p + 1) as f64).sqrt();
    }
    out
}

/// Poisson mass `Σ_{p ≥ dim} e^{-x} x^p / p!` of a coherent state with
/// intensity `x`, summed directly.
pub fn coherent_tail_mass(intensity: f64, dim: usize) -> f64 {
    let mut term = (-intensity).exp();
    for p in 0..dim {
        term *= intensity / (p + 1) as f64;
    }
    let mut tail = 0.0;
    let mut p = dim;
    while term > 0.0 && term > 1e-18 * tail {
        tail += term;
        p += 1;
        term *= intensity / p as f64;
        if p > dim + 100_000 {
            break;
        }
    }
    tail
}

/// Coherent vector whose discarded tail is below `policy.tail_tol`, growing
/// past `min_dim` by doubling.
pub fn coherent_fock_checked(
    alpha: C64,
    min_dim: usize,
    policy: &TruncationPolicy,
) -> Result<Vec<C64>> {
    let intensity = alpha.norm_sqr();
    let mut dim = min_dim.max(1);
    loop {
        let tail = coherent_tail_mass(intensity, dim);
        if tail < policy.tail_tol {
            return Ok(coherent_fock(alpha, dim));
        }
        if dim >= policy.max_dim {
            return Err(Error::Truncation {
                dim,
                max_dim: policy.max_dim,
                tail_mass: tail,
            });
        }
        dim = (2 * dim).min(policy.max_dim);
    }
}

/// Which mode a ladder operator acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    A,
    B,
}

/// `sqrt((p + count)! / p!)`
fn creation_weight(p: usize, count: u32) -> f64 {
    (1..=count as usize)
        .map(|k| ((p + k) as f64).sqrt())
        .product()
}

/// Applies `a†^count` or `b†^count`. The mode dimension grows by `count`;
/// the result is left unnormalized.
pub fn apply_creation(
    state: &TwoModeFockState,
    mode: Mode,
    count: u32,
    policy: &TruncationPolicy,
) -> Result<TwoModeFockState> {
    if count == 0 {
        return Ok(state.clone());
    }
    let shift = count as usize;
    let (da, db) = (state.dim_a(), state.dim_b());
    let (new_a, new_b) = match mode {
        Mode::A => (da + shift, db),
        Mode::B => (da, db + shift),
    };
    if new_a.max(new_b) > policy.max_dim {
        return Err(Error::Truncation {
            dim: new_a.max(new_b),
            max_dim: policy.max_dim,
            tail_mass: state.tail_mass(),
        });
    }
    let mut out = Array2::<C64>::zeros((new_a, new_b));
    for ((p, q), &z) in state.coeffs().indexed_iter() {
        match mode {
            Mode::A => out[[p + shift, q]] = z * creation_weight(p, count),
            Mode::B => out[[p, q + shift]] = z * creation_weight(q, count),
        }
    }
    Ok(TwoModeFockState::from_coeffs(out))
}

/// A normalized oracle state plus the squared norm it had before
/// normalization, `‖a†^m b†^n (|·,·⟩ ± |·,·⟩)‖²`.
#[derive(Debug, Clone)]
pub struct NumericPaecs {
    pub state: TwoModeFockState,
    pub norm_sqr: f64,
}

fn unnormalized_paecs(
    spec: &PaecsSpec,
    levels: usize,
    policy: &TruncationPolicy,
) -> Result<TwoModeFockState> {
    let mut sum = TwoModeFockState::zeros(levels, levels);
    for (sa, sb, weight) in spec.family.components() {
        let va = coherent_fock(spec.alpha * sa, levels);
        let vb = coherent_fock(spec.alpha * sb, levels);
        sum = sum.add_scaled(C64::new(weight, 0.0), &TwoModeFockState::product(&va, &vb));
    }
    let excited = apply_creation(&sum, Mode::A, spec.m, policy)?;
    apply_creation(&excited, Mode::B, spec.n, policy)
}

/// Superposes the two product coherent states of the family, adds `m` and
/// `n` photons, and normalizes. The cutoff doubles until the top two Fock
/// levels carry less than `policy.tail_tol` of the mass.
pub fn build_paecs_numeric(spec: &PaecsSpec, policy: &TruncationPolicy) -> Result<NumericPaecs> {
    let mut levels = policy.levels_for(spec.intensity());
    let extra = spec.m.max(spec.n) as usize;
    loop {
        if levels + extra > policy.max_dim {
            return Err(Error::Truncation {
                dim: levels + extra,
                max_dim: policy.max_dim,
                tail_mass: f64::NAN,
            });
        }
        let raw = unnormalized_paecs(spec, levels, policy)?;
        let norm_sqr = raw.norm_sqr();
        if norm_sqr == 0.0 {
            return Err(Error::Degenerate(format!(
                "{} at alpha = {} is the zero vector",
                spec.family, spec.alpha
            )));
        }
        let tail = raw.tail_mass();
        if tail < policy.tail_tol {
            let state = raw.scaled(C64::new(1.0 / norm_sqr.sqrt(), 0.0));
            return Ok(NumericPaecs { state, norm_sqr });
        }
        if levels + extra >= policy.max_dim {
            return Err(Error::Truncation {
                dim: levels + extra,
                max_dim: policy.max_dim,
                tail_mass: tail,
            });
        }
        levels = (2 * levels).min(policy.max_dim - extra);
    }
}

/// `ρ_b[q, q'] = Σ_p c[p, q] conj(c[p, q'])`
pub fn partial_trace_b(state: &TwoModeFockState) -> DensityMatrix {
    let c = state.coeffs();
    let db = state.dim_b();
    let mut rho = Array2::<C64>::zeros((db, db));
    for row in c.rows() {
        for q in 0..db {
            let cq = row[q];
            if cq == C64::new(0.0, 0.0) {
                continue;
            }
            for qp in 0..db {
                rho[[q, qp]] += cq * row[qp].conj();
            }
        }
    }
    DensityMatrix { rho }
}

/// Von Neumann entropy in bits, `0 log 0 = 0`.
pub fn vn_entropy(rho: &DensityMatrix) -> Result<f64> {
    Ok(entropy_of_spectrum(&rho.eigenvalues()?))
}

/// `-Σ λ log2 λ` over a clamped spectrum.
pub fn entropy_of_spectrum(values: &[f64]) -> f64 {
    values
        .iter()
        .filter(|&&v| v > 0.0)
        .map(|&v| -v * v.log2())
        .sum()
}

/// `Σ conj(c1) c2` over the common block; entries outside it meet zeros.
pub fn inner_product(s1: &TwoModeFockState, s2: &TwoModeFockState) -> C64 {
    let da = s1.dim_a().min(s2.dim_a());
    let db = s1.dim_b().min(s2.dim_b());
    let mut sum = C64::new(0.0, 0.0);
    for p in 0..da {
        for q in 0..db {
            sum += s1.coeffs()[[p, q]].conj() * s2.coeffs()[[p, q]];
        }
    }
    sum
}

/// `|⟨z1, z2|ψ⟩|² / π²` with explicit coherent vectors.
pub fn husimi_q_numeric(
    state: &TwoModeFockState,
    z1: C64,
    z2: C64,
    policy: &TruncationPolicy,
) -> Result<f64> {
    let za = coherent_fock_checked(z1, state.dim_a(), policy)?;
    let zb = coherent_fock_checked(z2, state.dim_b(), policy)?;
    let mut amp = C64::new(0.0, 0.0);
    for ((p, q), &c) in state.coeffs().indexed_iter() {
        amp += za[p].conj() * zb[q].conj() * c;
    }
    Ok(amp.norm_sqr() / (PI * PI))
}

/// `⟨α| a^{bra_power} a†^{ket_power} |β⟩` with explicit Fock vectors.
pub fn ladder_matrix_element_numeric(
    bra_power: u32,
    ket_power: u32,
    alpha: C64,
    beta: C64,
    policy: &TruncationPolicy,
) -> Result<C64> {
    let levels = policy.levels_for(alpha.norm_sqr().max(beta.norm_sqr()));
    let dim = levels + bra_power.max(ket_power) as usize;
    let bra = TwoModeFockState::product(&coherent_fock(alpha, levels), &[C64::new(1.0, 0.0)]);
    let ket = TwoModeFockState::product(&coherent_fock(beta, levels), &[C64::new(1.0, 0.0)]);
    let bra = apply_creation(&bra, Mode::A, bra_power, policy)?;
    let ket = apply_creation(&ket, Mode::A, ket_power, policy)?;
    debug_assert!(bra.dim_a() <= dim && ket.dim_a() <= dim);
    Ok(inner_product(&bra, &ket))
}
