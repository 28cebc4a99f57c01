//! The closed forms checked against the Fock-space oracle on fixed grids.
//!
//! Each check reports the largest error it saw against its tolerance. The
//! `perturb` option scales every use of the normalization constant by
//! `1 + perturb` and exists to show that the suite notices.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::analytic::{
    entropy, fock_coefficients, normalization, scalar_product, schmidt_decomposition,
};
use crate::error::{Error, Result};
use crate::fock::{
    build_paecs_numeric, husimi_q_numeric, inner_product, ladder_matrix_element_numeric,
    partial_trace_b, vn_entropy, TruncationPolicy,
};
use crate::quasiprob::{q_grid, q_normalization_of, HusimiQ, PhaseSpaceSlice};
use crate::special::{laguerre, laguerre_pm, ln_factorial, overlap_kernel, Sign};
use crate::state::{Family, PaecsSpec, Pairing};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    /// Relative error injected into the normalization constant.
    pub perturb: f64,
    /// Seed of the randomized scalar-product and Q-function points.
    pub seed: u64,
    /// Gauss–Legendre nodes per axis of the Q normalization quadrature.
    pub q_nodes: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            perturb: 0.0,
            seed: 20_240_601,
            q_nodes: 48,
        }
    }
}

impl VerifyOptions {
    pub fn validate(&self) -> Result<()> {
        if !self.perturb.is_finite() || self.perturb <= -1.0 {
            return Err(Error::InvalidConfig(format!(
                "perturbation must be finite and > -1, got {}",
                self.perturb
            )));
        }
        if self.q_nodes < 16 {
            return Err(Error::InvalidConfig(format!(
                "Q quadrature needs at least 16 nodes per axis, got {}",
                self.q_nodes
            )));
        }
        Ok(())
    }

    fn n_factor(&self) -> f64 {
        1.0 + self.perturb
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub max_abs_error: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub notes: String,
}

impl CheckResult {
    fn new(name: &str, max_abs_error: f64, tolerance: f64, notes: impl Into<String>) -> Self {
        CheckResult {
            name: name.to_string(),
            max_abs_error,
            tolerance,
            pass: max_abs_error.is_finite() && max_abs_error <= tolerance,
            notes: notes.into(),
        }
    }
}

/// A place where the printed formulas admit a second reading, with the
/// error of each reading against the oracle.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LedgerEntry {
    pub topic: String,
    pub adopted: String,
    pub adopted_error: f64,
    pub literal: String,
    /// `None` when the literal reading cannot be evaluated at all.
    pub literal_error: Option<f64>,
    pub notes: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<CheckResult>,
    pub overall_pass: bool,
    pub typo_ledger: Vec<LedgerEntry>,
    pub perturb: f64,
    pub seed: u64,
}

/// Amplitudes used by the normalization, eigenvalue and exchange checks.
pub const ORACLE_ALPHAS: [f64; 5] = [0.2, 0.5, 1.0, 1.5, 2.0];

/// `0.8 e^{iπ/5}`, an amplitude off the real axis.
pub fn complex_alpha() -> C64 {
    C64::from_polar(0.8, PI / 5.0)
}

/// Every family with `m, n ≤ max_mn` at the real amplitudes of
/// [`ORACLE_ALPHAS`] and at [`complex_alpha`].
pub fn oracle_grid(max_mn: u32) -> Vec<PaecsSpec> {
    let mut alphas: Vec<C64> = ORACLE_ALPHAS.iter().map(|&a| C64::new(a, 0.0)).collect();
    alphas.push(complex_alpha());
    let mut out = Vec::new();
    for family in Family::ALL {
        for m in 0..=max_mn {
            for n in 0..=max_mn {
                for &alpha in &alphas {
                    out.push(
                        PaecsSpec::new(family, alpha, m, n).expect("grid parameters are in range"),
                    );
                }
            }
        }
    }
    out
}

/// The Q-function parameter matrix: `(m, n) ∈ {(0,0), (2,1), (3,7)}`,
/// `|α|² ∈ {0.05, 0.5}`, both correlated families.
pub fn q_matrix() -> Vec<PaecsSpec> {
    let mut out = Vec::new();
    for family in [Family::Psi1Plus, Family::Psi1Minus] {
        for (m, n) in [(0, 0), (2, 1), (3, 7)] {
            for x in [0.05f64, 0.5] {
                out.push(
                    PaecsSpec::real(family, x.sqrt(), m, n)
                        .expect("matrix parameters are in range"),
                );
            }
        }
    }
    out
}

fn max_of(errors: impl IntoIterator<Item = f64>) -> f64 {
    // NaN propagates so that a failed evaluation cannot pass
    errors.into_iter().fold(0.0, |acc: f64, e| {
        if e.is_nan() || acc.is_nan() {
            f64::NAN
        } else {
            acc.max(e)
        }
    })
}

fn par_max<T: Sync>(items: &[T], f: impl Fn(&T) -> Result<f64> + Sync + Send) -> Result<f64> {
    let errors: Vec<f64> = items.par_iter().map(f).collect::<Result<_>>()?;
    Ok(max_of(errors))
}

pub fn check_normalization(opts: &VerifyOptions, policy: &TruncationPolicy) -> Result<CheckResult> {
    let grid = oracle_grid(6);
    let err = par_max(&grid, |spec| {
        let oracle = build_paecs_numeric(spec, policy)?;
        Ok((normalization(spec)? * opts.n_factor() * oracle.norm_sqr.sqrt() - 1.0).abs())
    })?;
    Ok(CheckResult::new(
        "normalization",
        err,
        1e-9,
        format!(
            "|N sqrt(oracle norm^2) - 1| over {} states, m, n <= 6",
            grid.len()
        ),
    ))
}

pub fn check_coefficients(opts: &VerifyOptions, policy: &TruncationPolicy) -> Result<CheckResult> {
    let grid = oracle_grid(4);
    let err = par_max(&grid, |spec| {
        let oracle = build_paecs_numeric(spec, policy)?.state;
        let closed = fock_coefficients(spec, (oracle.dim_a(), oracle.dim_b()))?;
        Ok(closed
            .scaled(C64::new(opts.n_factor(), 0.0))
            .max_abs_diff(&oracle))
    })?;
    Ok(CheckResult::new(
        "fock_coefficients",
        err,
        1e-10,
        format!(
            "closed-form Fock amplitudes over {} states, m, n <= 4",
            grid.len()
        ),
    ))
}

/// Eigenvalue agreement and the rank-two property, as two checks.
pub fn check_eigenvalues(policy: &TruncationPolicy) -> Result<[CheckResult; 2]> {
    let grid = oracle_grid(6);
    let pairs: Vec<(f64, f64)> = grid
        .par_iter()
        .map(|spec| {
            let analytic = entropy(spec)?;
            let oracle = build_paecs_numeric(spec, policy)?;
            let values = partial_trace_b(&oracle.state).eigenvalues()?;
            let top = (values[0] - analytic.lambda_plus)
                .abs()
                .max((values.get(1).copied().unwrap_or(0.0) - analytic.lambda_minus).abs());
            let rest = max_of(values.iter().skip(2).map(|v| v.abs()));
            Ok((top, rest))
        })
        .collect::<Result<_>>()?;
    Ok([
        CheckResult::new(
            "schmidt_eigenvalues",
            max_of(pairs.iter().map(|p| p.0)),
            1e-9,
            format!(
                "lambda+- against the top two eigenvalues of the oracle rho_b, {} states",
                grid.len()
            ),
        ),
        CheckResult::new(
            "rho_b_rank",
            max_of(pairs.iter().map(|p| p.1)),
            1e-10,
            "largest oracle eigenvalue beyond the second",
        ),
    ])
}

/// `E(α, m, n) = E(α, n, m)` in closed form and through the oracle.
pub fn check_exchange_symmetry(policy: &TruncationPolicy) -> Result<[CheckResult; 2]> {
    let grid: Vec<PaecsSpec> = oracle_grid(6).into_iter().filter(|s| s.m < s.n).collect();
    let analytic = par_max(&grid, |spec| {
        Ok((entropy(spec)?.entropy_bits - entropy(&spec.swapped())?.entropy_bits).abs())
    })?;
    let oracle = par_max(&grid, |spec| {
        let a = vn_entropy(&partial_trace_b(&build_paecs_numeric(spec, policy)?.state))?;
        let b = vn_entropy(&partial_trace_b(
            &build_paecs_numeric(&spec.swapped(), policy)?.state,
        ))?;
        Ok((a - b).abs())
    })?;
    Ok([
        CheckResult::new(
            "exchange_symmetry_analytic",
            analytic,
            1e-12,
            format!("{} unordered pairs m < n <= 6", grid.len()),
        ),
        CheckResult::new(
            "exchange_symmetry_oracle",
            oracle,
            1e-9,
            "von Neumann entropy of the oracle rho_b",
        ),
    ])
}

pub fn check_maximal_entanglement() -> Result<CheckResult> {
    let mut grid = Vec::new();
    for family in [Family::Psi1Minus, Family::Psi2Minus] {
        for m in 0..=8 {
            for k in 1..=20 {
                grid.push(PaecsSpec::real(family, 0.1 * k as f64, m, m)?);
            }
        }
    }
    let err = par_max(&grid, |spec| Ok((entropy(spec)?.entropy_bits - 1.0).abs()))?;
    Ok(CheckResult::new(
        "maximal_entanglement",
        err,
        1e-10,
        "minus families with m = n <= 8, |alpha| = 0.1..2.0",
    ))
}

/// One randomized bra/ket pair for the scalar-product check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalarCase {
    pub bra: PaecsSpec,
    pub ket: PaecsSpec,
}

/// `count` supported pairings with random signs, photon numbers `≤ 4` and
/// amplitudes in the disc `|α| ≤ 1.5`.
pub fn scalar_product_cases(seed: u64, count: usize) -> Vec<ScalarCase> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairings = [
        (Pairing::Correlated, Pairing::Correlated),
        (Pairing::Anticorrelated, Pairing::Anticorrelated),
        (Pairing::Correlated, Pairing::Anticorrelated),
    ];
    let disc = |rng: &mut ChaCha8Rng| {
        C64::from_polar(
            1.5 * rng.random::<f64>().sqrt(),
            2.0 * PI * rng.random::<f64>(),
        )
    };
    (0..count)
        .map(|_| {
            let (pb, pk) = pairings[rng.random_range(0..pairings.len())];
            let sign = if rng.random::<bool>() {
                Sign::Plus
            } else {
                Sign::Minus
            };
            let bra_alpha = disc(&mut rng);
            let ket_alpha = disc(&mut rng);
            let bra = PaecsSpec::new(
                Family::from_parts(pb, sign),
                bra_alpha,
                rng.random_range(0..=4),
                rng.random_range(0..=4),
            )
            .expect("case parameters are in range");
            let ket = PaecsSpec::new(
                Family::from_parts(pk, sign),
                ket_alpha,
                rng.random_range(0..=4),
                rng.random_range(0..=4),
            )
            .expect("case parameters are in range");
            ScalarCase { bra, ket }
        })
        .collect()
}

/// Largest error of the closed-form scalar product, and of the reading
/// that evaluates each normalization constant at the other amplitude.
fn scalar_product_errors(
    opts: &VerifyOptions,
    policy: &TruncationPolicy,
) -> Result<(f64, f64, usize)> {
    let cases = scalar_product_cases(opts.seed, 20);
    let errors: Vec<(f64, f64)> = cases
        .par_iter()
        .map(|c| {
            let oracle = inner_product(
                &build_paecs_numeric(&c.bra, policy)?.state,
                &build_paecs_numeric(&c.ket, policy)?.state,
            );
            let adopted = scalar_product(&c.bra, &c.ket)? * opts.n_factor().powi(2);
            let swap = normalization(&c.bra.with_alpha(c.ket.alpha))?
                * normalization(&c.ket.with_alpha(c.bra.alpha))?
                / (normalization(&c.bra)? * normalization(&c.ket)?);
            Ok(((adopted - oracle).norm(), (adopted * swap - oracle).norm()))
        })
        .collect::<Result<_>>()?;
    Ok((
        max_of(errors.iter().map(|e| e.0)),
        max_of(errors.iter().map(|e| e.1)),
        cases.len(),
    ))
}

pub fn check_scalar_products(
    opts: &VerifyOptions,
    policy: &TruncationPolicy,
) -> Result<(CheckResult, f64)> {
    let (adopted, swapped, count) = scalar_product_errors(opts, policy)?;
    let check = CheckResult::new(
        "scalar_products",
        adopted,
        1e-9,
        format!(
            "{count} seeded cases (seed {}); prefactor N_bra(alpha) N_ket(beta). \
             Evaluating the constants at the swapped amplitudes gives error {swapped:e}",
            opts.seed
        ),
    );
    Ok((check, swapped))
}

pub fn check_schmidt_reconstruction(policy: &TruncationPolicy) -> Result<CheckResult> {
    let mut grid = Vec::new();
    for family in Family::ALL {
        for m in 0..=5 {
            for n in 0..=5 {
                for alpha in [0.3, 0.8, 1.5] {
                    grid.push(PaecsSpec::real(family, alpha, m, n)?);
                }
                grid.push(PaecsSpec::new(family, C64::from_polar(1.1, -2.0), m, n)?);
            }
        }
    }
    let err = par_max(&grid, |spec| {
        let oracle = build_paecs_numeric(spec, policy)?.state;
        let rebuilt =
            schmidt_decomposition(spec)?.reconstruct(spec, (oracle.dim_a(), oracle.dim_b()))?;
        Ok(rebuilt.max_abs_diff(&oracle))
    })?;
    Ok(CheckResult::new(
        "schmidt_reconstruction",
        err,
        1e-10,
        format!(
            "two-branch rebuild against the oracle vector, {} states",
            grid.len()
        ),
    ))
}

/// `count` points `(z1, z2)`, each uniform in the disc `|z| ≤ 4`.
pub fn phase_space_points(rng: &mut ChaCha8Rng, count: usize) -> Vec<(C64, C64)> {
    let mut disc = || {
        C64::from_polar(
            4.0 * rng.random::<f64>().sqrt(),
            2.0 * PI * rng.random::<f64>(),
        )
    };
    (0..count).map(|_| (disc(), disc())).collect()
}

pub fn check_q_pointwise(opts: &VerifyOptions, policy: &TruncationPolicy) -> Result<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x51);
    let specs: Vec<PaecsSpec> = q_matrix()
        .into_iter()
        .flat_map(|s| {
            [
                s,
                PaecsSpec {
                    family: Family::from_parts(Pairing::Anticorrelated, s.family.sign()),
                    ..s
                },
            ]
        })
        .collect();
    let cases: Vec<(PaecsSpec, Vec<(C64, C64)>)> = specs
        .into_iter()
        .map(|s| (s, phase_space_points(&mut rng, 25)))
        .collect();
    let err = par_max(&cases, |(spec, points)| {
        let q = HusimiQ::new(spec)?.with_normalization_factor(opts.n_factor());
        let state = build_paecs_numeric(spec, policy)?.state;
        let mut worst = 0.0f64;
        for &(z1, z2) in points {
            worst = max_of([
                worst,
                (q.eval(z1, z2) - husimi_q_numeric(&state, z1, z2, policy)?).abs(),
            ]);
        }
        Ok(worst)
    })?;
    Ok(CheckResult::new(
        "q_pointwise",
        err,
        1e-10,
        format!(
            "{} states x 25 seeded points with |z| <= 4 against |<z1,z2|psi>|^2/pi^2",
            cases.len()
        ),
    ))
}

/// Quadrature error at `q_nodes`, its change when the node count is halved,
/// and the vacuum case.
pub fn check_q_normalization(opts: &VerifyOptions) -> Result<[CheckResult; 3]> {
    let matrix = q_matrix();
    let half = (opts.q_nodes / 2).max(16);
    let mut err = 0.0f64;
    let mut drift = 0.0f64;
    for spec in &matrix {
        let q = HusimiQ::new(spec)?.with_normalization_factor(opts.n_factor());
        let full = q_normalization_of(&q, opts.q_nodes)?.estimate;
        let coarse = q_normalization_of(&q, half)?.estimate;
        err = max_of([err, (full - 1.0).abs()]);
        drift = max_of([drift, (full - coarse).abs()]);
    }
    let vacuum = PaecsSpec::real(Family::Psi1Plus, 0.0, 0, 0)?;
    let vq = HusimiQ::new(&vacuum)?.with_normalization_factor(opts.n_factor());
    let vacuum_err = (q_normalization_of(&vq, opts.q_nodes)?.estimate - 1.0).abs();
    Ok([
        CheckResult::new(
            "q_normalization",
            err,
            1e-2,
            format!(
                "{}-node Gauss-Legendre per axis, {} states",
                opts.q_nodes,
                matrix.len()
            ),
        ),
        CheckResult::new(
            "q_normalization_convergence",
            drift,
            5e-2,
            format!(
                "change of the estimate from {half} to {} nodes per axis",
                opts.q_nodes
            ),
        ),
        CheckResult::new(
            "q_normalization_vacuum",
            vacuum_err,
            1e-6,
            "psi1+ at alpha = 0, m = n = 0",
        ),
    ])
}

/// Oracle entropy and Q values with the default cutoff against a doubled
/// `base_dim`.
pub fn check_truncation_stability(policy: &TruncationPolicy) -> Result<CheckResult> {
    let mut specs = Vec::new();
    for family in Family::ALL {
        for (m, n) in [(0, 0), (2, 1), (3, 7)] {
            for alpha in [0.5, 1.5] {
                specs.push(PaecsSpec::real(family, alpha, m, n)?);
            }
        }
    }
    let probes = [
        (C64::new(0.5, -0.2), C64::new(1.0, 0.3)),
        (C64::new(-1.5, 0.7), C64::new(0.2, -2.0)),
    ];
    let err = par_max(&specs, |spec| {
        let base = build_paecs_numeric(spec, policy)?.state;
        let wider_policy = policy.with_base_dim(2 * policy.levels_for(spec.intensity()));
        let wider = build_paecs_numeric(spec, &wider_policy)?.state;
        let mut worst =
            (vn_entropy(&partial_trace_b(&base))? - vn_entropy(&partial_trace_b(&wider))?).abs();
        for &(z1, z2) in &probes {
            let d = husimi_q_numeric(&base, z1, z2, policy)?
                - husimi_q_numeric(&wider, z1, z2, &wider_policy)?;
            worst = max_of([worst, d.abs()]);
        }
        Ok(worst)
    })?;
    Ok(CheckResult::new(
        "truncation_stability",
        err,
        1e-10,
        format!(
            "oracle entropy and Q with the cutoff doubled, {} states",
            specs.len()
        ),
    ))
}

pub fn check_overlap_kernel(policy: &TruncationPolicy) -> Result<CheckResult> {
    let points = [
        (C64::new(0.3, 0.0), C64::new(0.3, 0.0)),
        (C64::new(0.7, 0.2), C64::new(-0.4, 0.9)),
        (C64::new(-1.2, 0.5), C64::new(1.0, -0.3)),
        (C64::new(0.0, 1.5), C64::new(1.4, 0.1)),
    ];
    let mut cases = Vec::new();
    for m in 0..=6u32 {
        for n in 0..=6u32 {
            for &(a, b) in &points {
                cases.push((m, n, a, b));
            }
        }
    }
    let err = par_max(&cases, |&(m, n, a, b)| {
        let closed = overlap_kernel(m, n, a, b)?;
        let oracle = ladder_matrix_element_numeric(n, m, a, b, policy)?;
        Ok((closed - oracle).norm() / oracle.norm().max(1.0))
    })?;
    Ok(CheckResult::new(
        "overlap_kernel",
        err,
        1e-10,
        "A_mn(alpha, beta) against <alpha| a^n a+^m |beta>, error relative to max(1, |value|)",
    ))
}

/// Qualitative features of the entropy and Q-function figures. The error
/// is the number of features that fail.
pub fn check_figure_features() -> Result<CheckResult> {
    let mut failed = Vec::new();

    let entropy_at = |alpha: f64, m: u32, n: u32| -> Result<f64> {
        Ok(entropy(&PaecsSpec::real(Family::Psi1Minus, alpha, m, n)?)?.entropy_bits)
    };
    for n in [0u32, 1, 4] {
        let values: Vec<f64> = (0..=20)
            .map(|m| entropy_at(0.2, m, n))
            .collect::<Result<_>>()?;
        if argmax_unique(&values) != Some(n as usize) {
            failed.push(format!("entropy-vs-m argmax at n = {n}"));
        }
    }
    let top = entropy_at(0.1, 0, 0)?;
    for (m, n) in [(2, 1), (3, 7), (20, 4)] {
        if entropy_at(0.1, m, n)? >= top {
            failed.push(format!("(0,0) not above ({m},{n}) at |alpha| = 0.1"));
        }
    }

    let slice = PhaseSpaceSlice::default();
    for x in [0.05f64, 0.5] {
        let single = q_grid(&PaecsSpec::real(Family::Psi1Plus, x.sqrt(), 0, 0)?, &slice)?;
        if single.local_maxima().len() != 1 {
            failed.push(format!("(0,0) Q peaks at |alpha|^2 = {x}"));
        }
        let split = q_grid(&PaecsSpec::real(Family::Psi1Plus, x.sqrt(), 2, 1)?, &slice)?;
        if split.local_maxima().len() != 4 {
            failed.push(format!("(2,1) Q peaks at |alpha|^2 = {x}"));
        }
        if !q_vanishes_on_axes(&split) {
            failed.push(format!("(2,1) Q zeros on the axes at |alpha|^2 = {x}"));
        }
    }

    let notes = if failed.is_empty() {
        "entropy argmax at m = n, small-alpha ordering, Q peak counts and axis zeros".to_string()
    } else {
        format!("failed: {}", failed.join("; "))
    };
    Ok(CheckResult::new(
        "figure_features",
        failed.len() as f64,
        0.0,
        notes,
    ))
}

/// Index of the largest value when no other value ties it.
pub fn argmax_unique(values: &[f64]) -> Option<usize> {
    let (best, &max) = values
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))?;
    let ties = values.iter().filter(|&&v| v == max).count();
    (ties == 1).then_some(best)
}

/// `true` when the grid has rows or columns at coordinate zero and every
/// value on them is exactly zero.
pub fn q_vanishes_on_axes(grid: &crate::quasiprob::QGrid) -> bool {
    let s = &grid.slice;
    let zero_i: Vec<usize> = (0..s.points_1).filter(|&i| s.value_1(i) == 0.0).collect();
    let zero_j: Vec<usize> = (0..s.points_2).filter(|&j| s.value_2(j) == 0.0).collect();
    !zero_i.is_empty()
        && !zero_j.is_empty()
        && zero_i
            .iter()
            .all(|&i| grid.values.row(i).iter().all(|&v| v == 0.0))
        && zero_j
            .iter()
            .all(|&j| grid.values.column(j).iter().all(|&v| v == 0.0))
}

/// `[2 m! n! (L_m(a) L_n(-x) ± e^{-4x} L_m(x) L_n(x))]^{-1/2}` with the
/// first Laguerre argument `a` as given.
fn normalization_with_first_argument(spec: &PaecsSpec, a: f64) -> Result<f64> {
    let x = spec.intensity();
    let s = spec.family.sign().as_f64();
    let lead = laguerre(spec.m, a)? * laguerre(spec.n, -x)?;
    let cross = (-4.0 * x).exp() * laguerre(spec.m, x)? * laguerre(spec.n, x)?;
    let bracket = 2.0 * (ln_factorial(spec.m) + ln_factorial(spec.n)).exp() * (lead + s * cross);
    Ok(bracket.powf(-0.5))
}

/// `(L_{m s1, n s1}, L_{m s2, n s2})` of the family's two branches.
fn branch_products(spec: &PaecsSpec) -> Result<(f64, f64)> {
    let x = spec.intensity();
    let fact = (ln_factorial(spec.m) + ln_factorial(spec.n)).exp();
    let l = |k: u32, s: Sign| laguerre_pm(k, x, s);
    let (p, mn) = (Sign::Plus, Sign::Minus);
    Ok(match spec.family.sign() {
        Sign::Plus => (
            fact * l(spec.m, p)? * l(spec.n, p)?,
            fact * l(spec.m, mn)? * l(spec.n, mn)?,
        ),
        Sign::Minus => (
            fact * l(spec.m, mn)? * l(spec.n, p)?,
            fact * l(spec.m, p)? * l(spec.n, mn)?,
        ),
    })
}

fn typo_ledger(policy: &TruncationPolicy, scalar_swapped: f64) -> Result<Vec<LedgerEntry>> {
    let probe = PaecsSpec::real(Family::Psi1Plus, 1.0, 2, 1)?;
    let x = probe.intensity();
    let oracle = build_paecs_numeric(&probe, policy)?;
    let norm_error = |n: f64| (n * oracle.norm_sqr.sqrt() - 1.0).abs();
    let nan_to_none = |v: f64| v.is_finite().then_some(v);

    let adopted_n = normalization(&probe)?;
    let literal_n = normalization_with_first_argument(&probe, x)?;

    let (l1, l2) = branch_products(&probe)?;
    let weight = (-2.0 * x).exp() * (l1 + l2);
    let trace_adopted = (adopted_n * adopted_n * weight - 1.0).abs();
    let trace_literal = (adopted_n * weight - 1.0).abs();

    let oracle_values = partial_trace_b(&oracle.state).eigenvalues()?;
    let analytic = entropy(&probe)?;
    let literal_radicand = 0.25 - adopted_n * adopted_n * (-4.0 * x).exp() * l1 * l2;
    let literal_lambda = 0.5 + literal_radicand.sqrt();

    let ecs = PaecsSpec::real(Family::Psi1Plus, 1.0, 0, 0)?;
    let ecs_oracle = vn_entropy(&partial_trace_b(&build_paecs_numeric(&ecs, policy)?.state))?;
    let ecs_analytic = entropy(&ecs)?.entropy_bits;

    Ok(vec![
        LedgerEntry {
            topic: "Laguerre argument of the leading normalization term (psi1+, alpha = 1, m = 2, n = 1)".into(),
            adopted: "L_m(-|alpha|^2)".into(),
            adopted_error: norm_error(adopted_n),
            literal: "L_m(|-alpha|^2) = L_m(|alpha|^2)".into(),
            literal_error: nan_to_none(norm_error(literal_n)),
            notes: if literal_n.is_finite() {
                String::new()
            } else {
                "literal bracket is negative, so N is not real".into()
            },
        },
        LedgerEntry {
            topic: "prefactor of the reduced density matrix, error in its trace".into(),
            adopted: "N^2 e^{-2|alpha|^2}".into(),
            adopted_error: trace_adopted,
            literal: "N e^{-2|alpha|^2}".into(),
            literal_error: nan_to_none(trace_literal),
            notes: "trace 1 requires the squared constant".into(),
        },
        LedgerEntry {
            topic: "power of N in the eigenvalue radicand, error in lambda+".into(),
            adopted: "N^4 e^{-4|alpha|^2} L1 L2".into(),
            adopted_error: (analytic.lambda_plus - oracle_values[0]).abs(),
            literal: "N^2 e^{-4|alpha|^2} L1 L2".into(),
            literal_error: nan_to_none((literal_lambda - oracle_values[0]).abs()),
            notes: format!("literal radicand {literal_radicand:e}"),
        },
        LedgerEntry {
            topic: "entropy of psi1+ at alpha = 1, m = n = 0".into(),
            adopted: format!("computed {ecs_analytic:?}"),
            adopted_error: (ecs_analytic - ecs_oracle).abs(),
            literal: "quoted 0.3666".into(),
            literal_error: Some((0.3666 - ecs_oracle).abs()),
            notes: format!("oracle entropy {ecs_oracle:?}"),
        },
        LedgerEntry {
            topic: "scalar-product normalization subscripts".into(),
            adopted: "N_bra(alpha) N_ket(beta)".into(),
            adopted_error: f64::NAN,
            literal: "N_bra(beta) N_ket(alpha)".into(),
            literal_error: nan_to_none(scalar_swapped),
            notes: "oracle taken as truth; adopted error is that of the scalar_products check".into(),
        },
    ])
}

/// Runs every check. Failures of individual checks are reported in the
/// result; only errors that stop a check from running are returned.
pub fn run_verification(
    opts: &VerifyOptions,
    policy: &TruncationPolicy,
) -> Result<VerificationReport> {
    opts.validate()?;
    let mut checks = vec![
        check_normalization(opts, policy)?,
        check_coefficients(opts, policy)?,
    ];
    checks.extend(check_eigenvalues(policy)?);
    checks.extend(check_exchange_symmetry(policy)?);
    checks.push(check_maximal_entanglement()?);
    let (scalar, scalar_swapped) = check_scalar_products(opts, policy)?;
    checks.push(scalar);
    checks.push(check_schmidt_reconstruction(policy)?);
    checks.push(check_q_pointwise(opts, policy)?);
    checks.extend(check_q_normalization(opts)?);
    checks.push(check_truncation_stability(policy)?);
    checks.push(check_overlap_kernel(policy)?);
    checks.push(check_figure_features()?);

    let mut ledger = typo_ledger(policy, scalar_swapped)?;
    if let Some(entry) = ledger.last_mut() {
        entry.adopted_error = checks
            .iter()
            .find(|c| c.name == "scalar_products")
            .map_or(f64::NAN, |c| c.max_abs_error);
    }

    Ok(VerificationReport {
        overall_pass: checks.iter().all(|c| c.pass),
        checks,
        typo_ledger: ledger,
        perturb: opts.perturb,
        seed: opts.seed,
    })
}
