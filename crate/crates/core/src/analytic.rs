//! Closed forms for photon-added entangled coherent states: normalization,
//! Fock coefficients, scalar products, the Schmidt decomposition over
//! excited even/odd coherent states, its eigenvalues and the entanglement
//! entropy.

use ndarray::Array2;
use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fock::{entropy_of_spectrum, TwoModeFockState};
use crate::special::{
    ladder_matrix_element, ln_factorial, ln_laguerre_combo, ln_laguerre_pm, Sign,
};
use crate::state::{Family, PaecsSpec, Pairing, Parity};

/// Tolerated negative excursion of the eigenvalue radicand before it is
/// treated as an error rather than rounding.
pub const RADICAND_TOL: f64 = 1e-12;

fn log_add_exp(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if hi == f64::NEG_INFINITY {
        return hi;
    }
    hi + (lo - hi).exp().ln_1p()
}

/// Parity labels and `ln` of the Laguerre products `L_{m±, n±}` carried by
/// the two Schmidt branches. The first branch is `(even, even)` for the plus
/// families and `(odd, even)` for the minus families.
fn branch_structure(spec: &PaecsSpec) -> Result<[(Parity, Parity, f64); 2]> {
    let x = spec.intensity();
    let (m, n) = (spec.m, spec.n);
    let branches = match spec.family.sign() {
        Sign::Plus => [(Parity::Even, Parity::Even), (Parity::Odd, Parity::Odd)],
        Sign::Minus => [(Parity::Odd, Parity::Even), (Parity::Even, Parity::Odd)],
    };
    let mut out = [(Parity::Even, Parity::Even, 0.0); 2];
    for (slot, (pa, pb)) in out.iter_mut().zip(branches) {
        let ln = ln_laguerre_combo(m, pa.sign(), n, pb.sign(), x)?;
        *slot = (pa, pb, ln);
    }
    Ok(out)
}

/// `ln` of `2 {L_{m,n}(-x,-x) ± e^{-4x} L_{m,n}(x,x)}`, the bracket whose
/// inverse square root is the normalization. It equals
/// `e^{-2x}` times the sum of the two branch products, which is a sum of
/// nonnegative terms and stays accurate as `x → 0` for the minus sign.
fn ln_norm_bracket(spec: &PaecsSpec) -> Result<f64> {
    spec.ensure_not_degenerate()?;
    let [(_, _, s1), (_, _, s2)] = branch_structure(spec)?;
    let ln = -2.0 * spec.intensity() + log_add_exp(s1, s2);
    if ln == f64::NEG_INFINITY {
        return Err(Error::Degenerate(format!(
            "normalization bracket of {} vanishes at alpha = {}",
            spec.family, spec.alpha
        )));
    }
    if !ln.is_finite() {
        return Err(Error::Overflow(format!(
            "normalization bracket for {spec:?}"
        )));
    }
    Ok(ln)
}

/// Normalization constant `N_mn^±`. The same value serves both pairings of a
/// given sign.
pub fn normalization(spec: &PaecsSpec) -> Result<f64> {
    Ok((-0.5 * ln_norm_bracket(spec)?).exp())
}

fn ln_normalization(spec: &PaecsSpec) -> Result<f64> {
    Ok(-0.5 * ln_norm_bracket(spec)?)
}

/// `α^p sqrt((p+k)!) / p!` for `p = 0, 1, ..`, by the ratio
/// `t_{p+1} / t_p = α sqrt(p+k+1) / (p+1)` from `t_0 = scale`.
fn shifted_coherent_terms(alpha: C64, k: u32, scale: f64, count: usize) -> Vec<C64> {
    let mut out = Vec::with_capacity(count);
    let mut t = C64::new(scale, 0.0);
    for p in 0..count {
        out.push(t);
        t = t * alpha * (((p + 1) as f64 + k as f64).sqrt() / (p + 1) as f64);
    }
    out
}

/// Sign pattern of the Fock expansion: `1 ± (-1)^{p+q}` for the correlated
/// pairing and `(-1)^q ± (-1)^p` for the anticorrelated one.
fn expansion_sign(family: Family, p: usize, q: usize) -> f64 {
    let par = |k: usize| if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    let s = family.sign().as_f64();
    match family.pairing() {
        Pairing::Correlated => 1.0 + s * par(p + q),
        Pairing::Anticorrelated => par(q) + s * par(p),
    }
}

/// The closed-form Fock expansion on a `dims.0 × dims.1` block. Rows below
/// `m` and columns below `n` are identically zero.
pub fn fock_coefficients(spec: &PaecsSpec, dims: (usize, usize)) -> Result<TwoModeFockState> {
    let ln_prefactor = ln_normalization(spec)? - spec.intensity();
    let (m, n) = (spec.m as usize, spec.n as usize);
    let (dim_a, dim_b) = dims;
    let mut coeff = Array2::<C64>::zeros((dim_a, dim_b));
    if dim_a > m && dim_b > n {
        // N e^{-x} rides on the mode-a seed; sqrt(m!) and sqrt(n!) start each ladder.
        let seed_a = (ln_prefactor + 0.5 * ln_factorial(spec.m)).exp();
        let seed_b = (0.5 * ln_factorial(spec.n)).exp();
        let a = shifted_coherent_terms(spec.alpha, spec.m, seed_a, dim_a - m);
        let b = shifted_coherent_terms(spec.alpha, spec.n, seed_b, dim_b - n);
        for (p, ap) in a.iter().enumerate() {
            for (q, bq) in b.iter().enumerate() {
                let s = expansion_sign(spec.family, p, q);
                if s != 0.0 {
                    coeff[[p + m, q + n]] = ap * bq * s;
                }
            }
        }
    }
    Ok(TwoModeFockState::from_coeffs(coeff))
}

/// `⟨ψ(α, m', n')|ψ(β, m, n)⟩` from the coherent-state kernels.
///
/// Supported pairings are (ψ₁, ψ₁), (ψ₂, ψ₂) and (ψ₁ bra, ψ₂ ket), each with
/// equal signs. The prefactor is the bra normalization at `α` times the ket
/// normalization at `β`; each kernel factor is the single-mode element
/// `⟨u| a^{m'} a†^{m} |v⟩`.
pub fn scalar_product(bra: &PaecsSpec, ket: &PaecsSpec) -> Result<C64> {
    let sign = bra.family.sign();
    if ket.family.sign() != sign {
        return Err(Error::Unsupported(format!(
            "scalar product between opposite signs {} and {}",
            bra.family, ket.family
        )));
    }
    let s = sign.as_f64();
    let (a, b) = (bra.alpha, ket.alpha);
    let mode_a = |u: C64, v: C64| ladder_matrix_element(bra.m, ket.m, u, v);
    let mode_b = |u: C64, v: C64| ladder_matrix_element(bra.n, ket.n, u, v);

    let bracket = match (bra.family.pairing(), ket.family.pairing()) {
        (Pairing::Correlated, Pairing::Correlated) => {
            mode_a(a, b)? * mode_b(a, b)?
                + mode_a(-a, -b)? * mode_b(-a, -b)?
                + s * mode_a(a, -b)? * mode_b(a, -b)?
                + s * mode_a(-a, b)? * mode_b(-a, b)?
        }
        (Pairing::Anticorrelated, Pairing::Anticorrelated) => {
            mode_a(a, b)? * mode_b(-a, -b)?
                + mode_a(-a, -b)? * mode_b(a, b)?
                + s * mode_a(a, -b)? * mode_b(-a, b)?
                + s * mode_a(-a, b)? * mode_b(a, -b)?
        }
        (Pairing::Correlated, Pairing::Anticorrelated) => {
            mode_a(a, b)? * mode_b(a, -b)?
                + mode_a(-a, -b)? * mode_b(-a, b)?
                + s * mode_a(a, -b)? * mode_b(a, b)?
                + s * mode_a(-a, b)? * mode_b(-a, -b)?
        }
        (Pairing::Anticorrelated, Pairing::Correlated) => {
            return Err(Error::Unsupported(format!(
                "scalar product with {} as bra and {} as ket",
                bra.family, ket.family
            )))
        }
    };
    Ok(bracket * normalization(bra)? * normalization(ket)?)
}

/// One term `weight · |α_{pa}, m⟩ ⊗ |α_{pb}, n⟩` of a Schmidt decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SchmidtBranch {
    pub weight: f64,
    pub mode_a: Parity,
    pub mode_b: Parity,
}

/// Two-branch Schmidt form over photon-added even/odd coherent states; the
/// second branch enters with `relative_sign`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SchmidtForm {
    pub branches: [SchmidtBranch; 2],
    pub relative_sign: Sign,
}

impl SchmidtForm {
    /// Reassembles the two-mode state from its branches on a
    /// `dims.0 × dims.1` block.
    pub fn reconstruct(&self, spec: &PaecsSpec, dims: (usize, usize)) -> Result<TwoModeFockState> {
        let mut state = TwoModeFockState::zeros(dims.0, dims.1);
        for (i, branch) in self.branches.iter().enumerate() {
            if branch.weight == 0.0 {
                continue;
            }
            let va = excited_parity_coherent(spec.alpha, branch.mode_a, spec.m, dims.0)?;
            let vb = excited_parity_coherent(spec.alpha, branch.mode_b, spec.n, dims.1)?;
            let sign = if i == 1 {
                self.relative_sign.as_f64()
            } else {
                1.0
            };
            let term = TwoModeFockState::product(&va, &vb);
            state = state.add_scaled(C64::new(sign * branch.weight, 0.0), &term);
        }
        Ok(state)
    }
}

/// Schmidt decomposition with weights `N e^{-|α|²} sqrt(L_{m±, n±})`.
pub fn schmidt_decomposition(spec: &PaecsSpec) -> Result<SchmidtForm> {
    let ln_scale = ln_normalization(spec)? - spec.intensity();
    let structure = branch_structure(spec)?;
    let branch = |(pa, pb, ln_l): (Parity, Parity, f64)| SchmidtBranch {
        weight: (ln_scale + 0.5 * ln_l).exp(),
        mode_a: pa,
        mode_b: pb,
    };
    let relative_sign = match spec.family.pairing() {
        Pairing::Correlated => Sign::Plus,
        Pairing::Anticorrelated => Sign::Minus,
    };
    Ok(SchmidtForm {
        branches: [branch(structure[0]), branch(structure[1])],
        relative_sign,
    })
}

/// Normalized `a†^k` applied to the normalized even or odd coherent state,
/// truncated to `dim` Fock levels.
///
/// Uses `‖a†^k (|α⟩ ± |-α⟩)‖² = 2 k! e^{-|α|²} L_k^±(|α|²)`, so the
/// amplitude on `|p + k⟩` for `p` of the right parity is
/// `sqrt(2) α^p sqrt((p+k)!) / (p! sqrt(k! L_k^±))`.
pub fn excited_parity_coherent(alpha: C64, parity: Parity, k: u32, dim: usize) -> Result<Vec<C64>> {
    if parity == Parity::Odd && alpha == C64::new(0.0, 0.0) {
        return Err(Error::Degenerate("odd coherent state at alpha = 0".into()));
    }
    let ln_l = ln_laguerre_pm(k, alpha.norm_sqr(), parity.sign())?;
    let seed = (0.5 * std::f64::consts::LN_2 - 0.5 * ln_l).exp();
    let shift = k as usize;
    let mut out = vec![C64::new(0.0, 0.0); dim];
    if dim <= shift {
        return Ok(out);
    }
    for (p, t) in shifted_coherent_terms(alpha, k, seed, dim - shift)
        .into_iter()
        .enumerate()
    {
        if parity.matches(p) {
            out[p + shift] = t;
        }
    }
    Ok(out)
}

/// The two nonzero eigenvalues of the reduced density matrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EigenvaluePair {
    pub lambda_plus: f64,
    pub lambda_minus: f64,
}

/// Eigenvalue pair plus the entropy of entanglement in bits.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EntropyResult {
    pub lambda_plus: f64,
    pub lambda_minus: f64,
    pub entropy_bits: f64,
}

/// `λ± = 1/2 ± sqrt(1/4 - N⁴ e^{-4|α|²} L₁ L₂)` with `L₁, L₂` the branch
/// Laguerre products.
///
/// The radicand is checked as written, then evaluated in the equivalent form
/// `((L₁ - L₂) / (2 (L₁ + L₂)))²`, which follows from
/// `N² e^{-2|α|²} (L₁ + L₂) = 1` and does not cancel when the two branches
/// are nearly balanced.
pub fn schmidt_eigenvalues(spec: &PaecsSpec) -> Result<EigenvaluePair> {
    let ln_n = ln_normalization(spec)?;
    let x = spec.intensity();
    let [(_, _, s1), (_, _, s2)] = branch_structure(spec)?;

    let product = (4.0 * ln_n - 4.0 * x + s1 + s2).exp();
    let radicand = 0.25 - product;
    if radicand < -RADICAND_TOL {
        return Err(Error::NumericalConsistency(format!(
            "eigenvalue radicand {radicand:e} for {spec:?}"
        )));
    }

    let (hi, lo) = if s1 >= s2 { (s1, s2) } else { (s2, s1) };
    let ratio = (lo - hi).exp(); // L_small / L_large in [0, 1]
    let half_gap = 0.5 * (1.0 - ratio) / (1.0 + ratio);
    let lambda_plus = 0.5 + half_gap;
    let lambda_minus = ratio / ((1.0 + ratio) * (1.0 + ratio)) / lambda_plus;
    Ok(EigenvaluePair {
        lambda_plus,
        lambda_minus,
    })
}

/// Entropy of entanglement `-λ₊ log₂ λ₊ - λ₋ log₂ λ₋`.
pub fn entropy(spec: &PaecsSpec) -> Result<EntropyResult> {
    let pair = schmidt_eigenvalues(spec)?;
    Ok(EntropyResult {
        lambda_plus: pair.lambda_plus,
        lambda_minus: pair.lambda_minus,
        entropy_bits: entropy_of_spectrum(&[pair.lambda_plus, pair.lambda_minus]),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::laguerre_pm;

    fn spec(family: Family, alpha: f64, m: u32, n: u32) -> PaecsSpec {
        PaecsSpec::real(family, alpha, m, n).unwrap()
    }

    #[test]
    fn plain_ecs_normalization() {
        for &alpha in &[0.1f64, 0.5, 1.0, 2.0] {
            let expected = (2.0 * (1.0 + (-4.0 * alpha * alpha).exp())).powf(-0.5);
            let got = normalization(&spec(Family::Psi1Plus, alpha, 0, 0)).unwrap();
            assert!((got - expected).abs() < 1e-15 * expected.max(1.0));
        }
    }

    #[test]
    fn vacuum_normalization_is_fock_norm() {
        for (m, n) in [(0, 0), (2, 3), (5, 1)] {
            let fact = ln_factorial(m).exp() * ln_factorial(n).exp();
            let expected = (4.0 * fact).powf(-0.5);
            let got = normalization(&spec(Family::Psi2Plus, 0.0, m, n)).unwrap();
            assert!((got - expected).abs() < 1e-15);
        }
    }

    #[test]
    fn minus_family_at_origin_is_degenerate() {
        for family in [Family::Psi1Minus, Family::Psi2Minus] {
            assert!(normalization(&spec(family, 0.0, 1, 1))
                .unwrap_err()
                .is_degenerate());
            assert!(entropy(&spec(family, 0.0, 0, 0))
                .unwrap_err()
                .is_degenerate());
        }
    }

    #[test]
    fn expansion_parity_zeros() {
        let s = spec(Family::Psi1Plus, 0.9, 1, 2);
        let st = fock_coefficients(&s, (20, 20)).unwrap();
        for p in 0..20 {
            for q in 0..20 {
                let z = st.get(p, q);
                if p < 1 || q < 2 || (p - 1 + q - 2) % 2 == 1 {
                    assert_eq!(z, C64::new(0.0, 0.0), "({p},{q})");
                }
            }
        }
        let s = spec(Family::Psi2Minus, 0.9, 0, 0);
        let st = fock_coefficients(&s, (20, 20)).unwrap();
        for p in 0..20 {
            for q in 0..20 {
                if p % 2 == q % 2 {
                    assert_eq!(st.get(p, q), C64::new(0.0, 0.0));
                }
            }
        }
    }

    #[test]
    fn self_scalar_product_is_one() {
        for family in Family::ALL {
            let s = PaecsSpec::new(family, C64::new(0.7, 0.3), 2, 1).unwrap();
            let v = scalar_product(&s, &s).unwrap();
            assert!((v - 1.0).norm() < 1e-12, "{family}: {v}");
        }
        let s = spec(Family::Psi1Plus, 1.3, 0, 0);
        assert!((scalar_product(&s, &s).unwrap() - 1.0).norm() < 1e-14);
    }

    #[test]
    fn unsupported_pairings() {
        let p1 = spec(Family::Psi1Plus, 0.5, 0, 0);
        let m1 = spec(Family::Psi1Minus, 0.5, 0, 0);
        let p2 = spec(Family::Psi2Plus, 0.5, 0, 0);
        assert!(matches!(
            scalar_product(&p1, &m1),
            Err(Error::Unsupported(_))
        ));
        assert!(matches!(
            scalar_product(&p2, &p1),
            Err(Error::Unsupported(_))
        ));
        assert!(scalar_product(&p1, &p2).is_ok());
    }

    #[test]
    fn minus_family_balanced_weights() {
        for m in 0..6 {
            for family in [Family::Psi1Minus, Family::Psi2Minus] {
                let form = schmidt_decomposition(&spec(family, 0.8, m, m)).unwrap();
                let h = 0.5f64.sqrt();
                assert!((form.branches[0].weight - h).abs() < 1e-12);
                assert!((form.branches[1].weight - h).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn schmidt_labels_and_weights() {
        let form = schmidt_decomposition(&spec(Family::Psi2Minus, 1.1, 2, 3)).unwrap();
        assert_eq!(form.relative_sign, Sign::Minus);
        assert_eq!(
            (form.branches[0].mode_a, form.branches[0].mode_b),
            (Parity::Odd, Parity::Even)
        );
        assert_eq!(
            (form.branches[1].mode_a, form.branches[1].mode_b),
            (Parity::Even, Parity::Odd)
        );
        let w: f64 = form.branches.iter().map(|b| b.weight * b.weight).sum();
        assert!((w - 1.0).abs() < 1e-12);

        let form = schmidt_decomposition(&spec(Family::Psi1Plus, 1e-9, 0, 0)).unwrap();
        assert!(form.branches[1].weight < 1e-8);
        assert_eq!(form.relative_sign, Sign::Plus);
    }

    #[test]
    fn excited_parity_examples() {
        let alpha = C64::new(0.9, 0.2);
        let x = alpha.norm_sqr();
        let even = excited_parity_coherent(alpha, Parity::Even, 0, 40).unwrap();
        let norm = (2.0 * (1.0 + (-2.0 * x).exp())).sqrt();
        let coh = crate::fock::coherent_fock(alpha, 40);
        let minus = crate::fock::coherent_fock(-alpha, 40);
        for p in 0..40 {
            assert!((even[p] - (coh[p] + minus[p]) / norm).norm() < 1e-15);
        }

        let fock = excited_parity_coherent(C64::new(0.0, 0.0), Parity::Even, 3, 8).unwrap();
        assert_eq!(fock[3], C64::new(1.0, 0.0));
        assert!(fock
            .iter()
            .enumerate()
            .all(|(i, z)| i == 3 || *z == C64::new(0.0, 0.0)));

        let odd = excited_parity_coherent(C64::new(1.0, 0.0), Parity::Odd, 2, 60).unwrap();
        let norm: f64 = odd.iter().map(|z| z.norm_sqr()).sum();
        assert!((norm - 1.0).abs() < 1e-14);
        // odd photon numbers shifted by two stay odd
        for (i, z) in odd.iter().enumerate() {
            if i < 2 || (i - 2) % 2 == 0 {
                assert_eq!(*z, C64::new(0.0, 0.0));
            }
        }
        assert!(
            excited_parity_coherent(C64::new(0.0, 0.0), Parity::Odd, 1, 4)
                .unwrap_err()
                .is_degenerate()
        );
    }

    #[test]
    fn ecs_eigenvalues_against_even_odd_weights() {
        // |α,α⟩ + |-α,-α⟩ = (1 + e^{-2x}) |e⟩|e⟩ + (1 - e^{-2x}) |o⟩|o⟩
        let x: f64 = 1.0;
        let we = (1.0 + (-2.0 * x).exp()).powi(2);
        let wo = (1.0 - (-2.0 * x).exp()).powi(2);
        let pair = schmidt_eigenvalues(&spec(Family::Psi1Plus, 1.0, 0, 0)).unwrap();
        assert!((pair.lambda_plus - we / (we + wo)).abs() < 1e-15);
        assert!((pair.lambda_minus - wo / (we + wo)).abs() < 1e-15);
        let e = entropy(&spec(Family::Psi1Plus, 1.0, 0, 0)).unwrap();
        assert!((e.entropy_bits - 0.948_418_466_236_661_4).abs() < 1e-12);
    }

    #[test]
    fn eigenvalue_limits() {
        for m in 0..5 {
            let pair = schmidt_eigenvalues(&spec(Family::Psi1Minus, 0.6, m, m)).unwrap();
            assert_eq!(pair.lambda_plus, 0.5);
            assert_eq!(pair.lambda_minus, 0.5);
        }
        let e = entropy(&spec(Family::Psi1Plus, 0.0, 0, 0)).unwrap();
        assert_eq!(e.entropy_bits, 0.0);
        let e = entropy(&spec(Family::Psi1Plus, 4.0, 0, 0)).unwrap();
        assert!(1.0 - e.entropy_bits < 1e-12);
    }

    #[test]
    fn entropy_sums_and_ordering() {
        for family in Family::ALL {
            for (m, n) in [(0, 1), (2, 1), (3, 7), (20, 4)] {
                for &a in &[0.05, 0.2, 0.7, 1.5, 3.0] {
                    let e = entropy(&spec(family, a, m, n)).unwrap();
                    assert!((e.lambda_plus + e.lambda_minus - 1.0).abs() < 1e-12);
                    assert!(e.lambda_plus >= e.lambda_minus && e.lambda_minus >= 0.0);
                    assert!((0.0..=1.0).contains(&e.entropy_bits));
                }
            }
        }
    }

    #[test]
    fn sign_families_share_entropy_bitwise() {
        for (m, n) in [(0, 0), (2, 1), (3, 7)] {
            for &a in &[0.2, 1.0] {
                let p1 = entropy(&spec(Family::Psi1Plus, a, m, n)).unwrap();
                let p2 = entropy(&spec(Family::Psi2Plus, a, m, n)).unwrap();
                assert_eq!(p1, p2);
                let m1 = entropy(&spec(Family::Psi1Minus, a, m, n)).unwrap();
                let m2 = entropy(&spec(Family::Psi2Minus, a, m, n)).unwrap();
                assert_eq!(m1, m2);
            }
        }
    }

    #[test]
    fn exchange_symmetry_is_exact() {
        for family in Family::ALL {
            for m in 0..8 {
                for n in 0..8 {
                    let s = spec(family, 0.45, m, n);
                    let a = entropy(&s).unwrap().entropy_bits;
                    let b = entropy(&s.swapped()).unwrap().entropy_bits;
                    assert!((a - b).abs() <= 1e-12);
                }
            }
        }
    }

    #[test]
    fn phase_invariance() {
        for family in Family::ALL {
            let base = entropy(&spec(family, 0.9, 2, 1)).unwrap().entropy_bits;
            for k in 0..12 {
                let theta = k as f64 * std::f64::consts::PI / 6.0;
                let s = PaecsSpec::new(family, C64::from_polar(0.9, theta), 2, 1).unwrap();
                assert!((entropy(&s).unwrap().entropy_bits - base).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn branch_products_use_laguerre_pm() {
        let s = spec(Family::Psi1Minus, 0.7, 2, 1);
        let x = 0.49;
        let l1 =
            2.0 * laguerre_pm(2, x, Sign::Minus).unwrap() * laguerre_pm(1, x, Sign::Plus).unwrap();
        let [(_, _, s1), _] = branch_structure(&s).unwrap();
        assert!((s1.exp() - l1).abs() < 1e-13 * l1);
    }
}
