//! Polynomial and special-function layer: Laguerre polynomials, the
//! two-variable Hermite polynomials, the even/odd Laguerre combinations that
//! carry the Schmidt weights, and the coherent-state matrix-element kernel.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Highest Laguerre order accepted by [`laguerre`].
pub const LAGUERRE_MAX_ORDER: u32 = 200;

/// Highest index accepted by [`hermite2`] and the kernels built on it.
pub const HERMITE_MAX_ORDER: u32 = 40;

/// Sign selector for the `±` superpositions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_f64(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// Arguments `(ξ, η)` of the two-variable Hermite polynomial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HermiteArgs {
    pub xi: C64,
    pub eta: C64,
}

impl HermiteArgs {
    pub fn new(xi: C64, eta: C64) -> Self {
        HermiteArgs { xi, eta }
    }
}

fn require_finite(name: &str, x: f64) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} must be finite, got {x}")))
    }
}

fn require_finite_c(name: &str, z: C64) -> Result<()> {
    require_finite(name, z.re)?;
    require_finite(name, z.im)
}

/// `ln k!`, accumulated as a sum of logarithms.
pub fn ln_factorial(k: u32) -> f64 {
    (2..=k).map(|i| (i as f64).ln()).sum()
}

/// Laguerre polynomial `L_m(x)` by the upward three-term recurrence
/// `(k+1) L_{k+1} = (2k+1-x) L_k - k L_{k-1}`.
pub fn laguerre(m: u32, x: f64) -> Result<f64> {
    if m > LAGUERRE_MAX_ORDER {
        return Err(Error::Domain(format!(
            "Laguerre order {m} exceeds cap {LAGUERRE_MAX_ORDER}"
        )));
    }
    require_finite("Laguerre argument", x)?;
    if m == 0 {
        return Ok(1.0);
    }
    let (mut prev, mut cur) = (1.0, 1.0 - x);
    for k in 1..m {
        let k = k as f64;
        let next = ((2.0 * k + 1.0 - x) * cur - k * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Two-variable Hermite polynomial
/// `H_{m,n}(ξ,η) = Σ_l (-1)^l m! n! / (l! (m-l)! (n-l)!) ξ^{m-l} η^{n-l}`.
///
/// The combinatorial weight is advanced by the exact ratio
/// `c_{l+1} / c_l = (m-l)(n-l)/(l+1)` starting from `c_0 = 1`, so no
/// factorial is ever formed.
pub fn hermite2(m: u32, n: u32, args: HermiteArgs) -> Result<C64> {
    if m > HERMITE_MAX_ORDER || n > HERMITE_MAX_ORDER {
        return Err(Error::Domain(format!(
            "Hermite indices ({m}, {n}) exceed cap {HERMITE_MAX_ORDER}"
        )));
    }
    require_finite_c("Hermite xi", args.xi)?;
    require_finite_c("Hermite eta", args.eta)?;

    let mut sum = C64::new(0.0, 0.0);
    let mut weight = 1.0_f64;
    for l in 0..=m.min(n) {
        let term = args.xi.powu(m - l) * args.eta.powu(n - l) * weight;
        if l % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        weight *= ((m - l) as f64) * ((n - l) as f64) / ((l + 1) as f64);
    }
    Ok(sum)
}

/// Splits `e^x L_m(-x) = Σ_l a_l e^x`, `a_l = C(m,l) x^l / l! ≥ 0`, by the
/// parity of `l`. Returns `(Σ_{l even} a_l, Σ_{l odd} a_l)`.
fn binomial_parity_sums(m: u32, x: f64) -> (f64, f64) {
    let (mut even, mut odd) = (0.0, 0.0);
    let mut a = 1.0_f64;
    for l in 0..=m {
        if l % 2 == 0 {
            even += a;
        } else {
            odd += a;
        }
        // a_{l+1} / a_l = (m-l) x / (l+1)^2
        let next = (l + 1) as f64;
        a *= ((m - l) as f64) * x / (next * next);
    }
    (even, odd)
}

fn check_pm_args(m: u32, x: f64) -> Result<()> {
    if m > LAGUERRE_MAX_ORDER {
        return Err(Error::Domain(format!(
            "Laguerre order {m} exceeds cap {LAGUERRE_MAX_ORDER}"
        )));
    }
    require_finite("Laguerre argument", x)?;
    if x < 0.0 {
        return Err(Error::Domain(format!(
            "L_m^± needs a nonnegative argument |alpha|^2, got {x}"
        )));
    }
    Ok(())
}

/// Natural log of `L_m^±(x)`; `-inf` when the value is exactly zero.
///
/// Since `e^x L_m(-x) = Σ_j x^j/j! · Σ_l a_l` with nonnegative `a_l`, its
/// even and odd parts are `Σ a_l cosh x` / `Σ a_l sinh x` with the roles of
/// cosh and sinh swapped for odd `l`. Every term is nonnegative, so neither
/// sign suffers cancellation as `x → 0`.
pub fn ln_laguerre_pm(m: u32, x: f64, sign: Sign) -> Result<f64> {
    check_pm_args(m, x)?;
    let (even, odd) = binomial_parity_sums(m, x);
    // e^{-x} cosh x = (1 + t)/2, e^{-x} sinh x = (1 - t)/2 with t = e^{-2x}
    let one_plus_t = 1.0 + (-2.0 * x).exp();
    let one_minus_t = -(-2.0 * x).exp_m1();
    let inner = match sign {
        Sign::Plus => even * one_plus_t + odd * one_minus_t,
        Sign::Minus => even * one_minus_t + odd * one_plus_t,
    };
    if !inner.is_finite() {
        return Err(Error::Overflow(format!("L_{m}^{}({x})", sign.symbol())));
    }
    Ok(x + inner.ln())
}

/// `L_m^±(x) = e^x L_m(-x) ± e^{-x} L_m(x)` for `x ≥ 0`.
pub fn laguerre_pm(m: u32, x: f64, sign: Sign) -> Result<f64> {
    let ln = ln_laguerre_pm(m, x, sign)?;
    let value = ln.exp();
    if value.is_infinite() {
        return Err(Error::Overflow(format!("L_{m}^{}({x})", sign.symbol())));
    }
    Ok(value)
}

/// Natural log of `m! n! L_m^{sm}(x) L_n^{sn}(x)`.
///
/// The per-mode pieces are summed first so that swapping `(m, sm)` with
/// `(n, sn)` reproduces the identical float.
pub fn ln_laguerre_combo(m: u32, sm: Sign, n: u32, sn: Sign, x: f64) -> Result<f64> {
    let first = ln_factorial(m) + ln_laguerre_pm(m, x, sm)?;
    let second = ln_factorial(n) + ln_laguerre_pm(n, x, sn)?;
    Ok(first + second)
}

/// `L_{m sm, n sn} = m! n! L_m^{sm}(x) L_n^{sn}(x)`, accumulated in the log
/// domain and exponentiated once.
pub fn laguerre_combo(m: u32, sm: Sign, n: u32, sn: Sign, x: f64) -> Result<f64> {
    let ln = ln_laguerre_combo(m, sm, n, sn, x)?;
    if ln == f64::NEG_INFINITY {
        return Ok(0.0);
    }
    if ln > f64::MAX.ln() {
        return Err(Error::Overflow(format!(
            "L_{{{m}{},{n}{}}}({x}) = exp({ln})",
            sm.symbol(),
            sn.symbol()
        )));
    }
    Ok(ln.exp())
}

/// `(-i)^k`.
fn neg_i_pow(k: u32) -> C64 {
    match k % 4 {
        0 => C64::new(1.0, 0.0),
        1 => C64::new(0.0, -1.0),
        2 => C64::new(-1.0, 0.0),
        _ => C64::new(0.0, 1.0),
    }
}

/// Coherent-state kernel
/// `A_{mn}(α, β) = (-i)^{m+n} exp(-|α|²/2 - |β|²/2 + α*β) H_{m,n}(iα*, iβ)`.
///
/// By the normal-ordering identity `a^n a†^m = (-i)^{m+n} :H_{m,n}(ia†, ia):`
/// this is the matrix element `⟨α| a^n a†^m |β⟩`: the first index counts the
/// creation operators.
pub fn overlap_kernel(m: u32, n: u32, alpha: C64, beta: C64) -> Result<C64> {
    require_finite_c("alpha", alpha)?;
    require_finite_c("beta", beta)?;
    let i = C64::i();
    let h = hermite2(m, n, HermiteArgs::new(i * alpha.conj(), i * beta))?;
    let exponent = -0.5 * alpha.norm_sqr() - 0.5 * beta.norm_sqr() + alpha.conj() * beta;
    Ok(neg_i_pow(m + n) * exponent.exp() * h)
}

/// `⟨α| a^{bra_power} a†^{ket_power} |β⟩`, the single-mode factor of the
/// photon-added scalar products.
pub fn ladder_matrix_element(bra_power: u32, ket_power: u32, alpha: C64, beta: C64) -> Result<C64> {
    overlap_kernel(ket_power, bra_power, alpha, beta)
}
