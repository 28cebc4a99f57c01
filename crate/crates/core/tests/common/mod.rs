//! A second Fock-space construction of the states, kept free of library
//! code: coherent vectors from `α^p / sqrt(p!)`, creation operators as index
//! shifts, and the reduced spectrum from a 2x2 Gram matrix.
#![allow(dead_code)]

use std::f64::consts::PI;

use num_complex::Complex64 as C;
use paecs::Family;

/// Coherent levels kept before photons are added.
pub const LEVELS: usize = 84;
/// Largest photon addition the helpers support.
pub const MAX_SHIFT: usize = 12;
/// Fock dimension of every dense vector built here.
pub const DIM: usize = LEVELS + MAX_SHIFT;

pub fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

pub fn coherent(alpha: C, dim: usize) -> Vec<C> {
    let mut sqrt_fact = 1.0f64;
    (0..dim)
        .map(|p| {
            if p > 0 {
                sqrt_fact *= (p as f64).sqrt();
            }
            (-0.5 * alpha.norm_sqr()).exp() * alpha.powu(p as u32) / sqrt_fact
        })
        .collect()
}

/// `a†^k v`, keeping the dimension of `v` (the top `k` levels must be
/// empty).
pub fn raise(v: &[C], k: usize) -> Vec<C> {
    let mut out = vec![c(0.0, 0.0); v.len()];
    for p in 0..v.len().saturating_sub(k) {
        let w: f64 = (1..=k).map(|j| ((p + j) as f64).sqrt()).product();
        out[p + k] = v[p] * w;
    }
    out
}

pub fn dot(u: &[C], v: &[C]) -> C {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

/// Amplitude signs `(mode a, mode b)` and weight of the two superposed
/// product states.
pub fn superposition(family: Family) -> [(f64, f64, f64); 2] {
    match family {
        Family::Psi1Plus => [(1.0, 1.0, 1.0), (-1.0, -1.0, 1.0)],
        Family::Psi1Minus => [(1.0, 1.0, 1.0), (-1.0, -1.0, -1.0)],
        Family::Psi2Plus => [(1.0, -1.0, 1.0), (-1.0, 1.0, 1.0)],
        Family::Psi2Minus => [(1.0, -1.0, 1.0), (-1.0, 1.0, -1.0)],
    }
}

/// The unnormalized state as `Σ_k w_k |a_k⟩|b_k⟩` with
/// `a_k = a†^m |±α⟩`, `b_k = b†^n |±α⟩`.
pub struct Branches {
    pub a: [Vec<C>; 2],
    pub b: [Vec<C>; 2],
    pub w: [f64; 2],
}

pub fn branches(family: Family, alpha: C, m: u32, n: u32) -> Branches {
    assert!(m as usize <= MAX_SHIFT && n as usize <= MAX_SHIFT);
    let [(sa0, sb0, w0), (sa1, sb1, w1)] = superposition(family);
    let mode = |s: f64, k: u32| {
        let mut v = coherent(alpha * s, LEVELS);
        v.resize(DIM, c(0.0, 0.0));
        raise(&v, k as usize)
    };
    Branches {
        a: [mode(sa0, m), mode(sa1, m)],
        b: [mode(sb0, n), mode(sb1, n)],
        w: [w0, w1],
    }
}

/// Row-major `DIM x DIM` amplitudes.
pub struct Dense {
    pub coeff: Vec<C>,
}

impl Dense {
    pub fn get(&self, p: usize, q: usize) -> C {
        self.coeff[p * DIM + q]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coeff.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn normalized(&self) -> Dense {
        let s = 1.0 / self.norm_sqr().sqrt();
        Dense {
            coeff: self.coeff.iter().map(|z| z * s).collect(),
        }
    }

    pub fn inner(&self, other: &Dense) -> C {
        dot(&self.coeff, &other.coeff)
    }

    /// `|⟨z1, z2|ψ⟩|² / π²`
    pub fn husimi(&self, z1: C, z2: C) -> f64 {
        let u = coherent(z1, DIM);
        let v = coherent(z2, DIM);
        let mut amp = c(0.0, 0.0);
        for (p, up) in u.iter().enumerate() {
            for (q, vq) in v.iter().enumerate() {
                amp += up.conj() * vq.conj() * self.get(p, q);
            }
        }
        amp.norm_sqr() / (PI * PI)
    }
}

pub fn dense(br: &Branches) -> Dense {
    let mut coeff = vec![c(0.0, 0.0); DIM * DIM];
    for k in 0..2 {
        for p in 0..DIM {
            let ap = br.a[k][p] * br.w[k];
            if ap == c(0.0, 0.0) {
                continue;
            }
            for q in 0..DIM {
                coeff[p * DIM + q] += ap * br.b[k][q];
            }
        }
    }
    Dense { coeff }
}

pub fn state(family: Family, alpha: C, m: u32, n: u32) -> Dense {
    dense(&branches(family, alpha, m, n))
}

/// The two nonzero eigenvalues of the normalized reduced density matrix,
/// largest first.
///
/// With `A = [a_0 a_1]`, `X_kl = w_k w_l ⟨b_l|b_k⟩` and `G = A†A = L L†`,
/// the reduced matrix `A X A†` has the same nonzero spectrum as the
/// Hermitian `L† X L`.
pub fn reduced_spectrum(br: &Branches) -> (f64, f64) {
    let g = |i: usize, j: usize| dot(&br.a[i], &br.a[j]);
    let x = |k: usize, l: usize| dot(&br.b[l], &br.b[k]) * (br.w[k] * br.w[l]);
    let l00 = g(0, 0).re.sqrt();
    let l10 = g(1, 0) / l00;
    let l11 = (g(1, 1).re - l10.norm_sqr()).sqrt();
    let lm = [[c(l00, 0.0), c(0.0, 0.0)], [l10, c(l11, 0.0)]];
    let mut h = [[c(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    h[i][j] += lm[k][i].conj() * x(k, l) * lm[l][j];
                }
            }
        }
    }
    let trace = h[0][0].re + h[1][1].re;
    let mean = 0.5 * trace;
    let half_gap = (0.25 * (h[0][0].re - h[1][1].re).powi(2) + h[0][1].norm_sqr()).sqrt();
    ((mean + half_gap) / trace, (mean - half_gap) / trace)
}

/// `⟨α| a^n a†^m |β⟩`
pub fn ladder_element(n: u32, m: u32, alpha: C, beta: C) -> C {
    let mut u = coherent(alpha, LEVELS);
    let mut v = coherent(beta, LEVELS);
    u.resize(DIM, c(0.0, 0.0));
    v.resize(DIM, c(0.0, 0.0));
    dot(&raise(&u, n as usize), &raise(&v, m as usize))
}

pub fn entropy_bits(l: (f64, f64)) -> f64 {
    [l.0, l.1]
        .iter()
        .filter(|&&x| x > 0.0)
        .map(|&x| -x * x.log2())
        .sum()
}
