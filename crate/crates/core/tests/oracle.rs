//! Closed forms and the library's Fock oracle against the independent
//! construction in `common`.

mod common;

use std::f64::consts::PI;

use common::{c, Dense, DIM};
use num_complex::Complex64 as C;
use paecs::fock::ladder_matrix_element_numeric;
use paecs::{
    build_paecs_numeric, entropy, fock_coefficients, normalization, overlap_kernel,
    partial_trace_b, q_analytic, scalar_product, schmidt_decomposition, vn_entropy, Family,
    PaecsSpec, TruncationPolicy, TwoModeFockState,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn amplitudes() -> Vec<C> {
    let mut out: Vec<C> = [0.2, 0.5, 1.0, 1.5, 2.0]
        .iter()
        .map(|&a| c(a, 0.0))
        .collect();
    out.push(C::from_polar(0.8, PI / 5.0));
    out
}

fn max_diff(lib: &TwoModeFockState, reference: &Dense) -> f64 {
    let mut worst = 0.0f64;
    for p in 0..DIM.max(lib.dim_a()) {
        for q in 0..DIM.max(lib.dim_b()) {
            let r = if p < DIM && q < DIM {
                reference.get(p, q)
            } else {
                c(0.0, 0.0)
            };
            worst = worst.max((lib.get(p, q) - r).norm());
        }
    }
    worst
}

#[test]
fn normalization_matches_independent_norm() {
    let mut worst = 0.0f64;
    for family in Family::ALL {
        for m in 0..=6 {
            for n in 0..=6 {
                for alpha in amplitudes() {
                    let spec = PaecsSpec::new(family, alpha, m, n).unwrap();
                    let norm_sqr = common::state(family, alpha, m, n).norm_sqr();
                    worst =
                        worst.max((normalization(&spec).unwrap() * norm_sqr.sqrt() - 1.0).abs());
                }
            }
        }
    }
    assert!(worst <= 1e-9, "worst {worst:e}");
}

#[test]
fn closed_form_coefficients_match_independent_vector() {
    let mut worst = 0.0f64;
    for family in Family::ALL {
        for m in 0..=4 {
            for n in 0..=4 {
                for alpha in amplitudes() {
                    let spec = PaecsSpec::new(family, alpha, m, n).unwrap();
                    let reference = common::state(family, alpha, m, n).normalized();
                    let closed = fock_coefficients(&spec, (DIM, DIM)).unwrap();
                    worst = worst.max(max_diff(&closed, &reference));
                }
            }
        }
    }
    assert!(worst <= 1e-10, "worst {worst:e}");
}

#[test]
fn library_oracle_matches_independent_vector() {
    let policy = TruncationPolicy::default();
    for family in Family::ALL {
        for (m, n) in [(0, 0), (1, 0), (3, 2), (8, 8), (0, 7)] {
            for alpha in amplitudes() {
                let spec = PaecsSpec::new(family, alpha, m, n).unwrap();
                let built = build_paecs_numeric(&spec, &policy).unwrap();
                assert!((built.state.norm_sqr() - 1.0).abs() <= 1e-12);
                let reference = common::state(family, alpha, m, n);
                assert!((built.norm_sqr / reference.norm_sqr() - 1.0).abs() <= 1e-12);
                // the oracle keeps a block whose complement holds < tail_tol of the mass
                let full = reference.normalized();
                let (da, db) = (built.state.dim_a(), built.state.dim_b());
                let mut kept = 0.0;
                let mut worst = 0.0f64;
                for p in 0..da.min(DIM) {
                    for q in 0..db.min(DIM) {
                        kept += full.get(p, q).norm_sqr();
                        worst = worst.max(
                            (built.state.get(p, q) * built.norm_sqr.sqrt()
                                / reference.norm_sqr().sqrt()
                                - full.get(p, q))
                            .norm(),
                        );
                    }
                }
                assert!(
                    1.0 - kept < 10.0 * policy.tail_tol,
                    "{spec:?}: discarded {:e}",
                    1.0 - kept
                );
                assert!(worst <= 1e-12, "{spec:?}: {worst:e}");
                let rho = partial_trace_b(&built.state);
                assert!((rho.trace().re - 1.0).abs() <= 1e-10);
                assert!(rho.hermiticity_error() <= 1e-12);
            }
        }
    }
}

#[test]
fn eigenvalues_match_gram_spectrum() {
    let mut worst = 0.0f64;
    for family in Family::ALL {
        for m in 0..=6 {
            for n in 0..=6 {
                for alpha in amplitudes() {
                    let spec = PaecsSpec::new(family, alpha, m, n).unwrap();
                    let e = entropy(&spec).unwrap();
                    let (hi, lo) = common::reduced_spectrum(&common::branches(family, alpha, m, n));
                    worst = worst
                        .max((e.lambda_plus - hi).abs())
                        .max((e.lambda_minus - lo).abs());
                }
            }
        }
    }
    assert!(worst <= 1e-9, "worst {worst:e}");
}

#[test]
fn two_mode_coherent_superposition_entropy() {
    let e = entropy(&PaecsSpec::real(Family::Psi1Plus, 1.0, 0, 0).unwrap()).unwrap();
    let reference = common::entropy_bits(common::reduced_spectrum(&common::branches(
        Family::Psi1Plus,
        c(1.0, 0.0),
        0,
        0,
    )));
    assert!((e.entropy_bits - reference).abs() < 1e-12);
    assert!((e.entropy_bits - 0.9484184662366614).abs() < 1e-12);
}

#[test]
fn scalar_products_match_independent_inner_products() {
    let mut rng = ChaCha8Rng::seed_from_u64(5150);
    let families = [
        (Family::Psi1Plus, Family::Psi1Plus),
        (Family::Psi1Minus, Family::Psi1Minus),
        (Family::Psi2Plus, Family::Psi2Plus),
        (Family::Psi2Minus, Family::Psi2Minus),
        (Family::Psi1Plus, Family::Psi2Plus),
        (Family::Psi1Minus, Family::Psi2Minus),
    ];
    let disc = |rng: &mut ChaCha8Rng| {
        C::from_polar(
            1.5 * rng.random::<f64>().sqrt(),
            2.0 * PI * rng.random::<f64>(),
        )
    };
    for _ in 0..20 {
        let (fb, fk) = families[rng.random_range(0..families.len())];
        let (a, b) = (disc(&mut rng), disc(&mut rng));
        let (mb, nb, mk, nk) = (
            rng.random_range(0..=4),
            rng.random_range(0..=4),
            rng.random_range(0..=4),
            rng.random_range(0..=4),
        );
        let bra = PaecsSpec::new(fb, a, mb, nb).unwrap();
        let ket = PaecsSpec::new(fk, b, mk, nk).unwrap();
        let closed = scalar_product(&bra, &ket).unwrap();
        let reference = common::state(fb, a, mb, nb)
            .normalized()
            .inner(&common::state(fk, b, mk, nk).normalized());
        assert!(
            (closed - reference).norm() <= 1e-9,
            "{bra:?} {ket:?}: {closed} vs {reference}"
        );
    }
}

#[test]
fn schmidt_branches_rebuild_independent_vector() {
    let mut worst = 0.0f64;
    for family in Family::ALL {
        for m in 0..=5 {
            for n in 0..=5 {
                for alpha in [c(0.3, 0.0), c(1.5, 0.0), C::from_polar(1.1, 2.3)] {
                    let spec = PaecsSpec::new(family, alpha, m, n).unwrap();
                    let rebuilt = schmidt_decomposition(&spec)
                        .unwrap()
                        .reconstruct(&spec, (DIM, DIM))
                        .unwrap();
                    worst = worst.max(max_diff(
                        &rebuilt,
                        &common::state(family, alpha, m, n).normalized(),
                    ));
                }
            }
        }
    }
    assert!(worst <= 1e-10, "worst {worst:e}");
}

#[test]
fn husimi_closed_form_matches_independent_overlap() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let disc = |rng: &mut ChaCha8Rng| {
        C::from_polar(
            4.0 * rng.random::<f64>().sqrt(),
            2.0 * PI * rng.random::<f64>(),
        )
    };
    for family in Family::ALL {
        for (m, n) in [(0, 0), (2, 1), (3, 7)] {
            for x in [0.05f64, 0.5] {
                let alpha = c(x.sqrt(), 0.0);
                let spec = PaecsSpec::new(family, alpha, m, n).unwrap();
                let reference = common::state(family, alpha, m, n).normalized();
                for _ in 0..6 {
                    let (z1, z2) = (disc(&mut rng), disc(&mut rng));
                    let got = q_analytic(&spec, z1, z2).unwrap();
                    let want = reference.husimi(z1, z2);
                    assert!(
                        (got - want).abs() <= 1e-10,
                        "{spec:?} at {z1}, {z2}: {got} vs {want}"
                    );
                }
            }
        }
    }
}

#[test]
fn overlap_kernel_matches_fock_sums() {
    let policy = TruncationPolicy::default();
    let points = [
        (c(0.0, 0.0), c(0.0, 0.0)),
        (c(0.4, 0.0), c(-0.4, 0.0)),
        (c(1.1, -0.6), c(0.3, 1.7)),
        (c(-2.0, 0.0), c(0.0, 2.0)),
    ];
    for m in 0..=6 {
        for n in 0..=6 {
            for &(a, b) in &points {
                let closed = overlap_kernel(m, n, a, b).unwrap();
                let reference = common::ladder_element(n, m, a, b);
                let scale = reference.norm().max(1.0);
                assert!(
                    (closed - reference).norm() / scale <= 1e-9,
                    "A_{m}{n}({a}, {b})"
                );
                let lib = ladder_matrix_element_numeric(n, m, a, b, &policy).unwrap();
                assert!((lib - reference).norm() / scale <= 1e-9);
            }
        }
    }
}

#[test]
fn doubling_the_cutoff_changes_nothing() {
    let policy = TruncationPolicy::default();
    for family in Family::ALL {
        for (m, n) in [(0, 0), (2, 1), (3, 7)] {
            for alpha in [0.5, 2.0] {
                let spec = PaecsSpec::real(family, alpha, m, n).unwrap();
                let wide = policy.with_base_dim(2 * policy.levels_for(spec.intensity()));
                let a = build_paecs_numeric(&spec, &policy).unwrap().state;
                let b = build_paecs_numeric(&spec, &wide).unwrap().state;
                assert!(b.dim_a() > a.dim_a());
                let ea = vn_entropy(&partial_trace_b(&a)).unwrap();
                let eb = vn_entropy(&partial_trace_b(&b)).unwrap();
                assert!((ea - eb).abs() < 1e-10);
                let (z1, z2) = (c(0.7, -0.4), c(-1.2, 0.9));
                let qa = paecs::husimi_q_numeric(&a, z1, z2, &policy).unwrap();
                let qb = paecs::husimi_q_numeric(&b, z1, z2, &wide).unwrap();
                assert!((qa - qb).abs() < 1e-10);
            }
        }
    }
}
