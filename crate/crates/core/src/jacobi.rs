//! Cyclic Jacobi diagonalization of small dense Hermitian matrices.

use ndarray::Array2;
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Off-diagonal Frobenius mass below which the iteration stops.
pub const OFF_DIAGONAL_TOL: f64 = 1e-14;

const MAX_SWEEPS: usize = 100;

/// Eigenvalues in descending order with the matching unit eigenvectors
/// stored as columns.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: Array2<C64>,
}

impl HermitianEigen {
    /// `Σ_k λ_k v_k v_k†`
    pub fn reconstruct(&self) -> Array2<C64> {
        let dim = self.values.len();
        let mut out = Array2::<C64>::zeros((dim, dim));
        for (k, &lambda) in self.values.iter().enumerate() {
            let v = self.vectors.column(k);
            for i in 0..dim {
                let vi = v[i] * lambda;
                for j in 0..dim {
                    out[[i, j]] += vi * v[j].conj();
                }
            }
        }
        out
    }
}

fn off_diagonal_norm(a: &Array2<C64>) -> f64 {
    let dim = a.nrows();
    let mut sum = 0.0;
    for i in 0..dim {
        for j in 0..dim {
            if i != j {
                sum += a[[i, j]].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// Diagonalizes a Hermitian matrix by cyclic sweeps of complex Jacobi
/// rotations. Only the Hermitian part of `matrix` is used.
pub fn hermitian_eigen(matrix: &Array2<C64>) -> Result<HermitianEigen> {
    let dim = matrix.nrows();
    if matrix.ncols() != dim {
        return Err(Error::Domain(format!(
            "eigensolver needs a square matrix, got {}x{}",
            dim,
            matrix.ncols()
        )));
    }
    let mut a = Array2::<C64>::zeros((dim, dim));
    for i in 0..dim {
        for j in 0..dim {
            a[[i, j]] = 0.5 * (matrix[[i, j]] + matrix[[j, i]].conj());
        }
    }
    let mut v = Array2::<C64>::eye(dim);

    let mut converged = off_diagonal_norm(&a) < OFF_DIAGONAL_TOL;
    let mut sweeps = 0;
    while !converged {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NumericalConsistency(format!(
                "Jacobi did not converge in {MAX_SWEEPS} sweeps (off-diagonal {:e})",
                off_diagonal_norm(&a)
            )));
        }
        for p in 0..dim {
            for q in (p + 1)..dim {
                rotate(&mut a, &mut v, p, q);
            }
        }
        sweeps += 1;
        converged = off_diagonal_norm(&a) < OFF_DIAGONAL_TOL;
    }

    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&i, &j| a[[j, j]].re.total_cmp(&a[[i, i]].re));
    let values = order.iter().map(|&i| a[[i, i]].re).collect();
    let mut vectors = Array2::<C64>::zeros((dim, dim));
    for (dst, &src) in order.iter().enumerate() {
        vectors.column_mut(dst).assign(&v.column(src));
    }
    Ok(HermitianEigen { values, vectors })
}

/// Annihilates `a[p][q]` with the unitary `J` acting on columns `p, q`:
/// a phase that makes the pivot real followed by a real plane rotation.
fn rotate(a: &mut Array2<C64>, v: &mut Array2<C64>, p: usize, q: usize) {
    let g = a[[p, q]];
    let abs_g = g.norm();
    if abs_g == 0.0 {
        return;
    }
    let phase = g / abs_g;
    let app = a[[p, p]].re;
    let aqq = a[[q, q]].re;
    let theta = 0.5 * (2.0 * abs_g).atan2(aqq - app);
    let (s, c) = theta.sin_cos();

    // J = diag(1, conj(phase)) · [[c, s], [-s, c]]
    let jpp = C64::new(c, 0.0);
    let jpq = C64::new(s, 0.0);
    let jqp = -phase.conj() * s;
    let jqq = phase.conj() * c;

    let dim = a.nrows();
    for k in 0..dim {
        let akp = a[[k, p]];
        let akq = a[[k, q]];
        a[[k, p]] = akp * jpp + akq * jqp;
        a[[k, q]] = akp * jpq + akq * jqq;
    }
    for k in 0..dim {
        let apk = a[[p, k]];
        let aqk = a[[q, k]];
        a[[p, k]] = jpp.conj() * apk + jqp.conj() * aqk;
        a[[q, k]] = jpq.conj() * apk + jqq.conj() * aqk;
    }
    a[[p, q]] = C64::new(0.0, 0.0);
    a[[q, p]] = C64::new(0.0, 0.0);
    a[[p, p]].im = 0.0;
    a[[q, q]].im = 0.0;

    for k in 0..dim {
        let vkp = v[[k, p]];
        let vkq = v[[k, q]];
        v[[k, p]] = vkp * jpp + vkq * jqp;
        v[[k, q]] = vkp * jpq + vkq * jqq;
    }
}
