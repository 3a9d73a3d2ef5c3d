// Copyright 2026 The majodot Authors
// SPDX-License-Identifier: Apache-2.0

//! Small dense complex matrices and the Jacobi eigen/singular-value solvers
//! used throughout the crate.

use nalgebra::{SMatrix, SVector};
use num_complex::Complex64;

/// Dense 8×8 complex operator on the three-mode Fock space.
pub type Op8 = SMatrix<Complex64, 8, 8>;
/// Dense 4×4 complex matrix on a two-mode Fock space.
pub type Mat4 = SMatrix<Complex64, 4, 4>;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

const MAX_SWEEPS: usize = 100;

#[inline]
pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Largest entrywise modulus of `a - a†`.
pub fn hermiticity_error<const N: usize>(a: &SMatrix<Complex64, N, N>) -> f64 {
    let mut worst = 0.0_f64;
    for i in 0..N {
        for j in i..N {
            worst = worst.max((a[(i, j)] - a[(j, i)].conj()).norm());
        }
    }
    worst
}

pub fn max_abs<const N: usize>(a: &SMatrix<Complex64, N, N>) -> f64 {
    a.iter().fold(0.0_f64, |m, z| m.max(z.norm()))
}

pub fn commutator<const N: usize>(
    a: &SMatrix<Complex64, N, N>,
    b: &SMatrix<Complex64, N, N>,
) -> SMatrix<Complex64, N, N> {
    a * b - b * a
}

pub fn anticommutator<const N: usize>(
    a: &SMatrix<Complex64, N, N>,
    b: &SMatrix<Complex64, N, N>,
) -> SMatrix<Complex64, N, N> {
    a * b + b * a
}

fn off_diagonal_norm<const N: usize>(a: &SMatrix<Complex64, N, N>) -> f64 {
    let mut s = 0.0;
    for i in 0..N {
        for j in 0..N {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Cyclic complex Jacobi diagonalization of a Hermitian matrix.
///
/// Returns `(eigenvalues, eigenvectors)` in the order the sweeps leave them
/// (unsorted); eigenvectors are the columns of the unitary. Pivots whose
/// off-diagonal entry is exactly zero are never rotated, so exact block
/// structure in the input survives to the output.
pub fn jacobi_eigh<const N: usize>(
    a: &SMatrix<Complex64, N, N>,
) -> (SVector<f64, N>, SMatrix<Complex64, N, N>) {
    let mut m = *a;
    // Work on the exactly Hermitian part.
    for i in 0..N {
        m[(i, i)] = c(m[(i, i)].re);
        for j in (i + 1)..N {
            let avg = 0.5 * (m[(i, j)] + m[(j, i)].conj());
            m[(i, j)] = avg;
            m[(j, i)] = avg.conj();
        }
    }
    let mut v = SMatrix::<Complex64, N, N>::identity();
    let scale = m.norm().max(1.0);
    let threshold = 1e-14 * scale;

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&m) < threshold {
            break;
        }
        for p in 0..N {
            for q in (p + 1)..N {
                let apq = m[(p, q)];
                let r = apq.norm();
                if r == 0.0 {
                    continue;
                }
                // Phase so that the (p,q) entry becomes real and positive.
                let phase = apq / r;
                let app = m[(p, p)].re;
                let aqq = m[(q, q)].re;
                let tau = (aqq - app) / (2.0 * r);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let cs = 1.0 / (1.0 + t * t).sqrt();
                let sn = t * cs;
                // Unitary acting on columns p, q:
                //   col_p' = cs col_p - sn conj(phase) col_q
                //   col_q' = sn phase col_p + cs col_q
                let a_pq = c(sn) * phase;
                let a_qp = c(-sn) * phase.conj();
                for k in 0..N {
                    let mkp = m[(k, p)];
                    let mkq = m[(k, q)];
                    m[(k, p)] = c(cs) * mkp + a_qp * mkq;
                    m[(k, q)] = a_pq * mkp + c(cs) * mkq;
                }
                for k in 0..N {
                    let mpk = m[(p, k)];
                    let mqk = m[(q, k)];
                    m[(p, k)] = c(cs) * mpk + a_qp.conj() * mqk;
                    m[(q, k)] = a_pq.conj() * mpk + c(cs) * mqk;
                }
                m[(p, q)] = ZERO;
                m[(q, p)] = ZERO;
                m[(p, p)] = c(m[(p, p)].re);
                m[(q, q)] = c(m[(q, q)].re);
                for k in 0..N {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c(cs) * vkp + a_qp * vkq;
                    v[(k, q)] = a_pq * vkp + c(cs) * vkq;
                }
            }
        }
    }
    let evals = SVector::<f64, N>::from_fn(|i, _| m[(i, i)].re);
    (evals, v)
}

/// Eigenvalues of a Hermitian matrix in ascending order.
pub fn eigvalsh<const N: usize>(a: &SMatrix<Complex64, N, N>) -> [f64; N] {
    let (e, _) = jacobi_eigh(a);
    let mut out = [0.0; N];
    out.copy_from_slice(e.as_slice());
    out.sort_by(f64::total_cmp);
    out
}

/// Singular values (descending) by one-sided Hestenes–Jacobi on the columns.
///
/// Small singular values come out with absolute accuracy of order
/// `eps * ||a||`, unlike square roots of eigenvalues of `a† a`.
pub fn singular_values<const N: usize>(a: &SMatrix<Complex64, N, N>) -> [f64; N] {
    let mut u = *a;
    let eps = 1e-15;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..N {
            for q in (p + 1)..N {
                let alpha: f64 = u.column(p).iter().map(|z| z.norm_sqr()).sum();
                let beta: f64 = u.column(q).iter().map(|z| z.norm_sqr()).sum();
                let gamma: Complex64 = u
                    .column(p)
                    .iter()
                    .zip(u.column(q).iter())
                    .map(|(x, y)| x.conj() * y)
                    .sum();
                let g = gamma.norm();
                if g == 0.0 || g <= eps * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = if zeta >= 0.0 {
                    1.0 / (zeta + (1.0 + zeta * zeta).sqrt())
                } else {
                    -1.0 / (-zeta + (1.0 + zeta * zeta).sqrt())
                };
                let cs = 1.0 / (1.0 + t * t).sqrt();
                let sn = cs * t;
                for k in 0..N {
                    let xp = u[(k, p)];
                    let xq = u[(k, q)] * phase.conj();
                    u[(k, p)] = c(cs) * xp - c(sn) * xq;
                    u[(k, q)] = c(sn) * xp + c(cs) * xq;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut out = [0.0; N];
    for (j, s) in out.iter_mut().enumerate() {
        *s = u.column(j).iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    }
    out.sort_by(|x, y| y.total_cmp(x));
    out
}

/// Principal square root of a Hermitian positive semidefinite matrix.
/// Eigenvalues are clamped at zero; also returns the smallest eigenvalue
/// before clamping.
pub fn sqrt_psd<const N: usize>(
    a: &SMatrix<Complex64, N, N>,
) -> (SMatrix<Complex64, N, N>, f64) {
    let (e, v) = jacobi_eigh(a);
    let min = e.iter().copied().fold(f64::INFINITY, f64::min);
    let d = SMatrix::<Complex64, N, N>::from_diagonal(&SVector::from_fn(|i, _| {
        c(e[i].max(0.0).sqrt())
    }));
    (v * d * v.adjoint(), min)
}
