// Copyright 2026 The majodot Authors
// SPDX-License-Identifier: Apache-2.0

//! Independent reference implementations used only by the tests.

#![allow(dead_code)]

use majodot::linalg::Mat4;
use num_complex::Complex64;

/// Σ_{k<n} (z+k)^{-order} with compensated summation plus the leading
/// Euler–Maclaurin tail `w^{1-σ}/(σ-1) + w^{-σ}/2` at `w = z + n`.
pub fn hurwitz_series(order: f64, z: Complex64, n: usize) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    let mut comp = Complex64::new(0.0, 0.0);
    for k in (0..n).rev() {
        let term = (-order * (z + k as f64).ln()).exp();
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    let w = z + n as f64;
    let w_pow = (-order * w.ln()).exp();
    sum + w_pow * w / (order - 1.0) + w_pow * 0.5
}

/// Coefficients `c_0..c_4` of det(λ − A) by Faddeev–LeVerrier.
fn characteristic_polynomial(a: &Mat4) -> [Complex64; 5] {
    let n = 4;
    let mut c = [Complex64::new(0.0, 0.0); 5];
    c[n] = Complex64::new(1.0, 0.0);
    let mut m = Mat4::zeros();
    for k in 1..=n {
        m = a * m + Mat4::identity() * c[n - k + 1];
        c[n - k] = -(a * m).trace() / k as f64;
    }
    c
}

/// Roots of a monic polynomial by Durand–Kerner iteration.
fn roots(c: &[Complex64; 5]) -> [Complex64; 4] {
    let eval = |z: Complex64| c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &ci| acc * z + ci);
    let seed = Complex64::new(0.4, 0.9);
    let mut z = [seed, seed * seed, seed * seed * seed, seed * seed * seed * seed];
    for _ in 0..2000 {
        for i in 0..4 {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..4 {
                if i != j {
                    denom *= z[i] - z[j];
                }
            }
            z[i] -= eval(z[i]) / denom;
        }
    }
    z
}

/// Wootters concurrence from the roots of the characteristic polynomial of
/// `σ (σy⊗σy) σ* (σy⊗σy)`. Only accurate for well-separated eigenvalues.
pub fn wootters_bruteforce(sigma: &Mat4) -> f64 {
    let mut y = Mat4::zeros();
    y[(0, 3)] = Complex64::new(-1.0, 0.0);
    y[(3, 0)] = Complex64::new(-1.0, 0.0);
    y[(1, 2)] = Complex64::new(1.0, 0.0);
    y[(2, 1)] = Complex64::new(1.0, 0.0);
    let m = sigma * y * sigma.conjugate() * y;
    let mut w: Vec<f64> = roots(&characteristic_polynomial(&m))
        .iter()
        .map(|r| r.re.max(0.0).sqrt())
        .collect();
    w.sort_by(|a, b| b.total_cmp(a));
    (w[0] - w[1] - w[2] - w[3]).max(0.0)
}

/// Closed-form concurrence of an X-shaped state (nonzero entries only on
/// the diagonal and anti-diagonal).
pub fn x_state_concurrence(sigma: &Mat4) -> f64 {
    let p = |i: usize| sigma[(i, i)].re;
    let a = sigma[(1, 2)].norm() - (p(0) * p(3)).sqrt();
    let b = sigma[(0, 3)].norm() - (p(1) * p(2)).sqrt();
    2.0 * a.max(b).max(0.0)
}
