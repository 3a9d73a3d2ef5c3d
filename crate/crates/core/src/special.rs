// Copyright 2026 The majodot Authors
// SPDX-License-Identifier: Apache-2.0

//! Gamma and Hurwitz zeta functions.

use std::f64::consts::PI;

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum SpecialError {
    #[error("Hurwitz zeta requires Re(z) > 0, got {0}")]
    Domain(Complex64),
    #[error("Hurwitz zeta order must be > 1, got {0}")]
    Order(f64),
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Γ(x) for real x by the Lanczos approximation (g = 7, nine terms), with
/// reflection below 1/2.
pub fn gamma(x: f64) -> f64 {
    if x < 0.5 {
        return PI / ((PI * x).sin() * gamma(1.0 - x));
    }
    let x = x - 1.0;
    let mut a = LANCZOS[0];
    let t = x + LANCZOS_G + 0.5;
    for (i, &coef) in LANCZOS.iter().enumerate().skip(1) {
        a += coef / (x + i as f64);
    }
    (2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * a
}

// B_2k / (2k)! for k = 1..6
const BERNOULLI_OVER_FACTORIAL: [f64; 6] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30_240.0,
    -1.0 / 1_209_600.0,
    1.0 / 47_900_160.0,
    -691.0 / 1_307_674_368_000.0,
];

const SHIFT_RADIUS: f64 = 16.0;

/// Hurwitz zeta `ζ(order, z) = Σ_{k≥0} (z + k)^{-order}` for real order > 1
/// and Re(z) > 0.
///
/// The argument is shifted by the recurrence until |z| ≥ 16, after which the
/// tail is summed by Euler–Maclaurin through B_12.
pub fn hurwitz_zeta(order: f64, z: Complex64) -> Result<Complex64, SpecialError> {
    if !(order > 1.0) || !order.is_finite() {
        return Err(SpecialError::Order(order));
    }
    if !(z.re > 0.0) || !z.im.is_finite() {
        return Err(SpecialError::Domain(z));
    }
    let mut head = Complex64::new(0.0, 0.0);
    let mut w = z;
    while w.norm() < SHIFT_RADIUS {
        head += (-order * w.ln()).exp();
        w += 1.0;
    }
    let ln_w = w.ln();
    let w_pow = (-order * ln_w).exp();
    let inv_w = w.inv();
    let inv_w2 = inv_w * inv_w;
    let mut tail = w_pow * w / (order - 1.0) + w_pow * 0.5;
    // term_k = B_2k/(2k)! · σ(σ+1)…(σ+2k-2) · w^{-σ-2k+1}
    let mut rising = order;
    let mut power = w_pow * inv_w;
    for (k, &coef) in BERNOULLI_OVER_FACTORIAL.iter().enumerate() {
        if k > 0 {
            let m = 2.0 * k as f64;
            rising *= (order + m - 1.0) * (order + m);
            power *= inv_w2;
        }
        tail += power * (coef * rising);
    }
    Ok(head + tail)
}
