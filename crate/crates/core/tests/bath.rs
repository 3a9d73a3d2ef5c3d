// Copyright 2026 The majodot Authors
// SPDX-License-Identifier: Apache-2.0

mod common;

use majodot::bath::{
    correlation, correlation_pair, correlation_quadrature, BathParams, MemoryCoefficients, PanelRule, Sign,
    Temperature,
};
use majodot::fock::{diagonalize, hamiltonian, ModelParams, Spectrum};
use majodot::linalg::max_abs;
use majodot::quadrature::{integrate, Tolerance};
use majodot::special::hurwitz_zeta;
use num_complex::Complex64;

#[test]
fn hurwitz_zeta_against_direct_series() {
    let z = Complex64::new(0.55, 0.5);
    let series = common::hurwitz_series(2.0, z, 10_000_000);
    let fast = hurwitz_zeta(2.0, z).unwrap();
    assert!((series - fast).norm() <= 1e-12 * fast.norm(), "{series} vs {fast}");
}

#[test]
fn closed_form_kernel_matches_quadrature_grid() {
    for beta in [1.0, 4.0] {
        for s in [0.5, 1.0, 2.0] {
            for wc in [10.0, 50.0] {
                let b = BathParams::new(0.05, s, wc, Temperature::Beta(beta)).unwrap();
                for k in 0..=10 {
                    let t = k as f64;
                    for sign in [Sign::Plus, Sign::Minus] {
                        let a = correlation(sign, t, &b).unwrap();
                        let q = correlation_quadrature(sign, t, &b).unwrap();
                        assert!((a - q).norm() <= 1e-6 * a.norm(), "β={beta} s={s} ωc={wc} t={t} {sign:?}");
                    }
                }
            }
        }
    }
}

fn caption_spectrum() -> Spectrum {
    diagonalize(&hamiltonian(&ModelParams::majorana(0.5, 0.5, 0.5, 0.1, 0.2))).unwrap()
}

fn advance_to(s: &Spectrum, b: &BathParams, t: f64, h: f64, rule: PanelRule) -> MemoryCoefficients {
    let mut mc = MemoryCoefficients::with_rule(s, rule);
    let n = (t / h).round() as usize;
    for k in 1..=n {
        mc = mc.advance_to(s, k as f64 * h, b).unwrap();
    }
    mc
}

/// One-shot adaptive quadrature of ∫_0^t α±(u) e^{-iu(E_j-E_l)} du.
fn memory_oracle(s: &Spectrum, b: &BathParams, t: f64, j: usize, l: usize) -> (Complex64, Complex64) {
    let w = s.energies[j] - s.energies[l];
    let tol = Tolerance {
        abs: 1e-12,
        rel: 1e-12,
        max_intervals: 100_000,
    };
    let panels = 8 + (t * (w.abs() + 1.0)) as usize;
    let plus = integrate(
        |u| correlation_pair(u, b).unwrap().0 * Complex64::from_polar(1.0, -u * w),
        0.0,
        t,
        panels,
        tol,
    )
    .unwrap()
    .value;
    let minus = integrate(
        |u| correlation_pair(u, b).unwrap().1 * Complex64::from_polar(1.0, -u * w),
        0.0,
        t,
        panels,
        tol,
    )
    .unwrap()
    .value;
    (plus, minus)
}

#[test]
fn memory_matches_one_shot_quadrature() {
    let s = caption_spectrum();
    for (wc, temp) in [(10.0, Temperature::Beta(1.0)), (50.0, Temperature::Zero)] {
        let b = BathParams::new(0.05, 1.0, wc, temp).unwrap();
        let h = 0.25 / wc;
        let mut mc = MemoryCoefficients::new(&s);
        let mut k = 0usize;
        for t in [1.0, 5.0, 20.0] {
            while (k as f64) * h < t - 1e-12 {
                k += 1;
                mc = mc.advance_to(&s, k as f64 * h, &b).unwrap();
            }
            for (j, l) in [(0, 0), (0, 7), (7, 0), (2, 5), (4, 3)] {
                let (p, m) = memory_oracle(&s, &b, t, j, l);
                assert!((mc.g_plus[(j, l)] - p).norm() < 1e-8, "ωc={wc} t={t} ({j},{l}) plus");
                assert!((mc.g_minus[(j, l)] - m).norm() < 1e-8, "ωc={wc} t={t} ({j},{l}) minus");
            }
        }
    }
}

#[test]
fn fixed_panels_refine_at_fourth_order() {
    let s = caption_spectrum();
    let b = BathParams::new(0.05, 1.0, 10.0, Temperature::Beta(1.0)).unwrap();
    let g = |h: f64| advance_to(&s, &b, 5.0, h, PanelRule::Fixed(2)).g_minus;
    let (a, m, f) = (g(0.05), g(0.025), g(0.0125));
    let ratio = max_abs(&(a - m)) / max_abs(&(m - f));
    // 2^4 = 16
    assert!(ratio > 12.0 && ratio < 20.0, "ratio {ratio}");
}

#[test]
fn memory_is_bounded() {
    // ∫_0^∞ |α⁻(u)| du = γ ωc Γ(2) ∫_0^∞ dx / (1 + x²) = γ ωc π / 2 at T = 0, s = 1
    let s = caption_spectrum();
    let b = BathParams::new(0.05, 1.0, 10.0, Temperature::Zero).unwrap();
    let bound = 0.05 * 10.0 * std::f64::consts::FRAC_PI_2;
    let mut mc = MemoryCoefficients::new(&s);
    for k in 1..=400 {
        mc = mc.advance_to(&s, k as f64 * 0.1, &b).unwrap();
        assert!(mc.g_minus.iter().all(|z| z.norm() <= bound));
        assert!(mc.g_plus.iter().all(|z| z.norm() == 0.0));
    }
}
