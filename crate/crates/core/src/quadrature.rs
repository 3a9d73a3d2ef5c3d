// Copyright 2026 The majodot Authors
// SPDX-License-Identifier: Apache-2.0

//! Globally adaptive Gauss–Kronrod (7/15) quadrature for complex integrands.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;
use thiserror::Error;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
// Gauss weights for XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Error, PartialEq)]
#[error("quadrature did not reach tolerance {target:.3e}: estimate {value} with error {error:.3e} after {intervals} intervals")]
pub struct QuadratureError {
    pub value: Complex64,
    pub error: f64,
    pub target: f64,
    pub intervals: usize,
}

/// Stopping rule: the error estimate must be below `abs` and below
/// `rel·|I|`, unless it is already at the roundoff floor of the sum.
#[derive(Debug, Clone, Copy)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
    pub max_intervals: usize,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            abs: 1e-10,
            rel: 1e-10,
            max_intervals: 200_000,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Estimate {
    pub value: Complex64,
    pub error: f64,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
    abs: f64,
}

/// Max-heap order on the error estimate.
struct ByError(Panel);

impl PartialEq for ByError {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for ByError {}

impl PartialOrd for ByError {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ByError {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.error.total_cmp(&other.0.error)
    }
}

fn kronrod<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> Panel {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut abs = fc.norm() * WGK[7];
    for (k, (&x, &w)) in XGK.iter().zip(WGK.iter()).take(7).enumerate() {
        let dx = half * x;
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        kron += (f1 + f2) * w;
        abs += (f1.norm() + f2.norm()) * w;
        if k % 2 == 1 {
            gauss += (f1 + f2) * WG[k / 2];
        }
    }
    Panel {
        a,
        b,
        value: kron * half,
        error: ((kron - gauss) * half).norm(),
        abs: abs * half.abs(),
    }
}

/// Integrates `f` over `[a, b]`, starting from `initial_panels` equal panels
/// and bisecting the panel with the largest error estimate until the
/// tolerance is met.
pub fn integrate<F: Fn(f64) -> Complex64>(
    f: F,
    a: f64,
    b: f64,
    initial_panels: usize,
    tol: Tolerance,
) -> Result<Estimate, QuadratureError> {
    let n = initial_panels.max(1);
    let width = (b - a) / n as f64;
    let mut panels: BinaryHeap<ByError> = (0..n)
        .map(|k| {
            let lo = a + width * k as f64;
            let hi = if k + 1 == n { b } else { lo + width };
            ByError(kronrod(&f, lo, hi))
        })
        .collect();
    let totals = |panels: &BinaryHeap<ByError>| {
        panels.iter().fold((Complex64::new(0.0, 0.0), 0.0, 0.0), |(v, e, r), p| (v + p.0.value, e + p.0.error, r + p.0.abs))
    };
    // Running sums drift, so they only decide when to recompute exactly.
    let (mut value, mut error, mut resabs) = totals(&panels);

    loop {
        let floor = 50.0 * f64::EPSILON * resabs;
        let target = tol.abs.min(tol.rel * value.norm()).max(floor);
        if error <= target {
            (value, error, resabs) = totals(&panels);
            let target = tol.abs.min(tol.rel * value.norm()).max(50.0 * f64::EPSILON * resabs);
            if error <= target {
                return Ok(Estimate { value, error });
            }
        }
        if panels.len() >= tol.max_intervals {
            return Err(QuadratureError {
                value,
                error,
                target,
                intervals: panels.len(),
            });
        }
        let p = panels.pop().expect("at least one panel").0;
        let mid = 0.5 * (p.a + p.b);
        if mid <= p.a || mid >= p.b {
            return Err(QuadratureError {
                value,
                error,
                target,
                intervals: panels.len() + 1,
            });
        }
        let (l, r) = (kronrod(&f, p.a, mid), kronrod(&f, mid, p.b));
        value += l.value + r.value - p.value;
        error += l.error + r.error - p.error;
        resabs += l.abs + r.abs - p.abs;
        panels.push(ByError(l));
        panels.push(ByError(r));
    }
}
