// Copyright 2026 The majodot Authors
// SPDX-License-Identifier: Apache-2.0

//! Quantum dot coupled to a pair of Majorana or regular fermion modes,
//! evolved under a time-nonlocal master equation with a fermionic bath.

pub mod bath;
pub mod fock;
pub mod linalg;
pub mod quadrature;
pub mod special;
pub mod propagator;
pub mod resources;
pub mod experiments;
