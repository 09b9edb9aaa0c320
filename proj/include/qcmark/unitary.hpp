// Copyright (c) qcmark contributors.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#pragma once

#include "qcmark/circuit.hpp"

namespace qcmark {

inline constexpr int kUnitaryQubitCap = 10;

/// Full 2^n x 2^n unitary of a measure-free circuit, gates applied in
/// instruction order with the project qubit convention (qubit 0 =
/// least-significant index bit). Barriers contribute identity.
/// Throws on measures or when num_qubits exceeds `cap`.
Matrix unitary_of(const Circuit& circuit, int cap = kUnitaryQubitCap);

/// U * U^dagger == I elementwise within tol.
bool is_unitary(const Matrix& u, double tol = 1e-10);

/// A == lambda * B for some |lambda| == 1, elementwise within tol.
bool equal_up_to_global_phase(const Matrix& a, const Matrix& b, double tol = 1e-9);

/// The phase lambda minimizing |A - lambda*B|, from the largest entry of B.
Complex relative_phase(const Matrix& a, const Matrix& b);

/// Max elementwise |A - B|.
double max_abs_diff(const Matrix& a, const Matrix& b);

} // namespace qcmark
