// Copyright (c) qcmark contributors.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "qcmark/unitary.hpp"

#include "qcmark/simulate.hpp"

#include <stdexcept>

namespace qcmark {

Matrix unitary_of(const Circuit& circuit, int cap) {
    if (circuit.num_qubits > cap)
        throw std::invalid_argument("unitary_of capped at " + std::to_string(cap) + " qubits");
    if (circuit.has_measures())
        throw std::invalid_argument("unitary_of requires a measure-free circuit");
    const uint64_t dim = 1ULL << circuit.num_qubits;
    Matrix u(dim, dim);
    // apply the circuit to each basis column; O(gates * 4^n) beats forming
    // embedded gate matrices
    for (uint64_t col = 0; col < dim; ++col) {
        Statevector sv = Statevector::basis_state(circuit.num_qubits, col);
        for (const auto& inst : circuit.instructions) apply_instruction(sv, inst);
        for (uint64_t row = 0; row < dim; ++row) u(row, col) = sv.amplitudes[row];
    }
    return u;
}

bool is_unitary(const Matrix& u, double tol) {
    if (u.rows() != u.cols()) return false;
    Matrix prod = u * u.adjoint();
    return max_abs_diff(prod, Matrix::Identity(u.rows(), u.cols())) <= tol;
}

Complex relative_phase(const Matrix& a, const Matrix& b) {
    Eigen::Index r = 0, c = 0;
    double best = -1;
    for (Eigen::Index i = 0; i < b.rows(); ++i)
        for (Eigen::Index j = 0; j < b.cols(); ++j)
            if (std::abs(b(i, j)) > best) {
                best = std::abs(b(i, j));
                r = i;
                c = j;
            }
    if (best <= 0) return Complex(1, 0);
    return a(r, c) / b(r, c);
}

bool equal_up_to_global_phase(const Matrix& a, const Matrix& b, double tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    Complex lambda = relative_phase(a, b);
    if (std::abs(std::abs(lambda) - 1.0) > tol) return false;
    return max_abs_diff(a, lambda * b) <= tol;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

} // namespace qcmark
