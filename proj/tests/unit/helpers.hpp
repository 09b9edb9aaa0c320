// Copyright (c) qcmark contributors.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#pragma once

#include "qcmark/circuit.hpp"
#include "qcmark/rng.hpp"
#include "qcmark/unitary.hpp"

#include <cmath>
#include <vector>

namespace qcmark::test {

/// Independent oracle: embed a 1- or 2-qubit gate matrix into the full
/// 2^n space by explicit index bookkeeping (no statevector kernels).
inline Matrix embed_gate(const Matrix& g, const std::vector<int>& qubits, int num_qubits) {
    const uint64_t dim = 1ULL << num_qubits;
    Matrix full = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    const int k = static_cast<int>(qubits.size());
    const uint64_t local_dim = 1ULL << k;
    for (uint64_t col = 0; col < dim; ++col) {
        uint64_t local_col = 0;
        for (int b = 0; b < k; ++b) local_col |= ((col >> qubits[static_cast<size_t>(b)]) & 1ULL) << b;
        for (uint64_t local_row = 0; local_row < local_dim; ++local_row) {
            uint64_t row = col;
            for (int b = 0; b < k; ++b) {
                const uint64_t mask = 1ULL << qubits[static_cast<size_t>(b)];
                if ((local_row >> b) & 1ULL) row |= mask;
                else row &= ~mask;
            }
            full(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) +=
                g(static_cast<Eigen::Index>(local_row), static_cast<Eigen::Index>(local_col));
        }
    }
    return full;
}

/// Independent oracle for unitary_of: multiply embedded gate matrices in
/// instruction order.
inline Matrix naive_unitary(const Circuit& circuit) {
    const uint64_t dim = 1ULL << circuit.num_qubits;
    Matrix u = Matrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (const auto& inst : circuit.instructions) {
        if (!inst.is_gate()) continue;
        u = embed_gate(gate_matrix(inst.kind, inst.params), inst.qubits, circuit.num_qubits) * u;
    }
    return u;
}

/// Kinds usable in randomized round-trip properties (every kind has a
/// single-gate inverse except ISWAP).
inline std::vector<GateKind> invertible_kinds() {
    std::vector<GateKind> kinds;
    for (GateKind k : all_gate_kinds())
        if (k != GateKind::ISWAP) kinds.push_back(k);
    return kinds;
}

inline Instruction random_gate(Rng& rng, int num_qubits, const std::vector<GateKind>& pool) {
    GateKind kind = pool[rng.uniform_int(pool.size())];
    while (qubit_arity(kind) == 2 && num_qubits < 2) kind = pool[rng.uniform_int(pool.size())];
    std::vector<int> qubits;
    if (qubit_arity(kind) == 1) {
        qubits = {static_cast<int>(rng.uniform_int(static_cast<uint64_t>(num_qubits)))};
    } else {
        int a = static_cast<int>(rng.uniform_int(static_cast<uint64_t>(num_qubits)));
        int b = static_cast<int>(rng.uniform_int(static_cast<uint64_t>(num_qubits - 1)));
        if (b >= a) ++b;
        qubits = {a, b};
    }
    std::vector<double> params;
    for (int p = 0; p < param_arity(kind); ++p) params.push_back(rng.uniform() * 2 * M_PI);
    return Instruction::gate(kind, std::move(qubits), std::move(params));
}

inline Circuit random_circuit(Rng& rng, int num_qubits, int num_gates,
                              const std::vector<GateKind>& pool) {
    Circuit c(num_qubits);
    for (int i = 0; i < num_gates; ++i) c.add(random_gate(rng, num_qubits, pool));
    return c;
}

} // namespace qcmark::test
