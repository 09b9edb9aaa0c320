// Copyright (c) qcmark contributors.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace qcmark {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// The fixed gate catalogue. Single-qubit kinds first, two-qubit kinds after.
enum class GateKind {
    I,
    X,
    Y,
    Z,
    H,
    S,
    Sdg,
    T,
    Tdg,
    SX,
    RX,
    RY,
    RZ,
    U1,
    U2,
    U3,
    CX,
    CZ,
    SWAP,
    ISWAP,
    RXX,
    RYY,
    RZZ,
};

inline constexpr int kGateKindCount = 23;

// Pool sizes used by the authorship-probability model: the reference gate
// library exposes 10 single-qubit and 12 two-qubit gates for watermark
// construction. These are model constants, independent of how many kinds the
// IR enumerates.
inline constexpr int kSingleQubitPoolSize = 10;
inline constexpr int kTwoQubitPoolSize = 12;

/// Number of real parameters the kind takes (0 for X, 1 for RY, 3 for U3, ...).
int param_arity(GateKind kind);

/// 1 or 2.
int qubit_arity(GateKind kind);

/// Canonical lowercase name ("x", "sdg", "cx", ...). "id" for GateKind::I.
std::string_view gate_name(GateKind kind);

/// Reverse of gate_name; nullopt for unknown names.
std::optional<GateKind> gate_kind_from_name(std::string_view name);

/// All kinds, catalogue order.
std::span<const GateKind> all_gate_kinds();

/// The standard unitary for `kind` with the given parameters (radians).
///
/// Two-qubit matrices are expressed in the gate's local space with the first
/// listed qubit as the low-order bit: index = bit(q1)*2 + bit(q0).
/// Throws std::invalid_argument when params.size() != param_arity(kind).
Matrix gate_matrix(GateKind kind, std::span<const double> params);

inline Matrix gate_matrix(GateKind kind) { return gate_matrix(kind, {}); }

} // namespace qcmark
