// Copyright (c) qcmark contributors.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "qcmark/gate.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace qcmark {

namespace {

struct KindInfo {
    std::string_view name;
    int params;
    int qubits;
};

constexpr std::array<KindInfo, kGateKindCount> kKindTable{{
    {"id", 0, 1},    // I
    {"x", 0, 1},     // X
    {"y", 0, 1},     // Y
    {"z", 0, 1},     // Z
    {"h", 0, 1},     // H
    {"s", 0, 1},     // S
    {"sdg", 0, 1},   // Sdg
    {"t", 0, 1},     // T
    {"tdg", 0, 1},   // Tdg
    {"sx", 0, 1},    // SX
    {"rx", 1, 1},    // RX
    {"ry", 1, 1},    // RY
    {"rz", 1, 1},    // RZ
    {"u1", 1, 1},    // U1
    {"u2", 2, 1},    // U2
    {"u3", 3, 1},    // U3
    {"cx", 0, 2},    // CX
    {"cz", 0, 2},    // CZ
    {"swap", 0, 2},  // SWAP
    {"iswap", 0, 2}, // ISWAP
    {"rxx", 1, 2},   // RXX
    {"ryy", 1, 2},   // RYY
    {"rzz", 1, 2},   // RZZ
}};

constexpr std::array<GateKind, kGateKindCount> kAllKinds{
    GateKind::I,   GateKind::X,    GateKind::Y,   GateKind::Z,   GateKind::H,
    GateKind::S,   GateKind::Sdg,  GateKind::T,   GateKind::Tdg, GateKind::SX,
    GateKind::RX,  GateKind::RY,   GateKind::RZ,  GateKind::U1,  GateKind::U2,
    GateKind::U3,  GateKind::CX,   GateKind::CZ,  GateKind::SWAP,
    GateKind::ISWAP, GateKind::RXX, GateKind::RYY, GateKind::RZZ,
};

const KindInfo& info(GateKind kind) { return kKindTable[static_cast<size_t>(kind)]; }

constexpr Complex kI{0.0, 1.0};

Matrix matrix2(Complex a, Complex b, Complex c, Complex d) {
    Matrix m(2, 2);
    m << a, b, c, d;
    return m;
}

} // namespace

int param_arity(GateKind kind) { return info(kind).params; }

int qubit_arity(GateKind kind) { return info(kind).qubits; }

std::string_view gate_name(GateKind kind) { return info(kind).name; }

std::optional<GateKind> gate_kind_from_name(std::string_view name) {
    static const std::unordered_map<std::string_view, GateKind> lookup = [] {
        std::unordered_map<std::string_view, GateKind> m;
        for (GateKind k : kAllKinds) m.emplace(gate_name(k), k);
        m.emplace("i", GateKind::I); // common alias
        return m;
    }();
    auto it = lookup.find(name);
    if (it == lookup.end()) return std::nullopt;
    return it->second;
}

std::span<const GateKind> all_gate_kinds() { return kAllKinds; }

Matrix gate_matrix(GateKind kind, std::span<const double> params) {
    if (static_cast<int>(params.size()) != param_arity(kind)) {
        throw std::invalid_argument("gate " + std::string(gate_name(kind)) + " expects " +
                                    std::to_string(param_arity(kind)) + " parameter(s), got " +
                                    std::to_string(params.size()));
    }
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    switch (kind) {
    case GateKind::I:
        return Matrix::Identity(2, 2);
    case GateKind::X:
        return matrix2(0, 1, 1, 0);
    case GateKind::Y:
        return matrix2(0, -kI, kI, 0);
    case GateKind::Z:
        return matrix2(1, 0, 0, -1);
    case GateKind::H:
        return inv_sqrt2 * matrix2(1, 1, 1, -1);
    case GateKind::S:
        return matrix2(1, 0, 0, kI);
    case GateKind::Sdg:
        return matrix2(1, 0, 0, -kI);
    case GateKind::T:
        return matrix2(1, 0, 0, std::exp(kI * (M_PI / 4)));
    case GateKind::Tdg:
        return matrix2(1, 0, 0, std::exp(-kI * (M_PI / 4)));
    case GateKind::SX:
        return 0.5 * matrix2(Complex(1, 1), Complex(1, -1), Complex(1, -1), Complex(1, 1));
    case GateKind::RX: {
        double c = std::cos(params[0] / 2), s = std::sin(params[0] / 2);
        return matrix2(c, -kI * s, -kI * s, c);
    }
    case GateKind::RY: {
        double c = std::cos(params[0] / 2), s = std::sin(params[0] / 2);
        return matrix2(c, -s, s, c);
    }
    case GateKind::RZ: {
        Complex e = std::exp(kI * (params[0] / 2));
        return matrix2(std::conj(e), 0, 0, e);
    }
    case GateKind::U1:
        return matrix2(1, 0, 0, std::exp(kI * params[0]));
    case GateKind::U2: {
        double phi = params[0], lam = params[1];
        return inv_sqrt2 * matrix2(1, -std::exp(kI * lam), std::exp(kI * phi),
                                   std::exp(kI * (phi + lam)));
    }
    case GateKind::U3: {
        double c = std::cos(params[0] / 2), s = std::sin(params[0] / 2);
        double phi = params[1], lam = params[2];
        return matrix2(c, -std::exp(kI * lam) * s, std::exp(kI * phi) * s,
                       std::exp(kI * (phi + lam)) * c);
    }
    case GateKind::CX: {
        // control = low-order bit (first listed qubit), target = high-order bit
        Matrix m = Matrix::Zero(4, 4);
        m(0, 0) = 1;
        m(3, 1) = 1;
        m(2, 2) = 1;
        m(1, 3) = 1;
        return m;
    }
    case GateKind::CZ: {
        Matrix m = Matrix::Identity(4, 4);
        m(3, 3) = -1;
        return m;
    }
    case GateKind::SWAP: {
        Matrix m = Matrix::Zero(4, 4);
        m(0, 0) = 1;
        m(2, 1) = 1;
        m(1, 2) = 1;
        m(3, 3) = 1;
        return m;
    }
    case GateKind::ISWAP: {
        Matrix m = Matrix::Zero(4, 4);
        m(0, 0) = 1;
        m(2, 1) = kI;
        m(1, 2) = kI;
        m(3, 3) = 1;
        return m;
    }
    case GateKind::RXX: {
        double c = std::cos(params[0] / 2), s = std::sin(params[0] / 2);
        Matrix m = Matrix::Zero(4, 4);
        m(0, 0) = m(1, 1) = m(2, 2) = m(3, 3) = c;
        m(0, 3) = m(1, 2) = m(2, 1) = m(3, 0) = -kI * s;
        return m;
    }
    case GateKind::RYY: {
        double c = std::cos(params[0] / 2), s = std::sin(params[0] / 2);
        Matrix m = Matrix::Zero(4, 4);
        m(0, 0) = m(1, 1) = m(2, 2) = m(3, 3) = c;
        m(0, 3) = m(3, 0) = kI * s;
        m(1, 2) = m(2, 1) = -kI * s;
        return m;
    }
    case GateKind::RZZ: {
        Complex e = std::exp(kI * (params[0] / 2));
        Matrix m = Matrix::Zero(4, 4);
        m(0, 0) = m(3, 3) = std::conj(e);
        m(1, 1) = m(2, 2) = e;
        return m;
    }
    }
    throw std::logic_error("unreachable gate kind");
}

} // namespace qcmark
