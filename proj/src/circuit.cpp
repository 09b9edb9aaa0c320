// Copyright (c) qcmark contributors.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "qcmark/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace qcmark {

Instruction Instruction::gate(GateKind kind, std::vector<int> qubits,
                              std::vector<double> params) {
    Instruction inst;
    inst.type = OpType::Gate;
    inst.kind = kind;
    inst.qubits = std::move(qubits);
    inst.params = std::move(params);
    return inst;
}

Instruction Instruction::barrier(std::vector<int> qubits) {
    Instruction inst;
    inst.type = OpType::Barrier;
    inst.qubits = std::move(qubits);
    return inst;
}

Instruction Instruction::measure(int qubit, int clbit) {
    Instruction inst;
    inst.type = OpType::Measure;
    inst.qubits = {qubit};
    inst.clbit = clbit;
    return inst;
}

Circuit::Circuit(int qubits, int clbits, std::string lbl)
    : num_qubits(qubits), num_clbits(clbits), label(std::move(lbl)) {
    if (qubits < 0 || clbits < 0) throw std::invalid_argument("negative register size");
}

void Circuit::validate(const Instruction& inst) const {
    for (int q : inst.qubits) {
        if (q < 0 || q >= num_qubits)
            throw std::invalid_argument("qubit index " + std::to_string(q) +
                                        " out of range for " + std::to_string(num_qubits) +
                                        " qubits");
    }
    std::set<int> distinct(inst.qubits.begin(), inst.qubits.end());
    if (distinct.size() != inst.qubits.size())
        throw std::invalid_argument("duplicate qubit indices in instruction");
    switch (inst.type) {
    case OpType::Gate:
        if (static_cast<int>(inst.qubits.size()) != qubit_arity(inst.kind))
            throw std::invalid_argument("gate " + std::string(gate_name(inst.kind)) +
                                        " expects " + std::to_string(qubit_arity(inst.kind)) +
                                        " qubit(s)");
        if (static_cast<int>(inst.params.size()) != param_arity(inst.kind))
            throw std::invalid_argument("gate " + std::string(gate_name(inst.kind)) +
                                        " expects " + std::to_string(param_arity(inst.kind)) +
                                        " parameter(s)");
        break;
    case OpType::Barrier:
        if (inst.qubits.empty()) throw std::invalid_argument("barrier needs at least one qubit");
        if (!inst.params.empty()) throw std::invalid_argument("barrier takes no parameters");
        break;
    case OpType::Measure:
        if (inst.qubits.size() != 1) throw std::invalid_argument("measure takes one qubit");
        if (inst.clbit < 0 || inst.clbit >= num_clbits)
            throw std::invalid_argument("clbit index " + std::to_string(inst.clbit) +
                                        " out of range for " + std::to_string(num_clbits) +
                                        " clbits");
        break;
    }
}

Circuit& Circuit::add(Instruction inst) {
    validate(inst);
    instructions.push_back(std::move(inst));
    return *this;
}

Circuit& Circuit::gate(GateKind kind, std::vector<int> qubits, std::vector<double> params) {
    return add(Instruction::gate(kind, std::move(qubits), std::move(params)));
}

Circuit& Circuit::barrier(std::vector<int> qubits) {
    if (qubits.empty()) {
        qubits.resize(static_cast<size_t>(num_qubits));
        std::iota(qubits.begin(), qubits.end(), 0);
    }
    return add(Instruction::barrier(std::move(qubits)));
}

Circuit& Circuit::measure(int qubit, int clbit) {
    return add(Instruction::measure(qubit, clbit));
}

Circuit& Circuit::measure_all() {
    if (num_clbits < num_qubits) num_clbits = num_qubits;
    for (int q = 0; q < num_qubits; ++q) measure(q, q);
    return *this;
}

bool Circuit::has_measures() const {
    return std::any_of(instructions.begin(), instructions.end(),
                       [](const Instruction& i) { return i.is_measure(); });
}

bool Circuit::measures_terminal() const {
    bool seen_measure = false;
    for (const auto& inst : instructions) {
        if (inst.is_measure()) seen_measure = true;
        else if (seen_measure && inst.is_gate()) return false;
    }
    return true;
}

std::vector<int> Circuit::measured_qubits() const {
    std::vector<std::pair<int, int>> pairs; // (clbit, qubit)
    for (const auto& inst : instructions)
        if (inst.is_measure()) pairs.emplace_back(inst.clbit, inst.qubits[0]);
    std::sort(pairs.begin(), pairs.end());
    std::vector<int> qubits;
    qubits.reserve(pairs.size());
    for (auto& [c, q] : pairs) qubits.push_back(q);
    return qubits;
}

Circuit Circuit::without_measures() const {
    Circuit out(num_qubits, num_clbits, label);
    for (const auto& inst : instructions)
        if (!inst.is_measure()) out.instructions.push_back(inst);
    return out;
}

Instruction inverse_of(const Instruction& inst) {
    if (!inst.is_gate()) throw std::invalid_argument("only gates are invertible");
    auto same = [&](GateKind k) { return Instruction::gate(k, inst.qubits, inst.params); };
    auto negated = [&](GateKind k) {
        std::vector<double> p(inst.params);
        for (double& v : p) v = -v;
        return Instruction::gate(k, inst.qubits, std::move(p));
    };
    switch (inst.kind) {
    case GateKind::I:
    case GateKind::X:
    case GateKind::Y:
    case GateKind::Z:
    case GateKind::H:
    case GateKind::CX:
    case GateKind::CZ:
    case GateKind::SWAP:
        return same(inst.kind);
    case GateKind::S:
        return same(GateKind::Sdg);
    case GateKind::Sdg:
        return same(GateKind::S);
    case GateKind::T:
        return same(GateKind::Tdg);
    case GateKind::Tdg:
        return same(GateKind::T);
    case GateKind::SX:
        // SX^dagger up to global phase exp(-i pi/4)
        return Instruction::gate(GateKind::U3, inst.qubits, {-M_PI / 2, -M_PI / 2, M_PI / 2});
    case GateKind::RX:
    case GateKind::RY:
    case GateKind::RZ:
    case GateKind::U1:
    case GateKind::RXX:
    case GateKind::RYY:
    case GateKind::RZZ:
        return negated(inst.kind);
    case GateKind::U2:
        // U2(phi, lam) = U3(pi/2, phi, lam); inverse is U3(-pi/2, -lam, -phi)
        return Instruction::gate(GateKind::U3, inst.qubits,
                                 {-M_PI / 2, -inst.params[1], -inst.params[0]});
    case GateKind::U3:
        return Instruction::gate(GateKind::U3, inst.qubits,
                                 {-inst.params[0], -inst.params[2], -inst.params[1]});
    case GateKind::ISWAP:
        throw std::invalid_argument("iswap inverse is not a single catalogue gate");
    }
    throw std::logic_error("unreachable gate kind");
}

std::vector<Instruction> inverse_sequence(const Circuit& c) {
    std::vector<Instruction> out;
    out.reserve(c.instructions.size());
    for (auto it = c.instructions.rbegin(); it != c.instructions.rend(); ++it) {
        if (!it->is_gate()) throw std::invalid_argument("inverse_sequence expects gates only");
        out.push_back(inverse_of(*it));
    }
    return out;
}

int depth(const Circuit& circuit) {
    std::vector<int> frontier(static_cast<size_t>(circuit.num_qubits), 0);
    int result = 0;
    for (const auto& inst : circuit.instructions) {
        if (!inst.is_gate()) continue;
        int level = 0;
        for (int q : inst.qubits) level = std::max(level, frontier[static_cast<size_t>(q)]);
        ++level;
        for (int q : inst.qubits) frontier[static_cast<size_t>(q)] = level;
        result = std::max(result, level);
    }
    return result;
}

int two_qubit_gate_count(const Circuit& circuit) {
    return static_cast<int>(std::count_if(circuit.instructions.begin(),
                                          circuit.instructions.end(),
                                          [](const Instruction& i) { return i.is_two_qubit_gate(); }));
}

bool structurally_equal(const Instruction& a, const Instruction& b, double param_tol) {
    if (a.type != b.type || a.qubits != b.qubits) return false;
    if (a.type == OpType::Gate) {
        if (a.kind != b.kind || a.params.size() != b.params.size()) return false;
        for (size_t i = 0; i < a.params.size(); ++i)
            if (std::abs(a.params[i] - b.params[i]) > param_tol) return false;
    }
    if (a.type == OpType::Measure && a.clbit != b.clbit) return false;
    return true;
}

bool structurally_equal(const Circuit& a, const Circuit& b, double param_tol) {
    if (a.num_qubits != b.num_qubits || a.num_clbits != b.num_clbits) return false;
    if (a.instructions.size() != b.instructions.size()) return false;
    for (size_t i = 0; i < a.instructions.size(); ++i)
        if (!structurally_equal(a.instructions[i], b.instructions[i], param_tol)) return false;
    return true;
}

} // namespace qcmark
