// Copyright (c) qcmark contributors.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#pragma once

#include "qcmark/gate.hpp"

#include <string>
#include <vector>

namespace qcmark {

enum class OpType { Gate, Barrier, Measure };

/// One gate, barrier, or measurement. For CX the qubit order is
/// [control, target].
struct Instruction {
    OpType type = OpType::Gate;
    GateKind kind = GateKind::I; // meaningful for Gate only
    std::vector<double> params;
    std::vector<int> qubits;
    int clbit = -1; // meaningful for Measure only

    static Instruction gate(GateKind kind, std::vector<int> qubits,
                            std::vector<double> params = {});
    static Instruction barrier(std::vector<int> qubits);
    static Instruction measure(int qubit, int clbit);

    bool is_gate() const { return type == OpType::Gate; }
    bool is_barrier() const { return type == OpType::Barrier; }
    bool is_measure() const { return type == OpType::Measure; }
    bool is_two_qubit_gate() const { return is_gate() && qubit_arity(kind) == 2; }
};

/// Ordered instruction list over `num_qubits` qubits and `num_clbits`
/// classical bits. Values are treated as immutable once shared; the fluent
/// append helpers are for construction.
///
/// Convention used project-wide: qubit 0 is the least-significant bit of a
/// basis-state index, and bitstrings are printed most-significant-first.
struct Circuit {
    int num_qubits = 0;
    int num_clbits = 0;
    std::vector<Instruction> instructions;
    std::string label;

    Circuit() = default;
    explicit Circuit(int qubits, int clbits = 0, std::string label = {});

    Circuit& add(Instruction inst);
    Circuit& gate(GateKind kind, std::vector<int> qubits, std::vector<double> params = {});
    Circuit& barrier(std::vector<int> qubits = {}); // empty = all qubits
    Circuit& measure(int qubit, int clbit);
    Circuit& measure_all(); // qubit i -> clbit i, growing num_clbits if needed

    size_t size() const { return instructions.size(); }

    bool has_measures() const;
    /// True when every Measure is terminal (only Measures/Barriers after the
    /// first Measure).
    bool measures_terminal() const;
    /// Qubits measured, ordered by target clbit.
    std::vector<int> measured_qubits() const;
    /// Copy without Measure instructions.
    Circuit without_measures() const;

    /// Throws std::invalid_argument if the instruction is malformed or
    /// references out-of-range qubits/clbits.
    void validate(const Instruction& inst) const;
};

/// Inverse of a single gate instruction: self-inverse kinds map to
/// themselves, parametric kinds negate parameters, S<->Sdg, T<->Tdg,
/// U2/U3 invert within the U3 family. SX inverts to a U3 equal to SX^dagger
/// up to global phase. Throws for Barrier/Measure, and for ISWAP whose
/// inverse is not a single catalogue gate.
Instruction inverse_of(const Instruction& inst);

/// Reverse-ordered per-gate inverses of the gate-only circuit `c`.
std::vector<Instruction> inverse_sequence(const Circuit& c);

/// Longest gate path; barriers and measures are excluded.
int depth(const Circuit& circuit);

/// Number of two-qubit gate instructions.
int two_qubit_gate_count(const Circuit& circuit);

/// Structural equality with params compared within `param_tol`.
bool structurally_equal(const Circuit& a, const Circuit& b, double param_tol = 0.0);
bool structurally_equal(const Instruction& a, const Instruction& b, double param_tol = 0.0);

} // namespace qcmark
