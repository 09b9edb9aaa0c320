// Copyright (c) qcmark contributors.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#pragma once

#include "qcmark/circuit.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qcmark {

enum class WatermarkScheme { Rotation, RandomGateSet, Combined };

std::string_view scheme_name(WatermarkScheme s);
std::optional<WatermarkScheme> scheme_from_name(std::string_view name);

struct WatermarkEntry {
    GateKind gate;
    std::vector<double> params;
    std::vector<int> qubits;
};

/// The designer's secret evidence: which gates were inserted where.
struct WatermarkRecord {
    WatermarkScheme scheme = WatermarkScheme::Rotation;
    std::vector<WatermarkEntry> entries;
    /// Leading entries belonging to the rotation part (the rest form the
    /// random block). The two parts sit at different circuit positions, so
    /// swap-normalization may relabel them by different permutations.
    int rotation_entry_count = 0;
    int insertion_index = -1;
    std::optional<int> ancilla_added;
    std::vector<int> barrier_indices;
    std::optional<uint64_t> seed;
    std::string created; // optional ISO-8601 stamp; empty = omitted from JSON

    std::string to_json_text() const;
    static WatermarkRecord from_json_text(const std::string& text);
};

struct RotationSpec {
    /// Declared ancilla qubits of the host. Empty = the host has none and a
    /// fresh ancilla is appended.
    std::vector<int> ancillas;
    /// Qubit receiving the rotation; defaults to the first ancilla (or the
    /// fresh one).
    std::optional<int> target;
    double theta = M_PI;
    /// Optional entangling CNOT (control, target). With declared ancillas
    /// both ends must be ancillas; in fresh-ancilla mode the control may be
    /// a functional qubit and the target must be the new ancilla.
    std::optional<std::pair<int, int>> cnot;
};

struct RandomSpec {
    /// Explicit watermark block (gates only). Empty = draw `k` random gates.
    std::vector<Instruction> block;
    std::optional<int> insertion_index; // default: middle of the gate list
    std::optional<uint64_t> seed;       // used by the random draw
    int k = 2;
};

/// Rotation-gate watermark: appends RY(theta) on an ancilla (plus the
/// optional CNOT and a shielding barrier) at the output end of the circuit,
/// before terminal measures. Functional-qubit output distributions are
/// unchanged when every touched qubit is an ancilla.
std::pair<Circuit, WatermarkRecord> embed_rotation(const Circuit& circuit,
                                                   const RotationSpec& spec);

/// Random-gate-set watermark: inserts block B, a barrier over B's qubits,
/// the reversed inverse block, and a closing barrier. The whole-circuit
/// unitary is unchanged up to global phase. Randomly drawn blocks avoid
/// SWAP/ISWAP kinds, internally cancelling adjacencies, and SWAP-equivalent
/// windows so the watermark survives optimization and swap-normalization.
std::pair<Circuit, WatermarkRecord> embed_random(const Circuit& circuit, const RandomSpec& spec);

/// Both schemes on one host; the record carries all inserted gates.
std::pair<Circuit, WatermarkRecord> embed_combined(const Circuit& circuit,
                                                   const RotationSpec& rotation,
                                                   const RandomSpec& random);

/// Configuration of the authorship-probability model.
struct PpaConfig {
    int n_qubits_incl_ancilla = 0;
    int k_random_gates = 2;
    int gate_pool_size = kSingleQubitPoolSize + kTwoQubitPoolSize; // 22
    int rotation_gate_choices = kSingleQubitPoolSize;              // 10
    int phase_resolution_steps = 6;                                // pi/6 grid
    std::vector<int> placement_counts; // per random gate

    /// Default model for k=2 (one 1-qubit and one 2-qubit gate) on n qubits:
    /// placements {n, n*(n-1)}.
    static PpaConfig for_qubits(int n_qubits_incl_ancilla, int k_random_gates = 2);
};

/// 1 / N where N = C(pool, k) * prod(placements) * rotation_choices *
/// phase_steps. Throws when any count is < 1.
double ppa(const PpaConfig& config);

/// Number of distinct watermark configurations (the N above).
double ppa_watermark_count(const PpaConfig& config);

double binomial(int n, int k);

} // namespace qcmark
