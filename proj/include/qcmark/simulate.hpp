// Copyright (c) qcmark contributors.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#pragma once

#include "qcmark/circuit.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qcmark {

/// Amplitudes over 2^n basis states; qubit 0 is the least-significant index
/// bit.
struct Statevector {
    int num_qubits = 0;
    std::vector<Complex> amplitudes;

    static Statevector basis_state(int num_qubits, uint64_t index);

    double norm() const;
    /// |amplitude|^2 of basis state `index`.
    double probability(uint64_t index) const;
};

/// Apply one instruction in place. Barriers are no-ops; Measure throws.
void apply_instruction(Statevector& state, const Instruction& inst);

/// Depolarizing-plus-readout noise, applied per gate / per measured bit.
struct NoiseModel {
    double p1 = 0.0;        // per 1-qubit gate
    double p2 = 0.0;        // per 2-qubit gate
    double p_readout = 0.0; // per measured bit

    bool is_null() const { return p1 == 0.0 && p2 == 0.0 && p_readout == 0.0; }

    /// Order-of-magnitude NISQ-like preset: p1=0.001, p2=0.01, readout=0.02.
    static NoiseModel toy();
    static NoiseModel none() { return {}; }
};

/// Outcome weights keyed by bitstring (printed most-significant-first). When
/// `shots` is set the values are counts, otherwise probabilities.
struct Distribution {
    std::map<std::string, double> weights;
    std::optional<uint64_t> shots;
    std::vector<int> measured_qubits; // ordered by clbit

    /// Normalized probabilities (counts divided by shots).
    std::map<std::string, double> probabilities() const;
    double total() const;

    /// {"shots":1000,"qubits":[4],"counts":{"0":125,"1":875}}; exact
    /// distributions carry "probs" instead of "counts".
    std::string to_json_text() const;
    static Distribution from_json_text(const std::string& text);
};

/// Exact amplitudes after applying all gates to |input>. Measures must be
/// terminal and are ignored (they only define the measured qubits).
/// `input` is a bitstring over all qubits, most-significant-first; it may be
/// empty for |0...0>.
Statevector run_exact(const Circuit& circuit, const std::string& input = {});

/// Analytic outcome distribution over the measured qubits (all qubits when
/// the circuit has no measures). No sampling noise.
Distribution exact_distribution(const Circuit& circuit, const std::string& input = {});

/// Sampled distribution; deterministic for a fixed seed (one derived
/// sub-seed per shot index). With noise, every gate is followed by a
/// stochastic Pauli per the depolarizing probability and each readout bit
/// flips independently with p_readout.
Distribution sample(const Circuit& circuit, const std::string& input, uint64_t shots,
                    uint64_t seed, const std::optional<NoiseModel>& noise = std::nullopt);

/// Marginal over `qubits` (must be measured in `dist`), preserving their
/// given order.
Distribution marginalize(const Distribution& dist, const std::vector<int>& qubits);

/// Bitstring for a basis index over the listed qubits, most-significant-first
/// (qubits[0] is the least-significant character).
std::string bits_to_string(uint64_t value, int width);
uint64_t string_to_bits(const std::string& s);

} // namespace qcmark
