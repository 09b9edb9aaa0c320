// Copyright (c) qcmark contributors.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "qcmark/simulate.hpp"

#include "qcmark/rng.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qcmark {

namespace {

constexpr int kExactQubitCap = 24;

void apply_1q(std::vector<Complex>& amps, const Matrix& m, int target) {
    const uint64_t mask = 1ULL << target;
    const uint64_t dim = amps.size();
    const Complex m00 = m(0, 0), m01 = m(0, 1), m10 = m(1, 0), m11 = m(1, 1);
    for (uint64_t i = 0; i < dim; ++i) {
        if (i & mask) continue;
        const uint64_t j = i | mask;
        const Complex a0 = amps[i], a1 = amps[j];
        amps[i] = m00 * a0 + m01 * a1;
        amps[j] = m10 * a0 + m11 * a1;
    }
}

void apply_2q(std::vector<Complex>& amps, const Matrix& m, int qa, int qb) {
    const uint64_t mask_a = 1ULL << qa;
    const uint64_t mask_b = 1ULL << qb;
    const uint64_t dim = amps.size();
    for (uint64_t i = 0; i < dim; ++i) {
        if ((i & mask_a) || (i & mask_b)) continue;
        // local index = bit(qb)*2 + bit(qa)
        const uint64_t idx[4] = {i, i | mask_a, i | mask_b, i | mask_a | mask_b};
        Complex v[4];
        for (int k = 0; k < 4; ++k) v[k] = amps[idx[k]];
        for (int r = 0; r < 4; ++r) {
            Complex acc = 0;
            for (int c = 0; c < 4; ++c) acc += m(r, c) * v[c];
            amps[idx[r]] = acc;
        }
    }
}

void apply_pauli(std::vector<Complex>& amps, int pauli, int qubit) {
    // 0=I, 1=X, 2=Y, 3=Z
    static const Matrix X = gate_matrix(GateKind::X);
    static const Matrix Y = gate_matrix(GateKind::Y);
    static const Matrix Z = gate_matrix(GateKind::Z);
    switch (pauli) {
    case 1: apply_1q(amps, X, qubit); break;
    case 2: apply_1q(amps, Y, qubit); break;
    case 3: apply_1q(amps, Z, qubit); break;
    default: break;
    }
}

uint64_t parse_input(const Circuit& circuit, const std::string& input) {
    if (input.empty()) return 0;
    if (static_cast<int>(input.size()) != circuit.num_qubits)
        throw std::invalid_argument("input bitstring length " + std::to_string(input.size()) +
                                    " does not match qubit count " +
                                    std::to_string(circuit.num_qubits));
    return string_to_bits(input);
}

void check_simulable(const Circuit& circuit) {
    if (circuit.num_qubits > kExactQubitCap)
        throw std::invalid_argument("simulation capped at " + std::to_string(kExactQubitCap) +
                                    " qubits");
    if (!circuit.measures_terminal())
        throw std::invalid_argument("mid-circuit measurement is not supported");
}

std::vector<int> outcome_qubits(const Circuit& circuit) {
    auto measured = circuit.measured_qubits();
    if (!measured.empty()) return measured;
    std::vector<int> all(static_cast<size_t>(circuit.num_qubits));
    for (int q = 0; q < circuit.num_qubits; ++q) all[static_cast<size_t>(q)] = q;
    return all;
}

/// Outcome index over `qubits` (qubits[i] -> bit i) for a basis state.
uint64_t extract_outcome(uint64_t basis, const std::vector<int>& qubits) {
    uint64_t out = 0;
    for (size_t i = 0; i < qubits.size(); ++i)
        out |= ((basis >> qubits[i]) & 1ULL) << i;
    return out;
}

} // namespace

Statevector Statevector::basis_state(int num_qubits, uint64_t index) {
    Statevector sv;
    sv.num_qubits = num_qubits;
    sv.amplitudes.assign(1ULL << num_qubits, Complex(0, 0));
    sv.amplitudes.at(index) = Complex(1, 0);
    return sv;
}

double Statevector::norm() const {
    double n = 0;
    for (const Complex& a : amplitudes) n += std::norm(a);
    return std::sqrt(n);
}

double Statevector::probability(uint64_t index) const { return std::norm(amplitudes.at(index)); }

void apply_instruction(Statevector& state, const Instruction& inst) {
    switch (inst.type) {
    case OpType::Barrier:
        return;
    case OpType::Measure:
        throw std::invalid_argument("cannot apply a measurement to a statevector");
    case OpType::Gate: {
        const Matrix m = gate_matrix(inst.kind, inst.params);
        if (inst.qubits.size() == 1) apply_1q(state.amplitudes, m, inst.qubits[0]);
        else apply_2q(state.amplitudes, m, inst.qubits[0], inst.qubits[1]);
        return;
    }
    }
}

NoiseModel NoiseModel::toy() { return NoiseModel{0.001, 0.01, 0.02}; }

std::map<std::string, double> Distribution::probabilities() const {
    std::map<std::string, double> probs;
    double denom = shots ? static_cast<double>(*shots) : total();
    if (denom <= 0) throw std::invalid_argument("empty distribution");
    for (const auto& [key, w] : weights) probs[key] = w / denom;
    return probs;
}

double Distribution::total() const {
    double t = 0;
    for (const auto& [key, w] : weights) t += w;
    return t;
}

std::string Distribution::to_json_text() const {
    nlohmann::json j;
    if (shots) j["shots"] = *shots;
    j["qubits"] = measured_qubits;
    nlohmann::json outcomes = nlohmann::json::object();
    for (const auto& [key, w] : weights) {
        if (shots) outcomes[key] = static_cast<uint64_t>(std::llround(w));
        else outcomes[key] = w;
    }
    j[shots ? "counts" : "probs"] = outcomes;
    return j.dump();
}

Distribution Distribution::from_json_text(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    Distribution dist;
    if (j.contains("shots")) dist.shots = j.at("shots").get<uint64_t>();
    dist.measured_qubits = j.at("qubits").get<std::vector<int>>();
    const auto& outcomes = j.contains("counts") ? j.at("counts") : j.at("probs");
    for (auto it = outcomes.begin(); it != outcomes.end(); ++it)
        dist.weights[it.key()] = it.value().get<double>();
    return dist;
}

Statevector run_exact(const Circuit& circuit, const std::string& input) {
    check_simulable(circuit);
    Statevector sv = Statevector::basis_state(circuit.num_qubits, parse_input(circuit, input));
    for (const auto& inst : circuit.instructions)
        if (!inst.is_measure()) apply_instruction(sv, inst);
    return sv;
}

Distribution exact_distribution(const Circuit& circuit, const std::string& input) {
    Statevector sv = run_exact(circuit, input);
    const auto qubits = outcome_qubits(circuit);
    Distribution dist;
    dist.measured_qubits = qubits;
    const int width = static_cast<int>(qubits.size());
    for (uint64_t basis = 0; basis < sv.amplitudes.size(); ++basis) {
        double p = std::norm(sv.amplitudes[basis]);
        if (p == 0.0) continue;
        dist.weights[bits_to_string(extract_outcome(basis, qubits), width)] += p;
    }
    return dist;
}

Distribution sample(const Circuit& circuit, const std::string& input, uint64_t shots,
                    uint64_t seed, const std::optional<NoiseModel>& noise) {
    if (shots < 1) throw std::invalid_argument("shots must be >= 1");
    check_simulable(circuit);
    const auto qubits = outcome_qubits(circuit);
    const int width = static_cast<int>(qubits.size());

    Distribution dist;
    dist.shots = shots;
    dist.measured_qubits = qubits;

    const bool noisy = noise && !noise->is_null();
    if (!noisy) {
        // One statevector evolution; per-shot draws against the cumulative
        // outcome distribution.
        Distribution exact = exact_distribution(circuit, input);
        std::vector<std::pair<std::string, double>> cumulative;
        cumulative.reserve(exact.weights.size());
        double acc = 0;
        for (const auto& [key, p] : exact.weights) {
            acc += p;
            cumulative.emplace_back(key, acc);
        }
        for (uint64_t shot = 0; shot < shots; ++shot) {
            Rng rng(derive_seed(seed, shot));
            const double u = rng.uniform() * acc;
            auto it = std::lower_bound(cumulative.begin(), cumulative.end(), u,
                                       [](const auto& e, double v) { return e.second < v; });
            if (it == cumulative.end()) --it;
            dist.weights[it->first] += 1;
        }
        return dist;
    }

    const uint64_t start = parse_input(circuit, input);
    for (uint64_t shot = 0; shot < shots; ++shot) {
        Rng rng(derive_seed(seed, shot));
        Statevector sv = Statevector::basis_state(circuit.num_qubits, start);
        for (const auto& inst : circuit.instructions) {
            if (inst.is_measure()) continue;
            apply_instruction(sv, inst);
            if (!inst.is_gate()) continue;
            const bool two = inst.qubits.size() == 2;
            const double p = two ? noise->p2 : noise->p1;
            if (p <= 0.0) continue;
            if (rng.uniform() < p) {
                if (two) {
                    // one of the 15 non-identity two-qubit Paulis
                    const uint64_t pick = rng.uniform_int(15) + 1;
                    apply_pauli(sv.amplitudes, static_cast<int>(pick & 3), inst.qubits[0]);
                    apply_pauli(sv.amplitudes, static_cast<int>(pick >> 2), inst.qubits[1]);
                } else {
                    apply_pauli(sv.amplitudes, static_cast<int>(rng.uniform_int(3)) + 1,
                                inst.qubits[0]);
                }
            }
        }
        // project the final state onto one basis outcome
        const double u = rng.uniform();
        double acc = 0;
        uint64_t basis = sv.amplitudes.size() - 1;
        for (uint64_t i = 0; i < sv.amplitudes.size(); ++i) {
            acc += std::norm(sv.amplitudes[i]);
            if (u < acc) {
                basis = i;
                break;
            }
        }
        uint64_t outcome = extract_outcome(basis, qubits);
        if (noise->p_readout > 0.0)
            for (int bit = 0; bit < width; ++bit)
                if (rng.uniform() < noise->p_readout) outcome ^= 1ULL << bit;
        dist.weights[bits_to_string(outcome, width)] += 1;
    }
    return dist;
}

Distribution marginalize(const Distribution& dist, const std::vector<int>& qubits) {
    std::vector<size_t> positions;
    positions.reserve(qubits.size());
    for (int q : qubits) {
        auto it = std::find(dist.measured_qubits.begin(), dist.measured_qubits.end(), q);
        if (it == dist.measured_qubits.end())
            throw std::invalid_argument("qubit " + std::to_string(q) +
                                        " is not measured in the distribution");
        positions.push_back(static_cast<size_t>(it - dist.measured_qubits.begin()));
    }
    const size_t old_width = dist.measured_qubits.size();
    Distribution out;
    out.shots = dist.shots;
    out.measured_qubits = qubits;
    for (const auto& [key, w] : dist.weights) {
        if (key.size() != old_width) throw std::invalid_argument("malformed outcome key");
        std::string reduced(qubits.size(), '0');
        for (size_t i = 0; i < positions.size(); ++i)
            reduced[qubits.size() - 1 - i] = key[old_width - 1 - positions[i]];
        out.weights[reduced] += w;
    }
    return out;
}

std::string bits_to_string(uint64_t value, int width) {
    std::string s(static_cast<size_t>(width), '0');
    for (int i = 0; i < width; ++i)
        if ((value >> i) & 1ULL) s[static_cast<size_t>(width - 1 - i)] = '1';
    return s;
}

uint64_t string_to_bits(const std::string& s) {
    uint64_t v = 0;
    for (size_t i = 0; i < s.size(); ++i) {
        const char c = s[s.size() - 1 - i];
        if (c == '1') v |= 1ULL << i;
        else if (c != '0') throw std::invalid_argument("bitstring must contain only 0/1");
    }
    return v;
}

} // namespace qcmark
