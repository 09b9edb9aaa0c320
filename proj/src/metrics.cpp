// Copyright (c) qcmark contributors.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "qcmark/metrics.hpp"

#include "qcmark/rng.hpp"
#include "qcmark/transpile.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qcmark {

double tvd(const Distribution& a, const Distribution& b) {
    if (a.weights.empty() || b.weights.empty())
        throw std::invalid_argument("tvd requires non-empty distributions");
    const auto pa = a.probabilities();
    const auto pb = b.probabilities();
    double sum = 0;
    for (const auto& [key, p] : pa) {
        auto it = pb.find(key);
        sum += std::abs(p - (it == pb.end() ? 0.0 : it->second));
    }
    for (const auto& [key, p] : pb)
        if (!pa.count(key)) sum += p;
    return 0.5 * sum;
}

double pst(const Distribution& observed, const std::string& reference_outcome) {
    if (!observed.shots || *observed.shots == 0)
        throw std::invalid_argument("pst requires a sampled distribution with shots");
    auto it = observed.weights.find(reference_outcome);
    const double hits = it == observed.weights.end() ? 0.0 : it->second;
    return hits / static_cast<double>(*observed.shots);
}

std::string ideal_reference_outcome(const Circuit& circuit, const std::string& input) {
    const Distribution exact = exact_distribution(circuit, input);
    std::string best;
    double best_p = -1;
    for (const auto& [key, p] : exact.weights) {
        if (p > best_p + 1e-15) { // strictly better; map order breaks ties low
            best_p = p;
            best = key;
        }
    }
    return best;
}

namespace {

/// append measure-all when the circuit has no measures, so routing keeps
/// outcomes in logical (clbit) order
Circuit ensure_measured(const Circuit& circuit) {
    if (circuit.has_measures()) return circuit;
    Circuit out = circuit;
    out.measure_all();
    return out;
}

Distribution run_config(const Circuit& logical, const SweepConfig& config, uint64_t shots,
                        uint64_t seed, const std::string& input) {
    const Circuit measured = ensure_measured(logical);
    const RoutedCircuit routed = route(measured, config.map);
    std::string padded_input = input;
    if (!input.empty()) {
        // inputs are given on logical qubits; identity initial layout puts
        // them on the low physical wires
        padded_input = std::string(
            static_cast<size_t>(config.map.num_physical_qubits - logical.num_qubits), '0');
        padded_input += input;
    }
    Distribution dist;
    if (config.noise && !config.noise->is_null())
        dist = sample(routed.circuit, padded_input, shots, seed, config.noise);
    else
        dist = exact_distribution(routed.circuit, padded_input);
    // outcome bits are keyed by clbit, and clbits were assigned one per
    // logical qubit before routing; relabel so callers marginalize by
    // logical index
    std::vector<int> clbits;
    for (const auto& inst : routed.circuit.instructions)
        if (inst.is_measure()) clbits.push_back(inst.clbit);
    std::sort(clbits.begin(), clbits.end());
    dist.measured_qubits = clbits;
    return dist;
}

} // namespace

PhaseSweepResult phase_sweep(const Circuit& host, int ancilla,
                             std::optional<std::pair<int, int>> cnot, int grid_steps,
                             const std::vector<SweepConfig>& configs, uint64_t shots,
                             uint64_t seed, const std::string& input) {
    if (grid_steps < 4) throw std::invalid_argument("phase sweep needs at least 4 grid points");
    if (configs.empty()) throw std::invalid_argument("phase sweep needs at least one config");

    RotationSpec spec;
    spec.ancillas = {ancilla};
    if (cnot) {
        spec.ancillas.push_back(cnot->first);
        spec.ancillas.push_back(cnot->second);
        std::sort(spec.ancillas.begin(), spec.ancillas.end());
        spec.ancillas.erase(std::unique(spec.ancillas.begin(), spec.ancillas.end()),
                            spec.ancillas.end());
        spec.cnot = cnot;
    }
    spec.target = ancilla;

    // baseline: the un-watermarked host under the first config
    const Distribution baseline =
        marginalize(run_config(host, configs[0], shots, derive_seed(seed, 0), input), {ancilla});

    PhaseSweepResult result;
    result.thetas.reserve(static_cast<size_t>(grid_steps));
    for (int k = 0; k < grid_steps; ++k) {
        // 2*k/steps is exact at the midpoint, so theta hits pi exactly on
        // even grids
        const double theta = (2.0 * k / grid_steps) * M_PI;
        result.thetas.push_back(theta);
        spec.theta = theta;
        auto [wm, record] = embed_rotation(host, spec);
        std::vector<double> row;
        row.reserve(configs.size());
        double sum = 0;
        for (size_t c = 0; c < configs.size(); ++c) {
            const uint64_t sub_seed =
                derive_seed(seed, 1 + static_cast<uint64_t>(k) * configs.size() + c);
            const Distribution dist =
                marginalize(run_config(wm, configs[c], shots, sub_seed, input), {ancilla});
            const double value = tvd(dist, baseline);
            row.push_back(value);
            sum += value;
        }
        result.tvds.push_back(std::move(row));
        result.sum_over_configs.push_back(sum);
    }
    size_t best = 0;
    for (size_t t = 1; t < result.sum_over_configs.size(); ++t)
        if (result.sum_over_configs[t] > result.sum_over_configs[best]) best = t;
    result.argmax_theta = result.thetas[best];
    return result;
}

} // namespace qcmark
