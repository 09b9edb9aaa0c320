// Copyright (c) qcmark contributors.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#pragma once

#include "qcmark/circuit.hpp"
#include "qcmark/simulate.hpp"

#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace qcmark {

struct WeightedEdge {
    int a = 0;
    int b = 0;
    double weight = 1.0;
};

/// Undirected weighted graph for maxcut instances.
struct Graph {
    int n_nodes = 0;
    std::vector<WeightedEdge> edges;

    Graph() = default;
    Graph(int n, std::vector<WeightedEdge> e);

    /// {"n":3,"edges":[[0,1],[1,2],[0,2]]}; an edge may carry an optional
    /// third element as weight.
    static Graph from_json_text(const std::string& text);
    std::string to_json_text() const;

    /// Presets: path3, triangle, cycle4, wheel5.
    static Graph preset(const std::string& name);
    static std::vector<std::string> preset_names();
};

struct QaoaParams {
    std::vector<double> gammas;
    std::vector<double> betas;

    int layers() const { return static_cast<int>(gammas.size()); }
};

/// H on all qubits; per layer the ZZ cost term CX(i,j), RZ(2*gamma*w) on j,
/// CX(i,j) for every edge, then the RX(2*beta) mixer on every qubit;
/// terminal measurement of all qubits.
Circuit build_qaoa_circuit(const Graph& g, const QaoaParams& params);

/// Total weight of edges cut by the assignment (bitstring, node i = bit i
/// from the right).
double maxcut_value(const Graph& g, const std::string& assignment);

/// Exhaustive optimum over all 2^n assignments (n <= 24).
std::pair<double, std::string> brute_force_maxcut(const Graph& g);

/// Expected cut value of a sampled or exact outcome distribution over the
/// node qubits.
double expected_cut(const Graph& g, const Distribution& dist);

/// Derivative-free maximization of the exact noiseless expected cut:
/// 8x8 per-layer grid seeding over [0,pi) x [0,pi/2), then coordinate
/// descent. Deterministic for a fixed seed; `budget` caps evaluations.
QaoaParams optimize_params(const Graph& g, int layers, int budget, uint64_t seed);

/// AR = E[cut] / C_max. `shots` = 0 uses exact probabilities. Ancilla
/// columns beyond the node qubits are dropped; `unflip_mask` (bitstring over
/// nodes) is XORed onto every outcome before scoring.
double approximation_ratio(const Graph& g, const Circuit& circuit, uint64_t shots, uint64_t seed,
                           const std::optional<NoiseModel>& noise = std::nullopt,
                           const std::optional<std::string>& unflip_mask = std::nullopt);

} // namespace qcmark
