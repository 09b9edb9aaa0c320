// Copyright (c) qcmark contributors.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "qcmark/qaoa.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qcmark {

namespace {

using nlohmann::json;

std::vector<WeightedEdge> sorted_edges(std::vector<WeightedEdge> edges) {
    for (auto& e : edges)
        if (e.a > e.b) std::swap(e.a, e.b);
    std::sort(edges.begin(), edges.end(), [](const WeightedEdge& x, const WeightedEdge& y) {
        return std::tie(x.a, x.b) < std::tie(y.a, y.b);
    });
    return edges;
}

} // namespace

Graph::Graph(int n, std::vector<WeightedEdge> e) : n_nodes(n), edges(sorted_edges(std::move(e))) {
    if (n < 2) throw std::invalid_argument("maxcut graph needs at least 2 nodes");
    for (const auto& edge : edges) {
        if (edge.a == edge.b) throw std::invalid_argument("self-loops are not allowed");
        if (edge.a < 0 || edge.b < 0 || edge.a >= n || edge.b >= n)
            throw std::invalid_argument("edge endpoint out of range");
    }
}

Graph Graph::from_json_text(const std::string& text) {
    json j = json::parse(text);
    std::vector<WeightedEdge> edges;
    for (const auto& e : j.at("edges")) {
        WeightedEdge we{e.at(0).get<int>(), e.at(1).get<int>(), 1.0};
        if (e.size() > 2) we.weight = e.at(2).get<double>();
        edges.push_back(we);
    }
    return Graph(j.at("n").get<int>(), std::move(edges));
}

std::string Graph::to_json_text() const {
    json j;
    j["n"] = n_nodes;
    auto arr = json::array();
    for (const auto& e : edges) {
        if (e.weight == 1.0) arr.push_back(json::array({e.a, e.b}));
        else arr.push_back(json::array({e.a, e.b, e.weight}));
    }
    j["edges"] = arr;
    return j.dump();
}

Graph Graph::preset(const std::string& name) {
    if (name == "path3") return Graph(3, {{0, 1}, {1, 2}});
    if (name == "triangle") return Graph(3, {{0, 1}, {1, 2}, {0, 2}});
    if (name == "cycle4") return Graph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
    if (name == "wheel5")
        return Graph(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {2, 3}, {3, 4}, {1, 4}});
    throw std::invalid_argument("unknown graph preset '" + name + "'");
}

std::vector<std::string> Graph::preset_names() { return {"path3", "triangle", "cycle4", "wheel5"}; }

Circuit build_qaoa_circuit(const Graph& g, const QaoaParams& params) {
    if (params.gammas.size() != params.betas.size() || params.gammas.empty())
        throw std::invalid_argument("gammas and betas must have equal length p >= 1");
    Circuit circuit(g.n_nodes, g.n_nodes, "qaoa");
    for (int q = 0; q < g.n_nodes; ++q) circuit.gate(GateKind::H, {q});
    for (int layer = 0; layer < params.layers(); ++layer) {
        for (const auto& e : g.edges) {
            circuit.gate(GateKind::CX, {e.a, e.b});
            circuit.gate(GateKind::RZ, {e.b}, {2.0 * params.gammas[static_cast<size_t>(layer)] * e.weight});
            circuit.gate(GateKind::CX, {e.a, e.b});
        }
        for (int q = 0; q < g.n_nodes; ++q)
            circuit.gate(GateKind::RX, {q}, {2.0 * params.betas[static_cast<size_t>(layer)]});
    }
    circuit.measure_all();
    return circuit;
}

double maxcut_value(const Graph& g, const std::string& assignment) {
    if (static_cast<int>(assignment.size()) != g.n_nodes)
        throw std::invalid_argument("assignment length must equal the node count");
    const uint64_t bits = string_to_bits(assignment);
    double value = 0;
    for (const auto& e : g.edges)
        if (((bits >> e.a) & 1ULL) != ((bits >> e.b) & 1ULL)) value += e.weight;
    return value;
}

std::pair<double, std::string> brute_force_maxcut(const Graph& g) {
    if (g.n_nodes > 24) throw std::invalid_argument("brute force capped at 24 nodes");
    double best = -1;
    uint64_t witness = 0;
    for (uint64_t bits = 0; bits < (1ULL << g.n_nodes); ++bits) {
        double value = 0;
        for (const auto& e : g.edges)
            if (((bits >> e.a) & 1ULL) != ((bits >> e.b) & 1ULL)) value += e.weight;
        if (value > best) {
            best = value;
            witness = bits;
        }
    }
    return {best, bits_to_string(witness, g.n_nodes)};
}

double expected_cut(const Graph& g, const Distribution& dist) {
    double acc = 0;
    for (const auto& [key, p] : dist.probabilities()) acc += p * maxcut_value(g, key);
    return acc;
}

namespace {

double evaluate(const Graph& g, const QaoaParams& params) {
    const Circuit circuit = build_qaoa_circuit(g, params);
    return expected_cut(g, exact_distribution(circuit));
}

} // namespace

QaoaParams optimize_params(const Graph& g, int layers, int budget, uint64_t seed) {
    (void)seed; // grid + coordinate descent is deterministic; the seed is
                // part of the interface for reproducibility bookkeeping
    if (layers < 1) throw std::invalid_argument("layer count must be >= 1");
    if (budget < 1) throw std::invalid_argument("budget must be >= 1");

    QaoaParams params;
    params.gammas.assign(static_cast<size_t>(layers), 0.0);
    params.betas.assign(static_cast<size_t>(layers), 0.0);

    int evals = 0;
    double best = -1;
    auto try_point = [&](QaoaParams& candidate) {
        if (evals >= budget) return false;
        ++evals;
        const double value = evaluate(g, candidate);
        if (value > best) {
            best = value;
            params = candidate;
            return true;
        }
        return false;
    };

    // cost layer is pi-periodic (unit weights), mixer pi/2-symmetric:
    // seed each layer on an 8x8 grid
    for (int layer = 0; layer < layers && evals < budget; ++layer) {
        QaoaParams candidate = params;
        for (int gi = 0; gi < 8; ++gi) {
            for (int bi = 0; bi < 8; ++bi) {
                candidate.gammas[static_cast<size_t>(layer)] = gi * (M_PI / 8);
                candidate.betas[static_cast<size_t>(layer)] = bi * (M_PI / 16);
                try_point(candidate);
                if (evals >= budget) break;
            }
            if (evals >= budget) break;
        }
    }

    // coordinate descent with shrinking steps
    double step = M_PI / 16;
    while (step > 1e-4 && evals < budget) {
        bool improved = false;
        for (int layer = 0; layer < layers && evals < budget; ++layer) {
            for (int coord = 0; coord < 2 && evals < budget; ++coord) {
                auto& value = coord == 0 ? params.gammas[static_cast<size_t>(layer)]
                                         : params.betas[static_cast<size_t>(layer)];
                for (double dir : {+1.0, -1.0}) {
                    QaoaParams candidate = params;
                    auto& cv = coord == 0 ? candidate.gammas[static_cast<size_t>(layer)]
                                          : candidate.betas[static_cast<size_t>(layer)];
                    cv = value + dir * step;
                    if (try_point(candidate)) {
                        improved = true;
                        break;
                    }
                }
            }
        }
        if (!improved) step /= 2;
    }
    return params;
}

double approximation_ratio(const Graph& g, const Circuit& circuit, uint64_t shots, uint64_t seed,
                           const std::optional<NoiseModel>& noise,
                           const std::optional<std::string>& unflip_mask) {
    Distribution dist = shots == 0 ? exact_distribution(circuit)
                                   : sample(circuit, "", shots, seed, noise);
    // drop ancilla columns: keep the node qubits (clbits 0..n-1)
    std::vector<int> nodes;
    for (int q = 0; q < g.n_nodes; ++q) nodes.push_back(q);
    if (dist.measured_qubits.size() > nodes.size()) {
        std::vector<int> keep;
        for (int q : nodes) keep.push_back(dist.measured_qubits[static_cast<size_t>(q)]);
        dist = marginalize(dist, keep);
    }

    if (unflip_mask) {
        if (unflip_mask->size() != static_cast<size_t>(g.n_nodes))
            throw std::invalid_argument("unflip mask length must equal the node count");
        const uint64_t mask = string_to_bits(*unflip_mask);
        Distribution unflipped;
        unflipped.shots = dist.shots;
        unflipped.measured_qubits = dist.measured_qubits;
        for (const auto& [key, w] : dist.weights)
            unflipped.weights[bits_to_string(string_to_bits(key) ^ mask, g.n_nodes)] += w;
        dist = std::move(unflipped);
    }

    const auto [cmax, witness] = brute_force_maxcut(g);
    if (cmax <= 0) throw std::invalid_argument("graph has no positive cut");
    return expected_cut(g, dist) / cmax;
}

} // namespace qcmark
