// Copyright (c) qcmark contributors.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "qcmark/coupling.hpp"

#include <json.hpp>

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace qcmark {

namespace {

std::pair<int, int> ordered(int a, int b) { return a < b ? std::make_pair(a, b) : std::make_pair(b, a); }

} // namespace

CouplingMap::CouplingMap(int n, std::vector<std::pair<int, int>> edge_list)
    : num_physical_qubits(n) {
    if (n < 1) throw std::invalid_argument("coupling map needs at least one qubit");
    for (auto [a, b] : edge_list) {
        if (a == b) throw std::invalid_argument("coupling map must not contain self-loops");
        if (a < 0 || b < 0 || a >= n || b >= n)
            throw std::invalid_argument("coupling edge out of range");
        edges.insert(ordered(a, b));
    }
    if (!is_connected()) throw std::invalid_argument("coupling map must be connected");
}

bool CouplingMap::has_edge(int a, int b) const { return edges.count(ordered(a, b)) > 0; }

bool CouplingMap::is_connected() const {
    if (num_physical_qubits <= 1) return true;
    std::vector<char> seen(static_cast<size_t>(num_physical_qubits), 0);
    std::deque<int> frontier{0};
    seen[0] = 1;
    int visited = 1;
    while (!frontier.empty()) {
        int v = frontier.front();
        frontier.pop_front();
        for (auto [a, b] : edges) {
            int other = -1;
            if (a == v) other = b;
            else if (b == v) other = a;
            if (other >= 0 && !seen[static_cast<size_t>(other)]) {
                seen[static_cast<size_t>(other)] = 1;
                ++visited;
                frontier.push_back(other);
            }
        }
    }
    return visited == num_physical_qubits;
}

std::vector<int> CouplingMap::shortest_path(int from, int to) const {
    if (from < 0 || to < 0 || from >= num_physical_qubits || to >= num_physical_qubits)
        throw std::invalid_argument("path endpoint out of range");
    if (from == to) return {from};
    // neighbor lists in ascending order; BFS visiting smaller indices first
    // yields the lexicographically smallest shortest path
    std::vector<std::vector<int>> adj(static_cast<size_t>(num_physical_qubits));
    for (auto [a, b] : edges) {
        adj[static_cast<size_t>(a)].push_back(b);
        adj[static_cast<size_t>(b)].push_back(a);
    }
    for (auto& v : adj) std::sort(v.begin(), v.end());

    std::vector<int> dist(static_cast<size_t>(num_physical_qubits), -1);
    std::deque<int> frontier{from};
    dist[static_cast<size_t>(from)] = 0;
    while (!frontier.empty()) {
        int v = frontier.front();
        frontier.pop_front();
        for (int w : adj[static_cast<size_t>(v)])
            if (dist[static_cast<size_t>(w)] < 0) {
                dist[static_cast<size_t>(w)] = dist[static_cast<size_t>(v)] + 1;
                frontier.push_back(w);
            }
    }
    if (dist[static_cast<size_t>(to)] < 0) throw std::runtime_error("no path between qubits");

    // walk forward greedily: among neighbors one step closer to `to`, take
    // the smallest index
    std::vector<int> path{from};
    // recompute distances from `to` so we can walk from `from` downhill
    std::vector<int> dist_to(static_cast<size_t>(num_physical_qubits), -1);
    frontier = {to};
    dist_to[static_cast<size_t>(to)] = 0;
    while (!frontier.empty()) {
        int v = frontier.front();
        frontier.pop_front();
        for (int w : adj[static_cast<size_t>(v)])
            if (dist_to[static_cast<size_t>(w)] < 0) {
                dist_to[static_cast<size_t>(w)] = dist_to[static_cast<size_t>(v)] + 1;
                frontier.push_back(w);
            }
    }
    int cur = from;
    while (cur != to) {
        for (int w : adj[static_cast<size_t>(cur)]) {
            if (dist_to[static_cast<size_t>(w)] == dist_to[static_cast<size_t>(cur)] - 1) {
                path.push_back(w);
                cur = w;
                break;
            }
        }
    }
    return path;
}

CouplingMap CouplingMap::from_json_text(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    int n = j.at("n").get<int>();
    std::vector<std::pair<int, int>> edge_list;
    for (const auto& e : j.at("edges"))
        edge_list.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    return CouplingMap(n, std::move(edge_list));
}

std::string CouplingMap::to_json_text() const {
    nlohmann::json j;
    j["n"] = num_physical_qubits;
    auto arr = nlohmann::json::array();
    for (auto [a, b] : edges) arr.push_back(nlohmann::json::array({a, b}));
    j["edges"] = arr;
    return j.dump();
}

CouplingMap CouplingMap::preset(const std::string& name) {
    if (name == "line5") return CouplingMap(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
    if (name == "t5") return CouplingMap(5, {{0, 1}, {1, 2}, {1, 3}, {3, 4}});
    if (name == "ring7")
        return CouplingMap(7, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {0, 6}});
    if (name == "grid7")
        return CouplingMap(7, {{0, 1}, {1, 2}, {3, 4}, {4, 5}, {0, 3}, {1, 4}, {2, 5}, {3, 6}});
    throw std::invalid_argument("unknown coupling preset '" + name + "'");
}

std::vector<std::string> CouplingMap::preset_names() { return {"line5", "t5", "ring7", "grid7"}; }

} // namespace qcmark
