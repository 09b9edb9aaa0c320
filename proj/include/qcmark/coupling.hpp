// Copyright (c) qcmark contributors.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace qcmark {

/// Allowed two-qubit interaction edges of a target device. Undirected,
/// connected, no self-loops.
struct CouplingMap {
    int num_physical_qubits = 0;
    std::set<std::pair<int, int>> edges; // stored with first < second

    CouplingMap() = default;
    CouplingMap(int n, std::vector<std::pair<int, int>> edge_list);

    bool has_edge(int a, int b) const;
    bool is_connected() const;

    /// Shortest path between two physical qubits (inclusive endpoints).
    /// Among equal-length paths the lexicographically smallest index
    /// sequence is returned, which keeps routing deterministic.
    std::vector<int> shortest_path(int from, int to) const;

    /// JSON of the form {"n": 5, "edges": [[0,1],[1,2]]}.
    static CouplingMap from_json_text(const std::string& text);
    std::string to_json_text() const;

    /// Bundled presets: line5, t5, ring7, grid7.
    static CouplingMap preset(const std::string& name);
    static std::vector<std::string> preset_names();
};

} // namespace qcmark
