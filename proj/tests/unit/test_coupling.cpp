// Copyright (c) qcmark contributors.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "qcmark/coupling.hpp"

#include <doctest.h>

#include <stdexcept>

using namespace qcmark;

TEST_SUITE("coupling") {

TEST_CASE("presets are valid and connected") {
    for (const auto& name : CouplingMap::preset_names()) {
        const auto map = CouplingMap::preset(name);
        CAPTURE(name);
        CHECK(map.is_connected());
        CHECK(map.num_physical_qubits >= 5);
    }
    // the t5 preset is the 5-qubit T shape
    const auto t5 = CouplingMap::preset("t5");
    CHECK(t5.edges == std::set<std::pair<int, int>>{{0, 1}, {1, 2}, {1, 3}, {3, 4}});
    CHECK_THROWS_AS((void)CouplingMap::preset("hexagon"), std::invalid_argument);
}

TEST_CASE("construction rejects malformed maps") {
    CHECK_THROWS_AS(CouplingMap(3, {{0, 0}}), std::invalid_argument);          // self loop
    CHECK_THROWS_AS(CouplingMap(3, {{0, 5}}), std::invalid_argument);          // out of range
    CHECK_THROWS_AS(CouplingMap(4, {{0, 1}, {2, 3}}), std::invalid_argument);  // disconnected
}

TEST_CASE("shortest paths prefer the lexicographically smallest sequence") {
    const auto ring = CouplingMap::preset("ring7");
    // 0 -> 3 has two length-3 routes; ties break toward smaller indices
    CHECK(ring.shortest_path(0, 3) == std::vector<int>{0, 1, 2, 3});
    CHECK(ring.shortest_path(0, 5) == std::vector<int>{0, 6, 5});
    CHECK(ring.shortest_path(2, 2) == std::vector<int>{2});
    const auto line = CouplingMap::preset("line5");
    CHECK(line.shortest_path(4, 0) == std::vector<int>{4, 3, 2, 1, 0});
}

TEST_CASE("json round-trip") {
    const auto t5 = CouplingMap::preset("t5");
    const auto parsed = CouplingMap::from_json_text(t5.to_json_text());
    CHECK(parsed.num_physical_qubits == t5.num_physical_qubits);
    CHECK(parsed.edges == t5.edges);
    const auto custom =
        CouplingMap::from_json_text(R"({"n": 5, "edges": [[0,1],[1,2],[1,3],[3,4]]})");
    CHECK(custom.edges == t5.edges);
}

} // TEST_SUITE
