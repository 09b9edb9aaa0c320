// Copyright (c) qcmark contributors.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "qcmark/circuit.hpp"
#include "qcmark/unitary.hpp"

#include "helpers.hpp"

#include <doctest.h>

using namespace qcmark;

TEST_SUITE("circuit") {

TEST_CASE("depth of the empty circuit is zero") { CHECK(depth(Circuit(3)) == 0); }

TEST_CASE("depth layers parallel gates") {
    // two parallel H then one CX = 2 layers
    Circuit c(2);
    c.gate(GateKind::H, {0}).gate(GateKind::H, {1}).gate(GateKind::CX, {0, 1});
    CHECK(depth(c) == 2);
}

TEST_CASE("barriers are excluded from depth") {
    Circuit c(1);
    c.gate(GateKind::X, {0}).barrier().gate(GateKind::X, {0});
    CHECK(depth(c) == 2);
}

TEST_CASE("depth is monotone under append") {
    Rng rng(11);
    auto pool = test::invertible_kinds();
    Circuit c(4);
    int last = 0;
    for (int i = 0; i < 40; ++i) {
        c.add(test::random_gate(rng, 4, pool));
        const int d = depth(c);
        CHECK(d >= last);
        last = d;
    }
}

TEST_CASE("two-qubit gate count") {
    CHECK(two_qubit_gate_count(Circuit(2)) == 0);
    Circuit c(3);
    c.gate(GateKind::CX, {0, 1})
        .gate(GateKind::H, {2})
        .gate(GateKind::CX, {1, 2})
        .gate(GateKind::SWAP, {0, 2});
    CHECK(two_qubit_gate_count(c) == 3);
}

TEST_CASE("instruction validation") {
    Circuit c(2, 1);
    CHECK_THROWS_AS(c.gate(GateKind::X, {5}), std::invalid_argument);
    CHECK_THROWS_AS(c.gate(GateKind::CX, {0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(c.gate(GateKind::RY, {0}), std::invalid_argument); // missing param
    CHECK_THROWS_AS(c.measure(0, 3), std::invalid_argument);
    CHECK_THROWS_AS(c.add(Instruction::barrier({})), std::invalid_argument);
}

TEST_CASE("terminal measure bookkeeping") {
    Circuit c(2, 2);
    c.gate(GateKind::H, {0}).measure(0, 0).measure(1, 1);
    CHECK(c.measures_terminal());
    CHECK(c.measured_qubits() == std::vector<int>{0, 1});
    Circuit bad(1, 1);
    bad.measure(0, 0).gate(GateKind::X, {0});
    CHECK_FALSE(bad.measures_terminal());
}

TEST_CASE("a circuit followed by its inverse sequence is the identity up to phase") {
    Rng rng(2024);
    auto pool = test::invertible_kinds();
    for (int rep = 0; rep < 40; ++rep) {
        const int n = 2 + static_cast<int>(rng.uniform_int(3)); // 2..4 qubits
        const int g = 1 + static_cast<int>(rng.uniform_int(12));
        Circuit c = test::random_circuit(rng, n, g, pool);
        Circuit round_trip = c;
        for (auto& inst : inverse_sequence(c)) round_trip.add(std::move(inst));
        const Matrix u = unitary_of(round_trip);
        CAPTURE(rep);
        CHECK(equal_up_to_global_phase(u, Matrix::Identity(u.rows(), u.cols()), 1e-9));
    }
}

} // TEST_SUITE
