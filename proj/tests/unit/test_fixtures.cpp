// Copyright (c) qcmark contributors.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "qcmark/metrics.hpp"
#include "qcmark/qasm.hpp"
#include "qcmark/simulate.hpp"

#include "fixtures.hpp"

#include <doctest.h>

using namespace qcmark;

namespace {

const std::vector<test::Fixture>& fixtures() {
    static const auto all = test::load_fixtures(QCMARK_FIXTURE_DIR);
    return all;
}

/// classical output bit of a deterministic reversible circuit
int output_bit(const Circuit& c, uint64_t input, int qubit) {
    const auto sv = run_exact(c.without_measures(), bits_to_string(input, c.num_qubits));
    for (uint64_t i = 0; i < sv.amplitudes.size(); ++i)
        if (sv.probability(i) > 0.5) return static_cast<int>((i >> qubit) & 1);
    FAIL("state is not a basis state");
    return -1;
}

} // namespace

TEST_SUITE("fixtures") {

TEST_CASE("every fixture parses and round-trips") {
    CHECK(fixtures().size() == 6);
    for (const auto& f : fixtures()) {
        CAPTURE(f.name);
        CHECK(f.circuit.num_qubits >= 2);
        CHECK(f.circuit.measures_terminal());
        auto reparsed = parse(emit(f.circuit));
        REQUIRE(reparsed.ok());
        CHECK(structurally_equal(reparsed.value(), f.circuit, 1e-12));
    }
}

TEST_CASE("deterministic fixtures stay classical on basis inputs") {
    for (const auto& f : fixtures()) {
        if (!f.deterministic) continue;
        CAPTURE(f.name);
        const Circuit gates = f.circuit.without_measures();
        for (uint64_t input = 0; input < (1ULL << f.circuit.num_qubits); ++input) {
            const auto sv = run_exact(gates, bits_to_string(input, f.circuit.num_qubits));
            double max_p = 0;
            for (uint64_t i = 0; i < sv.amplitudes.size(); ++i)
                max_p = std::max(max_p, sv.probability(i));
            CHECK(max_p > 1.0 - 1e-9);
        }
    }
}

TEST_CASE("toffoli truth table") {
    const auto& f = fixtures()[2];
    REQUIRE(f.name == "toffoli");
    for (uint64_t input = 0; input < 8; ++input) {
        const int a = static_cast<int>(input & 1), b = static_cast<int>((input >> 1) & 1);
        const int t = static_cast<int>((input >> 2) & 1);
        CHECK(output_bit(f.circuit, input, 2) == (t ^ (a & b)));
        CHECK(output_bit(f.circuit, input, 0) == a);
        CHECK(output_bit(f.circuit, input, 1) == b);
    }
}

TEST_CASE("miller circuit swaps q1 and q2 under q0") {
    const auto& f = fixtures()[1];
    REQUIRE(f.name == "miller");
    for (uint64_t input = 0; input < 8; ++input) {
        const int c = static_cast<int>(input & 1);
        const int a = static_cast<int>((input >> 1) & 1), b = static_cast<int>((input >> 2) & 1);
        const int q1 = output_bit(f.circuit, input, 1);
        const int q2 = output_bit(f.circuit, input, 2);
        if (c) {
            CHECK(q1 == b);
            CHECK(q2 == a);
        } else {
            CHECK(q1 == a);
            CHECK(q2 == b);
        }
    }
}

TEST_CASE("fourgt computes AND of q0 and q3 onto q4") {
    const auto& f = fixtures()[3];
    REQUIRE(f.name == "fourgt");
    for (uint64_t input = 0; input < 32; ++input) {
        const int x = static_cast<int>(input & 1);
        const int y = static_cast<int>((input >> 3) & 1);
        const int prior = static_cast<int>((input >> 4) & 1);
        CHECK(output_bit(f.circuit, input, 4) == (prior ^ (x & y)));
        // idle ancillas pass through
        CHECK(output_bit(f.circuit, input, 1) == static_cast<int>((input >> 1) & 1));
        CHECK(output_bit(f.circuit, input, 2) == static_cast<int>((input >> 2) & 1));
    }
}

TEST_CASE("cmp3 outputs value-greater-than-two and restores its helper") {
    const auto& f = fixtures()[4];
    REQUIRE(f.name == "cmp3");
    for (uint64_t value = 0; value < 8; ++value) {
        // helper q3 and output q4 start at 0
        const int expected = value > 2 ? 1 : 0;
        CHECK(output_bit(f.circuit, value, 4) == expected);
        CHECK(output_bit(f.circuit, value, 3) == 0);
    }
}

TEST_CASE("bell and ghz are the expected superpositions") {
    const auto& bell = fixtures()[0];
    const auto probs = exact_distribution(bell.circuit).probabilities();
    CHECK(probs.at("00") == doctest::Approx(0.5));
    CHECK(probs.at("11") == doctest::Approx(0.5));
    const auto& ghz = fixtures()[5];
    const auto gp = exact_distribution(ghz.circuit).probabilities();
    CHECK(gp.at("0000") == doctest::Approx(0.5));
    CHECK(gp.at("1111") == doctest::Approx(0.5));
}

} // TEST_SUITE
