// Copyright (c) qcmark contributors.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "qcmark/metrics.hpp"
#include "qcmark/transpile.hpp"
#include "qcmark/unitary.hpp"
#include "qcmark/watermark.hpp"

#include "helpers.hpp"

#include <doctest.h>

#include <set>

using namespace qcmark;

namespace {

/// host with functional q0, idle ancillas q1 and q2
Circuit small_host() {
    Circuit c(3);
    c.gate(GateKind::H, {0}).gate(GateKind::X, {0});
    return c;
}

double functional_marginal_tvd(const Circuit& base, const Circuit& wm,
                               const std::vector<int>& functional, const std::string& input) {
    std::string padded = input;
    if (wm.num_qubits > base.num_qubits)
        padded = std::string(static_cast<size_t>(wm.num_qubits - base.num_qubits), '0') + input;
    const auto a = marginalize(exact_distribution(base, input), functional);
    const auto b = marginalize(exact_distribution(wm, padded), functional);
    return tvd(a, b);
}

} // namespace

TEST_SUITE("watermark") {

TEST_CASE("rotation watermark appends RY, CNOT, and a shielding barrier") {
    RotationSpec spec;
    spec.ancillas = {1, 2};
    spec.target = 1;
    spec.theta = M_PI;
    spec.cnot = {{2, 1}};
    const auto host = small_host();
    const auto [wm, record] = embed_rotation(host, spec);
    REQUIRE(wm.instructions.size() == host.instructions.size() + 3);
    const auto& ry = wm.instructions[host.instructions.size()];
    const auto& cx = wm.instructions[host.instructions.size() + 1];
    CHECK(ry.kind == GateKind::RY);
    CHECK(ry.qubits == std::vector<int>{1});
    CHECK(ry.params[0] == M_PI);
    CHECK(cx.kind == GateKind::CX);
    CHECK(cx.qubits == std::vector<int>{2, 1});
    CHECK(wm.instructions.back().is_barrier());
    CHECK(record.scheme == WatermarkScheme::Rotation);
    REQUIRE(record.entries.size() == 2);
    CHECK_FALSE(record.ancilla_added.has_value());
}

TEST_CASE("rotation watermark leaves functional marginals untouched, flips the ancilla") {
    RotationSpec spec;
    spec.ancillas = {1, 2};
    spec.target = 1;
    spec.theta = M_PI;
    spec.cnot = {{2, 1}};
    const auto host = small_host();
    const auto [wm, record] = embed_rotation(host, spec);
    for (uint64_t input = 0; input < 8; ++input) {
        // ancillas held in |0> on real inputs; sweep functional bit patterns
        if (input & 0b110) continue;
        const std::string bits = bits_to_string(input, 3);
        CHECK(functional_marginal_tvd(host, wm, {0}, bits) < 1e-12);
        // the ancilla marginal flips completely at theta = pi
        const auto base_anc = marginalize(exact_distribution(host, bits), {1});
        const auto wm_anc = marginalize(exact_distribution(wm, bits), {1});
        CHECK(tvd(base_anc, wm_anc) == doctest::Approx(1.0));
    }
}

TEST_CASE("zero-angle rotation changes nothing observable") {
    RotationSpec spec;
    spec.ancillas = {1, 2};
    spec.target = 1;
    spec.theta = 0;
    spec.cnot = {{2, 1}};
    const auto host = small_host();
    const auto [wm, record] = embed_rotation(host, spec);
    for (const std::string input : {"000", "001"}) {
        const auto a = exact_distribution(host, input);
        const auto b = marginalize(exact_distribution(wm, input), {0, 1, 2});
        CHECK(tvd(a, b) < 1e-12);
    }
}

TEST_CASE("hosts without ancillas get a fresh one") {
    Circuit host(2); // all functional
    host.gate(GateKind::H, {0}).gate(GateKind::CX, {0, 1});
    RotationSpec spec;
    spec.theta = M_PI;
    spec.cnot = {{0, 2}}; // functional control, fresh-ancilla target
    const auto [wm, record] = embed_rotation(host, spec);
    CHECK(wm.num_qubits == 3);
    REQUIRE(record.ancilla_added.has_value());
    CHECK(*record.ancilla_added == 2);
    CHECK(functional_marginal_tvd(host, wm, {0, 1}, "00") < 1e-12);
    CHECK(functional_marginal_tvd(host, wm, {0, 1}, "11") < 1e-12);
}

TEST_CASE("watermarking a functional qubit is refused") {
    RotationSpec spec;
    spec.ancillas = {1, 2};
    spec.target = 0; // functional
    CHECK_THROWS_AS((void)embed_rotation(small_host(), spec), std::invalid_argument);

    RotationSpec bad_cnot;
    bad_cnot.ancillas = {1, 2};
    bad_cnot.target = 1;
    bad_cnot.cnot = {{0, 1}}; // functional control with declared ancillas
    CHECK_THROWS_AS((void)embed_rotation(small_host(), bad_cnot), std::invalid_argument);
}

TEST_CASE("rotation watermark goes in front of terminal measures") {
    Circuit host(3, 3);
    host.gate(GateKind::X, {0}).measure_all();
    RotationSpec spec;
    spec.ancillas = {1, 2};
    spec.target = 1;
    const auto [wm, record] = embed_rotation(host, spec);
    CHECK(record.insertion_index == 1);
    CHECK(wm.instructions[1].kind == GateKind::RY);
    CHECK(wm.measures_terminal());
}

TEST_CASE("an explicit X-plus-CNOT block inserts as gates, barrier, inverses") {
    Circuit host(3);
    for (int i = 0; i < 4; ++i) host.gate(GateKind::H, {i % 3});
    RandomSpec spec;
    spec.block = {Instruction::gate(GateKind::X, {0}), Instruction::gate(GateKind::CX, {2, 1})};
    const auto [wm, record] = embed_random(host, spec);
    // default insertion point: middle of the instruction list
    const int at = record.insertion_index;
    CHECK(at == 2);
    CHECK(wm.instructions[at].kind == GateKind::X);
    CHECK(wm.instructions[at + 1].kind == GateKind::CX);
    CHECK(wm.instructions[at + 1].qubits == std::vector<int>{2, 1});
    CHECK(wm.instructions[at + 2].is_barrier());
    CHECK(wm.instructions[at + 3].kind == GateKind::CX);
    CHECK(wm.instructions[at + 3].qubits == std::vector<int>{2, 1});
    CHECK(wm.instructions[at + 4].kind == GateKind::X);
    CHECK(wm.instructions[at + 5].is_barrier());
    CHECK(record.barrier_indices == std::vector<int>{at + 2, at + 5});
    CHECK(record.entries.size() == 4);
    // the whole circuit is unchanged up to phase
    CHECK(equal_up_to_global_phase(unitary_of(wm), unitary_of(host), 1e-9));
}

TEST_CASE("block plus inverse on an empty host is the identity") {
    Circuit host(3);
    RandomSpec spec;
    spec.block = {Instruction::gate(GateKind::RY, {0}, {1.1}),
                  Instruction::gate(GateKind::CX, {0, 2})};
    const auto [wm, record] = embed_random(host, spec);
    const Matrix u = unitary_of(wm);
    CHECK(equal_up_to_global_phase(u, Matrix::Identity(u.rows(), u.cols()), 1e-10));
}

TEST_CASE("seeded random blocks preserve the host unitary") {
    Rng rng(2);
    auto pool = test::invertible_kinds();
    for (uint64_t seed = 0; seed < 25; ++seed) {
        const int n = 2 + static_cast<int>(rng.uniform_int(3));
        Circuit host = test::random_circuit(rng, n, 6, pool);
        RandomSpec spec;
        spec.seed = seed;
        spec.k = 1 + static_cast<int>(seed % 3);
        const auto [wm, record] = embed_random(host, spec);
        CAPTURE(seed);
        CHECK(equal_up_to_global_phase(unitary_of(wm), unitary_of(host), 1e-9));
        CHECK(static_cast<int>(record.entries.size()) == 2 * spec.k);
    }
}

TEST_CASE("random blocks are deterministic per seed") {
    const auto host = small_host;
    RandomSpec spec;
    spec.seed = 99;
    const auto [a, ra] = embed_random(host(), spec);
    const auto [b, rb] = embed_random(host(), spec);
    CHECK(structurally_equal(a, b));
    spec.seed = 100;
    const auto [c, rc] = embed_random(host(), spec);
    CHECK_FALSE(structurally_equal(a, c));
}

TEST_CASE("blocks with barriers or measures are rejected") {
    RandomSpec spec;
    spec.block = {Instruction::barrier({0})};
    CHECK_THROWS_AS((void)embed_random(small_host(), spec), std::invalid_argument);
    spec.block = {Instruction::measure(0, 0)};
    CHECK_THROWS_AS((void)embed_random(small_host(), spec), std::invalid_argument);
}

TEST_CASE("every embedded random watermark survives optimization intact") {
    // a host with no redundancy of its own, so any shrink would implicate
    // the watermark
    Circuit host(4);
    host.gate(GateKind::H, {0})
        .gate(GateKind::T, {0})
        .gate(GateKind::CX, {0, 1})
        .gate(GateKind::T, {1})
        .gate(GateKind::H, {2})
        .gate(GateKind::CX, {1, 2})
        .gate(GateKind::S, {2})
        .gate(GateKind::X, {3});
    REQUIRE(optimize(host).instructions.size() == host.instructions.size());

    for (uint64_t seed = 0; seed < 30; ++seed) {
        RandomSpec spec;
        spec.seed = seed;
        spec.k = 2;
        const auto [wm, record] = embed_random(host, spec);
        const Circuit opt = optimize(wm);
        CAPTURE(seed);
        CHECK(opt.instructions.size() == wm.instructions.size());
        // the watermark region alone is also a fixpoint
        Circuit region(4);
        const size_t at = static_cast<size_t>(record.insertion_index);
        for (size_t i = at; i < at + record.entries.size() + 2; ++i)
            region.add(wm.instructions[i]);
        CHECK(optimize(region).instructions.size() == region.instructions.size());
    }
}

TEST_CASE("combined watermark carries both parts and stays invisible") {
    Circuit host(4);
    host.gate(GateKind::H, {0}).gate(GateKind::CX, {0, 3}).gate(GateKind::X, {3});
    RotationSpec rot;
    rot.ancillas = {1, 2};
    rot.target = 1;
    rot.theta = M_PI;
    rot.cnot = {{2, 1}};
    RandomSpec rnd;
    rnd.seed = 5;
    const auto [wm, record] = embed_combined(host, rot, rnd);
    CHECK(record.scheme == WatermarkScheme::Combined);
    CHECK(record.entries.size() == 2 + 4); // RY + CX, block of 2 + inverses
    // functional marginals unchanged for every basis input of the
    // functional qubits
    for (uint64_t f = 0; f < 4; ++f) {
        const uint64_t input = ((f & 2) << 2) | (f & 1); // bits on q0 and q3
        CHECK(functional_marginal_tvd(host, wm, {0, 3}, bits_to_string(input, 4)) < 1e-12);
    }
}

TEST_CASE("records serialize and parse") {
    RotationSpec rot;
    rot.ancillas = {1, 2};
    rot.target = 1;
    rot.cnot = {{2, 1}};
    RandomSpec rnd;
    rnd.seed = 42;
    const auto [wm, record] = embed_combined(small_host(), rot, rnd);
    const std::string text = record.to_json_text();
    const auto parsed = WatermarkRecord::from_json_text(text);
    CHECK(parsed.scheme == record.scheme);
    REQUIRE(parsed.entries.size() == record.entries.size());
    for (size_t i = 0; i < parsed.entries.size(); ++i) {
        CHECK(parsed.entries[i].gate == record.entries[i].gate);
        CHECK(parsed.entries[i].qubits == record.entries[i].qubits);
        CHECK(parsed.entries[i].params == record.entries[i].params);
    }
    CHECK(parsed.insertion_index == record.insertion_index);
    CHECK(parsed.seed == record.seed);
}

TEST_CASE("the authorship probability reproduces the worked example") {
    PpaConfig cfg = PpaConfig::for_qubits(4, 2);
    CHECK(cfg.placement_counts == std::vector<int>{4, 12});
    CHECK(binomial(22, 2) == 231);
    CHECK(ppa_watermark_count(cfg) == 665280); // 231 * 4 * 12 * 10 * 6
    CHECK(ppa(cfg) == doctest::Approx(1.5032e-6).epsilon(1e-3));
}

TEST_CASE("a single possible watermark has probability one") {
    PpaConfig cfg;
    cfg.n_qubits_incl_ancilla = 1;
    cfg.k_random_gates = 1;
    cfg.gate_pool_size = 1;
    cfg.rotation_gate_choices = 1;
    cfg.phase_resolution_steps = 1;
    cfg.placement_counts = {1};
    CHECK(ppa(cfg) == 1.0);
}

TEST_CASE("watermark count matches exhaustive enumeration") {
    // oracle: enumerate every distinct (gate pair, placements, rotation,
    // phase) tuple with explicit loops
    const int pool = 22, n = 3, rotations = 10, phases = 6;
    const int p1 = n, p2 = n * (n - 1);
    long long enumerated = 0;
    for (int g1 = 0; g1 < pool; ++g1)
        for (int g2 = g1 + 1; g2 < pool; ++g2)
            for (int a = 0; a < p1; ++a)
                for (int b = 0; b < p2; ++b)
                    for (int r = 0; r < rotations; ++r)
                        for (int ph = 0; ph < phases; ++ph) ++enumerated;
    PpaConfig cfg = PpaConfig::for_qubits(n, 2);
    CHECK(static_cast<long long>(ppa_watermark_count(cfg)) == enumerated);

    // and the single-gate variant
    long long single = 0;
    for (int g = 0; g < pool; ++g)
        for (int a = 0; a < n; ++a)
            for (int r = 0; r < rotations; ++r)
                for (int ph = 0; ph < phases; ++ph) ++single;
    PpaConfig cfg1 = PpaConfig::for_qubits(n, 1);
    CHECK(static_cast<long long>(ppa_watermark_count(cfg1)) == single);
}

TEST_CASE("ppa decreases strictly as any count grows") {
    const PpaConfig base = PpaConfig::for_qubits(4, 2);
    const double p0 = ppa(base);
    PpaConfig more_gates = PpaConfig::for_qubits(4, 3);
    CHECK(ppa(more_gates) < p0);
    PpaConfig more_phases = base;
    more_phases.phase_resolution_steps += 6;
    CHECK(ppa(more_phases) < p0);
    PpaConfig more_qubits = PpaConfig::for_qubits(5, 2);
    CHECK(ppa(more_qubits) < p0);
    PpaConfig more_rotations = base;
    more_rotations.rotation_gate_choices += 1;
    CHECK(ppa(more_rotations) < p0);
}

TEST_CASE("invalid ppa configs are rejected") {
    PpaConfig cfg = PpaConfig::for_qubits(4, 2);
    cfg.phase_resolution_steps = 0;
    CHECK_THROWS_AS((void)ppa(cfg), std::invalid_argument);
    PpaConfig bad_placement = PpaConfig::for_qubits(4, 2);
    bad_placement.placement_counts = {4};
    CHECK_THROWS_AS((void)ppa(bad_placement), std::invalid_argument);
}

} // TEST_SUITE
