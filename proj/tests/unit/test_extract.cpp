// Copyright (c) qcmark contributors.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "qcmark/extract.hpp"
#include "qcmark/metrics.hpp"
#include "qcmark/unitary.hpp"

#include "helpers.hpp"

#include <doctest.h>

using namespace qcmark;

namespace {

/// Fig.-style baseline: rz(pi/2) q0, rz(pi/4) q1, rz(pi/4) q2, cx(1,0)
Circuit figure_baseline() {
    Circuit c(3);
    c.gate(GateKind::RZ, {0}, {M_PI / 2})
        .gate(GateKind::RZ, {1}, {M_PI / 4})
        .gate(GateKind::RZ, {2}, {M_PI / 4})
        .gate(GateKind::CX, {1, 0});
    return c;
}

bool distributions_equal(const Distribution& a, const Distribution& b, double tol = 1e-12) {
    const auto pa = a.probabilities();
    const auto pb = b.probabilities();
    for (const auto& [k, p] : pa)
        if (std::abs(p - (pb.count(k) ? pb.at(k) : 0.0)) > tol) return false;
    for (const auto& [k, p] : pb)
        if (!pa.count(k) && p > tol) return false;
    return true;
}

} // namespace

TEST_SUITE("extract") {

TEST_CASE("three alternating CNOTs are one swap") {
    Circuit c(2);
    c.gate(GateKind::CX, {0, 1}).gate(GateKind::CX, {1, 0}).gate(GateKind::CX, {0, 1});
    const auto matches = detect_swaps(c);
    REQUIRE(matches.size() == 1);
    CHECK(matches[0].kind == SwapMatchKind::ThreeCnot);
    CHECK(matches[0].qubit_pair == std::pair<int, int>{0, 1});
    CHECK(matches[0].begin == 0);
    CHECK(matches[0].end == 3);
    CHECK(matches[0].exact);
    // oracle: the composed window is SWAP exactly
    CHECK(max_abs_diff(unitary_of(c), gate_matrix(GateKind::SWAP)) < 1e-12);
}

TEST_CASE("the RXX RYY RZZ triple at pi/2 is a swap up to phase") {
    Circuit c(2);
    c.gate(GateKind::RXX, {0, 1}, {M_PI / 2})
        .gate(GateKind::RYY, {0, 1}, {M_PI / 2})
        .gate(GateKind::RZZ, {0, 1}, {M_PI / 2});
    const auto matches = detect_swaps(c);
    REQUIRE(matches.size() == 1);
    CHECK(matches[0].kind == SwapMatchKind::RxxRyyRzz);
    // oracle: composed unitary is exp(-i pi/4) * SWAP, i.e.
    // SWAP = exp(i pi/4) * (RXX RYY RZZ)(pi/2)
    const Matrix u = unitary_of(c);
    const Complex phase = std::exp(Complex(0, -M_PI / 4));
    CHECK(max_abs_diff(u, phase * gate_matrix(GateKind::SWAP)) < 1e-10);
    // order does not matter
    Circuit reordered(2);
    reordered.gate(GateKind::RZZ, {0, 1}, {M_PI / 2})
        .gate(GateKind::RXX, {0, 1}, {M_PI / 2})
        .gate(GateKind::RYY, {0, 1}, {M_PI / 2});
    REQUIRE(detect_swaps(reordered).size() == 1);
    CHECK(detect_swaps(reordered)[0].kind == SwapMatchKind::RxxRyyRzz);
}

TEST_CASE("a direct SWAP gate is detected") {
    Circuit c(3);
    c.gate(GateKind::H, {0}).gate(GateKind::SWAP, {1, 2});
    const auto matches = detect_swaps(c);
    REQUIRE(matches.size() == 1);
    CHECK(matches[0].kind == SwapMatchKind::Direct);
    CHECK(matches[0].qubit_pair == std::pair<int, int>{1, 2});
}

TEST_CASE("swap-free circuits give no matches") {
    Circuit c(3);
    c.gate(GateKind::H, {0}).gate(GateKind::CX, {0, 1}).gate(GateKind::CX, {1, 2});
    CHECK(detect_swaps(c).empty());
}

TEST_CASE("the swap-name predicate covers custom names but not iswap") {
    CHECK(is_swap_name("swap"));
    CHECK(is_swap_name("SwapGate"));
    CHECK(is_swap_name("my_swap_v2"));
    CHECK_FALSE(is_swap_name("iswap"));
    CHECK_FALSE(is_swap_name("cx"));
}

TEST_CASE("iSWAP followed by S gates matches syntactically but is not exact") {
    Circuit c(2);
    c.gate(GateKind::ISWAP, {0, 1}).gate(GateKind::S, {0});
    const auto matches = detect_swaps(c);
    REQUIRE(matches.size() == 1);
    CHECK(matches[0].kind == SwapMatchKind::IswapS);
    CHECK_FALSE(matches[0].exact);
    // oracle: a single S does not turn iSWAP into SWAP
    CHECK_FALSE(equal_up_to_global_phase(unitary_of(c), gate_matrix(GateKind::SWAP), 1e-8));
    // the pattern is preserved by remove_swaps (it is not a swap)
    const auto [normalized, perm] = remove_swaps(c);
    CHECK(normalized.instructions.size() == 2);
    CHECK(perm.is_identity());
}

TEST_CASE("a generic window that composes to SWAP is found as unitary-equivalent") {
    // SWAP = CZ * (Sdg x Sdg) * iSWAP (applied left to right)
    Circuit c(2);
    c.gate(GateKind::ISWAP, {0, 1})
        .gate(GateKind::Sdg, {0})
        .gate(GateKind::Sdg, {1})
        .gate(GateKind::CZ, {0, 1});
    REQUIRE(max_abs_diff(unitary_of(c), gate_matrix(GateKind::SWAP)) < 1e-12);
    const auto matches = detect_swaps(c);
    REQUIRE(matches.size() == 1);
    CHECK(matches[0].kind == SwapMatchKind::UnitaryEquivalent);
    CHECK(matches[0].end - matches[0].begin == 4);
}

TEST_CASE("barriers break match windows") {
    Circuit c(2);
    c.gate(GateKind::CX, {0, 1}).barrier({0, 1}).gate(GateKind::CX, {1, 0}).gate(GateKind::CX,
                                                                                 {0, 1});
    CHECK(detect_swaps(c).empty());
}

TEST_CASE("every exact match is a swap under the independent embedding oracle") {
    Rng rng(71);
    auto pool = test::invertible_kinds();
    pool.push_back(GateKind::ISWAP);
    const Matrix swap = gate_matrix(GateKind::SWAP);
    int matches_seen = 0;
    for (int rep = 0; rep < 30; ++rep) {
        Circuit c = test::random_circuit(rng, 3, 8, pool);
        // plant swap structure at random spots
        Circuit planted(3);
        for (size_t i = 0; i < c.instructions.size(); ++i) {
            planted.add(c.instructions[i]);
            if (i == 2) planted.gate(GateKind::SWAP, {0, 2});
            if (i == 5)
                planted.gate(GateKind::CX, {0, 1})
                    .gate(GateKind::CX, {1, 0})
                    .gate(GateKind::CX, {0, 1});
        }
        for (const auto& match : detect_swaps(planted)) {
            if (!match.exact) continue;
            ++matches_seen;
            // oracle: embed the window's gates with the naive kron path
            Circuit window(3);
            for (size_t i = match.begin; i < match.end; ++i)
                window.add(planted.instructions[i]);
            const Matrix window_u = test::naive_unitary(window);
            Circuit swap_only(3);
            swap_only.gate(GateKind::SWAP,
                           {match.qubit_pair.first, match.qubit_pair.second});
            CHECK(equal_up_to_global_phase(window_u, test::naive_unitary(swap_only), 1e-8));
        }
    }
    CHECK(matches_seen >= 60); // both planted swaps caught in every rep
}

TEST_CASE("removing a routed swap restores the original structure") {
    Circuit c(3);
    c.gate(GateKind::H, {0}).gate(GateKind::CX, {0, 2}).gate(GateKind::RY, {1}, {0.7});
    const CouplingMap line3(3, {{0, 1}, {1, 2}});
    for (bool expand : {false, true}) {
        const auto routed = route(c, line3, {}, expand);
        const auto [normalized, perm] = remove_swaps(routed.circuit);
        CAPTURE(expand);
        CHECK(structurally_equal(normalized, c));
    }
}

TEST_CASE("swap-free circuits come back unchanged with the identity relabeling") {
    Circuit c(2);
    c.gate(GateKind::H, {0}).gate(GateKind::CX, {0, 1});
    const auto [normalized, perm] = remove_swaps(c);
    CHECK(structurally_equal(normalized, c));
    CHECK(perm.is_identity());
}

TEST_CASE("nested three-CNOT swaps are both undone") {
    Circuit c(3);
    c.gate(GateKind::CX, {0, 1}).gate(GateKind::CX, {1, 0}).gate(GateKind::CX, {0, 1});
    c.gate(GateKind::CX, {1, 2}).gate(GateKind::CX, {2, 1}).gate(GateKind::CX, {1, 2});
    c.gate(GateKind::X, {0});
    const auto [normalized, perm] = remove_swaps(c);
    REQUIRE(normalized.instructions.size() == 1);
    // content of wire 0 after swap(0,1) then swap(1,2) came from wire 1
    CHECK(normalized.instructions[0].qubits == std::vector<int>{1});
    // oracle: the normalized circuit equals the input up to the returned
    // permutation; check by matrix equivalence
    Circuit undo(3);
    undo.gate(GateKind::X, {0});
    Circuit permuted(3);
    permuted.gate(GateKind::SWAP, {0, 1}).gate(GateKind::SWAP, {1, 2}).gate(GateKind::X, {0});
    CHECK(equal_up_to_global_phase(unitary_of(permuted),
                                   unitary_of(c), 1e-10));
}

TEST_CASE("remove_swaps preserves measured distributions") {
    Rng rng(41);
    auto pool = test::invertible_kinds();
    for (int rep = 0; rep < 12; ++rep) {
        Circuit c = test::random_circuit(rng, 4, 10, pool);
        // sprinkle literal swaps and swap triples
        Circuit with_swaps(4, 4);
        for (size_t i = 0; i < c.instructions.size(); ++i) {
            with_swaps.add(c.instructions[i]);
            if (i == 3) with_swaps.gate(GateKind::SWAP, {0, 2});
            if (i == 6) {
                with_swaps.gate(GateKind::CX, {1, 3})
                    .gate(GateKind::CX, {3, 1})
                    .gate(GateKind::CX, {1, 3});
            }
        }
        with_swaps.measure_all();
        const auto [normalized, perm] = remove_swaps(with_swaps);
        const std::string input = bits_to_string(rng.uniform_int(16), 4);
        CHECK(distributions_equal(exact_distribution(with_swaps, input),
                                  exact_distribution(normalized, input)));
    }
}

TEST_CASE("gate multisets count signatures") {
    const Circuit base = figure_baseline();
    const auto counts = count_gates(base);
    CHECK(counts.size() == 4);
    CHECK(counts.at(signature_of(Instruction::gate(GateKind::RZ, {0}, {M_PI / 2}))) == 1);
    CHECK(counts.at(signature_of(Instruction::gate(GateKind::RZ, {1}, {M_PI / 4}))) == 1);
    CHECK(counts.at(signature_of(Instruction::gate(GateKind::RZ, {2}, {M_PI / 4}))) == 1);
    CHECK(counts.at(signature_of(Instruction::gate(GateKind::CX, {1, 0}))) == 1);
    CHECK(count_gates(Circuit(2)).empty());
}

TEST_CASE("multisets ignore instruction order") {
    Circuit a(2);
    a.gate(GateKind::H, {0}).gate(GateKind::X, {1}).gate(GateKind::CX, {0, 1});
    Circuit b(2);
    b.gate(GateKind::CX, {0, 1}).gate(GateKind::X, {1}).gate(GateKind::H, {0});
    CHECK(count_gates(a) == count_gates(b));
}

TEST_CASE("signatures canonicalize parameters mod 2pi at 1e-6") {
    const auto a = signature_of(Instruction::gate(GateKind::RZ, {0}, {M_PI / 4}));
    const auto b = signature_of(Instruction::gate(GateKind::RZ, {0}, {M_PI / 4 + 2 * M_PI}));
    const auto c = signature_of(Instruction::gate(GateKind::RZ, {0}, {M_PI / 4 + 1e-9}));
    CHECK(a == b);
    CHECK(a == c);
    const auto far = signature_of(Instruction::gate(GateKind::RZ, {0}, {M_PI / 4 + 1e-4}));
    CHECK(a != far);
    // wrap-around at the 2pi boundary
    const auto low = signature_of(Instruction::gate(GateKind::RZ, {0}, {1e-9}));
    const auto high = signature_of(Instruction::gate(GateKind::RZ, {0}, {2 * M_PI - 1e-9}));
    CHECK(low == high);
}

TEST_CASE("retrieving a circuit against itself finds nothing") {
    const Circuit c = figure_baseline();
    const auto finding = retrieve(c, c);
    CHECK(finding.empty());
    CHECK(finding.unmatched_base_surplus.empty());
}

TEST_CASE("the worked example finds watermark gates at sequence 5, 6, 7") {
    Circuit base(3);
    base.gate(GateKind::RZ, {0}, {M_PI / 2})
        .gate(GateKind::RZ, {1}, {M_PI / 4})
        .gate(GateKind::RZ, {2}, {M_PI / 4})
        .gate(GateKind::H, {1});
    Circuit suspect = base;
    suspect.gate(GateKind::CX, {1, 0})
        .gate(GateKind::RZ, {0}, {M_PI / 4})
        .gate(GateKind::SX, {0});
    const auto finding = retrieve(base, suspect);
    REQUIRE(finding.gates.size() == 3);
    CHECK(finding.gates[0].sequence_num == 5);
    CHECK(finding.gates[1].sequence_num == 6);
    CHECK(finding.gates[2].sequence_num == 7);
    CHECK(finding.gates[0].signature.name == "cx");
    CHECK(finding.gates[0].signature.qubits == std::vector<int>{1, 0});
    CHECK(finding.gates[1].signature.name == "rz");
    CHECK(finding.gates[2].signature.name == "sx");
    CHECK(finding.unmatched_base_surplus.empty());
}

TEST_CASE("a duplicated signature is consumed at its first occurrence") {
    // when the base already holds an identical gate, the single pass flags
    // the earliest instance; the count diff is still one
    const Circuit base = figure_baseline(); // contains cx(1,0) at position 4
    Circuit suspect = base;
    suspect.gate(GateKind::CX, {1, 0});
    const auto finding = retrieve(base, suspect);
    REQUIRE(finding.gates.size() == 1);
    CHECK(finding.gates[0].sequence_num == 4);
    CHECK(finding.gates[0].signature.name == "cx");
}

TEST_CASE("base surplus is reported separately") {
    Circuit base = figure_baseline();
    base.gate(GateKind::H, {2});
    const Circuit suspect = figure_baseline();
    const auto finding = retrieve(base, suspect);
    CHECK(finding.gates.empty());
    REQUIRE(finding.unmatched_base_surplus.size() == 1);
    CHECK(finding.unmatched_base_surplus[0].name == "h");
}

TEST_CASE("findings serialize and parse") {
    const Circuit base = figure_baseline();
    Circuit suspect = base;
    suspect.gate(GateKind::CX, {1, 0}).gate(GateKind::RZ, {0}, {M_PI / 4});
    const auto finding = retrieve(base, suspect);
    const auto parsed = WatermarkFinding::from_json_text(finding.to_json_text());
    REQUIRE(parsed.gates.size() == finding.gates.size());
    for (size_t i = 0; i < parsed.gates.size(); ++i) {
        CHECK(parsed.gates[i].sequence_num == finding.gates[i].sequence_num);
        CHECK(parsed.gates[i].signature == finding.gates[i].signature);
    }
}

TEST_CASE("full round-trip across different devices confirms the record") {
    Circuit host(4);
    host.gate(GateKind::H, {0})
        .gate(GateKind::CX, {0, 3})
        .gate(GateKind::T, {3})
        .gate(GateKind::CX, {0, 3})
        .gate(GateKind::X, {0});
    RotationSpec rot;
    rot.ancillas = {1, 2};
    rot.target = 1;
    rot.theta = M_PI;
    rot.cnot = {{2, 1}};
    for (uint64_t seed = 0; seed < 20; ++seed) {
        RandomSpec rnd;
        rnd.seed = seed;
        const auto [wm, record] = embed_combined(host, rot, rnd);
        const auto base_routed = route(host, CouplingMap::preset("line5"), {}, seed % 2 == 0);
        const auto wm_routed = route(wm, CouplingMap::preset("ring7"), {}, seed % 2 == 1);
        const auto finding = retrieve(base_routed.circuit, wm_routed.circuit);
        const auto result = verify(finding, record);
        CAPTURE(seed);
        CHECK(result.status == VerifyStatus::Confirmed);
    }
}

TEST_CASE("verification statuses") {
    Circuit host(3);
    host.gate(GateKind::H, {0}).gate(GateKind::T, {0}).gate(GateKind::CX, {0, 1});
    RandomSpec rnd;
    rnd.seed = 17;
    const auto [wm, record] = embed_random(host, rnd);

    SUBCASE("confirmed on the honest suspect") {
        const auto finding = retrieve(host, wm);
        CHECK(verify(finding, record).status == VerifyStatus::Confirmed);
    }
    SUBCASE("absent against an empty finding") {
        const auto finding = retrieve(host, host);
        const auto result = verify(finding, record);
        CHECK(result.status == VerifyStatus::Absent);
        CHECK(result.missing.size() == record.entries.size());
    }
    SUBCASE("partial when a watermark gate was deleted") {
        Circuit tampered = wm;
        // remove the first watermark gate
        tampered.instructions.erase(tampered.instructions.begin() + record.insertion_index);
        const auto finding = retrieve(host, tampered);
        const auto result = verify(finding, record);
        CHECK(result.status == VerifyStatus::Partial);
        CHECK(result.missing.size() >= 1);
        CHECK(result.missing.size() < record.entries.size());
    }
}

TEST_CASE("verify matches qubits modulo a consistent relabeling") {
    WatermarkRecord record;
    record.scheme = WatermarkScheme::RandomGateSet;
    record.entries = {WatermarkEntry{GateKind::CX, {}, {0, 1}},
                      WatermarkEntry{GateKind::X, {}, {0}}};
    WatermarkFinding finding;
    finding.gates = {{4, signature_of(Instruction::gate(GateKind::CX, {2, 0}))},
                     {7, signature_of(Instruction::gate(GateKind::X, {2}))}};
    CHECK(verify(finding, record).status == VerifyStatus::Confirmed);

    // an inconsistent relabeling is rejected: X sits on a qubit that cannot
    // be 0 under the CX match
    WatermarkFinding bad;
    bad.gates = {{4, signature_of(Instruction::gate(GateKind::CX, {2, 0}))},
                 {7, signature_of(Instruction::gate(GateKind::X, {0}))}};
    CHECK(verify(bad, record).status == VerifyStatus::Partial);
}

TEST_CASE("retrieve across basis sets needs the common-basis option") {
    Circuit base(2);
    base.gate(GateKind::H, {0}).gate(GateKind::CX, {0, 1});
    Circuit suspect = base;
    suspect.gate(GateKind::X, {0});
    // suspect transpiled to the ibm basis, base left extended
    const Circuit suspect_ibm = decompose_to_basis(suspect, BasisSet::preset("ibm"));
    RetrieveOptions opts;
    opts.common_basis = BasisSet::preset("ibm");
    const auto finding = retrieve(base, suspect_ibm, opts);
    REQUIRE(finding.gates.size() == 1);
    CHECK(finding.gates[0].signature.name == "u3"); // X in the ibm basis
    CHECK(finding.unmatched_base_surplus.empty());
}

TEST_CASE("verify matches original record entries against rebased findings") {
    // hosts transpiled to different native sets: rebase both sides to ibm,
    // then decompose record entries the same way inside verify
    Circuit host(4);
    host.gate(GateKind::H, {0}).gate(GateKind::T, {3}).gate(GateKind::CX, {0, 3});
    RandomSpec rnd;
    rnd.seed = 33;
    const auto [wm, record] = embed_random(host, rnd);
    const auto base_routed = route(decompose_to_basis(host, BasisSet::preset("ibm")),
                                   CouplingMap::preset("line5"));
    const auto wm_routed = route(decompose_to_basis(wm, BasisSet::preset("ibm")),
                                 CouplingMap::preset("ring7"), {}, true);
    RetrieveOptions opts;
    opts.common_basis = BasisSet::preset("ibm");
    const auto finding = retrieve(base_routed.circuit, wm_routed.circuit, opts);
    CHECK(verify(finding, record, BasisSet::preset("ibm")).status ==
          VerifyStatus::Confirmed);
    // without the basis hint the raw gate names cannot match
    CHECK(verify(finding, record).status != VerifyStatus::Confirmed);
}

TEST_CASE("a self-cancelling pair next to a routed swap is not swallowed") {
    // [y, y, swap] composes to SWAP; only the swap core may be removed
    Circuit c(3);
    c.gate(GateKind::Y, {0}).gate(GateKind::Y, {0}).gate(GateKind::SWAP, {0, 1});
    c.gate(GateKind::X, {1});
    const auto matches = detect_swaps(c);
    REQUIRE(matches.size() == 1);
    CHECK(matches[0].begin == 2);
    CHECK(matches[0].end == 3);
    CHECK(matches[0].kind == SwapMatchKind::Direct);
    const auto [normalized, perm] = remove_swaps(c);
    REQUIRE(normalized.instructions.size() == 3);
    CHECK(normalized.instructions[0].kind == GateKind::Y);
    CHECK(normalized.instructions[1].kind == GateKind::Y);
    CHECK(normalized.instructions[2].qubits == std::vector<int>{0}); // x relabeled

    // same for a lone identity next to the swap
    Circuit d(2);
    d.gate(GateKind::I, {0}).gate(GateKind::SWAP, {0, 1});
    const auto dm = detect_swaps(d);
    REQUIRE(dm.size() == 1);
    CHECK(dm[0].begin == 1);
    CHECK(remove_swaps(d).first.instructions.size() == 1);
}

TEST_CASE("hosts with their own swap gates still verify (per-segment relabeling)") {
    // the host swap is removed on both sides; watermark gates after it are
    // relabeled while gates before it are not, so the rotation and block
    // segments see different extraction permutations
    Circuit host(3);
    host.gate(GateKind::H, {0})
        .gate(GateKind::T, {1})
        .gate(GateKind::CX, {0, 2})
        .gate(GateKind::SWAP, {0, 1})
        .gate(GateKind::S, {1})
        .gate(GateKind::CX, {1, 2});
    RotationSpec rot; // fresh ancilla, entangled from functional q1
    rot.theta = M_PI;
    rot.cnot = {{1, 3}};
    for (uint64_t seed = 0; seed < 10; ++seed) {
        RandomSpec rnd;
        rnd.seed = seed;
        rnd.k = 2;
        // block lands mid-circuit (before the host swap for low indices)
        rnd.insertion_index = 2;
        const auto [wm, record] = embed_combined(host, rot, rnd);
        const auto base_routed = route(host, CouplingMap::preset("t5"), {}, seed % 2 == 0);
        const auto wm_routed = route(wm, CouplingMap::preset("ring7"), {}, seed % 2 == 1);
        const auto finding = retrieve(base_routed.circuit, wm_routed.circuit);
        CAPTURE(seed);
        CHECK(verify(finding, record).status == VerifyStatus::Confirmed);
    }
}

TEST_CASE("two stacked watermarks are both extractable") {
    Circuit host(4);
    host.gate(GateKind::H, {0}).gate(GateKind::T, {1}).gate(GateKind::CX, {0, 3});
    RandomSpec first;
    first.seed = 100;
    const auto [wm1, record1] = embed_random(host, first);
    RandomSpec second;
    second.seed = 200;
    const auto [wm2, record2] = embed_random(wm1, second);
    const auto finding = retrieve(host, wm2);
    CHECK(verify(finding, record1).status == VerifyStatus::Confirmed);
    CHECK(verify(finding, record2).status == VerifyStatus::Confirmed);
}

} // TEST_SUITE
