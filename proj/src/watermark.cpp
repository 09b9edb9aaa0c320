// Copyright (c) qcmark contributors.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "qcmark/watermark.hpp"

#include "qcmark/extract.hpp"
#include "qcmark/rng.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace qcmark {

namespace {

using nlohmann::json;

/// position of the first terminal Measure (insertion point for output-end
/// watermarks)
int output_end_index(const Circuit& circuit) {
    for (size_t i = 0; i < circuit.instructions.size(); ++i)
        if (circuit.instructions[i].is_measure()) return static_cast<int>(i);
    return static_cast<int>(circuit.instructions.size());
}

std::vector<int> touched_qubits(const std::vector<Instruction>& block) {
    std::set<int> qs;
    for (const auto& inst : block)
        for (int q : inst.qubits) qs.insert(q);
    return {qs.begin(), qs.end()};
}

WatermarkEntry entry_of(const Instruction& inst) {
    return WatermarkEntry{inst.kind, inst.params, inst.qubits};
}

json entry_to_json(const WatermarkEntry& e) {
    json j;
    j["gate"] = std::string(gate_name(e.gate));
    if (!e.params.empty()) j["params"] = e.params;
    j["qubits"] = e.qubits;
    return j;
}

WatermarkEntry entry_from_json(const json& j) {
    WatermarkEntry e;
    auto kind = gate_kind_from_name(j.at("gate").get<std::string>());
    if (!kind) throw std::invalid_argument("unknown gate in watermark record");
    e.gate = *kind;
    if (j.contains("params")) e.params = j.at("params").get<std::vector<double>>();
    e.qubits = j.at("qubits").get<std::vector<int>>();
    return e;
}

/// Would the two gates cancel or merge if adjacent? (mirrors the optimizer
/// rules)
bool cancels_or_merges(const Instruction& a, const Instruction& b) {
    if (!a.is_gate() || !b.is_gate() || a.qubits != b.qubits) return false;
    if (a.kind == b.kind &&
        (a.kind == GateKind::RX || a.kind == GateKind::RY || a.kind == GateKind::RZ ||
         a.kind == GateKind::U1))
        return true;
    if (a.kind == GateKind::ISWAP || b.kind == GateKind::ISWAP) return false;
    try {
        Instruction inv = inverse_of(a);
        if (inv.kind != b.kind || inv.qubits != b.qubits) return false;
        if (inv.params.size() != b.params.size()) return false;
        for (size_t i = 0; i < inv.params.size(); ++i) {
            double d = std::abs(std::fmod(inv.params[i] - b.params[i], 2 * M_PI));
            if (d > 1e-9 && d < 2 * M_PI - 1e-9) return false;
        }
        return true;
    } catch (const std::exception&) {
        return false;
    }
}

/// Any SWAP-equivalent window that touches the block (including a window
/// formed with the host gates just before the insertion point)?
bool block_forms_swap_window(const std::vector<Instruction>& block,
                             const std::vector<Instruction>& preceding, int num_qubits) {
    Circuit probe(num_qubits);
    const size_t context = preceding.size();
    for (const auto& inst : preceding) probe.add(inst);
    for (const auto& inst : block) probe.add(inst);
    for (const auto& match : detect_swaps(probe))
        if (match.end > context) return true;
    return false;
}

std::vector<Instruction> draw_block(int k, int num_qubits, uint64_t seed,
                                    const std::vector<Instruction>& preceding) {
    // pool: every kind with a single-gate inverse that swap-normalization
    // cannot mistake for routing (no SWAP, no ISWAP)
    std::vector<GateKind> pool;
    for (GateKind kind : all_gate_kinds())
        if (kind != GateKind::SWAP && kind != GateKind::ISWAP &&
            !(qubit_arity(kind) == 2 && num_qubits < 2))
            pool.push_back(kind);

    Rng rng(derive_seed(seed, 0x77617465726dULL));
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<Instruction> block;
        for (int g = 0; g < k; ++g) {
            GateKind kind = pool[rng.uniform_int(pool.size())];
            std::vector<int> qubits;
            if (qubit_arity(kind) == 1) {
                qubits = {static_cast<int>(rng.uniform_int(static_cast<uint64_t>(num_qubits)))};
            } else {
                int a = static_cast<int>(rng.uniform_int(static_cast<uint64_t>(num_qubits)));
                int b = static_cast<int>(rng.uniform_int(static_cast<uint64_t>(num_qubits - 1)));
                if (b >= a) ++b;
                qubits = {a, b};
            }
            std::vector<double> params;
            for (int p = 0; p < param_arity(kind); ++p) params.push_back(rng.uniform() * 2 * M_PI);
            block.push_back(Instruction::gate(kind, std::move(qubits), std::move(params)));
        }
        bool bad = false;
        for (size_t i = 0; i + 1 < block.size() && !bad; ++i)
            bad = cancels_or_merges(block[i], block[i + 1]);
        if (!bad && !preceding.empty())
            bad = cancels_or_merges(preceding.back(), block.front());
        if (!bad) bad = block_forms_swap_window(block, preceding, num_qubits);
        if (!bad) return block;
    }
    throw std::runtime_error("could not draw an optimization-safe watermark block");
}

} // namespace

std::string_view scheme_name(WatermarkScheme s) {
    switch (s) {
    case WatermarkScheme::Rotation: return "rotation";
    case WatermarkScheme::RandomGateSet: return "random";
    case WatermarkScheme::Combined: return "combined";
    }
    return "rotation";
}

std::optional<WatermarkScheme> scheme_from_name(std::string_view name) {
    if (name == "rotation") return WatermarkScheme::Rotation;
    if (name == "random") return WatermarkScheme::RandomGateSet;
    if (name == "combined") return WatermarkScheme::Combined;
    return std::nullopt;
}

std::string WatermarkRecord::to_json_text() const {
    json j;
    j["scheme"] = std::string(scheme_name(scheme));
    auto arr = json::array();
    for (const auto& e : entries) arr.push_back(entry_to_json(e));
    j["entries"] = arr;
    j["rotation_entries"] = rotation_entry_count;
    j["insertion_index"] = insertion_index;
    j["ancilla_added"] = ancilla_added ? json(*ancilla_added) : json(nullptr);
    j["barriers"] = barrier_indices;
    if (seed) j["seed"] = *seed;
    if (!created.empty()) j["created"] = created;
    return j.dump(2);
}

WatermarkRecord WatermarkRecord::from_json_text(const std::string& text) {
    json j = json::parse(text);
    WatermarkRecord rec;
    auto scheme = scheme_from_name(j.at("scheme").get<std::string>());
    if (!scheme) throw std::invalid_argument("unknown watermark scheme");
    rec.scheme = *scheme;
    for (const auto& e : j.at("entries")) rec.entries.push_back(entry_from_json(e));
    rec.rotation_entry_count =
        j.value("rotation_entries",
                rec.scheme == WatermarkScheme::Rotation ? static_cast<int>(rec.entries.size())
                                                        : 0);
    rec.insertion_index = j.value("insertion_index", -1);
    if (j.contains("ancilla_added") && !j.at("ancilla_added").is_null())
        rec.ancilla_added = j.at("ancilla_added").get<int>();
    if (j.contains("barriers")) rec.barrier_indices = j.at("barriers").get<std::vector<int>>();
    if (j.contains("seed")) rec.seed = j.at("seed").get<uint64_t>();
    rec.created = j.value("created", "");
    return rec;
}

std::pair<Circuit, WatermarkRecord> embed_rotation(const Circuit& circuit,
                                                   const RotationSpec& spec) {
    if (!circuit.measures_terminal())
        throw std::invalid_argument("host circuit must have terminal measures only");

    Circuit out = circuit;
    WatermarkRecord record;
    record.scheme = WatermarkScheme::Rotation;

    int target;
    std::optional<std::pair<int, int>> cnot = spec.cnot;
    if (spec.ancillas.empty()) {
        // all qubits functional: append a fresh ancilla and entangle it
        const int fresh = out.num_qubits++;
        record.ancilla_added = fresh;
        if (spec.target && *spec.target != fresh)
            throw std::invalid_argument(
                "rotation target must be the added ancilla when the host has none");
        target = fresh;
        if (cnot && cnot->second != fresh)
            throw std::invalid_argument("CNOT must target the added ancilla");
    } else {
        for (int a : spec.ancillas)
            if (a < 0 || a >= circuit.num_qubits)
                throw std::invalid_argument("ancilla index out of range");
        target = spec.target.value_or(spec.ancillas[0]);
        auto is_ancilla = [&](int q) {
            return std::find(spec.ancillas.begin(), spec.ancillas.end(), q) !=
                   spec.ancillas.end();
        };
        if (!is_ancilla(target))
            throw std::invalid_argument(
                "refusing to watermark a functional qubit (would corrupt the function)");
        if (cnot && (!is_ancilla(cnot->first) || !is_ancilla(cnot->second)))
            throw std::invalid_argument("CNOT watermark qubits must be ancillas");
    }
    if (cnot && cnot->first == cnot->second)
        throw std::invalid_argument("CNOT control and target must differ");

    std::vector<Instruction> gates;
    gates.push_back(Instruction::gate(GateKind::RY, {target}, {spec.theta}));
    if (cnot) gates.push_back(Instruction::gate(GateKind::CX, {cnot->first, cnot->second}));

    const int at = output_end_index(out);
    record.insertion_index = at;
    for (const auto& g : gates) record.entries.push_back(entry_of(g));
    record.rotation_entry_count = static_cast<int>(record.entries.size());

    std::vector<Instruction> tail(gates);
    tail.push_back(Instruction::barrier(touched_qubits(gates)));
    record.barrier_indices = {at + static_cast<int>(gates.size())};
    out.instructions.insert(out.instructions.begin() + at, tail.begin(), tail.end());

    // keep the ancilla observable when the host measures its qubits
    if (record.ancilla_added && circuit.has_measures()) {
        const int clbit = out.num_clbits++;
        out.instructions.push_back(Instruction::measure(*record.ancilla_added, clbit));
    }
    for (const auto& inst : out.instructions) out.validate(inst);
    return {std::move(out), std::move(record)};
}

std::pair<Circuit, WatermarkRecord> embed_random(const Circuit& circuit,
                                                 const RandomSpec& spec) {
    if (!circuit.measures_terminal())
        throw std::invalid_argument("host circuit must have terminal measures only");

    const int limit = output_end_index(circuit);
    int at = spec.insertion_index.value_or(limit / 2);
    if (at < 0 || at > limit)
        throw std::invalid_argument("insertion index must lie in the gate region");

    std::vector<Instruction> preceding;
    for (int i = std::max(0, at - 3); i < at; ++i) {
        const auto& inst = circuit.instructions[static_cast<size_t>(i)];
        if (inst.is_gate()) preceding.push_back(inst);
        else preceding.clear(); // barrier/measure shields the boundary
    }

    std::vector<Instruction> block = spec.block;
    for (const auto& inst : block)
        if (!inst.is_gate())
            throw std::invalid_argument("watermark block must contain gates only");
    if (block.empty()) {
        if (spec.k < 1) throw std::invalid_argument("k must be >= 1");
        block = draw_block(spec.k, circuit.num_qubits, spec.seed.value_or(0), preceding);
    }

    std::vector<Instruction> inverse;
    for (auto it = block.rbegin(); it != block.rend(); ++it) inverse.push_back(inverse_of(*it));

    const auto qubits = touched_qubits(block);
    std::vector<Instruction> segment = block;
    segment.push_back(Instruction::barrier(qubits));
    for (auto& inst : inverse) segment.push_back(std::move(inst));
    segment.push_back(Instruction::barrier(qubits));

    Circuit out = circuit;
    out.instructions.insert(out.instructions.begin() + at, segment.begin(), segment.end());
    for (const auto& inst : out.instructions) out.validate(inst);

    WatermarkRecord record;
    record.scheme = WatermarkScheme::RandomGateSet;
    record.insertion_index = at;
    record.seed = spec.seed;
    const int n = static_cast<int>(block.size());
    record.barrier_indices = {at + n, at + 2 * n + 1};
    for (size_t i = 0; i < segment.size(); ++i)
        if (segment[i].is_gate()) record.entries.push_back(entry_of(segment[i]));
    return {std::move(out), std::move(record)};
}

std::pair<Circuit, WatermarkRecord> embed_combined(const Circuit& circuit,
                                                   const RotationSpec& rotation,
                                                   const RandomSpec& random) {
    auto [with_random, random_record] = embed_random(circuit, random);
    auto [out, rotation_record] = embed_rotation(with_random, rotation);

    WatermarkRecord record;
    record.scheme = WatermarkScheme::Combined;
    record.entries = rotation_record.entries;
    record.rotation_entry_count = rotation_record.rotation_entry_count;
    for (auto& e : random_record.entries) record.entries.push_back(std::move(e));
    record.insertion_index = random_record.insertion_index;
    record.ancilla_added = rotation_record.ancilla_added;
    record.barrier_indices = random_record.barrier_indices;
    for (int b : rotation_record.barrier_indices) record.barrier_indices.push_back(b);
    record.seed = random_record.seed;
    return {std::move(out), std::move(record)};
}

PpaConfig PpaConfig::for_qubits(int n, int k) {
    PpaConfig cfg;
    cfg.n_qubits_incl_ancilla = n;
    cfg.k_random_gates = k;
    if (k >= 1) cfg.placement_counts.push_back(n);         // the 1-qubit random gate
    if (k >= 2) cfg.placement_counts.push_back(n * (n - 1)); // the 2-qubit random gate (ordered)
    for (int g = 2; g < k; ++g) cfg.placement_counts.push_back(n);
    return cfg;
}

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    double result = 1;
    for (int i = 0; i < k; ++i) result = result * (n - i) / (i + 1);
    return std::round(result);
}

double ppa_watermark_count(const PpaConfig& config) {
    if (config.n_qubits_incl_ancilla < 1 || config.k_random_gates < 1 ||
        config.gate_pool_size < 1 || config.rotation_gate_choices < 1 ||
        config.phase_resolution_steps < 1)
        throw std::invalid_argument("every count in the authorship model must be >= 1");
    if (static_cast<int>(config.placement_counts.size()) != config.k_random_gates)
        throw std::invalid_argument("one placement count per random gate is required");
    double n = binomial(config.gate_pool_size, config.k_random_gates);
    for (int c : config.placement_counts) {
        if (c < 1) throw std::invalid_argument("placement counts must be >= 1");
        n *= c;
    }
    n *= config.rotation_gate_choices;
    n *= config.phase_resolution_steps;
    return n;
}

double ppa(const PpaConfig& config) { return 1.0 / ppa_watermark_count(config); }

} // namespace qcmark
