// Copyright (c) qcmark contributors.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "qcmark/extract.hpp"

#include "qcmark/unitary.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <stdexcept>

namespace qcmark {

namespace {

using nlohmann::json;

constexpr double kSwapUnitaryTol = 1e-8;
constexpr size_t kMaxWindow = 4;

const Matrix& swap_matrix() {
    static const Matrix m = gate_matrix(GateKind::SWAP);
    return m;
}

/// Compose a window of gates confined to a qubit pair as a 4x4 unitary with
/// `low` as the low-order bit.
Matrix window_unitary(const Circuit& circuit, size_t begin, size_t end, int low) {
    Circuit local(2);
    for (size_t i = begin; i < end; ++i) {
        const auto& inst = circuit.instructions[i];
        std::vector<int> mapped;
        mapped.reserve(inst.qubits.size());
        for (int q : inst.qubits) mapped.push_back(q == low ? 0 : 1);
        local.gate(inst.kind, std::move(mapped), inst.params);
    }
    return unitary_of(local);
}

/// The qubit pair spanned by instructions [begin, end) when they are all
/// gates on at most two distinct qubits (with at least one 2-qubit gate).
std::optional<std::pair<int, int>> window_pair(const Circuit& circuit, size_t begin, size_t end) {
    std::set<int> support;
    bool has_two_qubit = false;
    for (size_t i = begin; i < end; ++i) {
        const auto& inst = circuit.instructions[i];
        if (!inst.is_gate()) return std::nullopt;
        has_two_qubit = has_two_qubit || inst.qubits.size() == 2;
        for (int q : inst.qubits) support.insert(q);
        if (support.size() > 2) return std::nullopt;
    }
    if (!has_two_qubit || support.size() != 2) return std::nullopt;
    auto it = support.begin();
    int a = *it++;
    int b = *it;
    return std::make_pair(a, b);
}

bool is_three_cnot_pattern(const Circuit& circuit, size_t begin) {
    if (begin + 3 > circuit.instructions.size()) return false;
    const auto& i0 = circuit.instructions[begin];
    const auto& i1 = circuit.instructions[begin + 1];
    const auto& i2 = circuit.instructions[begin + 2];
    if (!i0.is_gate() || !i1.is_gate() || !i2.is_gate()) return false;
    if (i0.kind != GateKind::CX || i1.kind != GateKind::CX || i2.kind != GateKind::CX)
        return false;
    return i1.qubits == std::vector<int>{i0.qubits[1], i0.qubits[0]} && i2.qubits == i0.qubits;
}

bool is_rxx_ryy_rzz_pattern(const Circuit& circuit, size_t begin) {
    if (begin + 3 > circuit.instructions.size()) return false;
    std::set<GateKind> kinds;
    std::set<int> support;
    for (size_t i = begin; i < begin + 3; ++i) {
        const auto& inst = circuit.instructions[i];
        if (!inst.is_gate()) return false;
        if (inst.kind != GateKind::RXX && inst.kind != GateKind::RYY &&
            inst.kind != GateKind::RZZ)
            return false;
        const double d = std::abs(wrap_angle(inst.params[0]) - M_PI / 2);
        if (d > 1e-9) return false;
        kinds.insert(inst.kind);
        for (int q : inst.qubits) support.insert(q);
    }
    return kinds.size() == 3 && support.size() == 2;
}

SwapMatchKind classify(const Circuit& circuit, size_t begin, size_t end) {
    if (end - begin == 1) {
        const auto& inst = circuit.instructions[begin];
        if (inst.kind == GateKind::SWAP) return SwapMatchKind::Direct;
        if (is_swap_name(gate_name(inst.kind))) return SwapMatchKind::Named;
        return SwapMatchKind::UnitaryEquivalent;
    }
    if (end - begin == 3) {
        if (is_three_cnot_pattern(circuit, begin)) return SwapMatchKind::ThreeCnot;
        if (is_rxx_ryy_rzz_pattern(circuit, begin)) return SwapMatchKind::RxxRyyRzz;
    }
    return SwapMatchKind::UnitaryEquivalent;
}

double canonical_param(double value) {
    double wrapped = wrap_angle(value);
    long long micro = std::llround(wrapped * 1e6);
    const long long full_turn = std::llround(2 * M_PI * 1e6); // 6283185
    if (micro >= full_turn) micro = 0;
    return static_cast<double>(micro) * 1e-6;
}

} // namespace

std::string_view swap_match_kind_name(SwapMatchKind kind) {
    switch (kind) {
    case SwapMatchKind::Direct: return "direct";
    case SwapMatchKind::Named: return "named";
    case SwapMatchKind::UnitaryEquivalent: return "unitary_equivalent";
    case SwapMatchKind::ThreeCnot: return "three_cnot";
    case SwapMatchKind::IswapS: return "iswap_s";
    case SwapMatchKind::RxxRyyRzz: return "rxx_ryy_rzz";
    }
    return "unitary_equivalent";
}

bool is_swap_name(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return lower.find("swap") != std::string::npos && lower != "iswap";
}

std::vector<SwapMatch> detect_swaps(const Circuit& circuit) {
    std::vector<SwapMatch> matches;
    const size_t n = circuit.instructions.size();
    size_t i = 0;
    while (i < n) {
        const auto& inst = circuit.instructions[i];
        if (!inst.is_gate()) {
            ++i;
            continue;
        }
        std::optional<SwapMatch> found;
        const size_t max_len = std::min(kMaxWindow, n - i);
        for (size_t len = max_len; len >= 1 && !found; --len) {
            auto pair = window_pair(circuit, i, i + len);
            if (!pair) continue;
            Matrix u = window_unitary(circuit, i, i + len, pair->first);
            if (equal_up_to_global_phase(u, swap_matrix(), kSwapUnitaryTol))
                found = SwapMatch{classify(circuit, i, i + len), i, i + len, *pair, true};
        }
        if (found) {
            // shrink to the smallest SWAP-equivalent sub-window (earliest
            // start on ties) so bystander gates around the swap core — an
            // identity or a self-cancelling pair next to a routed SWAP —
            // are not swallowed into the span; they stay in the circuit
            bool shrunk = false;
            for (size_t len = 1; len < found->end - found->begin && !shrunk; ++len) {
                for (size_t b = found->begin; b + len <= found->end && !shrunk; ++b) {
                    auto pair = window_pair(circuit, b, b + len);
                    if (!pair) continue;
                    Matrix u = window_unitary(circuit, b, b + len, pair->first);
                    if (equal_up_to_global_phase(u, swap_matrix(), kSwapUnitaryTol)) {
                        found->begin = b;
                        found->end = b + len;
                        found->qubit_pair = *pair;
                        shrunk = true;
                    }
                }
            }
            found->kind = classify(circuit, found->begin, found->end);
        }
        if (!found && inst.kind == GateKind::ISWAP) {
            // syntactic manifestation: iSWAP followed by S gate(s) on the pair
            const int a = inst.qubits[0], b = inst.qubits[1];
            size_t j = i + 1;
            int s_count = 0;
            while (j < n && s_count < 2) {
                const auto& next = circuit.instructions[j];
                if (next.is_gate() && next.kind == GateKind::S &&
                    (next.qubits[0] == a || next.qubits[0] == b)) {
                    ++s_count;
                    ++j;
                } else {
                    break;
                }
            }
            if (s_count >= 1) {
                auto pair = std::minmax(a, b);
                found = SwapMatch{SwapMatchKind::IswapS, i, j, {pair.first, pair.second}, false};
            }
        }
        if (found) {
            matches.push_back(*found);
            i = found->end;
        } else {
            ++i;
        }
    }
    return matches;
}

std::pair<Circuit, Layout> remove_swaps(const Circuit& circuit) {
    const auto matches = detect_swaps(circuit);
    Layout relabel = Layout::identity(circuit.num_qubits);
    auto& r = relabel.logical_to_physical; // r(wire as written) = normalized wire

    Circuit out(circuit.num_qubits, circuit.num_clbits, circuit.label);
    size_t match_idx = 0;
    size_t i = 0;
    while (i < circuit.instructions.size()) {
        // skip syntactic-only matches; they are not unitarily SWAPs
        while (match_idx < matches.size() &&
               (matches[match_idx].begin < i ||
                (matches[match_idx].begin == i && !matches[match_idx].exact)))
            ++match_idx;
        if (match_idx < matches.size() && matches[match_idx].begin == i &&
            matches[match_idx].exact) {
            const auto& m = matches[match_idx];
            // subsequent instructions on these wires refer to exchanged
            // content: compose the transposition (in as-written coordinates)
            std::swap(r[static_cast<size_t>(m.qubit_pair.first)],
                      r[static_cast<size_t>(m.qubit_pair.second)]);
            i = m.end;
            ++match_idx;
            continue;
        }
        Instruction inst = circuit.instructions[i];
        for (int& q : inst.qubits) q = r[static_cast<size_t>(q)];
        if (inst.is_barrier()) std::sort(inst.qubits.begin(), inst.qubits.end());
        out.add(std::move(inst));
        ++i;
    }
    return {std::move(out), std::move(relabel)};
}

GateSignature signature_of(const Instruction& inst) {
    if (!inst.is_gate()) throw std::invalid_argument("signatures are defined for gates only");
    GateSignature sig;
    sig.name = std::string(gate_name(inst.kind));
    sig.params.reserve(inst.params.size());
    for (double p : inst.params) sig.params.push_back(canonical_param(p));
    sig.qubits = inst.qubits;
    return sig;
}

GateSignature signature_of(const WatermarkEntry& entry) {
    return signature_of(Instruction::gate(entry.gate, entry.qubits, entry.params));
}

std::map<GateSignature, int> count_gates(const Circuit& circuit) {
    std::map<GateSignature, int> counts;
    for (const auto& inst : circuit.instructions)
        if (inst.is_gate()) ++counts[signature_of(inst)];
    return counts;
}

std::string WatermarkFinding::to_json_text() const {
    json j;
    auto arr = json::array();
    for (const auto& g : gates) {
        json e;
        e["seq"] = g.sequence_num;
        e["name"] = g.signature.name;
        if (!g.signature.params.empty()) e["params"] = g.signature.params;
        e["qubits"] = g.signature.qubits;
        arr.push_back(e);
    }
    j["gates"] = arr;
    auto surplus = json::array();
    for (const auto& s : unmatched_base_surplus) {
        json e;
        e["name"] = s.name;
        if (!s.params.empty()) e["params"] = s.params;
        e["qubits"] = s.qubits;
        surplus.push_back(e);
    }
    j["base_surplus"] = surplus;
    return j.dump(2);
}

WatermarkFinding WatermarkFinding::from_json_text(const std::string& text) {
    json j = json::parse(text);
    WatermarkFinding finding;
    for (const auto& e : j.at("gates")) {
        SequencedGate g;
        g.sequence_num = e.at("seq").get<int>();
        g.signature.name = e.at("name").get<std::string>();
        if (e.contains("params")) g.signature.params = e.at("params").get<std::vector<double>>();
        g.signature.qubits = e.at("qubits").get<std::vector<int>>();
        finding.gates.push_back(std::move(g));
    }
    if (j.contains("base_surplus"))
        for (const auto& e : j.at("base_surplus")) {
            GateSignature s;
            s.name = e.at("name").get<std::string>();
            if (e.contains("params")) s.params = e.at("params").get<std::vector<double>>();
            s.qubits = e.at("qubits").get<std::vector<int>>();
            finding.unmatched_base_surplus.push_back(std::move(s));
        }
    return finding;
}

WatermarkFinding retrieve(const Circuit& base, const Circuit& suspect,
                          const RetrieveOptions& options) {
    Circuit base_in = base;
    Circuit suspect_in = suspect;
    if (options.common_basis) {
        base_in = decompose_to_basis(base_in, *options.common_basis);
        suspect_in = decompose_to_basis(suspect_in, *options.common_basis);
    }
    auto [base_norm, base_perm] = remove_swaps(base_in);
    auto [suspect_norm, suspect_perm] = remove_swaps(suspect_in);

    auto base_counts = count_gates(base_norm);
    auto suspect_counts = count_gates(suspect_norm);

    std::map<GateSignature, int> extra; // suspect-side positive diff
    WatermarkFinding finding;
    for (const auto& [sig, count] : suspect_counts) {
        auto it = base_counts.find(sig);
        const int diff = count - (it == base_counts.end() ? 0 : it->second);
        if (diff > 0) extra[sig] = diff;
    }
    for (const auto& [sig, count] : base_counts) {
        auto it = suspect_counts.find(sig);
        int diff = count - (it == suspect_counts.end() ? 0 : it->second);
        for (; diff > 0; --diff) finding.unmatched_base_surplus.push_back(sig);
    }

    int sequence_num = 0;
    for (const auto& inst : suspect_norm.instructions) {
        ++sequence_num; // every operation advances the counter
        if (!inst.is_gate()) continue;
        auto sig = signature_of(inst);
        auto it = extra.find(sig);
        if (it == extra.end()) continue;
        finding.gates.push_back({sequence_num, sig});
        if (--it->second == 0) extra.erase(it);
    }
    return finding;
}

std::string_view verify_status_name(VerifyStatus status) {
    switch (status) {
    case VerifyStatus::Confirmed: return "confirmed";
    case VerifyStatus::Partial: return "partial";
    case VerifyStatus::Absent: return "absent";
    }
    return "absent";
}

namespace {

/// A record entry expanded for matching: its signature plus the watermark
/// segment it belongs to. Segments sit at different circuit positions, so
/// swap normalization may relabel each by a different (but internally
/// consistent) wire permutation.
struct MatchEntry {
    GateSignature signature;
    int segment = 0;
};

struct MatchState {
    std::array<std::map<int, int>, 2> qubit_map; // per segment, injective
    std::array<std::set<int>, 2> used_targets;
    std::vector<char> used_gates;
};

bool params_close(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i) {
        // canonical values on both sides; 2e-6 absorbs rounding at the grid edge
        double d = std::abs(a[i] - b[i]);
        d = std::min(d, std::abs(2 * M_PI - d));
        if (d > 2e-6) return false;
    }
    return true;
}

/// Count the best number of record entries matchable against finding gates,
/// each finding gate consumed at most once, qubit relabelings consistent
/// within each segment.
int best_match(const std::vector<MatchEntry>& entries, size_t idx,
               const std::vector<GateSignature>& gates, MatchState& state,
               std::vector<char>& matched) {
    if (idx == entries.size()) return 0;
    const auto& entry = entries[idx].signature;
    auto& qubit_map = state.qubit_map[static_cast<size_t>(entries[idx].segment)];
    auto& used_targets = state.used_targets[static_cast<size_t>(entries[idx].segment)];
    int best = 0;
    // default: nothing from idx on is matched (score 0)
    std::vector<char> best_matched_tail(entries.size() - idx, 0);

    for (size_t g = 0; g < gates.size(); ++g) {
        if (state.used_gates[g]) continue;
        const auto& cand = gates[g];
        if (cand.name != entry.name || !params_close(cand.params, entry.params) ||
            cand.qubits.size() != entry.qubits.size())
            continue;
        // try extending the segment's qubit map
        std::vector<std::pair<int, int>> added;
        bool ok = true;
        for (size_t q = 0; q < entry.qubits.size() && ok; ++q) {
            const int from = entry.qubits[q], to = cand.qubits[q];
            auto it = qubit_map.find(from);
            if (it != qubit_map.end()) {
                ok = it->second == to;
            } else if (used_targets.count(to)) {
                ok = false;
            } else {
                qubit_map[from] = to;
                used_targets.insert(to);
                added.emplace_back(from, to);
            }
        }
        if (ok) {
            state.used_gates[g] = 1;
            matched[idx] = 1;
            int score = 1 + best_match(entries, idx + 1, gates, state, matched);
            if (score > best) {
                best = score;
                best_matched_tail.assign(matched.begin() + static_cast<long>(idx),
                                         matched.end());
            }
            matched[idx] = 0;
            state.used_gates[g] = 0;
        }
        for (auto& [from, to] : added) {
            qubit_map.erase(from);
            used_targets.erase(to);
        }
    }
    // also consider leaving this entry unmatched
    matched[idx] = 0;
    int skip = best_match(entries, idx + 1, gates, state, matched);
    if (skip > best) {
        best = skip;
        best_matched_tail.assign(matched.begin() + static_cast<long>(idx), matched.end());
    }
    std::copy(best_matched_tail.begin(), best_matched_tail.end(),
              matched.begin() + static_cast<long>(idx));
    return best;
}

} // namespace

VerifyResult verify(const WatermarkFinding& finding, const WatermarkRecord& record,
                    const std::optional<BasisSet>& basis) {
    const int split = std::clamp(record.rotation_entry_count, 0,
                                 static_cast<int>(record.entries.size()));
    std::vector<MatchEntry> entries;
    entries.reserve(record.entries.size());
    for (size_t i = 0; i < record.entries.size(); ++i) {
        const auto& e = record.entries[i];
        const int segment = static_cast<int>(i) < split ? 0 : 1;
        if (!basis) {
            entries.push_back({signature_of(e), segment});
            continue;
        }
        // mirror the extraction-side rebase: one record entry may decompose
        // into several basis gates, all of which must appear
        int max_qubit = 0;
        for (int q : e.qubits) max_qubit = std::max(max_qubit, q);
        Circuit one(max_qubit + 1);
        one.gate(e.gate, e.qubits, e.params);
        for (const auto& inst : decompose_to_basis(one, *basis).instructions)
            entries.push_back({signature_of(inst), segment});
    }

    std::vector<GateSignature> gates;
    gates.reserve(finding.gates.size());
    for (const auto& g : finding.gates) gates.push_back(g.signature);

    VerifyResult result;
    if (entries.empty()) {
        result.status = VerifyStatus::Confirmed;
        return result;
    }
    if (gates.empty()) {
        result.status = VerifyStatus::Absent;
        for (const auto& e : entries) result.missing.push_back(e.signature);
        return result;
    }

    MatchState state;
    state.used_gates.assign(gates.size(), 0);
    std::vector<char> matched(entries.size(), 0);
    const int found = best_match(entries, 0, gates, state, matched);

    if (found == static_cast<int>(entries.size())) {
        result.status = VerifyStatus::Confirmed;
        return result;
    }
    for (size_t i = 0; i < entries.size(); ++i)
        if (!matched[i]) result.missing.push_back(entries[i].signature);
    result.status = found == 0 ? VerifyStatus::Absent : VerifyStatus::Partial;
    return result;
}

} // namespace qcmark
