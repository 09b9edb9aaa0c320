// Copyright (c) qcmark contributors.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#pragma once

#include "qcmark/circuit.hpp"
#include "qcmark/transpile.hpp"
#include "qcmark/watermark.hpp"

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qcmark {

/// How a SWAP manifests in a transpiled circuit.
enum class SwapMatchKind {
    Direct,            // a SWAP gate instance
    Named,             // gate whose recorded name contains "swap"
    UnitaryEquivalent, // window whose composed unitary equals SWAP up to phase
    ThreeCnot,         // CX(a,b) CX(b,a) CX(a,b)
    IswapS,            // iSWAP followed by S gate(s); syntactic, not exact
    RxxRyyRzz,         // RXX,RYY,RZZ each at pi/2
};

std::string_view swap_match_kind_name(SwapMatchKind kind);

struct SwapMatch {
    SwapMatchKind kind;
    size_t begin = 0; // instruction index range [begin, end)
    size_t end = 0;
    std::pair<int, int> qubit_pair;
    /// False for the syntactic iSWAP+S pattern, whose composed unitary is
    /// not a SWAP; such matches are reported but never removed.
    bool exact = true;
};

/// Does a gate name signal a SWAP? "iswap" is excluded; it is handled by
/// the dedicated iSWAP+S pattern.
bool is_swap_name(std::string_view name);

/// Left-to-right greedy scan with longest-match windows (up to 4
/// instructions confined to one qubit pair). Windows are checked against
/// SWAP up to global phase within 1e-8; the syntactic iSWAP+S pattern is
/// reported with exact=false.
std::vector<SwapMatch> detect_swaps(const Circuit& circuit);

/// Deletes every exact SWAP span and relabels subsequent instructions by the
/// wire transposition, returning the accumulated permutation (input wire ->
/// normalized wire). Noiseless semantics are preserved: the result equals
/// the input after undoing the permutation.
std::pair<Circuit, Layout> remove_swaps(const Circuit& circuit);

/// Canonicalized gate identity used for multiset diffing: lowercase name,
/// parameters reduced mod 2pi and rounded at 1e-6, ordered qubit indices.
struct GateSignature {
    std::string name;
    std::vector<double> params; // canonical values (multiples of 1e-6)
    std::vector<int> qubits;

    auto operator<=>(const GateSignature&) const = default;
};

GateSignature signature_of(const Instruction& inst);
GateSignature signature_of(const WatermarkEntry& entry);

/// Gate multiset; barriers and measures excluded.
std::map<GateSignature, int> count_gates(const Circuit& circuit);

struct SequencedGate {
    int sequence_num = 0; // 1-based instruction position in the normalized suspect
    GateSignature signature;
};

struct WatermarkFinding {
    std::vector<SequencedGate> gates;
    std::vector<GateSignature> unmatched_base_surplus;

    bool empty() const { return gates.empty(); }
    std::string to_json_text() const;
    static WatermarkFinding from_json_text(const std::string& text);
};

struct RetrieveOptions {
    /// When set, both circuits are decomposed into this basis before
    /// diffing (needed when base and suspect were transpiled to different
    /// basis sets).
    std::optional<BasisSet> common_basis;
};

/// Algorithm: swap-normalize both circuits, diff the gate multisets, then a
/// single pass over the suspect assigns 1-based sequence numbers and
/// consumes instructions whose signatures remain in the positive diff.
/// Surplus on the base side is reported separately, not treated as
/// watermark. Linear in the suspect length.
WatermarkFinding retrieve(const Circuit& base, const Circuit& suspect,
                          const RetrieveOptions& options = {});

enum class VerifyStatus { Confirmed, Partial, Absent };

struct VerifyResult {
    VerifyStatus status = VerifyStatus::Absent;
    std::vector<GateSignature> missing; // record entries with no finding match
};

std::string_view verify_status_name(VerifyStatus status);

/// Confirmed iff every record entry appears in the finding (params within
/// 1e-6, qubit tuples matched under one consistent injective relabeling to
/// absorb the extraction permutation). Partial lists the missing entries.
/// When the finding came from circuits rebased into a common basis, pass
/// the same basis so record entries are decomposed before matching.
VerifyResult verify(const WatermarkFinding& finding, const WatermarkRecord& record,
                    const std::optional<BasisSet>& basis = std::nullopt);

} // namespace qcmark
