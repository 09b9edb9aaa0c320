// Copyright (c) qcmark contributors.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#pragma once

#include "qcmark/circuit.hpp"
#include "qcmark/coupling.hpp"

#include <set>
#include <string>
#include <vector>

namespace qcmark {

/// The native gate set a target executes directly.
struct BasisSet {
    std::set<GateKind> kinds;

    bool contains(GateKind k) const { return kinds.count(k) > 0; }
    /// A basis is accepted when it can express arbitrary circuits via
    /// {CX, U3} (the ibm preset) or contains every catalogue kind.
    bool is_universal() const;

    /// Presets: "ibm" = {CX, U1, U2, U3, I}; "extended" = every kind
    /// (no lowering).
    static BasisSet preset(const std::string& name);
};

/// Bijection logical -> physical qubit index.
struct Layout {
    std::vector<int> logical_to_physical;

    static Layout identity(int n);
    int physical_of(int logical) const { return logical_to_physical.at(static_cast<size_t>(logical)); }
    int logical_of(int physical) const;
    int size() const { return static_cast<int>(logical_to_physical.size()); }
    bool is_identity() const;
};

struct SwapLogEntry {
    int instruction_index; // index of the inserted SWAP (or its first CX) in the routed circuit
    std::pair<int, int> physical_pair;
};

struct RoutedCircuit {
    Circuit circuit; // on physical indices, num_qubits == map size
    Layout initial_layout;
    Layout final_layout;
    std::vector<SwapLogEntry> swap_log;
};

/// Rewrite every gate into `basis`. Gates already in the basis pass through;
/// barriers and measures are preserved in place. The result equals the input
/// unitary up to global phase. Throws on a non-universal basis.
Circuit decompose_to_basis(const Circuit& circuit, const BasisSet& basis);

/// Insert SWAPs along greedy shortest paths so every two-qubit gate acts on
/// a coupled pair. The lower logical index moves toward the higher one's
/// location; ties between shortest paths break to the lexicographically
/// smallest physical index sequence. With `expand_swaps` each inserted SWAP
/// is emitted as 3 CX.
RoutedCircuit route(const Circuit& circuit, const CouplingMap& map,
                    const Layout& initial_layout = {}, bool expand_swaps = false);

/// Barrier-respecting peephole optimization to fixpoint: adjacent
/// inverse-pair cancellation on identical qubit tuples and same-axis
/// rotation merging (angles summed mod 2pi, zero-angle results deleted).
/// Nothing merges or cancels across a barrier. Unitary preserved up to
/// global phase.
Circuit optimize(const Circuit& circuit);

/// angle wrapped into [0, 2pi)
double wrap_angle(double theta);

} // namespace qcmark
