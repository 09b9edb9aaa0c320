// Copyright (c) qcmark contributors.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "qcmark/transpile.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qcmark {

namespace {

constexpr int kOptimizeSweepCap = 100;

std::vector<Instruction> lower_1q(const Instruction& inst, const BasisSet& basis) {
    if (basis.contains(inst.kind)) return {inst};
    const int q = inst.qubits[0];
    auto u1 = [&](double lam) {
        if (basis.contains(GateKind::U1)) return Instruction::gate(GateKind::U1, {q}, {lam});
        return Instruction::gate(GateKind::U3, {q}, {0.0, 0.0, lam});
    };
    auto u2 = [&](double phi, double lam) {
        if (basis.contains(GateKind::U2)) return Instruction::gate(GateKind::U2, {q}, {phi, lam});
        return Instruction::gate(GateKind::U3, {q}, {M_PI / 2, phi, lam});
    };
    auto u3 = [&](double theta, double phi, double lam) {
        return Instruction::gate(GateKind::U3, {q}, {theta, phi, lam});
    };
    switch (inst.kind) {
    case GateKind::I: return {u3(0, 0, 0)};
    case GateKind::X: return {u3(M_PI, 0, M_PI)};
    case GateKind::Y: return {u3(M_PI, M_PI / 2, M_PI / 2)};
    case GateKind::Z: return {u1(M_PI)};
    case GateKind::H: return {u2(0, M_PI)};
    case GateKind::S: return {u1(M_PI / 2)};
    case GateKind::Sdg: return {u1(-M_PI / 2)};
    case GateKind::T: return {u1(M_PI / 4)};
    case GateKind::Tdg: return {u1(-M_PI / 4)};
    case GateKind::SX: return {u3(M_PI / 2, -M_PI / 2, M_PI / 2)}; // = SX up to phase
    case GateKind::RX: return {u3(inst.params[0], -M_PI / 2, M_PI / 2)};
    case GateKind::RY: return {u3(inst.params[0], 0, 0)};
    case GateKind::RZ: return {u1(inst.params[0])}; // up to phase
    case GateKind::U1: return {u3(0, 0, inst.params[0])};
    case GateKind::U2: return {u3(M_PI / 2, inst.params[0], inst.params[1])};
    default:
        throw std::logic_error("lower_1q called on a non-1q kind");
    }
}

/// Rewrite a 2q gate into CX plus single-qubit gates (which a second pass
/// lowers into the basis).
std::vector<Instruction> lower_2q(const Instruction& inst, const BasisSet& basis) {
    if (basis.contains(inst.kind)) return {inst};
    const int a = inst.qubits[0], b = inst.qubits[1];
    auto cx = [](int c, int t) { return Instruction::gate(GateKind::CX, {c, t}); };
    auto g1 = [](GateKind k, int q, std::vector<double> p = {}) {
        return Instruction::gate(k, {q}, std::move(p));
    };
    auto rzz = [&](double theta) {
        return std::vector<Instruction>{cx(a, b), g1(GateKind::RZ, b, {theta}), cx(a, b)};
    };
    std::vector<Instruction> out;
    switch (inst.kind) {
    case GateKind::CZ:
        out = {g1(GateKind::H, b), cx(a, b), g1(GateKind::H, b)};
        break;
    case GateKind::SWAP:
        out = {cx(a, b), cx(b, a), cx(a, b)};
        break;
    case GateKind::RZZ:
        out = rzz(inst.params[0]);
        break;
    case GateKind::RXX: {
        out = {g1(GateKind::H, a), g1(GateKind::H, b)};
        for (auto& i : rzz(inst.params[0])) out.push_back(i);
        out.push_back(g1(GateKind::H, a));
        out.push_back(g1(GateKind::H, b));
        break;
    }
    case GateKind::RYY: {
        out = {g1(GateKind::RX, a, {M_PI / 2}), g1(GateKind::RX, b, {M_PI / 2})};
        for (auto& i : rzz(inst.params[0])) out.push_back(i);
        out.push_back(g1(GateKind::RX, a, {-M_PI / 2}));
        out.push_back(g1(GateKind::RX, b, {-M_PI / 2}));
        break;
    }
    case GateKind::ISWAP: {
        // iSWAP = RXX(-pi/2) RYY(-pi/2) (commuting factors)
        auto rxx = lower_2q(Instruction::gate(GateKind::RXX, {a, b}, {-M_PI / 2}), basis);
        auto ryy = lower_2q(Instruction::gate(GateKind::RYY, {a, b}, {-M_PI / 2}), basis);
        out = std::move(rxx);
        for (auto& i : ryy) out.push_back(std::move(i));
        break;
    }
    default:
        throw std::logic_error("lower_2q called on a non-2q kind");
    }
    return out;
}

bool params_equal_mod_2pi(const std::vector<double>& a, const std::vector<double>& b,
                          double tol) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i) {
        const double d = wrap_angle(a[i] - b[i]);
        if (d > tol && d < 2 * M_PI - tol) return false;
    }
    return true;
}

bool is_inverse_pair(const Instruction& first, const Instruction& second, double tol = 1e-9) {
    if (first.kind == GateKind::ISWAP || second.kind == GateKind::ISWAP) return false;
    Instruction inv = inverse_of(first);
    return inv.kind == second.kind && inv.qubits == second.qubits &&
           params_equal_mod_2pi(inv.params, second.params, tol);
}

bool is_mergeable_rotation(GateKind k) {
    return k == GateKind::RX || k == GateKind::RY || k == GateKind::RZ || k == GateKind::U1;
}

} // namespace

bool BasisSet::is_universal() const {
    return contains(GateKind::CX) && contains(GateKind::U3);
}

BasisSet BasisSet::preset(const std::string& name) {
    if (name == "ibm")
        return BasisSet{{GateKind::CX, GateKind::U1, GateKind::U2, GateKind::U3, GateKind::I}};
    if (name == "extended") {
        BasisSet b;
        for (GateKind k : all_gate_kinds()) b.kinds.insert(k);
        return b;
    }
    throw std::invalid_argument("unknown basis preset '" + name + "'");
}

Layout Layout::identity(int n) {
    Layout l;
    l.logical_to_physical.resize(static_cast<size_t>(n));
    std::iota(l.logical_to_physical.begin(), l.logical_to_physical.end(), 0);
    return l;
}

int Layout::logical_of(int physical) const {
    for (size_t l = 0; l < logical_to_physical.size(); ++l)
        if (logical_to_physical[l] == physical) return static_cast<int>(l);
    throw std::invalid_argument("physical qubit not present in layout");
}

bool Layout::is_identity() const {
    for (size_t l = 0; l < logical_to_physical.size(); ++l)
        if (logical_to_physical[l] != static_cast<int>(l)) return false;
    return true;
}

Circuit decompose_to_basis(const Circuit& circuit, const BasisSet& basis) {
    if (!basis.is_universal())
        throw std::invalid_argument("basis is not universal (needs CX and U3 or equivalents)");
    Circuit out(circuit.num_qubits, circuit.num_clbits, circuit.label);
    for (const auto& inst : circuit.instructions) {
        if (!inst.is_gate()) {
            out.add(inst);
            continue;
        }
        if (qubit_arity(inst.kind) == 1) {
            for (auto& g : lower_1q(inst, basis)) out.add(std::move(g));
        } else {
            for (auto& g : lower_2q(inst, basis)) {
                if (g.qubits.size() == 1) {
                    for (auto& h : lower_1q(g, basis)) out.add(std::move(h));
                } else {
                    out.add(std::move(g));
                }
            }
        }
    }
    return out;
}

RoutedCircuit route(const Circuit& circuit, const CouplingMap& map,
                    const Layout& initial_layout, bool expand_swaps) {
    const int n_phys = map.num_physical_qubits;
    if (circuit.num_qubits > n_phys)
        throw std::invalid_argument("circuit needs " + std::to_string(circuit.num_qubits) +
                                    " qubits but device has " + std::to_string(n_phys));

    // extend the layout over all physical qubits (virtual logicals fill the
    // unused positions in ascending order)
    std::vector<int> pos; // logical -> physical
    if (initial_layout.logical_to_physical.empty()) {
        pos = Layout::identity(n_phys).logical_to_physical;
    } else {
        pos = initial_layout.logical_to_physical;
        if (static_cast<int>(pos.size()) < n_phys) {
            std::vector<char> used(static_cast<size_t>(n_phys), 0);
            for (int p : pos) {
                if (p < 0 || p >= n_phys) throw std::invalid_argument("layout entry out of range");
                used[static_cast<size_t>(p)] = 1;
            }
            for (int p = 0; p < n_phys; ++p)
                if (!used[static_cast<size_t>(p)]) pos.push_back(p);
        }
        if (static_cast<int>(pos.size()) != n_phys)
            throw std::invalid_argument("layout larger than device");
        std::set<int> distinct(pos.begin(), pos.end());
        if (static_cast<int>(distinct.size()) != n_phys)
            throw std::invalid_argument("layout is not a permutation");
    }

    std::vector<int> inv(static_cast<size_t>(n_phys)); // physical -> logical
    for (int l = 0; l < n_phys; ++l) inv[static_cast<size_t>(pos[static_cast<size_t>(l)])] = l;

    RoutedCircuit routed;
    routed.initial_layout.logical_to_physical = pos;
    routed.circuit = Circuit(n_phys, circuit.num_clbits, circuit.label);

    auto do_swap = [&](int pa, int pb) {
        const auto pair = std::minmax(pa, pb);
        routed.swap_log.push_back(
            {static_cast<int>(routed.circuit.instructions.size()), {pair.first, pair.second}});
        if (expand_swaps) {
            routed.circuit.gate(GateKind::CX, {pair.first, pair.second});
            routed.circuit.gate(GateKind::CX, {pair.second, pair.first});
            routed.circuit.gate(GateKind::CX, {pair.first, pair.second});
        } else {
            routed.circuit.gate(GateKind::SWAP, {pair.first, pair.second});
        }
        std::swap(inv[static_cast<size_t>(pa)], inv[static_cast<size_t>(pb)]);
        pos[static_cast<size_t>(inv[static_cast<size_t>(pa)])] = pa;
        pos[static_cast<size_t>(inv[static_cast<size_t>(pb)])] = pb;
    };

    for (const auto& inst : circuit.instructions) {
        switch (inst.type) {
        case OpType::Barrier: {
            std::vector<int> qs;
            qs.reserve(inst.qubits.size());
            for (int q : inst.qubits) qs.push_back(pos[static_cast<size_t>(q)]);
            std::sort(qs.begin(), qs.end());
            routed.circuit.barrier(qs);
            break;
        }
        case OpType::Measure:
            routed.circuit.measure(pos[static_cast<size_t>(inst.qubits[0])], inst.clbit);
            break;
        case OpType::Gate: {
            if (inst.qubits.size() == 1) {
                routed.circuit.gate(inst.kind, {pos[static_cast<size_t>(inst.qubits[0])]},
                                    inst.params);
                break;
            }
            const int la = inst.qubits[0], lb = inst.qubits[1];
            // the lower logical index walks toward the higher one
            const int mover = std::min(la, lb), anchor = std::max(la, lb);
            if (!map.has_edge(pos[static_cast<size_t>(la)], pos[static_cast<size_t>(lb)])) {
                auto path = map.shortest_path(pos[static_cast<size_t>(mover)],
                                              pos[static_cast<size_t>(anchor)]);
                for (size_t i = 0; i + 2 < path.size(); ++i) do_swap(path[i], path[i + 1]);
            }
            routed.circuit.gate(inst.kind,
                                {pos[static_cast<size_t>(la)], pos[static_cast<size_t>(lb)]},
                                inst.params);
            break;
        }
        }
    }
    routed.final_layout.logical_to_physical = pos;
    return routed;
}

double wrap_angle(double theta) {
    double t = std::fmod(theta, 2 * M_PI);
    if (t < 0) t += 2 * M_PI;
    return t;
}

Circuit optimize(const Circuit& circuit) {
    std::vector<Instruction> work = circuit.instructions;

    auto overlaps = [](const Instruction& a, const Instruction& b) {
        for (int q : a.qubits)
            if (std::find(b.qubits.begin(), b.qubits.end(), q) != b.qubits.end()) return true;
        return false;
    };

    bool changed = true;
    for (int sweep = 0; changed && sweep < kOptimizeSweepCap; ++sweep) {
        changed = false;
        size_t i = 0;
        while (i < work.size()) {
            if (!work[i].is_gate()) {
                ++i;
                continue;
            }
            // the first later instruction touching any of i's qubits is the
            // adjacent one on those wires; barriers and measures block
            size_t j = i + 1;
            while (j < work.size() && !overlaps(work[i], work[j])) ++j;
            if (j >= work.size() || !work[j].is_gate() || work[j].qubits != work[i].qubits) {
                ++i;
                continue;
            }
            bool rewrote = false;
            if (is_inverse_pair(work[i], work[j])) {
                work.erase(work.begin() + static_cast<long>(j));
                work.erase(work.begin() + static_cast<long>(i));
                rewrote = true;
            } else if (work[i].kind == work[j].kind && is_mergeable_rotation(work[i].kind)) {
                const double merged = wrap_angle(work[i].params[0] + work[j].params[0]);
                work.erase(work.begin() + static_cast<long>(j));
                if (merged < 1e-12 || 2 * M_PI - merged < 1e-12) {
                    work.erase(work.begin() + static_cast<long>(i));
                } else {
                    work[i].params[0] = merged;
                }
                rewrote = true;
            }
            if (rewrote) {
                changed = true;
                i = i > 0 ? i - 1 : 0;
            } else {
                ++i;
            }
        }
    }

    Circuit out(circuit.num_qubits, circuit.num_clbits, circuit.label);
    for (auto& inst : work) out.add(std::move(inst));
    return out;
}

} // namespace qcmark
