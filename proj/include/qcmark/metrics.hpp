// Copyright (c) qcmark contributors.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#pragma once

#include "qcmark/coupling.hpp"
#include "qcmark/simulate.hpp"
#include "qcmark/watermark.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qcmark {

/// Total variation distance: 1/2 sum |A(y) - B(y)| over the union of
/// outcomes (missing outcomes count as probability 0). Counts are
/// normalized first. Throws on empty distributions.
double tvd(const Distribution& a, const Distribution& b);

/// Probability of successful trials: fraction of shots matching
/// `reference_outcome`. Requires a sampled distribution (shots present).
double pst(const Distribution& observed, const std::string& reference_outcome);

/// The reference outcome used by default: the most probable noiseless
/// outcome (ties break to the lexicographically smallest bitstring).
std::string ideal_reference_outcome(const Circuit& circuit, const std::string& input = {});

/// One simulation target of a phase sweep.
struct SweepConfig {
    std::string name;
    CouplingMap map;
    std::optional<NoiseModel> noise; // nullopt/zero = exact probabilities
};

struct PhaseSweepResult {
    std::vector<double> thetas;
    /// tvds[t][c] = ancilla TVD at thetas[t] under configs[c], against the
    /// baseline host executed under configs[0].
    std::vector<std::vector<double>> tvds;
    /// per-theta sum over configs (the aggregate view; single config = the
    /// plain curve)
    std::vector<double> sum_over_configs;
    double argmax_theta = 0;
};

/// Sweep the rotation-watermark phase over a uniform grid on [0, 2pi),
/// embedding RY(theta) (plus the optional CNOT) on `ancilla` for each grid
/// point, routing onto every config's map, and measuring the TVD of the
/// ancilla marginal against the baseline host under configs[0]. Noiseless
/// configs use exact probabilities, noisy ones use `shots` samples.
PhaseSweepResult phase_sweep(const Circuit& host, int ancilla,
                             std::optional<std::pair<int, int>> cnot, int grid_steps,
                             const std::vector<SweepConfig>& configs, uint64_t shots,
                             uint64_t seed, const std::string& input = {});

} // namespace qcmark
