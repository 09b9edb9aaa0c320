// Copyright (c) qcmark contributors.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#pragma once

#include "qcmark/circuit.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qcmark {

struct QasmSource {
    std::string text;
    std::string origin; // file path or inline label
};

struct ParseDiagnostic {
    int line = 0;   // 1-based
    int column = 0; // 1-based
    std::string message;
    enum class Severity { Error, Warning } severity = Severity::Error;
};

struct ParseResult {
    std::optional<Circuit> circuit;
    std::vector<ParseDiagnostic> diagnostics;

    bool ok() const;
    /// The parsed circuit; throws std::runtime_error carrying the first
    /// diagnostic when parsing failed.
    const Circuit& value() const;
};

/// Parse the OpenQASM 2.0 subset: version header, qelib1 include,
/// qreg/creg (flattened in declaration order), catalogue gate applications
/// with constant parameter expressions over {literals, pi, + - * /, unary -},
/// barrier, and measure. Unknown gates and `gate` definitions are rejected
/// with positioned diagnostics; parsing recovers at `;` so several
/// diagnostics may be reported.
ParseResult parse(const QasmSource& src);

inline ParseResult parse_text(std::string text, std::string origin = "<inline>") {
    return parse(QasmSource{std::move(text), std::move(origin)});
}

/// Deterministic emission. Parameters within 1e-12 of k*pi/12 print as exact
/// pi fractions (so ry(pi) survives a round-trip as `ry(pi)`), anything else
/// as 17-significant-digit decimals.
QasmSource emit(const Circuit& circuit);

/// format one angle per the emission rule above
std::string format_angle(double value);

} // namespace qcmark
