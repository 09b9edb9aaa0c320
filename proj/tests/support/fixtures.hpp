// Copyright (c) qcmark contributors.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#pragma once

#include "qcmark/qasm.hpp"
#include "qcmark/watermark.hpp"

#include <json.hpp>

#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qcmark::test {

struct Fixture {
    std::string name;
    Circuit circuit;
    std::vector<int> functional;
    std::vector<int> ancillas;
    RotationSpec rotation;
    bool deterministic = false;
};

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::vector<Fixture> load_fixtures(const std::string& dir) {
    const auto manifest = nlohmann::json::parse(read_file(dir + "/manifest.json"));
    std::vector<Fixture> fixtures;
    for (const auto& entry : manifest.at("fixtures")) {
        Fixture f;
        f.name = entry.at("name").get<std::string>();
        const std::string path = dir + "/" + entry.at("file").get<std::string>();
        auto parsed = parse(QasmSource{read_file(path), path});
        f.circuit = parsed.value();
        f.functional = entry.at("functional").get<std::vector<int>>();
        f.ancillas = entry.at("ancillas").get<std::vector<int>>();
        f.deterministic = entry.at("deterministic").get<bool>();
        f.rotation.ancillas = f.ancillas;
        f.rotation.theta = M_PI;
        if (entry.contains("rotation")) {
            const auto& rot = entry.at("rotation");
            if (rot.contains("target")) f.rotation.target = rot.at("target").get<int>();
            if (rot.contains("cnot")) {
                const auto pair = rot.at("cnot").get<std::vector<int>>();
                f.rotation.cnot = {{pair.at(0), pair.at(1)}};
            }
        }
        fixtures.push_back(std::move(f));
    }
    return fixtures;
}

} // namespace qcmark::test
