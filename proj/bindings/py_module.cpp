// Copyright (c) qcmark contributors.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "qcmark/extract.hpp"
#include "qcmark/metrics.hpp"
#include "qcmark/qaoa.hpp"
#include "qcmark/qasm.hpp"
#include "qcmark/transpile.hpp"
#include "qcmark/unitary.hpp"
#include "qcmark/watermark.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace qcmark;

namespace {

GateKind kind_from_name_or_throw(const std::string& name) {
    auto kind = gate_kind_from_name(name);
    if (!kind) throw py::value_error("unknown gate '" + name + "'");
    return *kind;
}

Circuit parse_or_throw(const std::string& text, const std::string& origin) {
    auto result = parse(QasmSource{text, origin});
    if (!result.ok()) {
        std::ostringstream msg;
        msg << "parse failed:";
        for (const auto& d : result.diagnostics)
            msg << "\n  " << d.line << ":" << d.column << ": " << d.message;
        throw py::value_error(msg.str());
    }
    return result.value();
}

std::string instruction_repr(const Instruction& inst) {
    std::ostringstream out;
    switch (inst.type) {
    case OpType::Barrier: out << "barrier"; break;
    case OpType::Measure: out << "measure"; break;
    case OpType::Gate: out << gate_name(inst.kind); break;
    }
    if (!inst.params.empty()) {
        out << "(";
        for (size_t i = 0; i < inst.params.size(); ++i)
            out << (i ? "," : "") << format_angle(inst.params[i]);
        out << ")";
    }
    out << " q" << [&] {
        std::string s;
        for (size_t i = 0; i < inst.qubits.size(); ++i)
            s += (i ? ",q" : "") + std::to_string(inst.qubits[i]);
        return s;
    }();
    if (inst.is_measure()) out << " -> c" << inst.clbit;
    return out.str();
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "quantum circuit watermarking toolkit";
    m.attr("__version__") = QCMARK_VERSION;

    py::class_<Instruction>(m, "Instruction")
        .def_static("gate",
                    [](const std::string& name, std::vector<int> qubits,
                       std::vector<double> params) {
                        return Instruction::gate(kind_from_name_or_throw(name),
                                                 std::move(qubits), std::move(params));
                    },
                    py::arg("name"), py::arg("qubits"), py::arg("params") = std::vector<double>{})
        .def_static("barrier", &Instruction::barrier, py::arg("qubits"))
        .def_static("measure", &Instruction::measure, py::arg("qubit"), py::arg("clbit"))
        .def_property_readonly("name",
                               [](const Instruction& i) {
                                   if (i.is_barrier()) return std::string("barrier");
                                   if (i.is_measure()) return std::string("measure");
                                   return std::string(gate_name(i.kind));
                               })
        .def_readonly("qubits", &Instruction::qubits)
        .def_readonly("params", &Instruction::params)
        .def_readonly("clbit", &Instruction::clbit)
        .def("is_gate", &Instruction::is_gate)
        .def("is_barrier", &Instruction::is_barrier)
        .def("is_measure", &Instruction::is_measure)
        .def("__repr__", &instruction_repr);

    py::class_<Circuit>(m, "Circuit")
        .def(py::init<int, int, std::string>(), py::arg("num_qubits"), py::arg("num_clbits") = 0,
             py::arg("label") = std::string{})
        .def_readonly("num_qubits", &Circuit::num_qubits)
        .def_readonly("num_clbits", &Circuit::num_clbits)
        .def_readonly("label", &Circuit::label)
        .def_property_readonly("instructions",
                               [](const Circuit& c) { return c.instructions; })
        .def("gate",
             [](Circuit& c, const std::string& name, std::vector<int> qubits,
                std::vector<double> params) -> Circuit& {
                 return c.gate(kind_from_name_or_throw(name), std::move(qubits),
                               std::move(params));
             },
             py::arg("name"), py::arg("qubits"), py::arg("params") = std::vector<double>{},
             py::return_value_policy::reference_internal)
        .def("barrier", &Circuit::barrier, py::arg("qubits") = std::vector<int>{},
             py::return_value_policy::reference_internal)
        .def("measure", &Circuit::measure, py::arg("qubit"), py::arg("clbit"),
             py::return_value_policy::reference_internal)
        .def("measure_all", &Circuit::measure_all, py::return_value_policy::reference_internal)
        .def("without_measures", &Circuit::without_measures)
        .def("measured_qubits", &Circuit::measured_qubits)
        .def("__len__", [](const Circuit& c) { return c.instructions.size(); })
        .def("__repr__", [](const Circuit& c) {
            std::ostringstream out;
            out << "Circuit(qubits=" << c.num_qubits << ", clbits=" << c.num_clbits
                << ", instructions=" << c.instructions.size() << ")";
            return out.str();
        });

    m.def("structurally_equal",
          py::overload_cast<const Circuit&, const Circuit&, double>(&structurally_equal),
          py::arg("a"), py::arg("b"), py::arg("param_tol") = 0.0);
    m.def("depth", &depth);
    m.def("two_qubit_gate_count", &two_qubit_gate_count);
    m.def("gate_matrix",
          [](const std::string& name, std::vector<double> params) {
              return gate_matrix(kind_from_name_or_throw(name), params);
          },
          py::arg("name"), py::arg("params") = std::vector<double>{});
    m.def("unitary_of", &unitary_of, py::arg("circuit"), py::arg("cap") = kUnitaryQubitCap);
    m.def("equal_up_to_global_phase", &equal_up_to_global_phase, py::arg("a"), py::arg("b"),
          py::arg("tol") = 1e-9);
    m.def("inverse_of", &inverse_of);

    m.def("parse_qasm", &parse_or_throw, py::arg("text"), py::arg("origin") = "<python>");
    m.def("emit_qasm", [](const Circuit& c) { return emit(c).text; });

    py::class_<Statevector>(m, "Statevector")
        .def_readonly("num_qubits", &Statevector::num_qubits)
        .def_readonly("amplitudes", &Statevector::amplitudes)
        .def("probability", &Statevector::probability)
        .def("norm", &Statevector::norm);

    py::class_<NoiseModel>(m, "NoiseModel")
        .def(py::init([](double p1, double p2, double p_readout) {
                 return NoiseModel{p1, p2, p_readout};
             }),
             py::arg("p1") = 0.0, py::arg("p2") = 0.0, py::arg("p_readout") = 0.0)
        .def_static("toy", &NoiseModel::toy)
        .def_readonly("p1", &NoiseModel::p1)
        .def_readonly("p2", &NoiseModel::p2)
        .def_readonly("p_readout", &NoiseModel::p_readout);

    py::class_<Distribution>(m, "Distribution")
        .def_property_readonly("weights", [](const Distribution& d) { return d.weights; })
        .def_property_readonly("shots", [](const Distribution& d) { return d.shots; })
        .def_readonly("measured_qubits", &Distribution::measured_qubits)
        .def("probabilities", &Distribution::probabilities)
        .def("to_json", &Distribution::to_json_text)
        .def_static("from_json", &Distribution::from_json_text)
        .def("__repr__", [](const Distribution& d) {
            std::ostringstream out;
            out << "Distribution(outcomes=" << d.weights.size();
            if (d.shots) out << ", shots=" << *d.shots;
            out << ")";
            return out.str();
        });

    m.def("run_exact", &run_exact, py::arg("circuit"), py::arg("input") = std::string{});
    m.def("exact_distribution", &exact_distribution, py::arg("circuit"),
          py::arg("input") = std::string{});
    m.def("sample", &sample, py::arg("circuit"), py::arg("input") = std::string{},
          py::arg("shots") = 1000, py::arg("seed") = 0,
          py::arg("noise") = std::optional<NoiseModel>{});
    m.def("marginalize", &marginalize, py::arg("distribution"), py::arg("qubits"));

    py::class_<CouplingMap>(m, "CouplingMap")
        .def(py::init<int, std::vector<std::pair<int, int>>>(), py::arg("n"), py::arg("edges"))
        .def_static("preset", &CouplingMap::preset)
        .def_static("preset_names", &CouplingMap::preset_names)
        .def_static("from_json", &CouplingMap::from_json_text)
        .def("to_json", &CouplingMap::to_json_text)
        .def_readonly("num_physical_qubits", &CouplingMap::num_physical_qubits)
        .def_property_readonly("edges",
                               [](const CouplingMap& m_) {
                                   return std::vector<std::pair<int, int>>(m_.edges.begin(),
                                                                           m_.edges.end());
                               })
        .def("shortest_path", &CouplingMap::shortest_path);

    py::class_<BasisSet>(m, "BasisSet").def_static("preset", &BasisSet::preset);

    py::class_<Layout>(m, "Layout")
        .def_readonly("logical_to_physical", &Layout::logical_to_physical)
        .def("is_identity", &Layout::is_identity);

    py::class_<RoutedCircuit>(m, "RoutedCircuit")
        .def_readonly("circuit", &RoutedCircuit::circuit)
        .def_readonly("initial_layout", &RoutedCircuit::initial_layout)
        .def_readonly("final_layout", &RoutedCircuit::final_layout)
        .def_property_readonly("swap_log", [](const RoutedCircuit& r) {
            std::vector<std::pair<int, std::pair<int, int>>> log;
            for (const auto& e : r.swap_log) log.emplace_back(e.instruction_index, e.physical_pair);
            return log;
        });

    m.def("decompose_to_basis", &decompose_to_basis, py::arg("circuit"), py::arg("basis"));
    m.def("route", &route, py::arg("circuit"), py::arg("map"), py::arg("layout") = Layout{},
          py::arg("expand_swaps") = false);
    m.def("optimize", &optimize, py::arg("circuit"));

    py::enum_<WatermarkScheme>(m, "WatermarkScheme")
        .value("Rotation", WatermarkScheme::Rotation)
        .value("RandomGateSet", WatermarkScheme::RandomGateSet)
        .value("Combined", WatermarkScheme::Combined);

    py::class_<WatermarkEntry>(m, "WatermarkEntry")
        .def_property_readonly("gate",
                               [](const WatermarkEntry& e) {
                                   return std::string(gate_name(e.gate));
                               })
        .def_readonly("params", &WatermarkEntry::params)
        .def_readonly("qubits", &WatermarkEntry::qubits);

    py::class_<WatermarkRecord>(m, "WatermarkRecord")
        .def_readonly("scheme", &WatermarkRecord::scheme)
        .def_readonly("entries", &WatermarkRecord::entries)
        .def_readonly("insertion_index", &WatermarkRecord::insertion_index)
        .def_readonly("ancilla_added", &WatermarkRecord::ancilla_added)
        .def_readonly("barrier_indices", &WatermarkRecord::barrier_indices)
        .def_readonly("seed", &WatermarkRecord::seed)
        .def("to_json", &WatermarkRecord::to_json_text)
        .def_static("from_json", &WatermarkRecord::from_json_text);

    py::class_<RotationSpec>(m, "RotationSpec")
        .def(py::init([](std::vector<int> ancillas, std::optional<int> target, double theta,
                         std::optional<std::pair<int, int>> cnot) {
                 RotationSpec spec;
                 spec.ancillas = std::move(ancillas);
                 spec.target = target;
                 spec.theta = theta;
                 spec.cnot = cnot;
                 return spec;
             }),
             py::arg("ancillas") = std::vector<int>{}, py::arg("target") = std::optional<int>{},
             py::arg("theta") = M_PI, py::arg("cnot") = std::optional<std::pair<int, int>>{});

    py::class_<RandomSpec>(m, "RandomSpec")
        .def(py::init([](std::vector<Instruction> block, std::optional<int> insertion_index,
                         std::optional<uint64_t> seed, int k) {
                 RandomSpec spec;
                 spec.block = std::move(block);
                 spec.insertion_index = insertion_index;
                 spec.seed = seed;
                 spec.k = k;
                 return spec;
             }),
             py::arg("block") = std::vector<Instruction>{},
             py::arg("insertion_index") = std::optional<int>{},
             py::arg("seed") = std::optional<uint64_t>{}, py::arg("k") = 2);

    m.def("embed_rotation", &embed_rotation, py::arg("circuit"), py::arg("spec"));
    m.def("embed_random", &embed_random, py::arg("circuit"), py::arg("spec"));
    m.def("embed_combined", &embed_combined, py::arg("circuit"), py::arg("rotation"),
          py::arg("random"));

    py::class_<PpaConfig>(m, "PpaConfig")
        .def_static("for_qubits", &PpaConfig::for_qubits, py::arg("n_qubits_incl_ancilla"),
                    py::arg("k_random_gates") = 2)
        .def_readwrite("gate_pool_size", &PpaConfig::gate_pool_size)
        .def_readwrite("rotation_gate_choices", &PpaConfig::rotation_gate_choices)
        .def_readwrite("phase_resolution_steps", &PpaConfig::phase_resolution_steps)
        .def_readwrite("placement_counts", &PpaConfig::placement_counts);
    m.def("ppa", &ppa);
    m.def("ppa_watermark_count", &ppa_watermark_count);

    py::enum_<SwapMatchKind>(m, "SwapMatchKind")
        .value("Direct", SwapMatchKind::Direct)
        .value("Named", SwapMatchKind::Named)
        .value("UnitaryEquivalent", SwapMatchKind::UnitaryEquivalent)
        .value("ThreeCnot", SwapMatchKind::ThreeCnot)
        .value("IswapS", SwapMatchKind::IswapS)
        .value("RxxRyyRzz", SwapMatchKind::RxxRyyRzz);

    py::class_<SwapMatch>(m, "SwapMatch")
        .def_readonly("kind", &SwapMatch::kind)
        .def_readonly("begin", &SwapMatch::begin)
        .def_readonly("end", &SwapMatch::end)
        .def_readonly("qubit_pair", &SwapMatch::qubit_pair)
        .def_readonly("exact", &SwapMatch::exact);

    py::class_<GateSignature>(m, "GateSignature")
        .def_readonly("name", &GateSignature::name)
        .def_readonly("params", &GateSignature::params)
        .def_readonly("qubits", &GateSignature::qubits)
        .def("__eq__", [](const GateSignature& a, const GateSignature& b) { return a == b; })
        .def("__repr__", [](const GateSignature& s) {
            std::ostringstream out;
            out << s.name << "(";
            for (size_t i = 0; i < s.params.size(); ++i) out << (i ? "," : "") << s.params[i];
            out << ") q";
            for (size_t i = 0; i < s.qubits.size(); ++i)
                out << (i ? ",q" : "") << s.qubits[i];
            return out.str();
        });

    py::class_<SequencedGate>(m, "SequencedGate")
        .def_readonly("sequence_num", &SequencedGate::sequence_num)
        .def_readonly("signature", &SequencedGate::signature);

    py::class_<WatermarkFinding>(m, "WatermarkFinding")
        .def_readonly("gates", &WatermarkFinding::gates)
        .def_readonly("unmatched_base_surplus", &WatermarkFinding::unmatched_base_surplus)
        .def("empty", &WatermarkFinding::empty)
        .def("to_json", &WatermarkFinding::to_json_text)
        .def_static("from_json", &WatermarkFinding::from_json_text);

    m.def("detect_swaps", &detect_swaps);
    m.def("remove_swaps", &remove_swaps);
    m.def("count_gates", [](const Circuit& c) {
        std::vector<std::pair<GateSignature, int>> counts;
        for (const auto& [sig, n] : count_gates(c)) counts.emplace_back(sig, n);
        return counts;
    });
    m.def("retrieve",
          [](const Circuit& base, const Circuit& suspect, bool rebase_ibm) {
              RetrieveOptions opts;
              if (rebase_ibm) opts.common_basis = BasisSet::preset("ibm");
              return retrieve(base, suspect, opts);
          },
          py::arg("base"), py::arg("suspect"), py::arg("rebase_ibm") = false);

    py::enum_<VerifyStatus>(m, "VerifyStatus")
        .value("Confirmed", VerifyStatus::Confirmed)
        .value("Partial", VerifyStatus::Partial)
        .value("Absent", VerifyStatus::Absent);

    py::class_<VerifyResult>(m, "VerifyResult")
        .def_readonly("status", &VerifyResult::status)
        .def_readonly("missing", &VerifyResult::missing);

    m.def("verify", &verify, py::arg("finding"), py::arg("record"),
          py::arg("basis") = std::optional<BasisSet>{});

    m.def("tvd", &tvd);
    m.def("pst", &pst, py::arg("observed"), py::arg("reference_outcome"));
    m.def("ideal_reference_outcome", &ideal_reference_outcome, py::arg("circuit"),
          py::arg("input") = std::string{});

    py::class_<SweepConfig>(m, "SweepConfig")
        .def(py::init([](std::string name, CouplingMap map, std::optional<NoiseModel> noise) {
                 return SweepConfig{std::move(name), std::move(map), noise};
             }),
             py::arg("name"), py::arg("map"), py::arg("noise") = std::optional<NoiseModel>{});

    py::class_<PhaseSweepResult>(m, "PhaseSweepResult")
        .def_readonly("thetas", &PhaseSweepResult::thetas)
        .def_readonly("tvds", &PhaseSweepResult::tvds)
        .def_readonly("sum_over_configs", &PhaseSweepResult::sum_over_configs)
        .def_readonly("argmax_theta", &PhaseSweepResult::argmax_theta);

    m.def("phase_sweep", &phase_sweep, py::arg("host"), py::arg("ancilla"), py::arg("cnot"),
          py::arg("grid_steps"), py::arg("configs"), py::arg("shots") = 1000,
          py::arg("seed") = 0, py::arg("input") = std::string{});

    py::class_<WeightedEdge>(m, "WeightedEdge")
        .def_readonly("a", &WeightedEdge::a)
        .def_readonly("b", &WeightedEdge::b)
        .def_readonly("weight", &WeightedEdge::weight);

    py::class_<Graph>(m, "Graph")
        .def(py::init([](int n, std::vector<std::tuple<int, int>> edges) {
                 std::vector<WeightedEdge> list;
                 for (auto [a, b] : edges) list.push_back({a, b, 1.0});
                 return Graph(n, std::move(list));
             }),
             py::arg("n"), py::arg("edges"))
        .def_static("preset", &Graph::preset)
        .def_static("preset_names", &Graph::preset_names)
        .def_static("from_json", &Graph::from_json_text)
        .def("to_json", &Graph::to_json_text)
        .def_readonly("n_nodes", &Graph::n_nodes)
        .def_readonly("edges", &Graph::edges);

    py::class_<QaoaParams>(m, "QaoaParams")
        .def(py::init([](std::vector<double> gammas, std::vector<double> betas) {
                 return QaoaParams{std::move(gammas), std::move(betas)};
             }),
             py::arg("gammas"), py::arg("betas"))
        .def_readonly("gammas", &QaoaParams::gammas)
        .def_readonly("betas", &QaoaParams::betas)
        .def("layers", &QaoaParams::layers);

    m.def("build_qaoa_circuit", &build_qaoa_circuit);
    m.def("maxcut_value", &maxcut_value);
    m.def("brute_force_maxcut", &brute_force_maxcut);
    m.def("expected_cut", &expected_cut);
    m.def("optimize_params", &optimize_params, py::arg("graph"), py::arg("layers"),
          py::arg("budget") = 4000, py::arg("seed") = 0);
    m.def("approximation_ratio", &approximation_ratio, py::arg("graph"), py::arg("circuit"),
          py::arg("shots") = 0, py::arg("seed") = 0,
          py::arg("noise") = std::optional<NoiseModel>{},
          py::arg("unflip_mask") = std::optional<std::string>{});
}
