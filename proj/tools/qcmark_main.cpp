// Copyright (c) qcmark contributors.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.
//
// qcmark: embed, extract, and verify quantum-circuit watermarks, and run the
// supporting transpile / simulation / QAOA experiment workflows.

#include "qcmark/extract.hpp"
#include "qcmark/metrics.hpp"
#include "qcmark/qaoa.hpp"
#include "qcmark/qasm.hpp"
#include "qcmark/rng.hpp"
#include "qcmark/transpile.hpp"
#include "qcmark/watermark.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

using namespace qcmark;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParseFailure = 1;
constexpr int kExitBadArguments = 2;
constexpr int kExitPartial = 3;
constexpr int kExitAbsent = 4;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

uint64_t fnv1a64(const std::string& bytes) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string fnv1a64_hex(const std::string& bytes) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(fnv1a64(bytes)));
    return buf;
}

/// Accepts "pi", "3*pi/4", plain decimals, and any constant expression the
/// QASM parameter grammar allows.
double parse_angle_text(const std::string& text) {
    auto r = parse_text("OPENQASM 2.0; qreg q[1]; rz(" + text + ") q[0];");
    if (!r.ok()) throw CLI::ValidationError("angle", "cannot parse angle '" + text + "'");
    return r.value().instructions[0].params[0];
}

Circuit load_circuit(const std::string& path) {
    auto result = parse(QasmSource{read_file(path), path});
    if (!result.ok()) {
        for (const auto& d : result.diagnostics)
            std::cerr << path << ":" << d.line << ":" << d.column << ": "
                      << (d.severity == ParseDiagnostic::Severity::Error ? "error" : "warning")
                      << ": " << d.message << "\n";
        throw std::runtime_error("parse failed: " + path);
    }
    for (const auto& d : result.diagnostics)
        std::cerr << path << ":" << d.line << ":" << d.column << ": warning: " << d.message
                  << "\n";
    return result.value();
}

CouplingMap load_map(const std::string& spec) {
    for (const auto& name : CouplingMap::preset_names())
        if (spec == name) return CouplingMap::preset(spec);
    return CouplingMap::from_json_text(read_file(spec));
}

std::optional<NoiseModel> noise_from_name(const std::string& name) {
    if (name == "none") return std::nullopt;
    if (name == "toy") return NoiseModel::toy();
    throw CLI::ValidationError("noise", "unknown noise preset '" + name + "' (none|toy)");
}

/// Reproducible run evidence: command, input digests, seed, metrics.
class Report {
public:
    Report(std::string command, uint64_t seed) : start_(std::chrono::steady_clock::now()) {
        body_["command"] = std::move(command);
        body_["seed"] = seed;
        body_["tool_version"] = QCMARK_VERSION;
        body_["inputs"] = json::object();
        body_["outputs"] = json::object();
    }

    void input(const std::string& path) {
        body_["inputs"][path] = "fnv1a64:" + fnv1a64_hex(read_file(path));
    }
    json& outputs() { return body_["outputs"]; }

    void write(const std::string& path, bool timed) {
        if (path.empty()) return;
        if (timed) body_["wall_time_ms"] = elapsed_ms();
        write_file(path, body_.dump(2) + "\n");
    }

    double elapsed_ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                         start_)
            .count();
    }

private:
    json body_;
    std::chrono::steady_clock::time_point start_;
};

struct CommonOpts {
    uint64_t seed = 0;
    std::string report_path;
    bool timed = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--seed", opts.seed, "seed for all randomized stages")
        ->envname("QCMARK_SEED");
    cmd->add_option("--report", opts.report_path, "write a run report JSON here");
    cmd->add_flag("--time", opts.timed, "include wall_time_ms in output and report");
}

// ---------------------------------------------------------------- embed

struct EmbedOpts {
    CommonOpts common;
    std::string input, out = "out.qasm", record_path = "record.json";
    std::string scheme = "combined";
    std::string theta = "pi";
    std::vector<int> ancillas;
    std::optional<int> target;
    std::vector<int> cnot;
    int k = 2;
    std::optional<int> insert_at;
    bool again = false;
};

int run_embed(const EmbedOpts& opts) {
    const Circuit host = load_circuit(opts.input);
    auto scheme = scheme_from_name(opts.scheme);
    if (!scheme) throw CLI::ValidationError("scheme", "unknown scheme '" + opts.scheme + "'");

    RotationSpec rotation;
    rotation.ancillas = opts.ancillas;
    rotation.theta = parse_angle_text(opts.theta);
    if (opts.target) rotation.target = opts.target;
    if (!opts.cnot.empty()) {
        if (opts.cnot.size() != 2)
            throw CLI::ValidationError("cnot", "--cnot expects control,target");
        rotation.cnot = {{opts.cnot[0], opts.cnot[1]}};
        // naming a cnot endpoint declares it as a watermark ancilla
        if (!rotation.ancillas.empty()) {
            for (int q : opts.cnot)
                if (std::find(rotation.ancillas.begin(), rotation.ancillas.end(), q) ==
                    rotation.ancillas.end())
                    rotation.ancillas.push_back(q);
        }
    }
    RandomSpec random;
    random.seed = opts.common.seed;
    random.k = opts.k;
    if (opts.insert_at) random.insertion_index = opts.insert_at;

    Circuit watermarked;
    WatermarkRecord record;
    try {
        switch (*scheme) {
        case WatermarkScheme::Rotation:
            std::tie(watermarked, record) = embed_rotation(host, rotation);
            break;
        case WatermarkScheme::RandomGateSet:
            std::tie(watermarked, record) = embed_random(host, random);
            break;
        case WatermarkScheme::Combined:
            std::tie(watermarked, record) = embed_combined(host, rotation, random);
            break;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid scheme arguments: " << e.what() << "\n";
        return kExitBadArguments;
    }

    write_file(opts.out, emit(watermarked).text);

    json record_json = json::parse(record.to_json_text());
    if (opts.again) {
        json stack = json::array();
        try {
            json existing = json::parse(read_file(opts.record_path));
            if (existing.is_array()) stack = existing;
            else stack.push_back(existing);
        } catch (const std::exception&) {
            // no existing record: start a fresh stack
        }
        stack.push_back(record_json);
        write_file(opts.record_path, stack.dump(2) + "\n");
    } else {
        write_file(opts.record_path, record_json.dump(2) + "\n");
    }

    const int d0 = depth(host), d1 = depth(watermarked);
    const int t0 = two_qubit_gate_count(host), t1 = two_qubit_gate_count(watermarked);
    std::cout << "embedded " << scheme_name(*scheme) << " watermark: depth " << d0 << " -> "
              << d1 << " (+" << d1 - d0 << "), 2q gates " << t0 << " -> " << t1 << " (+"
              << t1 - t0 << ")\n";
    std::cout << "wrote " << opts.out << " and " << opts.record_path << "\n";

    Report report("embed", opts.common.seed);
    report.input(opts.input);
    report.outputs() = {{"depth_before", d0},
                        {"depth_after", d1},
                        {"two_qubit_before", t0},
                        {"two_qubit_after", t1},
                        {"scheme", std::string(scheme_name(*scheme))}};
    report.write(opts.common.report_path, opts.common.timed);
    return kExitOk;
}

// ---------------------------------------------------------------- extract

struct ExtractOpts {
    CommonOpts common;
    std::string base, suspect, out = "finding.json";
    bool rebase_ibm = false;
};

int run_extract(const ExtractOpts& opts) {
    const Circuit base = load_circuit(opts.base);
    const Circuit suspect = load_circuit(opts.suspect);
    RetrieveOptions retrieve_opts;
    if (opts.rebase_ibm) retrieve_opts.common_basis = BasisSet::preset("ibm");

    const auto start = std::chrono::steady_clock::now();
    const WatermarkFinding finding = retrieve(base, suspect, retrieve_opts);
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();

    write_file(opts.out, finding.to_json_text() + "\n");
    if (finding.empty()) std::cout << "no watermark evidence\n";
    else std::cout << "found " << finding.gates.size() << " watermark gate(s)\n";
    if (opts.common.timed) std::cout << "retrieve wall time: " << ms << " ms\n";

    Report report("extract", opts.common.seed);
    report.input(opts.base);
    report.input(opts.suspect);
    report.outputs() = {{"watermark_gates", finding.gates.size()},
                        {"base_surplus", finding.unmatched_base_surplus.size()}};
    if (opts.common.timed) report.outputs()["retrieve_ms"] = ms;
    report.write(opts.common.report_path, opts.common.timed);
    return kExitOk;
}

// ---------------------------------------------------------------- verify

int run_verify(const std::string& finding_path, const std::string& record_path,
               bool rebase_ibm) {
    const auto finding = WatermarkFinding::from_json_text(read_file(finding_path));
    json records = json::parse(read_file(record_path));
    if (!records.is_array()) records = json::array({records});
    std::optional<BasisSet> basis;
    if (rebase_ibm) basis = BasisSet::preset("ibm");

    int exit_code = kExitOk;
    for (size_t i = 0; i < records.size(); ++i) {
        const auto record = WatermarkRecord::from_json_text(records[i].dump());
        const auto result = verify(finding, record, basis);
        std::cout << "record " << i + 1 << "/" << records.size() << ": "
                  << verify_status_name(result.status);
        if (!result.missing.empty()) std::cout << " (" << result.missing.size() << " missing)";
        std::cout << "\n";
        if (result.status == VerifyStatus::Absent) exit_code = kExitAbsent;
        else if (result.status == VerifyStatus::Partial && exit_code != kExitAbsent)
            exit_code = kExitPartial;
    }
    return exit_code;
}

// ---------------------------------------------------------------- bench

struct BenchOpts {
    CommonOpts common;
    std::string fixtures = "fixtures";
    std::string map = "line5";
    std::string noise = "toy";
    uint64_t shots = 1000;
    std::string csv, json_path;
};

struct ManifestFixture {
    std::string name;
    Circuit circuit;
    RotationSpec rotation;
    bool deterministic = false;
};

std::vector<ManifestFixture> load_manifest(const std::string& dir) {
    const json manifest = json::parse(read_file(dir + "/manifest.json"));
    std::vector<ManifestFixture> fixtures;
    for (const auto& entry : manifest.at("fixtures")) {
        ManifestFixture f;
        f.name = entry.at("name").get<std::string>();
        f.circuit = load_circuit(dir + "/" + entry.at("file").get<std::string>());
        f.deterministic = entry.value("deterministic", false);
        f.rotation.ancillas = entry.at("ancillas").get<std::vector<int>>();
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

int run_bench(const BenchOpts& opts) {
    const auto map = load_map(opts.map);
    const auto noise = noise_from_name(opts.noise);
    const auto fixtures = load_manifest(opts.fixtures);

    json rows = json::array();
    std::ostringstream csv;
    csv << "name,depth_base,depth_wm,two_qubit_base,two_qubit_wm,pst_base,pst_wm,ppa\n";
    std::cout << "name        depth       2q          PST              PPA\n";

    for (const auto& f : fixtures) {
        if (!f.deterministic) continue;
        RandomSpec rnd;
        rnd.seed = derive_seed(opts.common.seed, fnv1a64(f.name));
        rnd.k = 2;
        const auto [wm, record] = embed_combined(f.circuit, f.rotation, rnd);
        const auto base_routed = route(f.circuit, map);
        const auto wm_routed = route(wm, map);

        auto pst_of = [&](const Circuit& routed, uint64_t salt) {
            const std::string reference = ideal_reference_outcome(routed);
            const auto dist = sample(routed, "", opts.shots,
                                     derive_seed(opts.common.seed, salt), noise);
            return pst(dist, reference);
        };
        const double pst_base = pst_of(base_routed.circuit, 11);
        const double pst_wm = pst_of(wm_routed.circuit, 13);
        const double p = ppa(PpaConfig::for_qubits(wm.num_qubits, rnd.k));

        const int db = depth(base_routed.circuit), dw = depth(wm_routed.circuit);
        const int tb = two_qubit_gate_count(base_routed.circuit);
        const int tw = two_qubit_gate_count(wm_routed.circuit);

        char line[160];
        std::snprintf(line, sizeof(line), "%-10s  %3d -> %3d  %3d -> %3d  %.3f -> %.3f   %.3e\n",
                      f.name.c_str(), db, dw, tb, tw, pst_base, pst_wm, p);
        std::cout << line;
        csv << f.name << "," << db << "," << dw << "," << tb << "," << tw << "," << pst_base
            << "," << pst_wm << "," << p << "\n";
        rows.push_back({{"name", f.name},
                        {"depth_base", db},
                        {"depth_wm", dw},
                        {"two_qubit_base", tb},
                        {"two_qubit_wm", tw},
                        {"pst_base", pst_base},
                        {"pst_wm", pst_wm},
                        {"ppa", p}});
    }
    if (!opts.csv.empty()) write_file(opts.csv, csv.str());
    if (!opts.json_path.empty()) write_file(opts.json_path, rows.dump(2) + "\n");

    Report report("bench", opts.common.seed);
    report.input(opts.fixtures + "/manifest.json");
    report.outputs() = {{"rows", rows}, {"map", opts.map}, {"noise", opts.noise},
                        {"shots", opts.shots}};
    report.write(opts.common.report_path, opts.common.timed);
    return kExitOk;
}

// ---------------------------------------------------------------- sweep-phase

struct SweepOpts {
    CommonOpts common;
    std::string input;
    int ancilla = 0;
    std::vector<int> cnot;
    int steps = 24;
    std::vector<std::string> maps{"line5"};
    std::string noise = "none";
    uint64_t shots = 1000;
    std::string csv, json_path;
};

int run_sweep(const SweepOpts& opts) {
    const Circuit host = load_circuit(opts.input);
    std::optional<std::pair<int, int>> cnot;
    if (!opts.cnot.empty()) {
        if (opts.cnot.size() != 2)
            throw CLI::ValidationError("cnot", "--cnot expects control,target");
        cnot = {{opts.cnot[0], opts.cnot[1]}};
    }
    std::vector<SweepConfig> configs;
    for (const auto& name : opts.maps)
        configs.push_back({name, load_map(name), noise_from_name(opts.noise)});

    const auto result =
        phase_sweep(host, opts.ancilla, cnot, opts.steps, configs, opts.shots, opts.common.seed);

    std::ostringstream csv;
    csv << "theta,config,tvd\n";
    for (size_t t = 0; t < result.thetas.size(); ++t)
        for (size_t c = 0; c < configs.size(); ++c)
            csv << format_angle(result.thetas[t]) << "," << configs[c].name << ","
                << result.tvds[t][c] << "\n";
    if (!opts.csv.empty()) write_file(opts.csv, csv.str());

    json summary;
    summary["argmax_theta"] = result.argmax_theta;
    summary["argmax_theta_text"] = format_angle(result.argmax_theta);
    summary["thetas"] = result.thetas;
    summary["sum_over_configs"] = result.sum_over_configs;
    if (!opts.json_path.empty()) write_file(opts.json_path, summary.dump(2) + "\n");

    std::cout << "TVD peaks at theta = " << format_angle(result.argmax_theta) << "\n";

    Report report("sweep-phase", opts.common.seed);
    report.input(opts.input);
    report.outputs() = summary;
    report.write(opts.common.report_path, opts.common.timed);
    return kExitOk;
}

// ---------------------------------------------------------------- qaoa

struct QaoaOpts {
    CommonOpts common;
    std::string graph = "triangle";
    int layers = 2;
    int budget = 4000;
    uint64_t shots = 8192;
    std::string noise = "none";
    std::string watermark = "none";
    int wm_control = 2;
    std::string json_path;
};

int run_qaoa(const QaoaOpts& opts) {
    Graph graph = [&] {
        for (const auto& name : Graph::preset_names())
            if (opts.graph == name) return Graph::preset(name);
        return Graph::from_json_text(read_file(opts.graph));
    }();
    const auto noise = noise_from_name(opts.noise);

    const QaoaParams params = optimize_params(graph, opts.layers, opts.budget, opts.common.seed);
    const Circuit circuit = build_qaoa_circuit(graph, params);
    const double ar_base = approximation_ratio(graph, circuit, opts.shots,
                                               derive_seed(opts.common.seed, 1), noise);

    json out;
    out["graph"] = json::parse(graph.to_json_text());
    out["layers"] = opts.layers;
    out["gammas"] = params.gammas;
    out["betas"] = params.betas;
    out["ar_baseline"] = ar_base;
    out["maxcut"] = brute_force_maxcut(graph).first;

    std::cout << "optimized " << opts.layers << "-layer maxcut on " << opts.graph
              << ": AR = " << ar_base << "\n";

    if (opts.watermark != "none") {
        Circuit wm;
        WatermarkRecord record;
        if (opts.watermark == "rotation") {
            RotationSpec spec; // QAOA qubits are all functional: fresh ancilla
            spec.theta = M_PI;
            spec.cnot = {{opts.wm_control % graph.n_nodes, graph.n_nodes}};
            std::tie(wm, record) = embed_rotation(circuit, spec);
        } else if (opts.watermark == "random") {
            RandomSpec spec;
            spec.seed = opts.common.seed;
            spec.k = 2;
            std::tie(wm, record) = embed_random(circuit, spec);
        } else {
            throw CLI::ValidationError("watermark", "unknown watermark '" + opts.watermark +
                                                        "' (none|rotation|random)");
        }
        const double ar_wm = approximation_ratio(graph, wm, opts.shots,
                                                 derive_seed(opts.common.seed, 2), noise);
        out["ar_watermarked"] = ar_wm;
        out["watermark"] = opts.watermark;
        std::cout << "with " << opts.watermark << " watermark: AR = " << ar_wm << "\n";
    }
    if (!opts.json_path.empty()) write_file(opts.json_path, out.dump(2) + "\n");

    Report report("qaoa", opts.common.seed);
    report.outputs() = out;
    report.write(opts.common.report_path, opts.common.timed);
    return kExitOk;
}

// ---------------------------------------------------------------- transpile

struct TranspileOpts {
    CommonOpts common;
    std::string input, out = "transpiled.qasm";
    std::string basis = "extended";
    std::string map;
    bool expand_swaps = false;
    bool optimize_flag = false;
};

int run_transpile(const TranspileOpts& opts) {
    const Circuit input = load_circuit(opts.input);
    Circuit work = decompose_to_basis(input, BasisSet::preset(opts.basis));
    int swaps = 0;
    if (!opts.map.empty()) {
        const auto routed = route(work, load_map(opts.map), {}, opts.expand_swaps);
        swaps = static_cast<int>(routed.swap_log.size());
        work = routed.circuit;
    }
    if (opts.optimize_flag) work = optimize(work);
    write_file(opts.out, emit(work).text);

    std::cout << "depth " << depth(input) << " -> " << depth(work) << ", 2q gates "
              << two_qubit_gate_count(input) << " -> " << two_qubit_gate_count(work)
              << ", swaps inserted " << swaps << "\n";

    Report report("transpile", opts.common.seed);
    report.input(opts.input);
    report.outputs() = {{"depth", depth(work)},
                        {"two_qubit", two_qubit_gate_count(work)},
                        {"swaps", swaps},
                        {"basis", opts.basis}};
    report.write(opts.common.report_path, opts.common.timed);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum circuit watermarking toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", QCMARK_VERSION);

    EmbedOpts embed_opts;
    auto* embed_cmd = app.add_subcommand("embed", "embed a watermark into a circuit");
    embed_cmd->add_option("input", embed_opts.input, "input QASM file")->required();
    embed_cmd->add_option("--scheme", embed_opts.scheme, "rotation|random|combined")->required();
    embed_cmd->add_option("--theta", embed_opts.theta, "rotation phase (e.g. pi, pi/2, 1.57)");
    embed_cmd->add_option("--ancilla", embed_opts.ancillas, "declared ancilla qubits")
        ->delimiter(',');
    embed_cmd->add_option("--target", embed_opts.target, "rotation target qubit");
    embed_cmd->add_option("--cnot", embed_opts.cnot, "entangling CNOT control,target")
        ->delimiter(',');
    embed_cmd->add_option("--k", embed_opts.k, "random gates to draw");
    embed_cmd->add_option("--insert-at", embed_opts.insert_at,
                          "random block insertion index (default: middle)");
    embed_cmd->add_flag("--again", embed_opts.again,
                        "stack another watermark: append to the record file");
    embed_cmd->add_option("--out", embed_opts.out, "output QASM path");
    embed_cmd->add_option("--record", embed_opts.record_path, "watermark record JSON path");
    add_common(embed_cmd, embed_opts.common);

    ExtractOpts extract_opts;
    auto* extract_cmd =
        app.add_subcommand("extract", "retrieve watermark gates from a suspect circuit");
    extract_cmd->add_option("base", extract_opts.base, "baseline QASM file")->required();
    extract_cmd->add_option("suspect", extract_opts.suspect, "suspect QASM file")->required();
    extract_cmd->add_option("--out", extract_opts.out, "finding JSON path");
    extract_cmd->add_flag("--rebase-ibm", extract_opts.rebase_ibm,
                          "decompose both circuits to the ibm basis before diffing");
    add_common(extract_cmd, extract_opts.common);

    std::string verify_finding, verify_record;
    bool verify_rebase = false;
    auto* verify_cmd =
        app.add_subcommand("verify", "check a finding against a watermark record");
    verify_cmd->add_option("finding", verify_finding, "finding JSON")->required();
    verify_cmd->add_option("record", verify_record, "record JSON (object or array)")->required();
    verify_cmd->add_flag("--rebase-ibm", verify_rebase,
                         "decompose record entries to the ibm basis before matching "
                         "(pair with extract --rebase-ibm)");

    BenchOpts bench_opts;
    auto* bench_cmd = app.add_subcommand("bench", "baseline vs watermarked fixture metrics");
    bench_cmd->add_option("--fixtures", bench_opts.fixtures, "fixture directory with manifest");
    bench_cmd->add_option("--map", bench_opts.map, "coupling preset or JSON file");
    bench_cmd->add_option("--noise", bench_opts.noise, "none|toy");
    bench_cmd->add_option("--shots", bench_opts.shots, "shots per PST measurement");
    bench_cmd->add_option("--csv", bench_opts.csv, "CSV output path");
    bench_cmd->add_option("--json", bench_opts.json_path, "JSON output path");
    add_common(bench_cmd, bench_opts.common);

    SweepOpts sweep_opts;
    auto* sweep_cmd = app.add_subcommand("sweep-phase", "rotation phase vs ancilla TVD sweep");
    sweep_cmd->add_option("input", sweep_opts.input, "host QASM file")->required();
    sweep_cmd->add_option("--ancilla", sweep_opts.ancilla, "ancilla qubit under test")
        ->required();
    sweep_cmd->add_option("--cnot", sweep_opts.cnot, "entangling CNOT control,target")
        ->delimiter(',');
    sweep_cmd->add_option("--steps", sweep_opts.steps, "grid points over [0, 2pi)");
    sweep_cmd->add_option("--maps", sweep_opts.maps, "coupling presets, comma separated")
        ->delimiter(',');
    sweep_cmd->add_option("--noise", sweep_opts.noise, "none|toy");
    sweep_cmd->add_option("--shots", sweep_opts.shots, "shots per noisy config");
    sweep_cmd->add_option("--csv", sweep_opts.csv, "CSV output path (theta,config,tvd)");
    sweep_cmd->add_option("--json", sweep_opts.json_path, "JSON summary path");
    add_common(sweep_cmd, sweep_opts.common);

    QaoaOpts qaoa_opts;
    auto* qaoa_cmd = app.add_subcommand("qaoa", "optimize maxcut QAOA and measure AR");
    qaoa_cmd->add_option("--graph", qaoa_opts.graph, "preset name or graph JSON file");
    qaoa_cmd->add_option("--layers", qaoa_opts.layers, "QAOA layer count p");
    qaoa_cmd->add_option("--budget", qaoa_opts.budget, "optimizer evaluation budget");
    qaoa_cmd->add_option("--shots", qaoa_opts.shots, "shots for AR (0 = exact)");
    qaoa_cmd->add_option("--noise", qaoa_opts.noise, "none|toy");
    qaoa_cmd->add_option("--watermark", qaoa_opts.watermark, "none|rotation|random");
    qaoa_cmd->add_option("--wm-control", qaoa_opts.wm_control,
                         "CNOT control node for the rotation watermark");
    qaoa_cmd->add_option("--json", qaoa_opts.json_path, "JSON output path");
    add_common(qaoa_cmd, qaoa_opts.common);

    TranspileOpts transpile_opts;
    auto* transpile_cmd = app.add_subcommand("transpile", "decompose, route, and optimize");
    transpile_cmd->add_option("input", transpile_opts.input, "input QASM file")->required();
    transpile_cmd->add_option("--basis", transpile_opts.basis, "ibm|extended");
    transpile_cmd->add_option("--map", transpile_opts.map, "coupling preset or JSON file");
    transpile_cmd->add_flag("--expand-swaps", transpile_opts.expand_swaps,
                            "emit inserted SWAPs as 3 CX");
    transpile_cmd->add_flag("--optimize", transpile_opts.optimize_flag,
                            "run peephole optimization");
    transpile_cmd->add_option("--out", transpile_opts.out, "output QASM path");
    add_common(transpile_cmd, transpile_opts.common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitBadArguments;
    }

    try {
        if (embed_cmd->parsed()) return run_embed(embed_opts);
        if (extract_cmd->parsed()) return run_extract(extract_opts);
        if (verify_cmd->parsed())
            return run_verify(verify_finding, verify_record, verify_rebase);
        if (bench_cmd->parsed()) return run_bench(bench_opts);
        if (sweep_cmd->parsed()) return run_sweep(sweep_opts);
        if (qaoa_cmd->parsed()) return run_qaoa(qaoa_opts);
        if (transpile_cmd->parsed()) return run_transpile(transpile_opts);
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return kExitBadArguments;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParseFailure;
    }
    return kExitOk;
}
