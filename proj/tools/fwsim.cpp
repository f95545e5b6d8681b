// Copyright 2026 The fwsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fwsim/fwsim.hpp"
#include "fwsim/json_io.hpp"

using namespace fwsim;
using json = nlohmann::ordered_json;

namespace {

/// JSON option files. Top-level keys go to the invoked subcommand; an object
/// value keyed by a subcommand name addresses that subcommand explicitly.
class JsonConfig : public CLI::Config {
   public:
    explicit JsonConfig(const CLI::App *root) : root_(root) {
    }

    std::string to_config(const CLI::App *app, bool default_also, bool, std::string) const override {
        json out = json::object();
        for (const CLI::Option *opt : app->get_options({})) {
            if (opt->get_lnames().empty() || !opt->get_configurable()) {
                continue;
            }
            const std::string &name = opt->get_lnames()[0];
            if (opt->count() > 0) {
                auto results = opt->results();
                if (opt->get_type_size() == 0) {
                    out[name] = true;
                } else if (results.size() == 1) {
                    out[name] = results[0];
                } else {
                    out[name] = results;
                }
            } else if (default_also && !opt->get_default_str().empty()) {
                out[name] = opt->get_default_str();
            }
        }
        return out.dump(2) + "\n";
    }

    std::vector<CLI::ConfigItem> from_config(std::istream &in) const override {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(in);
        } catch (const nlohmann::json::exception &e) {
            throw CLI::ConversionError(std::string("config file is not valid JSON: ") + e.what());
        }
        if (!j.is_object()) {
            throw CLI::ConversionError("config file must hold a JSON object");
        }
        std::vector<std::string> active;
        for (const CLI::App *sub : root_->get_subcommands()) {
            active.push_back(sub->get_name());
        }
        std::vector<CLI::ConfigItem> items;
        flatten(j, active, items);
        return items;
    }

   private:
    static void flatten(const nlohmann::json &j, const std::vector<std::string> &parents,
                        std::vector<CLI::ConfigItem> &items) {
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (it->is_object()) {
                flatten(*it, {it.key()}, items);
                continue;
            }
            CLI::ConfigItem item;
            item.parents = parents;
            item.name = it.key();
            auto add = [&](const nlohmann::json &v) {
                if (v.is_string()) {
                    item.inputs.push_back(v.get<std::string>());
                } else if (v.is_boolean()) {
                    item.inputs.push_back(v.get<bool>() ? "true" : "false");
                } else if (v.is_number()) {
                    item.inputs.push_back(v.dump());
                } else {
                    throw CLI::ConversionError("config value for '" + it.key() + "' must be a scalar or a list");
                }
            };
            if (it->is_array()) {
                for (const auto &v : *it) {
                    add(v);
                }
            } else {
                add(*it);
            }
            items.push_back(std::move(item));
        }
    }

    const CLI::App *root_;
};

struct InputOptions {
    std::string circuit_path;
    std::string states_path;
    std::string input_state;
    std::string representation = "auto";
};

void add_input_options(CLI::App *sub, InputOptions &in) {
    sub->add_option("--circuit", in.circuit_path, "Circuit file ('qubits n' then one gate per line)")->required();
    auto *st = sub->add_option("--states", in.states_path, "Input state file, one single-qubit state per line");
    auto *is = sub->add_option("--input-state", in.input_state,
                               "Same state on every qubit: zero, A, 'equatorial THETA' or 'bloch X Y Z'");
    st->excludes(is);
    sub->add_option("--representation", in.representation, "Wigner representation of the input")
        ->check(CLI::IsMember({"auto", "single", "cube"}))
        ->capture_default_str();
}

std::string read_file(const std::string &path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        throw UsageError("cannot open '" + path + "'");
    }
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

struct Inputs {
    CliffordCircuit circuit;
    std::vector<SingleQubitState> states;
    WignerDistribution dist;
};

RepresentationMode representation_mode(const std::string &s) {
    if (s == "single") {
        return RepresentationMode::single_frame;
    }
    if (s == "cube") {
        return RepresentationMode::cube;
    }
    return RepresentationMode::automatic;
}

Inputs load_inputs(const InputOptions &in) {
    CliffordCircuit c = parse_circuit(read_file(in.circuit_path));
    std::vector<SingleQubitState> states;
    if (!in.states_path.empty()) {
        states = parse_states(read_file(in.states_path));
    } else {
        states.assign(c.n, in.input_state.empty() ? SingleQubitState::zero() : parse_state_spec(in.input_state));
    }
    if (states.size() != c.n) {
        throw UsageError("state file lists " + std::to_string(states.size()) + " qubits but the circuit has " +
                         std::to_string(c.n));
    }
    auto dist = build_distribution(states, representation_mode(in.representation));
    return {std::move(c), std::move(states), std::move(dist)};
}

void emit(const json &j) {
    std::cout << j.dump(2) << "\n";
}

json histogram_with_keys(const std::map<std::string, uint64_t> &h) {
    return histogram_to_json(h);
}

int run_gen(const ArchitectureSpec &spec) {
    std::cout << format_circuit(build_circuit(spec));
    return 0;
}

struct SampleOptions {
    uint64_t shots = 1000;
    uint64_t seed = 0;
    bool linear_functions = false;
};

int run_sample(const InputOptions &io, const SampleOptions &opt, size_t threads) {
    Inputs in = load_inputs(io);
    auto prop = propagate_frame(in.circuit, initial_frame(in.dist));
    json out;
    if (opt.linear_functions) {
        CoverResult cover = simulatable_set(prop.frame, CoverMode::born);
        LinearFunctionSampler sampler(prop.smap, cover, in.dist);
        out["mode"] = "linear_functions";
        out["retained"] = cover.retained_qubits;
        out["functions"] = sampler.functions();
        out["shots"] = opt.shots;
        out["seed"] = opt.seed;
        out["histogram"] = histogram_with_keys(sample_histogram(sampler, opt.shots, opt.seed, threads));
    } else {
        CoverResult cover = simulatable_set(prop.frame, CoverMode::weak);
        WeakSimulator sim(prop.smap, cover, in.dist);
        out["mode"] = "weak";
        out["retained"] = cover.retained_qubits;
        out["shots"] = opt.shots;
        out["seed"] = opt.seed;
        out["histogram"] = histogram_with_keys(sample_histogram(sim, opt.shots, opt.seed, threads));
    }
    emit(out);
    return 0;
}

struct EstimateOptions {
    std::string method = "wigner";
    uint64_t samples = 10000;
    uint64_t seed = 0;
    std::string target;
    std::vector<uint32_t> qubits;
    bool exact = false;
};

int run_estimate(const InputOptions &io, const EstimateOptions &opt, size_t threads) {
    Inputs in = load_inputs(io);
    auto prop = propagate_frame(in.circuit, initial_frame(in.dist));
    std::vector<uint32_t> qubits = opt.qubits;
    FramePolynomial reduced(in.circuit.n);
    if (qubits.empty()) {
        CoverResult born = simulatable_set(prop.frame, CoverMode::born);
        qubits = born.retained_qubits;
        reduced = born.reduced_frame;
    } else {
        reduced = reduce_to_qubits(prop.frame, qubits);
    }
    std::string target = opt.target.empty() ? std::string(qubits.size(), '0') : opt.target;
    EstimateReport report;
    if (opt.method == "wigner") {
        WignerEstimator est(prop.smap, reduced, qubits, in.dist);
        report = wigner_estimate(est, target, opt.samples, opt.seed, threads);
    } else {
        PauliEstimator est(in.circuit, in.states, qubits);
        report = pauli_estimate(est, target, opt.samples, opt.seed, threads);
    }
    json out = report_to_json(report);
    if (opt.exact) {
        auto p = exact_born(in.circuit, in.states, qubits);
        auto v = variance_report(in.circuit, in.states, qubits);
        size_t j = 0;
        for (size_t t = 0; t < target.size(); t++) {
            j |= size_t{target[t] == '1'} << t;
        }
        out["exact"] = json{{"probability", p[j]},
                            {"collision", v.collision},
                            {"var_pauli", v.rows[j].var_pauli},
                            {"delta_pauli", v.delta_pauli},
                            {"delta_wigner", v.delta_wigner}};
    }
    emit(out);
    return 0;
}

struct CoverOptions {
    InputOptions io;
    std::string frame;
    size_t frame_qubits = 0;
    std::string mode = "weak";
};

int run_cover(const CoverOptions &opt) {
    CoverMode mode = opt.mode == "born" ? CoverMode::born : CoverMode::weak;
    FramePolynomial final_frame(1);
    if (!opt.frame.empty()) {
        if (opt.frame_qubits == 0) {
            throw UsageError("--frame needs --qubits-count");
        }
        final_frame = parse_frame_polynomial(opt.frame, opt.frame_qubits);
    } else {
        if (opt.io.circuit_path.empty()) {
            throw UsageError("cover needs --circuit or --frame");
        }
        Inputs in = load_inputs(opt.io);
        final_frame = propagate_frame(in.circuit, initial_frame(in.dist)).frame;
    }
    emit(cover_to_json(simulatable_set(final_frame, mode)));
    return 0;
}

int run_scan_cmd(ScanConfig cfg, const std::string &mode, size_t threads) {
    cfg.mode = mode == "born" ? CoverMode::born : CoverMode::weak;
    std::cout << format_scan_csv(run_scan(cfg, threads), cfg);
    return 0;
}

struct VerifyOptions {
    InputOptions io;
    size_t random_qubits = 0;
    size_t random_gates = 12;
    uint64_t seed = 0;
};

int run_verify(const VerifyOptions &opt) {
    CliffordCircuit c(1);
    std::vector<SingleQubitState> states;
    if (opt.random_qubits > 0) {
        if (!opt.io.circuit_path.empty()) {
            throw UsageError("--random excludes --circuit");
        }
        Rng rng(opt.seed);
        c = CliffordCircuit(opt.random_qubits);
        c.gates.clear();
        static const GateKind kinds[] = {GateKind::H, GateKind::S, GateKind::X, GateKind::Z, GateKind::CNOT, GateKind::CZ};
        for (size_t g = 0; g < opt.random_gates; g++) {
            GateKind k = kinds[uniform_below(rng, c.n >= 2 ? 6 : 4)];
            uint32_t a = static_cast<uint32_t>(uniform_below(rng, c.n));
            if (gate_arity(k) == 1) {
                c.append(Gate::one(k, a));
            } else {
                uint32_t b = static_cast<uint32_t>(uniform_below(rng, c.n - 1));
                c.append(Gate::two(k, a, b >= a ? b + 1 : b));
            }
        }
        SingleQubitState s = opt.io.input_state.empty() ? SingleQubitState::magic_a() : parse_state_spec(opt.io.input_state);
        states.assign(c.n, s);
    } else {
        if (opt.io.circuit_path.empty()) {
            throw UsageError("verify needs --circuit or --random");
        }
        Inputs in = load_inputs(opt.io);
        c = in.circuit;
        states = in.states;
    }
    auto results = run_verification(c, states, opt.seed);
    json checks = json::array();
    bool ok = true;
    for (const auto &r : results) {
        checks.push_back(json{{"name", r.name}, {"status", status_name(r.status)}, {"detail", r.detail}});
        ok &= r.status != CheckStatus::fail;
    }
    emit(json{{"qubits", c.n}, {"gates", c.gates.size()}, {"passed", ok}, {"checks", checks}});
    return ok ? 0 : 1;
}

int fail(int code, const char *kind, const std::string &message, std::optional<size_t> qubit = std::nullopt) {
    json err{{"error", kind}, {"message", message}};
    if (qubit) {
        err["qubit"] = *qubit;
    }
    std::cerr << err.dump() << "\n";
    return code;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Framed Wigner function simulator for Clifford circuits"};
    app.require_subcommand(1);
    app.fallthrough();
    app.config_formatter(std::make_shared<JsonConfig>(&app));
    app.set_config("--config", "", "JSON file with option values");
    size_t threads = default_thread_count();
    app.add_option("--threads", threads, "Worker threads (default: FW_THREADS or hardware concurrency)")
        ->check(CLI::PositiveNumber);

    ArchitectureSpec gen_spec;
    std::string gen_arch = "ring1d";
    auto *gen = app.add_subcommand("gen", "Generate a random Clifford circuit");
    gen->add_option("--arch", gen_arch)->check(CLI::IsMember({"ring1d", "complete"}))->capture_default_str();
    gen->add_option("--n", gen_spec.n, "Qubit count")->required();
    gen->add_option("--alpha", gen_spec.alpha, "Two-qubit gate count L = round(alpha n ln n)")->required();
    gen->add_option("--seed", gen_spec.seed)->capture_default_str();

    InputOptions sample_io;
    SampleOptions sample_opt;
    auto *sample_cmd = app.add_subcommand("sample", "Sample marginal outcomes on the simulatable set");
    add_input_options(sample_cmd, sample_io);
    sample_cmd->add_option("--shots", sample_opt.shots)->capture_default_str();
    sample_cmd->add_option("--seed", sample_opt.seed)->capture_default_str();
    sample_cmd->add_flag("--linear-functions", sample_opt.linear_functions,
                         "Sample linear functions of outcomes on the born-mode set");

    InputOptions est_io;
    EstimateOptions est_opt;
    auto *est = app.add_subcommand("estimate", "Estimate a marginal Born probability");
    add_input_options(est, est_io);
    est->add_option("--method", est_opt.method)->check(CLI::IsMember({"wigner", "pauli"}))->capture_default_str();
    est->add_option("--samples", est_opt.samples)->capture_default_str();
    est->add_option("--seed", est_opt.seed)->capture_default_str();
    est->add_option("--target", est_opt.target, "Outcome bits, one per qubit in --qubits (default all zeros)");
    est->add_option("--qubits", est_opt.qubits, "Qubit set (default: born-mode retained set)")->delimiter(',');
    est->add_flag("--exact", est_opt.exact, "Also report the dense-oracle probability and variances");

    CoverOptions cover_opt;
    auto *cover = app.add_subcommand("cover", "Greedy cover of the final frame");
    cover->add_option("--circuit", cover_opt.io.circuit_path);
    auto *cst = cover->add_option("--states", cover_opt.io.states_path);
    auto *cis = cover->add_option("--input-state", cover_opt.io.input_state);
    cst->excludes(cis);
    cover->add_option("--representation", cover_opt.io.representation)
        ->check(CLI::IsMember({"auto", "single", "cube"}))
        ->capture_default_str();
    auto *frame_opt = cover->add_option("--frame", cover_opt.frame, "Final frame polynomial text");
    cover->add_option("--qubits-count", cover_opt.frame_qubits, "Qubit count for --frame");
    frame_opt->excludes("--circuit");
    cover->add_option("--mode", cover_opt.mode)->check(CLI::IsMember({"weak", "born"}))->capture_default_str();

    ScanConfig scan_cfg;
    std::string scan_arch = "ring1d", scan_mode = "weak";
    auto *scan = app.add_subcommand("scan", "N_sim scan over random circuits (CSV)");
    scan->add_option("--arch", scan_arch)->check(CLI::IsMember({"ring1d", "complete"}))->capture_default_str();
    scan->add_option("--n", scan_cfg.ns, "Qubit counts")->required()->delimiter(',');
    scan->add_option("--alpha", scan_cfg.alphas, "Alpha values")->required()->delimiter(',');
    scan->add_option("--replicates", scan_cfg.replicates)->check(CLI::PositiveNumber)->capture_default_str();
    scan->add_option("--seed", scan_cfg.seed)->capture_default_str();
    scan->add_option("--mode", scan_mode)->check(CLI::IsMember({"weak", "born"}))->capture_default_str();
    scan->add_flag("--timing", scan_cfg.timing, "Record wall-clock time per circuit (breaks byte determinism)");

    VerifyOptions verify_opt;
    auto *verify = app.add_subcommand("verify", "Dense-oracle identity checks");
    verify->add_option("--circuit", verify_opt.io.circuit_path);
    auto *vst = verify->add_option("--states", verify_opt.io.states_path);
    auto *vis = verify->add_option("--input-state", verify_opt.io.input_state);
    vst->excludes(vis);
    auto *vr = verify->add_option("--random", verify_opt.random_qubits, "Check a random circuit on this many qubits");
    vr->excludes("--circuit");
    verify->add_option("--gates", verify_opt.random_gates, "Gate count for --random")->capture_default_str();
    verify->add_option("--seed", verify_opt.seed)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*gen) {
            gen_spec.kind = parse_architecture(gen_arch);
            return run_gen(gen_spec);
        }
        if (*sample_cmd) {
            return run_sample(sample_io, sample_opt, threads);
        }
        if (*est) {
            return run_estimate(est_io, est_opt, threads);
        }
        if (*cover) {
            return run_cover(cover_opt);
        }
        if (*scan) {
            scan_cfg.arch = parse_architecture(scan_arch);
            return run_scan_cmd(scan_cfg, scan_mode, threads);
        }
        if (*verify) {
            return run_verify(verify_opt);
        }
    } catch (const NeedMoreTracing &e) {
        return fail(3, "need_more_tracing", e.what());
    } catch (const NegativeRepresentation &e) {
        return fail(3, "negative_representation", e.what(), e.qubit);
    } catch (const ParseError &e) {
        return fail(2, "parse_error", e.what());
    } catch (const Unsupported &e) {
        return fail(2, "unsupported", e.what());
    } catch (const UsageError &e) {
        return fail(2, "usage_error", e.what());
    }
    return 2;
}
