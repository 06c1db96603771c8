// Copyright 2026 The SBQS Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sbqs/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "sbqs/errors.hpp"
#include "sbqs/oracle.hpp"

namespace sbqs {

using nlohmann::json;

namespace {

const std::set<std::string> kConfigFields = {
    "model",  "decomposition",          "shift_to_positive",      "beta",     "N",   "strategy",
    "mode",   "trials",                 "seed",                   "initial_state", "epsilon",
    "ground_space_tolerance", "max_faithful_dimension", "out_dir", "svg",      "parallel"};

// Collects every problem before throwing, so one run of the CLI reports all.
class Problems {
   public:
    void add(std::string msg) {
        list_.push_back(std::move(msg));
    }
    bool empty() const {
        return list_.empty();
    }
    [[noreturn]] void raise(std::string_view source) const {
        std::ostringstream ss;
        ss << source << ": invalid configuration";
        for (const auto &p : list_) {
            ss << "\n  - " << p;
        }
        throw ConfigError(ss.str());
    }

   private:
    std::vector<std::string> list_;
};

template <typename T>
std::optional<T> get(const json &obj, const std::string &key, Problems &problems, std::string_view where = "") {
    auto it = obj.find(key);
    if (it == obj.end()) {
        return std::nullopt;
    }
    try {
        return it->get<T>();
    } catch (const json::exception &) {
        problems.add("field '" + std::string(where) + key + "' has the wrong type (" + it->type_name() + ")");
        return std::nullopt;
    }
}

void reject_unknown(const json &obj, const std::set<std::string> &known, Problems &problems, std::string_view where) {
    for (const auto &[key, _] : obj.items()) {
        if (!known.count(key)) {
            problems.add("unknown field '" + std::string(where) + key + "'");
        }
    }
}

std::optional<ModelSpec> parse_model(const json &m, Problems &problems) {
    if (!m.is_object()) {
        problems.add("field 'model' must be an object");
        return std::nullopt;
    }
    auto kind = get<std::string>(m, "model", problems, "model.");
    if (!kind) {
        problems.add("field 'model.model' is required (\"ising\" or \"pauli\")");
        return std::nullopt;
    }
    ModelSpec spec;
    if (*kind == "ising") {
        reject_unknown(m, {"model", "n", "J", "B", "boundary"}, problems, "model.");
        spec.kind = ModelKind::ising;
        auto n = get<int>(m, "n", problems, "model.");
        auto j = get<double>(m, "J", problems, "model.");
        auto b = get<double>(m, "B", problems, "model.");
        auto boundary = get<std::string>(m, "boundary", problems, "model.").value_or("periodic");
        if (!n || !j || !b) {
            problems.add("ising model needs 'n', 'J' and 'B'");
            return std::nullopt;
        }
        spec.ising = {*n, *j, *b, Boundary::periodic};
        if (boundary == "open") {
            spec.ising.boundary = Boundary::open;
        } else if (boundary != "periodic") {
            problems.add("field 'model.boundary' must be \"open\" or \"periodic\", got \"" + boundary + "\"");
        }
        try {
            spec.ising.validate();
        } catch (const Error &e) {
            problems.add(std::string("model: ") + e.what());
        }
        return spec;
    }
    if (*kind == "pauli") {
        reject_unknown(m, {"model", "n", "terms", "identity_offset"}, problems, "model.");
        spec.kind = ModelKind::pauli;
        auto n = get<int>(m, "n", problems, "model.");
        if (!n) {
            problems.add("pauli model needs 'n'");
            return std::nullopt;
        }
        spec.pauli.n = *n;
        spec.pauli.identity_offset = get<double>(m, "identity_offset", problems, "model.").value_or(0.0);
        auto terms = m.find("terms");
        if (terms == m.end() || !terms->is_array()) {
            problems.add("pauli model needs a 'terms' array");
            return std::nullopt;
        }
        for (std::size_t k = 0; k < terms->size(); ++k) {
            const auto &t = (*terms)[k];
            const std::string where = "model.terms[" + std::to_string(k) + "].";
            if (!t.is_object()) {
                problems.add("field '" + where.substr(0, where.size() - 1) + "' must be an object");
                continue;
            }
            reject_unknown(t, {"string", "coeff"}, problems, where);
            auto s = get<std::string>(t, "string", problems, where);
            auto c = get<double>(t, "coeff", problems, where);
            if (!s || !c) {
                problems.add("term " + std::to_string(k) + " needs 'string' and 'coeff'");
                continue;
            }
            spec.pauli.terms.push_back({*s, *c});
        }
        try {
            spec.pauli.validate();
        } catch (const Error &e) {
            problems.add(std::string("model: ") + e.what());
        }
        return spec;
    }
    problems.add("field 'model.model' must be \"ising\" or \"pauli\", got \"" + *kind + "\"");
    return std::nullopt;
}

std::vector<double> default_betas() {
    std::vector<double> b;
    for (int k = 0; k <= 8; ++k) {
        b.push_back(0.25 * k);
    }
    return b;
}

std::optional<std::vector<double>> parse_betas(const json &v, Problems &problems) {
    if (v.is_array()) {
        std::vector<double> out;
        for (const auto &x : v) {
            if (!x.is_number()) {
                problems.add("field 'beta' must contain numbers only");
                return std::nullopt;
            }
            out.push_back(x.get<double>());
        }
        return out;
    }
    if (v.is_object()) {
        reject_unknown(v, {"start", "stop", "step"}, problems, "beta.");
        auto start = get<double>(v, "start", problems, "beta.");
        auto stop = get<double>(v, "stop", problems, "beta.");
        auto step = get<double>(v, "step", problems, "beta.");
        if (!start || !stop || !step) {
            problems.add("field 'beta' as a range needs 'start', 'stop' and 'step'");
            return std::nullopt;
        }
        if (!(*step > 0.0) || *stop < *start) {
            problems.add("field 'beta' range needs step > 0 and stop >= start");
            return std::nullopt;
        }
        const auto count = static_cast<long>(std::floor((*stop - *start) / *step + 1e-9)) + 1;
        if (count > 100000) {
            problems.add("field 'beta' range has too many points");
            return std::nullopt;
        }
        std::vector<double> out;
        for (long k = 0; k < count; ++k) {
            out.push_back(*start + static_cast<double>(k) * *step);
        }
        return out;
    }
    problems.add("field 'beta' must be an array or a {start, stop, step} object");
    return std::nullopt;
}

std::string location_of(std::string_view text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t k = 0; k < byte && k < text.size(); ++k) {
        if (text[k] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return std::to_string(line) + ":" + std::to_string(col);
}

ComplexMatrix source_hamiltonian(const ModelSpec &m) {
    return m.kind == ModelKind::ising ? densify(build_ising(m.ising)) : densify(m.pauli);
}

DensityMatrix initial_state(const std::string &spec, int n) {
    const std::size_t dim = std::size_t{1} << n;
    if (spec == "uniform") {
        return DensityMatrix::from_pure(PureState::uniform(dim));
    }
    std::size_t index = 0;
    for (char c : spec) {
        index = (index << 1) | static_cast<std::size_t>(c == '1');
    }
    return DensityMatrix::from_pure(PureState::basis(dim, index));
}

}  // namespace

std::vector<std::string> ExperimentConfig::violations() const {
    std::vector<std::string> out;
    if (betas.empty()) {
        out.push_back("field 'beta' must contain at least one value");
    }
    for (std::size_t k = 0; k < betas.size(); ++k) {
        if (!(betas[k] >= 0.0) || !std::isfinite(betas[k])) {
            out.push_back("field 'beta' values must be finite and >= 0 (index " + std::to_string(k) + ")");
        }
        if (k > 0 && !(betas[k] > betas[k - 1])) {
            out.push_back("field 'beta' must be strictly increasing (index " + std::to_string(k) + ")");
        }
    }
    if (steps < 1) {
        out.push_back("field 'N' must be >= 1");
    }
    if (trials < 1) {
        out.push_back("field 'trials' must be >= 1");
    }
    if (parallel < 1) {
        out.push_back("field 'parallel' must be >= 1");
    }
    if (!(epsilon > 0.0 && epsilon < 2.0)) {
        out.push_back("field 'epsilon' must lie in (0, 2)");
    }
    if (!(ground_space_tolerance >= 0.0)) {
        out.push_back("field 'ground_space_tolerance' must be >= 0");
    }
    if (decomposition == DecompositionKind::ising_local && model.kind != ModelKind::ising) {
        out.push_back("decomposition 'ising-local' requires an ising model");
    }
    if (initial_state != "uniform") {
        const bool bits = !initial_state.empty() &&
                          initial_state.find_first_not_of("01") == std::string::npos &&
                          static_cast<int>(initial_state.size()) == model.qubits();
        if (!bits) {
            out.push_back("field 'initial_state' must be \"uniform\" or a bitstring of length n");
        }
    }
    return out;
}

ExperimentConfig parse_config(std::string_view text, std::string_view source) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error &e) {
        std::ostringstream ss;
        ss << source << ":" << location_of(text, e.byte == 0 ? 0 : e.byte - 1) << ": parse error: " << e.what();
        throw ConfigError(ss.str());
    }
    Problems problems;
    if (!root.is_object()) {
        problems.add("top level must be a JSON object");
        problems.raise(source);
    }
    reject_unknown(root, kConfigFields, problems, "");

    ExperimentConfig c;
    c.betas = default_betas();
    auto model = root.find("model");
    if (model == root.end()) {
        problems.add("field 'model' is required");
    } else if (auto m = parse_model(*model, problems)) {
        c.model = *m;
    }
    c.decomposition =
        c.model.kind == ModelKind::ising ? DecompositionKind::ising_local : DecompositionKind::pauli_generic;
    if (auto d = get<std::string>(root, "decomposition", problems)) {
        if (*d == "ising-local") {
            c.decomposition = DecompositionKind::ising_local;
        } else if (*d == "pauli-generic") {
            c.decomposition = DecompositionKind::pauli_generic;
        } else {
            problems.add("field 'decomposition' must be \"ising-local\" or \"pauli-generic\"");
        }
    }
    c.shift_to_positive = get<bool>(root, "shift_to_positive", problems).value_or(false);
    if (auto b = root.find("beta"); b != root.end()) {
        if (auto betas = parse_betas(*b, problems)) {
            c.betas = *betas;
        }
    }
    if (auto n = get<long long>(root, "N", problems)) {
        c.steps = static_cast<int>(std::clamp<long long>(*n, -1, 1 << 30));
    }
    if (auto s = get<std::string>(root, "strategy", problems)) {
        if (*s == "A") {
            c.strategy = Strategy::A;
        } else if (*s == "B-local") {
            c.strategy = Strategy::B_local;
        } else if (*s == "B-global") {
            c.strategy = Strategy::B_global;
        } else {
            problems.add("field 'strategy' must be \"A\", \"B-local\" or \"B-global\"");
        }
    }
    if (auto m = get<std::string>(root, "mode", problems)) {
        if (*m == "faithful") {
            c.mode = Mode::faithful;
        } else if (*m == "effective") {
            c.mode = Mode::effective;
        } else if (*m == "sampled") {
            c.mode = Mode::sampled;
        } else {
            problems.add("field 'mode' must be \"faithful\", \"effective\" or \"sampled\"");
        }
    }
    if (auto t = get<long long>(root, "trials", problems)) {
        if (*t < 1) {
            problems.add("field 'trials' must be >= 1");
        } else {
            c.trials = static_cast<std::size_t>(*t);
        }
    }
    if (auto s = get<std::uint64_t>(root, "seed", problems)) {
        c.seed = *s;
    }
    c.initial_state = get<std::string>(root, "initial_state", problems).value_or("uniform");
    c.epsilon = get<double>(root, "epsilon", problems).value_or(c.epsilon);
    c.ground_space_tolerance = get<double>(root, "ground_space_tolerance", problems).value_or(c.ground_space_tolerance);
    if (auto m = get<long long>(root, "max_faithful_dimension", problems)) {
        if (*m < 2) {
            problems.add("field 'max_faithful_dimension' must be >= 2");
        } else {
            c.max_faithful_dimension = static_cast<std::size_t>(*m);
        }
    }
    c.out_dir = get<std::string>(root, "out_dir", problems).value_or("");
    c.svg = get<bool>(root, "svg", problems).value_or(false);
    if (auto p = get<long long>(root, "parallel", problems)) {
        if (*p < 1 || *p > 256) {
            problems.add("field 'parallel' must lie in [1, 256]");
        } else {
            c.parallel = static_cast<unsigned>(*p);
        }
    }
    if (problems.empty()) {
        for (auto &v : c.violations()) {
            problems.add(std::move(v));
        }
    }
    if (!problems.empty()) {
        problems.raise(source);
    }
    return c;
}

ExperimentConfig load_config(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError(path.string() + ": cannot open config file");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), path.string());
}

std::string config_to_json(const ExperimentConfig &c) {
    json model;
    if (c.model.kind == ModelKind::ising) {
        model = {{"model", "ising"},
                 {"n", c.model.ising.n},
                 {"J", c.model.ising.J},
                 {"B", c.model.ising.B},
                 {"boundary", std::string(to_string(c.model.ising.boundary))}};
    } else {
        json terms = json::array();
        for (const auto &t : c.model.pauli.terms) {
            terms.push_back({{"string", t.letters}, {"coeff", t.coeff}});
        }
        model = {{"model", "pauli"},
                 {"n", c.model.pauli.n},
                 {"terms", terms},
                 {"identity_offset", c.model.pauli.identity_offset}};
    }
    json j = {{"model", model},
              {"decomposition", std::string(to_string(c.decomposition))},
              {"shift_to_positive", c.shift_to_positive},
              {"beta", c.betas},
              {"N", c.steps},
              {"strategy", std::string(to_string(c.strategy))},
              {"mode", std::string(to_string(c.mode))},
              {"trials", c.trials},
              {"seed", c.seed},
              {"initial_state", c.initial_state},
              {"epsilon", c.epsilon},
              {"ground_space_tolerance", c.ground_space_tolerance},
              {"max_faithful_dimension", c.max_faithful_dimension},
              {"out_dir", c.out_dir},
              {"svg", c.svg},
              {"parallel", c.parallel}};
    return j.dump(2) + "\n";
}

ExperimentSetup prepare_experiment(const ExperimentConfig &config) {
    ExperimentSetup s;
    s.hamiltonian = source_hamiltonian(config.model);
    if (config.decomposition == DecompositionKind::ising_local) {
        s.decomposition = decompose_ising_local(config.model.ising);
    } else {
        s.decomposition = decompose_pauli_generic(config.model.kind == ModelKind::ising ? build_ising(config.model.ising)
                                                                                        : config.model.pauli);
    }
    if (config.shift_to_positive) {
        auto shifted = shift_to_positive(s.hamiltonian);
        s.hamiltonian = std::move(shifted.op);
        s.shift = shifted.shift;
        s.decomposition.identity_offset += s.shift;
    }
    s.reconstruction_residual = frobenius_norm(densify(s.decomposition) - s.hamiltonian);
    s.initial_state = initial_state(config.initial_state, config.model.qubits());
    return s;
}

bool ExperimentResult::all_ok() const {
    return std::all_of(rows.begin(), rows.end(), [](const ResultRow &r) { return r.status.empty(); });
}

ExperimentResult run_experiment(const ExperimentConfig &config) {
    if (auto v = config.violations(); !v.empty()) {
        throw ConfigError("run_experiment: " + v.front());
    }
    const auto setup = prepare_experiment(config);
    const ComplexMatrix h_protocol = protocol_hamiltonian(setup.decomposition);
    const auto spectral = ground(setup.hamiltonian);
    const auto ground_proj = ground_space(setup.hamiltonian, config.ground_space_tolerance);
    const double f0 = std::clamp(std::real(spectral.ground_vector.amplitudes().dot(
                                     setup.initial_state.matrix() * spectral.ground_vector.amplitudes())),
                                 0.0, 1.0);
    const std::size_t terms = setup.decomposition.terms.size();
    const double h_max = setup.decomposition.max_abs_weight();
    EngineOptions options;
    options.max_faithful_dimension = config.max_faithful_dimension;

    ExperimentResult result;
    result.rows.resize(config.betas.size());
    std::mutex warn_mutex;
    std::set<std::string> warnings;

    auto compute_row = [&](std::size_t i) {
        ResultRow row;
        const double beta = config.betas[i];
        row.beta = beta;
        row.ground_space_dim = ground_proj.rank;
        const auto exact = exact_ite(setup.hamiltonian, setup.initial_state, beta);
        row.fidelity_exact_ite_vs_ground = projector_fidelity(ground_proj.projector, exact);
        row.bound_eq15 = sim_distance_bound(terms, beta, h_max, config.steps);
        if (f0 > 0.0 && setup.initial_state.dimension() >= 2) {
            row.fidelity_bound_sm =
                fidelity_lower_bound(beta, spectral.gap, f0, setup.initial_state.dimension(), FidelityBoundVariant::sm);
        }
        ProbabilityEstimate formula;
        switch (config.strategy) {
            case Strategy::A:
                formula = strategyA_probability(h_protocol, setup.initial_state, beta, config.steps, terms);
                break;
            case Strategy::B_global:
                formula = strategyB_probability(h_protocol, setup.initial_state, beta, config.steps, terms);
                break;
            case Strategy::B_local:
                formula = strategyB_local_probability(h_protocol, setup.initial_state, beta, config.steps, terms, false);
                break;
        }
        row.success_prob_formula = formula.value;
        try {
            const auto plan = make_plan(setup.decomposition, beta, config.steps, config.strategy, config.mode);
            if (!plan.warnings.empty()) {
                std::lock_guard lock(warn_mutex);
                warnings.insert(plan.warnings.begin(), plan.warnings.end());
            }
            const std::uint64_t seed = config.seed + i;
            const auto traj = run(plan, setup.initial_state, seed, options);
            const auto &final_state = traj.final_state;
            row.fidelity_sbqs_vs_ground = projector_fidelity(ground_proj.projector, final_state);
            row.bures_sbqs_vs_exact_ite = bures_distance(final_state, exact);
            row.energy_sbqs = energy(setup.hamiltonian, final_state);
            if (config.mode == Mode::faithful) {
                row.success_prob_faithful = traj.ledger.cumulative(ProbabilitySource::faithful_exact);
            }
            if (config.mode == Mode::sampled) {
                row.success_prob_empirical = sample_run(plan, setup.initial_state, config.trials, seed, options).frequency;
            }
        } catch (const ExtinctionError &e) {
            row.status = std::string("extinct: ") + e.what();
        } catch (const PlanError &e) {
            row.status = std::string("plan error: ") + e.what();
        } catch (const CapacityError &e) {
            row.status = std::string("capacity: ") + e.what();
        }
        result.rows[i] = std::move(row);
    };

    const std::size_t width = std::min<std::size_t>(config.parallel, config.betas.size());
    if (width <= 1) {
        for (std::size_t i = 0; i < config.betas.size(); ++i) {
            compute_row(i);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        std::vector<std::thread> workers;
        for (std::size_t w = 0; w < width; ++w) {
            workers.emplace_back([&] {
                for (std::size_t i = next++; i < config.betas.size(); i = next++) {
                    try {
                        compute_row(i);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure) {
                            failure = std::current_exception();
                        }
                    }
                }
            });
        }
        for (auto &t : workers) {
            t.join();
        }
        if (failure) {
            std::rethrow_exception(failure);
        }
    }

    result.warnings.assign(warnings.begin(), warnings.end());
    result.bounds = make_bounds_report(setup.decomposition, setup.initial_state, config.betas.back(), config.steps,
                                       config.epsilon);
    return result;
}

std::vector<BoundsReport> bounds_sweep(const ExperimentConfig &config) {
    const auto setup = prepare_experiment(config);
    std::vector<BoundsReport> out;
    for (double beta : config.betas) {
        out.push_back(make_bounds_report(setup.decomposition, setup.initial_state, beta, config.steps, config.epsilon));
    }
    return out;
}

}  // namespace sbqs
