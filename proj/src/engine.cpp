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

#include "sbqs/engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "sbqs/errors.hpp"

namespace sbqs {

namespace {

ComplexMatrix symmetrized(const ComplexMatrix &m) {
    return (m + m.adjoint()) * 0.5;
}

void require_simulator(const DensityMatrix &sigma, int n_sim) {
    if (n_sim < 1 || n_sim > kMaxQubits) {
        throw CapacityError("simulator register of " + std::to_string(n_sim) + " qubits is unsupported");
    }
    if (sigma.dimension() != (std::size_t{1} << n_sim)) {
        throw DimensionError("simulator state dimension " + std::to_string(sigma.dimension()) +
                             " does not match " + std::to_string(n_sim) + " qubits");
    }
}

void check_extinction(double p, const std::string &where) {
    if (!(p > kExtinctionThreshold)) {
        std::ostringstream ss;
        ss << "post-selection probability " << p << " at " << where << " is below the extinction threshold";
        throw ExtinctionError(ss.str());
    }
}

double draw_unit(std::mt19937_64 &rng) {
    // 53 random bits; portable across standard library implementations.
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Operators needed to execute one term, prepared once per run.
struct PreparedTerm {
    ComplexMatrix rho_full;  // rho embedded on the simulator register
    double delta = 0.0;
    std::optional<KrausSet> channel;
    ComplexMatrix control;  // |psi_delta><psi_delta|
};

PreparedTerm prepare(const ResourceTerm &term, double delta, int n_sim, bool faithful) {
    PreparedTerm p;
    p.rho_full = embed_qubits(term.rho.matrix(), term.support, n_sim);
    p.delta = delta;
    p.control = control_state(delta).projector();
    if (faithful) {
        p.channel = cswap_channel(term.rho, term.support, n_sim);
    }
    return p;
}

// <+| xi |+> over a single leading control qubit; unnormalized.
ComplexMatrix project_plus(const ComplexMatrix &xi, Eigen::Index d) {
    return 0.5 * (xi.block(0, 0, d, d) + xi.block(0, d, d, d) + xi.block(d, 0, d, d) + xi.block(d, d, d, d));
}

ComplexMatrix faithful_substep(const ComplexMatrix &sigma, const PreparedTerm &t) {
    ComplexMatrix xi = apply_channel(*t.channel, kron(t.control, sigma));
    return symmetrized(project_plus(xi, sigma.rows()));
}

ComplexMatrix effective_substep(const ComplexMatrix &sigma, const ComplexMatrix &a) {
    return symmetrized(a * sigma * a);
}

// sum_{a,b} |a><b| (x) I_middle (x) K_ab for K acting on (control, simulator).
ComplexMatrix lift_over_controls(const ComplexMatrix &k, Eigen::Index d, Eigen::Index middle) {
    const Eigen::Index half = middle * d;
    ComplexMatrix out = ComplexMatrix::Zero(2 * half, 2 * half);
    for (Eigen::Index a = 0; a < 2; ++a) {
        for (Eigen::Index b = 0; b < 2; ++b) {
            auto kab = k.block(a * d, b * d, d, d);
            if (kab.isZero(0.0)) {
                continue;
            }
            for (Eigen::Index r = 0; r < middle; ++r) {
                out.block(a * half + r * d, b * half + r * d, d, d) = kab;
            }
        }
    }
    return out;
}

ComplexVector control_projection_vector(std::size_t l, Measurement m) {
    const Eigen::Index size = Eigen::Index{1} << l;
    if (m == Measurement::local) {
        return ComplexVector::Constant(size, std::pow(2.0, -0.5 * static_cast<double>(l)));
    }
    ComplexVector w = ComplexVector::Zero(size);
    const double amp = 1.0 / std::sqrt(static_cast<double>(l) + 1.0);
    w(0) = amp;
    for (std::size_t i = 0; i < l; ++i) {
        w(Eigen::Index{1} << i) = amp;
    }
    return w;
}

double measurement_denominator(std::size_t l, Measurement m) {
    return m == Measurement::global ? static_cast<double>(l) + 1.0 : std::ldexp(1.0, static_cast<int>(l));
}

ComplexMatrix faithful_strategyB(const ComplexMatrix &sigma, std::span<const PreparedTerm> terms,
                                 Measurement measurement, const EngineOptions &options) {
    const Eigen::Index d = sigma.rows();
    const std::size_t l = terms.size();
    const std::size_t total = (std::size_t{1} << std::min<std::size_t>(l, 62)) * static_cast<std::size_t>(d);
    if (l >= 62 || total > options.max_faithful_dimension) {
        std::ostringstream ss;
        ss << "faithful strategy B needs a " << total << "-dimensional register (" << l
           << " controls), above the cap of " << options.max_faithful_dimension << "; use effective mode";
        throw CapacityError(ss.str());
    }
    ComplexMatrix xi = sigma;
    Eigen::Index middle = 1;
    for (const auto &t : terms) {
        xi = kron(t.control, xi);
        ComplexMatrix next = ComplexMatrix::Zero(xi.rows(), xi.cols());
        for (const auto &k : t.channel->ops) {
            ComplexMatrix lifted = lift_over_controls(k, d, middle);
            next.noalias() += lifted * xi * lifted.adjoint();
        }
        xi = std::move(next);
        middle *= 2;
    }
    ComplexMatrix w = kron(control_projection_vector(l, measurement), ComplexMatrix::Identity(d, d),
                           std::numeric_limits<std::size_t>::max());
    return symmetrized(w.adjoint() * xi * w);
}

ComplexMatrix exp_minus(const ComplexMatrix &generator) {
    return hermitian_func(generator, [](double x) { return std::exp(-x); });
}

struct RunOutcome {
    Trajectory trajectory;
    std::optional<std::size_t> extinct_at;  // ledger index of the failed measurement
};

RunOutcome run_impl(const TrotterPlan &plan, const DensityMatrix &sigma0, const EngineOptions &options,
                    bool throw_on_extinction) {
    const auto start = std::chrono::steady_clock::now();
    const int n = plan.decomposition.n;
    require_simulator(sigma0, n);
    if (!sigma0.is_normalized(1e-9)) {
        throw InvalidStateError("run: initial state is not normalized");
    }
    const bool faithful = plan.mode == Mode::faithful;
    const auto executed = faithful ? ProbabilitySource::faithful_exact : ProbabilitySource::effective;
    const Eigen::Index d = static_cast<Eigen::Index>(sigma0.dimension());
    const ComplexMatrix id = ComplexMatrix::Identity(d, d);

    std::vector<PreparedTerm> prepared;
    prepared.reserve(plan.sub_steps.size());
    for (const auto &s : plan.sub_steps) {
        prepared.push_back(prepare(plan.decomposition.terms.at(s.term_index), s.delta, n, faithful));
    }

    // First-order and exact per-term / per-step operators.
    std::vector<ComplexMatrix> first_order;
    std::vector<ComplexMatrix> exact;
    ComplexMatrix step_generator = ComplexMatrix::Zero(d, d);
    for (const auto &t : prepared) {
        step_generator += t.delta * t.rho_full;
    }
    if (plan.strategy == Strategy::A) {
        for (const auto &t : prepared) {
            first_order.push_back(id - t.delta * t.rho_full);
            exact.push_back(exp_minus(t.delta * t.rho_full));
        }
    } else {
        first_order.push_back(id - step_generator);
        exact.push_back(exp_minus(step_generator));
    }
    const std::size_t l = prepared.size();
    const Measurement measurement = plan.strategy == Strategy::B_local ? Measurement::local : Measurement::global;

    RunOutcome out;
    auto &traj = out.trajectory;
    traj.executed_source = executed;
    traj.snapshots.reserve(plan.steps);
    ComplexMatrix sigma = sigma0.matrix();

    auto advance = [&](std::size_t id_, const ComplexMatrix &next, double paper_p) -> bool {
        const double p = next.trace().real();
        traj.ledger.record(id_, std::min(paper_p, 1.0), ProbabilitySource::paper_formula);
        if (!(p > kExtinctionThreshold)) {
            if (throw_on_extinction) {
                check_extinction(p, "measurement " + std::to_string(id_));
            }
            traj.ledger.record(id_, std::clamp(p, 0.0, 1.0), executed);
            out.extinct_at = id_;
            return false;
        }
        traj.ledger.record(id_, std::min(p, 1.0), executed);
        sigma = next / p;
        return true;
    };

    for (int step = 0; step < plan.steps && !out.extinct_at; ++step) {
        if (plan.strategy == Strategy::A) {
            for (std::size_t i = 0; i < l; ++i) {
                const std::size_t id_ = static_cast<std::size_t>(step) * l + i;
                const double paper_p = 0.5 * (exact[i] * sigma * exact[i]).trace().real();
                ComplexMatrix next = faithful ? faithful_substep(sigma, prepared[i])
                                              : ComplexMatrix(0.5 * effective_substep(sigma, first_order[i]));
                if (!advance(id_, next, paper_p)) {
                    break;
                }
            }
        } else {
            const double denom = measurement_denominator(l, measurement);
            const double paper_p = (exact[0] * sigma * exact[0]).trace().real() / denom;
            ComplexMatrix next = faithful ? faithful_strategyB(sigma, prepared, measurement, options)
                                          : ComplexMatrix(effective_substep(sigma, first_order[0]) / denom);
            advance(static_cast<std::size_t>(step), next, paper_p);
        }
        if (!out.extinct_at) {
            traj.snapshots.emplace_back(symmetrized(sigma));
        }
    }
    traj.final_state = DensityMatrix(symmetrized(sigma));
    traj.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

}  // namespace

std::string_view to_string(Strategy s) {
    switch (s) {
        case Strategy::A:
            return "A";
        case Strategy::B_local:
            return "B-local";
        case Strategy::B_global:
            return "B-global";
    }
    return "?";
}

std::string_view to_string(Mode m) {
    switch (m) {
        case Mode::faithful:
            return "faithful";
        case Mode::effective:
            return "effective";
        case Mode::sampled:
            return "sampled";
    }
    return "?";
}

std::string_view to_string(ProbabilitySource s) {
    switch (s) {
        case ProbabilitySource::faithful_exact:
            return "faithful-exact";
        case ProbabilitySource::effective:
            return "effective";
        case ProbabilitySource::paper_formula:
            return "closed-form";
    }
    return "?";
}

PureState control_state(double delta) {
    if (!(std::abs(delta) < 1.0)) {
        std::ostringstream ss;
        ss << "control state needs |delta| < 1, got " << delta << " (increase N)";
        throw PlanError(ss.str());
    }
    ComplexVector v(2);
    const double norm = std::sqrt(1.0 + delta * delta);
    v(0) = 1.0 / norm;
    v(1) = -delta / norm;
    return PureState(std::move(v));
}

ComplexMatrix KrausSet::completeness() const {
    const auto dim = static_cast<Eigen::Index>(layout.total_dimension());
    ComplexMatrix acc = ComplexMatrix::Zero(dim, dim);
    for (const auto &k : ops) {
        acc.noalias() += k.adjoint() * k;
    }
    return acc;
}

KrausSet cswap_channel(const DensityMatrix &rho, std::span<const int> support, int n_sim) {
    if (n_sim < 1 || n_sim > kMaxQubits) {
        throw CapacityError("cswap_channel: unsupported simulator size");
    }
    std::set<int> distinct(support.begin(), support.end());
    if (support.empty() || distinct.size() != support.size() || *distinct.begin() < 0 ||
        *distinct.rbegin() >= n_sim) {
        throw DimensionError("cswap_channel: support sites must be distinct and inside the simulator");
    }
    if (rho.dimension() != (std::size_t{1} << support.size())) {
        throw DimensionError("cswap_channel: resource dimension " + std::to_string(rho.dimension()) +
                             " does not match a support of " + std::to_string(support.size()) + " sites");
    }
    if (!rho.is_normalized(1e-9)) {
        throw InvalidStateError("cswap_channel: resource state is not normalized");
    }

    auto eig = hermitian_eig(rho.matrix());
    RealVector lambda = eig.values.cwiseMax(0.0);
    if (eig.values.minCoeff() < -kStateTolerance) {
        throw InvalidStateError("cswap_channel: resource state has a negative eigenvalue");
    }
    lambda /= lambda.sum();

    KrausSet set;
    set.layout = RegisterLayout({{"c", 2}}).concat(RegisterLayout::qubits("q", static_cast<std::size_t>(n_sim)));
    const auto d_sim = static_cast<Eigen::Index>(std::size_t{1} << n_sim);
    const auto d_res = static_cast<Eigen::Index>(rho.dimension());
    ComplexMatrix p0 = ComplexMatrix::Zero(2, 2);
    ComplexMatrix p1 = ComplexMatrix::Zero(2, 2);
    p0(0, 0) = 1.0;
    p1(1, 1) = 1.0;
    const ComplexMatrix id_sim = ComplexMatrix::Identity(d_sim, d_sim);

    // Tracing out the resource in rho's eigenbasis {|v_k>}:
    // <v_k| U |v_j> = delta_kj |0><0| x I + |1><1| x |v_j><v_k|.
    for (Eigen::Index j = 0; j < d_res; ++j) {
        if (lambda(j) <= 0.0) {
            continue;
        }
        const double amp = std::sqrt(lambda(j));
        for (Eigen::Index k = 0; k < d_res; ++k) {
            ComplexMatrix swap_part = embed_qubits(eig.vectors.col(j) * eig.vectors.col(k).adjoint(), support, n_sim);
            ComplexMatrix op = kron(p1, swap_part);
            if (j == k) {
                op += kron(p0, id_sim);
            }
            set.ops.push_back(amp * op);
        }
    }
    return set;
}

ComplexMatrix apply_channel(const KrausSet &channel, const ComplexMatrix &input) {
    const auto dim = static_cast<Eigen::Index>(channel.layout.total_dimension());
    if (input.rows() != dim || input.cols() != dim) {
        throw DimensionError("apply_channel: input does not match the channel layout");
    }
    ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
    for (const auto &k : channel.ops) {
        out.noalias() += k * input * k.adjoint();
    }
    return out;
}

StepResult step_strategyA(const DensityMatrix &sigma, const ResourceTerm &term, int n_sim, double delta,
                          Mode mode) {
    require_simulator(sigma, n_sim);
    const bool faithful = mode == Mode::faithful;
    auto t = prepare(term, delta, n_sim, faithful);
    ComplexMatrix next;
    if (faithful) {
        next = faithful_substep(sigma.matrix(), t);
    } else {
        const auto d = static_cast<Eigen::Index>(sigma.dimension());
        ComplexMatrix a = ComplexMatrix::Identity(d, d) - delta * t.rho_full;
        next = 0.5 * effective_substep(sigma.matrix(), a);
    }
    const double p = next.trace().real();
    check_extinction(p, "strategy A sub-step");
    return {DensityMatrix(next / p), p};
}

StepResult step_strategyB(const DensityMatrix &sigma, std::span<const TermStep> terms, int n_sim,
                          Measurement measurement, Mode mode, const EngineOptions &options) {
    require_simulator(sigma, n_sim);
    const bool faithful = mode == Mode::faithful;
    std::vector<PreparedTerm> prepared;
    prepared.reserve(terms.size());
    for (const auto &t : terms) {
        prepared.push_back(prepare(*t.term, t.delta, n_sim, faithful));
    }
    ComplexMatrix next;
    if (faithful) {
        next = faithful_strategyB(sigma.matrix(), prepared, measurement, options);
    } else {
        const auto d = static_cast<Eigen::Index>(sigma.dimension());
        ComplexMatrix a = ComplexMatrix::Identity(d, d);
        for (const auto &t : prepared) {
            a -= t.delta * t.rho_full;
        }
        next = effective_substep(sigma.matrix(), a) / measurement_denominator(terms.size(), measurement);
    }
    const double p = next.trace().real();
    check_extinction(p, "strategy B step");
    return {DensityMatrix(next / p), p};
}

double TrotterPlan::max_abs_delta() const {
    double m = 0.0;
    for (const auto &s : sub_steps) {
        m = std::max(m, std::abs(s.delta));
    }
    return m;
}

TrotterPlan make_plan(ResourceDecomposition d, double beta, int steps, Strategy strategy, Mode mode) {
    if (steps < 1) {
        throw PlanError("Trotter step count must be >= 1, got " + std::to_string(steps));
    }
    if (!(beta >= 0.0) || !std::isfinite(beta)) {
        throw PlanError("imaginary time must be finite and non-negative");
    }
    TrotterPlan plan;
    plan.beta = beta;
    plan.steps = steps;
    plan.strategy = strategy;
    plan.mode = mode;
    for (std::size_t i = 0; i < d.terms.size(); ++i) {
        const double delta = beta * d.terms[i].weight / steps;
        if (!(std::abs(delta) < 1.0)) {
            std::ostringstream ss;
            ss << "term " << d.terms[i].label << " has |delta| = " << std::abs(delta) << " >= 1; increase N";
            throw PlanError(ss.str());
        }
        if (std::abs(delta) > 0.1) {
            std::ostringstream ss;
            ss << "term " << d.terms[i].label << " has |delta| = " << std::abs(delta)
               << " > 0.1; first-order errors may dominate";
            plan.warnings.push_back(ss.str());
        }
        plan.sub_steps.push_back({i, delta});
    }
    plan.decomposition = std::move(d);
    return plan;
}

void ProbabilityLedger::record(std::size_t sub_step, double probability, ProbabilitySource source) {
    if (!(probability >= 0.0 && probability <= 1.0)) {
        std::ostringstream ss;
        ss << "ledger: probability " << probability << " outside [0, 1]";
        throw DomainError(ss.str());
    }
    entries_.push_back({sub_step, probability, source});
    log_products_[static_cast<int>(source)] += std::log(probability);
}

std::size_t ProbabilityLedger::count(ProbabilitySource source) const {
    return static_cast<std::size_t>(std::count_if(entries_.begin(), entries_.end(),
                                                  [&](const LedgerEntry &e) { return e.source == source; }));
}

double ProbabilityLedger::log_cumulative(ProbabilitySource source) const {
    return log_products_[static_cast<int>(source)];
}

double ProbabilityLedger::cumulative(ProbabilitySource source) const {
    return std::exp(log_cumulative(source));
}

std::vector<double> ProbabilityLedger::probabilities(ProbabilitySource source) const {
    std::vector<double> out;
    for (const auto &e : entries_) {
        if (e.source == source) {
            out.push_back(e.probability);
        }
    }
    return out;
}

Trajectory run(const TrotterPlan &plan, const DensityMatrix &sigma0, std::uint64_t seed,
               const EngineOptions &options) {
    auto outcome = run_impl(plan, sigma0, options, true);
    if (plan.mode == Mode::sampled) {
        std::mt19937_64 rng(seed);
        bool ok = true;
        for (double p : outcome.trajectory.ledger.probabilities(outcome.trajectory.executed_source)) {
            if (draw_unit(rng) >= p) {
                ok = false;
                break;
            }
        }
        outcome.trajectory.sampled_success = ok;
    }
    return std::move(outcome.trajectory);
}

SampleResult sample_run(const TrotterPlan &plan, const DensityMatrix &sigma0, std::size_t trials,
                        std::uint64_t seed, const EngineOptions &options) {
    if (trials < 1) {
        throw DomainError("sample_run: trials must be >= 1");
    }
    auto outcome = run_impl(plan, sigma0, options, false);
    const auto &traj = outcome.trajectory;
    const auto chain = traj.ledger.probabilities(traj.executed_source);

    SampleResult res;
    res.trials = trials;
    res.exact_probability = outcome.extinct_at ? 0.0 : traj.ledger.cumulative(traj.executed_source);
    res.outcomes.reserve(trials);
    std::mt19937_64 rng(seed);
    for (std::size_t t = 0; t < trials; ++t) {
        std::int64_t failed = -1;
        for (std::size_t k = 0; k < chain.size(); ++k) {
            if (draw_unit(rng) >= chain[k]) {
                failed = static_cast<std::int64_t>(k);
                break;
            }
        }
        if (failed < 0 && outcome.extinct_at) {
            failed = static_cast<std::int64_t>(chain.size()) - 1;
        }
        if (failed < 0) {
            ++res.successes;
        }
        res.outcomes.push_back(failed);
    }
    res.frequency = static_cast<double>(res.successes) / static_cast<double>(trials);
    if (res.successes > 0) {
        res.accepted_state_average = traj.final_state;
    }
    return res;
}

}  // namespace sbqs
