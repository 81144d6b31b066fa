// Copyright 2026 The Tensolve Authors
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

#include "tensolve/solver.hpp"

#include <chrono>
#include <cmath>
#include <limits>

namespace tensolve {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct Extraction {
  std::int64_t value = 0;
  double margin = 0.0;
  bool feasible = false;
};

Extraction extract_decision(const std::vector<Amplitude>& amps,
                            VariableLayout::Extract rule, double tolerance,
                            const std::vector<char>* allowed) {
  double max_mod = 0.0;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (allowed && !(*allowed)[i]) continue;
    max_mod = std::max(max_mod, std::abs(amps[i]));
  }
  Extraction out;
  if (max_mod <= 0.0) return out;
  const double floor = tolerance * max_mod;

  if (rule == VariableLayout::Extract::kLowestNonzero) {
    for (std::size_t i = 0; i < amps.size(); ++i) {
      if (allowed && !(*allowed)[i]) continue;
      const double m = std::abs(amps[i]);
      if (m > floor) {
        out.value = static_cast<std::int64_t>(i);
        out.margin = m / max_mod;
        out.feasible = true;
        return out;
      }
    }
    return out;
  }

  double best = -1.0, second = 0.0;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (allowed && !(*allowed)[i]) continue;
    const double m = std::abs(amps[i]);
    if (m > best) {
      second = (best < 0.0) ? 0.0 : best;
      best = m;
      out.value = static_cast<std::int64_t>(i);
    } else if (m > second) {
      second = m;
    }
  }
  if (best <= floor) return out;  // everything below the zero threshold
  out.margin = (best - second) / best;
  out.feasible = true;
  return out;
}

// Log-amplitude of a fully projected assignment (the winning combination).
double projected_log_amplitude(const BuiltProblem& built,
                               const std::vector<std::int64_t>& assignment) {
  TensorNetwork closed = built.net;
  for (std::size_t k = 0; k < built.layout.variables.size(); ++k)
    closed = attach_boundary(closed, built.layout.variables[k].label,
                             make_projection(built.layout.variables[k].dim,
                                             assignment[k]));
  const ContractionResult res = contract(closed);
  if (res.degenerate) return kNegInf;
  const double mod = std::abs(res.tensor.scalar());
  if (mod <= 0.0) return kNegInf;
  return std::log(mod) + res.log_scale;
}

struct PassResult {
  Solution solution;
  bool ok = false;
};

// Log of the largest single-state amplitude in the weighted network.
double tropical_max_state(const BuiltProblem& built) {
  TensorNetwork closed = built.net;
  for (const auto& var : built.layout.variables)
    closed = attach_boundary(closed, var.label, make_plus(var.dim));
  return tropical_log_max(closed);
}

// Exact optimality test, anchored at a fixed reference network: an
// assignment is cost-optimal iff its amplitude there equals the largest
// single-state amplitude. Valid at any tau; the reference build at the
// default tau keeps every entry far from the canonical zero tolerance, so
// the test never suffers truncation.
class Certifier {
 public:
  explicit Certifier(const BuiltProblem& reference)
      : reference_(&reference), log_max_(tropical_max_state(reference)) {}

  bool feasible_network() const { return std::isfinite(log_max_); }

  // Returns the candidate's log-mass in the reference network (-inf when it
  // vanished there).
  double log_mass(const std::vector<std::int64_t>& assignment) const {
    return projected_log_amplitude(*reference_, assignment);
  }

  bool optimal(double log_mass_value) const {
    return std::isfinite(log_mass_value) &&
           std::abs(log_mass_value - log_max_) <=
               1e-6 * std::max(1.0, std::abs(log_max_));
  }

 private:
  const BuiltProblem* reference_;
  double log_max_;
};

PassResult run_pass(const ProblemSpec* spec, const BuiltProblem* prebuilt,
                    const SolverConfig& config, double tau) {
  PassResult out;
  Solution& sol = out.solution;
  sol.tau_used = tau;

  const bool rebuild_per_step =
      spec && config.layer_limit && supports_layer_limit(*spec);

  BuildContext ctx;
  ctx.tau = tau;
  ctx.layer_limit = config.layer_limit;
  BuiltProblem storage;
  const BuiltProblem* built = prebuilt;
  if (!built) {
    storage = build_network(*spec, ctx);
    built = &storage;
  }

  const std::size_t n = built->layout.variables.size();
  TraceOptions options;
  options.mode = config.humbucker ? TraceMode::kPhase : TraceMode::kPlus;

  for (std::size_t k = 0; k < n; ++k) {
    const auto t0 = std::chrono::steady_clock::now();
    if (rebuild_per_step) {
      ctx.fixed_prefix = sol.assignment;
      storage = build_network(*spec, ctx);
      built = &storage;
    }
    options.overrides = &built->boundary_overrides;

    const TraceResult trace = half_partial_trace(built->net, built->layout, k, options);
    const auto allowed_it = built->allowed_values.find(k);
    const std::vector<char>* allowed =
        allowed_it == built->allowed_values.end() ? nullptr : &allowed_it->second;

    Extraction pick{0, 0.0, false};
    if (!trace.degenerate)
      pick = extract_decision(trace.amplitudes, built->layout.variables[k].rule,
                              config.tolerance, allowed);
    const auto t1 = std::chrono::steady_clock::now();
    sol.step_ms.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());

    if (!pick.feasible) {
      sol.feasible = false;
      sol.log_amplitude = kNegInf;
      sol.note = "no admissible value for " + built->layout.variables[k].label;
      return out;
    }
    sol.assignment.push_back(pick.value);
    sol.margins.push_back(pick.margin);
    options.fixed.emplace(k, pick.value);
  }

  sol.feasible = true;
  const double raw_mass = projected_log_amplitude(*built, sol.assignment);
  if (raw_mass == kNegInf) {
    sol.feasible = false;
    sol.log_amplitude = kNegInf;
    sol.note = "projected amplitude vanished";
    return out;
  }
  sol.log_amplitude = raw_mass + built->log_offset;
  out.ok = true;
  return out;
}

}  // namespace

StepDecision determine_variable(const BuiltProblem& built, std::size_t k,
                                const std::vector<std::int64_t>& fixed,
                                const SolverConfig& config) {
  TraceOptions options;
  options.mode = config.humbucker ? TraceMode::kPhase : TraceMode::kPlus;
  options.overrides = &built.boundary_overrides;
  for (std::size_t i = 0; i < fixed.size(); ++i) options.fixed.emplace(i, fixed[i]);
  const TraceResult trace = half_partial_trace(built.net, built.layout, k, options);
  StepDecision out;
  if (trace.degenerate) return out;
  const auto allowed_it = built.allowed_values.find(k);
  const Extraction pick = extract_decision(
      trace.amplitudes, built.layout.variables[k].rule, config.tolerance,
      allowed_it == built.allowed_values.end() ? nullptr : &allowed_it->second);
  out.value = pick.value;
  out.margin = pick.margin;
  out.feasible = pick.feasible;
  return out;
}

std::int64_t minus_vector_decision(const std::vector<Amplitude>& amps) {
  if (amps.size() != 2)
    throw InvalidArgument("minus-vector decision needs a binary variable");
  const double omega = amps[1].real() - amps[0].real();
  return omega > 0.0 ? 1 : 0;
}

double default_tau(const ProblemSpec& spec) {
  const double scale = cost_scale(spec);
  return scale > 0.0 ? 1.0 / scale : 1.0;
}

Solution solve_on_network(const BuiltProblem& built, const SolverConfig& config,
                          double tau_used) {
  return run_pass(nullptr, &built, config, tau_used).solution;
}

namespace {

// Escalate tau until two consecutive runs agree on an assignment that
// certifies as a max-mass state. Feasibility is tau-independent, so an
// infeasible first pass settles the instance; a later infeasible pass can
// only be numeric truncation of a high-tau network. Candidates from every
// round stay in a pool; if the loop ends without agreement, the pool is
// swept for any certified assignment before giving up.
Solution escalate(const ProblemSpec& spec, const SolverConfig& config, double tau0,
                  const Certifier& certifier) {
  // Stay clear of the double exponent limit: negative costs enter tensors as
  // e^{+tau*|c|}, which must remain finite.
  const double max_tau = 600.0 / std::max(cost_scale(spec), 1e-300);
  double tau = tau0;
  std::vector<Solution> pool;
  std::vector<double> pool_mass;
  std::optional<std::vector<std::int64_t>> certified_prev;
  for (int round = 0; round <= config.max_rounds && tau <= max_tau; ++round) {
    PassResult pass = run_pass(&spec, nullptr, config, tau);
    if (!pass.solution.feasible) {
      if (round == 0) return std::move(pass.solution);
      break;
    }
    const double mass = certifier.log_mass(pass.solution.assignment);
    const bool certified = certifier.optimal(mass);
    if (certified && certified_prev &&
        *certified_prev == pass.solution.assignment)
      return std::move(pass.solution);
    if (certified)
      certified_prev = pass.solution.assignment;
    else
      certified_prev.reset();
    pool.push_back(std::move(pass.solution));
    pool_mass.push_back(mass);
    tau *= config.growth;
  }
  // No stable agreement; accept any pooled candidate that certifies.
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (certifier.optimal(pool_mass[i])) {
      pool[i].note = "certified against the reference-tau maximum";
      return std::move(pool[i]);
    }
  }
  // Honest failure: report the candidate with the largest reference mass.
  std::size_t best = 0;
  for (std::size_t i = 1; i < pool_mass.size(); ++i)
    if (pool_mass[i] > pool_mass[best]) best = i;
  Solution fallback = pool.empty() ? Solution{} : std::move(pool[best]);
  fallback.escalation_converged = false;
  fallback.note = "tau escalation exhausted without a max-mass certificate";
  return fallback;
}

}  // namespace

Solution solve(const ProblemSpec& spec, const SolverConfig& config) {
  validate_spec(spec);
  const double tau0 = config.tau.value_or(default_tau(spec));

  BuildContext probe_ctx;
  probe_ctx.tau = tau0;
  probe_ctx.layer_limit = config.layer_limit;
  const BuiltProblem reference = build_network(spec, probe_ctx);
  const bool weighted = !reference.unit_amplitudes;

  auto finish = [&spec](Solution sol) {
    if (sol.feasible) {
      const auto checked = oracle::verify(spec, sol.assignment);
      if (!checked.feasible) {
        sol.feasible = false;
        sol.note = "assignment failed verification";
      }
    }
    return sol;
  };

  // The layer limit only changes families built from filter layers; others
  // escalate as usual.
  const bool limited = config.layer_limit && supports_layer_limit(spec);
  if (!weighted || !config.escalate || limited) {
    return finish(run_pass(&spec, nullptr, config, tau0).solution);
  }

  const Certifier certifier(reference);
  Solution sol = escalate(spec, config, tau0, certifier);
  if (!sol.escalation_converged && config.humbucker) {
    // Interference can suppress degenerate optima past any reachable tau;
    // finish the job with plus vectors rather than guess.
    SolverConfig plain = config;
    plain.humbucker = false;
    Solution retry = escalate(spec, plain, tau0, certifier);
    if (retry.escalation_converged) {
      retry.note = "humbucker trace did not certify; plus-vector escalation fallback";
      return finish(std::move(retry));
    }
  }
  return finish(std::move(sol));
}

double count_solutions_value(const ProblemSpec& spec) {
  validate_spec(spec);
  BuildContext ctx;
  const BuiltProblem built = build_network(spec, ctx);
  if (!built.unit_amplitudes)
    throw UnsupportedCount("count_solutions requires a 0/1 constraint network; " +
                           family_name(spec) + " carries weights");
  TensorNetwork closed = built.net;
  for (const auto& var : built.layout.variables)
    closed = attach_boundary(closed, var.label, make_plus(var.dim));
  const ContractionResult res = contract(closed);
  if (res.degenerate) return 0.0;
  return res.tensor.scalar().real() * std::exp(res.log_scale + built.log_offset);
}

std::int64_t count_solutions(const ProblemSpec& spec) {
  return std::llround(count_solutions_value(spec));
}

}  // namespace tensolve
