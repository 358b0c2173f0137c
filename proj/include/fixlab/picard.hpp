#pragma once
// eta-step Picard iteration: x_{n+eta} = U applied to the hat-tuple of the
// last eta iterates. Tracks per-step distances d(x_{n+eta}, x_{n+eta+1}),
// stops when both the step distance and the fixed-point residual drop below
// the tolerance, and probes uniqueness by running from several seed sets.

#include <ostream>
#include <string>
#include <vector>

#include "fixlab/functionals.hpp"

namespace fixlab {

/// An iterate left the reals (overflow or otherwise non-finite).
struct DivergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr double kDefaultTolerance = 1e-10;
inline constexpr std::size_t kDefaultMaxIterations = 100000;

// Step distances at or below this floor no longer carry monotonicity
// information; double-precision noise dominates there.
inline constexpr double kMonotoneFloor = 1e-14;

struct ConvergenceReport {
  double fixed_point = 0;
  std::size_t iterations = 0;
  std::vector<double> step_distances;  // one entry per iteration
  std::vector<double> iterates;        // x_{eta+1}, x_{eta+2}, ...
  double residual = 0;                 // d(U(fixed_point-hat), fixed_point)
  bool converged = false;
  bool monotone_decreasing = false;
};

/// One application of U to the hat-tuple whose head is the window.
inline double picard_step(const Operator& u, std::span<const double> window) {
  return u.apply_head(window);
}

inline double fixed_point_residual(const Operator& u, double w) {
  if (!u.space().admits(w)) throw InvalidInput("candidate outside the operator's space");
  return distance(u.apply(constant_tuple(w, u.eta())), w);
}

namespace detail {

inline double apply_or_diverge(const Operator& u, std::span<const double> window,
                               std::size_t iteration) {
  try {
    return u.apply_head(window);
  } catch (const expr::EvalDomainError& e) {
    if (e.non_finite) {
      throw DivergenceError("iterate diverged at iteration " + std::to_string(iteration));
    }
    throw;
  }
}

inline bool steps_monotone(const std::vector<double>& steps) {
  for (std::size_t i = 0; i + 1 < steps.size(); ++i) {
    if (steps[i] > kMonotoneFloor && steps[i + 1] >= steps[i]) return false;
  }
  return true;
}

}  // namespace detail

inline ConvergenceReport picard_run(const Operator& u, std::vector<double> seeds,
                                    double tol = kDefaultTolerance,
                                    std::size_t max_iter = kDefaultMaxIterations) {
  if (seeds.size() != u.eta()) throw InvalidInput("seed count must equal operator arity");
  if (!(tol > 0)) throw InvalidInput("tolerance must be positive");
  if (max_iter < 1) throw InvalidInput("max_iter must be at least 1");
  for (double s : seeds) {
    if (!u.space().admits(s)) throw InvalidInput("seed outside the operator's space");
  }

  ConvergenceReport report;
  std::vector<double> window = std::move(seeds);
  double candidate = window.back();

  for (std::size_t iter = 1; iter <= max_iter; ++iter) {
    double next = detail::apply_or_diverge(u, window, iter);
    double step = distance(window.back(), next);
    report.step_distances.push_back(step);
    report.iterates.push_back(next);
    report.iterations = iter;
    window.erase(window.begin());
    window.push_back(next);
    candidate = next;
    if (step < tol) {
      std::vector<double> diag(u.eta(), candidate);
      double residual = distance(detail::apply_or_diverge(u, diag, iter), candidate);
      if (residual < tol) {
        report.converged = true;
        report.residual = residual;
        break;
      }
    }
  }

  if (!report.converged) {
    std::vector<double> diag(u.eta(), candidate);
    report.residual = distance(detail::apply_or_diverge(u, diag, report.iterations), candidate);
  }
  report.fixed_point = candidate;
  report.monotone_decreasing = detail::steps_monotone(report.step_distances);
  return report;
}

struct ProbeRun {
  std::vector<double> seeds;
  ConvergenceReport report;
  std::string error;  // non-empty when the run aborted (divergence)
};

struct UniquenessReport {
  std::vector<ProbeRun> runs;
  double max_pairwise_distance = 0;
  bool agree = false;
};

/// Runs picard_run per seed set; agree means every run converged and all
/// limits lie within 10*tol of each other.
inline UniquenessReport uniqueness_probe(const Operator& u,
                                         const std::vector<std::vector<double>>& seed_sets,
                                         double tol = kDefaultTolerance,
                                         std::size_t max_iter = kDefaultMaxIterations) {
  if (seed_sets.size() < 2) throw InvalidInput("uniqueness probe requires at least 2 seed sets");
  UniquenessReport probe;
  probe.agree = true;
  for (const auto& seeds : seed_sets) {
    ProbeRun run;
    run.seeds = seeds;
    try {
      run.report = picard_run(u, seeds, tol, max_iter);
      if (!run.report.converged) probe.agree = false;
    } catch (const DivergenceError& e) {
      run.error = e.what();
      probe.agree = false;
    }
    probe.runs.push_back(std::move(run));
  }
  for (std::size_t i = 0; i < probe.runs.size(); ++i) {
    for (std::size_t j = i + 1; j < probe.runs.size(); ++j) {
      const ProbeRun& a = probe.runs[i];
      const ProbeRun& b = probe.runs[j];
      if (!a.error.empty() || !b.error.empty()) continue;
      if (!a.report.converged || !b.report.converged) continue;
      probe.max_pairwise_distance = std::max(
          probe.max_pairwise_distance, distance(a.report.fixed_point, b.report.fixed_point));
    }
  }
  if (probe.max_pairwise_distance > 10 * tol) probe.agree = false;
  return probe;
}

/// One row per iteration: index, iterate value, step distance.
inline void write_trace_csv(const ConvergenceReport& report, std::ostream& os) {
  os << "iteration,value,step_distance\n";
  for (std::size_t i = 0; i < report.iterates.size(); ++i) {
    os << (i + 1) << ',' << format_double(report.iterates[i]) << ','
       << format_double(report.step_distances[i]) << '\n';
  }
}

}  // namespace fixlab
