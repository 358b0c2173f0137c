#pragma once
// Volterra-type integral equation w(x) = lambda * Int_a^x K(x, w(t)) dt,
// solved by successive approximation on a uniform grid with composite
// trapezoid quadrature. Convergence is measured in the exponentially
// weighted metric  sup_x |f(x) - g(x)| e^{-m x};  any weight with
// m >= |lambda| (1 - e^{-m(b-a)}) makes the integral operator contractive.

#include <cmath>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "fixlab/checker.hpp"
#include "fixlab/picard.hpp"

namespace fixlab::volterra {

/// Function sampled on a uniform grid: n subintervals, n+1 nodes.
class GridFunction {
 public:
  GridFunction(Interval interval, std::size_t n, std::vector<double> values)
      : interval_(interval), n_(n), values_(std::move(values)) {
    if (n_ < 1) throw InvalidInput("grid needs at least one subinterval");
    if (values_.size() != n_ + 1) throw InvalidInput("grid function needs n+1 values");
    for (double v : values_) require_finite(v, "grid value");
  }

  static GridFunction zero(Interval interval, std::size_t n) {
    return GridFunction(interval, n, std::vector<double>(n + 1, 0.0));
  }

  template <typename F>
  static GridFunction sample(Interval interval, std::size_t n, F&& f) {
    if (n < 1) throw InvalidInput("grid needs at least one subinterval");
    std::vector<double> values(n + 1);
    for (std::size_t j = 0; j <= n; ++j) {
      values[j] = f(node_at(interval, n, j));
    }
    return GridFunction(interval, n, std::move(values));
  }

  const Interval& interval() const { return interval_; }
  std::size_t subintervals() const { return n_; }
  double step() const { return interval_.length() / static_cast<double>(n_); }
  double node(std::size_t j) const { return node_at(interval_, n_, j); }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t j) const { return values_[j]; }

  bool same_grid(const GridFunction& other) const {
    return interval_.a == other.interval_.a && interval_.b == other.interval_.b &&
           n_ == other.n_;
  }

 private:
  static double node_at(const Interval& interval, std::size_t n, std::size_t j) {
    if (j == n) return interval.b;
    return interval.a + static_cast<double>(j) * (interval.length() / static_cast<double>(n));
  }

  Interval interval_;
  std::size_t n_;
  std::vector<double> values_;
};

/// Integral kernel K(x, u): x is the outer variable of the integral bound,
/// u the value of the unknown at the inner point.
class Kernel {
 public:
  explicit Kernel(expr::ExprPtr body) : body_(std::move(body)) {
    if (!body_) throw InvalidInput("kernel requires a body expression");
    for (const std::string& name : expr::free_vars(body_)) {
      if (name != "x" && name != "u") {
        throw InvalidInput("kernel variable '" + name + "' is not among x, u");
      }
    }
    depends_on_x_ = expr::free_vars(body_).count("x") > 0;
  }

  static Kernel parse(std::string_view source) { return Kernel(expr::parse_source(source)); }

  double eval(double x, double u) const {
    expr::Env env;
    env.bind("x", x);
    env.bind("u", u);
    return expr::evaluate(body_, env);
  }

  bool depends_on_x() const { return depends_on_x_; }
  const expr::ExprPtr& body() const { return body_; }

 private:
  expr::ExprPtr body_;
  bool depends_on_x_;
};

struct VolterraProblem {
  Kernel kernel;
  double lambda;
  Interval interval;
  std::size_t n;
  double m;  // Bielecki weight

  VolterraProblem(Kernel kernel_, double lambda_, Interval interval_, std::size_t n_, double m_)
      : kernel(std::move(kernel_)), lambda(lambda_), interval(interval_), n(n_), m(m_) {
    require_finite(lambda, "lambda");
    if (lambda == 0) throw InvalidInput("lambda must be nonzero");
    if (n < 1) throw InvalidInput("grid needs at least one subinterval");
    require_finite(m, "weight m");
    if (!(m > 0)) throw InvalidInput("weight m must be positive");
    double required = std::abs(lambda) * (1.0 - std::exp(-m * interval.length()));
    if (m + kWeightTolerance < required) {
      throw InvalidInput("weight m violates m >= |lambda| (1 - e^{-m(b-a)})");
    }
  }
};

struct VolterraReport {
  GridFunction solution;
  std::size_t iterations = 0;
  std::vector<double> bielecki_steps;
  double residual_bielecki = 0;
  double residual_sup = 0;
  bool converged = false;
};

/// Node j holds the composite-trapezoid value of Int_a^{x_j} g; node 0 is 0.
inline GridFunction trapezoid_cumulative(const GridFunction& g) {
  const double h = g.step();
  std::vector<double> out(g.subintervals() + 1, 0.0);
  for (std::size_t j = 1; j <= g.subintervals(); ++j) {
    out[j] = out[j - 1] + 0.5 * h * (g[j - 1] + g[j]);
  }
  return GridFunction(g.interval(), g.subintervals(), std::move(out));
}

/// (Tw)(x_j) = lambda * Int_a^{x_j} K(x_j, w(t)) dt. When the kernel does not
/// read x the integrand is shared across nodes and a single cumulative pass
/// suffices; otherwise each node integrates its own row, costing O(N^2).
inline GridFunction apply_T(const VolterraProblem& p, const GridFunction& w) {
  if (w.interval().a != p.interval.a || w.interval().b != p.interval.b ||
      w.subintervals() != p.n) {
    throw InvalidInput("grid function does not match the problem grid");
  }
  const std::size_t n = p.n;
  const double h = w.step();
  std::vector<double> out(n + 1, 0.0);
  std::size_t at_node = 0;
  try {
    if (!p.kernel.depends_on_x()) {
      double acc = 0;
      double prev = p.kernel.eval(w.node(0), w[0]);
      for (std::size_t j = 1; j <= n; ++j) {
        at_node = j;
        double cur = p.kernel.eval(w.node(j), w[j]);
        acc += 0.5 * h * (prev + cur);
        prev = cur;
        out[j] = p.lambda * acc;
      }
    } else {
      for (std::size_t j = 1; j <= n; ++j) {
        at_node = j;
        const double xj = w.node(j);
        double acc = 0;
        double prev = p.kernel.eval(xj, w[0]);
        for (std::size_t k = 1; k <= j; ++k) {
          double cur = p.kernel.eval(xj, w[k]);
          acc += 0.5 * h * (prev + cur);
          prev = cur;
        }
        out[j] = p.lambda * acc;
      }
    }
  } catch (const expr::EvalDomainError& e) {
    throw expr::EvalDomainError(
        std::string(e.what()) + " (node " + std::to_string(at_node) + ")", e.non_finite);
  }
  for (std::size_t j = 0; j <= n; ++j) {
    if (!std::isfinite(out[j])) {
      throw expr::EvalDomainError("non-finite quadrature value (node " + std::to_string(j) + ")",
                                  true);
    }
  }
  return GridFunction(p.interval, n, std::move(out));
}

/// max over nodes of |f_j - g_j| e^{-m x_j}; the sup metric at m = 0.
inline double bielecki_distance(const GridFunction& f, const GridFunction& g, double m) {
  if (!f.same_grid(g)) throw InvalidInput("bielecki_distance: grid mismatch");
  require_finite(m, "weight m");
  if (m < 0) throw InvalidInput("weight m must be nonnegative");
  double best = 0;
  for (std::size_t j = 0; j <= f.subintervals(); ++j) {
    best = std::max(best, std::abs(f[j] - g[j]) * std::exp(-m * f.node(j)));
  }
  return best;
}

/// m = max(|lambda|, 1). Since 1 - e^{-m(b-a)} < 1, any m >= |lambda|
/// satisfies the weight condition.
inline double choose_m(double lambda, const Interval& interval) {
  require_finite(lambda, "lambda");
  if (lambda == 0) throw InvalidInput("lambda must be nonzero");
  (void)interval;
  return std::max(std::abs(lambda), 1.0);
}

/// Picard iteration w <- T(w) from w = 0 until the weighted step distance
/// drops below tol.
inline VolterraReport solve(const VolterraProblem& p, double tol = 1e-10,
                            std::size_t max_iter = 500) {
  if (!(tol > 0)) throw InvalidInput("tolerance must be positive");
  if (max_iter < 1) throw InvalidInput("max_iter must be at least 1");

  GridFunction w = GridFunction::zero(p.interval, p.n);
  std::vector<double> steps;
  std::size_t iterations = 0;
  bool step_small = false;
  try {
    for (std::size_t iter = 1; iter <= max_iter; ++iter) {
      GridFunction next = apply_T(p, w);
      double step = bielecki_distance(w, next, p.m);
      steps.push_back(step);
      w = std::move(next);
      iterations = iter;
      if (step < tol) {
        step_small = true;
        break;
      }
    }
    GridFunction image = apply_T(p, w);
    double residual_bielecki = bielecki_distance(w, image, p.m);
    double residual_sup = bielecki_distance(w, image, 0.0);
    bool converged = step_small && residual_bielecki <= tol;
    return VolterraReport{std::move(w), iterations,       std::move(steps),
                          residual_bielecki, residual_sup, converged};
  } catch (const expr::EvalDomainError& e) {
    if (e.non_finite) {
      throw DivergenceError(std::string("volterra iteration diverged: ") + e.what());
    }
    throw;
  }
}

inline constexpr std::size_t kKernelCheckGrid = 100;
inline constexpr std::size_t kKernelCheckPolyDegree = 2;

/// Empirical check of the kernel hypothesis
///   |K(x, w(t)) - K(x, v(t))| <= f(L e^{-mt}) L,
/// where L mixes the distances of w(t), v(t) to the images (Tw)(x), (Tv)(x)
/// with weights alpha and 1-alpha. Samples pairs of low-degree polynomial
/// grid functions and grid points (x, t); the witness stores the polynomial
/// coefficients.
inline CheckReport check_kernel_condition(const Kernel& kernel, double lambda,
                                          const Interval& interval, double alpha,
                                          const GeraghtyFn& f, const SamplerConfig& cfg) {
  require_finite(lambda, "lambda");
  if (lambda == 0) throw InvalidInput("lambda must be nonzero");
  if (!(alpha >= 0 && alpha <= 1)) throw InvalidInput("alpha must lie in [0, 1]");
  if (std::abs(f.cap() - 0.5) > kWeightTolerance) {
    throw InvalidInput("kernel condition modulus must have cap 1/2");
  }
  if (cfg.sample_count < 1) throw InvalidInput("sample_count must be at least 1");

  const std::size_t n = kKernelCheckGrid;
  const double m = choose_m(lambda, interval);
  const VolterraProblem problem(kernel, lambda, interval, n, m);

  std::mt19937_64 rng(cfg.prng_seed);
  auto random_coeffs = [&] {
    std::vector<double> c(kKernelCheckPolyDegree + 1);
    for (double& x : c) x = 2.0 * detail::canonical(rng) - 1.0;
    return c;
  };
  auto poly_grid = [&](const std::vector<double>& c) {
    return GridFunction::sample(interval, n, [&](double t) {
      double acc = 0;
      for (std::size_t i = c.size(); i-- > 0;) acc = acc * t + c[i];
      return acc;
    });
  };

  CheckReport report;
  for (std::size_t s = 0; s < cfg.sample_count; ++s) {
    const std::vector<double> cw = random_coeffs();
    const std::vector<double> cv = random_coeffs();
    const GridFunction w = poly_grid(cw);
    const GridFunction v = poly_grid(cv);
    const GridFunction tw = apply_T(problem, w);
    const GridFunction tv = apply_T(problem, v);

    std::vector<std::pair<std::size_t, std::size_t>> nodes;
    const auto jx_draw = std::min<std::size_t>(
        n, static_cast<std::size_t>(detail::canonical(rng) * double(n + 1)));
    const auto jt_draw = std::min<std::size_t>(
        n, static_cast<std::size_t>(detail::canonical(rng) * double(n + 1)));
    nodes.emplace_back(jx_draw, jt_draw);
    if (cfg.include_boundary) {
      nodes.emplace_back(0, 0);
      nodes.emplace_back(0, n);
      nodes.emplace_back(n, 0);
      nodes.emplace_back(n, n);
    }

    for (auto [jx, jt] : nodes) {
      ++report.samples_tested;
      const double x = w.node(jx);
      const double t = w.node(jt);
      try {
        double lhs = std::abs(kernel.eval(x, w[jt]) - kernel.eval(x, v[jt]));
        double mix = alpha * (std::abs(w[jt] - tw[jx]) + std::abs(v[jt] - tv[jx])) +
                     (1 - alpha) * (std::abs(w[jt] - tv[jx]) + std::abs(v[jt] - tw[jx]));
        double rhs = f(mix * std::exp(-m * t)) * mix;
        if (rhs > kDenominatorFloor) report.max_ratio = std::max(report.max_ratio, lhs / rhs);
        if (mix > kDenominatorFloor) {
          report.estimated_constant = std::max(report.estimated_constant, lhs / mix);
        }
        if (lhs > rhs + kViolationSlack) {
          report.violations.push_back(
              {cw, cv, lhs, rhs, "x=" + format_double(x) + ", t=" + format_double(t)});
        }
      } catch (const expr::EvalDomainError& e) {
        report.violations.push_back({cw, cv, 0, 0,
                                     std::string("evaluation failed: ") + e.what() +
                                         " (x=" + format_double(x) + ", t=" + format_double(t) +
                                         ")"});
      }
    }
  }
  report.passed = report.violations.empty();
  return report;
}

/// One row per node: index, x, w(x).
inline void write_solution_csv(const GridFunction& g, std::ostream& os) {
  os << "index,x,w\n";
  for (std::size_t j = 0; j <= g.subintervals(); ++j) {
    os << j << ',' << format_double(g.node(j)) << ',' << format_double(g[j]) << '\n';
  }
}

}  // namespace fixlab::volterra
