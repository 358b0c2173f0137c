#pragma once
// Sample-based certification of contraction inequalities. A pass certifies
// only that no violation occurred among the recorded samples; the report
// states how many were tested. Violations carry the witness pair so they can
// be replayed. Sampling is seeded and sequential, so identical inputs yield
// identical reports.

#include <cstdint>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "fixlab/functionals.hpp"

namespace fixlab {

struct BanachC {
  double c;
};
struct KannanC {
  double c;
};
struct FisherC {
  double c;
};
struct GenC {
  MixWeights weights;
  GeraghtyFn beta;
};
struct GenH {
  double alpha;
  GeraghtyFn beta;
};
struct GenL {
  FKind fkind;
  GeraghtyFn beta;
};

using ContractionKind = std::variant<BanachC, KannanC, FisherC, GenC, GenH, GenL>;

// Violation slack and denominator floor absorb double-precision round-off
// near fixed points.
inline constexpr double kViolationSlack = 1e-12;
inline constexpr double kDenominatorFloor = 1e-9;

inline void validate(const ContractionKind& kind) {
  std::visit(
      [](const auto& k) {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, BanachC>) {
          if (!(k.c > 0 && k.c < 1)) throw InvalidInput("Banach constant must lie in (0, 1)");
        } else if constexpr (std::is_same_v<T, KannanC>) {
          if (!(k.c > 0 && k.c < 0.5)) throw InvalidInput("Kannan constant must lie in (0, 1/2)");
        } else if constexpr (std::is_same_v<T, FisherC>) {
          if (!(k.c > 0 && k.c < 0.5)) throw InvalidInput("Fisher constant must lie in (0, 1/2)");
        } else if constexpr (std::is_same_v<T, GenC>) {
          k.weights.validate();
          if (std::abs(k.beta.cap() - 0.5) > kWeightTolerance) {
            throw InvalidInput("generalized contraction modulus must have cap 1/2");
          }
        } else if constexpr (std::is_same_v<T, GenH>) {
          if (!(k.alpha >= 0 && k.alpha <= 1)) throw InvalidInput("alpha must lie in [0, 1]");
          if (std::abs(k.beta.cap() - 0.5) > kWeightTolerance) {
            throw InvalidInput("generalized contraction modulus must have cap 1/2");
          }
        } else {
          k.fkind.validate();
          if (std::abs(k.beta.cap() - 0.5) > kWeightTolerance) {
            throw InvalidInput("generalized contraction modulus must have cap 1/2");
          }
        }
      },
      kind);
}

inline std::string kind_name(const ContractionKind& kind) {
  return std::visit(
      [](const auto& k) -> std::string {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, BanachC>) return "banach";
        else if constexpr (std::is_same_v<T, KannanC>) return "kannan";
        else if constexpr (std::is_same_v<T, FisherC>) return "fisher";
        else if constexpr (std::is_same_v<T, GenC>) return "gen-c";
        else if constexpr (std::is_same_v<T, GenH>) return "gen-h";
        else return "gen-l";
      },
      kind);
}

/// The functional the kind's bound is built from.
inline double kind_functional(const ContractionKind& kind, const Operator& u, const HatTuple& w,
                              const HatTuple& v) {
  return std::visit(
      [&](const auto& k) -> double {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, BanachC>) return banach_b(w, v);
        else if constexpr (std::is_same_v<T, KannanC>) return kannan_k(u, w, v);
        else if constexpr (std::is_same_v<T, FisherC>) return fisher_f(u, w, v);
        else if constexpr (std::is_same_v<T, GenC>) return mix_m_prime(u, w, v, k.weights);
        else if constexpr (std::is_same_v<T, GenH>) return mix_m(u, w, v, k.alpha);
        else return mix_l(u, w, v, k.fkind);
      },
      kind);
}

inline double kind_modulus(const ContractionKind& kind, double functional) {
  return std::visit(
      [&](const auto& k) -> double {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, BanachC> || std::is_same_v<T, KannanC> ||
                      std::is_same_v<T, FisherC>) {
          return k.c * functional;
        } else {
          return k.beta(functional) * functional;
        }
      },
      kind);
}

/// Right-hand side of the kind's defining inequality at (w, v).
inline double rhs_bound(const Operator& u, const HatTuple& w, const HatTuple& v,
                        const ContractionKind& kind) {
  validate(kind);
  return kind_modulus(kind, kind_functional(kind, u, w, v));
}

struct SamplerConfig {
  std::size_t sample_count = 1000;
  std::uint64_t prng_seed = 0;
  bool include_boundary = true;  // adds endpoint and branch-point pairs
};

struct Violation {
  std::vector<double> w;
  std::vector<double> v;
  double lhs = 0;
  double rhs = 0;
  std::string note;  // non-empty when evaluation itself failed
};

struct CheckReport {
  std::size_t samples_tested = 0;
  std::vector<Violation> violations;
  double max_ratio = 0;           // sup lhs/rhs over samples with rhs above the floor
  double estimated_constant = 0;  // sup lhs/functional, same floor
  bool passed = false;
};

namespace detail {

inline double canonical(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform_in(std::mt19937_64& rng, const Interval& box) {
  return box.a + box.length() * canonical(rng);
}

inline const Interval& sampling_box(const Operator& u) {
  if (!u.space().bounds) {
    throw InvalidInput("sampling requires an operator with a bounded space");
  }
  return *u.space().bounds;
}

/// Values worth forcing into the sample stream: the interval endpoints plus
/// any branch points of a piecewise body.
inline std::vector<double> boundary_values(const Operator& u, const Interval& box) {
  std::vector<double> values = {box.a, box.b};
  for (double b : u.branch_points()) {
    if (box.contains(b)) values.push_back(b);
  }
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

inline constexpr std::size_t kMixedPairsPerBoundaryValue = 8;

// Enumerates the deterministic sample stream: boundary-constant pairs, mixed
// pairs pinning the eta-th coordinate to a boundary value, then the uniform
// pairs. Returns the number of pairs emitted.
template <typename Callback>
std::size_t for_each_sample_pair(const Operator& u, const SamplerConfig& cfg, Callback&& cb) {
  if (cfg.sample_count < 1) throw InvalidInput("sample_count must be at least 1");
  const Interval& box = sampling_box(u);
  const std::size_t eta = u.eta();
  std::mt19937_64 rng(cfg.prng_seed);
  std::size_t emitted = 0;

  auto random_head = [&] {
    std::vector<double> head(eta);
    for (double& x : head) x = uniform_in(rng, box);
    return head;
  };

  if (cfg.include_boundary) {
    const std::vector<double> values = boundary_values(u, box);
    for (double s : values) {
      for (double t : values) {
        cb(std::vector<double>(eta, s), std::vector<double>(eta, t));
        ++emitted;
      }
    }
    for (double s : values) {
      for (std::size_t rep = 0; rep < kMixedPairsPerBoundaryValue; ++rep) {
        std::vector<double> w = random_head();
        w.back() = s;
        cb(std::move(w), random_head());
        ++emitted;
      }
      for (std::size_t rep = 0; rep < kMixedPairsPerBoundaryValue; ++rep) {
        std::vector<double> w = random_head();
        std::vector<double> v = random_head();
        v.back() = s;
        cb(std::move(w), std::move(v));
        ++emitted;
      }
    }
  }

  for (std::size_t k = 0; k < cfg.sample_count; ++k) {
    std::vector<double> w = random_head();
    cb(std::move(w), random_head());
    ++emitted;
  }
  return emitted;
}

/// Samples the operator over its space. An image escaping the space violates
/// the closure precondition and raises InvalidInput. Evaluation failures are
/// appended to `sink` as witnessed violations when a sink is given, and raise
/// InvalidInput otherwise.
inline void verify_closure(const Operator& u, const SamplerConfig& cfg,
                           std::vector<Violation>* sink = nullptr) {
  const Interval& box = sampling_box(u);
  std::mt19937_64 rng(cfg.prng_seed ^ 0x9e3779b97f4a7c15ULL);
  const std::size_t eta = u.eta();
  std::vector<std::vector<double>> probes;
  for (double s : boundary_values(u, box)) {
    probes.emplace_back(eta, s);
  }
  const std::size_t random_probes = std::min<std::size_t>(cfg.sample_count, 256);
  for (std::size_t k = 0; k < random_probes; ++k) {
    std::vector<double> head(eta);
    for (double& x : head) x = uniform_in(rng, box);
    probes.push_back(std::move(head));
  }
  for (const auto& head : probes) {
    double y;
    try {
      y = u.apply_head(head);
    } catch (const expr::EvalDomainError& e) {
      if (sink) {
        sink->push_back({head, head, 0, 0, std::string("evaluation failed: ") + e.what()});
        continue;
      }
      throw InvalidInput(std::string("operator failed to evaluate on its space: ") + e.what());
    }
    if (!u.space().admits(y)) {
      throw InvalidInput("operator is not closed into its space: image " + format_double(y) +
                         " escapes");
    }
  }
}

}  // namespace detail

inline CheckReport check_inequality(const Operator& u, const ContractionKind& kind,
                                    const SamplerConfig& cfg) {
  validate(kind);
  CheckReport report;
  detail::verify_closure(u, cfg, &report.violations);
  report.samples_tested = detail::for_each_sample_pair(
      u, cfg, [&](std::vector<double> wh, std::vector<double> vh) {
        try {
          HatTuple w(wh);
          HatTuple v(vh);
          double lhs = distance(u.apply(w), u.apply(v));
          double functional = kind_functional(kind, u, w, v);
          double rhs = kind_modulus(kind, functional);
          if (rhs > kDenominatorFloor) {
            report.max_ratio = std::max(report.max_ratio, lhs / rhs);
          }
          if (functional > kDenominatorFloor) {
            report.estimated_constant = std::max(report.estimated_constant, lhs / functional);
          }
          if (lhs > rhs + kViolationSlack) {
            report.violations.push_back({std::move(wh), std::move(vh), lhs, rhs, ""});
          }
        } catch (const expr::EvalDomainError& e) {
          report.violations.push_back(
              {std::move(wh), std::move(vh), 0, 0, std::string("evaluation failed: ") + e.what()});
        }
      });
  report.passed = report.violations.empty();
  return report;
}

/// Which functional to measure an operator's Lipschitz-style ratio against.
class Functional {
 public:
  enum class Which { Banach, Kannan, Fisher, MPrime, M, L };

  static Functional banach() { return Functional(Which::Banach); }
  static Functional kannan() { return Functional(Which::Kannan); }
  static Functional fisher() { return Functional(Which::Fisher); }
  static Functional m_prime(MixWeights weights) {
    Functional f(Which::MPrime);
    f.weights_ = weights;
    return f;
  }
  static Functional m(double alpha) {
    Functional f(Which::M);
    f.alpha_ = alpha;
    return f;
  }
  static Functional l(FKind fkind) {
    Functional f(Which::L);
    f.fkind_ = fkind;
    return f;
  }

  Which which() const { return which_; }

  double eval(const Operator& u, const HatTuple& w, const HatTuple& v) const {
    switch (which_) {
      case Which::Banach: return banach_b(w, v);
      case Which::Kannan: return kannan_k(u, w, v);
      case Which::Fisher: return fisher_f(u, w, v);
      case Which::MPrime: return mix_m_prime(u, w, v, weights_);
      case Which::M: return mix_m(u, w, v, alpha_);
      case Which::L: return mix_l(u, w, v, fkind_);
    }
    return 0.0;
  }

 private:
  explicit Functional(Which which) : which_(which) {}

  Which which_;
  MixWeights weights_{};
  double alpha_ = 0;
  FKind fkind_{};
};

/// Sup over samples of d(U(w), U(v)) / functional(w, v); samples whose
/// functional value sits below the floor are skipped, and 0 is returned when
/// every sample was skipped.
inline double estimate_constant(const Operator& u, const Functional& functional,
                                const SamplerConfig& cfg) {
  detail::verify_closure(u, cfg);
  double best = 0;
  detail::for_each_sample_pair(u, cfg, [&](std::vector<double> wh, std::vector<double> vh) {
    HatTuple w(std::move(wh));
    HatTuple v(std::move(vh));
    double lhs = distance(u.apply(w), u.apply(v));
    double den = functional.eval(u, w, v);
    if (den >= kDenominatorFloor) best = std::max(best, lhs / den);
  });
  return best;
}

}  // namespace fixlab
