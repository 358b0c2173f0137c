#pragma once
// Contraction functionals over hat-tuples. For an arity-eta operator U and
// tuples w, v the building blocks are
//
//   B(w, v)    = d(w_eta, v_eta)
//   K(U, w, v) = d(U(w), w_eta) + d(U(v), v_eta)
//   F(U, w, v) = d(U(w), v_eta) + d(U(v), w_eta)
//
// mixed either as  alpha*B + 2*gamma*K + 2*delta*F  (alpha + 2 gamma +
// 2 delta = 1), as  alpha*K + (1-alpha)*F, or as f(B, K, F) with f convex,
// max, or min. Modulus functions beta: [0,inf) -> [0,r) replace fixed
// contraction constants; the families here satisfy "beta(t_n) -> r forces
// t_n -> 0" by construction.

#include <algorithm>
#include <string>
#include <vector>

#include "fixlab/expr.hpp"
#include "fixlab/metric.hpp"

namespace fixlab {

inline constexpr double kWeightTolerance = 1e-12;

/// Arity-eta map defined by an expression over x1..x<eta>, with u as an
/// alias for the eta-th coordinate. Values are expected to land back in the
/// operator's space; that closure is sample-tested by the checker, not
/// enforced per evaluation.
class Operator {
 public:
  Operator(std::size_t eta, expr::ExprPtr body, SpaceDescriptor space)
      : eta_(eta), body_(std::move(body)), space_(space) {
    if (eta_ == 0) throw InvalidInput("operator arity must be positive");
    if (!body_) throw InvalidInput("operator requires a body expression");
    for (const std::string& name : expr::free_vars(body_)) {
      if (!allowed_variable(name)) {
        throw InvalidInput("operator variable '" + name + "' is not among x1..x" +
                           std::to_string(eta_) + ", u");
      }
    }
  }

  static Operator parse(std::size_t eta, std::string_view source, SpaceDescriptor space) {
    return Operator(eta, expr::parse_source(source), space);
  }

  std::size_t eta() const { return eta_; }
  const SpaceDescriptor& space() const { return space_; }
  const expr::ExprPtr& body() const { return body_; }

  double apply(const HatTuple& t) const {
    if (t.eta() != eta_) throw InvalidInput("operator arity mismatch");
    return apply_head(t.head());
  }

  double apply_head(std::span<const double> head) const {
    if (head.size() != eta_) throw InvalidInput("operator arity mismatch");
    expr::Env env;
    for (std::size_t i = 0; i < head.size(); ++i) {
      env.bind("x" + std::to_string(i + 1), head[i]);
    }
    env.bind("u", head.back());
    return expr::evaluate(body_, env);
  }

  /// Literal thresholds the body compares the eta-th coordinate against;
  /// these are where piecewise definitions switch branch.
  std::vector<double> branch_points() const {
    std::vector<double> out;
    collect_branch_points(*body_, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

 private:
  bool allowed_variable(const std::string& name) const {
    if (name == "u") return true;
    if (name.size() < 2 || name[0] != 'x' || name[1] == '0') return false;
    std::size_t index = 0;
    auto res = std::from_chars(name.data() + 1, name.data() + name.size(), index);
    return res.ec == std::errc{} && res.ptr == name.data() + name.size() && index >= 1 &&
           index <= eta_;
  }

  bool is_last_coordinate(const expr::Expr& e) const {
    const auto* var = std::get_if<expr::Variable>(&e.node);
    return var && (var->name == "u" || var->name == "x" + std::to_string(eta_));
  }

  void collect_branch_points(const expr::Expr& e, std::vector<double>& out) const {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, expr::Negate>) {
            collect_branch_points(*n.operand, out);
          } else if constexpr (std::is_same_v<T, expr::Binary>) {
            collect_branch_points(*n.left, out);
            collect_branch_points(*n.right, out);
          } else if constexpr (std::is_same_v<T, expr::Call>) {
            for (const auto& a : n.args) collect_branch_points(*a, out);
          } else if constexpr (std::is_same_v<T, expr::Conditional>) {
            const auto* lit_r = std::get_if<expr::Literal>(&n.right->node);
            const auto* lit_l = std::get_if<expr::Literal>(&n.left->node);
            if (lit_r && is_last_coordinate(*n.left)) out.push_back(lit_r->value);
            if (lit_l && is_last_coordinate(*n.right)) out.push_back(lit_l->value);
            collect_branch_points(*n.left, out);
            collect_branch_points(*n.right, out);
            collect_branch_points(*n.then_branch, out);
            collect_branch_points(*n.else_branch, out);
          }
        },
        e.node);
  }

  std::size_t eta_;
  expr::ExprPtr body_;
  SpaceDescriptor space_;
};

/// Convex weights of the alpha*B + 2*gamma*K + 2*delta*F mixture.
struct MixWeights {
  double alpha = 1.0;
  double gamma = 0.0;
  double delta = 0.0;

  void validate() const {
    require_finite(alpha, "alpha");
    require_finite(gamma, "gamma");
    require_finite(delta, "delta");
    if (alpha < 0 || gamma < 0 || delta < 0) {
      throw InvalidInput("mix weights must be nonnegative");
    }
    if (std::abs(alpha + 2 * gamma + 2 * delta - 1.0) > kWeightTolerance) {
      throw InvalidInput("mix weights must satisfy alpha + 2*gamma + 2*delta = 1");
    }
  }
};

/// Modulus function beta: [0,inf) -> [0,r). Restricted to a closed family so
/// the defining limit condition holds by construction rather than by trust in
/// an arbitrary callable. The decay families attain r at t = 0, where the
/// value is clamped just below the cap.
class GeraghtyFn {
 public:
  enum class Family { Constant, ReciprocalDecay, ExpDecay };

  static GeraghtyFn constant(double c, double cap = 0.5) {
    if (!(c >= 0) || !(c < cap)) throw InvalidInput("constant modulus requires 0 <= c < r");
    return GeraghtyFn(Family::Constant, c, cap);
  }

  static GeraghtyFn reciprocal_decay(double k, double cap = 0.5) {
    if (!(k > 0)) throw InvalidInput("decay rate must be positive");
    return GeraghtyFn(Family::ReciprocalDecay, k, cap);
  }

  static GeraghtyFn exp_decay(double k, double cap = 0.5) {
    if (!(k > 0)) throw InvalidInput("decay rate must be positive");
    return GeraghtyFn(Family::ExpDecay, k, cap);
  }

  Family family() const { return family_; }
  double param() const { return param_; }
  double cap() const { return cap_; }

  double operator()(double t) const {
    require_finite(t, "modulus argument");
    if (t < 0) throw InvalidInput("modulus argument must be nonnegative");
    switch (family_) {
      case Family::Constant:
        return param_;
      case Family::ReciprocalDecay:
        return std::min(cap_ / (1.0 + param_ * t), clamp_value());
      case Family::ExpDecay:
        return std::min(cap_ * std::exp(-param_ * t), clamp_value());
    }
    return 0.0;
  }

 private:
  GeraghtyFn(Family family, double param, double cap)
      : family_(family), param_(param), cap_(cap) {
    require_finite(param, "modulus parameter");
    require_finite(cap, "modulus cap");
    if (!(cap > 0) || !(cap <= 1)) throw InvalidInput("modulus cap must lie in (0, 1]");
  }

  double clamp_value() const { return cap_ * (1.0 - 1e-12); }

  Family family_;
  double param_;
  double cap_;
};

inline double geraghty_eval(const GeraghtyFn& beta, double t) { return beta(t); }

/// Choice of f in f(B, K, F): convex combination, max, or min.
struct FKind {
  enum class Kind { Convex, Max, Min };

  Kind kind = Kind::Max;
  double c1 = 0, c2 = 0, c3 = 0;  // Convex only

  static FKind convex(double c1, double c2, double c3) {
    FKind f;
    f.kind = Kind::Convex;
    f.c1 = c1;
    f.c2 = c2;
    f.c3 = c3;
    f.validate();
    return f;
  }

  static FKind max_of() { return FKind{Kind::Max}; }
  static FKind min_of() { return FKind{Kind::Min}; }

  void validate() const {
    if (kind != Kind::Convex) return;
    require_finite(c1, "c1");
    require_finite(c2, "c2");
    require_finite(c3, "c3");
    if (c1 < 0 || c2 < 0 || c3 < 0) throw InvalidInput("convex coefficients must be nonnegative");
    if (std::abs(c1 + 2 * c2 + 2 * c3 - 1.0) > kWeightTolerance) {
      throw InvalidInput("convex coefficients must satisfy c1 + 2*c2 + 2*c3 = 1");
    }
  }

  double apply(double b, double k, double f) const {
    switch (kind) {
      case Kind::Convex:
        return c1 * b + 2 * c2 * k + 2 * c3 * f;
      case Kind::Max:
        return std::max({b, k, f});
      case Kind::Min:
        return std::min({b, k, f});
    }
    return 0.0;
  }
};

namespace detail {

inline void require_same_arity(const HatTuple& w, const HatTuple& v) {
  if (w.eta() != v.eta()) throw InvalidInput("hat tuple arity mismatch");
}

inline void require_same_arity(const Operator& u, const HatTuple& w, const HatTuple& v) {
  require_same_arity(w, v);
  if (w.eta() != u.eta()) throw InvalidInput("operator/tuple arity mismatch");
}

}  // namespace detail

/// B: distance between the eta-th coordinates.
inline double banach_b(const HatTuple& w, const HatTuple& v) {
  detail::require_same_arity(w, v);
  return distance(w.last(), v.last());
}

/// K: each tuple's displacement under U from its own eta-th coordinate.
inline double kannan_k(const Operator& u, const HatTuple& w, const HatTuple& v) {
  detail::require_same_arity(u, w, v);
  return distance(u.apply(w), w.last()) + distance(u.apply(v), v.last());
}

/// F: crossed displacements, each image against the other tuple's coordinate.
inline double fisher_f(const Operator& u, const HatTuple& w, const HatTuple& v) {
  detail::require_same_arity(u, w, v);
  return distance(u.apply(w), v.last()) + distance(u.apply(v), w.last());
}

inline double mix_m_prime(const Operator& u, const HatTuple& w, const HatTuple& v,
                          const MixWeights& weights) {
  weights.validate();
  return weights.alpha * banach_b(w, v) + 2 * weights.gamma * kannan_k(u, w, v) +
         2 * weights.delta * fisher_f(u, w, v);
}

inline double mix_m(const Operator& u, const HatTuple& w, const HatTuple& v, double alpha) {
  require_finite(alpha, "alpha");
  if (alpha < 0 || alpha > 1) throw InvalidInput("alpha must lie in [0, 1]");
  return alpha * kannan_k(u, w, v) + (1 - alpha) * fisher_f(u, w, v);
}

inline double mix_l(const Operator& u, const HatTuple& w, const HatTuple& v, const FKind& fkind) {
  fkind.validate();
  return fkind.apply(banach_b(w, v), kannan_k(u, w, v), fisher_f(u, w, v));
}

}  // namespace fixlab
