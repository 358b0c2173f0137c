#pragma once
// Scalar metric space on the real line, closed intervals, and hat-tuples:
// finite heads (x_1, ..., x_eta) standing for infinite tuples whose
// coordinates past the eta-th all repeat the eta-th.

#include <charconv>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fixlab {

/// Thrown when an argument violates an operation's preconditions.
struct InvalidInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) {
    throw InvalidInput(std::string(what) + " must be finite");
  }
}

/// Shortest round-trip decimal form, independent of the global locale.
inline std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

/// Absolute-difference metric on the real line.
inline double distance(double x, double y) {
  require_finite(x, "distance argument");
  require_finite(y, "distance argument");
  return std::abs(x - y);
}

/// Closed interval [a, b], a < b.
struct Interval {
  double a;
  double b;

  Interval(double a_, double b_) : a(a_), b(b_) {
    require_finite(a_, "interval endpoint");
    require_finite(b_, "interval endpoint");
    if (!(a_ < b_)) throw InvalidInput("interval requires a < b");
  }

  double length() const { return b - a; }
  double midpoint() const { return 0.5 * (a + b); }
  bool contains(double x) const { return x >= a && x <= b; }
};

/// Ambient set: a closed interval when bounded, the whole real line otherwise.
struct SpaceDescriptor {
  std::optional<Interval> bounds;

  static SpaceDescriptor real_line() { return {}; }
  static SpaceDescriptor interval(double a, double b) {
    return {Interval(a, b)};
  }

  bool admits(double x) const {
    if (!std::isfinite(x)) return false;
    return !bounds || bounds->contains(x);
  }

  double midpoint() const { return bounds ? bounds->midpoint() : 0.0; }
};

/// Head of length eta plus the convention that every later coordinate
/// repeats the eta-th. Immutable after construction.
class HatTuple {
 public:
  explicit HatTuple(std::vector<double> head) : head_(std::move(head)) {
    if (head_.empty()) throw InvalidInput("hat tuple requires a non-empty head");
    for (double x : head_) require_finite(x, "hat tuple entry");
  }

  std::size_t eta() const { return head_.size(); }
  std::span<const double> head() const { return head_; }
  double last() const { return head_.back(); }

  /// 1-based projection; every index beyond eta yields the eta-th coordinate.
  double at(std::size_t i) const {
    if (i == 0) throw InvalidInput("hat tuple index is 1-based");
    return i <= head_.size() ? head_[i - 1] : head_.back();
  }

 private:
  std::vector<double> head_;
};

inline HatTuple hat_embed(std::vector<double> head) {
  return HatTuple(std::move(head));
}

inline double hat_project(const HatTuple& t, std::size_t i) { return t.at(i); }

/// The tuple (v, v, ..., v) of length eta.
inline HatTuple constant_tuple(double v, std::size_t eta) {
  if (eta == 0) throw InvalidInput("eta must be positive");
  return HatTuple(std::vector<double>(eta, v));
}

}  // namespace fixlab
