#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "fixlab/functionals.hpp"

using namespace fixlab;

namespace {

Operator op_on_unit(std::size_t eta, std::string_view src) {
  return Operator::parse(eta, src, SpaceDescriptor::interval(0.0, 1.0));
}

}  // namespace

TEST_CASE("banach functional reads only the eta-th coordinates") {
  Operator id = op_on_unit(1, "u");
  (void)id;
  CHECK(banach_b(hat_embed({0.5}), hat_embed({0.5})) == 0.0);
  CHECK(banach_b(hat_embed({0.5}), hat_embed({0.0})) == 0.5);
  CHECK(banach_b(hat_embed({9, 9, 1}), hat_embed({9, 9, 0})) == 1.0);
  CHECK_THROWS_AS(banach_b(hat_embed({1.0}), hat_embed({1.0, 2.0})), InvalidInput);
}

TEST_CASE("kannan functional sums each tuple's own displacement") {
  Operator half = Operator::parse(1, "u/2", SpaceDescriptor::interval(0.0, 1.0));
  CHECK(kannan_k(half, hat_embed({1.0}), hat_embed({0.0})) == Catch::Approx(0.5).margin(1e-15));

  Operator tenth = op_on_unit(1, "u/10");
  CHECK(kannan_k(tenth, hat_embed({0.5}), hat_embed({0.0})) ==
        Catch::Approx(0.45).margin(1e-15));

  // both arguments already fixed points => zero
  Operator id = op_on_unit(1, "u");
  CHECK(kannan_k(id, hat_embed({0.3}), hat_embed({0.8})) == 0.0);
}

TEST_CASE("fisher functional crosses the comparisons") {
  Operator tenth = op_on_unit(1, "u/10");
  CHECK(fisher_f(tenth, hat_embed({0.5}), hat_embed({0.0})) ==
        Catch::Approx(0.55).margin(1e-15));

  Operator zero = op_on_unit(1, "0");
  CHECK(fisher_f(zero, hat_embed({1.0}), hat_embed({1.0})) == 2.0);

  Operator id = op_on_unit(1, "u");
  CHECK(fisher_f(id, hat_embed({0.4}), hat_embed({0.4})) == 0.0);
}

TEST_CASE("weighted mixture matches hand arithmetic") {
  Operator tenth = op_on_unit(1, "u/10");
  HatTuple w = hat_embed({0.5});
  HatTuple v = hat_embed({0.0});
  MixWeights weights{0.5, 0.125, 0.125};
  CHECK(mix_m_prime(tenth, w, v, weights) == Catch::Approx(0.5).margin(1e-15));

  Operator fp = op_on_unit(1, "u");
  CHECK(mix_m_prime(fp, hat_embed({0.25}), hat_embed({0.25}), weights) == 0.0);
}

TEST_CASE("two-way mixture matches hand arithmetic") {
  Operator tenth = op_on_unit(1, "u/10");
  HatTuple w = hat_embed({0.5});
  HatTuple v = hat_embed({0.0});
  CHECK(mix_m(tenth, w, v, 0.25) == Catch::Approx(0.525).margin(1e-15));
  CHECK_THROWS_AS(mix_m(tenth, w, v, 1.5), InvalidInput);
  CHECK_THROWS_AS(mix_m(tenth, w, v, -0.1), InvalidInput);
}

TEST_CASE("f-family mixture: max, min, convex") {
  Operator tenth = op_on_unit(1, "u/10");
  HatTuple w = hat_embed({0.5});
  HatTuple v = hat_embed({0.0});
  // B = 0.5, K = 0.45, F = 0.55
  CHECK(mix_l(tenth, w, v, FKind::max_of()) == Catch::Approx(0.55).margin(1e-15));
  CHECK(mix_l(tenth, w, v, FKind::min_of()) == Catch::Approx(0.45).margin(1e-15));
}

TEST_CASE("reduction identities hold exactly") {
  Operator tenth = op_on_unit(1, "u/10");
  std::mt19937_64 rng(5);
  auto uniform = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  for (int k = 0; k < 100; ++k) {
    HatTuple w = hat_embed({uniform()});
    HatTuple v = hat_embed({uniform()});
    double b = banach_b(w, v);
    double kf = kannan_k(tenth, w, v);
    double ff = fisher_f(tenth, w, v);
    CHECK(mix_m_prime(tenth, w, v, MixWeights{1, 0, 0}) == b);
    CHECK(mix_m_prime(tenth, w, v, MixWeights{0, 0.5, 0}) == kf);
    CHECK(mix_m_prime(tenth, w, v, MixWeights{0, 0, 0.5}) == ff);
    CHECK(mix_m(tenth, w, v, 1.0) == kf);
    CHECK(mix_m(tenth, w, v, 0.0) == ff);
    CHECK(mix_l(tenth, w, v, FKind::convex(1, 0, 0)) == b);
  }
}

TEST_CASE("functionals are nonnegative and symmetric on sampled pairs") {
  std::mt19937_64 rng(17);
  auto uniform = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  Operator ops[] = {op_on_unit(2, "if u < 1 then u/10 else 1/25"), op_on_unit(2, "0.25*u"),
                    op_on_unit(2, "if u < 1 then u^2/30 else 1/60")};
  for (const Operator& u : ops) {
    for (int k = 0; k < 200; ++k) {
      HatTuple w = hat_embed({uniform(), uniform()});
      HatTuple v = hat_embed({uniform(), uniform()});
      double values[] = {banach_b(w, v),
                         kannan_k(u, w, v),
                         fisher_f(u, w, v),
                         mix_m_prime(u, w, v, MixWeights{0.5, 0.125, 0.125}),
                         mix_m(u, w, v, 0.25),
                         mix_l(u, w, v, FKind::max_of())};
      double swapped[] = {banach_b(v, w),
                          kannan_k(u, v, w),
                          fisher_f(u, v, w),
                          mix_m_prime(u, v, w, MixWeights{0.5, 0.125, 0.125}),
                          mix_m(u, v, w, 0.25),
                          mix_l(u, v, w, FKind::max_of())};
      for (int i = 0; i < 6; ++i) {
        CHECK(values[i] >= 0.0);
        CHECK(values[i] == swapped[i]);
      }
    }
  }
}

TEST_CASE("functionals on hat tuples agree with their finite-head reading") {
  std::mt19937_64 rng(23);
  auto uniform = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  Operator u = op_on_unit(3, "if u < 1 then u/10 else 1/25");
  for (int k = 0; k < 100; ++k) {
    std::vector<double> wh = {uniform(), uniform(), uniform()};
    std::vector<double> vh = {uniform(), uniform(), uniform()};
    HatTuple w = hat_embed(wh);
    HatTuple v = hat_embed(vh);
    double uw = u.apply_head(wh);
    double uv = u.apply_head(vh);
    CHECK(banach_b(w, v) == distance(wh.back(), vh.back()));
    CHECK(kannan_k(u, w, v) == distance(uw, wh.back()) + distance(uv, vh.back()));
    CHECK(fisher_f(u, w, v) == distance(uw, vh.back()) + distance(uv, wh.back()));
  }
}

TEST_CASE("mix weights enforce the convexity identity") {
  CHECK_NOTHROW((MixWeights{0.5, 0.125, 0.125}.validate()));
  CHECK_NOTHROW((MixWeights{1, 0, 0}.validate()));
  CHECK_THROWS_AS((MixWeights{0.5, 0.5, 0.5}.validate()), InvalidInput);
  CHECK_THROWS_AS((MixWeights{-0.2, 0.3, 0.3}.validate()), InvalidInput);
}

TEST_CASE("convex f coefficients enforce the convexity identity") {
  CHECK_NOTHROW(FKind::convex(1, 0, 0));
  CHECK_NOTHROW(FKind::convex(0.5, 0.125, 0.125));
  CHECK_THROWS_AS(FKind::convex(0.5, 0.5, 0.5), InvalidInput);
  CHECK_THROWS_AS(FKind::convex(-1, 0.5, 0.5), InvalidInput);
}

TEST_CASE("modulus families stay strictly below their cap") {
  GeraghtyFn constant = GeraghtyFn::constant(0.375);
  CHECK(constant(0.0) == 0.375);
  CHECK(constant(123.0) == 0.375);

  GeraghtyFn recip = GeraghtyFn::reciprocal_decay(1.0);
  CHECK(recip(1.0) == Catch::Approx(0.25).margin(1e-15));
  CHECK(recip(0.0) < 0.5);
  CHECK(recip(0.0) == 0.5 * (1.0 - 1e-12));

  GeraghtyFn expd = GeraghtyFn::exp_decay(1.0);
  CHECK(expd(0.0) < 0.5);
  CHECK(expd(0.0) == 0.5 * (1.0 - 1e-12));

  CHECK_THROWS_AS(GeraghtyFn::constant(0.6), InvalidInput);
  CHECK_THROWS_AS(GeraghtyFn::constant(-0.1), InvalidInput);
  CHECK_THROWS_AS(GeraghtyFn::exp_decay(0.0), InvalidInput);
  CHECK_THROWS_AS(expd(-1.0), InvalidInput);

  // log-spaced sweep of [0, 1e6]
  for (const GeraghtyFn& beta : {constant, recip, expd}) {
    double prev = beta(0.0);
    CHECK(prev < beta.cap());
    for (double t = 1e-6; t <= 1e6; t *= 10) {
      double value = beta(t);
      CHECK(value >= 0.0);
      CHECK(value < beta.cap());
      if (beta.family() != GeraghtyFn::Family::Constant) CHECK(value <= prev);
      prev = value;
    }
  }
}

TEST_CASE("operator validates its free variables against the arity") {
  CHECK_THROWS_AS(op_on_unit(1, "x2"), InvalidInput);
  CHECK_THROWS_AS(op_on_unit(2, "x0 + u"), InvalidInput);
  CHECK_THROWS_AS(op_on_unit(1, "y"), InvalidInput);
  CHECK_NOTHROW(op_on_unit(1, "x1*u"));
  CHECK_NOTHROW(op_on_unit(3, "x1 + x2 - u"));
}

TEST_CASE("operator evaluation binds u to the last coordinate") {
  Operator u = op_on_unit(3, "x1 + 10*u");
  CHECK(u.apply(hat_embed({0.02, 0.9, 0.07})) == Catch::Approx(0.72).margin(1e-15));
  CHECK_THROWS_AS(u.apply(hat_embed({0.1, 0.2})), InvalidInput);
}

TEST_CASE("operator reports branch points on its last coordinate") {
  Operator piecewise = op_on_unit(1, "if u < 1 then u/20 else 1/18");
  auto points = piecewise.branch_points();
  REQUIRE(points.size() == 1);
  CHECK(points[0] == 1.0);

  Operator plain = op_on_unit(1, "u/4");
  CHECK(plain.branch_points().empty());

  Operator two = op_on_unit(1, "if u < 0.5 then 0 else if u < 1 then u/2 else 0.25");
  CHECK(two.branch_points() == std::vector<double>{0.5, 1.0});
}
