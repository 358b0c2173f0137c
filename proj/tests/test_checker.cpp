#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "fixlab/catalog.hpp"
#include "fixlab/checker.hpp"

using namespace fixlab;

namespace {

Operator op_on_unit(std::size_t eta, std::string_view src) {
  return Operator::parse(eta, src, SpaceDescriptor::interval(0.0, 1.0));
}

bool has_witness(const CheckReport& report, double w, double v) {
  for (const Violation& viol : report.violations) {
    if (viol.w.size() == 1 && viol.v.size() == 1 && viol.w[0] == w && viol.v[0] == v) {
      return true;
    }
  }
  return false;
}

}  // namespace

TEST_CASE("rhs_bound matches the defining inequalities") {
  Operator c3060 = op_on_unit(1, "if u < 1 then u^2/30 else 1/60");
  HatTuple w = hat_embed({0.8});
  HatTuple v = hat_embed({0.3});
  ContractionKind genc = GenC{MixWeights{0.5, 0.125, 0.125}, GeraghtyFn::constant(0.375)};
  CHECK(rhs_bound(c3060, w, v, genc) ==
        0.375 * mix_m_prime(c3060, w, v, MixWeights{0.5, 0.125, 0.125}));

  Operator id = op_on_unit(1, "u");
  CHECK(rhs_bound(id, hat_embed({0.4}), hat_embed({0.9}), KannanC{0.3}) == 0.0);

  Operator scale = op_on_unit(1, "0.9*u");
  CHECK(rhs_bound(scale, hat_embed({1.0}), hat_embed({0.0}), BanachC{0.9}) == 0.9);
}

TEST_CASE("contraction kind parameters are validated") {
  CHECK_THROWS_AS(validate(ContractionKind{KannanC{0.6}}), InvalidInput);
  CHECK_THROWS_AS(validate(ContractionKind{FisherC{0.0}}), InvalidInput);
  CHECK_THROWS_AS(validate(ContractionKind{BanachC{1.0}}), InvalidInput);
  CHECK_THROWS_AS(
      validate(ContractionKind{GenC{MixWeights{0.5, 0.5, 0.5}, GeraghtyFn::constant(0.375)}}),
      InvalidInput);
  CHECK_THROWS_AS(
      validate(ContractionKind{GenH{0.5, GeraghtyFn::constant(0.2, 0.4)}}),
      InvalidInput);  // cap must be 1/2
  CHECK_NOTHROW(validate(ContractionKind{GenH{0.5, GeraghtyFn::constant(0.25)}}));
}

TEST_CASE("the weighted-K/F catalog example passes its check") {
  Operator h1025 = op_on_unit(1, "if u < 1 then u/10 else 1/25");
  SamplerConfig cfg{10000, 99, true};
  CheckReport report =
      check_inequality(h1025, GenH{0.5, GeraghtyFn::constant(0.25)}, cfg);
  CHECK(report.passed);
  CHECK(report.violations.empty());
  CHECK(report.samples_tested >= cfg.sample_count);
  CHECK(report.max_ratio <= 1.0);
}

TEST_CASE("the identity violates the Kannan inequality") {
  Operator id = op_on_unit(1, "u");
  CheckReport report = check_inequality(id, KannanC{0.49}, SamplerConfig{1000, 7, true});
  CHECK_FALSE(report.passed);
  CHECK_FALSE(report.violations.empty());
}

TEST_CASE("0.9u fails Kannan with the endpoint witness") {
  Operator scale = op_on_unit(1, "0.9*u");
  CheckReport report = check_inequality(scale, KannanC{0.49}, SamplerConfig{1000, 7, true});
  CHECK_FALSE(report.passed);
  REQUIRE(has_witness(report, 1.0, 0.0));
  for (const Violation& viol : report.violations) {
    if (viol.w[0] == 1.0 && viol.v[0] == 0.0) {
      CHECK(viol.lhs == Catch::Approx(0.9).margin(1e-15));
      CHECK(viol.rhs == Catch::Approx(0.49 * 0.1).margin(1e-12));
    }
  }
}

TEST_CASE("violation witnesses replay exactly") {
  Operator id = op_on_unit(1, "u");
  ContractionKind kind = KannanC{0.49};
  CheckReport report = check_inequality(id, kind, SamplerConfig{500, 13, true});
  REQUIRE_FALSE(report.violations.empty());
  for (const Violation& viol : report.violations) {
    REQUIRE(viol.note.empty());
    HatTuple w = hat_embed(viol.w);
    HatTuple v = hat_embed(viol.v);
    double lhs = distance(id.apply(w), id.apply(v));
    double rhs = rhs_bound(id, w, v, kind);
    CHECK(lhs == viol.lhs);
    CHECK(rhs == viol.rhs);
    CHECK(lhs > rhs + kViolationSlack);
  }
}

TEST_CASE("check reports are deterministic") {
  Operator h1025 = op_on_unit(1, "if u < 1 then u/10 else 1/25");
  SamplerConfig cfg{2000, 424242, true};
  ContractionKind kind = GenH{0.5, GeraghtyFn::constant(0.25)};
  CheckReport a = check_inequality(h1025, kind, cfg);
  CheckReport b = check_inequality(h1025, kind, cfg);
  CHECK(a.samples_tested == b.samples_tested);
  CHECK(a.max_ratio == b.max_ratio);
  CHECK(a.estimated_constant == b.estimated_constant);
  CHECK(a.passed == b.passed);
  CHECK(a.violations.size() == b.violations.size());
}

TEST_CASE("passing a check is monotone in the constant") {
  Operator kannan8 = op_on_unit(1, "if u < 1 then u/8 else 1/16");
  SamplerConfig cfg{2000, 5, true};
  CheckReport tight = check_inequality(kannan8, KannanC{0.2}, cfg);
  REQUIRE(tight.passed);
  CheckReport looser = check_inequality(kannan8, KannanC{0.3}, cfg);
  CHECK(looser.passed);
  CheckReport loosest = check_inequality(kannan8, KannanC{0.45}, cfg);
  CHECK(loosest.passed);
}

TEST_CASE("constant estimation approaches the analytic supremum") {
  // pure u/8: sup over [0,1]^2 of (|w-v|/8) / ((7/8)(w+v)) = 1/7, attained
  // with one argument at zero
  Operator pure = op_on_unit(1, "u/8");
  SamplerConfig cfg{5000, 11, true};
  double estimate = estimate_constant(pure, Functional::kannan(), cfg);
  CHECK(estimate <= 1.0 / 7.0 + 1e-6);
  CHECK(estimate >= 1.0 / 7.0 - 1e-9);

  Operator scale = op_on_unit(1, "0.4*u");
  double banach_est = estimate_constant(scale, Functional::banach(), cfg);
  CHECK(banach_est == Catch::Approx(0.4).margin(1e-12));

  // a constant operator has lhs identically zero, so every ratio is zero
  Operator constant = op_on_unit(1, "0.3");
  CHECK(estimate_constant(constant, Functional::banach(), cfg) == 0.0);
  CHECK(estimate_constant(constant, Functional::kannan(), cfg) == 0.0);
}

TEST_CASE("checks require a bounded space and a closed operator") {
  Operator on_line = Operator::parse(1, "u/2", SpaceDescriptor::real_line());
  CHECK_THROWS_AS(check_inequality(on_line, KannanC{0.4}, SamplerConfig{100, 1, true}),
                  InvalidInput);

  Operator escapes = op_on_unit(1, "u+1");
  CHECK_THROWS_AS(check_inequality(escapes, KannanC{0.4}, SamplerConfig{100, 1, true}),
                  InvalidInput);
}

TEST_CASE("evaluation failures are reported as violations with the witness") {
  // closed into [0,1] but undefined at u = 0.5
  Operator trap = op_on_unit(1, "if u == 0.5 then u/(u-0.5) else u/2");
  CheckReport report = check_inequality(trap, BanachC{0.9}, SamplerConfig{50, 3, true});
  bool found = false;
  for (const Violation& viol : report.violations) {
    if (!viol.note.empty()) found = true;
  }
  CHECK(found);
  CHECK_FALSE(report.passed);
}

TEST_CASE("corollary weights reproduce the plain-constant checks on the catalog") {
  SamplerConfig cfg{3000, 2024, true};
  struct Pairing {
    ContractionKind plain;
    ContractionKind general;
  };
  const double c_kannan = 0.2, c_fisher = 0.3, c_banach = 0.3;
  Pairing pairings[] = {
      {KannanC{c_kannan}, GenC{MixWeights{0, 0.5, 0}, GeraghtyFn::constant(c_kannan)}},
      {FisherC{c_fisher}, GenC{MixWeights{0, 0, 0.5}, GeraghtyFn::constant(c_fisher)}},
      {BanachC{c_banach}, GenC{MixWeights{1, 0, 0}, GeraghtyFn::constant(c_banach)}},
  };
  for (const CatalogEntry& entry : catalog()) {
    Operator u = make_catalog_operator(entry, 1);
    for (const Pairing& p : pairings) {
      CheckReport plain = check_inequality(u, p.plain, cfg);
      CheckReport general = check_inequality(u, p.general, cfg);
      INFO(entry.name << " / " << kind_name(p.plain));
      CHECK(plain.passed == general.passed);
      CHECK(plain.violations.size() == general.violations.size());
    }
  }
}

TEST_CASE("the linear scaling passes f-family checks with max and min") {
  Operator scale = op_on_unit(1, "0.25*u");
  SamplerConfig cfg{3000, 6, true};
  // lhs = 0.25 B; max(B,K,F) >= B, and min's worst ratio on this map is 1/3
  CheckReport max_report =
      check_inequality(scale, GenL{FKind::max_of(), GeraghtyFn::constant(0.375)}, cfg);
  CHECK(max_report.passed);
  CheckReport min_report =
      check_inequality(scale, GenL{FKind::min_of(), GeraghtyFn::constant(0.375)}, cfg);
  CHECK(min_report.passed);
  CheckReport convex_report = check_inequality(
      scale, GenL{FKind::convex(0.5, 0.125, 0.125), GeraghtyFn::constant(0.375)}, cfg);
  CHECK(convex_report.passed);

  // the identity fails the same f-family checks
  Operator id = op_on_unit(1, "u");
  CHECK_FALSE(
      check_inequality(id, GenL{FKind::max_of(), GeraghtyFn::constant(0.375)}, cfg).passed);
}

TEST_CASE("boundary pairs can be disabled") {
  Operator scale = op_on_unit(1, "0.9*u");
  SamplerConfig with{100, 7, true};
  SamplerConfig without{100, 7, false};
  CHECK(check_inequality(scale, BanachC{0.95}, without).samples_tested == 100);
  CHECK(check_inequality(scale, BanachC{0.95}, with).samples_tested > 100);
}
