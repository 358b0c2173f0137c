// Command-line front end: Picard iteration, contraction certification,
// Volterra solving, functional evaluation, and a built-in demo suite.
//
// Exit codes: 0 = success/pass, 1 = mathematical failure (violations,
// non-convergence, divergence), 2 = usage or configuration error.

#include <chrono>
#include <cstring>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fixlab/fixlab.hpp"

namespace {

using nlohmann::json;
using namespace fixlab;

double parse_double_str(std::string text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
    text.erase(text.begin());
  }
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
    text.pop_back();
  }
  double value = 0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw InvalidInput("cannot parse number '" + text + "'");
  }
  return value;
}

std::vector<double> parse_comma_list(const std::string& text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    std::size_t len = comma == std::string::npos ? std::string::npos : comma - start;
    out.push_back(parse_double_str(text.substr(start, len)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

GeraghtyFn beta_from(const std::string& family, double param) {
  if (family == "const") return GeraghtyFn::constant(param);
  if (family == "reciprocal") return GeraghtyFn::reciprocal_decay(param);
  if (family == "exp") return GeraghtyFn::exp_decay(param);
  throw InvalidInput("unknown beta family '" + family + "'");
}

FKind fkind_from(const std::string& name, double c1, double c2, double c3) {
  if (name == "convex") return FKind::convex(c1, c2, c3);
  if (name == "max") return FKind::max_of();
  if (name == "min") return FKind::min_of();
  throw InvalidInput("unknown f-kind '" + name + "'");
}

json kind_to_json(const ContractionKind& kind) {
  json out;
  out["kind"] = kind_name(kind);
  std::visit(
      [&out](const auto& k) {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, BanachC> || std::is_same_v<T, KannanC> ||
                      std::is_same_v<T, FisherC>) {
          out["c"] = k.c;
        } else if constexpr (std::is_same_v<T, GenC>) {
          out["alpha"] = k.weights.alpha;
          out["gamma"] = k.weights.gamma;
          out["delta"] = k.weights.delta;
        } else if constexpr (std::is_same_v<T, GenH>) {
          out["alpha"] = k.alpha;
        } else {
          out["f_kind"] = k.fkind.kind == FKind::Kind::Convex ? "convex"
                          : k.fkind.kind == FKind::Kind::Max  ? "max"
                                                              : "min";
        }
        if constexpr (std::is_same_v<T, GenC> || std::is_same_v<T, GenH> ||
                      std::is_same_v<T, GenL>) {
          out["beta_family"] = k.beta.family() == GeraghtyFn::Family::Constant ? "const"
                               : k.beta.family() == GeraghtyFn::Family::ReciprocalDecay
                                   ? "reciprocal"
                                   : "exp";
          out["beta_param"] = k.beta.param();
        }
      },
      kind);
  return out;
}

json check_report_to_json(const CheckReport& report) {
  json out;
  out["passed"] = report.passed;
  out["samples_tested"] = report.samples_tested;
  out["violation_count"] = report.violations.size();
  out["max_ratio"] = report.max_ratio;
  out["estimated_constant"] = report.estimated_constant;
  json violations = json::array();
  const std::size_t shown = std::min<std::size_t>(report.violations.size(), 100);
  for (std::size_t i = 0; i < shown; ++i) {
    const Violation& v = report.violations[i];
    violations.push_back({{"w", v.w}, {"v", v.v}, {"lhs", v.lhs}, {"rhs", v.rhs},
                          {"note", v.note}});
  }
  out["violations"] = violations;
  return out;
}

json document(const std::string& command, json inputs, json results, double wall_ms) {
  return json{{"schema_version", "1"},
              {"command", command},
              {"inputs", std::move(inputs)},
              {"results", std::move(results)},
              {"wall_time_ms", wall_ms}};
}

void write_json_file(const std::string& path, const json& doc) {
  std::ofstream os(path);
  if (!os) throw InvalidInput("cannot open '" + path + "' for writing");
  os << doc.dump(2) << "\n";
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

struct DemoItem {
  std::string name;
  bool passed;
  std::string detail;
};

std::vector<DemoItem> run_demo_items(std::size_t samples, std::uint64_t prng_seed) {
  std::vector<DemoItem> items;

  for (const CatalogEntry& entry : catalog()) {
    for (std::size_t eta : {std::size_t{1}, std::size_t{3}}) {
      Operator op = make_catalog_operator(entry, eta);
      ContractionKind kind = entry.kind();
      CheckReport report = check_inequality(op, kind, SamplerConfig{samples, prng_seed, true});
      items.push_back({entry.name + " " + kind_name(kind) + " check (eta=" + std::to_string(eta) +
                           ")",
                       report.passed,
                       "samples=" + std::to_string(report.samples_tested) +
                           " max_ratio=" + format_double(report.max_ratio)});

      std::vector<std::vector<double>> seed_sets = {
          std::vector<double>(eta, 0.5), std::vector<double>(eta, 0.25),
          std::vector<double>(eta, 0.99), std::vector<double>(eta, 1.0)};
      UniquenessReport probe = uniqueness_probe(op, seed_sets, 1e-10, 500);
      double worst = 0;
      for (const ProbeRun& run : probe.runs) {
        if (run.error.empty() && run.report.converged) {
          worst = std::max(worst,
                           std::abs(run.report.fixed_point - entry.expected_fixed_point));
        } else {
          worst = 1.0;
        }
      }
      bool ok = probe.agree && worst < 1e-8;
      items.push_back({entry.name + " picard (eta=" + std::to_string(eta) + ")", ok,
                       "worst |limit - expected|=" + format_double(worst)});
    }
  }

  {
    const CatalogEntry* entry = find_catalog_entry("kannan-8eta");
    Operator op = make_catalog_operator(*entry, 1);
    double estimate =
        estimate_constant(op, Functional::kannan(), SamplerConfig{samples, prng_seed, true});
    items.push_back({"kannan-8eta constant estimate (eta=1)", estimate <= 1.0 / 7.0 + 1e-6,
                     "estimate=" + format_double(estimate) + " bound=" +
                         format_double(1.0 / 7.0 + 1e-6)});
  }

  {
    Interval unit(0.0, 1.0);
    volterra::VolterraProblem p(volterra::Kernel::parse("u+1"), 1.0, unit, 1000,
                                volterra::choose_m(1.0, unit));
    volterra::VolterraReport rep = volterra::solve(p, 1e-12, 500);
    double worst = 0;
    for (std::size_t j = 0; j <= 1000; ++j) {
      worst = std::max(worst,
                       std::abs(rep.solution[j] - (std::exp(rep.solution.node(j)) - 1.0)));
    }
    items.push_back({"volterra kernel u+1, lambda=1 vs exp(x)-1",
                     rep.converged && worst <= 5e-6, "max node error=" + format_double(worst)});

    for (double lambda : {1.0, 3.0}) {
      volterra::VolterraProblem hom(volterra::Kernel::parse("u"), lambda, unit, 1000,
                                    volterra::choose_m(lambda, unit));
      volterra::VolterraReport hrep = volterra::solve(hom, 1e-12, 500);
      double sup = 0;
      for (std::size_t j = 0; j <= 1000; ++j) sup = std::max(sup, std::abs(hrep.solution[j]));
      items.push_back({"volterra kernel u, lambda=" + format_double(lambda) + " stays zero",
                       hrep.converged && sup <= 1e-10, "sup |w|=" + format_double(sup)});
    }
  }

  return items;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fixlab: fixed-point iteration, contraction certification, and "
               "Volterra-type integral equations"};
  app.require_subcommand(1);

  // ---- iterate ----
  auto* iterate = app.add_subcommand("iterate", "run the eta-step Picard iteration");
  std::string it_op;
  std::size_t it_eta = 1;
  std::string it_seeds;
  double it_tol = 1e-10;
  std::size_t it_max_iter = 100000;
  std::string it_trace, it_json;
  double it_smin = 0, it_smax = 1;
  iterate->add_option("--op", it_op, "operator expression over x1..x<eta> (alias u)")
      ->required();
  iterate->add_option("--eta", it_eta, "arity")->capture_default_str();
  iterate->add_option("--seeds", it_seeds,
                      "comma-separated seeds, eta values (default: eta midpoints)");
  iterate->add_option("--tol", it_tol, "stopping tolerance")->capture_default_str();
  iterate->add_option("--max-iter", it_max_iter, "iteration cap")->capture_default_str();
  iterate->add_option("--trace", it_trace, "write per-iteration CSV trace here");
  iterate->add_option("--json", it_json, "write the report document here");
  auto* it_min_opt = iterate->add_option("--space-min", it_smin,
                                         "lower bound (default: unbounded)");
  auto* it_max_opt = iterate->add_option("--space-max", it_smax,
                                         "upper bound (default: unbounded)");

  // ---- check ----
  auto* check = app.add_subcommand("check", "sample a contraction inequality");
  std::string ck_op, ck_kind;
  std::size_t ck_eta = 1;
  double ck_c = 0.2;
  double ck_alpha = 0.5, ck_gamma = 0.125, ck_delta = 0.125;
  std::string ck_beta_family = "const";
  double ck_beta_param = 0.25;
  std::string ck_fkind = "max";
  double ck_c1 = 1, ck_c2 = 0, ck_c3 = 0;
  std::size_t ck_samples = 10000;
  std::uint64_t ck_seed = 42;
  bool ck_boundary = true;
  double ck_smin = 0.0, ck_smax = 1.0;
  std::string ck_json;
  check->add_option("--op", ck_op, "operator expression")->required();
  check->add_option("--eta", ck_eta, "arity")->capture_default_str();
  check->add_option("--kind", ck_kind, "contraction class")
      ->required()
      ->check(CLI::IsMember({"banach", "kannan", "fisher", "gen-c", "gen-h", "gen-l"}));
  check->add_option("--c", ck_c, "constant for banach/kannan/fisher")->capture_default_str();
  check->add_option("--alpha", ck_alpha, "alpha weight (gen-c, gen-h)")->capture_default_str();
  check->add_option("--gamma", ck_gamma, "gamma weight (gen-c)")->capture_default_str();
  check->add_option("--delta", ck_delta, "delta weight (gen-c)")->capture_default_str();
  check->add_option("--beta-family", ck_beta_family, "modulus family: const|reciprocal|exp")
      ->capture_default_str()
      ->check(CLI::IsMember({"const", "reciprocal", "exp"}));
  check->add_option("--beta-param", ck_beta_param,
                    "modulus parameter (value for const, rate for decay)")
      ->capture_default_str();
  check->add_option("--f-kind", ck_fkind, "f for gen-l: convex|max|min")
      ->capture_default_str()
      ->check(CLI::IsMember({"convex", "max", "min"}));
  check->add_option("--c1", ck_c1, "convex f coefficient")->capture_default_str();
  check->add_option("--c2", ck_c2, "convex f coefficient")->capture_default_str();
  check->add_option("--c3", ck_c3, "convex f coefficient")->capture_default_str();
  check->add_option("--samples", ck_samples, "sampled pairs")->capture_default_str();
  check->add_option("--prng-seed", ck_seed, "sampler seed")->capture_default_str();
  check->add_flag("--boundary,!--no-boundary", ck_boundary,
                  "force endpoint/branch-point pairs (default on)");
  check->add_option("--space-min", ck_smin, "lower bound of the space")->capture_default_str();
  check->add_option("--space-max", ck_smax, "upper bound of the space")->capture_default_str();
  check->add_option("--json", ck_json, "write the report document here");

  // ---- volterra ----
  auto* volt = app.add_subcommand("volterra", "solve w(x) = lambda Int_a^x K(x, w(t)) dt");
  std::string vo_kernel;
  double vo_lambda = 1.0, vo_a = 0.0, vo_b = 1.0;
  std::size_t vo_n = 1000;
  double vo_tol = 1e-10;
  std::size_t vo_max_iter = 500;
  double vo_m = 0.0;
  std::string vo_out, vo_json;
  volt->add_option("--kernel", vo_kernel, "kernel expression in x (outer) and u (inner)")
      ->required();
  volt->add_option("--lambda", vo_lambda, "nonzero multiplier")->capture_default_str();
  volt->add_option("--a", vo_a, "left endpoint")->capture_default_str();
  volt->add_option("--b", vo_b, "right endpoint")->capture_default_str();
  volt->add_option("--n", vo_n, "grid subintervals")->capture_default_str();
  volt->add_option("--tol", vo_tol, "stopping tolerance (weighted metric)")
      ->capture_default_str();
  volt->add_option("--max-iter", vo_max_iter, "iteration cap")->capture_default_str();
  auto* vo_m_opt =
      volt->add_option("--m", vo_m, "Bielecki weight (default: max(|lambda|, 1))");
  volt->add_option("--out", vo_out, "write the solution CSV here");
  volt->add_option("--json", vo_json, "write the report document here");

  // ---- functional ----
  auto* func = app.add_subcommand("functional",
                                  "evaluate B/K/F/M'/M/L on explicit tuples");
  std::string fn_which;
  std::string fn_op = "u";
  std::size_t fn_eta = 1;
  std::string fn_w, fn_v;
  double fn_alpha = 0.5, fn_gamma = 0.125, fn_delta = 0.125;
  std::string fn_fkind = "max";
  double fn_c1 = 1, fn_c2 = 0, fn_c3 = 0;
  std::string fn_json;
  func->add_option("--functional", fn_which, "one of b|k|f|mprime|m|l")
      ->required()
      ->check(CLI::IsMember({"b", "k", "f", "mprime", "m", "l"}));
  func->add_option("--op", fn_op, "operator expression (identity by default; unused by b)")
      ->capture_default_str();
  func->add_option("--eta", fn_eta, "arity")->capture_default_str();
  func->add_option("--w", fn_w, "comma-separated first tuple")->required();
  func->add_option("--v", fn_v, "comma-separated second tuple")->required();
  func->add_option("--alpha", fn_alpha, "alpha (mprime, m)")->capture_default_str();
  func->add_option("--gamma", fn_gamma, "gamma (mprime)")->capture_default_str();
  func->add_option("--delta", fn_delta, "delta (mprime)")->capture_default_str();
  func->add_option("--f-kind", fn_fkind, "f for l: convex|max|min")
      ->capture_default_str()
      ->check(CLI::IsMember({"convex", "max", "min"}));
  func->add_option("--c1", fn_c1, "convex f coefficient")->capture_default_str();
  func->add_option("--c2", fn_c2, "convex f coefficient")->capture_default_str();
  func->add_option("--c3", fn_c3, "convex f coefficient")->capture_default_str();
  func->add_option("--json", fn_json, "write the report document here");

  // ---- demo ----
  auto* demo = app.add_subcommand("demo", "run the built-in operator catalog end to end");
  std::size_t dm_samples = 10000;
  std::uint64_t dm_seed = 42;
  std::string dm_json;
  demo->add_option("--samples", dm_samples, "sampled pairs per check")->capture_default_str();
  demo->add_option("--prng-seed", dm_seed, "sampler seed")->capture_default_str();
  demo->add_option("--json", dm_json, "write the report document here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    if (*iterate) {
      SpaceDescriptor space = SpaceDescriptor::real_line();
      if (it_min_opt->count() != it_max_opt->count()) {
        throw InvalidInput("--space-min and --space-max must be given together");
      }
      if (it_min_opt->count()) space = SpaceDescriptor::interval(it_smin, it_smax);
      Operator op = Operator::parse(it_eta, it_op, space);
      std::vector<double> seeds = it_seeds.empty()
                                      ? std::vector<double>(it_eta, space.midpoint())
                                      : parse_comma_list(it_seeds);
      json results;
      bool converged = false;
      try {
        ConvergenceReport rep = picard_run(op, seeds, it_tol, it_max_iter);
        converged = rep.converged;
        results = {{"converged", rep.converged},
                   {"fixed_point", rep.fixed_point},
                   {"iterations", rep.iterations},
                   {"residual", rep.residual},
                   {"last_step_distance",
                    rep.step_distances.empty() ? 0.0 : rep.step_distances.back()},
                   {"monotone_decreasing", rep.monotone_decreasing}};
        if (!it_trace.empty()) {
          std::ofstream os(it_trace);
          if (!os) throw InvalidInput("cannot open '" + it_trace + "' for writing");
          write_trace_csv(rep, os);
        }
        if (rep.converged) {
          std::cout << "converged to " << format_double(rep.fixed_point) << " in "
                    << rep.iterations << " iterations (residual "
                    << format_double(rep.residual) << ")\n";
        } else {
          std::cout << "did not converge within " << rep.iterations << " iterations\n";
        }
      } catch (const DivergenceError& e) {
        results = {{"converged", false}, {"diverged", true}, {"error", e.what()}};
        std::cout << "diverged: " << e.what() << "\n";
      }
      if (!it_json.empty()) {
        json inputs = {{"op", it_op},      {"eta", it_eta},          {"seeds", seeds},
                       {"tol", it_tol},    {"max_iter", it_max_iter}};
        if (space.bounds) {
          inputs["space"] = {{"min", space.bounds->a}, {"max", space.bounds->b}};
        }
        write_json_file(it_json, document("iterate", inputs, results, elapsed_ms(start)));
      }
      return converged ? 0 : 1;
    }

    if (*check) {
      ContractionKind kind = [&]() -> ContractionKind {
        if (ck_kind == "banach") return BanachC{ck_c};
        if (ck_kind == "kannan") return KannanC{ck_c};
        if (ck_kind == "fisher") return FisherC{ck_c};
        if (ck_kind == "gen-c") {
          return GenC{MixWeights{ck_alpha, ck_gamma, ck_delta},
                      beta_from(ck_beta_family, ck_beta_param)};
        }
        if (ck_kind == "gen-h") return GenH{ck_alpha, beta_from(ck_beta_family, ck_beta_param)};
        return GenL{fkind_from(ck_fkind, ck_c1, ck_c2, ck_c3),
                    beta_from(ck_beta_family, ck_beta_param)};
      }();
      validate(kind);
      Operator op = Operator::parse(ck_eta, ck_op, SpaceDescriptor::interval(ck_smin, ck_smax));
      SamplerConfig cfg{ck_samples, ck_seed, ck_boundary};
      CheckReport report = check_inequality(op, kind, cfg);
      if (report.passed) {
        std::cout << "PASS: no violation among " << report.samples_tested
                  << " samples (max ratio " << format_double(report.max_ratio) << ")\n";
      } else {
        std::cout << "FAIL: " << report.violations.size() << " violations among "
                  << report.samples_tested << " samples\n";
        const Violation& first = report.violations.front();
        std::cout << "first witness: w=[";
        for (std::size_t i = 0; i < first.w.size(); ++i) {
          std::cout << (i ? "," : "") << format_double(first.w[i]);
        }
        std::cout << "] v=[";
        for (std::size_t i = 0; i < first.v.size(); ++i) {
          std::cout << (i ? "," : "") << format_double(first.v[i]);
        }
        std::cout << "] lhs=" << format_double(first.lhs) << " rhs=" << format_double(first.rhs);
        if (!first.note.empty()) std::cout << " (" << first.note << ")";
        std::cout << "\n";
      }
      if (!ck_json.empty()) {
        json inputs = {{"op", ck_op},
                       {"eta", ck_eta},
                       {"kind", kind_to_json(kind)},
                       {"samples", ck_samples},
                       {"prng_seed", ck_seed},
                       {"include_boundary", ck_boundary},
                       {"space", {{"min", ck_smin}, {"max", ck_smax}}}};
        write_json_file(ck_json,
                        document("check", inputs, check_report_to_json(report),
                                 elapsed_ms(start)));
      }
      return report.passed ? 0 : 1;
    }

    if (*volt) {
      Interval interval(vo_a, vo_b);
      double m = vo_m_opt->count() ? vo_m : volterra::choose_m(vo_lambda, interval);
      volterra::VolterraProblem problem(volterra::Kernel::parse(vo_kernel), vo_lambda, interval,
                                        vo_n, m);
      json results;
      bool converged = false;
      try {
        volterra::VolterraReport rep = volterra::solve(problem, vo_tol, vo_max_iter);
        converged = rep.converged;
        results = {{"converged", rep.converged},
                   {"iterations", rep.iterations},
                   {"m", m},
                   {"n", vo_n},
                   {"residual_bielecki", rep.residual_bielecki},
                   {"residual_sup", rep.residual_sup},
                   {"endpoint_value", rep.solution[vo_n]}};
        if (!vo_out.empty()) {
          std::ofstream os(vo_out);
          if (!os) throw InvalidInput("cannot open '" + vo_out + "' for writing");
          volterra::write_solution_csv(rep.solution, os);
        }
        std::cout << (rep.converged ? "converged" : "did not converge") << " in "
                  << rep.iterations << " iterations; w(" << format_double(vo_b) << ") = "
                  << format_double(rep.solution[vo_n]) << "\n";
      } catch (const DivergenceError& e) {
        results = {{"converged", false}, {"diverged", true}, {"error", e.what()}};
        std::cout << "diverged: " << e.what() << "\n";
      }
      if (!vo_json.empty()) {
        json inputs = {{"kernel", vo_kernel}, {"lambda", vo_lambda}, {"a", vo_a},
                       {"b", vo_b},           {"n", vo_n},           {"m", m},
                       {"tol", vo_tol},       {"max_iter", vo_max_iter}};
        write_json_file(vo_json, document("volterra", inputs, results, elapsed_ms(start)));
      }
      return converged ? 0 : 1;
    }

    if (*func) {
      Operator op = Operator::parse(fn_eta, fn_op, SpaceDescriptor::real_line());
      HatTuple w = hat_embed(parse_comma_list(fn_w));
      HatTuple v = hat_embed(parse_comma_list(fn_v));
      Functional fn = [&]() -> Functional {
        if (fn_which == "b") return Functional::banach();
        if (fn_which == "k") return Functional::kannan();
        if (fn_which == "f") return Functional::fisher();
        if (fn_which == "mprime") {
          return Functional::m_prime(MixWeights{fn_alpha, fn_gamma, fn_delta});
        }
        if (fn_which == "m") return Functional::m(fn_alpha);
        return Functional::l(fkind_from(fn_fkind, fn_c1, fn_c2, fn_c3));
      }();
      double value = fn.eval(op, w, v);
      std::cout << format_double(value) << "\n";
      if (!fn_json.empty()) {
        json inputs = {{"functional", fn_which}, {"op", fn_op},
                       {"eta", fn_eta},          {"w", parse_comma_list(fn_w)},
                       {"v", parse_comma_list(fn_v)}};
        write_json_file(fn_json, document("functional", inputs,
                                          json{{"value", value}}, elapsed_ms(start)));
      }
      return 0;
    }

    if (*demo) {
      std::vector<DemoItem> items = run_demo_items(dm_samples, dm_seed);
      bool all_passed = true;
      for (const DemoItem& item : items) {
        all_passed = all_passed && item.passed;
        std::cout << (item.passed ? "[PASS] " : "[FAIL] ") << item.name << " — " << item.detail
                  << "\n";
      }
      std::cout << (all_passed ? "all " : "some FAILED of ") << items.size()
                << " catalog items" << (all_passed ? " passed" : "") << "\n";
      if (!dm_json.empty()) {
        json item_list = json::array();
        for (const DemoItem& item : items) {
          item_list.push_back(
              {{"name", item.name}, {"passed", item.passed}, {"detail", item.detail}});
        }
        json inputs = {{"samples", dm_samples}, {"prng_seed", dm_seed}};
        write_json_file(dm_json,
                        document("demo", inputs,
                                 json{{"all_passed", all_passed}, {"items", item_list}},
                                 elapsed_ms(start)));
      }
      return all_passed ? 0 : 1;
    }
  } catch (const expr::SyntaxError& e) {
    std::cerr << "syntax error: " << e.what() << "\n";
    return 2;
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const expr::NameError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DivergenceError& e) {
    std::cerr << "divergence: " << e.what() << "\n";
    return 1;
  } catch (const expr::EvalDomainError& e) {
    std::cerr << "evaluation error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
