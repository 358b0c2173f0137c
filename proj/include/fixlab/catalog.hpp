#pragma once
// Built-in operator catalog: contraction maps on [0,1] used by the demo
// command and the test suites, each paired with the contraction class it is
// expected to satisfy. The kannan-8eta entry scales its branches with the
// arity; the others keep their constants at any arity.

#include <string>
#include <vector>

#include "fixlab/checker.hpp"

namespace fixlab {

struct CatalogEntry {
  std::string name;
  std::string summary;
  std::string (*source)(std::size_t eta);
  ContractionKind (*kind)();
  double expected_fixed_point;
};

namespace detail {

inline std::string kannan_8eta_source(std::size_t eta) {
  const std::string e = std::to_string(eta);
  return "if u < 1 then u/8^" + e + " else 1/16^" + e;
}
inline std::string scale_alpha_source(std::size_t) { return "0.25*u"; }
inline std::string h_20_18_source(std::size_t) { return "if u < 1 then u/20 else 1/18"; }
inline std::string c_30_60_source(std::size_t) { return "if u < 1 then u^2/30 else 1/60"; }
inline std::string h_10_25_source(std::size_t) { return "if u < 1 then u/10 else 1/25"; }

inline ContractionKind kannan_8eta_kind() { return KannanC{0.2}; }
inline ContractionKind scale_alpha_kind() { return FisherC{0.25}; }
inline ContractionKind h_20_18_kind() { return GenH{0.25, GeraghtyFn::constant(0.25)}; }
inline ContractionKind c_30_60_kind() {
  return GenC{MixWeights{0.5, 0.125, 0.125}, GeraghtyFn::constant(0.375)};
}
inline ContractionKind h_10_25_kind() { return GenH{0.5, GeraghtyFn::constant(0.25)}; }

}  // namespace detail

inline const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = {
      {"kannan-8eta", "u/8^eta, branch 1/16^eta at u = 1 (Kannan class)",
       &detail::kannan_8eta_source, &detail::kannan_8eta_kind, 0.0},
      {"scale-alpha", "0.25*u (Fisher class)", &detail::scale_alpha_source,
       &detail::scale_alpha_kind, 0.0},
      {"h-20-18", "u/20, branch 1/18 at u = 1 (weighted K/F class)", &detail::h_20_18_source,
       &detail::h_20_18_kind, 0.0},
      {"c-30-60", "u^2/30, branch 1/60 at u = 1 (weighted B/K/F class)", &detail::c_30_60_source,
       &detail::c_30_60_kind, 0.0},
      {"h-10-25", "u/10, branch 1/25 at u = 1 (weighted K/F class)", &detail::h_10_25_source,
       &detail::h_10_25_kind, 0.0},
  };
  return entries;
}

inline const CatalogEntry* find_catalog_entry(std::string_view name) {
  for (const CatalogEntry& e : catalog()) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

inline Operator make_catalog_operator(const CatalogEntry& entry, std::size_t eta) {
  return Operator::parse(eta, entry.source(eta), SpaceDescriptor::interval(0.0, 1.0));
}

}  // namespace fixlab
