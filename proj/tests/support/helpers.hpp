#pragma once

#include <string>
#include <utility>
#include <vector>

#include "nilkill/catalog.hpp"
#include "nilkill/exterior.hpp"
#include "nilkill/killing.hpp"
#include "nilkill/random.hpp"
#include "oracle.hpp"

namespace testing_support {

using namespace nilkill;

inline Form random_form(int n, int k, Rng& rng) {
  Form w(n, k);
  w.coeffs() = rng.gaussian_vector(static_cast<int>(w.size()));
  return w;
}

// Every buildable catalog algebra, plus h3^C at a few values of lambda.
inline std::vector<std::pair<std::string, MetricLieAlgebra>> catalog_suite() {
  std::vector<std::pair<std::string, MetricLieAlgebra>> out;
  for (const CatalogEntry& e : catalog_algebras()) out.emplace_back(e.label, e.build());
  for (double lambda : {0.5, 2.0}) {
    out.emplace_back("h3^C(" + std::to_string(lambda) + ")", complex_heisenberg(lambda));
  }
  return out;
}

// Coefficients of the forms re-indexed over the lexicographic tuples used by the oracle.
inline Matrix lex_coefficients(const std::vector<Form>& forms, int n, int k) {
  const auto index = oracle::tuples(n, k);
  Matrix out(static_cast<Eigen::Index>(index.size()), static_cast<Eigen::Index>(forms.size()));
  for (size_t c = 0; c < forms.size(); ++c)
    for (size_t r = 0; r < index.size(); ++r) out(r, c) = forms[c].at(index[r]);
  return out;
}

// The Form whose coefficients over lexicographic tuples are `coeffs`.
inline Form form_from_lex(const Vector& coeffs, int n, int k) {
  const auto index = oracle::tuples(n, k);
  Form w(n, k);
  for (size_t r = 0; r < index.size(); ++r) w.coeff(indices_mask(index[r])) = coeffs(r);
  return w;
}

}  // namespace testing_support
