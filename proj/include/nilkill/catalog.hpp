#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nilkill/algebra.hpp"

namespace nilkill {

// h_{2l+1}: [e_{2i-1}, e_{2i}] = z, identity gram.
MetricLieAlgebra heisenberg(int l);

// Complex Heisenberg algebra with [e1,e3] = z1 = -[e2,e4], [e2,e3] = z2 = [e1,e4]
// and gram diag(1,1,1,1,lambda^2,lambda^2).
MetricLieAlgebra complex_heisenberg(double lambda);

// n_{3,2}: [e1,e2] = e4, [e1,e3] = e5, [e2,e3] = e6, identity gram.
MetricLieAlgebra free_two_step_3();

// Abelian R^d with identity gram.
MetricLieAlgebra euclidean(int d);

// Block-diagonal sum. Throws EmptySum on an empty list.
MetricLieAlgebra direct_sum(const std::vector<MetricLieAlgebra>& parts, std::string name = "");

// Two-step algebra v + z built from a representation rho of a compact Lie
// algebra (z, bracket) on v = R^p with identity gram: g([x,y], z) = <rho(z)x, y>.
MetricLieAlgebra from_representation(const StructureConstants& z_bracket,
                                     const std::vector<Matrix>& rho, const Matrix& gram_z,
                                     double tol = kDefaultTol);

struct CatalogParams {
  double lambda = 1.0;
  int l = 1;
  int d = 1;
};

// Named builders: heisenberg, complex_heisenberg, free_two_step_3, euclidean,
// and fixed sums such as R2+h3 or R2+n32.
std::vector<std::string> catalog_names();
std::string catalog_description(const std::string& name);
MetricLieAlgebra build_catalog(const std::string& name, const CatalogParams& params = {});

struct ExpectedDims {
  int dim_k2 = 0;
  int dim_k3 = 0;
};

struct CatalogEntry {
  std::string name;       // catalog name, empty for placeholders
  std::string label;      // row label in the classification tables
  int p = 0;              // dimension
  CatalogParams params;
  std::optional<ExpectedDims> expected;
  bool construction_external = false;

  MetricLieAlgebra build() const { return build_catalog(name, params); }
};

struct ClassificationLists {
  std::vector<CatalogEntry> killing2;  // algebras admitting Killing 2-forms, p <= 8
  std::vector<CatalogEntry> killing3;  // algebras admitting Killing 3-forms, p <= 7
};

ClassificationLists classification_lists();

// Every distinct buildable algebra of the classification lists, with its
// expected dimensions.
std::vector<CatalogEntry> catalog_algebras();

}  // namespace nilkill
