#include "nilkill/catalog.hpp"

#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "nilkill/errors.hpp"

namespace nilkill {

namespace {

std::vector<std::string> numbered(const std::string& prefix, int count, int first = 1) {
  std::vector<std::string> out;
  for (int i = 0; i < count; ++i) out.push_back(prefix + std::to_string(first + i));
  return out;
}

MetricLieAlgebra sum_of(const std::string& name, std::vector<MetricLieAlgebra> parts) {
  return direct_sum(parts, name);
}

struct Builder {
  std::string description;
  std::function<MetricLieAlgebra(const CatalogParams&)> build;
};

const std::map<std::string, Builder>& builders() {
  static const std::map<std::string, Builder> table = {
      {"heisenberg",
       {"Heisenberg algebra h_{2l+1} (param --l)",
        [](const CatalogParams& p) { return heisenberg(p.l); }}},
      {"complex_heisenberg",
       {"complex Heisenberg algebra h3^C with metric g_lambda (param --lambda)",
        [](const CatalogParams& p) { return complex_heisenberg(p.lambda); }}},
      {"free_two_step_3",
       {"free 2-step nilpotent algebra n_{3,2}", [](const CatalogParams&) { return free_two_step_3(); }}},
      {"euclidean",
       {"abelian R^d (param --d)", [](const CatalogParams& p) { return euclidean(p.d); }}},
      {"R+h3",
       {"R + h3", [](const CatalogParams&) { return sum_of("R+h3", {euclidean(1), heisenberg(1)}); }}},
      {"R2+h3",
       {"R^2 + h3", [](const CatalogParams&) { return sum_of("R2+h3", {euclidean(2), heisenberg(1)}); }}},
      {"R3+h3",
       {"R^3 + h3", [](const CatalogParams&) { return sum_of("R3+h3", {euclidean(3), heisenberg(1)}); }}},
      {"h3+h3",
       {"h3 + h3", [](const CatalogParams&) { return sum_of("h3+h3", {heisenberg(1), heisenberg(1)}); }}},
      {"R+h5",
       {"R + h5", [](const CatalogParams&) { return sum_of("R+h5", {euclidean(1), heisenberg(2)}); }}},
      {"R2+h5",
       {"R^2 + h5", [](const CatalogParams&) { return sum_of("R2+h5", {euclidean(2), heisenberg(2)}); }}},
      {"R+h3C",
       {"R + h3^C with g_1 on h3^C",
        [](const CatalogParams&) { return sum_of("R+h3C", {euclidean(1), complex_heisenberg(1.0)}); }}},
      {"R2+h3+h3",
       {"R^2 + h3 + h3", [](const CatalogParams&) {
          return sum_of("R2+h3+h3", {euclidean(2), heisenberg(1), heisenberg(1)});
        }}},
      {"R2+n32",
       {"R^2 + n_{3,2}",
        [](const CatalogParams&) { return sum_of("R2+n32", {euclidean(2), free_two_step_3()}); }}},
  };
  return table;
}

}  // namespace

MetricLieAlgebra heisenberg(int l) {
  if (l < 1) throw InvalidInput("heisenberg: l must be >= 1");
  const int n = 2 * l + 1;
  MetricLieAlgebra out;
  out.name = "h" + std::to_string(n);
  out.basis_names = numbered("e", 2 * l);
  out.basis_names.push_back("z");
  out.structure = StructureConstants(n);
  for (int i = 0; i < l; ++i) out.structure.set_bracket(2 * i, 2 * i + 1, n - 1, 1.0);
  out.gram = Matrix::Identity(n, n);
  return out;
}

MetricLieAlgebra complex_heisenberg(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw InvalidInput("complex_heisenberg: lambda must be a positive number");
  }
  MetricLieAlgebra out;
  std::ostringstream name;
  name << "h3C(lambda=" << lambda << ")";
  out.name = name.str();
  out.basis_names = {"e1", "e2", "e3", "e4", "z1", "z2"};
  out.structure = StructureConstants(6);
  out.structure.set_bracket(0, 2, 4, 1.0);
  out.structure.set_bracket(1, 3, 4, -1.0);
  out.structure.set_bracket(1, 2, 5, 1.0);
  out.structure.set_bracket(0, 3, 5, 1.0);
  out.gram = Matrix::Identity(6, 6);
  out.gram(4, 4) = out.gram(5, 5) = lambda * lambda;
  return out;
}

MetricLieAlgebra free_two_step_3() {
  MetricLieAlgebra out;
  out.name = "n32";
  out.basis_names = numbered("e", 6);
  out.structure = StructureConstants(6);
  out.structure.set_bracket(0, 1, 3, 1.0);
  out.structure.set_bracket(0, 2, 4, 1.0);
  out.structure.set_bracket(1, 2, 5, 1.0);
  out.gram = Matrix::Identity(6, 6);
  return out;
}

MetricLieAlgebra euclidean(int d) {
  if (d < 0) throw InvalidInput("euclidean: d must be >= 0");
  MetricLieAlgebra out;
  out.name = "R" + std::to_string(d);
  out.basis_names = numbered("a", d);
  out.structure = StructureConstants(d);
  out.gram = Matrix::Identity(d, d);
  return out;
}

MetricLieAlgebra direct_sum(const std::vector<MetricLieAlgebra>& parts, std::string name) {
  if (parts.empty()) throw EmptySum("direct_sum: no summands");
  int n = 0;
  for (const auto& p : parts) n += p.dim();

  std::set<std::string> seen;
  bool clash = false;
  for (const auto& p : parts)
    for (const auto& b : p.basis_names) clash |= !seen.insert(b).second;

  MetricLieAlgebra out;
  out.structure = StructureConstants(n);
  out.gram = Matrix::Zero(n, n);
  int offset = 0;
  for (size_t q = 0; q < parts.size(); ++q) {
    const MetricLieAlgebra& p = parts[q];
    const int m = p.dim();
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k) out.structure(offset + i, offset + j, offset + k) = p.structure(i, j, k);
    out.gram.block(offset, offset, m, m) = p.gram;
    for (int i = 0; i < m; ++i) {
      std::string b = i < static_cast<int>(p.basis_names.size()) ? p.basis_names[i]
                                                               : "b" + std::to_string(i + 1);
      out.basis_names.push_back(clash ? "s" + std::to_string(q + 1) + "." + b : b);
    }
    offset += m;
  }
  if (name.empty()) {
    for (size_t q = 0; q < parts.size(); ++q) name += (q ? "+" : "") + parts[q].name;
  }
  out.name = name;
  return out;
}

MetricLieAlgebra from_representation(const StructureConstants& z_bracket,
                                     const std::vector<Matrix>& rho, const Matrix& gram_z,
                                     double tol) {
  const int m = z_bracket.dim();
  if (m == 0 || static_cast<int>(rho.size()) != m) {
    throw InvalidInput("from_representation: need one matrix per basis vector of z");
  }
  if (gram_z.rows() != m || gram_z.cols() != m) {
    throw InvalidInput("from_representation: gram_z has the wrong size");
  }
  const int p = static_cast<int>(rho.front().rows());
  for (const Matrix& r : rho) {
    if (r.rows() != p || r.cols() != p) throw InvalidInput("from_representation: rho sizes differ");
    if (max_abs(r + r.transpose()) > tol * std::max(1.0, max_abs(r))) {
      throw NotSkew("from_representation: rho(z) must be skew");
    }
  }

  Matrix stacked(m * p, p);
  for (int t = 0; t < m; ++t) stacked.block(t * p, 0, p, p) = rho[t];
  if (rank_split(stacked, tol).rank < p) {
    throw TrivialSubrepresentation("from_representation: the matrices rho(z) have a common kernel");
  }

  // g_z([z_s, z_t], z_u) + g_z(z_t, [z_s, z_u]) = 0.
  double defect = 0.0;
  for (int s = 0; s < m; ++s) {
    Matrix ad(m, m);
    for (int t = 0; t < m; ++t)
      for (int u = 0; u < m; ++u) ad(u, t) = z_bracket(s, t, u);
    defect = std::max(defect, max_abs(gram_z * ad + ad.transpose() * gram_z));
  }
  if (defect > tol * std::max(1.0, z_bracket.max_abs() * max_abs(gram_z))) {
    throw NotAdInvariant("from_representation: gram_z is not ad-invariant (defect " +
                         std::to_string(defect) + ")");
  }

  MetricLieAlgebra out;
  out.name = "rep";
  out.basis_names = numbered("e", p);
  for (const auto& z : numbered("z", m)) out.basis_names.push_back(z);
  out.structure = StructureConstants(p + m);
  const Eigen::LLT<Matrix> gz(gram_z);
  for (int a = 0; a < p; ++a)
    for (int b = a + 1; b < p; ++b) {
      Vector r(m);
      for (int s = 0; s < m; ++s) r(s) = rho[s](b, a);
      const Vector w = gz.solve(r);
      for (int t = 0; t < m; ++t)
        if (w(t) != 0.0) out.structure.set_bracket(a, b, p + t, w(t));
    }
  out.gram = Matrix::Identity(p + m, p + m);
  out.gram.bottomRightCorner(m, m) = gram_z;
  return out;
}

std::vector<std::string> catalog_names() {
  std::vector<std::string> out;
  for (const auto& [name, builder] : builders()) out.push_back(name);
  return out;
}

std::string catalog_description(const std::string& name) {
  const auto it = builders().find(name);
  if (it == builders().end()) throw InvalidInput("unknown catalog entry '" + name + "'");
  return it->second.description;
}

MetricLieAlgebra build_catalog(const std::string& name, const CatalogParams& params) {
  const auto it = builders().find(name);
  if (it == builders().end()) throw InvalidInput("unknown catalog entry '" + name + "'");
  return it->second.build(params);
}

namespace {

CatalogEntry entry(std::string name, std::string label, int p, int k2, int k3,
                   CatalogParams params = {}) {
  CatalogEntry e;
  e.name = std::move(name);
  e.label = std::move(label);
  e.p = p;
  e.params = params;
  e.expected = ExpectedDims{k2, k3};
  return e;
}

CatalogEntry placeholder(std::string label, int p) {
  CatalogEntry e;
  e.label = std::move(label);
  e.p = p;
  e.construction_external = true;
  return e;
}

CatalogParams with_l(int l) {
  CatalogParams p;
  p.l = l;
  return p;
}

}  // namespace

ClassificationLists classification_lists() {
  ClassificationLists out;
  out.killing2 = {
      entry("R2+h3", "R^2+h3", 5, 1, 1),
      entry("R3+h3", "R^3+h3", 6, 3, 2),
      entry("complex_heisenberg", "h3^C", 6, 1, 0),
      entry("R+h3C", "R+h3^C", 7, 1, 0),
      entry("R2+h5", "R^2+h5", 7, 1, 1),
      placeholder("R^2+h, h in N5 (external list #1)", 7),
      placeholder("R^2+h, h in N5 (external list #2)", 7),
      entry("R2+h3+h3", "R^2+(h3+h3)", 8, 1, 2),
      entry("R2+n32", "R^2+n_{3,2}", 8, 1, 1),
      placeholder("R^2+h, h in N6 (external list #1)", 8),
      placeholder("R^2+h, h in N6 (external list #2)", 8),
      placeholder("R^2+h, h in N6 (external list #3)", 8),
      placeholder("R^2+h, h in N6 (external list #4)", 8),
      placeholder("R^2+h, h in N6 (external list #5)", 8),
  };
  out.killing3 = {
      entry("heisenberg", "h3", 3, 0, 1, with_l(1)),
      entry("R+h3", "R+h3", 4, 0, 1),
      entry("R2+h3", "R^2+h3", 5, 1, 1),
      entry("heisenberg", "h5", 5, 0, 1, with_l(2)),
      entry("R3+h3", "R^3+h3", 6, 3, 2),
      entry("h3+h3", "h3+h3", 6, 0, 2),
      entry("R+h5", "R+h5", 6, 0, 1),
      entry("free_two_step_3", "n_{3,2}", 6, 0, 1),
  };
  return out;
}

std::vector<CatalogEntry> catalog_algebras() {
  std::vector<CatalogEntry> out;
  std::set<std::string> labels;
  const ClassificationLists lists = classification_lists();
  for (const auto* list : {&lists.killing3, &lists.killing2})
    for (const CatalogEntry& e : *list)
      if (!e.construction_external && labels.insert(e.label).second) out.push_back(e);
  return out;
}

}  // namespace nilkill
