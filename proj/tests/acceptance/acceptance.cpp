#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "helpers.hpp"
#include "nilkill/errors.hpp"
#include "nilkill/linalg.hpp"
#include "nilkill/structure.hpp"

using namespace nilkill;
using testing_support::random_form;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects failures and the worst value of each measured quantity.
class Tally {
 public:
  void require(bool ok, const std::string& what) {
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    if (!ok) ++failed_;
  }
  void bound(double value, double limit, const std::string& what) {
    worst_ = std::max(worst_, value);
    require(value <= limit, what + " = " + sci(value));
  }
  void count() { ++checks_; }

  Outcome outcome(const std::string& summary) const {
    std::ostringstream s;
    s << summary << ", " << checks_ << " cases";
    if (worst_ > 0.0) s << ", worst " << sci(worst_);
    for (const auto& f : failures_) s << "; " << f;
    if (failed_ > static_cast<int>(failures_.size())) s << "; ...";
    return {failed_ == 0, s.str()};
  }

  static std::string sci(double v) {
    std::ostringstream s;
    s.precision(2);
    s << std::scientific << v;
    return s.str();
  }

 private:
  std::vector<std::string> failures_;
  int failed_ = 0;
  int checks_ = 0;
  double worst_ = 0.0;
};

double form_max(const Form& w) { return w.size() == 0 ? 0.0 : w.coeffs().cwiseAbs().maxCoeff(); }

Matrix random_skew(int n, Rng& rng) { return skew_part(rng.gaussian_matrix(n, n)); }

std::vector<std::pair<std::string, MetricLieAlgebra>> catalog() {
  std::vector<std::pair<std::string, MetricLieAlgebra>> out;
  for (const CatalogEntry& e : catalog_algebras()) out.emplace_back(e.label, e.build());
  return out;
}

// The complex structure of h3^C in its construction basis: Je1 = e2, Je3 = e4, Jz1 = z2.
Matrix standard_j() {
  Matrix j = Matrix::Zero(6, 6);
  for (int b : {0, 2, 4}) {
    j(b + 1, b) = 1.0;
    j(b, b + 1) = -1.0;
  }
  return j;
}

Outcome dimension_table() {
  struct Row {
    std::string label;
    MetricLieAlgebra algebra;
    int k2, k3;
  };
  std::vector<Row> rows = {
      {"h3", heisenberg(1), 0, 1},
      {"h5", heisenberg(2), 0, 1},
      {"n32", free_two_step_3(), 0, 1},
      {"R^2+h3", build_catalog("R2+h3"), 1, 1},
      {"R^3+h3", build_catalog("R3+h3"), 3, 2},
      {"h3+h3", build_catalog("h3+h3"), 0, 2},
      {"R+h5", build_catalog("R+h5"), 0, 1},
      {"R+h3^C", build_catalog("R+h3C"), 1, 0},
  };
  for (double lambda : {1.0, 2.0, 0.5})
    rows.push_back({"h3^C(" + std::to_string(lambda) + ")", complex_heisenberg(lambda), 1, 0});

  Tally t;
  for (const Row& r : rows) {
    const Decomposition dec = decompose(r.algebra);
    const int b2 = killing_nullspace_brute(dec.ambient, 2).dim();
    const int b3 = killing_nullspace_brute(dec.ambient, 3).dim();
    const int s2 = solve_killing2(dec).space.dim();
    const int s3 = solve_killing3(dec).space.dim();
    t.count();
    std::ostringstream got;
    got << r.label << " brute (" << b2 << "," << b3 << ") structured (" << s2 << "," << s3
        << ") expected (" << r.k2 << "," << r.k3 << ")";
    t.require(b2 == r.k2 && b3 == r.k3 && s2 == r.k2 && s3 == r.k3, got.str());
  }
  return t.outcome("dimension table for brute and structured solvers");
}

Outcome oracle_equivalence(std::uint64_t seed) {
  Rng rng(seed);
  Tally t;
  for (const auto& [label, algebra] : catalog()) {
    for (int trial = 0; trial < 20; ++trial) {
      const Decomposition dec = decompose(with_random_metric(algebra, rng));
      for (int k : {2, 3}) {
        const KillingSpace brute = killing_nullspace_brute(dec.ambient, k);
        const KillingSpace structured =
            k == 2 ? solve_killing2(dec).space : solve_killing3(dec).space;
        t.count();
        const std::string tag = label + " k=" + std::to_string(k);
        t.require(brute.dim() == structured.dim(), tag + " dims " + std::to_string(brute.dim()) +
                                                       " vs " + std::to_string(structured.dim()));
        if (brute.dim() == structured.dim())
          t.bound(span_distance(brute.basis_matrix(), structured.basis_matrix()), 1e-8,
                  tag + " span residual");
      }
    }
  }
  return t.outcome("structured vs brute over 20 random metrics per algebra");
}

Outcome structure_theorems(std::uint64_t seed) {
  Rng rng(seed);
  Tally t;
  for (const auto& [label, algebra] : catalog()) {
    for (int trial = 0; trial < 5; ++trial) {
      const MetricLieAlgebra a = trial == 0 ? algebra : with_random_metric(algebra, rng);
      const AdaptedFrame f = adapted_frame(a);
      for (const Form& w : killing_nullspace_brute(f, 3).basis) {
        t.count();
        t.bound(form_max(bigrade(f, w, 1)), 1e-9, label + " 3-form bigrade 1");
        t.bound(form_max(bigrade(f, w, 3)), 1e-9, label + " 3-form bigrade 3");
        const Killing3Data d = killing3_data(f, w);
        t.bound(d.fit_residual, 1e-8, label + " beta outside span j");
        t.bound(max_abs(d.b - d.b.transpose()), 1e-8, label + " B asymmetry");
      }
      for (const Form& w : killing_nullspace_brute(f, 2).basis) {
        t.count();
        t.bound(form_max(bigrade(f, w, 1)), 1e-9, label + " 2-form bigrade 1");
        t.bound(kill2_residual(f, killing2_data(f, w)), 1e-8, label + " kill2 residual");
      }
    }
  }
  return t.outcome("bigrades, kill2 and beta = j o B on brute Killing forms");
}

Outcome complex_structure_pipeline() {
  Tally t;
  const MetricLieAlgebra a = complex_heisenberg(1.0);
  const Decomposition dec = decompose(a);
  t.count();
  t.require(dec.factors.size() == 1 && dec.factors[0].has_complex_structure,
            "no complex structure found");
  if (dec.factors.size() != 1 || !dec.factors[0].complex_structure) return t.outcome("h3^C");
  const FactorReport& fr = dec.factors[0];
  const Matrix& j = *fr.complex_structure;
  t.bound(max_abs(j * j + Matrix::Identity(6, 6)), 1e-9, "J^2 + Id");
  const int nv = fr.dim_v();
  const Matrix jv = j.topLeftCorner(nv, nv);
  for (const Matrix& jz : fr.frame.j_matrices) t.bound(max_abs(jv * jz + jz * jv), 1e-9, "{J, j(z)}");

  const Matrix e = dec.ambient.frame * fr.frame_in_ambient();
  const Matrix ju = e * j * e.transpose() * a.gram;
  const double err = std::min(max_abs(ju - standard_j()), max_abs(ju + standard_j()));
  t.bound(err, 1e-9, "J vs standard J");

  const KillingSpace space = solve_killing2(dec).space;
  t.require(space.dim() == 1, "dimK2 != 1");
  if (space.dim() == 1) {
    const double nabla = parallel_residual(dec.ambient, space.basis[0].normalized());
    t.require(nabla >= 0.1, "Killing 2-form nearly parallel: " + Tally::sci(nabla));
  }
  return t.outcome("h3^C complex structure and non-parallel Killing 2-form");
}

Outcome naturally_reductive_pipeline() {
  Tally t;
  const Decomposition dec = decompose(free_two_step_3());
  t.count();
  t.require(dec.factors.size() == 1 && dec.factors[0].naturally_reductive, "not naturally reductive");
  if (dec.factors.size() != 1 || !dec.factors[0].compact_bracket) return t.outcome("n_{3,2}");
  const FactorReport& fr = dec.factors[0];
  const StructureConstants& cb = *fr.compact_bracket;

  Matrix kf(3, 3);
  for (int s = 0; s < 3; ++s)
    for (int u = 0; u < 3; ++u) kf(s, u) = (cb.ad(Vector::Unit(3, s)) * cb.ad(Vector::Unit(3, u))).trace();
  Eigen::SelfAdjointEigenSolver<Matrix> eig(kf);
  t.require(eig.eigenvalues().maxCoeff() < 0.0, "compact bracket Killing form not negative definite");

  const Form alpha = naturally_reductive_form(fr.frame, cb);
  t.bound(killing_residual(fr.frame, alpha.normalized()), 1e-9, "killing residual");

  // With B = Id the z-part must satisfy j(gamma(z_s, z_t)) = 2 [j(z_s), j(z_t)].
  const Killing3Data d = killing3_data(fr.frame, alpha);
  t.bound(max_abs(d.b - Matrix::Identity(3, 3)), 1e-9, "B - Id");
  const auto& js = fr.frame.j_matrices;
  for (int s = 0; s < 3; ++s)
    for (int u = 0; u < 3; ++u) {
      Vector g(3);
      for (int w = 0; w < 3; ++w) g(w) = d.gamma.at({s, u, w});
      const Matrix comm = js[s] * js[u] - js[u] * js[s];
      t.bound(max_abs(fr.frame.j(g) - 2.0 * comm), 1e-9, "taul");
    }
  return t.outcome("n_{3,2} compact bracket so(3), Killing 3-form j + gamma");
}

Outcome mutual_exclusion(std::uint64_t seed) {
  Rng rng(seed);
  Tally t;
  for (const auto& [label, algebra] : catalog()) {
    for (int trial = 0; trial < 20; ++trial) {
      for (const FactorReport& f : decompose(with_random_metric(algebra, rng)).factors) {
        t.count();
        t.require(!(f.has_complex_structure && f.naturally_reductive), label + " factor flags both");
      }
    }
  }
  return t.outcome("no factor is both complex and naturally reductive");
}

Outcome decomposition_recovery(std::uint64_t seed) {
  Rng rng(seed);
  Tally t;
  const std::vector<std::string> pool = {"h3", "h5", "h3C", "n32", "R"};
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<MetricLieAlgebra> parts;
    std::vector<int> factor_dims;
    int d = 0, complex = 0, nat = 0, n = 0;
    const int count = rng.integer(2, 3);
    for (int attempt = 0; attempt < 50 && static_cast<int>(parts.size()) < count; ++attempt) {
      const std::string pick = pool[rng.integer(0, static_cast<int>(pool.size()) - 1)];
      MetricLieAlgebra part;
      if (pick == "h3") part = heisenberg(1);
      if (pick == "h5") part = heisenberg(2);
      if (pick == "h3C") part = complex_heisenberg(rng.uniform(0.5, 2.0));
      if (pick == "n32") part = free_two_step_3();
      if (pick == "R") {
        if (d > 0) continue;
        part = euclidean(rng.integer(1, 3));
      }
      if (n + part.dim() > 12) continue;
      n += part.dim();
      if (pick == "R") {
        d = part.dim();
      } else {
        factor_dims.push_back(part.dim());
        complex += pick == "h3C";
        nat += pick != "h3C";
      }
      parts.push_back(part);
    }
    if (factor_dims.empty()) {
      parts.push_back(heisenberg(1));
      factor_dims.push_back(3);
      ++nat;
    }
    std::sort(factor_dims.begin(), factor_dims.end());
    const MetricLieAlgebra sum = direct_sum(parts);
    const MetricLieAlgebra scrambled = random_isometric_scramble(sum, rng);

    const Decomposition dec = decompose(scrambled);
    std::vector<int> got;
    for (const auto& f : dec.factors) got.push_back(f.dim());
    std::sort(got.begin(), got.end());
    t.count();
    const std::string tag = "trial " + std::to_string(trial) + " (" + sum.name + ")";
    t.require(got == factor_dims && dec.d() == d, tag + " factors");

    const KillingDimensions before = killing_dimensions(sum);
    const KillingDimensions after = killing_dimensions(dec);
    const int k2 = d * (d - 1) / 2 + complex;
    const int k3 = d * (d - 1) * (d - 2) / 6 + nat;
    t.require(before.dim_k2 == k2 && before.dim_k3 == k3, tag + " dims before scramble");
    t.require(after.dim_k2 == k2 && after.dim_k3 == k3, tag + " dims after scramble");
    t.require(killing_nullspace_brute(dec.ambient, 2).dim() == k2 &&
                  killing_nullspace_brute(dec.ambient, 3).dim() == k3,
              tag + " brute dims after scramble");
  }
  return t.outcome("scrambled direct sums decompose correctly with invariant dims");
}

Outcome trace_invariant() {
  Tally t;
  const std::vector<double> lambdas = {0.5, 1.0, 2.0, 3.0};
  std::vector<Matrix> forms;
  for (double lambda : lambdas) {
    const Matrix tf = j_trace_form(adapted_frame(complex_heisenberg(lambda)));
    forms.push_back(tf);
    t.count();
    t.bound(max_abs(tf + 4.0 * lambda * lambda * Matrix::Identity(2, 2)), 1e-9,
            "lambda " + Tally::sci(lambda));
  }
  double separation = INFINITY;
  for (size_t i = 0; i < forms.size(); ++i)
    for (size_t j = i + 1; j < forms.size(); ++j) separation = std::min(separation, max_abs(forms[i] - forms[j]));
  t.require(separation >= 1.0, "separation " + Tally::sci(separation));
  return t.outcome("trace form -4 lambda^2 Id, separation " + Tally::sci(separation));
}

Outcome exterior_health(std::uint64_t seed) {
  Rng rng(seed);
  Tally t;
  for (const auto& [label, algebra] : catalog()) {
    const AdaptedFrame f = adapted_frame(with_random_metric(algebra, rng));
    const int n = f.dim();
    for (int trial = 0; trial < 100; ++trial) {
      t.count();
      const int k = rng.integer(1, 3), l = rng.integer(0, 3);
      const Form a = random_form(n, k, rng), b = random_form(n, l, rng);
      const Form c = random_form(n, k, rng);
      const Vector x = rng.gaussian_vector(n);
      const Matrix p = random_skew(n, rng), q = random_skew(n, rng);

      if (k + 2 <= n) t.bound(form_max(lie_diff(f, lie_diff(f, a))), 1e-10, label + " d o d");

      if (k + l <= n) {
        const double sign = k % 2 ? -1.0 : 1.0;
        const Form ab = wedge(a, b);
        Form rhs = wedge(contract(x, a), b);
        if (l > 0) rhs += sign * wedge(a, contract(x, b));
        t.bound(form_max(contract(x, ab) - rhs), 1e-10, label + " contraction");
        t.bound(form_max(skew_extend(p, ab) - (wedge(skew_extend(p, a), b) + wedge(a, skew_extend(p, b)))),
                1e-10, label + " skew_extend derivation");
      }
      const Matrix pq = p * q - q * p;
      t.bound(form_max(skew_extend(pq, a) -
                       (skew_extend(p, skew_extend(q, a)) - skew_extend(q, skew_extend(p, a)))),
              1e-10, label + " skew_extend commutator");

      t.bound(std::abs(inner(nabla_form(f, x, a), c) + inner(a, nabla_form(f, x, c))), 1e-10,
              label + " nabla metric");
    }
  }
  return t.outcome("exterior calculus identities on random instances");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance checks for the nilkill library"};
  std::uint64_t seed = 0;
  app.add_option("--seed", seed, "base seed for randomized criteria")->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::function<Outcome()>> criteria = {
      [] { return dimension_table(); },
      [&] { return oracle_equivalence(seed + 2); },
      [&] { return structure_theorems(seed + 3); },
      [] { return complex_structure_pipeline(); },
      [] { return naturally_reductive_pipeline(); },
      [&] { return mutual_exclusion(seed + 6); },
      [&] { return decomposition_recovery(seed + 7); },
      [] { return trace_invariant(); },
      [&] { return exterior_health(seed + 9); },
  };

  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << o.detail << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
