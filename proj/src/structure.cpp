#include "nilkill/structure.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nilkill/errors.hpp"

namespace nilkill {

namespace {

// Eigenvalue gaps at most kMergeFactor * tol belong to one cluster; gaps up
// to sqrt(kMergeFactor * tol) are too small to trust either way.
constexpr double kMergeFactor = 10.0;

enum class Symmetry { symmetric, skew };

// Linear system in vec(D) (column-major) for D[x,y] = [Dx,y] on all frame
// pairs, plus the (skew-)symmetry constraints on D.
Matrix intertwiner_system(const StructureConstants& c, Symmetry symmetry) {
  const int n = c.dim();
  const auto var = [n](int row, int col) { return row + col * n; };
  std::vector<Vector> rows;
  Vector row(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        row.setZero();
        for (int m = 0; m < n; ++m) {
          row(var(k, m)) += c(i, j, m);
          row(var(m, i)) -= c(m, j, k);
        }
        if (row.cwiseAbs().maxCoeff() > 0.0) rows.push_back(row);
      }
  for (int r = 0; r < n; ++r)
    for (int s = r; s < n; ++s) {
      row.setZero();
      if (symmetry == Symmetry::symmetric) {
        if (r == s) continue;
        row(var(r, s)) = 1.0;
        row(var(s, r)) = -1.0;
      } else {
        row(var(r, s)) += 1.0;
        row(var(s, r)) += 1.0;
      }
      rows.push_back(row);
    }
  Matrix system(static_cast<Eigen::Index>(rows.size()), n * n);
  for (size_t r = 0; r < rows.size(); ++r) system.row(static_cast<Eigen::Index>(r)) = rows[r];
  return system;
}

Matrix unvec(const Vector& x, int n) { return Eigen::Map<const Matrix>(x.data(), n, n); }

// Clusters of sorted eigenvalue indices.
std::vector<std::vector<int>> cluster_eigenvalues(const Vector& values, double tol) {
  const double merge = kMergeFactor * tol;
  const double trusted = std::sqrt(kMergeFactor * tol);
  std::vector<std::vector<int>> clusters{{0}};
  for (Eigen::Index i = 1; i < values.size(); ++i) {
    const double gap = values(i) - values(i - 1);
    if (gap > merge && gap <= trusted) {
      std::ostringstream msg;
      msg << "decompose: commutant eigenvalue gap " << gap << " lies between merge threshold "
          << merge << " and trusted separation " << trusted;
      throw DecompositionAmbiguous(msg.str());
    }
    if (gap <= merge) {
      clusters.back().push_back(static_cast<int>(i));
    } else {
      clusters.push_back({static_cast<int>(i)});
    }
  }
  return clusters;
}

void analyze_factor(FactorReport& factor, double tol) {
  factor.complex_structure = find_complex_structure(factor.frame, tol);
  factor.has_complex_structure = factor.complex_structure.has_value();
  factor.compact_bracket = naturally_reductive_type(factor.frame, tol);
  factor.naturally_reductive = factor.compact_bracket.has_value();
  if (factor.has_complex_structure && factor.naturally_reductive) {
    throw InternalInvariantViolation("factor " + factor.sub_algebra.name +
                                     " is both complex and naturally reductive");
  }
}

}  // namespace

MetricLieAlgebra restrict_to(const AdaptedFrame& frame, const Matrix& q, const std::string& name) {
  const int p = static_cast<int>(q.cols());
  MetricLieAlgebra out;
  out.name = name;
  for (int i = 0; i < p; ++i) out.basis_names.push_back("u" + std::to_string(i));
  out.gram = Matrix::Identity(p, p);
  out.structure = StructureConstants(p);
  for (int a = 0; a < p; ++a)
    for (int b = a + 1; b < p; ++b) {
      const Vector br = q.transpose() * frame.bracket(q.col(a), q.col(b));
      for (int k = 0; k < p; ++k) out.structure.set_bracket(a, b, k, br(k));
    }
  return out;
}

std::vector<Matrix> bracket_commutant(const AdaptedFrame& frame, double tol) {
  if (frame.dim_a() > 0) {
    throw InvalidAlgebra("bracket_commutant: j is not injective (abelian factor present)");
  }
  const int n = frame.dim();
  Matrix kernel = nullspace(intertwiner_system(frame.structure, Symmetry::symmetric), tol);
  std::vector<Matrix> out;
  for (Eigen::Index c = 0; c < kernel.cols(); ++c) {
    Matrix s = unvec(kernel.col(c), n);
    out.push_back(0.5 * (s + s.transpose()));
  }
  return out;
}

Decomposition decompose(const MetricLieAlgebra& algebra, double tol) {
  Decomposition out;
  out.ambient = adapted_frame(algebra, tol);
  const AdaptedFrame& f = out.ambient;
  const int n = f.dim();
  const int n0 = n - f.dim_a();

  out.abelian.label = "abelian";
  out.abelian.columns = Matrix::Identity(n, n).rightCols(f.dim_a());

  std::vector<Matrix> pending;
  if (n0 > 0) pending.push_back(Matrix::Identity(n, n).leftCols(n0));
  while (!pending.empty()) {
    Matrix q = pending.back();
    pending.pop_back();
    FactorReport factor;
    factor.sub_algebra = restrict_to(f, q, algebra.name + ".factor");
    factor.frame = adapted_frame(factor.sub_algebra, tol);
    if (factor.frame.dim_a() > 0) {
      throw InternalInvariantViolation("decompose: ideal acquired an abelian factor");
    }
    std::vector<Matrix> commutant = bracket_commutant(factor.frame, tol);
    if (commutant.empty()) {
      throw InternalInvariantViolation("decompose: identity missing from bracket commutant");
    }
    if (commutant.size() == 1) {
      factor.embedding = q;
      out.factors.push_back(std::move(factor));
      continue;
    }
    // Element farthest from the line through the identity.
    const int p = factor.sub_algebra.dim();
    const Matrix id = Matrix::Identity(p, p);
    size_t best = 0;
    double best_distance = -1.0;
    for (size_t b = 0; b < commutant.size(); ++b) {
      const double dist = (commutant[b] - (commutant[b].trace() / p) * id).norm();
      if (dist > best_distance) {
        best_distance = dist;
        best = b;
      }
    }
    Eigen::SelfAdjointEigenSolver<Matrix> eig(commutant[best]);
    const auto clusters = cluster_eigenvalues(eig.eigenvalues(), tol);
    if (clusters.size() < 2) {
      throw DecompositionAmbiguous("decompose: commutant of dimension " +
                                   std::to_string(commutant.size()) +
                                   " but a single eigenvalue cluster");
    }
    const Matrix to_ambient = q * factor.frame.frame;
    for (const auto& cluster : clusters) {
      Matrix w(p, static_cast<Eigen::Index>(cluster.size()));
      for (size_t c = 0; c < cluster.size(); ++c)
        w.col(static_cast<Eigen::Index>(c)) = eig.eigenvectors().col(cluster[c]);
      pending.push_back(to_ambient * w);
    }
  }

  std::stable_sort(out.factors.begin(), out.factors.end(),
                   [](const FactorReport& a, const FactorReport& b) { return a.dim() < b.dim(); });
  for (size_t i = 0; i < out.factors.size(); ++i) {
    FactorReport& factor = out.factors[i];
    factor.sub_algebra.name = algebra.name + ".factor" + std::to_string(i);
    analyze_factor(factor, tol);
  }

  out.transform = Matrix::Zero(n, n);
  int col = 0;
  out.transform.middleCols(col, f.dim_a()) = out.abelian.columns;
  col += f.dim_a();
  for (const FactorReport& factor : out.factors) {
    out.transform.middleCols(col, factor.dim()) = factor.frame_in_ambient();
    col += factor.dim();
  }
  return out;
}

std::optional<Matrix> find_complex_structure(const AdaptedFrame& frame, double tol) {
  const int n = frame.dim();
  Matrix kernel = nullspace(intertwiner_system(frame.structure, Symmetry::skew), tol);
  if (kernel.cols() == 0) return std::nullopt;
  if (kernel.cols() > 1) {
    throw InternalInvariantViolation(
        "find_complex_structure: bi-invariant skew solutions form a space of dimension " +
        std::to_string(kernel.cols()) + " (factor is not irreducible)");
  }
  Matrix d = unvec(kernel.col(0), n);
  d = 0.5 * (d - d.transpose());
  const Matrix d2 = d * d;
  const double lambda = d2.trace() / n;
  const double defect = max_abs(d2 - lambda * Matrix::Identity(n, n));
  if (!(lambda < 0.0) || defect > 1e3 * tol * std::abs(lambda)) {
    std::ostringstream msg;
    msg << "find_complex_structure: D^2 is not a negative scalar (lambda " << lambda
        << ", defect " << defect << ")";
    throw InternalInvariantViolation(msg.str());
  }
  Matrix j = d / std::sqrt(-lambda);
  for (Eigen::Index i = 0; i < j.size(); ++i) {
    if (std::abs(j(i)) > 1e-6) {
      if (j(i) < 0) j = -j;
      break;
    }
  }
  return j;
}

std::optional<StructureConstants> naturally_reductive_type(const AdaptedFrame& frame, double tol) {
  if (frame.dim_a() > 0) {
    throw InvalidAlgebra("naturally_reductive_type: j is not injective");
  }
  const int m = frame.dim_z();
  if (m == 0) throw AlgebraAbelian("naturally_reductive_type: algebra is abelian");
  const auto& js = frame.j_matrices;
  const int nv = frame.dim_v();

  Matrix span(nv * nv, m);
  double scale = 1.0;
  for (int u = 0; u < m; ++u) {
    span.col(u) = Eigen::Map<const Vector>(js[u].data(), nv * nv);
    scale = std::max(scale, js[u].squaredNorm());
  }
  const Matrix gram = span.transpose() * span;
  Eigen::LDLT<Matrix> solver(gram);

  StructureConstants bracket(m);
  for (int s = 0; s < m; ++s)
    for (int t = s + 1; t < m; ++t) {
      const Matrix comm = js[s] * js[t] - js[t] * js[s];
      const Vector target = Eigen::Map<const Vector>(comm.data(), nv * nv);
      const Vector coef = solver.solve(span.transpose() * target);
      if ((span * coef - target).norm() > tol * scale) return std::nullopt;
      for (int u = 0; u < m; ++u) bracket.set_bracket(s, t, u, coef(u));
    }

  const double cscale = std::max(1.0, bracket.max_abs());
  for (int s = 0; s < m; ++s) {
    Matrix ad(m, m);
    for (int u = 0; u < m; ++u)
      for (int t = 0; t < m; ++t) ad(u, t) = bracket(s, t, u);
    if (max_abs(ad + ad.transpose()) > tol * cscale) return std::nullopt;
  }
  return bracket;
}

KillingDimensions killing_dimensions(const Decomposition& decomposition) {
  KillingDimensions out;
  out.d = decomposition.d();
  for (const FactorReport& f : decomposition.factors) {
    if (f.has_complex_structure && f.naturally_reductive) {
      throw InternalInvariantViolation("killing_dimensions: factor flagged complex and "
                                       "naturally reductive");
    }
    out.r2 += f.has_complex_structure ? 1 : 0;
    out.r3 += f.naturally_reductive ? 1 : 0;
  }
  const int d = out.d;
  out.dim_k2 = d * (d - 1) / 2 + out.r2;
  out.dim_k3 = d * (d - 1) * (d - 2) / 6 + out.r3;
  return out;
}

KillingDimensions killing_dimensions(const MetricLieAlgebra& algebra, double tol) {
  return killing_dimensions(decompose(algebra, tol));
}

MetricLieAlgebra compatible_metric(const MetricLieAlgebra& algebra, const Matrix& j_user,
                                   const Matrix& h, double tol) {
  const int n = algebra.dim();
  if (j_user.rows() != n || j_user.cols() != n || h.rows() != n || h.cols() != n) {
    throw InvalidInput("compatible_metric: size mismatch");
  }
  const double scale = std::max(1.0, max_abs(j_user));
  if (max_abs(j_user * j_user + Matrix::Identity(n, n)) > tol * scale * scale) {
    throw NotComplexStructure("compatible_metric: J^2 != -Id");
  }
  const StructureConstants& c = algebra.structure;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Vector ei = Vector::Unit(n, i);
      const Vector ej = Vector::Unit(n, j);
      const Vector lhs = j_user * c.bracket(ei, ej);
      const Vector rhs = c.bracket(j_user * ei, ej);
      if ((lhs - rhs).cwiseAbs().maxCoeff() > tol * scale * std::max(1.0, c.max_abs())) {
        throw NotComplexStructure("compatible_metric: J is not bi-invariant");
      }
    }
  MetricLieAlgebra out = algebra;
  out.gram = h + j_user.transpose() * h * j_user;
  out.gram = 0.5 * (out.gram + out.gram.transpose());
  return out;
}

}  // namespace nilkill
