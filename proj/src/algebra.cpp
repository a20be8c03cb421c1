#include "nilkill/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nilkill/errors.hpp"

namespace nilkill {

Vector StructureConstants::bracket(const Vector& x, const Vector& y) const {
  Vector out = Vector::Zero(n_);
  for (int i = 0; i < n_; ++i) {
    if (x(i) == 0.0) continue;
    for (int j = 0; j < n_; ++j) {
      const double w = x(i) * y(j);
      if (w == 0.0) continue;
      for (int k = 0; k < n_; ++k) out(k) += w * (*this)(i, j, k);
    }
  }
  return out;
}

Matrix StructureConstants::ad(const Vector& x) const {
  Matrix out = Matrix::Zero(n_, n_);
  for (int i = 0; i < n_; ++i) {
    if (x(i) == 0.0) continue;
    for (int j = 0; j < n_; ++j)
      for (int k = 0; k < n_; ++k) out(k, j) += x(i) * (*this)(i, j, k);
  }
  return out;
}

double StructureConstants::max_abs() const {
  double m = 0.0;
  for (double c : data_) m = std::max(m, std::abs(c));
  return m;
}

ValidationReport validate(const MetricLieAlgebra& algebra, double tol) {
  ValidationReport report;
  const int n = algebra.dim();
  if (n <= 0) {
    report.violations.push_back("dimension: algebra must have positive dimension");
    return report;
  }
  if (static_cast<int>(algebra.basis_names.size()) != n) {
    report.violations.push_back("basis: expected " + std::to_string(n) + " basis names");
  }
  if (algebra.gram.rows() != n || algebra.gram.cols() != n) {
    report.violations.push_back("metric: gram matrix must be " + std::to_string(n) + "x" +
                                std::to_string(n));
    return report;
  }

  const StructureConstants& c = algebra.structure;
  const double scale = std::max(1.0, c.max_abs());

  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        if (std::abs(c(i, j, k) + c(j, i, k)) > tol * scale) {
          std::ostringstream msg;
          msg << "antisymmetry: c[" << i << "][" << j << "][" << k << "] + c[" << j << "][" << i
              << "][" << k << "] = " << c(i, j, k) + c(j, i, k);
          report.violations.push_back(msg.str());
        }
      }

  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int w = 0; w < n; ++w)
        for (int k = 0; k < n; ++k) {
          double s = 0.0;
          for (int m = 0; m < n; ++m) s += c(i, j, m) * c(m, w, k);
          if (std::abs(s) > tol * scale * scale) {
            std::ostringstream msg;
            msg << "2-step: [[b" << i << ",b" << j << "],b" << w << "] has component " << s
                << " along b" << k;
            report.violations.push_back(msg.str());
            k = n;  // one message per triple
          }
        }

  const Matrix& g = algebra.gram;
  const double gscale = std::max(1.0, max_abs(g));
  if (max_abs(g - g.transpose()) > tol * gscale) {
    report.violations.push_back("metric: gram matrix is not symmetric");
  } else {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (g + g.transpose()));
    const double lmin = eig.eigenvalues()(0);
    const double lmax = eig.eigenvalues()(n - 1);
    if (lmin <= tol * std::max(1.0, lmax)) {
      std::ostringstream msg;
      msg << "metric: gram matrix is not positive definite (smallest eigenvalue " << lmin << ")";
      report.violations.push_back(msg.str());
    }
  }
  return report;
}

void require_valid(const MetricLieAlgebra& algebra, double tol) {
  ValidationReport report = validate(algebra, tol);
  if (report.ok()) return;
  std::ostringstream msg;
  msg << "invalid metric Lie algebra '" << algebra.name << "':";
  for (const auto& v : report.violations) msg << "\n  " << v;
  throw InvalidAlgebra(msg.str());
}

namespace {

// Rows indexed by (j, k), columns by i: entry c(i, j, k). Its kernel is the center.
Matrix stacked_ad(const StructureConstants& c) {
  const int n = c.dim();
  Matrix m(n * n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) m(j * n + k, i) = c(i, j, k);
  return m;
}

Vector unit(int n, int i) { return Vector::Unit(n, i); }

}  // namespace

std::pair<Subspace, Subspace> center_commutator(const MetricLieAlgebra& algebra, double tol) {
  const int n = algebra.dim();
  const StructureConstants& c = algebra.structure;
  Subspace center{nullspace(stacked_ad(c), tol), "center"};

  Matrix brackets(n, n * (n - 1) / 2);
  int col = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) brackets.col(col++) = c.bracket(unit(n, i), unit(n, j));
  Subspace commutator{column_space(brackets, tol), "commutator"};
  if (commutator.dim() == 0) {
    throw AlgebraAbelian("algebra '" + algebra.name + "' is abelian (trivial commutator)");
  }
  return {center, commutator};
}

Matrix AdaptedFrame::j(const Vector& z_coords) const {
  Matrix out = Matrix::Zero(dim_v(), dim_v());
  for (int t = 0; t < dim_z(); ++t) out += z_coords(t) * j_matrices[t];
  return out;
}

AdaptedFrame adapted_frame(const MetricLieAlgebra& algebra, double tol) {
  require_valid(algebra, tol);
  const int n = algebra.dim();
  const Matrix& g = algebra.gram;
  const StructureConstants& c = algebra.structure;

  Matrix z_basis = canonical_basis(nullspace(stacked_ad(c), tol), g);
  const int m = static_cast<int>(z_basis.cols());
  Matrix v_basis = Matrix::Zero(n, 0);
  if (m < n) v_basis = canonical_basis(nullspace(z_basis.transpose() * g, tol), g);
  const int nv = static_cast<int>(v_basis.cols());
  if (nv + m != n) throw InternalInvariantViolation("adapted_frame: v + z does not span n");

  // Raw j-map in the (v_basis, z_basis) frame, one column per z vector.
  Matrix jmap(nv * nv, m);
  for (int t = 0; t < m; ++t) {
    const Vector gz = g * z_basis.col(t);
    for (int a = 0; a < nv; ++a)
      for (int b = 0; b < nv; ++b)
        jmap(a * nv + b, t) = gz.dot(c.bracket(v_basis.col(b), v_basis.col(a)));
  }
  // Rotate z so that ker j is spanned by trailing frame vectors.
  Matrix z_rot = Matrix::Identity(m, m);
  int rank_j = 0;
  if (m > 0 && nv > 0) {
    RankSplit split = rank_split(jmap, tol);
    rank_j = split.rank;
    const Matrix id = Matrix::Identity(m, m);
    if (rank_j > 0) z_rot.leftCols(rank_j) = canonical_basis(split.corange, id);
    if (rank_j < m) z_rot.rightCols(m - rank_j) = canonical_basis(split.kernel, id);
  }

  AdaptedFrame out;
  out.frame.resize(n, n);
  out.frame << v_basis, z_basis * z_rot;
  for (int i = 0; i < nv; ++i) out.v_indices.push_back(i);
  for (int t = 0; t < m; ++t) out.z_indices.push_back(nv + t);
  for (int t = rank_j; t < m; ++t) out.a_indices.push_back(nv + t);

  const Matrix to_frame = out.frame.transpose() * g;
  out.structure = StructureConstants(n);
  const double scale = std::max(1.0, c.max_abs()) * std::max(1.0, max_abs(out.frame));
  double stray = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Vector b = to_frame * c.bracket(out.frame.col(i), out.frame.col(j));
      const bool vv = i < nv && j < nv;
      for (int k = 0; k < n; ++k) {
        const bool lands = vv && k >= nv && k < nv + rank_j;
        if (lands) {
          out.structure.set_bracket(i, j, k, b(k));
        } else {
          stray = std::max(stray, std::abs(b(k)));
        }
      }
    }
  if (stray > 1e3 * tol * scale * scale) {
    std::ostringstream msg;
    msg << "adapted_frame: bracket leaves z by " << stray;
    throw InternalInvariantViolation(msg.str());
  }

  out.j_matrices.assign(m, Matrix::Zero(nv, nv));
  for (int t = 0; t < rank_j; ++t)
    for (int a = 0; a < nv; ++a)
      for (int b = 0; b < nv; ++b) out.j_matrices[t](a, b) = out.structure(b, a, nv + t);
  return out;
}

Vector levi_civita(const AdaptedFrame& frame, const Vector& x, const Vector& y) {
  const int nv = frame.dim_v();
  const int nz = frame.dim_z();
  Vector xv = Vector::Zero(frame.dim());
  Vector yv = Vector::Zero(frame.dim());
  xv.head(nv) = x.head(nv);
  yv.head(nv) = y.head(nv);
  Vector out = 0.5 * frame.bracket(xv, yv);
  // nabla_x z = nabla_z x = -1/2 j(z) x for x in v, z in z.
  out.head(nv) -= 0.5 * frame.j(y.tail(nz)) * x.head(nv);
  out.head(nv) -= 0.5 * frame.j(x.tail(nz)) * y.head(nv);
  return out;
}

Vector levi_civita_koszul(const AdaptedFrame& frame, const Vector& x, const Vector& y) {
  const StructureConstants& c = frame.structure;
  return 0.5 * (c.bracket(x, y) - c.ad(x).transpose() * y - c.ad(y).transpose() * x);
}

Matrix nabla_matrix(const AdaptedFrame& frame, const Vector& y) {
  const int n = frame.dim();
  Matrix out(n, n);
  for (int i = 0; i < n; ++i) out.col(i) = levi_civita(frame, y, Vector::Unit(n, i));
  return out;
}

Matrix j_trace_form(const AdaptedFrame& frame) {
  const int m = frame.dim_z();
  Matrix out(m, m);
  for (int s = 0; s < m; ++s)
    for (int t = 0; t < m; ++t) out(s, t) = (frame.j_matrices[s] * frame.j_matrices[t]).trace();
  return out;
}

MetricLieAlgebra change_basis(const MetricLieAlgebra& algebra, const Matrix& p) {
  const int n = algebra.dim();
  if (p.rows() != n || p.cols() != n) throw InvalidInput("change_basis: size mismatch");
  Eigen::FullPivLU<Matrix> lu(p);
  if (!lu.isInvertible()) throw InvalidInput("change_basis: matrix is singular");
  const Matrix pinv = lu.inverse();
  MetricLieAlgebra out;
  out.name = algebra.name;
  out.basis_names = algebra.basis_names;
  out.gram = p.transpose() * algebra.gram * p;
  out.gram = 0.5 * (out.gram + out.gram.transpose());
  out.structure = StructureConstants(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Vector b = pinv * algebra.structure.bracket(p.col(i), p.col(j));
      for (int k = 0; k < n; ++k) out.structure.set_bracket(i, j, k, b(k));
    }
  return out;
}

MetricLieAlgebra with_gram(const MetricLieAlgebra& algebra, const Matrix& gram) {
  MetricLieAlgebra out = algebra;
  out.gram = gram;
  return out;
}

}  // namespace nilkill
