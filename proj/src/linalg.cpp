#include "nilkill/linalg.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "nilkill/errors.hpp"

namespace nilkill {

namespace {

struct Svd {
  Vector sigma;
  Matrix u;  // thin, m x p
  Matrix v;  // full, n x n
};

// Full right singular basis is needed for the kernel, so wide matrices are
// padded with zero rows; tall ones are reduced by a Householder QR first.
Svd full_svd(const Matrix& a) {
  const Eigen::Index m = a.rows();
  const Eigen::Index n = a.cols();
  Svd out;
  if (m > 2 * n && n > 0) {
    Eigen::HouseholderQR<Matrix> qr(a);
    Matrix r = qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();
    Matrix q = qr.householderQ() * Matrix::Identity(m, n);
    Eigen::JacobiSVD<Matrix> svd(r, Eigen::ComputeFullU | Eigen::ComputeFullV);
    out.sigma = svd.singularValues();
    out.u = q * svd.matrixU();
    out.v = svd.matrixV();
    return out;
  }
  Matrix padded = a;
  if (m < n) {
    padded = Matrix::Zero(n, n);
    padded.topRows(m) = a;
  }
  Eigen::JacobiSVD<Matrix> svd(padded, Eigen::ComputeFullU | Eigen::ComputeFullV);
  out.sigma = svd.singularValues();
  out.u = svd.matrixU().topRows(m);
  out.v = svd.matrixV();
  return out;
}

}  // namespace

RankSplit rank_split(const Matrix& a, double tol) {
  const Eigen::Index n = a.cols();
  RankSplit out;
  if (n == 0) {
    out.range = Matrix::Zero(a.rows(), 0);
    out.corange = Matrix::Zero(0, 0);
    out.kernel = Matrix::Zero(0, 0);
    return out;
  }
  if (a.rows() == 0) {
    out.range = Matrix::Zero(0, 0);
    out.corange = Matrix::Zero(n, 0);
    out.kernel = Matrix::Identity(n, n);
    out.singular_values = Vector::Zero(n);
    return out;
  }
  Svd svd = full_svd(a);
  const Eigen::Index p = svd.sigma.size();
  const double smax = p > 0 ? svd.sigma(0) : 0.0;
  out.threshold = tol * smax;
  int rank = 0;
  if (smax > 0.0) {
    while (rank < p && svd.sigma(rank) > out.threshold) ++rank;
  }
  out.rank = rank;
  out.singular_values = Vector::Zero(n);
  out.singular_values.head(p) = svd.sigma;
  if (rank > 0) {
    const double retained = svd.sigma(rank - 1);
    const double discarded = rank < p ? svd.sigma(rank) : 0.0;
    out.gap = retained - discarded;
    if (out.gap < 10.0 * out.threshold) {
      std::ostringstream msg;
      msg << "ambiguous numerical rank: singular value gap " << out.gap
          << " below safety margin " << 10.0 * out.threshold << " (retained " << retained
          << ", discarded " << discarded << ")";
      throw NumericalRankFailure(msg.str());
    }
  } else {
    out.gap = std::numeric_limits<double>::infinity();
  }
  out.range = svd.u.leftCols(rank);
  out.corange = svd.v.leftCols(rank);
  out.kernel = svd.v.rightCols(n - rank);
  return out;
}

Matrix orthonormalize(const Matrix& basis, const Matrix& gram) {
  if (basis.cols() == 0) return basis;
  Matrix m = basis.transpose() * gram * basis;
  m = 0.5 * (m + m.transpose());
  Eigen::LLT<Matrix> llt(m);
  if (llt.info() != Eigen::Success) {
    throw NumericalRankFailure("orthonormalize: basis is rank deficient for the inner product");
  }
  // B L^{-T}: solve L X^T = B^T.
  Matrix xt = llt.matrixL().solve(basis.transpose());
  return xt.transpose();
}

Matrix orthonormalize(const Matrix& basis) {
  return orthonormalize(basis, Matrix::Identity(basis.rows(), basis.rows()));
}

Matrix echelon_basis(const Matrix& basis) {
  Matrix m = basis.transpose();  // rows span the subspace
  const Eigen::Index rows = m.rows(), cols = m.cols();
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    const double largest = m.bottomRows(rows - r).cwiseAbs().maxCoeff();
    Eigen::Index piv = 0;
    const double size = m.col(c).tail(rows - r).cwiseAbs().maxCoeff(&piv);
    if (largest == 0.0 || size <= 0.1 * largest) continue;
    piv += r;
    m.row(r).swap(m.row(piv));
    m.row(r) /= m(r, c);
    for (Eigen::Index i = 0; i < rows; ++i)
      if (i != r) m.row(i) -= m(i, c) * m.row(r);
    m.col(c).setZero();
    m(r, c) = 1.0;
    ++r;
  }
  return m.transpose();
}

Matrix canonical_basis(const Matrix& basis, const Matrix& gram) {
  return orthonormalize(echelon_basis(basis), gram);
}

double span_distance(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) return std::numeric_limits<double>::infinity();
  if (a.cols() == 0) return 0.0;
  Matrix qa = orthonormalize(a);
  Matrix qb = orthonormalize(b);
  Matrix ra = qb - qa * (qa.transpose() * qb);
  Matrix rb = qa - qb * (qb.transpose() * qa);
  return std::max(ra.norm(), rb.norm());
}

}  // namespace nilkill
