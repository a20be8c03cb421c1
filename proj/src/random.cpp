#include "nilkill/random.hpp"

#include <cmath>
#include <numbers>

namespace nilkill {

double Rng::uniform() {
  // 53 random mantissa bits.
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::gaussian() {
  double u = uniform();
  while (u <= 0.0) u = uniform();
  const double v = uniform();
  return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
}

int Rng::integer(int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<int>(engine_() % span);
}

Vector Rng::gaussian_vector(int n) {
  Vector out(n);
  for (int i = 0; i < n; ++i) out(i) = gaussian();
  return out;
}

Matrix Rng::gaussian_matrix(int rows, int cols) {
  Matrix out(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) out(i, j) = gaussian();
  return out;
}

Matrix random_orthogonal(int n, Rng& rng) {
  const Matrix a = rng.gaussian_matrix(n, n);
  Eigen::HouseholderQR<Matrix> qr(a);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR();
  for (int i = 0; i < n; ++i)
    if (r(i, i) < 0) q.col(i) = -q.col(i);
  return q;
}

Matrix random_gram(int n, Rng& rng) {
  const Matrix q = random_orthogonal(n, rng);
  Vector eig(n);
  for (int i = 0; i < n; ++i) eig(i) = rng.uniform(0.5, 3.0);
  Matrix g = q * eig.asDiagonal() * q.transpose();
  return 0.5 * (g + g.transpose());
}

MetricLieAlgebra with_random_metric(const MetricLieAlgebra& algebra, Rng& rng) {
  return with_gram(algebra, random_gram(algebra.dim(), rng));
}

MetricLieAlgebra random_isometric_scramble(const MetricLieAlgebra& algebra, Rng& rng) {
  const int n = algebra.dim();
  const Matrix l = algebra.gram.llt().matrixL();
  const Matrix q = random_orthogonal(n, rng);
  // P^T G P = G for P = L^{-T} Q L^T.
  const Matrix p = l.transpose().triangularView<Eigen::Upper>().solve(Matrix(q * l.transpose()));
  MetricLieAlgebra out = change_basis(algebra, p);
  out.gram = algebra.gram;
  return out;
}

}  // namespace nilkill
