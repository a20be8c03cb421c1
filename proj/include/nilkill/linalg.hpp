#pragma once

#include <Eigen/Dense>

namespace nilkill {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline constexpr double kDefaultTol = 1e-9;

// Outcome of a singular-value rank decision on a matrix A (m x n).
struct RankSplit {
  int rank = 0;
  Vector singular_values;  // descending
  Matrix range;            // m x rank, orthonormal basis of the column space
  Matrix corange;          // n x rank, retained right singular vectors
  Matrix kernel;           // n x (n - rank), orthonormal basis of the nullspace
  double threshold = 0.0;  // tol * largest singular value
  double gap = 0.0;        // smallest retained minus largest discarded
};

// Splits the singular spectrum of `a` at tol relative to the largest singular
// value. Throws NumericalRankFailure when the gap between the smallest
// retained and the largest discarded singular value is below 10 * threshold.
RankSplit rank_split(const Matrix& a, double tol);

inline Matrix nullspace(const Matrix& a, double tol) { return rank_split(a, tol).kernel; }
inline Matrix column_space(const Matrix& a, double tol) { return rank_split(a, tol).range; }

// Orthonormalizes the (full column rank) columns of `basis` with respect to
// the inner product `gram`, Cholesky style: B L^{-T} where L L^T = B^T G B.
Matrix orthonormalize(const Matrix& basis, const Matrix& gram);

// Euclidean version of orthonormalize.
Matrix orthonormalize(const Matrix& basis);

// Same span as `basis` (full column rank), in reduced column echelon form.
// Pivots are taken column by column and accepted only above 0.1 of the largest
// remaining entry, so a span containing coordinate vectors returns them.
Matrix echelon_basis(const Matrix& basis);

// orthonormalize(echelon_basis(basis), gram): depends only on the span.
Matrix canonical_basis(const Matrix& basis, const Matrix& gram);

// Mutual projection residual between the column spans of a and b.
// Returns +inf when the spans have different dimensions.
double span_distance(const Matrix& a, const Matrix& b);

inline Matrix skew_part(const Matrix& m) { return 0.5 * (m - m.transpose()); }

inline double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace nilkill
