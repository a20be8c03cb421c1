#pragma once

#include <cstdint>
#include <random>

#include "nilkill/algebra.hpp"

namespace nilkill {

// Seeded generator whose output does not depend on the standard library's
// distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  // Uniform in [0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double gaussian();
  int integer(int lo, int hi);  // inclusive bounds

  Vector gaussian_vector(int n);
  Matrix gaussian_matrix(int rows, int cols);

 private:
  std::mt19937_64 engine_;
};

// Symmetric positive-definite matrix with eigenvalues roughly in [0.5, 3].
Matrix random_gram(int n, Rng& rng);

// Haar-like orthogonal matrix from the QR factorization of a Gaussian matrix.
Matrix random_orthogonal(int n, Rng& rng);

// The same algebra (brackets) with a random inner product.
MetricLieAlgebra with_random_metric(const MetricLieAlgebra& algebra, Rng& rng);

// An isometric copy in a random g-orthonormal-preserving user basis: the gram
// matrix is unchanged, the structure constants are transformed.
MetricLieAlgebra random_isometric_scramble(const MetricLieAlgebra& algebra, Rng& rng);

}  // namespace nilkill
