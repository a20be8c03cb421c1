#pragma once

#include <string>
#include <utility>
#include <vector>

#include "nilkill/linalg.hpp"

namespace nilkill {

// Dense table c(i, j, k) with [b_i, b_j] = sum_k c(i, j, k) b_k.
class StructureConstants {
 public:
  StructureConstants() = default;
  explicit StructureConstants(int n) : n_(n), data_(static_cast<size_t>(n) * n * n, 0.0) {}

  int dim() const { return n_; }

  double& operator()(int i, int j, int k) { return data_[index(i, j, k)]; }
  double operator()(int i, int j, int k) const { return data_[index(i, j, k)]; }

  // Sets c(i,j,k) = value and c(j,i,k) = -value.
  void set_bracket(int i, int j, int k, double value) {
    (*this)(i, j, k) = value;
    (*this)(j, i, k) = -value;
  }

  Vector bracket(const Vector& x, const Vector& y) const;

  // Matrix of ad_x: column j is [x, b_j].
  Matrix ad(const Vector& x) const;

  double max_abs() const;

  bool operator==(const StructureConstants&) const = default;

 private:
  size_t index(int i, int j, int k) const {
    return (static_cast<size_t>(i) * n_ + j) * n_ + k;
  }

  int n_ = 0;
  std::vector<double> data_;
};

// A Lie algebra in a user basis together with the Gram matrix of an inner product.
struct MetricLieAlgebra {
  std::string name;
  std::vector<std::string> basis_names;
  StructureConstants structure;
  Matrix gram;

  int dim() const { return structure.dim(); }
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// Checks antisymmetry, the 2-step condition [[x,y],w] = 0 and positive
// definiteness of the Gram matrix. An abelian algebra passes.
ValidationReport validate(const MetricLieAlgebra& algebra, double tol = kDefaultTol);

// Throws InvalidAlgebra listing every violation.
void require_valid(const MetricLieAlgebra& algebra, double tol = kDefaultTol);

struct Subspace {
  Matrix columns;
  std::string label;
  int dim() const { return static_cast<int>(columns.cols()); }
};

// Center z and commutator n' (user coordinates). Throws AlgebraAbelian when n' = 0.
std::pair<Subspace, Subspace> center_commutator(const MetricLieAlgebra& algebra,
                                                double tol = kDefaultTol);

// g-orthonormal frame adapted to n = v + z. Frame order: v first, then the
// z-directions on which j is injective, then a = ker j.
struct AdaptedFrame {
  Matrix frame;  // user coordinates, one frame vector per column
  std::vector<int> v_indices;
  std::vector<int> z_indices;
  std::vector<int> a_indices;        // subset of z_indices
  std::vector<Matrix> j_matrices;    // j_matrices[t] acts on v, t indexes z_indices
  StructureConstants structure;      // brackets in frame coordinates

  int dim() const { return static_cast<int>(frame.cols()); }
  int dim_v() const { return static_cast<int>(v_indices.size()); }
  int dim_z() const { return static_cast<int>(z_indices.size()); }
  int dim_a() const { return static_cast<int>(a_indices.size()); }
  bool is_v(int i) const { return i < dim_v(); }
  bool is_a(int i) const { return i >= dim() - dim_a(); }

  // j(z) for z given by its coordinates on the z-frame (length dim_z).
  Matrix j(const Vector& z_coords) const;

  Vector bracket(const Vector& x, const Vector& y) const { return structure.bracket(x, y); }

  // Converts frame coordinates to user coordinates and back.
  Vector to_user(const Vector& x) const { return frame * x; }
  Vector from_user(const Vector& x, const Matrix& gram) const {
    return frame.transpose() * gram * x;
  }
};

// Builds the adapted frame. Abelian algebras are accepted (v = 0, a = z = n).
// Throws NumericalRankFailure on tolerance-ambiguous center or ker j.
AdaptedFrame adapted_frame(const MetricLieAlgebra& algebra, double tol = kDefaultTol);

// Levi-Civita connection on left-invariant fields via the v/z table.
Vector levi_civita(const AdaptedFrame& frame, const Vector& x, const Vector& y);

// Same quantity straight from the Koszul formula; cross-check only.
Vector levi_civita_koszul(const AdaptedFrame& frame, const Vector& x, const Vector& y);

// Matrix of the skew endomorphism u -> nabla_y u in frame coordinates.
Matrix nabla_matrix(const AdaptedFrame& frame, const Vector& y);

// [tr(J_s J_t)] over the z-frame.
Matrix j_trace_form(const AdaptedFrame& frame);

// Re-expresses the algebra in the basis b'_i = sum_j p(j, i) b_j.
MetricLieAlgebra change_basis(const MetricLieAlgebra& algebra, const Matrix& p);

// Same brackets, different inner product.
MetricLieAlgebra with_gram(const MetricLieAlgebra& algebra, const Matrix& gram);

}  // namespace nilkill
