#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nilkill/algebra.hpp"

namespace nilkill {

// One irreducible non-abelian orthogonal ideal of the ambient algebra.
struct FactorReport {
  // The ideal in an orthonormal basis (identity gram).
  MetricLieAlgebra sub_algebra;
  // Columns: the sub_algebra basis in ambient frame coordinates.
  Matrix embedding;
  // Adapted frame of sub_algebra; its frame matrix is orthogonal.
  AdaptedFrame frame;

  bool has_complex_structure = false;
  std::optional<Matrix> complex_structure;  // J in factor frame coordinates

  bool naturally_reductive = false;
  std::optional<StructureConstants> compact_bracket;  // [[z_s, z_t]] on the factor z-frame

  int dim() const { return sub_algebra.dim(); }
  int dim_v() const { return frame.dim_v(); }
  int dim_z() const { return frame.dim_z(); }

  // Factor frame vectors in ambient frame coordinates.
  Matrix frame_in_ambient() const { return embedding * frame.frame; }
};

struct Decomposition {
  AdaptedFrame ambient;
  Subspace abelian;  // a = ker j, ambient frame coordinates
  std::vector<FactorReport> factors;
  // Orthogonal block map [abelian | factor frames ...] in ambient frame coordinates.
  Matrix transform;

  int d() const { return abelian.dim(); }
};

// Orthonormal (Frobenius) basis of symmetric S with S[x,y] = [Sx,y], in frame
// coordinates. Requires j injective (no abelian factor).
std::vector<Matrix> bracket_commutant(const AdaptedFrame& frame, double tol = kDefaultTol);

// Splits off a = ker j, then splits along eigenspaces of the commutant until
// every factor has a one-dimensional commutant.
// Throws DecompositionAmbiguous when eigenvalue clusters are not separated.
Decomposition decompose(const MetricLieAlgebra& algebra, double tol = kDefaultTol);

// Orthogonal bi-invariant complex structure of an irreducible algebra, in
// its frame coordinates, if one exists. Unique up to sign.
std::optional<Matrix> find_complex_structure(const AdaptedFrame& frame,
                                             double tol = kDefaultTol);

// Compact bracket [[z, z']] = j^{-1}[j(z), j(z')] when j(z) is a subalgebra
// of so(v) and every ad-map of the induced bracket is skew on z.
std::optional<StructureConstants> naturally_reductive_type(const AdaptedFrame& frame,
                                                           double tol = kDefaultTol);

struct KillingDimensions {
  int dim_k2 = 0;
  int dim_k3 = 0;
  int d = 0;
  int r2 = 0;
  int r3 = 0;
};

KillingDimensions killing_dimensions(const Decomposition& decomposition);
KillingDimensions killing_dimensions(const MetricLieAlgebra& algebra, double tol = kDefaultTol);

// The algebra with gram h + J^T h J, making the bi-invariant complex structure
// j_user (user coordinates) orthogonal.
MetricLieAlgebra compatible_metric(const MetricLieAlgebra& algebra, const Matrix& j_user,
                                   const Matrix& h, double tol = kDefaultTol);

// Restriction of the brackets to the span of orthonormal columns q
// (frame coordinates), as an algebra with identity gram.
MetricLieAlgebra restrict_to(const AdaptedFrame& frame, const Matrix& q, const std::string& name);

}  // namespace nilkill
