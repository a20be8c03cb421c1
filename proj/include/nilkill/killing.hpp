#pragma once

#include <array>
#include <string>
#include <vector>

#include "nilkill/algebra.hpp"
#include "nilkill/exterior.hpp"
#include "nilkill/structure.hpp"

namespace nilkill {

enum class Method { brute, structured };

const char* to_string(Method method);

// Basis of the left-invariant Killing k-forms, in the adapted frame of the algebra.
struct KillingSpace {
  int degree = 0;
  std::vector<Form> basis;
  Method method = Method::brute;
  std::string algebra_ref;
  Matrix frame;  // adapted frame (user coordinates) the forms are written in

  int dim() const { return static_cast<int>(basis.size()); }

  // Coefficient vectors as columns.
  Matrix basis_matrix() const;
};

struct Killing2Data {
  Matrix alpha2;       // skew on v
  Matrix alpha0;       // skew on z, vanishing on a
  Form abelian_part;   // 2-form on a
};

struct Killing3Data {
  Matrix b;            // symmetric on z, vanishing on a
  Form gamma;          // 3-form on z without pure-a terms
  Form abelian_part;   // 3-form on a
  double fit_residual = 0.0;  // | beta(z_t) - sum_s B_st j(z_s) |, max over t
};

struct KillingResiduals {
  double equation = 0.0;   // max_a | nabla_{u_a} w - (k+1)^{-1} u_a -| dw |
  double polarized = 0.0;  // max_{a<=b} | u_a -| nabla_{u_b} w + u_b -| nabla_{u_a} w |
};

KillingResiduals killing_residuals(const AdaptedFrame& frame, const Form& omega);

// Equation residual; throws InternalInvariantViolation when the polarized
// criterion clearly disagrees with it.
double killing_residual(const AdaptedFrame& frame, const Form& omega, double tol = kDefaultTol);

// Residuals of the three bidegree families, indexed [l][family] for l = 0..k-1;
// families are the quadratic-in-v, quadratic-in-z and mixed conditions.
struct KillgenTable {
  std::vector<std::array<double, 3>> by_degree;
  double max() const;
};

KillgenTable killgen_residuals(const AdaptedFrame& frame, const Form& omega);

// Stacked operator w -> (nabla_{u_a} w - (k+1)^{-1} u_a -| dw)_a.
Matrix killing_operator(const AdaptedFrame& frame, int degree);

KillingSpace killing_nullspace_brute(const MetricLieAlgebra& algebra, int degree,
                                     double tol = kDefaultTol);
KillingSpace killing_nullspace_brute(const AdaptedFrame& frame, int degree,
                                     double tol = kDefaultTol);

struct Killing2Result {
  KillingSpace space;
  std::vector<Killing2Data> data;
  std::vector<int> per_factor;  // contribution of each irreducible factor
};

struct Killing3Result {
  KillingSpace space;
  std::vector<Killing3Data> data;
  std::vector<int> per_factor;
};

Killing2Result solve_killing2(const MetricLieAlgebra& algebra, double tol = kDefaultTol);
Killing2Result solve_killing2(const Decomposition& decomposition, double tol = kDefaultTol);
Killing3Result solve_killing3(const MetricLieAlgebra& algebra, double tol = kDefaultTol);
Killing3Result solve_killing3(const Decomposition& decomposition, double tol = kDefaultTol);

// Splits a Killing 2-form into its v-block, z-block and abelian part.
Killing2Data killing2_data(const AdaptedFrame& frame, const Form& alpha);

// Reads off beta = j o B and gamma from a 3-form.
Killing3Data killing3_data(const AdaptedFrame& frame, const Form& alpha);

// | j(alpha0 z) - 3 alpha2 j(z) | and | alpha2 j(z) + j(z) alpha2 |, max over the z-frame.
double kill2_residual(const AdaptedFrame& frame, const Killing2Data& data);

// | j(Bz)j(z') - j(Bz')j(z) + [j(z), j(Bz')] - j(gamma(z,z')) |, max over z-frame pairs.
double jm_residual(const AdaptedFrame& frame, const Killing3Data& data);

// beta(z_t) as a skew endomorphism of v: <beta(z_t) x, y> = alpha(x, y, z_t).
std::vector<Matrix> beta_matrices(const AdaptedFrame& frame, const Form& alpha);

bool is_parallel(const AdaptedFrame& frame, const Form& omega, double tol = kDefaultTol);

// max_y | nabla_y w | over the frame.
double parallel_residual(const AdaptedFrame& frame, const Form& omega);

// The 3-form j + gamma on an irreducible naturally reductive algebra, with
// gamma(z, z') = 2 [[z, z']].
Form naturally_reductive_form(const AdaptedFrame& frame, const StructureConstants& compact_bracket);

// alpha2 = J|v, alpha0 = 3 J|z.
Form complex_structure_form(const AdaptedFrame& frame, const Matrix& j);

}  // namespace nilkill
