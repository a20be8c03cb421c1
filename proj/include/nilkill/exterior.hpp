#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "nilkill/algebra.hpp"
#include "nilkill/linalg.hpp"

namespace nilkill {

// A strictly increasing index tuple stored as a bit set.
using Mask = std::uint32_t;

inline constexpr int kMaxFormDim = 30;

std::int64_t binomial(int n, int k);

// Position of `mask` among all masks of the same popcount in increasing
// numeric (colexicographic) order.
std::int64_t mask_rank(Mask mask);
Mask mask_unrank(int degree, std::int64_t rank);

std::vector<int> mask_indices(Mask mask);
Mask indices_mask(const std::vector<int>& sorted_indices);

// Alternating k-form in frame coordinates, dense over the C(n, k) tuples.
// Coefficients use the determinant convention: e^I(e_I) = 1.
class Form {
 public:
  struct Term {
    std::vector<int> indices;
    double coeff;
  };

  Form() = default;
  Form(int dim, int degree);

  // e^{i_1} ^ ... ^ e^{i_k}; indices need not be sorted (sign applied),
  // a repeated index gives the zero form.
  static Form basis(int dim, const std::vector<int>& indices);

  // The 1-form metric-dual to x (orthonormal frame).
  static Form covector(const Vector& x);

  static Form constant(int dim, double value);

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  std::int64_t size() const { return coeffs_.size(); }

  const Vector& coeffs() const { return coeffs_; }
  Vector& coeffs() { return coeffs_; }

  double coeff(Mask mask) const { return coeffs_(mask_rank(mask)); }
  double& coeff(Mask mask) { return coeffs_(mask_rank(mask)); }

  // Coefficient of the tuple (any order, sign of the sorting permutation applied).
  double at(const std::vector<int>& indices) const;

  // Calls f(mask, coefficient) for every tuple, nonzero coefficients only.
  template <typename F>
  void for_each_term(F&& f) const {
    if (coeffs_.size() == 0) return;
    Mask m = degree_ == 0 ? 0u : (Mask{1} << degree_) - 1;
    for (Eigen::Index r = 0; r < coeffs_.size(); ++r) {
      if (coeffs_(r) != 0.0) f(m, coeffs_(r));
      if (degree_ > 0) {
        const Mask low = m & (~m + 1);
        const Mask ripple = m + low;
        m = (((ripple ^ m) >> 2) / low) | ripple;
      }
    }
  }

  double norm() const { return coeffs_.norm(); }

  // Terms with |coeff| > tol, tuples in lexicographic order.
  std::vector<Term> terms(double tol = 0.0) const;

  // Unit norm, first coefficient beyond tol positive.
  Form normalized(double tol = kDefaultTol) const;

  Form& operator+=(const Form& other);
  Form& operator-=(const Form& other);
  Form& operator*=(double s) {
    coeffs_ *= s;
    return *this;
  }

  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }
  friend Form operator*(double s, Form a) { return a *= s; }

 private:
  int dim_ = 0;
  int degree_ = 0;
  Vector coeffs_;
};

// Pointwise inner product induced by the orthonormal frame.
double inner(const Form& a, const Form& b);

Form wedge(const Form& a, const Form& b);

// Interior product x -| omega. Degree-0 input gives the zero form of degree 0.
Form contract(const Vector& x, const Form& omega);

// Derivation extension of a skew endomorphism: sum_i f(u_i) ^ (u_i -| omega).
// Throws NotSkew if |f + f^T| > tol.
Form skew_extend(const Matrix& f, const Form& omega, double tol = kDefaultTol);

// Chevalley-Eilenberg differential in frame coordinates.
Form lie_diff(const AdaptedFrame& frame, const Form& omega);

// Covariant derivative nabla_y omega of an invariant form.
Form nabla_form(const AdaptedFrame& frame, const Vector& y, const Form& omega);

// Component in Lambda^l v* (x) Lambda^{k-l} z*.
Form bigrade(const AdaptedFrame& frame, const Form& omega, int l);

// Pullback along the linear map a (rows: target coordinates, cols: source).
Form pullback(const Form& omega, const Matrix& a);

// 2-forms vs skew matrices: omega(x, y) = <A x, y>.
Matrix two_form_to_skew(const Form& omega);
Form skew_to_two_form(const Matrix& a);

}  // namespace nilkill
