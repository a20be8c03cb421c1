#include "nilkill/exterior.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <string>

#include "nilkill/errors.hpp"

namespace nilkill {

namespace {

constexpr int kTable = 64;

constexpr std::array<std::array<std::int64_t, kTable>, kTable> make_binomials() {
  std::array<std::array<std::int64_t, kTable>, kTable> t{};
  for (int n = 0; n < kTable; ++n) {
    t[n][0] = 1;
    for (int k = 1; k <= n; ++k) t[n][k] = t[n - 1][k - 1] + (k < n ? t[n - 1][k] : 0);
  }
  return t;
}

constexpr auto kBinomials = make_binomials();

Mask bit(int i) { return Mask{1} << i; }

// (-1)^(number of elements of `set` below index i).
double insertion_sign(Mask set, int i) { return (std::popcount(set & (bit(i) - 1)) & 1) ? -1.0 : 1.0; }

void check_dim(int dim) {
  if (dim < 0 || dim > kMaxFormDim) {
    throw InvalidInput("form dimension " + std::to_string(dim) + " outside [0, " +
                       std::to_string(kMaxFormDim) + "]");
  }
}

}  // namespace

std::int64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  return kBinomials[n][k];
}

std::int64_t mask_rank(Mask mask) {
  std::int64_t rank = 0;
  int p = 1;
  while (mask != 0) {
    const int i = std::countr_zero(mask);
    rank += kBinomials[i][p];
    ++p;
    mask &= mask - 1;
  }
  return rank;
}

Mask mask_unrank(int degree, std::int64_t rank) {
  Mask out = 0;
  for (int p = degree; p >= 1; --p) {
    int c = p - 1;
    while (binomial(c + 1, p) <= rank) ++c;
    out |= bit(c);
    rank -= binomial(c, p);
  }
  return out;
}

std::vector<int> mask_indices(Mask mask) {
  std::vector<int> out;
  while (mask != 0) {
    out.push_back(std::countr_zero(mask));
    mask &= mask - 1;
  }
  return out;
}

Mask indices_mask(const std::vector<int>& sorted_indices) {
  Mask m = 0;
  for (int i : sorted_indices) m |= bit(i);
  return m;
}

Form::Form(int dim, int degree) : dim_(dim), degree_(degree) {
  check_dim(dim);
  if (degree < 0) throw InvalidInput("negative form degree");
  coeffs_ = Vector::Zero(binomial(dim, degree));
}

Form Form::basis(int dim, const std::vector<int>& indices) {
  Form out(dim, static_cast<int>(indices.size()));
  if (out.size() == 0) return out;
  std::vector<int> sorted = indices;
  double sign = 1.0;
  for (size_t a = 0; a < sorted.size(); ++a)
    for (size_t b = a + 1; b < sorted.size(); ++b) {
      if (sorted[a] == sorted[b]) return out;
      if (sorted[a] > sorted[b]) sign = -sign;
    }
  std::sort(sorted.begin(), sorted.end());
  for (int i : sorted)
    if (i < 0 || i >= dim) throw InvalidInput("form index out of range");
  out.coeff(indices_mask(sorted)) = sign;
  return out;
}

Form Form::covector(const Vector& x) {
  Form out(static_cast<int>(x.size()), 1);
  out.coeffs_ = x;
  return out;
}

Form Form::constant(int dim, double value) {
  Form out(dim, 0);
  out.coeffs_(0) = value;
  return out;
}

double Form::at(const std::vector<int>& indices) const {
  if (static_cast<int>(indices.size()) != degree_) throw InvalidInput("tuple length != degree");
  std::vector<int> sorted = indices;
  double sign = 1.0;
  for (size_t a = 0; a < sorted.size(); ++a)
    for (size_t b = a + 1; b < sorted.size(); ++b) {
      if (sorted[a] == sorted[b]) return 0.0;
      if (sorted[a] > sorted[b]) sign = -sign;
    }
  std::sort(sorted.begin(), sorted.end());
  return sign * coeff(indices_mask(sorted));
}

std::vector<Form::Term> Form::terms(double tol) const {
  std::vector<Term> out;
  for_each_term([&](Mask m, double c) {
    if (std::abs(c) > tol) out.push_back({mask_indices(m), c});
  });
  std::sort(out.begin(), out.end(),
            [](const Term& a, const Term& b) { return a.indices < b.indices; });
  return out;
}

Form Form::normalized(double tol) const {
  Form out = *this;
  const double n = norm();
  if (n == 0.0) return out;
  out.coeffs_ /= n;
  for (const Term& t : out.terms(tol)) {
    if (t.coeff < 0) out.coeffs_ = -out.coeffs_;
    break;
  }
  return out;
}

Form& Form::operator+=(const Form& other) {
  if (other.dim_ != dim_ || other.degree_ != degree_) throw InvalidInput("form shape mismatch");
  coeffs_ += other.coeffs_;
  return *this;
}

Form& Form::operator-=(const Form& other) {
  if (other.dim_ != dim_ || other.degree_ != degree_) throw InvalidInput("form shape mismatch");
  coeffs_ -= other.coeffs_;
  return *this;
}

double inner(const Form& a, const Form& b) {
  if (a.dim() != b.dim() || a.degree() != b.degree()) throw InvalidInput("form shape mismatch");
  return a.coeffs().dot(b.coeffs());
}

Form wedge(const Form& a, const Form& b) {
  if (a.dim() != b.dim()) throw InvalidInput("wedge: dimension mismatch");
  const int degree = a.degree() + b.degree();
  if (degree > a.dim()) {
    throw DegreeOverflow("wedge: degree " + std::to_string(degree) + " exceeds dimension " +
                         std::to_string(a.dim()));
  }
  Form out(a.dim(), degree);
  a.for_each_term([&](Mask ma, double ca) {
    b.for_each_term([&](Mask mb, double cb) {
      if (ma & mb) return;
      // Sign of the shuffle: pairs (p in a, q in b) with p > q.
      int swaps = 0;
      for (Mask rest = mb; rest != 0; rest &= rest - 1) {
        const int q = std::countr_zero(rest);
        swaps += std::popcount(ma >> (q + 1));
      }
      out.coeff(ma | mb) += (swaps & 1 ? -1.0 : 1.0) * ca * cb;
    });
  });
  return out;
}

Form contract(const Vector& x, const Form& omega) {
  if (omega.degree() == 0) return Form(omega.dim(), 0);
  if (x.size() != omega.dim()) throw InvalidInput("contract: dimension mismatch");
  Form out(omega.dim(), omega.degree() - 1);
  omega.for_each_term([&](Mask m, double c) {
    int p = 0;
    for (Mask rest = m; rest != 0; rest &= rest - 1, ++p) {
      const int i = std::countr_zero(rest);
      if (x(i) == 0.0) continue;
      out.coeff(m & ~bit(i)) += (p & 1 ? -1.0 : 1.0) * x(i) * c;
    }
  });
  return out;
}

Form skew_extend(const Matrix& f, const Form& omega, double tol) {
  const int n = omega.dim();
  if (f.rows() != n || f.cols() != n) throw InvalidInput("skew_extend: dimension mismatch");
  const double defect = max_abs(f + f.transpose());
  if (defect > tol * std::max(1.0, max_abs(f))) {
    throw NotSkew("skew_extend: endomorphism is not skew (|f + f^T| = " + std::to_string(defect) +
                  ")");
  }
  Form out(n, omega.degree());
  omega.for_each_term([&](Mask m, double c) {
    int p = 0;
    for (Mask bits = m; bits != 0; bits &= bits - 1, ++p) {
      const int i = std::countr_zero(bits);
      const Mask rest = m & ~bit(i);
      const double s = (p & 1 ? -1.0 : 1.0) * c;
      // f(u_i) ^ (u_i -| e^m), with f(u_i) = sum_j f(j, i) e^j.
      for (int j = 0; j < n; ++j) {
        if (f(j, i) == 0.0 || (rest & bit(j))) continue;
        out.coeff(rest | bit(j)) += insertion_sign(rest, j) * s * f(j, i);
      }
    }
  });
  return out;
}

Form lie_diff(const AdaptedFrame& frame, const Form& omega) {
  const int n = omega.dim();
  if (n != frame.dim()) throw InvalidInput("lie_diff: dimension mismatch");
  const int k = omega.degree();
  Form out(n, k + 1);
  if (out.size() == 0) return out;

  // Nonzero bracket components per ordered pair i < j.
  std::vector<std::vector<std::pair<int, double>>> brackets(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int m = 0; m < n; ++m) {
        const double c = frame.structure(i, j, m);
        if (c != 0.0) brackets[i * n + j].emplace_back(m, c);
      }

  for (Eigen::Index r = 0; r < out.size(); ++r) {
    const Mask tuple = mask_unrank(k + 1, r);
    const std::vector<int> idx = mask_indices(tuple);
    double value = 0.0;
    for (int p = 0; p <= k; ++p)
      for (int q = p + 1; q <= k; ++q) {
        const auto& bs = brackets[idx[p] * n + idx[q]];
        if (bs.empty()) continue;
        const Mask rest = tuple & ~bit(idx[p]) & ~bit(idx[q]);
        const double sign = ((p + q) & 1) ? -1.0 : 1.0;
        for (const auto& [m, c] : bs) {
          if (rest & bit(m)) continue;
          // omega([x_p, x_q], rest) with the bracket moved into sorted position.
          value += sign * c * insertion_sign(rest, m) * omega.coeff(rest | bit(m));
        }
      }
    out.coeffs()(r) = value;
  }
  return out;
}

Form nabla_form(const AdaptedFrame& frame, const Vector& y, const Form& omega) {
  if (omega.degree() == 0) return Form(omega.dim(), 0);
  return skew_extend(nabla_matrix(frame, y), omega);
}

Form bigrade(const AdaptedFrame& frame, const Form& omega, int l) {
  Form out(omega.dim(), omega.degree());
  if (l < 0 || l > omega.degree()) return out;
  const Mask vmask = frame.dim_v() == 0 ? 0u : (bit(frame.dim_v()) - 1);
  omega.for_each_term([&](Mask m, double c) {
    if (std::popcount(m & vmask) == l) out.coeff(m) = c;
  });
  return out;
}

Form pullback(const Form& omega, const Matrix& a) {
  if (a.rows() != omega.dim()) throw InvalidInput("pullback: dimension mismatch");
  const int n = static_cast<int>(a.cols());
  Form out(n, omega.degree());
  if (omega.degree() == 0) {
    out.coeffs() = omega.coeffs();
    return out;
  }
  if (out.size() == 0) return out;
  omega.for_each_term([&](Mask m, double c) {
    Form term = Form::constant(n, c);
    for (int i : mask_indices(m)) term = wedge(term, Form::covector(a.row(i).transpose()));
    out += term;
  });
  return out;
}

Matrix two_form_to_skew(const Form& omega) {
  if (omega.degree() != 2) throw InvalidInput("two_form_to_skew: degree must be 2");
  const int n = omega.dim();
  Matrix a = Matrix::Zero(n, n);
  omega.for_each_term([&](Mask m, double c) {
    const std::vector<int> ij = mask_indices(m);
    a(ij[1], ij[0]) = c;
    a(ij[0], ij[1]) = -c;
  });
  return a;
}

Form skew_to_two_form(const Matrix& a) {
  const int n = static_cast<int>(a.rows());
  Form out(n, 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) out.coeff(bit(i) | bit(j)) = 0.5 * (a(j, i) - a(i, j));
  return out;
}

}  // namespace nilkill
