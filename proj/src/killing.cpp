#include "nilkill/killing.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nilkill/errors.hpp"

namespace nilkill {

namespace {

Vector unit(int n, int i) { return Vector::Unit(n, i); }

// Ambient vector with the given v-part.
Vector from_v(const AdaptedFrame& f, const Vector& xv) {
  Vector out = Vector::Zero(f.dim());
  out.head(f.dim_v()) = xv;
  return out;
}

Form contract2(const Vector& x, const Vector& y, const Form& omega) {
  return contract(x, contract(y, omega));
}

// a += covector(x) ^ omega, when the degrees line up.
void add_wedge(Form& acc, const Vector& x, const Form& omega, double scale = 1.0) {
  if (omega.degree() + 1 != acc.degree()) return;
  if (x.cwiseAbs().maxCoeff() == 0.0) return;
  Form w = wedge(Form::covector(x), omega);
  w *= scale;
  acc += w;
}

}  // namespace

const char* to_string(Method method) {
  return method == Method::brute ? "brute" : "structured";
}

Matrix KillingSpace::basis_matrix() const {
  if (basis.empty()) return Matrix::Zero(binomial(static_cast<int>(frame.cols()), degree), 0);
  Matrix out(basis.front().size(), dim());
  for (int i = 0; i < dim(); ++i) out.col(i) = basis[i].coeffs();
  return out;
}

KillingResiduals killing_residuals(const AdaptedFrame& frame, const Form& omega) {
  KillingResiduals out;
  const int n = frame.dim();
  const int k = omega.degree();
  if (k == 0) return out;
  const Form d = lie_diff(frame, omega);
  std::vector<Form> nablas;
  for (int a = 0; a < n; ++a) {
    const Vector u = unit(n, a);
    nablas.push_back(nabla_form(frame, u, omega));
    Form r = nablas.back() - (1.0 / (k + 1)) * contract(u, d);
    out.equation = std::max(out.equation, r.norm());
  }
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      Form p = contract(unit(n, a), nablas[b]) + contract(unit(n, b), nablas[a]);
      out.polarized = std::max(out.polarized, p.norm());
    }
  return out;
}

double killing_residual(const AdaptedFrame& frame, const Form& omega, double tol) {
  const KillingResiduals r = killing_residuals(frame, omega);
  const double scale = std::max(1.0, omega.norm());
  const double lo = std::min(r.equation, r.polarized);
  const double hi = std::max(r.equation, r.polarized);
  if (lo <= tol * scale && hi > 100.0 * tol * scale) {
    std::ostringstream msg;
    msg << "killing_residual: equation residual " << r.equation << " and polarized residual "
        << r.polarized << " disagree";
    throw InternalInvariantViolation(msg.str());
  }
  return r.equation;
}

double KillgenTable::max() const {
  double m = 0.0;
  for (const auto& row : by_degree)
    for (double v : row) m = std::max(m, v);
  return m;
}

KillgenTable killgen_residuals(const AdaptedFrame& f, const Form& alpha) {
  const int n = f.dim();
  const int nv = f.dim_v();
  const int nz = f.dim_z();
  const int k = alpha.degree();
  KillgenTable table;
  if (k == 0) return table;
  table.by_degree.assign(k, {0.0, 0.0, 0.0});

  std::vector<Form> component;
  for (int l = -1; l <= k + 2; ++l) component.push_back(bigrade(f, alpha, l));
  const auto part = [&](int l) -> const Form& { return component[l + 1]; };
  const auto z_vec = [&](int t) { return unit(n, nv + t); };

  for (int l = 0; l < k; ++l) {
    auto& row = table.by_degree[l];

    // Quadratic in x, polarized over v-frame pairs.
    for (int a = 0; a < nv; ++a)
      for (int b = a; b < nv; ++b) {
        const Vector xa = unit(n, a);
        const Vector xb = unit(n, b);
        Form r(n, k - 1);
        for (int i = 0; i < nv; ++i) {
          const Vector ei = unit(n, i);
          add_wedge(r, f.bracket(xa, ei), contract2(xb, ei, part(l + 2)));
          add_wedge(r, f.bracket(xb, ei), contract2(xa, ei, part(l + 2)));
        }
        for (int t = 0; t < nz; ++t) {
          add_wedge(r, from_v(f, f.j_matrices[t] * xa.head(nv)), contract2(xb, z_vec(t), part(l)),
                    -1.0);
          add_wedge(r, from_v(f, f.j_matrices[t] * xb.head(nv)), contract2(xa, z_vec(t), part(l)),
                    -1.0);
        }
        row[0] = std::max(row[0], r.norm());
      }

    // Quadratic in z, polarized over z-frame pairs.
    for (int s = 0; s < nz; ++s)
      for (int u = s; u < nz; ++u) {
        Form r(n, k - 1);
        for (int i = 0; i < nv; ++i) {
          const Vector ei = unit(n, i);
          add_wedge(r, from_v(f, f.j_matrices[s] * ei.head(nv)), contract2(z_vec(u), ei, part(l)));
          add_wedge(r, from_v(f, f.j_matrices[u] * ei.head(nv)), contract2(z_vec(s), ei, part(l)));
        }
        row[1] = std::max(row[1], r.norm());
      }

    // Mixed: bilinear in (x, z).
    for (int a = 0; a < nv; ++a)
      for (int s = 0; s < nz; ++s) {
        const Vector x = unit(n, a);
        const Vector z = z_vec(s);
        const Matrix& js = f.j_matrices[s];
        Form r(n, k - 1);
        for (int i = 0; i < nv; ++i) {
          const Vector ei = unit(n, i);
          add_wedge(r, f.bracket(x, ei), contract2(z, ei, part(l + 1)));
          add_wedge(r, from_v(f, js * ei.head(nv)), contract2(x, ei, part(l + 1)), -1.0);
        }
        r -= 2.0 * contract(from_v(f, js * x.head(nv)), part(l + 1));
        for (int t = 0; t < nz; ++t) {
          add_wedge(r, from_v(f, f.j_matrices[t] * x.head(nv)), contract2(z, z_vec(t), part(l - 1)),
                    -1.0);
        }
        row[2] = std::max(row[2], r.norm());
      }
  }
  return table;
}

Matrix killing_operator(const AdaptedFrame& frame, int degree) {
  const int n = frame.dim();
  const std::int64_t size = binomial(n, degree);
  Matrix op = Matrix::Zero(n * size, size);
  for (std::int64_t r = 0; r < size; ++r) {
    Form omega(n, degree);
    omega.coeffs()(r) = 1.0;
    const Form d = lie_diff(frame, omega);
    for (int a = 0; a < n; ++a) {
      const Vector u = unit(n, a);
      Form res = nabla_form(frame, u, omega) - (1.0 / (degree + 1)) * contract(u, d);
      op.block(a * size, r, size, 1) = res.coeffs();
    }
  }
  return op;
}

KillingSpace killing_nullspace_brute(const AdaptedFrame& frame, int degree, double tol) {
  const int n = frame.dim();
  if (degree < 1 || degree > n) {
    throw InvalidInput("killing_nullspace_brute: degree must lie in [1, " + std::to_string(n) +
                       "]");
  }
  KillingSpace out;
  out.degree = degree;
  out.method = Method::brute;
  out.frame = frame.frame;
  const Matrix kernel = nullspace(killing_operator(frame, degree), tol);
  for (Eigen::Index c = 0; c < kernel.cols(); ++c) {
    Form w(n, degree);
    w.coeffs() = kernel.col(c);
    out.basis.push_back(w.normalized(tol));
  }
  return out;
}

KillingSpace killing_nullspace_brute(const MetricLieAlgebra& algebra, int degree, double tol) {
  KillingSpace out = killing_nullspace_brute(adapted_frame(algebra, tol), degree, tol);
  out.algebra_ref = algebra.name;
  return out;
}

Form complex_structure_form(const AdaptedFrame& frame, const Matrix& j) {
  const int nv = frame.dim_v();
  const int nz = frame.dim_z();
  Matrix a = Matrix::Zero(frame.dim(), frame.dim());
  a.topLeftCorner(nv, nv) = j.topLeftCorner(nv, nv);
  a.bottomRightCorner(nz, nz) = 3.0 * j.bottomRightCorner(nz, nz);
  return skew_to_two_form(a);
}

Form naturally_reductive_form(const AdaptedFrame& frame, const StructureConstants& cb) {
  const int n = frame.dim();
  const int nv = frame.dim_v();
  const int nz = frame.dim_z();
  Form out(n, 3);
  for (int t = 0; t < nz; ++t)
    for (int a = 0; a < nv; ++a)
      for (int b = a + 1; b < nv; ++b)
        out.coeff(indices_mask({a, b, nv + t})) = frame.j_matrices[t](b, a);
  for (int s = 0; s < nz; ++s)
    for (int t = s + 1; t < nz; ++t)
      for (int u = t + 1; u < nz; ++u)
        out.coeff(indices_mask({nv + s, nv + t, nv + u})) = 2.0 * cb(s, t, u);
  return out;
}

Killing2Data killing2_data(const AdaptedFrame& f, const Form& alpha) {
  const int nv = f.dim_v();
  const int nz = f.dim_z();
  const int na = f.dim_a();
  const Matrix a = two_form_to_skew(alpha);
  Killing2Data out;
  out.alpha2 = a.topLeftCorner(nv, nv);
  Matrix zz = a.bottomRightCorner(nz, nz);
  out.abelian_part = skew_to_two_form(zz.bottomRightCorner(na, na));
  zz.bottomRows(na).setZero();
  zz.rightCols(na).setZero();
  out.alpha0 = zz;
  return out;
}

std::vector<Matrix> beta_matrices(const AdaptedFrame& f, const Form& alpha) {
  const int nv = f.dim_v();
  std::vector<Matrix> out(f.dim_z(), Matrix::Zero(nv, nv));
  for (int t = 0; t < f.dim_z(); ++t)
    for (int a = 0; a < nv; ++a)
      for (int b = 0; b < nv; ++b)
        if (a != b) out[t](b, a) = alpha.at({a, b, nv + t});
  return out;
}

Killing3Data killing3_data(const AdaptedFrame& f, const Form& alpha) {
  const int nv = f.dim_v();
  const int nz = f.dim_z();
  const int na = f.dim_a();
  const int m = nz - na;
  Killing3Data out;
  out.b = Matrix::Zero(nz, nz);

  const std::vector<Matrix> d = beta_matrices(f, alpha);
  Matrix span(nv * nv, m);
  for (int s = 0; s < m; ++s) span.col(s) = Eigen::Map<const Vector>(f.j_matrices[s].data(), nv * nv);
  const Matrix gram = span.transpose() * span;
  Eigen::LDLT<Matrix> solver(gram);
  for (int t = 0; t < nz; ++t) {
    const Vector target = Eigen::Map<const Vector>(d[t].data(), nv * nv);
    if (t < m && m > 0) {
      const Vector coef = solver.solve(span.transpose() * target);
      out.b.col(t).head(m) = coef;
      out.fit_residual = std::max(out.fit_residual, (span * coef - target).norm());
    } else {
      out.fit_residual = std::max(out.fit_residual, target.norm());
    }
  }

  out.gamma = Form(nz, 3);
  out.abelian_part = Form(na, 3);
  const Mask a_mask = na == 0 ? 0u : (((Mask{1} << na) - 1) << m);
  alpha.for_each_term([&](Mask mask, double c) {
    std::vector<int> idx = mask_indices(mask);
    if (idx.front() < nv) return;
    for (int& i : idx) i -= nv;
    const Mask local = indices_mask(idx);
    if ((local & a_mask) == local) {
      for (int& i : idx) i -= m;
      out.abelian_part.coeff(indices_mask(idx)) = c;
    } else {
      out.gamma.coeff(local) = c;
    }
  });
  return out;
}

double kill2_residual(const AdaptedFrame& f, const Killing2Data& data) {
  double out = 0.0;
  for (int t = 0; t < f.dim_z(); ++t) {
    const Matrix& jt = f.j_matrices[t];
    const Matrix lhs = f.j(data.alpha0.col(t));
    out = std::max(out, max_abs(lhs - 3.0 * data.alpha2 * jt));
    out = std::max(out, max_abs(data.alpha2 * jt + jt * data.alpha2));
  }
  return out;
}

double jm_residual(const AdaptedFrame& f, const Killing3Data& data) {
  const int nz = f.dim_z();
  double out = 0.0;
  for (int s = 0; s < nz; ++s)
    for (int t = 0; t < nz; ++t) {
      const Matrix jbs = f.j(data.b.col(s));
      const Matrix jbt = f.j(data.b.col(t));
      const Matrix& js = f.j_matrices[s];
      const Matrix& jt = f.j_matrices[t];
      Vector g = Vector::Zero(nz);
      for (int u = 0; u < nz; ++u) g(u) = data.gamma.at({s, t, u});
      const Matrix lhs = jbs * jt - jbt * js + (js * jbt - jbt * js);
      out = std::max(out, max_abs(lhs - f.j(g)));
    }
  return out;
}

double parallel_residual(const AdaptedFrame& frame, const Form& omega) {
  double out = 0.0;
  for (int a = 0; a < frame.dim(); ++a)
    out = std::max(out, nabla_form(frame, unit(frame.dim(), a), omega).norm());
  return out;
}

bool is_parallel(const AdaptedFrame& frame, const Form& omega, double tol) {
  return parallel_residual(frame, omega) <= tol;
}

namespace {

KillingSpace structured_space(const Decomposition& dec, int degree) {
  KillingSpace out;
  out.degree = degree;
  out.method = Method::structured;
  out.frame = dec.ambient.frame;
  return out;
}

// All basis forms of Lambda^k a*.
std::vector<Form> abelian_forms(const AdaptedFrame& f, int degree) {
  std::vector<Form> out;
  const std::vector<int>& a = f.a_indices;
  const int na = static_cast<int>(a.size());
  if (degree > na) return out;
  Form probe(na, degree);
  for (std::int64_t r = 0; r < probe.size(); ++r) {
    std::vector<int> idx = mask_indices(mask_unrank(degree, r));
    for (int& i : idx) i = a[i];
    out.push_back(Form::basis(f.dim(), idx));
  }
  return out;
}

// The factor form written in factor frame coordinates, moved to the ambient frame.
Form embed(const FactorReport& factor, const Form& local, double tol) {
  return pullback(local, factor.frame_in_ambient().transpose()).normalized(tol);
}

}  // namespace

Killing2Result solve_killing2(const Decomposition& dec, double tol) {
  Killing2Result out;
  out.space = structured_space(dec, 2);
  for (const FactorReport& factor : dec.factors) {
    if (!factor.has_complex_structure) {
      out.per_factor.push_back(0);
      continue;
    }
    out.space.basis.push_back(
        embed(factor, complex_structure_form(factor.frame, *factor.complex_structure), tol));
    out.per_factor.push_back(1);
  }
  for (Form& w : abelian_forms(dec.ambient, 2)) out.space.basis.push_back(std::move(w));
  for (const Form& w : out.space.basis) out.data.push_back(killing2_data(dec.ambient, w));
  return out;
}

Killing2Result solve_killing2(const MetricLieAlgebra& algebra, double tol) {
  Killing2Result out = solve_killing2(decompose(algebra, tol), tol);
  out.space.algebra_ref = algebra.name;
  return out;
}

Killing3Result solve_killing3(const Decomposition& dec, double tol) {
  Killing3Result out;
  out.space = structured_space(dec, 3);
  for (const FactorReport& factor : dec.factors) {
    if (!factor.naturally_reductive) {
      out.per_factor.push_back(0);
      continue;
    }
    out.space.basis.push_back(
        embed(factor, naturally_reductive_form(factor.frame, *factor.compact_bracket), tol));
    out.per_factor.push_back(1);
  }
  for (Form& w : abelian_forms(dec.ambient, 3)) out.space.basis.push_back(std::move(w));
  for (const Form& w : out.space.basis) out.data.push_back(killing3_data(dec.ambient, w));
  return out;
}

Killing3Result solve_killing3(const MetricLieAlgebra& algebra, double tol) {
  Killing3Result out = solve_killing3(decompose(algebra, tol), tol);
  out.space.algebra_ref = algebra.name;
  return out;
}

}  // namespace nilkill
