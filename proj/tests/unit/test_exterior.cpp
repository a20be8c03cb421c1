#include <bit>
#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "nilkill/errors.hpp"
#include "oracle.hpp"

using namespace nilkill;
using testing_support::catalog_suite;
using testing_support::random_form;

namespace {

Form e(int n, std::vector<int> idx) { return Form::basis(n, idx); }

Matrix random_skew(int n, Rng& rng) { return skew_part(rng.gaussian_matrix(n, n)); }

}  // namespace

TEST_SUITE("exterior") {
  TEST_CASE("colex ranks") {
    for (int n = 1; n <= 9; ++n)
      for (int k = 0; k <= n; ++k) {
        const std::int64_t size = binomial(n, k);
        Mask prev = 0;
        for (std::int64_t i = 0; i < size; ++i) {
          const Mask m = mask_unrank(k, i);
          CHECK(mask_rank(m) == i);
          CHECK(std::popcount(m) == k);
          if (i > 0) CHECK(m > prev);
          prev = m;
        }
      }
  }

  TEST_CASE("basis sign and tuple access") {
    const Form w = e(4, {2, 0, 1});
    CHECK(w.at({0, 1, 2}) == 1.0);
    CHECK(w.at({1, 0, 2}) == -1.0);
    CHECK(e(4, {1, 0}).at({0, 1}) == -1.0);
    CHECK(e(4, {1, 1}).norm() == 0.0);
  }

  TEST_CASE("wedge examples") {
    CHECK(wedge(e(3, {0}), e(3, {0})).norm() == 0.0);
    const Form a = e(4, {0, 1}), b = e(4, {2, 3});
    CHECK((wedge(a, b) - wedge(b, a)).norm() == 0.0);
    CHECK((wedge(e(3, {1}), e(3, {0})) + e(3, {0, 1})).norm() == 0.0);
    CHECK_THROWS_AS(wedge(e(3, {0, 1}), e(3, {1, 2})), DegreeOverflow);
  }

  TEST_CASE("graded commutativity on random forms") {
    Rng rng(1);
    for (int trial = 0; trial < 20; ++trial) {
      const int k = rng.integer(0, 3), l = rng.integer(0, 3);
      const Form a = random_form(7, k, rng), b = random_form(7, l, rng);
      const double sign = (k * l) % 2 ? -1.0 : 1.0;
      CHECK((wedge(a, b) - sign * wedge(b, a)).norm() < 1e-12);
    }
  }

  TEST_CASE("contraction examples") {
    CHECK((contract(Vector::Unit(3, 1), e(3, {0, 1, 2})) + e(3, {0, 2})).norm() == 0.0);
    CHECK((contract(Vector::Unit(3, 0), e(3, {0, 1, 2})) - e(3, {1, 2})).norm() == 0.0);
    CHECK(contract(Vector::Unit(3, 0), Form::constant(3, 2.0)).norm() == 0.0);
  }

  TEST_CASE("contraction is an anti-derivation and squares to zero") {
    Rng rng(2);
    for (int trial = 0; trial < 50; ++trial) {
      const int k = rng.integer(1, 3), l = rng.integer(0, 3);
      const Form a = random_form(7, k, rng), b = random_form(7, l, rng);
      const Vector x = rng.gaussian_vector(7);
      const double sign = k % 2 ? -1.0 : 1.0;
      const Form lhs = contract(x, wedge(a, b));
      Form rhs = wedge(contract(x, a), b);
      if (l > 0) rhs += sign * wedge(a, contract(x, b));
      CHECK((lhs - rhs).norm() < 1e-10);
      CHECK(contract(x, contract(x, a)).norm() < 1e-10);
    }
  }

  TEST_CASE("skew extension examples") {
    Matrix j = Matrix::Zero(3, 3);
    j(1, 0) = 1.0;
    j(0, 1) = -1.0;
    CHECK((skew_extend(j, e(3, {0})) - e(3, {1})).norm() == 0.0);
    Rng rng(3);
    const Matrix f = random_skew(5, rng);
    CHECK(skew_extend(f, e(5, {0, 1, 2, 3, 4})).norm() < 1e-12);
    CHECK_THROWS_AS(skew_extend(Matrix::Identity(3, 3), e(3, {0})), NotSkew);
  }

  TEST_CASE("skew extension is a derivation and respects commutators") {
    Rng rng(4);
    for (int trial = 0; trial < 40; ++trial) {
      const int n = 6;
      const Matrix f = random_skew(n, rng), g = random_skew(n, rng);
      const int k = rng.integer(1, 3), l = rng.integer(0, 3);
      const Form a = random_form(n, k, rng), b = random_form(n, l, rng);
      const Form der = skew_extend(f, wedge(a, b)) -
                       (wedge(skew_extend(f, a), b) + wedge(a, skew_extend(f, b)));
      CHECK(der.norm() < 1e-10);
      const Form comm = skew_extend(Matrix(f * g - g * f), a) -
                        (skew_extend(f, skew_extend(g, a)) - skew_extend(g, skew_extend(f, a)));
      CHECK(comm.norm() < 1e-10);
    }
  }

  TEST_CASE("differential on h3") {
    const AdaptedFrame f = adapted_frame(heisenberg(1));
    CHECK((lie_diff(f, e(3, {2})) + e(3, {0, 1})).norm() < 1e-14);
    CHECK(lie_diff(f, e(3, {0})).norm() == 0.0);
    CHECK(lie_diff(f, e(3, {0, 1, 2})).norm() == 0.0);
  }

  TEST_CASE("d o d = 0 on random forms of every catalog algebra") {
    Rng rng(5);
    for (const auto& [label, algebra] : catalog_suite()) {
      CAPTURE(label);
      const AdaptedFrame f = adapted_frame(with_random_metric(algebra, rng));
      double worst = 0.0;
      for (int trial = 0; trial < 50; ++trial) {
        const int k = rng.integer(0, std::min(4, f.dim() - 2));
        const Form w = random_form(f.dim(), k, rng);
        worst = std::max(worst, lie_diff(f, lie_diff(f, w)).norm());
      }
      CHECK(worst < 1e-10);
    }
  }

  TEST_CASE("differential matches the tensor definition") {
    Rng rng(6);
    const MetricLieAlgebra a = with_random_metric(free_two_step_3(), rng);
    const AdaptedFrame f = adapted_frame(a);
    const auto c = oracle::frame_brackets(a, f.frame);
    const int n = 6;
    const Form w = random_form(n, 2, rng);
    const Form d = lie_diff(f, w);
    // (dw)(x0,x1,x2) = -w([x0,x1],x2) + w([x0,x2],x1) - w([x1,x2],x0)
    for (const auto& t : oracle::tuples(n, 3)) {
      auto wb = [&](int p, int q, int r) {
        double s = 0.0;
        for (int m = 0; m < n; ++m) s += c[(p * n + q) * n + m] * w.at({m, r});
        return s;
      };
      const double expect = -wb(t[0], t[1], t[2]) + wb(t[0], t[2], t[1]) - wb(t[1], t[2], t[0]);
      CHECK(d.at(t) == doctest::Approx(expect).epsilon(1e-10));
    }
  }

  TEST_CASE("covariant derivative examples") {
    const AdaptedFrame f = adapted_frame(heisenberg(1));
    const Vector e3 = Vector::Unit(3, 2);
    // nabla_{e3} acts on v by -J/2, a rotation: the area form of v is preserved.
    CHECK(nabla_form(f, e3, e(3, {0, 1})).norm() < 1e-14);
    CHECK((nabla_form(f, e3, e(3, {0})) + 0.5 * e(3, {1})).norm() < 1e-14);
    CHECK(nabla_form(f, e3, Form::constant(3, 1.0)).norm() == 0.0);

    const AdaptedFrame g = adapted_frame(build_catalog("R+h3"));
    const Vector a = Vector::Unit(4, g.a_indices[0]);
    Rng rng(7);
    for (int k = 1; k <= 3; ++k) CHECK(nabla_form(g, a, random_form(4, k, rng)).norm() < 1e-14);
  }

  TEST_CASE("covariant derivative matches the tensor oracle") {
    Rng rng(8);
    for (const auto& [label, algebra] : catalog_suite()) {
      CAPTURE(label);
      const MetricLieAlgebra a = with_random_metric(algebra, rng);
      const AdaptedFrame f = adapted_frame(a);
      const int n = f.dim();
      const auto gamma = oracle::christoffel(oracle::frame_brackets(a, f.frame), n);
      const int k = 2;
      const Form w = random_form(n, k, rng);
      const int y = rng.integer(0, n - 1);
      const Form nw = nabla_form(f, Vector::Unit(n, y), w);
      double err = 0.0;
      for (const auto& t : oracle::tuples(n, k)) {
        double expect = 0.0;
        for (int p = 0; p < k; ++p)
          for (int c = 0; c < n; ++c) {
            std::vector<int> idx = t;
            idx[p] = c;
            expect -= gamma[(y * n + t[p]) * n + c] * w.at(idx);
          }
        err = std::max(err, std::abs(nw.at(t) - expect));
      }
      CHECK(err < 1e-10);
    }
  }

  TEST_CASE("covariant derivative is metric") {
    Rng rng(9);
    for (const auto& [label, algebra] : catalog_suite()) {
      CAPTURE(label);
      const AdaptedFrame f = adapted_frame(with_random_metric(algebra, rng));
      double worst = 0.0;
      for (int trial = 0; trial < 100; ++trial) {
        const int k = rng.integer(1, 3);
        const Form a = random_form(f.dim(), k, rng), b = random_form(f.dim(), k, rng);
        const Vector y = rng.gaussian_vector(f.dim());
        worst = std::max(worst, std::abs(inner(nabla_form(f, y, a), b) + inner(a, nabla_form(f, y, b))));
      }
      CHECK(worst < 1e-10);
    }
  }

  TEST_CASE("bigrading") {
    Rng rng(10);
    const AdaptedFrame f = adapted_frame(free_two_step_3());
    const Form w = random_form(6, 3, rng);
    Form sum(6, 3);
    for (int l = 0; l <= 3; ++l) sum += bigrade(f, w, l);
    CHECK((sum - w).norm() < 1e-14);
    CHECK((bigrade(f, e(6, {0, 1, 3}), 2) - e(6, {0, 1, 3})).norm() == 0.0);
    CHECK(bigrade(f, e(6, {0, 1, 3}), 1).norm() == 0.0);
    CHECK(bigrade(f, w, 4).norm() == 0.0);
    CHECK(bigrade(f, w, -1).norm() == 0.0);
  }

  TEST_CASE("pullback") {
    Rng rng(11);
    const Form w = random_form(5, 2, rng);
    CHECK((pullback(w, Matrix::Identity(5, 5)) - w).norm() < 1e-14);
    const Matrix a = rng.gaussian_matrix(5, 5), b = rng.gaussian_matrix(5, 5);
    CHECK((pullback(pullback(w, a), b) - pullback(w, a * b)).norm() < 1e-10);
    // Top degree picks up the determinant.
    const Form vol = e(5, {0, 1, 2, 3, 4});
    CHECK(pullback(vol, a).coeffs()(0) == doctest::Approx(a.determinant()));
  }

  TEST_CASE("2-forms and skew matrices") {
    Rng rng(12);
    const Matrix s = random_skew(5, rng);
    CHECK((two_form_to_skew(skew_to_two_form(s)) - s).norm() < 1e-14);
    const Form w = random_form(5, 2, rng);
    const Matrix m = two_form_to_skew(w);
    // w(e_i, e_j) = <A e_i, e_j>
    CHECK(w.at({1, 3}) == doctest::Approx(m(3, 1)));
  }

  TEST_CASE("normalization") {
    Form w = -3.0 * e(4, {0, 1}) + 4.0 * e(4, {2, 3});
    const Form u = w.normalized();
    CHECK(u.norm() == doctest::Approx(1.0));
    CHECK(u.at({0, 1}) == doctest::Approx(0.6));
  }
}
