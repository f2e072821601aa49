#include <doctest.h>

#include <cmath>

#include "inq/algebra.hpp"
#include "inq/rng.hpp"

using namespace inq;

namespace {

Element random_element(const Algebra& A, Rng& rng) {
  Element e = element_zero(A);
  for (int i = 0; i < A.factor_count(); ++i)
    for (int a = 0; a < A.dim(i); ++a)
      for (int b = 0; b < A.dim(i); ++b)
        e.block[static_cast<std::size_t>(i)](a, b) = rng.normal_c();
  return e;
}

Tensor random_tensor(const Algebra& A, Rng& rng) {
  Tensor t = tensor_zero(A);
  for (auto& c : t.c) c = rng.normal_c();
  return t;
}

}  // namespace

TEST_SUITE_BEGIN("algebra");

TEST_CASE("make_algebra sizes and defaults") {
  const Algebra A = Algebra::make({2, 3});
  CHECK(A.element_dim() == 13);
  CHECK(A.tensor_dim() == 169);
  CHECK(A.weight(0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(A.weight(1) == doctest::Approx(0.5).epsilon(1e-14));
  double s = 0.0;
  for (int i = 0; i < A.factor_count(); ++i) s += A.weight(i);
  CHECK(std::abs(s - 1.0) < 1e-12);
}

TEST_CASE("make_algebra rejects bad input") {
  CHECK_THROWS_WITH_AS(Algebra::make({}), "make_algebra: empty factor list",
                       std::invalid_argument);
  CHECK_THROWS_AS(Algebra::make({2, 0}), std::invalid_argument);
  CHECK_THROWS_WITH_AS(Algebra::make({2}, std::vector<double>{0.5}),
                       "make_algebra: weights must sum to 1", std::invalid_argument);
  CHECK_THROWS_AS(Algebra::make({2, 2}, std::vector<double>{0.5}), std::invalid_argument);
  CHECK_THROWS_AS(Algebra::make({2, 2}, std::vector<double>{1.5, -0.5}),
                  std::invalid_argument);
}

TEST_CASE("trace values") {
  const Algebra M2 = Algebra::make({2});
  CHECK(trace(M2, matrix_unit(M2, 0, 0, 0)).real() == doctest::Approx(0.5));
  CHECK(trace(M2, element_identity(M2)).real() == doctest::Approx(1.0));
  const Algebra A = Algebra::make({2, 2});
  Element e = element_zero(A);
  e.block[0] = Mat::Identity(2, 2);
  CHECK(trace(A, e).real() == doctest::Approx(0.5));
}

TEST_CASE("inner product examples") {
  const Algebra M2 = Algebra::make({2});
  const Element e12 = matrix_unit(M2, 0, 0, 1);
  const Tensor t = tensor(M2, e12, e12);
  CHECK(inner(M2, t, t).real() == doctest::Approx(0.25));  // tau(e22)^2
  const Tensor ones = tensor(M2, element_identity(M2), element_identity(M2));
  CHECK(inner(M2, ones, ones).real() == doctest::Approx(1.0));
  const Tensor a = tensor(M2, matrix_unit(M2, 0, 0, 0), element_identity(M2));
  const Tensor b = tensor(M2, e12, element_identity(M2));
  CHECK(std::abs(inner(M2, a, b)) < 1e-14);
}

TEST_CASE("inner product is hermitian and positive") {
  const Algebra A = Algebra::make({2, 3});
  Rng rng(11);
  for (int t = 0; t < 20; ++t) {
    const Tensor x = random_tensor(A, rng), y = random_tensor(A, rng);
    CHECK(std::abs(inner(A, x, y) - std::conj(inner(A, y, x))) < 1e-12);
    CHECK(inner(A, x, x).real() > 1e-12);
    CHECK(std::abs(inner(A, x, x).imag()) < 1e-12);
  }
}

TEST_CASE("matrix-unit basis is orthogonal with norm alpha_i/n_i") {
  const Algebra A = Algebra::make({2, 3});
  for (int i = 0; i < A.factor_count(); ++i)
    for (int a = 0; a < A.dim(i); ++a)
      for (int b = 0; b < A.dim(i); ++b) {
        const Element u = matrix_unit(A, i, a, b);
        const cplx n2 = inner_element(A, u, u);
        CHECK(n2.real() == doctest::Approx(A.weight(i) / A.dim(i)).epsilon(1e-13));
      }
  const cplx off = inner_element(A, matrix_unit(A, 0, 0, 1), matrix_unit(A, 1, 0, 1));
  CHECK(std::abs(off) < 1e-14);
}

TEST_CASE("vectorize ordering") {
  const Algebra M2 = Algebra::make({2});
  const Tensor t = tensor(M2, matrix_unit(M2, 0, 0, 0), matrix_unit(M2, 0, 0, 0));
  CHECK(t.c[0] == cplx{1.0, 0.0});
  for (std::size_t k = 1; k < t.c.size(); ++k) CHECK(t.c[k] == cplx{0.0, 0.0});

  const Algebra A = Algebra::make({1, 2});
  CHECK(A.block_offset(0, 0) == 0);
  CHECK(A.block_offset(0, 1) == 1);
  CHECK(A.block_offset(1, 0) == 5);
  CHECK(A.block_offset(1, 1) == 9);
  CHECK(A.tensor_dim() == 25);
}

TEST_CASE("vectorize round trip is exact") {
  const Algebra A = Algebra::make({1, 2});
  Rng rng(3);
  const Tensor t = random_tensor(A, rng);
  const Tensor u = devectorize(A, vectorize(t));
  for (std::size_t k = 0; k < t.c.size(); ++k) CHECK(t.c[k] == u.c[k]);
  CHECK_THROWS_AS(devectorize(A, cvec(7)), std::invalid_argument);
}

TEST_CASE("mu and mu_op on matrix units") {
  const Algebra M2 = Algebra::make({2});
  const Tensor t = tensor(M2, matrix_unit(M2, 0, 0, 1), matrix_unit(M2, 0, 1, 0));
  const Element m = mu(M2, t);
  CHECK((m - matrix_unit(M2, 0, 0, 0)).frobenius() < 1e-14);  // e12 e21 = e11
  const Element mo = mu_op(M2, t);
  CHECK((mo - matrix_unit(M2, 0, 1, 1)).frobenius() < 1e-14);  // e21 e12 = e22
}

TEST_CASE("mu kills cross blocks") {
  const Algebra A = Algebra::make({2, 2});
  Element x = element_zero(A), y = element_zero(A);
  x.block[0](0, 0) = 1.0;
  y.block[1](1, 1) = 1.0;
  const Element m = mu(A, tensor(A, x, y));
  CHECK(m.frobenius() < 1e-14);
}

TEST_CASE("mu of m_p vanishes for projections") {
  const Algebra M3 = Algebra::make({3});
  Element p = element_zero(M3);
  p.block[0](0, 0) = 1.0;
  p.block[0](2, 2) = 1.0;
  const Tensor t = tensor(M3, p, element_identity(M3) - p);
  CHECK(mu(M3, t).frobenius() < 1e-14);
  CHECK(mu_op(M3, t).frobenius() < 1e-14);
}

TEST_CASE("flip is an isometric involution") {
  const Algebra A = Algebra::make({2, 3});
  Rng rng(9);
  const Tensor t = random_tensor(A, rng);
  const Tensor ft = flip(A, t);
  const Tensor fft = flip(A, ft);
  for (std::size_t k = 0; k < t.c.size(); ++k) CHECK(t.c[k] == fft.c[k]);
  CHECK(tensor_norm(A, t) == doctest::Approx(tensor_norm(A, ft)).epsilon(1e-13));

  const Tensor ab = tensor(A, matrix_unit(A, 0, 0, 0), matrix_unit(A, 1, 1, 1));
  const Tensor ba = tensor(A, matrix_unit(A, 1, 1, 1), matrix_unit(A, 0, 0, 0));
  const Tensor d = flip(A, ab) - ba;
  CHECK(tensor_norm(A, d) < 1e-14);
}

TEST_CASE("mu after flip is the opposite multiplication") {
  const Algebra A = Algebra::make({2, 2});
  Rng rng(13);
  for (int t = 0; t < 10; ++t) {
    const Tensor x = random_tensor(A, rng);
    const Element lhs = mu(A, flip(A, x));
    const Element rhs = mu_op(A, x);
    CHECK((lhs - rhs).frobenius() < 1e-12);
  }
}

TEST_CASE("env_mul examples, unit law and associativity") {
  const Algebra M2 = Algebra::make({2});
  const Element one = element_identity(M2);
  const Tensor a = tensor(M2, matrix_unit(M2, 0, 0, 0), one);
  const Tensor b = tensor(M2, matrix_unit(M2, 0, 0, 1), one);
  CHECK(tensor_norm(M2, env_mul(M2, a, b) - b) < 1e-13);  // e11 e12 = e12

  // opposite order on the second leg: (1 ⊗ e12)(1 ⊗ e21) = 1 ⊗ e22
  const Tensor c = tensor(M2, one, matrix_unit(M2, 0, 0, 1));
  const Tensor d = tensor(M2, one, matrix_unit(M2, 0, 1, 0));
  const Tensor expect = tensor(M2, one, matrix_unit(M2, 0, 1, 1));
  CHECK(tensor_norm(M2, env_mul(M2, c, d) - expect) < 1e-13);

  Rng rng(21);
  const Algebra A = Algebra::make({1, 2});
  const Tensor u = tensor(A, element_identity(A), element_identity(A));
  for (int t = 0; t < 8; ++t) {
    const Tensor x = random_tensor(A, rng), y = random_tensor(A, rng), z = random_tensor(A, rng);
    CHECK(tensor_norm(A, env_mul(A, u, x) - x) < 1e-12);
    const Tensor lhs = env_mul(A, env_mul(A, x, y), z);
    const Tensor rhs = env_mul(A, x, env_mul(A, y, z));
    CHECK(tensor_norm(A, lhs - rhs) < 1e-10);
  }
}

TEST_CASE("trace is tracial") {
  const Algebra A = Algebra::make({2, 3});
  Rng rng(17);
  for (int t = 0; t < 10; ++t) {
    const Element x = random_element(A, rng), y = random_element(A, rng);
    CHECK(std::abs(trace(A, x * y) - trace(A, y * x)) < 1e-12);
  }
}

TEST_CASE("partial trace identities") {
  const Algebra Mn = Algebra::make({3});
  const Element one = element_identity(Mn);
  const Element pt = partial_trace(Mn, tensor(Mn, one, one), Side::Right);
  CHECK((pt - one * cplx{3.0, 0.0}).frobenius() < 1e-13);

  // M2, p = e11: (id ⊗ 2 tau)(m_p - flip m_p) = e11 - e22
  const Algebra M2 = Algebra::make({2});
  const Element p = matrix_unit(M2, 0, 0, 0);
  const Tensor mp = tensor(M2, p, element_identity(M2) - p);
  const Tensor anti = mp - flip(M2, mp);
  const Element img = partial_trace(M2, anti, Side::Right);
  const Element expect = matrix_unit(M2, 0, 0, 0) - matrix_unit(M2, 0, 1, 1);
  CHECK((img - expect).frobenius() < 1e-13);
}

TEST_CASE("partial trace matches the trace formula on random projections") {
  // nτ(1-p)p - nτ(p)(1-p) for the antisymmetric combination
  for (const int n : {2, 3}) {
    const Algebra A = Algebra::make({n});
    Rng rng(1000 + n);
    for (int t = 0; t < 100; ++t) {
      Mat z(n, n);
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) z(r, c) = rng.normal_c();
      Eigen::HouseholderQR<Mat> qr(z);
      Mat q = qr.householderQ();
      Eigen::VectorXcd diag = Eigen::VectorXcd::Zero(n);
      const int rank = rng.uniform_int(0, n);
      for (int r = 0; r < rank; ++r) diag(r) = 1.0;
      Element p = element_zero(A);
      p.block[0] = q * diag.asDiagonal() * q.adjoint();
      const Element one = element_identity(A);
      const Tensor mp = tensor(A, p, one - p);
      const Tensor anti = mp - flip(A, mp);
      const double tp = trace(A, p).real();
      const Element formula =
          p * cplx{n * (1.0 - tp), 0.0} - (one - p) * cplx{n * tp, 0.0};
      const Element img = partial_trace(A, anti, Side::Right);
      CHECK((img - formula).frobenius() < 1e-10);
    }
  }
}

TEST_CASE("tensor is bilinear and zero propagates") {
  const Algebra A = Algebra::make({2, 2});
  Rng rng(23);
  const Element b = random_element(A, rng);
  const Tensor z = tensor(A, element_zero(A), b);
  CHECK(tensor_norm(A, z) == 0.0);
}

TEST_CASE("tensor adjoint is an involution compatible with simple tensors") {
  const Algebra A = Algebra::make({2});
  Rng rng(29);
  const Element a = random_element(A, rng), b = random_element(A, rng);
  const Tensor t = tensor(A, a, b);
  const Tensor tadj = tensor_adjoint(A, t);
  const Tensor expect = tensor(A, a.adjoint(), b.adjoint());
  CHECK(tensor_norm(A, tadj - expect) < 1e-12);
  const Tensor back = tensor_adjoint(A, tadj);
  CHECK(tensor_norm(A, back - t) < 1e-14);
}

TEST_CASE("projection validation") {
  const Algebra M2 = Algebra::make({2});
  CHECK_NOTHROW(make_projection(M2, matrix_unit(M2, 0, 0, 0)));
  CHECK_THROWS_AS(make_projection(M2, matrix_unit(M2, 0, 0, 1)), std::invalid_argument);
}

TEST_SUITE_END();
