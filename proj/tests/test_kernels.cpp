#include <doctest.h>

#include <cstring>
#include <vector>

#include "inq/kernels.hpp"
#include "inq/rng.hpp"

using namespace inq;

namespace {

struct BackendGuard {
  kernels::Backend saved = kernels::backend();
  int saved_threads = kernels::threads();
  ~BackendGuard() {
    kernels::set_backend(saved);
    kernels::set_threads(saved_threads);
  }
};

}  // namespace

TEST_SUITE_BEGIN("kernels");

// The OpenMP backend must be a drop-in for the serial reference: identical
// bits, not just identical up to rounding.
TEST_CASE("backends agree bitwise") {
  BackendGuard guard;
  Rng rng(1234);
  const std::size_t rows = 403, cols = 57;
  std::vector<cplx> B(rows * cols), v(rows), v2(rows);
  std::vector<cplx> c1(cols), c2(cols), g1(cols * cols), g2(cols * cols);
  std::vector<double> w(rows);
  for (auto& x : B) x = rng.normal_c();
  for (auto& x : v) x = rng.normal_c();
  for (auto& x : w) x = 0.1 + rng.uniform01();
  v2 = v;

  kernels::set_backend(kernels::Backend::Serial);
  kernels::coefficients(w.data(), B.data(), rows, cols, v.data(), c1.data());
  kernels::subtract_combination(v.data(), B.data(), rows, cols, c1.data());
  kernels::gram(w.data(), B.data(), rows, cols, g1.data());

  kernels::set_backend(kernels::Backend::OpenMP);
  kernels::set_threads(4);
  kernels::coefficients(w.data(), B.data(), rows, cols, v2.data(), c2.data());
  kernels::subtract_combination(v2.data(), B.data(), rows, cols, c2.data());
  kernels::gram(w.data(), B.data(), rows, cols, g2.data());

  CHECK(std::memcmp(c1.data(), c2.data(), cols * sizeof(cplx)) == 0);
  CHECK(std::memcmp(v.data(), v2.data(), rows * sizeof(cplx)) == 0);
  CHECK(std::memcmp(g1.data(), g2.data(), cols * cols * sizeof(cplx)) == 0);
}

TEST_CASE("thread count does not change results") {
  BackendGuard guard;
  Rng rng(77);
  const std::size_t rows = 211, cols = 19;
  std::vector<cplx> B(rows * cols), v(rows);
  for (auto& x : B) x = rng.normal_c();
  for (auto& x : v) x = rng.normal_c();
  kernels::set_backend(kernels::Backend::OpenMP);

  std::vector<cplx> ref(cols);
  kernels::set_threads(1);
  kernels::coefficients(nullptr, B.data(), rows, cols, v.data(), ref.data());
  for (int t : {2, 3, 8}) {
    std::vector<cplx> out(cols);
    kernels::set_threads(t);
    kernels::coefficients(nullptr, B.data(), rows, cols, v.data(), out.data());
    CHECK(std::memcmp(ref.data(), out.data(), cols * sizeof(cplx)) == 0);
  }
}

TEST_CASE("dot is conjugate-linear in the first argument") {
  Rng rng(5);
  std::vector<cplx> x(64), y(64);
  for (auto& t : x) t = rng.normal_c();
  for (auto& t : y) t = rng.normal_c();
  const cplx a = kernels::dot(nullptr, x.data(), y.data(), x.size());
  const cplx b = kernels::dot(nullptr, y.data(), x.data(), x.size());
  CHECK(std::abs(a - std::conj(b)) < 1e-12);
}

TEST_CASE("gram of random vectors is hermitian") {
  Rng rng(6);
  const std::size_t rows = 50, m = 9;
  std::vector<cplx> V(rows * m), G(m * m);
  std::vector<double> w(rows, 0.25);
  for (auto& t : V) t = rng.normal_c();
  kernels::gram(w.data(), V.data(), rows, m, G.data());
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < m; ++c)
      CHECK(std::abs(G[r + c * m] - std::conj(G[c + r * m])) < 1e-12);
}

TEST_CASE("same rng seed reproduces the stream") {
  Rng a(42), b(42);
  for (int t = 0; t < 100; ++t) {
    CHECK(a.next_u64() == b.next_u64());
  }
  Rng c(42), d(42);
  for (int t = 0; t < 50; ++t) {
    CHECK(c.normal() == d.normal());
    CHECK(c.uniform_int(0, 5) == d.uniform_int(0, 5));
  }
}

TEST_SUITE_END();
