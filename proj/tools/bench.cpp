// Kernel benchmark: serial reference vs OpenMP backend on the hot paths
// (batched inner products, Gram-Schmidt updates, Gram matrices, and an
// end-to-end saturation run). Results must agree bitwise; only time differs.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <vector>

#include "inq/algebra.hpp"
#include "inq/kernels.hpp"
#include "inq/qrel.hpp"
#include "inq/rng.hpp"

using namespace inq;

namespace {

double now_ms() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch()).count();
}

template <typename F>
double time_ms(int reps, F&& body) {
  const double t0 = now_ms();
  for (int r = 0; r < reps; ++r) body();
  return (now_ms() - t0) / reps;
}

void report(const char* name, double serial_ms, double omp_ms) {
  std::printf("%-28s serial %9.3f ms   openmp %9.3f ms   speedup %5.2fx\n", name,
              serial_ms, omp_ms, omp_ms > 0 ? serial_ms / omp_ms : 0.0);
}

}  // namespace

int main(int argc, char** argv) {
  const int n = argc > 1 ? std::atoi(argv[1]) : 600;  // basis size
  const int rows = argc > 2 ? std::atoi(argv[2]) : 625;
  std::printf("kernel benchmark: %d basis vectors of length %d, %d threads (openmp %s)\n\n",
              n, rows, kernels::threads(), kernels::openmp_compiled() ? "on" : "off");

  Rng rng(7);
  std::vector<cplx> B(static_cast<std::size_t>(rows) * n), v(rows), out(n);
  std::vector<double> w(rows);
  for (auto& x : B) x = rng.normal_c();
  for (auto& x : v) x = rng.normal_c();
  for (auto& x : w) x = 0.5 + rng.uniform01();

  const auto bench_pair = [&](const char* name, int reps, auto&& body) {
    kernels::set_backend(kernels::Backend::Serial);
    body();  // warmup
    const double ts = time_ms(reps, body);
    kernels::set_backend(kernels::Backend::OpenMP);
    body();
    const double tp = time_ms(reps, body);
    report(name, ts, tp);
  };

  bench_pair("coefficients", 50, [&] {
    kernels::coefficients(w.data(), B.data(), static_cast<std::size_t>(rows),
                          static_cast<std::size_t>(n), v.data(), out.data());
  });
  bench_pair("subtract_combination", 50, [&] {
    kernels::subtract_combination(v.data(), B.data(), static_cast<std::size_t>(rows),
                                  static_cast<std::size_t>(n), out.data());
  });
  {
    const int m = std::min(n, 128);
    std::vector<cplx> G(static_cast<std::size_t>(m) * m);
    bench_pair("gram (128 vectors)", 10, [&] {
      kernels::gram(w.data(), B.data(), static_cast<std::size_t>(rows),
                    static_cast<std::size_t>(m), G.data());
    });
  }
  {
    const Algebra A = Algebra::make({4});
    ProjectionFamily fam;
    fam.seed = 99;
    bench_pair("inq_span saturation (M_4)", 1, [&] {
      const SaturationResult res = inq_span(A, fam, TolerancePolicy{});
      if (res.space.dim() != 135) std::printf("  !! unexpected dimension %d\n", res.space.dim());
    });
  }
  return 0;
}
