#include "inq/kernels.hpp"

#include <atomic>
#include <thread>

#ifdef INQ_HAVE_OPENMP
#include <omp.h>
#endif

namespace inq::kernels {

namespace {

std::atomic<Backend> g_backend{
#ifdef INQ_HAVE_OPENMP
    Backend::OpenMP
#else
    Backend::Serial
#endif
};

int default_threads() {
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

std::atomic<int> g_threads{0};

bool parallel_active() {
#ifdef INQ_HAVE_OPENMP
  return g_backend.load() == Backend::OpenMP && threads() > 1;
#else
  return false;
#endif
}

// Below this many scalar ops the omp region costs more than it saves. Both
// paths are bit-identical, so the threshold cannot change results.
constexpr std::size_t kMinParallelWork = 1 << 16;

}  // namespace

Backend backend() { return g_backend.load(); }

void set_backend(Backend b) {
#ifndef INQ_HAVE_OPENMP
  b = Backend::Serial;
#endif
  g_backend.store(b);
}

int threads() {
  const int t = g_threads.load();
  return t > 0 ? t : default_threads();
}

void set_threads(int n) { g_threads.store(n); }

bool openmp_compiled() {
#ifdef INQ_HAVE_OPENMP
  return true;
#else
  return false;
#endif
}

cplx dot(const double* w, const cplx* x, const cplx* y, std::size_t n) {
  cplx acc{0.0, 0.0};
  if (w != nullptr) {
    for (std::size_t k = 0; k < n; ++k) acc += w[k] * std::conj(x[k]) * y[k];
  } else {
    for (std::size_t k = 0; k < n; ++k) acc += std::conj(x[k]) * y[k];
  }
  return acc;
}

double norm(const double* w, const cplx* x, std::size_t n) {
  double acc = 0.0;
  if (w != nullptr) {
    for (std::size_t k = 0; k < n; ++k) acc += w[k] * std::norm(x[k]);
  } else {
    for (std::size_t k = 0; k < n; ++k) acc += std::norm(x[k]);
  }
  return std::sqrt(acc);
}

void coefficients(const double* w, const cplx* B, std::size_t rows,
                  std::size_t cols, const cplx* v, cplx* out) {
  if (parallel_active() && rows * cols >= kMinParallelWork) {
#ifdef INQ_HAVE_OPENMP
#pragma omp parallel for schedule(static) num_threads(threads())
    for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(cols); ++k)
      out[k] = dot(w, B + static_cast<std::size_t>(k) * rows, v, rows);
#endif
  } else {
    for (std::size_t k = 0; k < cols; ++k) out[k] = dot(w, B + k * rows, v, rows);
  }
}

namespace {

inline void subtract_row_range(cplx* v, const cplx* B, std::size_t rows,
                               std::size_t cols, const cplx* c,
                               std::size_t r0, std::size_t r1) {
  for (std::size_t k = 0; k < cols; ++k) {
    const cplx ck = c[k];
    const cplx* col = B + k * rows;
    for (std::size_t r = r0; r < r1; ++r) v[r] -= ck * col[r];
  }
}

inline void combine_row_range(cplx* out, const cplx* B, std::size_t rows,
                              std::size_t cols, const cplx* c, std::size_t r0,
                              std::size_t r1) {
  for (std::size_t r = r0; r < r1; ++r) out[r] = cplx{0.0, 0.0};
  for (std::size_t k = 0; k < cols; ++k) {
    const cplx ck = c[k];
    const cplx* col = B + k * rows;
    for (std::size_t r = r0; r < r1; ++r) out[r] += ck * col[r];
  }
}

}  // namespace

void subtract_combination(cplx* v, const cplx* B, std::size_t rows,
                          std::size_t cols, const cplx* c) {
  if (parallel_active() && rows * cols >= kMinParallelWork) {
#ifdef INQ_HAVE_OPENMP
    const int nt = threads();
#pragma omp parallel num_threads(nt)
    {
      const std::size_t t = static_cast<std::size_t>(omp_get_thread_num());
      const std::size_t total = static_cast<std::size_t>(omp_get_num_threads());
      const std::size_t chunk = (rows + total - 1) / total;
      const std::size_t r0 = std::min(rows, t * chunk);
      const std::size_t r1 = std::min(rows, r0 + chunk);
      subtract_row_range(v, B, rows, cols, c, r0, r1);
    }
#endif
  } else {
    subtract_row_range(v, B, rows, cols, c, 0, rows);
  }
}

void combine(cplx* out, const cplx* B, std::size_t rows, std::size_t cols,
             const cplx* c) {
  if (parallel_active() && rows * cols * 2 >= kMinParallelWork) {
#ifdef INQ_HAVE_OPENMP
    const int nt = threads();
#pragma omp parallel num_threads(nt)
    {
      const std::size_t t = static_cast<std::size_t>(omp_get_thread_num());
      const std::size_t total = static_cast<std::size_t>(omp_get_num_threads());
      const std::size_t chunk = (rows + total - 1) / total;
      const std::size_t r0 = std::min(rows, t * chunk);
      const std::size_t r1 = std::min(rows, r0 + chunk);
      combine_row_range(out, B, rows, cols, c, r0, r1);
    }
#endif
  } else {
    combine_row_range(out, B, rows, cols, c, 0, rows);
  }
}

void gram(const double* w, const cplx* V, std::size_t rows, std::size_t m,
          cplx* G) {
  const auto entry = [&](std::size_t idx) {
    const std::size_t r = idx / m;
    const std::size_t c = idx % m;
    if (r > c) return;  // filled by the mirror below
    G[r + c * m] = dot(w, V + r * rows, V + c * rows, rows);
  };
  if (parallel_active() && rows * m * m >= kMinParallelWork) {
#ifdef INQ_HAVE_OPENMP
#pragma omp parallel for schedule(static) num_threads(threads())
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(m * m); ++i)
      entry(static_cast<std::size_t>(i));
#endif
  } else {
    for (std::size_t i = 0; i < m * m; ++i) entry(i);
  }
  for (std::size_t c = 0; c < m; ++c)
    for (std::size_t r = c + 1; r < m; ++r) G[r + c * m] = std::conj(G[c + r * m]);
}

}  // namespace inq::kernels
