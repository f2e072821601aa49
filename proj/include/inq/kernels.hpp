#pragma once

#include <cstddef>

#include "inq/types.hpp"

namespace inq::kernels {

/// Runtime-selected execution backend. Serial is the reference
/// implementation; OpenMP parallelizes only across independent output slots,
/// so both backends (and any thread count) produce bit-identical results.
enum class Backend { Serial, OpenMP };

Backend backend();
void set_backend(Backend b);

int threads();
/// n <= 0 restores the library default (hardware concurrency).
void set_threads(int n);

bool openmp_compiled();

/// <x|y>_w = sum_k w[k] conj(x[k]) y[k]; w == nullptr means plain Euclidean.
/// Fixed left-to-right summation on every backend.
cplx dot(const double* w, const cplx* x, const cplx* y, std::size_t n);
double norm(const double* w, const cplx* x, std::size_t n);

/// out[k] = <col_k(B)|v>, B column-major rows x cols. Parallel over k.
void coefficients(const double* w, const cplx* B, std::size_t rows,
                  std::size_t cols, const cplx* v, cplx* out);

/// v[r] -= sum_k c[k] B[r + k*rows]. Parallel over r.
void subtract_combination(cplx* v, const cplx* B, std::size_t rows,
                          std::size_t cols, const cplx* c);

/// out[r] = sum_k c[k] B[r + k*rows]. Parallel over r.
void combine(cplx* out, const cplx* B, std::size_t rows, std::size_t cols,
             const cplx* c);

/// G[r + c*m] = <vec_r|vec_c>_w for the m column vectors of V. Parallel over
/// the entry grid; each entry is a single fixed-order dot.
void gram(const double* w, const cplx* V, std::size_t rows, std::size_t m,
          cplx* G);

}  // namespace inq::kernels
