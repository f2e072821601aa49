#include "inq/qrel.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "inq/kernels.hpp"

namespace inq {

namespace {

void check_subset(const Algebra& A, const std::vector<int>& S, const char* who) {
  for (const int i : S)
    if (i < 0 || i >= A.factor_count())
      throw std::out_of_range(std::string(who) + ": factor index out of range");
}

bool contains(const std::vector<int>& S, int i) {
  return std::find(S.begin(), S.end(), i) != S.end();
}

std::vector<int> complement(const Algebra& A, const std::vector<int>& S) {
  std::vector<int> out;
  for (int i = 0; i < A.factor_count(); ++i)
    if (!contains(S, i)) out.push_back(i);
  return out;
}

}  // namespace

Projection subset_support(const Algebra& A, const std::vector<int>& S) {
  check_subset(A, S, "subset_support");
  Element e = element_zero(A);
  for (const int i : S)
    e.block[static_cast<std::size_t>(i)] = Mat::Identity(A.dim(i), A.dim(i));
  return Projection{std::move(e)};
}

namespace {

Mat haar_unitary(int n, Rng& rng) {
  Mat z(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) z(r, c) = rng.normal_c();
  Eigen::HouseholderQR<Mat> qr(z);
  Mat q = qr.householderQ();
  const Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int c = 0; c < n; ++c) {
    const cplx d = r(c, c);
    const double ad = std::abs(d);
    q.col(c) *= ad > 0.0 ? d / ad : cplx{1.0, 0.0};
  }
  return q;
}

}  // namespace

Projection random_projection(const Algebra& A, const std::vector<int>& ranks, Rng& rng) {
  if (static_cast<int>(ranks.size()) != A.factor_count())
    throw std::invalid_argument("random_projection: rank vector length mismatch");
  Element e = element_zero(A);
  for (int i = 0; i < A.factor_count(); ++i) {
    const int n = A.dim(i);
    const int r = ranks[static_cast<std::size_t>(i)];
    if (r < 0 || r > n) throw std::out_of_range("random_projection: rank out of range");
    const Mat u = haar_unitary(n, rng);
    Eigen::VectorXcd d = Eigen::VectorXcd::Zero(n);
    for (int t = 0; t < r; ++t) d(t) = 1.0;
    e.block[static_cast<std::size_t>(i)] = u * d.asDiagonal() * u.adjoint();
  }
  return Projection{std::move(e)};
}

Tensor m_p(const Algebra& A, const Projection& p) {
  if (!conforms(A, p.e)) throw std::invalid_argument("m_p: shape mismatch");
  double idem = 0.0;
  for (const auto& b : p.e.block) idem += (b * b - b).squaredNorm();
  if (std::sqrt(idem) > 1e-8)
    throw std::invalid_argument("m_p: idempotence residual above tolerance");
  return tensor(A, p.e, element_identity(A) - p.e);
}

namespace {

// Matrix of mu (or mu_op) from scaled tensor coordinates to element
// coordinates; nullspace vectors come out tau-orthonormal.
Subspace multiplication_kernel(const Algebra& A, bool opposite, TolerancePolicy tol) {
  const int d1 = A.element_dim(), d2 = A.tensor_dim();
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(d1, d2);
  const auto& ws = A.tensor_weight_sqrt();
  for (int i = 0; i < A.factor_count(); ++i) {
    const int n = A.dim(i);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          for (int d = 0; d < n; ++d) {
            const int col = A.tensor_index(i, i, a, b, c, d);
            int row = -1;
            if (!opposite && b == c) row = A.element_offset(i) + a * n + d;
            if (opposite && d == a) row = A.element_offset(i) + c * n + b;
            if (row >= 0)
              M(row, col) += 1.0 / ws[static_cast<std::size_t>(col)];
          }
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M, Eigen::ComputeFullV);
  const Eigen::VectorXd sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  const double cut = std::max(tol.rel * smax, tol.abs);
  bool band = false;
  int rank = 0;
  for (int k = 0; k < sv.size(); ++k) {
    if (sv(k) > cut) ++rank;
    if (sv(k) >= cut / 10.0 && sv(k) <= cut * 10.0) band = true;
  }
  return Subspace::from_scaled(A, tol, svd.matrixV().rightCols(d2 - rank), band);
}

}  // namespace

Subspace kernel_subspace(const Algebra& A, KernelKind which, TolerancePolicy tol) {
  tol.validate();
  switch (which) {
    case KernelKind::Mu: return multiplication_kernel(A, false, tol);
    case KernelKind::MuOp: return multiplication_kernel(A, true, tol);
    default:
      return intersect(multiplication_kernel(A, false, tol),
                       multiplication_kernel(A, true, tol));
  }
}

ProjectionStream::ProjectionStream(const Algebra& A, std::uint64_t seed)
    : A_(A), rng_(seed) {
  const int k = A.factor_count();
  // subset supports 1_S
  if (k <= 12) {
    for (int bits = 0; bits < (1 << k); ++bits) {
      std::vector<int> S;
      for (int i = 0; i < k; ++i)
        if (bits >> i & 1) S.push_back(i);
      core_.push_back(subset_support(A, S));
    }
  }
  // all 0/1 diagonal patterns across factors (covers every rank vector)
  long combos = 1;
  for (int i = 0; i < k && combos <= 4096; ++i) combos <<= A.dim(i);
  if (combos <= 4096) {
    std::vector<int> bits(static_cast<std::size_t>(k), 0);
    while (true) {
      Element e = element_zero(A);
      for (int i = 0; i < k; ++i)
        for (int a = 0; a < A.dim(i); ++a)
          if (bits[static_cast<std::size_t>(i)] >> a & 1)
            e.block[static_cast<std::size_t>(i)](a, a) = 1.0;
      core_.push_back(Projection{std::move(e)});
      int i = 0;
      for (; i < k; ++i) {
        if (++bits[static_cast<std::size_t>(i)] < (1 << A.dim(i))) break;
        bits[static_cast<std::size_t>(i)] = 0;
      }
      if (i == k) break;
    }
  } else {
    // fall back to the leading-rank diagonal per rank vector
    std::vector<int> rk(static_cast<std::size_t>(k), 0);
    long total = 1;
    for (int i = 0; i < k; ++i) total *= A.dim(i) + 1;
    if (total <= 4096) {
      while (true) {
        Element e = element_zero(A);
        for (int i = 0; i < k; ++i)
          for (int a = 0; a < rk[static_cast<std::size_t>(i)]; ++a)
            e.block[static_cast<std::size_t>(i)](a, a) = 1.0;
        core_.push_back(Projection{std::move(e)});
        int i = 0;
        for (; i < k; ++i) {
          if (++rk[static_cast<std::size_t>(i)] <= A.dim(i)) break;
          rk[static_cast<std::size_t>(i)] = 0;
        }
        if (i == k) break;
      }
    }
  }
}

Projection ProjectionStream::next() {
  if (in_core()) return core_[static_cast<std::size_t>(pos_++)];
  ++pos_;
  std::vector<int> ranks(static_cast<std::size_t>(A_.factor_count()));
  for (int i = 0; i < A_.factor_count(); ++i)
    ranks[static_cast<std::size_t>(i)] = rng_.uniform_int(0, A_.dim(i));
  return random_projection(A_, ranks, rng_);
}

SaturationResult saturate(
    const Algebra& A, const ProjectionFamily& family, TolerancePolicy tol,
    const std::function<void(const Projection&, std::vector<Tensor>&)>& emit) {
  tol.validate();
  ProjectionStream stream(A, family.seed);
  SpanBuilder builder(A, tol);
  SaturationResult res{Subspace(A, tol)};
  res.seeds = {family.seed};

  int stall = 0;
  std::vector<Projection> batch;
  std::vector<std::vector<Tensor>> cand;
  while (res.projections_used < family.hard_cap) {
    batch.clear();
    const int want = std::min(family.batch_size, family.hard_cap - res.projections_used);
    for (int t = 0; t < want; ++t) batch.push_back(stream.next());
    if (batch.empty()) break;
    cand.assign(batch.size(), {});
    for (std::size_t t = 0; t < batch.size(); ++t) emit(batch[t], cand[t]);
    bool grew = false;
    for (std::size_t t = 0; t < batch.size(); ++t) {
      const bool was_core =
          res.projections_used + static_cast<int>(t) < stream.core_size();
      for (const Tensor& v : cand[t])
        if (builder.add(v)) grew = true;
      if (was_core) res.core_dim = builder.dim();
    }
    res.projections_used += static_cast<int>(batch.size());
    stall = grew ? 0 : stall + 1;
    if (stall >= family.stall_limit) {
      res.stalled = true;
      break;
    }
  }
  res.space = builder.take(!res.stalled);
  return res;
}

SaturationResult inq_span(const Algebra& A, const ProjectionFamily& family,
                          TolerancePolicy tol) {
  return saturate(A, family, tol, [&A](const Projection& p, std::vector<Tensor>& out) {
    out.push_back(m_p(A, p));
  });
}

namespace {

std::vector<Element> factor_basis(const Algebra& A, int i, bool traceless) {
  std::vector<Element> out;
  const int n = A.dim(i);
  if (traceless) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (a != b) out.push_back(matrix_unit(A, i, a, b));
    for (int c = 0; c + 1 < n; ++c)
      out.push_back(matrix_unit(A, i, c, c) - matrix_unit(A, i, c + 1, c + 1));
  } else {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) out.push_back(matrix_unit(A, i, a, b));
  }
  return out;
}

}  // namespace

Subspace block_subspace(const Algebra& A, int i, int j, bool traceless,
                        BlockPart part, TolerancePolicy tol) {
  if (i < 0 || j < 0 || i >= A.factor_count() || j >= A.factor_count())
    throw std::out_of_range("block_subspace: invalid factor index");
  const auto bi = factor_basis(A, i, traceless);
  const auto bj = factor_basis(A, j, traceless);
  std::vector<Tensor> vecs;
  if (part == BlockPart::Full) {
    for (const auto& x : bi)
      for (const auto& y : bj) vecs.push_back(tensor(A, x, y));
  } else {
    const double sign = part == BlockPart::Sym ? 1.0 : -1.0;
    if (i == j) {
      for (std::size_t r = 0; r < bi.size(); ++r)
        for (std::size_t s = r; s < bj.size(); ++s) {
          const Tensor t = tensor(A, bi[r], bj[s]);
          const Tensor u = tensor(A, bj[s], bi[r]);
          vecs.push_back(t + u * sign);
        }
    } else {
      for (const auto& x : bi)
        for (const auto& y : bj) {
          const Tensor t = tensor(A, x, y);
          const Tensor u = tensor(A, y, x);
          vecs.push_back(t + u * sign);
        }
    }
  }
  return span(A, vecs, tol);
}

Tensor sym_unit(const Algebra& A, const std::vector<int>& S,
                const std::vector<int>& T, int sign) {
  check_subset(A, S, "sym_unit");
  check_subset(A, T, "sym_unit");
  const Element us = subset_support(A, S).e;
  const Element ut = subset_support(A, T).e;
  return tensor(A, us, ut) + tensor(A, ut, us) * cplx{static_cast<double>(sign), 0.0};
}

Tensor io_element(const Algebra& A, int i, int j) {
  if (i == j) throw std::invalid_argument("io_element: factors must differ");
  const int k = A.factor_count();
  if (i < 0 || j < 0 || i >= k || j >= k)
    throw std::out_of_range("io_element: invalid factor index");
  if (k > 20) throw std::invalid_argument("io_element: too many factors (2^k terms)");
  Tensor out = tensor_zero(A);
  for (int bits = 0; bits < (1 << k); ++bits) {
    std::vector<int> S;
    for (int t = 0; t < k; ++t)
      if (bits >> t & 1) S.push_back(t);
    const int hit = (bits >> i & 1) + (bits >> j & 1);
    const double sign = hit == 1 ? 1.0 : -1.0;
    out = out + sym_unit(A, S, complement(A, S), +1) * cplx{sign, 0.0};
  }
  return out;
}

Tensor delta_ps(const Algebra& A, const std::vector<int>& S, const Projection& p) {
  check_subset(A, S, "delta_ps");
  if (!conforms(A, p.e)) throw std::invalid_argument("delta_ps: shape mismatch");
  for (int i = 0; i < A.factor_count(); ++i)
    if (!contains(S, i) && p.e.block[static_cast<std::size_t>(i)].norm() > 1e-12)
      throw std::invalid_argument("delta_ps: projection not supported in S");
  const Element one_s = subset_support(A, S).e;
  const Element one_sc = subset_support(A, complement(A, S)).e;
  return tensor(A, p.e, one_sc) - tensor(A, one_sc, one_s - p.e);
}

}  // namespace inq
