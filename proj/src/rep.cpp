#include "inq/rep.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "inq/kernels.hpp"

namespace inq {

DerivationSet::DerivationSet(Algebra A) : A_(std::move(A)) {
  for (int f = 0; f < A_.factor_count(); ++f)
    for (int u = 0; u < A_.dim(f); ++u)
      for (int v = 0; v < A_.dim(f); ++v) gens_.push_back({f, u, v});
}

std::vector<Derivation> DerivationSet::raising() const {
  std::vector<Derivation> out;
  for (int f = 0; f < A_.factor_count(); ++f)
    for (int c = 0; c + 1 < A_.dim(f); ++c) out.push_back({f, c, c + 1});
  return out;
}

std::vector<Derivation> DerivationSet::lowering() const {
  std::vector<Derivation> out;
  for (int f = 0; f < A_.factor_count(); ++f)
    for (int c = 0; c + 1 < A_.dim(f); ++c) out.push_back({f, c + 1, c});
  return out;
}

std::vector<Derivation> DerivationSet::torus() const {
  std::vector<Derivation> out;
  for (int f = 0; f < A_.factor_count(); ++f)
    for (int c = 0; c < A_.dim(f); ++c) out.push_back({f, c, c});
  return out;
}

void DerivationSet::apply(const Derivation& d, const cplx* in, cplx* out) const {
  const int f = d.factor, u = d.row, v = d.col;
  std::fill(out, out + A_.tensor_dim(), cplx{0.0, 0.0});
  for (int i = 0; i < A_.factor_count(); ++i) {
    const int ni = A_.dim(i);
    for (int j = 0; j < A_.factor_count(); ++j) {
      const int nj = A_.dim(j);
      if (i != f && j != f) continue;
      const cplx* src = in + A_.block_offset(i, j);
      cplx* dst = out + A_.block_offset(i, j);
      const auto at = [&](int a, int b, int c, int cc) {
        return src[((a * ni + b) * nj + c) * nj + cc];
      };
      for (int a = 0; a < ni; ++a)
        for (int b = 0; b < ni; ++b)
          for (int c = 0; c < nj; ++c)
            for (int dd = 0; dd < nj; ++dd) {
              cplx acc{0.0, 0.0};
              // [E_uv, .] on the left leg
              if (i == f) {
                if (a == u) acc += at(v, b, c, dd);
                if (b == v) acc -= at(a, u, c, dd);
              }
              // and on the right leg
              if (j == f) {
                if (c == u) acc += at(a, b, v, dd);
                if (dd == v) acc -= at(a, b, c, u);
              }
              dst[((a * ni + b) * nj + c) * nj + dd] = acc;
            }
    }
  }
}

Tensor DerivationSet::apply(const Derivation& d, const Tensor& t) const {
  if (!conforms(A_, t)) throw std::invalid_argument("DerivationSet::apply: shape mismatch");
  Tensor out = tensor_zero(A_);
  apply(d, t.c.data(), out.c.data());
  return out;
}

DerivationSet derivation_ops(const Algebra& A) { return DerivationSet(A); }

namespace {

struct RankCut {
  int rank = 0;
  bool band = false;
};

RankCut rank_cut(const Eigen::VectorXd& sv, const TolerancePolicy& tol) {
  RankCut rc;
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  const double cut = std::max(tol.rel * smax, tol.abs);
  for (int k = 0; k < sv.size(); ++k) {
    if (sv(k) > cut) ++rc.rank;
    if (sv(k) >= cut / 10.0 && sv(k) <= cut * 10.0) rc.band = true;
  }
  return rc;
}

// Scaled image columns of the derivation on a scaled basis.
Eigen::MatrixXcd derivation_image(const DerivationSet& ds, const Derivation& d,
                                  const Eigen::MatrixXcd& scaled_basis) {
  const Algebra& A = ds.algebra();
  const int n = A.tensor_dim();
  const auto& ws = A.tensor_weight_sqrt();
  Eigen::MatrixXcd out(n, scaled_basis.cols());
  cvec in(static_cast<std::size_t>(n)), img(static_cast<std::size_t>(n));
  for (int k = 0; k < scaled_basis.cols(); ++k) {
    for (int r = 0; r < n; ++r)
      in[static_cast<std::size_t>(r)] = scaled_basis(r, k) / ws[static_cast<std::size_t>(r)];
    ds.apply(d, in.data(), img.data());
    for (int r = 0; r < n; ++r)
      out(r, k) = img[static_cast<std::size_t>(r)] * ws[static_cast<std::size_t>(r)];
  }
  return out;
}

}  // namespace

Subspace invariant_subspace(const Algebra& A, TolerancePolicy tol) {
  tol.validate();
  const DerivationSet ds(A);
  // Torus generators are diagonal: pre-select the weight-zero coordinates.
  std::vector<int> idxs;
  for (int i = 0; i < A.factor_count(); ++i) {
    const int ni = A.dim(i);
    for (int j = 0; j < A.factor_count(); ++j) {
      const int nj = A.dim(j);
      for (int a = 0; a < ni; ++a)
        for (int b = 0; b < ni; ++b)
          for (int c = 0; c < nj; ++c)
            for (int d = 0; d < nj; ++d) {
              bool zero = true;
              for (int f = 0; f < A.factor_count() && zero; ++f)
                for (int cc = 0; cc < A.dim(f); ++cc) {
                  const int w = (i == f ? (a == cc) - (b == cc) : 0) +
                                (j == f ? (c == cc) - (d == cc) : 0);
                  if (w != 0) { zero = false; break; }
                }
              if (zero) idxs.push_back(A.tensor_index(i, j, a, b, c, d));
            }
    }
  }
  Eigen::MatrixXcd basis = Eigen::MatrixXcd::Zero(A.tensor_dim(), static_cast<int>(idxs.size()));
  for (std::size_t k = 0; k < idxs.size(); ++k) basis(idxs[k], static_cast<int>(k)) = 1.0;

  bool band = false;
  for (const Derivation& d : ds.all()) {
    if (d.row == d.col) continue;
    if (basis.cols() == 0) break;
    const Eigen::MatrixXcd Y = derivation_image(ds, d, basis);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(Y, Eigen::ComputeFullV);
    const auto rc = rank_cut(svd.singularValues(), tol);
    band = band || rc.band;
    basis = basis * svd.matrixV().rightCols(basis.cols() - rc.rank);
  }
  return Subspace::from_scaled(A, tol, std::move(basis), band);
}

Tensor haar_average(const Algebra& A, const Tensor& t, TolerancePolicy tol) {
  return project(invariant_subspace(A, tol), t);
}

Subspace orbit_span(const Algebra& A, const Tensor& v, TolerancePolicy tol) {
  tol.validate();
  if (tensor_norm(A, v) == 0.0)
    throw std::invalid_argument("orbit_span: zero vector");
  const DerivationSet ds(A);
  SpanBuilder builder(A, tol);
  builder.add(v);
  const int n = A.tensor_dim();
  const auto& ws = A.tensor_weight_sqrt();
  while (true) {
    const int before = builder.dim();
    for (const Derivation& d : ds.all()) {
      const Eigen::MatrixXcd snap = builder.columns();
      // images of the snapshot basis under this generator, in a fixed order
      std::vector<cvec> img(static_cast<std::size_t>(snap.cols()),
                            cvec(static_cast<std::size_t>(n)));
      cvec in(static_cast<std::size_t>(n));
      for (std::size_t k = 0; k < img.size(); ++k) {
        for (int r = 0; r < n; ++r)
          in[static_cast<std::size_t>(r)] =
              snap(r, static_cast<int>(k)) / ws[static_cast<std::size_t>(r)];
        ds.apply(d, in.data(), img[k].data());
      }
      for (auto& x : img) {
        for (int r = 0; r < n; ++r) x[static_cast<std::size_t>(r)] *= ws[static_cast<std::size_t>(r)];
        builder.add_scaled(x.data());
      }
    }
    if (builder.dim() == before) break;
  }
  return builder.take();
}

std::optional<Weight> weight_of(const Algebra& A, const Tensor& v) {
  const double nv = tensor_norm(A, v);
  if (nv == 0.0) throw std::invalid_argument("weight_of: zero vector");
  const DerivationSet ds(A);
  Weight w;
  w.exponents.resize(static_cast<std::size_t>(A.factor_count()));
  for (int f = 0; f < A.factor_count(); ++f) {
    auto& tuple = w.exponents[static_cast<std::size_t>(f)];
    tuple.resize(static_cast<std::size_t>(A.dim(f)));
    for (int c = 0; c < A.dim(f); ++c) {
      const Tensor img = ds.apply({f, c, c}, v);
      const cplx lam = inner(A, v, img) / cplx{nv * nv, 0.0};
      const double lr = std::round(lam.real());
      if (std::abs(lam.imag()) > 1e-9 || std::abs(lam.real() - lr) > 1e-9)
        return std::nullopt;
      const Tensor resid = img - v * cplx{lr, 0.0};
      if (tensor_norm(A, resid) > 1e-9 * nv) return std::nullopt;
      tuple[static_cast<std::size_t>(c)] = static_cast<long>(lr);
    }
  }
  return w;
}

bool is_highest_weight(const Algebra& A, const Tensor& v) {
  if (!weight_of(A, v).has_value())
    throw std::invalid_argument("is_highest_weight: not a weight vector");
  const DerivationSet ds(A);
  const double nv = tensor_norm(A, v);
  for (const Derivation& d : ds.raising()) {
    const Tensor img = ds.apply(d, v);
    if (tensor_norm(A, img) > 1e-9 * nv) return false;
  }
  return true;
}

long weyl_dim(const std::vector<long>& lambda, int n) {
  if (static_cast<int>(lambda.size()) != n)
    throw std::invalid_argument("weyl_dim: length mismatch");
  for (int i = 0; i + 1 < n; ++i)
    if (lambda[static_cast<std::size_t>(i)] < lambda[static_cast<std::size_t>(i + 1)])
      throw std::invalid_argument("weyl_dim: weight must be weakly decreasing");
  long long num = 1, den = 1;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      num *= lambda[static_cast<std::size_t>(i)] - lambda[static_cast<std::size_t>(j)] + j - i;
      den *= j - i;
      const long long g = std::gcd(num, den);
      num /= g;
      den /= g;
    }
  return static_cast<long>(num / den);
}

}  // namespace inq
