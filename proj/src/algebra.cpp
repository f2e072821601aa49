#include "inq/algebra.hpp"

#include <cmath>
#include <stdexcept>

#include "inq/kernels.hpp"

namespace inq {

Algebra Algebra::make(std::vector<int> dims,
                      std::optional<std::vector<double>> weights) {
  if (dims.empty()) throw std::invalid_argument("make_algebra: empty factor list");
  for (const int n : dims)
    if (n < 1) throw std::invalid_argument("make_algebra: factor sizes must be >= 1");
  const auto k = dims.size();

  std::vector<double> w;
  if (weights.has_value()) {
    w = std::move(*weights);
    if (w.size() != k)
      throw std::invalid_argument("make_algebra: weights length mismatch");
    double s = 0.0;
    for (const double a : w) {
      if (!(a > 0.0)) throw std::invalid_argument("make_algebra: weights must be positive");
      s += a;
    }
    if (std::abs(s - 1.0) > 1e-9)
      throw std::invalid_argument("make_algebra: weights must sum to 1");
    for (double& a : w) a /= s;
  } else {
    w.assign(k, 1.0 / static_cast<double>(k));
  }

  Algebra A;
  A.dims_ = std::move(dims);
  A.weights_ = std::move(w);
  A.eoff_.resize(k + 1, 0);
  for (std::size_t i = 0; i < k; ++i)
    A.eoff_[i + 1] = A.eoff_[i] + A.dims_[i] * A.dims_[i];
  A.d1_ = A.eoff_[k];
  A.d2_ = A.d1_ * A.d1_;

  A.boff_.resize(k * k + 1, 0);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      const std::size_t idx = i * k + j;
      A.boff_[idx + 1] = A.boff_[idx] + A.dims_[i] * A.dims_[i] * A.dims_[j] * A.dims_[j];
    }

  A.ew_.resize(static_cast<std::size_t>(A.d1_));
  for (std::size_t i = 0; i < k; ++i) {
    const double wi = A.weights_[i] / A.dims_[i];
    for (int t = 0; t < A.dims_[i] * A.dims_[i]; ++t)
      A.ew_[static_cast<std::size_t>(A.eoff_[i] + t)] = wi;
  }
  A.tw_.resize(static_cast<std::size_t>(A.d2_));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      const double wij = (A.weights_[i] / A.dims_[i]) * (A.weights_[j] / A.dims_[j]);
      const int off = A.boff_[i * k + j];
      const int len = A.dims_[i] * A.dims_[i] * A.dims_[j] * A.dims_[j];
      for (int t = 0; t < len; ++t) A.tw_[static_cast<std::size_t>(off + t)] = wij;
    }
  A.tws_.resize(A.tw_.size());
  for (std::size_t t = 0; t < A.tw_.size(); ++t) A.tws_[t] = std::sqrt(A.tw_[t]);
  return A;
}

// --- Element -----------------------------------------------------------------

namespace {

void check_same_shape(const Element& x, const Element& y, const char* who) {
  if (x.block.size() != y.block.size())
    throw std::invalid_argument(std::string(who) + ": shape mismatch");
  for (std::size_t i = 0; i < x.block.size(); ++i)
    if (x.block[i].rows() != y.block[i].rows())
      throw std::invalid_argument(std::string(who) + ": shape mismatch");
}

}  // namespace

Element Element::operator+(const Element& o) const {
  check_same_shape(*this, o, "Element::+");
  Element r = *this;
  for (std::size_t i = 0; i < block.size(); ++i) r.block[i] += o.block[i];
  return r;
}

Element Element::operator-(const Element& o) const {
  check_same_shape(*this, o, "Element::-");
  Element r = *this;
  for (std::size_t i = 0; i < block.size(); ++i) r.block[i] -= o.block[i];
  return r;
}

Element Element::operator*(const Element& o) const {
  check_same_shape(*this, o, "Element::*");
  Element r = *this;
  for (std::size_t i = 0; i < block.size(); ++i) r.block[i] = block[i] * o.block[i];
  return r;
}

Element Element::operator*(cplx s) const {
  Element r = *this;
  for (auto& b : r.block) b *= s;
  return r;
}

Element Element::adjoint() const {
  Element r = *this;
  for (auto& b : r.block) b = b.adjoint().eval();
  return r;
}

double Element::frobenius() const {
  double s = 0.0;
  for (const auto& b : block) s += b.squaredNorm();
  return std::sqrt(s);
}

Tensor Tensor::operator+(const Tensor& o) const {
  Tensor r = *this;
  for (std::size_t i = 0; i < c.size(); ++i) r.c[i] += o.c[i];
  return r;
}

Tensor Tensor::operator-(const Tensor& o) const {
  Tensor r = *this;
  for (std::size_t i = 0; i < c.size(); ++i) r.c[i] -= o.c[i];
  return r;
}

Tensor Tensor::operator*(cplx s) const {
  Tensor r = *this;
  for (auto& v : r.c) v *= s;
  return r;
}

Element element_zero(const Algebra& A) {
  Element e;
  e.block.reserve(static_cast<std::size_t>(A.factor_count()));
  for (int i = 0; i < A.factor_count(); ++i)
    e.block.push_back(Mat::Zero(A.dim(i), A.dim(i)));
  return e;
}

Element element_identity(const Algebra& A) {
  Element e;
  e.block.reserve(static_cast<std::size_t>(A.factor_count()));
  for (int i = 0; i < A.factor_count(); ++i)
    e.block.push_back(Mat::Identity(A.dim(i), A.dim(i)));
  return e;
}

Element matrix_unit(const Algebra& A, int i, int a, int b) {
  if (i < 0 || i >= A.factor_count() || a < 0 || b < 0 || a >= A.dim(i) || b >= A.dim(i))
    throw std::out_of_range("matrix_unit: index out of range");
  Element e = element_zero(A);
  e.block[static_cast<std::size_t>(i)](a, b) = 1.0;
  return e;
}

Tensor tensor_zero(const Algebra& A) {
  Tensor t;
  t.c.assign(static_cast<std::size_t>(A.tensor_dim()), cplx{0.0, 0.0});
  return t;
}

Projection make_projection(const Algebra& A, const Element& e, double tol) {
  if (!conforms(A, e)) throw std::invalid_argument("make_projection: shape mismatch");
  double idem = 0.0, sadj = 0.0;
  for (const auto& b : e.block) {
    idem += (b * b - b).squaredNorm();
    sadj += (b.adjoint() - b).squaredNorm();
  }
  if (std::sqrt(idem) > tol || std::sqrt(sadj) > tol)
    throw std::invalid_argument("make_projection: not a projection within tolerance");
  return Projection{e};
}

bool conforms(const Algebra& A, const Element& x) {
  if (static_cast<int>(x.block.size()) != A.factor_count()) return false;
  for (int i = 0; i < A.factor_count(); ++i) {
    const auto& b = x.block[static_cast<std::size_t>(i)];
    if (b.rows() != A.dim(i) || b.cols() != A.dim(i)) return false;
  }
  return true;
}

bool conforms(const Algebra& A, const Tensor& t) {
  return static_cast<int>(t.c.size()) == A.tensor_dim();
}

cplx trace(const Algebra& A, const Element& x) {
  if (!conforms(A, x)) throw std::invalid_argument("trace: shape mismatch");
  cplx s{0.0, 0.0};
  for (int i = 0; i < A.factor_count(); ++i)
    s += A.weight(i) * x.block[static_cast<std::size_t>(i)].trace() / static_cast<double>(A.dim(i));
  return s;
}

cplx inner_element(const Algebra& A, const Element& x, const Element& y) {
  return trace(A, x.adjoint() * y);
}

cvec vectorize_element(const Algebra& A, const Element& x) {
  if (!conforms(A, x)) throw std::invalid_argument("vectorize_element: shape mismatch");
  cvec v(static_cast<std::size_t>(A.element_dim()));
  for (int i = 0; i < A.factor_count(); ++i) {
    const auto& b = x.block[static_cast<std::size_t>(i)];
    const int n = A.dim(i);
    for (int a = 0; a < n; ++a)
      for (int bb = 0; bb < n; ++bb)
        v[static_cast<std::size_t>(A.element_offset(i) + a * n + bb)] = b(a, bb);
  }
  return v;
}

Element devectorize_element(const Algebra& A, std::span<const cplx> v) {
  if (static_cast<int>(v.size()) != A.element_dim())
    throw std::invalid_argument("devectorize_element: wrong length");
  Element e = element_zero(A);
  for (int i = 0; i < A.factor_count(); ++i) {
    const int n = A.dim(i);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        e.block[static_cast<std::size_t>(i)](a, b) =
            v[static_cast<std::size_t>(A.element_offset(i) + a * n + b)];
  }
  return e;
}

// --- tensors -------------------------------------------------------------------

Tensor tensor(const Algebra& A, const Element& a, const Element& b) {
  if (!conforms(A, a) || !conforms(A, b))
    throw std::invalid_argument("tensor: shape mismatch");
  Tensor t = tensor_zero(A);
  for (int i = 0; i < A.factor_count(); ++i) {
    const auto& x = a.block[static_cast<std::size_t>(i)];
    if (x.isZero(0.0)) continue;
    const int ni = A.dim(i);
    for (int j = 0; j < A.factor_count(); ++j) {
      const auto& y = b.block[static_cast<std::size_t>(j)];
      if (y.isZero(0.0)) continue;
      const int nj = A.dim(j);
      cplx* blk = t.c.data() + A.block_offset(i, j);
      for (int aa = 0; aa < ni; ++aa)
        for (int bb = 0; bb < ni; ++bb) {
          const cplx xv = x(aa, bb);
          if (xv == cplx{0.0, 0.0}) continue;
          cplx* row = blk + (aa * ni + bb) * nj * nj;
          for (int cc = 0; cc < nj; ++cc)
            for (int dd = 0; dd < nj; ++dd) row[cc * nj + dd] += xv * y(cc, dd);
        }
    }
  }
  return t;
}

cplx inner(const Algebra& A, const Tensor& x, const Tensor& y) {
  if (!conforms(A, x) || !conforms(A, y))
    throw std::invalid_argument("inner: shape mismatch");
  return kernels::dot(A.tensor_weight().data(), x.c.data(), y.c.data(), x.c.size());
}

double tensor_norm(const Algebra& A, const Tensor& t) {
  return kernels::norm(A.tensor_weight().data(), t.c.data(), t.c.size());
}

Element mu(const Algebra& A, const Tensor& t) {
  if (!conforms(A, t)) throw std::invalid_argument("mu: shape mismatch");
  Element out = element_zero(A);
  for (int i = 0; i < A.factor_count(); ++i) {
    const int n = A.dim(i);
    const cplx* blk = t.c.data() + A.block_offset(i, i);
    auto& o = out.block[static_cast<std::size_t>(i)];
    // mu(E_ab (x) E_cd) = [b==c] E_ad
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int d = 0; d < n; ++d)
          o(a, d) += blk[((a * n + b) * n + b) * n + d];
  }
  return out;
}

Element mu_op(const Algebra& A, const Tensor& t) {
  if (!conforms(A, t)) throw std::invalid_argument("mu_op: shape mismatch");
  Element out = element_zero(A);
  for (int i = 0; i < A.factor_count(); ++i) {
    const int n = A.dim(i);
    const cplx* blk = t.c.data() + A.block_offset(i, i);
    auto& o = out.block[static_cast<std::size_t>(i)];
    // mu_op(E_ab (x) E_cd) = [d==a] E_cb
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          o(c, b) += blk[((a * n + b) * n + c) * n + a];
  }
  return out;
}

Tensor flip(const Algebra& A, const Tensor& t) {
  if (!conforms(A, t)) throw std::invalid_argument("flip: shape mismatch");
  Tensor out = tensor_zero(A);
  for (int i = 0; i < A.factor_count(); ++i) {
    const int ni = A.dim(i);
    for (int j = 0; j < A.factor_count(); ++j) {
      const int nj = A.dim(j);
      const cplx* src = t.c.data() + A.block_offset(i, j);
      cplx* dst = out.c.data() + A.block_offset(j, i);
      for (int a = 0; a < ni; ++a)
        for (int b = 0; b < ni; ++b)
          for (int c = 0; c < nj; ++c)
            for (int d = 0; d < nj; ++d)
              dst[((c * nj + d) * ni + a) * ni + b] = src[((a * ni + b) * nj + c) * nj + d];
    }
  }
  return out;
}

// O[(a,d),(b,c)] = t[(a,b,c,d)].
Mat block_operator(const Algebra& A, const Tensor& t, int i, int j) {
  const int ni = A.dim(i), nj = A.dim(j);
  Mat O(ni * nj, ni * nj);
  const cplx* blk = t.c.data() + A.block_offset(i, j);
  for (int a = 0; a < ni; ++a)
    for (int b = 0; b < ni; ++b)
      for (int c = 0; c < nj; ++c)
        for (int d = 0; d < nj; ++d)
          O(a * nj + d, b * nj + c) = blk[((a * ni + b) * nj + c) * nj + d];
  return O;
}

void set_block_from_operator(const Algebra& A, const Mat& O, int i, int j, Tensor& t) {
  const int ni = A.dim(i), nj = A.dim(j);
  cplx* blk = t.c.data() + A.block_offset(i, j);
  for (int a = 0; a < ni; ++a)
    for (int b = 0; b < ni; ++b)
      for (int c = 0; c < nj; ++c)
        for (int d = 0; d < nj; ++d)
          blk[((a * ni + b) * nj + c) * nj + d] = O(a * nj + d, b * nj + c);
}

Tensor env_mul(const Algebra& A, const Tensor& s, const Tensor& t) {
  if (!conforms(A, s) || !conforms(A, t))
    throw std::invalid_argument("env_mul: shape mismatch");
  Tensor out = tensor_zero(A);
  for (int i = 0; i < A.factor_count(); ++i)
    for (int j = 0; j < A.factor_count(); ++j) {
      const Mat O = block_operator(A, s, i, j) * block_operator(A, t, i, j);
      set_block_from_operator(A, O, i, j, out);
    }
  return out;
}

Element partial_trace(const Algebra& A, const Tensor& t, Side side) {
  if (!conforms(A, t)) throw std::invalid_argument("partial_trace: shape mismatch");
  Element out = element_zero(A);
  for (int i = 0; i < A.factor_count(); ++i) {
    const int ni = A.dim(i);
    for (int j = 0; j < A.factor_count(); ++j) {
      const int nj = A.dim(j);
      const cplx* blk = t.c.data() + A.block_offset(i, j);
      if (side == Side::Right) {
        auto& o = out.block[static_cast<std::size_t>(i)];
        for (int a = 0; a < ni; ++a)
          for (int b = 0; b < ni; ++b)
            for (int c = 0; c < nj; ++c)
              o(a, b) += blk[((a * ni + b) * nj + c) * nj + c];
      } else {
        auto& o = out.block[static_cast<std::size_t>(j)];
        for (int a = 0; a < ni; ++a)
          for (int c = 0; c < nj; ++c)
            for (int d = 0; d < nj; ++d)
              o(c, d) += blk[((a * ni + a) * nj + c) * nj + d];
      }
    }
  }
  return out;
}

Tensor tensor_adjoint(const Algebra& A, const Tensor& t) {
  if (!conforms(A, t)) throw std::invalid_argument("tensor_adjoint: shape mismatch");
  Tensor out = tensor_zero(A);
  for (int i = 0; i < A.factor_count(); ++i) {
    const int ni = A.dim(i);
    for (int j = 0; j < A.factor_count(); ++j) {
      const int nj = A.dim(j);
      const cplx* src = t.c.data() + A.block_offset(i, j);
      cplx* dst = out.c.data() + A.block_offset(i, j);
      for (int a = 0; a < ni; ++a)
        for (int b = 0; b < ni; ++b)
          for (int c = 0; c < nj; ++c)
            for (int d = 0; d < nj; ++d)
              dst[((a * ni + b) * nj + c) * nj + d] =
                  std::conj(src[((b * ni + a) * nj + d) * nj + c]);
    }
  }
  return out;
}

cvec vectorize(const Tensor& t) { return t.c; }

Tensor devectorize(const Algebra& A, std::span<const cplx> v) {
  if (static_cast<int>(v.size()) != A.tensor_dim())
    throw std::invalid_argument("devectorize: wrong length");
  Tensor t;
  t.c.assign(v.begin(), v.end());
  return t;
}

}  // namespace inq
