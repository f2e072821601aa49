#include "inq/subspace.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "inq/kernels.hpp"

namespace inq {

void TolerancePolicy::validate() const {
  if (!(rel > 0.0) || !(abs > 0.0) || !(angle > 0.0))
    throw std::invalid_argument("TolerancePolicy: thresholds must be positive");
  if (rel >= 1e-3)
    throw std::invalid_argument("TolerancePolicy: rel cutoff must be < 1e-3");
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Equal: return "equal";
    case Verdict::LeftInRight: return "left-in-right";
    case Verdict::RightInLeft: return "right-in-left";
    default: return "incomparable";
  }
}

Subspace::Subspace(Algebra ambient, TolerancePolicy tol)
    : ambient_(std::move(ambient)), tol_(tol) {
  tol_.validate();
  scaled_.resize(ambient_.tensor_dim(), 0);
}

Subspace Subspace::from_scaled(Algebra ambient, TolerancePolicy tol,
                               Eigen::MatrixXcd scaled, bool inconclusive) {
  Subspace s(std::move(ambient), tol);
  s.scaled_ = std::move(scaled);
  s.inconclusive_ = inconclusive;
  return s;
}

std::vector<Tensor> Subspace::basis() const {
  std::vector<Tensor> out;
  out.reserve(static_cast<std::size_t>(dim()));
  for (int k = 0; k < dim(); ++k) out.push_back(basis_vector(k));
  return out;
}

Tensor Subspace::basis_vector(int k) const {
  Tensor t = tensor_zero(ambient_);
  const auto& ws = ambient_.tensor_weight_sqrt();
  for (int r = 0; r < ambient_.tensor_dim(); ++r)
    t.c[static_cast<std::size_t>(r)] = scaled_(r, k) / ws[static_cast<std::size_t>(r)];
  return t;
}

SpanBuilder::SpanBuilder(const Algebra& A, TolerancePolicy tol, int capacity_hint)
    : A_(A), tol_(tol) {
  tol_.validate();
  const int cap = capacity_hint > 0 ? std::min(capacity_hint, A.tensor_dim())
                                    : A.tensor_dim();
  basis_.resize(A.tensor_dim(), cap);
  scratch_.resize(static_cast<std::size_t>(A.tensor_dim()));
  coeffs_.resize(static_cast<std::size_t>(cap));
}

bool SpanBuilder::add(const Tensor& t) {
  if (!conforms(A_, t)) throw std::invalid_argument("SpanBuilder::add: shape mismatch");
  const auto& ws = A_.tensor_weight_sqrt();
  for (std::size_t r = 0; r < t.c.size(); ++r) scratch_[r] = t.c[r] * ws[r];
  return add_scaled(scratch_.data());
}

bool SpanBuilder::add_scaled(const cplx* data) {
  const std::size_t n = static_cast<std::size_t>(A_.tensor_dim());
  cplx* v = scratch_.data();
  if (v != data) std::copy(data, data + n, v);
  const double norm0 = kernels::norm(nullptr, v, n);
  if (norm0 <= tol_.abs) return false;
  if (count_ > 0) {
    for (int pass = 0; pass < 2; ++pass) {
      kernels::coefficients(nullptr, basis_.data(), n,
                            static_cast<std::size_t>(count_), v, coeffs_.data());
      kernels::subtract_combination(v, basis_.data(), n,
                                    static_cast<std::size_t>(count_), coeffs_.data());
    }
  }
  const double resid = kernels::norm(nullptr, v, n);
  const double cut = std::max(tol_.rel * norm0, tol_.abs);
  if (resid >= cut / 10.0 && resid <= cut * 10.0) band_hit_ = true;
  if (resid <= cut) return false;
  if (count_ >= basis_.cols()) {
    basis_.conservativeResize(Eigen::NoChange, basis_.cols() * 2);
    coeffs_.resize(static_cast<std::size_t>(basis_.cols()));
  }
  const double inv = 1.0 / resid;
  for (std::size_t r = 0; r < n; ++r) basis_(static_cast<int>(r), count_) = v[r] * inv;
  ++count_;
  return true;
}

Subspace SpanBuilder::take(bool extra_inconclusive) const {
  return Subspace::from_scaled(A_, tol_, basis_.leftCols(count_),
                               band_hit_ || extra_inconclusive);
}

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

// Jacobi throughout: BDC mishandles the exactly-repeated singular values
// these projector-like matrices are full of.
Subspace span_scaled(const Algebra& A, const Eigen::MatrixXcd& M,
                     TolerancePolicy tol) {
  if (M.cols() == 0) return Subspace(A, tol);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M, Eigen::ComputeThinU);
  const auto rc = rank_cut(svd.singularValues(), tol);
  return Subspace::from_scaled(A, tol, svd.matrixU().leftCols(rc.rank), rc.band);
}

// Exact orthonormal basis of the orthogonal complement of the (orthonormal)
// columns of B, from the full unitary of a Householder QR.
Eigen::MatrixXcd ortho_complement(const Eigen::MatrixXcd& B) {
  const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(B);
  const Eigen::MatrixXcd Q = qr.householderQ();
  return Q.rightCols(B.rows() - B.cols());
}

void require_same_ambient(const Subspace& U, const Subspace& W, const char* who) {
  if (!(U.ambient() == W.ambient()) || !(U.tol() == W.tol()))
    throw std::invalid_argument(std::string(who) + ": ambient algebra or tolerance mismatch");
}

}  // namespace

Subspace span(const Algebra& A, const std::vector<Tensor>& vectors,
              TolerancePolicy tol) {
  tol.validate();
  Eigen::MatrixXcd M(A.tensor_dim(), static_cast<int>(vectors.size()));
  const auto& ws = A.tensor_weight_sqrt();
  for (std::size_t k = 0; k < vectors.size(); ++k) {
    if (!conforms(A, vectors[k])) throw std::invalid_argument("span: shape mismatch");
    for (int r = 0; r < A.tensor_dim(); ++r)
      M(r, static_cast<int>(k)) =
          vectors[k].c[static_cast<std::size_t>(r)] * ws[static_cast<std::size_t>(r)];
  }
  return span_scaled(A, M, tol);
}

Subspace sum(const Subspace& U, const Subspace& W) {
  require_same_ambient(U, W, "sum");
  Eigen::MatrixXcd M(U.ambient().tensor_dim(), U.dim() + W.dim());
  M << U.scaled_basis(), W.scaled_basis();
  Subspace s = span_scaled(U.ambient(), M, U.tol());
  if (U.inconclusive() || W.inconclusive())
    s = Subspace::from_scaled(U.ambient(), U.tol(), s.scaled_basis(), true);
  return s;
}

Subspace intersect(const Subspace& U, const Subspace& W) {
  require_same_ambient(U, W, "intersect");
  const int n = U.ambient().tensor_dim();
  const TolerancePolicy& tol = U.tol();
  if (U.dim() == 0 || W.dim() == 0)
    return Subspace(U.ambient(), U.tol());

  bool band = false;
  Eigen::MatrixXcd basis;
  if ((n - U.dim()) + (n - W.dim()) < std::min(U.dim(), W.dim())) {
    // both subspaces nearly fill the ambient: U ∩ W = (U^⊥ + W^⊥)^⊥
    const Eigen::MatrixXcd cu = ortho_complement(U.scaled_basis());
    const Eigen::MatrixXcd cw = ortho_complement(W.scaled_basis());
    Eigen::MatrixXcd S(n, cu.cols() + cw.cols());
    S << cu, cw;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(S, Eigen::ComputeFullU);
    const auto rc = rank_cut(svd.singularValues(), tol);
    band = rc.band;
    basis = svd.matrixU().rightCols(n - rc.rank);
  } else {
    // parametrize the smaller side and kill the other complement projector:
    // x = B c with (I - P) B c = 0; the singular values of (I - P) B are the
    // sines of the principal angles.
    const bool left_small = U.dim() <= W.dim();
    const Eigen::MatrixXcd& B = left_small ? U.scaled_basis() : W.scaled_basis();
    const Eigen::MatrixXcd& P = left_small ? W.scaled_basis() : U.scaled_basis();
    const Eigen::MatrixXcd R = B - P * (P.adjoint() * B);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(R, Eigen::ComputeFullV);
    const Eigen::VectorXd sv = svd.singularValues();
    const double cut =
        std::max(tol.rel * std::max(sv.size() > 0 ? sv(0) : 0.0, 1.0), tol.abs);
    int null_count = 0;
    for (int k = 0; k < sv.size(); ++k) {
      if (sv(k) <= cut) ++null_count;
      if (sv(k) >= cut / 10.0 && sv(k) <= cut * 10.0) band = true;
    }
    basis = B * svd.matrixV().rightCols(null_count);
  }
  return Subspace::from_scaled(U.ambient(), U.tol(), std::move(basis),
                               band || U.inconclusive() || W.inconclusive());
}

namespace {

// sin of the largest principal angle of U measured against W. The largest
// eigenvalue of R*R is cheap and loses at most ~1e-8 of resolution, well
// under the angle tolerances in play.
double max_angle_sin(const Subspace& U, const Subspace& W) {
  if (U.dim() == 0) return 0.0;
  if (W.dim() == 0) return 1.0;
  const Eigen::MatrixXcd R =
      U.scaled_basis() - W.scaled_basis() * (W.scaled_basis().adjoint() * U.scaled_basis());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(R.adjoint() * R,
                                                     Eigen::EigenvaluesOnly);
  const double lmax = es.eigenvalues().size() > 0
                          ? es.eigenvalues()(es.eigenvalues().size() - 1)
                          : 0.0;
  return std::sqrt(std::clamp(lmax, 0.0, 1.0));
}

}  // namespace

Relation relate(const Subspace& U, const Subspace& W) {
  require_same_ambient(U, W, "relate");
  Relation rel;
  rel.dim_left = U.dim();
  rel.dim_right = W.dim();
  rel.angle_left_in_right = std::asin(max_angle_sin(U, W));
  rel.angle_right_in_left = std::asin(max_angle_sin(W, U));
  const bool lr = rel.angle_left_in_right < U.tol().angle;
  const bool rl = rel.angle_right_in_left < U.tol().angle;
  if (lr && rl && rel.dim_left == rel.dim_right) rel.verdict = Verdict::Equal;
  else if (lr) rel.verdict = Verdict::LeftInRight;
  else if (rl) rel.verdict = Verdict::RightInLeft;
  else rel.verdict = Verdict::Incomparable;
  return rel;
}

Subspace involution_eigenspace(const Subspace& U, const TensorMap& J, int sign) {
  if (sign != 1 && sign != -1)
    throw std::invalid_argument("involution_eigenspace: sign must be +1 or -1");
  const Algebra& A = U.ambient();
  const int d = U.dim();
  if (d == 0) return Subspace(A, U.tol());

  Eigen::MatrixXcd JB(A.tensor_dim(), d);
  const auto& ws = A.tensor_weight_sqrt();
  for (int k = 0; k < d; ++k) {
    const Tensor img = J(A, U.basis_vector(k));
    for (int r = 0; r < A.tensor_dim(); ++r)
      JB(r, k) = img.c[static_cast<std::size_t>(r)] * ws[static_cast<std::size_t>(r)];
  }
  // invariance check: J U must stay inside U
  Eigen::MatrixXcd R = JB - U.scaled_basis() * (U.scaled_basis().adjoint() * JB);
  const double leak = R.norm();
  if (leak > U.tol().angle * std::sqrt(static_cast<double>(d)) * 10.0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(R.adjoint() * R,
                                                       Eigen::EigenvaluesOnly);
    const double smax = std::sqrt(std::clamp(es.eigenvalues()(d - 1), 0.0, 1.0));
    throw std::domain_error(
        "involution_eigenspace: subspace is not invariant, max leakage angle " +
        std::to_string(std::asin(smax)));
  }
  Eigen::MatrixXcd M = U.scaled_basis().adjoint() * JB;  // J restricted to U
  M = cplx{0.5, 0.0} * (M + M.adjoint().eval());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(M);
  int count = 0;
  for (int k = 0; k < d; ++k)
    if ((sign > 0) == (es.eigenvalues()(k) > 0.0)) ++count;
  Eigen::MatrixXcd C(d, count);
  int c = 0;
  for (int k = 0; k < d; ++k)
    if ((sign > 0) == (es.eigenvalues()(k) > 0.0)) C.col(c++) = es.eigenvectors().col(k);
  return Subspace::from_scaled(A, U.tol(), U.scaled_basis() * C, U.inconclusive());
}

Tensor project(const Subspace& U, const Tensor& t) {
  const Algebra& A = U.ambient();
  if (!conforms(A, t)) throw std::invalid_argument("project: shape mismatch");
  Tensor out = tensor_zero(A);
  if (U.dim() == 0) return out;
  const std::size_t n = static_cast<std::size_t>(A.tensor_dim());
  const auto& ws = A.tensor_weight_sqrt();
  cvec scaled(n), coeffs(static_cast<std::size_t>(U.dim())), res(n);
  for (std::size_t r = 0; r < n; ++r) scaled[r] = t.c[r] * ws[r];
  kernels::coefficients(nullptr, U.scaled_basis().data(), n,
                        static_cast<std::size_t>(U.dim()), scaled.data(), coeffs.data());
  kernels::combine(res.data(), U.scaled_basis().data(), n,
                   static_cast<std::size_t>(U.dim()), coeffs.data());
  for (std::size_t r = 0; r < n; ++r) out.c[r] = res[r] / ws[r];
  return out;
}

double membership_residual(const Subspace& U, const Tensor& t) {
  const double nt = tensor_norm(U.ambient(), t);
  if (nt == 0.0) return 0.0;
  const Tensor diff = t - project(U, t);
  return tensor_norm(U.ambient(), diff) / nt;
}

}  // namespace inq
