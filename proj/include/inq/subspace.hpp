#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "inq/algebra.hpp"

namespace inq {

/// Rank and comparison thresholds. `rel`/`abs` gate singular values
/// (discard below max(rel*sigma_max, abs)); `angle` is the principal-angle
/// threshold for subspace equality.
struct TolerancePolicy {
  double rel = 1e-9;
  double abs = 1e-12;
  double angle = 1e-7;

  void validate() const;
  bool operator==(const TolerancePolicy&) const = default;
};

enum class Verdict { Equal, LeftInRight, RightInLeft, Incomparable };
std::string to_string(Verdict v);

struct Relation {
  int dim_left = 0;
  int dim_right = 0;
  double angle_left_in_right = 0.0;  // max principal angle of U against W
  double angle_right_in_left = 0.0;
  Verdict verdict = Verdict::Incomparable;
};

/// A linear subspace of A (x) A under <-|->_tau, held as a tau-orthonormal
/// basis of coefficient arrays. Internally the basis also lives in
/// sqrt(weight)-scaled coordinates where the metric is Euclidean.
class Subspace {
 public:
  Subspace(Algebra ambient, TolerancePolicy tol);

  int dim() const { return static_cast<int>(scaled_.cols()); }
  const Algebra& ambient() const { return ambient_; }
  const TolerancePolicy& tol() const { return tol_; }
  /// True when some rank decision fell inside the factor-10 band around the
  /// cutoff; consumers must surface this as INCONCLUSIVE.
  bool inconclusive() const { return inconclusive_; }

  /// tau-orthonormal basis vectors as Tensors.
  std::vector<Tensor> basis() const;
  Tensor basis_vector(int k) const;

  /// Scaled-coordinate orthonormal basis (columns). For module-internal use.
  const Eigen::MatrixXcd& scaled_basis() const { return scaled_; }

  static Subspace from_scaled(Algebra ambient, TolerancePolicy tol,
                              Eigen::MatrixXcd scaled, bool inconclusive);

 private:
  Algebra ambient_;
  TolerancePolicy tol_;
  Eigen::MatrixXcd scaled_;  // tensor_dim x dim, orthonormal columns
  bool inconclusive_ = false;
};

/// Incremental rank-revealing span: Gram-Schmidt with re-orthogonalization,
/// accepting a candidate when its residual exceeds max(rel*|v|, abs).
class SpanBuilder {
 public:
  SpanBuilder(const Algebra& A, TolerancePolicy tol, int capacity_hint = -1);

  bool add(const Tensor& t);
  bool add_scaled(const cplx* data);  // candidate already in scaled coords
  int dim() const { return count_; }
  bool band_hit() const { return band_hit_; }
  /// Committed orthonormal columns (scaled coordinates).
  Eigen::Ref<const Eigen::MatrixXcd> columns() const {
    return basis_.leftCols(count_);
  }
  Subspace take(bool extra_inconclusive = false) const;

 private:
  const Algebra& A_;
  TolerancePolicy tol_;
  Eigen::MatrixXcd basis_;  // preallocated columns
  int count_ = 0;
  bool band_hit_ = false;
  cvec scratch_, coeffs_;
};

Subspace span(const Algebra& A, const std::vector<Tensor>& vectors,
              TolerancePolicy tol);
Subspace sum(const Subspace& U, const Subspace& W);
Subspace intersect(const Subspace& U, const Subspace& W);
Relation relate(const Subspace& U, const Subspace& W);

using TensorMap = std::function<Tensor(const Algebra&, const Tensor&)>;

/// {u in U : J u = sign * u} for an isometric involution J mapping U into U.
/// Throws (reporting the leakage angle) when U is not J-invariant.
Subspace involution_eigenspace(const Subspace& U, const TensorMap& J, int sign);

Tensor project(const Subspace& U, const Tensor& t);
/// Relative distance |t - P_U t| / |t| (0 for t = 0); membership predicate
/// is residual < tol.angle.
double membership_residual(const Subspace& U, const Tensor& t);

}  // namespace inq
