#pragma once

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <vector>

#include "inq/types.hpp"

namespace inq {

using Mat = Eigen::MatrixXcd;

/// A finite multi-matrix algebra prod_i M_{n_i} carrying the tracial state
/// tau = sum_i alpha_i tau_i (tau_i the normalized trace of the i-th factor).
/// Holds the canonical vectorization layout shared by every other module:
/// element coordinates run factor by factor, row-major inside a factor;
/// tensor coordinates run over blocks (i,j) in lexicographic order, inside a
/// block lexicographic (a,b,c,d), zero-based, row-major.
class Algebra {
 public:
  static Algebra make(std::vector<int> dims,
                      std::optional<std::vector<double>> weights = std::nullopt);

  int factor_count() const { return static_cast<int>(dims_.size()); }
  const std::vector<int>& dims() const { return dims_; }
  const std::vector<double>& weights() const { return weights_; }
  int dim(int i) const { return dims_[static_cast<std::size_t>(i)]; }
  double weight(int i) const { return weights_[static_cast<std::size_t>(i)]; }

  int element_dim() const { return d1_; }  // D1 = sum n_i^2
  int tensor_dim() const { return d2_; }   // D2 = D1^2

  int element_offset(int i) const { return eoff_[static_cast<std::size_t>(i)]; }
  int block_offset(int i, int j) const {
    return boff_[static_cast<std::size_t>(i * factor_count() + j)];
  }
  int block_size(int i, int j) const {
    return dim(i) * dim(i) * dim(j) * dim(j);
  }
  int tensor_index(int i, int j, int a, int b, int c, int d) const {
    const int nj = dim(j);
    return block_offset(i, j) + ((a * dim(i) + b) * nj + c) * nj + d;
  }

  /// Per-coordinate metric of <x|y>_tau on elements: alpha_i / n_i.
  const std::vector<double>& element_weight() const { return ew_; }
  /// Per-coordinate metric on tensor coefficients: (alpha_i/n_i)(alpha_j/n_j).
  const std::vector<double>& tensor_weight() const { return tw_; }
  const std::vector<double>& tensor_weight_sqrt() const { return tws_; }

  bool operator==(const Algebra& o) const {
    return dims_ == o.dims_ && weights_ == o.weights_;
  }

 private:
  Algebra() = default;
  std::vector<int> dims_;
  std::vector<double> weights_;
  int d1_ = 0, d2_ = 0;
  std::vector<int> eoff_, boff_;
  std::vector<double> ew_, tw_, tws_;
};

/// One algebra element: an n_i x n_i matrix per factor.
struct Element {
  std::vector<Mat> block;

  Element operator+(const Element& o) const;
  Element operator-(const Element& o) const;
  Element operator*(const Element& o) const;  // blockwise product
  Element operator*(cplx s) const;
  Element adjoint() const;
  double frobenius() const;
};

/// A self-adjoint idempotent; validated on construction.
struct Projection {
  Element e;
};

/// An element of A (x) A stored as the canonical coefficient vector.
struct Tensor {
  cvec c;

  Tensor operator+(const Tensor& o) const;
  Tensor operator-(const Tensor& o) const;
  Tensor operator*(cplx s) const;
};

enum class Side { Left, Right };

// -- construction ------------------------------------------------------------
Element element_zero(const Algebra& A);
Element element_identity(const Algebra& A);
/// E^{(i)}_{ab}, zero elsewhere (indices zero-based).
Element matrix_unit(const Algebra& A, int i, int a, int b);
Tensor tensor_zero(const Algebra& A);
Projection make_projection(const Algebra& A, const Element& e, double tol = 1e-9);

// -- element operations -------------------------------------------------------
bool conforms(const Algebra& A, const Element& x);
bool conforms(const Algebra& A, const Tensor& t);
cplx trace(const Algebra& A, const Element& x);
cplx inner_element(const Algebra& A, const Element& x, const Element& y);
cvec vectorize_element(const Algebra& A, const Element& x);
Element devectorize_element(const Algebra& A, std::span<const cplx> v);

// -- tensor operations ---------------------------------------------------------
Tensor tensor(const Algebra& A, const Element& a, const Element& b);
cplx inner(const Algebra& A, const Tensor& x, const Tensor& y);
double tensor_norm(const Algebra& A, const Tensor& t);
Element mu(const Algebra& A, const Tensor& t);
Element mu_op(const Algebra& A, const Tensor& t);
Tensor flip(const Algebra& A, const Tensor& t);
/// Enveloping product (a (x) b)(c (x) d) = ac (x) db, extended linearly.
Tensor env_mul(const Algebra& A, const Tensor& s, const Tensor& t);
/// Blockwise (id (x) n_j tau_j) (Right) or (n_i tau_i (x) id) (Left).
Element partial_trace(const Algebra& A, const Tensor& t, Side side);
/// Adjoint in A (x) A°: (a (x) b)* = a* (x) b*.
Tensor tensor_adjoint(const Algebra& A, const Tensor& t);

cvec vectorize(const Tensor& t);
Tensor devectorize(const Algebra& A, std::span<const cplx> v);

/// Tensor block (i,j) as the operator X -> sum t_{ab,cd} E_ab X E_cd it
/// induces on n_i x n_j matrices; env_mul is composition of these.
Mat block_operator(const Algebra& A, const Tensor& t, int i, int j);
void set_block_from_operator(const Algebra& A, const Mat& O, int i, int j, Tensor& t);

}  // namespace inq
