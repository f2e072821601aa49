#pragma once

#include <optional>
#include <vector>

#include "inq/algebra.hpp"
#include "inq/subspace.hpp"

namespace inq {

/// One matrix-unit generator E^{(factor)}_{row,col} of ⊕_i gl(n_i), acting on
/// A (x) A by D_E(a (x) b) = [E,a] (x) b + a (x) [E,b].
struct Derivation {
  int factor;
  int row;
  int col;
};

/// The differentiated conjugation action of prod_i U(n_i); joint kernels of
/// these operators are exactly the group invariants (the group is connected).
class DerivationSet {
 public:
  explicit DerivationSet(Algebra A);

  const Algebra& algebra() const { return A_; }
  const std::vector<Derivation>& all() const { return gens_; }
  std::vector<Derivation> raising() const;  // E_{c,c+1} per factor
  std::vector<Derivation> lowering() const;
  std::vector<Derivation> torus() const;  // diagonal E_{cc}

  Tensor apply(const Derivation& d, const Tensor& t) const;
  void apply(const Derivation& d, const cplx* in, cplx* out) const;

 private:
  Algebra A_;
  std::vector<Derivation> gens_;
};

/// Per-factor integer exponent tuples of a torus weight.
struct Weight {
  std::vector<std::vector<long>> exponents;
  bool operator==(const Weight&) const = default;
};

DerivationSet derivation_ops(const Algebra& A);

/// Joint kernel of all derivations = the U-invariant tensors.
Subspace invariant_subspace(const Algebra& A, TolerancePolicy tol = {});

/// Orthogonal projection onto the invariants; equals the Haar integral of the
/// conjugation orbit for the connected group.
Tensor haar_average(const Algebra& A, const Tensor& t, TolerancePolicy tol = {});

/// Smallest derivation-invariant subspace containing v: sweep all generators
/// until a full sweep adds no dimension.
Subspace orbit_span(const Algebra& A, const Tensor& v, TolerancePolicy tol = {});

/// Simultaneous integer eigen-exponents under the torus generators, or
/// nullopt when v is not a weight vector.
std::optional<Weight> weight_of(const Algebra& A, const Tensor& v);

/// True iff every raising generator annihilates v. Throws when v is not a
/// weight vector.
bool is_highest_weight(const Algebra& A, const Tensor& v);

/// prod_{i<j} (l_i - l_j + j - i)/(j - i), exact integer arithmetic.
long weyl_dim(const std::vector<long>& lambda, int n);

}  // namespace inq
