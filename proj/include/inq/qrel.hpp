#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "inq/algebra.hpp"
#include "inq/rng.hpp"
#include "inq/subspace.hpp"

namespace inq {

/// Projection sampling plan: a deterministic core (all subset supports and
/// all 0/1 diagonal patterns, which cover every rank vector) followed by a
/// seeded stream of Haar-conjugated diagonal projections.
struct ProjectionFamily {
  int batch_size = 8;
  int stall_limit = 25;  // consecutive non-growing batches before stopping
  int hard_cap = 5000;   // projections, across core and random stream
  std::uint64_t seed = 0;
};

struct SaturationResult {
  Subspace space;
  int projections_used = 0;
  int core_dim = 0;  // span dimension right after the deterministic core
  bool stalled = false;
  std::vector<std::uint64_t> seeds;

  bool inconclusive() const { return !stalled || space.inconclusive(); }
};

/// Identity on the factors in S, zero elsewhere.
Projection subset_support(const Algebra& A, const std::vector<int>& S);

/// Per factor U diag(1^r,0) U* with U Haar (Ginibre + QR, phases fixed).
Projection random_projection(const Algebra& A, const std::vector<int>& ranks, Rng& rng);

/// m_p = p (x) (1 - p).
Tensor m_p(const Algebra& A, const Projection& p);

enum class KernelKind { Mu, MuOp, Joint };
Subspace kernel_subspace(const Algebra& A, KernelKind which, TolerancePolicy tol);

/// Deterministic projection stream: core first, then the random tail.
class ProjectionStream {
 public:
  ProjectionStream(const Algebra& A, std::uint64_t seed);
  Projection next();
  bool in_core() const { return pos_ < static_cast<int>(core_.size()); }
  int core_size() const { return static_cast<int>(core_.size()); }

 private:
  const Algebra& A_;
  Rng rng_;
  std::vector<Projection> core_;
  int pos_ = 0;
};

/// Incremental span of emit(p) over the family until stall or cap.
SaturationResult saturate(
    const Algebra& A, const ProjectionFamily& family, TolerancePolicy tol,
    const std::function<void(const Projection&, std::vector<Tensor>&)>& emit);

/// span{m_p : p in family}.
SaturationResult inq_span(const Algebra& A, const ProjectionFamily& family,
                          TolerancePolicy tol);

enum class BlockPart { Full, Sym, Antisym };

/// Embedded copy of A_i (x) A_j (g_i (x) g_j when traceless) inside A (x) A;
/// for part != Full the +/- part of the flip-invariant hull per the pairing
/// (V (x) W)_± convention.
Subspace block_subspace(const Algebra& A, int i, int j, bool traceless,
                        BlockPart part, TolerancePolicy tol);

/// 1_S (x) 1_T + sign 1_T (x) 1_S.
Tensor sym_unit(const Algebra& A, const std::vector<int>& S,
                const std::vector<int>& T, int sign);

/// Signed subset sum pairing only against 1^+_{i|j}; needs i != j.
Tensor io_element(const Algebra& A, int i, int j);

/// delta_{p_S} = p_S (x) 1_{S^c} - 1_{S^c} (x) (1_S - p_S); p supported in S.
Tensor delta_ps(const Algebra& A, const std::vector<int>& S, const Projection& p);

}  // namespace inq
