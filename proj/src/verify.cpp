#include "inq/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <json.hpp>
#include <sstream>
#include <stdexcept>

#include <Eigen/SVD>

#include "inq/kernels.hpp"
#include "inq/qrel.hpp"
#include "inq/rep.hpp"
#include "inq/rng.hpp"

namespace inq {

using ordered_json = nlohmann::ordered_json;

std::string to_string(Status s) {
  switch (s) {
    case Status::Confirmed: return "CONFIRMED";
    case Status::Refuted: return "REFUTED";
    default: return "INCONCLUSIVE";
  }
}

namespace {

const TensorMap kFlip = [](const Algebra& A, const Tensor& t) { return flip(A, t); };

long long product_of_squares(const std::vector<int>& dims) {
  long long p = 1;
  for (const int n : dims) p *= static_cast<long long>(n) * n;
  return p;
}

class ReportBuilder {
 public:
  ReportBuilder(std::string claim, const Algebra& A, const VerifyOptions& opt)
      : start_(std::chrono::steady_clock::now()) {
    r_.claim = std::move(claim);
    r_.dims = A.dims();
    r_.weights = A.weights();
    r_.seed = opt.seed;
    r_.tol = opt.tol;
  }

  void measure(const std::string& name, long long v) { r_.measured.emplace_back(name, v); }
  void measure(const std::string& name, int v) { measure(name, static_cast<long long>(v)); }
  void measure(const std::string& name, double v) { r_.measured.emplace_back(name, v); }
  void measure(const std::string& name, const std::string& v) { r_.measured.emplace_back(name, v); }
  void measure(const std::string& name, bool v) { measure(name, std::string(v ? "true" : "false")); }

  void expect_int(const std::string& name, long long expected, long long measured,
                  const std::string& provenance, const std::string& citation) {
    r_.expected.push_back({name, expected, provenance, citation, expected == measured});
  }
  void expect_below(const std::string& name, double bound, double measured,
                    const std::string& provenance, const std::string& citation) {
    r_.expected.push_back({name, bound, provenance, citation, measured < bound});
  }
  void expect_above(const std::string& name, double bound, double measured,
                    const std::string& provenance, const std::string& citation) {
    r_.expected.push_back({name, bound, provenance, citation, measured > bound});
  }
  void expect_str(const std::string& name, const std::string& expected,
                  const std::string& actual, const std::string& provenance,
                  const std::string& citation) {
    r_.expected.push_back({name, expected, provenance, citation, expected == actual});
  }

  void inconclusive_if(bool cond) { inconclusive_ = inconclusive_ || cond; }

  Report finish() {
    bool all = true;
    for (const auto& e : r_.expected) all = all && e.pass;
    r_.status = inconclusive_ ? Status::Inconclusive
                              : (all ? Status::Confirmed : Status::Refuted);
    const auto dt = std::chrono::steady_clock::now() - start_;
    r_.duration_ms =
        std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(dt).count();
    return r_;
  }

 private:
  Report r_;
  bool inconclusive_ = false;
  std::chrono::steady_clock::time_point start_;
};

Projection draw_projection(const Algebra& A, Rng& rng, bool proper_ranks) {
  std::vector<int> ranks(static_cast<std::size_t>(A.factor_count()));
  for (int i = 0; i < A.factor_count(); ++i) {
    const int n = A.dim(i);
    ranks[static_cast<std::size_t>(i)] =
        (proper_ranks && n >= 2) ? rng.uniform_int(1, n - 1) : rng.uniform_int(0, n);
  }
  return random_projection(A, ranks, rng);
}

Element random_traceless(const Algebra& A, int factor, Rng& rng) {
  Element e = element_zero(A);
  const int n = A.dim(factor);
  Mat z(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) z(r, c) = rng.normal_c();
  z -= (z.trace() / static_cast<double>(n)) * Mat::Identity(n, n);
  e.block[static_cast<std::size_t>(factor)] = z;
  return e;
}

ProjectionFamily family_for(std::uint64_t claim_seed, int index) {
  ProjectionFamily f;
  f.seed = derive_seed(claim_seed, "stream", {index});
  return f;
}

std::string verdict_str(const Relation& rel) { return to_string(rel.verdict); }

// ---------------------------------------------------------------------------

Report kernels_impl(const Algebra& A, const VerifyOptions& opt) {
  ReportBuilder rb("kernels", A, opt);
  const Subspace km = kernel_subspace(A, KernelKind::Mu, opt.tol);
  const Subspace ko = kernel_subspace(A, KernelKind::MuOp, opt.tol);
  const Subspace joint = intersect(km, ko);
  rb.inconclusive_if(km.inconclusive() || ko.inconclusive() || joint.inconclusive());

  const long long d1 = A.element_dim(), d2 = A.tensor_dim();
  rb.measure("dim_ker_mu", km.dim());
  rb.measure("dim_ker_mu_op", ko.dim());
  rb.measure("dim_joint", joint.dim());

  rb.expect_int("dim_ker_mu", d2 - d1, km.dim(), "derived-oracle",
                "the multiplication map is surjective onto A, so its kernel has dimension D2 - D1");
  rb.expect_int("dim_ker_mu_op", d2 - d1, ko.dim(), "derived-oracle",
                "the opposite multiplication is surjective onto A, so its kernel has dimension D2 - D1");
  long long joint_expected = 0;
  for (int i = 0; i < A.factor_count(); ++i)
    for (int j = 0; j < A.factor_count(); ++j) {
      const long long ni2 = static_cast<long long>(A.dim(i)) * A.dim(i);
      const long long nj2 = static_cast<long long>(A.dim(j)) * A.dim(j);
      joint_expected += i == j ? (ni2 - 1) * (ni2 - 1) : ni2 * nj2;
    }
  if (A.factor_count() == 1) {
    rb.expect_int("dim_joint", joint_expected, joint.dim(), "paper",
                  "ker mu ∩ ker mu_op of M_n carries sl_n ⊗ sl_n as a U(n)-representation, "
                  "dimension (n^2-1)^2");
  } else {
    rb.expect_int("dim_joint", joint_expected, joint.dim(), "derived-oracle",
                  "cross blocks A_i ⊗ A_j (i != j) lie in both kernels; each diagonal block "
                  "contributes (n_i^2-1)^2");
  }
  return rb.finish();
}

Report matrix_span_impl(const Algebra& A, const VerifyOptions& opt) {
  ReportBuilder rb("matrix-span", A, opt);
  if (A.factor_count() != 1 || A.dim(0) > 6)
    throw std::invalid_argument("matrix-span: needs a single factor with n <= 6");
  const long long n = A.dim(0);
  const std::uint64_t cs = derive_seed(opt.seed, "matrix-span", A.dims());

  SaturationResult sat[3] = {
      inq_span(A, family_for(cs, 0), opt.tol),
      inq_span(A, family_for(cs, 1), opt.tol),
      inq_span(A, family_for(cs, 2), opt.tol),
  };
  const bool stable = sat[0].space.dim() == sat[1].space.dim() &&
                      sat[1].space.dim() == sat[2].space.dim();
  for (int r = 0; r < 3; ++r) {
    rb.inconclusive_if(sat[r].inconclusive());
    rb.measure("inq_dim_seed" + std::to_string(r), sat[r].space.dim());
  }
  rb.inconclusive_if(!stable);
  rb.measure("seed_stable", stable);
  rb.measure("core_dim", sat[0].core_dim);
  rb.measure("projections_used", sat[0].projections_used);
  rb.measure("stalled", sat[0].stalled);

  const Subspace joint = kernel_subspace(A, KernelKind::Joint, opt.tol);
  const Subspace inq_sym = involution_eigenspace(sat[0].space, kFlip, +1);
  const Subspace inq_anti = involution_eigenspace(sat[0].space, kFlip, -1);
  const Subspace joint_sym = involution_eigenspace(joint, kFlip, +1);
  const Subspace joint_anti = involution_eigenspace(joint, kFlip, -1);
  const Relation rel_full = relate(sat[0].space, joint);
  const Relation rel_sym = relate(inq_sym, joint_sym);
  const Relation rel_anti = relate(inq_anti, joint_anti);

  rb.measure("dim_joint", joint.dim());
  rb.measure("verdict_vs_joint", verdict_str(rel_full));
  rb.measure("inq_sym_dim", inq_sym.dim());
  rb.measure("inq_anti_dim", inq_anti.dim());
  rb.measure("joint_sym_dim", joint_sym.dim());
  rb.measure("joint_anti_dim", joint_anti.dim());
  rb.measure("verdict_sym", verdict_str(rel_sym));
  rb.measure("verdict_anti", verdict_str(rel_anti));

  const long long paper_dim = (n * n - 1) * (n * n - 1);
  const long long ceiling = joint_sym.dim() + (n * n - 1);
  rb.expect_str("symmetric_parts", "equal", verdict_str(rel_sym), "paper",
                "span{m_p + flip m_p} equals the symmetric part of ker mu ∩ ker mu_op");
  rb.expect_int("inq_dim_oracle", ceiling, sat[0].space.dim(), "derived-oracle",
                "the traceless-pair orthogonality identity caps the antisymmetric part of the "
                "span at {p ⊗ 1 - 1 ⊗ p}, dimension n^2-1, so dim = dim joint_+ + (n^2-1)");
  rb.expect_int("inq_dim_paper", paper_dim, sat[0].space.dim(), "paper",
                "the span of the quantum-inequality tensors over P(M_n) is claimed to exhaust "
                "ker mu ∩ ker mu_op, dimension (n^2-1)^2");
  return rb.finish();
}

Report symmetric_span_impl(const Algebra& A, const VerifyOptions& opt) {
  ReportBuilder rb("symmetric-span", A, opt);
  if (product_of_squares(A.dims()) > 50)
    throw std::invalid_argument("symmetric-span: product of n_i^2 must be <= 50");
  const std::uint64_t cs = derive_seed(opt.seed, "symmetric-span", A.dims());
  const SaturationResult sat = saturate(
      A, family_for(cs, 0), opt.tol, [&A](const Projection& p, std::vector<Tensor>& out) {
        const Tensor t = m_p(A, p);
        out.push_back(t + flip(A, t));
      });
  rb.inconclusive_if(sat.inconclusive());

  const Subspace joint = kernel_subspace(A, KernelKind::Joint, opt.tol);
  const Subspace joint_sym = involution_eigenspace(joint, kFlip, +1);
  const Relation rel = relate(sat.space, joint_sym);

  rb.measure("inq_sym_dim", sat.space.dim());
  rb.measure("joint_sym_dim", joint_sym.dim());
  rb.measure("verdict", verdict_str(rel));
  rb.measure("core_dim", sat.core_dim);
  rb.measure("projections_used", sat.projections_used);
  rb.measure("stalled", sat.stalled);
  rb.measure("max_angle", std::max(rel.angle_left_in_right, rel.angle_right_in_left));

  rb.expect_str("verdict", "equal", verdict_str(rel), "paper",
                "the closed span of {m_p + flip m_p : p in P(A)} equals the +1 flip eigenspace "
                "of ker mu ∩ ker mu_op");
  return rb.finish();
}

void emit_left_ideal(const Algebra& A, const Projection& p, std::vector<Tensor>& out) {
  const Element q = element_identity(A) - p.e;
  for (int i = 0; i < A.factor_count(); ++i) {
    const int ni = A.dim(i);
    const Mat& pi = p.e.block[static_cast<std::size_t>(i)];
    for (int j = 0; j < A.factor_count(); ++j) {
      const int nj = A.dim(j);
      const Mat& qj = q.block[static_cast<std::size_t>(j)];
      for (int a = 0; a < ni; ++a)
        for (int b = 0; b < ni; ++b)
          for (int c = 0; c < nj; ++c)
            for (int d = 0; d < nj; ++d) {
              // (E_ab ⊗ E_cd) · (p ⊗ (1-p)) = (E_ab p) ⊗ ((1-p) E_cd)
              Element u = element_zero(A);
              u.block[static_cast<std::size_t>(i)].row(a) = pi.row(b);
              Element w = element_zero(A);
              w.block[static_cast<std::size_t>(j)].col(d) = qj.col(c);
              out.push_back(tensor(A, u, w));
            }
    }
  }
}

void emit_right_ideal(const Algebra& A, const Projection& p, std::vector<Tensor>& out) {
  const Element q = element_identity(A) - p.e;
  for (int i = 0; i < A.factor_count(); ++i) {
    const int ni = A.dim(i);
    const Mat& pi = p.e.block[static_cast<std::size_t>(i)];
    for (int j = 0; j < A.factor_count(); ++j) {
      const int nj = A.dim(j);
      const Mat& qj = q.block[static_cast<std::size_t>(j)];
      for (int a = 0; a < ni; ++a)
        for (int b = 0; b < ni; ++b)
          for (int c = 0; c < nj; ++c)
            for (int d = 0; d < nj; ++d) {
              // (p ⊗ (1-p)) · (E_ab ⊗ E_cd) = (p E_ab) ⊗ (E_cd (1-p))
              Element u = element_zero(A);
              u.block[static_cast<std::size_t>(i)].col(b) = pi.col(a);
              Element w = element_zero(A);
              w.block[static_cast<std::size_t>(j)].row(c) = qj.row(d);
              out.push_back(tensor(A, u, w));
            }
    }
  }
}

SaturationResult saturate_ideal(const Algebra& A, Side side, std::uint64_t seed,
                                TolerancePolicy tol) {
  ProjectionFamily fam = family_for(seed, 0);
  return saturate(A, fam, tol, [&A, side](const Projection& p, std::vector<Tensor>& out) {
    if (side == Side::Left) emit_left_ideal(A, p, out);
    else emit_right_ideal(A, p, out);
  });
}

Report ideal_impl(const Algebra& A, Side side, const VerifyOptions& opt) {
  const std::string claim = side == Side::Left ? "ideal-left" : "ideal-right";
  ReportBuilder rb(claim, A, opt);
  if (product_of_squares(A.dims()) > 40)
    throw std::invalid_argument(claim + ": product of n_i^2 must be <= 40");
  const std::uint64_t cs = derive_seed(opt.seed, claim, A.dims());
  const SaturationResult sat = saturate_ideal(A, side, cs, opt.tol);
  rb.inconclusive_if(sat.inconclusive());

  const Subspace ker = kernel_subspace(
      A, side == Side::Left ? KernelKind::Mu : KernelKind::MuOp, opt.tol);
  const Relation rel = relate(sat.space, ker);

  rb.measure("ideal_dim", sat.space.dim());
  rb.measure("kernel_dim", ker.dim());
  rb.measure("verdict", verdict_str(rel));
  rb.measure("projections_used", sat.projections_used);
  rb.measure("stalled", sat.stalled);

  const long long d2d1 = static_cast<long long>(A.tensor_dim()) - A.element_dim();
  rb.expect_int("ideal_dim", d2d1, sat.space.dim(), "derived-oracle",
                "the kernel of a surjection onto A has dimension D2 - D1");
  rb.expect_str("verdict", "equal", verdict_str(rel), "paper",
                side == Side::Left
                    ? "the left ideal generated by all p ⊗ (1-p) is the kernel of the "
                      "multiplication map"
                    : "the right ideal generated by all p ⊗ (1-p) is the kernel of the "
                      "opposite multiplication map");
  return rb.finish();
}

Tensor delta_closed_form(const Algebra& A) {
  Tensor t = tensor_zero(A);
  for (int i = 0; i < A.factor_count(); ++i) {
    const int n = A.dim(i);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        t.c[static_cast<std::size_t>(A.tensor_index(i, i, a, b, b, a))] +=
            1.0 / static_cast<double>(n);
  }
  return t;
}

Report delta_impl(const Algebra& A, const VerifyOptions& opt, Tensor* delta_out) {
  ReportBuilder rb("delta", A, opt);
  if (product_of_squares(A.dims()) > 40)
    throw std::invalid_argument("delta: product of n_i^2 must be <= 40");
  const std::uint64_t cs = derive_seed(opt.seed, "delta", A.dims());
  const SaturationResult sat = saturate_ideal(A, Side::Left, cs, opt.tol);
  rb.inconclusive_if(sat.inconclusive());
  rb.measure("ideal_dim", sat.space.dim());

  // Right support of the ideal, blockwise: q is the projection onto the
  // orthogonal complement of the common kernel of the ideal acting on
  // n_i x n_j matrices; delta = 1 ⊗ 1 - q has operator block P_kernel.
  Tensor delta = tensor_zero(A);
  bool band = false;
  const std::vector<Tensor> ideal_basis = sat.space.basis();
  for (int i = 0; i < A.factor_count(); ++i)
    for (int j = 0; j < A.factor_count(); ++j) {
      const int m = A.dim(i) * A.dim(j);
      Eigen::MatrixXcd stacked(
          std::max<std::size_t>(ideal_basis.size(), 1) * static_cast<std::size_t>(m), m);
      stacked.setZero();
      for (std::size_t k = 0; k < ideal_basis.size(); ++k)
        stacked.middleRows(static_cast<int>(k) * m, m) =
            block_operator(A, ideal_basis[k], i, j);
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(stacked, Eigen::ComputeFullV);
      const Eigen::VectorXd sv = svd.singularValues();
      const double smax = sv.size() > 0 ? sv(0) : 0.0;
      const double cut = std::max(opt.tol.rel * smax, opt.tol.abs);
      int rank = 0;
      for (int k = 0; k < sv.size(); ++k) {
        if (sv(k) > cut) ++rank;
        if (sv(k) >= cut / 10.0 && sv(k) <= cut * 10.0) band = true;
      }
      const Eigen::MatrixXcd N = svd.matrixV().rightCols(m - rank);
      set_block_from_operator(A, N * N.adjoint(), i, j, delta);
    }
  rb.inconclusive_if(band);

  const Tensor closed = delta_closed_form(A);
  double frob = 0.0;
  for (std::size_t t = 0; t < delta.c.size(); ++t) frob += std::norm(delta.c[t] - closed.c[t]);
  frob = std::sqrt(frob);

  const Tensor idem = env_mul(A, delta, delta) - delta;
  const Tensor sadj = tensor_adjoint(A, delta) - delta;

  Rng rng(derive_seed(cs, "residuals"));
  double ann = 0.0;
  for (int t = 0; t < 200; ++t) {
    const Projection p = draw_projection(A, rng, false);
    ann = std::max(ann, tensor_norm(A, env_mul(A, delta, m_p(A, p))));
  }

  rb.measure("closed_form_frobenius_error", frob);
  rb.measure("idempotent_residual", tensor_norm(A, idem));
  rb.measure("self_adjoint_residual", tensor_norm(A, sadj));
  rb.measure("annihilation_max_residual", ann);

  rb.expect_below("closed_form_frobenius_error", 1e-9, frob, "derived-oracle",
                  "the support complement equals the blockwise normalized maximally "
                  "entangled projection (1/n_i) sum_ab E_ab ⊗ E_ba");
  rb.expect_below("annihilation_max_residual", 1e-10, ann, "paper",
                  "delta is the largest projection with delta · (p ⊗ (1-p)) = 0 for every projection p");
  rb.expect_below("idempotent_residual", 1e-9, tensor_norm(A, idem), "derived-oracle",
                  "delta is an idempotent of the enveloping algebra");
  rb.expect_below("self_adjoint_residual", 1e-9, tensor_norm(A, sadj), "derived-oracle",
                  "delta is self-adjoint");
  if (delta_out != nullptr) *delta_out = delta;
  return rb.finish();
}

std::string weight_to_string(const std::vector<long>& w) {
  std::string s = "(";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(w[i]);
  }
  return s + ")";
}

Report decomposition_impl(const Algebra& A, const VerifyOptions& opt) {
  ReportBuilder rb("decomposition", A, opt);
  if (A.factor_count() != 1 || A.dim(0) < 2 || A.dim(0) > 5)
    throw std::invalid_argument("decomposition: needs a single factor with 2 <= n <= 5");
  const int n = A.dim(0);
  const long long d = static_cast<long long>(n) * n - 1;
  const std::uint64_t cs = derive_seed(opt.seed, "decomposition", A.dims());

  const auto E = [&](int a, int b) { return matrix_unit(A, 0, a, b); };
  const auto T = [&](const Element& x, const Element& y) { return tensor(A, x, y); };

  struct Summand {
    std::string name;
    Tensor seed;
    std::vector<long> weight;  // empty: skip weight/hw checks (adjoint/trivial seeds)
    bool symmetric;
    bool is_hw_from_list;  // one of the four explicit highest-weight vectors
  };
  std::vector<Summand> summands;

  std::vector<long> w_leading(static_cast<std::size_t>(n), 0);
  w_leading.front() = 2;
  w_leading.back() = -2;
  summands.push_back({"sym_leading", T(E(0, n - 1), E(0, n - 1)), w_leading, true, true});
  if (n >= 4) {
    std::vector<long> w(static_cast<std::size_t>(n), 0);
    w[0] = 1; w[1] = 1; w[static_cast<std::size_t>(n - 2)] = -1; w[static_cast<std::size_t>(n - 1)] = -1;
    const Tensor mixed = T(E(0, n - 1), E(1, n - 2)) + T(E(1, n - 2), E(0, n - 1)) -
                         T(E(0, n - 2), E(1, n - 1)) - T(E(1, n - 1), E(0, n - 2));
    summands.push_back({"sym_mixed", mixed, w, true, true});
  }
  if (n >= 3) {
    std::vector<long> w(static_cast<std::size_t>(n), 0);
    w[0] = 2; w[static_cast<std::size_t>(n - 2)] = -1; w[static_cast<std::size_t>(n - 1)] = -1;
    summands.push_back({"anti_rowpair",
                        T(E(0, n - 1), E(0, n - 2)) - T(E(0, n - 2), E(0, n - 1)), w, false, true});
    std::vector<long> w2(static_cast<std::size_t>(n), 0);
    w2[0] = 1; w2[1] = 1; w2[static_cast<std::size_t>(n - 1)] = -2;
    summands.push_back({"anti_colpair",
                        T(E(0, n - 1), E(1, n - 1)) - T(E(1, n - 1), E(0, n - 1)), w2, false, true});
  }

  const Subspace joint = kernel_subspace(A, KernelKind::Joint, opt.tol);
  const Subspace joint_sym = involution_eigenspace(joint, kFlip, +1);
  const Subspace joint_anti = involution_eigenspace(joint, kFlip, -1);

  // Adjoint copies, located through the partial trace: seed with the
  // projection of (id ⊗ n tau)^* (e_{1n}) onto the flip eigenspaces.
  Tensor ptadj = tensor_zero(A);
  for (int c = 0; c < n; ++c)
    ptadj.c[static_cast<std::size_t>(A.tensor_index(0, 0, 0, n - 1, c, c))] =
        static_cast<double>(n);
  std::vector<long> w_adj(static_cast<std::size_t>(n), 0);
  w_adj.front() = 1;
  w_adj.back() = -1;
  if (n >= 3)
    summands.push_back({"sym_adjoint", project(joint_sym, ptadj), w_adj, true, false});
  summands.push_back({"anti_adjoint", project(joint_anti, ptadj), w_adj, false, false});

  // The invariant line inside the joint kernel.
  const Subspace inv = invariant_subspace(A, opt.tol);
  std::vector<Tensor> triv_seeds;
  for (const Tensor& b : inv.basis()) triv_seeds.push_back(project(joint_sym, b));
  const Subspace trivial_line = span(A, triv_seeds, opt.tol);
  rb.measure("dim_trivial", trivial_line.dim());
  rb.expect_int("dim_trivial", 1, trivial_line.dim(), "paper",
                "the trivial representation appears once, via the non-zero Haar average av_p");

  Rng rng(derive_seed(cs, "pairings"));
  std::vector<Projection> sample;
  for (int t = 0; t < 100; ++t) sample.push_back(draw_projection(A, rng, true));

  std::vector<Subspace> spaces;
  std::vector<std::string> names;
  long long total_sym = trivial_line.dim(), total_anti = 0;
  for (const Summand& s : summands) {
    if (!s.weight.empty() && s.is_hw_from_list) {
      const auto w = weight_of(A, s.seed);
      rb.expect_str("weight_" + s.name, weight_to_string(s.weight),
                    w.has_value() ? weight_to_string(w->exponents[0]) : "non-weight", "paper",
                    "torus exponents of the listed highest-weight vector (z_1^2 z_n^-2 family)");
      rb.expect_str("highest_weight_" + s.name, "true",
                    is_highest_weight(A, s.seed) ? "true" : "false", "paper",
                    "the listed vector is annihilated by every raising operator");
    }
    const Subspace orbit = orbit_span(A, s.seed, opt.tol);
    rb.inconclusive_if(orbit.inconclusive());
    const long long wd = s.weight.empty() ? -1 : weyl_dim(s.weight, n);
    rb.measure("dim_" + s.name, orbit.dim());
    if (wd >= 0)
      rb.expect_int("dim_" + s.name, wd, orbit.dim(), "derived-oracle",
                    "Weyl dimension formula for highest weight " + weight_to_string(s.weight));
    if (s.is_hw_from_list) {
      double pairing = 0.0;
      for (const Projection& p : sample)
        pairing = std::max(pairing, std::abs(inner(A, s.seed, m_p(A, p))));
      rb.measure("pairing_" + s.name + "_max", pairing);
      if (s.symmetric)
        rb.expect_above("pairing_" + s.name + "_max", 1e-8, pairing, "paper",
                        "the pairings <x|m_p> of the symmetric highest-weight vectors cannot "
                        "all vanish");
    }
    (s.symmetric ? total_sym : total_anti) += orbit.dim();
    spaces.push_back(orbit);
    names.push_back(s.name);
  }
  spaces.push_back(trivial_line);
  names.push_back("trivial");

  if (n >= 4) {
    // the all-plus sign variant of the mixed symmetric vector, as printed
    const Tensor printed = T(E(0, n - 1), E(1, n - 2)) + T(E(1, n - 2), E(0, n - 1)) +
                           T(E(0, n - 2), E(1, n - 1)) + T(E(1, n - 1), E(0, n - 2));
    const DerivationSet ds(A);
    double resid = 0.0;
    for (const Derivation& dgen : ds.raising())
      resid = std::max(resid, tensor_norm(A, ds.apply(dgen, printed)));
    rb.measure("printed_sym_mixed_raising_residual", resid / tensor_norm(A, printed));
  }

  double cross = 0.0;
  for (std::size_t u = 0; u < spaces.size(); ++u)
    for (std::size_t v = u + 1; v < spaces.size(); ++v)
      for (const Tensor& x : spaces[u].basis())
        for (const Tensor& y : spaces[v].basis())
          cross = std::max(cross, std::abs(inner(A, x, y)));
  rb.measure("max_cross_overlap", cross);
  rb.expect_below("max_cross_overlap", 1e-9, cross, "derived-oracle",
                  "distinct isotypic summands are tau-orthogonal");

  rb.measure("total_sym", total_sym);
  rb.measure("total_anti", total_anti);
  rb.expect_int("total_sym", d * (d + 1) / 2, total_sym, "paper",
                "the symmetric square of sl_n inside the joint kernel has dimension d(d+1)/2");
  rb.expect_int("total_anti", d * (d - 1) / 2, total_anti, "paper",
                "the exterior square of sl_n inside the joint kernel has dimension d(d-1)/2");
  rb.expect_int("total", d * d, total_sym + total_anti, "paper",
                "the summands exhaust ker mu ∩ ker mu_op, dimension (n^2-1)^2");
  return rb.finish();
}

Report bulk_minus_impl(const Algebra& A, const VerifyOptions& opt) {
  ReportBuilder rb("bulk-minus", A, opt);
  if (A.factor_count() < 2)
    throw std::invalid_argument("bulk-minus: needs at least 2 factors");
  if (product_of_squares(A.dims()) > 50)
    throw std::invalid_argument("bulk-minus: product of n_i^2 must be <= 50");
  const std::uint64_t cs = derive_seed(opt.seed, "bulk-minus", A.dims());

  const SaturationResult sat = inq_span(A, family_for(cs, 0), opt.tol);
  rb.inconclusive_if(sat.inconclusive());
  rb.measure("inq_dim", sat.space.dim());

  Subspace anti_all(A, opt.tol), anti_diag(A, opt.tol);
  for (int i = 0; i < A.factor_count(); ++i)
    for (int j = i; j < A.factor_count(); ++j) {
      if (A.dim(i) < 2 || A.dim(j) < 2) continue;
      const Subspace blk = block_subspace(A, i, j, true, BlockPart::Antisym, opt.tol);
      anti_all = sum(anti_all, blk);
      if (i == j) anti_diag = sum(anti_diag, blk);
    }
  const Subspace lhs_all = intersect(sat.space, anti_all);
  const Subspace lhs_diag = intersect(sat.space, anti_diag);
  const Subspace joint = kernel_subspace(A, KernelKind::Joint, opt.tol);
  const Subspace joint_anti = involution_eigenspace(joint, kFlip, -1);
  const Subspace rhs = intersect(anti_diag, joint_anti);

  rb.measure("anti_blocks_all_dim", anti_all.dim());
  rb.measure("anti_blocks_diag_dim", anti_diag.dim());
  rb.measure("lhs_all_dim", lhs_all.dim());
  rb.measure("lhs_diag_dim", lhs_diag.dim());
  rb.measure("rhs_dim", rhs.dim());
  const Relation rel = relate(lhs_all, rhs);
  rb.measure("verdict_all_vs_rhs", verdict_str(rel));
  rb.measure("verdict_diag_vs_rhs", verdict_str(relate(lhs_diag, rhs)));

  // the proof identity: traceless antisymmetric pairs are orthogonal to m_p
  Rng rng(derive_seed(cs, "orth"));
  double orth = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const Projection p = draw_projection(A, rng, false);
    const Tensor mp = m_p(A, p);
    for (int i = 0; i < A.factor_count(); ++i)
      for (int j = i; j < A.factor_count(); ++j) {
        if (A.dim(i) < 2 || A.dim(j) < 2) continue;
        const Element a = random_traceless(A, i, rng);
        const Element b = random_traceless(A, j, rng);
        const Tensor v = tensor(A, a, b) - tensor(A, b, a);
        orth = std::max(orth, std::abs(inner(A, mp, v)));
      }
  }
  rb.measure("orthogonality_residual_max", orth);

  rb.expect_str("lhs_equals_rhs", "equal", verdict_str(rel), "paper",
                "INQ(A) ∩ prod (g_i ⊗ g_j)_- equals (prod (g_i ⊗ g_i)_-) ∩ "
                "(ker mu ∩ ker mu_op)_-");
  rb.expect_below("orthogonality_residual_max", 1e-10, orth, "paper",
                  "(g_i ⊗ g_i)_- is <-|->_tau-orthogonal to m_p for every p in P(A)");
  return rb.finish();
}

Report cnst_impl(const Algebra& A, const VerifyOptions& opt) {
  ReportBuilder rb("cnst", A, opt);
  const int k = A.factor_count();
  if (k < 2 || k > 10)
    throw std::invalid_argument("cnst: needs 2..10 factors");
  const std::uint64_t cs = derive_seed(opt.seed, "cnst", A.dims());

  std::vector<Tensor> subset_units;
  for (int bits = 1; bits < (1 << k) - 1; ++bits) {
    std::vector<int> S, Sc;
    for (int t = 0; t < k; ++t) (bits >> t & 1 ? S : Sc).push_back(t);
    subset_units.push_back(sym_unit(A, S, Sc, +1));
  }
  std::vector<Tensor> pair_units;
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      pairs.emplace_back(i, j);
      pair_units.push_back(sym_unit(A, {i}, {j}, +1));
    }
  const Subspace span_subsets = span(A, subset_units, opt.tol);
  const Subspace span_pairs = span(A, pair_units, opt.tol);
  const Relation rel = relate(span_subsets, span_pairs);
  rb.inconclusive_if(span_subsets.inconclusive() || span_pairs.inconclusive());
  rb.measure("span_subsets_dim", span_subsets.dim());
  rb.measure("span_pairs_dim", span_pairs.dim());
  rb.measure("verdict", verdict_str(rel));

  double offdiag = 0.0, diag_min = 1e300;
  for (std::size_t u = 0; u < pairs.size(); ++u) {
    const Tensor io = io_element(A, pairs[u].first, pairs[u].second);
    for (std::size_t v = 0; v < pairs.size(); ++v) {
      const double val = std::abs(inner(A, io, pair_units[v]));
      if (u == v) diag_min = std::min(diag_min, inner(A, io, pair_units[v]).real());
      else offdiag = std::max(offdiag, val);
    }
  }
  rb.measure("io_offdiag_max", offdiag);
  rb.measure("io_diag_min", diag_min);

  const SaturationResult sat = inq_span(A, family_for(cs, 0), opt.tol);
  rb.inconclusive_if(sat.inconclusive());
  double member = 0.0;
  for (const Tensor& u : pair_units)
    member = std::max(member, membership_residual(sat.space, u));
  rb.measure("membership_max_residual", member);

  rb.expect_str("verdict", "equal", verdict_str(rel), "paper",
                "span{1^+_{S|S^c} : 0 != S != I} = span{1^+_{i|j} : i != j}");
  rb.expect_below("io_offdiag_max", 1e-10, offdiag, "paper",
                  "<IO_{i|j} | 1^+_{i'|j'}> = delta_{i,i'} delta_{j,j'} (positive factor)");
  rb.expect_above("io_diag_min", 0.0, diag_min, "paper",
                  "the diagonal pairing factor is positive");
  rb.expect_below("membership_max_residual", 1e-8, member, "paper",
                  "the symmetric scalar summand 1^+_{i|j} lies in the span of the m_p^+");
  return rb.finish();
}

Report a1j_impl(const Algebra& A, int i, int j, const VerifyOptions& opt) {
  ReportBuilder rb("a1j", A, opt);
  const int k = A.factor_count();
  if (i == j || i < 0 || j < 0 || i >= k || j >= k)
    throw std::invalid_argument("a1j: needs two distinct valid factors");
  rb.measure("factor_i", static_cast<long long>(i + 1));
  rb.measure("factor_j", static_cast<long long>(j + 1));
  const int n = A.dim(i);
  if (n < 2) {
    // g_i = 0: nothing to check
    rb.measure("vacuous", true);
    rb.expect_str("vacuous", "true", "true", "paper",
                  "the traceless block of a 1-dimensional factor is zero");
    return rb.finish();
  }
  const std::uint64_t cs = derive_seed(opt.seed, "a1j", A.dims());

  // delta_{p_S} family: subsets S with 0/1 components off factor i and
  // sampled projections on factor i itself.
  SpanBuilder builder(A, opt.tol);
  const auto emit_for = [&](const Mat& pi_block) {
    for (int bits = 0; bits < (1 << k); ++bits) {
      if (!(bits >> i & 1)) continue;
      std::vector<int> S;
      for (int t = 0; t < k; ++t)
        if (bits >> t & 1) S.push_back(t);
      // p = 1 on T ⊆ S\{i}, the sampled block on factor i
      for (int tb = 0; tb < (1 << k); ++tb) {
        if ((tb & ~bits) != 0 || (tb >> i & 1)) continue;
        Element e = element_zero(A);
        for (int t = 0; t < k; ++t)
          if (tb >> t & 1)
            e.block[static_cast<std::size_t>(t)] = Mat::Identity(A.dim(t), A.dim(t));
        e.block[static_cast<std::size_t>(i)] = pi_block;
        builder.add(delta_ps(A, S, Projection{std::move(e)}));
      }
    }
  };
  // core: S without factor i (p purely 0/1), then diagonal patterns on i
  for (int bits = 0; bits < (1 << k); ++bits) {
    if (bits >> i & 1) continue;
    std::vector<int> S;
    for (int t = 0; t < k; ++t)
      if (bits >> t & 1) S.push_back(t);
    for (int tb = 0; tb < (1 << k); ++tb) {
      if ((tb & ~bits) != 0) continue;
      Element e = subset_support(A, [&] {
                    std::vector<int> T;
                    for (int t = 0; t < k; ++t)
                      if (tb >> t & 1) T.push_back(t);
                    return T;
                  }()).e;
      builder.add(delta_ps(A, S, Projection{std::move(e)}));
    }
  }
  for (int db = 0; db < (1 << n); ++db) {
    Mat pb = Mat::Zero(n, n);
    for (int a = 0; a < n; ++a)
      if (db >> a & 1) pb(a, a) = 1.0;
    emit_for(pb);
  }
  // random tail with the family's stall rule
  ProjectionFamily fam = family_for(cs, 0);
  Rng rng(fam.seed);
  int stall = 0, used = 0;
  bool stalled = false;
  while (used < fam.hard_cap) {
    bool grew = false;
    for (int t = 0; t < fam.batch_size; ++t, ++used) {
      const int r = rng.uniform_int(0, n);
      std::vector<int> ranks(static_cast<std::size_t>(k), 0);
      ranks[static_cast<std::size_t>(i)] = r;
      const Projection p = random_projection(A, ranks, rng);
      const int before = builder.dim();
      emit_for(p.e.block[static_cast<std::size_t>(i)]);
      if (builder.dim() > before) grew = true;
    }
    stall = grew ? 0 : stall + 1;
    if (stall >= fam.stall_limit) {
      stalled = true;
      break;
    }
  }
  const Subspace family_span = builder.take(!stalled);
  rb.inconclusive_if(family_span.inconclusive());
  rb.measure("family_dim", family_span.dim());
  rb.measure("stalled", stalled);

  double member = 0.0;
  std::vector<Element> gbasis;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b) gbasis.push_back(matrix_unit(A, i, a, b));
  for (int c = 0; c + 1 < n; ++c)
    gbasis.push_back(matrix_unit(A, i, c, c) - matrix_unit(A, i, c + 1, c + 1));
  const Element oj = subset_support(A, {j}).e;
  for (const Element& a : gbasis) {
    const Tensor v = tensor(A, a, oj) + tensor(A, oj, a);
    member = std::max(member, membership_residual(family_span, v));
  }
  rb.measure("membership_max_residual", member);
  rb.expect_below("membership_max_residual", 1e-8, member, "paper",
                  "(a ⊗ 1_j)^+ lies in span{delta_{p_S} : p_{j'} = 1_{j'} or 0 for j' != i}");
  return rb.finish();
}

Report average_trace_impl(const Algebra& A, const VerifyOptions& opt) {
  ReportBuilder rb("average-trace", A, opt);
  if (A.factor_count() != 1 || A.dim(0) < 2 || A.dim(0) > 5)
    throw std::invalid_argument("average-trace: needs a single factor with 2 <= n <= 5");
  const int n = A.dim(0);
  const std::uint64_t cs = derive_seed(opt.seed, "average-trace", A.dims());

  const Subspace inv = invariant_subspace(A, opt.tol);
  rb.inconclusive_if(inv.inconclusive());
  const Tensor one_one = tensor(A, element_identity(A), element_identity(A));
  const Element one = element_identity(A);

  Rng rng(derive_seed(cs, "samples"));
  double pairing = 0.0, anti_formula = 0.0, sym_formula = 0.0;
  double sym_nonscalar = 0.0, anti_nonscalar = 0.0;
  for (int t = 0; t < 100; ++t) {
    const Projection p = draw_projection(A, rng, false);
    const Tensor mp = m_p(A, p);
    const Tensor av = project(inv, mp);
    const double tp = trace(A, p.e).real();
    pairing = std::max(pairing, std::abs(inner(A, av, one_one) - tp * (1.0 - tp)));

    const Tensor anti = mp - flip(A, mp);
    const Tensor sym = mp + flip(A, mp);
    const Element pt_anti = partial_trace(A, anti, Side::Right);
    const Element pt_sym = partial_trace(A, sym, Side::Right);
    const Element f_anti =
        p.e * cplx{n * (1.0 - tp), 0.0} - (one - p.e) * cplx{n * tp, 0.0};
    const Element f_sym =
        p.e * cplx{n * (1.0 - tp), 0.0} + (one - p.e) * cplx{n * tp, 0.0};
    anti_formula = std::max(anti_formula, (pt_anti - f_anti).frobenius());
    sym_formula = std::max(sym_formula, (pt_sym - f_sym).frobenius());

    const auto nonscalar = [&](const Element& x) {
      const cplx mean = x.block[0].trace() / static_cast<double>(n);
      return (x.block[0] - mean * Mat::Identity(n, n)).norm();
    };
    sym_nonscalar = std::max(sym_nonscalar, nonscalar(pt_sym));
    anti_nonscalar = std::max(anti_nonscalar, nonscalar(pt_anti));
  }

  rb.measure("pairing_residual_max", pairing);
  rb.measure("anti_formula_residual_max", anti_formula);
  rb.measure("sym_formula_residual_max", sym_formula);
  rb.measure("sym_nonscalar_max", sym_nonscalar);
  rb.measure("anti_nonscalar_max", anti_nonscalar);

  rb.expect_below("pairing_residual_max", 1e-9, pairing, "paper",
                  "<av_p | 1> = tau(p) tau(1-p)");
  rb.expect_below("anti_formula_residual_max", 1e-9, anti_formula, "paper",
                  "(id ⊗ n tau)(m_p - flip m_p) = n tau(1-p) p - n tau(p)(1-p)");
  rb.expect_below("sym_formula_residual_max", 1e-9, sym_formula, "paper",
                  "(id ⊗ n tau)(m_p + flip m_p) = n tau(1-p) p + n tau(p)(1-p)");
  rb.expect_above("anti_nonscalar_max", 1e-8, anti_nonscalar, "paper",
                  "some projection has a non-scalar antisymmetric partial-trace image");
  if (n == 2)
    rb.expect_below("sym_nonscalar_max", 1e-9, sym_nonscalar, "paper",
                    "n = 2 is the one size where every symmetric partial-trace image is "
                    "scalar");
  else
    rb.expect_above("sym_nonscalar_max", 1e-8, sym_nonscalar, "paper",
                    "n = 2 is the one size where every symmetric partial-trace image is "
                    "scalar, so some image here must be non-scalar");
  return rb.finish();
}

// ---------------------------------------------------------------------------

bool any_dims(const std::vector<int>&) { return true; }
bool single_small(const std::vector<int>& d) { return d.size() == 1 && d[0] <= 6; }
bool prod_le_50(const std::vector<int>& d) { return product_of_squares(d) <= 50; }
bool prod_le_40(const std::vector<int>& d) { return product_of_squares(d) <= 40; }
bool single_2_to_5(const std::vector<int>& d) {
  return d.size() == 1 && d[0] >= 2 && d[0] <= 5;
}
bool multi_le_50(const std::vector<int>& d) {
  return d.size() >= 2 && product_of_squares(d) <= 50;
}
bool multi_2_to_10(const std::vector<int>& d) { return d.size() >= 2 && d.size() <= 10; }

Report run_a1j_default(const Algebra& A, const VerifyOptions& opt) {
  int i = -1;
  for (int t = 0; t < A.factor_count(); ++t)
    if (A.dim(t) >= 2) { i = t; break; }
  if (i < 0) i = 0;
  int j = i == 0 ? 1 : 0;
  return verify_a1j(A, i, j, opt);
}

}  // namespace

Report verify_kernels(const Algebra& A, const VerifyOptions& opt) { return kernels_impl(A, opt); }
Report verify_matrix_span(const Algebra& A, const VerifyOptions& opt) { return matrix_span_impl(A, opt); }
Report verify_symmetric_span(const Algebra& A, const VerifyOptions& opt) { return symmetric_span_impl(A, opt); }
Report verify_ideal(const Algebra& A, Side side, const VerifyOptions& opt) { return ideal_impl(A, side, opt); }
Report compute_delta(const Algebra& A, const VerifyOptions& opt, Tensor* delta_out) {
  return delta_impl(A, opt, delta_out);
}
Report verify_decomposition(const Algebra& A, const VerifyOptions& opt) { return decomposition_impl(A, opt); }
Report verify_bulk_minus(const Algebra& A, const VerifyOptions& opt) { return bulk_minus_impl(A, opt); }
Report verify_cnst(const Algebra& A, const VerifyOptions& opt) { return cnst_impl(A, opt); }
Report verify_a1j(const Algebra& A, int i, int j, const VerifyOptions& opt) { return a1j_impl(A, i, j, opt); }
Report verify_average_and_trace(const Algebra& A, const VerifyOptions& opt) {
  return average_trace_impl(A, opt);
}

const std::vector<ClaimSpec>& claim_registry() {
  static const std::vector<ClaimSpec> reg = {
      {"kernels", "multiplication-kernel dimensions", any_dims, verify_kernels},
      {"matrix-span", "span of the m_p against the joint kernel (single factor)",
       single_small, verify_matrix_span},
      {"symmetric-span", "symmetrized span equals the symmetric joint kernel",
       prod_le_50, verify_symmetric_span},
      {"ideal-left", "left ideal generated by the m_p equals ker mu", prod_le_40,
       [](const Algebra& A, const VerifyOptions& o) { return verify_ideal(A, Side::Left, o); }},
      {"ideal-right", "right ideal generated by the m_p equals ker mu_op", prod_le_40,
       [](const Algebra& A, const VerifyOptions& o) { return verify_ideal(A, Side::Right, o); }},
      {"delta", "equality projection from the ideal's right support", prod_le_40,
       [](const Algebra& A, const VerifyOptions& o) { return compute_delta(A, o, nullptr); }},
      {"decomposition", "highest-weight summand bookkeeping (single factor)",
       single_2_to_5, verify_decomposition},
      {"bulk-minus", "antisymmetric traceless blocks against the span", multi_le_50,
       verify_bulk_minus},
      {"cnst", "subset-support span identities and IO pairings", multi_2_to_10, verify_cnst},
      {"a1j", "(a ⊗ 1_j)^+ membership in the delta_{p_S} span",
       [](const std::vector<int>& d) { return d.size() >= 2; }, run_a1j_default},
      {"average-trace", "Haar-average pairing and partial-trace identities",
       single_2_to_5, verify_average_and_trace},
  };
  return reg;
}

const ClaimSpec* find_claim(const std::string& name) {
  for (const auto& c : claim_registry())
    if (c.name == name) return &c;
  return nullptr;
}

namespace {

ordered_json value_to_json(const MeasuredValue& v) {
  if (std::holds_alternative<long long>(v)) return std::get<long long>(v);
  if (std::holds_alternative<double>(v)) return std::get<double>(v);
  return std::get<std::string>(v);
}

}  // namespace

std::string report_to_json(const Report& r) {
  ordered_json j;
  j["claim"] = r.claim;
  j["dims"] = r.dims;
  j["weights"] = r.weights;
  j["seed"] = r.seed;
  j["tol"] = ordered_json{{"rel", r.tol.rel}, {"abs", r.tol.abs}, {"angle", r.tol.angle}};
  ordered_json m = ordered_json::object();
  for (const auto& [name, val] : r.measured) m[name] = value_to_json(val);
  j["measured"] = m;
  ordered_json ex = ordered_json::array();
  for (const auto& e : r.expected)
    ex.push_back(ordered_json{{"name", e.name},
                              {"value", value_to_json(e.value)},
                              {"provenance", e.provenance},
                              {"citation", e.citation}});
  j["expected"] = ex;
  j["status"] = to_string(r.status);
  j["duration_ms"] = static_cast<long long>(std::llround(r.duration_ms));
  return j.dump(2);
}

std::string report_to_text(const Report& r) {
  std::ostringstream os;
  os << "claim: " << r.claim << "\n";
  os << "dims: " << ordered_json(r.dims).dump()
     << "  weights: " << ordered_json(r.weights).dump() << "  seed: " << r.seed << "\n";
  os << "tol: rel=" << ordered_json(r.tol.rel).dump()
     << " abs=" << ordered_json(r.tol.abs).dump()
     << " angle=" << ordered_json(r.tol.angle).dump() << "\n";
  os << "measured:\n";
  for (const auto& [name, val] : r.measured)
    os << "  " << name << ": " << value_to_json(val).dump() << "\n";
  os << "expected:\n";
  for (const auto& e : r.expected)
    os << "  " << e.name << " = " << value_to_json(e.value).dump() << "  [" << e.provenance
       << "] " << e.citation << (e.pass ? "  (ok)" : "  (MISMATCH)") << "\n";
  os << "status: " << to_string(r.status) << "\n";
  os << "duration_ms: " << static_cast<long long>(std::llround(r.duration_ms)) << "\n";
  return os.str();
}

}  // namespace inq
