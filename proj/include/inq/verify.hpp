#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "inq/algebra.hpp"
#include "inq/subspace.hpp"

namespace inq {

enum class Status { Confirmed, Refuted, Inconclusive };
std::string to_string(Status s);

using MeasuredValue = std::variant<long long, double, std::string>;
using ExpectedScalar = MeasuredValue;

struct ExpectedValue {
  std::string name;
  ExpectedScalar value;
  std::string provenance;  // "paper" | "derived-oracle"
  std::string citation;
  bool pass = false;  // not serialized; feeds the status
};

/// Outcome record of one verification claim.
struct Report {
  std::string claim;
  std::vector<int> dims;
  std::vector<double> weights;
  std::uint64_t seed = 0;
  TolerancePolicy tol;
  std::vector<std::pair<std::string, MeasuredValue>> measured;
  std::vector<ExpectedValue> expected;
  Status status = Status::Inconclusive;
  double duration_ms = 0.0;
};

struct VerifyOptions {
  std::uint64_t seed = 42;
  TolerancePolicy tol;
};

Report verify_kernels(const Algebra& A, const VerifyOptions& opt);
Report verify_matrix_span(const Algebra& A, const VerifyOptions& opt);
Report verify_symmetric_span(const Algebra& A, const VerifyOptions& opt);
Report verify_ideal(const Algebra& A, Side side, const VerifyOptions& opt);
/// Also returns the computed equality projection via *delta_out when non-null.
Report compute_delta(const Algebra& A, const VerifyOptions& opt, Tensor* delta_out = nullptr);
Report verify_decomposition(const Algebra& A, const VerifyOptions& opt);
Report verify_bulk_minus(const Algebra& A, const VerifyOptions& opt);
Report verify_cnst(const Algebra& A, const VerifyOptions& opt);
Report verify_a1j(const Algebra& A, int i, int j, const VerifyOptions& opt);
Report verify_average_and_trace(const Algebra& A, const VerifyOptions& opt);

struct ClaimSpec {
  std::string name;
  std::string summary;
  bool (*applicable)(const std::vector<int>& dims);
  Report (*run)(const Algebra&, const VerifyOptions&);
};

/// Registry in the normative output order.
const std::vector<ClaimSpec>& claim_registry();
const ClaimSpec* find_claim(const std::string& name);

std::string report_to_json(const Report& r);
std::string report_to_text(const Report& r);

}  // namespace inq
