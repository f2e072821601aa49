#include "inq/cli.hpp"

#include <CLI11.hpp>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <thread>

#include "inq/kernels.hpp"
#include "inq/verify.hpp"

namespace inq {

namespace {

using ordered_json = nlohmann::ordered_json;

struct RunConfig {
  std::vector<std::string> claims;
  std::vector<int> dims;
  std::vector<double> weights;
  std::uint64_t seed = 42;
  TolerancePolicy tol;
  std::string format = "text";
  std::string out;
};

int thread_cap() {
  if (const char* env = std::getenv("INQ_VERIFY_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

void merge_config_file(const std::string& path, RunConfig& cfg, const CLI::App& app) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("--config", "cannot open " + path);
  ordered_json j;
  in >> j;
  const auto unset = [&](const std::string& flag) {
    const CLI::Option* o = app.get_option_no_throw(flag);
    return o == nullptr || o->count() == 0;
  };
  if (j.contains("claims") && unset("--claim")) cfg.claims = j["claims"].get<std::vector<std::string>>();
  if (j.contains("dims") && unset("--dims")) cfg.dims = j["dims"].get<std::vector<int>>();
  if (j.contains("weights") && unset("--weights")) cfg.weights = j["weights"].get<std::vector<double>>();
  if (j.contains("seed") && unset("--seed")) cfg.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("tol")) {
    const auto& t = j["tol"];
    if (t.contains("rel") && unset("--tol-rel")) cfg.tol.rel = t["rel"].get<double>();
    if (t.contains("abs") && unset("--tol-abs")) cfg.tol.abs = t["abs"].get<double>();
    if (t.contains("angle") && unset("--tol-angle")) cfg.tol.angle = t["angle"].get<double>();
  }
  if (j.contains("format") && unset("--format")) cfg.format = j["format"].get<std::string>();
  if (j.contains("out") && unset("--out")) cfg.out = j["out"].get<std::string>();
}

void add_common_options(CLI::App* cmd, RunConfig& cfg, std::string& config_path) {
  cmd->add_option("--dims", cfg.dims, "factor sizes, e.g. 2,3")->delimiter(',');
  cmd->add_option("--weights", cfg.weights, "tracial weights, e.g. 0.5,0.5")->delimiter(',');
  cmd->add_option("--seed", cfg.seed, "master seed");
  cmd->add_option("--tol-rel", cfg.tol.rel, "relative singular-value cutoff");
  cmd->add_option("--tol-abs", cfg.tol.abs, "absolute singular-value floor");
  cmd->add_option("--tol-angle", cfg.tol.angle, "principal-angle equality threshold");
  cmd->add_option("--format", cfg.format, "text | json")
      ->check(CLI::IsMember({"text", "json"}));
  cmd->add_option("--out", cfg.out, "write the report(s) to this path");
  cmd->add_option("--config", config_path, "JSON config file (flags override it)");
}

Algebra make_algebra_checked(const RunConfig& cfg) {
  if (cfg.dims.empty())
    throw CLI::ValidationError("--dims", "factor sizes are required");
  std::optional<std::vector<double>> w;
  if (!cfg.weights.empty()) w = cfg.weights;
  return Algebra::make(cfg.dims, w);
}

std::string render(const std::vector<Report>& reports, const std::string& format) {
  if (format == "json") {
    if (reports.size() == 1) return report_to_json(reports[0]) + "\n";
    std::string out = "[\n";
    for (std::size_t i = 0; i < reports.size(); ++i) {
      std::string one = report_to_json(reports[i]);
      // indent each report by two spaces inside the array
      std::string indented = "  ";
      for (const char c : one) {
        indented += c;
        if (c == '\n') indented += "  ";
      }
      out += indented;
      out += i + 1 < reports.size() ? ",\n" : "\n";
    }
    out += "]\n";
    return out;
  }
  std::string out;
  for (const auto& r : reports) {
    out += report_to_text(r);
    out += "\n";
  }
  return out;
}

int emit(const std::vector<Report>& reports, const RunConfig& cfg) {
  const std::string text = render(reports, cfg.format);
  if (!cfg.out.empty()) {
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) {
      std::cerr << "error: cannot write " << cfg.out << "\n";
      return 1;
    }
    f << text;
    for (const auto& r : reports)
      std::cout << r.claim << ": " << to_string(r.status) << "\n";
  } else {
    std::cout << text;
  }
  bool refuted = false, inconclusive = false;
  for (const auto& r : reports) {
    refuted = refuted || r.status == Status::Refuted;
    inconclusive = inconclusive || r.status == Status::Inconclusive;
  }
  if (refuted) return 2;
  if (inconclusive) return 3;
  return 0;
}

std::vector<Report> run_claims(const Algebra& A, const std::vector<const ClaimSpec*>& claims,
                               const VerifyOptions& opt) {
  std::vector<Report> reports(claims.size());
  const int cap = thread_cap();
  const int pool = std::max(1, std::min<int>(static_cast<int>(claims.size()), cap));
  kernels::set_threads(std::max(1, cap / pool));
  if (pool == 1) {
    for (std::size_t i = 0; i < claims.size(); ++i) reports[i] = claims[i]->run(A, opt);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    for (int t = 0; t < pool; ++t)
      workers.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < claims.size(); i = next.fetch_add(1))
          reports[i] = claims[i]->run(A, opt);
      });
    for (auto& w : workers) w.join();
  }
  return reports;
}

int cmd_verify(const RunConfig& cfg) {
  const Algebra A = make_algebra_checked(cfg);
  std::vector<const ClaimSpec*> selected;
  if (cfg.claims.empty() ||
      (cfg.claims.size() == 1 && cfg.claims[0] == "all")) {
    for (const auto& c : claim_registry())
      if (c.applicable(A.dims())) selected.push_back(&c);
  } else {
    for (const auto& name : cfg.claims) {
      const ClaimSpec* c = find_claim(name);
      if (c == nullptr) {
        std::cerr << "error: unknown claim '" << name << "'. registered claims:\n";
        for (const auto& r : claim_registry()) std::cerr << "  " << r.name << "\n";
        return 1;
      }
      if (!c->applicable(A.dims())) {
        std::cerr << "error: claim '" << name << "' is not applicable to the given dims\n";
        return 1;
      }
      selected.push_back(c);
    }
  }
  VerifyOptions opt;
  opt.seed = cfg.seed;
  opt.tol = cfg.tol;
  return emit(run_claims(A, selected, opt), cfg);
}

int cmd_decompose(const RunConfig& cfg) {
  const Algebra A = make_algebra_checked(cfg);
  if (!find_claim("decomposition")->applicable(A.dims())) {
    std::cerr << "error: decompose needs a single factor with 2 <= n <= 5\n";
    return 1;
  }
  VerifyOptions opt;
  opt.seed = cfg.seed;
  opt.tol = cfg.tol;
  kernels::set_threads(thread_cap());
  return emit({verify_decomposition(A, opt)}, cfg);
}

int cmd_delta(const RunConfig& cfg) {
  const Algebra A = make_algebra_checked(cfg);
  if (!find_claim("delta")->applicable(A.dims())) {
    std::cerr << "error: delta needs product of n_i^2 <= 40\n";
    return 1;
  }
  VerifyOptions opt;
  opt.seed = cfg.seed;
  opt.tol = cfg.tol;
  kernels::set_threads(thread_cap());
  Tensor delta;
  const Report rep = compute_delta(A, opt, &delta);
  // print the non-zero coefficients of the computed projection
  if (cfg.format == "text") {
    std::cout << "delta coefficients (E_ab ⊗ E_cd with |value| > 1e-12):\n";
    for (int i = 0; i < A.factor_count(); ++i)
      for (int j = 0; j < A.factor_count(); ++j)
        for (int a = 0; a < A.dim(i); ++a)
          for (int b = 0; b < A.dim(i); ++b)
            for (int c = 0; c < A.dim(j); ++c)
              for (int d = 0; d < A.dim(j); ++d) {
                const cplx v =
                    delta.c[static_cast<std::size_t>(A.tensor_index(i, j, a, b, c, d))];
                if (std::abs(v) > 1e-12)
                  std::cout << "  [" << i + 1 << "," << j + 1 << "] E" << a + 1 << b + 1
                            << " ⊗ E" << c + 1 << d + 1 << " : " << v.real()
                            << (v.imag() >= 0 ? "+" : "") << v.imag() << "i\n";
              }
  }
  return emit({rep}, cfg);
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"desk-scale verifier for quantum-inequality span and ideal identities "
               "on multi-matrix algebras"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string config_path;

  CLI::App* verify = app.add_subcommand("verify", "run claim verifications");
  verify->add_option("--claim", cfg.claims, "claim id (repeatable), or 'all'");
  add_common_options(verify, cfg, config_path);

  CLI::App* decompose = app.add_subcommand("decompose", "representation decomposition report");
  add_common_options(decompose, cfg, config_path);

  CLI::App* delta = app.add_subcommand("delta", "compute the equality projection");
  add_common_options(delta, cfg, config_path);

  CLI::App* list = app.add_subcommand("list-claims", "print the registered claim ids");

  try {
    app.parse(argc, argv);
    const CLI::App* active = verify->parsed() ? verify
                             : decompose->parsed() ? static_cast<CLI::App*>(decompose)
                             : delta->parsed() ? static_cast<CLI::App*>(delta)
                                               : nullptr;
    if (!config_path.empty() && active != nullptr)
      merge_config_file(config_path, cfg, *active);

    if (list->parsed()) {
      for (const auto& c : claim_registry())
        std::cout << c.name << "  -  " << c.summary << "\n";
      return 0;
    }
    cfg.tol.validate();
    if (verify->parsed()) return cmd_verify(cfg);
    if (decompose->parsed()) return cmd_decompose(cfg);
    if (delta->parsed()) return cmd_delta(cfg);
    return 1;
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace inq
