// mdm: command-line front end for sampling, exact means, spectra and verification.
// Exit codes: 0 success, 1 computational failure, 2 usage error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mdm/analytic.hpp"
#include "mdm/continued_fraction.hpp"
#include "mdm/exact_oracle.hpp"
#include "mdm/fixtures.hpp"
#include "mdm/json_io.hpp"
#include "mdm/mc_mean.hpp"
#include "mdm/measures.hpp"
#include "mdm/spectral.hpp"
#include "mdm/verify.hpp"

namespace {

using namespace mdm;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Json read_json_arg(const std::string& text, const std::string& flag) {
  std::string body = text;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw UsageError(flag + ": empty value");
  if (text[first] != '{' && text[first] != '[') {
    std::ifstream in(text);
    if (!in) throw UsageError(flag + ": cannot open '" + text + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    body = ss.str();
  }
  try {
    return Json::parse(body);
  } catch (const Json::parse_error& e) {
    throw UsageError(flag + ": invalid JSON (" + e.what() + ")");
  }
}

void emit(const Json& j, const std::string& out) {
  const std::string text = j.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw UsageError("--out: cannot write '" + out + "'");
  f << text;
  if (!f) throw Error("--out: write failed for '" + out + "'");
}

Rational parse_q(const std::string& s, const std::string& flag) {
  try {
    return parse_rational(s);
  } catch (const std::exception&) {
    throw UsageError(flag + ": not a rational number: '" + s + "'");
  }
}

Json spectrum_json(const std::vector<ExactEigenvalue>& s) {
  Json arr = Json::array();
  for (const auto& e : s) arr.push_back({{"value", to_string(e.value)}, {"multiplicity", e.multiplicity}});
  return arr;
}

// Fixture ids plus dirichlet.* families evaluated at q.
Fixture load_fixture(const std::string& id, const Rational& q) {
  if (id.rfind("dirichlet.", 0) == 0) return dirichlet_family(id, q);
  return fixture(id);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Moments of random density matrices: Monte Carlo, exact Haar averages and verification"};
  app.require_subcommand(1);

  std::string out;
  auto add_out = [&out](CLI::App* sub) { sub->add_option("--out", out, "Output file (default: stdout)"); };

  // sample
  std::string measure_arg;
  std::size_t count = 1;
  std::uint64_t seed = 0;
  auto* sample = app.add_subcommand("sample", "Draw density matrices from a measure");
  sample->add_option("--measure", measure_arg, "Measure JSON (file path or inline)")->required();
  sample->add_option("--count", count, "Number of draws")->check(CLI::PositiveNumber);
  sample->add_option("--seed", seed, "Random seed");
  add_out(sample);

  // mean
  int m = 2;
  std::size_t samples = 0;
  unsigned workers = 0;
  auto* mean = app.add_subcommand("mean", "Monte Carlo estimate of E[rho^(x)m]");
  mean->add_option("--measure", measure_arg, "Measure JSON (file path or inline)")->required();
  mean->add_option("--m", m, "Tensor power")->required()->check(CLI::PositiveNumber);
  mean->add_option("--samples", samples, "Number of samples")->required();
  mean->add_option("--seed", seed, "Random seed");
  mean->add_option("--workers", workers, "Worker threads (default: MDM_WORKERS or hardware concurrency)");
  add_out(mean);

  // oracle
  std::size_t n = 2;
  std::vector<std::string> q_args{"0"};
  std::vector<std::size_t> factors;
  auto* oracle = app.add_subcommand("oracle", "Exact Haar/Dirichlet mean in rationals");
  auto* n_opt = oracle->add_option("--n", n, "Hilbert-space dimension")->check(CLI::PositiveNumber);
  oracle->add_option("--m", m, "Tensor power")->required()->check(CLI::PositiveNumber);
  oracle->add_option("--q", q_args, "Dirichlet parameter: one value, or one per eigenvalue or factor")->delimiter(',');
  oracle->add_option("--factors", factors, "Composite factor dimensions, e.g. 2,3")->delimiter(',')->excludes(n_opt);
  add_out(oracle);

  // spectrum
  std::string in_arg;
  double tol = 1e-9;
  auto* spectrum = app.add_subcommand("spectrum", "Clustered spectrum of a matrix JSON");
  spectrum->add_option("--in", in_arg, "Matrix JSON file")->required();
  spectrum->add_option("--tol", tol, "Cluster tolerance")->check(CLI::PositiveNumber);
  add_out(spectrum);

  // selection-rule
  std::string fixture_id;
  std::string fixture_q = "0";
  auto* selrule = app.add_subcommand("selection-rule", "Rational part of a fixture matrix and its exact spectrum");
  selrule->add_option("--fixture", fixture_id, "Fixture id")->required();
  selrule->add_option("--q", fixture_q, "q for dirichlet.* families");
  add_out(selrule);

  // subst-v
  double v = 0;
  auto* subst = app.add_subcommand("subst-v", "Fixture matrix with 1/pi replaced by 1/v");
  subst->add_option("--fixture", fixture_id, "Fixture id")->required();
  subst->add_option("--v", v, "Value substituted for pi")->required();
  subst->add_option("--q", fixture_q, "q for dirichlet.* families");
  add_out(subst);

  // ks
  double u = -2;
  auto* ks = app.add_subcommand("ks", "Eigenvalue/multiplicity table for the Bloch u-family");
  ks->add_option("--m", m, "Tensor power")->required()->check(CLI::PositiveNumber);
  ks->add_option("--u", u, "Family parameter (u < 1)")->required();
  add_out(ks);

  // verify
  std::string case_id;
  bool all = false;
  auto* verify_cmd = app.add_subcommand("verify", "Run verification cases");
  auto* case_opt = verify_cmd->add_option("--case", case_id, "Case id");
  auto* all_opt = verify_cmd->add_flag("--all", all, "Run every case");
  case_opt->excludes(all_opt);
  verify_cmd->add_option("--samples", samples, "Monte Carlo samples for MC cases (default: per case)");
  verify_cmd->add_option("--seed", seed, "Random seed");
  verify_cmd->add_option("--workers", workers, "Worker threads");
  add_out(verify_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*sample) {
      const auto spec = measure_from_json(read_json_arg(measure_arg, "--measure"));
      RandomStream rng(seed, 0);
      Json draws = Json::array();
      for (std::size_t i = 0; i < count; ++i) draws.push_back(to_json(sample_density(spec, rng).matrix()));
      emit({{"measure", to_json(spec)}, {"seed", seed}, {"samples", std::move(draws)}}, out);
    } else if (*mean) {
      const auto spec = measure_from_json(read_json_arg(measure_arg, "--measure"));
      const auto est = estimate_mean(spec, m, samples, seed, workers ? workers : default_workers());
      emit(to_json(est), out);
    } else if (*oracle) {
      std::vector<Rational> qs;
      for (const auto& s : q_args) qs.push_back(parse_q(s, "--q"));
      if (!factors.empty()) {
        if (qs.size() == 1) qs.assign(factors.size(), qs.front());
        if (qs.size() != factors.size()) throw UsageError("--q: give one value or one per factor");
        emit(to_json(composite_haar_mean(Scenario(factors, m), qs)), out);
      } else {
        if (qs.size() == 1) qs.assign(n, qs.front());
        if (qs.size() != n) throw UsageError("--q: give one value or one per eigenvalue");
        emit(to_json(haar_mean(qs, m)), out);
      }
    } else if (*spectrum) {
      std::ifstream f(in_arg);
      if (!f) throw UsageError("--in: cannot open '" + in_arg + "'");
      Json j;
      try {
        j = Json::parse(f);
      } catch (const Json::parse_error& e) {
        throw UsageError(std::string("--in: invalid JSON (") + e.what() + ")");
      }
      Json result;
      if (has_rational_entries(j)) {
        const auto rm = rational_matrix_from_json(j);
        result = to_json(decompose(rm.to_complex(), tol));
        result["exact"] = spectrum_json(exact_spectrum(rm, BigInt(10000000), tol));
      } else {
        const double herm = j.contains("stderr_max") ? std::max(1e-10, 10 * j.at("stderr_max").get<double>()) : 1e-10;
        result = to_json(decompose(complex_matrix_from_json(j), tol, herm));
      }
      emit(result, out);
    } else if (*selrule) {
      const auto fx = load_fixture(fixture_id, parse_q(fixture_q, "--q"));
      if (!fx.matrix) throw UsageError("--fixture: '" + fixture_id + "' has no matrix");
      const auto lim = selection_rule(*fx.matrix);
      Json j = to_json(lim);
      j["fixture"] = fixture_id;
      j["spectrum"] = spectrum_json(exact_spectrum(lim));
      emit(j, out);
    } else if (*subst) {
      const auto fx = load_fixture(fixture_id, parse_q(fixture_q, "--q"));
      if (!fx.matrix) throw UsageError("--fixture: '" + fixture_id + "' has no matrix");
      Json j = to_json(substitute_v(*fx.matrix, v));
      j["fixture"] = fixture_id;
      j["v"] = v;
      emit(j, out);
    } else if (*ks) {
      Json rows = Json::array();
      for (int d = 0; d <= m / 2; ++d) {
        const double lambda = ks_eigenvalue(m, d, u);
        Json row = {{"d", d}, {"lambda", lambda}, {"multiplicity", ks_multiplicity(m, d)}};
        if (const auto r = best_rational(lambda, BigInt(1000000), 1e-13)) row["lambda_rational"] = to_string(*r);
        rows.push_back(std::move(row));
      }
      emit({{"m", m}, {"u", u}, {"rows", std::move(rows)}}, out);
    } else if (*verify_cmd) {
      if (!all && case_id.empty()) throw UsageError("verify: give --case <id> or --all");
      const VerifyBudget budget{samples, seed, workers};
      std::vector<VerifyReport> reports;
      if (all) {
        for (const auto& c : verify_cases()) {
          reports.push_back(c.run(budget));
          std::cerr << reports.back().status << "  " << c.id << "\n";
        }
      } else {
        try {
          reports.push_back(verify(case_id, budget));
        } catch (const LookupError& e) {
          throw UsageError(std::string("--case: ") + e.what());
        }
      }
      Json arr = Json::array();
      bool failed = false;
      for (const auto& r : reports) {
        arr.push_back(to_json(r));
        failed = failed || r.failed();
      }
      emit(all ? arr : arr.front(), out);
      return failed ? 1 : 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const DimensionError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const LookupError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
