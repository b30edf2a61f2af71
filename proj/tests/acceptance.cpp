// Acceptance suite: one line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>

#include "mdm/analytic.hpp"
#include "mdm/exact_oracle.hpp"
#include "mdm/fixtures.hpp"
#include "mdm/mc_mean.hpp"
#include "mdm/spectral.hpp"
#include "mdm/verify.hpp"

using namespace mdm;
using verify_detail::same_spectrum;
using verify_detail::to_exact;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  std::vector<std::string> extra;  // printed under the criterion line

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

Rational R(long long p, long long q = 1) { return make_rational(p, q); }

std::string fmt(double x, int prec = 3) {
  std::ostringstream os;
  os.precision(prec);
  os << x;
  return os.str();
}

int failures = 0;

void criterion(int n, const std::string& title, double time_limit_s, const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.require(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (time_limit_s > 0) out.require(secs < time_limit_s, "runtime " + fmt(secs) + " s over " + fmt(time_limit_s) + " s");
  if (!out.ok) ++failures;
  std::cout << "[PRIMARY] criterion " << n << ": " << (out.ok ? "PASS" : "FAIL") << "  " << title << " (" << fmt(secs)
            << " s)";
  if (!out.detail.empty()) std::cout << "  " << out.detail;
  std::cout << "\n";
  for (const auto& line : out.extra) std::cout << "    " << line << "\n";
  std::cout.flush();
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

int main() {
  criterion(1, "exact oracle N=2 m=2 equals the published 4x4 matrix", 1, [](Outcome& o) {
    const auto m = haar_mean(2, 2).mean;
    o.require(m == fixture("n2m2").matrix->rational_part(), "matrix differs");
    o.require(m(0, 0) == R(5, 18) && m(1, 1) == R(2, 9) && m(1, 2) == R(1, 18) && m(0, 3) == 0, "entry values");
  });

  criterion(2, "exact N=2 spectra for m=2..6", 5, [](Outcome& o) {
    const char* ids[] = {"n2m2", "n2m3", "n2m4.eigs", "n2m5.eigs", "n2m6.eigs"};
    for (int m = 2; m <= 6; ++m) {
      const auto got = exact_spectrum(haar_mean(2, m).mean);
      o.require(same_spectrum(got, to_exact(fixture(ids[m - 2]).spectrum)), "m=" + std::to_string(m));
      o.extra.push_back("m=" + std::to_string(m) + " " + verify_detail::format(got));
    }
  });

  criterion(3, "N=5 m=2 diagonal entries 2/45 and 7/180", 5, [](Outcome& o) {
    const auto m = haar_mean(5, 2).mean;
    o.require(m(0, 0) == R(2, 45), "(1,1) = " + to_string(m(0, 0)));
    o.require(m(1, 1) == R(7, 180), "(2,2) = " + to_string(m(1, 1)));
  });

  criterion(4, "selection rule reproduces the exact oracle and limit spectra", 10, [](Outcome& o) {
    const auto lim = selection_rule(*fixture("n3m2").matrix);
    o.require(lim == haar_mean(3, 2).mean, "9x9 rational part differs from the oracle");
    o.require(same_spectrum(exact_spectrum(lim), {{R(1, 8), 6}, {R(1, 12), 3}}), "9x9 limit spectrum");
    const auto lim3 = selection_rule(*fixture("n3m3.partial").matrix);
    const auto s3 = exact_spectrum(lim3);
    o.require(same_spectrum(s3, {{R(31, 600), 10}, {R(7, 240), 16}, {R(1, 60), 1}}), "27x27 limit spectrum");
    o.extra.push_back("27x27 limit " + verify_detail::format(s3));
  });

  criterion(5, "Dirichlet families match the exact oracle at q = 0 and 1/2", 5, [](Outcome& o) {
    for (const auto& q : {R(0), R(1, 2)}) {
      const std::string tag = "q=" + to_string(q);
      const auto fam = selection_rule(*dirichlet_family("dirichlet.n3m2", q).matrix);
      const auto ora = haar_mean(3, 2, q).mean;
      o.require(fam == ora, tag + ": 9x9 rational part");
      const Rational a = 4 - 3 * q;
      o.require(ora(0, 0) == (3 - 2 * q) / (6 * a) && ora(1, 1) == (5 - 4 * q) / (12 * a), tag + ": 9x9 diagonals");
      const Rational b = 3 - 2 * q;
      o.require(same_spectrum(exact_spectrum(haar_mean(2, 2, q).mean), {{(1 - q) / (2 * b), 1}, {(5 - 3 * q) / (6 * b), 3}}),
                tag + ": 4x4 spectrum");
      o.require(same_spectrum(exact_spectrum(haar_mean(2, 3, q).mean), {{(2 - q) / (4 * b), 4}, {(1 - q) / (4 * b), 4}}),
                tag + ": 8x8 spectrum");
      o.require(same_spectrum(exact_spectrum(haar_mean(2, 2, q).mean), to_exact(dirichlet_family("dirichlet.n2m2", q).spectrum)),
                tag + ": family table n2m2");
      o.require(same_spectrum(exact_spectrum(haar_mean(2, 3, q).mean), to_exact(dirichlet_family("dirichlet.n2m3", q).spectrum)),
                tag + ": family table n2m3");
    }
  });

  auto mc = [](std::size_t n, std::size_t samples) {
    return [n, samples](Outcome& o) {
      const auto t0 = std::chrono::steady_clock::now();
      const auto est = estimate_mean(MeasureSpec::zhsl(n), 2, samples, 20240601, default_workers());
      const auto rep = convergence_report(est, haar_mean(n, 2).mean.to_complex());
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      o.require(rep.entries_over_gate == 0, std::to_string(rep.entries_over_gate) + " entries over 5 stderr");
      o.require(rep.max_abs_delta <= 3e-3, "max |delta| " + fmt(rep.max_abs_delta));
      o.require(secs < 60, "N=" + std::to_string(n) + " took " + fmt(secs) + " s");
      o.extra.push_back("N=" + std::to_string(n) + ": " + std::to_string(samples) + " samples, max z " + fmt(rep.max_z) +
                        ", max |delta| " + fmt(rep.max_abs_delta) + ", " + fmt(secs) + " s, " +
                        std::to_string(est.workers) + " workers");
    };
  };
  criterion(6, "Monte Carlo converges to the exact oracle", 0, [&](Outcome& o) {
    mc(2, 1000000)(o);
    mc(3, 200000)(o);
  });

  criterion(7, "composite [2,3] m=2 spectrum", 10, [](Outcome& o) {
    const auto s = exact_spectrum(composite_haar_mean(Scenario({2, 3}, 2), std::vector<Rational>{0, 0}).mean);
    o.require(same_spectrum(s, {{R(1, 72), 3}, {R(1, 48), 6}, {R(5, 216), 9}, {R(5, 144), 18}}), verify_detail::format(s));
  });

  criterion(8, "published eigenvectors", 0, [](Outcome& o) {
    const auto f = fixture("n3m2.vecs");
    const auto at_pi = substitute_v(*f.matrix, std::numbers::pi);
    const auto lim = selection_rule(*f.matrix).to_complex();
    double worst = 0;
    for (const auto& set : f.eigenvectors)
      for (const auto& v : set.vectors) {
        const double r = set.on_limit ? eigenvector_check(lim, v.cast<Complex>(), 0.125)
                                      : eigenvector_check(at_pi, v.cast<Complex>(), set.eigenvalue.value());
        worst = std::max(worst, r);
        o.require(r <= 1e-12, set.label + " residual " + fmt(r));
      }
    const auto g = fixture("n2m3");
    const auto m8 = g.matrix->rational_part().to_complex();
    for (const auto& set : g.eigenvectors)
      for (const auto& v : set.vectors) {
        const double r = eigenvector_check(m8, v.cast<Complex>(), to_double(set.eigenvalue.r));
        worst = std::max(worst, r);
        o.require(r <= 1e-12, set.label + " residual " + fmt(r));
      }
    o.extra.push_back("largest residual " + fmt(worst));
  });

  criterion(9, "Bloch u=-2 and Haar means share eigenspaces for m=2,3,4", 120, [](Outcome& o) {
    const auto r = verify("eigenspaces.bloch", {1000000, 20240601, 0});
    o.require(r.status == "PASS", r.notes.empty() ? "failed" : r.notes.front());
    o.extra = r.notes;
  });

  criterion(10, "monotone-metric function checks", 0, [](Outcome& o) {
    const auto r = verify("monotone");
    o.require(r.status == "PASS", r.notes.empty() ? "failed" : r.notes.front());
    std::vector<double> grid(1000);
    for (int i = 0; i < 1000; ++i) grid[i] = std::pow(10.0, -2 + 3.0 * i / 999);
    o.extra.push_back("u=-2 argmin " + fmt(*monotone_scan(-2, grid).argmin, 12));
  });

  criterion(11, "maximal-metric marginal moments", 5, [](Outcome& o) {
    const auto e = maximal_marginal_expectations(64);
    o.require(std::abs(e.normalization - 1) <= 1e-6, "normalization " + fmt(e.normalization, 10));
    o.require(std::abs(e.a - 3.0 / 7) <= 1e-6, "<a> " + fmt(e.a, 10));
    o.require(std::abs(e.b - 2.0 / 7) <= 1e-6, "<b> " + fmt(e.b, 10));
    o.require(std::abs(e.c - 2.0 / 7) <= 1e-6, "<c> " + fmt(e.c, 10));
  });

  criterion(12, "mean output is byte-identical across runs", 0, [](Outcome& o) {
    namespace fs = std::filesystem;
    const auto dir = fs::temp_directory_path() / "mdm_acceptance_12";
    fs::create_directories(dir);
    const std::string base = std::string("\"") + MDM_CLI_PATH +
                             "\" mean --measure '{\"type\":\"zhsl\",\"n\":3,\"q\":[0,0,0]}' --m 2 --samples 50000 "
                             "--seed 11 --workers 3 --out ";
    std::string texts[2];
    for (int i = 0; i < 2; ++i) {
      const auto path = dir / ("run" + std::to_string(i) + ".json");
      const int rc = std::system((base + "\"" + path.string() + "\"").c_str());
      o.require(rc == 0, "run " + std::to_string(i) + " exited with " + std::to_string(rc));
      texts[i] = slurp(path);
    }
    o.require(!texts[0].empty() && texts[0] == texts[1], "outputs differ");
    o.extra.push_back(std::to_string(texts[0].size()) + " bytes per run");
    fs::remove_all(dir);
  });

  criterion(13, "report-mode comparisons run and emit reports", 0, [](Outcome& o) {
    for (const char* id : {"mc.n3m2.pi", "n4m2.vs.oracle", "n12.limit.vs.factorization", "n4m3.vs.oracle"}) {
      const auto r = verify(id, {0, 20240601, 0});
      o.require(r.status == "REPORT" && !r.notes.empty(), std::string(id) + " did not produce a report");
      o.extra.push_back(std::string(id) + ":");
      for (const auto& n : r.notes) o.extra.push_back("  " + n);
    }
    const auto n4 = verify("n4m2.vs.oracle");
    o.require(std::find(n4.notes.begin(), n4.notes.end(), "antisymmetric sextet 1/20 agrees exactly") != n4.notes.end(),
              "sextet 1/20 does not match");
  });

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << "\n";
  return failures == 0 ? 0 : 1;
}
