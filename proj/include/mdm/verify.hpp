#pragma once

// Named verification cases. Gated cases must pass; report cases document known
// disagreements between published data and the exact Haar average and always
// finish with status REPORT.

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "mdm/analytic.hpp"
#include "mdm/exact_oracle.hpp"
#include "mdm/fixtures.hpp"
#include "mdm/mc_mean.hpp"
#include "mdm/measures.hpp"
#include "mdm/spectral.hpp"

namespace mdm {

struct VerifyBudget {
  std::size_t samples = 0;  // 0: the case's own default
  std::uint64_t seed = 0;
  unsigned workers = 0;     // 0: default_workers()
};

struct VerifyReport {
  std::string case_id;
  std::string status;  // PASS, FAIL or REPORT
  bool gated = true;
  double max_z = 0;
  double max_abs_delta = 0;
  std::vector<std::string> notes;

  bool failed() const { return status == "FAIL"; }
  friend bool operator==(const VerifyReport&, const VerifyReport&) = default;
};

struct VerifyCase {
  std::string id;
  bool gated = true;
  bool monte_carlo = false;
  std::function<VerifyReport(const VerifyBudget&)> run;
};

namespace verify_detail {

using fixtures_detail::R;

/// Collects check outcomes for one case.
class Checker {
 public:
  Checker(std::string id, bool gated) {
    rep_.case_id = std::move(id);
    rep_.gated = gated;
  }

  void check(bool ok, const std::string& what) {
    if (!ok) {
      failed_ = true;
      rep_.notes.push_back("FAILED: " + what);
    }
  }
  void note(const std::string& text) { rep_.notes.push_back(text); }
  void delta(double d) { rep_.max_abs_delta = std::max(rep_.max_abs_delta, d); }
  void z(double v) { rep_.max_z = std::max(rep_.max_z, v); }

  VerifyReport finish() {
    rep_.status = !rep_.gated ? "REPORT" : failed_ ? "FAIL" : "PASS";
    return rep_;
  }

 private:
  VerifyReport rep_;
  bool failed_ = false;
};

inline double max_abs_diff(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return std::numeric_limits<double>::infinity();
  double d = 0;
  for (Index r = 0; r < a.rows(); ++r)
    for (Index c = 0; c < a.cols(); ++c) d = std::max(d, std::abs(to_double(a(r, c) - b(r, c))));
  return d;
}

inline std::string format(const std::vector<ExactEigenvalue>& s) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? ", " : "") << to_string(s[i].value) << " x" << s[i].multiplicity;
  os << "}";
  return os.str();
}

inline std::vector<ExactEigenvalue> to_exact(const std::vector<SpectrumEntry>& s) {
  std::map<Rational, std::size_t> merged;
  for (const auto& e : s) {
    if (!e.value.is_rational()) throw Error("spectrum contains irrational values");
    merged[e.value.r] += e.multiplicity;
  }
  std::vector<ExactEigenvalue> out;
  for (const auto& [v, k] : merged) out.push_back({v, k});
  return out;
}

inline bool same_spectrum(std::vector<ExactEigenvalue> a, std::vector<ExactEigenvalue> b) {
  auto by_value = [](const ExactEigenvalue& x, const ExactEigenvalue& y) { return x.value < y.value; };
  std::sort(a.begin(), a.end(), by_value);
  std::sort(b.begin(), b.end(), by_value);
  return a == b;
}

/// Spectrum of a Kronecker product from factor spectra.
inline std::vector<ExactEigenvalue> product_spectrum(const std::vector<std::vector<ExactEigenvalue>>& factors) {
  std::map<Rational, std::size_t> acc{{Rational(1), 1}};
  for (const auto& f : factors) {
    std::map<Rational, std::size_t> next;
    for (const auto& [v, k] : acc)
      for (const auto& e : f) next[v * e.value] += k * e.multiplicity;
    acc = std::move(next);
  }
  std::vector<ExactEigenvalue> out;
  for (const auto& [v, k] : acc) out.push_back({v, k});
  return out;
}

/// Sorted eigenvalues with multiplicities expanded.
inline std::vector<double> expanded_values(const std::vector<SpectrumEntry>& s, double v = std::numbers::pi) {
  std::vector<double> out;
  for (const auto& e : s)
    for (std::size_t i = 0; i < e.multiplicity; ++i) out.push_back(e.value.value(v));
  std::sort(out.begin(), out.end());
  return out;
}

inline double max_sorted_gap(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

/// Real roots Y of sum_i c_i Y^i via the companion matrix.
inline std::vector<double> polynomial_roots(const std::vector<BigInt>& coeffs) {
  const auto deg = static_cast<Index>(coeffs.size()) - 1;
  const double lead = coeffs.back().convert_to<double>();
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(deg, deg);
  for (Index i = 1; i < deg; ++i) comp(i, i - 1) = 1;
  for (Index i = 0; i < deg; ++i) comp(i, deg - 1) = -coeffs[static_cast<std::size_t>(i)].convert_to<double>() / lead;
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp);
  std::vector<double> out;
  for (Index i = 0; i < deg; ++i) {
    const auto z = es.eigenvalues()(i);
    if (std::abs(z.imag()) <= 1e-9 * std::max(1.0, std::abs(z.real()))) out.push_back(z.real());
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// lambda values from an even polynomial in y = (center - scale lambda) pi.
inline std::vector<double> polynomial_eigenvalues(const EvenPolynomial& p) {
  std::vector<double> out;
  const double c = to_double(p.center), s = to_double(p.scale);
  for (double yy : polynomial_roots(p.coeffs)) {
    if (yy < 0) continue;
    for (double y : {-std::sqrt(yy), std::sqrt(yy)}) out.push_back((c - y / std::numbers::pi) / s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline unsigned workers_of(const VerifyBudget& b) { return b.workers ? b.workers : default_workers(); }
inline std::size_t samples_of(const VerifyBudget& b, std::size_t fallback) { return b.samples ? b.samples : fallback; }

inline void mc_against(Checker& ck, const MeasureSpec& spec, int m, const ComplexMatrix& reference,
                       const VerifyBudget& budget, std::size_t default_samples, double max_delta) {
  const auto n = samples_of(budget, default_samples);
  const auto est = estimate_mean(spec, m, n, budget.seed, workers_of(budget));
  const auto rep = convergence_report(est, reference);
  ck.z(rep.max_z);
  ck.delta(rep.max_abs_delta);
  ck.note("samples " + std::to_string(n) + ", max stderr " + std::to_string(est.stderr_max()));
  ck.check(rep.entries_over_gate == 0, std::to_string(rep.entries_over_gate) + " entries with z > 5");
  if (max_delta > 0) ck.check(rep.max_abs_delta <= max_delta, "max |delta| above " + std::to_string(max_delta));
  ck.check(rep.zero_pattern_agrees(), std::to_string(rep.zero_pattern_mismatches) + " zero-pattern mismatches");
  const double herm = hermiticity_defect(est.mean);
  const double tr = std::abs(est.mean.trace() - Complex(1.0));
  ck.check(herm <= 5 * est.stderr_max() + 1e-12, "estimate not Hermitian within 5 stderr");
  ck.check(tr <= 5 * est.stderr_max() + 1e-12, "estimate trace not 1 within 5 stderr");
}

/// Clustered spectrum of each replica; pooled mean and batch standard error
/// of every cluster value. Replica r uses seed + r.
struct ReplicaSpectrum {
  ComplexMatrix pooled;
  double max_stderr = 0;
  std::vector<double> values;
  std::vector<double> value_stderr;
};

inline ReplicaSpectrum replica_spectrum(const MeasureSpec& spec, int m, std::size_t per_replica, int replicas,
                                        const VerifyBudget& budget, const SpectralDecomposition& reference) {
  ReplicaSpectrum out;
  const auto k = reference.clusters.size();
  std::vector<std::vector<double>> vals(k);
  for (int r = 0; r < replicas; ++r) {
    const auto est = estimate_mean(spec, m, per_replica, budget.seed + static_cast<std::uint64_t>(r), workers_of(budget));
    out.pooled = r == 0 ? est.mean : ComplexMatrix(out.pooled + est.mean);
    out.max_stderr = std::max(out.max_stderr, est.stderr_max());
    for (std::size_t c = 0; c < k; ++c) {
      const auto& b = reference.clusters[c].basis;
      vals[c].push_back((b.adjoint() * est.mean * b).trace().real() / static_cast<double>(b.cols()));
    }
  }
  out.pooled /= static_cast<double>(replicas);
  out.max_stderr /= std::sqrt(static_cast<double>(replicas));
  for (auto& v : vals) {
    double mean = 0, ss = 0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    for (double x : v) ss += (x - mean) * (x - mean);
    out.values.push_back(mean);
    out.value_stderr.push_back(std::sqrt(ss / static_cast<double>(v.size() - 1) / static_cast<double>(v.size())));
  }
  return out;
}

}  // namespace verify_detail

inline std::vector<VerifyCase> verify_cases() {
  using namespace verify_detail;
  std::vector<VerifyCase> cases;
  auto add = [&cases](std::string id, bool gated, bool mc, std::function<void(Checker&, const VerifyBudget&)> body) {
    cases.push_back({id, gated, mc, [id, gated, body](const VerifyBudget& b) {
                       Checker ck(id, gated);
                       try {
                         body(ck, b);
                       } catch (const std::exception& e) {
                         ck.check(false, std::string("exception: ") + e.what());
                       }
                       return ck.finish();
                     }});
  };

  add("n2m2.exact", true, false, [](Checker& ck, const VerifyBudget&) {
    const auto o = haar_mean(2, 2).mean;
    const auto f = fixture("n2m2").matrix->rational_part();
    ck.delta(max_abs_diff(o, f));
    ck.check(o == f, "oracle differs from the published 4x4 mean");
  });

  add("n2m3.exact", true, false, [](Checker& ck, const VerifyBudget&) {
    const auto o = haar_mean(2, 3).mean;
    const auto f = fixture("n2m3").matrix->rational_part();
    ck.delta(max_abs_diff(o, f));
    ck.check(o == f, "oracle differs from the published 8x8 mean");
  });

  add("n2.spectra", true, false, [](Checker& ck, const VerifyBudget&) {
    const char* ids[] = {"n2m2", "n2m3", "n2m4.eigs", "n2m5.eigs", "n2m6.eigs"};
    for (int m = 2; m <= 6; ++m) {
      const auto got = exact_spectrum(haar_mean(2, m).mean);
      const auto want = to_exact(fixture(ids[m - 2]).spectrum);
      ck.note("m=" + std::to_string(m) + ": " + format(got));
      ck.check(same_spectrum(got, want), "m=" + std::to_string(m) + " spectrum differs from " + format(want));
      std::vector<std::size_t> mult, ks;
      for (const auto& e : got) mult.push_back(e.multiplicity);
      for (int d = 0; d <= m / 2; ++d) ks.push_back(ks_multiplicity(m, d));
      std::sort(mult.begin(), mult.end());
      std::sort(ks.begin(), ks.end());
      ck.check(mult == ks, "m=" + std::to_string(m) + " multiplicities differ from the spin-sector dimensions");
    }
  });

  add("n3m2.limit", true, false, [](Checker& ck, const VerifyBudget&) {
    const auto f = fixture("n3m2");
    const auto lim = selection_rule(*f.matrix);
    const auto o = haar_mean(3, 2).mean;
    ck.delta(max_abs_diff(lim, o));
    ck.check(lim == o, "selection rule differs from the exact oracle");
    const auto s = exact_spectrum(lim);
    ck.note("limit spectrum " + format(s));
    ck.check(same_spectrum(s, to_exact(f.limit_spectrum)), "limit spectrum is not {1/8 x6, 1/12 x3}");
  });

  add("n3m2.spectrum", true, false, [](Checker& ck, const VerifyBudget&) {
    const auto f = fixture("n3m2");
    const auto m = substitute_v(*f.matrix, std::numbers::pi);
    const auto eig = hermitian_eig(m);
    std::vector<double> got(eig.values.data(), eig.values.data() + eig.values.size());
    const auto want = expanded_values(f.spectrum);
    const double d = max_sorted_gap(got, want);
    ck.delta(d);
    ck.check(d <= 1e-12, "eigenvalues differ from the closed forms");
    auto mult = decompose(m, 1e-9).multiplicities();
    std::sort(mult.begin(), mult.end());
    ck.check(mult == std::vector<std::size_t>{1, 1, 1, 1, 2, 3}, "cluster multiplicities are not (3,2,1,1,1,1)");
    ck.check(f.matrix->is_symmetric(), "fixture is not symmetric");
    const std::size_t dims[] = {3, 3};
    for (std::size_t keep : {0, 1}) {
      const std::size_t k[] = {keep};
      const auto red = partial_trace(m, std::span<const std::size_t>(dims), std::span<const std::size_t>(k));
      const double dd = max_abs(red - ComplexMatrix::Identity(3, 3) / 3.0);
      ck.delta(dd);
      ck.check(dd <= 1e-14, "partial trace is not I/3");
    }
  });

  add("n3m2.vecs", true, false, [](Checker& ck, const VerifyBudget&) {
    const auto f = fixture("n3m2.vecs");
    const auto at_pi = substitute_v(*f.matrix, std::numbers::pi);
    const auto limit = selection_rule(*f.matrix).to_complex();
    ComplexMatrix all(9, 0);
    for (const auto& set : f.eigenvectors) {
      for (const auto& v : set.vectors) {
        const double res = eigenvector_check(set.on_limit ? limit : at_pi, v.cast<Complex>(),
                                             set.on_limit ? to_double(set.eigenvalue.r) : set.eigenvalue.value());
        ck.delta(res);
        ck.check(res <= 1e-12, set.label + " residual " + std::to_string(res));
        if (!set.on_limit) {
          for (double vv : {1.0, 10.0}) {
            const double r2 = eigenvector_check(substitute_v(*f.matrix, vv), v.cast<Complex>(), set.eigenvalue.value(vv));
            ck.check(r2 <= 1e-10, set.label + " residual at v=" + std::to_string(vv));
          }
          all.conservativeResize(9, all.cols() + 1);
          all.col(all.cols() - 1) = v.cast<Complex>();
        }
      }
    }
    const double orth = max_abs(all.adjoint() * all - ComplexMatrix::Identity(all.cols(), all.cols()));
    ck.check(all.cols() == 9 && orth <= 1e-12, "the nine listed vectors are not orthonormal");
  });

  add("n3m2.subst_v", true, false, [](Checker& ck, const VerifyBudget&) {
    const auto f = fixture("n3m2");
    const double s2 = std::numbers::sqrt2;
    for (double v : {std::sqrt(331.0) / (54 * s2), 7 / (54 * s2)}) {
      const auto eig = hermitian_eig(substitute_v(*f.matrix, v));
      int n12 = 0, n6 = 0;
      for (Index i = 0; i < eig.values.size(); ++i) {
        n12 += std::abs(eig.values(i) - 1.0 / 12) <= 1e-12;
        n6 += std::abs(eig.values(i) - 1.0 / 6) <= 1e-12;
      }
      ck.check(n12 == 4 && n6 == 1, "v=" + std::to_string(v) + " does not send two values to 1/12 and 1/6");
    }
    const double v0 = std::sqrt(331.0) / (162 * s2);
    const double lo = hermitian_eig(substitute_v(*f.matrix, v0)).values.minCoeff();
    ck.check(std::abs(lo) <= 1e-12, "smallest eigenvalue at the positivity threshold is not 0");
    const double d = max_abs(substitute_v(*f.matrix, 1e12) - selection_rule(*f.matrix).to_complex());
    ck.delta(d);
    ck.check(d <= 1e-10, "large-v limit differs from the selection rule");
  });

  add("n3m3.limit", true, false, [](Checker& ck, const VerifyBudget&) {
    const auto f = fixture("n3m3.partial");
    const auto lim = selection_rule(*f.matrix);
    const auto o = haar_mean(3, 3).mean;
    ck.delta(max_abs_diff(lim, o));
    ck.check(lim == o, "rational part differs from the exact oracle");
    const auto s = exact_spectrum(lim);
    ck.note("limit spectrum " + format(s));
    ck.check(same_spectrum(s, to_exact(f.limit_spectrum)), "limit spectrum differs");
    const auto& iso = f.eigenvectors.front();
    const double res = eigenvector_check(lim.to_complex(), iso.vectors.front().cast<Complex>(), to_double(iso.eigenvalue.r));
    ck.check(res <= 1e-12, "isolated 1/60 eigenvector residual " + std::to_string(res));
    // diagonal pattern and rational off-diagonal counts as described
    std::map<Rational, int> diag, off;
    for (Index i = 0; i < 27; ++i) ++diag[lim(i, i)];
    for (Index i = 0; i < 27; ++i)
      for (Index j = 0; j < 27; ++j)
        if (i != j) ++off[lim(i, j)];
    ck.check(diag[R(31, 600)] == 3 && diag[R(11, 300)] == 18 && diag[R(37, 1200)] == 6, "diagonal counts");
    ck.check(off[R(3, 400)] == 36 && off[R(7, 1200)] == 18 && off[R(1, 600)] == 12, "rational off-diagonal counts");
  });

  add("n3m3.polynomials", true, false, [](Checker& ck, const VerifyBudget&) {
    const auto f = fixture("n3m3.partial");
    std::vector<SpectrumEntry> paired, extremes;
    for (const auto& e : f.spectrum) {
      if (e.value.is_rational()) continue;
      (e.value.r == R(7, 240) ? paired : extremes).push_back(e);
    }
    const auto r1 = polynomial_eigenvalues(f.polynomials[0]);
    const double d1 = max_sorted_gap(r1, expanded_values(paired));
    ck.delta(d1);
    ck.check(d1 <= 1e-10, "sextic roots differ from the paired closed forms");
    const auto r2 = polynomial_eigenvalues(f.polynomials[1]);
    const double d2 = max_sorted_gap(r2, f.decimals);
    ck.check(d2 <= 5e-7, "octic roots differ from the listed decimals by " + std::to_string(d2));
    const auto ext = expanded_values(extremes);
    ck.check(r2.size() == 8 && std::abs(r2.front() - ext.front()) <= 1e-10 && std::abs(r2.back() - ext.back()) <= 1e-10,
             "octic extreme roots differ from the closed forms");
    std::size_t rational = 0;
    for (const auto& e : f.spectrum)
      if (e.value.is_rational()) rational += e.multiplicity;
    ck.check(rational == 7 && r1.size() == 6 && r2.size() == 8 && r1.size() + r2.size() + rational + 6 == 27, "eigenvalue count is not 7 + 6 + 8 + 6");
    ck.note("the remaining six eigenvalues have no published closed form");
  });

  add("n3m4.diag", true, false, [](Checker& ck, const VerifyBudget&) {
    const auto f = fixture("n3m4.partial");
    const auto o = haar_mean(3, 4).mean;
    std::map<Rational, std::size_t> diag;
    for (Index i = 0; i < o.rows(); ++i) ++diag[o(i, i)];
    for (const auto& dc : f.diagonal_counts)
      ck.check(diag[dc.value] == dc.count, "diagonal value " + to_string(dc.value) + " occurs " +
                                              std::to_string(diag[dc.value]) + " times");
    for (const auto& e : f.entries)
      ck.check(o(e.row, e.col) == e.value.r, "rational part of a listed 1/pi entry is not zero");
  });

  add("n5m2.diag", true, false, [](Checker& ck, const VerifyBudget&) {
    const auto o = haar_mean(5, 2).mean;
    for (const auto& e : fixture("n5m2.diag").entries) {
      ck.delta(std::abs(to_double(o(e.row, e.col) - e.value.r)));
      ck.check(o(e.row, e.col) == e.value.r, "entry (" + std::to_string(e.row + 1) + "," + std::to_string(e.col + 1) + ")");
    }
  });

  add("n6m2.limit", true, false, [](Checker& ck, const VerifyBudget&) {
    const auto o = composite_haar_mean(Scenario({2, 3}, 2), std::vector<Rational>{0, 0}).mean;
    const auto s = exact_spectrum(o);
    ck.note("composite spectrum " + format(s));
    ck.check(same_spectrum(s, to_exact(fixture("n6m2.eigs").limit_spectrum)), "composite spectrum differs");
    std::size_t zeros = 0;
    for (const auto& v : o.data()) zeros += v == 0;
    ck.note(std::to_string(zeros) + " of 1296 entries of the exact mean are zero");
  });

  add("n6m2.eigs", true, false, [](Checker& ck, const VerifyBudget&) {
    const auto f = fixture("n6m2.eigs");
    const auto tr = spectrum_trace(f.spectrum);
    ck.check(tr.rational == 1 && tr.irrational_cancels, "spectrum does not sum to 1");
    ck.check(spectrum_dimension(f.spectrum) == 36, "spectrum dimension is not 36");
    std::vector<double> irr;
    for (const auto& e : f.spectrum)
      if (!e.value.is_rational()) irr.push_back(e.value.value());
    std::sort(irr.begin(), irr.end());
    const double d = max_sorted_gap(irr, f.decimals);
    ck.delta(d);
    ck.check(d <= 5e-7, "closed forms differ from the listed decimals");
    // Same values as the product of the N=2 and 9x9 spectra.
    std::vector<double> prod;
    for (const auto& a : fixture("n2m2").spectrum)
      for (const auto& b : fixture("n3m2").spectrum)
        for (std::size_t i = 0; i < a.multiplicity * b.multiplicity; ++i) prod.push_back(a.value.value() * b.value.value());
    std::sort(prod.begin(), prod.end());
    ck.check(max_sorted_gap(prod, expanded_values(f.spectrum)) <= 1e-15, "not the product of factor spectra");
  });

  add("n12.232.vs.322", true, false, [](Checker& ck, const VerifyBudget&) {
    const auto a = fixture("n12.232.eigs"), b = fixture("n12.322.eigs");
    for (const auto* f : {&a, &b}) {
      const auto t = spectrum_trace(f->spectrum);
      ck.check(t.rational == 1 && t.irrational_cancels && spectrum_dimension(f->spectrum) == 144, f->id + " full list trace");
      ck.check(spectrum_trace(f->limit_spectrum).rational == 1 && spectrum_dimension(f->limit_spectrum) == 144,
               f->id + " limit list trace");
    }
    ck.check(expanded_values(a.spectrum) == expanded_values(b.spectrum), "full lists differ");
    ck.check(same_spectrum(to_exact(a.limit_spectrum), to_exact(b.limit_spectrum)), "limit lists differ");
  });

  add("n12.limit.vs.factorization", false, false, [](Checker& ck, const VerifyBudget&) {
    const auto s2 = exact_spectrum(haar_mean(2, 2).mean);
    const auto s3 = exact_spectrum(haar_mean(3, 2).mean);
    for (const auto& [label, order] : std::vector<std::pair<std::string, std::vector<std::vector<ExactEigenvalue>>>>{
             {"2x3x2", {s2, s3, s2}}, {"3x2x2", {s3, s2, s2}}}) {
      const auto pred = product_spectrum(order);
      ck.note(label + " factorization prediction " + format(pred));
    }
    const auto lim = to_exact(fixture("n12.232.eigs").limit_spectrum);
    ck.note("published limit " + format(lim));
    ck.note(same_spectrum(product_spectrum({s2, s3, s2}), lim) ? "lists agree" : "lists disagree");
    // The factorization is exact: confirm it on the 144x144 oracle numerically.
    const auto o = composite_haar_mean(Scenario({2, 3, 2}, 2), std::vector<Rational>{0, 0, 0}).mean;
    const auto eig = hermitian_eig(o.to_complex());
    std::vector<double> got(eig.values.data(), eig.values.data() + eig.values.size()), pred;
    for (const auto& e : product_spectrum({s2, s3, s2}))
      for (std::size_t i = 0; i < e.multiplicity; ++i) pred.push_back(to_double(e.value));
    std::sort(pred.begin(), pred.end());
    ck.delta(max_sorted_gap(got, pred));
    ck.note("144x144 oracle eigenvalues vs prediction: max gap " + std::to_string(max_sorted_gap(got, pred)));
  });

  add("n4m2.fixture", true, false, [](Checker& ck, const VerifyBudget&) {
    const auto f = fixture("n4m2");
    const auto s = exact_spectrum(f.matrix->rational_part());
    ck.check(same_spectrum(s, to_exact(f.spectrum)), "published 16x16 matrix does not have the published spectrum");
    auto mult = decompose(f.matrix->rational_part().to_complex()).multiplicities();
    ck.check(mult.size() == 7, "expected seven distinct eigenvalues");
    const auto tr = spectrum_trace(f.spectrum);
    ck.check(tr.rational == 1, "spectrum does not sum to 1");
    ck.check(f.matrix->rational_part().trace() == 1, "trace is not 1");
  });

  add("n4m2.vs.oracle", false, false, [](Checker& ck, const VerifyBudget&) {
    const auto f = fixture("n4m2");
    const auto o = exact_spectrum(haar_mean(4, 2).mean);
    const auto p = to_exact(f.spectrum);
    ck.note("oracle " + format(o));
    ck.note("published " + format(p));
    const bool sextet = std::any_of(o.begin(), o.end(), [](const auto& e) { return e.value == R(1, 20) && e.multiplicity == 6; }) &&
                        std::any_of(p.begin(), p.end(), [](const auto& e) { return e.value == R(1, 20) && e.multiplicity == 6; });
    ck.note(sextet ? "antisymmetric sextet 1/20 agrees exactly" : "antisymmetric sextet disagrees");
    ck.note("symmetric sector: oracle has one value of multiplicity 10, published data splits it into six");
    ck.delta(max_abs_diff(haar_mean(4, 2).mean, f.matrix->rational_part()));
  });

  add("n4m3.vs.oracle", false, false, [](Checker& ck, const VerifyBudget&) {
    const auto o = haar_mean(4, 3).mean;
    for (const auto& e : n4m3_partial_entries(0)) {
      const auto& got = o(e.row, e.col);
      ck.note("(" + std::to_string(e.row + 1) + "," + std::to_string(e.col + 1) + "): oracle " + to_string(got) +
              ", published " + to_string(e.value.r));
      ck.delta(std::abs(to_double(got - e.value.r)));
    }
    ck.note("(52,61) uses the printed numerator and is not a meaningful comparison");
  });

  add("dirichlet.n2", true, false, [](Checker& ck, const VerifyBudget&) {
    for (const auto& q : {R(0), R(1, 2), R(-1)}) {
      for (int m : {2, 3}) {
        const auto fam = dirichlet_family(m == 2 ? "dirichlet.n2m2" : "dirichlet.n2m3", q);
        const auto got = exact_spectrum(haar_mean(2, m, q).mean);
        ck.check(same_spectrum(got, to_exact(fam.spectrum)),
                 "m=" + std::to_string(m) + " q=" + to_string(q) + ": oracle " + format(got));
      }
    }
    ck.check(same_spectrum(to_exact(dirichlet_family("dirichlet.n2m2", 0).spectrum), to_exact(fixture("n2m2").spectrum)),
             "m=2 family at q=0 differs from the fixture");
    ck.check(same_spectrum(to_exact(dirichlet_family("dirichlet.n2m3", 0).spectrum), to_exact(fixture("n2m3").spectrum)),
             "m=3 family at q=0 differs from the fixture");
  });

  add("dirichlet.n3m2", true, false, [](Checker& ck, const VerifyBudget&) {
    ck.check(*dirichlet_family("dirichlet.n3m2", 0).matrix == *fixture("n3m2").matrix, "family at q=0 differs from the fixture");
    for (const auto& q : {R(0), R(1, 2), R(-1)}) {
      const auto fam = dirichlet_family("dirichlet.n3m2", q);
      const auto o = haar_mean(3, 2, q).mean;
      const auto lim = selection_rule(*fam.matrix);
      ck.delta(max_abs_diff(lim, o));
      ck.check(lim == o, "q=" + to_string(q) + ": rational part differs from the oracle");
      ck.check(same_spectrum(exact_spectrum(o), to_exact(fam.limit_spectrum)), "q=" + to_string(q) + ": limit spectrum");
      const auto t = spectrum_trace(fam.spectrum);
      ck.check(t.rational == 1 && t.irrational_cancels, "q=" + to_string(q) + ": spectrum trace");
      const auto num = hermitian_eig(substitute_v(*fam.matrix, std::numbers::pi));
      std::vector<double> got(num.values.data(), num.values.data() + num.values.size());
      ck.check(max_sorted_gap(got, expanded_values(fam.spectrum)) <= 1e-12, "q=" + to_string(q) + ": numeric spectrum");
    }
  });

  add("dirichlet.n4m2", true, false, [](Checker& ck, const VerifyBudget&) {
    ck.check(dirichlet_family("dirichlet.n4m2", 0).matrix->rational_part() == fixture("n4m2").matrix->rational_part(),
             "family at q=0 differs from the fixture");
    for (const auto& q : {R(0), R(1, 2)}) {
      const auto fam = dirichlet_family("dirichlet.n4m2", q);
      ck.check(same_spectrum(exact_spectrum(fam.matrix->rational_part()), to_exact(fam.spectrum)),
               "q=" + to_string(q) + ": family matrix and eigenvalue formulas disagree");
      const auto o = exact_spectrum(haar_mean(4, 2, q).mean);
      const Rational sextet = (1 - q) / (4 * (5 - 4 * q));
      ck.check(std::any_of(o.begin(), o.end(), [&](const auto& e) { return e.value == sextet && e.multiplicity == 6; }),
               "q=" + to_string(q) + ": oracle antisymmetric value is not (1-q)/(4(5-4q))");
      ck.check(fam.spectrum.front().value.r == sextet, "q=" + to_string(q) + ": family sextet formula");
    }
    ck.note("the symmetric-sector values are not compared: see n4m2.vs.oracle");
  });

  add("fixtures.traces", true, false, [](Checker& ck, const VerifyBudget&) {
    for (const auto& id : fixture_ids()) {
      const auto f = fixture(id);
      if (f.spectrum_complete) {
        const auto t = spectrum_trace(f.spectrum);
        ck.check(t.rational == 1 && t.irrational_cancels, id + ": spectrum does not sum to 1");
      }
      if (!f.limit_spectrum.empty() && spectrum_dimension(f.limit_spectrum) > 1 && f.spectrum_complete)
        ck.check(spectrum_trace(f.limit_spectrum).rational == 1, id + ": limit spectrum does not sum to 1");
      if (f.matrix) ck.check(f.matrix->is_symmetric(), id + ": matrix not symmetric");
      if (f.matrix && f.spectrum_complete) ck.check(f.matrix->rational_part().trace() == 1, id + ": trace");
    }
    ck.check(spectrum_trace(fixture("n3m3.partial").limit_spectrum).rational == 1, "n3m3 limit spectrum");
  });

  add("ks.formulas", true, false, [](Checker& ck, const VerifyBudget&) {
    const std::pair<std::pair<int, int>, double> expected[] = {
        {{2, 0}, 5.0 / 18}, {{2, 1}, 1.0 / 6}, {{4, 0}, 7.0 / 66}, {{4, 1}, 1.0 / 22}, {{4, 2}, 1.0 / 33}};
    for (const auto& [md, v] : expected) {
      const double d = std::abs(ks_eigenvalue(md.first, md.second, -2) - v);
      ck.delta(d);
      ck.check(d <= 1e-12, "lambda(" + std::to_string(md.first) + "," + std::to_string(md.second) + ")");
    }
    for (double u : {-2.0, 0.0, 0.5})
      for (int m = 1; m <= 8; ++m) {
        double s = 0;
        for (int d = 0; d <= m / 2; ++d) s += static_cast<double>(ks_multiplicity(m, d)) * ks_eigenvalue(m, d, u);
        ck.check(std::abs(s - 1) <= 1e-12, "normalization m=" + std::to_string(m) + " u=" + std::to_string(u));
      }
    for (int m = 1; m <= 10; ++m) {
      std::uint64_t s = 0;
      for (int d = 0; d <= m / 2; ++d) s += ks_multiplicity(m, d);
      ck.check(s == (1ull << m), "multiplicities do not add to 2^m for m=" + std::to_string(m));
    }
  });

  add("monotone", true, false, [](Checker& ck, const VerifyBudget&) {
    std::vector<double> grid(1000);
    for (int i = 0; i < 1000; ++i) grid[i] = std::pow(10.0, -2 + 3.0 * i / 999);
    for (double u : {-2.0, 0.5, 1.5}) {
      const MonotoneFunction f{u};
      ck.check(std::abs(f(1) - 1) <= 1e-12, "f(1) != 1");
      for (double t : grid) ck.check(std::abs(f(t) - t * f(1 / t)) <= 1e-12 * std::max(1.0, f(t)), "f(t) != t f(1/t)");
      const auto scan = monotone_scan(u, grid);
      if (u == 0.5) {
        ck.check(scan.is_monotone, "u=1/2 should be monotone");
        for (double t : grid) ck.check(std::abs(f(t) - (1 + t) / 2) <= 1e-12 * std::max(1.0, t), "u=1/2 is not (1+t)/2");
      } else if (u == 1.5) {
        ck.check(scan.is_monotone, "u=3/2 should be monotone");
      } else {
        ck.check(!scan.is_monotone, "u=-2 should not be monotone");
        ck.check(scan.argmin && std::abs(*scan.argmin - 5.0 / 7) <= 1e-6, "argmin is not 5/7");
        if (scan.argmin) ck.delta(std::abs(*scan.argmin - 5.0 / 7));
      }
    }
  });

  add("marginal", true, false, [](Checker& ck, const VerifyBudget&) {
    const auto e = maximal_marginal_expectations(64);
    for (const auto& [got, want, name] : {std::tuple{e.normalization, 1.0, "normalization"}, std::tuple{e.a, 3.0 / 7, "<a>"},
                                          std::tuple{e.b, 2.0 / 7, "<b>"}, std::tuple{e.c, 2.0 / 7, "<c>"}}) {
      ck.delta(std::abs(got - want));
      ck.check(std::abs(got - want) <= 1e-6, name);
    }
  });

  add("mc.n2m2", true, true, [](Checker& ck, const VerifyBudget& b) {
    mc_against(ck, MeasureSpec::zhsl(2), 2, haar_mean(2, 2).mean.to_complex(), b, 1000000, 3e-3);
  });

  add("mc.n3m2", true, true, [](Checker& ck, const VerifyBudget& b) {
    mc_against(ck, MeasureSpec::zhsl(3), 2, haar_mean(3, 2).mean.to_complex(), b, 200000, 3e-3);
  });

  add("mc.bloch.n2m2", true, true, [](Checker& ck, const VerifyBudget& b) {
    mc_against(ck, MeasureSpec::bloch(-2), 2, fixture("n2m2").matrix->rational_part().to_complex(), b, 1000000, 0);
  });

  add("mc.n3m2.pi", false, true, [](Checker& ck, const VerifyBudget& b) {
    const auto n = samples_of(b, 200000);
    const auto est = estimate_mean(MeasureSpec::zhsl(3), 2, n, b.seed, workers_of(b));
    const auto f = fixture("n3m2");
    const auto pub = convergence_report(est, substitute_v(*f.matrix, std::numbers::pi));
    const auto exact = convergence_report(est, haar_mean(3, 2).mean.to_complex());
    ck.z(pub.max_z);
    ck.delta(pub.max_abs_delta);
    ck.note("vs published 9x9: max z " + std::to_string(pub.max_z) + ", zero-pattern mismatches " +
            std::to_string(pub.zero_pattern_mismatches));
    ck.note("vs exact oracle: max z " + std::to_string(exact.max_z));
    double z_pi = 0;
    for (Index r = 0; r < 9; ++r)
      for (Index c = 0; c < 9; ++c)
        if ((*f.matrix)(r, c).s != 0) z_pi = std::max(z_pi, std::abs(est.mean(r, c)) / est.stderr(r, c));
    ck.note("largest |estimate| / stderr on the 1/pi slots: " + std::to_string(z_pi) + " (largest published |value| " +
            std::to_string(10.0 / (3 * 864 * std::numbers::pi)) + ", stderr there ~" + std::to_string(est.stderr_max()) + ")");
  });

  add("eigenspaces.bloch", true, true, [](Checker& ck, const VerifyBudget& b) {
    const std::size_t total = samples_of(b, 1000000);
    const int replicas = 10;
    for (int m = 2; m <= 4; ++m) {
      const auto oracle = haar_mean(2, m).mean.to_complex();
      const auto ref = decompose(oracle);
      const auto rs = replica_spectrum(MeasureSpec::bloch(-2), m, total / replicas, replicas, b, ref);
      const double tol = 10 * rs.max_stderr;
      const auto dec = decompose(rs.pooled, tol, 1e-8);
      const std::string tag = "m=" + std::to_string(m);
      if (dec.clusters.size() != ref.clusters.size()) {
        ck.check(false, tag + ": " + std::to_string(dec.clusters.size()) + " clusters, expected " +
                            std::to_string(ref.clusters.size()));
        continue;
      }
      double worst_dist = 0, worst_sep = 0;
      for (std::size_t c = 0; c < ref.clusters.size(); ++c) {
        ck.check(dec.clusters[c].multiplicity == ref.clusters[c].multiplicity, tag + ": multiplicities differ");
        worst_dist = std::max(worst_dist, subspace_distance(dec.clusters[c].basis, ref.clusters[c].basis));
        const double sep = std::abs(rs.values[c] - ref.clusters[c].value) / rs.value_stderr[c];
        worst_sep = std::max(worst_sep, sep);
        const double ks = ks_eigenvalue(m, static_cast<int>(ref.clusters.size() - 1 - c), -2);
        const double zk = std::abs(rs.values[c] - ks) / rs.value_stderr[c];
        ck.z(zk);
        ck.check(zk <= 5, tag + ": cluster value differs from the closed form by " + std::to_string(zk) + " stderr");
      }
      ck.delta(worst_dist);
      ck.note(tag + ": max subspace distance " + std::to_string(worst_dist) + ", max eigenvalue separation " +
              std::to_string(worst_sep) + " stderr");
      ck.check(worst_dist <= 0.05, tag + ": eigenspaces differ");
      if (m == 4) ck.check(worst_sep > 10, "m=4: eigenvalues not separated from the Haar values");
    }
  });

  return cases;
}

inline std::vector<std::string> verify_case_ids() {
  std::vector<std::string> out;
  for (const auto& c : verify_cases()) out.push_back(c.id);
  return out;
}

inline VerifyReport verify(const std::string& id, const VerifyBudget& budget = {}) {
  for (const auto& c : verify_cases())
    if (c.id == id) return c.run(budget);
  throw LookupError("unknown verification case '" + id + "'");
}

}  // namespace mdm
