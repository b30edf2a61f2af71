#include <gtest/gtest.h>

#include "mdm/fixtures.hpp"
#include "mdm/json_io.hpp"

using namespace mdm;

namespace {

// Serialize to text and back, as a file would.
Json reparse(const Json& j) { return Json::parse(j.dump()); }

}  // namespace

TEST(JsonIo, ComplexMatrixRoundTrip) {
  RandomStream rng(1, 0);
  const auto m = sample_density(MeasureSpec::zhsl(3), rng).matrix();
  const auto j = reparse(to_json(m));
  EXPECT_EQ(j.at("rows"), 3);
  EXPECT_EQ(j.at("entries").size(), 9u);
  EXPECT_EQ(j.at("entries")[1][0].get<double>(), m(0, 1).real());  // row-major
  EXPECT_TRUE(complex_matrix_from_json(j) == m);
  EXPECT_THROW(complex_matrix_from_json(Json::parse(R"({"rows":2,"cols":2,"entries":[[1,0]]})")), DimensionError);
  EXPECT_THROW(complex_matrix_from_json(Json::parse(R"({"rows":1,"cols":1})")), DomainError);
}

TEST(JsonIo, RationalMatrixRoundTrip) {
  const auto m = haar_mean(2, 2).mean;
  const auto j = reparse(to_json(m));
  EXPECT_EQ(j.at("entries")[0], "5/18");
  EXPECT_EQ(j.at("entries")[1], "0");
  EXPECT_TRUE(has_rational_entries(j));
  EXPECT_TRUE(rational_matrix_from_json(j) == m);
}

TEST(JsonIo, MeasureRoundTrip) {
  for (const auto& spec : {MeasureSpec::zhsl(3), MeasureSpec::zhsl({0.5, -1.0}), MeasureSpec::bloch(-2),
                           MeasureSpec::product({MeasureSpec::zhsl(2), MeasureSpec::bloch(0.25)})}) {
    EXPECT_TRUE(measure_from_json(reparse(to_json(spec))) == spec);
  }
  EXPECT_TRUE(measure_from_json(Json::parse(R"({"type":"zhsl","n":3,"q":[0,0,0]})")) == MeasureSpec::zhsl(3));
  EXPECT_TRUE(measure_from_json(Json::parse(R"({"type":"zhsl","n":3})")) == MeasureSpec::zhsl(3));
  EXPECT_THROW(measure_from_json(Json::parse(R"({"type":"wishart"})")), DomainError);
  EXPECT_THROW(measure_from_json(Json::parse(R"({"type":"zhsl","n":3,"q":[0,0]})")), DomainError);
  EXPECT_THROW(measure_from_json(Json::parse(R"({"type":"bloch","u":1})")), DomainError);
}

TEST(JsonIo, MeanEstimateRoundTrip) {
  const auto est = estimate_mean(MeasureSpec::product({MeasureSpec::zhsl(2), MeasureSpec::bloch(-2)}), 2, 1000, 4, 2);
  const auto j = reparse(to_json(est));
  for (const char* key : {"rows", "cols", "entries", "n_samples", "seed", "workers", "stderr_max"})
    EXPECT_TRUE(j.contains(key)) << key;
  const auto back = mean_estimate_from_json(j);
  EXPECT_TRUE(back.mean == est.mean);
  EXPECT_TRUE(back.stderr == est.stderr);
  EXPECT_EQ(back.n_samples, est.n_samples);
  EXPECT_EQ(back.seed, est.seed);
  EXPECT_EQ(back.workers, est.workers);
  EXPECT_TRUE(back.spec == est.spec);
  EXPECT_EQ(back.scenario.factors, est.scenario.factors);
  EXPECT_EQ(back.scenario.power, est.scenario.power);
  EXPECT_EQ(to_json(back).dump(), to_json(est).dump());
}

TEST(JsonIo, OracleRoundTrip) {
  for (const auto& o : {haar_mean(2, 2), haar_mean(3, 3, make_rational(-1, 2)),
                        composite_haar_mean(Scenario({2, 2}, 2), std::vector<Rational>{0, 0})}) {
    const auto j = reparse(to_json(o));
    const auto back = oracle_result_from_json(j);
    EXPECT_TRUE(back.mean == o.mean);
    EXPECT_EQ(back.coefficients, o.coefficients);
    EXPECT_EQ(back.n, o.n);
    EXPECT_EQ(back.m, o.m);
    EXPECT_EQ(back.q, o.q);
  }
  const auto j = to_json(haar_mean(2, 2));
  EXPECT_EQ(j.at("coefficients").at("(12)"), "1/18");
  EXPECT_EQ(j.at("coefficients").at("()"), "2/9");
}

TEST(JsonIo, SymbolicMatrixRoundTrip) {
  const auto m = *fixture("n3m2").matrix;
  const auto j = reparse(to_json(m));
  EXPECT_TRUE(j.at("entries")[0].contains("r"));
  EXPECT_TRUE(j.at("entries")[0].contains("s"));
  EXPECT_TRUE(symbolic_matrix_from_json(j) == m);
}

TEST(JsonIo, VerifyReportRoundTrip) {
  VerifyReport r{"n2m2.exact", "PASS", true, 1.5, 2e-3, {"a", "b"}};
  const auto j = reparse(to_json(r));
  for (const char* key : {"case", "status", "max_z", "max_abs_delta", "notes"}) EXPECT_TRUE(j.contains(key));
  EXPECT_EQ(verify_report_from_json(j), r);
}
