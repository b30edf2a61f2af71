#include <gtest/gtest.h>

#include <numbers>

#include "mdm/analytic.hpp"
#include "mdm/exact_oracle.hpp"
#include "mdm/measures.hpp"
#include "mdm/random.hpp"

using namespace mdm;

TEST(Philox, KnownAnswers) {
  using A4 = std::array<std::uint32_t, 4>;
  using A2 = std::array<std::uint32_t, 2>;
  EXPECT_EQ(philox4x32_10(A4{0, 0, 0, 0}, A2{0, 0}), (A4{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
  EXPECT_EQ(philox4x32_10(A4{~0u, ~0u, ~0u, ~0u}, A2{~0u, ~0u}), (A4{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
  EXPECT_EQ(philox4x32_10(A4{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, A2{0xa4093822, 0x299f31d0}),
            (A4{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(RandomStream, DeterministicAndIndependent) {
  RandomStream a(42, 3), b(42, 3), c(42, 4), d(43, 3);
  bool differs_c = false, differs_d = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a();
    EXPECT_EQ(x, b());
    differs_c |= x != c();
    differs_d |= x != d();
  }
  EXPECT_TRUE(differs_c);
  EXPECT_TRUE(differs_d);
  RandomStream u(1, 0);
  double mean = 0;
  for (int i = 0; i < 100000; ++i) {
    const double x = u.uniform();
    ASSERT_GE(x, 0.0);
    ASSERT_LT(x, 1.0);
    mean += x;
  }
  EXPECT_NEAR(mean / 100000, 0.5, 5 * std::sqrt(1.0 / 12 / 100000));
  const double y = u.uniform_open0();
  EXPECT_GT(y, 0.0);
  EXPECT_LE(y, 1.0);
}

TEST(Samplers, HaarUnitaryIsUnitary) {
  RandomStream rng(5, 0);
  for (std::size_t n : {2, 3, 5}) {
    const auto u = sample_haar_unitary(n, rng);
    EXPECT_LT(max_abs(u * u.adjoint() - ComplexMatrix::Identity(n, n)), 1e-13);
  }
  const auto e = sample_haar_unitary_euler(rng);
  EXPECT_LT(max_abs(e * e.adjoint() - ComplexMatrix::Identity(2, 2)), 1e-14);
  EXPECT_NEAR(std::abs(e.determinant() - Complex(1.0)), 0.0, 1e-14);
  EXPECT_THROW(sample_haar_unitary(1, rng), DomainError);
}

// E|U_00|^4 = 2 / (n (n+1)) for Haar on U(n): 1/3 for n = 2. Both samplers must agree.
TEST(Samplers, HaarFourthMoment) {
  RandomStream rng(11, 0);
  const int n = 200000;
  double s_qr = 0, s_qr2 = 0, s_eu = 0, s_eu2 = 0;
  for (int i = 0; i < n; ++i) {
    const double a = std::pow(std::abs(sample_haar_unitary(2, rng)(0, 0)), 4);
    const double b = std::pow(std::abs(sample_haar_unitary_euler(rng)(0, 0)), 4);
    s_qr += a, s_qr2 += a * a, s_eu += b, s_eu2 += b * b;
  }
  const double m_qr = s_qr / n, m_eu = s_eu / n;
  const double se_qr = std::sqrt((s_qr2 / n - m_qr * m_qr) / n), se_eu = std::sqrt((s_eu2 / n - m_eu * m_eu) / n);
  EXPECT_NEAR(m_qr, 1.0 / 3, 5 * se_qr);
  EXPECT_NEAR(m_eu, 1.0 / 3, 5 * se_eu);
}

TEST(Samplers, SimplexAndRadius) {
  RandomStream rng(2, 0);
  const int n = 100000;
  double first = 0;
  for (int i = 0; i < n; ++i) {
    const auto e = sample_simplex(3, 0.0, rng);
    ASSERT_NEAR(e.sum(), 1.0, 1e-14);
    ASSERT_GE(e.minCoeff(), 0.0);
    first += e(0);
  }
  EXPECT_NEAR(first / n, 1.0 / 3, 5 * std::sqrt(1.0 / 18 / n));
  // r^2 ~ Beta(3/2, 1-u): mean 1.5 / (2.5 - u)
  for (double u : {-2.0, 0.5}) {
    double s = 0, s2 = 0;
    for (int i = 0; i < n; ++i) {
      const double r = sample_bloch_radius(u, rng);
      ASSERT_GE(r, 0.0);
      ASSERT_LE(r, 1.0);
      s += r * r, s2 += r * r * r * r;
    }
    const double m = s / n, se = std::sqrt((s2 / n - m * m) / n);
    EXPECT_NEAR(m, 1.5 / (2.5 - u), 5 * se);
  }
  const double bad[] = {0.5, 1.0};
  EXPECT_THROW(sample_simplex(bad, rng), DomainError);
  EXPECT_THROW(sample_bloch_radius(1.0, rng), DomainError);
}

TEST(Samplers, DrawsAreDensityMatrices) {
  RandomStream rng(3, 0);
  for (const auto& spec : {MeasureSpec::zhsl(3), MeasureSpec::zhsl({0.5, -1.0, 0.0}), MeasureSpec::bloch(-2),
                           MeasureSpec::product({MeasureSpec::zhsl(2), MeasureSpec::zhsl(3)})}) {
    for (int i = 0; i < 50; ++i) {
      const auto rho = sample_density(spec, rng);
      EXPECT_EQ(static_cast<std::size_t>(rho.dim()), spec.dimension());
      EXPECT_EQ(DensityMatrix::validation_error(rho.matrix(), {}), "");
    }
  }
}

TEST(MeasureSpec, Validation) {
  EXPECT_THROW(MeasureSpec::zhsl(1), DomainError);
  EXPECT_THROW(MeasureSpec::zhsl(2, 1.0), DomainError);
  EXPECT_THROW(MeasureSpec::bloch(1.0), DomainError);
  EXPECT_THROW(MeasureSpec::product({}), DomainError);
  EXPECT_EQ(MeasureSpec::product({MeasureSpec::zhsl(2), MeasureSpec::bloch(0)}).factor_dimensions(),
            (std::vector<std::size_t>{2, 2}));
  EXPECT_EQ(MeasureSpec::zhsl(3), MeasureSpec::zhsl(3, 0.0));
  EXPECT_FALSE(MeasureSpec::zhsl(3) == MeasureSpec::zhsl(2));
}

// Independent N=2 reference: integrate rho^{(x)m} over SU(2) in Euler angles
// (alpha, beta, gamma) with density sin(beta), and over the eigenvalue p.
namespace {

ComplexMatrix euler_quadrature_mean(int m, bool arcsine) {
  const auto [xb, wb] = gauss_legendre(40);
  const auto [xp, wp] = gauss_legendre(40);
  const int na = 12;
  const double pi = std::numbers::pi;
  const Complex i1(0, 1);
  const auto dim = static_cast<Index>(1) << m;
  ComplexMatrix acc = ComplexMatrix::Zero(dim, dim);
  double total = 0;
  for (int ia = 0; ia < na; ++ia)
    for (int ig = 0; ig < na; ++ig)
      for (std::size_t ib = 0; ib < xb.size(); ++ib) {
        const double alpha = 2 * pi * ia / na, gamma = 2 * pi * ig / na;
        const double beta = pi * 0.5 * (xb[ib] + 1);
        const double wbeta = pi * 0.5 * wb[ib] * std::sin(beta);
        ComplexMatrix rz_a(2, 2), ry(2, 2), rz_g(2, 2);
        rz_a << std::exp(-i1 * alpha / 2.0), 0, 0, std::exp(i1 * alpha / 2.0);
        rz_g << std::exp(-i1 * gamma / 2.0), 0, 0, std::exp(i1 * gamma / 2.0);
        ry << std::cos(beta / 2), -std::sin(beta / 2), std::sin(beta / 2), std::cos(beta / 2);
        const ComplexMatrix u = rz_a * ry * rz_g;
        for (std::size_t ip = 0; ip < xp.size(); ++ip) {
          // q = 0: p uniform on [0,1]. q = 1/2: p = sin^2 t with t uniform on [0, pi/2].
          const double s = 0.5 * (xp[ip] + 1);
          const double p = arcsine ? std::pow(std::sin(pi / 2 * s), 2) : s;
          const double w = wbeta * 0.5 * wp[ip];
          ComplexMatrix d = ComplexMatrix::Zero(2, 2);
          d(0, 0) = p;
          d(1, 1) = 1 - p;
          acc += w * kron_power(ComplexMatrix(u * d * u.adjoint()), m);
          total += w;
        }
      }
  return acc / total;
}

}  // namespace

TEST(EulerQuadratureOracle, AgreesWithExactMean) {
  for (int m = 2; m <= 4; ++m) {
    EXPECT_LT(max_abs(euler_quadrature_mean(m, false) - haar_mean(2, m, 0).mean.to_complex()), 1e-13) << "m=" << m;
    EXPECT_LT(max_abs(euler_quadrature_mean(m, true) - haar_mean(2, m, make_rational(1, 2)).mean.to_complex()), 1e-13)
        << "m=" << m << " q=1/2";
  }
}
