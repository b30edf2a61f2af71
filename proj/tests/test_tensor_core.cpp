#include <gtest/gtest.h>

#include "mdm/measures.hpp"
#include "mdm/permutation.hpp"
#include "mdm/rational.hpp"
#include "mdm/tensor_core.hpp"

using namespace mdm;

namespace {

ComplexMatrix random_state(std::size_t n, std::uint64_t seed) {
  RandomStream rng(seed, 0);
  return sample_density(MeasureSpec::zhsl(n), rng).matrix();
}

}  // namespace

TEST(Permutation, CycleNotationRoundTrip) {
  const auto p = Permutation::from_cycle_notation("(13)(24)", 4);
  EXPECT_EQ(p(0), 2);
  EXPECT_EQ(p(2), 0);
  EXPECT_EQ(p.cycle_notation(), "(13)(24)");
  EXPECT_EQ(Permutation::from_cycle_notation("()", 3), Permutation::identity(3));
  EXPECT_EQ(Permutation::from_cycle_notation("(1,10)", 10), Permutation::transposition(10, 0, 9));
  EXPECT_THROW(Permutation::from_cycle_notation("(15)", 4), Error);
  EXPECT_THROW(Permutation::from_cycle_notation("(12", 4), Error);
}

TEST(Permutation, CycleTypeAndCounting) {
  EXPECT_EQ(Permutation::from_cycle_notation("(123)", 4).cycle_type(), (std::vector<int>{3, 1}));
  EXPECT_EQ(Permutation::identity(4).cycle_count(), 4);
  EXPECT_EQ(all_permutations(5).size(), 120u);
  EXPECT_EQ(partitions(4).size(), 5u);
  EXPECT_EQ(partitions(8).size(), 22u);
  const auto s = Permutation::from_cycle_notation("(123)", 3);
  EXPECT_TRUE((s * s.inverse()).is_identity());
}

TEST(Rational, ParseAndFormat) {
  EXPECT_EQ(parse_rational("5/18"), make_rational(5, 18));
  EXPECT_EQ(parse_rational(" -2/4 "), make_rational(-1, 2));
  EXPECT_EQ(parse_rational("7"), Rational(7));
  EXPECT_EQ(to_string(make_rational(10, 4)), "5/2");
  EXPECT_EQ(to_string(Rational(0)), "0");
  EXPECT_THROW(parse_rational("1/0"), DomainError);
  EXPECT_THROW(parse_rational("abc"), DomainError);
}

TEST(Rational, RankAndBareiss) {
  RationalMatrix m(3, 3);
  m(0, 0) = 1, m(0, 1) = 2, m(0, 2) = 3;
  m(1, 0) = 2, m(1, 1) = 4, m(1, 2) = 6;
  m(2, 0) = 1, m(2, 1) = 0, m(2, 2) = 1;
  EXPECT_EQ(rank(m), 2);

  // 2x + y = 1, x + 3y = 2  ->  x = 1/5, y = 3/5
  const auto x = bareiss_solve({{2, 1}, {1, 3}}, {Rational(1), Rational(2)});
  ASSERT_TRUE(x);
  EXPECT_EQ((*x)[0], make_rational(1, 5));
  EXPECT_EQ((*x)[1], make_rational(3, 5));
  // consistent but singular: free unknown set to zero
  const auto y = bareiss_solve({{1, 1}, {2, 2}}, {Rational(1), Rational(2)});
  ASSERT_TRUE(y);
  EXPECT_EQ((*y)[0] + (*y)[1], Rational(1));
  EXPECT_FALSE(bareiss_solve({{1, 1}, {2, 2}}, {Rational(1), Rational(3)}));
}

TEST(TensorCore, KroneckerIndexConvention) {
  ComplexMatrix a(2, 2), b(2, 2);
  a << 1, 2, 3, 4;
  b << 0, 5, 6, 7;
  const auto k = tensor_product(a, b);
  ASSERT_EQ(k.rows(), 4);
  // entry ((ia*2+ib), (ja*2+jb)) = a(ia,ja) b(ib,jb)
  EXPECT_EQ(k(1 * 2 + 0, 0 * 2 + 1), a(1, 0) * b(0, 1));
  EXPECT_EQ(k(3, 3), a(1, 1) * b(1, 1));
  EXPECT_EQ(kron_power(a, 3).rows(), 8);
}

TEST(TensorCore, DimensionCap) {
  const ComplexMatrix a = ComplexMatrix::Identity(3, 3);
  EXPECT_THROW(kron_power(a, 8), DimensionError);  // 6561 > 4096
  EXPECT_NO_THROW(kron_power(a, 8, 10000));
  EXPECT_THROW(tensor_product(a, a, 8), DimensionError);
  EXPECT_THROW(Scenario({3, 4}, 4), DimensionError);
}

TEST(TensorCore, PartialTraceOfProduct) {
  const auto a = random_state(2, 1), b = random_state(3, 2);
  const auto ab = tensor_product(a, b);
  const std::size_t dims[] = {2, 3};
  const std::size_t k0[] = {0}, k1[] = {1}, both[] = {1, 0};
  EXPECT_LT(max_abs(partial_trace(ab, std::span(dims), std::span(k0)) - a), 1e-14);
  EXPECT_LT(max_abs(partial_trace(ab, std::span(dims), std::span(k1)) - b), 1e-14);
  EXPECT_LT(max_abs(partial_trace(ab, std::span(dims), std::span(both)) - ab), 1e-14);
  const std::size_t empty[] = {0};
  EXPECT_THROW(partial_trace(ab, std::span(dims), std::span(empty).subspan(0, 0)), DomainError);
  const std::size_t bad[] = {2};
  EXPECT_THROW(partial_trace(ab, std::span(dims), std::span(bad)), DomainError);
}

TEST(TensorCore, ReorderSwapsFactors) {
  const auto a = random_state(2, 3), b = random_state(3, 4);
  const std::size_t dims[] = {2, 3}, swap[] = {1, 0};
  const auto r = reorder_subsystems(tensor_product(a, b), std::span(dims), std::span(swap));
  EXPECT_LT(max_abs(r - tensor_product(b, a)), 1e-15);
  const std::size_t not_perm[] = {0, 0};
  EXPECT_THROW(reorder_subsystems(tensor_product(a, b), std::span(dims), std::span(not_perm)), DomainError);
}

TEST(TensorCore, PermutationOperatorCommutesWithLocalUnitaries) {
  RandomStream rng(7, 0);
  const auto u = sample_haar_unitary(3, rng);
  const auto u3 = kron_power(u, 3);
  for (const auto& s : all_permutations(3)) {
    const auto v = permutation_operator(s, 3);
    EXPECT_LT(max_abs(v * v.adjoint() - ComplexMatrix::Identity(27, 27)), 1e-15);
    EXPECT_LT(max_abs(v * u3 - u3 * v), 1e-12);
  }
  // swap on C^2 (x) C^2 exchanges |01> and |10>
  const auto sw = permutation_operator(Permutation::transposition(2, 0, 1), 2);
  EXPECT_EQ(sw(2, 1), Complex(1.0));
  EXPECT_EQ(sw(1, 2), Complex(1.0));
  EXPECT_EQ(sw(0, 0), Complex(1.0));
}

TEST(TensorCore, PermutationActionMovesSlots) {
  // sigma = (123): slot 0 -> slot 1, 1 -> 2, 2 -> 0. |abc> -> |c a b>.
  const auto s = Permutation::from_cycle_notation("(123)", 3);
  const auto act = permutation_action(s, 2);
  const int abc[] = {1, 0, 0}, moved[] = {0, 1, 0};
  EXPECT_EQ(act[basis_index(abc, 2)], basis_index(moved, 2));
}

TEST(TensorCore, HermitianEig) {
  const auto rho = random_state(4, 9);
  const auto e = hermitian_eig(rho);
  for (Index i = 1; i < e.values.size(); ++i) EXPECT_LE(e.values(i - 1), e.values(i));
  const ComplexMatrix back = e.vectors * e.values.cast<Complex>().asDiagonal() * e.vectors.adjoint();
  EXPECT_LT(max_abs(back - rho), 1e-13);
  ComplexMatrix nh = rho;
  nh(0, 1) += 1e-3;
  EXPECT_THROW(hermitian_eig(nh), DomainError);
}

TEST(DensityMatrix, Validation) {
  EXPECT_NO_THROW(DensityMatrix(ComplexMatrix::Identity(2, 2) / 2.0));
  EXPECT_THROW(DensityMatrix(ComplexMatrix::Identity(2, 2)), DomainError);  // trace 2
  ComplexMatrix neg(2, 2);
  neg << 1.5, 0, 0, -0.5;
  EXPECT_THROW(DensityMatrix{neg}, DomainError);
  ComplexMatrix nh(2, 2);
  nh << 0.5, 0.1, 0, 0.5;
  EXPECT_THROW(DensityMatrix{nh}, DomainError);
  const auto pure = DensityMatrix::from_bloch(1, 0.3, 1.1);
  EXPECT_NEAR((pure.matrix() * pure.matrix()).trace().real(), 1.0, 1e-15);
  EXPECT_THROW(DensityMatrix::from_bloch(1.5, 0, 0), DomainError);
  EXPECT_NEAR(DensityMatrix::maximally_mixed(3).matrix()(1, 1).real(), 1.0 / 3, 1e-16);
  const auto p = tensor_power(pure, 3);
  EXPECT_EQ(p.dim(), 8);
  EXPECT_TRUE(DensityMatrix::validation_error(p.matrix(), {}).empty());
}

TEST(Scenario, Dimensions) {
  const Scenario s({2, 3}, 2);
  EXPECT_EQ(s.local_dimension(), 6u);
  EXPECT_EQ(s.total_dimension(), 36u);
  EXPECT_THROW(Scenario({}, 2), DomainError);
  EXPECT_THROW(Scenario({2}, 0), DomainError);
  EXPECT_THROW(Scenario({1}, 2), DomainError);
}
