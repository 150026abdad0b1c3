#include <gtest/gtest.h>

#include <algorithm>

#include "concentro/errors.hpp"
#include "concentro/montecarlo.hpp"
#include "support/oracles.hpp"

using namespace concentro;

namespace {

Polynomial x(int n, int i) { return Polynomial::variable(n, i); }

MCConfig cfg(long N, std::uint64_t seed, std::vector<double> ps = {2.0}) {
  MCConfig c;
  c.N = N;
  c.seed = seed;
  c.p_list = std::move(ps);
  return c;
}

}  // namespace

TEST(Rng, CounterStreamsAreReproducible) {
  CounterRng a(5, 2), b(5, 2), c(5, 3);
  for (int i = 0; i < 100; ++i) {
    const auto va = a();
    EXPECT_EQ(va, b());
    EXPECT_NE(va, c());
  }
  CounterRng u(1);
  for (int i = 0; i < 10000; ++i) {
    const double v = u.uniform();
    EXPECT_GT(v, 0.0);
    EXPECT_LT(v, 1.0);
  }
}

TEST(Sampling, GaussianMeanAndRademacherSupport) {
  const MCConfig c = cfg(1000000, 1);
  const auto z = sample_polynomial(x(1, 0), ProductDistribution::gaussian(1), c);
  double s = 0.0;
  for (double v : z) s += v;
  EXPECT_NEAR(s / static_cast<double>(z.size()), 0.0, 4e-3);
  const auto r = sample_polynomial(x(1, 0), ProductDistribution::rademacher(1), cfg(10000, 2));
  for (double v : r) EXPECT_TRUE(v == 1.0 || v == -1.0);
}

TEST(Sampling, WeibullTail) {
  const auto z = sample_polynomial(x(1, 0), ProductDistribution::weibull(1, 1.0), cfg(1000000, 3));
  const double frac = static_cast<double>(std::count_if(z.begin(), z.end(), [](double v) { return std::abs(v) > 2.0; })) /
                      static_cast<double>(z.size());
  EXPECT_NEAR(frac, std::exp(-2.0), 2e-3);
}

TEST(Sampling, IndependentOfWorkerCount) {
  MCConfig a = cfg(50000, 9), b = a;
  a.batch = 1000;
  b.batch = 1000;
  b.workers = 3;
  const Polynomial f = x(2, 0) * x(2, 1);
  const auto za = sample_polynomial(f, ProductDistribution::gaussian(2), a);
  const auto zb = sample_polynomial(f, ProductDistribution::gaussian(2), b);
  EXPECT_EQ(za, zb);
  EXPECT_EQ(empirical_moment(f, ProductDistribution::gaussian(2), a)[0].value,
            empirical_moment(f, ProductDistribution::gaussian(2), b)[0].value);
}

TEST(Moments, GaussianExamples) {
  const auto g = ProductDistribution::gaussian(2);
  const auto m = empirical_moment(x(2, 0), g, cfg(200000, 4, {2.0, 4.0}));
  EXPECT_NEAR(m[0].value, 1.0, 3 * m[0].std_error);
  EXPECT_NEAR(m[1].value, std::pow(3.0, 0.25), 3 * m[1].std_error);
  const auto m2 = empirical_moment(x(2, 0) * x(2, 1), g, cfg(200000, 5));
  EXPECT_NEAR(m2[0].value, 1.0, 3 * m2[0].std_error);
}

TEST(Moments, GuardOnP) {
  const MCConfig c = cfg(1000, 1, {6.0});  // ln(1000)/1.5 ≈ 4.6
  EXPECT_THROW(c.validate(), DomainError);
  EXPECT_THROW(cfg(100, 1, {1.5}).validate(), DomainError);
}

TEST(Moments, MonotoneInPOnAFixedSample) {
  const auto z = sample_polynomial(x(2, 0) * x(2, 1) + x(2, 0), ProductDistribution::gaussian(2), cfg(20000, 6));
  const std::vector<double> ps{2.0, 2.5, 3.0, 4.0, 5.0, 6.0};
  const auto m = centered_moments(z, ps);
  for (std::size_t i = 1; i < m.size(); ++i) EXPECT_GE(m[i].value, m[i - 1].value);
}

TEST(Tail, Examples) {
  const auto g = ProductDistribution::gaussian(1);
  const MCConfig c = cfg(200000, 7);
  EXPECT_EQ(empirical_tail(x(1, 0), g, 0.0, c).prob, 1.0);
  const auto far = empirical_tail(x(1, 0), g, 100.0, c);
  EXPECT_EQ(far.prob, 0.0);
  EXPECT_LE(far.upper, 4.0 / static_cast<double>(c.N));
  const auto t2 = empirical_tail(x(1, 0), g, 2.0, c);
  const double exact = 2.0 * oracle::normal_upper_tail(2.0);
  EXPECT_LE(t2.lower, exact + 1e-3);
  EXPECT_GE(t2.upper, exact - 1e-3);
  EXPECT_THROW(empirical_tail(x(1, 0), g, 1.0, cfg(500, 1)), DomainError);
}

TEST(Chaos, LinearAndOffDiagonal) {
  const Tensor a(1, 2, {3.0, 4.0});
  for (auto mode : {ChaosMode::Decoupled, ChaosMode::Undecoupled}) {
    const auto e = chaos_moment(a, mode, 2.0, cfg(200000, 8));
    EXPECT_NEAR(e.value, 5.0, 3 * e.std_error);
  }
  const Tensor off(2, 2, {0, 1, 1, 0});
  const auto u = chaos_moment(off, ChaosMode::Undecoupled, 2.0, cfg(200000, 9));
  EXPECT_NEAR(u.value, 2.0, 3 * u.std_error);
}

TEST(Chaos, UndecoupledValidationNamesDiagonal) {
  try {
    chaos_moment(Tensor::identity(2, 2), ChaosMode::Undecoupled, 2.0, cfg(1000, 1));
    FAIL() << "expected DomainError";
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("diagonal"), std::string::npos) << e.what();
  }
  EXPECT_THROW(validate_tetrahedral(Tensor(2, 2, {0, 1, 2, 0})), DomainError);
}

TEST(Chaos, UndecoupledMatchesPolynomialPath) {
  const Tensor a = oracle::random_tetrahedral(2, 3, 31);
  Polynomial f(3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j) f.add_term({{i, 1}, {j, 1}}, a.at({i, j}));
  const auto chaos = chaos_moment(a, ChaosMode::Undecoupled, 2.0, cfg(200000, 10));
  const auto poly = empirical_moment(f, ProductDistribution::gaussian(3), cfg(200000, 11));
  EXPECT_NEAR(chaos.value, poly[0].value, 4 * std::hypot(chaos.std_error, poly[0].std_error));
}

TEST(Sandwich, LinearFormAndDegenerate) {
  const Polynomial lin = x(3, 0) * 1.0 + x(3, 1) * 2.0 + x(3, 2) * 2.0;
  const auto g = ProductDistribution::gaussian(3);
  auto bound = [&](double p) { return gaussian_moment_bound(lin, g, p); };
  const auto rows = sandwich_check(lin, g, cfg(200000, 12), bound);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_NEAR(rows[0].ratio, 1.0 / std::sqrt(2.0), 3 * rows[0].std_error / rows[0].bound);
  EXPECT_TRUE(rows[0].pass);

  const Polynomial c = Polynomial::constant(3, 2.0);
  const auto deg = sandwich_check(c, g, cfg(1000, 1), [&](double p) { return gaussian_moment_bound(c, g, p); });
  EXPECT_TRUE(deg[0].degenerate);
}

TEST(HermiteConvergence, DegreeOneIsExactAndDegreeTwoMatchesClosedForm) {
  const std::vector<long> ns{10, 100};
  const auto d1 = hermite_tetrahedral_convergence(1, ns, cfg(2000, 13));
  for (const auto& r : d1) EXPECT_NEAR(r.mean_sq, 0.0, 1e-20);
  const auto d2 = hermite_tetrahedral_convergence(2, ns, cfg(20000, 14));
  for (const auto& r : d2) {
    EXPECT_DOUBLE_EQ(r.exact, 2.0 / static_cast<double>(r.n_terms));
    EXPECT_NEAR(r.mean_sq, r.exact, 3 * r.std_error);
  }
  EXPECT_THROW(hermite_tetrahedral_convergence(5, ns, cfg(10, 1)), DomainError);
}

TEST(SobolevCheck, Examples) {
  const auto g = ProductDistribution::gaussian(1);
  const auto sq = sobolev_check(g, x(1, 0) * x(1, 0), cfg(400000, 15));
  ASSERT_EQ(sq.size(), 1u);
  EXPECT_NEAR(sq[0].lhs, std::sqrt(2.0), 0.02);
  EXPECT_NEAR(sq[0].rhs, 2.0 * std::sqrt(2.0), 0.02);
  EXPECT_NEAR(sq[0].ratio, 0.5, 0.01);
  const auto lin = sobolev_check(g, x(1, 0) * 3.0, cfg(100000, 16, {2.0, 4.0, 6.0}));
  for (const auto& r : lin) EXPECT_TRUE(r.pass) << "p=" << r.p;
  const auto c = sobolev_check(g, Polynomial::constant(1, 1.0), cfg(1000, 17));
  EXPECT_TRUE(c[0].pass);
  EXPECT_THROW(sobolev_check(ProductDistribution::bernoulli(1, 0.5), x(1, 0), cfg(1000, 1)), DomainError);
}
