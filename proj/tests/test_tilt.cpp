//------------------------------------------------------------------------------
//
//   Copyright 2026 The chandisc Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

#include <chandisc/region.hpp>
#include <chandisc/tilt.hpp>

#include "support/test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

namespace {

using namespace chandisc;

// BSC(0.1) against BSC(0.3) at s = 0.5, 30-digit reference evaluation.
constexpr double kMu      = -0.033628684690437747;
constexpr double kMuP     = -0.009503695975252293;
constexpr double kMuPP    = 0.26795433772621196;
constexpr double kQHat    = 0.179128784747792;
constexpr double kE0Half  = 0.0288768367028116;
constexpr double kE1Half  = 0.0383805326780639;
constexpr double kDWV     = 0.1163217565860045;  // d_b(0.1 || 0.3)
constexpr double kDVW     = 0.1536635868037987;  // d_b(0.3 || 0.1)
constexpr double kChernoff = 0.0337955303424748;
constexpr double kSStar   = 0.534937429669318;
constexpr double kDb05vs01 = 0.5108256237659907;

ChannelProblem bsc_pair()
{
  return example2_problem(0.1, 0.3, 1.0);
}

ChannelProblem degenerate()
{
  auto const ch = DiscreteChannel({{0.6, 0.4}, {0.25, 0.75}});
  return ChannelProblem(DiscreteChannel::bsc(0.1), ch, ch, CostSpec({0, 1}, 1));
}

TEST(MuTest, BscReferenceValues)
{
  auto const m = mu_x(bsc_pair(), 0, 0.5);
  EXPECT_NEAR(m.mu, kMu, 1e-14);
  EXPECT_NEAR(m.mu, std::log(std::sqrt(0.9 * 0.7) + std::sqrt(0.1 * 0.3)), 1e-15);
  EXPECT_NEAR(m.mu_prime, kMuP, 1e-14);
  EXPECT_NEAR(m.mu_double_prime, kMuPP, 1e-13);
  // Symmetric channel: the same triple for the other input.
  auto const m1 = mu_x(bsc_pair(), 1, 0.5);
  EXPECT_NEAR(m1.mu, m.mu, 1e-15);
}

TEST(MuTest, EndpointsAndDegenerate)
{
  std::mt19937_64 rng(1);
  for (int i = 0; i < 20; ++i)
  {
    auto const pr = testkit::random_problem_up_to(rng);
    for (std::size_t x = 0; x < pr.in_size(); ++x)
    {
      EXPECT_NEAR(mu_x(pr, x, 0.0).mu, 0.0, 1e-15);
      EXPECT_NEAR(mu_x(pr, x, 1.0).mu, 0.0, 1e-15);
    }
  }
  for (double s : {0.0, 0.3, 1.0})
  {
    auto const m = mu_x(degenerate(), 1, s);
    EXPECT_NEAR(m.mu, 0.0, 1e-15);
    EXPECT_NEAR(m.mu_prime, 0.0, 1e-15);
    EXPECT_NEAR(m.mu_double_prime, 0.0, 1e-15);
  }
  EXPECT_THROW(mu_x(bsc_pair(), 0, 1.5), DomainError);
  EXPECT_THROW(mu_x(bsc_pair(), 0, -0.01), DomainError);
}

TEST(MuTest, MixtureAndExampleOneStructure)
{
  auto const pr = bsc_pair();
  auto const m  = mu_p(pr, FiniteDistribution::point_mass(2, 1), 0.3);
  auto const mx = mu_x(pr, 1, 0.3);
  EXPECT_EQ(m.mu, mx.mu);
  EXPECT_EQ(m.mu_prime, mx.mu_prime);

  auto const ex1 = example1_problem(0.1, 0.1, 1.0);
  EXPECT_NEAR(mu_p(ex1, FiniteDistribution::bernoulli(1.0), 0.5).mu, std::log(0.6), 1e-15);
  for (double rho : {0.2, 0.65})
  {
    double const s    = 0.37;
    double const want = rho * std::log(std::pow(0.9, 1 - s) * std::pow(0.1, s) +
                                       std::pow(0.1, 1 - s) * std::pow(0.9, s));
    EXPECT_NEAR(mu_p(ex1, FiniteDistribution::bernoulli(rho), s).mu, want, 1e-14);
  }
  EXPECT_THROW(mu_p(pr, FiniteDistribution::uniform(3), 0.5), ValidationError);
}

TEST(MuTest, FiniteDifferencesAndConvexity)
{
  std::mt19937_64 rng(2);
  double const    h = 1e-4;
  for (int i = 0; i < 50; ++i)
  {
    auto const pr = testkit::random_problem_up_to(rng);
    auto const px = testkit::random_px(rng, pr.in_size());
    for (double s : {0.05, 0.3, 0.5, 0.77, 0.95})
    {
      auto const m  = mu_p(pr, px, s);
      auto const up = mu_p(pr, px, s + h);
      auto const dn = mu_p(pr, px, s - h);
      EXPECT_NEAR(m.mu_prime, (up.mu - dn.mu) / (2 * h), 1e-5);
      EXPECT_NEAR(m.mu_double_prime, (up.mu_prime - dn.mu_prime) / (2 * h), 1e-5);
      EXPECT_GE(m.mu_double_prime, 0.0);
      EXPECT_LE(m.mu, 0.0);
    }
  }
}

TEST(TiltedChannelTest, EndpointsExactAndBscValue)
{
  auto const pr = bsc_pair();
  EXPECT_EQ(tilted_channel(pr, 0.0), pr.w());
  EXPECT_EQ(tilted_channel(pr, 1.0), pr.v());
  auto const ws = tilted_channel(pr, 0.5);
  EXPECT_NEAR(ws(0, 1), kQHat, 1e-14);
  EXPECT_NEAR(ws(0, 1), std::sqrt(0.03) / (std::sqrt(0.03) + std::sqrt(0.63)), 1e-15);
  EXPECT_NEAR(ws(1, 0), ws(0, 1), 1e-15);
  auto const dg = degenerate();
  auto const t  = tilted_channel(dg, 0.42);
  for (std::size_t x = 0; x < 2; ++x)
  {
    for (std::size_t y = 0; y < 2; ++y)
    {
      EXPECT_NEAR(t(x, y), dg.w()(x, y), 1e-15);
    }
  }
}

TEST(ExponentPairTest, BscValuesAreInputIndependent)
{
  auto const pr = bsc_pair();
  for (double rho : {0.5, 0.1, 0.9, 1.0})
  {
    auto const e = exponent_pair(pr, FiniteDistribution::bernoulli(rho), 0.5);
    EXPECT_NEAR(e.e0, kE0Half, 1e-13);
    EXPECT_NEAR(e.e1, kE1Half, 1e-13);
    EXPECT_NEAR(e.e0, binary_divergence(kQHat, 0.1), 1e-12);
  }
  auto const px = FiniteDistribution::uniform(2);
  EXPECT_EQ(exponent_pair(pr, px, 0.0).e0, 0.0);
  EXPECT_NEAR(exponent_pair(pr, px, 0.0).e1, kDWV, 1e-14);
  EXPECT_NEAR(exponent_pair(pr, px, 1.0).e0, kDVW, 1e-14);
  EXPECT_NEAR(exponent_pair(pr, px, 1.0).e1, 0.0, 1e-15);
}

TEST(ExponentPairTest, ExampleOneClosedForm)
{
  auto const   ex1 = example1_problem(0.1, 0.2, 1.0);
  double const s   = 0.3;
  double const q   = 0.2;
  double const a   = std::pow(1 - q, 1 - s) * std::pow(q, s);
  double const qh  = std::pow(q, 1 - s) * std::pow(1 - q, s) / (a + std::pow(q, 1 - s) * std::pow(1 - q, s));
  for (double rho : {0.0, 0.4, 1.0})
  {
    auto const e = exponent_pair(ex1, FiniteDistribution::bernoulli(rho), s);
    EXPECT_NEAR(e.e0, rho * binary_divergence(qh, q), 1e-13);
    EXPECT_NEAR(e.e1, rho * binary_divergence(qh, 1 - q), 1e-13);
  }
}

TEST(ExponentPairTest, IdentitiesMatchDirectDivergences)
{
  std::mt19937_64 rng(4);
  for (int i = 0; i < 100; ++i)
  {
    auto const pr = testkit::random_problem_up_to(rng);
    auto const px = testkit::random_px(rng, pr.in_size());
    for (int k = 0; k <= 9; ++k)
    {
      double const s  = k / 9.0;
      auto const   e  = exponent_pair(pr, px, s);
      auto const   ws = tilted_channel(pr, s);
      EXPECT_NEAR(e.e0, conditional_kl(ws, pr.w(), px), 1e-9);
      EXPECT_NEAR(e.e1, conditional_kl(ws, pr.v(), px), 1e-9);
    }
  }
}

TEST(ExponentFrontierTest, MonotoneAndValidated)
{
  std::mt19937_64 rng(6);
  for (int i = 0; i < 20; ++i)
  {
    auto const pr = testkit::random_problem_up_to(rng);
    auto const px = testkit::random_px(rng, pr.in_size());
    auto const f  = exponent_frontier(pr, px, uniform_grid(101));
    ASSERT_EQ(f.size(), 101u);
    for (std::size_t k = 1; k < f.size(); ++k)
    {
      EXPECT_GT(f[k].e0, f[k - 1].e0);
      EXPECT_LT(f[k].e1, f[k - 1].e1);
    }
  }
  auto const pr = bsc_pair();
  auto const px = FiniteDistribution::uniform(2);
  EXPECT_THROW(exponent_frontier(pr, px, {}), ValidationError);
  EXPECT_THROW(exponent_frontier(pr, px, {0.5, 0.2}), ValidationError);
  EXPECT_THROW(exponent_frontier(pr, px, {0.5, 1.2}), DomainError);
  for (auto const &p : exponent_frontier(degenerate(), px, uniform_grid(11)))
  {
    EXPECT_NEAR(p.e0, 0.0, 1e-15);
    EXPECT_NEAR(p.e1, 0.0, 1e-15);
  }
}

TEST(EOfRTest, EndpointsAndInversion)
{
  auto const pr = bsc_pair();
  auto const px = FiniteDistribution::uniform(2);
  EXPECT_NEAR(e_of_r(pr, px, 0.0), kDWV, 1e-14);
  EXPECT_NEAR(e_of_r(pr, px, kDVW), 0.0, 1e-12);
  auto const sol = e_of_r_solve(pr, px, kE0Half);
  EXPECT_NEAR(sol.value, kE1Half, 1e-9);
  EXPECT_NEAR(sol.s, 0.5, 1e-8);
  EXPECT_THROW(e_of_r(pr, px, -0.1), DomainError);
  EXPECT_THROW(e_of_r(pr, px, kDVW + 0.01), DomainError);
  EXPECT_NEAR(e_of_r(degenerate(), px, 0.0), 0.0, 1e-15);
}

TEST(EOfRTest, DecreasingInRate)
{
  std::mt19937_64 rng(8);
  for (int i = 0; i < 10; ++i)
  {
    auto const   pr   = testkit::random_problem_up_to(rng);
    auto const   px   = testkit::random_px(rng, pr.in_size());
    double const rmax = exponent_pair(pr, px, 1.0).e0;
    double       prev = e_of_r(pr, px, 0.0);
    for (int k = 1; k <= 20; ++k)
    {
      double const e = e_of_r(pr, px, rmax * k / 20.0);
      EXPECT_LE(e, prev + 1e-12);
      prev = e;
    }
  }
}

TEST(ChernoffTest, BscAndExampleOne)
{
  auto const c = chernoff_info(bsc_pair(), FiniteDistribution::uniform(2));
  EXPECT_NEAR(c.value, kChernoff, 1e-12);
  EXPECT_NEAR(c.s_star, kSStar, 1e-8);
  auto const ex1 = example1_problem(0.1, 0.1, 1.0);
  for (double rho : {0.1, 0.5, 1.0})
  {
    auto const r = chernoff_info(ex1, FiniteDistribution::bernoulli(rho));
    EXPECT_NEAR(r.s_star, 0.5, 1e-9);
    EXPECT_NEAR(r.value, rho * kDb05vs01, 1e-12);
  }
  auto const d = chernoff_info(degenerate(), FiniteDistribution::uniform(2));
  EXPECT_EQ(d.value, 0.0);
  EXPECT_EQ(d.s_star, 0.5);
}

TEST(ChernoffTest, BalancesExponentsAndObeysDataProcessing)
{
  std::mt19937_64 rng(9);
  for (int i = 0; i < 50; ++i)
  {
    auto const pr = testkit::random_problem_up_to(rng);
    auto const px = testkit::random_px(rng, pr.in_size());
    auto const c  = chernoff_info(pr, px);
    auto const e  = exponent_pair(pr, px, c.s_star);
    EXPECT_NEAR(e.e0, e.e1, 1e-8);
    EXPECT_NEAR(c.value, e.e0, 1e-8);
    double const dwv = conditional_kl(pr.w(), pr.v(), px);
    double const dvw = conditional_kl(pr.v(), pr.w(), px);
    EXPECT_LE(c.value, std::min(dwv, dvw) + 1e-12);
  }
}

}  // namespace
