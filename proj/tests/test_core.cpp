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

#include <chandisc/core.hpp>

#include "support/test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

namespace {

using namespace chandisc;

// Reference values below were evaluated in 30-digit arithmetic from the
// scalar formulas (binary entropy / divergence sums).
constexpr double kDb01vs03   = 0.1163217565860045;  // d_b(0.1 || 0.3)
constexpr double kDb05vs01   = 0.5108256237659907;  // d_b(0.5 || 0.1) = ln(5/3)
constexpr double kBscCapacity = 0.3680642071684971;  // ln 2 - H_b(0.1)

TEST(FiniteDistributionTest, RejectsNegativeAndNonStochastic)
{
  EXPECT_THROW(FiniteDistribution({0.5, 0.6}), ValidationError);
  EXPECT_THROW(FiniteDistribution({-0.1, 1.1}), ValidationError);
  EXPECT_THROW(FiniteDistribution({}), ValidationError);
  EXPECT_THROW(FiniteDistribution({std::nan(""), 1.0}), ValidationError);
}

TEST(FiniteDistributionTest, RenormalizesWithinIngestionTolerance)
{
  FiniteDistribution const p({0.5 + 4e-10, 0.5});
  EXPECT_NEAR(p[0] + p[1], 1.0, 1e-15);
  EXPECT_THROW(FiniteDistribution({0.5 + 1e-8, 0.5}), ValidationError);
}

TEST(DiscreteChannelTest, ShapeAndRowValidation)
{
  EXPECT_THROW(DiscreteChannel({{0.5, 0.5}, {1.0}}), ValidationError);
  EXPECT_THROW(DiscreteChannel({{0.5, 0.4}}), ValidationError);
  auto const bsc = DiscreteChannel::bsc(0.2);
  EXPECT_EQ(bsc.in_size(), 2u);
  EXPECT_DOUBLE_EQ(bsc(0, 1), 0.2);
  EXPECT_DOUBLE_EQ(bsc(1, 1), 0.8);
}

TEST(ChannelProblemTest, RequiresStrictlyPositiveHypotheses)
{
  auto const id = DiscreteChannel::identity(2);
  EXPECT_THROW(ChannelProblem(id, id, DiscreteChannel::bsc(0.1), CostSpec({0, 1}, 1)),
               ValidationError);
  EXPECT_THROW(ChannelProblem(id, DiscreteChannel::bsc(0.1), DiscreteChannel::bsc(0.1),
                              CostSpec({0, 1, 2}, 1)),
               ValidationError);
  EXPECT_THROW(CostSpec({-1.0, 0.0}, 1.0), ValidationError);
}

TEST(ConditionalKlTest, IdentityIsZero)
{
  std::mt19937_64 rng(7);
  for (int i = 0; i < 20; ++i)
  {
    auto const ch = testkit::random_channel(rng, 3, 4);
    EXPECT_EQ(conditional_kl(ch, ch, testkit::random_px(rng, 3)), 0.0);
  }
}

TEST(ConditionalKlTest, BinarySymmetricPair)
{
  auto const px = FiniteDistribution::uniform(2);
  EXPECT_NEAR(conditional_kl(DiscreteChannel::bsc(0.1), DiscreteChannel::bsc(0.3), px), kDb01vs03,
              1e-14);
}

TEST(ConditionalKlTest, ZeroMassInputIsIgnored)
{
  DiscreteChannel const p({{0.2, 0.8}, {0.6, 0.4}});
  DiscreteChannel const q({{0.5, 0.5}, {0.1, 0.9}});
  DiscreteChannel const q_patched({{0.5, 0.5}, {0.6, 0.4}});
  FiniteDistribution const px({1.0, 0.0});
  EXPECT_DOUBLE_EQ(conditional_kl(p, q, px), conditional_kl(p, q_patched, px));
}

TEST(ConditionalKlTest, Errors)
{
  auto const px = FiniteDistribution::uniform(2);
  EXPECT_THROW(conditional_kl(DiscreteChannel::bsc(0.1), DiscreteChannel::identity(3),
                              FiniteDistribution::uniform(3)),
               ValidationError);
  EXPECT_THROW(conditional_kl(DiscreteChannel::bsc(0.1), DiscreteChannel::identity(2), px),
               DomainError);
  // Absolute continuity only matters on the support of px.
  EXPECT_NO_THROW(conditional_kl(DiscreteChannel({{1.0, 0.0}, {0.5, 0.5}}),
                                 DiscreteChannel({{1.0, 0.0}, {0.0, 1.0}}),
                                 FiniteDistribution({1.0, 0.0})));
}

TEST(ConditionalKlTest, ZeroIffRowsAgreeOnSupport)
{
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i)
  {
    auto const p = testkit::random_channel(rng, 3, 3);
    auto const q = testkit::random_channel(rng, 3, 3);
    EXPECT_GT(conditional_kl(p, q, testkit::random_px(rng, 3)), 1e-10);
  }
}

TEST(MutualInformationTest, ReferenceChannels)
{
  for (std::size_t k : {2u, 3u, 5u})
  {
    EXPECT_NEAR(mutual_information(FiniteDistribution::uniform(k), DiscreteChannel::identity(k)),
                std::log(static_cast<double>(k)), 1e-14);
  }
  DiscreteChannel const useless({{0.3, 0.7}, {0.3, 0.7}, {0.3, 0.7}});
  EXPECT_NEAR(mutual_information(FiniteDistribution({0.2, 0.5, 0.3}), useless), 0.0, 1e-15);
  EXPECT_NEAR(mutual_information(FiniteDistribution::uniform(2), DiscreteChannel::bsc(0.1)),
              kBscCapacity, 1e-14);
}

TEST(MutualInformationTest, ConcaveInInputAndBounded)
{
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> lam(0.0, 1.0);
  for (int i = 0; i < 200; ++i)
  {
    std::size_t const in  = 2 + i % 3;
    std::size_t const out = 2 + (i / 3) % 3;
    auto const ch = testkit::random_channel(rng, in, out);
    auto const a  = testkit::random_px(rng, in);
    auto const b  = testkit::random_px(rng, in);
    double const l = lam(rng);
    double const mixed = mutual_information(mix(a, b, l), ch);
    EXPECT_GE(mixed, l * mutual_information(a, ch) + (1 - l) * mutual_information(b, ch) - 1e-10);
    EXPECT_LE(mixed, std::log(static_cast<double>(std::min(in, out))) + 1e-12);
    EXPECT_TRUE(std::isfinite(mixed));
  }
}

TEST(ExpectedCostTest, Values)
{
  EXPECT_EQ(expected_cost(FiniteDistribution({0.3, 0.7}), CostSpec({0, 0}, 0)), 0.0);
  EXPECT_DOUBLE_EQ(expected_cost(FiniteDistribution::bernoulli(0.35), CostSpec({0, 1}, 1)), 0.35);
  EXPECT_DOUBLE_EQ(expected_cost(FiniteDistribution::uniform(2), CostSpec({2, 4}, 5)), 3.0);
  EXPECT_THROW(expected_cost(FiniteDistribution::uniform(3), CostSpec({2, 4}, 5)), ValidationError);
}

TEST(BinaryHelpersTest, IdentitiesAndValues)
{
  EXPECT_DOUBLE_EQ(binary_entropy(0.5), std::log(2.0));
  EXPECT_EQ(binary_entropy(0.0), 0.0);
  EXPECT_EQ(binary_divergence(0.37, 0.37), 0.0);
  EXPECT_DOUBLE_EQ(binary_convolution(0.23, 0.0), 0.23);
  for (double q : {0.0, 0.1, 0.77, 1.0})
  {
    EXPECT_DOUBLE_EQ(binary_convolution(0.5, q), 0.5);
  }
  EXPECT_NEAR(binary_divergence(0.5, 0.1), kDb05vs01, 1e-15);
  EXPECT_NEAR(binary_divergence(0.5, 0.1), -std::log(2.0 * std::sqrt(0.09)), 1e-15);
  EXPECT_EQ(binary_divergence(1.0, 1.0), 0.0);
}

TEST(BinaryHelpersTest, DomainErrors)
{
  EXPECT_THROW(binary_entropy(1.5), DomainError);
  EXPECT_THROW(binary_divergence(0.5, 0.0), DomainError);
  EXPECT_THROW(binary_divergence(0.5, 1.0), DomainError);
  EXPECT_THROW(binary_convolution(-0.1, 0.2), DomainError);
}

TEST(BinaryHelpersTest, DivergenceMatchesOneInputChannel)
{
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.01, 0.99);
  for (int i = 0; i < 100; ++i)
  {
    double const a = u(rng);
    double const b = u(rng);
    EXPECT_NEAR(binary_divergence(a, b),
                conditional_kl(DiscreteChannel({{1 - a, a}}), DiscreteChannel({{1 - b, b}}),
                               FiniteDistribution({1.0})),
                1e-12);
  }
}

}  // namespace
