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
#pragma once

/// \file core.hpp
/// \brief Finite-alphabet distributions, channels and the divergence and
/// information primitives shared by the rest of the library.
///
/// All quantities are in nats. Alphabets are index sets 0..k-1.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace chandisc {

/// Malformed input: wrong shapes, non-stochastic rows, bad parameters.
class ValidationError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error
{
public:
  using std::domain_error::domain_error;
};

/// Requested computation exceeds a documented resource budget.
class BudgetError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Tolerance on row sums accepted at ingestion; rows are renormalized after.
inline constexpr double kStochasticTolerance = 1e-9;

/// Neumaier compensated summation.
class CompensatedSum
{
public:
  void add(double v)
  {
    double const t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
    {
      comp_ += (sum_ - t) + v;
    }
    else
    {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }

  CompensatedSum &operator+=(double v)
  {
    add(v);
    return *this;
  }

  double value() const { return sum_ + comp_; }

private:
  double sum_  = 0.0;
  double comp_ = 0.0;
};

namespace detail {

inline std::vector<double> normalized_probabilities(std::vector<double> probs, char const *what)
{
  if (probs.empty())
  {
    throw ValidationError(std::string(what) + ": empty probability vector");
  }
  CompensatedSum total;
  for (double p : probs)
  {
    if (!std::isfinite(p) || p < 0.0)
    {
      throw ValidationError(std::string(what) + ": entries must be finite and non-negative");
    }
    total += p;
  }
  double const s = total.value();
  if (std::abs(s - 1.0) > kStochasticTolerance)
  {
    throw ValidationError(std::string(what) + ": entries sum to " + std::to_string(s) +
                          ", expected 1");
  }
  for (double &p : probs)
  {
    p /= s;
  }
  return probs;
}

// x ln(x / y) with the 0 ln(0/y) = 0 convention.
inline double xlogxy(double x, double y)
{
  if (x == 0.0)
  {
    return 0.0;
  }
  return x * std::log(x / y);
}

}  // namespace detail

/// Probability vector over a finite alphabet.
class FiniteDistribution
{
public:
  explicit FiniteDistribution(std::vector<double> probs)
    : probs_(detail::normalized_probabilities(std::move(probs), "FiniteDistribution"))
  {}

  static FiniteDistribution uniform(std::size_t k)
  {
    if (k == 0)
    {
      throw ValidationError("FiniteDistribution: alphabet size must be positive");
    }
    return FiniteDistribution(std::vector<double>(k, 1.0 / static_cast<double>(k)));
  }

  static FiniteDistribution point_mass(std::size_t k, std::size_t x)
  {
    if (x >= k)
    {
      throw ValidationError("FiniteDistribution: point mass index out of range");
    }
    std::vector<double> p(k, 0.0);
    p[x] = 1.0;
    return FiniteDistribution(std::move(p));
  }

  /// Bern(rho) on {0, 1}: mass rho on symbol 1.
  static FiniteDistribution bernoulli(double rho)
  {
    if (!(rho >= 0.0 && rho <= 1.0))
    {
      throw ValidationError("FiniteDistribution: Bernoulli parameter outside [0,1]");
    }
    return FiniteDistribution({1.0 - rho, rho});
  }

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  std::span<double const> probs() const { return probs_; }

  bool operator==(FiniteDistribution const &) const = default;

private:
  std::vector<double> probs_;
};

/// lambda * a + (1 - lambda) * b.
inline FiniteDistribution mix(FiniteDistribution const &a, FiniteDistribution const &b,
                              double lambda)
{
  if (a.size() != b.size())
  {
    throw ValidationError("mix: alphabet sizes differ");
  }
  if (!(lambda >= 0.0 && lambda <= 1.0))
  {
    throw ValidationError("mix: weight outside [0,1]");
  }
  std::vector<double> p(a.size());
  for (std::size_t i = 0; i < p.size(); ++i)
  {
    p[i] = lambda * a[i] + (1.0 - lambda) * b[i];
  }
  return FiniteDistribution(std::move(p));
}

/// Row-stochastic matrix from an input alphabet to an output alphabet.
class DiscreteChannel
{
public:
  explicit DiscreteChannel(std::vector<std::vector<double>> const &rows)
  {
    if (rows.empty())
    {
      throw ValidationError("DiscreteChannel: no rows");
    }
    in_size_  = rows.size();
    out_size_ = rows.front().size();
    if (out_size_ == 0)
    {
      throw ValidationError("DiscreteChannel: empty output alphabet");
    }
    data_.reserve(in_size_ * out_size_);
    for (std::size_t x = 0; x < in_size_; ++x)
    {
      if (rows[x].size() != out_size_)
      {
        throw ValidationError("DiscreteChannel: row " + std::to_string(x) + " has length " +
                              std::to_string(rows[x].size()) + ", expected " +
                              std::to_string(out_size_));
      }
      auto row = detail::normalized_probabilities(rows[x], "DiscreteChannel row");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  /// Binary symmetric channel with crossover probability p.
  static DiscreteChannel bsc(double p)
  {
    if (!(p >= 0.0 && p <= 1.0))
    {
      throw ValidationError("bsc: crossover outside [0,1]");
    }
    return DiscreteChannel({{1.0 - p, p}, {p, 1.0 - p}});
  }

  static DiscreteChannel identity(std::size_t k)
  {
    std::vector<std::vector<double>> rows(k, std::vector<double>(k, 0.0));
    for (std::size_t i = 0; i < k; ++i)
    {
      rows[i][i] = 1.0;
    }
    return DiscreteChannel(rows);
  }

  std::size_t in_size() const { return in_size_; }
  std::size_t out_size() const { return out_size_; }

  double operator()(std::size_t x, std::size_t y) const { return data_[x * out_size_ + y]; }

  std::span<double const> row(std::size_t x) const
  {
    return std::span<double const>(data_).subspan(x * out_size_, out_size_);
  }

  std::vector<std::vector<double>> rows() const
  {
    std::vector<std::vector<double>> out(in_size_);
    for (std::size_t x = 0; x < in_size_; ++x)
    {
      auto r = row(x);
      out[x].assign(r.begin(), r.end());
    }
    return out;
  }

  bool operator==(DiscreteChannel const &) const = default;

private:
  std::size_t         in_size_  = 0;
  std::size_t         out_size_ = 0;
  std::vector<double> data_;
};

/// Additive input cost b(x) together with the budget B on its average.
class CostSpec
{
public:
  CostSpec(std::vector<double> costs, double budget)
    : costs_(std::move(costs))
    , budget_(budget)
  {
    for (double c : costs_)
    {
      if (!std::isfinite(c) || c < 0.0)
      {
        throw ValidationError("CostSpec: costs must be finite and non-negative");
      }
    }
    if (!std::isfinite(budget_) || budget_ < 0.0)
    {
      throw ValidationError("CostSpec: budget must be finite and non-negative");
    }
  }

  /// Zero cost for every input, so every input distribution is feasible.
  static CostSpec unconstrained(std::size_t in_size) { return {std::vector<double>(in_size), 0.0}; }

  std::span<double const> costs() const { return costs_; }
  double                  budget() const { return budget_; }

  bool operator==(CostSpec const &) const = default;

private:
  std::vector<double> costs_;
  double              budget_;
};

/// One instance of the joint setting: the communication channel, the two
/// hypothesis channels W (theta = 0) and V (theta = 1), and the input cost.
class ChannelProblem
{
public:
  ChannelProblem(DiscreteChannel comm, DiscreteChannel w, DiscreteChannel v, CostSpec cost)
    : comm_(std::move(comm))
    , w_(std::move(w))
    , v_(std::move(v))
    , cost_(std::move(cost))
  {
    if (comm_.in_size() != w_.in_size() || w_.in_size() != v_.in_size())
    {
      throw ValidationError("ChannelProblem: comm, w and v must share the input alphabet");
    }
    if (w_.out_size() != v_.out_size())
    {
      throw ValidationError("ChannelProblem: w and v must share the output alphabet");
    }
    if (cost_.costs().size() != w_.in_size())
    {
      throw ValidationError("ChannelProblem: cost vector length differs from input alphabet");
    }
    for (std::size_t x = 0; x < w_.in_size(); ++x)
    {
      for (std::size_t y = 0; y < w_.out_size(); ++y)
      {
        if (w_(x, y) * v_(x, y) == 0.0)
        {
          throw ValidationError("ChannelProblem: w(y|x) v(y|x) must be non-zero, violated at x=" +
                                std::to_string(x) + ", y=" + std::to_string(y));
        }
      }
    }
  }

  DiscreteChannel const &comm() const { return comm_; }
  DiscreteChannel const &w() const { return w_; }
  DiscreteChannel const &v() const { return v_; }
  CostSpec const        &cost() const { return cost_; }

  std::size_t in_size() const { return w_.in_size(); }
  std::size_t out_size() const { return w_.out_size(); }

  bool operator==(ChannelProblem const &) const = default;

private:
  DiscreteChannel comm_;
  DiscreteChannel w_;
  DiscreteChannel v_;
  CostSpec        cost_;
};

/// D(p || q | px) = sum_x px(x) sum_y p(y|x) ln(p(y|x) / q(y|x)).
inline double conditional_kl(DiscreteChannel const &p, DiscreteChannel const &q,
                             FiniteDistribution const &px)
{
  if (p.in_size() != q.in_size() || p.out_size() != q.out_size())
  {
    throw ValidationError("conditional_kl: channel shapes differ");
  }
  if (px.size() != p.in_size())
  {
    throw ValidationError("conditional_kl: input distribution length differs from channel");
  }
  CompensatedSum total;
  for (std::size_t x = 0; x < p.in_size(); ++x)
  {
    if (px[x] == 0.0)
    {
      continue;
    }
    CompensatedSum row;
    for (std::size_t y = 0; y < p.out_size(); ++y)
    {
      double const a = p(x, y);
      double const b = q(x, y);
      if (a > 0.0 && b == 0.0)
      {
        throw DomainError("conditional_kl: p not absolutely continuous w.r.t. q at x=" +
                          std::to_string(x) + ", y=" + std::to_string(y));
      }
      row += detail::xlogxy(a, b);
    }
    total += px[x] * row.value();
  }
  return std::max(0.0, total.value());
}

/// I(px, ch) in nats.
inline double mutual_information(FiniteDistribution const &px, DiscreteChannel const &ch)
{
  if (px.size() != ch.in_size())
  {
    throw ValidationError("mutual_information: input distribution length differs from channel");
  }
  std::vector<double> marginal(ch.out_size(), 0.0);
  for (std::size_t y = 0; y < ch.out_size(); ++y)
  {
    CompensatedSum m;
    for (std::size_t x = 0; x < ch.in_size(); ++x)
    {
      m += px[x] * ch(x, y);
    }
    marginal[y] = m.value();
  }
  CompensatedSum total;
  for (std::size_t x = 0; x < ch.in_size(); ++x)
  {
    if (px[x] == 0.0)
    {
      continue;
    }
    for (std::size_t y = 0; y < ch.out_size(); ++y)
    {
      total += px[x] * detail::xlogxy(ch(x, y), marginal[y]);
    }
  }
  return std::max(0.0, total.value());
}

inline double expected_cost(FiniteDistribution const &px, CostSpec const &cost)
{
  if (px.size() != cost.costs().size())
  {
    throw ValidationError("expected_cost: lengths differ");
  }
  CompensatedSum total;
  for (std::size_t x = 0; x < px.size(); ++x)
  {
    total += px[x] * cost.costs()[x];
  }
  return total.value();
}

inline bool cost_feasible(FiniteDistribution const &px, CostSpec const &cost, double slack = 1e-9)
{
  return expected_cost(px, cost) <= cost.budget() + slack;
}

// Binary helpers.

namespace detail {
inline void require_unit(double p, char const *what)
{
  if (!(p >= 0.0 && p <= 1.0))
  {
    throw DomainError(std::string(what) + ": argument outside [0,1]");
  }
}
}  // namespace detail

/// H_b(p) in nats.
inline double binary_entropy(double p)
{
  detail::require_unit(p, "binary_entropy");
  return -detail::xlogxy(p, 1.0) - detail::xlogxy(1.0 - p, 1.0);
}

/// d_b(a || b) in nats.
inline double binary_divergence(double a, double b)
{
  detail::require_unit(a, "binary_divergence");
  detail::require_unit(b, "binary_divergence");
  if ((b == 0.0 && a != 0.0) || (b == 1.0 && a != 1.0))
  {
    throw DomainError("binary_divergence: infinite divergence");
  }
  return std::max(0.0, detail::xlogxy(a, b) + detail::xlogxy(1.0 - a, 1.0 - b));
}

/// p * q = (1 - q) p + q (1 - p).
inline double binary_convolution(double p, double q)
{
  detail::require_unit(p, "binary_convolution");
  detail::require_unit(q, "binary_convolution");
  return (1.0 - q) * p + q * (1.0 - p);
}

}  // namespace chandisc
