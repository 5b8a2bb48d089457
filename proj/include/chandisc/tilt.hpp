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

/// \file tilt.hpp
/// \brief Log-moment-generating functions of the per-symbol log-likelihood
/// ratio, the tilted channel family W_s and the exponents it induces.
///
/// For an input x the function
///
///     mu_x(s) = ln sum_y W(y|x)^(1-s) V(y|x)^s,   s in [0, 1]
///
/// is convex with mu_x(0) = mu_x(1) = 0. Its first and second derivatives are
/// the mean and variance of ln(V/W) under the tilted row W_s(.|x). Averaging
/// over an input distribution P gives mu_P and the two divergences
///
///     D(W_s || W | P) = s mu_P'(s) - mu_P(s)
///     D(W_s || V | P) = (s - 1) mu_P'(s) - mu_P(s)
///
/// which trace the optimal (E0, E1) exponent trade-off as s sweeps [0, 1].

#include <chandisc/core.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace chandisc {

/// mu(s), mu'(s), mu''(s) at a single s.
struct MuTriple
{
  double mu               = 0.0;
  double mu_prime         = 0.0;
  double mu_double_prime  = 0.0;
};

/// (E0, E1) in nats per symbol, generated by tilt parameter s.
struct ExponentPoint
{
  double e0 = 0.0;
  double e1 = 0.0;
  double s  = 0.0;
};

namespace detail {

inline void require_tilt(double s, char const *what)
{
  if (!(s >= 0.0 && s <= 1.0))
  {
    throw DomainError(std::string(what) + ": tilt parameter outside [0,1]");
  }
}

inline void require_px(ChannelProblem const &problem, FiniteDistribution const &px, char const *what)
{
  if (px.size() != problem.in_size())
  {
    throw ValidationError(std::string(what) + ": input distribution length differs from channel");
  }
}

}  // namespace detail

/// mu_x(s) and its derivatives, evaluated in log-sum-exp form.
inline MuTriple mu_x(ChannelProblem const &problem, std::size_t x, double s)
{
  detail::require_tilt(s, "mu_x");
  if (x >= problem.in_size())
  {
    throw ValidationError("mu_x: input symbol out of range");
  }
  auto const          w = problem.w().row(x);
  auto const          v = problem.v().row(x);
  std::size_t const   k = w.size();
  if (std::equal(w.begin(), w.end(), v.begin()))
  {
    return {0.0, 0.0, 0.0};
  }
  std::vector<double> exponent(k);
  std::vector<double> llr(k);
  double              peak = -std::numeric_limits<double>::infinity();
  for (std::size_t y = 0; y < k; ++y)
  {
    double const lw = std::log(w[y]);
    double const lv = std::log(v[y]);
    llr[y]          = lv - lw;
    exponent[y]     = (1.0 - s) * lw + s * lv;
    peak            = std::max(peak, exponent[y]);
  }
  CompensatedSum z;
  for (std::size_t y = 0; y < k; ++y)
  {
    exponent[y] = std::exp(exponent[y] - peak);
    z += exponent[y];
  }
  double const norm = z.value();

  CompensatedSum mean;
  for (std::size_t y = 0; y < k; ++y)
  {
    mean += exponent[y] / norm * llr[y];
  }
  CompensatedSum var;
  for (std::size_t y = 0; y < k; ++y)
  {
    double const d = llr[y] - mean.value();
    var += exponent[y] / norm * d * d;
  }
  // Rows are stochastic, so mu vanishes at both endpoints; skip the rounding.
  double const mu = (s == 0.0 || s == 1.0) ? 0.0 : peak + std::log(norm);
  return {mu, mean.value(), var.value()};
}

/// P-weighted average of mu_x over the input alphabet.
inline MuTriple mu_p(ChannelProblem const &problem, FiniteDistribution const &px, double s)
{
  detail::require_tilt(s, "mu_p");
  detail::require_px(problem, px, "mu_p");
  CompensatedSum mu;
  CompensatedSum d1;
  CompensatedSum d2;
  for (std::size_t x = 0; x < px.size(); ++x)
  {
    if (px[x] == 0.0)
    {
      continue;
    }
    MuTriple const t = mu_x(problem, x, s);
    mu += px[x] * t.mu;
    d1 += px[x] * t.mu_prime;
    d2 += px[x] * t.mu_double_prime;
  }
  return {mu.value(), d1.value(), d2.value()};
}

/// W_s(y|x) proportional to W(y|x)^(1-s) V(y|x)^s; W_0 = W and W_1 = V exactly.
inline DiscreteChannel tilted_channel(ChannelProblem const &problem, double s)
{
  detail::require_tilt(s, "tilted_channel");
  if (s == 0.0)
  {
    return problem.w();
  }
  if (s == 1.0)
  {
    return problem.v();
  }
  std::vector<std::vector<double>> rows(problem.in_size(), std::vector<double>(problem.out_size()));
  for (std::size_t x = 0; x < problem.in_size(); ++x)
  {
    auto const w    = problem.w().row(x);
    auto const v    = problem.v().row(x);
    double     peak = -std::numeric_limits<double>::infinity();
    for (std::size_t y = 0; y < w.size(); ++y)
    {
      rows[x][y] = (1.0 - s) * std::log(w[y]) + s * std::log(v[y]);
      peak       = std::max(peak, rows[x][y]);
    }
    CompensatedSum z;
    for (double &e : rows[x])
    {
      e = std::exp(e - peak);
      z += e;
    }
    for (double &e : rows[x])
    {
      e /= z.value();
    }
  }
  return DiscreteChannel(rows);
}

/// (D(W_s || W | px), D(W_s || V | px)) through the mu identities.
inline ExponentPoint exponent_pair(ChannelProblem const &problem, FiniteDistribution const &px,
                                   double s)
{
  MuTriple const m = mu_p(problem, px, s);
  // W_0 = W and W_1 = V, so the endpoint divergences are exactly zero.
  double const   e0 = s == 0.0 ? 0.0 : s * m.mu_prime - m.mu;
  double const   e1 = s == 1.0 ? 0.0 : (s - 1.0) * m.mu_prime - m.mu;
  return {std::max(0.0, e0), std::max(0.0, e1), s};
}

/// `points` values of s equally spaced on [0, 1], endpoints included.
inline std::vector<double> uniform_grid(std::size_t points)
{
  if (points < 2)
  {
    throw ValidationError("uniform_grid: need at least two points");
  }
  std::vector<double> grid(points);
  for (std::size_t i = 0; i < points; ++i)
  {
    grid[i] = static_cast<double>(i) / static_cast<double>(points - 1);
  }
  grid.back() = 1.0;
  return grid;
}

inline constexpr std::size_t kDefaultSPoints = 201;

/// One exponent pair per grid value.
inline std::vector<ExponentPoint> exponent_frontier(ChannelProblem const     &problem,
                                                    FiniteDistribution const &px,
                                                    std::vector<double> const &s_grid)
{
  if (s_grid.empty())
  {
    throw ValidationError("exponent_frontier: empty s grid");
  }
  for (std::size_t i = 0; i < s_grid.size(); ++i)
  {
    detail::require_tilt(s_grid[i], "exponent_frontier");
    if (i > 0 && s_grid[i] < s_grid[i - 1])
    {
      throw ValidationError("exponent_frontier: s grid must be sorted");
    }
  }
  std::vector<ExponentPoint> out;
  out.reserve(s_grid.size());
  for (double s : s_grid)
  {
    out.push_back(exponent_pair(problem, px, s));
  }
  return out;
}

/// Solution of the constrained divergence minimisation E(r, P).
struct RateTilt
{
  double value = 0.0;  ///< E(r, P)
  double s     = 0.0;  ///< tilt with D(W_s || W | P) = r
};

/// E(r, P) = min over T with D(T||W|P) <= r of D(T||V|P), attained on the
/// tilted family. s -> D(W_s||W|P) is increasing, so the tilt is located by
/// bisection; the returned s always satisfies D(W_s||W|P) <= r.
inline RateTilt e_of_r_solve(ChannelProblem const &problem, FiniteDistribution const &px, double r)
{
  detail::require_px(problem, px, "e_of_r");
  double const r_max = exponent_pair(problem, px, 1.0).e0;
  if (!(r >= 0.0) || r > r_max + 1e-12)
  {
    throw DomainError("e_of_r: r outside [0, D(V||W|P)]");
  }
  if (r >= r_max)
  {
    return {exponent_pair(problem, px, 1.0).e1, 1.0};
  }
  if (r == 0.0)
  {
    return {exponent_pair(problem, px, 0.0).e1, 0.0};
  }
  double lo = 0.0;
  double hi = 1.0;
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it)
  {
    double const mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi)
    {
      break;
    }
    if (exponent_pair(problem, px, mid).e0 <= r)
    {
      lo = mid;
    }
    else
    {
      hi = mid;
    }
  }
  return {exponent_pair(problem, px, lo).e1, lo};
}

inline double e_of_r(ChannelProblem const &problem, FiniteDistribution const &px, double r)
{
  return e_of_r_solve(problem, px, r).value;
}

/// C(W||V|P) together with its minimising tilt.
struct ChernoffResult
{
  double value  = 0.0;
  double s_star = 0.5;
};

/// C(W||V|P) = -min_s mu_P(s), by golden-section search on the convex mu_P
/// followed by a bisection polish on the sign of mu_P'.
inline ChernoffResult chernoff_info(ChannelProblem const &problem, FiniteDistribution const &px)
{
  detail::require_px(problem, px, "chernoff_info");
  if (mu_p(problem, px, 0.5).mu_double_prime <= 0.0)
  {
    return {0.0, 0.5};
  }
  auto const   f      = [&](double s) { return mu_p(problem, px, s).mu; };
  double const golden = 0.5 * (std::sqrt(5.0) - 1.0);
  double       a      = 0.0;
  double       b      = 1.0;
  double       c      = b - golden * (b - a);
  double       d      = a + golden * (b - a);
  double       fc     = f(c);
  double       fd     = f(d);
  while (b - a > 1e-12)
  {
    if (fc < fd)
    {
      b  = d;
      d  = c;
      fd = fc;
      c  = b - golden * (b - a);
      fc = f(c);
    }
    else
    {
      a  = c;
      c  = d;
      fc = fd;
      d  = a + golden * (b - a);
      fd = f(d);
    }
  }
  // Flat minima defeat value comparisons near the optimum; mu_P' is exact.
  double       lo = std::max(0.0, a - 1e-6);
  double       hi = std::min(1.0, b + 1e-6);
  auto const   g  = [&](double s) { return mu_p(problem, px, s).mu_prime; };
  double s = 0.5 * (a + b);
  if (g(lo) < 0.0 && g(hi) > 0.0)
  {
    for (int it = 0; it < 100; ++it)
    {
      double const mid = 0.5 * (lo + hi);
      if (mid == lo || mid == hi)
      {
        break;
      }
      (g(mid) < 0.0 ? lo : hi) = mid;
    }
    s = 0.5 * (lo + hi);
  }
  else if (g(0.0) >= 0.0)
  {
    s = 0.0;
  }
  else if (g(1.0) <= 0.0)
  {
    s = 1.0;
  }
  return {std::max(0.0, -f(s)), s};
}

}  // namespace chandisc
