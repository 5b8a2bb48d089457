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

/// \file codebook.hpp
/// \brief Constant-composition codewords and the log-likelihood-ratio test
/// that discriminates W from V, evaluated exactly or by Monte Carlo.
///
/// Given a codeword of type P the test decides for W iff
///
///     sum_i ln(V(y_i|x_i) / W(y_i|x_i)) <= n mu_P'(s),
///
/// equality included. The statistic depends on (x^n, y^n) only through the
/// joint counts N(x, y), so for a fixed composition the output counts of each
/// input class are independent multinomials. Exact error probabilities are
/// obtained by enumerating those, which is why they do not depend on which
/// codeword of the type is sent.

#include <chandisc/core.hpp>
#include <chandisc/rng.hpp>
#include <chandisc/simplex.hpp>
#include <chandisc/tilt.hpp>

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

namespace chandisc {

/// Output-count enumeration budget for exact evaluation.
inline constexpr std::uint64_t kExactBudget = 10'000'000;

/// Relative slack under which a statistic counts as equal to the threshold.
inline constexpr double kTieTolerance = 1e-9;

/// Symbol counts of a length-n sequence.
class TypeComposition
{
public:
  TypeComposition(std::size_t n, std::vector<std::size_t> counts)
    : n_(n)
    , counts_(std::move(counts))
  {
    if (n_ == 0)
    {
      throw ValidationError("TypeComposition: blocklength must be positive");
    }
    if (counts_.empty() || std::accumulate(counts_.begin(), counts_.end(), std::size_t{0}) != n_)
    {
      throw ValidationError("TypeComposition: counts must sum to n");
    }
  }

  std::size_t                   n() const { return n_; }
  std::vector<std::size_t> const &counts() const { return counts_; }
  std::size_t                   size() const { return counts_.size(); }

  FiniteDistribution distribution() const
  {
    std::vector<double> p(counts_.size());
    for (std::size_t i = 0; i < p.size(); ++i)
    {
      p[i] = static_cast<double>(counts_[i]) / static_cast<double>(n_);
    }
    return FiniteDistribution(std::move(p));
  }

  bool operator==(TypeComposition const &) const = default;

private:
  std::size_t              n_;
  std::vector<std::size_t> counts_;
};

/// LLRT parameters: decide W iff statistic <= threshold.
struct LlrtSpec
{
  double s         = 0.5;
  double threshold = 0.0;
};

enum class ErrorMethod
{
  exact,
  monte_carlo
};

/// Type I (eps0: decide V under W) and type II (eps1: decide W under V) errors.
struct ErrorPair
{
  double      eps0 = 0.0;
  double      eps1 = 0.0;
  ErrorMethod method = ErrorMethod::exact;
  std::size_t n      = 0;
  double      ci0_halfwidth = 0.0;  ///< 95% normal half-width; 0 for exact
  double      ci1_halfwidth = 0.0;

  bool operator==(ErrorPair const &) const = default;
};

inline TypeComposition quantize_type(FiniteDistribution const &px, std::size_t n)
{
  if (n == 0)
  {
    throw ValidationError("quantize_type: blocklength must be positive");
  }
  return {n, largest_remainder(px.probs(), n)};
}

inline TypeComposition type_of(std::span<std::size_t const> seq, std::size_t alphabet)
{
  std::vector<std::size_t> counts(alphabet, 0);
  for (std::size_t x : seq)
  {
    if (x >= alphabet)
    {
      throw ValidationError("type_of: symbol out of range");
    }
    ++counts[x];
  }
  return {seq.size(), std::move(counts)};
}

/// A uniformly shuffled sequence of the given type; deterministic in `seed`.
inline std::vector<std::size_t> make_codeword(TypeComposition const &comp, std::uint64_t seed)
{
  std::vector<std::size_t> seq;
  seq.reserve(comp.n());
  for (std::size_t x = 0; x < comp.size(); ++x)
  {
    seq.insert(seq.end(), comp.counts()[x], x);
  }
  SplitMix64Stream rng(seed, std::numeric_limits<std::uint64_t>::max());
  for (std::size_t i = seq.size(); i > 1; --i)
  {
    std::swap(seq[i - 1], seq[rng.below(i)]);
  }
  return seq;
}

namespace detail {

inline void require_symbols(ChannelProblem const &problem, std::span<std::size_t const> x_seq,
                            std::span<std::size_t const> y_seq)
{
  if (x_seq.size() != y_seq.size())
  {
    throw ValidationError("llr: input and output sequences differ in length");
  }
  for (std::size_t i = 0; i < x_seq.size(); ++i)
  {
    if (x_seq[i] >= problem.in_size() || y_seq[i] >= problem.out_size())
    {
      throw ValidationError("llr: symbol out of range at position " + std::to_string(i));
    }
  }
}

inline double llr_entry(ChannelProblem const &problem, std::size_t x, std::size_t y)
{
  return std::log(problem.v()(x, y)) - std::log(problem.w()(x, y));
}

// Contribution of one input class given its output counts, in y order.
inline double class_llr(ChannelProblem const &problem, std::size_t x,
                        std::span<std::size_t const> out_counts)
{
  double acc = 0.0;
  for (std::size_t y = 0; y < out_counts.size(); ++y)
  {
    acc += static_cast<double>(out_counts[y]) * llr_entry(problem, x, y);
  }
  return acc;
}

inline bool decide_w(double statistic, double threshold)
{
  return statistic <= threshold + kTieTolerance * std::max(1.0, std::abs(threshold));
}

inline void require_comp(ChannelProblem const &problem, TypeComposition const &comp)
{
  if (comp.size() != problem.in_size())
  {
    throw ValidationError("composition alphabet differs from the channel input alphabet");
  }
}

struct ClassOutcome
{
  double llr;
  double p_w;
  double p_v;
};

inline std::uint64_t exact_work(ChannelProblem const &problem, TypeComposition const &comp)
{
  std::uint64_t total = 1;
  for (std::size_t c : comp.counts())
  {
    std::uint64_t const k = composition_count(c, problem.out_size());
    if (k != 0 && total > std::numeric_limits<std::uint64_t>::max() / k)
    {
      return std::numeric_limits<std::uint64_t>::max();
    }
    total *= k;
  }
  return total;
}

// Multinomial output-count outcomes of one input class.
inline std::vector<ClassOutcome> class_outcomes(ChannelProblem const &problem, std::size_t x,
                                                std::size_t count)
{
  std::vector<ClassOutcome> out;
  double const log_nfact = std::lgamma(static_cast<double>(count) + 1.0);
  for_each_composition(count, problem.out_size(), [&](std::vector<std::size_t> const &k)
  {
    double log_w = log_nfact;
    double log_v = log_nfact;
    for (std::size_t y = 0; y < k.size(); ++y)
    {
      double const ky = static_cast<double>(k[y]);
      double const lf = std::lgamma(ky + 1.0);
      log_w += ky * std::log(problem.w()(x, y)) - lf;
      log_v += ky * std::log(problem.v()(x, y)) - lf;
    }
    out.push_back({class_llr(problem, x, k), std::exp(log_w), std::exp(log_v)});
  });
  return out;
}

// Calls visit(statistic, P_W, P_V) for every joint output-count table.
inline void for_each_outcome(ChannelProblem const &problem, TypeComposition const &comp,
                             std::function<void(double, double, double)> const &visit)
{
  require_comp(problem, comp);
  if (exact_work(problem, comp) > kExactBudget)
  {
    throw BudgetError("exact enumeration needs more than 1e7 output-count tables");
  }
  std::vector<std::vector<ClassOutcome>> classes;
  for (std::size_t x = 0; x < comp.size(); ++x)
  {
    if (comp.counts()[x] > 0)
    {
      classes.push_back(class_outcomes(problem, x, comp.counts()[x]));
    }
  }
  std::function<void(std::size_t, double, double, double)> rec =
    [&](std::size_t idx, double llr, double pw, double pv)
  {
    if (idx == classes.size())
    {
      visit(llr, pw, pv);
      return;
    }
    for (auto const &o : classes[idx])
    {
      rec(idx + 1, llr + o.llr, pw * o.p_w, pv * o.p_v);
    }
  };
  rec(0, 0.0, 1.0, 1.0);
}

}  // namespace detail

/// sum_i ln(V(y_i|x_i) / W(y_i|x_i)).
inline double llr_statistic(ChannelProblem const &problem, std::span<std::size_t const> x_seq,
                            std::span<std::size_t const> y_seq)
{
  detail::require_symbols(problem, x_seq, y_seq);
  CompensatedSum acc;
  for (std::size_t i = 0; i < x_seq.size(); ++i)
  {
    acc += detail::llr_entry(problem, x_seq[i], y_seq[i]);
  }
  return acc.value();
}

/// Threshold n mu_P'(s) with P the composition's own type.
inline LlrtSpec make_llrt(ChannelProblem const &problem, TypeComposition const &comp, double s)
{
  detail::require_comp(problem, comp);
  double const slope = mu_p(problem, comp.distribution(), s).mu_prime;
  return {s, static_cast<double>(comp.n()) * slope};
}

/// Exact (eps0, eps1) of the LLRT for any codeword of type `comp`.
inline ErrorPair exact_error_pair(ChannelProblem const &problem, TypeComposition const &comp,
                                  LlrtSpec const &spec)
{
  CompensatedSum eps0;
  CompensatedSum eps1;
  detail::for_each_outcome(problem, comp, [&](double llr, double pw, double pv)
  {
    if (detail::decide_w(llr, spec.threshold))
    {
      eps1 += pv;
    }
    else
    {
      eps0 += pw;
    }
  });
  auto const clamp = [](double p) { return std::clamp(p, 0.0, 1.0); };
  return {clamp(eps0.value()), clamp(eps1.value()), ErrorMethod::exact, comp.n(), 0.0, 0.0};
}

inline ErrorPair exact_error_pair(ChannelProblem const &problem,
                                  std::span<std::size_t const> codeword, LlrtSpec const &spec)
{
  return exact_error_pair(problem, type_of(codeword, problem.in_size()), spec);
}

inline double ci_halfwidth(double p_hat, std::size_t trials)
{
  return 1.96 * std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(trials));
}

/// Simulated (eps0, eps1). Trial t under W draws from stream 2t of `seed`,
/// under V from stream 2t + 1.
inline ErrorPair monte_carlo_error_pair(ChannelProblem const &problem, TypeComposition const &comp,
                                        LlrtSpec const &spec, std::size_t trials,
                                        std::uint64_t seed)
{
  detail::require_comp(problem, comp);
  if (trials == 0)
  {
    throw ValidationError("monte_carlo_error_pair: trials must be positive");
  }
  auto const        codeword = make_codeword(comp, seed);
  std::size_t const in       = problem.in_size();
  std::size_t const out      = problem.out_size();

  auto cumulative = [&](DiscreteChannel const &ch)
  {
    std::vector<double> cdf(in * out);
    for (std::size_t x = 0; x < in; ++x)
    {
      double acc = 0.0;
      for (std::size_t y = 0; y < out; ++y)
      {
        acc += ch(x, y);
        cdf[x * out + y] = acc;
      }
      cdf[x * out + out - 1] = 1.0;
    }
    return cdf;
  };
  std::vector<double> const cdf_w = cumulative(problem.w());
  std::vector<double> const cdf_v = cumulative(problem.v());

  std::vector<std::size_t> joint(in * out);
  auto const statistic = [&](std::vector<double> const &cdf, SplitMix64Stream rng)
  {
    std::fill(joint.begin(), joint.end(), 0);
    for (std::size_t x : codeword)
    {
      double const u = rng.uniform01();
      std::size_t  y = 0;
      while (y + 1 < out && u >= cdf[x * out + y])
      {
        ++y;
      }
      ++joint[x * out + y];
    }
    double llr = 0.0;
    for (std::size_t x = 0; x < in; ++x)
    {
      if (comp.counts()[x] > 0)
      {
        llr += detail::class_llr(problem, x, std::span<std::size_t const>(joint).subspan(x * out, out));
      }
    }
    return llr;
  };

  std::size_t errors0 = 0;
  std::size_t errors1 = 0;
  for (std::size_t t = 0; t < trials; ++t)
  {
    if (!detail::decide_w(statistic(cdf_w, SplitMix64Stream(seed, 2 * t)), spec.threshold))
    {
      ++errors0;
    }
    if (detail::decide_w(statistic(cdf_v, SplitMix64Stream(seed, 2 * t + 1)), spec.threshold))
    {
      ++errors1;
    }
  }
  double const e0 = static_cast<double>(errors0) / static_cast<double>(trials);
  double const e1 = static_cast<double>(errors1) / static_cast<double>(trials);
  return {e0, e1, ErrorMethod::monte_carlo, comp.n(), ci_halfwidth(e0, trials),
          ci_halfwidth(e1, trials)};
}

/// -(1/n) ln eps, +infinity when eps == 0.
inline double empirical_exponent(double eps, std::size_t n)
{
  if (eps <= 0.0)
  {
    return std::numeric_limits<double>::infinity();
  }
  return -std::log(eps) / static_cast<double>(n);
}

struct ExponentSample
{
  std::size_t     n;
  TypeComposition comp;
  LlrtSpec        llrt;
  ErrorPair       errors;
  double          e0_hat;
  double          e1_hat;
};

struct ExponentEstimate
{
  double e0_hat = 0.0;  ///< -(1/n) ln eps0 at the largest n
  double e1_hat = 0.0;
  double slope0 = std::numeric_limits<double>::quiet_NaN();  ///< least-squares slope of -ln eps0 vs n
  double slope1 = std::numeric_limits<double>::quiet_NaN();
  std::vector<ExponentSample> samples;
};

struct EstimateOptions
{
  ErrorMethod   method = ErrorMethod::exact;
  std::size_t   trials = 100'000;
  std::uint64_t seed   = 0;
};

namespace detail {

// Slope of -ln eps against n over the finite entries; NaN with fewer than two.
inline double log_error_slope(std::vector<ExponentSample> const &samples, bool type_one)
{
  std::vector<std::pair<double, double>> pts;
  for (auto const &s : samples)
  {
    double const eps = type_one ? s.errors.eps0 : s.errors.eps1;
    if (eps > 0.0)
    {
      pts.emplace_back(static_cast<double>(s.n), -std::log(eps));
    }
  }
  if (pts.size() < 2)
  {
    return std::numeric_limits<double>::quiet_NaN();
  }
  double mx = 0.0;
  double my = 0.0;
  for (auto const &[x, y] : pts)
  {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(pts.size());
  my /= static_cast<double>(pts.size());
  double sxy = 0.0;
  double sxx = 0.0;
  for (auto const &[x, y] : pts)
  {
    sxy += (x - mx) * (y - my);
    sxx += (x - mx) * (x - mx);
  }
  return sxx > 0.0 ? sxy / sxx : std::numeric_limits<double>::quiet_NaN();
}

}  // namespace detail

/// Finite-n exponents of the LLRT along increasing blocklengths. Each n uses
/// the quantized type of `px` and its own threshold.
inline ExponentEstimate exponent_estimate(ChannelProblem const &problem, FiniteDistribution const &px,
                                          double s, std::vector<std::size_t> const &n_list,
                                          EstimateOptions const &opts = {})
{
  detail::require_tilt(s, "exponent_estimate");
  if (n_list.empty())
  {
    throw ValidationError("exponent_estimate: empty blocklength list");
  }
  for (std::size_t i = 1; i < n_list.size(); ++i)
  {
    if (n_list[i] <= n_list[i - 1])
    {
      throw ValidationError("exponent_estimate: blocklengths must be increasing");
    }
  }
  ExponentEstimate est;
  for (std::size_t n : n_list)
  {
    TypeComposition comp = quantize_type(px, n);
    LlrtSpec const  llrt = make_llrt(problem, comp, s);
    ErrorPair const err  = opts.method == ErrorMethod::exact
                             ? exact_error_pair(problem, comp, llrt)
                             : monte_carlo_error_pair(problem, comp, llrt, opts.trials, opts.seed);
    est.samples.push_back({n, std::move(comp), llrt, err, empirical_exponent(err.eps0, n),
                           empirical_exponent(err.eps1, n)});
  }
  est.e0_hat = est.samples.back().e0_hat;
  est.e1_hat = est.samples.back().e1_hat;
  est.slope0 = detail::log_error_slope(est.samples, true);
  est.slope1 = detail::log_error_slope(est.samples, false);
  return est;
}

struct NpResult
{
  double    threshold = 0.0;  ///< decide W iff statistic <= threshold; -inf means never
  ErrorPair errors;
};

/// Deterministic Neyman-Pearson threshold test: the least eps1 among LLR
/// thresholds whose eps0 stays within alpha. No randomisation at the
/// boundary atom, so the attained eps0 can be strictly below alpha.
inline NpResult np_threshold_search(ChannelProblem const &problem, TypeComposition const &comp,
                                    double alpha)
{
  if (!(alpha > 0.0 && alpha < 1.0))
  {
    throw ValidationError("np_threshold_search: alpha must lie in (0,1)");
  }
  std::vector<detail::ClassOutcome> atoms;
  detail::for_each_outcome(problem, comp, [&](double llr, double pw, double pv)
  {
    atoms.push_back({llr, pw, pv});
  });
  std::sort(atoms.begin(), atoms.end(), [](auto const &a, auto const &b) { return a.llr < b.llr; });

  // Merge statistics that are equal up to the tie tolerance.
  std::vector<detail::ClassOutcome> groups;
  for (std::size_t i = 0; i < atoms.size();)
  {
    double const   head = atoms[i].llr;
    double         last = head;
    CompensatedSum pw;
    CompensatedSum pv;
    std::size_t    j = i;
    while (j < atoms.size() && detail::decide_w(atoms[j].llr, head))
    {
      last = atoms[j].llr;
      pw += atoms[j].p_w;
      pv += atoms[j].p_v;
      ++j;
    }
    groups.push_back({last, pw.value(), pv.value()});
    i = j;
  }

  // tail_w[g] = P_W(statistic in groups g..end)
  std::vector<double> tail_w(groups.size() + 1, 0.0);
  {
    CompensatedSum acc;
    for (std::size_t g = groups.size(); g-- > 0;)
    {
      acc += groups[g].p_w;
      tail_w[g] = acc.value();
    }
  }
  auto const clamp = [](double p) { return std::clamp(p, 0.0, 1.0); };
  if (tail_w[0] <= alpha)
  {
    return {-std::numeric_limits<double>::infinity(),
            {clamp(tail_w[0]), 0.0, ErrorMethod::exact, comp.n(), 0.0, 0.0}};
  }
  CompensatedSum eps1;
  for (std::size_t g = 0; g < groups.size(); ++g)
  {
    eps1 += groups[g].p_v;
    if (tail_w[g + 1] <= alpha)
    {
      return {groups[g].llr,
              {clamp(tail_w[g + 1]), clamp(eps1.value()), ErrorMethod::exact, comp.n(), 0.0, 0.0}};
    }
  }
  // Unreachable: accepting every outcome gives eps0 = 0.
  return {groups.back().llr, {0.0, clamp(eps1.value()), ErrorMethod::exact, comp.n(), 0.0, 0.0}};
}

}  // namespace chandisc
