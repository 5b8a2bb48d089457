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

/// \file cli.hpp
/// \brief The `chandisc` command line: verbs frontier, surface, minimax, np,
/// simulate and membership.
///
/// Exit codes: 0 success, 1 unexpected failure, 2 validation error (bad
/// flags, malformed problem file, infeasible cost), 3 resource budget.

#include <chandisc/codebook.hpp>
#include <chandisc/io.hpp>
#include <chandisc/region.hpp>
#include <chandisc/tilt.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <ostream>
#include <string>
#include <vector>

namespace chandisc::cli {

inline constexpr int kExitOk         = 0;
inline constexpr int kExitFailure    = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitBudget     = 3;

namespace detail {

inline std::vector<std::string> split_list(std::string const &text)
{
  std::vector<std::string> out;
  std::string              cell;
  std::istringstream       in(text);
  while (std::getline(in, cell, ','))
  {
    auto const b = cell.find_first_not_of(" \t");
    auto const e = cell.find_last_not_of(" \t");
    out.push_back(b == std::string::npos ? std::string() : cell.substr(b, e - b + 1));
  }
  return out;
}

inline double parse_double(std::string const &s, char const *what)
{
  std::size_t used = 0;
  double      v    = 0.0;
  try
  {
    v = std::stod(s, &used);
  }
  catch (std::exception const &)
  {
    used = 0;
  }
  if (used == 0 || used != s.size())
  {
    throw ValidationError(std::string(what) + ": '" + s + "' is not a number");
  }
  return v;
}

inline std::size_t parse_size(std::string const &s, char const *what)
{
  double const v = parse_double(s, what);
  if (v < 1.0 || v != std::floor(v) || v > 1e9)
  {
    throw ValidationError(std::string(what) + ": '" + s + "' is not a positive integer");
  }
  return static_cast<std::size_t>(v);
}

/// "0.3,0.7" or "uniform".
inline FiniteDistribution parse_px(std::string const &text, std::size_t in_size)
{
  if (text == "uniform")
  {
    return FiniteDistribution::uniform(in_size);
  }
  std::vector<double> p;
  for (auto const &c : split_list(text))
  {
    p.push_back(parse_double(c, "--px"));
  }
  if (p.size() != in_size)
  {
    throw ValidationError("--px: expected " + std::to_string(in_size) + " probabilities");
  }
  return FiniteDistribution(std::move(p));
}

/// "10", "4,6,8" or the inclusive range "4:14".
inline std::vector<std::size_t> parse_blocklengths(std::string const &text)
{
  std::vector<std::size_t> out;
  if (auto colon = text.find(':'); colon != std::string::npos)
  {
    std::size_t const lo = parse_size(text.substr(0, colon), "--n");
    std::size_t const hi = parse_size(text.substr(colon + 1), "--n");
    if (hi < lo)
    {
      throw ValidationError("--n: empty range");
    }
    for (std::size_t n = lo; n <= hi; ++n)
    {
      out.push_back(n);
    }
    return out;
  }
  for (auto const &c : split_list(text))
  {
    out.push_back(parse_size(c, "--n"));
  }
  for (std::size_t i = 1; i < out.size(); ++i)
  {
    if (out[i] <= out[i - 1])
    {
      throw ValidationError("--n: blocklengths must be increasing");
    }
  }
  return out;
}

inline nlohmann::json px_json(FiniteDistribution const &px)
{
  nlohmann::json j = nlohmann::json::array();
  for (double p : px.probs())
  {
    j.push_back(json_number(p));
  }
  return j;
}

struct Common
{
  std::string problem_path;
  std::string out_path;
  std::string units  = "nats";
  std::string format;  // csv | json; empty means by extension

  Units unit() const { return units == "bits" ? Units::bits : Units::nats; }

  bool json() const
  {
    if (!format.empty())
    {
      return format == "json";
    }
    return out_path.size() >= 5 && out_path.compare(out_path.size() - 5, 5, ".json") == 0;
  }
};

inline void add_common(CLI::App *cmd, Common &c, bool with_format = true)
{
  cmd->add_option("--problem", c.problem_path, "Problem file (JSON)")->required();
  cmd->add_option("--out", c.out_path, "Output file; stdout when omitted");
  cmd->add_option("--units", c.units, "Display units for rates and exponents")
    ->check(CLI::IsMember({"nats", "bits"}));
  if (with_format)
  {
    cmd->add_option("--format", c.format, "Output format (default: by --out extension, else csv)")
      ->check(CLI::IsMember({"csv", "json"}));
  }
}

inline void emit(Common const &c, std::string const &content, std::ostream &out)
{
  if (c.out_path.empty())
  {
    out << content;
  }
  else
  {
    atomic_write(c.out_path, content);
  }
}

inline RunManifest manifest(std::string command, ProblemFile const &pf, nlohmann::json params)
{
  RunManifest m;
  m.command      = std::move(command);
  m.parameters   = std::move(params);
  m.problem_hash = problem_hash(pf.problem);
  m.timestamp    = manifest_timestamp();
  return m;
}

inline std::vector<std::string> csv_preamble(std::string const &kind, Units u,
                                             RunManifest const &m)
{
  return {"chandisc " + kind + " csv", std::string("units: ") + units_name(u),
          "manifest: " + m.to_json().dump()};
}

inline std::string surface_output(ParetoSurface const &surface, Common const &c,
                                  RunManifest const &m, std::size_t in_size)
{
  Units const u = c.unit();
  if (c.json())
  {
    nlohmann::json j;
    j["format"]        = "chandisc surface";
    j["units"]         = units_name(u);
    j["manifest"]      = m.to_json();
    j["px_resolution"] = surface.px_resolution;
    j["s_points"]      = surface.s_points;
    j["points"]        = nlohmann::json::array();
    for (auto const &p : surface.points)
    {
      j["points"].push_back({{"rate", json_number(display(p.rate, u))},
                             {"e0", json_number(display(p.e0, u))},
                             {"e1", json_number(display(p.e1, u))},
                             {"s", json_number(p.s)},
                             {"px", px_json(p.px)}});
    }
    return j.dump(2) + "\n";
  }
  CsvTable t;
  t.comments = csv_preamble("surface", u, m);
  t.header   = {"rate", "e0", "e1", "s"};
  for (std::size_t i = 0; i < in_size; ++i)
  {
    t.header.push_back("px_" + std::to_string(i));
  }
  for (auto const &p : surface.points)
  {
    std::vector<double> row{display(p.rate, u), display(p.e0, u), display(p.e1, u), p.s};
    row.insert(row.end(), p.px.probs().begin(), p.px.probs().end());
    t.rows.push_back(std::move(row));
  }
  return write_csv(t);
}

inline std::string pairs_output(std::string const &kind, std::vector<RateExponentPoint> const &pts,
                                Common const &c, RunManifest const &m, std::size_t in_size,
                                std::vector<std::string> const &notes)
{
  Units const u = c.unit();
  if (c.json())
  {
    nlohmann::json j;
    j["format"]   = "chandisc " + kind;
    j["units"]    = units_name(u);
    j["manifest"] = m.to_json();
    j["notes"]    = notes;
    j["points"]   = nlohmann::json::array();
    for (auto const &p : pts)
    {
      j["points"].push_back({{"rate", json_number(display(p.rate, u))},
                             {"e", json_number(display(p.e, u))},
                             {"px", px_json(p.px)}});
    }
    return j.dump(2) + "\n";
  }
  CsvTable t;
  t.comments = csv_preamble(kind, u, m);
  for (auto const &n : notes)
  {
    t.comments.push_back("note: " + n);
  }
  t.header = {"rate", "e"};
  for (std::size_t i = 0; i < in_size; ++i)
  {
    t.header.push_back("px_" + std::to_string(i));
  }
  for (auto const &p : pts)
  {
    std::vector<double> row{display(p.rate, u), display(p.e, u)};
    row.insert(row.end(), p.px.probs().begin(), p.px.probs().end());
    t.rows.push_back(std::move(row));
  }
  return write_csv(t);
}

}  // namespace detail

/// Runs one command. `args` excludes the program name.
inline int run(std::vector<std::string> const &args, std::ostream &out, std::ostream &err)
{
  using namespace detail;

  CLI::App app{"Rate / discrimination-exponent trade-offs for discrete memoryless channels",
               "chandisc"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  Common      common;
  std::string px_text      = "uniform";
  std::size_t s_points     = kDefaultSPoints;
  std::size_t px_res       = 0;
  std::string n_text       = "10";
  std::size_t trials       = 100'000;
  std::uint64_t seed       = 0;
  double      s_value      = 0.5;
  double      alpha        = -1.0;
  std::string method       = "exact";
  double      q_rate       = 0.0;
  double      q_e0         = 0.0;
  double      q_e1         = 0.0;

  auto *frontier = app.add_subcommand("frontier", "Exponent frontier at a fixed px, or the full surface with --px sweep");
  add_common(frontier, common);
  frontier->add_option("--px", px_text, "Input distribution: comma list, 'uniform' or 'sweep'");
  frontier->add_option("--s-points", s_points, "Number of s grid points")->check(CLI::Range(2, 1000000));
  frontier->add_option("--px-resolution", px_res, "Simplex lattice resolution for sweeps");

  auto *surface = app.add_subcommand("surface", "Pareto surface of (rate, E0, E1)");
  add_common(surface, common);
  surface->add_option("--s-points", s_points, "Number of s grid points")->check(CLI::Range(2, 1000000));
  surface->add_option("--px-resolution", px_res, "Simplex lattice resolution");

  auto *minimax = app.add_subcommand("minimax", "Pareto frontier of (rate, Chernoff information)");
  add_common(minimax, common);
  minimax->add_option("--px-resolution", px_res, "Simplex lattice resolution");

  auto *np = app.add_subcommand("np", "Pareto frontier of (rate, D(W||V|px)); alpha-independent");
  add_common(np, common);
  np->add_option("--px-resolution", px_res, "Simplex lattice resolution");

  auto *simulate = app.add_subcommand("simulate", "Exact or Monte-Carlo LLRT error simulation (JSON report)");
  add_common(simulate, common, false);
  simulate->add_option("--px", px_text, "Codeword type target: comma list or 'uniform'");
  auto *s_opt = simulate->add_option("--s", s_value, "Tilt parameter of the LLRT threshold");
  auto *a_opt = simulate->add_option("--alpha", alpha, "Neyman-Pearson type-I cap in (0,1)");
  s_opt->excludes(a_opt);
  simulate->add_option("--n", n_text, "Blocklengths: 10, 4,6,8 or 4:14");
  simulate->add_option("--method", method, "exact or mc")->check(CLI::IsMember({"exact", "mc"}));
  simulate->add_option("--trials", trials, "Monte-Carlo trials per hypothesis");
  simulate->add_option("--seed", seed, "64-bit seed");

  auto *member = app.add_subcommand("membership", "Grid-certified region membership (JSON)");
  add_common(member, common, false);
  member->add_option("--rate", q_rate, "Rate")->required();
  member->add_option("--e0", q_e0, "Type-I exponent")->required();
  member->add_option("--e1", q_e1, "Type-II exponent")->required();
  member->add_option("--s-points", s_points, "Number of s grid points")->check(CLI::Range(2, 1000000));
  member->add_option("--px-resolution", px_res, "Simplex lattice resolution");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try
  {
    app.parse(reversed);
  }
  catch (CLI::CallForHelp const &)
  {
    out << app.help();
    return kExitOk;
  }
  catch (CLI::CallForVersion const &)
  {
    out << kVersion << "\n";
    return kExitOk;
  }
  catch (CLI::ParseError const &e)
  {
    err << "chandisc: " << e.what() << "\n";
    return kExitValidation;
  }

  try
  {
    ProblemFile const pf      = load_problem(common.problem_path);
    auto const       &problem = pf.problem;
    std::size_t const res = px_res ? px_res : default_px_resolution(problem.in_size());
    Units const       u   = common.unit();

    if (frontier->parsed() && px_text != "sweep")
    {
      auto const px  = parse_px(px_text, problem.in_size());
      auto const pts = exponent_frontier(problem, px, uniform_grid(s_points));
      auto const m   = manifest("frontier", pf,
                                {{"px", px_json(px)}, {"s_points", s_points}, {"units", common.units}});
      if (common.json())
      {
        nlohmann::json j;
        j["format"]   = "chandisc frontier";
        j["units"]    = units_name(u);
        j["manifest"] = m.to_json();
        j["px"]       = px_json(px);
        j["points"]   = nlohmann::json::array();
        for (auto const &p : pts)
        {
          j["points"].push_back({{"s", json_number(p.s)},
                                 {"e0", json_number(display(p.e0, u))},
                                 {"e1", json_number(display(p.e1, u))}});
        }
        emit(common, j.dump(2) + "\n", out);
      }
      else
      {
        CsvTable t;
        t.comments = csv_preamble("frontier", u, m);
        t.header   = {"s", "e0", "e1"};
        for (auto const &p : pts)
        {
          t.rows.push_back({p.s, display(p.e0, u), display(p.e1, u)});
        }
        emit(common, write_csv(t), out);
      }
      return kExitOk;
    }

    if (frontier->parsed() || surface->parsed())
    {
      auto const surf = rate_exponent_surface(problem, res, s_points);
      auto const m    = manifest(frontier->parsed() ? "frontier" : "surface", pf,
                                 {{"px", "sweep"}, {"px_resolution", res}, {"s_points", s_points},
                                  {"units", common.units}});
      emit(common, surface_output(surf, common, m, problem.in_size()), out);
      return kExitOk;
    }

    if (minimax->parsed())
    {
      auto const pts = minimax_frontier(problem, res);
      auto const m   = manifest("minimax", pf, {{"px_resolution", res}, {"units", common.units}});
      emit(common, pairs_output("minimax", pts, common, m, problem.in_size(),
                                {"e is the Chernoff information C(W||V|px)"}),
           out);
      return kExitOk;
    }

    if (np->parsed())
    {
      auto const pts = np_frontier(problem, res);
      auto const m   = manifest("np", pf, {{"px_resolution", res}, {"units", common.units}});
      emit(common, pairs_output("np", pts, common, m, problem.in_size(),
                                {"e is D(W||V|px); the region is identical for every alpha in (0,1)"}),
           out);
      return kExitOk;
    }

    if (member->parsed())
    {
      auto const r = membership(problem, q_rate, q_e0, q_e1, res, s_points);
      auto const m = manifest("membership", pf,
                              {{"rate", q_rate}, {"e0", q_e0}, {"e1", q_e1}, {"px_resolution", res},
                               {"s_points", s_points}});
      nlohmann::json j;
      j["format"]   = "chandisc membership";
      j["units"]    = "nats";
      j["manifest"] = m.to_json();
      j["member"]   = r.member;
      j["witness"]  = nullptr;
      if (r.witness)
      {
        j["witness"] = {{"rate", json_number(r.witness->rate)},
                        {"e0", json_number(r.witness->e0)},
                        {"e1", json_number(r.witness->e1)},
                        {"s", json_number(r.witness->s)},
                        {"px", px_json(r.witness->px)}};
      }
      emit(common, j.dump(2) + "\n", out);
      return kExitOk;
    }

    // simulate
    if (trials == 0)
    {
      throw ValidationError("--trials must be positive");
    }
    bool const np_mode = a_opt->count() > 0;
    if (np_mode && !(alpha > 0.0 && alpha < 1.0))
    {
      throw ValidationError("--alpha must lie in (0,1)");
    }
    if (np_mode && method != "exact")
    {
      throw ValidationError("--alpha requires --method exact");
    }
    if (!np_mode && !(s_value >= 0.0 && s_value <= 1.0))
    {
      throw ValidationError("--s must lie in [0,1]");
    }
    auto const px      = parse_px(px_text, problem.in_size());
    auto const n_list  = parse_blocklengths(n_text);
    bool const mc      = method == "mc";

    nlohmann::json params{{"px", px_json(px)}, {"n", n_list}, {"method", method},
                          {"units", common.units}};
    if (np_mode)
    {
      params["alpha"] = alpha;
    }
    else
    {
      params["s"] = s_value;
    }
    if (mc)
    {
      params["trials"] = trials;
    }
    RunManifest m = manifest("simulate", pf, params);
    if (mc)
    {
      m.seed = seed;
    }

    nlohmann::json j;
    j["format"]       = "chandisc simulation";
    j["units"]        = units_name(u);
    j["manifest"]     = m.to_json();
    j["problem_hash"] = m.problem_hash;
    j["px"]           = px_json(px);
    j["method"]       = mc ? "monte-carlo" : "exact";
    j["seed"]         = mc ? nlohmann::json(seed) : nlohmann::json(nullptr);
    j["runs"]         = nlohmann::json::array();

    if (np_mode)
    {
      double const theory = conditional_kl(problem.w(), problem.v(), px);
      j["alpha"]     = alpha;
      j["theory_e0"] = 0.0;
      j["theory_e1"] = json_number(display(theory, u));
      for (std::size_t n : n_list)
      {
        auto const comp = quantize_type(px, n);
        auto const res_np = np_threshold_search(problem, comp, alpha);
        j["runs"].push_back({{"n", n},
                             {"comp", comp.counts()},
                             {"threshold", json_number(res_np.threshold)},
                             {"eps0", json_number(res_np.errors.eps0)},
                             {"eps1", json_number(res_np.errors.eps1)},
                             {"ci", {0.0, 0.0}},
                             {"e1_hat", json_number(display(empirical_exponent(res_np.errors.eps1, n), u))},
                             {"theory_e1_type", json_number(display(
                                 conditional_kl(problem.w(), problem.v(), comp.distribution()), u))}});
      }
    }
    else
    {
      auto const theory = exponent_pair(problem, px, s_value);
      j["s"]         = s_value;
      j["theory_e0"] = json_number(display(theory.e0, u));
      j["theory_e1"] = json_number(display(theory.e1, u));
      EstimateOptions opts;
      opts.method = mc ? ErrorMethod::monte_carlo : ErrorMethod::exact;
      opts.trials = trials;
      opts.seed   = seed;
      auto const est = exponent_estimate(problem, px, s_value, n_list, opts);
      for (auto const &smp : est.samples)
      {
        auto const at_type = exponent_pair(problem, smp.comp.distribution(), s_value);
        j["runs"].push_back({{"n", smp.n},
                             {"comp", smp.comp.counts()},
                             {"threshold", json_number(smp.llrt.threshold)},
                             {"eps0", json_number(smp.errors.eps0)},
                             {"eps1", json_number(smp.errors.eps1)},
                             {"ci", {json_number(smp.errors.ci0_halfwidth),
                                     json_number(smp.errors.ci1_halfwidth)}},
                             {"e0_hat", json_number(display(smp.e0_hat, u))},
                             {"e1_hat", json_number(display(smp.e1_hat, u))},
                             {"theory_e0_type", json_number(display(at_type.e0, u))},
                             {"theory_e1_type", json_number(display(at_type.e1, u))}});
      }
      j["estimate"] = {{"e0_hat", json_number(display(est.e0_hat, u))},
                       {"e1_hat", json_number(display(est.e1_hat, u))},
                       {"slope0", json_number(display(est.slope0, u))},
                       {"slope1", json_number(display(est.slope1, u))}};
    }
    emit(common, j.dump(2) + "\n", out);
    return kExitOk;
  }
  catch (BudgetError const &e)
  {
    err << "chandisc: " << e.what() << "\n";
    return kExitBudget;
  }
  catch (ValidationError const &e)
  {
    err << "chandisc: " << e.what() << "\n";
    return kExitValidation;
  }
  catch (DomainError const &e)
  {
    err << "chandisc: " << e.what() << "\n";
    return kExitValidation;
  }
  catch (std::exception const &e)
  {
    err << "chandisc: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace chandisc::cli
