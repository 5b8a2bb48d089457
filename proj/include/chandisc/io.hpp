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

/// \file io.hpp
/// \brief Problem files, CSV/JSON artifacts and run manifests.
///
/// Problem file (JSON, one problem per file):
///
///     {
///       "input_alphabet":    ["0", "1"],          // labels, optional
///       "output_alphabet_z": ["0", "1"],          // labels, optional
///       "output_alphabet_y": ["0", "1"],          // labels, optional
///       "comm":   [[0.9, 0.1], [0.1, 0.9]],       // P_{Z|X}, rows sum to 1
///       "w":      [[0.9, 0.1], [0.1, 0.9]],       // W = P_{Y|X} under theta = 0
///       "v":      [[0.7, 0.3], [0.3, 0.7]],       // V = P_{Y|X} under theta = 1
///       "cost":   [0, 1],                         // b(x) >= 0
///       "budget": 1.0                             // B
///     }
///
/// CSV artifacts start with `#` comment lines (format tag, units, manifest as
/// compact JSON, notes), then one header row, then numeric rows. Every number
/// is printed with 12 significant digits.

#include <chandisc/core.hpp>

#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

namespace chandisc {

inline constexpr char const *kVersion = "0.1.0";

/// Problem-file error carrying a location (line:column or JSON pointer).
class ProblemFileError : public ValidationError
{
public:
  using ValidationError::ValidationError;
};

struct ProblemFile
{
  std::vector<std::string> input_labels;
  std::vector<std::string> z_labels;
  std::vector<std::string> y_labels;
  ChannelProblem           problem;
};

namespace detail {

inline std::pair<std::size_t, std::size_t> line_column(std::string const &text, std::size_t byte)
{
  std::size_t line = 1;
  std::size_t col  = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i)
  {
    if (text[i] == '\n')
    {
      ++line;
      col = 1;
    }
    else
    {
      ++col;
    }
  }
  return {line, col};
}

inline nlohmann::json const &require_field(nlohmann::json const &doc, char const *key,
                                           std::string const &source)
{
  if (!doc.contains(key))
  {
    throw ProblemFileError(source + ": /" + key + ": missing field");
  }
  return doc.at(key);
}

inline double number_at(nlohmann::json const &v, std::string const &where)
{
  if (!v.is_number())
  {
    throw ProblemFileError(where + ": expected a number");
  }
  return v.get<double>();
}

inline std::vector<double> vector_at(nlohmann::json const &v, std::string const &where)
{
  if (!v.is_array())
  {
    throw ProblemFileError(where + ": expected an array of numbers");
  }
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i)
  {
    out.push_back(number_at(v[i], where + "/" + std::to_string(i)));
  }
  return out;
}

inline DiscreteChannel channel_at(nlohmann::json const &doc, char const *key,
                                  std::string const &source)
{
  std::string const where = source + ": /" + key;
  auto const       &m     = require_field(doc, key, source);
  if (!m.is_array() || m.empty())
  {
    throw ProblemFileError(where + ": expected a non-empty matrix");
  }
  std::vector<std::vector<double>> rows;
  for (std::size_t x = 0; x < m.size(); ++x)
  {
    std::string const row_where = where + "/" + std::to_string(x);
    rows.push_back(vector_at(m[x], row_where));
    if (rows.back().size() != rows.front().size())
    {
      throw ProblemFileError(row_where + ": row length differs from row 0");
    }
    try
    {
      (void)normalized_probabilities(rows.back(), "row");
    }
    catch (ValidationError const &e)
    {
      throw ProblemFileError(row_where + ": " + e.what());
    }
  }
  return DiscreteChannel(rows);
}

inline std::vector<std::string> labels_at(nlohmann::json const &doc, char const *key,
                                          std::size_t expected, std::string const &source)
{
  std::vector<std::string> out;
  if (!doc.contains(key))
  {
    for (std::size_t i = 0; i < expected; ++i)
    {
      out.push_back(std::to_string(i));
    }
    return out;
  }
  auto const &v = doc.at(key);
  if (!v.is_array() || v.size() != expected)
  {
    throw ProblemFileError(source + ": /" + key + ": expected " + std::to_string(expected) +
                           " labels");
  }
  for (auto const &l : v)
  {
    out.push_back(l.is_string() ? l.get<std::string>() : l.dump());
  }
  return out;
}

}  // namespace detail

inline ProblemFile parse_problem(std::string const &text, std::string const &source = "<problem>")
{
  nlohmann::json doc;
  try
  {
    doc = nlohmann::json::parse(text);
  }
  catch (nlohmann::json::parse_error const &e)
  {
    auto const [line, col] = detail::line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ProblemFileError(source + ":" + std::to_string(line) + ":" + std::to_string(col) +
                           ": invalid JSON");
  }
  if (!doc.is_object())
  {
    throw ProblemFileError(source + ": top level must be an object");
  }
  DiscreteChannel comm = detail::channel_at(doc, "comm", source);
  DiscreteChannel w    = detail::channel_at(doc, "w", source);
  DiscreteChannel v    = detail::channel_at(doc, "v", source);
  std::vector<double> costs = detail::vector_at(detail::require_field(doc, "cost", source),
                                                source + ": /cost");
  double budget = detail::number_at(detail::require_field(doc, "budget", source),
                                    source + ": /budget");
  std::optional<CostSpec> cost;
  try
  {
    cost.emplace(std::move(costs), budget);
  }
  catch (ValidationError const &e)
  {
    throw ProblemFileError(source + ": /cost: " + e.what());
  }
  if (comm.in_size() != w.in_size() || w.in_size() != v.in_size())
  {
    throw ProblemFileError(source + ": /comm, /w, /v: input alphabet sizes differ");
  }
  if (w.out_size() != v.out_size())
  {
    throw ProblemFileError(source + ": /w, /v: output alphabet sizes differ");
  }
  if (cost->costs().size() != w.in_size())
  {
    throw ProblemFileError(source + ": /cost: length differs from the input alphabet");
  }
  for (std::size_t x = 0; x < w.in_size(); ++x)
  {
    for (std::size_t y = 0; y < w.out_size(); ++y)
    {
      if (w(x, y) == 0.0 || v(x, y) == 0.0)
      {
        throw ProblemFileError(source + ": /" + std::string(w(x, y) == 0.0 ? "w" : "v") + "/" +
                               std::to_string(x) + "/" + std::to_string(y) +
                               ": hypothesis channels must be strictly positive");
      }
    }
  }
  auto in_labels = detail::labels_at(doc, "input_alphabet", w.in_size(), source);
  auto z_labels  = detail::labels_at(doc, "output_alphabet_z", comm.out_size(), source);
  auto y_labels  = detail::labels_at(doc, "output_alphabet_y", w.out_size(), source);
  return {std::move(in_labels), std::move(z_labels), std::move(y_labels),
          ChannelProblem(std::move(comm), std::move(w), std::move(v), std::move(*cost))};
}

inline ProblemFile load_problem(std::filesystem::path const &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw ProblemFileError(path.string() + ": cannot open");
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_problem(ss.str(), path.string());
}

inline nlohmann::json problem_to_json(ChannelProblem const &p)
{
  nlohmann::json j;
  j["comm"]   = p.comm().rows();
  j["w"]      = p.w().rows();
  j["v"]      = p.v().rows();
  j["cost"]   = std::vector<double>(p.cost().costs().begin(), p.cost().costs().end());
  j["budget"] = p.cost().budget();
  return j;
}

/// FNV-1a 64 over a canonical rendering of the problem (17 significant digits).
inline std::string problem_hash(ChannelProblem const &p)
{
  std::string canon;
  auto        put = [&](double v)
  {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g;", v);
    canon += buf;
  };
  for (auto const *ch : {&p.comm(), &p.w(), &p.v()})
  {
    canon += std::to_string(ch->in_size()) + "x" + std::to_string(ch->out_size()) + ":";
    for (std::size_t x = 0; x < ch->in_size(); ++x)
    {
      for (double v : ch->row(x))
      {
        put(v);
      }
    }
  }
  for (double c : p.cost().costs())
  {
    put(c);
  }
  put(p.cost().budget());

  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canon)
  {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char out[17];
  std::snprintf(out, sizeof out, "%016llx", static_cast<unsigned long long>(h));
  return out;
}

/// 12 significant digits; "inf" / "-inf" / "nan" for non-finite values.
inline std::string format_number(double v)
{
  if (std::isnan(v))
  {
    return "nan";
  }
  if (std::isinf(v))
  {
    return v > 0 ? "inf" : "-inf";
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

/// JSON value printed with 12 significant digits; non-finite values become
/// the strings "inf", "-inf", "nan".
inline nlohmann::json json_number(double v)
{
  if (!std::isfinite(v))
  {
    return format_number(v);
  }
  return std::stod(format_number(v));
}

enum class Units
{
  nats,
  bits
};

inline char const *units_name(Units u) { return u == Units::bits ? "bits" : "nats"; }

/// Rescales a nats value for display.
inline double display(double nats, Units u) { return u == Units::bits ? nats / std::log(2.0) : nats; }

/// Everything needed to rerun a command and get identical bytes.
struct RunManifest
{
  std::string                command;
  nlohmann::json             parameters = nlohmann::json::object();
  std::optional<std::uint64_t> seed;
  std::string                version = kVersion;
  std::string                problem_hash;
  std::optional<std::string> timestamp;

  nlohmann::json to_json() const
  {
    nlohmann::json j;
    j["command"]      = command;
    j["parameters"]   = parameters;
    j["seed"]         = seed ? nlohmann::json(*seed) : nlohmann::json(nullptr);
    j["version"]      = version;
    j["problem_hash"] = problem_hash;
    j["timestamp"]    = timestamp ? nlohmann::json(*timestamp) : nlohmann::json(nullptr);
    return j;
  }
};

/// Timestamp for manifests: SOURCE_DATE_EPOCH when set, otherwise none, so
/// repeated runs stay byte-identical.
inline std::optional<std::string> manifest_timestamp()
{
  if (char const *epoch = std::getenv("SOURCE_DATE_EPOCH"))
  {
    return std::string(epoch);
  }
  return std::nullopt;
}

struct CsvTable
{
  std::vector<std::string>         comments;  // without the leading "# "
  std::vector<std::string>         header;
  std::vector<std::vector<double>> rows;
};

inline std::string write_csv(CsvTable const &t)
{
  std::string out;
  for (auto const &c : t.comments)
  {
    out += "# " + c + "\n";
  }
  for (std::size_t i = 0; i < t.header.size(); ++i)
  {
    out += (i ? "," : "") + t.header[i];
  }
  out += "\n";
  for (auto const &r : t.rows)
  {
    for (std::size_t i = 0; i < r.size(); ++i)
    {
      out += (i ? "," : "") + format_number(r[i]);
    }
    out += "\n";
  }
  return out;
}

/// Parses CSV produced by write_csv; throws ValidationError on schema violations.
inline CsvTable read_csv(std::string const &text)
{
  CsvTable           t;
  std::istringstream in(text);
  std::string        line;
  bool               have_header = false;
  auto split = [](std::string const &s)
  {
    std::vector<std::string> cells;
    std::string              cell;
    std::istringstream       ls(s);
    while (std::getline(ls, cell, ','))
    {
      cells.push_back(cell);
    }
    return cells;
  };
  while (std::getline(in, line))
  {
    if (line.empty())
    {
      continue;
    }
    if (!have_header && line.rfind("# ", 0) == 0)
    {
      t.comments.push_back(line.substr(2));
      continue;
    }
    if (!have_header)
    {
      t.header    = split(line);
      have_header = true;
      continue;
    }
    auto cells = split(line);
    if (cells.size() != t.header.size())
    {
      throw ValidationError("csv: row width differs from header");
    }
    std::vector<double> row;
    for (auto const &c : cells)
    {
      std::size_t used = 0;
      double      v    = 0.0;
      try
      {
        v = std::stod(c, &used);
      }
      catch (std::exception const &)
      {
        throw ValidationError("csv: non-numeric cell '" + c + "'");
      }
      if (used != c.size())
      {
        throw ValidationError("csv: non-numeric cell '" + c + "'");
      }
      row.push_back(v);
    }
    t.rows.push_back(std::move(row));
  }
  if (!have_header)
  {
    throw ValidationError("csv: missing header row");
  }
  return t;
}

/// Writes via a temporary sibling and rename, so readers never see partial files.
inline void atomic_write(std::filesystem::path const &path, std::string const &content)
{
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out)
    {
      throw std::runtime_error("cannot write " + tmp.string());
    }
    out << content;
    if (!out.flush())
    {
      throw std::runtime_error("write failed for " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace chandisc
