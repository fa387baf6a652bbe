// Copyright 2026 The jcenters Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "jcenters/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace jcenters {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct CsvRow {
  int line;
  std::vector<double> values;
};

std::vector<CsvRow> parse_numeric_csv(std::string_view text) {
  std::vector<CsvRow> rows;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const std::string_view raw = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    CsvRow row{line_no, {}};
    int col = 0;
    std::size_t fpos = 0;
    while (fpos <= line.size()) {
      const auto comma = line.find(',', fpos);
      const std::string_view field =
          trim(line.substr(fpos, comma == std::string_view::npos ? line.size() - fpos : comma - fpos));
      fpos = comma == std::string_view::npos ? line.size() + 1 : comma + 1;
      ++col;
      double v = 0.0;
      const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
      if (field.empty() || ec != std::errc() || end != field.data() + field.size()) {
        throw ParseError("cannot parse '" + std::string(field) + "' as a number", line_no, col);
      }
      if (!std::isfinite(v)) throw ParseError("value is not finite", line_no, col);
      row.values.push_back(v);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

// Rescales a row of positive values whose sum is close to one.
Vec renormalize(const std::vector<double>& values, int line, const char* what) {
  Vec v(static_cast<Eigen::Index>(values.size()));
  for (std::size_t j = 0; j < values.size(); ++j) {
    if (!(values[j] > 0.0)) {
      throw ParseError(std::string(what) + " must be strictly positive (smooth empty bins first)", line,
                       static_cast<int>(j) + 1);
    }
    v[static_cast<Eigen::Index>(j)] = values[j];
  }
  const double s = v.sum();
  if (std::abs(s - 1.0) > kRenormalizeTolerance) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6e", s);
    throw ParseError(std::string(what) + " sum " + buf + " deviates from 1 by more than 1e-6", line);
  }
  return v / s;
}

void write_json(std::ostream& os, const nlohmann::json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (j.type()) {
    case nlohmann::json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        os << inner << nlohmann::json(it.key()).dump() << ": ";
        write_json(os, it.value(), indent + 1);
      }
      os << '\n' << pad << '}';
      return;
    }
    case nlohmann::json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      const bool flat = std::all_of(j.begin(), j.end(), [](const auto& e) { return !e.is_structured(); });
      os << '[';
      bool first = true;
      for (const auto& e : j) {
        if (!first) os << (flat ? ", " : ",");
        first = false;
        if (!flat) os << '\n' << inner;
        write_json(os, e, indent + 1);
      }
      if (!flat) os << '\n' << pad;
      os << ']';
      return;
    }
    case nlohmann::json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        os << "null";
      } else {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.5e", v);
        os << buf;
      }
      return;
    }
    default:
      os << j.dump();
  }
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<SimplexPoint> parse_histogram_csv(std::string_view text) {
  const auto rows = parse_numeric_csv(text);
  if (rows.empty()) throw ParseError("no histogram rows found");
  std::vector<SimplexPoint> out;
  out.reserve(rows.size());
  const std::size_t d = rows.front().values.size();
  if (d < 2) throw ParseError("histograms need at least two bins", rows.front().line);
  for (const auto& r : rows) {
    if (r.values.size() != d) {
      throw ParseError("expected " + std::to_string(d) + " bins, found " + std::to_string(r.values.size()), r.line);
    }
    out.emplace_back(renormalize(r.values, r.line, "histogram row"));
  }
  return out;
}

Vec parse_weights_csv(std::string_view text, std::size_t expected) {
  const auto rows = parse_numeric_csv(text);
  if (rows.size() != 1) throw ParseError("weights file must contain exactly one row");
  if (rows.front().values.size() != expected) {
    throw ParseError("expected " + std::to_string(expected) + " weights, found " +
                         std::to_string(rows.front().values.size()),
                     rows.front().line);
  }
  return renormalize(rows.front().values, rows.front().line, "weight row");
}

GaussianInput parse_gaussian_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // Convert the byte offset into line and column.
    int line = 1;
    int col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(std::string("malformed JSON: ") + e.what(), line, col);
  }
  if (!doc.is_array() || doc.empty()) throw ParseError("expected a non-empty JSON array of Gaussians");

  GaussianInput out;
  std::vector<double> weights;
  int with_weight = 0;
  for (std::size_t k = 0; k < doc.size(); ++k) {
    const auto& e = doc[k];
    const std::string where = "entry " + std::to_string(k + 1) + ": ";
    if (!e.is_object() || !e.contains("mean") || !e.contains("cov")) {
      throw ParseError(where + "needs \"mean\" and \"cov\"");
    }
    try {
      const auto mean = e.at("mean").get<std::vector<double>>();
      const auto cov = e.at("cov").get<std::vector<std::vector<double>>>();
      const auto d = static_cast<Eigen::Index>(mean.size());
      if (d == 0 || cov.size() != mean.size()) throw ParseError(where + "mean and cov sizes differ");
      Mat m(d, d);
      for (Eigen::Index i = 0; i < d; ++i) {
        if (cov[static_cast<std::size_t>(i)].size() != mean.size()) throw ParseError(where + "cov is not square");
        for (Eigen::Index j = 0; j < d; ++j) m(i, j) = cov[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      }
      out.points.emplace_back(Eigen::Map<const Vec>(mean.data(), d), SpdMatrix(m));
      if (!out.points.empty() && out.points.back().dim() != out.points.front().dim()) {
        throw ParseError(where + "dimension differs from the first entry");
      }
      if (e.contains("weight")) {
        weights.push_back(e.at("weight").get<double>());
        ++with_weight;
      }
    } catch (const nlohmann::json::exception& ex) {
      throw ParseError(where + ex.what());
    } catch (const DomainError& ex) {
      throw ParseError(where + ex.what());
    }
  }
  if (with_weight != 0) {
    if (with_weight != static_cast<int>(doc.size())) throw ParseError("either every entry or none carries a weight");
    out.weights = renormalize(weights, 0, "weight set");
  }
  return out;
}

std::string dump_json(const nlohmann::json& j) {
  std::ostringstream os;
  write_json(os, j, 0);
  os << '\n';
  return os.str();
}

}  // namespace jcenters
