#pragma once

#include <algorithm>
#include <cstdio>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "stratpoint/tracer.hpp"

namespace stratpoint {

enum class ExportFormat { csv, json, svg };

inline ExportFormat parse_export_format(const std::string& s) {
  if (s == "csv") return ExportFormat::csv;
  if (s == "json") return ExportFormat::json;
  if (s == "svg") return ExportFormat::svg;
  throw std::invalid_argument("unknown format '" + s + "' (csv, json, svg)");
}

namespace detail {

inline std::string decimal(const Rational& v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", to_double(v));
  return buf;
}

inline nlohmann::ordered_json code_json(const CombinatorialCode& code) {
  using nlohmann::ordered_json;
  auto labels = [&](const std::set<int>& s, bool objective) {
    ordered_json arr = ordered_json::array();
    for (int i : s) arr.push_back(label(i, code.m_star(), objective));
    return arr;
  };
  auto pairs = [&](const std::set<IndexPair>& ps) {
    ordered_json arr = ordered_json::array();
    for (const auto& pr : ps)
      arr.push_back({{"I", labels(pr.I, code.has_objective)}, {"J", labels(pr.J, false)}});
    return arr;
  };
  ordered_json j;
  j["feasible"] = code.feasible;
  j["i0"] = labels(code.i0, code.has_objective);
  j["sp_pairs"] = pairs(code.sp_pairs());
  j["mf_pairs"] = pairs(code.mf_pairs());
  return j;
}

}  // namespace detail

inline nlohmann::ordered_json code_to_json(const CombinatorialCode& code) {
  return detail::code_json(code);
}

/// Columns y1..yp, x1..xn, feasible, stationary, mfcq_violated,
/// classification. Absent x leaves its cells empty.
inline std::string export_csv(const std::vector<TraceRecord>& records,
                              std::size_t p, std::size_t n) {
  std::ostringstream os;
  for (std::size_t l = 0; l < p; ++l) os << "y" << l + 1 << ",";
  for (std::size_t k = 0; k < n; ++k) os << "x" << k + 1 << ",";
  os << "feasible,stationary,mfcq_violated,classification\n";
  for (const auto& r : records) {
    for (const auto& v : r.y) os << detail::decimal(v) << ",";
    for (std::size_t k = 0; k < n; ++k)
      os << (r.x ? detail::decimal((*r.x)[k]) : std::string()) << ",";
    os << (r.feasible ? "true" : "false") << ","
       << (r.code.stationary() ? "true" : "false") << ","
       << (r.code.mfcq_violated() ? "true" : "false") << ","
       << to_string(r.classification) << "\n";
  }
  return os.str();
}

inline std::string export_json(const std::vector<TraceRecord>& records) {
  using nlohmann::ordered_json;
  ordered_json arr = ordered_json::array();
  for (const auto& r : records) {
    ordered_json j;
    ordered_json y = ordered_json::array();
    for (const auto& v : r.y) y.push_back(format_rational(v));
    j["y"] = y;
    if (r.x) {
      ordered_json x = ordered_json::array();
      for (const auto& v : *r.x) x.push_back(format_rational(v));
      j["x"] = x;
    } else {
      j["x"] = nullptr;
    }
    j["code"] = detail::code_json(r.code);
    j["feasible"] = r.feasible;
    j["classification"] = to_string(r.classification);
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

/// Scatter of coordinates (u, v) of the concatenated vector (y, x); records
/// without x are skipped when a projected coordinate lies in x.
inline std::string export_svg(const std::vector<TraceRecord>& records,
                              std::size_t p, std::size_t n,
                              std::pair<std::size_t, std::size_t> projection) {
  const auto [u, v] = projection;
  if (u >= p + n || v >= p + n)
    throw std::out_of_range("projection indices must be below " + std::to_string(p + n));
  auto coord = [&](const TraceRecord& r, std::size_t k) -> std::optional<double> {
    if (k < p) return to_double(r.y[k]);
    if (!r.x) return std::nullopt;
    return to_double((*r.x)[k - p]);
  };
  struct Dot {
    double a, b;
    Classification c;
  };
  std::vector<Dot> dots;
  for (const auto& r : records) {
    auto a = coord(r, u), b = coord(r, v);
    if (a && b) dots.push_back({*a, *b, r.classification});
  }
  double amin = 0, amax = 1, bmin = 0, bmax = 1;
  if (!dots.empty()) {
    amin = amax = dots[0].a;
    bmin = bmax = dots[0].b;
    for (const auto& d : dots) {
      amin = std::min(amin, d.a);
      amax = std::max(amax, d.a);
      bmin = std::min(bmin, d.b);
      bmax = std::max(bmax, d.b);
    }
  }
  const double margin = 40, span = 800 - 2 * margin;
  auto scale = [&](double t, double lo, double hi) {
    return hi > lo ? margin + (t - lo) / (hi - lo) * span : 400.0;
  };
  auto name = [&](std::size_t k) {
    return (k < p ? "y" + std::to_string(k + 1) : "x" + std::to_string(k - p + 1));
  };
  std::ostringstream os;
  char buf[160];
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 800\" "
        "width=\"800\" height=\"800\">\n"
     << "<style>.sp_interior{fill:#1f77b4}.mf_boundary{fill:#d62728}"
        ".infeasible{fill:#cccccc}.non_stationary{fill:#ff7f0e}</style>\n"
     << "<rect x=\"0\" y=\"0\" width=\"800\" height=\"800\" fill=\"white\"/>\n";
  std::snprintf(buf, sizeof buf,
                "<text x=\"400\" y=\"790\" text-anchor=\"middle\" font-size=\"14\">%s [%.6g, %.6g]</text>\n",
                name(u).c_str(), amin, amax);
  os << buf;
  std::snprintf(buf, sizeof buf,
                "<text x=\"14\" y=\"400\" font-size=\"14\" transform=\"rotate(-90 14 400)\" "
                "text-anchor=\"middle\">%s [%.6g, %.6g]</text>\n",
                name(v).c_str(), bmin, bmax);
  os << buf;
  os << "<g>\n";
  for (const auto& d : dots) {
    std::snprintf(buf, sizeof buf, "<circle class=\"%s\" cx=\"%.2f\" cy=\"%.2f\" r=\"4\"/>\n",
                  to_string(d.c), scale(d.a, amin, amax), 800 - scale(d.b, bmin, bmax));
    os << buf;
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

inline std::string export_trace(const std::vector<TraceRecord>& records, ExportFormat fmt,
                                std::size_t p, std::size_t n,
                                std::optional<std::pair<std::size_t, std::size_t>> projection = {}) {
  switch (fmt) {
    case ExportFormat::csv: return export_csv(records, p, n);
    case ExportFormat::json: return export_json(records);
    case ExportFormat::svg:
      if (!projection) throw std::invalid_argument("svg export needs a projection");
      return export_svg(records, p, n, *projection);
  }
  return {};
}

}  // namespace stratpoint
