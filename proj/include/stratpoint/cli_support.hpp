#pragma once

// Argument parsing shared by the command-line tool and its tests.

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "stratpoint/builtin_examples.hpp"
#include "stratpoint/problem_file.hpp"
#include "stratpoint/tracer.hpp"

namespace stratpoint {

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (ch != ' ') {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

inline std::size_t parse_index(const std::string& s, const std::string& what) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw ParseError(what + ": expected a positive integer, got '" + s + "'");
  return std::stoul(s);
}

}  // namespace detail

/// "1,-2/3,0.5" -> exact vector; "" -> empty vector.
inline Vector parse_vector(const std::string& s) {
  Vector out;
  if (s.find_first_not_of(' ') == std::string::npos) return out;
  for (const auto& tok : detail::split(s, ',')) out.push_back(parse_rational(tok));
  return out;
}

inline std::vector<int> parse_labels(const std::string& s) {
  std::vector<int> out;
  if (s.find_first_not_of(' ') == std::string::npos) return out;
  for (const auto& tok : detail::split(s, ','))
    out.push_back(static_cast<int>(detail::parse_index(tok, "label")));
  return out;
}

/// "y1=-1:1:41,y2=0" -> one axis per parameter. Every parameter needs an
/// entry; "y2=0" fixes y2 at 0.
inline GridSpec parse_grid_spec(const std::string& spec, std::size_t p) {
  GridSpec grid;
  grid.axes.resize(p);
  std::vector<bool> seen(p, false);
  if (p == 0 && spec.find_first_not_of(' ') == std::string::npos) return grid;
  for (const auto& entry : detail::split(spec, ',')) {
    const auto eq = entry.find('=');
    if (eq == std::string::npos || entry.size() < 2 || entry[0] != 'y')
      throw ParseError("grid entry '" + entry + "': expected yK=min:max:steps or yK=value");
    const std::size_t l = detail::parse_index(entry.substr(1, eq - 1), "grid axis");
    if (l < 1 || l > p)
      throw ParseError("grid axis y" + std::to_string(l) + " out of range (p = " +
                       std::to_string(p) + ")");
    if (seen[l - 1]) throw ParseError("grid axis y" + std::to_string(l) + " given twice");
    seen[l - 1] = true;
    const auto parts = detail::split(entry.substr(eq + 1), ':');
    GridAxis& axis = grid.axes[l - 1];
    if (parts.size() == 1) {
      axis.min = axis.max = parse_rational(parts[0]);
      axis.steps = 1;
    } else if (parts.size() == 3) {
      axis.min = parse_rational(parts[0]);
      axis.max = parse_rational(parts[1]);
      axis.steps = detail::parse_index(parts[2], "grid steps");
    } else {
      throw ParseError("grid entry '" + entry + "': expected min:max:steps");
    }
  }
  for (std::size_t l = 0; l < p; ++l)
    if (!seen[l]) throw ParseError("grid is missing axis y" + std::to_string(l + 1));
  try {
    grid.check();
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  return grid;
}

/// "y1,x2" -> coordinates of the concatenated (y, x) vector.
inline std::pair<std::size_t, std::size_t> parse_projection(const std::string& s,
                                                            std::size_t p, std::size_t n) {
  const auto parts = detail::split(s, ',');
  if (parts.size() != 2) throw ParseError("projection '" + s + "': expected two coordinates");
  auto coord = [&](const std::string& t) -> std::size_t {
    if (t.size() < 2 || (t[0] != 'x' && t[0] != 'y'))
      throw ParseError("projection coordinate '" + t + "': expected yK or xK");
    const std::size_t k = detail::parse_index(t.substr(1), "projection");
    const std::size_t limit = t[0] == 'y' ? p : n;
    if (k < 1 || k > limit) throw ParseError("projection coordinate '" + t + "' out of range");
    return t[0] == 'y' ? k - 1 : p + k - 1;
  };
  return {coord(parts[0]), coord(parts[1])};
}

/// A model argument names a file if one exists at that path, otherwise a
/// built-in problem or SQP.
inline ModelFile resolve_model(const std::string& arg) {
  if (std::filesystem::exists(arg)) return parse_model(read_text_file(arg));
  if (auto ex = find_builtin(arg)) return ex->problem;
  if (auto sq = find_builtin_sqp(arg)) return SqpFile{sq->sqp, std::nullopt};
  throw ParseError("'" + arg + "' is neither a readable file nor a built-in example");
}

}  // namespace stratpoint
