#pragma once

#include "json.hpp"

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "stratpoint/jet_normal_form.hpp"
#include "stratpoint/poly.hpp"
#include "stratpoint/problem.hpp"

namespace stratpoint {

// File layout (all coefficients are strings: "3", "-3/7", "0.125"):
//
//   {"kind": "problem",
//    "size": {"n": 2, "m_le": 0, "m_eq": 1, "p": 3},
//    "objective": [{"coeff": "1", "x": [2, 0], "y": [0, 0, 0]}, ...] | null,
//    "inequalities": [[term, ...], ...],
//    "equalities": [[term, ...], ...]}
//
//   {"kind": "sqp", "size": {...}, "c": ["0", "-1"],
//    "parameterization": "canonical" | {"base": [...], "directions": [[...], ...]},
//    "y_bar": [...]}            (y_bar optional)

using json = nlohmann::ordered_json;

struct SqpFile {
  SqpInstance sqp;
  std::optional<Vector> y_bar;
};

using ModelFile = std::variant<PolyProblem, SqpFile>;

namespace detail {

inline std::string line_col(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t k = 0; k + 1 < byte && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

inline const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key))
    throw ParseError(where + ": missing field '" + key + "'");
  return obj.at(key);
}

inline std::size_t read_count(const json& v, const std::string& where) {
  if (!v.is_number_unsigned())
    throw ParseError(where + ": expected a nonnegative integer");
  return v.get<std::size_t>();
}

inline Rational read_number(const json& v, const std::string& where) {
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const ParseError& e) {
      throw ParseError(where + ": " + e.what());
    }
  }
  if (v.is_number_integer()) return Rational(v.get<long long>());
  throw ParseError(where + ": coefficients must be strings like \"3/7\" or \"0.25\"");
}

inline Vector read_vector(const json& v, const std::string& where) {
  if (!v.is_array()) throw ParseError(where + ": expected an array");
  Vector out;
  for (std::size_t k = 0; k < v.size(); ++k)
    out.push_back(read_number(v[k], where + "[" + std::to_string(k) + "]"));
  return out;
}

inline ProblemSize read_size(const json& root) {
  const json& s = field(root, "size", "file");
  return {read_count(field(s, "n", "size"), "size.n"),
          read_count(field(s, "m_le", "size"), "size.m_le"),
          read_count(field(s, "m_eq", "size"), "size.m_eq"),
          read_count(field(s, "p", "size"), "size.p")};
}

inline Poly read_poly(const json& terms, const ProblemSize& size, const std::string& where) {
  if (!terms.is_array()) throw ParseError(where + ": expected a list of terms");
  Poly out(size.n, size.p);
  for (std::size_t t = 0; t < terms.size(); ++t) {
    const std::string tw = where + "[" + std::to_string(t) + "]";
    const json& term = terms[t];
    const Rational c = read_number(field(term, "coeff", tw), tw + ".coeff");
    Poly::Exponents e;
    auto read_exps = [&](const char* key, std::size_t want) {
      const json& ex = term.contains(key) ? term.at(key) : json::array();
      if (!ex.is_array() || (ex.size() != want && !(ex.empty())))
        throw ParseError(tw + "." + key + ": expected " + std::to_string(want) + " exponents");
      for (std::size_t k = 0; k < want; ++k)
        e.push_back(ex.empty() ? 0u : static_cast<unsigned>(read_count(ex[k], tw + "." + key)));
    };
    read_exps("x", size.n);
    read_exps("y", size.p);
    out.add_term(e, c);
  }
  return out;
}

inline std::string term_line(const Poly::Exponents& e, const Rational& c, std::size_t n) {
  json t;
  t["coeff"] = format_rational(c);
  t["x"] = json::array();
  t["y"] = json::array();
  for (std::size_t k = 0; k < e.size(); ++k) (k < n ? t["x"] : t["y"]).push_back(e[k]);
  return t.dump();
}

inline void write_poly(std::ostringstream& os, const Poly& poly, const std::string& indent) {
  if (poly.is_zero()) {
    os << "[]";
    return;
  }
  os << "[\n";
  bool first = true;
  for (const auto& [e, c] : poly.terms()) {
    if (!first) os << ",\n";
    os << indent << "  " << term_line(e, c, poly.n());
    first = false;
  }
  os << "\n" << indent << "]";
}

inline std::string size_line(const ProblemSize& s) {
  json j;
  j["n"] = s.n;
  j["m_le"] = s.m_le;
  j["m_eq"] = s.m_eq;
  j["p"] = s.p;
  return j.dump();
}

inline std::string vector_line(const Vector& v) {
  json j = json::array();
  for (const auto& e : v) j.push_back(format_rational(e));
  return j.dump();
}

}  // namespace detail

inline std::string format_problem(const PolyProblem& prob) {
  require_valid(prob);
  std::ostringstream os;
  os << "{\n  \"kind\": \"problem\",\n  \"size\": " << detail::size_line(prob.size)
     << ",\n  \"objective\": ";
  if (prob.f)
    detail::write_poly(os, *prob.f, "  ");
  else
    os << "null";
  auto list = [&](const char* key, const std::vector<Poly>& polys) {
    os << ",\n  \"" << key << "\": ";
    if (polys.empty()) {
      os << "[]";
      return;
    }
    os << "[\n";
    for (std::size_t k = 0; k < polys.size(); ++k) {
      if (k) os << ",\n";
      os << "    ";
      detail::write_poly(os, polys[k], "    ");
    }
    os << "\n  ]";
  };
  list("inequalities", prob.g);
  list("equalities", prob.h);
  os << "\n}\n";
  return os.str();
}

inline std::string format_sqp(const SqpInstance& sqp, const std::optional<Vector>& y_bar = {}) {
  std::ostringstream os;
  os << "{\n  \"kind\": \"sqp\",\n  \"size\": " << detail::size_line(sqp.size)
     << ",\n  \"c\": " << detail::vector_line(sqp.c) << ",\n  \"parameterization\": ";
  if (sqp.kind == SqpInstance::Kind::canonical) {
    os << "\"canonical\"";
  } else {
    os << "{\n    \"base\": " << detail::vector_line(sqp.base) << ",\n    \"directions\": [";
    for (std::size_t q = 0; q < sqp.directions.size(); ++q)
      os << (q ? ",\n      " : "\n      ") << detail::vector_line(sqp.directions[q]);
    os << "\n    ]\n  }";
  }
  if (y_bar) os << ",\n  \"y_bar\": " << detail::vector_line(*y_bar);
  os << "\n}\n";
  return os.str();
}

inline json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("JSON syntax error at " + detail::line_col(text, e.byte) + ": " +
                     e.what());
  }
}

inline PolyProblem problem_from_json(const json& root) {
  const ProblemSize size = detail::read_size(root);
  PolyProblem prob;
  prob.size = size;
  const json& obj = detail::field(root, "objective", "file");
  if (!obj.is_null()) prob.f = detail::read_poly(obj, size, "objective");
  auto list = [&](const char* key, std::vector<Poly>& out) {
    const json& arr = root.contains(key) ? root.at(key) : json::array();
    if (!arr.is_array()) throw ParseError(std::string(key) + ": expected a list");
    for (std::size_t k = 0; k < arr.size(); ++k)
      out.push_back(detail::read_poly(arr[k], size, std::string(key) + "[" + std::to_string(k) + "]"));
  };
  list("inequalities", prob.g);
  list("equalities", prob.h);
  const auto report = validate_problem(prob);
  if (!report.ok()) throw ParseError(report.failures.front());
  return prob;
}

inline SqpFile sqp_from_json(const json& root) {
  const ProblemSize size = detail::read_size(root);
  SqpFile out;
  out.sqp = SqpInstance::canonical(size.n, size.m_le, size.m_eq,
                                   detail::read_vector(detail::field(root, "c", "file"), "c"));
  const json& par = detail::field(root, "parameterization", "file");
  if (par.is_string() && par.get<std::string>() == "canonical") {
    if (size.p != out.sqp.size.p)
      throw ParseError("size.p must be " + std::to_string(out.sqp.size.p) +
                       " for a canonical SQP");
  } else if (par.is_object()) {
    Vector base = detail::read_vector(detail::field(par, "base", "parameterization"),
                                      "parameterization.base");
    const json& dirs = detail::field(par, "directions", "parameterization");
    if (!dirs.is_array()) throw ParseError("parameterization.directions: expected rows");
    Matrix directions;
    for (std::size_t q = 0; q < dirs.size(); ++q)
      directions.push_back(detail::read_vector(dirs[q], "parameterization.directions[" +
                                                            std::to_string(q) + "]"));
    try {
      out.sqp = restrict_parameters(out.sqp, std::move(base), std::move(directions));
    } catch (const std::exception& e) {
      throw ParseError(std::string("parameterization: ") + e.what());
    }
    if (out.sqp.size.p != size.p)
      throw ParseError("size.p does not match the direction matrix");
  } else {
    throw ParseError("parameterization: expected \"canonical\" or {base, directions}");
  }
  if (root.contains("y_bar")) {
    out.y_bar = detail::read_vector(root.at("y_bar"), "y_bar");
    if (out.y_bar->size() != size.p) throw ParseError("y_bar: length differs from p");
  }
  return out;
}

inline ModelFile parse_model(const std::string& text) {
  const json root = parse_json_text(text);
  if (!root.is_object()) throw ParseError("top level must be an object");
  const std::string kind =
      root.contains("kind") && root.at("kind").is_string() ? root.at("kind").get<std::string>()
                                                           : "problem";
  try {
    if (kind == "problem") return problem_from_json(root);
    if (kind == "sqp") return sqp_from_json(root);
  } catch (const DimensionError& e) {
    throw ParseError(e.what());
  }
  throw ParseError("unknown kind '" + kind + "'");
}

inline PolyProblem parse_problem(const std::string& text) {
  auto m = parse_model(text);
  if (auto* p = std::get_if<PolyProblem>(&m)) return *p;
  throw ParseError("expected a problem file, found an SQP file");
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

}  // namespace stratpoint
