// stratpoint command-line tool.
//
//   stratpoint code MODEL --x 0,0 --y 0,0,0 [--json]
//   stratpoint normal-form MODEL --x ... --y ... [--out FILE]
//   stratpoint transform MODEL --kind slack|sp2mf|mf2sp [--out FILE]
//   stratpoint trace MODEL --grid y1=-1:1:41,y2=0 [--format csv|json|svg]
//                          [--project y1,y2] [--distinguish M] [--out FILE]
//   stratpoint verify [--suite all] [--seed N] [--trials N]
//   stratpoint examples
//
// MODEL is a problem/SQP file or the name of a built-in example.
// Exit codes: 0 ok, 1 verification failure, 2 usage or parse error.

#include <cstdio>
#include <iostream>
#include <string>
#include <variant>

#include "CLI11.hpp"
#include "stratpoint/cli_support.hpp"
#include "stratpoint/export.hpp"
#include "stratpoint/verification.hpp"

using namespace stratpoint;

namespace {

constexpr int kOk = 0, kFailed = 1, kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty())
    std::cout << text;
  else
    write_text_file(out_path, text);
}

/// Problem view of a model; SQP files are expanded and default to y_bar.
PolyProblem as_problem(const ModelFile& model, std::string& y_arg) {
  if (const auto* p = std::get_if<PolyProblem>(&model)) return *p;
  const auto& f = std::get<SqpFile>(model);
  if (y_arg.empty() && f.y_bar) {
    for (std::size_t k = 0; k < f.y_bar->size(); ++k)
      y_arg += (k ? "," : "") + format_rational((*f.y_bar)[k]);
  }
  return f.sqp.to_problem();
}

std::pair<Vector, Vector> read_point(const PolyProblem& prob, const std::string& x_arg,
                                     const std::string& y_arg) {
  Vector x = x_arg.empty() ? Vector(prob.size.n, Rational(0)) : parse_vector(x_arg);
  Vector y = y_arg.empty() ? Vector(prob.size.p, Rational(0)) : parse_vector(y_arg);
  if (x.size() != prob.size.n)
    throw UsageError("--x has " + std::to_string(x.size()) + " entries, n = " +
                     std::to_string(prob.size.n));
  if (y.size() != prob.size.p)
    throw UsageError("--y has " + std::to_string(y.size()) + " entries, p = " +
                     std::to_string(prob.size.p));
  return {x, y};
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

int cmd_code(const std::string& model_arg, const std::string& x_arg, std::string y_arg,
             bool as_json) {
  const auto prob = as_problem(resolve_model(model_arg), y_arg);
  const auto [x, y] = read_point(prob, x_arg, y_arg);
  const auto pc = point_code(prob, x, y);
  const auto& code = pc.code;
  if (as_json) {
    auto j = code_to_json(code);
    j["feasible"] = pc.feasible;
    j["stationary"] = code.stationary();
    j["mfcq_violated"] = code.mfcq_violated();
    std::cout << j.dump(2) << "\n";
    return kOk;
  }
  const int ms = code.m_star();
  std::cout << "feasible: " << yes_no(pc.feasible) << "\n"
            << "I0: " << format_index_set(code.i0, ms, code.has_objective) << "\n"
            << "SP pairs: " << format_pairs(code.sp_pairs(), ms, code.has_objective) << "\n"
            << "MF pairs: " << format_pairs(code.mf_pairs(), ms, code.has_objective) << "\n"
            << "stationary: " << yes_no(pc.feasible && code.stationary()) << "\n"
            << "MFCQ violated: " << yes_no(pc.feasible && code.mfcq_violated()) << "\n";
  return kOk;
}

int cmd_normal_form(const std::string& model_arg, const std::string& x_arg,
                    std::string y_arg, const std::string& out) {
  const auto prob = as_problem(resolve_model(model_arg), y_arg);
  if (!prob.f) throw UsageError("normal-form needs a problem with an objective");
  const auto [x, y] = read_point(prob, x_arg, y_arg);
  const JetPoint jet = jet_sp(prob, x, y);
  const auto nf = build_normal_form(jet);
  const auto jac = normal_form_jacobian(jet);
  const bool round_trip = nf.jet_check == jet;
  const bool unimodular = abs(jac.determinant) == 1;
  emit(format_sqp(nf.sqp, nf.y_bar), out);
  std::cerr << "normal form size: n=" << nf.sqp.size.n << " m_le=" << nf.sqp.size.m_le
            << " m_eq=" << nf.sqp.size.m_eq << " p=" << nf.sqp.size.p << "\n"
            << "jacobian determinant: " << format_rational(jac.determinant) << "\n"
            << "round trip: " << (round_trip ? "ok" : "MISMATCH") << "\n";
  return round_trip && unimodular ? kOk : kFailed;
}

int cmd_transform(const std::string& model_arg, const std::string& kind,
                  const std::string& out, std::uint64_t seed) {
  std::string unused;
  const auto prob = as_problem(resolve_model(model_arg), unused);
  TransformedProblem tp;
  if (kind == "slack") {
    tp = slack_problem(prob);
  } else if (kind == "sp2mf") {
    if (!prob.f) throw UsageError("sp2mf needs a problem with an objective");
    tp = sp2mf(prob);
  } else if (kind == "mf2sp") {
    if (prob.size.m_eq != 0)
      throw UsageError("mf2sp needs m_eq = 0 (this problem has m_eq = " +
                       std::to_string(prob.size.m_eq) + ")");
    tp = mf2sp(prob);
  } else {
    throw UsageError("unknown transform kind '" + kind + "' (slack, sp2mf, mf2sp)");
  }
  Rng rng(seed);
  std::vector<std::pair<Vector, Vector>> samples;
  for (int k = 0; k < 20; ++k)
    samples.push_back({random_vector(rng, prob.size.n, -3, 3),
                       random_vector(rng, prob.size.p, -3, 3)});
  const auto rep = verify_commutation(tp, samples);
  emit(format_problem(tp.problem), out);
  std::cerr << "transform: " << to_string(tp.kind) << "\n"
            << "code action: "
            << (tp.code_action ? to_string(*tp.code_action)
                               : std::string("none (inequalities relabelled as equalities)"))
            << "\n"
            << "commutation: " << (rep.samples - rep.failures.size()) << "/" << rep.samples
            << " samples agree\n";
  for (const auto& f : rep.failures) std::cerr << "  sample " << f.sample << ": " << f.reason << "\n";
  return rep.ok() ? kOk : kFailed;
}

struct TraceArgs {
  std::string model, grid, format = "csv", project, out, active, eq, x, mult;
  int distinguish = 0;
};

int cmd_trace(const TraceArgs& a) {
  const ModelFile model = resolve_model(a.model);
  const ExportFormat fmt = parse_export_format(a.format);
  std::vector<TraceRecord> records;
  std::size_t n = 0, p = 0;
  GridSpec grid;
  std::optional<SqpInstance> sqp;
  if (const auto* f = std::get_if<SqpFile>(&model)) {
    sqp = f->sqp;
    n = sqp->size.n;
    p = sqp->size.p;
    grid = parse_grid_spec(a.grid, p);
    records = trace_grid(*sqp, grid);
  } else {
    const auto& prob = std::get<PolyProblem>(model);
    n = prob.size.n;
    p = prob.size.p;
    grid = parse_grid_spec(a.grid, p);
    IndexPair pair;
    for (int i : parse_labels(a.active)) pair.I.insert(i);
    if (a.eq.empty()) {
      for (std::size_t j = 1; j <= prob.size.m_eq; ++j) pair.J.insert(static_cast<int>(j));
    } else {
      for (int j : parse_labels(a.eq)) pair.J.insert(j);
    }
    for (int i : pair.I)
      if (i < 1 || static_cast<std::size_t>(i) > prob.size.m_le)
        throw UsageError("--active label " + std::to_string(i) + " out of range");
    for (int j : pair.J)
      if (j < 1 || static_cast<std::size_t>(j) > prob.size.m_eq)
        throw UsageError("--eq label " + std::to_string(j) + " out of range");
    std::vector<double> seed_x(n, 0.0), seed_mult(pair.size(), 0.0);
    if (!a.x.empty()) seed_x = to_double(parse_vector(a.x));
    if (!a.mult.empty()) seed_mult = to_double(parse_vector(a.mult));
    if (seed_x.size() != n) throw UsageError("--x needs " + std::to_string(n) + " entries");
    if (seed_mult.size() != pair.size())
      throw UsageError("--mult needs " + std::to_string(pair.size()) + " entries");
    records = trace_problem(prob, pair, grid, seed_x, seed_mult);
  }

  std::optional<std::pair<std::size_t, std::size_t>> proj;
  if (!a.project.empty()) {
    proj = parse_projection(a.project, p, n);
  } else if (fmt == ExportFormat::svg) {
    if (p + n < 2) throw UsageError("svg export needs at least two coordinates");
    proj = std::pair<std::size_t, std::size_t>{0, 1};
  }
  emit(export_trace(records, fmt, p, n, proj), a.out);

  int status = kOk;
  const auto issues = check_trace_consistency(records);
  for (const auto& s : issues) std::cerr << "consistency: " << s << "\n";
  if (!issues.empty()) status = kFailed;

  std::size_t counts[4] = {0, 0, 0, 0};
  for (const auto& r : records) ++counts[static_cast<int>(r.classification)];
  std::cerr << "records: " << records.size();
  for (auto c : {Classification::sp_interior, Classification::mf_boundary,
                 Classification::non_stationary, Classification::infeasible})
    std::cerr << "  " << to_string(c) << "=" << counts[static_cast<int>(c)];
  std::cerr << "\n";

  if (a.distinguish != 0) {
    if (!sqp) throw UsageError("--distinguish needs an SQP model");
    check_inequality_label(*sqp, a.distinguish);
    const auto rep = boundary_probe(*sqp, a.distinguish, grid.nodes());
    for (const auto& e : rep.entries) {
      std::cerr << "probe y=(";
      for (std::size_t k = 0; k < e.y.size(); ++k)
        std::cerr << (k ? "," : "") << format_rational(e.y[k]);
      std::cerr << ") A=" << format_rational(e.boundary) << " " << (e.ok() ? "ok" : "VIOLATED");
      if (!e.note.empty()) std::cerr << " (" << e.note << ")";
      std::cerr << "\n";
    }
    std::cerr << "boundary probe: " << rep.violations() << " violation(s) over "
              << rep.entries.size() << " node(s)\n";
    if (rep.violations() != 0) status = kFailed;
  }
  return status;
}

int cmd_verify(const VerifyOptions& opt) {
  const auto results = run_verify(opt);
  std::cout << format_report(results, opt);
  for (const auto& r : results)
    if (!r.ok()) return kFailed;
  return kOk;
}

int cmd_examples() {
  for (const auto& e : builtin_examples()) {
    std::cout << e.name << ": " << e.summary << "\n";
    for (const auto& f : e.facts) std::cout << "  - " << f << "\n";
  }
  for (const auto& e : builtin_sqps()) std::cout << e.name << ": " << e.summary << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stationarity, MFCQ violation and combinatorial codes for parametric programs"};
  app.require_subcommand(1);

  std::string model, x_arg, y_arg, out, kind;
  bool as_json = false;

  auto* code = app.add_subcommand("code", "Combinatorial code and verdicts at a point");
  code->add_option("model", model, "problem file or built-in name")->required();
  code->add_option("--x", x_arg, "point x, comma separated (default 0)");
  code->add_option("--y", y_arg, "parameter y, comma separated (default 0)");
  code->add_flag("--json", as_json, "print JSON");

  auto* nf = app.add_subcommand("normal-form", "Canonical SQP normal form at a point");
  nf->add_option("model", model, "problem file or built-in name")->required();
  nf->add_option("--x", x_arg, "point x");
  nf->add_option("--y", y_arg, "parameter y");
  nf->add_option("--out", out, "write the SQP file here instead of stdout");

  std::uint64_t seed = seed_from_env();
  auto* tr = app.add_subcommand("transform", "Apply SLACK, SP2MF or MF2SP");
  tr->add_option("model", model, "problem file or built-in name")->required();
  tr->add_option("--kind", kind, "slack, sp2mf or mf2sp")->required();
  tr->add_option("--out", out, "write the problem file here instead of stdout");
  tr->add_option("--seed", seed, "seed for the commutation samples");

  TraceArgs ta;
  auto* tc = app.add_subcommand("trace", "Classify a parameter grid");
  tc->add_option("model", ta.model, "problem/SQP file or built-in name")->required();
  tc->add_option("--grid", ta.grid, "e.g. y1=-1:1:41,y2=0")->required();
  tc->add_option("--format", ta.format, "csv, json or svg");
  tc->add_option("--project", ta.project, "svg axes, e.g. y1,x1");
  tc->add_option("--distinguish", ta.distinguish, "run the boundary probe for inequality M");
  tc->add_option("--out", ta.out, "write the export here instead of stdout");
  tc->add_option("--active", ta.active, "inequality labels I of the traced KKT system");
  tc->add_option("--eq", ta.eq, "equality labels J (default: all)");
  tc->add_option("--x", ta.x, "starting point for Newton");
  tc->add_option("--mult", ta.mult, "starting multipliers (I ascending, then J)");

  VerifyOptions vo;
  vo.seed = seed_from_env();
  auto* vf = app.add_subcommand("verify", "Run the verification suites");
  vf->add_option("--suite", vo.suite, "codes, qp, transforms, boundary or all");
  vf->add_option("--seed", vo.seed, "random seed");
  vf->add_option("--trials", vo.trials, "instances per check");

  auto* ex = app.add_subcommand("examples", "List built-in examples");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*code) return cmd_code(model, x_arg, y_arg, as_json);
    if (*nf) return cmd_normal_form(model, x_arg, y_arg, out);
    if (*tr) return cmd_transform(model, kind, out, seed);
    if (*tc) return cmd_trace(ta);
    if (*vf) return cmd_verify(vo);
    if (*ex) return cmd_examples();
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DimensionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  }
  return kUsage;
}
