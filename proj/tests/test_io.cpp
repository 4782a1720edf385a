#include <gtest/gtest.h>

#include "stratpoint/builtin_examples.hpp"
#include "stratpoint/cli_support.hpp"
#include "stratpoint/export.hpp"
#include "stratpoint/problem_file.hpp"
#include "stratpoint/random.hpp"

using namespace stratpoint;

TEST(ProblemFile, BuiltinsRoundTripByteStable) {
  for (const auto& ex : builtin_examples()) {
    const std::string text = format_problem(ex.problem);
    const PolyProblem back = parse_problem(text);
    EXPECT_EQ(back, ex.problem) << ex.name;
    EXPECT_EQ(format_problem(back), text) << ex.name;
  }
}

TEST(ProblemFile, RandomProblemsRoundTrip) {
  Rng rng(13);
  for (int t = 0; t < 40; ++t) {
    ProblemSize s{static_cast<std::size_t>(rng.uniform(1, 3)),
                  static_cast<std::size_t>(rng.uniform(0, 2)),
                  static_cast<std::size_t>(rng.uniform(0, 2)),
                  static_cast<std::size_t>(rng.uniform(0, 2))};
    PolyProblem prob = random_problem(rng, s, rng.chance(1, 2));
    if (prob.f) *prob.f *= Rational(1, 3);
    const std::string text = format_problem(prob);
    EXPECT_EQ(parse_problem(text), prob);
    EXPECT_EQ(format_problem(parse_problem(text)), text);
  }
}

TEST(ProblemFile, ExactFormatOfSmallProblem) {
  const std::string text = format_problem(double_wedge());
  EXPECT_EQ(text,
            "{\n"
            "  \"kind\": \"problem\",\n"
            "  \"size\": {\"n\":1,\"m_le\":2,\"m_eq\":0,\"p\":0},\n"
            "  \"objective\": null,\n"
            "  \"inequalities\": [\n"
            "    [\n"
            "      {\"coeff\":\"1\",\"x\":[1],\"y\":[]}\n"
            "    ],\n"
            "    [\n"
            "      {\"coeff\":\"-1\",\"x\":[1],\"y\":[]}\n"
            "    ]\n"
            "  ],\n"
            "  \"equalities\": []\n"
            "}\n");
}

TEST(ProblemFile, DecimalsAndFractionsParseExactly) {
  const std::string text = R"({"size": {"n": 1, "m_le": 1, "m_eq": 0, "p": 0},
    "objective": [{"coeff": "0.5", "x": [2]}],
    "inequalities": [[{"coeff": "-3/7", "x": [1]}, {"coeff": "1", "x": [0]}]]})";
  const PolyProblem prob = parse_problem(text);
  EXPECT_EQ(prob.f->eval(Vector{2}, Vector{}), Rational(2));
  EXPECT_EQ(prob.g[0].eval(Vector{7}, Vector{}), Rational(-2));
}

TEST(ProblemFile, SyntaxErrorsReportLineAndColumn) {
  try {
    parse_model("{\n  \"size\": {\n    \"n\": 1,,\n  }\n}");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
}

TEST(ProblemFile, SemanticErrors) {
  EXPECT_THROW(parse_problem(R"({"objective": null})"), ParseError);
  EXPECT_THROW(parse_problem(R"({"size": {"n": 1, "m_le": 1, "m_eq": 0, "p": 0},
      "objective": null, "inequalities": []})"),
               ParseError);  // m_le says 1, list has 0
  EXPECT_THROW(parse_problem(R"({"size": {"n": 1, "m_le": 0, "m_eq": 0, "p": 0},
      "objective": [{"coeff": 0.5, "x": [1]}]})"),
               ParseError);  // binary floats are not accepted
  EXPECT_THROW(parse_problem(R"({"size": {"n": 1, "m_le": 0, "m_eq": 0, "p": 0},
      "objective": [{"coeff": "1", "x": [1, 2]}]})"),
               ParseError);
  EXPECT_THROW(parse_model(R"({"kind": "nope"})"), ParseError);
}

TEST(SqpFile, RoundTrip) {
  for (const auto& b : builtin_sqps()) {
    const std::string text = format_sqp(b.sqp, Vector(b.sqp.size.p, Rational(1, 2)));
    const auto model = parse_model(text);
    const auto& f = std::get<SqpFile>(model);
    EXPECT_EQ(f.sqp.size, b.sqp.size);
    EXPECT_EQ(f.sqp.c, b.sqp.c);
    EXPECT_EQ(f.sqp.base, b.sqp.base);
    EXPECT_EQ(f.sqp.directions, b.sqp.directions);
    EXPECT_EQ(format_sqp(f.sqp, f.y_bar), text);
  }
  const auto canon = SqpInstance::canonical(2, 1, 0, {1, -1});
  const auto f = std::get<SqpFile>(parse_model(format_sqp(canon)));
  EXPECT_EQ(f.sqp.kind, SqpInstance::Kind::canonical);
  EXPECT_EQ(f.sqp.size.p, 3u);
  EXPECT_FALSE(f.y_bar);
}

TEST(CliParsing, GridSpec) {
  const auto g = parse_grid_spec("y1=-1:1:41,y2=0", 2);
  EXPECT_EQ(g.axes[0].steps, 41u);
  EXPECT_EQ(g.axes[0].min, Rational(-1));
  EXPECT_EQ(g.axes[1].steps, 1u);
  EXPECT_EQ(g.axes[1].min, Rational(0));
  EXPECT_THROW(parse_grid_spec("y1=0", 2), ParseError);
  EXPECT_THROW(parse_grid_spec("y3=0", 2), ParseError);
  EXPECT_THROW(parse_grid_spec("y1=1:0:3,y2=0", 2), ParseError);
  EXPECT_THROW(parse_grid_spec("y1=0:1,y2=0", 2), ParseError);
  EXPECT_THROW(parse_grid_spec("y1=0,y1=1", 1), ParseError);
}

TEST(CliParsing, VectorsLabelsProjection) {
  EXPECT_EQ(parse_vector("1,-2/3,0.5"), (Vector{1, Rational(-2, 3), Rational(1, 2)}));
  EXPECT_TRUE(parse_vector("").empty());
  EXPECT_EQ(parse_labels("1,3"), (std::vector<int>{1, 3}));
  EXPECT_EQ(parse_projection("y1,x2", 2, 2), (std::pair<std::size_t, std::size_t>{0, 3}));
  EXPECT_THROW(parse_projection("y3,x1", 2, 2), ParseError);
  EXPECT_THROW(parse_projection("y1", 2, 2), ParseError);
}

TEST(CliParsing, ModelResolution) {
  EXPECT_TRUE(std::holds_alternative<PolyProblem>(resolve_model("double-wedge")));
  EXPECT_TRUE(std::holds_alternative<SqpFile>(resolve_model("halfspace-sqp")));
  EXPECT_THROW(resolve_model("no-such-model"), ParseError);
}

namespace {

std::vector<TraceRecord> small_trace() {
  const auto sqp = find_builtin_sqp("halfspace-sqp-2")->sqp;
  return trace_grid(sqp, GridSpec{{{Rational(-1), Rational(1), 3}, {Rational(0), Rational(0), 1}}});
}

}  // namespace

TEST(Export, Csv) {
  const auto recs = small_trace();
  const std::string csv = export_csv(recs, 2, 2);
  EXPECT_EQ(csv,
            "y1,y2,x1,x2,feasible,stationary,mfcq_violated,classification\n"
            "-1,0,1,0,true,true,false,sp_interior\n"
            "0,0,0,0,true,true,true,mf_boundary\n"
            "1,0,,,false,false,false,infeasible\n");
}

TEST(Export, JsonUsesExactRationals) {
  const auto sqp = find_builtin_sqp("halfspace-sqp")->sqp;
  const auto recs = trace_grid(sqp, GridSpec{{{Rational(-1, 3), Rational(-1, 3), 1}}});
  const auto j = nlohmann::ordered_json::parse(export_json(recs));
  ASSERT_EQ(j.size(), 1u);
  EXPECT_EQ(j[0]["y"][0], "-1/3");
  EXPECT_EQ(j[0]["x"][0], "1/3");
  EXPECT_EQ(j[0]["classification"], "sp_interior");
  EXPECT_EQ(j[0]["code"]["i0"], nlohmann::ordered_json::array({"1"}));
  EXPECT_EQ(j[0]["code"]["sp_pairs"][0]["I"], nlohmann::ordered_json::array({"1", "m*"}));
}

TEST(Export, Svg) {
  const auto recs = small_trace();
  const std::string svg = export_svg(recs, 2, 2, {0, 2});
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("class=\"mf_boundary\""), std::string::npos);
  // The infeasible record has no x and is skipped under a y1/x1 projection.
  EXPECT_EQ(svg.find("class=\"infeasible\""), std::string::npos);
  EXPECT_THROW(export_svg(recs, 2, 2, {0, 4}), std::out_of_range);
  EXPECT_THROW(export_trace(recs, ExportFormat::svg, 2, 2), std::invalid_argument);
  EXPECT_THROW(parse_export_format("png"), std::invalid_argument);
}
