#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "sgps/sgps.hpp"

using namespace sgps;
using namespace sgps::dsl;

namespace {

std::vector<std::filesystem::path> corpus() {
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(SGPS_CORPUS_DIR))
    if (e.path().extension() == ".sgps") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

ErrorCode parse_error_code(const std::string& text, int* line = nullptr, int* column = nullptr) {
  try {
    parse_session(text);
  } catch (const ParseError& e) {
    if (line) *line = e.line();
    if (column) *column = e.column();
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

const nlohmann::json& only_result(const nlohmann::json& run) {
  const auto& reports = run.at("reports");
  EXPECT_EQ(reports.size(), 1u);
  return reports.at(0);
}

const std::string kSeriesPrelude = "ring R = Zmod(6)\nmonoid N = Nat\nmonoid Q = QNonNeg\ncontext A = R[[N; id]]\n";

}  // namespace

TEST(DslCorpus, NonEmpty) { EXPECT_GE(corpus().size(), 3u); }

TEST(DslCorpus, PrintParseRoundTrip) {
  for (const auto& p : corpus()) {
    auto ast = parse_session(slurp(p));
    std::string printed = print(ast);
    auto again = parse_session(printed);
    EXPECT_EQ(again, ast) << p;
    EXPECT_EQ(print(again), printed) << p;
  }
}

TEST(DslCorpus, RunsWithoutErrorsExceptDocumentedOnes) {
  for (const auto& p : corpus()) {
    std::size_t errors = 0;
    auto a = run_session(slurp(p), {7, false}, &errors);
    auto b = run_session(slurp(p), {7, false}, &errors);
    EXPECT_EQ(emit_report(a), emit_report(b)) << p;
    for (const auto& e : a.at("reports"))
      if (!e.at("ok").get<bool>())
        EXPECT_EQ(e.at("error").at("code"), "NonUnitLeadingCoefficient") << p << ": " << e.dump();
  }
}

TEST(DslEval, MulExample) {
  auto out = run_session(kSeriesPrelude + "mul A : (c(2)+c(3)*e(1)) * (c(3)+c(2)*e(1))");
  EXPECT_EQ(only_result(out).at("result").at("text"), "e(1)");
}

TEST(DslEval, ProbeExample) {
  auto out = run_session("ring R = Zmod(6)\nprobe archimedean R");
  const auto& r = only_result(out).at("result");
  EXPECT_EQ(r.at("archimedean"), false);
  EXPECT_EQ(r.at("witness"), 3);
}

TEST(DslEval, ScenarioExample) {
  auto out = run_session("scenario ex-heinzer-lantz N=3");
  const auto& r = only_result(out).at("result");
  EXPECT_EQ(r.at("claims").size(), 4u);
  EXPECT_EQ(r.at("all_agree"), true);
}

TEST(DslEval, TruncationAndRationalExponents) {
  auto out = run_session(kSeriesPrelude + "context B = R[[Q; id]]\nmul B : (1 + e(1/2)) * (1 + e(1/3)) --trunc=2/3");
  EXPECT_EQ(only_result(out).at("result").at("text"), "c(1) + e(1/3) + e(1/2)");
}

TEST(DslEval, DomainErrorsBecomeEntries) {
  std::size_t errors = 0;
  auto out = run_session(kSeriesPrelude + "invert A : c(2) + e(1)\nmul A : e(1) * e(1)", {}, &errors);
  EXPECT_EQ(errors, 1u);
  ASSERT_EQ(out.at("reports").size(), 2u);
  EXPECT_EQ(out.at("reports")[0].at("error").at("code"), "NonUnitLeadingCoefficient");
  EXPECT_EQ(out.at("reports")[1].at("result").at("text"), "e(2)");
}

TEST(DslEval, EmitReportIsVersionedAndSorted) {
  EXPECT_EQ(emit_report(nlohmann::json::object(), false), "{\"v\":1}");
  auto text = emit_report(run_session("ring R = Zmod(6)\nprobe archimedean R"), false);
  EXPECT_LT(text.find("\"reports\""), text.find("\"v\""));
}

TEST(DslErrors, SyntaxErrorCarriesPosition) {
  int line = 0, column = 0;
  EXPECT_EQ(parse_error_code("ring R = Zmod(6)\nring S = Zmod(", &line, &column), ErrorCode::SyntaxError);
  EXPECT_EQ(line, 2);
  EXPECT_GT(column, 1);
}

TEST(DslErrors, UnknownIdentifiers) {
  EXPECT_EQ(parse_error_code("mul A : e(1) * e(1)"), ErrorCode::UnknownIdentifier);
  EXPECT_EQ(parse_error_code("ring R = Zmod(6)\nmonoid N = Nat\ncontext A = R[[N; phi]]"), ErrorCode::UnknownIdentifier);
}

TEST(DslErrors, RedeclarationAndKinds) {
  EXPECT_NE(parse_error_code("ring R = Zmod(6)\nring R = Zmod(5)"), ErrorCode::InvalidArgument);
  EXPECT_EQ(parse_error_code("ring R = Zmod(6)\nprobe archimedean N"), ErrorCode::UnknownIdentifier);
  EXPECT_EQ(parse_error_code(kSeriesPrelude + "probe archimedean A"), ErrorCode::TypeMismatch);
}

TEST(DslErrors, SeriesLiteralsOutsideSeriesContexts) {
  EXPECT_EQ(parse_error_code("ring R = Zmod(6)\nendo E on R = id\ncontext P = R[x; E]\nmul P : e(1) * x"),
            ErrorCode::TypeMismatch);
}

TEST(DslProperty, RandomExpressionsRoundTrip) {
  Rng rng(31);
  std::uniform_int_distribution<int> pick(0, 5), small(1, 9);
  std::function<std::string(int)> gen = [&](int depth) -> std::string {
    int k = depth == 0 ? pick(rng) % 3 : pick(rng);
    switch (k) {
      case 0: return std::to_string(small(rng));
      case 1: return "e(" + std::to_string(small(rng)) + "/" + std::to_string(small(rng)) + ")";
      case 2: return "c(" + std::to_string(small(rng)) + ")";
      case 3: return "(" + gen(depth - 1) + " + " + gen(depth - 1) + ")";
      case 4: return gen(depth - 1) + "*" + gen(depth - 1);
      default: return "-(" + gen(depth - 1) + " - " + gen(depth - 1) + ")";
    }
  };
  const std::string prelude = "ring R = Zmod(6)\nmonoid Q = QNonNeg\ncontext B = R[[Q; id]]\n";
  for (int i = 0; i < 200; ++i) {
    std::string src = prelude + "eval B : " + gen(3) + "\n";
    auto ast = parse_session(src);
    auto printed = print(ast);
    ASSERT_EQ(parse_session(printed), ast) << src;
    ASSERT_EQ(emit_report(run_session(src)), emit_report(run_session(printed))) << src;
  }
}
