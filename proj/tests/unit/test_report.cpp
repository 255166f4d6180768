#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include <gtest/gtest.h>

#include "opz/error.hpp"
#include "opz/report.hpp"

namespace opz {
namespace {

Error parse_error(std::string_view text) {
  try {
    parse_model(text);
  } catch (const Error& e) {
    return e;
  }
  ADD_FAILURE() << "accepted: " << text;
  return Error(ErrorKind::InvalidArgument, "none");
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

ModelFile jacobi_12() { return parse_model(R"({"model": "jacobi", "a": [1, 2], "b": [0, 0]})"); }

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream s(text);
  for (std::string line; std::getline(s, line);) out.push_back(line);
  return out;
}

TEST(Report, ParsesModels) {
  const ModelFile j = parse_model(R"({"model": "jacobi", "a": [1.0, 2.0], "b": [0.0, 0.0], "label": "two"})");
  EXPECT_EQ(std::get<PeriodicJacobi>(j.model), PeriodicJacobi({1.0, 2.0}, {0.0, 0.0}));
  EXPECT_EQ(j.label, "two");
  EXPECT_FALSE(j.doubled);

  const ModelFile v = parse_model(R"({"model": "verblunsky", "alpha": [[0.3, 0.2], [-0.4, 0], [0, 0.25]]})");
  EXPECT_TRUE(v.doubled);
  EXPECT_EQ(std::get<PeriodicVerblunsky>(v.model).period(), 6);
}

TEST(Report, BundledModelsParse) {
  int count = 0;
  for (const auto& e : std::filesystem::directory_iterator(OPZ_MODELS_DIR)) {
    if (e.path().extension() != ".json") continue;
    SCOPED_TRACE(e.path().string());
    EXPECT_NO_THROW(parse_model(read_file(e.path())));
    ++count;
  }
  EXPECT_GE(count, 7);
}

TEST(Report, ValidationErrorsNameTheField) {
  const struct {
    const char* text;
    const char* needle;
  } cases[] = {
      {R"({"model": "jacobi", "a": [1, 0], "b": [0, 0]})", "a[1]"},
      {R"({"model": "jacobi", "a": [1, 2], "b": [0]})", "equal length"},
      {R"({"model": "jacobi", "a": [], "b": []})", "'a'"},
      {R"({"model": "jacobi", "a": [1], "b": ["x"]})", "b[0]"},
      {R"({"model": "jacobi", "a": [1], "b": [0], "c": 1})", "unknown field 'c'"},
      {R"({"model": "verblunsky", "alpha": [[0.6, 0.8]]})", "alpha[0]"},
      {R"({"model": "verblunsky", "alpha": [[0.1]]})", "[re, im]"},
      {R"({"model": "cmv", "alpha": [[0.1, 0]]})", "'model'"},
      {R"([1, 2])", "object"},
  };
  for (const auto& c : cases) {
    SCOPED_TRACE(c.text);
    const Error e = parse_error(c.text);
    EXPECT_EQ(e.kind(), ErrorKind::ValidationError);
    EXPECT_NE(std::string(e.what()).find(c.needle), std::string::npos) << e.what();
  }
}

TEST(Report, ParseErrorReportsLine) {
  const Error e = parse_error("{\n  \"model\": \"jacobi\",\n  \"a\": [1,,2]\n}");
  EXPECT_EQ(e.kind(), ErrorKind::ParseError);
  EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
}

TEST(Report, SerializeRoundTrip) {
  for (const char* text : {R"({"model": "jacobi", "a": [0.1, 2.5, 3], "b": [-1, 0, 1e-300], "label": "x"})",
                           R"({"model": "verblunsky", "alpha": [[0.3, 0.2], [-0.4, 0], [0, 0.25]]})"}) {
    const ModelFile first = parse_model(text);
    const ModelFile again = parse_model(serialize_model(first));
    EXPECT_EQ(first.model, again.model);
    EXPECT_EQ(first.label, again.label);
    EXPECT_EQ(first.doubled, again.doubled);
  }
}

TEST(Report, FormatDoubleRoundTrips) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(3.0), "3");
  EXPECT_EQ(format_double(-2.5e-300), "-2.5e-300");
  EXPECT_EQ(format_double(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(format_double(std::nan("")), "nan");
  for (double x : {1.0 / 3.0, std::sqrt(2.0), 6.02214076e23, -1e-17}) EXPECT_EQ(std::stod(format_double(x)), x);
}

TEST(Report, CsvQuoting) {
  const Table t{"x", {"a", "b"}, {{Cell{std::int64_t{1}}, Cell{std::string("p,q \"r\"")}}}};
  EXPECT_EQ(render_csv(t), "a,b\n1,\"p,q \"\"r\"\"\"\n");
}

TEST(Report, JsonRoundTrip) {
  const Table t{"zeros",
                {"n", "re", "band"},
                {{Cell{std::int64_t{3}}, Cell{0.25}, Cell{std::string("gap:0")}},
                 {Cell{std::int64_t{4}}, Cell{-1.5}, Cell{std::string("off")}}}};
  const std::string text = render_json(t);
  EXPECT_EQ(parse_table_json(text), t);
  EXPECT_LT(text.find("\"columns\""), text.find("\"rows\""));
  EXPECT_LT(text.find("\"rows\""), text.find("\"subcommand\""));
}

TEST(Report, BandsTable) {
  const RunResult r = run_subcommand("bands", jacobi_12(), RunConfig{});
  EXPECT_FALSE(r.verification_failed);
  const std::vector<std::string> csv = lines(render_csv(r.table));
  ASSERT_EQ(csv.size(), 9u);
  EXPECT_EQ(csv[0], "kind,value1,value2,flag");
  EXPECT_EQ(csv[1], "edge,-3,,");
  EXPECT_EQ(csv[4], "edge,3,,");
  EXPECT_EQ(csv[5].rfind("band,-3,", 0), 0u);
  EXPECT_NE(csv[5].find("decreasing"), std::string::npos);
  EXPECT_NE(csv[6].find("increasing"), std::string::npos);
  EXPECT_NE(csv[7].find("open"), std::string::npos);
  EXPECT_EQ(csv[8].rfind("capacity,1.41421356237309", 0), 0u);
}

TEST(Report, ChebyshevPredictRows) {
  RunConfig cfg;
  cfg.m = 4;
  const ModelFile cheb = parse_model(R"({"model": "jacobi", "a": [0.5], "b": [0]})");
  const RunResult r = run_subcommand("predict", cheb, cfg);
  EXPECT_FALSE(r.verification_failed);
  ASSERT_EQ(r.table.rows.size(), 3u);
  const std::vector<double> expected{-std::sqrt(0.5), 0.0, std::sqrt(0.5)};
  const auto col = [&](const std::string& name) {
    return static_cast<std::size_t>(std::find(r.table.columns.begin(), r.table.columns.end(), name) -
                                    r.table.columns.begin());
  };
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_NEAR(std::get<double>(r.table.rows[i][col("predicted")]), expected[i], 1e-14);
    EXPECT_NEAR(std::get<double>(r.table.rows[i][col("computed")]), expected[i], 1e-14);
    EXPECT_LE(std::get<double>(r.table.rows[i][col("error")]), 1e-14);
  }
}

TEST(Report, TightToleranceFailsVerification) {
  RunConfig cfg;
  cfg.m = 3;
  cfg.tol = 1e-300;
  const RunResult r = run_subcommand("predict", parse_model(R"({"model": "jacobi", "a": [1, 2, 0.5], "b": [0.3, 0, -1]})"), cfg);
  EXPECT_TRUE(r.verification_failed);
}

TEST(Report, ZerosTableColumns) {
  RunConfig cfg;
  cfg.n_list = {5, 9};
  const RunResult r = run_subcommand("zeros", jacobi_12(), cfg);
  const std::vector<std::string> cols{"n", "index", "re", "im", "band", "residual"};
  EXPECT_EQ(r.table.columns, cols);
  EXPECT_EQ(r.table.rows.size(), 14u);
  int gap = 0;
  for (const auto& row : r.table.rows) gap += std::get<std::string>(row[4]).rfind("gap:", 0) == 0;
  EXPECT_EQ(gap, 2);
}

TEST(Report, SubcommandArguments) {
  const auto kind = [](auto f) {
    try {
      f();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::ParseError;
  };
  EXPECT_EQ(kind([] { run_subcommand("nope", jacobi_12(), RunConfig{}); }), ErrorKind::InvalidArgument);
  EXPECT_EQ(kind([] { run_subcommand("zeros", jacobi_12(), RunConfig{}); }), ErrorKind::InvalidArgument);
  EXPECT_EQ(kind([] { run_subcommand("predict", jacobi_12(), RunConfig{}); }), ErrorKind::InvalidArgument);
}

TEST(Report, EverySubcommandIsDeterministic) {
  RunConfig cfg;
  cfg.n_list = {12, 25};
  cfg.m = 3;
  const ModelFile v = parse_model(R"({"model": "verblunsky", "alpha": [[0.5, 0.1], [-0.2, 0.3]]})");
  const ModelFile j = jacobi_12();
  for (const std::string& sub : kSubcommands) {
    if (sub == "verify") continue;
    SCOPED_TRACE(sub);
    for (const ModelFile* m : {&v, &j}) {
      const RunResult a = run_subcommand(sub, *m, cfg);
      const RunResult b = run_subcommand(sub, *m, cfg);
      EXPECT_EQ(render_json(a.table), render_json(b.table));
      EXPECT_FALSE(a.table.rows.empty());
    }
  }
}

TEST(Report, WriteAtomic) {
  const auto dir = std::filesystem::temp_directory_path() / "opz_write_atomic";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const auto path = dir / "out.csv";
  write_atomic(path.string(), "first\n");
  write_atomic(path.string(), "second\n");
  EXPECT_EQ(read_file(path), "second\n");
  int entries = 0;
  for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(dir)) ++entries;
  EXPECT_EQ(entries, 1);
  EXPECT_THROW(write_atomic((dir / "missing" / "x.csv").string(), "x"), Error);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace opz
