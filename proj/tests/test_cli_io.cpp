#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "apxhom/cli.hpp"

using namespace apxhom;
using apxhom::io::json;

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

json run_json(std::vector<std::string> args) {
  auto r = run_cli(std::move(args));
  EXPECT_EQ(r.code, 0) << r.err;
  return json::parse(r.out);
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("apxhom_test_" + name)).string();
}

}  // namespace

// ---------------------------------------------------------------------------
// Spec grammar

TEST(ParseSpec, Examples) {
  EXPECT_EQ(io::parse_spec("[2^3,5]"), (GroupSpec{2, 2, 2, 5}));
  EXPECT_EQ(io::parse_spec("[4,0]"), (GroupSpec{4, 0}));
  EXPECT_EQ(io::parse_spec(" [ 4 , 6 ^ 2 ] "), (GroupSpec{4, 6, 6}));
  EXPECT_EQ(io::parse_spec("[]"), GroupSpec{});
}

TEST(ParseSpec, ErrorsNamePositionAndToken) {
  try {
    io::parse_spec("[1]");
    FAIL() << "modulus 1 accepted";
  } catch (const io::ParseError& e) {
    EXPECT_EQ(e.position(), 1u);
    EXPECT_NE(std::string(e.what()).find("modulus 1"), std::string::npos);
  }
  try {
    io::parse_spec("[4,x]");
    FAIL();
  } catch (const io::ParseError& e) {
    EXPECT_EQ(e.position(), 3u);
    EXPECT_NE(std::string(e.what()).find("'x]'"), std::string::npos);
  }
  EXPECT_THROW(io::parse_spec("4,5"), io::ParseError);
  EXPECT_THROW(io::parse_spec("[4,5"), io::ParseError);
  EXPECT_THROW(io::parse_spec("[4,5] extra"), io::ParseError);
  EXPECT_THROW(io::parse_spec("[2^0]"), io::ParseError);
  EXPECT_THROW(io::parse_spec("[-3]"), io::ParseError);
  EXPECT_THROW(io::parse_spec("[99999999999999999999]"), io::ParseError);
}

TEST(FormatSpec, RoundTrip) {
  EXPECT_EQ(io::format_spec(GroupSpec{2, 2, 2, 5}), "[2^3,5]");
  EXPECT_EQ(io::format_spec(GroupSpec{4, 0}), "[4,0]");
  EXPECT_EQ(io::format_spec(GroupSpec{}), "[]");
  Rng rng(71);
  for (int t = 0; t < 300; ++t) {
    std::vector<std::int64_t> m;
    auto k = rng.below(6);
    for (std::uint64_t i = 0; i < k; ++i) m.push_back(rng.coin() ? 2 : static_cast<std::int64_t>(rng.below(5)) * 2);
    GroupSpec s(m);
    EXPECT_EQ(io::parse_spec(io::format_spec(s)), s);
  }
}

TEST(Elements, ParseAndFormat) {
  GroupSpec g{4, 0};
  EXPECT_EQ(io::parse_element(g, "[5, -3]"), (GroupElement{1, -3}));
  EXPECT_EQ(io::format_element(GroupElement{1, -3}), "[1,-3]");
  EXPECT_THROW(io::parse_element(g, "[1]"), std::invalid_argument);
}

// ---------------------------------------------------------------------------
// JSON and CSV

TEST(Json, MapRoundTrip) {
  auto f = centered_unwrap(7, 11);
  auto j = io::map_json(f);
  EXPECT_EQ(j["domain"], "[7]");
  EXPECT_EQ(j["recipe"], "unwrap");
  auto back = io::map_from_json(json::parse(j.dump()));
  EXPECT_EQ(back.table(), f.table());
  EXPECT_EQ(back.domain(), f.domain());
}

TEST(Json, SetRoundTrip) {
  auto s = ElementSet::from_elements(GroupSpec{4, 0}, {GroupElement{1, 2}, GroupElement{3, -9}});
  EXPECT_EQ(io::set_from_json(io::set_json(s)), s);
}

TEST(Json, AgreementUsesExactStrings) {
  auto j = io::agreement_json(agreement_probability(binary_embedding(2, 5)));
  EXPECT_EQ(j["good_pairs"], 9);
  EXPECT_EQ(j["total_pairs"], 16);
  EXPECT_EQ(j["total"], 16);
  EXPECT_EQ(j["probability"], "9/16");
  EXPECT_DOUBLE_EQ(j["as_float"].get<double>(), 0.5625);
}

TEST(Json, HugeIntegersBecomeStrings) {
  EXPECT_EQ(io::integer_json(BigInt(1) << 70), json("1180591620717411303424"));
  EXPECT_EQ(io::integer_json(BigInt(-5)), json(-5));
}

TEST(Csv, QuotingFollowsRfc4180) {
  EXPECT_EQ(io::csv_field("plain"), "plain");
  EXPECT_EQ(io::csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(io::csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
  EXPECT_EQ(io::csv_field("two\nlines"), "\"two\nlines\"");
  EXPECT_EQ(io::emit_csv({"x", "f(x)"}, {{"[0,1]", "[3]"}}), "x,f(x)\r\n\"[0,1]\",[3]\r\n");
}

// ---------------------------------------------------------------------------
// Commands

TEST(Cli, ProbBinary) {
  auto j = run_json({"prob", "--construct", "binary", "--n", "2", "--p", "5"});
  EXPECT_EQ(j["good_pairs"], 9);
  EXPECT_EQ(j["total"], 16);
  EXPECT_EQ(j["probability"], "9/16");
}

TEST(Cli, ProbUnwrapDefaultsQToNextPrime) {
  auto j = run_json({"prob", "--construct", "unwrap", "--p", "7"});
  EXPECT_EQ(j["codomain"], "[11]");
  EXPECT_EQ(j["good_pairs"], 37);
}

TEST(Cli, ConstructThenProbFromFile) {
  auto path = temp_path("map.json");
  auto r = run_cli({"--output", path, "construct", "--construct", "binary", "--n", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  auto j = run_json({"prob", "--map", path});
  EXPECT_EQ(j["good_pairs"], 27);
  EXPECT_EQ(j["probability"], "27/64");
  std::filesystem::remove(path);
}

TEST(Cli, Counterexample) {
  auto j = run_json({"counterexample", "--d", "2"});
  EXPECT_EQ(j["size_A"], 20);
  EXPECT_EQ(j["size_2A"], 8);
  EXPECT_EQ(j["size_A_plus_B"], 32);
  EXPECT_EQ(j["size_2A_plus_2B"], 20);
}

TEST(Cli, Bound) {
  auto j = run_json({"bound", "--G", "[2^4]", "--H", "[17]", "--r", "2"});
  EXPECT_EQ(j["base"], "1/16");
  EXPECT_EQ(j["alpha"], "1/11");
  EXPECT_EQ(j["side_used"], "domain_dilation");
  auto a = run_json({"bound", "--G", "[2^4]", "--H", "[17]", "--r", "auto"});
  EXPECT_EQ(a["r"], 2);
}

TEST(Cli, SearchWritesCsvTable) {
  auto path = temp_path("table.csv");
  auto j = run_json({"search", "--G", "[2,2]", "--H", "[5]", "--r-max", "3", "--csv", path});
  EXPECT_EQ(j["best_probability"], "9/16");
  EXPECT_EQ(j["bound_context"].size(), 3u);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "r,alpha,base,base^alpha,side_used,observed,observed_decimal\r");
  std::filesystem::remove(path);
}

TEST(Cli, FuzzSummaryAndDeterminism) {
  std::vector<std::string> args{"fuzz", "--checker", "bukh", "--trials", "40", "--seed", "3"};
  auto a = run_cli(args);
  ASSERT_EQ(a.code, 0) << a.err;
  auto with_threads = args;
  with_threads.insert(with_threads.begin(), {"--threads", "3"});
  auto b = run_cli(with_threads);
  EXPECT_EQ(a.out, b.out);
  std::istringstream lines(a.out);
  std::string line, last;
  int count = 0;
  while (std::getline(lines, line)) last = line, ++count;
  EXPECT_EQ(count, 41);
  auto summary = json::parse(last)["summary"];
  EXPECT_EQ(summary["trials"], 40);
  EXPECT_EQ(summary["violating_trials"], 0);
}

TEST(Cli, LocalSearchIsByteIdentical) {
  std::vector<std::string> args{"search", "--G", "[2^3]", "--H", "[11]", "--method", "local", "--iterations", "3000",
                                "--seed", "4"};
  EXPECT_EQ(run_cli(args).out, run_cli(args).out);
}

TEST(Cli, CsvFormat) {
  auto r = run_cli({"--format", "csv", "prob", "--construct", "binary", "--n", "2"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find("\r\n")), "good_pairs,total_pairs,total,probability,as_float,domain,codomain,recipe");
  EXPECT_NE(r.out.find("9/16"), std::string::npos);
}

TEST(Cli, GlobalFlagsAfterSubcommand) {
  auto before = run_cli({"--format", "csv", "bound", "--G", "[2^4]", "--H", "[17]", "--r", "2"});
  auto after = run_cli({"bound", "--G", "[2^4]", "--H", "[17]", "--r", "2", "--format", "csv"});
  ASSERT_EQ(after.code, 0) << after.err;
  EXPECT_EQ(before.out, after.out);
}

TEST(Cli, UsageErrorsExitOne) {
  auto bad_spec = run_cli({"bound", "--G", "[1]", "--H", "[3]"});
  EXPECT_EQ(bad_spec.code, 1);
  EXPECT_NE(bad_spec.err.find("--G"), std::string::npos);
  EXPECT_EQ(run_cli({}).code, 1);
  EXPECT_EQ(run_cli({"frobnicate"}).code, 1);
  EXPECT_EQ(run_cli({"prob", "--construct", "binary", "--n", "3", "--p", "7"}).code, 1);
  EXPECT_EQ(run_cli({"bound", "--G", "[2]", "--H", "[3]", "--r", "zero"}).code, 1);
  EXPECT_EQ(run_cli({"fuzz", "--checker", "nope"}).code, 1);
  EXPECT_EQ(run_cli({"counterexample", "--d", "99"}).code, 1);
  auto big = run_cli({"search", "--G", "[2^4]", "--H", "[97]"});
  EXPECT_EQ(big.code, 1);
  EXPECT_NE(big.err.find("too large"), std::string::npos);
}

#ifdef APXHOM_CLI_PATH
TEST(Cli, BinaryMatchesInProcessRun) {
  auto path = temp_path("cli_out.json");
  std::string cmd = std::string(APXHOM_CLI_PATH) + " counterexample --d 3 > " + path;
  ASSERT_EQ(std::system(cmd.c_str()), 0);
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  EXPECT_EQ(buf.str(), run_cli({"counterexample", "--d", "3"}).out);
  std::filesystem::remove(path);
}
#endif
