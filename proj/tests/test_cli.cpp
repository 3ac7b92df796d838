#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "genram/cli.hpp"
#include "genram/oracle.hpp"
#include "genram/ramsum.hpp"
#include "genram/spec_file.hpp"
#include "support/fixtures.hpp"

namespace genram {
namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "genram");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string spec_path(const std::string& name) { return std::string(GENRAM_SPEC_DIR) + "/" + name; }

std::filesystem::path scratch(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("genram_test_" + name);
}

TEST(Cli, EvalExamples) {
  EXPECT_EQ(run({"eval", "--what", "C", "--a1", "D", "--a2", "D", "-m", "2", "-n", "4"}).out, "-2\n");
  EXPECT_EQ(run({"eval", "--what", "C", "--a1", "D", "--a2", "U", "-m", "4", "-n", "4"}).out, "3\n");
  EXPECT_EQ(run({"eval", "--what", "gcd", "--a1", "U", "--a2", "U", "-m", "12", "-n", "18"}).out, "1\n");
  EXPECT_EQ(run({"eval", "--what", "phiA", "--a2", "U", "-n", "12"}).out, "6\n");
  EXPECT_EQ(run({"eval", "--what", "muA", "--a2", "D", "-n", "4"}).out, "0\n");
  EXPECT_EQ(run({"eval", "--what", "Phi", "--a2", "U", "-m", "2", "-n", "4"}).out, "-1\n");
  const auto s = run({"eval", "--what", "S", "-m", "1", "-n", "1"});
  EXPECT_EQ(s.code, kExitOk);
  EXPECT_EQ(s.out.substr(0, 2), "1+");
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({}).code, kExitUsage);
  EXPECT_EQ(run({"eval", "--what", "C", "-m", "0", "-n", "4"}).code, kExitUsage);
  EXPECT_EQ(run({"eval", "--what", "X", "-m", "1", "-n", "4"}).code, kExitUsage);
  EXPECT_EQ(run({"eval", "--what", "C", "-n", "4"}).code, kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(run({"--help"}).code, kExitOk);

  const auto bad = scratch("bad.spec");
  std::ofstream(bad) << "base U\ntau 2 6 2\n";
  const auto r = run({"eval", "--what", "C", "--a1", bad.string(), "-m", "1", "-n", "1"});
  EXPECT_EQ(r.code, kExitSpecError);
  EXPECT_NE(r.err.find("spec error"), std::string::npos);
  EXPECT_EQ(run({"eval", "--what", "C", "--a1", "/no/such/file", "-m", "1", "-n", "1"}).code, kExitSpecError);
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream cs(line);
    std::string cell;
    while (std::getline(cs, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

TEST(Cli, ClassicalTableMatchesExponentialSums) {
  const auto r = run({"table", "--mmax", "24", "--nmax", "24", "--format", "csv"});
  for (const auto& row : csv_rows(r.out)) {
    const auto m = std::stoull(row[0]), n = std::stoull(row[1]);
    ASSERT_EQ(row[2], oracle::ramanujan_by_exp_sum(testing::D(), m, n).value.str()) << m << ',' << n;
  }
}

TEST(Cli, UnitaryTableMatchesDirectSum) {
  const auto r = run({"table", "--a1", "U", "--a2", "U", "--mmax", "30", "--nmax", "30", "--format", "csv"});
  for (const auto& row : csv_rows(r.out)) {
    const auto m = std::stoull(row[0]), n = std::stoull(row[1]);
    ASSERT_EQ(row[2], oracle::direct_C(testing::U(), testing::U(), m, n).value.str()) << m << ',' << n;
  }
}

TEST(Cli, TableOneByOne) {
  const auto r = run({"table", "--mmax", "1", "--nmax", "1", "--format", "csv"});
  EXPECT_EQ(r.out, "m,n,value\n1,1,1\n");
}

TEST(Cli, TableJsonRoundTrip) {
  const auto r = run({"table", "--what", "C", "--a1", "U", "--a2", "U", "--mmax", "20", "--nmax", "20", "--format",
                      "json"});
  ASSERT_EQ(r.code, kExitOk);
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["schema"], 1);
  EXPECT_EQ(doc["cells"].size(), 400U);
  for (const auto& cell : doc["cells"]) {
    const auto m = cell["m"].get<std::uint64_t>(), n = cell["n"].get<std::uint64_t>();
    ASSERT_EQ(ExactInt(cell["value"].get<long long>()), ramanujan_C(testing::U(), testing::U(), m, n));
  }
}

TEST(Cli, PhiTableMatchesLibrary) {
  const auto r = run({"table", "--what", "Phi", "--a1", "U", "--a2", "D", "--mmax", "8", "--nmax", "8", "--format",
                      "json"});
  const auto doc = nlohmann::json::parse(r.out);
  for (const auto& cell : doc["cells"]) {
    const auto expected = von_sterneck_Phi(testing::U(), testing::D(), cell["m"], cell["n"]);
    const auto text = cell["value"].is_string() ? cell["value"].get<std::string>() : cell["value"].dump();
    ASSERT_EQ(text, to_string(expected));
  }
}

TEST(Cli, TableToFile) {
  const auto path = scratch("table.csv");
  ASSERT_EQ(run({"table", "--mmax", "3", "--nmax", "3", "--format", "csv", "--out", path.string()}).code, kExitOk);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "m,n,value");
}

TEST(Cli, VerifyExamples) {
  EXPECT_EQ(run({"verify", "holder", "--a1", "D", "--a2", "U", "--max", "200"}).code, kExitOk);
  const auto fail = run({"verify", "holder", "--a1", "U", "--a2", "D", "--max", "10"});
  EXPECT_EQ(fail.code, kExitFail);
  EXPECT_NE(fail.out.find("witness m="), std::string::npos);
  const auto ortho = run({"verify", "orthogonality", "--a1", spec_path("ortho_a1.spec"), "--a2",
                          spec_path("ortho_a2.spec"), "--max", "64", "--format", "json"});
  EXPECT_EQ(ortho.code, kExitFail);
  const auto doc = nlohmann::json::parse(ortho.out);
  EXPECT_EQ(doc["status"], "FAIL");
  EXPECT_NE(doc["counterexample"].get<std::string>().find("entry=-72"), std::string::npos);
  EXPECT_EQ(doc["order"]["status"], "INCOMPARABLE_OR_GT");
}

TEST(Cli, VerifySeedFlag) {
  const auto a = run({"verify", "abs-bound", "--a2", "U", "--max", "100000", "--samples", "50", "--seed", "9"});
  const auto b = run({"verify", "abs-bound", "--a2", "U", "--max", "100000", "--samples", "50", "--seed", "9"});
  EXPECT_EQ(a.code, kExitOk);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("seed 9"), std::string::npos);
}

TEST(Cli, ExpandExamples) {
  const auto r = run({"expand", "--a", "D", "--s", "1", "--k", "1", "-n", "2", "--qmax", "100000", "--format", "json"});
  ASSERT_EQ(r.code, kExitOk);
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["target"], "3/2");
  EXPECT_LE(doc["residual"].get<double>(), 1e-3);

  const auto mixed = run({"expand", "--a", spec_path("mixed_2u_3d.spec"), "--s", "1", "--k", "1", "-n", "4", "--qmax",
                          "100000", "--format", "json"});
  const auto m = nlohmann::json::parse(mixed.out);
  EXPECT_EQ(m["target"], "5/4");
  EXPECT_LE(m["residual"].get<double>(), 1e-3);

  const auto two = run({"expand", "--a", "D", "--k", "2", "-n", "4", "-n", "6", "--qmax", "3000", "--format", "json"});
  EXPECT_EQ(nlohmann::json::parse(two.out)["target"], "3/2");
  EXPECT_EQ(run({"expand", "--k", "2", "-n", "4"}).code, kExitUsage);
  EXPECT_EQ(run({"expand", "--s", "-1", "-n", "4"}).code, kExitUsage);
}

TEST(Cli, ExpandCoefficientExport) {
  const auto csv = scratch("coeffs.csv");
  const auto json_path = scratch("coeffs.json");
  ASSERT_EQ(run({"expand", "-n", "3", "--qmax", "30", "--coeffs-out", csv.string()}).code, kExitOk);
  ASSERT_EQ(run({"expand", "--kind", "phi", "-n", "3", "--qmax", "30", "--coeffs-out", json_path.string()}).code,
            kExitOk);
  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "q1,coefficient,tail_estimate");
  std::ifstream jin(json_path);
  const auto doc = nlohmann::json::parse(jin);
  EXPECT_EQ(doc["kind"], "phi");
  EXPECT_EQ(doc["schema"], 1);
}

TEST(Cli, ExpandGcdFormMethod) {
  const auto r = run({"expand", "--a", "U", "--method", "gcd-form", "-n", "6", "--qmax", "50", "--inner", "5000",
                      "--format", "json"});
  ASSERT_EQ(r.code, kExitOk);
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["target"], "2");
}

TEST(Cli, Lattice) {
  EXPECT_EQ(run({"lattice", "compare", "--a1", "U", "--a2", "D"}).out.substr(0, 7), "U <= D\n");
  const auto join = run({"lattice", "join", "--a1", "D", "--a2", "U"});
  EXPECT_EQ(parse_spec_string(join.out).base(), BaseRule::Complete);
  const auto path = scratch("meet.spec");
  const auto a = scratch("a.spec"), b = scratch("b.spec");
  std::ofstream(a) << format_spec(testing::mixed_spec(51));
  std::ofstream(b) << format_spec(testing::mixed_spec(52));
  ASSERT_EQ(run({"lattice", "meet", "--a1", a.string(), "--a2", b.string(), "--out", path.string()}).code, kExitOk);
  EXPECT_NO_THROW(load_spec(path.string()));
}

}  // namespace
}  // namespace genram
