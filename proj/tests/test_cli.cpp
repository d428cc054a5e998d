#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "hurwitz/cli.hpp"

using namespace hurwitz;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path fresh_dir(const std::string& name) {
  const auto d = fs::temp_directory_path() / "hurwitz-cli-tests" / name;
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

}  // namespace

TEST(Construct, Ell) {
  const auto r = run({"construct", "ell", "--degree", "4"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "[1 2 8 2 3]\n");
  const auto j = run({"construct", "ell", "--degree", "4", "--emit", "json"});
  EXPECT_EQ(j.code, 0);
  const auto parsed = nlohmann::json::parse(j.out);
  EXPECT_EQ(parsed.at("poly"), "[1 2 8 2 3]");
  EXPECT_EQ(parsed.at("verdict"), "stable");
}

TEST(Construct, DoubleUndoubleAfamily) {
  EXPECT_EQ(run({"construct", "double", "--poly", "[1 1 4 3 2 1]", "--times", "2"}).out,
            "[1 1 19 16 141 98 540 303 1179 523 1525 523 1179 303 540 98 141 16 19 1 1]\n");
  EXPECT_EQ(run({"construct", "undouble", "--poly", "1,2,1"}).out, "[1 2]\n");
  EXPECT_EQ(run({"construct", "afamily", "--n", "2"}).out, "[1 1 3 1 1]\n");
  const auto j = nlohmann::json::parse(run({"construct", "afamily", "--n", "5", "--emit", "json"}).out);
  EXPECT_EQ(j.at("stage_sums").back(), "1242471");

  const auto bad = run({"construct", "undouble", "--poly", "[1 2 3]"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.err.find("not symmetric"), std::string::npos);
}

TEST(Test, JsonVerdict) {
  const auto r = run({"test", "--poly", "[1 2 5 7 7 6 2 1]"});
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("verdict"), "stable");
  EXPECT_NEAR(j.at("abscissa").get<double>(), -0.0175, 5e-4);
  EXPECT_EQ(j.at("rhp_zeros"), 0);

  const auto roots = nlohmann::json::parse(run({"test", "--poly", "[1 3]", "--roots"}).out);
  ASSERT_EQ(roots.at("zeros").size(), 1U);
  EXPECT_DOUBLE_EQ(roots.at("zeros")[0][0].get<double>(), -3.0);

  const auto boundary = nlohmann::json::parse(run({"test", "--poly", "[1 1 1 1]"}).out);
  EXPECT_EQ(boundary.at("verdict"), "boundary");

  const auto dec = nlohmann::json::parse(run({"test", "--poly", "[1 0.5 0.25]"}).out);
  EXPECT_EQ(dec.at("verdict"), "stable");

  const auto table = run({"test", "--poly", "[1 1 2 1]", "--emit", "table"});
  EXPECT_NE(table.out.find("verdict:   stable"), std::string::npos);
}

TEST(Search, PublishedWitnesses) {
  const auto r = run({"search", "--kind", "c", "--degree", "3", "--cap", "2"});
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("optimum"), 2);
  EXPECT_EQ(j.at("witnesses").size(), 5U);
  const auto s = nlohmann::json::parse(run({"search", "--kind", "sigma", "--degree", "4", "--cap", "7"}).out);
  EXPECT_EQ(s.at("optimum"), 7);
  EXPECT_EQ(s.at("witnesses")[0].at("poly"), "[1 1 3 1 1]");
  const auto t = run({"search", "--kind", "c", "--degree", "2", "--cap", "3", "--emit", "table", "--threads", "2"});
  EXPECT_NE(t.out.find("optimum:    1"), std::string::npos);
}

TEST(Search, CapExhaustedAndBudget) {
  const auto cap = nlohmann::json::parse(run({"search", "--kind", "c", "--degree", "4", "--cap", "2"}).out);
  EXPECT_TRUE(cap.at("cap_exhausted").get<bool>());
  EXPECT_TRUE(cap.at("optimum").is_null());

  const auto b = run({"search", "--kind", "c", "--degree", "7", "--cap", "7", "--budget", "100", "--emit", "json"});
  EXPECT_EQ(b.code, 1);
  const auto e = nlohmann::json::parse(b.err);
  EXPECT_EQ(e.at("kind"), "computation");
  EXPECT_NE(e.at("error").get<std::string>().find("budget exceeded"), std::string::npos);
}

TEST(Search, CheckpointWritesManifestAlongside) {
  const auto dir = fresh_dir("ckpt");
  const auto ck = (dir / "n5.json").string();
  const auto r = run({"search", "--kind", "c", "--degree", "5", "--cap", "4", "--checkpoint", ck});
  ASSERT_EQ(r.code, 0) << r.err;
  ASSERT_TRUE(fs::exists(ck));
  int manifests = 0;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.path().filename().string().rfind("manifest-search-", 0) != 0) continue;
    ++manifests;
    std::ifstream in(e.path());
    const auto m = nlohmann::json::parse(in);
    EXPECT_EQ(m.at("subcommand"), "search");
    EXPECT_EQ(m.at("tool_version"), cli::kToolVersion);
    EXPECT_EQ(m.at("parameters").at("--degree"), "5");
    EXPECT_EQ(m.at("outputs").at(0), ck);
  }
  EXPECT_EQ(manifests, 1);
  // resuming gives the same answer and a second manifest; the first is untouched
  const auto again = run({"search", "--kind", "c", "--degree", "5", "--cap", "4", "--checkpoint", ck});
  EXPECT_EQ(nlohmann::json::parse(again.out).at("witnesses"), nlohmann::json::parse(r.out).at("witnesses"));
  manifests = 0;
  for (const auto& e : fs::directory_iterator(dir)) manifests += e.path().filename().string().rfind("manifest-", 0) == 0;
  EXPECT_EQ(manifests, 2);

  const auto clash = run({"search", "--kind", "sigma", "--degree", "5", "--cap", "12", "--checkpoint", ck});
  EXPECT_EQ(clash.code, 1);
}

TEST(Manifest, ExplicitDirectoryAndExclusiveNames) {
  const auto dir = fresh_dir("manifest");
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(run({"--manifest-dir", dir.string(), "construct", "ell", "--degree", "3"}).code, 0);
  }
  std::set<std::string> names;
  for (const auto& e : fs::directory_iterator(dir)) names.insert(e.path().filename().string());
  EXPECT_EQ(names.size(), 3U);
  cli::RunManifest m;
  m.subcommand = "unit";
  const auto p1 = cli::write_manifest(dir, m);
  const auto p2 = cli::write_manifest(dir, m);
  EXPECT_NE(p1, p2);
}

TEST(Bounds, TableAndJson) {
  const auto t = run({"bounds"});
  ASSERT_EQ(t.code, 0);
  EXPECT_NE(t.out.find("1.5417"), std::string::npos);
  EXPECT_NE(t.out.find("1.5340"), std::string::npos);
  const auto j = run({"bounds", "--emit", "json", "--poly", "[1 1 3 1 1]", "--vmax", "6"});
  ASSERT_EQ(j.code, 0);
  const auto parsed = nlohmann::json::parse(j.out);
  EXPECT_FALSE(parsed.empty());
  const auto bad = run({"bounds", "--poly", "[1 1 2 1]", "--emit", "json"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_TRUE(nlohmann::json::accept(bad.err));
}

TEST(Asymptotics, JsonAndFigureCsv) {
  const auto j = run({"asymptotics", "--k", "3", "--grid", "2000"});
  ASSERT_EQ(j.code, 0) << j.err;
  const auto parsed = nlohmann::json::parse(j.out);
  EXPECT_FALSE(parsed.empty());
  EXPECT_NE(j.out.find("8771/2389"), std::string::npos);

  const auto csv = run({"asymptotics", "--figure5", "--grid", "11"});
  ASSERT_EQ(csv.code, 0);
  const auto rows = lines(csv.out);
  ASSERT_EQ(rows.size(), 12U);
  EXPECT_EQ(rows[0], "x,f_over_sigma,gaussian");

  EXPECT_EQ(run({"asymptotics", "--poly", "[1 2 3]"}).code, 1);
}

TEST(Zeros, CsvToStdoutAndFile) {
  const auto r = run({"zeros", "--poly", "[1 3]"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(lines(r.out).at(0), "re,im");
  EXPECT_EQ(lines(r.out).size(), 2U);
  EXPECT_EQ(std::stod(lines(r.out)[1].substr(0, lines(r.out)[1].find(','))), -3.0);

  const auto dir = fresh_dir("zeros");
  const auto file = (dir / "z.csv").string();
  EXPECT_EQ(run({"zeros", "--poly", "[1 2 5 7 7 6 2 1]", "--csv", file}).code, 0);
  std::ifstream in(file);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "re,im");
  int n = 0;
  for (std::string l; std::getline(in, l);) ++n;
  EXPECT_EQ(n, 7);
}

TEST(Reproduce, ListAndTables) {
  const auto list = lines(run({"reproduce", "list"}).out);
  EXPECT_EQ(list, cli::reproduce_ids());
  for (const char* id : {"ell-table", "afamily", "optimal-N4", "beta-table", "kfold-table"}) {
    const auto r = run({"reproduce", id});
    EXPECT_EQ(r.code, 0) << id << r.err;
    EXPECT_NE(r.out.find(std::string(id) + ": pass"), std::string::npos);
  }
  const auto fig = run({"reproduce", "figure4-data"});
  EXPECT_EQ(fig.code, 0);
  EXPECT_EQ(lines(fig.out).at(0), "series,re,im");
}

TEST(Reproduce, UnknownIdIsUsageError) {
  EXPECT_EQ(run({"reproduce", "nonsense"}).code, 2);
  const auto j = run({"reproduce", "nonsense", "--emit", "json"});
  EXPECT_EQ(j.code, 2);
}

TEST(Usage, ExitCodesAndJsonErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"construct", "ell"}).code, 2);
  EXPECT_EQ(run({"search", "--kind", "x", "--degree", "3", "--cap", "2"}).code, 2);
  const auto badpoly = run({"test", "--poly", "[1 x]", "--emit", "json"});
  EXPECT_EQ(badpoly.code, 2);
  const auto e = nlohmann::json::parse(badpoly.err);
  EXPECT_EQ(e.at("kind"), "usage");
  const auto parse = run({"test", "--emit", "json"});
  EXPECT_EQ(parse.code, 2);
  EXPECT_TRUE(nlohmann::json::accept(parse.err));
  const auto constant = run({"test", "--poly", "[5]", "--emit", "json"});
  EXPECT_EQ(constant.code, 1);
  EXPECT_EQ(nlohmann::json::parse(constant.err).at("error"), "constant polynomial");
  EXPECT_EQ(run({"--version"}).code, 0);
  EXPECT_EQ(run({"--version"}).out, std::string(cli::kToolVersion) + "\n");
}

TEST(Output, LocaleIndependent) {
  std::locale::global(std::locale(""));
  const auto r = run({"test", "--poly", "[1 2 5 7 7 6 2 1]", "--emit", "table"});
  std::locale::global(std::locale::classic());
  EXPECT_NE(r.out.find("abscissa:  -0.01"), std::string::npos);
}
