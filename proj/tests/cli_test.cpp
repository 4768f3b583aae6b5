#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "eqc_cli.hpp"
#include "test_support.hpp"

using namespace eqc;
using nlohmann::ordered_json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args)
{
  args.insert(args.begin(), "eqc");
  std::vector<const char*> argv;
  for (const auto& a : args)
    argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s)
{
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);)
    out.push_back(l);
  return out;
}

std::vector<std::string> keys(const ordered_json& j)
{
  std::vector<std::string> out;
  for (const auto& [k, v] : j.items())
    out.push_back(k);
  return out;
}

} // namespace

TEST(Cli, Count)
{
  const Outcome r = run({"count", "--p", "2", "--q", "4"});
  EXPECT_EQ(r.code, cli::kExitOk);
  EXPECT_EQ(lines(r.out), (std::vector<std::string>{"c1=7", "c2=3", "c3=1", "D=11"}));
}

TEST(Cli, Nu)
{
  const Outcome r = run({"nu", "--p", "3", "--q", "3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "23/27\n");
}

TEST(Cli, ClassifyExamples)
{
  const Outcome s = run({"classify", "--field", "3^1", "--poly", "x^9+x^5+x"});
  EXPECT_EQ(s.code, cli::kExitOk);
  EXPECT_EQ(s.out, "S k=2 u=2 s=1 eps=0 m=2 w=0\n");
  const Outcome none = run({"classify", "--field", "2^1", "--poly", "x^4"});
  EXPECT_EQ(none.code, cli::kExitNo);
  EXPECT_EQ(none.out, "no 2-collision\n");
  const Outcome f = run({"classify", "--field", "2^1", "--poly", "x^4+x^2"});
  EXPECT_EQ(f.code, cli::kExitOk);
  EXPECT_EQ(f.out.substr(0, 1), "F");
}

TEST(Cli, UsageErrorsNameTheFlag)
{
  const std::vector<std::pair<std::vector<std::string>, std::string>> cases = {
      {{"classify", "--field", "4^1", "--poly", "x^4"}, "--field"},
      {{"classify", "--field", "2^1", "--poly", "x^4+1"}, "--poly"},
      {{"classify", "--field", "2^1", "--poly", "x^^4"}, "--poly"},
      {{"classify", "--field", "2^1"}, "--poly"},
      {{"count", "--p", "2"}, "--q"},
      {{"count", "--p", "2", "--q", "6"}, "--q"},
      {{"construct", "S", "--field", "3^1", "--u", "0", "--s", "1", "--m", "2"}, "--u"},
      {{"construct", "M", "--field", "5^1", "--a", "2", "--b", "1", "--m", "7"}, "--m"},
      {{"identify", "--field", "3^1", "--poly", "x^9+x^5+x", "--r", "4"}, "--r"},
      {{"census", "--p", "7", "--q", "7"}, "--p/--q"},
  };
  for (const auto& [args, flag] : cases) {
    const Outcome r = run(args);
    EXPECT_EQ(r.code, cli::kExitUsage) << args[0] << " " << flag;
    EXPECT_NE(r.err.find(flag), std::string::npos) << r.err;
  }
  EXPECT_EQ(run({"frobnicate"}).code, cli::kExitUsage);
  EXPECT_EQ(run({}).code, cli::kExitUsage);
}

TEST(Cli, ConstructRoundTripsThroughClassifyAndDecompose)
{
  // First eps = 1 tuple over F_9 with at least two decompositions.
  auto F9 = Field::create(3, 2);
  std::string u, s;
  for (code_t a = 1; a < 9 && u.empty(); ++a)
    for (code_t b = 1; b < 9 && u.empty(); ++b)
      if (root_set_T({F9, F9->elem(a), F9->elem(b), 1, 2, 3}).size() >= 2) {
        u = F9->elem(a).to_string();
        s = F9->elem(b).to_string();
      }
  ASSERT_FALSE(u.empty());
  const Outcome c = run({"construct", "S", "--field", "3^2", "--u", u, "--s", s, "--eps", "1", "--m", "2", "--w", "4"});
  ASSERT_EQ(c.code, 0) << c.err;
  const auto ls = lines(c.out);
  ASSERT_GE(ls.size(), 3U);
  const Outcome k = run({"classify", "--field", "3^2", "--poly", ls[0]});
  EXPECT_EQ(k.code, 0);
  EXPECT_EQ(k.out.substr(0, 1), "S");
  const Outcome d = run({"decompose", "--field", "3^2", "--poly", ls[0]});
  EXPECT_EQ(d.code, 0);
  const auto dl = lines(d.out);
  EXPECT_EQ(std::vector<std::string>(dl.begin() + 1, dl.end()), std::vector<std::string>(ls.begin() + 1, ls.end()));

  const Outcome m = run({"construct", "M", "--field", "5^1", "--a", "2", "--b", "1", "--m", "2"});
  ASSERT_EQ(m.code, 0) << m.err;
  EXPECT_EQ(lines(m.out).size(), 3U);
  const Outcome mk = run({"classify", "--field", "5^1", "--poly", lines(m.out)[0]});
  EXPECT_EQ(mk.out.substr(0, 1), "M");
  const Outcome mi = run({"identify", "--field", "5^1", "--poly", lines(m.out)[0], "--r", "5"});
  EXPECT_EQ(mi.code, 0);
  EXPECT_NE(mi.out.find("M a="), std::string::npos);

  const Outcome fr = run({"construct", "frobenius", "--field", "2^2", "--poly", "x^2+x"});
  ASSERT_EQ(fr.code, 0) << fr.err;
  EXPECT_EQ(lines(fr.out).size(), 3U);
}

TEST(Cli, IdentifyFailure)
{
  const Outcome r = run({"identify", "--field", "2^1", "--poly", "x^4"});
  EXPECT_EQ(r.code, cli::kExitNo);
  EXPECT_EQ(r.out, "failure\n");
}

TEST(Cli, DecomposeUnclassified)
{
  // Indecomposable: class line only, exit 2.
  const Outcome r = run({"decompose", "--field", "2^1", "--poly", "x^4+x^2+x"});
  EXPECT_EQ(r.code, cli::kExitNo);
  EXPECT_EQ(lines(r.out), std::vector<std::string>{"no 2-collision"});
  const Outcome one = run({"decompose", "--field", "2^1", "--poly", "x^4"});
  EXPECT_EQ(one.code, cli::kExitOk);
  EXPECT_EQ(lines(one.out), (std::vector<std::string>{"no 2-collision", "x^2 o x^2"}));
}

TEST(Cli, JsonOutputs)
{
  const auto count = ordered_json::parse(run({"--json", "count", "--p", "3", "--q", "3"}).out);
  EXPECT_EQ(keys(count), (std::vector<std::string>{"p", "q", "c", "d_total"}));
  EXPECT_EQ(count["c"]["1"], 57);

  const auto cls = ordered_json::parse(run({"--json", "classify", "--field", "3^1", "--poly", "x^9+x^5+x"}).out);
  EXPECT_EQ(keys(cls), (std::vector<std::string>{"class", "params"}));
  EXPECT_EQ(cls["class"], "S");
  EXPECT_EQ(keys(cls["params"]), (std::vector<std::string>{"k", "u", "s", "eps", "m", "w"}));

  const auto id = ordered_json::parse(run({"--json", "identify", "--field", "5^1", "--poly", "x^25+x^5"}).out);
  EXPECT_EQ(keys(id), (std::vector<std::string>{"simply", "multiply"}));

  const auto con = ordered_json::parse(
      run({"--json", "construct", "S", "--field", "3^1", "--u", "2", "--s", "1", "--m", "2"}).out);
  EXPECT_EQ(keys(con), (std::vector<std::string>{"f", "decompositions"}));
  EXPECT_EQ(con["f"], "x^9+x^5+x");
  EXPECT_EQ(keys(con["decompositions"][0]), (std::vector<std::string>{"g", "h"}));

  const auto dec = ordered_json::parse(run({"--json", "decompose", "--field", "2^1", "--poly", "x^4+x^2"}).out);
  EXPECT_EQ(keys(dec), (std::vector<std::string>{"f", "decompositions", "class", "complete"}));
  EXPECT_EQ(dec["decompositions"].size(), 2U);

  const auto nu = ordered_json::parse(run({"--json", "nu", "--p", "2", "--q", "2"}).out);
  EXPECT_EQ(keys(nu), (std::vector<std::string>{"p", "q", "nu"}));
  EXPECT_EQ(nu["nu"], "3/4");

  const auto ver = ordered_json::parse(run({"--json", "verify", "--p", "2", "--q", "4"}).out);
  EXPECT_EQ(keys(ver), (std::vector<std::string>{"p", "q", "verify", "class_partition"}));
  EXPECT_EQ(ver["verify"], true);
}

TEST(Cli, CensusWritesReport)
{
  const auto path = std::filesystem::temp_directory_path() / "eqc_cli_test_census.json";
  std::filesystem::remove(path);
  const Outcome r = run({"--threads", "2", "census", "--p", "3", "--q", "3", "--out", path.string()});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("verify: PASS"), std::string::npos);
  EXPECT_NE(r.out.find("class partition: PASS"), std::string::npos);
  EXPECT_NE(r.out.find("F=8 S=4 M=0"), std::string::npos);
  std::ifstream in(path);
  ASSERT_TRUE(in);
  const auto j = ordered_json::parse(in);
  EXPECT_EQ(j["decomposable_observed"], 69);
  EXPECT_EQ(j, ordered_json::parse(to_json(run_census(3, 3)).dump()));
  std::filesystem::remove(path);
}
