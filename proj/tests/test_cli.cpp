#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "lieval/cli.hpp"

using namespace lieval;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("reductive data") {
  auto d = cli::parse_datum("GL2");
  CHECK(d.components.size() == 1);
  CHECK(d.center == 1);
  CHECK(cli::predicted_poincare(d, 1) == Poly{1, 1, 0, 1, 1});
  CHECK(cli::predicted_poincare(cli::parse_datum("T2"), 1) == Poly{1, 2, 1});
  CHECK(poly_trim(cli::predicted_poincare(cli::parse_datum("GL3"), 1)) == poly_mul({1, 1}, exterior_poincare({1, 2})));
  CHECK(cli::parse_datum("A1xB2").components.size() == 2);
  CHECK(cli::parse_datum("a1,g2").str() == "A1xG2");
  CHECK_THROWS(cli::parse_datum("Q7"));
}

TEST_CASE("cohomology command") {
  Run a = run({"cohomology", "--type", "A2", "--p", "5"});
  CHECK(a.code == 0);
  CHECK(a.out.find("1 + t^3 + t^5 + t^8") != std::string::npos);
  CHECK(a.out.find("PASS") != std::string::npos);

  Run b = run({"cohomology", "--type", "A1", "--p", "5", "--f", "2"});
  CHECK(b.code == 0);
  CHECK(b.out.find("1 + 2t^3 + t^6") != std::string::npos);

  Run c = run({"cohomology", "--type", "A2", "--p", "3", "--strict"});
  CHECK(c.code == 2);
  CHECK(c.err.find("p > h + 1 = 4") != std::string::npos);

  Run w = run({"cohomology", "--type", "A2", "--p", "3"});
  CHECK(w.err.find("warning") != std::string::npos);

  Run r = run({"cohomology", "--type", "A", "--rank", "1", "--p", "5", "--json"});
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["status"] == "pass");
  CHECK(j["poincare"] == nlohmann::json::array({1, 0, 0, 1}));

  Run csv = run({"cohomology", "--type", "A1", "--p", "5", "--csv"});
  CHECK(csv.out == "degree,weight,dim\n0,0,1\n3,0,1\n");
}

TEST_CASE("predict command") {
  Run a = run({"predict", "--type", "GL2"});
  CHECK(a.code == 0);
  CHECK(a.out.find("1 + t + t^3 + t^4") != std::string::npos);
  Run t = run({"predict", "--center", "2"});
  CHECK(t.out.find("1 + 2t + t^2") != std::string::npos);
  Run f = run({"predict", "--type", "A1", "--f", "2", "--json"});
  CHECK(nlohmann::json::parse(f.out)["poincare"] == nlohmann::json::array({1, 0, 0, 2, 0, 0, 1}));
}

TEST_CASE("verify command") {
  CHECK(run({"verify", "mp", "--n", "2", "--p", "5", "--N", "12", "--trials", "100"}).code == 0);
  CHECK(run({"verify", "kostant", "--type", "B2", "--p", "7"}).code == 0);
  CHECK(run({"verify", "morava", "--n", "2", "--p", "5"}).code == 0);
  CHECK(run({"verify", "hodge", "cup", "cross", "coinvariants", "semidirect", "mod-epsilon", "--type", "A2", "--p", "5"})
            .code == 0);
  CHECK(run({"verify", "weights", "--type", "A2", "--p", "5"}).code == 0);
  // outside the hypothesis: mismatch, or a hypothesis error under --strict
  CHECK(run({"verify", "weights", "--type", "A2", "--p", "2", "--n", "2"}).code == 1);
  Run s = run({"verify", "weights", "--type", "A2", "--p", "2", "--n", "2", "--strict"});
  CHECK(s.code == 2);
  Run m = run({"verify", "mp", "--n", "3", "--p", "3"});
  CHECK(m.code == 2);
  CHECK(m.out.find("p > h + 1 = 4") != std::string::npos);
  CHECK(run({"verify", "morava", "--n", "3", "--p", "3"}).code == 2);
  CHECK(run({"verify", "nonsense", "--type", "A1", "--p", "5"}).code == 2);
}

TEST_CASE("configuration errors") {
  CHECK(run({}).code == 2);
  CHECK(run({"cohomology", "--p", "5"}).code == 2);
  CHECK(run({"cohomology", "--type", "A2"}).code == 2);
  CHECK(run({"cohomology", "--type", "A2", "--p", "6"}).code == 2);
  CHECK(run({"cohomology", "--type", "A2", "--p", "5", "--e", "2"}).code == 2);
  CHECK(run({"cohomology", "--type", "A2", "--p", "5", "--bogus"}).code == 2);
  CHECK(run({"dump", "nothing", "--type", "A1"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("JSON output is byte-identical across runs") {
  std::vector<std::string> args = {"verify", "mp", "kostant", "--type", "A2", "--n", "2", "--p", "5", "--trials", "50",
                                   "--seed", "3", "--json"};
  Run a = run(args), b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  auto j = nlohmann::json::parse(a.out);
  CHECK(j["checks"].size() == 2);
  CHECK(j["checks"][0]["detail"]["reports"][1]["seed"] == 3);
}

TEST_CASE("output file and dumps") {
  std::string path = "lieval_cli_test_out.json";
  Run a = run({"dump", "chevalley", "--type", "A1", "--out", path});
  CHECK(a.code == 0);
  CHECK(a.out.empty());
  std::ifstream f(path);
  auto j = nlohmann::json::parse(f);
  CHECK(j["algebra"] == "A1");
  std::remove(path.c_str());
  Run g = run({"dump", "graded", "--type", "A1", "--p", "5", "--e", "2", "--truncation", "1"});
  CHECK(g.code == 0);
  CHECK(nlohmann::json::parse(g.out)["e"] == 2);
}
