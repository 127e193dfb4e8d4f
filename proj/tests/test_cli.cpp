#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "gbessel/cli.hpp"
#include "gbessel/errors.hpp"

using namespace gbessel;
using nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
  json report() const { return json::parse(out); }
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "gbessel");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("number parsing is exact") {
  CHECK(cli::parse_number("7/2", "--k").exact == Rational(7, 2));
  CHECK(cli::parse_number("3.5", "--k").exact == Rational(7, 2));
  CHECK(cli::parse_number("-0.25", "--k").exact == Rational(-1, 4));
  CHECK(cli::parse_number("1e-3", "--k").exact == Rational(1, 1000));
  CHECK(cli::parse_number("-6/4", "--k").exact == Rational(-3, 2));
  CHECK(cli::parse_number("0.1", "--k").value == 0.1);
  CHECK(cli::parse_number("007.50", "--k").exact == Rational(15, 2));
  CHECK(cli::parse_number("010/08", "--k").exact == Rational(5, 4));
  CHECK(cli::parse_list("1, -2,3/4", "--mu").size() == 3);
  CHECK_THROWS_WITH_AS(cli::parse_number("abc", "--k"), doctest::Contains("--k"), InvalidInput);
  CHECK_THROWS_AS(cli::parse_number("1/0", "--k"), InvalidInput);
  CHECK_THROWS_AS(cli::parse_number("nan", "--k"), InvalidInput);
  CHECK_THROWS_AS(cli::parse_list("1,,2", "--mu"), InvalidInput);
  CHECK_THROWS_AS(cli::parse_list("1,2,", "--mu"), InvalidInput);
}

TEST_CASE("bessel-eval examples") {
  const Outcome a = run({"bessel-eval", "--N", "2", "--k", "1", "--mu", "0.5,-0.5", "--lambda", "1,-1"});
  REQUIRE(a.code == 0);
  const json r = a.report();
  CHECK(r["value"].get<double>() == doctest::Approx(1.1752012).epsilon(1e-7));
  for (const char* key : {"command", "params", "value", "err_estimate", "method", "evaluations",
                          "elapsed_ms", "cases"})
    CHECK(r.contains(key));
  CHECK(r["elapsed_ms"].is_null());
  CHECK(r["params"]["k"] == "1");

  const Outcome b = run({"bessel-eval", "--k", "2", "--mu", "0,0,0", "--lambda", "2,0,-2"});
  REQUIRE(b.code == 0);
  CHECK(b.report()["value"].get<double>() == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(b.report()["method"] == "recursive");
  CHECK(run({"bessel-eval", "--k", "2", "--mu", "0,0,0", "--lambda", "2,0,-2"}).out == b.out);
}

TEST_CASE("oo-verify batch example") {
  const Outcome o = run({"oo-verify", "--N", "3", "--k", "2", "--weight-max", "4", "--cases", "20",
                         "--seed", "7"});
  CHECK(o.code == 0);
  const json r = o.report();
  REQUIRE(r["cases"].size() == 20);
  for (const auto& c : r["cases"]) {
    CHECK(c["passed"].get<bool>());
    CHECK(c["rel_error"].get<double>() <= 1e-7);
  }
  const Outcome single = run({"oo-verify", "--k", "1/2", "--mu", "3", "--lambda", "2,-1"});
  CHECK(single.code == 0);
  const Outcome strict = run({"oo-verify", "--k", "2", "--mu", "3,1", "--lambda", "2,1,-1",
                              "--order", "2", "--tol", "1e-14"});
  CHECK(strict.code == 1);
}

TEST_CASE("jack-eval is exact") {
  const Outcome o = run({"jack-eval", "--k", "2", "--mu", "2", "--lambda", "1,1"});
  REQUIRE(o.code == 0);
  CHECK(o.report()["cases"][0]["exact"] == "10/3");
  CHECK(o.report()["params"]["k"] == "2");
  const Outcome decimal = run({"jack-eval", "--k", "3.5", "--mu", "2,1", "--lambda", "1/2,1/3,1"});
  REQUIRE(decimal.code == 0);
  CHECK(decimal.report()["params"]["k"] == "7/2");
}

TEST_CASE("table") {
  const Outcome t = run({"table", "--k", "1", "--mu", "0,0", "--lambda", "1,-1", "--from", "0",
                         "--to", "2", "--steps", "11"});
  REQUIRE(t.code == 0);
  const json rows = t.report()["cases"];
  REQUIRE(rows.size() == 11);
  CHECK(rows[0]["value"].get<double>() == doctest::Approx(1.0));
  for (std::size_t i = 1; i < rows.size(); ++i)
    CHECK(rows[i]["value"].get<double>() > rows[i - 1]["value"].get<double>());

  const Outcome one = run({"table", "--mu", "0,0,0", "--lambda", "1,0,-1", "--steps", "1"});
  REQUIRE(one.code == 0);
  REQUIRE(one.report()["cases"].size() == 1);
  CHECK(one.report()["cases"][0]["value"].get<double>() == doctest::Approx(1.0).epsilon(1e-10));

  const Outcome degenerate = run({"table", "--mu", "0,0,0", "--lambda", "1,1,-2", "--steps", "3"});
  CHECK(degenerate.code == 2);
  CHECK(degenerate.err.find("--lambda") != std::string::npos);

  const Outcome leaving = run({"table", "--mu", "0.2,0,-0.2", "--lambda", "1,0,-1", "--from", "0",
                               "--to", "-1", "--steps", "3"});
  REQUIRE(leaving.code == 0);
  CHECK(leaving.report()["cases"][0]["in_chamber"].get<bool>());
  CHECK_FALSE(leaving.report()["cases"][2]["in_chamber"].get<bool>());
}

TEST_CASE("density-eval") {
  const Outcome a1 = run({"density-eval", "--lambda", "1.5,-1.5", "--z", "0.3"});
  REQUIRE(a1.code == 0);
  CHECK(a1.report()["value"].get<double>() == doctest::Approx(1.0 / 3.0));
  const Outcome a2 = run({"density-eval", "--k", "2", "--lambda", "2,0,-2", "--z", "0.5,-0.2"});
  const Outcome rec = run({"density-eval", "--k", "2", "--lambda", "2,0,-2", "--z", "0.5,-0.2,-0.3",
                           "--method", "recursive"});
  REQUIRE(a2.code == 0);
  REQUIRE(rec.code == 0);
  CHECK(rec.report()["value"].get<double>() ==
        doctest::Approx(a2.report()["value"].get<double>()).epsilon(1e-9));
  CHECK(run({"density-eval", "--lambda", "2,0,-2", "--z", "3,-2"}).report()["value"] == 0.0);
}

TEST_CASE("invalid input exits with 2 and names the flag") {
  const Outcome bad = run({"bessel-eval", "--mu", "1,x", "--lambda", "1,-1"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("--mu") != std::string::npos);
  const Outcome k = run({"bessel-eval", "--k", "-1", "--mu", "0,0", "--lambda", "1,-1"});
  CHECK(k.code == 2);
  CHECK(k.err.find("--k") != std::string::npos);
  CHECK(run({"bessel-eval", "--mu", "1,0", "--lambda", "1,-1"}).code == 2);
  CHECK(run({"bessel-eval", "--N", "3", "--mu", "0,0", "--lambda", "1,-1"}).code == 2);
  CHECK(run({"bessel-eval", "--mu", "0,0", "--lambda", "1,-1", "--order", "x"}).code == 2);
  CHECK(run({"bessel-eval", "--mu", "0,0", "--lambda", "1,-1", "--method", "fast"}).code == 2);
  CHECK(run({"bessel-eval", "--mu", "0,0", "--lambda", "1,-1", "--format", "xml"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"jack-eval", "--mu", "1,2", "--lambda", "1,1"}).code == 2);
}

TEST_CASE("projection warns about the dropped component") {
  const Outcome p = run({"bessel-eval", "--mu", "1,0", "--lambda", "1,-1", "--project"});
  CHECK(p.code == 0);
  CHECK(p.err.find("e-component") != std::string::npos);
  CHECK(p.err.find("--mu") != std::string::npos);
}

TEST_CASE("csv output, timing and --out") {
  const Outcome csv = run({"bessel-eval", "--mu", "0.5,-0.5", "--lambda", "1,-1", "--format", "csv"});
  REQUIRE(csv.code == 0);
  CHECK(csv.out.rfind("command,value,err_estimate,method,evaluations,elapsed_ms\n", 0) == 0);
  CHECK(csv.out.find("bessel-eval,") != std::string::npos);

  const Outcome timed = run({"bessel-eval", "--mu", "0.5,-0.5", "--lambda", "1,-1", "--timing"});
  CHECK(timed.report()["elapsed_ms"].is_number());

  const std::string path = "test_cli_out.json";
  const Outcome file = run({"bessel-eval", "--mu", "0.5,-0.5", "--lambda", "1,-1", "--out", path});
  CHECK(file.code == 0);
  CHECK(file.out.empty());
  std::ifstream in(path);
  CHECK(json::parse(in)["value"].get<double>() == doctest::Approx(1.1752012).epsilon(1e-7));
  std::remove(path.c_str());
}
