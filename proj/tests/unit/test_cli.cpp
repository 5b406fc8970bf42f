#include <cstdio>
#include <sstream>

#include "doctest.h"

#include "projbar/cli.hpp"

namespace {

const std::string kData = PROJBAR_TEST_DATA;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = projbar::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

const std::string kQuarter = "0 (0, 1/4]\n1 (3/4, 13/16]\n1 (3/4, 15/16]\n";

}  // namespace

TEST_CASE("validate") {
  Outcome ok = run({"validate", kData + "/two_rectangles.scc"});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("ok: 6 generators") != std::string::npos);

  Outcome bad = run({"validate", kData + "/bad_composition.scc"});
  CHECK(bad.code == 1);
  CHECK(bad.out.find("composition nonzero") != std::string::npos);

  Outcome displayed = run({"validate", kData + "/two_rectangles_displayed_matrix.scc"});
  CHECK(displayed.code == 1);
  CHECK(displayed.out.find("2 violation(s)") != std::string::npos);

  CHECK(run({"validate", kData + "/missing.scc"}).code == 2);
  CHECK(run({"validate"}).code == 2);
  CHECK(run({}).code == 2);
}

TEST_CASE("query") {
  CHECK(run({"query", kData + "/two_rectangles.scc", "--form", "3/4,1/4"}).out == kQuarter);
  CHECK(run({"query", kData + "/two_rectangles.scc", "--form", "0.75,0.25"}).out == kQuarter);
  CHECK(run({"query", kData + "/two_rectangles.scc", "--b", "1/4"}).out == kQuarter);
  CHECK(run({"query", kData + "/two_rectangles.scc", "--form", "1,1"}).out ==
        run({"query", kData + "/two_rectangles.scc", "--form", "1/2,1/2"}).out);
  CHECK(run({"query", kData + "/two_rectangles.scc", "--form", "3/4,1/4", "--field", "3"}).out == kQuarter);
  CHECK(run({"query", kData + "/single.scc", "--form", "2,3"}).out == "0 (0, inf)\n");
  CHECK(run({"query", kData + "/three_params.scc", "--form", "1,1,1"}).code == 0);

  Outcome irrelevant = run({"query", kData + "/two_rectangles.scc", "--form", "1,0"});
  CHECK(irrelevant.code == 1);
  CHECK(irrelevant.err.find("form not in int") != std::string::npos);
  CHECK(run({"query", kData + "/two_rectangles.scc", "--form", "1,1,1"}).code == 1);
  CHECK(run({"query", kData + "/two_rectangles.scc", "--b", "2"}).code == 1);
  CHECK(run({"query", kData + "/two_rectangles.scc"}).code == 2);
  CHECK(run({"query", kData + "/two_rectangles.scc", "--form", "1,1", "--b", "1/2"}).code == 2);
  CHECK(run({"query", kData + "/two_rectangles.scc", "--form", "1,1", "--field", "4"}).code == 1);
}

TEST_CASE("output is deterministic") {
  auto a = run({"query", kData + "/two_rectangles.scc", "--form", "2,7"});
  auto b = run({"query", kData + "/two_rectangles.scc", "--form", "2,7"});
  CHECK(a.out == b.out);
}

TEST_CASE("template build and query") {
  const std::string tpl = "cli_test_template.json";
  Outcome built = run({"template", "build", kData + "/two_rectangles.scc", "-o", tpl});
  REQUIRE(built.code == 0);
  CHECK(built.out.find("5 critical values, 6 faces") != std::string::npos);

  CHECK(run({"template", "query", tpl, "--b", "1/4"}).out == kQuarter);
  CHECK(run({"template", "query", tpl, "--b", "9/40"}).out ==
        run({"query", kData + "/two_rectangles.scc", "--b", "9/40"}).out);
  CHECK(run({"template", "query", tpl, "--b", "0"}).code == 1);
  CHECK(run({"template", "query", tpl}).code == 2);
  CHECK(run({"template", "query", "no_such_template.json", "--b", "1/2"}).code == 2);

  Outcome threaded = run({"template", "build", kData + "/two_rectangles.scc", "-o", tpl + ".2", "--threads", "3"});
  CHECK(threaded.code == 0);
  std::remove(tpl.c_str());
  std::remove((tpl + ".2").c_str());

  Outcome unsupported = run({"template", "build", kData + "/three_params.scc", "-o", tpl});
  CHECK(unsupported.code == 1);
  CHECK(unsupported.err.find("requires n = 2") != std::string::npos);

  Outcome invalid = run({"template", "build", kData + "/two_rectangles_displayed_matrix.scc", "-o", tpl});
  CHECK(invalid.code == 1);
  std::remove(tpl.c_str());
}

TEST_CASE("bench") {
  Outcome r = run({"bench", kData + "/two_rectangles.scc", "--queries", "100"});
  CHECK(r.code == 0);
  CHECK(r.out.find("faces: 6\n") != std::string::npos);
  CHECK(r.out.find("agreement: 100/100\n") != std::string::npos);
}

TEST_CASE("serve reports an unreadable template") { CHECK(run({"serve", "no_such_template.json"}).code == 2); }
