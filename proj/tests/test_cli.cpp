#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "isomlab/cli.hpp"
#include "isomlab/jsonio.hpp"
#include "test_support.hpp"

using namespace isomlab;
namespace fs = std::filesystem;

namespace {

struct Workspace {
  fs::path dir;
  Workspace() {
    dir = fs::temp_directory_path() /
          ("isomlab_test_" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  ~Workspace() { fs::remove_all(dir); }
  std::string write(const std::string& name, const std::string& content) {
    const fs::path p = dir / name;
    std::ofstream(p) << content;
    return p.string();
  }
  std::string write(const std::string& name, const jsonio::json& j) {
    return write(name, jsonio::dump_json(j));
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

cli::RunConfig config(const std::string& command,
                      std::map<std::string, std::string> options) {
  cli::RunConfig cfg;
  cfg.command = command;
  cfg.options = std::move(options);
  return cfg;
}

}  // namespace

TEST_CASE("json round-trips preserve the payload bit for bit") {
  std::mt19937_64 rng(151);

  for (int trial = 0; trial < 10; ++trial) {
    const auto v = testsupport::random_expvector(2, 3, rng);
    const auto j = jsonio::expvector_to_json(v);
    const auto back = jsonio::expvector_from_json(
        jsonio::json::parse(jsonio::dump_json(j)));
    REQUIRE(back.terms.size() == v.terms.size());
    CHECK(expspan::norm(expspan::sub(back, v)) == 0.0);
  }

  discrete::SparseVector sv = discrete::zero_vector(2);
  sv.entries[{0, 3}] = cdouble(0.25, -1.0 / 3.0);
  sv.entries[{2, 1}] = cdouble(-0.7, 0.1);
  const auto sj = jsonio::sparsevector_to_json(sv);
  const auto sback = jsonio::sparsevector_from_json(
      jsonio::json::parse(jsonio::dump_json(sj)));
  CHECK(discrete::norm(discrete::sub(sback, sv)) == 0.0);

  const fell::FellPoint p(3, {0, 2}, {{1, -0.625}});
  const auto pj = jsonio::fellpoint_to_json(p);
  CHECK(jsonio::fellpoint_from_json(pj) == p);

  const gauss::BoundarySequence seq({-1.0, -0.5},
                                    gauss::LemmaGenerator{-0.5});
  const auto bj = jsonio::boundary_to_json(seq);
  const auto bback = jsonio::boundary_from_json(bj);
  CHECK(bback.prefix() == seq.prefix());
  CHECK(bback.at(5) == seq.at(5));
}

TEST_CASE("schema violations name the offending field") {
  CHECK_THROWS_WITH_AS(
      jsonio::expvector_from_json(jsonio::json{{"terms", jsonio::json::array()}}),
      doctest::Contains("expvector.dim"), jsonio::SchemaError);
  CHECK_THROWS_WITH_AS(
      jsonio::fellpoint_from_json(
          jsonio::json{{"d", 1}, {"A", {1}}, {"lambda", {{"3", 1.0}}}}),
      doctest::Contains("lambda"), jsonio::SchemaError);
}

TEST_CASE("run: density certificate and determinism") {
  auto cfg = config("fell-density", {{"lambda", "3"}, {"eps", "0.1"}, {"a", "1"}});
  const auto r1 = cli::run(cfg);
  const auto r2 = cli::run(cfg);
  CHECK(r1.exit_code == 0);
  CHECK(r1.output == r2.output);  // byte-identical reruns
  const auto doc = jsonio::json::parse(r1.output);
  CHECK(doc["status"] == "PASS");
  CHECK(doc["delta"].get<double>() <= 5.013e-3);
  CHECK(doc["max_deviation"].get<double>() < 0.1);
}

TEST_CASE("run: wold on the 1-d shift puts everything in the pure piece") {
  Workspace ws;
  const std::string rep =
      ws.write("rep.json", jsonio::json{{"kind", "expspan_shift"}, {"dim", 1}});
  const auto f1 = expspan::unit_exponential(
      expspan::HalfPlanePoint({cdouble(1.0, 0.0)}));
  const std::string vec = ws.write("f1.json", jsonio::expvector_to_json(f1));

  const auto r = cli::run(config("wold", {{"rep", rep}, {"vector", vec}}));
  REQUIRE(r.exit_code == 0);
  const auto doc = jsonio::json::parse(r.output);
  CHECK(doc["status"] == "CONVERGED");
  CHECK(doc["components"][0]["norm"].get<double>() <= 1e-12);
  CHECK(doc["components"][1]["norm"].get<double>() ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("run: certificates, reports, masses") {
  Workspace ws;
  const std::string lemma = ws.write(
      "lemma.json", jsonio::json{{"prefix", jsonio::json::array()},
                                 {"generator", {{"kind", "lemma"}, {"t", -0.5}}}});

  SUBCASE("xmember certifies the lemma mass") {
    const auto r = cli::run(config("xmember", {{"seq", lemma}, {"tol", "1e-3"}}));
    CHECK(r.exit_code == 0);
    const auto doc = jsonio::json::parse(r.output);
    CHECK(doc["status"] == "PASS");
    CHECK(doc["achieved"].get<double>() ==
          doctest::Approx(0.8464817248906141).epsilon(1e-10));
  }

  SUBCASE("kakutani singular verdict goes through the CLI") {
    const std::string shifted = ws.write(
        "shifted.json",
        jsonio::json{{"prefix", jsonio::json::array()},
                     {"generator",
                      {{"kind", "lemma_shifted"},
                       {"t", -0.5},
                       {"shift", "inv_sqrt_n"},
                       {"amplitude", 1.0}}}});
    const auto r = cli::run(config(
        "kakutani",
        {{"a", lemma}, {"b", shifted}, {"nmax", "40"}, {"threshold", "1e-6"}}));
    CHECK(r.exit_code == 0);
    const auto doc = jsonio::json::parse(r.output);
    CHECK(doc["verdict"] == "SINGULAR");
    CHECK(doc["monotone_ok"] == true);
  }

  SUBCASE("va-check passes on the lemma sequence") {
    const auto r = cli::run(
        config("va-check", {{"seq", lemma}, {"arity", "2"}, {"count", "10"}}));
    CHECK(r.exit_code == 0);
    CHECK(jsonio::json::parse(r.output)["status"] == "PASS");
  }

  SUBCASE("restrict-equiv certifies the finite intertwiner") {
    const std::string other = ws.write(
        "other.json",
        jsonio::json{{"prefix", {-2.0, -0.25}}, {"generator", {{"kind", "lemma"}, {"t", -0.5}}}});
    const auto r = cli::run(
        config("restrict-equiv", {{"a", lemma}, {"b", other}, {"n", "2"}}));
    CHECK(r.exit_code == 0);
    CHECK(jsonio::json::parse(r.output)["status"] == "PASS");
  }

  SUBCASE("wold-failure masses in json and csv") {
    auto cfg = config("wold-failure", {{"d", "10"}, {"nu1", "0.1"}});
    const auto r = cli::run(cfg);
    CHECK(r.exit_code == 0);
    const auto doc = jsonio::json::parse(r.output);
    CHECK(doc["max_mass"].get<double>() == doctest::Approx(0.34867844).epsilon(1e-7));
    cfg.format = "csv";
    const auto rc = cli::run(cfg);
    CHECK(rc.exit_code == 0);
    CHECK(rc.output.substr(0, 7) == "g,mass\n");
  }
}

TEST_CASE("run: gram, cooper-verify, reconstruct, periodic, fell pair commands") {
  Workspace ws;
  std::mt19937_64 rng(157);
  const auto f1 = expspan::unit_exponential(
      expspan::HalfPlanePoint({cdouble(1.0, 0.0)}));
  const std::string v1 = ws.write("v1.json", jsonio::expvector_to_json(f1));
  const std::string v2 = ws.write(
      "v2.json", jsonio::expvector_to_json(expspan::apply_shift({1.0}, f1)));

  SUBCASE("gram emits the matrix and a PSD certificate") {
    const auto r = cli::run(config("gram", {{"vectors", v1 + ";" + v2}}));
    CHECK(r.exit_code == 0);
    const auto doc = jsonio::json::parse(r.output);
    CHECK(doc["certificate"]["status"] == "PASS");
    CHECK(doc["gram"][0][1][0].get<double>() ==
          doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
  }

  SUBCASE("cooper-verify on the shift") {
    const std::string rep = ws.write(
        "rep.json", jsonio::json{{"kind", "expspan_shift"}, {"dim", 1}});
    const auto r = cli::run(config(
        "cooper-verify",
        {{"rep", rep}, {"xi", v1}, {"z", "[[1,0]]"}, {"count", "10"}}));
    CHECK(r.exit_code == 0);
    CHECK(jsonio::json::parse(r.output)["status"] == "PASS");
  }

  SUBCASE("wold-reconstruct certifies a sparse expansion") {
    const std::string rep = ws.write(
        "drep.json",
        jsonio::json{{"kind", "discrete"},
                     {"dim", 2},
                     {"generators",
                      {{{"kind", "shift"}}, {{"kind", "shift"}}}}});
    discrete::SparseVector sv = discrete::zero_vector(2);
    sv.entries[{1, 2}] = 1.0;
    sv.entries[{0, 0}] = cdouble(0.0, 1.0);
    const std::string vec = ws.write("sv.json", jsonio::sparsevector_to_json(sv));
    const auto r = cli::run(config(
        "wold-reconstruct", {{"rep", rep}, {"vector", vec}, {"box", "4"}}));
    CHECK(r.exit_code == 0);
    CHECK(jsonio::json::parse(r.output)["status"] == "PASS");
  }

  SUBCASE("periodic-modes resolves the two-mode example") {
    const std::string sg = ws.write(
        "sg.json", jsonio::json{{"spectra", {{1}, {2}}}});
    const auto r = cli::run(config(
        "periodic-modes", {{"semigroup", sg}, {"lo", "0"}, {"hi", "2"}, {"quad", "8"}}));
    CHECK(r.exit_code == 0);
    const auto doc = jsonio::json::parse(r.output);
    CHECK(doc["total_rank"] == 2);
    CHECK(doc["status"] == "PASS");
  }

  SUBCASE("fell separation and closure") {
    const std::string p = ws.write(
        "p.json", jsonio::json{{"d", 1}, {"A", {1}}, {"lambda", jsonio::json::object()}});
    const std::string q = ws.write(
        "q.json",
        jsonio::json{{"d", 1}, {"A", jsonio::json::array()}, {"lambda", {{"1", 0.0}}}});
    const auto sep = cli::run(config("fell-separate", {{"p", p}, {"q", q}}));
    CHECK(sep.exit_code == 0);
    CHECK(jsonio::json::parse(sep.output)["separated"] == true);

    const auto clo = cli::run(config("fell-closure", {{"p", p}, {"q", q}}));
    CHECK(clo.exit_code == 0);
    const auto doc = jsonio::json::parse(clo.output);
    CHECK(doc["member"] == true);
    CHECK(doc["paper_asserted"] == true);
  }
  (void)rng;
}

TEST_CASE("run: schema violations exit 2 with the offending field named") {
  Workspace ws;
  const std::string bad = ws.write("bad.json", std::string("{ not json"));
  const auto r = cli::run(config("xmember", {{"seq", bad}}));
  CHECK(r.exit_code == 2);
  CHECK(r.error.find("malformed JSON") != std::string::npos);

  const auto missing = cli::run(config("xmember", {}));
  CHECK(missing.exit_code == 2);
  CHECK(missing.error.find("--seq") != std::string::npos);

  const auto unknown = cli::run(config("no-such-command", {}));
  CHECK(unknown.exit_code == 2);
}

#ifdef ISOMLAB_CLI_PATH
TEST_CASE("binary end-to-end: exit codes and deterministic files") {
  Workspace ws;
  const std::string out1 = (ws.dir / "out1.json").string();
  const std::string out2 = (ws.dir / "out2.json").string();
  const std::string base = std::string(ISOMLAB_CLI_PATH);

  const std::string cmd = base +
                          " fell-density --lambda 3 --eps 0.1 --a 1 --out ";
  REQUIRE(std::system((cmd + out1).c_str()) == 0);
  REQUIRE(std::system((cmd + out2).c_str()) == 0);
  CHECK(read_file(out1) == read_file(out2));
  CHECK(!read_file(out1).empty());

  // The spaced spelling goes through the `fell` group.
  const std::string spaced = base +
                             " fell density --lambda 3 --eps 0.1 --a 1 --out " +
                             (ws.dir / "out3.json").string();
  REQUIRE(std::system(spaced.c_str()) == 0);
  CHECK(read_file((ws.dir / "out3.json").string()) == read_file(out1));

  const std::string bad = ws.write("bad.json", std::string("{ nope"));
  const int code =
      std::system((base + " xmember --seq " + bad + " > /dev/null 2>&1").c_str());
  CHECK(WEXITSTATUS(code) == 2);
}
#endif
