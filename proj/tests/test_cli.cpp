#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "cli.hpp"
#include "helpers.hpp"
#include "mahler/errors.hpp"
#include "mahler/io.hpp"

using namespace mahler;
using namespace mahler::testing;
using io::Json;

namespace {

struct Run {
  int status;
  std::string out;
  std::string err;
  Json json() const { return io::parse(out); }
};

Run run(std::vector<std::string> args, const std::string& stdin_text = "") {
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  const int status = cli::run_cli(args, in, out, err);
  return {status, out.str(), err.str()};
}

const std::string kTm = R"({"k": 2, "coeffs": [["1"], ["-1", "1"]]})";
const std::string kPartitions = R"({"k": 2, "coeffs": [["1", "-1"], ["-1"]]})";
const std::string kExample = R"({"k": 2, "coeffs": [["1", "1"], ["-1"]]})";

class TempDir {
 public:
  TempDir() {
    path_ = std::filesystem::temp_directory_path() / ("mahler_test_" + std::to_string(::getpid()) + "_" +
                                                       std::to_string(counter_++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  std::string write(const std::string& name, const std::string& text) const {
    const auto p = path_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string str() const { return path_.string(); }

 private:
  static inline int counter_ = 0;
  std::filesystem::path path_;
};

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("rationals and polynomials serialize as strings") {
    CHECK(io::to_json(Rational(-3, 4)) == Json("-3/4"));
    CHECK(io::to_json(Rational(5)) == Json("5"));
    CHECK(io::to_json(P({1, 0, -2})) == Json::parse(R"(["1", "0", "-2"])"));
    CHECK(io::rational_from_json(Json("6/8")) == Rational(3, 4));
    CHECK_THROWS_AS(io::rational_from_json(Json(1.5)), InvalidInput);
    CHECK_THROWS_AS(io::rational_from_json(Json("x")), InvalidInput);
  }

  TEST_CASE("series and equation documents") {
    const LaurentSeries s(-1, ints({2, 0, 3}), 4);
    const Json j = io::to_json(s);
    CHECK(j == Json::parse(R"({"valuation": -1, "order": 4, "coeffs": ["2", "0", "3", "0", "0"]})"));
    CHECK(io::series_from_json(j) == s);

    const auto eq = io::equation_from_json(io::parse(kTm));
    CHECK(eq == MahlerEquation(2, {P({1}), P({-1, 1})}));
    CHECK_THROWS_AS(io::equation_from_json(io::parse(R"({"k": 2, "coeffs": [["1"]]})")), InvalidInput);
    CHECK_THROWS_AS(io::equation_from_json(io::parse(R"({"k": "2", "coeffs": [["1"], ["1"]]})")), InvalidInput);
    CHECK_THROWS_AS(io::series_from_json(io::parse(R"({"valuation": 0, "order": 1, "coeffs": ["1", "2"]})")),
                    InvalidInput);
  }

  TEST_CASE("syntax errors report a byte offset") {
    try {
      io::parse(R"({"k": 2, "coeffs": [)");
      FAIL("expected a parse error");
    } catch (const InvalidInput& e) {
      CHECK(std::string(e.what()).find("byte") != std::string::npos);
    }
  }

  TEST_CASE("canonical form is a fixpoint for every schema") {
    std::vector<Json> docs{io::to_json(MahlerEquation(3, {P({1, 2}), P({-1})})),
                           io::to_json(LaurentSeries(-2, ints({1, 5}), 3)),
                           io::to_json(normalize(MahlerEquation(2, {P({1, 1}), P({-1})}))),
                           io::to_json(certify_regular(MahlerEquation(2, {P({1}), P({-1})})))};
    Matrix<Rational> a(1, 1);
    a(0, 0) = Rational(1, 2);
    docs.push_back(io::to_json(LinearRepresentation{2, {1}, {a, a}, {3}}));
    for (const auto& d : docs) {
      const auto once = io::dump(d);
      CHECK(io::canonicalize(io::parse(once)) == once);
    }
    // Reordered keys and integer coefficients canonicalize to sorted strings.
    const auto c = io::canonicalize(io::parse(R"({"coeffs": [[1], [-1, 1]], "k": 2})"));
    CHECK(c == io::dump(io::parse(kTm)));
  }
}

TEST_SUITE("cli") {
  TEST_CASE("solve prints the Thue-Morse prefix") {
    const auto r = run({"solve", "--k", "2", "--order", "8", kTm});
    REQUIRE(r.status == cli::kOk);
    const auto basis = r.json().at("basis");
    REQUIRE(basis.size() == 1);
    CHECK(basis[0].at("coeffs") == Json::parse(R"(["1", "-1", "-1", "1", "-1", "1", "1", "-1"])"));
  }

  TEST_CASE("certify the binary-partition equation") {
    TempDir dir;
    const auto prefix = io::dump(io::to_json(prefix_oracle(Oracle::binary_partitions, 64)));
    const auto r = run({"certify", "--k", "2", dir.write("eq.json", kPartitions), dir.write("f.json", prefix)});
    REQUIRE(r.status == cli::kOk);
    const auto j = r.json();
    CHECK(j.at("verdict") == "NOT_REGULAR");
    CHECK(j.at("criterion") == "unbounded_poles");
    CHECK(j.at("M") == 1);
  }

  TEST_CASE("normalize the worked example") {
    const auto r = run({"normalize", "--k", "2", kExample});
    REQUIRE(r.status == cli::kOk);
    const auto j = r.json();
    CHECK(j.at("Q") == Json::parse(R"(["1", "-1"])"));
    CHECK(j.at("gamma") == 0);
  }

  TEST_CASE("input from standard input and k injection") {
    const auto r = run({"solve", "--k", "2", "--order", "4", "-"}, R"({"coeffs": [["1"], ["-1", "1"]]})");
    REQUIRE(r.status == cli::kOk);
    CHECK(r.json().at("basis")[0].at("coeffs").size() == 4);
  }

  TEST_CASE("exit codes") {
    CHECK(run({}).status == cli::kUsage);
    CHECK(run({"frobnicate"}).status == cli::kUsage);
    CHECK(run({"solve", "--format", "yaml", kTm}).status == cli::kUsage);
    CHECK(run({"solve", "--k", "1", kTm}).status == cli::kUsage);
    CHECK(run({"cartier", "--k", "2", "--index", "2", R"({"valuation":0,"order":2,"coeffs":["1"]})"}).status ==
          cli::kUsage);
    CHECK(run({"guess", R"({"valuation":0,"order":2,"coeffs":["1"]})"}).status == cli::kUsage);

    const auto bad = run({"solve", R"({"k": 2, "coeffs": [)"});
    CHECK(bad.status == cli::kMalformed);
    CHECK(bad.err.find("byte") != std::string::npos);
    CHECK(run({"solve"}).status == cli::kMalformed);
    CHECK(run({"solve", "--k", "3", kTm}).status == cli::kMalformed);
    CHECK(run({"solve", "/nonexistent/eq.json"}).status == cli::kMalformed);
    CHECK(run({"solve", R"({"k": 2, "coeffs": [["0"], ["1"]]})"}).status == cli::kMalformed);

    TempDir empty;
    CHECK(run({"corpus", "check", "--dir", empty.str()}).status == cli::kInternal);
  }

  TEST_CASE("roundtrip reports canonical files and locates differences") {
    TempDir dir;
    const auto canonical = dir.write("eq.json", io::dump(io::parse(kTm)));
    auto r = run({"roundtrip", canonical});
    REQUIRE(r.status == cli::kOk);
    CHECK(r.json().at("files")[0].at("canonical") == true);

    Matrix<Rational> a(1, 1);
    a(0, 0) = 1;
    const auto rep = dir.write("rep.json", io::dump(io::to_json(LinearRepresentation{2, {1}, {a, a}, {1}})));
    r = run({"roundtrip", rep});
    REQUIRE(r.status == cli::kOk);
    CHECK(r.json().at("files")[0].at("schema") == "rep");
    CHECK(r.json().at("files")[0].at("canonical") == true);

    const auto loose = dir.write("loose.json", R"({"k": 2, "coeffs": [[1], [-1, 1]]})");
    r = run({"roundtrip", loose});
    REQUIRE(r.status == cli::kOk);
    const auto entry = r.json().at("files")[0];
    CHECK(entry.at("canonical") == false);
    CHECK(entry.at("first_difference").at("line") == 1);
    CHECK(entry.at("first_difference").at("byte") == 1);

    const auto broken = dir.write("broken.json", "{\"k\": 2,\n \"coeffs\": [[\"1\"]");
    r = run({"roundtrip", broken});
    CHECK(r.status == cli::kMalformed);
    CHECK(r.err.find("byte") != std::string::npos);
  }

  TEST_CASE("outputs re-parse and are deterministic") {
    const std::vector<std::vector<std::string>> invocations{
        {"solve", "--order", "16", kPartitions},
        {"verify", kTm, R"({"valuation":0,"order":4,"coeffs":["1","-1","-1","1"]})"},
        {"guess", "--k", "2", "--depth-max", "1", "--deg-max", "2",
         io::dump(io::to_json(prefix_oracle(Oracle::thue_morse, 40)))},
        {"cartier", "--k", "2", "--index", "1", R"({"valuation":0,"order":4,"coeffs":["1","2","3","4"]})"},
        {"rep-from-eq", kTm},
        {"eq-from-rep", R"({"k":2,"row":["1"],"matrices":[[["1"]],[["-1"]]],"col":["1"]})"},
        {"rep-eval", "--order", "8", R"({"k":2,"row":["1"],"matrices":[[["1"]],[["-1"]]],"col":["1"]})"},
        {"becker-search", "--k", "2", io::dump(io::to_json(prefix_oracle(Oracle::stern, 128)))},
        {"certify", kTm},
        {"decompose", "--order", "16", kPartitions},
        {"pole-profile", "--cyclo-order", "1", "--n-max", "6", kPartitions},
        {"corpus", "list"},
        {"corpus", "emit", "stern"},
        {"pipeline", kTm},
    };
    for (const auto& args : invocations) {
      CAPTURE(args.front());
      const auto a = run(args);
      const auto b = run(args);
      REQUIRE(a.status == cli::kOk);
      CHECK(a.out == b.out);
      CHECK_NOTHROW(a.json());
    }
  }

  TEST_CASE("pole profile and representation subcommands") {
    auto r = run({"pole-profile", "--cyclo-order", "1", "--n-max", "6", kPartitions});
    CHECK(r.json().at("profile") == Json::parse("[1, 2, 3, 4, 5, 6]"));
    r = run({"rep-eval", "--order", "8", R"({"k":2,"row":["1"],"matrices":[[["1"]],[["-1"]]],"col":["1"]})"});
    CHECK(r.json().at("series").at("coeffs") == Json::parse(R"(["1", "-1", "-1", "1", "-1", "1", "1", "-1"])"));
    r = run({"rep-from-eq", kTm});
    CHECK(r.json().at("status") == "ok");
    CHECK(r.json().at("dim") == 1);
  }

  TEST_CASE("witness from a normalization document") {
    TempDir dir;
    const auto norm = dir.write("norm.json", run({"normalize", kExample}).out);
    const auto r = run({"witness", norm, R"({"k": 2, "coeffs": [["1"], ["-1"]]})"});
    REQUIRE(r.status == cli::kOk);
    CHECK(r.json().at("equation") == io::parse(kExample));
    CHECK(r.json().at("certificate").at("verdict") == "REGULAR");
  }

  TEST_CASE("pipeline reports") {
    auto r = run({"pipeline", kTm});
    REQUIRE(r.status == cli::kOk);
    auto j = r.json();
    CHECK(j.at("normalize").at("Q") == Json::parse(R"(["1"])"));
    CHECK(j.at("becker_search").at("found") == true);
    CHECK(j.at("certify").at("verdict") == "REGULAR");

    r = run({"pipeline", R"({"k": 2, "coeffs": [["0","0","0","1"], ["0","0","-1"], ["0","0","1","-1"]]})"});
    REQUIRE(r.status == cli::kOk);
    j = r.json();
    CHECK(j.at("normalize").at("gamma") == 3);
    CHECK(j.at("becker_search").at("found") == true);
    CHECK(j.at("becker_search").at("verification").at("holds") == true);
    CHECK(j.at("witness").at("certificate").at("verdict") == "REGULAR");

    r = run({"pipeline", kExample});
    REQUIRE(r.status == cli::kOk);
    CHECK(r.json().at("normalize").at("Q") == Json::parse(R"(["1", "-1"])"));

    r = run({"pipeline", "--order", "8", kTm, R"({"valuation":0,"order":8,"coeffs":["1","1","2","1","3","2","3","1"]})"});
    CHECK(r.status == cli::kMalformed);
    CHECK(r.err.find("solve") != std::string::npos);
  }

  TEST_CASE("pipeline shift minimization on a corpus item") {
    const std::string item = std::string(MAHLER_CORPUS_DIR) + "/paradox_k3.json";
    auto r = run({"pipeline", item});
    REQUIRE(r.status == cli::kOk);
    auto j = r.json();
    CHECK(j.at("becker_search").at("found") == false);
    CHECK(j.at("becker_search").at("shift") == 8);

    r = run({"pipeline", "--minimize-shift", item});
    REQUIRE(r.status == cli::kOk);
    j = r.json();
    CHECK(j.at("becker_search").at("found") == true);
    CHECK(j.at("becker_search").at("shift") == 1);
    CHECK(j.at("witness").at("verification").at("holds") == true);
    CHECK(j.at("witness").at("certificate").at("verdict") == "REGULAR");
  }

  TEST_CASE("text format") {
    const auto r = run({"normalize", "--format", "text", kExample});
    REQUIRE(r.status == cli::kOk);
    CHECK(r.out.find("gamma: 0") != std::string::npos);
    CHECK(r.out.find("Q: [1, -1]") != std::string::npos);
  }
}
