#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lmeasure/cli.hpp"
#include "lmeasure/errors.hpp"

using namespace lmeasure;
using namespace lmeasure::cli;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> v;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) v.push_back(line);
  return v;
}

}  // namespace

TEST_CASE("step function parsing") {
  const auto f = parse_step_function("2@0:0.5, 0.5@0.5:1");
  CHECK(f.pieces() == 2);
  CHECK(f(0.7) == 0.5);

  auto message = [](const char* spec) {
    try {
      parse_step_function(spec);
    } catch (const ParseError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(message("2@0:0.5,0.5@0.6:1").find("gap at [0.5,0.6)") != std::string::npos);
  CHECK(message("2@0:0.5,0.5@0.4:1").find("overlaps at [0.4,0.5)") != std::string::npos);
  CHECK(message("2@0:0.5").find("coverage stops at 0.5") != std::string::npos);
  CHECK(message("-1@0:1").find("non-positive") != std::string::npos);
  CHECK(message("x@0:1").find("unreadable value") != std::string::npos);
  CHECK(message("2@0").find("value@start:end") != std::string::npos);
  CHECK(message("2@0.5:0.2") != "no error");
}

TEST_CASE("list parsing and number formatting") {
  CHECK(parse_real_list("0.5, 1,2", "b") == std::vector<double>{0.5, 1.0, 2.0});
  CHECK_THROWS_AS(parse_real_list("1,,2", "b"), ParseError);
  CHECK_THROWS_AS(parse_real_list("1,-2", "b"), ParseError);
  CHECK(parse_int_list("2,3, 40", "n") == std::vector<int>{2, 3, 40});
  CHECK_THROWS_AS(parse_int_list("2.5", "n"), ParseError);
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(1e-300) == "1e-300");
  CHECK(std::stod(format_number(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("laplace command writes config, header and one row") {
  const auto r = invoke({"laplace", "--samples", "2000", "--seed", "4", "--f", "2@0:1"});
  REQUIRE(r.code == kSuccess);
  const auto l = lines(r.out);
  REQUIRE(l.size() == 3);
  CHECK(l[0].rfind("# lmeasure ", 0) == 0);
  CHECK(l[0].find("command=laplace") != std::string::npos);
  CHECK(l[0].find("seed=4") != std::string::npos);
  CHECK(l[1].rfind("theta,f,estimate,stderr,analytic", 0) == 0);
  CHECK(l[2].find("\"2@0:1\"") == std::string::npos);  // no comma, no quoting
}

TEST_CASE("JSON output is one object per line") {
  const auto r = invoke({"saddle", "--format", "json", "--lambda", "2", "--nmax", "8"});
  REQUIRE(r.code == kSuccess);
  const auto l = lines(r.out);
  REQUIRE(l.size() >= 3);
  const auto head = nlohmann::json::parse(l[0]);
  CHECK(head["record"] == "config");
  CHECK(head["config"]["lambda"] == 2.0);
  bool saw_summary = false;
  for (const auto& line : l) {
    const auto j = nlohmann::json::parse(line);
    CHECK(j.contains("record"));
    if (j["record"] == "summary") saw_summary = true;
  }
  CHECK(saw_summary);
}

TEST_CASE("every subcommand runs") {
  const std::vector<std::vector<std::string>> runs = {
      {"sample", "--samples", "3", "--process", "dirichlet", "--eps", "1e-3"},
      {"sample", "--samples", "2", "--process", "lebesgue", "--format", "json", "--eps", "1e-3"},
      {"laplace", "--samples", "500"},
      {"invariance", "--samples", "500", "--a", "2@0:0.5,0.5@0.5:1"},
      {"partition-sums", "--samples", "500", "--partition", "0.5,1,1.5"},
      {"partition-sums", "--samples", "500", "--route", "intervals"},
      {"box-mass", "--samples", "500", "--partition", "1,1"},
      {"mellin", "--n", "2,3,10", "--lambda", "0.5"},
      {"saddle", "--lambda", "1", "--nmax", "6"},
      {"divergence", "--lambda", "3", "--nmax", "10"},
      {"divergence", "--lambda", "1", "--nmax", "10", "--schedule", "sqrt_n"},
      {"mp-demo", "--n", "5,10", "--samples", "200", "--points", "4"},
  };
  for (const auto& args : runs) {
    INFO(args[0] << " " << args[1] << " " << args[2]);
    const auto r = invoke(args);
    CHECK(r.code == kSuccess);
    CHECK(r.err.empty());
    CHECK(lines(r.out).size() >= 2);
  }
}

TEST_CASE("validation failures exit with 2 and an actionable message") {
  auto r = invoke({"laplace", "--f", "2@0:0.5,0.5@0.6:1"});
  CHECK(r.code == kValidationError);
  CHECK(r.out.empty());
  CHECK(r.err.find("gap") != std::string::npos);

  r = invoke({"frobnicate"});
  CHECK(r.code == kValidationError);
  CHECK(r.err.find("Usage") != std::string::npos);

  r = invoke({"laplace", "--theta", "-1"});
  CHECK(r.code == kValidationError);
  CHECK(r.err.find("--theta") != std::string::npos);

  r = invoke({"laplace", "--f", "2@0:0.5,0.4@0.5:1"});
  CHECK(r.code == kValidationError);
  CHECK(r.err.find("allow-infinite-variance") != std::string::npos);

  r = invoke({"mellin", "--n", "99"});
  CHECK(r.code == kValidationError);

  r = invoke({"laplace", "--format", "xml"});
  CHECK(r.code == kValidationError);

  r = invoke({"laplace", "--out", "/nonexistent-dir/x.csv"});
  CHECK(r.code == kValidationError);
}

TEST_CASE("identical configurations give identical bytes") {
  const std::vector<std::string> args{"partition-sums", "--samples", "3000", "--streams", "4",
                                      "--seed", "17", "--partition", "0.5,1,1.5"};
  const auto a = invoke(args);
  const auto b = invoke(args);
  REQUIRE(a.code == kSuccess);
  CHECK(a.out == b.out);
  auto other = args;
  other[6] = "18";
  CHECK(invoke(other).out != a.out);
}

TEST_CASE("config file pre-populates options and flags win") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto path = dir / "lmeasure_test_config.ini";
  {
    std::ofstream cfg(path);
    cfg << "lambda=2\nnmax=5\n";
  }
  auto r = invoke({"saddle", "--config", path.string()});
  REQUIRE(r.code == kSuccess);
  CHECK(lines(r.out)[0].find("lambda=2") != std::string::npos);
  r = invoke({"saddle", "--config", path.string(), "--lambda", "3"});
  REQUIRE(r.code == kSuccess);
  CHECK(lines(r.out)[0].find("lambda=3") != std::string::npos);
  std::filesystem::remove(path);
}

TEST_CASE("--out writes the same bytes as standard output") {
  const auto path = std::filesystem::temp_directory_path() / "lmeasure_test_out.csv";
  const std::vector<std::string> base{"box-mass", "--samples", "1000", "--seed", "3"};
  auto with_out = base;
  with_out.insert(with_out.end(), {"--out", path.string()});
  const auto to_stdout = invoke(base);
  REQUIRE(invoke(with_out).code == kSuccess);
  std::ifstream in(path, std::ios::binary);
  std::stringstream file;
  file << in.rdbuf();
  // the header records the --out path, the rest must match
  const auto a = lines(to_stdout.out), b = lines(file.str());
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 1; i < a.size(); ++i) CHECK(a[i] == b[i]);
  std::filesystem::remove(path);
}
