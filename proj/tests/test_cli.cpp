#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#include "commands.hpp"

using isokit::cli::run;
using Json = nlohmann::json;

namespace {

std::string data(const std::string& name) { return std::string(ISOKIT_DATA_DIR) + "/" + name; }

std::string temp_file(const std::string& name, const std::string& content) {
  const std::string path = "isokit_cli_" + name;
  std::ofstream(path) << content;
  return path;
}

Json parse(const isokit::cli::CommandResult& r) { return Json::parse(r.output); }

}  // namespace

TEST_CASE("normalize") {
  auto r = run({"normalize", data("tetrahedron.json")});
  CHECK(r.exit_code == 0);
  auto j = parse(r);
  CHECK(j["idq"].get<double>() == doctest::Approx(std::sqrt(2.0) / 12).epsilon(1e-9));
  CHECK(j["T"].size() == 9);
  CHECK(j["lambda"].size() == 6);
  CHECK(j["u"].size() == 6);
  CHECK(j["witness"]["ijk"].size() == 3);
  CHECK(j["witness"]["value"].get<double>() == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-9));

  r = run({"normalize", data("cube.json")});
  CHECK(r.exit_code == 0);
  CHECK(parse(r)["idq"].get<double>() >= std::sqrt(2.0) / 12);

  r = run({"normalize", data("coplanar.json")});
  CHECK(r.exit_code == 2);
  CHECK(parse(r)["error"] == "DegenerateInput");

  r = run({"normalize", data("extremal-simplex.json")});
  CHECK(r.exit_code == 0);
}

TEST_CASE("width") {
  auto r = run({"width", data("extremal-simplex.json")});
  CHECK(r.exit_code == 0);
  auto j = parse(r);
  CHECK(j["omega"] == "1");
  CHECK(j["slack"] == "0");
  CHECK(j["volume"] == "1/12");
  CHECK(j["nonseparable"] == true);

  j = parse(run({"width", data("cube.json")}));
  CHECK(j["omega"] == "1");
  CHECK(j["volume"] == "1");

  r = run({"width", data("shrunk-cube.json")});
  CHECK(r.exit_code == 0);
  CHECK(parse(r)["nonseparable"] == false);
}

TEST_CASE("verify-lemmas") {
  auto r = run({"--grid-step", "0.25", "verify-lemmas"});
  CHECK(r.exit_code == 0);
  r = run({"verify-lemmas"});
  CHECK(r.exit_code == 0);
  const auto j = parse(r);
  bool half = false;
  for (const auto& w : j["tight"]) {
    bool all = true;
    for (const auto& v : w["lambda"]) all = all && std::abs(v.get<double>() - 0.5) < 1e-12;
    half = half || all;
  }
  CHECK(half);
  r = run({"--grid-step", "0.6", "verify-lemmas"});
  CHECK(r.exit_code == 2);
  CHECK(parse(r)["error"] == "ConfigError");
}

TEST_CASE("certify") {
  auto r = run({"certify", "--samples", "0"});
  CHECK(r.exit_code == 0);
  auto j = parse(r);
  CHECK(j["global_max"].get<double>() == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(j["witness"]["value"].get<double>() == doctest::Approx(2.0).epsilon(1e-9));

  const auto a = run({"--seed", "7", "certify", "--samples", "10"});
  const auto b = run({"--seed", "7", "certify", "--samples", "10"});
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);
  j = parse(a);
  CHECK(j["samples"] == 10);
  CHECK(j["global_max"].get<double>() <= 2 + 1e-6);

  r = run({"--restarts", "4", "certify", "--samples", "3", "--zero-samples", "3"});
  CHECK(r.exit_code == 0);
}

TEST_CASE("peculiar") {
  const auto r = run({"peculiar", "--samples", "100", "--lambdas", "10", "--omega-points", "10000"});
  CHECK(r.exit_code == 0);
  CHECK(parse(r).is_object());
}

TEST_CASE("input errors exit with 2") {
  auto r = run({"normalize", "no-such-file.json"});
  CHECK(r.exit_code == 2);
  CHECK(parse(r).contains("error"));
  CHECK(parse(r).contains("message"));

  r = run({"normalize", temp_file("bad.json", "{\"vertices\": [[0,0")});
  CHECK(r.exit_code == 2);
  r = run({"normalize", temp_file("short.json", "{\"vertices\": [[0,0,0],[1,0,0],[0,1,0]]}")});
  CHECK(r.exit_code == 2);
  r = run({"normalize", temp_file("nan.json", "{\"vertices\": [[0,0,0],[1,0,0],[0,1,0],[0,0,\"x\"]]}")});
  CHECK(r.exit_code == 2);

  CHECK(run({"frobnicate"}).exit_code == 2);
  CHECK(run({}).exit_code == 2);
  CHECK(run({"--tol", "-1", "normalize", data("cube.json")}).exit_code == 2);
  CHECK(run({"--mode", "decimal", "width", data("cube.json")}).exit_code == 2);
  CHECK(run({"certify", "--samples", "-3"}).exit_code == 2);
}

TEST_CASE("mode switch") {
  const auto f = run({"--mode", "float", "width", data("extremal-simplex.json")});
  CHECK(f.exit_code == 0);
  const auto r = run({"--mode", "rational", "normalize", data("tetrahedron.json")});
  CHECK(r.exit_code == 0);
}
