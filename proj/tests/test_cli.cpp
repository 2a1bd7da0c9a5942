#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "nshardy/error.hpp"
#include "nshardy/io.hpp"
#include "nshardy/vertices.hpp"

using namespace nshardy;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("nshardy_test_" + name)).string();
}

std::string write_box(const std::string& name, const JointBox& box) {
  const std::string path = temp_path(name);
  std::ofstream(path) << box_to_json(box).dump(1);
  return path;
}

}  // namespace

TEST_CASE("optimize") {
  Run r = run({"optimize", "--kind", "relaxed", "--dims", "3,3,3,3", "--regime", "ns"});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["optimum"] == "2/3");

  r = run({"optimize", "--kind", "conventional", "--dims", "2,2,2,2", "--regime", "lhv"});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["optimum"] == "0/1");
  CHECK(json::parse(r.out)["regime"] == "local-realistic");

  r = run({"optimize", "--kind", "relaxed", "--dims", "2,2,2,2", "--regime", "ns"});
  const json j = json::parse(r.out);
  CHECK(j["optimum"] == "1/2");
  CHECK(box_from_json(j["witness"]).scenario() == Scenario::uniform(2));

  r = run({"optimize", "--kind", "relaxed", "--dims", "3,3,3,3", "--p", "1/4"});
  CHECK(r.code == 0);
  CHECK(Rational::parse(json::parse(r.out)["optimum"].get<std::string>()) >= Rational(2, 3));
}

TEST_CASE("usage errors exit nonzero") {
  CHECK(run({}).code != 0);
  CHECK(run({"optimize", "--kind", "weird", "--dims", "2,2,2,2"}).code != 0);
  CHECK(run({"optimize", "--dims", "2,2,2"}).code == 2);
  CHECK(run({"optimize", "--dims", "1,2,2,2"}).code == 2);
  CHECK(run({"optimize", "--dims", "2,2,2,2", "--regime", "qm"}).code != 0);
  CHECK(run({"optimize", "--kind", "conventional", "--dims", "2,2,2,2", "--p", "1/2"}).code == 2);
  CHECK(run({"sweep", "--d-min", "5", "--d-max", "3"}).code == 2);
  CHECK(run({"sweep", "--d-min", "2", "--d-max", "17"}).code == 2);
  CHECK_THROWS_AS(cli::parse_dims("2,x,2,2"), ValidationError);
}

TEST_CASE("vertices") {
  CHECK(lines(run({"vertices", "--dims", "2,2,2,2", "--kind", "nonlocal"}).out).size() == 8);
  CHECK(lines(run({"vertices", "--dims", "2,2,2,2", "--kind", "local"}).out).size() == 16);
  const auto nl3 = lines(run({"vertices", "--dims", "3,3,3,3", "--kind", "nonlocal"}).out);
  REQUIRE(nl3.size() == 27);
  const json first = json::parse(nl3.front());
  CHECK(first["kind"] == "nonlocal");
  CHECK(first["label"] == json::array({0, 0, 0}));
  CHECK(is_valid_box(box_from_json(first)));
}

TEST_CASE("verify") {
  const std::string pr = write_box("pr.json", nonlocal_vertex(Scenario::uniform(2), {0, 0, 0}));
  Run r = run({"verify", pr, "--kind", "conventional"});
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["valid"] == true);
  CHECK(j["pp"] == "1/2");
  CHECK(j["pn"] == "1/1");
  CHECK(j["ppc"] == "1/2");

  JointBox tampered = nonlocal_vertex(Scenario::uniform(2), {0, 0, 0});
  tampered.set({0, 0, 0, 0}, Rational(-1, 2));
  r = run({"verify", write_box("tampered.json", tampered), "--kind", "conventional"});
  CHECK(r.code == 2);
  j = json::parse(r.out);
  CHECK(j["valid"] == false);
  bool named = false;
  for (const auto& v : j["violations"]) {
    if (v["kind"] == "positivity") named = v["constraint"] == "positivity P(X0,Y0,a=1,b=1) >= 0";
  }
  CHECK(named);

  const Scenario s3 = Scenario::uniform(3);
  r = run({"verify", write_box("v3.json", nonlocal_vertex(s3, relaxed_attaining_label(3))), "--kind", "relaxed"});
  CHECK(r.code == 0);
  j = json::parse(r.out);
  CHECK(j["pp"] == "2/3");
  CHECK(j["ppc"] == "1/3");

  r = run({"verify", temp_path("does_not_exist.json")});
  CHECK(r.code == 3);
  const std::string garbage = temp_path("garbage.json");
  std::ofstream(garbage) << "{not json";
  CHECK(run({"verify", garbage}).code == 3);
}

TEST_CASE("pn subcommand") {
  const Scenario s = Scenario::uniform(4);
  const std::string path = write_box("v4.json", nonlocal_vertex(s, relaxed_attaining_label(4)));
  Run r = run({"pn", path, "--kind", "relaxed", "--exhaustive-perms"});
  CHECK(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["pn"] == "1/1");
  CHECK(j["ppc"] == "1/4");
  CHECK(j["pn_detail"]["family"].size() == 2);
}

TEST_CASE("sweep rows agree with the closed forms and the CSV is deterministic") {
  const auto rows = cli::compute_sweep(2, 6);
  REQUIRE(rows.size() == 5);
  for (const auto& row : rows) {
    CHECK(row.q_h_gnst == Rational(1, 2));
    CHECK(row.q_rh_gnst == Rational(row.d - 1, row.d));
    CHECK(row.ppc_gnst == Rational(1, row.d));
    CHECK(row.quantum_ref.has_value() == (row.d == 2));
  }
  const std::string csv = cli::sweep_csv(rows);
  const auto ls = lines(csv);
  CHECK(ls[0].rfind("d,q_H_gnst,q_RH_gnst,PPC_gnst,quantum_ref", 0) == 0);
  CHECK(ls[1] == "2,1/2,1/2,1/2,0.090170,0.500000,0.500000,0.500000");
  CHECK(ls[5] == "6,1/2,5/6,1/6,,0.500000,0.833333,0.166667");
  CHECK(csv.find('\r') == std::string::npos);

  const std::string a = temp_path("sweep_a.csv");
  const std::string b = temp_path("sweep_b.csv");
  CHECK(run({"sweep", "--d-min", "2", "--d-max", "6", "--out", a}).code == 0);
  CHECK(run({"sweep", "--d-min", "2", "--d-max", "6", "--out", b}).code == 0);
  auto slurp = [](const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  CHECK(slurp(a) == csv);
  CHECK(slurp(a) == slurp(b));
  CHECK(run({"sweep", "--d-min", "2", "--d-max", "3", "--out", "/nonexistent_dir/x.csv"}).code == 3);
}
