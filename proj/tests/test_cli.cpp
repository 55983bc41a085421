// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <numbers>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "../tools/cli.hpp"
#include "pcc/sampling.hpp"

namespace fs = std::filesystem;
using pcc::cli::run;

namespace {

const double kA = std::sin(std::numbers::pi / 4.0);

struct Result {
  int code = 0;
  std::string out;
  std::string err;
  nlohmann::json json() const { return nlohmann::json::parse(out); }
};

Result call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Result r;
  r.code = run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

class TempFile {
 public:
  TempFile(const std::string& name, const std::string& body)
      : path_(fs::temp_directory_path() / ("pcc_test_" + std::to_string(::getpid()) + "_" + name)) {
    std::ofstream(path_, std::ios::binary) << body;
  }
  ~TempFile() { fs::remove(path_); }
  std::string str() const { return path_.string(); }

 private:
  fs::path path_;
};

const char* kTable1Csv =
    "# x, y, z, w\n"
    "1,1,1,1\n"
    "1,1,1,1\n"
    "1,-1,1,-1\n"
    "1,-1,-1,1\n";

std::string number(double v) {
  char buf[32];
  return std::string(buf, std::to_chars(buf, buf + sizeof buf, v).ptr);
}

}  // namespace

TEST_CASE("estimate on the real counterexample") {
  const TempFile f("table1.csv", kTable1Csv);
  const auto r = call({"estimate", f.str()});
  REQUIRE(r.code == 0);
  const auto j = r.json();
  CHECK(j["mode"] == "real");
  CHECK(j["channels"] == 4);
  CHECK(j["samples"] == 4);
  CHECK(j["input"] == "signs");
  CHECK(j["psd"]["is_psd"] == false);
  CHECK(j["matrix"][0][1].get<double>() == 0.0);
  CHECK(j["matrix"][0][2].get<double>() == kA);
  CHECK(j["matrix"][2][3].get<double>() == 0.0);
  CHECK(std::abs(j["psd"]["min_eig"].get<double>() - (1.0 - std::numbers::sqrt2)) < 1e-12);

  const auto strict = call({"estimate", f.str(), "--fail-on-npsd"});
  CHECK(strict.code == pcc::cli::kExitNotPsd);

  const auto csv = call({"estimate", f.str(), "--format", "csv"});
  CHECK(csv.code == 0);
  CHECK(csv.out.substr(0, csv.out.find('\n')) == "1,0,0.7071067811865475,0.7071067811865475");
}

TEST_CASE("estimate on a single channel and on complex input") {
  const TempFile one("one.csv", "0.3\n-1.2\n4\n");
  const auto r = call({"estimate", one.str()});
  REQUIRE(r.code == 0);
  const auto j = r.json();
  CHECK(j["matrix"] == nlohmann::json::parse("[[1.0]]"));
  CHECK(j["psd"]["is_psd"] == true);
  CHECK(j["input"] == "samples");

  // Complex counterexample: x = (++, ++), y = (++, -+), z = (++, --).
  const TempFile c("complex.csv", "1,1,1,1,1,1\n1,1,-1,1,-1,-1\n");
  const auto cr = call({"estimate", "--complex", c.str()});
  REQUIRE(cr.code == 0);
  const auto cj = cr.json();
  CHECK(cj["mode"] == "complex");
  CHECK(cj["matrix"][0][1][0].get<double>() == kA);
  CHECK(cj["matrix"][0][1][1].get<double>() == -kA);
  CHECK(cj["matrix"][1][0][1].get<double>() == kA);
  CHECK(cj["psd"]["is_psd"] == false);

  const TempFile odd("odd.csv", "1,2,3\n");
  CHECK(call({"estimate", "--complex", odd.str()}).code == 1);
}

TEST_CASE("estimate recovers a three-channel Gaussian correlation") {
  auto corr = pcc::CorrMatrix::identity(3, pcc::Mode::real);
  corr.set_off_diagonal(0, 1, 0.5);
  corr.set_off_diagonal(0, 2, 0.5);
  corr.set_off_diagonal(1, 2, 0.25);
  const auto ch = pcc::sample_gaussian_channels(corr, 100000, 2024);
  std::string body;
  for (std::size_t i = 0; i < ch[0].size(); ++i)
    body += number(ch[0][i]) + "," + number(ch[1][i]) + "," + number(ch[2][i]) + "\n";
  const TempFile f("gauss.csv", body);
  const auto r = call({"estimate", f.str(), "--baseline"});
  REQUIRE(r.code == 0);
  const auto j = r.json();
  CHECK(std::abs(j["matrix"][0][1].get<double>() - 0.5) < 0.02);
  CHECK(std::abs(j["matrix"][0][2].get<double>() - 0.5) < 0.02);
  CHECK(std::abs(j["matrix"][1][2].get<double>() - 0.25) < 0.02);
  CHECK(std::abs(j["baseline"]["matrix"][1][2].get<double>() - 0.25) < 0.02);
  CHECK(j["psd"]["is_psd"] == true);
}

TEST_CASE("malformed input names the line and column") {
  const TempFile bad("bad.csv", "1,2\n3,x\n");
  const auto r = call({"estimate", bad.str()});
  CHECK(r.code == 1);
  CHECK(r.err.find("line 2") != std::string::npos);
  CHECK(r.err.find("column 2") != std::string::npos);

  const TempFile ragged("ragged.csv", "1,2\n3\n");
  const auto rr = call({"estimate", ragged.str()});
  CHECK(rr.code == 1);
  CHECK(rr.err.find("line 2") != std::string::npos);

  CHECK(call({"estimate", "/nonexistent/file.csv"}).code == 1);
  CHECK(call({"estimate"}).code == 1);
  CHECK(call({"frobnicate"}).code == 1);
  CHECK(call({}).code == 1);
}

TEST_CASE("check-psd reads JSON and CSV matrices") {
  const TempFile json("m.json", "{\"matrix\": [[1, 0.5], [0.5, 1]]}");
  const auto r = call({"check-psd", json.str()});
  REQUIRE(r.code == 0);
  const auto j = r.json();
  CHECK(j["psd"]["is_psd"] == true);
  CHECK(std::abs(j["psd"]["eigenvalues"][0].get<double>() - 0.5) < 1e-12);

  const TempFile est("est.csv", kTable1Csv);
  const auto e = call({"estimate", est.str()});
  const TempFile piped("est.json", e.out);
  const auto pr = call({"check-psd", piped.str(), "--fail-on-npsd"});
  CHECK(pr.code == 2);
  CHECK(pr.json()["psd"]["is_psd"] == false);

  const TempFile csv("m.csv", "1,0.9,0.9\n0.9,1,-0.9\n0.9,-0.9,1\n");
  const auto cr = call({"check-psd", csv.str()});
  REQUIRE(cr.code == 0);
  CHECK(cr.json()["psd"]["is_psd"] == false);

  const TempFile herm("h.csv", "1,0,0,1\n0,-1,1,0\n");
  const auto hr = call({"check-psd", "--complex", herm.str()});
  REQUIRE(hr.code == 0);
  CHECK(hr.json()["mode"] == "complex");
  CHECK(std::abs(hr.json()["psd"]["eigenvalues"][1].get<double>() - 2.0) < 1e-12);

  const TempFile asym("a.csv", "1,0.2\n0.3,1\n");
  CHECK(call({"check-psd", asym.str()}).code == 1);
}

TEST_CASE("enumerate") {
  const auto r = call({"enumerate", "--p", "3", "--n", "6"});
  REQUIRE(r.code == 0);
  const auto j = r.json();
  CHECK(j["violations"] == 0);
  CHECK(j["total_configs"] == 4096);

  const auto bad = call({"enumerate", "--p", "4", "--n", "4"});
  REQUIRE(bad.code == 0);
  const auto bj = bad.json();
  CHECK(bj["violations"] == 1056);
  CHECK(bj["witnesses"].size() == 16);

  const auto c = call({"enumerate", "--p", "3", "--n", "2", "--complex", "--max-witnesses", "0"});
  REQUIRE(c.code == 0);
  const auto cj = c.json();
  CHECK(cj["violations"] == 1536);
  bool found = false;
  for (const auto& w : cj["witnesses"])
    if (w["channels"] == nlohmann::json::parse(R"(["++ ++", "++ -+", "++ --"])")) found = true;
  CHECK(found);

  const auto over = call({"enumerate", "--p", "5", "--n", "10"});
  CHECK(over.code == 1);
  CHECK(over.err.find("budget") != std::string::npos);
  CHECK(call({"enumerate", "--p", "3", "--n", "4", "--budget", "10"}).code == 1);
}

TEST_CASE("counterexample") {
  const auto r4 = call({"counterexample", "--p", "4"});
  REQUIRE(r4.code == 0);
  const auto j4 = r4.json();
  CHECK(j4["channels"] == nlohmann::json::parse(R"(["++++", "++--", "+++-", "++-+"])"));
  CHECK(j4["psd"]["is_psd"] == false);

  const auto r5 = call({"counterexample", "--p", "5"});
  REQUIRE(r5.code == 0);
  const auto j5 = r5.json();
  CHECK(j5["n"] == 8);
  CHECK(std::abs(j5["psd"]["min_eig"].get<double>() - (1.0 - std::numbers::sqrt2)) < 1e-9);
  for (int i = 0; i < 4; ++i) CHECK(j5["matrix"][4][i].get<double>() == 0.0);

  const auto c3 = call({"counterexample", "--p", "3", "--complex"});
  REQUIRE(c3.code == 0);
  CHECK(c3.json()["channels"] == nlohmann::json::parse(R"(["++ ++", "++ -+", "++ --"])"));

  const auto low = call({"counterexample", "--p", "3"});
  CHECK(low.code == 1);
  CHECK(low.err.find("always positive semidefinite") != std::string::npos);
  CHECK(call({"counterexample", "--p", "2", "--complex"}).code == 1);
}

TEST_CASE("validate") {
  const auto r = call({"validate", "--r", "0.5", "--seed", "3"});
  REQUIRE(r.code == 0);
  const auto j = r.json();
  CHECK(j["pass"] == true);
  CHECK(std::abs(j["empirical_sign_moment"].get<double>() - 1.0 / 3.0) < 0.005);

  const auto c = call({"validate", "--complex", "--r", "0", "--n", "100000"});
  CHECK(c.code == 0);

  const auto hi = call({"validate", "--r", "0.9"});
  REQUIRE(hi.code == 0);
  CHECK(hi.json()["abs_error"].get<double>() < 0.005);

  CHECK(call({"validate", "--r", "1.0"}).code == 1);
  CHECK(call({"validate", "--r", "0.2", "--r-im", "0.1"}).code == 1);
  // A tolerance no estimate can meet.
  CHECK(call({"validate", "--r", "0.5", "--n", "1000", "--tol", "0"}).code == 1);
}

TEST_CASE("PCC_SEED sets the default seed") {
  ::setenv("PCC_SEED", "42", 1);
  const auto env = call({"validate", "--r", "0.3", "--n", "10000"});
  ::unsetenv("PCC_SEED");
  const auto flag = call({"validate", "--r", "0.3", "--n", "10000", "--seed", "42"});
  const auto dflt = call({"validate", "--r", "0.3", "--n", "10000"});
  CHECK(env.out == flag.out);
  CHECK(env.json()["seed"] == 42);
  CHECK(dflt.json()["seed"] == 1);
  ::setenv("PCC_SEED", "abc", 1);
  CHECK(call({"validate", "--r", "0.3", "--n", "100"}).code == 1);
  ::unsetenv("PCC_SEED");
}

TEST_CASE("emitted doubles round-trip exactly") {
  const auto r = call({"validate", "--complex", "--r", "0.3", "--r-im", "0.4", "--n", "1000", "--seed", "9"});
  const auto j = r.json();
  const double v = j["recovered"][0].get<double>();
  CHECK(nlohmann::json(v).dump() == number(v));
  const auto lines = call({"counterexample", "--p", "4"}).out;
  CHECK(lines.find("0.7071067811865475") != std::string::npos);
  CHECK(std::stod("0.7071067811865475") == kA);
}

TEST_CASE("output is byte-identical across worker counts") {
  const TempFile f("det.csv", kTable1Csv);
  CHECK(call({"estimate", f.str(), "--workers", "1"}).out == call({"estimate", f.str(), "--workers", "3"}).out);
  const auto e1 = call({"enumerate", "--p", "4", "--n", "4", "--workers", "1"});
  const auto e2 = call({"enumerate", "--p", "4", "--n", "4", "--workers", "4"});
  CHECK(e1.out == e2.out);
  const auto v1 = call({"validate", "--complex", "--r", "0.1", "--n", "50000", "--workers", "1"});
  const auto v2 = call({"validate", "--complex", "--r", "0.1", "--n", "50000", "--workers", "2"});
  CHECK(v1.out == v2.out);
}
