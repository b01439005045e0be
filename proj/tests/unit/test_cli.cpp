#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "flagcurv/cli/commands.hpp"

using namespace flagcurv;
using namespace flagcurv::cli;

namespace {

std::filesystem::path fixture(const std::string& name) { return std::filesystem::path(FLAGCURV_FIXTURE_DIR) / name; }
std::filesystem::path data(const std::string& name) { return std::filesystem::path(FLAGCURV_TEST_DATA_DIR) / name; }

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::Numerical;
}

std::string message_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

std::vector<Json> json_lines(const std::string& text) {
  std::vector<Json> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(Json::parse(line));
  return out;
}

Json find(const std::vector<Json>& lines, const std::string& record, const std::string& key = "",
          const std::string& value = "") {
  for (const auto& j : lines)
    if (j["record"] == record && (key.empty() || j[key] == value)) return j;
  FAIL("record not found: " << record);
  return {};
}

}  // namespace

TEST_CASE("every shipped fixture loads and validates") {
  for (const auto& entry : std::filesystem::directory_iterator(FLAGCURV_FIXTURE_DIR)) {
    CAPTURE(entry.path().string());
    const Problem p = load(entry.path());
    const auto lines = json_lines(cmd_validate(p, Format::Json));
    CHECK(find(lines, "status")["valid"] == true);
    CHECK(find(lines, "run")["input_digest"].get<std::string>().rfind("fnv1a64:", 0) == 0);
  }
}

TEST_CASE("bad inputs name the failing invariant") {
  CHECK(kind_of([] { load(data("drift_norm_1.2.json")); }) == ErrorKind::Input);
  CHECK(message_of([] { load(data("drift_norm_1.2.json")); }).find("strong convexity") != std::string::npos);
  CHECK(kind_of([] { load(data("broken_jacobi.json")); }) == ErrorKind::Input);
  CHECK(message_of([] { load(data("broken_jacobi.json")); }).find("jacobi_defect=1 exceeds 1e-10") !=
        std::string::npos);
  CHECK(kind_of([] { load("/nonexistent/problem.json"); }) == ErrorKind::Input);
  CHECK(kind_of([] { load_from_string("{"); }) == ErrorKind::Input);
  CHECK(kind_of([] { load_from_string(R"({"dim": 2, "bogus": 1})"); }) == ErrorKind::Input);
  CHECK(kind_of([] { load_from_string(R"({"dim": 2, "phi": "identity", "metric": [[1,0],[0,1]]})"); }) ==
        ErrorKind::Input);
  CHECK(kind_of([] { load_from_string(R"({"dim": 2, "brackets": [{"i": 1, "j": 0, "terms": [[0, 1]]}]})"); }) ==
        ErrorKind::Input);
  CHECK(kind_of([] { load_from_string(R"({"dim": 2, "drift": [0.1]})"); }) == ErrorKind::Input);
  CHECK(kind_of([] { load_from_string(R"({"dim": 2, "g0": "ones"})"); }) == ErrorKind::Input);
  CHECK(kind_of([] { load_from_string(R"({"dim": 3, "subalgebra": [5]})"); }) == ErrorKind::Input);
}

TEST_CASE("metric given directly resolves to phi") {
  const Problem p = load_from_string(R"({"dim": 2, "g0": [[2,0],[0,1]], "metric": [[4,0],[0,3]]})");
  CHECK(p.space().metric().phi()(0, 0) == 2.0);
  CHECK(p.space().metric().phi()(1, 1) == 3.0);
}

TEST_CASE("serialize round trip is bit-identical") {
  for (const auto& entry : std::filesystem::directory_iterator(FLAGCURV_FIXTURE_DIR)) {
    CAPTURE(entry.path().string());
    const Problem a = load(entry.path());
    const Problem b = load_from_string(serialize(a));
    CHECK(a.space().algebra().table().c == b.space().algebra().table().c);
    CHECK(a.space().metric().g0() == b.space().metric().g0());
    CHECK(a.space().metric().phi() == b.space().metric().phi());
    CHECK(a.structure().drift() == b.structure().drift());
    CHECK(a.space().split().projector_m() == b.space().split().projector_m());
    CHECK(serialize(a) == serialize(b));
  }
  const Problem awkward = load_from_string(
      R"({"dim": 2, "g0": [[3,0.1],[0.1,1]], "metric": [[0.7,0.3],[0.3,2.0000000000000004]], "drift": [0.1, 0.2]})");
  const Problem again = load_from_string(serialize(awkward));
  CHECK(awkward.space().metric().phi() == again.space().metric().phi());
  CHECK(awkward.space().metric().inner_matrix() == again.space().metric().inner_matrix());
}

TEST_CASE("csv vectors") {
  CHECK(parse_csv_vector("1,0, -2.5,1e-3", 4) == Vector(Eigen::Vector4d(1, 0, -2.5, 1e-3)));
  CHECK(kind_of([] { parse_csv_vector("1,2", 3); }) == ErrorKind::Usage);
  CHECK(kind_of([] { parse_csv_vector("1,x,3", 3); }) == ErrorKind::Usage);
  CHECK(kind_of([] { parse_csv_vector("1,2x,3", 3); }) == ErrorKind::Usage);
}

TEST_CASE("exit codes") {
  CHECK(exit_code_for(Error(ErrorKind::Input, "")) == 1);
  CHECK(exit_code_for(Error(ErrorKind::Degeneracy, "")) == 1);
  CHECK(exit_code_for(Error(ErrorKind::Usage, "")) == 2);
  CHECK(exit_code_for(Error(ErrorKind::Numerical, "")) == 3);
}

TEST_CASE("flag command on u2") {
  const Problem p = load(fixture("u2.json"));
  const auto a = json_lines(cmd_flag(p, parse_csv_vector("1,0,0,0", 4), parse_csv_vector("0,1,0,0", 4), Format::Json));
  CHECK(find(a, "flag_curvature")["k_oracle"].get<double>() == doctest::Approx(0.25).epsilon(1e-12));
  const auto b = json_lines(cmd_flag(p, parse_csv_vector("1,0,0,1", 4), parse_csv_vector("0,1,0,0", 4), Format::Json));
  const Json k = find(b, "flag_curvature");
  CHECK(k["k_corrected"].get<double>() == doctest::Approx(0.068227).epsilon(1e-6));
  CHECK(k["k_printed_signed"].get<double>() == doctest::Approx(0.142857).epsilon(1e-6));
  // the actual flag used is echoed
  const Json f = find(b, "flag");
  CHECK(f["y"][0].get<double>() == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(f["y_input"][0].get<double>() == 1.0);
}

TEST_CASE("flag command on abelian3 is all zeros") {
  const Problem p = load(fixture("abelian3.json"));
  const auto a = json_lines(cmd_flag(p, parse_csv_vector("1,0,0", 3), parse_csv_vector("0,1,1", 3), Format::Json));
  const Json k = find(a, "flag_curvature");
  CHECK(k["k_oracle"].get<double>() == 0.0);
  CHECK(k["k_printed"].get<double>() == 0.0);
  CHECK(k["k_corrected"].get<double>() == 0.0);
  CHECK(find(a, "blocks")["theta"]["value"].get<double>() == 0.0);
}

TEST_CASE("check command predicates") {
  const Problem u2 = load(fixture("u2.json"));
  const Problem su2 = load(fixture("su2.json"));
  CHECK(find(json_lines(cmd_check(u2, "berwald", {}, Format::Json)), "berwald")["is_berwald"] == true);
  CHECK(find(json_lines(cmd_check(su2, "perfect", {}, Format::Json)), "perfect")["is_perfect"] == true);
  CheckOptions k;
  k.k = 0.25;
  const auto ys = json_lines(cmd_check(u2, "ys-positive", k, Format::Json));
  CHECK(find(ys, "ys_check")["verdict"] == "FAIL");
  CHECK(find(ys, "bullet", "name", "non-parallel Killing")["pass"] == false);
  CHECK(kind_of([&] { cmd_check(u2, "ys-positive", {}, Format::Json); }) == ErrorKind::Usage);
  CHECK(kind_of([&] { cmd_check(u2, "nonsense", {}, Format::Json); }) == ErrorKind::Usage);
  CheckOptions m;
  m.x = Vector::Unit(4, 2);
  m.samples = 200;
  CHECK(find(json_lines(cmd_check(u2, "milnor", m, Format::Json)), "milnor")["verdict"] == "PASS");
  CHECK(find(json_lines(cmd_check(su2, "constant", {}, Format::Json)), "constant_curvature")["is_constant"] == true);
}

TEST_CASE("compare reports the known gaps") {
  const auto ab = json_lines(cmd_compare(load(fixture("abelian3.json")), 100, 1, Format::Json));
  for (const auto& j : ab)
    if (j["record"] == "discrepancy" && j["count"].get<int>() > 0 && j["formula"] != "determinant_printed")
      CHECK(j["max"].get<double>() == 0.0);

  const auto su2 = json_lines(cmd_compare(load(fixture("su2.json")), 100, 1, Format::Json));
  CHECK(find(su2, "discrepancy", "formula", "gamma_proof_form")["mean"].get<double>() ==
        doctest::Approx(0.5).epsilon(1e-12));
  CHECK(find(su2, "discrepancy", "formula", "k_corrected")["max"].get<double>() <= 1e-12);

  const auto u2 = json_lines(cmd_compare(load(fixture("u2.json")), 100, 1, Format::Json));
  CHECK(find(u2, "discrepancy", "formula", "determinant_printed")["max"].get<double>() > 0.1);
  CHECK(find(u2, "discrepancy", "formula", "k_corrected")["max"].get<double>() <= 1e-12);
  CHECK(find(u2, "discrepancy", "formula", "puttmann_mapped")["max"].get<double>() <= 1e-12);
}

TEST_CASE("table and json carry the same numbers") {
  const Problem p = load(fixture("u2.json"));
  const std::string table = cmd_scan(p, 50, 3, Format::Table, 2);
  for (const auto& j : json_lines(cmd_scan(p, 50, 3, Format::Json, 2))) {
    if (j["record"] != "scan") continue;
    CHECK(table.find(j["mean"].dump()) != std::string::npos);
    CHECK(table.find(j["histogram"].dump()) != std::string::npos);
  }
}

TEST_CASE("scan and compare output is independent of the thread count") {
  const Problem p = load(fixture("u2.json"));
  CHECK(cmd_scan(p, 300, 9, Format::Json, 1) == cmd_scan(p, 300, 9, Format::Json, 8));
  CHECK(cmd_compare(p, 300, 9, Format::Json, 1) == cmd_compare(p, 300, 9, Format::Json, 8));
}
