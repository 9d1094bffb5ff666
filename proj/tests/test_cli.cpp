#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>

#include "specop/cli.hpp"

using namespace specop;
using namespace specop::cli;
using doctest::Approx;
using C = std::complex<double>;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> split_lines(const std::string& s) {
  std::vector<std::string> lines;
  std::istringstream is(s);
  for (std::string line; std::getline(is, line);)
    if (!line.empty()) lines.push_back(line);
  return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::istringstream is(line);
  for (std::string c; std::getline(is, c, ',');) cells.push_back(c);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

}  // namespace

TEST_CASE("space parsing") {
  SpaceSpec s = parse_space("bergman:-1");
  CHECK(s.family == "bergman");
  CHECK(s.alpha == -1.0);
  CHECK(s.text() == "bergman:-1");
  s = parse_space("dirichlet-pow:0.5");
  CHECK(s.family == "dirichlet-pow");
  CHECK(s.alpha == 0.5);
  CHECK(s.weight().omega(3) == Approx(2.0).epsilon(1e-15));
  CHECK_THROWS_AS(parse_space("bergman"), UsageError);
  CHECK_THROWS_AS(parse_space("bergman:1"), UsageError);
  CHECK_THROWS_AS(parse_space("bergman:abc"), UsageError);
  CHECK_THROWS_AS(parse_space("sobolev:1"), UsageError);
}

TEST_CASE("complex literal parsing") {
  CHECK(parse_complex("0.5") == C(0.5, 0));
  CHECK(parse_complex("-2") == C(-2, 0));
  CHECK(parse_complex("0.3+0.4i") == C(0.3, 0.4));
  CHECK(parse_complex("0.3-0.4i") == C(0.3, -0.4));
  CHECK(parse_complex("1e-3+2e-1i") == C(1e-3, 0.2));
  CHECK(parse_complex("2i") == C(0, 2));
  CHECK(parse_complex("i") == C(0, 1));
  CHECK(parse_complex("-i") == C(0, -1));
  const C polar = parse_complex("0.7@1.0471975511965976");
  CHECK(std::abs(polar - std::polar(0.7, std::numbers::pi / 3)) < 1e-15);
  CHECK_THROWS_AS(parse_complex(""), UsageError);
  CHECK_THROWS_AS(parse_complex("abc"), UsageError);
  CHECK_THROWS_AS(parse_complex("1+2"), UsageError);

  const auto list = parse_complex_list("0,1.4142136");
  REQUIRE(list.size() == 2);
  CHECK(list[1] == C(1.4142136, 0));
  CHECK(parse_real_list("-2,-1,0.25") == std::vector<double>{-2, -1, 0.25});
  CHECK_THROWS_AS(parse_real_list("1,,2"), UsageError);
}

TEST_CASE("spectrum exit codes") {
  Run r = run_cli({"spectrum", "--space", "bergman:-1", "--a", "0.5", "--n", "500", "--jmax", "3"});
  CHECK(r.code == kSuccess);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["success"] == true);
  REQUIRE(j["matches"].size() == 4);
  for (const auto& m : j["matches"]) CHECK(m["delta"].get<double>() < 1e-6);

  r = run_cli({"spectrum", "--space", "bergman:0", "--a", "2", "--n", "400"});
  CHECK(r.code == kSuccess);
  j = nlohmann::json::parse(r.out);
  CHECK(j["section"]["below"].empty());
  CHECK(j["section"]["above"].empty());
  CHECK(j["essential"][0] == 1.0);
  CHECK(j["essential"][1] == 9.0);

  r = run_cli({"spectrum", "--space", "bergman:-1", "--a", "1.0", "--n", "400"});
  CHECK(r.code == kSuccess);
  j = nlohmann::json::parse(r.out);
  CHECK(j["section"]["below"].empty());
  CHECK(j["section"]["above"].empty());
  CHECK(j["essential"][0] == 0.0);
  CHECK(j["essential"][1] == 4.0);
  bool noted = false;
  for (const auto& n : j["notes"]) noted |= n.get<std::string>().find("0 is in the spectrum") != std::string::npos;
  CHECK(noted);

  // too small a section cannot resolve the eigenvalues to 1e-8
  r = run_cli({"spectrum", "--space", "bergman:-1", "--a", "0.5", "--n", "50", "--jmax", "1"});
  CHECK(r.code == kVerificationFailed);
  CHECK_FALSE(r.err.empty());

  CHECK(run_cli({"spectrum", "--no-such-flag"}).code == kUsage);
  CHECK(run_cli({"spectrum", "--space", "bergman:2"}).code == kUsage);
  CHECK(run_cli({"spectrum", "--a", "zz"}).code == kUsage);
  CHECK(run_cli({"spectrum", "--n", "0"}).code == kUsage);
  CHECK(run_cli({"spectrum", "--format", "xml"}).code == kUsage);
  CHECK(run_cli({}).code == kUsage);
  CHECK(run_cli({"--help"}).code == kSuccess);
}

TEST_CASE("JSON report round-trips to bit-identical eigenvalues") {
  SpectrumOptions o;
  o.space = parse_space("bergman:0.5");
  o.a = parse_complex("2@0.4");
  o.n = 300;
  o.jmax = 2;
  const SpectralReport first = build_spectrum_report(o);
  const nlohmann::json j = nlohmann::json::parse(to_json(first).dump());
  const SpectrumOptions back = options_from_json(j);
  CHECK(back.space.text() == o.space.text());
  CHECK(back.a == o.a);
  CHECK(back.n == o.n);
  CHECK(back.jmax == o.jmax);
  const SpectralReport second = build_spectrum_report(back);
  REQUIRE(second.section.eigenvalues.size() == first.section.eigenvalues.size());
  for (std::size_t k = 0; k < first.section.eigenvalues.size(); ++k)
    CHECK(second.section.eigenvalues[k] == first.section.eigenvalues[k]);
  CHECK(second.run_id == first.run_id);
  // the JSON numbers themselves survive the text round-trip exactly
  for (std::size_t k = 0; k < first.section.eigenvalues.size(); ++k)
    CHECK(j["section"]["eigenvalues"][k].get<double>() == first.section.eigenvalues[k]);
}

TEST_CASE("CSV layout") {
  const Run r = run_cli({"spectrum", "--space", "bergman:-1", "--a", "0.5", "--n", "300", "--jmax", "1", "--format",
                         "csv", "--tol", "1e-4"});
  CHECK(r.code == kSuccess);
  const auto lines = split_lines(r.out);
  REQUIRE(lines.size() > 3);
  CHECK(lines[0] == "run_id,alpha,a_mod,a_phase,kind,j,branch,value");
  int essential = 0, predicted = 0, section = 0, residual = 0;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto cells = split_csv(lines[k]);
    REQUIRE(cells.size() == 8);
    const std::string& kind = cells[4];
    essential += kind == "essential_lo" || kind == "essential_hi";
    predicted += kind == "predicted";
    section += kind == "section";
    residual += kind == "residual";
    CHECK(std::isfinite(std::stod(cells[7])));
  }
  CHECK(essential == 2);
  CHECK(predicted == 2);
  CHECK(section == 300);
  CHECK(residual == 2);
  // 17 significant digits
  CHECK(r.out.find("0.20096189432334202") != std::string::npos);
}

TEST_CASE("complex a rotates but keeps the section spectrum") {
  SpectrumOptions o;
  o.n = 200;
  o.a = 0.7;
  const SpectralReport real_a = build_spectrum_report(o);
  o.a = std::polar(0.7, std::numbers::pi / 3);
  const SpectralReport rotated = build_spectrum_report(o);
  CHECK(rotated.a_phase == Approx(std::numbers::pi / 3));
  CHECK(rotated.section.eigenvalues == real_a.section.eigenvalues);
}

TEST_CASE("verify") {
  CHECK(run_cli({"verify"}).code == kSuccess);
  CHECK(run_cli({"verify", "--alphas", "0.99", "--as", "10"}).code == kSuccess);
  const Run bad = run_cli({"verify", "--perturb", "1e-3"});
  CHECK(bad.code == kVerificationFailed);
  const auto j = nlohmann::json::parse(bad.out);
  CHECK(j["failures"].size() <= 10);
  CHECK_FALSE(j["failures"].empty());

  VerifyOptions o;
  const VerifyResult res = run_verify(o);
  CHECK(res.failures.empty());
  CHECK(res.worst_coeff_dev < 1e-10);
  CHECK(res.worst_residual < 1e-8);
  CHECK(res.cases > 0);
}

TEST_CASE("sweep shows the transition at the unit circle") {
  const auto rows = run_sweep(parse_space("bergman:-1"), 0.5, 1.5, 11, 800, 5, 1e-6);
  REQUIRE(rows.size() == 11);
  for (const auto& r : rows) {
    if (r.a < 1.0 - 1e-12) {
      CHECK(r.outliers_below > 0);
      CHECK(r.minus_valid > 0);
    } else {
      CHECK(r.outliers_below + r.outliers_above == 0);
      CHECK(r.minus_valid + r.plus_valid == 0);
    }
  }

  const auto half = run_sweep(parse_space("bergman:0.5"), 0.5, 1.5, 11, 800, 5, 1e-6);
  for (const auto& r : half) {
    CHECK(r.plus_valid > 0);
    CHECK((r.minus_valid > 0) == (r.a > 1.0 + 1e-12));
  }

  for (const auto& r : run_sweep(parse_space("bergman:0"), 0.2, 3.0, 8, 400, 5, 1e-6)) {
    CHECK(r.minus_valid + r.plus_valid == 0);
    CHECK(r.outliers_below + r.outliers_above == 0);
  }
}

TEST_CASE("sweep output does not depend on the thread count") {
  const std::vector<std::string> args{"sweep", "--space", "bergman:0.25", "--a-min", "0.3", "--a-max", "2.5",
                                      "--steps", "9", "--n", "300"};
  ::setenv("SPECOP_THREADS", "1", 1);
  const Run serial = run_cli(args);
  ::setenv("SPECOP_THREADS", "4", 1);
  const Run parallel = run_cli(args);
  ::unsetenv("SPECOP_THREADS");
  CHECK(serial.code == kSuccess);
  CHECK(serial.out == parallel.out);
  const auto lines = split_lines(serial.out);
  REQUIRE(lines.size() == 10);
  CHECK(lines[0] == "alpha,a,minus_valid,plus_valid,outliers_below,outliers_above");
}

TEST_CASE("inner") {
  Run r = run_cli({"inner", "--space", "bergman:-1", "--poly", "0,1.4142136"});
  CHECK(r.code == kSuccess);
  CHECK(nlohmann::json::parse(r.out)["verdict"] == "inner");
  r = run_cli({"inner", "--space", "bergman:-1", "--poly", "1"});
  CHECK(nlohmann::json::parse(r.out)["verdict"] == "inner");
  r = run_cli({"inner", "--space", "bergman:-1", "--poly", "0.5,-1"});
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["verdict"] == "not inner");
  CHECK(j["V_f_1"][1]["re"].get<double>() == Approx(-0.5).epsilon(1e-15));
  CHECK(run_cli({"inner", "--space", "bergman:-1", "--poly", "1,x"}).code == kUsage);
  CHECK(run_cli({"inner", "--space", "bergman:-1"}).code == kUsage);
}

TEST_CASE("dirichlet") {
  Run r = run_cli({"dirichlet", "--alpha", "1", "--a", "0.5", "--lambda", "0.1"});
  CHECK(r.code == kSuccess);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["candidate_vs_recurrence_max_rel_deviation"].get<double>() < 1e-8);
  CHECK(j["ode_residual"]["max_rel"].get<double>() < 1e-10);
  CHECK(std::abs(j["params"]["mu_plus_nu"]["re"].get<double>() - 1.0) < 1e-12);

  r = run_cli({"dirichlet", "--alpha", "1", "--a", "1", "--lambda", "0"});
  CHECK(r.code == kDegenerate);
  CHECK(r.err.find("degenerate") != std::string::npos);

  r = run_cli({"dirichlet", "--alpha", "1", "--a", "0.5", "--lambda", "0.1", "--norm-terms", "2000"});
  CHECK(r.code == kSuccess);
  j = nlohmann::json::parse(r.out);
  const auto& s = j["diagnostic"]["log10_partial_norms"];
  REQUIRE(s.size() == 2000);
  for (std::size_t n = 1; n < s.size(); ++n) CHECK(s[n].get<double>() >= s[n - 1].get<double>());

  CHECK(run_cli({"dirichlet", "--alpha", "-1", "--a", "0.5", "--lambda", "0.1"}).code == kUsage);
}
