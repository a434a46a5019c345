#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "splitstep/checks.hpp"
#include "splitstep/config.hpp"
#include "splitstep/dft.hpp"
#include "splitstep/experiment.hpp"
#include "splitstep/report_io.hpp"
#include "splitstep/sweep.hpp"
#include "splitstep/verify.hpp"

using namespace splitstep;
using nlohmann::json;

namespace {

json cubic_fixture_json() {
  return json::parse(R"({
    "name": "fixture", "equation": "cubic", "sigma": 1, "K": 4,
    "step": {"p": 1, "q": 2, "power": 1},
    "initial": {"fourier": [{"mode": 0, "re": 1}, {"mode": -2, "re": "1/2"}]},
    "n_steps": 20
  })");
}

json sharp_cfl_json() {
  return json::parse(R"({
    "name": "sharp_cfl", "equation": "cubic", "sigma": 1, "K": 16,
    "step": {"p": 1, "q": 8, "power": 2},
    "initial": {"fourier": [{"mode": 0, "re": 1}, {"harmonic": -1, "re": "1/10"}]},
    "n_steps": "horizon"
  })");
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("splitstep_test_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

std::size_t line_count(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

}  // namespace

TEST(Config, ParsesFixture) {
  const ExperimentConfig c = ExperimentConfig::from_json(cubic_fixture_json());
  EXPECT_EQ(c.modes, 4);
  EXPECT_EQ(c.equation, Equation::kCubic);
  ASSERT_TRUE(c.rational_step.has_value());
  EXPECT_DOUBLE_EQ(c.step().tau(), M_PI);
  const PhysicalState u = c.initial_state();
  EXPECT_NEAR(std::abs(u[-2] - Complex(1.5)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(u[-1] - Complex(0.5)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(u[0] - Complex(1.5)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(u[1] - Complex(0.5)), 0.0, 1e-15);
}

TEST(Config, HarmonicAndHorizon) {
  const ExperimentConfig c = ExperimentConfig::from_json(sharp_cfl_json());
  EXPECT_FALSE(c.n_steps.has_value());
  const SpectralState v = forward_dft(c.initial_state());
  EXPECT_NEAR(std::abs(v[-8] - Complex(0.1)), 0.0, 1e-15);
}

TEST(Config, Errors) {
  auto bad = [](auto edit) {
    json j = cubic_fixture_json();
    edit(j);
    return j;
  };
  EXPECT_THROW(ExperimentConfig::from_json(bad([](json& j) { j["K"] = 5; })), ConfigError);
  EXPECT_THROW(ExperimentConfig::from_json(bad([](json& j) { j["K"] = 2; })), ConfigError);
  EXPECT_THROW(ExperimentConfig::from_json(bad([](json& j) { j["equation"] = "quintic"; })), ConfigError);
  EXPECT_THROW(ExperimentConfig::from_json(bad([](json& j) { j["sigma"] = 2; })), ConfigError);
  EXPECT_THROW(ExperimentConfig::from_json(bad([](json& j) { j["n_steps"] = -1; })), ConfigError);
  EXPECT_THROW(ExperimentConfig::from_json(bad([](json& j) { j["step"] = json::object(); })), ConfigError);
  EXPECT_THROW(ExperimentConfig::from_json(bad([](json& j) { j["step"]["q"] = 0; })), ConfigError);
  EXPECT_THROW(ExperimentConfig::from_json(bad([](json& j) { j["splitting"] = "yoshida"; })), ConfigError);
  EXPECT_THROW(ExperimentConfig::from_json(bad([](json& j) { j["tolerances"] = {{"nope", 1.0}}; })), ConfigError);
  EXPECT_THROW(ExperimentConfig::from_json(bad([](json& j) { j.erase("K"); })), ConfigError);
  EXPECT_THROW(ExperimentConfig::from_json(bad([](json& j) { j["initial"]["fourier"][0]["mode"] = 9; })),
               ConfigError);
  try {
    ExperimentConfig::from_json(bad([](json& j) { j["K"] = 5; }));
  } catch (const ConfigError& e) {
    EXPECT_NE(e.field().find("K"), std::string::npos);
  }
  EXPECT_THROW(load_config("/nonexistent/config.json"), ConfigError);
}

TEST(Config, ParseReal) {
  EXPECT_DOUBLE_EQ(parse_real(json("-1/2"), "x"), -0.5);
  EXPECT_DOUBLE_EQ(parse_real(json("0.25"), "x"), 0.25);
  EXPECT_DOUBLE_EQ(parse_real(json(3), "x"), 3.0);
  EXPECT_THROW(parse_real(json("1/0"), "x"), ConfigError);
  EXPECT_THROW(parse_real(json("abc"), "x"), ConfigError);
}

TEST(Config, Tolerances) {
  ExperimentConfig c = ExperimentConfig::from_json(cubic_fixture_json());
  EXPECT_DOUBLE_EQ(c.tolerance("l2_drift"), default_tolerances().at("l2_drift"));
  c.set_tolerance("l2_drift", 1e-3);
  EXPECT_DOUBLE_EQ(c.tolerance("l2_drift"), 1e-3);
  EXPECT_THROW(c.set_tolerance("unknown", 1.0), ConfigError);
  EXPECT_THROW(c.tolerance("unknown"), ConfigError);
}

TEST(Config, JsonRoundTrip) {
  const ExperimentConfig c = ExperimentConfig::from_json(sharp_cfl_json());
  const ExperimentConfig d = ExperimentConfig::from_json(c.to_json());
  EXPECT_EQ(c.to_json(), d.to_json());
}

TEST(FitLine, Examples) {
  std::vector<double> x, y;
  for (int n = 0; n < 10; ++n) {
    x.push_back(0.1 * n);
    y.push_back(3 * 0.1 * n + 1);
  }
  const LineFit f = fit_line(x, y);
  EXPECT_NEAR(f.slope, 3.0, 1e-12);
  EXPECT_NEAR(f.intercept, 1.0, 1e-12);
  EXPECT_NEAR(f.residual, 0.0, 1e-12);
  std::vector<double> flat(10, 2.0);
  EXPECT_NEAR(fit_line(x, flat).slope, 0.0, 1e-15);
  EXPECT_THROW(fit_line(std::vector<double>{1.0}, std::vector<double>{1.0}), std::invalid_argument);
  EXPECT_THROW(fit_line(flat, x), std::invalid_argument);
}

TEST(Experiment, FixtureIsResonant) {
  const ExperimentConfig c = ExperimentConfig::from_json(cubic_fixture_json());
  const ExperimentResult r = run_experiment(c);
  EXPECT_EQ(r.summary.classification.kind, Classification::kResonant);
  EXPECT_NEAR(r.summary.cfl, 16 * M_PI, 1e-12);
  EXPECT_EQ(r.trajectory.records.size(), 21u);
  ASSERT_TRUE(r.summary.closed_form_error.has_value());
  EXPECT_LE(*r.summary.closed_form_error, 1e-12);
  EXPECT_LE(r.summary.l2_relative_variation, 1e-13);
}

TEST(Experiment, SharpCflConfig) {
  const ExperimentResult r = run_experiment(ExperimentConfig::from_json(sharp_cfl_json()));
  EXPECT_NEAR(r.summary.cfl, 8 * M_PI, 1e-12);
  EXPECT_EQ(r.summary.classification.kind, Classification::kResonant);
  ASSERT_TRUE(r.summary.bounds.horizon_steps.has_value());
  EXPECT_EQ(r.summary.n_steps, *r.summary.bounds.horizon_steps);
  ASSERT_TRUE(r.summary.h1_bound_margin.has_value());
  EXPECT_GE(*r.summary.h1_bound_margin, 0.0);
}

TEST(Experiment, ZeroSteps) {
  json j = cubic_fixture_json();
  j["n_steps"] = 0;
  const ExperimentResult r = run_experiment(ExperimentConfig::from_json(j));
  ASSERT_EQ(r.trajectory.records.size(), 1u);
  EXPECT_EQ(r.trajectory.records[0].n, 0);
  EXPECT_FALSE(r.summary.drift_fit.has_value());
}

TEST(Experiment, FloatStepIsNotClaimed) {
  json j = cubic_fixture_json();
  j["step"] = {{"tau", M_PI}};
  const ExperimentConfig c = ExperimentConfig::from_json(j);
  const ExperimentResult r = run_experiment(c);
  EXPECT_EQ(r.summary.classification.kind, Classification::kNonResonant);
  for (const auto& rec : r.trajectory.records) {
    EXPECT_FALSE(rec.h1_lower_bound.has_value());
    EXPECT_FALSE(rec.membership_defect.has_value());
  }
  const auto checks = run_checks(c, r);
  bool saw = false;
  for (const auto& ch : checks) {
    if (ch.name == "run.h1_drift_bound") {
      saw = true;
      EXPECT_EQ(ch.status, CheckStatus::kNotClaimed);
    }
    EXPECT_NE(ch.status, CheckStatus::kFail) << ch.name;
  }
  EXPECT_TRUE(saw);
}

TEST(Experiment, StepOnlyResonance) {
  json j = cubic_fixture_json();
  j["K"] = 8;
  j["initial"] = json::parse(R"({"fourier": [{"mode": 0, "re": 1}, {"mode": 1, "re": "1/2"}]})");
  const ExperimentResult r = run_experiment(ExperimentConfig::from_json(j));
  EXPECT_EQ(r.summary.classification.kind, Classification::kResonantStepOnly);
  EXPECT_FALSE(r.summary.closed_form_error.has_value());
  EXPECT_TRUE(r.trajectory.records.back().membership_defect.has_value());
}

TEST(Experiment, ClosedFormMatchesOneStep) {
  const ExperimentConfig c = ExperimentConfig::from_json(cubic_fixture_json());
  const PhysicalState u0 = c.initial_state();
  const PhysicalState a = lie_step(u0, c.step(), c.model());
  const PhysicalState b = closed_form(c.model(), u0, c.step(), 1);
  for (int k = -2; k <= 1; ++k) EXPECT_NEAR(std::abs(a[k] - b[k]), 0.0, 1e-14);
}

TEST(ReportIo, CsvShape) {
  const ExperimentConfig c = ExperimentConfig::from_json(cubic_fixture_json());
  const ExperimentResult r = run_experiment(c);
  const std::string csv = csv_string(r.trajectory);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), kCsvHeader);
  EXPECT_EQ(line_count(csv), r.trajectory.records.size() + 1);
  Trajectory empty{c.initial_state(), 1.0, {}};
  EXPECT_EQ(csv_string(empty), std::string(kCsvHeader) + "\n");
  EXPECT_EQ(format_real(0.1), "0.10000000000000001");
}

TEST(ReportIo, WriteFailureNamesTheCause) {
  const auto dir = scratch("blocked");
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "file") << "x";
  EXPECT_THROW(write_text(dir / "file" / "child.csv", "x"), std::runtime_error);
}

TEST(ReportIo, DeterministicAndReproducible) {
  const auto dir = scratch("determinism");
  const ExperimentConfig c = ExperimentConfig::from_json(sharp_cfl_json());
  const ExperimentResult a = run_experiment(c);
  const ExperimentResult b = run_experiment(c);
  emit_csv(a.trajectory, dir / "a.csv");
  emit_csv(b.trajectory, dir / "b.csv");
  emit_json(a.summary, dir / "a.json");
  emit_json(b.summary, dir / "b.json");
  EXPECT_EQ(read_file(dir / "a.csv"), read_file(dir / "b.csv"));
  EXPECT_EQ(read_file(dir / "a.json"), read_file(dir / "b.json"));
  const json echoed = json::parse(read_file(dir / "a.json")).at("config");
  const ExperimentResult c2 = run_experiment(ExperimentConfig::from_json(echoed));
  EXPECT_EQ(csv_string(c2.trajectory), read_file(dir / "a.csv"));
}

TEST(Verify, FaultInjectedTransformFailsParseval) {
  SuiteOptions o;
  o.samples = 20;
  o.forward_transform = [](const PhysicalState& u) {
    SpectralState v = forward_dft(u);
    std::vector<Complex> vals(v.values().begin(), v.values().end());
    vals[0] *= 1.01;
    return SpectralState(u.grid(), std::move(vals));
  };
  VerificationReport rep;
  rep.append(invariant_checks(o));
  ASSERT_NE(rep.find("parseval"), nullptr);
  EXPECT_EQ(rep.find("parseval")->status, CheckStatus::kFail);
  EXPECT_FALSE(rep.passed());
  SuiteOptions clean;
  clean.samples = 20;
  VerificationReport ok;
  ok.append(invariant_checks(clean));
  EXPECT_TRUE(ok.passed()) << ok.render();
}

TEST(Verify, BrokenConfigBecomesFailedCheck) {
  json j = cubic_fixture_json();
  j["initial"] = json::parse(R"({"fourier": [{"mode": 0, "re": 1e300}]})");
  j["n_steps"] = 3;
  VerifyOptions o;
  o.include_acceptance = false;
  o.include_invariants = false;
  const VerificationReport rep = verify_suite(ExperimentConfig::from_json(j), o);
  EXPECT_FALSE(rep.passed());
}

TEST(Verify, FixtureRunChecksPass) {
  VerifyOptions o;
  o.include_acceptance = false;
  o.include_invariants = false;
  const VerificationReport rep = verify_suite(ExperimentConfig::from_json(sharp_cfl_json()), o);
  EXPECT_TRUE(rep.passed()) << rep.render();
  EXPECT_EQ(rep.to_json().at("checks").size(), rep.checks.size());
}

TEST(Sweep, OrderAndNames) {
  json j = sharp_cfl_json();
  j.erase("K");
  j["sweep"] = json::parse(R"({"q": [4, 8], "p": [1, 3], "power": [1, 2], "kappa": [2]})");
  const ExperimentConfig c = ExperimentConfig::from_json(j);
  const auto runs = expand_sweep(c);
  ASSERT_EQ(runs.size(), 8u);
  EXPECT_EQ(runs[0].rational_step->p(), 1);
  EXPECT_EQ(runs[1].rational_step->p(), 3);
  EXPECT_EQ(runs[0].modes, 8);
  EXPECT_EQ(runs[7].modes, 16);
  for (const auto& r : runs) EXPECT_FALSE(r.sweep.has_value());
  const auto rows = run_sweep(c, 3);
  const auto serial = run_sweep(c, 1);
  ASSERT_EQ(rows.size(), runs.size());
  EXPECT_EQ(sweep_csv(rows), sweep_csv(serial));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].q, runs[i].rational_step->q());
    EXPECT_TRUE(rows[i].error.empty()) << rows[i].error;
  }
}
