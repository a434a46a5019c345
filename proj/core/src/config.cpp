#include "splitstep/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace splitstep {

namespace {

using nlohmann::json;

const json& require(const json& j, const char* key, const std::string& field) {
  if (!j.is_object() || !j.contains(key)) {
    throw ConfigError(field + "/" + key, "required field is missing");
  }
  return j.at(key);
}

long long parse_integer(const json& j, const std::string& field) {
  if (!j.is_number_integer()) throw ConfigError(field, "expected an integer");
  return j.get<long long>();
}

FourierTerm parse_term(const json& t, const std::string& field, std::optional<long long> q) {
  if (!t.is_object()) throw ConfigError(field, "expected an object");
  FourierTerm term;
  if (t.contains("mode")) {
    term.mode = static_cast<int>(parse_integer(t.at("mode"), field + "/mode"));
  } else if (t.contains("harmonic")) {
    if (!q) throw ConfigError(field + "/harmonic", "needs a rational step to resolve q");
    term.mode = static_cast<int>(parse_integer(t.at("harmonic"), field + "/harmonic") * *q);
  } else {
    throw ConfigError(field, "term needs `mode` or `harmonic`");
  }
  const double re = t.contains("re") ? parse_real(t.at("re"), field + "/re") : 0.0;
  const double im = t.contains("im") ? parse_real(t.at("im"), field + "/im") : 0.0;
  term.coeff = Complex(re, im);
  return term;
}

int preset_mode(const json& j, const std::string& field, std::optional<long long> q) {
  if (j.contains("mode")) return static_cast<int>(parse_integer(j.at("mode"), field + "/mode"));
  if (j.contains("harmonic")) {
    if (!q) throw ConfigError(field + "/harmonic", "needs a rational step to resolve q");
    return static_cast<int>(parse_integer(j.at("harmonic"), field + "/harmonic") * *q);
  }
  throw ConfigError(field, "preset needs `mode` or `harmonic`");
}

double optional_real(const json& j, const char* key, const std::string& field, double fallback) {
  return j.contains(key) ? parse_real(j.at(key), field + "/" + key) : fallback;
}

}  // namespace

double parse_real(const json& j, const std::string& field) {
  if (j.is_number()) return j.get<double>();
  if (!j.is_string()) throw ConfigError(field, "expected a number or a \"p/q\" string");
  const std::string s = j.get<std::string>();
  const auto slash = s.find('/');
  try {
    std::size_t used = 0;
    if (slash == std::string::npos) {
      const double v = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument("trailing characters");
      return v;
    }
    const std::string num = s.substr(0, slash);
    const std::string den = s.substr(slash + 1);
    const double a = std::stod(num, &used);
    if (used != num.size()) throw std::invalid_argument("trailing characters");
    const double b = std::stod(den, &used);
    if (used != den.size()) throw std::invalid_argument("trailing characters");
    if (b == 0.0) throw ConfigError(field, "zero denominator in \"" + s + "\"");
    return a / b;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    throw ConfigError(field, "cannot parse \"" + s + "\" as a real or rational number");
  }
}

FunctionSpec parse_function_spec(const json& j, const std::string& field,
                                 std::optional<long long> q) {
  if (!j.is_object()) throw ConfigError(field, "expected a function description object");
  if (j.contains("fourier")) {
    const json& terms = j.at("fourier");
    if (!terms.is_array()) throw ConfigError(field + "/fourier", "expected an array of terms");
    std::vector<FourierTerm> out;
    for (std::size_t i = 0; i < terms.size(); ++i) {
      out.push_back(parse_term(terms[i], field + "/fourier/" + std::to_string(i), q));
    }
    return FunctionSpec(std::move(out));
  }
  if (j.contains("sum")) {
    const json& parts = j.at("sum");
    if (!parts.is_array()) throw ConfigError(field + "/sum", "expected an array");
    FunctionSpec total;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      total = total + parse_function_spec(parts[i], field + "/sum/" + std::to_string(i), q);
    }
    return total;
  }
  if (!j.contains("preset")) {
    throw ConfigError(field, "expected one of `fourier`, `sum` or `preset`");
  }
  const std::string preset = j.at("preset").get<std::string>();
  if (preset == "zero") return FunctionSpec{};
  if (preset == "constant") {
    return FunctionSpec({{0, Complex(optional_real(j, "value", field, 1.0), 0.0)}});
  }
  if (preset == "cosine" || preset == "sine") {
    const int mode = preset_mode(j, field, q);
    const double amplitude = optional_real(j, "amplitude", field, 1.0);
    const double offset = optional_real(j, "offset", field, 0.0);
    return preset == "cosine" ? FunctionSpec::cosine(mode, amplitude, offset)
                              : FunctionSpec::sine(mode, amplitude, offset);
  }
  if (preset == "plane_waves") {
    const json& waves = require(j, "waves", field);
    if (!waves.is_array()) throw ConfigError(field + "/waves", "expected an array");
    std::vector<FourierTerm> out;
    for (std::size_t i = 0; i < waves.size(); ++i) {
      out.push_back(parse_term(waves[i], field + "/waves/" + std::to_string(i), q));
    }
    return FunctionSpec::plane_waves(std::move(out));
  }
  throw ConfigError(field + "/preset", "unknown preset \"" + preset + "\"");
}

const std::map<std::string, double>& default_tolerances() {
  static const std::map<std::string, double> defaults = {
      {"l2_drift", 1e-11},          {"closed_form", 1e-10},
      {"bound_slack", 1e-9},        {"membership", 1e-12},
      {"commutator", 1e-12},        {"free_flow_identity", 1e-13},
      {"commutator_positive", 1e-2}, {"fit_residual_fraction", 0.05},
      {"cfl_drift_factor", 5.0},    {"control_growth_factor", 1.5},
      {"gn_stability", 0.10},       {"equivalence", 1e-12},
      {"roundtrip", 1e-12},         {"parseval", 1e-12},
      {"quadrature", 1e-8},
  };
  return defaults;
}

double ExperimentConfig::tolerance(const std::string& name) const {
  if (auto it = tolerances.find(name); it != tolerances.end()) return it->second;
  const auto& d = default_tolerances();
  if (auto it = d.find(name); it != d.end()) return it->second;
  throw ConfigError("tolerances/" + name, "unknown tolerance name");
}

void ExperimentConfig::set_tolerance(const std::string& name, double value) {
  if (!default_tolerances().contains(name)) {
    throw ConfigError("tolerances/" + name, "unknown tolerance name");
  }
  if (!(value >= 0.0) || !std::isfinite(value)) {
    throw ConfigError("tolerances/" + name, "must be a finite non-negative number");
  }
  tolerances[name] = value;
}

TimeStep ExperimentConfig::step() const {
  if (rational_step) return TimeStep(*rational_step);
  return TimeStep::real(real_tau);
}

FunctionSpec ExperimentConfig::potential_function() const {
  std::optional<long long> q;
  if (rational_step) q = rational_step->q();
  return parse_function_spec(potential_spec, "potential", q);
}

FunctionSpec ExperimentConfig::initial_function() const {
  std::optional<long long> q;
  if (rational_step) q = rational_step->q();
  return parse_function_spec(initial_spec, "initial", q);
}

ModelSpec ExperimentConfig::model() const {
  if (equation == Equation::kCubic) return CubicModel(sigma);
  try {
    return LinearModel::from_samples(sample_function(potential_function(), grid()));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError("potential", e.what());
  }
}

PhysicalState ExperimentConfig::initial_state() const {
  try {
    return sample_function(initial_function(), grid());
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError("initial", e.what());
  }
}

ExperimentConfig ExperimentConfig::from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("", "config must be a JSON object");
  ExperimentConfig c;
  if (j.contains("name")) c.name = j.at("name").get<std::string>();

  const std::string eq = require(j, "equation", "").get<std::string>();
  if (eq == "linear") {
    c.equation = Equation::kLinear;
  } else if (eq == "cubic") {
    c.equation = Equation::kCubic;
  } else {
    throw ConfigError("/equation", "expected \"linear\" or \"cubic\", got \"" + eq + "\"");
  }
  if (j.contains("sigma")) {
    c.sigma = static_cast<int>(parse_integer(j.at("sigma"), "/sigma"));
    if (c.sigma != 1 && c.sigma != -1) throw ConfigError("/sigma", "must be +1 or -1");
  }

  const json& step = require(j, "step", "");
  if (step.contains("tau")) {
    c.real_tau = parse_real(step.at("tau"), "/step/tau");
    if (!(c.real_tau > 0.0)) throw ConfigError("/step/tau", "must be positive");
  } else if (step.contains("turns")) {
    c.real_tau = kTwoPi * parse_real(step.at("turns"), "/step/turns");
    if (!(c.real_tau > 0.0)) throw ConfigError("/step/turns", "must be positive");
  } else {
    const long long p = parse_integer(require(step, "p", "/step"), "/step/p");
    const long long q = parse_integer(require(step, "q", "/step"), "/step/q");
    const int power =
        step.contains("power") ? static_cast<int>(parse_integer(step.at("power"), "/step/power")) : 1;
    try {
      c.rational_step = ResonantStep(p, q, power);
    } catch (const std::invalid_argument& e) {
      throw ConfigError("/step", e.what());
    }
    c.real_tau = c.rational_step->tau();
  }

  if (j.contains("sweep")) {
    const json& s = j.at("sweep");
    SweepGrid g;
    auto ints = [&](const char* key, auto& out) {
      if (!s.contains(key)) return;
      if (!s.at(key).is_array()) throw ConfigError(std::string("/sweep/") + key, "expected an array");
      for (const auto& v : s.at(key)) {
        out.push_back(static_cast<typename std::decay_t<decltype(out)>::value_type>(
            parse_integer(v, std::string("/sweep/") + key)));
      }
    };
    ints("p", g.p);
    ints("q", g.q);
    ints("power", g.power);
    ints("kappa", g.kappa);
    ints("K", g.modes);
    if (g.q.empty()) throw ConfigError("/sweep/q", "sweep needs at least one q");
    if (g.kappa.empty() == g.modes.empty()) {
      throw ConfigError("/sweep", "give exactly one of `kappa` or `K`");
    }
    if (g.p.empty()) g.p = {1};
    if (g.power.empty()) g.power = {1};
    c.sweep = std::move(g);
  }

  if (j.contains("K")) {
    c.modes = static_cast<int>(parse_integer(j.at("K"), "/K"));
  } else if (!c.sweep) {
    throw ConfigError("/K", "required field is missing");
  }
  try {
    (void)Grid(c.modes);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("/K", e.what());
  }

  if (j.contains("n_steps")) {
    const json& n = j.at("n_steps");
    if (n.is_string() && n.get<std::string>() == "horizon") {
      c.n_steps.reset();
    } else {
      const long long v = parse_integer(n, "/n_steps");
      if (v < 0) throw ConfigError("/n_steps", "must be >= 0");
      c.n_steps = v;
    }
  } else {
    throw ConfigError("/n_steps", "required field is missing (integer or \"horizon\")");
  }

  if (j.contains("splitting")) {
    const std::string s = j.at("splitting").get<std::string>();
    if (s == "lie") {
      c.splitting = Splitting::kLie;
    } else if (s == "strang") {
      c.splitting = Splitting::kStrang;
    } else {
      throw ConfigError("/splitting", "expected \"lie\" or \"strang\"");
    }
  }

  if (c.equation == Equation::kLinear) {
    c.potential_spec = require(j, "potential", "");
  } else if (j.contains("potential")) {
    throw ConfigError("/potential", "the cubic equation takes no potential");
  }
  c.initial_spec = require(j, "initial", "");

  if (j.contains("outputs")) {
    const json& o = j.at("outputs");
    if (o.contains("csv")) c.csv_output = o.at("csv").get<std::string>();
    if (o.contains("json")) c.json_output = o.at("json").get<std::string>();
  }
  if (j.contains("tolerances")) {
    for (const auto& [name, value] : j.at("tolerances").items()) {
      c.set_tolerance(name, parse_real(value, "/tolerances/" + name));
    }
  }
  if (j.contains("seed")) {
    const json& s = j.at("seed");
    if (!s.is_number_unsigned() && !s.is_number_integer()) throw ConfigError("/seed", "expected an integer");
    c.seed = s.get<std::uint64_t>();
  }

  // Resolve functions once so spec errors surface at load time.
  if (!c.sweep) {
    (void)c.model();
    (void)c.initial_state();
  }
  return c;
}

json ExperimentConfig::to_json() const {
  json j;
  j["name"] = name;
  j["equation"] = equation == Equation::kLinear ? "linear" : "cubic";
  if (equation == Equation::kCubic) j["sigma"] = sigma;
  j["K"] = modes;
  if (rational_step) {
    j["step"] = {{"p", rational_step->p()}, {"q", rational_step->q()},
                 {"power", rational_step->power()}};
  } else {
    j["step"] = {{"tau", real_tau}};
  }
  if (n_steps) {
    j["n_steps"] = *n_steps;
  } else {
    j["n_steps"] = "horizon";
  }
  j["splitting"] = splitting == Splitting::kLie ? "lie" : "strang";
  if (equation == Equation::kLinear) j["potential"] = potential_spec;
  j["initial"] = initial_spec;
  j["outputs"] = {{"csv", csv_output}, {"json", json_output}};
  j["tolerances"] = json::object();
  for (const auto& [k, v] : tolerances) j["tolerances"][k] = v;
  j["seed"] = seed;
  if (sweep) {
    j["sweep"] = {{"p", sweep->p}, {"q", sweep->q}, {"power", sweep->power}};
    if (!sweep->kappa.empty()) j["sweep"]["kappa"] = sweep->kappa;
    if (!sweep->modes.empty()) j["sweep"]["K"] = sweep->modes;
  }
  return j;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string(), "cannot open config file");
  json j;
  try {
    j = json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string(), std::string("malformed JSON: ") + e.what());
  }
  try {
    return ExperimentConfig::from_json(j);
  } catch (const json::type_error& e) {
    throw ConfigError(path.string(), std::string("wrong value type: ") + e.what());
  }
}

}  // namespace splitstep
