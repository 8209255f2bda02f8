#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>

#include "relamp/cli.hpp"
#include "relamp/oscillator.hpp"

namespace relamp::cli {

using nlohmann::json;

namespace {

const std::map<std::string, std::vector<std::string>>& scenario_keys() {
  static const std::map<std::string, std::vector<std::string>> keys{
      {"spread", {"sigma", "times", "r_out", "r_points", "r_max", "panels", "panel_order"}},
      {"dispersion", {"k_min", "k_max", "k_points"}},
      {"currents-check",
       {"carrier", "width", "length", "points", "orders", "dts", "sweep_order", "sweep_dt", "horizon", "band"}},
      {"oscillator", {"gamma", "levels", "basis", "quadrature_order"}},
      {"boost", {"beta", "betas", "axis", "rho", "flux"}},
  };
  return keys;
}

const std::vector<std::string> kCommonKeys{"scenario", "units", "seed", "out"};

std::string render(double v) { return format_number(v); }

// Pulls typed values out of the parsed object and records every problem.
class Reader {
 public:
  Reader(const json& obj, std::vector<ConfigIssue>& issues) : obj_(obj), issues_(issues) {}

  void fail(const std::string& key, const std::string& message) { issues_.push_back({key, message}); }

  bool has(const std::string& key) const { return obj_.contains(key); }

  void number(const std::string& key, double& out) {
    if (!has(key)) return;
    const json& v = obj_.at(key);
    if (!v.is_number()) return fail(key, "must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) return fail(key, "must be finite");
    out = x;
  }

  void count(const std::string& key, unsigned& out) {
    if (!has(key)) return;
    const json& v = obj_.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0 || v.get<long long>() > 1'000'000'000) {
      return fail(key, "must be a non-negative integer");
    }
    out = v.get<unsigned>();
  }

  void numbers(const std::string& key, std::vector<double>& out) {
    if (!has(key)) return;
    const json& v = obj_.at(key);
    if (!v.is_array() || v.empty()) return fail(key, "must be a non-empty array of numbers");
    std::vector<double> values;
    for (const auto& e : v) {
      if (!e.is_number() || !std::isfinite(e.get<double>())) return fail(key, "entries must be finite numbers");
      values.push_back(e.get<double>());
    }
    out = std::move(values);
  }

  void counts(const std::string& key, std::vector<unsigned>& out) {
    if (!has(key)) return;
    const json& v = obj_.at(key);
    if (!v.is_array() || v.empty()) return fail(key, "must be a non-empty array of integers");
    std::vector<unsigned> values;
    for (const auto& e : v) {
      if (!e.is_number_integer() || e.get<long long>() < 0 || e.get<long long>() > 1'000'000) {
        return fail(key, "entries must be non-negative integers");
      }
      values.push_back(e.get<unsigned>());
    }
    out = std::move(values);
  }

  void text(const std::string& key, std::string& out) {
    if (!has(key)) return;
    if (!obj_.at(key).is_string()) return fail(key, "must be a string");
    out = obj_.at(key).get<std::string>();
  }

 private:
  const json& obj_;
  std::vector<ConfigIssue>& issues_;
};

void check(std::vector<ConfigIssue>& issues, bool ok, const std::string& key, const std::string& message) {
  if (!ok) issues.push_back({key, message});
}

bool power_of_two(unsigned n) { return n != 0 && (n & (n - 1)) == 0; }

void validate_spread(const ScenarioConfig& c, std::vector<ConfigIssue>& is) {
  check(is, c.sigma > 0.0, "sigma", "sigma must be > 0");
  check(is, c.r_max > 0.0, "r_max", "r_max must be > 0");
  check(is, c.sigma <= c.r_max / 6.0, "sigma", "sigma must be <= r_max/6 = " + render(c.r_max / 6.0));
  for (double t : c.times) check(is, t >= 0.0, "times", "times must be >= 0, got " + render(t));
  check(is, c.r_out > 0.0 && c.r_out <= c.r_max, "r_out", "r_out must lie in (0, r_max]");
  check(is, c.r_points >= 2, "r_points", "r_points must be >= 2");
  check(is, c.panels >= 1 && c.panels <= 256, "panels", "panels must lie in [1, 256]");
  check(is, c.panel_order >= 2 && c.panel_order <= 64, "panel_order", "panel_order must lie in [2, 64]");
}

void validate_dispersion(const ScenarioConfig& c, std::vector<ConfigIssue>& is) {
  check(is, c.k_min >= 0.0, "k_min", "k_min must be >= 0");
  check(is, c.k_max > c.k_min, "k_max", "k_max must exceed k_min");
  check(is, c.k_points >= 2 && c.k_points <= 10'000'000, "k_points", "k_points must lie in [2, 1e7]");
}

void validate_currents(const ScenarioConfig& c, std::vector<ConfigIssue>& is) {
  check(is, power_of_two(c.points) && c.points >= 8, "points", "points must be a power of two >= 8");
  check(is, c.length > 0.0, "length", "length must be > 0");
  check(is, c.width > 0.0, "width", "width must be > 0");
  check(is, 12.0 * c.width <= c.length, "width", "width must satisfy 12*width <= length");
  for (unsigned n : c.orders) check(is, n >= 1 && n <= 40, "orders", "orders must lie in [1, 40]");
  for (double dt : c.dts) check(is, dt > 0.0, "dts", "dts must be > 0");
  check(is, c.sweep_order >= 1 && c.sweep_order <= 40, "sweep_order", "sweep_order must lie in [1, 40]");
  check(is, c.sweep_dt > 0.0, "sweep_dt", "sweep_dt must be > 0");
  check(is, c.horizon >= 0.0, "horizon", "horizon must be >= 0");
  check(is, c.band > 0.0 && c.band < 1.0, "band", "band must lie in (0, 1)");
}

void validate_oscillator(const ScenarioConfig& c, std::vector<ConfigIssue>& is, std::vector<std::string>& warn) {
  check(is, c.gamma >= 0.0, "gamma", "gamma must be >= 0");
  check(is, c.levels >= 1 && c.levels <= 300, "levels", "levels must lie in [1, 300]");
  check(is, c.basis >= c.levels + 8, "basis", "basis must be >= levels + 8");
  check(is, c.basis + 8 <= kMaxHermiteLevel, "basis", "basis must be <= " + std::to_string(kMaxHermiteLevel - 8));
  if (c.quadrature_order != 0) {
    check(is, c.levels >= 1 && c.quadrature_order >= 2 * (c.levels - 1) + 8, "quadrature_order",
          "quadrature_order must be 0 (automatic) or >= 2n + 8 for the highest level");
    check(is, c.quadrature_order <= kMaxHermiteLevel, "quadrature_order",
          "quadrature_order must be <= " + std::to_string(kMaxHermiteLevel));
  }
  if (c.gamma > 1e-2) warn.emplace_back("gamma above 1e-2: first-order perturbation theory is not reliable");
}

void validate_boost(const ScenarioConfig& c, std::vector<ConfigIssue>& is) {
  for (double b : c.betas) check(is, std::abs(b) < 1.0, "beta", "β must satisfy |β|<1, got " + render(b));
  check(is, c.axis < 3, "axis", "axis must be 0, 1 or 2");
  check(is, c.flux.size() == 3, "flux", "flux must have 3 components");
}

std::string position_of(std::string_view text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

}  // namespace

ValidationResult validate_config(std::string_view text) {
  ValidationResult result;
  auto& issues = result.issues;

  json obj;
  const bool blank = std::all_of(text.begin(), text.end(), [](unsigned char ch) { return std::isspace(ch); });
  if (blank) {
    obj = json::object();
  } else {
    try {
      obj = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
      // what() reads "[json.exception.parse_error.101] parse error at line L, column C: <reason>".
      std::string reason = e.what();
      if (const auto colon = reason.find(": "); colon != std::string::npos) reason = reason.substr(colon + 2);
      issues.push_back({"<document>", "parse error at " + position_of(text, e.byte) + ": " + reason});
      return result;
    }
  }
  if (!obj.is_object()) {
    issues.push_back({"<document>", "top level must be a JSON object"});
    return result;
  }

  ScenarioConfig c;
  Reader rd(obj, issues);

  if (!rd.has("scenario")) issues.push_back({"scenario", "missing required key 'scenario'"});
  if (!rd.has("units")) issues.push_back({"units", "missing required key 'units'"});
  rd.text("scenario", c.scenario);
  rd.text("units", c.units);
  if (rd.has("units") && c.units != "natural" && c.units != "electron") {
    issues.push_back({"units", "units must be 'natural' or 'electron'"});
  }
  if (rd.has("seed")) {
    const json& s = obj.at("seed");
    if (s.is_number_unsigned()) {
      c.seed = s.get<std::uint64_t>();
    } else if (s.is_number_integer() && s.get<long long>() >= 0) {
      c.seed = static_cast<std::uint64_t>(s.get<long long>());
    } else {
      issues.push_back({"seed", "must be an unsigned 64-bit integer"});
    }
  }
  if (rd.has("out")) {
    std::string out;
    rd.text("out", out);
    c.out = out;
  }

  const auto& table = scenario_keys();
  const auto found = table.find(c.scenario);
  if (rd.has("scenario") && found == table.end()) {
    std::string names;
    for (const auto& [name, keys] : table) names += (names.empty() ? "" : ", ") + name;
    issues.push_back({"scenario", "unknown scenario '" + c.scenario + "'; expected one of: " + names});
  }

  std::set<std::string> allowed(kCommonKeys.begin(), kCommonKeys.end());
  if (found != table.end()) allowed.insert(found->second.begin(), found->second.end());
  for (const auto& [key, value] : obj.items()) {
    if (allowed.count(key) != 0) continue;
    bool elsewhere = false;
    for (const auto& [name, keys] : table) {
      elsewhere = elsewhere || std::find(keys.begin(), keys.end(), key) != keys.end();
    }
    if (found != table.end() && elsewhere) {
      issues.push_back({key, "key '" + key + "' does not apply to scenario '" + c.scenario + "'"});
    } else if (found != table.end() || !elsewhere) {
      issues.push_back({key, "unknown key '" + key + "'"});
    }
  }
  if (found == table.end()) return result;

  const std::size_t before = issues.size();
  if (c.scenario == "spread") {
    rd.number("sigma", c.sigma);
    rd.numbers("times", c.times);
    rd.number("r_out", c.r_out);
    rd.count("r_points", c.r_points);
    rd.number("r_max", c.r_max);
    rd.count("panels", c.panels);
    rd.count("panel_order", c.panel_order);
    if (issues.size() == before) validate_spread(c, issues);
  } else if (c.scenario == "dispersion") {
    rd.number("k_min", c.k_min);
    rd.number("k_max", c.k_max);
    rd.count("k_points", c.k_points);
    if (issues.size() == before) validate_dispersion(c, issues);
  } else if (c.scenario == "currents-check") {
    rd.number("carrier", c.carrier);
    rd.number("width", c.width);
    rd.number("length", c.length);
    rd.count("points", c.points);
    rd.counts("orders", c.orders);
    rd.numbers("dts", c.dts);
    rd.count("sweep_order", c.sweep_order);
    rd.number("sweep_dt", c.sweep_dt);
    rd.number("horizon", c.horizon);
    rd.number("band", c.band);
    if (issues.size() == before) validate_currents(c, issues);
  } else if (c.scenario == "oscillator") {
    rd.number("gamma", c.gamma);
    rd.count("levels", c.levels);
    rd.count("basis", c.basis);
    rd.count("quadrature_order", c.quadrature_order);
    if (issues.size() == before) validate_oscillator(c, issues, result.warnings);
  } else if (c.scenario == "boost") {
    if (rd.has("beta") && rd.has("betas")) issues.push_back({"beta", "give either 'beta' or 'betas', not both"});
    if (rd.has("beta")) {
      double b = 0.0;
      rd.number("beta", b);
      c.betas = {b};
    }
    rd.numbers("betas", c.betas);
    rd.count("axis", c.axis);
    rd.number("rho", c.rho);
    rd.numbers("flux", c.flux);
    if (issues.size() == before) validate_boost(c, issues);
  }

  if (issues.empty()) result.config = c;
  return result;
}

json ScenarioConfig::normalized() const {
  json j{{"scenario", scenario}, {"units", units}, {"seed", seed}};
  if (scenario == "spread") {
    j.update({{"sigma", sigma}, {"times", times}, {"r_out", r_out}, {"r_points", r_points}, {"r_max", r_max},
              {"panels", panels}, {"panel_order", panel_order}});
  } else if (scenario == "dispersion") {
    j.update({{"k_min", k_min}, {"k_max", k_max}, {"k_points", k_points}});
  } else if (scenario == "currents-check") {
    j.update({{"carrier", carrier}, {"width", width}, {"length", length}, {"points", points}, {"orders", orders},
              {"dts", dts}, {"sweep_order", sweep_order}, {"sweep_dt", sweep_dt}, {"horizon", horizon},
              {"band", band}});
  } else if (scenario == "oscillator") {
    j.update({{"gamma", gamma}, {"levels", levels}, {"basis", basis}, {"quadrature_order", quadrature_order}});
  } else if (scenario == "boost") {
    j.update({{"betas", betas}, {"axis", axis}, {"rho", rho}, {"flux", flux}});
  }
  return j;
}

std::string ScenarioConfig::hash() const {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : normalized().dump()) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace relamp::cli
