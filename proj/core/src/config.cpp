#include "rwrs/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <set>
#include <optional>
#include <sstream>

namespace rwrs {

namespace {

struct RawEntry {
  int line = 0;
  std::string value;
};

struct RawSection {
  std::string name;
  int line = 0;
  std::map<std::string, RawEntry> entries;
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::optional<double> parse_real(const std::string& s) {
  double v = 0.0;
  const char* end = s.data() + s.size();
  const auto res = std::from_chars(s.data(), end, v);
  if (res.ec != std::errc{} || res.ptr != end) return std::nullopt;
  return v;
}

std::optional<std::int64_t> parse_int(const std::string& s) {
  std::int64_t v = 0;
  const char* end = s.data() + s.size();
  const auto res = std::from_chars(s.data(), end, v);
  if (res.ec != std::errc{} || res.ptr != end) return std::nullopt;
  return v;
}

std::optional<std::uint64_t> parse_uint(const std::string& s) {
  std::uint64_t v = 0;
  const char* end = s.data() + s.size();
  const auto res = std::from_chars(s.data(), end, v);
  if (res.ec != std::errc{} || res.ptr != end) return std::nullopt;
  return v;
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "alpha", "scenery", "weights", "m",    "marginal", "theta",   "n",
      "tau",   "reps",    "mode",    "seed", "q_reps",   "schedule"};
  return keys;
}

void build_experiment(const RawSection& section, ParsedConfig& out) {
  std::vector<ConfigError> errors;
  auto fail = [&](const std::string& key, const std::string& reason) {
    const auto it = section.entries.find(key);
    errors.push_back(ConfigError{it != section.entries.end() ? it->second.line : section.line,
                                 key, reason});
  };

  for (const auto& [key, entry] : section.entries)
    if (!known_keys().count(key))
      errors.push_back(ConfigError{entry.line, key, "unknown key"});

  auto get = [&](const std::string& key) -> const RawEntry* {
    const auto it = section.entries.find(key);
    return it == section.entries.end() ? nullptr : &it->second;
  };
  auto require = [&](const std::string& key) -> const RawEntry* {
    const RawEntry* e = get(key);
    if (!e) fail(key, "required key is missing");
    return e;
  };

  ExperimentConfig cfg;
  cfg.name = section.name;

  if (const RawEntry* e = require("alpha")) {
    const auto v = parse_real(e->value);
    if (!v) fail("alpha", "not a real number");
    else if (!(*v > 0.0 && *v < 1.0)) fail("alpha", "alpha must lie in (0,1)");
    else cfg.step_alpha = *v;
  }

  if (const RawEntry* e = require("n")) {
    const auto v = parse_int(e->value);
    if (!v || *v < 1) fail("n", "n must be a positive integer");
    else cfg.n = *v;
  }

  if (const RawEntry* e = require("tau")) {
    const auto v = parse_real(e->value);
    if (!v || !(*v >= 0.0) || !std::isfinite(*v)) fail("tau", "tau must be a real >= 0");
    else cfg.tau = *v;
  }

  if (const RawEntry* e = require("reps")) {
    const auto v = parse_int(e->value);
    if (!v || *v < 1) fail("reps", "reps must be a positive integer");
    else cfg.reps = *v;
  }

  if (const RawEntry* e = require("mode")) {
    if (e->value == "quenched") cfg.mode = ExperimentMode::Quenched;
    else if (e->value == "annealed") cfg.mode = ExperimentMode::Annealed;
    else fail("mode", "mode must be 'quenched' or 'annealed'");
  }

  // marginal first: moving_max validity depends on it
  if (const RawEntry* e = require("marginal")) {
    if (e->value == "frechet1") cfg.marginal = Marginal::frechet1();
    else if (e->value == "exponential1") cfg.marginal = Marginal::exponential1();
    else if (e->value == "pareto") {
      const RawEntry* t = get("theta");
      if (!t) fail("theta", "pareto marginal requires theta");
      else {
        const auto v = parse_real(t->value);
        if (!v || !(*v > 0.0)) fail("theta", "theta must be a real > 0");
        else cfg.marginal = Marginal::pareto(*v);
      }
    } else fail("marginal", "marginal must be frechet1, pareto or exponential1");
  }
  if (get("theta") && get("marginal") && get("marginal")->value != "pareto")
    fail("theta", "theta applies only to the pareto marginal");

  if (const RawEntry* e = require("scenery")) {
    if (e->value == "iid") {
      cfg.dependence = IidDependence{};
      if (get("weights")) fail("weights", "weights apply only to gauss_ma");
      if (get("m")) fail("m", "m applies only to gauss_ma or moving_max");
    } else if (e->value == "gauss_ma") {
      const RawEntry* w = get("weights");
      if (!w) fail("weights", "gauss_ma requires weights w_0..w_m");
      else {
        GaussMaDependence dep;
        std::istringstream iss(w->value);
        std::string tok;
        bool bad = false;
        while (iss >> tok) {
          std::replace(tok.begin(), tok.end(), ',', ' ');
          const std::string t = trim(tok);
          if (t.empty()) continue;
          const auto v = parse_real(t);
          if (!v) { bad = true; break; }
          dep.weights.push_back(*v);
        }
        double norm2 = 0.0;
        for (double x : dep.weights) norm2 += x * x;
        if (bad) fail("weights", "weights must be a list of reals");
        else if (dep.weights.size() < 2) fail("weights", "gauss_ma needs at least two weights");
        else if (std::fabs(norm2 - 1.0) > 1e-6)
          fail("weights", "weights must satisfy sum of squares = 1 within 1e-6");
        else cfg.dependence = std::move(dep);
      }
      if (const RawEntry* me = get("m")) {
        const auto v = parse_int(me->value);
        const auto* dep = std::get_if<GaussMaDependence>(&cfg.dependence);
        if (!v) fail("m", "m must be an integer");
        else if (dep && *v != static_cast<std::int64_t>(dep->weights.size()) - 1)
          fail("m", "m disagrees with the number of weights (need m+1 weights)");
      }
    } else if (e->value == "moving_max") {
      const RawEntry* me = get("m");
      if (!me) fail("m", "moving_max requires m >= 1");
      else {
        const auto v = parse_int(me->value);
        if (!v || *v < 1) fail("m", "m must be an integer >= 1");
        else cfg.dependence = MovingMaxDependence{*v};
      }
      if (get("marginal") && get("marginal")->value != "frechet1")
        fail("marginal", "moving_max supports only the frechet1 marginal");
      if (get("weights")) fail("weights", "weights apply only to gauss_ma");
    } else {
      fail("scenery", "scenery must be iid, gauss_ma or moving_max");
    }
  }

  if (const RawEntry* e = get("seed")) {
    const auto v = parse_uint(e->value);
    if (!v) fail("seed", "seed must be an unsigned integer");
    else {
      cfg.master_seed = *v;
      cfg.seed_from_config = true;
    }
  }

  if (const RawEntry* e = get("q_reps")) {
    const auto v = parse_int(e->value);
    if (!v || *v < 2) fail("q_reps", "q_reps must be an integer >= 2");
    else cfg.q_reps = *v;
  }

  if (const RawEntry* e = get("schedule")) {
    if (e->value != "default") {
      // form: k_n=INT,l_n=INT (either part optional)
      std::string spec = e->value;
      std::replace(spec.begin(), spec.end(), ',', ' ');
      std::istringstream iss(spec);
      std::string tok;
      bool bad = false;
      while (iss >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) { bad = true; break; }
        const std::string key = tok.substr(0, eq);
        const auto v = parse_int(tok.substr(eq + 1));
        if (!v || *v < 1) { bad = true; break; }
        if (key == "k_n") cfg.schedule.k_n = *v;
        else if (key == "l_n") cfg.schedule.l_n = *v;
        else { bad = true; break; }
      }
      if (bad) fail("schedule", "schedule must be 'default' or 'k_n=INT,l_n=INT'");
    }
  }

  if (cfg.n >= 1 && cfg.tau >= static_cast<double>(cfg.n))
    fail("tau", "tau must be smaller than n");

  if (errors.empty()) out.experiments.push_back(std::move(cfg));
  else out.errors.insert(out.errors.end(), errors.begin(), errors.end());
}

}  // namespace

ParsedConfig parse_config(std::string_view text) {
  ParsedConfig out;
  std::vector<RawSection> sections;

  int lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view rawline =
        text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
    ++lineno;

    std::string line = trim(rawline);
    const auto comment = line.find('#');
    if (comment != std::string::npos) line = trim(line.substr(0, comment));
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) {
        out.errors.push_back(ConfigError{lineno, "", "malformed section header"});
        continue;
      }
      sections.push_back(RawSection{trim(line.substr(1, line.size() - 2)), lineno, {}});
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      out.errors.push_back(ConfigError{lineno, "", "expected 'key = value'"});
      continue;
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      out.errors.push_back(ConfigError{lineno, "", "empty key"});
      continue;
    }
    if (sections.empty()) sections.push_back(RawSection{"experiment", lineno, {}});
    if (sections.back().entries.count(key)) {
      out.errors.push_back(ConfigError{lineno, key, "duplicate key in section"});
      continue;
    }
    sections.back().entries.emplace(key, RawEntry{lineno, value});
  }

  if (sections.empty())
    out.errors.push_back(ConfigError{0, "", "config contains no experiment"});

  for (const auto& s : sections) build_experiment(s, out);
  return out;
}

}  // namespace rwrs
