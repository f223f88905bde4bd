#include "fracheat/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "fracheat/error.hpp"

namespace fracheat {

namespace {

using Allowed = std::map<std::string, std::vector<std::string>>;

const Allowed& scenario_keys() {
  static const Allowed keys{
      {"", {"kind", "name"}},
      {"problem", {"D", "L", "alpha", "profile", "amplitude", "bc", "bc_value", "samples", "crossover"}},
      {"pennes",
       {"preset", "alpha", "profile", "L", "T_h", "rho_t", "c_t", "k_cond", "Q_meta", "rho_b", "c_b", "omega_b",
        "T_b", "tau_dim", "period_check"}},
      {"grid", {"times", "nx", "modes", "fejer"}},
      {"mlf", {"alpha", "beta", "x_max", "nx"}},
      {"timescales", {"alpha", "D", "L", "n_max"}},
      {"oracle", {"nt", "nx", "t_max", "tolerance"}},
      {"semiinf", {"D", "T_init", "times", "x_max", "nx", "quad_n", "nodes"}},
      {"gibbs", {"truncation", "L", "amplitude"}},
  };
  return keys;
}

const Allowed& preset_keys() {
  static const Allowed keys{
      {"", {"citation", "rho_t", "c_t", "k_cond", "Q_meta", "rho_b", "c_b", "omega_b", "T_b", "tau_dim"}}};
  return keys;
}

std::set<std::string> sections_for(ScenarioKind k) {
  switch (k) {
    case ScenarioKind::diffusion: return {"problem", "grid"};
    case ScenarioKind::pennes: return {"pennes", "grid"};
    case ScenarioKind::mlf_table: return {"mlf"};
    case ScenarioKind::timescales: return {"timescales"};
    case ScenarioKind::oracle_compare: return {"problem", "pennes", "grid", "oracle"};
    case ScenarioKind::semiinf: return {"semiinf"};
    case ScenarioKind::gibbs: return {"gibbs", "grid"};
  }
  return {};
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void parse_fail(const std::string& origin, int line, const std::string& msg) {
  throw Error(ErrorCode::ParseError, origin + ":" + std::to_string(line) + ": " + msg);
}

class Reader {
 public:
  Reader(const ConfigTable& t, std::string origin) : table_(t), origin_(std::move(origin)) {}

  const ConfigEntry* find(const std::string& section, const std::string& key) const {
    auto s = table_.find(section);
    if (s == table_.end()) return nullptr;
    auto e = s->second.find(key);
    return e == s->second.end() ? nullptr : &e->second;
  }

  bool has_section(const std::string& section) const { return table_.count(section) != 0; }

  double number(const ConfigEntry& e) const {
    double v = 0.0;
    const char* first = e.value.data();
    const char* last = first + e.value.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) parse_fail(origin_, e.line, "expected a number, got '" + e.value + "'");
    return v;
  }

  int integer(const ConfigEntry& e) const {
    long long v = 0;
    const char* first = e.value.data();
    const char* last = first + e.value.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) parse_fail(origin_, e.line, "expected an integer, got '" + e.value + "'");
    if (v < -1000000000LL || v > 1000000000LL) parse_fail(origin_, e.line, "integer out of range");
    return static_cast<int>(v);
  }

  bool boolean(const ConfigEntry& e) const {
    if (e.value == "on" || e.value == "true" || e.value == "yes") return true;
    if (e.value == "off" || e.value == "false" || e.value == "no") return false;
    parse_fail(origin_, e.line, "expected on/off, got '" + e.value + "'");
  }

  std::vector<double> list(const ConfigEntry& e) const {
    std::vector<double> out;
    std::stringstream ss(e.value);
    std::string item;
    while (std::getline(ss, item, ',')) {
      ConfigEntry one{trim(item), e.line};
      if (one.value.empty()) parse_fail(origin_, e.line, "empty list element");
      out.push_back(number(one));
    }
    if (out.empty()) parse_fail(origin_, e.line, "empty list");
    return out;
  }

  void get(const std::string& sec, const std::string& key, double& dst) const {
    if (auto* e = find(sec, key)) dst = number(*e);
  }
  void get(const std::string& sec, const std::string& key, int& dst) const {
    if (auto* e = find(sec, key)) dst = integer(*e);
  }
  void get(const std::string& sec, const std::string& key, bool& dst) const {
    if (auto* e = find(sec, key)) dst = boolean(*e);
  }
  void get(const std::string& sec, const std::string& key, std::vector<double>& dst) const {
    if (auto* e = find(sec, key)) dst = list(*e);
  }

  const std::string& origin() const { return origin_; }

 private:
  const ConfigTable& table_;
  std::string origin_;
};

void apply_pennes_keys(const Reader& r, const std::string& sec, PennesParams& p) {
  r.get(sec, "rho_t", p.rho_t);
  r.get(sec, "c_t", p.c_t);
  r.get(sec, "k_cond", p.k_cond);
  r.get(sec, "Q_meta", p.Q_meta);
  r.get(sec, "rho_b", p.rho_b);
  r.get(sec, "c_b", p.c_b);
  r.get(sec, "omega_b", p.omega_b);
  r.get(sec, "T_b", p.T_b);
  r.get(sec, "tau_dim", p.tau_dim);
}

std::string read_file(const std::filesystem::path& path, ErrorCode code) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), code, "cannot open '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void check_times(const std::vector<double>& times, bool strictly_positive) {
  require(!times.empty(), ErrorCode::ValidationError, "times must not be empty");
  for (std::size_t i = 0; i < times.size(); ++i) {
    require(std::isfinite(times[i]) && (strictly_positive ? times[i] > 0.0 : times[i] >= 0.0),
            ErrorCode::ValidationError, strictly_positive ? "times must be positive" : "times must be non-negative");
    require(i == 0 || times[i] > times[i - 1], ErrorCode::ValidationError, "times must be strictly increasing");
  }
}

void check_alphas(const std::vector<double>& alphas, double lo, double hi, bool lo_open) {
  require(!alphas.empty(), ErrorCode::ValidationError, "alpha must not be empty");
  for (double a : alphas) {
    const bool ok = (lo_open ? a > lo : a >= lo) && a <= hi;
    require(ok, ErrorCode::ValidationError,
            "alpha must lie in " + std::string(lo_open ? "(" : "[") + std::to_string(lo) + ", " +
                std::to_string(hi) + "], got " + std::to_string(a));
  }
}

}  // namespace

std::string to_string(ScenarioKind k) {
  switch (k) {
    case ScenarioKind::diffusion: return "diffusion";
    case ScenarioKind::pennes: return "pennes";
    case ScenarioKind::mlf_table: return "mlf_table";
    case ScenarioKind::timescales: return "timescales";
    case ScenarioKind::oracle_compare: return "oracle_compare";
    case ScenarioKind::semiinf: return "semiinf";
    case ScenarioKind::gibbs: return "gibbs";
  }
  return "unknown";
}

ScenarioKind scenario_kind_from_string(const std::string& s) {
  for (auto k : {ScenarioKind::diffusion, ScenarioKind::pennes, ScenarioKind::mlf_table, ScenarioKind::timescales,
                 ScenarioKind::oracle_compare, ScenarioKind::semiinf, ScenarioKind::gibbs}) {
    if (to_string(k) == s) return k;
  }
  throw Error(ErrorCode::ValidationError, "unknown scenario kind '" + s + "'");
}

FejerSetting parse_fejer(const std::string& s) {
  FejerSetting f;
  if (s == "auto") return f;
  if (s == "off") {
    f.mode = FejerSetting::Mode::off;
    return f;
  }
  if (s == "on") {
    f.mode = FejerSetting::Mode::on;
    return f;
  }
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  require(ec == std::errc() && ptr == s.data() + s.size() && v > 0, ErrorCode::ValidationError,
          "fejer must be auto, on, off or a positive order, got '" + s + "'");
  f.mode = FejerSetting::Mode::order;
  f.order = v;
  return f;
}

ConfigTable parse_table(const std::string& text, const Allowed& allowed, const std::string& origin) {
  ConfigTable table;
  table[""];
  std::string section;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string s = trim(hash == std::string::npos ? std::string_view(raw) : std::string_view(raw).substr(0, hash));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') parse_fail(origin, line, "malformed section header");
      section = trim(std::string_view(s).substr(1, s.size() - 2));
      if (!allowed.count(section) || section.empty()) parse_fail(origin, line, "unknown section [" + section + "]");
      if (table.count(section)) parse_fail(origin, line, "duplicate section [" + section + "]");
      table[section];
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) parse_fail(origin, line, "expected 'key = value'");
    const std::string key = trim(std::string_view(s).substr(0, eq));
    const std::string value = trim(std::string_view(s).substr(eq + 1));
    if (key.empty()) parse_fail(origin, line, "missing key");
    if (value.empty()) parse_fail(origin, line, "missing value for '" + key + "'");
    const auto& keys = allowed.at(section);
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      parse_fail(origin, line,
                 "unknown key '" + key + "'" + (section.empty() ? std::string() : " in [" + section + "]"));
    }
    auto& sec = table[section];
    if (sec.count(key)) {
      parse_fail(origin, line, "duplicate key '" + key + "' (first set on line " + std::to_string(sec[key].line) + ")");
    }
    sec[key] = ConfigEntry{value, line};
  }
  return table;
}

PennesParams load_preset(const std::filesystem::path& path, std::string* citation) {
  const std::string text = read_file(path, ErrorCode::ValidationError);
  const ConfigTable t = parse_table(text, preset_keys(), path.string());
  Reader r(t, path.string());
  PennesParams p;
  apply_pennes_keys(r, "", p);
  if (citation) {
    const ConfigEntry* c = r.find("", "citation");
    *citation = c ? c->value : std::string();
  }
  return p;
}

Scenario parse_config_string(const std::string& text, const std::filesystem::path& base_dir,
                             const std::string& origin) {
  const ConfigTable t = parse_table(text, scenario_keys(), origin);
  Reader r(t, origin);
  Scenario s;
  s.source = origin;

  const ConfigEntry* kind = r.find("", "kind");
  if (!kind) throw Error(ErrorCode::ValidationError, origin + ": missing 'kind'");
  s.kind = scenario_kind_from_string(kind->value);
  if (auto* e = r.find("", "name")) s.name = e->value;

  const auto used = sections_for(s.kind);
  for (const auto& [sec, _] : t) {
    if (!sec.empty() && !used.count(sec)) {
      throw Error(ErrorCode::ValidationError, "section [" + sec + "] does not apply to kind " + to_string(s.kind));
    }
  }

  // [problem]
  r.get("problem", "D", s.D);
  r.get("problem", "L", s.L);
  r.get("problem", "alpha", s.alphas);
  r.get("problem", "amplitude", s.amplitude);
  r.get("problem", "bc_value", s.bc_value);
  r.get("problem", "samples", s.samples);
  r.get("problem", "crossover", s.crossover);
  if (auto* e = r.find("problem", "profile")) {
    if (e->value == "nonstationary") {
      s.nonstationary = true;
      s.profile = ProfileKind::custom;
    } else {
      s.profile = profile_from_string(e->value);
    }
  }
  if (auto* e = r.find("problem", "bc")) {
    if (e->value == "dirichlet") {
      s.bc = BoundaryKind::dirichlet;
    } else if (e->value == "neumann") {
      s.bc = BoundaryKind::neumann;
    } else if (e->value != "natural") {
      throw Error(ErrorCode::ValidationError, "bc must be dirichlet, neumann or natural");
    }
  }

  // [pennes]
  if (r.has_section("pennes")) {
    if (auto* e = r.find("pennes", "preset")) {
      std::filesystem::path p = e->value;
      if (p.is_relative()) p = base_dir / p;
      s.pennes = load_preset(p, &s.citation);
    }
    apply_pennes_keys(r, "pennes", s.pennes);
    r.get("pennes", "L", s.pennes.L);
    r.get("pennes", "T_h", s.pennes.T_h);
    r.get("pennes", "alpha", s.alphas);
    r.get("pennes", "period_check", s.period_check);
    if (auto* e = r.find("pennes", "profile")) s.pennes_profile = pennes_profile_from_string(e->value);
    s.pennes.alpha = s.alphas.front();
    s.L = s.pennes.L;
    s.pennes_oracle = s.kind == ScenarioKind::oracle_compare;
    if (s.pennes_oracle && r.has_section("problem")) {
      throw Error(ErrorCode::ValidationError, "oracle_compare takes either [problem] or [pennes], not both");
    }
  }

  // [grid]
  r.get("grid", "times", s.times);
  r.get("grid", "nx", s.nx);
  r.get("grid", "modes", s.modes);
  if (auto* e = r.find("grid", "fejer")) s.fejer = parse_fejer(e->value);

  // [mlf]
  r.get("mlf", "alpha", s.alphas);
  r.get("mlf", "beta", s.beta);
  r.get("mlf", "x_max", s.x_max);
  r.get("mlf", "nx", s.nx);

  // [timescales]
  r.get("timescales", "alpha", s.alphas);
  r.get("timescales", "D", s.D);
  r.get("timescales", "L", s.L);
  r.get("timescales", "n_max", s.n_max);

  // [oracle]
  s.fd.t_max = 0.0;
  r.get("oracle", "nt", s.fd.nt);
  r.get("oracle", "nx", s.fd.nx);
  r.get("oracle", "t_max", s.fd.t_max);
  r.get("oracle", "tolerance", s.tolerance);
  if (s.fd.t_max == 0.0 && !s.times.empty()) s.fd.t_max = s.times.back();

  // [semiinf]
  r.get("semiinf", "D", s.semi.D);
  r.get("semiinf", "T_init", s.semi.T_init);
  r.get("semiinf", "times", s.times);
  r.get("semiinf", "x_max", s.x_max);
  r.get("semiinf", "nx", s.nx);
  r.get("semiinf", "quad_n", s.quad_n);
  r.get("semiinf", "nodes", s.talbot_nodes);

  // [gibbs]
  r.get("gibbs", "truncation", s.truncation);
  r.get("gibbs", "L", s.L);
  r.get("gibbs", "amplitude", s.amplitude);

  validate(s);
  return s;
}

Scenario parse_config(const std::filesystem::path& path) {
  const std::string text = read_file(path, ErrorCode::ParseError);
  return parse_config_string(text, path.parent_path(), path.string());
}

void validate(const Scenario& s) {
  require(!s.name.empty() && s.name.find_first_of("/\\") == std::string::npos, ErrorCode::ValidationError,
          "name must be a plain file stem");
  require(s.nx >= 2, ErrorCode::ValidationError, "nx must be >= 2");
  require(s.modes >= 1, ErrorCode::ValidationError, "modes must be >= 1");
  switch (s.kind) {
    case ScenarioKind::diffusion:
    case ScenarioKind::oracle_compare: {
      check_times(s.times, false);
      check_alphas(s.alphas, 0.0, 2.0, true);
      require(s.D > 0.0, ErrorCode::ValidationError, "D must be positive");
      require(s.L > 0.0, ErrorCode::ValidationError, "L must be positive");
      if (s.profile == ProfileKind::custom && !s.nonstationary) {
        require(s.samples.size() >= 65 && (s.samples.size() - 1) % 4 == 0, ErrorCode::ValidationError,
                "custom profiles need 4k+1 >= 65 samples");
      }
      if (s.crossover) {
        require(s.alphas.size() >= 3, ErrorCode::ValidationError, "crossover needs at least three alphas");
        check_alphas(s.alphas, 0.0, 1.0, true);
      }
      if (s.kind == ScenarioKind::oracle_compare) {
        require(s.fd.t_max >= s.times.back(), ErrorCode::ValidationError, "oracle t_max must cover the last time");
        require(s.fd.nt >= kMinTimeSteps, ErrorCode::ValidationError,
                "oracle nt must be >= " + std::to_string(kMinTimeSteps));
        require(s.fd.nx >= kMinSpacePoints && s.fd.nx % 2 == 1, ErrorCode::ValidationError,
                "oracle nx must be odd and >= " + std::to_string(kMinSpacePoints));
        require(s.tolerance > 0.0, ErrorCode::ValidationError, "tolerance must be positive");
      }
      break;
    }
    case ScenarioKind::pennes:
      check_times(s.times, false);
      check_alphas(s.alphas, 0.0, 2.0, true);
      for (double a : s.alphas) {
        PennesParams p = s.pennes;
        p.alpha = a;
        validate(p);
      }
      if (s.period_check) {
        require(std::find(s.alphas.begin(), s.alphas.end(), 2.0) != s.alphas.end(), ErrorCode::ValidationError,
                "period_check needs alpha = 2 in the list");
      }
      break;
    case ScenarioKind::mlf_table:
      check_alphas(s.alphas, 0.0, 2.0, true);
      require(s.beta > 0.0, ErrorCode::ValidationError, "beta must be positive");
      require(s.x_max > 0.0, ErrorCode::ValidationError, "x_max must be positive");
      break;
    case ScenarioKind::timescales:
      check_alphas(s.alphas, 1.0, 2.0, true);
      require(s.D > 0.0 && s.L > 0.0, ErrorCode::ValidationError, "D and L must be positive");
      require(s.n_max >= 1, ErrorCode::ValidationError, "n_max must be >= 1");
      break;
    case ScenarioKind::semiinf:
      check_times(s.times, true);
      require(s.semi.D > 0.0, ErrorCode::ValidationError, "D must be positive");
      require(s.x_max > 0.0, ErrorCode::ValidationError, "x_max must be positive");
      require(s.quad_n >= 256, ErrorCode::ValidationError, "quad_n must be >= 256");
      require(s.talbot_nodes >= 8, ErrorCode::ValidationError, "nodes must be >= 8");
      break;
    case ScenarioKind::gibbs:
      require(s.truncation >= 32, ErrorCode::ValidationError, "truncation must be >= 32");
      require(s.L > 0.0 && s.amplitude > 0.0, ErrorCode::ValidationError, "L and amplitude must be positive");
      break;
  }
}

}  // namespace fracheat
