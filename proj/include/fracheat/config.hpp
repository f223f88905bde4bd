#pragma once

// Scenario files: line-oriented `key = value`, `#` comments, `[section]`
// headers. Unknown and duplicated keys are ParseErrors carrying the line
// number; values that break an invariant are ValidationErrors.

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fracheat/oracles.hpp"
#include "fracheat/pennes.hpp"
#include "fracheat/semi_infinite.hpp"
#include "fracheat/spectral.hpp"

namespace fracheat {

enum class ScenarioKind { diffusion, pennes, mlf_table, timescales, oracle_compare, semiinf, gibbs };

std::string to_string(ScenarioKind k);
ScenarioKind scenario_kind_from_string(const std::string& s);

/// `fejer` setting: auto picks Fejer for profiles with a jump, on uses every
/// mode, a positive number fixes the order.
struct FejerSetting {
  enum class Mode { automatic, off, on, order } mode = Mode::automatic;
  int order = 0;
};

FejerSetting parse_fejer(const std::string& s);

struct Scenario {
  ScenarioKind kind = ScenarioKind::diffusion;
  std::string name = "scenario";
  std::filesystem::path source;

  // [problem]
  double D = 1.0;
  double L = 1.0;
  std::vector<double> alphas{1.0};
  ProfileKind profile = ProfileKind::linear_100;
  bool nonstationary = false;
  double amplitude = 100.0;
  std::optional<BoundaryKind> bc;
  double bc_value = 0.0;
  std::vector<double> samples;
  bool crossover = false;

  // [pennes]
  PennesParams pennes;
  std::string citation;
  PennesProfile pennes_profile = PennesProfile::quadratic;
  bool period_check = false;
  /// oracle_compare on the bioheat equation instead of plain diffusion.
  bool pennes_oracle = false;

  // [grid]
  std::vector<double> times;
  int nx = 101;
  int modes = kDefaultModes;
  FejerSetting fejer;

  // [mlf]
  double beta = 1.0;
  double x_max = 10.0;

  // [timescales]
  int n_max = 5;

  // [oracle]
  FDGrid fd;
  double tolerance = 1e-2;

  // [semiinf]
  SemiInfProblem semi;
  int quad_n = 1024;
  int talbot_nodes = 32;

  // [gibbs]
  int truncation = 256;
};

/// Raw key/value table of a scenario or preset file.
struct ConfigEntry {
  std::string value;
  int line = 0;
};
using ConfigSection = std::map<std::string, ConfigEntry>;
using ConfigTable = std::map<std::string, ConfigSection>;

/// Tokenizes and checks keys against `allowed` (section -> key list; the
/// top-level section is ""). Throws ParseError.
ConfigTable parse_table(const std::string& text, const std::map<std::string, std::vector<std::string>>& allowed,
                        const std::string& origin);

Scenario parse_config(const std::filesystem::path& path);

/// Relative preset paths resolve against base_dir.
Scenario parse_config_string(const std::string& text, const std::filesystem::path& base_dir = ".",
                             const std::string& origin = "<string>");

/// Tissue preset: the Pennes parameters other than alpha, L and T_h, plus a
/// `citation` string.
PennesParams load_preset(const std::filesystem::path& path, std::string* citation = nullptr);

/// Throws ValidationError naming the violated invariant.
void validate(const Scenario& s);

}  // namespace fracheat
