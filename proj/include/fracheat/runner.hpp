#pragma once

// Executes a parsed Scenario: CSV data files plus a `<name>_summary.txt`
// of `key = value` lines.

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fracheat/config.hpp"
#include "fracheat/error.hpp"

namespace fracheat {

struct RunOptions {
  std::filesystem::path out_dir = ".";
  std::optional<int> modes;
  std::optional<FejerSetting> fejer;
};

struct RunReport {
  std::vector<std::filesystem::path> csv_files;
  std::filesystem::path summary_file;
  std::vector<std::pair<std::string, std::string>> summary;

  /// Value of a summary key, empty if absent.
  std::string get(const std::string& key) const;
};

/// Runs the scenario and writes its artifacts. Library errors propagate; an
/// oracle comparison above tolerance throws ToleranceExceeded after the
/// files are written.
RunReport run(const Scenario& scenario, const RunOptions& options = {});

/// 1 parse, 2 validation, 3 numerical.
int exit_code(const Error& e) noexcept;

/// Fixed 12-significant-digit rendering used in every CSV.
std::string format_number(double v);

}  // namespace fracheat
