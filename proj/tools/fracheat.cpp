// fracheat: run a scenario file and write its CSV data and summary.
//
//   fracheat solve --config scenarios/fig1_linear_low.cfg --out results/

#include <cstdio>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "fracheat/config.hpp"
#include "fracheat/error.hpp"
#include "fracheat/runner.hpp"

namespace {

struct Args {
  std::string config;
  std::string out = ".";
  int modes = 0;
  std::string fejer;
};

int execute(fracheat::ScenarioKind expected, const Args& a) {
  try {
    fracheat::Scenario s = fracheat::parse_config(a.config);
    fracheat::require(s.kind == expected, fracheat::ErrorCode::ValidationError,
                      "config kind is " + fracheat::to_string(s.kind) + ", subcommand expects " +
                          fracheat::to_string(expected));
    fracheat::RunOptions opt;
    opt.out_dir = a.out;
    if (a.modes > 0) opt.modes = a.modes;
    if (!a.fejer.empty()) opt.fejer = fracheat::parse_fejer(a.fejer);
    const fracheat::RunReport r = fracheat::run(s, opt);
    for (const auto& f : r.csv_files) std::cout << f.string() << '\n';
    std::cout << r.summary_file.string() << '\n';
    return 0;
  } catch (const fracheat::Error& e) {
    std::cerr << "fracheat: " << e.what() << '\n';
    return fracheat::exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "fracheat: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Time-fractional diffusion and bioheat scenarios"};
  app.require_subcommand(1);
  Args args;
  int rc = 0;

  const std::map<std::string, fracheat::ScenarioKind> commands{
      {"solve", fracheat::ScenarioKind::diffusion},
      {"pennes", fracheat::ScenarioKind::pennes},
      {"mlf", fracheat::ScenarioKind::mlf_table},
      {"timescales", fracheat::ScenarioKind::timescales},
      {"oracle-compare", fracheat::ScenarioKind::oracle_compare},
      {"semiinf", fracheat::ScenarioKind::semiinf},
      {"gibbs", fracheat::ScenarioKind::gibbs},
  };
  for (const auto& [name, kind] : commands) {
    CLI::App* sub = app.add_subcommand(name, "run a " + fracheat::to_string(kind) + " scenario");
    sub->add_option("--config", args.config, "scenario file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", args.out, "output directory");
    sub->add_option("--modes", args.modes, "override the truncation")->check(CLI::PositiveNumber);
    sub->add_option("--fejer", args.fejer, "on, off, auto or an order");
    sub->callback([&rc, &args, kind = kind] { rc = execute(kind, args); });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  return rc;
}
