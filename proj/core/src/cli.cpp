#include "dgelast/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "dgelast/errors.hpp"
#include "dgelast/study.hpp"
#include "dgelast/verify.hpp"

namespace dgelast {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;
constexpr int kExitVerify = 4;

std::string read_file(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << file.rdbuf();
  return ss.str();
}

void print_table(const StudyResult& result, std::ostream& os) {
  const auto& table = result.table;
  os << "\n";
  char line[160];
  std::snprintf(line, sizeof(line), "%5s %10s %8s %12s %8s %12s %8s %6s", "level", "h", "n_dof", "l2_error",
                "rate", "energy_err", "rate", "iters");
  os << line << "\n";
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const ErrorReport& row = table.rows[i];
    char l2r[16] = "-", enr[16] = "-";
    if (i > 0) {
      std::snprintf(l2r, sizeof(l2r), "%.3g", table.l2_rates[i - 1]);
      std::snprintf(enr, sizeof(enr), "%.3g", table.energy_rates[i - 1]);
    }
    std::snprintf(line, sizeof(line), "%5d %10.4g %8d %12.6g %8s %12.6g %8s %6d", row.level, row.h, row.n_dof,
                  row.l2_error, l2r, row.energy_error, enr, result.iterations[i]);
    os << line << "\n";
  }
  os << "\nartifacts written to " << result.config.out_dir << "/study.csv (+ study_l2.dat, study_energy.dat)\n";
}

} // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"hp interior-penalty DG solver for plane elasticity: runs a "
               "manufactured-solution convergence study or the built-in verification suite"};
  app.get_formatter()->column_width(34);

  std::string config_path;
  std::string method_override, levels_override, out_dir_override;
  int degree_override = 0, d_override = 0;
  double beta_override = std::nan(""), gamma_override = std::nan("");
  bool verify = false, quiet = false;

  app.add_option("--config", config_path, "study configuration file (key = value lines)")->required();
  app.add_option("--method", method_override, "override method: sipg, iipg or nipg");
  app.add_option("--degree", degree_override, "override polynomial degree r");
  app.add_option("--levels", levels_override, "override mesh levels, e.g. 1,2,3");
  app.add_option("--beta", beta_override, "override jump penalty beta");
  app.add_option("--gamma", gamma_override, "override normal-jump penalty gamma");
  app.add_option("--superpenalty-d", d_override, "override penalty exponent d");
  app.add_option("--out-dir", out_dir_override, "override artifact directory");
  app.add_flag("--verify", verify, "run the invariant suite instead of a study");
  app.add_flag("--quiet", quiet, "suppress progress output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return kExitConfig;
  }

  try {
    std::vector<std::string> warnings;
    StudyConfig config = parse_config(read_file(config_path), &warnings);

    bool d_overridden = false;
    if (!method_override.empty()) config.method = method_from_name(method_override);
    if (degree_override > 0) config.degree = degree_override;
    if (!levels_override.empty()) {
      config.levels.clear();
      std::stringstream ss(levels_override);
      std::string item;
      while (std::getline(ss, item, ',')) config.levels.push_back(std::stoi(item));
    }
    if (!std::isnan(beta_override)) config.beta = beta_override;
    if (!std::isnan(gamma_override)) config.gamma = gamma_override;
    if (d_override > 0) {
      config.superpenalty_d = d_override;
      d_overridden = true;
    }
    if (!method_override.empty() && !d_overridden)
      config.superpenalty_d = config.method == MethodKind::sipg ? 1 : 3;
    if (!out_dir_override.empty()) config.out_dir = out_dir_override;
    config.validate();

    if (!quiet)
      for (const std::string& warning : warnings) std::cerr << "warning: " << warning << "\n";

    if (verify) {
      const int failures = run_verification(std::cout);
      return failures == 0 ? kExitOk : kExitVerify;
    }

    const StudyResult result = run_study(config, nullptr, quiet ? nullptr : &std::cout);
    if (!quiet) print_table(result, std::cout);
    if (!result.complete) {
      std::cerr << "solver failed to converge at level " << result.failed_level << "\n";
      return kExitSolver;
    }
    return kExitOk;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}

} // namespace dgelast
