#ifndef DGELAST_STUDY_HPP
#define DGELAST_STUDY_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "dgelast/analysis.hpp"
#include "dgelast/mms.hpp"

namespace dgelast {

enum class MethodKind { sipg, iipg, nipg };

int method_alpha(MethodKind method);
const char* method_name(MethodKind method);
MethodKind method_from_name(const std::string& name);

/// One convergence-study run: method, degree, mesh levels and penalties.
struct StudyConfig {
  MethodKind method = MethodKind::sipg;
  int degree = 1;
  std::vector<int> levels = {1, 2, 3, 4, 5};
  double beta = 125.0;
  double gamma = 0.0;
  int superpenalty_d = 1; // parse_config defaults this to 3 for iipg/nipg
  double lambda = 0.03;
  double mu = 0.035;
  std::string case_name = "trig";
  double tol = 1e-10;
  std::string out_dir = "out";

  void validate() const;
  DgConfig dg_config() const;
  Material material() const { return Material{lambda, mu}; }
};

/// Parses line-oriented `key = value` text ('#' starts a comment). Unknown
/// keys and malformed values raise ConfigError naming the line. Non-fatal
/// oddities (sipg with d > 1) are appended to `warnings` when given.
StudyConfig parse_config(const std::string& text, std::vector<std::string>* warnings = nullptr);

MmsCase builtin_case(const std::string& name, const Material& material);

struct StudyResult {
  StudyConfig config;
  ConvergenceTable table;
  std::vector<int> iterations;      // per completed level
  std::vector<double> level_seconds; // wall time per level, log output only
  bool complete = true;
  int failed_level = -1;
};

/// Runs the study level by level: mesh, assemble, solve, measure. Writes
/// study.csv plus study_l2.dat / study_energy.dat (ln h vs ln error) under
/// out_dir; a failed solve aborts the remaining levels and flags the CSV
/// incomplete. Pass a case for case_name == "custom".
StudyResult run_study(const StudyConfig& config, const MmsCase* custom_case = nullptr, std::ostream* log = nullptr);

/// CSV artifact: `# key = value` config echo, then the exact header
/// level,h,n_dof,l2_error,energy_error,l2_rate,energy_rate,iterations.
/// Rate columns are recomputed from the 6-significant-digit error columns so
/// the file is self-consistent.
std::string format_csv(const StudyResult& result);

std::string format_plot_data(const StudyResult& result, bool energy_norm);

void write_artifacts(const StudyResult& result);

} // namespace dgelast

#endif
