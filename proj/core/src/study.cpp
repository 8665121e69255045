#include "dgelast/study.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include "dgelast/errors.hpp"
#include "dgelast/solver.hpp"

namespace dgelast {

namespace {

std::string fmt_g(double value, int significant) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", significant, value);
  return buf;
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& value, int line_no, const std::string& key) {
  char* end = nullptr;
  const double v = std::strtod(value.c_str(), &end);
  if (end != value.c_str() + value.size() || value.empty())
    throw ConfigError("line " + std::to_string(line_no) + ": key '" + key + "' needs a number, got '" + value + "'");
  return v;
}

int parse_int(const std::string& value, int line_no, const std::string& key) {
  const double v = parse_double(value, line_no, key);
  const int i = static_cast<int>(v);
  if (static_cast<double>(i) != v)
    throw ConfigError("line " + std::to_string(line_no) + ": key '" + key + "' needs an integer, got '" + value + "'");
  return i;
}

std::vector<int> parse_levels(const std::string& value, int line_no) {
  std::vector<int> levels;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty())
      throw ConfigError("line " + std::to_string(line_no) + ": key 'levels' has an empty entry");
    levels.push_back(parse_int(item, line_no, "levels"));
  }
  if (levels.empty()) throw ConfigError("line " + std::to_string(line_no) + ": key 'levels' is empty");
  return levels;
}

std::string levels_to_string(const std::vector<int>& levels) {
  std::string out;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(levels[i]);
  }
  return out;
}

// A solve is accepted when it met the tolerance outright, or when it
// provably stagnated at the double-precision residual floor (superpenalized
// systems sit above 1e-10 there from level 4 on). Tolerances below 1e-12 are
// taken literally since no double iterate can be certified that far.
bool accept_solve(const SparseSystem& system, const SolveResult& sol, double tol) {
  if (sol.report.converged) return true;
  if (tol < 1e-12) return false;
  return sol.report.residual <= 30.0 * residual_floor_estimate(system, sol.x);
}

SolveResult solve_for_level(const SparseSystem& system, const DgConfig& dg, double tol, bool& accepted) {
  if (dg.superpenalty_d == 1) {
    SolveOptions options;
    options.symmetric_hint = dg.alpha == -1;
    options.tol = tol;
    try {
      SolveResult iterative = solve(system, options);
      if (accept_solve(system, iterative, tol)) {
        accepted = true;
        return iterative;
      }
    } catch (const SolverBreakdownError&) {
    }
  }
  SolveResult direct = solve_direct(system, tol);
  accepted = accept_solve(system, direct, tol);
  return direct;
}

} // namespace

int method_alpha(MethodKind method) {
  switch (method) {
    case MethodKind::sipg: return -1;
    case MethodKind::iipg: return 0;
    default: return 1;
  }
}

const char* method_name(MethodKind method) {
  switch (method) {
    case MethodKind::sipg: return "sipg";
    case MethodKind::iipg: return "iipg";
    default: return "nipg";
  }
}

MethodKind method_from_name(const std::string& name) {
  if (name == "sipg") return MethodKind::sipg;
  if (name == "iipg") return MethodKind::iipg;
  if (name == "nipg") return MethodKind::nipg;
  throw ConfigError("unknown method '" + name + "' (expected sipg, iipg or nipg)");
}

void StudyConfig::validate() const {
  if (degree < 1 || degree > kMaxBasisDegree) throw ConfigError("degree must be in [1, 4]");
  if (levels.empty()) throw ConfigError("levels must not be empty");
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (levels[i] < 1) throw ConfigError("levels must be positive");
    if (i > 0 && levels[i] <= levels[i - 1]) throw ConfigError("levels must be strictly increasing");
  }
  if (!(beta > 0.0)) throw ConfigError("beta must be positive");
  if (gamma < 0.0) throw ConfigError("gamma must be nonnegative");
  if (superpenalty_d < 1) throw ConfigError("superpenalty_d must be >= 1");
  if (lambda < 0.0) throw ConfigError("lambda must be nonnegative");
  if (!(mu > 0.0)) throw ConfigError("mu must be positive");
  if (!(tol > 0.0 && tol < 1.0)) throw ConfigError("tol must be in (0, 1)");
  if (case_name != "trig" && case_name != "linear" && case_name != "custom")
    throw ConfigError("unknown case '" + case_name + "' (expected trig, linear or custom)");
}

DgConfig StudyConfig::dg_config() const {
  DgConfig dg;
  dg.alpha = method_alpha(method);
  dg.beta = beta;
  dg.gamma = gamma;
  dg.degree = degree;
  dg.superpenalty_d = superpenalty_d;
  dg.penalty_h_mode = DgConfig::PenaltyHMode::global;
  return dg;
}

StudyConfig parse_config(const std::string& text, std::vector<std::string>* warnings) {
  StudyConfig config;
  bool d_set = false;

  std::stringstream ss(text);
  std::string raw;
  int line_no = 0;
  std::set<std::string> seen;
  while (std::getline(ss, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value', got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty key");
    if (!seen.insert(key).second)
      throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");

    if (key == "method") {
      config.method = method_from_name(value);
    } else if (key == "degree") {
      config.degree = parse_int(value, line_no, key);
    } else if (key == "levels") {
      config.levels = parse_levels(value, line_no);
    } else if (key == "beta") {
      config.beta = parse_double(value, line_no, key);
    } else if (key == "gamma") {
      config.gamma = parse_double(value, line_no, key);
    } else if (key == "superpenalty_d") {
      config.superpenalty_d = parse_int(value, line_no, key);
      d_set = true;
    } else if (key == "lambda") {
      config.lambda = parse_double(value, line_no, key);
    } else if (key == "mu") {
      config.mu = parse_double(value, line_no, key);
    } else if (key == "case") {
      config.case_name = value;
    } else if (key == "tol") {
      config.tol = parse_double(value, line_no, key);
    } else if (key == "out_dir") {
      config.out_dir = value;
    } else {
      throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }

  if (!d_set) config.superpenalty_d = config.method == MethodKind::sipg ? 1 : 3;
  if (warnings && config.method == MethodKind::sipg && config.superpenalty_d > 1)
    warnings->push_back("sipg is adjoint consistent; superpenalty_d > 1 is unusual for it");

  config.validate();
  return config;
}

MmsCase builtin_case(const std::string& name, const Material& material) {
  if (name == "trig") return builtin_case_trig(material);
  if (name == "linear") return builtin_case_linear(material);
  throw ConfigError("no builtin case named '" + name + "'");
}

StudyResult run_study(const StudyConfig& config, const MmsCase* custom_case, std::ostream* log) {
  config.validate();
  if ((config.case_name == "custom") != (custom_case != nullptr))
    throw ConfigError("case 'custom' requires a caller-provided case (and only then)");

  const MmsCase mms = custom_case ? *custom_case : builtin_case(config.case_name, config.material());
  const ReferenceBasis basis(config.degree);
  const DgConfig dg = config.dg_config();
  const ProblemData data = mms.problem_data(config.material());

  StudyResult result;
  result.config = config;

  if (log)
    *log << "method=" << method_name(config.method) << " degree=" << config.degree << " beta=" << config.beta
         << " gamma=" << config.gamma << " d=" << config.superpenalty_d << " case=" << config.case_name << "\n";

  std::vector<ErrorReport> rows;
  for (const int level : config.levels) {
    const auto t0 = std::chrono::steady_clock::now();
    const Mesh mesh = classify_boundary(build_structured(level, mms.domain), mms.dirichlet_region);
    const SparseSystem system = assemble(mesh, basis, dg, data);

    bool accepted = false;
    const SolveResult sol = solve_for_level(system, dg, config.tol, accepted);

    if (!accepted) {
      result.complete = false;
      result.failed_level = level;
      if (log)
        *log << "level " << level << ": solver failed to converge (" << method_name(sol.report.method)
             << " residual " << sol.report.residual << " after " << sol.report.iterations << " iterations)\n";
      break;
    }

    ErrorReport row;
    row.level = level;
    row.h = mesh.h_cell;
    row.n_dof = system.n_dof;
    row.l2_error = l2_error(mesh, basis, sol.x, mms.u);
    const EnergyParts parts = energy_error_parts(mesh, basis, dg, data.materials, sol.x, mms.u, mms.grad_u);
    row.volume_part = std::sqrt(parts.volume_sq);
    row.jump_part = std::sqrt(parts.jump_sq);
    row.energy_error = std::sqrt(parts.total());
    rows.push_back(row);
    result.iterations.push_back(sol.report.iterations);

    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    result.level_seconds.push_back(seconds);
    if (log)
      *log << "level " << level << ": h=" << fmt_g(row.h, 6) << " n_dof=" << row.n_dof << " l2="
           << fmt_g(row.l2_error, 6) << " energy=" << fmt_g(row.energy_error, 6) << " "
           << method_name(sol.report.method) << " iters=" << sol.report.iterations << " res="
           << fmt_g(sol.report.residual, 3) << " (" << fmt_g(seconds, 3) << " s)\n";
  }

  result.table = make_convergence_table(std::move(rows), config.degree);
  write_artifacts(result);
  return result;
}

std::string format_csv(const StudyResult& result) {
  const StudyConfig& config = result.config;
  std::string out;
  out += "# method = " + std::string(method_name(config.method)) + "\n";
  out += "# degree = " + std::to_string(config.degree) + "\n";
  out += "# levels = " + levels_to_string(config.levels) + "\n";
  out += "# beta = " + fmt_g(config.beta, 6) + "\n";
  out += "# gamma = " + fmt_g(config.gamma, 6) + "\n";
  out += "# superpenalty_d = " + std::to_string(config.superpenalty_d) + "\n";
  out += "# lambda = " + fmt_g(config.lambda, 6) + "\n";
  out += "# mu = " + fmt_g(config.mu, 6) + "\n";
  out += "# case = " + config.case_name + "\n";
  out += "# tol = " + fmt_g(config.tol, 6) + "\n";
  out += "level,h,n_dof,l2_error,energy_error,l2_rate,energy_rate,iterations\n";

  // Rates are recomputed from the printed errors so the emitted file is
  // self-consistent under reparsing.
  const auto& rows = result.table.rows;
  std::vector<double> printed_l2, printed_energy;
  for (const ErrorReport& row : rows) {
    printed_l2.push_back(std::strtod(fmt_g(row.l2_error, 6).c_str(), nullptr));
    printed_energy.push_back(std::strtod(fmt_g(row.energy_error, 6).c_str(), nullptr));
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const ErrorReport& row = rows[i];
    out += std::to_string(row.level) + "," + fmt_g(row.h, 6) + "," + std::to_string(row.n_dof) + "," +
           fmt_g(row.l2_error, 6) + "," + fmt_g(row.energy_error, 6) + ",";
    if (i > 0) out += fmt_g(std::log2(printed_l2[i - 1] / printed_l2[i]), 3);
    out += ",";
    if (i > 0) out += fmt_g(std::log2(printed_energy[i - 1] / printed_energy[i]), 3);
    out += "," + std::to_string(result.iterations[i]) + "\n";
  }
  if (!result.complete)
    out += "# incomplete: solver did not converge at level " + std::to_string(result.failed_level) + "\n";
  return out;
}

std::string format_plot_data(const StudyResult& result, bool energy_norm) {
  std::string out;
  for (const ErrorReport& row : result.table.rows) {
    const double error = energy_norm ? row.energy_error : row.l2_error;
    out += fmt_g(std::log(row.h), 12) + " " + fmt_g(std::log(error), 12) + "\n";
  }
  return out;
}

void write_artifacts(const StudyResult& result) {
  namespace fs = std::filesystem;
  const fs::path dir(result.config.out_dir);
  fs::create_directories(dir);
  const auto write = [&](const fs::path& name, const std::string& content) {
    std::ofstream file(dir / name, std::ios::binary);
    if (!file) throw Error("cannot write " + (dir / name).string());
    file << content;
  };
  write("study.csv", format_csv(result));
  write("study_l2.dat", format_plot_data(result, false));
  write("study_energy.dat", format_plot_data(result, true));
}

} // namespace dgelast
