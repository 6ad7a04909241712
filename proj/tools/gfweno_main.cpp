#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "gfweno/cases.hpp"

namespace {

constexpr int kUsageError = 2;
constexpr int kSolverError = 3;

std::vector<int> parse_n_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw gfweno::ConfigError("bad entry '" + item + "' in n list");
    }
  }
  return out;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw gfweno::ConfigError("cannot open output file '" + path + "'");
  return os;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Well-balanced WENO global-flux schemes for 1D balance laws"};
  app.require_subcommand(1);

  std::string case_id, scheme_id, out_path, n_list_text;
  int n = 0;
  double t_end = 0.0, cfl = 0.0, amplitude = 0.0;
  bool steady = false;
  bool have_t_end = false;

  auto* solve = app.add_subcommand("solve", "Run one case and emit the final state");
  solve->add_option("--case", case_id, "case id")->required();
  solve->add_option("--scheme", scheme_id, "scheme id")->required();
  solve->add_option("--n", n, "interval count")->required();
  auto* solve_t = solve->add_option("--t-end", t_end, "final time");
  solve->add_flag("--steady", steady, "march to the discrete steady state");
  solve->add_option("--cfl", cfl, "CFL number");
  solve->add_option("--out", out_path, "CSV output path");

  auto* conv = app.add_subcommand("converge", "L1 convergence table over a mesh ladder");
  conv->add_option("--case", case_id, "case id")->required();
  conv->add_option("--scheme", scheme_id, "scheme id")->required();
  conv->add_option("--n-list", n_list_text, "comma-separated ascending interval counts")
      ->required();
  auto* conv_t = conv->add_option("--t-end", t_end, "final time (default: case mode)");
  conv->add_flag("--steady", steady, "force steady mode");
  conv->add_option("--cfl", cfl, "CFL number");
  conv->add_option("--out", out_path, "CSV output path");

  auto* pert = app.add_subcommand(
      "perturb", "Deviations of a perturbed run from the underlying steady state");
  pert->add_option("--case", case_id, "case id")->required();
  pert->add_option("--scheme", scheme_id, "scheme id")->required();
  pert->add_option("--n", n, "interval count")->required();
  pert->add_option("--t-end", t_end, "final time")->required();
  pert->add_option("--amplitude", amplitude, "perturbation amplitude")->required();
  pert->add_option("--out", out_path, "CSV output path");

  auto* lc = app.add_subcommand("list-cases", "List registered case ids");
  auto* ls = app.add_subcommand("list-schemes", "List valid scheme ids");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kUsageError;
  }

  have_t_end = solve_t->count() > 0 || conv_t->count() > 0;

  try {
    if (lc->parsed()) {
      for (const std::string& id : gfweno::case_catalog())
        std::cout << id << "  -  " << gfweno::case_description(id) << "\n";
      return 0;
    }
    if (ls->parsed()) {
      for (const std::string& id : gfweno::scheme_catalog()) std::cout << id << "\n";
      return 0;
    }

    gfweno::RunOverrides ov;
    if (cfl > 0.0) ov.cfl = cfl;
    if (steady) ov.steady = true;

    if (solve->parsed()) {
      if (have_t_end) ov.t_end = t_end;
      const gfweno::SolveResult r = gfweno::run_case(case_id, scheme_id, n, ov);
      std::cout << "case=" << case_id << " scheme=" << scheme_id << " n=" << n;
      if (r.steady_mode)
        std::cout << " steady=" << (r.converged ? "converged" : "best-effort")
                  << " steps=" << r.steps;
      else
        std::cout << " t=" << r.t_end;
      if (r.has_error)
        for (size_t c = 0; c < r.l1.size(); ++c)
          std::cout << " l1_c" << c << "=" << gfweno::format_sig17(r.l1[c]);
      std::cout << " wall_s=" << r.wall_seconds << "\n";
      if (!out_path.empty()) {
        auto os = open_output(out_path);
        gfweno::write_state_csv(os, r.grid, r.final_state, *r.model);
      }
      return 0;
    }

    if (conv->parsed()) {
      if (have_t_end) ov.t_end = t_end;
      const std::vector<int> ns = parse_n_list(n_list_text);
      const auto rows = gfweno::convergence_study(case_id, scheme_id, ns, ov);
      std::ostringstream table;
      gfweno::write_convergence_csv(table, rows);
      std::cout << table.str();
      if (!out_path.empty()) {
        auto os = open_output(out_path);
        os << table.str();
      }
      return 0;
    }

    if (pert->parsed()) {
      const auto trace =
          gfweno::perturbation_study(case_id, scheme_id, n, t_end, amplitude);
      const gfweno::SchemeId sid = gfweno::SchemeId::parse(scheme_id);
      const gfweno::PreparedCase pc = gfweno::prepare_case(case_id, sid, n, {});
      if (!out_path.empty()) {
        auto os = open_output(out_path);
        gfweno::write_perturbation_csv(os, trace, *pc.model);
      } else {
        gfweno::write_perturbation_csv(std::cout, trace, *pc.model);
      }
      return 0;
    }
  } catch (const gfweno::ConfigError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kSolverError;
  }
  return 0;
}
