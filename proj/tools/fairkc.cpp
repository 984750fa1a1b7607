// fairkc: command-line front end for the fair k-center library.

#include <cstdio>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fairkc/audit.hpp"
#include "fairkc/harness.hpp"
#include "fairkc/instances.hpp"
#include "fairkc/oracle.hpp"
#include "fairkc/solvers.hpp"

namespace {

using namespace fairkc;
using json = nlohmann::ordered_json;

constexpr int kExitError = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitParse = 3;

void write_or_print(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    write_file(path, text);
  }
}

json num(double v) {
  if (std::isinf(v)) return "inf";
  return v;
}

struct SolveArgs {
  std::string algo = "alg-gf";
  int k = 0;
  double delta = 0.2;
  double theta = 0.8;
  std::optional<unsigned long long> seed;
  std::string input;
  std::string output;
};

Solution run_algorithm(const Instance& inst, const SolveArgs& a) {
  const auto gfb = GFBounds::from_delta(inst, a.delta);
  auto dsb = [&] { return DSBounds::from_theta(inst, a.k, a.theta); };
  if (a.algo == "color-blind") return gonzalez(inst, a.k, a.seed);
  if (a.algo == "alg-gf") return alg_gf(inst, a.k, gfb, a.seed);
  if (a.algo == "alg-ds") return alg_ds(inst, dsb());
  if (a.algo == "gf-to-gfds") {
    return gf_to_gfds(inst, alg_gf(inst, a.k, gfb, a.seed), gfb, dsb());
  }
  if (a.algo == "ds-to-gfds") return ds_to_gfds(inst, alg_ds(inst, dsb()), gfb, dsb());
  throw std::invalid_argument("unknown algorithm '" + a.algo + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fair k-center clustering under group-fairness and center-diversity constraints"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "Write a generated instance as matrix JSON");
  std::string family = "random";
  int l = 2, size = 4, gk = 5, group_size = 6, n = 20, m = 2, dim = 2;
  double radius = 1.0, alpha_ap = 1.0;
  std::string pattern = "alternating";
  std::vector<double> proportions;
  unsigned long long gen_seed = 0;
  std::string gen_out;
  gen->add_option("--family", family, "l-community | gadget | random")
      ->check(CLI::IsMember({"l-community", "gadget", "random"}));
  gen->add_option("--l", l, "communities");
  gen->add_option("--size", size, "points per community");
  gen->add_option("--pattern", pattern, "alternating | odd-mixed-last | ds-variant");
  gen->add_option("--R", radius, "separation distance");
  gen->add_option("--k", gk, "gadget k");
  gen->add_option("--group-size", group_size, "gadget points per color");
  gen->add_option("--alpha-ap", alpha_ap, "gadget proportionality factor");
  gen->add_option("--n", n, "random: points");
  gen->add_option("--m", m, "random: colors");
  gen->add_option("--dim", dim, "random: dimension");
  gen->add_option("--proportions", proportions, "random: color proportions");
  gen->add_option("--seed", gen_seed, "random: seed");
  gen->add_option("--output", gen_out, "output path (default stdout)");

  // solve
  auto* solve = app.add_subcommand("solve", "Run one algorithm");
  SolveArgs sa;
  unsigned long long solve_seed = 0;
  solve->add_option("--algo", sa.algo, "algorithm")->check(CLI::IsMember(kAlgorithms));
  solve->add_option("--k", sa.k, "number of centers")->required();
  solve->add_option("--delta", sa.delta, "GF slack");
  solve->add_option("--theta", sa.theta, "DS lower-bound factor");
  auto* seed_opt = solve->add_option("--seed", solve_seed, "first-center seed");
  solve->add_option("--input", sa.input, "instance (.csv or matrix .json)")->required();
  solve->add_option("--output", sa.output, "solution JSON (default stdout)");

  // evaluate
  auto* eval = app.add_subcommand("evaluate", "Report violations and audits for a solution");
  std::string sol_path, eval_input;
  int eval_k = 0, eval_p = 1;
  double eval_delta = 0.2, eval_theta = 0.8;
  eval->add_option("--solution", sol_path, "solution JSON")->required();
  eval->add_option("--input", eval_input, "instance")->required();
  eval->add_option("--k", eval_k, "budget k (default: number of centers)");
  eval->add_option("--delta", eval_delta, "GF slack");
  eval->add_option("--theta", eval_theta, "DS lower-bound factor");
  eval->add_option("--p", eval_p, "socially-fair exponent");

  // oracle
  auto* orc = app.add_subcommand("oracle", "Exact optimum by exhaustive search (n <= 12, k <= 3)");
  std::string orc_input, orc_out;
  int orc_k = 1;
  double orc_delta = 0.2, orc_theta = 0.8, orc_rho = 0.0;
  bool use_gf = false, use_ds = false;
  orc->add_option("--input", orc_input, "instance")->required();
  orc->add_option("--k", orc_k, "number of centers")->required();
  orc->add_flag("--gf", use_gf, "impose GF");
  orc->add_flag("--ds", use_ds, "impose DS");
  orc->add_option("--delta", orc_delta, "GF slack");
  orc->add_option("--theta", orc_theta, "DS lower-bound factor");
  orc->add_option("--rho", orc_rho, "allowed additive GF violation");
  orc->add_option("--output", orc_out, "solution JSON (default stdout)");

  // experiment
  auto* exp = app.add_subcommand("experiment", "Compare the five algorithms over k values");
  std::string cfg_path;
  exp->add_option("--config", cfg_path, "experiment config JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*gen) {
      Instance inst;
      if (family == "l-community") {
        inst = gen_l_community(l, size, radius, parse_community_pattern(pattern));
      } else if (family == "gadget") {
        inst = gen_proportional_gadget(gk, group_size, radius, alpha_ap);
      } else {
        if (proportions.empty()) proportions.assign(m, 1.0);
        inst = gen_random(n, m, dim, proportions, gen_seed);
      }
      write_or_print(gen_out, matrix_json(inst));
    } else if (*solve) {
      if (*seed_opt) sa.seed = solve_seed;
      const auto inst = load_instance(sa.input);
      write_or_print(sa.output, solution_json(run_algorithm(inst, sa)));
    } else if (*eval) {
      const auto inst = load_instance(eval_input);
      const auto sol = parse_solution_json(read_file(sol_path));
      sol.validate(inst);
      const int k = eval_k > 0 ? eval_k : static_cast<int>(sol.centers.size());
      const auto gfb = GFBounds::from_delta(inst, eval_delta);
      const auto dsb = DSBounds::from_theta(inst, k, eval_theta);
      const auto rep = evaluate(inst, sol, gfb, dsb);
      json out;
      out["cost"] = rep.cost;
      out["gf_violation"] = rep.gf_rho;
      out["ds_violation"] = rep.ds_violation;
      out["inactive_centers"] = rep.inactive_centers;
      out["min_alpha_nr"] = num(min_alpha_nr(inst, sol, k));
      out["socially_fair"] = socially_fair_cost(inst, sol, eval_p);
      out["min_alpha_proportional"] = num(min_alpha_proportional(inst, sol, k));
      std::cout << out.dump(2) << "\n";
    } else if (*orc) {
      const auto inst = load_instance(orc_input);
      std::optional<GFBounds> gfb;
      std::optional<DSBounds> dsb;
      if (use_gf) gfb = GFBounds::from_delta(inst, orc_delta);
      if (use_ds) dsb = DSBounds::from_theta(inst, orc_k, orc_theta);
      const auto best = brute_force_opt(inst, orc_k, gfb, dsb, orc_rho);
      if (!best) throw InfeasibleError("no solution meets the constraints");
      std::fprintf(stderr, "cost %.17g\n", best->cost);
      write_or_print(orc_out, solution_json(best->solution));
    } else if (*exp) {
      const auto cfg = parse_experiment_config(read_file(cfg_path));
      const auto inst = load_instance(cfg.input);
      const auto result = run_experiment(inst, cfg);
      emit_report(result.report, cfg.output, report_format_for(cfg.output));
      write_file(cfg.output + ".timing.json", timing_json(result.timing));
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return 0;
}
