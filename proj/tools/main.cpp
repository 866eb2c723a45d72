// Command-line front end: solve single coalitions, tabulate whole games,
// compute allocations, check core membership, emit setup-apportionment
// certificates and run seeded success-rate experiments.
//
// Exit codes: 0 when the command ran to completion (whatever the verdict),
// 2 for invalid input (bad usage, malformed files, infeasible requests),
// 3 when a size cap was exceeded.

#include <fstream>
#include <iostream>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "coopls/allocations.hpp"
#include "coopls/game.hpp"
#include "coopls/instance.hpp"
#include "coopls/lotsizing.hpp"
#include "coopls/simulate.hpp"
#include "coopls/surplus.hpp"

namespace {

using namespace coopls;

int exit_code_for(Errc code) { return code == Errc::CapExceeded ? 3 : 2; }

/// Stream pair for --out: the named file when given, stdout otherwise.
class OutputTarget {
public:
  explicit OutputTarget(const std::string& path) {
    if (path.empty()) return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) fail(Errc::BadInput, "cannot open output file " + path);
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
  std::unique_ptr<std::ofstream> file_;
};

ValidatedInstance load(const std::string& path) {
  return validate(load_instance_file(path));
}

Allocation load_allocation(const std::string& path, int n) {
  std::ifstream in(path);
  if (!in) fail(Errc::BadInput, "cannot read allocation file " + path);
  Allocation x = read_allocation_csv(in);
  if (static_cast<int>(x.shares.size()) != n) {
    fail(Errc::LengthMismatch,
         "allocation has " + std::to_string(x.shares.size()) +
             " shares but the instance has " + std::to_string(n) + " players");
  }
  return x;
}

std::string producers_text(const OrderingPlan& plan) {
  std::string out;
  for (std::size_t t = 0; t < plan.producer.size(); ++t) {
    if (t) out += ' ';
    out += std::to_string(plan.producer[t] + 1);  // 0 means "no order"
  }
  return out;
}

int cmd_solve(const std::string& instance_path, std::uint32_t mask,
              bool all_plans) {
  const ValidatedInstance inst = load(instance_path);
  const Coalition S{mask == 0 ? inst.grand().mask : mask};
  const CoalitionParams params = coalition_params(inst, S);
  SolveOptions options;
  options.enumerate_all = all_plans;
  const PlanSolution sol = solve_dp(params, options);

  std::cout << "coalition: " << S.to_string() << "\n";
  std::cout << "mask: " << S.mask << "\n";
  std::cout << "cost: " << rat_to_string(sol.cost) << "\n";
  std::cout << "producers: " << producers_text(sol.canonical) << "\n";
  std::cout << "open periods:";
  for (int t : sol.canonical.open_periods) std::cout << ' ' << (t + 1);
  std::cout << "\n";
  const UnitPriceVector prices = unitary_prices(params, sol.canonical);
  std::cout << "unit prices:";
  for (const Rat& p : prices.price) std::cout << ' ' << rat_to_string(p);
  std::cout << "\n";
  if (all_plans) {
    std::cout << "optimal plans: " << sol.all_plans.size()
              << (sol.truncated ? " (truncated)" : " (complete)") << "\n";
    for (std::size_t i = 0; i < sol.all_plans.size(); ++i) {
      std::cout << "plan " << (i + 1) << ": " << producers_text(sol.all_plans[i])
                << "\n";
    }
  }
  return 0;
}

int cmd_game(const std::string& instance_path, const std::string& out_path) {
  const ValidatedInstance inst = load(instance_path);
  const GameAndProfile built = build_game(inst);
  OutputTarget out(out_path);
  write_game_csv(out.stream(), built.game);
  return 0;
}

int cmd_allocate(const std::string& instance_path, const std::string& rule,
                 const std::string& alpha_path, const std::string& out_path) {
  const ValidatedInstance inst = load(instance_path);
  Allocation x;
  if (rule == "dual") {
    x = dual_allocation(inst);
  } else if (rule == "unitary-owen") {
    const GameAndProfile built = build_game(inst);
    x = unitary_owen_point(inst, built.profile.plan(inst.grand()));
  } else if (rule == "nucleolus") {
    const GameAndProfile built = build_game(inst);
    x = nucleolus(built.game);
  } else if (rule == "owen-map") {
    const GameAndProfile built = build_game(inst);
    Allocation alpha;
    if (alpha_path.empty()) {
      alpha = nucleolus(surplus_game(inst, built.profile));
    } else {
      alpha = load_allocation(alpha_path, inst.n());
    }
    const PISituation pi = build_pi_situation(inst, built.profile, alpha);
    x = pi_owen_point(pi);
  } else {
    fail(Errc::BadInput, "unknown allocation rule " + rule);
  }
  OutputTarget out(out_path);
  write_allocation_csv(out.stream(), x);
  return 0;
}

int cmd_check_core(const std::string& instance_path,
                   const std::string& allocation_path) {
  const ValidatedInstance inst = load(instance_path);
  const GameAndProfile built = build_game(inst);
  const Allocation x = load_allocation(allocation_path, inst.n());
  const CoreReport report = core_membership(built.game, x);
  std::cout << "total: " << rat_to_string(x.total()) << "\n";
  std::cout << "grand cost: " << rat_to_string(built.game.value(inst.grand()))
            << "\n";
  if (report.member()) {
    std::cout << "status: core member\n";
    return 0;
  }
  std::cout << "status: not a core member\n";
  if (report.efficiency_gap != 0) {
    std::cout << "efficiency gap: " << rat_to_string(report.efficiency_gap)
              << "\n";
  }
  for (const auto& v : report.violations) {
    const Coalition S{v.mask};
    std::cout << "violation: " << S.to_string() << " overpays by "
              << rat_to_string(v.amount) << "\n";
  }
  return 0;
}

int cmd_certificate(const std::string& instance_path,
                    const std::string& out_path) {
  const ValidatedInstance inst = load(instance_path);
  const GameAndProfile built = build_game(inst);
  const CertificateResult result = core_certificate(inst, built.profile);
  if (!result.exists) {
    const Coalition witness{result.witness_mask};
    std::cout << "no certificate: coalition " << witness.to_string()
              << " would need to absorb more than its own setup total\n";
    return 0;
  }
  OutputTarget out(out_path);
  write_certificate_csv(out.stream(), result.certificate);
  return 0;
}

int cmd_simulate(const SimConfig& config, const std::string& out_path,
                 const std::string& markdown_path) {
  const SuccessReport report = run_table_experiment(config);
  OutputTarget out(out_path);
  write_report_csv(out.stream(), report);
  if (!markdown_path.empty()) {
    OutputTarget md(markdown_path);
    write_report_markdown(md.stream(), report);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact cooperative lot-sizing toolkit: per-coalition plans, "
               "cost games, allocations and seeded experiments"};
  app.require_subcommand(1);

  std::string instance_path, out_path, alpha_path, allocation_path;
  std::uint32_t mask = 0;
  bool all_plans = false;

  auto* solve = app.add_subcommand(
      "solve", "Solve the pooled ordering problem of one coalition");
  solve->add_option("instance", instance_path, "instance JSON file")
      ->required();
  solve->add_option("--coalition", mask,
                    "coalition bitmask (bit i = player i+1); default: everyone");
  solve->add_flag("--all-plans", all_plans, "enumerate every optimal plan");

  auto* game = app.add_subcommand(
      "game", "Tabulate the optimal cost of every coalition as CSV");
  game->add_option("instance", instance_path, "instance JSON file")->required();
  game->add_option("--out", out_path, "output CSV file (default: stdout)");

  std::string rule = "unitary-owen";
  auto* allocate =
      app.add_subcommand("allocate", "Compute a cost allocation as CSV");
  allocate->add_option("instance", instance_path, "instance JSON file")
      ->required();
  allocate
      ->add_option("--rule", rule,
                   "unitary-owen | dual | nucleolus | owen-map")
      ->check(CLI::IsMember(
          {"unitary-owen", "dual", "nucleolus", "owen-map"}));
  allocate->add_option(
      "--alpha", alpha_path,
      "surplus shares CSV for owen-map (default: surplus nucleolus)");
  allocate->add_option("--out", out_path, "output CSV file (default: stdout)");

  auto* check = app.add_subcommand(
      "check-core", "Test an allocation CSV for core membership");
  check->add_option("instance", instance_path, "instance JSON file")
      ->required();
  check->add_option("allocation", allocation_path, "allocation CSV file")
      ->required();

  auto* certificate = app.add_subcommand(
      "certificate",
      "Setup-apportionment certificate for the grand-plan charges");
  certificate->add_option("instance", instance_path, "instance JSON file")
      ->required();
  certificate->add_option("--out", out_path,
                          "output CSV file (default: stdout)");

  SimConfig config;
  config.trials = 1000;
  bool positive = false;
  std::string mode = "exhaustive";
  std::string markdown_path;
  auto* simulate = app.add_subcommand(
      "simulate", "Seeded success-rate experiment over random instances");
  simulate->add_option("--players", config.players, "players per instance");
  simulate->add_option("--periods", config.periods, "periods per instance");
  simulate->add_option("--trials", config.trials, "number of trials");
  simulate->add_option("--seed", config.seed, "stream seed");
  simulate->add_flag("--positive", positive,
                     "draw all demands and costs from [1, hi] instead of [0, hi]");
  simulate->add_option("--mode", mode, "canonical | exhaustive")
      ->check(CLI::IsMember({"canonical", "exhaustive"}));
  simulate->add_option("--plan-cap", config.plan_cap,
                       "optimal-plan enumeration cap per trial");
  simulate->add_option("--threads", config.threads,
                       "worker threads (0 = hardware)");
  simulate->add_option("--out", out_path, "report CSV file (default: stdout)");
  simulate->add_option("--markdown", markdown_path,
                       "also write a markdown report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (solve->parsed()) return cmd_solve(instance_path, mask, all_plans);
    if (game->parsed()) return cmd_game(instance_path, out_path);
    if (allocate->parsed())
      return cmd_allocate(instance_path, rule, alpha_path, out_path);
    if (check->parsed()) return cmd_check_core(instance_path, allocation_path);
    if (certificate->parsed()) return cmd_certificate(instance_path, out_path);
    if (simulate->parsed()) {
      config.mode =
          mode == "canonical" ? PlanMode::Canonical : PlanMode::Exhaustive;
      if (positive) {
        config.demand.lo = 1;
        config.unit_cost.lo = 1;
        config.setup.lo = 1;
      }
      return cmd_simulate(config, out_path, markdown_path);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
