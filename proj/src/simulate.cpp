#include "coopls/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "coopls/allocations.hpp"
#include "coopls/game.hpp"

namespace coopls {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

const char* mode_name(PlanMode mode) {
  return mode == PlanMode::Canonical ? "canonical" : "exhaustive";
}

}  // namespace

TrialStream::TrialStream(std::uint64_t seed, std::uint64_t trial) {
  // Mix both keys through the generator before use so that nearby seeds and
  // trial indices open unrelated streams.
  std::uint64_t a = seed;
  std::uint64_t b = trial ^ 0x5851F42D4C957F2Dull;
  state_ = splitmix64(a) ^ splitmix64(b);
  (void)next();
}

std::uint64_t TrialStream::next() { return splitmix64(state_); }

long long TrialStream::uniform(long long lo, long long hi) {
  const std::uint64_t span =
      static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1u;
  if (span == 0) return static_cast<long long>(next());  // full 64-bit range
  const std::uint64_t limit = span * (~0ull / span);
  std::uint64_t draw;
  do {
    draw = next();
  } while (draw >= limit);
  return lo + static_cast<long long>(draw % span);
}

SIInstance generate_instance(const SimConfig& config, long long trial) {
  TrialStream rng(config.seed, static_cast<std::uint64_t>(trial));
  SIInstance inst;
  inst.n = config.players;
  inst.T = config.periods;
  for (int i = 0; i < config.players; ++i) {
    PlayerData pd;
    for (int t = 0; t < config.periods; ++t) {
      pd.demand.push_back(rng.uniform(config.demand.lo, config.demand.hi));
    }
    for (int t = 0; t < config.periods; ++t) {
      pd.prod.emplace_back(
          static_cast<long>(rng.uniform(config.unit_cost.lo, config.unit_cost.hi)));
    }
    for (int t = 0; t + 1 < config.periods; ++t) {
      pd.hold.emplace_back(
          static_cast<long>(rng.uniform(config.unit_cost.lo, config.unit_cost.hi)));
    }
    pd.hold.emplace_back(0);
    for (int t = 0; t + 1 < config.periods; ++t) {
      pd.backlog.emplace_back(
          static_cast<long>(rng.uniform(config.unit_cost.lo, config.unit_cost.hi)));
    }
    pd.backlog.emplace_back(0);
    for (int t = 0; t < config.periods; ++t) {
      pd.setup.emplace_back(
          static_cast<long>(rng.uniform(config.setup.lo, config.setup.hi)));
    }
    inst.players.push_back(std::move(pd));
  }
  return inst;
}

namespace {

struct TrialOutcome {
  bool success = false;
  bool truncated = false;
};

TrialOutcome run_trial(const SimConfig& config, long long trial) {
  const ValidatedInstance inst = validate(generate_instance(config, trial));
  GameAndProfile built = build_game(inst);
  TrialOutcome outcome;
  if (config.mode == PlanMode::Canonical) {
    const Allocation point =
        unitary_owen_point(inst, built.profile.plan(inst.grand()));
    outcome.success = core_membership(built.game, point).member();
    return outcome;
  }
  SolveOptions options;
  options.enumerate_all = true;
  options.plan_cap = config.plan_cap;
  const CoalitionParams grand = coalition_params(inst, inst.grand());
  PlanSolution grand_sol = solve_dp(grand, options);
  outcome.truncated = grand_sol.truncated;
  for (const OrderingPlan& plan : grand_sol.all_plans) {
    const Allocation point = unitary_owen_point(inst, plan);
    if (core_membership(built.game, point).member()) {
      outcome.success = true;
      break;
    }
  }
  return outcome;
}

}  // namespace

SuccessReport run_table_experiment(const SimConfig& config) {
  if (config.players < 1 || config.periods < 1 || config.trials < 1) {
    fail(Errc::BadInput, "simulation needs at least one player, period and trial");
  }
  if (config.demand.lo < 0 || config.demand.lo > config.demand.hi ||
      config.unit_cost.lo < 0 || config.unit_cost.lo > config.unit_cost.hi ||
      config.setup.lo < 0 || config.setup.lo > config.setup.hi) {
    fail(Errc::BadInput, "simulation ranges must satisfy 0 <= lo <= hi");
  }
  SuccessReport report;
  report.config = config;
  report.trials = config.trials;

  unsigned workers = config.threads > 0
                         ? static_cast<unsigned>(config.threads)
                         : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned long long>(workers,
                                         static_cast<unsigned long long>(config.trials));
  if (workers <= 1) {
    for (long long trial = 0; trial < config.trials; ++trial) {
      const TrialOutcome outcome = run_trial(config, trial);
      report.successes += outcome.success ? 1 : 0;
      report.truncated_trials += outcome.truncated ? 1 : 0;
    }
    return report;
  }
  // Per-worker tallies only: counts are order-independent, so the report is
  // identical no matter how trials land on threads.
  std::vector<long long> successes(workers, 0), truncated(workers, 0);
  std::vector<std::thread> pool;
  std::atomic<long long> next{0};
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      for (;;) {
        const long long trial = next.fetch_add(1);
        if (trial >= config.trials) return;
        const TrialOutcome outcome = run_trial(config, trial);
        successes[w] += outcome.success ? 1 : 0;
        truncated[w] += outcome.truncated ? 1 : 0;
      }
    });
  }
  for (auto& th : pool) th.join();
  for (unsigned w = 0; w < workers; ++w) {
    report.successes += successes[w];
    report.truncated_trials += truncated[w];
  }
  return report;
}

double SuccessReport::success_fraction() const {
  return trials == 0 ? 0.0
                     : static_cast<double>(successes) / static_cast<double>(trials);
}

double SuccessReport::success_percent() const { return 100.0 * success_fraction(); }

std::pair<double, double> SuccessReport::wilson_ci95_percent() const {
  if (trials == 0) return {0.0, 0.0};
  const double z = 1.959963984540054;
  const double nn = static_cast<double>(trials);
  const double p = success_fraction();
  const double denom = 1.0 + z * z / nn;
  const double center = (p + z * z / (2.0 * nn)) / denom;
  const double half =
      z * std::sqrt(p * (1.0 - p) / nn + z * z / (4.0 * nn * nn)) / denom;
  return {100.0 * std::max(0.0, center - half),
          100.0 * std::min(1.0, center + half)};
}

void write_report_csv(std::ostream& out, const SuccessReport& report) {
  const auto [lo, hi] = report.wilson_ci95_percent();
  out << "players,periods,trials,successes,success_percent,ci95_lo_percent,"
         "ci95_hi_percent,seed,mode,demand_lo,demand_hi,unit_lo,unit_hi,"
         "setup_lo,setup_hi,plan_cap,truncated_trials\n";
  out << report.config.players << ',' << report.config.periods << ','
      << report.trials << ',' << report.successes << ','
      << report.success_percent() << ',' << lo << ',' << hi << ','
      << report.config.seed << ',' << mode_name(report.config.mode) << ','
      << report.config.demand.lo << ',' << report.config.demand.hi << ','
      << report.config.unit_cost.lo << ',' << report.config.unit_cost.hi << ','
      << report.config.setup.lo << ',' << report.config.setup.hi << ','
      << report.config.plan_cap << ',' << report.truncated_trials << "\n";
}

void write_report_markdown(std::ostream& out, const SuccessReport& report) {
  const auto [lo, hi] = report.wilson_ci95_percent();
  out << "| players | periods | trials | successes | success % | 95% CI | "
         "truncated |\n";
  out << "|---|---|---|---|---|---|---|\n";
  out << "| " << report.config.players << " | " << report.config.periods
      << " | " << report.trials << " | " << report.successes << " | "
      << report.success_percent() << " | [" << lo << ", " << hi << "] | "
      << report.truncated_trials << " |\n";
  out << "\nmode: " << mode_name(report.config.mode) << ", seed: "
      << report.config.seed << ", demand [" << report.config.demand.lo << ","
      << report.config.demand.hi << "], unit costs ["
      << report.config.unit_cost.lo << "," << report.config.unit_cost.hi
      << "], setup [" << report.config.setup.lo << ","
      << report.config.setup.hi << "]\n";
}

}  // namespace coopls
