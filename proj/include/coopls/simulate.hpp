#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>

#include "coopls/instance.hpp"

namespace coopls {

struct IntRange {
  long long lo = 0;
  long long hi = 0;
};

/// How a trial decides success. Canonical judges only the tie-broken grand
/// plan; Exhaustive succeeds when any optimal grand plan yields a core
/// member, so it can only report more successes than Canonical.
enum class PlanMode { Canonical, Exhaustive };

struct SimConfig {
  int players = 2;
  int periods = 2;
  long long trials = 1;
  std::uint64_t seed = 0;
  IntRange demand{0, 30};
  IntRange unit_cost{0, 10};  // production, holding and backlogging rates
  IntRange setup{0, 50};
  PlanMode mode = PlanMode::Exhaustive;
  int plan_cap = 10000;
  int threads = 0;  // 0 = hardware concurrency
};

/// Counter-based random stream: every (seed, trial) pair opens its own
/// deterministic stream, so trials can run on any thread in any order and
/// still see identical draws.
class TrialStream {
public:
  TrialStream(std::uint64_t seed, std::uint64_t trial);
  std::uint64_t next();
  /// Uniform integer in [lo, hi], unbiased via rejection sampling.
  long long uniform(long long lo, long long hi);

private:
  std::uint64_t state_;
};

/// Instance for one trial. Draw order per player: demands for each period,
/// then production rates, then the periods-1 meaningful holding rates, then
/// the periods-1 backlogging rates, then setup costs. This order is part of
/// the reproducibility contract and must not change.
SIInstance generate_instance(const SimConfig& config, long long trial);

struct SuccessReport {
  SimConfig config;
  long long trials = 0;
  long long successes = 0;
  long long truncated_trials = 0;  // trials whose plan enumeration hit the cap

  double success_fraction() const;
  double success_percent() const;
  /// Wilson score interval at 95% for the success fraction, in percent.
  std::pair<double, double> wilson_ci95_percent() const;
};

/// Runs config.trials independent trials: draw an instance, build the game
/// and plans, compute the unitary Owen point(s) of the grand plan(s) and
/// test core membership exactly. Identical configs produce bit-identical
/// reports regardless of the thread count.
SuccessReport run_table_experiment(const SimConfig& config);

/// Single-row CSV (with header) echoing the config and the counts.
void write_report_csv(std::ostream& out, const SuccessReport& report);

/// Small markdown table for humans.
void write_report_markdown(std::ostream& out, const SuccessReport& report);

}  // namespace coopls
