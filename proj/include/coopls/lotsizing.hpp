#pragma once

#include <cstdint>
#include <vector>

#include "coopls/instance.hpp"
#include "coopls/lp.hpp"

namespace coopls {

inline constexpr int kNoOrder = -1;

/// cost[t][tau] = cheapest per-unit cost of covering period tau's demand
/// with an order placed in period t: the production rate at t plus the
/// chain of holding rates (t..tau-1) when serving forward, or backlogging
/// rates (tau..t-1) when serving late. cost[t][t] is just the production
/// rate. Indices are 0-based.
struct UnitCostMatrix {
  int T = 0;
  std::vector<std::vector<Rat>> cost;
};

UnitCostMatrix unit_cost_matrix(const CoalitionParams& params);

/// An ordering plan: producer[tau] is the period whose order covers period
/// tau's demand, kNoOrder exactly when that demand is zero. The remaining
/// fields are derived: which periods order at all, who serves whom, the
/// per-unit cost actually paid per demand period, and the setup total.
struct OrderingPlan {
  std::vector<int> producer;
  std::vector<char> ordered;             // ordered[t] = 1 iff some demand is assigned to t
  std::vector<std::vector<int>> served;  // served[t] = demand periods covered from t
  std::vector<int> open_periods;         // ascending list of ordering periods
  std::vector<Rat> unit_cost;            // per-unit cost paid for period tau (0 if no demand)
  Rat total_setup;

  /// Full cost of running this plan: sum of unit_cost*demand plus setups.
  Rat plan_cost(const CoalitionParams& params) const;

  std::uint32_t open_mask() const;

  bool operator==(const OrderingPlan& other) const {
    return producer == other.producer;
  }
};

/// Derives the dependent fields from a producer assignment and checks it
/// against the parameters. Throws Error(InconsistentPlan) when the shape is
/// wrong, a producer index is out of range, or the zero-demand pattern does
/// not match kNoOrder entries.
OrderingPlan make_plan(const CoalitionParams& params, std::vector<int> producer);

struct SolveOptions {
  int brute_period_cap = 20;  // refuse exhaustive search beyond this horizon
  bool enumerate_all = false;
  int plan_cap = 10000;       // optimal-plan enumeration cap per solve
};

/// Result of a single-coalition solve. `canonical` breaks ties by fewest
/// ordering periods, then lexicographically smallest ordering-period set,
/// then assigning each demand to the smallest-index ordering period that
/// minimizes its unit cost. `all_plans` (only when enumerate_all) holds
/// every optimal plan: all optimal ordering-period sets crossed with every
/// unit-cost-minimizing assignment that uses the whole set, truncated at
/// plan_cap.
struct PlanSolution {
  Rat cost;
  OrderingPlan canonical;
  std::vector<OrderingPlan> all_plans;
  bool truncated = false;
};

/// Exhaustive search over ordering-period subsets. Exact reference solver;
/// throws Error(CapExceeded) when T exceeds options.brute_period_cap.
PlanSolution solve_bruteforce(const CoalitionParams& params,
                              const SolveOptions& options = {});

/// Polynomial solve: dynamic program over blocks of consecutive demand
/// periods served by an increasing sequence of ordering periods (the unit
/// cost matrix satisfies the Monge inequality, so an optimal non-crossing
/// assignment exists). Returns the same value and the same canonical plan
/// as solve_bruteforce. enumerate_all falls back to the subset scan and so
/// requires T within brute_period_cap.
PlanSolution solve_dp(const CoalitionParams& params,
                      const SolveOptions& options = {});

/// Value and dual prices of the transportation-style relaxation of the
/// lot-sizing problem. `unit_price[tau]` prices one unit of period tau's
/// demand; `setup_share[t][tau]` is the discount financed by setup budget t
/// (both 0 for zero-demand periods). These satisfy, exactly:
///   value == sum_tau demand[tau] * unit_price[tau]
///   sum_tau demand[tau] * setup_share[t][tau] <= setup[t]        for all t
///   unit_price[tau] - setup_share[t][tau] <= cost[t][tau]        for all t, tau
/// The relaxation is tight: value equals the integer optimum.
struct LpRelaxation {
  Rat value;
  std::vector<Rat> unit_price;
  std::vector<std::vector<Rat>> setup_share;
};

LpRelaxation solve_lp_relaxation(const CoalitionParams& params);

}  // namespace coopls
