#include "coopls/lotsizing.hpp"

#include <algorithm>
#include <string>

namespace coopls {

namespace {

/// Lexicographic order on period sets encoded as bitmasks: the set whose
/// earliest differing period is present comes first ({1,4} < {2,3}).
bool lex_less(std::uint32_t a, std::uint32_t b) {
  if (a == b) return false;
  const std::uint32_t diff = a ^ b;
  const std::uint32_t low = diff & (~diff + 1);
  return (a & low) != 0;
}

/// (cost, #ordering periods, lex order of the set): the canonical tie-break.
struct RankedChoice {
  Rat cost;
  int opens = 0;
  std::uint32_t mask = 0;

  bool better_than(const RankedChoice& other) const {
    if (cost != other.cost) return cost < other.cost;
    if (opens != other.opens) return opens < other.opens;
    return lex_less(mask, other.mask);
  }
};

/// Assigns every positive-demand period to the smallest-index period of
/// `open_mask` minimizing its unit cost.
std::vector<int> canonical_assignment(const CoalitionParams& params,
                                      const UnitCostMatrix& matrix,
                                      std::uint32_t open_mask) {
  const int T = params.periods();
  std::vector<int> producer(T, kNoOrder);
  for (int tau = 0; tau < T; ++tau) {
    if (params.demand[tau] == 0) continue;
    int best = -1;
    for (int t = 0; t < T; ++t) {
      if (!((open_mask >> t) & 1u)) continue;
      if (best < 0 || matrix.cost[t][tau] < matrix.cost[best][tau]) best = t;
    }
    producer[tau] = best;
  }
  return producer;
}

Rat open_set_cost(const CoalitionParams& params, const UnitCostMatrix& matrix,
                  std::uint32_t open_mask) {
  const int T = params.periods();
  Rat total = 0;
  for (int t = 0; t < T; ++t) {
    if ((open_mask >> t) & 1u) total += params.setup[t];
  }
  for (int tau = 0; tau < T; ++tau) {
    if (params.demand[tau] == 0) continue;
    const Rat* best = nullptr;
    for (int t = 0; t < T; ++t) {
      if (!((open_mask >> t) & 1u)) continue;
      if (!best || matrix.cost[t][tau] < *best) best = &matrix.cost[t][tau];
    }
    total += Rat(static_cast<long>(params.demand[tau])) * *best;
  }
  return total;
}

OrderingPlan empty_plan(const CoalitionParams& params) {
  return make_plan(params, std::vector<int>(params.periods(), kNoOrder));
}

/// All optimal plans: for every ordering-period set achieving the optimal
/// value, every assignment that picks a unit-cost-minimizing period for
/// each demand and uses the whole set. Appends to out until the cap.
void enumerate_optimal_plans(const CoalitionParams& params,
                             const UnitCostMatrix& matrix, const Rat& optimum,
                             int plan_cap, std::vector<OrderingPlan>& out,
                             bool& truncated) {
  const int T = params.periods();
  std::vector<int> demand_periods;
  for (int tau = 0; tau < T; ++tau) {
    if (params.demand[tau] > 0) demand_periods.push_back(tau);
  }
  if (demand_periods.empty()) {
    out.push_back(empty_plan(params));
    return;
  }
  for (std::uint32_t open = 1; open < (1u << T); ++open) {
    if (open_set_cost(params, matrix, open) != optimum) continue;
    // Per demand period, the tied cheapest providers within this set.
    std::vector<std::vector<int>> choices(demand_periods.size());
    for (std::size_t i = 0; i < demand_periods.size(); ++i) {
      const int tau = demand_periods[i];
      const Rat* best = nullptr;
      for (int t = 0; t < T; ++t) {
        if (!((open >> t) & 1u)) continue;
        if (!best || matrix.cost[t][tau] < *best) best = &matrix.cost[t][tau];
      }
      for (int t = 0; t < T; ++t) {
        if (((open >> t) & 1u) && matrix.cost[t][tau] == *best) {
          choices[i].push_back(t);
        }
      }
    }
    std::vector<int> pick(demand_periods.size(), 0);
    std::vector<int> producer(T, kNoOrder);
    // Depth-first product of the choice lists, keeping only assignments
    // whose image is the whole set (otherwise the plan pays for an unused
    // setup and belongs to a different, cheaper set).
    std::size_t depth = 0;
    while (true) {
      if (depth == demand_periods.size()) {
        std::uint32_t used = 0;
        for (std::size_t i = 0; i < demand_periods.size(); ++i) {
          used |= 1u << producer[demand_periods[i]];
        }
        if (used == open) {
          if (static_cast<int>(out.size()) >= plan_cap) {
            truncated = true;
            return;
          }
          out.push_back(make_plan(params, producer));
        }
        --depth;
        ++pick[depth];
        continue;
      }
      if (pick[depth] >= static_cast<int>(choices[depth].size())) {
        producer[demand_periods[depth]] = kNoOrder;
        if (depth == 0) break;
        --depth;
        ++pick[depth];
        continue;
      }
      producer[demand_periods[depth]] = choices[depth][pick[depth]];
      ++depth;
      if (depth < demand_periods.size()) pick[depth] = 0;
    }
  }
}

}  // namespace

UnitCostMatrix unit_cost_matrix(const CoalitionParams& params) {
  const int T = params.periods();
  UnitCostMatrix out;
  out.T = T;
  out.cost.assign(T, std::vector<Rat>(T));
  for (int t = 0; t < T; ++t) {
    out.cost[t][t] = params.prod[t];
    Rat forward = params.prod[t];
    for (int tau = t + 1; tau < T; ++tau) {
      forward += params.hold[tau - 1];
      out.cost[t][tau] = forward;
    }
    Rat backward = params.prod[t];
    for (int tau = t - 1; tau >= 0; --tau) {
      backward += params.backlog[tau];
      out.cost[t][tau] = backward;
    }
  }
  return out;
}

Rat OrderingPlan::plan_cost(const CoalitionParams& params) const {
  Rat total = total_setup;
  for (std::size_t tau = 0; tau < producer.size(); ++tau) {
    if (producer[tau] != kNoOrder) {
      total += Rat(static_cast<long>(params.demand[tau])) * unit_cost[tau];
    }
  }
  return total;
}

std::uint32_t OrderingPlan::open_mask() const {
  std::uint32_t mask = 0;
  for (int t : open_periods) mask |= 1u << t;
  return mask;
}

OrderingPlan make_plan(const CoalitionParams& params, std::vector<int> producer) {
  const int T = params.periods();
  if (static_cast<int>(producer.size()) != T) {
    fail(Errc::InconsistentPlan, "plan has " + std::to_string(producer.size()) +
                                     " entries, expected " + std::to_string(T));
  }
  OrderingPlan plan;
  plan.producer = std::move(producer);
  plan.ordered.assign(T, 0);
  plan.served.assign(T, {});
  plan.unit_cost.assign(T, Rat(0));
  plan.total_setup = 0;
  const UnitCostMatrix matrix = unit_cost_matrix(params);
  for (int tau = 0; tau < T; ++tau) {
    const int t = plan.producer[tau];
    if (params.demand[tau] == 0) {
      if (t != kNoOrder) {
        fail(Errc::InconsistentPlan,
             "period " + std::to_string(tau + 1) +
                 " has zero demand but names an ordering period");
      }
      continue;
    }
    if (t < 0 || t >= T) {
      fail(Errc::InconsistentPlan,
           "period " + std::to_string(tau + 1) + " has demand but no valid "
           "ordering period assigned");
    }
    plan.ordered[t] = 1;
    plan.served[t].push_back(tau);
    plan.unit_cost[tau] = matrix.cost[t][tau];
  }
  for (int t = 0; t < T; ++t) {
    if (plan.ordered[t]) {
      plan.open_periods.push_back(t);
      plan.total_setup += params.setup[t];
    }
  }
  return plan;
}

PlanSolution solve_bruteforce(const CoalitionParams& params,
                              const SolveOptions& options) {
  const int T = params.periods();
  if (T > options.brute_period_cap) {
    fail(Errc::CapExceeded, "exhaustive search refused for T=" +
                                std::to_string(T) + " (cap " +
                                std::to_string(options.brute_period_cap) + ")");
  }
  PlanSolution result;
  const UnitCostMatrix matrix = unit_cost_matrix(params);
  if (params.total_demand() == 0) {
    result.cost = 0;
    result.canonical = empty_plan(params);
    if (options.enumerate_all) result.all_plans.push_back(result.canonical);
    return result;
  }
  RankedChoice best;
  bool have = false;
  for (std::uint32_t open = 1; open < (1u << T); ++open) {
    RankedChoice choice{open_set_cost(params, matrix, open),
                        __builtin_popcount(open), open};
    if (!have || choice.better_than(best)) {
      best = std::move(choice);
      have = true;
    }
  }
  result.cost = best.cost;
  result.canonical = make_plan(params, canonical_assignment(params, matrix, best.mask));
  if (options.enumerate_all) {
    enumerate_optimal_plans(params, matrix, result.cost, options.plan_cap,
                            result.all_plans, result.truncated);
  }
  return result;
}

PlanSolution solve_dp(const CoalitionParams& params, const SolveOptions& options) {
  const int T = params.periods();
  const UnitCostMatrix matrix = unit_cost_matrix(params);
  PlanSolution result;
  std::vector<int> pos;
  for (int tau = 0; tau < T; ++tau) {
    if (params.demand[tau] > 0) pos.push_back(tau);
  }
  const int m = static_cast<int>(pos.size());
  if (m == 0) {
    result.cost = 0;
    result.canonical = empty_plan(params);
    if (options.enumerate_all) result.all_plans.push_back(result.canonical);
    return result;
  }

  // serve_cost[t][j] = cost of covering the first j demand periods from t.
  std::vector<std::vector<Rat>> serve_cost(T, std::vector<Rat>(m + 1, Rat(0)));
  for (int t = 0; t < T; ++t) {
    for (int j = 0; j < m; ++j) {
      serve_cost[t][j + 1] =
          serve_cost[t][j] +
          Rat(static_cast<long>(params.demand[pos[j]])) * matrix.cost[t][pos[j]];
    }
  }

  // state[j][t]: best way to cover the first j demand periods with ordering
  // periods <= t, the last of which is t and serves a suffix block. An
  // optimal solution of this form exists because the unit-cost matrix is
  // Monge, so the canonical smallest-index assignment never crosses.
  struct State {
    RankedChoice rank;
    bool reachable = false;
  };
  std::vector<std::vector<State>> state(m + 1, std::vector<State>(T));
  for (int t = 0; t < T; ++t) {
    for (int j = 1; j <= m; ++j) {
      State s;
      s.reachable = true;
      s.rank = RankedChoice{params.setup[t] + serve_cost[t][j], 1, 1u << t};
      state[j][t] = std::move(s);
    }
  }
  for (int j = 1; j <= m; ++j) {
    for (int t = 0; t < T; ++t) {
      if (!state[j][t].reachable) continue;
      for (int t2 = t + 1; t2 < T; ++t2) {
        for (int j2 = j + 1; j2 <= m; ++j2) {
          RankedChoice cand{
              state[j][t].rank.cost + params.setup[t2] +
                  (serve_cost[t2][j2] - serve_cost[t2][j]),
              state[j][t].rank.opens + 1, state[j][t].rank.mask | (1u << t2)};
          State& slot = state[j2][t2];
          if (!slot.reachable || cand.better_than(slot.rank)) {
            slot.rank = std::move(cand);
            slot.reachable = true;
          }
        }
      }
    }
  }
  const RankedChoice* best = nullptr;
  for (int t = 0; t < T; ++t) {
    if (!state[m][t].reachable) continue;
    if (!best || state[m][t].rank.better_than(*best)) best = &state[m][t].rank;
  }
  result.cost = best->cost;
  result.canonical =
      make_plan(params, canonical_assignment(params, matrix, best->mask));
  if (result.canonical.plan_cost(params) != result.cost) {
    // The canonical assignment over the winning set must reproduce the DP
    // value; anything else is an internal error, not bad input.
    throw std::logic_error("lot-sizing dp/assignment disagreement");
  }
  if (options.enumerate_all) {
    if (T > options.brute_period_cap) {
      fail(Errc::CapExceeded, "plan enumeration refused for T=" +
                                  std::to_string(T) + " (cap " +
                                  std::to_string(options.brute_period_cap) + ")");
    }
    enumerate_optimal_plans(params, matrix, result.cost, options.plan_cap,
                            result.all_plans, result.truncated);
  }
  return result;
}

LpRelaxation solve_lp_relaxation(const CoalitionParams& params) {
  const int T = params.periods();
  const UnitCostMatrix matrix = unit_cost_matrix(params);
  LpRelaxation out;
  out.unit_price.assign(T, Rat(0));
  out.setup_share.assign(T, std::vector<Rat>(T, Rat(0)));
  std::vector<int> pos;
  for (int tau = 0; tau < T; ++tau) {
    if (params.demand[tau] > 0) pos.push_back(tau);
  }
  const int m = static_cast<int>(pos.size());
  out.value = 0;
  if (m == 0) return out;

  // Variables: open[t] for t in [0,T), then fraction (t, tau) pairs for each
  // positive-demand tau; fraction(t,tau) is the share of tau's demand that
  // order period t covers. Rows: per tau the shares sum to one; per (t,tau)
  // a share may only be positive if period t is opened.
  LinearProgram lp;
  lp.sense = Sense::Minimize;
  for (int t = 0; t < T; ++t) lp.add_var(Rat(0), std::nullopt, params.setup[t]);
  auto frac_var = [&](int t, int i) { return T + i * T + t; };
  for (int i = 0; i < m; ++i) {
    for (int t = 0; t < T; ++t) {
      lp.add_var(Rat(0), std::nullopt,
                 Rat(static_cast<long>(params.demand[pos[i]])) * matrix.cost[t][pos[i]]);
    }
  }
  const int nv = lp.num_vars();
  for (int i = 0; i < m; ++i) {
    std::vector<Rat> row(nv, Rat(0));
    for (int t = 0; t < T; ++t) row[frac_var(t, i)] = 1;
    lp.add_row(std::move(row), Rel::EQ, Rat(1));
  }
  for (int i = 0; i < m; ++i) {
    for (int t = 0; t < T; ++t) {
      std::vector<Rat> row(nv, Rat(0));
      row[frac_var(t, i)] = 1;
      row[t] = -1;
      lp.add_row(std::move(row), Rel::LE, Rat(0));
    }
  }
  const LPSolution sol = solve_lp(lp);
  if (sol.status != LPStatus::Optimal) {
    throw std::logic_error("lot-sizing relaxation must be solvable");
  }
  out.value = sol.objective;
  for (int i = 0; i < m; ++i) {
    const Rat d(static_cast<long>(params.demand[pos[i]]));
    out.unit_price[pos[i]] = sol.duals[i] / d;
    for (int t = 0; t < T; ++t) {
      const Rat& w = sol.duals[m + i * T + t];
      out.setup_share[t][pos[i]] = -w / d;
    }
  }
  return out;
}

}  // namespace coopls
