#include "coopls/surplus.hpp"

#include <algorithm>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "coopls/lp.hpp"

namespace coopls {

namespace {

Rat priced_demand(const UnitPriceVector& prices, const PlayerData& pd) {
  Rat total = 0;
  for (std::size_t t = 0; t < pd.demand.size(); ++t) {
    if (pd.demand[t] != 0) {
      total += prices.price[t] * Rat(static_cast<long>(pd.demand[t]));
    }
  }
  return total;
}

/// Solves a consistent linear system given as rows (coeffs, rhs) over n
/// unknowns. Returns the unique solution when the coefficient rank is n,
/// nullopt when the system leaves freedom.
std::optional<std::vector<Rat>> solve_if_unique(
    std::vector<std::vector<Rat>> rows, std::vector<Rat> rhs, int n) {
  const int m = static_cast<int>(rows.size());
  std::vector<int> pivot_col;
  int rank = 0;
  for (int col = 0; col < n && rank < m; ++col) {
    int pivot = -1;
    for (int r = rank; r < m; ++r) {
      if (rows[r][col] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(rows[rank], rows[pivot]);
    std::swap(rhs[rank], rhs[pivot]);
    const Rat lead = rows[rank][col];
    for (Rat& v : rows[rank]) v /= lead;
    rhs[rank] /= lead;
    for (int r = 0; r < m; ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      const Rat f = rows[r][col];
      for (int c = 0; c < n; ++c) rows[r][c] -= f * rows[rank][c];
      rhs[r] -= f * rhs[rank];
    }
    pivot_col.push_back(col);
    ++rank;
  }
  if (rank < n) return std::nullopt;
  std::vector<Rat> x(n, Rat(0));
  for (int r = 0; r < rank; ++r) x[pivot_col[r]] = rhs[r];
  return x;
}

}  // namespace

UnitPriceVector minimum_unitary_prices(const ValidatedInstance& inst,
                                       const PlanProfile& profile) {
  const int T = inst.T();
  UnitPriceVector best;
  best.price.assign(T, Rat(0));
  std::vector<char> seen(T, 0);
  const std::uint32_t full = inst.grand().mask;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    const Coalition S{mask};
    const CoalitionParams params = coalition_params(inst, S);
    const UnitPriceVector prices = unitary_prices(params, profile.plan(S));
    for (int t = 0; t < T; ++t) {
      if (params.demand[t] == 0) continue;
      if (!seen[t] || prices.price[t] < best.price[t]) {
        best.price[t] = prices.price[t];
        seen[t] = 1;
      }
    }
  }
  return best;
}

CostGame surplus_game(const ValidatedInstance& inst, const PlanProfile& profile) {
  const UnitPriceVector prices = minimum_unitary_prices(inst, profile);
  CostGame out;
  out.n = inst.n();
  out.tag = GameTag::Surplus;
  out.values.assign((1 << out.n) - 1, Rat(0));
  for (std::uint32_t mask = 1; mask <= inst.grand().mask; ++mask) {
    const Coalition S{mask};
    const CoalitionParams params = coalition_params(inst, S);
    Rat value = profile.plan(S).plan_cost(params);
    for (int t = 0; t < inst.T(); ++t) {
      if (params.demand[t] != 0) {
        value -= prices.price[t] * Rat(static_cast<long>(params.demand[t]));
      }
    }
    out.values[mask - 1] = std::move(value);
  }
  return out;
}

PISituation build_pi_situation(const ValidatedInstance& inst,
                               const PlanProfile& profile,
                               const Allocation& alpha) {
  const CostGame surplus = surplus_game(inst, profile);
  const CoreReport membership = core_membership(surplus, alpha);
  if (!membership.member()) {
    fail(Errc::NotInSurplusCore,
         "settlement shares must form a core member of the surplus game");
  }
  const UnitPriceVector prices = minimum_unitary_prices(inst, profile);
  PISituation pi;
  pi.n = inst.n();
  pi.periods = inst.T() + 1;
  pi.shared_price = prices.price;
  pi.shared_price.push_back(Rat(1));
  pi.blocking_rate = 1;
  for (int i = 0; i < inst.n(); ++i) {
    const PlayerData& pd = inst.player(i);
    std::vector<Rat> d;
    d.reserve(pi.periods);
    for (int t = 0; t < inst.T(); ++t) d.emplace_back(static_cast<long>(pd.demand[t]));
    d.push_back(alpha.shares[i]);
    pi.demand.push_back(std::move(d));
    for (int t = 0; t < inst.T(); ++t) {
      pi.blocking_rate += pd.prod[t] + pd.hold[t] + pd.backlog[t] + pd.setup[t];
    }
  }
  return pi;
}

Allocation pi_owen_point(const PISituation& pi) {
  Allocation x;
  x.shares.assign(pi.n, Rat(0));
  for (int i = 0; i < pi.n; ++i) {
    for (int t = 0; t < pi.periods; ++t) {
      x.shares[i] += pi.shared_price[t] * pi.demand[i][t];
    }
  }
  return x;
}

Allocation core_via_surplus(const ValidatedInstance& inst,
                            const PlanProfile& profile, const Allocation& alpha) {
  const CostGame surplus = surplus_game(inst, profile);
  if (!core_membership(surplus, alpha).member()) {
    fail(Errc::NotInSurplusCore,
         "settlement shares must form a core member of the surplus game");
  }
  const UnitPriceVector prices = minimum_unitary_prices(inst, profile);
  Allocation x;
  x.shares.assign(inst.n(), Rat(0));
  for (int i = 0; i < inst.n(); ++i) {
    x.shares[i] = priced_demand(prices, inst.player(i)) + alpha.shares[i];
  }
  return x;
}

Allocation surplus_of_core(const ValidatedInstance& inst,
                           const PlanProfile& profile, const Allocation& x) {
  CostGame game;
  game.n = inst.n();
  game.tag = GameTag::SetupInventory;
  game.values.assign((1 << game.n) - 1, Rat(0));
  for (std::uint32_t mask = 1; mask <= inst.grand().mask; ++mask) {
    const Coalition S{mask};
    game.values[mask - 1] =
        profile.plan(S).plan_cost(coalition_params(inst, S));
  }
  if (!core_membership(game, x).member()) {
    fail(Errc::NotInCore, "allocation is not a core member of the cost game");
  }
  const UnitPriceVector prices = minimum_unitary_prices(inst, profile);
  Allocation alpha;
  alpha.shares.assign(inst.n(), Rat(0));
  for (int i = 0; i < inst.n(); ++i) {
    alpha.shares[i] = x.shares[i] - priced_demand(prices, inst.player(i));
  }
  return alpha;
}

Allocation nucleolus(const CostGame& game, const NucleolusOptions& options) {
  const int n = game.n;
  if (n > options.player_cap) {
    fail(Errc::CapExceeded, "nucleolus refused for n=" + std::to_string(n) +
                                " (cap " + std::to_string(options.player_cap) +
                                ")");
  }
  const Coalition grand = Coalition::all(n);
  Allocation out;
  if (n == 1) {
    out.shares.push_back(game.value(grand));
    return out;
  }

  std::vector<std::uint32_t> unfixed;
  for (std::uint32_t mask = 1; mask < grand.mask; ++mask) unfixed.push_back(mask);
  struct Fixed {
    std::uint32_t mask;
    Rat slack;
  };
  std::vector<Fixed> fixed;

  auto coalition_row = [&](std::uint32_t mask, int extra) {
    std::vector<Rat> row(n + extra, Rat(0));
    for (int i = 0; i < n; ++i) {
      if ((mask >> i) & 1u) row[i] = 1;
    }
    return row;
  };

  bool first_level = true;
  while (!unfixed.empty()) {
    // Level LP: maximize the common slack eps over allocations that respect
    // every frozen slack exactly and give every live coalition at least eps.
    LinearProgram level;
    level.sense = Sense::Maximize;
    for (int i = 0; i < n; ++i) level.add_free_var();
    const int eps = level.add_free_var(Rat(1));
    {
      auto row = coalition_row(grand.mask, 1);
      level.add_row(std::move(row), Rel::EQ, game.value(grand));
    }
    for (const Fixed& f : fixed) {
      auto row = coalition_row(f.mask, 1);
      level.add_row(std::move(row), Rel::EQ, game.values[f.mask - 1] - f.slack);
    }
    for (std::uint32_t mask : unfixed) {
      auto row = coalition_row(mask, 1);
      row[eps] = 1;
      level.add_row(std::move(row), Rel::LE, game.values[mask - 1]);
    }
    const LPSolution level_sol = solve_lp(level);
    if (level_sol.status != LPStatus::Optimal) {
      throw std::logic_error("nucleolus level LP must be solvable");
    }
    const Rat level_slack = level_sol.objective;
    if (first_level && level_slack < 0) {
      fail(Errc::EmptyCore, "no allocation covers every coalition within its "
                            "own cost: the core is empty");
    }
    first_level = false;

    // A live coalition freezes exactly when its slack cannot exceed the
    // level optimum anywhere in the remaining polytope; probe each one by
    // minimizing its total charge subject to the level slack everywhere.
    std::vector<std::uint32_t> still_live;
    for (std::uint32_t probe_mask : unfixed) {
      LinearProgram probe;
      probe.sense = Sense::Minimize;
      for (int i = 0; i < n; ++i) {
        probe.add_free_var((probe_mask >> i) & 1u ? Rat(1) : Rat(0));
      }
      probe.add_row(coalition_row(grand.mask, 0), Rel::EQ, game.value(grand));
      for (const Fixed& f : fixed) {
        probe.add_row(coalition_row(f.mask, 0), Rel::EQ,
                      game.values[f.mask - 1] - f.slack);
      }
      for (std::uint32_t mask : unfixed) {
        probe.add_row(coalition_row(mask, 0), Rel::LE,
                      game.values[mask - 1] - level_slack);
      }
      const LPSolution probe_sol = solve_lp(probe);
      if (probe_sol.status != LPStatus::Optimal) {
        throw std::logic_error("nucleolus probe LP must be solvable");
      }
      const Rat best_slack = game.values[probe_mask - 1] - probe_sol.objective;
      if (best_slack == level_slack) {
        fixed.push_back({probe_mask, level_slack});
      } else {
        still_live.push_back(probe_mask);
      }
    }
    if (still_live.size() == unfixed.size()) {
      throw std::logic_error("nucleolus made no progress at a level");
    }
    unfixed = std::move(still_live);

    // Once the frozen equalities determine the allocation, we are done.
    std::vector<std::vector<Rat>> rows;
    std::vector<Rat> rhs;
    rows.push_back(coalition_row(grand.mask, 0));
    rhs.push_back(game.value(grand));
    for (const Fixed& f : fixed) {
      rows.push_back(coalition_row(f.mask, 0));
      rhs.push_back(game.values[f.mask - 1] - f.slack);
    }
    if (auto x = solve_if_unique(std::move(rows), std::move(rhs), n)) {
      out.shares = std::move(*x);
      return out;
    }
  }
  throw std::logic_error("nucleolus equalities never became determining");
}

bool check_zero_surplus_criterion(const ValidatedInstance& inst, const PlanProfile& profile) {
  const CostGame surplus = surplus_game(inst, profile);
  const bool zero_surplus = surplus.value(inst.grand()) == 0;

  CostGame game;
  game.n = inst.n();
  game.tag = GameTag::SetupInventory;
  game.values.assign((1 << game.n) - 1, Rat(0));
  for (std::uint32_t mask = 1; mask <= inst.grand().mask; ++mask) {
    const Coalition S{mask};
    game.values[mask - 1] = profile.plan(S).plan_cost(coalition_params(inst, S));
  }
  const UnitPriceVector prices = minimum_unitary_prices(inst, profile);
  Allocation billed;
  billed.shares.assign(inst.n(), Rat(0));
  for (int i = 0; i < inst.n(); ++i) {
    billed.shares[i] = priced_demand(prices, inst.player(i));
  }
  const bool in_core = core_membership(game, billed).member();
  return zero_surplus == in_core;
}

std::string pi_situation_to_json(const PISituation& pi) {
  nlohmann::ordered_json j;
  j["n"] = pi.n;
  j["T"] = pi.periods;
  j["players"] = nlohmann::ordered_json::array();
  auto rat_entry = [](const Rat& value) -> nlohmann::ordered_json {
    if (value.get_den() == 1 && value.get_num().fits_slong_p()) {
      return value.get_num().get_si();
    }
    return rat_to_string(value);
  };
  for (int i = 0; i < pi.n; ++i) {
    nlohmann::ordered_json pj;
    auto arr = nlohmann::ordered_json::array();
    for (const Rat& d : pi.demand[i]) arr.push_back(rat_entry(d));
    pj["d"] = std::move(arr);
    auto prices = nlohmann::ordered_json::array();
    for (const Rat& p : pi.shared_price) prices.push_back(rat_entry(p));
    pj["p"] = std::move(prices);
    auto blocked = nlohmann::ordered_json::array();
    for (int t = 0; t < pi.periods; ++t) blocked.push_back(rat_entry(pi.blocking_rate));
    pj["h"] = blocked;
    pj["b"] = blocked;
    pj["k"] = std::vector<int>(pi.periods, 0);
    j["players"].push_back(std::move(pj));
  }
  return j.dump(2);
}

}  // namespace coopls
