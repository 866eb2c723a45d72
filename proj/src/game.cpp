#include "coopls/game.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>

namespace coopls {

namespace {

/// Runs fn(i) for i in [0, count) across a few worker threads; each index is
/// processed exactly once, so any output written to slot i is independent of
/// the scheduling.
void parallel_for(int count, bool parallel, const std::function<void(int)>& fn) {
  unsigned workers = parallel ? std::thread::hardware_concurrency() : 1;
  if (workers <= 1 || count < 16) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  workers = std::min<unsigned>(workers, static_cast<unsigned>(count));
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= count) return;
        fn(i);
      }
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace

Rat Allocation::total() const {
  Rat sum = 0;
  for (const Rat& s : shares) sum += s;
  return sum;
}

Rat Allocation::sum_over(Coalition S) const {
  Rat sum = 0;
  for (int i : S.members()) sum += shares[i];
  return sum;
}

std::uint64_t PlanProfile::fingerprint() const {
  // FNV-1a over every producer entry, with plan separators.
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](std::uint64_t v) {
    h ^= v;
    h *= 1099511628211ull;
  };
  mix(static_cast<std::uint64_t>(n));
  for (const OrderingPlan& plan : plans) {
    mix(0x5eedu);
    for (int p : plan.producer) mix(static_cast<std::uint64_t>(p + 2));
  }
  return h;
}

GameAndProfile build_game(const ValidatedInstance& inst, const BuildOptions& options) {
  if (inst.n() > options.player_cap) {
    fail(Errc::CapExceeded, "dense coalition table refused for n=" +
                                std::to_string(inst.n()) + " (cap " +
                                std::to_string(options.player_cap) + ")");
  }
  GameAndProfile out;
  const int count = (1 << inst.n()) - 1;
  out.game.n = inst.n();
  out.game.tag = GameTag::SetupInventory;
  out.game.values.assign(count, Rat(0));
  out.profile.n = inst.n();
  out.profile.plans.assign(count, OrderingPlan{});
  parallel_for(count, options.parallel, [&](int idx) {
    const Coalition S{static_cast<std::uint32_t>(idx + 1)};
    const CoalitionParams params = coalition_params(inst, S);
    PlanSolution sol = solve_dp(params);
    out.game.values[idx] = std::move(sol.cost);
    out.profile.plans[idx] = std::move(sol.canonical);
  });
  return out;
}

CoreReport core_membership(const CostGame& game, const Allocation& x) {
  if (static_cast<int>(x.shares.size()) != game.n) {
    fail(Errc::LengthMismatch, "allocation has " +
                                   std::to_string(x.shares.size()) +
                                   " shares for a " + std::to_string(game.n) +
                                   "-player game");
  }
  CoreReport report;
  const Coalition grand = Coalition::all(game.n);
  report.efficiency_gap = x.sum_over(grand) - game.value(grand);
  for (std::uint32_t mask = 1; mask < grand.mask; ++mask) {
    const Coalition S{mask};
    const Rat excess = x.sum_over(S) - game.value(S);
    if (excess > 0) report.violations.push_back({mask, excess});
  }
  return report;
}

Allocation dual_allocation(const ValidatedInstance& inst) {
  const CoalitionParams grand = coalition_params(inst, inst.grand());
  const LpRelaxation relax = solve_lp_relaxation(grand);
  Allocation x;
  x.shares.assign(inst.n(), Rat(0));
  for (int i = 0; i < inst.n(); ++i) {
    for (int t = 0; t < inst.T(); ++t) {
      if (inst.player(i).demand[t] != 0) {
        x.shares[i] += relax.unit_price[t] *
                       Rat(static_cast<long>(inst.player(i).demand[t]));
      }
    }
  }
  return x;
}

CostGame subgame(const CostGame& game, Coalition S) {
  if (S.mask == 0) {
    fail(Errc::EmptyCoalition, "cannot restrict a game to no players");
  }
  const std::vector<int> who = S.members();
  CostGame out;
  out.n = static_cast<int>(who.size());
  out.tag = game.tag;
  out.values.assign((1 << out.n) - 1, Rat(0));
  for (std::uint32_t sub = 1; sub < (1u << out.n); ++sub) {
    std::uint32_t original = 0;
    for (int b = 0; b < out.n; ++b) {
      if ((sub >> b) & 1u) original |= 1u << who[b];
    }
    out.values[sub - 1] = game.values[original - 1];
  }
  return out;
}

void write_game_csv(std::ostream& out, const CostGame& game) {
  out << "mask,members,value\n";
  for (int idx = 0; idx < game.num_coalitions(); ++idx) {
    const Coalition S{static_cast<std::uint32_t>(idx + 1)};
    out << S.mask << ",\"" << S.to_string() << "\","
        << rat_to_string(game.values[idx]) << "\n";
  }
}

void write_allocation_csv(std::ostream& out, const Allocation& x) {
  out << "player,share\n";
  for (std::size_t i = 0; i < x.shares.size(); ++i) {
    out << (i + 1) << "," << rat_to_string(x.shares[i]) << "\n";
  }
}

Allocation read_allocation_csv(std::istream& in) {
  Allocation x;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (first) {
      first = false;
      if (line.rfind("player", 0) == 0) continue;  // header
    }
    const std::size_t comma = line.find(',');
    if (comma == std::string::npos) {
      fail(Errc::BadInput, "allocation CSV line without a comma: '" + line + "'");
    }
    int player = 0;
    try {
      player = std::stoi(line.substr(0, comma));
    } catch (const std::exception&) {
      fail(Errc::BadInput, "allocation CSV has a non-numeric player id: '" + line + "'");
    }
    if (player != static_cast<int>(x.shares.size()) + 1) {
      fail(Errc::BadInput, "allocation CSV players must be 1,2,... in order");
    }
    x.shares.push_back(rat_from_string(line.substr(comma + 1)));
  }
  if (x.shares.empty()) {
    fail(Errc::BadInput, "allocation CSV contains no rows");
  }
  return x;
}

}  // namespace coopls
