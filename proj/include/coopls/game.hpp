#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "coopls/instance.hpp"
#include "coopls/lotsizing.hpp"

namespace coopls {

enum class GameTag { SetupInventory, Surplus, External };

/// Cost game over n players: values[S.mask - 1] is what coalition S pays on
/// its own. Dense storage, so n is limited to small player counts.
struct CostGame {
  int n = 0;
  std::vector<Rat> values;
  GameTag tag = GameTag::External;

  const Rat& value(Coalition S) const { return values[S.mask - 1]; }
  Rat& value(Coalition S) { return values[S.mask - 1]; }
  std::uint32_t grand_mask() const { return (1u << n) - 1u; }
  int num_coalitions() const { return (1 << n) - 1; }
};

/// Per-player cost shares. shares.size() == n.
struct Allocation {
  std::vector<Rat> shares;

  Rat total() const;
  Rat sum_over(Coalition S) const;
};

/// One optimal ordering plan per coalition, indexed like CostGame values.
struct PlanProfile {
  int n = 0;
  std::vector<OrderingPlan> plans;

  const OrderingPlan& plan(Coalition S) const { return plans[S.mask - 1]; }
  OrderingPlan& plan(Coalition S) { return plans[S.mask - 1]; }

  /// Order-sensitive hash of every plan's producer assignment; lets reports
  /// state exactly which profile produced them.
  std::uint64_t fingerprint() const;
};

struct BuildOptions {
  int player_cap = 12;  // dense coalition table beyond this is refused
  bool parallel = true;
};

struct GameAndProfile {
  CostGame game;
  PlanProfile profile;
};

/// Solves the pooled lot-sizing problem for every nonempty coalition and
/// records both the value table and the canonical plan per coalition.
/// Coalitions are solved independently (in parallel when enabled); the
/// result does not depend on the thread count. Throws Error(CapExceeded)
/// when n exceeds options.player_cap.
GameAndProfile build_game(const ValidatedInstance& inst,
                          const BuildOptions& options = {});

/// Exact core test report for a cost game: efficiency_gap = x(N) - c(N)
/// must be zero and no coalition may be charged more than its own cost.
struct CoreReport {
  Rat efficiency_gap;
  struct Violation {
    std::uint32_t mask;
    Rat amount;  // x(S) - c(S) > 0
  };
  std::vector<Violation> violations;

  bool member() const { return efficiency_gap == 0 && violations.empty(); }
};

/// Throws Error(LengthMismatch) when the allocation size differs from n.
/// Violations are listed in ascending mask order.
CoreReport core_membership(const CostGame& game, const Allocation& x);

/// Allocation read off the relaxation duals of the grand coalition: player i
/// pays the dual unit price of each period times their own demand there.
/// Always efficient (sums to c(N)).
Allocation dual_allocation(const ValidatedInstance& inst);

/// Restriction of the game to the players of S (renumbered in increasing
/// player order). Throws Error(EmptyCoalition) on mask 0.
CostGame subgame(const CostGame& game, Coalition S);

/// CSV with header "mask,members,value"; members quoted like "{1,2}",
/// values in lowest terms ("a/b" or integer).
void write_game_csv(std::ostream& out, const CostGame& game);

void write_allocation_csv(std::ostream& out, const Allocation& x);
Allocation read_allocation_csv(std::istream& in);

}  // namespace coopls
