#pragma once

#include <string>
#include <vector>

#include "coopls/allocations.hpp"
#include "coopls/game.hpp"

namespace coopls {

/// Cheapest unit price any coalition achieves per period: the minimum over
/// all nonempty coalitions with demand in that period of their plan's unit
/// price; 0 for periods nobody demands in. Depends on the supplied profile
/// through each coalition's plan.
UnitPriceVector minimum_unitary_prices(const ValidatedInstance& inst,
                                       const PlanProfile& profile);

/// Cost game left over after every coalition is billed its demand at the
/// minimum unit prices: value(S) = own plan cost minus price-weighted
/// demand. Nonnegative in every coordinate.
CostGame surplus_game(const ValidatedInstance& inst, const PlanProfile& profile);

/// A production-inventory situation with one extra settlement period. Every
/// player keeps their demand stream (now rational-valued) extended by their
/// surplus share, all players share the same price vector (the minimum unit
/// prices extended by price 1 for the settlement period), setups are zero,
/// and holding/backlogging are blocked by a prohibitive rate so each period
/// must be served on time.
struct PISituation {
  int n = 0;
  int periods = 0;                        // original horizon + 1
  std::vector<std::vector<Rat>> demand;   // per player, length periods
  std::vector<Rat> shared_price;          // length periods, last entry 1
  Rat blocking_rate;                      // 1 + sum of every cost entry
};

/// Requires alpha to be a core member of the surplus game; throws
/// Error(NotInSurplusCore) otherwise.
PISituation build_pi_situation(const ValidatedInstance& inst,
                               const PlanProfile& profile,
                               const Allocation& alpha);

/// Owen point of a production-inventory situation: with zero setups and
/// blocked carrying, each player simply pays their demand at the shared
/// prices. The blocking rate never enters the value.
Allocation pi_owen_point(const PISituation& pi);

/// Forward core map: surplus-core member alpha -> core member of the cost
/// game, player i paying their priced demand plus alpha_i. Equals the Owen
/// point of build_pi_situation(inst, profile, alpha).
Allocation core_via_surplus(const ValidatedInstance& inst,
                            const PlanProfile& profile, const Allocation& alpha);

/// Inverse map: core member x of the cost game -> surplus-core member.
/// Throws Error(NotInCore) when x is not a core member. Composes with
/// core_via_surplus to the identity in both directions.
Allocation surplus_of_core(const ValidatedInstance& inst,
                           const PlanProfile& profile, const Allocation& x);

struct NucleolusOptions {
  int player_cap = 10;
};

/// Lexicographic center of the core, computed by the standard sequence of
/// exact LPs: maximize the worst coalition slack, freeze the coalitions
/// whose slack cannot move (detected by one slack-probing LP each), repeat
/// until the frozen equalities pin the allocation. All arithmetic is
/// rational, so ties are decided exactly. Throws Error(EmptyCore) when the
/// game has an empty core and Error(CapExceeded) above the player cap.
Allocation nucleolus(const CostGame& game, const NucleolusOptions& options = {});

/// Confirms the zero-surplus criterion on this instance/profile: billing
/// everyone at minimum unit prices is a core allocation precisely when the
/// grand coalition's surplus vanishes. Returns the truth of the
/// biconditional (expected: always true).
bool check_zero_surplus_criterion(const ValidatedInstance& inst, const PlanProfile& profile);

/// Same JSON schema as an instance: the settlement demands appear as the
/// last entry of each "d" array (as "a/b" strings when fractional).
std::string pi_situation_to_json(const PISituation& pi);

}  // namespace coopls
