#pragma once

// Shared worked examples for the test suites. Each fixture is small enough
// to check by hand; the expected values asserted in the tests were computed
// independently of the library (full enumeration of ordering-period subsets
// and direct evaluation of the pricing formulas).

#include <vector>

#include "coopls/instance.hpp"

namespace fixtures {

using coopls::PlayerData;
using coopls::Rat;
using coopls::SIInstance;

inline std::vector<Rat> rats(std::initializer_list<long> values) {
  std::vector<Rat> out;
  for (long v : values) out.emplace_back(v);
  return out;
}

inline std::vector<Rat> fracs(std::initializer_list<const char*> values) {
  std::vector<Rat> out;
  for (const char* v : values) out.push_back(coopls::rat_from_string(v));
  return out;
}

/// Three players, two periods; heterogeneous rates. Coalition costs
/// (mask order 1..7): 39, 100, 44, 122, 62, 100, 118. The grand coalition
/// has two optimal ordering-period sets ({1} and {1,2}, both 118).
inline SIInstance three_firms_two_periods() {
  SIInstance inst;
  inst.n = 3;
  inst.T = 2;
  inst.players.push_back(PlayerData{{2, 1},
                                    rats({9, 9}),
                                    rats({6, 0}),
                                    rats({4, 0}),
                                    rats({6, 8})});
  inst.players.push_back(PlayerData{{8, 2},
                                    rats({9, 6}),
                                    rats({9, 0}),
                                    rats({7, 0}),
                                    rats({7, 9})});
  inst.players.push_back(PlayerData{{6, 1},
                                    rats({5, 6}),
                                    rats({3, 0}),
                                    rats({5, 0}),
                                    rats({6, 10})});
  return inst;
}

/// Three players, three periods; cheap shared technology. Coalition costs
/// (mask order 1..7): 8, 12, 20, 13, 17, 31, 22. The grand coalition has
/// two optimal plans; the canonical one orders in periods 1 and 2.
inline SIInstance three_firms_three_periods() {
  SIInstance inst;
  inst.n = 3;
  inst.T = 3;
  inst.players.push_back(PlayerData{{1, 3, 1},
                                    rats({1, 1, 1}),
                                    rats({1, 1, 0}),
                                    rats({1, 1, 0}),
                                    rats({3, 1, 5})});
  inst.players.push_back(PlayerData{{2, 1, 1},
                                    rats({2, 3, 4}),
                                    rats({1, 1, 0}),
                                    rats({1, 1, 0}),
                                    rats({1, 4, 8})});
  inst.players.push_back(PlayerData{{2, 1, 3},
                                    rats({2, 3, 5}),
                                    rats({1, 1, 0}),
                                    rats({1, 1, 0}),
                                    rats({1, 1, 7})});
  return inst;
}

/// Two players, three periods, demand concentrated in the middle. The
/// unitary Owen point of the (unique) optimal grand plan is NOT in the
/// core here: player 1 alone pays 46 but would be billed 530/11.
inline SIInstance two_firms_three_periods() {
  SIInstance inst;
  inst.n = 2;
  inst.T = 3;
  inst.players.push_back(PlayerData{{0, 10, 10},
                                    rats({1, 1, 1}),
                                    rats({1, 1, 0}),
                                    rats({1, 2, 0}),
                                    rats({1, 50, 15})});
  inst.players.push_back(PlayerData{{0, 35, 0},
                                    rats({1, 1, 1}),
                                    rats({1, 1, 0}),
                                    rats({1, 2, 0}),
                                    rats({1, 50, 15})});
  return inst;
}

}  // namespace fixtures
