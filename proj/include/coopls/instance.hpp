#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coopls/errors.hpp"
#include "coopls/rational.hpp"

namespace coopls {

/// One player's data over the planning horizon. All vectors have length T.
/// `demand[t]` is an integer quantity due in period t. `prod[t]` is the
/// per-unit production/purchase cost when ordering in period t, `setup[t]`
/// a fixed charge paid once per period in which an order is placed.
/// `hold[t]` prices carrying one unit from period t to t+1 and `backlog[t]`
/// prices serving period t's demand one period late (from t+1); the entries
/// at index T-1 are stored only to keep a uniform shape and are never read.
struct PlayerData {
  std::vector<long long> demand;
  std::vector<Rat> prod;
  std::vector<Rat> hold;
  std::vector<Rat> backlog;
  std::vector<Rat> setup;

  bool operator==(const PlayerData&) const = default;
};

/// A multi-player lot-sizing situation with backlogging: n players face the
/// same T-period horizon, each with their own demand stream and cost rates.
struct SIInstance {
  int n = 0;
  int T = 0;
  std::vector<PlayerData> players;

  bool operator==(const SIInstance&) const = default;
};

/// Nonempty player subset encoded as a bitmask; bit i (0-based) is player i.
struct Coalition {
  std::uint32_t mask = 0;

  static Coalition all(int n) {
    return Coalition{n >= 32 ? ~0u : ((1u << n) - 1u)};
  }
  static Coalition single(int player) { return Coalition{1u << player}; }

  bool contains(int player) const { return (mask >> player) & 1u; }
  int size() const { return __builtin_popcount(mask); }
  std::vector<int> members() const;

  /// Human-readable 1-based member list, e.g. "{1,3}".
  std::string to_string() const;

  bool operator==(const Coalition&) const = default;
};

/// Pooled data a coalition acts on when its members order jointly: demands
/// add up per period, and every cost rate drops to the cheapest member's
/// rate for that period.
struct CoalitionParams {
  std::vector<long long> demand;
  std::vector<Rat> prod;
  std::vector<Rat> hold;
  std::vector<Rat> backlog;
  std::vector<Rat> setup;

  int periods() const { return static_cast<int>(demand.size()); }
  long long total_demand() const;
};

/// An instance that passed validate(). Construction is gated through
/// validate() so every consumer can rely on: consistent shapes, nonnegative
/// demands and costs, and all rationals in lowest terms. Immutable.
class ValidatedInstance {
public:
  const SIInstance& raw() const { return inst_; }
  int n() const { return inst_.n; }
  int T() const { return inst_.T; }
  const PlayerData& player(int i) const { return inst_.players[i]; }
  Coalition grand() const { return Coalition::all(inst_.n); }

  friend ValidatedInstance validate(SIInstance inst);

private:
  explicit ValidatedInstance(SIInstance inst) : inst_(std::move(inst)) {}
  SIInstance inst_;
};

/// Checks shapes (players.size() == n, each array length T; hold/backlog may
/// arrive with T-1 entries and are padded with a trailing zero), demand >= 0
/// and every cost >= 0, and canonicalizes all rationals. Error messages
/// report 1-based player/period indices. Throws Error with ShapeMismatch,
/// NegativeDemand or NegativeCost.
ValidatedInstance validate(SIInstance inst);

/// Pooled parameters of coalition S. Throws Error(EmptyCoalition) for mask 0
/// and Error(BadInput) for bits outside the player range.
CoalitionParams coalition_params(const ValidatedInstance& inst, Coalition S);

/// JSON wire format:
///   {"n":2,"T":3,"players":[{"d":[...],"p":[...],"h":[...],"b":[...],"k":[...]},...]}
/// Demands are JSON integers; costs are JSON integers or "a/b" strings.
/// Serialization writes integers as numbers and everything else as "a/b",
/// so load(save(x)) == x entry for entry.
SIInstance instance_from_json(const std::string& text);
std::string instance_to_json(const SIInstance& inst);

/// Reads and parses a JSON instance file. Throws Error(BadInput) when the
/// file cannot be read or parsed.
SIInstance load_instance_file(const std::string& path);

}  // namespace coopls
