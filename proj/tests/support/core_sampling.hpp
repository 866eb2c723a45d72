#pragma once

// Exact samples from the core polytope of a cost game, used to exercise
// maps that must work on arbitrary core members (not just the named
// allocation rules). The polytope {x : x(N) = c(N), x(S) <= c(S)} is
// bounded whenever it is nonempty, so every random linear objective has an
// optimal vertex; midpoints of vertex pairs add interior-ish points.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "coopls/game.hpp"
#include "coopls/lp.hpp"
#include "coopls/simulate.hpp"

namespace core_sampling {

/// Distinct core members of `game` found by minimizing `objectives` random
/// integer objectives over the core, plus midpoints of consecutive distinct
/// vertices. Empty result exactly when the core is empty.
inline std::vector<coopls::Allocation> sample_core_points(
    const coopls::CostGame& game, int objectives, std::uint64_t seed) {
  using namespace coopls;
  const std::uint32_t full = game.grand_mask();
  std::vector<Allocation> points;
  TrialStream stream(seed, 0xC093);
  for (int round = 0; round < objectives; ++round) {
    LinearProgram lp;
    for (int i = 0; i < game.n; ++i) {
      lp.add_free_var(Rat(static_cast<long>(stream.uniform(-9, 9))));
    }
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
      std::vector<Rat> coeffs(game.n, Rat(0));
      for (int i = 0; i < game.n; ++i) {
        if ((mask >> i) & 1u) coeffs[i] = 1;
      }
      lp.add_row(std::move(coeffs), mask == full ? Rel::EQ : Rel::LE,
                 game.values[mask - 1]);
    }
    const LPSolution sol = solve_lp(lp);
    if (sol.status == LPStatus::Infeasible) return {};
    if (sol.status != LPStatus::Optimal) {
      throw std::logic_error("core polytope optimization must terminate");
    }
    Allocation x;
    x.shares = sol.primal;
    bool fresh = true;
    for (const Allocation& seen : points) {
      if (seen.shares == x.shares) fresh = false;
    }
    if (fresh) points.push_back(std::move(x));
  }
  const std::size_t vertices = points.size();
  for (std::size_t a = 0; a + 1 < vertices; ++a) {
    Allocation mid;
    for (int i = 0; i < game.n; ++i) {
      mid.shares.push_back((points[a].shares[i] + points[a + 1].shares[i]) / 2);
    }
    points.push_back(std::move(mid));
  }
  return points;
}

}  // namespace core_sampling
